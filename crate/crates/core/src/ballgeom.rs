//! Poincaré ball points, boundary projection, and hyperbolic distance.
//!
//! Points live strictly inside the open unit ball. Out-of-ball vectors are
//! pulled in by radial rescaling to norm `1 - eps_boundary`; the distance is
//! `arcosh(1 + 2|p-q|^2 / ((1-|p|^2)(1-|q|^2)))`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Numerical guards for ball operations.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BallConfig<T> {
    pub dimension: usize,
    /// Points are kept at Euclidean norm `<= 1 - eps_boundary`.
    pub eps_boundary: T,
    /// The arcosh argument is clamped to `>= 1 + eps_arcosh` on the gradient
    /// path only; arcosh'(z) = 1/sqrt(z^2-1) blows up at z = 1.
    pub eps_arcosh: T,
}

impl<T: Scalar> BallConfig<T> {
    pub fn new(dimension: usize) -> Self {
        BallConfig {
            dimension,
            eps_boundary: T::c(1e-5),
            eps_arcosh: T::c(1e-12),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dimension == 0 {
            return Err(Error::InvalidSpec("ball dimension must be >= 1".into()));
        }
        if !(self.eps_boundary > T::zero() && self.eps_boundary < T::one()) {
            return Err(Error::InvalidSpec("eps_boundary must lie in (0, 1)".into()));
        }
        if self.eps_arcosh <= T::zero() {
            return Err(Error::InvalidSpec("eps_arcosh must be positive".into()));
        }
        Ok(())
    }
}

/// A vector strictly inside the open unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint<T> {
    coords: Vec<T>,
}

impl<T: Scalar> BallPoint<T> {
    /// Validates the ball invariant for externally supplied coordinates.
    pub fn try_new(coords: Vec<T>, cfg: &BallConfig<T>) -> Result<Self> {
        if coords.len() != cfg.dimension {
            return Err(Error::InvalidInput(format!(
                "ball point has dimension {}, expected {}",
                coords.len(),
                cfg.dimension
            )));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("ball point has non-finite coordinate".into()));
        }
        let norm = norm(&coords);
        if norm > T::one() - cfg.eps_boundary {
            return Err(Error::InvalidInput(format!(
                "ball point norm {norm} exceeds 1 - eps_boundary"
            )));
        }
        Ok(BallPoint { coords })
    }

    /// Wraps coordinates already known to satisfy the invariant
    /// (e.g. produced by [`project_to_ball`]).
    pub(crate) fn from_projected(coords: Vec<T>) -> Self {
        BallPoint { coords }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn origin(dim: usize) -> Self {
        BallPoint { coords: vec![T::zero(); dim] }
    }
}

#[inline]
pub(crate) fn squared_norm<T: Scalar>(v: &[T]) -> T {
    v.iter().fold(T::zero(), |acc, &x| acc + x * x)
}

#[inline]
fn norm<T: Scalar>(v: &[T]) -> T {
    squared_norm(v).sqrt()
}

#[inline]
pub(crate) fn squared_dist<T: Scalar>(p: &[T], q: &[T]) -> T {
    debug_assert_eq!(p.len(), q.len());
    let mut acc = T::zero();
    for i in 0..p.len() {
        let d = p[i] - q[i];
        acc += d * d;
    }
    acc
}

/// Radially rescales `v` into the ball: unchanged if already at norm
/// `<= 1 - eps_boundary`, otherwise scaled to exactly that norm.
pub fn project_to_ball<T: Scalar>(v: &[T], cfg: &BallConfig<T>) -> Result<BallPoint<T>> {
    if v.len() != cfg.dimension {
        return Err(Error::InvalidInput(format!(
            "vector has dimension {}, expected {}",
            v.len(),
            cfg.dimension
        )));
    }
    if v.iter().any(|c| !c.is_finite()) {
        return Err(Error::InvalidInput("cannot project non-finite vector".into()));
    }
    let limit = T::one() - cfg.eps_boundary;
    let n = norm(v);
    let coords = if n <= limit {
        v.to_vec()
    } else {
        let s = limit / n;
        v.iter().map(|&x| x * s).collect()
    };
    Ok(BallPoint::from_projected(coords))
}

/// Hyperbolic distance between two ball points (value path; the arcosh
/// argument is clamped to `>= 1` so coincident points give exactly 0).
pub fn ball_distance<T: Scalar>(p: &BallPoint<T>, q: &BallPoint<T>) -> T {
    ball_distance_coords(p.coords(), q.coords())
}

/// Distance on raw coordinate slices; callers guarantee both lie inside the
/// ball.
pub fn ball_distance_coords<T: Scalar>(p: &[T], q: &[T]) -> T {
    assert_eq!(p.len(), q.len(), "ball points must share a dimension");
    let u = squared_dist(p, q);
    let alpha = T::one() - squared_norm(p);
    let beta = T::one() - squared_norm(q);
    let arg = T::one() + T::c(2.0) * u / (alpha * beta);
    arg.max(T::one()).acosh()
}

/// Euclidean distance, used by the `euclid-hasl` ablation.
pub fn euclidean_distance_coords<T: Scalar>(p: &[T], q: &[T]) -> T {
    assert_eq!(p.len(), q.len(), "points must share a dimension");
    squared_dist(p, q).sqrt()
}
