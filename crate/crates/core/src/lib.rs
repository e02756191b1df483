//! Typicality-based consistency-aware multimodal fusion.
//!
//! The crate trains a three-stage classifier (unimodal early perception,
//! cross-attention integration, advanced per-modality cognition) over
//! language/visual/acoustic feature vectors. Unimodal features live in the
//! Poincaré ball; per-modality pseudo labels are read off a FIFO list of
//! high-confidence anchors, scored by batch-relative typicality, and combined
//! into an inter-modal consistency scalar that weights both the stage losses
//! and the inference-time fusion. A cophenetic correlation between label-tree
//! distances and hyperbolic feature distances regularizes late training.
//!
//! All numeric kernels are generic over the scalar type (`f32`/`f64`) through
//! [`scalar::Scalar`]; the training pipeline and file formats use [`Real`].

pub mod anchors;
pub mod ballgeom;
pub mod checkpoint;
pub mod config;
pub mod consistency;
pub mod datasyn;
pub mod emotree;
pub mod error;
pub mod metrics;
pub mod neural;
pub mod stages;
pub mod structloss;
pub mod trainer;

mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Scalar type used by the training pipeline, the CLI, and on-disk formats.
pub type Real = f64;

/// Ball point at pipeline precision.
pub type BallPointR = ballgeom::BallPoint<Real>;
/// Anchor list at pipeline precision.
pub type AnchorListR = anchors::AnchorList<Real>;
/// Emotion tree at pipeline precision.
pub type EmotionTreeR = emotree::EmotionTree<Real>;
/// Model at pipeline precision.
pub type ModelR = stages::TicalModel<Real>;
