//! Weighted trees over emotion classes and shortest-path label distances.
//!
//! Three built-in layouts cover ordinal sentiment scales and categorical
//! emotion sets; an explicit edge list can replace the topology entirely.
//! The distance between two classes is the total edge weight on the unique
//! path between their nodes.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use serde::{Deserialize, Serialize};

/// Built-in tree layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeScheme {
    /// Classes on a path, unit edge weights (7-level sentiment −3..+3).
    OrdinalChain,
    /// root → {negative, neutral, positive} (weight 2) → class leaves (weight 1).
    PolarityHierarchy,
    /// root → every class leaf, weight 1.
    FlatStar,
}

impl TreeScheme {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "ordinal-chain" => Ok(TreeScheme::OrdinalChain),
            "polarity-hierarchy" => Ok(TreeScheme::PolarityHierarchy),
            "flat-star" => Ok(TreeScheme::FlatStar),
            other => Err(Error::InvalidSpec(format!("unknown tree scheme `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TreeScheme::OrdinalChain => "ordinal-chain",
            TreeScheme::PolarityHierarchy => "polarity-hierarchy",
            TreeScheme::FlatStar => "flat-star",
        }
    }
}

/// Construction recipe for an [`EmotionTree`].
///
/// `weights` overrides the scheme's default edge weights in construction
/// order; `edges` (parent, child, weight) replaces the topology entirely, in
/// which case class `i` is the node named `c<i>`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeSpec {
    pub scheme: TreeScheme,
    pub n_classes: usize,
    pub weights: Option<Vec<f64>>,
    pub edges: Option<Vec<(String, String, f64)>>,
}

impl TreeSpec {
    pub fn new(scheme: TreeScheme, n_classes: usize) -> Self {
        TreeSpec { scheme, n_classes, weights: None, edges: None }
    }
}

/// Centered class score: class `i` of `k` maps to `i - (k-1)/2`, so a 7-level
/// scale becomes −3..+3.
pub fn class_score(class: usize, k: usize) -> f64 {
    class as f64 - (k as f64 - 1.0) / 2.0
}

/// Immutable weighted tree with one node per emotion class.
#[derive(Debug, Clone)]
pub struct EmotionTree<T> {
    adj: Vec<Vec<(usize, T)>>,
    class_node: Vec<usize>,
    node_names: Vec<String>,
    n_edges: usize,
}

impl<T: Scalar> EmotionTree<T> {
    pub fn n_classes(&self) -> usize {
        self.class_node.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn node_name(&self, node: usize) -> &str {
        &self.node_names[node]
    }

    /// Total edge weight on the unique path between the nodes of two classes.
    pub fn tree_distance(&self, a: usize, b: usize) -> Result<T> {
        let k = self.n_classes();
        if a >= k || b >= k {
            return Err(Error::InvalidInput(format!(
                "class index out of range: got ({a}, {b}), tree has {k} classes"
            )));
        }
        if a == b {
            return Ok(T::zero());
        }
        let dist = self.distances_from(self.class_node[a]);
        Ok(dist[self.class_node[b]])
    }

    /// K×K matrix of pairwise class distances (zero diagonal, symmetric).
    pub fn all_pairs_distance(&self) -> Vec<Vec<T>> {
        let k = self.n_classes();
        let mut m = vec![vec![T::zero(); k]; k];
        for a in 0..k {
            let dist = self.distances_from(self.class_node[a]);
            for b in 0..k {
                m[a][b] = dist[self.class_node[b]];
            }
        }
        m
    }

    /// Single-source distances by iterative DFS (the graph is a tree).
    fn distances_from(&self, start: usize) -> Vec<T> {
        let mut dist = vec![T::zero(); self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            for &(v, w) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    dist[v] = dist[u] + w;
                    stack.push(v);
                }
            }
        }
        dist
    }
}

/// Builds the tree described by `spec`, validating connectivity, positive
/// weights, and the class-to-node assignment.
pub fn build_tree<T: Scalar>(spec: &TreeSpec) -> Result<EmotionTree<T>> {
    if spec.n_classes < 2 {
        return Err(Error::InvalidSpec(format!(
            "need at least 2 classes, got {}",
            spec.n_classes
        )));
    }
    let (names, edges, class_node) = match &spec.edges {
        Some(list) => explicit_layout(spec.n_classes, list)?,
        None => scheme_layout(spec),
    };
    let edges = apply_weight_override(edges, spec.weights.as_deref())?;

    let n = names.len();
    if edges.len() != n - 1 {
        return Err(Error::InvalidSpec(format!(
            "a tree on {n} nodes needs {} edges, got {}",
            n - 1,
            edges.len()
        )));
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v, w) in &edges {
        if w <= 0.0 || !w.is_finite() {
            return Err(Error::InvalidSpec(format!(
                "edge {} - {} has non-positive weight {w}",
                names[u], names[v]
            )));
        }
        adj[u].push((v, T::c(w)));
        adj[v].push((u, T::c(w)));
    }
    let tree = EmotionTree { adj, class_node, node_names: names, n_edges: edges.len() };

    // |E| = |V| - 1 plus connectivity implies acyclic.
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &(v, _) in &tree.adj[u] {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    if count != n {
        return Err(Error::InvalidSpec(format!(
            "tree is disconnected: reached {count} of {n} nodes"
        )));
    }
    Ok(tree)
}

fn scheme_layout(spec: &TreeSpec) -> (Vec<String>, Vec<(usize, usize, f64)>, Vec<usize>) {
    let k = spec.n_classes;
    match spec.scheme {
        TreeScheme::OrdinalChain => {
            let names = (0..k).map(|i| format!("c{i}")).collect();
            let edges = (0..k - 1).map(|i| (i, i + 1, 1.0)).collect();
            (names, edges, (0..k).collect())
        }
        TreeScheme::FlatStar => {
            let mut names = vec!["root".to_string()];
            names.extend((0..k).map(|i| format!("c{i}")));
            let edges = (0..k).map(|i| (0, i + 1, 1.0)).collect();
            (names, edges, (1..=k).collect())
        }
        TreeScheme::PolarityHierarchy => {
            // Classes are grouped by the sign of their centered score; empty
            // groups are omitted so every leaf carries a class.
            let group_of: Vec<i8> = (0..k)
                .map(|i| {
                    let s = class_score(i, k);
                    if s < 0.0 {
                        -1
                    } else if s > 0.0 {
                        1
                    } else {
                        0
                    }
                })
                .collect();
            let mut names = vec!["root".to_string()];
            let mut edges = Vec::new();
            let mut group_node = [usize::MAX; 3]; // index by (sign + 1)
            for (sign, label) in [(-1i8, "negative"), (0, "neutral"), (1, "positive")] {
                if group_of.iter().any(|&g| g == sign) {
                    let id = names.len();
                    names.push(label.to_string());
                    edges.push((0, id, 2.0));
                    group_node[(sign + 1) as usize] = id;
                }
            }
            let mut class_node = Vec::with_capacity(k);
            for i in 0..k {
                let id = names.len();
                names.push(format!("c{i}"));
                edges.push((group_node[(group_of[i] + 1) as usize], id, 1.0));
                class_node.push(id);
            }
            (names, edges, class_node)
        }
    }
}

fn explicit_layout(
    k: usize,
    list: &[(String, String, f64)],
) -> Result<(Vec<String>, Vec<(usize, usize, f64)>, Vec<usize>)> {
    let mut names: Vec<String> = Vec::new();
    let mut index = std::collections::BTreeMap::new();
    let mut intern = |name: &str, names: &mut Vec<String>| -> usize {
        *index.entry(name.to_string()).or_insert_with(|| {
            names.push(name.to_string());
            names.len() - 1
        })
    };
    let mut edges = Vec::with_capacity(list.len());
    for (parent, child, w) in list {
        let u = intern(parent, &mut names);
        let v = intern(child, &mut names);
        if u == v {
            return Err(Error::InvalidSpec(format!("self-loop on node `{parent}`")));
        }
        edges.push((u, v, *w));
    }
    let mut class_node = Vec::with_capacity(k);
    for i in 0..k {
        let want = format!("c{i}");
        match names.iter().position(|n| *n == want) {
            Some(id) => class_node.push(id),
            None => {
                return Err(Error::InvalidSpec(format!(
                    "explicit tree is missing class node `{want}`"
                )))
            }
        }
    }
    Ok((names, edges, class_node))
}

fn apply_weight_override(
    mut edges: Vec<(usize, usize, f64)>,
    weights: Option<&[f64]>,
) -> Result<Vec<(usize, usize, f64)>> {
    if let Some(ws) = weights {
        if ws.len() != edges.len() {
            return Err(Error::InvalidSpec(format!(
                "weight override has {} entries, tree has {} edges",
                ws.len(),
                edges.len()
            )));
        }
        for (e, &w) in edges.iter_mut().zip(ws) {
            e.2 = w;
        }
    }
    Ok(edges)
}

/// Default per-class label scores used by the label-discrepancy measure.
///
/// Ordinal layouts use the centered score directly; the polarity hierarchy
/// maps each class to `sign(score) * (root-to-leaf path weight)` so that the
/// discrepancy reacts to polarity flips rather than within-group identity.
pub fn default_label_scale(spec: &TreeSpec) -> Result<Vec<f64>> {
    let k = spec.n_classes;
    match (spec.scheme, &spec.edges) {
        (TreeScheme::PolarityHierarchy, None) => {
            let tree: EmotionTree<f64> = build_tree(spec)?;
            let root = 0usize;
            let dist = tree.distances_from(root);
            Ok((0..k)
                .map(|i| class_score(i, k).signum() * dist[tree.class_node[i]])
                .collect())
        }
        _ => Ok((0..k).map(|i| class_score(i, k)).collect()),
    }
}

/// Parses the plain-text tree spec format.
///
/// ```text
/// # comment
/// scheme = polarity-hierarchy
/// n_classes = 7
/// weights = 2 2 2 1 1 1 1 1 1 1
/// edges =
/// root left 2
/// left c0 1
/// ...
/// end
/// ```
///
/// `weights` lists one value per edge in construction order; the `edges`
/// block (terminated by `end`) replaces the topology, naming class `i`'s
/// node `c<i>`.
pub fn parse_tree_spec(text: &str) -> Result<TreeSpec> {
    let mut scheme = None;
    let mut n_classes = None;
    let mut weights = None;
    let mut edges: Option<Vec<(String, String, f64)>> = None;

    let mut lines = text.lines().enumerate();
    while let Some((lineno, raw)) = lines.next() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidSpec(format!("tree spec line {}: expected `key = value`", lineno + 1))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "scheme" => scheme = Some(TreeScheme::parse(value)?),
            "n_classes" => {
                n_classes = Some(value.parse::<usize>().map_err(|_| {
                    Error::InvalidSpec(format!("tree spec line {}: bad n_classes", lineno + 1))
                })?)
            }
            "weights" => {
                let ws = value
                    .split_whitespace()
                    .map(|t| t.parse::<f64>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| {
                        Error::InvalidSpec(format!("tree spec line {}: bad weight", lineno + 1))
                    })?;
                weights = Some(ws);
            }
            "edges" => {
                if !value.is_empty() {
                    return Err(Error::InvalidSpec(format!(
                        "tree spec line {}: `edges =` starts a block; put edges on following lines",
                        lineno + 1
                    )));
                }
                let mut list = Vec::new();
                let mut closed = false;
                for (inner_no, raw) in lines.by_ref() {
                    let line = raw.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    if line == "end" {
                        closed = true;
                        break;
                    }
                    let mut parts = line.split_whitespace();
                    let (p, c, w) = (parts.next(), parts.next(), parts.next());
                    let (Some(p), Some(c), Some(w)) = (p, c, w) else {
                        return Err(Error::InvalidSpec(format!(
                            "tree spec line {}: expected `parent child weight`",
                            inner_no + 1
                        )));
                    };
                    if parts.next().is_some() {
                        return Err(Error::InvalidSpec(format!(
                            "tree spec line {}: trailing tokens after weight",
                            inner_no + 1
                        )));
                    }
                    let w = w.parse::<f64>().map_err(|_| {
                        Error::InvalidSpec(format!("tree spec line {}: bad weight", inner_no + 1))
                    })?;
                    list.push((p.to_string(), c.to_string(), w));
                }
                if !closed {
                    return Err(Error::InvalidSpec("tree spec: unterminated `edges` block".into()));
                }
                edges = Some(list);
            }
            other => {
                return Err(Error::InvalidSpec(format!(
                    "tree spec line {}: unknown key `{other}`",
                    lineno + 1
                )))
            }
        }
    }
    let scheme = scheme.ok_or_else(|| Error::InvalidSpec("tree spec: missing `scheme`".into()))?;
    let n_classes =
        n_classes.ok_or_else(|| Error::InvalidSpec("tree spec: missing `n_classes`".into()))?;
    Ok(TreeSpec { scheme, n_classes, weights, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn ordinal_chain_has_path_shape() {
        let tree: EmotionTree<f64> = build_tree(&TreeSpec::new(TreeScheme::OrdinalChain, 7)).unwrap();
        assert_eq!(tree.n_nodes(), 7);
        assert_eq!(tree.n_edges(), 6);
        assert_eq!(tree.tree_distance(0, 3).unwrap(), 3.0);
        assert_eq!(tree.tree_distance(2, 2).unwrap(), 0.0);
    }

    #[test]
    fn flat_star_distance_is_two_weights() {
        let mut spec = TreeSpec::new(TreeScheme::FlatStar, 6);
        let tree: EmotionTree<f64> = build_tree(&spec).unwrap();
        for a in 0..6 {
            for b in 0..6 {
                let want = if a == b { 0.0 } else { 2.0 };
                assert_eq!(tree.tree_distance(a, b).unwrap(), want);
            }
        }
        // override every edge weight to 1.5 -> distance 3.0
        spec.weights = Some(vec![1.5; 6]);
        let tree: EmotionTree<f64> = build_tree(&spec).unwrap();
        assert_eq!(tree.tree_distance(0, 5).unwrap(), 3.0);
    }

    #[test]
    fn polarity_hierarchy_splits_by_sign() {
        let tree: EmotionTree<f64> =
            build_tree(&TreeSpec::new(TreeScheme::PolarityHierarchy, 7)).unwrap();
        // c0 (score -3) and c6 (+3): leaf-group-root-group-leaf = 1+2+2+1.
        assert_eq!(tree.tree_distance(0, 6).unwrap(), 6.0);
        // same subtree: leaf-group-leaf = 2.
        assert_eq!(tree.tree_distance(0, 1).unwrap(), 2.0);
        // neutral (c3) sits in its own group.
        assert_eq!(tree.tree_distance(3, 4).unwrap(), 6.0);
    }

    #[test]
    fn polarity_hierarchy_even_k_omits_neutral() {
        let tree: EmotionTree<f64> =
            build_tree(&TreeSpec::new(TreeScheme::PolarityHierarchy, 6)).unwrap();
        // root + 2 groups + 6 leaves.
        assert_eq!(tree.n_nodes(), 9);
    }

    #[test]
    fn two_class_chain_matrix() {
        let tree: EmotionTree<f64> = build_tree(&TreeSpec::new(TreeScheme::OrdinalChain, 2)).unwrap();
        assert_eq!(tree.all_pairs_distance(), vec![vec![0.0, 1.0], vec![1.0, 0.0]]);
    }

    #[test]
    fn rejects_fewer_than_two_classes() {
        let err = build_tree::<f64>(&TreeSpec::new(TreeScheme::FlatStar, 1)).unwrap_err();
        assert!(matches!(err, crate::Error::InvalidSpec(_)));
    }

    #[test]
    fn rejects_out_of_range_class() {
        let tree: EmotionTree<f64> = build_tree(&TreeSpec::new(TreeScheme::FlatStar, 3)).unwrap();
        assert!(tree.tree_distance(0, 3).is_err());
    }

    #[test]
    fn explicit_edges_define_topology() {
        let spec = TreeSpec {
            scheme: TreeScheme::FlatStar,
            n_classes: 3,
            weights: None,
            edges: Some(vec![
                ("root".into(), "c0".into(), 0.5),
                ("root".into(), "mid".into(), 1.0),
                ("mid".into(), "c1".into(), 0.25),
                ("mid".into(), "c2".into(), 0.25),
            ]),
        };
        let tree: EmotionTree<f64> = build_tree(&spec).unwrap();
        assert_eq!(tree.tree_distance(1, 2).unwrap(), 0.5);
        assert_eq!(tree.tree_distance(0, 1).unwrap(), 1.75);
    }

    #[test]
    fn default_scale_ordinal_is_centered_scores() {
        let spec = TreeSpec::new(TreeScheme::OrdinalChain, 7);
        assert_eq!(default_label_scale(&spec).unwrap(), vec![-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn default_scale_polarity_is_signed_depth() {
        let spec = TreeSpec::new(TreeScheme::PolarityHierarchy, 7);
        assert_eq!(
            default_label_scale(&spec).unwrap(),
            vec![-3.0, -3.0, -3.0, 0.0, 3.0, 3.0, 3.0]
        );
    }

    #[test]
    fn parse_round_trip() {
        let text = "# demo\nscheme = flat-star\nn_classes = 4\nweights = 1 2 3 4\n";
        let spec = parse_tree_spec(text).unwrap();
        assert_eq!(spec.scheme, TreeScheme::FlatStar);
        assert_eq!(spec.n_classes, 4);
        assert_eq!(spec.weights, Some(vec![1.0, 2.0, 3.0, 4.0]));
    }

    #[test]
    fn parse_edges_block() {
        let text = "scheme = flat-star\nn_classes = 2\nedges =\nroot c0 1\nroot c1 1\nend\n";
        let spec = parse_tree_spec(text).unwrap();
        assert_eq!(spec.edges.as_ref().unwrap().len(), 2);
        let tree: EmotionTree<f64> = build_tree(&spec).unwrap();
        assert_eq!(tree.tree_distance(0, 1).unwrap(), 2.0);
    }

    #[test]
    fn parse_rejects_unknown_key() {
        assert!(parse_tree_spec("scheme = flat-star\nn_classes = 3\nbogus = 1\n").is_err());
    }

    fn arb_spec() -> impl Strategy<Value = TreeSpec> {
        (
            prop_oneof![
                Just(TreeScheme::OrdinalChain),
                Just(TreeScheme::PolarityHierarchy),
                Just(TreeScheme::FlatStar)
            ],
            2usize..9,
        )
            .prop_flat_map(|(scheme, k)| {
                let n_edges = match scheme {
                    TreeScheme::OrdinalChain => k - 1,
                    TreeScheme::FlatStar => k,
                    TreeScheme::PolarityHierarchy => {
                        let has_neutral = k % 2 == 1;
                        k + 2 + usize::from(has_neutral)
                    }
                };
                prop::collection::vec(0.1f64..5.0, n_edges).prop_map(move |ws| TreeSpec {
                    scheme,
                    n_classes: k,
                    weights: Some(ws),
                    edges: None,
                })
            })
    }

    proptest! {
        #[test]
        fn metric_axioms_hold(spec in arb_spec()) {
            let tree: EmotionTree<f64> = build_tree(&spec).unwrap();
            let k = tree.n_classes();
            let m = tree.all_pairs_distance();
            for a in 0..k {
                prop_assert_eq!(m[a][a], 0.0);
                for b in 0..k {
                    prop_assert_eq!(m[a][b], m[b][a]);
                    prop_assert_eq!(m[a][b], tree.tree_distance(a, b).unwrap());
                    if a != b {
                        prop_assert!(m[a][b] > 0.0);
                    }
                    for c in 0..k {
                        prop_assert!(m[a][c] <= m[a][b] + m[b][c] + 1e-12);
                    }
                }
            }
        }
    }
}
