//! Marching trees.
//!
//! The root is labeled by a permutation. A vertex whose label has last
//! descent at most `t` is a leaf, as is a vertex labeled ∅. Every other
//! vertex has one child per way of marching from its label: single marches
//! in cohomology mode, K-marches toward every non-empty set of pivot rows in
//! K mode. A label with no pivots gets a single ∅ child.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::diagram::{k_march, pivot_rows};
use crate::error::{Error, Result};
use crate::expansion::ExpansionMap;
use crate::perm::Permutation;

pub const DEFAULT_NODE_CEILING: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Cohomology,
    K,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarchNode {
    /// `None` is the null label ∅.
    pub label: Option<Permutation>,
    /// Pivot rows of the edge from the parent; empty at the root and on ∅ edges.
    pub march: Vec<usize>,
    pub children: Vec<MarchNode>,
}

impl MarchNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    fn count(&self) -> usize {
        1 + self.children.iter().map(MarchNode::count).sum::<usize>()
    }

    fn visit<'a>(&'a self, out: &mut Vec<&'a MarchNode>) {
        out.push(self);
        for c in &self.children {
            c.visit(out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarchTree {
    pub root: MarchNode,
    pub t: usize,
    pub mode: Mode,
    /// Labels are exported padded to this many entries. Marching never
    /// moves past the root's window, which is the default.
    pub width: usize,
}

/// Tree construction with a node ceiling and optional parallelism.
///
/// Children are always emitted in the same order (by `|I|`, then
/// lexicographically on `I`), so parallel and sequential builds agree.
#[derive(Clone, Debug)]
pub struct TreeBuilder {
    t: usize,
    mode: Mode,
    ceiling: usize,
    parallel: bool,
}

impl TreeBuilder {
    pub fn new(t: usize, mode: Mode) -> Self {
        Self { t, mode, ceiling: DEFAULT_NODE_CEILING, parallel: false }
    }

    pub fn ceiling(mut self, ceiling: usize) -> Self {
        self.ceiling = ceiling;
        self
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }

    pub fn build(&self, beta: &Permutation) -> Result<MarchTree> {
        let counter = AtomicUsize::new(0);
        let root = self.grow(Some(beta.clone()), Vec::new(), &counter)?;
        Ok(MarchTree { root, t: self.t, mode: self.mode, width: beta.window() })
    }

    fn bump(&self, counter: &AtomicUsize) -> Result<()> {
        if counter.fetch_add(1, Ordering::Relaxed) >= self.ceiling {
            Err(Error::NodeCeiling(self.ceiling))
        } else {
            Ok(())
        }
    }

    fn grow(&self, label: Option<Permutation>, march: Vec<usize>, counter: &AtomicUsize) -> Result<MarchNode> {
        self.bump(counter)?;
        let Some(gamma) = label.as_ref().filter(|g| g.last_descent().is_some_and(|d| d > self.t)) else {
            return Ok(MarchNode { label, march, children: Vec::new() });
        };
        let rows = pivot_rows(gamma)?;
        if rows.is_empty() {
            self.bump(counter)?;
            let null = MarchNode { label: None, march: Vec::new(), children: Vec::new() };
            return Ok(MarchNode { label, march, children: vec![null] });
        }
        let subsets = match self.mode {
            Mode::Cohomology => rows.iter().map(|&r| vec![r]).collect(),
            Mode::K => nonempty_subsets(&rows),
        };
        let child = |rows: Vec<usize>| -> Result<MarchNode> {
            let next = k_march(gamma, &rows)?;
            self.grow(Some(next), rows, counter)
        };
        let children = if self.parallel {
            subsets.into_par_iter().map(child).collect::<Result<Vec<_>>>()?
        } else {
            subsets.into_iter().map(child).collect::<Result<Vec<_>>>()?
        };
        Ok(MarchNode { label, march, children })
    }
}

/// Non-empty subsets of `items`, by size and then lexicographically.
fn nonempty_subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u64..(1 << items.len()))
        .map(|mask| (0..items.len()).filter(|b| mask & (1 << b) != 0).map(|b| items[b]).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn build_tree(beta: &Permutation, t: usize, mode: Mode) -> Result<MarchTree> {
    TreeBuilder::new(t, mode).build(beta)
}

/// Multiplicities of permutation-labeled leaves, plus the number of ∅ leaves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LeafSummary {
    pub counts: BTreeMap<Permutation, usize>,
    pub null_count: usize,
}

impl LeafSummary {
    pub fn total(&self) -> usize {
        self.counts.values().sum::<usize>() + self.null_count
    }

    pub fn labeled(&self) -> usize {
        self.counts.values().sum()
    }
}

impl MarchTree {
    pub fn node_count(&self) -> usize {
        self.root.count()
    }

    /// All vertices in depth-first pre-order.
    pub fn nodes(&self) -> Vec<&MarchNode> {
        let mut out = Vec::new();
        self.root.visit(&mut out);
        out
    }

    pub fn leaves(&self) -> impl Iterator<Item = &MarchNode> {
        self.nodes().into_iter().filter(|n| n.is_leaf())
    }

    pub fn leaf_summary(&self) -> LeafSummary {
        let mut summary = LeafSummary::default();
        for leaf in self.leaves() {
            match &leaf.label {
                Some(p) => *summary.counts.entry(p.clone()).or_default() += 1,
                None => summary.null_count += 1,
            }
        }
        summary
    }

    /// `Σ (−1)^{base_length − ℓ(π)} · #π-leaves · [π]`; ∅ leaves contribute nothing.
    pub fn signed_expansion(&self, base_length: usize) -> ExpansionMap {
        let mut out = ExpansionMap::new();
        for (p, &count) in &self.leaf_summary().counts {
            let magnitude = BigInt::from(count);
            let c = if (base_length + p.length()).is_multiple_of(2) { magnitude } else { -magnitude };
            out.add(p.clone(), c);
        }
        out
    }

    pub fn to_dot(&self) -> String {
        fn walk(node: &MarchNode, w: usize, next: &mut usize, out: &mut String) -> usize {
            let id = *next;
            *next += 1;
            let text = label_text(node, w);
            let _ = writeln!(out, "  n{id} [label=\"{text}\"];");
            for child in &node.children {
                let cid = walk(child, w, next, out);
                let _ = writeln!(out, "  n{id} -> n{cid} [label=\"{}\"];", join_rows(&child.march));
            }
            id
        }
        let mut out = String::from("digraph march_tree {\n");
        walk(&self.root, self.width, &mut 0, &mut out);
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> Value {
        fn node(n: &MarchNode, w: usize) -> Value {
            json!({
                "label": n.label.as_ref().map(|p| p.to_padded_string(w)),
                "march": n.march,
                "children": n.children.iter().map(|c| node(c, w)).collect::<Vec<_>>(),
            })
        }
        node(&self.root, self.width)
    }

    /// Indented outline, one vertex per line.
    pub fn to_text(&self) -> String {
        fn walk(node: &MarchNode, w: usize, depth: usize, out: &mut String) {
            let text = label_text(node, w);
            if depth == 0 {
                let _ = writeln!(out, "{text}");
            } else {
                let indent = "  ".repeat(depth);
                let _ = match node.march.as_slice() {
                    [] => writeln!(out, "{indent}-> {text}"),
                    rows => writeln!(out, "{indent}-[{}]-> {text}", join_rows(rows)),
                };
            }
            for c in &node.children {
                walk(c, w, depth + 1, out);
            }
        }
        let mut out = String::new();
        walk(&self.root, self.width, 0, &mut out);
        out
    }
}

fn label_text(node: &MarchNode, width: usize) -> String {
    node.label.as_ref().map_or("∅".to_string(), |p| p.to_padded_string(width))
}

fn join_rows(rows: &[usize]) -> String {
    rows.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// The unique permutation-labeled leaf of `KT_t(id ⋆_n α)`, if there is
/// exactly one (counted with multiplicity).
pub fn unique_labeled_leaf(alpha: &Permutation, t: usize, n: usize) -> Result<Option<Permutation>> {
    unique_labeled_leaf_with(alpha, n, &TreeBuilder::new(t, Mode::K))
}

/// [`unique_labeled_leaf`] with the truncation index, ceiling and
/// parallelism taken from `builder`.
pub fn unique_labeled_leaf_with(alpha: &Permutation, n: usize, builder: &TreeBuilder) -> Result<Option<Permutation>> {
    let beta = Permutation::star(&Permutation::identity(), alpha, n)?;
    let summary = builder.build(&beta)?.leaf_summary();
    Ok(match summary.labeled() {
        1 => summary.counts.into_keys().next(),
        _ => None,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn labels(nodes: &[MarchNode]) -> Vec<String> {
        nodes.iter().map(|n| label_text(n, 6)).collect()
    }

    #[test]
    fn tree_of_321465() {
        let tree = build_tree(&p("321465"), 2, Mode::K).unwrap();
        assert_eq!(tree.root.children.len(), 1);
        let child = &tree.root.children[0];
        assert_eq!(child.label, Some(p("321546")));
        assert_eq!(child.march, vec![4]);
        assert_eq!(labels(&child.children), ["421356", "341256", "324156", "431256", "423156", "342156", "432156"]);
        let marches: Vec<Vec<usize>> = child.children.iter().map(|c| c.march.clone()).collect();
        assert_eq!(marches, vec![vec![1], vec![2], vec![3], vec![1, 2], vec![1, 3], vec![2, 3], vec![1, 2, 3]]);
        for g in &child.children {
            let null_child = g.children.len() == 1 && g.children[0].label.is_none();
            let leaf = ["421356", "341256", "431256"].contains(&label_text(g, 6).as_str());
            assert_eq!(null_child, !leaf);
        }
    }

    #[test]
    fn identity_tree_is_single_node() {
        let tree = build_tree(&Permutation::identity(), 1, Mode::K).unwrap();
        assert_eq!(tree.node_count(), 1);
        let summary = tree.leaf_summary();
        assert_eq!(summary.counts, BTreeMap::from([(Permutation::identity(), 1)]));
        assert_eq!(summary.null_count, 0);
        assert_eq!(tree.signed_expansion(0), ExpansionMap::singleton(Permutation::identity(), 1));
    }

    #[test]
    fn leaf_summary_of_321465() {
        let tree = build_tree(&p("321465"), 2, Mode::K).unwrap();
        let s = tree.leaf_summary();
        let want: BTreeMap<Permutation, usize> =
            [("421356", 1), ("341256", 1), ("431256", 1)].iter().map(|&(q, c)| (p(q), c)).collect();
        assert_eq!(s.counts, want);
        assert_eq!(s.null_count, 4);
        assert_eq!(s.total(), tree.leaves().count());
        let e = tree.signed_expansion(4);
        assert_eq!(e.to_json_padded(6).to_string(), r#"{"341256":1,"421356":1,"431256":-1}"#);
    }

    #[test]
    fn unique_leaf_examples() {
        assert_eq!(unique_labeled_leaf(&p("3214"), 4, 4).unwrap(), Some(p("12463578")));
        assert_eq!(unique_labeled_leaf(&Permutation::identity(), 3, 3).unwrap(), Some(Permutation::identity()));
        assert_eq!(unique_labeled_leaf(&p("132"), 2, 3).unwrap(), Some(p("132")));
        assert!(unique_labeled_leaf(&p("4321"), 2, 3).is_err());
    }

    #[test]
    fn ceiling_is_enforced() {
        let err = TreeBuilder::new(2, Mode::K).ceiling(3).build(&p("321465"));
        assert_eq!(err, Err(Error::NodeCeiling(3)));
        assert_eq!(TreeBuilder::new(2, Mode::K).ceiling(12).build(&p("321465")), Err(Error::NodeCeiling(12)));
        let tree = TreeBuilder::new(2, Mode::K).ceiling(13).build(&p("321465")).unwrap();
        assert_eq!(tree.node_count(), 13);
    }

    #[test]
    fn exports() {
        let tree = build_tree(&p("321465"), 4, Mode::K).unwrap();
        assert_eq!(
            tree.to_dot(),
            "digraph march_tree {\n  n0 [label=\"321465\"];\n  n1 [label=\"321546\"];\n  n0 -> n1 [label=\"4\"];\n}\n"
        );
        assert_eq!(
            tree.to_json().to_string(),
            r#"{"label":"321465","march":[],"children":[{"label":"321546","march":[4],"children":[]}]}"#
        );
        assert_eq!(tree.to_text(), "321465\n  -[4]-> 321546\n");
        let null = build_tree(&p("432156"), 2, Mode::K).unwrap();
        assert!(null.to_dot().contains("[label=\"∅\"]"));
        assert!(null.to_json().to_string().contains(r#"{"label":null,"march":[],"children":[]}"#));
    }

    #[test]
    fn parallel_build_is_deterministic() {
        for beta in ["34127658", "321465", "4317625"] {
            let seq = build_tree(&p(beta), 2, Mode::K).unwrap();
            let par = TreeBuilder::new(2, Mode::K).parallel(true).build(&p(beta)).unwrap();
            assert_eq!(seq.to_json().to_string(), par.to_json().to_string());
        }
    }

    #[test]
    fn leaves_and_internal_nodes_respect_t() {
        for beta in Permutation::all(5) {
            for t in 1..=3 {
                for mode in [Mode::K, Mode::Cohomology] {
                    let tree = build_tree(&beta, t, mode).unwrap();
                    for node in tree.nodes() {
                        let Some(label) = &node.label else { continue };
                        let low = label.last_descent().is_none_or(|d| d <= t);
                        assert_eq!(node.is_leaf(), low, "{beta} t={t}");
                    }
                }
            }
        }
    }

    fn vertex_paths(tree: &MarchTree) -> BTreeSet<Vec<(Vec<usize>, Option<Permutation>)>> {
        fn walk(
            n: &MarchNode,
            prefix: &mut Vec<(Vec<usize>, Option<Permutation>)>,
            out: &mut BTreeSet<Vec<(Vec<usize>, Option<Permutation>)>>,
        ) {
            prefix.push((n.march.clone(), n.label.clone()));
            out.insert(prefix.clone());
            for c in &n.children {
                walk(c, prefix, out);
            }
            prefix.pop();
        }
        let mut out = BTreeSet::new();
        walk(&tree.root, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn smaller_t_prunes_larger_t() {
        for beta in Permutation::all(4) {
            for s in 1..=3 {
                let big = vertex_paths(&build_tree(&beta, s, Mode::K).unwrap());
                for t in 1..=s {
                    let small = vertex_paths(&build_tree(&beta, t, Mode::K).unwrap());
                    assert!(small.is_superset(&big), "{beta} t={t} s={s}");
                }
            }
        }
    }

    #[test]
    fn vexillary_trees_have_at_most_one_labeled_leaf() {
        for beta in Permutation::all(5).filter(Permutation::is_vexillary) {
            for s in 1..=4 {
                let tree = build_tree(&beta, s, Mode::K).unwrap();
                assert!(tree.leaf_summary().labeled() <= 1, "{beta} s={s}");
            }
        }
    }

    #[test]
    fn grassmannian_stabilization_has_single_leaf() {
        for pi in Permutation::all(4) {
            let Some(s) = pi.grassmannian_descent() else { continue };
            for n in 0..=4 {
                let beta = pi.stabilize(n);
                let summary = build_tree(&beta, s, Mode::K).unwrap().leaf_summary();
                assert_eq!(summary.labeled(), 1, "{pi} N={n}");
                assert_eq!(summary.counts.keys().next(), Some(&pi));
            }
        }
    }
}
