//! Markov equivalence of regression graphs: two graphs over the same labelled
//! node set define the same independence structure iff they have the same
//! skeleton and the same set of collision-V triples, regardless of which of
//! the three collision patterns realizes each triple.

use crate::graph::{MixedGraph, RegressionGraph, Subclass};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EquivalenceError {
    #[error("NodeSetMismatch: the graphs are over different labelled node sets")]
    NodeSetMismatch,
    #[error("GraphTooLarge: orientation search supports at most {max} nodes, got {got}")]
    GraphTooLarge { max: usize, got: usize },
}

/// A collision triple by labels: inner node and the unordered outer pair.
pub type CollisionTriple = (String, (String, String));

/// Comparison of two graphs under the skeleton-plus-collision criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    /// Symmetric difference of the skeletons, as label pairs.
    pub skeleton_diff: Vec<(String, String)>,
    /// Collision triples present in exactly one of the graphs.
    pub collision_diff: Vec<CollisionTriple>,
    /// Informational: whether the two block orderings assign every node to
    /// the same position. Differing orders do not preclude equivalence.
    pub block_orders_differ: bool,
}

fn collision_triples_by_label(g: &MixedGraph) -> BTreeSet<CollisionTriple> {
    g.collision_triples()
        .into_iter()
        .map(|(inner, a, b)| {
            let (la, lb) = (g.label(a).to_string(), g.label(b).to_string());
            let outer = if la <= lb { (la, lb) } else { (lb, la) };
            (g.label(inner).to_string(), outer)
        })
        .collect()
}

fn block_signature(g: &MixedGraph) -> Vec<(String, usize)> {
    let mut sig: Vec<(String, usize)> = (0..g.node_count())
        .map(|v| (g.label(v).to_string(), g.rank_of(v)))
        .collect();
    sig.sort();
    sig
}

/// Decide Markov equivalence by comparing skeletons and collision-V triple
/// sets over the shared labelled node set.
pub fn markov_equivalent(
    g1: &RegressionGraph,
    g2: &RegressionGraph,
) -> Result<EquivalenceReport, EquivalenceError> {
    let l1: BTreeSet<&str> = g1.labels().iter().map(|s| s.as_str()).collect();
    let l2: BTreeSet<&str> = g2.labels().iter().map(|s| s.as_str()).collect();
    if l1 != l2 {
        return Err(EquivalenceError::NodeSetMismatch);
    }

    let s1: BTreeSet<(String, String)> = g1.skeleton_labels().into_iter().collect();
    let s2: BTreeSet<(String, String)> = g2.skeleton_labels().into_iter().collect();
    let skeleton_diff: Vec<(String, String)> =
        s1.symmetric_difference(&s2).cloned().collect();

    let c1 = collision_triples_by_label(g1.graph());
    let c2 = collision_triples_by_label(g2.graph());
    let collision_diff: Vec<CollisionTriple> = c1.symmetric_difference(&c2).cloned().collect();

    Ok(EquivalenceReport {
        equivalent: skeleton_diff.is_empty() && collision_diff.is_empty(),
        skeleton_diff,
        collision_diff,
        block_orders_differ: block_signature(g1.graph()) != block_signature(g2.graph()),
    })
}

/// Which pure subclasses contain a graph Markov equivalent to `g` on the same
/// skeleton: a concentration graph iff `g` has no collision V, a covariance
/// graph iff it has no transmitting V, and a DAG iff some acyclic orientation
/// of the skeleton reproduces exactly `g`'s collision triples (decided by
/// exhaustive orientation search; `n <= 10`).
pub fn equivalent_subclass_members(
    g: &RegressionGraph,
) -> Result<BTreeSet<Subclass>, EquivalenceError> {
    let n = g.node_count();
    if n > 10 {
        return Err(EquivalenceError::GraphTooLarge { max: 10, got: n });
    }
    let mut out = BTreeSet::new();
    let collisions = g.collision_triples();
    if collisions.is_empty() {
        out.insert(Subclass::ConcentrationGraph);
    }
    if g.transmitting_triples().is_empty() {
        out.insert(Subclass::CovarianceGraph);
    }

    // Orientation search: rank nodes by a permutation, point every skeleton
    // edge from the later to the earlier node, and compare collider triples.
    let skeleton = g.skeleton();
    let target: BTreeSet<(usize, usize, usize)> = collisions.into_iter().collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let found = permutations(&mut perm, 0, &mut |order: &[usize]| {
        let mut pos = vec![0usize; n];
        for (p, &v) in order.iter().enumerate() {
            pos[v] = p;
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n]; // parents per node
        for &(a, b) in &skeleton {
            let (t, h) = if pos[a] > pos[b] { (a, b) } else { (b, a) };
            adj[h].push(t);
        }
        let mut colliders = BTreeSet::new();
        for (inner, pa) in adj.iter().enumerate() {
            for (x, &i) in pa.iter().enumerate() {
                for &k in pa.iter().skip(x + 1) {
                    if !skeleton.contains(&(i.min(k), i.max(k))) {
                        let (i, k) = (i.min(k), i.max(k));
                        colliders.insert((inner, i, k));
                    }
                }
            }
        }
        colliders == target
    });
    if found {
        out.insert(Subclass::Dag);
    }
    Ok(out)
}

/// Visit permutations until the callback returns true.
fn permutations(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == items.len() {
        return visit(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permutations(items, k + 1, visit) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}
