//! Marginalization and conditioning of regression graphs into summary graphs,
//! and the distortion detectors: direct confounding (double edges), indirect
//! confounding (dashed routes through intermediates), under-conditioning
//! (ignored intermediates) and over-conditioning (conditioned common
//! responses and activated collision chains).
//!
//! Elimination closes one V at a time. Marginalizing an inner node closes
//! every transmitting V at it; conditioning closes every collision V. The
//! induced edge carries the outer end marks of the two closed edges: two
//! heads give a dashed line, head and tail give an arrow pointing at the
//! head side, two tails give a full line. The removal side of these rules is
//! fixed by the equivalence theory; the composition side is pinned down by
//! requiring agreement with the Gaussian oracle, which the test suite
//! enforces exhaustively at small sizes.

use crate::bits::NodeSet;
use crate::graph::{
    EdgeSpec, EndMark, GraphError, MixedGraph, NodeId, RegressionGraph, SummaryGraph,
};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TransformError {
    #[error("InvalidSpec: marginalization and conditioning sets overlap")]
    OverlappingSets,
    #[error("UnknownNode: label {0} is not declared")]
    UnknownNode(String),
    #[error("ConditioningPresent: direct-confounding detection needs a marginalization-only summary graph")]
    ConditioningPresent,
    #[error("EdgeAbsent: no arrow {regressor} -> {response} in the summary graph")]
    EdgeAbsent { regressor: String, response: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which nodes to marginalize over and which to condition on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TransformSpec {
    pub marginalize: NodeSet,
    pub condition: NodeSet,
}

impl TransformSpec {
    pub fn new(marginalize: NodeSet, condition: NodeSet) -> Result<Self, TransformError> {
        if !marginalize.is_disjoint(&condition) {
            return Err(TransformError::OverlappingSets);
        }
        Ok(TransformSpec {
            marginalize,
            condition,
        })
    }

    pub fn from_labels(
        g: &MixedGraph,
        marginalize: &[&str],
        condition: &[&str],
    ) -> Result<Self, TransformError> {
        let resolve = |labels: &[&str]| -> Result<NodeSet, TransformError> {
            labels
                .iter()
                .map(|&l| {
                    g.node_by_label(l)
                        .ok_or_else(|| TransformError::UnknownNode(l.to_string()))
                })
                .collect()
        };
        Self::new(resolve(marginalize)?, resolve(condition)?)
    }

    pub fn is_identity(&self) -> bool {
        self.marginalize.is_empty() && self.condition.is_empty()
    }
}

/// Multigraph scratch space for node elimination.
struct Scratch {
    arrows: BTreeSet<(usize, usize)>, // (tail, head)
    dashes: BTreeSet<(usize, usize)>, // (min, max)
    fulls: BTreeSet<(usize, usize)>,  // (min, max)
}

fn norm(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl Scratch {
    fn from_graph(g: &MixedGraph) -> Self {
        let mut s = Scratch {
            arrows: BTreeSet::new(),
            dashes: BTreeSet::new(),
            fulls: BTreeSet::new(),
        };
        for (a, b, c) in g.pairs() {
            for arrow in [c.arrow, c.reverse_arrow].into_iter().flatten() {
                s.arrows.insert(arrow);
            }
            if c.dashed {
                s.dashes.insert(norm(a, b));
            }
            if c.full {
                s.fulls.insert(norm(a, b));
            }
        }
        s
    }

    /// Edge components at `v` as `(other, mark at v, mark at other)`.
    fn half_edges(&self, v: usize) -> Vec<(usize, EndMark, EndMark)> {
        let mut out = Vec::new();
        for &(t, h) in &self.arrows {
            if t == v {
                out.push((h, EndMark::Tail, EndMark::Head));
            } else if h == v {
                out.push((t, EndMark::Head, EndMark::Tail));
            }
        }
        for &(a, b) in &self.dashes {
            if a == v {
                out.push((b, EndMark::Head, EndMark::Head));
            } else if b == v {
                out.push((a, EndMark::Head, EndMark::Head));
            }
        }
        for &(a, b) in &self.fulls {
            if a == v {
                out.push((b, EndMark::Tail, EndMark::Tail));
            } else if b == v {
                out.push((a, EndMark::Tail, EndMark::Tail));
            }
        }
        out.sort();
        out
    }

    /// Insert the edge composed from two outer marks; true when new.
    fn insert_composed(&mut self, u1: usize, at_u1: EndMark, u2: usize, at_u2: EndMark) -> bool {
        match (at_u1, at_u2) {
            (EndMark::Head, EndMark::Head) => self.dashes.insert(norm(u1, u2)),
            (EndMark::Head, EndMark::Tail) => self.arrows.insert((u2, u1)),
            (EndMark::Tail, EndMark::Head) => self.arrows.insert((u1, u2)),
            (EndMark::Tail, EndMark::Tail) => self.fulls.insert(norm(u1, u2)),
        }
    }

    /// One closure pass: close collision Vs at every node of `collider_open`
    /// and transmitting Vs at every node of `transmit_open`, without deleting
    /// anything. Returns whether an edge was added.
    fn close_pass(&mut self, n: usize, collider_open: NodeSet, transmit_open: NodeSet) -> bool {
        let mut changed = false;
        for v in 0..n {
            let close_coll = collider_open.contains(v);
            let close_trans = transmit_open.contains(v);
            if !close_coll && !close_trans {
                continue;
            }
            let inc = self.half_edges(v);
            for (x, &(u1, at_v1, at_u1)) in inc.iter().enumerate() {
                for &(u2, at_v2, at_u2) in inc.iter().skip(x + 1) {
                    if u1 == u2 {
                        continue;
                    }
                    let collision = at_v1 == EndMark::Head && at_v2 == EndMark::Head;
                    if if collision { close_coll } else { close_trans } {
                        changed |= self.insert_composed(u1, at_u1, u2, at_u2);
                    }
                }
            }
        }
        changed
    }

    fn delete(&mut self, v: usize) {
        self.arrows.retain(|&(t, h)| t != v && h != v);
        self.dashes.retain(|&(a, b)| a != v && b != v);
        self.fulls.retain(|&(a, b)| a != v && b != v);
    }
}

fn assemble_summary(
    g: &MixedGraph,
    scratch: &Scratch,
    keep: NodeSet,
    t: &TransformSpec,
) -> Result<SummaryGraph, TransformError> {
    let labels = g.labels();
    let blocks: Vec<Vec<&str>> = g
        .response_blocks()
        .iter()
        .map(|b| {
            b.iter()
                .filter(|&&v| keep.contains(v))
                .map(|&v| labels[v].as_str())
                .collect::<Vec<_>>()
        })
        .filter(|b| !b.is_empty())
        .collect();
    let block_slices: Vec<&[&str]> = blocks.iter().map(|b| b.as_slice()).collect();
    let context: Vec<&str> = g
        .context()
        .iter()
        .filter(|&&v| keep.contains(v))
        .map(|&v| labels[v].as_str())
        .collect();

    let mut edges: Vec<EdgeSpec<'_>> = Vec::new();
    for &(t0, h) in &scratch.arrows {
        edges.push(EdgeSpec::Arrow {
            tail: &labels[t0],
            head: &labels[h],
        });
    }
    for &(a, b) in &scratch.dashes {
        edges.push(EdgeSpec::Dashed(&labels[a], &labels[b]));
    }
    for &(a, b) in &scratch.fulls {
        edges.push(EdgeSpec::Full(&labels[a], &labels[b]));
    }
    let mixed = MixedGraph::new(&block_slices, &context, &edges)?;
    let marg = t.marginalize.iter().map(|v| g.label(v).to_string()).collect();
    let cond = t.condition.iter().map(|v| g.label(v).to_string()).collect();
    Ok(SummaryGraph::from_mixed(mixed, marg, cond)?)
}

fn summarize_mixed(g: &MixedGraph, t: &TransformSpec) -> Result<SummaryGraph, TransformError> {
    let mut scratch = Scratch::from_graph(g);
    // Colliders pass routes on whenever they are ancestral to a conditioned
    // node; that holds for conditioned nodes themselves and, crucially, for
    // survivors, whose collision Vs close permanently. Transmitting routes
    // survive only through marginalized nodes. A monotone fixed point over
    // these closures makes the construction elimination-order independent.
    let collider_open = g.ancestors_with(t.condition);
    let transmit_open = t.marginalize;
    let n = g.node_count();
    while scratch.close_pass(n, collider_open, transmit_open) {}
    for v in t.marginalize.union(t.condition).iter() {
        scratch.delete(v);
    }
    let keep = g.all_nodes().minus(t.marginalize.union(t.condition));
    assemble_summary(g, &scratch, keep, t)
}

/// Summary graph of `g` under the transform: the graph over the remaining
/// nodes encoding exactly the independence statements the generating graph
/// implies for the margin/conditional. Surviving nodes keep their blocks.
pub fn summary_graph(
    g: &RegressionGraph,
    t: &TransformSpec,
) -> Result<SummaryGraph, TransformError> {
    summarize_mixed(g, t)
}

/// Transform an existing summary graph further. Induced summary graphs are
/// in general not closed under further transformation, so query agreement
/// with the original generating graph is only guaranteed for the single-step
/// construction.
pub fn transform_summary(
    sg: &SummaryGraph,
    t: &TransformSpec,
) -> Result<SummaryGraph, TransformError> {
    let out = summarize_mixed(sg.graph(), t)?;
    let mut marg = sg.marginalized.clone();
    marg.extend(out.marginalized.iter().cloned());
    let mut cond = sg.conditioned.clone();
    cond.extend(out.conditioned.iter().cloned());
    Ok(SummaryGraph::from_mixed(out.graph().clone(), marg, cond)?)
}

/// Double edges of a marginalization-only summary graph: each marks an
/// unmeasured common explanatory variable of its pair.
pub fn detect_direct_confounding(
    sg: &SummaryGraph,
) -> Result<Vec<(NodeId, NodeId)>, TransformError> {
    if !sg.conditioned.is_empty() {
        return Err(TransformError::ConditioningPresent);
    }
    Ok(sg.double_edges())
}

/// Indirect-confounding routes for the dependence of `response` on
/// `regressor`: dashed chains from the response whose inner nodes all sit in
/// blocks strictly between the two, ending in a dashed line or in an arrow
/// out of the regressor.
pub fn detect_indirect_confounding(
    sg: &SummaryGraph,
    response: NodeId,
    regressor: NodeId,
) -> Result<Vec<Vec<NodeId>>, TransformError> {
    let g = sg.graph();
    let (y, t) = (response.0, regressor.0);
    if g.components(y, t).arrow != Some((t, y)) {
        return Err(TransformError::EdgeAbsent {
            regressor: g.label(t).to_string(),
            response: g.label(y).to_string(),
        });
    }
    let (lo, hi) = (g.rank_of(y), g.rank_of(t));
    let intermediate =
        |v: usize| -> bool { v != y && v != t && g.rank_of(v) > lo && g.rank_of(v) < hi };

    let mut paths: Vec<Vec<NodeId>> = Vec::new();
    let mut stack: Vec<usize> = vec![y];
    fn dfs(
        g: &MixedGraph,
        t: usize,
        intermediate: &dyn Fn(usize) -> bool,
        stack: &mut Vec<usize>,
        paths: &mut Vec<Vec<NodeId>>,
    ) {
        let u = *stack.last().unwrap();
        if stack.len() >= 2 {
            // close the route at the regressor with a dashed line or an
            // arrow out of it
            let comp = g.components(u, t);
            if comp.dashed || comp.arrow == Some((t, u)) {
                let mut p: Vec<NodeId> = stack.iter().map(|&v| NodeId(v)).collect();
                p.push(NodeId(t));
                paths.push(p);
            }
        }
        for v in g.dashed_neighbors(u).iter() {
            if intermediate(v) && !stack.contains(&v) {
                stack.push(v);
                dfs(g, t, intermediate, stack, paths);
                stack.pop();
            }
        }
    }
    dfs(g, t, &intermediate, &mut stack, &mut paths);
    paths.sort();
    paths.dedup();
    Ok(paths)
}

/// Under- and over-conditioning flags for the `response`-on-`regressor`
/// dependence under a transform.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ConditioningDistortions {
    /// Marginalized nodes sitting on a directed route regressor -> response.
    pub under_conditioning: Vec<NodeId>,
    /// Activated collision chains `response, s1, t1, ..., sk, regressor`
    /// alternating conditioned common responses `s` and marginalized
    /// sources `t`.
    pub over_conditioning: Vec<Vec<NodeId>>,
}

/// Everything the detectors report for one response-regressor pair under a
/// transform. Direct confounding is only defined for marginalization-only
/// transforms and stays `None` otherwise; node ids in the first two fields
/// refer to the summary graph, in the last two to the generating graph.
#[derive(Clone, Debug, Default)]
pub struct DistortionReport {
    /// Double edges of the summary graph, `(tail, head)` of the arrow part.
    pub direct_confounding: Option<Vec<(NodeId, NodeId)>>,
    /// Indirect-confounding routes for the pair, as summary-graph paths.
    pub indirect_confounding: Vec<Vec<NodeId>>,
    pub under_conditioning: Vec<NodeId>,
    pub over_conditioning: Vec<Vec<NodeId>>,
}

/// Run every detector for one pair: build the summary graph, collect double
/// edges (marginalization-only), indirect-confounding routes when the arrow
/// survives, and the conditioning flags.
pub fn detect_distortions(
    g: &RegressionGraph,
    t: &TransformSpec,
    response: NodeId,
    regressor: NodeId,
) -> Result<(SummaryGraph, DistortionReport), TransformError> {
    let sg = summary_graph(g, t)?;
    let direct_confounding = detect_direct_confounding(&sg).ok();
    let remap = |v: NodeId| sg.node_by_label(g.label(v.0)).map(NodeId);
    let indirect_confounding = match (remap(response), remap(regressor)) {
        (Some(y), Some(x)) => detect_indirect_confounding(&sg, y, x).unwrap_or_default(),
        _ => Vec::new(),
    };
    let flags = detect_conditioning_distortions(g, t, response, regressor);
    Ok((
        sg,
        DistortionReport {
            direct_confounding,
            indirect_confounding,
            under_conditioning: flags.under_conditioning,
            over_conditioning: flags.over_conditioning,
        },
    ))
}

/// Flag under-conditioning (an ignored intermediate on a directed route from
/// the regressor to the response) and over-conditioning (a conditioned common
/// response, possibly chained through marginalized sources).
pub fn detect_conditioning_distortions(
    g: &RegressionGraph,
    t: &TransformSpec,
    response: NodeId,
    regressor: NodeId,
) -> ConditioningDistortions {
    let (y, x) = (response.0, regressor.0);

    let down = g.descendants_with(NodeSet::singleton(x));
    let up = g.ancestors_with(NodeSet::singleton(y));
    let under: Vec<NodeId> = t
        .marginalize
        .iter()
        .filter(|&w| w != x && w != y && down.contains(w) && up.contains(w))
        .map(NodeId)
        .collect();

    // collision chains y -> s1 <- t1 -> s2 <- ... <- x with every s
    // conditioned and every inner source marginalized
    let mut chains: Vec<Vec<NodeId>> = Vec::new();
    let mut used = NodeSet::singleton(y);
    let mut chain: Vec<usize> = vec![y];
    fn dfs(
        g: &RegressionGraph,
        t: &TransformSpec,
        x: usize,
        used: &mut NodeSet,
        chain: &mut Vec<usize>,
        chains: &mut Vec<Vec<NodeId>>,
    ) {
        let u = *chain.last().unwrap();
        for s in g.children_of(u).intersect(t.condition).iter() {
            if used.contains(s) {
                continue;
            }
            for v in g.parents_of(s).iter() {
                if v == u {
                    continue;
                }
                if v == x {
                    let mut c: Vec<NodeId> = chain.iter().map(|&w| NodeId(w)).collect();
                    c.push(NodeId(s));
                    c.push(NodeId(x));
                    chains.push(c);
                } else if t.marginalize.contains(v) && !used.contains(v) {
                    used.insert(s);
                    used.insert(v);
                    chain.push(s);
                    chain.push(v);
                    dfs(g, t, x, used, chain, chains);
                    chain.pop();
                    chain.pop();
                    used.remove(s);
                    used.remove(v);
                }
            }
        }
    }
    dfs(g, t, x, &mut used, &mut chain, &mut chains);
    chains.sort();
    chains.dedup();

    ConditioningDistortions {
        under_conditioning: under,
        over_conditioning: chains,
    }
}
