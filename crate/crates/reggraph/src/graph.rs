//! Graph data model: mixed graphs over ordered response blocks plus a context
//! block, with the strict regression-graph validator and the relaxed summary
//! variant that transformations produce.
//!
//! Edge vocabulary:
//! - `tail -> head` arrows point from a regressor in the past to a response in
//!   the future;
//! - dashed lines join responses on an equal standing within one block;
//! - full lines join context nodes;
//! - a double edge is an arrow and a dashed line superposed on one pair and
//!   only appears in summary graphs.

use crate::bits::{NodeSet, MAX_NODES};
use std::collections::BTreeMap;
use thiserror::Error;

/// Index of a node within a graph; dense `0..n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NodeId(pub usize);

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Block membership. `Response(0)` is the most recent (future-most) block;
/// the context block sits after every response block.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Block {
    Response(usize),
    Context,
}

impl Block {
    /// Position in the future-to-past ordering; larger rank = further in the past.
    pub fn rank(&self, n_response_blocks: usize) -> usize {
        match self {
            Block::Response(j) => *j,
            Block::Context => n_response_blocks,
        }
    }
}

/// End mark an edge component carries at one of its endpoints. Arrowheads and
/// dashed ends are head-like; arrow tails and full-line ends are tail-like.
/// A V-configuration is a collision exactly when both marks at its inner node
/// are heads.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum EndMark {
    Head,
    Tail,
}

/// Primitive edge components between one node pair. A pair may carry at most
/// one arrow per direction, one dashed and one full component; arrow plus
/// dashed is rendered as a double edge. Opposite arrows on one pair only
/// arise in summary graphs produced with conditioning, where the two
/// directions record routes with distinct end marks.
#[derive(Clone, Copy, PartialEq, Eq, Default, Debug)]
pub struct Components {
    /// `(tail, head)` of the arrow component, if present.
    pub arrow: Option<(usize, usize)>,
    /// Arrow in the opposite direction, a conditioning artifact.
    pub reverse_arrow: Option<(usize, usize)>,
    pub dashed: bool,
    pub full: bool,
}

impl Components {
    pub fn is_empty(&self) -> bool {
        self.arrow.is_none() && self.reverse_arrow.is_none() && !self.dashed && !self.full
    }

    pub fn is_double(&self) -> bool {
        self.arrow.is_some() && self.dashed
    }

    fn count(&self) -> usize {
        self.arrow.is_some() as usize
            + self.reverse_arrow.is_some() as usize
            + self.dashed as usize
            + self.full as usize
    }
}

/// An edge given by node labels, used when building graphs programmatically.
#[derive(Clone, Copy, Debug)]
pub enum EdgeSpec<'a> {
    Arrow { tail: &'a str, head: &'a str },
    Dashed(&'a str, &'a str),
    Full(&'a str, &'a str),
    Double { tail: &'a str, head: &'a str },
}

/// Arrow from `tail` (regressor) to `head` (response).
pub fn arrow<'a>(tail: &'a str, head: &'a str) -> EdgeSpec<'a> {
    EdgeSpec::Arrow { tail, head }
}

pub fn dashed<'a>(a: &'a str, b: &'a str) -> EdgeSpec<'a> {
    EdgeSpec::Dashed(a, b)
}

pub fn full<'a>(a: &'a str, b: &'a str) -> EdgeSpec<'a> {
    EdgeSpec::Full(a, b)
}

pub fn double<'a>(tail: &'a str, head: &'a str) -> EdgeSpec<'a> {
    EdgeSpec::Double { tail, head }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("CyclicOrArrowIntoPast: arrow {tail} -> {head} points into the past or within a block")]
    CyclicOrArrowIntoPast { tail: String, head: String },
    #[error("WrongEdgeKindForBlock: {kind} edge {a} {b} is not legal for the blocks of its endpoints")]
    WrongEdgeKindForBlock { kind: String, a: String, b: String },
    #[error("DuplicateEdge: node pair {a}, {b} carries conflicting or repeated edges")]
    DuplicateEdge { a: String, b: String },
    #[error("SelfLoop: edge from {0} to itself")]
    SelfLoop(String),
    #[error("UnknownNode: label {0} is not declared")]
    UnknownNode(String),
    #[error("DuplicateNode: label {0} declared twice")]
    DuplicateNode(String),
    #[error("TooManyNodes: {0} nodes exceed the supported maximum of {max}", max = MAX_NODES)]
    TooManyNodes(usize),
    #[error("EmptyBlock: response block {0} has no nodes")]
    EmptyBlock(usize),
}

/// Shared structure of regression and summary graphs: labelled nodes, the
/// block ordering, and per-pair edge components. Immutable once built; every
/// query borrows it.
#[derive(Clone, Debug)]
pub struct MixedGraph {
    labels: Vec<String>,
    label_index: BTreeMap<String, usize>,
    response_blocks: Vec<Vec<usize>>,
    context: Vec<usize>,
    block_of: Vec<Block>,
    pairs: BTreeMap<(usize, usize), Components>,
    parents: Vec<NodeSet>,
    children: Vec<NodeSet>,
    dashed_adj: Vec<NodeSet>,
    full_adj: Vec<NodeSet>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl MixedGraph {
    /// Build a mixed graph with only the universal checks (labels unique,
    /// endpoints exist, no self loops, no component repeated on a pair).
    /// Block-dependent edge legality is enforced by the typed wrappers.
    pub fn new(
        response_blocks: &[&[&str]],
        context: &[&str],
        edges: &[EdgeSpec<'_>],
    ) -> Result<Self, GraphError> {
        let mut labels: Vec<String> = Vec::new();
        let mut label_index = BTreeMap::new();
        let mut blocks_ids: Vec<Vec<usize>> = Vec::new();
        let mut context_ids: Vec<usize> = Vec::new();
        let mut block_of: Vec<Block> = Vec::new();

        for (j, block) in response_blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(GraphError::EmptyBlock(j + 1));
            }
            let mut ids = Vec::new();
            for &lab in *block {
                let id = labels.len();
                if label_index.insert(lab.to_string(), id).is_some() {
                    return Err(GraphError::DuplicateNode(lab.to_string()));
                }
                labels.push(lab.to_string());
                block_of.push(Block::Response(j));
                ids.push(id);
            }
            blocks_ids.push(ids);
        }
        for &lab in context {
            let id = labels.len();
            if label_index.insert(lab.to_string(), id).is_some() {
                return Err(GraphError::DuplicateNode(lab.to_string()));
            }
            labels.push(lab.to_string());
            block_of.push(Block::Context);
            context_ids.push(id);
        }
        let n = labels.len();
        if n > MAX_NODES {
            return Err(GraphError::TooManyNodes(n));
        }

        let mut g = MixedGraph {
            labels,
            label_index,
            response_blocks: blocks_ids,
            context: context_ids,
            block_of,
            pairs: BTreeMap::new(),
            parents: vec![NodeSet::EMPTY; n],
            children: vec![NodeSet::EMPTY; n],
            dashed_adj: vec![NodeSet::EMPTY; n],
            full_adj: vec![NodeSet::EMPTY; n],
        };

        for e in edges {
            match *e {
                EdgeSpec::Arrow { tail, head } => {
                    let (t, h) = (g.resolve(tail)?, g.resolve(head)?);
                    g.add_arrow(t, h)?;
                }
                EdgeSpec::Dashed(a, b) => {
                    let (a, b) = (g.resolve(a)?, g.resolve(b)?);
                    g.add_dashed(a, b)?;
                }
                EdgeSpec::Full(a, b) => {
                    let (a, b) = (g.resolve(a)?, g.resolve(b)?);
                    g.add_full(a, b)?;
                }
                EdgeSpec::Double { tail, head } => {
                    let (t, h) = (g.resolve(tail)?, g.resolve(head)?);
                    g.add_arrow(t, h)?;
                    g.add_dashed(t, h)?;
                }
            }
        }
        Ok(g)
    }

    fn resolve(&self, label: &str) -> Result<usize, GraphError> {
        self.label_index
            .get(label)
            .copied()
            .ok_or_else(|| GraphError::UnknownNode(label.to_string()))
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<(), GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(self.labels[a].clone()));
        }
        Ok(())
    }

    pub(crate) fn add_arrow(&mut self, tail: usize, head: usize) -> Result<(), GraphError> {
        self.check_pair(tail, head)?;
        let comp = self.pairs.entry(key(tail, head)).or_default();
        match comp.arrow {
            None => comp.arrow = Some((tail, head)),
            Some((t, _)) if t != tail && comp.reverse_arrow.is_none() => {
                comp.reverse_arrow = Some((tail, head));
            }
            _ => {
                return Err(GraphError::DuplicateEdge {
                    a: self.labels[tail].clone(),
                    b: self.labels[head].clone(),
                })
            }
        }
        self.parents[head].insert(tail);
        self.children[tail].insert(head);
        Ok(())
    }

    pub(crate) fn add_dashed(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        self.check_pair(a, b)?;
        let comp = self.pairs.entry(key(a, b)).or_default();
        if comp.dashed {
            return Err(GraphError::DuplicateEdge {
                a: self.labels[a].clone(),
                b: self.labels[b].clone(),
            });
        }
        comp.dashed = true;
        self.dashed_adj[a].insert(b);
        self.dashed_adj[b].insert(a);
        Ok(())
    }

    pub(crate) fn add_full(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        self.check_pair(a, b)?;
        let comp = self.pairs.entry(key(a, b)).or_default();
        if comp.full {
            return Err(GraphError::DuplicateEdge {
                a: self.labels[a].clone(),
                b: self.labels[b].clone(),
            });
        }
        comp.full = true;
        self.full_adj[a].insert(b);
        self.full_adj[b].insert(a);
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn all_nodes(&self) -> NodeSet {
        NodeSet::full(self.node_count())
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_by_label(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn block_of(&self, v: usize) -> Block {
        self.block_of[v]
    }

    /// Future-to-past position of `v`'s block.
    pub fn rank_of(&self, v: usize) -> usize {
        self.block_of[v].rank(self.response_blocks.len())
    }

    pub fn response_blocks(&self) -> &[Vec<usize>] {
        &self.response_blocks
    }

    pub fn context(&self) -> &[usize] {
        &self.context
    }

    /// Nodes in blocks strictly further in the past than `v`'s block
    /// (later response blocks and the context).
    pub fn past_of(&self, v: usize) -> NodeSet {
        let r = self.rank_of(v);
        (0..self.node_count()).filter(|&u| self.rank_of(u) > r).collect()
    }

    pub fn components(&self, a: usize, b: usize) -> Components {
        self.pairs.get(&key(a, b)).copied().unwrap_or_default()
    }

    pub fn coupled(&self, a: usize, b: usize) -> bool {
        self.pairs.contains_key(&key(a, b))
    }

    /// Iterate `(a, b, components)` with `a < b`, in ascending pair order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, Components)> + '_ {
        self.pairs.iter().map(|(&(a, b), &c)| (a, b, c))
    }

    pub fn edge_count(&self) -> usize {
        self.pairs.len()
    }

    /// Tails of arrows pointing at `v` (the double-edge arrow component counts).
    pub fn parents_of(&self, v: usize) -> NodeSet {
        self.parents[v]
    }

    pub fn children_of(&self, v: usize) -> NodeSet {
        self.children[v]
    }

    pub fn dashed_neighbors(&self, v: usize) -> NodeSet {
        self.dashed_adj[v]
    }

    pub fn full_neighbors(&self, v: usize) -> NodeSet {
        self.full_adj[v]
    }

    pub fn neighbors(&self, v: usize) -> NodeSet {
        self.parents[v]
            .union(self.children[v])
            .union(self.dashed_adj[v])
            .union(self.full_adj[v])
    }

    /// The set of coupled pairs, ignoring edge kinds.
    pub fn skeleton(&self) -> Vec<(usize, usize)> {
        self.pairs.keys().copied().collect()
    }

    /// Skeleton as sorted label pairs, for comparisons across graphs.
    pub fn skeleton_labels(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .pairs
            .keys()
            .map(|&(a, b)| {
                let (la, lb) = (self.labels[a].clone(), self.labels[b].clone());
                if la <= lb {
                    (la, lb)
                } else {
                    (lb, la)
                }
            })
            .collect();
        out.sort();
        out
    }

    /// `seeds` plus everything with a directed path into `seeds`.
    pub fn ancestors_with(&self, seeds: NodeSet) -> NodeSet {
        let mut acc = seeds;
        let mut frontier = seeds;
        while !frontier.is_empty() {
            let mut next = NodeSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.parents[v]);
            }
            frontier = next.minus(acc);
            acc = acc.union(frontier);
        }
        acc
    }

    /// `seeds` plus everything reachable from `seeds` along arrows.
    pub fn descendants_with(&self, seeds: NodeSet) -> NodeSet {
        let mut acc = seeds;
        let mut frontier = seeds;
        while !frontier.is_empty() {
            let mut next = NodeSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.children[v]);
            }
            frontier = next.minus(acc);
            acc = acc.union(frontier);
        }
        acc
    }

    /// End marks `(mark at a, mark at b)` of each edge component on the pair.
    pub fn component_marks(&self, a: usize, b: usize) -> Vec<(ComponentKind, EndMark, EndMark)> {
        let mut out = Vec::new();
        let c = self.components(a, b);
        for arrow in [c.arrow, c.reverse_arrow].into_iter().flatten() {
            if arrow.0 == a {
                out.push((ComponentKind::Arrow, EndMark::Tail, EndMark::Head));
            } else {
                out.push((ComponentKind::Arrow, EndMark::Head, EndMark::Tail));
            }
        }
        if c.dashed {
            out.push((ComponentKind::Dashed, EndMark::Head, EndMark::Head));
        }
        if c.full {
            out.push((ComponentKind::Full, EndMark::Tail, EndMark::Tail));
        }
        out
    }

    /// Structural equality up to node ids: same labels, same block sequence
    /// (empty blocks dropped), same edges by label.
    pub fn same_structure(&self, other: &MixedGraph) -> bool {
        let norm = |g: &MixedGraph| {
            let blocks: Vec<Vec<String>> = g
                .response_blocks
                .iter()
                .filter(|b| !b.is_empty())
                .map(|b| {
                    let mut ls: Vec<String> = b.iter().map(|&v| g.labels[v].clone()).collect();
                    ls.sort();
                    ls
                })
                .collect();
            let mut ctx: Vec<String> = g.context.iter().map(|&v| g.labels[v].clone()).collect();
            ctx.sort();
            type EdgeKey = (
                String,
                String,
                Option<(String, String)>,
                Option<(String, String)>,
                bool,
                bool,
            );
            let mut edges: Vec<EdgeKey> = g
                .pairs()
                .map(|(a, b, c)| {
                    let (la, lb) = (g.labels[a].clone(), g.labels[b].clone());
                    let name = |(t, h): (usize, usize)| (g.labels[t].clone(), g.labels[h].clone());
                    // normalize: the lexicographically smaller arrow first
                    let mut arrows = [c.arrow.map(name), c.reverse_arrow.map(name)];
                    arrows.sort();
                    (la, lb, arrows[0].clone(), arrows[1].clone(), c.dashed, c.full)
                })
                .collect();
            edges.sort();
            (blocks, ctx, edges)
        };
        norm(self) == norm(other)
    }
}

/// Subclasses distinguished by which edge kinds occur.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Subclass {
    Dag,
    ConcentrationGraph,
    CovarianceGraph,
    GeneralRegressionGraph,
}

impl std::fmt::Display for Subclass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Subclass::Dag => "DAG",
            Subclass::ConcentrationGraph => "ConcentrationGraph",
            Subclass::CovarianceGraph => "CovarianceGraph",
            Subclass::GeneralRegressionGraph => "GeneralRegressionGraph",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum ComponentKind {
    Arrow,
    Dashed,
    Full,
}

/// Whether a V transmits or collides at its inner node.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum VKind {
    Collision,
    Transmitting,
}

/// Three nodes with an uncoupled outer pair, both coupled to the inner node.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct VConfiguration {
    pub inner: NodeId,
    /// Outer pair, ascending by id.
    pub outer: (NodeId, NodeId),
    pub kind: VKind,
    /// Kinds of the two edges at the inner node, in outer-pair order.
    pub edge_kinds: (ComponentKind, ComponentKind),
}

impl MixedGraph {
    /// Enumerate every V-configuration. For pairs carrying several edge
    /// components (summary graphs) one V is reported per component
    /// combination.
    pub fn enumerate_vs(&self) -> Vec<VConfiguration> {
        let n = self.node_count();
        let mut out = Vec::new();
        for inner in 0..n {
            let nb = self.neighbors(inner).to_vec();
            for (x, &i) in nb.iter().enumerate() {
                for &k in nb.iter().skip(x + 1) {
                    if self.coupled(i, k) {
                        continue;
                    }
                    for (kind_i, _at_i, at_inner_i) in self.component_marks(i, inner) {
                        for (kind_k, _at_k, at_inner_k) in self.component_marks(k, inner) {
                            let kind = if at_inner_i == EndMark::Head && at_inner_k == EndMark::Head
                            {
                                VKind::Collision
                            } else {
                                VKind::Transmitting
                            };
                            out.push(VConfiguration {
                                inner: NodeId(inner),
                                outer: (NodeId(i), NodeId(k)),
                                kind,
                                edge_kinds: (kind_i, kind_k),
                            });
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// Collision V triples as `(inner, outer, outer)` ids, deduplicated.
    pub fn collision_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<(usize, usize, usize)> = self
            .enumerate_vs()
            .into_iter()
            .filter(|v| v.kind == VKind::Collision)
            .map(|v| (v.inner.0, v.outer.0 .0, v.outer.1 .0))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Transmitting V triples, deduplicated.
    pub fn transmitting_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out: Vec<(usize, usize, usize)> = self
            .enumerate_vs()
            .into_iter()
            .filter(|v| v.kind == VKind::Transmitting)
            .map(|v| (v.inner.0, v.outer.0 .0, v.outer.1 .0))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Classify by the edge kinds present; an edgeless graph counts as a DAG.
    pub fn classify(&self) -> Subclass {
        let mut arrows = false;
        let mut dash = false;
        let mut fl = false;
        for (_, _, c) in self.pairs() {
            arrows |= c.arrow.is_some();
            dash |= c.dashed;
            fl |= c.full;
        }
        match (arrows, dash, fl) {
            (_, false, false) => Subclass::Dag,
            (false, true, false) => Subclass::CovarianceGraph,
            (false, false, true) => Subclass::ConcentrationGraph,
            _ => Subclass::GeneralRegressionGraph,
        }
    }
}

/// A validated regression graph: arrows only point from the past to the
/// future, dashed lines stay within one response block, full lines within the
/// context, one edge per pair.
#[derive(Clone, Debug)]
pub struct RegressionGraph {
    inner: MixedGraph,
}

impl RegressionGraph {
    pub fn build(
        response_blocks: &[&[&str]],
        context: &[&str],
        edges: &[EdgeSpec<'_>],
    ) -> Result<Self, GraphError> {
        let g = MixedGraph::new(response_blocks, context, edges)?;
        Self::from_mixed(g)
    }

    pub fn from_mixed(g: MixedGraph) -> Result<Self, GraphError> {
        for (a, b, c) in g.pairs() {
            if c.count() > 1 {
                return Err(GraphError::DuplicateEdge {
                    a: g.label(a).to_string(),
                    b: g.label(b).to_string(),
                });
            }
            if let Some((t, h)) = c.arrow {
                if g.rank_of(t) <= g.rank_of(h) {
                    return Err(GraphError::CyclicOrArrowIntoPast {
                        tail: g.label(t).to_string(),
                        head: g.label(h).to_string(),
                    });
                }
            }
            if c.dashed {
                let same_response_block = matches!(g.block_of(a), Block::Response(_))
                    && g.block_of(a) == g.block_of(b);
                if !same_response_block {
                    return Err(GraphError::WrongEdgeKindForBlock {
                        kind: "dashed".into(),
                        a: g.label(a).to_string(),
                        b: g.label(b).to_string(),
                    });
                }
            }
            if c.full && (g.block_of(a) != Block::Context || g.block_of(b) != Block::Context) {
                return Err(GraphError::WrongEdgeKindForBlock {
                    kind: "full".into(),
                    a: g.label(a).to_string(),
                    b: g.label(b).to_string(),
                });
            }
        }
        Ok(RegressionGraph { inner: g })
    }

    pub fn graph(&self) -> &MixedGraph {
        &self.inner
    }

    pub fn into_mixed(self) -> MixedGraph {
        self.inner
    }
}

impl std::ops::Deref for RegressionGraph {
    type Target = MixedGraph;
    fn deref(&self) -> &MixedGraph {
        &self.inner
    }
}

impl PartialEq for RegressionGraph {
    fn eq(&self, other: &Self) -> bool {
        self.inner.same_structure(&other.inner)
    }
}

/// Graph induced on the remaining margin after marginalizing over `marginalized`
/// and conditioning on `conditioned`. Arrows still respect the block order and
/// dashed lines may cross blocks; double edges flag direct confounding.
#[derive(Clone, Debug)]
pub struct SummaryGraph {
    inner: MixedGraph,
    /// Labels of the nodes that were marginalized over to produce this graph.
    pub marginalized: Vec<String>,
    /// Labels of the nodes that were conditioned on.
    pub conditioned: Vec<String>,
}

impl SummaryGraph {
    pub fn from_mixed(
        g: MixedGraph,
        marginalized: Vec<String>,
        conditioned: Vec<String>,
    ) -> Result<Self, GraphError> {
        // Marginalization alone keeps arrows pointing at the future and at
        // most one arrow per pair; conditioning can break both, so the only
        // hard invariant here is that dashed lines never touch the context.
        for (a, b, c) in g.pairs() {
            if c.dashed && (g.block_of(a) == Block::Context || g.block_of(b) == Block::Context) {
                return Err(GraphError::WrongEdgeKindForBlock {
                    kind: "dashed".into(),
                    a: g.label(a).to_string(),
                    b: g.label(b).to_string(),
                });
            }
        }
        Ok(SummaryGraph {
            inner: g,
            marginalized,
            conditioned,
        })
    }

    pub fn graph(&self) -> &MixedGraph {
        &self.inner
    }

    /// Pairs joined by a double edge (arrow and dashed superposed), as
    /// `(tail, head)` of the arrow component.
    pub fn double_edges(&self) -> Vec<(NodeId, NodeId)> {
        self.inner
            .pairs()
            .filter(|(_, _, c)| c.is_double())
            .map(|(_, _, c)| {
                let (t, h) = c.arrow.unwrap();
                (NodeId(t), NodeId(h))
            })
            .collect()
    }
}

impl std::ops::Deref for SummaryGraph {
    type Target = MixedGraph;
    fn deref(&self) -> &MixedGraph {
        &self.inner
    }
}

impl PartialEq for SummaryGraph {
    fn eq(&self, other: &Self) -> bool {
        self.inner.same_structure(&other.inner)
    }
}
