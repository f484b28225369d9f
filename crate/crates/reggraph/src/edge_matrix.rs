//! Edge-matrix indicator calculus: 0/1 matrix representations of graphs with
//! unit diagonal, the partial-closure operator over a pivot set, and the
//! induced matrix whose zero pattern decides implied independences (all-zero
//! submatrix) and implied dependences (any structurally nonzero entry).
//!
//! The induced entry for response row `i` and regressor column `j` is 1
//! exactly when `i` stays connected to `j` once the remaining regressors are
//! held fixed: a route is open unless a transmitting inner node is held fixed
//! or a collision inner node is neither held fixed nor an ancestor of one.
//! Every entry is therefore the indicator of a structurally-possibly-nonzero
//! least-squares coefficient; the Gaussian oracle is the arbiter of that
//! reading and the test suite enforces the agreement.

use crate::bits::NodeSet;
use crate::graph::{
    Block, ComponentKind, EdgeSpec, EndMark, GraphError, MixedGraph, NodeId, RegressionGraph,
};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("PartitionMismatch: alpha, beta, c, m must be disjoint and cover every node")]
    PartitionMismatch,
    #[error("NotReconstructible: symmetric cross-block entries at pair ({0}, {1})")]
    NotReconstructible(usize, usize),
    #[error("DimensionMismatch: row/column sets do not match the matrix")]
    DimensionMismatch,
}

/// Square 0/1 indicator matrix with unit diagonal. For arrows the row is the
/// response and the column the regressor; undirected edges sit symmetrically.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdgeMatrix {
    pub dim: usize,
    rows: Vec<NodeSet>,
}

impl EdgeMatrix {
    pub fn identity(n: usize) -> Self {
        EdgeMatrix {
            dim: n,
            rows: (0..n).map(NodeSet::singleton).collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }

    pub fn row(&self, i: usize) -> NodeSet {
        self.rows[i]
    }

    /// Number of ones off the diagonal.
    pub fn off_diagonal_count(&self) -> usize {
        self.rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.without(i).len())
            .sum()
    }

    /// Off-diagonal support folded onto unordered pairs.
    pub fn symmetrized_support(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                if self.get(i, j) || self.get(j, i) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Render as a 0/1 grid, one row per line.
    pub fn to_grid(&self) -> String {
        let mut s = String::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                s.push(if self.get(i, j) { '1' } else { '0' });
                if j + 1 < self.dim {
                    s.push(' ');
                }
            }
            s.push('\n');
        }
        s
    }
}

/// Encode a graph as its edge matrix. Lossless for regression graphs given
/// the block order; see [`from_edge_matrix`].
pub fn to_edge_matrix(g: &MixedGraph) -> EdgeMatrix {
    let mut m = EdgeMatrix::identity(g.node_count());
    for (a, b, c) in g.pairs() {
        if let Some((t, h)) = c.arrow {
            m.set(h, t);
        }
        if c.dashed || c.full {
            m.set(a, b);
            m.set(b, a);
        }
    }
    m
}

/// Rebuild a regression graph from its edge matrix and block order
/// (inverse of [`to_edge_matrix`] on valid regression graphs).
pub fn from_edge_matrix(
    m: &EdgeMatrix,
    g_blocks: &MixedGraph,
) -> Result<RegressionGraph, GraphError> {
    let labels = g_blocks.labels();
    let mut edges: Vec<EdgeSpec<'_>> = Vec::new();
    for i in 0..m.dim {
        for j in i + 1..m.dim {
            let (ij, ji) = (m.get(i, j), m.get(j, i));
            match (ij, ji) {
                (false, false) => {}
                (true, true) => {
                    if g_blocks.block_of(i) == Block::Context
                        && g_blocks.block_of(j) == Block::Context
                    {
                        edges.push(EdgeSpec::Full(&labels[i], &labels[j]));
                    } else {
                        edges.push(EdgeSpec::Dashed(&labels[i], &labels[j]));
                    }
                }
                // row = response, column = regressor
                (true, false) => edges.push(EdgeSpec::Arrow {
                    tail: &labels[j],
                    head: &labels[i],
                }),
                (false, true) => edges.push(EdgeSpec::Arrow {
                    tail: &labels[i],
                    head: &labels[j],
                }),
            }
        }
    }
    let blocks: Vec<Vec<&str>> = g_blocks
        .response_blocks()
        .iter()
        .map(|b| b.iter().map(|&v| labels[v].as_str()).collect())
        .collect();
    let block_slices: Vec<&[&str]> = blocks.iter().map(|b| b.as_slice()).collect();
    let context: Vec<&str> = g_blocks.context().iter().map(|&v| labels[v].as_str()).collect();
    RegressionGraph::build(&block_slices, &context, &edges)
}

/// Partial closure: add every entry generated by a route whose inner nodes
/// all lie in `over`. Idempotent and monotone; closure over `m1` then `m2`
/// equals closure over `m1 ∪ m2`.
pub fn indicator_closure(m: &EdgeMatrix, over: NodeSet) -> EdgeMatrix {
    let mut out = m.clone();
    for w in over.iter() {
        if w >= out.dim {
            continue;
        }
        let pivot_row = out.rows[w];
        for x in 0..out.dim {
            if x != w && out.rows[x].contains(w) {
                out.rows[x] = out.rows[x].union(pivot_row);
            }
        }
    }
    out
}

/// Four disjoint node sets partitioning the graph: the query pair `alpha`,
/// `beta`, the conditioning set `c`, and the marginalized remainder `m`.
#[derive(Clone, Copy, Debug)]
pub struct NodePartition {
    pub alpha: NodeSet,
    pub beta: NodeSet,
    pub c: NodeSet,
    pub m: NodeSet,
}

impl NodePartition {
    pub fn new(
        g: &MixedGraph,
        alpha: NodeSet,
        beta: NodeSet,
        c: NodeSet,
        m: NodeSet,
    ) -> Result<Self, MatrixError> {
        let all = g.all_nodes();
        let union = alpha.union(beta).union(c).union(m);
        let total = alpha.len() + beta.len() + c.len() + m.len();
        if union != all || total != all.len() || alpha.is_empty() || beta.is_empty() {
            return Err(MatrixError::PartitionMismatch);
        }
        Ok(NodePartition { alpha, beta, c, m })
    }

    /// Fill `m` with every node outside `alpha ∪ beta ∪ c`.
    pub fn with_rest_marginalized(
        g: &MixedGraph,
        alpha: NodeSet,
        beta: NodeSet,
        c: NodeSet,
    ) -> Result<Self, MatrixError> {
        let m = g.all_nodes().minus(alpha.union(beta).union(c));
        Self::new(g, alpha, beta, c, m)
    }

    pub fn rows(&self) -> NodeSet {
        self.alpha.union(self.m)
    }

    pub fn cols(&self) -> NodeSet {
        self.beta.union(self.c)
    }
}

/// Indicator matrix of structurally-possibly-nonzero coefficients when the
/// rows `a = alpha ∪ m` are regressed on the columns `b = beta ∪ c`.
#[derive(Clone, Debug)]
pub struct InducedMatrix {
    pub rows: Vec<NodeId>,
    pub cols: Vec<NodeId>,
    bits: Vec<Vec<bool>>,
}

impl InducedMatrix {
    pub fn get(&self, row: NodeId, col: NodeId) -> Option<bool> {
        let i = self.rows.iter().position(|&r| r == row)?;
        let j = self.cols.iter().position(|&c| c == col)?;
        Some(self.bits[i][j])
    }

    pub fn to_grid(&self) -> String {
        let mut s = String::new();
        for r in &self.bits {
            let line: Vec<&str> = r.iter().map(|&b| if b { "1" } else { "0" }).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }
}

/// One incident edge component at a node: the other endpoint, the mark at
/// this node, the mark at the other end, the kind, and whether an arrow's
/// tail sits at this node.
pub(crate) type Incidence = (usize, EndMark, EndMark, ComponentKind, bool);

/// Incidence view used by the structural walks: for every node, the incident
/// edge components with their end marks.
pub(crate) struct WalkGraph {
    /// `inc[v]` lists `(other, mark at v, mark at other, kind, tail_is_v)`.
    pub inc: Vec<Vec<Incidence>>,
}

impl WalkGraph {
    pub fn new(g: &MixedGraph) -> Self {
        let n = g.node_count();
        let mut inc: Vec<Vec<Incidence>> = vec![Vec::new(); n];
        for (a, b, _) in g.pairs() {
            for (kind, at_a, at_b) in g.component_marks(a, b) {
                let tail_is_a = at_a == EndMark::Tail && kind == ComponentKind::Arrow;
                inc[a].push((b, at_a, at_b, kind, tail_is_a));
                inc[b].push((a, at_b, at_a, kind, !tail_is_a && kind == ComponentKind::Arrow));
            }
        }
        for row in &mut inc {
            row.sort();
        }
        WalkGraph { inc }
    }

    /// Is `x` structurally connected to `y` once `cond` is held fixed?
    ///
    /// Walk states are `(node, entering end mark)`. An inner node passes the
    /// walk on when it is a collision (both marks head-like) held fixed or
    /// ancestral to a fixed node, or a transmitting node not held fixed.
    pub fn connected(&self, x: usize, y: usize, cond: NodeSet, anc_cond: NodeSet) -> bool {
        self.walk(x, NodeSet::singleton(y), cond, anc_cond).is_some()
    }

    /// Multi-target walk search from `x`; returns the discovered walk as
    /// `(nodes, glyph metadata)` when one exists. Deterministic: breadth
    /// first with sorted adjacency.
    pub fn walk(
        &self,
        x: usize,
        targets: NodeSet,
        cond: NodeSet,
        anc_cond: NodeSet,
    ) -> Option<Vec<WalkStep>> {
        let n = self.inc.len();
        // state = node * 2 + (entered with head mark)
        let mut seen = vec![false; 2 * n];
        let mut parent: Vec<Option<(usize, ComponentKind, bool)>> = vec![None; 2 * n];
        let mut queue = std::collections::VecDeque::new();

        // Seal the source: a walk never has to revisit its own start.
        seen[2 * x] = true;
        seen[2 * x + 1] = true;

        for &(u, _at_x, at_u, kind, tail_is_x) in &self.inc[x] {
            let s = u * 2 + (at_u == EndMark::Head) as usize;
            if !seen[s] {
                seen[s] = true;
                parent[s] = Some((x * 2, kind, tail_is_x));
                if targets.contains(u) {
                    return Some(self.rebuild(x, s, &parent));
                }
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            let v = s / 2;
            let entered_head = s % 2 == 1;
            for &(u, at_v, at_u, kind, tail_is_v) in &self.inc[v] {
                let collider = entered_head && at_v == EndMark::Head;
                let open = if collider {
                    anc_cond.contains(v)
                } else {
                    !cond.contains(v)
                };
                if !open {
                    continue;
                }
                let t = u * 2 + (at_u == EndMark::Head) as usize;
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((s, kind, tail_is_v));
                    if targets.contains(u) {
                        return Some(self.rebuild(x, t, &parent));
                    }
                    queue.push_back(t);
                }
            }
        }
        None
    }

    fn rebuild(
        &self,
        x: usize,
        end_state: usize,
        parent: &[Option<(usize, ComponentKind, bool)>],
    ) -> Vec<WalkStep> {
        let mut steps = Vec::new();
        let mut s = end_state;
        loop {
            let (prev, kind, tail_is_prev) = parent[s].unwrap();
            steps.push(WalkStep {
                node: NodeId(s / 2),
                kind,
                arrow_forward: tail_is_prev,
            });
            if prev / 2 == x {
                break;
            }
            s = prev;
        }
        steps.reverse();
        steps
    }
}

/// One hop of a connecting walk: the node entered, the component used, and
/// for arrows whether the arrow points along the walk direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WalkStep {
    pub node: NodeId,
    pub kind: ComponentKind,
    pub arrow_forward: bool,
}

/// Render a walk starting at `start` in the `Y-A<-Tp` notation:
/// `-` dashed, `--` full, `->`/`<-` arrows, in walk direction.
pub fn render_walk(g: &MixedGraph, start: NodeId, steps: &[WalkStep]) -> String {
    let mut s = g.label(start.0).to_string();
    for st in steps {
        let glyph = match st.kind {
            ComponentKind::Dashed => "-",
            ComponentKind::Full => "--",
            ComponentKind::Arrow => {
                if st.arrow_forward {
                    "->"
                } else {
                    "<-"
                }
            }
        };
        s.push_str(glyph);
        s.push_str(g.label(st.node.0));
    }
    s
}

/// The induced edge matrix `P_{a|b}` for the partition: entry `(i, j)` is 1
/// iff the coefficient of `j` in the regression of `i` on all of `b` is
/// structurally possibly nonzero, i.e. iff `i` remains connected to `j` when
/// the other columns `b \ {j}` are held fixed.
pub fn induced_edge_matrix(g: &MixedGraph, p: &NodePartition) -> InducedMatrix {
    let wg = WalkGraph::new(g);
    let rows: Vec<usize> = p.rows().to_vec();
    let cols: Vec<usize> = p.cols().to_vec();
    let b = p.cols();
    let mut bits = vec![vec![false; cols.len()]; rows.len()];
    for (jj, &j) in cols.iter().enumerate() {
        let given = b.without(j);
        let anc = g.ancestors_with(given);
        for (ii, &i) in rows.iter().enumerate() {
            bits[ii][jj] = wg.connected(i, j, given, anc);
        }
    }
    InducedMatrix {
        rows: rows.into_iter().map(NodeId).collect(),
        cols: cols.into_iter().map(NodeId).collect(),
        bits,
    }
}

/// True iff the `alpha` rows by `beta` columns submatrix of `P` is all zero,
/// i.e. the graph implies `alpha` independent of `beta` given the `c` part of
/// the columns.
pub fn zero_test(p: &InducedMatrix, alpha: NodeSet, beta: NodeSet) -> Result<bool, MatrixError> {
    let rows: NodeSet = p.rows.iter().map(|r| r.0).collect();
    let cols: NodeSet = p.cols.iter().map(|c| c.0).collect();
    if !alpha.is_subset(&rows) || !beta.is_subset(&cols) {
        return Err(MatrixError::DimensionMismatch);
    }
    for (ii, r) in p.rows.iter().enumerate() {
        if !alpha.contains(r.0) {
            continue;
        }
        for (jj, c) in p.cols.iter().enumerate() {
            if beta.contains(c.0) && p.bits[ii][jj] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
