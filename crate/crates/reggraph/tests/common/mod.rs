//! Shared test utilities: exhaustive enumeration of small regression graphs
//! and DAGs, random samplers, and single-edge perturbations.
//!
//! Each test target compiles its own copy, so not every helper is used
//! everywhere.
#![allow(dead_code, clippy::type_complexity)]

use rand::rngs::StdRng;
use rand::Rng;
use reggraph::{EdgeSpec, NodeSet, RegressionGraph};
use std::collections::BTreeSet;

/// Labels "0", "1", ... used by every generated graph.
pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|v| v.to_string()).collect()
}

/// Block structure: response blocks (node ids) plus a context set.
pub type Blocks = (Vec<Vec<usize>>, Vec<usize>);

/// All ordered set partitions of `0..n` (every cell order), each optionally
/// declaring its last cell the context block.
pub fn block_structures(n: usize) -> Vec<Blocks> {
    // set partitions with cells in canonical order first
    let mut parts: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut current: Vec<Vec<usize>> = Vec::new();
    fn go(v: usize, n: usize, current: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if v == n {
            out.push(current.clone());
            return;
        }
        for i in 0..current.len() {
            current[i].push(v);
            go(v + 1, n, current, out);
            current[i].pop();
        }
        current.push(vec![v]);
        go(v + 1, n, current, out);
        current.pop();
    }
    go(0, n, &mut current, &mut parts);

    // then all orderings of the cells
    let mut out: Vec<Blocks> = Vec::new();
    for p in parts {
        let k = p.len();
        let mut idx: Vec<usize> = (0..k).collect();
        permute(&mut idx, 0, &mut |order| {
            let arranged: Vec<Vec<usize>> = order.iter().map(|&i| p[i].clone()).collect();
            out.push((arranged.clone(), Vec::new()));
            let mut q = arranged;
            let ctx = q.pop().unwrap();
            out.push((q, ctx));
            false
        });
    }
    out
}

/// Edge choices legal for a pair under a block structure. `None` encodes the
/// missing edge.
fn pair_options(
    blocks: &Blocks,
    rank: &[usize],
    a: usize,
    b: usize,
) -> Vec<Option<(&'static str, usize, usize)>> {
    let n_resp = blocks.0.len();
    let ctx = |v: usize| rank[v] == n_resp && !blocks.1.is_empty() && blocks.1.contains(&v);
    let mut opts: Vec<Option<(&'static str, usize, usize)>> = vec![None];
    if rank[a] == rank[b] {
        if ctx(a) && ctx(b) {
            opts.push(Some(("full", a, b)));
        } else {
            opts.push(Some(("dashed", a, b)));
        }
    } else {
        // arrow from the later block (the past) to the earlier one
        let (tail, head) = if rank[a] > rank[b] { (a, b) } else { (b, a) };
        opts.push(Some(("arrow", tail, head)));
    }
    opts
}

fn build(labels: &[String], blocks: &Blocks, edges: &[(&'static str, usize, usize)]) -> RegressionGraph {
    let block_vecs: Vec<Vec<&str>> = blocks
        .0
        .iter()
        .map(|b| b.iter().map(|&v| labels[v].as_str()).collect())
        .collect();
    let block_slices: Vec<&[&str]> = block_vecs.iter().map(|b| b.as_slice()).collect();
    let context: Vec<&str> = blocks.1.iter().map(|&v| labels[v].as_str()).collect();
    let specs: Vec<EdgeSpec<'_>> = edges
        .iter()
        .map(|&(kind, x, y)| match kind {
            "arrow" => EdgeSpec::Arrow {
                tail: &labels[x],
                head: &labels[y],
            },
            "dashed" => EdgeSpec::Dashed(&labels[x], &labels[y]),
            "full" => EdgeSpec::Full(&labels[x], &labels[y]),
            _ => unreachable!(),
        })
        .collect();
    RegressionGraph::build(&block_slices, &context, &specs).expect("generated graph is valid")
}

/// Every regression graph on `n` nodes (all block structures, all legal edge
/// subsets). Sizeable: 208 graphs for n = 3, 9600 for n = 4.
pub fn all_regression_graphs(n: usize) -> Vec<RegressionGraph> {
    let labels = labels(n);
    let mut out = Vec::new();
    for blocks in block_structures(n) {
        let n_resp = blocks.0.len();
        let mut rank = vec![0usize; n];
        for (j, b) in blocks.0.iter().enumerate() {
            for &v in b {
                rank[v] = j;
            }
        }
        for &v in &blocks.1 {
            rank[v] = n_resp;
        }
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .collect();
        let per_pair: Vec<Vec<Option<(&'static str, usize, usize)>>> = pairs
            .iter()
            .map(|&(a, b)| pair_options(&blocks, &rank, a, b))
            .collect();
        let total: usize = per_pair.iter().map(|o| o.len()).product();
        for mut code in 0..total {
            let mut edges = Vec::new();
            for opts in &per_pair {
                let pick = code % opts.len();
                code /= opts.len();
                if let Some(e) = opts[pick] {
                    edges.push(e);
                }
            }
            out.push(build(&labels, &blocks, &edges));
        }
    }
    out
}

/// Every DAG on `n` labelled nodes, one representative block order each.
pub fn all_dags(n: usize) -> Vec<RegressionGraph> {
    let labels = labels(n);
    let mut seen: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |order| {
        // arrows point from later list positions to earlier ones
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .collect();
        for code in 0..(1usize << pairs.len()) {
            let mut arrows: Vec<(usize, usize)> = Vec::new(); // (tail, head)
            for (bit, &(i, j)) in pairs.iter().enumerate() {
                if code >> bit & 1 == 1 {
                    arrows.push((order[j], order[i]));
                }
            }
            arrows.sort();
            if !seen.insert(arrows.clone()) {
                continue;
            }
            let blocks: Blocks = (order.iter().map(|&v| vec![v]).collect(), Vec::new());
            let edges: Vec<(&'static str, usize, usize)> =
                arrows.iter().map(|&(t, h)| ("arrow", t, h)).collect();
            out.push(build(&labels, &blocks, &edges));
        }
        false
    });
    out
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if k == items.len() {
        return visit(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permute(items, k + 1, visit) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}

/// A random regression graph with `n` nodes and the given edge density.
pub fn random_regression_graph(n: usize, density: f64, rng: &mut StdRng) -> RegressionGraph {
    let labels = labels(n);
    // random ordered partition: assign each node a level, compact the levels
    let levels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
    let mut used: Vec<usize> = levels.clone();
    used.sort_unstable();
    used.dedup();
    let with_context = rng.gen_bool(0.5) && used.len() > 1 || used.len() == 1 && rng.gen_bool(0.3);
    let mut blocks: Vec<Vec<usize>> = used
        .iter()
        .map(|&l| (0..n).filter(|&v| levels[v] == l).collect())
        .collect();
    let context = if with_context {
        blocks.pop().unwrap()
    } else {
        Vec::new()
    };
    let blocks: Blocks = (blocks, context);
    let n_resp = blocks.0.len();
    let mut rank = vec![0usize; n];
    for (j, b) in blocks.0.iter().enumerate() {
        for &v in b {
            rank[v] = j;
        }
    }
    for &v in &blocks.1 {
        rank[v] = n_resp;
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            if rng.gen_bool(density) {
                if let Some(e) = pair_options(&blocks, &rank, a, b)[1] {
                    edges.push(e);
                }
            }
        }
    }
    build(&labels, &blocks, &edges)
}

/// A random DAG: singleton blocks in a random order, random arrows.
pub fn random_dag(n: usize, density: f64, rng: &mut StdRng) -> RegressionGraph {
    let labels = labels(n);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let blocks: Blocks = (order.iter().map(|&v| vec![v]).collect(), Vec::new());
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_bool(density) {
                // arrow from the later list position to the earlier
                edges.push(("arrow", order[j], order[i]));
            }
        }
    }
    build(&labels, &blocks, &edges)
}

/// Every query triple `(alpha, beta, c)` of disjoint sets over `nodes`, with
/// nonempty alpha and beta; remaining nodes are unassigned.
pub fn all_queries(nodes: &[usize]) -> Vec<(NodeSet, NodeSet, NodeSet)> {
    let n = nodes.len();
    let mut out = Vec::new();
    let mut assign = vec![0u8; n];
    loop {
        let mut alpha = NodeSet::EMPTY;
        let mut beta = NodeSet::EMPTY;
        let mut c = NodeSet::EMPTY;
        for (i, &v) in nodes.iter().enumerate() {
            match assign[i] {
                1 => alpha.insert(v),
                2 => beta.insert(v),
                3 => c.insert(v),
                _ => {}
            }
        }
        if !alpha.is_empty() && !beta.is_empty() {
            out.push((alpha, beta, c));
        }
        // base-4 increment
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            assign[i] += 1;
            if assign[i] < 4 {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// Single-edge perturbations of a regression graph that stay valid under its
/// own block order: every deletion, and every legal retype of one edge.
pub fn single_edge_perturbations(g: &RegressionGraph) -> Vec<(String, RegressionGraph)> {
    let n = g.node_count();
    let labels: Vec<String> = g.labels().to_vec();
    let blocks: Blocks = (
        g.response_blocks().to_vec(),
        g.context().to_vec(),
    );
    let rank: Vec<usize> = (0..n).map(|v| g.rank_of(v)).collect();
    let all_edges: Vec<(&'static str, usize, usize)> = g
        .pairs()
        .map(|(a, b, c)| {
            if let Some((t, h)) = c.arrow {
                ("arrow", t, h)
            } else if c.dashed {
                ("dashed", a, b)
            } else {
                ("full", a, b)
            }
        })
        .collect();
    let mut out = Vec::new();
    for (idx, &(kind, x, y)) in all_edges.iter().enumerate() {
        let rest: Vec<(&'static str, usize, usize)> = all_edges
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != idx)
            .map(|(_, &e)| e)
            .collect();
        out.push((
            format!("delete {kind} {x}-{y}"),
            build(&labels, &blocks, &rest),
        ));
        let (a, b) = (x.min(y), x.max(y));
        for opt in pair_options(&blocks, &rank, a, b).into_iter().flatten() {
            if opt == (kind, x, y) {
                continue;
            }
            let mut edges = rest.clone();
            edges.push(opt);
            out.push((
                format!("retype {kind} {x}-{y} as {} {}-{}", opt.0, opt.1, opt.2),
                build(&labels, &blocks, &edges),
            ));
        }
    }
    out
}
