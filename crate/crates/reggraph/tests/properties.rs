//! Structural invariants checked exhaustively at small sizes and by sampling
//! at slightly larger ones.

mod common;

use common::{
    all_dags, all_queries, all_regression_graphs, random_regression_graph,
    single_edge_perturbations,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use reggraph::separation::connected_given;
use reggraph::{
    d_separate, dag_binary_table, indicator_closure, markov_equivalent, parse_graph,
    partial_correlation, regress_coeff, rg_separate, sample_system, separate_concentration,
    serialize, summary_graph, to_edge_matrix, Dist, IndependenceQuery, MixedGraph, NodeId,
    NodePartition, NodeSet, RegressionGraph, Subclass, TransformSpec, VKind,
};
use std::collections::BTreeMap;

fn queries_of(g: &MixedGraph) -> Vec<IndependenceQuery> {
    let nodes: Vec<usize> = (0..g.node_count()).collect();
    all_queries(&nodes)
        .into_iter()
        .map(|(a, b, c)| IndependenceQuery::new(a, b, c).unwrap())
        .collect()
}

/// Query answers in label order, comparable across graphs that share a label
/// set but assign ids differently.
fn answer_vector(g: &MixedGraph) -> Vec<bool> {
    let mut labels: Vec<&str> = (0..g.node_count()).map(|v| g.label(v)).collect();
    labels.sort();
    let ids: Vec<usize> = labels.iter().map(|l| g.node_by_label(l).unwrap()).collect();
    let positions: Vec<usize> = (0..ids.len()).collect();
    all_queries(&positions)
        .into_iter()
        .map(|(a, b, c)| {
            let map = |s: NodeSet| -> NodeSet { s.iter().map(|p| ids[p]).collect() };
            let q = IndependenceQuery::new(map(a), map(b), map(c)).unwrap();
            rg_separate(g, &q).unwrap().implied_independent
        })
        .collect()
}

#[test]
fn dag_collisions_are_exactly_head_to_head_arrows() {
    // brute force over every DAG on up to 5 nodes
    for n in 2..=5 {
        for g in all_dags(n) {
            let collisions = g.collision_triples();
            let mut expected = Vec::new();
            for inner in 0..n {
                let pa = g.parents_of(inner).to_vec();
                for (x, &i) in pa.iter().enumerate() {
                    for &k in pa.iter().skip(x + 1) {
                        if !g.coupled(i, k) {
                            expected.push((inner, i.min(k), i.max(k)));
                        }
                    }
                }
            }
            expected.sort();
            assert_eq!(collisions, expected);
            for v in g.enumerate_vs() {
                match v.kind {
                    VKind::Collision => assert!(
                        g.parents_of(v.inner.0).contains(v.outer.0 .0)
                            && g.parents_of(v.inner.0).contains(v.outer.1 .0)
                    ),
                    VKind::Transmitting => assert!(
                        !(g.parents_of(v.inner.0).contains(v.outer.0 .0)
                            && g.parents_of(v.inner.0).contains(v.outer.1 .0))
                    ),
                }
            }
        }
    }
}

#[test]
fn skeleton_is_label_stable_under_relabeling() {
    let mut rng = StdRng::seed_from_u64(40);
    for _ in 0..50 {
        let g = random_regression_graph(5, 0.5, &mut rng);
        // rebuild with permuted label strings attached to the same ids
        let perm: Vec<usize> = {
            let mut p: Vec<usize> = (0..5).collect();
            for i in (1..5).rev() {
                let j = rng.gen_range(0..=i);
                p.swap(i, j);
            }
            p
        };
        let new_labels: Vec<String> = (0..5).map(|v| format!("n{}", perm[v])).collect();
        let text = serialize(&g);
        let renamed: String = {
            let mut t = String::new();
            for line in text.lines() {
                let mut out = line.to_string();
                for (v, new_label) in new_labels.iter().enumerate() {
                    // label tokens are single digits in generated graphs
                    out = out
                        .split_whitespace()
                        .map(|tok| {
                            if tok == g.label(v) {
                                new_label.clone()
                            } else {
                                tok.to_string()
                            }
                        })
                        .collect::<Vec<_>>()
                        .join(" ");
                }
                t.push_str(&out);
                t.push('\n');
            }
            t
        };
        let h = parse_graph(&renamed).unwrap();
        let sk_g: Vec<(String, String)> = g
            .skeleton()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (new_labels[a].clone(), new_labels[b].clone());
                if x <= y {
                    (x, y)
                } else {
                    (y, x)
                }
            })
            .collect();
        let mut sk_g = sk_g;
        sk_g.sort();
        assert_eq!(sk_g, h.mixed().skeleton_labels());
    }
}

#[test]
fn round_trip_parse_serialize_identity() {
    let mut rng = StdRng::seed_from_u64(41);
    for n in 2..=6 {
        for _ in 0..40 {
            let g = random_regression_graph(n, 0.5, &mut rng);
            let back = parse_graph(&serialize(&g)).unwrap();
            assert!(back.mixed().same_structure(&g));
            assert!(back.as_regression().is_some());
        }
    }
}

#[test]
fn equivalence_is_signature_equality_on_three_nodes() {
    let graphs = all_regression_graphs(3);
    let signature = |g: &RegressionGraph| {
        let mut collisions: Vec<(String, String, String)> = g
            .collision_triples()
            .into_iter()
            .map(|(inner, a, b)| {
                let (la, lb) = (g.label(a).to_string(), g.label(b).to_string());
                let (la, lb) = if la <= lb { (la, lb) } else { (lb, la) };
                (g.label(inner).to_string(), la, lb)
            })
            .collect();
        collisions.sort();
        (g.skeleton_labels(), collisions)
    };
    let sigs: Vec<_> = graphs.iter().map(signature).collect();
    let answers: Vec<Vec<bool>> = graphs.iter().map(|g| answer_vector(g)).collect();
    for (i, g1) in graphs.iter().enumerate() {
        for (j, g2) in graphs.iter().enumerate().skip(i) {
            let rep = markov_equivalent(g1, g2).unwrap();
            assert_eq!(rep.equivalent, sigs[i] == sigs[j], "signature mismatch");
            // same independence structure iff equivalent
            assert_eq!(
                rep.equivalent,
                answers[i] == answers[j],
                "{}\nvs\n{}",
                serialize(g1),
                serialize(g2)
            );
        }
    }
}

#[test]
fn equivalence_matches_query_structure_on_four_nodes() {
    let graphs = all_regression_graphs(4);
    // bucket by skeleton; only same-skeleton pairs can be equivalent, and
    // different skeletons always differ on some adjacent-pair query
    let mut buckets: BTreeMap<Vec<(String, String)>, Vec<usize>> = BTreeMap::new();
    for (i, g) in graphs.iter().enumerate() {
        buckets.entry(g.skeleton_labels()).or_default().push(i);
    }
    let answers: Vec<Vec<bool>> = graphs.iter().map(|g| answer_vector(g)).collect();
    for idxs in buckets.values() {
        for (x, &i) in idxs.iter().enumerate() {
            for &j in idxs.iter().skip(x + 1) {
                let rep = markov_equivalent(&graphs[i], &graphs[j]).unwrap();
                assert_eq!(
                    rep.equivalent,
                    answers[i] == answers[j],
                    "{}\nvs\n{}",
                    serialize(&graphs[i]),
                    serialize(&graphs[j])
                );
            }
        }
    }
}

#[test]
fn zero_test_agrees_with_d_separation_on_small_dags() {
    for n in 2..=4 {
        for g in all_dags(n) {
            for q in queries_of(&g) {
                let a = d_separate(&g, &q).unwrap().implied_independent;
                let b = rg_separate(&g, &q).unwrap().implied_independent;
                assert_eq!(a, b, "n={n} g={}", serialize(&g));
            }
        }
    }
}

#[test]
fn matrix_and_walk_criteria_agree() {
    let mut rng = StdRng::seed_from_u64(42);
    for n in 3..=6 {
        for _ in 0..60 {
            let g = random_regression_graph(n, 0.45, &mut rng);
            for q in queries_of(&g).into_iter().step_by(3) {
                let verdict = rg_separate(&g, &q).unwrap().implied_independent;
                let mut walk_connected = false;
                'outer: for i in q.alpha.iter() {
                    for j in q.beta.iter() {
                        if connected_given(&g, NodeId(i), NodeId(j), q.c) {
                            walk_connected = true;
                            break 'outer;
                        }
                    }
                }
                assert_eq!(verdict, !walk_connected, "{}", serialize(&g));
            }
        }
    }
}

#[test]
fn closure_pivot_union_and_monotonicity() {
    let mut rng = StdRng::seed_from_u64(43);
    for n in 2..=5 {
        for _ in 0..40 {
            let g = random_regression_graph(n, 0.5, &mut rng);
            let m = to_edge_matrix(&g);
            let all: Vec<usize> = (0..n).collect();
            for code1 in 0..(1usize << n) {
                let m1: NodeSet = all.iter().filter(|&&v| code1 >> v & 1 == 1).copied().collect();
                let c1 = indicator_closure(&m, m1);
                // monotone: never removes a one
                for i in 0..n {
                    assert!(m.row(i).is_subset(&c1.row(i)));
                }
                // idempotent
                assert_eq!(indicator_closure(&c1, m1), c1);
                // union property, on a subsample of second pivots
                for code2 in [0usize, 1, code1 & 0b11, (1 << n) - 1] {
                    let m2: NodeSet =
                        all.iter().filter(|&&v| code2 >> v & 1 == 1).copied().collect();
                    let two_step = indicator_closure(&c1, m2);
                    let joint = indicator_closure(&m, m1.union(m2));
                    assert_eq!(two_step, joint);
                }
            }
        }
    }
}

#[test]
fn induced_entries_are_sound_and_generically_complete() {
    // entry 0 must mean a vanishing coefficient for every draw; entry 1 must
    // show up numerically for some draw
    let mut rng = StdRng::seed_from_u64(44);
    let mut graphs = all_regression_graphs(3);
    for _ in 0..60 {
        graphs.push(random_regression_graph(4, 0.5, &mut rng));
    }
    for g in &graphs {
        let n = g.node_count();
        let systems: Vec<_> = (0..30)
            .map(|s| sample_system(g, 1000 + s).unwrap())
            .collect();
        let nodes: Vec<usize> = (0..n).collect();
        for (alpha, beta, c) in all_queries(&nodes) {
            let p = NodePartition::with_rest_marginalized(g, alpha, beta, c).unwrap();
            let pm = reggraph::induced_edge_matrix(g, &p);
            for &i in &pm.rows {
                for &j in &pm.cols {
                    let entry = pm.get(i, j).unwrap();
                    let given: Vec<usize> = p.cols().without(j.0).to_vec();
                    let mut max_abs: f64 = 0.0;
                    for sys in &systems {
                        let coef = regress_coeff(&sys.sigma, i.0, j.0, &given).unwrap();
                        max_abs = max_abs.max(coef.abs());
                    }
                    if entry {
                        assert!(
                            max_abs > 1e-6,
                            "entry 1 but coefficient vanished: {} -> {} given {given:?}\n{}",
                            j.0,
                            i.0,
                            serialize(g)
                        );
                    } else {
                        assert!(
                            max_abs < 1e-9,
                            "entry 0 but coefficient {max_abs:.2e}: {} -> {} given {given:?}\n{}",
                            j.0,
                            i.0,
                            serialize(g)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn concentration_blocking_is_monotone_in_conditioning() {
    let mut rng = StdRng::seed_from_u64(45);
    for _ in 0..80 {
        let n = rng.gen_range(3..=6);
        // full-lines-only graph: everything in context
        let labels: Vec<String> = (0..n).map(|v| v.to_string()).collect();
        let label_refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if rng.gen_bool(0.4) {
                    edges.push(reggraph::full(&labels[a], &labels[b]));
                }
            }
        }
        let g = RegressionGraph::build(&[], &label_refs, &edges).unwrap();
        for q in queries_of(&g) {
            let v = separate_concentration(&g, &q).unwrap();
            if !v.implied_independent {
                continue;
            }
            let free = g.all_nodes().minus(q.alpha).minus(q.beta).minus(q.c);
            for w in free.iter() {
                let bigger = IndependenceQuery::new(q.alpha, q.beta, q.c.with(w)).unwrap();
                assert!(
                    separate_concentration(&g, &bigger).unwrap().implied_independent,
                    "separator grew yet split failed: {}",
                    serialize(&g)
                );
            }
        }
    }
}

#[test]
fn summary_graph_is_elimination_order_independent() {
    let mut rng = StdRng::seed_from_u64(46);
    for _ in 0..120 {
        let n = rng.gen_range(4..=6);
        let g = random_regression_graph(n, 0.5, &mut rng);
        let v1 = rng.gen_range(0..n);
        let v2 = (v1 + 1 + rng.gen_range(0..n - 1)) % n;
        let as_cond1 = rng.gen_bool(0.5);
        let as_cond2 = rng.gen_bool(0.5);
        let spec_of = |v: usize, cond: bool| {
            if cond {
                TransformSpec::new(NodeSet::EMPTY, NodeSet::singleton(v)).unwrap()
            } else {
                TransformSpec::new(NodeSet::singleton(v), NodeSet::EMPTY).unwrap()
            }
        };
        let joint = TransformSpec::new(
            {
                let mut m = NodeSet::EMPTY;
                if !as_cond1 {
                    m.insert(v1);
                }
                if !as_cond2 {
                    m.insert(v2);
                }
                m
            },
            {
                let mut c = NodeSet::EMPTY;
                if as_cond1 {
                    c.insert(v1);
                }
                if as_cond2 {
                    c.insert(v2);
                }
                c
            },
        )
        .unwrap();
        let one_shot = summary_graph(&g, &joint).unwrap();
        // the second step must resolve the node by label in the shrunken graph
        let relabel = |sg: &reggraph::SummaryGraph, v: usize, cond: bool| {
            let id = sg.node_by_label(g.label(v)).unwrap();
            spec_of(id, cond)
        };
        let first_a = summary_graph(&g, &spec_of(v1, as_cond1)).unwrap();
        let a =
            reggraph::transform_summary(&first_a, &relabel(&first_a, v2, as_cond2)).unwrap();
        let first_b = summary_graph(&g, &spec_of(v2, as_cond2)).unwrap();
        let b =
            reggraph::transform_summary(&first_b, &relabel(&first_b, v1, as_cond1)).unwrap();
        assert!(one_shot.graph().same_structure(a.graph()), "{}", serialize(&g));
        assert!(one_shot.graph().same_structure(b.graph()), "{}", serialize(&g));
    }
}

#[test]
fn margin_consistency_exhaustive_three_nodes() {
    // every query on the remaining margin answers the same on the summary
    // graph as on the generating graph with the conditioning enlarged
    for g in all_regression_graphs(3) {
        margin_consistency_check(&g);
    }
}

fn margin_consistency_check(g: &RegressionGraph) {
    let n = g.node_count();
    let mut assign = vec![0u8; n]; // 0 keep, 1 marginalize, 2 condition
    loop {
        let mut m = NodeSet::EMPTY;
        let mut c = NodeSet::EMPTY;
        for (v, &a) in assign.iter().enumerate() {
            match a {
                1 => m.insert(v),
                2 => c.insert(v),
                _ => {}
            }
        }
        let spec = TransformSpec::new(m, c).unwrap();
        let keep: Vec<usize> = (0..n).filter(|&v| assign[v] == 0).collect();
        if keep.len() >= 2 {
            let sg = summary_graph(g, &spec).unwrap();
            // ids shift in the summary; map by label
            for (alpha, beta, cq) in all_queries(&keep) {
                let to_labels = |s: NodeSet| -> Vec<String> {
                    s.iter().map(|v| g.label(v).to_string()).collect()
                };
                let map = |s: NodeSet| -> NodeSet {
                    to_labels(s)
                        .iter()
                        .map(|l| sg.node_by_label(l).unwrap())
                        .collect()
                };
                let on_summary = rg_separate(
                    sg.graph(),
                    &IndependenceQuery::new(map(alpha), map(beta), map(cq)).unwrap(),
                )
                .unwrap()
                .implied_independent;
                let on_original = rg_separate(
                    g,
                    &IndependenceQuery::new(alpha, beta, cq.union(c)).unwrap(),
                )
                .unwrap()
                .implied_independent;
                assert_eq!(
                    on_summary,
                    on_original,
                    "margin query diverged\ngraph:\n{}\nspec: m={:?} c={:?} q=({:?},{:?},{:?})",
                    serialize(g),
                    spec.marginalize,
                    spec.condition,
                    to_labels(alpha),
                    to_labels(beta),
                    to_labels(cq),
                );
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            assign[i] += 1;
            if assign[i] < 3 {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn randomization_removes_direct_confounding() {
    // deleting every arrow into a treatment node before marginalizing leaves
    // no double edge at the treatment
    let mut rng = StdRng::seed_from_u64(47);
    for _ in 0..150 {
        let n = rng.gen_range(3..=6);
        let g = random_regression_graph(n, 0.55, &mut rng);
        let treatment = rng.gen_range(0..n);
        let labels: Vec<String> = g.labels().to_vec();
        let blocks: Vec<Vec<&str>> = g
            .response_blocks()
            .iter()
            .map(|b| b.iter().map(|&v| labels[v].as_str()).collect())
            .collect();
        let block_slices: Vec<&[&str]> = blocks.iter().map(|b| b.as_slice()).collect();
        let context: Vec<&str> = g.context().iter().map(|&v| labels[v].as_str()).collect();
        let mut edges = Vec::new();
        for (a, b, comp) in g.pairs() {
            if let Some((t, h)) = comp.arrow {
                if h != treatment {
                    edges.push(reggraph::arrow(&labels[t], &labels[h]));
                }
            }
            if comp.dashed && a != treatment && b != treatment {
                edges.push(reggraph::dashed(&labels[a], &labels[b]));
            } else if comp.dashed {
                // dashed at the treatment is also an effect on it; remove
                continue;
            }
            if comp.full {
                edges.push(reggraph::full(&labels[a], &labels[b]));
            }
        }
        let randomized = RegressionGraph::build(&block_slices, &context, &edges).unwrap();
        let mut m = NodeSet::EMPTY;
        for v in 0..n {
            if v != treatment && rng.gen_bool(0.5) {
                m.insert(v);
            }
        }
        let spec = TransformSpec::new(m, NodeSet::EMPTY).unwrap();
        let sg = summary_graph(&randomized, &spec).unwrap();
        for (t, h) in reggraph::detect_direct_confounding(&sg).unwrap() {
            let t_label = sg.label(t.0);
            let h_label = sg.label(h.0);
            assert_ne!(t_label, labels[treatment]);
            assert_ne!(h_label, labels[treatment]);
        }
    }
}

#[test]
fn binary_tables_match_d_separation_exactly() {
    let mut rng = StdRng::seed_from_u64(48);
    let dags = all_dags(4);
    for (gi, g) in dags.iter().enumerate().step_by(3) {
        let mut conditionals = BTreeMap::new();
        for v in 0..4 {
            let k = g.parents_of(v).len();
            let table: Vec<f64> = (0..(1usize << k))
                .map(|_| rng.gen_range(0.15..0.85))
                .collect();
            conditionals.insert(v, table);
        }
        let t = dag_binary_table(g, &conditionals).unwrap();
        for q in queries_of(g.graph()) {
            let implied = d_separate(g, &q).unwrap().implied_independent;
            let a: Vec<usize> = q.alpha.to_vec();
            let b: Vec<usize> = q.beta.to_vec();
            let c: Vec<usize> = q.c.to_vec();
            let dev = t.ci_deviation(&a, &b, &c);
            if implied {
                assert!(dev < 1e-12, "graph {gi}: implied CI violated, dev={dev:e}");
            } else {
                assert!(dev > 1e-12, "graph {gi}: generic table hit a cancellation");
            }
        }
    }
}

#[test]
fn gaussian_systems_track_graph_verdicts() {
    // sampled miniature of the full oracle-soundness sweep, both sides:
    // implied independences vanish in every draw; everything else shows a
    // partial correlation beyond 1e-4 for at least one draw
    let mut rng = StdRng::seed_from_u64(49);
    for _ in 0..25 {
        let n = rng.gen_range(3..=6);
        let g = random_regression_graph(n, 0.5, &mut rng);
        let systems: Vec<_> = (0..100).map(|s| sample_system(&g, 2000 + s).unwrap()).collect();
        for q in queries_of(&g).into_iter().step_by(5) {
            let implied = rg_separate(&g, &q).unwrap().implied_independent;
            let given: Vec<usize> = q.c.to_vec();
            if implied {
                for sys in systems.iter().take(20) {
                    for i in q.alpha.iter() {
                        for k in q.beta.iter() {
                            let r = partial_correlation(&sys.sigma, i, k, &given).unwrap();
                            assert!(
                                r.abs() < 1e-10,
                                "implied independence with pcor {r:e}\n{}",
                                serialize(&g)
                            );
                        }
                    }
                }
            } else {
                let mut max_abs: f64 = 0.0;
                for sys in &systems {
                    for i in q.alpha.iter() {
                        for k in q.beta.iter() {
                            let r = partial_correlation(&sys.sigma, i, k, &given).unwrap();
                            max_abs = max_abs.max(r.abs());
                        }
                    }
                }
                assert!(
                    max_abs > 1e-4,
                    "dependence verdict but max pcor {max_abs:e}\n{}",
                    serialize(&g)
                );
            }
        }
    }
}

#[test]
fn d_separation_matches_zero_test_on_sampled_six_node_dags() {
    let mut rng = StdRng::seed_from_u64(51);
    for _ in 0..120 {
        let g = common::random_dag(6, 0.45, &mut rng);
        for q in queries_of(&g).into_iter().step_by(7) {
            let a = d_separate(&g, &q).unwrap().implied_independent;
            let b = rg_separate(&g, &q).unwrap().implied_independent;
            assert_eq!(a, b, "{}", serialize(&g));
        }
    }
}

#[test]
fn graphs_and_systems_are_send_sync() {
    fn check<T: Send + Sync>() {}
    check::<RegressionGraph>();
    check::<reggraph::SummaryGraph>();
    check::<reggraph::GaussianSystem>();
    check::<reggraph::EdgeMatrix>();
}

#[test]
fn combination_properties_hold_on_generated_gaussians() {
    let mut rng = StdRng::seed_from_u64(50);
    for _ in 0..40 {
        let g = random_regression_graph(3, 0.5, &mut rng);
        let sys = sample_system(&g, rng.gen()).unwrap();
        let rep = reggraph::check_combination_properties(Dist::Gaussian(&sys.sigma), 0, 1, 2);
        assert!(rep.upward_holds, "{}", serialize(&g));
        assert!(rep.downward_holds, "{}", serialize(&g));
    }
}

#[test]
fn perturbing_one_edge_breaks_fixture_equivalence() {
    // every deletion changes the skeleton, and whatever retypes stay valid
    // must change the collision set
    let graphs = all_regression_graphs(3);
    for g in graphs.iter().step_by(7) {
        for (what, h) in single_edge_perturbations(g) {
            let rep = markov_equivalent(g, &h).unwrap();
            if what.starts_with("delete") {
                assert!(!rep.equivalent, "{what} kept equivalence: {}", serialize(g));
                assert!(!rep.skeleton_diff.is_empty());
            }
        }
    }
}

mod prop {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        /// build -> serialize -> parse is the identity on valid graphs.
        #[test]
        fn serialize_parse_round_trip(seed in any::<u64>(), n in 2usize..7) {
            let mut rng = StdRng::seed_from_u64(seed);
            let g = random_regression_graph(n, 0.5, &mut rng);
            let back = parse_graph(&serialize(&g)).unwrap();
            prop_assert!(back.mixed().same_structure(&g));
        }

        /// The partial closure is monotone and idempotent for any pivot set.
        #[test]
        fn closure_monotone_idempotent(seed in any::<u64>(), n in 2usize..7, pivots: u8) {
            let mut rng = StdRng::seed_from_u64(seed);
            let g = random_regression_graph(n, 0.5, &mut rng);
            let m = to_edge_matrix(&g);
            let over: NodeSet = (0..n).filter(|v| pivots >> v & 1 == 1).collect();
            let closed = indicator_closure(&m, over);
            for i in 0..n {
                prop_assert!(m.row(i).is_subset(&closed.row(i)));
            }
            prop_assert_eq!(indicator_closure(&closed, over), closed);
        }

        /// Queries with overlapping sets never construct.
        #[test]
        fn overlapping_queries_rejected(a in 0usize..4, b in 0usize..4) {
            let alpha = NodeSet::singleton(a);
            let beta = NodeSet::singleton(b);
            let q = IndependenceQuery::new(alpha, beta, NodeSet::EMPTY);
            prop_assert_eq!(q.is_ok(), a != b);
        }
    }
}

#[test]
fn subclass_classification_spot_checks() {
    let conc = RegressionGraph::build(&[], &["a", "b"], &[reggraph::full("a", "b")]).unwrap();
    assert_eq!(conc.classify(), Subclass::ConcentrationGraph);
    let members = reggraph::equivalent_subclass_members(&conc).unwrap();
    assert!(members.contains(&Subclass::ConcentrationGraph));
    assert!(members.contains(&Subclass::Dag));
}
