//! Property tests for the structural and transform invariants.

use proptest::prelude::*;

use snakegrace::cycles::{eq2_cycle, table2_c6, table3_c10, table4_c14};
use snakegrace::search::{enumerate_graceful, Execution, Mode, Quotient};
use snakegrace::topology::{
    build_snake, emit_tuple_form, parse_tuple_form, recover_string, LabelledGraph, SnakeShape,
};
use snakegrace::transforms::{complement, near_complement, shift};
use snakegrace::verifier::{classify, induced_edge_labels, Classification};
use snakegrace::{build_kc4n, build_kc6};

/// A valid shape: up to 8 cycles of lengths 3..=14 with an in-range string.
fn shape_strategy() -> impl Strategy<Value = SnakeShape> {
    prop::collection::vec(3usize..=14, 1..=8)
        .prop_flat_map(|lengths| {
            let entries = lengths.len().saturating_sub(2);
            let string = lengths
                .iter()
                .skip(1)
                .take(entries)
                .map(|&l| 1u64..=(l / 2) as u64)
                .collect::<Vec<_>>();
            (Just(lengths), string)
        })
        .prop_map(|(lengths, string)| SnakeShape::new(lengths, string).unwrap())
}

proptest! {
    #[test]
    fn recover_string_round_trips(shape in shape_strategy()) {
        let g = build_snake(&shape).unwrap();
        prop_assert_eq!(recover_string(&g).unwrap(), shape.string().to_vec());
    }

    #[test]
    fn snakes_are_connected_eulerian_with_k_minus_1_cuts(shape in shape_strategy()) {
        let g = build_snake(&shape).unwrap();
        prop_assert!(g.is_connected());
        prop_assert_eq!(g.edge_count(), shape.edge_count());
        let expected_vertices: usize =
            shape.cycle_lengths().iter().sum::<usize>() - (shape.cycle_count() - 1);
        prop_assert_eq!(g.vertex_count(), expected_vertices);
        let adj = g.adjacency();
        prop_assert!(adj.iter().all(|nb| nb.len() % 2 == 0));
        prop_assert_eq!(g.cut_vertices().len(), shape.cycle_count() - 1);
        // Removing any cut vertex disconnects the snake.
        for &cut in g.cut_vertices() {
            let kept: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .copied()
                .filter(|&(u, v)| u != cut && v != cut)
                .collect();
            let h = LabelledGraph::from_edges(g.vertex_count(), &kept);
            let start = (0..g.vertex_count()).find(|&v| v != cut).unwrap();
            let adj = h.adjacency();
            let mut seen = vec![false; h.vertex_count()];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            let reached = seen.iter().filter(|&&b| b).count();
            prop_assert!(reached < g.vertex_count() - 1);
        }
    }

    #[test]
    fn shift_and_complement_preserve_edge_labels(
        shape in shape_strategy(),
        seed in any::<u64>(),
        c in 0i64..1000,
    ) {
        let mut g = build_snake(&shape).unwrap();
        if g.edge_count() > 40 {
            return Ok(());
        }
        // Arbitrary labelling, not necessarily graceful.
        let mut state = seed;
        for v in 0..g.vertex_count() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            g.set_label(v, (state >> 40) % 500);
        }
        let base = induced_edge_labels(&g).unwrap();
        let shifted = shift(&g, c).unwrap();
        prop_assert_eq!(induced_edge_labels(&shifted).unwrap(), base.clone());
        let max = (0..g.vertex_count()).filter_map(|v| g.label(v)).max().unwrap();
        let complemented = complement(&g, max + (c as u64)).unwrap();
        prop_assert_eq!(induced_edge_labels(&complemented).unwrap(), base);
    }

    #[test]
    fn emit_parse_round_trips_on_built_snakes(
        n in 1u64..=6,
        k in 1u64..=5,
        seed in any::<u64>(),
    ) {
        let mut state = seed;
        let string: Vec<u64> = (0..k.saturating_sub(2))
            .map(|_| {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(99);
                1 + (state >> 33) % (2 * n)
            })
            .collect();
        let built = build_kc4n(n, k, &string, None).unwrap();
        let text = emit_tuple_form(&built.graph).unwrap();
        let (_, parsed) = parse_tuple_form(&text).unwrap();
        prop_assert_eq!(emit_tuple_form(&parsed).unwrap(), text);
        prop_assert_eq!(parsed.cycle_labels(), built.graph.cycle_labels());
    }
}

proptest! {
    #[test]
    fn tuple_parser_never_panics(text in ".{0,120}") {
        let _ = parse_tuple_form(&text);
    }
}

#[test]
fn complement_at_m_maps_graceful_to_graceful() {
    for (n, k, string) in [(1u64, 3u64, vec![2u64]), (2, 2, vec![]), (3, 4, vec![5, 1])] {
        let built = build_kc4n(n, k, &string, None).unwrap();
        let m = built.report.m;
        let h = complement(&built.graph, m).unwrap();
        assert_eq!(
            classify(&h).unwrap().classification,
            Classification::Graceful
        );
    }
}

#[test]
fn near_complement_maps_one_free_near_to_near() {
    // Odd kC_6 outputs avoid the label 1, so the near complement applies.
    for k in [1u64, 3, 5] {
        let string: Vec<u64> = vec![2; k.saturating_sub(2) as usize];
        let built = build_kc6(k, &string, None).unwrap();
        assert!(built.graph.find_label(1).is_none(), "k={k} output uses 1");
        let h = near_complement(&built.graph, built.report.m).unwrap();
        assert_eq!(
            classify(&h).unwrap().classification,
            Classification::NearGracefulOmitM
        );
    }
}

#[test]
fn classify_is_vertex_id_invariant() {
    // The same labelled graph entered under a permutation of vertex ids
    // classifies identically.
    let built = build_kc6(3, &[2], None).unwrap();
    let g = &built.graph;
    let n = g.vertex_count();
    let perm: Vec<usize> = (0..n).map(|v| (v * 7 + 3) % n).collect();
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
    let mut h = LabelledGraph::from_edges(n, &edges);
    for (v, &pv) in perm.iter().enumerate() {
        h.set_label(pv, g.label(v).unwrap());
    }
    let a = built.report.clone();
    let b = classify(&h).unwrap();
    assert_eq!(b.classification, a.classification);
    assert_eq!(b.m, a.m);
    assert_eq!(b.edge_label_multiset, a.edge_label_multiset);
    assert_eq!(b.alpha_boundary, a.alpha_boundary);
}

#[test]
fn ad_hoc_rows_have_their_stated_edge_windows() {
    let window =
        |lo: u64, hi: u64, skip: u64| -> Vec<u64> { (lo..=hi).filter(|&e| e != skip).collect() };
    let edge_set = |labels: &[u64]| -> Vec<u64> {
        let mut edges: Vec<u64> = labels
            .iter()
            .zip(labels.iter().cycle().skip(1))
            .map(|(&a, &b)| a.abs_diff(b))
            .collect();
        edges.sort_unstable();
        edges
    };
    // Near rows (the k = 1 bases) use the omit-m top window at every scale.
    // The graceful-completing rows only appear from k = 2 on: entries like
    // t-7 collide with their small constants at k = 1.
    for k in 1..=10u64 {
        for v in ['a', 'b'] {
            let labels = table2_c6(v).unwrap().instantiate(6 * k).unwrap();
            assert_eq!(
                edge_set(&labels),
                window(6 * k - 5, 6 * k + 1, 6 * k),
                "C6^{v} k={k}"
            );
        }
        for v in ['a', 'd', 'f'] {
            let labels = table3_c10(v).unwrap().instantiate(10 * k).unwrap();
            assert_eq!(
                edge_set(&labels),
                window(10 * k - 9, 10 * k + 1, 10 * k),
                "C10^{v} k={k}"
            );
        }
        let labels = table4_c14('a').unwrap().instantiate(14 * k).unwrap();
        assert_eq!(
            edge_set(&labels),
            window(14 * k - 13, 14 * k + 1, 14 * k),
            "C14^a k={k}"
        );
    }
    for k in 2..=10u64 {
        for v in ['c', 'd'] {
            let labels = table2_c6(v).unwrap().instantiate(6 * k).unwrap();
            assert_eq!(
                edge_set(&labels),
                window(6 * k - 6, 6 * k, 6 * k - 5),
                "C6^{v} k={k}"
            );
        }
        for v in ['b', 'c', 'e', 'g'] {
            let labels = table3_c10(v).unwrap().instantiate(10 * k).unwrap();
            assert_eq!(
                edge_set(&labels),
                window(10 * k - 10, 10 * k, 10 * k - 9),
                "C10^{v} k={k}"
            );
        }
        let labels = table4_c14('b').unwrap().instantiate(14 * k).unwrap();
        assert_eq!(
            edge_set(&labels),
            window(14 * k - 14, 14 * k, 14 * k - 13),
            "C14^b k={k}"
        );
    }
}

#[test]
fn near_rows_omit_the_labels_their_inductions_need() {
    // The C_6 near rows must avoid 1 (the near-complement step); their
    // low labels are exactly {0, 2, 3}.
    for v in ['a', 'b'] {
        let labels = table2_c6(v).unwrap().instantiate(60).unwrap();
        let mut lows: Vec<u64> = labels.iter().copied().filter(|&l| l < 30).collect();
        lows.sort_unstable();
        assert_eq!(lows, vec![0, 2, 3], "C6^{v}");
    }
    // The C_10 near rows must avoid 2 (the even-step relabelling would
    // collide at 10k-7 or 10k-2 otherwise).
    for v in ['a', 'd', 'f'] {
        let labels = table3_c10(v).unwrap().instantiate(100).unwrap();
        assert!(!labels.contains(&2), "C10^{v} must omit the low label 2");
    }
    // The C_14 near row avoids 3 for the same reason.
    let labels = table4_c14('a').unwrap().instantiate(140).unwrap();
    assert!(!labels.contains(&3), "C14^a must omit the low label 3");
}

#[test]
fn eq2_edge_window_is_top_4n() {
    for n in 1..=8u64 {
        let row = eq2_cycle(n);
        for t in [4 * n, 4 * n + 3, 8 * n, 12 * n] {
            let labels = row.instantiate(t).unwrap();
            let mut edges: Vec<u64> = labels
                .iter()
                .zip(labels.iter().cycle().skip(1))
                .map(|(&a, &b)| a.abs_diff(b))
                .collect();
            edges.sort_unstable();
            let expected: Vec<u64> = (t - 4 * n + 1..=t).collect();
            assert_eq!(edges, expected, "n={n} t={t}");
        }
    }
}

/// Unpruned reference on a snake: every injective assignment of allowed
/// labels, filtered by the exact edge multiset.
fn naive_enumerate(g: &LabelledGraph, mode: Mode) -> Vec<Vec<u64>> {
    let m = g.edge_count();
    let (allowed, required): (Vec<u64>, Vec<u64>) = match mode {
        Mode::Graceful => ((0..=m).collect(), (1..=m).collect()),
        Mode::NearOmitM => (
            (0..=m + 1).filter(|&v| v != m).collect(),
            (1..=m + 1).filter(|&e| e != m).collect(),
        ),
        Mode::NearClassic => ((0..=m + 1).collect(), (1..=m).collect()),
    };
    let mut out = Vec::new();
    let mut current: Vec<u64> = Vec::new();
    fn rec(
        g: &LabelledGraph,
        allowed: &[u64],
        required: &[u64],
        current: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if current.len() == g.vertex_count() {
            let mut edges: Vec<u64> = g
                .edges()
                .iter()
                .map(|&(u, v)| current[u].abs_diff(current[v]))
                .collect();
            edges.sort_unstable();
            if edges == required {
                out.push(current.clone());
            }
            return;
        }
        for &cand in allowed {
            if current.contains(&cand) {
                continue;
            }
            current.push(cand);
            rec(g, allowed, required, current, out);
            current.pop();
        }
    }
    rec(g, &allowed, &required, &mut current, &mut out);
    out
}

#[test]
fn pruned_and_naive_agree_on_2c4() {
    let g = build_snake(&SnakeShape::uniform(4, 2, vec![]).unwrap()).unwrap();
    let reference = naive_enumerate(&g, Mode::Graceful);
    let e = enumerate_graceful(&g, Mode::Graceful, None, Execution::Sequential).unwrap();
    assert_eq!(e.quotient, Quotient::Complement);
    // Expand the complement quotient and compare as sets.
    let m = g.edge_count();
    let mut expanded: Vec<Vec<u64>> = e
        .labellings
        .iter()
        .flat_map(|f| {
            let comp: Vec<u64> = f.iter().map(|&v| m - v).collect();
            [f.clone(), comp]
        })
        .collect();
    expanded.sort();
    expanded.dedup();
    let mut reference = reference;
    reference.sort();
    reference.dedup();
    assert_eq!(expanded, reference);
    // Soundness: everything the oracle returns classifies as requested.
    for f in &e.labellings {
        let mut h = g.clone();
        for (v, &l) in f.iter().enumerate() {
            h.set_label(v, l);
        }
        assert_eq!(
            classify(&h).unwrap().classification,
            Classification::Graceful
        );
    }
}
