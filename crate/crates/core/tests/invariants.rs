use indcomplex_core::bounds::{complex_upper_bound, forest_bound, residual_betti, upper_bound, HomologyMemo};
use indcomplex_core::cross::{cross_cycle_chain, is_cocycle, pairing_value, transversal_cocycle, validated_pairs};
use indcomplex_core::homology::evaluate;
use indcomplex_core::lattice::{delta, kagome};
use indcomplex_core::rate::{per_vertex_rate, Factor};
use indcomplex_core::splitting::cofibre_over_matching;
use indcomplex_core::{betti_numbers, canonical_code, independence_complex, join_betti, BettiVector, Graph, VertexSet};
use num_traits::ToPrimitive;
use proptest::prelude::*;

const CAP: usize = 1 << 22;

// Oracle: independent sets by brute force over bitmasks, reduced Betti
// numbers from boundary ranks modulo a large prime.
const P: i64 = 2_147_483_647;

fn independent_masks(g: &Graph) -> Vec<u32> {
    let n = g.n();
    let adj: Vec<u32> = (0..n).map(|v| (0..n).filter(|&w| g.has_edge(v, w)).fold(0, |m, w| m | 1 << w)).collect();
    (0u32..1 << n).filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0)).collect()
}

fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], P - 2);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % P;
                for k in c..cols {
                    rows[r][k] = ((rows[r][k] - f * rows[rank][k]) % P + P) % P;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b = (b % P + P) % P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

fn oracle_betti(g: &Graph) -> Vec<u64> {
    let faces = independent_masks(g);
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let by_size: Vec<Vec<u32>> = (0..=top).map(|s| faces.iter().copied().filter(|f| f.count_ones() as usize == s).collect()).collect();
    // rank of ∂ from size s to size s-1, s >= 1 (augmented: size 0 is the empty face)
    let mut ranks = vec![0usize; top + 2];
    for s in 1..=top {
        let lower = &by_size[s - 1];
        let rows: Vec<Vec<i64>> = lower
            .iter()
            .map(|&l| {
                by_size[s]
                    .iter()
                    .map(|&f| {
                        if f & l == l {
                            let gone = (f ^ l).trailing_zeros();
                            let pos = (f & ((1 << gone) - 1)).count_ones();
                            if pos % 2 == 0 { 1 } else { P - 1 }
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect();
        ranks[s] = rank_mod_p(rows);
    }
    // β̃_{s-1} = #faces of size s - rank ∂_s - rank ∂_{s+1}
    (0..=top).map(|s| (by_size[s].len() - ranks[s] - ranks[s + 1]) as u64).collect()
}

fn as_vec(b: &BettiVector, len: usize) -> Vec<u64> {
    (0..len).map(|s| b.get(s as i64 - 1)).collect()
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn sparse_graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0u8..10, n * (n - 1) / 2).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] < 3 {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn forest_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec((any::<bool>(), any::<prop::sample::Index>()), n).prop_map(move |choice| {
            let mut edges = Vec::new();
            for v in 1..n {
                let (attach, parent) = choice[v];
                if attach {
                    edges.push((parent.index(v), v));
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

fn subset_of(n: usize, bits: &[bool]) -> VertexSet {
    VertexSet::from_ids(n, (0..n).filter(|&v| bits[v % bits.len()])).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn boundary_homology_matches_oracle(g in graph_strategy(10)) {
        let b = betti_numbers(&independence_complex(&g, CAP).unwrap()).unwrap();
        let o = oracle_betti(&g);
        prop_assert_eq!(as_vec(&b, o.len()), o.clone());
        prop_assert_eq!(b.total(), o.iter().sum::<u64>());
    }

    #[test]
    fn reduced_homology_matches_oracle(g in sparse_graph_strategy(12)) {
        let mut memo = HomologyMemo::new();
        let b = residual_betti(&g, &mut memo, CAP).unwrap();
        let o = oracle_betti(&g);
        prop_assert_eq!(as_vec(&b, o.len()), o.clone());
        prop_assert_eq!(b.total(), o.iter().sum::<u64>());
    }

    #[test]
    fn memo_is_sound_across_graphs(gs in prop::collection::vec(sparse_graph_strategy(9), 1..6)) {
        let mut memo = HomologyMemo::new();
        for g in &gs {
            let b = residual_betti(g, &mut memo, CAP).unwrap();
            let o = oracle_betti(g);
            prop_assert_eq!(as_vec(&b, o.len()), o);
        }
    }

    #[test]
    fn pairing_shortcut_matches_chain_evaluation(g in sparse_graph_strategy(8)) {
        let pairs = validated_pairs(&g, 3);
        let k = independence_complex(&g, CAP).unwrap();
        for m in pairs.iter().take(6) {
            let chain = cross_cycle_chain(&g, &m.edges).unwrap();
            prop_assert!(chain.boundary().is_zero());
            for s in pairs.iter().take(6) {
                let co = transversal_cocycle(&g, &s.transversal).unwrap();
                prop_assert!(is_cocycle(&co, &k));
                let direct = evaluate(&co, &chain).to_integer().to_i64().unwrap();
                prop_assert_eq!(direct, pairing_value(&s.transversal, &m.edges).value as i64);
            }
        }
    }

    #[test]
    fn filtration_inequality(g in graph_strategy(10), bits in prop::collection::vec(any::<bool>(), 10)) {
        let u = subset_of(g.n(), &bits);
        let total: u64 = oracle_betti(&g).iter().sum();
        let report = upper_bound(&g, &u, CAP).unwrap();
        prop_assert!(report.raw_value() >= total.into());
    }

    #[test]
    fn complex_form_of_the_bound(g in graph_strategy(9), bits in prop::collection::vec(any::<bool>(), 9)) {
        let k = independence_complex(&g, CAP).unwrap();
        let in_u: Vec<bool> = (0..g.n()).map(|v| bits[v]).collect();
        let total: u64 = oracle_betti(&g).iter().sum();
        prop_assert!(complex_upper_bound(&k, &in_u).unwrap() >= total.into());
    }

    #[test]
    fn join_is_multiplicative(a in graph_strategy(7), b in graph_strategy(7)) {
        let u = a.disjoint_union(&b);
        let direct = betti_numbers(&independence_complex(&u, CAP).unwrap()).unwrap();
        let ba = betti_numbers(&independence_complex(&a, CAP).unwrap()).unwrap();
        let bb = betti_numbers(&independence_complex(&b, CAP).unwrap()).unwrap();
        prop_assert_eq!(direct, join_betti(&ba, &bb));
    }

    #[test]
    fn forests_have_at_most_one_sphere(f in forest_strategy(14)) {
        prop_assert!(f.is_forest());
        let total: u64 = oracle_betti(&f).iter().sum();
        prop_assert!(total <= 1);
        let report = forest_bound(&f, &VertexSet::new(f.n())).unwrap();
        prop_assert_eq!(report.raw_value(), 1u32.into());
    }

    #[test]
    fn cofibre_peels_one_sphere(g in sparse_graph_strategy(9)) {
        for m in validated_pairs(&g, 3).iter().take(4) {
            let c = cofibre_over_matching(&g, m).unwrap();
            prop_assert_eq!(c.n(), g.n() + 1);
            let before: u64 = oracle_betti(&g).iter().sum();
            let after: u64 = oracle_betti(&c).iter().sum();
            prop_assert_eq!(before, 1 + after);
        }
    }

    #[test]
    fn absolute_bound(g in sparse_graph_strategy(12)) {
        let total: u64 = oracle_betti(&g).iter().sum();
        // total ≤ 2^{2v/5}  ⇔  total^5 ≤ 2^{2v}
        prop_assert!((total as u128).pow(5) <= 1u128 << (2 * g.n()));
    }

    #[test]
    fn canonical_code_ignores_labels(g in graph_strategy(9), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut s = seed;
        for i in (1..perm.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.relabel(&perm).unwrap();
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
    }

    #[test]
    fn canonical_code_separates(a in graph_strategy(6), b in graph_strategy(6)) {
        prop_assume!(a.n() == b.n());
        prop_assert_eq!(canonical_code(&a) == canonical_code(&b), isomorphic(&a, &b));
    }

    #[test]
    fn independent_set_count(g in graph_strategy(12)) {
        prop_assert_eq!(g.count_independent_sets(), (independent_masks(&g).len() as u64).into());
    }

    #[test]
    fn rates_match_float_oracle(base in 2u64..20, exp in 1u64..30, v in 1u64..120) {
        let exact = per_vertex_rate(&[Factor::new(base, exp)], v);
        let approx = (base as f64).powf(exp as f64 / v as f64);
        let parsed: f64 = exact.parse().unwrap();
        prop_assert!((parsed - approx).abs() <= 0.5e-6 + 1e-9, "{} vs {}", exact, approx);
    }

    #[test]
    fn quotient_vertex_counts(n in 2usize..5, half_m in 1usize..3) {
        let m = 2 * half_m;
        let h = kagome(n, m).unwrap();
        prop_assert_eq!(h.graph.n(), 3 * n * m);
        prop_assert!((0..h.graph.n()).all(|v| h.graph.degree(v) == 4));
        for d in [3usize, 4] {
            let l = delta(d as i64, n, m).unwrap();
            prop_assert_eq!(l.graph.n(), (d * d - 1) * n * m);
        }
    }
}

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(k: usize, perm: &mut Vec<usize>, a: &Graph, b: &Graph) -> bool {
        if k == perm.len() {
            return a.edges().iter().all(|&(u, v)| b.has_edge(perm[u], perm[v]));
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            if (0..k).all(|j| a.has_edge(j, k) == b.has_edge(perm[j], perm[k])) && rec(k + 1, perm, a, b) {
                return true;
            }
            perm.swap(k, i);
        }
        false
    }
    rec(0, &mut perm, a, b)
}

#[test]
fn c6_oracle() {
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
    assert_eq!(oracle_betti(&g), vec![0, 0, 2, 0]);
}
