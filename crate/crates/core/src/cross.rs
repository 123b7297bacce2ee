//! Induced matchings with dominating transversals, their cross-cycles and
//! transversal cocycles, and the pairing matrices that certify lower bounds
//! on Betti numbers.
//!
//! For an induced matching `M = {v_1w_1, …, v_kw_k}` the cross-cycle is
//! `α_M = ([v_1] - [w_1]) ∧ … ∧ ([v_k] - [w_k])`, a `(k-1)`-cycle of `I(G)`.
//! A transversal `σ` gives the cochain `σ^∨` that is `+1` on `σ` in its
//! ascending orientation. When `σ` is dominating, `σ^∨` is a cocycle and
//! `⟨σ^∨, α_M⟩` is `±1` if `σ` picks one endpoint of every edge of `M` and
//! `0` otherwise.

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use num_rational::BigRational;

use crate::bitset::VertexSet;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homology::{rational, sort_sign, unit, RationalChain, RationalCochain};
use crate::linalg;

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct MatchingWithTransversal {
    /// Edges `(v_i, w_i)`; their order and orientation fix the sign of `α_M`.
    pub edges: Vec<(usize, usize)>,
    pub transversal: Vec<usize>,
}

impl MatchingWithTransversal {
    pub fn new(edges: Vec<(usize, usize)>, transversal: Vec<usize>) -> Self {
        let mut transversal = transversal;
        transversal.sort_unstable();
        transversal.dedup();
        Self { edges, transversal }
    }

    /// Number of edges, `k`; the classes live in degree `k - 1`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn matched_vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort_unstable();
        v
    }

    pub fn transversal_set(&self, n: usize) -> Result<VertexSet> {
        VertexSet::from_ids(n, self.transversal.iter().copied())
    }
}

/// Outcome of [`validate_pair`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairValidation {
    /// The edges are disjoint edges of `G` with no other edges among their ends.
    pub induced: bool,
    /// The transversal has exactly one endpoint of each edge and nothing else.
    pub hits_each_edge: bool,
    /// The transversal is a dominating (equivalently maximal independent) set.
    pub dominating: bool,
}

impl PairValidation {
    pub fn is_valid(&self) -> bool {
        self.induced && self.hits_each_edge && self.dominating
    }
}

fn check_edges(g: &Graph, edges: &[(usize, usize)]) -> Result<()> {
    for &(u, v) in edges {
        for x in [u, v] {
            if x >= g.n() {
                return Err(Error::InvalidVertex { vertex: x, n: g.n() });
            }
        }
        if !g.has_edge(u, v) {
            return Err(Error::InvalidInput(format!("({u}, {v}) is not an edge")));
        }
    }
    Ok(())
}

/// Whether `edges` are pairwise disjoint and induce exactly themselves.
pub fn is_induced_matching(g: &Graph, edges: &[(usize, usize)]) -> Result<bool> {
    check_edges(g, edges)?;
    let mut ends: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    ends.sort_unstable();
    if ends.windows(2).any(|w| w[0] == w[1]) {
        return Ok(false);
    }
    let set = VertexSet::from_ids(g.n(), ends.iter().copied())?;
    let induced = g.induced_subgraph(&set)?.graph;
    Ok(induced.edge_count() == edges.len())
}

pub fn validate_pair(g: &Graph, pair: &MatchingWithTransversal) -> PairValidation {
    let induced = is_induced_matching(g, &pair.edges).unwrap_or(false);
    let in_range = pair.transversal.iter().all(|&v| v < g.n());
    let hits_each_edge = pair.transversal.len() == pair.edges.len()
        && pair
            .edges
            .iter()
            .all(|&(v, w)| pair.transversal.contains(&v) != pair.transversal.contains(&w));
    let dominating = in_range && {
        let s = VertexSet::from_ids(g.n(), pair.transversal.iter().copied()).expect("range checked");
        g.is_independent(&s).unwrap_or(false) && g.is_dominating(&s).unwrap_or(false)
    };
    PairValidation { induced, hits_each_edge, dominating }
}

/// The cross-cycle `α_M` expanded into its `2^k` signed simplices.
pub fn cross_cycle_chain(g: &Graph, edges: &[(usize, usize)]) -> Result<RationalChain> {
    if !is_induced_matching(g, edges)? {
        return Err(Error::InvalidInput(String::from("cross-cycles need an induced matching")));
    }
    let k = edges.len();
    let mut chain = RationalChain::new(k as i64 - 1);
    let mut simplex = vec![0u32; k];
    for mask in 0u64..(1u64 << k) {
        for (i, &(v, w)) in edges.iter().enumerate() {
            simplex[i] = if mask >> i & 1 == 1 { w as u32 } else { v as u32 };
        }
        let coeff = if mask.count_ones() % 2 == 1 { rational(-1) } else { unit() };
        chain.add_oriented(&simplex, coeff);
    }
    Ok(chain)
}

/// `σ^∨`, the indicator cochain of the face `σ`.
pub fn transversal_cocycle(g: &Graph, sigma: &[usize]) -> Result<RationalCochain> {
    let set = VertexSet::from_ids(g.n(), sigma.iter().copied())?;
    if !g.is_independent(&set)? {
        return Err(Error::InvalidInput(String::from("σ is not an independent set")));
    }
    let mut c = RationalChain::new(set.len() as i64 - 1);
    let face: Vec<u32> = set.iter().map(|v| v as u32).collect();
    c.add_oriented(&face, unit());
    Ok(c)
}

/// Whether `σ^∨` is a cocycle of `I(G)`, checked at the cochain level.
pub fn is_cocycle(cochain: &RationalCochain, k: &SimplicialComplex) -> bool {
    cochain.coboundary(k).is_zero()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pairing {
    pub value: i8,
    /// `|σ| ≠ |M|`: the pairing of different degrees, reported as 0.
    pub degree_mismatch: bool,
}

/// `⟨σ^∨, α_M⟩` by the combinatorial shortcut.
pub fn pairing_value(sigma: &[usize], edges: &[(usize, usize)]) -> Pairing {
    let mut s: Vec<usize> = sigma.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.len() != edges.len() {
        return Pairing { value: 0, degree_mismatch: true };
    }
    let mut picked: Vec<u32> = Vec::with_capacity(edges.len());
    let mut sign = 1i8;
    for &(v, w) in edges {
        match (s.binary_search(&v).is_ok(), s.binary_search(&w).is_ok()) {
            (true, false) => picked.push(v as u32),
            (false, true) => {
                picked.push(w as u32);
                sign = -sign;
            }
            _ => return Pairing { value: 0, degree_mismatch: false },
        }
    }
    let mut sorted = picked.clone();
    if sort_sign(&mut sorted) < 0 {
        sign = -sign;
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) || sorted.iter().map(|&v| v as usize).ne(s.iter().copied()) {
        return Pairing { value: 0, degree_mismatch: false };
    }
    Pairing { value: sign, degree_mismatch: false }
}

/// Rows are matchings `M(s)`, columns transversals `σ(t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PairingMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<i8>>,
    /// Number of entries forced to 0 by a degree mismatch.
    pub degree_mismatches: usize,
}

impl PairingMatrix {
    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.entries[row][col]
    }

    /// `±1` on the diagonal and `0` strictly above it.
    pub fn is_lower_unitriangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| {
            row.iter().enumerate().all(|(j, &x)| match j.cmp(&i) {
                core::cmp::Ordering::Equal => x.abs() == 1,
                core::cmp::Ordering::Greater => x == 0,
                core::cmp::Ordering::Less => true,
            })
        })
    }
}

pub fn pairing_matrix(family: &[MatchingWithTransversal]) -> PairingMatrix {
    let labels: Vec<String> = (0..family.len()).map(|i| format!("{i}")).collect();
    pairing_matrix_labeled(family, &labels)
}

pub fn pairing_matrix_labeled(family: &[MatchingWithTransversal], labels: &[String]) -> PairingMatrix {
    let mut mismatches = 0;
    let entries = family
        .iter()
        .map(|row| {
            family
                .iter()
                .map(|col| {
                    let p = pairing_value(&col.transversal, &row.edges);
                    mismatches += p.degree_mismatch as usize;
                    p.value
                })
                .collect()
        })
        .collect();
    PairingMatrix {
        row_labels: labels.to_vec(),
        col_labels: labels.to_vec(),
        entries,
        degree_mismatches: mismatches,
    }
}

/// Exact rank over `Q`; a lower bound for `β̃_{k-1}(I(G))` when the family is
/// validated and all matchings have size `k`.
pub fn rank_lower_bound(p: &PairingMatrix) -> usize {
    let rows: Vec<Vec<i64>> = p.entries.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
    linalg::dense_rank(&rows)
}

/// Coordinates `(a_j)` of `α_target` in the basis `α_{M_j}`, found from the
/// pairings with the basis transversals.
pub fn express_in_basis(target: &[(usize, usize)], basis: &[MatchingWithTransversal]) -> Result<Vec<BigRational>> {
    let a: Vec<Vec<BigRational>> = basis
        .iter()
        .map(|row| {
            basis
                .iter()
                .map(|col| rational(pairing_value(&row.transversal, &col.edges).value as i64))
                .collect()
        })
        .collect();
    let b: Vec<BigRational> = basis
        .iter()
        .map(|row| rational(pairing_value(&row.transversal, target).value as i64))
        .collect();
    linalg::solve_rational(&a, &b)
}

/// All induced matchings with at most `max_size` edges (including the empty
/// one), each listed with ascending edges `(v, w)`, `v < w`.
pub fn induced_matchings(g: &Graph, max_size: usize) -> Vec<Vec<(usize, usize)>> {
    let edges = g.edges();
    let mut out = vec![Vec::new()];
    let mut stack: Vec<(usize, Vec<(usize, usize)>, VertexSet)> = vec![(0, Vec::new(), VertexSet::new(g.n()))];
    while let Some((start, current, blocked)) = stack.pop() {
        if current.len() == max_size {
            continue;
        }
        for (i, &(u, v)) in edges.iter().enumerate().skip(start) {
            if blocked.contains(u) || blocked.contains(v) {
                continue;
            }
            let mut next = current.clone();
            next.push((u, v));
            let mut b = blocked.clone();
            for x in [u, v] {
                b.insert(x);
                b.union_with(g.neighbors(x));
            }
            out.push(next.clone());
            stack.push((i + 1, next, b));
        }
    }
    out.sort();
    out
}

/// The transversals of `edges` that are dominating in `g`, in bitmask order
/// of the choice word (bit `i` set means the second endpoint of edge `i`).
pub fn dominating_transversals(g: &Graph, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let k = edges.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let sigma: Vec<usize> =
            edges.iter().enumerate().map(|(i, &(v, w))| if mask >> i & 1 == 1 { w } else { v }).collect();
        let pair = MatchingWithTransversal::new(edges.to_vec(), sigma);
        if validate_pair(g, &pair).is_valid() {
            out.push(pair.transversal);
        }
    }
    out
}

/// Every validated pair with at most `max_size` edges.
pub fn validated_pairs(g: &Graph, max_size: usize) -> Vec<MatchingWithTransversal> {
    let mut out = Vec::new();
    for m in induced_matchings(g, max_size) {
        if m.is_empty() {
            continue;
        }
        for t in dominating_transversals(g, &m) {
            out.push(MatchingWithTransversal::new(m.clone(), t));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::independence_complex;
    use crate::homology::evaluate;
    use crate::lattice::gen_cycle;

    // C6 with labels 1..6 shifted to 0..5
    fn c6_pairs() -> [MatchingWithTransversal; 3] {
        [
            MatchingWithTransversal::new(vec![(0, 1), (3, 4)], vec![0, 3]),
            MatchingWithTransversal::new(vec![(1, 2), (4, 5)], vec![1, 4]),
            MatchingWithTransversal::new(vec![(2, 3), (5, 0)], vec![2, 5]),
        ]
    }

    #[test]
    fn induced_matching_checks() {
        let c6 = gen_cycle(6).unwrap();
        assert!(is_induced_matching(&c6, &[(0, 1), (3, 4)]).unwrap());
        assert!(!is_induced_matching(&c6, &[(0, 1), (2, 3)]).unwrap());
        assert!(is_induced_matching(&c6, &[(2, 3)]).unwrap());
        assert!(is_induced_matching(&c6, &[(0, 2)]).is_err());
    }

    #[test]
    fn validation_reports() {
        let c6 = gen_cycle(6).unwrap();
        let [m1, ..] = c6_pairs();
        assert!(validate_pair(&c6, &m1).is_valid());
        let r = validate_pair(&c6, &MatchingWithTransversal::new(m1.edges.clone(), vec![0, 4]));
        assert!(r.hits_each_edge && !r.dominating);
        let r = validate_pair(&c6, &MatchingWithTransversal::new(m1.edges.clone(), vec![0, 1]));
        assert!(!r.hits_each_edge);
    }

    #[test]
    fn chain_expansion() {
        let c6 = gen_cycle(6).unwrap();
        let chain = cross_cycle_chain(&c6, &[(0, 1), (3, 4)]).unwrap();
        let expect: [(&[u32], i64); 4] = [(&[0, 3], 1), (&[0, 4], -1), (&[1, 3], -1), (&[1, 4], 1)];
        assert_eq!(chain.terms.len(), 4);
        for (s, c) in expect {
            assert_eq!(chain.terms[s], rational(c));
        }
        assert!(chain.boundary().is_zero());
        let single = cross_cycle_chain(&c6, &[(2, 3)]).unwrap();
        assert_eq!(single.terms[&vec![2u32]], unit());
        assert_eq!(single.terms[&vec![3u32]], rational(-1));
    }

    #[test]
    fn cocycles() {
        let c6 = gen_cycle(6).unwrap();
        let k = independence_complex(&c6, 1000).unwrap();
        assert!(is_cocycle(&transversal_cocycle(&c6, &[0, 3]).unwrap(), &k));
        assert!(!is_cocycle(&transversal_cocycle(&c6, &[0, 2]).unwrap(), &k));
        assert!(transversal_cocycle(&c6, &[0, 1]).is_err());
    }

    #[test]
    fn c6_pairings() {
        let c6 = gen_cycle(6).unwrap();
        let [m1, m2, _] = c6_pairs();
        let pv = |s: &MatchingWithTransversal, m: &MatchingWithTransversal| pairing_value(&s.transversal, &m.edges).value;
        assert_eq!(pv(&m1, &m1), 1);
        assert_eq!(pv(&m2, &m2), 1);
        assert_eq!(pv(&m1, &m2), 0);
        assert_eq!(pv(&m2, &m1), 1);
        for s in c6_pairs() {
            for m in c6_pairs() {
                let chain = cross_cycle_chain(&c6, &m.edges).unwrap();
                let co = transversal_cocycle(&c6, &s.transversal).unwrap();
                assert_eq!(evaluate(&co, &chain), rational(pv(&s, &m) as i64));
            }
        }
    }

    #[test]
    fn c6_matrix_and_basis() {
        let [m1, m2, m3] = c6_pairs();
        let p = pairing_matrix(&[m1.clone(), m2.clone()]);
        assert_eq!(p.entries, vec![vec![1, 1], vec![0, 1]]);
        assert_eq!(rank_lower_bound(&p), 2);
        let coeffs = express_in_basis(&m3.edges, &[m1.clone(), m2.clone()]).unwrap();
        assert_eq!(coeffs, vec![rational(-1), rational(1)]);
        let unit_vec = express_in_basis(&m1.edges, &[m1.clone(), m2.clone()]).unwrap();
        assert_eq!(unit_vec, vec![rational(1), rational(0)]);
    }

    #[test]
    fn mismatch_is_flagged() {
        let p = pairing_value(&[0], &[(0, 1), (3, 4)]);
        assert_eq!(p, Pairing { value: 0, degree_mismatch: true });
    }

    #[test]
    fn singular_basis_errors() {
        let [m1, ..] = c6_pairs();
        assert_eq!(express_in_basis(&m1.edges, &[m1.clone(), m1.clone()]), Err(Error::Singular));
    }

    #[test]
    fn enumerated_pairs_of_c6() {
        let c6 = gen_cycle(6).unwrap();
        let pairs = validated_pairs(&c6, 3);
        // three 2-matchings, each with two dominating transversals
        assert_eq!(pairs.len(), 6);
        assert!(pairs.iter().all(|p| p.size() == 2));
    }
}
