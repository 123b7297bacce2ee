//! Peeling spheres off `I(G)` one cross-cycle at a time.
//!
//! For a validated `(M, σ)` the inclusion `I(M) → I(G)` splits, and its
//! cofibre is the independence complex of the cofibre graph: `G` plus one
//! vertex adjacent to everything outside `V(M)`. Iterating over a family
//! works as long as each later transversal dominates the vertices added
//! before it, which is the condition `σ_j ⊄ V(M_i)` for `i < j`.
//!
//! Only the Betti shadow is checked: `β̃(I(G_{j-1})) = 1 + β̃(I(G_j))`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::bounds::{residual_betti, HomologyMemo};
use crate::canon::canonical_code;
use crate::cross::{validate_pair, MatchingWithTransversal};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homology::BettiVector;

/// `G` plus a vertex `n` adjacent to exactly `V(G) \ h`.
pub fn cofibre_graph(g: &Graph, h: &VertexSet) -> Result<Graph> {
    let h = h.with_universe(g.n())?;
    let mut edges = g.edges();
    edges.extend((0..g.n()).filter(|&v| !h.contains(v)).map(|v| (v, g.n())));
    Graph::from_edges(g.n() + 1, &edges)
}

/// The cofibre graph over `V(M)`.
pub fn cofibre_over_matching(g: &Graph, m: &MatchingWithTransversal) -> Result<Graph> {
    cofibre_graph(g, &VertexSet::from_ids(g.n(), m.matched_vertices())?)
}

/// `Ok(())` if `σ_j \ V(M_i)` is nonempty for all `i < j`, else the first
/// violating `(i, j)` in lexicographic order.
pub fn check_star_condition(family: &[MatchingWithTransversal]) -> core::result::Result<(), (usize, usize)> {
    for i in 0..family.len() {
        let matched = family[i].matched_vertices();
        for (j, later) in family.iter().enumerate().skip(i + 1) {
            if later.transversal.iter().all(|v| matched.binary_search(v).is_ok()) {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// The first order (in lexicographic order of permutations) satisfying the
/// condition; only tried for families of at most `max_k` members.
pub fn find_star_order(family: &[MatchingWithTransversal], max_k: usize) -> Option<Vec<usize>> {
    let k = family.len();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        let ordered: Vec<MatchingWithTransversal> = perm.iter().map(|&i| family[i].clone()).collect();
        if check_star_condition(&ordered).is_ok() {
            return Some(perm);
        }
        if k > max_k || !next_permutation(&mut perm) {
            return None;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SplittingStep {
    /// Vertices of `G_j`.
    pub vertices: usize,
    /// Canonical digest of `G_j`, hex.
    pub graph_hash: String,
    /// Dimension of the sphere peeled to reach `G_j`; absent for `G_0`.
    pub sphere_dimension: Option<usize>,
    pub betti: Option<BettiVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SplittingTrace {
    /// The family in the order used.
    pub family: Vec<MatchingWithTransversal>,
    /// Positions in the input family, when it had to be reordered.
    pub reordered: Option<Vec<usize>>,
    pub steps: Vec<SplittingStep>,
    #[cfg_attr(feature = "serde", serde(skip))]
    pub graphs: Vec<Graph>,
}

impl SplittingTrace {
    pub fn spheres(&self) -> Vec<usize> {
        self.steps.iter().filter_map(|s| s.sphere_dimension).collect()
    }

    /// Whether every computed consecutive pair satisfies `b_{j-1} = 1 + b_j`.
    pub fn ledger_balances(&self) -> bool {
        self.steps.windows(2).all(|w| match (&w[0].betti, &w[1].betti) {
            (Some(a), Some(b)) => a.total() == 1 + b.total(),
            _ => true,
        })
    }

    pub fn final_graph(&self) -> &Graph {
        self.graphs.last().expect("a trace starts with G itself")
    }
}

/// Runs the iteration. The family is reordered if its order violates the
/// star condition (searching orders only for at most 6 members); every
/// step is validated in the current graph; Betti numbers are computed for
/// graphs of at most `betti_max_vertices` vertices.
pub fn splitting_trace(g: &Graph, family: &[MatchingWithTransversal], betti_max_vertices: usize, cap: usize) -> Result<SplittingTrace> {
    const MAX_REORDER: usize = 6;
    let (ordered, reordered) = match check_star_condition(family) {
        Ok(()) => (family.to_vec(), None),
        Err((i, j)) => match find_star_order(family, MAX_REORDER) {
            Some(p) => (p.iter().map(|&x| family[x].clone()).collect(), Some(p)),
            None => {
                return Err(Error::RejectedCertificate(format!(
                    "σ_{j} ⊆ V(M_{i}) and no reordering satisfies the splitting condition"
                )))
            }
        },
    };
    let mut memo = HomologyMemo::new();
    let mut betti_of = |h: &Graph| -> Result<Option<BettiVector>> {
        if h.n() <= betti_max_vertices {
            residual_betti(h, &mut memo, cap).map(Some)
        } else {
            Ok(None)
        }
    };
    let step = |h: &Graph, dim: Option<usize>, betti: Option<BettiVector>| SplittingStep {
        vertices: h.n(),
        graph_hash: format!("{:016x}", canonical_code(h).digest()),
        sphere_dimension: dim,
        betti,
    };
    let mut current = g.clone();
    let mut steps = alloc::vec![step(&current, None, betti_of(&current)?)];
    let mut graphs = alloc::vec![current.clone()];
    for (j, m) in ordered.iter().enumerate() {
        let v = validate_pair(&current, m);
        if !v.is_valid() {
            return Err(Error::RejectedCertificate(format!("step {}: pair does not validate: {v:?}", j + 1)));
        }
        current = cofibre_over_matching(&current, m)?;
        steps.push(step(&current, Some(m.size().saturating_sub(1)), betti_of(&current)?));
        graphs.push(current.clone());
    }
    Ok(SplittingTrace { family: ordered, reordered, steps, graphs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c6() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap()
    }

    fn m1() -> MatchingWithTransversal {
        MatchingWithTransversal::new(vec![(0, 1), (3, 4)], vec![0, 3])
    }

    fn m2() -> MatchingWithTransversal {
        MatchingWithTransversal::new(vec![(1, 2), (4, 5)], vec![1, 4])
    }

    #[test]
    fn star_condition_is_order_sensitive() {
        assert_eq!(check_star_condition(&[m2(), m1()]), Ok(()));
        assert_eq!(check_star_condition(&[m1(), m2()]), Err((0, 1)));
        assert_eq!(check_star_condition(&[m1()]), Ok(()));
        assert_eq!(find_star_order(&[m1(), m2()], 6), Some(vec![1, 0]));
    }

    #[test]
    fn cofibre_basics() {
        let g = c6();
        let all = g.vertex_set();
        let h = cofibre_graph(&g, &all).unwrap();
        assert_eq!(h.degree(6), 0);
        let none = VertexSet::new(6);
        assert_eq!(cofibre_graph(&g, &none).unwrap().degree(6), 6);
    }

    #[test]
    fn c6_trace() {
        let t = splitting_trace(&c6(), &[m2(), m1()], 20, 1 << 20).unwrap();
        assert_eq!(t.spheres(), vec![1, 1]);
        let totals: Vec<u64> = t.steps.iter().map(|s| s.betti.as_ref().unwrap().total()).collect();
        assert_eq!(totals, vec![2, 1, 0]);
        assert!(t.ledger_balances());
        assert!(t.reordered.is_none());

        let r = splitting_trace(&c6(), &[m1(), m2()], 20, 1 << 20).unwrap();
        assert_eq!(r.reordered, Some(vec![1, 0]));
    }

    #[test]
    fn permutations() {
        let mut p = vec![0, 1, 2];
        let mut n = 1;
        while next_permutation(&mut p) {
            n += 1;
        }
        assert_eq!(n, 6);
        assert_eq!(p, vec![2, 1, 0]);
    }
}
