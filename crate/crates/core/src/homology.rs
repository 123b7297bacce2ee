//! Reduced rational homology of simplicial complexes, via ranks of the
//! augmented boundary maps.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::complex::{independence_complex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{dense_rank_of_columns, sparse_rank, sparse_rank_mod_p, SparseColumn};

/// Reduced Betti numbers `β̃_i`, keyed by degree `i ≥ -1`. Zero entries are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BettiVector(BTreeMap<i64, u64>);

impl BettiVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// `β̃` of the empty complex: a single class in degree `-1`.
    pub fn empty_complex() -> Self {
        Self::single(-1)
    }

    /// A sphere `S^d`.
    pub fn single(degree: i64) -> Self {
        let mut b = Self::new();
        b.set(degree, 1);
        b
    }

    pub fn get(&self, degree: i64) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn set(&mut self, degree: i64, value: u64) {
        if value == 0 {
            self.0.remove(&degree);
        } else {
            self.0.insert(degree, value);
        }
    }

    fn add(&mut self, degree: i64, value: u64) {
        let v = self.get(degree) + value;
        self.set(degree, v);
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.0.iter().map(|(&d, &v)| (d, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `-χ̃` computed from the Betti numbers.
    pub fn witten_index(&self) -> i64 {
        -self.iter().map(|(d, v)| if d.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) }).sum::<i64>()
    }
}

/// Limits for homology computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyLimits {
    /// Largest number of columns any single boundary matrix may have.
    pub max_columns: usize,
    /// Boundary matrices with fewer columns than this are ranked densely.
    pub dense_below: usize,
}

impl Default for HomologyLimits {
    fn default() -> Self {
        Self { max_columns: 20_000_000, dense_below: 512 }
    }
}

/// Column `j` of the boundary map from faces with `size` vertices to faces
/// with `size - 1` vertices.
fn boundary_columns(k: &SimplicialComplex, size: usize) -> Vec<SparseColumn> {
    let layer = &k.layers()[size];
    let lower = &k.layers()[size - 1];
    let mut face = Vec::with_capacity(size);
    layer
        .iter()
        .map(|f| {
            let mut col: SparseColumn = (0..size)
                .map(|p| {
                    face.clear();
                    face.extend(f.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, &v)| v));
                    let row = lower.index_of(&face).expect("complex is downward closed");
                    (row as u32, if p % 2 == 0 { 1 } else { -1 })
                })
                .collect();
            col.sort_unstable_by_key(|e| e.0);
            col
        })
        .collect()
}

/// Ranks of the augmented boundary maps `∂` out of each layer; entry `k` is
/// the rank of the map from faces with `k` vertices (entry 0 is always 0).
fn boundary_ranks(k: &SimplicialComplex, limits: &HomologyLimits, modulus: Option<u64>) -> Result<Vec<usize>> {
    let layers = k.layers();
    let top = layers.len() - 1;
    let mut ranks = alloc::vec![0usize; layers.len()];
    // clearing: pivot rows found at size s+1 mark columns of size s that
    // reduce to zero
    let mut cleared: Vec<bool> = Vec::new();
    for size in (1..=top).rev() {
        let n_cols = layers[size].len();
        if n_cols > limits.max_columns {
            return Err(Error::MatrixTooLarge { columns: n_cols, limit: limits.max_columns });
        }
        let cols = boundary_columns(k, size);
        let n_rows = layers[size - 1].len();
        let skip = core::mem::take(&mut cleared);
        let pivots = match modulus {
            Some(p) => {
                let r = sparse_rank_mod_p(n_rows, &cols, &skip, p);
                ranks[size] = r.rank;
                r.pivot_rows
            }
            None if n_cols < limits.dense_below && n_rows < 4 * limits.dense_below => {
                ranks[size] = dense_rank_of_columns(n_rows, &cols);
                Vec::new()
            }
            None => {
                let r = sparse_rank(n_rows, &cols, &skip);
                ranks[size] = r.rank;
                r.pivot_rows
            }
        };
        cleared = alloc::vec![false; n_rows];
        for p in pivots {
            cleared[p as usize] = true;
        }
    }
    Ok(ranks)
}

fn betti_from_ranks(k: &SimplicialComplex, ranks: &[usize]) -> BettiVector {
    let mut b = BettiVector::new();
    for (size, layer) in k.layers().iter().enumerate() {
        let out = ranks[size];
        let inc = ranks.get(size + 1).copied().unwrap_or(0);
        let beta = layer.len() - out - inc;
        b.set(size as i64 - 1, beta as u64);
    }
    b
}

/// Exact reduced Betti numbers over `Q`.
pub fn betti_numbers(k: &SimplicialComplex) -> Result<BettiVector> {
    betti_numbers_with(k, &HomologyLimits::default())
}

pub fn betti_numbers_with(k: &SimplicialComplex, limits: &HomologyLimits) -> Result<BettiVector> {
    let ranks = boundary_ranks(k, limits, None)?;
    Ok(betti_from_ranks(k, &ranks))
}

/// Reduced Betti numbers over `F_p`; agrees with [`betti_numbers`] unless the
/// integral homology has `p`-torsion.
pub fn betti_numbers_mod_p(k: &SimplicialComplex, p: u64) -> Result<BettiVector> {
    let ranks = boundary_ranks(k, &HomologyLimits::default(), Some(p))?;
    Ok(betti_from_ranks(k, &ranks))
}

/// Ranks of every augmented boundary map, exactly over `Q` and modulo `p`.
pub fn boundary_rank_profile(k: &SimplicialComplex, p: Option<u64>) -> Result<Vec<usize>> {
    boundary_ranks(k, &HomologyLimits::default(), p)
}

/// `β̃(K) = Σ_i β̃_i(K)`.
pub fn total_betti(k: &SimplicialComplex) -> Result<u64> {
    Ok(betti_numbers(k)?.total())
}

/// `β̃(I(G))` straight from a graph.
pub fn graph_betti(g: &Graph, cap: usize) -> Result<BettiVector> {
    betti_numbers(&independence_complex(g, cap)?)
}

/// Witten index `-χ̃(I(G))`, from the face counts.
pub fn witten_index(g: &Graph, cap: usize) -> Result<i64> {
    Ok(witten_index_of(&independence_complex(g, cap)?))
}

pub fn witten_index_of(k: &SimplicialComplex) -> i64 {
    // faces with s vertices sit in degree s - 1
    -k.f_vector()
        .iter()
        .enumerate()
        .map(|(s, &f)| if s % 2 == 1 { f as i64 } else { -(f as i64) })
        .sum::<i64>()
}

/// Betti numbers of a join: `H̃_k(X * Y) = ⊕_{i+j=k-1} H̃_i(X) ⊗ H̃_j(Y)`.
pub fn join_betti(a: &BettiVector, b: &BettiVector) -> BettiVector {
    let mut out = BettiVector::new();
    for (i, x) in a.iter() {
        for (j, y) in b.iter() {
            out.add(i + j + 1, x * y);
        }
    }
    out
}

/// A rational chain: a formal sum of oriented simplices of one degree. A
/// simplex is keyed by its ascending vertex list, which is its positive
/// orientation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalChain {
    pub degree: i64,
    pub terms: BTreeMap<Vec<u32>, BigRational>,
}

/// A rational cochain; same representation as [`RationalChain`].
pub type RationalCochain = RationalChain;

impl RationalChain {
    pub fn new(degree: i64) -> Self {
        Self { degree, terms: BTreeMap::new() }
    }

    /// Adds `coeff` times the simplex spanned by `vertices`, oriented by the
    /// given order (reordering to ascending order contributes the sign of the
    /// sorting permutation).
    pub fn add_oriented(&mut self, vertices: &[u32], coeff: BigRational) {
        debug_assert_eq!(vertices.len() as i64, self.degree + 1);
        let mut v = vertices.to_vec();
        let sign = sort_sign(&mut v);
        let c = if sign < 0 { -coeff } else { coeff };
        let entry = self.terms.entry(v).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            let key: Vec<u32> = {
                let mut k = vertices.to_vec();
                k.sort_unstable();
                k
            };
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The simplicial boundary, with the empty face as the boundary of a
    /// vertex (augmented convention).
    pub fn boundary(&self) -> RationalChain {
        let mut out = RationalChain::new(self.degree - 1);
        for (simplex, c) in &self.terms {
            for p in 0..simplex.len() {
                let face: Vec<u32> =
                    simplex.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, &v)| v).collect();
                let coeff = if p % 2 == 0 { c.clone() } else { -c.clone() };
                out.add_oriented(&face, coeff);
            }
        }
        out
    }

    /// The coboundary of a cochain on `k`: `(δc)(τ) = Σ_p (-1)^p c(τ \ τ_p)`.
    pub fn coboundary(&self, k: &SimplicialComplex) -> RationalChain {
        let mut out = RationalChain::new(self.degree + 1);
        for (simplex, c) in &self.terms {
            for v in 0..k.n_vertices() as u32 {
                if simplex.binary_search(&v).is_ok() {
                    continue;
                }
                let mut tau = simplex.clone();
                let pos = tau.partition_point(|&x| x < v);
                tau.insert(pos, v);
                if !k.contains(&tau) {
                    continue;
                }
                let coeff = if pos % 2 == 0 { c.clone() } else { -c.clone() };
                out.add_oriented(&tau, coeff);
            }
        }
        out
    }

    /// Every simplex in the support is a face of `k` of the right size.
    pub fn lives_in(&self, k: &SimplicialComplex) -> bool {
        self.terms.keys().all(|s| s.len() as i64 == self.degree + 1 && k.contains(s))
    }
}

/// Evaluates a cochain on a chain of the same degree; zero if the degrees
/// differ.
pub fn evaluate(cochain: &RationalCochain, chain: &RationalChain) -> BigRational {
    if cochain.degree != chain.degree {
        return BigRational::zero();
    }
    let mut acc = BigRational::zero();
    for (s, c) in &cochain.terms {
        if let Some(z) = chain.terms.get(s) {
            acc += c * z;
        }
    }
    acc
}

/// Sorts `v` ascending and returns the sign of the permutation applied.
pub(crate) fn sort_sign(v: &mut [u32]) -> i32 {
    let mut sign = 1;
    // insertion sort counts transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

pub(crate) fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn unit() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_FACE_CAP;
    use alloc::vec;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn matching(k: usize) -> Graph {
        let edges: Vec<_> = (0..k).map(|i| (2 * i, 2 * i + 1)).collect();
        Graph::from_edges(2 * k, &edges).unwrap()
    }

    fn betti(g: &Graph) -> BettiVector {
        graph_betti(g, DEFAULT_FACE_CAP).unwrap()
    }

    #[test]
    fn c6_is_a_wedge_of_two_circles() {
        let b = betti(&cycle(6));
        assert_eq!(b.get(1), 2);
        assert_eq!(b.total(), 2);
        assert_eq!(b.iter().count(), 1);
    }

    #[test]
    fn matchings_are_spheres() {
        for k in 1..=5 {
            assert_eq!(betti(&matching(k)), BettiVector::single(k as i64 - 1), "k = {k}");
        }
    }

    #[test]
    fn empty_complex_has_class_in_degree_minus_one() {
        let b = betti(&Graph::new(0));
        assert_eq!(b, BettiVector::empty_complex());
        assert_eq!(b.total(), 1);
    }

    #[test]
    fn isolated_vertex_makes_a_cone() {
        let g = cycle(6).disjoint_union(&Graph::new(1));
        assert_eq!(betti(&g).total(), 0);
        assert_eq!(betti(&Graph::new(1)).total(), 0);
    }

    #[test]
    fn witten_indices() {
        let e = matching(1);
        assert_eq!(witten_index(&e, 100).unwrap(), -1);
        assert_eq!(witten_index(&cycle(6), 100).unwrap(), 2);
        assert_eq!(witten_index(&Graph::new(1), 100).unwrap(), 0);
        assert_eq!(betti(&cycle(6)).witten_index(), 2);
    }

    #[test]
    fn joins() {
        let s0 = BettiVector::single(0);
        assert_eq!(join_betti(&s0, &s0), BettiVector::single(1));
        let c6 = betti(&cycle(6));
        assert_eq!(join_betti(&c6, &BettiVector::empty_complex()), c6);
        let mut four = BettiVector::new();
        four.set(3, 4);
        assert_eq!(join_betti(&c6, &c6), four);
        assert_eq!(betti(&cycle(6).disjoint_union(&cycle(6))), four);
    }

    #[test]
    fn cycles_match_known_homotopy_types() {
        // I(C_n) is S^{k-1} v S^{k-1} for n = 3k, S^{k-1} for n = 3k±1
        for n in 3..=13usize {
            let k = (n / 3) as i64;
            let b = betti(&cycle(n));
            match n % 3 {
                0 => {
                    let mut e = BettiVector::new();
                    e.set(k - 1, 2);
                    assert_eq!(b, e, "n = {n}");
                }
                1 => assert_eq!(b, BettiVector::single(k - 1), "n = {n}"),
                _ => assert_eq!(b, BettiVector::single(k), "n = {n}"),
            }
        }
    }

    #[test]
    fn dense_and_sparse_paths_agree() {
        let k = independence_complex(&cycle(11), DEFAULT_FACE_CAP).unwrap();
        let sparse = betti_numbers_with(&k, &HomologyLimits { max_columns: usize::MAX, dense_below: 0 }).unwrap();
        let dense = betti_numbers_with(&k, &HomologyLimits { max_columns: usize::MAX, dense_below: 10_000 }).unwrap();
        assert_eq!(sparse, dense);
        assert_eq!(betti_numbers_mod_p(&k, 1_000_000_007).unwrap(), sparse);
    }

    #[test]
    fn column_limit_is_enforced() {
        let k = independence_complex(&cycle(9), DEFAULT_FACE_CAP).unwrap();
        let err = betti_numbers_with(&k, &HomologyLimits { max_columns: 5, dense_below: 0 }).unwrap_err();
        assert!(matches!(err, Error::MatrixTooLarge { limit: 5, .. }));
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let mut z = RationalChain::new(2);
        z.add_oriented(&[0, 2, 4], unit());
        z.add_oriented(&[1, 3, 5], rational(3));
        assert!(z.boundary().boundary().is_zero());
        assert_eq!(z.boundary().boundary().degree, 0);
    }

    #[test]
    fn orientation_sign() {
        let mut c = RationalChain::new(1);
        c.add_oriented(&[4, 1], unit());
        assert_eq!(c.terms.get(&vec![1, 4]), Some(&rational(-1)));
        c.add_oriented(&[1, 4], unit());
        assert!(c.is_zero());
    }
}
