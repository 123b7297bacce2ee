//! Upper bounds from separator sets, lower bounds from pairing certificates,
//! and the reports that carry them.
//!
//! For `U ⊆ V(G)` and every independent `σ ⊆ U`, the residual graph is
//! `G \ (U ∪ N[σ])`; the link of `σ` in the part of `I(G)` off `U` is its
//! independence complex. With `B` the largest total Betti number among the
//! residuals, `β̃(I(G)) ≤ B·|I(G[U])|`.
//!
//! Residual homology is computed per connected component and joined. Before
//! a component is handed to the homology code it is shrunk by the fold move
//! (`N(u) ⊆ N(v)` lets `v` be deleted without changing the homotopy type of
//! the independence complex); a component with an isolated vertex has a cone
//! for a complex and contributes nothing. Reduced components are memoized by
//! canonical code.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::bitset::VertexSet;
use crate::canon::{canonical_code, fnv1a, CanonicalCode};
use crate::complex::{independence_complex, SimplicialComplex};
use crate::cross::{pairing_matrix_labeled, rank_lower_bound, validate_pair, MatchingWithTransversal, PairingMatrix};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homology::{betti_numbers, join_betti, BettiVector};
use crate::lattice::{TileShape, Tiling};
use crate::rate::{format_factors, normalize, per_vertex_rate, product, Factor};

/// Shrinks `g` by repeated folds. Returns `None` when the independence
/// complex is a cone (an isolated vertex appears), else the reduced graph.
pub fn fold_reduce(g: &Graph) -> Option<Graph> {
    let mut alive = g.vertex_set();
    loop {
        let sub = g.induced_subgraph(&alive).expect("alive is a vertex set of g");
        let h = sub.graph;
        if (0..h.n()).any(|v| h.degree(v) == 0) {
            return None;
        }
        let mut victim = None;
        'search: for u in 0..h.n() {
            for v in 0..h.n() {
                if u != v && !h.has_edge(u, v) && h.neighbors(u).is_subset(h.neighbors(v)) {
                    victim = Some(sub.origin[v]);
                    break 'search;
                }
            }
        }
        match victim {
            Some(v) => alive.remove(v),
            None => return Some(h),
        }
    }
}

/// Betti numbers of connected reduced graphs, keyed by canonical code.
#[derive(Clone, Debug, Default)]
pub struct HomologyMemo {
    table: BTreeMap<CanonicalCode, BettiVector>,
    pub hits: u64,
    pub misses: u64,
}

impl HomologyMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }
}

/// `β̃(I(g))`, computed component by component with fold reduction,
/// simplicial-vertex splitting and memoization.
pub fn residual_betti(g: &Graph, memo: &mut HomologyMemo, cap: usize) -> Result<BettiVector> {
    let comps = g.components();
    if comps.len() == 1 {
        return connected_betti(g, memo, cap);
    }
    let mut acc = BettiVector::empty_complex();
    for comp in comps {
        let sub = g.induced_subgraph(&comp)?.graph;
        acc = join_betti(&acc, &connected_betti(&sub, memo, cap)?);
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

fn connected_betti(g: &Graph, memo: &mut HomologyMemo, cap: usize) -> Result<BettiVector> {
    let Some(h) = fold_reduce(g) else {
        return Ok(BettiVector::new());
    };
    if !h.is_connected() {
        return residual_betti(&h, memo, cap);
    }
    let code = canonical_code(&h);
    if let Some(b) = memo.table.get(&code) {
        memo.hits += 1;
        return Ok(b.clone());
    }
    memo.misses += 1;
    let b = match simplicial_vertex(&h) {
        // I(G) is the wedge of the suspensions of I(G \ N[w]), w ∈ N(v)
        Some(v) => {
            let mut sum = BettiVector::new();
            for w in h.neighbors(v).iter() {
                let mut drop = h.neighbors(w).clone();
                drop.insert(w);
                let rest = h.without(&drop)?.graph;
                for (d, x) in residual_betti(&rest, memo, cap)?.iter() {
                    sum.set(d + 1, sum.get(d + 1) + x);
                }
            }
            sum
        }
        None => match split_on_vertex(&h, memo, cap)? {
            Some(b) => b,
            None => betti_numbers(&independence_complex(&h, cap)?)?,
        },
    };
    memo.table.insert(code, b.clone());
    Ok(b)
}

/// Link and deletion of a vertex: `I(G \ v) ⊆ I(G)` has cofibre
/// `Σ I(G \ N[v])`, so in rational homology
/// `β̃_k(G) = β̃_k(G \ v) + β̃_{k-1}(G \ N[v])` whenever the map
/// `H̃_k(I(G \ N[v])) → H̃_k(I(G \ v))` is forced to vanish, which is the
/// case when no degree carries homology on both sides. Tries a few vertices
/// of largest degree; `None` if none of them decides.
fn split_on_vertex(g: &Graph, memo: &mut HomologyMemo, cap: usize) -> Result<Option<BettiVector>> {
    const TRIES: usize = 3;
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    for &v in order.iter().take(TRIES) {
        let mut closed = g.neighbors(v).clone();
        closed.insert(v);
        let link = residual_betti(&g.without(&closed)?.graph, memo, cap)?;
        let mut single = VertexSet::new(g.n());
        single.insert(v);
        let del = residual_betti(&g.without(&single)?.graph, memo, cap)?;
        if link.iter().any(|(d, x)| x > 0 && del.get(d) > 0) {
            continue;
        }
        let mut out = del;
        for (d, x) in link.iter() {
            out.set(d + 1, out.get(d + 1) + x);
        }
        return Ok(Some(out));
    }
    Ok(None)
}

/// A vertex of smallest degree whose neighbourhood is a clique.
fn simplicial_vertex(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for v in 0..g.n() {
        if best.is_some_and(|b| g.degree(b) <= g.degree(v)) {
            continue;
        }
        let nb: Vec<usize> = g.neighbors(v).iter().collect();
        let clique = nb.iter().enumerate().all(|(i, &a)| nb[i + 1..].iter().all(|&b| g.has_edge(a, b)));
        if clique {
            best = Some(v);
        }
    }
    best
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum ResidualScope {
    /// The subsets of one tile's boundary slots, in the universal cover.
    PerTile,
    /// The independent subsets of `U` in the whole graph.
    Global,
}

/// One isomorphism class of residual graphs.
#[derive(Clone, Debug)]
pub struct ResidualClass {
    pub code: CanonicalCode,
    pub representative: Graph,
    /// How many enumerated `σ` produced this class.
    pub multiplicity: u64,
    /// The first `σ` (bitmask order) producing it: slot indices for the
    /// per-tile scope, vertex ids for the global one.
    pub witness: Vec<usize>,
    pub betti: Option<BettiVector>,
}

impl ResidualClass {
    pub fn total(&self) -> Option<u64> {
        self.betti.as_ref().map(BettiVector::total)
    }
}

#[derive(Clone, Debug)]
pub struct ResidualClassTable {
    pub scope: ResidualScope,
    /// Number of `σ` enumerated.
    pub enumerated: u64,
    /// Number of distinct residual vertex sets among them.
    pub distinct_vertex_sets: u64,
    /// Classes in order of first appearance.
    pub classes: Vec<ResidualClass>,
}

impl ResidualClassTable {
    /// Fills in every class's Betti numbers, sequentially.
    pub fn compute_homology(&mut self, cap: usize) -> Result<()> {
        let mut memo = HomologyMemo::new();
        for c in &mut self.classes {
            if c.betti.is_none() {
                c.betti = Some(residual_betti(&c.representative, &mut memo, cap)?);
            }
        }
        Ok(())
    }

    /// `B`, once homology is filled in.
    pub fn max_total(&self) -> Option<u64> {
        self.classes.iter().map(ResidualClass::total).try_fold(0u64, |m, t| t.map(|t| m.max(t)))
    }

    /// Index of the first class attaining the maximum.
    pub fn argmax(&self) -> Option<usize> {
        let max = self.max_total()?;
        self.classes.iter().position(|c| c.total() == Some(max))
    }

    pub fn multiplicity_sum(&self) -> u64 {
        self.classes.iter().map(|c| c.multiplicity).sum()
    }

    /// Hash of the sorted class codes with their multiplicities; equal tables
    /// have equal digests.
    pub fn digest(&self) -> u64 {
        let mut rows: Vec<(&CanonicalCode, u64)> = self.classes.iter().map(|c| (&c.code, c.multiplicity)).collect();
        rows.sort();
        let mut bytes = Vec::new();
        for (code, m) in rows {
            bytes.extend_from_slice(code.as_bytes());
            bytes.extend_from_slice(&m.to_le_bytes());
        }
        fnv1a(&bytes)
    }

    fn summary(&self) -> ResidualSummary {
        ResidualSummary {
            scope: self.scope,
            enumerated: self.enumerated,
            classes: self.classes.len() as u64,
            max_total: self.max_total(),
            argmax_witness: self.argmax().map(|i| self.classes[i].witness.clone()),
            digest: format!("{:016x}", self.digest()),
        }
    }
}

struct Census {
    index: BTreeMap<CanonicalCode, usize>,
    seen_sets: BTreeMap<Vec<u64>, usize>,
    table: ResidualClassTable,
}

impl Census {
    fn new(scope: ResidualScope) -> Self {
        Self {
            index: BTreeMap::new(),
            seen_sets: BTreeMap::new(),
            table: ResidualClassTable { scope, enumerated: 0, distinct_vertex_sets: 0, classes: Vec::new() },
        }
    }

    fn add(&mut self, g: &Graph, keep: &VertexSet, witness: Vec<usize>) -> Result<()> {
        self.table.enumerated += 1;
        if let Some(&i) = self.seen_sets.get(keep.words()) {
            self.table.classes[i].multiplicity += 1;
            return Ok(());
        }
        self.table.distinct_vertex_sets += 1;
        let residual = g.induced_subgraph(keep)?.graph;
        let code = canonical_code(&residual);
        match self.index.get(&code) {
            Some(&i) => {
                self.table.classes[i].multiplicity += 1;
                self.seen_sets.insert(keep.words().to_vec(), i);
            }
            None => {
                self.seen_sets.insert(keep.words().to_vec(), self.table.classes.len());
                self.index.insert(code.clone(), self.table.classes.len());
                self.table.classes.push(ResidualClass {
                    code,
                    representative: residual,
                    multiplicity: 1,
                    witness,
                    betti: None,
                });
            }
        }
        Ok(())
    }
}

/// Residual classes of one tile: for every subset of the boundary slots, the
/// tile minus the neighbours of that subset. Homology is left unfilled.
pub fn tile_residual_census(shape: &TileShape) -> Result<ResidualClassTable> {
    let slots = shape.boundary.len();
    if slots > 30 {
        return Err(Error::InvalidInput(format!("{slots} boundary slots are too many to enumerate")));
    }
    let n = shape.graph.n();
    let mut census = Census::new(ResidualScope::PerTile);
    for mask in 0u64..(1u64 << slots) {
        let mut keep = VertexSet::full(n);
        let mut witness = Vec::new();
        for (j, nbrs) in shape.slot_neighbors.iter().enumerate() {
            if mask >> j & 1 == 1 {
                witness.push(j);
                for &v in nbrs {
                    keep.remove(v);
                }
            }
        }
        census.add(&shape.graph, &keep, witness)?;
    }
    Ok(census.table)
}

/// Residual classes of `G \ (U ∪ N[σ])` over all independent `σ ⊆ U`.
pub fn global_residual_census(g: &Graph, u: &VertexSet, cap: usize) -> Result<ResidualClassTable> {
    let mut census = Census::new(ResidualScope::Global);
    let mut err = None;
    for_each_separator_face(g, u, cap, |sigma, keep| {
        if err.is_none() {
            if let Err(e) = census.add(g, keep, sigma.to_vec()) {
                err = Some(e);
            }
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(census.table),
    }
}

/// The table for either scope, with homology filled in.
pub fn residual_class_table(
    g: &Graph,
    u: &VertexSet,
    scope: ResidualScope,
    tiling: Option<&Tiling>,
    cap: usize,
) -> Result<ResidualClassTable> {
    let mut table = match scope {
        ResidualScope::PerTile => {
            let t = tiling.ok_or_else(|| Error::InvalidInput(String::from("per-tile scope needs a tiling")))?;
            tile_residual_census(&t.shape)?
        }
        ResidualScope::Global => global_residual_census(g, u, cap)?,
    };
    table.compute_homology(cap)?;
    Ok(table)
}

/// Calls `f(σ, V \ (U ∪ N[σ]))` for every independent `σ ⊆ U`, in the
/// lexicographic order of `σ`. Returns `|I(G[U])|`.
fn for_each_separator_face<F: FnMut(&[usize], &VertexSet)>(g: &Graph, u: &VertexSet, cap: usize, mut f: F) -> Result<usize> {
    let u = u.with_universe(g.n())?;
    let gu = g.induced_subgraph(&u)?;
    let outside = u.complement();
    let mut sigma = Vec::new();
    gu.graph.for_each_independent_set(cap, |local| {
        sigma.clear();
        sigma.extend(local.iter().map(|&i| gu.origin[i]));
        let mut keep = outside.clone();
        for &s in &sigma {
            keep.difference_with(g.neighbors(s));
        }
        f(&sigma, &keep);
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum BoundKind {
    Lower,
    Upper,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ResidualSummary {
    pub scope: ResidualScope,
    pub enumerated: u64,
    pub classes: u64,
    pub max_total: Option<u64>,
    pub argmax_witness: Option<Vec<usize>>,
    pub digest: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "type", rename_all = "kebab-case"))]
pub enum Witness {
    Pairing { matrix: PairingMatrix, rank: usize, degree: i64 },
    Residuals(ResidualSummary),
    Forest { separator_faces: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BoundReport {
    pub kind: BoundKind,
    pub descriptor: String,
    pub vertices: usize,
    pub raw_factors: Vec<Factor>,
    /// The product of `raw_factors`, in decimal.
    pub raw: String,
    /// `raw^{1/vertices}` to six places; absent for the empty graph.
    pub rate_6dp: Option<String>,
    pub witness: Witness,
    pub timing_ms: Option<u64>,
}

impl BoundReport {
    fn new(kind: BoundKind, descriptor: String, vertices: usize, factors: Vec<Factor>, witness: Witness) -> Self {
        let raw_factors = normalize(&factors);
        let raw = product(&raw_factors);
        let rate_6dp = (vertices > 0).then(|| per_vertex_rate(&raw_factors, vertices as u64));
        Self { kind, descriptor, vertices, raw_factors, raw: raw.to_str_radix(10), rate_6dp, witness, timing_ms: None }
    }

    pub fn raw_value(&self) -> BigUint {
        product(&self.raw_factors)
    }

    /// `14^2·2^12`-style rendering of the raw bound.
    pub fn symbolic(&self) -> String {
        format_factors(&self.raw_factors)
    }
}

fn count_factor(count: &BigUint) -> Result<Factor> {
    let c = count
        .to_u64()
        .ok_or_else(|| Error::InvalidInput(String::from("separator face count exceeds 64 bits")))?;
    Ok(Factor::perfect_power(c))
}

/// `β̃(I(G)) ≤ B·|I(G[U])|` with `B` the exact maximum over all residuals.
pub fn upper_bound(g: &Graph, u: &VertexSet, cap: usize) -> Result<BoundReport> {
    let mut memo = HomologyMemo::new();
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut err = None;
    let count = for_each_separator_face(g, u, cap, |sigma, keep| {
        if err.is_some() {
            return;
        }
        let total = g
            .induced_subgraph(keep)
            .and_then(|r| residual_betti(&r.graph, &mut memo, cap))
            .map(|b| b.total());
        match total {
            Ok(t) if best.as_ref().is_none_or(|(b, _)| t > *b) => best = Some((t, sigma.to_vec())),
            Ok(_) => {}
            Err(e) => err = Some(e),
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    let (b, argmax) = best.expect("the empty set is always enumerated");
    let u_ind = g.is_independent(&u.with_universe(g.n())?)?;
    let faces = if u_ind { Factor::new(2, u.len() as u64) } else { Factor::perfect_power(count as u64) };
    let summary = ResidualSummary {
        scope: ResidualScope::Global,
        enumerated: count as u64,
        classes: memo.len() as u64,
        max_total: Some(b),
        argmax_witness: Some(argmax),
        digest: String::new(),
    };
    let descriptor = format!("separator of {} vertices, {} faces", u.len(), count);
    Ok(BoundReport::new(BoundKind::Upper, descriptor, g.n(), vec![Factor::perfect_power(b), faces], Witness::Residuals(summary)))
}

/// The tiled form `B^k·2^{|U|}`, with `B` the per-tile maximum from `table`.
pub fn tiled_upper_bound(g: &Graph, tiling: &Tiling, table: &ResidualClassTable) -> Result<BoundReport> {
    if table.scope != ResidualScope::PerTile {
        return Err(Error::InvalidInput(String::from("tiled bounds need a per-tile table")));
    }
    let b = table
        .max_total()
        .ok_or_else(|| Error::InvalidInput(String::from("residual homology not computed")))?;
    let k = tiling.k() as u64;
    let factors = vec![Factor::new(b, k), Factor::new(2, tiling.separator.len() as u64)];
    let descriptor = format!("{} tiles of {} vertices, |U| = {}", k, tiling.shape.offsets.len(), tiling.separator.len());
    let mut report = BoundReport::new(BoundKind::Upper, descriptor, g.n(), factors, Witness::Residuals(table.summary()));
    // keep the symbolic shape B^k·2^|U| even when B is itself a power
    report.raw_factors = vec![Factor::new(b, k), Factor::new(2, tiling.separator.len() as u64)];
    Ok(report)
}

/// `β̃(I(G)) ≤ |I(G[U])|` when `G \ U` is a forest.
pub fn forest_bound(g: &Graph, u: &VertexSet) -> Result<BoundReport> {
    let u = u.with_universe(g.n())?;
    if !g.without(&u)?.graph.is_forest() {
        return Err(Error::NotAForest);
    }
    let count = g.induced_subgraph(&u)?.graph.count_independent_sets();
    let descriptor = format!("forest complement of a {}-vertex separator", u.len());
    Ok(BoundReport::new(
        BoundKind::Upper,
        descriptor,
        g.n(),
        vec![count_factor(&count)?],
        Witness::Forest { separator_faces: count.to_str_radix(10) },
    ))
}

/// `β̃_{k-1}(I(G)) ≥ rank` of the pairing matrix of a validated family.
pub fn lower_bound(g: &Graph, family: &[MatchingWithTransversal], labels: Option<&[String]>) -> Result<BoundReport> {
    for (i, pair) in family.iter().enumerate() {
        let v = validate_pair(g, pair);
        if !v.is_valid() {
            return Err(Error::RejectedCertificate(format!("family member {i} fails validation: {v:?}")));
        }
    }
    let default: Vec<String> = (0..family.len()).map(|i| format!("{i}")).collect();
    let labels = labels.unwrap_or(&default);
    let matrix = pairing_matrix_labeled(family, labels);
    let rank = rank_lower_bound(&matrix);
    let degree = family.first().map_or(-1, |p| p.size() as i64 - 1);
    let descriptor = format!("{} cross-cycles in degree {}", family.len(), degree);
    Ok(BoundReport::new(
        BoundKind::Lower,
        descriptor,
        g.n(),
        vec![Factor::perfect_power(rank as u64)],
        Witness::Pairing { matrix, rank, degree },
    ))
}

/// The complex-level form: `β̃(K) ≤ B·|K[U]|` where `B` is the largest
/// `β̃(lk_W σ)` over faces `σ` on `U` and `W` is the complement of `U`.
pub fn complex_upper_bound(k: &SimplicialComplex, in_u: &[bool]) -> Result<BigUint> {
    let w: Vec<bool> = in_u.iter().map(|&x| !x).collect();
    let mut faces_on_u = 0u64;
    let mut b = 0u64;
    for layer in k.layers() {
        for f in layer.iter() {
            if f.iter().all(|&v| in_u[v as usize]) {
                faces_on_u += 1;
                let lk = k.relative_link(f, &w);
                b = b.max(betti_numbers(&lk)?.total());
            }
        }
    }
    Ok(BigUint::from(b) * BigUint::from(faces_on_u))
}

/// Whether a lower and an upper report on the same graph are consistent.
pub fn bounds_consistent(lower: &BoundReport, upper: &BoundReport) -> bool {
    lower.vertices == upper.vertices && lower.raw_value() <= upper.raw_value() && !upper.raw_value().is_zero()
        || lower.raw_value().is_zero()
}
