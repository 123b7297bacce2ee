//! Tile templates: a pair `A`, `B` of induced matchings with dominating
//! transversals on one tile, such that any placement of `A`s and `B`s over a
//! tiling gives a validated pair on the whole lattice and the pairing matrix
//! of all `2^k` placements is triangular.
//!
//! Requirements on a pair, in tile-local terms:
//! - each matching is induced in the tile and its transversal dominates the
//!   tile;
//! - every separator vertex is dominated whatever the placement, i.e. it sits
//!   in a slot dominated by both templates of some tile around it;
//! - `σ_B` is not a transversal of `M_A`, so `⟨σ(t), α_{M(s)}⟩ = 0` as soon
//!   as some tile has `s_i = A`, `t_i = B`. Listing placements in
//!   lexicographic order with `A < B` then makes the matrix zero above the
//!   diagonal, with `±1` on it.
//!
//! The search walks candidates in lexicographic order of (edge list,
//! transversal) and returns the least pair, preferring pairs that dominate
//! every boundary slot with each template and pairs with `σ_B ⊄ V(M_A)`
//! (which makes the splitting condition hold in lexicographic order).

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::cross::{validate_pair, MatchingWithTransversal};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lattice::{Coord, TileShape, Tiling};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Letter {
    A,
    B,
}

/// A matching and transversal on one tile, by tile-local vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TileTemplate {
    pub label: Letter,
    pub edges: Vec<(usize, usize)>,
    pub transversal: Vec<usize>,
}

/// How separator vertices are guaranteed to be dominated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum BoundaryRule {
    /// Each template dominates every boundary slot of its tile.
    EverySlot,
    /// Each separator vertex has a slot dominated by both templates.
    SharedSlot,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TemplatePair {
    pub a: TileTemplate,
    pub b: TileTemplate,
    pub matching_size: usize,
    pub rule: BoundaryRule,
    /// `σ_B ⊄ V(M_A)`.
    pub b_escapes_a: bool,
    /// Number of single-tile candidates of this size.
    pub candidates: usize,
}

impl TemplatePair {
    pub fn template(&self, l: Letter) -> &TileTemplate {
        match l {
            Letter::A => &self.a,
            Letter::B => &self.b,
        }
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    edges: Vec<(usize, usize)>,
    sigma: u64,
    matched: u64,
    slots: u64,
}

fn mask_of(ids: impl IntoIterator<Item = usize>) -> u64 {
    ids.into_iter().fold(0, |m, v| m | 1 << v)
}

fn adjacency(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbors(v).low_mask()).collect()
}

/// Largest induced matching of the tile graph.
pub fn max_induced_matching(g: &Graph) -> usize {
    let adj = adjacency(g);
    let edges = g.edges();
    let mut best = 0;
    fn rec(edges: &[(usize, usize)], adj: &[u64], start: usize, blocked: u64, size: usize, best: &mut usize) {
        *best = (*best).max(size);
        if size + (edges.len() - start) <= *best {
            return;
        }
        for (i, &(u, v)) in edges.iter().enumerate().skip(start) {
            if blocked >> u & 1 == 0 && blocked >> v & 1 == 0 {
                let b = blocked | adj[u] | adj[v] | 1 << u | 1 << v;
                rec(edges, adj, i + 1, b, size + 1, best);
            }
        }
    }
    rec(&edges, &adj, 0, 0, 0, &mut best);
    best
}

fn candidates(shape: &TileShape, size: usize) -> Vec<Candidate> {
    let g = &shape.graph;
    let adj = adjacency(g);
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let slot_masks: Vec<u64> = shape.slot_neighbors.iter().map(|s| mask_of(s.iter().copied())).collect();
    let edges = g.edges();
    let mut out = Vec::new();
    let mut current: Vec<(usize, usize)> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        edges: &[(usize, usize)],
        adj: &[u64],
        all: u64,
        slot_masks: &[u64],
        size: usize,
        start: usize,
        blocked: u64,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Candidate>,
    ) {
        if current.len() == size {
            let matched = mask_of(current.iter().flat_map(|&(u, v)| [u, v]));
            for choice in 0u64..(1u64 << size) {
                let sigma = mask_of(current.iter().enumerate().map(|(i, &(u, v))| if choice >> i & 1 == 1 { v } else { u }));
                let mut covered = sigma;
                let mut s = sigma;
                while s != 0 {
                    let v = s.trailing_zeros() as usize;
                    covered |= adj[v];
                    s &= s - 1;
                }
                if covered & all != all {
                    continue;
                }
                let slots = slot_masks
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m & sigma != 0)
                    .fold(0u64, |acc, (j, _)| acc | 1 << j);
                out.push(Candidate { edges: current.clone(), sigma, matched, slots });
            }
            return;
        }
        if current.len() + (edges.len() - start) < size {
            return;
        }
        for (i, &(u, v)) in edges.iter().enumerate().skip(start) {
            if blocked >> u & 1 == 0 && blocked >> v & 1 == 0 {
                current.push((u, v));
                let b = blocked | adj[u] | adj[v] | 1 << u | 1 << v;
                rec(edges, adj, all, slot_masks, size, i + 1, b, current, out);
                current.pop();
            }
        }
    }
    rec(&edges, &adj, all, &slot_masks, size, 0, 0, &mut current, &mut out);
    out.sort_by(|x, y| x.edges.cmp(&y.edges).then_with(|| bits(x.sigma).cmp(&bits(y.sigma))));
    out
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut v = Vec::new();
    while m != 0 {
        v.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    v
}

/// Groups of slots that are the same separator vertex seen from different
/// tiles (slot offsets differing by a superlattice vector).
pub fn slot_classes(shape: &TileShape) -> Vec<u64> {
    let [s1, s2] = shape.superlattice;
    let det = s1.0 * s2.1 - s1.1 * s2.0;
    let in_lattice = |q: Coord| (q.0 * s2.1 - q.1 * s2.0) % det == 0 && (s1.0 * q.1 - s1.1 * q.0) % det == 0;
    let mut classes: Vec<u64> = Vec::new();
    let mut assigned = 0u64;
    for i in 0..shape.boundary.len() {
        if assigned >> i & 1 == 1 {
            continue;
        }
        let mut c = 0u64;
        for j in i..shape.boundary.len() {
            let (p, q) = (shape.boundary[i], shape.boundary[j]);
            if in_lattice((p.0 - q.0, p.1 - q.1)) {
                c |= 1 << j;
            }
        }
        assigned |= c;
        classes.push(c);
    }
    classes
}

/// `σ` (as a mask) picks exactly one endpoint of every edge and nothing else.
fn is_transversal_of(sigma: u64, edges: &[(usize, usize)]) -> bool {
    let matched = mask_of(edges.iter().flat_map(|&(u, v)| [u, v]));
    sigma & !matched == 0 && edges.iter().all(|&(u, v)| (sigma >> u & 1) + (sigma >> v & 1) == 1)
}

/// Finds the lexicographically least template pair with matchings of
/// `size` edges, or of the largest size that admits one when `size` is
/// `None`.
pub fn search_tile_templates(shape: &TileShape, size: Option<usize>) -> Result<TemplatePair> {
    if shape.graph.n() > 64 || shape.boundary.len() > 64 {
        return Err(Error::InvalidInput(String::from("template search handles tiles of at most 64 vertices")));
    }
    let max = max_induced_matching(&shape.graph);
    let sizes: Vec<usize> = match size {
        Some(s) => vec![s],
        None => (1..=max).rev().collect(),
    };
    let classes = slot_classes(shape);
    let full_slots = if shape.boundary.len() == 64 { u64::MAX } else { (1u64 << shape.boundary.len()) - 1 };
    let mut diagnostics = Vec::new();
    for s in sizes {
        if s > max {
            diagnostics.push(format!("size {s}: the largest induced matching has {max} edges"));
            continue;
        }
        let cands = candidates(shape, s);
        if cands.is_empty() {
            diagnostics.push(format!("size {s}: no induced matching has a transversal dominating the tile"));
            continue;
        }
        let mut boundary_fail = 0u64;
        let mut asym_fail = 0u64;
        for (rule, want_escape) in [
            (BoundaryRule::EverySlot, true),
            (BoundaryRule::EverySlot, false),
            (BoundaryRule::SharedSlot, true),
            (BoundaryRule::SharedSlot, false),
        ] {
            let ok_single = |c: &Candidate| rule == BoundaryRule::SharedSlot || c.slots == full_slots;
            for a in cands.iter().filter(|c| ok_single(c)) {
                for b in cands.iter().filter(|c| ok_single(c)) {
                    let both = a.slots & b.slots;
                    if rule == BoundaryRule::SharedSlot && classes.iter().any(|&c| both & c == 0) {
                        boundary_fail += 1;
                        continue;
                    }
                    if is_transversal_of(b.sigma, &a.edges) {
                        asym_fail += 1;
                        continue;
                    }
                    let escapes = b.sigma & !a.matched != 0;
                    if want_escape && !escapes {
                        continue;
                    }
                    let template = |label, c: &Candidate| TileTemplate { label, edges: c.edges.clone(), transversal: bits(c.sigma) };
                    return Ok(TemplatePair {
                        a: template(Letter::A, a),
                        b: template(Letter::B, b),
                        matching_size: s,
                        rule,
                        b_escapes_a: escapes,
                        candidates: cands.len(),
                    });
                }
            }
        }
        diagnostics.push(format!(
            "size {s}: {} candidates; pairs rejected {boundary_fail} times for leaving a separator vertex undominated, {asym_fail} times for σ_B being a transversal of M_A",
            cands.len()
        ));
    }
    Err(Error::NoTemplate(diagnostics.join("; ")))
}

/// All words in `{A,B}^k`, in lexicographic order with `A < B`.
pub fn all_assignments(k: usize) -> Vec<Vec<Letter>> {
    assert!(k < 31, "2^{k} assignments are too many to list");
    (0..1u32 << k)
        .map(|x| (0..k).map(|i| if x >> (k - 1 - i) & 1 == 1 { Letter::B } else { Letter::A }).collect())
        .collect()
}

pub fn assignment_label(word: &[Letter]) -> String {
    word.iter().map(|l| if *l == Letter::A { 'A' } else { 'B' }).collect()
}

/// `(M(s), σ(s))`: template `s_i` placed on tile `i`, edges listed tile by
/// tile.
pub fn family_from_assignment(tiling: &Tiling, pair: &TemplatePair, word: &[Letter]) -> Result<MatchingWithTransversal> {
    if word.len() != tiling.k() {
        return Err(Error::InvalidInput(format!("word of length {} for {} tiles", word.len(), tiling.k())));
    }
    let mut edges = Vec::new();
    let mut sigma = Vec::new();
    for (t, &l) in word.iter().enumerate() {
        let ids = &tiling.tiles[t];
        let tpl = pair.template(l);
        edges.extend(tpl.edges.iter().map(|&(u, v)| (ids[u], ids[v])));
        sigma.extend(tpl.transversal.iter().map(|&v| ids[v]));
    }
    Ok(MatchingWithTransversal::new(edges, sigma))
}

/// The `2^k` families in lexicographic order with their labels.
pub fn template_family(tiling: &Tiling, pair: &TemplatePair) -> Result<(Vec<MatchingWithTransversal>, Vec<String>)> {
    let words = all_assignments(tiling.k());
    let fam = words.iter().map(|w| family_from_assignment(tiling, pair, w)).collect::<Result<Vec<_>>>()?;
    Ok((fam, words.iter().map(|w| assignment_label(w)).collect()))
}

/// Validates every placement on the actual quotient graph.
pub fn verify_templates(g: &Graph, tiling: &Tiling, pair: &TemplatePair) -> Result<()> {
    let (fam, labels) = template_family(tiling, pair)?;
    for (f, l) in fam.iter().zip(&labels) {
        let v = validate_pair(g, f);
        if !v.is_valid() {
            return Err(Error::RejectedCertificate(format!("placement {l} fails: {v:?}")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cross::{pairing_matrix_labeled, rank_lower_bound};
    use crate::lattice::{LatticeKind, LatticeSpec};

    #[test]
    fn assignments_are_lexicographic() {
        let w = all_assignments(2);
        let labels: Vec<String> = w.iter().map(|x| assignment_label(x)).collect();
        assert_eq!(labels, ["AA", "AB", "BA", "BB"]);
    }

    #[test]
    fn delta3_templates_and_family() {
        let (l, t) = LatticeSpec::new(LatticeKind::Delta3, 2, 2).tiling().unwrap();
        let pair = search_tile_templates(&t.shape, None).unwrap();
        assert_eq!(pair.matching_size, 2);
        verify_templates(&l.graph, &t, &pair).unwrap();
        let (fam, labels) = template_family(&t, &pair).unwrap();
        let p = pairing_matrix_labeled(&fam, &labels);
        assert!(p.is_lower_unitriangular());
        assert_eq!(rank_lower_bound(&p), 16);
    }

    #[test]
    fn transversal_mask_check() {
        assert!(is_transversal_of(0b1001, &[(0, 1), (2, 3)]));
        assert!(!is_transversal_of(0b0011, &[(0, 1), (2, 3)]));
        assert!(!is_transversal_of(0b10001, &[(0, 1)]));
    }
}
