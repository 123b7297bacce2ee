//! Periodic quotients of the triangular lattice and of the lattices obtained
//! from it by erasing lines, together with their large-tile decompositions.
//!
//! Points of the triangular lattice are written in integer coordinates
//! `(a, b)`, standing for the plane point `a·(1,0) + b·(1/2, √3/2)`. Every
//! point has three lines through it, indexed by `b` (direction `(1,0)`), `a`
//! (direction `(0,1)`) and `a + b` (direction `(-1,1)`). The lattice `Δ_d`
//! erases the lines whose index is `≡ 0 (mod d)` in all three families and
//! drops the points where they cross (those with `a ≡ b ≡ 0`). `Δ_2` is the
//! Kagome lattice.
//!
//! A quotient is given by two period vectors in `(a, b)` coordinates; the
//! vertices are the residues modulo the period lattice, in row-major order
//! of their reduced representatives (by `b`, then `a`).

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::Ratio;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, Point};

pub type Coord = (i64, i64);

/// The three edge directions, each paired with the index of the line it runs
/// along.
const DIRECTIONS: [(Coord, fn(Coord) -> i64); 3] =
    [((1, 0), |p| p.1), ((0, 1), |p| p.0), ((-1, 1), |p| p.0 + p.1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum LatticeKind {
    Kagome,
    Triangular,
    Delta3,
    Delta4,
    Cycle,
}

impl LatticeKind {
    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Kagome => "kagome",
            LatticeKind::Triangular => "triangular",
            LatticeKind::Delta3 => "delta3",
            LatticeKind::Delta4 => "delta4",
            LatticeKind::Cycle => "cycle",
        }
    }
}

impl core::str::FromStr for LatticeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "kagome" => LatticeKind::Kagome,
            "triangular" => LatticeKind::Triangular,
            "delta3" => LatticeKind::Delta3,
            "delta4" => LatticeKind::Delta4,
            "cycle" => LatticeKind::Cycle,
            _ => return Err(Error::InvalidInput(format!("unknown lattice kind {s:?}"))),
        })
    }
}

/// Which lattice and which periods. For `Cycle` only `n` is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LatticeSpec {
    pub kind: LatticeKind,
    pub n: usize,
    pub m: usize,
}

impl LatticeSpec {
    pub fn new(kind: LatticeKind, n: usize, m: usize) -> Self {
        Self { kind, n, m }
    }

    /// The lattice quotient, or `None` for cycles.
    pub fn quotient(&self) -> Result<Option<PeriodicLattice>> {
        Ok(Some(match self.kind {
            LatticeKind::Kagome => kagome(self.n, self.m)?,
            LatticeKind::Triangular => triangular(self.n, self.m)?,
            LatticeKind::Delta3 => delta(3, self.n, self.m)?,
            LatticeKind::Delta4 => delta(4, self.n, self.m)?,
            LatticeKind::Cycle => return Ok(None),
        }))
    }

    pub fn graph(&self) -> Result<Graph> {
        match self.quotient()? {
            Some(l) => Ok(l.graph),
            None => gen_cycle(self.n),
        }
    }

    /// The large-tile decomposition used by the bound constructions.
    pub fn tiling(&self) -> Result<(PeriodicLattice, Tiling)> {
        let lattice = self
            .quotient()?
            .ok_or_else(|| Error::NotTileable(String::from("cycles carry no tiling")))?;
        let shape = match self.kind {
            LatticeKind::Kagome => {
                if !self.n.is_multiple_of(6) || !self.m.is_multiple_of(4) {
                    return Err(Error::NotTileable(format!(
                        "H_{{{},{}}} needs 6 | n and 4 | m",
                        self.n, self.m
                    )));
                }
                TileShape::kagome_hexagon()
            }
            LatticeKind::Delta3 => TileShape::delta3_hexagon(),
            LatticeKind::Delta4 => TileShape::delta4_hexagon(),
            _ => return Err(Error::NotTileable(format!("no tiling is defined for {}", self.kind.name()))),
        };
        let tiling = lattice.tile(&shape)?;
        Ok((lattice, tiling))
    }
}

/// A finite quotient of `Δ_d` (or of the full triangular lattice).
#[derive(Clone, Debug)]
pub struct PeriodicLattice {
    /// Line-removal modulus; `None` for the triangular lattice itself.
    pub d: Option<i64>,
    pub periods: [Coord; 2],
    pub graph: Graph,
    /// Hermite basis `(h, s), (0, t)` of the period lattice.
    hnf: (i64, i64, i64),
    reps: Vec<Coord>,
    index: BTreeMap<Coord, usize>,
}

impl PeriodicLattice {
    fn new(d: Option<i64>, periods: [Coord; 2]) -> Result<Self> {
        let [(x1, y1), (x2, y2)] = periods;
        let det = x1 * y2 - x2 * y1;
        if det == 0 {
            return Err(Error::DegenerateQuotient(format!("periods {periods:?} are linearly dependent")));
        }
        if let Some(d) = d {
            if [x1, y1, x2, y2].iter().any(|c| c % d != 0) {
                return Err(Error::DegenerateQuotient(format!(
                    "periods {periods:?} do not preserve the removed lines mod {d}"
                )));
            }
        }
        // Hermite form: (h, s) with h = gcd of first coordinates, (0, t) spanning
        // the part of the lattice on the b-axis.
        let ext = x1.extended_gcd(&x2);
        let (mut h, mut s) = (ext.gcd, ext.x * y1 + ext.y * y2);
        if h < 0 {
            h = -h;
            s = -s;
        }
        let t = (det / h).abs();
        let s = s.rem_euclid(t);

        let removed = |p: Coord| d.is_some_and(|d| p.0 % d == 0 && p.1 % d == 0);
        let mut reps: Vec<Coord> = Vec::new();
        for a in 0..h {
            for b in 0..t {
                if !removed((a, b)) {
                    reps.push((a, b));
                }
            }
        }
        reps.sort_by_key(|&(a, b)| (b, a));
        let index: BTreeMap<Coord, usize> = reps.iter().enumerate().map(|(i, &p)| (p, i)).collect();

        let mut lattice = Self { d, periods, graph: Graph::new(reps.len()), hnf: (h, s, t), reps, index };
        let mut graph = Graph::new(lattice.reps.len());
        for (i, &p) in lattice.reps.iter().enumerate() {
            for &(dir, line) in &DIRECTIONS {
                if lattice.erased(line(p)) {
                    continue;
                }
                let q = (p.0 + dir.0, p.1 + dir.1);
                let j = lattice.vertex_at(q).expect("points on kept lines are vertices");
                if i == j {
                    return Err(Error::DegenerateQuotient(format!("periods {periods:?} create a loop")));
                }
                if !graph.add_edge(i, j)? {
                    return Err(Error::DegenerateQuotient(format!("periods {periods:?} create a multiple edge")));
                }
            }
        }
        graph.set_coords(lattice.reps.iter().map(|&p| plane_point(p)).collect())?;
        lattice.graph = graph;
        Ok(lattice)
    }

    fn erased(&self, line: i64) -> bool {
        self.d.is_some_and(|d| line % d == 0)
    }

    /// Whether the cover point `p` is a vertex of the infinite lattice.
    pub fn is_point(&self, p: Coord) -> bool {
        self.d.is_none_or(|d| p.0 % d != 0 || p.1 % d != 0)
    }

    /// Canonical representative of `p` modulo the periods.
    pub fn reduce(&self, p: Coord) -> Coord {
        let (h, s, t) = self.hnf;
        let q = p.0.div_euclid(h);
        (p.0 - q * h, (p.1 - q * s).rem_euclid(t))
    }

    /// Vertex id of the cover point `p`, if it is a lattice vertex.
    pub fn vertex_at(&self, p: Coord) -> Option<usize> {
        self.index.get(&self.reduce(p)).copied()
    }

    /// Reduced cover coordinates of vertex `v`.
    pub fn position(&self, v: usize) -> Coord {
        self.reps[v]
    }

    /// Neighbours of the cover point `p` in the infinite lattice.
    pub fn cover_neighbors(&self, p: Coord) -> Vec<Coord> {
        let mut out = Vec::with_capacity(6);
        for &(dir, line) in &DIRECTIONS {
            if !self.erased(line(p)) {
                out.push((p.0 + dir.0, p.1 + dir.1));
                out.push((p.0 - dir.0, p.1 - dir.1));
            }
        }
        out
    }

    /// Whether `q` lies in the period lattice.
    pub fn is_period(&self, q: Coord) -> bool {
        self.reduce(q) == (0, 0)
    }

    /// Decomposes the quotient into translated copies of `shape`, one per
    /// coset of the shape's superlattice, plus the separator set `U` of all
    /// vertices left over. Every structural property the bound arguments rely
    /// on is checked here and reported as `NotTileable` when it fails.
    pub fn tile(&self, shape: &TileShape) -> Result<Tiling> {
        let not = |msg: String| Err(Error::NotTileable(msg));
        if shape.d != self.d {
            return not(String::from("tile shape belongs to a different lattice"));
        }
        let [s1, s2] = shape.superlattice;
        let sdet = (s1.0 * s2.1 - s1.1 * s2.0).abs();
        for p in self.periods {
            let x = p.0 * s2.1 - p.1 * s2.0;
            let y = s1.0 * p.1 - s1.1 * p.0;
            if x % sdet != 0 || y % sdet != 0 {
                return not(format!("period {p:?} is not a translation of the tile pattern"));
            }
        }
        let [(x1, y1), (x2, y2)] = self.periods;
        let k = ((x1 * y2 - x2 * y1).abs() / sdet) as usize;

        let mut centres: Vec<Coord> = Vec::new();
        for i in 0..k as i64 {
            for j in 0..k as i64 {
                let c = self.reduce((i * s1.0 + j * s2.0, i * s1.1 + j * s2.1));
                if !centres.contains(&c) {
                    centres.push(c);
                }
            }
        }
        debug_assert_eq!(centres.len(), k);
        centres.sort_by_key(|&(a, b)| (b, a));

        let n = self.graph.n();
        let mut owner = alloc::vec![usize::MAX; n];
        let mut tiles = Vec::with_capacity(k);
        let mut boundaries = Vec::with_capacity(k);
        for (t, &c) in centres.iter().enumerate() {
            let mut ids = Vec::with_capacity(shape.offsets.len());
            for &o in &shape.offsets {
                let v = self.vertex_at((c.0 + o.0, c.1 + o.1)).expect("tile offsets are lattice points");
                if owner[v] != usize::MAX {
                    return not(format!("tiles {} and {t} overlap at vertex {v}", owner[v]));
                }
                owner[v] = t;
                ids.push(v);
            }
            boundaries.push(
                shape
                    .boundary
                    .iter()
                    .map(|&o| self.vertex_at((c.0 + o.0, c.1 + o.1)).expect("slots are lattice points"))
                    .collect::<Vec<_>>(),
            );
            tiles.push(ids);
        }
        let separator = VertexSet::from_ids(n, (0..n).filter(|&v| owner[v] == usize::MAX))?;
        for (u, v) in self.graph.edges() {
            match (owner[u], owner[v]) {
                (usize::MAX, usize::MAX) => return not(format!("separator vertices {u} and {v} are adjacent")),
                (a, b) if a != usize::MAX && b != usize::MAX && a != b => {
                    return not(format!("tiles {a} and {b} are joined by the edge {u}-{v}"))
                }
                _ => {}
            }
        }
        for (t, ids) in tiles.iter().enumerate() {
            let set = VertexSet::from_ids(n, ids.iter().copied())?;
            let local = self.graph.induced_subgraph(&set)?.graph;
            if local.edge_count() != shape.graph.edge_count() {
                return not(format!("tile {t} wraps onto itself"));
            }
            for &u in &boundaries[t] {
                if owner[u] != usize::MAX {
                    return not(format!("boundary slot of tile {t} lands inside a tile"));
                }
            }
        }
        for u in separator.iter() {
            if !boundaries.iter().any(|b| b.contains(&u)) {
                return not(format!("separator vertex {u} touches no tile"));
            }
        }
        Ok(Tiling { shape: shape.clone(), centres, tiles, separator, boundaries })
    }
}

fn plane_point(p: Coord) -> Point {
    Point::new(Ratio::new(2 * p.0 + p.1, 2), Ratio::new(p.1, 2))
}

/// `Δ_d` quotient with periods `(d·n, 0)` and `(0, d·m)`; `d·d - 1` vertices
/// per period cell.
pub fn delta(d: i64, n: usize, m: usize) -> Result<PeriodicLattice> {
    if !(2..=4).contains(&d) {
        return Err(Error::InvalidInput(format!("line-removal modulus {d} is not 2, 3 or 4")));
    }
    if n == 0 || m == 0 {
        return Err(Error::DegenerateQuotient(format!("periods ({n}, {m}) must be positive")));
    }
    PeriodicLattice::new(Some(d), [(d * n as i64, 0), (0, d * m as i64)])
}

pub fn gen_delta(d: i64, n: usize, m: usize) -> Result<Graph> {
    if d != 3 && d != 4 {
        return Err(Error::InvalidInput(format!("Δ_d is generated for d = 3 or 4, not {d}")));
    }
    Ok(delta(d, n, m)?.graph)
}

/// `H_{n,m}`: the Kagome lattice modulo `n·(2,0)` and `m·(0,√3)`.
///
/// `(0,√3)` is not itself a symmetry of the Kagome lattice, only `(0,2√3)`
/// is, so `m` must be even. Coordinates are wrapped into the rectangle
/// `[0, 2n) × [0, m√3)`.
pub fn kagome(n: usize, m: usize) -> Result<PeriodicLattice> {
    if n < 2 || m < 2 {
        return Err(Error::DegenerateQuotient(format!("H_{{{n},{m}}} needs n, m >= 2")));
    }
    if !m.is_multiple_of(2) {
        return Err(Error::DegenerateQuotient(format!(
            "H_{{{n},{m}}}: m·(0,√3) is a symmetry of the Kagome lattice only for even m"
        )));
    }
    let (n, m) = (n as i64, m as i64);
    let mut lattice = PeriodicLattice::new(Some(2), [(2 * n, 0), (-m, 2 * m)])?;
    let coords = (0..lattice.graph.n())
        .map(|v| {
            let (a, b) = lattice.position(v);
            let q = b.div_euclid(2 * m);
            let (a, b) = (a + q * m, b - q * 2 * m);
            let x = Ratio::new(2 * a + b, 2);
            let shift = (x / Ratio::from_integer(2 * n)).floor() * Ratio::from_integer(2 * n);
            Point::new(x - shift, Ratio::new(b, 2))
        })
        .collect();
    lattice.graph.set_coords(coords)?;
    Ok(lattice)
}

pub fn gen_kagome(n: usize, m: usize) -> Result<Graph> {
    Ok(kagome(n, m)?.graph)
}

/// Plain triangular lattice with periods `(n, 0)` and `(0, m)`; 6-regular.
pub fn triangular(n: usize, m: usize) -> Result<PeriodicLattice> {
    if n < 3 || m < 3 {
        return Err(Error::DegenerateQuotient(format!("triangular quotient {n}x{m} needs n, m >= 3")));
    }
    PeriodicLattice::new(None, [(n as i64, 0), (0, m as i64)])
}

pub fn gen_triangular(n: usize, m: usize) -> Result<Graph> {
    Ok(triangular(n, m)?.graph)
}

/// The cycle `C_n` on `0..n`, with vertex `i` adjacent to `i ± 1`.
pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("a cycle needs at least 3 vertices, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// A tile region in cover coordinates relative to its centre, repeated over a
/// superlattice of translations.
#[derive(Clone, Debug)]
pub struct TileShape {
    pub name: &'static str,
    pub d: Option<i64>,
    pub superlattice: [Coord; 2],
    /// Tile vertices, row-major; local vertex `i` sits at `offsets[i]`.
    pub offsets: Vec<Coord>,
    /// Separator positions adjacent to the tile, row-major ("slots").
    pub boundary: Vec<Coord>,
    /// The tile as a graph on local ids.
    pub graph: Graph,
    /// For each slot, the local tile vertices adjacent to it.
    pub slot_neighbors: Vec<Vec<usize>>,
}

impl TileShape {
    fn from_predicate(name: &'static str, d: i64, superlattice: [Coord; 2], radius: i64, inside: impl Fn(Coord) -> bool) -> Self {
        let probe = PeriodicLattice { d: Some(d), periods: [(1, 0), (0, 1)], graph: Graph::new(0), hnf: (1, 0, 1), reps: Vec::new(), index: BTreeMap::new() };
        let mut offsets: Vec<Coord> = Vec::new();
        for b in -radius..=radius {
            for a in -radius..=radius {
                if probe.is_point((a, b)) && inside((a, b)) {
                    offsets.push((a, b));
                }
            }
        }
        let local: BTreeMap<Coord, usize> = offsets.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let mut graph = Graph::new(offsets.len());
        let mut slots: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        for (i, &p) in offsets.iter().enumerate() {
            for q in probe.cover_neighbors(p) {
                match local.get(&q) {
                    Some(&j) => {
                        graph.add_edge(i, j).expect("local ids are in range");
                    }
                    None => slots.entry((q.1, q.0)).or_default().push(i),
                }
            }
        }
        let boundary = slots.keys().map(|&(b, a)| (a, b)).collect();
        let slot_neighbors = slots
            .into_values()
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect();
        Self { name, d: Some(d), superlattice, offsets, boundary, graph, slot_neighbors }
    }

    /// The 30-vertex Kagome tile: all points within Euclidean distance 3 of
    /// an erased crossing, repeated over the translations `(6, 2√3)` and
    /// `(0, 4√3)`. It leaves 6 separator vertices per tile and touches 12.
    /// FNV-1a hash of the offsets, boundary slots and slot adjacency; two
    /// shapes with equal digests have the same geometry.
    pub fn geometry_digest(&self) -> u64 {
        let mut bytes = Vec::new();
        let mut push = |x: i64| bytes.extend_from_slice(&x.to_le_bytes());
        for &(a, b) in self.offsets.iter().chain(&self.boundary) {
            push(a);
            push(b);
        }
        for (u, v) in self.graph.edges() {
            push(u as i64);
            push(v as i64);
        }
        for s in &self.slot_neighbors {
            push(-1);
            s.iter().for_each(|&v| push(v as i64));
        }
        crate::canon::fnv1a(&bytes)
    }

    pub fn kagome_hexagon() -> Self {
        Self::from_predicate("kagome-hexagon", 2, [(4, 4), (-4, 8)], 3, |(a, b)| a * a + a * b + b * b <= 9)
    }

    /// The hexagon around an erased crossing of `Δ_3`, one per `3 × 3` cell;
    /// the remaining two vertices of each cell form the separator.
    pub fn delta3_hexagon() -> Self {
        Self::from_predicate("delta3-hexagon", 3, [(3, 0), (0, 3)], 1, |p| hex_norm(p) == 1)
    }

    /// The 36 vertices strictly inside the hexagon of six big triangles
    /// around an erased crossing of `Δ_4`, repeated with index 3 in the cell
    /// lattice. Separator vertices lie on the hexagon sides, 9 per tile.
    pub fn delta4_hexagon() -> Self {
        Self::from_predicate("delta4-hexagon", 4, [(4, 4), (-4, 8)], 3, |p| (1..=3).contains(&hex_norm(p)))
    }
}

/// Graph distance in the full triangular lattice.
pub fn hex_norm((a, b): Coord) -> i64 {
    (a.abs() + b.abs() + (a + b).abs()) / 2
}

/// Tiles and separator of a lattice quotient.
#[derive(Clone, Debug)]
pub struct Tiling {
    pub shape: TileShape,
    /// Reduced cover coordinates of each tile centre, row-major.
    pub centres: Vec<Coord>,
    /// `tiles[t][i]` is the vertex at local position `i` of tile `t`.
    pub tiles: Vec<Vec<usize>>,
    pub separator: VertexSet,
    /// `boundaries[t][j]` is the vertex in slot `j` of tile `t`. On small
    /// quotients two slots of one tile can be the same vertex.
    pub boundaries: Vec<Vec<usize>>,
}

impl Tiling {
    pub fn k(&self) -> usize {
        self.tiles.len()
    }

    pub fn tile_set(&self, t: usize) -> VertexSet {
        let n = self.separator.universe();
        VertexSet::from_ids(n, self.tiles[t].iter().copied()).expect("tile ids are vertices")
    }

    /// Distinct separator vertices adjacent to tile `t`.
    pub fn distinct_boundary(&self, t: usize) -> Vec<usize> {
        let mut b = self.boundaries[t].clone();
        b.sort_unstable();
        b.dedup();
        b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn regular(g: &Graph, d: usize) -> bool {
        (0..g.n()).all(|v| g.degree(v) == d)
    }

    #[test]
    fn kagome_counts() {
        let h = gen_kagome(6, 4).unwrap();
        assert_eq!(h.n(), 72);
        assert_eq!(h.edge_count(), 144);
        assert!(regular(&h, 4));
        assert!(h.is_connected());
        let small = gen_kagome(2, 2).unwrap();
        assert_eq!(small.n(), 12);
        assert!(regular(&small, 4));
    }

    #[test]
    fn kagome_rejects_odd_m_and_tiny_periods() {
        assert!(matches!(gen_kagome(6, 3), Err(Error::DegenerateQuotient(_))));
        assert!(matches!(gen_kagome(1, 4), Err(Error::DegenerateQuotient(_))));
    }

    #[test]
    fn kagome_coordinates_fill_the_rectangle() {
        let h = gen_kagome(6, 4).unwrap();
        for p in h.coords().unwrap() {
            assert!(p.x >= Ratio::from_integer(0) && p.x < Ratio::from_integer(12));
            assert!(p.y >= Ratio::from_integer(0) && p.y < Ratio::from_integer(4));
        }
    }

    #[test]
    fn delta_cell_structure() {
        let d3 = gen_delta(3, 2, 2).unwrap();
        assert_eq!(d3.n(), 32);
        let deg6 = (0..d3.n()).filter(|&v| d3.degree(v) == 6).count();
        assert_eq!(deg6, 8);
        assert!((0..d3.n()).all(|v| matches!(d3.degree(v), 4 | 6)));
        let d4 = gen_delta(4, 3, 3).unwrap();
        assert_eq!(d4.n(), 135);
        assert_eq!((0..d4.n()).filter(|&v| d4.degree(v) == 6).count(), 54);
    }

    #[test]
    fn triangular_is_six_regular() {
        let t = gen_triangular(4, 5).unwrap();
        assert_eq!(t.n(), 20);
        assert!(regular(&t, 6));
    }

    #[test]
    fn reduce_is_periodic() {
        let l = kagome(6, 4).unwrap();
        for p in [(3, 5), (-7, 2), (100, -33)] {
            for q in l.periods {
                assert_eq!(l.reduce(p), l.reduce((p.0 + q.0, p.1 + q.1)));
            }
        }
    }

    #[test]
    fn tile_shapes() {
        let k = TileShape::kagome_hexagon();
        assert_eq!(k.offsets.len(), 30);
        assert_eq!(k.boundary.len(), 12);
        assert!(k.slot_neighbors.iter().all(|s| s.len() == 2));
        let d3 = TileShape::delta3_hexagon();
        assert_eq!(d3.offsets.len(), 6);
        assert_eq!(d3.graph.edge_count(), 6);
        let d4 = TileShape::delta4_hexagon();
        assert_eq!(d4.offsets.len(), 36);
        assert_eq!(d4.boundary.len(), 18);
    }

    #[test]
    fn kagome_tilings() {
        let (_, t) = LatticeSpec::new(LatticeKind::Kagome, 6, 4).tiling().unwrap();
        assert_eq!(t.k(), 2);
        assert_eq!(t.separator.len(), 12);
        let (_, t) = LatticeSpec::new(LatticeKind::Kagome, 12, 4).tiling().unwrap();
        assert_eq!(t.k(), 4);
        assert_eq!(t.separator.len(), 24);
        let (_, t) = LatticeSpec::new(LatticeKind::Kagome, 12, 8).tiling().unwrap();
        assert!((0..t.k()).all(|i| t.distinct_boundary(i).len() == 12));
        assert!(matches!(LatticeSpec::new(LatticeKind::Kagome, 5, 4).tiling(), Err(Error::NotTileable(_))));
    }

    #[test]
    fn delta_tilings() {
        let (l, t) = LatticeSpec::new(LatticeKind::Delta3, 1, 1).tiling().unwrap();
        assert_eq!((l.graph.n(), t.k(), t.separator.len()), (8, 1, 2));
        let (l, t) = LatticeSpec::new(LatticeKind::Delta4, 3, 3).tiling().unwrap();
        assert_eq!((l.graph.n(), t.k(), t.separator.len()), (135, 3, 27));
        assert!(LatticeSpec::new(LatticeKind::Delta4, 2, 3).tiling().is_err());
    }
}
