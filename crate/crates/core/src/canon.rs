//! Canonical forms for isomorphism testing of small sparse graphs.
//!
//! Each connected component is canonized separately by colour refinement
//! plus individualisation: starting from the degree partition, the partition
//! is refined to an equitable one, a vertex of the first smallest non-trivial
//! cell is individualised, and the search recurses until the partition is
//! discrete. Every discrete leaf orders the vertices; the code is the
//! lexicographically least upper-triangle adjacency bit string over all
//! leaves. Interchangeable twin vertices are branched on only once.
//! Component codes are then sorted and concatenated.

use alloc::vec::Vec;

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Byte string that is equal for two graphs iff they are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Short hexadecimal digest (FNV-1a), handy for reports.
    pub fn digest(&self) -> u64 {
        fnv1a(&self.0)
    }
}

pub(crate) fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

pub fn canonical_code(g: &Graph) -> CanonicalCode {
    let mut comps: Vec<Vec<u8>> = g
        .components()
        .iter()
        .map(|c| {
            let sub = g.induced_subgraph(c).expect("component of g");
            connected_code(&sub.graph)
        })
        .collect();
    comps.sort();
    let mut out = Vec::new();
    out.extend_from_slice(&(g.n() as u32).to_le_bytes());
    out.extend_from_slice(&(comps.len() as u32).to_le_bytes());
    for c in comps {
        out.extend_from_slice(&(c.len() as u32).to_le_bytes());
        out.extend_from_slice(&c);
    }
    CanonicalCode(out)
}

type Partition = Vec<Vec<usize>>;

struct Search<'a> {
    g: &'a Graph,
    best: Option<Vec<u8>>,
}

fn connected_code(g: &Graph) -> Vec<u8> {
    let n = g.n();
    let mut header = Vec::new();
    header.extend_from_slice(&(n as u32).to_le_bytes());
    if n <= 1 {
        return header;
    }
    let mut by_degree: Vec<(usize, usize)> = (0..n).map(|v| (g.degree(v), v)).collect();
    by_degree.sort_unstable();
    let mut part: Partition = Vec::new();
    for (d, v) in by_degree {
        match part.last_mut() {
            Some(cell) if g.degree(cell[0]) == d => cell.push(v),
            _ => part.push(alloc::vec![v]),
        }
    }
    let mut search = Search { g, best: None };
    let part = refine(g, part);
    search.descend(part);
    header.extend(search.best.expect("at least one leaf"));
    header
}

/// Splits cells by neighbour counts into every cell until nothing changes.
/// Cell order is derived only from the signatures, so the result is
/// equivariant under relabelling.
fn refine(g: &Graph, mut part: Partition) -> Partition {
    let n = g.n();
    loop {
        let mut cell_of = alloc::vec![0usize; n];
        for (i, cell) in part.iter().enumerate() {
            for &v in cell {
                cell_of[v] = i;
            }
        }
        let mut next: Partition = Vec::with_capacity(part.len());
        let mut changed = false;
        for cell in &part {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| {
                    let mut counts = alloc::vec![0u32; part.len()];
                    for w in g.neighbors(v).iter() {
                        counts[cell_of[w]] += 1;
                    }
                    (counts, v)
                })
                .collect();
            keyed.sort();
            let start = next.len();
            for (i, (sig, v)) in keyed.iter().enumerate() {
                if i > 0 && keyed[i - 1].0 == *sig {
                    next.last_mut().expect("group started").push(*v);
                } else {
                    next.push(alloc::vec![*v]);
                }
            }
            if next.len() - start > 1 {
                changed = true;
            }
        }
        part = next;
        if !changed {
            return part;
        }
    }
}

impl Search<'_> {
    fn descend(&mut self, part: Partition) {
        let target = part
            .iter()
            .enumerate()
            .filter(|(_, c)| c.len() > 1)
            .min_by_key(|(i, c)| (c.len(), *i))
            .map(|(i, _)| i);
        let Some(t) = target else {
            let order: Vec<usize> = part.iter().map(|c| c[0]).collect();
            let code = leaf_code(self.g, &order);
            if self.best.as_ref().is_none_or(|b| code < *b) {
                self.best = Some(code);
            }
            return;
        };
        let cell = &part[t];
        let mut tried: Vec<usize> = Vec::new();
        for &v in cell {
            if tried.iter().any(|&u| twins(self.g, u, v)) {
                continue;
            }
            tried.push(v);
            let mut child: Partition = Vec::with_capacity(part.len() + 1);
            child.extend(part[..t].iter().cloned());
            child.push(alloc::vec![v]);
            child.push(cell.iter().copied().filter(|&w| w != v).collect());
            child.extend(part[t + 1..].iter().cloned());
            let child = refine(self.g, child);
            self.descend(child);
        }
    }
}

/// `u` and `v` have the same neighbours apart from each other, so the
/// transposition `(u v)` is an automorphism.
fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let mut a: VertexSet = g.neighbors(u).clone();
    let mut b: VertexSet = g.neighbors(v).clone();
    a.remove(v);
    b.remove(u);
    a == b
}

fn leaf_code(g: &Graph, order: &[usize]) -> Vec<u8> {
    let n = order.len();
    let mut bytes = alloc::vec![0u8; (n * (n - 1) / 2).div_ceil(8)];
    let mut bit = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                bytes[bit / 8] |= 0x80 >> (bit % 8);
            }
            bit += 1;
        }
    }
    bytes
}
