//! Simple undirected graphs with bitset adjacency.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// A planar position attached to a lattice vertex.
///
/// Lattice generators emit `x` in units of the lattice spacing and `y` in
/// units of `sqrt(3)`, so both stay rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point {
    pub x: Ratio<i64>,
    pub y: Ratio<i64>,
}

impl Point {
    pub fn new(x: Ratio<i64>, y: Ratio<i64>) -> Self {
        Self { x, y }
    }
}

/// Undirected simple graph on the vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<VertexSet>,
    coords: Option<Vec<Point>>,
}

/// An induced subgraph together with the ambient id of each of its vertices.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `origin[i]` is the id in the parent graph of local vertex `i`.
    pub origin: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Self { adj: (0..n).map(|_| VertexSet::new(n)).collect(), coords: None }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds the edge `uv`; returns `false` if it was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::InvalidVertex { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let fresh = !self.adj[u].contains(v);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(fresh)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n() {
            out.extend(self.adj[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn coords(&self) -> Option<&[Point]> {
        self.coords.as_deref()
    }

    pub fn set_coords(&mut self, coords: Vec<Point>) -> Result<()> {
        if coords.len() != self.n() {
            return Err(Error::InvalidInput(alloc::format!(
                "{} coordinates for {} vertices",
                coords.len(),
                self.n()
            )));
        }
        self.coords = Some(coords);
        Ok(())
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    fn check(&self, s: &VertexSet) -> Result<()> {
        match s.last() {
            Some(v) if v >= self.n() => Err(Error::InvalidVertex { vertex: v, n: self.n() }),
            _ => Ok(()),
        }
    }

    /// Re-homes `s` into this graph's universe after range-checking it.
    fn own(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check(s)?;
        if s.universe() == self.n() {
            Ok(s.clone())
        } else {
            s.with_universe(self.n())
        }
    }

    /// `G[S]`, with local vertex `i` being the `i`-th smallest member of `S`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph> {
        self.check(s)?;
        let origin: Vec<usize> = s.iter().collect();
        let mut local = alloc::vec![usize::MAX; self.n()];
        for (i, &v) in origin.iter().enumerate() {
            local[v] = i;
        }
        let mut graph = Graph::new(origin.len());
        for (i, &v) in origin.iter().enumerate() {
            for w in self.adj[v].iter() {
                let j = local[w];
                if j != usize::MAX && j > i {
                    graph.adj[i].insert(j);
                    graph.adj[j].insert(i);
                }
            }
        }
        if let Some(c) = &self.coords {
            graph.coords = Some(origin.iter().map(|&v| c[v]).collect());
        }
        Ok(InducedSubgraph { graph, origin })
    }

    /// `G \ S`, the subgraph induced on the complement of `S`.
    pub fn without(&self, s: &VertexSet) -> Result<InducedSubgraph> {
        let s = self.own(s)?;
        self.induced_subgraph(&s.complement())
    }

    /// `N[W]`: `W` together with every neighbour of a vertex of `W`.
    pub fn closed_neighborhood(&self, w: &VertexSet) -> Result<VertexSet> {
        let mut out = self.own(w)?;
        for v in w.iter() {
            out.union_with(&self.adj[v]);
        }
        Ok(out)
    }

    pub fn is_independent(&self, s: &VertexSet) -> Result<bool> {
        self.check(s)?;
        Ok(s.iter().all(|v| s.iter().all(|w| !self.adj[v].contains(w))))
    }

    /// `N[S] = V(G)`.
    pub fn is_dominating(&self, s: &VertexSet) -> Result<bool> {
        Ok(self.closed_neighborhood(s)?.len() == self.n())
    }

    /// Connected components, each as a vertex set, ordered by least member.
    pub fn components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = VertexSet::new(n);
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen.contains(s) {
                continue;
            }
            let mut comp = VertexSet::new(n);
            seen.insert(s);
            stack.push(s);
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for w in self.adj[v].iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Vertices of `self` followed by those of `other`, shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let mut g = Graph::new(shift + other.n());
        for (u, v) in self.edges() {
            g.add_edge(u, v).expect("in range");
        }
        for (u, v) in other.edges() {
            g.add_edge(u + shift, v + shift).expect("in range");
        }
        g
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        let mut seen = VertexSet::new(n);
        if perm.len() != n {
            return Err(Error::InvalidInput(alloc::format!("permutation of length {} for {n} vertices", perm.len())));
        }
        for &p in perm {
            if p >= n || seen.contains(p) {
                return Err(Error::InvalidInput(alloc::string::String::from("not a permutation")));
            }
            seen.insert(p);
        }
        let mut g = Graph::new(n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])?;
        }
        Ok(g)
    }

    /// Calls `f` on every independent set, as an ascending vertex list, in
    /// lexicographic order (the preorder of the lexicographic trie). The empty
    /// set comes first. Fails once more than `cap` sets would be produced.
    pub fn for_each_independent_set<F: FnMut(&[usize])>(&self, cap: usize, mut f: F) -> Result<usize> {
        let mut count = 0usize;
        let mut stack = Vec::new();
        if self.n() <= 64 {
            let adj: Vec<u64> = self.adj.iter().map(VertexSet::low_mask).collect();
            let all = if self.n() == 64 { u64::MAX } else { (1u64 << self.n()) - 1 };
            dfs_small(&adj, all, &mut stack, &mut count, cap, &mut f)?;
        } else {
            dfs_large(self, self.vertex_set(), &mut stack, &mut count, cap, &mut f)?;
        }
        Ok(count)
    }

    /// All independent sets including the empty one, in increasing bitmask
    /// order (vertex `v` contributes `2^v`).
    pub fn enumerate_independent_sets(&self, cap: usize) -> Result<Vec<VertexSet>> {
        let n = self.n();
        let mut out = Vec::new();
        self.for_each_independent_set(cap, |s| {
            out.push(VertexSet::from_ids(n, s.iter().copied()).expect("in range"));
        })?;
        out.sort_by(VertexSet::cmp_bitmask);
        Ok(out)
    }

    /// `|I(G)|`, the number of independent sets including the empty one.
    ///
    /// Counts by branching on a maximum-degree vertex, component by component,
    /// so it copes with large sparse graphs without listing the sets.
    pub fn count_independent_sets(&self) -> BigUint {
        let mut memo = BTreeMap::new();
        count_rec(self, &self.vertex_set(), &mut memo)
    }
}

fn dfs_small<F: FnMut(&[usize])>(
    adj: &[u64],
    cand: u64,
    stack: &mut Vec<usize>,
    count: &mut usize,
    cap: usize,
    f: &mut F,
) -> Result<()> {
    *count += 1;
    if *count > cap {
        return Err(Error::EnumerationOverflow { cap });
    }
    f(stack);
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        stack.push(v);
        dfs_small(adj, rest & !adj[v], stack, count, cap, f)?;
        stack.pop();
    }
    Ok(())
}

fn dfs_large<F: FnMut(&[usize])>(
    g: &Graph,
    cand: VertexSet,
    stack: &mut Vec<usize>,
    count: &mut usize,
    cap: usize,
    f: &mut F,
) -> Result<()> {
    *count += 1;
    if *count > cap {
        return Err(Error::EnumerationOverflow { cap });
    }
    f(stack);
    let mut rest = cand;
    while let Some(v) = rest.first() {
        rest.remove(v);
        stack.push(v);
        let next = rest.difference(&g.adj[v]);
        dfs_large(g, next, stack, count, cap, f)?;
        stack.pop();
    }
    Ok(())
}

fn count_rec(g: &Graph, alive: &VertexSet, memo: &mut BTreeMap<VertexSet, BigUint>) -> BigUint {
    if alive.is_empty() {
        return BigUint::one();
    }
    if let Some(c) = memo.get(alive) {
        return c.clone();
    }
    // split off the component of the first live vertex
    let start = alive.first().expect("non-empty");
    let mut comp = VertexSet::new(g.n());
    let mut stack = alloc::vec![start];
    comp.insert(start);
    while let Some(v) = stack.pop() {
        for w in g.adj[v].intersection(alive).iter() {
            if !comp.contains(w) {
                comp.insert(w);
                stack.push(w);
            }
        }
    }
    let result = if &comp != alive {
        let rest = alive.difference(&comp);
        count_rec(g, &comp, memo) * count_rec(g, &rest, memo)
    } else if comp.len() == 1 {
        BigUint::from(2u8)
    } else {
        let v = comp
            .iter()
            .max_by_key(|&v| (g.adj[v].intersection(alive).len(), core::cmp::Reverse(v)))
            .expect("non-empty");
        let mut without_v = alive.clone();
        without_v.remove(v);
        let mut without_nv = without_v.difference(&g.adj[v]);
        without_nv.remove(v);
        count_rec(g, &without_v, memo) + count_rec(g, &without_nv, memo)
    };
    debug_assert!(!result.is_zero());
    memo.insert(alive.clone(), result.clone());
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn set(n: usize, ids: &[usize]) -> VertexSet {
        VertexSet::from_ids(n, ids.iter().copied()).unwrap()
    }

    #[test]
    fn induced_subgraph_of_c6_drops_antipodes() {
        // labels 1..6 are ids 0..5; remove 1 and 4
        let c6 = cycle(6);
        let sub = c6.induced_subgraph(&set(6, &[1, 2, 4, 5])).unwrap();
        assert_eq!(sub.origin, vec![1, 2, 4, 5]);
        assert_eq!(sub.graph.edges(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn induced_subgraph_extremes() {
        let c6 = cycle(6);
        let empty = c6.induced_subgraph(&VertexSet::new(6)).unwrap();
        assert_eq!(empty.graph.n(), 0);
        let all = c6.induced_subgraph(&c6.vertex_set()).unwrap();
        assert_eq!(all.graph, c6);
        assert!(matches!(
            c6.induced_subgraph(&set(8, &[7])),
            Err(Error::InvalidVertex { vertex: 7, n: 6 })
        ));
    }

    #[test]
    fn closed_neighborhoods() {
        let c6 = cycle(6);
        assert_eq!(c6.closed_neighborhood(&set(6, &[0])).unwrap(), set(6, &[5, 0, 1]));
        assert!(c6.closed_neighborhood(&VertexSet::new(6)).unwrap().is_empty());
        assert_eq!(c6.closed_neighborhood(&c6.vertex_set()).unwrap(), c6.vertex_set());
    }

    #[test]
    fn forests() {
        let p4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(p4.is_forest());
        assert!(!cycle(6).is_forest());
        let two_paths = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
        assert!(two_paths.is_forest());
    }

    #[test]
    fn independent_set_counts() {
        let e = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let sets = e.enumerate_independent_sets(10).unwrap();
        assert_eq!(sets, vec![set(2, &[]), set(2, &[0]), set(2, &[1])]);
        assert_eq!(Graph::new(0).enumerate_independent_sets(10).unwrap(), vec![VertexSet::new(0)]);
        assert_eq!(cycle(6).enumerate_independent_sets(100).unwrap().len(), 18);
        assert_eq!(cycle(6).count_independent_sets(), BigUint::from(18u8));
        assert_eq!(
            cycle(6).enumerate_independent_sets(17),
            Err(Error::EnumerationOverflow { cap: 17 })
        );
    }

    #[test]
    fn bitmask_order_of_enumeration() {
        let sets = cycle(6).enumerate_independent_sets(100).unwrap();
        for w in sets.windows(2) {
            assert_eq!(w[0].cmp_bitmask(&w[1]), core::cmp::Ordering::Less);
        }
    }

    #[test]
    fn counting_matches_enumeration_beyond_one_word() {
        let path = |n: usize| {
            let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            Graph::from_edges(n, &edges).unwrap()
        };
        // |I(P_n)| = F(n + 2)
        assert_eq!(path(20).count_independent_sets(), BigUint::from(17711u32));
        assert_eq!(path(20).for_each_independent_set(usize::MAX, |_| {}).unwrap(), 17711);
        assert_eq!(path(70).count_independent_sets(), BigUint::from(498_454_011_879_264u64));
        let mut k60 = Graph::new(60);
        for u in 0..60 {
            for v in u + 1..60 {
                k60.add_edge(u, v).unwrap();
            }
        }
        let wide = k60.disjoint_union(&path(12));
        assert_eq!(wide.n(), 72);
        let listed = wide.for_each_independent_set(usize::MAX, |_| {}).unwrap();
        assert_eq!(listed, 61 * 377);
        assert_eq!(wide.count_independent_sets(), BigUint::from(listed));
    }

    #[test]
    fn dominating() {
        let c6 = cycle(6);
        assert!(c6.is_dominating(&set(6, &[0, 3])).unwrap());
        assert!(!c6.is_dominating(&set(6, &[0])).unwrap());
        assert!(c6.is_dominating(&c6.vertex_set()).unwrap());
    }

    #[test]
    fn edges_are_simple() {
        let mut g = Graph::new(3);
        assert!(g.add_edge(0, 1).unwrap());
        assert!(!g.add_edge(1, 0).unwrap());
        assert_eq!(g.add_edge(2, 2), Err(Error::SelfLoop(2)));
        assert_eq!(g.add_edge(0, 3), Err(Error::InvalidVertex { vertex: 3, n: 3 }));
    }
}
