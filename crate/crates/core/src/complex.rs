//! Finite simplicial complexes stored as sorted face lists, and the
//! independence complex of a graph.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// All faces with a fixed number of vertices, each an ascending vertex list,
/// stored back to back in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    size: usize,
    count: usize,
    data: Vec<u32>,
}

impl Layer {
    fn new(size: usize) -> Self {
        Self { size, count: 0, data: Vec::new() }
    }

    fn push(&mut self, face: &[u32]) {
        debug_assert_eq!(face.len(), self.size);
        self.data.extend_from_slice(face);
        self.count += 1;
    }

    /// Number of vertices per face (dimension + 1).
    pub fn face_size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn face(&self, i: usize) -> &[u32] {
        &self.data[i * self.size..(i + 1) * self.size]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> + '_ {
        (0..self.count).map(move |i| self.face(i))
    }

    /// Index of `face` in this layer, by binary search.
    pub fn index_of(&self, face: &[u32]) -> Option<usize> {
        if face.len() != self.size {
            return None;
        }
        let (mut lo, mut hi) = (0, self.count);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.face(mid).cmp(face) {
                core::cmp::Ordering::Less => lo = mid + 1,
                core::cmp::Ordering::Greater => hi = mid,
                core::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// A simplicial complex on the vertex ids `0..n_vertices`, always containing
/// the empty face.
///
/// `layer(k)` holds the faces with `k` vertices, i.e. dimension `k - 1`, so
/// `layer(0)` is the single empty face. Faces in a layer are sorted
/// lexicographically, which fixes the orientation convention used by the
/// boundary maps: a face is oriented by its ascending vertex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n_vertices: usize,
    layers: Vec<Layer>,
}

impl SimplicialComplex {
    /// The empty complex `{∅}` on `n_vertices` unused vertex ids.
    pub fn empty(n_vertices: usize) -> Self {
        let mut l0 = Layer::new(0);
        l0.push(&[]);
        Self { n_vertices, layers: alloc::vec![l0] }
    }

    /// Builds a complex from arbitrary faces, closing them downward.
    pub fn from_faces<I, F>(n_vertices: usize, faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        let mut all: Vec<Vec<u32>> = Vec::new();
        for f in faces {
            let mut f: Vec<u32> = f.as_ref().iter().map(|&v| v as u32).collect();
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.last() {
                if v as usize >= n_vertices {
                    return Err(Error::InvalidVertex { vertex: v as usize, n: n_vertices });
                }
            }
            // all subsets
            let k = f.len();
            if k > 24 {
                return Err(Error::InvalidInput(alloc::format!("face with {k} vertices is too large to close")));
            }
            for mask in 0u32..(1 << k) {
                all.push((0..k).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
            }
        }
        all.push(Vec::new());
        all.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all.dedup();
        let mut cx = Self { n_vertices, layers: Vec::new() };
        for f in &all {
            while cx.layers.len() <= f.len() {
                let size = cx.layers.len();
                cx.layers.push(Layer::new(size));
            }
            cx.layers[f.len()].push(f);
        }
        Ok(cx)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    /// Layers `0..=max_face_size`; `layers()[k]` holds faces with `k` vertices.
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, size: usize) -> Option<&Layer> {
        self.layers.get(size)
    }

    /// Dimension of the largest face; `-1` for the empty complex.
    pub fn dim(&self) -> i64 {
        self.layers.len() as i64 - 2
    }

    /// `|K|`, the number of faces including the empty one.
    pub fn face_count(&self) -> usize {
        self.layers.iter().map(Layer::len).sum()
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        self.layers.get(face.len()).and_then(|l| l.index_of(face)).is_some()
    }

    /// `f_i` counts, indexed by face size: entry `k` is the number of faces with
    /// `k` vertices, so entry 0 is the empty face.
    pub fn f_vector(&self) -> Vec<u64> {
        self.layers.iter().map(|l| l.len() as u64).collect()
    }

    /// Faces of `self` inside `w` whose union with `sigma` is again a face.
    ///
    /// With `w` the complement of a vertex set `U` and `sigma` a face on `U`
    /// this is the link of `sigma` relative to `W`.
    pub fn relative_link(&self, sigma: &[u32], w: &[bool]) -> Self {
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for layer in &self.layers {
            for f in layer.iter() {
                if f.iter().all(|&v| w[v as usize]) {
                    let mut u: Vec<u32> = f.iter().chain(sigma).copied().collect();
                    u.sort_unstable();
                    if self.contains(&u) {
                        faces.push(f.iter().map(|&v| v as usize).collect());
                    }
                }
            }
        }
        Self::from_faces(self.n_vertices, faces).expect("faces of a valid complex")
    }

    /// Induced subcomplex on the vertices flagged in `keep`.
    pub fn induced(&self, keep: &[bool]) -> Self {
        self.relative_link(&[], keep)
    }
}

/// `I(G)`: the complex whose faces are the independent sets of `g`.
pub fn independence_complex(g: &Graph, cap: usize) -> Result<SimplicialComplex> {
    let mut layers: Vec<Layer> = alloc::vec![Layer::new(0)];
    let mut buf: Vec<u32> = Vec::new();
    g.for_each_independent_set(cap, |s| {
        let k = s.len();
        while layers.len() <= k {
            let size = layers.len();
            layers.push(Layer::new(size));
        }
        buf.clear();
        buf.extend(s.iter().map(|&v| v as u32));
        layers[k].push(&buf);
    })?;
    Ok(SimplicialComplex { n_vertices: g.n(), layers })
}

/// Coefficients of the f-polynomial: entry `i` counts faces with `i` vertices.
pub fn f_polynomial(k: &SimplicialComplex) -> Vec<u64> {
    k.f_vector()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn edge_gives_two_points() {
        let e = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let k = independence_complex(&e, 100).unwrap();
        assert_eq!(k.dim(), 0);
        assert_eq!(f_polynomial(&k), vec![1, 2]);
    }

    #[test]
    fn two_edge_matching_is_a_square() {
        let m = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let k = independence_complex(&m, 100).unwrap();
        assert_eq!(k.face_count(), 9);
        assert_eq!(f_polynomial(&k), vec![1, 4, 4]);
    }

    #[test]
    fn empty_graph_gives_empty_complex() {
        let k = independence_complex(&Graph::new(0), 100).unwrap();
        assert_eq!(k, SimplicialComplex::empty(0));
        assert_eq!(k.dim(), -1);
        assert_eq!(f_polynomial(&k), vec![1]);
    }

    #[test]
    fn c6_f_vector_and_order() {
        let k = independence_complex(&cycle(6), 100).unwrap();
        assert_eq!(f_polynomial(&k), vec![1, 6, 9, 2]);
        let l2 = k.layer(2).unwrap();
        let faces: Vec<_> = l2.iter().map(|f| f.to_vec()).collect();
        let mut sorted = faces.clone();
        sorted.sort();
        assert_eq!(faces, sorted);
        assert_eq!(l2.index_of(&[0, 3]), Some(1));
        assert_eq!(k.layer(3).unwrap().iter().collect::<Vec<_>>(), vec![&[0u32, 2, 4][..], &[1, 3, 5][..]]);
    }

    #[test]
    fn from_faces_closes_downward() {
        let k = SimplicialComplex::from_faces(4, [vec![0, 1, 2], vec![2, 3]]).unwrap();
        assert_eq!(k.f_vector(), vec![1, 4, 4, 1]);
        assert!(k.contains(&[1, 2]));
        assert!(!k.contains(&[1, 3]));
    }

    #[test]
    fn relative_link_of_a_vertex() {
        let k = independence_complex(&cycle(6), 100).unwrap();
        let w = [false, true, true, true, true, true];
        let lk = k.relative_link(&[0], &w);
        // link of a vertex of C6 is I(P3) on {2,3,4}
        assert_eq!(lk.f_vector(), vec![1, 3, 1]);
        let induced = k.induced(&w);
        assert_eq!(induced.f_vector(), vec![1, 5, 6, 1]);
    }
}
