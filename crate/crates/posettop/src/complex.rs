//! Abstract simplicial complexes, stored by their facets.
//!
//! Two degenerate-ish states are distinguished: the *degenerate* complex
//! (no faces at all, `facets = []`, dimension -2) and the *empty* complex
//! `{∅}` (`facets = [[]]`, dimension -1). The empty set is a face of every
//! nondegenerate complex.

use crate::poset::{Derived, Poset, PosetError};
use itertools::Itertools;
use num::{BigInt, One, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("vertex id {0} is out of range")]
    InvalidVertex(usize),
    #[error("the degenerate complex has no faces")]
    Degenerate,
    #[error("{0:?} is not a face")]
    NotAFace(Vec<usize>),
    #[error("vertex count {0} exceeds the limit of {1} for this operation")]
    TooManyVertices(usize, usize),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// An abstract simplicial complex on vertices `0..vertex_count`.
/// Vertices need not all be used; an isolated vertex is part of the
/// complex only when listed as a singleton facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    /// inclusion-maximal faces, each sorted; the list sorted by
    /// (size, lexicographic)
    facets: Vec<Vec<usize>>,
}

impl SimplicialComplex {
    /// Build from a list of faces. Faces are treated as sets (duplicates
    /// within a face collapse), non-maximal faces are dropped, and the
    /// facet list is put in canonical (size, lex) order.
    pub fn from_facets(
        vertex_count: usize,
        faces: Vec<Vec<usize>>,
    ) -> Result<SimplicialComplex, ComplexError> {
        let mut cleaned: Vec<Vec<usize>> = Vec::with_capacity(faces.len());
        for mut f in faces {
            for &v in &f {
                if v >= vertex_count {
                    return Err(ComplexError::InvalidVertex(v));
                }
            }
            f.sort_unstable();
            f.dedup();
            cleaned.push(f);
        }
        cleaned.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        cleaned.dedup();
        // keep only inclusion-maximal faces
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for (i, f) in cleaned.iter().enumerate() {
            let maximal = !cleaned[i + 1..]
                .iter()
                .any(|g| g.len() > f.len() && is_subset(f, g));
            if maximal {
                facets.push(f.clone());
            }
        }
        Ok(SimplicialComplex {
            vertex_count,
            facets,
        })
    }

    /// The degenerate complex (no faces) on the given vertex set.
    pub fn degenerate(vertex_count: usize) -> SimplicialComplex {
        SimplicialComplex {
            vertex_count,
            facets: Vec::new(),
        }
    }

    /// The empty complex {∅} on the given vertex set.
    pub fn empty(vertex_count: usize) -> SimplicialComplex {
        SimplicialComplex {
            vertex_count,
            facets: vec![Vec::new()],
        }
    }

    /// The full simplex on all vertices.
    pub fn simplex(vertex_count: usize) -> SimplicialComplex {
        SimplicialComplex {
            vertex_count,
            facets: vec![(0..vertex_count).collect()],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn is_degenerate(&self) -> bool {
        self.facets.is_empty()
    }

    /// dim of the complex: -2 for degenerate, -1 for {∅}.
    pub fn dim(&self) -> i64 {
        self.facets
            .iter()
            .map(|f| f.len() as i64 - 1)
            .max()
            .unwrap_or(-2)
    }

    pub fn is_pure(&self) -> bool {
        self.facets
            .windows(2)
            .all(|w| w[0].len() == w[1].len())
    }

    /// Face test; `face` need not be sorted. The empty set is a face of
    /// every nondegenerate complex.
    pub fn contains_face(&self, face: &[usize]) -> bool {
        let mut f = face.to_vec();
        f.sort_unstable();
        f.dedup();
        self.facets.iter().any(|g| is_subset(&f, g))
    }

    /// All faces of the given dimension, sorted lexicographically.
    /// Dimension -1 gives `[∅]` for any nondegenerate complex.
    pub fn faces_of_dim(&self, k: i64) -> Vec<Vec<usize>> {
        if k < -1 || self.is_degenerate() {
            return Vec::new();
        }
        if k == -1 {
            return vec![Vec::new()];
        }
        let size = (k + 1) as usize;
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for facet in &self.facets {
            if facet.len() < size {
                continue;
            }
            for comb in facet.iter().copied().combinations(size) {
                out.insert(comb);
            }
        }
        out.into_iter().collect()
    }

    /// f-vector `(f_{-1}, f_0, ..., f_d)`; empty for the degenerate
    /// complex.
    pub fn f_vector(&self) -> Vec<BigInt> {
        if self.is_degenerate() {
            return Vec::new();
        }
        let d = self.dim();
        let mut f = vec![BigInt::one()];
        for k in 0..=d {
            f.push(BigInt::from(self.faces_of_dim(k).len()));
        }
        f
    }

    /// h-vector `(h_0, ..., h_{d+1})` determined by
    /// `sum h_i x^{d+1-i} = sum f_{i-1} (x-1)^{d+1-i}`.
    pub fn h_vector(&self) -> Vec<BigInt> {
        let f = self.f_vector();
        if f.is_empty() {
            return Vec::new();
        }
        let d = f.len() - 1; // d = dim + 1
        let mut h = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut acc = BigInt::zero();
            for i in 0..=k {
                let c = crate::oracles::binomial(d - i, k - i);
                let term = c * &f[i];
                if (k - i) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            h.push(acc);
        }
        h
    }

    /// Reduced Euler characteristic: `sum_{i >= -1} (-1)^i f_i`;
    /// 0 for the degenerate complex, -1 for {∅}.
    pub fn reduced_euler_characteristic(&self) -> BigInt {
        let f = self.f_vector();
        let mut acc = BigInt::zero();
        for (idx, fi) in f.iter().enumerate() {
            // idx 0 holds f_{-1}
            if idx % 2 == 0 {
                acc -= fi;
            } else {
                acc += fi;
            }
        }
        acc
    }

    /// Join with another complex; the other complex's vertices are
    /// relabeled by offsetting with `self.vertex_count`.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let n = self.vertex_count + other.vertex_count;
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for f in &self.facets {
            for g in &other.facets {
                let mut h = f.clone();
                h.extend(g.iter().map(|&v| v + self.vertex_count));
                facets.push(h);
            }
        }
        // joins of facets are facets: no filtering needed, but reuse the
        // constructor for canonical order
        SimplicialComplex::from_facets(n, facets).expect("join vertices are in range")
    }

    /// Link of a face: `{G : G ∩ F = ∅, G ∪ F ∈ Δ}`. The vertex set is
    /// unchanged.
    pub fn link(&self, face: &[usize]) -> Result<SimplicialComplex, ComplexError> {
        if !self.contains_face(face) {
            return Err(ComplexError::NotAFace(face.to_vec()));
        }
        let mut f = face.to_vec();
        f.sort_unstable();
        f.dedup();
        let mut facets = Vec::new();
        for g in &self.facets {
            if is_subset(&f, g) {
                facets.push(g.iter().copied().filter(|v| !f.contains(v)).collect());
            }
        }
        SimplicialComplex::from_facets(self.vertex_count, facets)
    }

    /// k-skeleton: all faces of dimension at most k.
    pub fn skeleton(&self, k: i64) -> SimplicialComplex {
        if k <= -2 || self.is_degenerate() {
            return SimplicialComplex::degenerate(self.vertex_count);
        }
        if k == -1 {
            return SimplicialComplex::empty(self.vertex_count);
        }
        let size = (k + 1) as usize;
        let mut faces = Vec::new();
        for f in &self.facets {
            if f.len() <= size {
                faces.push(f.clone());
            } else {
                for comb in f.iter().copied().combinations(size) {
                    faces.push(comb);
                }
            }
        }
        SimplicialComplex::from_facets(self.vertex_count, faces)
            .expect("skeleton vertices are in range")
    }

    /// Pure m-skeleton: the subcomplex generated by all faces of
    /// dimension exactly m. Degenerate when there are none.
    pub fn pure_skeleton(&self, m: i64) -> SimplicialComplex {
        let faces = self.faces_of_dim(m);
        SimplicialComplex::from_facets(self.vertex_count, faces)
            .expect("pure skeleton vertices are in range")
    }

    /// The subcomplex generated by the facets of dimension at least m.
    pub fn facets_at_least(&self, m: i64) -> SimplicialComplex {
        let faces: Vec<Vec<usize>> = self
            .facets
            .iter()
            .filter(|f| f.len() as i64 - 1 >= m)
            .cloned()
            .collect();
        SimplicialComplex {
            vertex_count: self.vertex_count,
            facets: faces,
        }
    }

    /// Subcomplex generated by the given faces of this complex.
    pub fn generated(&self, faces: &[Vec<usize>]) -> Result<SimplicialComplex, ComplexError> {
        for f in faces {
            if !self.contains_face(f) {
                return Err(ComplexError::NotAFace(f.clone()));
            }
        }
        SimplicialComplex::from_facets(self.vertex_count, faces.to_vec())
    }

    /// Suspension: join with two new isolated vertices.
    pub fn suspension(&self) -> SimplicialComplex {
        let two = SimplicialComplex::from_facets(2, vec![vec![0], vec![1]])
            .expect("two points are valid");
        self.join(&two)
    }

    /// Alexander dual on the fixed vertex set: `{V - F : F ∉ Δ}`. Its
    /// facets are complements of the minimal nonfaces. The dual of the
    /// degenerate complex is the full simplex and vice versa.
    pub fn alexander_dual(&self) -> Result<SimplicialComplex, ComplexError> {
        const MAX_DUAL_VERTICES: usize = 20;
        let n = self.vertex_count;
        if n > MAX_DUAL_VERTICES {
            return Err(ComplexError::TooManyVertices(n, MAX_DUAL_VERTICES));
        }
        if self.is_degenerate() {
            return Ok(SimplicialComplex::simplex(n));
        }
        // minimal nonfaces: S ∉ Δ with every S - {s} ∈ Δ; each such S is
        // F ∪ {v} for the face F = S minus its largest element
        let mut all_faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for k in -1..=self.dim() {
            all_faces.extend(self.faces_of_dim(k));
        }
        let mut minimal_nonfaces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in &all_faces {
            for v in 0..n {
                if f.contains(&v) {
                    continue;
                }
                let mut s = f.clone();
                s.push(v);
                s.sort_unstable();
                if all_faces.contains(&s) {
                    continue;
                }
                let minimal = (0..s.len()).all(|i| {
                    let mut t = s.clone();
                    t.remove(i);
                    all_faces.contains(&t)
                });
                if minimal {
                    minimal_nonfaces.insert(s);
                }
            }
        }
        let facets: Vec<Vec<usize>> = minimal_nonfaces
            .into_iter()
            .map(|s| (0..n).filter(|v| !s.contains(v)).collect())
            .collect();
        SimplicialComplex::from_facets(n, facets)
    }

    /// The poset of nonempty faces ordered by inclusion. Labels look like
    /// `{1,3}`. Errors on the degenerate complex; `{∅}` gives the empty
    /// poset.
    pub fn face_poset(&self) -> Result<Poset, ComplexError> {
        if self.is_degenerate() {
            return Err(ComplexError::Degenerate);
        }
        let mut faces: Vec<Vec<usize>> = Vec::new();
        for k in 0..=self.dim() {
            faces.extend(self.faces_of_dim(k));
        }
        let labels: Vec<String> = faces
            .iter()
            .map(|f| format!("{{{}}}", f.iter().map(|v| v.to_string()).join(",")))
            .collect();
        let mut pairs = Vec::new();
        for (i, f) in faces.iter().enumerate() {
            for (j, g) in faces.iter().enumerate() {
                if g.len() == f.len() + 1 && is_subset(f, g) {
                    pairs.push((i, j));
                }
            }
        }
        Ok(Poset::from_covers(labels, &pairs)?)
    }

    /// The face lattice: the face poset with a fresh bottom (the empty
    /// face) and a fresh top adjoined.
    pub fn face_lattice(&self) -> Result<Poset, ComplexError> {
        Ok(self.face_poset()?.bounded_extension().poset)
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    // both sorted
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// Order complex of a poset: vertices are the elements, facets the
/// maximal chains. The empty poset gives {∅}.
pub fn order_complex(p: &Poset) -> SimplicialComplex {
    if p.is_empty() {
        return SimplicialComplex::empty(0);
    }
    let facets = p.maximal_chains();
    SimplicialComplex::from_facets(p.len(), facets).expect("chain vertices are in range")
}

/// Order complex of the proper part of a poset, with the id mapping back
/// into the original poset.
pub fn proper_part_complex(p: &Poset) -> (SimplicialComplex, Derived) {
    let derived = p.proper_part();
    let complex = order_complex(&derived.poset);
    (complex, derived)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn maximality_filter() {
        let c = SimplicialComplex::from_facets(3, vec![vec![0, 1, 2], vec![0, 1]]).unwrap();
        assert_eq!(c.facets(), &[vec![0, 1, 2]]);
        let d = SimplicialComplex::from_facets(3, vec![vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(d.facets(), &[vec![1, 2]]);
    }

    #[test]
    fn degenerate_and_empty_states() {
        let void = SimplicialComplex::from_facets(0, vec![]).unwrap();
        assert!(void.is_degenerate());
        assert_eq!(void.dim(), -2);
        assert_eq!(void.f_vector(), Vec::<BigInt>::new());
        assert_eq!(void.reduced_euler_characteristic(), BigInt::from(0));
        assert!(!void.contains_face(&[]));

        let empty = SimplicialComplex::from_facets(3, vec![vec![]]).unwrap();
        assert!(!empty.is_degenerate());
        assert_eq!(empty.dim(), -1);
        assert_eq!(empty.f_vector(), vec![BigInt::from(1)]);
        assert_eq!(empty.reduced_euler_characteristic(), BigInt::from(-1));
        assert!(empty.contains_face(&[]));
        assert!(!empty.contains_face(&[0]));
    }

    #[test]
    fn hollow_triangle_counts() {
        let c = hollow_triangle();
        assert_eq!(c.dim(), 1);
        assert!(c.is_pure());
        assert_eq!(c.f_vector(), vec![BigInt::from(1), BigInt::from(3), BigInt::from(3)]);
        assert_eq!(c.reduced_euler_characteristic(), BigInt::from(-1));
        assert_eq!(c.faces_of_dim(0).len(), 3);
        assert_eq!(c.faces_of_dim(1).len(), 3);
        assert_eq!(c.faces_of_dim(-1), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn boundary_of_tetrahedron_h_vector() {
        let facets: Vec<Vec<usize>> = (0..4usize).combinations(3).collect();
        let c = SimplicialComplex::from_facets(4, facets).unwrap();
        assert_eq!(
            c.f_vector(),
            vec![1, 4, 6, 4].into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
        assert_eq!(
            c.h_vector(),
            vec![1, 1, 1, 1].into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
        assert_eq!(c.reduced_euler_characteristic(), BigInt::from(1)); // a 2-sphere
    }

    #[test]
    fn order_complex_shapes() {
        use crate::poset::Poset;
        // proper part of B_3: a hollow hexagon
        let mut pairs = Vec::new();
        for s in 0u32..8 {
            for b in 0..3 {
                if s >> b & 1 == 0 {
                    pairs.push((s as usize, (s | 1 << b) as usize));
                }
            }
        }
        let labels = (0..8).map(|i| i.to_string()).collect();
        let b3 = Poset::from_covers(labels, &pairs).unwrap();
        let (hexagon, _) = proper_part_complex(&b3);
        assert_eq!(hexagon.faces_of_dim(0).len(), 6);
        assert_eq!(hexagon.faces_of_dim(1).len(), 6);
        assert_eq!(hexagon.dim(), 1);
        // a circle: reduced chi = -beta_1 = -1, matching mu(B_3)
        assert_eq!(hexagon.reduced_euler_characteristic(), BigInt::from(-1));

        // empty poset
        let empty = Poset::from_covers(Vec::new(), &[]).unwrap();
        assert_eq!(order_complex(&empty).dim(), -1);

        // 2-antichain: two isolated points
        let anti = Poset::from_covers(vec!["a".into(), "b".into()], &[]).unwrap();
        let two = order_complex(&anti);
        assert_eq!(two.facets(), &[vec![0], vec![1]]);
    }

    #[test]
    fn face_poset_and_barycentric() {
        let edge = SimplicialComplex::from_facets(2, vec![vec![0, 1]]).unwrap();
        let fp = edge.face_poset().unwrap();
        assert_eq!(fp.len(), 3);
        assert_eq!(fp.maximal_elements().len(), 1);
        assert_eq!(fp.minimal_elements().len(), 2);

        // barycentric subdivision of the hollow triangle is a hollow hexagon
        let tri = hollow_triangle();
        let bary = order_complex(&tri.face_poset().unwrap());
        assert_eq!(bary.faces_of_dim(0).len(), 6);
        assert_eq!(bary.faces_of_dim(1).len(), 6);
        assert_eq!(
            bary.reduced_euler_characteristic(),
            tri.reduced_euler_characteristic()
        );
    }

    #[test]
    fn face_lattice_mobius_is_euler_characteristic() {
        let tri = hollow_triangle();
        let lattice = tri.face_lattice().unwrap();
        assert_eq!(lattice.len(), 8);
        assert_eq!(
            lattice.mobius_invariant().unwrap(),
            tri.reduced_euler_characteristic()
        );
    }

    #[test]
    fn join_and_suspension() {
        let two = SimplicialComplex::from_facets(2, vec![vec![0], vec![1]]).unwrap();
        let square = two.suspension();
        assert_eq!(square.faces_of_dim(0).len(), 4);
        assert_eq!(square.faces_of_dim(1).len(), 4);
        assert_eq!(square.dim(), 1);
        assert_eq!(square.reduced_euler_characteristic(), BigInt::from(-1));

        // chi of a join: chi(A * B) = -chi(A) chi(B)
        let tri = hollow_triangle();
        let j = tri.join(&two);
        assert_eq!(
            j.reduced_euler_characteristic(),
            -(tri.reduced_euler_characteristic() * two.reduced_euler_characteristic())
        );

        // join with {∅} returns the same faces; join with degenerate kills
        let empty = SimplicialComplex::empty(0);
        assert_eq!(tri.join(&empty).facets(), tri.facets());
        let void = SimplicialComplex::degenerate(1);
        assert!(tri.join(&void).is_degenerate());
    }

    #[test]
    fn links() {
        let tri = hollow_triangle();
        let lk = tri.link(&[0]).unwrap();
        assert_eq!(lk.facets(), &[vec![1], vec![2]]);
        let lk_edge = tri.link(&[0, 1]).unwrap();
        assert_eq!(lk_edge.dim(), -1);
        assert!(tri.link(&[0, 1, 2]).is_err());
        // link of the empty face is the whole complex
        assert_eq!(tri.link(&[]).unwrap().facets(), tri.facets());
    }

    #[test]
    fn skeleta() {
        // two triangles sharing a vertex plus a pendant edge
        let c = SimplicialComplex::from_facets(
            6,
            vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5]],
        )
        .unwrap();
        assert!(!c.is_pure());
        // facets of dim >= 1 keeps everything; >= 2 drops the pendant edge
        assert_eq!(c.facets_at_least(1).facets().len(), 3);
        let upper = c.facets_at_least(2);
        assert_eq!(upper.facets().len(), 2);
        assert!(!upper.contains_face(&[4, 5]));
        // pure 1-skeleton: all 7 edges
        let p1 = c.pure_skeleton(1);
        assert_eq!(p1.facets().len(), 7);
        assert!(p1.is_pure());
        // 1-skeleton coincides here; 0-skeleton is 6 points
        assert_eq!(c.skeleton(1).facets().len(), 7);
        assert_eq!(c.skeleton(0).facets().len(), 6);
        assert_eq!(c.skeleton(-1).dim(), -1);
        // no 3-dimensional faces
        assert!(c.pure_skeleton(3).is_degenerate());
    }

    #[test]
    fn alexander_duals() {
        // boundary of the 2-simplex: only nonface is the full set
        let b2 = SimplicialComplex::from_facets(3, (0..3usize).combinations(2).collect()).unwrap();
        let dual = b2.alexander_dual().unwrap();
        assert_eq!(dual.dim(), -1);

        // {∅} on 3 vertices: dual is the boundary of the 2-simplex
        let empty = SimplicialComplex::empty(3);
        let dual2 = empty.alexander_dual().unwrap();
        assert_eq!(dual2.facets(), b2.facets());

        // degenerate <-> full simplex
        let void = SimplicialComplex::degenerate(3);
        assert_eq!(void.alexander_dual().unwrap().facets(), &[vec![0, 1, 2]]);
        assert!(SimplicialComplex::simplex(3)
            .alexander_dual()
            .unwrap()
            .is_degenerate());

        // involution on the hollow square
        let square = SimplicialComplex::from_facets(
            4,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .unwrap();
        let dd = square.alexander_dual().unwrap().alexander_dual().unwrap();
        assert_eq!(dd, square);
    }

    #[test]
    fn generated_requires_faces() {
        let tri = hollow_triangle();
        let sub = tri.generated(&[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(sub.facets(), &[vec![2], vec![0, 1]]);
        assert!(tri.generated(&[vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn face_count_equals_chain_count() {
        use crate::poset::Poset;
        let labels = (0..4).map(|i| i.to_string()).collect();
        let p = Poset::from_covers(labels, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let oc = order_complex(&p);
        let fp = oc.face_poset().unwrap();
        let nonempty_chains: usize = (1..=4).map(|s| p.chains_of_size(s).len()).sum();
        assert_eq!(fp.len(), nonempty_chains);
    }
}
