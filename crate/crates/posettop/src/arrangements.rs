//! Exact rational affine subspace arrangements: intersection semilattices
//! ordered by reverse inclusion, Zaslavsky region counts, Orlik-Solomon
//! Betti numbers of complex hyperplane arrangement complements, and the
//! Goresky-MacPherson lower-interval formula for the reduced cohomology
//! ranks of real subspace arrangement complements.
//!
//! Subspaces are flats {x : Ax = b} stored as the reduced row-echelon
//! form of the augmented system, which is a canonical representative, so
//! equality of flats is equality of representations.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

use crate::homology::betti_open_interval;
use crate::poset::{Poset, PosetError, MAX_ELEMENTS};

#[derive(Debug, Error)]
pub enum ArrangementError {
    #[error("the constraint system is inconsistent (empty subspace)")]
    Inconsistent,
    #[error("dimension mismatch: got {got}, want {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("operation requires a hyperplane arrangement (every member of codimension 1)")]
    NotHyperplanes,
    #[error("operation requires the real interpretation")]
    NotReal,
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// An affine flat {x in R^d : Ax = b}, stored as the reduced row-echelon
/// form of the augmented matrix [A | b]. Construction fails on an
/// inconsistent (empty) system, so a value always represents a nonempty
/// flat, and two values are equal exactly when the flats are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineSubspace {
    ambient: usize,
    /// rows of length ambient + 1, nonzero, leading coefficient 1,
    /// pivot columns strictly increasing, zeros above each pivot
    rows: Vec<Vec<BigRational>>,
}

fn first_nonzero(row: &[BigRational]) -> Option<usize> {
    row.iter().position(|c| !c.is_zero())
}

/// Reduced row echelon form of an augmented system with `width - 1`
/// variables. Returns None when a row reduces to 0 = nonzero.
fn rref(width: usize, mut rows: Vec<Vec<BigRational>>) -> Option<Vec<Vec<BigRational>>> {
    let mut done = 0;
    for col in 0..width - 1 {
        let Some(pivot) = (done..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(done, pivot);
        let lead = rows[done][col].clone();
        for c in col..width {
            let v = &rows[done][c] / &lead;
            rows[done][c] = v;
        }
        for r in 0..rows.len() {
            if r != done && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..width {
                    let v = &rows[r][c] - &factor * &rows[done][c];
                    rows[r][c] = v;
                }
            }
        }
        done += 1;
    }
    for row in &rows[done..] {
        if !row[width - 1].is_zero() {
            return None;
        }
    }
    rows.truncate(done);
    Some(rows)
}

impl AffineSubspace {
    /// The flat {x : ax = b}. Rows may be redundant; they are reduced to
    /// canonical form. Errors when the system is inconsistent or the row
    /// shapes disagree with `ambient`.
    pub fn new(
        ambient: usize,
        a: &[Vec<BigRational>],
        b: &[BigRational],
    ) -> Result<AffineSubspace, ArrangementError> {
        if a.len() != b.len() {
            return Err(ArrangementError::DimensionMismatch {
                got: b.len(),
                want: a.len(),
            });
        }
        let mut rows = Vec::with_capacity(a.len());
        for (row, rhs) in a.iter().zip(b) {
            if row.len() != ambient {
                return Err(ArrangementError::DimensionMismatch {
                    got: row.len(),
                    want: ambient,
                });
            }
            let mut aug = row.clone();
            aug.push(rhs.clone());
            rows.push(aug);
        }
        let rows = rref(ambient + 1, rows).ok_or(ArrangementError::Inconsistent)?;
        Ok(AffineSubspace { ambient, rows })
    }

    /// The hyperplane {x : coeffs . x = rhs}.
    pub fn hyperplane(
        coeffs: &[BigRational],
        rhs: BigRational,
    ) -> Result<AffineSubspace, ArrangementError> {
        AffineSubspace::new(coeffs.len(), &[coeffs.to_vec()], &[rhs])
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Number of independent constraints.
    pub fn codim(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.rows.len()
    }

    /// The canonical constraint system (A, b) in reduced row-echelon form.
    pub fn constraints(&self) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
        let a = self.rows.iter().map(|r| r[..self.ambient].to_vec()).collect();
        let b = self.rows.iter().map(|r| r[self.ambient].clone()).collect();
        (a, b)
    }

    /// Intersection of two flats; None when it is empty.
    pub fn intersect(&self, other: &AffineSubspace) -> Result<Option<AffineSubspace>, ArrangementError> {
        if self.ambient != other.ambient {
            return Err(ArrangementError::DimensionMismatch {
                got: other.ambient,
                want: self.ambient,
            });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Ok(rref(self.ambient + 1, rows).map(|rows| AffineSubspace {
            ambient: self.ambient,
            rows,
        }))
    }

    /// Whether `other` is a subset of this flat: every constraint of this
    /// flat must be implied by the constraints of `other`.
    pub fn contains(&self, other: &AffineSubspace) -> bool {
        self.ambient == other.ambient
            && self.rows.iter().all(|row| {
                let mut v = row.clone();
                for orow in &other.rows {
                    let pc = first_nonzero(orow).expect("stored rows are nonzero");
                    if !v[pc].is_zero() {
                        let factor = v[pc].clone();
                        for c in pc..v.len() {
                            let x = &v[c] - &factor * &orow[c];
                            v[c] = x;
                        }
                    }
                }
                v.iter().all(|c| c.is_zero())
            })
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn subspace_label(s: &AffineSubspace) -> String {
    if s.rows.is_empty() {
        return format!("R^{}", s.ambient);
    }
    s.rows
        .iter()
        .map(|row| {
            let mut lhs = String::new();
            for (j, c) in row[..s.ambient].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let term = if c.is_one() {
                    format!("x{}", j + 1)
                } else if (-c).is_one() {
                    format!("-x{}", j + 1)
                } else {
                    format!("{}x{}", fmt_rational(c), j + 1)
                };
                if !lhs.is_empty() && !term.starts_with('-') {
                    lhs.push('+');
                }
                lhs.push_str(&term);
            }
            format!("{}={}", lhs, fmt_rational(&row[s.ambient]))
        })
        .collect::<Vec<_>>()
        .join("; ")
}

/// A finite collection of affine flats in R^d (or, under the complex
/// interpretation, the same rational data read as flats in C^d).
#[derive(Clone, Debug)]
pub struct Arrangement {
    ambient: usize,
    subspaces: Vec<AffineSubspace>,
    complex: bool,
}

impl Arrangement {
    /// Builds an arrangement, dropping duplicate flats.
    pub fn new(ambient: usize, subspaces: Vec<AffineSubspace>) -> Result<Arrangement, ArrangementError> {
        let mut seen = HashMap::new();
        let mut kept = Vec::new();
        for s in subspaces {
            if s.ambient_dim() != ambient {
                return Err(ArrangementError::DimensionMismatch {
                    got: s.ambient_dim(),
                    want: ambient,
                });
            }
            if seen.insert(s.clone(), ()).is_none() {
                kept.push(s);
            }
        }
        Ok(Arrangement {
            ambient,
            subspaces: kept,
            complex: false,
        })
    }

    /// The same rational data reinterpreted over the complex numbers
    /// (each flat then has twice its real dimension).
    pub fn with_complex_interpretation(mut self) -> Arrangement {
        self.complex = true;
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn subspaces(&self) -> &[AffineSubspace] {
        &self.subspaces
    }

    pub fn is_complex(&self) -> bool {
        self.complex
    }

    pub fn is_hyperplane_arrangement(&self) -> bool {
        self.subspaces.iter().all(|s| s.codim() == 1)
    }
}

/// The intersection semilattice L(A): every nonempty intersection of a
/// subcollection, ordered by reverse inclusion. Element 0 is the ambient
/// space (the intersection over the empty set), the bottom element.
pub struct IntersectionSemilattice {
    pub poset: Poset,
    pub elements: Vec<AffineSubspace>,
}

pub fn intersection_semilattice(a: &Arrangement) -> Result<IntersectionSemilattice, ArrangementError> {
    let ambient = AffineSubspace::new(a.ambient, &[], &[])?;
    let mut elements = vec![ambient];
    let mut index: HashMap<AffineSubspace, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for s in &a.subspaces {
            let Some(y) = elements[x].intersect(s)? else {
                continue;
            };
            if y == elements[x] {
                continue;
            }
            let id = *index.entry(y.clone()).or_insert_with(|| {
                elements.push(y);
                queue.push_back(elements.len() - 1);
                elements.len() - 1
            });
            edges.push((x, id));
        }
        if elements.len() > MAX_ELEMENTS {
            return Err(ArrangementError::OutOfRange(format!(
                "intersection semilattice exceeds {MAX_ELEMENTS} elements"
            )));
        }
    }
    let labels = elements.iter().map(subspace_label).collect();
    let poset = Poset::from_covers(labels, &edges)?;
    Ok(IntersectionSemilattice { poset, elements })
}

/// Zaslavsky's region counts for a real hyperplane arrangement:
/// r = number of regions of the complement, b = number of bounded
/// regions. r is the sum of |mu(0, x)| over the intersection
/// semilattice; b is |mu| of the semilattice with a fresh top adjoined,
/// which vanishes for nonempty central arrangements (the semilattice
/// then already has a top, and the interval below the adjoined one sums
/// to zero). The empty arrangement gets the literal formula values
/// (1, 1).
pub fn zaslavsky(a: &Arrangement) -> Result<(BigInt, BigInt), ArrangementError> {
    if a.complex {
        return Err(ArrangementError::NotReal);
    }
    if !a.is_hyperplane_arrangement() {
        return Err(ArrangementError::NotHyperplanes);
    }
    let l = intersection_semilattice(a)?;
    let r = (0..l.poset.len()).map(|x| l.poset.mobius(0, x).abs()).sum();
    let b = l
        .poset
        .with_fresh_top()
        .poset
        .mobius_invariant()
        .expect("poset with adjoined top is bounded")
        .abs();
    Ok((r, b))
}

/// Betti numbers of the complement of a hyperplane arrangement in C^n
/// (the cohomology is torsion-free): beta_i is the sum of |mu(0, x)|
/// over the flats of complex codimension i. The rational data is read
/// over the complex numbers regardless of the interpretation flag.
pub fn orlik_solomon_betti(a: &Arrangement) -> Result<BTreeMap<i64, BigInt>, ArrangementError> {
    if !a.is_hyperplane_arrangement() {
        return Err(ArrangementError::NotHyperplanes);
    }
    let l = intersection_semilattice(a)?;
    let mut out: BTreeMap<i64, BigInt> = BTreeMap::new();
    for x in 0..l.poset.len() {
        let i = l.elements[x].codim() as i64;
        let m = l.poset.mobius(0, x).abs();
        *out.entry(i).or_default() += m;
    }
    Ok(out)
}

/// Ranks of the reduced integral cohomology of the complement of a real
/// subspace arrangement, by the Goresky-MacPherson formula: the rank of
/// reduced H^i is the sum over flats x above the ambient space of the
/// reduced Betti number of the open interval (ambient, x) in dimension
/// n - dim x - 2 - i. A complex
/// arrangement is realified (dimensions doubled). Only nonzero ranks
/// appear in the map; the empty arrangement has an empty map.
pub fn goresky_macpherson_betti(a: &Arrangement) -> Result<BTreeMap<i64, usize>, ArrangementError> {
    let factor = if a.complex { 2 } else { 1 };
    let l = intersection_semilattice(a)?;
    let ambient = (factor * a.ambient) as i64;
    let mut out: BTreeMap<i64, usize> = BTreeMap::new();
    for x in 1..l.poset.len() {
        let h = betti_open_interval(&l.poset, 0, x)
            .expect("the ambient space is below every flat");
        let dim_x = (factor * l.elements[x].dim()) as i64;
        for d in -1..=(l.poset.len() as i64) {
            let rank = h.betti(d);
            if rank > 0 {
                *out.entry(ambient - dim_x - 2 - d).or_default() += rank;
            }
        }
    }
    Ok(out)
}

/// A named arrangement with its parameters, for dispatch from the CLI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuiltinArrangement {
    /// x_i = 0 for i in [n].
    Coordinate { n: usize },
    /// x_i = 1 and x_i = -1 for i in [n].
    TypeBCoordinate { n: usize },
    /// x_i = x_j for i < j in [n].
    Braid { n: usize },
    /// x_i = x_j, x_i = -x_j for i < j, and x_i = 0, for i, j in [n].
    TypeBBraid { n: usize },
    /// x_{i_1} = ... = x_{i_k} for each k-subset of [n].
    KEqual { n: usize, k: usize },
}

pub fn builtin_arrangement(spec: &BuiltinArrangement) -> Result<Arrangement, ArrangementError> {
    match *spec {
        BuiltinArrangement::Coordinate { n } => coordinate(n),
        BuiltinArrangement::TypeBCoordinate { n } => type_b_coordinate(n),
        BuiltinArrangement::Braid { n } => braid(n),
        BuiltinArrangement::TypeBBraid { n } => type_b_braid(n),
        BuiltinArrangement::KEqual { n, k } => k_equal(n, k),
    }
}

fn check_n(n: usize, what: &str) -> Result<(), ArrangementError> {
    if n == 0 || n > 7 {
        Err(ArrangementError::OutOfRange(format!(
            "{what} arrangement wants 1 <= n <= 7, got {n}"
        )))
    } else {
        Ok(())
    }
}

fn unit(n: usize, i: usize) -> Vec<BigRational> {
    let mut row = vec![BigRational::zero(); n];
    row[i] = BigRational::one();
    row
}

fn difference(n: usize, i: usize, j: usize, sign: i32) -> Vec<BigRational> {
    let mut row = vec![BigRational::zero(); n];
    row[i] = BigRational::one();
    row[j] = BigRational::from(BigInt::from(-sign));
    row
}

/// The coordinate hyperplane arrangement x_i = 0 in R^n, with
/// intersection lattice B_n.
pub fn coordinate(n: usize) -> Result<Arrangement, ArrangementError> {
    check_n(n, "coordinate")?;
    let subspaces = (0..n)
        .map(|i| AffineSubspace::hyperplane(&unit(n, i), BigRational::zero()))
        .collect::<Result<_, _>>()?;
    Arrangement::new(n, subspaces)
}

/// The affine arrangement x_i = 1, x_i = -1 in R^n; its intersection
/// semilattice plus a top is the face lattice of the n-cross-polytope.
pub fn type_b_coordinate(n: usize) -> Result<Arrangement, ArrangementError> {
    check_n(n, "type B coordinate")?;
    let mut subspaces = Vec::with_capacity(2 * n);
    for i in 0..n {
        subspaces.push(AffineSubspace::hyperplane(&unit(n, i), BigRational::one())?);
        subspaces.push(AffineSubspace::hyperplane(&unit(n, i), -BigRational::one())?);
    }
    Arrangement::new(n, subspaces)
}

/// The braid arrangement x_i = x_j in R^n, with intersection lattice
/// isomorphic to the partition lattice.
pub fn braid(n: usize) -> Result<Arrangement, ArrangementError> {
    check_n(n, "braid")?;
    let mut subspaces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            subspaces.push(AffineSubspace::hyperplane(
                &difference(n, i, j, 1),
                BigRational::zero(),
            )?);
        }
    }
    Arrangement::new(n, subspaces)
}

/// The type B braid arrangement x_i = x_j, x_i = -x_j, x_i = 0 in R^n,
/// with intersection lattice isomorphic to the type B partition lattice.
pub fn type_b_braid(n: usize) -> Result<Arrangement, ArrangementError> {
    check_n(n, "type B braid")?;
    let mut subspaces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            subspaces.push(AffineSubspace::hyperplane(
                &difference(n, i, j, 1),
                BigRational::zero(),
            )?);
            subspaces.push(AffineSubspace::hyperplane(
                &difference(n, i, j, -1),
                BigRational::zero(),
            )?);
        }
    }
    for i in 0..n {
        subspaces.push(AffineSubspace::hyperplane(&unit(n, i), BigRational::zero())?);
    }
    Arrangement::new(n, subspaces)
}

/// The k-equal subspace arrangement: x_{i_1} = ... = x_{i_k} for each
/// k-subset of [n]. Its intersection lattice is isomorphic to the
/// k-equal partition poset with a top adjoined where needed (for k > 2
/// the poset itself, which is already bounded).
pub fn k_equal(n: usize, k: usize) -> Result<Arrangement, ArrangementError> {
    check_n(n, "k-equal")?;
    if k < 2 || k > n {
        return Err(ArrangementError::OutOfRange(format!(
            "k-equal arrangement wants 2 <= k <= n, got k = {k}"
        )));
    }
    let mut subspaces = Vec::new();
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let rows: Vec<Vec<BigRational>> = (1..k)
            .map(|t| difference(n, subset[0], subset[t], 1))
            .collect();
        let rhs = vec![BigRational::zero(); k - 1];
        subspaces.push(AffineSubspace::new(n, &rows, &rhs)?);
        // next k-subset in lexicographic order
        let mut t = k;
        while t > 0 && subset[t - 1] == n - k + t - 1 {
            t -= 1;
        }
        if t == 0 {
            break;
        }
        subset[t - 1] += 1;
        for u in t..k {
            subset[u] = subset[u - 1] + 1;
        }
    }
    Arrangement::new(n, subspaces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        block_restricted_partition_poset, cross_polytope_face_lattice, partition_lattice,
        type_b_partition_lattice, SizeSpec,
    };

    fn q(v: i64) -> BigRational {
        BigRational::from(BigInt::from(v))
    }

    fn rank_counts(p: &Poset) -> Vec<usize> {
        let ranks = p.rank_function().unwrap();
        let mut out = vec![0; ranks.iter().max().map_or(0, |m| m + 1)];
        for r in ranks {
            out[r] += 1;
        }
        out
    }

    #[test]
    fn subspace_canonical_form() {
        // the same plane from redundant and scaled constraints
        let a = AffineSubspace::new(
            3,
            &[vec![q(2), q(-2), q(0)], vec![q(1), q(-1), q(0)]],
            &[q(0), q(0)],
        )
        .unwrap();
        let b = AffineSubspace::hyperplane(&[q(1), q(-1), q(0)], q(0)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);

        assert!(matches!(
            AffineSubspace::new(1, &[vec![q(1)], vec![q(1)]], &[q(0), q(1)]),
            Err(ArrangementError::Inconsistent)
        ));

        // x = 1 and x = -1 are disjoint
        let h1 = AffineSubspace::hyperplane(&[q(1)], q(1)).unwrap();
        let h2 = AffineSubspace::hyperplane(&[q(1)], q(-1)).unwrap();
        assert_eq!(h1.intersect(&h2).unwrap(), None);

        let line = AffineSubspace::new(
            3,
            &[vec![q(1), q(-1), q(0)], vec![q(0), q(1), q(-1)]],
            &[q(0), q(0)],
        )
        .unwrap();
        assert!(b.contains(&line));
        assert!(!line.contains(&b));
    }

    #[test]
    fn coordinate_lattice_is_boolean() {
        let l = intersection_semilattice(&coordinate(3).unwrap()).unwrap();
        assert_eq!(l.poset.len(), 8);
        assert!(l.poset.is_lattice());
        assert_eq!(rank_counts(&l.poset), vec![1, 3, 3, 1]);
        assert_eq!(l.poset.mobius_invariant().unwrap(), BigInt::from(-1));
        assert_eq!(zaslavsky(&coordinate(2).unwrap()).unwrap(), (BigInt::from(4), BigInt::from(0)));
    }

    #[test]
    fn braid_lattice_is_partition_lattice() {
        for n in 2..=5 {
            let l = intersection_semilattice(&braid(n).unwrap()).unwrap();
            let pi = partition_lattice(n).unwrap();
            assert_eq!(l.poset.len(), pi.len());
            // the canonical isomorphism sends a partition to the flat
            // where coordinates agree within blocks
            let mut to_flat = Vec::with_capacity(pi.len());
            for x in 0..pi.len() {
                let blocks: Vec<Vec<usize>> = pi
                    .label(x)
                    .split('|')
                    .map(|b| b.split(',').map(|v| v.parse::<usize>().unwrap()).collect())
                    .collect();
                let mut rows = Vec::new();
                for blk in &blocks {
                    for &v in &blk[1..] {
                        rows.push(difference(n, blk[0] - 1, v - 1, 1));
                    }
                }
                let rhs = vec![BigRational::zero(); rows.len()];
                let flat = AffineSubspace::new(n, &rows, &rhs).unwrap();
                let id = l.elements.iter().position(|e| *e == flat).unwrap();
                to_flat.push(id);
            }
            for x in 0..pi.len() {
                for y in 0..pi.len() {
                    assert_eq!(pi.leq(x, y), l.poset.leq(to_flat[x], to_flat[y]));
                }
            }
            assert_eq!(
                l.poset.mobius_invariant().unwrap(),
                pi.mobius_invariant().unwrap()
            );
        }
    }

    #[test]
    fn zaslavsky_region_counts() {
        let (r, b) = zaslavsky(&braid(3).unwrap()).unwrap();
        assert_eq!((r, b), (BigInt::from(6), BigInt::from(0)));
        let (r, b) = zaslavsky(&type_b_braid(2).unwrap()).unwrap();
        assert_eq!((r, b), (BigInt::from(8), BigInt::from(0)));
        // n! regions for braid(n), 2^n n! for the type B variant
        let (r, _) = zaslavsky(&braid(4).unwrap()).unwrap();
        assert_eq!(r, BigInt::from(24));
        let (r, _) = zaslavsky(&type_b_braid(3).unwrap()).unwrap();
        assert_eq!(r, BigInt::from(48));

        // x = 1, x = -1 on the line: three regions, one bounded
        let (r, b) = zaslavsky(&type_b_coordinate(1).unwrap()).unwrap();
        assert_eq!((r, b), (BigInt::from(3), BigInt::from(1)));
        // the four lines x, y = +-1: nine regions, the open square bounded
        let (r, b) = zaslavsky(&type_b_coordinate(2).unwrap()).unwrap();
        assert_eq!((r, b), (BigInt::from(9), BigInt::from(1)));

        assert!(matches!(
            zaslavsky(&k_equal(4, 3).unwrap()),
            Err(ArrangementError::NotHyperplanes)
        ));
        assert!(matches!(
            zaslavsky(&braid(3).unwrap().with_complex_interpretation()),
            Err(ArrangementError::NotReal)
        ));
    }

    #[test]
    fn type_b_braid_lattice_matches_type_b_partitions() {
        for n in 2..=3 {
            let l = intersection_semilattice(&type_b_braid(n).unwrap()).unwrap();
            let pb = type_b_partition_lattice(n).unwrap();
            assert_eq!(l.poset.len(), pb.len());
            assert_eq!(rank_counts(&l.poset), rank_counts(&pb));
            assert_eq!(
                l.poset.mobius_invariant().unwrap(),
                pb.mobius_invariant().unwrap()
            );
            assert_eq!(l.poset.covers().len(), pb.covers().len());
        }
    }

    #[test]
    fn type_b_coordinate_gives_cross_polytope_faces() {
        let l = intersection_semilattice(&type_b_coordinate(2).unwrap()).unwrap();
        let with_top = l.poset.with_fresh_top().poset;
        let c2 = cross_polytope_face_lattice(2).unwrap();
        assert_eq!(with_top.len(), c2.len());
        assert_eq!(rank_counts(&with_top), rank_counts(&c2));
        assert!(with_top.is_lattice());
        assert_eq!(
            with_top.mobius_invariant().unwrap(),
            c2.mobius_invariant().unwrap()
        );
    }

    #[test]
    fn orlik_solomon_examples() {
        let os = orlik_solomon_betti(&braid(3).unwrap()).unwrap();
        let want: BTreeMap<i64, BigInt> =
            [(0, 1), (1, 3), (2, 2)].map(|(i, v)| (i, BigInt::from(v))).into();
        assert_eq!(os, want);

        // the complement of the coordinate arrangement is a torus
        let os = orlik_solomon_betti(&coordinate(3).unwrap()).unwrap();
        let want: BTreeMap<i64, BigInt> =
            [(0, 1), (1, 3), (2, 3), (3, 1)].map(|(i, v)| (i, BigInt::from(v))).into();
        assert_eq!(os, want);

        let single = Arrangement::new(
            2,
            vec![AffineSubspace::hyperplane(&[q(1), q(0)], q(0)).unwrap()],
        )
        .unwrap();
        let os = orlik_solomon_betti(&single).unwrap();
        let want: BTreeMap<i64, BigInt> = [(0, 1), (1, 1)].map(|(i, v)| (i, BigInt::from(v))).into();
        assert_eq!(os, want);

        // total OS Betti equals the region count of the real form
        for n in 2..=4 {
            let total: BigInt = orlik_solomon_betti(&braid(n).unwrap())
                .unwrap()
                .values()
                .sum();
            let (r, _) = zaslavsky(&braid(n).unwrap()).unwrap();
            assert_eq!(total, r);
        }
    }

    #[test]
    fn goresky_macpherson_real_hyperplanes_reduce_to_zaslavsky() {
        for n in 2..=4 {
            let gm = goresky_macpherson_betti(&braid(n).unwrap()).unwrap();
            let (r, _) = zaslavsky(&braid(n).unwrap()).unwrap();
            // all reduced cohomology in degree 0: one less than the
            // number of contractible regions
            assert_eq!(gm.keys().copied().collect::<Vec<_>>(), vec![0]);
            assert_eq!(BigInt::from(gm[&0] + 1), r);
        }
    }

    #[test]
    fn goresky_macpherson_complex_matches_orlik_solomon() {
        for n in 2..=4 {
            let gm =
                goresky_macpherson_betti(&braid(n).unwrap().with_complex_interpretation()).unwrap();
            let os = orlik_solomon_betti(&braid(n).unwrap()).unwrap();
            for (i, v) in &os {
                if *i == 0 {
                    continue;
                }
                assert_eq!(BigInt::from(*gm.get(i).unwrap_or(&0)), *v, "degree {i}");
            }
            assert!(!gm.contains_key(&0));
        }
    }

    #[test]
    fn k_equal_arrangement_lattice_and_complement() {
        let a = k_equal(4, 3).unwrap();
        assert_eq!(a.subspaces().len(), 4);
        assert!(a.subspaces().iter().all(|s| s.dim() == 2));
        let l = intersection_semilattice(&a).unwrap();
        let pi = block_restricted_partition_poset(4, &SizeSpec::KEqual(3)).unwrap();
        assert_eq!(l.poset.len(), pi.len());
        assert_eq!(rank_counts(&l.poset), vec![1, 4, 1]);

        let gm = goresky_macpherson_betti(&a).unwrap();
        // four 2-dimensional flats each contribute at degree 1, and the
        // line below them contributes the interval homology of the
        // 4-element antichain
        let want: BTreeMap<i64, usize> = [(1, 7)].into();
        assert_eq!(gm, want);

        // same ranks straight from the partition poset intervals
        let mut direct: BTreeMap<i64, usize> = BTreeMap::new();
        let bottom = pi.bottom().unwrap();
        let nblocks = |x: usize| pi.label(x).split('|').count() as i64;
        for x in 0..pi.len() {
            if x == bottom {
                continue;
            }
            let h = betti_open_interval(&pi, bottom, x).unwrap();
            for d in -1..=(pi.len() as i64) {
                if h.betti(d) > 0 {
                    *direct.entry(4 - nblocks(x) - 2 - d).or_default() += h.betti(d);
                }
            }
        }
        assert_eq!(direct, want);
    }

    #[test]
    fn empty_arrangement() {
        let a = Arrangement::new(3, vec![]).unwrap();
        let l = intersection_semilattice(&a).unwrap();
        assert_eq!(l.poset.len(), 1);
        assert!(goresky_macpherson_betti(&a).unwrap().is_empty());
        let (r, b) = zaslavsky(&a).unwrap();
        assert_eq!((r, b), (BigInt::from(1), BigInt::from(1)));
    }

    #[test]
    fn builtin_dispatch_and_guards() {
        let a = builtin_arrangement(&BuiltinArrangement::Braid { n: 2 }).unwrap();
        assert_eq!(a.subspaces().len(), 1);
        assert!(builtin_arrangement(&BuiltinArrangement::Braid { n: 8 }).is_err());
        assert!(k_equal(4, 1).is_err());
        assert!(k_equal(3, 4).is_err());
        assert!(coordinate(0).is_err());
        // counts: n^2 hyperplanes for type B braid, C(n,k) subspaces
        assert_eq!(type_b_braid(3).unwrap().subspaces().len(), 9);
        assert_eq!(k_equal(5, 3).unwrap().subspaces().len(), 10);
    }
}
