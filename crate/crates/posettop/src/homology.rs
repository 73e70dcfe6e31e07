//! Exact integral and rational (co)homology.
//!
//! Chain complexes are augmented (the empty face generates dimension -1),
//! so all homology is reduced. Smith normal form over arbitrary-precision
//! integers supplies Betti numbers and torsion; a sparse unit-pivot phase
//! keeps the large boundary matrices of order complexes tractable, with a
//! dense gcd-based tail for whatever remains. Ranks over the rationals
//! use fraction-free (Bareiss) elimination.

use crate::complex::{order_complex, SimplicialComplex};
use crate::poset::{Poset, PosetError};
use num::{BigInt, One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomologyError {
    #[error("the degenerate complex has no chain complex")]
    Degenerate,
    #[error("elements {0} and {1} are incomparable")]
    Incomparable(usize, usize),
    #[error("the subcomplex is not a homology {0}-sphere: {1}")]
    NotASphere(i64, String),
    #[error("a supplied chain is not a cycle")]
    NotACycle,
    #[error("chain vector has wrong length or unknown face")]
    BadChain,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Sparse integer matrix, column-major. Initial entries fit in i64
/// (boundary matrices have entries ±1); elimination promotes to wider
/// types internally as needed.
#[derive(Clone, Debug)]
pub struct SparseIntMatrix {
    pub rows: usize,
    pub cols: usize,
    /// columns[j] = sorted list of (row, value), value != 0
    pub columns: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn num_nonzero(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    /// Entries as (row, col, value) triplets in column order.
    pub fn triplets(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::with_capacity(self.num_nonzero());
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                out.push((i, j, v));
            }
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut a = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                a[i][j] = BigInt::from(v);
            }
        }
        a
    }

    /// Apply to a dense integer vector (matrix-vector product).
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![BigInt::zero(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for &(i, c) in col {
                out[i] += BigInt::from(c) * &v[j];
            }
        }
        out
    }
}

/// Result of a Smith normal form computation: the nonzero diagonal
/// entries d_1 | d_2 | ... (all positive) and the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl SnfResult {
    /// Invariant factors greater than one (the torsion coefficients of
    /// the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| **d > BigInt::one())
            .cloned()
            .collect()
    }
}

trait ElimEntry: Clone + PartialEq {
    fn from_i64(v: i64) -> Self;
    fn vanishes(&self) -> bool;
    /// Some(±1 as i64) when the entry is a unit
    fn unit_value(&self) -> Option<i64>;
    /// self - factor * other; None on overflow
    fn mul_sub(&self, factor: &Self, other: &Self) -> Option<Self>;
    fn mul_i64(&self, v: i64) -> Option<Self>;
    fn to_bigint(&self) -> BigInt;
}

impl ElimEntry for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn unit_value(&self) -> Option<i64> {
        if *self == 1 || *self == -1 {
            Some(*self as i64)
        } else {
            None
        }
    }
    fn mul_sub(&self, factor: &Self, other: &Self) -> Option<Self> {
        factor.checked_mul(*other).and_then(|p| self.checked_sub(p))
    }
    fn mul_i64(&self, v: i64) -> Option<Self> {
        self.checked_mul(v as i128)
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl ElimEntry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn unit_value(&self) -> Option<i64> {
        if self.abs() == BigInt::one() {
            if self.is_negative() {
                Some(-1)
            } else {
                Some(1)
            }
        } else {
            None
        }
    }
    fn mul_sub(&self, factor: &Self, other: &Self) -> Option<Self> {
        Some(self - factor * other)
    }
    fn mul_i64(&self, v: i64) -> Option<Self> {
        Some(self * BigInt::from(v))
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

/// Sparse phase: eliminate with ±1 pivots chosen by Markowitz cost.
/// Returns the count of unit pivots and the remaining dense submatrix,
/// or None on arithmetic overflow (retry with a wider type).
fn sparse_unit_phase<T: ElimEntry>(m: &SparseIntMatrix) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let mut rows: Vec<HashMap<usize, T>> = vec![HashMap::new(); m.rows];
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); m.cols];
    let mut units: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            if v == 0 {
                continue;
            }
            rows[i].insert(j, T::from_i64(v));
            col_rows[j].insert(i);
            if v == 1 || v == -1 {
                units.insert((i, j));
            }
        }
    }
    let mut row_active = vec![true; m.rows];
    let mut col_active = vec![true; m.cols];
    let mut unit_rank = 0usize;

    loop {
        // choose among the first few valid unit entries the one with the
        // lowest Markowitz fill estimate; prune stale candidates as we go
        const SCAN: usize = 64;
        let mut best: Option<(usize, usize, usize)> = None; // cost, r, c
        let mut stale: Vec<(usize, usize)> = Vec::new();
        let mut scanned = 0;
        for &(r, c) in units.iter() {
            let valid = row_active[r]
                && col_active[c]
                && rows[r].get(&c).is_some_and(|v| v.unit_value().is_some());
            if !valid {
                stale.push((r, c));
                continue;
            }
            let cost = (rows[r].len() - 1) * (col_rows[c].len() - 1);
            if best.is_none_or(|(bc, _, _)| cost < bc) {
                best = Some((cost, r, c));
            }
            scanned += 1;
            if scanned >= SCAN || cost == 0 {
                break;
            }
        }
        for s in stale {
            units.remove(&s);
        }
        let Some((_, r, c)) = best else { break };
        units.remove(&(r, c));
        let pivot_sign = rows[r][&c].unit_value().expect("validated unit");

        // clear the column below/above the pivot with row operations
        let targets: Vec<usize> = col_rows[c].iter().copied().filter(|&i| i != r).collect();
        let pivot_row: Vec<(usize, T)> = rows[r].iter().map(|(j, v)| (*j, v.clone())).collect();
        for r2 in targets {
            // factor = entry / pivot = entry * pivot_sign
            let factor = match rows[r2][&c].mul_i64(pivot_sign) {
                Some(f) => f,
                None => return None,
            };
            for (j, pv) in &pivot_row {
                let cur = rows[r2].get(j).cloned().unwrap_or_else(|| T::from_i64(0));
                let next = match cur.mul_sub(&factor, pv) {
                    Some(x) => x,
                    None => return None,
                };
                if next.vanishes() {
                    if rows[r2].remove(j).is_some() {
                        col_rows[*j].remove(&r2);
                    }
                } else {
                    if next.unit_value().is_some() {
                        units.insert((r2, *j));
                    }
                    rows[r2].insert(*j, next);
                    col_rows[*j].insert(r2);
                }
            }
            debug_assert!(!rows[r2].contains_key(&c));
        }
        // removing the pivot row also clears its other entries: the
        // corresponding column operations touch no other row since
        // column c is now zero elsewhere
        for (j, _) in pivot_row {
            col_rows[j].remove(&r);
        }
        rows[r].clear();
        row_active[r] = false;
        col_active[c] = false;
        unit_rank += 1;
    }

    // gather the remaining active submatrix densely
    let live_rows: Vec<usize> = (0..m.rows)
        .filter(|&i| row_active[i] && !rows[i].is_empty())
        .collect();
    let live_cols: Vec<usize> = (0..m.cols)
        .filter(|&j| col_active[j] && !col_rows[j].is_empty())
        .collect();
    let col_pos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (ri, &i) in live_rows.iter().enumerate() {
        for (j, v) in &rows[i] {
            dense[ri][col_pos[j]] = v.to_bigint();
        }
    }
    Some((unit_rank, dense))
}

/// Dense Smith normal form; returns the nonzero invariant factors as a
/// divisibility chain of positive integers.
fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut factors = Vec::new();
    let mut t = 0usize;
    while t < m && t < n {
        // smallest nonzero entry in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            // clear the pivot column by row reductions
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    for j in t..n {
                        let sub = &q * &a[t][j];
                        a[i][j] -= sub;
                    }
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // clear the pivot row by column reductions
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    for row in a.iter_mut().take(m).skip(t) {
                        let sub = &q * &row[t];
                        row[j] -= sub;
                    }
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    clean = false;
                    break;
                }
            }
            if !clean {
                continue;
            }
            // enforce divisibility: the pivot must divide every remaining
            // entry; if not, mix that row in and redo
            let mut offender = None;
            'scan: for i in t + 1..m {
                for j in t + 1..n {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for j in t..n {
                        let add = a[i][j].clone();
                        a[t][j] += add;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    factors
}

/// Smith normal form of a sparse integer matrix.
pub fn smith_normal_form(m: &SparseIntMatrix) -> SnfResult {
    let (unit_rank, dense) = match sparse_unit_phase::<i128>(m) {
        Some(x) => x,
        None => sparse_unit_phase::<BigInt>(m).expect("BigInt elimination cannot overflow"),
    };
    let tail = dense_snf(dense);
    let mut invariant_factors = vec![BigInt::one(); unit_rank];
    invariant_factors.extend(tail);
    SnfResult {
        rank: invariant_factors.len(),
        invariant_factors,
    }
}

/// Rank over the rationals via fraction-free (Bareiss) elimination.
pub fn dense_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(p) = (rank..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..m {
            for j in col + 1..n {
                let num = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = num / &prev; // exact by Sylvester's identity
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Augmented chain complex of a simplicial complex. Bases run from
/// dimension -1 (the empty face) up to dim Δ; faces are sorted vertex
/// tuples listed lexicographically, oriented by increasing vertex order.
pub struct ChainComplex {
    dim: i64,
    /// bases[s] = faces of dimension s - 1
    bases: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl ChainComplex {
    pub fn from_complex(c: &SimplicialComplex) -> Result<ChainComplex, HomologyError> {
        if c.is_degenerate() {
            return Err(HomologyError::Degenerate);
        }
        let dim = c.dim();
        let mut bases = Vec::new();
        let mut index = Vec::new();
        for k in -1..=dim {
            let faces = c.faces_of_dim(k);
            let idx: HashMap<Vec<usize>, usize> = faces
                .iter()
                .enumerate()
                .map(|(i, f)| (f.clone(), i))
                .collect();
            bases.push(faces);
            index.push(idx);
        }
        Ok(ChainComplex { dim, bases, index })
    }

    pub fn dim(&self) -> i64 {
        self.dim
    }

    /// Basis of C_k (faces of dimension k), empty outside -1..=dim.
    pub fn basis(&self, k: i64) -> &[Vec<usize>] {
        static EMPTY: Vec<Vec<usize>> = Vec::new();
        if k < -1 || k > self.dim {
            return &EMPTY;
        }
        &self.bases[(k + 1) as usize]
    }

    pub fn face_index(&self, k: i64, face: &[usize]) -> Option<usize> {
        if k < -1 || k > self.dim {
            return None;
        }
        self.index[(k + 1) as usize].get(face).copied()
    }

    /// Boundary matrix ∂_k: C_k -> C_{k-1}. ∂_0 sends each vertex to the
    /// empty face with coefficient +1. Zero-sized outside the range.
    pub fn boundary(&self, k: i64) -> SparseIntMatrix {
        let rows = self.basis(k - 1).len();
        let cols = self.basis(k).len();
        let mut m = SparseIntMatrix::zero(rows, cols);
        if k < 0 || k > self.dim {
            return m;
        }
        let lower = &self.index[k as usize];
        for (j, face) in self.basis(k).iter().enumerate() {
            for drop in 0..face.len() {
                let mut sub = face.clone();
                sub.remove(drop);
                let i = lower[&sub];
                let sign = if drop % 2 == 0 { 1 } else { -1 };
                m.columns[j].push((i, sign));
            }
            m.columns[j].sort_unstable_by_key(|&(i, _)| i);
        }
        m
    }

    /// Verify ∂_{k-1} ∘ ∂_k = 0 for every k.
    pub fn boundary_square_is_zero(&self) -> bool {
        for k in 0..=self.dim {
            let d1 = self.boundary(k);
            let d2 = self.boundary(k + 1);
            for col in &d2.columns {
                let mut acc: HashMap<usize, i64> = HashMap::new();
                for &(mid, v) in col {
                    for &(i, w) in &d1.columns[mid] {
                        *acc.entry(i).or_insert(0) += v * w;
                    }
                }
                if acc.values().any(|&v| v != 0) {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced homology in one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimHomology {
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

/// Reduced homology across dimensions; trivial dimensions are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologyResult {
    pub dims: BTreeMap<i64, DimHomology>,
}

impl HomologyResult {
    pub fn betti(&self, i: i64) -> usize {
        self.dims.get(&i).map_or(0, |d| d.betti)
    }

    pub fn torsion(&self, i: i64) -> Vec<BigInt> {
        self.dims.get(&i).map_or_else(Vec::new, |d| d.torsion.clone())
    }

    pub fn is_trivial(&self) -> bool {
        self.dims.is_empty()
    }

    fn insert_nontrivial(&mut self, i: i64, betti: usize, torsion: Vec<BigInt>) {
        if betti != 0 || !torsion.is_empty() {
            self.dims.insert(i, DimHomology { betti, torsion });
        }
    }

    /// Total rank of all torsion-free parts.
    pub fn total_betti(&self) -> usize {
        self.dims.values().map(|d| d.betti).sum()
    }
}

/// Reduced integral homology. The degenerate complex reports β_{-2} = 1;
/// {∅} reports β_{-1} = 1.
pub fn homology(c: &SimplicialComplex) -> HomologyResult {
    let (mut result, _) = homology_with_snf(c);
    if c.is_degenerate() {
        result.insert_nontrivial(-2, 1, Vec::new());
    }
    result
}

/// Reduced integral cohomology. By universal coefficients the Betti
/// numbers agree with homology and the torsion of H^i equals the torsion
/// of H_{i-1}.
pub fn cohomology(c: &SimplicialComplex) -> HomologyResult {
    let (hom, snfs) = homology_with_snf(c);
    if c.is_degenerate() {
        let mut r = HomologyResult::default();
        r.insert_nontrivial(-2, 1, Vec::new());
        return r;
    }
    let mut result = HomologyResult::default();
    let d = c.dim();
    for i in -1..=d {
        let betti = hom.betti(i);
        // torsion of H^i = invariant factors of ∂_i (the boundary INTO
        // dimension i-1)
        let torsion = snfs
            .get(&i)
            .map_or_else(Vec::new, |s| s.torsion());
        result.insert_nontrivial(i, betti, torsion);
    }
    result
}

fn homology_with_snf(c: &SimplicialComplex) -> (HomologyResult, BTreeMap<i64, SnfResult>) {
    let mut result = HomologyResult::default();
    let Ok(cc) = ChainComplex::from_complex(c) else {
        return (result, BTreeMap::new());
    };
    let d = cc.dim();
    // snfs[k] = SNF of ∂_k for k in 0..=d
    let mut snfs: BTreeMap<i64, SnfResult> = BTreeMap::new();
    for k in 0..=d {
        snfs.insert(k, smith_normal_form(&cc.boundary(k)));
    }
    for i in -1..=d {
        let faces = cc.basis(i).len();
        let rank_in = if i >= 0 { snfs[&i].rank } else { 0 };
        let rank_out = snfs.get(&(i + 1)).map_or(0, |s| s.rank);
        let betti = faces - rank_in - rank_out;
        let torsion = snfs
            .get(&(i + 1))
            .map_or_else(Vec::new, |s| s.torsion());
        result.insert_nontrivial(i, betti, torsion);
    }
    (result, snfs)
}

/// Homology of the open interval (x, y) of a poset. When x = y the
/// interval is degenerate and reports β_{-2} = 1; a cover pair gives the
/// empty complex with β_{-1} = 1.
pub fn betti_open_interval(
    p: &Poset,
    x: usize,
    y: usize,
) -> Result<HomologyResult, HomologyError> {
    if x == y {
        if x >= p.len() {
            return Err(HomologyError::Poset(PosetError::InvalidElement(x)));
        }
        let mut r = HomologyResult::default();
        r.insert_nontrivial(-2, 1, Vec::new());
        return Ok(r);
    }
    if !p.leq(x, y) {
        return Err(HomologyError::Incomparable(x, y));
    }
    let interval = p.open_interval(x, y)?;
    Ok(homology(&order_complex(&interval.poset)))
}

/// Dense combinatorial Laplacian Λ_i = ∂_iᵀ ∂_i + ∂_{i+1} ∂_{i+1}ᵀ on
/// C_i.
pub fn laplacian_matrix(c: &SimplicialComplex, i: i64) -> Result<Vec<Vec<BigInt>>, HomologyError> {
    let cc = ChainComplex::from_complex(c)?;
    let n = cc.basis(i).len();
    let mut lap = vec![vec![BigInt::zero(); n]; n];
    let low = cc.boundary(i);
    // ∂ᵀ∂: (a,b) = <∂ e_a, ∂ e_b>
    for a in 0..n {
        for b in 0..n {
            let mut acc = 0i64;
            let (mut ia, mut ib) = (0, 0);
            let (ca, cb) = (&low.columns[a], &low.columns[b]);
            while ia < ca.len() && ib < cb.len() {
                match ca[ia].0.cmp(&cb[ib].0) {
                    std::cmp::Ordering::Less => ia += 1,
                    std::cmp::Ordering::Greater => ib += 1,
                    std::cmp::Ordering::Equal => {
                        acc += ca[ia].1 * cb[ib].1;
                        ia += 1;
                        ib += 1;
                    }
                }
            }
            lap[a][b] += BigInt::from(acc);
        }
    }
    // ∂_{i+1}∂_{i+1}ᵀ: (a,b) = Σ_cols <row a, row b>
    let high = cc.boundary(i + 1);
    for col in &high.columns {
        for &(a, va) in col {
            for &(b, vb) in col {
                lap[a][b] += BigInt::from(va * vb);
            }
        }
    }
    Ok(lap)
}

/// dim_Q ker Λ_i; equals the i-th reduced Betti number by discrete Hodge
/// theory. The degenerate complex reports 1 at i = -2.
pub fn laplacian_betti(c: &SimplicialComplex, i: i64) -> usize {
    if c.is_degenerate() {
        return if i == -2 { 1 } else { 0 };
    }
    let Ok(lap) = laplacian_matrix(c, i) else {
        return 0;
    };
    let n = lap.len();
    n - dense_rank(lap)
}

/// Characteristic polynomial det(xI - A) by the division-free Berkowitz
/// algorithm. Coefficients are returned leading-first (index 0 holds the
/// coefficient of x^n, always 1).
pub fn char_poly(a: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = a.len();
    let mut p = vec![BigInt::one()];
    for k in 1..=n {
        // Toeplitz column for the k-th principal minor
        let mut t = Vec::with_capacity(k + 1);
        t.push(BigInt::one());
        t.push(-a[k - 1][k - 1].clone());
        if k >= 2 {
            // w starts as the column above the diagonal entry
            let mut w: Vec<BigInt> = (0..k - 1).map(|i| a[i][k - 1].clone()).collect();
            for _ in 2..=k {
                let dot: BigInt = (0..k - 1).map(|j| &a[k - 1][j] * &w[j]).sum();
                t.push(-dot);
                // w = A_{k-1} * w
                let next: Vec<BigInt> = (0..k - 1)
                    .map(|i| (0..k - 1).map(|j| &a[i][j] * &w[j]).sum())
                    .collect();
                w = next;
            }
        }
        // p = t * p (polynomial convolution)
        let mut np = vec![BigInt::zero(); k + 1];
        for (i, ti) in t.iter().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if i + j <= k {
                    np[i + j] += ti * pj;
                }
            }
        }
        p = np;
    }
    p
}

/// Divide out the root (x - c) as often as it divides; returns the
/// multiplicity and mutates the polynomial in place (leading-first).
pub fn divide_out_root(p: &mut Vec<BigInt>, c: &BigInt) -> usize {
    let mut mult = 0;
    loop {
        if p.len() <= 1 {
            return mult;
        }
        // synthetic division
        let mut q = Vec::with_capacity(p.len() - 1);
        let mut acc = BigInt::zero();
        for coeff in &p[..] {
            acc = &acc * c + coeff;
            q.push(acc.clone());
        }
        let rem = q.pop().expect("nonempty");
        if rem.is_zero() {
            *p = q;
            mult += 1;
        } else {
            return mult;
        }
    }
}

/// Check that the characteristic polynomial of Λ_i splits completely over
/// the candidate eigenvalue set; returns the multiplicity found for each
/// candidate, or None if a factor remains.
pub fn laplacian_spectrum_multiplicities(
    c: &SimplicialComplex,
    i: i64,
    candidates: &[BigInt],
) -> Result<Option<BTreeMap<BigInt, usize>>, HomologyError> {
    let lap = laplacian_matrix(c, i)?;
    let mut p = char_poly(&lap);
    let mut mults = BTreeMap::new();
    let mut dedup: Vec<BigInt> = candidates.to_vec();
    dedup.sort();
    dedup.dedup();
    for cand in dedup {
        let m = divide_out_root(&mut p, &cand);
        if m > 0 {
            mults.insert(cand, m);
        }
    }
    if p.len() == 1 {
        Ok(Some(mults))
    } else {
        Ok(None)
    }
}

/// Cohen-Macaulay and sequential acyclicity checks over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmReport {
    pub is_cm_over_q: bool,
    pub is_sequentially_acyclic_over_q: bool,
    pub is_sequentially_cm_over_q: bool,
}

fn rational_betti_trivial_below(c: &SimplicialComplex, below: i64) -> bool {
    // H̃_i(c; Q) = 0 for all i < below
    if c.is_degenerate() {
        // only β_{-2} = 1; trivial below any below <= -2
        return below <= -2;
    }
    let h = homology(c);
    h.dims.iter().all(|(&i, d)| i >= below || d.betti == 0)
}

fn all_faces(c: &SimplicialComplex) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in -1..=c.dim() {
        out.extend(c.faces_of_dim(k));
    }
    out
}

fn is_sequentially_acyclic(c: &SimplicialComplex) -> bool {
    if c.is_degenerate() {
        return true;
    }
    for m in 1..=c.dim() {
        let layer = c.facets_at_least(m);
        if !rational_betti_trivial_below(&layer, m) {
            return false;
        }
    }
    true
}

/// CM over Q, sequential acyclicity over Q, and sequential CM over Q,
/// all by direct link enumeration.
pub fn cm_checks(c: &SimplicialComplex) -> CmReport {
    if c.is_degenerate() {
        return CmReport {
            is_cm_over_q: true,
            is_sequentially_acyclic_over_q: true,
            is_sequentially_cm_over_q: true,
        };
    }
    let faces = all_faces(c);
    let mut is_cm = true;
    let mut is_seq_cm = true;
    for f in &faces {
        let lk = c.link(f).expect("enumerated faces are faces");
        if is_cm && !rational_betti_trivial_below(&lk, lk.dim()) {
            is_cm = false;
        }
        if is_seq_cm && !is_sequentially_acyclic(&lk) {
            is_seq_cm = false;
        }
        if !is_cm && !is_seq_cm {
            break;
        }
    }
    CmReport {
        is_cm_over_q: is_cm,
        is_sequentially_acyclic_over_q: is_sequentially_acyclic(c),
        is_sequentially_cm_over_q: is_seq_cm,
    }
}

/// A top-dimensional cycle of the order complex of a poset's proper
/// part. Faces are chains recorded as ascending original-poset ids.
#[derive(Clone, Debug)]
pub struct TopCycle {
    pub dim: i64,
    pub coeffs: Vec<(Vec<usize>, BigInt)>,
}

/// Primitive integer kernel vector of a matrix with a one-dimensional
/// rational kernel; first nonzero coefficient positive.
fn kernel_vector(m: &SparseIntMatrix) -> Option<Vec<BigInt>> {
    use num::BigRational;
    let rows = m.rows;
    let cols = m.cols;
    let mut a: Vec<Vec<BigRational>> =
        vec![vec![BigRational::zero(); cols]; rows];
    for (j, col) in m.columns.iter().enumerate() {
        for &(i, v) in col {
            a[i][j] = BigRational::from(BigInt::from(v));
        }
    }
    // rational row reduction to echelon form
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for j in c..cols {
            let scaled = &a[r][j] * &inv;
            a[r][j] = scaled;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let sub = &f * &a[r][j];
                    a[i][j] -= sub;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == rows {
            break;
        }
    }
    let pivot_cols: HashSet<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    if free.len() != 1 {
        return None;
    }
    let fc = free[0];
    let mut v = vec![BigRational::zero(); cols];
    v[fc] = BigRational::one();
    for &(pr, pc) in &pivots {
        v[pc] = -a[pr][fc].clone();
    }
    // clear denominators, divide by content, canonical sign
    let lcm = v
        .iter()
        .map(|q| q.denom().clone())
        .fold(BigInt::one(), |acc, d| num::Integer::lcm(&acc, &d));
    let mut ints: Vec<BigInt> = v.iter().map(|q| q.numer() * &lcm / q.denom()).collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, x| num::Integer::gcd(&acc, x));
    if !content.is_zero() {
        for x in ints.iter_mut() {
            *x = &*x / &content;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    Some(ints)
}

/// Fundamental cycle of an induced subposet whose proper-part order
/// complex is a homology sphere of the ambient top dimension. Returns
/// the generator of its top homology embedded in the ambient top chain
/// space.
pub fn fundamental_cycle(
    ambient: &Poset,
    sub_elements: &[usize],
) -> Result<TopCycle, HomologyError> {
    let prop = ambient.proper_part();
    // translate: original id -> proper-part id
    let mut into_prop: HashMap<usize, usize> = HashMap::new();
    for (new, src) in prop.source_ids.iter().enumerate() {
        if let Some(s) = src {
            into_prop.insert(*s, new);
        }
    }
    let d = prop.poset.length();
    let sub_prop: Vec<usize> = sub_elements
        .iter()
        .filter_map(|e| into_prop.get(e).copied())
        .collect();
    let sub = prop.poset.induced_subposet(&sub_prop)?;
    let sub_complex = order_complex(&sub.poset);
    if sub_complex.dim() != d || !sub_complex.is_pure() {
        return Err(HomologyError::NotASphere(
            d,
            "subcomplex is not pure of the ambient top dimension".into(),
        ));
    }
    let h = homology(&sub_complex);
    let sphere = h.betti(d) == 1
        && h.dims
            .iter()
            .all(|(&i, dh)| (i == d && dh.betti == 1 && dh.torsion.is_empty())
                || (i != d && dh.betti == 0 && dh.torsion.is_empty()));
    if !sphere {
        return Err(HomologyError::NotASphere(
            d,
            format!("homology is {:?}", h.dims),
        ));
    }
    let cc = ChainComplex::from_complex(&sub_complex)?;
    let top_boundary = cc.boundary(d);
    let kernel = kernel_vector(&top_boundary).ok_or_else(|| {
        HomologyError::NotASphere(d, "top kernel is not one-dimensional".into())
    })?;
    // translate sub-complex faces (sub ids) to original ambient ids; both
    // relabelings are monotone, so sorted tuples stay sorted and no
    // orientation signs appear
    let mut coeffs = Vec::new();
    for (idx, face) in cc.basis(d).iter().enumerate() {
        if kernel[idx].is_zero() {
            continue;
        }
        let orig: Vec<usize> = face
            .iter()
            .map(|&v| {
                let prop_id = sub.source_ids[v].expect("induced ids map to the source");
                prop.source_ids[prop_id].expect("proper part ids map to the source")
            })
            .collect();
        debug_assert!(orig.windows(2).all(|w| w[0] < w[1]));
        coeffs.push((orig, kernel[idx].clone()));
    }
    Ok(TopCycle { dim: d, coeffs })
}

/// Rank test: are the given top cycles linearly independent in the top
/// homology of the ambient proper part? In the top dimension there are
/// no boundaries, so this is a rank computation over Q on the cycle
/// matrix (after checking each vector really is a cycle).
pub fn independent_in_homology(
    ambient: &Poset,
    cycles: &[TopCycle],
) -> Result<bool, HomologyError> {
    let prop = ambient.proper_part();
    let mut into_prop: HashMap<usize, usize> = HashMap::new();
    for (new, src) in prop.source_ids.iter().enumerate() {
        if let Some(s) = src {
            into_prop.insert(*s, new);
        }
    }
    let complex = order_complex(&prop.poset);
    let d = complex.dim();
    let cc = ChainComplex::from_complex(&complex)?;
    let top = cc.basis(d);
    let boundary = cc.boundary(d);
    let mut rows = Vec::with_capacity(cycles.len());
    for cy in cycles {
        if cy.dim != d {
            return Err(HomologyError::BadChain);
        }
        let mut dense = vec![BigInt::zero(); top.len()];
        for (face, coeff) in &cy.coeffs {
            let prop_face: Option<Vec<usize>> = face
                .iter()
                .map(|v| into_prop.get(v).copied())
                .collect();
            let prop_face = prop_face.ok_or(HomologyError::BadChain)?;
            let idx = cc.face_index(d, &prop_face).ok_or(HomologyError::BadChain)?;
            dense[idx] = coeff.clone();
        }
        if boundary.apply(&dense).iter().any(|x| !x.is_zero()) {
            return Err(HomologyError::NotACycle);
        }
        rows.push(dense);
    }
    let count = rows.len();
    Ok(dense_rank(rows) == count)
}
