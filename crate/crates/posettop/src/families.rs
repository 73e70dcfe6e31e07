//! Constructors for the classical poset and complex families the rest of
//! the crate is exercised on: Boolean, subspace, divisor and partition
//! lattices (types A and B), noncrossing partitions, Bruhat order,
//! block-size-restricted partition posets, word posets under the subword
//! order, graph containment posets, matching-style complexes, and the
//! built-in EL-labelings that come with several of them.
//!
//! All constructors produce canonical element labels (set, partition,
//! word, or row-space notation) and deterministic element order, so two
//! calls with equal parameters build identical posets.

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::poset::{Poset, PosetError, MAX_ELEMENTS};
use crate::shelling::EdgeLabeling;

#[derive(Debug, Error)]
pub enum FamilyError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("field order {0} is not supported (a prime up to 1024, or one of 4, 8, 9, 16, 25, 27)")]
    UnsupportedFieldOrder(u64),
    #[error("inflation vector has length {got}, but the complex has {want} vertices")]
    InflationLength { got: usize, want: usize },
    #[error("inflation multiplicities must all be at least 1")]
    InflationZero,
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

fn out_of_range(msg: impl Into<String>) -> FamilyError {
    FamilyError::OutOfRange(msg.into())
}

/// Block-size restriction for [`block_restricted_partition_poset`]: a set
/// partition belongs to the family when every block size satisfies the
/// predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SizeSpec {
    /// All block sizes divisible by `d`.
    Divisible(usize),
    /// All block sizes congruent to `r` mod `d`.
    Congruent { r: usize, d: usize },
    /// All block sizes at least `k`.
    AtLeast(usize),
    /// Sizes in {1} ∪ {k, k+1, ...}: the k-equal poset Π_{n,k}.
    KEqual(usize),
    /// Sizes in an explicit set.
    InSet(BTreeSet<usize>),
}

impl SizeSpec {
    pub fn allows(&self, size: usize) -> bool {
        match self {
            SizeSpec::Divisible(d) => size % d == 0,
            SizeSpec::Congruent { r, d } => size % d == r % d,
            SizeSpec::AtLeast(k) => size >= *k,
            SizeSpec::KEqual(k) => size == 1 || size >= *k,
            SizeSpec::InSet(s) => s.contains(&size),
        }
    }

    fn validate(&self) -> Result<(), FamilyError> {
        match self {
            SizeSpec::Divisible(0) => Err(out_of_range("divisibility modulus must be positive")),
            SizeSpec::Congruent { d: 0, .. } => Err(out_of_range("congruence modulus must be positive")),
            SizeSpec::AtLeast(0) => Err(out_of_range("minimum block size must be positive")),
            SizeSpec::KEqual(k) if *k < 2 => Err(out_of_range("the k-equal poset wants k >= 2")),
            _ => Ok(()),
        }
    }
}

/// Which words [`word_poset`] enumerates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordKind {
    /// No letter repeats anywhere: the injective word poset I_{n,k}.
    Injective,
    /// No two adjacent letters are equal: the normal word poset N_{n,k}.
    Normal,
    /// All nonempty words: W_{n,k}.
    All,
}

/// Graph property for [`graph_property_poset`]. Each of these is a lower
/// or upper ideal in the edge-subset lattice, so covers inside the family
/// are single-edge additions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphPredicate {
    Disconnected,
    Connected,
    /// Some set of at most k-1 vertices disconnects the graph.
    NotKConnected(usize),
    /// Some set of at most d-1 edges disconnects the graph.
    NotDEdgeConnected(usize),
    NoPerfectMatching,
}

/// The two classical partition-lattice edge labelings: the label of a
/// cover merging blocks B1 and B2 is max(min B1, min B2) or max(B1 ∪ B2).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionLabelKind {
    MaxOfMins,
    MaxOfUnion,
}

/// A family identifier with its parameters, for dispatch from the CLI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Boolean { n: usize },
    Subspace { n: usize, q: u64 },
    Divisor { n: u64 },
    Partition { n: usize },
    TypeBPartition { n: usize },
    CrossPolytope { n: usize },
    Noncrossing { n: usize },
    Bruhat { n: usize },
    BlockRestricted { n: usize, sizes: SizeSpec },
    Word { n: usize, k: usize, kind: WordKind },
    Graph { n: usize, predicate: GraphPredicate },
}

/// Build the poset named by a [`FamilySpec`].
pub fn build(spec: &FamilySpec) -> Result<Poset, FamilyError> {
    match spec {
        FamilySpec::Boolean { n } => boolean(*n),
        FamilySpec::Subspace { n, q } => subspace_lattice(*n, *q),
        FamilySpec::Divisor { n } => divisor_lattice(*n),
        FamilySpec::Partition { n } => partition_lattice(*n),
        FamilySpec::TypeBPartition { n } => type_b_partition_lattice(*n),
        FamilySpec::CrossPolytope { n } => cross_polytope_face_lattice(*n),
        FamilySpec::Noncrossing { n } => noncrossing(*n),
        FamilySpec::Bruhat { n } => bruhat(*n),
        FamilySpec::BlockRestricted { n, sizes } => block_restricted_partition_poset(*n, sizes),
        FamilySpec::Word { n, k, kind } => word_poset(*n, *k, *kind),
        FamilySpec::Graph { n, predicate } => graph_property_poset(*n, predicate),
    }
}

// ---------------------------------------------------------------------
// set partition machinery shared by the type A, type B, noncrossing and
// block-restricted constructors
// ---------------------------------------------------------------------

/// All set partitions of `ground`, blocks ordered by their minima and
/// each block listed in increasing order.
fn set_partitions(ground: &[usize]) -> Vec<Vec<Vec<usize>>> {
    fn rec(
        ground: &[usize],
        pos: usize,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if pos == ground.len() {
            out.push(blocks.clone());
            return;
        }
        let x = ground[pos];
        for i in 0..blocks.len() {
            blocks[i].push(x);
            rec(ground, pos + 1, blocks, out);
            blocks[i].pop();
        }
        blocks.push(vec![x]);
        rec(ground, pos + 1, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(ground, 0, &mut Vec::new(), &mut out);
    out
}

fn partition_label(blocks: &[Vec<usize>]) -> String {
    blocks
        .iter()
        .map(|b| b.iter().map(|x| x.to_string()).join(","))
        .join("|")
}

/// Merge blocks `a < b` of a partition. Blocks stay ordered by minima
/// because the merged block keeps the minimum of block `a`.
fn merge_blocks(p: &[Vec<usize>], a: usize, b: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(p.len() - 1);
    for (t, blk) in p.iter().enumerate() {
        if t == a {
            let mut m = blk.clone();
            m.extend_from_slice(&p[b]);
            m.sort_unstable();
            out.push(m);
        } else if t != b {
            out.push(blk.clone());
        }
    }
    out
}

fn is_subset_sorted(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

// ---------------------------------------------------------------------
// Boolean lattice
// ---------------------------------------------------------------------

fn boolean_built(n: usize) -> Result<(Poset, EdgeLabeling), FamilyError> {
    if n > 15 {
        return Err(out_of_range(format!("Boolean lattice wants n <= 15, got {n}")));
    }
    let total = 1usize << n;
    let mut labels = Vec::with_capacity(total);
    for mask in 0..total {
        let items = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| (b + 1).to_string());
        labels.push(format!("{{{}}}", items.collect::<Vec<_>>().join(",")));
    }
    let mut pairs = Vec::new();
    let mut labeling = EdgeLabeling::new();
    for mask in 0..total {
        for b in 0..n {
            if mask >> b & 1 == 0 {
                pairs.push((mask, mask | 1 << b));
                labeling.set(mask, mask | 1 << b, vec![b as i64 + 1]);
            }
        }
    }
    Ok((Poset::from_covers(labels, &pairs)?, labeling))
}

/// The Boolean lattice B_n of subsets of [n].
pub fn boolean(n: usize) -> Result<Poset, FamilyError> {
    Ok(boolean_built(n)?.0)
}

/// B_n with the new-element labeling: the cover x ⋖ x ∪ {b} is labeled b.
pub fn boolean_with_labeling(n: usize) -> Result<(Poset, EdgeLabeling), FamilyError> {
    boolean_built(n)
}

// ---------------------------------------------------------------------
// subspace lattice B_n(q)
// ---------------------------------------------------------------------

/// Addition/multiplication tables for F_q. Extension fields use a fixed
/// irreducible polynomial; elements are indexed by their base-p digit
/// vectors (lowest degree first).
struct Gf {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
}

/// (q, p, e, reduction): x^e ≡ r_0 + r_1 x + ... + r_{e-1} x^{e-1}.
/// The polynomials are x²+x+1, x³+x+1, x²+1, x⁴+x+1, x²+2, x³+2x+1.
const EXT_FIELDS: &[(usize, usize, usize, &[u16])] = &[
    (4, 2, 2, &[1, 1]),
    (8, 2, 3, &[1, 1, 0]),
    (9, 3, 2, &[2, 0]),
    (16, 2, 4, &[1, 1, 0, 0]),
    (25, 5, 2, &[3, 0]),
    (27, 3, 3, &[2, 1, 0]),
];

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Gf {
    fn new(q: u64) -> Result<Gf, FamilyError> {
        let qs = q as usize;
        if q >= 2 && q <= 1024 && is_prime(qs) {
            let mut add = vec![0u16; qs * qs];
            let mut mul = vec![0u16; qs * qs];
            for a in 0..qs {
                for b in 0..qs {
                    add[a * qs + b] = ((a + b) % qs) as u16;
                    mul[a * qs + b] = ((a * b) % qs) as u16;
                }
            }
            let neg = (0..qs).map(|a| ((qs - a) % qs) as u16).collect();
            return Ok(Gf { q: qs, add, mul, neg });
        }
        for &(ord, p, e, red) in EXT_FIELDS {
            if ord == qs {
                return Ok(Gf::extension(p, e, red));
            }
        }
        Err(FamilyError::UnsupportedFieldOrder(q))
    }

    fn extension(p: usize, e: usize, red: &[u16]) -> Gf {
        let q = p.pow(e as u32);
        let digits = |mut a: usize| -> Vec<usize> {
            (0..e)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let undigits = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum) as u16;
                // polynomial product, then reduce degrees e..2e-2
                let mut prod = vec![0usize; 2 * e - 1];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for d in (e..2 * e - 1).rev() {
                    let c = prod[d];
                    if c != 0 {
                        prod[d] = 0;
                        for (t, &r) in red.iter().enumerate() {
                            prod[d - e + t] = (prod[d - e + t] + c * r as usize) % p;
                        }
                    }
                }
                mul[a * q + b] = undigits(&prod[..e]) as u16;
            }
        }
        let neg = (0..q)
            .map(|a| {
                let d: Vec<usize> = digits(a).iter().map(|&x| (p - x) % p).collect();
                undigits(&d) as u16
            })
            .collect();
        Gf { q, add, mul, neg }
    }

    fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }
}

struct SubspaceElem {
    dim: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<u16>>,
}

fn in_rowspace(gf: &Gf, w: &SubspaceElem, v: &[u16]) -> bool {
    let mut v = v.to_vec();
    for (row, &pv) in w.rows.iter().zip(&w.pivots) {
        let c = v[pv];
        if c != 0 {
            for j in pv..v.len() {
                v[j] = gf.add(v[j], gf.neg(gf.mul(c, row[j])));
            }
        }
    }
    v.iter().all(|&x| x == 0)
}

/// The lattice B_n(q) of subspaces of F_q^n ordered by inclusion.
/// Elements are enumerated as reduced row-echelon forms; `q` must be a
/// prime up to 1024 or one of 4, 8, 9, 16, 25, 27.
pub fn subspace_lattice(n: usize, q: u64) -> Result<Poset, FamilyError> {
    if n == 0 || n > 16 {
        return Err(out_of_range(format!("subspace lattice wants 1 <= n <= 16, got {n}")));
    }
    let gf = Gf::new(q)?;
    let mut elems: Vec<SubspaceElem> = Vec::new();
    for k in 0..=n {
        for pivots in (0..n).combinations(k) {
            let free: Vec<(usize, usize)> = (0..k)
                .flat_map(|i| {
                    let pv = pivots[i];
                    let pivots = &pivots;
                    (pv + 1..n)
                        .filter(move |j| !pivots.contains(j))
                        .map(move |j| (i, j))
                })
                .collect();
            let mut fill = vec![0u16; free.len()];
            loop {
                let mut rows = vec![vec![0u16; n]; k];
                for (i, &pv) in pivots.iter().enumerate() {
                    rows[i][pv] = 1;
                }
                for (&(i, j), &v) in free.iter().zip(&fill) {
                    rows[i][j] = v;
                }
                elems.push(SubspaceElem {
                    dim: k,
                    pivots: pivots.clone(),
                    rows,
                });
                if elems.len() > MAX_ELEMENTS {
                    return Err(out_of_range(format!(
                        "subspace lattice of F_{q}^{n} has more than {MAX_ELEMENTS} elements"
                    )));
                }
                // increment the mixed-radix fill
                let mut t = 0;
                loop {
                    if t == fill.len() {
                        break;
                    }
                    fill[t] += 1;
                    if (fill[t] as usize) < gf.q {
                        break;
                    }
                    fill[t] = 0;
                    t += 1;
                }
                if t == fill.len() {
                    break;
                }
            }
        }
    }
    let labels: Vec<String> = elems
        .iter()
        .map(|e| {
            if e.dim == 0 {
                "0".to_string()
            } else {
                e.rows
                    .iter()
                    .map(|r| {
                        if gf.q <= 10 {
                            r.iter().map(|d| d.to_string()).collect::<String>()
                        } else {
                            r.iter().map(|d| d.to_string()).join(",")
                        }
                    })
                    .join("|")
            }
        })
        .collect();
    Ok(Poset::from_order_relation(labels, |i, j| {
        elems[i].dim <= elems[j].dim && elems[i].rows.iter().all(|r| in_rowspace(&gf, &elems[j], r))
    })?)
}

// ---------------------------------------------------------------------
// divisor lattice
// ---------------------------------------------------------------------

/// The lattice D_n of divisors of n ordered by divisibility.
pub fn divisor_lattice(n: u64) -> Result<Poset, FamilyError> {
    if n == 0 {
        return Err(out_of_range("divisor lattice wants n >= 1"));
    }
    let mut divs: Vec<u64> = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            divs.push(d);
            if d != n / d {
                divs.push(n / d);
            }
        }
        d += 1;
    }
    divs.sort_unstable();
    let labels = divs.iter().map(|x| x.to_string()).collect();
    Ok(Poset::from_order_relation(labels, |i, j| divs[j] % divs[i] == 0)?)
}

// ---------------------------------------------------------------------
// partition lattice Π_n
// ---------------------------------------------------------------------

fn partition_lattice_built(
    n: usize,
    kind: Option<PartitionLabelKind>,
) -> Result<(Poset, EdgeLabeling), FamilyError> {
    if n == 0 || n > 9 {
        return Err(out_of_range(format!("partition lattice wants 1 <= n <= 9, got {n}")));
    }
    let ground: Vec<usize> = (1..=n).collect();
    let parts = set_partitions(&ground);
    let mut index: HashMap<Vec<Vec<usize>>, usize> = HashMap::with_capacity(parts.len());
    for (i, p) in parts.iter().enumerate() {
        index.insert(p.clone(), i);
    }
    let labels: Vec<String> = parts.iter().map(|p| partition_label(p)).collect();
    let mut pairs = Vec::new();
    let mut labeling = EdgeLabeling::new();
    for (i, p) in parts.iter().enumerate() {
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                let j = index[&merge_blocks(p, a, b)];
                pairs.push((i, j));
                if let Some(kind) = kind {
                    let v = match kind {
                        // blocks are ordered by minima, so min(B_a) < min(B_b)
                        PartitionLabelKind::MaxOfMins => p[b][0],
                        PartitionLabelKind::MaxOfUnion => *p[a].last().unwrap().max(p[b].last().unwrap()),
                    };
                    labeling.set(i, j, vec![v as i64]);
                }
            }
        }
    }
    Ok((Poset::from_covers(labels, &pairs)?, labeling))
}

/// The partition lattice Π_n under refinement.
pub fn partition_lattice(n: usize) -> Result<Poset, FamilyError> {
    Ok(partition_lattice_built(n, None)?.0)
}

/// Π_n with one of its two classical EL-labelings.
pub fn partition_lattice_with_labeling(
    n: usize,
    kind: PartitionLabelKind,
) -> Result<(Poset, EdgeLabeling), FamilyError> {
    partition_lattice_built(n, Some(kind))
}

// ---------------------------------------------------------------------
// type B partition lattice Π_n^B
// ---------------------------------------------------------------------

/// The type B (signed) partition lattice Π_n^B: partitions of {0,...,n}
/// where any element of [n] may carry a bar except the elements of the
/// zero block and the smallest element of each block. Bars are rendered
/// as negative numbers. A cover merges two blocks B1, B2 with
/// min B1 < min B2: into the zero block with all bars stripped, and
/// otherwise either with bars intact or with B2's bars complemented.
pub fn type_b_partition_lattice(n: usize) -> Result<Poset, FamilyError> {
    if n == 0 || n > 7 {
        return Err(out_of_range(format!(
            "type B partition lattice wants 1 <= n <= 7, got {n}"
        )));
    }
    let ground: Vec<usize> = (0..=n).collect();
    let mut elems: Vec<Vec<Vec<i64>>> = Vec::new();
    for p in set_partitions(&ground) {
        let zero: Vec<i64> = p[0].iter().map(|&x| x as i64).collect();
        assign_signs(&p, 1, &mut vec![zero], &mut elems);
    }
    let mut index: HashMap<Vec<Vec<i64>>, usize> = HashMap::with_capacity(elems.len());
    for (i, e) in elems.iter().enumerate() {
        index.insert(e.clone(), i);
    }
    let labels: Vec<String> = elems
        .iter()
        .map(|e| e.iter().map(|b| b.iter().map(|x| x.to_string()).join(",")).join("|"))
        .collect();
    let mut pairs = Vec::new();
    for (i, e) in elems.iter().enumerate() {
        for a in 0..e.len() {
            for b in a + 1..e.len() {
                if a == 0 {
                    let merged = e[b].iter().map(|x| x.abs()).collect::<Vec<_>>();
                    pairs.push((i, index[&replace_signed(e, a, b, merged)]));
                } else {
                    for flip in [1i64, -1] {
                        let merged = e[b].iter().map(|&x| flip * x).collect::<Vec<_>>();
                        pairs.push((i, index[&replace_signed(e, a, b, merged)]));
                    }
                }
            }
        }
    }
    Ok(Poset::from_covers(labels, &pairs)?)
}

fn assign_signs(
    p: &[Vec<usize>],
    bi: usize,
    acc: &mut Vec<Vec<i64>>,
    out: &mut Vec<Vec<Vec<i64>>>,
) {
    if bi == p.len() {
        out.push(acc.clone());
        return;
    }
    let blk = &p[bi];
    for mask in 0u32..1 << (blk.len() - 1) {
        let mut sb = Vec::with_capacity(blk.len());
        sb.push(blk[0] as i64);
        for (t, &x) in blk[1..].iter().enumerate() {
            sb.push(if mask >> t & 1 == 1 { -(x as i64) } else { x as i64 });
        }
        acc.push(sb);
        assign_signs(p, bi + 1, acc, out);
        acc.pop();
    }
}

/// Merge the extra elements into block `a`, dropping block `b`. Blocks
/// remain sorted by smallest underlying element.
fn replace_signed(e: &[Vec<i64>], a: usize, b: usize, extra: Vec<i64>) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(e.len() - 1);
    for (t, blk) in e.iter().enumerate() {
        if t == a {
            let mut m = blk.clone();
            m.extend_from_slice(&extra);
            m.sort_by_key(|x| x.abs());
            out.push(m);
        } else if t != b {
            out.push(blk.clone());
        }
    }
    out
}

// ---------------------------------------------------------------------
// cross-polytope face lattice C_n
// ---------------------------------------------------------------------

/// The face lattice C_n of the n-cross-polytope: admissible signed
/// subsets of {±1,...,±n} (no i together with -i) ordered by inclusion,
/// with a top element adjoined. 3^n + 1 elements.
pub fn cross_polytope_face_lattice(n: usize) -> Result<Poset, FamilyError> {
    if n == 0 || n > 9 {
        return Err(out_of_range(format!("cross-polytope wants 1 <= n <= 9, got {n}")));
    }
    let pow3: Vec<usize> = (0..n).map(|i| 3usize.pow(i as u32)).collect();
    let total = 3usize.pow(n as u32);
    let mut labels = Vec::with_capacity(total + 1);
    for m in 0..total {
        let mut items = Vec::new();
        for i in 0..n {
            match m / pow3[i] % 3 {
                0 => {}
                1 => items.push(format!("{}", i + 1)),
                _ => items.push(format!("-{}", i + 1)),
            }
        }
        labels.push(format!("{{{}}}", items.join(",")));
    }
    labels.push("top".to_string());
    let mut pairs = Vec::new();
    for m in 0..total {
        let support = (0..n).filter(|&i| m / pow3[i] % 3 != 0).count();
        if support == n {
            pairs.push((m, total));
        } else {
            for i in 0..n {
                if m / pow3[i] % 3 == 0 {
                    pairs.push((m, m + pow3[i]));
                    pairs.push((m, m + 2 * pow3[i]));
                }
            }
        }
    }
    Ok(Poset::from_covers(labels, &pairs)?)
}

// ---------------------------------------------------------------------
// noncrossing partition lattice NC_n
// ---------------------------------------------------------------------

fn is_noncrossing(blocks: &[Vec<usize>], n: usize) -> bool {
    let mut id = vec![0usize; n];
    for (t, b) in blocks.iter().enumerate() {
        for &x in b {
            id[x - 1] = t;
        }
    }
    for a in 0..blocks.len() {
        for b in a + 1..blocks.len() {
            // two blocks cross exactly when their union alternates abab
            let mut runs = 0;
            let mut last = usize::MAX;
            for x in 1..=n {
                let t = id[x - 1];
                if (t == a || t == b) && t != last {
                    runs += 1;
                    last = t;
                }
            }
            if runs >= 4 {
                return false;
            }
        }
    }
    true
}

fn noncrossing_built(n: usize) -> Result<(Poset, EdgeLabeling), FamilyError> {
    if n == 0 || n > 9 {
        return Err(out_of_range(format!("noncrossing lattice wants 1 <= n <= 9, got {n}")));
    }
    let ground: Vec<usize> = (1..=n).collect();
    let parts: Vec<Vec<Vec<usize>>> = set_partitions(&ground)
        .into_iter()
        .filter(|p| is_noncrossing(p, n))
        .collect();
    let mut index: HashMap<Vec<Vec<usize>>, usize> = HashMap::with_capacity(parts.len());
    for (i, p) in parts.iter().enumerate() {
        index.insert(p.clone(), i);
    }
    let labels: Vec<String> = parts.iter().map(|p| partition_label(p)).collect();
    let mut pairs = Vec::new();
    let mut labeling = EdgeLabeling::new();
    for (i, p) in parts.iter().enumerate() {
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                // the merge is a cover of NC_n exactly when it stays noncrossing
                if let Some(&j) = index.get(&merge_blocks(p, a, b)) {
                    pairs.push((i, j));
                    let cut = p[b][0];
                    let lam = p[a].iter().copied().filter(|&x| x < cut).max().unwrap();
                    labeling.set(i, j, vec![-(lam as i64)]);
                }
            }
        }
    }
    Ok((Poset::from_covers(labels, &pairs)?, labeling))
}

/// The noncrossing partition lattice NC_n (refinement order restricted
/// to noncrossing partitions of [n]).
pub fn noncrossing(n: usize) -> Result<Poset, FamilyError> {
    Ok(noncrossing_built(n)?.0)
}

/// NC_n with Stanley's parking-function labeling: the merge of B1, B2
/// (min B1 < min B2) is tagged by the statistic max{i ∈ B1 : i < min B2}.
/// The statistic is edge-lexicographic only for the reversed order on its
/// values, so the stored label is its negative; maximal chains then carry
/// distinct parking functions (up to sign) and the decreasing chains are
/// counted by the Catalan numbers.
pub fn noncrossing_with_labeling(n: usize) -> Result<(Poset, EdgeLabeling), FamilyError> {
    noncrossing_built(n)
}

// ---------------------------------------------------------------------
// Bruhat order on S_n
// ---------------------------------------------------------------------

/// The Bruhat order on S_n: covers are σ ⋖ τ where τ is σ times a
/// transposition and has exactly one more inversion.
pub fn bruhat(n: usize) -> Result<Poset, FamilyError> {
    if n == 0 || n > 5 {
        return Err(out_of_range(format!("Bruhat order wants 1 <= n <= 5, got {n}")));
    }
    let perms = permutations(n);
    let mut index: HashMap<Vec<usize>, usize> = HashMap::with_capacity(perms.len());
    for (i, w) in perms.iter().enumerate() {
        index.insert(w.clone(), i);
    }
    let labels: Vec<String> = perms
        .iter()
        .map(|w| w.iter().map(|x| x.to_string()).collect::<String>())
        .collect();
    let mut pairs = Vec::new();
    for (i, w) in perms.iter().enumerate() {
        let base = crate::oracles::inversions(w);
        for a in 0..n {
            for b in a + 1..n {
                let mut t = w.clone();
                t.swap(a, b);
                if crate::oracles::inversions(&t) == base + 1 {
                    pairs.push((i, index[&t]));
                }
            }
        }
    }
    Ok(Poset::from_covers(labels, &pairs)?)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n + 1], &mut out);
    out
}

// ---------------------------------------------------------------------
// block-size-restricted partition posets
// ---------------------------------------------------------------------

fn restricted_partition_elements(
    n: usize,
    allowed: &dyn Fn(usize) -> bool,
) -> Vec<Vec<Vec<usize>>> {
    let ground: Vec<usize> = (1..=n).collect();
    set_partitions(&ground)
        .into_iter()
        .filter(|p| p.iter().all(|b| allowed(b.len())))
        .collect()
}

fn partitions_poset(parts: &[Vec<Vec<usize>>], n: usize) -> Result<Poset, PosetError> {
    let ids: Vec<Vec<usize>> = parts
        .iter()
        .map(|p| {
            let mut id = vec![0usize; n];
            for (t, b) in p.iter().enumerate() {
                for &x in b {
                    id[x - 1] = t;
                }
            }
            id
        })
        .collect();
    let labels: Vec<String> = parts.iter().map(|p| partition_label(p)).collect();
    Poset::from_order_relation(labels, |i, j| {
        parts[i].len() >= parts[j].len() && {
            let idj = &ids[j];
            parts[i]
                .iter()
                .all(|b| b.iter().all(|&x| idj[x - 1] == idj[b[0] - 1]))
        }
    })
}

/// The induced subposet of Π_n on partitions all of whose block sizes
/// satisfy `sizes`. An infeasible spec yields the empty poset. No bottom
/// or top is adjoined; use `bounded_extension` when one is needed.
pub fn block_restricted_partition_poset(n: usize, sizes: &SizeSpec) -> Result<Poset, FamilyError> {
    if n == 0 || n > 10 {
        return Err(out_of_range(format!(
            "block-restricted partition poset wants 1 <= n <= 10, got {n}"
        )));
    }
    sizes.validate()?;
    let parts = restricted_partition_elements(n, &|s| sizes.allows(s));
    Ok(partitions_poset(&parts, n)?)
}

/// The k-equal poset Π_{n,k} together with its nonpure EL-labeling over
/// the alphabet 1̄ < ... < n̄ < 1 < ... < n (barred letter i encoded as i,
/// unbarred as n + i). A cover is labeled:
/// max B unbarred when a new block B forms from singletons, a unbarred
/// when a singleton {a} joins a nonsingleton, and max(B1 ∪ B2) barred
/// when two nonsingletons merge.
pub fn k_equal_with_labeling(n: usize, k: usize) -> Result<(Poset, EdgeLabeling), FamilyError> {
    if n == 0 || n > 10 {
        return Err(out_of_range(format!("k-equal poset wants 1 <= n <= 10, got {n}")));
    }
    if k < 2 || k > n {
        return Err(out_of_range(format!("k-equal poset wants 2 <= k <= n, got k = {k}")));
    }
    let parts = restricted_partition_elements(n, &|s| s == 1 || s >= k);
    let poset = partitions_poset(&parts, n)?;
    let mut labeling = EdgeLabeling::new();
    for &(x, y) in poset.covers() {
        labeling.set(x, y, vec![k_equal_label(&parts[x], &parts[y], n)]);
    }
    Ok((poset, labeling))
}

fn k_equal_label(px: &[Vec<usize>], py: &[Vec<usize>], n: usize) -> i64 {
    debug_assert_eq!(py.iter().filter(|b| !px.contains(b)).count(), 1);
    let new_block = py
        .iter()
        .find(|b| !px.contains(b))
        .expect("a cover introduces one new block");
    let inside: Vec<&Vec<usize>> = px
        .iter()
        .filter(|b| is_subset_sorted(b, new_block))
        .collect();
    let nonsingletons = inside.iter().filter(|b| b.len() > 1).count();
    match (inside.len(), nonsingletons) {
        (_, 0) => (n + new_block.last().unwrap()) as i64,
        (2, 1) => {
            let a = inside.iter().find(|b| b.len() == 1).unwrap()[0];
            (n + a) as i64
        }
        (2, 2) => *new_block.last().unwrap() as i64,
        _ => unreachable!("k-equal covers merge singletons into one block, or two blocks"),
    }
}

// ---------------------------------------------------------------------
// word posets
// ---------------------------------------------------------------------

/// Words of length 1..=k over the alphabet [n], filtered by `kind`,
/// under the subword (subsequence) order. The documented feasibility
/// bound is sum of n^j for j <= k at most 100000.
pub fn word_poset(n: usize, k: usize, kind: WordKind) -> Result<Poset, FamilyError> {
    if n == 0 || k == 0 {
        return Err(out_of_range("word poset wants n >= 1 and k >= 1"));
    }
    let mut bound: u128 = 0;
    let mut pw: u128 = 1;
    for _ in 1..=k {
        pw = pw.saturating_mul(n as u128);
        bound = bound.saturating_add(pw);
        if bound > 100_000 {
            return Err(out_of_range(format!(
                "word poset over [{n}] up to length {k} exceeds the 100000-word bound"
            )));
        }
    }
    let mut words: Vec<Vec<usize>> = Vec::new();
    collect_words(n, k, kind, &mut Vec::new(), &mut words);
    let mut index: HashMap<Vec<usize>, usize> = HashMap::with_capacity(words.len());
    for (i, w) in words.iter().enumerate() {
        index.insert(w.clone(), i);
    }
    let labels: Vec<String> = words
        .iter()
        .map(|w| {
            if n <= 9 {
                w.iter().map(|x| x.to_string()).collect::<String>()
            } else {
                w.iter().map(|x| x.to_string()).join(",")
            }
        })
        .collect();
    // covers delete a single letter; the subword order on each kind is
    // graded by length, so these generate the full order
    let mut pairs = Vec::new();
    for (i, w) in words.iter().enumerate() {
        if w.len() == 1 {
            continue;
        }
        for t in 0..w.len() {
            let mut u = w.clone();
            u.remove(t);
            if let Some(&j) = index.get(&u) {
                pairs.push((j, i));
            }
        }
    }
    Ok(Poset::from_covers(labels, &pairs)?)
}

fn collect_words(
    n: usize,
    k: usize,
    kind: WordKind,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if !cur.is_empty() {
        out.push(cur.clone());
    }
    if cur.len() == k {
        return;
    }
    for a in 1..=n {
        let ok = match kind {
            WordKind::All => true,
            WordKind::Normal => cur.last() != Some(&a),
            WordKind::Injective => !cur.contains(&a),
        };
        if ok {
            cur.push(a);
            collect_words(n, k, kind, cur, out);
            cur.pop();
        }
    }
}

// ---------------------------------------------------------------------
// graph containment posets
// ---------------------------------------------------------------------

/// Graphs on node set [n] satisfying the predicate, ordered by inclusion
/// of edge sets. Each supported predicate is closed downward or upward,
/// so covers add a single edge.
pub fn graph_property_poset(n: usize, predicate: &GraphPredicate) -> Result<Poset, FamilyError> {
    if n < 2 || n > 6 {
        return Err(out_of_range(format!("graph poset wants 2 <= n <= 6, got {n}")));
    }
    match *predicate {
        GraphPredicate::NotKConnected(k) if k == 0 || k >= n => {
            return Err(out_of_range(format!(
                "not-k-connected wants 1 <= k < n, got k = {k}"
            )));
        }
        GraphPredicate::NotDEdgeConnected(d) if d == 0 || d > 6 => {
            return Err(out_of_range(format!(
                "not-d-edge-connected wants 1 <= d <= 6, got d = {d}"
            )));
        }
        _ => {}
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let e = edges.len();
    let masks: Vec<u32> = (0..1u32 << e)
        .filter(|&m| graph_member(predicate, n, &edges, m))
        .collect();
    let mut index: Vec<Option<usize>> = vec![None; 1 << e];
    for (i, &m) in masks.iter().enumerate() {
        index[m as usize] = Some(i);
    }
    let labels: Vec<String> = masks
        .iter()
        .map(|&m| {
            let items = (0..e)
                .filter(|t| m >> t & 1 == 1)
                .map(|t| format!("{}{}", edges[t].0 + 1, edges[t].1 + 1));
            format!("{{{}}}", items.collect::<Vec<_>>().join(","))
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        for t in 0..e {
            if m >> t & 1 == 0 {
                if let Some(j) = index[(m | 1 << t) as usize] {
                    pairs.push((i, j));
                }
            }
        }
    }
    Ok(Poset::from_covers(labels, &pairs)?)
}

fn graph_member(pred: &GraphPredicate, n: usize, edges: &[(usize, usize)], mask: u32) -> bool {
    let full = (1u32 << n) - 1;
    match *pred {
        GraphPredicate::Disconnected => !connected_with(n, edges, mask, full),
        GraphPredicate::Connected => connected_with(n, edges, mask, full),
        GraphPredicate::NotKConnected(k) => (0..1u32 << n)
            .filter(|s| s.count_ones() as usize <= k - 1)
            .any(|s| !connected_with(n, edges, mask, full & !s)),
        GraphPredicate::NotDEdgeConnected(d) => {
            exists_small_edge_cut(n, edges, mask, d - 1)
        }
        GraphPredicate::NoPerfectMatching => !has_perfect_matching(n, edges, mask),
    }
}

fn connected_with(n: usize, edges: &[(usize, usize)], mask: u32, alive: u32) -> bool {
    if alive.count_ones() <= 1 {
        return true;
    }
    let mut adj = [0u32; 8];
    for (t, &(a, b)) in edges.iter().enumerate() {
        if mask >> t & 1 == 1 && alive >> a & 1 == 1 && alive >> b & 1 == 1 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    let start = alive.trailing_zeros() as usize;
    let mut seen = 1u32 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u32;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= adj[v];
        }
        frontier = next & !seen;
        seen |= next;
        let _ = n;
    }
    seen & alive == alive
}

fn exists_small_edge_cut(
    n: usize,
    edges: &[(usize, usize)],
    mask: u32,
    max_remove: usize,
) -> bool {
    let bits: Vec<usize> = (0..edges.len()).filter(|&t| mask >> t & 1 == 1).collect();
    let full = (1u32 << n) - 1;
    fn rec(
        n: usize,
        edges: &[(usize, usize)],
        mask: u32,
        full: u32,
        bits: &[usize],
        from: usize,
        left: usize,
        removed: u32,
    ) -> bool {
        if !connected_with(n, edges, mask & !removed, full) {
            return true;
        }
        if left == 0 {
            return false;
        }
        for t in from..bits.len() {
            if rec(n, edges, mask, full, bits, t + 1, left - 1, removed | 1 << bits[t]) {
                return true;
            }
        }
        false
    }
    rec(n, edges, mask, full, &bits, 0, max_remove, 0)
}

fn has_perfect_matching(n: usize, edges: &[(usize, usize)], mask: u32) -> bool {
    if n % 2 == 1 {
        return false;
    }
    let mut adj = [0u32; 8];
    for (t, &(a, b)) in edges.iter().enumerate() {
        if mask >> t & 1 == 1 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    fn rec(adj: &[u32; 8], free: u32) -> bool {
        if free == 0 {
            return true;
        }
        let v = free.trailing_zeros() as usize;
        let mut cand = adj[v] & free & !(1 << v);
        while cand != 0 {
            let u = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if rec(adj, free & !(1 << v) & !(1 << u)) {
                return true;
            }
        }
        false
    }
    rec(&adj, (1u32 << n) - 1)
}

// ---------------------------------------------------------------------
// matching-style complexes
// ---------------------------------------------------------------------

/// The matching complex M_n: vertices are the edges of K_n in
/// lexicographic order, faces are the matchings.
pub fn matching_complex(n: usize) -> Result<SimplicialComplex, FamilyError> {
    if n < 2 || n > 9 {
        return Err(out_of_range(format!("matching complex wants 2 <= n <= 9, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut facets = Vec::new();
    maximal_matchings(&edges, 0, 0, &mut Vec::new(), &mut facets);
    Ok(SimplicialComplex::from_facets(edges.len(), facets)?)
}

fn maximal_matchings(
    edges: &[(usize, usize)],
    from: usize,
    used: u32,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let extendable = edges
        .iter()
        .any(|&(a, b)| used >> a & 1 == 0 && used >> b & 1 == 0);
    if !extendable {
        out.push(cur.clone());
        return;
    }
    for t in from..edges.len() {
        let (a, b) = edges[t];
        if used >> a & 1 == 0 && used >> b & 1 == 0 {
            cur.push(t);
            maximal_matchings(edges, t + 1, used | 1 << a | 1 << b, cur, out);
            cur.pop();
        }
    }
}

/// The chessboard complex M_{m,n}: vertices are the cells of an m x n
/// board (cell (r, c) is vertex r*n + c), faces are the non-attacking
/// rook placements. Pure of dimension min(m, n) - 1.
pub fn chessboard_complex(m: usize, n: usize) -> Result<SimplicialComplex, FamilyError> {
    if m == 0 || n == 0 || m > 8 || n > 8 {
        return Err(out_of_range(format!(
            "chessboard complex wants 1 <= m, n <= 8, got {m} x {n}"
        )));
    }
    let mut facets = Vec::new();
    if m <= n {
        placements(m, n, 0, 0, &mut Vec::new(), &mut facets, true);
    } else {
        placements(n, m, 0, 0, &mut Vec::new(), &mut facets, false);
    }
    Ok(SimplicialComplex::from_facets(m * n, facets)?)
}

/// Place one rook in each of the `small` lines, choosing distinct lines
/// on the `big` side. `rows_small` says whether the small side is rows.
fn placements(
    small: usize,
    big: usize,
    line: usize,
    used: u32,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    rows_small: bool,
) {
    if line == small {
        out.push(cur.clone());
        return;
    }
    for c in 0..big {
        if used >> c & 1 == 0 {
            let cell = if rows_small { line * big + c } else { c * small + line };
            cur.push(cell);
            placements(small, big, line + 1, used | 1 << c, cur, out, rows_small);
            cur.pop();
        }
    }
}

/// The r-colored chessboard complex: the (r,...,r)-inflation of M_{m,n}.
pub fn colored_chessboard_complex(
    m: usize,
    n: usize,
    r: usize,
) -> Result<SimplicialComplex, FamilyError> {
    if r == 0 {
        return Err(FamilyError::InflationZero);
    }
    inflation(&chessboard_complex(m, n)?, &vec![r; m * n])
}

/// The inflation of a complex: vertex v splits into copies (v, c) for
/// c < mult[v], and each face is replaced by all of its colorings.
/// Vertex (v, c) gets index mult[0] + ... + mult[v-1] + c.
pub fn inflation(c: &SimplicialComplex, mult: &[usize]) -> Result<SimplicialComplex, FamilyError> {
    if mult.len() != c.vertex_count() {
        return Err(FamilyError::InflationLength {
            got: mult.len(),
            want: c.vertex_count(),
        });
    }
    if mult.contains(&0) {
        return Err(FamilyError::InflationZero);
    }
    let mut offsets = Vec::with_capacity(mult.len());
    let mut total = 0usize;
    for &m in mult {
        offsets.push(total);
        total += m;
    }
    if c.is_degenerate() {
        return Ok(SimplicialComplex::degenerate(total));
    }
    let mut budget: u128 = 0;
    for f in c.facets() {
        let prod: u128 = f.iter().map(|&v| mult[v] as u128).product();
        budget += prod;
        if budget > 1_000_000 {
            return Err(out_of_range("inflation would have more than 1000000 facets"));
        }
    }
    let mut facets = Vec::with_capacity(budget as usize);
    for f in c.facets() {
        if f.is_empty() {
            facets.push(Vec::new());
            continue;
        }
        let mut colors = vec![0usize; f.len()];
        loop {
            facets.push(
                f.iter()
                    .zip(&colors)
                    .map(|(&v, &col)| offsets[v] + col)
                    .collect(),
            );
            let mut t = 0;
            loop {
                if t == f.len() {
                    break;
                }
                colors[t] += 1;
                if colors[t] < mult[f[t]] {
                    break;
                }
                colors[t] = 0;
                t += 1;
            }
            if t == f.len() {
                break;
            }
        }
    }
    Ok(SimplicialComplex::from_facets(total, facets)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{order_complex, proper_part_complex};
    use crate::homology::{betti_open_interval, homology};
    use crate::oracles::{
        betti_gf, bouc_betti, catalan, derangements, partitions_of, q_multinomial, qpoly_eval,
        set_partitions_of_type, BettiGfFamily,
    };
    use crate::shelling::{betti_from_el, decreasing_chains, verify_el_labeling};
    use num::BigInt;
    use std::collections::BTreeMap;

    fn betti_table(p: &Poset) -> BTreeMap<i64, usize> {
        let (complex, _) = proper_part_complex(p);
        let result = homology(&complex);
        let mut out = BTreeMap::new();
        for i in -2..=complex.dim() {
            let b = result.betti(i);
            if b > 0 {
                out.insert(i, b);
            }
            assert!(result.torsion(i).is_empty(), "unexpected torsion in dim {i}");
        }
        out
    }

    fn table(entries: &[(i64, usize)]) -> BTreeMap<i64, usize> {
        entries.iter().copied().collect()
    }

    #[test]
    fn boolean_structure_and_labeling() {
        let p = boolean(4).unwrap();
        assert_eq!(p.len(), 16);
        assert!(p.is_lattice());
        assert_eq!(p.atoms().unwrap().len(), 4);
        assert_eq!(p.mobius_invariant().unwrap(), BigInt::from(1));
        assert_eq!(p.label(0), "{}");
        assert_eq!(p.label(0b1010), "{2,4}");

        let (p, lab) = boolean_with_labeling(3).unwrap();
        assert!(verify_el_labeling(&p, &lab).unwrap());
        assert_eq!(decreasing_chains(&p, &lab).unwrap().len(), 1);
        assert_eq!(betti_from_el(&p, &lab).unwrap(), table(&[(1, 1)]));
    }

    #[test]
    fn subspace_lattice_counts_and_mobius() {
        let p = subspace_lattice(3, 2).unwrap();
        assert_eq!(p.len(), 16);
        assert!(p.is_lattice());
        let ranks = p.rank_function().unwrap();
        let mut by_rank = [0usize; 4];
        for &r in &ranks {
            by_rank[r] += 1;
        }
        for k in 0..=3usize {
            let gauss = qpoly_eval(&q_multinomial(&[k, 3 - k]), &BigInt::from(2));
            assert_eq!(BigInt::from(by_rank[k]), gauss);
        }
        // mobius of B_n(q) is (-1)^n q^binom(n,2)
        assert_eq!(p.mobius_invariant().unwrap(), BigInt::from(-8));

        let p4 = subspace_lattice(2, 4).unwrap();
        assert_eq!(p4.len(), 7);
        assert_eq!(p4.mobius_invariant().unwrap(), BigInt::from(4));

        let p9 = subspace_lattice(2, 9).unwrap();
        assert_eq!(p9.len(), 12);
        assert_eq!(p9.mobius_invariant().unwrap(), BigInt::from(9));

        assert!(matches!(
            subspace_lattice(2, 6),
            Err(FamilyError::UnsupportedFieldOrder(6))
        ));
    }

    #[test]
    fn extension_field_tables_are_fields() {
        for &(q, _, _, _) in EXT_FIELDS {
            let gf = Gf::new(q as u64).unwrap();
            // every nonzero element has an inverse, and mul distributes
            for a in 1..q as u16 {
                assert!(
                    (1..q as u16).any(|b| gf.mul(a, b) == 1),
                    "no inverse for {a} in F_{q}"
                );
            }
            for a in 0..q as u16 {
                for b in 0..q as u16 {
                    assert_eq!(gf.add(a, gf.neg(a)), 0);
                    assert_eq!(gf.mul(a, b), gf.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn divisor_lattice_structure() {
        let p = divisor_lattice(12).unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.is_lattice());
        assert_eq!(p.mobius_invariant().unwrap(), BigInt::from(0));
        let p30 = divisor_lattice(30).unwrap();
        assert_eq!(p30.len(), 8);
        assert_eq!(p30.mobius_invariant().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn partition_lattice_pi4() {
        let p = partition_lattice(4).unwrap();
        assert_eq!(p.len(), 15);
        assert!(p.is_lattice());
        assert_eq!(p.mobius_invariant().unwrap(), BigInt::from(-6));
        assert_eq!(p.atoms().unwrap().len(), 6);
        assert_eq!(p.coatoms().unwrap().len(), 7);
        assert_eq!(p.count_maximal_chains(), 18);
        let bottom = p.bottom().unwrap();
        assert_eq!(p.label(bottom), "1|2|3|4");
        let top = p.top().unwrap();
        assert_eq!(p.label(top), "1,2,3,4");
    }

    #[test]
    fn partition_lattice_element_counts_match_bell() {
        for n in 1..=6 {
            let bell: BigInt = partitions_of(n).iter().map(set_partitions_of_type).sum();
            assert_eq!(BigInt::from(partition_lattice(n).unwrap().len()), bell);
        }
    }

    #[test]
    fn partition_labelings_are_el() {
        for kind in [PartitionLabelKind::MaxOfMins, PartitionLabelKind::MaxOfUnion] {
            let (p, lab) = partition_lattice_with_labeling(4, kind).unwrap();
            assert!(verify_el_labeling(&p, &lab).unwrap());
            assert_eq!(decreasing_chains(&p, &lab).unwrap().len(), 6);
            assert_eq!(betti_from_el(&p, &lab).unwrap(), table(&[(1, 6)]));
        }
    }

    #[test]
    fn type_b_counts_and_mobius() {
        assert_eq!(type_b_partition_lattice(1).unwrap().len(), 2);
        assert_eq!(type_b_partition_lattice(2).unwrap().len(), 6);
        assert_eq!(type_b_partition_lattice(3).unwrap().len(), 24);
        assert_eq!(type_b_partition_lattice(4).unwrap().len(), 116);
        assert_eq!(type_b_partition_lattice(5).unwrap().len(), 648);

        // sum of |mu| over the lattice counts the regions of the type B
        // braid arrangement: 2^n n!
        for (n, regions) in [(2usize, 8i64), (3, 48)] {
            let p = type_b_partition_lattice(n).unwrap();
            assert!(p.is_lattice());
            let bottom = p.bottom().unwrap();
            let total: BigInt = (0..p.len())
                .map(|x| {
                    let m = p.mobius(bottom, x);
                    if m < BigInt::from(0) {
                        -m
                    } else {
                        m
                    }
                })
                .sum();
            assert_eq!(total, BigInt::from(regions));
        }

        // proper part is a wedge of (2n-1)!! spheres of dimension n-2
        let p2 = type_b_partition_lattice(2).unwrap();
        assert_eq!(betti_table(&p2), table(&[(0, 3)]));
        let p3 = type_b_partition_lattice(3).unwrap();
        assert_eq!(betti_table(&p3), table(&[(1, 15)]));
    }

    #[test]
    fn cross_polytope_is_a_sphere() {
        let p2 = cross_polytope_face_lattice(2).unwrap();
        assert_eq!(p2.len(), 10);
        assert!(p2.is_lattice());
        assert_eq!(p2.mobius_invariant().unwrap(), BigInt::from(-1));
        assert_eq!(betti_table(&p2), table(&[(1, 1)]));

        let p3 = cross_polytope_face_lattice(3).unwrap();
        assert_eq!(p3.len(), 28);
        assert_eq!(p3.mobius_invariant().unwrap(), BigInt::from(1));
        assert_eq!(betti_table(&p3), table(&[(2, 1)]));
    }

    #[test]
    fn noncrossing_counts_are_catalan() {
        for n in 1..=8 {
            let p = noncrossing(n).unwrap();
            assert_eq!(BigInt::from(p.len()), catalan(n));
        }
        let p = noncrossing(4).unwrap();
        assert!(p.is_lattice());
        assert_eq!(p.mobius_invariant().unwrap(), BigInt::from(-5));
    }

    #[test]
    fn noncrossing_labeling_counts_catalan_decreasing_chains() {
        let (p, lab) = noncrossing_with_labeling(4).unwrap();
        assert!(verify_el_labeling(&p, &lab).unwrap());
        assert_eq!(decreasing_chains(&p, &lab).unwrap().len(), 5);
        let (p5, lab5) = noncrossing_with_labeling(5).unwrap();
        assert!(verify_el_labeling(&p5, &lab5).unwrap());
        assert_eq!(decreasing_chains(&p5, &lab5).unwrap().len(), 14);
    }

    #[test]
    fn bruhat_interval_of_s3() {
        let p = bruhat(3).unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.is_bounded());
        assert!(!p.is_lattice());
        let e = p.labels().iter().position(|l| l == "123").unwrap();
        let w0 = p.labels().iter().position(|l| l == "321").unwrap();
        assert_eq!(p.open_interval(e, w0).unwrap().poset.len(), 4);
        assert_eq!(p.mobius(e, w0), BigInt::from(-1));
        let h = betti_open_interval(&p, e, w0).unwrap();
        assert_eq!(h.betti(1), 1);
        assert_eq!(h.total_betti(), 1);
    }

    #[test]
    fn bruhat_length_two_intervals_are_diamonds() {
        let p = bruhat(4).unwrap();
        assert_eq!(p.len(), 24);
        let ranks = p.rank_function().unwrap();
        for u in 0..p.len() {
            for v in 0..p.len() {
                if p.lt(u, v) && ranks[v] == ranks[u] + 2 {
                    assert_eq!(p.closed_interval(u, v).unwrap().poset.len(), 4);
                }
            }
        }
    }

    #[test]
    fn block_restricted_matches_series_oracles() {
        // even block sizes on [4] and [6]
        let even4 = block_restricted_partition_poset(4, &SizeSpec::Divisible(2)).unwrap();
        assert_eq!(even4.len(), 4);
        assert_eq!(
            betti_table(&even4),
            oracle_table(&BettiGfFamily::ZeroModD { n: 2, d: 2 })
        );
        let even6 = block_restricted_partition_poset(6, &SizeSpec::Divisible(2)).unwrap();
        assert_eq!(even6.len(), 31);
        assert_eq!(
            betti_table(&even6),
            oracle_table(&BettiGfFamily::ZeroModD { n: 3, d: 2 })
        );

        // odd block sizes on [5]: a 10-point antichain below the top
        let odd5 = block_restricted_partition_poset(5, &SizeSpec::Congruent { r: 1, d: 2 }).unwrap();
        assert_eq!(odd5.len(), 12);
        assert_eq!(
            betti_table(&odd5),
            oracle_table(&BettiGfFamily::OneModD { n: 2, d: 2 })
        );

        // all blocks of size >= 3 on [6], and >= 2 on [6]
        let al3 = block_restricted_partition_poset(6, &SizeSpec::AtLeast(3)).unwrap();
        assert_eq!(
            betti_table(&al3),
            oracle_table(&BettiGfFamily::AtLeastK { n: 6, k: 3 })
        );
        let al2 = block_restricted_partition_poset(6, &SizeSpec::AtLeast(2)).unwrap();
        assert_eq!(
            betti_table(&al2),
            oracle_table(&BettiGfFamily::AtLeastK { n: 6, k: 2 })
        );

        // sizes = 2 mod 3 on [8]: a 105-point antichain below the top
        let cong = block_restricted_partition_poset(8, &SizeSpec::Congruent { r: 2, d: 3 }).unwrap();
        assert_eq!(cong.len(), 106);
        assert_eq!(
            betti_table(&cong),
            oracle_table(&BettiGfFamily::KModD { n: 2, d: 3, k: 2 })
        );

        // infeasible: no partition of [5] has all blocks even
        let empty = block_restricted_partition_poset(5, &SizeSpec::Divisible(2)).unwrap();
        assert!(empty.is_empty());

        // explicit size set {1, 3} on [5]
        let set = block_restricted_partition_poset(
            5,
            &SizeSpec::InSet([1, 3].into_iter().collect()),
        )
        .unwrap();
        assert_eq!(set.len(), 11);
        assert_eq!(betti_table(&set), table(&[(0, 9)]));
    }

    fn oracle_table(family: &BettiGfFamily) -> BTreeMap<i64, usize> {
        betti_gf(family)
            .unwrap()
            .into_iter()
            .map(|(d, v)| {
                let v: usize = v.to_string().parse().unwrap();
                (d, v)
            })
            .collect()
    }

    #[test]
    fn k_equal_poset_and_labeling() {
        let (p, lab) = k_equal_with_labeling(6, 3).unwrap();
        assert_eq!(p.len(), 53);
        assert!(verify_el_labeling(&p, &lab).unwrap());
        let el = betti_from_el(&p, &lab).unwrap();
        assert_eq!(el, table(&[(1, 10), (2, 10)]));
        assert_eq!(betti_table(&p), table(&[(1, 10), (2, 10)]));

        // k = 2 is the full partition lattice with a third EL-labeling
        let (p2, lab2) = k_equal_with_labeling(4, 2).unwrap();
        assert_eq!(p2.len(), 15);
        assert!(verify_el_labeling(&p2, &lab2).unwrap());
        assert_eq!(betti_from_el(&p2, &lab2).unwrap(), table(&[(1, 6)]));
    }

    #[test]
    fn word_posets_match_sphere_counts() {
        let i44 = word_poset(4, 4, WordKind::Injective).unwrap();
        assert_eq!(i44.len(), 64);
        let h = homology(&order_complex(&i44));
        assert_eq!(BigInt::from(h.betti(3)), derangements(4));
        assert_eq!(h.total_betti(), 9);

        let n33 = word_poset(3, 3, WordKind::Normal).unwrap();
        assert_eq!(n33.len(), 21);
        let h = homology(&order_complex(&n33));
        assert_eq!(h.betti(2), 8);
        assert_eq!(h.total_betti(), 8);

        let w32 = word_poset(3, 2, WordKind::All).unwrap();
        assert_eq!(w32.len(), 12);
        let h = homology(&order_complex(&w32));
        assert_eq!(h.betti(1), 4);
        assert_eq!(h.total_betti(), 4);
    }

    #[test]
    fn word_poset_covers_agree_with_subsequence_order() {
        fn is_subsequence(u: &[usize], v: &[usize]) -> bool {
            let mut it = v.iter();
            u.iter().all(|x| it.any(|y| y == x))
        }
        for (n, k, kind) in [
            (4, 3, WordKind::Injective),
            (3, 3, WordKind::Normal),
            (3, 3, WordKind::All),
        ] {
            let p = word_poset(n, k, kind).unwrap();
            let mut words: Vec<Vec<usize>> = Vec::new();
            collect_words(n, k, kind, &mut Vec::new(), &mut words);
            let q = Poset::from_order_relation(
                p.labels().to_vec(),
                |i, j| is_subsequence(&words[i], &words[j]),
            )
            .unwrap();
            assert_eq!(p.covers(), q.covers());
        }
    }

    #[test]
    fn graph_posets_match_wedge_counts() {
        let ncg = graph_property_poset(4, &GraphPredicate::Disconnected).unwrap();
        assert_eq!(ncg.len(), 26);
        assert_eq!(betti_table(&ncg), table(&[(1, 6)]));

        let cg = graph_property_poset(4, &GraphPredicate::Connected).unwrap();
        assert_eq!(cg.len(), 38);
        assert_eq!(betti_table(&cg), table(&[(2, 6)]));

        // NPM_{2n} is a wedge of (2n-3)!!^2 spheres of dimension 3n-4:
        // one 2-sphere at 2n = 4
        let npm = graph_property_poset(4, &GraphPredicate::NoPerfectMatching).unwrap();
        assert_eq!(npm.len(), 27);
        assert_eq!(betti_table(&npm), table(&[(2, 1)]));

        let nc2 = graph_property_poset(4, &GraphPredicate::NotKConnected(2)).unwrap();
        assert_eq!(nc2.len(), 54);
        assert_eq!(betti_table(&nc2), table(&[(3, 2)]));

        // not-1-edge-connected is the same family as disconnected
        let nec = graph_property_poset(4, &GraphPredicate::NotDEdgeConnected(1)).unwrap();
        assert_eq!(nec.len(), 26);
        assert_eq!(nec.covers(), ncg.covers());
    }

    #[test]
    fn no_perfect_matching_euler_characteristic_on_six_nodes() {
        // every lower set of a no-PM graph is no-PM, so each interval
        // below a graph G is Boolean and the reduced Euler characteristic
        // of the order complex is -sum over no-PM graphs of (-1)^edges;
        // the wedge of (2n-3)!!^2 spheres of dimension 3n-4 predicts
        // (-1)^5 * 9 at 2n = 6
        let n = 6;
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let mut chi = 0i64;
        let mut members = 0u32;
        for mask in 0..1u32 << edges.len() {
            if !has_perfect_matching(n, &edges, mask) {
                members += 1;
                chi -= if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            }
        }
        assert_eq!(members, 7945);
        assert_eq!(chi, -9);
    }

    #[test]
    fn matching_complexes_including_torsion() {
        let m5 = matching_complex(5).unwrap();
        assert_eq!(m5.facets().len(), 15);
        assert!(m5.is_pure());
        let h = homology(&m5);
        assert_eq!(BigInt::from(h.betti(1)), bouc_betti(5, 1));
        assert_eq!(h.betti(1), 6);

        // M_7 has 3-torsion in dimension 1 and twenty 2-spheres
        let m7 = matching_complex(7).unwrap();
        assert_eq!(m7.facets().len(), 105);
        let h = homology(&m7);
        assert_eq!(h.betti(1), 0);
        assert_eq!(h.torsion(1), vec![BigInt::from(3)]);
        assert_eq!(BigInt::from(h.betti(2)), bouc_betti(7, 2));
        assert_eq!(h.betti(2), 20);
    }

    #[test]
    fn chessboard_complexes() {
        let m23 = chessboard_complex(2, 3).unwrap();
        assert_eq!(m23.vertex_count(), 6);
        assert!(m23.is_pure());
        assert_eq!(m23.dim(), 1);
        let h = homology(&m23);
        assert_eq!(h.betti(0), 0);
        assert_eq!(h.betti(1), 1);
        assert_eq!(h.total_betti(), 1);

        // transposing the board gives an isomorphic complex
        let m32 = chessboard_complex(3, 2).unwrap();
        assert_eq!(m32.facets().len(), m23.facets().len());

        // the famous bottom homology of M_{5,5} is pure 3-torsion
        let m55 = chessboard_complex(5, 5).unwrap();
        assert_eq!(m55.facets().len(), 120);
        let h = homology(&m55);
        assert_eq!(h.betti(0), 0);
        assert_eq!(h.betti(1), 0);
        assert_eq!(h.betti(2), 0);
        assert_eq!(h.torsion(2), vec![BigInt::from(3)]);
    }

    #[test]
    fn inflation_of_an_edge_is_a_cycle() {
        let edge = SimplicialComplex::from_facets(2, vec![vec![0, 1]]).unwrap();
        let c = inflation(&edge, &[2, 2]).unwrap();
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(c.facets().len(), 4);
        let h = homology(&c);
        assert_eq!(h.betti(1), 1);
        assert_eq!(h.total_betti(), 1);

        let colored = colored_chessboard_complex(2, 3, 1).unwrap();
        assert_eq!(colored.facets(), chessboard_complex(2, 3).unwrap().facets());

        assert!(matches!(
            inflation(&edge, &[2]),
            Err(FamilyError::InflationLength { got: 1, want: 2 })
        ));
        assert!(matches!(inflation(&edge, &[2, 0]), Err(FamilyError::InflationZero)));
    }

    #[test]
    fn family_spec_dispatch() {
        let direct = partition_lattice(3).unwrap();
        let via_spec = build(&FamilySpec::Partition { n: 3 }).unwrap();
        assert_eq!(direct.labels(), via_spec.labels());
        assert_eq!(direct.covers(), via_spec.covers());
        assert!(build(&FamilySpec::Bruhat { n: 9 }).is_err());
    }
}
