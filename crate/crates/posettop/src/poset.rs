//! Finite posets: Hasse diagrams, order relations, Möbius functions,
//! derived posets, and structure queries.
//!
//! A [`Poset`] stores element labels, the transitively reduced cover
//! relation, and a cached bit-matrix of the full order relation (the
//! reflexive-transitive closure of the covers). Everything else is
//! derived from these: rank functions, lattice tests, intervals, duals,
//! maximal chains, and the Möbius function (memoized).

use num::{BigInt, One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;
use thiserror::Error;

/// Hard cap on poset size; constructions beyond this are refused.
pub const MAX_ELEMENTS: usize = 50_000;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("element id {0} is out of range")]
    InvalidElement(usize),
    #[error("cover relation contains the self-pair ({0}, {0})")]
    SelfPair(usize),
    #[error("cycle detected: {0:?}")]
    Cycle(Vec<usize>),
    #[error("poset has {0} elements, exceeding the limit of {1}")]
    TooLarge(usize, usize),
    #[error("elements {0} and {1} are incomparable")]
    Incomparable(usize, usize),
    #[error("poset is not bounded")]
    NotBounded,
    #[error("poset has no rank function: {0}")]
    NotGraded(String),
    #[error("poset is not a lattice")]
    NotLattice,
    #[error("the order relation is not antisymmetric: {0} and {1}")]
    NotAntisymmetric(usize, usize),
    #[error("the order relation is not transitive at {0} <= {1} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("{0}")]
    Invalid(String),
}

/// Dense bit matrix, row-major, used for the order relation.
#[derive(Clone)]
pub(crate) struct BitMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub(crate) fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitMatrix {
            n,
            words_per_row,
            bits: vec![0u64; n * words_per_row],
        }
    }

    #[inline]
    pub(crate) fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words_per_row + j / 64] |= 1u64 << (j % 64);
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// row(i) |= row(j)
    fn or_row(&mut self, i: usize, j: usize) {
        let w = self.words_per_row;
        if i == j {
            return;
        }
        let (lo, hi, i_first) = if i < j { (i, j, true) } else { (j, i, false) };
        let (a, b) = self.bits.split_at_mut(hi * w);
        let lo_slice = &mut a[lo * w..lo * w + w];
        let hi_slice = &mut b[..w];
        if i_first {
            for k in 0..w {
                lo_slice[k] |= hi_slice[k];
            }
        } else {
            for k in 0..w {
                hi_slice[k] |= lo_slice[k];
            }
        }
    }

    fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            let row = self.row(i);
            for (wi, &word) in row.iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let b = w.trailing_zeros() as usize;
                    t.set(wi * 64 + b, i);
                    w &= w - 1;
                }
            }
        }
        t
    }

    /// Indices of set bits in row `i`, ascending.
    fn row_ones(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (wi, &word) in self.row(i).iter().enumerate() {
            let mut w = word;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                out.push(wi * 64 + b);
                w &= w - 1;
            }
        }
        out
    }

    /// popcount of row(i) & row2(j) with bits `skip` cleared.
    fn and_count_excluding(&self, i: usize, other: &BitMatrix, j: usize, skip: &[usize]) -> usize {
        let a = self.row(i);
        let b = other.row(j);
        let mut count = 0usize;
        for k in 0..self.words_per_row {
            let mut w = a[k] & b[k];
            for &s in skip {
                if s / 64 == k {
                    w &= !(1u64 << (s % 64));
                }
            }
            count += w.count_ones() as usize;
        }
        count
    }
}

/// A finite poset.
pub struct Poset {
    labels: Vec<String>,
    covers: Vec<(usize, usize)>,
    /// leq.get(x, y) == true iff x <= y
    leq: BitMatrix,
    /// geq = transpose of leq: geq.get(x, y) iff y <= x
    geq: BitMatrix,
    up_covers: Vec<Vec<usize>>,
    down_covers: Vec<Vec<usize>>,
    /// a linear extension: element ids sorted compatibly with the order
    topo: Vec<usize>,
    topo_pos: Vec<usize>,
    mobius_memo: RwLock<HashMap<(usize, usize), BigInt>>,
}

impl Clone for Poset {
    fn clone(&self) -> Self {
        Poset {
            labels: self.labels.clone(),
            covers: self.covers.clone(),
            leq: self.leq.clone(),
            geq: self.geq.clone(),
            up_covers: self.up_covers.clone(),
            down_covers: self.down_covers.clone(),
            topo: self.topo.clone(),
            topo_pos: self.topo_pos.clone(),
            mobius_memo: RwLock::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("n", &self.len())
            .field("covers", &self.covers)
            .finish()
    }
}

/// A derived poset together with the mapping from its element ids back to
/// the source poset (`None` for freshly adjoined elements).
pub struct Derived {
    pub poset: Poset,
    pub source_ids: Vec<Option<usize>>,
}

/// Report produced by [`Poset::structure_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub is_pure: bool,
    pub is_bounded: bool,
    pub is_lattice: bool,
    pub is_meet_semilattice: bool,
    pub is_join_semilattice: bool,
    pub length: i64,
    /// rank of each element, present when the poset is graded from a
    /// unique bottom
    pub rank: Option<Vec<usize>>,
    pub atoms: Option<Vec<usize>>,
    pub coatoms: Option<Vec<usize>>,
    pub num_maximal_chains: usize,
}

impl Poset {
    /// Build a poset from labels and a cover (or more generally, order
    /// generating) relation. Pairs must not relate an element to itself;
    /// cycles are rejected with an offending cycle. Redundant pairs
    /// (implied by transitivity) are dropped from the stored Hasse
    /// diagram.
    pub fn from_covers(
        labels: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Poset, PosetError> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n, MAX_ELEMENTS));
        }
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in pairs {
            if a >= n {
                return Err(PosetError::InvalidElement(a));
            }
            if b >= n {
                return Err(PosetError::InvalidElement(b));
            }
            if a == b {
                return Err(PosetError::SelfPair(a));
            }
            adj[a].push(b);
        }
        for row in adj.iter_mut() {
            row.sort_unstable();
            row.dedup();
        }

        let topo = topo_sort(n, &adj)?;

        // reflexive-transitive closure, in reverse topological order
        let mut leq = BitMatrix::new(n);
        for &x in topo.iter().rev() {
            leq.set(x, x);
            for &y in &adj[x] {
                leq.or_row(x, y);
            }
        }

        // keep exactly the input pairs that are covers
        let geq = leq.transpose();
        let mut covers = Vec::new();
        for (a, row) in adj.iter().enumerate() {
            for &b in row {
                if leq.and_count_excluding(a, &geq, b, &[a, b]) == 0 {
                    covers.push((a, b));
                }
            }
        }
        covers.sort_unstable();

        Ok(Self::assemble(labels, leq, geq, covers, topo))
    }

    /// Build a poset from an arbitrary order predicate on `0..n`. The
    /// predicate must be reflexive and transitive; antisymmetry is
    /// verified. Covers are computed by transitive reduction.
    pub fn from_order_relation(
        labels: Vec<String>,
        leq_fn: impl Fn(usize, usize) -> bool,
    ) -> Result<Poset, PosetError> {
        let n = labels.len();
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n, MAX_ELEMENTS));
        }
        let mut leq = BitMatrix::new(n);
        for i in 0..n {
            leq.set(i, i);
            for j in 0..n {
                if i != j && leq_fn(i, j) {
                    if leq_fn(j, i) {
                        return Err(PosetError::NotAntisymmetric(i, j));
                    }
                    leq.set(i, j);
                }
            }
        }
        Self::from_leq_matrix(labels, leq)
    }

    /// Assemble from a complete order matrix (used by `from_order_relation`
    /// and by induced subposets). Verifies transitivity.
    fn from_leq_matrix(labels: Vec<String>, leq: BitMatrix) -> Result<Poset, PosetError> {
        let n = labels.len();
        let geq = leq.transpose();
        // transitivity: x <= y implies above(y) subset of above(x)
        for x in 0..n {
            for y in leq.row_ones(x) {
                if y == x {
                    continue;
                }
                for k in 0..leq.words_per_row {
                    let extra = leq.row(y)[k] & !leq.row(x)[k];
                    if extra != 0 {
                        let z = k * 64 + extra.trailing_zeros() as usize;
                        return Err(PosetError::NotTransitive(x, y, z));
                    }
                }
            }
        }
        // linear extension: sort by size of the down-set (strictly monotone
        // along the order)
        let mut topo: Vec<usize> = (0..n).collect();
        let below_count: Vec<usize> = (0..n)
            .map(|x| geq.row(x).iter().map(|w| w.count_ones() as usize).sum())
            .collect();
        topo.sort_by_key(|&x| (below_count[x], x));

        // covers by transitive reduction
        let mut covers = Vec::new();
        for a in 0..n {
            for b in leq.row_ones(a) {
                if b == a {
                    continue;
                }
                if leq.and_count_excluding(a, &geq, b, &[a, b]) == 0 {
                    covers.push((a, b));
                }
            }
        }
        covers.sort_unstable();
        Ok(Self::assemble(labels, leq, geq, covers, topo))
    }

    fn assemble(
        labels: Vec<String>,
        leq: BitMatrix,
        geq: BitMatrix,
        covers: Vec<(usize, usize)>,
        topo: Vec<usize>,
    ) -> Poset {
        let n = labels.len();
        let mut up_covers = vec![Vec::new(); n];
        let mut down_covers = vec![Vec::new(); n];
        for &(a, b) in &covers {
            up_covers[a].push(b);
            down_covers[b].push(a);
        }
        for v in up_covers.iter_mut().chain(down_covers.iter_mut()) {
            v.sort_unstable();
        }
        let mut topo_pos = vec![0usize; n];
        for (i, &x) in topo.iter().enumerate() {
            topo_pos[x] = i;
        }
        Poset {
            labels,
            covers,
            leq,
            geq,
            up_covers,
            down_covers,
            topo,
            topo_pos,
            mobius_memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// The transitively reduced cover relation, sorted lexicographically.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// x <= y in the order.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq.get(x, y)
    }

    /// x < y strictly.
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq.get(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq.get(x, y) || self.leq.get(y, x)
    }

    /// Elements covering x, ascending.
    pub fn up_covers(&self, x: usize) -> &[usize] {
        &self.up_covers[x]
    }

    /// Elements covered by x, ascending.
    pub fn down_covers(&self, x: usize) -> &[usize] {
        &self.down_covers[x]
    }

    /// A linear extension of the order.
    pub fn linear_extension(&self) -> &[usize] {
        &self.topo
    }

    /// All y with x <= y, ascending by id.
    pub fn up_set(&self, x: usize) -> Vec<usize> {
        self.leq.row_ones(x)
    }

    /// All y with y <= x, ascending by id.
    pub fn down_set(&self, x: usize) -> Vec<usize> {
        self.geq.row_ones(x)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.down_covers[x].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.up_covers[x].is_empty()).collect()
    }

    /// The unique minimum, if one exists.
    pub fn bottom(&self) -> Option<usize> {
        let mins = self.minimal_elements();
        if mins.len() == 1 {
            Some(mins[0])
        } else {
            None
        }
    }

    /// The unique maximum, if one exists.
    pub fn top(&self) -> Option<usize> {
        let maxs = self.maximal_elements();
        if maxs.len() == 1 {
            Some(maxs[0])
        } else {
            None
        }
    }

    pub fn is_bounded(&self) -> bool {
        !self.is_empty() && self.bottom().is_some() && self.top().is_some()
    }

    /// Length of the longest chain (edge count); -1 for the empty poset.
    pub fn length(&self) -> i64 {
        let mut longest: Vec<i64> = vec![0; self.len()];
        let mut best = -1i64;
        for &x in &self.topo {
            let mut l = 0i64;
            for &d in &self.down_covers[x] {
                l = l.max(longest[d] + 1);
            }
            longest[x] = l;
            best = best.max(l);
        }
        best
    }

    /// Pure means all maximal chains have the same length.
    pub fn is_pure(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        // Every maximal chain through x splits into a saturated chain down
        // to a minimal element and one up to a maximal element, and any
        // such pair glues to a maximal chain. So all maximal chains have
        // the full length iff, at every x, both the shortest and longest
        // such distances sum to the poset length.
        let n = self.len();
        let mut lo_down = vec![0i64; n];
        let mut hi_down = vec![0i64; n];
        for &x in &self.topo {
            if self.down_covers[x].is_empty() {
                continue;
            }
            lo_down[x] = self.down_covers[x].iter().map(|&d| lo_down[d] + 1).min().unwrap();
            hi_down[x] = self.down_covers[x].iter().map(|&d| hi_down[d] + 1).max().unwrap();
        }
        let mut lo_up = vec![0i64; n];
        let mut hi_up = vec![0i64; n];
        for &x in self.topo.iter().rev() {
            if self.up_covers[x].is_empty() {
                continue;
            }
            lo_up[x] = self.up_covers[x].iter().map(|&u| lo_up[u] + 1).min().unwrap();
            hi_up[x] = self.up_covers[x].iter().map(|&u| hi_up[u] + 1).max().unwrap();
        }
        let total = self.length();
        (0..n).all(|x| lo_down[x] + lo_up[x] == total && hi_down[x] + hi_up[x] == total)
    }

    /// The rank function when the poset is graded from a unique bottom:
    /// every saturated chain from the bottom to an element has the same
    /// length.
    pub fn rank_function(&self) -> Result<Vec<usize>, PosetError> {
        let bottom = self
            .bottom()
            .ok_or_else(|| PosetError::NotGraded("no unique bottom element".into()))?;
        let n = self.len();
        let mut rank = vec![usize::MAX; n];
        rank[bottom] = 0;
        for &x in &self.topo {
            if x == bottom {
                continue;
            }
            let mut r = usize::MAX;
            for &d in &self.down_covers[x] {
                if rank[d] == usize::MAX {
                    return Err(PosetError::NotGraded(format!(
                        "element {} has an unranked lower cover",
                        x
                    )));
                }
                if r == usize::MAX {
                    r = rank[d] + 1;
                } else if r != rank[d] + 1 {
                    return Err(PosetError::NotGraded(format!(
                        "element {} has lower covers of different ranks",
                        x
                    )));
                }
            }
            if r == usize::MAX {
                return Err(PosetError::NotGraded(format!(
                    "element {} is minimal but not the bottom",
                    x
                )));
            }
            rank[x] = r;
        }
        Ok(rank)
    }

    /// Atoms: elements covering the bottom. Requires a unique bottom.
    pub fn atoms(&self) -> Result<Vec<usize>, PosetError> {
        let b = self.bottom().ok_or(PosetError::NotBounded)?;
        Ok(self.up_covers[b].clone())
    }

    /// Coatoms: elements covered by the top. Requires a unique top.
    pub fn coatoms(&self) -> Result<Vec<usize>, PosetError> {
        let t = self.top().ok_or(PosetError::NotBounded)?;
        Ok(self.down_covers[t].clone())
    }

    /// Meet (greatest lower bound) of x and y, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        // candidate: the common lower bound with the largest down-set
        let w = self.geq.words_per_row;
        let rx = self.geq.row(x);
        let ry = self.geq.row(y);
        let mut best: Option<usize> = None;
        let mut best_pos = 0usize;
        for k in 0..w {
            let mut word = rx[k] & ry[k];
            while word != 0 {
                let z = k * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                if best.is_none() || self.topo_pos[z] > best_pos {
                    best = Some(z);
                    best_pos = self.topo_pos[z];
                }
            }
        }
        let z = best?;
        // z is the meet iff every common lower bound lies below z
        for k in 0..w {
            if rx[k] & ry[k] & !self.geq.row(z)[k] != 0 {
                return None;
            }
        }
        Some(z)
    }

    /// Join (least upper bound) of x and y, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Option<usize> {
        let w = self.leq.words_per_row;
        let rx = self.leq.row(x);
        let ry = self.leq.row(y);
        let mut best: Option<usize> = None;
        let mut best_pos = usize::MAX;
        for k in 0..w {
            let mut word = rx[k] & ry[k];
            while word != 0 {
                let z = k * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                if best.is_none() || self.topo_pos[z] < best_pos {
                    best = Some(z);
                    best_pos = self.topo_pos[z];
                }
            }
        }
        let z = best?;
        for k in 0..w {
            if rx[k] & ry[k] & !self.leq.row(z)[k] != 0 {
                return None;
            }
        }
        Some(z)
    }

    pub fn is_meet_semilattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x + 1..n).all(|y| self.meet(x, y).is_some()))
    }

    pub fn is_join_semilattice(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x + 1..n).all(|y| self.join(x, y).is_some()))
    }

    pub fn is_lattice(&self) -> bool {
        !self.is_empty() && self.is_meet_semilattice() && self.is_join_semilattice()
    }

    /// All maximal chains as id sequences, in lexicographic order.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = Vec::new();
        let mut mins = self.minimal_elements();
        mins.sort_unstable();
        for m in mins {
            self.chains_dfs(m, &mut stack, &mut out);
        }
        out
    }

    fn chains_dfs(&self, x: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        stack.push(x);
        if self.up_covers[x].is_empty() {
            out.push(stack.clone());
        } else {
            for &y in &self.up_covers[x] {
                self.chains_dfs(y, stack, out);
            }
        }
        stack.pop();
    }

    /// Number of maximal chains (without materializing them).
    pub fn count_maximal_chains(&self) -> u128 {
        let n = self.len();
        let mut paths: Vec<u128> = vec![0; n];
        for &x in &self.topo {
            paths[x] = if self.down_covers[x].is_empty() {
                1
            } else {
                self.down_covers[x].iter().map(|&d| paths[d]).sum()
            };
        }
        (0..n)
            .filter(|&x| self.up_covers[x].is_empty())
            .map(|x| paths[x])
            .sum()
    }

    /// All chains (totally ordered subsets) of the given size, each listed
    /// bottom-to-top. Size 0 gives the single empty chain. Enumeration
    /// follows the stored linear extension, so output order is
    /// deterministic.
    pub fn chains_of_size(&self, size: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if size == 0 {
            out.push(Vec::new());
            return out;
        }
        fn rec(
            p: &Poset,
            start: usize,
            size: usize,
            stack: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if stack.len() == size {
                out.push(stack.clone());
                return;
            }
            // remaining elements needed must fit above the current top
            for idx in start..p.topo.len() {
                let x = p.topo[idx];
                if let Some(&last) = stack.last() {
                    if !p.lt(last, x) {
                        continue;
                    }
                }
                stack.push(x);
                rec(p, idx + 1, size, stack, out);
                stack.pop();
            }
        }
        rec(self, 0, size, &mut Vec::new(), &mut out);
        out
    }

    /// The Möbius function of the interval `[x, y]`; zero when x is not
    /// below y. Memoized; the cache is idempotent and lock-protected.
    pub fn mobius(&self, x: usize, y: usize) -> BigInt {
        if !self.leq(x, y) {
            return BigInt::zero();
        }
        if x == y {
            return BigInt::one();
        }
        if let Ok(memo) = self.mobius_memo.read() {
            if let Some(v) = memo.get(&(x, y)) {
                return v.clone();
            }
        }
        // compute mu(x, z) for the whole interval in one pass
        let mut interval: Vec<usize> = self
            .up_set(x)
            .into_iter()
            .filter(|&z| self.leq(z, y))
            .collect();
        interval.sort_by_key(|&z| self.topo_pos[z]);
        let mut local: HashMap<usize, BigInt> = HashMap::new();
        for (i, &z) in interval.iter().enumerate() {
            if z == x {
                local.insert(z, BigInt::one());
                continue;
            }
            let mut acc = BigInt::zero();
            for &w in &interval[..i] {
                if self.leq(w, z) && w != z {
                    acc += &local[&w];
                }
            }
            local.insert(z, -acc);
        }
        let result = local[&y].clone();
        if let Ok(mut memo) = self.mobius_memo.write() {
            for (z, v) in local {
                memo.insert((x, z), v);
            }
        }
        result
    }

    /// Möbius invariant of a bounded poset: mu(bottom, top).
    pub fn mobius_invariant(&self) -> Result<BigInt, PosetError> {
        let b = self.bottom().ok_or(PosetError::NotBounded)?;
        let t = self.top().ok_or(PosetError::NotBounded)?;
        Ok(self.mobius(b, t))
    }

    /// Möbius invariant of the bounded extension: mu over the poset with
    /// fresh bottom and top adjoined (always adjoined, even if bounded).
    pub fn mobius_of_bounded_extension(&self) -> BigInt {
        let ext = self.bounded_extension();
        ext.poset
            .mobius_invariant()
            .expect("bounded extension is bounded")
    }

    /// Structure report: purity, boundedness, lattice property, length,
    /// ranks, atoms/coatoms, chain count.
    pub fn structure_report(&self) -> StructureReport {
        StructureReport {
            is_pure: self.is_pure(),
            is_bounded: self.is_bounded(),
            is_lattice: self.is_lattice(),
            is_meet_semilattice: self.is_meet_semilattice(),
            is_join_semilattice: self.is_join_semilattice(),
            length: self.length(),
            rank: self.rank_function().ok(),
            atoms: self.atoms().ok(),
            coatoms: self.coatoms().ok(),
            num_maximal_chains: self.count_maximal_chains() as usize,
        }
    }

    // ---- derived posets ----

    /// The dual poset (order reversed); ids are unchanged.
    pub fn dual(&self) -> Derived {
        let n = self.len();
        let mut covers: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        covers.sort_unstable();
        let leq = self.geq.clone();
        let geq = self.leq.clone();
        let topo: Vec<usize> = self.topo.iter().rev().copied().collect();
        let poset = Poset::assemble(self.labels.clone(), leq, geq, covers, topo);
        Derived {
            poset,
            source_ids: (0..n).map(Some).collect(),
        }
    }

    /// Induced subposet on the given elements (need not be sorted; they are
    /// deduplicated and sorted). New ids follow the sorted order.
    pub fn induced_subposet(&self, elements: &[usize]) -> Result<Derived, PosetError> {
        let mut keep: Vec<usize> = elements.to_vec();
        keep.sort_unstable();
        keep.dedup();
        for &x in &keep {
            if x >= self.len() {
                return Err(PosetError::InvalidElement(x));
            }
        }
        let m = keep.len();
        let mut leq = BitMatrix::new(m);
        for (i, &x) in keep.iter().enumerate() {
            for (j, &y) in keep.iter().enumerate() {
                if self.leq(x, y) {
                    leq.set(i, j);
                }
            }
        }
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        let poset = Poset::from_leq_matrix(labels, leq)?;
        Ok(Derived {
            poset,
            source_ids: keep.into_iter().map(Some).collect(),
        })
    }

    /// Proper part: remove the unique minimum (if any) and unique maximum
    /// (if any).
    pub fn proper_part(&self) -> Derived {
        let mut drop = Vec::new();
        if let Some(b) = self.bottom() {
            drop.push(b);
        }
        if let Some(t) = self.top() {
            drop.push(t);
        }
        let keep: Vec<usize> = (0..self.len()).filter(|x| !drop.contains(x)).collect();
        self.induced_subposet(&keep)
            .expect("proper part elements are valid")
    }

    /// Adjoin a fresh bottom (id n) and a fresh top (id n+1),
    /// unconditionally.
    pub fn bounded_extension(&self) -> Derived {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push("0̂".to_string());
        labels.push("1̂".to_string());
        let bottom = n;
        let top = n + 1;
        let mut pairs: Vec<(usize, usize)> = self.covers.clone();
        if n == 0 {
            pairs.push((bottom, top));
        } else {
            for m in self.minimal_elements() {
                pairs.push((bottom, m));
            }
            for m in self.maximal_elements() {
                pairs.push((m, top));
            }
        }
        let poset = Poset::from_covers(labels, &pairs).expect("bounded extension is acyclic");
        let mut source_ids: Vec<Option<usize>> = (0..n).map(Some).collect();
        source_ids.push(None);
        source_ids.push(None);
        Derived { poset, source_ids }
    }

    /// Adjoin a fresh top only.
    pub fn with_fresh_top(&self) -> Derived {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push("1̂".to_string());
        let mut pairs: Vec<(usize, usize)> = self.covers.clone();
        for m in self.maximal_elements() {
            pairs.push((m, n));
        }
        let poset = Poset::from_covers(labels, &pairs).expect("fresh top is acyclic");
        let mut source_ids: Vec<Option<usize>> = (0..n).map(Some).collect();
        source_ids.push(None);
        Derived { poset, source_ids }
    }

    /// Open interval (x, y): elements strictly between x and y. Errors when
    /// x is not less-or-equal y.
    pub fn open_interval(&self, x: usize, y: usize) -> Result<Derived, PosetError> {
        if x >= self.len() {
            return Err(PosetError::InvalidElement(x));
        }
        if y >= self.len() {
            return Err(PosetError::InvalidElement(y));
        }
        if !self.leq(x, y) {
            return Err(PosetError::Incomparable(x, y));
        }
        let keep: Vec<usize> = self
            .up_set(x)
            .into_iter()
            .filter(|&z| z != x && z != y && self.leq(z, y))
            .collect();
        self.induced_subposet(&keep)
    }

    /// Closed interval [x, y].
    pub fn closed_interval(&self, x: usize, y: usize) -> Result<Derived, PosetError> {
        if x >= self.len() {
            return Err(PosetError::InvalidElement(x));
        }
        if y >= self.len() {
            return Err(PosetError::InvalidElement(y));
        }
        if !self.leq(x, y) {
            return Err(PosetError::Incomparable(x, y));
        }
        let keep: Vec<usize> = self
            .up_set(x)
            .into_iter()
            .filter(|&z| self.leq(z, y))
            .collect();
        self.induced_subposet(&keep)
    }

    /// Upper set of x: all z >= x (or z > x when strict).
    pub fn upper_set(&self, x: usize, strict: bool) -> Result<Derived, PosetError> {
        if x >= self.len() {
            return Err(PosetError::InvalidElement(x));
        }
        let keep: Vec<usize> = self
            .up_set(x)
            .into_iter()
            .filter(|&z| !strict || z != x)
            .collect();
        self.induced_subposet(&keep)
    }

    /// Lower set of x: all z <= x (or z < x when strict).
    pub fn lower_set(&self, x: usize, strict: bool) -> Result<Derived, PosetError> {
        if x >= self.len() {
            return Err(PosetError::InvalidElement(x));
        }
        let keep: Vec<usize> = self
            .down_set(x)
            .into_iter()
            .filter(|&z| !strict || z != x)
            .collect();
        self.induced_subposet(&keep)
    }

    /// Direct product: elements are pairs, ordered componentwise. Labels
    /// are "(a,b)".
    pub fn direct_product(&self, other: &Poset) -> Result<Poset, PosetError> {
        let n1 = self.len();
        let n2 = other.len();
        let n = n1.checked_mul(n2).ok_or(PosetError::TooLarge(usize::MAX, MAX_ELEMENTS))?;
        if n > MAX_ELEMENTS {
            return Err(PosetError::TooLarge(n, MAX_ELEMENTS));
        }
        let id = |i: usize, j: usize| i * n2 + j;
        let mut labels = Vec::with_capacity(n);
        for i in 0..n1 {
            for j in 0..n2 {
                labels.push(format!("({},{})", self.labels[i], other.labels[j]));
            }
        }
        let mut pairs = Vec::new();
        for &(a, b) in &self.covers {
            for j in 0..n2 {
                pairs.push((id(a, j), id(b, j)));
            }
        }
        for &(a, b) in &other.covers {
            for i in 0..n1 {
                pairs.push((id(i, a), id(i, b)));
            }
        }
        Poset::from_covers(labels, &pairs)
    }

    /// Check whether `f: self -> other` (given as a map of element ids) is
    /// order-preserving.
    pub fn is_order_preserving(&self, other: &Poset, f: &[usize]) -> bool {
        if f.len() != self.len() {
            return false;
        }
        if f.iter().any(|&y| y >= other.len()) {
            return false;
        }
        (0..self.len()).all(|x| {
            (0..self.len()).all(|y| !self.leq(x, y) || other.leq(f[x], f[y]))
        })
    }
}

fn topo_sort(n: usize, adj: &[Vec<usize>]) -> Result<Vec<usize>, PosetError> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let mut indeg = vec![0usize; n];
    for row in adj {
        for &b in row {
            indeg[b] += 1;
        }
    }
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&x| indeg[x] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(x)) = heap.pop() {
        order.push(x);
        for &y in &adj[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                heap.push(Reverse(y));
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Extract a witness cycle. Every unordered vertex keeps an incoming
    // edge from another unordered vertex, so walking predecessors must
    // revisit one.
    let mut remaining = vec![true; n];
    for &x in &order {
        remaining[x] = false;
    }
    let mut pred = vec![usize::MAX; n];
    for (a, row) in adj.iter().enumerate() {
        if !remaining[a] {
            continue;
        }
        for &b in row {
            if remaining[b] && pred[b] == usize::MAX {
                pred[b] = a;
            }
        }
    }
    let start = (0..n).find(|&x| remaining[x]).unwrap();
    let mut path = vec![start];
    let mut on_path = vec![false; n];
    on_path[start] = true;
    let mut x = start;
    loop {
        let p = pred[x];
        debug_assert!(p != usize::MAX);
        if on_path[p] {
            let pos = path.iter().position(|&q| q == p).unwrap();
            // path edges run right-to-left; reverse for forward order
            let mut cycle: Vec<usize> = path[pos..].to_vec();
            cycle.reverse();
            return Err(PosetError::Cycle(cycle));
        }
        on_path[p] = true;
        path.push(p);
        x = p;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    fn diamond() -> Poset {
        // 0 < 1, 2 < 3
        Poset::from_covers(labels(4), &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn boolean3() -> Poset {
        // subsets of {0,1,2} by id = bitmask
        let mut pairs = Vec::new();
        for s in 0u32..8 {
            for b in 0..3 {
                if s >> b & 1 == 0 {
                    pairs.push((s as usize, (s | 1 << b) as usize));
                }
            }
        }
        Poset::from_covers(labels(8), &pairs).unwrap()
    }

    #[test]
    fn cycle_rejected_with_witness() {
        let err = Poset::from_covers(labels(4), &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        match err {
            Err(PosetError::Cycle(c)) => {
                assert!(c.len() >= 2);
                // the witness really is a cycle of the input edges
                for i in 0..c.len() {
                    let a = c[i];
                    let b = c[(i + 1) % c.len()];
                    assert!(
                        [(0, 1), (1, 2), (2, 0)].contains(&(a, b)),
                        "({}, {}) not an input edge",
                        a,
                        b
                    );
                }
            }
            other => panic!("expected cycle error, got {:?}", other.map(|p| p.len())),
        }
    }

    #[test]
    fn self_pair_rejected() {
        assert!(matches!(
            Poset::from_covers(labels(2), &[(1, 1)]),
            Err(PosetError::SelfPair(1))
        ));
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(matches!(
            Poset::from_covers(labels(2), &[(0, 5)]),
            Err(PosetError::InvalidElement(5))
        ));
    }

    #[test]
    fn transitive_pairs_are_reduced() {
        let p = Poset::from_covers(labels(3), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert!(p.leq(0, 2));
        // reduction is idempotent: rebuilding from the covers changes nothing
        let q = Poset::from_covers(labels(3), p.covers()).unwrap();
        assert_eq!(q.covers(), p.covers());
    }

    #[test]
    fn closure_and_queries_on_diamond() {
        let p = diamond();
        assert!(p.leq(0, 3));
        assert!(!p.leq(1, 2));
        assert!(p.is_bounded());
        assert!(p.is_lattice());
        assert!(p.is_pure());
        assert_eq!(p.length(), 2);
        assert_eq!(p.atoms().unwrap(), vec![1, 2]);
        assert_eq!(p.coatoms().unwrap(), vec![1, 2]);
        assert_eq!(p.rank_function().unwrap(), vec![0, 1, 1, 2]);
        assert_eq!(p.maximal_chains(), vec![vec![0, 1, 3], vec![0, 2, 3]]);
        assert_eq!(p.count_maximal_chains(), 2);
        assert_eq!(p.mobius(0, 3), BigInt::from(1));
        assert_eq!(p.mobius(0, 1), BigInt::from(-1));
        assert_eq!(p.mobius(0, 0), BigInt::from(1));
        assert_eq!(p.mobius(1, 2), BigInt::from(0));
    }

    #[test]
    fn boolean_lattice_structure() {
        let p = boolean3();
        assert!(p.is_lattice());
        assert!(p.is_pure());
        assert_eq!(p.length(), 3);
        assert_eq!(p.mobius(0, 7), BigInt::from(-1));
        assert_eq!(p.mobius(0, 3), BigInt::from(1));
        assert_eq!(p.atoms().unwrap(), vec![1, 2, 4]);
        assert_eq!(p.maximal_chains().len(), 6);
        let r = p.rank_function().unwrap();
        for s in 0..8usize {
            assert_eq!(r[s], s.count_ones() as usize);
        }
        // meets and joins are intersection and union
        for a in 0..8usize {
            for b in 0..8usize {
                assert_eq!(p.meet(a, b), Some(a & b));
                assert_eq!(p.join(a, b), Some(a | b));
            }
        }
    }

    #[test]
    fn mobius_sum_over_interval_is_zero() {
        let p = boolean3();
        // sum_{z in [x,y]} mu(x,z) = 0 for x < y
        for x in 0..8 {
            for y in 0..8 {
                if x == y || !p.leq(x, y) {
                    continue;
                }
                let mut acc = BigInt::zero();
                for z in p.up_set(x) {
                    if p.leq(z, y) {
                        acc += p.mobius(x, z);
                    }
                }
                assert_eq!(acc, BigInt::zero());
            }
        }
    }

    #[test]
    fn non_lattice_detected() {
        // two atoms each below two coatoms: joins of atoms do not exist
        let p = Poset::from_covers(
            labels(6),
            &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)],
        )
        .unwrap();
        assert!(!p.is_lattice());
        assert_eq!(p.join(1, 2), None);
        assert!(p.is_bounded());
    }

    #[test]
    fn dual_reverses() {
        let p = diamond();
        let d = p.dual();
        assert!(d.poset.leq(3, 0));
        assert!(!d.poset.leq(0, 3));
        assert_eq!(d.poset.mobius(3, 0), BigInt::from(1));
        assert_eq!(d.source_ids, vec![Some(0), Some(1), Some(2), Some(3)]);
        assert_eq!(d.poset.covers(), &[(1, 0), (2, 0), (3, 1), (3, 2)]);
    }

    #[test]
    fn proper_part_and_bounded_extension() {
        let p = diamond();
        let pp = p.proper_part();
        assert_eq!(pp.poset.len(), 2);
        assert_eq!(pp.source_ids, vec![Some(1), Some(2)]);
        assert!(pp.poset.covers().is_empty());

        let ext = p.bounded_extension();
        assert_eq!(ext.poset.len(), 6);
        assert_eq!(ext.poset.bottom(), Some(4));
        assert_eq!(ext.poset.top(), Some(5));
        assert_eq!(ext.source_ids[4], None);
        assert_eq!(ext.source_ids[5], None);
        // mu of the extension of a bounded poset: the old bounds become
        // interior, mu(0,1) = 0 for the 4-chain... compute explicitly:
        assert_eq!(ext.poset.mobius(4, 5), BigInt::zero());

        // extension of the empty poset is a 2-chain
        let empty = Poset::from_covers(Vec::new(), &[]).unwrap();
        let e = empty.bounded_extension();
        assert_eq!(e.poset.len(), 2);
        assert!(e.poset.leq(0, 1));
        assert_eq!(e.poset.mobius_invariant().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn intervals_and_sets() {
        let p = boolean3();
        let oi = p.open_interval(0, 7).unwrap();
        assert_eq!(oi.poset.len(), 6);
        let ci = p.closed_interval(1, 7).unwrap();
        assert_eq!(ci.poset.len(), 4); // isomorphic to B_2
        assert_eq!(ci.poset.mobius_invariant().unwrap(), BigInt::one());
        assert!(p.open_interval(1, 2).is_err());
        let up = p.upper_set(1, true).unwrap();
        assert_eq!(up.poset.len(), 3);
        let low = p.lower_set(7, false).unwrap();
        assert_eq!(low.poset.len(), 8);
        // empty open interval at a cover pair
        let cover = p.open_interval(0, 1).unwrap();
        assert_eq!(cover.poset.len(), 0);
        // open interval (x, x) is the empty poset
        let selfint = p.open_interval(3, 3).unwrap();
        assert_eq!(selfint.poset.len(), 0);
    }

    #[test]
    fn induced_subposet_reduces() {
        let p = Poset::from_covers(labels(3), &[(0, 1), (1, 2)]).unwrap();
        let ind = p.induced_subposet(&[0, 2]).unwrap();
        assert_eq!(ind.poset.covers(), &[(0, 1)]);
        assert_eq!(ind.source_ids, vec![Some(0), Some(2)]);
    }

    #[test]
    fn product_of_chains_is_grid() {
        let c2 = Poset::from_covers(labels(2), &[(0, 1)]).unwrap();
        let grid = c2.direct_product(&c2).unwrap();
        assert_eq!(grid.len(), 4);
        assert!(grid.is_lattice());
        assert_eq!(grid.length(), 2);
        // product Mobius is the product of the factors' Mobius values
        assert_eq!(grid.mobius(0, 3), BigInt::one());
        let c3 = Poset::from_covers(labels(3), &[(0, 1), (1, 2)]).unwrap();
        let p = c3.direct_product(&c2).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.mobius_invariant().unwrap(), BigInt::zero());
    }

    #[test]
    fn from_order_relation_agrees_with_covers() {
        // divisors of 12 under divisibility
        let divs = [1usize, 2, 3, 4, 6, 12];
        let lab: Vec<String> = divs.iter().map(|d| d.to_string()).collect();
        let p = Poset::from_order_relation(lab, |i, j| divs[j] % divs[i] == 0).unwrap();
        assert!(p.is_lattice());
        assert_eq!(p.length(), 3);
        assert_eq!(p.mobius_invariant().unwrap(), BigInt::zero()); // 12 not squarefree
        let atoms = p.atoms().unwrap();
        assert_eq!(atoms.len(), 2); // 2 and 3
    }

    #[test]
    fn antisymmetry_violation_rejected() {
        let r = Poset::from_order_relation(labels(2), |_, _| true);
        assert!(matches!(r, Err(PosetError::NotAntisymmetric(_, _))));
    }

    #[test]
    fn purity_detects_short_chains() {
        // 0 < 1 < 3, 0 < 2 < 3 is pure; adding 0 < 3 directly keeps it pure
        // (the relation is redundant); but a poset with maximal chains of
        // different lengths is not pure:
        let p = Poset::from_covers(labels(4), &[(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        assert!(p.is_pure());
        // 0 < 1 < 2 and 3 < 2: chains 0-1-2 (length 2) and 3-2 (length 1)
        let q = Poset::from_covers(labels(4), &[(0, 1), (1, 2), (3, 2)]).unwrap();
        assert!(!q.is_pure());
    }

    #[test]
    fn rank_function_requires_grading() {
        // 0 < 1 < 2 < 4 and 0 < 3 < 4: the top has lower covers at
        // different heights
        let p = Poset::from_covers(labels(5), &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).unwrap();
        assert!(p.rank_function().is_err());
        assert!(!p.is_pure());
    }

    #[test]
    fn mobius_memo_is_idempotent() {
        let p = boolean3();
        let a = p.mobius(0, 7);
        let b = p.mobius(0, 7);
        assert_eq!(a, b);
        let cloned = p.clone();
        assert_eq!(cloned.mobius(0, 7), a);
    }

    #[test]
    fn chains_of_size_enumerates() {
        let p = diamond();
        assert_eq!(p.chains_of_size(0), vec![Vec::<usize>::new()]);
        assert_eq!(p.chains_of_size(1).len(), 4);
        // 2-chains: all comparable pairs: (0,1),(0,2),(0,3),(1,3),(2,3)
        assert_eq!(p.chains_of_size(2).len(), 5);
        assert_eq!(p.chains_of_size(3).len(), 2);
        assert_eq!(p.chains_of_size(4).len(), 0);
    }
}
