//! Integer partitions and the symmetric-function data attached to them:
//! conjugates, Durfee squares, Frobenius coordinates, hook lengths, Specht
//! module dimensions, and the matching-complex Betti and Laplacian
//! eigenvalue values they control.

use num::{BigInt, One, Zero};

use super::series::factorial;

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntPartition {
    parts: Vec<usize>,
}

impl IntPartition {
    /// Build from parts; they are sorted decreasingly and zeros dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        IntPartition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The partitioned number.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    /// The conjugate partition (transpose of the Young diagram).
    pub fn conjugate(&self) -> IntPartition {
        if self.parts.is_empty() {
            return IntPartition { parts: Vec::new() };
        }
        let cols = self.parts[0];
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        IntPartition { parts }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }

    /// Size of the Durfee square: the largest `d` with `lambda_d >= d`.
    pub fn durfee_rank(&self) -> usize {
        self.parts
            .iter()
            .enumerate()
            .filter(|&(i, &p)| p >= i + 1)
            .count()
    }

    /// Frobenius coordinates `(alpha | beta)`: arm and leg lengths of the
    /// diagonal cells, each strictly decreasing.
    pub fn frobenius(&self) -> (Vec<usize>, Vec<usize>) {
        let d = self.durfee_rank();
        let conj = self.conjugate();
        let alpha = (0..d).map(|i| self.parts[i] - (i + 1)).collect();
        let beta = (0..d).map(|i| conj.parts[i] - (i + 1)).collect();
        (alpha, beta)
    }

    /// Hook lengths, row by row.
    pub fn hook_lengths(&self) -> Vec<Vec<usize>> {
        let conj = self.conjugate();
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &row)| {
                (0..row)
                    .map(|j| (row - j) + (conj.parts[j] - (i + 1)))
                    .collect()
            })
            .collect()
    }

    /// Dimension of the Specht module `S^lambda`: `n!` over the product of
    /// all hook lengths.
    pub fn dim_specht(&self) -> BigInt {
        let mut denom = BigInt::one();
        for row in self.hook_lengths() {
            for h in row {
                denom *= BigInt::from(h);
            }
        }
        factorial(self.size()) / denom
    }

    /// The Laplacian eigenvalue attached to a shape: with Frobenius
    /// coordinates `(alpha | beta)`, the sum of `binom(alpha_i + 1, 2) -
    /// binom(beta_i + 1, 2)`.
    pub fn laplacian_eigenvalue(&self) -> BigInt {
        let (alpha, beta) = self.frobenius();
        let choose2 = |m: usize| BigInt::from(m * (m + 1) / 2);
        let mut acc = BigInt::zero();
        for (a, b) in alpha.iter().zip(beta.iter()) {
            acc += choose2(*a) - choose2(*b);
        }
        acc
    }

    /// True when every arm is at least as long as its leg
    /// (`alpha_i >= beta_i` for all diagonal cells).
    pub fn arms_dominate_legs(&self) -> bool {
        let (alpha, beta) = self.frobenius();
        alpha.iter().zip(beta.iter()).all(|(a, b)| a >= b)
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<IntPartition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(n: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<IntPartition>) {
        if n == 0 {
            out.push(IntPartition {
                parts: current.clone(),
            });
            return;
        }
        for p in (1..=n.min(max)).rev() {
            current.push(p);
            rec(n - p, p, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// All partitions of `n` whose parts satisfy the predicate.
pub fn partitions_with_parts(n: usize, allowed: impl Fn(usize) -> bool + Copy) -> Vec<IntPartition> {
    partitions_of(n)
        .into_iter()
        .filter(|p| p.parts.iter().all(|&s| allowed(s)))
        .collect()
}

/// Number of set partitions of an `n`-set whose block sizes form the given
/// multiset: `n! / (prod s_i! * prod mult_j!)`.
pub fn set_partitions_of_type(shape: &IntPartition) -> BigInt {
    let n = shape.size();
    let mut denom = BigInt::one();
    let mut i = 0;
    let parts = shape.parts();
    while i < parts.len() {
        let mut j = i;
        while j < parts.len() && parts[j] == parts[i] {
            j += 1;
        }
        for _ in 0..(j - i) {
            denom *= factorial(parts[i]);
        }
        denom *= factorial(j - i);
        i = j;
    }
    factorial(n) / denom
}

/// Rank of the degree-`i` reduced homology of the matching complex `M_n`:
/// the sum of `dim S^lambda` over self-conjugate partitions of `n` whose
/// Durfee square has size `n - 2(i + 1)`.
pub fn bouc_betti(n: usize, i: i64) -> BigInt {
    let needed = n as i64 - 2 * (i + 1);
    if needed < 0 {
        return BigInt::zero();
    }
    partitions_of(n)
        .into_iter()
        .filter(|p| p.is_self_conjugate() && p.durfee_rank() as i64 == needed)
        .map(|p| p.dim_specht())
        .sum()
}

/// The candidate Laplacian spectrum for matching complexes on `n`
/// vertices: eigenvalues of shapes of `n` whose arms dominate their legs,
/// sorted and deduplicated.
pub fn laplacian_spectrum_candidates(n: usize) -> Vec<BigInt> {
    let mut vals: Vec<BigInt> = partitions_of(n)
        .into_iter()
        .filter(|p| p.arms_dominate_legs())
        .map(|p| p.laplacian_eigenvalue())
        .collect();
    vals.sort();
    vals.dedup();
    vals
}
