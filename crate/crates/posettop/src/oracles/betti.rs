//! Predicted Betti numbers for the block-size-restricted partition
//! posets, from exponential generating functions and the Whitney-style
//! block statistics.
//!
//! Conventions: for a poset family member on ground set `[N]`, the value
//! table maps a reduced homology dimension to the predicted Betti number
//! of the order complex of the proper part (top removed; bottom also
//! removed when all-singletons qualifies). Missing dimensions are zero.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

use super::partitions::{partitions_with_parts, set_partitions_of_type};
use super::series::{factorial, BivariateSeries, PolyT, TruncatedSeries};

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("invalid oracle parameters: {0}")]
    BadParameters(String),
}

/// Which block-size-restricted family to predict Betti numbers for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BettiGfFamily {
    /// All block sizes at least `k`, on ground set `[n]`; requires `k >= 2`.
    AtLeastK { n: usize, k: usize },
    /// All block sizes divisible by `d`, on ground set `[n*d]`.
    ZeroModD { n: usize, d: usize },
    /// All block sizes congruent to 1 mod `d`, on ground set `[n*d + 1]`.
    OneModD { n: usize, d: usize },
    /// All block sizes congruent to `k` mod `d`, on ground set `[n*d + k]`.
    KModD { n: usize, d: usize, k: usize },
}

/// The series whose egf coefficient at `u^{dn}` is the top Betti number of
/// the proper part of the `d`-divisible partition poset on `[dn]`:
/// `-log( sum_j (-1)^j u^{dj}/(dj)! )`.
pub fn zero_mod_d_series(d: usize, order: usize) -> TruncatedSeries {
    let f = TruncatedSeries::from_egf_terms(order, |n| {
        if n % d == 0 {
            let j = n / d;
            if j % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            }
        } else {
            BigRational::zero()
        }
    });
    f.log().neg()
}

/// The series whose egf coefficient at `u^{nd+1}` is the top Betti number
/// of the proper part of the 1 mod `d` partition poset on `[nd+1]`: the
/// compositional inverse of `sum_n (-1)^n u^{nd+1}/(nd+1)!`.
pub fn one_mod_d_series(d: usize, order: usize) -> TruncatedSeries {
    let f = TruncatedSeries::from_egf_terms(order, |m| {
        if m >= 1 && (m - 1) % d == 0 {
            let n = (m - 1) / d;
            if n % 2 == 0 {
                BigRational::one()
            } else {
                -BigRational::one()
            }
        } else {
            BigRational::zero()
        }
    });
    f.compositional_inverse()
}

fn rational_to_int(r: &BigRational, what: &str) -> Result<BigInt, OracleError> {
    if r.denom().is_one() {
        Ok(r.numer().clone())
    } else {
        Err(OracleError::BadParameters(format!(
            "{} produced a non-integer value {}",
            what, r
        )))
    }
}

/// Predicted Betti table for one poset of a block-size-restricted family.
pub fn betti_gf(family: &BettiGfFamily) -> Result<BTreeMap<i64, BigInt>, OracleError> {
    match *family {
        BettiGfFamily::AtLeastK { n, k } => at_least_k_table(n, k),
        BettiGfFamily::ZeroModD { n, d } => {
            if n == 0 || d == 0 {
                return Err(OracleError::BadParameters(
                    "zero_mod_d requires n, d >= 1".into(),
                ));
            }
            let s = zero_mod_d_series(d, n * d);
            let v = rational_to_int(&s.egf_coeff(n * d), "zero_mod_d series")?;
            let mut out = BTreeMap::new();
            if !v.is_zero() {
                out.insert(n as i64 - 2, v);
            }
            Ok(out)
        }
        BettiGfFamily::OneModD { n, d } => {
            if d == 0 {
                return Err(OracleError::BadParameters("one_mod_d requires d >= 1".into()));
            }
            let s = one_mod_d_series(d, n * d + 1);
            let v = rational_to_int(&s.egf_coeff(n * d + 1), "one_mod_d series")?;
            let mut out = BTreeMap::new();
            if !v.is_zero() {
                out.insert(n as i64 - 2, v);
            }
            Ok(out)
        }
        BettiGfFamily::KModD { n, d, k } => k_mod_d_table(n, d, k),
    }
}

/// The at-least-`k` table from the two-parameter egf
/// `-log(1 + sum_{j>=k} t^{floor(j/k)} u^j / j!)`: the coefficient of
/// `t^m u^n/n!` is `(-1)^m` times the Betti number in dimension `m - 2`.
fn at_least_k_table(n: usize, k: usize) -> Result<BTreeMap<i64, BigInt>, OracleError> {
    if k < 2 || n < k {
        return Err(OracleError::BadParameters(
            "at_least_k requires n >= k >= 2".into(),
        ));
    }
    let t_cap = n / k;
    let mut b = BivariateSeries::one(n, t_cap);
    for j in k..=n {
        let c = BigRational::one() / BigRational::from_integer(factorial(j));
        b.set_coeff(j, PolyT::monomial(c, j / k));
    }
    // -log(1 + S)
    let l = b.log();
    let nf = BigRational::from_integer(factorial(n));
    let mut out = BTreeMap::new();
    for m in 1..=t_cap {
        let c = -l.coeff(m, n) * &nf;
        let v = rational_to_int(&c, "at_least_k series")?;
        // the egf stores (-1)^m beta
        let beta = if m % 2 == 0 { v } else { -v };
        if !beta.is_zero() {
            if beta.is_negative() {
                return Err(OracleError::BadParameters(format!(
                    "at_least_k series produced a negative Betti number at m = {}",
                    m
                )));
            }
            out.insert(m as i64 - 2, beta);
        }
    }
    Ok(out)
}

/// The `k` mod `d` table, from the Whitney-style sum over block shapes.
///
/// Let `k` be normalized into `[1, d]`, `g = gcd(k, d)`, `k0 = k/g`,
/// `d0 = d/g`. Every member partition has `b(x) = 1 mod d0` blocks, and
/// the longest chain through `x` (inside the poset, bottom excluded when
/// block size 1 qualifies) has length
/// `mstat(x) = sum_B floor(j_B / k0) + (b(x)-1)/d0 - [k = 1 mod d]`
/// where a block of size `j*d + k` contributes `floor(j/k0)`. The upper
/// interval above `x` is the 1 mod `d0` partition poset on the blocks, so
/// `beta_{mstat(x)-1}` of the proper part picks up
/// `(-1)^{mstat(x) + rho} c_rho` per shape, with `rho = (b(x)-1)/d0` and
/// `c_rho` the 1 mod `d0` top Betti number.
fn k_mod_d_table(n: usize, d: usize, k: usize) -> Result<BTreeMap<i64, BigInt>, OracleError> {
    if d == 0 || k == 0 {
        return Err(OracleError::BadParameters("k_mod_d requires d, k >= 1".into()));
    }
    let big_n = n * d + k;
    let k_norm = ((k - 1) % d) + 1;
    let g = gcd(k_norm, d);
    let k0 = k_norm / g;
    let d0 = d / g;
    let has_bottom = k_norm == 1;

    // table of 1 mod d0 Betti numbers c_rho for rho up to (max blocks - 1)/d0
    let rho_max = (big_n.saturating_sub(1)) / (d0 * k_norm.max(1)) + 1;
    let c_series = one_mod_d_series(d0, rho_max * d0 + 1);
    let c_val = |rho: usize| -> Result<BigInt, OracleError> {
        rational_to_int(&c_series.egf_coeff(rho * d0 + 1), "one_mod_d inner series")
    };

    let residue = k_norm % d;
    let shapes = partitions_with_parts(big_n, |s| s % d == residue);
    let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
    for shape in shapes {
        let r = shape.num_parts();
        if has_bottom && shape.parts().iter().all(|&s| s == 1) {
            continue; // the bottom element is excluded from the proper part
        }
        debug_assert_eq!((r - 1) % d0, 0, "block counts are 1 mod d0");
        let rho = (r - 1) / d0;
        let down: usize = shape
            .parts()
            .iter()
            .map(|&s| ((s - k_norm) / d) / k0)
            .sum();
        let mstat = down + rho - usize::from(has_bottom);
        let count = set_partitions_of_type(&shape);
        let term = c_val(rho)? * count;
        let dim = mstat as i64 - 1;
        let entry = acc.entry(dim).or_insert_with(BigInt::zero);
        if (mstat + rho) % 2 == 0 {
            *entry += term;
        } else {
            *entry -= term;
        }
    }
    acc.retain(|_, v| !v.is_zero());
    for (dim, v) in &acc {
        if v.is_negative() {
            return Err(OracleError::BadParameters(format!(
                "k_mod_d sum produced a negative Betti number {} in dimension {}",
                v, dim
            )));
        }
    }
    Ok(acc)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::counting::{descent_class, double_factorial, euler_number};
    use std::collections::BTreeSet;

    fn table(entries: &[(i64, i64)]) -> BTreeMap<i64, BigInt> {
        entries
            .iter()
            .map(|&(d, v)| (d, BigInt::from(v)))
            .collect()
    }

    #[test]
    fn even_block_values() {
        // beta_0 of the proper part of the even-block poset on [4] is
        // E_3 = 2; on [6], E_5 = 16; on [8], E_7 = 272.
        assert_eq!(
            betti_gf(&BettiGfFamily::ZeroModD { n: 2, d: 2 }).unwrap(),
            table(&[(0, 2)])
        );
        assert_eq!(
            betti_gf(&BettiGfFamily::ZeroModD { n: 3, d: 2 }).unwrap(),
            table(&[(1, 16)])
        );
        assert_eq!(
            betti_gf(&BettiGfFamily::ZeroModD { n: 4, d: 2 }).unwrap(),
            table(&[(2, 272)])
        );
    }

    #[test]
    fn zero_mod_d_matches_descent_classes() {
        // the top Betti number of the d-divisible poset on [nd] counts
        // permutations of [nd-1] with descent set {d, 2d, ..., (n-1)d}.
        for d in 2..=4 {
            for n in 1..=3 {
                let got = betti_gf(&BettiGfFamily::ZeroModD { n, d }).unwrap();
                let r: BTreeSet<usize> = (1..n).map(|i| i * d).collect();
                let expect = descent_class(n * d - 1, &r);
                if expect.is_zero() {
                    assert!(got.is_empty());
                } else {
                    assert_eq!(got, [(n as i64 - 2, expect)].into_iter().collect());
                }
            }
        }
    }

    #[test]
    fn odd_block_values() {
        // ((2n-1)!!)^2 spheres for the 1 mod 2 family.
        for n in 1..=4 {
            let got = betti_gf(&BettiGfFamily::OneModD { n, d: 2 }).unwrap();
            let dfac = double_factorial(2 * n - 1);
            let expect = &dfac * &dfac;
            assert_eq!(got, [(n as i64 - 2, expect)].into_iter().collect());
        }
    }

    #[test]
    fn at_least_k_values() {
        // [6] with blocks >= 3: the proper part is the antichain of ten
        // (3,3)-partitions, so a single Betti number 9 in dimension 0.
        assert_eq!(
            betti_gf(&BettiGfFamily::AtLeastK { n: 6, k: 3 }).unwrap(),
            table(&[(0, 9)])
        );
        // [5] with blocks >= 3: only [5] itself qualifies, so the proper
        // part is empty: beta_{-1} = 1.
        assert_eq!(
            betti_gf(&BettiGfFamily::AtLeastK { n: 5, k: 3 }).unwrap(),
            table(&[(-1, 1)])
        );
        // [6] with blocks >= 2: hand count. The proper part has the ten
        // (3,3)-partitions isolated plus a connected bipartite component of
        // fifteen (2,2,2)- and fifteen (4,2)-partitions joined by 45 cover
        // edges: beta_0 = 10, beta_1 = 45 - 30 + 1 = 16.
        assert_eq!(
            betti_gf(&BettiGfFamily::AtLeastK { n: 6, k: 2 }).unwrap(),
            table(&[(0, 10), (1, 16)])
        );
    }

    #[test]
    fn k_mod_d_specializes_to_pure_families() {
        // k = d reproduces zero_mod_d (shifted ground set): [4] even.
        assert_eq!(
            betti_gf(&BettiGfFamily::KModD { n: 1, d: 2, k: 2 }).unwrap(),
            table(&[(0, 2)])
        );
        assert_eq!(
            betti_gf(&BettiGfFamily::KModD { n: 2, d: 2, k: 2 }).unwrap(),
            table(&[(1, 16)])
        );
        // k = 1 reproduces one_mod_d: [5] odd.
        assert_eq!(
            betti_gf(&BettiGfFamily::KModD { n: 2, d: 2, k: 1 }).unwrap(),
            table(&[(0, 9)])
        );
        assert_eq!(
            betti_gf(&BettiGfFamily::KModD { n: 3, d: 2, k: 1 }).unwrap(),
            table(&[(1, 225)])
        );
    }

    #[test]
    fn k_mod_d_hand_checked_antichains() {
        // [8] with sizes = 2 mod 3: the 105 quadruple-pair partitions below
        // the top: a 105-point antichain.
        assert_eq!(
            betti_gf(&BettiGfFamily::KModD { n: 2, d: 3, k: 2 }).unwrap(),
            table(&[(0, 104)])
        );
        // [5] with sizes = 2 mod 3: only the top survives.
        assert_eq!(
            betti_gf(&BettiGfFamily::KModD { n: 1, d: 3, k: 2 }).unwrap(),
            table(&[(-1, 1)])
        );
        // [6] with sizes = 2 mod 4: top plus 15 pair-triples.
        assert_eq!(
            betti_gf(&BettiGfFamily::KModD { n: 1, d: 4, k: 2 }).unwrap(),
            table(&[(0, 14)])
        );
    }

    #[test]
    fn euler_consistency() {
        // E^2_{2n-1} from the series equals the alternating count.
        for n in 1..=5 {
            let got = betti_gf(&BettiGfFamily::ZeroModD { n, d: 2 }).unwrap();
            let expect = euler_number(2 * n - 1);
            assert_eq!(got.get(&(n as i64 - 2)).cloned().unwrap_or_default(), expect);
        }
    }
}
