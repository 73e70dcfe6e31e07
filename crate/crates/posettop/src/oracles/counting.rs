//! Permutation counting oracles: derangements, alternating permutations,
//! double factorials, Catalan numbers, and descent classes (plain,
//! inversion-graded, and signed).
//!
//! Every quantity is computable two independent ways: a closed form or
//! recurrence, and brute-force enumeration (`*_brute`), the latter capped
//! at `n <= BRUTE_CAP`.

use itertools::Itertools;
use num::{BigInt, One, Zero};
use std::collections::BTreeSet;

use super::series::factorial;

/// Upper bound on `n` for the brute-force enumerators.
pub const BRUTE_CAP: usize = 12;

fn assert_brute(n: usize) {
    assert!(
        n <= BRUTE_CAP,
        "brute-force enumeration is capped at n = {}",
        BRUTE_CAP
    );
}

/// Number of derangements of `[n]`, via the recurrence
/// `d_n = (n-1)(d_{n-1} + d_{n-2})`.
pub fn derangements(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut prev = BigInt::one(); // d_0
    let mut cur = BigInt::zero(); // d_1
    for m in 2..=n {
        let next = BigInt::from(m - 1) * (&cur + &prev);
        prev = cur;
        cur = next;
    }
    if n == 1 {
        BigInt::zero()
    } else {
        cur
    }
}

/// Derangements by direct enumeration.
pub fn derangements_brute(n: usize) -> BigInt {
    assert_brute(n);
    BigInt::from(
        (0..n)
            .permutations(n)
            .filter(|p| p.iter().enumerate().all(|(i, &v)| v != i))
            .count(),
    )
}

/// The number of alternating permutations of `[m]` (up-down, starting with
/// an ascent), via the boustrophedon recurrence. `E_1, E_2, E_3, ... =
/// 1, 1, 2, 5, 16, 61, ...`.
pub fn euler_number(m: usize) -> BigInt {
    // Seidel-Entringer triangle.
    if m == 0 {
        return BigInt::one();
    }
    let mut row = vec![BigInt::one()];
    for _ in 1..=m {
        let mut next = vec![BigInt::zero()];
        for j in 0..row.len() {
            let v = &next[j] + &row[row.len() - 1 - j];
            next.push(v);
        }
        row = next;
    }
    row.last().unwrap().clone()
}

/// Alternating permutations by direct enumeration: descents exactly at the
/// even positions `2, 4, ...`.
pub fn euler_number_brute(m: usize) -> BigInt {
    assert_brute(m);
    if m == 0 {
        return BigInt::one();
    }
    let want: BTreeSet<usize> = (1..m).filter(|i| i % 2 == 0).collect();
    BigInt::from(
        (0..m)
            .permutations(m)
            .filter(|p| descent_set(p) == want)
            .count(),
    )
}

/// Double factorial `n!! = n (n-2) (n-4) ...`.
pub fn double_factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    let mut k = n;
    while k > 1 {
        f *= BigInt::from(k);
        k -= 2;
    }
    f
}

/// Catalan number `C_n = binom(2n, n)/(n+1)`.
pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n, n) / BigInt::from(n + 1)
}

/// Exact binomial coefficient.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Multinomial coefficient for a composition of `n`.
pub fn multinomial(parts: &[usize]) -> BigInt {
    let n: usize = parts.iter().sum();
    let mut denom = BigInt::one();
    for &p in parts {
        denom *= factorial(p);
    }
    factorial(n) / denom
}

/// Descent set of a word: positions `i` (1-based) with `w_i > w_{i+1}`.
pub fn descent_set(w: &[usize]) -> BTreeSet<usize> {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).collect()
}

fn composition_from_descents(n: usize, set: &BTreeSet<usize>) -> Vec<usize> {
    let mut parts = Vec::with_capacity(set.len() + 1);
    let mut prev = 0;
    for &s in set {
        parts.push(s - prev);
        prev = s;
    }
    parts.push(n - prev);
    parts
}

/// Number of permutations of `[n]` with descent set exactly `R`
/// (`R` a subset of `{1, ..., n-1}`), by inclusion-exclusion over the
/// multinomial counts of permutations with descent set contained in a
/// subset.
pub fn descent_class(n: usize, r: &BTreeSet<usize>) -> BigInt {
    assert!(r.iter().all(|&i| i >= 1 && i < n), "descent positions must lie in 1..n");
    let r_vec: Vec<usize> = r.iter().copied().collect();
    let mut total = BigInt::zero();
    for mask in 0..(1u64 << r_vec.len()) {
        let sub: BTreeSet<usize> = r_vec
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        let sign = if (r_vec.len() - sub.len()) % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        total += sign * multinomial(&composition_from_descents(n, &sub));
    }
    total
}

/// Descent class by direct enumeration.
pub fn descent_class_brute(n: usize, r: &BTreeSet<usize>) -> BigInt {
    assert_brute(n);
    BigInt::from(
        (0..n)
            .permutations(n)
            .filter(|p| descent_set(p) == *r)
            .count(),
    )
}

/// Number of inversions of a word.
pub fn inversions(w: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Polynomial in `q` as a coefficient vector, constant term first.
pub type QPoly = Vec<BigInt>;

fn qpoly_add(a: &mut QPoly, b: &QPoly, sign: i32) {
    if a.len() < b.len() {
        a.resize(b.len(), BigInt::zero());
    }
    for (i, c) in b.iter().enumerate() {
        if sign >= 0 {
            a[i] += c;
        } else {
            a[i] -= c;
        }
    }
}

fn qpoly_mul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn qpoly_trim(mut p: QPoly) -> QPoly {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

/// `[m]_q = 1 + q + ... + q^{m-1}`.
fn q_int(m: usize) -> QPoly {
    vec![BigInt::one(); m]
}

/// `[m]_q!`.
fn q_factorial(m: usize) -> QPoly {
    let mut f = vec![BigInt::one()];
    for i in 1..=m {
        f = qpoly_mul(&f, &q_int(i));
    }
    f
}

fn qpoly_divide_exact(num: &QPoly, den: &QPoly) -> QPoly {
    // Exact polynomial long division (the q-multinomial is a polynomial).
    let num = qpoly_trim(num.clone());
    let den = qpoly_trim(den.clone());
    assert!(!den.is_empty(), "division by zero polynomial");
    if num.is_empty() {
        return Vec::new();
    }
    assert!(num.len() >= den.len());
    let mut rem = num;
    let mut quot = vec![BigInt::zero(); rem.len() - den.len() + 1];
    let lead = den.last().unwrap().clone();
    for k in (0..quot.len()).rev() {
        let top = rem[k + den.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let c = &top / &lead;
        assert_eq!(&c * &lead, top, "non-exact polynomial division");
        quot[k] = c.clone();
        for (j, d) in den.iter().enumerate() {
            let sub = &c * d;
            rem[k + j] -= sub;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact polynomial division");
    qpoly_trim(quot)
}

/// q-multinomial coefficient for a composition of `n`.
pub fn q_multinomial(parts: &[usize]) -> QPoly {
    let n: usize = parts.iter().sum();
    let mut q = q_factorial(n);
    for &p in parts {
        q = qpoly_divide_exact(&q, &q_factorial(p));
    }
    q
}

/// The inversion-graded descent class polynomial
/// `d_{n,R}(q) = sum over permutations with descent set exactly R of
/// q^{inv}`, by inclusion-exclusion over q-multinomials.
pub fn descent_class_q(n: usize, r: &BTreeSet<usize>) -> QPoly {
    assert!(r.iter().all(|&i| i >= 1 && i < n));
    let r_vec: Vec<usize> = r.iter().copied().collect();
    let mut total: QPoly = Vec::new();
    for mask in 0..(1u64 << r_vec.len()) {
        let sub: BTreeSet<usize> = r_vec
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        let sign = if (r_vec.len() - sub.len()) % 2 == 0 { 1 } else { -1 };
        let term = q_multinomial(&composition_from_descents(n, &sub));
        qpoly_add(&mut total, &term, sign);
    }
    qpoly_trim(total)
}

/// Inversion-graded descent class by direct enumeration.
pub fn descent_class_q_brute(n: usize, r: &BTreeSet<usize>) -> QPoly {
    assert_brute(n);
    let mut total: QPoly = Vec::new();
    for p in (0..n).permutations(n) {
        if descent_set(&p) == *r {
            let inv = inversions(&p);
            if total.len() <= inv {
                total.resize(inv + 1, BigInt::zero());
            }
            total[inv] += BigInt::one();
        }
    }
    qpoly_trim(total)
}

/// Evaluate a q-polynomial at an integer.
pub fn qpoly_eval(p: &QPoly, q: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * q + c;
    }
    acc
}

/// A signed permutation of `[n]`: a permutation of absolute values with a
/// sign for each position. `values[i]` is the signed value at position
/// `i+1`.
fn signed_permutations(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for p in (1..=n as i64).permutations(n) {
        for mask in 0..(1u64 << n) {
            let v = p
                .iter()
                .enumerate()
                .map(|(i, &x)| if mask >> i & 1 == 1 { -x } else { x })
                .collect();
            out.push(v);
        }
    }
    out
}

/// Type B descent set of a signed permutation, with the convention
/// `sigma(0) = 0`: position `0` is a descent when the first value is
/// negative, and `i >= 1` is a descent when `sigma(i) > sigma(i+1)`.
pub fn signed_descent_set(v: &[i64]) -> BTreeSet<usize> {
    let mut set = BTreeSet::new();
    if !v.is_empty() && v[0] < 0 {
        set.insert(0);
    }
    for i in 1..v.len() {
        if v[i - 1] > v[i] {
            set.insert(i);
        }
    }
    set
}

/// Number of signed permutations of `[n]` with type B descent set exactly
/// `R` (`R` a subset of `{0, 1, ..., n-1}`), by inclusion-exclusion: the
/// number with descent set contained in `T` with runs `c_1, ..., c_m` is
/// `multinomial(n; c) * 2^{c_2 + ... + c_m}`, times `2^{c_1}` when `0` is
/// in `T`.
pub fn signed_descent_class(n: usize, r: &BTreeSet<usize>) -> BigInt {
    assert!(r.iter().all(|&i| i < n), "type B descent positions must lie in 0..n");
    let r_vec: Vec<usize> = r.iter().copied().collect();
    let mut total = BigInt::zero();
    for mask in 0..(1u64 << r_vec.len()) {
        let sub: BTreeSet<usize> = r_vec
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &s)| s)
            .collect();
        let sign = if (r_vec.len() - sub.len()) % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        let inner: BTreeSet<usize> = sub.iter().copied().filter(|&s| s >= 1).collect();
        let parts = composition_from_descents(n, &inner);
        let mut count = multinomial(&parts);
        let free: usize = if sub.contains(&0) {
            n
        } else {
            n - parts[0]
        };
        count *= BigInt::from(2u32).pow(free as u32);
        total += sign * count;
    }
    total
}

/// Signed descent class by direct enumeration.
pub fn signed_descent_class_brute(n: usize, r: &BTreeSet<usize>) -> BigInt {
    assert!(n <= 8, "signed brute-force enumeration is capped at n = 8");
    BigInt::from(
        signed_permutations(n)
            .into_iter()
            .filter(|v| signed_descent_set(v) == *r)
            .count(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn derangement_values() {
        let known = [1u64, 0, 1, 2, 9, 44, 265, 1854, 14833];
        for (n, &d) in known.iter().enumerate() {
            assert_eq!(derangements(n), BigInt::from(d), "d({})", n);
        }
        for n in 0..=7 {
            assert_eq!(derangements(n), derangements_brute(n));
        }
    }

    #[test]
    fn euler_numbers() {
        let known = [1u64, 1, 1, 2, 5, 16, 61, 272, 1385];
        for (m, &e) in known.iter().enumerate() {
            assert_eq!(euler_number(m), BigInt::from(e), "E_{}", m);
        }
        for m in 0..=7 {
            assert_eq!(euler_number(m), euler_number_brute(m));
        }
    }

    #[test]
    fn double_factorials_and_catalan() {
        assert_eq!(double_factorial(5), BigInt::from(15));
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(double_factorial(0), BigInt::from(1));
        let cats = [1u64, 1, 2, 5, 14, 42, 132, 429];
        for (n, &c) in cats.iter().enumerate() {
            assert_eq!(catalan(n), BigInt::from(c));
        }
    }

    #[test]
    fn descent_classes() {
        // permutations of [4] with descent set {1,3}: 5 of them.
        assert_eq!(descent_class(4, &set(&[1, 3])), BigInt::from(5));
        // Eulerian-style total: summing over all R gives n!.
        for n in 1..=6 {
            let mut total = BigInt::zero();
            for mask in 0..(1u64 << (n - 1)) {
                let r: BTreeSet<usize> =
                    (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                total += descent_class(n, &r);
            }
            assert_eq!(total, factorial(n));
        }
        for n in 1..=6 {
            for mask in 0..(1u64 << (n - 1)) {
                let r: BTreeSet<usize> =
                    (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                assert_eq!(
                    descent_class(n, &r),
                    descent_class_brute(n, &r),
                    "n={} R={:?}",
                    n,
                    r
                );
            }
        }
        // descent classes compute the alternating numbers:
        // des = {2,4} in S_5 has 16 members (E_5).
        assert_eq!(descent_class(5, &set(&[2, 4])), BigInt::from(16));
    }

    #[test]
    fn descent_classes_q() {
        // d_{2,{1}}(q) = q.
        assert_eq!(descent_class_q(2, &set(&[1])), vec![BigInt::zero(), BigInt::one()]);
        // specializing q = 1 recovers the plain class; brute agrees.
        for n in 1..=5 {
            for mask in 0..(1u64 << (n - 1)) {
                let r: BTreeSet<usize> =
                    (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
                let poly = descent_class_q(n, &r);
                assert_eq!(poly, descent_class_q_brute(n, &r), "n={} R={:?}", n, r);
                assert_eq!(qpoly_eval(&poly, &BigInt::one()), descent_class(n, &r));
            }
        }
    }

    #[test]
    fn q_multinomials_are_gaussian() {
        // [4 choose 2]_q = 1 + q + 2q^2 + q^3 + q^4.
        assert_eq!(
            q_multinomial(&[2, 2]),
            vec![
                BigInt::from(1),
                BigInt::from(1),
                BigInt::from(2),
                BigInt::from(1),
                BigInt::from(1)
            ]
        );
    }

    #[test]
    fn signed_descent_classes() {
        // B_1: two elements; descent set {} is +1, {0} is -1.
        assert_eq!(signed_descent_class(1, &set(&[])), BigInt::from(1));
        assert_eq!(signed_descent_class(1, &set(&[0])), BigInt::from(1));
        // total over all R is 2^n n!.
        for n in 1..=5 {
            let mut total = BigInt::zero();
            for mask in 0..(1u64 << n) {
                let r: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                total += signed_descent_class(n, &r);
            }
            assert_eq!(total, factorial(n) * BigInt::from(2u32).pow(n as u32));
        }
        for n in 1..=4 {
            for mask in 0..(1u64 << n) {
                let r: BTreeSet<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                assert_eq!(
                    signed_descent_class(n, &r),
                    signed_descent_class_brute(n, &r),
                    "n={} R={:?}",
                    n,
                    r
                );
            }
        }
    }
}
