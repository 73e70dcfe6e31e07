//! Truncated formal power series over exact rationals.
//!
//! A [`TruncatedSeries`] holds coefficients `c_0..c_N` of a series in `u`
//! truncated at order `N`; all arithmetic stays exact and closed at that
//! order. [`BivariateSeries`] is the two-variable variant used by the
//! block-size generating functions: coefficients of `u^n` are polynomials
//! in a second variable `t`.

use num::{BigInt, BigRational, One, Zero};
use std::fmt;

/// Exact rational `n!`.
pub fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    f
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// A univariate formal power series in `u`, truncated at a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<BigRational>,
}

/// The default truncation order used by the convenience constructors.
pub const DEFAULT_ORDER: usize = 16;

impl TruncatedSeries {
    /// The zero series truncated at `order`.
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// The identity series `u`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = BigRational::one();
        }
        s
    }

    /// Build from ordinary coefficients `c_0..c_N` (padded or truncated to
    /// `order`).
    pub fn from_coeffs(order: usize, coeffs: Vec<BigRational>) -> Self {
        let mut c = coeffs;
        c.resize(order + 1, BigRational::zero());
        TruncatedSeries { order, coeffs: c }
    }

    /// Build a series whose `u^n` coefficient is `egf(n) / n!`.
    pub fn from_egf_terms(order: usize, egf: impl Fn(usize) -> BigRational) -> Self {
        let coeffs = (0..=order)
            .map(|n| egf(n) / BigRational::from_integer(factorial(n)))
            .collect();
        TruncatedSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Ordinary coefficient of `u^n`.
    pub fn coeff(&self, n: usize) -> BigRational {
        self.coeffs.get(n).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Exponential coefficient: `n!` times the ordinary coefficient.
    pub fn egf_coeff(&self, n: usize) -> BigRational {
        self.coeff(n) * BigRational::from_integer(factorial(n))
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(
            self.order, other.order,
            "truncation orders must agree ({} vs {})",
            self.order, other.order
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|a| -a).collect();
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let mut coeffs = vec![BigRational::zero(); self.order + 1];
        for i in 0..=self.order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=self.order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    /// Termwise derivative (the truncation order drops by one conceptually;
    /// the top coefficient is set to zero).
    pub fn derivative(&self) -> Self {
        let mut coeffs = vec![BigRational::zero(); self.order + 1];
        for n in 1..=self.order {
            coeffs[n - 1] = &self.coeffs[n] * rat(n as i64);
        }
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    /// Termwise antiderivative with constant term zero.
    pub fn integral(&self) -> Self {
        let mut coeffs = vec![BigRational::zero(); self.order + 1];
        for n in 0..self.order {
            coeffs[n + 1] = &self.coeffs[n] / rat((n + 1) as i64);
        }
        TruncatedSeries {
            order: self.order,
            coeffs,
        }
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Self {
        assert!(
            !self.coeffs[0].is_zero(),
            "series with zero constant term has no multiplicative inverse"
        );
        let mut inv = vec![BigRational::zero(); self.order + 1];
        inv[0] = BigRational::one() / &self.coeffs[0];
        for n in 1..=self.order {
            let mut acc = BigRational::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &inv[n - j];
                }
            }
            inv[n] = -acc / &self.coeffs[0];
        }
        TruncatedSeries {
            order: self.order,
            coeffs: inv,
        }
    }

    /// `exp` of a series with zero constant term, via the recurrence
    /// `n e_n = sum_{j=1}^{n} j f_j e_{n-j}`.
    pub fn exp(&self) -> Self {
        assert!(
            self.coeffs[0].is_zero(),
            "exp requires zero constant term"
        );
        let mut e = vec![BigRational::zero(); self.order + 1];
        e[0] = BigRational::one();
        for n in 1..=self.order {
            let mut acc = BigRational::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc += rat(j as i64) * &self.coeffs[j] * &e[n - j];
                }
            }
            e[n] = acc / rat(n as i64);
        }
        TruncatedSeries {
            order: self.order,
            coeffs: e,
        }
    }

    /// `log` of a series with constant term 1, as the antiderivative of
    /// `f'/f`.
    pub fn log(&self) -> Self {
        assert!(
            self.coeffs[0].is_one(),
            "log requires constant term 1"
        );
        self.derivative().mul(&self.inverse()).integral()
    }

    /// Substitute `g` into `self`; `g` must have zero constant term.
    pub fn compose(&self, g: &Self) -> Self {
        self.check_order(g);
        assert!(
            g.coeffs[0].is_zero(),
            "composition requires the inner series to have zero constant term"
        );
        // Horner evaluation: result = c_N; result = result*g + c_j.
        let mut result = Self::zero(self.order);
        for j in (0..=self.order).rev() {
            result = result.mul(g);
            result.coeffs[0] += &self.coeffs[j];
        }
        result
    }

    /// The compositional inverse of a series with zero constant term and
    /// nonzero linear term, solved term by term.
    pub fn compositional_inverse(&self) -> Self {
        assert!(
            self.coeffs[0].is_zero() && !self.coeffs[1].is_zero(),
            "compositional inverse requires f(0) = 0 and f'(0) != 0"
        );
        let mut g = Self::zero(self.order);
        if self.order == 0 {
            return g;
        }
        g.coeffs[1] = BigRational::one() / &self.coeffs[1];
        for n in 2..=self.order {
            // With g correct through u^{n-1}, the error of f(g) at u^n is
            // linear in the unknown g_n with slope f'(0).
            let h = self.compose(&g);
            let target = if n == 1 {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            let correction = (target - h.coeff(n)) / &self.coeffs[1];
            g.coeffs[n] = correction;
        }
        g
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.denom().is_one())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({})u^{}", c, n)?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// A polynomial in `t` with exact rational coefficients, used as the
/// coefficient ring of [`BivariateSeries`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyT(Vec<BigRational>);

impl PolyT {
    pub fn zero() -> Self {
        PolyT(Vec::new())
    }

    pub fn one() -> Self {
        PolyT(vec![BigRational::one()])
    }

    /// The monomial `c t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); k + 1];
        v[k] = c;
        PolyT(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.0.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.0.is_empty() {
            None
        } else {
            Some(self.0.len() - 1)
        }
    }

    fn trim(mut self) -> Self {
        while self.0.last().map_or(false, |c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![BigRational::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] += c;
        }
        PolyT(v).trim()
    }

    pub fn neg(&self) -> Self {
        PolyT(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product truncated to degree `t_cap` in `t`.
    pub fn mul_capped(&self, other: &Self, t_cap: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = (self.0.len() + other.0.len() - 1).min(t_cap + 1);
        let mut v = vec![BigRational::zero(); n];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() || i > t_cap {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if i + j > t_cap {
                    break;
                }
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        PolyT(v).trim()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyT(self.0.iter().map(|a| a * c).collect()).trim()
    }
}

/// A series in `u`, truncated at `u_order`, whose coefficients are
/// polynomials in `t` truncated at degree `t_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivariateSeries {
    u_order: usize,
    t_cap: usize,
    coeffs: Vec<PolyT>,
}

impl BivariateSeries {
    pub fn zero(u_order: usize, t_cap: usize) -> Self {
        BivariateSeries {
            u_order,
            t_cap,
            coeffs: vec![PolyT::zero(); u_order + 1],
        }
    }

    pub fn one(u_order: usize, t_cap: usize) -> Self {
        let mut s = Self::zero(u_order, t_cap);
        s.coeffs[0] = PolyT::one();
        s
    }

    pub fn u_order(&self) -> usize {
        self.u_order
    }

    /// Set the coefficient of `u^n` (a polynomial in `t`).
    pub fn set_coeff(&mut self, n: usize, p: PolyT) {
        self.coeffs[n] = p;
    }

    /// Coefficient of `t^k u^n`.
    pub fn coeff(&self, k: usize, n: usize) -> BigRational {
        self.coeffs
            .get(n)
            .map(|p| p.coeff(k))
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.u_order, other.u_order);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        BivariateSeries {
            u_order: self.u_order,
            t_cap: self.t_cap.max(other.t_cap),
            coeffs,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.u_order, other.u_order);
        let t_cap = self.t_cap.max(other.t_cap);
        let mut coeffs = vec![PolyT::zero(); self.u_order + 1];
        for i in 0..=self.u_order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=self.u_order - i {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                let prod = self.coeffs[i].mul_capped(&other.coeffs[j], t_cap);
                coeffs[i + j] = coeffs[i + j].add(&prod);
            }
        }
        BivariateSeries {
            u_order: self.u_order,
            t_cap,
            coeffs,
        }
    }

    /// `log` of a series with constant coefficient 1 (in both variables),
    /// via the recurrence `n l_n = n f_n - sum_{j=1}^{n-1} j l_j f_{n-j}`.
    pub fn log(&self) -> Self {
        assert!(
            self.coeffs[0] == PolyT::one(),
            "log requires constant term 1"
        );
        let mut l = vec![PolyT::zero(); self.u_order + 1];
        for n in 1..=self.u_order {
            let mut acc = self.coeffs[n].scale(&rat(n as i64));
            for j in 1..n {
                if l[j].is_zero() || self.coeffs[n - j].is_zero() {
                    continue;
                }
                let term = l[j]
                    .mul_capped(&self.coeffs[n - j], self.t_cap)
                    .scale(&rat(j as i64));
                acc = acc.sub(&term);
            }
            l[n] = acc.scale(&(BigRational::one() / rat(n as i64)));
        }
        BivariateSeries {
            u_order: self.u_order,
            t_cap: self.t_cap,
            coeffs: l,
        }
    }
}
