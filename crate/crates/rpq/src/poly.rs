//! Exact univariate polynomials and truncated formal power series.
//!
//! Polynomials back the coefficient-wise identity checks (two sides agree as
//! polynomials in x, not merely at sampled points); truncated series back the
//! generating-function checks. Both store exact [`Scalar`] coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::deformation::Deformation;
use crate::scalar::Scalar;

/// Default truncation order for generating-function checks; covers every
/// shipped grid with margin.
pub const DEFAULT_SERIES_ORDER: usize = 16;

/// Dense polynomial with exact coefficients, index = degree. Trailing zero
/// coefficients are trimmed on construction, so the zero polynomial is the
/// empty coefficient list and its degree is `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Polynomial::from_coefficients(vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(c: Scalar, degree: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial::from_coefficients(coeffs)
    }

    /// Builds from `coeffs[k]` = coefficient of `x^k`, trimming trailing
    /// zeros.
    pub fn from_coefficients(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^k`; zero beyond the degree.
    pub fn coefficient(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Horner evaluation, exact.
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    /// Coefficient list `[c0, c1, ...]`, lowest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coefficient(k) + rhs.coefficient(k)).collect();
        Polynomial::from_coefficients(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coefficient(k) - rhs.coefficient(k)).collect();
        Polynomial::from_coefficients(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coefficients(coeffs)
    }
}

/// The degree-n polynomial `prod_{r=1..n} (eps1^(r-1) + x eps2^(r-1))`.
///
/// Its x^kappa coefficient is `eps1^C(n-kappa,2) eps2^C(kappa,2)` times the
/// deformed binomial `[n over kappa]`, which is the product form of the
/// deformed binomial theorem; the identity registry checks that
/// coefficient-wise.
pub fn product_linear_factors(d: &Deformation, n: i64) -> Polynomial {
    assert!(n >= 0, "factor count must be nonnegative, got {n}");
    let mut acc = Polynomial::one();
    for r in 1..=n {
        let factor =
            Polynomial::from_coefficients(vec![d.eps1.powi(r - 1), d.eps2.powi(r - 1)]);
        acc = &acc * &factor;
    }
    acc
}

/// Reciprocal failure: a series with zero constant term has no inverse.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("power series with zero constant term has no reciprocal")]
pub struct NonInvertibleSeries;

/// Formal power series truncated at a fixed order: `coeffs[k]` is the `v^k`
/// coefficient and `coeffs.len() = order + 1`. Binary operations truncate to
/// the smaller operand order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Scalar>,
}

impl PowerSeries {
    /// Series with the given coefficients; the order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![Scalar::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        s.coeffs[0] = Scalar::one();
        s
    }

    /// Embeds a polynomial, truncating above `order`.
    pub fn from_polynomial(p: &Polynomial, order: usize) -> Self {
        let coeffs = (0..=order).map(|k| p.coefficient(k)).collect();
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `v^k`. Panics above the truncation order, where the
    /// series carries no information.
    pub fn coefficient(&self, k: usize) -> Scalar {
        assert!(k <= self.order(), "coefficient {k} beyond truncation order {}", self.order());
        self.coeffs[k].clone()
    }

    pub fn coefficients(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let end = order.min(self.order());
        PowerSeries { coeffs: self.coeffs[..=end].to_vec() }
    }

    /// Multiplies by `v^k`, dropping coefficients pushed past the order.
    pub fn shift(&self, k: usize) -> Self {
        let order = self.order();
        let mut coeffs = vec![Scalar::zero(); order + 1];
        for i in k..=order {
            coeffs[i] = self.coeffs[i - k].clone();
        }
        PowerSeries { coeffs }
    }

    /// Multiplicative inverse to the same order; requires a nonzero constant
    /// term. Computed by the standard recurrence
    /// `b_k = -(1/a_0) sum_{i=1..k} a_i b_{k-i}`.
    pub fn reciprocal(&self) -> Result<PowerSeries, NonInvertibleSeries> {
        if self.coeffs[0].is_zero() {
            return Err(NonInvertibleSeries);
        }
        let a0_inv = self.coeffs[0].recip();
        let mut out = vec![a0_inv.clone()];
        for k in 1..=self.order() {
            let mut acc = Scalar::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out[k - i];
            }
            out.push(-(&a0_inv * &acc));
        }
        Ok(PowerSeries { coeffs: out })
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;
    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect();
        PowerSeries { coeffs }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;
    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![Scalar::zero(); order + 1];
        for i in 0..=order {
            for j in 0..=(order - i) {
                coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        PowerSeries { coeffs }
    }
}
