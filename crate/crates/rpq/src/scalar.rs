//! Arbitrary-precision rational scalars.
//!
//! Every quantity in this crate is a [`Scalar`]: an exact rational kept in
//! lowest terms with a positive denominator. Arithmetic never rounds, so
//! identity checks compare values for true equality rather than within a
//! floating-point tolerance.

use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number, the value type of every deformed quantity.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `numer / denom`. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Scalar(self.0.recip())
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn powi(&self, exp: i64) -> Self {
        if exp == 0 {
            return Scalar::one();
        }
        let (base, mut e) = if exp < 0 {
            (self.recip().0, exp.unsigned_abs())
        } else {
            (self.0.clone(), exp as u64)
        };
        // binary exponentiation
        let mut acc = BigRational::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc *= &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Scalar(acc)
    }

    /// Best-effort conversion for display of numeric residuals; exact paths
    /// never depend on this.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Approximate scientific rendering for numeric report payloads.
    pub fn decimal(&self) -> String {
        format!("{:.12e}", self.to_f64())
    }
}

/// Binomial exponent helper `C(m, 2) = m(m-1)/2`, defined for every integer.
pub fn c2(m: i64) -> i64 {
    m * (m - 1) / 2
}

/// Classical (undeformed) binomial coefficient as a scalar. Requires
/// `n >= 0`; zero outside `0 <= k <= n`.
pub fn classical_binomial(n: i64, k: i64) -> Scalar {
    assert!(n >= 0, "classical binomial needs n >= 0, got {n}");
    if k < 0 || k > n {
        return Scalar::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        // stays integral: acc is C(n, i+1) after each step
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Scalar(BigRational::from_integer(acc))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse failure for the rational literal grammar `[-]digits[/digits]`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: &'static str,
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `a` or `a/b` with an optional sign on `a`; `b` must be a
    /// positive integer. No whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseScalarError { input: s.to_string(), reason };
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let valid_int = |t: &str, sign_ok: bool| {
            let digits = t.strip_prefix('-').map_or(t, |rest| if sign_ok { rest } else { t });
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid_int(num_str, true) {
            return Err(err("numerator must be an optionally signed integer"));
        }
        let numer: BigInt = num_str.parse().map_err(|_| err("unparseable numerator"))?;
        let denom: BigInt = match den_str {
            None => BigInt::one(),
            Some(d) => {
                if !valid_int(d, false) {
                    return Err(err("denominator must be an unsigned integer"));
                }
                d.parse().map_err(|_| err("unparseable denominator"))?
            }
        };
        if denom.is_zero() {
            return Err(err("denominator must be positive"));
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

macro_rules! forward_assign {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            fn $method(&mut self, rhs: Scalar) {
                self.0.$method(rhs.0);
            }
        }
        impl $trait<&Scalar> for Scalar {
            fn $method(&mut self, rhs: &Scalar) {
                self.0.$method(&rhs.0);
            }
        }
    };
}

forward_assign!(AddAssign, add_assign);
forward_assign!(SubAssign, sub_assign);
forward_assign!(MulAssign, mul_assign);
forward_assign!(DivAssign, div_assign);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}
