//! Deformation definitions and the primitive deformed quantities.
//!
//! A deformation replaces every integer `n` by a value `[n]` determined by a
//! pair of structure scalars `(eps1, eps2)` and a base value `unit = [1]`:
//!
//! ```text
//! [n] = unit * (eps1^n - eps2^n) / (eps1 - eps2)
//! ```
//!
//! The family covers the classical q-analog (`eps = (1, q)`), the
//! two-parameter (p,q)-analog (`eps = (p, q)`), and the Quesne variant
//! (`eps = (p, 1/q)` with `unit = p/q`), plus arbitrary custom triples. All
//! deformed numbers satisfy the split law `[u+v] = eps1^v [u] + eps2^u [v]`,
//! which is what the rest of the crate builds on.

use std::fmt;

use serde::Serialize;

use crate::scalar::Scalar;

/// Which parameterization produced a [`Deformation`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DeformationKind {
    /// Single-parameter q-analog: `(eps1, eps2, unit) = (1, q, 1)`.
    #[serde(rename = "q")]
    Q,
    /// Jagannathan-Srinivasa (p,q)-analog: `(p, q, 1)`.
    #[serde(rename = "pq")]
    PqJs,
    /// Generalized q-Quesne analog: `(p, 1/q, p/q)`.
    #[serde(rename = "quesne")]
    Quesne,
    /// Caller-supplied `(eps1, eps2, unit)` triple.
    #[serde(rename = "custom")]
    Custom,
}

impl DeformationKind {
    /// Stable token used on the CLI and in serialized metadata.
    pub fn token(self) -> &'static str {
        match self {
            DeformationKind::Q => "q",
            DeformationKind::PqJs => "pq",
            DeformationKind::Quesne => "quesne",
            DeformationKind::Custom => "custom",
        }
    }
}

/// Construction and evaluation failures for deformed quantities.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeformationError {
    #[error("built-in deformations require 0 < q < p <= 1, got p = {p}, q = {q}")]
    ParameterOrdering { p: Scalar, q: Scalar },
    #[error("degenerate deformation: {reason}")]
    DegenerateDeformation { reason: String },
    #[error("factorial requires a nonnegative argument, got {n}")]
    NegativeArgument { n: i64 },
    #[error("ordered factorial [{x}]_({kappa}) divides by a vanishing factor")]
    DivisionByZeroFactor { x: i64, kappa: i64 },
}

/// An `(eps1, eps2, unit)` triple together with the `(p, q)` parameters that
/// produced it. Immutable once constructed; every operation is pure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deformation {
    pub kind: DeformationKind,
    pub p: Scalar,
    pub q: Scalar,
    pub eps1: Scalar,
    pub eps2: Scalar,
    pub unit: Scalar,
}

fn check_ordering(p: &Scalar, q: &Scalar) -> Result<(), DeformationError> {
    let ok = !q.is_negative() && !q.is_zero() && q < p && *p <= Scalar::one();
    if ok {
        Ok(())
    } else {
        Err(DeformationError::ParameterOrdering { p: p.clone(), q: q.clone() })
    }
}

impl Deformation {
    /// q-analog with `0 < q < 1`; fixes `p = 1`.
    pub fn q(q: Scalar) -> Result<Self, DeformationError> {
        let p = Scalar::one();
        check_ordering(&p, &q)?;
        Ok(Deformation {
            kind: DeformationKind::Q,
            p: p.clone(),
            q: q.clone(),
            eps1: p,
            eps2: q,
            unit: Scalar::one(),
        })
    }

    /// Two-parameter (p,q)-analog with `0 < q < p <= 1`.
    pub fn pq_js(p: Scalar, q: Scalar) -> Result<Self, DeformationError> {
        check_ordering(&p, &q)?;
        Ok(Deformation {
            kind: DeformationKind::PqJs,
            p: p.clone(),
            q: q.clone(),
            eps1: p,
            eps2: q,
            unit: Scalar::one(),
        })
    }

    /// Quesne analog with `0 < q < p <= 1`: `eps2 = 1/q` exceeds 1, and the
    /// base value `[1] = p/q` is no longer 1.
    pub fn quesne(p: Scalar, q: Scalar) -> Result<Self, DeformationError> {
        check_ordering(&p, &q)?;
        Ok(Deformation {
            kind: DeformationKind::Quesne,
            p: p.clone(),
            q: q.clone(),
            eps1: p.clone(),
            eps2: q.recip(),
            unit: p / q,
        })
    }

    /// Arbitrary triple. Requires nonzero fields and `|eps1| != |eps2|`,
    /// which keeps `eps1 - eps2` invertible and guarantees `[m] != 0` for
    /// every `m != 0` (so factorials of positive order never vanish).
    pub fn custom(eps1: Scalar, eps2: Scalar, unit: Scalar) -> Result<Self, DeformationError> {
        let degenerate = |reason: &str| DeformationError::DegenerateDeformation {
            reason: reason.to_string(),
        };
        if eps1.is_zero() || eps2.is_zero() {
            return Err(degenerate("eps1 and eps2 must be nonzero"));
        }
        if unit.is_zero() {
            return Err(degenerate("unit must be nonzero"));
        }
        if eps1.abs() == eps2.abs() {
            // eps1 = eps2 breaks the closed form outright; eps1 = -eps2
            // makes every even-indexed number vanish, which the factorial
            // and binomial layers cannot tolerate.
            return Err(degenerate("|eps1| must differ from |eps2|"));
        }
        Ok(Deformation {
            kind: DeformationKind::Custom,
            p: eps1.clone(),
            q: eps2.clone(),
            eps1,
            eps2,
            unit,
        })
    }

    /// The deformed number `[n]`, defined for every integer `n`.
    ///
    /// `[0] = 0`, `[1] = unit`, and `[-n] = -(eps1*eps2)^(-n) [n]`.
    pub fn number(&self, n: i64) -> Scalar {
        if n == 0 {
            return Scalar::zero();
        }
        let num = self.eps1.powi(n) - self.eps2.powi(n);
        let den = &self.eps1 - &self.eps2;
        &self.unit * &(num / den)
    }

    /// `[n]! = [1][2]...[n]`, with `[0]! = 1`.
    pub fn factorial(&self, n: i64) -> Result<Scalar, DeformationError> {
        if n < 0 {
            return Err(DeformationError::NegativeArgument { n });
        }
        let mut acc = Scalar::one();
        for i in 1..=n {
            acc *= self.number(i);
        }
        Ok(acc)
    }

    /// Ordered factorial `[x]_kappa`.
    ///
    /// For `kappa >= 0` this is the falling product `[x][x-1]...[x-kappa+1]`
    /// (empty product 1 at `kappa = 0`). Negative orders extend it by
    /// `[x]_(-k) = 1 / [x+k]_k`, which fails with
    /// [`DeformationError::DivisionByZeroFactor`] exactly when
    /// `-k <= x <= -1` (the rising product then contains `[0]`).
    pub fn ordered_factorial(&self, x: i64, kappa: i64) -> Result<Scalar, DeformationError> {
        if kappa >= 0 {
            let mut acc = Scalar::one();
            for v in 1..=kappa {
                acc *= self.number(x - v + 1);
            }
            return Ok(acc);
        }
        let k = -kappa;
        if -k <= x && x <= -1 {
            return Err(DeformationError::DivisionByZeroFactor { x, kappa });
        }
        let denom = self.ordered_factorial(x + k, k)?;
        Ok(denom.recip())
    }

    /// Deformed binomial coefficient `[x]_kappa / [kappa]!` for any integer
    /// `x` and `kappa >= 0`. Vanishes for `0 <= x < kappa` and is symmetric
    /// under `kappa <-> x - kappa` when `0 <= kappa <= x`.
    ///
    /// The `unit` powers of numerator and denominator cancel, so the value
    /// depends only on `(eps1, eps2)`.
    pub fn binomial(&self, x: i64, kappa: i64) -> Scalar {
        assert!(kappa >= 0, "binomial order must be nonnegative, got {kappa}");
        let num = self.ordered_factorial(x, kappa).expect("nonnegative order cannot fail");
        let den = self.factorial(kappa).expect("nonnegative order cannot fail");
        num / den
    }

    /// The deformation `(1/eps1, 1/eps2, unit)`. Its quantities relate to
    /// this one by explicit `(eps1*eps2)`-power factors: for example its
    /// binomial is `(eps1*eps2)^(-kappa(u-kappa))` times this one's.
    pub fn inverted(&self) -> Deformation {
        let eps1 = self.eps1.recip();
        let eps2 = self.eps2.recip();
        Deformation {
            kind: DeformationKind::Custom,
            p: eps1.clone(),
            q: eps2.clone(),
            eps1,
            eps2,
            unit: self.unit.clone(),
        }
    }

    /// The deformation `(1, eps2/eps1, unit)`. Its binomial equals
    /// `eps1^(-kappa(u-kappa))` times this one's; deformations with
    /// `eps1 = 1` are their own ratio form.
    pub fn ratio(&self) -> Deformation {
        let eps1 = Scalar::one();
        let eps2 = &self.eps2 / &self.eps1;
        Deformation {
            kind: DeformationKind::Custom,
            p: eps1.clone(),
            q: eps2.clone(),
            eps1,
            eps2,
            unit: self.unit.clone(),
        }
    }
}

impl fmt::Display for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DeformationKind::Q => write!(f, "q(q={})", self.q),
            DeformationKind::PqJs => write!(f, "pq(p={}, q={})", self.p, self.q),
            DeformationKind::Quesne => write!(f, "quesne(p={}, q={})", self.p, self.q),
            DeformationKind::Custom => {
                write!(f, "custom(eps1={}, eps2={}, unit={})", self.eps1, self.eps2, self.unit)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn q_half() -> Deformation {
        Deformation::q(s("1/2")).unwrap()
    }

    #[test]
    fn builtin_triples() {
        let d = q_half();
        assert_eq!((d.eps1, d.eps2, d.unit), (s("1"), s("1/2"), s("1")));

        let d = Deformation::pq_js(s("3/4"), s("1/2")).unwrap();
        assert_eq!((d.eps1, d.eps2, d.unit), (s("3/4"), s("1/2"), s("1")));

        let d = Deformation::quesne(s("3/4"), s("1/2")).unwrap();
        assert_eq!((d.eps1, d.eps2, d.unit), (s("3/4"), s("2"), s("3/2")));
    }

    #[test]
    fn ordering_validation() {
        assert!(matches!(
            Deformation::pq_js(s("1/2"), s("3/4")),
            Err(DeformationError::ParameterOrdering { .. })
        ));
        assert!(Deformation::q(s("1")).is_err());
        assert!(Deformation::q(s("0")).is_err());
        assert!(Deformation::pq_js(s("5/4"), s("1/2")).is_err());
        // p = 1 sits on the allowed boundary
        assert!(Deformation::pq_js(s("1"), s("1/2")).is_ok());
        assert!(Deformation::quesne(s("1"), s("1/2")).is_ok());
    }

    #[test]
    fn custom_validation() {
        assert!(Deformation::custom(s("2/3"), s("1/3"), s("5/4")).is_ok());
        for (e1, e2, u) in [
            ("1", "1", "1"),   // equal structure scalars
            ("2", "-2", "1"),  // equal magnitude makes [2] vanish
            ("0", "1/2", "1"), // zero field
            ("1", "0", "1"),
            ("1", "1/2", "0"),
        ] {
            assert!(
                matches!(
                    Deformation::custom(s(e1), s(e2), s(u)),
                    Err(DeformationError::DegenerateDeformation { .. })
                ),
                "accepted ({e1}, {e2}, {u})"
            );
        }
    }

    #[test]
    fn numbers_match_hand_values() {
        assert_eq!(q_half().number(3), s("7/4"));
        assert_eq!(q_half().number(0), Scalar::zero());
        assert_eq!(q_half().number(1), s("1"));
        // Quesne at p = 1: [2] = (1 - q^-2)/(1 - q^-1) scaled by unit = 1/q
        let d = Deformation::quesne(s("1"), s("1/2")).unwrap();
        assert_eq!(d.number(2), s("6"));
        assert_eq!(d.number(1), d.unit);
    }

    #[test]
    fn negative_argument_law() {
        for d in [
            q_half(),
            Deformation::pq_js(s("3/4"), s("1/2")).unwrap(),
            Deformation::quesne(s("3/4"), s("1/2")).unwrap(),
        ] {
            let ee = &d.eps1 * &d.eps2;
            for n in 0..=12 {
                assert_eq!(d.number(-n), -(ee.powi(-n) * d.number(n)));
            }
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(q_half().factorial(0).unwrap(), s("1"));
        assert_eq!(q_half().factorial(2).unwrap(), s("3/2"));
        let d = Deformation::quesne(s("3/4"), s("1/2")).unwrap();
        assert_eq!(d.factorial(1).unwrap(), d.unit);
        assert!(matches!(
            d.factorial(-1),
            Err(DeformationError::NegativeArgument { n: -1 })
        ));
    }

    #[test]
    fn ordered_factorials() {
        let d = q_half();
        assert_eq!(d.ordered_factorial(4, 2).unwrap(), s("105/32"));
        assert_eq!(d.ordered_factorial(-3, 0).unwrap(), s("1"));
        // negative order at x = 0 is the reciprocal factorial
        assert_eq!(d.ordered_factorial(0, -2).unwrap(), s("2/3"));
        // rising product hits [0] exactly on -|kappa| <= x <= -1
        for x in -2..=-1 {
            assert!(matches!(
                d.ordered_factorial(x, -2),
                Err(DeformationError::DivisionByZeroFactor { .. })
            ));
        }
        assert!(d.ordered_factorial(-3, -2).is_ok());
        assert!(d.ordered_factorial(1, -2).is_ok());
    }

    #[test]
    fn binomials() {
        let d = q_half();
        assert_eq!(d.binomial(4, 2), s("35/16"));
        assert_eq!(d.binomial(7, 0), s("1"));
        assert_eq!(d.binomial(5, 5), s("1"));
        for x in 0..4 {
            assert_eq!(d.binomial(x, 4), Scalar::zero(), "x = {x}");
        }
        // symmetry on 0 <= kappa <= x
        for x in 0..=8 {
            for k in 0..=x {
                assert_eq!(d.binomial(x, k), d.binomial(x, x - k));
            }
        }
    }

    #[test]
    fn binomial_is_unit_free() {
        let base = Deformation::custom(s("2/3"), s("1/3"), s("1")).unwrap();
        let scaled = Deformation::custom(s("2/3"), s("1/3"), s("5/4")).unwrap();
        for x in -4..=8 {
            for k in 0..=6 {
                assert_eq!(base.binomial(x, k), scaled.binomial(x, k));
            }
        }
    }

    #[test]
    fn inverted_deformation_laws() {
        let d = q_half();
        let inv = d.inverted();
        assert_eq!((inv.eps1.clone(), inv.eps2.clone(), inv.unit.clone()), (s("1"), s("2"), s("1")));
        assert_eq!(inv.number(3), s("7"));
        assert_eq!(inv.binomial(4, 2), s("35"));
        let ee = &d.eps1 * &d.eps2;
        for u in 0..=10 {
            assert_eq!(inv.number(u), ee.powi(1 - u) * d.number(u));
        }
    }

    #[test]
    fn ratio_deformation_laws() {
        let d = Deformation::pq_js(s("3/4"), s("1/2")).unwrap();
        let r = d.ratio();
        assert_eq!((r.eps1.clone(), r.eps2.clone()), (s("1"), s("2/3")));
        assert_eq!(r.binomial(2, 1), s("5/3"));
        for u in 0..=8 {
            for k in 0..=u {
                assert_eq!(r.binomial(u, k), d.eps1.powi(-k * (u - k)) * d.binomial(u, k));
            }
        }
        // eps1 = 1 kinds are their own ratio form
        let q = q_half();
        let qr = q.ratio();
        assert_eq!((qr.eps1, qr.eps2, qr.unit), (q.eps1, q.eps2, q.unit));
    }

    #[test]
    fn display_summaries() {
        assert_eq!(q_half().to_string(), "q(q=1/2)");
        assert_eq!(
            Deformation::quesne(s("3/4"), s("1/2")).unwrap().to_string(),
            "quesne(p=3/4, q=1/2)"
        );
        assert_eq!(
            Deformation::custom(s("2/3"), s("1/3"), s("5/4")).unwrap().to_string(),
            "custom(eps1=2/3, eps2=1/3, unit=5/4)"
        );
    }
}
