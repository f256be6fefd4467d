//! Finite-support discrete distributions and their deformed moments.
//!
//! The deformed factorial moment of order `r` is `E([X]_r)`; the binomial
//! moment is `E([X over r])`. Because the support is finite, all moment sums
//! are finite and exact, binomial moments vanish beyond the top support
//! point, and the moment-to-probability inversion is an exact triangular
//! solve.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::deformation::Deformation;
use crate::scalar::{c2, Scalar};
use crate::stirling::{StirlingConfig, StirlingKind, StirlingTable};

/// Invalid distribution or moment data.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MomentsError {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("moments are not the binomial moments of any distribution: {0}")]
    InconsistentMoments(String),
}

/// Wire shape: `{"probs": {"0": "1/2", "1": "1/2"}}`.
#[derive(Serialize, Deserialize)]
struct DistWire {
    probs: BTreeMap<u32, Scalar>,
}

/// Probability mass function with finite support on nonnegative integers;
/// probabilities are exact, nonnegative, and sum to 1. Zero-probability
/// points are dropped, so equal distributions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DistWire", into = "DistWire")]
pub struct DiscreteDistribution {
    probs: BTreeMap<u32, Scalar>,
}

impl DiscreteDistribution {
    pub fn new(probs: BTreeMap<u32, Scalar>) -> Result<Self, MomentsError> {
        let mut total = Scalar::zero();
        for (x, p) in &probs {
            if p.is_negative() {
                return Err(MomentsError::InvalidDistribution(format!(
                    "negative probability {p} at x = {x}"
                )));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(MomentsError::InvalidDistribution(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        let probs = probs.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        Ok(DiscreteDistribution { probs })
    }

    pub fn point_mass(x: u32) -> Self {
        DiscreteDistribution { probs: BTreeMap::from([(x, Scalar::one())]) }
    }

    /// Equal weight on the given points (which must be distinct).
    pub fn uniform(points: &[u32]) -> Self {
        assert!(!points.is_empty(), "uniform distribution needs at least one point");
        let w = Scalar::one() / Scalar::from_integer(points.len() as i64);
        let probs: BTreeMap<u32, Scalar> =
            points.iter().map(|&x| (x, w.clone())).collect();
        assert_eq!(probs.len(), points.len(), "duplicate support points");
        DiscreteDistribution { probs }
    }

    pub fn probs(&self) -> &BTreeMap<u32, Scalar> {
        &self.probs
    }

    pub fn prob(&self, x: u32) -> Scalar {
        self.probs.get(&x).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest support point; `None` only for the (impossible) empty pmf.
    pub fn max_support(&self) -> Option<u32> {
        self.probs.keys().next_back().copied()
    }
}

impl From<DiscreteDistribution> for DistWire {
    fn from(d: DiscreteDistribution) -> Self {
        DistWire { probs: d.probs }
    }
}

impl TryFrom<DistWire> for DiscreteDistribution {
    type Error = MomentsError;
    fn try_from(w: DistWire) -> Result<Self, Self::Error> {
        DiscreteDistribution::new(w.probs)
    }
}

/// Which moment family a vector holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MomentKind {
    Factorial,
    Binomial,
}

/// Wire shape mirrors the distribution with order keys:
/// `{"kind": "binomial", "orders": {"0": "1", "1": "1/2"}}`.
#[derive(Serialize, Deserialize)]
struct MomentWire {
    kind: MomentKind,
    orders: BTreeMap<u32, Scalar>,
}

/// Moments indexed by order `r = 0..`, dense; order 0 is the total mass 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MomentWire", into = "MomentWire")]
pub struct MomentVector {
    pub kind: MomentKind,
    values: Vec<Scalar>,
}

impl MomentVector {
    pub fn new(kind: MomentKind, values: Vec<Scalar>) -> Self {
        MomentVector { kind, values }
    }

    /// Moment of order `r`; zero beyond the stored length (true for
    /// binomial moments of finite-support distributions).
    pub fn value(&self, r: usize) -> Scalar {
        self.values.get(r).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl From<MomentVector> for MomentWire {
    fn from(m: MomentVector) -> Self {
        let orders = m
            .values
            .into_iter()
            .enumerate()
            .map(|(r, v)| (r as u32, v))
            .collect();
        MomentWire { kind: m.kind, orders }
    }
}

impl TryFrom<MomentWire> for MomentVector {
    type Error = MomentsError;
    fn try_from(w: MomentWire) -> Result<Self, Self::Error> {
        let len = w.orders.keys().next_back().map_or(0, |&r| r as usize + 1);
        let mut values = vec![Scalar::zero(); len];
        for (r, v) in w.orders {
            values[r as usize] = v;
        }
        Ok(MomentVector { kind: w.kind, values })
    }
}

/// `E([X]_r) = sum_x [x]_r g(x)`; order-0 moment is 1.
pub fn deformed_factorial_moment(d: &Deformation, dist: &DiscreteDistribution, r: i64) -> Scalar {
    assert!(r >= 0, "moment order must be nonnegative, got {r}");
    let mut acc = Scalar::zero();
    for (&x, p) in dist.probs() {
        acc += d
            .ordered_factorial(x as i64, r)
            .expect("nonnegative order cannot fail")
            * p;
    }
    acc
}

/// `E([X over r]) = sum_x [x over r] g(x)`; equals the factorial moment
/// divided by `[r]!`, and vanishes for `r` beyond the top support point.
pub fn deformed_binomial_moment(d: &Deformation, dist: &DiscreteDistribution, r: i64) -> Scalar {
    assert!(r >= 0, "moment order must be nonnegative, got {r}");
    let mut acc = Scalar::zero();
    for (&x, p) in dist.probs() {
        acc += d.binomial(x as i64, r) * p;
    }
    acc
}

/// All binomial moments of orders `0..=max_support`, the full information
/// content of the distribution.
pub fn binomial_moment_vector(d: &Deformation, dist: &DiscreteDistribution) -> MomentVector {
    let top = dist.max_support().unwrap_or(0) as i64;
    let values = (0..=top).map(|r| deformed_binomial_moment(d, dist, r)).collect();
    MomentVector::new(MomentKind::Binomial, values)
}

/// Factorial counterpart of [`binomial_moment_vector`].
pub fn factorial_moment_vector(d: &Deformation, dist: &DiscreteDistribution) -> MomentVector {
    let top = dist.max_support().unwrap_or(0) as i64;
    let values = (0..=top).map(|r| deformed_factorial_moment(d, dist, r)).collect();
    MomentVector::new(MomentKind::Factorial, values)
}

/// Deformed mean and variance: `mu = E([X])`,
/// `sigma^2 = E([X]^2) - mu^2`.
///
/// Debug builds additionally verify the square decomposition
/// `[x]^2 = eps2 [x]_2 + unit eps1^(x-1) [x]`, which turns the variance
/// into `eps2 E([X]_2) + unit E(eps1^(X-1) [X]) - mu^2` (see
/// [`decomposed_variance`]).
pub fn deformed_mean_variance(
    d: &Deformation,
    dist: &DiscreteDistribution,
) -> (Scalar, Scalar) {
    let mut mu = Scalar::zero();
    let mut second = Scalar::zero();
    for (&x, p) in dist.probs() {
        let n = d.number(x as i64);
        mu += &n * p;
        second += &n * &n * p;
    }
    let sigma2 = second - &mu * &mu;
    debug_assert_eq!(sigma2, decomposed_variance(d, dist), "square decomposition");
    (mu, sigma2)
}

/// Variance through the square decomposition,
/// `eps2 E([X]_2) + unit E(eps1^(X-1) [X]) - mu^2`; agrees exactly with
/// the direct form for every deformation in the family. The `unit` factor
/// on the mixed term matters only for `unit != 1` kinds.
pub fn decomposed_variance(d: &Deformation, dist: &DiscreteDistribution) -> Scalar {
    let mut mixed = Scalar::zero();
    let mut mu = Scalar::zero();
    for (&x, p) in dist.probs() {
        mixed += d.eps1.powi(x as i64 - 1) * d.number(x as i64) * p;
        mu += d.number(x as i64) * p;
    }
    &d.eps2 * &deformed_factorial_moment(d, dist, 2) + &d.unit * &mixed - &mu * &mu
}

/// Classical binomial and falling-factorial moments recovered from the
/// deformed binomial moments through first-kind Stirling numbers:
///
/// ```text
/// E[C(X, j)] = sum_m (-1)^(m-j) (eps1-eps2)^(m-j) eps1^(C(m,2) - tau(m-j))
///              s(m, j) E[X over m]
/// E[(X)_j]   = j! * E[C(X, j)]
/// ```
///
/// with central first-kind tables (noncentrality 0) at grading `tau`. Exact
/// in the q-case for every `tau`; not an identity for `eps1 != 1`.
pub fn classical_moments_from_deformed(
    d: &Deformation,
    dist: &DiscreteDistribution,
    j: i64,
    tau: i64,
) -> (Scalar, Scalar) {
    assert!(j >= 1, "classical moment order must be positive, got {j}");
    let top = dist.max_support().unwrap_or(0) as i64;
    let cfg = StirlingConfig::new(d.clone(), 0, tau);
    let table = StirlingTable::build(StirlingKind::First, cfg, top.max(j) as usize);
    let split = &d.eps1 - &d.eps2;
    let mut binomial = Scalar::zero();
    for m in j..=top {
        let sign = if (m - j) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        binomial += sign
            * split.powi(m - j)
            * d.eps1.powi(c2(m) - tau * (m - j))
            * table.entry(m, j)
            * deformed_binomial_moment(d, dist, m);
    }
    let mut jfact = Scalar::one();
    for i in 1..=j {
        jfact *= Scalar::from_integer(i);
    }
    let factorial = &jfact * &binomial;
    (binomial, factorial)
}

/// Exact inversion: recovers the pmf whose binomial moments are `mv` by
/// back-substituting the triangular system `E_r = sum_{x>=r} [x over r] g(x)`
/// from the top order down. Round-trips with [`binomial_moment_vector`] for
/// every deformation in the family.
pub fn distribution_from_binomial_moments(
    d: &Deformation,
    mv: &MomentVector,
) -> Result<DiscreteDistribution, MomentsError> {
    assert!(mv.kind == MomentKind::Binomial, "inversion consumes binomial moments");
    if mv.is_empty() {
        return Err(MomentsError::InconsistentMoments("empty moment vector".into()));
    }
    let top = mv.len() - 1;
    let mut g = vec![Scalar::zero(); top + 1];
    for x in (0..=top).rev() {
        let mut acc = mv.value(x);
        for y in (x + 1)..=top {
            acc -= d.binomial(y as i64, x as i64) * &g[y];
        }
        g[x] = acc;
    }
    let probs: BTreeMap<u32, Scalar> = g
        .into_iter()
        .enumerate()
        .map(|(x, p)| (x as u32, p))
        .collect();
    DiscreteDistribution::new(probs)
        .map_err(|e| MomentsError::InconsistentMoments(e.to_string()))
}

/// The displayed alternating-series reconstruction of one mass value,
///
/// ```text
/// g(x) = sum_{m>=x} (-1)^(m-x) eps1^(C(x,2)) eps2^(C(m-x,2)) [m over x] E[X over m].
/// ```
///
/// Agrees with the triangular solve when `eps1 = 1`; for `eps1 != 1` it is
/// not the inverse of the moment map (the audit records a witness), which is
/// why [`distribution_from_binomial_moments`] solves exactly instead.
pub fn inversion_series_mass(d: &Deformation, mv: &MomentVector, x: i64) -> Scalar {
    assert!(x >= 0, "support points are nonnegative, got {x}");
    let top = mv.len() as i64 - 1;
    let mut acc = Scalar::zero();
    for m in x..=top {
        let sign = if (m - x) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        acc += sign
            * d.eps1.powi(c2(x))
            * d.eps2.powi(c2(m - x))
            * d.binomial(m, x)
            * mv.value(m as usize);
    }
    acc
}
