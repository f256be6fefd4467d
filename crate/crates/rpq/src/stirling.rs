//! Noncentral deformed Stirling numbers of both kinds.
//!
//! Tables are built from the row recursions
//!
//! ```text
//! s(n+1, k) = s(n, k-1) - eps1^(tau - n - j) [n + j] s(n, k)     (first kind)
//! S(n+1, k) = S(n, k-1) + eps1^(tau - k)     [k + j] S(n, k)     (second kind)
//! ```
//!
//! with `s(0,0) = S(0,0) = 1`. The noncentrality `j` shifts which deformed
//! numbers appear; the grading `tau` fixes the free `eps1` exponent the
//! recursion coefficients carry. When `eps1 = 1` (the q-case) `tau` is inert
//! and the tables are the classical noncentral q-Stirling triangles.
//!
//! The connection identities these numbers satisfy are grading-sensitive for
//! `eps1 != 1`: a table expands factorials at the evaluation point `x` only
//! when its `tau` matches `x` (see the individual functions for the exact
//! matching rule). The q-case holds for every `tau`.

use serde::Serialize;

use crate::deformation::Deformation;
use crate::poly::PowerSeries;
use crate::report::{CheckError, CheckReport, Counterexample};
use crate::scalar::{c2, classical_binomial, Scalar};

/// Which triangle a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StirlingKind {
    First,
    Second,
}

/// Fixed parameters of one Stirling table: the deformation, the
/// noncentrality `j`, and the grading `tau`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StirlingConfig {
    pub d: Deformation,
    pub j: i64,
    pub tau: i64,
}

impl StirlingConfig {
    pub fn new(d: Deformation, j: i64, tau: i64) -> Self {
        StirlingConfig { d, j, tau }
    }
}

/// Memoized triangle of Stirling numbers for one [`StirlingConfig`],
/// rows `n = 0..=n_max`. Immutable once built.
#[derive(Debug, Clone)]
pub struct StirlingTable {
    kind: StirlingKind,
    config: StirlingConfig,
    rows: Vec<Vec<Scalar>>,
}

impl StirlingTable {
    pub fn build(kind: StirlingKind, config: StirlingConfig, n_max: usize) -> Self {
        let d = &config.d;
        let mut rows: Vec<Vec<Scalar>> = vec![vec![Scalar::one()]];
        for n in 0..n_max {
            let coeff = |k: usize| match kind {
                StirlingKind::First => {
                    -(d.eps1.powi(config.tau - n as i64 - config.j) * d.number(n as i64 + config.j))
                }
                StirlingKind::Second => {
                    d.eps1.powi(config.tau - k as i64) * d.number(k as i64 + config.j)
                }
            };
            let prev = &rows[n];
            let mut row = Vec::with_capacity(n + 2);
            for k in 0..=(n + 1) {
                let carry = if k >= 1 { prev[k - 1].clone() } else { Scalar::zero() };
                let stay = if k <= n { &coeff(k) * &prev[k] } else { Scalar::zero() };
                row.push(carry + stay);
            }
            rows.push(row);
        }
        StirlingTable { kind, config, rows }
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    pub fn config(&self) -> &StirlingConfig {
        &self.config
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    /// Row `n` as a slice of `n + 1` entries.
    pub fn row(&self, n: usize) -> &[Scalar] {
        &self.rows[n]
    }

    /// Entry `(n, kappa)`; zero outside `0 <= kappa <= n`. Panics beyond the
    /// built depth.
    pub fn entry(&self, n: i64, kappa: i64) -> Scalar {
        assert!(
            n >= 0 && (n as usize) <= self.n_max(),
            "row {n} outside table depth {}",
            self.n_max()
        );
        if kappa < 0 || kappa > n {
            return Scalar::zero();
        }
        self.rows[n as usize][kappa as usize].clone()
    }
}

/// One first-kind value; builds a throwaway table. Use [`StirlingTable`]
/// directly when querying many entries.
pub fn stirling_first(cfg: &StirlingConfig, n: i64, kappa: i64) -> Scalar {
    assert!(n >= 0, "row index must be nonnegative, got {n}");
    StirlingTable::build(StirlingKind::First, cfg.clone(), n as usize).entry(n, kappa)
}

/// One second-kind value; see [`stirling_first`].
pub fn stirling_second(cfg: &StirlingConfig, n: i64, kappa: i64) -> Scalar {
    assert!(n >= 0, "row index must be nonnegative, got {n}");
    StirlingTable::build(StirlingKind::Second, cfg.clone(), n as usize).entry(n, kappa)
}

/// Both sides of the factorial-to-powers expansion
///
/// ```text
/// [x - j]_n = eps2^(-C(n,2) - jn) * sum_k s(n, k; j) [x]^k
/// ```
///
/// Exact for every `x` in the q-case; for `eps1 != 1` exact precisely when
/// `cfg.tau = x`.
pub fn expand_factorial_in_powers(cfg: &StirlingConfig, n: i64, x: i64) -> (Scalar, Scalar) {
    assert!(n >= 0);
    let d = &cfg.d;
    let table = StirlingTable::build(StirlingKind::First, cfg.clone(), n as usize);
    let lhs = d
        .ordered_factorial(x - cfg.j, n)
        .expect("nonnegative order cannot fail");
    let base = d.number(x);
    let mut sum = Scalar::zero();
    for k in 0..=n {
        sum += table.entry(n, k) * base.powi(k);
    }
    let rhs = d.eps2.powi(-c2(n) - cfg.j * n) * sum;
    (lhs, rhs)
}

/// Both sides of the powers-to-factorials expansion
///
/// ```text
/// [x]^n = sum_k eps2^(C(k,2) + jk) S(n, k; j) [x - j]_k
/// ```
///
/// Exact for every `x` in the q-case; for `eps1 != 1` exact precisely when
/// `cfg.tau = x - j`.
pub fn expand_powers_in_factorials(cfg: &StirlingConfig, n: i64, x: i64) -> (Scalar, Scalar) {
    assert!(n >= 0);
    let d = &cfg.d;
    let table = StirlingTable::build(StirlingKind::Second, cfg.clone(), n as usize);
    let lhs = d.number(x).powi(n);
    let mut rhs = Scalar::zero();
    for k in 0..=n {
        let fact = d
            .ordered_factorial(x - cfg.j, k)
            .expect("nonnegative order cannot fail");
        rhs += d.eps2.powi(c2(k) + cfg.j * k) * table.entry(n, k) * fact;
    }
    (lhs, rhs)
}

/// Shifted variant of [`expand_powers_in_factorials`]:
///
/// ```text
/// [x + j]^n = sum_k eps2^(C(k,2) + jk) S(n, k; j) [x]_k
/// ```
///
/// the same statement after `x -> x + j`; its matching rule is
/// `cfg.tau = x`.
pub fn expand_powers_in_factorials_shifted(
    cfg: &StirlingConfig,
    n: i64,
    x: i64,
) -> (Scalar, Scalar) {
    assert!(n >= 0);
    let d = &cfg.d;
    let table = StirlingTable::build(StirlingKind::Second, cfg.clone(), n as usize);
    let lhs = d.number(x + cfg.j).powi(n);
    let mut rhs = Scalar::zero();
    for k in 0..=n {
        let fact = d.ordered_factorial(x, k).expect("nonnegative order cannot fail");
        rhs += d.eps2.powi(c2(k) + cfg.j * k) * table.entry(n, k) * fact;
    }
    (lhs, rhs)
}

/// Checks that the two kinds are mutually inverse triangles:
/// `sum_m s(n,m) S(m,k) = delta(n,k)` and the transpose, for all
/// `n, k <= n_max`, both tables sharing `cfg`.
///
/// Holds exactly in the q-case for every `j`, and for `eps1 != 1` when
/// `j = 0`; noncentral general-eps tables are not orthogonal (the report
/// then carries exact counterexamples).
pub fn stirling_orthogonality(cfg: &StirlingConfig, n_max: usize) -> CheckReport {
    let first = StirlingTable::build(StirlingKind::First, cfg.clone(), n_max);
    let second = StirlingTable::build(StirlingKind::Second, cfg.clone(), n_max);
    let mut report = CheckReport::new(
        "STIRLING_ORTHOGONALITY",
        "s13/s14",
        cfg.d.to_string(),
    );
    report.grid = format!("n, kappa <= {n_max}, j={}, tau={}", cfg.j, cfg.tau);
    for n in 0..=(n_max as i64) {
        for k in 0..=(n_max as i64) {
            let want = if n == k { Scalar::one() } else { Scalar::zero() };
            let mut fs = Scalar::zero();
            let mut sf = Scalar::zero();
            for m in 0..=(n_max as i64) {
                fs += first.entry(n, m) * second.entry(m, k);
                sf += second.entry(n, m) * first.entry(m, k);
            }
            report.check_cell(
                [("n", n), ("kappa", k)],
                &format!("first*second={fs}, second*first={sf}"),
                &want,
                fs == want && sf == want,
            );
        }
    }
    report
}

/// Generating function of one second-kind column:
///
/// ```text
/// v^kappa * prod_{i=0..kappa} (1 - eps1^(tau - i) [r + i] v)^(-1)
/// ```
///
/// truncated at `order`, with `r = cfg.j`. Its `v^n` coefficient equals
/// `S(n, kappa)` from the recursion, for every kind and grading.
pub fn genfunc_second(cfg: &StirlingConfig, kappa: i64, order: usize) -> PowerSeries {
    assert!(kappa >= 0, "column index must be nonnegative, got {kappa}");
    let d = &cfg.d;
    let mut acc = PowerSeries::zero(order);
    if (kappa as usize) <= order {
        acc = PowerSeries::from_polynomial(
            &crate::poly::Polynomial::monomial(Scalar::one(), kappa as usize),
            order,
        );
    }
    for i in 0..=kappa {
        let a = d.eps1.powi(cfg.tau - i) * d.number(cfg.j + i);
        let mut coeffs = vec![Scalar::zero(); order + 1];
        coeffs[0] = Scalar::one();
        if order >= 1 {
            coeffs[1] = -a;
        }
        let factor = PowerSeries::new(coeffs);
        let recip = factor.reciprocal().expect("constant term is 1");
        acc = &acc * &recip;
    }
    acc
}

/// The displayed closed-form alternating sums for a single Stirling number,
/// with grading `x = cfg.tau` and noncentrality `r` as written in the
/// formulas (independent of `cfg.j`).
///
/// First kind:
///
/// ```text
/// eps1^(-C(n,2) + nx) / (eps1 - eps2)^(n-k)
///   * sum_{i=k..n} (-1)^(i-k) eps1^(C(i,2) - r(n-i) - kx)
///                  eps2^(C(n-i,2) + r(n-i)) [n over i] C(i, k)
/// ```
///
/// Second kind:
///
/// ```text
/// eps1^(nx) * sum_{i=k..n} (-1)^(i-k) eps1^((n-i)r + C(k,2) - kx)
///             eps2^(r(i-k)) / (eps1 - eps2)^(n-k) * C(n, i) [i over k]
/// ```
///
/// Both match the recursion tables exactly in the q-case. For general eps
/// the first kind needs the factor `unit^(n-k)` (see the audit), and the
/// second kind needs the regrouped exponents of
/// [`explicit_second_corrected`].
pub fn explicit_stirling(
    cfg: &StirlingConfig,
    kind: StirlingKind,
    n: i64,
    kappa: i64,
    r: i64,
) -> Scalar {
    assert!(n >= 1 && 1 <= kappa && kappa <= n, "need n >= 1 and 1 <= kappa <= n");
    let d = &cfg.d;
    let x = cfg.tau;
    let k = kappa;
    let split = &d.eps1 - &d.eps2;
    let mut sum = Scalar::zero();
    match kind {
        StirlingKind::First => {
            for i in k..=n {
                let sign = if (i - k) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                sum += sign
                    * d.eps1.powi(c2(i) - r * (n - i) - k * x)
                    * d.eps2.powi(c2(n - i) + r * (n - i))
                    * d.binomial(n, i)
                    * classical_binomial(i, k);
            }
            d.eps1.powi(-c2(n) + n * x) / split.powi(n - k) * sum
        }
        StirlingKind::Second => {
            for i in k..=n {
                let sign = if (i - k) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                sum += sign
                    * d.eps1.powi((n - i) * r + c2(k) - k * x)
                    * d.eps2.powi(r * (i - k))
                    * classical_binomial(n, i)
                    * d.binomial(i, k);
            }
            d.eps1.powi(n * x) / split.powi(n - k) * sum
        }
    }
}

/// Regrouped second-kind closed form that matches the recursion for every
/// deformation (the per-term `eps1` exponent carries `-k(i-k)` in place of
/// the displayed constant `C(k,2)`, and the prefactor gains `unit^(n-k)`):
///
/// ```text
/// S(n, k; r) = unit^(n-k) eps1^(nx) / (eps1 - eps2)^(n-k)
///   * sum_{i=k..n} (-1)^(i-k) C(n, i)
///                  eps1^((n-i)r - k(i-k) - kx) eps2^(r(i-k)) [i over k]
/// ```
pub fn explicit_second_corrected(cfg: &StirlingConfig, n: i64, kappa: i64, r: i64) -> Scalar {
    assert!(n >= 1 && 1 <= kappa && kappa <= n, "need n >= 1 and 1 <= kappa <= n");
    let d = &cfg.d;
    let x = cfg.tau;
    let k = kappa;
    let mut sum = Scalar::zero();
    for i in k..=n {
        let sign = if (i - k) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        sum += sign
            * classical_binomial(n, i)
            * d.eps1.powi((n - i) * r - k * (i - k) - k * x)
            * d.eps2.powi(r * (i - k))
            * d.binomial(i, k);
    }
    d.unit.powi(n - k) * d.eps1.powi(n * x) / (&d.eps1 - &d.eps2).powi(n - k) * sum
}

/// Closed forms for the first two columns of the central first-kind
/// triangle, with `x = cfg.tau`:
///
/// ```text
/// s(u, 1) = (-1)^(u-1) eps1^((u-1)x - C(u,2)) [u-1]!
/// s(u, 2) = (-1)^(u-2) eps1^((u-2)x - C(u,2)) [u-1]! * sum_{i=1..u-1} eps1^i / [i]
/// ```
///
/// These match `stirling_first` at `j = 0` for every deformation and
/// grading.
pub fn special_first_column(cfg: &StirlingConfig, u: i64, column: i64) -> Scalar {
    let d = &cfg.d;
    let x = cfg.tau;
    match column {
        1 => {
            assert!(u >= 1, "column 1 needs u >= 1");
            let sign = if (u - 1) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            sign * d.eps1.powi((u - 1) * x - c2(u))
                * d.factorial(u - 1).expect("nonnegative")
        }
        2 => {
            assert!(u >= 2, "column 2 needs u >= 2");
            let mut zeta = Scalar::zero();
            for i in 1..u {
                zeta += d.eps1.powi(i) / d.number(i);
            }
            let sign = if (u - 2) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            sign * d.eps1.powi((u - 2) * x - c2(u))
                * d.factorial(u - 1).expect("nonnegative")
                * zeta
        }
        _ => panic!("column must be 1 or 2, got {column}"),
    }
}

/// Signless first-kind number `[-1]^(kappa - n) * s(n, kappa)`, where
/// `[-1] = -unit/(eps1*eps2)`. Nonnegative for every deformation in the
/// family; in the q-case it is `|s(n, kappa)| * q^(n - kappa)`.
pub fn signless_first(cfg: &StirlingConfig, n: i64, kappa: i64) -> Scalar {
    let d = &cfg.d;
    let rho = -(&d.unit / &(&d.eps1 * &d.eps2));
    rho.powi(kappa - n) * stirling_first(cfg, n, kappa)
}

/// Numeric check of the two reciprocal expansions, with shift parameter
/// `x = cfg.j` (the certified relations also need `cfg.tau = cfg.j`):
///
/// ```text
/// eps1^((t-2x)k) / [t-x]_(k+1)
///   = sum_{n>=k} eps2^(C(k+1,2) + x(k+1)) S(n,k) eps1^((t-2x)n) / [t]^(n+1)
/// eps1^((t-2x)k) / [t]^(k+1)
///   = sum_{n>=k} eps2^(-C(n+1,2) - x(n+1)) s(n,k) eps1^((t-2x)n) / [t-x]_(n+1)
/// ```
///
/// Each report passes iff the partial sum at `horizon` is within relative
/// `tolerance` of the exact left side. The second expansion's terms contain
/// `[t-x]_(n+1)`, which hits a zero factor once `n >= t - x`; when the
/// horizon reaches that pole the second report is marked skipped.
pub fn reciprocal_expansions(
    cfg: &StirlingConfig,
    kappa: i64,
    t: i64,
    horizon: usize,
    tolerance: &Scalar,
) -> Result<Vec<CheckReport>, CheckError> {
    assert!(kappa >= 0, "column index must be nonnegative, got {kappa}");
    let x = cfg.j;
    if t <= kappa + x {
        return Err(CheckError::DomainViolation(format!(
            "reciprocal expansions need t > kappa + x, got t={t}, kappa={kappa}, x={x}"
        )));
    }
    let d = &cfg.d;
    let h = horizon as i64;
    let grid = format!("kappa={kappa}, x={x}, t={t}, horizon={horizon}");

    let second = StirlingTable::build(StirlingKind::Second, cfg.clone(), horizon);
    let mut rep31 = CheckReport::new("STIRLING_RECIP_SECOND", "s31", d.to_string());
    rep31.grid = grid.clone();
    {
        let lhs = d.eps1.powi((t - 2 * x) * kappa)
            / d.ordered_factorial(t - x, kappa + 1).expect("nonnegative order");
        let pref = d.eps2.powi(c2(kappa + 1) + x * (kappa + 1));
        let tn = d.number(t);
        let mut partial = Scalar::zero();
        for n in kappa..=h {
            partial += &pref * &(second.entry(n, kappa) * d.eps1.powi((t - 2 * x) * n)
                / tn.powi(n + 1));
        }
        let err = (&lhs - &partial).abs() / lhs.abs();
        rep31.observe(format!("relative error {} at horizon {horizon}", err.decimal()));
        rep31.check_cell(
            [("kappa", kappa), ("x", x), ("t", t)],
            &lhs.decimal(),
            &partial.decimal(),
            err <= *tolerance,
        );
    }

    let first = StirlingTable::build(StirlingKind::First, cfg.clone(), horizon);
    let mut rep32 = CheckReport::new("STIRLING_RECIP_FIRST", "s32", d.to_string());
    rep32.grid = grid;
    if t - x <= h {
        rep32.mark_skipped(format!(
            "term denominator [t-x]_(n+1) hits a zero factor at n = {} before the horizon",
            t - x
        ));
    } else {
        let lhs = d.eps1.powi((t - 2 * x) * kappa) / d.number(t).powi(kappa + 1);
        let mut partial = Scalar::zero();
        for n in kappa..=h {
            partial += d.eps2.powi(-c2(n + 1) - x * (n + 1)) * first.entry(n, kappa)
                * d.eps1.powi((t - 2 * x) * n)
                / d.ordered_factorial(t - x, n + 1).expect("no zero factor below the pole");
        }
        let err = (&lhs - &partial).abs() / lhs.abs();
        rep32.observe(format!("relative error {} at horizon {horizon}", err.decimal()));
        rep32.check_cell(
            [("kappa", kappa), ("x", x), ("t", t)],
            &lhs.decimal(),
            &partial.decimal(),
            err <= *tolerance,
        );
    }

    Ok(vec![rep31, rep32])
}

/// Raw sides of the two classical-bridge identities at one `(kappa, j)`
/// cell: `((classical lhs, rhs), (deformed lhs, rhs))`.
pub(crate) fn bridge_sides(
    cfg: &StirlingConfig,
    kappa: i64,
    j: i64,
) -> ((Scalar, Scalar), (Scalar, Scalar)) {
    let d = &cfg.d;
    let x = cfg.tau;
    let first = StirlingTable::build(StirlingKind::First, cfg.clone(), kappa as usize);
    let second = StirlingTable::build(StirlingKind::Second, cfg.clone(), kappa as usize);
    let split = &d.eps1 - &d.eps2;
    let mut rhs_classical = Scalar::zero();
    let mut rhs_deformed = Scalar::zero();
    for m in j..=kappa {
        let sign = if (m - j) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        rhs_classical += &sign
            * &(split.powi(m - j)
                * d.eps1.powi(c2(m) - x * (m - j))
                * first.entry(m, j)
                * d.binomial(kappa, m));
        rhs_deformed += sign
            * split.powi(m - j)
            * d.eps1.powi(-c2(j) - x * (m - j))
            * second.entry(m, j)
            * classical_binomial(kappa, m);
    }
    (
        (classical_binomial(kappa, j), rhs_classical),
        (d.binomial(kappa, j), rhs_deformed),
    )
}

/// Verifies the pair of bridges between deformed and classical binomials at
/// one `(kappa, j)` cell:
///
/// ```text
/// C(kappa, j)  = sum_m (-1)^(m-j) (eps1-eps2)^(m-j) eps1^(C(m,2) - tau(m-j)) s(m, j) [kappa over m]
/// [kappa over j] = sum_m (-1)^(m-j) (eps1-eps2)^(m-j) eps1^(-C(j,2) - tau(m-j)) S(m, j) C(kappa, m)
/// ```
///
/// using this config's tables. Exact in the q-case with central tables
/// (`cfg.j = 0`), for every grading; does not hold for `eps1 != 1`.
pub fn classical_binomial_bridge(
    cfg: &StirlingConfig,
    kappa: i64,
    j: i64,
) -> (CheckReport, CheckReport) {
    assert!(kappa >= 1 && j >= 1, "bridge needs kappa, j >= 1");
    let ((lc, rc), (ld, rd)) = bridge_sides(cfg, kappa, j);
    let grid = format!("kappa={kappa}, j={j}, tau={}", cfg.tau);
    let mut to_classical = CheckReport::new("BRIDGE_CLASSICAL_BINOMIAL", "s33", cfg.d.to_string());
    to_classical.grid = grid.clone();
    to_classical.check_cell([("kappa", kappa), ("j", j)], &lc, &rc, lc == rc);
    let mut to_deformed = CheckReport::new("BRIDGE_DEFORMED_BINOMIAL", "s33b", cfg.d.to_string());
    to_deformed.grid = grid;
    to_deformed.check_cell([("kappa", kappa), ("j", j)], &ld, &rd, ld == rd);
    (to_classical, to_deformed)
}

/// Counterexample-shaped probe used by the audit to surface the noncentral
/// general-eps orthogonality defect without failing the scoped section.
pub(crate) fn orthogonality_witness(cfg: &StirlingConfig, n_max: usize) -> Option<Counterexample> {
    let report = stirling_orthogonality(cfg, n_max);
    report.counterexamples.into_iter().next()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::CheckStatus;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn q_half() -> Deformation {
        Deformation::q(s("1/2")).unwrap()
    }

    fn pq() -> Deformation {
        Deformation::pq_js(s("3/4"), s("1/2")).unwrap()
    }

    fn quesne() -> Deformation {
        Deformation::quesne(s("3/4"), s("1/2")).unwrap()
    }

    fn all_kinds() -> Vec<Deformation> {
        vec![
            q_half(),
            Deformation::q(s("2/3")).unwrap(),
            pq(),
            quesne(),
            Deformation::custom(s("2/3"), s("1/3"), s("5/4")).unwrap(),
        ]
    }

    fn cfg(d: Deformation, j: i64, tau: i64) -> StirlingConfig {
        StirlingConfig::new(d, j, tau)
    }

    #[test]
    fn central_q_values() {
        let c = cfg(q_half(), 0, 0);
        assert_eq!(stirling_second(&c, 3, 2), s("5/2"));
        assert_eq!(stirling_first(&c, 3, 2), s("-5/2"));
        assert_eq!(stirling_first(&c, 2, 1), s("-1"));
        assert_eq!(stirling_first(&c, 0, 0), s("1"));
        assert_eq!(stirling_second(&c, 5, 5), s("1"));
        assert_eq!(stirling_second(&c, 3, 5), Scalar::zero());
    }

    #[test]
    fn boundary_columns_at_zero_grading() {
        for d in all_kinds() {
            for j in 0..=3 {
                let c = cfg(d.clone(), j, 0);
                let first = StirlingTable::build(StirlingKind::First, c.clone(), 6);
                let second = StirlingTable::build(StirlingKind::Second, c, 6);
                for n in 0..=6i64 {
                    let want = d.eps2.powi(c2(n) + j * n)
                        * d.ordered_factorial(-j, n).unwrap();
                    assert_eq!(first.entry(n, 0), want, "{d} j={j} n={n}");
                    assert_eq!(second.entry(n, 0), d.number(j).powi(n), "{d} j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn expansions_hold_when_grading_matches() {
        for d in all_kinds() {
            for j in 0..=2 {
                for x in j..j + 4 {
                    for n in 0..=4 {
                        let (l, r) = expand_factorial_in_powers(&cfg(d.clone(), j, x), n, x);
                        assert_eq!(l, r, "factorial-in-powers {d} j={j} x={x} n={n}");
                        let (l, r) =
                            expand_powers_in_factorials(&cfg(d.clone(), j, x - j), n, x);
                        assert_eq!(l, r, "powers-in-factorials {d} j={j} x={x} n={n}");
                        let (l, r) =
                            expand_powers_in_factorials_shifted(&cfg(d.clone(), j, x), n, x);
                        assert_eq!(l, r, "shifted {d} j={j} x={x} n={n}");
                    }
                }
            }
        }
    }

    #[test]
    fn expansion_cells_from_hand_computation() {
        let (l, r) = expand_factorial_in_powers(&cfg(q_half(), 0, 3), 2, 3);
        assert_eq!((l.clone(), r), (s("21/8"), l));
        let (l, r) = expand_factorial_in_powers(&cfg(q_half(), 1, 4), 1, 4);
        assert_eq!((l.clone(), r), (s("7/4"), l));
        let (l, r) = expand_powers_in_factorials(&cfg(q_half(), 0, 3), 2, 3);
        assert_eq!(l, s("49/16"));
        assert_eq!(r, s("49/16"));
    }

    #[test]
    fn expansion_fails_off_the_matching_point() {
        // fixed grading tau = 0, evaluated at x = 2, general eps
        let (l, r) = expand_factorial_in_powers(&cfg(pq(), 0, 0), 2, 2);
        assert_ne!(l, r);
        // same probe is exact in the q-case, where tau is inert
        let (l, r) = expand_factorial_in_powers(&cfg(q_half(), 0, 0), 2, 2);
        assert_eq!(l, r);
    }

    #[test]
    fn orthogonality_q_case_and_central() {
        for q in ["1/2", "2/3"] {
            let d = Deformation::q(s(q)).unwrap();
            for j in 0..=2 {
                let rep = stirling_orthogonality(&cfg(d.clone(), j, 4), 6);
                assert_eq!(rep.status, CheckStatus::Pass, "q={q} j={j}");
            }
        }
        for d in [pq(), quesne()] {
            for tau in [0, 3] {
                let rep = stirling_orthogonality(&cfg(d.clone(), 0, tau), 6);
                assert_eq!(rep.status, CheckStatus::Pass, "{d} tau={tau}");
            }
        }
    }

    #[test]
    fn orthogonality_noncentral_general_eps_witness() {
        let rep = stirling_orthogonality(&cfg(pq(), 1, 0), 4);
        assert_eq!(rep.status, CheckStatus::Fail);
        let first = &rep.counterexamples[0];
        assert_eq!(first.params["n"], "1");
        assert_eq!(first.params["kappa"], "0");
        assert!(first.lhs.contains("-1/3"), "got {}", first.lhs);
    }

    #[test]
    fn genfunc_matches_recursion_all_kinds() {
        for d in all_kinds() {
            for r in 0..=2 {
                for tau in [0, 2] {
                    let c = cfg(d.clone(), r, tau);
                    let table = StirlingTable::build(StirlingKind::Second, c.clone(), 12);
                    for kappa in 0..=3i64 {
                        let series = genfunc_second(&c, kappa, 12);
                        for n in 0..=12i64 {
                            assert_eq!(
                                series.coefficient(n as usize),
                                table.entry(n, kappa),
                                "{d} r={r} tau={tau} kappa={kappa} n={n}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn genfunc_headline_series() {
        let c = cfg(q_half(), 1, 0);
        assert_eq!(
            genfunc_second(&c, 0, 3).coefficients(),
            &[s("1"), s("1"), s("1"), s("1")]
        );
        let c = cfg(q_half(), 0, 0);
        assert_eq!(
            genfunc_second(&c, 1, 3).coefficients(),
            &[s("0"), s("1"), s("1"), s("1")]
        );
    }

    #[test]
    fn explicit_sums_match_recursion_in_q_case() {
        for q in ["1/2", "2/3"] {
            let d = Deformation::q(s(q)).unwrap();
            for r in 0..=2 {
                for tau in [0, 3] {
                    let c = cfg(d.clone(), r, tau);
                    let first = StirlingTable::build(StirlingKind::First, c.clone(), 6);
                    let second = StirlingTable::build(StirlingKind::Second, c.clone(), 6);
                    for n in 1..=6i64 {
                        for k in 1..=n {
                            assert_eq!(
                                explicit_stirling(&c, StirlingKind::First, n, k, r),
                                first.entry(n, k)
                            );
                            assert_eq!(
                                explicit_stirling(&c, StirlingKind::Second, n, k, r),
                                second.entry(n, k)
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_sums_general_eps() {
        for d in all_kinds() {
            for r in 0..=2 {
                let c = cfg(d.clone(), r, 2);
                let first = StirlingTable::build(StirlingKind::First, c.clone(), 5);
                let second = StirlingTable::build(StirlingKind::Second, c.clone(), 5);
                for n in 1..=5i64 {
                    for k in 1..=n {
                        // first kind: displayed sum times unit^(n-k)
                        assert_eq!(
                            d.unit.powi(n - k)
                                * explicit_stirling(&c, StirlingKind::First, n, k, r),
                            first.entry(n, k),
                            "first {d} r={r} n={n} k={k}"
                        );
                        // second kind: regrouped exponents
                        assert_eq!(
                            explicit_second_corrected(&c, n, k, r),
                            second.entry(n, k),
                            "second {d} r={r} n={n} k={k}"
                        );
                    }
                }
            }
        }
        // the displayed second-kind grouping is q-case-only
        let c = cfg(pq(), 0, 0);
        let second = StirlingTable::build(StirlingKind::Second, c.clone(), 3);
        assert_ne!(
            explicit_stirling(&c, StirlingKind::Second, 3, 1, 0),
            second.entry(3, 1)
        );
    }

    #[test]
    fn column_closed_forms() {
        for d in all_kinds() {
            for x in [0, 1, 3] {
                let c = cfg(d.clone(), 0, x);
                let table = StirlingTable::build(StirlingKind::First, c.clone(), 7);
                for u in 1..=7i64 {
                    assert_eq!(special_first_column(&c, u, 1), table.entry(u, 1), "{d} x={x} u={u}");
                }
                for u in 2..=7i64 {
                    assert_eq!(special_first_column(&c, u, 2), table.entry(u, 2), "{d} x={x} u={u}");
                }
            }
        }
    }

    #[test]
    fn signless_values() {
        let c = cfg(q_half(), 0, 0);
        assert_eq!(signless_first(&c, 2, 1), s("1/2"));
        assert_eq!(signless_first(&c, 0, 0), s("1"));
        assert_eq!(signless_first(&c, 4, 4), s("1"));
        for d in all_kinds() {
            for j in 0..=1 {
                for x in [0, 2] {
                    let c = cfg(d.clone(), j, x);
                    for n in 0..=6 {
                        for k in 0..=n {
                            let v = signless_first(&c, n, k);
                            assert!(!v.is_negative(), "{d} j={j} x={x} n={n} k={k}: {v}");
                        }
                    }
                }
            }
        }
        // q-case: signless = |s| * q^(n-kappa)
        let c = cfg(q_half(), 1, 0);
        let table = StirlingTable::build(StirlingKind::First, c.clone(), 6);
        for n in 0..=6i64 {
            for k in 0..=n {
                let expect = table.entry(n, k).abs() * s("1/2").powi(n - k);
                assert_eq!(signless_first(&c, n, k), expect);
            }
        }
    }

    #[test]
    fn reciprocal_expansion_q_case() {
        let tol = Scalar::ratio(1, 1_000_000_000);
        let c = cfg(q_half(), 0, 0); // x = j = 0
        let reports = reciprocal_expansions(&c, 1, 3, 64, &tol).unwrap();
        assert_eq!(reports[0].status, CheckStatus::Pass, "{:?}", reports[0]);
        // the first-kind series hits the [t-x]_(n+1) pole before horizon 64
        assert_eq!(reports[1].status, CheckStatus::Skipped);
    }

    #[test]
    fn reciprocal_expansion_eps2_dominant() {
        let tol = Scalar::ratio(1, 1_000_000_000);
        let d = Deformation::custom(s("1"), s("2"), s("1")).unwrap();
        let c = cfg(d, 1, 1); // x = tau = 1
        let reports = reciprocal_expansions(&c, 2, 100, 64, &tol).unwrap();
        assert_eq!(reports[0].status, CheckStatus::Pass, "{:?}", reports[0]);
        assert_eq!(reports[1].status, CheckStatus::Pass, "{:?}", reports[1]);
    }

    #[test]
    fn reciprocal_expansion_domain() {
        let tol = Scalar::ratio(1, 1_000_000_000);
        let c = cfg(q_half(), 1, 1);
        assert!(matches!(
            reciprocal_expansions(&c, 2, 3, 16, &tol),
            Err(CheckError::DomainViolation(_))
        ));
    }

    #[test]
    fn bridge_q_case() {
        for q in ["1/2", "2/3"] {
            let d = Deformation::q(s(q)).unwrap();
            for tau in [0, 1, 3] {
                let c = cfg(d.clone(), 0, tau);
                for kappa in 1..=6 {
                    for j in 1..=kappa {
                        let (a, b) = classical_binomial_bridge(&c, kappa, j);
                        assert_eq!(a.status, CheckStatus::Pass, "q={q} tau={tau} k={kappa} j={j}");
                        assert_eq!(b.status, CheckStatus::Pass, "q={q} tau={tau} k={kappa} j={j}");
                    }
                }
            }
        }
        let c = cfg(q_half(), 0, 0);
        let ((lhs, rhs), _) = bridge_sides(&c, 3, 1);
        assert_eq!(lhs, s("3"));
        assert_eq!(rhs, s("3"));
    }

    #[test]
    fn bridge_fails_for_general_eps() {
        let c = cfg(pq(), 0, 0);
        let mut any_fail = false;
        for kappa in 1..=5 {
            for j in 1..=kappa {
                let (a, b) = classical_binomial_bridge(&c, kappa, j);
                if a.status == CheckStatus::Fail || b.status == CheckStatus::Fail {
                    any_fail = true;
                }
            }
        }
        assert!(any_fail);
    }
}
