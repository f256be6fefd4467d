//! Registry of the closed identities satisfied by the deformed numbers,
//! factorials, and binomials, plus an engine that verifies any entry over a
//! parameter grid under a chosen deformation.
//!
//! Most entries are finite rational statements and are checked exactly at
//! every grid cell (three of them coefficient-wise as polynomials). Three
//! are infinite series and are checked numerically: exact partial sums,
//! compared at the configured horizon against the closed left side, must
//! reach the configured relative tolerance. Series entries apply only on
//! their convergence domain; under a deformation outside it the report says
//! `skipped` rather than pretending a verdict.

mod exact;
mod numeric;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::deformation::Deformation;
use crate::report::{CheckError, CheckReport};
use crate::scalar::Scalar;

/// How an identity is verified: exact rational equality at every cell, or
/// partial sums of an infinite series within tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckMode {
    Exact,
    Numeric,
}

macro_rules! registry {
    ($(($variant:ident, $token:literal, $label:literal, $mode:ident)),+ $(,)?) => {
        /// One entry of the identity registry.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
        pub enum IdentityId {
            $($variant,)+
        }

        impl IdentityId {
            /// Registry order; stable, and the order `check_all` reports in.
            pub const ALL: &'static [IdentityId] = &[$(IdentityId::$variant,)+];

            /// Screaming-case registry token, e.g. `PASCAL_1`.
            pub fn token(self) -> &'static str {
                match self { $(IdentityId::$variant => $token,)+ }
            }

            /// Short source-equation label carried on the wire as `paper_eq`.
            pub fn paper_eq(self) -> &'static str {
                match self { $(IdentityId::$variant => $label,)+ }
            }

            pub fn mode(self) -> CheckMode {
                match self { $(IdentityId::$variant => CheckMode::$mode,)+ }
            }
        }
    };
}

registry![
    (FactorialSplit, "FACTORIAL_SPLIT", "fp", Exact),
    (InvFactorial, "INV_FACTORIAL", "014", Exact),
    (InvBang, "INV_BANG", "015", Exact),
    (InvBinomial, "INV_BINOMIAL", "016", Exact),
    (RatioBinomial, "RATIO_BINOMIAL", "a016", Exact),
    (Pascal1, "PASCAL_1", "bc1", Exact),
    (Pascal2, "PASCAL_2", "bc2", Exact),
    (PowerDiff, "POWER_DIFF", "corollary", Exact),
    (Vandermonde1, "VANDERMONDE_1", "vd1", Exact),
    (Vandermonde2, "VANDERMONDE_2", "vd2", Exact),
    (RatioId1, "RATIO_ID_1", "ii1", Exact),
    (RatioId2, "RATIO_ID_2", "ii2", Exact),
    (RatioId3, "RATIO_ID_3", "ii3", Exact),
    (Cauchy1, "CAUCHY_1", "c1", Exact),
    (Cauchy2, "CAUCHY_2", "c2", Exact),
    (NegVandermonde1, "NEG_VANDERMONDE_1", "nvd1", Exact),
    (NegVandermonde2, "NEG_VANDERMONDE_2", "nvd2", Exact),
    (NegRatio1, "NEG_RATIO_1", "ndv11", Exact),
    (NegRatio2, "NEG_RATIO_2", "ndv12", Exact),
    (BinomialProduct, "BINOMIAL_PRODUCT", "bn1", Exact),
    (NegBinomialSeries, "NEG_BINOMIAL_SERIES", "bn5", Numeric),
    (Rothe1, "ROTHE_1", "ad1", Numeric),
    (Rothe2, "ROTHE_2", "ad2", Numeric),
    (Ortho1, "ORTHO_1", "bn6", Exact),
    (Ortho2, "ORTHO_2", "bn7", Exact),
    (InversionPoly, "INVERSION_POLY", "bn11", Exact),
    (InversionPower, "INVERSION_POWER", "bna11", Exact),
    (InversionAlt, "INVERSION_ALT", "bn16", Exact),
    (InversionAltB, "INVERSION_ALT_B", "bna17", Exact),
    (ConvSum, "CONV_SUM", "a11", Exact),
    (ConvSym, "CONV_SYM", "a12", Exact),
    (ConvSquare, "CONV_SQUARE", "a13", Exact),
    (NegConv, "NEG_CONV", "a21", Exact),
    (SplitBinomial, "SPLIT_BINOMIAL", "a31", Exact),
];

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Every registry entry with its wire label and check mode, in report order.
pub fn list_identities() -> Vec<(IdentityId, &'static str, CheckMode)> {
    IdentityId::ALL
        .iter()
        .map(|&id| (id, id.paper_eq(), id.mode()))
        .collect()
}

/// Parameter grid for one identity check.
///
/// `ranges` holds inclusive bounds for the identity's free integer
/// parameters by name; parameters bounded by another (like the inner index
/// of a Pascal row) iterate within the checker and need no range. Names a
/// grid does not set fall back to the identity's default grid. `samples`,
/// `tolerance`, and `horizon` drive the numeric series checks only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    ranges: BTreeMap<String, (i64, i64)>,
    pub samples: Vec<Scalar>,
    pub tolerance: Scalar,
    pub horizon: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            ranges: BTreeMap::new(),
            samples: Vec::new(),
            tolerance: Scalar::ratio(1, 1_000_000_000),
            horizon: 64,
        }
    }
}

impl Grid {
    pub fn new() -> Self {
        Grid::default()
    }

    /// Sets an inclusive range; `lo <= hi` required.
    pub fn with_range(mut self, name: impl Into<String>, lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "empty range {lo}..={hi}");
        self.ranges.insert(name.into(), (lo, hi));
        self
    }

    pub fn with_samples(mut self, samples: Vec<Scalar>) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_tolerance(mut self, tolerance: Scalar) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn with_horizon(mut self, horizon: usize) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn range(&self, name: &str) -> Option<(i64, i64)> {
        self.ranges.get(name).copied()
    }

    /// This grid with any missing ranges/samples taken from `fallback`.
    fn merged_with(&self, fallback: &Grid) -> Grid {
        let mut merged = self.clone();
        for (name, range) in &fallback.ranges {
            merged.ranges.entry(name.clone()).or_insert(*range);
        }
        if merged.samples.is_empty() {
            merged.samples = fallback.samples.clone();
        }
        merged
    }

    fn describe(&self) -> String {
        let mut parts: Vec<String> = self
            .ranges
            .iter()
            .map(|(name, (lo, hi))| format!("{name}={lo}..{hi}"))
            .collect();
        if !self.samples.is_empty() {
            let samples: Vec<String> = self.samples.iter().map(|s| s.to_string()).collect();
            parts.push(format!("x in {{{}}}", samples.join(", ")));
            parts.push(format!("horizon={}", self.horizon));
        }
        parts.join(", ")
    }
}

/// The documented default grid for one identity; matches the ranges the
/// library's own audit uses. Series identities get sample points
/// `x in {1/2, 1/4}`, which lie inside every stated convergence domain.
pub fn default_grid(id: IdentityId) -> Grid {
    use IdentityId::*;
    let g = Grid::new();
    match id {
        FactorialSplit => g.with_range("u", 0, 10).with_range("k", 0, 6).with_range("s", 0, 6),
        InvFactorial | InvBinomial | RatioBinomial | InvBang => g.with_range("u", 0, 10),
        Pascal1 | Pascal2 => g.with_range("x", 1, 12),
        PowerDiff => g.with_range("n", 0, 6).with_range("x", -3, 9),
        Vandermonde1 | Vandermonde2 => {
            g.with_range("x", 0, 7).with_range("y", 0, 7).with_range("n", 0, 5)
        }
        RatioId1 => g.with_range("x", 0, 7).with_range("y", 0, 6).with_range("n", 0, 5),
        RatioId2 => g.with_range("x", 1, 12).with_range("n", 0, 5),
        RatioId3 => g.with_range("y", 1, 7).with_range("n", 0, 5),
        Cauchy1 | Cauchy2 => g.with_range("u", 0, 6).with_range("v", 0, 6).with_range("n", 0, 5),
        NegVandermonde1 | NegVandermonde2 => {
            g.with_range("u", 0, 5).with_range("v", 0, 5).with_range("n", 1, 4)
        }
        NegRatio1 | NegRatio2 => {
            g.with_range("u", 0, 4).with_range("v", 1, 7).with_range("n", 1, 3)
        }
        BinomialProduct => g.with_range("n", 0, 12),
        NegBinomialSeries | Rothe1 | Rothe2 => g
            .with_range("n", 1, 3)
            .with_samples(vec![Scalar::ratio(1, 2), Scalar::ratio(1, 4)]),
        Ortho1 | Ortho2 => g.with_range("n", 0, 8),
        InversionPoly | InversionAlt => g.with_range("n", 0, 8),
        InversionPower => g.with_range("n", 0, 8).with_range("x", 0, 8),
        InversionAltB => g.with_range("n", 0, 7).with_range("x", 0, 7),
        ConvSum => g.with_range("r", 0, 6).with_range("s", 0, 6).with_range("n", 0, 6),
        ConvSym => g.with_range("r", 0, 6),
        ConvSquare => g.with_range("r", 0, 7),
        NegConv => g.with_range("r", 0, 5).with_range("s", 0, 5).with_range("n", 0, 5),
        SplitBinomial => g.with_range("n", 1, 8),
    }
}

/// Verifies one registry entry over `g` under `d`, in the entry's own mode.
///
/// Cells where a displayed denominator vanishes are excluded and counted in
/// the report's `skipped` field. Errors are reserved for grids that cannot
/// be evaluated at all: a negative upper argument in the negative-order
/// entries (the sums would not terminate) raises `DomainViolation`.
pub fn check_identity(
    id: IdentityId,
    d: &Deformation,
    g: &Grid,
) -> Result<CheckReport, CheckError> {
    check_identity_with_mode(id, d, g, id.mode())
}

/// Like [`check_identity`] with an explicit mode. Requesting `Exact` for a
/// series entry raises `NonTerminatingSeries`; requesting `Numeric` for an
/// exact entry runs the exact check (a stronger verdict than asked for).
pub fn check_identity_with_mode(
    id: IdentityId,
    d: &Deformation,
    g: &Grid,
    mode: CheckMode,
) -> Result<CheckReport, CheckError> {
    if mode == CheckMode::Exact && id.mode() == CheckMode::Numeric {
        return Err(CheckError::NonTerminatingSeries(format!(
            "{} sums an infinite series; only the numeric mode applies",
            id.token()
        )));
    }
    let g = g.merged_with(&default_grid(id));
    let mut report = CheckReport::new(id.token(), id.paper_eq(), d.to_string());
    report.grid = g.describe();
    match id.mode() {
        CheckMode::Exact => exact::check(id, d, &g, &mut report)?,
        CheckMode::Numeric => numeric::check(id, d, &g, &mut report),
    }
    Ok(report)
}

/// Checks the whole registry in [`list_identities`] order; one report per
/// entry, default grids unless overridden. Never fails as a call: an entry
/// whose override grid is not evaluable reports `skipped` with the reason.
pub fn check_all(d: &Deformation, grids: &BTreeMap<IdentityId, Grid>) -> Vec<CheckReport> {
    IdentityId::ALL
        .iter()
        .map(|&id| {
            let g = grids.get(&id).cloned().unwrap_or_default();
            check_identity(id, d, &g).unwrap_or_else(|e| {
                let mut r = CheckReport::new(id.token(), id.paper_eq(), d.to_string());
                r.mark_skipped(format!("grid not evaluable: {e}"));
                r
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::{AuditSummary, CheckStatus};

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn q_half() -> Deformation {
        Deformation::q(s("1/2")).unwrap()
    }

    #[test]
    fn registry_has_34_entries_in_stable_order() {
        let listing = list_identities();
        assert_eq!(listing.len(), 34);
        assert_eq!(listing[0].0.token(), "FACTORIAL_SPLIT");
        assert_eq!(listing[0].1, "fp");
        assert_eq!(listing[5].0.token(), "PASCAL_1");
        let (ortho, _, mode) = listing
            .iter()
            .find(|(id, _, _)| id.token() == "ORTHO_1")
            .copied()
            .unwrap();
        assert_eq!(mode, CheckMode::Exact);
        assert_eq!(ortho.paper_eq(), "bn6");
        let (_, label, mode) = listing
            .iter()
            .find(|(id, _, _)| id.token() == "ROTHE_1")
            .copied()
            .unwrap();
        assert_eq!(mode, CheckMode::Numeric);
        assert_eq!(label, "ad1");
        let numeric = listing.iter().filter(|(_, _, m)| *m == CheckMode::Numeric).count();
        assert_eq!(numeric, 3);
    }

    #[test]
    fn ortho1_small_grid_cell_count() {
        let g = Grid::new().with_range("n", 0, 6);
        let r = check_identity(IdentityId::Ortho1, &q_half(), &g).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
        assert_eq!(r.cells, 28); // sum of row lengths n+1 for n <= 6
    }

    #[test]
    fn vandermonde_single_cell_quesne() {
        let d = Deformation::quesne(s("3/4"), s("1/2")).unwrap();
        let g = Grid::new()
            .with_range("x", 3, 3)
            .with_range("y", 3, 3)
            .with_range("n", 2, 2);
        let r = check_identity(IdentityId::Vandermonde1, &d, &g).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
        assert_eq!(r.cells, 1);
    }

    #[test]
    fn conv_square_r0_is_trivial() {
        let g = Grid::new().with_range("r", 0, 0);
        let r = check_identity(IdentityId::ConvSquare, &q_half(), &g).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
        assert_eq!(r.cells, 1);
    }

    #[test]
    fn exact_mode_refused_for_series_entries() {
        let err = check_identity_with_mode(
            IdentityId::Rothe1,
            &q_half(),
            &Grid::new(),
            CheckMode::Exact,
        )
        .unwrap_err();
        assert!(matches!(err, CheckError::NonTerminatingSeries(_)));
    }

    #[test]
    fn negative_upper_argument_is_a_domain_violation() {
        let g = Grid::new().with_range("u", -2, 3);
        for id in [IdentityId::NegVandermonde1, IdentityId::NegRatio1] {
            let err = check_identity(id, &q_half(), &g).unwrap_err();
            assert!(matches!(err, CheckError::DomainViolation(_)), "{id}");
        }
    }

    #[test]
    fn check_all_unit_one_kinds_all_pass_except_wrong_domain_series() {
        for d in [
            q_half(),
            Deformation::q(s("2/3")).unwrap(),
            Deformation::pq_js(s("3/4"), s("1/2")).unwrap(),
        ] {
            let reports = check_all(&d, &BTreeMap::new());
            assert_eq!(reports.len(), 34);
            for r in &reports {
                if r.identity == "ROTHE_2" {
                    // series domain |eps2| > |eps1| does not hold here
                    assert_eq!(r.status, CheckStatus::Skipped, "{d}");
                } else {
                    assert_eq!(r.status, CheckStatus::Pass, "{} under {d}", r.identity);
                }
            }
            let summary = AuditSummary::of(&reports);
            assert_eq!(summary.fail, 0);
            assert_eq!(summary.pass, 33);
            assert_eq!(summary.skipped, 1);
        }
    }

    #[test]
    fn check_all_quesne_statuses() {
        let d = Deformation::quesne(s("3/4"), s("1/2")).unwrap();
        let reports = check_all(&d, &BTreeMap::new());
        let summary = AuditSummary::of(&reports);
        assert_eq!(summary.fail, 0);
        for r in &reports {
            let expected = match r.identity.as_str() {
                "POWER_DIFF" => CheckStatus::PassWithUnitCorrection,
                // |eps2| > |eps1| here, so the two |eps2|<|eps1| series skip
                "NEG_BINOMIAL_SERIES" | "ROTHE_1" => CheckStatus::Skipped,
                _ => CheckStatus::Pass,
            };
            assert_eq!(r.status, expected, "{}", r.identity);
        }
    }

    #[test]
    fn check_all_honors_grid_overrides() {
        let d = q_half();
        let mut grids = BTreeMap::new();
        grids.insert(IdentityId::Ortho1, Grid::new().with_range("n", 0, 2));
        let reports = check_all(&d, &grids);
        let ortho = reports.iter().find(|r| r.identity == "ORTHO_1").unwrap();
        assert_eq!(ortho.cells, 6);
        // an unevaluable override must not abort the rest of the registry
        grids.insert(IdentityId::NegRatio1, Grid::new().with_range("u", -1, 0));
        let reports = check_all(&d, &grids);
        assert_eq!(reports.len(), 34);
        let ndv = reports.iter().find(|r| r.identity == "NEG_RATIO_1").unwrap();
        assert_eq!(ndv.status, CheckStatus::Skipped);
        assert!(ndv.notes.as_deref().unwrap().contains("not evaluable"));
    }

    #[test]
    fn ratio_id_2_skips_vanishing_denominator_cells() {
        // default x range 1..=12 includes x <= n cells where 1/[x-1 over n]
        // is undefined; those count as skipped, the rest must pass
        let r = check_identity(IdentityId::RatioId2, &q_half(), &Grid::new()).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
        assert!(r.skipped > 0);
        assert!(r.cells > 0);
    }
}
