//! Series checkers: the three registry entries that sum an infinite series.
//!
//! Partial sums are accumulated exactly; only the final relative-error
//! comparison against the grid tolerance converts to a verdict. Each entry
//! converges only on one side of `|eps2| = |eps1|`; under a deformation on
//! the other side the report is `skipped`, because there the partial sums
//! approach the wrong value or none at all.

use crate::deformation::Deformation;
use crate::report::CheckReport;
use crate::scalar::{c2, Scalar};

use super::{Grid, IdentityId};

pub(super) fn check(id: IdentityId, d: &Deformation, g: &Grid, rep: &mut CheckReport) {
    let needs_small_eps2 = !matches!(id, IdentityId::Rothe2);
    let (e1a, e2a) = (d.eps1.abs(), d.eps2.abs());
    let in_domain = if needs_small_eps2 { e2a < e1a } else { e2a > e1a };
    if !in_domain {
        let rel = if needs_small_eps2 { "<" } else { ">" };
        rep.mark_skipped(format!(
            "series converges only for |eps2| {rel} |eps1|; \
             this deformation has |eps1| = {e1a}, |eps2| = {e2a}"
        ));
        return;
    }
    if g.samples.is_empty() {
        rep.mark_skipped("no sample points configured");
        return;
    }
    let (n0, n1) = g.range("n").expect("merged grid carries the n range");
    let mut worst: Option<Scalar> = None;
    for n in n0.max(1)..=n1 {
        for x in &g.samples {
            let sides = match id {
                IdentityId::NegBinomialSeries => reciprocal_product_series(d, n, x, g.horizon),
                IdentityId::Rothe1 => product_series(d, n, x, g.horizon),
                IdentityId::Rothe2 => scaled_product_series(d, n, x, g.horizon),
                _ => unreachable!("exact entries use the exact path"),
            };
            let Some((lhs, sum)) = sides else {
                rep.record_skip(); // a sampled point zeroed a denominator
                continue;
            };
            let err = if lhs.is_zero() {
                sum.abs()
            } else {
                ((&lhs - &sum) / &lhs).abs()
            };
            let pass = err <= g.tolerance;
            rep.check_cell(
                [("n", n.to_string()), ("x", x.to_string())],
                &lhs.decimal(),
                &sum.decimal(),
                pass,
            );
            if worst.as_ref().map_or(true, |w| err > *w) {
                worst = Some(err);
            }
        }
    }
    if let Some(w) = worst {
        rep.observe(format!(
            "largest relative error {} after {} terms",
            w.decimal(),
            g.horizon + 1
        ));
    }
}

/// Running `[n+k-1 over k]` along `k = 0, 1, 2, ...`, updated in O(1) big
/// operations per step so a horizon-length sum stays linear in the horizon.
struct RunningBinomial<'a> {
    d: &'a Deformation,
    n: i64,
    k: i64,
    value: Scalar,
}

impl<'a> RunningBinomial<'a> {
    fn new(d: &'a Deformation, n: i64) -> Self {
        RunningBinomial { d, n, k: 0, value: Scalar::one() }
    }

    /// Advances from `[n+k-1 over k]` to `[n+k over k+1]`.
    fn step(&mut self) {
        self.value *= self.d.number(self.n + self.k) / self.d.number(self.k + 1);
        self.k += 1;
    }
}

/// `prod_{r=1..n} (eps1^(r-1) - x eps2^(r-1))^(-1)`
/// `  = sum_k eps1^(-C(n,2)) eps1^(-k(n-1)) [n+k-1 over k] x^k`.
fn reciprocal_product_series(
    d: &Deformation,
    n: i64,
    x: &Scalar,
    horizon: usize,
) -> Option<(Scalar, Scalar)> {
    let mut lhs = Scalar::one();
    for r in 1..=n {
        let factor = d.eps1.powi(r - 1) - x * &d.eps2.powi(r - 1);
        if factor.is_zero() {
            return None;
        }
        lhs /= factor;
    }
    let mut binom = RunningBinomial::new(d, n);
    let ratio = d.eps1.powi(-(n - 1)) * x; // per-term growth factor
    let mut geom = d.eps1.powi(-c2(n));
    let mut sum = Scalar::zero();
    for _ in 0..=horizon {
        sum += &binom.value * &geom;
        binom.step();
        geom *= &ratio;
    }
    Some((lhs, sum))
}

/// `prod_{i=1..n} (eps1^(i-1) + x eps2^(i-1))`
/// `  = sum_k eps1^(C(n,2)) [n+k-1 over k] x^k eps1^k eps2^(C(k,2))`
/// `    / prod_{i=1..k} (eps1^(n+i-1) + x eps2^(n+i-1))`.
fn product_series(d: &Deformation, n: i64, x: &Scalar, horizon: usize) -> Option<(Scalar, Scalar)> {
    let mut lhs = Scalar::one();
    for i in 1..=n {
        lhs *= d.eps1.powi(i - 1) + x * &d.eps2.powi(i - 1);
    }
    let mut binom = RunningBinomial::new(d, n);
    let mut numer = d.eps1.powi(c2(n)); // carries x^k eps1^k eps2^(C(k,2))
    let mut den = Scalar::one();
    let mut sum = Scalar::zero();
    for k in 0..=horizon as i64 {
        if k > 0 {
            let factor = d.eps1.powi(n + k - 1) + x * &d.eps2.powi(n + k - 1);
            if factor.is_zero() {
                return None;
            }
            den *= factor;
            numer *= x * &d.eps1 * d.eps2.powi(k - 1); // C(k,2)-C(k-1,2) = k-1
        }
        sum += &binom.value * &numer / &den;
        binom.step();
    }
    Some((lhs, sum))
}

/// The same product scaled by `x^(-n) eps2^(-C(n,2))`, whose expansion
/// converges on the opposite domain `|eps2| > |eps1|`:
///
/// `prod_{i=1..n} (eps1^(i-1) + x eps2^(i-1)) / (x^n eps2^(C(n,2)))`
/// `  = sum_k [n+k-1 over k] eps2^k eps1^(C(k,2))`
/// `    / prod_{i=1..k} (eps1^(n+i-1) + x eps2^(n+i-1))`.
fn scaled_product_series(
    d: &Deformation,
    n: i64,
    x: &Scalar,
    horizon: usize,
) -> Option<(Scalar, Scalar)> {
    if x.is_zero() {
        return None;
    }
    let mut lhs = Scalar::one();
    for i in 1..=n {
        lhs *= d.eps1.powi(i - 1) + x * &d.eps2.powi(i - 1);
    }
    lhs /= x.powi(n) * d.eps2.powi(c2(n));
    let mut binom = RunningBinomial::new(d, n);
    let mut numer = Scalar::one(); // carries eps2^k eps1^(C(k,2))
    let mut den = Scalar::one();
    let mut sum = Scalar::zero();
    for k in 0..=horizon as i64 {
        if k > 0 {
            let factor = d.eps1.powi(n + k - 1) + x * &d.eps2.powi(n + k - 1);
            if factor.is_zero() {
                return None;
            }
            den *= factor;
            numer *= &d.eps2 * &d.eps1.powi(k - 1);
        }
        sum += &binom.value * &numer / &den;
        binom.step();
    }
    Some((lhs, sum))
}
