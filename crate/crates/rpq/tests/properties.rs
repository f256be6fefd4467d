//! Randomized laws over the whole deformation family: every case draws a
//! fresh member (built-in or custom) with small exact-rational parameters,
//! so the checks cover the family rather than a fixed grid of kinds.

use std::collections::BTreeSet;

use proptest::prelude::*;

use rpq::graph::{independent_partition_count, independent_partitions, Graph};
use rpq::moments::{
    binomial_moment_vector, decomposed_variance, deformed_mean_variance,
    distribution_from_binomial_moments, factorial_moment_vector, DiscreteDistribution,
};
use rpq::poly::{product_linear_factors, Polynomial, PowerSeries};
use rpq::scalar::c2;
use rpq::{Deformation, Scalar};

/// `0 < q < p <= 1` with one shared small denominator.
fn builtin_params() -> impl Strategy<Value = (Scalar, Scalar)> {
    (2i64..=12).prop_flat_map(|den| {
        (1..den).prop_flat_map(move |qa| {
            ((qa + 1)..=den).prop_map(move |pa| (Scalar::ratio(pa, den), Scalar::ratio(qa, den)))
        })
    })
}

fn nonzero_small() -> impl Strategy<Value = i64> + Clone {
    prop_oneof![-9i64..=-1, 1i64..=9]
}

fn custom_member() -> impl Strategy<Value = Deformation> {
    let nz = nonzero_small();
    (nz.clone(), 1i64..=6, nz.clone(), 1i64..=6, nz, 1i64..=6).prop_filter_map(
        "epsilon magnitudes must differ",
        |(a, b, c, d, e, f)| {
            let eps1 = Scalar::ratio(a, b);
            let eps2 = Scalar::ratio(c, d);
            (eps1.abs() != eps2.abs())
                .then(|| Deformation::custom(eps1, eps2, Scalar::ratio(e, f)).unwrap())
        },
    )
}

fn family() -> impl Strategy<Value = Deformation> {
    prop_oneof![
        builtin_params().prop_map(|(_, q)| Deformation::q(q).unwrap()),
        builtin_params().prop_map(|(p, q)| Deformation::pq_js(p, q).unwrap()),
        builtin_params().prop_map(|(p, q)| Deformation::quesne(p, q).unwrap()),
        custom_member(),
    ]
}

fn distribution() -> impl Strategy<Value = DiscreteDistribution> {
    prop::collection::btree_map(0u32..=8, 1i64..=9, 1..=4).prop_map(|weights| {
        let total: i64 = weights.values().sum();
        let probs = weights
            .into_iter()
            .map(|(x, w)| (x, Scalar::ratio(w, total)))
            .collect();
        DiscreteDistribution::new(probs).unwrap()
    })
}

fn small_graph() -> impl Strategy<Value = Graph> {
    (1usize..=6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (1..=n).flat_map(|a| ((a + 1)..=n).map(move |b| (a, b))).collect();
        let len = pairs.len();
        prop::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let edges = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

/// All set partitions of `1..=n`, blocks canonically ordered by minimum,
/// in restricted-growth enumeration order.
fn all_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn recurse(v: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if v > n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(v);
            recurse(v + 1, n, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![v]);
        recurse(v + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    recurse(1, n, &mut Vec::new(), &mut out);
    out
}

proptest! {
    #[test]
    fn number_fixes_zero_and_one(d in family()) {
        prop_assert_eq!(d.number(0), Scalar::zero());
        prop_assert_eq!(d.number(1), d.unit.clone());
    }

    #[test]
    fn number_split_law(d in family(), u in -6i64..=10, v in -6i64..=10) {
        let split = d.eps1.powi(v) * d.number(u) + d.eps2.powi(u) * d.number(v);
        prop_assert_eq!(d.number(u + v), split);
    }

    #[test]
    fn number_negative_argument(d in family(), n in 0i64..=12) {
        let reflected = -(&d.eps1 * &d.eps2).powi(-n) * d.number(n);
        prop_assert_eq!(d.number(-n), reflected);
    }

    #[test]
    fn ordered_factorial_splits(d in family(), u in 0i64..=10, k in 0i64..=6, s in 0i64..=6) {
        let whole = d.ordered_factorial(u, k + s).unwrap();
        let parts = d.ordered_factorial(u, s).unwrap() * d.ordered_factorial(u - s, k).unwrap();
        prop_assert_eq!(whole, parts);
    }

    #[test]
    fn negative_order_inverts_rising_product(d in family(), x in -9i64..=9, k in 1i64..=4) {
        let result = d.ordered_factorial(x, -k);
        if -k <= x && x <= -1 {
            prop_assert!(result.is_err());
        } else {
            let product = result.unwrap() * d.ordered_factorial(x + k, k).unwrap();
            prop_assert_eq!(product, Scalar::one());
        }
    }

    #[test]
    fn pascal_recursions(d in family(), x in 1i64..=12, k_raw in 0i64..=11) {
        let k = 1 + k_raw % x;
        let lhs = d.binomial(x, k);
        let first = d.eps1.powi(k) * d.binomial(x - 1, k)
            + d.eps2.powi(x - k) * d.binomial(x - 1, k - 1);
        let second = d.eps2.powi(k) * d.binomial(x - 1, k)
            + d.eps1.powi(x - k) * d.binomial(x - 1, k - 1);
        prop_assert_eq!(&lhs, &first);
        prop_assert_eq!(&lhs, &second);
    }

    #[test]
    fn binomial_symmetry(d in family(), n in 0i64..=12, k_raw in 0i64..=12) {
        let k = k_raw % (n + 1);
        prop_assert_eq!(d.binomial(n, k), d.binomial(n, n - k));
    }

    #[test]
    fn binomial_ignores_unit(d in family(), scale_num in 1i64..=9, n in 0i64..=10, k_raw in 0i64..=10) {
        let k = k_raw % (n + 1);
        let rescaled = Deformation::custom(
            d.eps1.clone(),
            d.eps2.clone(),
            &d.unit * &Scalar::ratio(scale_num, 5),
        )
        .unwrap();
        prop_assert_eq!(d.binomial(n, k), rescaled.binomial(n, k));
    }

    #[test]
    fn inverted_and_ratio_binomials(d in family(), u in 0i64..=10, k_raw in 0i64..=10) {
        let k = k_raw % (u + 1);
        let base = d.binomial(u, k);
        let inv = d.inverted().binomial(u, k);
        prop_assert_eq!(inv, (&d.eps1 * &d.eps2).powi(-k * (u - k)) * &base);
        let ratio = d.ratio().binomial(u, k);
        prop_assert_eq!(ratio, d.eps1.powi(-k * (u - k)) * &base);
    }

    #[test]
    fn linear_factors_expand_to_binomials(d in family(), n in 0i64..=9) {
        let poly = product_linear_factors(&d, n);
        for kappa in 0..=n {
            let expected = d.eps1.powi(c2(n - kappa))
                * d.eps2.powi(c2(kappa))
                * d.binomial(n, kappa);
            prop_assert_eq!(poly.coefficient(kappa as usize), expected);
        }
    }

    #[test]
    fn polynomial_eval_is_ring_morphism(
        a in prop::collection::vec((-9i64..=9, 1i64..=9), 1..=6),
        b in prop::collection::vec((-9i64..=9, 1i64..=9), 1..=6),
        x_num in -9i64..=9,
        x_den in 1i64..=9,
    ) {
        let to_poly = |v: &Vec<(i64, i64)>| {
            Polynomial::from_coefficients(v.iter().map(|&(n, d)| Scalar::ratio(n, d)).collect())
        };
        let (p, q) = (to_poly(&a), to_poly(&b));
        let x = Scalar::ratio(x_num, x_den);
        prop_assert_eq!((&p + &q).eval(&x), p.eval(&x) + q.eval(&x));
        prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
    }

    #[test]
    fn series_reciprocal_multiplies_to_one(
        c0_num in prop_oneof![-9i64..=-1, 1i64..=9],
        rest in prop::collection::vec((-9i64..=9, 1i64..=9), 0..=7),
    ) {
        let mut coeffs = vec![Scalar::ratio(c0_num, 3)];
        coeffs.extend(rest.iter().map(|&(n, d)| Scalar::ratio(n, d)));
        let order = coeffs.len() - 1;
        let series = PowerSeries::from_polynomial(&Polynomial::from_coefficients(coeffs), order);
        let recip = series.reciprocal().unwrap();
        prop_assert_eq!(&series * &recip, PowerSeries::one(order));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn independent_partitions_match_filtered_enumeration(g in small_graph()) {
        let n = g.n();
        let every = all_partitions(n);
        let mut total = 0u64;
        for kappa in 0..=n {
            let got = independent_partitions(&g, kappa);
            let expected: Vec<Vec<Vec<usize>>> = every
                .iter()
                .filter(|p| p.len() == kappa)
                .filter(|p| {
                    p.iter().all(|block| {
                        block
                            .iter()
                            .all(|&a| block.iter().all(|&b| a == b || !g.has_edge(a, b)))
                    })
                })
                .cloned()
                .collect();
            let got_blocks: Vec<Vec<Vec<usize>>> =
                got.iter().map(|p| p.blocks().to_vec()).collect();
            prop_assert_eq!(&got_blocks, &expected);

            // canonical form and duplicate freedom
            let mut seen = BTreeSet::new();
            for p in &got_blocks {
                let mut covered = BTreeSet::new();
                for block in p {
                    prop_assert!(!block.is_empty());
                    prop_assert!(block.windows(2).all(|w| w[0] < w[1]));
                    covered.extend(block.iter().copied());
                }
                prop_assert_eq!(covered.len(), n);
                prop_assert!(p.windows(2).all(|w| w[0][0] < w[1][0]));
                let fresh = seen.insert(format!("{p:?}"));
                prop_assert!(fresh);
            }
            total += got_blocks.len() as u64;
        }
        prop_assert_eq!(total, independent_partition_count(&g));
    }

    #[test]
    fn moment_vectors_relate_and_round_trip(d in family(), dist in distribution()) {
        let binomial = binomial_moment_vector(&d, &dist);
        let factorial = factorial_moment_vector(&d, &dist);
        prop_assert_eq!(binomial.len(), factorial.len());
        for r in 0..binomial.len() {
            let scale = d.factorial(r as i64).unwrap();
            prop_assert_eq!(factorial.value(r), scale * binomial.value(r));
        }
        let back = distribution_from_binomial_moments(&d, &binomial).unwrap();
        prop_assert_eq!(back, dist);
    }

    #[test]
    fn variance_decomposition_agrees(d in family(), dist in distribution()) {
        let (_, variance) = deformed_mean_variance(&d, &dist);
        prop_assert_eq!(decomposed_variance(&d, &dist), variance);
    }

    #[test]
    fn dual_path_closed_form_holds_family_wide(d in family(), n in 1usize..=6) {
        use rpq::graph::{dual_path_closed_form, dual_path_graph, graph_stirling_second};
        let g = dual_path_graph(n);
        for kappa in 0..=n {
            let brute = graph_stirling_second(&d, &g, kappa);
            prop_assert_eq!(brute, dual_path_closed_form(&d, n, kappa));
        }
    }
}
