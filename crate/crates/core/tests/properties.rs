use num_complex::Complex;
use proptest::prelude::*;

use lambertq::arith::{
    build_table, dirichlet_convolve, mobius_invert, ArithTable, FunctionId, Growth,
};
use lambertq::identities::{catalog, tol_slack, verify, IdentityReport, RecordKind};
use lambertq::numerics::{richardson_extrapolate, Mpf, Real};
use lambertq::qseries::{q_binomial_check, triple_product, EvalConfig, SeriesValue};

fn table(values: Vec<i128>) -> ArithTable<f64> {
    ArithTable::from_integers(
        FunctionId::Custom("t".into()),
        values,
        Growth::new(1e6, 0.0),
    )
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn series_ids() -> Vec<String> {
    catalog()
        .iter()
        .filter(|r| matches!(r.kind, RecordKind::Series { .. }))
        .map(|r| r.id.clone())
        .collect()
}

fn agree(a: &SeriesValue<f64>, b: &SeriesValue<f64>) -> bool {
    (a.value - b.value).norm() <= a.err_bound + b.err_bound + tol_slack(&a.value, &b.value)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mobius_inversion_round_trip(values in prop::collection::vec(-1000i128..1000, 1..80)) {
        let f = table(values.clone());
        let one = build_table::<f64>(&FunctionId::One, values.len()).unwrap();
        let back = mobius_invert(&dirichlet_convolve(&one, &f).unwrap()).unwrap();
        prop_assert_eq!(back.integers().unwrap(), values);
    }

    #[test]
    fn convolution_commutes(
        a in prop::collection::vec(-50i128..50, 40),
        b in prop::collection::vec(-50i128..50, 40),
    ) {
        let (a, b) = (table(a), table(b));
        let ab = dirichlet_convolve(&a, &b).unwrap().integers().unwrap();
        let ba = dirichlet_convolve(&b, &a).unwrap().integers().unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn multiplicative_functions(a in 1u64..300, b in 1u64..300) {
        prop_assume!(gcd(a, b) == 1);
        for id in ["mobius", "totient", "sigma:1", "jordan:2", "divisor_d", "liouville", "two_pow_omega"] {
            let t = build_table::<f64>(&id.parse().unwrap(), (a * b) as usize).unwrap().integers().unwrap();
            let v = |n: u64| t[n as usize - 1];
            prop_assert_eq!(v(a * b), v(a) * v(b), "{}", id);
        }
    }

    #[test]
    fn richardson_is_exact_on_polynomials(coef in prop::collection::vec(-5.0f64..5.0, 1..6)) {
        let xs: Vec<f64> = (0..coef.len() + 2).map(|j| 0.5f64.powi(j as i32 + 1)).collect();
        let p = |x: f64| coef.iter().rev().fold(0.0, |acc, c| acc * x + c);
        let ys: Vec<f64> = xs.iter().map(|&x| p(x)).collect();
        let (est, _) = richardson_extrapolate(&xs, &ys).unwrap();
        prop_assert!((est - coef[0]).abs() < 1e-9);
    }

    #[test]
    fn triple_product_balances(q in 0.05f64..0.8, r in 0.3f64..2.5, arg in -3.0f64..3.0) {
        let z = Complex::from_polar(r, arg);
        let (l, rhs) = triple_product(&z, &q, &EvalConfig::with_tol(1e-13)).unwrap();
        prop_assert!(agree(&l, &rhs), "{:?} {:?}", l, rhs);
    }

    #[test]
    fn q_binomial_balances(q in 0.05f64..0.8, a_re in -2.0f64..2.0, a_im in -2.0f64..2.0, r in 0.0f64..0.9, arg in -3.0f64..3.0) {
        let (l, rhs) = q_binomial_check(&Complex::new(a_re, a_im), &Complex::from_polar(r, arg), &q, &EvalConfig::with_tol(1e-13)).unwrap();
        prop_assert!(agree(&l, &rhs), "{:?} {:?}", l, rhs);
    }
}

fn mp_point(q: f64, zr: f64, zi: f64) -> (Mpf, Complex<Mpf>) {
    (Mpf::lit(q), Complex::new(Mpf::lit(zr), Mpf::lit(zi)))
}

fn budget(r: &IdentityReport) -> f64 {
    r.error_budget.parse::<f64>().unwrap() + r.tol_slack.parse::<f64>().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Every catalog identity holds away from the default grid.
    #[test]
    fn identities_hold_at_random_points(
        idx in 0usize..1000,
        q in 0.05f64..0.75,
        zr in 0.3f64..2.5,
        zi in -1.0f64..1.0,
    ) {
        let ids = series_ids();
        let id = &ids[idx % ids.len()];
        let (q, z) = mp_point(q, zr, zi);
        for r in verify(id, &q, &z, &EvalConfig::default()).unwrap() {
            prop_assert!(r.pass, "{:?}", r);
        }
    }

    /// Values at two tolerances agree within the looser budget.
    #[test]
    fn verify_is_coherent_across_tolerances(idx in 0usize..1000, q in 0.05f64..0.7, zr in 0.5f64..2.0) {
        let ids = series_ids();
        let id = &ids[idx % ids.len()];
        let (q, z) = mp_point(q, zr, 0.0);
        let loose = verify(id, &q, &z, &EvalConfig::with_tol(Mpf::lit(1e-15))).unwrap();
        let tight = verify(id, &q, &z, &EvalConfig::with_tol(Mpf::lit(1e-25))).unwrap();
        for (a, b) in loose.iter().zip(&tight) {
            prop_assert!(a.pass && b.pass);
            if a.lhs_value.ends_with('i') || b.lhs_value.ends_with('i') {
                continue;
            }
            let diff = (a.lhs_value.parse::<f64>().unwrap() - b.lhs_value.parse::<f64>().unwrap()).abs();
            prop_assert!(diff <= budget(a) + budget(b), "{:?} {:?}", a, b);
        }
    }

    #[test]
    fn reports_round_trip_json(idx in 0usize..1000, q in 0.1f64..0.6) {
        let ids = series_ids();
        let id = &ids[idx % ids.len()];
        let (q, z) = mp_point(q, 1.0, 0.0);
        let reports = verify(id, &q, &z, &EvalConfig::default()).unwrap();
        let text = serde_json::to_string(&reports).unwrap();
        let back: Vec<IdentityReport> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, reports);
    }
}
