use loghankel::scalar::rat;
use loghankel::series::TruncatedSeries;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

fn ratio() -> impl Strategy<Value = BigRational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

/// A rational series of the given order with constant term `c0`.
fn series_with(c0: i64, order: usize) -> impl Strategy<Value = TruncatedSeries<BigRational>> {
    prop::collection::vec(ratio(), order).prop_map(move |tail| {
        let mut coeffs = vec![rat(c0, 1)];
        coeffs.extend(tail);
        TruncatedSeries::new(coeffs).unwrap()
    })
}

fn unit_series() -> impl Strategy<Value = TruncatedSeries<BigRational>> {
    (1usize..=30).prop_flat_map(|n| series_with(1, n))
}

fn max_gap(a: &TruncatedSeries<Complex64>, b: &TruncatedSeries<Complex64>) -> f64 {
    a.coeffs().iter().zip(b.coeffs()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_inverts_log(u in unit_series()) {
        let back = u.log_unit().unwrap().exp_zero().unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn log_inverts_exp(v in (1usize..=20).prop_flat_map(|n| series_with(0, n))) {
        let back = v.exp_zero().unwrap().log_unit().unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn reciprocal_is_inverse(u in unit_series(), lead in 1i64..=5) {
        let a = u.scale(&rat(lead, 3)).unwrap();
        let one = TruncatedSeries::one(a.order());
        let inv = one.div(&a).unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), one);
    }

    #[test]
    fn log_turns_products_into_sums(
        (u, v) in (1usize..=16).prop_flat_map(|n| (series_with(1, n), series_with(1, n)))
    ) {
        let lhs = u.mul(&v).unwrap().log_unit().unwrap();
        let rhs = u.log_unit().unwrap().add(&v.log_unit().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn compose_with_identity(f in (1usize..=20).prop_flat_map(|n| series_with(3, n))) {
        let z = TruncatedSeries::variable(f.order());
        prop_assert_eq!(f.compose(&z).unwrap(), f);
    }

    #[test]
    fn compose_is_associative(
        f in series_with(1, 8),
        g in series_with(0, 8),
        h in series_with(0, 8),
    ) {
        let lhs = f.compose(&g.compose(&h).unwrap()).unwrap();
        let rhs = f.compose(&g).unwrap().compose(&h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn float_backend_tracks_exact(u in (1usize..=12).prop_flat_map(|n| series_with(1, n))) {
        let exact = u.log_unit().unwrap().to_float();
        let float = u.to_float().log_unit().unwrap();
        let scale = exact.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
        prop_assert!(max_gap(&exact, &float) <= 1e-12 * scale);

        let exact = u.mul(&u).unwrap().to_float();
        let float = u.to_float().mul(&u.to_float()).unwrap();
        let scale = exact.coeffs().iter().map(|c| c.norm()).fold(1.0, f64::max);
        prop_assert!(max_gap(&exact, &float) <= 1e-12 * scale);
    }

    #[test]
    fn derivative_is_linear(a in series_with(2, 10), b in series_with(-1, 10)) {
        let lhs = a.add(&b).unwrap().derivative().unwrap();
        let rhs = a.derivative().unwrap().add(&b.derivative().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
