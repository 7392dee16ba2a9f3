use loghankel::functionals::{
    determinant, gamma_from_taylor, h21_log_closed_form, hankel, hankel_log, hankel_taylor, log_coefficients, EntryKind,
    HankelSpec,
};
use loghankel::scalar::rat;
use loghankel::series::TruncatedSeries;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn ratio() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=12).prop_map(|(p, q)| rat(p, q))
}

/// Normalized `z + a2 z^2 + ... ` with rational coefficients.
fn normalized(order: usize) -> impl Strategy<Value = TruncatedSeries<BigRational>> {
    prop::collection::vec(ratio(), order - 1).prop_map(|tail| {
        let mut coeffs = vec![rat(0, 1), rat(1, 1)];
        coeffs.extend(tail);
        TruncatedSeries::new(coeffs).unwrap()
    })
}

/// Leibniz expansion over all permutations; the oracle for small matrices.
fn leibniz(m: &[Vec<BigRational>]) -> BigRational {
    fn walk(m: &[Vec<BigRational>], row: usize, used: &mut Vec<bool>, sign: i64, acc: BigRational, out: &mut BigRational) {
        if row == m.len() {
            *out += acc * rat(sign, 1);
            return;
        }
        for col in 0..m.len() {
            if used[col] {
                continue;
            }
            // each unused column to the left of `col` is one inversion
            let inversions = used[..col].iter().filter(|u| !**u).count() as i64;
            used[col] = true;
            let s = if inversions % 2 == 0 { sign } else { -sign };
            walk(m, row + 1, used, s, acc.clone() * m[row][col].clone(), out);
            used[col] = false;
        }
    }
    let mut out = BigRational::zero();
    walk(m, 0, &mut vec![false; m.len()], 1, rat(1, 1), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn gammas_match_closed_form(f in normalized(6)) {
        let g = log_coefficients(&f, 3).unwrap();
        let closed = gamma_from_taylor(f.coeff(2), f.coeff(3), f.coeff(4));
        prop_assert_eq!(g.as_slice(), &closed[..]);
    }

    #[test]
    fn h21_matches_closed_form(f in normalized(4)) {
        let direct = log_coefficients(&f, 3).unwrap().h21().unwrap();
        let closed = h21_log_closed_form(f.coeff(2), f.coeff(3), f.coeff(4));
        prop_assert_eq!(&direct, &closed);
        let spec = HankelSpec::new(2, 1, EntryKind::Logarithmic).unwrap();
        prop_assert_eq!(hankel_log(&f, &spec).unwrap(), closed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_matches_leibniz(
        m in (1usize..=4).prop_flat_map(|q| prop::collection::vec(prop::collection::vec(ratio(), q), q))
    ) {
        prop_assert_eq!(determinant(m.clone()), leibniz(&m));
    }

    #[test]
    fn hankel_entries_follow_the_sequence(f in normalized(10), q in 1usize..=3, n in 1usize..=3) {
        let spec = HankelSpec::new(q, n, EntryKind::Taylor).unwrap();
        let matrix: Vec<Vec<BigRational>> =
            (0..q).map(|i| (0..q).map(|j| f.coeff(n + i + j).clone()).collect()).collect();
        prop_assert_eq!(hankel_taylor(&f, &spec).unwrap(), leibniz(&matrix));
        prop_assert_eq!(hankel(&f, &spec).unwrap(), leibniz(&matrix));

        let log_spec = HankelSpec::new(q, n, EntryKind::Logarithmic).unwrap();
        let g = log_coefficients(&f, log_spec.max_index()).unwrap();
        let matrix: Vec<Vec<BigRational>> =
            (0..q).map(|i| (0..q).map(|j| g.gamma(n + i + j).clone()).collect()).collect();
        prop_assert_eq!(hankel(&f, &log_spec).unwrap(), leibniz(&matrix));
    }

    #[test]
    fn float_determinant_tracks_exact(
        m in (1usize..=4).prop_flat_map(|q| prop::collection::vec(prop::collection::vec(ratio(), q), q))
    ) {
        use num_traits::ToPrimitive;
        let exact = determinant(m.clone()).to_f64().unwrap();
        let float: Vec<Vec<num_complex::Complex64>> = m
            .iter()
            .map(|row| row.iter().map(|x| num_complex::Complex64::new(x.to_f64().unwrap(), 0.0)).collect())
            .collect();
        let approx = determinant(float);
        prop_assert!((approx.re - exact).abs() <= 1e-9 * exact.abs().max(1.0));
        prop_assert!(approx.im.abs() <= 1e-9);
    }
}

#[test]
fn truncation_limits_are_enforced() {
    let f = TruncatedSeries::<BigRational>::from_integers(&[0, 1, 2, 3]).unwrap();
    assert!(log_coefficients(&f, 2).is_ok());
    assert!(log_coefficients(&f, 3).is_err());
    let spec = HankelSpec::new(2, 2, EntryKind::Taylor).unwrap();
    assert!(hankel_taylor(&f, &spec).is_err());
    assert!(hankel_log(&f, &spec).is_err());
}
