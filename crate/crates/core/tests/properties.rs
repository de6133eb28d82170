mod common;

use num_complex::Complex64;
use proptest::prelude::*;

use common::ex;
use twoarc::algebra::{det_field, Field, GaussRat, Matrix, Poly, Ring};
use twoarc::preimage::{chebyshev_grid, sample_preimage};
use twoarc::tuples::{degree_bound, endpoint_polynomial_exact, enumerate_tuples, solve_tuple};
use twoarc::zolotarev::{sigma_threshold, zolotarev};

fn gauss() -> impl Strategy<Value = GaussRat> {
    (-30i64..=30, 1i64..=12, -30i64..=30, 1i64..=12).prop_map(|(a, b, c, d)| GaussRat::from_parts((a, b), (c, d)))
}

fn rational() -> impl Strategy<Value = GaussRat> {
    (-30i64..=30, 1i64..=12).prop_map(|(a, b)| GaussRat::from_ratio(a, b))
}

fn gauss_poly(max_len: usize) -> impl Strategy<Value = Poly<GaussRat>> {
    proptest::collection::vec(gauss(), 0..=max_len).prop_map(Poly::new)
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<GaussRat>]) -> GaussRat {
    let n = m.len();
    if n == 0 {
        return GaussRat::one();
    }
    let mut acc = GaussRat::zero();
    for j in 0..n {
        let minor: Vec<Vec<GaussRat>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = m[0][j].clone() * cofactor_det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<GaussRat>>> {
    (0..=max).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(gauss(), n), n))
}

fn distinct_triple() -> impl Strategy<Value = [GaussRat; 3]> {
    [gauss(), gauss(), gauss()].prop_filter("distinct", |[a, b, c]| a != b && b != c && a != c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws_hold_exactly(a in gauss(), b in gauss(), c in gauss()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
    }

    #[test]
    fn polynomial_ring_laws(p in gauss_poly(5), r in gauss_poly(5), s in gauss_poly(5)) {
        prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
        prop_assert_eq!(&p * &(&r + &s), &(&p * &r) + &(&p * &s));
        // canonical zero: trailing zeros never survive
        let d = &p - &p;
        prop_assert!(d.coeffs().is_empty());
    }

    #[test]
    fn determinant_matches_cofactor_expansion(m in square(5)) {
        let n = m.len();
        let mat = Matrix::from_fn(n, n, |i, j| m[i][j].clone());
        prop_assert_eq!(det_field(&mat).unwrap(), cofactor_det(&m));
    }

    #[test]
    fn divrem_round_trip(p in gauss_poly(9), d in gauss_poly(5)) {
        prop_assume!(!d.is_zero());
        let (quot, rem) = p.divrem(&d).unwrap();
        prop_assert_eq!(&(&d * &quot) + &rem, p);
        prop_assert!(rem.degree().map_or(true, |r| r < d.degree().unwrap()));
    }

    #[test]
    fn exact_interpolation_round_trip(p in gauss_poly(10)) {
        let len = p.coeffs().len().max(1);
        let samples: Vec<(GaussRat, GaussRat)> =
            (0..len as i64).map(|k| GaussRat::from_parts((k - 4, 3), (k % 3, 2))).map(|x| (x.clone(), p.eval(&x))).collect();
        prop_assert_eq!(Poly::interpolate(&samples).unwrap(), p);
    }

    #[test]
    fn approx_interpolation_round_trip(
        coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=31)
    ) {
        let p = Poly::new(coeffs.iter().map(|&(re, im)| Complex64::new(re, im)).collect());
        let len = coeffs.len();
        let samples: Vec<(Complex64, Complex64)> = (0..len)
            .map(|k| Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / len as f64))
            .map(|z| (z, p.eval(&z)))
            .collect();
        let back = Poly::interpolate(&samples).unwrap();
        let m = p.max_coeff_norm();
        for i in 0..len {
            prop_assert!((back.coeff(i) - p.coeff(i)).norm() <= 1e-10 * m, "coefficient {} off", i);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn endpoint_polynomial_is_homogeneous(n in 2usize..=5, [a, b, c] in distinct_triple()) {
        let two = GaussRat::from_ratio(2, 1);
        let p = endpoint_polynomial_exact(n, &[Some(a.clone()), Some(b.clone()), Some(c.clone()), None]).unwrap();
        let scaled = [a, b, c].map(|x| Some(x * two.clone()));
        let pl = endpoint_polynomial_exact(n, &[scaled[0].clone(), scaled[1].clone(), scaled[2].clone(), None]).unwrap();
        prop_assume!(!p.is_zero());
        // p_λ(z) ∝ p(z/λ)
        let shrink = p.compose(&Poly::monomial(two.inv().unwrap(), 1));
        prop_assert_eq!(pl.monic().unwrap(), shrink.monic().unwrap());
    }

    #[test]
    fn endpoint_degree_within_bound(n in 2usize..=6, [a, b, c] in distinct_triple()) {
        let p = endpoint_polynomial_exact(n, &[Some(a), Some(b), Some(c), None]).unwrap();
        prop_assert!(p.degree().map_or(true, |d| d <= degree_bound(n)));
    }

    #[test]
    fn exact_solutions_satisfy_pell(a in gauss(), b in gauss(), c in gauss()) {
        let d = a.clone() + b.clone() - c.clone();
        if let Ok(sol) = solve_tuple(2, &[ex(a), ex(b), ex(c), ex(d)], 1e-12) {
            prop_assert_eq!(sol.pell_residual_norm, 0.0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn enumeration_count_bounds(n in 2usize..=4, [a, b, c] in [rational(), rational(), rational()]) {
        let sols = enumerate_tuples(n, &[ex(a), ex(b), ex(c)], 1e-9).unwrap_or_default();
        let bound = if n % 2 == 1 { n * n - 1 } else { 3 * n * n / 4 };
        prop_assert!(sols.len() <= bound, "{} solutions at n = {}", sols.len(), n);
    }

    #[test]
    fn preimage_points_lie_on_the_image(
        coeffs in proptest::collection::vec(-2.0f64..2.0, 2..=6),
        lead in 0.5f64..2.0,
        seed in any::<u64>(),
    ) {
        let mut c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        c.push(Complex64::new(lead, 0.0));
        let t = Poly::new(c);
        let samples = sample_preimage(&t, 33, 500, seed).unwrap();
        prop_assert_eq!(samples.len(), chebyshev_grid(33).len());
        for s in &samples {
            prop_assert_eq!(s.roots.len(), t.degree().unwrap());
            prop_assert!(s.residual <= 1e-9, "residual {:e} at t = {}", s.residual, s.t);
        }
    }
}

#[test]
fn chebyshev_endpoint_scales() {
    // the n = 3 Chebyshev triple scaled by 3 keeps d = ±3 among the roots
    let p = endpoint_polynomial_exact(3, &[Some(GaussRat::from_ratio(-3, 1)), Some(GaussRat::from_ratio(3, 2)), Some(GaussRat::from_ratio(3, 2)), None]).unwrap();
    let three = GaussRat::from_ratio(3, 1);
    assert!(p.eval(&three).is_zero());
    assert!(p.eval(&-three).is_zero());
}

/// Exploratory: α grows with σ at fixed n.
#[test]
fn zolotarev_alpha_increases_with_sigma() {
    for n in 3usize..=8 {
        let mut prev = f64::NEG_INFINITY;
        for f in [1.1, 1.5, 2.0, 3.0, 4.0, 6.0] {
            let sigma = f * sigma_threshold(n);
            let sol = zolotarev(n, sigma, 1e-10, 100).unwrap();
            assert!(sol.equioscillation.ok, "n = {n}, sigma = {sigma}");
            assert!(sol.alpha > prev, "n = {n}, sigma = {sigma}: alpha {} after {prev}", sol.alpha);
            prev = sol.alpha;
        }
    }
}
