//! Extremal-point polynomials, the product formulas for T_n, the Pell
//! check, and the even-degree composition T_n = 2T_{n/2}² − 1.

use super::roots::roots_of;
use super::{
    all_exact, points_to_k, Coeff, EndpointTuple, ModePoly, Origin, RoleAssignment, TnTupleSolution,
    TupleError,
};
use crate::algebra::{GaussRat, Mode, Poly, Scalar};
use crate::newton::{power_sums, recover_v_polynomial, Parity, SystemShape, Variant};
use num_complex::Complex64;

fn m_of(n: usize) -> usize {
    match Parity::of(n) {
        Parity::Odd => (n - 1) / 2,
        Parity::Even => (n - 2) / 2,
    }
}

/// Expected (|xs|, |ys|) for a directly built solution.
fn point_counts(n: usize) -> (usize, usize) {
    let m = m_of(n);
    match Parity::of(n) {
        Parity::Odd => (m, m - 1),
        Parity::Even => (m, m),
    }
}

fn side_polynomial<K: Coeff>(n: usize, variant: Variant, e: &[K; 4]) -> Result<Poly<K>, TupleError> {
    let shape = SystemShape::new(n, variant)?;
    let s = power_sums(variant, e, shape.order())?;
    Ok(recover_v_polynomial(&s, shape.nu, shape.mu)?)
}

/// Monic polynomial whose zeros are the points where T_n = +1 inside the
/// arcs.
pub fn extremal_x_polynomial<K: Coeff>(n: usize, e: &[K; 4]) -> Result<Poly<K>, TupleError> {
    let v = match Parity::of(n) {
        Parity::Odd => Variant::OddX,
        Parity::Even => Variant::EvenX,
    };
    side_polynomial(n, v, e)
}

/// Monic polynomial whose zeros are the points where T_n = −1 inside the
/// arcs.
pub fn extremal_y_polynomial<K: Coeff>(n: usize, e: &[K; 4]) -> Result<Poly<K>, TupleError> {
    let v = match Parity::of(n) {
        Parity::Odd => Variant::OddY,
        Parity::Even => Variant::EvenY,
    };
    side_polynomial(n, v, e)
}

/// (X, Y): the x- and y-polynomials.
pub fn extremal_polynomials<K: Coeff>(n: usize, e: &[K; 4]) -> Result<(Poly<K>, Poly<K>), TupleError> {
    Ok((extremal_x_polynomial(n, e)?, extremal_y_polynomial(n, e)?))
}

fn lin<K: Coeff>(r: &K) -> Poly<K> {
    Poly::linear_root(r)
}

/// H(z) = (z−a)(z−b)(z−c)(z−d).
pub fn h_polynomial<K: Coeff>(e: &[K; 4]) -> Poly<K> {
    Poly::from_roots(e)
}

/// T² − H·U² − 1.
pub fn pell_residual<K: Coeff>(t: &Poly<K>, u: &Poly<K>, e: &[K; 4]) -> Poly<K> {
    let h = h_polynomial(e);
    &(&(t * t) - &(&h * &(u * u))) - &Poly::one()
}

fn close<K: Coeff>(p: &Poly<K>, q: &Poly<K>, tol: f64, scale: f64) -> Result<(), TupleError> {
    if K::is_exact() {
        return if p == q { Ok(()) } else { Err(TupleError::RepresentationMismatch(f64::NAN)) };
    }
    let diff = (p - q).max_coeff_norm();
    if diff <= tol * scale {
        Ok(())
    } else {
        Err(TupleError::RepresentationMismatch(diff))
    }
}

fn checked_inv<K: Coeff>(v: K, what: &'static str) -> Result<K, TupleError> {
    v.inv().ok_or(TupleError::ZeroDenominator(what))
}

/// T_n from both product representations (checked against each other),
/// and U_{n−2} = lc(T_n)·X·Y.
pub fn build_tn<K: Coeff>(
    n: usize,
    e: &[K; 4],
    x: &Poly<K>,
    y: &Poly<K>,
    tol: f64,
) -> Result<(Poly<K>, Poly<K>), TupleError> {
    let [a, b, c, d] = e.clone();
    let two = K::from_i64(2);
    let x2 = x * x;
    let y2 = y * y;
    let (t1, t2) = match Parity::of(n) {
        Parity::Odd => {
            let xa = x.eval(&a);
            let den1 = (a.clone() - d.clone()) * xa.clone() * xa;
            let f1 = two.clone() * checked_inv(den1, "(a−d)·X(a)²")?;
            let t1 = &Poly::one() - &(&lin(&d) * &x2).scale(&f1);
            let yd = y.eval(&d);
            let den2 = (d.clone() - a.clone()) * (d.clone() - b.clone()) * (d.clone() - c.clone()) * yd.clone() * yd;
            let f2 = two * checked_inv(den2, "(d−a)(d−b)(d−c)·Y(d)²")?;
            let t2 = &(&Poly::from_roots(&[a, b, c]) * &y2).scale(&f2) - &Poly::one();
            (t1, t2)
        }
        Parity::Even => {
            let xa = x.eval(&a);
            let den1 = (a.clone() - c.clone()) * (a.clone() - d.clone()) * xa.clone() * xa;
            let f1 = two.clone() * checked_inv(den1, "(a−c)(a−d)·X(a)²")?;
            let t1 = &Poly::one() - &(&Poly::from_roots(&[c.clone(), d]) * &x2).scale(&f1);
            let yc = y.eval(&c);
            let den2 = (c.clone() - a.clone()) * (c.clone() - b.clone()) * yc.clone() * yc;
            let f2 = two * checked_inv(den2, "(c−a)(c−b)·Y(c)²")?;
            let t2 = &(&Poly::from_roots(&[a, b]) * &y2).scale(&f2) - &Poly::one();
            (t1, t2)
        }
    };
    let scale = t1.max_coeff_norm().max(1.0);
    close(&t1, &t2, tol, scale * scale)?;
    let lc = t1.leading().cloned().unwrap_or_else(K::zero);
    let u = (x * y).scale(&lc);
    Ok((t1, u))
}

/// [`build_tn`] from the extremal points themselves.
pub fn build_tn_from_roots<K: Coeff>(
    n: usize,
    e: &[K; 4],
    xs: &[K],
    ys: &[K],
    tol: f64,
) -> Result<(Poly<K>, Poly<K>), TupleError> {
    let (nx, ny) = point_counts(n);
    if xs.len() != nx {
        return Err(TupleError::PointCount { expected: nx, got: xs.len() });
    }
    if ys.len() != ny {
        return Err(TupleError::PointCount { expected: ny, got: ys.len() });
    }
    build_tn(n, e, &Poly::from_roots(xs), &Poly::from_roots(ys), tol)
}

/// Checks the Pell equation; returns the residual's coefficient norm.
fn pell_check<K: Coeff>(t: &Poly<K>, u: &Poly<K>, e: &[K; 4], tol: f64) -> Result<f64, TupleError> {
    let r = pell_residual(t, u, e);
    if K::is_exact() {
        return if r.is_zero() { Ok(0.0) } else { Err(TupleError::PellFailure(r.max_coeff_norm())) };
    }
    let norm = r.max_coeff_norm();
    let scale = t.max_coeff_norm().max(1.0);
    if norm <= tol * scale * scale {
        Ok(norm)
    } else {
        Err(TupleError::PellFailure(norm))
    }
}

fn run<K: Coeff>(n: usize, points: &[Scalar; 4], tol: f64) -> Result<TnTupleSolution, TupleError> {
    let e: [K; 4] = points_to_k(points)?;
    let (x, y) = extremal_polynomials(n, &e)?;
    let (t, u) = build_tn(n, &e, &x, &y, tol)?;
    let residual = pell_check(&t, &u, &e, tol)?;
    Ok(TnTupleSolution {
        n,
        tuple: EndpointTuple::for_degree(n, points.clone()),
        xs: roots_of(&x),
        ys: roots_of(&y),
        t: ModePoly::from_poly(&t),
        u: ModePoly::from_poly(&u),
        pell_residual_norm: residual,
        origin: Origin::Direct,
        mode: K::MODE,
    })
}

/// Full pipeline for a complete tuple in slot order: extremal points,
/// T_n, U_{n−2}, and Pell validation. Exact iff all four points are.
pub fn solve_tuple(n: usize, points: &[Scalar; 4], tol: f64) -> Result<TnTupleSolution, TupleError> {
    if n < 2 {
        return Err(TupleError::UnsupportedDegree(n));
    }
    if all_exact(points) {
        run::<GaussRat>(n, points, tol)
    } else {
        run::<Complex64>(n, points, tol)
    }
}

/// (2T² − 1, 2TU) from a half-degree pair, which must itself satisfy the
/// Pell equation over the tuple.
pub fn compose_double<K: Coeff>(
    t_half: &Poly<K>,
    u_half: &Poly<K>,
    e: &[K; 4],
    tol: f64,
) -> Result<(Poly<K>, Poly<K>), TupleError> {
    pell_check(t_half, u_half, e, tol).map_err(|_| TupleError::HalfPairInvalid)?;
    let two = K::from_i64(2);
    let t = &(t_half * t_half).scale(&two) - &Poly::one();
    let u = (t_half * u_half).scale(&two);
    pell_check(&t, &u, e, tol)?;
    Ok((t, u))
}

fn double_run<K: Coeff>(half: &TnTupleSolution, th: Poly<K>, uh: Poly<K>, tol: f64) -> Result<TnTupleSolution, TupleError> {
    let e: [K; 4] = points_to_k(&half.tuple.points)?;
    let (t, u) = compose_double(&th, &uh, &e, tol)?;
    let residual = pell_check(&t, &u, &e, tol)?;
    // T_n = +1 where T_{n/2} = ±1, and T_n = −1 at the zeros of T_{n/2}.
    let mut xs: Vec<Scalar> = half.xs.iter().chain(&half.ys).cloned().collect();
    xs.sort_by(|p, q| p.lex_cmp(q));
    Ok(TnTupleSolution {
        n: 2 * half.n,
        tuple: EndpointTuple::new(half.tuple.points.clone(), RoleAssignment::all_plus()),
        xs,
        ys: roots_of(&th),
        t: ModePoly::from_poly(&t),
        u: ModePoly::from_poly(&u),
        pell_residual_norm: residual,
        origin: Origin::Doubled,
        mode: K::MODE,
    })
}

/// The degree-2n solution obtained by composing a validated solution.
pub fn double_solution(half: &TnTupleSolution, tol: f64) -> Result<TnTupleSolution, TupleError> {
    match (&half.t, &half.u) {
        (ModePoly::Exact(t), ModePoly::Exact(u)) if half.mode == Mode::Exact => {
            double_run::<GaussRat>(half, t.clone(), u.clone(), tol)
        }
        _ => double_run::<Complex64>(half, half.t.to_c64(), half.u.to_c64(), tol),
    }
}

/// Slot orderings of four points to try at degree h.
fn arrangements(h: usize) -> Vec<[usize; 4]> {
    match Parity::of(h) {
        // Any point may carry the +1 role.
        Parity::Odd => vec![[1, 2, 3, 0], [0, 2, 3, 1], [0, 1, 3, 2], [0, 1, 2, 3]],
        // Point 0 is a minus point; pick its partner.
        Parity::Even => vec![[0, 1, 2, 3], [0, 2, 1, 3], [0, 3, 1, 2]],
    }
}

/// Whether the four points also form a T_{n/2}-tuple, trying every role
/// assignment at degree n/2. Returns the first validated half-degree
/// solution.
pub fn is_half_degree_tuple(n: usize, points: &[Scalar; 4], tol: f64) -> Result<Option<TnTupleSolution>, TupleError> {
    if n % 2 == 1 {
        return Err(TupleError::UnsupportedDegree(n));
    }
    let h = n / 2;
    if h < 2 {
        return Ok(None);
    }
    for order in arrangements(h) {
        let arranged = order.map(|i| points[i].clone());
        if let Ok(sol) = solve_tuple(h, &arranged, tol) {
            return Ok(Some(sol));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::Classification;
    use crate::algebra::Ring;

    fn s(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    fn pts(v: [&str; 4]) -> [Scalar; 4] {
        v.map(s)
    }

    fn qs(v: [&str; 4]) -> [GaussRat; 4] {
        v.map(|t| t.parse().unwrap())
    }

    fn exact_t(sol: &TnTupleSolution) -> Poly<GaussRat> {
        match &sol.t {
            ModePoly::Exact(p) => p.clone(),
            _ => panic!("expected exact"),
        }
    }

    fn exact_u(sol: &TnTupleSolution) -> Poly<GaussRat> {
        match &sol.u {
            ModePoly::Exact(p) => p.clone(),
            _ => panic!("expected exact"),
        }
    }

    #[test]
    fn chebyshev_t3() {
        let sol = solve_tuple(3, &pts(["-1", "1/2", "1/2", "1"]), 1e-9).unwrap();
        assert_eq!(exact_t(&sol), Poly::from_ints(&[0, -3, 0, 4]));
        assert_eq!(exact_u(&sol), Poly::from_ints(&[2, 4]));
        assert_eq!(sol.xs, vec![s("-1/2")]);
        assert!(sol.ys.is_empty());
        assert!(sol.tuple.degenerate);
        assert_eq!(sol.pell_residual_norm, 0.0);
    }

    #[test]
    fn extremal_polys_for_t3() {
        let e = qs(["-1", "1/2", "1/2", "1"]);
        let x = extremal_x_polynomial(3, &e).unwrap();
        assert_eq!(x, Poly::new(vec![GaussRat::from_ratio(1, 2), GaussRat::from_i64(1)]));
        assert_eq!(extremal_y_polynomial(3, &e).unwrap(), Poly::one());
        let e = qs(["0", "0", "-1", "1"]);
        assert_eq!(extremal_x_polynomial(2, &e).unwrap(), Poly::one());
        assert_eq!(extremal_y_polynomial(2, &e).unwrap(), Poly::one());
    }

    #[test]
    fn chebyshev_t2_and_two_intervals() {
        let sol = solve_tuple(2, &pts(["0", "0", "-1", "1"]), 1e-9).unwrap();
        assert_eq!(exact_t(&sol), Poly::from_ints(&[-1, 0, 2]));
        assert_eq!(exact_u(&sol), Poly::from_ints(&[2]));

        let sol = solve_tuple(2, &pts(["-1/2", "1/2", "-1", "1"]), 1e-9).unwrap();
        let t = exact_t(&sol);
        assert_eq!(t, Poly::new(vec![GaussRat::from_ratio(-5, 3), GaussRat::zero(), GaussRat::from_ratio(8, 3)]));
        assert_eq!(exact_u(&sol), Poly::constant(GaussRat::from_ratio(8, 3)));
        for (z, v) in [("1", 1), ("-1", 1), ("1/2", -1), ("-1/2", -1)] {
            assert_eq!(t.eval(&z.parse().unwrap()), GaussRat::from_i64(v));
        }
    }

    #[test]
    fn build_from_roots_matches() {
        let e = qs(["-1", "1/2", "1/2", "1"]);
        let (t, u) = build_tn_from_roots(3, &e, &[GaussRat::from_ratio(-1, 2)], &[], 0.0).unwrap();
        assert_eq!(t, Poly::from_ints(&[0, -3, 0, 4]));
        assert_eq!(u, Poly::from_ints(&[2, 4]));
        assert!(matches!(
            build_tn_from_roots(3, &e, &[], &[], 0.0),
            Err(TupleError::PointCount { expected: 1, got: 0 })
        ));
        // A wrong extremal point breaks the dual representation.
        assert!(build_tn_from_roots(3, &e, &[GaussRat::from_ratio(1, 3)], &[], 0.0).is_err());
    }

    #[test]
    fn pell_residual_examples() {
        let e = qs(["-1", "1/2", "1/2", "1"]);
        assert!(pell_residual(&Poly::from_ints(&[0, -3, 0, 4]), &Poly::from_ints(&[2, 4]), &e).is_zero());
        let e = qs(["0", "0", "-1", "1"]);
        assert!(pell_residual(&Poly::from_ints(&[-1, 0, 2]), &Poly::from_ints(&[2]), &e).is_zero());
        let e = qs(["1", "2", "3", "4"]);
        assert!(!pell_residual(&Poly::from_ints(&[0, 1]), &Poly::one(), &e).is_zero());
    }

    #[test]
    fn composition() {
        let e = qs(["0", "0", "-1", "1"]);
        let (t, u) = compose_double(&Poly::from_ints(&[-1, 0, 2]), &Poly::from_ints(&[2]), &e, 0.0).unwrap();
        assert_eq!(t, Poly::from_ints(&[1, 0, -8, 0, 8]));
        assert_eq!(u, Poly::from_ints(&[-4, 0, 8]));

        let half = solve_tuple(2, &pts(["-1/2", "1/2", "-1", "1"]), 1e-9).unwrap();
        let full = double_solution(&half, 1e-9).unwrap();
        assert_eq!(full.n, 4);
        assert_eq!(full.t.degree(), Some(4));
        assert_eq!(full.pell_residual_norm, 0.0);
        assert_eq!(full.origin, Origin::Doubled);

        assert!(matches!(
            compose_double(&Poly::z(), &Poly::one(), &e, 0.0),
            Err(TupleError::HalfPairInvalid)
        ));
    }

    #[test]
    fn half_degree_detection() {
        let p = pts(["-1", "-1/2", "1/2", "1"]);
        let half = is_half_degree_tuple(4, &p, 1e-9).unwrap().unwrap();
        assert_eq!(half.n, 2);
        assert!(is_half_degree_tuple(4, &pts(["0", "0", "-1", "1"]), 1e-9).unwrap().is_some());

        // A direct degree-4 solution from random-ish data is not a T_2-tuple.
        let pt = crate::tuples::PartialTuple::new(4, [Some(s("3")), Some(s("1")), None, Some(s("-2"))]).unwrap();
        let cands = crate::tuples::solve_fourth_endpoint(&pt, 1e-9).unwrap();
        let proper: Vec<_> = cands.iter().filter(|c| c.classification == Classification::Proper).collect();
        assert!(!proper.is_empty());
        for c in proper {
            assert!(is_half_degree_tuple(4, &c.tuple.points, 1e-9).unwrap().is_none());
        }
    }
}
