//! Roots of pipeline polynomials: exact Gaussian-rational roots where they
//! exist, approximate ones otherwise.

use num_complex::Complex64;
use num_rational::BigRational;

use crate::algebra::{rationalize_complex, Field, GaussRat, Poly, Ring, Scalar};
use crate::rootfind::{all_roots_balanced, RootError};

/// Numeric roots with multiplicity, taking the best iterate when the
/// iteration stalls (callers validate candidates independently).
pub fn numeric_roots(p: &Poly<Complex64>) -> Vec<(Complex64, usize)> {
    let set = match all_roots_balanced(p, 1e-10, 3000, 0) {
        Ok(s) => s,
        Err(RootError::NotConverged { best, .. }) => best,
        Err(_) => return Vec::new(),
    };
    set.roots.into_iter().map(|r| (r.value, r.multiplicity)).collect()
}

fn close_convergents(conv: Vec<BigRational>, x: f64) -> Vec<BigRational> {
    let mut out: Vec<BigRational> = conv
        .into_iter()
        .rev()
        .filter(|q| {
            let v = GaussRat::real(q.clone()).to_c64().re;
            (v - x).abs() <= 1e-6 * (1.0 + x.abs())
        })
        .take(4)
        .collect();
    if out.is_empty() && x.abs() < 1e-9 {
        out.push(BigRational::from_integer(0.into()));
    }
    out
}

fn snap_rational(p: &Poly<GaussRat>, z: Complex64) -> Option<GaussRat> {
    let (re, im) = rationalize_complex(z, 1_000_000_000);
    for r in close_convergents(re, z.re) {
        for i in close_convergents(im.clone(), z.im) {
            let q = GaussRat::new(r.clone(), i);
            if p.eval(&q).is_zero() {
                return Some(q);
            }
        }
    }
    None
}

/// All roots of an exact polynomial with multiplicity: Gaussian-rational
/// roots exactly (verified by substitution), the rest approximately.
/// Sorted by (re, im).
pub fn exact_roots(p: &Poly<GaussRat>) -> Vec<Scalar> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    let sqf = p.exact_div(&p.gcd(&p.derivative())).unwrap_or_else(|_| p.clone());
    let mut rest = p.clone();
    for (z, _) in numeric_roots(&sqf.to_c64()) {
        if let Some(q) = snap_rational(&sqf, z) {
            let lin = Poly::linear_root(&q);
            while rest.eval(&q).is_zero() {
                rest = rest.exact_div(&lin).expect("verified root divides");
                out.push(Scalar::Exact(q.clone()));
            }
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        for (z, k) in numeric_roots(&rest.to_c64()) {
            out.extend(std::iter::repeat(Scalar::Approx(z)).take(k));
        }
    }
    out.sort_by(|x, y| x.lex_cmp(y));
    out
}

/// Roots of a pipeline polynomial in its own arithmetic.
pub(crate) fn roots_of<K: Field>(p: &Poly<K>) -> Vec<Scalar> {
    if K::is_exact() {
        let exact = Poly::new(p.to_scalars().iter().map(|c| c.as_exact().cloned().unwrap()).collect());
        return exact_roots(&exact);
    }
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out: Vec<Scalar> = numeric_roots(&p.to_c64())
        .into_iter()
        .flat_map(|(z, k)| std::iter::repeat(Scalar::Approx(z)).take(k))
        .collect();
    out.sort_by(|x, y| x.lex_cmp(y));
    out
}
