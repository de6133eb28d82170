//! Content normalization over the Gaussian integers and float-to-rational
//! recovery.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::scalar::{GaussRat, Ring};

type GaussInt = (BigInt, BigInt);

fn gi_is_zero(a: &GaussInt) -> bool {
    a.0.is_zero() && a.1.is_zero()
}

fn gi_mul(a: &GaussInt, b: &GaussInt) -> GaussInt {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn gi_sub(a: &GaussInt, b: &GaussInt) -> GaussInt {
    (&a.0 - &b.0, &a.1 - &b.1)
}

/// Nearest integer to num/den, den > 0.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (num * &two + den).div_floor(&(den * &two))
}

/// Quotient rounded to the nearest Gaussian integer.
fn gi_round_quot(a: &GaussInt, b: &GaussInt) -> GaussInt {
    let norm = &b.0 * &b.0 + &b.1 * &b.1;
    let conj = (b.0.clone(), -&b.1);
    let p = gi_mul(a, &conj);
    (round_div(&p.0, &norm), round_div(&p.1, &norm))
}

fn gi_gcd(mut a: GaussInt, mut b: GaussInt) -> GaussInt {
    while !gi_is_zero(&b) {
        let q = gi_round_quot(&a, &b);
        let r = gi_sub(&a, &gi_mul(&q, &b));
        a = b;
        b = r;
    }
    a
}

/// Scales a nonzero exact polynomial to Gaussian-integer coefficients with
/// unit content and a leading coefficient in the half-open first quadrant
/// (`re > 0, im >= 0`), so real polynomials end up with a positive leading
/// coefficient. Returns the polynomial unchanged if it is zero.
pub fn normalize_content(p: &Poly<GaussRat>) -> Poly<GaussRat> {
    if p.is_zero() {
        return p.clone();
    }
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.re().denom()).lcm(c.im().denom());
    }
    let lcm_q = BigRational::from_integer(lcm);
    let ints: Vec<GaussInt> = p
        .coeffs()
        .iter()
        .map(|c| ((c.re() * &lcm_q).to_integer(), (c.im() * &lcm_q).to_integer()))
        .collect();
    let mut g: GaussInt = (BigInt::zero(), BigInt::zero());
    for c in &ints {
        g = gi_gcd(g, c.clone());
    }
    let g_rat = GaussRat::new(BigRational::from_integer(g.0), BigRational::from_integer(g.1));
    let scaled: Vec<GaussRat> = ints
        .into_iter()
        .map(|(re, im)| {
            GaussRat::new(BigRational::from_integer(re), BigRational::from_integer(im)) / g_rat.clone()
        })
        .collect();
    let lc = scaled.last().cloned().expect("nonzero polynomial");
    let units = [
        GaussRat::one(),
        GaussRat::from_parts((0, 1), (1, 1)),
        -GaussRat::one(),
        GaussRat::from_parts((0, 1), (-1, 1)),
    ];
    let unit = units
        .into_iter()
        .find(|u| {
            let v = lc.clone() * u.clone();
            v.re().is_positive() && !v.im().is_negative()
        })
        .expect("some unit rotates into the first quadrant");
    Poly::new(scaled.into_iter().map(|c| c * unit.clone()).collect())
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`,
/// in order of increasing denominator.
pub fn rationalize(x: f64, max_den: u64) -> Vec<BigRational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut frac = x;
    for _ in 0..64 {
        let a = frac.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(BigRational::new(h2.clone(), k2.clone()));
        let rest = frac - a;
        if rest.abs() < 1e-300 {
            break;
        }
        frac = 1.0 / rest;
        if !frac.is_finite() || frac.abs() > 9.0e15 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
    }
    out
}

/// Complex convenience wrapper around [`rationalize`].
pub fn rationalize_complex(
    z: num_complex::Complex64,
    max_den: u64,
) -> (Vec<BigRational>, Vec<BigRational>) {
    let snap = |v: f64| if v.abs() < 1e-13 { 0.0 } else { v };
    (rationalize(snap(z.re), max_den), rationalize(snap(z.im), max_den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn content_of_rational_polynomial() {
        // (3/8)(d^2 - 1) normalizes to d^2 - 1.
        let p = Poly::new(vec![q("-3/8"), q("0"), q("3/8")]);
        assert_eq!(normalize_content(&p), Poly::from_ints(&[-1, 0, 1]));
        let neg = Poly::new(vec![q("4"), q("-6")]);
        assert_eq!(normalize_content(&neg), Poly::from_ints(&[-2, 3]));
    }

    #[test]
    fn content_of_gaussian_polynomial() {
        // (1+i)(z + i) -> z + i up to a unit, leading coefficient 1.
        let p = Poly::new(vec![q("-1+1i"), q("1+1i")]);
        let n = normalize_content(&p);
        assert_eq!(n, Poly::new(vec![q("i"), q("1")]));
    }

    #[test]
    fn convergents_of_simple_fractions() {
        let c = rationalize(-0.375, 1000);
        assert!(c.contains(&BigRational::new((-3).into(), 8.into())));
        let c = rationalize(1.0 / 3.0 + 1e-12, 1000);
        assert!(c.contains(&BigRational::new(1.into(), 3.into())));
    }
}
