//! Dense univariate polynomials, coefficients stored low-to-high.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::scalar::{Field, GaussRat, Ring, Scalar};
use super::AlgebraError;

/// Dense polynomial over a coefficient field. The zero polynomial has an
/// empty coefficient list; trailing zeros are always trimmed.
#[derive(Clone, PartialEq)]
pub struct Poly<K> {
    coeffs: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(K::one(), 1)
    }

    pub fn monomial(c: K, k: usize) -> Self {
        let mut coeffs = vec![K::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `z - r`.
    pub fn linear_root(r: &K) -> Self {
        Self::new(vec![-r.clone(), K::one()])
    }

    /// Monic polynomial with the given roots, `Π (z - r)`.
    pub fn from_roots(roots: &[K]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_root(r))
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<K> {
        self.coeffs
    }

    /// Coefficient of `z^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> K {
        self.coeffs.get(i).cloned().unwrap_or_else(K::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    /// Horner evaluation, highest coefficient first.
    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Substitutes a polynomial for the variable.
    pub fn compose(&self, inner: &Poly<K>) -> Poly<K> {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * K::from_i64(i as i64))
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, s: &K) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn monic(&self) -> Result<Self, AlgebraError> {
        let lc = self.leading().ok_or(AlgebraError::ZeroPolynomial)?;
        let inv = lc.inv().ok_or(AlgebraError::DivisionByZero)?;
        Ok(self.scale(&inv))
    }

    pub fn pow(&self, k: usize) -> Self {
        Ring::pow(self, k)
    }

    pub fn map<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn to_c64(&self) -> Poly<Complex64> {
        self.map(|c| c.to_c64())
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        self.coeffs.iter().map(|c| c.to_scalar()).collect()
    }

    /// Largest coefficient magnitude (0 for the zero polynomial).
    /// Largest coefficient magnitude; NaN if any coefficient is NaN.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, |a, b| if b.is_nan() || a.is_nan() { f64::NAN } else { a.max(b) })
    }

    /// Euclidean division: `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly<K>) -> Result<(Poly<K>, Poly<K>), AlgebraError> {
        let dd = divisor.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        let lc_inv = divisor.leading().and_then(|c| c.inv()).ok_or(AlgebraError::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(), Poly::zero()));
        };
        if nd < dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![K::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd].clone() * lc_inv.clone();
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
                }
            }
            quot[i] = c;
        }
        // The eliminated top coefficients are zero exactly in exact mode but
        // may carry rounding noise in approximate mode; drop them either way.
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Division that must leave no remainder (checked exactly in exact mode).
    pub fn exact_div(&self, divisor: &Poly<K>) -> Result<Poly<K>, AlgebraError> {
        let (q, r) = self.divrem(divisor)?;
        if K::is_exact() && !r.is_zero() {
            return Err(AlgebraError::InexactDivision);
        }
        Ok(q)
    }

    /// Monic greatest common divisor (Euclid); meaningful in exact mode.
    pub fn gcd(&self, other: &Poly<K>) -> Poly<K> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).map(|(_, r)| r).unwrap_or_else(|_| Poly::zero());
            a = b;
            b = r;
        }
        a.monic().unwrap_or(a)
    }

    /// Newton-form interpolation through `(point, value)` samples. Approximate
    /// samples are taken in Leja order, which keeps the divided differences
    /// stable.
    pub fn interpolate(samples: &[(K, K)]) -> Result<Self, AlgebraError> {
        let ordered;
        let samples = if K::is_exact() {
            samples
        } else {
            ordered = leja_order(samples);
            &ordered[..]
        };
        let n = samples.len();
        for i in 0..n {
            for j in 0..i {
                if (samples[i].0.clone() - samples[j].0.clone()).is_zero() {
                    return Err(AlgebraError::DuplicateSamplePoint);
                }
            }
        }
        let xs: Vec<K> = samples.iter().map(|s| s.0.clone()).collect();
        let mut dd: Vec<K> = samples.iter().map(|s| s.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let den = xs[i].clone() - xs[i - level].clone();
                let inv = den.inv().ok_or(AlgebraError::DuplicateSamplePoint)?;
                dd[i] = (dd[i].clone() - dd[i - 1].clone()) * inv;
            }
        }
        let mut acc = Poly::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &Poly::linear_root(&xs[i])) + &Poly::constant(dd[i].clone());
        }
        Ok(acc)
    }
}

/// Greedy Leja ordering: start at the largest point, then repeatedly take
/// the point maximizing the product of distances to those already chosen.
fn leja_order<K: Field>(samples: &[(K, K)]) -> Vec<(K, K)> {
    let pts: Vec<Complex64> = samples.iter().map(|s| s.0.to_c64()).collect();
    let mut left: Vec<usize> = (0..samples.len()).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(samples.len());
    // log-products avoid under/overflow
    let mut score = vec![0.0f64; samples.len()];
    while !left.is_empty() {
        let pick = if chosen.is_empty() {
            (0..left.len()).max_by(|&i, &j| pts[left[i]].norm().total_cmp(&pts[left[j]].norm())).unwrap()
        } else {
            (0..left.len()).max_by(|&i, &j| score[left[i]].total_cmp(&score[left[j]])).unwrap()
        };
        let k = left.swap_remove(pick);
        for &i in &left {
            score[i] += (pts[i] - pts[k]).norm().ln();
        }
        chosen.push(k);
    }
    chosen.into_iter().map(|i| samples[i].clone()).collect()
}

/// a + b as hi + lo exactly.
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

/// Double-double real number hi + lo.
#[derive(Clone, Copy)]
struct Dd(f64, f64);

impl Dd {
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.0, o.0);
        let (hi, lo) = two_sum(s, e + self.1 + o.1);
        Dd(hi, lo)
    }

    fn mul_f(self, x: f64) -> Dd {
        let p = self.0 * x;
        let e = self.0.mul_add(x, -p);
        let (hi, lo) = two_sum(p, e + self.1 * x);
        Dd(hi, lo)
    }

    fn neg(self) -> Dd {
        Dd(-self.0, -self.1)
    }
}

impl Poly<Complex64> {
    /// Horner evaluation carried in double-double arithmetic, rounded once
    /// at the end: accurate even where plain evaluation loses digits to
    /// cancellation.
    pub fn eval_accurate(&self, z: &Complex64) -> Complex64 {
        let (mut re, mut im) = (Dd(0.0, 0.0), Dd(0.0, 0.0));
        for c in self.coeffs.iter().rev() {
            let nr = re.mul_f(z.re).add(im.mul_f(z.im).neg()).add(Dd(c.re, 0.0));
            let ni = re.mul_f(z.im).add(im.mul_f(z.re)).add(Dd(c.im, 0.0));
            re = nr;
            im = ni;
        }
        Complex64::new(re.0 + re.1, im.0 + im.1)
    }

    /// Drops leading coefficients whose magnitude is below `rel` times the
    /// largest coefficient.
    pub fn trim_relative(&self, rel: f64) -> Self {
        let bound = rel * self.max_coeff_norm();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.norm() <= bound) {
            coeffs.pop();
        }
        Poly::new(coeffs)
    }

    /// Coefficients of `p(z)` from values at `center + radius * ω^k`,
    /// `ω = exp(2πi/N)`, via the inverse DFT.
    pub fn interpolate_on_circle(values: &[Complex64], center: Complex64, radius: f64) -> Self {
        let n = values.len();
        if n == 0 {
            return Poly::zero();
        }
        let mut scaled = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, v) in values.iter().enumerate() {
                let angle = -2.0 * std::f64::consts::PI * ((j * k) % n) as f64 / n as f64;
                acc += v * Complex64::from_polar(1.0, angle);
            }
            scaled.push(acc / n as f64);
        }
        // q(w) = p(center + radius w); recover p(z) = q((z - center)/radius).
        let q = Poly::new(scaled);
        if center == Complex64::new(0.0, 0.0) && radius == 1.0 {
            return q;
        }
        let inner = Poly::new(vec![-center / radius, Complex64::new(1.0 / radius, 0.0)]);
        q.compose(&inner)
    }

    /// Sample points matching [`Poly::interpolate_on_circle`].
    pub fn circle_points(count: usize, center: Complex64, radius: f64) -> Vec<Complex64> {
        (0..count)
            .map(|k| {
                let angle = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
                center + Complex64::from_polar(radius, angle)
            })
            .collect()
    }
}

impl Poly<GaussRat> {
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| GaussRat::from_i64(c)).collect())
    }
}

impl<K: Field> fmt::Debug for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c.to_scalar())?;
        }
        write!(f, "]")
    }
}

impl<'a, K: Field> Add<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a, K: Field> Sub<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: &Poly<K>) -> Poly<K> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a, K: Field> Mul<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: &Poly<K>) -> Poly<K> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![K::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<K: Field> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<K: Field> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Self {
        -&self
    }
}

impl<K: Field> Ring for Poly<K> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_i64(v: i64) -> Self {
        Poly::constant(K::from_i64(v))
    }
    fn div_int(&self, k: i64) -> Self {
        Poly::new(self.coeffs.iter().map(|c| c.div_int(k)).collect())
    }
}
