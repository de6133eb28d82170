//! Dense matrices over rings and their determinants.

use num_complex::Complex64;

use super::poly::Poly;
use super::scalar::{Field, GaussRat, Ring};
use super::AlgebraError;

/// Row-major rectangular matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

/// Matrix with polynomial entries.
pub type PolyMat<K> = Matrix<Poly<K>>;

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self, AlgebraError> {
        if data.len() != rows * cols {
            return Err(AlgebraError::Shape { rows, cols, len: data.len() });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { R::one() } else { R::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &R {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: R) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Copy with column `col` replaced by `values`.
    pub fn with_column(&self, col: usize, values: &[R]) -> Self {
        let mut out = self.clone();
        for (r, v) in values.iter().enumerate().take(self.rows) {
            out.set(r, col, v.clone());
        }
        out
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn require_square(&self) -> Result<(), AlgebraError> {
        if self.is_square() {
            Ok(())
        } else {
            Err(AlgebraError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }
}

/// Determinant by Gaussian elimination over a field. Exact fields pivot on
/// the first nonzero entry, approximate ones on the largest magnitude.
pub fn det_field<K: Field>(m: &Matrix<K>) -> Result<K, AlgebraError> {
    m.require_square()?;
    let n = m.rows;
    let mut a = m.clone();
    let mut det = K::one();
    for k in 0..n {
        let pivot = if K::is_exact() {
            (k..n).find(|&i| !a.get(i, k).is_zero())
        } else {
            (k..n)
                .filter(|&i| !a.get(i, k).is_zero())
                .max_by(|&i, &j| a.get(i, k).magnitude().total_cmp(&a.get(j, k).magnitude()))
        };
        let Some(p) = pivot else {
            return Ok(K::zero());
        };
        if p != k {
            a.swap_rows(p, k);
            det = -det;
        }
        let pv = a.get(k, k).clone();
        let inv = pv.inv().ok_or(AlgebraError::DivisionByZero)?;
        det = det * pv;
        for i in k + 1..n {
            let f = a.get(i, k).clone() * inv.clone();
            if f.is_zero() {
                continue;
            }
            for j in k + 1..n {
                let v = a.get(i, j).clone() - f.clone() * a.get(k, j).clone();
                a.set(i, j, v);
            }
        }
    }
    Ok(det)
}

/// Fraction-free (Bareiss) elimination for polynomial entries. Every
/// division is exact; in exact mode this is verified.
pub fn det_bareiss<K: Field>(m: &PolyMat<K>) -> Result<Poly<K>, AlgebraError> {
    m.require_square()?;
    let n = m.rows;
    if n == 0 {
        return Ok(Poly::one());
    }
    let mut a = m.clone();
    let mut prev = Poly::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(Poly::zero());
            };
            a.swap_rows(p, k);
            negate = !negate;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            let aik = a.get(i, k).clone();
            for j in k + 1..n {
                let num = &(a.get(i, j) * &pivot) - &(&aik * a.get(k, j));
                let v = if prev == Poly::one() {
                    num
                } else {
                    num.exact_div(&prev)?
                };
                a.set(i, j, v);
            }
            a.set(i, k, Poly::zero());
        }
        prev = pivot;
    }
    let det = a.get(n - 1, n - 1).clone();
    Ok(if negate { -det } else { det })
}

/// Where the approximate determinant samples its polynomial entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SampleDomain {
    /// Equally spaced angles on a circle; interpolation is an inverse DFT.
    Circle { center: Complex64, radius: f64 },
    /// Chebyshev points of the first kind on a real interval.
    Interval { lo: f64, hi: f64 },
}

impl SampleDomain {
    pub fn points(&self, count: usize) -> Vec<Complex64> {
        match *self {
            SampleDomain::Circle { center, radius } => Poly::circle_points(count, center, radius),
            SampleDomain::Interval { lo, hi } => chebyshev_nodes(count, lo, hi)
                .into_iter()
                .map(|x| Complex64::new(x, 0.0))
                .collect(),
        }
    }

    /// Interpolates values sampled at [`SampleDomain::points`].
    pub fn interpolate(&self, values: &[Complex64]) -> Result<Poly<Complex64>, AlgebraError> {
        match *self {
            SampleDomain::Circle { center, radius } => {
                Ok(Poly::interpolate_on_circle(values, center, radius))
            }
            SampleDomain::Interval { .. } => {
                let pts = self.points(values.len());
                let samples: Vec<_> = pts.into_iter().zip(values.iter().copied()).collect();
                Poly::interpolate(&samples)
            }
        }
    }
}

/// Chebyshev points of the first kind mapped to `[lo, hi]`.
pub fn chebyshev_nodes(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mid = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    (0..count)
        .map(|k| {
            let theta = std::f64::consts::PI * (2 * k + 1) as f64 / (2 * count) as f64;
            mid - half * theta.cos()
        })
        .collect()
}

/// Determinant of an approximate polynomial matrix: evaluate at
/// `degree_bound + 1` sample points, take scalar determinants, interpolate.
pub fn det_eval_interp(
    m: &PolyMat<Complex64>,
    degree_bound: usize,
    domain: SampleDomain,
) -> Result<Poly<Complex64>, AlgebraError> {
    m.require_square()?;
    let pts = domain.points(degree_bound + 1);
    let mut values = Vec::with_capacity(pts.len());
    for z in &pts {
        values.push(det_field(&m.map(|p| p.eval(z)))?);
    }
    domain.interpolate(&values)
}

/// Determinant of a polynomial matrix in either mode. Exact matrices use
/// Bareiss elimination; approximate ones require a degree bound and use
/// evaluation–interpolation on `domain`.
pub fn polymat_det<K: Field>(
    m: &PolyMat<K>,
    degree_bound: Option<usize>,
    domain: Option<SampleDomain>,
) -> Result<Poly<K>, AlgebraError> {
    if K::is_exact() {
        return det_bareiss(m);
    }
    let bound = degree_bound.ok_or(AlgebraError::MissingDegreeBound)?;
    let domain = domain.unwrap_or(SampleDomain::Circle { center: Complex64::new(0.0, 0.0), radius: 1.0 });
    let approx = m.map(|p| p.to_c64());
    let det = det_eval_interp(&approx, bound, domain)?;
    Ok(det.map(|c| K::from_c64(*c)))
}

/// Rings with a determinant routine usable by the power-sum machinery.
pub trait DetRing: Ring {
    fn det(m: &Matrix<Self>) -> Result<Self, AlgebraError>;
}

impl DetRing for GaussRat {
    fn det(m: &Matrix<Self>) -> Result<Self, AlgebraError> {
        det_field(m)
    }
}

impl DetRing for Complex64 {
    fn det(m: &Matrix<Self>) -> Result<Self, AlgebraError> {
        det_field(m)
    }
}

impl<K: Field> DetRing for Poly<K> {
    fn det(m: &Matrix<Self>) -> Result<Self, AlgebraError> {
        polymat_det(m, None, None)
    }
}
