//! Power sums, the F_k sequence and the determinant system that recovers the
//! v-side of a signed power-sum system
//!
//!   (u_1^k + … + u_ν^k) − (v_1^k + … + v_μ^k) = s_k,   k = 1..ν+μ.
//!
//! Everything here is generic over [`Ring`], so the same code runs on
//! scalars and on polynomials in an unknown endpoint.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, DetRing, Field, Matrix, Poly, Ring};

#[derive(Debug, Error)]
pub enum NewtonError {
    #[error("degree n = {0} is too small (need n >= 2)")]
    DegreeTooSmall(usize),
    #[error("variant {variant:?} needs {parity:?} degree, got n = {n}")]
    ParityMismatch { n: usize, variant: Variant, parity: Parity },
    #[error("expected 4 endpoints, got {0}")]
    EndpointCount(usize),
    #[error("need F_0..F_{need}, have F_0..F_{have}")]
    ShortSequence { need: usize, have: usize },
    #[error("det F vanishes: the u and v sets are not disjoint")]
    SingularSystem,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Which signed power sum of the endpoints drives the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    OddEndpoint,
    OddY,
    OddX,
    EvenEndpoint,
    EvenY,
    EvenX,
}

impl Variant {
    pub fn parity(self) -> Parity {
        match self {
            Variant::OddEndpoint | Variant::OddY | Variant::OddX => Parity::Odd,
            _ => Parity::Even,
        }
    }

    /// Signs applied to a^k, b^k, c^k, d^k (the whole sum is halved).
    pub fn signs(self) -> [i64; 4] {
        match self {
            Variant::OddEndpoint => [-1, -1, -1, -1],
            Variant::OddY => [1, 1, 1, 1],
            Variant::OddX => [1, -1, -1, 1],
            Variant::EvenEndpoint => [-1, 1, -1, -1],
            Variant::EvenY => [1, 1, 1, -1],
            Variant::EvenX => [1, -1, 1, 1],
        }
    }
}

/// Size data of one instance of the system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemShape {
    pub n: usize,
    pub parity: Parity,
    pub m: usize,
    pub variant: Variant,
    pub nu: usize,
    pub mu: usize,
}

impl SystemShape {
    pub fn new(n: usize, variant: Variant) -> Result<Self, NewtonError> {
        if n < 2 {
            return Err(NewtonError::DegreeTooSmall(n));
        }
        let parity = Parity::of(n);
        if variant.parity() != parity {
            return Err(NewtonError::ParityMismatch { n, variant, parity: variant.parity() });
        }
        let m = match parity {
            Parity::Odd => (n - 1) / 2,
            Parity::Even => (n - 2) / 2,
        };
        let (nu, mu) = match variant {
            // n = 3 makes ν = m − 1 = 0; n is never 1 here.
            Variant::OddEndpoint => (m - 1, m + 1),
            Variant::OddY => (m + 1, m - 1),
            Variant::OddX => (m, m),
            Variant::EvenEndpoint => (m, m + 1),
            Variant::EvenY | Variant::EvenX => (m + 1, m),
        };
        Ok(SystemShape { n, parity, m, variant, nu, mu })
    }

    /// Number of power sums the system consumes.
    pub fn order(&self) -> usize {
        self.nu + self.mu
    }
}

/// s_1..s_K for the variant's sign pattern applied to (a, b, c, d).
pub fn power_sums<R: Ring>(variant: Variant, endpoints: &[R], k_max: usize) -> Result<Vec<R>, NewtonError> {
    if endpoints.len() != 4 {
        return Err(NewtonError::EndpointCount(endpoints.len()));
    }
    let signs = variant.signs();
    let mut powers: Vec<R> = endpoints.to_vec();
    let mut out = Vec::with_capacity(k_max);
    for _ in 0..k_max {
        let mut acc = R::zero();
        for (p, &s) in powers.iter().zip(&signs) {
            acc = if s > 0 { acc + p.clone() } else { acc - p.clone() };
        }
        out.push(acc.div_int(2));
        for (p, e) in powers.iter_mut().zip(endpoints) {
            *p = p.clone() * e.clone();
        }
    }
    Ok(out)
}

/// s_k = Σ u^k − Σ v^k for k = 1..K.
pub fn signed_power_sums<R: Ring>(u: &[R], v: &[R], k_max: usize) -> Vec<R> {
    let mut pu = u.to_vec();
    let mut pv = v.to_vec();
    let mut out = Vec::with_capacity(k_max);
    for _ in 0..k_max {
        let mut acc = R::zero();
        for p in &pu {
            acc = acc + p.clone();
        }
        for p in &pv {
            acc = acc - p.clone();
        }
        out.push(acc);
        for (p, e) in pu.iter_mut().zip(u) {
            *p = p.clone() * e.clone();
        }
        for (p, e) in pv.iter_mut().zip(v) {
            *p = p.clone() * e.clone();
        }
    }
    out
}

/// F_0..F_K from s_1..s_K via k·F_k = −Σ_{i=1..k} s_i F_{k−i}.
pub fn f_sequence<R: Ring>(s: &[R]) -> Vec<R> {
    let mut f = Vec::with_capacity(s.len() + 1);
    f.push(R::one());
    for k in 1..=s.len() {
        let mut acc = R::zero();
        for i in 1..=k {
            acc = acc + s[i - 1].clone() * f[k - i].clone();
        }
        f.push((-acc).div_int(k as i64));
    }
    f
}

/// F_0..F_K straight from the defining k×k determinants, scaled by
/// (−1)^k / k!. Only useful as a cross-check of [`f_sequence`].
pub fn f_sequence_by_determinant<R: DetRing>(s: &[R]) -> Result<Vec<R>, NewtonError> {
    let mut out = vec![R::one()];
    let mut fact: i64 = 1;
    for k in 1..=s.len() {
        fact = fact.checked_mul(k as i64).expect("k! overflows i64; keep K <= 20");
        let m = Matrix::from_fn(k, k, |r, c| {
            if c <= r {
                s[r - c].clone()
            } else if c == r + 1 {
                R::from_i64((r + 1) as i64)
            } else {
                R::zero()
            }
        });
        let d = R::det(&m)?.div_int(fact);
        out.push(if k % 2 == 1 { -d } else { d });
    }
    Ok(out)
}

fn f_at<R: Ring>(f: &[R], idx: isize) -> R {
    if idx < 0 {
        R::zero()
    } else {
        f[idx as usize].clone()
    }
}

/// The μ×μ matrix with entries F_{ν+r−c} (1-based r, c) and its μ
/// column-replaced variants (column i ← (−F_{ν+1}, …, −F_{ν+μ})).
pub fn build_f_matrices<R: Ring>(
    f: &[R],
    nu: usize,
    mu: usize,
) -> Result<(Matrix<R>, Vec<Matrix<R>>), NewtonError> {
    let need = nu + mu;
    if f.len() < need + 1 {
        return Err(NewtonError::ShortSequence { need, have: f.len().saturating_sub(1) });
    }
    let base = Matrix::from_fn(mu, mu, |r, c| f_at(f, nu as isize + r as isize - c as isize));
    let rhs: Vec<R> = (1..=mu).map(|r| -f[nu + r].clone()).collect();
    let replaced = (0..mu).map(|i| base.with_column(i, &rhs)).collect();
    Ok((base, replaced))
}

/// [det 𝔽, det 𝔽_1, …, det 𝔽_μ]: the coefficients, highest power first, of
/// the (unnormalized) equation Σ v^{μ−i} det 𝔽_i = 0.
pub fn v_equation<R: DetRing>(s: &[R], nu: usize, mu: usize) -> Result<Vec<R>, NewtonError> {
    let need = nu + mu;
    if s.len() < need {
        return Err(NewtonError::ShortSequence { need, have: s.len() });
    }
    let f = f_sequence(&s[..need]);
    let (base, replaced) = build_f_matrices(&f, nu, mu)?;
    let mut out = Vec::with_capacity(mu + 1);
    out.push(R::det(&base)?);
    for m in &replaced {
        out.push(R::det(m)?);
    }
    Ok(out)
}

/// Monic polynomial v^μ + Λ_1 v^{μ−1} + … + Λ_μ whose zeros are the v-side.
pub fn recover_v_polynomial<K: Field + DetRing>(s: &[K], nu: usize, mu: usize) -> Result<Poly<K>, NewtonError> {
    let dets = v_equation(s, nu, mu)?;
    let lead = dets[0].clone();
    let inv = lead.inv().ok_or(NewtonError::SingularSystem)?;
    // dets are highest power first.
    let coeffs: Vec<K> = dets.iter().rev().map(|d| d.clone() * inv.clone()).collect();
    Ok(Poly::new(coeffs))
}

/// |det 𝔽| for the system, for callers that want to judge near-singularity.
pub fn det_f_magnitude<K: Field + DetRing>(s: &[K], nu: usize, mu: usize) -> Result<f64, NewtonError> {
    Ok(v_equation(s, nu, mu)?[0].magnitude())
}
