//! Zolotarev polynomials: the monic degree-n polynomial with z^{n−1}
//! coefficient −nσ of least maximum modulus on [−1, 1]. Above the threshold
//! σ > tan²(π/2n) its inverse image of [−L, L] is [−1, 1] ∪ [α, β]; the pair
//! (α, β) solves two polynomial equations built from the tuple machinery
//! with (a, b, c, d) = (α, 1, −1, β).

use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{fmt_f64, Field, GaussRat, Poly};
use crate::newton::{power_sums, v_equation, NewtonError, Parity, SystemShape, Variant};
use crate::rootfind::all_roots_balanced;
use crate::tuples::{endpoint_polynomial_approx, endpoint_value, extremal_polynomials, pell_residual, Coeff, TupleError};

#[derive(Debug, Error)]
pub enum ZolotarevError {
    #[error("sigma = {sigma} is at or below tan^2(pi/2n) = {threshold}: Chebyshev regime, no two-arc solution")]
    ChebyshevRegime { sigma: f64, threshold: f64 },
    #[error("degree n = {0} is not supported (need n >= 2)")]
    UnsupportedDegree(usize),
    #[error("no sign change of the second equation along the alpha scan ({} samples)", trace.len())]
    NoSignChange { trace: Vec<(f64, Option<f64>, Option<f64>)> },
    #[error("Newton polish stalled at residuals ({p1:e}, {p2:e})")]
    NotConverged { alpha: f64, beta: f64, p1: f64, p2: f64 },
    #[error("the two representations of Z_n disagree by {0:e}")]
    RepresentationMismatch(f64),
    #[error(transparent)]
    Tuple(#[from] TupleError),
    #[error(transparent)]
    Newton(#[from] NewtonError),
}

pub fn sigma_threshold(n: usize) -> f64 {
    let t = (std::f64::consts::PI / (2.0 * n as f64)).tan();
    t * t
}

fn m_of(n: usize) -> usize {
    match Parity::of(n) {
        Parity::Odd => (n - 1) / 2,
        Parity::Even => (n - 2) / 2,
    }
}

/// (P1, P2) over any coefficient field. P1 is the endpoint equation at
/// (α, 1, −1, β); P2 is the Vieta relation for the y-points multiplied
/// through by det 𝔽.
fn residuals_in<K: Coeff>(n: usize, sigma: K, alpha: K, beta: K) -> Result<(K, K), ZolotarevError> {
    let e = [alpha.clone(), K::one(), -K::one(), beta];
    let p1 = endpoint_value(n, &e)?;
    let variant = match Parity::of(n) {
        Parity::Odd => Variant::OddY,
        Parity::Even => Variant::EvenY,
    };
    let shape = SystemShape::new(n, variant)?;
    let s = power_sums(variant, &e, shape.order())?;
    let dets = v_equation(&s, shape.nu, shape.mu)?;
    let det_f = dets[0].clone();
    let det_f1 = dets.get(1).cloned().unwrap_or_else(K::zero);
    let shift = match Parity::of(n) {
        Parity::Odd => alpha,
        Parity::Even => alpha + K::one(),
    };
    let p2 = -(K::from_i64(2) * det_f1) + (shift - K::from_i64(n as i64) * sigma) * det_f;
    Ok((p1, p2))
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// (P1, P2) at (α, β) in floating point.
pub fn zolotarev_residuals(n: usize, sigma: f64, alpha: f64, beta: f64) -> Result<(f64, f64), ZolotarevError> {
    let (p1, p2) = residuals_in(n, c(sigma), c(alpha), c(beta))?;
    Ok((p1.re, p2.re))
}

fn exact_f64(x: f64) -> GaussRat {
    GaussRat::real(BigRational::from_float(x).expect("finite value"))
}

/// (P1, P2) evaluated without rounding at the exact binary values of
/// (σ, α, β), then rounded once.
pub fn zolotarev_residuals_exact(n: usize, sigma: f64, alpha: f64, beta: f64) -> Result<(f64, f64), ZolotarevError> {
    let (p1, p2) = residuals_in(n, exact_f64(sigma), exact_f64(alpha), exact_f64(beta))?;
    Ok((p1.to_c64().re, p2.to_c64().re))
}

/// Scan interval for α from the Vieta relation with every y_j in (−1, 1),
/// clipped to α > 1 and widened by 10%.
fn alpha_bracket(n: usize, sigma: f64) -> (f64, f64) {
    let m = m_of(n) as f64;
    let ns = n as f64 * sigma;
    let (center, half) = match Parity::of(n) {
        Parity::Odd => (ns, 2.0 * (m - 1.0)),
        Parity::Even => (ns - 1.0, 2.0 * m),
    };
    let margin = 0.1 * (2.0 * half).max(center.abs()).max(0.1);
    let lo = (center - half - margin).max(1.0 + 1e-9);
    let hi = center + half + margin;
    (lo, hi)
}

/// Smallest real root β > α of P1(α, ·), refined by Newton on direct
/// evaluation.
fn beta_star(n: usize, alpha: f64) -> Option<f64> {
    let known = [Some(c(alpha)), Some(c(1.0)), Some(c(-1.0)), None];
    let p = endpoint_polynomial_approx(n, &known).ok()?;
    let roots = match all_roots_balanced(&p, 1e-10, 2000, 0) {
        Ok(s) => s,
        Err(crate::rootfind::RootError::NotConverged { best, .. }) => best,
        Err(_) => return None,
    };
    let floor = alpha + 1e-9 * alpha.abs().max(1.0);
    let mut reals: Vec<f64> = roots
        .roots
        .iter()
        .filter(|r| r.value.im.abs() <= 1e-6 * (1.0 + r.value.re.abs()) && r.value.re > floor)
        .map(|r| r.value.re)
        .collect();
    reals.sort_by(f64::total_cmp);
    let b0 = *reals.first()?;
    let p1 = |b: f64| zolotarev_residuals(n, 0.0, alpha, b).map(|r| r.0).unwrap_or(f64::NAN);
    let mut b = b0;
    for _ in 0..20 {
        let h = 1e-7 * b.abs().max(1.0);
        let f = p1(b);
        let df = (p1(b + h) - p1(b - h)) / (2.0 * h);
        if !df.is_finite() || df == 0.0 {
            break;
        }
        let step = f / df;
        let next = b - step;
        if !next.is_finite() || (next - b0).abs() > 1e-3 * b0.abs().max(1.0) {
            break;
        }
        b = next;
        if step.abs() <= 1e-16 * b.abs() {
            break;
        }
    }
    (b > floor).then_some(b)
}

fn g_of(n: usize, sigma: f64, alpha: f64) -> Option<(f64, f64)> {
    let b = beta_star(n, alpha)?;
    let (_, p2) = zolotarev_residuals(n, sigma, alpha, b).ok()?;
    p2.is_finite().then_some((b, p2))
}

/// Damped Newton on (P1, P2) with a finite-difference Jacobian.
fn newton_polish(n: usize, sigma: f64, mut a: f64, mut b: f64, max_iter: usize) -> (f64, f64) {
    let f = |a: f64, b: f64| zolotarev_residuals(n, sigma, a, b).unwrap_or((f64::NAN, f64::NAN));
    let norm = |r: (f64, f64)| r.0.abs().max(r.1.abs());
    let mut r = f(a, b);
    for _ in 0..max_iter {
        let ha = 1e-7 * a.abs().max(1.0);
        let hb = 1e-7 * b.abs().max(1.0);
        let (ra_p, ra_m) = (f(a + ha, b), f(a - ha, b));
        let (rb_p, rb_m) = (f(a, b + hb), f(a, b - hb));
        let j11 = (ra_p.0 - ra_m.0) / (2.0 * ha);
        let j21 = (ra_p.1 - ra_m.1) / (2.0 * ha);
        let j12 = (rb_p.0 - rb_m.0) / (2.0 * hb);
        let j22 = (rb_p.1 - rb_m.1) / (2.0 * hb);
        let det = j11 * j22 - j12 * j21;
        if !det.is_finite() || det == 0.0 {
            break;
        }
        let da = (r.0 * j22 - r.1 * j12) / det;
        let db = (j11 * r.1 - j21 * r.0) / det;
        let mut lambda = 1.0;
        let mut improved = false;
        for _ in 0..12 {
            let (na, nb) = (a - lambda * da, b - lambda * db);
            let nr = f(na, nb);
            if norm(nr) < norm(r) {
                a = na;
                b = nb;
                r = nr;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if !improved || norm(r) == 0.0 {
            break;
        }
    }
    (a, b)
}

/// The unique (α, β) with 1 < α < β solving both equations.
pub fn solve_alpha_beta(n: usize, sigma: f64, tol: f64, max_iter: usize) -> Result<(f64, f64), ZolotarevError> {
    alpha_beta_candidates(n, sigma, tol, max_iter).map(|c| c[0])
}

/// Every converged (α, β) from the scan, in increasing α; never empty.
fn alpha_beta_candidates(n: usize, sigma: f64, tol: f64, max_iter: usize) -> Result<Vec<(f64, f64)>, ZolotarevError> {
    if n < 2 {
        return Err(ZolotarevError::UnsupportedDegree(n));
    }
    let threshold = sigma_threshold(n);
    if !(sigma > threshold) {
        return Err(ZolotarevError::ChebyshevRegime { sigma, threshold });
    }
    let (lo, hi) = alpha_bracket(n, sigma);
    let samples = 241;
    let grid: Vec<f64> = (0..samples).map(|k| lo + (hi - lo) * k as f64 / (samples - 1) as f64).collect();
    let values: Vec<Option<(f64, f64)>> = grid.iter().map(|&a| g_of(n, sigma, a)).collect();
    let mut best_fail: Option<(f64, f64, f64, f64)> = None;
    let mut found = Vec::new();
    for k in 0..samples - 1 {
        let (Some((_, g0)), Some((_, g1))) = (values[k], values[k + 1]) else { continue };
        if g0 == 0.0 || g0.signum() != g1.signum() {
            let (mut a0, mut a1, mut s0) = (grid[k], grid[k + 1], g0.signum());
            for _ in 0..80 {
                let mid = 0.5 * (a0 + a1);
                match g_of(n, sigma, mid) {
                    Some((_, gm)) if gm == 0.0 => {
                        a0 = mid;
                        a1 = mid;
                        break;
                    }
                    Some((_, gm)) if gm.signum() == s0 => {
                        a0 = mid;
                        s0 = gm.signum();
                    }
                    Some(_) => a1 = mid,
                    None => break,
                }
            }
            let a_mid = 0.5 * (a0 + a1);
            let Some((b_mid, _)) = g_of(n, sigma, a_mid) else { continue };
            let (a, b) = newton_polish(n, sigma, a_mid, b_mid, max_iter);
            let (p1, p2) = zolotarev_residuals_exact(n, sigma, a, b)?;
            if p1.abs() <= tol && p2.abs() <= tol && 1.0 < a && a < b {
                found.push((a, b));
                continue;
            }
            if best_fail.map_or(true, |f| p1.abs().max(p2.abs()) < f.2.abs().max(f.3.abs())) {
                best_fail = Some((a, b, p1, p2));
            }
        }
    }
    if !found.is_empty() {
        return Ok(found);
    }
    match best_fail {
        Some((alpha, beta, p1, p2)) => Err(ZolotarevError::NotConverged { alpha, beta, p1, p2 }),
        None => Err(ZolotarevError::NoSignChange {
            trace: grid.iter().zip(&values).map(|(&a, v)| (a, v.map(|x| x.0), v.map(|x| x.1))).collect(),
        }),
    }
}

/// Equioscillation counts of Z on [−1, 1] and [α, β].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Equioscillation {
    pub count_inner: usize,
    pub count_outer: usize,
    pub ok: bool,
}

fn real_critical_points(z: &Poly<Complex64>) -> Vec<f64> {
    let dz = z.derivative();
    if dz.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let roots = match all_roots_balanced(&dz, 1e-12, 2000, 0) {
        Ok(s) => s,
        Err(crate::rootfind::RootError::NotConverged { best, .. }) => best,
        Err(_) => return Vec::new(),
    };
    roots
        .roots
        .iter()
        .filter(|r| r.value.im.abs() <= 1e-6 * (1.0 + r.value.re.abs()))
        .map(|r| r.value.re)
        .collect()
}

/// Counts points where |Z| = L (within `tol`, relative) that are critical
/// points of Z or interval ends. `ok` requires counts (n, 2), alternating
/// signs along [−1, 1], and |Z| ≤ L(1 + tol) on a dense sample of [−1, 1].
pub fn verify_equioscillation(z: &Poly<Complex64>, l: f64, alpha: f64, beta: f64, tol: f64) -> Equioscillation {
    let n = z.degree().unwrap_or(0);
    let val = |x: f64| z.eval(&c(x)).re;
    let at_level = |x: f64| (val(x).abs() - l).abs() <= tol * l;
    let crit = real_critical_points(z);
    let mut inner: Vec<f64> = vec![-1.0, 1.0];
    inner.extend(crit.iter().copied().filter(|&x| x > -1.0 && x < 1.0));
    inner.retain(|&x| at_level(x));
    inner.sort_by(f64::total_cmp);
    inner.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
    let mut outer: Vec<f64> = vec![alpha, beta];
    outer.extend(crit.iter().copied().filter(|&x| x > alpha && x < beta));
    outer.retain(|&x| at_level(x));
    outer.dedup_by(|a, b| (*a - *b).abs() <= 1e-9);
    let alternating = inner.windows(2).all(|w| val(w[0]).signum() != val(w[1]).signum());
    let bounded = (0..=4000).all(|k| {
        let x = -1.0 + 2.0 * k as f64 / 4000.0;
        val(x).abs() <= l * (1.0 + tol)
    });
    let ok = inner.len() == n && outer.len() == 2 && alternating && bounded;
    Equioscillation { count_inner: inner.len(), count_outer: outer.len(), ok }
}

#[derive(Clone, Debug)]
pub struct ZolotarevSolution {
    pub n: usize,
    pub sigma: f64,
    pub alpha: f64,
    pub beta: f64,
    pub l_n: f64,
    /// Monic, real coefficients.
    pub z: Poly<Complex64>,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    /// (|P1|, |P2|) at (α, β), evaluated exactly.
    pub residuals: (f64, f64),
    /// Pell residual of T = Z/L, U = X·Y/L over (x−α)(x−1)(x+1)(x−β).
    pub pell_residual_norm: f64,
    /// |2Σy + α − nσ| (odd) or |2Σy + α + 1 − nσ| (even).
    pub vieta_residual: f64,
    /// |coefficient of x^{n−1} + nσ|.
    pub coefficient_residual: f64,
    pub equioscillation: Equioscillation,
}

fn real_roots(p: &Poly<Complex64>) -> Vec<f64> {
    if p.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let set = match all_roots_balanced(p, 1e-12, 2000, 0) {
        Ok(s) => s,
        Err(crate::rootfind::RootError::NotConverged { best, .. }) => best,
        Err(_) => return Vec::new(),
    };
    let mut v: Vec<f64> = set.with_multiplicity().iter().map(|z| z.re).collect();
    v.sort_by(f64::total_cmp);
    v
}

fn real_part(p: &Poly<Complex64>) -> Poly<Complex64> {
    Poly::new(p.coeffs().iter().map(|z| c(z.re)).collect())
}

/// Z_n, L_n and the extremal points for a solved (α, β), with all
/// consistency checks evaluated.
pub fn build_zn(n: usize, sigma: f64, alpha: f64, beta: f64, tol: f64) -> Result<ZolotarevSolution, ZolotarevError> {
    let e = [c(alpha), c(1.0), c(-1.0), c(beta)];
    let (x, y) = extremal_polynomials(n, &e)?;
    let (x, y) = (real_part(&x), real_part(&y));
    let xa = x.eval(&c(alpha)).re;
    let lin = |r: f64| Poly::linear_root(&c(r));
    let (l, z, l_alt, z_alt) = match Parity::of(n) {
        Parity::Odd => {
            let l = 0.5 * (beta - alpha) * xa * xa;
            let z = &(&lin(beta) * &(&x * &x)) + &Poly::constant(c(l));
            let yb = y.eval(&c(beta)).re;
            let l_alt = 0.5 * (beta - alpha) * (beta * beta - 1.0) * yb * yb;
            let base = Poly::from_roots(&[c(alpha), c(1.0), c(-1.0)]);
            let z_alt = &(&base * &(&y * &y)) - &Poly::constant(c(l_alt));
            (l, z, l_alt, z_alt)
        }
        Parity::Even => {
            let l = 0.5 * (alpha + 1.0) * (beta - alpha) * xa * xa;
            let base = Poly::from_roots(&[c(-1.0), c(beta)]);
            let z = &(&base * &(&x * &x)) + &Poly::constant(c(l));
            let ym = y.eval(&c(-1.0)).re;
            let l_alt = (1.0 + alpha) * ym * ym;
            let base = Poly::from_roots(&[c(alpha), c(1.0)]);
            let z_alt = &(&base * &(&y * &y)) - &Poly::constant(c(l_alt));
            (l, z, l_alt, z_alt)
        }
    };
    let scale = z.max_coeff_norm().max(1.0);
    let mismatch = ((&z - &z_alt).max_coeff_norm() / scale).max((l - l_alt).abs() / l.abs().max(1e-300));
    if !(mismatch <= 1e-6) {
        return Err(ZolotarevError::RepresentationMismatch(mismatch));
    }
    let inv_l = c(1.0 / l);
    let t = z.scale(&inv_l);
    let u = (&x * &y).scale(&inv_l);
    let pell = pell_residual(&t, &u, &e).max_coeff_norm();
    let xs = real_roots(&x);
    let ys = real_roots(&y);
    let ns = n as f64 * sigma;
    let sum_y: f64 = ys.iter().sum();
    let vieta_residual = match Parity::of(n) {
        Parity::Odd => (2.0 * sum_y + alpha - ns).abs(),
        Parity::Even => (2.0 * sum_y + alpha + 1.0 - ns).abs(),
    };
    let coefficient_residual = (z.coeff(n - 1).re + ns).abs();
    let (p1, p2) = zolotarev_residuals_exact(n, sigma, alpha, beta)?;
    let equioscillation = verify_equioscillation(&z, l, alpha, beta, tol.max(1e-9) * 1e2);
    Ok(ZolotarevSolution {
        n,
        sigma,
        alpha,
        beta,
        l_n: l,
        z,
        xs,
        ys,
        residuals: (p1.abs(), p2.abs()),
        pell_residual_norm: pell,
        vieta_residual,
        coefficient_residual,
        equioscillation,
    })
}

/// Solve for (α, β) and build Z_n.
pub fn zolotarev(n: usize, sigma: f64, tol: f64, max_iter: usize) -> Result<ZolotarevSolution, ZolotarevError> {
    // P1 = P2 = 0 can have spurious branches; prefer the one that equioscillates.
    let mut first = None;
    for (alpha, beta) in alpha_beta_candidates(n, sigma, tol, max_iter)? {
        match build_zn(n, sigma, alpha, beta, tol) {
            Ok(sol) if sol.equioscillation.ok => return Ok(sol),
            other => {
                if first.is_none() {
                    first = Some(other);
                }
            }
        }
    }
    first.expect("at least one candidate")
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualsReport {
    #[serde(rename = "P1")]
    pub p1: String,
    #[serde(rename = "P2")]
    pub p2: String,
    pub pell: String,
    pub vieta: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZolotarevReport {
    pub n: usize,
    pub sigma: String,
    pub alpha: String,
    pub beta: String,
    #[serde(rename = "L_n")]
    pub l_n: String,
    #[serde(rename = "Z")]
    pub z: Vec<String>,
    pub xs: Vec<String>,
    pub ys: Vec<String>,
    pub residuals: ResidualsReport,
    pub equioscillation: Equioscillation,
}

impl From<&ZolotarevSolution> for ZolotarevReport {
    fn from(s: &ZolotarevSolution) -> Self {
        let list = |v: &[f64]| v.iter().map(|&x| fmt_f64(x)).collect();
        ZolotarevReport {
            n: s.n,
            sigma: fmt_f64(s.sigma),
            alpha: fmt_f64(s.alpha),
            beta: fmt_f64(s.beta),
            l_n: fmt_f64(s.l_n),
            z: s.z.coeffs().iter().map(|c| fmt_f64(c.re)).collect(),
            xs: list(&s.xs),
            ys: list(&s.ys),
            residuals: ResidualsReport {
                p1: fmt_f64(s.residuals.0),
                p2: fmt_f64(s.residuals.1),
                pell: fmt_f64(s.pell_residual_norm),
                vieta: fmt_f64(s.vieta_residual),
                coefficient: fmt_f64(s.coefficient_residual),
            },
            equioscillation: s.equioscillation,
        }
    }
}
