//! Simultaneous (Aberth–Ehrlich) root finding for approximate polynomials,
//! with clustering of multiple roots.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::Poly;

#[derive(Clone, Debug, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
    /// |P(value)| / max(1, largest coefficient magnitude).
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Root>,
    pub degree: usize,
}

impl RootSet {
    /// Root values repeated according to multiplicity.
    pub fn with_multiplicity(&self) -> Vec<Complex64> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat(r.value).take(r.multiplicity))
            .collect()
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.roots.iter().map(|r| r.value).collect()
    }
}

#[derive(Debug, Error)]
pub enum RootError {
    #[error("polynomial has degree < 1")]
    ConstantPolynomial,
    #[error("leading coefficient {lead:e} is negligible relative to {max:e}")]
    SmallLeading { lead: f64, max: f64 },
    #[error("no convergence after {iterations} iterations")]
    NotConverged { iterations: usize, best: RootSet },
}

const EPS: f64 = f64::EPSILON;

fn horner_with_derivative(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Rounding-error bound of Horner evaluation at `z`.
fn horner_bound(abs_c: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut acc = 0.0;
    for a in abs_c.iter().rev() {
        acc = acc * r + a;
    }
    4.0 * EPS * acc * (abs_c.len() as f64)
}

/// x / y without forming |y|², which overflows for |y| beyond ~1e154.
fn safe_div(x: Complex64, y: Complex64) -> Complex64 {
    let s = y.re.abs().max(y.im.abs());
    if s == 0.0 || !s.is_finite() {
        return x / y;
    }
    (x / s) / (y / s)
}

fn check_input(p: &Poly<Complex64>, tol: f64) -> Result<usize, RootError> {
    let deg = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(RootError::ConstantPolynomial),
    };
    let max = p.max_coeff_norm();
    let lead = p.coeffs()[deg].norm();
    if !(lead >= tol * max) {
        return Err(RootError::SmallLeading { lead, max });
    }
    Ok(deg)
}

/// Fujiwara's bound: every root has modulus ≤ 2·max |c_{n−k}/c_n|^{1/k}.
fn fujiwara_radius(c: &[Complex64]) -> f64 {
    let deg = c.len() - 1;
    let lead = c[deg].norm();
    (1..=deg)
        .map(|k| {
            let r = c[deg - k].norm() / lead;
            if k == deg { (r / 2.0).powf(1.0 / k as f64) } else { r.powf(1.0 / k as f64) }
        })
        .fold(0.0, f64::max)
        * 2.0
}

/// Starting points on a circle a little inside Fujiwara's root bound, with
/// seeded angular jitter.
pub fn initial_guesses(p: &Poly<Complex64>, seed: u64) -> Vec<Complex64> {
    let c = p.coeffs();
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let radius = match fujiwara_radius(c) {
        r if r > 0.0 && r.is_finite() => 0.5 * r,
        _ => 1.0,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    (0..deg)
        .map(|k| {
            let jitter: f64 = rng.gen_range(-0.25..0.25);
            let theta = tau * (k as f64 + 0.5 + jitter) / deg as f64 + 0.4;
            Complex64::from_polar(radius, theta)
        })
        .collect()
}

/// Raw Aberth–Ehrlich iteration from the given starting points (one per
/// root, multiplicity included). Returns the iterates and whether every one
/// reached the rounding-error level.
pub fn aberth(p: &Poly<Complex64>, init: &[Complex64], max_iter: usize) -> (Vec<Complex64>, bool) {
    let c = p.coeffs();
    let abs_c: Vec<f64> = c.iter().map(|a| a.norm()).collect();
    let mut z = init.to_vec();
    let n = z.len();
    let mut done = vec![false; n];
    for _ in 0..max_iter {
        if done.iter().all(|&d| d) {
            return (z, true);
        }
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (pv, dp) = horner_with_derivative(c, z[i]);
            if pv.norm() <= horner_bound(&abs_c, z[i]) {
                done[i] = true;
                continue;
            }
            let ratio = if dp.norm() == 0.0 {
                // Nudge off a critical point.
                Complex64::new(1e-8 * (1.0 + z[i].norm()), 1e-8)
            } else {
                safe_div(pv, dp)
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        sum += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * sum;
            let step = if denom.norm() == 0.0 { ratio } else { safe_div(ratio, denom) };
            if !step.re.is_finite() || !step.im.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= EPS * z[i].norm() {
                done[i] = true;
            }
        }
    }
    let ok = done.iter().all(|&d| d);
    (z, ok)
}

/// Newton refinement of a `k`-fold root: a simple root of the (k−1)-th
/// derivative. Falls back to the input if refinement does not help.
fn polish(p: &Poly<Complex64>, z0: Complex64, k: usize) -> Complex64 {
    let mut q = p.clone();
    for _ in 1..k {
        q = q.derivative();
    }
    let c = q.coeffs();
    let mut z = z0;
    for _ in 0..8 {
        let (v, dv) = horner_with_derivative(c, z);
        if dv.norm() == 0.0 {
            break;
        }
        let step = safe_div(v, dv);
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= EPS * (1.0 + z.norm()) {
            break;
        }
    }
    let a = p.eval(&z0).norm();
    let b = p.eval(&z).norm();
    if b <= a && (z - z0).norm() <= 1e-3 * (1.0 + z0.norm()) {
        z
    } else {
        z0
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    let mut j = i;
    while parent[j] != r {
        let nx = parent[j];
        parent[j] = r;
        j = nx;
    }
    r
}

/// Groups iterates closer than `radius` (single linkage) and replaces each
/// group by its mean.
pub fn cluster(points: &[Complex64], radius: f64) -> Vec<(Complex64, usize)> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if (points[i] - points[j]).norm() <= radius {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut groups: Vec<(usize, Complex64, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += points[i];
                g.2 += 1;
            }
            None => groups.push((r, points[i], 1)),
        }
    }
    groups.into_iter().map(|(_, s, k)| (s / k as f64, k)).collect()
}

fn finish(
    p: &Poly<Complex64>,
    iterates: &[Complex64],
    converged: bool,
    tol: f64,
    max_iter: usize,
) -> Result<RootSet, RootError> {
    let deg = iterates.len();
    let scale = iterates.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let radius = tol.sqrt() * scale;
    let norm = p.max_coeff_norm().max(1.0);
    let mut roots: Vec<Root> = cluster(iterates, radius)
        .into_iter()
        .map(|(v, k)| {
            let value = polish(p, v, k);
            Root { value, multiplicity: k, residual: p.eval(&value).norm() / norm }
        })
        .collect();
    roots.sort_by(|a, b| {
        a.value.re.total_cmp(&b.value.re).then(a.value.im.total_cmp(&b.value.im))
    });
    let set = RootSet { roots, degree: deg };
    if !converged || set.roots.iter().any(|r| !(r.residual <= tol)) {
        return Err(RootError::NotConverged { iterations: max_iter, best: set });
    }
    Ok(set)
}

/// All roots of `p`, clustered by multiplicity. Deterministic for a fixed
/// seed.
pub fn all_roots(p: &Poly<Complex64>, tol: f64, max_iter: usize, seed: u64) -> Result<RootSet, RootError> {
    check_input(p, tol)?;
    let init = initial_guesses(p, seed);
    let (z, ok) = aberth(p, &init, max_iter);
    finish(p, &z, ok, tol, max_iter)
}

/// Like [`all_roots`] but starting from caller-supplied iterates (e.g. the
/// roots of a nearby polynomial). Falls back to the default start if the
/// count is wrong.
pub fn all_roots_from(
    p: &Poly<Complex64>,
    init: &[Complex64],
    tol: f64,
    max_iter: usize,
) -> Result<RootSet, RootError> {
    let deg = check_input(p, tol)?;
    let start = if init.len() == deg { init.to_vec() } else { initial_guesses(p, 0) };
    let (z, ok) = aberth(p, &start, max_iter);
    finish(p, &z, ok, tol, max_iter)
}

/// [`all_roots`] after the substitution z = ρw, with ρ a power of two near
/// Fujiwara's root bound, so that polynomials with widely spread roots (and
/// hence a relatively tiny leading coefficient) are accepted. Roots and
/// residuals refer to `p` itself.
pub fn all_roots_balanced(p: &Poly<Complex64>, tol: f64, max_iter: usize, seed: u64) -> Result<RootSet, RootError> {
    let Some(deg) = p.degree().filter(|&d| d >= 1) else {
        return Err(RootError::ConstantPolynomial);
    };
    let bound = fujiwara_radius(p.coeffs());
    if !(bound.is_finite() && bound > 0.0) {
        return all_roots(p, tol, max_iter, seed);
    }
    let rho = 2f64.powi(bound.log2().round() as i32);
    let mut scaled: Vec<Complex64> = p.coeffs().iter().enumerate().map(|(k, c)| c * rho.powi(k as i32)).collect();
    let top = scaled[deg].norm();
    scaled.iter_mut().for_each(|c| *c /= top);
    let q = Poly::new(scaled);
    let rescale = |set: RootSet| {
        let norm = p.max_coeff_norm().max(1.0);
        let roots = set
            .roots
            .into_iter()
            .map(|r| {
                let value = r.value * rho;
                Root { value, multiplicity: r.multiplicity, residual: p.eval(&value).norm() / norm }
            })
            .collect();
        RootSet { roots, degree: set.degree }
    };
    match all_roots(&q, tol, max_iter, seed) {
        Ok(set) => Ok(rescale(set)),
        Err(RootError::NotConverged { iterations, best }) => Err(RootError::NotConverged { iterations, best: rescale(best) }),
        Err(e) => Err(e),
    }
}

/// Real roots in `[lo, hi]`: roots with |imaginary part| ≤ `tol`, sorted.
pub fn real_roots_in(p: &Poly<Complex64>, lo: f64, hi: f64, tol: f64) -> Result<Vec<f64>, RootError> {
    let set = all_roots(p, tol.max(1e-14), 500, 0)?;
    let mut out: Vec<f64> = set
        .roots
        .iter()
        .filter(|r| r.value.im.abs() <= tol && r.value.re >= lo && r.value.re <= hi)
        .map(|r| r.value.re)
        .collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}
