//! The endpoint equation p(a, b, c, d) = 0 as a polynomial in one unknown
//! endpoint, and the fourth-endpoint solve.

use num_complex::Complex64;
use serde::Serialize;

use super::build::solve_tuple;
use super::roots::{exact_roots, numeric_roots};
use super::{all_exact, coincide, Coeff, EndpointTuple, ModePoly, Slot, TnTupleSolution, TupleError};
use crate::algebra::{normalize_content, DetRing, Field, GaussRat, Mode, Poly, Scalar};
use crate::newton::{power_sums, v_equation, Parity, SystemShape, Variant};

pub fn endpoint_shape(n: usize) -> Result<SystemShape, TupleError> {
    if n < 2 {
        return Err(TupleError::UnsupportedDegree(n));
    }
    let variant = match Parity::of(n) {
        Parity::Odd => Variant::OddEndpoint,
        Parity::Even => Variant::EvenEndpoint,
    };
    Ok(SystemShape::new(n, variant)?)
}

/// Upper bound on the total degree of p: (n²−1)/4 for odd n, n²/4 for even.
pub fn degree_bound(n: usize) -> usize {
    if n % 2 == 1 {
        (n * n - 1) / 4
    } else {
        n * n / 4
    }
}

/// The endpoint whose powers weight the determinants: d for odd n, a for
/// even n.
fn distinguished(parity: Parity) -> Slot {
    match parity {
        Parity::Odd => Slot::D,
        Parity::Even => Slot::A,
    }
}

/// (p, det 𝔽) over any ring with determinants, e.g. scalars or
/// polynomials in an unknown endpoint.
pub(crate) fn endpoint_expr<R: DetRing>(n: usize, e: &[R; 4]) -> Result<(R, R), TupleError> {
    let shape = endpoint_shape(n)?;
    let s = power_sums(shape.variant, e, shape.order())?;
    let dets = v_equation(&s, shape.nu, shape.mu)?;
    let w = e[distinguished(shape.parity).index()].clone();
    let mut acc = dets[0].clone();
    for d in &dets[1..] {
        acc = acc * w.clone() + d.clone();
    }
    Ok((acc, dets[0].clone()))
}

/// p evaluated at a complete tuple.
pub fn endpoint_value<K: Coeff>(n: usize, e: &[K; 4]) -> Result<K, TupleError> {
    Ok(endpoint_expr(n, e)?.0)
}

fn unknown_slot<T>(known: &[Option<T>; 4]) -> Result<usize, TupleError> {
    let missing: Vec<usize> = (0..4).filter(|&i| known[i].is_none()).collect();
    if missing.len() != 1 {
        return Err(TupleError::UnknownCount(missing.len()));
    }
    Ok(missing[0])
}

/// p as an exact polynomial in the missing slot, normalized to integer
/// coefficients with content 1 and positive leading coefficient.
pub fn endpoint_polynomial_exact(n: usize, known: &[Option<GaussRat>; 4]) -> Result<Poly<GaussRat>, TupleError> {
    unknown_slot(known)?;
    let e: [Poly<GaussRat>; 4] = [0, 1, 2, 3].map(|i| match &known[i] {
        Some(v) => Poly::constant(v.clone()),
        None => Poly::z(),
    });
    let (p, det_f) = endpoint_expr(n, &e)?;
    if det_f.is_zero() || p.is_zero() {
        return Err(TupleError::DegenerateKnownPoints);
    }
    Ok(normalize_content(&p))
}

/// Coefficient of the top power of the unknown. p is homogeneous of degree
/// `degree_bound(n)`, so this is the constant p at the unit vector of the
/// slot; computed exactly because sampling recovers it poorly (it is tiny
/// next to the sampled values and cancels).
fn leading_coefficient(n: usize, slot: usize) -> Result<Complex64, TupleError> {
    let e = [0, 1, 2, 3].map(|i| GaussRat::from_ratio((i == slot) as i64, 1));
    Ok(endpoint_value(n, &e)?.to_c64())
}

/// p(ρw) as a polynomial in w, where ρ is the magnitude of the known
/// points: the top coefficient exactly, the rest by sampling
/// p(ρw) − lead·(ρw)^D on the unit circle. Returns (q, ρ).
fn endpoint_scaled(n: usize, known: &[Option<Complex64>; 4]) -> Result<(Poly<Complex64>, f64), TupleError> {
    let slot = unknown_slot(known)?;
    let rho = known.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    let rho = if rho > 0.0 { rho } else { 1.0 };
    let top = degree_bound(n);
    let lead = leading_coefficient(n, slot)?;
    let count = top + 5;
    let mut values = Vec::with_capacity(count);
    for w in Poly::circle_points(count, Complex64::new(0.0, 0.0), 1.0) {
        let mut e = [0, 1, 2, 3].map(|i| known[i].unwrap_or_default());
        e[slot] = w * rho;
        values.push(endpoint_value(n, &e)? - lead * (w * rho).powu(top as u32));
    }
    let q = Poly::interpolate_on_circle(&values, Complex64::new(0.0, 0.0), 1.0);
    let zero = Complex64::new(0.0, 0.0);
    let q = if lead == zero {
        q.trim_relative(1e-10)
    } else {
        let mut c: Vec<Complex64> = q.coeffs().iter().take(top).copied().collect();
        c.resize(top, zero);
        c.push(lead * rho.powi(top as i32));
        Poly::new(c)
    };
    if q.is_zero() || q.max_coeff_norm() == 0.0 {
        return Err(TupleError::DegenerateKnownPoints);
    }
    Ok((q, rho))
}

/// p as an approximate polynomial in the missing slot, scaled to a
/// leading coefficient 1.
pub fn endpoint_polynomial_approx(n: usize, known: &[Option<Complex64>; 4]) -> Result<Poly<Complex64>, TupleError> {
    let (q, rho) = endpoint_scaled(n, known)?;
    let coeffs: Vec<Complex64> = q.coeffs().iter().enumerate().map(|(j, c)| c / rho.powi(j as i32)).collect();
    let p = Poly::new(coeffs);
    Ok(p.monic()?)
}

/// Three known endpoints in fixed slots and one unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialTuple {
    pub n: usize,
    pub known: [Option<Scalar>; 4],
}

impl PartialTuple {
    pub fn new(n: usize, known: [Option<Scalar>; 4]) -> Result<Self, TupleError> {
        endpoint_shape(n)?;
        unknown_slot(&known)?;
        Ok(PartialTuple { n, known })
    }

    /// Places points by role. Odd n: three minus points leave d unknown,
    /// two minus and one plus leave a unknown. Even n: two minus and one
    /// plus leave c unknown, one minus and two plus leave b unknown.
    pub fn from_roles(n: usize, minus: &[Scalar], plus: &[Scalar]) -> Result<Self, TupleError> {
        let bad = || TupleError::RoleCount { n, minus: minus.len(), plus: plus.len() };
        let m = |i: usize| Some(minus[i].clone());
        let p = |i: usize| Some(plus[i].clone());
        let known = match (Parity::of(n), minus.len(), plus.len()) {
            (Parity::Odd, 3, 0) => [m(0), m(1), m(2), None],
            (Parity::Odd, 2, 1) => [None, m(0), m(1), p(0)],
            (Parity::Even, 2, 1) => [m(0), m(1), None, p(0)],
            (Parity::Even, 1, 2) => [m(0), None, p(0), p(1)],
            _ => return Err(bad()),
        };
        Self::new(n, known)
    }

    pub fn unknown(&self) -> Slot {
        Slot::ALL[unknown_slot(&self.known).expect("validated on construction")]
    }

    pub fn mode(&self) -> Mode {
        let pts: Vec<Scalar> = self.known.iter().flatten().cloned().collect();
        if all_exact(&pts) {
            Mode::Exact
        } else {
            Mode::Approx
        }
    }

    pub fn fill(&self, value: Scalar) -> [Scalar; 4] {
        let slot = self.unknown().index();
        [0, 1, 2, 3].map(|i| if i == slot { value.clone() } else { self.known[i].clone().unwrap() })
    }

    fn known_exact(&self) -> Option<[Option<GaussRat>; 4]> {
        if self.mode() != Mode::Exact {
            return None;
        }
        Some([0, 1, 2, 3].map(|i| self.known[i].as_ref().map(|s| s.as_exact().unwrap().clone())))
    }

    fn known_approx(&self) -> [Option<Complex64>; 4] {
        [0, 1, 2, 3].map(|i| self.known[i].as_ref().map(|s| s.to_c64()))
    }
}

/// The endpoint polynomial in the partial tuple's own mode.
pub fn endpoint_polynomial(pt: &PartialTuple) -> Result<ModePoly, TupleError> {
    match pt.known_exact() {
        Some(k) => Ok(ModePoly::Exact(endpoint_polynomial_exact(pt.n, &k)?)),
        None => Ok(ModePoly::Approx(endpoint_polynomial_approx(pt.n, &pt.known_approx())?)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    /// Validated, and distinct from the known points.
    Proper,
    /// Coincides with a known endpoint.
    Degenerate,
    /// Fails validation.
    Invalid,
}

#[derive(Clone, Debug)]
pub struct Candidate {
    pub unknown: Slot,
    pub value: Scalar,
    pub tuple: EndpointTuple,
    pub classification: Classification,
    pub solution: Option<TnTupleSolution>,
    /// Why validation failed, if it did.
    pub failure: Option<String>,
}

/// Newton refinement of a root against direct evaluation of p; the
/// derivative comes from the interpolant q(w) = p(ρw).
fn polish_unknown(pt: &PartialTuple, q: &Poly<Complex64>, rho: f64, w0: Complex64) -> Complex64 {
    let slot = pt.unknown().index();
    let base = pt.known_approx();
    let eval = |z: Complex64| {
        let mut e = [0, 1, 2, 3].map(|i| base[i].unwrap_or_default());
        e[slot] = z;
        endpoint_value(pt.n, &e).unwrap_or(Complex64::new(f64::INFINITY, 0.0))
    };
    let dq = q.derivative();
    let mut z = w0 * rho;
    let mut v = eval(z);
    for _ in 0..6 {
        let dp = dq.eval(&(z / rho)) / rho;
        let step = v / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        let next = z - step;
        let vn = eval(next);
        if vn.norm() >= v.norm() {
            break;
        }
        z = next;
        v = vn;
    }
    z
}

/// Candidate values of the unknown endpoint.
fn unknown_roots(pt: &PartialTuple) -> Result<Vec<Scalar>, TupleError> {
    let mut vals: Vec<Scalar> = match pt.known_exact() {
        Some(k) => exact_roots(&endpoint_polynomial_exact(pt.n, &k)?),
        None => {
            let (q, rho) = endpoint_scaled(pt.n, &pt.known_approx())?;
            if q.degree().unwrap_or(0) == 0 {
                Vec::new()
            } else {
                numeric_roots(&q)
                    .into_iter()
                    .map(|(w, _)| Scalar::Approx(polish_unknown(pt, &q, rho, w)))
                    .collect()
            }
        }
    };
    let mut uniq: Vec<Scalar> = Vec::new();
    vals.sort_by(|x, y| x.lex_cmp(y));
    for v in vals {
        if !uniq.iter().any(|u| coincide(u, &v)) {
            uniq.push(v);
        }
    }
    Ok(uniq)
}

/// Roots of the endpoint polynomial, each classified and post-validated
/// by running the full pipeline on the completed tuple.
pub fn solve_fourth_endpoint(pt: &PartialTuple, tol: f64) -> Result<Vec<Candidate>, TupleError> {
    let known: Vec<Scalar> = pt.known.iter().flatten().cloned().collect();
    let mut out = Vec::new();
    for value in unknown_roots(pt)? {
        let points = pt.fill(value.clone());
        let tuple = EndpointTuple::for_degree(pt.n, points.clone());
        let (solution, failure) = match solve_tuple(pt.n, &points, tol) {
            Ok(s) => (Some(s), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let classification = if known.iter().any(|k| coincide(k, &value)) {
            Classification::Degenerate
        } else if solution.is_some() {
            Classification::Proper
        } else {
            Classification::Invalid
        };
        out.push(Candidate { unknown: pt.unknown(), value, tuple, classification, solution, failure });
    }
    Ok(out)
}
