//! Endpoint tuples {a, b, c, d} whose inverse image of [−1, 1] under some
//! T_n is two arcs: the endpoint equation, extremal points, T_n and U_{n−2},
//! and the Pell check T_n² − H·U_{n−2}² = 1.
//!
//! Slot and role conventions: for odd n, T_n = −1 at a, b, c and +1 at d;
//! for even n, T_n = −1 at a, b and +1 at c, d.

mod build;
mod endpoint;
mod enumerate;
mod oracle;
mod report;
mod roots;

pub use build::{
    build_tn, build_tn_from_roots, compose_double, double_solution, extremal_polynomials,
    extremal_x_polynomial, extremal_y_polynomial, h_polynomial, is_half_degree_tuple,
    pell_residual, solve_tuple,
};
pub use endpoint::{
    degree_bound, endpoint_polynomial, endpoint_polynomial_approx, endpoint_polynomial_exact,
    endpoint_shape, endpoint_value, solve_fourth_endpoint, Candidate, Classification, PartialTuple,
};
pub use enumerate::{enumerate_tuples, role_assignments};
pub use oracle::{small_degree_oracle, small_degree_x_equation, small_degree_y_equation};
pub use report::{fmt_scalar_list, CandidateReport, RolesReport, TupleReport, TupleSolutionReport};
pub use roots::{exact_roots, numeric_roots};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, DetRing, Field, GaussRat, Mode, Poly, Scalar};
use crate::newton::{NewtonError, Parity};
use crate::rootfind::RootError;

/// Scalar fields the tuple pipeline runs over.
pub trait Coeff: Field + DetRing {}
impl<K: Field + DetRing> Coeff for K {}

/// Approximate points closer than this (relative) count as coincident.
pub const COINCIDE_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum TupleError {
    #[error("degree n = {0} is not supported here")]
    UnsupportedDegree(usize),
    #[error("expected exactly one unknown endpoint, got {0}")]
    UnknownCount(usize),
    #[error("{minus} minus and {plus} plus points do not fit degree {n}")]
    RoleCount { n: usize, minus: usize, plus: usize },
    #[error("det F vanishes identically for these known points")]
    DegenerateKnownPoints,
    #[error("a product-formula denominator vanishes ({0})")]
    ZeroDenominator(&'static str),
    #[error("the two product representations of T_n disagree (difference {0:e})")]
    RepresentationMismatch(f64),
    #[error("Pell residual {0:e} exceeds tolerance")]
    PellFailure(f64),
    #[error("expected {expected} extremal points, got {got}")]
    PointCount { expected: usize, got: usize },
    #[error("half-degree pair does not satisfy its own Pell equation")]
    HalfPairInvalid,
    #[error(transparent)]
    Newton(#[from] NewtonError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Slot {
    A,
    B,
    C,
    D,
}

impl Slot {
    pub const ALL: [Slot; 4] = [Slot::A, Slot::B, Slot::C, Slot::D];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        ["a", "b", "c", "d"][self.index()]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Minus,
    Plus,
}

/// Which slots T_n maps to −1 and which to +1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleAssignment {
    pub minus: Vec<Slot>,
    pub plus: Vec<Slot>,
}

impl RoleAssignment {
    pub fn for_parity(parity: Parity) -> Self {
        match parity {
            Parity::Odd => RoleAssignment { minus: vec![Slot::A, Slot::B, Slot::C], plus: vec![Slot::D] },
            Parity::Even => RoleAssignment { minus: vec![Slot::A, Slot::B], plus: vec![Slot::C, Slot::D] },
        }
    }

    /// Roles of a composed tuple: T_n = 2T_{n/2}² − 1 is +1 at every endpoint.
    pub fn all_plus() -> Self {
        RoleAssignment { minus: vec![], plus: Slot::ALL.to_vec() }
    }

    pub fn role_of(&self, slot: Slot) -> Role {
        if self.minus.contains(&slot) {
            Role::Minus
        } else {
            Role::Plus
        }
    }
}

pub(crate) fn coincide(x: &Scalar, y: &Scalar) -> bool {
    match (x, y) {
        (Scalar::Exact(p), Scalar::Exact(q)) => p == q,
        _ => {
            let (p, q) = (x.to_c64(), y.to_c64());
            (p - q).norm() <= COINCIDE_TOL * (1.0 + p.norm().max(q.norm()))
        }
    }
}

/// Four endpoints in slot order (a, b, c, d).
#[derive(Clone, Debug, PartialEq)]
pub struct EndpointTuple {
    pub points: [Scalar; 4],
    pub roles: RoleAssignment,
    /// Two endpoints coincide (the one-interval case).
    pub degenerate: bool,
}

impl EndpointTuple {
    pub fn new(points: [Scalar; 4], roles: RoleAssignment) -> Self {
        let mut degenerate = false;
        for i in 0..4 {
            for j in 0..i {
                degenerate |= coincide(&points[i], &points[j]);
            }
        }
        EndpointTuple { points, roles, degenerate }
    }

    pub fn for_degree(n: usize, points: [Scalar; 4]) -> Self {
        Self::new(points, RoleAssignment::for_parity(Parity::of(n)))
    }

    pub fn get(&self, slot: Slot) -> &Scalar {
        &self.points[slot.index()]
    }

    pub fn mode(&self) -> Mode {
        if self.points.iter().all(|p| p.mode() == Mode::Exact) {
            Mode::Exact
        } else {
            Mode::Approx
        }
    }

    pub fn exact(&self) -> Option<[GaussRat; 4]> {
        let v: Option<Vec<GaussRat>> = self.points.iter().map(|p| p.as_exact().cloned()).collect();
        v.map(|v| [v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()])
    }

    pub fn approx(&self) -> [Complex64; 4] {
        [0, 1, 2, 3].map(|i| self.points[i].to_c64())
    }

    /// Endpoint multiset in (re, im) order, for deduplication.
    pub fn sorted_points(&self) -> Vec<Scalar> {
        let mut v = self.points.to_vec();
        v.sort_by(|x, y| x.lex_cmp(y));
        v
    }

    pub fn same_multiset(&self, other: &EndpointTuple) -> bool {
        self.sorted_points().iter().zip(other.sorted_points().iter()).all(|(x, y)| coincide(x, y))
    }
}

/// A polynomial in whichever arithmetic produced it.
#[derive(Clone, Debug, PartialEq)]
pub enum ModePoly {
    Exact(Poly<GaussRat>),
    Approx(Poly<Complex64>),
}

impl ModePoly {
    pub fn from_poly<K: Field>(p: &Poly<K>) -> Self {
        let coeffs = p.to_scalars();
        if K::is_exact() {
            ModePoly::Exact(Poly::new(
                coeffs.iter().map(|c| c.as_exact().cloned().expect("exact coefficient")).collect(),
            ))
        } else {
            ModePoly::Approx(p.to_c64())
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            ModePoly::Exact(_) => Mode::Exact,
            ModePoly::Approx(_) => Mode::Approx,
        }
    }

    pub fn to_c64(&self) -> Poly<Complex64> {
        match self {
            ModePoly::Exact(p) => p.to_c64(),
            ModePoly::Approx(p) => p.clone(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            ModePoly::Exact(p) => p.degree(),
            ModePoly::Approx(p) => p.degree(),
        }
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        match self {
            ModePoly::Exact(p) => p.to_scalars(),
            ModePoly::Approx(p) => p.to_scalars(),
        }
    }

    pub fn coeff_strings(&self) -> Vec<String> {
        self.to_scalars().iter().map(|c| c.to_string()).collect()
    }
}

/// How a solution was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    /// From the degree-n product formulas.
    Direct,
    /// As 2T_{n/2}² − 1 from a half-degree solution.
    Doubled,
}

/// A validated T_n-tuple together with its polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct TnTupleSolution {
    pub n: usize,
    pub tuple: EndpointTuple,
    /// Interior points with T_n = +1, sorted by (re, im).
    pub xs: Vec<Scalar>,
    /// Interior points with T_n = −1, sorted by (re, im).
    pub ys: Vec<Scalar>,
    pub t: ModePoly,
    pub u: ModePoly,
    /// Largest coefficient magnitude of T² − H·U² − 1 (0 when exact).
    pub pell_residual_norm: f64,
    pub origin: Origin,
    pub mode: Mode,
}

pub(crate) fn to_k<K: Field>(s: &Scalar) -> Result<K, AlgebraError> {
    if K::is_exact() {
        K::from_scalar(s)
    } else {
        Ok(K::from_c64(s.to_c64()))
    }
}

pub(crate) fn points_to_k<K: Field>(points: &[Scalar; 4]) -> Result<[K; 4], AlgebraError> {
    Ok([to_k(&points[0])?, to_k(&points[1])?, to_k(&points[2])?, to_k(&points[3])?])
}

pub(crate) fn all_exact(points: &[Scalar]) -> bool {
    points.iter().all(|p| p.mode() == Mode::Exact)
}
