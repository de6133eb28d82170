//! Exact and approximate scalars, dense polynomials and polynomial-matrix
//! determinants.

mod content;
mod matrix;
mod poly;
mod scalar;

pub use content::{normalize_content, rationalize, rationalize_complex};
pub use matrix::{
    chebyshev_nodes, det_bareiss, det_eval_interp, det_field, polymat_det, DetRing, Matrix, PolyMat,
    SampleDomain,
};
pub use poly::Poly;
pub use scalar::{fmt_f64, Field, GaussRat, Mode, Ring, Scalar};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial division left a nonzero remainder")]
    InexactDivision,
    #[error("exact and approximate values mixed in a strict context")]
    ModeMismatch,
    #[error("interpolation points must be pairwise distinct")]
    DuplicateSamplePoint,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("{len} entries cannot fill a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("approximate polynomial determinant needs a degree bound")]
    MissingDegreeBound,
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}
