//! JSON shapes for tuple results. Exact scalars print in rational syntax,
//! approximate ones with 17 significant digits; key order is fixed.

use serde::Serialize;

use super::endpoint::{Candidate, Classification};
use super::{EndpointTuple, Origin, TnTupleSolution};
use crate::algebra::{fmt_f64, Mode, Scalar};

pub fn fmt_scalar_list(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RolesReport {
    pub minus: Vec<String>,
    pub plus: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TupleReport {
    pub a: String,
    pub b: String,
    pub c: String,
    pub d: String,
    pub roles: RolesReport,
    pub degenerate: bool,
}

impl From<&EndpointTuple> for TupleReport {
    fn from(t: &EndpointTuple) -> Self {
        let labels = |v: &[super::Slot]| v.iter().map(|s| s.label().to_string()).collect();
        TupleReport {
            a: t.points[0].to_string(),
            b: t.points[1].to_string(),
            c: t.points[2].to_string(),
            d: t.points[3].to_string(),
            roles: RolesReport { minus: labels(&t.roles.minus), plus: labels(&t.roles.plus) },
            degenerate: t.degenerate,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TupleSolutionReport {
    pub n: usize,
    pub tuple: TupleReport,
    pub xs: Vec<String>,
    pub ys: Vec<String>,
    #[serde(rename = "T")]
    pub t: Vec<String>,
    #[serde(rename = "U")]
    pub u: Vec<String>,
    pub residual_norm: String,
    pub mode: Mode,
    pub origin: Origin,
}

impl From<&TnTupleSolution> for TupleSolutionReport {
    fn from(s: &TnTupleSolution) -> Self {
        TupleSolutionReport {
            n: s.n,
            tuple: (&s.tuple).into(),
            xs: fmt_scalar_list(&s.xs),
            ys: fmt_scalar_list(&s.ys),
            t: s.t.coeff_strings(),
            u: s.u.coeff_strings(),
            residual_norm: fmt_f64(s.pell_residual_norm),
            mode: s.mode,
            origin: s.origin,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CandidateReport {
    pub unknown: String,
    pub value: String,
    pub classification: Classification,
    pub validated: bool,
    pub tuple: TupleReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<TupleSolutionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

impl From<&Candidate> for CandidateReport {
    fn from(c: &Candidate) -> Self {
        CandidateReport {
            unknown: c.unknown.label().to_string(),
            value: c.value.to_string(),
            classification: c.classification,
            validated: c.solution.is_some(),
            tuple: (&c.tuple).into(),
            solution: c.solution.as_ref().map(Into::into),
            failure: c.failure.clone(),
        }
    }
}
