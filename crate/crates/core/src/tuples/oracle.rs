//! Hand-transcribed endpoint and extremal-point equations for n = 2, 3, 4,
//! used as an independent check of the determinant machinery.

use super::TupleError;
use crate::algebra::Ring;

// Variables: a, b, c, d, and x or y (index 4).
const N2_ENDPOINT: &str = "a+b-c-d";

const N3_ENDPOINT: &str = "a^2-2ab+b^2-2ac-2bc+c^2+2ad+2bd+2cd-3d^2";

const N3_X: &str = "-4ax+4bx+4cx-4dx\
    +a^2+2ab-3b^2+2ac-2bc-3c^2-2ad+2bd+2cd+d^2";

const N4_ENDPOINT: &str = "a^4+4a^3b-10a^2b^2+4ab^3+b^4-4a^3c+4a^2bc+4ab^2c-4b^3c+6a^2c^2\
    -4abc^2+6b^2c^2-4ac^3-4bc^3+c^4-4a^3d+4a^2bd+4ab^2d-4b^3d-4a^2cd\
    -8abcd-4b^2cd+4ac^2d+4bc^2d+4c^3d+6a^2d^2-4abd^2+6b^2d^2\
    +4acd^2+4bcd^2-10c^2d^2-4ad^3-4bd^3+4cd^3+d^4";

const N4_Y: &str = "-2a^2y+4aby-2b^2y+4acy+4bcy-2c^2y-4ady-4bdy-4cdy+6d^2y\
    +a^3-a^2b-ab^2+b^3-a^2c+2abc-b^2c-ac^2-bc^2+c^3+a^2d\
    -2abd+b^2d-2acd-2bcd+c^2d+3ad^2+3bd^2+3cd^2-5d^3";

const N4_X: &str = "-2a^2x-4abx+6b^2x+4acx-4bcx-2c^2x+4adx-4bdx+4cdx-2d^2x\
    +a^3+a^2b+3ab^2-5b^3-a^2c-2abc+3b^2c-ac^2+bc^2+c^3\
    -a^2d-2abd+3b^2d+2acd-2bcd-c^2d-ad^2+bd^2-cd^2+d^3";

type Term = (i64, [usize; 5]);

fn parse_terms(src: &str) -> Vec<Term> {
    let chars: Vec<char> = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let mut sign = 1;
        if chars[i] == '+' || chars[i] == '-' {
            if chars[i] == '-' {
                sign = -1;
            }
            i += 1;
        }
        let mut coef = 0i64;
        let mut has_digits = false;
        while i < chars.len() && chars[i].is_ascii_digit() {
            coef = coef * 10 + chars[i].to_digit(10).unwrap() as i64;
            has_digits = true;
            i += 1;
        }
        if !has_digits {
            coef = 1;
        }
        let mut exps = [0usize; 5];
        while i < chars.len() && chars[i].is_ascii_alphabetic() {
            let var = match chars[i] {
                'a' => 0,
                'b' => 1,
                'c' => 2,
                'd' => 3,
                'x' | 'y' => 4,
                other => panic!("unexpected variable {other}"),
            };
            i += 1;
            let mut e = 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                e = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    e = e * 10 + chars[i].to_digit(10).unwrap() as usize;
                    i += 1;
                }
            }
            exps[var] += e;
        }
        terms.push((sign * coef, exps));
    }
    terms
}

fn eval_terms<R: Ring>(src: &str, vals: [&R; 5]) -> R {
    let mut acc = R::zero();
    for (coef, exps) in parse_terms(src) {
        let mut t = R::from_i64(coef);
        for (v, &e) in vals.iter().zip(&exps) {
            if e > 0 {
                t = t * v.pow(e);
            }
        }
        acc = acc + t;
    }
    acc
}

/// The transcribed endpoint equation evaluated at (a, b, c, d). Generic, so
/// passing polynomials yields the equation as a polynomial in an unknown.
pub fn small_degree_oracle<R: Ring>(n: usize, e: &[R; 4]) -> Result<R, TupleError> {
    let src = match n {
        2 => N2_ENDPOINT,
        3 => N3_ENDPOINT,
        4 => N4_ENDPOINT,
        _ => return Err(TupleError::UnsupportedDegree(n)),
    };
    let one = R::one();
    Ok(eval_terms(src, [&e[0], &e[1], &e[2], &e[3], &one]))
}

/// The transcribed x-equation (n = 3, 4) at the point `x`.
pub fn small_degree_x_equation<R: Ring>(n: usize, e: &[R; 4], x: &R) -> Result<R, TupleError> {
    let src = match n {
        3 => N3_X,
        4 => N4_X,
        _ => return Err(TupleError::UnsupportedDegree(n)),
    };
    Ok(eval_terms(src, [&e[0], &e[1], &e[2], &e[3], x]))
}

/// The transcribed y-equation (n = 4) at the point `y`.
pub fn small_degree_y_equation<R: Ring>(n: usize, e: &[R; 4], y: &R) -> Result<R, TupleError> {
    if n != 4 {
        return Err(TupleError::UnsupportedDegree(n));
    }
    Ok(eval_terms(N4_Y, [&e[0], &e[1], &e[2], &e[3], y]))
}
