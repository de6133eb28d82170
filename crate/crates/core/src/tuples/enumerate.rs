//! All tuples containing three given points.

use super::endpoint::{solve_fourth_endpoint, PartialTuple};
use super::{TnTupleSolution, TupleError};
use crate::algebra::Scalar;
use crate::newton::Parity;

/// The partial tuples to solve for three points. Odd n: the unknown is the
/// +1 endpoint, or a −1 endpoint with one given point taking the +1 role
/// (4 in all). Even n: the unknown is a −1 endpoint, paired with one given
/// point, the other two taking the +1 roles (3 in all; swapping T → −T
/// covers the remaining splits).
pub fn role_assignments(n: usize, points: &[Scalar; 3]) -> Result<Vec<PartialTuple>, TupleError> {
    let p = |i: usize| Some(points[i].clone());
    let layouts = match Parity::of(n) {
        Parity::Odd => vec![
            [p(0), p(1), p(2), None],
            [None, p(1), p(2), p(0)],
            [None, p(0), p(2), p(1)],
            [None, p(0), p(1), p(2)],
        ],
        Parity::Even => vec![
            [None, p(0), p(1), p(2)],
            [None, p(1), p(0), p(2)],
            [None, p(2), p(0), p(1)],
        ],
    };
    layouts.into_iter().map(|k| PartialTuple::new(n, k)).collect()
}

/// Every validated tuple containing the three points, deduplicated by
/// endpoint multiset and sorted by it.
pub fn enumerate_tuples(n: usize, points: &[Scalar; 3], tol: f64) -> Result<Vec<TnTupleSolution>, TupleError> {
    let mut out: Vec<TnTupleSolution> = Vec::new();
    for pt in role_assignments(n, points)? {
        for cand in solve_fourth_endpoint(&pt, tol)? {
            let Some(sol) = cand.solution else { continue };
            if !out.iter().any(|s| s.tuple.same_multiset(&sol.tuple)) {
                out.push(sol);
            }
        }
    }
    out.sort_by(|x, y| {
        let (a, b) = (x.tuple.sorted_points(), y.tuple.sorted_points());
        a.iter().zip(&b).map(|(p, q)| p.lex_cmp(q)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::ModePoly;

    fn s(v: &str) -> Scalar {
        v.parse().unwrap()
    }

    #[test]
    fn n3_chebyshev_is_found() {
        let sols = enumerate_tuples(3, &[s("-1"), s("1/2"), s("1/2")], 1e-9).unwrap();
        assert!(sols.len() <= 8);
        let cheb = sols.iter().find(|x| x.tuple.points[3] == s("1")).expect("Chebyshev tuple");
        assert_eq!(cheb.t, ModePoly::Exact(crate::algebra::Poly::from_ints(&[0, -3, 0, 4])));
    }

    #[test]
    fn n2_includes_chebyshev() {
        let sols = enumerate_tuples(2, &[s("0"), s("-1"), s("1")], 1e-9).unwrap();
        assert!(sols.len() <= 3);
        assert!(sols.iter().any(|x| {
            let mut p = x.tuple.sorted_points();
            p.dedup();
            p == vec![s("-1"), s("0"), s("1")] && x.tuple.degenerate
        }));
    }
}
