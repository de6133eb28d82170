#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twoarc::algebra::{Field, GaussRat, Mode, Poly, Scalar};
use twoarc::tuples::{double_solution, enumerate_tuples, solve_fourth_endpoint, solve_tuple, PartialTuple, TnTupleSolution};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rand_rat(rng: &mut ChaCha8Rng) -> GaussRat {
    GaussRat::from_parts((rng.gen_range(-20..=20), rng.gen_range(1..=9)), (0, 1))
}

pub fn rand_gauss(rng: &mut ChaCha8Rng) -> GaussRat {
    GaussRat::from_parts(
        (rng.gen_range(-20..=20), rng.gen_range(1..=9)),
        (rng.gen_range(-20..=20), rng.gen_range(1..=9)),
    )
}

pub fn rand_disk(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.1..1.0), rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn q(s: &str) -> Scalar {
    s.parse().unwrap()
}

pub fn ex(g: GaussRat) -> Scalar {
    Scalar::Exact(g)
}

/// Coefficient vectors multiplied by plain convolution, independent of the
/// library's polynomial arithmetic.
pub fn conv<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![K::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

fn sub<K: Field>(a: &[K], b: &[K]) -> Vec<K> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_else(K::zero) - b.get(i).cloned().unwrap_or_else(K::zero))
        .collect()
}

/// T² − H·U² − 1 with H built from the endpoints.
pub fn pell_coeffs<K: Field>(t: &[K], u: &[K], e: &[K; 4]) -> Vec<K> {
    let mut h = vec![K::one()];
    for r in e {
        h = conv(&h, &[-r.clone(), K::one()]);
    }
    let mut r = sub(&conv(t, t), &conv(&h, &conv(u, u)));
    r[0] = r[0].clone() - K::one();
    r
}

/// Exact solutions for n ≤ 9: n = 2 random, n = 3 from the rational
/// family, Chebyshev-type degenerate tuples at n = 3 and 9, and doublings
/// up to n = 8. (n = 5 and 7 admit no rational fixtures here.)
pub fn exact_solutions(count: usize, seed: u64) -> Vec<TnTupleSolution> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    let tol = 1e-12;
    let mut n2 = Vec::new();
    while n2.len() < count {
        let (a, b, c) = (rand_gauss(&mut r), rand_gauss(&mut r), rand_gauss(&mut r));
        let d = a.clone() + b.clone() - c.clone();
        if let Ok(s) = solve_tuple(2, &[ex(a), ex(b), ex(c), ex(d)], tol) {
            n2.push(s);
        }
    }
    let mut n3 = Vec::new();
    while n3.len() < count {
        let (a, b, x) = (rand_gauss(&mut r), rand_gauss(&mut r), rand_gauss(&mut r));
        let two = GaussRat::from_ratio(2, 1);
        let s = a.clone() + b.clone() - two.clone() * x.clone();
        let Some(inv) = s.inv() else { continue };
        let c = (a.clone() * a.clone() + b.clone() * b.clone() - two.clone() * x.clone() * x.clone() - s.clone() * s.clone())
            * inv
            * GaussRat::from_ratio(1, 2);
        let d = a.clone() + b.clone() + c.clone() - two * x;
        if let Ok(sol) = solve_tuple(3, &[ex(a), ex(b), ex(c), ex(d)], tol) {
            n3.push(sol);
        }
    }
    for n in [3, 9] {
        out.push(solve_tuple(n, &[q("-1"), q("1/2"), q("1/2"), q("1")], tol).expect("Chebyshev tuple"));
    }
    out.extend(enumerate_tuples(3, &[q("-1"), q("1/2"), q("1/2")], tol).unwrap().into_iter().filter(|s| s.mode == Mode::Exact));
    out.push(solve_tuple(2, &[q("-1"), q("1"), q("-1/2"), q("1/2")], tol).unwrap());
    let n4: Vec<TnTupleSolution> = n2.iter().filter_map(|s| double_solution(s, tol).ok()).collect();
    let n6: Vec<TnTupleSolution> = n3.iter().filter_map(|s| double_solution(s, tol).ok()).collect();
    let n8: Vec<TnTupleSolution> = n4.iter().take(3).filter_map(|s| double_solution(s, tol).ok()).collect();
    out.extend(n2);
    out.extend(n3);
    out.extend(n4);
    out.extend(n6);
    out.extend(n8);
    out
}

/// Approximate solutions: every validated candidate for random triples in
/// the unit disk at each n in `direct`, plus doublings of them.
pub fn approx_solutions(direct: &[usize], triples: usize, seed: u64, tol: f64) -> Vec<TnTupleSolution> {
    let mut r = rng(seed);
    let mut out = Vec::new();
    for &n in direct {
        for _ in 0..triples {
            let pts = [rand_disk(&mut r), rand_disk(&mut r), rand_disk(&mut r)].map(Scalar::Approx);
            let pt = PartialTuple::new(n, [Some(pts[0].clone()), Some(pts[1].clone()), Some(pts[2].clone()), None]).unwrap();
            for c in solve_fourth_endpoint(&pt, tol).unwrap_or_default() {
                if let Some(s) = c.solution {
                    out.push(s);
                }
            }
        }
    }
    out
}

pub fn doublings(base: &[TnTupleSolution], max_n: usize, tol: f64) -> Vec<TnTupleSolution> {
    let mut out = Vec::new();
    let mut frontier: Vec<TnTupleSolution> = base.to_vec();
    while !frontier.is_empty() {
        let next: Vec<TnTupleSolution> = frontier
            .iter()
            .filter(|s| 2 * s.n <= max_n)
            .filter_map(|s| double_solution(s, tol).ok())
            .collect();
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn poly_c(p: &[f64]) -> Poly<Complex64> {
    Poly::new(p.iter().map(|&x| Complex64::new(x, 0.0)).collect())
}
