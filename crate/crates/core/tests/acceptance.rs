//! End-to-end acceptance checks, one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::Rng;

use common::*;
use twoarc::algebra::{Field, GaussRat, Mode, Poly, Ring, Scalar};
use twoarc::newton::{f_sequence, f_sequence_by_determinant, recover_v_polynomial, signed_power_sums};
use twoarc::preimage::{order_into_arcs, sample_preimage};
use twoarc::tuples::{
    degree_bound, double_solution, endpoint_polynomial_exact, endpoint_value, enumerate_tuples, small_degree_oracle,
    solve_fourth_endpoint, solve_tuple, ModePoly, PartialTuple, TnTupleSolution,
};
use twoarc::zolotarev::{sigma_threshold, zolotarev};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit_s: f64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s, || format!("took {:.2}s, limit {limit_s}s", elapsed.as_secs_f64()))
}

/// q = λ·p for some nonzero λ, compared exactly.
fn proportional(p: &Poly<GaussRat>, q: &Poly<GaussRat>) -> bool {
    let (Some(dp), Some(dq)) = (p.degree(), q.degree()) else { return false };
    if dp != dq {
        return false;
    }
    let Some(inv) = p.coeff(dp).inv() else { return false };
    let lambda = q.coeff(dq) * inv;
    !lambda.is_zero() && &p.scale(&lambda) == q
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut checked = 0;
    for n in [2, 3, 4] {
        for slot in 0..4 {
            for _ in 0..100 {
                let vals = [rand_gauss(&mut r), rand_gauss(&mut r), rand_gauss(&mut r)];
                let mut it = vals.iter().cloned();
                let known: [Option<GaussRat>; 4] = [0, 1, 2, 3].map(|i| if i == slot { None } else { it.next() });
                let machine = endpoint_polynomial_exact(n, &known).map_err(|e| format!("n={n} slot={slot}: {e}"))?;
                let e: [Poly<GaussRat>; 4] = [0, 1, 2, 3].map(|i| match &known[i] {
                    Some(v) => Poly::constant(v.clone()),
                    None => Poly::z(),
                });
                let oracle = small_degree_oracle(n, &e).unwrap();
                ensure(proportional(&machine, &oracle), || format!("n={n} slot={slot}: not proportional for {vals:?}"))?;
                checked += 1;
            }
        }
    }
    within(start.elapsed(), 10.0)?;
    Ok(format!("{checked} exact comparisons (n=2,3,4; each unknown slot x 100)"))
}

fn lemma_recovery() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2);
    let mut done = 0;
    while done < 200 {
        let (nu, mu) = (r.gen_range(0..=6), r.gen_range(1..=6));
        let all: Vec<GaussRat> = (0..nu + mu).map(|_| rand_gauss(&mut r)).collect();
        let (u, v) = all.split_at(nu);
        if u.iter().any(|x| v.contains(x)) {
            continue;
        }
        let s = signed_power_sums(u, v, nu + mu);
        let got = recover_v_polynomial(&s, nu, mu).map_err(|e| format!("nu={nu} mu={mu}: {e}"))?;
        // Expected coefficients by direct expansion.
        let mut want = vec![GaussRat::one()];
        for x in v {
            want = conv(&want, &[-x.clone(), GaussRat::one()]);
        }
        ensure(got == Poly::new(want), || format!("mismatch nu={nu} mu={mu}"))?;
        done += 1;
    }
    within(start.elapsed(), 5.0)?;
    Ok(format!("{done} instances, nu,mu <= 6"))
}

fn check_exact_pell(s: &TnTupleSolution) -> Result<(), String> {
    let (ModePoly::Exact(t), ModePoly::Exact(u)) = (&s.t, &s.u) else {
        return Err(format!("n={} solution not exact", s.n));
    };
    let e = s.tuple.exact().ok_or("tuple not exact")?;
    let r = pell_coeffs(t.coeffs(), u.coeffs(), &e);
    ensure(r.iter().all(|c| c.is_zero()), || format!("n={} exact Pell residual nonzero", s.n))
}

fn approx_pell_ratio(s: &TnTupleSolution) -> f64 {
    let t = s.t.to_c64();
    let u = s.u.to_c64();
    let e = s.tuple.approx();
    let r = pell_coeffs(t.coeffs(), u.coeffs(), &e);
    let res = r.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let m = t.max_coeff_norm().max(1.0);
    res / (m * m)
}

fn pell_identity() -> Outcome {
    let start = Instant::now();
    let exact = exact_solutions(6, 3);
    let mut degrees: Vec<usize> = Vec::new();
    for s in &exact {
        ensure(s.n <= 9, || format!("unexpected n={}", s.n))?;
        check_exact_pell(s)?;
        degrees.push(s.n);
    }
    let tol = 1e-9;
    let mut approx = approx_solutions(&(2..=14).collect::<Vec<_>>(), 2, 4, tol);
    let base: Vec<TnTupleSolution> = approx.iter().filter(|s| s.n <= 8).take(40).cloned().collect();
    approx.extend(doublings(&base, 16, tol));
    for n in 3..=6 {
        let z = zolotarev(n, 2.0 * sigma_threshold(n), 1e-10, 100).map_err(|e| e.to_string())?;
        let t: Vec<Complex64> = z.z.coeffs().iter().map(|c| c / z.l_n).collect();
        let e = [z.alpha, 1.0, -1.0, z.beta].map(|x| Complex64::new(x, 0.0));
        let (x, y) = twoarc::tuples::extremal_polynomials(n, &e).map_err(|e| e.to_string())?;
        let u: Vec<Complex64> = conv(x.coeffs(), y.coeffs()).iter().map(|c| c / z.l_n).collect();
        let res = pell_coeffs(&t, &u, &e).iter().map(|c| c.norm()).fold(0.0, f64::max);
        let m = t.iter().map(|c| c.norm()).fold(1.0, f64::max);
        ensure(res <= 1e-9 * m * m, || format!("Zolotarev n={n}: Pell ratio {:e}", res / (m * m)))?;
    }
    let mut worst: f64 = 0.0;
    for s in &approx {
        ensure(s.n <= 16 && s.mode == Mode::Approx, || format!("unexpected solution n={} {:?}", s.n, s.mode))?;
        let ratio = approx_pell_ratio(s);
        ensure(ratio <= 1e-9, || format!("approx n={}: residual/max^2 = {ratio:e}", s.n))?;
        worst = worst.max(ratio);
    }
    within(start.elapsed(), 60.0)?;
    let mut ns: Vec<usize> = approx.iter().map(|s| s.n).collect();
    ns.sort();
    ns.dedup();
    degrees.sort();
    degrees.dedup();
    Ok(format!(
        "{} exact (n in {degrees:?}) residual 0; {} approx (n in {ns:?}) worst ratio {worst:.1e}",
        exact.len(),
        approx.len()
    ))
}

fn chebyshev_regressions() -> Outcome {
    let tol = 1e-12;
    let pt = PartialTuple::from_roles(3, &[q("-1"), q("1/2"), q("1/2")], &[]).map_err(|e| e.to_string())?;
    let cands = solve_fourth_endpoint(&pt, tol).map_err(|e| e.to_string())?;
    let mut ds: Vec<Scalar> = cands.iter().map(|c| c.value.clone()).collect();
    ds.sort_by(|a, b| a.lex_cmp(b));
    ensure(ds == vec![q("-1"), q("1")], || format!("n=3 candidates {ds:?}"))?;
    let cheb = cands.iter().find(|c| c.value == q("1")).and_then(|c| c.solution.clone()).ok_or("d = 1 not validated")?;
    ensure(cheb.xs == vec![q("-1/2")], || format!("x points {:?}", cheb.xs))?;
    ensure(cheb.t == ModePoly::Exact(Poly::from_ints(&[0, -3, 0, 4])), || format!("T = {:?}", cheb.t))?;
    ensure(cheb.pell_residual_norm == 0.0, || "T3 residual".into())?;

    let pt = PartialTuple::new(2, [Some(q("0")), Some(q("0")), Some(q("-1")), None]).map_err(|e| e.to_string())?;
    let cands = solve_fourth_endpoint(&pt, tol).map_err(|e| e.to_string())?;
    ensure(cands.len() == 1 && cands[0].value == q("1"), || "n=2 fourth endpoint".into())?;
    let t2 = cands[0].solution.clone().ok_or("n=2 tuple not validated")?;
    ensure(t2.t == ModePoly::Exact(Poly::from_ints(&[-1, 0, 2])), || format!("T = {:?}", t2.t))?;

    let half = solve_tuple(2, &[q("-1"), q("1"), q("-1/2"), q("1/2")], tol).map_err(|e| e.to_string())?;
    let t4 = double_solution(&half, tol).map_err(|e| e.to_string())?;
    ensure(t4.n == 4 && t4.mode == Mode::Exact && t4.pell_residual_norm == 0.0, || "n=4 composition".into())?;
    check_exact_pell(&t4)?;
    Ok("T3 = 4z^3-3z, d in {-1, 1}, x = -1/2; T2 = 2z^2-1; n=4 doubling residual 0".into())
}

fn f_dual() -> Outcome {
    let mut r = rng(5);
    for _ in 0..100 {
        let k = r.gen_range(0..=12);
        let s: Vec<GaussRat> = (0..k).map(|_| rand_rat(&mut r)).collect();
        let a = f_sequence(&s);
        let b = f_sequence_by_determinant(&s).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("recurrence vs determinant differ at K={k}"))?;
    }
    for _ in 0..100 {
        let (nu, mu) = (r.gen_range(0..=6), r.gen_range(0..=6));
        let u: Vec<GaussRat> = (0..nu).map(|_| rand_gauss(&mut r)).collect();
        let v: Vec<GaussRat> = (0..mu).map(|_| rand_gauss(&mut r)).collect();
        let order = nu + mu;
        let f = f_sequence(&signed_power_sums(&u, &v, order));
        // Π(1 − u t) times the series of 1/Π(1 − v t), truncated.
        let mut num = vec![GaussRat::one()];
        for x in &u {
            num = conv(&num, &[GaussRat::one(), -x.clone()]);
        }
        let mut series = num;
        series.resize(order + 1, GaussRat::zero());
        for x in &v {
            // Multiply by 1/(1 − x t) = Σ xᵏ tᵏ: running sum.
            for i in 1..=order {
                series[i] = series[i].clone() + x.clone() * series[i - 1].clone();
            }
        }
        ensure(f[..=order] == series[..=order], || format!("generating function differs (nu={nu}, mu={mu})"))?;
    }
    Ok("100 recurrence/determinant pairs (K <= 12), 100 generating-function identities".into())
}

fn corollary_bounds() -> Outcome {
    let mut r = rng(6);
    let mut degs = Vec::new();
    for n in 2..=11 {
        let known = [Some(GaussRat::from_parts((r.gen_range(-5..=5), 1), (r.gen_range(-5..=5), 1))), Some(GaussRat::from_parts((r.gen_range(-5..=5), 2), (1, 1))), Some(GaussRat::from_ratio(r.gen_range(1..=5), 3)), None];
        let p = endpoint_polynomial_exact(n, &known).map_err(|e| format!("n={n}: {e}"))?;
        let d = p.degree().unwrap_or(0);
        ensure(d <= degree_bound(n), || format!("n={n}: degree {d} > {}", degree_bound(n)))?;
        degs.push(d);
    }
    let mut counts = Vec::new();
    for n in 2..=9 {
        let bound = if n % 2 == 1 { n * n - 1 } else { 3 * n * n / 4 };
        for _ in 0..2 {
            let pts = [rand_disk(&mut r), rand_disk(&mut r), rand_disk(&mut r)].map(Scalar::Approx);
            let c = enumerate_tuples(n, &pts, 1e-9).map_err(|e| e.to_string())?.len();
            ensure(c <= bound, || format!("n={n}: {c} tuples > {bound}"))?;
            counts.push((n, c));
        }
    }
    let c = enumerate_tuples(3, &[q("-1"), q("1/2"), q("1/2")], 1e-12).map_err(|e| e.to_string())?.len();
    ensure(c <= 8, || format!("n=3 Chebyshev triple: {c} tuples"))?;
    let two = GaussRat::from_ratio(2, 1);
    for n in 2..=7 {
        let e = [rand_gauss(&mut r), rand_gauss(&mut r), rand_gauss(&mut r), rand_gauss(&mut r)];
        let scaled = e.clone().map(|x| x * two.clone());
        let lhs = endpoint_value(n, &scaled).map_err(|e| e.to_string())?;
        let rhs = endpoint_value(n, &e).map_err(|e| e.to_string())? * two.pow(degree_bound(n));
        ensure(lhs == rhs, || format!("n={n}: p(2e) != 2^D p(e)"))?;
        let known = [Some(e[0].clone()), Some(e[1].clone()), Some(e[2].clone()), None];
        let known2 = known.clone().map(|k| k.map(|x| x * two.clone()));
        let p = endpoint_polynomial_exact(n, &known).map_err(|e| e.to_string())?;
        let p2 = endpoint_polynomial_exact(n, &known2).map_err(|e| e.to_string())?;
        // Roots double: p2(z) ∝ p(z/2).
        let half = Poly::new(vec![GaussRat::zero(), GaussRat::from_ratio(1, 2)]);
        ensure(proportional(&p.compose(&half), &p2), || format!("n={n}: scaled polynomial"))?;
    }
    Ok(format!("degrees {degs:?} (n=2..11) at bounds; enumerate counts {counts:?}; homogeneity exact for n=2..7"))
}

fn zolotarev_suite() -> Outcome {
    let mut lines = Vec::new();
    for n in 3..=6 {
        for f in [1.5, 2.0, 4.0] {
            let sigma = f * sigma_threshold(n);
            let start = Instant::now();
            let z = zolotarev(n, sigma, 1e-10, 100).map_err(|e| format!("n={n} x{f}: {e}"))?;
            let el = start.elapsed();
            let tag = format!("n={n} x{f}");
            ensure(1.0 < z.alpha && z.alpha < z.beta, || format!("{tag}: alpha {} beta {}", z.alpha, z.beta))?;
            ensure(z.residuals.0 <= 1e-10 && z.residuals.1 <= 1e-10, || format!("{tag}: residuals {:?}", z.residuals))?;
            ensure((z.z.coeff(n - 1).re + n as f64 * sigma).abs() <= 1e-9, || format!("{tag}: coefficient"))?;
            let sum_y: f64 = z.ys.iter().sum();
            let vieta = if n % 2 == 1 { 2.0 * sum_y + z.alpha } else { 2.0 * sum_y + z.alpha + 1.0 } - n as f64 * sigma;
            ensure(vieta.abs() <= 1e-9, || format!("{tag}: Vieta {vieta:e}"))?;
            let eq = z.equioscillation;
            ensure(eq.ok && eq.count_inner == n && eq.count_outer == 2, || format!("{tag}: equioscillation {eq:?}"))?;
            ensure(z.pell_residual_norm <= 1e-8, || format!("{tag}: Pell {:e}", z.pell_residual_norm))?;
            within(el, 10.0).map_err(|e| format!("{tag}: {e}"))?;
            lines.push(format!("{tag}: ({:.6}, {:.6}) {:.0}ms", z.alpha, z.beta, el.as_secs_f64() * 1e3));
        }
    }
    Ok(lines.join("; "))
}

/// Arc endpoints against the tuple: a bijection with the four points, or
/// with the non-coincident ones for a degenerate tuple.
fn endpoints_match(ends: &[Complex64], points: &[Complex64; 4], degenerate: bool) -> bool {
    let mut targets: Vec<Complex64> = if degenerate {
        points
            .iter()
            .filter(|p| points.iter().filter(|q| (**p - **q).norm() <= 1e-8).count() == 1)
            .copied()
            .collect()
    } else {
        points.to_vec()
    };
    if targets.len() != ends.len() {
        return false;
    }
    for e in ends {
        match targets.iter().position(|t| (t - e).norm() <= 1e-6) {
            Some(i) => {
                targets.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

fn preimage_validity() -> Outcome {
    let start = Instant::now();
    let tol = 1e-9;
    let mut sols: Vec<TnTupleSolution> = exact_solutions(2, 7).into_iter().filter(|s| s.n <= 8).collect();
    let direct = approx_solutions(&(2..=8).collect::<Vec<_>>(), 1, 8, tol);
    let doubled = doublings(&direct.iter().filter(|s| s.n <= 4).cloned().collect::<Vec<_>>(), 8, tol);
    sols.extend(direct);
    sols.extend(doubled);
    let mut worst: f64 = 0.0;
    for s in &sols {
        let t = s.t.to_c64();
        let samples = sample_preimage(&t, 200, 500, 0).map_err(|e| e.to_string())?;
        let tag = format!("n={} {:?}", s.n, s.tuple.points);
        for smp in &samples {
            for z in &smp.roots {
                let r = (t.eval_accurate(z) - smp.t).norm();
                ensure(r <= 1e-9, || format!("{tag}: |T(z)-t| = {r:e} at t={}", smp.t))?;
                worst = worst.max(r);
            }
        }
        let arcs = order_into_arcs(&samples).map_err(|e| format!("{tag}: {e}"))?;
        let want = if s.tuple.degenerate { 1 } else { 2 };
        ensure(arcs.arcs.len() == want, || format!("{tag}: {} arcs, expected {want}", arcs.arcs.len()))?;
        let ends: Vec<Complex64> = arcs.arcs.iter().flat_map(|a| [a.endpoints().0, a.endpoints().1]).collect();
        ensure(endpoints_match(&ends, &s.tuple.approx(), s.tuple.degenerate), || format!("{tag}: arc ends {ends:?}"))?;
    }
    within(start.elapsed(), 30.0)?;
    Ok(format!("{} solutions (n <= 8), worst |T(z)-t| {worst:.1e}", sols.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("endpoint equation matches hand-derived oracle (n=2,3,4)", oracle_equivalence),
        ("power-sum recovery of the v-polynomial", lemma_recovery),
        ("Pell identity for produced solutions", pell_identity),
        ("Chebyshev regressions and composition", chebyshev_regressions),
        ("F_k recurrence vs determinant; generating function", f_dual),
        ("degree, count and homogeneity bounds", corollary_bounds),
        ("Zolotarev suite", zolotarev_suite),
        ("inverse-image sampling", preimage_validity),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
