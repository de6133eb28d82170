//! Sampling of T⁻¹([−1, 1]) by continuation in t, and export of the
//! resulting arcs as CSV or SVG.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::{fmt_f64, Poly};
use crate::rootfind::{aberth, cluster, initial_guesses};

#[derive(Debug, Error)]
pub enum PreimageError {
    #[error("polynomial must have degree >= 1")]
    ConstantPolynomial,
    #[error("grid must have at least 2 points, got {0}")]
    GridTooSmall(usize),
    #[error("cannot chain root tracks into arcs: {0}")]
    Ambiguous(String),
}

#[derive(Clone, Debug)]
pub struct PreimageSample {
    pub t: f64,
    /// One entry per root track, multiplicity included; index i of every
    /// sample belongs to the same track.
    pub roots: Vec<Complex64>,
    /// max |T(z) − t| over the roots, evaluated in extended precision.
    pub residual: f64,
    pub converged: bool,
}

/// Chebyshev points on [−1, 1], increasing, endpoints included.
pub fn chebyshev_grid(grid: usize) -> Vec<f64> {
    let k = (grid - 1) as f64;
    (0..grid)
        .map(|i| match i {
            0 => -1.0,
            _ if i == grid - 1 => 1.0,
            _ => -(std::f64::consts::PI * i as f64 / k).cos(),
        })
        .collect()
}

/// Newton steps with the residual evaluated in extended precision, so the
/// root is refined past the rounding level of plain evaluation.
fn newton_refine(p: &Poly<Complex64>, dp: &Poly<Complex64>, t: f64, z: Complex64) -> Complex64 {
    let shift = |z: &Complex64| p.eval_accurate(z) - t;
    let mut z = z;
    let mut v = shift(&z);
    let mut r = v.norm();
    for _ in 0..6 {
        let d = dp.eval(&z);
        if d.norm() == 0.0 {
            break;
        }
        let next = z - v / d;
        let nv = shift(&next);
        let nr = nv.norm();
        if !(nr < r) {
            break;
        }
        z = next;
        v = nv;
        r = nr;
    }
    z
}

/// Previous roots as starting points, with coincident ones (a double root
/// at t = ±1) pushed apart: Aberth's correction is undefined for equal
/// iterates. A double root splits like sqrt(Δt).
fn separate_starts(prev: &[Complex64], dt: f64) -> Vec<Complex64> {
    let scale = prev.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let delta = 0.1 * dt.sqrt() * scale;
    // a tiny imaginary nudge lets real iterates leave the real axis
    let mut out: Vec<Complex64> = prev.iter().map(|z| z + Complex64::new(0.0, 1e-9 * scale)).collect();
    for i in 1..out.len() {
        let crowded = (0..i).filter(|&j| (out[i] - out[j]).norm() <= 1e-6 * scale).count();
        if crowded > 0 {
            out[i] += Complex64::from_polar(delta, 0.7 + 2.1 * crowded as f64 + 0.3 * i as f64);
        }
    }
    out
}

/// Reorder `new` so that entry i is the point closest to `prev[i]`, pairing
/// the globally closest remaining pair first.
fn match_tracks(prev: &[Complex64], new: &[Complex64]) -> Vec<Complex64> {
    let n = prev.len();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (i, p) in prev.iter().enumerate() {
        for (j, q) in new.iter().enumerate() {
            pairs.push(((p - q).norm(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let (mut used_i, mut used_j) = (vec![false; n], vec![false; n]);
    for (_, i, j) in pairs {
        if !used_i[i] && !used_j[j] {
            out[i] = new[j];
            used_i[i] = true;
            used_j[j] = true;
        }
    }
    out
}

/// Roots of T(z) = t on a Chebyshev grid, each solve warm-started from the
/// previous one so that root i traces a continuous track.
pub fn sample_preimage(
    t_poly: &Poly<Complex64>,
    grid: usize,
    max_iter: usize,
    seed: u64,
) -> Result<Vec<PreimageSample>, PreimageError> {
    let n = t_poly.degree().filter(|&d| d >= 1).ok_or(PreimageError::ConstantPolynomial)?;
    if grid < 2 {
        return Err(PreimageError::GridTooSmall(grid));
    }
    let dp = t_poly.derivative();
    let mut prev: Option<Vec<Complex64>> = None;
    let mut last_t = -1.0;
    let mut out = Vec::with_capacity(grid);
    for t in chebyshev_grid(grid) {
        let q = t_poly - &Poly::constant(Complex64::new(t, 0.0));
        let init = match &prev {
            Some(p) => separate_starts(p, (t - last_t).abs()),
            None => initial_guesses(&q, seed),
        };
        last_t = t;
        let (mut raw, mut converged) = aberth(&q, &init, max_iter);
        if !converged && prev.is_some() {
            // Warm starts can stall, e.g. real iterates of a real polynomial
            // whose roots have just left the real axis.
            (raw, converged) = aberth(&q, &initial_guesses(&q, seed), max_iter);
        }
        let refined: Vec<Complex64> = raw.iter().map(|&z| newton_refine(t_poly, &dp, t, z)).collect();
        let roots = match &prev {
            Some(p) => match_tracks(p, &refined),
            None => refined,
        };
        debug_assert_eq!(roots.len(), n);
        let residual = roots.iter().map(|z| (t_poly.eval_accurate(z) - t).norm()).fold(0.0, |a, b| if b.is_nan() { b } else { a.max(b) });
        prev = Some(roots.clone());
        out.push(PreimageSample { t, roots, residual, converged });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Arc {
    pub points: Vec<Complex64>,
    /// Parameter value of each point.
    pub ts: Vec<f64>,
}

impl Arc {
    pub fn endpoints(&self) -> (Complex64, Complex64) {
        (self.points[0], *self.points.last().expect("non-empty arc"))
    }
}

#[derive(Clone, Debug)]
pub struct ArcSet {
    pub arcs: Vec<Arc>,
    /// Arc index of each root track.
    pub track_arc: Vec<usize>,
}

/// Chains root tracks into maximal polylines. Tracks meeting at a double
/// zero of T² − 1 (an interior extremal point) are joined there; the free
/// ends are the simple zeros, i.e. the tuple's endpoints.
pub fn order_into_arcs(samples: &[PreimageSample]) -> Result<ArcSet, PreimageError> {
    let (first, last) = match (samples.first(), samples.last()) {
        (Some(f), Some(l)) if samples.len() >= 2 => (f, l),
        _ => return Err(PreimageError::Ambiguous("need at least two samples".into())),
    };
    let n = first.roots.len();
    let scale = samples
        .iter()
        .flat_map(|s| s.roots.iter())
        .map(|z| z.norm())
        .fold(1.0, f64::max);
    let radius = 1e-5 * scale;
    // partner[side][track] = the track sharing that end, if any.
    let mut partner = [vec![None; n], vec![None; n]];
    for (side, sample) in [first, last].into_iter().enumerate() {
        let pts = &sample.roots;
        for i in 0..n {
            let near: Vec<usize> = (0..n).filter(|&j| j != i && (pts[i] - pts[j]).norm() <= radius).collect();
            match near.len() {
                0 => {}
                1 => partner[side][i] = Some(near[0]),
                _ => {
                    return Err(PreimageError::Ambiguous(format!(
                        "{} tracks meet at t = {}",
                        near.len() + 1,
                        sample.t
                    )))
                }
            }
        }
        if cluster(pts, radius).iter().any(|&(_, k)| k > 2) {
            return Err(PreimageError::Ambiguous(format!("zero of multiplicity > 2 at t = {}", sample.t)));
        }
    }
    let mut track_arc = vec![usize::MAX; n];
    let mut arcs = Vec::new();
    for start in 0..n {
        for start_side in 0..2 {
            if track_arc[start] != usize::MAX || partner[start_side][start].is_some() {
                continue;
            }
            let id = arcs.len();
            let mut arc = Arc { points: Vec::new(), ts: Vec::new() };
            let (mut track, mut side) = (start, start_side);
            loop {
                if track_arc[track] != usize::MAX {
                    return Err(PreimageError::Ambiguous("track revisited".into()));
                }
                track_arc[track] = id;
                let iter: Box<dyn Iterator<Item = &PreimageSample>> =
                    if side == 0 { Box::new(samples.iter()) } else { Box::new(samples.iter().rev()) };
                for (k, s) in iter.enumerate() {
                    if k == 0 && !arc.points.is_empty() {
                        continue;
                    }
                    arc.points.push(s.roots[track]);
                    arc.ts.push(s.t);
                }
                let other = 1 - side;
                match partner[other][track] {
                    Some(next) => {
                        track = next;
                        side = other;
                    }
                    None => break,
                }
            }
            arcs.push(arc);
        }
    }
    if track_arc.contains(&usize::MAX) {
        return Err(PreimageError::Ambiguous("closed loop of tracks".into()));
    }
    Ok(ArcSet { arcs, track_arc })
}

/// One polyline per raw track, for when chaining fails.
pub fn tracks_as_arcs(samples: &[PreimageSample]) -> ArcSet {
    let n = samples.first().map_or(0, |s| s.roots.len());
    let arcs = (0..n)
        .map(|i| Arc { points: samples.iter().map(|s| s.roots[i]).collect(), ts: samples.iter().map(|s| s.t).collect() })
        .collect();
    ArcSet { arcs, track_arc: (0..n).collect() }
}

/// `t,re,im,arc_id` rows, one per sampled root. Without an arc set the
/// track index is used as the id.
pub fn emit_csv(samples: &[PreimageSample], arcs: Option<&ArcSet>) -> String {
    let mut out = String::from("t,re,im,arc_id\n");
    for s in samples {
        for (i, z) in s.roots.iter().enumerate() {
            let id = arcs.map_or(i, |a| a.track_arc[i]);
            let _ = writeln!(out, "{},{},{},{}", fmt_f64(s.t), fmt_f64(z.re), fmt_f64(z.im), id);
        }
    }
    out
}

/// A static SVG with one path per arc; the imaginary axis points up.
pub fn emit_svg(arcs: &[Arc], width: u32, height: u32) -> String {
    let pts = arcs.iter().flat_map(|a| a.points.iter());
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for z in pts {
        x0 = x0.min(z.re);
        x1 = x1.max(z.re);
        y0 = y0.min(-z.im);
        y1 = y1.max(-z.im);
    }
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let (w, h) = ((x1 - x0).max(1e-3 * span), (y1 - y0).max(1e-3 * span));
    let (mx, my) = (0.05 * w, 0.05 * h);
    let (vx, vy, vw, vh) = (x0 - mx, y0 - my, w + 2.0 * mx, h + 2.0 * my);
    let (vx, vy) = (vx - (w - (x1 - x0)) / 2.0, vy - (h - (y1 - y0)) / 2.0);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="{} {} {} {}">"#,
        vx, vy, vw, vh
    );
    let colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];
    for (i, arc) in arcs.iter().enumerate() {
        let mut d = String::new();
        for (k, z) in arc.points.iter().enumerate() {
            let _ = write!(d, "{}{} {} ", if k == 0 { "M" } else { "L" }, z.re, -z.im);
        }
        let _ = writeln!(
            out,
            r#"  <path d="{}" fill="none" stroke="{}" stroke-width="2" vector-effect="non-scaling-stroke"/>"#,
            d.trim_end(),
            colors[i % colors.len()]
        );
    }
    out.push_str("</svg>\n");
    out
}
