//! Numeric maximization of the volume-type functions `v(α,β,γ)` and
//! `g(Z, A₁..A₆)` built from the Lobachevsky function.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lobachevsky::{constants, lobachevsky};
use crate::sixj::{FACE_SLOTS, QUAD_SLOTS};

pub const REFINEMENT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_SEED: u64 = 0x7643_a11c_e5ed;
pub const DEFAULT_STARTS: usize = 10_000;
/// Grid divisions of `[0, π)` per coordinate in the scan for `v`.
pub const V_GRID: usize = 200;

const V_MATCH_TOLERANCE: f64 = 1e-5;
const G_MATCH_TOLERANCE: f64 = 1e-3;
const MAX_SWEEPS: usize = 5_000;
const INV_PHI: f64 = 0.618_033_988_749_894_9;

fn lob(x: f64) -> f64 {
    lobachevsky(x)
}

pub fn v_func(alpha: f64, beta: f64, gamma: f64) -> f64 {
    0.5 * (lob(alpha + beta + gamma)
        - lob(beta + gamma - alpha)
        - lob(alpha + gamma - beta)
        - lob(alpha + beta - gamma))
}

/// Half sums of `a` over the four faces.
pub fn face_half_sums(a: &[f64; 6]) -> [f64; 4] {
    FACE_SLOTS.map(|f| 0.5 * f.iter().map(|&s| a[s]).sum::<f64>())
}

/// Half sums of `a` over the three quadrilaterals.
pub fn quad_half_sums(a: &[f64; 6]) -> [f64; 3] {
    QUAD_SLOTS.map(|q| 0.5 * q.iter().map(|&s| a[s]).sum::<f64>())
}

pub fn g_func(z: f64, a: &[f64; 6]) -> f64 {
    let u: f64 = face_half_sums(a).iter().map(|&u| lob(z - u)).sum();
    let v: f64 = quad_half_sums(a).iter().map(|&v| lob(v - z)).sum();
    u + v - lob(z)
}

fn g_point(x: &[f64]) -> f64 {
    g_func(x[0], &[x[1], x[2], x[3], x[4], x[5], x[6]])
}

/// Analytic partial derivatives of `g` at `(Z, A)`; `None` when an argument
/// of Λ is within `eps` of a multiple of π, where Λ' is unbounded.
pub fn g_gradient(z: f64, a: &[f64; 6], eps: f64) -> Option<[f64; 7]> {
    let u = face_half_sums(a);
    let v = quad_half_sums(a);
    let log2sin = |x: f64| {
        let s = (2.0 * x.sin()).abs();
        (s > 2.0 * eps).then(|| s.ln())
    };
    let lu: Vec<f64> = u.iter().map(|&u| log2sin(z - u)).collect::<Option<_>>()?;
    let lv: Vec<f64> = v.iter().map(|&v| log2sin(v - z)).collect::<Option<_>>()?;
    let lz = log2sin(z)?;
    let mut grad = [0.0; 7];
    grad[0] = -lu.iter().sum::<f64>() + lv.iter().sum::<f64>() + lz;
    for (i, g) in grad.iter_mut().skip(1).enumerate() {
        let faces: f64 = FACE_SLOTS
            .iter()
            .zip(&lu)
            .filter(|(f, _)| f.contains(&i))
            .map(|(_, l)| l)
            .sum();
        let quads: f64 = QUAD_SLOTS
            .iter()
            .zip(&lv)
            .filter(|(q, _)| q.contains(&i))
            .map(|(_, l)| l)
            .sum();
        *g = 0.5 * (faces - quads);
    }
    Some(grad)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizationReport {
    pub best_value: f64,
    pub best_point: Vec<f64>,
    pub starts: usize,
    pub refinement_tolerance: f64,
    pub target: f64,
    pub matches_target: bool,
    pub seed: Option<u64>,
    /// Starts whose coordinate ascent met the tolerance.
    pub converged: usize,
    /// Largest critical-point residual over converged non-singular maxima.
    pub critical_residual: Option<f64>,
    /// Converged maxima sitting on a singularity of Λ'.
    pub singular: usize,
}

struct Refined {
    x: Vec<f64>,
    value: f64,
    converged: bool,
}

fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// One-dimensional maximization near `x0`: bracket by step doubling, then
/// golden section.
fn line_max(
    f: &impl Fn(f64) -> f64,
    x0: f64,
    f0: f64,
    h: f64,
    bounds: Option<(f64, f64)>,
    tol: f64,
) -> (f64, f64) {
    let clamp = |x: f64| bounds.map_or(x, |(lo, hi)| x.clamp(lo, hi));
    let (left, right) = (clamp(x0 - h), clamp(x0 + h));
    let (fl, fr) = (f(left), f(right));
    let (lo, hi) = if f0 >= fl && f0 >= fr {
        (left, right)
    } else {
        let dir = if fr > fl { 1.0 } else { -1.0 };
        let (mut prev, mut mid, mut fmid) = if dir > 0.0 {
            (x0, right, fr)
        } else {
            (x0, left, fl)
        };
        let mut step = 2.0 * h;
        loop {
            let next = clamp(mid + dir * step);
            if next == mid || step > 4.0 * PI {
                break (prev.min(mid), prev.max(mid));
            }
            let fnext = f(next);
            if fnext <= fmid {
                break (prev.min(next), prev.max(next));
            }
            prev = mid;
            mid = next;
            fmid = fnext;
            step *= 2.0;
        }
    };
    let (x, fx) = golden_max(f, lo, hi, tol);
    let candidates = [(x0, f0), (left, fl), (right, fr), (x, fx)];
    candidates
        .into_iter()
        .fold((x0, f0), |best, c| if c.1 > best.1 { c } else { best })
}

fn coordinate_ascent(
    f: &impl Fn(&[f64]) -> f64,
    start: &[f64],
    bounds: Option<(f64, f64)>,
    tol: f64,
) -> Refined {
    let mut x = start.to_vec();
    let mut value = f(&x);
    let mut h: f64 = 0.25;
    for _ in 0..MAX_SWEEPS {
        let mut moved = 0.0f64;
        for i in 0..x.len() {
            let line = |t: f64| {
                let mut y = x.clone();
                y[i] = t;
                f(&y)
            };
            let line_tol = (0.01 * h).max(0.1 * tol);
            let (xi, fi) = line_max(&line, x[i], value, h, bounds, line_tol);
            moved = moved.max((xi - x[i]).abs());
            x[i] = xi;
            value = fi;
        }
        if moved < tol {
            return Refined {
                x,
                value,
                converged: true,
            };
        }
        h = (2.0 * moved).clamp(tol, 0.5);
    }
    Refined {
        x,
        value,
        converged: false,
    }
}

/// The two families of maximizers of `v`, up to π-periodicity and
/// permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VFamily {
    AllThreeQuarter,
    TwoQuarterOneThreeQuarter,
}

/// Which maximizing family `point` lies in, within `tol` mod π.
pub fn v_attainment_family(point: &[f64], tol: f64) -> Option<VFamily> {
    let near = |x: f64, t: f64| {
        let d = (x - t).rem_euclid(PI);
        d.min(PI - d) <= tol
    };
    let quarters = point.iter().filter(|&&x| near(x, PI / 4.0)).count();
    let three = point.iter().filter(|&&x| near(x, 3.0 * PI / 4.0)).count();
    match (quarters, three) {
        (0, 3) => Some(VFamily::AllThreeQuarter),
        (2, 1) => Some(VFamily::TwoQuarterOneThreeQuarter),
        _ => None,
    }
}

fn scan_v(n: usize) -> Vec<(f64, [usize; 3])> {
    let table: Vec<f64> = (0..V_GRID)
        .map(|k| lob(k as f64 * PI / V_GRID as f64))
        .collect();
    let l = |k: i64| table[k.rem_euclid(V_GRID as i64) as usize];
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n as i64 {
        for j in 0..n as i64 {
            for k in 0..n as i64 {
                let v = 0.5 * (l(i + j + k) - l(j + k - i) - l(i + k - j) - l(i + j - k));
                out.push((v, [i as usize, j as usize, k as usize]));
            }
        }
    }
    out
}

fn maximize_v_on(n: usize, bounds: Option<(f64, f64)>) -> OptimizationReport {
    let mut grid = scan_v(n);
    let order =
        |a: &(f64, [usize; 3]), b: &(f64, [usize; 3])| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1));
    grid.select_nth_unstable_by(63, order);
    grid.truncate(64);
    grid.sort_by(order);
    let step = PI / V_GRID as f64;
    let f = |x: &[f64]| v_func(x[0], x[1], x[2]);
    let refined: Vec<Refined> = grid
        .iter()
        .take(64)
        .map(|(_, idx)| {
            coordinate_ascent(
                &f,
                &idx.map(|i| i as f64 * step),
                bounds,
                REFINEMENT_TOLERANCE,
            )
        })
        .collect();
    let converged = refined.iter().filter(|r| r.converged).count();
    let best = refined
        .into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("nonempty grid");
    let target = constants().v8 / 4.0;
    OptimizationReport {
        best_value: best.value,
        best_point: best.x,
        starts: 64,
        refinement_tolerance: REFINEMENT_TOLERANCE,
        target,
        matches_target: (best.value - target).abs() <= V_MATCH_TOLERANCE,
        seed: None,
        converged,
        critical_residual: None,
        singular: 0,
    }
}

/// Maximum of `v` over `[0,π)³`: a grid scan with step `π/200`, then
/// coordinate ascent from the best grid points.
pub fn maximize_v() -> OptimizationReport {
    maximize_v_on(V_GRID, None)
}

/// The same search confined to `[0,π/2]³`.
pub fn maximize_v_restricted() -> OptimizationReport {
    let mut report = maximize_v_on(V_GRID / 2 + 1, Some((0.0, PI / 2.0)));
    report.matches_target = false;
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GOptions {
    pub starts: usize,
    pub seed: u64,
    pub threads: usize,
}

impl Default for GOptions {
    fn default() -> Self {
        GOptions {
            starts: DEFAULT_STARTS,
            seed: DEFAULT_SEED,
            threads: 1,
        }
    }
}

/// Multi-start coordinate ascent for `g` from uniform starts in `[0,2π)⁷`.
pub fn maximize_g() -> OptimizationReport {
    maximize_g_with(&GOptions::default()).expect("default options are valid")
}

pub fn maximize_g_with(opts: &GOptions) -> Result<OptimizationReport> {
    if opts.starts == 0 || opts.threads == 0 {
        return Err(Error::Domain("starts and threads must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let starts: Vec<[f64; 7]> = (0..opts.starts)
        .map(|_| std::array::from_fn(|_| rng.gen_range(0.0..2.0 * PI)))
        .collect();
    let run = |s: &[f64; 7]| coordinate_ascent(&g_point, s, None, REFINEMENT_TOLERANCE);
    let refined: Vec<Refined> = if opts.threads == 1 {
        starts.iter().map(run).collect()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Consistency(format!("thread pool: {e}")))?
            .install(|| starts.par_iter().map(run).collect())
    };

    let mut converged = 0;
    let mut singular = 0;
    let mut residual: Option<f64> = None;
    for r in refined.iter().filter(|r| r.converged) {
        converged += 1;
        let a = [r.x[1], r.x[2], r.x[3], r.x[4], r.x[5], r.x[6]];
        match g_gradient(r.x[0], &a, 1e-6) {
            Some(grad) => {
                let m = grad.iter().fold(0.0f64, |m, g| m.max(g.abs()));
                residual = Some(residual.map_or(m, |x| x.max(m)));
            }
            None => singular += 1,
        }
    }
    let best = refined
        .into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("at least one start");
    let target = 8.0 * lob(PI / 8.0);
    let mut point = best.x;
    point[0] = point[0].rem_euclid(PI);
    for a in &mut point[1..] {
        *a = a.rem_euclid(2.0 * PI);
    }
    Ok(OptimizationReport {
        best_value: best.value,
        best_point: point,
        starts: opts.starts,
        refinement_tolerance: REFINEMENT_TOLERANCE,
        target,
        matches_target: (best.value - target).abs() <= G_MATCH_TOLERANCE,
        seed: Some(opts.seed),
        converged,
        critical_residual: residual,
        singular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: f64 = PI / 4.0;

    #[test]
    fn v_examples() {
        let target = constants().v8 / 4.0;
        assert_eq!(v_func(0.0, 0.0, 0.0), 0.0);
        assert!((v_func(3.0 * Q, 3.0 * Q, 3.0 * Q) - target).abs() < 1e-12);
        assert!((v_func(Q, Q, 3.0 * Q) - target).abs() < 1e-12);
        assert!((target - 0.915965).abs() < 1e-6);
    }

    #[test]
    fn v_is_symmetric_and_periodic() {
        let pts = [0.3, 1.1, 2.9, 0.05, 1.7];
        for &a in &pts {
            for &b in &pts {
                for &c in &pts {
                    let v = v_func(a, b, c);
                    assert!((v - v_func(b, c, a)).abs() < 1e-12);
                    assert!((v - v_func(c, a, b)).abs() < 1e-12);
                    assert!((v - v_func(b, a, c)).abs() < 1e-12);
                    assert!((v - v_func(a + PI, b, c)).abs() < 1e-10);
                    assert!((v - v_func(a, b - PI, c + 2.0 * PI)).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_func(0.0, &[0.0; 6]), 0.0);
        let z = 7.0 * PI / 8.0;
        assert!((g_func(z, &[PI / 2.0; 6]) - 8.0 * lob(PI / 8.0)).abs() < 1e-12);
        assert!((g_func(z, &[PI / 2.0; 6]) - 3.927488).abs() < 1e-6);
        assert!((g_func(z, &[Q; 6]) + 0.2949).abs() < 1e-3);
        assert!((g_func(z, &[Q; 6]) - (lob(PI / 8.0) - 3.0 * lob(3.0 * PI / 8.0))).abs() < 1e-12);
    }

    #[test]
    fn g_has_opposite_pair_symmetry() {
        let a = [0.4, 1.3, 2.2, 0.9, 2.8, 1.6];
        let z = 1.234;
        let base = g_func(z, &a);
        let pairs = [[0, 3], [1, 4], [2, 5]];
        for perm in [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ] {
            let mut b = [0.0; 6];
            for (dst, &src) in perm.iter().enumerate() {
                b[pairs[dst][0]] = a[pairs[src][0]];
                b[pairs[dst][1]] = a[pairs[src][1]];
            }
            assert!((g_func(z, &b) - base).abs() < 1e-12);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let z = 1.1;
        let a = [0.4, 1.3, 2.2, 0.9, 2.8, 1.6];
        let grad = g_gradient(z, &a, 1e-6).unwrap();
        let h = 1e-6;
        let mut x = vec![z];
        x.extend_from_slice(&a);
        for (i, g) in grad.iter().enumerate() {
            let (mut up, mut dn) = (x.clone(), x.clone());
            up[i] += h;
            dn[i] -= h;
            let fd = (g_point(&up) - g_point(&dn)) / (2.0 * h);
            assert!((fd - g).abs() < 1e-6, "coordinate {i}: {fd} vs {g}");
        }
        let opt = g_gradient(7.0 * PI / 8.0, &[PI / 2.0; 6], 1e-6).unwrap();
        assert!(opt.iter().all(|g| g.abs() < 1e-12));
        assert!(g_gradient(0.0, &[0.0; 6], 1e-6).is_none());
    }

    #[test]
    fn maximize_v_finds_known_maximum() {
        let r = maximize_v();
        assert!(r.matches_target);
        assert!((r.best_value - 0.915965).abs() < 1e-5);
        assert!(r.best_value <= r.target + r.refinement_tolerance);
        assert!(v_attainment_family(&r.best_point, 1e-5).is_some());
        let restricted = maximize_v_restricted();
        assert!(restricted.best_value < r.best_value - 0.1);
    }

    #[test]
    fn attainment_families() {
        assert_eq!(
            v_attainment_family(&[3.0 * Q; 3], 1e-9),
            Some(VFamily::AllThreeQuarter)
        );
        assert_eq!(
            v_attainment_family(&[Q, 3.0 * Q + PI, Q], 1e-9),
            Some(VFamily::TwoQuarterOneThreeQuarter)
        );
        assert_eq!(v_attainment_family(&[Q, Q, Q], 1e-9), None);
    }

    #[test]
    fn maximize_g_is_deterministic_and_thread_independent() {
        let one = maximize_g_with(&GOptions {
            starts: 200,
            threads: 1,
            seed: 7,
        })
        .unwrap();
        let three = maximize_g_with(&GOptions {
            starts: 200,
            threads: 3,
            seed: 7,
        })
        .unwrap();
        assert_eq!(one, three);
        assert!(one.best_value <= 8.0 * lob(PI / 8.0) + one.refinement_tolerance);
        assert!(maximize_g_with(&GOptions {
            starts: 0,
            ..Default::default()
        })
        .is_err());
    }
}
