//! The Lobachevsky function `Λ(x) = -∫₀ˣ log|2 sin t| dt`.

use std::sync::OnceLock;

use num_traits::{Float, FloatConst};
use serde::{Deserialize, Serialize};

const SERIES_TERMS: usize = 40;

/// `ζ(2k) / (k (2k+1))` for `k = 1..=SERIES_TERMS`.
fn clausen_coefficients() -> &'static [f64; SERIES_TERMS] {
    static COEFFS: OnceLock<[f64; SERIES_TERMS]> = OnceLock::new();
    COEFFS.get_or_init(|| {
        let mut out = [0.0; SERIES_TERMS];
        for (i, c) in out.iter_mut().enumerate() {
            let k = (i + 1) as f64;
            *c = zeta_even(i + 1) / (k * (2.0 * k + 1.0));
        }
        out
    })
}

/// `ζ(2k)`: direct sum plus an Euler-Maclaurin tail.
fn zeta_even(k: usize) -> f64 {
    if k == 1 {
        return std::f64::consts::PI.powi(2) / 6.0;
    }
    let s = 2.0 * k as f64;
    const N: usize = 64;
    let head: f64 = (1..N).rev().map(|n| (n as f64).powf(-s)).sum();
    let n = N as f64;
    let tail = n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s / 12.0 * n.powf(-s - 1.0)
        - s * (s + 1.0) * (s + 2.0) / 720.0 * n.powf(-s - 3.0);
    head + tail
}

/// `Λ(x)` for any finite `x`.
///
/// Evaluated as `Cl₂(2x)/2` after reducing `x` modulo `π`, using
/// `Cl₂(θ) = θ - θ log|θ| + Σ ζ(2k) θ (θ/2π)^{2k} / (k(2k+1))`, which
/// converges at least like `4^{-k}` on `|θ| ≤ π`.
pub fn lobachevsky<F: Float + FloatConst>(x: F) -> F {
    let pi = F::PI();
    let reduced = x - pi * (x / pi).round();
    let theta = reduced + reduced;
    if theta == F::zero() {
        return F::zero();
    }
    let u = theta / (pi + pi);
    let u2 = u * u;
    let mut power = u2;
    let mut series = F::zero();
    for &c in clausen_coefficients() {
        let term = F::from(c).unwrap() * power;
        series = series + term;
        if term < F::epsilon() * F::from(1e-3).unwrap() {
            break;
        }
        power = power * u2;
    }
    let cl2 = theta - theta * theta.abs().ln() + theta * series;
    cl2 / (F::one() + F::one())
}

/// Volumes of the regular ideal tetrahedron and octahedron.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeometricConstants {
    pub v3: f64,
    pub v8: f64,
}

pub fn constants() -> GeometricConstants {
    use std::f64::consts::PI;
    GeometricConstants {
        v3: 2.0 * lobachevsky(PI / 6.0),
        v8: 8.0 * lobachevsky(PI / 4.0),
    }
}

/// `v₈ + 8Λ(π/8)`, the leading term of the 6j growth bound.
pub fn sixj_growth_constant() -> f64 {
    constants().v8 + 8.0 * lobachevsky(std::f64::consts::PI / 8.0)
}
