//! Growth rates `(2π/r) log|TV_r|` and numeric checks of the growth bounds.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::Triangulation;
use crate::error::{Error, Result};
use crate::lobachevsky::{constants, lobachevsky, sixj_growth_constant};
use crate::qarith::{FactorialTable, Level};
use crate::sixj::{
    admissible_raw, is_admissible_six_tuple, relabel, tetrahedral_relabelings, SixJEvaluator,
    SixTuple,
};
use crate::statesum::{turaev_viro, StateSumResult, TvOptions};

/// Universal constant in the Gromov-norm bound `LTV(M) ≤ C ||M||`.
pub const GROMOV_NORM_CONSTANT: f64 = 8.3581e9;

/// Coefficient of `v₈ t` in the bound for a triangulation with `t` tetrahedra.
pub const TETRAHEDRA_COEFFICIENT: f64 = 2.08;

/// Default slack for the 6j growth check.
pub const SIXJ_SLACK: f64 = 0.5;

/// Default largest level for the exhaustive 6j scan.
pub const SIXJ_SCAN_CAP: u32 = 31;

/// Recorded bound on `max_n |log|{n}!| + (r/2π)Λ(2πn/r)| / log r`.
pub const FACTORIAL_RATIO_BOUND: f64 = 1.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthPoint {
    pub r: u32,
    pub tv: f64,
    /// `(2π/r) log|TV_r|`; absent when `TV_r = 0`.
    pub a_r: Option<f64>,
}

/// Least-squares fit `a_r ≈ A + B log(r)/r + C/r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub residual_norm: f64,
}

impl GrowthFit {
    pub fn predict(&self, r: f64) -> f64 {
        self.a + self.b * r.ln() / r + self.c / r
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthSeries {
    pub points: Vec<GrowthPoint>,
    pub fit: Option<GrowthFit>,
    /// The fitted asymptote `A`; an estimate, not a certified limit.
    pub ltv_estimate: Option<f64>,
}

pub fn growth_rate(r: u32, log_abs_tv: f64) -> f64 {
    2.0 * PI / r as f64 * log_abs_tv
}

impl GrowthSeries {
    /// Builds a series from state-sum results, sorted by `r`.
    pub fn from_results(results: &[StateSumResult]) -> Self {
        let mut points: Vec<GrowthPoint> = results
            .iter()
            .map(|x| GrowthPoint {
                r: x.r.r(),
                tv: x.value,
                a_r: (!x.log_value.is_zero()).then(|| growth_rate(x.r.r(), x.log_value.log_mag)),
            })
            .collect();
        points.sort_by_key(|p| p.r);
        Self::from_points(points)
    }

    /// Builds a series from plain `(r, TV_r)` values.
    pub fn from_values(values: &[(u32, f64)]) -> Self {
        let mut points: Vec<GrowthPoint> = values
            .iter()
            .map(|&(r, tv)| GrowthPoint {
                r,
                tv,
                a_r: (tv != 0.0).then(|| growth_rate(r, tv.abs().ln())),
            })
            .collect();
        points.sort_by_key(|p| p.r);
        Self::from_points(points)
    }

    fn from_points(points: Vec<GrowthPoint>) -> Self {
        let data: Vec<(f64, f64)> = points
            .iter()
            .filter_map(|p| p.a_r.map(|a| (p.r as f64, a)))
            .collect();
        let fit = fit_growth(&data);
        GrowthSeries {
            points,
            ltv_estimate: fit.map(|f| f.a),
            fit,
        }
    }

    pub fn max_rate(&self) -> Option<f64> {
        self.points.iter().filter_map(|p| p.a_r).reduce(f64::max)
    }

    pub fn rate_at(&self, r: u32) -> Option<f64> {
        self.points.iter().find(|p| p.r == r).and_then(|p| p.a_r)
    }

    /// Whether `a_r` strictly increases over the points with `lo ≤ r ≤ hi`.
    pub fn is_increasing_between(&self, lo: u32, hi: u32) -> bool {
        let rates: Vec<Option<f64>> = self
            .points
            .iter()
            .filter(|p| (lo..=hi).contains(&p.r))
            .map(|p| p.a_r)
            .collect();
        rates
            .windows(2)
            .all(|w| matches!((w[0], w[1]), (Some(x), Some(y)) if x < y))
    }
}

/// Ordinary least squares for `A + B log(r)/r + C/r`; needs four points.
pub fn fit_growth(data: &[(f64, f64)]) -> Option<GrowthFit> {
    if data.len() < 4 {
        return None;
    }
    let x = DMatrix::from_fn(data.len(), 3, |i, j| {
        let r = data[i].0;
        match j {
            0 => 1.0,
            1 => r.ln() / r,
            _ => 1.0 / r,
        }
    });
    let y = DVector::from_iterator(data.len(), data.iter().map(|d| d.1));
    let beta = x.clone().svd(true, true).solve(&y, 1e-14).ok()?;
    let residual_norm = (&x * &beta - &y).norm();
    Some(GrowthFit {
        a: beta[0],
        b: beta[1],
        c: beta[2],
        residual_norm,
    })
}

/// Odd levels from `r_min` to `r_max` inclusive, each at least 5.
pub fn level_range(r_min: i64, r_max: i64) -> Result<Vec<Level>> {
    let lo = Level::with_min(r_min, 5)?;
    let hi = Level::with_min(r_max, 5)?;
    if lo.r() > hi.r() {
        return Err(Error::InvalidRange(format!("{r_min}:{r_max} is empty")));
    }
    (lo.r()..=hi.r())
        .step_by(2)
        .map(|r| Level::new(r as i64))
        .collect()
}

/// `TV_r` at every odd `r` in the range, with the fitted asymptote.
pub fn growth_series(
    tri: &Triangulation,
    r_min: i64,
    r_max: i64,
    opts: &TvOptions,
) -> Result<GrowthSeries> {
    let results = level_range(r_min, r_max)?
        .into_iter()
        .map(|l| turaev_viro(tri, l, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(GrowthSeries::from_results(&results))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Satisfied,
    Violated,
    Skipped,
    /// Reported only; never fails a run.
    Informational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub name: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub tolerance: f64,
    /// `rhs + tolerance - lhs`
    pub slack: Option<f64>,
    pub status: BoundStatus,
    pub note: String,
}

impl BoundEntry {
    pub fn check(name: &str, lhs: f64, rhs: f64, tolerance: f64, note: impl Into<String>) -> Self {
        let ok = lhs <= rhs + tolerance;
        BoundEntry {
            name: name.into(),
            lhs: Some(lhs),
            rhs: Some(rhs),
            tolerance,
            slack: Some(rhs + tolerance - lhs),
            status: if ok {
                BoundStatus::Satisfied
            } else {
                BoundStatus::Violated
            },
            note: note.into(),
        }
    }

    fn skipped(name: &str, note: impl Into<String>) -> Self {
        BoundEntry {
            name: name.into(),
            lhs: None,
            rhs: None,
            tolerance: 0.0,
            slack: None,
            status: BoundStatus::Skipped,
            note: note.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status != BoundStatus::Violated
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn all_satisfied(&self) -> bool {
        self.entries.iter().all(BoundEntry::passed)
    }

    pub fn entry(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundTolerances {
    /// Absolute tolerance on `a_r ≤ 2.08 v₈ t`.
    pub rate: f64,
    /// Absolute tolerance on the fitted asymptote against `C ||M||`.
    pub ltv: f64,
}

impl Default for BoundTolerances {
    fn default() -> Self {
        BoundTolerances {
            rate: 1e-9,
            ltv: 0.1,
        }
    }
}

/// Growth bounds applicable to a triangulation and its series.
pub fn bound_report(tri: &Triangulation, series: &GrowthSeries) -> BoundReport {
    bound_report_with(tri, series, &BoundTolerances::default())
}

pub fn bound_report_with(
    tri: &Triangulation,
    series: &GrowthSeries,
    tol: &BoundTolerances,
) -> BoundReport {
    let v = constants();
    let t = tri.tet_count() as f64;
    let mut entries = Vec::new();

    let rhs = TETRAHEDRA_COEFFICIENT * v.v8 * t;
    entries.push(match series.max_rate() {
        Some(max) => BoundEntry::check(
            "tetrahedra",
            max,
            rhs,
            tol.rate,
            format!("max a_r ≤ 2.08·v8·{}", tri.tet_count()),
        ),
        None => BoundEntry::skipped("tetrahedra", "no nonzero points"),
    });

    let norm = tri.metadata().and_then(|m| m.gromov_norm);
    let ltv = series.ltv_estimate.or(series.max_rate());
    entries.push(match (norm, ltv) {
        (Some(n), Some(l)) => BoundEntry::check(
            "gromov_norm",
            l,
            GROMOV_NORM_CONSTANT * n,
            tol.ltv,
            "LTV estimate ≤ C·||M||",
        ),
        (None, _) => BoundEntry::skipped("gromov_norm", "no gromov_norm in metadata"),
        (_, None) => BoundEntry::skipped("gromov_norm", "no nonzero points"),
    });

    entries.push(match (norm, series.ltv_estimate) {
        (Some(n), Some(l)) => BoundEntry {
            name: "volume_conjecture".into(),
            lhs: Some(l),
            rhs: Some(v.v3 * n),
            tolerance: 0.0,
            slack: Some((l - v.v3 * n).abs()),
            status: BoundStatus::Informational,
            note: "|LTV estimate - v3·||M|||".into(),
        },
        _ => BoundEntry::skipped("volume_conjecture", "needs gromov_norm and a fit"),
    });
    BoundReport { entries }
}

/// Deviation of `log|{n}!|` from `-(r/2π)Λ(2πn/r)`, scaled by `log r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorialAsymptotics {
    pub r: u32,
    pub max_ratio: f64,
    pub argmax_n: u32,
}

impl FactorialAsymptotics {
    pub fn to_entry(&self) -> BoundEntry {
        BoundEntry::check(
            &format!("factorial_asymptotics_r{}", self.r),
            self.max_ratio,
            FACTORIAL_RATIO_BOUND,
            0.0,
            format!(
                "max_n |log|{{n}}!| + (r/2π)Λ(2πn/r)| / log r, at n={}",
                self.argmax_n
            ),
        )
    }
}

pub fn check_factorial_asymptotics(lvl: Level) -> Result<FactorialAsymptotics> {
    if lvl.r() < 5 {
        return Err(Error::InvalidLevel {
            got: lvl.r() as i64,
            min: 5,
        });
    }
    let table = FactorialTable::new(lvl);
    let r = lvl.r();
    let rf = r as f64;
    let mut best = (0.0f64, 1u32);
    for n in 1..r {
        let dev = (table.log_abs(n as usize)
            + rf / (2.0 * PI) * lobachevsky(2.0 * PI * n as f64 / rf))
        .abs();
        if dev > best.0 {
            best = (dev, n);
        }
    }
    Ok(FactorialAsymptotics {
        r,
        max_ratio: best.0 / rf.ln(),
        argmax_n: best.1,
    })
}

/// Result of an exhaustive scan of `(2π/r) log|6j|`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SixJGrowthReport {
    pub r: u32,
    pub max_growth: f64,
    pub argmax: [u32; 6],
    pub admissible_tuples: u64,
    /// Distinct symbols evaluated (one per symmetry orbit).
    pub evaluated: u64,
    /// `v₈ + 8Λ(π/8)`
    pub bound: f64,
    pub slack: f64,
    pub satisfied: bool,
    pub v8: f64,
    pub max_minus_v8: f64,
}

impl SixJGrowthReport {
    pub fn to_entry(&self) -> BoundEntry {
        BoundEntry::check(
            &format!("sixj_growth_r{}", self.r),
            self.max_growth,
            self.bound + self.slack,
            0.0,
            format!(
                "max (2π/r) log|6j| at {:?}; {:+.4} against v8",
                self.argmax, self.max_minus_v8
            ),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanOptions {
    pub cap: u32,
    pub slack: f64,
    pub threads: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            cap: SIXJ_SCAN_CAP,
            slack: SIXJ_SLACK,
            threads: 1,
        }
    }
}

struct ScanPart {
    best: f64,
    argmax: [u32; 6],
    admissible: u64,
    evaluated: u64,
}

/// Exhaustive maximum of `(2π/r) log|6j|` over admissible tuples.
///
/// Tuples are generated with face pruning, and only the lexicographically
/// smallest member of each tetrahedral symmetry orbit is evaluated.
pub fn max_sixj_growth(lvl: Level, opts: &ScanOptions) -> Result<SixJGrowthReport> {
    let r = lvl.r();
    if r > opts.cap {
        let estimate = (lvl.color_count() as f64).powi(6);
        return Err(Error::ScanCapExceeded {
            r,
            cap: opts.cap,
            estimate,
        });
    }
    if opts.threads == 0 {
        return Err(Error::Domain("thread count must be at least 1".into()));
    }
    let eval = SixJEvaluator::new(lvl);
    let colors: Vec<u32> = lvl.colors().collect();
    let syms = tetrahedral_relabelings();
    let scan = |a1: u32| -> Result<ScanPart> {
        let mut part = ScanPart {
            best: f64::NEG_INFINITY,
            argmax: [0; 6],
            admissible: 0,
            evaluated: 0,
        };
        for &a2 in &colors {
            for &a3 in &colors {
                if !admissible_raw(a1, a2, a3, r) {
                    continue;
                }
                for &a4 in &colors {
                    for &a5 in &colors {
                        if !admissible_raw(a3, a4, a5, r) {
                            continue;
                        }
                        for &a6 in &colors {
                            if !(admissible_raw(a2, a4, a6, r) && admissible_raw(a1, a5, a6, r)) {
                                continue;
                            }
                            part.admissible += 1;
                            let a = [a1, a2, a3, a4, a5, a6];
                            if syms.iter().any(|p| relabel(&a, p) < a) {
                                continue;
                            }
                            part.evaluated += 1;
                            let v = eval.eval(&a)?.log_abs();
                            if v > part.best {
                                part.best = v;
                                part.argmax = a;
                            }
                        }
                    }
                }
            }
        }
        Ok(part)
    };
    let parts: Vec<ScanPart> = if opts.threads == 1 {
        colors.iter().map(|&c| scan(c)).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Consistency(format!("thread pool: {e}")))?;
        pool.install(|| colors.par_iter().map(|&c| scan(c)).collect::<Result<_>>())?
    };
    let mut total = ScanPart {
        best: f64::NEG_INFINITY,
        argmax: [0; 6],
        admissible: 0,
        evaluated: 0,
    };
    for p in parts {
        total.admissible += p.admissible;
        total.evaluated += p.evaluated;
        if p.best > total.best {
            total.best = p.best;
            total.argmax = p.argmax;
        }
    }
    Ok(report_from(lvl, total, opts.slack))
}

fn report_from(lvl: Level, part: ScanPart, slack: f64) -> SixJGrowthReport {
    let max_growth = growth_rate(lvl.r(), part.best);
    let bound = sixj_growth_constant();
    let v8 = constants().v8;
    SixJGrowthReport {
        r: lvl.r(),
        max_growth,
        argmax: part.argmax,
        admissible_tuples: part.admissible,
        evaluated: part.evaluated,
        bound,
        slack,
        satisfied: max_growth <= bound + slack,
        v8,
        max_minus_v8: max_growth - v8,
    }
}

/// The same maximum from a plain scan of every color vector, with no
/// pruning and no symmetry reduction.
pub fn max_sixj_growth_reference(lvl: Level, slack: f64) -> Result<SixJGrowthReport> {
    let eval = SixJEvaluator::new(lvl);
    let colors: Vec<u32> = lvl.colors().collect();
    let k = colors.len();
    let mut part = ScanPart {
        best: f64::NEG_INFINITY,
        argmax: [0; 6],
        admissible: 0,
        evaluated: 0,
    };
    for idx in 0..k.pow(6) {
        let mut a = [0u32; 6];
        let mut rest = idx;
        for s in (0..6).rev() {
            a[s] = colors[rest % k];
            rest /= k;
        }
        if !is_admissible_six_tuple(&SixTuple::new(a), lvl)? {
            continue;
        }
        part.admissible += 1;
        part.evaluated += 1;
        let v = eval.eval(&a)?.log_abs();
        if v > part.best {
            part.best = v;
            part.argmax = a;
        }
    }
    Ok(report_from(lvl, part, slack))
}

/// `TV_r(M) ≤ ((r-1)/2)^k TV_r(M')` where `M` is obtained from `M'` by
/// cutting along `k` tori (`k = 0` covers Dehn filling).
pub fn check_cutting_inequality(
    m: &StateSumResult,
    m_prime: &StateSumResult,
    tori_cut: u32,
) -> Result<bool> {
    check_cutting_inequality_with(m, m_prime, tori_cut, 1e-9)
}

/// As [`check_cutting_inequality`] with a relative tolerance.
pub fn check_cutting_inequality_with(
    m: &StateSumResult,
    m_prime: &StateSumResult,
    tori_cut: u32,
    rel_tol: f64,
) -> Result<bool> {
    if m.r != m_prime.r {
        return Err(Error::MixedLevels(vec![m.r.r(), m_prime.r.r()]));
    }
    let factor = ((m.r.r() as f64 - 1.0) / 2.0).powi(tori_cut as i32);
    let rhs = factor * m_prime.value;
    Ok(m.value <= rhs + rel_tol * rhs.abs().max(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::builtin;
    use proptest::prelude::*;

    fn lvl(r: i64) -> Level {
        Level::new(r).unwrap()
    }

    #[test]
    fn factorial_deviation_is_logarithmic() {
        let small = check_factorial_asymptotics(lvl(101)).unwrap();
        let large = check_factorial_asymptotics(lvl(1001)).unwrap();
        assert!(large.max_ratio <= 1.5 * small.max_ratio);
        assert!(large.max_ratio <= FACTORIAL_RATIO_BOUND);
        assert_eq!(large.to_entry().status, BoundStatus::Satisfied);
    }

    #[test]
    fn pruned_scan_matches_reference() {
        for r in [5, 7, 9] {
            let fast = max_sixj_growth(lvl(r), &ScanOptions::default()).unwrap();
            let slow = max_sixj_growth_reference(lvl(r), SIXJ_SLACK).unwrap();
            assert_eq!(fast.max_growth, slow.max_growth);
            assert_eq!(fast.admissible_tuples, slow.admissible_tuples);
            assert!(fast.evaluated < fast.admissible_tuples);
        }
    }

    #[test]
    fn scan_is_thread_independent() {
        let one = max_sixj_growth(lvl(15), &ScanOptions::default()).unwrap();
        let four = max_sixj_growth(
            lvl(15),
            &ScanOptions {
                threads: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, four);
        assert!(one.satisfied);
    }

    #[test]
    fn scan_refuses_levels_above_cap() {
        let err = max_sixj_growth(lvl(33), &ScanOptions::default()).unwrap_err();
        assert!(matches!(err, Error::ScanCapExceeded { r: 33, cap: 31, .. }));
        assert!(max_sixj_growth(
            lvl(9),
            &ScanOptions {
                cap: 7,
                ..Default::default()
            }
        )
        .is_err());
    }

    #[test]
    fn fit_recovers_exact_model() {
        let data: Vec<(f64, f64)> = (0..10)
            .map(|i| 5.0 + 2.0 * i as f64)
            .map(|r| (r, 2.0 - 3.0 * r.ln() / r + 0.5 / r))
            .collect();
        let f = fit_growth(&data).unwrap();
        assert!((f.a - 2.0).abs() < 1e-9 && (f.b + 3.0).abs() < 1e-9 && (f.c - 0.5).abs() < 1e-9);
        assert!(f.residual_norm < 1e-10);
        assert!(fit_growth(&data[..3]).is_none());
    }

    #[test]
    fn zero_values_are_excluded() {
        let s = GrowthSeries::from_values(&[(5, 0.0), (7, 2.0), (9, 3.0)]);
        assert_eq!(s.points.len(), 3);
        assert_eq!(s.points[0].a_r, None);
        assert!(s.fit.is_none());
    }

    #[test]
    fn level_range_validation() {
        assert_eq!(level_range(5, 11).unwrap().len(), 4);
        assert!(matches!(level_range(11, 5), Err(Error::InvalidRange(_))));
        assert!(level_range(3, 11).is_err());
        assert!(level_range(6, 11).is_err());
    }

    #[test]
    fn bounds_for_builtins() {
        let opts = TvOptions::default();
        let fig8 = builtin("fig8").unwrap();
        let series = growth_series(&fig8, 5, 15, &opts).unwrap();
        let report = bound_report(&fig8, &series);
        assert!(report.all_satisfied());
        assert_eq!(
            report.entry("gromov_norm").unwrap().status,
            BoundStatus::Satisfied
        );
        assert_eq!(
            report.entry("volume_conjecture").unwrap().status,
            BoundStatus::Informational
        );

        let s3 = builtin("s3_2tet").unwrap();
        let bare = s3.clone().with_metadata(None);
        let report = bound_report(&bare, &growth_series(&s3, 5, 9, &opts).unwrap());
        assert_eq!(
            report.entry("gromov_norm").unwrap().status,
            BoundStatus::Skipped
        );
        assert_eq!(
            report.entry("tetrahedra").unwrap().status,
            BoundStatus::Satisfied
        );
    }

    #[test]
    fn cutting_inequality_on_thickened_torus() {
        let opts = TvOptions::default();
        for r in [5, 7, 9] {
            let l = lvl(r);
            let s2s1 = turaev_viro(&builtin("s2xs1").unwrap(), l, &opts).unwrap();
            let t2i = turaev_viro(&builtin("t2xi").unwrap(), l, &opts).unwrap();
            assert!(check_cutting_inequality(&t2i, &s2s1, 1).unwrap());
            assert!(!check_cutting_inequality(&t2i, &s2s1, 0).unwrap());
        }
        let a = turaev_viro(&builtin("s2xs1").unwrap(), lvl(5), &opts).unwrap();
        let b = turaev_viro(&builtin("s2xs1").unwrap(), lvl(7), &opts).unwrap();
        assert!(matches!(
            check_cutting_inequality(&a, &b, 0),
            Err(Error::MixedLevels(_))
        ));
    }

    proptest! {
        #[test]
        fn scaling_tv_shifts_only_the_c_term(c in 0.01f64..100.0, a in 0.5f64..3.0, b in -2.0f64..2.0) {
            let base: Vec<(u32, f64)> = (0..8u32)
                .map(|i| 5 + 2 * i)
                .map(|r| (r, ((a + b * (r as f64).ln() / r as f64) * r as f64 / (2.0 * PI)).exp()))
                .collect();
            let scaled: Vec<(u32, f64)> = base.iter().map(|&(r, v)| (r, c * v)).collect();
            let f0 = GrowthSeries::from_values(&base).fit.unwrap();
            let f1 = GrowthSeries::from_values(&scaled).fit.unwrap();
            prop_assert!((f0.a - f1.a).abs() < 1e-8);
            prop_assert!((f0.b - f1.b).abs() < 1e-7);
            prop_assert!((f1.c - f0.c - 2.0 * PI * c.ln()).abs() < 1e-7);
        }
    }
}
