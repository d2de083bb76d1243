//! Admissible colorings and the Turaev-Viro state sum.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{ComplexError, Triangulation};
use crate::error::{Error, Result};
use crate::qarith::{quantum_integer, BracketTable, Level};
use crate::real::{precision, with_precision, BigReal, Complex, Real, ORACLE_PRECISION};
use crate::sixj::{admissible_raw, six_j_direct, ScalarSixJ, SixJEvaluator, SixJValue, FACE_SLOTS};
use crate::{LogSum, SignedLogValue};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PrecisionMode {
    /// Log-domain double precision.
    #[default]
    Standard,
    /// Literal summation in 256-bit floating point.
    Oracle,
}

impl std::str::FromStr for PrecisionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(PrecisionMode::Standard),
            "oracle" => Ok(PrecisionMode::Oracle),
            _ => Err(Error::Domain(format!("unknown precision mode '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TvOptions {
    /// Multiply by `2^{b2-b0}`. Off by default: the plain normalized sum
    /// already reproduces the closed-manifold values.
    pub apply_betti_factor: bool,
    pub threads: usize,
    pub precision: PrecisionMode,
}

impl Default for TvOptions {
    fn default() -> Self {
        TvOptions {
            apply_betti_factor: false,
            threads: 1,
            precision: PrecisionMode::Standard,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateSumResult {
    pub r: Level,
    pub value: f64,
    pub log_value: SignedLogValue,
    /// Partial assignments tried by the backtracking search.
    pub colorings_visited: u64,
    pub admissible_count: u64,
    /// `log|term|` of the largest single coloring contribution, normalization
    /// included; absent when every term vanishes.
    pub peak_term_log: Option<f64>,
    /// `log` of the condition number of the sum; absent when the sum vanishes.
    pub condition_log: Option<f64>,
    /// Significand bits of the arithmetic that produced `value`.
    pub precision_bits: u32,
    pub factor_applied: bool,
    pub precision: PrecisionMode,
}

/// An admissible coloring, indexed by edge class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring(pub Vec<u32>);

/// `|e|_c = (-1)^c [c+1]`, which is `[c+1]` for even colors.
pub fn edge_weight(c: u32, lvl: Level) -> f64 {
    quantum_integer(c as i64 + 1, lvl)
}

/// Search order and pruning data for one triangulation at one level.
struct Plan {
    colors: Vec<u32>,
    r: u32,
    classes: usize,
    /// Face triples (class ids) that become fully colored at each depth.
    face_checks: Vec<Vec<[usize; 3]>>,
    /// Tetrahedra whose six edges are all colored at each depth.
    tets_done: Vec<Vec<usize>>,
    tet_edges: Vec<[usize; 6]>,
}

impl Plan {
    fn new(tri: &Triangulation, lvl: Level) -> Self {
        let classes = tri.edge_classes().len();
        let mut face_checks = vec![Vec::new(); classes];
        let mut tets_done = vec![Vec::new(); classes];
        let tet_edges: Vec<[usize; 6]> = (0..tri.tet_count()).map(|t| tri.tet_edges(t)).collect();
        for (t, edges) in tet_edges.iter().enumerate() {
            for slots in FACE_SLOTS {
                let mut face = slots.map(|s| edges[s]);
                face.sort_unstable();
                if !face_checks[face[2]].contains(&face) {
                    face_checks[face[2]].push(face);
                }
            }
            tets_done[*edges.iter().max().unwrap()].push(t);
        }
        Plan {
            colors: lvl.colors().collect(),
            r: lvl.r(),
            classes,
            face_checks,
            tets_done,
            tet_edges,
        }
    }

    #[inline]
    fn faces_ok(&self, depth: usize, assign: &[u32]) -> bool {
        self.face_checks[depth]
            .iter()
            .all(|&[x, y, z]| admissible_raw(assign[x], assign[y], assign[z], self.r))
    }

    fn tuple(&self, tet: usize, assign: &[u32]) -> [u32; 6] {
        self.tet_edges[tet].map(|e| assign[e])
    }
}

/// Streams admissible colorings in lexicographic order of the class colors.
pub struct AdmissibleColorings {
    plan: Plan,
    assign: Vec<u32>,
    /// Index into `plan.colors` per depth, or `None` above the frontier.
    cursor: Vec<usize>,
    depth: usize,
    done: bool,
    visited: u64,
}

impl AdmissibleColorings {
    /// Partial assignments tried so far.
    pub fn visited(&self) -> u64 {
        self.visited
    }
}

impl Iterator for AdmissibleColorings {
    type Item = Coloring;

    fn next(&mut self) -> Option<Coloring> {
        if self.done {
            return None;
        }
        let n = self.plan.classes;
        if n == 0 {
            self.done = true;
            return Some(Coloring(Vec::new()));
        }
        loop {
            if self.cursor[self.depth] == self.plan.colors.len() {
                // exhausted this depth
                self.cursor[self.depth] = 0;
                if self.depth == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                continue;
            }
            let c = self.plan.colors[self.cursor[self.depth]];
            self.cursor[self.depth] += 1;
            self.assign[self.depth] = c;
            self.visited += 1;
            if !self.plan.faces_ok(self.depth, &self.assign) {
                continue;
            }
            if self.depth + 1 == n {
                return Some(Coloring(self.assign.clone()));
            }
            self.depth += 1;
        }
    }
}

pub fn enumerate_admissible(tri: &Triangulation, lvl: Level) -> AdmissibleColorings {
    let plan = Plan::new(tri, lvl);
    let n = plan.classes;
    AdmissibleColorings {
        plan,
        assign: vec![0; n],
        cursor: vec![0; n.max(1)],
        depth: 0,
        done: false,
        visited: 0,
    }
}

/// Phased product in log form.
type Term = SixJValue;

struct Partial {
    sum: LogSum<f64>,
    /// Sum of the terms with every 6j z-sum taken in absolute value.
    bound: LogSum<f64>,
    visited: u64,
    admissible: u64,
    peak: f64,
}

struct Worker<'a> {
    plan: &'a Plan,
    eval: &'a SixJEvaluator,
    weights: &'a [SignedLogValue],
    memo: HashMap<[u32; 6], (SixJValue, f64)>,
    assign: Vec<u32>,
    out: Partial,
}

impl Worker<'_> {
    fn six_j(&mut self, tuple: [u32; 6]) -> Result<(SixJValue, f64)> {
        if let Some(v) = self.memo.get(&tuple) {
            return Ok(*v);
        }
        let v = self.eval.eval_with_bound(&tuple)?;
        self.memo.insert(tuple, v);
        Ok(v)
    }

    fn step(&mut self, depth: usize, ci: usize, acc: Term, bound: f64) -> Result<()> {
        self.assign[depth] = self.plan.colors[ci];
        self.out.visited += 1;
        if !self.plan.faces_ok(depth, &self.assign) {
            return Ok(());
        }
        let w = self.weights[ci];
        let mut acc = acc
            * Term {
                magnitude: w,
                imaginary: false,
            };
        let mut bound = bound + w.log_mag;
        for i in 0..self.plan.tets_done[depth].len() {
            let tuple = self.plan.tuple(self.plan.tets_done[depth][i], &self.assign);
            let (v, b) = self.six_j(tuple)?;
            acc = acc * v;
            bound += b;
        }
        if depth + 1 == self.plan.classes {
            return self.leaf(acc, bound);
        }
        for ci in 0..self.plan.colors.len() {
            self.step(depth + 1, ci, acc, bound)?;
        }
        Ok(())
    }

    fn leaf(&mut self, acc: Term, bound: f64) -> Result<()> {
        self.out.admissible += 1;
        if bound > f64::NEG_INFINITY {
            self.out.bound.push(SignedLogValue {
                sign: 1,
                log_mag: bound,
            });
        }
        if acc.is_zero() {
            return Ok(());
        }
        if acc.imaginary {
            return Err(Error::Consistency(format!(
                "coloring {:?} has an imaginary weight",
                self.assign
            )));
        }
        self.out.peak = self.out.peak.max(acc.magnitude.log_mag);
        self.out.sum.push(acc.magnitude);
        Ok(())
    }
}

/// `log` of `η^{2|V|}` times the optional Betti factor.
fn normalization_log(tri: &Triangulation, lvl: Level, opts: &TvOptions) -> Result<f64> {
    let mut log = 2.0 * tri.interior_vertex_count() as f64 * crate::qarith::eta(lvl).ln();
    if opts.apply_betti_factor {
        let b = betti(tri)?;
        log += (b.b2 as f64 - b.b0_closed as f64) * std::f64::consts::LN_2;
    }
    Ok(log)
}

fn betti(tri: &Triangulation) -> Result<crate::complexes::BettiNumbers> {
    tri.betti_gf2().map_err(|e| match e {
        ComplexError::MetadataRequired(m) => Error::MissingBettiData(m),
        other => other.into(),
    })
}

/// Runs `job` once per color of the first edge class (or once with `None`
/// when there are no edges) and returns the results in color order.
fn partitioned<P: Send>(
    plan: &Plan,
    threads: usize,
    job: impl Fn(Option<usize>) -> Result<P> + Sync,
) -> Result<Vec<P>> {
    if plan.classes == 0 {
        return Ok(vec![job(None)?]);
    }
    if threads == 1 {
        return (0..plan.colors.len()).map(|ci| job(Some(ci))).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Consistency(format!("thread pool: {e}")))?;
    pool.install(|| {
        (0..plan.colors.len())
            .into_par_iter()
            .map(|ci| job(Some(ci)))
            .collect()
    })
}

struct LogPass {
    sum: SignedLogValue,
    bound: f64,
    visited: u64,
    admissible: u64,
    peak: f64,
}

fn log_pass(tri: &Triangulation, plan: &Plan, lvl: Level, threads: usize) -> Result<LogPass> {
    let eval = SixJEvaluator::new(lvl);
    let weights: Vec<SignedLogValue> = plan
        .colors
        .iter()
        .map(|&c| SignedLogValue::from_value(edge_weight(c, lvl)))
        .collect();
    let parts = partitioned(plan, threads, |first| {
        let mut w = Worker {
            plan,
            eval: &eval,
            weights: &weights,
            memo: HashMap::new(),
            assign: vec![0; plan.classes],
            out: Partial {
                sum: LogSum::new(),
                bound: LogSum::new(),
                visited: 0,
                admissible: 0,
                peak: f64::NEG_INFINITY,
            },
        };
        match first {
            Some(ci) => w.step(0, ci, SixJValue::one(), 0.0)?,
            None => w.leaf(SixJValue::one(), 0.0)?,
        }
        Ok(w.out)
    })?;
    debug_assert_eq!(tri.edge_classes().len(), plan.classes);
    let (mut sum, mut bound) = (LogSum::new(), LogSum::new());
    let mut out = LogPass {
        sum: SignedLogValue::zero(),
        bound: 0.0,
        visited: 0,
        admissible: 0,
        peak: f64::NEG_INFINITY,
    };
    for p in &parts {
        sum.push(p.sum.total());
        bound.push(p.bound.total());
        out.visited += p.visited;
        out.admissible += p.admissible;
        out.peak = out.peak.max(p.peak);
    }
    out.sum = sum.total();
    let b = bound.total();
    out.bound = if b.is_zero() {
        f64::NEG_INFINITY
    } else {
        b.log_mag
    };
    Ok(out)
}

/// The unnormalized sum in scalar type `T`, partitioned like [`log_pass`].
fn scalar_pass<T: Real>(plan: &Plan, lvl: Level, threads: usize, bits: usize) -> Result<T> {
    let parts = partitioned(plan, threads, |first| {
        with_precision(bits, || {
            let table = BracketTable::<T>::new(lvl);
            let eval = ScalarSixJ::new(&table);
            let weights: Vec<T> = plan
                .colors
                .iter()
                .map(|&c| table.quantum_integer(c as usize + 1))
                .collect();
            let mut s = ScalarWorker {
                plan,
                eval: &eval,
                weights: &weights,
                memo: HashMap::new(),
                assign: vec![0; plan.classes],
                sum: T::zero(),
            };
            match first {
                Some(ci) => s.step(0, ci, T::one(), false)?,
                None => s.leaf(T::one(), false)?,
            }
            Ok(s.sum)
        })
    })?;
    with_precision(bits, || {
        Ok(parts.into_iter().fold(T::zero(), |acc, x| acc + x))
    })
}

struct ScalarWorker<'a, T> {
    plan: &'a Plan,
    eval: &'a ScalarSixJ<T>,
    weights: &'a [T],
    memo: HashMap<[u32; 6], (T, bool)>,
    assign: Vec<u32>,
    sum: T,
}

impl<T: Real> ScalarWorker<'_, T> {
    fn step(&mut self, depth: usize, ci: usize, acc: T, imaginary: bool) -> Result<()> {
        self.assign[depth] = self.plan.colors[ci];
        if !self.plan.faces_ok(depth, &self.assign) {
            return Ok(());
        }
        let mut acc = acc * self.weights[ci].clone();
        let mut imaginary = imaginary;
        for i in 0..self.plan.tets_done[depth].len() {
            let tuple = self.plan.tuple(self.plan.tets_done[depth][i], &self.assign);
            if !self.memo.contains_key(&tuple) {
                let v = self.eval.eval(&tuple)?;
                self.memo.insert(tuple, v);
            }
            let (v, im) = &self.memo[&tuple];
            acc = acc * v.clone();
            if *im && imaginary {
                acc = -acc;
            }
            imaginary ^= im;
        }
        if depth + 1 == self.plan.classes {
            return self.leaf(acc, imaginary);
        }
        for ci in 0..self.plan.colors.len() {
            self.step(depth + 1, ci, acc.clone(), imaginary)?;
        }
        Ok(())
    }

    fn leaf(&mut self, acc: T, imaginary: bool) -> Result<()> {
        if imaginary && !acc.is_zero() {
            return Err(Error::Consistency(format!(
                "coloring {:?} has an imaginary weight",
                self.assign
            )));
        }
        self.sum = self.sum.clone() + acc;
        Ok(())
    }
}

/// Largest significand tried before giving up on resolving a cancellation.
pub const MAX_PRECISION_BITS: usize = 4096;

/// Bits needed so that rounding error stays about `2^-64` relative to a
/// result whose condition number is `exp(cond_log)`.
fn bits_for(cond_log: f64) -> usize {
    if !cond_log.is_finite() {
        return MAX_PRECISION_BITS;
    }
    let bits = 96.0 + cond_log.max(0.0) / std::f64::consts::LN_2;
    ((bits as usize).div_ceil(64) * 64).min(MAX_PRECISION_BITS)
}

/// Largest condition number accepted from the double-precision pass.
const DOUBLE_COND_LOG: f64 = 6.907_755_278_982_137; // ln 1000

fn big_log(x: &BigReal) -> SignedLogValue {
    if x.is_zero() {
        return SignedLogValue::zero();
    }
    let bits = precision();
    let log = with_precision(bits, || x.abs().ln().to_f64());
    SignedLogValue::new(if x.is_negative() { -1 } else { 1 }, log)
}

/// `TV_r(M)` from a triangulation.
///
/// A double-precision log-domain pass gives the sum together with its
/// condition number (the same sum with every alternating 6j series taken in
/// absolute value, over the result). When that exceeds `10^3` the sum is
/// recomputed in [`BigReal`] with enough bits to absorb the cancellation.
/// The sum is split on the color of the first edge class and the partial
/// sums are combined in color order, so the result does not depend on the
/// thread count.
pub fn turaev_viro(tri: &Triangulation, lvl: Level, opts: &TvOptions) -> Result<StateSumResult> {
    if opts.threads == 0 {
        return Err(Error::Domain("thread count must be at least 1".into()));
    }
    let norm_log = normalization_log(tri, lvl, opts)?;
    let plan = Plan::new(tri, lvl);
    let pass = log_pass(tri, &plan, lvl, opts.threads)?;
    let cond = |sum: &SignedLogValue| {
        if pass.bound == f64::NEG_INFINITY {
            0.0
        } else if sum.is_zero() {
            f64::INFINITY
        } else {
            pass.bound - sum.log_mag
        }
    };

    let (sum, bits, cond_log) = match opts.precision {
        PrecisionMode::Standard if cond(&pass.sum) <= DOUBLE_COND_LOG => {
            (pass.sum, 53, cond(&pass.sum))
        }
        PrecisionMode::Standard => {
            let mut bits = bits_for(cond(&pass.sum)).max(128);
            loop {
                let v: BigReal = scalar_pass(&plan, lvl, opts.threads, bits)?;
                let sum = with_precision(bits, || big_log(&v));
                let needed = bits_for(cond(&sum));
                if needed <= bits || bits >= MAX_PRECISION_BITS {
                    break (sum, bits, cond(&sum));
                }
                bits = needed.max(2 * bits).min(MAX_PRECISION_BITS);
            }
        }
        PrecisionMode::Oracle => {
            let bits = bits_for(cond(&pass.sum)).max(ORACLE_PRECISION);
            let (v, _) = with_precision(bits, || state_sum_literal::<BigReal>(tri, lvl))?;
            let sum = with_precision(bits, || big_log(&v));
            (sum, bits, cond(&sum))
        }
    };

    let log_value = if sum.is_zero() {
        sum
    } else {
        SignedLogValue::new(sum.sign, sum.log_mag + norm_log)
    };
    Ok(StateSumResult {
        r: lvl,
        value: log_value.to_value(),
        log_value,
        colorings_visited: pass.visited,
        admissible_count: pass.admissible,
        peak_term_log: (pass.peak > f64::NEG_INFINITY).then_some(pass.peak + norm_log),
        condition_log: cond_log.is_finite().then_some(cond_log),
        precision_bits: bits as u32,
        factor_applied: opts.apply_betti_factor,
        precision: opts.precision,
    })
}

/// Literal unnormalized state sum in scalar type `T`: every 6j-symbol from
/// [`six_j_direct`] with complex square roots, summed over
/// [`enumerate_admissible`]. Returns the sum and the number of colorings.
pub fn state_sum_literal<T: Real>(tri: &Triangulation, lvl: Level) -> Result<(T, u64)> {
    let table = BracketTable::<T>::new(lvl);
    let mut memo: HashMap<[u32; 6], Complex<T>> = HashMap::new();
    let mut sum = Complex::real(T::zero());
    let mut count = 0u64;
    for Coloring(colors) in enumerate_admissible(tri, lvl) {
        count += 1;
        let mut term = Complex::real(T::one());
        for &c in &colors {
            term = term.scale(&table.quantum_integer(c as usize + 1));
        }
        for t in 0..tri.tet_count() {
            let tuple = tri.tet_edges(t).map(|e| colors[e]);
            let w = match memo.entry(tuple) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(six_j_direct(&tuple, &table)?)
                }
            };
            term = term.mul(w);
        }
        sum = Complex {
            re: sum.re + term.re,
            im: sum.im + term.im,
        };
    }
    if !sum.im.is_zero() {
        return Err(Error::Consistency(
            "literal state sum has an imaginary part".into(),
        ));
    }
    Ok((sum.re, count))
}

/// `TV_r(M ⊔ M') = TV_r(M) TV_r(M')`.
pub fn tv_disjoint_union(results: &[StateSumResult]) -> Result<StateSumResult> {
    let first = results
        .first()
        .ok_or_else(|| Error::Domain("no results to combine".into()))?;
    let mut levels: Vec<u32> = results.iter().map(|x| x.r.r()).collect();
    levels.sort_unstable();
    levels.dedup();
    if levels.len() > 1 {
        return Err(Error::MixedLevels(levels));
    }
    if results
        .iter()
        .any(|x| x.factor_applied != first.factor_applied)
    {
        return Err(Error::Domain(
            "results mix normalizations (Betti factor)".into(),
        ));
    }
    let mut log_value = SignedLogValue::one();
    let mut admissible = 1u64;
    let mut visited = 0u64;
    let mut peak = Some(0.0);
    for x in results {
        log_value = log_value * x.log_value;
        admissible = admissible.saturating_mul(x.admissible_count);
        visited += x.colorings_visited;
        peak = peak.zip(x.peak_term_log).map(|(a, b)| a + b);
    }
    Ok(StateSumResult {
        r: first.r,
        value: log_value.to_value(),
        log_value,
        colorings_visited: visited,
        admissible_count: admissible,
        peak_term_log: peak,
        condition_log: None,
        precision_bits: results.iter().map(|x| x.precision_bits).min().unwrap_or(53),
        factor_applied: first.factor_applied,
        precision: first.precision,
    })
}
