use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;
use turaev_viro::appendix::{g_func, maximize_g_with, maximize_v, GOptions, DEFAULT_SEED};
use turaev_viro::asymptotics::{
    check_factorial_asymptotics, growth_series, max_sixj_growth, ScanOptions,
    FACTORIAL_RATIO_BOUND, TETRAHEDRA_COEFFICIENT,
};
use turaev_viro::complexes::builtin;
use turaev_viro::lobachevsky::{constants, lobachevsky};
use turaev_viro::qarith::eta;
use turaev_viro::sixj::{admissible_tuples, six_j, six_j_direct, SixJEvaluator, SixTuple};
use turaev_viro::statesum::{turaev_viro, tv_disjoint_union, TvOptions};
use turaev_viro::{Level, OracleBracketTable, Real};

use crate::output::{csv_row, json_line, num};
use crate::{CliError, Format, VerifyArgs};

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
enum Kind {
    /// `|measured - expected| / |expected| ≤ tol`
    Relative,
    /// `|measured - expected| ≤ tol`
    Absolute,
    /// `measured ≤ expected + tol`
    AtMost,
    /// `measured` is 1 (true)
    Flag,
}

#[derive(Debug, Serialize)]
struct Check {
    group: &'static str,
    name: String,
    kind: Kind,
    measured: f64,
    expected: f64,
    tolerance: f64,
    passed: bool,
}

impl Check {
    fn new(
        group: &'static str,
        name: impl Into<String>,
        kind: Kind,
        measured: f64,
        expected: f64,
        tolerance: f64,
    ) -> Self {
        Check {
            group,
            name: name.into(),
            kind,
            measured,
            expected,
            tolerance,
            passed: false,
        }
    }

    fn flag(group: &'static str, name: impl Into<String>, ok: bool) -> Self {
        Check::new(
            group,
            name,
            Kind::Flag,
            if ok { 1.0 } else { 0.0 },
            1.0,
            0.0,
        )
    }

    fn evaluate(&mut self, tolerance: Option<f64>) {
        if let (Some(t), false) = (tolerance, matches!(self.kind, Kind::Flag)) {
            self.tolerance = t;
        }
        let (m, e, t) = (self.measured, self.expected, self.tolerance);
        self.passed = match self.kind {
            Kind::Relative => ((m - e) / e).abs() <= t,
            Kind::Absolute => (m - e).abs() <= t,
            Kind::AtMost => m <= e + t,
            Kind::Flag => m == 1.0,
        };
    }
}

#[derive(Serialize)]
struct Report<'a> {
    checks: &'a [Check],
    passed: usize,
    failed: usize,
    seed: u64,
}

struct Ctx {
    threads: usize,
    seed: u64,
}

impl Ctx {
    fn tv(&self, name: &str, r: u32) -> Result<turaev_viro::statesum::StateSumResult, CliError> {
        let opts = TvOptions {
            threads: self.threads,
            ..Default::default()
        };
        Ok(turaev_viro(&builtin(name)?, lvl(r), &opts)?)
    }
}

fn lvl(r: u32) -> Level {
    Level::new(r as i64).expect("odd level")
}

fn odd(lo: u32, hi: u32) -> impl Iterator<Item = u32> {
    (lo..=hi).step_by(2)
}

fn oracles(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let g = "oracles";
    let mut out = Vec::new();
    for r in odd(5, 51) {
        out.push(Check::new(
            g,
            format!("s3_r{r}"),
            Kind::Relative,
            ctx.tv("s3_2tet", r)?.value,
            eta(lvl(r)).powi(2),
            1e-10,
        ));
    }
    for r in odd(5, 31) {
        out.push(Check::new(
            g,
            format!("s2xs1_r{r}"),
            Kind::Absolute,
            ctx.tv("s2xs1", r)?.value,
            1.0,
            1e-10,
        ));
        let t2 = (r as f64 - 1.0) / 2.0;
        out.push(Check::new(
            g,
            format!("t2xi_r{r}"),
            Kind::Relative,
            ctx.tv("t2xi", r)?.value,
            t2,
            1e-9,
        ));
        let (a, b) = (ctx.tv("s3_2tet", r)?.value, ctx.tv("s3_3tet", r)?.value);
        out.push(Check::new(
            g,
            format!("independence_r{r}"),
            Kind::Relative,
            b,
            a,
            1e-9,
        ));
    }
    for r in odd(5, 21) {
        let whole = ctx.tv("s3_2tet_s2xs1", r)?.value;
        let prod = tv_disjoint_union(&[ctx.tv("s3_2tet", r)?, ctx.tv("s2xs1", r)?])?.value;
        out.push(Check::new(
            g,
            format!("union_r{r}"),
            Kind::Relative,
            whole,
            prod,
            1e-10,
        ));
    }
    Ok(out)
}

fn sixj_checks(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let g = "sixj";
    let mut out = vec![
        Check::new(
            g,
            "sixj_zeros_r7",
            Kind::Absolute,
            six_j(&SixTuple::new([0; 6]), lvl(7))?,
            1.0,
            1e-12,
        ),
        Check::new(
            g,
            "sixj_twos_r5",
            Kind::Relative,
            six_j(&SixTuple::new([2; 6]), lvl(5))?,
            -(3.0 + 5f64.sqrt()) / 2.0,
            1e-12,
        ),
    ];
    for r in [5, 7, 9] {
        let eval = SixJEvaluator::new(lvl(r));
        let table = OracleBracketTable::new(lvl(r));
        let mut worst = 0.0f64;
        for a in admissible_tuples(lvl(r)) {
            let fast = eval.eval(&a)?;
            let direct = six_j_direct(&a, &table)?;
            let (exact, other) = if fast.imaginary {
                (direct.im.to_f64(), direct.re.to_f64())
            } else {
                (direct.re.to_f64(), direct.im.to_f64())
            };
            let approx = if fast.imaginary { fast.im() } else { fast.re() };
            let err = if exact == 0.0 {
                approx.abs()
            } else {
                ((approx - exact) / exact).abs()
            };
            worst = worst.max(err).max(other.abs());
        }
        out.push(Check::new(
            g,
            format!("sixj_direct_r{r}"),
            Kind::AtMost,
            worst,
            0.0,
            1e-10,
        ));
    }
    for r in [15, 21, 31] {
        let s = max_sixj_growth(
            lvl(r),
            &ScanOptions {
                threads: ctx.threads,
                ..Default::default()
            },
        )?;
        out.push(Check::new(
            g,
            format!("sixj_growth_r{r}"),
            Kind::AtMost,
            s.max_growth,
            s.bound + s.slack,
            0.0,
        ));
    }
    Ok(out)
}

fn factorial(_: &Ctx) -> Result<Vec<Check>, CliError> {
    let g = "factorial";
    let mut out = Vec::new();
    let mut ratios = Vec::new();
    for r in [101, 501, 1001] {
        let f = check_factorial_asymptotics(lvl(r))?;
        ratios.push(f.max_ratio);
        out.push(Check::new(
            g,
            format!("factorial_ratio_r{r}"),
            Kind::AtMost,
            f.max_ratio,
            FACTORIAL_RATIO_BOUND,
            0.0,
        ));
    }
    out.push(Check::new(
        g,
        "factorial_trend",
        Kind::AtMost,
        ratios[2],
        1.5 * ratios[0],
        0.0,
    ));
    Ok(out)
}

fn lobachevsky_checks(_: &Ctx) -> Result<Vec<Check>, CliError> {
    let g = "lobachevsky";
    let k = constants();
    Ok(vec![
        Check::new(
            g,
            "lob_pi_8",
            Kind::Absolute,
            lobachevsky(PI / 8.0),
            0.490936,
            1e-5,
        ),
        Check::new(
            g,
            "lob_pi_4",
            Kind::Absolute,
            lobachevsky(PI / 4.0),
            0.457982,
            1e-5,
        ),
        Check::new(g, "v3", Kind::Absolute, k.v3, 1.0149, 1e-3),
        Check::new(g, "v8", Kind::Absolute, k.v8, 3.6638, 1e-3),
    ])
}

fn appendix(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let g = "appendix";
    let v = maximize_v();
    let gr = maximize_g_with(&GOptions {
        seed: ctx.seed,
        threads: ctx.threads,
        ..Default::default()
    })?;
    let at = g_func(7.0 * PI / 8.0, &[PI / 2.0; 6]);
    let mut out = vec![
        Check::new(
            g,
            "appendix_max_v",
            Kind::Absolute,
            v.best_value,
            0.915965,
            1e-5,
        ),
        Check::new(
            g,
            "appendix_max_g",
            Kind::Absolute,
            gr.best_value,
            3.927488,
            1e-3,
        ),
        Check::new(
            g,
            "appendix_g_attained",
            Kind::Absolute,
            at,
            gr.best_value,
            1e-6,
        ),
    ];
    match gr.critical_residual {
        Some(res) => out.push(Check::new(
            g,
            "appendix_g_critical",
            Kind::AtMost,
            res,
            0.0,
            1e-6,
        )),
        None => out.push(Check::flag(g, "appendix_g_critical", false)),
    }
    Ok(out)
}

fn growth(ctx: &Ctx) -> Result<Vec<Check>, CliError> {
    let g = "growth";
    let opts = TvOptions {
        threads: ctx.threads,
        ..Default::default()
    };
    let s = growth_series(&builtin("fig8")?, 5, 31, &opts)?;
    let a31 = s.rate_at(31).unwrap_or(f64::NAN);
    let mut out = vec![
        Check::flag(g, "fig8_monotone", s.is_increasing_between(7, 31)),
        Check::flag(g, "fig8_a31_in_range", (1.5..=2.6).contains(&a31)),
        Check::new(
            g,
            "fig8_ltv",
            Kind::Relative,
            s.ltv_estimate.unwrap_or(f64::NAN),
            2.0 * constants().v3,
            0.15,
        ),
        Check::new(
            g,
            "fig8_tetrahedra",
            Kind::AtMost,
            s.max_rate().unwrap_or(f64::NAN),
            TETRAHEDRA_COEFFICIENT * constants().v8 * 2.0,
            0.0,
        ),
    ];
    for r in odd(5, 31) {
        let fig8 = s
            .points
            .iter()
            .find(|p| p.r == r)
            .map_or(f64::NAN, |p| p.tv);
        out.push(Check::new(
            g,
            format!("dehn_filling_r{r}"),
            Kind::AtMost,
            ctx.tv("s3_2tet", r)?.value,
            fig8,
            0.0,
        ));
    }
    Ok(out)
}

type Group = fn(&Ctx) -> Result<Vec<Check>, CliError>;

pub fn run(args: &VerifyArgs, out: &mut impl Write) -> Result<(), CliError> {
    if args.threads == 0 {
        return Err(CliError::Input("--threads must be at least 1".into()));
    }
    if let Some(t) = args.tolerance {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(CliError::Input(format!("invalid tolerance {t}")));
        }
    }
    let filters: Vec<String> = args
        .only
        .as_deref()
        .map(|s| {
            s.split(',')
                .map(|f| f.trim().to_string())
                .filter(|f| !f.is_empty())
                .collect()
        })
        .unwrap_or_default();
    let ctx = Ctx {
        threads: args.threads,
        seed: args.seed.unwrap_or(DEFAULT_SEED),
    };
    let groups: [(&str, &[&str], Group); 6] = [
        (
            "oracles",
            &["s3_", "s2xs1_", "t2xi_", "independence_", "union_"],
            oracles,
        ),
        ("sixj", &["sixj_"], sixj_checks),
        ("factorial", &["factorial_"], factorial),
        ("lobachevsky", &["lob_", "v3", "v8"], lobachevsky_checks),
        ("appendix", &["appendix_"], appendix),
        ("growth", &["fig8_", "dehn_filling_"], growth),
    ];
    let wanted = |name: &str, prefixes: &[&str]| {
        filters.is_empty()
            || filters.iter().any(|f| {
                f == name
                    || prefixes
                        .iter()
                        .any(|p| p.starts_with(f.as_str()) || f.starts_with(p))
            })
    };
    let mut checks = Vec::new();
    for (name, prefixes, group) in groups {
        if !wanted(name, prefixes) {
            continue;
        }
        for mut c in group(&ctx)? {
            if filters.is_empty()
                || filters
                    .iter()
                    .any(|f| f == c.group || c.name.contains(f.as_str()))
            {
                c.evaluate(args.tolerance);
                checks.push(c);
            }
        }
    }
    if checks.is_empty() {
        return Err(CliError::Input(format!(
            "--only {} matches no checks",
            filters.join(",")
        )));
    }
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| c.name.as_str())
        .collect();
    match args.format.format {
        Format::Json => json_line(
            out,
            &Report {
                checks: &checks,
                passed: checks.len() - failed.len(),
                failed: failed.len(),
                seed: ctx.seed,
            },
        )?,
        Format::Csv => {
            csv_row(
                out,
                &[
                    "group",
                    "name",
                    "status",
                    "measured",
                    "expected",
                    "tolerance",
                ],
            )?;
            for c in &checks {
                let status = if c.passed { "pass" } else { "fail" };
                csv_row(
                    out,
                    &[
                        c.group.to_string(),
                        c.name.clone(),
                        status.into(),
                        num(c.measured),
                        num(c.expected),
                        num(c.tolerance),
                    ],
                )?;
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "{} check(s) failed: {}",
            failed.len(),
            failed.join(", ")
        )))
    }
}
