use std::io::Write;

use serde::Serialize;
use turaev_viro::asymptotics::{
    bound_report, growth_series, level_range, BoundReport, GrowthSeries,
};
use turaev_viro::complexes::{builtin, Triangulation, BUILTINS};
use turaev_viro::lobachevsky::lobachevsky;
use turaev_viro::sixj::{six_j_value, SixTuple};
use turaev_viro::statesum::{turaev_viro, StateSumResult, TvOptions};
use turaev_viro::Level;

use crate::output::{csv_row, json_line, num, opt_num};
use crate::{
    CliError, ComputeArgs, Format, GrowthArgs, InputArgs, LevelArgs, LobArgs, SixjArgs, TvArgs,
};

pub const MIN_LEVEL: u32 = 5;

pub fn load(input: &InputArgs) -> Result<(String, Triangulation), CliError> {
    if let Some(name) = &input.builtin {
        return Ok((name.clone(), builtin(name)?));
    }
    let path = input.manifest.as_ref().expect("clap enforces one input");
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    let tri = Triangulation::parse_manifest(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let label = tri
        .name()
        .map(str::to_string)
        .unwrap_or_else(|| path.display().to_string());
    Ok((label, tri))
}

pub fn parse_range(s: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Input(format!("invalid range '{s}', expected A:B"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn levels(l: &LevelArgs) -> Result<Vec<Level>, CliError> {
    match (l.r, &l.r_range) {
        (Some(r), _) => Ok(vec![Level::with_min(r, MIN_LEVEL)?]),
        (None, Some(range)) => {
            let (a, b) = parse_range(range)?;
            Ok(level_range(a, b)?)
        }
        (None, None) => unreachable!("clap enforces one level argument"),
    }
}

fn options(c: &ComputeArgs) -> Result<TvOptions, CliError> {
    if c.threads == 0 {
        return Err(CliError::Input("--threads must be at least 1".into()));
    }
    Ok(TvOptions {
        apply_betti_factor: c.betti_factor,
        threads: c.threads,
        precision: c.precision.into(),
    })
}

#[derive(Serialize)]
struct TvRecord<'a> {
    input: &'a str,
    #[serde(flatten)]
    result: &'a StateSumResult,
}

pub const TV_COLUMNS: [&str; 8] = [
    "input",
    "r",
    "value",
    "sign",
    "log_abs",
    "admissible_count",
    "precision_bits",
    "condition_log",
];

pub fn tv(args: &TvArgs, out: &mut impl Write) -> Result<(), CliError> {
    let (label, tri) = load(&args.input)?;
    let opts = options(&args.compute)?;
    let levels = levels(&args.levels)?;
    if args.format.format == Format::Csv {
        csv_row(out, &TV_COLUMNS)?;
    }
    for l in levels {
        let res = turaev_viro(&tri, l, &opts)?;
        match args.format.format {
            Format::Json => json_line(
                out,
                &TvRecord {
                    input: &label,
                    result: &res,
                },
            )?,
            Format::Csv => csv_row(
                out,
                &[
                    label.clone(),
                    res.r.r().to_string(),
                    num(res.value),
                    res.log_value.sign.to_string(),
                    opt_num((!res.log_value.is_zero()).then_some(res.log_value.log_mag)),
                    res.admissible_count.to_string(),
                    res.precision_bits.to_string(),
                    opt_num(res.condition_log),
                ],
            )?,
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SixjRecord {
    r: u32,
    colors: [u32; 6],
    /// Present when the symbol is real.
    value: Option<f64>,
    re: f64,
    im: f64,
    imaginary: bool,
    sign: i8,
    log_abs: Option<f64>,
}

pub fn sixj(args: &SixjArgs, out: &mut impl Write) -> Result<(), CliError> {
    let lvl = Level::with_min(args.r, MIN_LEVEL)?;
    let colors: [u32; 6] = args
        .colors
        .as_slice()
        .try_into()
        .expect("clap enforces six colors");
    let v = six_j_value(&SixTuple::new(colors), lvl)?;
    let rec = SixjRecord {
        r: lvl.r(),
        colors,
        value: (!v.imaginary || v.is_zero()).then(|| v.re()),
        re: v.re(),
        im: v.im(),
        imaginary: v.imaginary && !v.is_zero(),
        sign: v.magnitude.sign,
        log_abs: (!v.is_zero()).then_some(v.magnitude.log_mag),
    };
    match args.format.format {
        Format::Json => json_line(out, &rec),
        Format::Csv => {
            csv_row(
                out,
                &[
                    "r", "a1", "a2", "a3", "a4", "a5", "a6", "re", "im", "sign", "log_abs",
                ],
            )?;
            let mut row = vec![rec.r.to_string()];
            row.extend(colors.iter().map(u32::to_string));
            row.extend([
                num(rec.re),
                num(rec.im),
                rec.sign.to_string(),
                opt_num(rec.log_abs),
            ]);
            csv_row(out, &row)
        }
    }
}

/// Parses `0.5`, `pi`, `-pi/8`, `3pi/4` or `3*pi/4`.
pub fn parse_angle(s: &str) -> Result<f64, CliError> {
    let bad = || CliError::Input(format!("cannot parse angle '{s}'"));
    let t = s.trim().to_ascii_lowercase();
    let Some((coef, rest)) = t.split_once("pi") else {
        return t
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(bad);
    };
    let coef = coef.trim().trim_end_matches('*').trim();
    let k = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = rest.trim();
    let den = if rest.is_empty() {
        1.0
    } else {
        rest.strip_prefix('/')
            .and_then(|d| d.trim().parse::<f64>().ok())
            .filter(|d| *d != 0.0)
            .ok_or_else(bad)?
    };
    Ok(k * std::f64::consts::PI / den)
}

#[derive(Serialize)]
struct LobRecord<'a> {
    x: &'a str,
    radians: f64,
    value: f64,
}

pub fn lob(args: &LobArgs, out: &mut impl Write) -> Result<(), CliError> {
    let xs = args
        .x
        .iter()
        .map(|s| parse_angle(s))
        .collect::<Result<Vec<_>, _>>()?;
    if args.format.format == Format::Csv {
        csv_row(out, &["x", "radians", "value"])?;
    }
    for (s, &x) in args.x.iter().zip(&xs) {
        let value = lobachevsky(x);
        match args.format.format {
            Format::Json => json_line(
                out,
                &LobRecord {
                    x: s,
                    radians: x,
                    value,
                },
            )?,
            Format::Csv => csv_row(out, &[s.clone(), num(x), num(value)])?,
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct GrowthRecord<'a> {
    input: &'a str,
    series: &'a GrowthSeries,
    bounds: &'a BoundReport,
}

pub fn growth(args: &GrowthArgs, out: &mut impl Write) -> Result<(), CliError> {
    let (label, tri) = load(&args.input)?;
    let opts = options(&args.compute)?;
    let (a, b) = parse_range(&args.r_range)?;
    let series = growth_series(&tri, a, b, &opts)?;
    let report = bound_report(&tri, &series);
    match args.format.format {
        Format::Json => json_line(
            out,
            &GrowthRecord {
                input: &label,
                series: &series,
                bounds: &report,
            },
        )?,
        Format::Csv => {
            csv_row(out, &["r", "tv", "a_r"])?;
            for p in &series.points {
                csv_row(out, &[p.r.to_string(), num(p.tv), opt_num(p.a_r)])?;
            }
        }
    }
    let violated: Vec<&str> = report
        .entries
        .iter()
        .filter(|e| !e.passed())
        .map(|e| e.name.as_str())
        .collect();
    if violated.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "bound violated: {}",
            violated.join(", ")
        )))
    }
}

#[derive(Serialize)]
struct BuiltinRecord<'a> {
    name: &'a str,
    description: &'a str,
    tet_count: usize,
    edge_classes: usize,
    interior_vertices: usize,
    ideal_vertices: usize,
    gromov_norm: Option<f64>,
}

pub fn builtins(format: Format, out: &mut impl Write) -> Result<(), CliError> {
    if format == Format::Csv {
        csv_row(
            out,
            &[
                "name",
                "tet_count",
                "edge_classes",
                "interior_vertices",
                "ideal_vertices",
                "description",
            ],
        )?;
    }
    for info in BUILTINS {
        let t = info.load()?;
        let rec = BuiltinRecord {
            name: info.name,
            description: info.description,
            tet_count: t.tet_count(),
            edge_classes: t.edge_classes().len(),
            interior_vertices: t.interior_vertex_count(),
            ideal_vertices: t.ideal_vertex_count(),
            gromov_norm: t.metadata().and_then(|m| m.gromov_norm),
        };
        match format {
            Format::Json => json_line(out, &rec)?,
            Format::Csv => csv_row(
                out,
                &[
                    rec.name.to_string(),
                    rec.tet_count.to_string(),
                    rec.edge_classes.to_string(),
                    rec.interior_vertices.to_string(),
                    rec.ideal_vertices.to_string(),
                    rec.description.to_string(),
                ],
            )?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("3pi/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("3*PI/4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("-pi/8").unwrap(), -PI / 8.0);
        assert_eq!(parse_angle(" 0.25 ").unwrap(), 0.25);
        for bad in ["", "pi/0", "pi/", "x", "2pi8", "inf"] {
            assert!(parse_angle(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("5:31").unwrap(), (5, 31));
        assert!(parse_range("5-31").is_err());
        assert!(parse_range("a:7").is_err());
    }
}
