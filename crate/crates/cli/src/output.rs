use std::io::Write;

use serde::Serialize;

use crate::CliError;

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub fn json_line<T: Serialize>(out: &mut impl Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string(value)
        .map_err(|e| CliError::Consistency(format!("serialization: {e}")))?;
    writeln!(out, "{text}")?;
    Ok(())
}

pub fn csv_row<S: AsRef<str>>(out: &mut impl Write, fields: &[S]) -> Result<(), CliError> {
    let row: Vec<String> = fields.iter().map(|f| quote(f.as_ref())).collect();
    writeln!(out, "{}", row.join(","))?;
    Ok(())
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Consistency(format!("write failed: {e}"))
    }
}
