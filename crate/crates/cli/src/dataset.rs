//! Column-oriented tables and their CSV/JSON encodings.

use fredholm_core::Complex64;
use serde_json::{Map, Value};

use crate::error::{CliError, CliResult};

/// Named real columns of equal length.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FigureDataset {
    columns: Vec<(String, Vec<f64>)>,
}

impl FigureDataset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, values: Vec<f64>) -> CliResult<()> {
        let name = name.into();
        if self.columns.iter().any(|(n, _)| *n == name) {
            return Err(CliError::Validation(format!("duplicate column {name}")));
        }
        if let Some((first, len)) = self.columns.first().map(|(n, v)| (n, v.len())) {
            if values.len() != len {
                return Err(CliError::Validation(format!(
                    "column {name} has {} rows, {first} has {len}",
                    values.len()
                )));
            }
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(CliError::Numerical(fredholm_core::Error::Domain(format!(
                "non-finite value {bad} in column {name}"
            ))));
        }
        self.columns.push((name, values));
        Ok(())
    }

    /// Adds `{prefix}re_psi`, `{prefix}im_psi` and `{prefix}abs_psi`.
    pub fn push_wave(&mut self, prefix: &str, values: &[Complex64]) -> CliResult<()> {
        self.push(
            format!("{prefix}re_psi"),
            values.iter().map(|z| z.re).collect(),
        )?;
        self.push(
            format!("{prefix}im_psi"),
            values.iter().map(|z| z.im).collect(),
        )?;
        self.push(
            format!("{prefix}abs_psi"),
            values.iter().map(|z| z.norm()).collect(),
        )
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.columns.iter().map(|(n, _)| n.as_str())
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |(_, v)| v.len())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.names().collect::<Vec<_>>().join(","));
        out.push('\n');
        for row in 0..self.rows() {
            let line: Vec<String> = self
                .columns
                .iter()
                .map(|(_, v)| format_number(v[row]))
                .collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, meta: Value) -> String {
        let mut root = Map::new();
        root.insert("meta".into(), meta);
        for (name, values) in &self.columns {
            root.insert(name.clone(), Value::from(values.clone()));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(root))
            .expect("finite numbers always serialize");
        text.push('\n');
        text
    }
}

/// Scientific notation with 12 significant digits and a signed, at least
/// two-digit exponent, e.g. `-1.23456789012e-05`. Negative zero prints as zero.
pub fn format_number(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    let s = format!("{v:.11e}");
    let (mantissa, exponent) = s.split_once('e').expect("exponent present");
    let exponent: i32 = exponent.parse().expect("integer exponent");
    let sign = if exponent < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exponent.abs())
}

/// Compact label for a parameter value in a column name: `1`, `0.5`, `12.25`.
pub fn label(v: f64) -> String {
    format!("{v}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format() {
        assert_eq!(format_number(1.0), "1.00000000000e+00");
        assert_eq!(format_number(-0.0), "0.00000000000e+00");
        assert_eq!(format_number(0.0), "0.00000000000e+00");
        assert_eq!(format_number(-1.234_567_890_123_4e-5), "-1.23456789012e-05");
        assert_eq!(format_number(6.02214076e23), "6.02214076000e+23");
        assert_eq!(format_number(1e-300), "1.00000000000e-300");
        assert_eq!(format_number(9.999_999_999_999_9), "1.00000000000e+01");
    }

    #[test]
    fn csv_layout() {
        let mut d = FigureDataset::new();
        d.push("x", vec![0.5, 1.0]).unwrap();
        d.push_wave("", &[Complex64::new(1.0, -2.0), Complex64::new(0.0, 0.0)])
            .unwrap();
        let csv = d.to_csv();
        let lines: Vec<&str> = csv.split('\n').collect();
        assert_eq!(lines[0], "x,re_psi,im_psi,abs_psi");
        assert_eq!(
            lines[1],
            "5.00000000000e-01,1.00000000000e+00,-2.00000000000e+00,2.23606797750e+00"
        );
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[3], "");
        assert!(!csv.contains('\r') && !csv.contains(",\n"));
    }

    #[test]
    fn rejects_bad_columns() {
        let mut d = FigureDataset::new();
        d.push("x", vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            d.push("x", vec![1.0, 2.0]),
            Err(CliError::Validation(_))
        ));
        assert!(matches!(
            d.push("y", vec![1.0]),
            Err(CliError::Validation(_))
        ));
        assert!(matches!(
            d.push("z", vec![1.0, f64::NAN]),
            Err(CliError::Numerical(_))
        ));
    }

    #[test]
    fn json_has_meta_and_columns() {
        let mut d = FigureDataset::new();
        d.push("x", vec![1.0]).unwrap();
        d.push("y", vec![-2.5]).unwrap();
        let v: Value = serde_json::from_str(&d.to_json(serde_json::json!({"k": 1}))).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["meta", "x", "y"]);
        assert_eq!(v["y"][0], -2.5);
    }

    #[test]
    fn labels() {
        assert_eq!(label(1.0), "1");
        assert_eq!(label(0.5), "0.5");
        assert_eq!(label(0.0), "0");
    }
}
