use std::collections::BTreeMap;
use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use cubic_mds::mds::SeriesComparison;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Partial,
}

impl Status {
    /// `pass` when all checks hold (vacuously for none), `fail` when none do.
    pub fn from_checks(checks: impl IntoIterator<Item = bool>) -> Self {
        let (mut ok, mut bad) = (0, 0);
        for c in checks {
            if c {
                ok += 1;
            } else {
                bad += 1;
            }
        }
        match (ok, bad) {
            (_, 0) => Status::Pass,
            (0, _) => Status::Fail,
            _ => Status::Partial,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Partial => "partial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Value {
    Integer { value: i64 },
    Complex { re: f64, im: f64 },
    Text { value: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    #[serde(flatten)]
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedComparison {
    pub name: String,
    #[serde(flatten)]
    pub comparison: SeriesComparison,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub results: Vec<NamedValue>,
    pub comparisons: Vec<NamedComparison>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub columns: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rows: Vec<Vec<Cell>>,
    pub status: Status,
    /// Text-mode replacement for the table.
    #[serde(skip)]
    pub lines: Vec<String>,
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_c64(z: Complex64) -> String {
    format!("{}{}{}i", fmt_f64(z.re), if z.im.is_sign_negative() { "" } else { "+" }, fmt_f64(z.im))
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            results: Vec::new(),
            comparisons: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            status: Status::Pass,
            lines: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn integer(&mut self, name: &str, value: i64) -> &mut Self {
        self.results.push(NamedValue { name: name.into(), value: Value::Integer { value } });
        self
    }

    pub fn complex(&mut self, name: &str, z: Complex64) -> &mut Self {
        self.results.push(NamedValue { name: name.into(), value: Value::Complex { re: z.re, im: z.im } });
        self
    }

    pub fn text(&mut self, name: &str, value: impl Into<String>) -> &mut Self {
        self.results.push(NamedValue { name: name.into(), value: Value::Text { value: value.into() } });
        self
    }

    pub fn compare(&mut self, name: &str, comparison: SeriesComparison) -> &mut Self {
        self.comparisons.push(NamedComparison { name: name.into(), comparison });
        self
    }

    pub fn table(&mut self, columns: &[&str], rows: Vec<Vec<Cell>>) -> &mut Self {
        self.columns = columns.iter().map(|c| c.to_string()).collect();
        self.rows = rows;
        self
    }

    /// Status from the comparisons.
    pub fn settle(&mut self) -> &mut Self {
        self.status = Status::from_checks(self.comparisons.iter().map(|c| c.comparison.passed()));
        self
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)?;
            }
            Format::Csv => self.write_csv(out)?,
            Format::Text => self.write_text(out)?,
        }
        Ok(())
    }

    fn write_text(&self, out: &mut impl Write) -> Result<()> {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(out, "{} {}", self.command, params.join(" "))?;
        for r in &self.results {
            let v = match &r.value {
                Value::Integer { value } => value.to_string(),
                Value::Complex { re, im } => fmt_c64(Complex64::new(*re, *im)),
                Value::Text { value } => value.clone(),
            };
            writeln!(out, "  {:<24} {v}", r.name)?;
        }
        for c in &self.comparisons {
            let cmp = &c.comparison;
            writeln!(
                out,
                "  {:<24} lhs {} rhs {} rel_err {:.3e} tol {:.1e} {}",
                c.name,
                fmt_c64(cmp.lhs()),
                fmt_c64(cmp.rhs()),
                cmp.rel_err,
                cmp.spec.tolerance,
                if cmp.passed() { "pass" } else { "fail" }
            )?;
        }
        if !self.lines.is_empty() {
            for l in &self.lines {
                writeln!(out, "{l}")?;
            }
        } else if !self.rows.is_empty() {
            writeln!(out, "{}", self.columns.join(" "))?;
            for row in &self.rows {
                writeln!(out, "{}", row.iter().map(cell_text).collect::<Vec<_>>().join(" "))?;
            }
        }
        writeln!(out, "status {}", self.status.as_str())?;
        Ok(())
    }

    /// Tables print as-is. Otherwise one row per result and comparison with
    /// columns `name,kind,re,im,rel_err,tolerance,passed`.
    fn write_csv(&self, out: &mut impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        if !self.rows.is_empty() {
            w.write_record(&self.columns)?;
            for row in &self.rows {
                w.write_record(row.iter().map(cell_text))?;
            }
        } else {
            w.write_record(["name", "kind", "re", "im", "rel_err", "tolerance", "passed"])?;
            for r in &self.results {
                let rec = match &r.value {
                    Value::Integer { value } => [r.name.clone(), "integer".into(), value.to_string(), String::new()],
                    Value::Complex { re, im } => [r.name.clone(), "complex".into(), fmt_f64(*re), fmt_f64(*im)],
                    Value::Text { value } => [r.name.clone(), "text".into(), value.clone(), String::new()],
                };
                w.write_record(rec.iter().map(String::as_str).chain(["", "", ""]))?;
            }
            for c in &self.comparisons {
                let cmp = &c.comparison;
                for (side, z) in [("lhs", cmp.lhs()), ("rhs", cmp.rhs())] {
                    w.write_record([
                        format!("{}.{side}", c.name),
                        "comparison".into(),
                        fmt_f64(z.re),
                        fmt_f64(z.im),
                        fmt_f64(cmp.rel_err),
                        fmt_f64(cmp.spec.tolerance),
                        cmp.passed().to_string(),
                    ])?;
                }
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Int(v) => v.to_string(),
        Cell::Float(x) => fmt_f64(*x),
        Cell::Text(s) => s.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cubic_mds::mds::TruncationSpec;

    #[test]
    fn status_rules() {
        assert_eq!(Status::from_checks([]), Status::Pass);
        assert_eq!(Status::from_checks([true, true]), Status::Pass);
        assert_eq!(Status::from_checks([false]), Status::Fail);
        assert_eq!(Status::from_checks([true, false]), Status::Partial);
    }

    #[test]
    fn json_round_trip() {
        let mut r = OutputRecord::new("demo");
        r.param("s", "2")
            .integer("count", 4)
            .complex("z", Complex64::new(0.1, -1.0 / 3.0))
            .text("case", "case1")
            .compare(
                "x",
                SeriesComparison::new(
                    Complex64::new(1.0, 0.0),
                    Complex64::new(1.0, 1e-17),
                    TruncationSpec::exact(1e-12),
                ),
            )
            .table(&["a", "b"], vec![vec![Cell::Int(1), Cell::Float(0.1)], vec![Cell::Int(-2), Cell::Text("t".into())]])
            .settle();
        let s = serde_json::to_string(&r).unwrap();
        let back: OutputRecord = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
