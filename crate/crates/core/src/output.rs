//! CSV and JSON artifacts plus the run manifest.
//!
//! CSV: comma separated, `.` decimal point, LF line endings, one header
//! row of `name [unit]` cells. Non-finite values are never written; a
//! table containing one fails with [`Error::NonFinite`].

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::association::AssociationResult;
use crate::config::to_toml_string;
use crate::error::{Error, Result};
use crate::scenario::{ComparisonReport, Metric, MetricsSummary, ScenarioConfig, SweepTable};
use crate::stats::Stat;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub name: String,
    pub unit: String,
}

impl Column {
    pub fn new(name: impl Into<String>, unit: impl Into<String>) -> Self {
        Self { name: name.into(), unit: unit.into() }
    }
}

/// Rectangular table of numbers with named, unit-annotated columns.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputTable {
    columns: Vec<Column>,
    rows: Vec<Vec<f64>>,
}

impl OutputTable {
    pub fn new(columns: Vec<Column>) -> Self {
        Self { columns, rows: Vec::new() }
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::InvalidArgument(format!(
                "row has {} cells, table has {} columns",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Index of the column called `name`.
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.name == name)
    }

    pub fn header(&self) -> String {
        self.columns.iter().map(|c| format!("{} [{}]", c.name, c.unit)).collect::<Vec<_>>().join(",")
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = self.header();
        out.push('\n');
        for (r, row) in self.rows.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFinite(format!("row {r}, column `{}`", self.columns[i].name)));
                }
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&format_number(*v));
            }
            out.push('\n');
        }
        Ok(out)
    }
}

/// Shortest round-trip text; scientific notation outside `[1e-4, 1e9)`.
pub fn format_number(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e9).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn stat_or_nan(s: Option<&Stat>) -> Stat {
    s.copied().unwrap_or(Stat { mean: f64::NAN, std: f64::NAN, ci95: f64::NAN, n: 0 })
}

/// One row: mean, std and CI half-width of every metric.
pub fn summary_table(summary: &MetricsSummary) -> OutputTable {
    let mut cols = Vec::new();
    let mut row = Vec::new();
    for (m, s) in summary.iter() {
        let s = stat_or_nan(s);
        cols.push(Column::new(m.name(), m.unit()));
        cols.push(Column::new(format!("{}_std", m.name()), m.unit()));
        cols.push(Column::new(format!("{}_ci95", m.name()), m.unit()));
        row.extend([s.mean, s.std, s.ci95]);
    }
    let mut t = OutputTable::new(cols);
    t.push_row(row).expect("row matches columns");
    t
}

/// One row of paired means: `conv_*`, `irs_*` and `delta_*` per metric.
pub fn comparison_table(report: &ComparisonReport) -> OutputTable {
    let mut cols = Vec::new();
    let mut row = Vec::new();
    for m in Metric::ALL {
        cols.push(Column::new(format!("conv_{}", m.name()), m.unit()));
        cols.push(Column::new(format!("irs_{}", m.name()), m.unit()));
        cols.push(Column::new(format!("delta_{}", m.name()), m.unit()));
        row.extend([
            report.conventional.mean(m).unwrap_or(f64::NAN),
            report.irs.mean(m).unwrap_or(f64::NAN),
            report.delta(m).unwrap_or(f64::NAN),
        ]);
    }
    let mut t = OutputTable::new(cols);
    t.push_row(row).expect("row matches columns");
    t
}

/// One row per swept value: the value, then mean and CI of every metric.
pub fn sweep_table(table: &SweepTable) -> OutputTable {
    let mut cols = vec![Column::new(table.parameter.clone(), table.unit)];
    for m in Metric::ALL {
        cols.push(Column::new(m.name(), m.unit()));
        cols.push(Column::new(format!("{}_ci95", m.name()), m.unit()));
    }
    let mut t = OutputTable::new(cols);
    for r in &table.rows {
        let mut row = vec![r.value];
        for (_, s) in r.summary.iter() {
            let s = stat_or_nan(s);
            row.extend([s.mean, s.ci95]);
        }
        t.push_row(row).expect("row matches columns");
    }
    t
}

pub fn association_table(results: &[(&str, AssociationResult)]) -> OutputTable {
    let mut cols = Vec::new();
    let mut row = Vec::new();
    for (prefix, r) in results {
        for (name, v) in [("a", r.a), ("a_bar", r.a_bar), ("a_bar_ci95", r.ci_halfwidth), ("n_devices", r.n_devices)] {
            cols.push(Column::new(format!("{prefix}_{name}"), "1"));
            row.push(v);
        }
    }
    let mut t = OutputTable::new(cols);
    t.push_row(row).expect("row matches columns");
    t
}

fn finite(v: f64, what: &str) -> Result<Value> {
    if v.is_finite() {
        Ok(json!(v))
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

fn stat_json(s: &Stat, what: &str) -> Result<Value> {
    Ok(json!({
        "mean": finite(s.mean, what)?,
        "std": finite(s.std, what)?,
        "ci95": finite(s.ci95, what)?,
        "n": s.n,
    }))
}

/// `{"mode", "seed", "replications", "unreachable_uplink", "metrics": {name: {mean, std, ci95, n}}}`.
/// A metric with no samples is omitted.
pub fn summary_json(summary: &MetricsSummary) -> Result<Value> {
    let mut metrics = Map::new();
    for (m, s) in summary.iter() {
        if let Some(s) = s {
            metrics.insert(m.name().into(), stat_json(s, m.name())?);
        }
    }
    Ok(json!({
        "mode": summary.mode.as_str(),
        "seed": summary.seed,
        "replications": summary.replications,
        "unreachable_uplink": summary.unreachable_uplink,
        "metrics": metrics,
    }))
}

pub fn comparison_json(report: &ComparisonReport) -> Result<Value> {
    let mut delta = Map::new();
    let mut ratio = Map::new();
    for m in Metric::ALL {
        if let Some(d) = report.delta(m) {
            delta.insert(m.name().into(), finite(d, m.name())?);
        }
        if let Some(r) = report.ratio(m).filter(|r| r.is_finite()) {
            ratio.insert(m.name().into(), json!(r));
        }
    }
    Ok(json!({
        "seed": report.seed,
        "replications": report.replications,
        "conventional": summary_json(&report.conventional)?,
        "irs": summary_json(&report.irs)?,
        "delta": delta,
        "ratio": ratio,
    }))
}

pub fn sweep_json(table: &SweepTable) -> Result<Value> {
    let points = table
        .rows
        .iter()
        .map(|r| Ok(json!({ "value": finite(r.value, &table.parameter)?, "summary": summary_json(&r.summary)? })))
        .collect::<Result<Vec<_>>>()?;
    Ok(json!({ "parameter": table.parameter, "unit": table.unit, "points": points }))
}

pub fn association_json(results: &[(&str, AssociationResult)]) -> Result<Value> {
    let mut out = Map::new();
    for (prefix, r) in results {
        out.insert(
            (*prefix).into(),
            json!({
                "a": finite(r.a, "a")?,
                "a_bar": finite(r.a_bar, "a_bar")?,
                "ci95": finite(r.ci_halfwidth, "a_bar ci95")?,
                "n_devices": finite(r.n_devices, "n_devices")?,
                "samples": r.n_samples,
            }),
        );
    }
    Ok(Value::Object(out))
}

/// Hex SHA-256 of the canonical serialization of `cfg`. Formatting and
/// unit spelling in the source file do not affect it.
pub fn config_digest(cfg: &ScenarioConfig) -> String {
    hex::encode(Sha256::digest(to_toml_string(cfg).as_bytes()))
}

/// Everything needed to reproduce a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub command_line: Vec<String>,
    pub config_path: Option<String>,
    pub config_digest: String,
    pub seed: u64,
    pub replications: usize,
    pub fading: bool,
    pub timestamp: String,
}

impl RunManifest {
    pub fn new(command: &str, command_line: Vec<String>, config_path: Option<String>, cfg: &ScenarioConfig, seed: u64, replications: usize) -> Self {
        Self {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            command_line,
            config_path,
            config_digest: config_digest(cfg),
            seed,
            replications,
            fading: cfg.fading,
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = OutputTable::new(vec![Column::new("d", "m"), Column::new("p", "W")]);
        t.push_row(vec![10.0, 6.3e-6]).unwrap();
        t.push_row(vec![20.0, 0.0]).unwrap();
        assert_eq!(t.to_csv().unwrap(), "d [m],p [W]\n10,6.3e-6\n20,0\n");
        assert!(t.push_row(vec![1.0]).is_err());
    }

    #[test]
    fn non_finite_is_an_error() {
        let mut t = OutputTable::new(vec![Column::new("x", "1")]);
        t.push_row(vec![f64::INFINITY]).unwrap();
        assert!(matches!(t.to_csv(), Err(Error::NonFinite(_))));
        assert!(finite(f64::NAN, "x").is_err());
    }

    #[test]
    fn number_format_round_trips() {
        for v in [1e-20, 6.332_573_977_646_111e-6, 0.5, 123.25, 9.3e12, -4.0e-7] {
            assert_eq!(format_number(v).parse::<f64>().unwrap(), v);
        }
    }
}
