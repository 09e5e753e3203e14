//! Parameter sweeps over one axis (r, node count, first dimension size, or
//! number of dimensions) with CSV / JSON output.
//!
//! A sweep config is flat `key = value` text:
//!
//! ```text
//! # connectivity and R versus r for a 100-node cycle
//! family      = cycle
//! dims        = 100
//! axis        = overhead
//! axis_values = 1..10
//! metrics     = connectivity, sync_ratio
//! format      = csv
//! output      = cycle_overhead.csv
//! ```
//!
//! Integer lists accept single values, inclusive ranges `a..b` and stepped
//! ranges `a..b:step`, separated by commas.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::sync::sync_exact;
use crate::topology::{Family, GraphSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Vary r.
    Overhead,
    /// Vary every dimension size together (n for a cycle, square tori).
    Nodes,
    /// Vary the first dimension size, keep the others from `dims`.
    DimSizes,
    /// Vary the number of dimensions m, every size equal to `dims[0]`.
    Dimension,
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "overhead" | "r" => Ok(Axis::Overhead),
            "nodes" | "n" => Ok(Axis::Nodes),
            "dimsizes" | "dim_sizes" | "k1" => Ok(Axis::DimSizes),
            "dimension" | "m" => Ok(Axis::Dimension),
            other => Err(Error::InvalidArgument(format!("unknown axis '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Metric {
    Connectivity,
    SyncRatio,
    RatioPaper,
    Deviation,
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "connectivity" => Ok(Metric::Connectivity),
            "sync_ratio" => Ok(Metric::SyncRatio),
            "ratio_paper" => Ok(Metric::RatioPaper),
            "deviation" => Ok(Metric::Deviation),
            other => Err(Error::InvalidArgument(format!("unknown metric '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidArgument(format!("unknown format '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: Family,
    /// Fixed dimension sizes; the swept axis overrides part of them.
    pub dims: Vec<usize>,
    /// Fixed r, ignored when sweeping the overhead axis.
    pub overhead: usize,
    pub axis: Axis,
    pub axis_values: Vec<usize>,
    pub metrics: Vec<Metric>,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut family = None;
        let mut dims = None;
        let mut overhead = None;
        let mut axis = None;
        let mut axis_values = None;
        let mut metrics = None;
        let mut format = None;
        let mut output = None;

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Config {
                line,
                message: format!("expected 'key = value', got '{content}'"),
            })?;
            let value = value.trim();
            let at_line = |e: Error| Error::Config {
                line,
                message: match e {
                    Error::InvalidArgument(m) => m,
                    other => other.to_string(),
                },
            };
            match key.trim().to_ascii_lowercase().as_str() {
                "family" => family = Some(value.parse::<Family>().map_err(at_line)?),
                "dims" => dims = Some(parse_int_list(value).map_err(at_line)?),
                "r" | "overhead" => overhead = Some(parse_int(value).map_err(at_line)?),
                "axis" => axis = Some(value.parse::<Axis>().map_err(at_line)?),
                "axis_values" => axis_values = Some(parse_int_list(value).map_err(at_line)?),
                "metrics" => {
                    let mut list = value
                        .split(',')
                        .map(str::parse::<Metric>)
                        .collect::<Result<Vec<_>>>()
                        .map_err(at_line)?;
                    list.sort();
                    list.dedup();
                    metrics = Some(list);
                }
                "format" => format = Some(value.parse::<OutputFormat>().map_err(at_line)?),
                "output" => output = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::Config {
                        line,
                        message: format!("unknown key '{other}'"),
                    })
                }
            }
        }

        let missing = |key: &str| Error::Config {
            line: 0,
            message: format!("missing required key '{key}'"),
        };
        let family = family.ok_or_else(|| missing("family"))?;
        let axis = axis.ok_or_else(|| missing("axis"))?;
        let axis_values: Vec<usize> = axis_values.ok_or_else(|| missing("axis_values"))?;
        let dims = match (dims, axis, family) {
            (Some(d), _, _) => d,
            (None, Axis::Nodes, Family::Cycle) => vec![0],
            (None, Axis::Nodes, Family::Torus2D) => vec![0, 0],
            (None, _, _) => return Err(missing("dims")),
        };
        let overhead = match (overhead, axis) {
            (Some(r), _) => r,
            (None, Axis::Overhead) => 0,
            (None, _) => return Err(missing("r")),
        };

        let config = SweepConfig {
            family,
            dims,
            overhead,
            axis,
            axis_values,
            metrics: metrics.unwrap_or_else(|| vec![Metric::Connectivity, Metric::SyncRatio]),
            format: format.unwrap_or_default(),
            output,
        };
        config.check()?;
        Ok(config)
    }

    fn check(&self) -> Result<()> {
        let err = |message: String| Error::Config { line: 0, message };
        if self.axis_values.is_empty() {
            return Err(err("axis_values is empty".into()));
        }
        if self.axis_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(err("axis_values must be strictly increasing".into()));
        }
        if self.dims.is_empty() {
            return Err(err("dims is empty".into()));
        }
        if self.metrics.is_empty() {
            return Err(err("metrics is empty".into()));
        }
        if self.axis == Axis::Dimension && self.family != Family::TorusM {
            return Err(err("the dimension axis requires family = torusm".into()));
        }
        Ok(())
    }

    /// Graph for one axis value. Not validated.
    pub fn spec_for(&self, value: usize) -> GraphSpec {
        let mut dims = self.dims.clone();
        let mut r = self.overhead;
        match self.axis {
            Axis::Overhead => r = value,
            Axis::Nodes => dims.iter_mut().for_each(|k| *k = value),
            Axis::DimSizes => dims[0] = value,
            Axis::Dimension => dims = vec![self.dims[0]; value],
        }
        GraphSpec::new(self.family, dims, r)
    }

    fn wants(&self, metric: Metric) -> bool {
        self.metrics.contains(&metric)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RowStatus {
    Ok,
    Skipped(String),
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowStatus::Ok => f.write_str("ok"),
            RowStatus::Skipped(reason) => write!(f, "skipped: {reason}"),
        }
    }
}

/// One sweep result. Metrics not requested by the config are `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub axis_value: usize,
    pub nodes: usize,
    pub connectivity: Option<f64>,
    pub sync_ratio: Option<f64>,
    pub ratio_paper: Option<f64>,
    pub deviation: Option<f64>,
    pub status: RowStatus,
}

/// Evaluates a single axis value from scratch.
pub fn compute_row(config: &SweepConfig, value: usize) -> ReportRow {
    let spec = config.spec_for(value);
    let mut row = ReportRow {
        axis_value: value,
        nodes: spec.node_count(),
        connectivity: None,
        sync_ratio: None,
        ratio_paper: None,
        deviation: None,
        status: RowStatus::Ok,
    };
    let report = match sync_exact(&spec) {
        Ok(rep) => rep,
        Err(e) => {
            row.status = RowStatus::Skipped(e.to_string().replace(',', ";"));
            return row;
        }
    };
    if config.wants(Metric::Connectivity) {
        row.connectivity = Some(report.lambda_conn);
    }
    if config.wants(Metric::SyncRatio) {
        row.sync_ratio = Some(report.ratio_exact);
    }
    if config.wants(Metric::RatioPaper) {
        row.ratio_paper = report.ratio_paper;
    }
    if config.wants(Metric::Deviation) {
        row.deviation = report.deviation;
    }
    let paper_wanted = config.wants(Metric::RatioPaper) || config.wants(Metric::Deviation);
    if paper_wanted && report.paper_case.is_none() {
        row.status = RowStatus::Skipped("no closed form for mixed-parity sizes".into());
    }
    row
}

/// All rows, in axis order. Rows are independent and computed in parallel.
pub fn run_sweep(config: &SweepConfig) -> Vec<ReportRow> {
    config
        .axis_values
        .par_iter()
        .map(|&v| compute_row(config, v))
        .collect()
}

pub const CSV_HEADER: [&str; 7] = [
    "axis",
    "N",
    "connectivity",
    "sync_ratio",
    "ratio_paper",
    "deviation",
    "status",
];

/// Formats a float with 15 significant digits, trailing zeros removed.
/// Plain notation for exponents in `-5..15`, otherwise `d.ddde±x`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{:.14e}", v.abs());
    let (mantissa, exp) = sci.split_once('e').expect("exponent in {:e} output");
    let exp: i32 = exp.parse().expect("integer exponent");
    let digits: String = mantissa.chars().filter(|c| *c != '.').collect();
    let sign = if v < 0.0 { "-" } else { "" };

    let (int_part, frac_part, suffix) = if (-5..15).contains(&exp) {
        if exp >= 0 {
            let split = exp as usize + 1;
            (digits[..split].to_string(), digits[split..].to_string(), String::new())
        } else {
            let zeros = "0".repeat((-exp - 1) as usize);
            ("0".to_string(), format!("{zeros}{digits}"), String::new())
        }
    } else {
        (digits[..1].to_string(), digits[1..].to_string(), format!("e{exp}"))
    };
    let frac = frac_part.trim_end_matches('0');
    if frac.is_empty() {
        format!("{sign}{int_part}{suffix}")
    } else {
        format!("{sign}{int_part}.{frac}{suffix}")
    }
}

fn format_opt(v: Option<f64>) -> String {
    v.map(format_float).unwrap_or_default()
}

pub fn render_csv(rows: &[ReportRow]) -> Result<String> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let io_err = |e: csv::Error| Error::InvalidArgument(format!("csv: {e}"));
    writer.write_record(CSV_HEADER).map_err(io_err)?;
    for row in rows {
        writer
            .write_record([
                row.axis_value.to_string(),
                row.nodes.to_string(),
                format_opt(row.connectivity),
                format_opt(row.sync_ratio),
                format_opt(row.ratio_paper),
                format_opt(row.deviation),
                row.status.to_string(),
            ])
            .map_err(io_err)?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// JSON number carrying exactly the value printed in CSV.
fn json_number(v: Option<f64>) -> Value {
    match v {
        Some(x) if x.is_finite() => {
            let rounded: f64 = format_float(x).parse().expect("formatted float parses");
            json!(rounded)
        }
        _ => Value::Null,
    }
}

pub fn render_json(rows: &[ReportRow]) -> Result<String> {
    let items: Vec<Value> = rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            obj.insert("axis".into(), json!(row.axis_value));
            obj.insert("N".into(), json!(row.nodes));
            obj.insert("connectivity".into(), json_number(row.connectivity));
            obj.insert("sync_ratio".into(), json_number(row.sync_ratio));
            obj.insert("ratio_paper".into(), json_number(row.ratio_paper));
            obj.insert("deviation".into(), json_number(row.deviation));
            obj.insert("status".into(), json!(row.status.to_string()));
            Value::Object(obj)
        })
        .collect();
    let mut text = serde_json::to_string_pretty(&items)
        .map_err(|e| Error::InvalidArgument(format!("json: {e}")))?;
    text.push('\n');
    Ok(text)
}

pub fn render(rows: &[ReportRow], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Csv => render_csv(rows),
        OutputFormat::Json => render_json(rows),
    }
}

pub fn parse_int(s: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("expected a non-negative integer, got '{}'", s.trim())))
}

/// Expands one list item: `a`, `a..b` (inclusive) or `a..b:step`.
pub fn parse_int_range(item: &str) -> Result<Vec<usize>> {
    let item = item.trim();
    let Some((lo, rest)) = item.split_once("..") else {
        return Ok(vec![parse_int(item)?]);
    };
    let (hi, step) = match rest.split_once(':') {
        Some((hi, step)) => (hi, parse_int(step)?),
        None => (rest, 1),
    };
    let (lo, hi) = (parse_int(lo)?, parse_int(hi)?);
    if step == 0 {
        return Err(Error::InvalidArgument(format!("zero step in '{item}'")));
    }
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty range '{item}'")));
    }
    Ok((lo..=hi).step_by(step).collect())
}

/// Comma-separated list of integers and ranges, flattened in order.
pub fn parse_int_list(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for item in s.split(',') {
        out.extend(parse_int_range(item)?);
    }
    Ok(out)
}
