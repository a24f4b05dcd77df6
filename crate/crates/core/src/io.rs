//! File formats: score/label input, curve files, tables and JSON reports.

use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::domain::{validate_dataset, Curve, PuDataset, PuLabel, PuSample, Truth};
use crate::error::{Error, Result};
use crate::evaluate::ErrorCell;

pub const DATASET_HEADER: [&str; 3] = ["score", "label", "truth"];
pub const CURVE_HEADER: [&str; 3] = ["threshold", "x", "y"];

fn parse_err(line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Reads a `score,label[,truth]` CSV. Labels are `P` or `U`, truth `0` or `1`.
/// Line numbers in errors count the header as line 1.
pub fn read_dataset_from<R: Read>(reader: R) -> Result<PuDataset> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header = rdr
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .clone();
    let cols: Vec<&str> = header.iter().collect();
    let has_truth = match cols.as_slice() {
        ["score", "label"] => false,
        ["score", "label", "truth"] => true,
        _ => {
            return Err(parse_err(
                1,
                format!(
                    "expected header `score,label[,truth]`, got `{}`",
                    cols.join(",")
                ),
            ))
        }
    };

    let mut samples = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        let score: f64 = rec[0]
            .parse()
            .map_err(|_| parse_err(line, format!("invalid score `{}`", &rec[0])))?;
        if !score.is_finite() {
            return Err(parse_err(line, format!("non-finite score `{}`", &rec[0])));
        }
        let pu_label = match &rec[1] {
            "P" => PuLabel::LabeledPositive,
            "U" => PuLabel::Unlabeled,
            other => return Err(parse_err(line, format!("label `{other}` is not P or U"))),
        };
        let truth = if has_truth {
            match &rec[2] {
                "1" => Some(Truth::Positive),
                "0" => Some(Truth::Negative),
                "" => None,
                other => return Err(parse_err(line, format!("truth `{other}` is not 0 or 1"))),
            }
        } else {
            None
        };
        samples.push(PuSample::new(score, pu_label, truth)?);
    }
    validate_dataset(&samples)
}

pub fn read_dataset(path: &Path) -> Result<PuDataset> {
    let f = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    read_dataset_from(f)
}

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(BufWriter::new(f))
}

/// Writes samples in their stored order. The truth column is emitted when any
/// sample carries it.
pub fn write_dataset_to<W: Write>(w: W, ds: &PuDataset) -> Result<()> {
    let with_truth = ds.samples().iter().any(|s| s.truth.is_some());
    let mut wtr = csv::Writer::from_writer(w);
    let header = if with_truth {
        &DATASET_HEADER[..]
    } else {
        &DATASET_HEADER[..2]
    };
    wtr.write_record(header).map_err(csv_err)?;
    for s in ds.samples() {
        let label = match s.pu_label {
            PuLabel::LabeledPositive => "P",
            PuLabel::Unlabeled => "U",
        };
        let score = s.score.to_string();
        if with_truth {
            let truth = match s.truth {
                Some(Truth::Positive) => "1",
                Some(Truth::Negative) => "0",
                None => "",
            };
            wtr.write_record([score.as_str(), label, truth])
                .map_err(csv_err)?;
        } else {
            wtr.write_record([score.as_str(), label]).map_err(csv_err)?;
        }
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_dataset(path: &Path, ds: &PuDataset) -> Result<()> {
    write_dataset_to(create(path)?, ds)
}

/// `threshold,x,y`, one row per operating point. Anchor thresholds print as
/// `inf` and `-inf`.
pub fn write_curve_to<W: Write>(w: W, curve: &Curve) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(CURVE_HEADER).map_err(csv_err)?;
    for p in curve.points() {
        wtr.write_record([p.threshold.to_string(), p.x.to_string(), p.y.to_string()])
            .map_err(csv_err)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn write_curve(path: &Path, curve: &Curve) -> Result<()> {
    write_curve_to(create(path)?, curve)
}

/// Pretty-printed JSON with a trailing newline.
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

/// Serializes rows with the `csv` crate's serde support. `None` becomes an
/// empty field.
pub fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(create(path)?);
    for r in rows {
        wtr.serialize(r).map_err(csv_err)?;
    }
    wtr.flush()?;
    Ok(())
}

pub fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<Vec<T>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    rdr.deserialize()
        .map(|r| {
            r.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                parse_err(line, e.to_string())
            })
        })
        .collect()
}

/// One row of the AUC error table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AucTableRow {
    pub dataset_id: String,
    pub alpha: f64,
    pub beta: f64,
    pub e_beta_minus_alpha: f64,
    pub auc_true: f64,
    pub auc_pu: f64,
    pub mae_pu: f64,
    pub mae_ir: f64,
    pub mae_dr: f64,
    pub mae_ie: Option<f64>,
    pub mae_de: Option<f64>,
    #[serde(default)]
    pub infeasible_dr: usize,
    #[serde(default)]
    pub infeasible_de: usize,
    #[serde(default)]
    pub repeats: usize,
}

impl From<&ErrorCell> for AucTableRow {
    fn from(c: &ErrorCell) -> Self {
        Self {
            dataset_id: c.dataset_id.clone(),
            alpha: c.alpha,
            beta: c.beta_nominal,
            e_beta_minus_alpha: c.e_beta_minus_alpha,
            auc_true: c.auc_true,
            auc_pu: c.auc_pu,
            mae_pu: c.mae_pu,
            mae_ir: c.mae_ir,
            mae_dr: c.mae_dr,
            mae_ie: c.mae_ie,
            mae_de: c.mae_de,
            infeasible_dr: c.infeasible_dr,
            infeasible_de: c.infeasible_de,
            repeats: c.repeats,
        }
    }
}

/// One row of the AUC-PR error table (indirect recovery only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrTableRow {
    pub dataset_id: String,
    pub alpha: f64,
    pub beta: f64,
    pub e_beta_minus_alpha: f64,
    pub aucpr_true: Option<f64>,
    pub aucpr_pu: f64,
    pub mae_pr_pu: Option<f64>,
    pub mae_pr_ir: Option<f64>,
    pub mae_pr_ie: Option<f64>,
    pub repeats: usize,
}

impl From<&ErrorCell> for PrTableRow {
    fn from(c: &ErrorCell) -> Self {
        Self {
            dataset_id: c.dataset_id.clone(),
            alpha: c.alpha,
            beta: c.beta_nominal,
            e_beta_minus_alpha: c.e_beta_minus_alpha,
            aucpr_true: c.aucpr_true,
            aucpr_pu: c.aucpr_pu,
            mae_pr_pu: c.mae_pr_pu,
            mae_pr_ir: c.mae_pr_ir,
            mae_pr_ie: c.mae_pr_ie,
            repeats: c.repeats,
        }
    }
}
