//! Recovery of positive-vs-negative performance from positive-unlabeled
//! measurements.
//!
//! With `alpha` the positive fraction of the unlabeled distribution and
//! `beta` the positive fraction of the labeled distribution, the PU rates of
//! any classifier are the mixtures
//!
//! ```text
//! tpr_pu = beta  * tpr + (1 - beta)  * fpr
//! fpr_pu = alpha * tpr + (1 - alpha) * fpr
//! ```
//!
//! and the PU AUC is `(1 - (beta - alpha)) / 2 + (beta - alpha) * auc`.
//! Everything here inverts those relations, either per operating point
//! (indirect) or on the area itself (direct).

use serde::{Deserialize, Serialize};

use crate::domain::{
    CorrectionMethod, CorrectionReport, Curve, CurveKind, MixtureParams, OperatingPoint, PuDataset,
};
use crate::error::{Error, Result};
use crate::metrics::{pu_pr, pu_rate_sweep, roc_from_rates, AreaMode, RatePair};

/// Smallest `beta - alpha` accepted by any conversion.
pub const MIN_SEPARATION: f64 = 1e-6;

/// Recovered rates within this distance of 0 or 1 are snapped onto the
/// boundary. Absorbs rounding in `(1 - alpha) - (1 - beta)` vs `beta - alpha`.
pub const RANGE_SLACK: f64 = 1e-12;

fn snap_unit(v: f64) -> f64 {
    if v.abs() < RANGE_SLACK {
        0.0
    } else if (v - 1.0).abs() < RANGE_SLACK {
        1.0
    } else {
        v
    }
}

pub fn check_separation(p: &MixtureParams) -> Result<()> {
    let gap = p.separation();
    if gap < MIN_SEPARATION {
        return Err(Error::DegenerateSeparation {
            gap,
            min: MIN_SEPARATION,
        });
    }
    Ok(())
}

/// True rates recovered from one PU operating point, before any filtering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecoveredRates {
    pub tpr: f64,
    pub fpr: f64,
    pub threshold: f64,
    pub in_range: bool,
}

pub fn recover_rates(r: &RatePair, p: &MixtureParams) -> Result<RecoveredRates> {
    check_separation(p)?;
    let (a, b) = (p.alpha(), p.beta());
    let gap = b - a;
    let tpr = snap_unit(((1.0 - a) * r.tpr_pu - (1.0 - b) * r.fpr_pu) / gap);
    let fpr = snap_unit((b * r.fpr_pu - a * r.tpr_pu) / gap);
    let unit = 0.0..=1.0;
    Ok(RecoveredRates {
        tpr,
        fpr,
        threshold: r.threshold,
        in_range: unit.contains(&tpr) && unit.contains(&fpr),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionEstimate {
    /// Clamped to [0, 1].
    pub value: f64,
    pub raw: f64,
    pub clamped: bool,
}

impl PrecisionEstimate {
    fn from_raw(raw: f64) -> Self {
        let value = raw.clamp(0.0, 1.0);
        Self {
            value,
            raw,
            clamped: value != raw,
        }
    }
}

/// Precision `alpha * tpr / fpr_pu` from a recovered true positive rate.
pub fn recover_precision_direct(tpr: f64, fpr_pu: f64, alpha: f64) -> Result<PrecisionEstimate> {
    if !(fpr_pu > 0.0) {
        return Err(Error::UndefinedPrecision("fpr_pu is zero"));
    }
    Ok(PrecisionEstimate::from_raw(alpha * tpr / fpr_pu))
}

/// PU precision `n_lab * tpr_pu / (n_lab * tpr_pu + n_unl * fpr_pu)`.
pub fn pu_precision(r: &RatePair, n_labeled: usize, n_unlabeled: usize) -> Result<f64> {
    let tp = n_labeled as f64 * r.tpr_pu;
    let denom = tp + n_unlabeled as f64 * r.fpr_pu;
    if !(denom > 0.0) {
        return Err(Error::UndefinedPrecision("empty prediction set"));
    }
    Ok(tp / denom)
}

/// Converts PU precision to true precision through the PU odds ratio.
/// Requires the labeled fraction `c` on `p`. The result is not clamped.
pub fn recover_precision_from_pu(rho_pu: f64, p: &MixtureParams) -> Result<f64> {
    let c = p.labeled_fraction().ok_or(Error::MissingLabeledFraction)?;
    check_separation(p)?;
    if !(rho_pu < 1.0) {
        return Err(Error::UndefinedPrecision("rho_pu is one"));
    }
    let (a, b) = (p.alpha(), p.beta());
    let odds = rho_pu / (1.0 - rho_pu);
    Ok(a * (1.0 - a) / (b - a) * ((1.0 - c) / c * odds - (1.0 - b) / (1.0 - a)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectAuc {
    /// Clipped to [0, 1].
    pub auc: f64,
    pub raw: f64,
    pub clipped: bool,
    pub infeasible: bool,
}

/// PU AUC implied by a true AUC.
pub fn pu_auc_from_true(auc: f64, p: &MixtureParams) -> f64 {
    let gap = p.separation();
    (1.0 - gap) / 2.0 + gap * auc
}

/// One-step AUC correction. Out-of-range results are clipped and flagged.
pub fn correct_auc_direct(auc_pu: f64, p: &MixtureParams) -> Result<DirectAuc> {
    check_separation(p)?;
    if !(0.0..=1.0).contains(&auc_pu) {
        return Err(Error::InvalidParams(format!(
            "auc_pu={auc_pu} outside [0, 1]"
        )));
    }
    let gap = p.separation();
    // same as (auc_pu - (1 - gap) / 2) / gap, exact at auc_pu = 1/2 and gap = 1
    let raw = if gap == 1.0 {
        auc_pu
    } else {
        0.5 + (auc_pu - 0.5) / gap
    };
    let infeasible = !(0.0..=1.0).contains(&raw);
    Ok(DirectAuc {
        auc: raw.clamp(0.0, 1.0),
        raw,
        clipped: infeasible,
        infeasible,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AucOrdering {
    CorrectedGreater,
    Equal,
    CorrectedSmaller,
}

/// Sign of `auc - auc_pu = (1 - gap) / gap * (auc_pu - 1/2)`.
pub fn auc_ordering_check(auc_pu: f64, p: &MixtureParams) -> AucOrdering {
    let gap = p.separation();
    let diff = (1.0 - gap) / gap * (auc_pu - 0.5);
    if diff > 0.0 {
        AucOrdering::CorrectedGreater
    } else if diff < 0.0 {
        AucOrdering::CorrectedSmaller
    } else {
        AucOrdering::Equal
    }
}

/// A recovered curve plus how many candidate points were discarded.
#[derive(Debug, Clone, PartialEq)]
pub struct IndirectCurve {
    pub curve: Curve,
    pub candidates: usize,
    pub filtered: usize,
}

/// Steps 1-3 of ROC recovery: convert, drop out-of-range points, sort by
/// fpr (ties by tpr).
pub(crate) fn recovered_roc_points(
    points: &[RatePair],
    p: &MixtureParams,
) -> Result<(Vec<OperatingPoint>, usize)> {
    let mut kept = Vec::with_capacity(points.len());
    let mut filtered = 0;
    for r in points {
        let rec = recover_rates(r, p)?;
        if rec.in_range {
            kept.push(OperatingPoint::new(rec.fpr, rec.tpr, rec.threshold));
        } else {
            filtered += 1;
        }
    }
    kept.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    Ok((kept, filtered))
}

/// Replaces each tpr by the running maximum from the left.
pub(crate) fn monotonize(points: &mut [OperatingPoint]) {
    let mut best = f64::NEG_INFINITY;
    for pt in points.iter_mut() {
        best = best.max(pt.y);
        pt.y = best;
    }
}

pub(crate) fn anchor_roc(points: &mut Vec<OperatingPoint>) {
    if points.first().is_none_or(|p| (p.x, p.y) != (0.0, 0.0)) {
        points.insert(0, OperatingPoint::new(0.0, 0.0, f64::INFINITY));
    }
    if points.last().is_none_or(|p| (p.x, p.y) != (1.0, 1.0)) {
        points.push(OperatingPoint::new(1.0, 1.0, f64::NEG_INFINITY));
    }
}

/// Rebuilds the true ROC curve from a PU threshold sweep: convert each point,
/// drop points outside the unit square, sort by fpr, replace dips in tpr by
/// the largest value to their left, and anchor at (0,0) and (1,1).
pub fn recover_roc_indirect(
    points: &[RatePair],
    p: &MixtureParams,
    mode: AreaMode,
) -> Result<IndirectCurve> {
    check_separation(p)?;
    let (mut kept, filtered) = recovered_roc_points(points, p)?;
    if kept.is_empty() {
        return Err(Error::EmptyRecoveredCurve {
            input: points.len(),
        });
    }
    monotonize(&mut kept);
    anchor_roc(&mut kept);
    Ok(IndirectCurve {
        curve: Curve::new(CurveKind::Roc, kept, mode)?,
        candidates: points.len(),
        filtered,
    })
}

/// Rebuilds the true PR curve: recall from the recovered tpr, precision as
/// `alpha * tpr / fpr_pu` clamped to [0, 1]. No monotonization is applied.
pub fn recover_pr_indirect(
    points: &[RatePair],
    p: &MixtureParams,
    mode: AreaMode,
) -> Result<IndirectCurve> {
    check_separation(p)?;
    let mut kept = Vec::with_capacity(points.len());
    for r in points {
        if !(r.fpr_pu > 0.0) {
            continue;
        }
        let rec = recover_rates(r, p)?;
        if !(0.0..=1.0).contains(&rec.tpr) {
            continue;
        }
        let prec = recover_precision_direct(rec.tpr, r.fpr_pu, p.alpha())?;
        kept.push(OperatingPoint::new(rec.tpr, prec.value, r.threshold));
    }
    if kept.is_empty() {
        return Err(Error::EmptyRecoveredCurve {
            input: points.len(),
        });
    }
    kept.sort_by(|a, b| a.x.total_cmp(&b.x));
    let filtered = points.len() - kept.len();
    Ok(IndirectCurve {
        curve: Curve::new(CurveKind::Pr, kept, mode)?,
        candidates: points.len(),
        filtered,
    })
}

/// One cell of a feasibility heatmap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityCell {
    pub alpha_hat: f64,
    pub beta_hat: f64,
    /// False when `beta_hat <= alpha_hat`; such cells are not evaluated.
    pub valid: bool,
    pub auc_est: Option<f64>,
    pub abs_error: Option<f64>,
    pub infeasible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityGrid {
    pub auc_true: f64,
    pub params_true: MixtureParams,
    pub auc_pu: f64,
    /// Intervals per axis; the grid has `(resolution + 1)^2` cells.
    pub resolution: usize,
    /// Row-major in `alpha_hat`, then `beta_hat`.
    pub cells: Vec<FeasibilityCell>,
}

impl FeasibilityGrid {
    pub fn cell(&self, i_alpha: usize, j_beta: usize) -> &FeasibilityCell {
        &self.cells[i_alpha * (self.resolution + 1) + j_beta]
    }
}

/// Maps a true `(alpha, beta, auc)` to its PU AUC, then re-corrects that PU
/// AUC with every `(alpha_hat, beta_hat)` on a uniform grid over the unit
/// square. Each cell depends only on its own coordinates.
pub fn feasibility_sweep(
    auc_true: f64,
    p_true: &MixtureParams,
    resolution: usize,
) -> Result<FeasibilityGrid> {
    check_separation(p_true)?;
    if resolution < 2 {
        return Err(Error::InvalidConfig(format!(
            "grid resolution {resolution} must be at least 2"
        )));
    }
    if !(0.0..=1.0).contains(&auc_true) {
        return Err(Error::InvalidParams(format!(
            "auc={auc_true} outside [0, 1]"
        )));
    }
    let auc_pu = pu_auc_from_true(auc_true, p_true);
    let r = resolution as f64;
    let mut cells = Vec::with_capacity((resolution + 1) * (resolution + 1));
    for i in 0..=resolution {
        let alpha_hat = i as f64 / r;
        for j in 0..=resolution {
            let beta_hat = j as f64 / r;
            let est = MixtureParams::new(alpha_hat, beta_hat)
                .ok()
                .and_then(|p| correct_auc_direct(auc_pu, &p).ok());
            cells.push(match est {
                Some(d) => FeasibilityCell {
                    alpha_hat,
                    beta_hat,
                    valid: true,
                    auc_est: Some(d.auc),
                    abs_error: Some((auc_true - d.auc).abs()),
                    infeasible: d.infeasible,
                },
                None => FeasibilityCell {
                    alpha_hat,
                    beta_hat,
                    valid: false,
                    auc_est: None,
                    abs_error: None,
                    infeasible: false,
                },
            });
        }
    }
    Ok(FeasibilityGrid {
        auc_true,
        params_true: *p_true,
        auc_pu,
        resolution,
        cells,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodSelection {
    Direct,
    Indirect,
    #[default]
    Both,
}

impl MethodSelection {
    pub fn direct(self) -> bool {
        matches!(self, Self::Direct | Self::Both)
    }

    pub fn indirect(self) -> bool {
        matches!(self, Self::Indirect | Self::Both)
    }
}

/// Uncorrected curves, recovered curves and per-method reports for a dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetCorrection {
    pub roc_pu: Curve,
    pub pr_pu: Curve,
    pub roc_corrected: Option<IndirectCurve>,
    pub pr_corrected: Option<IndirectCurve>,
    pub reports: Vec<CorrectionReport>,
}

/// Runs the requested corrections on one dataset. Direct and indirect
/// recovery share the same empirical threshold sweep. When `p` carries no
/// labeled fraction, the dataset's own is attached.
pub fn correct_dataset(
    ds: &PuDataset,
    p: &MixtureParams,
    methods: MethodSelection,
    mode: AreaMode,
) -> Result<DatasetCorrection> {
    check_separation(p)?;
    let params = match p.labeled_fraction() {
        Some(_) => *p,
        None => p.with_labeled_fraction(ds.summary().c)?,
    };
    let sweep = pu_rate_sweep(ds);
    let roc_pu = roc_from_rates(&sweep, mode)?;
    let pr_pu = pu_pr(ds, mode);
    let auc_pu = roc_pu.area();
    let mut reports = Vec::new();

    if methods.direct() {
        let d = correct_auc_direct(auc_pu, &params)?;
        reports.push(CorrectionReport {
            method: CorrectionMethod::Direct,
            params,
            auc_pu,
            auc_corrected: d.auc,
            auc_raw: d.raw,
            aucpr_pu: Some(pr_pu.area()),
            aucpr_corrected: None,
            clipped: d.clipped,
            infeasible: d.infeasible,
            filtered_points: 0,
        });
    }

    let (mut roc_corrected, mut pr_corrected) = (None, None);
    if methods.indirect() {
        let roc = recover_roc_indirect(&sweep, &params, mode)?;
        let pr = recover_pr_indirect(&sweep, &params, mode)?;
        let auc = roc.curve.area();
        reports.push(CorrectionReport {
            method: CorrectionMethod::Indirect,
            params,
            auc_pu,
            auc_corrected: auc,
            auc_raw: auc,
            aucpr_pu: Some(pr_pu.area()),
            aucpr_corrected: Some(pr.curve.area()),
            clipped: false,
            infeasible: false,
            filtered_points: roc.filtered,
        });
        roc_corrected = Some(roc);
        pr_corrected = Some(pr);
    }

    Ok(DatasetCorrection {
        roc_pu,
        pr_pu,
        roc_corrected,
        pr_corrected,
        reports,
    })
}
