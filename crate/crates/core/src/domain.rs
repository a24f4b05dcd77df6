//! Domain types shared by the metric, correction and simulation modules.
//!
//! Every type here is immutable once built. Scores are arbitrary finite reals;
//! only their ranking matters. The optional `truth` label is carried for
//! simulation bookkeeping and is never read by the correction code.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metrics::{self, AreaMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PuLabel {
    LabeledPositive,
    Unlabeled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Truth {
    Positive,
    Negative,
}

/// One scored example.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PuSample {
    pub score: f64,
    pub pu_label: PuLabel,
    pub truth: Option<Truth>,
}

impl PuSample {
    pub fn new(score: f64, pu_label: PuLabel, truth: Option<Truth>) -> Result<Self> {
        if !score.is_finite() {
            return Err(Error::NonFiniteScore(score));
        }
        Ok(Self {
            score,
            pu_label,
            truth,
        })
    }

    pub fn labeled(score: f64) -> Result<Self> {
        Self::new(score, PuLabel::LabeledPositive, None)
    }

    pub fn unlabeled(score: f64) -> Result<Self> {
        Self::new(score, PuLabel::Unlabeled, None)
    }
}

/// Class prior `alpha` of the unlabeled distribution, positive purity `beta`
/// of the labeled distribution, and optionally the labeled fraction `c`.
///
/// Construction enforces `0 <= alpha < beta <= 1` and `0 < c < 1`. The
/// numerical separation guard on `beta - alpha` is applied by the
/// correction routines (see [`crate::correction::MIN_SEPARATION`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureParams {
    alpha: f64,
    beta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<f64>,
}

impl MixtureParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "alpha={alpha} and beta={beta} must be finite"
            )));
        }
        if !(0.0..1.0).contains(&alpha) {
            return Err(Error::InvalidParams(format!(
                "alpha={alpha} must lie in [0, 1)"
            )));
        }
        if !(beta > alpha && beta <= 1.0) {
            return Err(Error::InvalidParams(format!(
                "beta={beta} must lie in (alpha, 1] with alpha={alpha}"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            c: None,
        })
    }

    pub fn with_labeled_fraction(self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c < 1.0) {
            return Err(Error::InvalidParams(format!(
                "labeled fraction c={c} must lie in (0, 1)"
            )));
        }
        Ok(Self { c: Some(c), ..self })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn labeled_fraction(&self) -> Option<f64> {
        self.c
    }

    /// `beta - alpha`, the denominator of every conversion formula.
    pub fn separation(&self) -> f64 {
        self.beta - self.alpha
    }
}

/// One point of an ROC curve (x = FPR, y = TPR) or a PR curve
/// (x = recall, y = precision), tagged with the threshold that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint {
    pub x: f64,
    pub y: f64,
    pub threshold: f64,
}

impl OperatingPoint {
    pub fn new(x: f64, y: f64, threshold: f64) -> Self {
        Self { x, y, threshold }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CurveKind {
    Roc,
    Pr,
}

/// An ROC or PR curve stored as a step function over ordered points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    kind: CurveKind,
    points: Vec<OperatingPoint>,
    area: f64,
    mode: AreaMode,
}

impl Curve {
    /// Builds a curve and integrates it. Points must already be sorted by x.
    pub fn new(kind: CurveKind, points: Vec<OperatingPoint>, mode: AreaMode) -> Result<Self> {
        let area = metrics::area_of_points(&points, mode)?;
        Ok(Self {
            kind,
            points,
            area,
            mode,
        })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn points(&self) -> &[OperatingPoint] {
        &self.points
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    pub fn area_mode(&self) -> AreaMode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CorrectionMethod {
    Direct,
    Indirect,
}

/// Uncorrected and corrected summary values for one correction method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionReport {
    pub method: CorrectionMethod,
    pub params: MixtureParams,
    pub auc_pu: f64,
    /// Always within [0, 1].
    pub auc_corrected: f64,
    /// Value before clipping. Equal to `auc_corrected` unless `clipped`.
    pub auc_raw: f64,
    pub aucpr_pu: Option<f64>,
    pub aucpr_corrected: Option<f64>,
    pub clipped: bool,
    pub infeasible: bool,
    /// Recovered operating points discarded for leaving [0, 1].
    pub filtered_points: usize,
}

/// Counts of a validated dataset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub n_labeled: usize,
    pub n_unlabeled: usize,
    /// `n_labeled / (n_labeled + n_unlabeled)`.
    pub c: f64,
}

/// A dataset that passed [`validate_dataset`]. Score vectors are kept sorted
/// in descending order for threshold sweeps.
#[derive(Debug, Clone, PartialEq)]
pub struct PuDataset {
    samples: Vec<PuSample>,
    labeled: Vec<f64>,
    unlabeled: Vec<f64>,
}

impl PuDataset {
    pub fn summary(&self) -> DatasetSummary {
        let n_labeled = self.labeled.len();
        let n_unlabeled = self.unlabeled.len();
        DatasetSummary {
            n_labeled,
            n_unlabeled,
            c: n_labeled as f64 / (n_labeled + n_unlabeled) as f64,
        }
    }

    pub fn samples(&self) -> &[PuSample] {
        &self.samples
    }

    /// Labeled scores, descending.
    pub fn labeled_scores(&self) -> &[f64] {
        &self.labeled
    }

    /// Unlabeled scores, descending.
    pub fn unlabeled_scores(&self) -> &[f64] {
        &self.unlabeled
    }

    pub fn n_labeled(&self) -> usize {
        self.labeled.len()
    }

    pub fn n_unlabeled(&self) -> usize {
        self.unlabeled.len()
    }
}

pub(crate) fn sort_descending(scores: &mut [f64]) {
    scores.sort_unstable_by(|a, b| b.total_cmp(a));
}

/// Checks scores and class counts and returns the validated dataset.
pub fn validate_dataset(samples: &[PuSample]) -> Result<PuDataset> {
    let mut labeled = Vec::new();
    let mut unlabeled = Vec::new();
    for s in samples {
        if !s.score.is_finite() {
            return Err(Error::NonFiniteScore(s.score));
        }
        match s.pu_label {
            PuLabel::LabeledPositive => labeled.push(s.score),
            PuLabel::Unlabeled => unlabeled.push(s.score),
        }
    }
    if labeled.is_empty() || unlabeled.is_empty() {
        return Err(Error::EmptyClass {
            labeled: labeled.len(),
            unlabeled: unlabeled.len(),
        });
    }
    sort_descending(&mut labeled);
    sort_descending(&mut unlabeled);
    Ok(PuDataset {
        samples: samples.to_vec(),
        labeled,
        unlabeled,
    })
}
