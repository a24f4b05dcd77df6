//! Empirical PU rates, uncorrected ROC/PR curves and their areas.
//!
//! A classifier family is a score function plus a threshold; the classifier
//! at threshold `t` predicts positive iff `score > t`. Sweeps evaluate every
//! distinct observed score as a threshold, in descending order, followed by
//! the accept-all threshold `-inf`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::domain::{sort_descending, Curve, CurveKind, OperatingPoint, PuDataset};
use crate::error::{Error, Result};

/// How a step curve is integrated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AreaMode {
    /// Sum of boxes `(x[i+1] - x[i]) * y[i]`, no interpolation.
    StrictStep,
    /// Trapezoids. On an ROC curve this is the Mann-Whitney statistic with
    /// ties counted as one half.
    #[default]
    RankEquivalent,
}

/// Positive-unlabeled true and false positive rates at one threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatePair {
    pub tpr_pu: f64,
    pub fpr_pu: f64,
    pub threshold: f64,
}

/// A deterministic map from an input to a real-valued score.
pub trait Scorer {
    type Input: ?Sized;

    fn score(&self, input: &Self::Input) -> f64;
}

/// Scores stored in a column, addressed by row index.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredScores(pub Vec<f64>);

impl Scorer for StoredScores {
    type Input = usize;

    fn score(&self, row: &usize) -> f64 {
        self.0[*row]
    }
}

/// Number of entries in a descending slice strictly greater than `t`.
fn count_above(desc: &[f64], t: f64) -> usize {
    desc.partition_point(|&s| s > t)
}

pub fn pu_rates_at_threshold(ds: &PuDataset, t: f64) -> RatePair {
    let lab = ds.labeled_scores();
    let unl = ds.unlabeled_scores();
    RatePair {
        tpr_pu: count_above(lab, t) as f64 / lab.len() as f64,
        fpr_pu: count_above(unl, t) as f64 / unl.len() as f64,
        threshold: t,
    }
}

/// Sweeps every distinct score of two descending-sorted samples, then the
/// accept-all threshold. The first pair is always (0, 0), the last (1, 1).
pub fn rate_sweep(pos_desc: &[f64], neg_desc: &[f64]) -> Vec<RatePair> {
    let (np, nn) = (pos_desc.len() as f64, neg_desc.len() as f64);
    let mut out = Vec::with_capacity(pos_desc.len() + neg_desc.len() + 1);
    let (mut i, mut j) = (0, 0);
    while i < pos_desc.len() || j < neg_desc.len() {
        let t = match (pos_desc.get(i), neg_desc.get(j)) {
            (Some(&a), Some(&b)) => a.max(b),
            (Some(&a), None) => a,
            (None, Some(&b)) => b,
            (None, None) => unreachable!(),
        };
        out.push(RatePair {
            tpr_pu: i as f64 / np,
            fpr_pu: j as f64 / nn,
            threshold: t,
        });
        while i < pos_desc.len() && pos_desc[i] == t {
            i += 1;
        }
        while j < neg_desc.len() && neg_desc[j] == t {
            j += 1;
        }
    }
    out.push(RatePair {
        tpr_pu: 1.0,
        fpr_pu: 1.0,
        threshold: f64::NEG_INFINITY,
    });
    out
}

pub fn pu_rate_sweep(ds: &PuDataset) -> Vec<RatePair> {
    rate_sweep(ds.labeled_scores(), ds.unlabeled_scores())
}

/// ROC curve (x = fpr, y = tpr) from a threshold sweep.
pub fn roc_from_rates(rates: &[RatePair], mode: AreaMode) -> Result<Curve> {
    let points = rates
        .iter()
        .map(|r| OperatingPoint::new(r.fpr_pu, r.tpr_pu, r.threshold))
        .collect();
    Curve::new(CurveKind::Roc, points, mode)
}

/// PR curve (x = recall, y = precision) from a threshold sweep over samples
/// of sizes `n_pos` and `n_neg`. Thresholds predicting nothing are dropped.
pub fn pr_from_rates(
    rates: &[RatePair],
    n_pos: usize,
    n_neg: usize,
    mode: AreaMode,
) -> Result<Curve> {
    let (np, nn) = (n_pos as f64, n_neg as f64);
    let mut points: Vec<OperatingPoint> = rates
        .iter()
        .filter(|r| r.tpr_pu > 0.0 || r.fpr_pu > 0.0)
        .map(|r| {
            let tp = np * r.tpr_pu;
            OperatingPoint::new(r.tpr_pu, tp / (tp + nn * r.fpr_pu), r.threshold)
        })
        .collect();
    points.sort_by(|a, b| a.x.total_cmp(&b.x));
    Curve::new(CurveKind::Pr, points, mode)
}

/// Uncorrected ROC: labeled treated as positive, unlabeled as negative.
pub fn pu_roc(ds: &PuDataset, mode: AreaMode) -> Curve {
    roc_from_rates(&pu_rate_sweep(ds), mode).expect("sweep is sorted by construction")
}

/// Uncorrected PR curve; precision at accept-all equals the labeled fraction.
pub fn pu_pr(ds: &PuDataset, mode: AreaMode) -> Curve {
    pr_from_rates(&pu_rate_sweep(ds), ds.n_labeled(), ds.n_unlabeled(), mode)
        .expect("sweep is sorted by construction")
}

fn sorted_desc(scores: &[f64]) -> Vec<f64> {
    let mut v = scores.to_vec();
    sort_descending(&mut v);
    v
}

/// ROC curve of arbitrary positive and negative score samples.
pub fn roc_curve(pos: &[f64], neg: &[f64], mode: AreaMode) -> Result<Curve> {
    if pos.is_empty() || neg.is_empty() {
        return Err(Error::EmptyClass {
            labeled: pos.len(),
            unlabeled: neg.len(),
        });
    }
    roc_from_rates(&rate_sweep(&sorted_desc(pos), &sorted_desc(neg)), mode)
}

/// PR curve of arbitrary positive and negative score samples.
pub fn pr_curve(pos: &[f64], neg: &[f64], mode: AreaMode) -> Result<Curve> {
    if pos.is_empty() || neg.is_empty() {
        return Err(Error::EmptyClass {
            labeled: pos.len(),
            unlabeled: neg.len(),
        });
    }
    let rates = rate_sweep(&sorted_desc(pos), &sorted_desc(neg));
    pr_from_rates(&rates, pos.len(), neg.len(), mode)
}

pub(crate) fn area_of_points(points: &[OperatingPoint], mode: AreaMode) -> Result<f64> {
    if let Some(index) = points.windows(2).position(|w| !(w[1].x >= w[0].x)) {
        return Err(Error::UnsortedCurve { index: index + 1 });
    }
    let area = points
        .windows(2)
        .map(|w| {
            let dx = w[1].x - w[0].x;
            match mode {
                AreaMode::StrictStep => dx * w[0].y,
                AreaMode::RankEquivalent => dx * (w[0].y + w[1].y) / 2.0,
            }
        })
        .sum();
    Ok(area)
}

/// Area under a step curve in the requested mode.
pub fn step_area(curve: &Curve, mode: AreaMode) -> Result<f64> {
    area_of_points(curve.points(), mode)
}

/// Exhaustive `O(n*m)` Mann-Whitney AUC: the fraction of (pos, neg) pairs
/// ranked correctly, ties counting one half.
pub fn pairwise_auc_oracle(pos: &[f64], neg: &[f64]) -> Result<f64> {
    if pos.is_empty() || neg.is_empty() {
        return Err(Error::EmptyClass {
            labeled: pos.len(),
            unlabeled: neg.len(),
        });
    }
    let mut twice = 0u64;
    for &p in pos {
        for &n in neg {
            twice += match p.partial_cmp(&n) {
                Some(Ordering::Greater) => 2,
                Some(Ordering::Equal) => 1,
                _ => 0,
            };
        }
    }
    Ok(twice as f64 / (2.0 * pos.len() as f64 * neg.len() as f64))
}
