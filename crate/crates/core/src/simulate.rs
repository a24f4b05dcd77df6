//! Synthetic fully-labeled data and its corruption into PU datasets.
//!
//! Examples are drawn from a two-component mixture and scored with the exact
//! posterior `P(y = 1 | x)`. A PU dataset is then carved out of the pool: a
//! labeled set of fixed size with a chosen share of true positives, and an
//! unlabeled set made of the remaining examples, capped in size.
//!
//! All randomness comes from one root seed. Stream `0` of
//! `ChaCha20Rng::seed_from_u64(seed)` generates the pool and stream
//! `repeat + 1` drives the corruption of repeat `repeat`, so repeats are
//! independent of evaluation order.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::domain::{validate_dataset, Curve, MixtureParams, PuDataset, PuLabel, PuSample, Truth};
use crate::error::{Error, Result};
use crate::metrics::{pr_curve, roc_curve, AreaMode, Scorer};

/// A univariate class-conditional distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Component {
    Gaussian { mean: f64, std_dev: f64 },
}

impl Component {
    pub fn gaussian(mean: f64, std_dev: f64) -> Self {
        Component::Gaussian { mean, std_dev }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Component::Gaussian { mean, std_dev } => {
                if !mean.is_finite() || !(std_dev > 0.0) || !std_dev.is_finite() {
                    return Err(Error::InvalidConfig(format!(
                        "gaussian component needs finite mean and positive std_dev, got ({mean}, {std_dev})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Log density up to the shared `-ln(sqrt(2 pi))` constant.
    fn ln_density(&self, x: f64) -> f64 {
        match *self {
            Component::Gaussian { mean, std_dev } => {
                let z = (x - mean) / std_dev;
                -0.5 * z * z - std_dev.ln()
            }
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            Component::Gaussian { mean, std_dev } => Normal::new(mean, std_dev)
                .expect("validated parameters")
                .sample(rng),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureSpec {
    pub pos_component: Component,
    pub neg_component: Component,
    /// Positive fraction of the generated pool, in (0, 1).
    pub true_alpha_target: f64,
}

impl MixtureSpec {
    pub fn binormal(pos_mean: f64, neg_mean: f64, alpha: f64) -> Self {
        Self {
            pos_component: Component::gaussian(pos_mean, 1.0),
            neg_component: Component::gaussian(neg_mean, 1.0),
            true_alpha_target: alpha,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.pos_component.validate()?;
        self.neg_component.validate()?;
        if !(self.true_alpha_target > 0.0 && self.true_alpha_target < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "true_alpha_target={} must lie in (0, 1)",
                self.true_alpha_target
            )));
        }
        Ok(())
    }

    /// Exact posterior probability of the positive class at `x`.
    pub fn posterior(&self, x: f64) -> f64 {
        let prior = self.true_alpha_target;
        let logit = (prior / (1.0 - prior)).ln()
            + (self.pos_component.ln_density(x) - self.neg_component.ln_density(x));
        1.0 / (1.0 + (-logit).exp())
    }
}

impl Scorer for MixtureSpec {
    type Input = f64;

    fn score(&self, x: &f64) -> f64 {
        self.posterior(*x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PoolSample {
    pub x: f64,
    pub score: f64,
    pub truth: Truth,
}

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws `n` fully-labeled, scored examples. Deterministic in `seed`.
pub fn generate_labeled_pool(spec: &MixtureSpec, n: usize, seed: u64) -> Result<Vec<PoolSample>> {
    spec.validate()?;
    if n < 2 {
        return Err(Error::InvalidConfig(format!(
            "pool size {n} must be at least 2"
        )));
    }
    let mut rng = stream_rng(seed, 0);
    let pool = (0..n)
        .map(|_| {
            let (truth, comp) = if rng.random_bool(spec.true_alpha_target) {
                (Truth::Positive, &spec.pos_component)
            } else {
                (Truth::Negative, &spec.neg_component)
            };
            let x = comp.sample(&mut rng);
            PoolSample {
                x,
                score: spec.score(&x),
                truth,
            }
        })
        .collect();
    Ok(pool)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub n_labeled: usize,
    /// Nominal share of true positives in the labeled set.
    pub beta: f64,
    pub unlabeled_cap: usize,
    pub repeats: usize,
    pub seed: u64,
    /// Generated pool size; `None` uses [`ProtocolConfig::default_pool_size`].
    pub pool_size: Option<usize>,
    pub area_mode: AreaMode,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        Self {
            n_labeled: 1000,
            beta: 1.0,
            unlabeled_cap: 10_000,
            repeats: 50,
            seed: 0,
            pool_size: None,
            area_mode: AreaMode::RankEquivalent,
        }
    }
}

impl ProtocolConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_labeled < 10 {
            return Err(Error::InvalidConfig(format!(
                "n_labeled={} must be at least 10",
                self.n_labeled
            )));
        }
        if self.repeats < 1 {
            return Err(Error::InvalidConfig("repeats must be at least 1".into()));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "beta={} must lie in (0, 1]",
                self.beta
            )));
        }
        if self.unlabeled_cap < 1 {
            return Err(Error::InvalidConfig(
                "unlabeled cap must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Ten times the PU dataset size, so the unlabeled positive fraction
    /// stays close to the pool's after the labeled positives are removed.
    pub fn default_pool_size(&self) -> usize {
        10 * (self.n_labeled + self.unlabeled_cap)
    }

    pub fn pool_size(&self) -> usize {
        self.pool_size.unwrap_or_else(|| self.default_pool_size())
    }

    /// Number of true positives placed in the labeled set, `beta * n_labeled`
    /// rounded half to even.
    pub fn labeled_positives(&self) -> usize {
        (self.beta * self.n_labeled as f64).round_ties_even() as usize
    }
}

/// One PU dataset carved from a pool, with its realized mixture parameters
/// and ground-truth curves.
#[derive(Debug, Clone, PartialEq)]
pub struct PuSplit {
    /// Labeled samples first, then unlabeled; every sample carries `truth`.
    pub dataset: PuDataset,
    /// Realized `alpha`, realized `beta` and labeled fraction `c`.
    pub params: MixtureParams,
    pub beta_nominal: f64,
    pub beta_realized: f64,
    /// ROC of the scorer against truth labels over labeled and unlabeled.
    pub truth_roc: Curve,
    /// PR curve against truth labels over the unlabeled set, whose positive
    /// share is `alpha`. `None` when the unlabeled set has a single class.
    pub truth_pr: Option<Curve>,
}

/// Samples the labeled set without replacement (`round(beta * n)` positives,
/// the rest negatives), then declares a random subset of the remaining
/// examples, at most `unlabeled_cap`, unlabeled.
pub fn corrupt_to_pu(pool: &[PoolSample], cfg: &ProtocolConfig, repeat: u64) -> Result<PuSplit> {
    cfg.validate()?;
    let (pos, neg): (Vec<usize>, Vec<usize>) =
        (0..pool.len()).partition(|&i| pool[i].truth == Truth::Positive);
    let k_pos = cfg.labeled_positives();
    let k_neg = cfg.n_labeled - k_pos;
    if pos.len() < k_pos || neg.len() < k_neg || pool.len() <= cfg.n_labeled {
        return Err(Error::InsufficientPool {
            needed_pos: k_pos,
            needed_neg: k_neg,
            have_pos: pos.len(),
            have_neg: neg.len(),
        });
    }

    let mut rng = stream_rng(cfg.seed, repeat + 1);
    let mut taken = vec![false; pool.len()];
    let mut labeled = Vec::with_capacity(cfg.n_labeled);
    for (group, k) in [(&pos, k_pos), (&neg, k_neg)] {
        for j in index::sample(&mut rng, group.len(), k) {
            taken[group[j]] = true;
            labeled.push(group[j]);
        }
    }
    let rest: Vec<usize> = (0..pool.len()).filter(|&i| !taken[i]).collect();
    let n_unl = rest.len().min(cfg.unlabeled_cap);
    let unlabeled: Vec<usize> = index::sample(&mut rng, rest.len(), n_unl)
        .into_iter()
        .map(|j| rest[j])
        .collect();

    let mut samples = Vec::with_capacity(labeled.len() + unlabeled.len());
    for (idx, label) in [
        (&labeled, PuLabel::LabeledPositive),
        (&unlabeled, PuLabel::Unlabeled),
    ] {
        for &i in idx {
            samples.push(PuSample::new(pool[i].score, label, Some(pool[i].truth))?);
        }
    }
    let dataset = validate_dataset(&samples)?;

    let unl_pos = unlabeled
        .iter()
        .filter(|&&i| pool[i].truth == Truth::Positive)
        .count();
    let alpha = unl_pos as f64 / n_unl as f64;
    let beta_realized = k_pos as f64 / cfg.n_labeled as f64;
    let params =
        MixtureParams::new(alpha, beta_realized)?.with_labeled_fraction(dataset.summary().c)?;

    let scores_by = |idx: &mut dyn Iterator<Item = &usize>, t: Truth| -> Vec<f64> {
        idx.filter(|&&i| pool[i].truth == t)
            .map(|&i| pool[i].score)
            .collect()
    };
    let all_pos = scores_by(&mut labeled.iter().chain(&unlabeled), Truth::Positive);
    let all_neg = scores_by(&mut labeled.iter().chain(&unlabeled), Truth::Negative);
    let truth_roc = roc_curve(&all_pos, &all_neg, cfg.area_mode)?;
    let unl_pos_scores = scores_by(&mut unlabeled.iter(), Truth::Positive);
    let unl_neg_scores = scores_by(&mut unlabeled.iter(), Truth::Negative);
    let truth_pr = pr_curve(&unl_pos_scores, &unl_neg_scores, cfg.area_mode).ok();

    Ok(PuSplit {
        dataset,
        params,
        beta_nominal: cfg.beta,
        beta_realized,
        truth_roc,
        truth_pr,
    })
}
