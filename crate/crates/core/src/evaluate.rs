//! Evaluation loops: per-cell error tables, binning by `beta - alpha` error,
//! and the one-sided counting test comparing direct and indirect recovery.
//!
//! Method labels follow the usual convention: `PU` is the uncorrected
//! estimate, `D`/`I` direct and indirect recovery, and the suffix `R`/`E`
//! marks real or externally estimated `(alpha, beta)`.

use log::warn;
use serde::{Deserialize, Serialize};

use crate::correction::{correct_auc_direct, recover_pr_indirect, recover_roc_indirect};
use crate::domain::MixtureParams;
use crate::error::{Error, Result};
use crate::metrics::{pu_pr, pu_rate_sweep, roc_from_rates};
use crate::simulate::{corrupt_to_pu, generate_labeled_pool, MixtureSpec, ProtocolConfig, PuSplit};

/// Where the `(alpha, beta)` used for the E-columns come from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamSource {
    /// Only the realized parameters are used; E-columns stay empty.
    Real,
    /// Caller-supplied estimates, e.g. from a class-prior estimator.
    Provided { alpha_hat: f64, beta_hat: f64 },
}

/// Everything measured on one repeat.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RepeatOutcome {
    pub alpha: f64,
    pub beta: f64,
    pub auc_true: f64,
    pub auc_pu: f64,
    pub auc_ir: f64,
    pub auc_dr: f64,
    pub dr_infeasible: bool,
    pub auc_ie: Option<f64>,
    pub auc_de: Option<f64>,
    pub de_infeasible: Option<bool>,
    pub aucpr_true: Option<f64>,
    pub aucpr_pu: f64,
    pub aucpr_ir: f64,
    pub aucpr_ie: Option<f64>,
    /// `|(beta_hat - alpha_hat) - (beta - alpha)|`, zero for real parameters.
    pub gap_error: f64,
    pub ir_filtered: usize,
}

/// Mean absolute errors of one (dataset, beta) cell over all repeats.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorCell {
    pub dataset_id: String,
    /// Mean realized alpha.
    pub alpha: f64,
    pub beta_nominal: f64,
    pub e_beta_minus_alpha: f64,
    pub auc_true: f64,
    pub auc_pu: f64,
    pub mae_pu: f64,
    pub mae_ir: f64,
    pub mae_dr: f64,
    pub mae_ie: Option<f64>,
    pub mae_de: Option<f64>,
    pub aucpr_true: Option<f64>,
    pub aucpr_pu: f64,
    pub mae_pr_pu: Option<f64>,
    pub mae_pr_ir: Option<f64>,
    pub mae_pr_ie: Option<f64>,
    pub repeats: usize,
    pub infeasible_dr: usize,
    pub infeasible_de: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub cell: ErrorCell,
    pub runs: Vec<RepeatOutcome>,
}

/// Applies uncorrected, direct and indirect estimation to one PU split.
pub fn evaluate_split(split: &PuSplit, source: ParamSource) -> Result<RepeatOutcome> {
    let real = split.params;
    let mode = split.truth_roc.area_mode();
    let ds = &split.dataset;
    let sweep = pu_rate_sweep(ds);
    let auc_pu = roc_from_rates(&sweep, mode)?.area();
    let aucpr_pu = pu_pr(ds, mode).area();

    let dr = correct_auc_direct(auc_pu, &real)?;
    let ir = recover_roc_indirect(&sweep, &real, mode)?;
    let pr_ir = recover_pr_indirect(&sweep, &real, mode)?;

    let (mut auc_ie, mut auc_de, mut de_infeasible, mut aucpr_ie) = (None, None, None, None);
    let mut gap_error = 0.0;
    if let ParamSource::Provided {
        alpha_hat,
        beta_hat,
    } = source
    {
        let est = MixtureParams::new(alpha_hat, beta_hat)?;
        let de = correct_auc_direct(auc_pu, &est)?;
        auc_de = Some(de.auc);
        de_infeasible = Some(de.infeasible);
        auc_ie = Some(recover_roc_indirect(&sweep, &est, mode)?.curve.area());
        aucpr_ie = Some(recover_pr_indirect(&sweep, &est, mode)?.curve.area());
        gap_error = (est.separation() - real.separation()).abs();
    }

    Ok(RepeatOutcome {
        alpha: real.alpha(),
        beta: real.beta(),
        auc_true: split.truth_roc.area(),
        auc_pu,
        auc_ir: ir.curve.area(),
        auc_dr: dr.auc,
        dr_infeasible: dr.infeasible,
        auc_ie,
        auc_de,
        de_infeasible,
        aucpr_true: split.truth_pr.as_ref().map(|c| c.area()),
        aucpr_pu,
        aucpr_ir: pr_ir.curve.area(),
        aucpr_ie,
        gap_error,
        ir_filtered: ir.filtered,
    })
}

fn mean(values: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    (n > 0).then(|| sum / n as f64)
}

fn mae(runs: &[RepeatOutcome], est: impl Fn(&RepeatOutcome) -> Option<f64>) -> Option<f64> {
    mean(
        runs.iter()
            .filter_map(|r| Some((est(r)? - r.auc_true).abs())),
    )
}

fn mae_pr(runs: &[RepeatOutcome], est: impl Fn(&RepeatOutcome) -> Option<f64>) -> Option<f64> {
    mean(
        runs.iter()
            .filter_map(|r| Some((est(r)? - r.aucpr_true?).abs())),
    )
}

/// Aggregates repeat outcomes in their given order.
pub fn summarize(
    dataset_id: &str,
    beta_nominal: f64,
    runs: Vec<RepeatOutcome>,
) -> Result<Experiment> {
    if runs.is_empty() {
        return Err(Error::InvalidConfig("no repeats to summarize".into()));
    }
    let n = runs.len();
    let m = |f: fn(&RepeatOutcome) -> f64| mean(runs.iter().map(f)).expect("non-empty");
    let cell = ErrorCell {
        dataset_id: dataset_id.to_string(),
        alpha: m(|r| r.alpha),
        beta_nominal,
        e_beta_minus_alpha: m(|r| r.gap_error),
        auc_true: m(|r| r.auc_true),
        auc_pu: m(|r| r.auc_pu),
        mae_pu: mae(&runs, |r| Some(r.auc_pu)).expect("non-empty"),
        mae_ir: mae(&runs, |r| Some(r.auc_ir)).expect("non-empty"),
        mae_dr: mae(&runs, |r| Some(r.auc_dr)).expect("non-empty"),
        mae_ie: mae(&runs, |r| r.auc_ie),
        mae_de: mae(&runs, |r| r.auc_de),
        aucpr_true: mean(runs.iter().filter_map(|r| r.aucpr_true)),
        aucpr_pu: m(|r| r.aucpr_pu),
        mae_pr_pu: mae_pr(&runs, |r| Some(r.aucpr_pu)),
        mae_pr_ir: mae_pr(&runs, |r| Some(r.aucpr_ir)),
        mae_pr_ie: mae_pr(&runs, |r| r.aucpr_ie),
        repeats: n,
        infeasible_dr: runs.iter().filter(|r| r.dr_infeasible).count(),
        infeasible_de: runs
            .iter()
            .filter(|r| r.de_infeasible == Some(true))
            .count(),
    };
    Ok(Experiment { cell, runs })
}

/// Generates one pool, corrupts it `cfg.repeats` times and averages the
/// absolute errors of every estimator. Infeasible direct corrections are
/// clipped and kept in the averages.
pub fn run_experiment(
    dataset_id: &str,
    spec: &MixtureSpec,
    cfg: &ProtocolConfig,
    source: ParamSource,
) -> Result<Experiment> {
    cfg.validate()?;
    if cfg.repeats == 1 {
        warn!("{dataset_id}: repeats = 1, mean absolute errors are single-sample");
    }
    let pool = generate_labeled_pool(spec, cfg.pool_size(), cfg.seed)?;
    let runs = (0..cfg.repeats as u64)
        .map(|rep| evaluate_split(&corrupt_to_pu(&pool, cfg, rep)?, source))
        .collect::<Result<Vec<_>>>()?;
    summarize(dataset_id, cfg.beta, runs)
}

/// Bins of the absolute error of the `beta - alpha` estimate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GapBin {
    /// [0, 0.1)
    Small,
    /// [0.1, 0.2)
    Medium,
    /// [0.2, inf)
    Large,
}

impl GapBin {
    pub const ALL: [GapBin; 3] = [GapBin::Small, GapBin::Medium, GapBin::Large];

    pub fn of(e: f64) -> Self {
        if e < 0.1 {
            GapBin::Small
        } else if e < 0.2 {
            GapBin::Medium
        } else {
            GapBin::Large
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GapBin::Small => "small",
            GapBin::Medium => "medium",
            GapBin::Large => "large",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MethodErrors {
    pub pu: Vec<f64>,
    pub ir: Vec<f64>,
    pub dr: Vec<f64>,
    pub ie: Vec<f64>,
    pub de: Vec<f64>,
    pub pr_pu: Vec<f64>,
    pub pr_ir: Vec<f64>,
    pub pr_ie: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinnedError {
    pub bin: GapBin,
    pub cells: usize,
    pub errors: MethodErrors,
}

/// Partitions cells by `e_beta_minus_alpha`. Always returns the three bins
/// in order, possibly empty.
pub fn bin_by_gap_error(cells: &[ErrorCell]) -> Vec<BinnedError> {
    GapBin::ALL
        .iter()
        .map(|&bin| {
            let mut errors = MethodErrors::default();
            let mut count = 0;
            for c in cells
                .iter()
                .filter(|c| GapBin::of(c.e_beta_minus_alpha) == bin)
            {
                count += 1;
                errors.pu.push(c.mae_pu);
                errors.ir.push(c.mae_ir);
                errors.dr.push(c.mae_dr);
                errors.ie.extend(c.mae_ie);
                errors.de.extend(c.mae_de);
                errors.pr_pu.extend(c.mae_pr_pu);
                errors.pr_ir.extend(c.mae_pr_ir);
                errors.pr_ie.extend(c.mae_pr_ie);
            }
            BinnedError {
                bin,
                cells: count,
                errors,
            }
        })
        .collect()
}

/// One-sided binomial tail `P(X >= k)` for `X ~ Binomial(n, 1/2)`, summed in
/// the log domain.
pub fn binomial_counting_test(wins_indirect: u64, n: u64) -> Result<f64> {
    if n == 0 || wins_indirect > n {
        return Err(Error::InvalidConfig(format!(
            "need 0 <= k <= n and n >= 1, got k={wins_indirect}, n={n}"
        )));
    }
    if wins_indirect == 0 {
        return Ok(1.0);
    }
    // ln(i!) for i = 0..=n
    let mut ln_fact = vec![0.0f64; n as usize + 1];
    for i in 1..=n as usize {
        ln_fact[i] = ln_fact[i - 1] + (i as f64).ln();
    }
    let ln_half_n = n as f64 * 0.5f64.ln();
    let terms: Vec<f64> = (wins_indirect..=n)
        .map(|i| {
            let (i, n) = (i as usize, n as usize);
            ln_fact[n] - ln_fact[i] - ln_fact[n - i] + ln_half_n
        })
        .collect();
    let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let sum: f64 = terms.iter().map(|t| (t - top).exp()).sum();
    Ok((top + sum.ln()).exp().min(1.0))
}

/// Hands out tied experiments alternately, starting with the direct method.
/// Returns `(direct_wins, indirect_wins)`.
pub fn split_ties(direct_wins: u64, indirect_wins: u64, ties: u64) -> (u64, u64) {
    (direct_wins + ties.div_ceil(2), indirect_wins + ties / 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CountingTest {
    pub direct_wins: u64,
    pub indirect_wins: u64,
    pub ties: u64,
    /// Indirect wins after tie splitting.
    pub k: u64,
    pub n: u64,
    pub p_value: f64,
}

/// Number of decimals errors are rounded to before comparing, matching
/// three-decimal error tables.
pub const COMPARISON_DECIMALS: i32 = 3;

fn rounded(v: f64) -> f64 {
    let s = 10f64.powi(COMPARISON_DECIMALS);
    (v * s).round() / s
}

/// Counts, over `(direct_error, indirect_error)` pairs, which method had the
/// smaller error and runs the one-sided test for indirect superiority.
pub fn counting_test(pairs: &[(f64, f64)]) -> Result<CountingTest> {
    let (mut d, mut i, mut t) = (0u64, 0u64, 0u64);
    for &(de, ie) in pairs {
        let (de, ie) = (rounded(de), rounded(ie));
        if ie < de {
            i += 1;
        } else if de < ie {
            d += 1;
        } else {
            t += 1;
        }
    }
    let (_, k) = split_ties(d, i, t);
    let n = pairs.len() as u64;
    Ok(CountingTest {
        direct_wins: d,
        indirect_wins: i,
        ties: t,
        k,
        n,
        p_value: binomial_counting_test(k, n)?,
    })
}

/// DR vs IR over cells.
pub fn compare_real(cells: &[ErrorCell]) -> Result<CountingTest> {
    let pairs: Vec<(f64, f64)> = cells.iter().map(|c| (c.mae_dr, c.mae_ir)).collect();
    counting_test(&pairs)
}

/// DE vs IE over cells that carry estimated-parameter columns.
pub fn compare_estimated(cells: &[ErrorCell]) -> Option<Result<CountingTest>> {
    let pairs: Vec<(f64, f64)> = cells
        .iter()
        .filter_map(|c| Some((c.mae_de?, c.mae_ie?)))
        .collect();
    (!pairs.is_empty()).then(|| counting_test(&pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Truth;
    use crate::simulate::PoolSample;

    // exact tail with integer binomial coefficients
    fn exact_tail(k: u64, n: u64) -> f64 {
        let mut c = 1u128;
        let mut total = 0u128;
        for i in 0..=n {
            if i >= k {
                total += c;
            }
            c = c * (n - i) as u128 / (i + 1) as u128;
        }
        total as f64 / 2f64.powi(n as i32)
    }

    #[test]
    fn binomial_examples() {
        let p31 = binomial_counting_test(31, 36).unwrap();
        let p26 = binomial_counting_test(26, 36).unwrap();
        assert!((p31 - exact_tail(31, 36)).abs() < 1e-15);
        assert!((p26 - exact_tail(26, 36)).abs() < 1e-13);
        assert_eq!(format!("{p31:.1e}"), "6.5e-6");
        assert_eq!(format!("{p26:.1e}"), "5.7e-3");
        assert_eq!(binomial_counting_test(0, 1).unwrap(), 1.0);
        assert!((binomial_counting_test(1, 1).unwrap() - 0.5).abs() < 1e-15);
        assert!(binomial_counting_test(3, 2).is_err());
        assert!(binomial_counting_test(0, 0).is_err());
    }

    #[test]
    fn binomial_monotone_in_k() {
        for n in [1u64, 5, 36, 100] {
            let mut prev = 1.0;
            for k in 0..=n {
                let p = binomial_counting_test(k, n).unwrap();
                assert!(p <= prev + 1e-15);
                assert!(
                    (p - exact_tail(k, n)).abs() < 1e-12 * exact_tail(k, n).max(1e-300) + 1e-15
                );
                prev = p;
            }
        }
    }

    #[test]
    fn ties_alternate_starting_with_direct() {
        assert_eq!(split_ties(1, 28, 7), (5, 31));
        assert_eq!(split_ties(9, 25, 2), (10, 26));
        assert_eq!(split_ties(0, 0, 1), (1, 0));
    }

    #[test]
    fn counting_rounds_before_comparing() {
        let t = counting_test(&[(0.0071, 0.0069), (0.010, 0.020), (0.5, 0.1)]).unwrap();
        assert_eq!((t.direct_wins, t.indirect_wins, t.ties), (1, 1, 1));
        assert_eq!(t.k, 1);
    }

    #[test]
    fn gap_bins_are_left_closed() {
        assert_eq!(GapBin::of(0.0), GapBin::Small);
        assert_eq!(GapBin::of(0.1), GapBin::Medium);
        assert_eq!(GapBin::of(0.199), GapBin::Medium);
        assert_eq!(GapBin::of(0.2), GapBin::Large);
        assert_eq!(GapBin::of(0.35), GapBin::Large);
    }

    fn cell(e: f64) -> ErrorCell {
        ErrorCell {
            dataset_id: "x".into(),
            alpha: 0.3,
            beta_nominal: 1.0,
            e_beta_minus_alpha: e,
            auc_true: 0.9,
            auc_pu: 0.8,
            mae_pu: 0.1,
            mae_ir: 0.01,
            mae_dr: 0.02,
            mae_ie: Some(0.03),
            mae_de: None,
            aucpr_true: None,
            aucpr_pu: 0.3,
            mae_pr_pu: None,
            mae_pr_ir: None,
            mae_pr_ie: None,
            repeats: 1,
            infeasible_dr: 0,
            infeasible_de: 0,
        }
    }

    #[test]
    fn binning_partitions_cells() {
        let cells: Vec<ErrorCell> = [0.0, 0.05, 0.1, 0.15, 0.2, 0.35, 1.0]
            .iter()
            .map(|&e| cell(e))
            .collect();
        let bins = bin_by_gap_error(&cells);
        assert_eq!(
            bins.iter().map(|b| b.cells).collect::<Vec<_>>(),
            vec![2, 2, 3]
        );
        assert_eq!(bins.iter().map(|b| b.cells).sum::<usize>(), cells.len());
        assert_eq!(bins[2].errors.ie.len(), 3);
        assert!(bins[2].errors.de.is_empty());
    }

    #[test]
    fn clean_traditional_split_has_zero_error() {
        // every positive labeled and only negatives unlabeled: alpha = 0, beta = 1
        let spec = MixtureSpec::binormal(1.5, 0.0, 0.3);
        let pool: Vec<PoolSample> = generate_labeled_pool(&spec, 600, 2).unwrap();
        let n_pos = pool.iter().filter(|s| s.truth == Truth::Positive).count();
        let cfg = ProtocolConfig {
            n_labeled: n_pos,
            beta: 1.0,
            unlabeled_cap: 10_000,
            repeats: 1,
            seed: 1,
            ..Default::default()
        };
        let split = corrupt_to_pu(&pool, &cfg, 0).unwrap();
        assert_eq!(split.params.alpha(), 0.0);
        let out = evaluate_split(
            &split,
            ParamSource::Provided {
                alpha_hat: 0.0,
                beta_hat: 1.0,
            },
        )
        .unwrap();
        assert_eq!(out.auc_pu, out.auc_true);
        assert_eq!(out.auc_ir, out.auc_true);
        assert!((out.auc_dr - out.auc_true).abs() < 1e-15);
        assert_eq!(out.auc_ie, Some(out.auc_true));
        assert!(out.aucpr_true.is_none());
        let exp = summarize("clean", 1.0, vec![out]).unwrap();
        assert_eq!(exp.cell.mae_pu, 0.0);
        assert!(exp.cell.mae_dr < 1e-15);
        assert_eq!(exp.cell.mae_pr_ir, None);
    }

    #[test]
    fn large_gap_error_lands_in_large_bin() {
        let spec = MixtureSpec::binormal(2.0, 0.0, 0.3);
        let cfg = ProtocolConfig {
            n_labeled: 100,
            beta: 1.0,
            unlabeled_cap: 1000,
            repeats: 2,
            seed: 5,
            ..Default::default()
        };
        let exp = run_experiment(
            "gap",
            &spec,
            &cfg,
            ParamSource::Provided {
                alpha_hat: 0.05,
                beta_hat: 1.0,
            },
        )
        .unwrap();
        assert!(exp.cell.e_beta_minus_alpha >= 0.2);
        assert_eq!(
            bin_by_gap_error(std::slice::from_ref(&exp.cell))[2].cells,
            1
        );
        assert!(exp.cell.mae_ie.is_some() && exp.cell.mae_de.is_some());
        let json = serde_json::to_string(&exp.cell).unwrap();
        assert_eq!(serde_json::from_str::<ErrorCell>(&json).unwrap(), exp.cell);
    }

    #[test]
    fn experiments_are_reproducible() {
        let spec = MixtureSpec::binormal(2.0, 0.0, 0.3);
        let cfg = ProtocolConfig {
            n_labeled: 50,
            beta: 0.95,
            unlabeled_cap: 400,
            repeats: 3,
            seed: 9,
            ..Default::default()
        };
        let a = run_experiment("r", &spec, &cfg, ParamSource::Real).unwrap();
        let b = run_experiment("r", &spec, &cfg, ParamSource::Real).unwrap();
        assert_eq!(a.runs, b.runs);
        assert_eq!(
            serde_json::to_string(&a.cell).unwrap(),
            serde_json::to_string(&b.cell).unwrap()
        );
        assert!(a.cell.mae_ie.is_none());
    }
}
