//! Command-line front end: `correct`, `simulate`, `sweep` and `evaluate`.
//!
//! Exit codes: 0 success, 2 validation error, 3 infeasible correction under
//! `--strict`, 1 anything else. Errors are printed to stderr as one JSON
//! object `{"error": kind, "message": text}`.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::{info, warn};
use serde::{Deserialize, Serialize};

use crate::correction::{correct_dataset, feasibility_sweep, FeasibilityGrid, MethodSelection};
use crate::domain::{CorrectionMethod, CorrectionReport, DatasetSummary, MixtureParams};
use crate::error::{Error, Result};
use crate::evaluate::{
    bin_by_gap_error, compare_estimated, compare_real, counting_test, run_experiment, CountingTest,
    ErrorCell, GapBin, MethodErrors, ParamSource,
};
use crate::io::{self, AucTableRow, PrTableRow};
use crate::metrics::AreaMode;
use crate::simulate::{
    corrupt_to_pu, generate_labeled_pool, Component, MixtureSpec, ProtocolConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

/// Grid used by `sweep --preset-paper-sweep`.
pub const PRESET_ALPHAS: [f64; 3] = [0.05, 0.25, 0.50];
pub const PRESET_BETAS: [f64; 3] = [0.75, 0.95, 1.00];
pub const PRESET_AUCS: [f64; 3] = [0.65, 0.80, 0.95];

#[derive(Debug, Parser)]
#[command(
    name = "pucorrect",
    version,
    about = "Correct ROC/PR evaluation of classifiers on positive-unlabeled data"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Correct the PU curves and AUCs of a scored dataset.
    Correct(CorrectArgs),
    /// Generate a synthetic PU dataset with known ground truth.
    Simulate(SimulateArgs),
    /// Tabulate the direct correction over a grid of (alpha_hat, beta_hat).
    Sweep(SweepArgs),
    /// Run the synthetic error-table experiment and the counting test.
    Evaluate(EvaluateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Indirect,
    Both,
}

impl From<MethodArg> for MethodSelection {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => MethodSelection::Direct,
            MethodArg::Indirect => MethodSelection::Indirect,
            MethodArg::Both => MethodSelection::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AreaModeArg {
    StrictStep,
    Rank,
}

impl From<AreaModeArg> for AreaMode {
    fn from(m: AreaModeArg) -> Self {
        match m {
            AreaModeArg::StrictStep => AreaMode::StrictStep,
            AreaModeArg::Rank => AreaMode::RankEquivalent,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct CorrectArgs {
    /// CSV with header `score,label[,truth]`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, value_enum, default_value = "both")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "rank")]
    pub area_mode: AreaModeArg,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Format of the report file.
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Fail with exit code 3 instead of clipping an infeasible AUC.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Args)]
pub struct MixtureArgs {
    #[arg(long, default_value_t = 2.0)]
    pub pos_mean: f64,
    #[arg(long, default_value_t = 1.0)]
    pub pos_sd: f64,
    #[arg(long, default_value_t = 0.0)]
    pub neg_mean: f64,
    #[arg(long, default_value_t = 1.0)]
    pub neg_sd: f64,
}

impl MixtureArgs {
    fn spec(&self, alpha: f64) -> MixtureSpec {
        MixtureSpec {
            pos_component: Component::gaussian(self.pos_mean, self.pos_sd),
            neg_component: Component::gaussian(self.neg_mean, self.neg_sd),
            true_alpha_target: alpha,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub mixture: MixtureArgs,
    /// Positive fraction of the generated pool.
    #[arg(long, default_value_t = 0.3)]
    pub alpha: f64,
    /// Share of true positives in the labeled set.
    #[arg(long, default_value_t = 1.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1000)]
    pub n_labeled: usize,
    /// Maximum number of unlabeled examples.
    #[arg(long, default_value_t = 10_000)]
    pub cap: usize,
    /// Generated pool size [default: 10 * (n_labeled + cap)].
    #[arg(long)]
    pub pool_size: Option<usize>,
    /// Which corruption of the pool to emit.
    #[arg(long, default_value_t = 0)]
    pub repeat: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "rank")]
    pub area_mode: AreaModeArg,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, required_unless_present = "preset_paper_sweep")]
    pub alpha: Option<f64>,
    #[arg(long, required_unless_present = "preset_paper_sweep")]
    pub beta: Option<f64>,
    /// True AUC.
    #[arg(long, required_unless_present = "preset_paper_sweep")]
    pub auc: Option<f64>,
    /// Grid intervals per axis.
    #[arg(long, default_value_t = 200)]
    pub grid_resolution: usize,
    /// Run all 27 combinations of alpha in {0.05, 0.25, 0.5}, beta in
    /// {0.75, 0.95, 1} and AUC in {0.65, 0.8, 0.95}.
    #[arg(long, conflicts_with_all = ["alpha", "beta", "auc"])]
    pub preset_paper_sweep: bool,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub mixture: MixtureArgs,
    /// Comma-separated positive fractions of the pool, one experiment row each.
    #[arg(long, value_delimiter = ',', default_value = "0.3")]
    pub alpha_grid: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "1,0.95,0.75")]
    pub beta_grid: Vec<f64>,
    #[arg(long, default_value_t = 1000)]
    pub n_labeled: usize,
    #[arg(long, default_value_t = 10_000)]
    pub cap: usize,
    #[arg(long)]
    pub pool_size: Option<usize>,
    #[arg(long, default_value_t = 50)]
    pub repeats: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Estimated alpha for the E-columns; requires --beta-hat.
    #[arg(long, requires = "beta_hat")]
    pub alpha_hat: Option<f64>,
    #[arg(long, requires = "alpha_hat")]
    pub beta_hat: Option<f64>,
    /// Skip the simulation and run binning and counting tests on an existing
    /// AUC table (columns as in `table_auc.csv`).
    #[arg(long)]
    pub from_table: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "rank")]
    pub area_mode: AreaModeArg,
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return EXIT_OK;
            }
            report_error("UsageError", &e.to_string());
            return EXIT_VALIDATION;
        }
    };
    match execute(&cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            report_error(e.kind(), &e.to_string());
            exit_code(&e)
        }
    }
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or("PUCORRECT_LOG", "warn");
    let _ = env_logger::Builder::from_env(env).try_init();
}

fn report_error(kind: &str, message: &str) {
    let obj = serde_json::json!({ "error": kind, "message": message.trim_end() });
    eprintln!("{obj}");
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Infeasible { .. } => EXIT_INFEASIBLE,
        Error::EmptyClass { .. }
        | Error::NonFiniteScore(_)
        | Error::InvalidParams(_)
        | Error::DegenerateSeparation { .. }
        | Error::MissingLabeledFraction
        | Error::InsufficientPool { .. }
        | Error::InvalidConfig(_)
        | Error::Parse { .. } => EXIT_VALIDATION,
        _ => EXIT_OTHER,
    }
}

pub fn execute(cmd: &Command) -> Result<()> {
    match cmd {
        Command::Correct(a) => cmd_correct(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Evaluate(a) => cmd_evaluate(a),
    }
}

fn out_dir(p: &Path) -> Result<()> {
    fs::create_dir_all(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
}

/// Contents of `report.json` written by `correct`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectOutput {
    pub dataset: DatasetSummary,
    pub area_mode: AreaMode,
    pub reports: Vec<CorrectionReport>,
}

#[derive(Debug, Serialize)]
struct ReportRow {
    method: CorrectionMethod,
    alpha: f64,
    beta: f64,
    c: Option<f64>,
    auc_pu: f64,
    auc_corrected: f64,
    auc_raw: f64,
    aucpr_pu: Option<f64>,
    aucpr_corrected: Option<f64>,
    clipped: bool,
    infeasible: bool,
    filtered_points: usize,
}

impl From<&CorrectionReport> for ReportRow {
    fn from(r: &CorrectionReport) -> Self {
        Self {
            method: r.method,
            alpha: r.params.alpha(),
            beta: r.params.beta(),
            c: r.params.labeled_fraction(),
            auc_pu: r.auc_pu,
            auc_corrected: r.auc_corrected,
            auc_raw: r.auc_raw,
            aucpr_pu: r.aucpr_pu,
            aucpr_corrected: r.aucpr_corrected,
            clipped: r.clipped,
            infeasible: r.infeasible,
            filtered_points: r.filtered_points,
        }
    }
}

pub fn cmd_correct(a: &CorrectArgs) -> Result<()> {
    let ds = io::read_dataset(&a.input)?;
    let params = MixtureParams::new(a.alpha, a.beta)?;
    let mode: AreaMode = a.area_mode.into();
    let res = correct_dataset(&ds, &params, a.method.into(), mode)?;
    if a.strict {
        if let Some(r) = res.reports.iter().find(|r| r.infeasible) {
            return Err(Error::Infeasible { raw: r.auc_raw });
        }
    }
    for r in res.reports.iter().filter(|r| r.clipped) {
        warn!(
            "{:?} AUC {} clipped to {}",
            r.method, r.auc_raw, r.auc_corrected
        );
    }

    out_dir(&a.out)?;
    io::write_curve(&a.out.join("roc_pu.csv"), &res.roc_pu)?;
    io::write_curve(&a.out.join("pr_pu.csv"), &res.pr_pu)?;
    if let Some(c) = &res.roc_corrected {
        io::write_curve(&a.out.join("roc_corrected.csv"), &c.curve)?;
    }
    if let Some(c) = &res.pr_corrected {
        io::write_curve(&a.out.join("pr_corrected.csv"), &c.curve)?;
    }
    match a.format {
        Format::Json => io::write_json(
            &a.out.join("report.json"),
            &CorrectOutput {
                dataset: ds.summary(),
                area_mode: mode,
                reports: res.reports,
            },
        )?,
        Format::Csv => {
            let rows: Vec<ReportRow> = res.reports.iter().map(ReportRow::from).collect();
            io::write_rows(&a.out.join("report.csv"), &rows)?
        }
    }
    info!("wrote correction outputs to {}", a.out.display());
    Ok(())
}

/// Contents of `manifest.json` written by `simulate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationManifest {
    pub seed: u64,
    pub repeat: u64,
    pub spec: MixtureSpec,
    pub pool_size: usize,
    pub n_labeled: usize,
    pub n_unlabeled: usize,
    pub unlabeled_cap: usize,
    pub beta_nominal: f64,
    pub beta_realized: f64,
    pub alpha_realized: f64,
    pub c: f64,
    pub area_mode: AreaMode,
    pub auc_true: f64,
    pub aucpr_true: Option<f64>,
}

pub fn cmd_simulate(a: &SimulateArgs) -> Result<()> {
    let spec = a.mixture.spec(a.alpha);
    let cfg = ProtocolConfig {
        n_labeled: a.n_labeled,
        beta: a.beta,
        unlabeled_cap: a.cap,
        repeats: 1,
        seed: a.seed,
        pool_size: a.pool_size,
        area_mode: a.area_mode.into(),
    };
    cfg.validate()?;
    let pool = generate_labeled_pool(&spec, cfg.pool_size(), cfg.seed)?;
    let split = corrupt_to_pu(&pool, &cfg, a.repeat)?;
    let summary = split.dataset.summary();
    let manifest = SimulationManifest {
        seed: a.seed,
        repeat: a.repeat,
        spec,
        pool_size: cfg.pool_size(),
        n_labeled: summary.n_labeled,
        n_unlabeled: summary.n_unlabeled,
        unlabeled_cap: a.cap,
        beta_nominal: split.beta_nominal,
        beta_realized: split.beta_realized,
        alpha_realized: split.params.alpha(),
        c: summary.c,
        area_mode: cfg.area_mode,
        auc_true: split.truth_roc.area(),
        aucpr_true: split.truth_pr.as_ref().map(|c| c.area()),
    };
    out_dir(&a.out)?;
    io::write_dataset(&a.out.join("dataset.csv"), &split.dataset)?;
    io::write_json(&a.out.join("manifest.json"), &manifest)?;
    Ok(())
}

#[derive(Debug, Serialize)]
struct SweepRow {
    alpha_hat: f64,
    beta_hat: f64,
    auc_est: f64,
    abs_error: f64,
    infeasible: u8,
}

/// Summary of one sweep, written next to the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepMeta {
    pub file: String,
    pub alpha: f64,
    pub beta: f64,
    pub auc_true: f64,
    pub auc_pu: f64,
    pub resolution: usize,
    pub valid_cells: usize,
    pub infeasible_cells: usize,
}

fn sweep_rows(g: &FeasibilityGrid) -> Vec<SweepRow> {
    g.cells
        .iter()
        .filter(|c| c.valid)
        .map(|c| SweepRow {
            alpha_hat: c.alpha_hat,
            beta_hat: c.beta_hat,
            auc_est: c.auc_est.expect("valid cell"),
            abs_error: c.abs_error.expect("valid cell"),
            infeasible: c.infeasible as u8,
        })
        .collect()
}

fn write_sweep(dir: &Path, stem: &str, g: &FeasibilityGrid, format: Format) -> Result<SweepMeta> {
    let file = match format {
        Format::Csv => {
            let f = format!("{stem}.csv");
            io::write_rows(&dir.join(&f), &sweep_rows(g))?;
            f
        }
        Format::Json => {
            let f = format!("{stem}.json");
            io::write_json(&dir.join(&f), g)?;
            f
        }
    };
    Ok(SweepMeta {
        file,
        alpha: g.params_true.alpha(),
        beta: g.params_true.beta(),
        auc_true: g.auc_true,
        auc_pu: g.auc_pu,
        resolution: g.resolution,
        valid_cells: g.cells.iter().filter(|c| c.valid).count(),
        infeasible_cells: g.cells.iter().filter(|c| c.infeasible).count(),
    })
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<()> {
    let combos: Vec<(f64, f64, f64)> = if a.preset_paper_sweep {
        PRESET_ALPHAS
            .iter()
            .flat_map(|&al| {
                PRESET_BETAS
                    .iter()
                    .flat_map(move |&be| PRESET_AUCS.iter().map(move |&auc| (al, be, auc)))
            })
            .collect()
    } else {
        match (a.alpha, a.beta, a.auc) {
            (Some(al), Some(be), Some(auc)) => vec![(al, be, auc)],
            _ => {
                return Err(Error::InvalidConfig(
                    "sweep needs --alpha, --beta and --auc".into(),
                ))
            }
        }
    };
    out_dir(&a.out)?;
    let mut metas = Vec::with_capacity(combos.len());
    for (al, be, auc) in combos {
        let p = MixtureParams::new(al, be)?;
        let grid = feasibility_sweep(auc, &p, a.grid_resolution)?;
        let stem = if a.preset_paper_sweep {
            format!("sweep_a{al:.2}_b{be:.2}_auc{auc:.2}")
        } else {
            "sweep".to_string()
        };
        metas.push(write_sweep(&a.out, &stem, &grid, a.format)?);
    }
    if a.preset_paper_sweep {
        io::write_json(&a.out.join("sweep_meta.json"), &metas)?;
    } else {
        io::write_json(&a.out.join("sweep_meta.json"), &metas[0])?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct BinnedRow {
    bin: &'static str,
    cells: usize,
    method: &'static str,
    count: usize,
    mean: Option<f64>,
    median: Option<f64>,
    min: Option<f64>,
    max: Option<f64>,
}

fn median(sorted: &[f64]) -> Option<f64> {
    let n = sorted.len();
    match n {
        0 => None,
        _ if n % 2 == 1 => Some(sorted[n / 2]),
        _ => Some(0.5 * (sorted[n / 2 - 1] + sorted[n / 2])),
    }
}

fn binned_rows(bins: &[(GapBin, usize, MethodErrors)]) -> Vec<BinnedRow> {
    let mut rows = Vec::new();
    for (bin, cells, e) in bins {
        let methods: [(&'static str, &Vec<f64>); 8] = [
            ("pu", &e.pu),
            ("ir", &e.ir),
            ("dr", &e.dr),
            ("ie", &e.ie),
            ("de", &e.de),
            ("pr_pu", &e.pr_pu),
            ("pr_ir", &e.pr_ir),
            ("pr_ie", &e.pr_ie),
        ];
        for (name, v) in methods {
            let mut s = v.clone();
            s.sort_by(f64::total_cmp);
            rows.push(BinnedRow {
                bin: bin.label(),
                cells: *cells,
                method: name,
                count: s.len(),
                mean: (!s.is_empty()).then(|| s.iter().sum::<f64>() / s.len() as f64),
                median: median(&s),
                min: s.first().copied(),
                max: s.last().copied(),
            });
        }
    }
    rows
}

/// Contents of `binomial.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountingSummary {
    /// Direct vs indirect with the true parameters.
    pub real: CountingTest,
    /// Direct vs indirect with the provided estimates, when available.
    pub estimated: Option<CountingTest>,
}

fn counting_from_rows(rows: &[AucTableRow]) -> Result<CountingSummary> {
    let real: Vec<(f64, f64)> = rows.iter().map(|r| (r.mae_dr, r.mae_ir)).collect();
    let est: Option<Vec<(f64, f64)>> = rows.iter().map(|r| Some((r.mae_de?, r.mae_ie?))).collect();
    Ok(CountingSummary {
        real: counting_test(&real)?,
        estimated: est.map(|p| counting_test(&p)).transpose()?,
    })
}

fn bins_from_rows(rows: &[AucTableRow]) -> Vec<(GapBin, usize, MethodErrors)> {
    GapBin::ALL
        .iter()
        .map(|&bin| {
            let members: Vec<&AucTableRow> = rows
                .iter()
                .filter(|r| GapBin::of(r.e_beta_minus_alpha) == bin)
                .collect();
            let errors = MethodErrors {
                pu: members.iter().map(|r| r.mae_pu).collect(),
                ir: members.iter().map(|r| r.mae_ir).collect(),
                dr: members.iter().map(|r| r.mae_dr).collect(),
                ie: members.iter().filter_map(|r| r.mae_ie).collect(),
                de: members.iter().filter_map(|r| r.mae_de).collect(),
                ..Default::default()
            };
            (bin, members.len(), errors)
        })
        .collect()
}

fn write_evaluation(
    a: &EvaluateArgs,
    cells: Option<&[ErrorCell]>,
    auc_rows: &[AucTableRow],
    bins: &[(GapBin, usize, MethodErrors)],
    counting: &CountingSummary,
) -> Result<()> {
    out_dir(&a.out)?;
    match a.format {
        Format::Csv => {
            io::write_rows(&a.out.join("table_auc.csv"), auc_rows)?;
            if let Some(cells) = cells {
                let pr: Vec<PrTableRow> = cells.iter().map(PrTableRow::from).collect();
                io::write_rows(&a.out.join("table_pr.csv"), &pr)?;
            }
            io::write_rows(&a.out.join("binned.csv"), &binned_rows(bins))?;
        }
        Format::Json => {
            match cells {
                Some(cells) => io::write_json(&a.out.join("cells.json"), &cells)?,
                None => io::write_json(&a.out.join("cells.json"), &auc_rows)?,
            }
            io::write_json(&a.out.join("binned.json"), &binned_rows(bins))?;
        }
    }
    io::write_json(&a.out.join("binomial.json"), counting)
}

pub fn cmd_evaluate(a: &EvaluateArgs) -> Result<()> {
    if let Some(path) = &a.from_table {
        let rows: Vec<AucTableRow> = io::read_rows(path)?;
        if rows.is_empty() {
            return Err(Error::InvalidConfig(format!(
                "{} has no rows",
                path.display()
            )));
        }
        let counting = counting_from_rows(&rows)?;
        return write_evaluation(a, None, &rows, &bins_from_rows(&rows), &counting);
    }

    let source = match (a.alpha_hat, a.beta_hat) {
        (Some(alpha_hat), Some(beta_hat)) => {
            MixtureParams::new(alpha_hat, beta_hat)?;
            ParamSource::Provided {
                alpha_hat,
                beta_hat,
            }
        }
        _ => ParamSource::Real,
    };
    if a.alpha_grid.is_empty() || a.beta_grid.is_empty() {
        return Err(Error::InvalidConfig(
            "alpha and beta grids must be non-empty".into(),
        ));
    }
    let mut cells = Vec::new();
    let mut index = 0u64;
    for &alpha in &a.alpha_grid {
        let spec = a.mixture.spec(alpha);
        for &beta in &a.beta_grid {
            // every cell gets its own root seed
            let cfg = ProtocolConfig {
                n_labeled: a.n_labeled,
                beta,
                unlabeled_cap: a.cap,
                repeats: a.repeats,
                seed: a.seed.wrapping_add(index),
                pool_size: a.pool_size,
                area_mode: a.area_mode.into(),
            };
            let id = format!("a{alpha:.3}_b{beta:.3}");
            info!("evaluating {id}");
            cells.push(run_experiment(&id, &spec, &cfg, source)?.cell);
            index += 1;
        }
    }
    let auc_rows: Vec<AucTableRow> = cells.iter().map(AucTableRow::from).collect();
    let bins: Vec<(GapBin, usize, MethodErrors)> = bin_by_gap_error(&cells)
        .into_iter()
        .map(|b| (b.bin, b.cells, b.errors))
        .collect();
    let counting = CountingSummary {
        real: compare_real(&cells)?,
        estimated: compare_estimated(&cells).transpose()?,
    };
    write_evaluation(a, Some(&cells), &auc_rows, &bins, &counting)
}
