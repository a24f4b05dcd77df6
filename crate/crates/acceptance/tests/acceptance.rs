//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use pucorrect::correction::{
    correct_auc_direct, feasibility_sweep, pu_auc_from_true, pu_precision,
    recover_precision_direct, recover_precision_from_pu, recover_rates,
};
use pucorrect::evaluate::{binomial_counting_test, counting_test, run_experiment, ParamSource};
use pucorrect::io::{read_rows, AucTableRow};
use pucorrect::metrics::{pu_rates_at_threshold, pu_roc};
use pucorrect::simulate::{corrupt_to_pu, generate_labeled_pool, MixtureSpec, ProtocolConfig};
use pucorrect::{validate_dataset, AreaMode, MixtureParams, PuSample, RatePair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use statrs::distribution::{ContinuousCDF, Normal};

struct Outcome {
    pass: bool,
    detail: String,
    elapsed: Duration,
}

fn timed(f: impl FnOnce() -> (bool, String)) -> Outcome {
    let t = Instant::now();
    let (pass, detail) = f();
    Outcome {
        pass,
        detail,
        elapsed: t.elapsed(),
    }
}

fn params(alpha: f64, beta: f64) -> MixtureParams {
    MixtureParams::new(alpha, beta).unwrap()
}

/// Forward mixing and its inverse, AUC forward map and its inverse.
fn c1_round_trips() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut worst_rates, mut worst_auc) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let alpha = rng.random_range(0.0..0.95);
        let beta = rng.random_range(alpha + 0.05..=1.0);
        let (tpr, fpr) = (rng.random::<f64>(), rng.random::<f64>());
        let p = params(alpha, beta);
        let r = RatePair {
            tpr_pu: beta * tpr + (1.0 - beta) * fpr,
            fpr_pu: alpha * tpr + (1.0 - alpha) * fpr,
            threshold: 0.0,
        };
        let rec = recover_rates(&r, &p).unwrap();
        worst_rates = worst_rates
            .max((rec.tpr - tpr).abs())
            .max((rec.fpr - fpr).abs());

        let auc = rng.random::<f64>();
        let d = beta - alpha;
        let auc_pu = (1.0 - d) / 2.0 + d * auc;
        assert!((auc_pu - pu_auc_from_true(auc, &p)).abs() < 1e-15);
        let back = correct_auc_direct(auc_pu, &p).unwrap().raw;
        worst_auc = worst_auc.max((back - auc).abs());
    }
    (
        worst_rates < 1e-12 && worst_auc < 1e-12,
        format!("max rate error {worst_rates:.1e}, max AUC error {worst_auc:.1e}"),
    )
}

fn pairwise_oracle(pos: &[f64], neg: &[f64]) -> f64 {
    let mut wins = 0.0;
    for &a in pos {
        for &b in neg {
            wins += if a > b {
                1.0
            } else if a == b {
                0.5
            } else {
                0.0
            };
        }
    }
    wins / (pos.len() * neg.len()) as f64
}

fn c2_oracle() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.random_range(2..=30);
        let mut scores: Vec<f64> = (0..n).map(|_| rng.random()).collect();
        scores.sort_by(f64::total_cmp);
        scores.dedup();
        let n = scores.len();
        let n_lab = rng.random_range(1..n);
        let mut idx: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            idx.swap(i, rng.random_range(0..=i));
        }
        let (lab, unl): (Vec<f64>, Vec<f64>) = (
            idx[..n_lab].iter().map(|&i| scores[i]).collect(),
            idx[n_lab..].iter().map(|&i| scores[i]).collect(),
        );
        let samples: Vec<PuSample> = lab
            .iter()
            .map(|&s| PuSample::labeled(s).unwrap())
            .chain(unl.iter().map(|&s| PuSample::unlabeled(s).unwrap()))
            .collect();
        let ds = validate_dataset(&samples).unwrap();
        let area = pu_roc(&ds, AreaMode::RankEquivalent).area();
        worst = worst.max((area - pairwise_oracle(&lab, &unl)).abs());
    }
    (worst < 1e-12, format!("max |area - oracle| {worst:.1e}"))
}

fn c3_table_spot_checks() -> (bool, String) {
    // (name, alpha, beta, AUC^pu, expected, tolerance)
    let rows = [
        ("Gas", 0.342, 1.000, 0.824, 0.992, 0.005),
        ("Mushroom", 0.444, 0.750, 0.648, 0.984, 0.005),
        ("Shuttle", 0.139, 1.000, 0.929, 0.998, 0.003),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, a, b, auc_pu, want, tol) in rows {
        let got = correct_auc_direct(auc_pu, &params(a, b)).unwrap().auc;
        pass &= (got - want).abs() <= tol;
        parts.push(format!("{name} {got:.4}"));
    }
    (pass, parts.join(", "))
}

fn c4_ordering() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0;
    let mut equal_cases = 0;
    for i in 0..10_000 {
        let (alpha, beta) = if i % 10 == 0 {
            (0.0, 1.0)
        } else {
            let a = rng.random_range(0.0..0.95);
            (a, rng.random_range(a + 0.05..=1.0))
        };
        let auc_pu = if i % 7 == 0 { 0.5 } else { rng.random::<f64>() };
        let p = params(alpha, beta);
        let auc = correct_auc_direct(auc_pu, &p).unwrap().raw;
        let d = beta - alpha;
        let expect_greater = auc_pu > 0.5 && d < 1.0;
        let expect_equal = auc_pu == 0.5 || d == 1.0;
        if expect_equal {
            equal_cases += 1;
        }
        let ok = if expect_equal {
            auc == auc_pu
        } else {
            (auc > auc_pu) == expect_greater && auc != auc_pu
        };
        bad += !ok as usize;
    }
    (
        bad == 0,
        format!("{bad} violations in 10000 draws ({equal_cases} equality cases)"),
    )
}

fn c5_precision() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut worst, mut compared) = (0.0f64, 0usize);
    for d in 0..100 {
        let alpha = rng.random_range(0.1..0.6);
        let spec = MixtureSpec::binormal(rng.random_range(0.5..3.0), 0.0, alpha);
        let cfg = ProtocolConfig {
            n_labeled: rng.random_range(50..300),
            beta: [1.0, 0.95, 0.75, rng.random_range(0.7..1.0)][d % 4],
            unlabeled_cap: rng.random_range(200..1500),
            seed: d as u64,
            ..Default::default()
        };
        let pool = generate_labeled_pool(&spec, cfg.pool_size(), cfg.seed).unwrap();
        let split = corrupt_to_pu(&pool, &cfg, 0).unwrap();
        let ds = &split.dataset;
        let p = split.params;
        let mut all: Vec<f64> = ds.samples().iter().map(|s| s.score).collect();
        all.sort_by(f64::total_cmp);
        for q in 0..20 {
            let t = all[(q * (all.len() - 1)) / 20];
            let r = pu_rates_at_threshold(ds, t);
            let rec = recover_rates(&r, &p).unwrap();
            let direct = recover_precision_direct(rec.tpr, r.fpr_pu, p.alpha());
            let via = pu_precision(&r, ds.n_labeled(), ds.n_unlabeled())
                .and_then(|rho| recover_precision_from_pu(rho, &p));
            if let (Ok(a), Ok(b)) = (direct, via) {
                worst = worst.max((a.raw - b).abs());
                compared += 1;
            }
        }
    }
    (
        worst < 1e-9 && compared > 1000,
        format!("{compared} thresholds compared, max difference {worst:.1e}"),
    )
}

fn c6_end_to_end() -> (bool, String) {
    let closed_form = Normal::new(0.0, 1.0).unwrap().cdf(2.0 / 2f64.sqrt());
    let spec = MixtureSpec::binormal(2.0, 0.0, 0.3);
    let mut pass = true;
    let mut parts = vec![format!("closed-form AUC {closed_form:.4}")];
    for (k, beta) in [1.0, 0.95, 0.75].into_iter().enumerate() {
        let cfg = ProtocolConfig {
            beta,
            seed: 600 + k as u64,
            ..Default::default()
        };
        let exp = run_experiment(&format!("b{beta}"), &spec, &cfg, ParamSource::Real).unwrap();
        let c = &exp.cell;
        let under = exp.runs.iter().filter(|r| r.auc_pu < r.auc_true).count() as f64
            / exp.runs.len() as f64;
        let (pr_ir, pr_pu) = (c.mae_pr_ir.unwrap(), c.mae_pr_pu.unwrap());
        let ok = c.mae_ir < 0.02
            && c.mae_dr < 0.02
            && c.mae_pu > 0.05
            && under >= 0.95
            && pr_ir < 0.05
            && pr_pu > 0.15
            && (c.auc_true - closed_form).abs() < 0.01;
        pass &= ok;
        parts.push(format!(
            "beta {beta}: alpha {:.3} PU {:.3} IR {:.4} DR {:.4} under {:.0}% PR-PU {:.3} PR-IR {:.4}",
            c.alpha,
            c.mae_pu,
            c.mae_ir,
            c.mae_dr,
            100.0 * under,
            pr_pu,
            pr_ir
        ));
    }
    (pass, parts.join("; "))
}

fn c7_sweep() -> (bool, String) {
    let res = 200;
    let p = params(0.25, 0.75);
    let grid = feasibility_sweep(0.90, &p, res).unwrap();
    let anchor_ok = (grid.auc_pu - 0.80).abs() < 1e-12;

    let mut diag_max = 0.0f64;
    for i in 0..=res - 100 {
        let c = grid.cell(i, i + 100);
        diag_max = diag_max.max(c.abs_error.unwrap());
    }
    let diag_ok = diag_max < 1e-12;
    let corner = grid.cell(0, res).auc_est.unwrap();
    let corner_ok = corner == grid.auc_pu;

    let mut band_ok = true;
    let mut slowest = Duration::ZERO;
    for &a in &pucorrect::cli::PRESET_ALPHAS {
        for &b in &pucorrect::cli::PRESET_BETAS {
            let t = Instant::now();
            let g = feasibility_sweep(0.95, &params(a, b), res).unwrap();
            slowest = slowest.max(t.elapsed());
            let d = b - a;
            band_ok &= g
                .cells
                .iter()
                .any(|c| c.infeasible && ((c.beta_hat - c.alpha_hat) - d).abs() <= 0.1 + 1e-9);
        }
    }
    let fast = slowest < Duration::from_secs(5);
    (
        anchor_ok && diag_ok && corner_ok && band_ok && fast,
        format!(
            "AUC^pu {:.4} (expected 0.80: {}), diagonal max error {diag_max:.1e}, corner {corner:.4} \
             (equals AUC^pu: {corner_ok}), infeasible band near diagonal for AUC 0.95: {band_ok}, \
             slowest 200x200 grid {slowest:?}",
            grid.auc_pu,
            if anchor_ok { "yes" } else { "no" },
        ),
    )
}

fn c8_binomial() -> (bool, String) {
    let a = binomial_counting_test(31, 36).unwrap();
    let b = binomial_counting_test(26, 36).unwrap();
    let (fa, fb) = (format!("{a:.1e}"), format!("{b:.1e}"));

    let fixture =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/table1_auc.csv");
    let rows: Vec<AucTableRow> = read_rows(&fixture).unwrap();
    let real: Vec<(f64, f64)> = rows.iter().map(|r| (r.mae_dr, r.mae_ir)).collect();
    let est: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.mae_de.unwrap(), r.mae_ie.unwrap()))
        .collect();
    let (tr, te) = (counting_test(&real).unwrap(), counting_test(&est).unwrap());
    (
        fa == "6.5e-6" && fb == "5.7e-3" && tr.k == 31 && te.k == 26 && tr.n == 36,
        format!(
            "P(31,36) = {fa}, P(26,36) = {fb}; published table gives k = {} and k = {}",
            tr.k, te.k
        ),
    )
}

fn snapshot(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (PathBuf::from(p.file_name().unwrap()), fs::read(&p).unwrap())
        })
        .collect();
    v.sort();
    v
}

fn c9_determinism() -> (bool, String) {
    let tmp = tempfile::tempdir().unwrap();
    let root = tmp.path();
    let s = |p: &Path| p.to_str().unwrap().to_string();
    let mut all_same = true;
    let mut checked = Vec::new();
    for (name, build) in [
        (
            "simulate",
            Box::new(|out: &Path| -> Vec<String> {
                [
                    "simulate",
                    "--seed",
                    "7",
                    "--n-labeled",
                    "300",
                    "--cap",
                    "3000",
                    "--beta",
                    "0.95",
                    "--out",
                    &s(out),
                ]
                .map(String::from)
                .to_vec()
            }) as Box<dyn Fn(&Path) -> Vec<String>>,
        ),
        (
            "correct",
            Box::new(|out: &Path| {
                let input = s(&root.join("sim_0/dataset.csv"));
                [
                    "correct",
                    "--input",
                    &input,
                    "--alpha",
                    "0.29",
                    "--beta",
                    "0.95",
                    "--out",
                    &s(out),
                ]
                .map(String::from)
                .to_vec()
            }),
        ),
        (
            "sweep",
            Box::new(|out: &Path| {
                [
                    "sweep",
                    "--preset-paper-sweep",
                    "--grid-resolution",
                    "50",
                    "--out",
                    &s(out),
                ]
                .map(String::from)
                .to_vec()
            }),
        ),
        (
            "evaluate",
            Box::new(|out: &Path| {
                [
                    "evaluate",
                    "--repeats",
                    "3",
                    "--n-labeled",
                    "200",
                    "--cap",
                    "1000",
                    "--seed",
                    "3",
                    "--alpha-hat",
                    "0.3",
                    "--beta-hat",
                    "0.9",
                    "--out",
                    &s(out),
                ]
                .map(String::from)
                .to_vec()
            }),
        ),
    ] {
        let mut snaps = Vec::new();
        for rep in 0..2 {
            let out = if name == "simulate" {
                root.join(format!("sim_{rep}"))
            } else {
                root.join(format!("{name}_{rep}"))
            };
            let mut args = vec!["pucorrect".to_string()];
            args.extend(build(&out));
            let code = pucorrect::cli::run(args);
            if code != 0 {
                return (false, format!("{name} exited with {code}"));
            }
            snaps.push(snapshot(&out));
        }
        let same = snaps[0] == snaps[1];
        all_same &= same;
        checked.push(format!(
            "{name} ({} files) {}",
            snaps[0].len(),
            if same { "identical" } else { "DIFFERENT" }
        ));
    }
    (all_same, checked.join(", "))
}

type Check = fn() -> (bool, String);

fn main() {
    let criteria: [(&str, Duration, Check); 9] = [
        (
            "algebraic round-trips",
            Duration::from_secs(1),
            c1_round_trips,
        ),
        ("oracle equivalence", Duration::from_secs(5), c2_oracle),
        (
            "published AUC spot checks",
            Duration::from_secs(1),
            c3_table_spot_checks,
        ),
        ("ordering corollary", Duration::from_secs(1), c4_ordering),
        (
            "precision estimator equivalence",
            Duration::from_secs(5),
            c5_precision,
        ),
        (
            "end-to-end synthetic recovery",
            Duration::from_secs(120),
            c6_end_to_end,
        ),
        (
            "feasibility sweep fixed points",
            Duration::from_secs(60),
            c7_sweep,
        ),
        (
            "binomial counting test",
            Duration::from_secs(1),
            c8_binomial,
        ),
        ("determinism", Duration::from_secs(120), c9_determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let o = timed(f);
        let in_time = o.elapsed <= budget;
        let pass = o.pass && in_time;
        failed += !pass as usize;
        println!(
            "criterion {}: {} {name}: {} [{:.2?}{}]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            o.elapsed,
            if in_time {
                String::new()
            } else {
                format!(", over budget {budget:?}")
            }
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
