//! Small synthetic error table and the direct-vs-indirect counting test.

use pucorrect::evaluate::{bin_by_gap_error, compare_real, run_experiment, ParamSource};
use pucorrect::simulate::{MixtureSpec, ProtocolConfig};

fn main() -> pucorrect::Result<()> {
    let mut cells = Vec::new();
    for (i, alpha) in [0.1, 0.3, 0.5].into_iter().enumerate() {
        let spec = MixtureSpec::binormal(1.5, 0.0, alpha);
        for (j, beta) in [1.0, 0.95, 0.75].into_iter().enumerate() {
            let cfg = ProtocolConfig {
                beta,
                repeats: 5,
                n_labeled: 500,
                unlabeled_cap: 2000,
                seed: (3 * i + j) as u64,
                ..Default::default()
            };
            let id = format!("a{alpha}_b{beta}");
            cells.push(run_experiment(&id, &spec, &cfg, ParamSource::Real)?.cell);
        }
    }

    println!(
        "{:<12} {:>6} {:>6} {:>7} {:>7} {:>7}",
        "cell", "alpha", "auc", "PU", "IR", "DR"
    );
    for c in &cells {
        println!(
            "{:<12} {:>6.3} {:>6.3} {:>7.4} {:>7.4} {:>7.4}",
            c.dataset_id, c.alpha, c.auc_true, c.mae_pu, c.mae_ir, c.mae_dr
        );
    }
    for b in bin_by_gap_error(&cells) {
        println!("bin {}: {} cells", b.bin.label(), b.cells);
    }
    let t = compare_real(&cells)?;
    println!(
        "direct {} / indirect {} / ties {}: k={} n={} P={:.3e}",
        t.direct_wins, t.indirect_wins, t.ties, t.k, t.n, t.p_value
    );
    Ok(())
}
