use pucorrect::simulate::{corrupt_to_pu, generate_labeled_pool, MixtureSpec, ProtocolConfig};

fn main() -> pucorrect::Result<()> {
    let spec = MixtureSpec::binormal(2.0, 0.0, 0.3);
    for beta in [1.0, 0.95, 0.75] {
        let cfg = ProtocolConfig {
            beta,
            seed: 7,
            ..Default::default()
        };
        let pool = generate_labeled_pool(&spec, cfg.pool_size(), cfg.seed)?;
        for repeat in 0..3 {
            let split = corrupt_to_pu(&pool, &cfg, repeat)?;
            let s = split.dataset.summary();
            println!(
                "beta={beta:.2} repeat={repeat}: labeled {} unlabeled {} alpha={:.4} c={:.4} AUC={:.4}",
                s.n_labeled,
                s.n_unlabeled,
                split.params.alpha(),
                s.c,
                split.truth_roc.area()
            );
        }
    }
    Ok(())
}
