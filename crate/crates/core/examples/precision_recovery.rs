//! Recovering precision at one threshold, two ways.

use pucorrect::correction::{
    pu_precision, recover_precision_direct, recover_precision_from_pu, recover_rates,
};
use pucorrect::metrics::pu_rates_at_threshold;
use pucorrect::simulate::{corrupt_to_pu, generate_labeled_pool, MixtureSpec, ProtocolConfig};

fn main() -> pucorrect::Result<()> {
    let spec = MixtureSpec::binormal(2.0, 0.0, 0.3);
    let cfg = ProtocolConfig {
        beta: 0.95,
        seed: 11,
        ..Default::default()
    };
    let pool = generate_labeled_pool(&spec, cfg.pool_size(), cfg.seed)?;
    let split = corrupt_to_pu(&pool, &cfg, 0)?;
    let ds = &split.dataset;
    let p = split.params;

    println!(
        "alpha={:.4} beta={:.3} c={:.4}",
        p.alpha(),
        p.beta(),
        p.labeled_fraction().unwrap()
    );
    for t in [0.3, 0.5, 0.7, 0.9] {
        let r = pu_rates_at_threshold(ds, t);
        let rec = recover_rates(&r, &p)?;
        let direct = recover_precision_direct(rec.tpr, r.fpr_pu, p.alpha())?;
        let rho_pu = pu_precision(&r, ds.n_labeled(), ds.n_unlabeled())?;
        let via_pu = recover_precision_from_pu(rho_pu, &p)?;
        println!(
            "t={t:.1}: precision^pu {rho_pu:.4}  direct {:.6}  via precision^pu {via_pu:.6}",
            direct.raw
        );
    }
    Ok(())
}
