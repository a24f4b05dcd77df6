//! Point-by-point recovery of the ROC curve from PU rates.

use pucorrect::correction::{recover_rates, recover_roc_indirect};
use pucorrect::{AreaMode, MixtureParams, RatePair};

fn main() -> pucorrect::Result<()> {
    let p = MixtureParams::new(0.3, 0.9)?;
    let rates: Vec<RatePair> = [
        (0.0, 0.0, 0.9),
        (0.4, 0.1, 0.7),
        (0.7, 0.25, 0.5),
        (0.85, 0.5, 0.3),
        (0.95, 0.8, 0.1),
        (1.0, 1.0, f64::NEG_INFINITY),
    ]
    .into_iter()
    .map(|(tpr_pu, fpr_pu, threshold)| RatePair {
        tpr_pu,
        fpr_pu,
        threshold,
    })
    .collect();

    for r in &rates {
        let rec = recover_rates(r, &p)?;
        println!(
            "t={:>5}: pu ({:.2}, {:.2}) -> ({:.3}, {:.3}){}",
            r.threshold,
            r.fpr_pu,
            r.tpr_pu,
            rec.fpr,
            rec.tpr,
            if rec.in_range { "" } else { "  dropped" }
        );
    }

    let out = recover_roc_indirect(&rates, &p, AreaMode::RankEquivalent)?;
    println!("dropped {} of {} points", out.filtered, out.candidates);
    for pt in out.curve.points() {
        println!("  ({:.3}, {:.3})", pt.x, pt.y);
    }
    println!("recovered AUC = {:.4}", out.curve.area());
    Ok(())
}
