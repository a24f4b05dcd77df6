//! A classifier evaluated on labeled-vs-unlabeled data looks worse than it
//! is. Compare the PU ROC curve against the true one on a small sample.

use pucorrect::metrics::{pu_roc, roc_curve};
use pucorrect::{validate_dataset, AreaMode, PuSample};

fn main() -> pucorrect::Result<()> {
    // labeled positives, hidden positives and negatives
    let labeled = [0.95, 0.9, 0.8, 0.7, 0.6];
    let hidden = [0.85, 0.75, 0.65];
    let negatives = [0.72, 0.5, 0.4, 0.35, 0.3, 0.2, 0.1];

    let mut samples = Vec::new();
    for &s in &labeled {
        samples.push(PuSample::labeled(s)?);
    }
    for &s in hidden.iter().chain(&negatives) {
        samples.push(PuSample::unlabeled(s)?);
    }
    let ds = validate_dataset(&samples)?;

    let pu = pu_roc(&ds, AreaMode::RankEquivalent);
    let positives: Vec<f64> = labeled.iter().chain(&hidden).copied().collect();
    let truth = roc_curve(&positives, &negatives, AreaMode::RankEquivalent)?;

    println!("{:>10} {:>8} {:>8}", "threshold", "fpr_pu", "tpr_pu");
    for p in pu.points() {
        println!("{:>10.3} {:>8.3} {:>8.3}", p.threshold, p.x, p.y);
    }
    println!("AUC^pu = {:.3}", pu.area());
    println!("AUC    = {:.3}", truth.area());
    Ok(())
}
