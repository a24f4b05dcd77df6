//! Direct AUC correction from a reported PU AUC.

use pucorrect::correction::{auc_ordering_check, correct_auc_direct};
use pucorrect::MixtureParams;

fn main() -> pucorrect::Result<()> {
    // (name, alpha, beta, AUC^pu)
    let rows = [
        ("gas", 0.342, 1.000, 0.824),
        ("mushroom", 0.444, 0.750, 0.648),
        ("shuttle", 0.139, 1.000, 0.929),
        ("weak", 0.5, 0.6, 0.58),
    ];
    for (name, alpha, beta, auc_pu) in rows {
        let p = MixtureParams::new(alpha, beta)?;
        let d = correct_auc_direct(auc_pu, &p)?;
        print!("{name:>9}: AUC^pu {auc_pu:.3} -> AUC {:.3}", d.auc);
        if d.infeasible {
            print!("  (raw {:.3}, clipped)", d.raw);
        }
        println!("  {:?}", auc_ordering_check(auc_pu, &p));
    }
    Ok(())
}
