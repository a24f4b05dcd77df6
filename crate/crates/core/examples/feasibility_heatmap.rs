//! Coarse text rendering of a feasibility sweep. `#` marks (alpha_hat,
//! beta_hat) pairs whose corrected AUC leaves [0, 1]; digits show the
//! absolute error in tenths.

use pucorrect::correction::feasibility_sweep;
use pucorrect::MixtureParams;

fn main() -> pucorrect::Result<()> {
    let p = MixtureParams::new(0.25, 0.75)?;
    let r = 20;
    let grid = feasibility_sweep(0.95, &p, r)?;
    println!("AUC^pu = {:.3}", grid.auc_pu);
    println!("rows: beta_hat from 1 down to 0; columns: alpha_hat from 0 to 1");
    for j in (0..=r).rev() {
        let line: String = (0..=r)
            .map(|i| {
                let c = grid.cell(i, j);
                match (c.valid, c.infeasible, c.abs_error) {
                    (false, _, _) => ' ',
                    (true, true, _) => '#',
                    (true, false, Some(e)) => {
                        char::from_digit(((e * 10.0) as u32).min(9), 10).unwrap()
                    }
                    _ => '?',
                }
            })
            .collect();
        println!("{:.2} |{line}|", j as f64 / r as f64);
    }
    Ok(())
}
