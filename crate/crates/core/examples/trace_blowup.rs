//! Dyadic difference quotients of the tested square of u₂ at the wall.

use pressure_lab::trace::{dyadic_quotients_boundary, TestFunction};
use pressure_lab::WeierstrassParams;

fn main() -> pressure_lab::Result<()> {
    for (alpha, theta) in [
        (0.25, TestFunction::mean_one()),
        (0.5, TestFunction::mean_one()),
        (0.75, TestFunction::mean_one()),
        (0.25, TestFunction::mean_zero()),
    ] {
        let r = dyadic_quotients_boundary(&WeierstrassParams::new(alpha, 60)?, &theta, 30)?;
        println!(
            "alpha {alpha}, mean {}: exponent {:+.3}, verdict {:?}",
            theta.integral(),
            r.fitted_growth_exponent,
            r.verdict
        );
        for row in r.rows.iter().step_by(5) {
            println!(
                "    n {:>2}  total {:+.6e}  RR {:+.6e}  bound {:+.6e}",
                row.n, row.total, row.parts[2], row.lower_bound
            );
        }
    }
    Ok(())
}
