//! Difference quotients at interior dyadic points y₁ = j/2^m, split into three sums.

use pressure_lab::trace::{dyadic_quotients_interior, TestFunction};
use pressure_lab::WeierstrassParams;

fn main() -> pressure_lab::Result<()> {
    let p = WeierstrassParams::new(0.25, 60)?;
    let theta = TestFunction::mean_one();
    for (j, m) in [(1, 1), (1, 2), (3, 2), (5, 3)] {
        let r = dyadic_quotients_interior(&p, &theta, j, m, 40)?;
        println!(
            "y1 = {j}/2^{m}: S3 exponent {:.3}, verdict {:?}",
            r.dominant_exponent, r.verdict
        );
        for row in r.rows.iter().filter(|row| row.n % 10 == 0) {
            println!(
                "    n {:>2}  S1 {:+.4e}  S2 {:+.4e}  S3 {:+.4e}  bound {:.4e}",
                row.n, row.parts[0], row.parts[1], row.parts[2], row.lower_bound
            );
        }
    }
    Ok(())
}
