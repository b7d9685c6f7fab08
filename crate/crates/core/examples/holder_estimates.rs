//! Modulus of continuity of u₂ and the fitted Hölder exponent.

use pressure_lab::holder::{estimate_holder_exponent, holder_seminorm, modulus_profile};
use pressure_lab::trig::pow2;
use pressure_lab::weierstrass::holder_constant_bound;
use pressure_lab::{ChannelGrid, WeierstrassParams};

fn main() -> pressure_lab::Result<()> {
    let grid = ChannelGrid::channel(1024, 601)?;
    let hs: Vec<f64> = (3..=8).map(|k| pow2(-k)).collect();
    for alpha in [0.3, 0.5, 0.7] {
        let u2 = WeierstrassParams::new(alpha, 30)?.velocity_field(&grid).component_field(1);
        let omega = modulus_profile(&u2, &hs)?;
        let fit = estimate_holder_exponent(&u2, &hs)?;
        let semi = holder_seminorm(&u2, alpha, grid.resolution(), 1.0)?;
        println!(
            "alpha {alpha}: fitted {:.3} (r2 {:.4}), seminorm {semi:.3} <= {:.3}",
            fit.fitted_exponent,
            fit.fit_r2,
            holder_constant_bound(alpha)?
        );
        for (h, w) in hs.iter().zip(&omega) {
            println!("    h = {h:<10} omega = {w:.5}");
        }
    }
    Ok(())
}
