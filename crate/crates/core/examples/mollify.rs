//! Divergence-free mollification of the Weierstrass flow.

use std::time::Instant;

use pressure_lab::mollifier::{mollification_report, RadialProfile, DEFAULT_MARGIN};
use pressure_lab::{ChannelGrid, WeierstrassParams};

fn main() -> pressure_lab::Result<()> {
    let start = Instant::now();
    let grid = ChannelGrid::square(1024)?;
    let u = WeierstrassParams::new(0.5, 20)?.velocity_field(&grid);
    let epsilons = [0.1, 0.05, 0.025, 0.0125];
    let report = mollification_report(
        &u,
        0.5,
        &[0.1, 0.25, 0.4],
        &epsilons,
        RadialProfile::Bump,
        DEFAULT_MARGIN,
    )?;
    println!("epsilon      C0 error    C^0.1       C^0.25      C^0.4       ratio   div        wall u2");
    for (k, eps) in epsilons.iter().enumerate() {
        println!(
            "{eps:<12} {:.3e}   {:.3e}   {:.3e}   {:.3e}   {:.3}   {:.1e}   {:.1e}",
            report.c0_errors[k],
            report.c_beta_errors[0].errors[k],
            report.c_beta_errors[1].errors[k],
            report.c_beta_errors[2].errors[k],
            report.norm_ratios[k],
            report.divergence_residuals[k],
            report.wall_residuals[k],
        );
    }
    println!("elapsed {:.2} s", start.elapsed().as_secs_f64());
    Ok(())
}
