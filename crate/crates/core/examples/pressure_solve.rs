//! Modified pressure for the single-mode and Weierstrass flows, with wall traces.

use pressure_lab::pressure::{
    estimate_ratio, secant_normal_trace, single_mode_pressure, solve_modified_pressure,
    weak_normal_trace, CutoffProfile,
};
use pressure_lab::trace::TestFunction;
use pressure_lab::trig::pow2;
use pressure_lab::{ChannelField, ChannelGrid, WeierstrassParams};

fn main() -> pressure_lab::Result<()> {
    let phi = CutoffProfile::default();
    println!("single mode:");
    for n in [64, 128, 256] {
        let grid = ChannelGrid::square(n)?;
        let u = WeierstrassParams::new(0.5, 0)?.velocity_field(&grid);
        let sol = solve_modified_pressure(&u, &phi)?;
        let exact = ChannelField::from_fn(grid, single_mode_pressure);
        println!(
            "    {n:>4}: max error {:.3e}, wall dP/dy {:.3e}, {:?}",
            sol.raw.zip_with(&exact, |a, b| a - b)?.max_abs(),
            sol.neumann_residual,
            sol.diagnostics(None)
        );
    }
    let grid = ChannelGrid::square(512)?;
    let theta = TestFunction::mean_one();
    let u = WeierstrassParams::new(0.25, 12)?.velocity_field(&grid);
    let sol = solve_modified_pressure(&u, &phi)?;
    println!("Weierstrass alpha 0.25, N 12, 512 grid:");
    println!("    ratio {:.3}", estimate_ratio(&sol, &u, 0.25)?);
    println!("    trace of P at the wall {:+.3e}", weak_normal_trace(&sol.modified, &theta, 0.0)?);
    for n in 1..=8 {
        let y = pow2(-n);
        println!(
            "    y {y:<10} secant trace p {:+.4e}  P {:+.4e}",
            secant_normal_trace(&sol.raw, &theta, y)?,
            secant_normal_trace(&sol.modified, &theta, y)?
        );
    }
    Ok(())
}
