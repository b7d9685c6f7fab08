//! Hölder-norm ratios of Dirichlet solutions with divergence-form data.

use pressure_lab::pressure::{dirichlet_schauder_check, TrigPolyField};

fn main() -> pressure_lab::Result<()> {
    let resolutions = [64, 128, 256, 512];
    let single = dirichlet_schauder_check(&TrigPolyField::single_mode(), 0.5, &resolutions)?;
    println!("single mode: {:?} spread {:.4}", single.ratios, single.spread());
    for seed in 0..5 {
        let c = dirichlet_schauder_check(&TrigPolyField::random(seed, 5, 4), 0.5, &resolutions)?;
        println!("seed {seed}: {:?} spread {:.4}", c.ratios, c.spread());
    }
    Ok(())
}
