//! Metric identities and curvilinear operators on the built-in boundary patches.

use pressure_lab::geometry::{verify_patch, SurfacePatch};

fn main() -> pressure_lab::Result<()> {
    for name in SurfacePatch::CATALOG {
        let patch = SurfacePatch::catalog(name)?;
        let report = verify_patch(&patch, 100)?;
        println!("{name} (delta {}): passed {}", patch.delta(), report.passed());
        for (id, value, tol) in report.tolerances() {
            println!("    {id:<18} {value:.2e}  (tol {tol:.0e})");
        }
        let m = patch.metric(patch.point(0.1, -0.2, 0.5 * patch.delta())?)?;
        println!("    metric at (0.1, -0.2, delta/2): {m:?}");
    }
    Ok(())
}
