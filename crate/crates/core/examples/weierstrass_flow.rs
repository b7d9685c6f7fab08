//! Sample the Weierstrass channel flow and check its basic structure.

use pressure_lab::weierstrass::centered_divergence;
use pressure_lab::{ChannelGrid, WeierstrassParams};

fn main() -> pressure_lab::Result<()> {
    let p = WeierstrassParams::new(0.5, 10)?;
    for (x, y) in [(0.0, 0.0), (0.3, 0.25), (1.1, 0.5), (1.7, 1.0)] {
        let (u1, u2) = p.eval_velocity(x, y);
        println!("u({x}, {y}) = ({u1:+.6}, {u2:+.6})   psi = {:+.6}", p.eval_stream(x, y));
    }
    println!("sup |u - u_N| <= {:.3e}", p.truncation_error_bound());
    for n in [256, 512, 1024] {
        let grid = ChannelGrid::channel(n, n / 2 + 1)?;
        let u = p.velocity_field(&grid);
        println!(
            "{n:>5} x {:<5} resolved: {:<5} centered divergence {:.3e}",
            n / 2 + 1,
            p.resolved_by(&grid),
            centered_divergence(&u)?
        );
    }
    Ok(())
}
