use pressure_lab::mollifier::{
    discrete_divergence, mollify_stream, odd_extend, stream_from_velocity, velocity_from_stream,
    Mollifier, RadialProfile, DEFAULT_MARGIN,
};
use pressure_lab::pressure::{solve_dirichlet, solve_modified_pressure, CutoffProfile, TrigPolyField};
use pressure_lab::{ChannelField, ChannelGrid, WeierstrassParams};
use proptest::prelude::*;

fn flow(alpha: f64, n: u32, nx: usize) -> ChannelField {
    let grid = ChannelGrid::square(nx).unwrap();
    WeierstrassParams::new(alpha, n).unwrap().velocity_field(&grid)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn mollified_flow_is_solenoidal_and_tangential(
        alpha in 0.2f64..0.9,
        n in 0u32..6,
        eps in 0.03f64..0.2,
        polynomial in any::<bool>(),
    ) {
        let u = flow(alpha, n, 128);
        let profile = if polynomial { RadialProfile::Polynomial { power: 3 } } else { RadialProfile::Bump };
        let (psi, flux) = stream_from_velocity(&u).unwrap();
        let ext = odd_extend(&psi, DEFAULT_MARGIN).unwrap();
        let psi_eps = mollify_stream(&ext, &Mollifier::new(eps, profile).unwrap()).unwrap();
        let v = velocity_from_stream(&psi_eps, flux).unwrap();
        let last = v.grid().ny() - 1;
        prop_assert!(v.row(1, 0).iter().all(|&w| w == 0.0));
        prop_assert!(v.row(1, last).iter().all(|&w| w == 0.0));
        prop_assert!(discrete_divergence(&v).unwrap() <= 1e-12);
    }

    #[test]
    fn pressure_is_quadratic_in_velocity(alpha in 0.2f64..0.9, n in 0u32..5, lambda in 0.1f64..5.0) {
        let u = flow(alpha, n, 64);
        let phi = CutoffProfile::default();
        let a = solve_modified_pressure(&u, &phi).unwrap();
        let b = solve_modified_pressure(&u.map(|v| lambda * v), &phi).unwrap();
        let diff = b.modified.zip_with(&a.modified, |p, q| p - lambda * lambda * q).unwrap().max_abs();
        prop_assert!(diff <= 1e-10 * lambda * lambda * (1.0 + a.modified.max_abs()));
        prop_assert!(b.mean_constraint_residual <= 1e-10 * lambda * lambda);
        prop_assert!(b.pde_residual <= 1e-10);
    }

    #[test]
    fn raw_pressure_equals_modified_off_the_cutoff(alpha in 0.2f64..0.9, n in 0u32..5, delta in 0.05f64..0.25) {
        let u = flow(alpha, n, 64);
        let sol = solve_modified_pressure(&u, &CutoffProfile::new(delta).unwrap()).unwrap();
        let grid = *u.grid();
        for j in 0..grid.ny() {
            let y = grid.y(j);
            if y.min(1.0 - y) >= 2.0 * delta || j == 0 || j == grid.ny() - 1 {
                for i in 0..grid.nx() {
                    prop_assert_eq!(sol.raw.get(0, i, j), sol.modified.get(0, i, j));
                }
            }
        }
    }

    #[test]
    fn dirichlet_solution_vanishes_on_walls(seed in 0u64..1000) {
        let grid = ChannelGrid::square(32).unwrap();
        let v = solve_dirichlet(&TrigPolyField::random(seed, 3, 3), &grid).unwrap();
        prop_assert!(v.row(0, 0).iter().all(|&w| w == 0.0));
        prop_assert!(v.row(0, grid.ny() - 1).iter().all(|&w| w == 0.0));
    }
}

#[test]
fn zero_flow_has_zero_pressure() {
    let grid = ChannelGrid::square(32).unwrap();
    let u = ChannelField::zeros(grid, 2);
    let sol = solve_modified_pressure(&u, &CutoffProfile::default()).unwrap();
    assert_eq!(sol.modified.max_abs(), 0.0);
}
