use pressure_lab::trace::{decompose_u, eval_u, rr_lower_bound, TestFunction};
use pressure_lab::trig::{cospi, pow2, sinpi};
use pressure_lab::weierstrass::{holder_constant_bound, WeierstrassParams};
use pressure_lab::{holder::holder_seminorm, ChannelGrid};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sinpi_cospi_match_libm(t in -50.0f64..50.0) {
        let pi = std::f64::consts::PI;
        prop_assert!((sinpi(t) - (pi * t).sin()).abs() < 1e-12);
        prop_assert!((cospi(t) - (pi * t).cos()).abs() < 1e-12);
    }

    #[test]
    fn sinpi_vanishes_at_integers(k in -1_000_000i64..1_000_000) {
        prop_assert_eq!(sinpi(k as f64), 0.0);
        prop_assert_eq!(cospi(k as f64).abs(), 1.0);
    }

    #[test]
    fn walls_are_impermeable(alpha in 0.05f64..1.0, n in 0u32..40, x in 0.0f64..2.0) {
        let p = WeierstrassParams::new(alpha, n).unwrap();
        prop_assert_eq!(p.eval_velocity(x, 0.0).1, 0.0);
        prop_assert_eq!(p.eval_velocity(x, 1.0).1, 0.0);
    }

    #[test]
    fn velocity_is_x_periodic(alpha in 0.1f64..1.0, n in 0u32..12, x in 0.0f64..2.0, y in 0.0f64..1.0) {
        let p = WeierstrassParams::new(alpha, n).unwrap();
        let (a1, a2) = p.eval_velocity(x, y);
        let (b1, b2) = p.eval_velocity(x + 2.0, y);
        prop_assert!((a1 - b1).abs() < 1e-9 && (a2 - b2).abs() < 1e-9);
    }

    #[test]
    fn stream_reproduces_velocity(alpha in 0.2f64..1.0, n in 0u32..4, x in 0.1f64..1.9, y in 0.1f64..0.9) {
        let p = WeierstrassParams::new(alpha, n).unwrap();
        let h = 1e-5;
        let (u1, u2) = p.eval_velocity(x, y);
        let dy = (p.eval_stream(x, y + h) - p.eval_stream(x, y - h)) / (2.0 * h);
        let dx = (p.eval_stream(x + h, y) - p.eval_stream(x - h, y)) / (2.0 * h);
        let scale = pow2(n as i32) * 10.0;
        prop_assert!((dy - u1).abs() < 1e-6 * scale);
        prop_assert!((-dx - u2).abs() < 1e-6 * scale);
    }

    #[test]
    fn truncations_differ_by_at_most_the_tail(alpha in 0.1f64..1.0, m in 0u32..10, extra in 1u32..10, x in 0.0f64..2.0, y in 0.0f64..1.0) {
        let lo = WeierstrassParams::new(alpha, m).unwrap();
        let hi = WeierstrassParams::new(alpha, m + extra).unwrap();
        let (a1, a2) = lo.eval_velocity(x, y);
        let (b1, b2) = hi.eval_velocity(x, y);
        let tail = lo.tail_between(m + extra);
        prop_assert!((a1 - b1).abs() <= tail * (1.0 + 1e-12));
        prop_assert!((a2 - b2).abs() <= tail * (1.0 + 1e-12));
    }

    #[test]
    fn decomposition_sums_to_tested_square(alpha in 0.1f64..1.0, n in 0u32..20, y in 0.0f64..1.0) {
        let p = WeierstrassParams::new(alpha, n).unwrap();
        let t = TestFunction::mean_one_mixed();
        let d = decompose_u(&p, &t, y);
        prop_assert!((d.total() - eval_u(&p, &t, y)).abs() < 1e-12 * (1.0 + d.total().abs()));
    }

    #[test]
    fn mean_zero_theta_has_no_resonant_part(alpha in 0.1f64..1.0, n in 0u32..40, y in 0.0f64..1.0) {
        let p = WeierstrassParams::new(alpha, n).unwrap();
        prop_assert_eq!(decompose_u(&p, &TestFunction::mean_zero(), y).rr, 0.0);
    }

    #[test]
    fn resonant_quotient_dominates_bound(alpha in 0.1f64..0.9, n in 1u32..45) {
        let p = WeierstrassParams::new(alpha, 60).unwrap();
        let y = pow2(-(n as i32));
        let q = decompose_u(&p, &TestFunction::mean_one(), y).rr / y;
        prop_assert!(q >= rr_lower_bound(alpha, n).unwrap() * (1.0 - 1e-14));
    }
}

#[test]
fn sampled_seminorm_below_closed_form_constant() {
    let grid = ChannelGrid::channel(256, 129).unwrap();
    for alpha in [0.3, 0.5, 0.7] {
        let u2 = WeierstrassParams::new(alpha, 20).unwrap().velocity_field(&grid).component_field(1);
        let semi = holder_seminorm(&u2, alpha, grid.resolution(), 1.0).unwrap();
        assert!(semi <= holder_constant_bound(alpha).unwrap() * 1.01, "alpha {alpha}: {semi}");
    }
}
