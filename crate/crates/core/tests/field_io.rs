use pressure_lab::{ChannelField, ChannelGrid, Error};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn csv_round_trip_is_exact(
        log_nx in 2u32..6,
        ny in 3usize..9,
        components in 1usize..=4,
        seed in prop::collection::vec(-1e6f64..1e6, 1..8),
    ) {
        let grid = ChannelGrid::channel(1 << log_nx, ny).unwrap();
        let data: Vec<Vec<f64>> = (0..components)
            .map(|c| (0..grid.len()).map(|k| seed[(k + c) % seed.len()] * (k as f64 + 0.5).sqrt()).collect())
            .collect();
        let f = ChannelField::new(grid, data).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.csv");
        f.save_csv(&path).unwrap();
        let back = ChannelField::read_csv(std::fs::File::open(&path).unwrap(), grid).unwrap();
        prop_assert_eq!(back.n_components(), components);
        for c in 0..components {
            prop_assert_eq!(back.component(c), f.component(c));
        }
    }
}

#[test]
fn read_rejects_wrong_grid() {
    let grid = ChannelGrid::channel(4, 3).unwrap();
    let f = ChannelField::from_fn(grid, |x, y| x + y);
    let mut buf = Vec::new();
    f.write_csv(&mut buf).unwrap();
    let other = ChannelGrid::channel(8, 3).unwrap();
    assert!(ChannelField::read_csv(buf.as_slice(), other).is_err());
}

#[test]
fn grid_rejects_non_power_of_two() {
    assert!(matches!(ChannelGrid::channel(6, 5), Err(Error::InvalidGrid(_))));
}
