use std::fs;
use std::path::Path;

use pressure_lab::experiments::{
    execute, exit_code, merge_params, GeometryVerify, PressureSolve, SchauderCheckParams,
    TraceBlowup,
};
use pressure_lab::Error;

fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn reruns_are_byte_identical() {
    let trace: TraceBlowup = merge_params(Some("alpha = 0.25\nn-max = 30\n"), &TraceBlowup::default()).unwrap();
    let schauder: SchauderCheckParams =
        merge_params(Some("resolutions = [32, 64]\nseeds = [3]\n"), &SchauderCheckParams::default()).unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [a.path(), b.path()] {
        execute(&trace, &dir.join("trace")).unwrap();
        execute(&schauder, &dir.join("schauder")).unwrap();
    }
    for sub in ["trace", "schauder"] {
        let first = snapshot(&a.path().join(sub));
        assert!(first.iter().any(|(n, _)| n == "manifest.json"));
        assert_eq!(first, snapshot(&b.path().join(sub)), "{sub}");
    }
}

#[test]
fn trace_blowup_manifest_reports_divergence() {
    let dir = tempfile::tempdir().unwrap();
    let p: TraceBlowup = merge_params(Some("alpha = 0.25\nn-max = 30\ntheta = \"mean-one\"\n"), &TraceBlowup::default()).unwrap();
    let m = execute(&p, dir.path()).unwrap();
    assert!(m.passed);
    assert_eq!(m.results["verdict"], "DIVERGES");
    let e = m.results["fitted_growth_exponent"].as_f64().unwrap();
    assert!((e - 0.5).abs() <= 0.05);
}

#[test]
fn single_mode_pressure_solve_converges() {
    let dir = tempfile::tempdir().unwrap();
    let p: PressureSolve =
        merge_params(Some("flow = \"single-mode\"\ngrids = [64, 128, 256]\n"), &PressureSolve::default()).unwrap();
    let m = execute(&p, dir.path()).unwrap();
    assert!(m.passed, "{:?}", m.checks);
    assert!(dir.path().join("pressure.csv").exists());
}

#[test]
fn cli_values_override_file() {
    let cli = GeometryVerify {
        patch: Some("saddle".into()),
        ..Default::default()
    };
    let p = merge_params(Some("patch = \"flat\"\npoints = 10\n"), &cli).unwrap();
    assert_eq!(p.patch.as_deref(), Some("saddle"));
    assert_eq!(p.points, Some(10));
}

#[test]
fn bad_configs_are_exit_code_two() {
    let unknown = merge_params::<TraceBlowup>(Some("bogus = 1\n"), &TraceBlowup::default()).unwrap_err();
    assert_eq!(exit_code(&unknown), 2);
    let wrong = merge_params::<TraceBlowup>(Some("experiment = \"geometry-verify\"\n"), &TraceBlowup::default())
        .unwrap_err();
    assert_eq!(exit_code(&wrong), 2);
    let dir = tempfile::tempdir().unwrap();
    let out_of_range = TraceBlowup {
        alpha: Some(1.5),
        ..Default::default()
    };
    assert_eq!(exit_code(&execute(&out_of_range, dir.path()).unwrap_err()), 2);
    assert_eq!(exit_code(&Error::ZeroNorm), 1);
}
