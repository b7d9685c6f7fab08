//! The acceptance suite: one function per criterion, each returning its
//! checks, the elapsed time and the runtime limit.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::error::Result;
use crate::experiments::{Check, VERSION};
use crate::field::{ChannelField, ChannelGrid};
use crate::geometry::{verify_patch, SurfacePatch};
use crate::holder::{estimate_holder_exponent, holder_seminorm};
use crate::mollifier::{mollification_report, RadialProfile, DEFAULT_MARGIN};
use crate::pressure::{
    dirichlet_schauder_check, estimate_ratio, secant_normal_trace, single_mode_pressure,
    solve_dirichlet, solve_modified_pressure, weak_normal_trace, CutoffProfile, TrigPolyField,
};
use crate::trace::{
    decompose_u, dyadic_quotients_boundary, dyadic_quotients_interior, growth_exponent,
    rr_lower_bound, TestFunction, Verdict,
};
use crate::trig::{cospi, pow2, sinpi};
use crate::weierstrass::WeierstrassParams;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub checks: Vec<Check>,
    pub seconds: f64,
    pub runtime_limit: Option<f64>,
    pub passed: bool,
}

/// Checks that cannot pass as specified, keyed by criterion id.
///
/// At `y₁ = 1/2` the `k < m` part of the interior quotient is the single term
/// `−2^{n−1} sin²(2^{−n}π) ≈ −π² 2^{−n−1}`, which tends to zero, so its max/min
/// over `n ≥ 10` is about `2^{n_max−10}` rather than bounded by 10.
pub const EXPECTED_FAILURES: &[(u32, &str)] = &[(3, "y1_1/2^1_low_sums_spread")];

impl CriterionResult {
    fn new(
        id: u32,
        name: &'static str,
        checks: Vec<Check>,
        start: Instant,
        limit: Option<f64>,
    ) -> Self {
        let seconds = start.elapsed().as_secs_f64();
        let passed = checks.iter().all(|c| c.passed) && limit.is_none_or(|l| seconds <= l);
        Self {
            id,
            name,
            checks,
            seconds,
            runtime_limit: limit,
            passed,
        }
    }

    /// `PASS [id] name (t s / limit s)` followed by any failing checks.
    pub fn line(&self) -> String {
        let limit = self.runtime_limit.map_or("none".to_string(), |l| format!("{l} s"));
        let mut s = format!(
            "{} [{}] {} ({:.2} s / {limit})",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
        );
        for c in self.checks.iter().filter(|c| !c.passed) {
            s.push_str(&format!("\n    failed {}: {:e} (want {})", c.name, c.value, c.limit));
        }
        s
    }
}

/// Independent evaluation of `2^{n−1} Σ_{k<n} 2^{−2αk} sin²(2^{k−n}π)` with the libm sine.
fn rr_quotient_oracle(alpha: f64, n: u32) -> f64 {
    let mut s = 0.0;
    for k in 0..n {
        let w = (-2.0 * alpha * k as f64).exp2();
        let a = ((k as f64 - n as f64).exp2() * std::f64::consts::PI).sin();
        s += w * a * a;
    }
    (n as f64 - 1.0).exp2() * s
}

pub fn criterion_1() -> Result<CriterionResult> {
    let start = Instant::now();
    let theta = TestFunction::mean_one();
    let mut worst_rel = 0.0_f64;
    let mut worst_margin = f64::INFINITY;
    for alpha in [0.25, 0.4, 0.5] {
        let p = WeierstrassParams::new(alpha, 60)?;
        for n in 1..=40u32 {
            let y = pow2(-(n as i32));
            let rr = decompose_u(&p, &theta, y).rr / y;
            let oracle = rr_quotient_oracle(alpha, n);
            worst_rel = worst_rel.max(((rr - oracle) / oracle).abs());
            worst_margin = worst_margin.min(rr - rr_lower_bound(alpha, n)?);
        }
    }
    let checks = vec![
        Check::at_most("rr_identity_relative_error", worst_rel, 1e-12),
        Check::at_least("rr_minus_lower_bound", worst_margin, 0.0),
    ];
    Ok(CriterionResult::new(1, "RR-quotient identity and bound", checks, start, Some(1.0)))
}

pub fn criterion_2() -> Result<CriterionResult> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let p = WeierstrassParams::new(0.25, 60)?;
    let r = dyadic_quotients_boundary(&p, &TestFunction::mean_one(), 30)?;
    checks.push(Check::holds(
        "alpha_0.25_diverges",
        r.fitted_growth_exponent,
        r.verdict == Verdict::Diverges,
        "verdict DIVERGES",
    ));
    checks.push(Check::within("alpha_0.25_exponent", r.fitted_growth_exponent, 0.5, 0.05));
    let p = WeierstrassParams::new(0.5, 60)?;
    let r = dyadic_quotients_boundary(&p, &TestFunction::mean_one(), 40)?;
    let tail_inf = r
        .rows
        .iter()
        .filter(|row| row.n >= 10)
        .map(|row| row.parts[2])
        .fold(f64::INFINITY, f64::min);
    checks.push(Check::at_least("alpha_0.5_rr_tail_inf", tail_inf, 1.998));
    for alpha in [0.25, 0.4, 0.5] {
        let p = WeierstrassParams::new(alpha, 60)?;
        let r = dyadic_quotients_boundary(&p, &TestFunction::mean_zero(), 40)?;
        let worst = r
            .rows
            .iter()
            .filter(|row| row.n >= 20)
            .fold(0.0_f64, |m, row| m.max(row.total.abs()));
        checks.push(Check::at_most(format!("mean_zero_alpha_{alpha}"), worst, 1e-3));
    }
    Ok(CriterionResult::new(2, "Trichotomy", checks, start, Some(5.0)))
}

pub fn criterion_3() -> Result<CriterionResult> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let p = WeierstrassParams::new(0.25, 60)?;
    let theta = TestFunction::mean_one();
    for (j, m) in [(1u64, 1u32), (3, 2)] {
        let label = format!("y1_{j}/2^{m}");
        let r = dyadic_quotients_interior(&p, &theta, j, m, 40)?;
        checks.push(Check::within(format!("{label}_s3_exponent"), r.dominant_exponent, 0.5, 0.05));
        checks.push(Check::holds(
            format!("{label}_diverges"),
            r.fitted_growth_exponent,
            r.verdict == Verdict::Diverges,
            "verdict DIVERGES",
        ));
        let low: Vec<f64> = r
            .rows
            .iter()
            .filter(|row| row.n >= 10)
            .map(|row| (row.parts[0] + row.parts[1]).abs())
            .collect();
        let max = low.iter().cloned().fold(0.0, f64::max);
        let min = low.iter().cloned().fold(f64::INFINITY, f64::min);
        let ratio = max / min;
        checks.push(Check::holds(
            format!("{label}_low_sums_bounded"),
            max,
            max.is_finite(),
            "finite",
        ));
        checks.push(Check::holds(
            format!("{label}_low_sums_spread"),
            ratio,
            ratio.is_finite() && ratio <= 10.0,
            "finite and <= 10",
        ));
    }
    Ok(CriterionResult::new(3, "Interior dyadic blow-up", checks, start, Some(5.0)))
}

pub fn criterion_4() -> Result<CriterionResult> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let grid = ChannelGrid::channel(512, 257)?;
    let u2 = WeierstrassParams::new(0.5, 30)?
        .velocity_field(&grid)
        .component_field(1);
    let semi = holder_seminorm(&u2, 0.5, grid.resolution(), 1.0)?;
    checks.push(Check::at_most("seminorm_alpha_0.5", semi, 26.29));
    // A non-dyadic row count keeps modes above the x-Nyquist visible along y.
    let grid = ChannelGrid::channel(2048, 1201)?;
    let hs: Vec<f64> = (4..=9).map(|k| pow2(-k)).collect();
    for alpha in [0.3, 0.5] {
        let u2 = WeierstrassParams::new(alpha, 40)?
            .velocity_field(&grid)
            .component_field(1);
        let est = estimate_holder_exponent(&u2, &hs)?;
        checks.push(Check::within(
            format!("fitted_exponent_alpha_{alpha}"),
            est.fitted_exponent,
            alpha,
            0.05,
        ));
    }
    Ok(CriterionResult::new(4, "Hölder constant", checks, start, Some(30.0)))
}

pub fn criterion_5() -> Result<CriterionResult> {
    let start = Instant::now();
    let mut checks = Vec::new();
    for name in SurfacePatch::CATALOG {
        let report = verify_patch(&SurfacePatch::catalog(name)?, 100)?;
        for (id, value, tol) in report.tolerances() {
            checks.push(Check::at_most(format!("{name}.{id}"), value, tol));
        }
    }
    Ok(CriterionResult::new(5, "Geometry identities", checks, start, Some(5.0)))
}

pub fn criterion_6() -> Result<CriterionResult> {
    let start = Instant::now();
    let grid = ChannelGrid::square(1024)?;
    let u = WeierstrassParams::new(0.5, 20)?.velocity_field(&grid);
    let r = mollification_report(
        &u,
        0.5,
        &[0.25],
        &[0.1, 0.05, 0.025, 0.0125],
        RadialProfile::Bump,
        DEFAULT_MARGIN,
    )?;
    let errors = &r.c_beta_errors[0].errors;
    let worst_step = errors.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
    let max = r.norm_ratios.iter().cloned().fold(0.0, f64::max);
    let min = r.norm_ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let checks = vec![
        Check::at_most(
            "divergence",
            r.divergence_residuals.iter().cloned().fold(0.0, f64::max),
            1e-12,
        ),
        Check::at_most(
            "wall_normal_velocity",
            r.wall_residuals.iter().cloned().fold(0.0, f64::max),
            0.0,
        ),
        Check::holds(
            "c_0.25_error_monotone",
            worst_step,
            worst_step < 1.0,
            "successive error ratio < 1",
        ),
        Check::at_most("alpha_norm_ratio_spread", max / min, 10.0),
    ];
    Ok(CriterionResult::new(6, "Mollifier", checks, start, Some(60.0)))
}

pub fn criterion_7() -> Result<CriterionResult> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let phi = CutoffProfile::default();
    let mut worst_pde = 0.0_f64;
    let mut worst_mean = 0.0_f64;
    let mut errors = Vec::new();
    let mut neumann = Vec::new();
    for n in [64, 128, 256] {
        let grid = ChannelGrid::square(n)?;
        let u = WeierstrassParams::new(0.5, 0)?.velocity_field(&grid);
        let sol = solve_modified_pressure(&u, &phi)?;
        let exact = ChannelField::from_fn(grid, single_mode_pressure);
        errors.push(sol.raw.zip_with(&exact, |a, b| a - b)?.max_abs());
        neumann.push(sol.neumann_residual);
        worst_pde = worst_pde.max(sol.pde_residual);
        worst_mean = worst_mean.max(sol.mean_constraint_residual);
    }
    for (k, w) in errors.windows(2).enumerate() {
        checks.push(Check::within(format!("single_mode_order_{k}"), (w[0] / w[1]).log2(), 2.0, 0.2));
    }
    let decreasing = neumann.windows(2).all(|w| w[1] < w[0]);
    checks.push(Check::holds(
        "single_mode_wall_neumann_decreasing",
        neumann[2],
        decreasing,
        "decreasing under refinement",
    ));
    let mut wneumann = Vec::new();
    for n in [128, 256, 512] {
        let grid = ChannelGrid::square(n)?;
        let u = WeierstrassParams::new(0.5, 4)?.velocity_field(&grid);
        let sol = solve_modified_pressure(&u, &phi)?;
        wneumann.push(sol.neumann_residual);
        worst_pde = worst_pde.max(sol.pde_residual);
        worst_mean = worst_mean.max(sol.mean_constraint_residual);
    }
    checks.push(Check::holds(
        "weierstrass_n4_wall_neumann_decreasing",
        wneumann[2],
        wneumann.windows(2).all(|w| w[1] < w[0]),
        "decreasing under refinement",
    ));
    let grid = ChannelGrid::square(512)?;
    let mut ratios = Vec::new();
    for terms in [4, 8, 12] {
        let u = WeierstrassParams::new(0.3, terms)?.velocity_field(&grid);
        let sol = solve_modified_pressure(&u, &phi)?;
        ratios.push(estimate_ratio(&sol, &u, 0.3)?);
        worst_pde = worst_pde.max(sol.pde_residual);
        worst_mean = worst_mean.max(sol.mean_constraint_residual);
    }
    let max = ratios.iter().cloned().fold(0.0, f64::max);
    let min = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    checks.push(Check::at_most("weierstrass_ratio_spread", max / min, 5.0));
    checks.push(Check::at_most("pde_residual", worst_pde, 1e-10));
    checks.push(Check::at_most("mean_residual", worst_mean, 1e-10));
    Ok(CriterionResult::new(7, "Pressure solver", checks, start, Some(120.0)))
}

pub fn criterion_8() -> Result<CriterionResult> {
    let start = Instant::now();
    let grid = ChannelGrid::square(512)?;
    let u = WeierstrassParams::new(0.25, 12)?.velocity_field(&grid);
    let sol = solve_modified_pressure(&u, &CutoffProfile::default())?;
    let theta = TestFunction::mean_one();
    let ns: Vec<u32> = (1..=8).collect();
    let raw: Vec<f64> = ns
        .iter()
        .map(|&n| secant_normal_trace(&sol.raw, &theta, pow2(-(n as i32))))
        .collect::<Result<_>>()?;
    let exponent = growth_exponent(&raw, &ns)?;
    let wall = weak_normal_trace(&sol.modified, &theta, 0.0)?;
    let checks = vec![
        Check::at_least("raw_trace_exponent", exponent, 0.4),
        Check::at_most("modified_wall_trace", wall.abs(), 1e-2),
    ];
    Ok(CriterionResult::new(8, "Trace dichotomy", checks, start, Some(60.0)))
}

pub fn criterion_9() -> Result<CriterionResult> {
    let start = Instant::now();
    let mut checks = Vec::new();
    let resolutions = [64, 128, 256, 512];
    for seed in 0..5u64 {
        let f = TrigPolyField::random(seed, 5, 4);
        let c = dirichlet_schauder_check(&f, 0.5, &resolutions)?;
        checks.push(Check::at_most(format!("seed_{seed}_spread"), c.spread(), 2.0));
    }
    let single = TrigPolyField::single_mode();
    let mut errors = Vec::new();
    for n in resolutions {
        let grid = ChannelGrid::square(n)?;
        let v = solve_dirichlet(&single, &grid)?;
        let exact = ChannelField::from_fn(grid, |x, y| 0.8 * cospi(2.0 * x) * sinpi(y));
        errors.push(v.zip_with(&exact, |a, b| a - b)?.max_abs());
    }
    for (k, w) in errors.windows(2).enumerate() {
        checks.push(Check::within(format!("single_mode_order_{k}"), (w[0] / w[1]).log2(), 2.0, 0.2));
    }
    Ok(CriterionResult::new(9, "Dirichlet Schauder ratios", checks, start, None))
}

/// Runs every criterion in order; an error inside a criterion becomes a failing check.
pub fn run_all() -> Vec<CriterionResult> {
    type Criterion = fn() -> Result<CriterionResult>;
    const ALL: [(u32, &str, Criterion); 9] = [
        (1, "RR-quotient identity and bound", criterion_1),
        (2, "Trichotomy", criterion_2),
        (3, "Interior dyadic blow-up", criterion_3),
        (4, "Hölder constant", criterion_4),
        (5, "Geometry identities", criterion_5),
        (6, "Mollifier", criterion_6),
        (7, "Pressure solver", criterion_7),
        (8, "Trace dichotomy", criterion_8),
        (9, "Dirichlet Schauder ratios", criterion_9),
    ];
    ALL.iter()
        .map(|&(id, name, f)| {
            f().unwrap_or_else(|e| CriterionResult {
                id,
                name,
                checks: vec![Check::holds(format!("error: {e}"), f64::NAN, false, "no error")],
                seconds: 0.0,
                runtime_limit: None,
                passed: false,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct AcceptanceReport {
    pub version: &'static str,
    pub criteria: Vec<CriterionResult>,
    pub passed: bool,
}

impl AcceptanceReport {
    pub fn new(criteria: Vec<CriterionResult>) -> Self {
        let passed = criteria.iter().all(|c| c.passed);
        Self {
            version: VERSION,
            criteria,
            passed,
        }
    }

    /// Writes `acceptance.json` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = dir.join("acceptance.json");
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(&path, text)?;
        Ok(path)
    }
}
