//! Reproducible experiment runs behind the command-line tool.
//!
//! Every experiment takes one parameter struct whose fields double as CLI
//! flags and as TOML keys (`--n-max 30` ⇔ `n-max = 30`). Missing values get
//! defaults, unknown keys are rejected, and each run writes its series as
//! CSV plus a `manifest.json` echoing the resolved configuration, the crate
//! version, every check and every output file. Nothing in a manifest depends
//! on the clock, so re-running a configuration reproduces it byte for byte.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::ChannelGrid;
use crate::geometry::{verify_patch, SurfacePatch};
use crate::holder::{estimate_holder_exponent, holder_seminorm, modulus_profile};
use crate::mollifier::{mollification_report, RadialProfile};
use crate::pressure::{
    dirichlet_schauder_check, estimate_ratio, secant_normal_trace, single_mode_pressure,
    solve_dirichlet, solve_modified_pressure, weak_normal_trace, CutoffProfile, TrigPolyField,
};
use crate::trace::{
    dyadic_quotients_boundary, dyadic_quotients_interior, growth_exponent, TestFunction,
    MAX_DYADIC_N,
};
use crate::trig::{cospi, pow2, sinpi};
use crate::weierstrass::{holder_constant_bound, WeierstrassParams};
use crate::ChannelField;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One pass/fail assertion recorded in a manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub limit: String,
    pub passed: bool,
}

impl Check {
    pub fn at_most(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            limit: format!("<= {limit:e}"),
            passed: value <= limit,
        }
    }

    pub fn at_least(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Self {
            name: name.into(),
            value,
            limit: format!(">= {limit:e}"),
            passed: value >= limit,
        }
    }

    pub fn within(name: impl Into<String>, value: f64, target: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            value,
            limit: format!("{target} ± {tol}"),
            passed: (value - target).abs() <= tol,
        }
    }

    pub fn holds(name: impl Into<String>, value: f64, passed: bool, limit: &str) -> Self {
        Self {
            name: name.into(),
            value,
            limit: limit.into(),
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub experiment: String,
    pub version: String,
    pub config: serde_json::Value,
    pub results: serde_json::Value,
    pub checks: Vec<Check>,
    pub outputs: Vec<String>,
    pub passed: bool,
}

impl Manifest {
    fn new<P: Serialize>(
        experiment: &str,
        config: &P,
        results: serde_json::Value,
        checks: Vec<Check>,
        outputs: Vec<String>,
    ) -> Result<Self> {
        let passed = checks.iter().all(|c| c.passed);
        Ok(Self {
            experiment: experiment.into(),
            version: VERSION.into(),
            config: serde_json::to_value(config)?,
            results,
            checks,
            outputs,
            passed,
        })
    }

    pub fn write(&self, dir: &Path) -> Result<PathBuf> {
        let path = dir.join("manifest.json");
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(&path, text)?;
        Ok(path)
    }
}

/// Parameter struct of one experiment.
pub trait Params: Serialize + DeserializeOwned + Default + Clone {
    const NAME: &'static str;
    /// Fills every unset field with its default.
    fn resolved(&self) -> Self;
    fn validate(&self) -> Result<()>;
    fn run(&self, out: &Path) -> Result<Manifest>;
}

/// Overlays CLI values on a TOML config file; unknown keys and a mismatched
/// `experiment` entry are configuration errors.
pub fn merge_params<P: Params>(file: Option<&str>, cli: &P) -> Result<P> {
    let mut table = match file {
        Some(text) => text
            .parse::<toml::Table>()
            .map_err(|e| Error::Config(format!("config file: {e}")))?,
        None => toml::Table::new(),
    };
    if let Some(name) = table.remove("experiment") {
        if name.as_str() != Some(P::NAME) {
            return Err(Error::Config(format!(
                "config is for experiment {name}, not {}",
                P::NAME
            )));
        }
    }
    let cli_value = toml::Value::try_from(cli).map_err(|e| Error::Config(e.to_string()))?;
    if let toml::Value::Table(cli_table) = cli_value {
        table.extend(cli_table);
    }
    toml::Value::Table(table)
        .try_into::<P>()
        .map_err(|e| Error::Config(e.to_string()))
}

/// Resolves, validates and runs an experiment, writing outputs and the manifest to `out`.
pub fn execute<P: Params>(params: &P, out: &Path) -> Result<Manifest> {
    let resolved = params.resolved();
    resolved.validate()?;
    fs::create_dir_all(out)?;
    let manifest = resolved.run(out)?;
    manifest.write(out)?;
    Ok(manifest)
}

/// Process exit status for an error: 2 for invalid configuration, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::InvalidParameter(_) | Error::InvalidGrid(_) | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

fn check_alpha(alpha: f64, lo_open: f64, hi: f64) -> Result<()> {
    if !(alpha > lo_open && alpha <= hi) {
        return Err(config_err(format!("alpha = {alpha} not in ({lo_open}, {hi}]")));
    }
    Ok(())
}

fn check_grid(nx: usize, ny: usize) -> Result<ChannelGrid> {
    ChannelGrid::channel(nx, ny).map_err(|e| config_err(e.to_string()))
}

fn write_csv(out: &Path, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_path(out.join(name))?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(name.to_string())
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn order_of(errors: &[f64], sizes: &[usize]) -> Vec<f64> {
    errors
        .windows(2)
        .zip(sizes.windows(2))
        .map(|(e, n)| (e[0] / e[1]).ln() / (n[1] as f64 / n[0] as f64).ln())
        .collect()
}

fn spread(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::MIN, f64::max);
    let min = values.iter().cloned().fold(f64::MAX, f64::min);
    max / min
}

// ---------------------------------------------------------------------------

/// Modulus of continuity and Hölder seminorm of the Weierstrass `u₂`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct WeierstrassScan {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub n_terms: Option<u32>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
    /// Smallest fitted separation (clipped to the grid resolution).
    #[arg(long)]
    pub h_min: Option<f64>,
    #[arg(long)]
    pub h_max: Option<f64>,
    /// When set, asserts `|fitted exponent − alpha| ≤ exponent-tol`.
    #[arg(long)]
    pub exponent_tol: Option<f64>,
}

impl Params for WeierstrassScan {
    const NAME: &'static str = "weierstrass-scan";

    fn resolved(&self) -> Self {
        let nx = self.nx.unwrap_or(512);
        Self {
            alpha: Some(self.alpha.unwrap_or(0.5)),
            n_terms: Some(self.n_terms.unwrap_or(30)),
            nx: Some(nx),
            ny: Some(self.ny.unwrap_or(nx / 2 + 1)),
            h_min: Some(self.h_min.unwrap_or(pow2(-9))),
            h_max: Some(self.h_max.unwrap_or(pow2(-4))),
            exponent_tol: self.exponent_tol,
        }
    }

    fn validate(&self) -> Result<()> {
        check_alpha(self.alpha.unwrap(), 0.0, 1.0)?;
        WeierstrassParams::new(self.alpha.unwrap(), self.n_terms.unwrap())
            .map_err(|e| config_err(e.to_string()))?;
        check_grid(self.nx.unwrap(), self.ny.unwrap())?;
        let (lo, hi) = (self.h_min.unwrap(), self.h_max.unwrap());
        if !(lo > 0.0 && lo < hi && hi <= 1.0) {
            return Err(config_err(format!("need 0 < h-min < h-max <= 1, got {lo}, {hi}")));
        }
        Ok(())
    }

    fn run(&self, out: &Path) -> Result<Manifest> {
        let alpha = self.alpha.unwrap();
        let p = WeierstrassParams::new(alpha, self.n_terms.unwrap())?;
        let grid = ChannelGrid::channel(self.nx.unwrap(), self.ny.unwrap())?;
        let u = p.velocity_field(&grid);
        let u2 = u.component_field(1);
        let mut hs = Vec::new();
        let mut h = self.h_max.unwrap();
        let floor = self.h_min.unwrap().max(grid.resolution());
        while h >= floor * (1.0 - 1e-12) {
            hs.push(h);
            h *= 0.5;
        }
        if hs.is_empty() {
            return Err(config_err("no dyadic separation above the grid resolution"));
        }
        let omega = modulus_profile(&u2, &hs)?;
        let seminorm = holder_seminorm(&u2, alpha, grid.resolution(), 1.0)?;
        let constant = if alpha < 1.0 {
            Some(holder_constant_bound(alpha)?)
        } else {
            None
        };
        let fit = if hs.len() >= 4 {
            Some(estimate_holder_exponent(&u2, &hs)?)
        } else {
            None
        };
        let rows: Vec<Vec<String>> = hs
            .iter()
            .zip(&omega)
            .map(|(&h, &w)| {
                vec![
                    num(h),
                    num(w),
                    num(constant.map_or(f64::NAN, |c| c * h.powf(alpha))),
                ]
            })
            .collect();
        let outputs = vec![write_csv(out, "scan.csv", &["h", "modulus", "bound"], &rows)?];
        let mut checks = Vec::new();
        if let Some(c) = constant {
            checks.push(Check::at_most("seminorm_vs_closed_form", seminorm, c * (1.0 + 5e-4)));
        }
        if let (Some(tol), Some(f)) = (self.exponent_tol, fit.as_ref()) {
            checks.push(Check::within("fitted_exponent", f.fitted_exponent, alpha, tol));
        }
        let results = json!({
            "seminorm": seminorm,
            "holder_constant_bound": constant,
            "fitted_exponent": fit.as_ref().map(|f| f.fitted_exponent),
            "fit_r2": fit.as_ref().map(|f| f.fit_r2),
            "truncation_error_bound": p.truncation_error_bound(),
            "resolved_by_grid": p.resolved_by(&grid),
        });
        Manifest::new(Self::NAME, self, results, checks, outputs)
    }
}

// ---------------------------------------------------------------------------

/// Dyadic trace quotients of `⟨u₂², θ⟩` at the wall or an interior dyadic line.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct TraceBlowup {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub n_terms: Option<u32>,
    #[arg(long)]
    pub n_max: Option<u32>,
    /// `mean-one`, `mean-zero` or `mean-one-mixed`.
    #[arg(long)]
    pub theta: Option<String>,
    /// `boundary` or `interior`.
    #[arg(long)]
    pub location: Option<String>,
    /// Interior line `y₁ = j / 2^m`.
    #[arg(long)]
    pub j: Option<u64>,
    #[arg(long)]
    pub m: Option<u32>,
}

impl Params for TraceBlowup {
    const NAME: &'static str = "trace-blowup";

    fn resolved(&self) -> Self {
        let interior = self.location.as_deref() == Some("interior");
        Self {
            alpha: Some(self.alpha.unwrap_or(0.25)),
            n_terms: Some(self.n_terms.unwrap_or(60)),
            n_max: Some(self.n_max.unwrap_or(30)),
            theta: Some(self.theta.clone().unwrap_or_else(|| "mean-one".into())),
            location: Some(self.location.clone().unwrap_or_else(|| "boundary".into())),
            j: if interior { Some(self.j.unwrap_or(1)) } else { self.j },
            m: if interior { Some(self.m.unwrap_or(1)) } else { self.m },
        }
    }

    fn validate(&self) -> Result<()> {
        check_alpha(self.alpha.unwrap(), 0.0, 1.0)?;
        WeierstrassParams::new(self.alpha.unwrap(), self.n_terms.unwrap())
            .map_err(|e| config_err(e.to_string()))?;
        TestFunction::preset(self.theta.as_deref().unwrap())
            .map_err(|e| config_err(e.to_string()))?;
        let n_max = self.n_max.unwrap();
        if !(6..=MAX_DYADIC_N).contains(&n_max) {
            return Err(config_err(format!("n-max = {n_max} not in 6..={MAX_DYADIC_N}")));
        }
        match self.location.as_deref().unwrap() {
            "boundary" => {
                if self.j.is_some() || self.m.is_some() {
                    return Err(config_err("j and m apply to the interior location only"));
                }
            }
            "interior" => {
                let (j, m) = (self.j.unwrap(), self.m.unwrap());
                if m == 0 || m >= n_max || j == 0 || j >= (1u64 << m.min(62)) || j % 2 == 0 {
                    return Err(config_err(format!(
                        "interior line needs odd j in 1..2^m and 1 <= m < n-max, got j = {j}, m = {m}"
                    )));
                }
            }
            other => return Err(config_err(format!("unknown location {other:?}"))),
        }
        Ok(())
    }

    fn run(&self, out: &Path) -> Result<Manifest> {
        let p = WeierstrassParams::new(self.alpha.unwrap(), self.n_terms.unwrap())?;
        let theta = TestFunction::preset(self.theta.as_deref().unwrap())?;
        let n_max = self.n_max.unwrap();
        let report = match self.location.as_deref().unwrap() {
            "boundary" => dyadic_quotients_boundary(&p, &theta, n_max)?,
            _ => dyadic_quotients_interior(&p, &theta, self.j.unwrap(), self.m.unwrap(), n_max)?,
        };
        let file = fs::File::create(out.join("trace.csv"))?;
        report.write_csv(std::io::BufWriter::new(file))?;
        // Boundary: RR part against its lower bound; interior: S3 against its bound.
        let mut worst = f64::INFINITY;
        for row in &report.rows {
            if row.lower_bound.is_finite() {
                worst = worst.min(row.parts[2] - row.lower_bound * (1.0 - 1e-12));
            }
        }
        let mut checks = Vec::new();
        if worst.is_finite() {
            checks.push(Check::at_least("dominant_part_minus_lower_bound", worst, 0.0));
        }
        let results = json!({
            "verdict": report.verdict,
            "fitted_growth_exponent": report.fitted_growth_exponent,
            "dominant_exponent": report.dominant_exponent,
            "theta_integral": report.theta_integral,
            "location": report.location,
            "final_quotient": report.rows.last().map(|r| r.total),
        });
        Manifest::new(Self::NAME, self, results, checks, vec!["trace.csv".into()])
    }
}

// ---------------------------------------------------------------------------

/// Metric and operator identities of the tubular chart on catalog patches.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct GeometryVerify {
    /// Catalog patch name or `all`.
    #[arg(long)]
    pub patch: Option<String>,
    #[arg(long)]
    pub points: Option<usize>,
}

impl GeometryVerify {
    fn patches(&self) -> Vec<String> {
        match self.patch.as_deref().unwrap() {
            "all" => SurfacePatch::CATALOG.iter().map(|s| s.to_string()).collect(),
            name => vec![name.to_string()],
        }
    }
}

impl Params for GeometryVerify {
    const NAME: &'static str = "geometry-verify";

    fn resolved(&self) -> Self {
        Self {
            patch: Some(self.patch.clone().unwrap_or_else(|| "all".into())),
            points: Some(self.points.unwrap_or(100)),
        }
    }

    fn validate(&self) -> Result<()> {
        for name in self.patches() {
            if !SurfacePatch::CATALOG.contains(&name.as_str()) {
                return Err(config_err(format!(
                    "unknown patch {name:?}; expected one of {:?} or all",
                    SurfacePatch::CATALOG
                )));
            }
        }
        let n = self.points.unwrap();
        if !(1..=100_000).contains(&n) {
            return Err(config_err(format!("points = {n} not in 1..=100000")));
        }
        Ok(())
    }

    fn run(&self, out: &Path) -> Result<Manifest> {
        let mut rows = Vec::new();
        let mut checks = Vec::new();
        let mut reports = serde_json::Map::new();
        for name in self.patches() {
            let patch = SurfacePatch::catalog(&name)?;
            let report = verify_patch(&patch, self.points.unwrap())?;
            for (id, value, tol) in report.tolerances() {
                rows.push(vec![name.clone(), id.into(), num(value), num(tol)]);
                checks.push(Check::at_most(format!("{name}.{id}"), value, tol));
            }
            reports.insert(name, serde_json::to_value(report)?);
        }
        let outputs = vec![write_csv(
            out,
            "geometry.csv",
            &["patch", "identity", "value", "tolerance"],
            &rows,
        )?];
        Manifest::new(Self::NAME, self, serde_json::Value::Object(reports), checks, outputs)
    }
}

// ---------------------------------------------------------------------------

/// Divergence-free mollification sweep of the Weierstrass flow.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct MollifyReport {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub n_terms: Option<u32>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub epsilons: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub betas: Option<Vec<f64>>,
    /// Extension margin beyond each wall.
    #[arg(long)]
    pub margin: Option<f64>,
    /// `bump` or `polynomial`.
    #[arg(long)]
    pub profile: Option<String>,
    /// Exponent of the polynomial profile `(1 − r²)^power`.
    #[arg(long)]
    pub power: Option<u32>,
}

impl MollifyReport {
    fn radial_profile(&self) -> Result<RadialProfile> {
        match self.profile.as_deref().unwrap() {
            "bump" => Ok(RadialProfile::Bump),
            "polynomial" => Ok(RadialProfile::Polynomial {
                power: self.power.unwrap_or(4),
            }),
            other => Err(config_err(format!("unknown profile {other:?}"))),
        }
    }
}

impl Params for MollifyReport {
    const NAME: &'static str = "mollify-report";

    fn resolved(&self) -> Self {
        let nx = self.nx.unwrap_or(1024);
        let profile = self.profile.clone().unwrap_or_else(|| "bump".into());
        let power = if profile == "polynomial" {
            Some(self.power.unwrap_or(4))
        } else {
            self.power
        };
        Self {
            alpha: Some(self.alpha.unwrap_or(0.5)),
            n_terms: Some(self.n_terms.unwrap_or(20)),
            nx: Some(nx),
            ny: Some(self.ny.unwrap_or(nx / 2 + 1)),
            epsilons: Some(self.epsilons.clone().unwrap_or_else(|| vec![0.1, 0.05, 0.025, 0.0125])),
            betas: Some(self.betas.clone().unwrap_or_else(|| vec![0.25])),
            margin: Some(self.margin.unwrap_or(crate::mollifier::DEFAULT_MARGIN)),
            profile: Some(profile),
            power,
        }
    }

    fn validate(&self) -> Result<()> {
        let alpha = self.alpha.unwrap();
        check_alpha(alpha, 0.0, 1.0)?;
        WeierstrassParams::new(alpha, self.n_terms.unwrap()).map_err(|e| config_err(e.to_string()))?;
        let grid = check_grid(self.nx.unwrap(), self.ny.unwrap())?;
        let margin = self.margin.unwrap();
        if !(margin > 0.0 && margin < 1.0) {
            return Err(config_err(format!("margin = {margin} not in (0, 1)")));
        }
        let eps = self.epsilons.as_ref().unwrap();
        if eps.len() < 3 {
            return Err(config_err("need at least 3 epsilons"));
        }
        for &e in eps {
            if !(e >= grid.resolution() && e < margin) {
                return Err(config_err(format!(
                    "epsilon = {e} must lie in [grid resolution, margin)"
                )));
            }
        }
        for &b in self.betas.as_ref().unwrap() {
            if !(b > 0.0 && b < 1.0) {
                return Err(config_err(format!("beta = {b} not in (0, 1)")));
            }
        }
        if self.power == Some(0) {
            return Err(config_err("polynomial power must be positive"));
        }
        self.radial_profile().map(|_| ())
    }

    fn run(&self, out: &Path) -> Result<Manifest> {
        let alpha = self.alpha.unwrap();
        let grid = ChannelGrid::channel(self.nx.unwrap(), self.ny.unwrap())?;
        let u = WeierstrassParams::new(alpha, self.n_terms.unwrap())?.velocity_field(&grid);
        let eps = self.epsilons.clone().unwrap();
        let report = mollification_report(
            &u,
            alpha,
            self.betas.as_ref().unwrap(),
            &eps,
            self.radial_profile()?,
            self.margin.unwrap(),
        )?;
        let file = fs::File::create(out.join("mollify.csv"))?;
        report.write_csv(std::io::BufWriter::new(file))?;
        fs::write(
            out.join("mollify_summary.json"),
            serde_json::to_string_pretty(&report)? + "\n",
        )?;
        let mut checks = vec![
            Check::at_most(
                "divergence",
                report.divergence_residuals.iter().cloned().fold(0.0, f64::max),
                1e-12,
            ),
            Check::at_most(
                "wall_normal_velocity",
                report.wall_residuals.iter().cloned().fold(0.0, f64::max),
                0.0,
            ),
            Check::at_most("alpha_norm_ratio_spread", spread(&report.norm_ratios), 10.0),
        ];
        // The sweep is sorted by decreasing ε before testing monotonicity.
        let mut order: Vec<usize> = (0..eps.len()).collect();
        order.sort_by(|&a, &b| eps[b].total_cmp(&eps[a]));
        for be in report.c_beta_errors.iter().filter(|b| b.beta < alpha) {
            let sorted: Vec<f64> = order.iter().map(|&k| be.errors[k]).collect();
            let worst = sorted
                .windows(2)
                .map(|w| w[1] / w[0])
                .fold(0.0, f64::max);
            checks.push(Check::holds(
                format!("c_beta_{}_monotone", be.beta),
                worst,
                worst < 1.0,
                "successive error ratio < 1",
            ));
        }
        let results = serde_json::to_value(&report)?;
        Manifest::new(
            Self::NAME,
            self,
            results,
            checks,
            vec!["mollify.csv".into(), "mollify_summary.json".into()],
        )
    }
}

// ---------------------------------------------------------------------------

/// Modified-pressure solves: single-mode convergence or Weierstrass ratio sweep.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct PressureSolve {
    /// `single-mode` or `weierstrass`.
    #[arg(long)]
    pub flow: Option<String>,
    /// Square grids `nx × (nx/2 + 1)`.
    #[arg(long, value_delimiter = ',')]
    pub grids: Option<Vec<usize>>,
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Truncation orders swept for the Weierstrass flow.
    #[arg(long, value_delimiter = ',')]
    pub n_terms: Option<Vec<u32>>,
    /// Cutoff half-width.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Test function for the trace diagnostics.
    #[arg(long)]
    pub theta: Option<String>,
    /// Largest `n` of the wall secants at `y_n = 2^{−n}`.
    #[arg(long)]
    pub trace_n_max: Option<u32>,
    /// Also dump `P` and `p` of every solve as field CSV.
    #[arg(long)]
    pub dump_fields: Option<bool>,
}

impl Params for PressureSolve {
    const NAME: &'static str = "pressure-solve";

    fn resolved(&self) -> Self {
        let flow = self.flow.clone().unwrap_or_else(|| "single-mode".into());
        let weierstrass = flow == "weierstrass";
        let default_grids = if weierstrass { vec![512] } else { vec![64, 128, 256] };
        Self {
            grids: Some(self.grids.clone().unwrap_or(default_grids)),
            alpha: Some(self.alpha.unwrap_or(if weierstrass { 0.3 } else { 0.5 })),
            n_terms: Some(self.n_terms.clone().unwrap_or_else(|| {
                if weierstrass {
                    vec![4, 8, 12]
                } else {
                    vec![0]
                }
            })),
            delta: Some(self.delta.unwrap_or(crate::pressure::DEFAULT_CUTOFF_DELTA)),
            theta: Some(self.theta.clone().unwrap_or_else(|| "mean-one".into())),
            trace_n_max: Some(self.trace_n_max.unwrap_or(8)),
            dump_fields: Some(self.dump_fields.unwrap_or(false)),
            flow: Some(flow),
        }
    }

    fn validate(&self) -> Result<()> {
        let flow = self.flow.as_deref().unwrap();
        if flow != "single-mode" && flow != "weierstrass" {
            return Err(config_err(format!("unknown flow {flow:?}")));
        }
        let grids = self.grids.as_ref().unwrap();
        if grids.is_empty() {
            return Err(config_err("need at least one grid"));
        }
        for &n in grids {
            if !(16..=4096).contains(&n) {
                return Err(config_err(format!("grid {n} not in 16..=4096")));
            }
            ChannelGrid::square(n).map_err(|e| config_err(e.to_string()))?;
        }
        if flow == "single-mode" && self.n_terms.as_deref() != Some(&[0]) {
            return Err(config_err("the single-mode flow has n-terms = 0"));
        }
        let alpha = self.alpha.unwrap();
        check_alpha(alpha, 0.0, 1.0)?;
        for &n in self.n_terms.as_ref().unwrap() {
            WeierstrassParams::new(alpha, n).map_err(|e| config_err(e.to_string()))?;
        }
        CutoffProfile::new(self.delta.unwrap()).map_err(|e| config_err(e.to_string()))?;
        TestFunction::preset(self.theta.as_deref().unwrap()).map_err(|e| config_err(e.to_string()))?;
        let t = self.trace_n_max.unwrap();
        if !(1..=30).contains(&t) {
            return Err(config_err(format!("trace-n-max = {t} not in 1..=30")));
        }
        Ok(())
    }

    fn run(&self, out: &Path) -> Result<Manifest> {
        let phi = CutoffProfile::new(self.delta.unwrap())?;
        let alpha = self.alpha.unwrap();
        let single = self.flow.as_deref() == Some("single-mode");
        let theta = TestFunction::preset(self.theta.as_deref().unwrap())?;
        let mut rows = Vec::new();
        let mut outputs = Vec::new();
        let mut runs = Vec::new();
        let mut errors = Vec::new();
        let mut ratios = Vec::new();
        let mut neumann = Vec::new();
        let mut worst_pde = 0.0_f64;
        let mut worst_mean = 0.0_f64;
        let mut last = None;
        for &n in self.grids.as_ref().unwrap() {
            let grid = ChannelGrid::square(n)?;
            for &terms in self.n_terms.as_ref().unwrap() {
                let u = WeierstrassParams::new(if single { 0.5 } else { alpha }, terms)?
                    .velocity_field(&grid);
                let sol = solve_modified_pressure(&u, &phi)?;
                let ratio = estimate_ratio(&sol, &u, alpha)?;
                let error = if single {
                    let exact = ChannelField::from_fn(grid, single_mode_pressure);
                    sol.raw.zip_with(&exact, |a, b| a - b)?.max_abs()
                } else {
                    f64::NAN
                };
                worst_pde = worst_pde.max(sol.pde_residual);
                worst_mean = worst_mean.max(sol.mean_constraint_residual);
                errors.push(error);
                ratios.push(ratio);
                neumann.push(sol.neumann_residual);
                rows.push(vec![
                    n.to_string(),
                    terms.to_string(),
                    num(error),
                    num(sol.pde_residual),
                    num(sol.neumann_residual),
                    num(sol.mean_constraint_residual),
                    num(sol.compatibility_defect),
                    num(ratio),
                ]);
                runs.push(json!({
                    "grid": n,
                    "n_terms": terms,
                    "diagnostics": sol.diagnostics(Some(ratio)),
                }));
                if self.dump_fields.unwrap() {
                    let name = format!("P_{n}_{terms}.csv");
                    sol.modified.save_csv(out.join(&name))?;
                    outputs.push(name);
                    let name = format!("p_{n}_{terms}.csv");
                    sol.raw.save_csv(out.join(&name))?;
                    outputs.push(name);
                }
                last = Some((grid, sol));
            }
        }
        outputs.insert(
            0,
            write_csv(
                out,
                "pressure.csv",
                &[
                    "grid",
                    "n_terms",
                    "error",
                    "pde_residual",
                    "neumann_residual",
                    "mean_residual",
                    "defect",
                    "ratio",
                ],
                &rows,
            )?,
        );
        let mut checks = vec![
            Check::at_most("pde_residual", worst_pde, 1e-10),
            Check::at_most("mean_residual", worst_mean, 1e-10),
        ];
        let mut results = json!({ "runs": runs });
        if single {
            let sizes = self.grids.clone().unwrap();
            let orders = order_of(&errors, &sizes);
            for (k, o) in orders.iter().enumerate() {
                checks.push(Check::within(format!("order_{}_{}", sizes[k], sizes[k + 1]), *o, 2.0, 0.2));
            }
            let decreasing = neumann.windows(2).all(|w| w[1] < w[0]);
            checks.push(Check::holds(
                "wall_neumann_decreasing",
                *neumann.last().unwrap(),
                decreasing,
                "decreasing under refinement",
            ));
            results["orders"] = json!(orders);
        } else {
            checks.push(Check::at_most("ratio_spread", spread(&ratios), 5.0));
            let (grid, sol) = last.expect("at least one solve");
            let n_top = self
                .trace_n_max
                .unwrap()
                .min((1.0 / grid.hy()).log2().floor() as u32);
            let mut trace_rows = Vec::new();
            let (mut ns, mut raw_q) = (Vec::new(), Vec::new());
            for n in 1..=n_top {
                let y = pow2(-(n as i32));
                let raw = secant_normal_trace(&sol.raw, &theta, y)?;
                let modified = secant_normal_trace(&sol.modified, &theta, y)?;
                trace_rows.push(vec![n.to_string(), num(y), num(raw), num(modified)]);
                ns.push(n);
                raw_q.push(raw);
            }
            outputs.push(write_csv(
                out,
                "pressure_trace.csv",
                &["n", "y_n", "raw_secant", "modified_secant"],
                &trace_rows,
            )?);
            let wall = weak_normal_trace(&sol.modified, &theta, 0.0)?;
            checks.push(Check::at_most("modified_wall_trace", wall.abs(), 1e-2));
            let exponent = if ns.len() >= 2 {
                growth_exponent(&raw_q, &ns)?
            } else {
                f64::NAN
            };
            if alpha < 0.5 && theta.integral() != 0.0 && ns.len() >= 4 {
                checks.push(Check::at_least("raw_trace_exponent", exponent, 1.0 - 2.0 * alpha - 0.1));
            }
            results["ratio_spread"] = json!(spread(&ratios));
            results["raw_trace_exponent"] = json!(exponent);
            results["modified_wall_trace"] = json!(wall);
        }
        Manifest::new(Self::NAME, self, results, checks, outputs)
    }
}

// ---------------------------------------------------------------------------

/// Dirichlet Schauder ratios for seeded random data plus the single-mode oracle.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct SchauderCheckParams {
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, value_delimiter = ',')]
    pub seeds: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',')]
    pub resolutions: Option<Vec<usize>>,
    /// Random terms per tensor component.
    #[arg(long)]
    pub terms: Option<usize>,
    #[arg(long)]
    pub max_freq: Option<u32>,
}

impl Params for SchauderCheckParams {
    const NAME: &'static str = "schauder-check";

    fn resolved(&self) -> Self {
        Self {
            alpha: Some(self.alpha.unwrap_or(0.5)),
            seeds: Some(self.seeds.clone().unwrap_or_else(|| (0..5).collect())),
            resolutions: Some(self.resolutions.clone().unwrap_or_else(|| vec![64, 128, 256, 512])),
            terms: Some(self.terms.unwrap_or(5)),
            max_freq: Some(self.max_freq.unwrap_or(4)),
        }
    }

    fn validate(&self) -> Result<()> {
        check_alpha(self.alpha.unwrap(), 0.0, 1.0)?;
        let res = self.resolutions.as_ref().unwrap();
        if res.len() < 2 {
            return Err(config_err("need at least two resolutions"));
        }
        for &n in res {
            if !(16..=4096).contains(&n) {
                return Err(config_err(format!("resolution {n} not in 16..=4096")));
            }
            ChannelGrid::square(n).map_err(|e| config_err(e.to_string()))?;
        }
        if self.seeds.as_ref().unwrap().is_empty() {
            return Err(config_err("need at least one seed"));
        }
        let terms = self.terms.unwrap();
        if !(1..=64).contains(&terms) {
            return Err(config_err(format!("terms = {terms} not in 1..=64")));
        }
        let f = self.max_freq.unwrap();
        let coarsest = *res.iter().min().unwrap();
        if 4 * f as usize > coarsest / 2 {
            return Err(config_err(format!(
                "max-freq = {f} is under-resolved on the {coarsest} grid"
            )));
        }
        Ok(())
    }

    fn run(&self, out: &Path) -> Result<Manifest> {
        let alpha = self.alpha.unwrap();
        let res = self.resolutions.clone().unwrap();
        let mut rows = Vec::new();
        let mut checks = Vec::new();
        let mut per_seed = Vec::new();
        for &seed in self.seeds.as_ref().unwrap() {
            let f = TrigPolyField::random(seed, self.terms.unwrap(), self.max_freq.unwrap());
            let check = dirichlet_schauder_check(&f, alpha, &res)?;
            for (n, r) in res.iter().zip(&check.ratios) {
                rows.push(vec![n.to_string(), seed.to_string(), num(*r)]);
            }
            checks.push(Check::at_most(format!("seed_{seed}_spread"), check.spread(), 2.0));
            per_seed.push(json!({ "seed": seed, "ratios": check.ratios, "zero_data": check.zero_data }));
        }
        let single = TrigPolyField::single_mode();
        let mut errors = Vec::new();
        for &n in &res {
            let grid = ChannelGrid::square(n)?;
            let v = solve_dirichlet(&single, &grid)?;
            let exact = ChannelField::from_fn(grid, |x, y| 0.8 * cospi(2.0 * x) * sinpi(y));
            errors.push(v.zip_with(&exact, |a, b| a - b)?.max_abs());
        }
        let orders = order_of(&errors, &res);
        for (k, o) in orders.iter().enumerate() {
            checks.push(Check::within(
                format!("single_mode_order_{}_{}", res[k], res[k + 1]),
                *o,
                2.0,
                0.2,
            ));
        }
        let outputs = vec![
            write_csv(out, "schauder.csv", &["resolution", "seed", "ratio"], &rows)?,
            write_csv(
                out,
                "schauder_single_mode.csv",
                &["resolution", "error"],
                &res.iter()
                    .zip(&errors)
                    .map(|(n, e)| vec![n.to_string(), num(*e)])
                    .collect::<Vec<_>>(),
            )?,
        ];
        let results = json!({ "seeds": per_seed, "single_mode_errors": errors, "single_mode_orders": orders });
        Manifest::new(Self::NAME, self, results, checks, outputs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_overlays_cli_on_file() {
        let cli = TraceBlowup {
            alpha: Some(0.4),
            ..Default::default()
        };
        let p = merge_params(Some("experiment = \"trace-blowup\"\nalpha = 0.3\nn-max = 20\n"), &cli)
            .unwrap();
        assert_eq!(p.alpha, Some(0.4));
        assert_eq!(p.n_max, Some(20));
    }

    #[test]
    fn unknown_keys_rejected() {
        let err = merge_params(Some("alpha = 0.3\nbogus = 1\n"), &TraceBlowup::default());
        assert!(matches!(err, Err(Error::Config(_))));
        let err = merge_params(Some("experiment = \"schauder-check\"\n"), &TraceBlowup::default());
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn validation_errors_are_config_errors() {
        let bad = TraceBlowup {
            alpha: Some(1.5),
            ..Default::default()
        };
        assert!(matches!(bad.resolved().validate(), Err(Error::Config(_))));
        let bad = MollifyReport {
            epsilons: Some(vec![0.3, 0.1, 0.05]),
            ..Default::default()
        };
        assert!(matches!(bad.resolved().validate(), Err(Error::Config(_))));
        let bad = TraceBlowup {
            location: Some("interior".into()),
            j: Some(2),
            m: Some(2),
            ..Default::default()
        };
        assert!(matches!(bad.resolved().validate(), Err(Error::Config(_))));
    }

    #[test]
    fn resolved_config_is_complete() {
        let r = PressureSolve::default().resolved();
        let v = serde_json::to_value(&r).unwrap();
        assert!(v.as_object().unwrap().values().all(|x| !x.is_null()));
        assert_eq!(r.grids, Some(vec![64, 128, 256]));
    }
}
