//! Modified pressure on the channel.
//!
//! `P = p + φ(u·n)²` solves
//!
//! ```text
//! −ΔP = ∂ᵢ∂ⱼ(uᵢuⱼ) − Δ(φ u₂²),   ∂_y P = 0 on y = 0, 1,
//! ```
//!
//! with the mean of `P` equal to the mean of `φ u₂²`. The walls are flat, so
//! `(u⊗u):∇n` vanishes and the boundary condition is homogeneous Neumann.
//!
//! The right-hand side is assembled as
//! `∂_xx(u₁² − φu₂²) + 2∂_x∂_y(u₁u₂) + ∂_yy((1 − φ)u₂²)`: near the walls,
//! where `φ = 1`, the `u₂²` contribution cancels before any differencing.
//! Discretisation is spectral in `x` and second-order finite differences in
//! `y` with ghost-point Neumann closure.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ChannelField, ChannelGrid};
use crate::holder::holder_norm;
use crate::spectral::{derivative_factor, solve_tridiagonal, wavenumber, Transform};
use crate::trace::TestFunction;
use crate::trig::{cospi, sinpi};

pub const DEFAULT_CUTOFF_DELTA: f64 = 0.2;
pub const COMPATIBILITY_TOLERANCE: f64 = 1e-6;
const TANGENCY_TOLERANCE: f64 = 1e-8;

/// Wall cutoff `φ(d)` of the distance `d` to the nearest wall: 1 for
/// `d ≤ δ`, 0 for `d ≥ 2δ`, with a septic smoothstep (C³) in between.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffProfile {
    delta: f64,
}

impl CutoffProfile {
    /// `δ ∈ (0, 1/4]`, so the two wall layers never overlap and `φ` is smooth across the midline.
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta <= 0.25) {
            return Err(Error::InvalidParameter(format!("cutoff delta = {delta} not in (0, 1/4]")));
        }
        Ok(Self { delta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// `(φ, φ', φ'')` as functions of `y` on `[0, 1]`.
    pub fn eval(&self, y: f64) -> (f64, f64, f64) {
        let (d, sign) = if y <= 0.5 { (y, 1.0) } else { (1.0 - y, -1.0) };
        let t = (d - self.delta) / self.delta;
        if t <= 0.0 {
            return (1.0, 0.0, 0.0);
        }
        if t >= 1.0 {
            return (0.0, 0.0, 0.0);
        }
        let t2 = t * t;
        let t3 = t2 * t;
        let s = t3 * t * (35.0 - 84.0 * t + 70.0 * t2 - 20.0 * t3);
        let ds = 140.0 * t3 * (1.0 - t).powi(3);
        let dds = 420.0 * t2 * (1.0 - t).powi(2) * (1.0 - 2.0 * t);
        let inv = 1.0 / self.delta;
        (1.0 - s, -sign * ds * inv, -dds * inv * inv)
    }

    pub fn value(&self, y: f64) -> f64 {
        self.eval(y).0
    }

    pub fn field(&self, grid: &ChannelGrid) -> ChannelField {
        ChannelField::from_fn(*grid, |_, y| self.value(y))
    }
}

impl Default for CutoffProfile {
    fn default() -> Self {
        Self {
            delta: DEFAULT_CUTOFF_DELTA,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PressureSolution {
    /// Modified pressure `P`.
    pub modified: ChannelField,
    /// Raw pressure `p = P − φ u₂²`.
    pub raw: ChannelField,
    /// `|mean(P) − mean(φ u₂²)|`.
    pub mean_constraint_residual: f64,
    /// Max over wall nodes of the one-sided second-order `|∂_y P|`.
    pub neumann_residual: f64,
    /// Max discrete residual relative to the largest assembled right-hand side.
    pub pde_residual: f64,
    /// Mode-0 compatibility defect removed by projection.
    pub compatibility_defect: f64,
}

/// Diagnostics summary; `ratio` is filled by [`estimate_ratio`] when requested.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PressureDiagnostics {
    pub pde_residual: f64,
    pub neumann_residual: f64,
    pub mean_residual: f64,
    pub ratio: Option<f64>,
    pub defect: f64,
}

impl PressureSolution {
    pub fn diagnostics(&self, ratio: Option<f64>) -> PressureDiagnostics {
        PressureDiagnostics {
            pde_residual: self.pde_residual,
            neumann_residual: self.neumann_residual,
            mean_residual: self.mean_constraint_residual,
            ratio,
            defect: self.compatibility_defect,
        }
    }
}

/// Components `(u₁², u₁u₂, u₂²)`.
pub fn stress_tensor(u: &ChannelField) -> Result<ChannelField> {
    if u.n_components() != 2 {
        return Err(Error::ShapeMismatch("stress tensor needs a vector field".into()));
    }
    let (a, b) = (u.component(0), u.component(1));
    ChannelField::new(
        *u.grid(),
        vec![
            a.iter().map(|v| v * v).collect(),
            a.iter().zip(b).map(|(v, w)| v * w).collect(),
            b.iter().map(|w| w * w).collect(),
        ],
    )
}

/// Tridiagonal bands of `−D_yy + κ²` with ghost-point Neumann rows at both walls.
fn neumann_bands(ny: usize, h: f64, kappa2: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let ih2 = 1.0 / (h * h);
    let mut lower = vec![-ih2; ny];
    let mut upper = vec![-ih2; ny];
    let diag = vec![2.0 * ih2 + kappa2; ny];
    upper[0] = -2.0 * ih2;
    lower[ny - 1] = -2.0 * ih2;
    lower[0] = 0.0;
    upper[ny - 1] = 0.0;
    (lower, diag, upper)
}

fn apply_bands(bands: &(Vec<f64>, Vec<f64>, Vec<f64>), x: &[Complex64]) -> Vec<Complex64> {
    let (lower, diag, upper) = bands;
    let n = x.len();
    (0..n)
        .map(|k| {
            let mut v = x[k] * diag[k];
            if k > 0 {
                v += x[k - 1] * lower[k];
            }
            if k + 1 < n {
                v += x[k + 1] * upper[k];
            }
            v
        })
        .collect()
}

/// Row-wise forward transform: `out[j][m]`.
fn rows_forward(tr: &Transform, values: &[f64], nx: usize) -> Vec<Vec<Complex64>> {
    values.chunks(nx).map(|row| tr.forward_real(row)).collect()
}

/// Centered `D_y` with a reflected ghost (`parity = −1` odd, `+1` even) at each wall.
fn d_y(col: &[Complex64], j: usize, h: f64, parity: f64) -> Complex64 {
    let n = col.len();
    let up = if j + 1 < n { col[j + 1] } else { col[n - 2] * parity };
    let down = if j > 0 { col[j - 1] } else { col[1] * parity };
    (up - down) / (2.0 * h)
}

fn d_yy(col: &[Complex64], j: usize, h: f64) -> Complex64 {
    let n = col.len();
    let up = if j + 1 < n { col[j + 1] } else { col[n - 2] };
    let down = if j > 0 { col[j - 1] } else { col[1] };
    (up - col[j] * 2.0 + down) / (h * h)
}

fn check_tangential(u: &ChannelField) -> Result<()> {
    let ny = u.grid().ny();
    let wall = u
        .row(1, 0)
        .iter()
        .chain(u.row(1, ny - 1))
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    if wall > TANGENCY_TOLERANCE * u.max_abs().max(1.0) {
        return Err(Error::NonTangential(wall));
    }
    Ok(())
}

/// Solves for the modified pressure `P` and recovers `p`.
pub fn solve_modified_pressure(u: &ChannelField, phi: &CutoffProfile) -> Result<PressureSolution> {
    if u.n_components() != 2 {
        return Err(Error::ShapeMismatch("pressure solve needs a vector field".into()));
    }
    check_tangential(u)?;
    let g = *u.grid();
    let (nx, ny) = (g.nx(), g.ny());
    let h = g.hy();
    let tau = stress_tensor(u)?;
    let phi_y: Vec<f64> = (0..ny).map(|j| phi.value(g.y(j))).collect();
    let mut b = vec![0.0; g.len()];
    let mut c = vec![0.0; g.len()];
    let mut phi_a22 = vec![0.0; g.len()];
    for j in 0..ny {
        for i in 0..nx {
            let k = g.index(i, j);
            let a22 = tau.component(2)[k];
            phi_a22[k] = phi_y[j] * a22;
            b[k] = tau.component(0)[k] - phi_a22[k];
            c[k] = (1.0 - phi_y[j]) * a22;
        }
    }
    let tr = Transform::new(nx);
    let b_hat = rows_forward(&tr, &b, nx);
    let a12_hat = rows_forward(&tr, tau.component(1), nx);
    let c_hat = rows_forward(&tr, &c, nx);

    let column = |rows: &Vec<Vec<Complex64>>, m: usize| -> Vec<Complex64> {
        rows.iter().map(|r| r[m]).collect()
    };
    let modes: Vec<(Vec<Complex64>, f64)> = (0..nx)
        .into_par_iter()
        .map(|m| {
            let kappa = wavenumber(m, nx, g.x_period());
            let ik = derivative_factor(m, nx, g.x_period());
            let (bc, ac, cc) = (column(&b_hat, m), column(&a12_hat, m), column(&c_hat, m));
            let mut rhs: Vec<Complex64> = (0..ny)
                .map(|j| bc[j] * (-kappa * kappa) + ik * d_y(&ac, j, h, -1.0) * 2.0 + d_yy(&cc, j, h))
                .collect();
            let mut defect = 0.0;
            if m == 0 {
                let weights: Vec<f64> = (0..ny)
                    .map(|j| if j == 0 || j == ny - 1 { 0.5 } else { 1.0 })
                    .collect();
                let total: f64 = weights.iter().sum();
                let mean = rhs.iter().zip(&weights).map(|(r, w)| r * *w).sum::<Complex64>() / total;
                defect = mean.norm() / nx as f64;
                for r in rhs.iter_mut() {
                    *r -= mean;
                }
            }
            (rhs, defect)
        })
        .collect();

    let defect = modes[0].1;
    let rhs_scale = modes
        .iter()
        .flat_map(|(r, _)| r.iter())
        .fold(0.0_f64, |acc, v| acc.max(v.norm()));
    if defect > COMPATIBILITY_TOLERANCE * rhs_scale.max(1.0) / nx as f64 {
        return Err(Error::CompatibilityDefect(defect));
    }

    let solved: Vec<(Vec<Complex64>, f64)> = modes
        .into_par_iter()
        .enumerate()
        .map(|(m, (rhs, _))| -> Result<(Vec<Complex64>, f64)> {
            let kappa = wavenumber(m, nx, g.x_period());
            let bands = neumann_bands(ny, h, kappa * kappa);
            let mut sol = rhs.clone();
            if m == 0 {
                // The Neumann problem fixes P̂₀ up to a constant: pin the first node.
                let (mut lower, mut diag, mut upper) = bands.clone();
                lower[0] = 0.0;
                upper[0] = 0.0;
                diag[0] = 2.0 / (h * h);
                sol[0] = Complex64::new(0.0, 0.0);
                solve_tridiagonal(&lower, &diag, &upper, &mut sol)?;
            } else {
                solve_tridiagonal(&bands.0, &bands.1, &bands.2, &mut sol)?;
            }
            let applied = apply_bands(&bands, &sol);
            let resid = applied
                .iter()
                .zip(&rhs)
                .fold(0.0_f64, |acc, (a, r)| acc.max((a - r).norm()));
            Ok((sol, resid))
        })
        .collect::<Result<_>>()?;

    let pde_residual =
        solved.iter().fold(0.0_f64, |acc, (_, r)| acc.max(*r)) / rhs_scale.max(f64::MIN_POSITIVE);
    let mut values = vec![0.0; g.len()];
    for j in 0..ny {
        let spectrum: Vec<Complex64> = solved.iter().map(|(s, _)| s[j]).collect();
        let row = tr.inverse_real(&spectrum);
        values[j * nx..(j + 1) * nx].copy_from_slice(&row);
    }
    let mut modified = ChannelField::scalar(g, values)?;
    let target = ChannelField::scalar(g, phi_a22.clone())?.mean(0);
    let shift = target - modified.mean(0);
    for v in modified.component_mut(0) {
        *v += shift;
    }
    let mean_constraint_residual = (modified.mean(0) - target).abs();
    let neumann_residual = wall_normal_derivative(&modified);
    let raw = recover_raw_pressure(&modified, u, phi)?;
    Ok(PressureSolution {
        modified,
        raw,
        mean_constraint_residual,
        neumann_residual,
        pde_residual,
        compatibility_defect: defect,
    })
}

/// Max over both walls of the one-sided second-order `|∂_y f|`.
pub fn wall_normal_derivative(f: &ChannelField) -> f64 {
    let g = f.grid();
    let (ny, h) = (g.ny(), g.hy());
    let mut worst = 0.0_f64;
    for i in 0..g.nx() {
        let bottom = (-3.0 * f.get(0, i, 0) + 4.0 * f.get(0, i, 1) - f.get(0, i, 2)) / (2.0 * h);
        let top = (3.0 * f.get(0, i, ny - 1) - 4.0 * f.get(0, i, ny - 2) + f.get(0, i, ny - 3))
            / (2.0 * h);
        worst = worst.max(bottom.abs()).max(top.abs());
    }
    worst
}

/// `p = P − φ u₂²`.
pub fn recover_raw_pressure(
    modified: &ChannelField,
    u: &ChannelField,
    phi: &CutoffProfile,
) -> Result<ChannelField> {
    if u.n_components() != 2 || !modified.is_scalar() {
        return Err(Error::ShapeMismatch("expected scalar P and vector u".into()));
    }
    if modified.grid() != u.grid() {
        return Err(Error::ShapeMismatch("P and u live on different grids".into()));
    }
    let g = *u.grid();
    let values = (0..g.ny())
        .flat_map(|j| {
            let w = phi.value(g.y(j));
            (0..g.nx()).map(move |i| (i, j, w))
        })
        .map(|(i, j, w)| {
            let u2 = u.get(1, i, j);
            modified.get(0, i, j) - w * u2 * u2
        })
        .collect();
    ChannelField::scalar(g, values)
}

/// `‖P‖_{C^α} / ‖u⊗u‖_{C^α}`.
pub fn estimate_ratio(sol: &PressureSolution, u: &ChannelField, alpha: f64) -> Result<f64> {
    let denom = holder_norm(&stress_tensor(u)?, alpha)?;
    if denom == 0.0 {
        return Err(Error::ZeroNorm);
    }
    Ok(holder_norm(&sol.modified, alpha)? / denom)
}

/// Pressure of the single cellular mode `u = (−sin πx cos πy, cos πx sin πy)`,
/// normalised to zero mean: `(cos 2πx + cos 2πy)/4`.
pub fn single_mode_pressure(x: f64, y: f64) -> f64 {
    0.25 * (cospi(2.0 * x) + cospi(2.0 * y))
}

/// `T(y_j) = ∫ f(x, y_j) θ(x) dx` on every grid row (periodic trapezoid rule).
pub fn tested_profile(f: &ChannelField, theta: &TestFunction) -> Result<Vec<f64>> {
    if !f.is_scalar() {
        return Err(Error::ShapeMismatch("traces need a scalar field".into()));
    }
    let g = f.grid();
    let weights: Vec<f64> = (0..g.nx()).map(|i| theta.eval(g.x(i)) * g.hx()).collect();
    Ok((0..g.ny())
        .map(|j| f.row(0, j).iter().zip(&weights).map(|(v, w)| v * w).sum())
        .collect())
}

fn grid_row(g: &ChannelGrid, y: f64) -> Result<usize> {
    if !(0.0..=g.y_extent()).contains(&y) {
        return Err(Error::InvalidParameter(format!("y = {y} outside the channel")));
    }
    g.row_of(y)
        .ok_or_else(|| Error::InvalidParameter(format!("y = {y} is not a grid line")))
}

/// `⟨∂_y f(·, y), θ⟩`: the tested profile differenced between adjacent grid
/// lines (forward, backward on the top wall).
pub fn weak_normal_trace(f: &ChannelField, theta: &TestFunction, y: f64) -> Result<f64> {
    let g = *f.grid();
    let j = grid_row(&g, y)?;
    let t = tested_profile(f, theta)?;
    let h = g.hy();
    Ok(if j + 1 < g.ny() {
        (t[j + 1] - t[j]) / h
    } else {
        (t[j] - t[j - 1]) / h
    })
}

/// `(T(y) − T(0)) / y`: the tested secant from the bottom wall.
pub fn secant_normal_trace(f: &ChannelField, theta: &TestFunction, y: f64) -> Result<f64> {
    let g = *f.grid();
    let j = grid_row(&g, y)?;
    if j == 0 {
        return Err(Error::InvalidParameter("secant trace needs y > 0".into()));
    }
    let t = tested_profile(f, theta)?;
    Ok((t[j] - t[0]) / g.y(j))
}

/// One separable term `amp · X(πm_x x) · Y(πm_y y)` with `X, Y ∈ {cos, sin}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrigTerm {
    pub amplitude: f64,
    pub mx: u32,
    pub my: u32,
    pub x_cos: bool,
    pub y_cos: bool,
}

/// `d^order/dt^order` of `cos(πmt)` or `sin(πmt)`.
fn trig_derivative(is_cos: bool, m: u32, order: u32, t: f64) -> f64 {
    let arg = m as f64 * t + 0.5 * order as f64;
    let base = if is_cos { cospi(arg) } else { sinpi(arg) };
    (PI * m as f64).powi(order as i32) * base
}

impl TrigTerm {
    pub fn derivative(&self, ox: u32, oy: u32, x: f64, y: f64) -> f64 {
        self.amplitude
            * trig_derivative(self.x_cos, self.mx, ox, x)
            * trig_derivative(self.y_cos, self.my, oy, y)
    }
}

/// Symmetric 2×2 tensor field `(F₁₁, F₁₂, F₂₂)` of trigonometric polynomials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPolyField {
    pub f11: Vec<TrigTerm>,
    pub f12: Vec<TrigTerm>,
    pub f22: Vec<TrigTerm>,
}

impl TrigPolyField {
    pub fn zero() -> Self {
        Self {
            f11: Vec::new(),
            f12: Vec::new(),
            f22: Vec::new(),
        }
    }

    /// `F₁₁ = cos 2πx · sin πy`, with Dirichlet solution `v = (4/5) cos 2πx · sin πy`.
    pub fn single_mode() -> Self {
        Self {
            f11: vec![TrigTerm {
                amplitude: 1.0,
                mx: 2,
                my: 1,
                x_cos: true,
                y_cos: false,
            }],
            ..Self::zero()
        }
    }

    /// `terms` random terms per component, frequencies `0..=max_freq`, amplitudes in `[−1, 1]`.
    pub fn random(seed: u64, terms: usize, max_freq: u32) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || -> Vec<TrigTerm> {
            (0..terms)
                .map(|_| TrigTerm {
                    amplitude: rng.random_range(-1.0..=1.0),
                    mx: rng.random_range(0..=max_freq),
                    my: rng.random_range(0..=max_freq),
                    x_cos: rng.random_bool(0.5),
                    y_cos: rng.random_bool(0.5),
                })
                .collect()
        };
        let f11 = draw();
        let f12 = draw();
        let f22 = draw();
        Self { f11, f12, f22 }
    }

    pub fn is_zero(&self) -> bool {
        self.f11
            .iter()
            .chain(&self.f12)
            .chain(&self.f22)
            .all(|t| t.amplitude == 0.0)
    }

    fn sum(terms: &[TrigTerm], ox: u32, oy: u32, x: f64, y: f64) -> f64 {
        terms.iter().map(|t| t.derivative(ox, oy, x, y)).sum()
    }

    /// `∂ᵢ∂ⱼFᵢⱼ = ∂_xxF₁₁ + 2∂_x∂_yF₁₂ + ∂_yyF₂₂`.
    pub fn divergence2(&self, x: f64, y: f64) -> f64 {
        Self::sum(&self.f11, 2, 0, x, y)
            + 2.0 * Self::sum(&self.f12, 1, 1, x, y)
            + Self::sum(&self.f22, 0, 2, x, y)
    }

    /// Components `(F₁₁, F₁₂, F₂₂)` on the grid.
    pub fn field(&self, grid: &ChannelGrid) -> ChannelField {
        let comp = |terms: &[TrigTerm]| {
            ChannelField::from_fn(*grid, |x, y| Self::sum(terms, 0, 0, x, y))
                .component(0)
                .to_vec()
        };
        ChannelField::new(*grid, vec![comp(&self.f11), comp(&self.f12), comp(&self.f22)])
            .expect("three components of grid length")
    }
}

/// Solves `Δv = ∂ᵢ∂ⱼFᵢⱼ`, `v = 0` on both walls, periodic in `x`.
pub fn solve_dirichlet(f: &TrigPolyField, grid: &ChannelGrid) -> Result<ChannelField> {
    let g = *grid;
    let (nx, ny) = (g.nx(), g.ny());
    if ny < 3 {
        return Err(Error::InvalidGrid("Dirichlet solve needs an interior row".into()));
    }
    let h = g.hy();
    let rhs = ChannelField::from_fn(g, |x, y| f.divergence2(x, y));
    let tr = Transform::new(nx);
    let hat = rows_forward(&tr, rhs.values(), nx);
    let inner = ny - 2;
    let ih2 = 1.0 / (h * h);
    let solved: Vec<Vec<Complex64>> = (0..nx)
        .into_par_iter()
        .map(|m| -> Result<Vec<Complex64>> {
            let kappa = wavenumber(m, nx, g.x_period());
            let lower = vec![-ih2; inner];
            let upper = vec![-ih2; inner];
            let diag = vec![2.0 * ih2 + kappa * kappa; inner];
            let mut col: Vec<Complex64> = (1..ny - 1).map(|j| -hat[j][m]).collect();
            solve_tridiagonal(&lower, &diag, &upper, &mut col)?;
            Ok(col)
        })
        .collect::<Result<_>>()?;
    let mut values = vec![0.0; g.len()];
    for j in 1..ny - 1 {
        let spectrum: Vec<Complex64> = solved.iter().map(|c| c[j - 1]).collect();
        values[j * nx..(j + 1) * nx].copy_from_slice(&tr.inverse_real(&spectrum));
    }
    ChannelField::scalar(g, values)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchauderCheck {
    pub alpha: f64,
    pub resolutions: Vec<usize>,
    /// `‖v‖_{C^α} / ‖F‖_{C^α}` per resolution.
    pub ratios: Vec<f64>,
    /// Set when `F ≡ 0`; the ratios are then reported as 0.
    pub zero_data: bool,
}

impl SchauderCheck {
    /// `max/min` of the ratios; 1 for zero data.
    pub fn spread(&self) -> f64 {
        if self.zero_data {
            return 1.0;
        }
        let max = self.ratios.iter().cloned().fold(f64::MIN, f64::max);
        let min = self.ratios.iter().cloned().fold(f64::MAX, f64::min);
        max / min
    }
}

/// Dirichlet solve at each `nx` in `resolutions` (square grids) and the Hölder-norm ratio.
pub fn dirichlet_schauder_check(
    f: &TrigPolyField,
    alpha: f64,
    resolutions: &[usize],
) -> Result<SchauderCheck> {
    let zero_data = f.is_zero();
    let mut ratios = Vec::with_capacity(resolutions.len());
    for &n in resolutions {
        let grid = ChannelGrid::square(n)?;
        if zero_data {
            let v = solve_dirichlet(f, &grid)?;
            debug_assert_eq!(v.max_abs(), 0.0);
            ratios.push(0.0);
            continue;
        }
        let v = solve_dirichlet(f, &grid)?;
        let denom = holder_norm(&f.field(&grid), alpha)?;
        ratios.push(holder_norm(&v, alpha)? / denom);
    }
    Ok(SchauderCheck {
        alpha,
        resolutions: resolutions.to_vec(),
        ratios,
        zero_data,
    })
}
