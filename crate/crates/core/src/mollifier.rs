//! Divergence-free mollification on the channel.
//!
//! Pipeline: recover the stream function `ψ` (and the uniform flux, which
//! no wall-vanishing stream function can carry), reflect `ψ` oddly across
//! both walls, convolve with a radial bump, and rebuild
//! `u^ε = (D_y ψ^ε, −D_x ψ^ε) + (flux, 0)`.
//!
//! The odd reflection makes the mollified stream function vanish on the
//! walls exactly: each symmetric kernel pair `(d, −d)` straddling a wall
//! sums `ψ(d) − ψ(d) = 0` before weighting.

use std::io::Write;

use rayon::prelude::*;
use rustfft::num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ChannelField, ChannelGrid};
use crate::holder::holder_norm;
use crate::spectral::{derivative_factor, fft2, wavenumber};

pub const DEFAULT_MARGIN: f64 = 0.25;
const TANGENCY_TOLERANCE: f64 = 1e-8;

/// Radial profile `φ(r)`, supported in `r < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadialProfile {
    /// `exp(−1/(1 − r²))`.
    Bump,
    /// `(1 − r²)^power`.
    Polynomial { power: u32 },
}

impl RadialProfile {
    pub fn eval(&self, r: f64) -> f64 {
        if r >= 1.0 {
            return 0.0;
        }
        let t = 1.0 - r * r;
        match *self {
            RadialProfile::Bump => (-1.0 / t).exp(),
            RadialProfile::Polynomial { power } => t.powi(power as i32),
        }
    }

    /// `2π ∫₀¹ φ(r) r dr`.
    pub fn planar_mass(&self) -> f64 {
        2.0 * std::f64::consts::PI * adaptive_simpson(&|r| self.eval(r) * r, 0.0, 1.0, 1e-14, 40)
    }
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn step(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, depth)
}

/// `φ_ε(x) = ε^{−2} φ(|x|/ε) / mass`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mollifier {
    epsilon: f64,
    profile: RadialProfile,
    mass: f64,
}

impl Mollifier {
    pub fn new(epsilon: f64, profile: RadialProfile) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::InvalidParameter(format!("epsilon = {epsilon} must be positive")));
        }
        Ok(Self {
            epsilon,
            profile,
            mass: profile.planar_mass(),
        })
    }

    pub fn bump(epsilon: f64) -> Result<Self> {
        Self::new(epsilon, RadialProfile::Bump)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn profile(&self) -> RadialProfile {
        self.profile
    }

    /// Continuous kernel value at distance `r`.
    pub fn kernel(&self, r: f64) -> f64 {
        self.profile.eval(r / self.epsilon) / (self.mass * self.epsilon * self.epsilon)
    }

    /// Kernel rows `(dj, [(di, w)])` on the grid, `dj ≥ 0`, normalised to unit discrete mass
    /// counting the reflected rows `−dj`.
    fn stencil(&self, grid: &ChannelGrid) -> Vec<(usize, Vec<(isize, f64)>)> {
        let (hx, hy) = (grid.hx(), grid.hy());
        let rx = (self.epsilon / hx).floor() as isize;
        let ry = (self.epsilon / hy).floor() as usize;
        let mut rows = Vec::new();
        let mut total = 0.0;
        for dj in 0..=ry {
            let mut row = Vec::new();
            for di in -rx..=rx {
                let r = ((di as f64 * hx).powi(2) + (dj as f64 * hy).powi(2)).sqrt();
                let w = self.profile.eval(r / self.epsilon);
                if w > 0.0 {
                    row.push((di, w));
                    total += if dj == 0 { w } else { 2.0 * w };
                }
            }
            if !row.is_empty() {
                rows.push((dj, row));
            }
        }
        for (_, row) in rows.iter_mut() {
            for (_, w) in row.iter_mut() {
                *w /= total;
            }
        }
        rows
    }
}

/// Recovers `ψ` with `u = (∂_y ψ, −∂_x ψ) + (flux, 0)` and `ψ = 0` on both walls.
///
/// `u₁` is reflected evenly and `u₂` oddly across the walls, giving a
/// field periodic in `y` with period `2·y_extent`; `−Δψ = ∂_x u₂ − ∂_y u₁`
/// is then inverted mode by mode. The mean of the reflected `u₁` is the flux.
pub fn stream_from_velocity(u: &ChannelField) -> Result<(ChannelField, f64)> {
    if u.n_components() != 2 {
        return Err(Error::ShapeMismatch("stream recovery needs a vector field".into()));
    }
    let g = *u.grid();
    let wall = wall_normal_max(u);
    let scale = u.max_abs().max(1.0);
    if wall > TANGENCY_TOLERANCE * scale {
        return Err(Error::NonTangential(wall));
    }
    let (nx, ny) = (g.nx(), g.ny());
    let ly = 2 * (ny - 1);
    let mut a = vec![Complex64::new(0.0, 0.0); ly * nx];
    let mut b = vec![Complex64::new(0.0, 0.0); ly * nx];
    for r in 0..ly {
        let (j, sign) = if r < ny { (r, 1.0) } else { (ly - r, -1.0) };
        for i in 0..nx {
            a[r * nx + i] = Complex64::new(u.get(0, i, j), 0.0);
            b[r * nx + i] = Complex64::new(sign * u.get(1, i, j), 0.0);
        }
    }
    fft2(&mut a, ly, nx, false);
    fft2(&mut b, ly, nx, false);
    let flux = a[0].re / (ly * nx) as f64;
    let y_period = 2.0 * g.y_extent();
    let mut psi_hat = vec![Complex64::new(0.0, 0.0); ly * nx];
    for r in 0..ly {
        let ky = wavenumber(r, ly, y_period);
        let dy = derivative_factor(r, ly, y_period);
        for m in 0..nx {
            let kx = wavenumber(m, nx, g.x_period());
            let k2 = kx * kx + ky * ky;
            if k2 == 0.0 {
                continue;
            }
            let dx = derivative_factor(m, nx, g.x_period());
            let omega = dx * b[r * nx + m] - dy * a[r * nx + m];
            psi_hat[r * nx + m] = omega / k2;
        }
    }
    fft2(&mut psi_hat, ly, nx, true);
    let mut values = vec![0.0; g.len()];
    for j in 1..ny - 1 {
        for i in 0..nx {
            values[g.index(i, j)] = psi_hat[j * nx + i].re;
        }
    }
    Ok((ChannelField::scalar(g, values)?, flux))
}

fn wall_normal_max(u: &ChannelField) -> f64 {
    let ny = u.grid().ny();
    u.row(1, 0)
        .iter()
        .chain(u.row(1, ny - 1))
        .fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// `ψ` on `y ∈ [−margin, 1 + margin]`, reflected oddly about both walls.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtendedField {
    grid: ChannelGrid,
    margin_rows: usize,
    /// Rows `−margin_rows ..= ny − 1 + margin_rows`, each `nx` long.
    rows: Vec<Vec<f64>>,
}

impl ExtendedField {
    pub fn grid(&self) -> &ChannelGrid {
        &self.grid
    }

    pub fn margin_rows(&self) -> usize {
        self.margin_rows
    }

    /// Extension margin as a length.
    pub fn margin(&self) -> f64 {
        self.margin_rows as f64 * self.grid.hy()
    }

    /// Row at signed grid index `j ∈ [−margin_rows, ny − 1 + margin_rows]`.
    pub fn row(&self, j: isize) -> &[f64] {
        &self.rows[(j + self.margin_rows as isize) as usize]
    }

    pub fn value(&self, i: usize, j: isize) -> f64 {
        self.row(j)[i]
    }
}

/// Odd reflection `ψ̃(−y) = −ψ(y)`, `ψ̃(1 + t) = −ψ(1 − t)` over at least `margin`.
pub fn odd_extend(psi: &ChannelField, margin: f64) -> Result<ExtendedField> {
    if !psi.is_scalar() {
        return Err(Error::ShapeMismatch("odd extension needs a scalar field".into()));
    }
    let g = *psi.grid();
    let ny = g.ny();
    let scale = psi.max_abs().max(1.0);
    let wall = psi
        .row(0, 0)
        .iter()
        .chain(psi.row(0, ny - 1))
        .fold(0.0_f64, |m, v| m.max(v.abs()));
    if wall > 1e-12 * scale {
        return Err(Error::NonzeroWallValues(wall));
    }
    let margin_rows = (margin / g.hy() - 1e-9).ceil().max(0.0) as usize;
    if margin_rows > ny - 1 {
        return Err(Error::InvalidParameter(format!(
            "margin {margin} exceeds the channel height"
        )));
    }
    let zero = vec![0.0; g.nx()];
    let interior = |j: usize| -> Vec<f64> {
        if j == 0 || j == ny - 1 {
            zero.clone()
        } else {
            psi.row(0, j).to_vec()
        }
    };
    let neg = |v: Vec<f64>| v.into_iter().map(|x| -x).collect::<Vec<f64>>();
    let mut rows = Vec::with_capacity(ny + 2 * margin_rows);
    for k in (1..=margin_rows).rev() {
        rows.push(neg(interior(k)));
    }
    for j in 0..ny {
        rows.push(interior(j));
    }
    for k in 1..=margin_rows {
        rows.push(neg(interior(ny - 1 - k)));
    }
    Ok(ExtendedField {
        grid: g,
        margin_rows,
        rows,
    })
}

/// Discrete convolution `φ_ε ∗ ψ̃`, periodic in `x`, restricted to the channel.
pub fn mollify_stream(ext: &ExtendedField, m: &Mollifier) -> Result<ChannelField> {
    if m.epsilon() >= ext.margin() {
        return Err(Error::ExtensionTooSmall {
            epsilon: m.epsilon(),
            margin: ext.margin(),
        });
    }
    let g = *ext.grid();
    let (nx, ny) = (g.nx(), g.ny());
    let stencil = m.stencil(&g);
    let out_rows: Vec<Vec<f64>> = (0..ny)
        .into_par_iter()
        .map(|j| {
            let j = j as isize;
            let mut acc = vec![0.0; nx];
            let mut pair = vec![0.0; nx];
            for (dj, row) in &stencil {
                let dj = *dj as isize;
                if dj == 0 {
                    pair.copy_from_slice(ext.row(j));
                } else {
                    let (up, down) = (ext.row(j + dj), ext.row(j - dj));
                    for ((p, a), b) in pair.iter_mut().zip(up).zip(down) {
                        *p = a + b;
                    }
                }
                for &(di, w) in row {
                    let shift = di.rem_euclid(nx as isize) as usize;
                    let (head, tail) = acc.split_at_mut(nx - shift);
                    for (a, p) in head.iter_mut().zip(&pair[shift..]) {
                        *a += w * p;
                    }
                    for (a, p) in tail.iter_mut().zip(&pair[..shift]) {
                        *a += w * p;
                    }
                }
            }
            acc
        })
        .collect();
    ChannelField::scalar(g, out_rows.concat())
}

/// `u = (D_y ψ + flux, −D_x ψ)` with centered differences; `D_y` uses the
/// odd ghost row at each wall, so `u₂` vanishes identically there.
pub fn velocity_from_stream(psi: &ChannelField, flux: f64) -> Result<ChannelField> {
    if !psi.is_scalar() {
        return Err(Error::ShapeMismatch("velocity recovery needs a scalar stream".into()));
    }
    let g = *psi.grid();
    let (nx, ny) = (g.nx(), g.ny());
    let (ix, iy) = (0.5 / g.hx(), 0.5 / g.hy());
    let mut u1 = vec![0.0; g.len()];
    let mut u2 = vec![0.0; g.len()];
    for j in 0..ny {
        for i in 0..nx {
            let up = if j + 1 < ny { psi.get(0, i, j + 1) } else { -psi.get(0, i, ny - 2) };
            let down = if j > 0 { psi.get(0, i, j - 1) } else { -psi.get(0, i, 1) };
            u1[g.index(i, j)] = (up - down) * iy + flux;
            let (ip, im) = ((i + 1) % nx, (i + nx - 1) % nx);
            u2[g.index(i, j)] = -(psi.get(0, ip, j) - psi.get(0, im, j)) * ix;
        }
    }
    ChannelField::vector(g, u1, u2)
}

/// Max over all nodes of `|D_x u₁ + D_y u₂|`, centered, with odd ghosts for `u₂` at the walls.
pub fn discrete_divergence(u: &ChannelField) -> Result<f64> {
    if u.n_components() != 2 {
        return Err(Error::ShapeMismatch("divergence needs a vector field".into()));
    }
    let g = u.grid();
    let (nx, ny) = (g.nx(), g.ny());
    let (ix, iy) = (0.5 / g.hx(), 0.5 / g.hy());
    let mut worst = 0.0_f64;
    for j in 0..ny {
        for i in 0..nx {
            let (ip, im) = ((i + 1) % nx, (i + nx - 1) % nx);
            let up = if j + 1 < ny { u.get(1, i, j + 1) } else { -u.get(1, i, ny - 2) };
            let down = if j > 0 { u.get(1, i, j - 1) } else { -u.get(1, i, 1) };
            let d = (u.get(0, ip, j) - u.get(0, im, j)) * ix + (up - down) * iy;
            worst = worst.max(d.abs());
        }
    }
    Ok(worst)
}

/// Errors of `u^ε − u_h` in one Hölder norm across the sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BetaErrors {
    pub beta: f64,
    pub errors: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MollificationReport {
    pub alpha: f64,
    pub epsilons: Vec<f64>,
    pub flux: f64,
    /// `‖u^ε − u_h‖_{C⁰}`.
    pub c0_errors: Vec<f64>,
    /// `‖u^ε − u_h‖_{C^β}` (sup plus seminorm) per β.
    pub c_beta_errors: Vec<BetaErrors>,
    /// `‖u^ε‖_{C^α} / ‖u_h‖_{C^α}`.
    pub norm_ratios: Vec<f64>,
    /// `max |u₂^ε|` on the walls.
    pub wall_residuals: Vec<f64>,
    pub divergence_residuals: Vec<f64>,
    /// `max |ψ^ε|` on the walls.
    pub stream_wall_residuals: Vec<f64>,
}

impl MollificationReport {
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["epsilon", "beta", "error", "ratio"])?;
        for (k, eps) in self.epsilons.iter().enumerate() {
            for be in &self.c_beta_errors {
                w.write_record([
                    format!("{eps:.16e}"),
                    format!("{:.16e}", be.beta),
                    format!("{:.16e}", be.errors[k]),
                    format!("{:.16e}", self.norm_ratios[k]),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Mollifies `u` at each `ε` and measures convergence towards the unmollified
/// reconstruction `u_h = velocity_from_stream(ψ, flux)`.
pub fn mollification_report(
    u: &ChannelField,
    alpha: f64,
    betas: &[f64],
    epsilons: &[f64],
    profile: RadialProfile,
    margin: f64,
) -> Result<MollificationReport> {
    if epsilons.len() < 3 {
        return Err(Error::InvalidParameter(format!(
            "need at least 3 epsilons, got {}",
            epsilons.len()
        )));
    }
    let (psi, flux) = stream_from_velocity(u)?;
    let u_h = velocity_from_stream(&psi, flux)?;
    let ext = odd_extend(&psi, margin)?;
    let base_norm = holder_norm(&u_h, alpha)?;
    let mut report = MollificationReport {
        alpha,
        epsilons: epsilons.to_vec(),
        flux,
        c0_errors: Vec::new(),
        c_beta_errors: betas
            .iter()
            .map(|&beta| BetaErrors {
                beta,
                errors: Vec::new(),
            })
            .collect(),
        norm_ratios: Vec::new(),
        wall_residuals: Vec::new(),
        divergence_residuals: Vec::new(),
        stream_wall_residuals: Vec::new(),
    };
    let ny = u.grid().ny();
    for &eps in epsilons {
        let m = Mollifier::new(eps, profile)?;
        let psi_eps = mollify_stream(&ext, &m)?;
        let u_eps = velocity_from_stream(&psi_eps, flux)?;
        let diff = u_eps.zip_with(&u_h, |a, b| a - b)?;
        report.c0_errors.push(diff.max_abs());
        for be in report.c_beta_errors.iter_mut() {
            be.errors.push(holder_norm(&diff, be.beta)?);
        }
        report.norm_ratios.push(if base_norm > 0.0 {
            holder_norm(&u_eps, alpha)? / base_norm
        } else {
            0.0
        });
        report.wall_residuals.push(wall_normal_max(&u_eps));
        report.divergence_residuals.push(discrete_divergence(&u_eps)?);
        report.stream_wall_residuals.push(
            psi_eps
                .row(0, 0)
                .iter()
                .chain(psi_eps.row(0, ny - 1))
                .fold(0.0_f64, |m, v| m.max(v.abs())),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weierstrass::WeierstrassParams;

    #[test]
    fn profile_mass() {
        let m = Mollifier::bump(0.1).unwrap();
        // Riemann sum of the continuous kernel on a fine lattice.
        let h = 0.002;
        let n = (0.1 / h) as i32 + 1;
        let mut total = 0.0;
        for i in -n..=n {
            for j in -n..=n {
                let r = ((i as f64 * h).powi(2) + (j as f64 * h).powi(2)).sqrt();
                total += m.kernel(r) * h * h;
            }
        }
        assert!((total - 1.0).abs() < 1e-8, "{total}");
        let poly = RadialProfile::Polynomial { power: 2 };
        // 2π ∫ (1 − r²)² r dr = π/3.
        assert!((poly.planar_mass() - std::f64::consts::PI / 3.0).abs() < 1e-13);
    }

    #[test]
    fn stream_of_weierstrass_flow() {
        let p = WeierstrassParams::new(0.5, 6).unwrap();
        let g = ChannelGrid::square(256).unwrap();
        let (psi, flux) = stream_from_velocity(&p.velocity_field(&g)).unwrap();
        let exact = p.stream_field(&g);
        let err = psi.zip_with(&exact, |a, b| a - b).unwrap().max_abs();
        assert!(err < 1e-13, "{err}");
        assert!(flux.abs() < 1e-15);
    }

    #[test]
    fn uniform_flow_is_pure_flux() {
        let g = ChannelGrid::square(32).unwrap();
        let u = ChannelField::from_fn2(g, |_, _| (1.0, 0.0));
        let (psi, flux) = stream_from_velocity(&u).unwrap();
        assert!(psi.max_abs() < 1e-15);
        assert!((flux - 1.0).abs() < 1e-15);
        let back = velocity_from_stream(&psi, flux).unwrap();
        assert_eq!(discrete_divergence(&back).unwrap(), 0.0);
        let zero = ChannelField::zeros(g, 2);
        let (psi, flux) = stream_from_velocity(&zero).unwrap();
        assert_eq!(psi.max_abs(), 0.0);
        assert_eq!(flux, 0.0);
    }

    #[test]
    fn non_tangential_rejected() {
        let g = ChannelGrid::square(16).unwrap();
        let u = ChannelField::from_fn2(g, |_, _| (0.0, 1.0));
        assert!(matches!(stream_from_velocity(&u), Err(Error::NonTangential(_))));
    }

    #[test]
    fn odd_extension_formulas() {
        let g = ChannelGrid::square(16).unwrap();
        let psi = ChannelField::from_fn(g, |_, y| y * (1.0 - y));
        let ext = odd_extend(&psi, 0.25).unwrap();
        assert_eq!(ext.margin_rows(), 2);
        for k in 1..=2isize {
            let y = k as f64 * g.hy();
            assert!((ext.value(3, -k) + y * (1.0 - y)).abs() < 1e-16);
            let neg = -y;
            assert!((ext.value(3, -k) - neg * (1.0 + neg)).abs() < 1e-16);
            assert_eq!(ext.value(3, 8 + k), -ext.value(3, 8 - k));
        }
        let sine = ChannelField::from_fn(g, |_, y| crate::trig::sinpi(y));
        let ext = odd_extend(&sine, 0.25).unwrap();
        for k in -2..=10isize {
            let y = k as f64 * g.hy();
            assert!((ext.value(0, k) - crate::trig::sinpi(y)).abs() < 1e-15);
        }
        let bad = ChannelField::from_fn(g, |_, y| 1.0 + y);
        assert!(matches!(odd_extend(&bad, 0.25), Err(Error::NonzeroWallValues(_))));
    }

    #[test]
    fn mollified_stream_vanishes_on_walls() {
        let p = WeierstrassParams::new(0.5, 8).unwrap();
        let g = ChannelGrid::square(128).unwrap();
        let (psi, _) = stream_from_velocity(&p.velocity_field(&g)).unwrap();
        let ext = odd_extend(&psi, DEFAULT_MARGIN).unwrap();
        let m = Mollifier::bump(0.1).unwrap();
        let out = mollify_stream(&ext, &m).unwrap();
        assert!(out.row(0, 0).iter().all(|&v| v == 0.0));
        assert!(out.row(0, g.ny() - 1).iter().all(|&v| v == 0.0));
        let u = velocity_from_stream(&out, 0.0).unwrap();
        assert!(u.row(1, 0).iter().all(|&v| v == 0.0));
        assert!(discrete_divergence(&u).unwrap() < 1e-12);
        assert!(matches!(
            mollify_stream(&ext, &Mollifier::bump(0.3).unwrap()),
            Err(Error::ExtensionTooSmall { .. })
        ));
        let zero = odd_extend(&ChannelField::zeros(g, 1), 0.25).unwrap();
        assert_eq!(mollify_stream(&zero, &m).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn smooth_mode_error_is_second_order() {
        let p = WeierstrassParams::new(0.5, 0).unwrap();
        let g = ChannelGrid::square(256).unwrap();
        let u = p.velocity_field(&g);
        let r = mollification_report(&u, 0.5, &[0.25], &[0.2, 0.1, 0.05], RadialProfile::Bump, 0.25)
            .unwrap();
        let slope1 = (r.c0_errors[0] / r.c0_errors[1]).log2();
        let slope2 = (r.c0_errors[1] / r.c0_errors[2]).log2();
        assert!((slope1 - 2.0).abs() < 0.15, "{:?}", r.c0_errors);
        assert!((slope2 - 2.0).abs() < 0.15, "{:?}", r.c0_errors);
    }

    #[test]
    fn uniform_flow_report_is_exact() {
        let g = ChannelGrid::square(64).unwrap();
        let u = ChannelField::from_fn2(g, |_, _| (1.0, 0.0));
        let r = mollification_report(&u, 0.5, &[0.25], &[0.2, 0.1, 0.05], RadialProfile::Bump, 0.25)
            .unwrap();
        assert!(r.c0_errors.iter().all(|&e| e == 0.0));
        assert!(r.c_beta_errors[0].errors.iter().all(|&e| e == 0.0));
    }
}
