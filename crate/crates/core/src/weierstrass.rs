//! The Weierstrass flow on the channel.
//!
//! ```text
//! u₁ = −Σ_{k=0}^{N} 2^{−αk} sin(2^k πx) cos(2^k πy)
//! u₂ =  Σ_{k=0}^{N} 2^{−αk} cos(2^k πx) sin(2^k πy)
//! ψ  = −(1/π) Σ_{k=0}^{N} 2^{−(α+1)k} sin(2^k πx) sin(2^k πy)
//! ```
//!
//! with `u = (∂_y ψ, −∂_x ψ)`. Every term is divergence free and `u₂`
//! vanishes on both walls term by term.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ChannelField, ChannelGrid};
use crate::trig::{cospi, pow2, sinpi};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeierstrassParams {
    alpha: f64,
    n_terms: u32,
}

impl WeierstrassParams {
    pub fn new(alpha: f64, n_terms: u32) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidParameter(format!("alpha = {alpha} not in (0, 1]")));
        }
        if n_terms > 60 {
            return Err(Error::InvalidParameter(format!(
                "n_terms = {n_terms} exceeds 60 (2^k π x loses all significance)"
            )));
        }
        Ok(Self { alpha, n_terms })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n_terms(&self) -> u32 {
        self.n_terms
    }

    /// `2^{−αk}`.
    #[inline]
    pub fn amplitude(&self, k: u32) -> f64 {
        (-self.alpha * k as f64).exp2()
    }

    pub fn eval_velocity(&self, x: f64, y: f64) -> (f64, f64) {
        let (mut u1, mut u2) = (0.0, 0.0);
        for k in 0..=self.n_terms {
            let t = pow2(k as i32);
            let c = self.amplitude(k);
            u1 -= c * sinpi(t * x) * cospi(t * y);
            u2 += c * cospi(t * x) * sinpi(t * y);
        }
        (u1, u2)
    }

    pub fn eval_stream(&self, x: f64, y: f64) -> f64 {
        let mut psi = 0.0;
        for k in 0..=self.n_terms {
            let t = pow2(k as i32);
            psi += self.amplitude(k) / t * sinpi(t * x) * sinpi(t * y);
        }
        -psi / PI
    }

    /// Uniform bound on `|u − u^N|` per component.
    pub fn truncation_error_bound(&self) -> f64 {
        geometric_tail(self.alpha, self.n_terms).expect("alpha validated at construction")
    }

    /// `Σ_{k=N+1}^{M} 2^{−αk}`: bound on `|u^M − u^N|` per component.
    pub fn tail_between(&self, m: u32) -> f64 {
        let (lo, hi) = if m > self.n_terms {
            (self.n_terms, m)
        } else {
            (m, self.n_terms)
        };
        ((lo + 1)..=hi).map(|k| self.amplitude(k)).sum()
    }

    /// Sums `Σ_k fx_k(x_i)[c] · fy_k(y_j)[c]` for each component `c`; the
    /// series is separable, so grid fills reduce to outer products.
    fn separable_fill<const C: usize>(
        &self,
        grid: &ChannelGrid,
        fx: impl Fn(u32, f64) -> [f64; C],
        fy: impl Fn(u32, f64) -> [f64; C],
    ) -> ChannelField {
        let (nx, ny) = (grid.nx(), grid.ny());
        let mut out = vec![vec![0.0; grid.len()]; C];
        for k in 0..=self.n_terms {
            let ax: Vec<[f64; C]> = (0..nx).map(|i| fx(k, grid.x(i))).collect();
            let by: Vec<[f64; C]> = (0..ny).map(|j| fy(k, grid.y(j))).collect();
            for (c, values) in out.iter_mut().enumerate() {
                for (row, b) in values.chunks_mut(nx).zip(&by) {
                    if b[c] == 0.0 {
                        continue;
                    }
                    for (v, a) in row.iter_mut().zip(&ax) {
                        *v += a[c] * b[c];
                    }
                }
            }
        }
        ChannelField::new(*grid, out).expect("shape is consistent")
    }

    pub fn velocity_field(&self, grid: &ChannelGrid) -> ChannelField {
        self.separable_fill(
            grid,
            |k, x| {
                let (t, c) = (pow2(k as i32), self.amplitude(k));
                [-c * sinpi(t * x), c * cospi(t * x)]
            },
            |k, y| {
                let t = pow2(k as i32);
                [cospi(t * y), sinpi(t * y)]
            },
        )
    }

    pub fn stream_field(&self, grid: &ChannelGrid) -> ChannelField {
        self.separable_fill(
            grid,
            |k, x| {
                let t = pow2(k as i32);
                [-self.amplitude(k) / t / PI * sinpi(t * x)]
            },
            |k, y| [sinpi(pow2(k as i32) * y)],
        )
    }

    /// Whether `grid` keeps the highest mode at four or more points per wavelength.
    pub fn resolved_by(&self, grid: &ChannelGrid) -> bool {
        let needed = 1u64 << (self.n_terms + 2).min(63);
        grid.nx() as u64 >= needed
    }

    /// Max over interior nodes of the centered-difference divergence of `u^N`.
    pub fn divergence_residual(&self, grid: &ChannelGrid) -> f64 {
        centered_divergence(&self.velocity_field(grid)).expect("two-component field")
    }
}

/// `Σ_{k>N} 2^{−αk} = 2^{−α(N+1)} / (1 − 2^{−α})`.
pub fn geometric_tail(alpha: f64, n_terms: u32) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha}: the geometric tail diverges"
        )));
    }
    Ok((-alpha * (n_terms as f64 + 1.0)).exp2() / (1.0 - (-alpha).exp2()))
}

/// Closed-form Hölder constant `2^{1−α}(1/(1−2^{−α}) + 2π/(2^{1−α}−1))` of the full flow.
pub fn holder_constant_bound(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} not in (0, 1)")));
    }
    let a = (1.0 - alpha).exp2();
    Ok(a * (1.0 / (1.0 - (-alpha).exp2()) + 2.0 * PI / (a - 1.0)))
}

/// Max over interior rows of `|D_x u₁ + D_y u₂|` with centered differences
/// (periodic in `x`).
pub fn centered_divergence(u: &ChannelField) -> Result<f64> {
    if u.n_components() != 2 {
        return Err(Error::ShapeMismatch("divergence needs a vector field".into()));
    }
    let g = u.grid();
    let (nx, ny) = (g.nx(), g.ny());
    let (ix, iy) = (0.5 / g.hx(), 0.5 / g.hy());
    let mut worst = 0.0_f64;
    for j in 1..ny - 1 {
        for i in 0..nx {
            let (ip, im) = ((i + 1) % nx, (i + nx - 1) % nx);
            let d = (u.get(0, ip, j) - u.get(0, im, j)) * ix
                + (u.get(1, i, j + 1) - u.get(1, i, j - 1)) * iy;
            worst = worst.max(d.abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wall_and_axis_values_are_exact() {
        let p = WeierstrassParams::new(0.37, 40).unwrap();
        for i in 0..50 {
            let x = i as f64 * 0.0413;
            assert_eq!(p.eval_velocity(x, 0.0).1, 0.0);
            assert_eq!(p.eval_velocity(x, 1.0).1, 0.0);
            assert_eq!(p.eval_velocity(0.0, x).0, 0.0);
            assert_eq!(p.eval_stream(x, 0.0), 0.0);
            assert_eq!(p.eval_stream(x, 1.0), 0.0);
        }
    }

    #[test]
    fn midline_value() {
        let p = WeierstrassParams::new(0.5, 30).unwrap();
        assert_eq!(p.eval_velocity(0.0, 0.5).1, 1.0);
        let p0 = WeierstrassParams::new(0.5, 0).unwrap();
        assert!((p0.eval_stream(0.5, 0.5) + 1.0 / PI).abs() < 1e-16);
    }

    #[test]
    fn tails() {
        let p = WeierstrassParams::new(1.0, 0).unwrap();
        assert!((p.truncation_error_bound() - 1.0).abs() < 1e-15);
        let p = WeierstrassParams::new(0.5, 40).unwrap();
        let t = p.truncation_error_bound();
        assert!((t - 2f64.powf(-20.5) / (1.0 - 2f64.powf(-0.5))).abs() < 1e-20);
        assert!((t - 2.30e-6).abs() < 0.01e-6);
        assert!(geometric_tail(0.0, 3).is_err());
    }

    #[test]
    fn holder_constant() {
        let c = holder_constant_bound(0.5).unwrap();
        let direct = 2f64.sqrt() * (1.0 / (1.0 - 0.5f64.sqrt()) + 2.0 * PI / (2f64.sqrt() - 1.0));
        assert!((c - direct).abs() < 1e-12);
        assert!((c - 26.28).abs() < 0.01);
        assert!(holder_constant_bound(1.0 - 1e-9).unwrap().is_finite());
        assert!(holder_constant_bound(0.0).is_err());
        assert!(holder_constant_bound(1.0).is_err());
    }

    #[test]
    fn grid_fill_matches_pointwise() {
        let p = WeierstrassParams::new(0.3, 8).unwrap();
        let g = ChannelGrid::channel(32, 13).unwrap();
        let u = p.velocity_field(&g);
        let psi = p.stream_field(&g);
        for j in 0..g.ny() {
            for i in 0..g.nx() {
                let (a, b) = p.eval_velocity(g.x(i), g.y(j));
                assert!((u.get(0, i, j) - a).abs() < 1e-14);
                assert!((u.get(1, i, j) - b).abs() < 1e-14);
                assert!((psi.get(0, i, j) - p.eval_stream(g.x(i), g.y(j))).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn single_mode_divergence() {
        let p = WeierstrassParams::new(0.5, 0).unwrap();
        let g = ChannelGrid::channel(256, 129).unwrap();
        assert!(p.divergence_residual(&g) <= 1e-3);
        let flow = ChannelField::from_fn2(g, |_, _| (1.0, 0.0));
        assert_eq!(centered_divergence(&flow).unwrap(), 0.0);
    }
}
