//! Hölder seminorm and modulus-of-continuity estimation on channel grids.
//!
//! Pairs are sampled along the two axes and the two diagonals at integer
//! node offsets. In `x` the offset is limited to half the period, beyond
//! which the periodic distance is shorter than the index distance suggests.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::ChannelField;

/// Result of a seminorm estimate or an exponent fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolderEstimate {
    pub alpha: f64,
    pub seminorm: f64,
    /// NaN when fewer than two scales were available.
    pub fitted_exponent: f64,
    pub fit_r2: f64,
    pub h_min: f64,
    pub h_max: f64,
}

/// Least-squares line `y ≈ slope·x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Result<LinearFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::DegenerateRegression(format!(
            "need at least two paired samples, got {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.iter().chain(ys).any(|v| !v.is_finite()) {
        return Err(Error::DegenerateRegression("non-finite sample".into()));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx <= 0.0 {
        return Err(Error::DegenerateRegression("abscissae have zero variance".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy > 0.0 {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(LinearFit {
        slope,
        intercept: my - slope * mx,
        r2,
    })
}

#[derive(Debug, Clone, Copy)]
struct Offset {
    ox: isize,
    oy: usize,
    sep: f64,
}

const DIRECTIONS: [(isize, usize); 4] = [(1, 0), (0, 1), (1, 1), (-1, 1)];

/// Offsets `s·d` for every sampled direction `d` and every `s` accepted by `keep`.
fn offsets(f: &ChannelField, keep: impl Fn(usize) -> bool, h_max: f64) -> Vec<Offset> {
    let g = f.grid();
    let (hx, hy) = (g.hx(), g.hy());
    let max_ox = g.nx() / 2;
    let max_oy = g.ny() - 1;
    let mut out = Vec::new();
    for &(dx, dy) in &DIRECTIONS {
        let mut s = 1usize;
        loop {
            let ox = dx * s as isize;
            let oy = dy * s;
            if ox.unsigned_abs() > max_ox || oy > max_oy {
                break;
            }
            let sep = ((ox as f64 * hx).powi(2) + (oy as f64 * hy).powi(2)).sqrt();
            if sep > h_max * (1.0 + 1e-12) {
                break;
            }
            if keep(s) {
                out.push(Offset { ox, oy, sep });
            }
            s += 1;
        }
    }
    out.sort_by(|a, b| a.sep.total_cmp(&b.sep));
    out
}

/// `max |f(p + o) − f(p)|` over nodes, all components.
fn max_diff(f: &ChannelField, o: Offset) -> f64 {
    let g = f.grid();
    let nx = g.nx();
    let shift = o.ox.rem_euclid(nx as isize) as usize;
    (0..f.n_components())
        .map(|c| {
            (0..g.ny() - o.oy)
                .into_par_iter()
                .map(|j| {
                    let a = f.row(c, j);
                    let b = f.row(c, j + o.oy);
                    let mut m = 0.0_f64;
                    for i in 0..nx {
                        let k = if i + shift >= nx { i + shift - nx } else { i + shift };
                        m = m.max((b[k] - a[i]).abs());
                    }
                    m
                })
                .reduce(|| 0.0, f64::max)
        })
        .fold(0.0, f64::max)
}

fn check_resolution(f: &ChannelField, h: f64) -> Result<()> {
    let resolution = f.grid().resolution();
    if !(h >= resolution * (1.0 - 1e-12)) {
        return Err(Error::BelowResolution { h, resolution });
    }
    Ok(())
}

/// Modulus of continuity at each `h` in `hs`, sharing a single pair scan.
pub fn modulus_profile(f: &ChannelField, hs: &[f64]) -> Result<Vec<f64>> {
    for &h in hs {
        check_resolution(f, h)?;
    }
    let h_top = hs.iter().copied().fold(0.0, f64::max);
    let offs = offsets(f, |_| true, h_top);
    let diffs: Vec<f64> = offs.iter().map(|&o| max_diff(f, o)).collect();
    Ok(hs
        .iter()
        .map(|&h| {
            offs.iter()
                .zip(&diffs)
                .take_while(|(o, _)| o.sep <= h * (1.0 + 1e-12))
                .fold(0.0_f64, |m, (_, &d)| m.max(d))
        })
        .collect())
}

/// `ω(h)`: the largest oscillation over sampled pairs with separation at most `h`.
pub fn modulus_of_continuity(f: &ChannelField, h: f64) -> Result<f64> {
    Ok(modulus_profile(f, &[h])?[0])
}

/// Dyadic-offset Hölder seminorm without the exponent fit.
pub fn holder_seminorm(f: &ChannelField, alpha: f64, h_min: f64, h_max: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} not in (0, 1]")));
    }
    check_resolution(f, h_min)?;
    let offs: Vec<Offset> = offsets(f, |s| s.is_power_of_two(), h_max)
        .into_iter()
        .filter(|o| o.sep >= h_min * (1.0 - 1e-12))
        .collect();
    if offs.is_empty() {
        return Err(Error::EmptyPairSet { h_min, h_max });
    }
    Ok(offs
        .iter()
        .map(|&o| max_diff(f, o) / o.sep.powf(alpha))
        .fold(0.0, f64::max))
}

/// Hölder seminorm over dyadic node offsets `s = 1, 2, 4, …` with separation
/// in `[h_min, h_max]`. The slope of `log ω` against `log h` over the dyadic
/// scales `h_max, h_max/2, … ≥ h_min` is reported alongside.
pub fn holder_quotient(
    f: &ChannelField,
    alpha: f64,
    h_min: f64,
    h_max: f64,
) -> Result<HolderEstimate> {
    let seminorm = holder_seminorm(f, alpha, h_min, h_max)?;
    let mut scales = Vec::new();
    let mut h = h_max;
    while h >= h_min * (1.0 - 1e-12) {
        scales.push(h);
        h *= 0.5;
    }
    let (fitted_exponent, fit_r2) = fit_modulus(f, &scales)
        .map(|fit| (fit.slope, fit.r2))
        .unwrap_or((f64::NAN, 0.0));
    Ok(HolderEstimate {
        alpha,
        seminorm,
        fitted_exponent,
        fit_r2,
        h_min,
        h_max,
    })
}

fn fit_modulus(f: &ChannelField, hs: &[f64]) -> Result<LinearFit> {
    let omega = modulus_profile(f, hs)?;
    if omega.iter().any(|&w| w <= 0.0) {
        return Err(Error::DegenerateRegression(
            "modulus of continuity vanishes at a sampled scale".into(),
        ));
    }
    let lx: Vec<f64> = hs.iter().map(|h| h.ln()).collect();
    let ly: Vec<f64> = omega.iter().map(|w| w.ln()).collect();
    linear_fit(&lx, &ly)
}

/// Fits the Hölder exponent as the slope of `log ω(h)` against `log h`.
///
/// The returned `alpha` is the fit clamped into `(0, 1]`, and `seminorm` is
/// the dyadic quotient at that exponent over the range of `h_list`.
pub fn estimate_holder_exponent(f: &ChannelField, h_list: &[f64]) -> Result<HolderEstimate> {
    if h_list.len() < 4 {
        return Err(Error::InvalidParameter(format!(
            "need at least 4 scales, got {}",
            h_list.len()
        )));
    }
    let fit = fit_modulus(f, h_list)?;
    let h_min = h_list.iter().copied().fold(f64::INFINITY, f64::min);
    let h_max = h_list.iter().copied().fold(0.0, f64::max);
    let alpha = fit.slope.clamp(1e-6, 1.0);
    let seminorm = holder_seminorm(f, alpha, h_min, h_max)?;
    Ok(HolderEstimate {
        alpha,
        seminorm,
        fitted_exponent: fit.slope,
        fit_r2: fit.r2,
        h_min,
        h_max,
    })
}

/// `sup |f| + [f]_α` over the full resolvable range, maximised over components.
pub fn holder_norm(f: &ChannelField, alpha: f64) -> Result<f64> {
    let g = f.grid();
    let h_max = (g.x_period() / 2.0).max(g.y_extent());
    let semi = holder_seminorm(f, alpha, g.resolution(), h_max)?;
    Ok(f.max_abs() + semi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ChannelGrid;

    #[test]
    fn fit_recovers_line() {
        let xs = [0.0, 1.0, 2.0, 3.0];
        let ys = [1.0, 3.0, 5.0, 7.0];
        let fit = linear_fit(&xs, &ys).unwrap();
        assert!((fit.slope - 2.0).abs() < 1e-14);
        assert!((fit.intercept - 1.0).abs() < 1e-14);
        assert!((fit.r2 - 1.0).abs() < 1e-14);
        assert!(linear_fit(&[1.0, 1.0], &[0.0, 1.0]).is_err());
    }

    #[test]
    fn constant_field_has_zero_oscillation() {
        let g = ChannelGrid::square(32).unwrap();
        let f = ChannelField::from_fn(g, |_, _| 3.5);
        assert_eq!(modulus_of_continuity(&f, 0.25).unwrap(), 0.0);
        let est = holder_quotient(&f, 0.5, g.resolution(), 0.5).unwrap();
        assert_eq!(est.seminorm, 0.0);
        assert!(estimate_holder_exponent(&f, &[0.5, 0.25, 0.125, 0.0625]).is_err());
    }

    #[test]
    fn linear_profile() {
        let g = ChannelGrid::square(64).unwrap();
        let f = ChannelField::from_fn(g, |_, y| y);
        assert!((modulus_of_continuity(&f, 0.25).unwrap() - 0.25).abs() < 1e-15);
        let est = holder_quotient(&f, 1.0, g.resolution(), 0.5).unwrap();
        assert!((est.seminorm - 1.0).abs() < 1e-12);
        let est = estimate_holder_exponent(&f, &[0.25, 0.125, 0.0625, 0.03125]).unwrap();
        assert!((est.fitted_exponent - 1.0).abs() < 0.05);
    }

    #[test]
    fn below_resolution_is_rejected() {
        let g = ChannelGrid::square(16).unwrap();
        let f = ChannelField::from_fn(g, |x, _| x);
        assert!(matches!(
            modulus_of_continuity(&f, 0.01),
            Err(Error::BelowResolution { .. })
        ));
    }

    #[test]
    fn periodic_pairs_wrap() {
        // f = x jumps by 2 − h_x across the seam x = 2 ≡ 0.
        let g = ChannelGrid::channel(8, 5).unwrap();
        let f = ChannelField::from_fn(g, |x, _| x);
        assert_eq!(modulus_of_continuity(&f, 0.25).unwrap(), 1.75);
    }
}
