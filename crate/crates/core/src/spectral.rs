//! FFT and tridiagonal helpers shared by the channel solvers.

use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Signed frequency index of FFT bin `m` for length `n`; the Nyquist bin maps to `+n/2`.
#[inline]
pub fn signed_mode(m: usize, n: usize) -> isize {
    if m <= n / 2 {
        m as isize
    } else {
        m as isize - n as isize
    }
}

/// Angular wavenumber `2π m / period` for FFT bin `m`.
#[inline]
pub fn wavenumber(m: usize, n: usize, period: f64) -> f64 {
    2.0 * std::f64::consts::PI * signed_mode(m, n) as f64 / period
}

/// Spectral first-derivative multiplier `iκ`, zeroed at the Nyquist bin.
#[inline]
pub fn derivative_factor(m: usize, n: usize, period: f64) -> Complex64 {
    if n % 2 == 0 && m == n / 2 {
        Complex64::new(0.0, 0.0)
    } else {
        Complex64::new(0.0, wavenumber(m, n, period))
    }
}

/// Forward/inverse complex FFT pair of fixed length.
#[derive(Clone)]
pub struct Transform {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Transform {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Unnormalised forward transform of a real sequence.
    pub fn forward_real(&self, values: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.fwd.process(&mut buf);
        buf
    }

    pub fn forward(&self, buf: &mut [Complex64]) {
        self.fwd.process(buf);
    }

    /// Inverse transform including the `1/n` normalisation.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        self.inv.process(buf);
        let scale = 1.0 / self.n as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }

    /// Inverse transform, keeping the real part.
    pub fn inverse_real(&self, spectrum: &[Complex64]) -> Vec<f64> {
        let mut buf = spectrum.to_vec();
        self.inverse(&mut buf);
        buf.into_iter().map(|c| c.re).collect()
    }
}

/// In-place 2D FFT of a row-major `rows × cols` array.
pub fn fft2(data: &mut [Complex64], rows: usize, cols: usize, inverse: bool) {
    let tr = Transform::new(cols);
    for row in data.chunks_mut(cols) {
        if inverse {
            tr.inverse(row);
        } else {
            tr.forward(row);
        }
    }
    let tc = Transform::new(rows);
    let mut column = vec![Complex64::new(0.0, 0.0); rows];
    for c in 0..cols {
        for r in 0..rows {
            column[r] = data[r * cols + c];
        }
        if inverse {
            tc.inverse(&mut column);
        } else {
            tc.forward(&mut column);
        }
        for r in 0..rows {
            data[r * cols + c] = column[r];
        }
    }
}

/// Solves a tridiagonal system with real coefficients in place (Thomas algorithm).
///
/// Row `k` reads `lower[k]·x[k−1] + diag[k]·x[k] + upper[k]·x[k+1] = rhs[k]`;
/// `lower[0]` and `upper[n−1]` are ignored.
pub fn solve_tridiagonal(
    lower: &[f64],
    diag: &[f64],
    upper: &[f64],
    rhs: &mut [Complex64],
) -> Result<()> {
    let n = diag.len();
    if lower.len() != n || upper.len() != n || rhs.len() != n || n == 0 {
        return Err(Error::ShapeMismatch("tridiagonal bands differ in length".into()));
    }
    let scale = diag.iter().fold(0.0_f64, |m, d| m.max(d.abs())).max(1e-300);
    let mut c = vec![0.0; n];
    let mut beta = diag[0];
    if beta.abs() <= 1e-14 * scale {
        return Err(Error::SingularSolve("zero pivot in row 0".into()));
    }
    c[0] = upper[0] / beta;
    rhs[0] /= beta;
    for k in 1..n {
        beta = diag[k] - lower[k] * c[k - 1];
        if beta.abs() <= 1e-14 * scale {
            return Err(Error::SingularSolve(format!("zero pivot in row {k}")));
        }
        c[k] = upper[k] / beta;
        let prev = rhs[k - 1];
        rhs[k] = (rhs[k] - prev * lower[k]) / beta;
    }
    for k in (0..n - 1).rev() {
        let next = rhs[k + 1];
        rhs[k] -= next * c[k];
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_modes() {
        assert_eq!(signed_mode(0, 8), 0);
        assert_eq!(signed_mode(4, 8), 4);
        assert_eq!(signed_mode(5, 8), -3);
        assert_eq!(signed_mode(7, 8), -1);
    }

    #[test]
    fn round_trip() {
        let t = Transform::new(16);
        let x: Vec<f64> = (0..16).map(|i| (i as f64 * 0.37).sin()).collect();
        let back = t.inverse_real(&t.forward_real(&x));
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn fft2_round_trip() {
        let (r, c) = (6, 8);
        let orig: Vec<Complex64> = (0..r * c)
            .map(|k| Complex64::new((k as f64).cos(), (k as f64 * 0.3).sin()))
            .collect();
        let mut data = orig.clone();
        fft2(&mut data, r, c, false);
        fft2(&mut data, r, c, true);
        for (a, b) in orig.iter().zip(&data) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn thomas_matches_dense_solve() {
        let n = 7;
        let lower: Vec<f64> = (0..n).map(|k| 1.0 + 0.1 * k as f64).collect();
        let diag: Vec<f64> = (0..n).map(|k| -4.0 - 0.2 * k as f64).collect();
        let upper: Vec<f64> = (0..n).map(|k| 0.5 + 0.05 * k as f64).collect();
        let x: Vec<Complex64> = (0..n)
            .map(|k| Complex64::new(k as f64, 1.0 - k as f64))
            .collect();
        let mut rhs: Vec<Complex64> = (0..n)
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
            .collect();
        solve_tridiagonal(&lower, &diag, &upper, &mut rhs).unwrap();
        for (a, b) in x.iter().zip(&rhs) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn singular_system_reported() {
        let mut rhs = vec![Complex64::new(1.0, 0.0); 2];
        let r = solve_tridiagonal(&[0.0, 1.0], &[1.0, 1.0], &[1.0, 0.0], &mut rhs);
        assert!(matches!(r, Err(Error::SingularSolve(_))));
    }
}
