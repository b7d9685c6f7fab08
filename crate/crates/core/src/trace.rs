//! The boundary trace functional `U(y; θ) = ⟨u₂²(·, y), θ⟩` of the
//! Weierstrass flow and its dyadic blow-up diagnostics.
//!
//! All `x`-integrals are done in coefficient space. With
//! `C(j) = ∫₀² cos(jπx) θ(x) dx` (so `C(0) = ∫θ = 2c₀` and `C(j) = c_j`),
//!
//! ```text
//! I(k₁, k₂) = ∫ cos(2^{k₁}πx) cos(2^{k₂}πx) θ dx = ½ [C(2^{k₁} + 2^{k₂}) + C(|2^{k₁} − 2^{k₂}|)]
//! U(y; θ)   = Σ_{k₁,k₂ ≤ N} 2^{−α(k₁+k₂)} I(k₁, k₂) S_{k₁}(y) S_{k₂}(y),   S_k = sin(2^k πy).
//! ```
//!
//! The diagonal `k₁ = k₂` splits into the resonant part `U_RR` carried by
//! `∫θ` and `U_RNR` carried by `C(2^{k+1})`; the rest is `U_NR`.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::holder::linear_fit;
use crate::trig::{cospi, pow2, sinpi};
use crate::weierstrass::WeierstrassParams;

/// Largest dyadic index for which `y_n = 2^{−n}` and all arguments stay exact.
pub const MAX_DYADIC_N: u32 = 50;

/// Periodic test function `θ(x) = Σ c_m cos(mπx) + s_m sin(mπx)` on `[0, 2)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunction {
    cos_coeffs: Vec<f64>,
    sin_coeffs: Vec<f64>,
}

impl TestFunction {
    /// `sin_coeffs[0]` multiplies `sin(0) = 0` and is ignored.
    pub fn new(cos_coeffs: Vec<f64>, sin_coeffs: Vec<f64>) -> Result<Self> {
        if cos_coeffs.iter().chain(&sin_coeffs).any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("non-finite test-function coefficient".into()));
        }
        Ok(Self {
            cos_coeffs,
            sin_coeffs,
        })
    }

    /// Constant `θ ≡ c`, so `∫θ = 2c`.
    pub fn constant(c: f64) -> Self {
        Self {
            cos_coeffs: vec![c],
            sin_coeffs: Vec::new(),
        }
    }

    /// `θ ≡ 1/2`: unit integral.
    pub fn mean_one() -> Self {
        Self::constant(0.5)
    }

    /// A zero-integral θ with low cosine and sine content, including modes
    /// that match resonant frequencies `2^{k+1}` and cross frequencies `2^{k₁} ± 2^{k₂}`.
    pub fn mean_zero() -> Self {
        Self {
            cos_coeffs: vec![0.0, 0.25, 0.25, 0.15, 0.1],
            sin_coeffs: vec![0.0, 0.2, 0.0, 0.1],
        }
    }

    /// `mean_one() + mean_zero()`: unit integral with non-resonant content.
    pub fn mean_one_mixed() -> Self {
        let mut t = Self::mean_zero();
        t.cos_coeffs[0] = 0.5;
        t
    }

    /// Resolves a preset name.
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "mean-one" => Ok(Self::mean_one()),
            "mean-zero" => Ok(Self::mean_zero()),
            "mean-one-mixed" => Ok(Self::mean_one_mixed()),
            _ => Err(Error::Config(format!(
                "unknown theta preset `{name}` (expected mean-one, mean-zero or mean-one-mixed)"
            ))),
        }
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.cos_coeffs
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.sin_coeffs
    }

    /// `∫₀² θ dx = 2c₀`.
    pub fn integral(&self) -> f64 {
        2.0 * self.cos_coeffs.first().copied().unwrap_or(0.0)
    }

    /// `C(j) = ∫₀² cos(jπx) θ(x) dx`.
    pub fn cos_moment(&self, j: u64) -> f64 {
        if j == 0 {
            self.integral()
        } else {
            usize::try_from(j)
                .ok()
                .and_then(|j| self.cos_coeffs.get(j).copied())
                .unwrap_or(0.0)
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let c: f64 = self
            .cos_coeffs
            .iter()
            .enumerate()
            .map(|(m, c)| c * cospi(m as f64 * x))
            .sum();
        let s: f64 = self
            .sin_coeffs
            .iter()
            .enumerate()
            .map(|(m, s)| s * sinpi(m as f64 * x))
            .sum();
        c + s
    }

    /// `c·θ`.
    pub fn scaled(&self, c: f64) -> Self {
        Self {
            cos_coeffs: self.cos_coeffs.iter().map(|v| c * v).collect(),
            sin_coeffs: self.sin_coeffs.iter().map(|v| c * v).collect(),
        }
    }
}

/// `I(k₁, k₂; θ)` in closed form.
pub fn cross_moment(theta: &TestFunction, k1: u32, k2: u32) -> f64 {
    let (a, b) = (1u64 << k1, 1u64 << k2);
    0.5 * (theta.cos_moment(a + b) + theta.cos_moment(a.abs_diff(b)))
}

fn sine_factors(p: &WeierstrassParams, y: f64) -> Vec<f64> {
    (0..=p.n_terms())
        .map(|k| p.amplitude(k) * sinpi(pow2(k as i32) * y))
        .collect()
}

/// `U(y; θ)` as the full double sum.
pub fn eval_u(p: &WeierstrassParams, theta: &TestFunction, y: f64) -> f64 {
    let s = sine_factors(p, y);
    let n = p.n_terms();
    let mut total = 0.0;
    for k1 in 0..=n {
        if s[k1 as usize] == 0.0 {
            continue;
        }
        for k2 in 0..=n {
            total += cross_moment(theta, k1, k2) * s[k1 as usize] * s[k2 as usize];
        }
    }
    total
}

/// `(U_NR, U_RNR, U_RR)` at height `y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    /// Off-diagonal `k₁ ≠ k₂` terms.
    pub nr: f64,
    /// Diagonal terms carried by `C(2^{k+1})`.
    pub rnr: f64,
    /// Diagonal terms carried by `∫θ`.
    pub rr: f64,
}

impl Decomposition {
    pub fn total(&self) -> f64 {
        self.nr + self.rnr + self.rr
    }

    fn scaled(&self, c: f64) -> Self {
        Self {
            nr: c * self.nr,
            rnr: c * self.rnr,
            rr: c * self.rr,
        }
    }
}

pub fn decompose_u(p: &WeierstrassParams, theta: &TestFunction, y: f64) -> Decomposition {
    let s = sine_factors(p, y);
    let n = p.n_terms();
    let mut nr = 0.0;
    let mut rnr = 0.0;
    let mut rr = 0.0;
    for k1 in 0..=n {
        let s1 = s[k1 as usize];
        if s1 == 0.0 {
            continue;
        }
        for k2 in 0..=n {
            if k1 != k2 {
                nr += cross_moment(theta, k1, k2) * s1 * s[k2 as usize];
            }
        }
        rr += s1 * s1;
        rnr += theta.cos_moment(1u64 << (k1 + 1)) * s1 * s1;
    }
    Decomposition {
        nr,
        rnr: 0.5 * rnr,
        rr: 0.5 * theta.integral() * rr,
    }
}

/// Closed-form lower bound `(2/(2^{2(1−α)}−1))(2^{n(1−2α)} − 2^{−n})` on
/// `(1/y_n) U_RR(y_n)` for unit `∫θ`.
pub fn rr_lower_bound(alpha: f64, n: u32) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("alpha = {alpha} not in (0, 1)")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let r = (2.0 * (1.0 - alpha)).exp2();
    let n = n as f64;
    Ok(2.0 / (r - 1.0) * ((n * (1.0 - 2.0 * alpha)).exp2() - (-n).exp2()))
}

/// Lower bound `∫θ · 2^{−n+1} (r^n − r^m)/(r − 1)`, `r = 2^{2(1−α)}`, on the
/// third interior sum.
pub fn interior_third_sum_bound(alpha: f64, m: u32, n: u32, theta_integral: f64) -> f64 {
    let r = (2.0 * (1.0 - alpha)).exp2();
    let geometric = if (r - 1.0).abs() < 1e-15 {
        (n - m) as f64
    } else {
        (r.powi(n as i32) - r.powi(m as i32)) / (r - 1.0)
    };
    theta_integral * (1.0 - n as f64).exp2() * geometric
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    ConvergesToZero,
    BoundedNonzero,
    Diverges,
    /// None of the fixed thresholds applies.
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ConvergesToZero => "CONVERGES_TO_ZERO",
            Verdict::BoundedNonzero => "BOUNDED_NONZERO",
            Verdict::Diverges => "DIVERGES",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Growth exponent and verdict of a quotient sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub exponent: f64,
    pub verdict: Verdict,
}

pub const GROWTH_THRESHOLD: f64 = 0.1;
pub const GROWTH_FACTOR: f64 = 10.0;
pub const BOUNDED_FLOOR: f64 = 0.5;
pub const ZERO_CEILING: f64 = 1e-3;

/// Slope of `log₂|q|` against `n` over the upper half of the `n` range.
pub fn growth_exponent(quotients: &[f64], n_values: &[u32]) -> Result<f64> {
    let tail = tail_window(quotients, n_values)?;
    let (ns, qs): (Vec<f64>, Vec<f64>) = tail
        .iter()
        .map(|&(n, q)| (n as f64, q.abs().max(f64::MIN_POSITIVE).log2()))
        .unzip();
    Ok(linear_fit(&ns, &qs)?.slope)
}

fn tail_window(quotients: &[f64], n_values: &[u32]) -> Result<Vec<(u32, f64)>> {
    if quotients.len() != n_values.len() {
        return Err(Error::ShapeMismatch("quotients and n values differ in length".into()));
    }
    if n_values.is_empty() {
        return Err(Error::InvalidParameter("empty sequence".into()));
    }
    let lo = *n_values.iter().min().unwrap() as f64;
    let hi = *n_values.iter().max().unwrap() as f64;
    let mid = 0.5 * (lo + hi);
    Ok(n_values
        .iter()
        .zip(quotients)
        .filter(|(&n, _)| n as f64 >= mid)
        .map(|(&n, &q)| (n, q))
        .collect())
}

/// Applies the fixed verdict thresholds to a quotient sequence (≥ 6 points).
pub fn classify_blowup(quotients: &[f64], n_values: &[u32]) -> Result<Classification> {
    if quotients.len() < 6 {
        return Err(Error::InvalidParameter(format!(
            "need at least 6 points, got {}",
            quotients.len()
        )));
    }
    let tail = tail_window(quotients, n_values)?;
    let tail_max = tail.iter().fold(0.0_f64, |m, &(_, q)| m.max(q.abs()));
    let tail_min = tail.iter().fold(f64::INFINITY, |m, &(_, q)| m.min(q.abs()));
    let exponent = growth_exponent(quotients, n_values)?;
    let first = quotients[0].abs();
    let last = quotients[quotients.len() - 1].abs();
    let verdict = if tail_max < ZERO_CEILING {
        Verdict::ConvergesToZero
    } else if exponent > GROWTH_THRESHOLD && last > GROWTH_FACTOR * first {
        Verdict::Diverges
    } else if exponent.abs() <= GROWTH_THRESHOLD && tail_min >= BOUNDED_FLOOR {
        Verdict::BoundedNonzero
    } else if exponent < -GROWTH_THRESHOLD {
        Verdict::ConvergesToZero
    } else {
        Verdict::Inconclusive
    };
    Ok(Classification { exponent, verdict })
}

/// Where the dyadic quotients are taken.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TraceLocation {
    /// `(1/y_n) U(y_n)` at `y_n = 2^{−n}`.
    Boundary,
    /// `[U_RR(y₁ + 2^{−n}) − U_RR(y₁)] / 2^{−n}` at `y₁ = j/2^m`.
    Interior { j: u64, m: u32 },
}

/// One dyadic level. For the boundary the parts are `(NR, RNR, RR)`; in the
/// interior they are the three sums `(S1, S2, S3)` of the difference quotient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub n: u32,
    pub h: f64,
    pub total: f64,
    pub parts: [f64; 3],
    pub lower_bound: f64,
}

/// Dyadic quotient sequence. Values are raw (linear in θ); divide by
/// `theta_integral` for the unit-mass normalisation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceReport {
    pub alpha: f64,
    pub n_terms: u32,
    pub theta_integral: f64,
    pub location: TraceLocation,
    pub rows: Vec<TraceRow>,
    /// Growth exponent of the total quotient.
    pub fitted_growth_exponent: f64,
    /// Growth exponent of the part driving the blow-up (RR on the boundary, S3 inside).
    pub dominant_exponent: f64,
    pub verdict: Verdict,
}

impl TraceReport {
    pub fn n_values(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.n).collect()
    }

    pub fn quotients(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.total).collect()
    }

    pub fn part(&self, k: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r.parts[k]).collect()
    }

    pub fn lower_bounds(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.lower_bound).collect()
    }

    pub fn csv_header(&self) -> [&'static str; 7] {
        match self.location {
            TraceLocation::Boundary => [
                "n",
                "y_n",
                "quotient_total",
                "quotient_NR",
                "quotient_RNR",
                "quotient_RR",
                "lower_bound",
            ],
            TraceLocation::Interior { .. } => [
                "n",
                "h_n",
                "quotient_total",
                "quotient_S1",
                "quotient_S2",
                "quotient_S3",
                "lower_bound",
            ],
        }
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(self.csv_header())?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                format!("{:.16e}", r.h),
                format!("{:.16e}", r.total),
                format!("{:.16e}", r.parts[0]),
                format!("{:.16e}", r.parts[1]),
                format!("{:.16e}", r.parts[2]),
                format!("{:.16e}", r.lower_bound),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn fit_or_nan(values: &[f64], ns: &[u32]) -> f64 {
    growth_exponent(values, ns).unwrap_or(f64::NAN)
}

fn finish(
    p: &WeierstrassParams,
    theta: &TestFunction,
    location: TraceLocation,
    rows: Vec<TraceRow>,
    dominant: usize,
) -> Result<TraceReport> {
    let ns: Vec<u32> = rows.iter().map(|r| r.n).collect();
    let totals: Vec<f64> = rows.iter().map(|r| r.total).collect();
    let dom: Vec<f64> = rows.iter().map(|r| r.parts[dominant]).collect();
    let (fitted, verdict) = if rows.len() >= 6 {
        let c = classify_blowup(&totals, &ns)?;
        (c.exponent, c.verdict)
    } else {
        (fit_or_nan(&totals, &ns), Verdict::Inconclusive)
    };
    Ok(TraceReport {
        alpha: p.alpha(),
        n_terms: p.n_terms(),
        theta_integral: theta.integral(),
        location,
        rows,
        fitted_growth_exponent: fitted,
        dominant_exponent: fit_or_nan(&dom, &ns),
        verdict,
    })
}

/// `(1/y_n) U(y_n; θ)` and its parts for `n = 1..=n_max`.
pub fn dyadic_quotients_boundary(
    p: &WeierstrassParams,
    theta: &TestFunction,
    n_max: u32,
) -> Result<TraceReport> {
    if !(1..=MAX_DYADIC_N).contains(&n_max) {
        return Err(Error::InvalidParameter(format!(
            "n_max = {n_max} not in 1..={MAX_DYADIC_N}"
        )));
    }
    let rows = (1..=n_max)
        .map(|n| {
            let y = pow2(-(n as i32));
            let d = decompose_u(p, theta, y).scaled(1.0 / y);
            TraceRow {
                n,
                h: y,
                total: d.total(),
                parts: [d.nr, d.rnr, d.rr],
                lower_bound: rr_lower_bound(p.alpha(), n)
                    .map(|b| b * theta.integral())
                    .unwrap_or(f64::NAN),
            }
        })
        .collect();
    finish(p, theta, TraceLocation::Boundary, rows, 2)
}

/// The three sums of `[U_RR(y₁ + 2^{−n}) − U_RR(y₁)] / 2^{−n}` at `y₁ = j/2^m`:
///
/// ```text
/// ∫θ · 2^{n−1} Σ_k 2^{−2αk} [sin(2^{k+1}πy₁) cos a_k + cos(2^{k+1}πy₁) sin a_k] sin a_k,   a_k = 2^{k−n}π
/// S1: the sin(2^{k+1}πy₁) terms (nonzero only for k ≤ m−2)
/// S2: the cos(2^{k+1}πy₁) terms with k ≤ m−1
/// S3: the remaining k ≥ m terms, where cos(2^{k+1}πy₁) = 1
/// ```
pub fn interior_sums(p: &WeierstrassParams, theta: &TestFunction, j: u64, m: u32, n: u32) -> [f64; 3] {
    let y1 = j as f64 * pow2(-(m as i32));
    let mut s = [0.0; 3];
    for k in 0..=p.n_terms() {
        let a = pow2(k as i32 - n as i32);
        let sa = sinpi(a);
        if sa == 0.0 {
            continue;
        }
        let w = p.amplitude(k) * p.amplitude(k);
        let arg = pow2(k as i32 + 1) * y1;
        let sin_part = w * sinpi(arg) * cospi(a) * sa;
        let cos_part = w * cospi(arg) * sa * sa;
        s[0] += sin_part;
        if k < m {
            s[1] += cos_part;
        } else {
            s[2] += cos_part;
        }
    }
    let scale = theta.integral() * pow2(n as i32 - 1);
    s.map(|v| v * scale)
}

/// Interior difference quotients at `y₁ = j/2^m` for `n = m+1..=n_max`.
pub fn dyadic_quotients_interior(
    p: &WeierstrassParams,
    theta: &TestFunction,
    j: u64,
    m: u32,
    n_max: u32,
) -> Result<TraceReport> {
    if m == 0 || m >= MAX_DYADIC_N {
        return Err(Error::InvalidParameter(format!("m = {m} not in 1..{MAX_DYADIC_N}")));
    }
    if j == 0 || j >= (1u64 << m) {
        return Err(Error::InvalidParameter(format!("j = {j} not in 1..2^{m}")));
    }
    if n_max <= m || n_max > MAX_DYADIC_N {
        return Err(Error::InvalidParameter(format!(
            "n_max = {n_max} not in {}..={MAX_DYADIC_N}",
            m + 1
        )));
    }
    let rows = ((m + 1)..=n_max)
        .map(|n| {
            let parts = interior_sums(p, theta, j, m, n);
            TraceRow {
                n,
                h: pow2(-(n as i32)),
                total: parts.iter().sum(),
                parts,
                lower_bound: interior_third_sum_bound(p.alpha(), m, n, theta.integral()),
            }
        })
        .collect();
    finish(p, theta, TraceLocation::Interior { j, m }, rows, 2)
}

/// `U_RR(y)` alone: `½ ∫θ Σ_k 2^{−2αk} sin²(2^k πy)`.
pub fn resonant_part(p: &WeierstrassParams, theta: &TestFunction, y: f64) -> f64 {
    let s: f64 = sine_factors(p, y).iter().map(|v| v * v).sum();
    0.5 * theta.integral() * s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(alpha: f64, n: u32) -> WeierstrassParams {
        WeierstrassParams::new(alpha, n).unwrap()
    }

    #[test]
    fn moments() {
        let t = TestFunction::new(vec![0.5, 0.0, 0.0, 2.0], vec![0.0, 7.0]).unwrap();
        assert_eq!(t.integral(), 1.0);
        assert_eq!(t.cos_moment(0), 1.0);
        assert_eq!(t.cos_moment(3), 2.0);
        assert_eq!(t.cos_moment(1), 0.0);
        assert_eq!(t.cos_moment(1 << 40), 0.0);
        // I(0, 1) = ½[C(3) + C(1)]
        assert_eq!(cross_moment(&t, 0, 1), 1.0);
    }

    #[test]
    fn u_vanishes_on_walls() {
        let p = params(0.4, 40);
        let t = TestFunction::mean_one_mixed();
        assert_eq!(eval_u(&p, &t, 0.0), 0.0);
        assert_eq!(eval_u(&p, &t, 1.0), 0.0);
        assert_eq!(decompose_u(&p, &t, 0.0).total(), 0.0);
    }

    #[test]
    fn single_resonant_term() {
        let p = params(0.5, 0);
        assert!((eval_u(&p, &TestFunction::mean_one(), 0.5) - 0.5).abs() < 1e-16);
        let d = decompose_u(&params(0.7, 20), &TestFunction::mean_one(), 0.5);
        assert_eq!(d.nr, 0.0);
        assert_eq!(d.rnr, 0.0);
        assert_eq!(d.rr, 0.5);
    }

    #[test]
    fn frequency_matching() {
        // 11 is neither 2^a + 2^b nor |2^a − 2^b|; 3 = 2^0 + 2^1 is.
        let invisible = TestFunction::new(vec![0.0; 11].into_iter().chain([1.0]).collect(), vec![])
            .unwrap();
        let visible = TestFunction::new(vec![0.0, 0.0, 0.0, 1.0], vec![]).unwrap();
        let p = params(0.3, 12);
        for i in 0..20 {
            assert_eq!(eval_u(&p, &invisible, i as f64 * 0.05), 0.0);
        }
        assert!(eval_u(&p, &visible, 0.3).abs() > 1e-3);
    }

    #[test]
    fn lower_bound_values() {
        assert!((rr_lower_bound(0.5, 1).unwrap() - 1.0).abs() < 1e-15);
        assert!((rr_lower_bound(0.5, 3).unwrap() - 1.75).abs() < 1e-15);
        let b = rr_lower_bound(0.25, 10).unwrap();
        assert!((b - 2.0 / (2f64.powf(1.5) - 1.0) * (32.0 - 2f64.powi(-10))).abs() < 1e-12);
        assert!((b - 35.00).abs() < 0.01);
        assert!(rr_lower_bound(1.0, 3).is_err());
    }

    #[test]
    fn classify_synthetic() {
        let ns: Vec<u32> = (1..=20).collect();
        let grow: Vec<f64> = ns.iter().map(|&n| 2f64.powf(0.5 * n as f64)).collect();
        let flat = vec![2.0; 20];
        let decay: Vec<f64> = ns.iter().map(|&n| 2f64.powi(-(n as i32))).collect();
        assert_eq!(classify_blowup(&grow, &ns).unwrap().verdict, Verdict::Diverges);
        assert_eq!(classify_blowup(&flat, &ns).unwrap().verdict, Verdict::BoundedNonzero);
        assert_eq!(classify_blowup(&decay, &ns).unwrap().verdict, Verdict::ConvergesToZero);
        assert!(classify_blowup(&flat[..5], &ns[..5]).is_err());
    }

    #[test]
    fn boundary_report_small_cases() {
        let r = dyadic_quotients_boundary(&params(0.5, 40), &TestFunction::mean_one(), 3).unwrap();
        assert!((r.rows[0].parts[2] - 1.0).abs() < 1e-15);
        let s = std::f64::consts::FRAC_PI_8.sin();
        let expected = 4.0 * (s * s + 0.5 * 0.5 + 0.25);
        assert!((r.rows[2].parts[2] - expected).abs() < 1e-14);
        assert!((expected - 2.5858).abs() < 1e-4);
        assert!(dyadic_quotients_boundary(&params(0.5, 4), &TestFunction::mean_one(), 51).is_err());
    }

    #[test]
    fn interior_mean_zero_is_zero() {
        let r = dyadic_quotients_interior(&params(0.25, 40), &TestFunction::mean_zero(), 3, 2, 20)
            .unwrap();
        assert!(r.rows.iter().all(|row| row.total == 0.0));
    }

    #[test]
    fn interior_sums_match_direct_difference() {
        let p = params(0.25, 20);
        let t = TestFunction::mean_one();
        for &(j, m) in &[(1u64, 1u32), (3, 2), (5, 3)] {
            for n in (m + 1)..=14 {
                let h = pow2(-(n as i32));
                let y1 = j as f64 * pow2(-(m as i32));
                let direct = (resonant_part(&p, &t, y1 + h) - resonant_part(&p, &t, y1)) / h;
                let s: f64 = interior_sums(&p, &t, j, m, n).iter().sum();
                assert!(
                    (direct - s).abs() <= 1e-9 * (1.0 + s.abs()),
                    "j={j} m={m} n={n}: {direct} vs {s}"
                );
            }
        }
    }

    #[test]
    fn interior_argument_checks() {
        let p = params(0.25, 20);
        let t = TestFunction::mean_one();
        assert!(dyadic_quotients_interior(&p, &t, 0, 2, 10).is_err());
        assert!(dyadic_quotients_interior(&p, &t, 4, 2, 10).is_err());
        assert!(dyadic_quotients_interior(&p, &t, 1, 0, 10).is_err());
        assert!(dyadic_quotients_interior(&p, &t, 1, 2, 2).is_err());
    }

    #[test]
    fn csv_headers() {
        let p = params(0.5, 10);
        let t = TestFunction::mean_one();
        let r = dyadic_quotients_boundary(&p, &t, 8).unwrap();
        let mut buf = Vec::new();
        r.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,y_n,quotient_total,quotient_NR,quotient_RNR,quotient_RR,lower_bound\n"));
        assert_eq!(text.lines().count(), 9);
    }
}
