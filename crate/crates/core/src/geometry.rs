//! Tubular coordinates over a height-function boundary patch.
//!
//! The patch is the graph `y(σ) = (σ₁, σ₂, a(σ))` with inward normal
//! `n = (∂₁a, ∂₂a, −1)/√(1 + |∇a|²)`, and the chart is
//! `x(σ₁, σ₂, s) = y(σ) + s·n(σ)`. With `J = ∂x/∂(σ₁, σ₂, s)`,
//! `a_ij = (J⁻¹J⁻ᵀ)_ij` and `b = |det J|`:
//!
//! ```text
//! ∇f  = Σ_ij a_ij ∂_j f · J_{·i}
//! ∇·v = (1/b) Σ_i ∂_i(b v_i)
//! Δf  = (1/b) Σ_ij ∂_i(b a_ij ∂_j f)
//! Δ_τ f = the same sum restricted to i, j ∈ {1, 2}
//! ```
//!
//! Derivatives of `b` and `b·a_ij` are taken by fourth-order centered
//! differences with step `1e-5·δ`.

use std::fmt::Debug;
use std::sync::Arc;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEGENERACY_THRESHOLD: f64 = 1e-8;
const METRIC_STEP_FACTOR: f64 = 1e-5;
const COMPOSITE_STEP: f64 = 1e-3;

/// A C³ height function with analytic first and second derivatives.
pub trait HeightFunction: Debug + Send + Sync {
    fn value(&self, s1: f64, s2: f64) -> f64;
    fn gradient(&self, s1: f64, s2: f64) -> [f64; 2];
    fn hessian(&self, s1: f64, s2: f64) -> [[f64; 2]; 2];
}

/// `a = c11 σ₁² + c12 σ₁σ₂ + c22 σ₂² + b1 σ₁ + b2 σ₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticHeight {
    pub c11: f64,
    pub c12: f64,
    pub c22: f64,
    pub b1: f64,
    pub b2: f64,
}

impl QuadraticHeight {
    pub fn flat() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0, 0.0)
    }

    pub fn new(c11: f64, c12: f64, c22: f64, b1: f64, b2: f64) -> Self {
        Self {
            c11,
            c12,
            c22,
            b1,
            b2,
        }
    }
}

impl HeightFunction for QuadraticHeight {
    fn value(&self, s1: f64, s2: f64) -> f64 {
        self.c11 * s1 * s1 + self.c12 * s1 * s2 + self.c22 * s2 * s2 + self.b1 * s1 + self.b2 * s2
    }

    fn gradient(&self, s1: f64, s2: f64) -> [f64; 2] {
        [
            2.0 * self.c11 * s1 + self.c12 * s2 + self.b1,
            self.c12 * s1 + 2.0 * self.c22 * s2 + self.b2,
        ]
    }

    fn hessian(&self, _s1: f64, _s2: f64) -> [[f64; 2]; 2] {
        [[2.0 * self.c11, self.c12], [self.c12, 2.0 * self.c22]]
    }
}

/// `a = A sin(k₁πσ₁) cos(k₂πσ₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinusoidalHeight {
    pub amplitude: f64,
    pub k1: f64,
    pub k2: f64,
}

impl HeightFunction for SinusoidalHeight {
    fn value(&self, s1: f64, s2: f64) -> f64 {
        let (p, q) = (self.k1 * std::f64::consts::PI, self.k2 * std::f64::consts::PI);
        self.amplitude * (p * s1).sin() * (q * s2).cos()
    }

    fn gradient(&self, s1: f64, s2: f64) -> [f64; 2] {
        let (p, q) = (self.k1 * std::f64::consts::PI, self.k2 * std::f64::consts::PI);
        let a = self.amplitude;
        [
            a * p * (p * s1).cos() * (q * s2).cos(),
            -a * q * (p * s1).sin() * (q * s2).sin(),
        ]
    }

    fn hessian(&self, s1: f64, s2: f64) -> [[f64; 2]; 2] {
        let (p, q) = (self.k1 * std::f64::consts::PI, self.k2 * std::f64::consts::PI);
        let a = self.amplitude;
        let (sp, cp) = (p * s1).sin_cos();
        let (sq, cq) = (q * s2).sin_cos();
        let mixed = -a * p * q * cp * sq;
        [[-a * p * p * sp * cq, mixed], [mixed, -a * q * q * sp * cq]]
    }
}

/// A point `(σ₁, σ₂, s)` of the tubular neighbourhood.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TubularPoint {
    pub sigma1: f64,
    pub sigma2: f64,
    pub s: f64,
}

impl TubularPoint {
    pub fn new(sigma1: f64, sigma2: f64, s: f64) -> Self {
        Self { sigma1, sigma2, s }
    }

    fn coords(&self) -> [f64; 3] {
        [self.sigma1, self.sigma2, self.s]
    }

    fn from_coords(q: [f64; 3]) -> Self {
        Self::new(q[0], q[1], q[2])
    }
}

/// Chart Jacobian and derived metric quantities at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricData {
    /// Columns `τ₁, τ₂, n`.
    pub jacobian: Matrix3<f64>,
    /// `J⁻¹J⁻ᵀ`.
    pub a_inv: Matrix3<f64>,
    /// `|det J|`.
    pub b: f64,
}

/// A boundary patch: height function, rectangular parameter domain and tube half-width.
#[derive(Debug, Clone)]
pub struct SurfacePatch {
    name: String,
    height: Arc<dyn HeightFunction>,
    domain: [f64; 4],
    delta: f64,
}

impl SurfacePatch {
    /// Validates the supplied derivatives by finite differences and scans
    /// `det J` over a lattice of the tube.
    pub fn new(
        name: impl Into<String>,
        height: Arc<dyn HeightFunction>,
        domain: [f64; 4],
        delta: f64,
    ) -> Result<Self> {
        let [s1a, s1b, s2a, s2b] = domain;
        if !(s1a < s1b && s2a < s2b) {
            return Err(Error::InvalidParameter(format!("empty patch domain {domain:?}")));
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameter(format!("delta = {delta} must be positive")));
        }
        let patch = Self {
            name: name.into(),
            height,
            domain,
            delta,
        };
        patch.check_derivatives()?;
        patch.scan_determinant()?;
        Ok(patch)
    }

    /// Built-in patches: `flat`, `paraboloid`, `sinusoidal`, `saddle`.
    pub fn catalog(name: &str) -> Result<Self> {
        match name {
            "flat" => Self::new(
                name,
                Arc::new(QuadraticHeight::flat()),
                [-1.0, 1.0, -1.0, 1.0],
                0.25,
            ),
            "paraboloid" => Self::new(
                name,
                Arc::new(QuadraticHeight::new(-0.5, 0.0, -0.5, 0.0, 0.0)),
                [-0.5, 0.5, -0.5, 0.5],
                0.25,
            ),
            "sinusoidal" => Self::new(
                name,
                Arc::new(SinusoidalHeight {
                    amplitude: 0.1,
                    k1: 1.0,
                    k2: 1.0,
                }),
                [-1.0, 1.0, -1.0, 1.0],
                0.2,
            ),
            "saddle" => Self::new(
                name,
                Arc::new(QuadraticHeight::new(0.25, 0.0, -0.25, 0.0, 0.0)),
                [-0.5, 0.5, -0.5, 0.5],
                0.25,
            ),
            _ => Err(Error::Config(format!(
                "unknown patch `{name}` (expected flat, paraboloid, sinusoidal or saddle)"
            ))),
        }
    }

    pub const CATALOG: [&'static str; 4] = ["flat", "paraboloid", "sinusoidal", "saddle"];

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn domain(&self) -> [f64; 4] {
        self.domain
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn height(&self) -> &dyn HeightFunction {
        self.height.as_ref()
    }

    /// A point of the tube, checked against the domain and `0 ≤ s ≤ δ`.
    pub fn point(&self, sigma1: f64, sigma2: f64, s: f64) -> Result<TubularPoint> {
        let [s1a, s1b, s2a, s2b] = self.domain;
        if !(s1a..=s1b).contains(&sigma1)
            || !(s2a..=s2b).contains(&sigma2)
            || !(0.0..=self.delta).contains(&s)
        {
            return Err(Error::InvalidParameter(format!(
                "({sigma1}, {sigma2}, {s}) outside the tube of patch `{}`",
                self.name
            )));
        }
        Ok(TubularPoint::new(sigma1, sigma2, s))
    }

    /// Deterministic low-discrepancy sample of `count` tube points.
    pub fn sample_points(&self, count: usize) -> Vec<TubularPoint> {
        // Additive recurrence with the reciprocals of the plastic-number powers.
        let g = 1.220_744_084_605_759_5_f64;
        let steps = [1.0 / g, 1.0 / (g * g), 1.0 / (g * g * g)];
        let [s1a, s1b, s2a, s2b] = self.domain;
        (1..=count)
            .map(|k| {
                let u = steps.map(|a| (0.5 + a * k as f64).fract());
                TubularPoint::new(
                    s1a + (s1b - s1a) * u[0],
                    s2a + (s2b - s2a) * u[1],
                    self.delta * u[2],
                )
            })
            .collect()
    }

    fn check_derivatives(&self) -> Result<()> {
        let h = 1e-4;
        let [s1a, s1b, s2a, s2b] = self.domain;
        for i in 0..=4 {
            for j in 0..=4 {
                let s1 = s1a + (s1b - s1a) * i as f64 / 4.0;
                let s2 = s2a + (s2b - s2a) * j as f64 / 4.0;
                let a = self.height.as_ref();
                let g = a.gradient(s1, s2);
                let hs = a.hessian(s1, s2);
                let fd_g = [
                    (a.value(s1 + h, s2) - a.value(s1 - h, s2)) / (2.0 * h),
                    (a.value(s1, s2 + h) - a.value(s1, s2 - h)) / (2.0 * h),
                ];
                let gp1 = a.gradient(s1 + h, s2);
                let gm1 = a.gradient(s1 - h, s2);
                let gp2 = a.gradient(s1, s2 + h);
                let gm2 = a.gradient(s1, s2 - h);
                let fd_h = [
                    [(gp1[0] - gm1[0]) / (2.0 * h), (gp2[0] - gm2[0]) / (2.0 * h)],
                    [(gp1[1] - gm1[1]) / (2.0 * h), (gp2[1] - gm2[1]) / (2.0 * h)],
                ];
                let scale_g = 1.0 + g[0].abs().max(g[1].abs());
                let scale_h = 1.0 + hs.iter().flatten().fold(0.0_f64, |m, v| m.max(v.abs()));
                for c in 0..2 {
                    if (fd_g[c] - g[c]).abs() > 1e-6 * scale_g {
                        return Err(Error::InconsistentDerivatives(format!(
                            "∂{}a at ({s1}, {s2}): supplied {}, finite difference {}",
                            c + 1,
                            g[c],
                            fd_g[c]
                        )));
                    }
                    for d in 0..2 {
                        if (fd_h[c][d] - hs[c][d]).abs() > 1e-6 * scale_h {
                            return Err(Error::InconsistentDerivatives(format!(
                                "∂{}∂{}a at ({s1}, {s2}): supplied {}, finite difference {}",
                                c + 1,
                                d + 1,
                                hs[c][d],
                                fd_h[c][d]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn scan_determinant(&self) -> Result<()> {
        let [s1a, s1b, s2a, s2b] = self.domain;
        let n = 8;
        let reference = self.jacobian(TubularPoint::new(0.5 * (s1a + s1b), 0.5 * (s2a + s2b), 0.0));
        let sign = reference.determinant().signum();
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..=n {
                    let pt = TubularPoint::new(
                        s1a + (s1b - s1a) * i as f64 / n as f64,
                        s2a + (s2b - s2a) * j as f64 / n as f64,
                        self.delta * k as f64 / n as f64,
                    );
                    let det = self.jacobian(pt).determinant();
                    if det * sign <= DEGENERACY_THRESHOLD {
                        return Err(Error::DegenerateJacobian {
                            det,
                            sigma1: pt.sigma1,
                            sigma2: pt.sigma2,
                            s: pt.s,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Inward unit normal at `(σ₁, σ₂)`.
    pub fn normal(&self, sigma1: f64, sigma2: f64) -> Vector3<f64> {
        let [a1, a2] = self.height.gradient(sigma1, sigma2);
        Vector3::new(a1, a2, -1.0) / (1.0 + a1 * a1 + a2 * a2).sqrt()
    }

    /// `x = (σ₁, σ₂, a) + s·n`.
    pub fn chart(&self, pt: TubularPoint) -> Vector3<f64> {
        let a = self.height.value(pt.sigma1, pt.sigma2);
        Vector3::new(pt.sigma1, pt.sigma2, a) + pt.s * self.normal(pt.sigma1, pt.sigma2)
    }

    /// `J` with columns `∂_{σ₁}y + s∂_{σ₁}n`, `∂_{σ₂}y + s∂_{σ₂}n`, `n`.
    pub fn jacobian(&self, pt: TubularPoint) -> Matrix3<f64> {
        let (s1, s2) = (pt.sigma1, pt.sigma2);
        let [a1, a2] = self.height.gradient(s1, s2);
        let hs = self.height.hessian(s1, s2);
        let w = (1.0 + a1 * a1 + a2 * a2).sqrt();
        let n = Vector3::new(a1, a2, -1.0) / w;
        let dn = |i: usize| {
            let dv = Vector3::new(hs[0][i], hs[1][i], 0.0);
            (dv - n * n.dot(&dv)) / w
        };
        let t1 = Vector3::new(1.0, 0.0, a1) + pt.s * dn(0);
        let t2 = Vector3::new(0.0, 1.0, a2) + pt.s * dn(1);
        Matrix3::from_columns(&[t1, t2, n])
    }

    /// Jacobian, inverse metric and volume factor; errors where `|det J| ≤ 1e−8`.
    pub fn metric(&self, pt: TubularPoint) -> Result<MetricData> {
        let jacobian = self.jacobian(pt);
        let det = jacobian.determinant();
        if det.abs() <= DEGENERACY_THRESHOLD {
            return Err(Error::DegenerateJacobian {
                det,
                sigma1: pt.sigma1,
                sigma2: pt.sigma2,
                s: pt.s,
            });
        }
        let inv = jacobian
            .try_inverse()
            .ok_or(Error::DegenerateJacobian {
                det,
                sigma1: pt.sigma1,
                sigma2: pt.sigma2,
                s: pt.s,
            })?;
        let a_inv = inv * inv.transpose();
        Ok(MetricData {
            jacobian,
            a_inv: 0.5 * (a_inv + a_inv.transpose()),
            b: det.abs(),
        })
    }

    fn metric_step(&self) -> f64 {
        METRIC_STEP_FACTOR * self.delta
    }

    /// Fourth-order centered derivative of `g` along chart coordinate `i`.
    fn chart_derivative<T, F>(&self, pt: TubularPoint, i: usize, h: f64, g: F) -> Result<T>
    where
        F: Fn(TubularPoint) -> Result<T>,
        T: std::ops::Sub<Output = T> + std::ops::Mul<f64, Output = T> + std::ops::Add<Output = T>,
    {
        let at = |k: f64| {
            let mut q = pt.coords();
            q[i] += k * h;
            g(TubularPoint::from_coords(q))
        };
        let (p2, p1, m1, m2) = (at(2.0)?, at(1.0)?, at(-1.0)?, at(-2.0)?);
        Ok((p1 - m1) * (8.0 / (12.0 * h)) + (m2 - p2) * (1.0 / (12.0 * h)))
    }

    /// `∂_i b` for each chart coordinate.
    pub fn grad_b(&self, pt: TubularPoint) -> Result<[f64; 3]> {
        let h = self.metric_step();
        let mut out = [0.0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.chart_derivative(pt, i, h, |q| Ok(self.metric(q)?.b))?;
        }
        Ok(out)
    }

    /// `∂_i (b a_ij)` for each `i`, as matrices indexed `[i](i, j)`.
    fn grad_b_ainv(&self, pt: TubularPoint) -> Result<[Matrix3<f64>; 3]> {
        let h = self.metric_step();
        let mut out = [Matrix3::zeros(); 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.chart_derivative(pt, i, h, |q| {
                let m = self.metric(q)?;
                Ok(m.a_inv * m.b)
            })?;
        }
        Ok(out)
    }

    /// Cartesian gradient `Σ_ij a_ij ∂_j f τ_i` (with `τ₃ = n`).
    pub fn gradient_curvilinear(
        &self,
        f: &dyn ChartScalar,
        pt: TubularPoint,
    ) -> Result<Vector3<f64>> {
        let m = self.metric(pt)?;
        let df = Vector3::from(f.gradient(pt));
        Ok(m.jacobian * (m.a_inv * df))
    }

    /// `(1/b) Σ_i ∂_i(b v_i)` for chart components `v`.
    pub fn divergence_curvilinear(&self, v: &dyn ChartVector, pt: TubularPoint) -> Result<f64> {
        let m = self.metric(pt)?;
        let db = self.grad_b(pt)?;
        let vals = v.value(pt);
        let jac = v.jacobian(pt);
        let mut total = 0.0;
        for i in 0..3 {
            total += db[i] * vals[i] + m.b * jac[i][i];
        }
        Ok(total / m.b)
    }

    fn laplacian_block(&self, f: &dyn ChartScalar, pt: TubularPoint, dims: usize) -> Result<f64> {
        let m = self.metric(pt)?;
        let d = self.grad_b_ainv(pt)?;
        let g = f.gradient(pt);
        let hs = f.hessian(pt);
        let mut total = 0.0;
        for i in 0..dims {
            for j in 0..dims {
                total += d[i][(i, j)] * g[j] + m.b * m.a_inv[(i, j)] * hs[i][j];
            }
        }
        Ok(total / m.b)
    }

    /// `(1/b) Σ_{i,j ≤ 3} ∂_i(b a_ij ∂_j f)`.
    pub fn laplacian_curvilinear(&self, f: &dyn ChartScalar, pt: TubularPoint) -> Result<f64> {
        self.laplacian_block(f, pt, 3)
    }

    /// `(1/b) Σ_{i,j ≤ 2} ∂_i(b a_ij ∂_j f)`.
    pub fn tangential_laplacian(&self, f: &dyn ChartScalar, pt: TubularPoint) -> Result<f64> {
        self.laplacian_block(f, pt, 2)
    }

    /// `Δ_τ f + (1/b) ∂_s b ∂_s f + ∂_s² f`.
    pub fn split_laplacian(&self, f: &dyn ChartScalar, pt: TubularPoint) -> Result<f64> {
        let m = self.metric(pt)?;
        let db = self.grad_b(pt)?;
        let g = f.gradient(pt);
        let hs = f.hessian(pt);
        Ok(self.tangential_laplacian(f, pt)? + db[2] / m.b * g[2] + hs[2][2])
    }
}

/// Scalar field of the chart coordinates `(σ₁, σ₂, s)` with its partials.
pub trait ChartScalar {
    fn value(&self, pt: TubularPoint) -> f64;
    fn gradient(&self, pt: TubularPoint) -> [f64; 3];
    fn hessian(&self, pt: TubularPoint) -> [[f64; 3]; 3];
}

/// Vector field given by chart components `v_i` (`V = Σ v_i J_{·i}`) with
/// partials `jacobian[i][j] = ∂_j v_i`.
pub trait ChartVector {
    fn value(&self, pt: TubularPoint) -> [f64; 3];
    fn jacobian(&self, pt: TubularPoint) -> [[f64; 3]; 3];
}

/// Chart scalar from closures.
pub struct AnalyticScalar<V, G, H> {
    pub value: V,
    pub gradient: G,
    pub hessian: H,
}

impl<V, G, H> ChartScalar for AnalyticScalar<V, G, H>
where
    V: Fn([f64; 3]) -> f64,
    G: Fn([f64; 3]) -> [f64; 3],
    H: Fn([f64; 3]) -> [[f64; 3]; 3],
{
    fn value(&self, pt: TubularPoint) -> f64 {
        (self.value)(pt.coords())
    }

    fn gradient(&self, pt: TubularPoint) -> [f64; 3] {
        (self.gradient)(pt.coords())
    }

    fn hessian(&self, pt: TubularPoint) -> [[f64; 3]; 3] {
        (self.hessian)(pt.coords())
    }
}

/// Chart vector from closures.
pub struct AnalyticVector<V, J> {
    pub value: V,
    pub jacobian: J,
}

impl<V, J> ChartVector for AnalyticVector<V, J>
where
    V: Fn([f64; 3]) -> [f64; 3],
    J: Fn([f64; 3]) -> [[f64; 3]; 3],
{
    fn value(&self, pt: TubularPoint) -> [f64; 3] {
        (self.value)(pt.coords())
    }

    fn jacobian(&self, pt: TubularPoint) -> [[f64; 3]; 3] {
        (self.jacobian)(pt.coords())
    }
}

/// A Cartesian scalar field with analytic gradient and Laplacian.
pub trait CartesianScalar {
    fn value(&self, x: Vector3<f64>) -> f64;
    fn gradient(&self, x: Vector3<f64>) -> Vector3<f64>;
    fn laplacian(&self, x: Vector3<f64>) -> f64;
}

/// `|x|²`.
#[derive(Debug, Clone, Copy)]
pub struct SquaredRadius;

impl CartesianScalar for SquaredRadius {
    fn value(&self, x: Vector3<f64>) -> f64 {
        x.norm_squared()
    }

    fn gradient(&self, x: Vector3<f64>) -> Vector3<f64> {
        2.0 * x
    }

    fn laplacian(&self, _x: Vector3<f64>) -> f64 {
        6.0
    }
}

/// The harmonic polynomial `x₁² − x₂²`.
#[derive(Debug, Clone, Copy)]
pub struct SaddleHarmonic;

impl CartesianScalar for SaddleHarmonic {
    fn value(&self, x: Vector3<f64>) -> f64 {
        x[0] * x[0] - x[1] * x[1]
    }

    fn gradient(&self, x: Vector3<f64>) -> Vector3<f64> {
        Vector3::new(2.0 * x[0], -2.0 * x[1], 0.0)
    }

    fn laplacian(&self, _x: Vector3<f64>) -> f64 {
        0.0
    }
}

/// `cos(x₁) e^{x₂} + x₃³`, with `Δ = 6x₃`.
#[derive(Debug, Clone, Copy)]
pub struct MixedCartesian;

impl CartesianScalar for MixedCartesian {
    fn value(&self, x: Vector3<f64>) -> f64 {
        x[0].cos() * x[1].exp() + x[2].powi(3)
    }

    fn gradient(&self, x: Vector3<f64>) -> Vector3<f64> {
        Vector3::new(
            -x[0].sin() * x[1].exp(),
            x[0].cos() * x[1].exp(),
            3.0 * x[2] * x[2],
        )
    }

    fn laplacian(&self, x: Vector3<f64>) -> f64 {
        6.0 * x[2]
    }
}

/// `F ∘ x(σ₁, σ₂, s)`: gradient `Jᵀ∇F` exactly, Hessian by fourth-order
/// differences of that gradient.
pub struct CartesianComposite<'a, F: CartesianScalar> {
    pub patch: &'a SurfacePatch,
    pub field: F,
}

impl<F: CartesianScalar> ChartScalar for CartesianComposite<'_, F> {
    fn value(&self, pt: TubularPoint) -> f64 {
        self.field.value(self.patch.chart(pt))
    }

    fn gradient(&self, pt: TubularPoint) -> [f64; 3] {
        let g = self.patch.jacobian(pt).transpose() * self.field.gradient(self.patch.chart(pt));
        [g[0], g[1], g[2]]
    }

    fn hessian(&self, pt: TubularPoint) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            let d: Vector3<f64> = self
                .patch
                .chart_derivative(pt, i, COMPOSITE_STEP, |q| Ok(Vector3::from(self.gradient(q))))
                .expect("gradient evaluation is infallible");
            *row = [d[0], d[1], d[2]];
        }
        // Symmetrise the finite-difference Hessian.
        for i in 0..3 {
            for j in 0..i {
                let m = 0.5 * (out[i][j] + out[j][i]);
                out[i][j] = m;
                out[j][i] = m;
            }
        }
        out
    }
}

/// A Cartesian vector field with analytic divergence.
pub trait CartesianVector {
    fn value(&self, x: Vector3<f64>) -> Vector3<f64>;
    fn divergence(&self, x: Vector3<f64>) -> f64;
}

/// `V = (x₁x₂, sin x₂, x₃²)`, `∇·V = x₂ + cos x₂ + 2x₃`.
#[derive(Debug, Clone, Copy)]
pub struct PolyTrigVector;

impl CartesianVector for PolyTrigVector {
    fn value(&self, x: Vector3<f64>) -> Vector3<f64> {
        Vector3::new(x[0] * x[1], x[1].sin(), x[2] * x[2])
    }

    fn divergence(&self, x: Vector3<f64>) -> f64 {
        x[1] + x[1].cos() + 2.0 * x[2]
    }
}

/// Chart components `v = J⁻¹ V(x)` of a Cartesian field; partials by
/// fourth-order differences.
pub struct CartesianVectorComposite<'a, V: CartesianVector> {
    pub patch: &'a SurfacePatch,
    pub field: V,
}

impl<V: CartesianVector> ChartVector for CartesianVectorComposite<'_, V> {
    fn value(&self, pt: TubularPoint) -> [f64; 3] {
        let j = self.patch.jacobian(pt);
        let v = j
            .try_inverse()
            .map(|inv| inv * self.field.value(self.patch.chart(pt)))
            .unwrap_or_else(|| Vector3::repeat(f64::NAN));
        [v[0], v[1], v[2]]
    }

    fn jacobian(&self, pt: TubularPoint) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for j in 0..3 {
            let d: Vector3<f64> = self
                .patch
                .chart_derivative(pt, j, COMPOSITE_STEP, |q| Ok(Vector3::from(self.value(q))))
                .expect("value evaluation is infallible");
            for i in 0..3 {
                out[i][j] = d[i];
            }
        }
        out
    }
}

/// Worst-case deviations of the patch identities over a point sample.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GeometryReport {
    pub points: usize,
    /// `max |a₃₃ − 1|`.
    pub a33_error: f64,
    /// `max |a_i3|, |a_3i|`, `i = 1, 2`.
    pub normal_block_error: f64,
    /// `max |a₁₂|`; zero only on flat patches.
    pub a12_max: f64,
    /// `max |a − aᵀ|`.
    pub symmetry_error: f64,
    /// `max |Δf − (Δ_τ f + (1/b)∂_s b ∂_s f + ∂_s² f)|` over the test scalars.
    pub split_error: f64,
    /// `max |Δ|x|² − 6|`.
    pub radius_laplacian_error: f64,
    /// `max |Δf − ΔF|` for `F ∈ {x₁² − x₂², cos x₁ e^{x₂} + x₃³}`.
    pub laplacian_oracle_error: f64,
    /// `max |∇f − ∇F|` for the Cartesian composites.
    pub gradient_oracle_error: f64,
    /// `max |∇f − J⁻ᵀ ∂f|` for a chart-native scalar.
    pub gradient_chain_error: f64,
    /// `max |∇·v − ∇·V|` for chart components of a Cartesian field.
    pub divergence_oracle_error: f64,
    /// `max |n·n − 1|` and `max |n·∂_{σᵢ}y|`.
    pub normal_error: f64,
    /// `max |J e₃ − n|`.
    pub normal_column_error: f64,
    /// `max |b(σ, 0) − √(1 + |∇a|²)|`.
    pub area_element_error: f64,
}

impl GeometryReport {
    /// `(name, value, tolerance)` for every identity with a fixed tolerance.
    pub fn tolerances(&self) -> Vec<(&'static str, f64, f64)> {
        vec![
            ("a33", self.a33_error, 1e-10),
            ("normal_block", self.normal_block_error, 1e-10),
            ("symmetry", self.symmetry_error, 1e-10),
            ("split_laplacian", self.split_error, 1e-8),
            ("radius_laplacian", self.radius_laplacian_error, 1e-6),
            ("laplacian_oracle", self.laplacian_oracle_error, 1e-8),
            ("gradient_oracle", self.gradient_oracle_error, 1e-8),
            ("gradient_chain", self.gradient_chain_error, 1e-8),
            ("divergence_oracle", self.divergence_oracle_error, 1e-8),
            ("normal", self.normal_error, 1e-12),
            ("normal_column", self.normal_column_error, 1e-12),
            ("area_element", self.area_element_error, 1e-12),
        ]
    }

    pub fn passed(&self) -> bool {
        self.tolerances().iter().all(|&(_, v, tol)| v <= tol)
    }
}

/// Chart-native scalar `σ₁² + σ₁σ₂ + s² + s σ₂`.
fn chart_native_scalar() -> impl ChartScalar {
    AnalyticScalar {
        value: |q: [f64; 3]| q[0] * q[0] + q[0] * q[1] + q[2] * q[2] + q[2] * q[1],
        gradient: |q: [f64; 3]| [2.0 * q[0] + q[1], q[0] + q[2], 2.0 * q[2] + q[1]],
        hessian: |_q: [f64; 3]| [[2.0, 1.0, 0.0], [1.0, 0.0, 1.0], [0.0, 1.0, 2.0]],
    }
}

enum Oracle<'a> {
    Radius,
    Cartesian(&'a dyn CartesianScalar),
    ChainRule,
}

/// Runs every identity and oracle comparison at `count` sampled tube points.
pub fn verify_patch(patch: &SurfacePatch, count: usize) -> Result<GeometryReport> {
    let radius = CartesianComposite {
        patch,
        field: SquaredRadius,
    };
    let harmonic = CartesianComposite {
        patch,
        field: SaddleHarmonic,
    };
    let mixed = CartesianComposite {
        patch,
        field: MixedCartesian,
    };
    let native = chart_native_scalar();
    let vector = CartesianVectorComposite {
        patch,
        field: PolyTrigVector,
    };
    let mut r = GeometryReport {
        points: count,
        ..Default::default()
    };
    let upd = |slot: &mut f64, v: f64| *slot = slot.max(v.abs());
    for pt in patch.sample_points(count) {
        let m = patch.metric(pt)?;
        upd(&mut r.a33_error, m.a_inv[(2, 2)] - 1.0);
        for i in 0..2 {
            upd(&mut r.normal_block_error, m.a_inv[(i, 2)]);
            upd(&mut r.normal_block_error, m.a_inv[(2, i)]);
        }
        upd(&mut r.a12_max, m.a_inv[(0, 1)]);
        let raw_inv = m.jacobian.try_inverse().expect("nondegenerate");
        let raw = raw_inv * raw_inv.transpose();
        upd(&mut r.symmetry_error, (raw - raw.transpose()).amax());

        let n = patch.normal(pt.sigma1, pt.sigma2);
        let [a1, a2] = patch.height().gradient(pt.sigma1, pt.sigma2);
        upd(&mut r.normal_error, n.norm_squared() - 1.0);
        upd(&mut r.normal_error, n.dot(&Vector3::new(1.0, 0.0, a1)));
        upd(&mut r.normal_error, n.dot(&Vector3::new(0.0, 1.0, a2)));
        upd(&mut r.normal_column_error, (m.jacobian.column(2) - n).amax());
        let surface = TubularPoint::new(pt.sigma1, pt.sigma2, 0.0);
        upd(
            &mut r.area_element_error,
            patch.metric(surface)?.b - (1.0 + a1 * a1 + a2 * a2).sqrt(),
        );

        let x = patch.chart(pt);
        let scalars: [(&dyn ChartScalar, Oracle); 4] = [
            (&radius, Oracle::Radius),
            (&harmonic, Oracle::Cartesian(&SaddleHarmonic)),
            (&mixed, Oracle::Cartesian(&MixedCartesian)),
            (&native, Oracle::ChainRule),
        ];
        for (f, oracle) in scalars {
            let lap = patch.laplacian_curvilinear(f, pt)?;
            upd(&mut r.split_error, lap - patch.split_laplacian(f, pt)?);
            let grad = patch.gradient_curvilinear(f, pt)?;
            match oracle {
                Oracle::Radius => {
                    upd(&mut r.radius_laplacian_error, lap - SquaredRadius.laplacian(x));
                    upd(&mut r.gradient_oracle_error, (grad - SquaredRadius.gradient(x)).amax());
                }
                Oracle::Cartesian(c) => {
                    upd(&mut r.laplacian_oracle_error, lap - c.laplacian(x));
                    upd(&mut r.gradient_oracle_error, (grad - c.gradient(x)).amax());
                }
                Oracle::ChainRule => {
                    let chain = raw_inv.transpose() * Vector3::from(f.gradient(pt));
                    upd(&mut r.gradient_chain_error, (grad - chain).amax());
                }
            }
        }
        let div = patch.divergence_curvilinear(&vector, pt)?;
        upd(&mut r.divergence_oracle_error, div - PolyTrigVector.divergence(x));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat() -> SurfacePatch {
        SurfacePatch::catalog("flat").unwrap()
    }

    #[test]
    fn flat_normal_and_chart() {
        let p = flat();
        assert_eq!(p.normal(0.3, -0.2), Vector3::new(0.0, 0.0, -1.0));
        let x = p.chart(TubularPoint::new(0.3, -0.2, 0.1));
        assert_eq!(x, Vector3::new(0.3, -0.2, -0.1));
        let m = p.metric(TubularPoint::new(0.1, 0.2, 0.2)).unwrap();
        assert_eq!(m.jacobian, Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, -1.0)));
        assert!((m.a_inv - Matrix3::identity()).amax() < 1e-15);
        assert_eq!(m.b, 1.0);
    }

    #[test]
    fn tilted_normal() {
        let p = SurfacePatch::new(
            "tilt",
            Arc::new(QuadraticHeight::new(0.0, 0.0, 0.0, 1.0, 0.0)),
            [-1.0, 1.0, -1.0, 1.0],
            0.1,
        )
        .unwrap();
        let n = p.normal(0.2, 0.4);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((n - Vector3::new(r, 0.0, -r)).amax() < 1e-15);
    }

    #[test]
    fn paraboloid_chart_at_origin() {
        let p = SurfacePatch::new(
            "bowl",
            Arc::new(QuadraticHeight::new(1.0, 0.0, 1.0, 0.0, 0.0)),
            [-0.2, 0.2, -0.2, 0.2],
            0.1,
        )
        .unwrap();
        let x = p.chart(TubularPoint::new(0.0, 0.0, 0.1));
        assert!((x - Vector3::new(0.0, 0.0, -0.1)).amax() < 1e-16);
    }

    #[test]
    fn focal_distance_is_detected() {
        // a = −|σ|² has principal curvature 2 towards the inward normal: focal length 1/2.
        let h = Arc::new(QuadraticHeight::new(-1.0, 0.0, -1.0, 0.0, 0.0));
        let ok = SurfacePatch::new("cap", h.clone(), [-0.2, 0.2, -0.2, 0.2], 0.25).unwrap();
        assert!(matches!(
            ok.metric(TubularPoint::new(0.0, 0.0, 0.5)),
            Err(Error::DegenerateJacobian { .. })
        ));
        assert!(matches!(
            SurfacePatch::new("cap", h, [-0.2, 0.2, -0.2, 0.2], 0.6),
            Err(Error::DegenerateJacobian { .. })
        ));
    }

    #[test]
    fn inconsistent_derivatives_rejected() {
        #[derive(Debug)]
        struct Wrong;
        impl HeightFunction for Wrong {
            fn value(&self, s1: f64, _s2: f64) -> f64 {
                s1 * s1
            }
            fn gradient(&self, s1: f64, _s2: f64) -> [f64; 2] {
                [s1, 0.0]
            }
            fn hessian(&self, _s1: f64, _s2: f64) -> [[f64; 2]; 2] {
                [[1.0, 0.0], [0.0, 0.0]]
            }
        }
        assert!(matches!(
            SurfacePatch::new("wrong", Arc::new(Wrong), [-1.0, 1.0, -1.0, 1.0], 0.1),
            Err(Error::InconsistentDerivatives(_))
        ));
    }

    #[test]
    fn flat_operators() {
        let p = flat();
        let pt = TubularPoint::new(0.2, 0.1, 0.05);
        let s = AnalyticScalar {
            value: |q: [f64; 3]| q[2],
            gradient: |_q: [f64; 3]| [0.0, 0.0, 1.0],
            hessian: |_q: [f64; 3]| [[0.0; 3]; 3],
        };
        assert_eq!(p.gradient_curvilinear(&s, pt).unwrap(), Vector3::new(0.0, 0.0, -1.0));
        assert!(p.laplacian_curvilinear(&s, pt).unwrap().abs() < 1e-10);
        let s1 = AnalyticScalar {
            value: |q: [f64; 3]| q[0],
            gradient: |_q: [f64; 3]| [1.0, 0.0, 0.0],
            hessian: |_q: [f64; 3]| [[0.0; 3]; 3],
        };
        assert_eq!(p.gradient_curvilinear(&s1, pt).unwrap(), Vector3::new(1.0, 0.0, 0.0));
        let v = AnalyticVector {
            value: |_q: [f64; 3]| [0.0, 0.0, 1.0],
            jacobian: |_q: [f64; 3]| [[0.0; 3]; 3],
        };
        assert!(p.divergence_curvilinear(&v, pt).unwrap().abs() < 1e-10);
        let v = AnalyticVector {
            value: |q: [f64; 3]| [q[0], q[1], 0.0],
            jacobian: |_q: [f64; 3]| [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0; 3]],
        };
        assert!((p.divergence_curvilinear(&v, pt).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn curved_gradient_matches_chain_rule() {
        let p = SurfacePatch::new(
            "curve",
            Arc::new(QuadraticHeight::new(0.1, 0.0, 0.0, 0.0, 0.0)),
            [-1.0, 1.0, -1.0, 1.0],
            0.2,
        )
        .unwrap();
        let f = AnalyticScalar {
            value: |q: [f64; 3]| q[0] * q[0] + q[2] * q[2],
            gradient: |q: [f64; 3]| [2.0 * q[0], 0.0, 2.0 * q[2]],
            hessian: |_q: [f64; 3]| [[2.0, 0.0, 0.0], [0.0; 3], [0.0, 0.0, 2.0]],
        };
        for pt in p.sample_points(20) {
            let g = p.gradient_curvilinear(&f, pt).unwrap();
            let j = p.jacobian(pt);
            let oracle = j.try_inverse().unwrap().transpose() * Vector3::from(f.gradient(pt));
            assert!((g - oracle).amax() < 1e-12);
        }
    }

    #[test]
    fn harmonic_on_bilinear_patch() {
        let p = SurfacePatch::new(
            "bilinear",
            Arc::new(QuadraticHeight::new(0.0, 0.05, 0.0, 0.0, 0.0)),
            [-1.0, 1.0, -1.0, 1.0],
            0.2,
        )
        .unwrap();
        let f = CartesianComposite {
            patch: &p,
            field: SaddleHarmonic,
        };
        for pt in p.sample_points(20) {
            assert!(p.laplacian_curvilinear(&f, pt).unwrap().abs() < 1e-6);
        }
    }

    #[test]
    fn divergence_theorem_for_compact_support() {
        // Bump supported strictly inside the chart box; ∫ (∇·v) b dq = 0.
        let p = SurfacePatch::catalog("sinusoidal").unwrap();
        let bump = |t: f64| {
            if t.abs() < 1.0 {
                (1.0 - t * t).powi(4)
            } else {
                0.0
            }
        };
        let dbump = |t: f64| {
            if t.abs() < 1.0 {
                -8.0 * t * (1.0 - t * t).powi(3)
            } else {
                0.0
            }
        };
        let (c, r, sc, sr) = (0.0, 0.8, 0.1, 0.09);
        let v = AnalyticVector {
            value: move |q: [f64; 3]| {
                let w = bump((q[0] - c) / r) * bump((q[1] - c) / r) * bump((q[2] - sc) / sr);
                [w * (1.0 + q[1]), w * q[0], w]
            },
            jacobian: move |q: [f64; 3]| {
                let (b0, b1, b2) = (bump((q[0] - c) / r), bump((q[1] - c) / r), bump((q[2] - sc) / sr));
                let (d0, d1, d2) = (
                    dbump((q[0] - c) / r) / r,
                    dbump((q[1] - c) / r) / r,
                    dbump((q[2] - sc) / sr) / sr,
                );
                let w = b0 * b1 * b2;
                let dw = [d0 * b1 * b2, b0 * d1 * b2, b0 * b1 * d2];
                [
                    [dw[0] * (1.0 + q[1]), dw[1] * (1.0 + q[1]) + w, dw[2] * (1.0 + q[1])],
                    [dw[0] * q[0] + w, dw[1] * q[0], dw[2] * q[0]],
                    dw,
                ]
            },
        };
        let n = 24;
        let [s1a, s1b, s2a, s2b] = p.domain();
        let (h1, h2, h3) = ((s1b - s1a) / n as f64, (s2b - s2a) / n as f64, p.delta() / n as f64);
        let mut integral = 0.0;
        let mut scale = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let pt = TubularPoint::new(
                        s1a + (i as f64 + 0.5) * h1,
                        s2a + (j as f64 + 0.5) * h2,
                        (k as f64 + 0.5) * h3,
                    );
                    let b = p.metric(pt).unwrap().b;
                    let d = p.divergence_curvilinear(&v, pt).unwrap();
                    integral += d * b * h1 * h2 * h3;
                    scale += d.abs() * b * h1 * h2 * h3;
                }
            }
        }
        assert!(integral.abs() < 1e-3 * scale, "{integral} vs {scale}");
    }

    #[test]
    fn catalog_identities() {
        for name in SurfacePatch::CATALOG {
            let p = SurfacePatch::catalog(name).unwrap();
            let r = verify_patch(&p, 25).unwrap();
            assert!(r.a33_error < 1e-10, "{name}: {r:?}");
            assert!(r.normal_block_error < 1e-10, "{name}: {r:?}");
            assert!(r.split_error < 1e-8, "{name}: {r:?}");
            assert!(r.radius_laplacian_error < 1e-6, "{name}: {r:?}");
            assert!(r.laplacian_oracle_error < 1e-8, "{name}: {r:?}");
            assert!(r.gradient_oracle_error < 1e-8, "{name}: {r:?}");
            assert!(r.gradient_chain_error < 1e-8, "{name}: {r:?}");
            assert!(r.divergence_oracle_error < 1e-8, "{name}: {r:?}");
            assert!(r.normal_error < 1e-14, "{name}: {r:?}");
            assert_eq!(r.normal_column_error, 0.0);
            assert!(r.passed(), "{name}: {r:?}");
            assert!(r.area_element_error < 1e-14, "{name}: {r:?}");
            if name == "flat" {
                assert!(r.a12_max < 1e-15);
            }
        }
        assert!(SurfacePatch::catalog("torus").is_err());
    }
}
