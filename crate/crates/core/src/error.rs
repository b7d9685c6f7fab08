use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("field shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("separation {h} is below the grid resolution {resolution}")]
    BelowResolution { h: f64, resolution: f64 },
    #[error("no sampled pairs in the separation window [{h_min}, {h_max}]")]
    EmptyPairSet { h_min: f64, h_max: f64 },
    #[error("degenerate regression: {0}")]
    DegenerateRegression(String),
    #[error("velocity is not tangential at the walls (max |u₂| = {0:e})")]
    NonTangential(f64),
    #[error("stream function does not vanish at the walls (max |ψ| = {0:e})")]
    NonzeroWallValues(f64),
    #[error("mollifier radius {epsilon} is not below the extension margin {margin}")]
    ExtensionTooSmall { epsilon: f64, margin: f64 },
    #[error("degenerate chart Jacobian (det = {det:e}) at σ = ({sigma1}, {sigma2}), s = {s}")]
    DegenerateJacobian {
        det: f64,
        sigma1: f64,
        sigma2: f64,
        s: f64,
    },
    #[error("inconsistent height derivatives: {0}")]
    InconsistentDerivatives(String),
    #[error("Neumann compatibility defect {0:e} exceeds tolerance")]
    CompatibilityDefect(f64),
    #[error("singular linear system: {0}")]
    SingularSolve(String),
    #[error("zero norm in ratio denominator")]
    ZeroNorm,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
