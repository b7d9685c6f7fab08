//! Numerical laboratory for the Hölder regularity of the Euler pressure in
//! bounded domains.
//!
//! The crate is organised around the periodic channel `Ω = T × [0, 1]`
//! (x-period 2) and a handful of verification subsystems:
//!
//! - [`field`] and [`holder`]: channel grids, sampled fields, Hölder seminorm
//!   and modulus-of-continuity estimation.
//! - [`weierstrass`]: the lacunary "Weierstrass flow", its stream function,
//!   truncation tails and the closed-form Hölder constant.
//! - [`trace`]: the boundary trace functional `U(y; θ) = ⟨u₂²(·, y), θ⟩`, its
//!   resonant decomposition and the dyadic blow-up diagnostics.
//! - [`geometry`]: tubular coordinates over a height-function boundary patch
//!   and the curvilinear gradient, divergence and Laplacian.
//! - [`mollifier`]: divergence-free mollification through the stream
//!   function with odd reflection across the walls.
//! - [`pressure`]: the modified pressure `P = p + φ (u·n)²` under the very
//!   weak Neumann condition, weak normal traces and the Dirichlet Schauder
//!   ratio check.
//! - [`experiments`] and [`acceptance`]: reproducible experiment runner used
//!   by the `pressure-lab` binary.

pub mod acceptance;
pub mod error;
pub mod experiments;
pub mod field;
pub mod geometry;
pub mod holder;
pub mod mollifier;
pub mod pressure;
pub mod spectral;
pub mod trace;
pub mod trig;
pub mod weierstrass;

pub use error::{Error, Result};
pub use field::{ChannelField, ChannelGrid};
pub use holder::HolderEstimate;
pub use trace::{TestFunction, TraceReport, Verdict};
pub use weierstrass::WeierstrassParams;
