//! Temporal quantum correlations of a single qubit.
//!
//! The crate evaluates three two-time correlation measures, the normalised
//! temporal CHSH violation `B_max`, the temporal steering robustness (TSR) and
//! the pseudo-density-matrix `f`-function, for a qubit measured, sent through a
//! channel, and measured again. Channels come from ideal Kraus sets, from a
//! two-branch gate compilation, or from Lindblad dynamics (including a
//! system–environment model whose memory makes steering revive).
//!
//! All numerical code is generic over [`Real`] (`f32` or `f64`); the aliases
//! at the crate root fix the scalar to `f64`, the precision the SDP and
//! integrator tolerances are tuned for.

pub mod channels;
pub mod dynamics;
mod error;
pub mod harness;
pub mod measures;
pub mod qmath;
mod scalar;
pub mod sdp;
mod tolerance;

pub use error::{Error, Result};
pub use scalar::Real;
pub use tolerance::Tolerances;

pub type Matrix = qmath::ComplexMatrix<f64>;
pub type Matrix32 = qmath::ComplexMatrix<f32>;
pub type DensityMatrix = qmath::DensityMatrix<f64>;
pub type DensityMatrix32 = qmath::DensityMatrix<f32>;
pub type BlochVector = qmath::BlochVector<f64>;
pub type KrausChannel = channels::KrausChannel<f64>;
pub type KrausChannel32 = channels::KrausChannel<f32>;
pub type Superoperator = channels::Superoperator<f64>;
pub type ChiMatrix = channels::ChiMatrix<f64>;
pub type ExtremeDecomposition = channels::ExtremeDecomposition<f64>;
pub type GateSequence = channels::GateSequence<f64>;
pub type CompiledChannel = channels::CompiledChannel<f64>;
pub type LindbladModel = dynamics::LindbladModel<f64>;
pub type Trajectory = dynamics::Trajectory<f64>;
pub type SdpProblem = sdp::SdpProblem<f64>;
pub type SdpSolution = sdp::SdpSolution<f64>;
pub type Assemblage = measures::Assemblage<f64>;
pub type PseudoDensityMatrix = measures::PseudoDensityMatrix<f64>;
