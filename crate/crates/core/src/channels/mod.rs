//! Qubit channels: ideal Kraus sets, the two-branch extreme decomposition and
//! its gate compilation, process tomography and process fidelity.

mod circuit;
mod extreme;
mod kraus;
mod process;
mod superop;

pub use circuit::{branch_gates, compile_to_gates, CompiledChannel, Gate, GateSequence, MAX_QUBITS};
pub use extreme::{decompose_channel, ExtremeBranch, ExtremeDecomposition};
pub use kraus::{apply_channel, standard_channel, strength_at_time, ChannelKind, KrausChannel};
pub use process::{process_fidelity, process_tomography, state_fidelity, ChiMatrix};
pub use superop::Superoperator;

use crate::qmath::ComplexMatrix;
use crate::scalar::Real;

/// A linear map on single-qubit operators, the opaque "channel action".
///
/// Implementations must be linear so that callers may feed unnormalised
/// post-measurement operators; they must also be safe to call concurrently.
pub trait QubitMap<T: Real>: Sync {
    fn apply_operator(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T>;
}

impl<T, F> QubitMap<T> for F
where
    T: Real,
    F: Fn(&ComplexMatrix<T>) -> ComplexMatrix<T> + Sync,
{
    fn apply_operator(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        self(op)
    }
}

/// The identity channel.
#[derive(Clone, Copy, Debug, Default)]
pub struct IdentityMap;

impl<T: Real> QubitMap<T> for IdentityMap {
    fn apply_operator(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        op.clone()
    }
}

/// Discards the input and prepares a fixed state: `ρ ↦ tr(ρ) σ`.
#[derive(Clone, Debug)]
pub struct ReplacementMap<T> {
    pub state: ComplexMatrix<T>,
}

impl<T: Real> QubitMap<T> for ReplacementMap<T> {
    fn apply_operator(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        self.state.scale(op.trace())
    }
}

/// Unitary channel `ρ ↦ U ρ U†`.
#[derive(Clone, Debug)]
pub struct UnitaryMap<T> {
    pub unitary: ComplexMatrix<T>,
}

impl<T: Real> QubitMap<T> for UnitaryMap<T> {
    fn apply_operator(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        self.unitary.sandwich(op)
    }
}

/// `R_y(θ) = exp(-iθσ_y/2)`
pub fn ry<T: Real>(theta: T) -> ComplexMatrix<T> {
    let half = theta * T::lit(0.5);
    let (s, c) = (half.sin(), half.cos());
    ComplexMatrix::from_fn(2, |i, j| {
        let v = match (i, j) {
            (0, 0) | (1, 1) => c,
            (0, 1) => -s,
            _ => s,
        };
        num_complex::Complex::new(v, T::zero())
    })
}
