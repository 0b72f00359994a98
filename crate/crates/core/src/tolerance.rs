use crate::scalar::Real;

/// Every numerical tolerance used by invariant checks, in one place.
///
/// Defaults are tuned for `f64`. For lower precision scalars each value is
/// floored at a fixed multiple of machine epsilon so that checks remain
/// meaningful.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    /// Hermiticity of density matrices and Hamiltonians.
    pub hermitian: T,
    /// Hermiticity required on input to the eigensolver.
    pub eig_input: T,
    /// Unit trace of density matrices.
    pub trace: T,
    /// Most negative eigenvalue accepted for a density matrix.
    pub psd_slack: T,
    /// Kraus completeness `Σ K†K = I`.
    pub completeness: T,
    /// Trace of a reconstructed process matrix.
    pub chi_trace: T,
    /// Hermiticity of a reconstructed process matrix.
    pub chi_hermitian: T,
    /// Trace and Hermiticity drift along an integrated trajectory.
    pub trajectory_trace: T,
    /// Most negative eigenvalue accepted along an integrated trajectory.
    pub trajectory_psd_slack: T,
    /// Per-setting normalisation of an assemblage.
    pub assemblage_norm: T,
    /// No-signalling consistency of an assemblage.
    pub assemblage_nosignal: T,
    /// Norm of a measurement axis.
    pub axis_norm: T,
    /// Target duality gap of the SDP solver.
    pub sdp_gap: T,
    /// Negative TSR objective values above this are clipped to zero silently.
    pub tsr_clip: T,
}

impl<T: Real> Tolerances<T> {
    fn floored(value: f64, eps_multiple: f64) -> T {
        let floor = T::epsilon() * T::lit(eps_multiple);
        T::lit(value).max(floor)
    }
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            hermitian: Self::floored(1e-10, 64.0),
            eig_input: Self::floored(1e-9, 64.0),
            trace: Self::floored(1e-10, 64.0),
            psd_slack: Self::floored(1e-9, 256.0),
            completeness: Self::floored(1e-9, 64.0),
            chi_trace: Self::floored(1e-6, 256.0),
            chi_hermitian: Self::floored(1e-9, 256.0),
            trajectory_trace: Self::floored(1e-8, 1024.0),
            trajectory_psd_slack: Self::floored(1e-7, 1024.0),
            assemblage_norm: Self::floored(1e-9, 256.0),
            assemblage_nosignal: Self::floored(1e-8, 256.0),
            axis_norm: Self::floored(1e-12, 16.0),
            sdp_gap: Self::floored(1e-6, 1e4),
            tsr_clip: Self::floored(1e-7, 1e4),
        }
    }
}
