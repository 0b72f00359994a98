use super::setting::{MeasurementSetting, Outcome};
use crate::channels::QubitMap;
use crate::error::{Error, Result};
use crate::qmath::{hermitian_eig, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Unnormalised conditional states `p(a|m1) σ_{a|m1}(t2)` for `m1 ∈ {X, Y, Z}`
/// and `a ∈ {+1, -1}`.
#[derive(Clone, Debug)]
pub struct Assemblage<T> {
    members: [[ComplexMatrix<T>; 2]; 3],
}

impl<T: Real> Assemblage<T> {
    /// Checks Hermiticity, positivity, per-setting normalisation and
    /// no-signalling of the members.
    pub fn new(members: [[ComplexMatrix<T>; 2]; 3]) -> Result<Self> {
        let tol = Tolerances::<T>::default();
        for pair in &members {
            for m in pair {
                if m.dim() != 2 {
                    return Err(Error::BadDimension {
                        expected: 2,
                        actual: m.dim(),
                    });
                }
                if m.hermiticity_error() > tol.hermitian {
                    return Err(Error::NonHermitian {
                        deviation: m.hermiticity_error().to_f64_lossy(),
                    });
                }
                if hermitian_eig(m)?.min_value() < -tol.psd_slack {
                    return Err(Error::InvalidState("assemblage member is not positive".into()));
                }
            }
        }
        let asm = Self { members };
        for m in 0..3 {
            let norm = asm.reduced_state(m).trace().re;
            if (norm - T::one()).abs() > tol.assemblage_norm {
                return Err(Error::InvalidState(format!(
                    "setting {m}: outcome probabilities sum to {norm}"
                )));
            }
        }
        let r0 = asm.reduced_state(0);
        for m in 1..3 {
            let dev = asm.reduced_state(m).max_abs_diff(&r0);
            if dev > tol.assemblage_nosignal {
                return Err(Error::InvalidState(format!(
                    "assemblage signals: setting {m} reduced state differs by {dev:e}"
                )));
            }
        }
        Ok(asm)
    }

    /// Skips the consistency checks, for reconstructions from finite samples.
    pub fn new_unchecked(members: [[ComplexMatrix<T>; 2]; 3]) -> Self {
        Self { members }
    }

    /// `p(a|m) σ_{a|m}`; `m` indexes `X, Y, Z`.
    pub fn member(&self, m: usize, a: Outcome) -> &ComplexMatrix<T> {
        &self.members[m][a.index()]
    }

    pub fn probability(&self, m: usize, a: Outcome) -> T {
        self.member(m, a).trace().re
    }

    /// Normalised `σ_{a|m}`, or `None` for an outcome of probability zero.
    pub fn conditional_state(&self, m: usize, a: Outcome) -> Option<ComplexMatrix<T>> {
        let p = self.probability(m, a);
        (p > T::epsilon()).then(|| self.member(m, a).scale_real(T::one() / p))
    }

    /// `Σ_a p(a|m) σ_{a|m}`
    pub fn reduced_state(&self, m: usize) -> ComplexMatrix<T> {
        &self.members[m][0] + &self.members[m][1]
    }
}

/// `p(a|m1) σ_{a|m1}(t2) = Λ(Π_{a|m1} ρ0 Π_{a|m1})` for the three Pauli settings.
pub fn build_assemblage<T: Real>(
    channel: &(impl QubitMap<T> + ?Sized),
    rho0: &DensityMatrix<T>,
) -> Result<Assemblage<T>> {
    let members = MeasurementSetting::paulis().map(|m| {
        Outcome::ALL.map(|a| channel.apply_operator(&m.project(a, rho0.matrix())).hermitian_part())
    });
    Assemblage::new(members)
}
