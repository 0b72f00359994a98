use super::probability::correlator;
use super::setting::MeasurementSetting;
use crate::channels::QubitMap;
use crate::error::{Error, Result};
use crate::qmath::{pauli, trace_norm, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// `R = ¼ Σ_ij C_ij σ_i ⊗ σ_j` over `{𝕀, σ_x, σ_y, σ_z}`.
#[derive(Clone, Debug)]
pub struct PseudoDensityMatrix<T> {
    matrix: ComplexMatrix<T>,
    correlators: [[T; 4]; 4],
}

fn assemble<T: Real>(c: &[[T; 4]; 4]) -> ComplexMatrix<T> {
    let mut r = ComplexMatrix::zeros(4);
    for (i, row) in c.iter().enumerate() {
        for (j, &cij) in row.iter().enumerate() {
            if cij != T::zero() {
                let term = pauli::basis::<T>(i).tensor(&pauli::basis(j)).expect("4x4");
                r += &term.scale_real(cij * T::lit(0.25));
            }
        }
    }
    r
}

impl<T: Real> PseudoDensityMatrix<T> {
    /// Builds `R` from a table of two-time correlators with `C_𝕀𝕀 = 1`.
    pub fn from_correlators(correlators: [[T; 4]; 4]) -> Result<Self> {
        if correlators.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite correlator".into()));
        }
        let tol = T::lit(1e-9).max(T::epsilon() * T::lit(64.0));
        if (correlators[0][0] - T::one()).abs() > tol {
            return Err(Error::InvalidArgument(format!(
                "C_II = {}, expected 1",
                correlators[0][0]
            )));
        }
        Ok(Self {
            matrix: assemble(&correlators),
            correlators,
        })
    }

    /// Reads the correlators `C_ij = tr((σ_i ⊗ σ_j) R)` off a Hermitian
    /// unit-trace 4×4 matrix.
    pub fn from_matrix(matrix: ComplexMatrix<T>) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::BadDimension {
                expected: 4,
                actual: matrix.dim(),
            });
        }
        let tol = Tolerances::<T>::default();
        if matrix.hermiticity_error() > tol.hermitian {
            return Err(Error::NonHermitian {
                deviation: matrix.hermiticity_error().to_f64_lossy(),
            });
        }
        let mut c = [[T::zero(); 4]; 4];
        for (i, row) in c.iter_mut().enumerate() {
            for (j, cij) in row.iter_mut().enumerate() {
                let op = pauli::basis::<T>(i).tensor(&pauli::basis(j))?;
                *cij = op.trace_product(&matrix).re;
            }
        }
        Self::from_correlators(c)
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    /// `C_ij` with index 0 for `𝕀` and 1, 2, 3 for `x, y, z`.
    pub fn correlators(&self) -> &[[T; 4]; 4] {
        &self.correlators
    }
}

/// Two-time Pauli correlators of the channel, assembled into `R`.
pub fn build_pdm<T: Real>(
    channel: &(impl QubitMap<T> + ?Sized),
    rho0: &DensityMatrix<T>,
) -> PseudoDensityMatrix<T> {
    let paulis = MeasurementSetting::paulis();
    let evolved = channel.apply_operator(rho0.matrix());
    let mut c = [[T::zero(); 4]; 4];
    c[0][0] = T::one();
    for j in 1..4 {
        c[0][j] = pauli::basis::<T>(j).trace_product(&evolved).re;
        c[j][0] = rho0.expectation(&pauli::basis(j));
    }
    for i in 1..4 {
        for j in 1..4 {
            c[i][j] = correlator(channel, &paulis[i - 1], &paulis[j - 1], rho0);
        }
    }
    PseudoDensityMatrix {
        matrix: assemble(&c),
        correlators: c,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FValue<T> {
    /// `max(0, ‖R‖_tr - 1)`
    pub value: T,
    /// `‖R‖_tr - 1`
    pub raw: T,
}

/// `f = ‖R‖_tr - 1`
pub fn compute_f<T: Real>(r: &PseudoDensityMatrix<T>) -> Result<FValue<T>> {
    let raw = trace_norm(r.matrix())? - T::one();
    Ok(FValue {
        value: raw.max(T::zero()),
        raw,
    })
}
