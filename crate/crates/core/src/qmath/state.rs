use num_complex::Complex;

use super::eig::hermitian_eig;
use super::matrix::ComplexMatrix;
use super::pauli;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Positive semidefinite, unit-trace Hermitian operator on one to three qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::new_with(matrix, &Tolerances::default())
    }

    pub fn new_with(matrix: ComplexMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        check_state(&matrix, tol.hermitian, tol.trace, tol.psd_slack)?;
        Ok(Self {
            matrix: matrix.hermitian_part(),
        })
    }

    /// Wraps a matrix the caller has already validated against its own slack.
    pub(crate) fn from_checked(matrix: ComplexMatrix<T>) -> Self {
        Self { matrix }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(T::one() / T::lit(dim as f64)),
        }
    }

    /// Computational basis state `|k⟩⟨k|`.
    pub fn basis_state(dim: usize, k: usize) -> Self {
        Self {
            matrix: ComplexMatrix::unit(dim, k, k),
        }
    }

    /// `|ψ⟩⟨ψ|` for a normalised ket.
    pub fn pure(ket: &[Complex<T>]) -> Result<Self> {
        let norm: T = ket.iter().map(|z| z.norm_sqr()).sum();
        if (norm - T::one()).abs() > T::lit(1e-10).max(T::epsilon() * T::lit(64.0)) {
            return Err(Error::InvalidState(format!(
                "ket norm² = {norm}, expected 1"
            )));
        }
        Ok(Self {
            matrix: ComplexMatrix::outer(ket, ket),
        })
    }

    pub fn from_bloch(b: BlochVector<T>) -> Result<Self> {
        b.check()?;
        let half = T::lit(0.5);
        let m = &ComplexMatrix::identity(2) + &pauli::dot([b.x, b.y, b.z]);
        Ok(Self {
            matrix: m.scale_real(half),
        })
    }

    #[inline]
    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `tr(O ρ)` for a Hermitian observable.
    pub fn expectation(&self, observable: &ComplexMatrix<T>) -> T {
        observable.trace_product(&self.matrix).re
    }

    /// Bloch vector of a single-qubit state.
    pub fn bloch(&self) -> Result<BlochVector<T>> {
        BlochVector::of(&self.matrix)
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.tensor(&other.matrix)?,
        })
    }

    pub fn partial_trace(&self, keep: usize) -> Result<Self> {
        Ok(Self {
            matrix: self.matrix.partial_trace(keep)?,
        })
    }
}

/// Checks Hermiticity, unit trace and a PSD slack on a candidate state.
pub(crate) fn check_state<T: Real>(
    m: &ComplexMatrix<T>,
    herm_tol: T,
    trace_tol: T,
    psd_slack: T,
) -> Result<()> {
    let herm = m.hermiticity_error();
    if herm > herm_tol {
        return Err(Error::InvalidState(format!(
            "not Hermitian (deviation {herm:e})"
        )));
    }
    let tr = m.trace();
    if (tr.re - T::one()).abs() > trace_tol || tr.im.abs() > trace_tol {
        return Err(Error::InvalidState(format!(
            "trace {} + {}i differs from 1",
            tr.re, tr.im
        )));
    }
    let min = hermitian_eig(&m.hermitian_part())?.min_value();
    if min < -psd_slack {
        return Err(Error::InvalidState(format!(
            "negative eigenvalue {min:e}"
        )));
    }
    Ok(())
}

/// Geometric (Bloch ball) view of a single-qubit state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochVector<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> BlochVector<T> {
    pub fn new(x: T, y: T, z: T) -> Result<Self> {
        let b = Self { x, y, z };
        b.check()?;
        Ok(b)
    }

    fn check(&self) -> Result<()> {
        if self.norm() > T::one() + T::lit(1e-9).max(T::epsilon() * T::lit(64.0)) {
            return Err(Error::InvalidState(format!(
                "Bloch vector norm {} exceeds 1",
                self.norm()
            )));
        }
        Ok(())
    }

    /// Reads `(⟨σ_x⟩, ⟨σ_y⟩, ⟨σ_z⟩)` from any 2×2 operator.
    pub fn of(m: &ComplexMatrix<T>) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::BadDimension {
                expected: 2,
                actual: m.dim(),
            });
        }
        let two = T::lit(2.0);
        Ok(Self {
            x: two * m[(0, 1)].re,
            y: -two * m[(0, 1)].im,
            z: m[(0, 0)].re - m[(1, 1)].re,
        })
    }

    pub fn norm(&self) -> T {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    #[test]
    fn maximally_mixed_is_valid() {
        let rho = DensityMatrix::<f64>::maximally_mixed(2);
        assert!(DensityMatrix::new(rho.matrix().clone()).is_ok());
        assert_eq!(rho.bloch().unwrap().norm(), 0.0);
    }

    #[test]
    fn rejects_bad_trace_and_negativity() {
        assert!(DensityMatrix::new(M::diag(&[0.5, 0.4])).is_err());
        assert!(DensityMatrix::new(M::diag(&[1.1, -0.1])).is_err());
        assert!(DensityMatrix::new(M::from_real(2, &[0.5, 0.1, 0.0, 0.5]).unwrap()).is_err());
    }

    #[test]
    fn accepts_rounding_level_negativity() {
        assert!(DensityMatrix::new(M::diag(&[1.0 + 5e-10, -5e-10])).is_ok());
    }

    #[test]
    fn bloch_round_trip() {
        let b = BlochVector::<f64>::new(0.3, -0.2, 0.6).unwrap();
        let rho = DensityMatrix::from_bloch(b).unwrap();
        let back = rho.bloch().unwrap();
        assert!((back.x - 0.3).abs() < 1e-15);
        assert!((back.y + 0.2).abs() < 1e-15);
        assert!((back.z - 0.6).abs() < 1e-15);
        assert!(BlochVector::new(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn pure_state_requires_normalised_ket() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = [Complex::new(s, 0.0), Complex::new(s, 0.0)];
        let rho = DensityMatrix::pure(&plus).unwrap();
        assert!((rho.bloch().unwrap().x - 1.0).abs() < 1e-15);
        assert!(DensityMatrix::pure(&[Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)]).is_err());
    }
}
