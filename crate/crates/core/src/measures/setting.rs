use crate::error::{Error, Result};
use crate::qmath::{pauli, ComplexMatrix};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Outcome of a two-valued projective measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const ALL: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    /// `+1` or `-1`.
    pub fn sign<T: Real>(self) -> T {
        match self {
            Outcome::Plus => T::one(),
            Outcome::Minus => -T::one(),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Outcome::Plus => 0,
            Outcome::Minus => 1,
        }
    }
}

/// Projective measurement of `n·σ` with effects `Π_± = (𝕀 ± n·σ)/2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementSetting<T> {
    axis: [T; 3],
}

impl<T: Real> MeasurementSetting<T> {
    pub fn new(axis: [T; 3]) -> Result<Self> {
        let norm = axis.iter().map(|&v| v * v).sum::<T>().sqrt();
        if !((norm - T::one()).abs() <= Tolerances::<T>::default().axis_norm) {
            return Err(Error::InvalidArgument(format!(
                "measurement axis has norm {norm}, expected 1"
            )));
        }
        Ok(Self { axis })
    }

    pub fn x() -> Self {
        Self {
            axis: [T::one(), T::zero(), T::zero()],
        }
    }

    pub fn y() -> Self {
        Self {
            axis: [T::zero(), T::one(), T::zero()],
        }
    }

    pub fn z() -> Self {
        Self {
            axis: [T::zero(), T::zero(), T::one()],
        }
    }

    /// `σ_x`, `σ_y`, `σ_z` in that order.
    pub fn paulis() -> [Self; 3] {
        [Self::x(), Self::y(), Self::z()]
    }

    pub fn axis(&self) -> [T; 3] {
        self.axis
    }

    /// The observable `n·σ`.
    pub fn observable(&self) -> ComplexMatrix<T> {
        pauli::dot(self.axis)
    }

    pub fn effect(&self, outcome: Outcome) -> ComplexMatrix<T> {
        let half = T::lit(0.5);
        let n = self.observable().scale_real(outcome.sign::<T>() * half);
        &ComplexMatrix::identity(2).scale_real(half) + &n
    }

    /// Lüders update `Π ρ Π`, left unnormalised.
    pub fn project(&self, outcome: Outcome, rho: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        self.effect(outcome).sandwich(rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn effects_resolve_identity() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let m = MeasurementSetting::new([0.0, h, h]).unwrap();
        let sum = &m.effect(Outcome::Plus) + &m.effect(Outcome::Minus);
        assert!(sum.approx_eq(&ComplexMatrix::identity(2), 1e-15));
        let p = m.effect(Outcome::Plus);
        assert!(p.matmul(&p).approx_eq(&p, 1e-15));
    }

    #[test]
    fn axis_must_be_unit() {
        assert!(MeasurementSetting::new([1.0, 1.0, 0.0]).is_err());
        assert!(MeasurementSetting::new([f64::NAN, 0.0, 0.0]).is_err());
    }
}
