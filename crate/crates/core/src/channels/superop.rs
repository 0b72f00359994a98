use num_complex::Complex;

use super::QubitMap;
use crate::error::{Error, Result};
use crate::qmath::{hermitian_eig, ComplexMatrix};
use crate::scalar::Real;

/// A qubit map stored as its action on the matrix units:
/// `images[2i + j] = Λ(|i⟩⟨j|)`.
#[derive(Clone, Debug)]
pub struct Superoperator<T> {
    images: [ComplexMatrix<T>; 4],
}

impl<T: Real> Superoperator<T> {
    pub fn from_images(images: [ComplexMatrix<T>; 4]) -> Result<Self> {
        if images.iter().any(|m| m.dim() != 2) {
            return Err(Error::DimensionMismatch(
                "superoperator images must be 2x2".into(),
            ));
        }
        Ok(Self { images })
    }

    /// Samples an arbitrary linear map on the four matrix units.
    pub fn from_map(map: &(impl QubitMap<T> + ?Sized)) -> Self {
        let images = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .map(|(i, j)| map.apply_operator(&ComplexMatrix::unit(2, i, j)));
        Self { images }
    }

    pub fn identity() -> Self {
        Self {
            images: [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(i, j)| ComplexMatrix::unit(2, i, j)),
        }
    }

    pub fn image(&self, i: usize, j: usize) -> &ComplexMatrix<T> {
        &self.images[2 * i + j]
    }

    /// Choi matrix `J = Σ_ij |i⟩⟨j| ⊗ Λ(|i⟩⟨j|)`, trace 2 for a trace-preserving map.
    pub fn choi(&self) -> ComplexMatrix<T> {
        ComplexMatrix::from_fn(4, |r, c| {
            let (i, k) = (r / 2, r % 2);
            let (j, l) = (c / 2, c % 2);
            self.images[2 * i + j][(k, l)]
        })
    }

    pub fn from_choi(choi: &ComplexMatrix<T>) -> Result<Self> {
        if choi.dim() != 4 {
            return Err(Error::BadDimension {
                expected: 4,
                actual: choi.dim(),
            });
        }
        let images = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .map(|(i, j)| ComplexMatrix::from_fn(2, |k, l| choi[(2 * i + k, 2 * j + l)]));
        Ok(Self { images })
    }

    /// `Λ_2 ∘ Λ_1` where `self = Λ_1`.
    pub fn then(&self, next: &Self) -> Self {
        Self {
            images: self.images.clone().map(|m| next.apply_operator(&m)),
        }
    }

    /// Most negative Choi eigenvalue (zero or positive for a CP map).
    pub fn min_choi_eigenvalue(&self) -> Result<T> {
        Ok(hermitian_eig(&self.choi().hermitian_part())?.min_value())
    }

    /// Deviation from trace preservation, `max |tr_out J - 𝕀|`.
    pub fn trace_preservation_error(&self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { T::one() } else { T::zero() };
                let tr = self.images[2 * i + j].trace();
                worst = worst.max((tr - Complex::new(expected, T::zero())).norm());
            }
        }
        worst
    }

    /// Largest entrywise distance between Choi matrices.
    pub fn choi_distance(&self, other: &Self) -> T {
        self.choi().max_abs_diff(&other.choi())
    }
}

impl<T: Real> QubitMap<T> for Superoperator<T> {
    fn apply_operator(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let mut out = ComplexMatrix::zeros(2);
        for i in 0..2 {
            for j in 0..2 {
                let coeff = op[(i, j)];
                if coeff.norm_sqr() > T::zero() {
                    out += &self.images[2 * i + j].scale(coeff);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{standard_channel, ChannelKind};

    #[test]
    fn identity_choi_is_unnormalised_bell_projector() {
        let j = Superoperator::<f64>::identity().choi();
        for r in 0..4 {
            for c in 0..4 {
                let expected = if (r == 0 || r == 3) && (c == 0 || c == 3) { 1.0 } else { 0.0 };
                assert_eq!(j[(r, c)].re, expected);
            }
        }
    }

    #[test]
    fn choi_round_trip_and_composition() {
        let ad = standard_channel(ChannelKind::AmplitudeDamping, 0.3).unwrap();
        let s = Superoperator::from_map(&ad);
        let back = Superoperator::from_choi(&s.choi()).unwrap();
        assert!(s.choi_distance(&back) < 1e-15);
        // two damping steps compose multiplicatively in (1 - η)
        let twice = s.then(&s);
        let direct = Superoperator::from_map(
            &standard_channel(ChannelKind::AmplitudeDamping, 1.0 - 0.7 * 0.7).unwrap(),
        );
        assert!(twice.choi_distance(&direct) < 1e-14);
        assert!(s.min_choi_eigenvalue().unwrap() > -1e-14);
        assert!(s.trace_preservation_error() < 1e-15);
    }
}
