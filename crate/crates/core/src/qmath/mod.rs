//! Dense complex linear algebra for one to three qubits.

mod eig;
mod matrix;
pub mod pauli;
mod state;

pub use eig::{hermitian_eig, hermitian_eig_with, sqrt_psd, trace_norm, EigenDecomposition};
pub use matrix::{ComplexMatrix, MAX_TENSOR_DIM};
pub use state::{BlochVector, DensityMatrix};

pub(crate) use state::check_state;

/// Kronecker product `a ⊗ b`; fails beyond dimension 8.
pub fn tensor<T: crate::Real>(
    a: &ComplexMatrix<T>,
    b: &ComplexMatrix<T>,
) -> crate::Result<ComplexMatrix<T>> {
    a.tensor(b)
}

/// Reduced operator of a two-qubit matrix on subsystem `keep`.
pub fn partial_trace<T: crate::Real>(
    m: &ComplexMatrix<T>,
    keep: usize,
) -> crate::Result<ComplexMatrix<T>> {
    m.partial_trace(keep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use proptest::prelude::*;

    type M = ComplexMatrix<f64>;

    fn arbitrary4(v: &[f64]) -> M {
        M::from_fn(4, |i, j| Complex::new(v[2 * (4 * i + j)], v[2 * (4 * i + j) + 1]))
    }

    proptest! {
        #[test]
        fn partial_trace_linear_and_trace_preserving(
            a in prop::collection::vec(-1.0f64..1.0, 32),
            b in prop::collection::vec(-1.0f64..1.0, 32),
            alpha in -2.0f64..2.0,
        ) {
            let (ma, mb) = (arbitrary4(&a), arbitrary4(&b));
            let combo = &ma.scale_real(alpha) + &mb;
            for keep in 0..2 {
                let lhs = partial_trace(&combo, keep).unwrap();
                let rhs = &partial_trace(&ma, keep).unwrap().scale_real(alpha)
                    + &partial_trace(&mb, keep).unwrap();
                prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
                prop_assert!((lhs.trace() - combo.trace()).norm() < 1e-12);
            }
        }

        #[test]
        fn partial_trace_of_tensor(
            a in prop::collection::vec(-1.0f64..1.0, 8),
            b in prop::collection::vec(-1.0f64..1.0, 8),
        ) {
            let ma = M::from_fn(2, |i, j| Complex::new(a[2 * (2 * i + j)], a[2 * (2 * i + j) + 1]));
            let mb = M::from_fn(2, |i, j| Complex::new(b[2 * (2 * i + j)], b[2 * (2 * i + j) + 1]));
            let joint = tensor(&ma, &mb).unwrap();
            let expected = ma.scale(mb.trace());
            prop_assert!(partial_trace(&joint, 0).unwrap().max_abs_diff(&expected) < 1e-10);
        }
    }
}
