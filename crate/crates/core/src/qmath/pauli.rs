//! Pauli operators and the ladder operators of a single qubit.
//!
//! Basis ordering is `|0⟩, |1⟩` with `σ_z|0⟩ = |0⟩`; `|1⟩` is the excited level.

use num_complex::Complex;

use super::matrix::ComplexMatrix;
use crate::scalar::Real;

fn c<T: Real>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

pub fn identity<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::identity(2)
}

pub fn x<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_vec(2, vec![c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]).unwrap()
}

pub fn y<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_vec(2, vec![c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]).unwrap()
}

pub fn z<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::from_vec(2, vec![c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]).unwrap()
}

/// `σ_- = |0⟩⟨1|`, the lowering operator.
pub fn sigma_minus<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::unit(2, 0, 1)
}

/// `σ_+ = |1⟩⟨0|`
pub fn sigma_plus<T: Real>() -> ComplexMatrix<T> {
    ComplexMatrix::unit(2, 1, 0)
}

/// `{𝕀, σ_x, σ_y, σ_z}` indexed 0..4.
pub fn basis<T: Real>(index: usize) -> ComplexMatrix<T> {
    match index {
        0 => identity(),
        1 => x(),
        2 => y(),
        3 => z(),
        _ => panic!("Pauli index {index} out of range"),
    }
}

/// `n·σ` for a real 3-vector.
pub fn dot<T: Real>(n: [T; 3]) -> ComplexMatrix<T> {
    let zero = T::zero();
    ComplexMatrix::from_vec(
        2,
        vec![
            Complex::new(n[2], zero),
            Complex::new(n[0], -n[1]),
            Complex::new(n[0], n[1]),
            Complex::new(-n[2], zero),
        ],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = ComplexMatrix<f64>;

    fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
        match (i, j, k) {
            (1, 2, 3) | (2, 3, 1) | (3, 1, 2) => 1.0,
            (3, 2, 1) | (1, 3, 2) | (2, 1, 3) => -1.0,
            _ => 0.0,
        }
    }

    #[test]
    fn product_rule_exhaustive() {
        for i in 1..4 {
            for j in 1..4 {
                let lhs = basis::<f64>(i).matmul(&basis(j));
                let mut rhs = if i == j { M::identity(2) } else { M::zeros(2) };
                for k in 1..4 {
                    let eps = levi_civita(i, j, k);
                    if eps != 0.0 {
                        rhs += &basis::<f64>(k).scale(Complex::new(0.0, eps));
                    }
                }
                assert!(lhs.approx_eq(&rhs, 0.0), "σ{i}σ{j}");
            }
        }
    }

    #[test]
    fn ladder_operators() {
        let lowered = sigma_minus::<f64>().matmul(&sigma_plus());
        assert!(lowered.approx_eq(&M::diag(&[1.0, 0.0]), 0.0));
        let sx = &sigma_plus::<f64>() + &sigma_minus();
        assert!(sx.approx_eq(&x(), 0.0));
    }

    #[test]
    fn dot_matches_components() {
        let n = [0.3, -0.4, 0.5];
        let built = &(&x::<f64>().scale_real(n[0]) + &y::<f64>().scale_real(n[1]))
            + &z::<f64>().scale_real(n[2]);
        assert!(dot(n).approx_eq(&built, 1e-16));
    }
}
