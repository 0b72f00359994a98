use num_complex::Complex;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

const MAX_SWEEPS: usize = 64;

/// Spectral decomposition `M = V diag(λ) V†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct EigenDecomposition<T> {
    /// Eigenvalues in descending order.
    pub values: Vec<T>,
    /// Unitary whose columns are the matching eigenvectors.
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> EigenDecomposition<T> {
    /// `V f(λ) V†`
    pub fn map_values(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let n = self.values.len();
        let fv: Vec<T> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, |i, j| {
            (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, k| {
                acc + v[(i, k)] * v[(j, k)].conj() * fv[k]
            })
        })
    }

    pub fn reconstruct(&self) -> ComplexMatrix<T> {
        self.map_values(|l| l)
    }

    pub fn min_value(&self) -> T {
        *self.values.last().expect("non-empty spectrum")
    }
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// Dimension 2 uses the closed-form rotation; larger dimensions run cyclic
/// complex Jacobi sweeps until the off-diagonal mass is at rounding level.
pub fn hermitian_eig<T: Real>(m: &ComplexMatrix<T>) -> Result<EigenDecomposition<T>> {
    hermitian_eig_with(m, &Tolerances::default())
}

pub fn hermitian_eig_with<T: Real>(
    m: &ComplexMatrix<T>,
    tol: &Tolerances<T>,
) -> Result<EigenDecomposition<T>> {
    let deviation = m.hermiticity_error();
    let scale = T::one().max(m.max_abs());
    if deviation > tol.eig_input * scale {
        return Err(Error::NonHermitian {
            deviation: deviation.to_f64_lossy(),
        });
    }
    let mut a = m.hermitian_part();
    let n = a.dim();
    let mut v = ComplexMatrix::identity(n);
    if n >= 2 {
        jacobi(&mut a, &mut v);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.partial_cmp(&a[(i, i)].re).unwrap());
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(EigenDecomposition { values, vectors })
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>) {
    let n = a.dim();
    let total = a.frobenius_norm();
    if total == T::zero() {
        return;
    }
    let threshold = total * T::epsilon();
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(a) <= threshold {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(a, v, p, q, threshold);
            }
        }
    }
}

/// Annihilates `a[p][q]` with the unitary `G = diag(1, e^{-iφ}) · J(c, s)`.
fn rotate<T: Real>(
    a: &mut ComplexMatrix<T>,
    v: &mut ComplexMatrix<T>,
    p: usize,
    q: usize,
    threshold: T,
) {
    let apq = a[(p, q)];
    let r = apq.norm();
    if r <= threshold * T::lit(1e-3) {
        a[(p, q)] = Complex::new(T::zero(), T::zero());
        a[(q, p)] = Complex::new(T::zero(), T::zero());
        return;
    }
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (r + r);
    let t = if theta == T::zero() {
        T::one()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;
    let pc = phase.conj();
    let zero = T::zero();
    let g_pp = Complex::new(c, zero);
    let g_pq = Complex::new(s, zero);
    let g_qp = pc * (-s);
    let g_qq = pc * c;

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = Complex::new(zero, zero);
    a[(q, p)] = Complex::new(zero, zero);
    a[(p, p)] = Complex::new(a[(p, p)].re, zero);
    a[(q, q)] = Complex::new(a[(q, q)].re, zero);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm<T: Real>(m: &ComplexMatrix<T>) -> Result<T> {
    Ok(hermitian_eig(m)?.values.iter().map(|l| l.abs()).sum())
}

/// Principal square root of a positive semidefinite matrix; negative rounding
/// noise in the spectrum is clipped to zero.
pub fn sqrt_psd<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    Ok(hermitian_eig(m)?.map_values(|l| l.max(T::zero()).sqrt()))
}
