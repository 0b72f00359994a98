//! Dense real symmetric helpers for the barrier solver.

use crate::qmath::ComplexMatrix;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct RMat<T> {
    pub n: usize,
    pub data: Vec<T>,
}

impl<T: Real> RMat<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    /// `self += s · other`
    pub fn add_scaled(&mut self, s: T, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * *b;
        }
    }

    pub fn scaled(&self, s: T) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|&v| v * s).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn trace(&self) -> T {
        (0..self.n).map(|i| self.at(i, i)).sum()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Real symmetric embedding `[[Re M, -Im M], [Im M, Re M]]` of a Hermitian matrix.
    pub fn embed(m: &ComplexMatrix<T>) -> Self {
        let d = m.dim();
        let mut out = Self::zeros(2 * d);
        for i in 0..d {
            for j in 0..d {
                let z = m[(i, j)];
                out.set(i, j, z.re);
                out.set(i + d, j + d, z.re);
                out.set(i, j + d, -z.im);
                out.set(i + d, j, z.im);
            }
        }
        out
    }

    /// Inverse of [`RMat::embed`], reading the left column of blocks.
    pub fn unembed(&self) -> ComplexMatrix<T> {
        let d = self.n / 2;
        let half = T::lit(0.5);
        ComplexMatrix::from_fn(d, |i, j| {
            let re = (self.at(i, j) + self.at(i + d, j + d)) * half;
            let im = (self.at(i + d, j) - self.at(i, j + d)) * half;
            num_complex::Complex::new(re, im)
        })
    }
}

/// `tr(A B)` for square matrices of equal size.
pub(crate) fn trace_product<T: Real>(a: &RMat<T>, b: &RMat<T>) -> T {
    let n = a.n;
    let mut acc = T::zero();
    for i in 0..n {
        for k in 0..n {
            acc += a.data[i * n + k] * b.data[k * n + i];
        }
    }
    acc
}

/// Lower Cholesky factor of a symmetric positive definite matrix, or `None`.
pub(crate) fn cholesky<T: Real>(m: &RMat<T>) -> Option<RMat<T>> {
    let n = m.n;
    let mut l = RMat::zeros(n);
    for j in 0..n {
        let mut d = m.at(j, j);
        for k in 0..j {
            d -= l.at(j, k) * l.at(j, k);
        }
        if !(d > T::zero()) {
            return None;
        }
        let djj = d.sqrt();
        l.set(j, j, djj);
        for i in (j + 1)..n {
            let mut s = m.at(i, j);
            for k in 0..j {
                s -= l.at(i, k) * l.at(j, k);
            }
            l.set(i, j, s / djj);
        }
    }
    Some(l)
}

/// Solves `L Lᵀ x = b`.
pub(crate) fn cholesky_solve<T: Real>(l: &RMat<T>, b: &[T]) -> Vec<T> {
    let n = l.n;
    let mut y = b.to_vec();
    for i in 0..n {
        let mut s = y[i];
        for k in 0..i {
            s -= l.at(i, k) * y[k];
        }
        y[i] = s / l.at(i, i);
    }
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s -= l.at(k, i) * y[k];
        }
        y[i] = s / l.at(i, i);
    }
    y
}

pub(crate) fn cholesky_inverse<T: Real>(l: &RMat<T>) -> RMat<T> {
    let n = l.n;
    let mut inv = RMat::zeros(n);
    let mut e = vec![T::zero(); n];
    for j in 0..n {
        e.iter_mut().for_each(|v| *v = T::zero());
        e[j] = T::one();
        let col = cholesky_solve(l, &e);
        for i in 0..n {
            inv.set(i, j, col[i]);
        }
    }
    // symmetrise away rounding
    for i in 0..n {
        for j in (i + 1)..n {
            let v = (inv.at(i, j) + inv.at(j, i)) * T::lit(0.5);
            inv.set(i, j, v);
            inv.set(j, i, v);
        }
    }
    inv
}

/// `L⁻¹ A L⁻ᵀ` for symmetric `A`.
pub(crate) fn congruence_by_inverse<T: Real>(l: &RMat<T>, a: &RMat<T>) -> RMat<T> {
    let n = l.n;
    // Y = L⁻¹ A (forward substitution per column)
    let mut y = RMat::zeros(n);
    for j in 0..n {
        for i in 0..n {
            let mut s = a.at(i, j);
            for k in 0..i {
                s -= l.at(i, k) * y.at(k, j);
            }
            y.set(i, j, s / l.at(i, i));
        }
    }
    // Z = Y L⁻ᵀ, i.e. Zᵀ = L⁻¹ Yᵀ
    let mut z = RMat::zeros(n);
    for j in 0..n {
        for i in 0..n {
            let mut s = y.at(j, i);
            for k in 0..i {
                s -= l.at(i, k) * z.at(j, k);
            }
            z.set(j, i, s / l.at(i, i));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let v = (z.at(i, j) + z.at(j, i)) * T::lit(0.5);
            z.set(i, j, v);
            z.set(j, i, v);
        }
    }
    z
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi.
pub(crate) fn sym_eigenvalues<T: Real>(m: &RMat<T>) -> Vec<T> {
    let n = m.n;
    let mut a = m.clone();
    let scale = a.max_abs();
    if scale == T::zero() {
        return vec![T::zero(); n];
    }
    let tiny = T::epsilon() * T::epsilon() * scale * scale;
    for _sweep in 0..60 {
        let mut off = T::zero();
        for i in 0..n {
            for j in (i + 1)..n {
                off += a.at(i, j) * a.at(i, j);
            }
        }
        if off <= tiny {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.at(p, q);
                if apq == T::zero() {
                    continue;
                }
                let theta = (a.at(q, q) - a.at(p, p)) / (apq + apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a.at(k, p);
                    let akq = a.at(k, q);
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..n {
                    let apk = a.at(p, k);
                    let aqk = a.at(q, k);
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
            }
        }
    }
    (0..n).map(|i| a.at(i, i)).collect()
}
