use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest operator dimension produced by [`ComplexMatrix::tensor`] (three qubits).
pub const MAX_TENSOR_DIM: usize = 8;

/// Dense square complex matrix stored row-major.
///
/// Qubit operators live in dimensions 2, 4 and 8. Larger square matrices are
/// permitted for internal bookkeeping but [`ComplexMatrix::tensor`] refuses to
/// build them.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Builds a matrix from row-major entries; the entry count must be a square.
    pub fn from_vec(dim: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::BadDimension {
                expected: dim * dim,
                actual: data.len(),
            });
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Real-valued matrix from row-major `f64` entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        let data = entries
            .iter()
            .map(|&x| Complex::new(T::lit(x), T::zero()))
            .collect();
        Self::from_vec(dim, data)
    }

    pub fn diag(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex::new(v, T::zero());
        }
        m
    }

    /// `|u⟩⟨v|`
    pub fn outer(u: &[Complex<T>], v: &[Complex<T>]) -> Self {
        assert_eq!(u.len(), v.len(), "outer product of unequal vectors");
        Self::from_fn(u.len(), |i, j| u[i] * v[j].conj())
    }

    /// Matrix unit `|i⟩⟨j|`.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(i, j)] = Complex::new(T::one(), T::zero());
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex<T>> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::new(T::zero(), T::zero()), |acc, i| {
            acc + self[(i, i)]
        })
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] = out.data[i * n + j] + a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    /// `A ρ A†`
    pub fn sandwich(&self, rho: &Self) -> Self {
        self.matmul(rho).matmul(&self.adjoint())
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) - &rhs.matmul(self)
    }

    pub fn anticommutator(&self, rhs: &Self) -> Self {
        &self.matmul(rhs) + &rhs.matmul(self)
    }

    /// `tr(self · rhs)` without forming the product.
    pub fn trace_product(&self, rhs: &Self) -> Complex<T> {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..n {
            for k in 0..n {
                acc = acc + self.data[i * n + k] * rhs.data[k * n + i];
            }
        }
        acc
    }

    /// Largest entrywise modulus.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    /// Largest entrywise distance to `other`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.dim == other.dim && self.max_abs_diff(other) <= tol
    }

    /// Largest entrywise deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> T {
        let n = self.dim;
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermiticity_error() <= tol
    }

    /// `(M + M†)/2`
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * half)
    }

    /// Kronecker product without the qubit-dimension cap.
    pub(crate) fn kron(&self, rhs: &Self) -> Self {
        let (m, n) = (self.dim, rhs.dim);
        Self::from_fn(m * n, |r, c| {
            self[(r / n, c / n)] * rhs[(r % n, c % n)]
        })
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn tensor(&self, rhs: &Self) -> Result<Self> {
        let dim = self.dim * rhs.dim;
        if dim > MAX_TENSOR_DIM {
            return Err(Error::DimensionOverflow { dim });
        }
        Ok(self.kron(rhs))
    }

    /// Partial trace of a two-qubit operator, keeping subsystem `keep` (0 or 1).
    pub fn partial_trace(&self, keep: usize) -> Result<Self> {
        if self.dim != 4 {
            return Err(Error::BadDimension {
                expected: 4,
                actual: self.dim,
            });
        }
        if keep > 1 {
            return Err(Error::InvalidArgument(format!(
                "subsystem index {keep} out of range for two qubits"
            )));
        }
        Ok(self.reduce_to_qubit(2, keep))
    }

    /// Reduced operator on qubit `keep` of an `n`-qubit operator (qubit 0 is
    /// the most significant tensor factor).
    pub(crate) fn reduce_to_qubit(&self, num_qubits: usize, keep: usize) -> Self {
        debug_assert_eq!(self.dim, 1 << num_qubits);
        let shift = num_qubits - 1 - keep;
        let mut out = Self::zeros(2);
        for r in 0..self.dim {
            for c in 0..self.dim {
                let rest_r = r & !(1 << shift);
                let rest_c = c & !(1 << shift);
                if rest_r != rest_c {
                    continue;
                }
                let (i, j) = ((r >> shift) & 1, (c >> shift) & 1);
                out[(i, j)] = out[(i, j)] + self[(r, c)];
            }
        }
        out
    }
}

impl<T> Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Add for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn add(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> AddAssign<&ComplexMatrix<T>> for ComplexMatrix<T> {
    fn add_assign(&mut self, rhs: &ComplexMatrix<T>) {
        assert_eq!(self.dim, rhs.dim, "add dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a = *a + *b;
        }
    }
}

impl<T: Real> Sub for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn sub(self, rhs: Self) -> ComplexMatrix<T> {
        assert_eq!(self.dim, rhs.dim, "sub dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Neg for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn neg(self) -> ComplexMatrix<T> {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl<T: Real> Mul for &ComplexMatrix<T> {
    type Output = ComplexMatrix<T>;

    fn mul(self, rhs: Self) -> ComplexMatrix<T> {
        self.matmul(rhs)
    }
}

impl<T: fmt::Debug> fmt::Debug for ComplexMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim.max(1)) {
            write!(f, "  ")?;
            for z in row {
                write!(f, "{:.6?}  ", z)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}
