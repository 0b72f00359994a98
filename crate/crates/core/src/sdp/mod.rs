//! Small dense semidefinite programs over Hermitian blocks.
//!
//! A problem has Hermitian variable blocks `X_b ⪰ 0`, a linear objective
//! `Σ_b Re tr(C_b X_b)` to minimise, and linear matrix inequalities
//! `Σ_b w_b X_b + K ⪰ 0` with real weights. It is solved by a primal log-barrier
//! path-following method on the real symmetric embedding, with a phase-one
//! search when no strictly feasible start is supplied. Dual variables are read
//! off the central path, so each solution carries a certificate whose value
//! bounds the optimum from below.

mod barrier;
mod linalg;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qmath::ComplexMatrix;
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Largest Hermitian block dimension (16 real parameters per block).
pub const MAX_BLOCK_DIM: usize = 4;
/// Largest number of LMI constraints.
pub const MAX_CONSTRAINTS: usize = 64;

/// `Σ_b weight_b X_b + constant ⪰ 0`
#[derive(Clone, Debug)]
pub struct LmiConstraint<T> {
    pub terms: Vec<(usize, T)>,
    pub constant: ComplexMatrix<T>,
}

#[derive(Clone, Debug)]
pub struct SdpProblem<T> {
    block_dims: Vec<usize>,
    objective: Vec<ComplexMatrix<T>>,
    constraints: Vec<LmiConstraint<T>>,
}

impl<T: Real> SdpProblem<T> {
    /// A problem with PSD variable blocks of the given dimensions and a zero objective.
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() {
            return Err(Error::InvalidArgument("SDP without variable blocks".into()));
        }
        if let Some(d) = block_dims.iter().find(|&&d| d == 0 || d > MAX_BLOCK_DIM) {
            return Err(Error::InvalidArgument(format!(
                "block dimension {d} (supported: 1 to {MAX_BLOCK_DIM})"
            )));
        }
        let objective = block_dims.iter().map(|&d| ComplexMatrix::zeros(d)).collect();
        Ok(Self {
            block_dims,
            objective,
            constraints: Vec::new(),
        })
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn objective(&self) -> &[ComplexMatrix<T>] {
        &self.objective
    }

    pub fn constraints(&self) -> &[LmiConstraint<T>] {
        &self.constraints
    }

    /// Sets `C_b`, the objective coefficient matrix of block `b`.
    pub fn set_objective(&mut self, block: usize, c: ComplexMatrix<T>) -> Result<()> {
        let d = *self
            .block_dims
            .get(block)
            .ok_or_else(|| Error::InvalidArgument(format!("no block {block}")))?;
        if c.dim() != d {
            return Err(Error::BadDimension {
                expected: d,
                actual: c.dim(),
            });
        }
        check_hermitian(&c)?;
        self.objective[block] = c;
        Ok(())
    }

    /// Objective `Σ_b tr X_b`.
    pub fn minimize_total_trace(&mut self) {
        self.objective = self.block_dims.iter().map(|&d| ComplexMatrix::identity(d)).collect();
    }

    /// Scales every objective coefficient by `c`.
    pub fn scale_objective(&mut self, c: T) {
        for m in &mut self.objective {
            *m = m.scale_real(c);
        }
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, T)>, constant: ComplexMatrix<T>) -> Result<()> {
        if self.constraints.len() >= MAX_CONSTRAINTS {
            return Err(Error::InvalidArgument(format!(
                "more than {MAX_CONSTRAINTS} constraints"
            )));
        }
        check_hermitian(&constant)?;
        let dim = constant.dim();
        let mut merged: Vec<(usize, T)> = Vec::new();
        for (b, w) in terms {
            let bd = *self
                .block_dims
                .get(b)
                .ok_or_else(|| Error::InvalidArgument(format!("no block {b}")))?;
            if bd != dim {
                return Err(Error::DimensionMismatch(format!(
                    "block {b} has dimension {bd}, constraint has {dim}"
                )));
            }
            if !w.is_finite() {
                return Err(Error::InvalidArgument(format!("non-finite weight {w}")));
            }
            match merged.iter_mut().find(|(mb, _)| *mb == b) {
                Some(entry) => entry.1 += w,
                None => merged.push((b, w)),
            }
        }
        self.constraints.push(LmiConstraint {
            terms: merged,
            constant,
        });
        Ok(())
    }

    pub(crate) fn num_variables(&self) -> usize {
        self.block_dims.iter().map(|d| d * d).sum()
    }

    /// Objective value of candidate blocks.
    pub fn evaluate_objective(&self, blocks: &[ComplexMatrix<T>]) -> T {
        self.objective
            .iter()
            .zip(blocks)
            .map(|(c, x)| c.trace_product(x).re)
            .sum()
    }

    /// Left-hand side of constraint `i` at the given blocks.
    pub fn constraint_value(&self, i: usize, blocks: &[ComplexMatrix<T>]) -> ComplexMatrix<T> {
        let con = &self.constraints[i];
        let mut m = con.constant.clone();
        for &(b, w) in &con.terms {
            m += &blocks[b].scale_real(w);
        }
        m
    }
}

fn check_hermitian<T: Real>(m: &ComplexMatrix<T>) -> Result<()> {
    let herm = m.hermiticity_error();
    if herm > Tolerances::<T>::default().hermitian * (T::one() + m.max_abs()) {
        return Err(Error::NonHermitian {
            deviation: herm.to_f64_lossy(),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdpStatus {
    /// Converged with a duality gap below the configured tolerance.
    Optimal,
    /// Ran out of iterations; the best iterate and its gap are returned.
    MaxIterations,
}

/// Dual variables for the block positivity constraints and for each LMI.
#[derive(Clone, Debug)]
pub struct DualCertificate<T> {
    pub block_duals: Vec<ComplexMatrix<T>>,
    pub constraint_duals: Vec<ComplexMatrix<T>>,
    /// `-Σ_i Re tr(Z_i K_i)`
    pub dual_value: T,
    /// Largest violation of `C_b = Z_b + Σ_i w_ib Z_i` over all entries.
    pub stationarity_residual: T,
}

#[derive(Clone, Debug)]
pub struct SdpSolution<T> {
    pub blocks: Vec<ComplexMatrix<T>>,
    pub objective_value: T,
    /// Primal objective minus the certificate's dual value.
    pub duality_gap: T,
    pub status: SdpStatus,
    pub iterations: usize,
    certificate: DualCertificate<T>,
}

impl<T: Real> SdpSolution<T> {
    pub fn is_optimal(&self) -> bool {
        self.status == SdpStatus::Optimal
    }
}

#[derive(Clone, Debug)]
pub struct SdpOptions<T> {
    /// Gap below which a solution is reported `Optimal`, relative to the
    /// objective norm when that exceeds one.
    pub gap_tol: T,
    /// Gap the path following aims for, for the unit-norm objective.
    pub target_gap: T,
    /// Newton steps across all centerings.
    pub max_iterations: usize,
    /// Candidate strictly feasible start; phase one is run if it is not.
    pub initial: Option<Vec<ComplexMatrix<T>>>,
}

impl<T: Real> Default for SdpOptions<T> {
    fn default() -> Self {
        let gap_tol = Tolerances::<T>::default().sdp_gap;
        Self {
            gap_tol,
            target_gap: (gap_tol * T::lit(0.1)).max(T::epsilon() * T::lit(1e3)),
            max_iterations: 500,
            initial: None,
        }
    }
}

pub fn solve<T: Real>(p: &SdpProblem<T>) -> Result<SdpSolution<T>> {
    solve_with(p, &SdpOptions::default())
}

pub fn solve_with<T: Real>(p: &SdpProblem<T>, opts: &SdpOptions<T>) -> Result<SdpSolution<T>> {
    barrier::solve(p, opts)
}

/// Returns the dual variables of an `Optimal` solution.
pub fn extract_dual_certificate<T: Real>(
    _p: &SdpProblem<T>,
    s: &SdpSolution<T>,
) -> Result<DualCertificate<T>> {
    if s.status != SdpStatus::Optimal {
        return Err(Error::CertificateUnavailable);
    }
    Ok(s.certificate.clone())
}

/// Hermitian basis of a `d × d` block: diagonal units, then `E_pq + E_qp` and
/// `i E_pq - i E_qp` for `p < q`.
pub(crate) fn block_basis<T: Real>(d: usize) -> Vec<ComplexMatrix<T>> {
    let mut out = Vec::with_capacity(d * d);
    for p in 0..d {
        out.push(ComplexMatrix::unit(d, p, p));
    }
    let i = Complex::new(T::zero(), T::one());
    for p in 0..d {
        for q in (p + 1)..d {
            out.push(&ComplexMatrix::unit(d, p, q) + &ComplexMatrix::unit(d, q, p));
            out.push(&ComplexMatrix::unit(d, p, q).scale(i) - &ComplexMatrix::unit(d, q, p).scale(i));
        }
    }
    out
}
