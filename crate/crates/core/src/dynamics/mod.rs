//! Fixed-step Lindblad integration for one qubit and for a qubit coupled to a
//! single environment qubit.
//!
//! The generator is
//! `dρ/dt = -i[H, ρ] + Σ_k r_k (L_k ρ L_k† - ½{L_k† L_k, ρ})` with `ħ = 1`.

mod map;
mod model;

pub use map::{channel_at_time, channels_on_grid, evolve_operator};
pub use model::{build_single_qubit_model, build_two_qubit_model, QubitNoiseParams};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::qmath::{check_state, hermitian_eig, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Largest accepted `dt · max_rate`.
pub const MAX_STEP_PRODUCT: f64 = 0.1;
/// `dt · max_rate` used by [`LindbladModel::default_dt`].
pub const DEFAULT_STEP_PRODUCT: f64 = 0.01;

#[derive(Clone, Debug)]
pub struct LindbladModel<T> {
    hamiltonian: ComplexMatrix<T>,
    jump_terms: Vec<(ComplexMatrix<T>, T)>,
    // H - (i/2) Σ r L†L and √r L, precomputed for the right-hand side
    h_eff: ComplexMatrix<T>,
    scaled_jumps: Vec<ComplexMatrix<T>>,
    rate_scale: T,
}

impl<T: Real> LindbladModel<T> {
    pub fn new(hamiltonian: ComplexMatrix<T>, jump_terms: Vec<(ComplexMatrix<T>, T)>) -> Result<Self> {
        let dim = hamiltonian.dim();
        if dim != 2 && dim != 4 {
            return Err(Error::InvalidArgument(format!(
                "Lindblad model of dimension {dim} (supported: 2 or 4)"
            )));
        }
        let tol = Tolerances::<T>::default();
        let herm = hamiltonian.hermiticity_error();
        if herm > tol.hermitian {
            return Err(Error::NonHermitian {
                deviation: herm.to_f64_lossy(),
            });
        }
        for (op, rate) in &jump_terms {
            if op.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "jump operator of dimension {} in a dimension-{dim} model",
                    op.dim()
                )));
            }
            if !(rate.is_finite() && *rate >= T::zero()) {
                return Err(Error::InvalidArgument(format!("jump rate {rate} must be finite and ≥ 0")));
            }
        }
        let half_i = Complex::new(T::zero(), T::lit(0.5));
        let mut h_eff = hamiltonian.clone();
        let mut scaled_jumps = Vec::new();
        let mut max_rate = T::zero();
        for (op, rate) in &jump_terms {
            if *rate == T::zero() {
                continue;
            }
            max_rate = max_rate.max(*rate);
            let l = op.scale_real(rate.sqrt());
            h_eff = &h_eff - &l.adjoint().matmul(&l).scale(half_i);
            scaled_jumps.push(l);
        }
        let spectral = hermitian_eig(&hamiltonian.hermitian_part())?
            .values
            .iter()
            .fold(T::zero(), |m, v| m.max(v.abs()));
        Ok(Self {
            hamiltonian,
            jump_terms,
            h_eff,
            scaled_jumps,
            rate_scale: max_rate.max(spectral),
        })
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim()
    }

    pub fn hamiltonian(&self) -> &ComplexMatrix<T> {
        &self.hamiltonian
    }

    pub fn jump_terms(&self) -> &[(ComplexMatrix<T>, T)] {
        &self.jump_terms
    }

    /// `max(largest jump rate, spectral radius of H)`, the stiffness scale
    /// that bounds the step size.
    pub fn rate_scale(&self) -> T {
        self.rate_scale
    }

    /// Step with `dt · rate_scale = 0.01`, capped at 0.01.
    pub fn default_dt(&self) -> T {
        let p = T::lit(DEFAULT_STEP_PRODUCT);
        if self.rate_scale > T::one() {
            p / self.rate_scale
        } else {
            p
        }
    }

    fn check_step(&self, dt: T) -> Result<()> {
        if !(dt > T::zero() && dt.is_finite()) {
            return Err(Error::InvalidArgument(format!("time step {dt} must be positive")));
        }
        let product = dt * self.rate_scale;
        if product > T::lit(MAX_STEP_PRODUCT) {
            return Err(Error::StepTooLarge {
                product: product.to_f64_lossy(),
            });
        }
        Ok(())
    }

    /// Right-hand side of the master equation; linear, so any operator may be fed in.
    pub fn generator(&self, rho: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let minus_i = Complex::new(T::zero(), -T::one());
        let left = self.h_eff.matmul(rho);
        let right = rho.matmul(&self.h_eff.adjoint());
        let mut out = (&left - &right).scale(minus_i);
        for l in &self.scaled_jumps {
            out += &l.sandwich(rho);
        }
        out
    }

    /// One classic fourth-order Runge–Kutta step.
    pub fn rk4_step(&self, rho: &ComplexMatrix<T>, h: T) -> ComplexMatrix<T> {
        let half = h * T::lit(0.5);
        let k1 = self.generator(rho);
        let k2 = self.generator(&(rho + &k1.scale_real(half)));
        let k3 = self.generator(&(rho + &k2.scale_real(half)));
        let k4 = self.generator(&(rho + &k3.scale_real(h)));
        let sixth = h / T::lit(6.0);
        let mut incr = &k1 + &k4;
        incr += &(&k2 + &k3).scale_real(T::lit(2.0));
        rho + &incr.scale_real(sixth)
    }

    /// Integrates from `0` to `t` with steps no longer than `dt`.
    fn propagate(&self, rho: &ComplexMatrix<T>, t: T, dt: T) -> ComplexMatrix<T> {
        let (n, h) = step_count(t, dt);
        let mut cur = rho.clone();
        for _ in 0..n {
            cur = self.rk4_step(&cur, h);
        }
        cur
    }
}

/// Number of equal steps covering `t` with step at most `dt`, and their length.
pub(crate) fn step_count<T: Real>(t: T, dt: T) -> (usize, T) {
    if t <= T::zero() {
        return (0, T::zero());
    }
    let ratio = (t / dt).to_f64_lossy();
    let n = ((ratio - 1e-9).ceil() as usize).max(1);
    (n, t / T::lit(n as f64))
}

/// States along an integration, one per step including the initial state.
#[derive(Clone, Debug)]
pub struct Trajectory<T> {
    times: Vec<T>,
    states: Vec<DensityMatrix<T>>,
}

impl<T: Real> Trajectory<T> {
    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn states(&self) -> &[DensityMatrix<T>] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn final_state(&self) -> &DensityMatrix<T> {
        self.states.last().expect("trajectory holds the initial state")
    }
}

/// Integrates `rho0` to `t_final`.
///
/// The interval is divided into the smallest number of equal steps no longer
/// than `dt`. Every state is checked against the trajectory tolerances; drift
/// outside them is reported as [`Error::NumericalDivergence`] rather than
/// being projected away.
pub fn evolve<T: Real>(
    model: &LindbladModel<T>,
    rho0: &DensityMatrix<T>,
    t_final: T,
    dt: T,
) -> Result<Trajectory<T>> {
    if rho0.dim() != model.dim() {
        return Err(Error::DimensionMismatch(format!(
            "model acts on dimension {}, state has {}",
            model.dim(),
            rho0.dim()
        )));
    }
    if !(t_final >= T::zero() && t_final.is_finite()) {
        return Err(Error::InvalidArgument(format!("final time {t_final} must be ≥ 0")));
    }
    model.check_step(dt)?;
    let tol = Tolerances::<T>::default();
    let (n, h) = step_count(t_final, dt);
    let mut times = Vec::with_capacity(n + 1);
    let mut states = Vec::with_capacity(n + 1);
    let mut cur = rho0.matrix().clone();
    times.push(T::zero());
    states.push(rho0.clone());
    for k in 1..=n {
        cur = model.rk4_step(&cur, h);
        let t = if k == n { t_final } else { h * T::lit(k as f64) };
        check_state(&cur, tol.trajectory_trace, tol.trajectory_trace, tol.trajectory_psd_slack).map_err(
            |e| Error::NumericalDivergence {
                time: t.to_f64_lossy(),
                reason: e.to_string(),
            },
        )?;
        times.push(t);
        states.push(DensityMatrix::from_checked(cur.hermitian_part()));
    }
    log::debug!("integrated {n} steps of {h} to t = {t_final}");
    Ok(Trajectory { times, states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::{pauli, BlochVector};

    #[test]
    fn amplitude_damping_matches_exponential() {
        let model = LindbladModel::new(ComplexMatrix::zeros(2), vec![(pauli::sigma_minus(), 1.3)]).unwrap();
        let rho0 = DensityMatrix::<f64>::basis_state(2, 1);
        let traj = evolve(&model, &rho0, 2.0, 0.01).unwrap();
        for (t, s) in traj.times().iter().zip(traj.states()) {
            assert!((s.matrix()[(1, 1)].re - (-1.3 * t).exp()).abs() < 1e-6);
        }
    }

    #[test]
    fn dephasing_decays_coherence() {
        let model = build_single_qubit_model(QubitNoiseParams::new(0.0, 0.7).unwrap());
        let plus = DensityMatrix::<f64>::from_bloch(BlochVector::new(1.0, 0.0, 0.0).unwrap()).unwrap();
        let traj = evolve(&model, &plus, 3.0, 0.01).unwrap();
        for (t, s) in traj.times().iter().zip(traj.states()) {
            assert!((s.matrix()[(0, 1)].re - 0.5 * (-0.7 * t).exp()).abs() < 1e-6);
            assert!((s.matrix()[(0, 0)].re - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn halving_step_converges_at_fourth_order() {
        let model = LindbladModel::new(ComplexMatrix::zeros(2), vec![(pauli::sigma_minus(), 1.0)]).unwrap();
        let rho0 = DensityMatrix::<f64>::basis_state(2, 1);
        let err = |dt: f64| {
            let s = evolve(&model, &rho0, 1.0, dt).unwrap();
            (s.final_state().matrix()[(1, 1)].re - (-1.0f64).exp()).abs()
        };
        let (e1, e2) = (err(0.1), err(0.05));
        assert!(e1 / e2 >= 8.0, "{e1} {e2}");
        let a = evolve(&model, &rho0, 1.0, 0.01).unwrap();
        let b = evolve(&model, &rho0, 1.0, 0.005).unwrap();
        assert!(a.final_state().matrix().max_abs_diff(b.final_state().matrix()) < 1e-6);
    }

    #[test]
    fn step_too_large_is_rejected() {
        let model = LindbladModel::new(ComplexMatrix::zeros(2), vec![(pauli::sigma_minus(), 5.0)]).unwrap();
        let rho0 = DensityMatrix::<f64>::basis_state(2, 1);
        assert!(matches!(
            evolve(&model, &rho0, 1.0, 0.1),
            Err(Error::StepTooLarge { .. })
        ));
    }

    #[test]
    fn rejects_invalid_models() {
        let nonherm = ComplexMatrix::<f64>::unit(2, 0, 1);
        assert!(LindbladModel::new(nonherm, vec![]).is_err());
        assert!(LindbladModel::new(ComplexMatrix::<f64>::zeros(2), vec![(pauli::z(), -1.0)]).is_err());
        assert!(LindbladModel::new(ComplexMatrix::<f64>::zeros(8), vec![]).is_err());
        let m = LindbladModel::new(ComplexMatrix::<f64>::zeros(2), vec![]).unwrap();
        assert!(evolve(&m, &DensityMatrix::maximally_mixed(4), 1.0, 0.01).is_err());
    }

    #[test]
    fn zero_final_time_returns_initial_state() {
        let m = build_single_qubit_model(QubitNoiseParams::new(1.0, 1.0).unwrap());
        let traj = evolve(&m, &DensityMatrix::<f64>::basis_state(2, 1), 0.0, 0.01).unwrap();
        assert_eq!(traj.len(), 1);
    }

    #[test]
    fn step_count_covers_interval() {
        assert_eq!(step_count(1.0, 0.1), (10, 0.1));
        assert_eq!(step_count(1.0, 0.3).0, 4);
        assert_eq!(step_count(0.0, 0.3).0, 0);
    }
}
