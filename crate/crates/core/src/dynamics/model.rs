use num_complex::Complex;
use serde::{Deserialize, Serialize};

use super::LindbladModel;
use crate::error::{Error, Result};
use crate::qmath::{pauli, ComplexMatrix};
use crate::scalar::Real;

/// Local noise of one qubit.
///
/// `gamma_A ≈ 1/T₁` is the energy-relaxation rate and `gamma_P ≈ 1/T₂ - 1/(2T₁)`
/// the pure-dephasing rate, so coherences decay at `gamma_A/2 + gamma_P`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QubitNoiseParams<T> {
    #[serde(rename = "gamma_A")]
    pub gamma_a: T,
    #[serde(rename = "gamma_P")]
    pub gamma_p: T,
}

impl<T: Real> QubitNoiseParams<T> {
    pub fn new(gamma_a: T, gamma_p: T) -> Result<Self> {
        let p = Self { gamma_a, gamma_p };
        p.validate()?;
        Ok(p)
    }

    pub fn noiseless() -> Self {
        Self {
            gamma_a: T::zero(),
            gamma_p: T::zero(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("gamma_A", self.gamma_a), ("gamma_P", self.gamma_p)] {
            if !(v.is_finite() && v >= T::zero()) {
                return Err(Error::InvalidArgument(format!("{name} = {v} must be finite and ≥ 0")));
            }
        }
        Ok(())
    }

    /// Jump operators on one qubit: `σ₋` at `gamma_A` and `σ_z` at `gamma_P / 2`.
    fn jumps(&self) -> [(ComplexMatrix<T>, T); 2] {
        [
            (pauli::sigma_minus(), self.gamma_a),
            (pauli::z(), self.gamma_p * T::lit(0.5)),
        ]
    }
}

pub fn build_single_qubit_model<T: Real>(noise: QubitNoiseParams<T>) -> LindbladModel<T> {
    LindbladModel::new(ComplexMatrix::zeros(2), noise.jumps().to_vec())
        .expect("validated single-qubit noise")
}

/// System (qubit 0) coupled to an environment qubit (qubit 1) by
/// `H = J(σ₁⁺σ₂⁻ + σ₁⁻σ₂⁺)`, each with its own local noise.
pub fn build_two_qubit_model<T: Real>(
    j: T,
    system: QubitNoiseParams<T>,
    environment: QubitNoiseParams<T>,
) -> Result<LindbladModel<T>> {
    if !(j > T::zero() && j.is_finite()) {
        return Err(Error::InvalidArgument(format!("coupling J = {j} must be positive")));
    }
    system.validate()?;
    environment.validate()?;
    let id = ComplexMatrix::identity(2);
    let (sp, sm) = (pauli::sigma_plus::<T>(), pauli::sigma_minus::<T>());
    let hop = sp.kron(&sm);
    let h = (&hop + &hop.adjoint()).scale(Complex::new(j, T::zero()));
    let mut jumps = Vec::new();
    for (op, rate) in system.jumps() {
        jumps.push((op.kron(&id), rate));
    }
    for (op, rate) in environment.jumps() {
        jumps.push((id.kron(&op), rate));
    }
    LindbladModel::new(h, jumps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::evolve;
    use crate::qmath::DensityMatrix;

    #[test]
    fn noiseless_single_qubit_is_static() {
        let m = build_single_qubit_model(QubitNoiseParams::<f64>::noiseless());
        let rho = DensityMatrix::from_bloch(crate::qmath::BlochVector::new(0.3, 0.4, 0.5).unwrap()).unwrap();
        let out = evolve(&m, &rho, 2.0, 0.01).unwrap();
        assert!(out.final_state().matrix().approx_eq(rho.matrix(), 1e-15));
    }

    #[test]
    fn t2_is_twice_t1_without_pure_dephasing() {
        let m = build_single_qubit_model(QubitNoiseParams::new(1.0, 0.0).unwrap());
        let plus = DensityMatrix::from_bloch(crate::qmath::BlochVector::new(1.0, 0.0, 0.0).unwrap()).unwrap();
        let out = evolve(&m, &plus, 1.0, 0.01).unwrap();
        assert!((out.final_state().matrix()[(0, 1)].re - 0.5 * (-0.5f64).exp()).abs() < 1e-6);
    }

    #[test]
    fn excitation_swaps_at_quarter_period() {
        let m = build_two_qubit_model(1.0, QubitNoiseParams::noiseless(), QubitNoiseParams::noiseless()).unwrap();
        // |10⟩: system excited, environment in ground state
        let rho0 = DensityMatrix::<f64>::basis_state(4, 2);
        let t = std::f64::consts::FRAC_PI_2;
        let traj = evolve(&m, &rho0, t, 0.001).unwrap();
        for (s, tt) in traj.states().iter().zip(traj.times()) {
            assert!((s.matrix()[(2, 2)].re - tt.cos().powi(2)).abs() < 1e-8);
        }
        assert!((traj.final_state().matrix()[(1, 1)].re - 1.0).abs() < 1e-8);
    }

    #[test]
    fn excitation_number_is_conserved() {
        let m = build_two_qubit_model(0.8, QubitNoiseParams::noiseless(), QubitNoiseParams::noiseless()).unwrap();
        let n_op = ComplexMatrix::<f64>::diag(&[0.0, 1.0, 1.0, 2.0]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ket = [s, 0.0, 0.5, 0.5].map(|v| Complex::new(v, 0.0));
        let rho0 = DensityMatrix::pure(&ket).unwrap();
        let n0 = rho0.expectation(&n_op);
        let traj = evolve(&m, &rho0, 5.0, 0.005).unwrap();
        for st in traj.states() {
            assert!((st.expectation(&n_op) - n0).abs() < 1e-8);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(QubitNoiseParams::new(-1.0, 0.0).is_err());
        assert!(QubitNoiseParams::new(0.0, f64::NAN).is_err());
        assert!(build_two_qubit_model(0.0, QubitNoiseParams::noiseless(), QubitNoiseParams::noiseless()).is_err());
    }

    #[test]
    fn parses_rate_names() {
        let p: QubitNoiseParams<f64> = serde_json::from_str(r#"{"gamma_A": 0.2, "gamma_P": 0.1}"#).unwrap();
        assert_eq!(p, QubitNoiseParams::new(0.2, 0.1).unwrap());
        assert!(serde_json::from_str::<QubitNoiseParams<f64>>(r#"{"gamma_A": 0.2, "gamma_p": 0.1}"#).is_err());
    }
}
