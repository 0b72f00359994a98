use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::QubitMap;
use crate::error::{Error, Result};
use crate::qmath::{check_state, pauli, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// The three noise channels realised by the extreme-channel circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelKind {
    AmplitudeDamping,
    Dephasing,
    Depolarizing,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::Dephasing,
        ChannelKind::Depolarizing,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "amplitude-damping",
            ChannelKind::Dephasing => "dephasing",
            ChannelKind::Depolarizing => "depolarizing",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        match key.as_str() {
            "amplitudedamping" | "ad" => Ok(ChannelKind::AmplitudeDamping),
            "dephasing" | "phasedamping" => Ok(ChannelKind::Dephasing),
            "depolarizing" | "depolarising" => Ok(ChannelKind::Depolarizing),
            _ => Err(Error::InvalidArgument(format!("unknown channel kind '{s}'"))),
        }
    }
}

/// Completely positive trace-preserving qubit map given by Kraus operators.
#[derive(Clone, Debug)]
pub struct KrausChannel<T> {
    kraus_ops: Vec<ComplexMatrix<T>>,
    label: String,
}

impl<T: Real> KrausChannel<T> {
    /// Validates completeness `Σ K†K = 𝕀` before accepting the operators.
    pub fn new(kraus_ops: Vec<ComplexMatrix<T>>, label: impl Into<String>) -> Result<Self> {
        Self::new_with(kraus_ops, label, &Tolerances::default())
    }

    pub fn new_with(
        kraus_ops: Vec<ComplexMatrix<T>>,
        label: impl Into<String>,
        tol: &Tolerances<T>,
    ) -> Result<Self> {
        let Some(first) = kraus_ops.first() else {
            return Err(Error::IncompleteKraus { deviation: 1.0 });
        };
        let dim = first.dim();
        if let Some(bad) = kraus_ops.iter().find(|k| k.dim() != dim) {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operators of dimension {dim} and {}",
                bad.dim()
            )));
        }
        let deviation = completeness_error(&kraus_ops);
        if deviation > tol.completeness {
            return Err(Error::IncompleteKraus {
                deviation: deviation.to_f64_lossy(),
            });
        }
        Ok(Self {
            kraus_ops,
            label: label.into(),
        })
    }

    pub fn identity() -> Self {
        Self {
            kraus_ops: vec![ComplexMatrix::identity(2)],
            label: "identity".into(),
        }
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix<T>] {
        &self.kraus_ops
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Applies the map to a density matrix, validating the output state.
    pub fn apply(&self, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        if rho.dim() != self.kraus_ops[0].dim() {
            return Err(Error::DimensionMismatch(format!(
                "channel acts on dimension {}, state has {}",
                self.kraus_ops[0].dim(),
                rho.dim()
            )));
        }
        let out = self.apply_operator(rho.matrix());
        let tol = Tolerances::<T>::default();
        check_state(&out, tol.hermitian, tol.trace, tol.psd_slack)?;
        Ok(DensityMatrix::from_checked(out.hermitian_part()))
    }

    /// Convex mixture `Σ_j w_j Λ_j` of channels, as a single Kraus set.
    pub fn mixture(parts: &[(T, &KrausChannel<T>)], label: impl Into<String>) -> Result<Self> {
        let mut ops = Vec::new();
        for &(w, ch) in parts {
            if w < T::zero() {
                return Err(Error::InvalidArgument(format!("negative weight {w}")));
            }
            if w == T::zero() {
                continue;
            }
            let s = w.sqrt();
            ops.extend(ch.kraus_ops.iter().map(|k| k.scale_real(s)));
        }
        Self::new(prune(ops), label)
    }
}

impl<T: Real> QubitMap<T> for KrausChannel<T> {
    fn apply_operator(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let mut out = ComplexMatrix::zeros(op.dim());
        for k in &self.kraus_ops {
            out += &k.sandwich(op);
        }
        out
    }
}

pub(crate) fn completeness_error<T: Real>(ops: &[ComplexMatrix<T>]) -> T {
    let dim = ops[0].dim();
    let mut sum = ComplexMatrix::zeros(dim);
    for k in ops {
        sum += &k.adjoint().matmul(k);
    }
    sum.max_abs_diff(&ComplexMatrix::identity(dim))
}

/// Drops Kraus operators that vanish identically.
pub(crate) fn prune<T: Real>(ops: Vec<ComplexMatrix<T>>) -> Vec<ComplexMatrix<T>> {
    let cutoff = T::epsilon();
    let kept: Vec<_> = ops.iter().filter(|k| k.max_abs() > cutoff).cloned().collect();
    if kept.is_empty() {
        ops
    } else {
        kept
    }
}

/// Textbook Kraus set for the named channel.
///
/// `strength` is the amplitude-damping probability `η`, or for dephasing and
/// depolarizing the amount `s` by which coherences (respectively the whole
/// Bloch vector) shrink: the Bloch vector is scaled by `1 - s`. Strength 0 is
/// the identity channel; strength 1 fully decays, dephases or depolarizes.
pub fn standard_channel<T: Real>(kind: ChannelKind, strength: T) -> Result<KrausChannel<T>> {
    check_strength(strength)?;
    let one = T::one();
    let ops = match kind {
        ChannelKind::AmplitudeDamping => {
            let mut k0 = ComplexMatrix::identity(2);
            k0[(1, 1)] = num_complex::Complex::new((one - strength).sqrt(), T::zero());
            let k1 = pauli::sigma_minus::<T>().scale_real(strength.sqrt());
            vec![k0, k1]
        }
        ChannelKind::Dephasing => {
            let flip = strength * T::lit(0.5);
            vec![
                ComplexMatrix::identity(2).scale_real((one - flip).sqrt()),
                pauli::z::<T>().scale_real(flip.sqrt()),
            ]
        }
        ChannelKind::Depolarizing => {
            let quarter = strength * T::lit(0.25);
            let w = quarter.sqrt();
            vec![
                ComplexMatrix::identity(2).scale_real((one - T::lit(3.0) * quarter).sqrt()),
                pauli::x::<T>().scale_real(w),
                pauli::y::<T>().scale_real(w),
                pauli::z::<T>().scale_real(w),
            ]
        }
    };
    KrausChannel::new(prune(ops), format!("{kind}({strength})"))
}

/// Strength `1 - exp(-γt)` reached by a channel of rate `gamma` after time `t`.
pub fn strength_at_time<T: Real>(gamma: T, t: T) -> T {
    -(-gamma * t).exp_m1()
}

pub(crate) fn check_strength<T: Real>(strength: T) -> Result<()> {
    if !(strength >= T::zero() && strength <= T::one()) {
        return Err(Error::BadStrength {
            strength: strength.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Applies `ch` to `rho`; the output is validated as a density matrix.
pub fn apply_channel<T: Real>(ch: &KrausChannel<T>, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
    ch.apply(rho)
}
