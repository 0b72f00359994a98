use num_complex::Complex;

use super::kraus::{check_strength, prune};
use super::{ry, ChannelKind, KrausChannel};
use crate::error::{Error, Result};
use crate::qmath::ComplexMatrix;
use crate::scalar::Real;

/// One extreme qubit channel with Kraus pair
/// `diag(cos β, cos α)` and `[[0, sin α], [sin β, 0]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremeBranch<T> {
    pub alpha: T,
    pub beta: T,
}

impl<T: Real> ExtremeBranch<T> {
    pub fn identity() -> Self {
        Self {
            alpha: T::zero(),
            beta: T::zero(),
        }
    }

    /// First ancilla rotation half-angle: `2γ_1 = β - α + π/2`.
    pub fn gamma1(&self) -> T {
        (self.beta - self.alpha + T::FRAC_PI_2()) * T::lit(0.5)
    }

    /// Second ancilla rotation half-angle: `2γ_2 = β + α - π/2`.
    pub fn gamma2(&self) -> T {
        (self.beta + self.alpha - T::FRAC_PI_2()) * T::lit(0.5)
    }

    /// Inverts the gamma relations.
    pub fn from_gammas(gamma1: T, gamma2: T) -> Self {
        Self {
            alpha: gamma2 - gamma1 + T::FRAC_PI_2(),
            beta: gamma1 + gamma2,
        }
    }

    pub fn kraus_pair(&self) -> [ComplexMatrix<T>; 2] {
        let z = T::zero();
        let c = |v: T| Complex::new(v, z);
        let k0 = ComplexMatrix::from_vec(
            2,
            vec![c(self.beta.cos()), c(z), c(z), c(self.alpha.cos())],
        )
        .unwrap();
        let k1 = ComplexMatrix::from_vec(
            2,
            vec![c(z), c(self.alpha.sin()), c(self.beta.sin()), c(z)],
        )
        .unwrap();
        [k0, k1]
    }
}

/// Two extreme channels mixed with probabilities `p` and `1 - p`.
///
/// The second branch is preceded by the system rotation `R_y(2δ)`; the first
/// branch is applied directly. With `p = 1` the second branch is inert.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremeDecomposition<T> {
    pub p: T,
    pub branches: [ExtremeBranch<T>; 2],
    pub delta: T,
}

impl<T: Real> ExtremeDecomposition<T> {
    pub fn new(p: T, branches: [ExtremeBranch<T>; 2], delta: T) -> Result<Self> {
        if !(p >= T::zero() && p <= T::one()) {
            return Err(Error::InvalidArgument(format!(
                "branch probability {p} outside [0, 1]"
            )));
        }
        Ok(Self { p, branches, delta })
    }

    pub fn identity() -> Self {
        Self {
            p: T::one(),
            branches: [ExtremeBranch::identity(); 2],
            delta: T::zero(),
        }
    }

    /// `γ_{j1}` for branch `j ∈ {1, 2}`.
    pub fn gamma_j1(&self, j: usize) -> T {
        self.branches[j - 1].gamma1()
    }

    /// `γ_{j2}` for branch `j ∈ {1, 2}`.
    pub fn gamma_j2(&self, j: usize) -> T {
        self.branches[j - 1].gamma2()
    }

    pub fn branch_weights(&self) -> [T; 2] {
        [self.p, T::one() - self.p]
    }

    /// Kraus set of branch `j ∈ {1, 2}` including the `R_y(2δ)` pre-rotation of branch 2.
    pub fn branch_channel(&self, j: usize) -> Result<KrausChannel<T>> {
        let pair = self.branches[j - 1].kraus_pair();
        let ops = if j == 2 {
            let r = ry(self.delta + self.delta);
            pair.map(|k| k.matmul(&r)).to_vec()
        } else {
            pair.to_vec()
        };
        KrausChannel::new(prune(ops), format!("extreme-branch-{j}"))
    }

    /// The mixture as one Kraus channel.
    pub fn recompose(&self) -> Result<KrausChannel<T>> {
        let b1 = self.branch_channel(1)?;
        let b2 = self.branch_channel(2)?;
        KrausChannel::mixture(&[(self.p, &b1), (T::one() - self.p, &b2)], "recomposed")
    }
}

/// Extreme-channel parameters realising `standard_channel(kind, strength)`.
///
/// * amplitude damping: `p = 1`, `β_1 = 0`, `sin² α_1 = η`, `δ = 0`
/// * dephasing: branch 1 identity, branch 2 the unitary `σ_z` (`α_2 = π`,
///   `β_2 = 0`), `p = 1 - s/2`, `δ = 0`
/// * depolarizing: branch 1 a bit flip (`α_1 = β_1`, `sin² α_1 = s/(4 - 2s)`),
///   branch 2 `α_2 = β_2 = π/4` after `R_y(π)`, i.e. an even `σ_y`/`σ_z`
///   mixture, `p = 1 - s/2`, `δ = π/2`
pub fn decompose_channel<T: Real>(kind: ChannelKind, strength: T) -> Result<ExtremeDecomposition<T>> {
    check_strength(strength)?;
    let zero = T::zero();
    let one = T::one();
    let half = T::lit(0.5);
    let d = match kind {
        ChannelKind::AmplitudeDamping => ExtremeDecomposition {
            p: one,
            branches: [
                ExtremeBranch {
                    alpha: strength.sqrt().asin(),
                    beta: zero,
                },
                ExtremeBranch::identity(),
            ],
            delta: zero,
        },
        ChannelKind::Dephasing => ExtremeDecomposition {
            p: one - strength * half,
            branches: [
                ExtremeBranch::identity(),
                ExtremeBranch {
                    alpha: T::PI(),
                    beta: zero,
                },
            ],
            delta: zero,
        },
        ChannelKind::Depolarizing => {
            let flip = (strength / (T::lit(4.0) - strength - strength)).sqrt().asin();
            ExtremeDecomposition {
                p: one - strength * half,
                branches: [
                    ExtremeBranch {
                        alpha: flip,
                        beta: flip,
                    },
                    ExtremeBranch {
                        alpha: T::FRAC_PI_4(),
                        beta: T::FRAC_PI_4(),
                    },
                ],
                delta: T::FRAC_PI_2(),
            }
        }
    };
    Ok(d)
}
