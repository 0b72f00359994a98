use log::{debug, warn};

use super::assemblage::Assemblage;
use super::setting::Outcome;
use crate::error::Result;
use crate::qmath::ComplexMatrix;
use crate::scalar::Real;
use crate::sdp::{self, SdpOptions, SdpProblem, SdpStatus};
use crate::tolerance::Tolerances;

/// Number of deterministic response functions `λ ∈ {±1}³`.
pub const NUM_HIDDEN_STATES: usize = 8;

/// Outcome that deterministic strategy `λ` assigns to setting `m`.
pub fn response(lambda: usize, m: usize) -> Outcome {
    if (lambda >> m) & 1 == 0 {
        Outcome::Plus
    } else {
        Outcome::Minus
    }
}

#[derive(Clone, Debug)]
pub struct TsrResult<T> {
    /// `max(0, Σ_λ tr σ_λ - 1)`
    pub value: T,
    /// Objective minus one before clipping.
    pub raw: T,
    pub status: SdpStatus,
    pub duality_gap: T,
    /// Lower bound on the unclipped value from the dual certificate, when the
    /// solve was optimal.
    pub dual_bound: Option<T>,
    /// Optimal hidden states `σ_λ`.
    pub hidden_states: Vec<ComplexMatrix<T>>,
}

impl<T: Real> TsrResult<T> {
    /// True when the solver stopped before reaching its gap tolerance.
    pub fn is_flagged(&self) -> bool {
        self.status != SdpStatus::Optimal
    }
}

/// The robustness program: minimise `Σ_λ tr σ_λ` subject to `σ_λ ⪰ 0` and
/// `Σ_{λ: λ_m = a} σ_λ ⪰ p(a|m) σ_{a|m}`.
pub fn tsr_problem<T: Real>(asm: &Assemblage<T>) -> Result<SdpProblem<T>> {
    let mut p = SdpProblem::new(vec![2; NUM_HIDDEN_STATES])?;
    p.minimize_total_trace();
    for m in 0..3 {
        for a in Outcome::ALL {
            let terms = (0..NUM_HIDDEN_STATES)
                .filter(|&l| response(l, m) == a)
                .map(|l| (l, T::one()))
                .collect();
            p.add_constraint(terms, asm.member(m, a).scale_real(-T::one()))?;
        }
    }
    Ok(p)
}

/// Temporal steering robustness of an assemblage.
pub fn compute_tsr<T: Real>(asm: &Assemblage<T>) -> Result<TsrResult<T>> {
    let p = tsr_problem(asm)?;
    // σ_λ = 2𝕀 is strictly feasible for any assemblage with unit-trace settings
    let opts = SdpOptions {
        initial: Some(vec![ComplexMatrix::identity(2).scale_real(T::lit(2.0)); NUM_HIDDEN_STATES]),
        ..SdpOptions::default()
    };
    let sol = sdp::solve_with(&p, &opts)?;
    let raw = sol.objective_value - T::one();
    let dual_bound = sdp::extract_dual_certificate(&p, &sol)
        .ok()
        .map(|c| c.dual_value - T::one());
    if sol.status != SdpStatus::Optimal {
        warn!(
            "TSR solve stopped after {} iterations with gap {:e}",
            sol.iterations, sol.duality_gap
        );
    }
    let value = if raw < T::zero() {
        if raw < -Tolerances::<T>::default().tsr_clip {
            warn!("TSR objective {raw:e} below zero beyond tolerance; clipped");
        } else {
            debug!("TSR objective {raw:e} clipped to zero");
        }
        T::zero()
    } else {
        raw
    };
    Ok(TsrResult {
        value,
        raw,
        status: sol.status,
        duality_gap: sol.duality_gap,
        dual_bound,
        hidden_states: sol.blocks,
    })
}
