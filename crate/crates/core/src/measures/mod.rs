//! The three temporal-correlation measures and the two-time probability
//! checks behind them.
//!
//! Every measure takes the channel acting between the two measurement times
//! as an opaque [`QubitMap`], and the state `ρ0` present at `t1`. Projective
//! measurements at `t1` update the state by the Lüders rule `Π ρ Π`.

mod assemblage;
mod bmax;
mod pdm;
mod probability;
mod setting;
pub mod shots;
mod tsr;

use serde::Serialize;

pub use assemblage::{build_assemblage, Assemblage};
pub use bmax::{bmax_raw, bmax_raw_with, compute_bmax, BmaxSettings};
pub use pdm::{build_pdm, compute_f, FValue, PseudoDensityMatrix};
pub use probability::{
    check_nsit, check_nsit_with, correlator, joint_distribution, nsit_violation, quasiprobability,
    standard_settings, temporal_probability, unmeasured_probability, NsitReport,
};
pub use setting::{MeasurementSetting, Outcome};
pub use shots::{ShotSampler, DEFAULT_SHOTS};
pub use tsr::{compute_tsr, response, tsr_problem, TsrResult, NUM_HIDDEN_STATES};

use crate::channels::QubitMap;
use crate::error::Result;
use crate::qmath::DensityMatrix;
use crate::scalar::Real;

/// The three measures at one time point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorrelationRecord<T> {
    pub time: T,
    pub bmax: T,
    pub tsr: T,
    pub f: T,
    /// `B_max` before clipping; crosses zero linearly near its death.
    pub bmax_raw: T,
    pub f_raw: T,
    /// The TSR solve ran out of iterations.
    pub tsr_flagged: bool,
}

impl<T: Real> CorrelationRecord<T> {
    pub fn is_finite(&self) -> bool {
        [self.time, self.bmax, self.tsr, self.f, self.bmax_raw, self.f_raw]
            .iter()
            .all(|v| v.is_finite())
    }
}

/// Evaluates `B_max`, TSR and `f` for one channel.
pub fn correlation_record<T: Real>(
    channel: &(impl QubitMap<T> + ?Sized),
    rho0: &DensityMatrix<T>,
    time: T,
) -> Result<CorrelationRecord<T>> {
    let bmax_raw = bmax_raw(channel, rho0);
    let tsr = compute_tsr(&build_assemblage(channel, rho0)?)?;
    let f = compute_f(&build_pdm(channel, rho0))?;
    Ok(CorrelationRecord {
        time,
        bmax: bmax_raw.max(T::zero()),
        tsr: tsr.value,
        f: f.value,
        bmax_raw,
        f_raw: f.raw,
        tsr_flagged: tsr.is_flagged(),
    })
}
