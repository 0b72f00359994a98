use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::config::{Scenario, ShotMode, SweepConfig};
use super::series::{MeasureSeries, Record};
use crate::channels::{compile_to_gates, decompose_channel, standard_channel, strength_at_time, QubitMap};
use crate::dynamics::{build_two_qubit_model, channels_on_grid};
use crate::error::Result;
use crate::measures::{correlation_record, ShotSampler};
use crate::qmath::DensityMatrix;

/// Generator for time point `index`: the seeded stream `index` of ChaCha8.
pub fn point_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn evaluate(
    exact: &dyn QubitMap<f64>,
    components: Vec<(f64, &dyn QubitMap<f64>)>,
    sampling: Option<ShotMode>,
    t: f64,
    index: usize,
) -> Result<Record> {
    let rho0 = DensityMatrix::maximally_mixed(2);
    let out = match sampling {
        None => correlation_record(exact, &rho0, t),
        Some(sm) => {
            let sampler = ShotSampler::new(components, sm.shots)?;
            sampler.record(&mut point_rng(sm.seed, index), &rho0, t)
        }
    };
    out.map_err(|e| e.at_time(t))
}

/// One record per grid time with `ρ0 = 𝕀/2` at `t1 = 0`; time points run in
/// parallel and are assembled in order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<MeasureSeries> {
    cfg.validate()?;
    let times = cfg.times();
    let sampling = cfg.sampling();
    let records: Result<Vec<Record>> = match &cfg.scenario {
        Scenario::ChannelSweep { kind, gamma } => times
            .par_iter()
            .enumerate()
            .map(|(k, &t)| {
                let ch = standard_channel(*kind, strength_at_time(*gamma, t)).map_err(|e| e.at_time(t))?;
                evaluate(&ch, vec![(1.0, &ch)], sampling, t, k)
            })
            .collect(),
        Scenario::CompiledChannelSweep { kind, gamma, .. } => times
            .par_iter()
            .enumerate()
            .map(|(k, &t)| {
                let d = decompose_channel(*kind, strength_at_time(*gamma, t)).map_err(|e| e.at_time(t))?;
                let compiled = compile_to_gates(&d);
                let components = compiled
                    .weights()
                    .into_iter()
                    .zip(compiled.branch_maps())
                    .map(|(w, m)| (w, m as &dyn QubitMap<f64>))
                    .collect();
                evaluate(&compiled, components, sampling, t, k)
            })
            .collect(),
        Scenario::FreeEvolution {
            coupling,
            system,
            environment,
            dt,
        } => {
            let model = build_two_qubit_model(*coupling, *system, *environment)?;
            let maps = channels_on_grid(&model, &times, dt.unwrap_or_else(|| model.default_dt()))?;
            times
                .par_iter()
                .zip(maps.par_iter())
                .enumerate()
                .map(|(k, (&t, map))| evaluate(map, vec![(1.0, map)], sampling, t, k))
                .collect()
        }
    };
    MeasureSeries::new(records?)
}
