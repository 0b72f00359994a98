//! Time sweeps of the three measures, sudden-death and revival detection,
//! instantaneous rates, hierarchy reports and file output.
//!
//! Sweeps always start from the maximally mixed state at `t1 = 0`; the second
//! measurement happens at each grid time `t`. For channel sweeps the strength
//! at `t` is `1 - exp(-gamma t)`, so with `gamma = 1` the axis is `γt`.

mod config;
mod csv_io;
mod events;
mod plot;
mod report;
mod series;
mod sweep;

pub use config::{
    load_configs, parse_configs, seed_from_env, Scenario, ShotMode, SweepConfig, DEFAULT_ZERO_TOL, SEED_ENV,
};
pub use csv_io::{emit_csv, read_csv, write_csv, CSV_HEADER};
pub use events::{detect_events, measure_events, EventReport, MeasureEvents, MIN_EVENT_POINTS};
pub use plot::render_svg;
pub use report::{hierarchy_report, HierarchyReport, ScenarioReport};
pub use series::{derivative, Measure, MeasureSeries, Record};
pub use sweep::{point_rng, run_sweep};
