use serde::Serialize;

use super::series::{Measure, MeasureSeries};
use crate::error::{Error, Result};

/// Fewest points [`detect_events`] accepts.
pub const MIN_EVENT_POINTS: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct MeasureEvents {
    /// First downward crossing of the threshold, interpolated.
    pub death_time: Option<f64>,
    /// Runs above the threshold that follow a run below it.
    pub revival_intervals: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EventReport {
    pub zero_tol: f64,
    pub bmax: MeasureEvents,
    pub tsr: MeasureEvents,
    pub f: MeasureEvents,
    /// `death(B_max) ≤ death(TSR) ≤ death(f)` with absent deaths at +∞.
    pub hierarchy_ok: bool,
    /// TSR revives after dying.
    pub non_markovian: bool,
}

impl EventReport {
    pub fn get(&self, m: Measure) -> &MeasureEvents {
        match m {
            Measure::Bmax => &self.bmax,
            Measure::Tsr => &self.tsr,
            Measure::F => &self.f,
        }
    }

    /// Interval where the qubit is macrorealistic yet still steerable.
    pub fn steerable_macrorealistic_window(&self) -> Option<(f64, f64)> {
        let start = self.bmax.death_time?;
        let end = self.tsr.death_time.unwrap_or(f64::INFINITY);
        (end > start).then_some((start, end))
    }
}

fn crossing(t0: f64, v0: f64, t1: f64, v1: f64, level: f64) -> f64 {
    if v1 == v0 {
        return t1;
    }
    (t0 + (level - v0) * (t1 - t0) / (v1 - v0)).clamp(t0, t1)
}

/// Death and revivals of one sampled measure against `zero_tol`.
pub fn measure_events(t: &[f64], v: &[f64], zero_tol: f64) -> MeasureEvents {
    let mut events = MeasureEvents::default();
    let alive = |k: usize| v[k] > zero_tol;
    if !alive(0) {
        events.death_time = Some(t[0]);
    }
    let mut revival_start = None;
    for k in 1..t.len() {
        match (alive(k - 1), alive(k)) {
            (true, false) => {
                let at = crossing(t[k - 1], v[k - 1], t[k], v[k], zero_tol);
                if events.death_time.is_none() {
                    events.death_time = Some(at);
                } else if let Some(start) = revival_start.take() {
                    events.revival_intervals.push((start, at));
                }
            }
            (false, true) => {
                revival_start = Some(crossing(t[k - 1], v[k - 1], t[k], v[k], zero_tol));
            }
            _ => {}
        }
    }
    if let Some(start) = revival_start {
        events.revival_intervals.push((start, t[t.len() - 1]));
    }
    events
}

/// Sudden deaths, revivals and the ordering of deaths along a series.
///
/// `B_max` is thresholded on its unclipped value, which crosses zero linearly.
pub fn detect_events(s: &MeasureSeries, zero_tol: f64) -> Result<EventReport> {
    if s.len() < MIN_EVENT_POINTS {
        return Err(Error::SeriesTooShort {
            len: s.len(),
            min: MIN_EVENT_POINTS,
        });
    }
    if !(zero_tol > 0.0) {
        return Err(Error::InvalidArgument(format!("zero_tol must be positive, got {zero_tol}")));
    }
    let t = s.times();
    let bmax_raw: Vec<f64> = s.records().iter().map(|r| r.bmax_raw).collect();
    let bmax = measure_events(&t, &bmax_raw, zero_tol);
    let tsr = measure_events(&t, &s.values(Measure::Tsr), zero_tol);
    let f = measure_events(&t, &s.values(Measure::F), zero_tol);
    let key = |e: &MeasureEvents| e.death_time.unwrap_or(f64::INFINITY);
    let hierarchy_ok = key(&bmax) <= key(&tsr) && key(&tsr) <= key(&f);
    let non_markovian = !tsr.revival_intervals.is_empty();
    Ok(EventReport {
        zero_tol,
        bmax,
        tsr,
        f,
        hierarchy_ok,
        non_markovian,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::series::Record;

    fn series(t: &[f64], v: impl Fn(f64) -> [f64; 3]) -> MeasureSeries {
        let records = t
            .iter()
            .map(|&x| {
                let [b, s, f] = v(x);
                Record {
                    time: x,
                    bmax: b.max(0.0),
                    tsr: s,
                    f,
                    bmax_raw: b,
                    f_raw: f,
                    tsr_flagged: false,
                }
            })
            .collect();
        MeasureSeries::new(records).unwrap()
    }

    #[test]
    fn synthetic_death_and_revival() {
        let t: Vec<f64> = (0..=100).map(|k| k as f64 * 0.1).collect();
        // tsr dies at 2.0, revives on (4.0, 6.0), dies for good afterwards
        let tsr = |x: f64| {
            if x < 2.0 {
                2.0 - x
            } else if x > 4.0 && x < 6.0 {
                (x - 4.0) * (6.0 - x)
            } else {
                0.0
            }
        };
        let s = series(&t, |x| [1.0 - x, tsr(x), 1.0]);
        let rep = detect_events(&s, 1e-4).unwrap();
        assert!((rep.bmax.death_time.unwrap() - 1.0).abs() < 0.1);
        assert!((rep.tsr.death_time.unwrap() - 2.0).abs() < 0.1);
        assert_eq!(rep.tsr.revival_intervals.len(), 1);
        let (a, b) = rep.tsr.revival_intervals[0];
        assert!((a - 4.0).abs() < 0.1 && (b - 6.0).abs() < 0.1);
        assert_eq!(rep.f.death_time, None);
        assert!(rep.hierarchy_ok && rep.non_markovian);
        assert_eq!(rep.steerable_macrorealistic_window(), Some((rep.bmax.death_time.unwrap(), rep.tsr.death_time.unwrap())));
    }

    #[test]
    fn interpolated_crossing_and_violation() {
        let t: Vec<f64> = (0..=10).map(|k| k as f64 * 0.1).collect();
        let s = series(&t, |x| [0.5, 0.35 - x, 1.0]);
        let rep = detect_events(&s, 1e-4).unwrap();
        assert!((rep.tsr.death_time.unwrap() - (0.35 - 1e-4)).abs() < 1e-12);
        // tsr dies while bmax lives on
        assert!(!rep.hierarchy_ok);
    }

    #[test]
    fn revival_running_to_the_end() {
        let t: Vec<f64> = (0..=10).map(|k| k as f64).collect();
        let v = [1.0, 0.0, 0.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0];
        let e = measure_events(&t, &v, 0.5);
        assert_eq!(e.death_time, Some(0.5));
        assert_eq!(e.revival_intervals, vec![(2.5, 10.0)]);
        let dead = measure_events(&t, &[0.0; 11], 0.5);
        assert_eq!(dead.death_time, Some(0.0));
    }

    #[test]
    fn short_series_rejected() {
        let s = series(&[0.0, 1.0, 2.0], |_| [1.0; 3]);
        assert!(matches!(detect_events(&s, 1e-4), Err(Error::SeriesTooShort { len: 3, min: 5 })));
    }
}
