use serde::Serialize;

use crate::error::{Error, Result};
use crate::measures::CorrelationRecord;

pub type Record = CorrelationRecord<f64>;

/// Which of the three measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Measure {
    Bmax,
    Tsr,
    F,
}

impl Measure {
    pub const ALL: [Measure; 3] = [Measure::Bmax, Measure::Tsr, Measure::F];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Bmax => "bmax",
            Measure::Tsr => "tsr",
            Measure::F => "f",
        }
    }

    pub fn of(self, r: &Record) -> f64 {
        match self {
            Measure::Bmax => r.bmax,
            Measure::Tsr => r.tsr,
            Measure::F => r.f,
        }
    }
}

/// Records in time order with the instantaneous rate of each measure.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureSeries {
    records: Vec<Record>,
    rates: Vec<[f64; 3]>,
}

impl MeasureSeries {
    pub const MIN_LEN: usize = 2;

    pub fn new(records: Vec<Record>) -> Result<Self> {
        if records.len() < Self::MIN_LEN {
            return Err(Error::SeriesTooShort {
                len: records.len(),
                min: Self::MIN_LEN,
            });
        }
        if records.windows(2).any(|w| !(w[1].time > w[0].time)) {
            return Err(Error::InvalidArgument("series times must be strictly increasing".into()));
        }
        if let Some(r) = records.iter().find(|r| !r.is_finite()) {
            return Err(Error::InvalidArgument(format!("non-finite record at t = {}", r.time)));
        }
        let times: Vec<f64> = records.iter().map(|r| r.time).collect();
        let per_measure = Measure::ALL.map(|m| {
            let v: Vec<f64> = records.iter().map(|r| m.of(r)).collect();
            derivative(&times, &v)
        });
        let rates = (0..records.len())
            .map(|k| [per_measure[0][k], per_measure[1][k], per_measure[2][k]])
            .collect();
        Ok(Self { records, rates })
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    /// `[d bmax/dt, d tsr/dt, d f/dt]` per record.
    pub fn rates(&self) -> &[[f64; 3]] {
        &self.rates
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn times(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.time).collect()
    }

    pub fn values(&self, m: Measure) -> Vec<f64> {
        self.records.iter().map(|r| m.of(r)).collect()
    }

    pub fn t_max(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.time)
    }
}

/// Three-point derivative: central in the interior, one-sided second order at
/// the ends. Grids may be non-uniform; two points fall back to a difference
/// quotient.
pub fn derivative(t: &[f64], v: &[f64]) -> Vec<f64> {
    let n = t.len();
    assert_eq!(n, v.len());
    if n < 2 {
        return vec![0.0; n];
    }
    if n == 2 {
        let d = (v[1] - v[0]) / (t[1] - t[0]);
        return vec![d, d];
    }
    // derivative at x of the parabola through (t[i], v[i]) for i in a..a+3
    let stencil = |a: usize, x: f64| {
        let (t0, t1, t2) = (t[a], t[a + 1], t[a + 2]);
        let w0 = (2.0 * x - t1 - t2) / ((t0 - t1) * (t0 - t2));
        let w1 = (2.0 * x - t0 - t2) / ((t1 - t0) * (t1 - t2));
        let w2 = (2.0 * x - t0 - t1) / ((t2 - t0) * (t2 - t1));
        w0 * v[a] + w1 * v[a + 1] + w2 * v[a + 2]
    };
    (0..n)
        .map(|k| match k {
            0 => stencil(0, t[0]),
            k if k == n - 1 => stencil(n - 3, t[k]),
            k => stencil(k - 1, t[k]),
        })
        .collect()
}
