use super::setting::{MeasurementSetting, Outcome};
use super::bmax::BmaxSettings;
use crate::channels::QubitMap;
use crate::qmath::DensityMatrix;
use crate::scalar::Real;

/// `p(a,b) = tr(Π_{b|m2} Λ(Π_{a|m1} ρ0 Π_{a|m1}))`
pub fn temporal_probability<T: Real>(
    channel: &(impl QubitMap<T> + ?Sized),
    m1: &MeasurementSetting<T>,
    a: Outcome,
    m2: &MeasurementSetting<T>,
    b: Outcome,
    rho0: &DensityMatrix<T>,
) -> T {
    let evolved = channel.apply_operator(&m1.project(a, rho0.matrix()));
    m2.effect(b).trace_product(&evolved).re
}

/// All four joint probabilities, ordered `(+,+), (+,-), (-,+), (-,-)`.
pub fn joint_distribution<T: Real>(
    channel: &(impl QubitMap<T> + ?Sized),
    m1: &MeasurementSetting<T>,
    m2: &MeasurementSetting<T>,
    rho0: &DensityMatrix<T>,
) -> [T; 4] {
    let mut out = [T::zero(); 4];
    for a in Outcome::ALL {
        let evolved = channel.apply_operator(&m1.project(a, rho0.matrix()));
        for b in Outcome::ALL {
            out[2 * a.index() + b.index()] = m2.effect(b).trace_product(&evolved).re;
        }
    }
    out
}

/// Two-time correlator `Σ_{a,b} a b p(a,b)`.
pub fn correlator<T: Real>(
    channel: &(impl QubitMap<T> + ?Sized),
    m1: &MeasurementSetting<T>,
    m2: &MeasurementSetting<T>,
    rho0: &DensityMatrix<T>,
) -> T {
    let p = joint_distribution(channel, m1, m2, rho0);
    p[0] - p[1] - p[2] + p[3]
}

/// `q(a,b) = ½ tr{(Π_b Π_a + Π_a Π_b) ρ0}`
pub fn quasiprobability<T: Real>(
    m1: &MeasurementSetting<T>,
    a: Outcome,
    m2: &MeasurementSetting<T>,
    b: Outcome,
    rho0: &DensityMatrix<T>,
) -> T {
    let pa = m1.effect(a);
    let pb = m2.effect(b);
    pa.anticommutator(&pb).trace_product(rho0.matrix()).re * T::lit(0.5)
}

/// Outcome probability at `t2` with no measurement at `t1`.
pub fn unmeasured_probability<T: Real>(
    channel: &(impl QubitMap<T> + ?Sized),
    m2: &MeasurementSetting<T>,
    b: Outcome,
    rho0: &DensityMatrix<T>,
) -> T {
    m2.effect(b).trace_product(&channel.apply_operator(rho0.matrix())).re
}

/// `|Σ_a p(a,b) - p(b)|` for one setting pair and outcome.
pub fn nsit_violation<T: Real>(
    channel: &(impl QubitMap<T> + ?Sized),
    m1: &MeasurementSetting<T>,
    m2: &MeasurementSetting<T>,
    b: Outcome,
    rho0: &DensityMatrix<T>,
) -> T {
    let marginal: T = Outcome::ALL
        .iter()
        .map(|&a| temporal_probability(channel, m1, a, m2, b, rho0))
        .sum();
    (marginal - unmeasured_probability(channel, m2, b, rho0)).abs()
}

#[derive(Clone, Debug)]
pub struct NsitReport<T> {
    pub max_violation: T,
    /// Setting pair and `t2` outcome where the largest violation occurs.
    pub worst: (MeasurementSetting<T>, MeasurementSetting<T>, Outcome),
    pub combinations_checked: usize,
}

impl<T: Real> NsitReport<T> {
    pub fn holds(&self, tol: T) -> bool {
        self.max_violation <= tol
    }
}

/// The settings every measure uses: the three Paulis and the two tilted
/// `B_max` axes at `t1`.
pub fn standard_settings<T: Real>() -> Vec<MeasurementSetting<T>> {
    let b = BmaxSettings::standard();
    let mut out = MeasurementSetting::paulis().to_vec();
    out.push(b.a);
    out.push(b.a_prime);
    out
}

/// No-signalling in time over [`standard_settings`] at both times.
pub fn check_nsit<T: Real>(
    channel: &(impl QubitMap<T> + ?Sized),
    rho0: &DensityMatrix<T>,
) -> NsitReport<T> {
    check_nsit_with(channel, rho0, &standard_settings())
}

pub fn check_nsit_with<T: Real>(
    channel: &(impl QubitMap<T> + ?Sized),
    rho0: &DensityMatrix<T>,
    settings: &[MeasurementSetting<T>],
) -> NsitReport<T> {
    let mut worst = (settings[0], settings[0], Outcome::Plus);
    let mut max_violation = -T::one();
    let mut count = 0;
    for m1 in settings {
        for m2 in settings {
            for b in Outcome::ALL {
                let v = nsit_violation(channel, m1, m2, b, rho0);
                count += 1;
                if v > max_violation {
                    max_violation = v;
                    worst = (*m1, *m2, b);
                }
            }
        }
    }
    NsitReport {
        max_violation,
        worst,
        combinations_checked: count,
    }
}
