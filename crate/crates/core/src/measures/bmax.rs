use super::probability::correlator;
use super::setting::MeasurementSetting;
use crate::channels::QubitMap;
use crate::qmath::DensityMatrix;
use crate::scalar::Real;

/// The four axes of the temporal CHSH combination: `a`, `a'` at `t1` and
/// `b`, `b'` at `t2`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BmaxSettings<T> {
    pub a: MeasurementSetting<T>,
    pub a_prime: MeasurementSetting<T>,
    pub b: MeasurementSetting<T>,
    pub b_prime: MeasurementSetting<T>,
}

impl<T: Real> BmaxSettings<T> {
    /// `(σ_y+σ_z)/√2`, `(-σ_y+σ_z)/√2`, `σ_z`, `σ_y`.
    pub fn standard() -> Self {
        let h = T::FRAC_1_SQRT_2();
        Self {
            a: MeasurementSetting::new([T::zero(), h, h]).expect("unit axis"),
            a_prime: MeasurementSetting::new([T::zero(), -h, h]).expect("unit axis"),
            b: MeasurementSetting::z(),
            b_prime: MeasurementSetting::y(),
        }
    }
}

/// `2√2 - 2`
fn denominator<T: Real>() -> T {
    T::lit(2.0) * T::SQRT_2() - T::lit(2.0)
}

/// Unclipped `(C_ab + C_a'b + C_ab' - C_a'b' - 2)/(2√2 - 2)`; negative when
/// the temporal CHSH bound is respected.
pub fn bmax_raw_with<T: Real>(
    channel: &(impl QubitMap<T> + ?Sized),
    rho0: &DensityMatrix<T>,
    s: &BmaxSettings<T>,
) -> T {
    let chsh = correlator(channel, &s.a, &s.b, rho0)
        + correlator(channel, &s.a_prime, &s.b, rho0)
        + correlator(channel, &s.a, &s.b_prime, rho0)
        - correlator(channel, &s.a_prime, &s.b_prime, rho0);
    bmax_from_chsh(chsh)
}

pub(crate) fn bmax_from_chsh<T: Real>(chsh: T) -> T {
    (chsh - T::lit(2.0)) / denominator()
}

pub fn bmax_raw<T: Real>(channel: &(impl QubitMap<T> + ?Sized), rho0: &DensityMatrix<T>) -> T {
    bmax_raw_with(channel, rho0, &BmaxSettings::standard())
}

/// `B_max` with the fixed settings, clipped at zero.
pub fn compute_bmax<T: Real>(channel: &(impl QubitMap<T> + ?Sized), rho0: &DensityMatrix<T>) -> T {
    bmax_raw(channel, rho0).max(T::zero())
}
