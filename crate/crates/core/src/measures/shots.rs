//! Finite-sample estimates of the three measures.
//!
//! Every probability is replaced by a frequency from multinomial draws. When
//! the channel is a mixture of branches, each shot first draws its branch.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use super::assemblage::Assemblage;
use super::bmax::{bmax_from_chsh, BmaxSettings};
use super::pdm::{compute_f, PseudoDensityMatrix};
use super::probability::joint_distribution;
use super::setting::{MeasurementSetting, Outcome};
use super::tsr::compute_tsr;
use super::CorrelationRecord;
use crate::channels::QubitMap;
use crate::error::{Error, Result};
use crate::qmath::{hermitian_eig, pauli, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;

pub const DEFAULT_SHOTS: u64 = 8192;

/// Counts from `n` draws over the given probabilities.
pub fn multinomial<R: Rng + ?Sized>(rng: &mut R, n: u64, probs: &[f64]) -> Vec<u64> {
    let mut out = vec![0; probs.len()];
    let mut left = n;
    let mut mass: f64 = probs.iter().map(|p| p.max(0.0)).sum();
    for (k, &p) in probs.iter().enumerate() {
        if left == 0 {
            break;
        }
        let p = p.max(0.0);
        if k + 1 == probs.len() || mass <= p {
            out[k] = left;
            break;
        }
        let q = (p / mass).clamp(0.0, 1.0);
        let x = Binomial::new(left, q).expect("probability in [0, 1]").sample(rng);
        out[k] = x;
        left -= x;
        mass -= p;
    }
    out
}

/// Truncates negative eigenvalues and rescales to unit trace.
pub fn project_to_state<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
    let eig = hermitian_eig(&m.hermitian_part())?;
    let clipped = eig.map_values(|l| l.max(T::zero()));
    let tr = clipped.trace().re;
    if !(tr > T::zero()) {
        return Err(Error::InvalidState("no positive part to renormalise".into()));
    }
    Ok(clipped.scale_real(T::one() / tr))
}

/// Samples experiments on a channel given as a convex mixture of branch maps.
pub struct ShotSampler<'a, T> {
    components: Vec<(T, &'a dyn QubitMap<T>)>,
    shots: u64,
}

impl<'a, T: Real> ShotSampler<'a, T> {
    pub fn new(components: Vec<(T, &'a dyn QubitMap<T>)>, shots: u64) -> Result<Self> {
        if shots == 0 {
            return Err(Error::InvalidArgument("shot count must be positive".into()));
        }
        if components.is_empty() || components.iter().any(|(w, _)| !(*w >= T::zero())) {
            return Err(Error::InvalidArgument("mixture weights must be non-negative".into()));
        }
        Ok(Self { components, shots })
    }

    pub fn single(channel: &'a dyn QubitMap<T>, shots: u64) -> Result<Self> {
        Self::new(vec![(T::one(), channel)], shots)
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    fn branch_counts<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        let w: Vec<f64> = self.components.iter().map(|(w, _)| w.to_f64_lossy()).collect();
        multinomial(rng, self.shots, &w)
    }

    /// Counts of `(+,+), (+,-), (-,+), (-,-)` for a two-time experiment.
    pub fn joint_counts<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        m1: &MeasurementSetting<T>,
        m2: &MeasurementSetting<T>,
        rho0: &DensityMatrix<T>,
    ) -> [u64; 4] {
        let mut out = [0; 4];
        for (n, (_, map)) in self.branch_counts(rng).into_iter().zip(&self.components) {
            let p = joint_distribution(*map, m1, m2, rho0).map(|v| v.to_f64_lossy());
            for (o, c) in out.iter_mut().zip(multinomial(rng, n, &p)) {
                *o += c;
            }
        }
        out
    }

    /// Counts of `+, -` at `t2` with no measurement at `t1`.
    pub fn marginal_counts<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        m2: &MeasurementSetting<T>,
        rho0: &DensityMatrix<T>,
    ) -> [u64; 2] {
        let mut out = [0; 2];
        for (n, (_, map)) in self.branch_counts(rng).into_iter().zip(&self.components) {
            let evolved = map.apply_operator(rho0.matrix());
            let p = Outcome::ALL.map(|b| m2.effect(b).trace_product(&evolved).re.to_f64_lossy());
            let c = multinomial(rng, n, &p);
            out[0] += c[0];
            out[1] += c[1];
        }
        out
    }

    fn frequency(&self, count: u64) -> T {
        T::lit(count as f64 / self.shots as f64)
    }

    fn correlator_of(&self, c: &[u64; 4]) -> T {
        self.frequency(c[0] + c[3]) - self.frequency(c[1] + c[2])
    }

    /// Unclipped `B_max` from four sampled correlators.
    pub fn bmax_raw<R: Rng + ?Sized>(&self, rng: &mut R, rho0: &DensityMatrix<T>) -> T {
        let s = BmaxSettings::standard();
        let mut c = |m1, m2| self.correlator_of(&self.joint_counts(rng, m1, m2, rho0));
        let chsh = c(&s.a, &s.b) + c(&s.a_prime, &s.b) + c(&s.a, &s.b_prime) - c(&s.a_prime, &s.b_prime);
        bmax_from_chsh(chsh)
    }

    /// Assemblage from `t2` tomography conditioned on each `t1` outcome, with
    /// every conditional state projected onto the state space.
    pub fn assemblage<R: Rng + ?Sized>(&self, rng: &mut R, rho0: &DensityMatrix<T>) -> Result<Assemblage<T>> {
        let paulis = MeasurementSetting::paulis();
        let mut members: [[ComplexMatrix<T>; 2]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| ComplexMatrix::zeros(2)));
        for (m, m1) in paulis.iter().enumerate() {
            let counts: Vec<[u64; 4]> = paulis.iter().map(|m2| self.joint_counts(rng, m1, m2, rho0)).collect();
            for a in Outcome::ALL {
                let row = 2 * a.index();
                let hits: u64 = counts.iter().map(|c| c[row] + c[row + 1]).sum();
                let p = T::lit(hits as f64 / (3 * self.shots) as f64);
                if hits == 0 {
                    members[m][a.index()] = ComplexMatrix::zeros(2);
                    continue;
                }
                let mut state = ComplexMatrix::identity(2);
                for (j, c) in counts.iter().enumerate() {
                    let n = c[row] + c[row + 1];
                    if n > 0 {
                        let r = T::lit((c[row] as f64 - c[row + 1] as f64) / n as f64);
                        state += &pauli::basis::<T>(j + 1).scale_real(r);
                    }
                }
                let state = project_to_state(&state.scale_real(T::lit(0.5)))?;
                members[m][a.index()] = state.scale_real(p);
            }
        }
        Ok(Assemblage::new_unchecked(members))
    }

    /// Pseudo-density matrix from sampled correlators; `C_i𝕀` is read off the
    /// `t1` marginals and `C_𝕀j` from runs without the first measurement.
    pub fn pdm<R: Rng + ?Sized>(&self, rng: &mut R, rho0: &DensityMatrix<T>) -> Result<PseudoDensityMatrix<T>> {
        let paulis = MeasurementSetting::paulis();
        let mut c = [[T::zero(); 4]; 4];
        c[0][0] = T::one();
        for (i, m1) in paulis.iter().enumerate() {
            let mut first = T::zero();
            for (j, m2) in paulis.iter().enumerate() {
                let counts = self.joint_counts(rng, m1, m2, rho0);
                c[i + 1][j + 1] = self.correlator_of(&counts);
                first += self.frequency(counts[0] + counts[1]) - self.frequency(counts[2] + counts[3]);
            }
            c[i + 1][0] = first / T::lit(3.0);
        }
        for (j, m2) in paulis.iter().enumerate() {
            let counts = self.marginal_counts(rng, m2, rho0);
            c[0][j + 1] = self.frequency(counts[0]) - self.frequency(counts[1]);
        }
        PseudoDensityMatrix::from_correlators(c)
    }

    pub fn record<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        rho0: &DensityMatrix<T>,
        time: T,
    ) -> Result<CorrelationRecord<T>> {
        let bmax_raw = self.bmax_raw(rng, rho0);
        let tsr = compute_tsr(&self.assemblage(rng, rho0)?)?;
        let f = compute_f(&self.pdm(rng, rho0)?)?;
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
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{standard_channel, ChannelKind, IdentityMap};
    use crate::measures::correlation_record;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn multinomial_conserves_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = multinomial(&mut rng, 1000, &[0.1, 0.0, 0.6, 0.3]);
        assert_eq!(c.iter().sum::<u64>(), 1000);
        assert_eq!(c[1], 0);
        assert_eq!(multinomial(&mut rng, 10, &[0.0, 1.0]), vec![0, 10]);
    }

    #[test]
    fn projection_clips_negative_part() {
        let m = ComplexMatrix::<f64>::diag(&[1.2, -0.2]);
        let s = project_to_state(&m).unwrap();
        assert!(s.approx_eq(&ComplexMatrix::unit(2, 0, 0), 1e-15));
    }

    #[test]
    fn estimates_scatter_around_exact_values() {
        let rho = DensityMatrix::<f64>::maximally_mixed(2);
        let ch = standard_channel(ChannelKind::Depolarizing, 0.1).unwrap();
        let exact = correlation_record(&ch, &rho, 0.0).unwrap();
        let sampler = ShotSampler::single(&ch, 200_000).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let est = sampler.record(&mut rng, &rho, 0.0).unwrap();
        assert!((est.bmax - exact.bmax).abs() < 0.02);
        assert!((est.tsr - exact.tsr).abs() < 0.02);
        assert!((est.f - exact.f).abs() < 0.02);
    }

    #[test]
    fn same_seed_same_estimate() {
        let rho = DensityMatrix::<f64>::maximally_mixed(2);
        let sampler = ShotSampler::single(&IdentityMap, 512).unwrap();
        let a = sampler.record(&mut ChaCha8Rng::seed_from_u64(5), &rho, 0.0).unwrap();
        let b = sampler.record(&mut ChaCha8Rng::seed_from_u64(5), &rho, 0.0).unwrap();
        assert_eq!(a, b);
    }
}
