use num_complex::Complex;

use super::{QubitMap, Superoperator};
use crate::error::{Error, Result};
use crate::qmath::{hermitian_eig, pauli, sqrt_psd, BlochVector, ComplexMatrix, DensityMatrix};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Operator basis `{𝕀, σ_x, -iσ_y, σ_z}` of the χ representation.
pub(crate) fn chi_basis<T: Real>(m: usize) -> ComplexMatrix<T> {
    match m {
        0 => pauli::identity(),
        1 => pauli::x(),
        2 => pauli::y::<T>().scale(Complex::new(T::zero(), -T::one())),
        3 => pauli::z(),
        _ => panic!("χ basis index {m} out of range"),
    }
}

/// `v_m = (𝕀 ⊗ E_m)|Ω⟩` with `|Ω⟩ = Σ_i |ii⟩`; the Choi matrix is `Σ χ_mn v_m v_n†`.
fn choi_vector<T: Real>(m: usize) -> [Complex<T>; 4] {
    let e = chi_basis::<T>(m);
    [e[(0, 0)], e[(1, 0)], e[(0, 1)], e[(1, 1)]]
}

/// Process matrix: `Λ(ρ) = Σ_mn χ_mn E_m ρ E_n†` in the basis `{𝕀, σ_x, -iσ_y, σ_z}`.
#[derive(Clone, Debug)]
pub struct ChiMatrix<T> {
    entries: ComplexMatrix<T>,
}

impl<T: Real> ChiMatrix<T> {
    pub fn new(entries: ComplexMatrix<T>) -> Result<Self> {
        Self::new_with(entries, &Tolerances::default())
    }

    pub fn new_with(entries: ComplexMatrix<T>, tol: &Tolerances<T>) -> Result<Self> {
        if entries.dim() != 4 {
            return Err(Error::BadDimension {
                expected: 4,
                actual: entries.dim(),
            });
        }
        let herm = entries.hermiticity_error();
        if herm > tol.chi_hermitian {
            return Err(Error::NonHermitian {
                deviation: herm.to_f64_lossy(),
            });
        }
        let tr = entries.trace();
        if (tr.re - T::one()).abs() > tol.chi_trace || tr.im.abs() > tol.chi_trace {
            return Err(Error::InvalidArgument(format!(
                "process matrix trace {} differs from 1",
                tr.re
            )));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &ComplexMatrix<T> {
        &self.entries
    }

    /// Converts a (trace-preserving) superoperator to its process matrix.
    pub fn from_superoperator(s: &Superoperator<T>) -> Result<Self> {
        let j = s.choi();
        let quarter = T::lit(0.25);
        let vs: Vec<[Complex<T>; 4]> = (0..4).map(choi_vector::<T>).collect();
        let entries = ComplexMatrix::from_fn(4, |m, n| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for r in 0..4 {
                for c in 0..4 {
                    acc = acc + vs[m][r].conj() * j[(r, c)] * vs[n][c];
                }
            }
            acc * quarter
        });
        Self::new(entries)
    }

    pub fn choi(&self) -> ComplexMatrix<T> {
        let vs: Vec<[Complex<T>; 4]> = (0..4).map(choi_vector::<T>).collect();
        ComplexMatrix::from_fn(4, |r, c| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for m in 0..4 {
                for n in 0..4 {
                    acc = acc + self.entries[(m, n)] * vs[m][r] * vs[n][c].conj();
                }
            }
            acc
        })
    }

    pub fn to_superoperator(&self) -> Superoperator<T> {
        Superoperator::from_choi(&self.choi()).expect("4x4 Choi matrix")
    }
}

impl<T: Real> QubitMap<T> for ChiMatrix<T> {
    fn apply_operator(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let mut out = ComplexMatrix::zeros(2);
        let basis: Vec<ComplexMatrix<T>> = (0..4).map(chi_basis).collect();
        for m in 0..4 {
            let left = basis[m].matmul(op);
            for n in 0..4 {
                let w = self.entries[(m, n)];
                if w.norm_sqr() == T::zero() {
                    continue;
                }
                out += &left.matmul(&basis[n].adjoint()).scale(w);
            }
        }
        out
    }
}

/// Reconstructs χ from the channel's outputs on `|0⟩, |1⟩, |+⟩, |+i⟩`.
///
/// The off-diagonal matrix-unit images follow by linearity:
/// `Λ(|0⟩⟨1|) = Λ(|+⟩⟨+|) + iΛ(|+i⟩⟨+i|) - (1+i)/2 (Λ(|0⟩⟨0|) + Λ(|1⟩⟨1|))`.
pub fn process_tomography<T: Real>(channel: &(impl QubitMap<T> + ?Sized)) -> Result<ChiMatrix<T>> {
    let zero = T::zero();
    let one = T::one();
    let prep = |b: [T; 3]| -> Result<DensityMatrix<T>> {
        DensityMatrix::from_bloch(BlochVector::new(b[0], b[1], b[2])?)
    };
    let r0 = channel.apply_operator(prep([zero, zero, one])?.matrix());
    let r1 = channel.apply_operator(prep([zero, zero, -one])?.matrix());
    let rp = channel.apply_operator(prep([one, zero, zero])?.matrix());
    let ri = channel.apply_operator(prep([zero, one, zero])?.matrix());

    let half = T::lit(0.5);
    let i = Complex::new(zero, one);
    let diag_sum = &r0 + &r1;
    let r01 = &(&rp + &ri.scale(i)) - &diag_sum.scale(Complex::new(half, half));
    let r10 = &(&rp - &ri.scale(i)) - &diag_sum.scale(Complex::new(half, -half));
    let s = Superoperator::from_images([r0, r01, r10, r1])?;
    ChiMatrix::from_superoperator(&s)
}

/// Uhlmann fidelity `(tr √(√ρ σ √ρ))²` of two positive semidefinite operators
/// of equal trace normalisation.
pub fn state_fidelity<T: Real>(rho: &ComplexMatrix<T>, sigma: &ComplexMatrix<T>) -> Result<T> {
    let root = sqrt_psd(rho)?;
    let inner = root.matmul(sigma).matmul(&root).hermitian_part();
    let e = hermitian_eig(&inner)?;
    let tr: T = e.values.iter().map(|&l| l.max(T::zero()).sqrt()).sum();
    Ok(tr * tr)
}

/// Fidelity between the normalised Choi states of two processes, clamped to `[0, 1]`.
pub fn process_fidelity<T: Real>(a: &ChiMatrix<T>, b: &ChiMatrix<T>) -> Result<T> {
    let half = T::lit(0.5);
    let ja = a.choi().scale_real(half);
    let jb = b.choi().scale_real(half);
    let f = state_fidelity(&ja, &jb)?;
    Ok(f.max(T::zero()).min(T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{standard_channel, ChannelKind, IdentityMap, KrausChannel, UnitaryMap};

    type M = ComplexMatrix<f64>;

    fn chi_of(map: &impl QubitMap<f64>) -> ChiMatrix<f64> {
        process_tomography(map).unwrap()
    }

    fn only_entry(chi: &ChiMatrix<f64>, m: usize) {
        for r in 0..4 {
            for c in 0..4 {
                let expected = if r == m && c == m { 1.0 } else { 0.0 };
                assert!((chi.entries()[(r, c)] - Complex::new(expected, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn identity_process() {
        only_entry(&chi_of(&IdentityMap), 0);
    }

    #[test]
    fn x_gate_process() {
        only_entry(&chi_of(&UnitaryMap { unitary: pauli::x() }), 1);
    }

    #[test]
    fn reconstructed_damping_reproduces_output() {
        let ad = standard_channel(ChannelKind::AmplitudeDamping, 1.0).unwrap();
        let chi = chi_of(&ad);
        let out = chi.apply_operator(DensityMatrix::<f64>::maximally_mixed(2).matrix());
        assert!(out.approx_eq(&M::diag(&[1.0, 0.0]), 1e-14));
    }

    #[test]
    fn tomography_matches_on_preparations() {
        for kind in ChannelKind::ALL {
            let ch = standard_channel(kind, 0.37).unwrap();
            let chi = chi_of(&ch);
            for b in [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]] {
                let rho = DensityMatrix::from_bloch(BlochVector::new(b[0], b[1], b[2]).unwrap()).unwrap();
                let want = ch.apply_operator(rho.matrix());
                assert!(chi.apply_operator(rho.matrix()).max_abs_diff(&want) < 1e-8);
            }
        }
    }

    #[test]
    fn chi_round_trip_from_known_process() {
        // χ of a partially coherent mixture of 𝕀 and σ_x
        let mut entries = M::zeros(4);
        entries[(0, 0)] = Complex::new(0.7, 0.0);
        entries[(1, 1)] = Complex::new(0.3, 0.0);
        entries[(0, 1)] = Complex::new(0.2, 0.1);
        entries[(1, 0)] = Complex::new(0.2, -0.1);
        let known = ChiMatrix::new(entries).unwrap();
        let back = process_tomography(&known).unwrap();
        assert!(back.entries().max_abs_diff(known.entries()) < 1e-8);
    }

    #[test]
    fn fidelity_examples() {
        let id = chi_of(&IdentityMap);
        let x = chi_of(&UnitaryMap { unitary: pauli::x() });
        assert!((process_fidelity(&id, &id).unwrap() - 1.0).abs() < 1e-12);
        assert!(process_fidelity(&id, &x).unwrap() < 1e-12);
        let dep = chi_of(&standard_channel(ChannelKind::Depolarizing, 0.5).unwrap());
        let fab = process_fidelity(&id, &dep).unwrap();
        let fba = process_fidelity(&dep, &id).unwrap();
        assert!((fab - fba).abs() < 1e-10);
        // entanglement fidelity of depolarizing: 1 - 3s/4
        assert!((fab - 0.625).abs() < 1e-10);
    }

    #[test]
    fn chi_rejects_bad_trace() {
        assert!(ChiMatrix::new(M::identity(4)).is_err());
        let _ = KrausChannel::<f64>::identity();
    }
}
