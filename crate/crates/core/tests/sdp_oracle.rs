use num_complex::Complex;
use proptest::prelude::*;
use tempocorr::qmath::ComplexMatrix;
use tempocorr::sdp::{extract_dual_certificate, solve, SdpProblem};

type M = ComplexMatrix<f64>;

fn hermitian(a: f64, d: f64, re: f64, im: f64) -> M {
    M::from_fn(2, |i, j| match (i, j) {
        (0, 0) => Complex::new(a, 0.0),
        (1, 1) => Complex::new(d, 0.0),
        (0, 1) => Complex::new(re, im),
        _ => Complex::new(re, -im),
    })
}

/// `Σ max(λ, 0)` from the closed-form 2x2 spectrum.
fn positive_part_trace(a: f64, d: f64, re: f64, im: f64) -> f64 {
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d).powi(2) + re * re + im * im).sqrt();
    (mean + radius).max(0.0) + (mean - radius).max(0.0)
}

fn dominate(a: &M) -> SdpProblem<f64> {
    let mut p = SdpProblem::new(vec![2]).unwrap();
    p.minimize_total_trace();
    p.add_constraint(vec![(0, 1.0)], a.scale_real(-1.0)).unwrap();
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn trace_of_dominating_matrix(a in -1.0..1.0f64, d in -1.0..1.0f64, re in -1.0..1.0f64, im in -1.0..1.0f64) {
        let s = solve(&dominate(&hermitian(a, d, re, im))).unwrap();
        prop_assert!(s.is_optimal());
        prop_assert!((s.objective_value - positive_part_trace(a, d, re, im)).abs() < 1e-6);
        prop_assert!(s.duality_gap >= 0.0 && s.duality_gap < 1e-6);
    }

    #[test]
    fn extra_constraints_never_lower_the_optimum(a in -1.0..1.0f64, d in -1.0..1.0f64, re in -1.0..1.0f64, b in 0.0..1.0f64) {
        let base = dominate(&hermitian(a, d, re, 0.0));
        let v0 = solve(&base).unwrap().objective_value;
        let mut tighter = base.clone();
        tighter.add_constraint(vec![(0, 1.0)], M::identity(2).scale_real(-b)).unwrap();
        let v1 = solve(&tighter).unwrap().objective_value;
        prop_assert!(v1 >= v0 - 1e-6);
        // X ⪰ A and X ⪰ b𝕀 with A diagonal has a closed form
        let expected = a.max(b).max(0.0) + d.max(b).max(0.0);
        if re == 0.0 {
            prop_assert!((v1 - expected).abs() < 1e-6);
        }
    }
}

#[test]
fn two_blocks_share_a_constraint() {
    // min tr X1 + 2 tr X2 with X1 + X2 ⪰ diag(1, 2): all weight goes to X1
    let mut p = SdpProblem::new(vec![2, 2]).unwrap();
    p.set_objective(0, M::identity(2)).unwrap();
    p.set_objective(1, M::identity(2).scale_real(2.0)).unwrap();
    p.add_constraint(vec![(0, 1.0), (1, 1.0)], M::diag(&[-1.0, -2.0])).unwrap();
    let s = solve(&p).unwrap();
    assert!((s.objective_value - 3.0).abs() < 1e-6);
    assert!(s.blocks[1].max_abs() < 1e-6);
    let cert = extract_dual_certificate(&p, &s).unwrap();
    assert!(cert.dual_value <= s.objective_value + 1e-12);
    assert!(cert.stationarity_residual < 1e-6);
}
