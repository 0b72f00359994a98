use super::linalg::{
    cholesky, cholesky_inverse, cholesky_solve, congruence_by_inverse, sym_eigenvalues, trace_product, RMat,
};
use super::{block_basis, DualCertificate, SdpOptions, SdpProblem, SdpSolution, SdpStatus};
use crate::error::{Error, Result};
use crate::qmath::ComplexMatrix;
use crate::scalar::Real;

const STEP_GROWTH: f64 = 10.0;
const MAX_NEWTON_PER_CENTERING: usize = 80;
const DIVERGENCE_BOUND: f64 = 1e12;

/// `M(x) = K + Σ_k x_k G_k ⪰ 0` in the real embedding.
struct Lmi<T> {
    constant: RMat<T>,
    terms: Vec<(usize, RMat<T>)>,
}

impl<T: Real> Lmi<T> {
    fn at(&self, x: &[T]) -> RMat<T> {
        let mut m = self.constant.clone();
        for (k, g) in &self.terms {
            m.add_scaled(x[*k], g);
        }
        m
    }

    fn direction(&self, dx: &[T]) -> RMat<T> {
        let mut m = RMat::zeros(self.constant.n);
        for (k, g) in &self.terms {
            m.add_scaled(dx[*k], g);
        }
        m
    }

    /// Complex dimension, this LMI's share of the barrier parameter.
    fn weight(&self) -> usize {
        self.constant.n / 2
    }
}

/// Log-barrier problem `min c·x` over the intersection of LMIs.
struct Barrier<T> {
    c: Vec<T>,
    lmis: Vec<Lmi<T>>,
    nu: T,
}

struct Centered<T> {
    x: Vec<T>,
    t: T,
    iterations: usize,
    exhausted: bool,
}

impl<T: Real> Barrier<T> {
    fn new(c: Vec<T>, lmis: Vec<Lmi<T>>) -> Self {
        let nu = T::lit(lmis.iter().map(Lmi::weight).sum::<usize>() as f64);
        Self { c, lmis, nu }
    }

    fn strictly_feasible(&self, x: &[T]) -> bool {
        self.lmis.iter().all(|l| cholesky(&l.at(x)).is_some())
    }

    /// One damped Newton step on `t c·x - ½ Σ log det M_j(x)`.
    /// Returns the half squared Newton decrement before the step.
    fn newton_step(&self, x: &mut [T], t: T) -> Result<T> {
        let n = x.len();
        let half = T::lit(0.5);
        let mut grad: Vec<T> = self.c.iter().map(|&ci| ci * t).collect();
        let mut hess = RMat::zeros(n);
        let mut factors = Vec::with_capacity(self.lmis.len());
        for lmi in &self.lmis {
            let m = lmi.at(x);
            let l = cholesky(&m).ok_or_else(|| Error::SolverFailure("barrier iterate left the feasible cone".into()))?;
            let inv = cholesky_inverse(&l);
            let w: Vec<(usize, RMat<T>)> = lmi.terms.iter().map(|(k, g)| (*k, inv.matmul(g))).collect();
            for (a, (ka, wa)) in w.iter().enumerate() {
                grad[*ka] -= half * wa.trace();
                for (kb, wb) in &w[a..] {
                    let v = half * trace_product(wa, wb);
                    hess.data[ka * n + kb] += v;
                    if ka != kb {
                        hess.data[kb * n + ka] += v;
                    }
                }
            }
            factors.push(l);
        }
        let dx = solve_newton(&hess, &grad)?;
        let slope: T = grad.iter().zip(&dx).map(|(g, d)| *g * *d).sum();
        let decrement = -slope * half;
        if !(decrement > T::zero()) {
            return Ok(T::zero());
        }

        // exact line search data: eigenvalues of L⁻¹ ΔM L⁻ᵀ per LMI
        let mut spectra = Vec::with_capacity(self.lmis.len());
        let mut alpha_max = T::infinity();
        for (lmi, l) in self.lmis.iter().zip(&factors) {
            let e = sym_eigenvalues(&congruence_by_inverse(l, &lmi.direction(&dx)));
            for &v in &e {
                if v < T::zero() {
                    alpha_max = alpha_max.min(-T::one() / v);
                }
            }
            spectra.push(e);
        }
        let c_dx: T = self.c.iter().zip(&dx).map(|(c, d)| *c * *d).sum();
        let phi = |alpha: T| -> T {
            let mut v = alpha * t * c_dx;
            for e in &spectra {
                for &ei in e {
                    v -= half * (alpha * ei).ln_1p();
                }
            }
            v
        };
        let mut alpha = T::one().min(alpha_max * T::lit(0.99));
        let floor = T::lit(1e-12);
        while phi(alpha) > T::lit(0.25) * alpha * slope {
            alpha *= half;
            if alpha < floor {
                return Ok(T::zero());
            }
        }
        for (xi, di) in x.iter_mut().zip(&dx) {
            *xi += alpha * *di;
        }
        Ok(decrement)
    }

    fn center(&self, x: &mut [T], t: T, budget: &mut usize, stop: &dyn Fn(&[T]) -> bool) -> Result<bool> {
        let tol = T::epsilon() * T::lit(100.0);
        let mut prev = T::infinity();
        for _ in 0..MAX_NEWTON_PER_CENTERING {
            if *budget == 0 {
                return Ok(false);
            }
            *budget -= 1;
            let dec = self.newton_step(x, t)?;
            if x.iter().any(|v| !v.is_finite() || v.abs() > T::lit(DIVERGENCE_BOUND)) {
                return Err(Error::UnboundedProblem);
            }
            // rounding floor: the decrement stopped shrinking
            let stalled = dec < T::epsilon().sqrt() && dec >= prev * T::lit(0.5);
            if stop(x) || dec <= tol || stalled {
                return Ok(true);
            }
            prev = dec;
        }
        Ok(true)
    }

    /// Follows the central path until `nu / t < target` or `stop` fires.
    fn follow(&self, mut x: Vec<T>, target: T, max_iterations: usize, stop: &dyn Fn(&[T]) -> bool) -> Result<Centered<T>> {
        let mut t = T::one();
        let mut budget = max_iterations;
        loop {
            let finished = self.center(&mut x, t, &mut budget, stop)?;
            if !finished {
                return Ok(Centered {
                    x,
                    t,
                    iterations: max_iterations,
                    exhausted: true,
                });
            }
            if stop(&x) || self.nu / t < target {
                return Ok(Centered {
                    x,
                    t,
                    iterations: max_iterations - budget,
                    exhausted: false,
                });
            }
            t *= T::lit(STEP_GROWTH);
        }
    }
}

fn solve_newton<T: Real>(hess: &RMat<T>, grad: &[T]) -> Result<Vec<T>> {
    let n = grad.len();
    let d: Vec<T> = (0..n)
        .map(|i| {
            let h = hess.at(i, i);
            if h > T::zero() {
                T::one() / h.sqrt()
            } else {
                T::one()
            }
        })
        .collect();
    let mut scaled = RMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            scaled.set(i, j, hess.at(i, j) * d[i] * d[j]);
        }
    }
    let rhs: Vec<T> = (0..n).map(|i| -grad[i] * d[i]).collect();
    let mut ridge = T::zero();
    for _ in 0..8 {
        let mut m = scaled.clone();
        for i in 0..n {
            m.data[i * n + i] += ridge;
        }
        if let Some(l) = cholesky(&m) {
            let y = cholesky_solve(&l, &rhs);
            return Ok((0..n).map(|i| y[i] * d[i]).collect());
        }
        ridge = if ridge == T::zero() { T::epsilon() * T::lit(16.0) } else { ridge * T::lit(100.0) };
    }
    Err(Error::SolverFailure("singular barrier Hessian".into()))
}

/// Variable layout: block `b` occupies `offsets[b] .. offsets[b] + d_b²`.
struct Layout<T> {
    offsets: Vec<usize>,
    bases: Vec<Vec<ComplexMatrix<T>>>,
    n: usize,
}

impl<T: Real> Layout<T> {
    fn new(dims: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(dims.len());
        let mut n = 0;
        for &d in dims {
            offsets.push(n);
            n += d * d;
        }
        Self {
            offsets,
            bases: dims.iter().map(|&d| block_basis(d)).collect(),
            n,
        }
    }

    fn blocks(&self, x: &[T]) -> Vec<ComplexMatrix<T>> {
        self.bases
            .iter()
            .zip(&self.offsets)
            .map(|(basis, &o)| {
                let mut m = ComplexMatrix::zeros(basis[0].dim());
                for (k, b) in basis.iter().enumerate() {
                    if x[o + k] != T::zero() {
                        m += &b.scale_real(x[o + k]);
                    }
                }
                m
            })
            .collect()
    }

    fn params(&self, blocks: &[ComplexMatrix<T>]) -> Vec<T> {
        let mut x = vec![T::zero(); self.n];
        for ((basis, &o), m) in self.bases.iter().zip(&self.offsets).zip(blocks) {
            let m = m.hermitian_part();
            for (k, b) in basis.iter().enumerate() {
                // basis elements are orthogonal with norms 1 (diagonal) and 2
                let nb = b.trace_product(b).re;
                x[o + k] = b.trace_product(&m).re / nb;
            }
        }
        x
    }
}

pub(super) fn solve<T: Real>(p: &SdpProblem<T>, opts: &SdpOptions<T>) -> Result<SdpSolution<T>> {
    let layout = Layout::new(&p.block_dims);
    let n = layout.n;
    debug_assert_eq!(n, p.num_variables());

    let mut lmis = Vec::with_capacity(p.block_dims.len() + p.constraints.len());
    for (b, &d) in p.block_dims.iter().enumerate() {
        let terms = layout.bases[b]
            .iter()
            .enumerate()
            .map(|(k, basis)| (layout.offsets[b] + k, RMat::embed(basis)))
            .collect();
        lmis.push(Lmi {
            constant: RMat::zeros(2 * d),
            terms,
        });
    }
    for con in &p.constraints {
        let mut terms = Vec::new();
        for &(b, w) in &con.terms {
            for (k, basis) in layout.bases[b].iter().enumerate() {
                terms.push((layout.offsets[b] + k, RMat::embed(&basis.scale_real(w))));
            }
        }
        lmis.push(Lmi {
            constant: RMat::embed(&con.constant),
            terms,
        });
    }

    let c: Vec<T> = (0..p.block_dims.len())
        .flat_map(|b| {
            layout.bases[b]
                .iter()
                .map(move |basis| p.objective[b].trace_product(basis).re)
        })
        .collect();
    let c_norm = c.iter().map(|v| *v * *v).sum::<T>().sqrt();

    let start = opts
        .initial
        .as_ref()
        .filter(|blocks| {
            blocks.len() == p.block_dims.len() && blocks.iter().zip(&p.block_dims).all(|(m, &d)| m.dim() == d)
        })
        .map(|blocks| layout.params(blocks));
    let probe = Barrier::new(vec![T::zero(); n], lmis);
    let (x0, phase_one_iterations) = match start {
        Some(x) if probe.strictly_feasible(&x) => (x, 0),
        other => {
            let guess = other.unwrap_or_else(|| layout.params(&p.block_dims.iter().map(|&d| ComplexMatrix::identity(d)).collect::<Vec<_>>()));
            phase_one(&probe.lmis, p.block_dims.len(), guess, opts)?
        }
    };
    let lmis = probe.lmis;

    if c_norm == T::zero() {
        let blocks = layout.blocks(&x0);
        let certificate = DualCertificate {
            block_duals: p.block_dims.iter().map(|&d| ComplexMatrix::zeros(d)).collect(),
            constraint_duals: p.constraints.iter().map(|k| ComplexMatrix::zeros(k.constant.dim())).collect(),
            dual_value: T::zero(),
            stationarity_residual: T::zero(),
        };
        return Ok(SdpSolution {
            blocks,
            objective_value: T::zero(),
            duality_gap: T::zero(),
            status: SdpStatus::Optimal,
            iterations: phase_one_iterations,
            certificate,
        });
    }

    let barrier = Barrier::new(c.iter().map(|&v| v / c_norm).collect(), lmis);
    let centered = barrier.follow(x0, opts.target_gap, opts.max_iterations, &|_: &[T]| false)?;
    let x = centered.x;
    let blocks = layout.blocks(&x);

    // dual variables on the central path: Z_j = ‖c‖ M_j⁻¹ / t
    let z_scale = c_norm / centered.t;
    let mut duals = Vec::with_capacity(barrier.lmis.len());
    for lmi in &barrier.lmis {
        let l = cholesky(&lmi.at(&x)).ok_or_else(|| Error::SolverFailure("final iterate infeasible".into()))?;
        duals.push(cholesky_inverse(&l).unembed().scale_real(z_scale).hermitian_part());
    }
    let constraint_duals = duals.split_off(p.block_dims.len());
    let block_duals = duals;
    let dual_value = -p
        .constraints
        .iter()
        .zip(&constraint_duals)
        .map(|(con, z)| z.trace_product(&con.constant).re)
        .sum::<T>();
    let mut residual = T::zero();
    for b in 0..p.block_dims.len() {
        let mut r = &p.objective[b] - &block_duals[b];
        for (con, z) in p.constraints.iter().zip(&constraint_duals) {
            for &(cb, w) in &con.terms {
                if cb == b {
                    r = &r - &z.scale_real(w);
                }
            }
        }
        residual = residual.max(r.max_abs());
    }
    let objective_value = p.evaluate_objective(&blocks);
    let duality_gap = objective_value - dual_value;
    let tol = opts.gap_tol * c_norm.max(T::one());
    let status = if !centered.exhausted && duality_gap.abs() <= tol && residual <= tol {
        SdpStatus::Optimal
    } else {
        SdpStatus::MaxIterations
    };
    if status != SdpStatus::Optimal {
        log::warn!("SDP stopped with gap {duality_gap:e}, stationarity residual {residual:e}");
    }
    Ok(SdpSolution {
        blocks,
        objective_value,
        duality_gap,
        status,
        iterations: phase_one_iterations + centered.iterations,
        certificate: DualCertificate {
            block_duals,
            constraint_duals,
            dual_value,
            stationarity_residual: residual,
        },
    })
}

/// Minimises `s` subject to `M_j(x) + s𝕀 ⪰ 0`, stopping once `s < 0`.
///
/// The first `num_blocks` LMIs are the variable blocks themselves; they are
/// also bounded above by a generous `R𝕀` so that the auxiliary barrier has a
/// minimiser.
fn phase_one<T: Real>(lmis: &[Lmi<T>], num_blocks: usize, guess: Vec<T>, opts: &SdpOptions<T>) -> Result<(Vec<T>, usize)> {
    let n = guess.len();
    let mut worst = T::zero();
    let mut scale = T::one();
    for lmi in lmis {
        let m = lmi.at(&guess);
        scale = scale.max(m.max_abs()).max(lmi.constant.max_abs());
        let min = sym_eigenvalues(&m).into_iter().fold(T::infinity(), T::min);
        worst = worst.max(-min);
    }
    let radius = T::lit(1e4) * (scale + worst);
    let mut x = guess;
    x.push(worst + T::one());
    let mut extended: Vec<Lmi<T>> = lmis
        .iter()
        .map(|l| {
            let mut terms: Vec<(usize, RMat<T>)> = l.terms.iter().map(|(k, g)| (*k, g.clone())).collect();
            terms.push((n, RMat::identity(l.constant.n)));
            Lmi {
                constant: l.constant.clone(),
                terms,
            }
        })
        .collect();
    for l in &lmis[..num_blocks] {
        extended.push(Lmi {
            constant: RMat::identity(l.constant.n).scaled(radius),
            terms: l.terms.iter().map(|(k, g)| (*k, g.scaled(-T::one()))).collect(),
        });
    }
    let mut c = vec![T::zero(); n + 1];
    c[n] = T::one();
    let barrier = Barrier::new(c, extended);
    let margin = opts.target_gap;
    let done = barrier.follow(x, margin, opts.max_iterations, &|x: &[T]| x[n] < -margin)?;
    let s = done.x[n];
    if !(s < T::zero()) {
        return Err(Error::InfeasibleProblem {
            phase_one_value: s.to_f64_lossy(),
        });
    }
    let mut x = done.x;
    x.truncate(n);
    Ok((x, done.iterations))
}
