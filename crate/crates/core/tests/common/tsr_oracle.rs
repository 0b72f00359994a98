//! Bracketing oracle for the steering robustness of the Pauli assemblage
//! `A_{a|m} = (𝕀 + a σ_m)/4`, the identity-channel assemblage on `𝕀/2`.
//!
//! Everything is written in Bloch form: a 2x2 Hermitian `(c 𝕀 + w·σ)/2` is
//! PSD iff `c ≥ |w|`. Upper bounds come from explicit feasible hidden states,
//! lower bounds from explicit feasible dual points; both are checked exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `(c, w)` for the operator `(c 𝕀 + w·σ)/2`.
#[derive(Clone, Copy, Debug)]
pub struct Op {
    pub c: f64,
    pub w: [f64; 3],
}

impl Op {
    fn add(self, o: Op) -> Op {
        Op {
            c: self.c + o.c,
            w: [self.w[0] + o.w[0], self.w[1] + o.w[1], self.w[2] + o.w[2]],
        }
    }

    fn scale(self, k: f64) -> Op {
        Op {
            c: self.c * k,
            w: self.w.map(|v| v * k),
        }
    }

    /// Smallest eigenvalue, `(c - |w|)/2`.
    fn min_eig(self) -> f64 {
        (self.c - (self.w[0].powi(2) + self.w[1].powi(2) + self.w[2].powi(2)).sqrt()) / 2.0
    }

    /// `tr(A B)` for two operators in Bloch form.
    fn trace_product(self, o: Op) -> f64 {
        (self.c * o.c + self.w[0] * o.w[0] + self.w[1] * o.w[1] + self.w[2] * o.w[2]) / 2.0
    }
}

fn unit(m: usize, sign: f64) -> [f64; 3] {
    let mut w = [0.0; 3];
    w[m] = sign;
    w
}

fn sign(lambda: usize, m: usize) -> f64 {
    if (lambda >> m) & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `A_{a|m}`
pub fn member(m: usize, a: f64) -> Op {
    Op { c: 0.5, w: unit(m, 0.5 * a) }
}

/// Objective `Σ tr σ_λ` if the hidden states satisfy every constraint.
pub fn primal_value(hidden: &[Op; 8]) -> Option<f64> {
    if hidden.iter().any(|h| h.min_eig() < 0.0) {
        return None;
    }
    for m in 0..3 {
        for a in [1.0, -1.0] {
            let mut s = member(m, a).scale(-1.0);
            for (l, h) in hidden.iter().enumerate() {
                if sign(l, m) == a {
                    s = s.add(*h);
                }
            }
            if s.min_eig() < -1e-15 {
                return None;
            }
        }
    }
    Some(hidden.iter().map(|h| h.c).sum())
}

/// Smallest scale `k` making `k·shape` feasible, by bisection.
fn scaled_primal(shape: &[Op; 8]) -> Option<f64> {
    let feasible = |k: f64| primal_value(&shape.map(|h| h.scale(k))).is_some();
    let mut hi = 1.0;
    while !feasible(hi) {
        hi *= 2.0;
        if hi > 1e6 {
            return None;
        }
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    primal_value(&shape.map(|h| h.scale(hi)))
}

/// Hidden states `(𝕀 + r n_λ·σ/√3)/2` along the cube diagonals.
fn symmetric_shape(r: f64) -> [Op; 8] {
    let s = r / 3f64.sqrt();
    std::array::from_fn(|l| Op {
        c: 1.0,
        w: [sign(l, 0) * s, sign(l, 1) * s, sign(l, 2) * s],
    })
}

/// Dual objective `Σ tr(F_{a|m} A_{a|m})` if `F ⪰ 0` and
/// `𝕀 - Σ_{m} F_{λ_m|m} ⪰ 0` for every `λ`.
pub fn dual_value(f: &[[Op; 2]; 3]) -> Option<f64> {
    if f.iter().flatten().any(|x| x.min_eig() < 0.0) {
        return None;
    }
    for l in 0..8 {
        let mut s = Op { c: 2.0, w: [0.0; 3] };
        for (m, pair) in f.iter().enumerate() {
            let idx = if sign(l, m) > 0.0 { 0 } else { 1 };
            s = s.add(pair[idx].scale(-1.0));
        }
        if s.min_eig() < 0.0 {
            return None;
        }
    }
    let mut total = 0.0;
    for (m, pair) in f.iter().enumerate() {
        total += pair[0].trace_product(member(m, 1.0)) + pair[1].trace_product(member(m, -1.0));
    }
    Some(total)
}

/// `F_{a|m} = u 𝕀 + v a σ_m`, i.e. `(2u 𝕀 + 2v a e_m·σ)/2`.
fn symmetric_dual(u: f64, v: f64) -> [[Op; 2]; 3] {
    std::array::from_fn(|m| {
        [1.0, -1.0].map(|a| Op {
            c: 2.0 * u,
            w: unit(m, 2.0 * v * a),
        })
    })
}

/// Largest feasible `u` for given `v`, by bisection.
fn best_dual_for(v: f64) -> Option<f64> {
    let feasible = |u: f64| dual_value(&symmetric_dual(u, v)).is_some();
    if !feasible(v.abs()) {
        return None;
    }
    let (mut lo, mut hi) = (v.abs(), 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if feasible(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    dual_value(&symmetric_dual(lo, v))
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let c = b - g * (b - a);
        let d = a + g * (b - a);
        if f(c) >= f(d) {
            b = d;
        } else {
            a = c;
        }
    }
    f(0.5 * (a + b))
}

#[derive(Clone, Copy, Debug)]
pub struct Bracket {
    /// Best certified lower bound on TSR.
    pub lower: f64,
    /// Best certified upper bound on TSR.
    pub upper: f64,
    /// Smallest objective found by random asymmetric hidden states.
    pub random_upper: f64,
}

impl Bracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }
}

/// Dense grids over the symmetric families, golden-section refinement, and a
/// random search over unstructured hidden states.
pub fn tsr_bracket(random_trials: usize, seed: u64) -> Bracket {
    let primal = |r: f64| scaled_primal(&symmetric_shape(r)).map_or(f64::NEG_INFINITY, |v| -v);
    let dual = |v: f64| best_dual_for(v).unwrap_or(f64::NEG_INFINITY);

    let grid = 400;
    let (mut best_r, mut best_p) = (0.0, f64::NEG_INFINITY);
    let (mut best_v, mut best_d) = (0.0, f64::NEG_INFINITY);
    for k in 0..=grid {
        let x = k as f64 / grid as f64;
        let p = primal(x);
        if p > best_p {
            (best_r, best_p) = (x, p);
        }
        let d = dual(x * 0.5);
        if d > best_d {
            (best_v, best_d) = (x * 0.5, d);
        }
    }
    let step = 1.0 / grid as f64;
    let upper = -golden_max(primal, (best_r - step).max(0.0), (best_r + step).min(1.0)).max(best_p) - 1.0;
    let lower = golden_max(dual, (best_v - step).max(0.0), best_v + step).max(best_d) - 1.0;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_upper = f64::INFINITY;
    for _ in 0..random_trials {
        let shape: [Op; 8] = std::array::from_fn(|_| {
            let w: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let n = (w[0] * w[0] + w[1] * w[1] + w[2] * w[2]).sqrt().max(1.0);
            Op {
                c: rng.random_range(0.2..1.0),
                w: w.map(|v| v / n * 0.2),
            }
        });
        if let Some(v) = scaled_primal(&shape) {
            random_upper = random_upper.min(v - 1.0);
        }
    }
    Bracket {
        lower,
        upper,
        random_upper,
    }
}
