use std::fmt::{self, Write as _};

use num_complex::Complex;

use super::{ry, ExtremeDecomposition, QubitMap, Superoperator};
use crate::error::{Error, Result};
use crate::qmath::{pauli, ComplexMatrix};
use crate::scalar::Real;

/// Largest register the simulator accepts (system plus two ancillas).
pub const MAX_QUBITS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate<T> {
    Ry { angle: T, target: usize },
    Cnot { control: usize, target: usize },
    X { target: usize },
    Reset { target: usize },
}

impl<T: Real> Gate<T> {
    fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Ry { target, .. } | Gate::X { target } | Gate::Reset { target } => vec![target],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }
}

impl<T: Real> fmt::Display for Gate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::Ry { angle, target } => write!(f, "RY {:?} q{target}", angle.to_f64_lossy()),
            Gate::Cnot { control, target } => write!(f, "CNOT q{control} q{target}"),
            Gate::X { target } => write!(f, "X q{target}"),
            Gate::Reset { target } => write!(f, "RESET q{target}"),
        }
    }
}

/// Gate list on `num_qubits` qubits. Qubit 0 is the system and the most
/// significant tensor factor; every other qubit is an ancilla starting in `|0⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct GateSequence<T> {
    gates: Vec<Gate<T>>,
    num_qubits: usize,
}

impl<T: Real> GateSequence<T> {
    pub fn new(num_qubits: usize, gates: Vec<Gate<T>>) -> Result<Self> {
        if num_qubits == 0 || num_qubits > MAX_QUBITS {
            return Err(Error::InvalidArgument(format!(
                "register of {num_qubits} qubits (supported: 1 to {MAX_QUBITS})"
            )));
        }
        for (k, g) in gates.iter().enumerate() {
            let qs = g.qubits();
            if let Some(q) = qs.iter().find(|&&q| q >= num_qubits) {
                return Err(Error::InvalidArgument(format!(
                    "gate {k} ({g}) addresses q{q} on a {num_qubits}-qubit register"
                )));
            }
            if qs.len() == 2 && qs[0] == qs[1] {
                return Err(Error::InvalidArgument(format!(
                    "gate {k} ({g}) uses the same qubit as control and target"
                )));
            }
        }
        Ok(Self { gates, num_qubits })
    }

    pub fn gates(&self) -> &[Gate<T>] {
        &self.gates
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Runs the circuit on `op ⊗ |0…0⟩⟨0…0|` and traces out the ancillas.
    pub fn run(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let n = self.num_qubits;
        let mut state = op.clone();
        for _ in 1..n {
            state = state.kron(&ComplexMatrix::unit(2, 0, 0));
        }
        for g in &self.gates {
            state = apply_gate(&state, n, g);
        }
        if n == 1 {
            state
        } else {
            state.reduce_to_qubit(n, 0)
        }
    }

    /// Induced map on the system qubit.
    pub fn simulate(&self) -> Superoperator<T> {
        Superoperator::from_map(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("QUBITS {}\n", self.num_qubits);
        for g in &self.gates {
            let _ = writeln!(s, "{g}");
        }
        s
    }

    /// Parses a single-branch gate file.
    pub fn parse(text: &str) -> Result<Self> {
        let compiled = CompiledChannel::parse(text)?;
        match compiled.branches.len() {
            1 if compiled.branches[0].0 == T::one() => Ok(compiled.branches.into_iter().next().unwrap().1),
            _ => Err(Error::GateParse {
                line: 0,
                message: "expected a single unweighted branch".into(),
            }),
        }
    }
}

impl<T: Real> QubitMap<T> for GateSequence<T> {
    fn apply_operator(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        self.run(op)
    }
}

/// Embeds a one-qubit operator at position `q` of an `n`-qubit register.
fn embed<T: Real>(u: &ComplexMatrix<T>, q: usize, n: usize) -> ComplexMatrix<T> {
    let mut out = if q == 0 { u.clone() } else { ComplexMatrix::identity(2) };
    for k in 1..n {
        let f = if k == q { u.clone() } else { ComplexMatrix::identity(2) };
        out = out.kron(&f);
    }
    out
}

fn apply_gate<T: Real>(state: &ComplexMatrix<T>, n: usize, gate: &Gate<T>) -> ComplexMatrix<T> {
    match *gate {
        Gate::Ry { angle, target } => embed(&ry(angle), target, n).sandwich(state),
        Gate::X { target } => embed(&pauli::x(), target, n).sandwich(state),
        Gate::Cnot { control, target } => {
            let p0 = embed(&ComplexMatrix::unit(2, 0, 0), control, n);
            let p1 = embed(&ComplexMatrix::unit(2, 1, 1), control, n);
            let flip = embed(&pauli::x(), target, n).matmul(&p1);
            (&p0 + &flip).sandwich(state)
        }
        Gate::Reset { target } => {
            // ρ ↦ Σ_k |0⟩⟨k| ρ |k⟩⟨0| on the target
            let a = embed(&ComplexMatrix::unit(2, 0, 0), target, n).sandwich(state);
            let b = embed(&ComplexMatrix::unit(2, 0, 1), target, n).sandwich(state);
            &a + &b
        }
    }
}

/// Weighted branches of gate sequences realising one channel as the convex
/// mixture `Σ_j w_j Λ_j`, where `Λ_j` is the map induced by branch `j`.
#[derive(Clone, Debug)]
pub struct CompiledChannel<T> {
    branches: Vec<(T, GateSequence<T>)>,
    maps: Vec<Superoperator<T>>,
}

impl<T: Real> CompiledChannel<T> {
    pub fn new(branches: Vec<(T, GateSequence<T>)>) -> Result<Self> {
        if branches.is_empty() {
            return Err(Error::InvalidArgument("compiled channel without branches".into()));
        }
        let total: T = branches.iter().map(|b| b.0).sum();
        if branches.iter().any(|b| !(b.0 >= T::zero())) || (total - T::one()).abs() > T::lit(1e-9).max(T::epsilon() * T::lit(16.0)) {
            return Err(Error::InvalidArgument(format!(
                "branch weights must be non-negative and sum to 1 (sum {total})"
            )));
        }
        let maps = branches.iter().map(|(_, g)| g.simulate()).collect();
        Ok(Self { branches, maps })
    }

    pub fn branches(&self) -> &[(T, GateSequence<T>)] {
        &self.branches
    }

    pub fn weights(&self) -> Vec<T> {
        self.branches.iter().map(|b| b.0).collect()
    }

    /// Noiseless induced map of each branch, in branch order.
    pub fn branch_maps(&self) -> &[Superoperator<T>] {
        &self.maps
    }

    /// The averaged map.
    pub fn superoperator(&self) -> Superoperator<T> {
        Superoperator::from_map(self)
    }

    /// Gate file with a `BRANCH <weight>` line before each branch.
    pub fn to_text(&self) -> String {
        let n = self.branches.iter().map(|b| b.1.num_qubits).max().unwrap_or(1);
        let mut s = format!("QUBITS {n}\n");
        for (w, g) in &self.branches {
            let _ = writeln!(s, "BRANCH {:?}", w.to_f64_lossy());
            for gate in &g.gates {
                let _ = writeln!(s, "{gate}");
            }
        }
        s
    }

    /// Parses a gate file. `#` starts a comment; a file without `BRANCH`
    /// lines is one branch of weight 1.
    pub fn parse(text: &str) -> Result<Self> {
        let mut num_qubits = None;
        let mut branches: Vec<(T, Vec<Gate<T>>)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let err = |message: String| Error::GateParse { line: line_no, message };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let op = tokens[0].to_ascii_uppercase();
            let n = match (op.as_str(), num_qubits) {
                ("QUBITS", None) => {
                    expect_args(&tokens, 1).map_err(err)?;
                    let n: usize = tokens[1]
                        .parse()
                        .map_err(|_| err(format!("bad qubit count '{}'", tokens[1])))?;
                    if n == 0 || n > MAX_QUBITS {
                        return Err(err(format!("{n} qubits (supported: 1 to {MAX_QUBITS})")));
                    }
                    num_qubits = Some(n);
                    continue;
                }
                ("QUBITS", Some(_)) => return Err(err("repeated QUBITS header".into())),
                (_, None) => return Err(err("missing QUBITS header".into())),
                (_, Some(n)) => n,
            };
            let qubit = |tok: &str| -> Result<usize> {
                let q = tok
                    .strip_prefix('q')
                    .or_else(|| tok.strip_prefix('Q'))
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| err(format!("bad qubit '{tok}'")))?;
                if q >= n {
                    return Err(err(format!("q{q} outside a {n}-qubit register")));
                }
                Ok(q)
            };
            let number = |tok: &str| -> Result<f64> {
                let v: f64 = tok.parse().map_err(|_| err(format!("bad number '{tok}'")))?;
                if !v.is_finite() {
                    return Err(err(format!("non-finite number '{tok}'")));
                }
                Ok(v)
            };
            let gate = match op.as_str() {
                "BRANCH" => {
                    expect_args(&tokens, 1).map_err(err)?;
                    branches.push((T::lit(number(tokens[1])?), Vec::new()));
                    continue;
                }
                "RY" => {
                    expect_args(&tokens, 2).map_err(err)?;
                    Gate::Ry {
                        angle: T::lit(number(tokens[1])?),
                        target: qubit(tokens[2])?,
                    }
                }
                "CNOT" => {
                    expect_args(&tokens, 2).map_err(err)?;
                    let (control, target) = (qubit(tokens[1])?, qubit(tokens[2])?);
                    if control == target {
                        return Err(err("CNOT control equals target".into()));
                    }
                    Gate::Cnot { control, target }
                }
                "X" => {
                    expect_args(&tokens, 1).map_err(err)?;
                    Gate::X { target: qubit(tokens[1])? }
                }
                "RESET" => {
                    expect_args(&tokens, 1).map_err(err)?;
                    Gate::Reset { target: qubit(tokens[1])? }
                }
                other => return Err(err(format!("unknown gate '{other}'"))),
            };
            if branches.is_empty() {
                branches.push((T::one(), Vec::new()));
            }
            branches.last_mut().unwrap().1.push(gate);
        }
        let Some(n) = num_qubits else {
            return Err(Error::GateParse {
                line: 0,
                message: "empty gate file".into(),
            });
        };
        if branches.is_empty() {
            branches.push((T::one(), Vec::new()));
        }
        let seqs = branches
            .into_iter()
            .map(|(w, g)| Ok((w, GateSequence::new(n, g)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(seqs).map_err(|e| Error::GateParse {
            line: 0,
            message: e.to_string(),
        })
    }
}

fn expect_args(tokens: &[&str], n: usize) -> std::result::Result<(), String> {
    if tokens.len() != n + 1 {
        return Err(format!(
            "{} takes {n} argument(s), got {}",
            tokens[0],
            tokens.len() - 1
        ));
    }
    Ok(())
}

impl<T: Real> QubitMap<T> for CompiledChannel<T> {
    fn apply_operator(&self, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
        let mut out = ComplexMatrix::zeros(2);
        for ((w, _), map) in self.branches.iter().zip(&self.maps) {
            out += &map.apply_operator(op).scale(Complex::new(*w, T::zero()));
        }
        out
    }
}

/// Gate sequence of extreme branch `j ∈ {1, 2}` on system `q0` and ancilla `q1`:
/// `[RY(2δ) q0 for j = 2], RESET q1, RY(2γ_{j1}) q1, CNOT q0 q1, RY(2γ_{j2}) q1, CNOT q1 q0`.
pub fn branch_gates<T: Real>(d: &ExtremeDecomposition<T>, j: usize) -> GateSequence<T> {
    let two = T::lit(2.0);
    let mut gates = Vec::with_capacity(6);
    if j == 2 && d.delta != T::zero() {
        gates.push(Gate::Ry {
            angle: two * d.delta,
            target: 0,
        });
    }
    gates.extend([
        Gate::Reset { target: 1 },
        Gate::Ry {
            angle: two * d.gamma_j1(j),
            target: 1,
        },
        Gate::Cnot { control: 0, target: 1 },
        Gate::Ry {
            angle: two * d.gamma_j2(j),
            target: 1,
        },
        Gate::Cnot { control: 1, target: 0 },
    ]);
    GateSequence::new(2, gates).expect("two-qubit branch circuit")
}

/// Compiles both branches of `d`; a branch of zero weight is dropped.
pub fn compile_to_gates<T: Real>(d: &ExtremeDecomposition<T>) -> CompiledChannel<T> {
    let branches = d
        .branch_weights()
        .into_iter()
        .enumerate()
        .filter(|(_, w)| *w > T::zero())
        .map(|(k, w)| (w, branch_gates(d, k + 1)))
        .collect();
    CompiledChannel::new(branches).expect("decomposition weights sum to 1")
}
