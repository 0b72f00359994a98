use super::{step_count, LindbladModel};
use crate::channels::Superoperator;
use crate::error::{Error, Result};
use crate::qmath::{hermitian_eig, ComplexMatrix};
use crate::scalar::Real;
use crate::tolerance::Tolerances;

/// Propagates an arbitrary operator (not necessarily a state) to time `t`.
pub fn evolve_operator<T: Real>(
    model: &LindbladModel<T>,
    op: &ComplexMatrix<T>,
    t: T,
    dt: T,
) -> Result<ComplexMatrix<T>> {
    if op.dim() != model.dim() {
        return Err(Error::DimensionMismatch(format!(
            "model acts on dimension {}, operator has {}",
            model.dim(),
            op.dim()
        )));
    }
    model.check_step(dt)?;
    Ok(model.propagate(op, t, dt))
}

/// Lifts a system operator into the model's space (environment in `|0⟩⟨0|`).
fn lift<T: Real>(model: &LindbladModel<T>, op: &ComplexMatrix<T>) -> ComplexMatrix<T> {
    if model.dim() == 2 {
        op.clone()
    } else {
        op.kron(&ComplexMatrix::unit(2, 0, 0))
    }
}

fn reduce<T: Real>(model: &LindbladModel<T>, op: ComplexMatrix<T>) -> ComplexMatrix<T> {
    if model.dim() == 2 {
        op
    } else {
        op.reduce_to_qubit(2, 0)
    }
}

/// Dynamical map on the system qubit from time 0 to `t`.
///
/// For a two-qubit model the environment starts in `|0⟩⟨0|` and is traced out
/// at the end.
pub fn channel_at_time<T: Real>(model: &LindbladModel<T>, t: T, dt: T) -> Result<Superoperator<T>> {
    Ok(channels_on_grid(model, &[t], dt)?.pop().expect("one time requested"))
}

/// Dynamical maps at each of the ascending `times`, integrating the four
/// matrix units once along the whole grid.
pub fn channels_on_grid<T: Real>(model: &LindbladModel<T>, times: &[T], dt: T) -> Result<Vec<Superoperator<T>>> {
    model.check_step(dt)?;
    if let Some(bad) = times.iter().find(|t| !(**t >= T::zero() && t.is_finite())) {
        return Err(Error::InvalidArgument(format!("time {bad} must be finite and ≥ 0")));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("times must be ascending".into()));
    }
    let mut ops = [(0, 0), (0, 1), (1, 0), (1, 1)].map(|(i, j)| lift(model, &ComplexMatrix::unit(2, i, j)));
    let mut now = T::zero();
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let (n, h) = step_count(t - now, dt);
        for op in ops.iter_mut() {
            for _ in 0..n {
                *op = model.rk4_step(op, h);
            }
        }
        now = t;
        let images = ops.clone().map(|op| reduce(model, op));
        let map = Superoperator::from_images(images)?;
        check_cptp(&map, t)?;
        out.push(map);
    }
    Ok(out)
}

fn check_cptp<T: Real>(map: &Superoperator<T>, t: T) -> Result<()> {
    let tol = Tolerances::<T>::default();
    let diverged = |reason: String| Error::NumericalDivergence {
        time: t.to_f64_lossy(),
        reason,
    };
    let tp = map.trace_preservation_error();
    if tp > tol.trajectory_trace {
        return Err(diverged(format!("trace preservation error {tp:e}")));
    }
    let choi = map.choi();
    let herm = choi.hermiticity_error();
    if herm > tol.trajectory_trace {
        return Err(diverged(format!("Choi matrix not Hermitian ({herm:e})")));
    }
    let min = hermitian_eig(&choi.hermitian_part())?.min_value();
    if min < -tol.trajectory_psd_slack {
        return Err(diverged(format!("Choi eigenvalue {min:e}")));
    }
    Ok(())
}
