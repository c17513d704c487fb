use nalgebra::ComplexField;
use serde::{Deserialize, Serialize};

use super::{dense_matrix, eigendecompose, DenseCaps};
use crate::error::{Error, Result};
use crate::pauli::PauliLcu;
use crate::scalar::Real;

/// Eigenvalue displacement caused by truncating at one `μ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct PerturbationRow<T> {
    pub mu: u32,
    pub kept_terms: usize,
    pub dropped_weight: T,
    /// Hermitian: `max_i |λ_i − λ'_i|` over sorted spectra. Otherwise
    /// `max_{λ'} min_λ |λ − λ'|`.
    pub shift: T,
    /// `K α 2^{-μ}`, times `κ_S` for non-Hermitian input.
    pub bound: T,
    pub holds: bool,
}

/// Truncates `lcu` at every `μ` in `mus` and compares spectra against the
/// Weyl (Hermitian) or Bauer-Fike (diagonalizable) bound.
///
/// Returns [`Error::BoundViolated`] if any row exceeds its bound.
pub fn perturbation_experiment<T: Real>(
    lcu: &PauliLcu<T>,
    mus: &[u32],
    caps: &DenseCaps,
) -> Result<Vec<PerturbationRow<T>>> {
    let base = eigendecompose(&dense_matrix(lcu, None, caps)?.matrix)?;
    let kappa = if base.hermitian {
        T::one()
    } else {
        base.condition_number().max(T::one())
    };
    let k = T::from_count(lcu.len());
    let scale = T::one().max(base.values.iter().fold(T::zero(), |a, v| a.max(v.modulus())));
    let slack = T::lit(1e-10) * kappa * scale;
    let mut rows = Vec::with_capacity(mus.len());
    for &mu in mus {
        let trunc = lcu.truncate(mu);
        let pert = eigendecompose(&dense_matrix(&trunc.lcu, None, caps)?.matrix)?;
        let shift = if base.hermitian && pert.hermitian {
            base.values
                .iter()
                .zip(&pert.values)
                .fold(T::zero(), |a, (x, y)| a.max((x.re - y.re).abs()))
        } else {
            pert.values.iter().fold(T::zero(), |a, y| {
                let nearest = base
                    .values
                    .iter()
                    .fold(T::max_value().unwrap(), |m, x| m.min((*x - *y).modulus()));
                a.max(nearest)
            })
        };
        let bound = kappa * k * lcu.alpha() * T::lit(0.5f64.powi(mu as i32));
        rows.push(PerturbationRow {
            mu,
            kept_terms: trunc.lcu.len(),
            dropped_weight: trunc.dropped_weight,
            shift,
            bound,
            holds: shift <= bound + slack,
        });
    }
    if let Some(bad) = rows.iter().find(|r| !r.holds) {
        return Err(Error::BoundViolated(format!(
            "truncation at mu={} moved eigenvalues by {:e} > bound {:e}",
            bad.mu, bad.shift, bad.bound
        )));
    }
    Ok(rows)
}
