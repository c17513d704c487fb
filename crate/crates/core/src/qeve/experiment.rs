use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use super::history::{estimate_energy, history_state_via_inverse, measure_distribution};
use super::system::build_system;
use crate::cost::qeve_degree;
use crate::error::{Error, Result};
use crate::pauli::PauliLcu;
use crate::scalar::{cplx, czero, Real};
use crate::spectral::{best_basis_state, effective_alpha, spectrum, CMatrix, DenseCaps, SpectralReport};

/// One simulated QEVE run compared with the exact ground energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct ExperimentResult<T> {
    #[serde(rename = "N")]
    pub n_degrees: usize,
    pub alpha_eff: T,
    #[serde(rename = "kappa_S")]
    pub kappa_s: T,
    /// `|φ_est − φ_true|`, in turns.
    pub angle_error: T,
    pub energy_error: T,
    #[serde(rename = "mass_within_5_over_N")]
    pub mass_within_5_over_n: T,
    pub estimated_energy: T,
    pub true_energy: T,
}

/// Runs the history-state pipeline on `(H − offset)/α_eff` and scores the
/// energy estimate against `true_energy`.
#[allow(clippy::too_many_arguments)]
pub fn run_experiment<T: Real>(
    h: &CMatrix<T>,
    offset: T,
    alpha_eff: T,
    psi0: &DVector<crate::scalar::Cplx<T>>,
    n_degrees: usize,
    true_energy: T,
    kappa_s: T,
) -> Result<ExperimentResult<T>> {
    if !(alpha_eff > T::zero()) {
        return Err(Error::Validation("effective one-norm must be positive".into()));
    }
    let d = h.nrows();
    let shifted = h - CMatrix::<T>::from_diagonal_element(d, d, cplx(offset, T::zero()));
    let h_scaled = shifted * cplx(T::one() / alpha_eff, T::zero());
    let sys = build_system(&h_scaled, n_degrees)?;
    let hs = history_state_via_inverse(&sys, psi0)?;
    let dist = measure_distribution(&hs)?;
    let est = estimate_energy(&dist, alpha_eff)?;
    let x = ((true_energy - offset) / alpha_eff).max(-T::one()).min(T::one());
    let true_phi = x.acos() / T::two_pi();
    let estimated_energy = offset + est.energy;
    Ok(ExperimentResult {
        n_degrees,
        alpha_eff,
        kappa_s,
        angle_error: (est.phi - true_phi).abs(),
        energy_error: (estimated_energy - true_energy).abs(),
        mass_within_5_over_n: dist.mass_within(true_phi, T::lit(5.0) / T::from_count(n_degrees)),
        estimated_energy,
        true_energy,
    })
}

/// Settings for [`simulate_qeve`].
#[derive(Debug, Clone)]
pub struct SimulationOptions {
    pub sector: Option<usize>,
    pub caps: DenseCaps,
    /// Total error budget, Hartree.
    pub epsilon: f64,
    /// Fraction of the budget given to the Chebyshev degree.
    pub split: f64,
    pub alpha_eff: Option<f64>,
    /// Computational basis state used as `ψ₀`; defaults to the one with the
    /// largest ground-state overlap.
    pub initial_state: Option<u64>,
    /// Cap on `N·d`.
    pub max_history_dim: usize,
}

impl Default for SimulationOptions {
    fn default() -> Self {
        Self {
            sector: None,
            caps: DenseCaps::default(),
            epsilon: 0.0016,
            split: 0.5,
            alpha_eff: None,
            initial_state: None,
            max_history_dim: 1 << 22,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct Simulation<T> {
    pub result: ExperimentResult<T>,
    pub initial_state: u64,
    /// `|⟨ψ₀|v₀⟩|²` with the unit ground eigenvector.
    pub ground_overlap: T,
    pub spectral: SpectralReport<T>,
}

/// End-to-end QEVE simulation of an LCU at desk scale.
pub fn simulate_qeve<T: Real>(lcu: &PauliLcu<T>, opts: &SimulationOptions) -> Result<Simulation<T>> {
    if !(opts.epsilon > 0.0) || !(opts.split > 0.0 && opts.split < 1.0) {
        return Err(Error::Validation("epsilon must be positive and split in (0, 1)".into()));
    }
    let spec = spectrum(lcu, opts.sector, &opts.caps)?;
    let report = spec.report.clone();
    let alpha_eff = match opts.alpha_eff {
        Some(a) => T::lit(a),
        None => effective_alpha(lcu.alpha(), Some(report.shifted_norm)),
    };
    if !(alpha_eff > T::zero()) {
        return Err(Error::Validation("the operator is a multiple of the identity; nothing to estimate".into()));
    }
    let (n_degrees, _) = qeve_degree(alpha_eff.to_f64_lossy(), opts.split * opts.epsilon)?;
    let n_degrees = usize::try_from(n_degrees).unwrap_or(usize::MAX);
    let dim = report.dimension;
    if n_degrees.saturating_mul(dim) > opts.max_history_dim {
        return Err(Error::Capacity {
            what: "history state length N·d",
            requested: n_degrees.saturating_mul(dim),
            cap: opts.max_history_dim,
        });
    }
    let index = match opts.initial_state {
        None => best_basis_state(&spec),
        Some(b) => spec
            .operator
            .basis
            .iter()
            .position(|&s| s == b)
            .ok_or_else(|| Error::Validation(format!("basis state {b} is not in the selected sector")))?,
    };
    let mut psi0 = DVector::from_element(dim, czero());
    psi0[index] = cplx(T::one(), T::zero());
    let ground = spec.eigen.vectors.column(report.ground_index);
    let ground_overlap = ground[index].norm_sqr() / ground.norm_squared();
    let b0 = lcu.b0();
    if b0.im.abs() > report.reality_tolerance {
        return Err(Error::Validation("identity coefficient has an imaginary part".into()));
    }
    let result = run_experiment(
        &spec.operator.matrix,
        b0.re,
        alpha_eff,
        &psi0,
        n_degrees,
        report.ground_energy,
        report.kappa_s,
    )?;
    Ok(Simulation {
        result,
        initial_state: spec.operator.basis[index],
        ground_overlap,
        spectral: report,
    })
}
