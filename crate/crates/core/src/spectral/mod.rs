//! Dense, desk-scale linear algebra on Pauli LCUs: ground energies, Jordan
//! condition numbers, norms and truncation-perturbation experiments.

mod dense;
mod eigen;
mod perturbation;

pub use dense::{dense_matrix, pauli_decompose, CMatrix, DenseCaps, DenseOperator};
pub use eigen::{eigendecompose, is_hermitian, min_singular_value, spectral_norm, Eigendecomposition};
pub use perturbation::{perturbation_experiment, PerturbationRow};

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliLcu;
use crate::scalar::{Cplx, Real};

/// Eigenvector-matrix condition above which the operator is reported as not
/// (numerically) diagonalizable.
pub const DIAGONALIZABLE_KAPPA_LIMIT: f64 = 1e12;

/// Eigenvector-matrix condition above which the operator is flagged as close
/// to defective.
pub const NEAR_DEFECTIVE_KAPPA: f64 = 1e4;

/// Spectrum and conditioning summary of one operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct SpectralReport<T> {
    pub dimension: usize,
    pub sector: Option<usize>,
    /// `[re, im]` pairs sorted by real part, then imaginary part (Hartree).
    pub eigenvalues: Vec<Cplx<T>>,
    /// Lowest real part among eigenvalues with negligible imaginary part.
    pub ground_energy: T,
    pub ground_index: usize,
    /// `‖S‖·‖S⁻¹‖` with unit-norm eigenvector columns.
    #[serde(rename = "kappa_S")]
    pub kappa_s: T,
    pub max_imag: T,
    /// Largest singular value of `H`.
    pub spectral_norm: T,
    /// Largest singular value of `H − b0·I`.
    pub shifted_norm: T,
    pub reality_tolerance: T,
    pub hermitian: bool,
    pub diagonalizable: bool,
    pub near_defective: bool,
}

/// Dense operator with its eigendecomposition and report.
#[derive(Debug, Clone)]
pub struct Spectrum<T: Real> {
    pub operator: DenseOperator<T>,
    pub eigen: Eigendecomposition<T>,
    pub report: SpectralReport<T>,
}

/// Eigenvalues, ground energy and Jordan condition number of `lcu`.
pub fn analyze<T: Real>(lcu: &PauliLcu<T>, sector: Option<usize>, caps: &DenseCaps) -> Result<SpectralReport<T>> {
    Ok(spectrum(lcu, sector, caps)?.report)
}

/// Like [`analyze`] but keeps the dense operator and eigenvectors.
pub fn spectrum<T: Real>(lcu: &PauliLcu<T>, sector: Option<usize>, caps: &DenseCaps) -> Result<Spectrum<T>> {
    let operator = dense_matrix(lcu, sector, caps)?;
    let h = &operator.matrix;
    let dim = h.nrows();
    let eigen = eigendecompose(h)?;
    let spectral_norm = eigen::spectral_norm(h);
    let shifted = h - CMatrix::<T>::from_diagonal_element(dim, dim, lcu.b0());
    let shifted_norm = eigen::spectral_norm(&shifted);
    let slack = T::lit(1e-10) * (T::one() + lcu.alpha());
    if shifted_norm > lcu.alpha() + slack {
        return Err(Error::Numerical(format!(
            "‖H − b0‖ = {shifted_norm:e} exceeds the one-norm {:e}",
            lcu.alpha()
        )));
    }
    let kappa_s = if eigen.hermitian {
        T::one()
    } else {
        eigen.condition_number().max(T::one())
    };
    let reality_tolerance = T::lit(1e-8) * T::one().max(spectral_norm);
    let max_imag = eigen
        .values
        .iter()
        .fold(T::zero(), |a, v| a.max(v.im.abs()));
    let ground = eigen
        .values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.im.abs() <= reality_tolerance)
        .min_by(|a, b| a.1.re.partial_cmp(&b.1.re).unwrap_or(std::cmp::Ordering::Equal));
    let (ground_index, ground_energy) = match ground {
        Some((i, v)) => (i, v.re),
        None if dim == 0 => (0, T::zero()),
        None => {
            let min_imag = eigen
                .values
                .iter()
                .fold(T::max_value().unwrap(), |a, v| a.min(v.im.abs()));
            return Err(Error::NoRealSpectrum {
                min_imag: min_imag.to_f64_lossy(),
            });
        }
    };
    let kappa64 = kappa_s.to_f64_lossy();
    let diagonalizable = kappa64 <= DIAGONALIZABLE_KAPPA_LIMIT;
    if !diagonalizable {
        warn!("eigenvector matrix condition {kappa64:e} exceeds {DIAGONALIZABLE_KAPPA_LIMIT:e}; treating the operator as non-diagonalizable");
    }
    let report = SpectralReport {
        dimension: dim,
        sector,
        eigenvalues: eigen.values.clone(),
        ground_energy,
        ground_index,
        kappa_s,
        max_imag,
        spectral_norm,
        shifted_norm,
        reality_tolerance,
        hermitian: eigen.hermitian,
        diagonalizable,
        near_defective: kappa64 > NEAR_DEFECTIVE_KAPPA,
    };
    Ok(Spectrum {
        operator,
        eigen,
        report,
    })
}

/// One-norm that guarantees `‖(H − b0)/α_eff‖ ≤ 1/2`: `max(α, 2‖H − b0‖)`.
///
/// Without a dense norm the one-norm itself stands in for `‖H − b0‖`, giving `2α`.
pub fn effective_alpha<T: Real>(alpha: T, shifted_norm: Option<T>) -> T {
    let norm = shifted_norm.unwrap_or(alpha);
    alpha.max(norm + norm)
}

/// Computational basis state (index into the operator basis) with the largest
/// overlap with the ground-state right eigenvector.
pub fn best_basis_state<T: Real>(spec: &Spectrum<T>) -> usize {
    let col = spec.eigen.vectors.column(spec.report.ground_index);
    col.iter()
        .enumerate()
        .fold((0, T::zero()), |(bi, bv), (i, c)| {
            let v = c.norm_sqr();
            if v > bv {
                (i, v)
            } else {
                (bi, bv)
            }
        })
        .0
}

#[cfg(test)]
pub(crate) fn to_cmatrix<T: Real>(rows: usize, cols: usize, data: &[(f64, f64)]) -> CMatrix<T> {
    CMatrix::from_row_iterator(
        rows,
        cols,
        data.iter().map(|&(re, im)| crate::scalar::cplx(T::lit(re), T::lit(im))),
    )
}
