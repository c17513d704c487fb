use nalgebra::DVector;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::system::ChebyshevSystem;
use crate::error::{Error, Result};
use crate::scalar::{cplx, czero, Cplx, Real};
use crate::spectral::CMatrix;

/// Unnormalized `Σ_ℓ |ℓ⟩ ⊗ T_ℓ(h)|ψ₀⟩`, block `ℓ` stored contiguously.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoryState<T: Real> {
    pub n_degrees: usize,
    pub dim: usize,
    pub amplitudes: DVector<Cplx<T>>,
}

impl<T: Real> HistoryState<T> {
    pub fn block(&self, ell: usize) -> DVector<Cplx<T>> {
        self.amplitudes.rows(ell * self.dim, self.dim).into_owned()
    }

    /// `‖a − b‖ / ‖b‖` against another history state of the same shape.
    pub fn relative_distance(&self, other: &Self) -> T {
        let denom = other.amplitudes.norm();
        let diff = (&self.amplitudes - &other.amplitudes).norm();
        if denom > T::zero() {
            diff / denom
        } else {
            diff
        }
    }
}

fn check_inputs<T: Real>(h: &CMatrix<T>, psi0: &DVector<Cplx<T>>, n_degrees: usize) -> Result<()> {
    if h.nrows() != h.ncols() || h.nrows() != psi0.len() {
        return Err(Error::Validation("initial state and operator dimensions differ".into()));
    }
    if n_degrees == 0 {
        return Err(Error::Validation("at least one Chebyshev degree is required".into()));
    }
    if (psi0.norm() - T::one()).abs() > T::lit(1e-10) {
        return Err(Error::Validation(format!(
            "initial state has norm {:e}, expected 1",
            psi0.norm()
        )));
    }
    Ok(())
}

/// History state from the matrix recursion `T_{ℓ+1}ψ = 2h T_ℓψ − T_{ℓ−1}ψ`.
pub fn history_state_direct<T: Real>(
    h_scaled: &CMatrix<T>,
    psi0: &DVector<Cplx<T>>,
    n_degrees: usize,
) -> Result<HistoryState<T>> {
    check_inputs(h_scaled, psi0, n_degrees)?;
    let d = psi0.len();
    let mut amps = DVector::from_element(n_degrees * d, czero());
    let mut prev = psi0.clone();
    amps.rows_mut(0, d).copy_from(&prev);
    if n_degrees > 1 {
        let mut cur = h_scaled * &prev;
        amps.rows_mut(d, d).copy_from(&cur);
        let two = cplx(T::lit(2.0), T::zero());
        for ell in 2..n_degrees {
            let next = (h_scaled * &cur) * two - &prev;
            amps.rows_mut(ell * d, d).copy_from(&next);
            prev = cur;
            cur = next;
        }
    }
    Ok(HistoryState {
        n_degrees,
        dim: d,
        amplitudes: amps,
    })
}

/// History state as `C⁻¹ (1 − L⊗h)(e₀⊗ψ₀)`, the Chebyshev generating function
/// applied through a linear solve.
pub fn history_state_via_inverse<T: Real>(sys: &ChebyshevSystem<T>, psi0: &DVector<Cplx<T>>) -> Result<HistoryState<T>> {
    let n = sys.n_degrees();
    check_inputs(sys.h_scaled(), psi0, n)?;
    let d = psi0.len();
    let mut rhs = DVector::from_element(n * d, czero());
    rhs.rows_mut(0, d).copy_from(psi0);
    if n > 1 {
        let hpsi = -(sys.h_scaled() * psi0);
        rhs.rows_mut(d, d).copy_from(&hpsi);
    }
    let amps = sys.denominator().solve(&rhs)?;
    Ok(HistoryState {
        n_degrees: n,
        dim: d,
        amplitudes: amps,
    })
}

/// Outcome distribution of the ancilla register after a Fourier transform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct AngleDistribution<T> {
    pub n_degrees: usize,
    /// Probability of outcome `y`, `0 ≤ y < N`, angle `2πy/N`.
    pub raw: Vec<T>,
    /// Bins `y` and `N − y` merged, `0 ≤ y ≤ N/2`.
    pub folded: Vec<T>,
}

impl<T: Real> AngleDistribution<T> {
    pub fn total(&self) -> T {
        self.raw.iter().fold(T::zero(), |a, &p| a + p)
    }

    /// Folded mass on bins `y` with `|y/N − phi| ≤ width`.
    pub fn mass_within(&self, phi: T, width: T) -> T {
        let n = T::from_count(self.n_degrees);
        self.folded
            .iter()
            .enumerate()
            .filter(|(y, _)| (T::from_count(*y) / n - phi).abs() <= width + T::lit(1e-12))
            .fold(T::zero(), |a, (_, &p)| a + p)
    }
}

/// Normalizes the history state, Fourier transforms the degree index and
/// returns the marginal distribution over the `N` angle bins.
pub fn measure_distribution<T: Real>(hs: &HistoryState<T>) -> Result<AngleDistribution<T>> {
    let (n, d) = (hs.n_degrees, hs.dim);
    let norm = hs.amplitudes.norm();
    if !(norm > T::zero()) || !norm.is_finite_value() {
        return Err(Error::Numerical("history state has zero or non-finite norm".into()));
    }
    let fft = FftPlanner::<T>::new().plan_fft_forward(n);
    let scale = T::one() / (norm * T::from_count(n).sqrt());
    let mut raw = vec![T::zero(); n];
    let mut line = vec![czero::<T>(); n];
    for j in 0..d {
        for (ell, slot) in line.iter_mut().enumerate() {
            *slot = hs.amplitudes[ell * d + j] * cplx(scale, T::zero());
        }
        fft.process(&mut line);
        for (p, c) in raw.iter_mut().zip(&line) {
            *p += c.norm_sqr();
        }
    }
    let half = n / 2;
    let mut folded = vec![T::zero(); half + 1];
    for (y, &p) in raw.iter().enumerate() {
        folded[y.min(n - y)] += p;
    }
    Ok(AngleDistribution {
        n_degrees: n,
        raw,
        folded,
    })
}

/// Energy read off the modal angle bin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct EnergyEstimate<T> {
    pub bin: usize,
    /// `φ = y/N`, clamped to `[1/6, 1/3]`.
    pub phi: T,
    /// `α_eff cos 2πφ`.
    pub energy: T,
    pub probability: T,
}

/// Modal folded bin with `φ ∈ [1/6, 1/3]` (widened by half a bin), mapped to
/// `α_eff cos 2πφ`.
pub fn estimate_energy<T: Real>(dist: &AngleDistribution<T>, alpha_eff: T) -> Result<EnergyEstimate<T>> {
    let n = T::from_count(dist.n_degrees);
    let lo = T::one() / T::lit(6.0);
    let hi = T::one() / T::lit(3.0);
    let half_bin = T::lit(0.5) / n;
    let best = dist
        .folded
        .iter()
        .enumerate()
        .filter(|(y, _)| {
            let phi = T::from_count(*y) / n;
            phi >= lo - half_bin && phi <= hi + half_bin
        })
        .fold(None, |best: Option<(usize, T)>, (y, &p)| match best {
            Some((_, bp)) if bp >= p => best,
            _ => Some((y, p)),
        });
    let (bin, probability) =
        best.ok_or_else(|| Error::Validation("no angle bin lies in [1/6, 1/3]; N is too small".into()))?;
    let phi = (T::from_count(bin) / n).max(lo).min(hi);
    Ok(EnergyEstimate {
        bin,
        phi,
        energy: alpha_eff * (T::two_pi() * phi).cos(),
        probability,
    })
}
