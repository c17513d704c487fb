//! Transcorrelated Hamiltonians on fault-tolerant hardware: Jordan-Wigner
//! mapping, dense spectral analysis, a classical simulation of Chebyshev-based
//! quantum eigenvalue estimation, and T-gate/qubit resource estimates.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the aliases below
//! fix the usual double-precision instantiation.

// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cost;
pub mod error;
pub mod integrals;
pub mod pauli;
pub mod published;
pub mod qeve;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::{Cplx, Real};

pub type SpinOrbitalHamiltonian64 = integrals::SpinOrbitalHamiltonian<f64>;
pub type PauliLcu64 = pauli::PauliLcu<f64>;
pub type SpectralReport64 = spectral::SpectralReport<f64>;
pub type ChebyshevSystem64 = qeve::ChebyshevSystem<f64>;
pub type HistoryState64 = qeve::HistoryState<f64>;
pub type CMatrix64 = spectral::CMatrix<f64>;
