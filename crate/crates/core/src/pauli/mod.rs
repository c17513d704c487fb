//! Pauli strings, Pauli linear combinations of unitaries and the
//! Jordan-Wigner mapping that produces them.

mod jordan_wigner;
mod lcu;
mod string;

pub use jordan_wigner::{jordan_wigner, jordan_wigner_with, JwConfig};
pub use lcu::{
    CoefficientPhase, PauliLcu, PauliTerm, RealityReport, RealityVerdict, Truncation, COMBINE_ZERO_TOL,
};
pub use string::{Pauli, PauliString, MAX_PACKED_QUBITS};

use crate::scalar::Real;

/// One-norm `Σ|b_j|`, excluding the identity coefficient.
pub fn one_norm<T: Real>(lcu: &PauliLcu<T>) -> T {
    lcu.alpha()
}

/// See [`PauliLcu::truncate`].
pub fn truncate<T: Real>(lcu: &PauliLcu<T>, mu: u32) -> Truncation<T> {
    lcu.truncate(mu)
}

/// See [`PauliLcu::classify_reality`].
pub fn classify_reality<T: Real>(lcu: &PauliLcu<T>) -> RealityReport {
    lcu.classify_reality()
}
