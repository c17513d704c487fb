use nalgebra::ComplexField;
use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::pauli::{PauliLcu, PauliString};
use crate::scalar::{cplx, czero, times_i_pow, Cplx, Real};

/// Dense complex matrix.
pub type CMatrix<T> = DMatrix<Cplx<T>>;

/// Size limits for dense realizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DenseCaps {
    /// Qubit cap without sector projection.
    pub max_qubits_full: usize,
    /// Qubit cap with particle-number projection.
    pub max_qubits_sector: usize,
    /// Cap on the matrix dimension in either mode.
    pub max_dimension: usize,
}

impl Default for DenseCaps {
    fn default() -> Self {
        Self {
            max_qubits_full: 14,
            max_qubits_sector: 20,
            max_dimension: 1 << 14,
        }
    }
}

/// Dense operator on the full space or on a fixed particle-number sector.
#[derive(Debug, Clone)]
pub struct DenseOperator<T: Real> {
    pub matrix: CMatrix<T>,
    /// Computational basis state of every row/column, ascending.
    pub basis: Vec<u64>,
    pub sector: Option<usize>,
}

/// `b0·I + Σ b_j U_j` as a dense matrix (qubit `j` is bit `j` of the row index).
///
/// With `sector = Some(n_e)` only basis states with `n_e` set bits are kept;
/// the operator must then conserve the set-bit count, which is checked.
pub fn dense_matrix<T: Real>(
    lcu: &PauliLcu<T>,
    sector: Option<usize>,
    caps: &DenseCaps,
) -> Result<DenseOperator<T>> {
    let n = lcu.n_qubits();
    let basis: Vec<u64> = match sector {
        None => {
            if n > caps.max_qubits_full {
                return Err(Error::Capacity {
                    what: "dense qubit count",
                    requested: n,
                    cap: caps.max_qubits_full,
                });
            }
            (0..1u64 << n).collect()
        }
        Some(ne) => {
            if n > caps.max_qubits_sector {
                return Err(Error::Capacity {
                    what: "dense qubit count (sector)",
                    requested: n,
                    cap: caps.max_qubits_sector,
                });
            }
            if ne > n {
                return Err(Error::Validation(format!(
                    "sector with {ne} electrons does not fit in {n} spin orbitals"
                )));
            }
            (0..1u64 << n).filter(|b| b.count_ones() as usize == ne).collect()
        }
    };
    if basis.len() > caps.max_dimension {
        return Err(Error::Capacity {
            what: "dense dimension",
            requested: basis.len(),
            cap: caps.max_dimension,
        });
    }
    let dim = basis.len();
    let position: Option<HashMap<u64, usize>> =
        sector.map(|_| basis.iter().enumerate().map(|(i, &b)| (b, i)).collect());
    let mut m = CMatrix::<T>::from_diagonal_element(dim, dim, lcu.b0());
    let mut leak: HashMap<(u64, usize), Cplx<T>> = HashMap::new();
    for t in lcu.terms() {
        for (col, &b) in basis.iter().enumerate() {
            let (k, out) = t.string.apply_to_basis(b);
            let amp = times_i_pow(t.coeff, k);
            let row = match &position {
                None => Some(out as usize),
                Some(pos) => pos.get(&out).copied(),
            };
            match row {
                Some(r) => m[(r, col)] += amp,
                None => *leak.entry((out, col)).or_insert_with(czero) += amp,
            }
        }
    }
    let tol = T::lit(1e-10) * (T::one() + lcu.alpha());
    if let Some(worst) = leak.values().map(|c| c.modulus()).reduce(|a, b| if b > a { b } else { a }) {
        if worst > tol {
            return Err(Error::Validation(format!(
                "operator does not conserve particle number (leakage {worst:e}); sector projection is invalid"
            )));
        }
    }
    Ok(DenseOperator {
        matrix: m,
        basis,
        sector,
    })
}

/// Pauli decomposition `c_P = tr(P M) / 2^n` of a `2^n × 2^n` matrix.
pub fn pauli_decompose<T: Real>(m: &CMatrix<T>, zero_tol: T) -> Result<PauliLcu<T>> {
    let dim = m.nrows();
    if m.ncols() != dim || !dim.is_power_of_two() {
        return Err(Error::Validation(format!(
            "matrix must be square with power-of-two dimension, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = dim.trailing_zeros() as usize;
    if n > 10 {
        return Err(Error::Capacity {
            what: "Pauli decomposition qubit count",
            requested: n,
            cap: 10,
        });
    }
    let scale = T::one() / T::from_count(dim);
    let mut terms = Vec::with_capacity(dim * dim);
    for x in 0..dim as u64 {
        for z in 0..dim as u64 {
            let p = PauliString::from_bits_unchecked(n, x, z);
            let mut tr = czero::<T>();
            for c in 0..dim as u64 {
                let (k, row) = p.apply_to_basis(c);
                // Σ_c M_{c,row} P_{row,c} = tr(M P), with P_{row,c} = i^k.
                tr += times_i_pow(m[(c as usize, row as usize)], k);
            }
            terms.push((tr * cplx(scale, T::zero()), p));
        }
    }
    PauliLcu::from_terms(n, czero(), terms, zero_tol)
}
