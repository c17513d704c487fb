use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard limit imposed by the `u64` bit-packing.
pub const MAX_PACKED_QUBITS: usize = 64;

/// Single-qubit Pauli operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis, bit-packed in symplectic form.
///
/// Qubit `j` is bit `j` of `x` and `z`; `(1, 1)` is `Y` itself, so the string
/// equals `i^{|x∧z|} X^x Z^z`. Ordering is by `(n_qubits, x, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    n_qubits: u32,
    x: u64,
    z: u64,
}

#[inline]
fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        assert!(n_qubits <= MAX_PACKED_QUBITS, "at most {MAX_PACKED_QUBITS} qubits");
        Self {
            n_qubits: n_qubits as u32,
            x: 0,
            z: 0,
        }
    }

    /// Builds a string from its symplectic bits. Bits beyond `n_qubits` must be clear.
    pub fn from_bits(n_qubits: usize, x: u64, z: u64) -> Result<Self> {
        if n_qubits > MAX_PACKED_QUBITS {
            return Err(Error::Capacity {
                what: "Pauli string length",
                requested: n_qubits,
                cap: MAX_PACKED_QUBITS,
            });
        }
        if (x | z) & !mask(n_qubits) != 0 {
            return Err(Error::Validation(format!(
                "Pauli bits set beyond qubit {n_qubits}"
            )));
        }
        Ok(Self {
            n_qubits: n_qubits as u32,
            x,
            z,
        })
    }

    pub(crate) fn from_bits_unchecked(n_qubits: usize, x: u64, z: u64) -> Self {
        debug_assert!((x | z) & !mask(n_qubits) == 0);
        Self {
            n_qubits: n_qubits as u32,
            x,
            z,
        }
    }

    /// `pauli` on `qubit`, identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, pauli: Pauli) -> Self {
        assert!(qubit < n_qubits);
        let (x, z) = pauli.bits();
        Self::from_bits_unchecked(n_qubits, (x as u64) << qubit, (z as u64) << qubit)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits as usize
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        Pauli::from_bits((self.x >> qubit) & 1 == 1, (self.z >> qubit) & 1 == 1)
    }

    /// Number of non-identity factors.
    pub fn weight(&self) -> u32 {
        (self.x | self.z).count_ones()
    }

    pub fn y_count(&self) -> u32 {
        (self.x & self.z).count_ones()
    }

    /// `self · other = i^k · product`; returns `(k mod 4, product)`.
    ///
    /// Panics if the qubit counts differ.
    #[inline]
    pub fn mul(&self, other: &Self) -> (u32, Self) {
        assert_eq!(self.n_qubits, other.n_qubits, "Pauli strings of different length");
        let x = self.x ^ other.x;
        let z = self.z ^ other.z;
        let a1 = (self.x & self.z).count_ones();
        let a2 = (other.x & other.z).count_ones();
        let a3 = (x & z).count_ones();
        let swap = (self.z & other.x).count_ones();
        let k = (a1 + a2 + 2 * swap + 4 * 64 - a3) & 3;
        (
            k,
            Self {
                n_qubits: self.n_qubits,
                x,
                z,
            },
        )
    }

    /// Action on computational basis state `basis`: `P|b⟩ = i^k |b'⟩`.
    #[inline]
    pub fn apply_to_basis(&self, basis: u64) -> (u32, u64) {
        let k = ((self.x & self.z).count_ones() + 2 * (self.z & basis).count_ones()) & 3;
        (k, basis ^ self.x)
    }

    /// Letters, qubit 0 first.
    pub fn word(&self) -> String {
        (0..self.n_qubits()).map(|q| self.get(q).as_char()).collect()
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(word: &str) -> Result<Self> {
        let n = word.chars().count();
        if n > MAX_PACKED_QUBITS {
            return Err(Error::Capacity {
                what: "Pauli string length",
                requested: n,
                cap: MAX_PACKED_QUBITS,
            });
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (q, c) in word.chars().enumerate() {
            let (bx, bz) = match c.to_ascii_uppercase() {
                'I' => (false, false),
                'X' => (true, false),
                'Y' => (true, true),
                'Z' => (false, true),
                other => {
                    return Err(Error::Validation(format!(
                        "invalid Pauli letter '{other}' in '{word}'"
                    )))
                }
            };
            x |= (bx as u64) << q;
            z |= (bz as u64) << q;
        }
        Ok(Self::from_bits_unchecked(n, x, z))
    }
}
