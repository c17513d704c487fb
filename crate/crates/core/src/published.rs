//! Reference values for the second-row atoms Li to Ne: one-norms, term counts,
//! Jordan condition numbers, T-gate counts and logical qubit counts of the
//! published resource tables.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub const ATOMS: [&str; 8] = ["Li", "Be", "B", "C", "N", "O", "F", "Ne"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "cc-pVDZ")]
    CcPvdz,
    #[serde(rename = "cc-pVTZ")]
    CcPvtz,
    #[serde(rename = "cc-pVQZ")]
    CcPvqz,
    /// Transcorrelated Hamiltonian in STO-6G.
    #[serde(rename = "TC/STO-6G")]
    TcSto6g,
}

impl Basis {
    pub const ALL: [Basis; 4] = [Basis::CcPvdz, Basis::CcPvtz, Basis::CcPvqz, Basis::TcSto6g];

    /// Spin orbitals for the second-row atoms (frozen core not applied).
    pub fn n_system(self) -> u64 {
        match self {
            Basis::CcPvdz => 28,
            Basis::CcPvtz => 60,
            Basis::CcPvqz => 110,
            Basis::TcSto6g => 10,
        }
    }

    pub fn is_transcorrelated(self) -> bool {
        self == Basis::TcSto6g
    }

    pub fn name(self) -> &'static str {
        match self {
            Basis::CcPvdz => "cc-pVDZ",
            Basis::CcPvtz => "cc-pVTZ",
            Basis::CcPvqz => "cc-pVQZ",
            Basis::TcSto6g => "TC/STO-6G",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let key = s.to_ascii_lowercase().replace(['-', '_', '/'], "");
        match key.as_str() {
            "ccpvdz" | "dz" => Ok(Basis::CcPvdz),
            "ccpvtz" | "tz" => Ok(Basis::CcPvtz),
            "ccpvqz" | "qz" => Ok(Basis::CcPvqz),
            "tcsto6g" | "tc" | "sto6g" => Ok(Basis::TcSto6g),
            _ => Err(Error::Config(format!("unknown basis {s:?}"))),
        }
    }
}

/// One atom/basis entry of the published tables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PublishedEntry {
    pub atom: &'static str,
    pub basis: Basis,
    pub alpha: f64,
    #[serde(rename = "K")]
    pub n_terms: u64,
    #[serde(rename = "kappa_S")]
    pub kappa_s: Option<f64>,
    pub t_qrom: f64,
    pub t_qroam: f64,
    pub qubits_qrom: u64,
    pub qubits_qroam: u64,
}

const ALPHA: [[f64; 8]; 4] = [
    [67.4, 112.5, 121.7, 154.5, 202.8, 203.6, 242.0, 293.7],
    [583.0, 839.0, 891.0, 1100.0, 1630.0, 1530.0, 1760.0, 2390.0],
    [2800.0, 4320.0, 4000.0, 5200.0, 8170.0, 7000.0, 8060.0, 12000.0],
    [6.0, 12.0, 18.1, 27.0, 49.1, 76.3, 94.6, 106.5],
];

/// One-norms of the (non-transcorrelated) STO-6G Hamiltonians.
pub const ALPHA_STO6G: [f64; 8] = [8.2, 12.0, 17.4, 26.0, 36.2, 48.4, 62.3, 78.2];

/// Term count of the STO-6G Hamiltonians (all atoms).
pub const K_STO6G: u64 = 154;

const TERMS: [[u64; 8]; 4] = [
    [12_700, 22_500, 11_000, 11_000, 23_000, 11_000, 11_000, 23_000],
    [502_000, 537_000, 239_000, 239_000, 547_000, 239_000, 239_000, 548_000],
    [6_100_000, 6_230_000, 2_620_000, 2_620_000, 6_390_000, 2_610_000, 2_620_000, 6_390_000],
    [934, 958, 958, 910, 958, 958, 910, 910],
];

/// Jordan condition numbers of the TC/STO-6G Hamiltonians.
pub const KAPPA_S_TC: [f64; 8] = [3.1, 10.0, 7.7, 7.1, 13.89, 4.43, 37.8, 5.06];

const T_QROM: [[f64; 8]; 4] = [
    [6.4e11, 1.1e12, 5.5e11, 1.1e12, 2.3e12, 1.1e12, 1.1e12, 4.6e12],
    [2.0e14, 2.2e14, 9.6e13, 1.9e14, 4.4e14, 1.9e14, 1.9e14, 8.8e14],
    [9.8e15, 2.0e16, 4.2e15, 8.4e15, 2.1e16, 8.4e15, 8.4e15, 4.1e16],
    [7.2e14, 2.4e15, 3.7e15, 3.3e15, 1.4e16, 8.8e15, 7.2e16, 9.6e15],
];

const T_QROAM: [[f64; 8]; 4] = [
    [2.6e11, 4.5e11, 2.3e11, 4.7e11, 9.2e11, 4.7e11, 4.6e11, 1.8e12],
    [7.0e13, 7.5e13, 3.4e13, 6.8e13, 1.5e14, 6.8e13, 6.8e13, 3.1e14],
    [3.3e15, 6.8e15, 1.4e15, 2.9e15, 7.0e15, 2.9e15, 2.9e15, 1.4e16],
    [4.7e14, 1.5e15, 2.4e15, 2.2e15, 9.1e15, 5.9e15, 5.0e16, 6.6e15],
];

const QUBITS_QROM: [[u64; 8]; 4] = [
    [136, 142, 137, 138, 144, 139, 139, 145],
    [200, 205, 195, 197, 207, 197, 197, 208],
    [274, 275, 269, 270, 276, 271, 271, 278],
    [94, 97, 98, 98, 101, 101, 104, 102],
];

const QUBITS_QROAM: [[u64; 8]; 4] = [
    [1032, 1098, 1063, 1064, 1130, 1095, 1095, 1131],
    [10099, 10358, 4977, 5105, 10614, 5105, 5105, 10615],
    [23216, 23217, 22701, 22702, 23728, 23213, 23213, 24240],
    [242, 263, 264, 264, 279, 273, 294, 280],
];

/// Every atom/basis entry, atoms in periodic order within each basis.
pub fn published_entries() -> Vec<PublishedEntry> {
    let mut out = Vec::with_capacity(32);
    for (b, basis) in Basis::ALL.iter().enumerate() {
        for (a, atom) in ATOMS.iter().enumerate() {
            out.push(PublishedEntry {
                atom,
                basis: *basis,
                alpha: ALPHA[b][a],
                n_terms: TERMS[b][a],
                kappa_s: basis.is_transcorrelated().then_some(KAPPA_S_TC[a]),
                t_qrom: T_QROM[b][a],
                t_qroam: T_QROAM[b][a],
                qubits_qrom: QUBITS_QROM[b][a],
                qubits_qroam: QUBITS_QROAM[b][a],
            });
        }
    }
    out
}

pub fn published_entry(atom: &str, basis: Basis) -> Option<PublishedEntry> {
    published_entries()
        .into_iter()
        .find(|e| e.atom.eq_ignore_ascii_case(atom) && e.basis == basis)
}

/// Ground-state energies (Hartree) for Li and Be.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReferenceEnergy {
    pub atom: &'static str,
    pub method: &'static str,
    pub energy: f64,
    pub uncertainty: Option<f64>,
}

pub const REFERENCE_ENERGIES: [ReferenceEnergy; 10] = [
    ReferenceEnergy { atom: "Li", method: "experiment", energy: -7.47806, uncertainty: None },
    ReferenceEnergy { atom: "Li", method: "FCI/cc-pVDZ", energy: -7.43264, uncertainty: None },
    ReferenceEnergy { atom: "Li", method: "FCI/cc-pVTZ", energy: -7.44607, uncertainty: None },
    ReferenceEnergy { atom: "Li", method: "FCI/cc-pVQZ", energy: -7.44983, uncertainty: None },
    ReferenceEnergy { atom: "Li", method: "TC-FCI/STO-6G", energy: -7.471, uncertainty: Some(0.001) },
    ReferenceEnergy { atom: "Be", method: "experiment", energy: -14.66736, uncertainty: None },
    ReferenceEnergy { atom: "Be", method: "FCI/cc-pVDZ", energy: -14.61741, uncertainty: None },
    ReferenceEnergy { atom: "Be", method: "FCI/cc-pVTZ", energy: -14.62381, uncertainty: None },
    ReferenceEnergy { atom: "Be", method: "DMRG+SCI/cc-pVQZ", energy: -14.64001, uncertainty: None },
    ReferenceEnergy { atom: "Be", method: "TC-FCI/STO-6G", energy: -14.667, uncertainty: Some(0.004) },
];
