//! Fermion-to-qubit mapping.
//!
//! Spin orbital `(p, σ)` is qubit `2p + σ` and
//! `a_j = Z_0 ⋯ Z_{j-1} (X_j + iY_j) / 2`.

use std::collections::HashMap;

use super::lcu::{PauliLcu, COMBINE_ZERO_TOL};
use super::string::{PauliString, MAX_PACKED_QUBITS};
use crate::error::{Error, Result};
use crate::integrals::SpinOrbitalHamiltonian;
use crate::scalar::{cplx, czero, times_i_pow, Real};

/// Limits for [`jordan_wigner_with`].
#[derive(Debug, Clone, Copy)]
pub struct JwConfig {
    pub max_qubits: usize,
    /// Combined coefficients with magnitude at or below this are dropped.
    pub zero_tol: f64,
}

impl Default for JwConfig {
    fn default() -> Self {
        Self {
            max_qubits: 63,
            zero_tol: COMBINE_ZERO_TOL,
        }
    }
}

#[derive(Clone, Copy)]
struct Ladder {
    mode: usize,
    creation: bool,
}

/// Maps `h` to a Pauli LCU with the default limits.
pub fn jordan_wigner<T: Real>(h: &SpinOrbitalHamiltonian<T>) -> Result<PauliLcu<T>> {
    jordan_wigner_with(h, &JwConfig::default())
}

pub fn jordan_wigner_with<T: Real>(h: &SpinOrbitalHamiltonian<T>, cfg: &JwConfig) -> Result<PauliLcu<T>> {
    let n_qubits = h.n_spin_orbitals();
    let cap = cfg.max_qubits.min(MAX_PACKED_QUBITS);
    if n_qubits > cap {
        return Err(Error::Capacity {
            what: "Jordan-Wigner qubit count",
            requested: n_qubits,
            cap,
        });
    }
    let mut acc = Accumulator::new(n_qubits);
    let n = h.n_spatial();
    let so = |p: usize, spin: usize| 2 * p + spin;

    for p in 0..n {
        for q in 0..n {
            let c = h.h(p, q);
            if c == T::zero() {
                continue;
            }
            for s in 0..2 {
                acc.add_product(c, &[cre(so(p, s)), ann(so(q, s))]);
            }
        }
    }

    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let c = h.two_body(p, q, r, s);
                    if c == T::zero() {
                        continue;
                    }
                    for sg in 0..2 {
                        for tau in 0..2 {
                            acc.add_product(
                                c,
                                &[cre(so(p, sg)), cre(so(q, tau)), ann(so(s, tau)), ann(so(r, sg))],
                            );
                        }
                    }
                }
            }
        }
    }

    if let Some(g) = h.g_tensor() {
        let mut i = 0usize;
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        for u in 0..n {
                            for v in 0..n {
                                let c = g[i];
                                i += 1;
                                if c == T::zero() {
                                    continue;
                                }
                                for sg in 0..2 {
                                    for tau in 0..2 {
                                        for kap in 0..2 {
                                            acc.add_product(
                                                c,
                                                &[
                                                    cre(so(p, sg)),
                                                    cre(so(q, tau)),
                                                    cre(so(r, kap)),
                                                    ann(so(v, kap)),
                                                    ann(so(u, tau)),
                                                    ann(so(s, sg)),
                                                ],
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let b0 = acc.identity + cplx(h.core_energy(), T::zero());
    Ok(PauliLcu::from_accumulator(
        n_qubits,
        b0,
        acc.terms,
        T::lit(cfg.zero_tol),
    ))
}

fn cre(mode: usize) -> Ladder {
    Ladder { mode, creation: true }
}

fn ann(mode: usize) -> Ladder {
    Ladder { mode, creation: false }
}

struct Accumulator<T> {
    n_qubits: usize,
    identity: crate::scalar::Cplx<T>,
    terms: HashMap<PauliString, crate::scalar::Cplx<T>>,
    scratch: Vec<(u32, PauliString)>,
    next: Vec<(u32, PauliString)>,
}

impl<T: Real> Accumulator<T> {
    fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            identity: czero(),
            terms: HashMap::new(),
            scratch: Vec::with_capacity(64),
            next: Vec::with_capacity(64),
        }
    }

    /// Adds `coeff · op_0 op_1 ⋯ op_{m-1}`.
    fn add_product(&mut self, coeff: T, ops: &[Ladder]) {
        // Repeated creation (or annihilation) of one mode is the zero operator.
        for (i, a) in ops.iter().enumerate() {
            if ops[i + 1..]
                .iter()
                .any(|b| b.mode == a.mode && b.creation == a.creation)
            {
                return;
            }
        }
        self.scratch.clear();
        self.scratch.push((0, PauliString::identity(self.n_qubits)));
        for op in ops {
            let below = (1u64 << op.mode) - 1;
            let bit = 1u64 << op.mode;
            let x_part = PauliString::from_bits_unchecked(self.n_qubits, bit, below);
            let y_part = PauliString::from_bits_unchecked(self.n_qubits, bit, below | bit);
            // a = (X + iY)/2, a† = (X - iY)/2 on the string.
            let y_phase = if op.creation { 3 } else { 1 };
            self.next.clear();
            for &(k, s) in &self.scratch {
                let (kx, sx) = s.mul(&x_part);
                self.next.push(((k + kx) & 3, sx));
                let (ky, sy) = s.mul(&y_part);
                self.next.push(((k + ky + y_phase) & 3, sy));
            }
            std::mem::swap(&mut self.scratch, &mut self.next);
        }
        let scale = coeff * T::lit(0.5f64.powi(ops.len() as i32));
        for &(k, s) in &self.scratch {
            let c = times_i_pow(cplx(scale, T::zero()), k);
            if s.is_identity() {
                self.identity += c;
            } else {
                *self.terms.entry(s).or_insert_with(czero) += c;
            }
        }
    }
}
