#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tcqeve_core::integrals::SpinOrbitalHamiltonian;
use tcqeve_core::pauli::{Pauli, PauliLcu, PauliString};

pub type M = DMatrix<Complex64>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-1.0..1.0)
}

fn idx(n: usize, ix: &[usize]) -> usize {
    ix.iter().fold(0, |a, &i| a * n + i)
}

/// Real chemist integrals with eightfold symmetry, returned in physicist order
/// `V_pqrs = (pr|qs)`.
pub fn random_hermitian(n: usize, rng: &mut ChaCha8Rng, scale: f64) -> SpinOrbitalHamiltonian<f64> {
    let mut h = vec![0.0; n * n];
    for p in 0..n {
        for q in 0..=p {
            let x = scale * uniform(rng);
            h[p * n + q] = x;
            h[q * n + p] = x;
        }
    }
    let mut chem = vec![0.0; n.pow(4)];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let x = 0.5 * scale * uniform(rng);
                    for (a, b, c2, d) in [
                        (i, j, k, l),
                        (j, i, k, l),
                        (i, j, l, k),
                        (j, i, l, k),
                        (k, l, i, j),
                        (l, k, i, j),
                        (k, l, j, i),
                        (l, k, j, i),
                    ] {
                        chem[idx(n, &[a, b, c2, d])] = x;
                    }
                }
            }
        }
    }
    let mut v = vec![0.0; n.pow(4)];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    v[idx(n, &[p, q, r, s])] = 0.5 * chem[idx(n, &[p, r, q, s])];
                }
            }
        }
    }
    SpinOrbitalHamiltonian::new(n, scale * uniform(rng), h, v, None, None, "random").unwrap()
}

/// Unstructured real `h`, `V`, `K`, `G`.
pub fn random_tc(n: usize, rng: &mut ChaCha8Rng, scale: f64) -> SpinOrbitalHamiltonian<f64> {
    let mut fill = |len: usize, s: f64| (0..len).map(|_| s * uniform(rng)).collect::<Vec<_>>();
    let h = fill(n * n, scale);
    let v = fill(n.pow(4), 0.5 * scale);
    let k = fill(n.pow(4), 0.2 * scale);
    let g = fill(n.pow(6), 0.05 * scale);
    SpinOrbitalHamiltonian::new(n, 0.3, h, v, Some(k), Some(g), "random-tc").unwrap()
}

/// Applies `a_mode` (or `a†_mode`) to an occupation bitstring with the
/// canonical sign `(−1)^{occupied modes below}`.
fn ladder(state: Option<(f64, u64)>, mode: usize, create: bool) -> Option<(f64, u64)> {
    let (sign, b) = state?;
    let bit = 1u64 << mode;
    let occupied = b & bit != 0;
    if occupied == create {
        return None;
    }
    let parity = (b & (bit - 1)).count_ones();
    let s = if parity.is_multiple_of(2) { sign } else { -sign };
    Some((s, b ^ bit))
}

/// Matrix of the second-quantized Hamiltonian built directly in the
/// occupation-number basis. Mode `2p + σ` is bit `2p + σ` of the index.
pub fn fock_matrix(ham: &SpinOrbitalHamiltonian<f64>) -> M {
    let n = ham.n_spatial();
    let modes = 2 * n;
    let dim = 1usize << modes;
    let mut m = M::zeros(dim, dim);
    let apply = |m: &mut M, coeff: f64, ops: &[(usize, bool)]| {
        if coeff == 0.0 {
            return;
        }
        for b in 0..dim as u64 {
            let mut st = Some((1.0, b));
            for &(mode, create) in ops.iter().rev() {
                st = ladder(st, mode, create);
            }
            if let Some((s, out)) = st {
                m[(out as usize, b as usize)] += c(coeff * s, 0.0);
            }
        }
    };
    for i in 0..dim {
        m[(i, i)] += c(ham.core_energy(), 0.0);
    }
    for p in 0..n {
        for q in 0..n {
            for s in 0..2 {
                apply(&mut m, ham.h(p, q), &[(2 * p + s, true), (2 * q + s, false)]);
            }
        }
    }
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    let w = ham.two_body(p, q, r, s);
                    for si in 0..2 {
                        for ta in 0..2 {
                            apply(
                                &mut m,
                                w,
                                &[
                                    (2 * p + si, true),
                                    (2 * q + ta, true),
                                    (2 * s + ta, false),
                                    (2 * r + si, false),
                                ],
                            );
                        }
                    }
                }
            }
        }
    }
    if ham.g_tensor().is_some() {
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        for u in 0..n {
                            for v in 0..n {
                                let w = ham.g(p, q, r, s, u, v).unwrap();
                                for si in 0..2 {
                                    for ta in 0..2 {
                                        for ka in 0..2 {
                                            apply(
                                                &mut m,
                                                w,
                                                &[
                                                    (2 * p + si, true),
                                                    (2 * q + ta, true),
                                                    (2 * r + ka, true),
                                                    (2 * v + ka, false),
                                                    (2 * u + ta, false),
                                                    (2 * s + si, false),
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
    m
}

/// `2×2` Pauli matrix.
pub fn pauli_2x2(p: Pauli) -> M {
    let (z, o, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match p {
        Pauli::I => M::from_row_slice(2, 2, &[o, z, z, o]),
        Pauli::X => M::from_row_slice(2, 2, &[z, o, o, z]),
        Pauli::Y => M::from_row_slice(2, 2, &[z, -i, i, z]),
        Pauli::Z => M::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// Kronecker product with qubit 0 as the least significant index bit.
pub fn pauli_matrix(s: &PauliString) -> M {
    let mut m = M::from_element(1, 1, c(1.0, 0.0));
    for q in 0..s.n_qubits() {
        m = pauli_2x2(s.get(q)).kronecker(&m);
    }
    m
}

pub fn lcu_matrix(lcu: &PauliLcu<f64>) -> M {
    let dim = 1usize << lcu.n_qubits();
    let mut m = M::identity(dim, dim) * lcu.b0();
    for t in lcu.terms() {
        m += pauli_matrix(&t.string) * t.coeff;
    }
    m
}

pub fn random_string(n: usize, rng: &mut ChaCha8Rng) -> PauliString {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    PauliString::from_bits(n, rng.random::<u64>() & mask, rng.random::<u64>() & mask).unwrap()
}

pub fn random_lcu(n: usize, terms: usize, rng: &mut ChaCha8Rng, hermitian: bool) -> PauliLcu<f64> {
    let items: Vec<_> = (0..terms)
        .map(|_| {
            let im = if hermitian { 0.0 } else { uniform(rng) };
            (c(uniform(rng), im), random_string(n, rng))
        })
        .collect();
    PauliLcu::from_terms(n, c(uniform(rng), 0.0), items, 0.0).unwrap()
}

pub fn max_entry_diff(a: &M, b: &M) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn spectral_norm(m: &M) -> f64 {
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}

/// `S D S⁻¹` with `S = I + 0.3·U(−1, 1)` and real eigenvalues drawn from
/// `[-spread, spread]`, rescaled so that `‖H‖₂ ≤ target_norm`.
/// Returns the matrix, its eigenvalues and `S` (columns unnormalized).
pub struct Diagonalizable {
    pub matrix: M,
    pub eigenvalues: Vec<f64>,
    pub s: M,
}

pub fn random_diagonalizable(d: usize, rng: &mut ChaCha8Rng, hermitian: bool, target_norm: f64) -> Diagonalizable {
    loop {
        let eig: Vec<f64> = (0..d).map(|_| uniform(rng)).collect();
        let s = if hermitian {
            let a = M::from_fn(d, d, |_, _| c(uniform(rng), uniform(rng)));
            a.qr().q()
        } else {
            M::identity(d, d) + M::from_fn(d, d, |_, _| c(0.3 * uniform(rng), 0.3 * uniform(rng)))
        };
        let Some(s_inv) = s.clone().try_inverse() else { continue };
        let dmat = M::from_diagonal(&DVector::from_iterator(d, eig.iter().map(|&x| c(x, 0.0))));
        let mut m = &s * dmat * &s_inv;
        if hermitian {
            m = (&m + m.adjoint()) * c(0.5, 0.0);
        }
        let norm = spectral_norm(&m);
        if norm == 0.0 {
            continue;
        }
        let scale = target_norm / norm;
        return Diagonalizable {
            matrix: m * c(scale, 0.0),
            eigenvalues: eig.iter().map(|x| x * scale).collect(),
            s,
        };
    }
}

/// `‖S‖‖S⁻¹‖` after normalizing the columns of `S`.
pub fn normalized_condition(s: &M) -> f64 {
    let mut s = s.clone();
    for mut col in s.column_iter_mut() {
        let n = col.norm();
        col /= c(n, 0.0);
    }
    let sv = s.singular_values();
    sv.max() / sv.min()
}

pub fn unit_vector(d: usize, rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    let v = DVector::from_fn(d, |_, _| c(uniform(rng), uniform(rng)));
    let n = v.norm();
    v / c(n, 0.0)
}
