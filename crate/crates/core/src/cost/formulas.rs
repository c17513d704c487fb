//! Closed-form T-gate and qubit counts. Every per-call cost is exact integer
//! arithmetic; only the QEVE query count carries real-valued constants.

use crate::error::{Error, Result};

/// T gates per Toffoli.
pub const T_PER_TOFFOLI: u64 = 4;

/// Constant in the QEVE query count `18440·√3·N·κ_S`.
pub const QEVE_QUERY_CONSTANT: f64 = 18440.0;

/// Smallest `k ≥ 0` with `2^k ≥ x`.
pub fn ceil_log2(x: f64) -> Result<u32> {
    if !x.is_finite() || x.is_nan() {
        return Err(Error::Validation(format!("cannot take log2 of {x}")));
    }
    if x <= 1.0 {
        return Ok(0);
    }
    let mut k = x.log2().ceil().max(0.0) as i32;
    while 2f64.powi(k) < x {
        k += 1;
    }
    while k > 0 && 2f64.powi(k - 1) >= x {
        k -= 1;
    }
    if k > 1000 {
        return Err(Error::Validation(format!("{x:e} is out of range")));
    }
    Ok(k as u32)
}

/// `⌈log₂ K⌉` for an integer `K ≥ 1`.
pub fn ceil_log2_int(k: u64) -> u32 {
    if k <= 1 {
        0
    } else {
        64 - (k - 1).leading_zeros()
    }
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Validation(format!("{name} must be positive and finite, got {x}")))
    }
}

/// `max(1, ⌈log₂(2αK/ε)⌉)`.
pub fn mu_qubitization(alpha: f64, k: u64, epsilon: f64) -> Result<u32> {
    mu_qeve(alpha, k, 1.0, epsilon)
}

/// `max(1, ⌈log₂(2αKκ_S/ε)⌉)`.
pub fn mu_qeve(alpha: f64, k: u64, kappa_s: f64, epsilon: f64) -> Result<u32> {
    positive("alpha", alpha)?;
    positive("epsilon", epsilon)?;
    positive("kappa_S", kappa_s)?;
    if k == 0 {
        return Err(Error::Validation("term count must be positive".into()));
    }
    Ok(ceil_log2(2.0 * alpha * k as f64 * kappa_s / epsilon)?.max(1))
}

/// `⌈log₂(2πα/ε_QPE)⌉`, the phase-register width before the failure margin.
pub fn phase_bits(alpha: f64, epsilon_qpe: f64) -> Result<u32> {
    positive("alpha", alpha)?;
    positive("epsilon", epsilon_qpe)?;
    ceil_log2(2.0 * std::f64::consts::PI * alpha / epsilon_qpe)
}

/// `4·2^{⌈log₂(2πα/ε_QPE)⌉} − 1`.
pub fn walk_calls_qpe(alpha: f64, epsilon_qpe: f64) -> Result<u64> {
    let bits = phase_bits(alpha, epsilon_qpe)?;
    1u64.checked_shl(bits + 2)
        .map(|v| v - 1)
        .ok_or_else(|| Error::Validation("walk call count overflows 64 bits".into()))
}

/// QPE ancillas `⌈log₂(2πα/ε_QPE)⌉ + ⌈log₂(2 + 1/(2 p_fail))⌉`.
pub fn qpe_ancillas(alpha: f64, epsilon_qpe: f64, p_fail: f64) -> Result<u32> {
    if !(p_fail > 0.0 && p_fail < 0.5) {
        return Err(Error::Validation(format!("p_fail must lie in (0, 1/2), got {p_fail}")));
    }
    Ok(phase_bits(alpha, epsilon_qpe)? + ceil_log2(2.0 + 1.0 / (2.0 * p_fail))?)
}

/// Checks that `q` is a power of two with `1 ≤ q < K`.
pub fn check_q(k: u64, q: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::Validation(format!("at least two LCU terms are required, got {k}")));
    }
    if !q.is_power_of_two() || q >= k {
        return Err(Error::Validation(format!("q = {q} must be a power of two in [1, {k})")));
    }
    Ok(())
}

/// PREP: `4⌈K/q⌉ + 4(μ + ⌈log K⌉)(q − 1) + 4μ + 12⌈log K⌉`.
pub fn prep_cost(k: u64, mu: u32, q: u64) -> u64 {
    let lk = ceil_log2_int(k) as u64;
    let mu = mu as u64;
    4 * k.div_ceil(q) + 4 * (mu + lk) * (q - 1) + 4 * mu + 12 * lk
}

/// SELECT by unary iteration: `4K − 4`.
pub fn sel_cost(k: u64) -> u64 {
    4 * k - 4
}

/// Reflection about the zero state of the qubitization ancillas: `4(⌈log K⌉ − 1)`.
pub fn reflection_cost_qubitization(k: u64) -> u64 {
    4 * (ceil_log2_int(k) as u64).saturating_sub(1)
}

/// Controlled walk `SEL + 2·PREP + reflection`.
pub fn walk_cost_qubitization(k: u64, mu: u32, q: u64) -> u64 {
    sel_cost(k) + 2 * prep_cost(k, mu, q) + reflection_cost_qubitization(k)
}

/// `(N, n)`: `N = 2^n` the smallest power of two `≥ 10π α_eff / ε_QEVE`.
pub fn qeve_degree(alpha_eff: f64, epsilon_qeve: f64) -> Result<(u64, u32)> {
    positive("alpha_eff", alpha_eff)?;
    positive("epsilon", epsilon_qeve)?;
    let n = ceil_log2(10.0 * std::f64::consts::PI * alpha_eff / epsilon_qeve)?;
    if n >= 63 {
        return Err(Error::Validation("Chebyshev degree overflows 64 bits".into()));
    }
    Ok((1u64 << n, n))
}

/// Linear-solver queries `18440·√3·N·κ_S` (no repetition factor).
pub fn qeve_walk_calls(n_degrees: u64, kappa_s: f64) -> f64 {
    QEVE_QUERY_CONSTANT * 3f64.sqrt() * n_degrees as f64 * kappa_s
}

/// Block encoding of `H`: `SEL + 2·PREP`.
pub fn block_encoding_h_cost(k: u64, mu: u32, q: u64) -> u64 {
    sel_cost(k) + 2 * prep_cost(k, mu, q)
}

/// Controlled shift on the `n`-qubit degree register: `2n(n − 1)`.
pub fn shift_cost(n: u32) -> u64 {
    2 * n as u64 * (n as u64).saturating_sub(1)
}

/// Block encoding of `C`: `BE(H) + 6n(n − 1)`.
pub fn block_encoding_c_cost(k: u64, mu: u32, q: u64, n: u32) -> u64 {
    block_encoding_h_cost(k, mu, q) + 3 * shift_cost(n)
}

/// Reflection on the QEVE ancillas: `4(⌈log K⌉ + 1)`.
pub fn reflection_cost_qeve(k: u64) -> u64 {
    4 * (ceil_log2_int(k) as u64 + 1)
}

/// One QEVE walk step: `BE(C) + reflection`.
pub fn walk_cost_qeve(k: u64, mu: u32, q: u64, n: u32) -> u64 {
    block_encoding_c_cost(k, mu, q, n) + reflection_cost_qeve(k)
}

/// Lookup-table ancillas `(μ + ⌈log K⌉)(q − 1) + ⌈log₂(K/q)⌉`.
pub fn lookup_ancillas(k: u64, mu: u32, q: u64) -> u64 {
    let lk = ceil_log2_int(k) as u64;
    (mu as u64 + lk) * (q - 1) + ceil_log2_int(k.div_ceil(q)) as u64
}

/// Logical qubits: system register, alias-sampling index, alternate index
/// and keep registers, unary-iteration ancillas, lookup ancillas, and the
/// method's own register (`extra`: QPE ancillas, or `n + 3` for QEVE).
pub fn qubit_count(n_system: u64, k: u64, mu: u32, q: u64, extra: u64) -> u64 {
    let lk = ceil_log2_int(k) as u64;
    n_system + 3 * lk + mu as u64 + lookup_ancillas(k, mu, q) + extra
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_boundaries() {
        assert_eq!(ceil_log2(1.0).unwrap(), 0);
        assert_eq!(ceil_log2(0.3).unwrap(), 0);
        assert_eq!(ceil_log2(2.0).unwrap(), 1);
        assert_eq!(ceil_log2(1024.0).unwrap(), 10);
        assert_eq!(ceil_log2(1024.5).unwrap(), 11);
        assert_eq!(ceil_log2_int(1), 0);
        assert_eq!(ceil_log2_int(12700), 14);
        assert_eq!(ceil_log2_int(1 << 20), 20);
        assert!(ceil_log2(f64::NAN).is_err());
    }

    #[test]
    fn mu_clamps_at_one() {
        assert_eq!(mu_qubitization(1.0, 1, 2.0).unwrap(), 1);
        assert!(mu_qubitization(1.0, 1, 0.0).is_err());
    }

    #[test]
    fn smallest_cases() {
        assert_eq!(prep_cost(2, 1, 1), 24);
        assert_eq!(walk_cost_qubitization(2, 1, 1), 52);
        assert_eq!(sel_cost(2), 4);
    }

    #[test]
    fn decomposition_identity() {
        for &(k, mu, q) in &[(2u64, 1u32, 1u64), (934, 25, 4), (12700, 30, 16), (6_390_000, 44, 256)] {
            let lk = ceil_log2_int(k) as u64;
            let mu64 = mu as u64;
            let closed = 4 * k + 8 * mu64 + 8 * (q - 1) * (mu64 + lk) + 8 * k.div_ceil(q) + 28 * lk - 8;
            assert_eq!(walk_cost_qubitization(k, mu, q), closed);
            let be_h = 4 * k + 8 * mu64 + 8 * (q - 1) * (mu64 + lk) + 8 * k.div_ceil(q) + 24 * lk - 4;
            assert_eq!(block_encoding_h_cost(k, mu, q), be_h);
        }
    }

    #[test]
    fn check_q_range() {
        assert!(check_q(2, 1).is_ok());
        assert!(check_q(2, 2).is_err());
        assert!(check_q(100, 3).is_err());
        assert!(check_q(1, 1).is_err());
    }

    #[test]
    fn lookup_ancillas_at_q_one_is_index_width() {
        assert_eq!(lookup_ancillas(12700, 30, 1), 14);
    }
}
