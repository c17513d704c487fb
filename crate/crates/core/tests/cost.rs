mod common;

use common::*;
use rand::Rng;
use std::f64::consts::PI;
use tcqeve_core::cost::*;
use tcqeve_core::pauli::jordan_wigner;
use tcqeve_core::spectral::{analyze, DenseCaps};
use tcqeve_core::Error;

#[test]
fn keep_register_width() {
    assert_eq!(mu_qubitization(67.4, 12700, 0.0016).unwrap(), 30);
    assert_eq!(mu_qubitization(1.0, 1, 2.0).unwrap(), 1);
    // 2αK/ε = 2^20 exactly, then doubling K adds one bit.
    assert_eq!(mu_qubitization(1.0, 1 << 10, 2.0 / 1024.0).unwrap(), 20);
    assert_eq!(mu_qubitization(1.0, 1 << 11, 2.0 / 1024.0).unwrap(), 21);
    assert_eq!(mu_qeve(6.0, 934, 3.1, 0.0016).unwrap(), 25);
    assert_eq!(mu_qeve(12.0, 958, 10.0, 0.0016).unwrap(), 28);
    assert_eq!(mu_qeve(67.4, 12700, 1.0, 0.0016).unwrap(), mu_qubitization(67.4, 12700, 0.0016).unwrap());
}

#[test]
fn phase_estimation_calls() {
    assert_eq!(walk_calls_qpe(67.4, 0.0008).unwrap(), 4 * (1 << 20) - 1);
    // 2πα/ε = 2^12 exactly.
    let eps = 2.0 * PI / 4096.0;
    assert_eq!(walk_calls_qpe(1.0, eps).unwrap(), 4 * 4096 - 1);
    assert_eq!(walk_calls_qpe(67.4, 0.0004).unwrap() + 1, 2 * (walk_calls_qpe(67.4, 0.0008).unwrap() + 1));
}

#[test]
fn prepare_and_walk_costs() {
    assert_eq!(prep_cost(12700, 30, 1), 51_088);
    assert_eq!(prep_cost(12700, 30, 16), 6_104);
    assert_eq!(prep_cost(2, 1, 1), 24);
    assert_eq!(walk_cost_qubitization(12700, 30, 1), 153_024);
    assert_eq!(walk_cost_qubitization(12700, 30, 16), 63_056);
    assert_eq!(walk_cost_qubitization(2, 1, 1), 52);
    for &(k, mu, q) in &[(2u64, 1u32, 1u64), (958, 28, 4), (12700, 30, 16), (548_000, 40, 64)] {
        assert_eq!(
            walk_cost_qubitization(k, mu, q),
            sel_cost(k) + 2 * prep_cost(k, mu, q) + reflection_cost_qubitization(k)
        );
    }
}

#[test]
fn chebyshev_degree_rule() {
    assert_eq!(qeve_degree(6.0, 0.0008).unwrap(), (1 << 18, 18));
    assert_eq!(qeve_degree(12.0, 0.0008).unwrap(), (1 << 19, 19));
    let eps = 10.0 * PI / 1024.0;
    assert_eq!(qeve_degree(1.0, eps).unwrap(), (1024, 10));
}

#[test]
fn qeve_query_count() {
    let n19 = qeve_walk_calls(1 << 19, 10.0);
    assert!((n19 / 1.67e11 - 1.0).abs() < 0.01);
    assert!((qeve_walk_calls(1, 1.0) - 18440.0 * 3f64.sqrt()).abs() < 1e-9);
    // Unrounded N = 10πα/ε_QEVE gives 184400·√3·π·α·κ_S/ε_QEVE.
    let (alpha, kappa, eps) = (3.0, 2.5, 0.001);
    let n_exact = 10.0 * PI * alpha / eps;
    let closed = 184_400.0 * 3f64.sqrt() * PI * alpha * kappa / eps;
    assert!((18440.0 * 3f64.sqrt() * n_exact * kappa - closed).abs() < 1e-6 * closed);
}

#[test]
fn qeve_walk_step_cost() {
    assert_eq!(walk_cost_qeve(958, 28, 1, 19), 14_052);
    assert_eq!(block_encoding_h_cost(958, 28, 1), 11_956);
    assert_eq!(walk_cost_qeve(934, 25, 1, 18), 13_524);
    // K=2, μ=1, q=1, n=2: BE(H) = 8+8+0+16+24−4 = 52, shift term 6·2·1 = 12, reflection 4·2 = 8.
    assert_eq!(walk_cost_qeve(2, 1, 1, 2), 72);
}

#[test]
fn qroam_optimum() {
    let q = optimize_qroam(12700, |q| walk_cost_qubitization(12700, 30, q));
    assert_eq!(q, 16);
    assert_eq!(optimize_qroam(2, |q| walk_cost_qubitization(2, 1, q)), 1);
}

#[test]
fn qroam_optimum_matches_exhaustive_search() {
    let mut r = rng(41);
    for _ in 0..200 {
        let k: u64 = r.random_range(2..=(1 << 20));
        let mu: u32 = r.random_range(1..50);
        let got = optimize_qroam(k, |q| walk_cost_qubitization(k, mu, q));
        let mut best = (u64::MAX, 0);
        let mut q = 1;
        while q < k {
            let c = walk_cost_qubitization(k, mu, q);
            if c < best.0 {
                best = (c, q);
            }
            q *= 2;
        }
        assert_eq!(got, best.1);
        assert!(walk_cost_qubitization(k, mu, got) <= walk_cost_qubitization(k, mu, 1));
    }
}

fn input(alpha: f64, k: u64, kappa: Option<f64>) -> CostInput {
    CostInput {
        alpha,
        n_terms: k,
        n_system: 28,
        kappa_s: kappa,
        alpha_eff: Some(alpha),
    }
}

#[test]
fn lithium_double_zeta_counts() {
    let qrom = estimate_from_parameters(&input(67.4, 12700, None), &BudgetConfig::default(), Method::Qubitization).unwrap();
    assert_eq!(qrom.walk_calls, 4_194_303.0);
    assert_eq!(qrom.t_per_call, 153_024);
    assert_eq!(tables::round_sig(qrom.t_total, 2), 6.4e11);
    assert_eq!(qrom.logical_qubits, 136);
    let cfg = BudgetConfig {
        qroam_mode: QroamMode::OptimizeGates,
        ..BudgetConfig::default()
    };
    let qroam = estimate_from_parameters(&input(67.4, 12700, None), &cfg, Method::Qubitization).unwrap();
    assert_eq!(qroam.q, 16);
    assert_eq!(tables::round_sig(qroam.t_total, 2), 2.6e11);
}

#[test]
fn beryllium_transcorrelated_counts() {
    let cfg = BudgetConfig {
        repetition_factor: 1.0,
        ..BudgetConfig::default()
    };
    let r = estimate_from_parameters(&input(12.0, 958, Some(10.0)), &cfg, Method::Qeve).unwrap();
    assert_eq!(r.n_degrees, Some(1 << 19));
    assert_eq!(r.t_per_call, 14_052);
    assert!((r.t_total / 2.4e15 - 1.0).abs() < 0.05, "{}", r.t_total);
}

#[test]
fn monotone_in_inputs() {
    let cfg = BudgetConfig::default();
    let base = input(50.0, 5000, Some(3.0));
    for method in [Method::Qubitization, Method::Qeve] {
        let t = |i: &CostInput, c: &BudgetConfig| estimate_from_parameters(i, c, method).unwrap().t_total;
        let t0 = t(&base, &cfg);
        assert!(t(&CostInput { n_terms: 9000, ..base }, &cfg) >= t0);
        assert!(t(&CostInput { alpha: 90.0, alpha_eff: Some(90.0), ..base }, &cfg) >= t0);
        assert!(t(&base, &BudgetConfig { epsilon_total: 0.016, ..cfg }) <= t0);
        if method == Method::Qeve {
            assert!(t(&CostInput { kappa_s: Some(7.0), ..base }, &cfg) >= t0);
        }
    }
}

#[test]
fn ten_times_looser_budget_cuts_calls_about_tenfold() {
    let tight = estimate_from_parameters(&input(67.4, 12700, None), &BudgetConfig::default(), Method::Qubitization).unwrap();
    let loose = estimate_from_parameters(
        &input(67.4, 12700, None),
        &BudgetConfig {
            epsilon_total: 0.016,
            ..BudgetConfig::default()
        },
        Method::Qubitization,
    )
    .unwrap();
    let ratio = (tight.walk_calls + 1.0) / (loose.walk_calls + 1.0);
    assert!((8.0..=16.0).contains(&ratio), "{ratio}");
}

#[test]
fn lcu_pipeline_truncates_and_uses_dense_report() {
    let mut r = rng(42);
    let lcu = jordan_wigner(&random_hermitian(2, &mut r, 1.0)).unwrap();
    let report = analyze(&lcu, None, &DenseCaps::default()).unwrap();
    let cfg = BudgetConfig {
        epsilon_total: 0.5,
        ..BudgetConfig::default()
    };
    let q = estimate(&lcu, Some(&report), &cfg, Method::Qeve, EstimateOverrides::default()).unwrap();
    assert_eq!(q.kappa_s, Some(report.kappa_s));
    let want_alpha_eff = lcu.alpha().max(2.0 * report.shifted_norm);
    assert_eq!(q.alpha_eff, Some(want_alpha_eff));
    assert!(q.n_terms <= lcu.len() as u64);
    let kept = lcu.truncate(q.mu).lcu.len() as u64;
    assert_eq!(q.n_terms, kept);
    let err = estimate(&lcu, None, &cfg, Method::Qeve, EstimateOverrides::default()).unwrap_err();
    assert!(matches!(err, Error::Config(_)));
}
