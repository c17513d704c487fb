//! Fault-tolerant resource estimates for qubitization-based phase estimation
//! and for QEVE, with QROM/QROAM trade-offs.

mod formulas;
pub mod tables;

pub use formulas::*;

use std::fmt;
use std::str::FromStr;

use log::debug;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::PauliLcu;
use crate::scalar::Real;
use crate::spectral::{effective_alpha, SpectralReport};

/// Chemical-accuracy style default budget, Hartree.
pub const DEFAULT_EPSILON: f64 = 0.0016;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Qubitization,
    Qeve,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "qubitization" | "qpe" => Ok(Method::Qubitization),
            "qeve" => Ok(Method::Qeve),
            other => Err(Error::Config(format!("unknown method {other:?}"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Qubitization => "qubitization",
            Method::Qeve => "qeve",
        })
    }
}

/// How the QROAM block size `q` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "mode", content = "value")]
pub enum QroamMode {
    /// Plain QROM, `q = 1`.
    Qrom,
    /// Fewest T gates per walk step.
    OptimizeGates,
    /// Fewest logical qubits with total T count at most the ceiling.
    OptimizeQubits { t_ceiling: f64 },
    Fixed(u64),
}

impl FromStr for QroamMode {
    type Err = Error;

    /// `qrom`, `optimize-gates`, `optimize-qubits[:<ceiling>]` or `q=<2^k>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "qrom" {
            return Ok(QroamMode::Qrom);
        }
        if s == "optimize-gates" {
            return Ok(QroamMode::OptimizeGates);
        }
        if let Some(rest) = s.strip_prefix("optimize-qubits") {
            let rest = rest.trim_start_matches([':', '=']);
            if rest.is_empty() {
                return Err(Error::Config(
                    "optimize-qubits needs a T-count ceiling, e.g. optimize-qubits:1e15".into(),
                ));
            }
            let t_ceiling: f64 = rest
                .parse()
                .map_err(|_| Error::Config(format!("bad T-count ceiling {rest:?}")))?;
            return Ok(QroamMode::OptimizeQubits { t_ceiling });
        }
        if let Some(q) = s.strip_prefix("q=") {
            let q: u64 = q.parse().map_err(|_| Error::Config(format!("bad QROAM parameter {q:?}")))?;
            if !q.is_power_of_two() {
                return Err(Error::Config(format!("q = {q} is not a power of two")));
            }
            return Ok(QroamMode::Fixed(q));
        }
        Err(Error::Config(format!(
            "unknown QROAM mode {s:?} (expected qrom, optimize-gates, optimize-qubits:<T>, q=<2^k>)"
        )))
    }
}

/// Error budget and algorithm knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BudgetConfig {
    /// Total energy error, Hartree.
    pub epsilon_total: f64,
    /// Fraction of the budget given to phase (or Chebyshev degree) error.
    pub split: f64,
    /// QPE failure probability bound.
    pub p_fail: f64,
    /// Multiplier on QEVE walk calls for repeated measurements.
    pub repetition_factor: f64,
    pub qroam_mode: QroamMode,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        Self {
            epsilon_total: DEFAULT_EPSILON,
            split: 0.5,
            p_fail: 0.25,
            repetition_factor: 2.0,
            qroam_mode: QroamMode::Qrom,
        }
    }
}

impl BudgetConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon_total > 0.0 && self.epsilon_total.is_finite()) {
            return Err(Error::Validation(format!(
                "epsilon must be positive, got {}",
                self.epsilon_total
            )));
        }
        if !(self.split > 0.0 && self.split < 1.0) {
            return Err(Error::Validation(format!("split must lie in (0, 1), got {}", self.split)));
        }
        if !(self.p_fail > 0.0 && self.p_fail < 0.5) {
            return Err(Error::Validation(format!("p_fail must lie in (0, 1/2), got {}", self.p_fail)));
        }
        if !(self.repetition_factor >= 1.0 && self.repetition_factor.is_finite()) {
            return Err(Error::Validation(format!(
                "repetition factor must be at least 1, got {}",
                self.repetition_factor
            )));
        }
        if let QroamMode::OptimizeQubits { t_ceiling } = self.qroam_mode {
            if !(t_ceiling > 0.0) {
                return Err(Error::Validation("T-count ceiling must be positive".into()));
            }
        }
        Ok(())
    }

    /// Budget for phase estimation or the Chebyshev degree.
    pub fn epsilon_phase(&self) -> f64 {
        self.split * self.epsilon_total
    }
}

/// Problem summary the cost formulas need.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CostInput {
    /// One-norm, Hartree.
    pub alpha: f64,
    /// Number of LCU terms.
    #[serde(rename = "K")]
    pub n_terms: u64,
    /// System qubits (spin orbitals).
    pub n_system: u64,
    #[serde(rename = "kappa_S")]
    pub kappa_s: Option<f64>,
    pub alpha_eff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostReport {
    pub method: Method,
    #[serde(rename = "K")]
    pub n_terms: u64,
    pub alpha: f64,
    pub alpha_eff: Option<f64>,
    #[serde(rename = "kappa_S")]
    pub kappa_s: Option<f64>,
    pub mu: u32,
    pub q: u64,
    /// QPE ancillas (qubitization) or `n = log₂ N` (QEVE).
    pub n_a: u32,
    /// Chebyshev degree `N` (QEVE).
    #[serde(rename = "N")]
    pub n_degrees: Option<u64>,
    /// Walk-oracle calls, before the repetition factor.
    pub walk_calls: f64,
    pub t_per_call: u64,
    pub t_total: f64,
    pub logical_qubits: u64,
    pub n_system: u64,
    /// One-norm dropped by coefficient truncation (LCU input only).
    pub truncated_weight: Option<f64>,
    pub config: BudgetConfig,
}

fn candidate_qs(k: u64) -> impl Iterator<Item = u64> {
    (0..63).map(|j| 1u64 << j).take_while(move |&q| q < k)
}

/// `q` minimizing `walk_cost(q)` over powers of two in `[1, K)`, ties to the smaller `q`.
pub fn optimize_qroam(k: u64, walk_cost: impl Fn(u64) -> u64) -> u64 {
    candidate_qs(k)
        .map(|q| (walk_cost(q), q))
        .min()
        .map(|(_, q)| q)
        .unwrap_or(1)
}

struct Plan {
    mu: u32,
    n_a: u32,
    n_degrees: Option<u64>,
    walk_calls: f64,
    multiplier: f64,
    extra_qubits: u64,
}

fn choose_q(k: u64, mode: QroamMode, n_system: u64, plan: &Plan, walk: &dyn Fn(u64) -> u64) -> Result<u64> {
    match mode {
        QroamMode::Qrom => Ok(1),
        QroamMode::OptimizeGates => Ok(optimize_qroam(k, walk)),
        QroamMode::Fixed(q) => {
            check_q(k, q)?;
            Ok(q)
        }
        QroamMode::OptimizeQubits { t_ceiling } => candidate_qs(k)
            .filter(|&q| plan.walk_calls * walk(q) as f64 * plan.multiplier <= t_ceiling)
            .map(|q| (qubit_count(n_system, k, plan.mu, q, plan.extra_qubits), q))
            .min()
            .map(|(_, q)| q)
            .ok_or_else(|| Error::Config(format!("no QROAM parameter meets the T-count ceiling {t_ceiling:e}"))),
    }
}

/// Cost from summary parameters (the published-triple mode).
///
/// QEVE needs `kappa_s`; without `alpha_eff` it uses `α`.
pub fn estimate_from_parameters(input: &CostInput, cfg: &BudgetConfig, method: Method) -> Result<CostReport> {
    cost_with_mu(input, cfg, method, None)
}

fn cost_with_mu(input: &CostInput, cfg: &BudgetConfig, method: Method, fixed_mu: Option<u32>) -> Result<CostReport> {
    cfg.validate()?;
    let k = input.n_terms;
    if k < 2 {
        return Err(Error::Validation(format!("at least two LCU terms are required, got {k}")));
    }
    if !(input.alpha > 0.0 && input.alpha.is_finite()) {
        return Err(Error::Validation(format!("one-norm must be positive, got {}", input.alpha)));
    }
    let eps = cfg.epsilon_total;
    let eps_phase = cfg.epsilon_phase();
    let (plan, walk): (Plan, Box<dyn Fn(u64) -> u64>) = match method {
        Method::Qubitization => {
            let mu = match fixed_mu {
                Some(mu) => mu,
                None => mu_qubitization(input.alpha, k, eps)?,
            };
            let n_a = qpe_ancillas(input.alpha, eps_phase, cfg.p_fail)?;
            let plan = Plan {
                mu,
                n_a,
                n_degrees: None,
                walk_calls: walk_calls_qpe(input.alpha, eps_phase)? as f64,
                multiplier: 1.0,
                extra_qubits: n_a as u64,
            };
            (plan, Box::new(move |q| walk_cost_qubitization(k, mu, q)))
        }
        Method::Qeve => {
            let kappa = input.kappa_s.ok_or_else(|| {
                Error::Config("QEVE needs the Jordan condition number kappa_S (supply it or run a dense analysis)".into())
            })?;
            if !(kappa >= 1.0 && kappa.is_finite()) {
                return Err(Error::Validation(format!("kappa_S must be at least 1, got {kappa}")));
            }
            let alpha_eff = input.alpha_eff.unwrap_or(input.alpha);
            let mu = match fixed_mu {
                Some(mu) => mu,
                None => mu_qeve(input.alpha, k, kappa, eps)?,
            };
            let (n_deg, n) = qeve_degree(alpha_eff, eps_phase)?;
            let plan = Plan {
                mu,
                n_a: n,
                n_degrees: Some(n_deg),
                walk_calls: qeve_walk_calls(n_deg, kappa),
                multiplier: cfg.repetition_factor,
                extra_qubits: n as u64 + 3,
            };
            (plan, Box::new(move |q| walk_cost_qeve(k, mu, q, n)))
        }
    };
    let q = choose_q(k, cfg.qroam_mode, input.n_system, &plan, &*walk)?;
    let t_per_call = walk(q);
    let t_total = plan.walk_calls * t_per_call as f64 * plan.multiplier;
    debug!("{method}: K={k} mu={} q={q} calls={:e} T/call={t_per_call}", plan.mu, plan.walk_calls);
    Ok(CostReport {
        method,
        n_terms: k,
        alpha: input.alpha,
        alpha_eff: match method {
            Method::Qeve => Some(input.alpha_eff.unwrap_or(input.alpha)),
            Method::Qubitization => None,
        },
        kappa_s: match method {
            Method::Qeve => input.kappa_s,
            Method::Qubitization => None,
        },
        mu: plan.mu,
        q,
        n_a: plan.n_a,
        n_degrees: plan.n_degrees,
        walk_calls: plan.walk_calls,
        t_per_call,
        t_total,
        logical_qubits: qubit_count(input.n_system, k, plan.mu, q, plan.extra_qubits),
        n_system: input.n_system,
        truncated_weight: None,
        config: *cfg,
    })
}

/// Overrides for [`estimate`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EstimateOverrides {
    pub kappa_s: Option<f64>,
    pub alpha_eff: Option<f64>,
}

/// Full pipeline on an LCU: choose `μ`, drop coefficients below `α·2^{−μ}`,
/// recount `K`, then cost. `κ_S` and `α_eff` come from the overrides first,
/// then from `report`; `α_eff` falls back to `α`.
pub fn estimate<T: Real>(
    lcu: &PauliLcu<T>,
    report: Option<&SpectralReport<T>>,
    cfg: &BudgetConfig,
    method: Method,
    overrides: EstimateOverrides,
) -> Result<CostReport> {
    cfg.validate()?;
    let alpha = lcu.alpha().to_f64_lossy();
    let k0 = lcu.len() as u64;
    if k0 < 2 {
        return Err(Error::Validation(format!("at least two LCU terms are required, got {k0}")));
    }
    let kappa_s = overrides.kappa_s.or(report.map(|r| r.kappa_s.to_f64_lossy()));
    let mu = match method {
        Method::Qubitization => mu_qubitization(alpha, k0, cfg.epsilon_total)?,
        Method::Qeve => {
            let kappa = kappa_s.ok_or_else(|| {
                Error::Config("QEVE needs kappa_S: pass --kappa-s or allow a dense analysis".into())
            })?;
            mu_qeve(alpha, k0, kappa, cfg.epsilon_total)?
        }
    };
    let trunc = lcu.truncate(mu);
    let alpha_eff = overrides.alpha_eff.or_else(|| {
        report.map(|r| effective_alpha(lcu.alpha(), Some(r.shifted_norm)).to_f64_lossy())
    });
    let input = CostInput {
        alpha,
        n_terms: trunc.lcu.len() as u64,
        n_system: lcu.n_qubits() as u64,
        kappa_s,
        alpha_eff,
    };
    let mut out = cost_with_mu(&input, cfg, method, Some(mu))?;
    out.truncated_weight = Some(trunc.dropped_weight.to_f64_lossy());
    Ok(out)
}
