use serde::{Deserialize, Serialize};

use super::chebyshev::pell_identity_residual;
use super::system::ChebyshevSystem;
use crate::error::{Error, Result};
use crate::scalar::{cplx, Real};
use crate::spectral::{spectral_norm, CMatrix};

/// Largest `N·d` for which `C` is densified to measure its singular values.
pub const MAX_DENSE_BOUND_DIM: usize = 2048;

/// Grid size for the Pell identity check.
pub const IDENTITY_GRID_POINTS: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct BoundCheck<T> {
    pub name: String,
    pub value: T,
    pub limit: T,
    /// `value ≤ limit` (or `≥` for lower bounds).
    pub lower_bound: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Real", deserialize = "T: Real"))]
pub struct BoundTable<T> {
    pub n_degrees: usize,
    pub kappa_s: T,
    pub checks: Vec<BoundCheck<T>>,
}

impl<T: Real> BoundTable<T> {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn get(&self, name: &str) -> Option<&BoundCheck<T>> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Converts the first failing check into [`Error::BoundViolated`].
    pub fn into_result(self) -> Result<Self> {
        match self.checks.iter().find(|c| !c.holds) {
            None => Ok(self),
            Some(c) => Err(Error::BoundViolated(format!(
                "{}: {:e} vs limit {:e}",
                c.name, c.value, c.limit
            ))),
        }
    }
}

fn upper<T: Real>(name: &str, value: T, limit: T, slack: T) -> BoundCheck<T> {
    BoundCheck {
        name: name.into(),
        value,
        limit,
        lower_bound: false,
        holds: value <= limit + slack,
    }
}

/// `max_{j<N} ‖U_j(h)‖₂`.
pub fn max_u_norm<T: Real>(h: &CMatrix<T>, n_degrees: usize) -> T {
    let d = h.nrows();
    let two = cplx(T::lit(2.0), T::zero());
    let mut prev = CMatrix::<T>::identity(d, d);
    let mut worst = T::one();
    if n_degrees < 2 {
        return worst;
    }
    let mut cur = h * two;
    worst = worst.max(spectral_norm(&cur));
    for _ in 2..n_degrees {
        let next = (h * &cur) * two - &prev;
        worst = worst.max(spectral_norm(&next));
        prev = cur;
        cur = next;
    }
    worst
}

/// Numerically checks the norm bounds behind the QEVE query count:
///
/// * `T_n² − (x² − 1)U_{n−1}² = 1` on a grid, `1 ≤ n ≤ N`;
/// * `‖C/4‖ ≤ 3/4` and, for `N ≥ 3`, `‖C‖ ≥ √2`;
/// * `max_{j<N} ‖U_j(h)‖ ≤ √(8/3)·κ_S`;
/// * `‖C⁻¹‖ ≤ N·√(8/3)·κ_S`.
pub fn verify_bounds<T: Real>(sys: &ChebyshevSystem<T>, kappa_s: T) -> Result<BoundTable<T>> {
    let n = sys.n_degrees();
    let dim = n * sys.dim();
    if dim > MAX_DENSE_BOUND_DIM {
        return Err(Error::Capacity {
            what: "dense bound check dimension",
            requested: dim,
            cap: MAX_DENSE_BOUND_DIM,
        });
    }
    let slack = T::lit(1e-10);
    let alpha_u = (T::lit(8.0) / T::lit(3.0)).sqrt() * kappa_s;
    let mut checks = Vec::new();
    let residual: T = pell_identity_residual(n, IDENTITY_GRID_POINTS);
    checks.push(upper("chebyshev_identity_residual", residual, T::lit(1e-12), T::zero()));
    let (c_max, c_min) = sys.denominator_extreme_singular_values();
    checks.push(upper("norm_C_over_4", c_max / T::lit(4.0), T::lit(0.75), slack));
    if n >= 3 {
        let limit = T::lit(2.0).sqrt();
        checks.push(BoundCheck {
            name: "norm_C".into(),
            value: c_max,
            limit,
            lower_bound: true,
            holds: c_max >= limit - slack,
        });
    }
    let u = max_u_norm(sys.h_scaled(), n);
    checks.push(upper("max_norm_U", u, alpha_u, slack * alpha_u));
    let inv = if c_min > T::zero() { T::one() / c_min } else { T::max_value().unwrap() };
    let inv_limit = T::from_count(n) * alpha_u;
    checks.push(upper("norm_C_inverse", inv, inv_limit, slack * inv_limit));
    Ok(BoundTable {
        n_degrees: n,
        kappa_s,
        checks,
    })
}
