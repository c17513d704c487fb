use nalgebra::DVector;

use crate::error::{Error, Result};
use crate::scalar::{cplx, czero, Cplx, Real};
use crate::spectral::{spectral_norm, CMatrix};

/// Slack allowed on the `‖h‖ ≤ 1/2` precondition.
pub const SCALED_NORM_SLACK: f64 = 1e-12;

/// Square matrix stored as `n_blocks × n_blocks` blocks of size `block_size`,
/// with nonzero blocks only on or below the block diagonal.
#[derive(Debug, Clone)]
pub struct BlockLowerTriangular<T: Real> {
    block_size: usize,
    /// `rows[i]` holds `(j, B_ij)` for `j ≤ i`, ascending in `j`.
    rows: Vec<Vec<(usize, CMatrix<T>)>>,
}

impl<T: Real> BlockLowerTriangular<T> {
    pub fn new(block_size: usize, n_blocks: usize) -> Self {
        Self {
            block_size,
            rows: vec![Vec::new(); n_blocks],
        }
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn n_blocks(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.block_size * self.rows.len()
    }

    /// Sets block `(i, j)`; `j ≤ i` is required.
    pub fn set(&mut self, i: usize, j: usize, block: CMatrix<T>) -> Result<()> {
        if j > i || i >= self.rows.len() {
            return Err(Error::Validation(format!("block ({i}, {j}) is outside the lower triangle")));
        }
        if block.nrows() != self.block_size || block.ncols() != self.block_size {
            return Err(Error::Validation("block has the wrong shape".into()));
        }
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => row[k].1 = block,
            Err(k) => row.insert(k, (j, block)),
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&CMatrix<T>> {
        self.rows
            .get(i)?
            .iter()
            .find(|(c, _)| *c == j)
            .map(|(_, b)| b)
    }

    pub fn to_dense(&self) -> CMatrix<T> {
        let d = self.block_size;
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, b) in row {
                m.view_mut((i * d, j * d), (d, d)).copy_from(b);
            }
        }
        m
    }

    pub fn mul_vec(&self, x: &DVector<Cplx<T>>) -> DVector<Cplx<T>> {
        let d = self.block_size;
        let mut y = DVector::from_element(self.dim(), czero());
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = DVector::from_element(d, czero());
            for (j, b) in row {
                acc += b * x.rows(j * d, d);
            }
            y.rows_mut(i * d, d).copy_from(&acc);
        }
        y
    }

    /// Solves `M x = b` by block forward substitution, factoring each
    /// diagonal block with partial-pivot LU.
    pub fn solve(&self, rhs: &DVector<Cplx<T>>) -> Result<DVector<Cplx<T>>> {
        let d = self.block_size;
        if rhs.len() != self.dim() {
            return Err(Error::Validation("right-hand side has the wrong length".into()));
        }
        let mut x = DVector::from_element(self.dim(), czero());
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: DVector<Cplx<T>> = rhs.rows(i * d, d).into_owned();
            let mut diag = None;
            for (j, b) in row {
                if *j == i {
                    diag = Some(b);
                } else {
                    acc -= b * x.rows(j * d, d);
                }
            }
            let diag = diag.ok_or(Error::SingularSystem { condition: f64::INFINITY })?;
            let sol = diag.clone().lu().solve(&acc).ok_or_else(|| Error::SingularSystem {
                condition: block_condition(diag),
            })?;
            if sol.iter().any(|c| !c.re.is_finite_value() || !c.im.is_finite_value()) {
                return Err(Error::SingularSystem {
                    condition: block_condition(diag),
                });
            }
            x.rows_mut(i * d, d).copy_from(&sol);
        }
        Ok(x)
    }
}

fn block_condition<T: Real>(m: &CMatrix<T>) -> f64 {
    let sv = m.clone().singular_values();
    let max = sv.iter().copied().fold(T::zero(), |a, b| a.max(b));
    let min = sv.iter().copied().fold(T::max_value().unwrap(), |a, b| a.min(b));
    if min > T::zero() {
        (max / min).to_f64_lossy()
    } else {
        f64::INFINITY
    }
}

/// Linear system whose solution is the Chebyshev history state.
///
/// `C = 1 − 2 L⊗h + L²⊗1` on `ℂ^N ⊗ ℂ^d`, where `L` is the `N×N` lower shift.
#[derive(Debug, Clone)]
pub struct ChebyshevSystem<T: Real> {
    n_degrees: usize,
    h_scaled: CMatrix<T>,
    h_norm: T,
    denominator: BlockLowerTriangular<T>,
}

impl<T: Real> ChebyshevSystem<T> {
    pub fn n_degrees(&self) -> usize {
        self.n_degrees
    }

    /// `log₂ N`.
    pub fn n_bits(&self) -> u32 {
        self.n_degrees.trailing_zeros()
    }

    pub fn dim(&self) -> usize {
        self.h_scaled.nrows()
    }

    pub fn h_scaled(&self) -> &CMatrix<T> {
        &self.h_scaled
    }

    /// `‖h‖₂`.
    pub fn h_norm(&self) -> T {
        self.h_norm
    }

    pub fn denominator(&self) -> &BlockLowerTriangular<T> {
        &self.denominator
    }

    /// The `N×N` lower shift `L` (ones on the first subdiagonal).
    pub fn shift(&self) -> CMatrix<T> {
        lower_shift(self.n_degrees)
    }

    /// Upper bound `1 + 2‖h‖‖L‖ + ‖L²‖` on `‖C‖`.
    pub fn norm_upper_bound(&self) -> T {
        let n = self.n_degrees;
        let l = if n >= 2 { T::one() } else { T::zero() };
        let l2 = if n >= 3 { T::one() } else { T::zero() };
        T::one() + T::lit(2.0) * self.h_norm * l + l2
    }

    /// Lower bound `max_v ‖C(e₀⊗v)‖/‖v‖ ≥ √2` for `N ≥ 3`, taken at the top
    /// right singular vector of `h`.
    pub fn norm_lower_bound(&self) -> T {
        let d = self.dim();
        let n = self.n_degrees;
        let mut v = DVector::from_element(d, czero());
        if d == 0 {
            return T::zero();
        }
        let svd = self.h_scaled.clone().svd(false, true);
        if let Some(vt) = svd.v_t {
            let k = svd
                .singular_values
                .iter()
                .enumerate()
                .fold((0, T::zero()), |(bk, bv), (k, &s)| if s > bv { (k, s) } else { (bk, bv) })
                .0;
            v = vt.row(k).adjoint();
        } else {
            v[0] = cplx(T::one(), T::zero());
        }
        let mut x = DVector::from_element(n * d, czero());
        x.rows_mut(0, d).copy_from(&v);
        self.denominator.mul_vec(&x).norm() / v.norm()
    }

    /// Dense `C`; for small systems only.
    pub fn denominator_dense(&self) -> CMatrix<T> {
        self.denominator.to_dense()
    }

    /// Singular values `(σ_max, σ_min)` of the dense `C`.
    pub fn denominator_extreme_singular_values(&self) -> (T, T) {
        let sv = self.denominator_dense().singular_values();
        let max = sv.iter().copied().fold(T::zero(), |a, b| a.max(b));
        let min = sv.iter().copied().fold(T::max_value().unwrap(), |a, b| a.min(b));
        (max, min)
    }
}

pub(crate) fn lower_shift<T: Real>(n: usize) -> CMatrix<T> {
    let mut l = CMatrix::zeros(n, n);
    for i in 1..n {
        l[(i, i - 1)] = cplx(T::one(), T::zero());
    }
    l
}

/// Assembles `C` for `h_scaled` and degree count `n_degrees` (a power of two).
///
/// Fails with [`Error::RescaleRequired`] if `‖h_scaled‖₂ > 1/2`.
pub fn build_system<T: Real>(h_scaled: &CMatrix<T>, n_degrees: usize) -> Result<ChebyshevSystem<T>> {
    let d = h_scaled.nrows();
    if h_scaled.ncols() != d || d == 0 {
        return Err(Error::Validation("scaled Hamiltonian must be a nonempty square matrix".into()));
    }
    if !n_degrees.is_power_of_two() {
        return Err(Error::Validation(format!("degree count {n_degrees} is not a power of two")));
    }
    let h_norm = spectral_norm(h_scaled);
    if !h_norm.is_finite_value() {
        return Err(Error::Validation("scaled Hamiltonian has non-finite entries".into()));
    }
    if h_norm > T::lit(0.5 + SCALED_NORM_SLACK) {
        return Err(Error::RescaleRequired {
            norm: h_norm.to_f64_lossy(),
        });
    }
    let eye = CMatrix::<T>::identity(d, d);
    let minus_two_h = h_scaled * cplx(T::lit(-2.0), T::zero());
    let mut c = BlockLowerTriangular::new(d, n_degrees);
    for i in 0..n_degrees {
        c.set(i, i, eye.clone())?;
        if i >= 1 {
            c.set(i, i - 1, minus_two_h.clone())?;
        }
        if i >= 2 {
            c.set(i, i - 2, eye.clone())?;
        }
    }
    let sys = ChebyshevSystem {
        n_degrees,
        h_scaled: h_scaled.clone(),
        h_norm,
        denominator: c,
    };
    let upper = sys.norm_upper_bound();
    if upper > T::lit(3.0) + T::lit(1e-10) {
        return Err(Error::Numerical(format!("‖C‖ bound {upper:e} exceeds 3")));
    }
    if n_degrees >= 3 {
        let lower = sys.norm_lower_bound();
        if lower < T::lit(2.0).sqrt() * (T::one() - T::lit(1e-10)) {
            return Err(Error::Numerical(format!("‖C‖ lower bound {lower:e} is below √2")));
        }
    }
    Ok(sys)
}
