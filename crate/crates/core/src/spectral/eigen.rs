use nalgebra::ComplexField;
use nalgebra::linalg::Schur;

use super::dense::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::{cplx, czero, Cplx, Real};

/// `M = S D S⁻¹` with unit-norm eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigendecomposition<T: Real> {
    /// Sorted by real part, then imaginary part.
    pub values: Vec<Cplx<T>>,
    /// Column `j` is the right eigenvector of `values[j]`.
    pub vectors: CMatrix<T>,
    /// The input was Hermitian within rounding and a unitary basis was used.
    pub hermitian: bool,
}

impl<T: Real> Eigendecomposition<T> {
    /// `‖S‖₂ ‖S⁻¹‖₂` of the eigenvector matrix.
    pub fn condition_number(&self) -> T {
        let sv = self.vectors.clone().singular_values();
        let max = sv.iter().copied().fold(T::zero(), |a, b| if b > a { b } else { a });
        let min = sv.iter().copied().fold(T::max_value().unwrap(), |a, b| if b < a { b } else { a });
        if min <= T::zero() {
            T::max_value().unwrap()
        } else {
            max / min
        }
    }
}

pub(crate) fn max_abs<T: Real>(m: &CMatrix<T>) -> T {
    m.iter().fold(T::zero(), |a, c| {
        let n = c.modulus();
        if n > a {
            n
        } else {
            a
        }
    })
}

pub fn is_hermitian<T: Real>(m: &CMatrix<T>, rel_tol: T) -> bool {
    let scale = T::one().max(max_abs(m));
    let n = m.nrows();
    for i in 0..n {
        for j in 0..=i {
            if (m[(i, j)] - m[(j, i)].conj()).modulus() > rel_tol * scale {
                return false;
            }
        }
    }
    true
}

/// Largest singular value.
pub fn spectral_norm<T: Real>(m: &CMatrix<T>) -> T {
    if m.is_empty() {
        return T::zero();
    }
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(T::zero(), |a, b| if b > a { b } else { a })
}

/// Smallest singular value.
pub fn min_singular_value<T: Real>(m: &CMatrix<T>) -> T {
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(T::max_value().unwrap(), |a, b| if b < a { b } else { a })
}

/// Full eigendecomposition of a square matrix.
///
/// Hermitian input goes through the Hermitian solver. Otherwise a complex
/// Schur form `M = Q T Q*` is computed and eigenvectors of `T` are found by
/// back substitution; components belonging to an (numerically) repeated
/// eigenvalue whose right-hand side vanishes are set to zero, which picks an
/// eigenvector from the degenerate eigenspace instead of amplifying rounding.
pub fn eigendecompose<T: Real>(m: &CMatrix<T>) -> Result<Eigendecomposition<T>> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::Validation("eigendecomposition needs a square matrix".into()));
    }
    if n == 0 {
        return Ok(Eigendecomposition {
            values: Vec::new(),
            vectors: CMatrix::zeros(0, 0),
            hermitian: true,
        });
    }
    if is_hermitian(m, T::lit(1e-13)) {
        let herm = (m + m.adjoint()) * cplx(T::lit(0.5), T::zero());
        let eig = herm.symmetric_eigen();
        let values: Vec<Cplx<T>> = eig.eigenvalues.iter().map(|&v| cplx(v, T::zero())).collect();
        return Ok(sorted(values, eig.eigenvectors, true));
    }

    let schur = Schur::try_new(m.clone(), T::default_epsilon(), 10_000 * n.max(10))
        .ok_or_else(|| Error::Numerical("Schur iteration did not converge".into()))?;
    let (q, t) = schur.unpack();
    let scale = T::one().max(max_abs(&t));
    for j in 0..n {
        for i in j + 1..n {
            if t[(i, j)].modulus() > T::lit(1e-10) * scale {
                return Err(Error::Numerical(format!(
                    "Schur factor is not triangular at ({i},{j})"
                )));
            }
        }
    }
    let cluster_tol = T::lit(1e-11) * scale;
    let tiny = T::epsilon() * scale;
    let mut v = CMatrix::<T>::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        v[(k, k)] = cplx(T::one(), T::zero());
        let mut col_norm = T::one();
        for j in (0..k).rev() {
            let mut rhs = czero::<T>();
            for l in j + 1..=k {
                rhs -= t[(j, l)] * v[(l, k)];
            }
            let denom = t[(j, j)] - lambda;
            let x = if denom.modulus() <= cluster_tol && rhs.modulus() <= cluster_tol * col_norm {
                czero()
            } else if denom.modulus() < tiny {
                rhs / cplx(tiny, T::zero())
            } else {
                rhs / denom
            };
            col_norm = col_norm.max(x.modulus());
            v[(j, k)] = x;
        }
    }
    let mut s = q * v;
    for mut col in s.column_iter_mut() {
        let norm = col.norm();
        if norm > T::zero() {
            col /= cplx(norm, T::zero());
        }
    }
    let values: Vec<Cplx<T>> = (0..n).map(|i| t[(i, i)]).collect();
    Ok(sorted(values, s, false))
}

fn sorted<T: Real>(values: Vec<Cplx<T>>, vectors: CMatrix<T>, hermitian: bool) -> Eigendecomposition<T> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (values[a], values[b]);
        x.re.partial_cmp(&y.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    let n = values.len();
    let mut out = CMatrix::<T>::zeros(n, n);
    for (new, &old) in order.iter().enumerate() {
        out.set_column(new, &vectors.column(old));
    }
    Eigendecomposition {
        values: order.iter().map(|&i| values[i]).collect(),
        vectors: out,
        hermitian,
    }
}
