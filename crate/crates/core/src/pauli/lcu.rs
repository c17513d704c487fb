use nalgebra::ComplexField;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::string::PauliString;
use crate::error::{Error, Result};
use crate::scalar::{czero, Cplx, Real};

/// Coefficients with magnitude at or below this (Hartree) are dropped when
/// terms are combined.
pub const COMBINE_ZERO_TOL: f64 = 1e-12;

/// One `b_j U_j` summand.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliTerm<T> {
    pub coeff: Cplx<T>,
    pub string: PauliString,
}

/// `H = b0 + Σ_j b_j U_j` with fully combined, non-identity Pauli strings.
///
/// Terms are sorted by string. `alpha` is the one-norm `Σ|b_j|`, which does
/// not include `b0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliLcu<T> {
    n_qubits: usize,
    b0: Cplx<T>,
    terms: Vec<PauliTerm<T>>,
    alpha: T,
}

/// Result of dropping small coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncation<T> {
    pub lcu: PauliLcu<T>,
    /// `Σ |b_i|` over the discarded terms.
    pub dropped_weight: T,
    pub dropped_terms: usize,
    /// `α · 2^{-μ}` of the input LCU.
    pub threshold: T,
}

/// Phase class of a single coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientPhase {
    Real,
    Imaginary,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RealityVerdict {
    Consistent,
    Inconsistent,
}

/// Per-term phase tags and the overall parity verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealityReport {
    pub verdict: RealityVerdict,
    pub tags: Vec<CoefficientPhase>,
    /// Every coefficient is real (the operator is Hermitian).
    pub all_real: bool,
}

impl<T: Real> PauliLcu<T> {
    /// Combines `terms`, folds identity strings into `b0` and drops
    /// coefficients with `|c| <= zero_tol`.
    pub fn from_terms<I>(n_qubits: usize, b0: Cplx<T>, terms: I, zero_tol: T) -> Result<Self>
    where
        I: IntoIterator<Item = (Cplx<T>, PauliString)>,
    {
        let mut acc: HashMap<PauliString, Cplx<T>> = HashMap::new();
        let mut b0 = b0;
        for (c, s) in terms {
            if s.n_qubits() != n_qubits {
                return Err(Error::Validation(format!(
                    "term {s} acts on {} qubits, LCU has {n_qubits}",
                    s.n_qubits()
                )));
            }
            if s.is_identity() {
                b0 += c;
            } else {
                *acc.entry(s).or_insert_with(czero) += c;
            }
        }
        Ok(Self::from_accumulator(n_qubits, b0, acc, zero_tol))
    }

    pub(crate) fn from_accumulator(
        n_qubits: usize,
        b0: Cplx<T>,
        acc: HashMap<PauliString, Cplx<T>>,
        zero_tol: T,
    ) -> Self {
        let mut terms: Vec<PauliTerm<T>> = acc
            .into_iter()
            .filter(|(s, c)| !s.is_identity() && c.modulus() > zero_tol)
            .map(|(string, coeff)| PauliTerm { coeff, string })
            .collect();
        terms.sort_by_key(|t| t.string);
        Self::from_sorted(n_qubits, b0, terms)
    }

    fn from_sorted(n_qubits: usize, b0: Cplx<T>, terms: Vec<PauliTerm<T>>) -> Self {
        let alpha = terms.iter().fold(T::zero(), |a, t| a + t.coeff.modulus());
        Self {
            n_qubits,
            b0,
            terms,
            alpha,
        }
    }

    /// Operator `b0·I` with no terms.
    pub fn constant(n_qubits: usize, b0: Cplx<T>) -> Self {
        Self::from_sorted(n_qubits, b0, Vec::new())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn b0(&self) -> Cplx<T> {
        self.b0
    }

    pub fn terms(&self) -> &[PauliTerm<T>] {
        &self.terms
    }

    /// Number of terms `K`.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    /// Same operator with a different identity coefficient.
    pub fn with_b0(&self, b0: Cplx<T>) -> Self {
        Self {
            b0,
            ..self.clone()
        }
    }

    /// Keeps exactly the terms with `|b_i| / α >= 2^{-μ}`.
    pub fn truncate(&self, mu: u32) -> Truncation<T> {
        let threshold = self.alpha * T::lit(0.5f64.powi(mu as i32));
        let mut dropped_weight = T::zero();
        let mut kept = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mag = t.coeff.modulus();
            if mag >= threshold {
                kept.push(*t);
            } else {
                dropped_weight += mag;
            }
        }
        let dropped_terms = self.terms.len() - kept.len();
        Truncation {
            lcu: Self::from_sorted(self.n_qubits, self.b0, kept),
            dropped_weight,
            dropped_terms,
            threshold,
        }
    }

    /// Checks that even-Y terms are real and odd-Y terms imaginary, with
    /// tolerance `1e-10·α`.
    pub fn classify_reality(&self) -> RealityReport {
        let tol = T::lit(1e-10) * self.alpha;
        let mut consistent = true;
        let mut all_real = true;
        let tags = self
            .terms
            .iter()
            .map(|t| {
                let re_zero = t.coeff.re.abs() <= tol;
                let im_zero = t.coeff.im.abs() <= tol;
                let tag = if im_zero {
                    CoefficientPhase::Real
                } else if re_zero {
                    CoefficientPhase::Imaginary
                } else {
                    CoefficientPhase::Complex
                };
                let expected = if t.string.y_count() % 2 == 0 {
                    CoefficientPhase::Real
                } else {
                    CoefficientPhase::Imaginary
                };
                consistent &= tag == expected;
                all_real &= tag == CoefficientPhase::Real;
                tag
            })
            .collect();
        RealityReport {
            verdict: if consistent {
                RealityVerdict::Consistent
            } else {
                RealityVerdict::Inconsistent
            },
            tags,
            all_real,
        }
    }

    /// Text dump: header `n_qubits b0_re b0_im`, then `re im WORD` per term.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.n_qubits, self.b0.re, self.b0.im);
        for t in &self.terms {
            let _ = writeln!(out, "{} {} {}", t.coeff.re, t.coeff.im, t.string);
        }
        out
    }

    pub fn from_dump(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let parse = |tok: &str, line: usize| -> Result<T> {
            tok.parse::<T>().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid number '{tok}'"),
            })
        };
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty LCU dump".into(),
        })?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 {
            return Err(Error::Parse {
                line: hline,
                msg: "header must be 'n_qubits b0_re b0_im'".into(),
            });
        }
        let n_qubits: usize = h[0].parse().map_err(|_| Error::Parse {
            line: hline,
            msg: format!("invalid qubit count '{}'", h[0]),
        })?;
        let b0 = Cplx::new(parse(h[1], hline)?, parse(h[2], hline)?);
        let mut terms = Vec::new();
        for (line, l) in lines {
            let t: Vec<&str> = l.split_whitespace().collect();
            if t.len() != 3 {
                return Err(Error::Parse {
                    line,
                    msg: "term must be 're im WORD'".into(),
                });
            }
            let string: PauliString = t[2].parse().map_err(|e: Error| Error::Parse {
                line,
                msg: e.to_string(),
            })?;
            if string.n_qubits() != n_qubits {
                return Err(Error::Parse {
                    line,
                    msg: format!("word has {} letters, expected {n_qubits}", string.n_qubits()),
                });
            }
            terms.push((Cplx::new(parse(t[0], line)?, parse(t[1], line)?), string));
        }
        Self::from_terms(n_qubits, b0, terms, T::zero())
    }

    pub fn save_dump(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_dump()).map_err(|e| Error::io(path, e))
    }

    pub fn load_dump(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_dump(&text)
    }
}
