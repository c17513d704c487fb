//! Second-quantized integral data and its on-disk formats.
//!
//! Tensors are stored densely over spatial orbitals in row-major order and
//! hold the coefficients of
//!
//! ```text
//! H = E_core + Σ h_pq a†_pσ a_qσ
//!            + Σ (V_pqrs − K_pqrs) a†_pσ a†_qτ a_sτ a_rσ
//!            + Σ G_pqrsuv a†_pσ a†_qτ a†_rκ a_vκ a_uτ a_sσ
//! ```
//!
//! exactly as written: no implicit 1/2 or 1/6 prefactors. Two text formats are
//! read:
//!
//! * `fcidump`: a conventional Hermitian FCIDUMP in chemists' notation
//!   `(pq|rs)` with eightfold permutational symmetry. Records are expanded by
//!   symmetry and converted to `V_pqrs = ½ (pr|qs)`.
//! * `fcidump-tc`: every tensor entry explicit, in the index order of the
//!   expression above, with `K`-suffixed two-body records and an `&TC`
//!   section of six-index three-body records. This is the format written by
//!   [`save_hamiltonian`].

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Absolute tolerance (Hartree) on h/V symmetry for Hermitian input.
pub const HERMITIAN_SYMMETRY_TOL: f64 = 1e-10;

/// Integral file flavour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HamiltonianFormat {
    /// Hermitian chemists'-notation FCIDUMP with symmetry expansion.
    Fcidump,
    /// Explicit-index format with optional `K` records and `&TC` section.
    FcidumpTc,
}

impl FromStr for HamiltonianFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fcidump" => Ok(Self::Fcidump),
            "fcidump-tc" | "fcidump_tc" | "tc" => Ok(Self::FcidumpTc),
            other => Err(Error::Config(format!("unknown Hamiltonian format '{other}'"))),
        }
    }
}

/// Integral tensors of a (possibly transcorrelated) electronic Hamiltonian.
///
/// Immutable once built; all-zero optional tensors are normalized to `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinOrbitalHamiltonian<T> {
    n_spatial: usize,
    core_energy: T,
    h: Vec<T>,
    v: Vec<T>,
    k: Option<Vec<T>>,
    g: Option<Vec<T>>,
    source_label: String,
}

#[inline]
fn idx2(n: usize, p: usize, q: usize) -> usize {
    p * n + q
}

#[inline]
fn idx4(n: usize, p: usize, q: usize, r: usize, s: usize) -> usize {
    ((p * n + q) * n + r) * n + s
}

#[inline]
#[allow(clippy::too_many_arguments)]
fn idx6(n: usize, p: usize, q: usize, r: usize, s: usize, u: usize, v: usize) -> usize {
    ((((p * n + q) * n + r) * n + s) * n + u) * n + v
}

impl<T: Real> SpinOrbitalHamiltonian<T> {
    /// Validating constructor. Tensors are row-major with lengths n², n⁴, n⁴, n⁶.
    pub fn new(
        n_spatial: usize,
        core_energy: T,
        h: Vec<T>,
        v: Vec<T>,
        k: Option<Vec<T>>,
        g: Option<Vec<T>>,
        source_label: impl Into<String>,
    ) -> Result<Self> {
        let n = n_spatial;
        let expect = |name: &str, len: usize, want: usize| -> Result<()> {
            if len != want {
                Err(Error::Validation(format!(
                    "{name} has {len} entries, expected {want} for {n} spatial orbitals"
                )))
            } else {
                Ok(())
            }
        };
        expect("h", h.len(), n.pow(2))?;
        expect("V", v.len(), n.pow(4))?;
        if let Some(k) = &k {
            expect("K", k.len(), n.pow(4))?;
        }
        if let Some(g) = &g {
            expect("G", g.len(), n.pow(6))?;
        }
        if !core_energy.is_finite_value() {
            return Err(Error::Validation("core energy is not finite".into()));
        }
        for (name, t) in [("h", Some(&h)), ("V", Some(&v)), ("K", k.as_ref()), ("G", g.as_ref())] {
            if let Some(t) = t {
                if let Some(pos) = t.iter().position(|x| !x.is_finite_value()) {
                    return Err(Error::Validation(format!("{name}[{pos}] is not finite")));
                }
            }
        }
        let nonzero = |t: Vec<T>| t.iter().any(|x| *x != T::zero()).then_some(t);
        let ham = Self {
            n_spatial,
            core_energy,
            h,
            v,
            k: k.and_then(nonzero),
            g: g.and_then(nonzero),
            source_label: source_label.into(),
        };
        if ham.is_hermitian_form() {
            if let Some(msg) = ham.hermitian_symmetry_violation(T::lit(HERMITIAN_SYMMETRY_TOL)) {
                return Err(Error::Validation(msg));
            }
        }
        Ok(ham)
    }

    /// Hamiltonian with every tensor zero.
    pub fn zeros(n_spatial: usize) -> Self {
        Self {
            n_spatial,
            core_energy: T::zero(),
            h: vec![T::zero(); n_spatial.pow(2)],
            v: vec![T::zero(); n_spatial.pow(4)],
            k: None,
            g: None,
            source_label: String::new(),
        }
    }

    pub fn n_spatial(&self) -> usize {
        self.n_spatial
    }

    pub fn n_spin_orbitals(&self) -> usize {
        2 * self.n_spatial
    }

    pub fn core_energy(&self) -> T {
        self.core_energy
    }

    pub fn source_label(&self) -> &str {
        &self.source_label
    }

    pub fn with_source_label(mut self, label: impl Into<String>) -> Self {
        self.source_label = label.into();
        self
    }

    /// `true` when neither `K` nor `G` is present.
    pub fn is_hermitian_form(&self) -> bool {
        self.k.is_none() && self.g.is_none()
    }

    pub fn h(&self, p: usize, q: usize) -> T {
        self.h[idx2(self.n_spatial, p, q)]
    }

    pub fn v(&self, p: usize, q: usize, r: usize, s: usize) -> T {
        self.v[idx4(self.n_spatial, p, q, r, s)]
    }

    pub fn k(&self, p: usize, q: usize, r: usize, s: usize) -> Option<T> {
        self.k.as_ref().map(|k| k[idx4(self.n_spatial, p, q, r, s)])
    }

    #[allow(clippy::too_many_arguments)]
    pub fn g(&self, p: usize, q: usize, r: usize, s: usize, u: usize, v: usize) -> Option<T> {
        self.g
            .as_ref()
            .map(|g| g[idx6(self.n_spatial, p, q, r, s, u, v)])
    }

    pub fn h_tensor(&self) -> &[T] {
        &self.h
    }

    pub fn v_tensor(&self) -> &[T] {
        &self.v
    }

    pub fn k_tensor(&self) -> Option<&[T]> {
        self.k.as_deref()
    }

    pub fn g_tensor(&self) -> Option<&[T]> {
        self.g.as_deref()
    }

    /// Coefficient of the two-body operator: `V − K`.
    pub fn two_body(&self, p: usize, q: usize, r: usize, s: usize) -> T {
        let i = idx4(self.n_spatial, p, q, r, s);
        match &self.k {
            Some(k) => self.v[i] - k[i],
            None => self.v[i],
        }
    }

    /// Describes the first h/V symmetry violation above `tol`, if any.
    ///
    /// V is checked against the eightfold symmetry of real physicists'-notation
    /// integrals `⟨pq|rs⟩`.
    pub fn hermitian_symmetry_violation(&self, tol: T) -> Option<String> {
        let n = self.n_spatial;
        for p in 0..n {
            for q in 0..p {
                let d = (self.h(p, q) - self.h(q, p)).abs();
                if d > tol {
                    return Some(format!(
                        "h is not symmetric: |h[{p}][{q}] - h[{q}][{p}]| = {d:e}"
                    ));
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let x = self.v(p, q, r, s);
                        for (a, b, c, d) in physicist_images(p, q, r, s) {
                            let diff = (x - self.v(a, b, c, d)).abs();
                            if diff > tol {
                                return Some(format!(
                                    "V violates eightfold symmetry at ({p},{q},{r},{s}) vs ({a},{b},{c},{d}): {diff:e}"
                                ));
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

fn physicist_images(p: usize, q: usize, r: usize, s: usize) -> [(usize, usize, usize, usize); 8] {
    [
        (p, q, r, s),
        (q, p, s, r),
        (r, s, p, q),
        (s, r, q, p),
        (r, q, p, s),
        (p, s, r, q),
        (s, p, q, r),
        (q, r, s, p),
    ]
}

fn chemist_images(p: usize, q: usize, r: usize, s: usize) -> [(usize, usize, usize, usize); 8] {
    [
        (p, q, r, s),
        (q, p, r, s),
        (p, q, s, r),
        (q, p, s, r),
        (r, s, p, q),
        (s, r, p, q),
        (r, s, q, p),
        (s, r, q, p),
    ]
}

/// Reads a Hamiltonian file.
pub fn load_hamiltonian<T: Real>(
    path: impl AsRef<Path>,
    format: HamiltonianFormat,
) -> Result<SpinOrbitalHamiltonian<T>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let ham = parse_hamiltonian(&text, format)?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    Ok(ham.with_source_label(label))
}

/// Writes `ham` in the `fcidump-tc` format.
pub fn save_hamiltonian<T: Real>(ham: &SpinOrbitalHamiltonian<T>, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_fcidump_tc(ham)).map_err(|e| Error::io(path, e))
}

/// Renders `ham` in the `fcidump-tc` format. Only nonzero entries are written.
pub fn to_fcidump_tc<T: Real>(ham: &SpinOrbitalHamiltonian<T>) -> String {
    let n = ham.n_spatial;
    let mut out = String::new();
    let _ = writeln!(out, "&FCI NORB={} CORE={}", n, ham.core_energy);
    for p in 0..n {
        for q in 0..n {
            let x = ham.h(p, q);
            if x != T::zero() {
                let _ = writeln!(out, "{} {} {} 0 0", x, p + 1, q + 1);
            }
        }
    }
    let four = |out: &mut String, t: &[T], suffix: &str| {
        for (i, x) in t.iter().enumerate() {
            if *x != T::zero() {
                let (p, q, r, s) = (i / n.pow(3), (i / n.pow(2)) % n, (i / n) % n, i % n);
                let _ = writeln!(out, "{} {} {} {} {}{}", x, p + 1, q + 1, r + 1, s + 1, suffix);
            }
        }
    };
    four(&mut out, &ham.v, "");
    if let Some(k) = &ham.k {
        four(&mut out, k, " K");
    }
    if let Some(g) = &ham.g {
        out.push_str("&TC\n");
        for (i, x) in g.iter().enumerate() {
            if *x != T::zero() {
                let mut rem = i;
                let mut ix = [0usize; 6];
                for slot in ix.iter_mut().rev() {
                    *slot = rem % n + 1;
                    rem /= n;
                }
                let _ = writeln!(
                    out,
                    "{} {} {} {} {} {} {}",
                    x, ix[0], ix[1], ix[2], ix[3], ix[4], ix[5]
                );
            }
        }
    }
    out
}

struct Header {
    norb: usize,
    core: Option<String>,
}

fn parse_header(lines: &[(usize, &str)]) -> Result<(Header, usize)> {
    let Some(&(first_no, first)) = lines.first() else {
        return Err(Error::Parse {
            line: 1,
            msg: "empty file".into(),
        });
    };
    if !first.trim_start().to_ascii_uppercase().starts_with("&FCI") {
        return Err(Error::Parse {
            line: first_no,
            msg: "expected '&FCI' header".into(),
        });
    }
    let mut norb = None;
    let mut core = None;
    let mut consumed = 0;
    for &(_, line) in lines {
        let t = line.trim();
        let is_header = consumed == 0 || t.starts_with('&') || t.starts_with('/') || t.contains('=');
        if !is_header || t.eq_ignore_ascii_case("&TC") {
            break;
        }
        consumed += 1;
        let body = t.trim_start_matches("&FCI").trim_start_matches("&fci");
        // KEY=VALUE pairs, separated by whitespace and/or commas.
        let mut key: Option<String> = None;
        for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
            if let Some((k, v)) = tok.split_once('=') {
                key = Some(k.to_ascii_uppercase());
                if !v.is_empty() {
                    assign(&mut norb, &mut core, key.as_deref(), v);
                    key = None;
                }
            } else if let Some(k) = key.take() {
                assign(&mut norb, &mut core, Some(&k), tok);
            }
        }
        if t.eq_ignore_ascii_case("&END") || t == "/" || t.to_ascii_uppercase().ends_with("&END") {
            break;
        }
    }
    let norb = norb.ok_or(Error::Parse {
        line: first_no,
        msg: "header lacks NORB".into(),
    })?;
    let norb = norb.parse::<usize>().map_err(|_| Error::Parse {
        line: first_no,
        msg: format!("invalid NORB value '{norb}'"),
    })?;
    Ok((Header { norb, core }, consumed))
}

fn assign(norb: &mut Option<String>, core: &mut Option<String>, key: Option<&str>, value: &str) {
    match key {
        Some("NORB") => *norb = Some(value.to_string()),
        Some("CORE") => *core = Some(value.to_string()),
        _ => {}
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Slot {
    H(usize),
    V(usize),
    K(usize),
    G(usize),
    Core,
}

struct Filler<T> {
    values: HashMap<Slot, T>,
    explicit: HashMap<Slot, usize>,
}

impl<T: Real> Filler<T> {
    fn explicit(&mut self, slot: Slot, value: T, line: usize) -> Result<()> {
        if let Some(prev) = self.explicit.insert(slot, line) {
            return Err(Error::Validation(format!(
                "line {line}: duplicate entry (first given on line {prev})"
            )));
        }
        self.image(slot, value, line)
    }

    fn image(&mut self, slot: Slot, value: T, line: usize) -> Result<()> {
        match self.values.get(&slot) {
            Some(prev) if (*prev - value).abs() > T::lit(HERMITIAN_SYMMETRY_TOL) => {
                Err(Error::Validation(format!(
                    "line {line}: symmetry violation, value {value} conflicts with {prev} implied by an earlier record"
                )))
            }
            Some(_) => Ok(()),
            None => {
                self.values.insert(slot, value);
                Ok(())
            }
        }
    }
}

/// Parses the text of a Hamiltonian file.
pub fn parse_hamiltonian<T: Real>(text: &str, format: HamiltonianFormat) -> Result<SpinOrbitalHamiltonian<T>> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let (header, consumed) = parse_header(&lines)?;
    let n = header.norb;
    let parse_value = |tok: &str, line: usize| -> Result<T> {
        let v = tok.parse::<T>().map_err(|_| Error::Parse {
            line,
            msg: format!("invalid number '{tok}'"),
        })?;
        if !v.is_finite_value() {
            return Err(Error::Validation(format!("line {line}: non-finite value '{tok}'")));
        }
        Ok(v)
    };
    let mut fill = Filler::<T> {
        values: HashMap::new(),
        explicit: HashMap::new(),
    };
    let core_line = lines.first().map(|l| l.0).unwrap_or(1);
    if let Some(core) = &header.core {
        let c = parse_value(core, core_line)?;
        fill.explicit(Slot::Core, c, core_line)?;
    }
    let mut in_tc = false;
    let mut saw_k = false;
    for &(line, raw) in &lines[consumed..] {
        let t = raw.trim();
        if t.eq_ignore_ascii_case("&TC") {
            if format == HamiltonianFormat::Fcidump {
                return Err(Error::Parse {
                    line,
                    msg: "'&TC' section is not allowed in the Hermitian fcidump format".into(),
                });
            }
            if in_tc {
                return Err(Error::Parse {
                    line,
                    msg: "repeated '&TC' sentinel".into(),
                });
            }
            in_tc = true;
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        let value = parse_value(toks[0], line)?;
        let is_k = toks.len() == 6 && toks[5].eq_ignore_ascii_case("K");
        let n_idx = if is_k { 4 } else { toks.len() - 1 };
        let expected = if in_tc { 6 } else { 4 };
        if n_idx != expected || (in_tc && is_k) {
            return Err(Error::Parse {
                line,
                msg: format!(
                    "expected a value followed by {expected} indices{}, found {} tokens",
                    if in_tc { "" } else { " (optionally suffixed by K)" },
                    toks.len()
                ),
            });
        }
        let mut idx = [0usize; 6];
        for (slot, tok) in idx.iter_mut().zip(&toks[1..=n_idx]) {
            *slot = tok.parse::<usize>().map_err(|_| Error::Parse {
                line,
                msg: format!("invalid orbital index '{tok}'"),
            })?;
            if *slot > n {
                return Err(Error::Validation(format!(
                    "line {line}: orbital index {slot} out of range for NORB={n}"
                )));
            }
        }
        if in_tc {
            if idx.contains(&0) {
                return Err(Error::Validation(format!(
                    "line {line}: three-body indices are 1-based and must be nonzero"
                )));
            }
            let [p, q, r, s, u, v] = idx.map(|i| i - 1);
            fill.explicit(Slot::G(idx6(n, p, q, r, s, u, v)), value, line)?;
            continue;
        }
        if is_k {
            if format == HamiltonianFormat::Fcidump {
                return Err(Error::Parse {
                    line,
                    msg: "K records are not allowed in the Hermitian fcidump format".into(),
                });
            }
            if idx[..4].contains(&0) {
                return Err(Error::Validation(format!(
                    "line {line}: K indices are 1-based and must be nonzero"
                )));
            }
            saw_k = true;
            let [p, q, r, s] = [idx[0] - 1, idx[1] - 1, idx[2] - 1, idx[3] - 1];
            fill.explicit(Slot::K(idx4(n, p, q, r, s)), value, line)?;
            continue;
        }
        let [a, b, c, d] = [idx[0], idx[1], idx[2], idx[3]];
        match (a > 0, b > 0, c > 0, d > 0) {
            (false, false, false, false) => fill.explicit(Slot::Core, value, line)?,
            (true, true, false, false) => {
                let (p, q) = (a - 1, b - 1);
                fill.explicit(Slot::H(idx2(n, p, q)), value, line)?;
                if format == HamiltonianFormat::Fcidump {
                    fill.image(Slot::H(idx2(n, q, p)), value, line)?;
                }
            }
            (true, true, true, true) => {
                let (p, q, r, s) = (a - 1, b - 1, c - 1, d - 1);
                match format {
                    HamiltonianFormat::FcidumpTc => {
                        fill.explicit(Slot::V(idx4(n, p, q, r, s)), value, line)?;
                    }
                    HamiltonianFormat::Fcidump => {
                        // (pq|rs) = ⟨pr|qs⟩; the stored coefficient carries the ½.
                        let half = value * T::lit(0.5);
                        let mut first = true;
                        for (i, j, k, l) in chemist_images(p, q, r, s) {
                            let slot = Slot::V(idx4(n, i, k, j, l));
                            if first {
                                fill.explicit(slot, half, line)?;
                                first = false;
                            } else {
                                fill.image(slot, half, line)?;
                            }
                        }
                    }
                }
            }
            _ => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unsupported index pattern {a} {b} {c} {d}"),
                })
            }
        }
    }

    let mut core = T::zero();
    let mut h = vec![T::zero(); n.pow(2)];
    let mut v = vec![T::zero(); n.pow(4)];
    let mut k = saw_k.then(|| vec![T::zero(); n.pow(4)]);
    let mut g = in_tc.then(|| vec![T::zero(); n.pow(6)]);
    for (slot, value) in fill.values {
        match slot {
            Slot::Core => core = value,
            Slot::H(i) => h[i] = value,
            Slot::V(i) => v[i] = value,
            Slot::K(i) => k.as_mut().expect("K slot implies K tensor")[i] = value,
            Slot::G(i) => g.as_mut().expect("G slot implies G tensor")[i] = value,
        }
    }
    SpinOrbitalHamiltonian::new(n, core, h, v, k, g, String::new())
}
