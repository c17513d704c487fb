//! JSON, CSV and text renderings of command results.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use tcqeve_core::cost::tables::{outcomes_to_csv, rows_to_csv, rows_to_text, ComparisonRow, ManifestOutcome};
use tcqeve_core::cost::CostReport;
use tcqeve_core::integrals::SpinOrbitalHamiltonian;
use tcqeve_core::pauli::{PauliLcu, RealityVerdict};
use tcqeve_core::qeve::Simulation;
use tcqeve_core::spectral::SpectralReport;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// A result in all three formats.
pub struct Rendered {
    json: Value,
    csv: String,
    text: String,
}

impl Rendered {
    pub fn render(self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
            Format::Csv => self.csv,
            Format::Text => self.text,
        })
    }
}

fn to_value<S: Serialize>(v: &S) -> Value {
    serde_json::to_value(v).expect("result types serialize to JSON")
}

/// Header plus one row.
fn csv_row(header: &[&str], row: &[String]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    w.write_record(row).expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

/// `key: value` lines, keys padded to a common width.
fn key_values(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in pairs {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn hamiltonian_summary(ham: &SpinOrbitalHamiltonian<f64>) -> Rendered {
    let pairs = [
        ("source", ham.source_label().to_string()),
        ("n_spatial", ham.n_spatial().to_string()),
        ("n_spin_orbitals", ham.n_spin_orbitals().to_string()),
        ("core_energy", format!("{}", ham.core_energy())),
        ("hermitian_form", ham.is_hermitian_form().to_string()),
        ("has_K", ham.k_tensor().is_some().to_string()),
        ("has_G", ham.g_tensor().is_some().to_string()),
    ];
    let header: Vec<&str> = pairs.iter().map(|(k, _)| *k).collect();
    let row: Vec<String> = pairs.iter().map(|(_, v)| v.clone()).collect();
    Rendered {
        json: json!({
            "source": ham.source_label(),
            "n_spatial": ham.n_spatial(),
            "n_spin_orbitals": ham.n_spin_orbitals(),
            "core_energy": ham.core_energy(),
            "hermitian_form": ham.is_hermitian_form(),
            "has_K": ham.k_tensor().is_some(),
            "has_G": ham.g_tensor().is_some(),
        }),
        csv: csv_row(&header, &row),
        text: key_values(&pairs),
    }
}

pub fn lcu_summary(lcu: &PauliLcu<f64>) -> Rendered {
    let reality = lcu.classify_reality();
    let consistent = reality.verdict == RealityVerdict::Consistent;
    let verdict = match (consistent, reality.all_real) {
        (true, true) => "consistent, all-real",
        (true, false) => "consistent",
        (false, _) => "inconsistent",
    };
    let b0 = lcu.b0();
    let pairs = [
        ("n_qubits", lcu.n_qubits().to_string()),
        ("K", lcu.len().to_string()),
        ("alpha", format!("{}", lcu.alpha())),
        ("b0_re", format!("{}", b0.re)),
        ("b0_im", format!("{}", b0.im)),
        ("verdict", verdict.to_string()),
    ];
    let header: Vec<&str> = pairs.iter().map(|(k, _)| *k).collect();
    let row: Vec<String> = pairs.iter().map(|(_, v)| v.clone()).collect();
    Rendered {
        json: json!({
            "n_qubits": lcu.n_qubits(),
            "K": lcu.len(),
            "alpha": lcu.alpha(),
            "b0": [b0.re, b0.im],
            "verdict": reality.verdict,
            "all_real": reality.all_real,
        }),
        csv: csv_row(&header, &row),
        text: key_values(&pairs),
    }
}

pub fn spectral(r: &SpectralReport<f64>) -> Rendered {
    let mut csv = String::from("index,re,im\n");
    for (i, e) in r.eigenvalues.iter().enumerate() {
        let _ = writeln!(csv, "{i},{},{}", e.re, e.im);
    }
    let mut text = key_values(&[
        ("dimension", r.dimension.to_string()),
        ("sector", opt(r.sector)),
        ("ground_energy", format!("{:.12}", r.ground_energy)),
        ("kappa_S", format!("{:.6}", r.kappa_s)),
        ("max_imag", format!("{:.3e}", r.max_imag)),
        ("spectral_norm", format!("{:.6}", r.spectral_norm)),
        ("shifted_norm", format!("{:.6}", r.shifted_norm)),
        ("hermitian", r.hermitian.to_string()),
        ("diagonalizable", r.diagonalizable.to_string()),
        ("near_defective", r.near_defective.to_string()),
    ]);
    text.push_str("eigenvalues:\n");
    for e in &r.eigenvalues {
        let _ = writeln!(text, "  {:+.12} {:+.3e}i", e.re, e.im);
    }
    Rendered {
        json: to_value(r),
        csv,
        text,
    }
}

const COST_HEADER: [&str; 16] = [
    "method",
    "K",
    "alpha",
    "alpha_eff",
    "kappa_S",
    "mu",
    "q",
    "n_a",
    "N",
    "walk_calls",
    "t_per_call",
    "t_total",
    "logical_qubits",
    "n_system",
    "truncated_weight",
    "epsilon",
];

pub fn cost(r: &CostReport) -> Rendered {
    let row = [
        r.method.to_string(),
        r.n_terms.to_string(),
        r.alpha.to_string(),
        opt(r.alpha_eff),
        opt(r.kappa_s),
        r.mu.to_string(),
        r.q.to_string(),
        r.n_a.to_string(),
        opt(r.n_degrees),
        format!("{:.6e}", r.walk_calls),
        r.t_per_call.to_string(),
        format!("{:.6e}", r.t_total),
        r.logical_qubits.to_string(),
        r.n_system.to_string(),
        opt(r.truncated_weight),
        r.config.epsilon_total.to_string(),
    ];
    let pairs: Vec<(&str, String)> = COST_HEADER.iter().copied().zip(row.iter().cloned()).collect();
    Rendered {
        json: to_value(r),
        csv: csv_row(&COST_HEADER, &row),
        text: key_values(&pairs),
    }
}

pub fn simulation(s: &Simulation<f64>) -> Rendered {
    let r = &s.result;
    let header = [
        "N",
        "alpha_eff",
        "kappa_S",
        "angle_error",
        "energy_error",
        "mass_within_5_over_N",
        "estimated_energy",
        "true_energy",
        "initial_state",
        "ground_overlap",
    ];
    let row = [
        r.n_degrees.to_string(),
        r.alpha_eff.to_string(),
        r.kappa_s.to_string(),
        format!("{:.6e}", r.angle_error),
        format!("{:.6e}", r.energy_error),
        format!("{:.6}", r.mass_within_5_over_n),
        format!("{:.12}", r.estimated_energy),
        format!("{:.12}", r.true_energy),
        s.initial_state.to_string(),
        format!("{:.6}", s.ground_overlap),
    ];
    let pairs: Vec<(&str, String)> = header.iter().copied().zip(row.iter().cloned()).collect();
    Rendered {
        json: to_value(s),
        csv: csv_row(&header, &row),
        text: key_values(&pairs),
    }
}

pub fn comparison(rows: &[ComparisonRow]) -> Rendered {
    Rendered {
        json: to_value(&rows),
        csv: rows_to_csv(rows).expect("in-memory csv"),
        text: rows_to_text(rows),
    }
}

pub fn manifest(outcomes: &[ManifestOutcome]) -> Rendered {
    let csv = outcomes_to_csv(outcomes).expect("in-memory csv");
    Rendered {
        json: to_value(&outcomes),
        text: align_csv(&csv),
        csv,
    }
}

/// Space-padded columns from CSV text.
fn align_csv(csv_text: &str) -> String {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(csv_text.as_bytes());
    let rows: Vec<Vec<String>> = rdr
        .records()
        .filter_map(|r| r.ok())
        .map(|r| r.iter().map(str::to_string).collect())
        .collect();
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(String::len).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in &rows {
        let line: Vec<String> = r.iter().enumerate().map(|(i, v)| format!("{v:<w$}", w = widths[i])).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}
