//! `tcqeve`: Pauli mapping, dense spectra, resource estimates and QEVE
//! simulations for (transcorrelated) electronic Hamiltonians.

// `!(x > 0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use tcqeve_core::cost::tables::{
    process_manifest, published_for_label, reproduce_published, ManifestOptions, QeveSetting,
};
use tcqeve_core::cost::{
    estimate, estimate_from_parameters, BudgetConfig, CostInput, EstimateOverrides, Method, QroamMode,
};
use tcqeve_core::integrals::{load_hamiltonian, HamiltonianFormat};
use tcqeve_core::pauli::{jordan_wigner_with, JwConfig, PauliLcu};
use tcqeve_core::qeve::{simulate_qeve, SimulationOptions};
use tcqeve_core::spectral::{analyze, DenseCaps};
use tcqeve_core::Error;

use output::{Format, Rendered};

#[derive(Parser, Debug)]
#[command(name = "tcqeve", version, about = "Resource estimates and QEVE checks for transcorrelated Hamiltonians")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Qubit cap for dense matrices.
    #[arg(long, env = "TCQEVE_MAX_QUBITS", global = true)]
    max_qubits: Option<usize>,

    /// Format of Hamiltonian input files.
    #[arg(long, value_enum, default_value_t = InputFormat::FcidumpTc, global = true)]
    input_format: InputFormat,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Summarize a Hamiltonian or LCU file.
    Inspect { input: PathBuf },
    /// Jordan-Wigner map to a Pauli LCU.
    Map {
        input: PathBuf,
        /// Write the LCU as a text dump.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Dense eigendecomposition and Jordan condition number.
    Diagonalize {
        input: PathBuf,
        #[command(flatten)]
        sector: SectorArg,
    },
    /// T-gate and logical-qubit estimate.
    Estimate(EstimateArgs),
    /// Classical simulation of QEVE on the dense operator.
    SimulateQeve {
        input: PathBuf,
        #[command(flatten)]
        sector: SectorArg,
        /// Total error budget, Hartree.
        #[arg(long, default_value_t = 0.0016)]
        epsilon: f64,
        /// Fraction of the budget given to the Chebyshev degree.
        #[arg(long, default_value_t = 0.5)]
        split: f64,
        #[arg(long)]
        alpha_eff: Option<f64>,
        /// Basis state index used as the initial state.
        #[arg(long)]
        initial_state: Option<u64>,
    },
    /// Computed-vs-published cost tables.
    ReproduceTables(TablesArgs),
}

#[derive(Args, Debug)]
struct SectorArg {
    /// Restrict to states with this many electrons.
    #[arg(long)]
    sector: Option<usize>,
}

#[derive(Args, Debug, Clone)]
struct BudgetArgs {
    /// Total error budget, Hartree.
    #[arg(long, default_value_t = 0.0016)]
    epsilon: f64,
    /// Fraction of the budget given to phase estimation.
    #[arg(long, default_value_t = 0.5)]
    split: f64,
    /// qrom, optimize-gates, optimize-qubits:<T ceiling> or q=<2^k>.
    #[arg(long, default_value = "qrom")]
    qroam: String,
}

impl BudgetArgs {
    fn config(&self, repetition_factor: f64) -> anyhow::Result<BudgetConfig> {
        let qroam_mode: QroamMode = self.qroam.parse()?;
        let cfg = BudgetConfig {
            epsilon_total: self.epsilon,
            split: self.split,
            repetition_factor,
            qroam_mode,
            ..BudgetConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Args, Debug)]
struct EstimateArgs {
    /// Hamiltonian or LCU file. Omit to cost published or explicit parameters.
    input: Option<PathBuf>,
    #[arg(long, default_value = "qubitization")]
    method: String,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, default_value_t = 2.0)]
    repetition_factor: f64,
    #[arg(long)]
    kappa_s: Option<f64>,
    #[arg(long)]
    alpha_eff: Option<f64>,
    #[command(flatten)]
    sector: SectorArg,
    /// Published entry such as `Li/cc-pVDZ` or `Be/TC`.
    #[arg(long, conflicts_with = "input")]
    published: Option<String>,
    /// One-norm, when costing explicit parameters.
    #[arg(long, conflicts_with_all = ["input", "published"], requires_all = ["terms", "n_system"])]
    alpha: Option<f64>,
    /// Number of LCU terms, when costing explicit parameters.
    #[arg(long)]
    terms: Option<u64>,
    /// System qubits, when costing explicit parameters.
    #[arg(long)]
    n_system: Option<u64>,
}

#[derive(Args, Debug)]
struct TablesArgs {
    /// CSV manifest: label, alpha, K, kappa_S, n_system, path.
    #[arg(long)]
    manifest: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
    #[arg(long, default_value_t = 1.0)]
    repetition_factor: f64,
    /// QEVE rows use `alpha_eff = multiplier * alpha`.
    #[arg(long, default_value_t = 1.0)]
    alpha_eff_multiplier: f64,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum InputFormat {
    Fcidump,
    FcidumpTc,
    /// Text LCU dump written by `map --dump`.
    Lcu,
}

/// Error caused by the invocation rather than by the program.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(UsageError(msg.into()))
}

struct Session {
    caps: DenseCaps,
    jw: JwConfig,
    input_format: InputFormat,
}

impl Session {
    fn new(cli: &Cli) -> Self {
        let mut caps = DenseCaps::default();
        if let Some(q) = cli.max_qubits {
            caps.max_qubits_full = q;
            caps.max_qubits_sector = q;
        }
        Self {
            caps,
            jw: JwConfig::default(),
            input_format: cli.input_format,
        }
    }

    fn load_lcu(&self, path: &Path) -> anyhow::Result<PauliLcu<f64>> {
        check_exists(path)?;
        let lcu = match self.input_format {
            InputFormat::Lcu => PauliLcu::load_dump(path)?,
            InputFormat::Fcidump => jordan_wigner_with(&load_hamiltonian(path, HamiltonianFormat::Fcidump)?, &self.jw)?,
            InputFormat::FcidumpTc => {
                jordan_wigner_with(&load_hamiltonian(path, HamiltonianFormat::FcidumpTc)?, &self.jw)?
            }
        };
        info!("{}: {} qubits, {} terms", path.display(), lcu.n_qubits(), lcu.len());
        Ok(lcu)
    }
}

fn check_exists(path: &Path) -> anyhow::Result<()> {
    if path.exists() {
        Ok(())
    } else {
        Err(usage(format!("input file {} does not exist", path.display())))
    }
}

fn run(cli: &Cli) -> anyhow::Result<Rendered> {
    let ctx = Session::new(cli);
    match &cli.command {
        Command::Inspect { input } => inspect(&ctx, input),
        Command::Map { input, dump } => {
            let lcu = ctx.load_lcu(input)?;
            if let Some(p) = dump {
                lcu.save_dump(p)?;
            }
            Ok(output::lcu_summary(&lcu))
        }
        Command::Diagonalize { input, sector } => {
            let lcu = ctx.load_lcu(input)?;
            Ok(output::spectral(&analyze(&lcu, sector.sector, &ctx.caps)?))
        }
        Command::Estimate(args) => run_estimate(&ctx, args),
        Command::SimulateQeve {
            input,
            sector,
            epsilon,
            split,
            alpha_eff,
            initial_state,
        } => {
            let lcu = ctx.load_lcu(input)?;
            let opts = SimulationOptions {
                sector: sector.sector,
                caps: ctx.caps,
                epsilon: *epsilon,
                split: *split,
                alpha_eff: *alpha_eff,
                initial_state: *initial_state,
                ..SimulationOptions::default()
            };
            Ok(output::simulation(&simulate_qeve(&lcu, &opts)?))
        }
        Command::ReproduceTables(args) => run_tables(&ctx, args),
    }
}

fn inspect(ctx: &Session, input: &Path) -> anyhow::Result<Rendered> {
    check_exists(input)?;
    let format = match ctx.input_format {
        InputFormat::Lcu => {
            let lcu = PauliLcu::<f64>::load_dump(input)?;
            return Ok(output::lcu_summary(&lcu));
        }
        InputFormat::Fcidump => HamiltonianFormat::Fcidump,
        InputFormat::FcidumpTc => HamiltonianFormat::FcidumpTc,
    };
    let ham = load_hamiltonian::<f64>(input, format)?;
    Ok(output::hamiltonian_summary(&ham))
}

fn run_estimate(ctx: &Session, args: &EstimateArgs) -> anyhow::Result<Rendered> {
    let method: Method = args.method.parse()?;
    let cfg = args.budget.config(args.repetition_factor)?;
    if let Some(k) = args.kappa_s {
        if !(k >= 1.0) {
            return Err(usage("--kappa-s must be at least 1"));
        }
    }
    if let Some(a) = args.alpha_eff {
        if !(a > 0.0) {
            return Err(usage("--alpha-eff must be positive"));
        }
    }
    if let Some(path) = &args.input {
        let lcu = ctx.load_lcu(path)?;
        let needs_report = method == Method::Qeve && (args.kappa_s.is_none() || args.alpha_eff.is_none());
        let report = if needs_report {
            match analyze(&lcu, args.sector.sector, &ctx.caps) {
                Ok(r) => Some(r),
                Err(e @ Error::Capacity { .. }) if args.kappa_s.is_none() => {
                    return Err(usage(format!(
                        "QEVE needs kappa_S and the dense analysis is not possible ({e}); pass --kappa-s"
                    )));
                }
                Err(Error::Capacity { .. }) => None,
                Err(e) => return Err(e.into()),
            }
        } else {
            None
        };
        let overrides = EstimateOverrides {
            kappa_s: args.kappa_s,
            alpha_eff: args.alpha_eff,
        };
        return Ok(output::cost(&estimate(&lcu, report.as_ref(), &cfg, method, overrides)?));
    }
    let input = if let Some(label) = &args.published {
        let e = published_for_label(label)
            .ok_or_else(|| usage(format!("no published entry named {label:?} (try e.g. Li/cc-pVDZ or Be/TC)")))?;
        CostInput {
            alpha: e.alpha,
            n_terms: e.n_terms,
            n_system: e.basis.n_system(),
            kappa_s: args.kappa_s.or(e.kappa_s),
            alpha_eff: args.alpha_eff,
        }
    } else if let (Some(alpha), Some(terms), Some(n_system)) = (args.alpha, args.terms, args.n_system) {
        CostInput {
            alpha,
            n_terms: terms,
            n_system,
            kappa_s: args.kappa_s,
            alpha_eff: args.alpha_eff,
        }
    } else {
        return Err(usage("estimate needs an input file, --published <label>, or --alpha/--terms/--n-system"));
    };
    if method == Method::Qeve && input.kappa_s.is_none() {
        return Err(usage("QEVE needs kappa_S: pass --kappa-s"));
    }
    Ok(output::cost(&estimate_from_parameters(&input, &cfg, method)?))
}

fn run_tables(ctx: &Session, args: &TablesArgs) -> anyhow::Result<Rendered> {
    let cfg = args.budget.config(args.repetition_factor)?;
    if !(args.alpha_eff_multiplier > 0.0) {
        return Err(usage("--alpha-eff-multiplier must be positive"));
    }
    match &args.manifest {
        None => {
            let setting = QeveSetting {
                repetition_factor: args.repetition_factor,
                alpha_eff_multiplier: args.alpha_eff_multiplier,
            };
            Ok(output::comparison(&reproduce_published(cfg.epsilon_total, setting)?))
        }
        Some(path) => {
            check_exists(path)?;
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let format = match ctx.input_format {
                InputFormat::Fcidump => HamiltonianFormat::Fcidump,
                InputFormat::FcidumpTc => HamiltonianFormat::FcidumpTc,
                InputFormat::Lcu => return Err(usage("manifest paths must be Hamiltonian files")),
            };
            let opts = ManifestOptions {
                budget: cfg,
                qeve_alpha_eff_multiplier: args.alpha_eff_multiplier,
                format,
                jw: ctx.jw,
                caps: ctx.caps,
                base_dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
            };
            Ok(output::manifest(&process_manifest(&text, &opts)))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(e) if e.is_user_error() => 2,
        Some(_) => 1,
        None if err.downcast_ref::<std::io::Error>().is_some() => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = run(&cli).and_then(|r| {
        let text = r.render(cli.format)?;
        match &cli.out {
            Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("writing {}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
