//! Command-line interface: spectra, reference-table reproduction,
//! wavefunction traces and method comparisons.

mod output;
mod run;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use cwkb_core::potentials::{ConfinedSystem, PotentialModel, UnitConvention};
use cwkb_core::reference::TableId;
use cwkb_core::wkb::Method;

#[derive(Parser)]
#[command(
    name = "cwkb",
    about = "Semiclassical and exact eigenvalues of radial potentials confined in a hard spherical box",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute eigenvalues for one state over one or more box radii.
    Spectrum(SpectrumArgs),
    /// Reproduce one of the reference tables I-V.
    Table(TableArgs),
    /// Emit a sampled wavefunction trace for one converged state.
    Wavefunction(WavefunctionArgs),
    /// Per-row deltas of both semiclassical methods against the exact solver.
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PotentialArg {
    Ho,
    Hydrogen,
    Hulthen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum UnitsArg {
    Atomic,
    Rydberg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Perturbative,
    Langer,
    Exact,
}

impl MethodArg {
    pub fn to_method(self) -> Method {
        match self {
            MethodArg::Perturbative => Method::Perturbative,
            MethodArg::Langer => Method::Langer,
            MethodArg::Exact => Method::Exact,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
struct ModelArgs {
    /// Potential model.
    #[arg(long, value_enum)]
    potential: PotentialArg,
    /// Screening parameter (Hulthen only).
    #[arg(long)]
    delta: Option<f64>,
    /// Unit convention; hydrogen defaults to rydberg, the others to atomic.
    #[arg(long, value_enum)]
    units: Option<UnitsArg>,
    /// Angular momentum quantum number.
    #[arg(long)]
    l: u32,
    /// Radial quantum number (number of interior nodes).
    #[arg(long)]
    nr: u32,
}

impl ModelArgs {
    fn model(&self) -> Result<PotentialModel> {
        if self.delta.is_some() && self.potential != PotentialArg::Hulthen {
            bail!("--delta only applies to the hulthen potential");
        }
        let mut model = match self.potential {
            PotentialArg::Ho => PotentialModel::harmonic_oscillator(),
            PotentialArg::Hydrogen => PotentialModel::hydrogen(),
            PotentialArg::Hulthen => {
                let Some(delta) = self.delta else {
                    bail!("--delta is required for the hulthen potential");
                };
                if !(delta > 0.0) {
                    bail!("--delta must be positive, got {delta}");
                }
                PotentialModel::hulthen(delta)
            }
        };
        if let Some(units) = self.units {
            model.units = match units {
                UnitsArg::Atomic => UnitConvention::atomic(),
                UnitsArg::Rydberg => UnitConvention::rydberg(),
            };
        }
        Ok(model)
    }

    fn system(&self, r0: f64) -> Result<ConfinedSystem> {
        self.model().and_then(|m| ConfinedSystem::new(m, self.l, r0).map_err(Into::into))
    }
}

#[derive(Args, Debug)]
struct SolverArgs {
    /// Numerov grid points for the exact solver.
    #[arg(long, default_value_t = 20_000)]
    grid_points: usize,
    /// Relative quadrature tolerance; CWKB_DEFAULT_TOL overrides the default.
    #[arg(long)]
    tol: Option<f64>,
}

impl SolverArgs {
    fn rel_tol(&self) -> f64 {
        self.tol
            .or_else(|| std::env::var("CWKB_DEFAULT_TOL").ok().and_then(|s| s.parse().ok()))
            .unwrap_or(cwkb_core::quadrature::DEFAULT_REL_TOL)
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Confinement radius; repeat for several boxes.
    #[arg(long, required = true)]
    r0: Vec<f64>,
    /// Methods to run; repeat for several.
    #[arg(long, value_enum, default_values_t = vec![MethodArg::Perturbative])]
    method: Vec<MethodArg>,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Table id: I, II, III, IV or V.
    #[arg(long)]
    id: String,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct WavefunctionArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    r0: f64,
    /// Sample count over (0, r0].
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, value_enum, default_value = "perturbative")]
    method: MethodArg,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// Table ids to compare; repeat for the union.
    #[arg(long, required = true)]
    id: Vec<String>,
    #[command(flatten)]
    solver: SolverArgs,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_table_id(s: &str) -> Result<TableId> {
    TableId::parse(s).ok_or_else(|| anyhow::anyhow!("unknown table id '{s}'; expected I..V"))
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            // a closed pipe on stdout is not a failure of the computation
            if e.downcast_ref::<std::io::Error>()
                .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
            {
                0
            } else {
                eprintln!("error: {e}");
                2
            }
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Spectrum(args) => {
            let mut r0s = args.r0.clone();
            if r0s.is_empty() {
                bail!("empty r0 list");
            }
            r0s.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for &r0 in &r0s {
                if !(r0 > 0.0) {
                    bail!("r0 must be positive, got {r0}");
                }
            }
            let rows = run::spectrum(&args.model, &r0s, &args.method, &args.solver)?;
            let ok = rows.iter().all(|r| r.error.is_none());
            output::write_spectrum(&rows, args.output.format, args.output.out.as_deref())?;
            Ok(ok)
        }
        Command::Table(args) => {
            let id = parse_table_id(&args.id)?;
            let rows = run::table(id, &args.solver)?;
            let ok = rows.iter().all(|r| r.error.is_none());
            output::write_table(id, &rows, args.output.format, args.output.out.as_deref())?;
            Ok(ok)
        }
        Command::Wavefunction(args) => {
            if args.samples == 0 {
                bail!("sample count must be positive");
            }
            if !(args.r0 > 0.0) {
                bail!("r0 must be positive, got {}", args.r0);
            }
            let trace =
                run::wavefunction(&args.model, args.r0, args.samples, args.method, &args.solver)?;
            output::write_wavefunction(&trace, args.output.format, args.output.out.as_deref())?;
            Ok(true)
        }
        Command::Compare(args) => {
            let ids: Vec<TableId> =
                args.id.iter().map(|s| parse_table_id(s)).collect::<Result<_>>()?;
            let report = run::compare(&ids, &args.solver)?;
            let ok = report.rows.iter().all(|r| r.error.is_none());
            output::write_compare(&report, args.output.format, args.output.out.as_deref())?;
            Ok(ok)
        }
    }
}
