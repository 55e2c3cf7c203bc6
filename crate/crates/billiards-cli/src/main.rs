//! Command-line driver: runs searches and bound calculators from a TOML
//! experiment config and writes structured results.
//!
//! Exit codes: 0 when every requested count-versus-bound check passes
//! (or none was requested), 1 when a check fails, 2 on usage errors.

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use billiards::catalog::sphere_triple_complex;
use billiards::experiment::{self, BoundKind, ExperimentSpec, OutputFormat};
use billiards::homology::write_complex;

/// Environment variable holding the default output directory.
const OUT_ENV: &str = "BILLIARDS_OUT";

#[derive(Parser)]
#[command(
    name = "billiards",
    version,
    about = "Find periodic billiard trajectories and check them against topological lower bounds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the trajectory search only (no bound checks)
    Search(RunArgs),
    /// Evaluate the requested bounds only (no search)
    Bounds(RunArgs),
    /// Search, evaluate bounds, and cross-validate count >= bound
    Verify(RunArgs),
    /// Write the sphere-triple chain complex in the plain-text format
    ExportComplex {
        /// output directory (file `s2_triple_complex.txt`); stdout if absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// experiment config (TOML)
    #[arg(long)]
    config: PathBuf,
    /// override the search seed
    #[arg(long)]
    seed: Option<u64>,
    /// override the multistart count
    #[arg(long)]
    starts: Option<usize>,
    /// output directory (default: config, then $BILLIARDS_OUT)
    #[arg(long)]
    out: Option<PathBuf>,
    /// comma-separated bounds to evaluate (morse,torus,s2_complex,schubert,cubic,smith)
    #[arg(long, value_delimiter = ',')]
    bounds: Option<Vec<String>>,
    /// output format: csv | svg | json-like
    #[arg(long)]
    format: Option<String>,
}

enum Mode {
    Search,
    Bounds,
    Verify,
}

fn main() {
    let cli = Cli::parse();
    let code = match dispatch(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    };
    std::process::exit(code);
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Search(args) => run_experiment(args, Mode::Search),
        Command::Bounds(args) => run_experiment(args, Mode::Bounds),
        Command::Verify(args) => run_experiment(args, Mode::Verify),
        Command::ExportComplex { out } => export_complex(out),
    }
}

fn load_spec(args: &RunArgs, mode: &Mode) -> Result<ExperimentSpec, String> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| format!("cannot read {}: {e}", args.config.display()))?;
    let mut spec =
        ExperimentSpec::parse_toml(&text).map_err(|e| format!("{}: {e}", args.config.display()))?;

    if let Some(seed) = args.seed {
        match spec.search.as_mut() {
            Some(section) => section.seed = Some(seed),
            None => return Err("--seed given but the config has no [search] section".into()),
        }
    }
    if let Some(starts) = args.starts {
        match spec.search.as_mut() {
            Some(section) => section.starts = Some(starts),
            None => return Err("--starts given but the config has no [search] section".into()),
        }
    }
    if let Some(bounds) = &args.bounds {
        let parsed: Result<Vec<BoundKind>, String> =
            bounds.iter().map(|b| BoundKind::from_str(b)).collect();
        spec.bounds.requested = parsed?;
    }
    if let Some(format) = &args.format {
        spec.output.format = OutputFormat::from_str(format)?;
    }
    if let Some(out) = &args.out {
        spec.output.dir = Some(out.clone());
    } else if spec.output.dir.is_none() {
        if let Ok(dir) = std::env::var(OUT_ENV) {
            spec.output.dir = Some(PathBuf::from(dir));
        }
    }

    match mode {
        Mode::Search => spec.bounds.requested.clear(),
        Mode::Bounds => {
            if spec.bounds.p.is_none() {
                spec.bounds.p = spec.search.as_ref().map(|s| s.p);
            }
            spec.search = None;
        }
        Mode::Verify => {
            if spec.search.is_none() {
                return Err("verify needs a [search] section in the config".into());
            }
            if spec.bounds.requested.is_empty() {
                return Err("verify needs requested bounds (config [bounds] or --bounds)".into());
            }
        }
    }
    spec.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn run_experiment(args: RunArgs, mode: Mode) -> Result<i32, String> {
    let spec = load_spec(&args, &mode)?;
    let record = experiment::run(&spec).map_err(|e| e.to_string())?;

    if let Some(p) = record.p {
        println!("p = {p}");
    }
    if spec.search.is_some() {
        println!(
            "orbits: {} isolated, {} families ({} of {} starts converged, {} rejected at the diagonal)",
            record.isolated_count,
            record.family_count,
            record.starts_converged,
            record.starts_attempted,
            record.rejected_diagonal
        );
        for orbit in &record.orbits {
            let rotation =
                orbit.rotation_number.map(|r| format!(", rotation {r}")).unwrap_or_default();
            println!(
                "  length {:.9}  index {}{}  residual {:.2e}",
                orbit.length, orbit.morse_index, rotation, orbit.residual
            );
        }
        for family in &record.families {
            let rotation = family
                .representative
                .rotation_number
                .map(|r| format!(", rotation {r}"))
                .unwrap_or_default();
            println!(
                "  family: length {:.9}{}  null dim {}  ({} samples, max residual {:.2e})",
                family.representative.length,
                rotation,
                family.representative.null_dim,
                family.sample_count,
                family.sample_residual_max
            );
        }
    }
    for bound in &record.bounds {
        println!("bound {} = {}", bound.bound.name(), bound.value);
    }
    for check in &record.checks {
        println!(
            "check {}: count {} >= bound {} ... {}",
            check.bound.name(),
            check.isolated_count,
            check.value,
            if check.pass { "pass" } else { "FAIL" }
        );
    }
    if let Some(dir) = &spec.output.dir {
        println!("results written to {}", dir.display());
    }
    Ok(if record.all_checks_pass() { 0 } else { 1 })
}

fn export_complex(out: Option<PathBuf>) -> Result<i32, String> {
    let text = write_complex(&sphere_triple_complex());
    match out {
        Some(dir) => {
            std::fs::create_dir_all(&dir)
                .map_err(|e| format!("cannot create {}: {e}", dir.display()))?;
            let path = dir.join("s2_triple_complex.txt");
            std::fs::write(&path, text)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            println!("complex written to {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(0)
}
