use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use tsgeom_cli::{load_manifest, run_command, Command, Format};

/// Exact verification of trans-Sasakian structures, curvature identities and
/// invariant submanifolds described by a manifest.
#[derive(Parser)]
#[command(name = "tsgeom", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Manifest file (TOML).
    #[arg(long, global = true, env = "TSGEOM_MANIFEST")]
    manifest: Option<String>,

    /// Also write the machine-readable report to this file.
    #[arg(long, global = true)]
    out: Option<String>,

    /// Format of the report on standard output.
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,

    /// Seed for the pointwise cross-checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Cmd {
    /// Almost-contact axioms, alpha and beta, and the covariant-derivative identities.
    StructureCheck,
    /// Riemann, Ricci and scalar curvature with their symmetry checks.
    Curvature,
    /// Curvature identities of a trans-Sasakian manifold.
    Prop1,
    /// Second fundamental form, invariance and Gauss equation of a distribution.
    SubmanifoldReport { name: String },
    /// Evaluate one Tachibana theorem (2..=9) on a distribution.
    Theorem { n: u8, name: String },
    /// Everything above for every distribution.
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(path) = cli.manifest else {
        eprintln!("error: no manifest given (use --manifest or TSGEOM_MANIFEST)");
        return ExitCode::from(2);
    };
    let manifest = match load_manifest(&path) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            return ExitCode::from(2);
        }
    };
    let cmd = match cli.command {
        Cmd::StructureCheck => Command::StructureCheck,
        Cmd::Curvature => Command::Curvature,
        Cmd::Prop1 => Command::Prop1,
        Cmd::SubmanifoldReport { name } => Command::SubmanifoldReport(name),
        Cmd::Theorem { n, name } => Command::Theorem(n, name),
        Cmd::All => Command::All,
    };
    let seed = cli.seed.or(manifest.options.seed).unwrap_or(0);
    let format = match cli.format {
        Some(FormatArg::Human) => Format::Human,
        Some(FormatArg::Machine) => Format::Machine,
        None => manifest.options.format.unwrap_or_default(),
    };
    let report = match run_command(&cmd, &manifest, seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match format {
        Format::Human => print!("{}", report.to_human()),
        Format::Machine => println!("{}", report.to_json()),
    }
    if let Some(out) = cli.out {
        if let Err(e) = std::fs::write(&out, report.to_json() + "\n") {
            eprintln!("error: cannot write {out}: {e}");
            return ExitCode::from(2);
        }
    }
    if report.has_failures() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
