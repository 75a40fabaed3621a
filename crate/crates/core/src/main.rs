use std::process::ExitCode;

use clap::{Parser, Subcommand};
use opecalc::cli::{self, CommandOutput, Format, Options};

#[derive(Parser)]
#[command(name = "opecalc", version, about = "Exact OPE and vertex-algebra identity checker")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Weight cutoff, `4` or `(3,3)` for two-variable algebras.
    #[arg(long)]
    cutoff: Option<String>,
    /// Mode index box, `a..b` or `[a,b]`.
    #[arg(long)]
    indices: Option<String>,
    #[arg(long, default_value = "text")]
    format: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check this many sampled tuples instead of all of them.
    #[arg(long)]
    sample: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a catalog algebra or spec file.
    Verify {
        spec: String,
        #[command(flatten)]
        common: Common,
    },
    /// Singular part of the OPE of two fields.
    Ope {
        spec: String,
        a: String,
        b: String,
        #[command(flatten)]
        common: Common,
    },
    /// Graded dimensions up to the cutoff.
    Character {
        spec: String,
        #[command(flatten)]
        common: Common,
    },
    /// List the built-in algebras.
    Catalog,
}

fn options(common: Common) -> Result<Options, opecalc::Error> {
    Ok(Options {
        cutoff: common.cutoff,
        indices: common.indices,
        format: common.format.parse::<Format>()?,
        seed: common.seed,
        sample: common.sample,
    })
}

fn run(command: Command) -> CommandOutput {
    let with = |common: Common, f: &dyn Fn(&Options) -> CommandOutput| match options(common) {
        Ok(o) => f(&o),
        Err(e) => CommandOutput::error(&e),
    };
    match command {
        Command::Verify { spec, common } => with(common, &|o| cli::cmd_verify(&spec, o)),
        Command::Ope { spec, a, b, common } => with(common, &|o| cli::cmd_ope(&spec, &a, &b, o)),
        Command::Character { spec, common } => with(common, &|o| cli::cmd_character(&spec, o)),
        Command::Catalog => cli::cmd_catalog(),
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    if let Some(n) = std::env::var("OPECALC_THREADS").ok().and_then(|t| t.parse::<usize>().ok()) {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    let out = run(args.command);
    if out.code == 2 {
        eprint!("{}", out.text);
    } else {
        print!("{}", out.text);
    }
    ExitCode::from(out.code as u8)
}
