use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tvl::interp::{self, Format, RunConfig, EXIT_ERROR, EXIT_OK};

#[derive(Parser)]
#[command(name = "tvl", version, about = "Exact truncated vector lattices on Q^n")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Execute .tvl scripts in order
    Run {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Run the full audit registry on random instances
    Fuzz {
        #[command(flatten)]
        opts: Opts,
    },
    /// Print scripts in canonical form
    Fmt {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
}

#[derive(Args)]
struct Opts {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    cases: usize,
    /// Bound on n for condition (b) searches
    #[arg(long, default_value_t = 64)]
    nmax: u64,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Print FAIL lines only
    #[arg(long)]
    quiet: bool,
}

impl Opts {
    fn config(self, inputs: Vec<PathBuf>) -> RunConfig {
        RunConfig {
            inputs,
            seed: self.seed,
            cases: self.cases,
            n_max: self.nmax,
            format: self.format,
            quiet: self.quiet,
        }
    }
}

fn fmt(inputs: &[PathBuf], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut code = EXIT_OK;
    for path in inputs {
        let result = std::fs::read_to_string(path)
            .map_err(|e| e.to_string())
            .and_then(|text| interp::format_script(&text).map_err(|e| e.to_string()));
        match result {
            Ok(canonical) => {
                if out.write_all(canonical.as_bytes()).is_err() {
                    return EXIT_ERROR;
                }
            }
            Err(e) => {
                let _ = writeln!(err, "{}: {e}", path.display());
                code = EXIT_ERROR;
            }
        }
    }
    code
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = io::stderr();
    let code = match cli.command {
        Cmd::Run { inputs, opts } => interp::run(&opts.config(inputs), &mut out, &mut err),
        Cmd::Fuzz { opts } => interp::run_fuzz(&opts.config(Vec::new()), &mut out, &mut err),
        Cmd::Fmt { inputs } => fmt(&inputs, &mut out, &mut err),
    };
    let flushed = out.flush().is_ok();
    ExitCode::from(if flushed { code as u8 } else { EXIT_ERROR as u8 })
}
