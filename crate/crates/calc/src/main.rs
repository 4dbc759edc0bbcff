use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use arthur_calc::props::{self, Config, Scale};
use arthur_calc::runner::{has_errors, render_text};
use arthur_calc::{parse, render_all, run, RunOptions};
use arthur_core::exms::DEFAULT_MAX_STATES;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "arthur-calc", version, about = "Run and check extended multi-segment scripts")]
struct Cli {
    /// Print result documents as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Bound on the states visited by reorder searches.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    /// Seed of the randomized property suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a script (`-` reads standard input).
    Run { file: PathBuf },
    /// Run a script and compare its JSON output with the expected file.
    Check {
        file: PathBuf,
        /// Expected output; defaults to the script path with extension `.json`.
        #[arg(long)]
        expected: Option<PathBuf>,
        /// Overwrite the expected file with the current output.
        #[arg(long)]
        bless: bool,
    },
    /// Run the randomized and exhaustive property suites.
    Props {
        /// Use the full acceptance sizes instead of the quick ones.
        #[arg(long)]
        full: bool,
        /// Run only these criteria (1-13).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("checking standard input needs --expected")]
    NoExpected,
}

fn read_source(path: &Path) -> Result<String, CliError> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|source| CliError::Read { path: path.display().to_string(), source })?;
    Ok(s)
}

fn first_difference(a: &str, b: &str) -> String {
    for (i, (x, y)) in a.lines().zip(b.lines()).enumerate() {
        if x != y {
            return format!("line {}:\n  expected: {x}\n  actual:   {y}", i + 1);
        }
    }
    format!("lengths differ: expected {} lines, actual {}", a.lines().count(), b.lines().count())
}

fn main_inner(cli: Cli) -> Result<bool, CliError> {
    let opts = RunOptions { max_states: cli.max_states };
    match cli.command {
        Cmd::Run { file } => {
            let docs = run(&parse(&read_source(&file)?), &opts);
            if cli.json {
                print!("{}", render_all(&docs));
            } else {
                print!("{}", render_text(&docs));
            }
            Ok(!has_errors(&docs))
        }
        Cmd::Check { file, expected, bless } => {
            let expected = match expected {
                Some(p) => p,
                None if file == Path::new("-") => return Err(CliError::NoExpected),
                None => file.with_extension("json"),
            };
            let actual = render_all(&run(&parse(&read_source(&file)?), &opts));
            if bless {
                std::fs::write(&expected, &actual)
                    .map_err(|source| CliError::Write { path: expected.display().to_string(), source })?;
                println!("blessed {}", expected.display());
                return Ok(true);
            }
            let want = read_source(&expected)?;
            if want == actual {
                println!("ok {}", file.display());
                Ok(true)
            } else {
                println!("mismatch {}: {}", file.display(), first_difference(&want, &actual));
                Ok(false)
            }
        }
        Cmd::Props { full, only } => {
            let scale = if full { Scale::Full } else { Scale::Quick };
            let cfg = Config { seed: cli.seed, scale, max_states: cli.max_states };
            let mut all_ok = true;
            for id in props::CRITERIA {
                if !only.is_empty() && !only.contains(&id) {
                    continue;
                }
                let r = props::run_criterion(id, &cfg);
                all_ok &= r.passed();
                if cli.json {
                    println!("{}", serde_json::to_string(&r).expect("reports serialize"));
                } else {
                    println!("{r}");
                }
            }
            Ok(all_ok)
        }
    }
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("arthur-calc: {e}");
            ExitCode::from(2)
        }
    }
}
