use civar_core::io::{parse_input, run_command};
use clap::Parser;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "civar", version, about = "Support varieties and complete-intersection detection over finite fields")]
struct Cli {
    /// One of ci-check, koszul-homology, ext-kk, ext-module, support-variety,
    /// c-tilde-variety, proxy-witness, verify-witness, selftest.
    command: String,

    /// Job file with [ring], [module] and [params] sections.
    #[arg(long)]
    input: Option<PathBuf>,

    /// Truncation bound, overriding `N` in the job file.
    #[arg(long = "N", id = "N")]
    n: Option<usize>,

    /// Resolution window, overriding `smax` in the job file.
    #[arg(long)]
    smax: Option<usize>,

    #[arg(long, default_value = "degrevlex", value_parser = ["degrevlex"])]
    order: String,

    #[arg(long, conflicts_with = "text")]
    json: bool,

    #[arg(long)]
    text: bool,
}

const SELFTEST_INPUT: &str = "[ring]\nvars = x, y\nrelations = x^2, y^2\n";

fn run(cli: &Cli) -> civar_core::Result<String> {
    let text = match &cli.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| civar_core::Error::Io(format!("{}: {e}", path.display())))?,
        None if cli.command == "selftest" => SELFTEST_INPUT.to_string(),
        None => return Err(civar_core::Error::Io("--input is required".into())),
    };
    let mut job = parse_input(&text)?;
    job.command = Some(cli.command.clone());
    if cli.n.is_some() {
        job.params.n = cli.n;
    }
    if cli.smax.is_some() {
        job.params.smax = cli.smax;
    }
    let report = run_command(&job)?;
    Ok(if cli.text { report.to_text() } else { report.to_json() })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
