use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use surfsym::candidates::CaseId;
use surfsym::classifier::{detect, DetectOptions};
use surfsym::Error;
use surfsym_cli::{parse_input, render};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Only {
    Direct,
    Opposite,
}

/// Finds the involutive symmetries of a polynomially parametrized surface.
///
/// The input holds three lines `x = <expr>`, `y = <expr>`, `z = <expr>` in
/// the parameters `t` and `s`.
#[derive(Parser, Debug)]
#[command(name = "surfsym", version)]
struct Args {
    /// Input file; reads stdin when absent or `-`.
    input: Option<PathBuf>,
    /// Seed for the reparametrization used when the origin is not a regular point.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Decimal digits for algebraic values.
    #[arg(long, default_value_t = 12)]
    digits: u32,
    /// Only look for direct or only for opposite involutions.
    #[arg(long, value_enum)]
    only: Option<Only>,
    /// Run a single case, e.g. `D1-`.
    #[arg(long, value_parser = parse_case, allow_hyphen_values = true)]
    case: Option<CaseId>,
    /// Print the report as JSON.
    #[arg(long)]
    json: bool,
    /// Write each case's polynomial system to `<dir>/<case>.txt`.
    #[arg(long, value_name = "DIR")]
    dump_systems: Option<PathBuf>,
    /// Print per-stage wall times to stderr.
    #[arg(long)]
    time: bool,
}

fn parse_case(s: &str) -> Result<CaseId, String> {
    s.parse()
}

fn read_input(path: &Option<PathBuf>) -> std::io::Result<String> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let text = match read_input(&args.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read input: {}", e);
            return ExitCode::from(2);
        }
    };
    let spec = match parse_input(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
    };
    let opts = DetectOptions {
        seed: args.seed,
        digits: args.digits,
        only: args.only.map(|o| if o == Only::Direct { 1 } else { -1 }),
        case: args.case,
        keep_systems: args.dump_systems.is_some(),
    };
    let report = match detect(&spec.parametrization(), &opts) {
        Ok(r) => r,
        Err(e @ (Error::PlaneInput | Error::DegenerateSurface | Error::RetriesExhausted)) => {
            eprintln!("error: {}", e);
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {}", e);
            return ExitCode::from(1);
        }
    };
    if let Some(dir) = &args.dump_systems {
        if let Err(e) = std::fs::create_dir_all(dir) {
            eprintln!("error: cannot create {}: {}", dir.display(), e);
            return ExitCode::from(1);
        }
        for d in &report.diagnostics {
            let Some(sys) = &d.system else { continue };
            let path = dir.join(format!("{}.txt", d.case));
            if let Err(e) = std::fs::write(&path, sys.dump()) {
                eprintln!("error: cannot write {}: {}", path.display(), e);
                return ExitCode::from(1);
            }
        }
    }
    if args.time {
        eprint!("{}", render::timings(&report));
    }
    if args.json {
        print!("{}", render::to_json(&report));
    } else {
        print!("{}", render::to_text(&report, args.digits));
    }
    ExitCode::SUCCESS
}
