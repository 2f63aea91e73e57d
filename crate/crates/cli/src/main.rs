use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use superring::verdict::{Bounds, Settings};
use superring_cli::{run_script, svg, Outcome, Report, Session};

#[derive(Parser)]
#[command(name = "superring", version, about = "Compute with quotients of C∞ superrings")]
struct Args {
    /// Script to run; starts the REPL when omitted.
    script: Option<PathBuf>,
    #[arg(long)]
    tol_abs: Option<f64>,
    #[arg(long)]
    tol_rel: Option<f64>,
    #[arg(long)]
    jet_order: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Search box as lo..hi, applied to every coordinate.
    #[arg(long = "box", value_name = "LO..HI")]
    search_box: Option<String>,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long)]
    json_out: Option<PathBuf>,
    #[arg(long)]
    svg_out: Option<PathBuf>,
    /// Record wall-clock times; reports are otherwise byte-for-byte reproducible.
    #[arg(long)]
    timings: bool,
}

fn settings(args: &Args) -> Result<Settings, String> {
    let mut s = Settings::default();
    if let Some(v) = args.tol_abs {
        s.tol.abs = v;
    }
    if let Some(v) = args.tol_rel {
        s.tol.rel = v;
    }
    if let Some(v) = args.jet_order {
        s.jet_order = v;
    }
    if let Some(v) = args.seed {
        s.seed = v;
    }
    if let Some(v) = args.grid {
        s.grid = v;
    }
    if let Some(b) = &args.search_box {
        let (lo, hi) = b.split_once("..").ok_or_else(|| format!("bad box `{b}`"))?;
        let lo: f64 = lo.trim().parse().map_err(|_| format!("bad box `{b}`"))?;
        let hi: f64 = hi.trim().parse().map_err(|_| format!("bad box `{b}`"))?;
        s.bounds = Bounds::cube(lo, hi, 1);
    }
    Ok(s)
}

fn repl(session: &mut Session) {
    let stdin = io::stdin();
    let mut out = io::stdout();
    loop {
        let _ = write!(out, "> ");
        let _ = out.flush();
        let mut line = String::new();
        if stdin.lock().read_line(&mut line).unwrap_or(0) == 0 {
            break;
        }
        match session.execute_line(&line) {
            Ok(outcomes) => {
                for o in outcomes {
                    match o {
                        Outcome::Quit => return,
                        Outcome::Done(r) => println!("{}", r.output),
                        Outcome::Nothing => {}
                    }
                }
            }
            Err(e) => println!("error: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let settings = match settings(&args) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut session = Session::new(settings, args.timings);
    match &args.script {
        None => {
            repl(&mut session);
            return ExitCode::SUCCESS;
        }
        Some(path) => {
            let script = match std::fs::read_to_string(path) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            if let Err(e) = run_script(&mut session, &script) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    if let Some(path) = &args.svg_out {
        if let Err(e) = std::fs::write(path, svg::scatter(&session.point_sets)) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    let report = Report::from_session(session);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    match &args.json_out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{json}"),
    }
    match report.status {
        superring_cli::Status::Ok => ExitCode::SUCCESS,
        superring_cli::Status::Fail => ExitCode::from(1),
    }
}
