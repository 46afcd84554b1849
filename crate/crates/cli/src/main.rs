use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use dmod_cli::job::{parse_route, parse_window};
use dmod_cli::{parse, run, Overrides, Status};
use dmod_core::groebner::Route;
use dmod_core::DmodError;

/// Runs a D-module job file and prints the result as JSON.
#[derive(Parser, Debug)]
#[command(name = "dmod", version)]
struct Args {
    /// Job file, or `-` for standard input.
    job: PathBuf,
    #[arg(long, value_parser = parse_route)]
    route: Option<Route>,
    /// Shift vector, e.g. "0,1".
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    shift: Option<Vec<i64>>,
    #[arg(long)]
    depth: Option<usize>,
    /// Window override "k0,k1".
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    /// Write the JSON document here instead of standard output.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Check invariants of the result.
    #[arg(long)]
    verify: bool,
}

fn threads() -> anyhow::Result<()> {
    if let Ok(v) = std::env::var("DMOD_THREADS") {
        let n: usize = v.trim().parse().with_context(|| format!("DMOD_THREADS={v}"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global()?;
    }
    Ok(())
}

fn go(args: &Args) -> anyhow::Result<Status> {
    threads()?;
    let text = if args.job.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(&args.job).with_context(|| format!("reading {}", args.job.display()))?
    };
    let job = parse(&text)?;
    let ov = Overrides {
        route: args.route,
        shift: args.shift.clone(),
        depth: args.depth,
        window: args.window,
        verify: args.verify,
    };
    let out = run(&job, &ov)?;
    let doc = serde_json::to_string_pretty(&out.json)?;
    match &args.json {
        Some(p) => std::fs::write(p, doc + "\n").with_context(|| format!("writing {}", p.display()))?,
        None => println!("{doc}"),
    }
    Ok(out.status)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match go(&args) {
        Ok(s) => ExitCode::from(s.exit_code() as u8),
        Err(e) => {
            eprintln!("dmod: {e:#}");
            let code = match e.downcast_ref::<DmodError>() {
                Some(DmodError::NotSpecializable) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
