//! `berko`: runs one experiment described by a JSON config and writes a
//! versioned JSON report (or CSV for tabular results).

use std::io::Write;
use std::process::ExitCode;

use berko::config::RunConfig;
use berko::report::Failure;
use berko::{commands, render, Format};
use clap::Parser;
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "berko", version, about = "Run Berkovich-line experiments from a JSON config")]
struct Args {
    /// Path to the JSON config.
    #[arg(long)]
    config: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Overrides the config's seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads for independent sub-experiments.
    #[arg(long, default_value_t = 1)]
    parallel: usize,
}

fn execute(args: &Args) -> Result<(String, bool, Option<String>), Failure> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Failure::config(format!("cannot read {}: {e}", args.config)))?;
    let mut cfg = RunConfig::parse(&text)?;
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    let format = match (args.format, cfg.format.as_deref()) {
        (Some(f), _) => f,
        (None, None | Some("json")) => Format::Json,
        (None, Some("csv")) => Format::Csv,
        (None, Some(other)) => return Err(Failure::config(format!("unknown format \"{other}\""))),
    };
    if args.parallel == 0 {
        return Err(Failure::config("--parallel must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.parallel)
        .build()
        .map_err(|e| Failure::config(format!("thread pool: {e}")))?;
    let context = json!({"command": cfg.command});
    let outcome = commands::run(&cfg, &pool).map_err(|f| f.with_context(context.clone()))?;
    let (text, holds) = render(&cfg, format, outcome).map_err(|f| f.with_context(context))?;
    Ok((text, holds, args.out.clone().or(cfg.out.clone())))
}

fn main() -> ExitCode {
    let args = Args::parse();
    let fail = |f: Failure| {
        eprintln!("{}", f.to_json());
        ExitCode::from(f.exit as u8)
    };
    match execute(&args) {
        Err(f) => fail(f),
        Ok((text, holds, out)) => {
            let written = match out {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|e| Failure::config(format!("cannot write {path}: {e}")))
                }
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::config(e.to_string())),
            };
            if let Err(f) = written {
                return fail(f);
            }
            if holds {
                ExitCode::SUCCESS
            } else {
                fail(Failure {
                    exit: 2,
                    code: "invariant_violation".into(),
                    message: "an invariant checked by the command failed; see the report".into(),
                    context: json!({}),
                })
            }
        }
    }
}
