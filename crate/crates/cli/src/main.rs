//! `vcat`: every engine operation over JSON files.
//!
//! Exit status is 0 on success, 1 when a checker certifies a failure (the
//! witness is in the output) and 2 on usage, IO or input errors.

mod fibcmd;
mod input;
mod lincmd;
mod vcmd;
mod vfiles;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use vcat_core::Caps;

use crate::input::{Loader, Stop};

#[derive(Parser)]
#[command(
    name = "vcat",
    version,
    about = "Enriched (co)categories, measurings and fibrations over finite data"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
pub struct Opts {
    /// Overrides every enumeration cap (function spaces, total categories, search bounds).
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Seed for randomly generated inputs.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Suppresses the timing line on stderr.
    #[arg(long, global = true)]
    pub quiet: bool,
    /// Base quantale for matrix files without a `base` field.
    #[arg(long, global = true)]
    pub base: Option<String>,
    /// Dimension bound of the coalgebra search in `lin certify`.
    #[arg(long, global = true, default_value_t = 2)]
    pub search_dim: usize,
    /// Largest probe object set in `enrich verify-adjunction`.
    #[arg(long, global = true, default_value_t = 2)]
    pub bound: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quantale tables.
    Base {
        #[command(subcommand)]
        verb: vcmd::BaseVerb,
    },
    /// Quantale-valued matrices.
    Vmat {
        #[command(subcommand)]
        verb: vcmd::VmatVerb,
    },
    /// Graphs, categories and cocategories.
    Cat {
        #[command(subcommand)]
        verb: vcmd::CatVerb,
    },
    /// Internal homs and the Sweedler hom.
    Enrich {
        #[command(subcommand)]
        verb: vcmd::EnrichVerb,
    },
    /// Modules and comodules.
    Mod {
        #[command(subcommand)]
        verb: vcmd::ModVerb,
    },
    /// Finite categories and fibrations.
    Fib {
        #[command(subcommand)]
        verb: fibcmd::FibVerb,
    },
    /// Algebras, coalgebras and measurings over Q and F2.
    Lin {
        #[command(subcommand)]
        verb: lincmd::LinVerb,
    },
}

impl Cmd {
    fn name(&self) -> String {
        let (module, verb) = match self {
            Cmd::Base { verb } => ("base", vcmd::verb_name(verb)),
            Cmd::Vmat { verb } => ("vmat", vcmd::verb_name(verb)),
            Cmd::Cat { verb } => ("cat", vcmd::verb_name(verb)),
            Cmd::Enrich { verb } => ("enrich", vcmd::verb_name(verb)),
            Cmd::Mod { verb } => ("mod", vcmd::verb_name(verb)),
            Cmd::Fib { verb } => ("fib", vcmd::verb_name(verb)),
            Cmd::Lin { verb } => ("lin", vcmd::verb_name(verb)),
        };
        format!("{module} {verb}")
    }
}

/// Shared state of one invocation.
pub struct Ctx {
    pub opts: Opts,
    pub caps: Caps,
    pub loader: Loader,
}

/// What a command produced.
pub struct Outcome {
    pub pass: bool,
    pub result: Value,
    /// Human-readable rendering for `--format text`.
    pub text: Option<String>,
}

impl Outcome {
    pub fn new(pass: bool, result: Value) -> Outcome {
        Outcome {
            pass,
            result,
            text: None,
        }
    }

    pub fn ok(result: Value) -> Outcome {
        Outcome::new(true, result)
    }
}

fn caps(opts: &Opts) -> Caps {
    let mut caps = Caps::default();
    if let Some(n) = opts.cap {
        caps.exponent = n;
        caps.morphisms = n;
        caps.search = n as u128;
    }
    caps
}

fn configure_threads() {
    // advisory: an unusable value falls back to rayon's default
    if let Some(n) = std::env::var("ENGINE_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    configure_threads();
    let start = Instant::now();
    let command = cli.cmd.name();
    let mut ctx = Ctx {
        caps: caps(&cli.opts),
        opts: cli.opts,
        loader: Loader::default(),
    };
    let run = match &cli.cmd {
        Cmd::Base { verb } => vcmd::base(&mut ctx, verb),
        Cmd::Vmat { verb } => vcmd::vmat(&mut ctx, verb),
        Cmd::Cat { verb } => vcmd::cat(&mut ctx, verb),
        Cmd::Enrich { verb } => vcmd::enrich(&mut ctx, verb),
        Cmd::Mod { verb } => vcmd::module(&mut ctx, verb),
        Cmd::Fib { verb } => fibcmd::run(&mut ctx, verb),
        Cmd::Lin { verb } => lincmd::run(&mut ctx, verb),
    };
    let outcome = match run {
        Ok(o) => o,
        Err(Stop::Fail(result)) => Outcome::new(false, result),
        Err(Stop::Error(msg)) => {
            eprintln!("vcat {command}: {msg}");
            return ExitCode::from(2);
        }
    };
    let manifest = json!({
        "command": command,
        "engine_version": env!("CARGO_PKG_VERSION"),
        "caps": {
            "exponent": ctx.caps.exponent,
            "morphisms": ctx.caps.morphisms,
            "search": ctx.caps.search.to_string(),
        },
        "seed": ctx.opts.seed,
        "inputs": input::to_value(&ctx.loader.records),
    });
    let status = if outcome.pass { "pass" } else { "fail" };
    let rendered = match ctx.opts.format {
        Format::Json => {
            let doc = json!({ "manifest": manifest, "status": status, "result": outcome.result });
            serde_json::to_string_pretty(&doc).expect("JSON values serialize") + "\n"
        }
        Format::Text => {
            let body = outcome.text.unwrap_or_else(|| {
                serde_json::to_string_pretty(&outcome.result).expect("JSON values serialize") + "\n"
            });
            format!("{status}\n{body}")
        }
    };
    let mut out = std::io::stdout().lock();
    if out
        .write_all(rendered.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        return ExitCode::from(2);
    }
    if !ctx.opts.quiet {
        eprintln!(
            "vcat {command}: {status} in {:.3} s",
            start.elapsed().as_secs_f64()
        );
    }
    ExitCode::from(if outcome.pass { 0 } else { 1 })
}

/// Resolves a list of input paths in order.
pub fn load_all(ctx: &mut Ctx, paths: &[PathBuf]) -> Result<Vec<input::Input>, Stop> {
    paths.iter().map(|p| ctx.loader.load(p)).collect()
}
