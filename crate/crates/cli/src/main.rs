//! `ogc` — run on-line graph coloring duels, sweeps, and transcript checks.
//!
//! Exit codes: 0 success, 2 usage/strategy resolution, 3 I/O,
//! 4 verification or parse failure, 5 aborted game.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ogc_core::sweep::{run_sweep, to_csv, SweepSpec};
use ogc_core::{
    replay_verify, run_duel, verify_class, AlgorithmKind, DuelConfig, GraphClass, PresenterKind,
    Transcript, VerifyDepth,
};

const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_GAME: u8 = 5;

#[derive(Parser)]
#[command(name = "ogc", about = "On-line graph coloring game harness", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one presenter/algorithm duel and verify the result.
    Duel(DuelArgs),
    /// Run a grid of duels and emit one CSV row per game.
    Sweep(SweepArgs),
    /// Replay a transcript and check class membership.
    Verify(VerifyArgs),
    /// Replay a transcript and print the recomputed outcome.
    Replay(ReplayArgs),
}

#[derive(Args)]
struct DuelArgs {
    #[arg(long)]
    presenter: PresenterKind,
    #[arg(long)]
    algorithm: AlgorithmKind,
    /// Color target the presenter plays for.
    #[arg(short = 'c', long = "colors")]
    colors: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Safety cap on rounds; defaults to 10x the presenter's bound.
    #[arg(long)]
    round_cap: Option<u64>,
    /// Transcript output path; defaults to duel-<presenter>-<algorithm>-c<c>-s<seed>.transcript
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "auto")]
    verify_depth: VerifyDepth,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    presenter: PresenterKind,
    /// Comma-separated algorithm list.
    #[arg(long, value_delimiter = ',', default_value = "first-fit,cbip,random,fresh")]
    algorithms: Vec<AlgorithmKind>,
    /// Single target (`8`) or inclusive range (`2..16`).
    #[arg(short = 'c', long = "colors")]
    colors: String,
    /// Comma-separated seeds, one game per (algorithm, c, seed).
    #[arg(long, value_delimiter = ',', default_value = "0")]
    seeds: Vec<u64>,
    #[arg(long)]
    round_cap: Option<u64>,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value = "auto")]
    verify_depth: VerifyDepth,
}

#[derive(Args)]
struct VerifyArgs {
    /// Transcript file to check.
    #[arg(long)]
    transcript: PathBuf,
    /// Expected graph class; defaults to the presenter named in the header.
    #[arg(long)]
    expect_class: Option<GraphClass>,
    #[arg(long, default_value = "auto")]
    verify_depth: VerifyDepth,
}

#[derive(Args)]
struct ReplayArgs {
    #[arg(long)]
    transcript: PathBuf,
}

fn parse_color_range(spec: &str) -> Result<(u32, u32), String> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u32 = lo.parse().map_err(|_| format!("bad range start `{}`", lo))?;
        let hi: u32 = hi.parse().map_err(|_| format!("bad range end `{}`", hi))?;
        if lo == 0 || hi < lo {
            return Err(format!("invalid color range `{}`", spec));
        }
        Ok((lo, hi))
    } else {
        let c: u32 = spec.parse().map_err(|_| format!("bad color target `{}`", spec))?;
        if c == 0 {
            return Err("color target must be >= 1".into());
        }
        Ok((c, c))
    }
}

fn read_transcript(path: &Path) -> Result<Transcript, u8> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {}", path.display(), e);
            return Err(EXIT_IO);
        }
    };
    text.parse::<Transcript>().map_err(|e| {
        eprintln!("error: {}", e);
        EXIT_VERIFY
    })
}

fn cmd_duel(args: &DuelArgs) -> u8 {
    let config = DuelConfig {
        presenter: args.presenter,
        algorithm: args.algorithm,
        target_colors: args.colors,
        seed: args.seed,
        round_cap: args.round_cap,
    };
    let result = match run_duel(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_GAME;
        }
    };
    let out_path = args.out.clone().unwrap_or_else(|| {
        PathBuf::from(format!(
            "duel-{}-{}-c{}-s{}.transcript",
            args.presenter.name(),
            args.algorithm.name(),
            args.colors,
            args.seed
        ))
    });
    if let Err(e) = std::fs::write(&out_path, result.transcript.render()) {
        eprintln!("error: cannot write {}: {}", out_path.display(), e);
        return EXIT_IO;
    }
    let graph = match replay_verify(&result.transcript) {
        Ok((_, g)) => g,
        Err(e) => {
            eprintln!("error: replay of the fresh transcript failed: {}", e);
            return EXIT_VERIFY;
        }
    };
    let report = verify_class(&graph, args.presenter.graph_class(), args.verify_depth);
    let bound_ok = args.presenter.bound_holds(args.colors, result.outcome.vertices);
    println!(
        "duel presenter={} algorithm={} c={} seed={} n={} colors={} stopped={} class={} bound={} bound_value={:.3} transcript={}",
        args.presenter.name(),
        args.algorithm.name(),
        args.colors,
        args.seed,
        result.outcome.vertices,
        result.outcome.distinct_colors,
        result.outcome.stopped,
        if report.ok { "ok" } else { "FAIL" },
        if bound_ok { "ok" } else { "FAIL" },
        args.presenter.bound_value(args.colors),
        out_path.display(),
    );
    if !report.ok {
        eprintln!("error: class check failed: {}", report.detail);
        return EXIT_VERIFY;
    }
    if !bound_ok {
        eprintln!("error: vertex count exceeds the presenter bound");
        return EXIT_VERIFY;
    }
    0
}

fn cmd_sweep(args: &SweepArgs) -> u8 {
    let colors = match parse_color_range(&args.colors) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_USAGE;
        }
    };
    let spec = SweepSpec {
        presenter: args.presenter,
        algorithms: args.algorithms.clone(),
        colors,
        seeds: args.seeds.clone(),
        round_cap: args.round_cap,
        depth: args.verify_depth,
    };
    let records = run_sweep(&spec);
    let csv = to_csv(&records);
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &csv) {
                eprintln!("error: cannot write {}: {}", path.display(), e);
                return EXIT_IO;
            }
        }
        None => print!("{}", csv),
    }
    let mut failures = 0u32;
    for record in &records {
        if !record.ok() {
            failures += 1;
            eprintln!(
                "error: {} vs {} c={} seed={}: {}",
                record.presenter,
                record.algorithm,
                record.target_colors,
                record.seed,
                record.error.as_deref().unwrap_or("bound check failed")
            );
        }
    }
    if failures > 0 {
        eprintln!("error: {} of {} rows failed", failures, records.len());
        EXIT_VERIFY
    } else {
        0
    }
}

fn cmd_verify(args: &VerifyArgs) -> u8 {
    let transcript = match read_transcript(&args.transcript) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let class = match args.expect_class {
        Some(c) => c,
        None => match transcript.header.presenter.parse::<PresenterKind>() {
            Ok(kind) => kind.graph_class(),
            Err(_) => {
                eprintln!(
                    "error: unknown presenter `{}` in header; pass --expect-class",
                    transcript.header.presenter
                );
                return EXIT_USAGE;
            }
        },
    };
    let (outcome, graph) = match replay_verify(&transcript) {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {}", e);
            return EXIT_VERIFY;
        }
    };
    let report = verify_class(&graph, class, args.verify_depth);
    println!(
        "verify transcript={} rounds={} colors={} class={} {} detail={}",
        args.transcript.display(),
        outcome.vertices,
        outcome.distinct_colors,
        class,
        if report.ok { "ok" } else { "FAIL" },
        report.detail,
    );
    if report.ok {
        0
    } else {
        EXIT_VERIFY
    }
}

fn cmd_replay(args: &ReplayArgs) -> u8 {
    let transcript = match read_transcript(&args.transcript) {
        Ok(t) => t,
        Err(code) => return code,
    };
    match replay_verify(&transcript) {
        Ok((outcome, _)) => {
            println!(
                "replay transcript={} presenter={} algorithm={} c={} n={} colors={} stopped={}",
                args.transcript.display(),
                transcript.header.presenter,
                transcript.header.algorithm,
                transcript.header.target_colors,
                outcome.vertices,
                outcome.distinct_colors,
                outcome.stopped,
            );
            0
        }
        Err(e) => {
            eprintln!("error: {}", e);
            EXIT_VERIFY
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Duel(args) => cmd_duel(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Replay(args) => cmd_replay(args),
    };
    ExitCode::from(code)
}
