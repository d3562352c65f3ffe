use std::fmt::Write as _;
use std::io::{ErrorKind, Write as _};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{ArgGroup, Parser, Subcommand};
use forestry::{
    all_pipe_dreams, find_bad_pair, forest_polynomial, is_forest_by_expansion, schubert, schubert_divdiff,
    simple_closure, verify_theorem_with_progress, IndexedForest, LehmerCode, Permutation, VerifyConfig,
    FORBIDDEN_PATTERNS,
};
use serde_json::json;

/// Schubert polynomials, forest polynomials, and when they coincide.
#[derive(Parser, Debug)]
#[command(name = "forestry", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Schubert polynomial of a permutation, from its pipe dreams.
    Schubert {
        perm: Permutation,
        /// Recompute with divided differences and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Forest polynomial and tree of a code or of a permutation's code.
    #[command(group(ArgGroup::new("source").required(true).args(["perm", "code"])))]
    Forest {
        #[arg(long)]
        perm: Option<Permutation>,
        /// Comma-separated code; empty for the empty forest.
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        code: Option<LehmerCode>,
    },
    /// Decide whether a Schubert polynomial is a forest polynomial, both ways.
    Check { perm: Permutation },
    /// Compare the two tests on every permutation of size n.
    Verify {
        n: usize,
        /// Largest size accepted.
        #[arg(long, env = "FORESTRY_MAX_N", default_value_t = 7, value_parser = clap::value_parser!(u16).range(1..))]
        max_n: u16,
        /// Worker threads (default: available cores).
        #[arg(long, value_parser = clap::value_parser!(u16).range(1..))]
        jobs: Option<u16>,
    },
    /// List reduced pipe dreams with their weights.
    Pipedreams {
        perm: Permutation,
        /// Only the dreams reachable from the bottom one by simple ladder moves.
        #[arg(long)]
        simple_only: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return if err.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut out = String::new();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            return ExitCode::from(1);
        }
    };
    match std::io::stdout().lock().write_all(out.as_bytes()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        _ => code,
    }
}

fn emit(out: &mut String, value: serde_json::Value) {
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&value).expect("json values serialize")
    );
}

fn plural(count: usize, word: &str) -> String {
    if count == 1 {
        format!("{count} {word}")
    } else {
        format!("{count} {word}s")
    }
}

fn run(cli: Cli, out: &mut String) -> anyhow::Result<ExitCode> {
    let json = cli.json;
    match cli.command {
        Command::Schubert { perm, oracle } => {
            let poly = schubert(&perm);
            if oracle {
                let other = schubert_divdiff(&perm);
                if other != poly {
                    bail!("divided differences give {other}, pipe dreams give {poly}");
                }
            }
            if json {
                let mut value =
                    json!({ "perm": perm.to_string(), "polynomial": poly.to_json(), "text": poly.to_string() });
                if oracle {
                    value["oracle"] = json!("ok");
                }
                emit(out, value);
            } else {
                let _ = writeln!(out, "{poly}");
                if oracle {
                    let _ = writeln!(out, "oracle: OK");
                }
            }
        }
        Command::Forest { perm, code } => {
            let code = match (perm, code) {
                (Some(w), None) => w.lehmer_code(),
                (None, Some(c)) => c,
                _ => unreachable!("clap enforces exactly one source"),
            };
            let forest = IndexedForest::from_code(&code);
            let poly = forest_polynomial(&forest);
            if json {
                emit(
                    out,
                    json!({
                        "code": code.entries(),
                        "polynomial": poly.to_json(),
                        "text": poly.to_string(),
                        "forest": forest.to_json(),
                    }),
                );
            } else {
                let _ = writeln!(out, "{poly}");
                out.push_str(&forest.render());
            }
        }
        Command::Check { perm } => return Ok(check(&perm, json, out)),
        Command::Verify { n, max_n, jobs } => {
            let config = VerifyConfig {
                max_n: max_n.into(),
                jobs: jobs.map(usize::from),
                ..VerifyConfig::default()
            };
            let report = verify_theorem_with_progress(n, &config, |done, total| {
                let mut err = std::io::stderr().lock();
                let _ = writeln!(err, "checked {done}/{total}");
            })
            .with_context(|| format!("cannot verify size {n}"))?;
            if json {
                emit(out, report.to_json());
            } else {
                out.push_str(&report.summary());
            }
            return Ok(if report.is_clean() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            });
        }
        Command::Pipedreams { perm, simple_only } => {
            let dreams = if simple_only {
                simple_closure(&perm)
            } else {
                all_pipe_dreams(&perm)
            };
            if json {
                let list: Vec<_> = dreams
                    .iter()
                    .map(|d| json!({ "cells": d.cells(), "weight": d.weight().to_string() }))
                    .collect();
                emit(
                    out,
                    json!({ "perm": perm.to_string(), "simple_only": simple_only, "count": dreams.len(), "dreams": list }),
                );
            } else {
                let _ = writeln!(out, "{} for {perm}", plural(dreams.len(), "pipe dream"));
                for d in &dreams {
                    let _ = writeln!(out, "\nweight {}", d.weight());
                    out.push_str(&d.render());
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check(perm: &Permutation, json: bool, out: &mut String) -> ExitCode {
    let patterns: Vec<(&[u32], Vec<usize>)> = FORBIDDEN_PATTERNS
        .iter()
        .filter_map(|&p| perm.find_pattern(p).map(|at| (p, at)))
        .collect();
    let by_pattern = patterns.is_empty();
    let by_expansion = is_forest_by_expansion(perm);
    let bad_pair = find_bad_pair(perm);
    let agree = by_pattern == by_expansion;
    let digits = |v: &[u32]| v.iter().map(ToString::to_string).collect::<String>();

    if json {
        emit(
            out,
            json!({
                "perm": perm.to_string(),
                "by_pattern": by_pattern,
                "by_expansion": by_expansion,
                "agree": agree,
                "patterns": patterns.iter().map(|(p, at)| json!({ "pattern": digits(p), "indices": at })).collect::<Vec<_>>(),
                "bad_pair": bad_pair.as_ref().map(|b| json!({
                    "parent": b.parent.to_string(),
                    "child": b.child.to_string(),
                    "witness": b.witness.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })),
            }),
        );
    } else {
        let containment = (!by_pattern).then(|| {
            let found: Vec<String> = patterns
                .iter()
                .map(|(p, at)| {
                    let at: Vec<String> = at.iter().map(ToString::to_string).collect();
                    format!("{} at indices ({})", digits(p), at.join(","))
                })
                .collect();
            format!("contains {}", found.join(", "))
        });
        let mut line = match (&containment, by_expansion) {
            (None, true) => "forest: yes".to_string(),
            (Some(c), false) => format!("NOT forest: {c}"),
            (None, false) => "DISAGREEMENT: avoids every pattern but the polynomials differ".to_string(),
            (Some(c), true) => format!("DISAGREEMENT: {c} but the polynomials agree"),
        };
        if let Some(b) = &bad_pair {
            let _ = write!(line, "; bad pair {} / {}", b.parent, b.child);
        }
        let verdict = |yes: bool| if yes { "forest" } else { "not forest" };
        let _ = writeln!(out, "{line}");
        let _ = writeln!(out, "pattern test: {}", verdict(by_pattern));
        let _ = writeln!(out, "expansion test: {}", verdict(by_expansion));
    }
    if agree {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
