use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lingroup::decide::{is_finite, is_finite_cyclic, Config, Finiteness};
use lingroup::descriptor::{parse_matrix, ElementFile, GroupFile};
use lingroup::fingrp::{evaluate_word, Word};
use lingroup::matrix;
use lingroup::recognize::{isomorphic_copy, membership, order_of_finite, structural_query, Query};
use lingroup::sw::{apply_sw, SwField};
use lingroup::{with_group, Budget, Error};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "lingroup", version, about = "Finiteness testing and recognition of matrix groups")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Options {
    /// Seed for random elements.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of enumerated elements of a finite image.
    #[arg(long, global = true, default_value_t = lingroup::fingrp::DEFAULT_CAP)]
    cap: usize,
    /// Index of the first congruence homomorphism to use.
    #[arg(long, global = true, default_value_t = 0)]
    skip: usize,
    /// Homomorphisms tried when looking for a faithful image.
    #[arg(long, global = true, default_value_t = 64)]
    max_attempts: usize,
    /// Largest integer size, in bits, allowed in matrix entries.
    #[arg(long, global = true, default_value_t = 1 << 20)]
    budget_bits: u64,
    /// Number of random elements tested before the main algorithm.
    #[arg(long, global = true, default_value_t = 10)]
    precheck: usize,
}

impl Options {
    fn config(&self) -> Config {
        Config {
            seed: self.seed,
            cap: self.cap,
            skip: self.skip,
            max_attempts: self.max_attempts,
            budget: Budget {
                max_bits: self.budget_bits,
                ..Budget::default()
            },
            precheck: self.precheck,
            ..Config::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Center,
    Derived,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the group is finite.
    Isfinite { file: PathBuf },
    /// Decide whether one element has finite order.
    Eltorder {
        file: PathBuf,
        /// 1-based generator index.
        #[arg(long, conflicts_with = "word")]
        gen_index: Option<usize>,
        /// Word in the generators, e.g. `a^2*b^-1`.
        #[arg(long)]
        word: Option<String>,
    },
    /// Print a congruence homomorphism and the image of the generators.
    Swimage { file: PathBuf },
    /// Build an isomorphic copy over a finite field.
    Recognize { file: PathBuf },
    /// Test membership of the matrix in ELEMENT.
    Member { file: PathBuf, element: PathBuf },
    /// Compute the order of a finite group.
    Order { file: PathBuf },
    /// Center or derived subgroup of a finite group.
    Subgroup {
        file: PathBuf,
        #[arg(long, value_enum)]
        which: Which,
    },
}

/// Outcome of a command: the JSON document and whether it was decided.
struct Outcome {
    body: Value,
    decided: bool,
}

fn decided(body: Value) -> Outcome {
    Outcome { body, decided: true }
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load(path: &Path) -> anyhow::Result<(GroupFile, lingroup::descriptor::AnyGroup)> {
    let file = GroupFile::from_json(&read(path)?)?;
    let group = file.build()?;
    Ok((file, group))
}

fn finite_only(finite: &Finiteness) -> Option<Outcome> {
    match finite {
        Finiteness::Finite => None,
        Finiteness::Infinite => Some(decided(json!({ "finite": false }))),
        Finiteness::Undecided(reason) => Some(Outcome {
            body: json!({ "finite": "undecided", "reason": reason }),
            decided: false,
        }),
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let cfg = cli.opts.config();
    match &cli.command {
        Command::Isfinite { file } => {
            let (_, group) = load(file)?;
            let v = with_group!(&group, g => is_finite(g, &cfg)?);
            Ok(Outcome {
                decided: v.finite.is_decided(),
                body: v.to_json(),
            })
        }
        Command::Eltorder { file, gen_index, word } => {
            let (_, group) = load(file)?;
            let v = with_group!(&group, g => {
                let w = match (gen_index, word) {
                    (Some(i), _) => {
                        if *i == 0 || *i > g.rank() {
                            anyhow::bail!(Error::InvalidInput(format!("generator index {i} out of range 1..={}", g.rank())));
                        }
                        Word::letter(i - 1, 1)
                    }
                    (None, Some(text)) => Word::parse(text, g.rank())?,
                    (None, None) => anyhow::bail!(Error::InvalidInput("give --gen-index or --word".into())),
                };
                let m = evaluate_word(&g.field, g.n, &g.gens, &g.inverses, &w, &cfg.budget)?;
                let mut v = is_finite_cyclic(&g.field, &m, &cfg)?.to_json();
                v["word"] = json!(w.to_string());
                v
            });
            Ok(Outcome {
                decided: v["finite"] != json!("undecided"),
                body: v,
            })
        }
        Command::Swimage { file } => {
            let (_, group) = load(file)?;
            let body = with_group!(&group, g => {
                let map = g.field.build_sw(g, cfg.skip)?;
                let images = g
                    .gens
                    .iter()
                    .map(|m| apply_sw(&g.field, &map, m).map(|x| matrix::format(&map.target, &x)))
                    .collect::<lingroup::Result<Vec<_>>>()?;
                json!({
                    "map": map.cert.to_json(),
                    "image_generators": images,
                    "mu": g.field.mu_json(&g.mu),
                })
            });
            Ok(decided(body))
        }
        Command::Recognize { file } => {
            let (_, group) = load(file)?;
            with_group!(&group, g => {
                let v = is_finite(g, &cfg)?;
                if let Some(out) = finite_only(&v.finite) {
                    return Ok(out);
                }
                let copy = isomorphic_copy(g, &cfg)?;
                let mut body = copy.to_json();
                body["finite"] = json!(true);
                Ok(decided(body))
            })
        }
        Command::Member { file, element } => {
            let (_, group) = load(file)?;
            let elem = ElementFile::from_json(&read(element)?)?;
            with_group!(&group, g => {
                let x = parse_matrix(&g.field, g.n, elem.rows(), "element")?;
                let m = membership(g, &x, &cfg)?;
                Ok(decided(m.to_json()))
            })
        }
        Command::Order { file } => {
            let (_, group) = load(file)?;
            with_group!(&group, g => {
                let o = order_of_finite(g, &cfg)?;
                Ok(decided(json!({ "finite": true, "order": o.to_string() })))
            })
        }
        Command::Subgroup { file, which } => {
            let (_, group) = load(file)?;
            let query = match which {
                Which::Center => Query::Center,
                Which::Derived => Query::Derived,
            };
            with_group!(&group, g => {
                let s = structural_query(g, query, &cfg)?;
                let mut body = s.to_json(&g.field);
                body["finite"] = json!(true);
                Ok(decided(body))
            })
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Isfinite { .. } => "isfinite",
        Command::Eltorder { .. } => "eltorder",
        Command::Swimage { .. } => "swimage",
        Command::Recognize { .. } => "recognize",
        Command::Member { .. } => "member",
        Command::Order { .. } => "order",
        Command::Subgroup { .. } => "subgroup",
    }
}

fn error_outcome(err: &anyhow::Error) -> (Value, u8) {
    let mut body = json!({ "error": format!("{err:#}") });
    let code = match err.downcast_ref::<Error>() {
        Some(Error::NotFinite) => {
            return (json!({ "finite": false }), 0);
        }
        Some(Error::Undecided(reason)) | Some(Error::Resource(reason)) => {
            body = json!({ "finite": "undecided", "reason": reason });
            1
        }
        Some(Error::AttemptsExhausted(n)) => {
            body["attempts"] = json!(n);
            1
        }
        Some(Error::Parse { offset, .. }) => {
            body["offset"] = json!(offset);
            2
        }
        _ => 2,
    };
    (body, code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut body, code) = match run(&cli) {
        Ok(out) => {
            let code = if out.decided { 0 } else { 1 };
            (out.body, code)
        }
        Err(err) => {
            eprintln!("lingroup: {err:#}");
            error_outcome(&err)
        }
    };
    body["schema_version"] = json!(SCHEMA_VERSION);
    body["command"] = json!(command_name(&cli.command));
    println!("{}", serde_json::to_string_pretty(&body).expect("JSON serializes"));
    ExitCode::from(code)
}
