use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use puro_cli::commands::{self, Ctx, FCmd, Source};
use puro_cli::render::{render, Format};
use puro_cli::reproduce;
use puro_core::purity::{EnumStrategy, Region, SearchBudget};

/// Pure O-sequences: checks, purity decisions, enumeration, Lefschetz
/// properties of monomial level algebras and pure f-vectors.
#[derive(Parser)]
#[command(name = "puro", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    format: Format,
    /// Node budget per purity search.
    #[arg(long, global = true, default_value_t = 2_000_000_000)]
    budget_nodes: u64,
    /// Wall-clock budget per purity search.
    #[arg(long, global = true, default_value_t = 600.0)]
    budget_seconds: f64,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for the randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Primes to report WLP verdicts for, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    chars: Vec<u64>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Shape report and necessary conditions for a sequence.
    Check { seq: String },
    /// Decide whether a sequence is a pure O-sequence.
    Decide {
        seq: String,
        /// Skip closed forms and go straight to the search.
        #[arg(long)]
        no_fast_paths: bool,
    },
    /// All pure O-sequences with given codimension, socle degree and type.
    Enumerate {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        e: u32,
        #[arg(short, long = "type")]
        t: Option<u64>,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: Strategy,
        /// Resume file; completed work is skipped on rerun.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Interval property scans.
    Icp {
        #[command(subcommand)]
        cmd: IcpCmd,
    },
    /// WLP report for a monomial algebra.
    Wlp(AlgebraArgs),
    /// SLP report, one line per power of L.
    Slp(AlgebraArgs),
    /// Type-2 algebra from two inverse-system monomials, or a random batch.
    Type2 {
        monomials: Vec<String>,
        /// Check this many seeded random pairs in three variables instead.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_exp: u32,
    },
    /// Pure f-vectors and the f/h transform.
    Fvector {
        #[command(subcommand)]
        cmd: FvCmd,
    },
    /// Exhaustive counts.
    Census {
        #[command(subcommand)]
        cmd: CensusCmd,
    },
    /// Regenerate a worked example and diff it against its fixture.
    Reproduce {
        id: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Strategy {
    Auto,
    Sets,
    Sequences,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Ideal generators, e.g. "x1^3 x2^3 x3^3 x1*x2*x3", or @file.
    #[arg(long, group = "src")]
    ideal: Option<String>,
    /// Inverse-system generators of one degree, or @file.
    #[arg(long, group = "src")]
    inverse: Option<String>,
    /// Built-in failing witness for codimension and type, e.g. 4,2.
    #[arg(long, group = "src", value_delimiter = ',', num_args = 2)]
    witness: Option<Vec<usize>>,
    /// Random level algebra: variables, type, max socle degree.
    #[arg(long, group = "src", value_delimiter = ',', num_args = 3)]
    random: Option<Vec<usize>>,
}

#[derive(Subcommand)]
enum IcpCmd {
    /// Vary one coordinate of a sequence over lo..=hi.
    Line {
        seq: String,
        slot: usize,
        lo: u64,
        hi: u64,
    },
    /// Every sequence of socle degree e with entries <= bound.
    Box { e: u32, bound: u64 },
}

#[derive(Subcommand)]
enum FvCmd {
    /// h-vector and CM test for an f-vector (1,f_0,...).
    Vector { f: String },
    /// f-vector of facets `{1,2,3};{2,4}` or @file with one facet per line.
    Facets { facets: String },
    /// Two facets of size e sharing h vertices.
    Type2 { e: u64, h: u64 },
    /// Every vector between two CM f-vectors differing in one slot.
    Interval { f: String, g: String },
    /// Projective plane sequence of order d.
    Plane { d: u64 },
    /// Extremal (1, r, C(r,2), C(r,2)/3).
    Steiner { r: u64 },
}

#[derive(Subcommand)]
enum CensusCmd {
    /// #O(r-1,e) <= #D(r,e) <= #P(r,e) <= #O(r,e).
    Chain {
        #[arg(short)]
        r: usize,
        #[arg(short)]
        e: u32,
    },
    /// Pure (1, r, a, t) by region.
    Regions {
        #[arg(short)]
        t: u64,
        /// Any of I, II, III.
        #[arg(long, value_delimiter = ',', default_value = "I,II,III")]
        regions: Vec<String>,
    },
    /// Every (1, r, h_2) against the closed form, r <= max_r.
    Socle2 {
        #[arg(long, default_value_t = 8)]
        max_r: u64,
    },
}

fn source(a: &AlgebraArgs) -> Result<Source<'_>> {
    if let Some(s) = &a.ideal {
        Ok(Source::Ideal(s))
    } else if let Some(s) = &a.inverse {
        Ok(Source::Inverse(s))
    } else if let Some(w) = &a.witness {
        Ok(Source::Witness(w[0], w[1]))
    } else if let Some(r) = &a.random {
        Ok(Source::Random(r[0], r[1], r[2] as u32))
    } else {
        Err(anyhow!(
            "give one of --ideal, --inverse, --witness or --random"
        ))
    }
}

fn run(cli: &Cli) -> Result<(Value, bool)> {
    let ctx = Ctx {
        budget: SearchBudget::new(cli.budget_nodes, cli.budget_seconds, 64)?,
        seed: cli.seed,
        chars: cli.chars.clone(),
    };
    let ok = |v: Value| Ok((v, true));
    match &cli.cmd {
        Cmd::Check { seq } => ok(commands::check(seq)?),
        Cmd::Decide { seq, no_fast_paths } => ok(commands::decide(seq, &ctx, *no_fast_paths)?),
        Cmd::Enumerate {
            r,
            e,
            t,
            strategy,
            checkpoint,
        } => {
            let s = match strategy {
                Strategy::Auto => EnumStrategy::Auto,
                Strategy::Sets => EnumStrategy::Sets,
                Strategy::Sequences => EnumStrategy::Sequences,
            };
            ok(commands::enumerate(
                *r,
                *e,
                *t,
                s,
                checkpoint.as_deref(),
                &ctx,
            )?)
        }
        Cmd::Icp {
            cmd: IcpCmd::Line { seq, slot, lo, hi },
        } => ok(commands::icp_line(seq, *slot, *lo, *hi, &ctx)?),
        Cmd::Icp {
            cmd: IcpCmd::Box { e, bound },
        } => ok(commands::icp_box(*e, *bound, &ctx)?),
        Cmd::Wlp(a) => ok(commands::wlp(source(a)?, &ctx)?),
        Cmd::Slp(a) => ok(commands::slp(source(a)?, &ctx)?),
        Cmd::Type2 {
            monomials,
            random: Some(n),
            max_exp,
        } => {
            if !monomials.is_empty() {
                return Err(anyhow!("--random takes no monomials"));
            }
            commands::type2_random(*n, *max_exp, &ctx)
        }
        Cmd::Type2 { monomials, .. } => match monomials.as_slice() {
            [a, b] => ok(commands::type2(a, b)?),
            _ => Err(anyhow!("type2 needs exactly two monomials")),
        },
        Cmd::Fvector { cmd } => ok(commands::fvector(match cmd {
            FvCmd::Vector { f } => FCmd::Vector(f),
            FvCmd::Facets { facets } => FCmd::Facets(facets),
            FvCmd::Type2 { e, h } => FCmd::Type2(*e, *h),
            FvCmd::Interval { f, g } => FCmd::Interval(f, g),
            FvCmd::Plane { d } => FCmd::Plane(*d),
            FvCmd::Steiner { r } => FCmd::Steiner(*r),
        })?),
        Cmd::Census {
            cmd: CensusCmd::Chain { r, e },
        } => commands::census_chain(*r, *e, &ctx),
        Cmd::Census {
            cmd: CensusCmd::Regions { t, regions },
        } => {
            let regions = regions
                .iter()
                .map(|s| match s.as_str() {
                    "I" => Ok(Region::I),
                    "II" => Ok(Region::II),
                    "III" => Ok(Region::III),
                    other => Err(anyhow!("unknown region `{other}`")),
                })
                .collect::<Result<Vec<_>>>()?;
            commands::census_regions(*t, &regions, &ctx)
        }
        Cmd::Census {
            cmd: CensusCmd::Socle2 { max_r },
        } => commands::census_socle2(*max_r, &ctx),
        Cmd::Reproduce { list: true, .. } => ok(json!(reproduce::IDS)),
        Cmd::Reproduce { id, all, .. } => {
            let ids: Vec<&str> = match (id, all) {
                (_, true) => reproduce::IDS.to_vec(),
                (Some(id), false) => vec![id.as_str()],
                (None, false) => return Err(anyhow!("give an example id, --all or --list")),
            };
            let dir = reproduce::fixture_dir();
            let mut outs = Vec::new();
            for id in ids {
                let o = reproduce::run(id, &dir, &ctx.budget)?;
                eprintln!(
                    "{id}: {} in {:.2} s",
                    if o.passed { "match" } else { "MISMATCH" },
                    o.seconds
                );
                outs.push(o);
            }
            let passed = outs.iter().all(|o| o.passed);
            let v = if outs.len() == 1 {
                serde_json::to_value(&outs[0])?
            } else {
                let mut m = serde_json::Map::new();
                m.insert("passed".into(), json!(passed));
                for o in &outs {
                    m.insert(o.id.clone(), serde_json::to_value(o)?);
                }
                Value::Object(m)
            };
            Ok((v, passed))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("puro: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok((v, passed)) => {
            let mut out = std::io::stdout().lock();
            // a closed pipe (`| head`) is not an error
            if let Err(e) = writeln!(out, "{}", render(&v, cli.format)) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("puro: {e}");
                    return ExitCode::from(2);
                }
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("puro: {e:#}");
            ExitCode::from(2)
        }
    }
}
