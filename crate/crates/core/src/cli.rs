//! The `psl-maniplex` command line.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::census::{search_in, verify_structure_in, SearchOptions, TheoremReport};
use crate::constructions::{class1_map, class2_rank4, extend_map};
use crate::error::{Error, Result};
use crate::group::{Family, GroupContext};
use crate::io::{self, RepJson, RepRecord};
use crate::maniplex::write_flag_graph;
use crate::string_rep::{validate, StringRep};

/// Default worker count for `census` and `verify` when `--threads` is absent.
pub const THREADS_ENV: &str = "PSL_MANIPLEX_THREADS";

#[derive(Parser, Debug)]
#[command(name = "psl-maniplex", version, about = "String representations of PSL(2,q) and PGL(2,q)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build an explicit representation.
    Construct(ConstructArgs),
    /// Add a fourth generator to a rank-3 representation read from a file.
    Extend {
        input: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the defining relations of a representation file.
    Validate {
        input: PathBuf,
        /// Skip the generation check.
        #[arg(long)]
        no_generation: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Summarize the maniplex of a representation file.
    Info {
        input: PathBuf,
        /// Also write the flag graph (small q only) to this path.
        #[arg(long)]
        flag_graph: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Enumerate representations up to isomorphism.
    Census {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(3..=5))]
        rank: u64,
        /// Write search statistics as JSON here instead of stderr.
        #[arg(long)]
        stats: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the structural theorems against the census.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
#[command(group(clap::ArgGroup::new("source").required(true).multiple(true).args(["class1", "class2", "extend"])))]
pub struct ConstructArgs {
    /// The {3, p} map on PSL(2, p), p ≡ 1 (mod 12).
    #[arg(long, value_name = "P", conflicts_with = "class2")]
    pub class1: Option<u64>,
    /// The rank-4 representation of PSL(2, p) with A5 facets.
    #[arg(long, value_name = "P", conflicts_with = "extend")]
    pub class2: Option<u64>,
    /// Extend the Class-1 map, or a rank-3 representation read from FILE.
    #[arg(long, value_name = "FILE", num_args = 0..=1)]
    pub extend: Option<Option<PathBuf>>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[arg(short = 'q', value_parser = clap::value_parser!(u64).range(1..))]
    pub q: u64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Psl)]
    pub family: FamilyArg,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file (atomically) instead of stdout.
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Psl,
    Pgl,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Psl => Family::Psl,
            FamilyArg::Pgl => Family::Pgl,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Parses `args` (program name first) and runs the command.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: &OutputArgs, bytes: Vec<u8>) -> Result<()> {
    match &out.output {
        Some(path) => io::write_atomic(path, &bytes),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(&bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn render_records(records: &[RepRecord], format: Format) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    match format {
        Format::Json => io::write_jsonl(records, &mut buf)?,
        Format::Csv => io::write_csv(records, &mut buf)?,
        Format::Text => {
            for (i, r) in records.iter().enumerate() {
                if i > 0 {
                    buf.push(b'\n');
                }
                io::write_text(r, &mut buf)?;
            }
        }
    }
    Ok(buf)
}

fn load(path: &Path) -> Result<(GroupContext, StringRep)> {
    let json = RepJson::read(path)?;
    let ctx = json.context()?;
    let rep = json.to_rep(&ctx)?;
    Ok((ctx, rep))
}

fn threads(arg: Option<u64>) -> Result<usize> {
    if let Some(t) = arg {
        return Ok(t as usize);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t > 0)
            .ok_or_else(|| Error::Parse(format!("{THREADS_ENV}={v:?} is not a positive integer"))),
        Err(_) => Ok(1),
    }
}

pub fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct(args) => {
            let (ctx, rep) = match (args.class1, args.class2, &args.extend) {
                (Some(p), _, extend) => {
                    let (ctx, rep) = class1_map(p)?;
                    let rep = match extend {
                        Some(Some(_)) => {
                            return Err(Error::Parse(
                                "--extend takes no file together with --class1".into(),
                            ))
                        }
                        Some(None) => extend_map(&ctx, &rep)?,
                        None => rep,
                    };
                    (ctx, rep)
                }
                (None, Some(p), _) => class2_rank4(p)?,
                (None, None, Some(Some(path))) => {
                    let (ctx, rep) = load(path)?;
                    let rep4 = extend_map(&ctx, &rep)?;
                    (ctx, rep4)
                }
                _ => return Err(Error::Parse("--extend needs a file unless --class1 is given".into())),
            };
            emit(&args.out, render_records(&[RepRecord::new(&ctx, &rep)?], args.out.format)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Extend { input, out } => {
            let (ctx, rep) = load(&input)?;
            let rep4 = extend_map(&ctx, &rep)?;
            emit(&out, render_records(&[RepRecord::new(&ctx, &rep4)?], out.format)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate {
            input,
            no_generation,
            out,
        } => {
            let (ctx, rep) = load(&input)?;
            let report = validate(&ctx, &rep, !no_generation)?;
            let bytes = match out.format {
                Format::Json | Format::Csv => {
                    let mut b = serde_json::to_vec(&report)?;
                    b.push(b'\n');
                    b
                }
                Format::Text => {
                    let mut b = Vec::new();
                    writeln!(b, "{}", if report.ok { "valid" } else { "invalid" })?;
                    for v in &report.failures {
                        writeln!(b, "  {v}")?;
                    }
                    b
                }
            };
            emit(&out, bytes)?;
            Ok(if report.ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Info {
            input,
            flag_graph,
            out,
        } => {
            let (ctx, rep) = load(&input)?;
            if let Some(path) = flag_graph {
                let mut buf = Vec::new();
                write_flag_graph(&ctx, &rep, &mut buf)?;
                io::write_atomic(&path, &buf)?;
            }
            emit(&out, render_records(&[RepRecord::new(&ctx, &rep)?], out.format)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Census {
            group,
            rank,
            stats,
            out,
        } => {
            let ctx = GroupContext::enumerate(group.q, group.family.into())?;
            let opts = SearchOptions {
                threads: threads(group.threads)?,
                ..SearchOptions::default()
            };
            let census = search_in(&ctx, rank as usize, opts)?;
            let records = io::census_records(&ctx, &census)?;
            emit(&out, render_records(&records, out.format)?)?;
            let stats_json = serde_json::json!({
                "q": census.q,
                "family": census.family,
                "rank": census.rank,
                "reps": census.reps.len(),
                "stats": census.stats,
            });
            match stats {
                Some(path) => io::write_atomic(&path, format!("{stats_json}\n").as_bytes())?,
                None => eprintln!("{stats_json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { group, out } => {
            let ctx = GroupContext::enumerate(group.q, group.family.into())?;
            let report = verify_structure_in(&ctx, threads(group.threads)?)?;
            emit(&out, render_report(&report, out.format)?)?;
            Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn render_report(report: &TheoremReport, format: Format) -> Result<Vec<u8>> {
    let mut b = Vec::new();
    match format {
        Format::Json => {
            serde_json::to_writer(&mut b, report)?;
            b.push(b'\n');
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut b);
            let row = |w: &mut csv::Writer<_>, r: &[String]| {
                w.write_record(r).map_err(|e| Error::Parse(e.to_string()))
            };
            row(&mut w, &["check", "applicable", "examined", "pass", "counterexamples", "scope"].map(String::from))?;
            for c in &report.checks {
                row(
                    &mut w,
                    &[
                        c.name.clone(),
                        c.applicable.to_string(),
                        c.examined.to_string(),
                        c.pass.to_string(),
                        c.counterexamples.len().to_string(),
                        c.scope.clone(),
                    ],
                )?;
            }
            w.flush()?;
        }
        Format::Text => {
            writeln!(b, "{}({})", report.family, report.q)?;
            for c in &report.checks {
                let status = match (c.applicable, c.pass) {
                    (false, _) => "n/a ",
                    (true, true) => "PASS",
                    (true, false) => "FAIL",
                };
                writeln!(b, "  {status} {:<28} examined {:>5}  {}", c.name, c.examined, c.scope)?;
            }
        }
    }
    Ok(b)
}
