//! Command-line front end. Human-readable text goes to the given writer;
//! certificates go to `--json DIR` as `<claim_id>.json`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::certificate::Certificate;
use crate::coclique::{heuristic_coclique, max_coclique_exact};
use crate::error::{Error, Result};
use crate::golay::{PaperGenerators, N};
use crate::graph::{verify_srg, BinaryGraph};
use crate::kissing;
use crate::lift;
use crate::pipeline::{self, PipelineOptions};
use crate::quotient::{self, SIGMA};

#[derive(Debug, Parser)]
#[command(
    name = "kissing19",
    version,
    about = "Build and verify the 1280-word code and its kissing vectors"
)]
pub struct Cli {
    /// Write one `<claim_id>.json` certificate per claim into DIR.
    #[arg(long, global = true, value_name = "DIR")]
    pub json: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Iteration budget for randomized searches.
    #[arg(long, global = true, default_value_t = 20_000)]
    pub budget: u64,
    /// Base point file verified together with the added vectors.
    #[arg(long, global = true, value_name = "FILE")]
    pub base: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphChoice {
    /// Cayley graph on K/M.
    Clebsch,
    /// Difference graph on D with connection set S.
    GammaD,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the compiled-in generators against the extended Golay code.
    VerifyGolay,
    /// Print the five low-weight cosets of M.
    Table1,
    /// Print the Cayley graph on K/M and its srg certificate.
    Clebsch,
    /// Search for a maximum coclique.
    Cocliques {
        #[arg(long, value_enum, default_value = "clebsch")]
        graph: GraphChoice,
        /// Run the exact solver (Clebsch only).
        #[arg(long)]
        exact: bool,
        /// Start the heuristic from scratch instead of from the constructed code.
        #[arg(long)]
        no_seed_set: bool,
    },
    /// Build the 1280-word code and write it in code-file format.
    BuildCode {
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Check the minimum distance of a code file.
    CheckDistance {
        #[arg(long, value_name = "FILE")]
        input: PathBuf,
        #[arg(long, default_value_t = 5)]
        min: u32,
        /// Stop at the first pair below `--min` instead of computing the exact distance.
        #[arg(long)]
        fast: bool,
    },
    /// Write the sign vectors of a code file as a point file.
    EmitVectors {
        #[arg(long, value_name = "FILE")]
        code: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// Verify a point file is a kissing configuration.
    VerifyConfig {
        #[arg(long, value_name = "FILE")]
        points: PathBuf,
    },
    /// Run every stage in order.
    Run {
        #[arg(long)]
        all: bool,
    },
}

/// Parse `args` (including the program name) and run. Returns the exit code:
/// 0 iff every certificate passed, 1 on a failed certificate or error,
/// 2 on a usage error.
pub fn main_with<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    main_with(std::env::args_os(), &mut lock)
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let gens = PaperGenerators::compiled();
    let o = pipeline::with_threads(cli.threads, || dispatch(cli, &gens))??;
    out.write_all(o.text.as_bytes())?;
    for c in &o.certs {
        writeln!(out, "{c}")?;
    }
    out.write_all(o.footer.as_bytes())?;
    if let Some(dir) = &cli.json {
        write_certificates(dir, &o.certs)?;
    }
    Ok(if o.certs.iter().all(Certificate::passed) {
        0
    } else {
        1
    })
}

fn write_certificates(dir: &Path, certs: &[Certificate]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for c in certs {
        std::fs::write(dir.join(format!("{}.json", c.claim_id)), c.to_json())?;
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// What a subcommand prints: text, then certificate lines, then a footer.
#[derive(Default)]
struct Output {
    text: String,
    certs: Vec<Certificate>,
    footer: String,
}

impl Output {
    fn new(text: String, certs: Vec<Certificate>) -> Self {
        Self {
            text,
            certs,
            footer: String::new(),
        }
    }

    fn text(text: String) -> Self {
        Self::new(text, Vec::new())
    }
}

fn dispatch(cli: &Cli, gens: &PaperGenerators) -> Result<Output> {
    match &cli.command {
        Command::VerifyGolay => {
            let (report, certs) = pipeline::stage_golay(gens)?;
            Ok(Output::new(pretty(&report)?, certs))
        }
        Command::Table1 => {
            let (st, certs) = pipeline::stage_table1(gens)?;
            let mut text = String::new();
            for cell in &st.classification.cells {
                let words: Vec<String> = cell.words.iter().map(ToString::to_string).collect();
                text += &format!(
                    "{:<3} {:<12} {}\n",
                    cell.alias.unwrap_or("-"),
                    cell.image_label,
                    words.join(" ")
                );
            }
            Ok(Output::new(text, certs))
        }
        Command::Clebsch => {
            let q = quotient::build_clebsch(&SIGMA)?;
            let text = q.adjacency_bitstrings().join("\n") + "\n";
            Ok(Output::new(
                text,
                vec![verify_srg(&q, (16, 5, 0, 2)).with_id("lemma3.2")],
            ))
        }
        Command::Cocliques {
            graph,
            exact,
            no_seed_set,
        } => cocliques(cli, gens, *graph, *exact, *no_seed_set),
        Command::BuildCode { out } => {
            let (st, _) = pipeline::stage_table1(gens)?;
            let ((_, a), certs) = pipeline::stage_build_code(gens, &st)?;
            let file = lift::render_code_file(&a)?;
            let text = match out {
                Some(p) => {
                    std::fs::write(p, &file)?;
                    format!("wrote {} words to {}\n", a.len(), p.display())
                }
                None => file,
            };
            Ok(Output::new(text, certs))
        }
        Command::CheckDistance { input, min, fast } => {
            let body = std::fs::read_to_string(input)?;
            let cert = if *fast {
                let (_, code) = lift::parse_code_file(&body, N)?;
                let pair = lift::first_pair_below(&code, *min);
                Certificate::from_check(
                    "check_distance",
                    pair.map(|(x, y)| json!({"pair": [x, y], "distance": x.distance(y).ok()})),
                )
                .metric("size", code.len())
                .metric("required", *min)
                .metric("mode", "fast")
            } else {
                pipeline::check_distance(&body, *min)?
            };
            Ok(Output::new(String::new(), vec![cert]))
        }
        Command::EmitVectors { code, out } => {
            let body = std::fs::read_to_string(code)?;
            let (_, a) = lift::parse_code_file(&body, N)?;
            let vectors = kissing::emit_vectors(&a, &pipeline::code_digest(&body))?;
            std::fs::write(out, &vectors)?;
            let cert = kissing::verify_code_vectors(&a)?;
            Ok(Output::new(
                format!("wrote {} vectors to {}\n", a.len(), out.display()),
                vec![cert],
            ))
        }
        Command::VerifyConfig { points } => {
            let added = kissing::ingest_file(points)?;
            let base = match &cli.base {
                Some(p) => Some(kissing::ingest_file(p)?),
                None => None,
            };
            Ok(Output::new(
                String::new(),
                vec![pipeline::verify_config(&added, base.as_deref())?],
            ))
        }
        Command::Run { all } => {
            if !all {
                return Err(Error::Parse("`run` requires --all".into()));
            }
            let bundle = pipeline::run_pipeline(
                gens,
                &PipelineOptions {
                    base: cli.base.clone(),
                },
            );
            if let Some(dir) = &cli.json {
                bundle.write_json_dir(dir)?;
            }
            let summary = match bundle.first_failure() {
                None => format!("all {} certificates pass\n", bundle.certificates.len()),
                Some(c) => format!("first failing claim: {}\n", c.claim_id),
            };
            Ok(Output {
                text: String::new(),
                certs: bundle.certificates,
                footer: summary,
            })
        }
    }
}

fn cocliques(
    cli: &Cli,
    gens: &PaperGenerators,
    graph: GraphChoice,
    exact: bool,
    no_seed_set: bool,
) -> Result<Output> {
    let result = match graph {
        GraphChoice::Clebsch => {
            let q = quotient::build_clebsch(&SIGMA)?;
            if exact {
                max_coclique_exact(&q)?
            } else {
                heuristic_coclique(&q, cli.seed, cli.budget, None)?
            }
        }
        GraphChoice::GammaD => {
            let d = crate::golay::build_d(gens)?;
            let s = quotient::extract_s(&d)?;
            let g = BinaryGraph::difference(d.sorted_codewords()?, s.words())?;
            if exact {
                max_coclique_exact(&g)?
            } else if no_seed_set {
                heuristic_coclique(&g, cli.seed, cli.budget, None)?
            } else {
                let (st, _) = pipeline::stage_table1(gens)?;
                let ((_, a), _) = pipeline::stage_build_code(gens, &st)?;
                let seed_set: Vec<usize> =
                    a.words().iter().filter_map(|&w| g.vertex_of(w)).collect();
                heuristic_coclique(&g, cli.seed, cli.budget, Some(&seed_set))?
            }
        }
    };
    Ok(Output::text(pretty(&result)?))
}
