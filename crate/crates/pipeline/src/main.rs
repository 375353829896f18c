use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use sclab::config::{FamilySource, PipelineConfig, OUT_ENV};
use sclab::report::audit;
use sclab::run::run_through;
use sclab_core::graph::io::write_graph;
use sclab_core::graph::{random_regular, Graph, DEFAULT_RETRY_BUDGET};
use sclab_core::labeling::io::parse_labeled;
use sclab_core::labeling::Word;
use sclab_core::presentation::{cayley_patch, is_trivial, GraphicalPresentation, Triviality};
use sclab_core::ratio::{self, Rational};

const EXIT_INVALID: u8 = 1;
const EXIT_STAGE: u8 = 2;
const EXIT_INTEGRITY: u8 = 3;

#[derive(Parser)]
#[command(name = "sclab", version, about = "Small cancellation labellings, covers, walls and Cayley patches")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a cycle or a random regular graph.
    Generate(GenerateArgs),
    /// Check the family conditions and compute the constants.
    Validate(StageArgs),
    /// Build product labellings (or accept labeled inputs).
    Label(StageArgs),
    /// Independent repeat and piece scan of the labellings.
    Verify(StageArgs),
    /// Homology covers of the labeled members.
    Cover(StageArgs),
    /// Fiber walls on the covers.
    Walls(StageArgs),
    /// Walling certificate and properness check.
    Certify(StageArgs),
    /// Ball of the Cayley graph of a graphical presentation.
    Cayley(CayleyArgs),
    /// Decide whether a word is trivial.
    Triviality(TrivialityArgs),
    /// Full pipeline from a configuration file.
    Run(RunArgs),
    /// Re-check a finished run and print its report.
    Report(ReportArgs),
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, conflicts_with = "random")]
    cycle: Option<usize>,
    /// Vertex count of a random regular graph.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 3)]
    degree: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    min_girth: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StageArgs {
    /// Graph or labeled graph files, in family order.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    degree: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    intra_alphabet: Option<u64>,
    #[arg(long)]
    inter_alphabet: Option<u64>,
    #[arg(long)]
    max_rounds: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PresentationArgs {
    /// Labeled relator files.
    #[arg(long = "relator")]
    relators: Vec<PathBuf>,
    /// Generator count; defaults to the relators' alphabet.
    #[arg(long)]
    alphabet: Option<u64>,
}

#[derive(Args)]
struct CayleyArgs {
    #[command(flatten)]
    presentation: PresentationArgs,
    #[arg(long)]
    radius: usize,
    #[arg(long, default_value_t = 20_000)]
    vertex_cap: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TrivialityArgs {
    #[command(flatten)]
    presentation: PresentationArgs,
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = 10_000)]
    search_cap: usize,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    run_dir: PathBuf,
    #[arg(long)]
    json: bool,
}

/// Errors that mean the input was unusable.
#[derive(Debug)]
struct Invalid(String);

impl std::fmt::Display for Invalid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Invalid {}

fn invalid(msg: impl Into<String>) -> anyhow::Error {
    Invalid(msg.into()).into()
}

fn default_out(flag: Option<PathBuf>, cfg: Option<&PathBuf>, leaf: &str) -> PathBuf {
    flag.or_else(|| cfg.cloned())
        .or_else(|| std::env::var_os(OUT_ENV).map(|root| Path::new(&root).join(leaf)))
        .unwrap_or_else(|| PathBuf::from(format!("sclab-{leaf}")))
}

fn rational(s: &str) -> Result<Rational> {
    ratio::parse(s).map_err(|e| invalid(e.to_string()))
}

fn read_config(path: &Path) -> Result<PipelineConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display())).map_err(|e| invalid(format!("{e:#}")))?;
    PipelineConfig::parse(&text).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn stage(args: StageArgs, last: &str) -> Result<u8> {
    let mut cfg = match &args.config {
        Some(p) => read_config(p)?,
        None => PipelineConfig::with_family(FamilySource::Files(Vec::new())),
    };
    cfg.family = FamilySource::Files(args.files.clone());
    if let Some(v) = &args.lambda {
        cfg.lambda = rational(v)?;
    }
    if let Some(v) = &args.beta {
        cfg.beta = rational(v)?;
    }
    if let Some(v) = args.degree {
        cfg.degree = v;
    }
    if let Some(v) = args.seed {
        cfg.seed = v;
    }
    if let Some(v) = args.intra_alphabet {
        cfg.intra_alphabet = v;
    }
    if let Some(v) = args.inter_alphabet {
        cfg.inter_alphabet = v;
    }
    if let Some(v) = args.max_rounds {
        cfg.max_rounds = v;
    }
    cfg.check().map_err(|e| invalid(e.to_string()))?;
    let out = default_out(args.out, cfg.out.as_ref(), last);
    execute(&cfg, &out, last)
}

fn execute(cfg: &PipelineConfig, out: &Path, last: &str) -> Result<u8> {
    let report = run_through(cfg, out, last).with_context(|| format!("writing to {}", out.display()))?;
    print!("{}", report.human());
    println!("artifacts in {}", out.display());
    Ok(if report.green { 0 } else { EXIT_STAGE })
}

fn presentation(args: &PresentationArgs) -> Result<GraphicalPresentation> {
    let mut rels = Vec::new();
    for p in &args.relators {
        let text = std::fs::read_to_string(p).map_err(|e| invalid(format!("{}: {e}", p.display())))?;
        rels.push(parse_labeled(&text).map_err(|e| invalid(format!("{}: {e}", p.display())))?);
    }
    let size = match args.alphabet {
        Some(s) => s,
        None => rels.first().map(|(_, l)| l.alphabet().size).ok_or_else(|| invalid("need --relator or --alphabet"))?,
    };
    GraphicalPresentation::new(size, rels).map_err(|e| invalid(e.to_string()))
}

fn generate(args: GenerateArgs) -> Result<u8> {
    let g = match (args.cycle, args.random) {
        (Some(n), None) if n >= 1 => Graph::cycle(n).with_name(format!("C{n}")),
        (None, Some(n)) => random_regular(n, args.degree, args.seed, args.min_girth, DEFAULT_RETRY_BUDGET)
            .map_err(|e| invalid(e.to_string()))?
            .with_name(format!("rr{}d{}s{}", n, args.degree, args.seed)),
        _ => return Err(invalid("give exactly one of --cycle N (N >= 1) or --random N")),
    };
    let text = write_graph(&g);
    match args.out {
        Some(p) => std::fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Generate(a) => generate(a),
        Command::Validate(a) => stage(a, "validate"),
        Command::Label(a) => stage(a, "label"),
        Command::Verify(a) => stage(a, "verify"),
        Command::Cover(a) => stage(a, "cover"),
        Command::Walls(a) => stage(a, "walls"),
        Command::Certify(a) => stage(a, "certify"),
        Command::Cayley(a) => {
            let p = presentation(&a.presentation)?;
            let patch = cayley_patch(&p, a.radius, a.vertex_cap);
            let dump = patch.dump();
            match a.out {
                Some(path) => std::fs::write(&path, dump).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{dump}"),
            }
            eprintln!(
                "{} vertices, exact {}, presentation certified C'(1/24): {}",
                patch.vertices.len(),
                patch.exact,
                p.certified()
            );
            Ok(if patch.exact { 0 } else { EXIT_STAGE })
        }
        Command::Triviality(a) => {
            let p = presentation(&a.presentation)?;
            let w = Word::parse(&a.word).map_err(invalid)?;
            if let Some(l) = w.letters().iter().find(|l| !p.alphabet.contains(**l)) {
                return Err(invalid(format!("letter {l} outside the alphabet")));
            }
            let answer = match is_trivial(&p, &w, a.search_cap) {
                Triviality::Yes => "yes",
                Triviality::No => "no",
                Triviality::Unknown => "unknown",
            };
            println!("{answer}");
            Ok(0)
        }
        Command::Run(a) => {
            let cfg = read_config(&a.config)?;
            let out = default_out(a.out, cfg.out.as_ref(), "run");
            execute(&cfg, &out, "explore")
        }
        Command::Report(a) => {
            let audit = match audit(&a.run_dir) {
                Ok(x) => x,
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(EXIT_INTEGRITY);
                }
            };
            if a.json {
                println!("{}", serde_json::to_string_pretty(&audit)?);
            } else {
                print!("{}", audit.human());
            }
            Ok(audit.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Invalid>().is_some() {
                ExitCode::from(EXIT_INVALID)
            } else {
                ExitCode::from(EXIT_STAGE)
            }
        }
    }
}
