use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use polycyclic::binmap::{image_code, BinaryRecord, MapKind};
use polycyclic::code::{build_code, validate_triple, AdditiveCode, CodeError, CodeRecord};
use polycyclic::distance::{min_distance, DistanceOptions, DistanceSummary, DEFAULT_MAX_W};
use polycyclic::dual::{dual, is_ideal, DualKind};
use polycyclic::gf2poly::BinPoly;
use polycyclic::quantum::{css, css_from_dual_containing, CssOptions};
use polycyclic::ring::{Chirality, RingContext, ShiftKind};
use polycyclic::search::{run_search_jsonl, ASource, Baseline, SearchConfig, Stage};
use polycyclic::tables::{reproduce_from, TableId};

#[derive(Parser)]
#[command(name = "polycyclic", version, about = "Additive polycyclic codes over GF(4)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a code from its generator triple and print its record.
    Construct(CodeArgs),
    /// Check the generator conditions; exits nonzero naming the violated one.
    Validate(CodeArgs),
    /// Print parameters and structure of a code.
    Info(CodeArgs),
    /// Compute the minimum symbol distance and append it to the record.
    Distance {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = DEFAULT_MAX_W)]
        max_w: usize,
    },
    /// Compute a dual code.
    Dual {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value = "hermitian")]
        kind: DualKind,
    },
    /// Map to a binary linear code with W, T or L.
    Map {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        kind: MapKind,
        /// Skip the binary minimum distance.
        #[arg(long)]
        no_distance: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_W)]
        max_w: usize,
    },
    /// CSS quantum code from binary records (output of `map`).
    Css {
        /// C1; reads stdin when omitted or "-".
        #[arg(long)]
        input: Option<PathBuf>,
        /// C2; when omitted C1 is used alone (dual-containing or self-orthogonal).
        #[arg(long)]
        c2: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_MAX_W)]
        max_w: usize,
    },
    /// Rebuild a shipped table and compare every row with the printed parameters.
    ReproduceTable {
        #[arg(long)]
        id: TableId,
        /// Directory with table{1,2,3}.csv and errata.csv instead of the built-in copies.
        #[arg(long)]
        data_dir: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_W)]
        max_w: usize,
    },
    /// Search for codes; writes JSON lines and a summary on stderr.
    Search(SearchArgs),
}

#[derive(Args, Clone)]
struct CodeArgs {
    /// Code length; checked against the multinomial when given.
    #[arg(long)]
    n: Option<usize>,
    /// x^n - a, e.g. "x^7 + x^6 + x^5 + x^3 + 1".
    #[arg(long)]
    multinomial: Option<String>,
    #[arg(long)]
    g1: Option<String>,
    #[arg(long)]
    g2: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long, default_value = "right")]
    chirality: Chirality,
    /// Code record (JSON, or a search record line) instead of flags; "-" for stdin.
    #[arg(long, conflicts_with_all = ["multinomial", "g1", "g2", "b"])]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum StageArg {
    Maps,
    Css,
}

#[derive(Args)]
struct SearchArgs {
    /// JSON search config; flags given explicitly override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Upper end of the length range (defaults to --n).
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    min_d: Option<usize>,
    #[arg(long)]
    min_dim2: Option<usize>,
    #[arg(long)]
    max_g1_deg: Option<usize>,
    #[arg(long)]
    max_b_deg: Option<usize>,
    #[arg(long)]
    g2_samples: Option<usize>,
    /// Random induction polynomials per length.
    #[arg(long, conflicts_with = "exhaustive_a_deg")]
    samples: Option<usize>,
    /// Every induction polynomial of degree up to this bound.
    #[arg(long)]
    exhaustive_a_deg: Option<usize>,
    /// Fixed multinomials x^n - a (repeatable); replaces the length range.
    #[arg(long)]
    multinomial: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    stages: Vec<StageArg>,
    #[arg(long)]
    max_w: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    chirality: Option<Chirality>,
    /// CSV baseline with header n,k,d.
    #[arg(long)]
    baseline: Option<PathBuf>,
    /// Add unix timestamps to records (output is then not reproducible).
    #[arg(long)]
    timestamp: bool,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn read_input(path: Option<&Path>) -> Result<String> {
    let mut s = String::new();
    match path {
        None => {
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
        }
        Some(p) if p == Path::new("-") => {
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
        }
        Some(p) => {
            s = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        }
    }
    Ok(s)
}

/// Accepts a code record, or any object holding one under "code".
fn parse_code_record(text: &str) -> Result<CodeRecord> {
    let v: Value = serde_json::from_str(text.trim()).context("input is not JSON")?;
    let obj = match v.get("code") {
        Some(inner) if inner.is_object() => inner.clone(),
        _ => v,
    };
    serde_json::from_value(obj).context("input is not a code record")
}

fn parse_binary_record(text: &str) -> Result<BinaryRecord> {
    let v: Value = serde_json::from_str(text.trim()).context("input is not JSON")?;
    let obj = match v.get("binary") {
        Some(inner) if inner.is_object() => inner.clone(),
        _ => v,
    };
    serde_json::from_value(obj).context("input is not a binary code record")
}

fn poly(name: &str, text: &Option<String>) -> Result<Option<BinPoly>> {
    text.as_deref()
        .map(|t| BinPoly::parse(t).with_context(|| format!("parsing {name} {t:?}")))
        .transpose()
}

struct Parsed {
    ctx: RingContext,
    g1: Option<BinPoly>,
    g2: BinPoly,
    b: Option<BinPoly>,
    chirality: Chirality,
}

fn parse_flags(args: &CodeArgs) -> Result<Parsed> {
    let Some(m) = poly("multinomial", &args.multinomial)? else {
        bail!("--multinomial is required (or pass a record with --input)");
    };
    let ctx = RingContext::from_multinomial(&m)?;
    if let Some(n) = args.n {
        if n != ctx.n() {
            bail!("--n {n} does not match the multinomial degree {}", ctx.n());
        }
    }
    Ok(Parsed {
        ctx,
        g1: poly("g1", &args.g1)?,
        g2: poly("g2", &args.g2)?.unwrap_or_else(BinPoly::zero),
        b: poly("b", &args.b)?,
        chirality: args.chirality,
    })
}

/// The code and, when read from a record, its stored distance.
fn load_code(args: &CodeArgs) -> Result<(AdditiveCode, Option<usize>)> {
    if args.multinomial.is_some() {
        let p = parse_flags(args)?;
        let code = build_code(&p.ctx, p.g1.as_ref(), &p.g2, p.b.as_ref(), p.chirality)?;
        return Ok((code, None));
    }
    let rec = parse_code_record(&read_input(args.input.as_deref())?)?;
    let code = rec.to_code()?;
    Ok((code, rec.d))
}

fn run(cmd: Command) -> Result<ExitCode> {
    match cmd {
        Command::Construct(args) => {
            let (code, d) = load_code(&args)?;
            print_json(&CodeRecord::from_code(&code, d))?;
        }
        Command::Validate(args) => return validate(&args),
        Command::Info(args) => {
            let (code, d) = load_code(&args)?;
            let rec = CodeRecord::from_code(&code, d);
            print_json(&json!({
                "parameters": rec.parameters(),
                "case": code.case(),
                "t1_deg_b": code.t1(),
                "t2_deg_g1": code.t2(),
                "log2_size": code.dim2(),
                "basis_rank": code.space().dim2(),
                "alpha_closed": code.space().is_alpha_closed(),
                "record": rec,
            }))?;
        }
        Command::Distance { code: args, max_w } => {
            let (code, _) = load_code(&args)?;
            let opts = DistanceOptions {
                max_w,
                ..DistanceOptions::default()
            };
            let dist = min_distance(code.space(), &opts)?;
            print_json(&json!({
                "code": CodeRecord::from_code(&code, dist.d()),
                "distance": DistanceSummary::from_f4(&dist),
            }))?;
        }
        Command::Dual { code: args, kind } => {
            let (code, _) = load_code(&args)?;
            let du = dual(&code, kind);
            let a = code.induction_vector();
            let mut out = json!({
                "code": CodeRecord::from_code(&code, None),
                "dual": du.to_record(),
            });
            match kind {
                DualKind::HermitianTrace => {
                    out["sequential"] = json!(du.space.is_invariant(ShiftKind::Sequential, &a));
                }
                DualKind::Annihilator | DualKind::ZeroDual => {
                    out["ideal"] = json!(is_ideal(code.ctx(), code.chirality(), &du.space));
                }
            }
            print_json(&out)?;
        }
        Command::Map {
            code: args,
            kind,
            no_distance,
            max_w,
        } => {
            let (code, _) = load_code(&args)?;
            let mut img = image_code(kind, code.space());
            img.analyze();
            let d = if no_distance || img.k() == 0 {
                None
            } else {
                let opts = DistanceOptions {
                    max_w,
                    ..DistanceOptions::default()
                };
                img.min_distance(&opts)?.d()
            };
            print_json(&json!({
                "map": kind,
                "code": CodeRecord::from_code(&code, None),
                "binary": img.to_record(d),
            }))?;
        }
        Command::Css { input, c2, max_w } => {
            let c1 = parse_binary_record(&read_input(input.as_deref())?)?.to_code()?;
            let opts = CssOptions {
                distance: DistanceOptions {
                    max_w,
                    ..DistanceOptions::default()
                },
                ..CssOptions::default()
            };
            let q = match c2 {
                Some(p) => {
                    let c2 = parse_binary_record(&read_input(Some(&p))?)?.to_code()?;
                    css(&c1, &c2, &opts)?
                }
                None => css_from_dual_containing(&c1, &opts)?,
            };
            print_json(&json!({ "parameters": q.parameters(), "quantum": q }))?;
        }
        Command::ReproduceTable {
            id,
            data_dir,
            json,
            max_w,
        } => {
            let opts = DistanceOptions {
                max_w,
                ..DistanceOptions::default()
            };
            let report = reproduce_from(id, data_dir.as_deref(), &opts)?;
            if json {
                print_json(&report)?;
            } else {
                print!("{}", report.render());
            }
            return Ok(if report.ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            });
        }
        Command::Search(args) => search(args)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn validate(args: &CodeArgs) -> Result<ExitCode> {
    let outcome: Result<(), CodeError> = if args.multinomial.is_some() {
        let p = parse_flags(args)?;
        validate_triple(&p.ctx, p.g1.as_ref(), &p.g2, p.b.as_ref())
    } else {
        let rec = parse_code_record(&read_input(args.input.as_deref())?)?;
        rec.to_code().map(|_| ())
    };
    match outcome {
        Ok(()) => {
            print_json(&json!({ "valid": true }))?;
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            let condition = match &e {
                CodeError::Validation(c) => Some(c.to_string()),
                _ => None,
            };
            print_json(&json!({ "valid": false, "condition": condition, "error": e.to_string() }))?;
            eprintln!("invalid: {e}");
            Ok(ExitCode::FAILURE)
        }
    }
}

fn search(args: SearchArgs) -> Result<()> {
    let mut config: SearchConfig = match &args.config {
        Some(p) => serde_json::from_str(&read_input(Some(p))?).context("parsing search config")?,
        None => SearchConfig::default(),
    };
    if let Some(n) = args.n {
        config.n_min = n;
        config.n_max = args.n_max.unwrap_or(n);
    } else if let Some(m) = args.n_max {
        config.n_max = m;
    }
    macro_rules! set {
        ($($field:ident),*) => { $(if let Some(v) = args.$field { config.$field = v; })* };
    }
    set!(seed, min_d, min_dim2, g2_samples, max_w);
    if args.max_g1_deg.is_some() {
        config.max_g1_deg = args.max_g1_deg;
    }
    if args.max_b_deg.is_some() {
        config.max_b_deg = args.max_b_deg;
    }
    if args.threads.is_some() {
        config.threads = args.threads;
    }
    if let Some(c) = args.chirality {
        config.chirality = c;
    }
    if !args.multinomial.is_empty() {
        config.a_source = ASource::Fixed {
            multinomials: args.multinomial.clone(),
        };
    } else if let Some(d) = args.exhaustive_a_deg {
        config.a_source = ASource::Exhaustive { max_deg: d };
    } else if let Some(s) = args.samples {
        config.a_source = ASource::Random { samples: s };
    }
    if !args.stages.is_empty() {
        config.stages = args
            .stages
            .iter()
            .map(|s| match s {
                StageArg::Maps => Stage::Maps,
                StageArg::Css => Stage::Css,
            })
            .collect();
    }
    config.timestamp |= args.timestamp;
    let baseline = args
        .baseline
        .as_deref()
        .map(|p| Baseline::from_path(p).with_context(|| format!("loading baseline {}", p.display())))
        .transpose()?;

    let summary = match &args.out {
        Some(p) => {
            let file = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            run_search_jsonl(&config, baseline.as_ref(), BufWriter::new(file))?
        }
        None => run_search_jsonl(&config, baseline.as_ref(), io::stdout().lock())?,
    };
    eprintln!("{}", serde_json::to_string(&summary)?);
    Ok(())
}
