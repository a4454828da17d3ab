//! Batch driver: JSON in, JSON out.
//!
//! Exit status: 0 success, 1 verification failure, 2 inconclusive search, 3 usage error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

use grho::certificate::{replay, Certificate};
use grho::dyadic::Dyadic;
use grho::element::{parse_gen_word, GElement, Grho};
use grho::error::{ElementError, WitnessError};
use grho::labelling::{verify_quasi_periodicity, QPLabelling, Word};
use grho::structure::cellular_decompose;
use grho::witness::{fixtures, run_pipeline, TripleFile, WitnessBundle, WitnessConfig};

const CACHE_ENV: &str = "GRHO_LEVEL_CACHE";

#[derive(Parser, Serialize)]
#[command(name = "grho", version, about = "Exact computations in labelled PL groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
enum Command {
    /// The default quasi-periodic labelling.
    #[command(subcommand)]
    Labelling(LabellingCmd),
    /// Element tables, evaluation and equality.
    #[command(subcommand)]
    Element(ElementCmd),
    /// Cellular decomposition of a pair fixing a neighbourhood of 0.
    #[command(subcommand)]
    Structure(StructureCmd),
    /// The witness pipeline for a triple with trivial product.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Certificate replay.
    #[command(subcommand)]
    Cocycle(CocycleCmd),
}

#[derive(Subcommand, Serialize)]
enum LabellingCmd {
    /// Print the level-k word (cached under $GRHO_LEVEL_CACHE when set).
    Dump {
        #[arg(long)]
        level: usize,
        #[arg(long)]
        json: bool,
    },
    /// Recurrence gaps, inverse closure and periods on a level window.
    Verify {
        #[arg(long, default_value_t = 17)]
        max_len: usize,
        #[arg(long, default_value_t = 6)]
        window_level: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Serialize)]
enum ElementCmd {
    /// Evaluate a generator word at a dyadic point.
    Eval {
        #[arg(long)]
        word: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        json: bool,
    },
    /// Compare two elements, each a JSON dump or a JSON string holding a word.
    Equals {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write the table of a generator word.
    Dump {
        #[arg(long)]
        word: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Serialize)]
enum StructureCmd {
    Decompose {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
        #[arg(long, default_value_t = 6)]
        window: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Serialize)]
struct RunArgs {
    #[arg(long)]
    triple: PathBuf,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    cert: PathBuf,
    #[arg(long, default_value_t = 20000)]
    search_budget: usize,
    /// Fixed points are taken nearest to this dyadic.
    #[arg(long, default_value = "0")]
    target: String,
    #[arg(long, default_value = "1/8")]
    pad: String,
    /// A recorded generator word for h, verified instead of searched.
    #[arg(long)]
    h_word: Option<String>,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Serialize)]
enum WitnessCmd {
    /// Build, verify and certify; writes the bundle and the certificate.
    Run(RunArgs),
    /// Write a recorded fixture triple (A1, A2 or B) and print its settings.
    Fixture {
        #[arg(long)]
        name: String,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Serialize)]
enum CocycleCmd {
    Replay {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        evidence: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

/// A failure, classified by exit status.
enum Failure {
    Verify(String),
    Inconclusive(String),
    Usage(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Inconclusive(_) => 2,
            Failure::Usage(_) => 3,
        }
    }
}

impl From<ElementError> for Failure {
    fn from(e: ElementError) -> Self {
        match e {
            ElementError::Inconclusive(_) | ElementError::NoFixedPoint(_) => Failure::Inconclusive(e.to_string()),
            ElementError::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Verify(e.to_string()),
        }
    }
}

impl From<WitnessError> for Failure {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::Inconclusive(_) | WitnessError::FixedPointSearch(_) => {
                Failure::Inconclusive(e.to_string())
            }
            WitnessError::Element(inner) => inner.into(),
            _ => Failure::Verify(e.to_string()),
        }
    }
}

/// Every JSON output carries the tool version and a hash of the invocation.
#[derive(Serialize)]
struct Stamped<'a, T: Serialize> {
    tool_version: &'static str,
    config_hash: &'a str,
    #[serde(flatten)]
    body: &'a T,
}

fn config_hash(cli: &Cli) -> String {
    let json = serde_json::to_vec(cli).expect("arguments serialize");
    hex::encode(Sha256::digest(json))
}

fn stamped<T: Serialize>(hash: &str, body: &T) -> String {
    let s = Stamped {
        tool_version: env!("CARGO_PKG_VERSION"),
        config_hash: hash,
        body,
    };
    serde_json::to_string_pretty(&s).expect("report serializes")
}

fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, contents).map_err(|e| Failure::Usage(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// An element file holds either a table dump or a JSON string with a generator word.
fn read_element(g: &Grho, path: &Path) -> Result<GElement, Failure> {
    let v: serde_json::Value = read_json(path)?;
    match v {
        serde_json::Value::String(w) => Ok(g.parse_word(&w)?),
        other => serde_json::from_value(other).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
    }
}

fn parse_dyadic(s: &str) -> Result<Dyadic, Failure> {
    s.parse().map_err(|e: grho::error::ParseError| Failure::Usage(e.to_string()))
}

fn print_out(json: bool, hash: &str, body: &impl Serialize, text: String) {
    if json {
        println!("{}", stamped(hash, body));
    } else {
        println!("{text}");
    }
}

fn level_word(rho: &QPLabelling, level: usize) -> Result<Word, Failure> {
    let Some(dir) = std::env::var_os(CACHE_ENV) else {
        return Ok(rho.level_word(level));
    };
    let path = Path::new(&dir).join(format!("level-{}-{level}.txt", rho.seed()));
    if let Ok(s) = fs::read_to_string(&path) {
        if let Ok(w) = s.trim().parse() {
            return Ok(w);
        }
    }
    let w = rho.level_word(level);
    fs::create_dir_all(&dir).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    write_atomic(&path, &w.to_string())?;
    Ok(w)
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let hash = config_hash(cli);
    match &cli.command {
        Command::Labelling(LabellingCmd::Dump { level, json }) => {
            let rho = QPLabelling::new();
            let w = level_word(&rho, *level)?;
            let body = serde_json::json!({"level": level, "length": w.len(), "word": w});
            print_out(*json, &hash, &body, w.to_string());
        }
        Command::Labelling(LabellingCmd::Verify {
            max_len,
            window_level,
            json,
        }) => {
            let rho = QPLabelling::new();
            let r = verify_quasi_periodicity(&rho, *max_len, *window_level);
            let text = format!(
                "window {} letters; gap({max_len}) = {}; inverse closure {}; period below half: {:?}",
                r.window_len,
                r.recurrence_gaps.get(max_len).copied().unwrap_or(0),
                r.inverse_closure,
                r.min_period
            );
            print_out(*json, &hash, &r, text);
            if !r.inverse_closure || r.min_period.is_some() {
                return Err(Failure::Verify("labelling window fails quasi-periodicity".into()));
            }
        }
        Command::Element(ElementCmd::Eval { word, x, json }) => {
            let g = Grho::with_defaults();
            let w = parse_gen_word(word).map_err(|e| Failure::Usage(e.to_string()))?;
            let x = parse_dyadic(x)?;
            let y = g.apply_word(&w, &x)?;
            let body = serde_json::json!({"word": word, "x": x.to_string(), "value": y.to_string()});
            print_out(*json, &hash, &body, y.to_string());
        }
        Command::Element(ElementCmd::Equals { a, b, json }) => {
            let g = Grho::with_defaults();
            let (ea, eb) = (read_element(&g, a)?, read_element(&g, b)?);
            let eq = g.equals(&ea, &eb)?;
            print_out(*json, &hash, &serde_json::json!({ "equal": eq }), eq.to_string());
            if !eq {
                return Err(Failure::Verify("elements differ".into()));
            }
        }
        Command::Element(ElementCmd::Dump { word, out }) => {
            let g = Grho::with_defaults();
            let e = g.parse_word(word)?;
            let s = serde_json::to_string_pretty(&e).expect("element serializes");
            match out {
                Some(p) => write_atomic(p, &s)?,
                None => println!("{s}"),
            }
        }
        Command::Structure(StructureCmd::Decompose { f, g: gp, window, json }) => {
            let g = Grho::with_defaults();
            let (ef, eg) = (read_element(&g, f)?, read_element(&g, gp)?);
            let d = cellular_decompose(&g, &ef, &eg, *window).map_err(|e| Failure::Verify(e.to_string()))?;
            let r = d.report(&g, &ef, &eg).map_err(|e| Failure::Verify(e.to_string()))?;
            let text = format!(
                "{} atoms in window, {} classes ({} nontrivial); recomposition f: {}, g: {}",
                r.atoms_in_window,
                r.classes.len(),
                r.nontrivial_classes.len(),
                r.recomposition_f,
                r.recomposition_g
            );
            print_out(*json, &hash, &r, text);
            if !(r.recomposition_f && r.recomposition_g) {
                return Err(Failure::Verify("recomposition failed".into()));
            }
        }
        Command::Witness(WitnessCmd::Run(args)) => {
            let g = Grho::with_defaults();
            let tf: TripleFile = read_json(&args.triple)?;
            let t = tf.resolve(&g)?;
            let mut cfg = WitnessConfig {
                target: parse_dyadic(&args.target)?,
                pad: parse_dyadic(&args.pad)?,
                h_word: args.h_word.clone(),
                ..WitnessConfig::default()
            };
            cfg.search.budget = args.search_budget;
            cfg.search.seed = args.seed;
            let out = run_pipeline(&g, &t, &cfg)?;
            write_atomic(&args.out, &stamped(&hash, &out.bundle))?;
            write_atomic(&args.cert, &stamped(&hash, &out.certificate))?;
            let summary = serde_json::json!({
                "k": out.bundle.k, "m": out.bundle.m, "l": out.bundle.l,
                "w": out.bundle.w, "h_word": out.bundle.h_word,
                "claims": out.claims.checks.len(), "replay": out.replay,
            });
            let text = format!(
                "k = {}, m = {}, l = {}, W = {}; {} checks passed; certificate of {} steps accepted",
                out.bundle.k,
                out.bundle.m,
                out.bundle.l,
                out.bundle.w,
                out.claims.checks.len(),
                out.replay.steps
            );
            print_out(args.json, &hash, &summary, text);
        }
        Command::Witness(WitnessCmd::Fixture { name, out }) => {
            let g = Grho::with_defaults();
            let all = fixtures::all(&g)?;
            let (_, t, cfg) = all
                .iter()
                .find(|(n, _, _)| n.eq_ignore_ascii_case(name))
                .ok_or_else(|| Failure::Usage(format!("unknown fixture {name:?} (A1, A2, B)")))?;
            let [a1, a2, a3] = t.a.clone().map(grho::witness::TripleEntry::Element);
            let tf = TripleFile { a1, a2, a3 };
            write_atomic(out, &serde_json::to_string_pretty(&tf).expect("triple serializes"))?;
            let mut flags = format!("--target {} --pad {}", cfg.target, cfg.pad);
            if let Some(h) = &cfg.h_word {
                flags.push_str(&format!(" --h-word \"{h}\""));
            }
            println!("{flags}");
        }
        Command::Cocycle(CocycleCmd::Replay { cert, evidence, json }) => {
            let g = Grho::with_defaults();
            let c: Certificate = read_json(cert)?;
            let b: WitnessBundle = read_json(evidence)?;
            match replay(&g, &c, &b.evidence()) {
                Ok(r) => {
                    let text = format!("accepted: {} steps, {} facts re-verified", r.steps, r.facts_verified);
                    print_out(*json, &hash, &r, text);
                }
                Err(e) => {
                    let body = serde_json::json!({"accepted": false, "error": e.to_string()});
                    print_out(*json, &hash, &body, format!("rejected: {e}"));
                    return Err(Failure::Verify(e.to_string()));
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Verify(m) | Failure::Inconclusive(m) | Failure::Usage(m) => eprintln!("grho: {m}"),
            }
            ExitCode::from(f.code())
        }
    }
}
