//! Command-line driver: validation, operator words, statistics,
//! enumeration and graph export, embeddings, the lattice-side action,
//! tropical expression tools, and the verification suites.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use d6spin::coherent::{self, DecompositionJson};
use d6spin::crystal::{apply_word, CrystalElement, LevelSpec, WordOp};
use d6spin::explore::{enumerate_level, export_dot, CrystalGraph};
use d6spin::lattice::Node;
use d6spin::trop::{check_equiv, parse_rational, tropicalize, Assignment, EquivResult};
use d6spin::ud::{apply_ec, omega, omega_inv, UdPoint, VAR_NAMES};
use d6spin::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(name = "d6spin", about = "spin-node crystal calculator", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an element file against the constraints of a level.
    Validate {
        #[arg(long)]
        level: String,
        #[arg(long, value_name = "file.json")]
        r#in: PathBuf,
    },
    /// Apply a comma-separated operator word such as e0,f3,f3,e5.
    Apply {
        #[arg(long)]
        level: String,
        #[arg(long)]
        word: String,
        #[arg(long, value_name = "file.json")]
        r#in: PathBuf,
    },
    /// Print the epsilon, phi and weight vectors of an element.
    Stats {
        #[arg(long)]
        level: String,
        #[arg(long, value_name = "file.json")]
        r#in: PathBuf,
    },
    /// Enumerate a finite level by two routes and optionally export it.
    Enumerate {
        #[arg(long)]
        level: i64,
        #[arg(long, value_name = "out.dot")]
        dot: Option<PathBuf>,
        #[arg(long, value_name = "out.json")]
        json: Option<PathBuf>,
    },
    /// List the minimal elements of a finite level.
    Minimal {
        #[arg(long)]
        level: i64,
    },
    /// Embed an element into the limit crystal over a minimal element.
    Embed {
        #[arg(long)]
        level: i64,
        #[arg(long, value_name = "file.json")]
        b0: PathBuf,
        #[arg(long, value_name = "file.json")]
        r#in: PathBuf,
    },
    /// Decompose a nonzero limit element as level, minimal element, element.
    Decompose {
        #[arg(long, value_name = "file.json")]
        r#in: PathBuf,
    },
    /// Map a limit element to its lattice point.
    Omega {
        #[arg(long, value_name = "element.json")]
        r#in: PathBuf,
    },
    /// Map a lattice point back to its limit element.
    OmegaInv {
        #[arg(long, value_name = "point.json")]
        r#in: PathBuf,
    },
    /// Apply the one-parameter node action to a lattice point.
    UdApply {
        #[arg(long)]
        k: usize,
        #[arg(long, allow_negative_numbers = true)]
        c: i64,
        #[arg(long, value_name = "point.json")]
        r#in: PathBuf,
    },
    /// Tropical expression tools.
    Trop {
        #[command(subcommand)]
        command: TropCommand,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum TropCommand {
    /// Parse a positive rational expression, tropicalize, and evaluate.
    Eval {
        #[arg(long, value_name = "file")]
        expr: PathBuf,
        /// JSON object of variable assignments; unassigned variables are 0.
        #[arg(long, value_name = "file.json")]
        assign: Option<PathBuf>,
    },
    /// Check two expressions for equality by sampling.
    Equiv {
        #[arg(long, value_name = "file")]
        expr: PathBuf,
        #[arg(long, value_name = "file")]
        expr2: PathBuf,
        #[arg(long, default_value_t = 50)]
        r#box: i64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// On-disk element form: the level and six rows of six entries, row `r`
/// holding the entries at columns `r..=r+5`.
#[derive(Serialize, Deserialize)]
struct ElementFile {
    level: LevelSpec,
    b: CrystalElement,
}

/// On-disk point form: either a bare array of 15 integers or an object
/// with an `x` field. Output always carries the coordinate names.
#[derive(Deserialize)]
#[serde(untagged)]
enum PointFile {
    Bare([i64; 15]),
    Named { x: [i64; 15] },
}

fn parse_level(text: &str) -> Result<LevelSpec, String> {
    if text == "inf" {
        return Ok(LevelSpec::Infinity);
    }
    text.parse::<i64>()
        .ok()
        .and_then(LevelSpec::finite)
        .ok_or_else(|| format!("bad level {text:?}: expected a nonnegative integer or \"inf\""))
}

fn read_element(path: &Path, level: LevelSpec) -> Result<CrystalElement, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: ElementFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if file.level != level {
        return Err(format!(
            "{}: file is marked level {} but level {} was requested",
            path.display(),
            file.level,
            level
        ));
    }
    Ok(file.b)
}

fn read_point(path: &Path) -> Result<UdPoint, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: PointFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok(match file {
        PointFile::Bare(x) | PointFile::Named { x } => UdPoint::new(x),
    })
}

fn element_json(level: LevelSpec, b: &CrystalElement) -> String {
    serde_json::to_string_pretty(&ElementFile { level, b: *b }).expect("serializable")
}

fn point_json(p: &UdPoint) -> String {
    serde_json::to_string_pretty(&json!({ "x": p.x, "names": VAR_NAMES })).expect("serializable")
}

fn parse_word(text: &str) -> Result<Vec<(WordOp, Node)>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|token| {
            let (op, rest) = token.split_at(1);
            let op = match op {
                "e" => WordOp::Raise,
                "f" => WordOp::Lower,
                _ => return Err(format!("bad operator token {token:?}")),
            };
            let k: usize = rest.parse().map_err(|_| format!("bad operator token {token:?}"))?;
            let node = Node::try_from(k).map_err(|e| e.to_string())?;
            Ok((op, node))
        })
        .collect()
}

fn run() -> Result<ExitCode, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { level, r#in } => {
            let level = parse_level(&level)?;
            let text =
                fs::read_to_string(&r#in).map_err(|e| format!("{}: {e}", r#in.display()))?;
            let file: ElementFile =
                serde_json::from_str(&text).map_err(|e| format!("{}: {e}", r#in.display()))?;
            let mut violations: Vec<String> = Vec::new();
            if file.level != level {
                violations.push(format!(
                    "level-mismatch: file says {}, requested {}",
                    file.level, level
                ));
            }
            violations.extend(file.b.validate(level).iter().map(|v| v.to_string()));
            if violations.is_empty() {
                println!("ok");
                Ok(ExitCode::SUCCESS)
            } else {
                for v in &violations {
                    eprintln!("{v}");
                }
                Ok(ExitCode::from(1))
            }
        }
        Command::Apply { level, word, r#in } => {
            let level = parse_level(&level)?;
            let b = read_element(&r#in, level)?;
            if let Some(v) = b.validate(level).first() {
                return Err(format!("input element invalid: {v}"));
            }
            let word = parse_word(&word)?;
            match apply_word(&b, level, &word) {
                Some(out) => {
                    println!("{}", element_json(level, &out));
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("none");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Stats { level, r#in } => {
            let level = parse_level(&level)?;
            let b = read_element(&r#in, level)?;
            if let Some(v) = b.validate(level).first() {
                return Err(format!("input element invalid: {v}"));
            }
            let eps = d6spin::crystal::epsilon_vector(&b, level);
            let phi = d6spin::crystal::phi_vector(&b, level);
            let wt = d6spin::crystal::weight_vector(&b);
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "eps": eps.0, "phi": phi.0, "wt": wt.0
                }))
                .unwrap()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { level, dot, json: json_out } => {
            if level < 0 {
                return Err("level must be nonnegative".into());
            }
            let elements = enumerate_level(level);
            println!("{} elements at level {level}", elements.len());
            if let Some(path) = json_out {
                let rows: Vec<&CrystalElement> = elements.iter().collect();
                fs::write(&path, serde_json::to_string_pretty(&rows).unwrap())
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            if let Some(path) = dot {
                let graph = CrystalGraph::build(&elements, LevelSpec::Finite(level));
                fs::write(&path, export_dot(&graph))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Minimal { level } => {
            if level < 1 {
                return Err("minimal elements need level >= 1".into());
            }
            let entries: Vec<serde_json::Value> = coherent::minimal_coeff_set(level)
                .into_iter()
                .map(|a| {
                    let b = coherent::minimal_from_coeffs(&a).expect("valid coefficients");
                    json!({ "a": a, "element": b })
                })
                .collect();
            println!("{}", serde_json::to_string_pretty(&entries).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Embed { level, b0, r#in } => {
            let spec = LevelSpec::Finite(level);
            let base = read_element(&b0, spec)?;
            let b = read_element(&r#in, spec)?;
            let out = coherent::embed(level, &base, &b).map_err(|e| e.to_string())?;
            println!("{}", element_json(LevelSpec::Infinity, &out));
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { r#in } => {
            let b = read_element(&r#in, LevelSpec::Infinity)?;
            let d = coherent::decompose(&b).map_err(|e| e.to_string())?;
            println!(
                "{}",
                serde_json::to_string_pretty(&DecompositionJson::from(d)).unwrap()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Omega { r#in } => {
            let b = read_element(&r#in, LevelSpec::Infinity)?;
            if let Some(v) = b.validate(LevelSpec::Infinity).first() {
                return Err(format!("input element invalid: {v}"));
            }
            println!("{}", point_json(&omega(&b)));
            Ok(ExitCode::SUCCESS)
        }
        Command::OmegaInv { r#in } => {
            let p = read_point(&r#in)?;
            println!("{}", element_json(LevelSpec::Infinity, &omega_inv(&p)));
            Ok(ExitCode::SUCCESS)
        }
        Command::UdApply { k, c, r#in } => {
            let node = Node::try_from(k).map_err(|e| e.to_string())?;
            let p = read_point(&r#in)?;
            println!("{}", point_json(&apply_ec(&p, node, c)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Trop { command } => run_trop(command),
        Command::Verify { suite, seed } => {
            let suite = Suite::parse(&suite)
                .ok_or_else(|| format!("unknown suite {suite:?}; use crystal|coherent|ud|iso|all"))?;
            let results = run_suite(suite, seed);
            let mut all_passed = true;
            for r in &results {
                println!("{r}");
                all_passed &= r.passed;
            }
            Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn run_trop(command: TropCommand) -> Result<ExitCode, String> {
    match command {
        TropCommand::Eval { expr, assign } => {
            let text =
                fs::read_to_string(&expr).map_err(|e| format!("{}: {e}", expr.display()))?;
            let rat = parse_rational(text.trim()).map_err(|e| e.to_string())?;
            let trop = tropicalize(&rat);
            let mut assignment: Assignment =
                trop.free_vars().into_iter().map(|v| (v, 0)).collect();
            if let Some(path) = assign {
                let text =
                    fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                let given: Assignment =
                    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
                assignment.extend(given);
            }
            let value = trop.eval(&assignment).map_err(|e| e.to_string())?;
            println!("{trop}");
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        TropCommand::Equiv { expr, expr2, r#box, trials, seed } => {
            let parse = |path: &Path| -> Result<_, String> {
                let text =
                    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                Ok(tropicalize(&parse_rational(text.trim()).map_err(|e| e.to_string())?))
            };
            let e1 = parse(&expr)?;
            let e2 = parse(&expr2)?;
            match check_equiv(&e1, &e2, r#box, trials, seed) {
                EquivResult::Equal => {
                    println!("equal");
                    Ok(ExitCode::SUCCESS)
                }
                EquivResult::Counterexample(a) => {
                    println!("counterexample {}", serde_json::to_string(&a).unwrap());
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(64)
        }
    }
}
