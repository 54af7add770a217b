use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use diameter_lab::bounds::{bound_report, BoundParams};
use diameter_lab::clm::{
    bl_decompose, complete_clm, example_hnp5, extend_nonpure, injective_clm, kk_split, legal_check, legal_double,
    max_clm_search, multicomplex_to_complex, LayeredComplex, LayeredMulticomplex, LegalSequence,
};
use diameter_lab::constructions::{
    barycentric_subdivision, complete_complex, corridor_2complex, hamiltonian_decomposition, iterated_join_corridor,
    nabla, PathStrategy, NABLA_ENCODING,
};
use diameter_lab::decomposability::{
    dk_obstruction_witness, is_k_decomposable, is_weakly_k_decomposable, provan_billera_check,
};
use diameter_lab::diameter::{dual_diameter, longest_induced_path_johnson, SearchMode};
use diameter_lab::experiments::{run_check, Scale, CHECKS};
use diameter_lab::nonrevisiting::{non_revisiting_path, sweep_all_pairs};
use diameter_lab::{Error, Facet, PureComplex};

#[derive(Parser)]
#[command(name = "diameter-lab", version, about = "Dual-graph diameters of pure complexes and multicomplexes")]
struct Cli {
    /// Seed for randomized steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complex and print it as JSON.
    Construct {
        #[command(subcommand)]
        kind: Construction,
        /// Also write the dual graph in DOT format.
        #[arg(long, global = true)]
        dot: Option<PathBuf>,
        /// Write the JSON here instead of stdout.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Structural report on a complex read from JSON.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Layered multicomplexes.
    Clm {
        #[command(subcommand)]
        action: ClmAction,
    },
    /// A non-revisiting facet path between two facets (comma-separated vertices).
    Path {
        file: PathBuf,
        from: Option<String>,
        to: Option<String>,
        /// Run every ordered pair instead.
        #[arg(long)]
        sweep: bool,
        #[arg(long)]
        allow_non_flag: bool,
    },
    /// Shedding-based decomposability.
    Decompose {
        file: Option<PathBuf>,
        #[arg(short, long, default_value_t = 0)]
        k: usize,
        #[arg(long)]
        weak: bool,
        #[arg(long)]
        budget: Option<u64>,
        /// Check the obstruction on nabla(A, B) instead of reading a file.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        obstruction: Option<Vec<usize>>,
    },
    /// Table of diameter bounds.
    Bounds {
        #[arg(short, long)]
        n: u64,
        #[arg(short, long)]
        d: u64,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        l: Option<u64>,
        #[arg(long)]
        delta: Option<u64>,
        #[arg(long)]
        csv: bool,
    },
    /// Exhaustive or randomized searches.
    Search {
        #[command(subcommand)]
        target: SearchTarget,
    },
    /// Run the numbered reproduction checks.
    VerifyPaper {
        #[arg(long, value_enum, default_value_t = ScaleArg::Full)]
        scale: ScaleArg,
        /// Only these check numbers.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Subcommand)]
enum Construction {
    Complete {
        n: usize,
        d: usize,
    },
    Corridor {
        n: usize,
    },
    Nabla {
        a: usize,
        b: usize,
    },
    /// Barycentric subdivision of the boundary of the d-simplex.
    SdBoundary {
        d: usize,
    },
    JoinCorridor {
        n: usize,
        d: usize,
        k: usize,
        #[arg(long, value_enum, default_value_t = StrategyArg::Vertical)]
        strategy: StrategyArg,
    },
    /// Edge-disjoint Hamiltonian cycles of K_{2k+1}.
    Hamiltonian {
        k: usize,
    },
}

#[derive(Subcommand)]
enum ClmAction {
    Complete {
        n: usize,
        d: usize,
    },
    Injective {
        n: usize,
        d: usize,
    },
    /// Validate a layered multicomplex and report its splits.
    Check {
        file: PathBuf,
        /// The file holds a layered complex rather than a multicomplex.
        #[arg(long)]
        sets: bool,
    },
    /// Replace a layered multicomplex by a layered complex.
    Substitute {
        file: PathBuf,
    },
    /// The non-pure family, extended `steps` times.
    Nonpure {
        #[arg(long, default_value_t = 0)]
        steps: usize,
    },
    /// Check a sequence of sets such as `1,2 1 -` (`-` is the empty set).
    Legal {
        #[arg(short, long)]
        n: usize,
        sets: Vec<String>,
        /// Print the doubled sequence for this `i` instead.
        #[arg(long)]
        double: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SearchTarget {
    Clm {
        n: usize,
        d: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    Johnson {
        n: usize,
        d: usize,
        #[arg(long)]
        budget: Option<u64>,
        /// Randomized restarts instead of the exact search.
        #[arg(long)]
        restarts: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Small,
    Full,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Vertical,
    Zigzag,
}

/// Exit code 1: a check ran and failed.
struct Failed(Value);

enum Outcome {
    Lib(Error),
    Io(String),
    Failed(Value),
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome::Lib(e)
    }
}

impl From<Failed> for Outcome {
    fn from(f: Failed) -> Self {
        Outcome::Failed(f.0)
    }
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| Outcome::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Outcome> {
    fs::write(path, text).map_err(|e| Outcome::Io(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<PureComplex, Outcome> {
    Ok(PureComplex::from_json(&read(path)?)?)
}

fn parse_facet(s: &str) -> Result<Facet, Outcome> {
    let vs = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| Outcome::Io(format!("bad vertex list {s:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Facet::new(vs)?)
}

fn parse_set(s: &str) -> Result<Vec<usize>, Outcome> {
    if s == "-" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|t| t.trim().parse().map_err(|_| Outcome::Io(format!("bad set {s:?}")))).collect()
}

fn dot(c: &PureComplex) -> String {
    let labels: Vec<String> =
        c.facets().iter().map(|f| f.vertices().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect();
    c.dual_graph().to_dot("dual", &labels)
}

fn complex_value(c: &PureComplex) -> Value {
    serde_json::to_value(c).expect("complex serializes")
}

fn run(cli: Cli) -> Result<Value, Outcome> {
    match cli.command {
        Command::Construct { kind, dot: dot_path, output } => {
            let (c, mut v) = match kind {
                Construction::Hamiltonian { k } => {
                    let h = hamiltonian_decomposition(k)?;
                    return Ok(serde_json::to_value(&h).expect("serializes"));
                }
                Construction::Complete { n, d } => {
                    let c = complete_complex(n, d);
                    let v = complex_value(&c);
                    (c, v)
                }
                Construction::Corridor { n } => {
                    let c = corridor_2complex(n)?;
                    let v = complex_value(&c);
                    (c, v)
                }
                Construction::Nabla { a, b } => {
                    let c = nabla(a, b)?;
                    let mut v = complex_value(&c);
                    v["encoding"] = json!(NABLA_ENCODING);
                    (c, v)
                }
                Construction::SdBoundary { d } => {
                    if d == 0 {
                        return Err(Outcome::Lib(Error::Invalid("d must be positive".into())));
                    }
                    let c = barycentric_subdivision(&complete_complex(d + 1, d)).complex;
                    let v = complex_value(&c);
                    (c, v)
                }
                Construction::JoinCorridor { n, d, k, strategy } => {
                    let s = match strategy {
                        StrategyArg::Vertical => PathStrategy::Vertical,
                        StrategyArg::Zigzag => PathStrategy::Zigzag,
                    };
                    let c = iterated_join_corridor(n, d, k, s)?;
                    let v = complex_value(&c);
                    (c, v)
                }
            };
            if let Some(p) = dot_path {
                write(&p, &dot(&c))?;
            }
            if let Some(p) = output {
                write(&p, &serde_json::to_string_pretty(&v).unwrap())?;
                v = json!({ "written": p.display().to_string(), "facets": c.len() });
            }
            Ok(v)
        }
        Command::Analyze { file, dot: dot_path } => {
            let c = load_complex(&file)?;
            if let Some(p) = dot_path {
                write(&p, &dot(&c))?;
            }
            let diameter = if c.is_strongly_connected() { Some(dual_diameter(&c)?.diameter) } else { None };
            let f_vector: Vec<usize> = (0..c.d()).map(|k| c.f_count(k)).collect();
            let flag = match c.flag_violation() {
                Ok(v) => json!(v.is_none()),
                Err(Error::SizeLimit { .. }) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            Ok(json!({
                "n": c.n(),
                "d": c.d(),
                "facets": c.len(),
                "vertices_used": c.used_vertices().len(),
                "f_vector": f_vector,
                "strongly_connected": c.is_strongly_connected(),
                "diameter": diameter,
                "normal": c.is_normal(),
                "pseudomanifold": c.is_pseudomanifold(),
                "corridor": c.is_corridor(),
                "flag": flag,
            }))
        }
        Command::Clm { action } => clm(action),
        Command::Path { file, from, to, sweep, allow_non_flag } => {
            let c = load_complex(&file)?;
            if sweep {
                let r = sweep_all_pairs(&c)?;
                let v = serde_json::to_value(&r).unwrap();
                return if r.passed() { Ok(v) } else { Err(Failed(v).into()) };
            }
            let (Some(x), Some(y)) = (from, to) else {
                return Err(Outcome::Io("give two facets or --sweep".into()));
            };
            let p = non_revisiting_path(&c, &parse_facet(&x)?, &parse_facet(&y)?, allow_non_flag)?;
            Ok(json!({ "length": p.length(), "path": p.facets }))
        }
        Command::Decompose { file, k, weak, budget, obstruction } => {
            if let Some(ab) = obstruction {
                let r = dk_obstruction_witness(ab[0], ab[1])?;
                let confirmed = r.confirmed();
                let v = serde_json::to_value(&r).unwrap();
                return if confirmed { Ok(v) } else { Err(Failed(v).into()) };
            }
            let file = file.ok_or_else(|| Outcome::Io("a complex file or --obstruction is needed".into()))?;
            let c = load_complex(&file)?;
            let dec = if weak { is_weakly_k_decomposable(&c, k, budget)? } else { is_k_decomposable(&c, k, budget)? };
            let mut v = serde_json::to_value(&dec).unwrap();
            if dec.decomposable && !weak {
                v["provan_billera"] = serde_json::to_value(provan_billera_check(&c, k, budget)?).unwrap();
            }
            Ok(v)
        }
        Command::Bounds { n, d, m, k, l, delta, csv } => {
            let r = bound_report(&BoundParams { n, d, m, k, l, delta })?;
            if csv {
                emit(&r.to_csv());
                return Ok(Value::Null);
            }
            Ok(serde_json::to_value(&r).unwrap())
        }
        Command::Search { target } => match target {
            SearchTarget::Clm { n, d, budget } => Ok(serde_json::to_value(max_clm_search(n, d, budget)?).unwrap()),
            SearchTarget::Johnson { n, d, budget, restarts } => {
                let mode = match restarts {
                    Some(r) => SearchMode::Heuristic { seed: cli.seed, restarts: r },
                    None => SearchMode::Exact,
                };
                let p = longest_induced_path_johnson(n, d, mode, budget)?;
                let mut v = serde_json::to_value(&p).unwrap();
                v["length"] = json!(p.length());
                Ok(v)
            }
        },
        Command::VerifyPaper { scale, only } => {
            let scale = match scale {
                ScaleArg::Small => Scale::Small,
                ScaleArg::Full => Scale::Full,
            };
            let ids: Vec<u8> = if only.is_empty() { CHECKS.iter().map(|c| c.0).collect() } else { only };
            let seed = cli.seed;
            let results: Vec<_> = {
                use rayon::prelude::*;
                ids.par_iter().map(|&id| run_check(id, scale, seed)).collect()
            };
            for r in &results {
                eprintln!("{}", r.line());
            }
            let v = serde_json::to_value(&results).unwrap();
            if results.iter().all(|r| r.passed) {
                Ok(v)
            } else {
                Err(Failed(v).into())
            }
        }
    }
}

fn clm_report(m: &LayeredMulticomplex) -> Value {
    let split = kk_split(m);
    json!({
        "valid": m.validate(),
        "length": m.length(),
        "violation": m.violation().map(|v| format!("{v:?}")),
        "kk_split": split,
        "bl_pieces": bl_decompose(m),
    })
}

fn clm(action: ClmAction) -> Result<Value, Outcome> {
    match action {
        ClmAction::Complete { n, d } => Ok(serde_json::from_str(&complete_clm(n, d)?.to_json()).unwrap()),
        ClmAction::Injective { n, d } => Ok(serde_json::from_str(&injective_clm(n, d)?.to_json()).unwrap()),
        ClmAction::Check { file, sets } => {
            let text = read(&file)?;
            if sets {
                let m = LayeredComplex::from_json(&text)?;
                let v = json!({ "valid": m.validate(), "length": m.length() });
                return if m.validate() { Ok(v) } else { Err(Failed(v).into()) };
            }
            let m = LayeredMulticomplex::from_json(&text)?;
            let v = clm_report(&m);
            if m.validate() {
                Ok(v)
            } else {
                Err(Failed(v).into())
            }
        }
        ClmAction::Substitute { file } => {
            let m = LayeredMulticomplex::from_json(&read(&file)?)?;
            Ok(serde_json::from_str(&multicomplex_to_complex(&m)?.to_json()).unwrap())
        }
        ClmAction::Nonpure { steps } => {
            let mut f = example_hnp5();
            for _ in 0..steps {
                f = extend_nonpure(&f)?;
            }
            let valid = f.validate()?;
            Ok(json!({ "n": f.n, "layers": f.len(), "valid": valid, "family": format!("{f:?}") }))
        }
        ClmAction::Legal { n, sets, double } => {
            let lists = sets.iter().map(|s| parse_set(s)).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&[usize]> = lists.iter().map(|l| l.as_slice()).collect();
            let seq = LegalSequence::from_lists(n, &refs)?;
            if let Some(i) = double {
                let out = legal_double(&seq, i)?;
                return Ok(json!({ "n": out.n, "length": out.len(), "sequence": format!("{out:?}") }));
            }
            Ok(json!({ "sequence": format!("{seq:?}"), "legal": legal_check(&seq)? }))
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.jobs > 0 {
        // Fails only if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match run(cli) {
        Ok(Value::Null) => ExitCode::SUCCESS,
        Ok(v) => {
            emit(&(serde_json::to_string_pretty(&v).unwrap() + "\n"));
            ExitCode::SUCCESS
        }
        Err(Outcome::Failed(v)) => {
            emit(&(serde_json::to_string_pretty(&v).unwrap() + "\n"));
            ExitCode::from(1)
        }
        Err(Outcome::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Outcome::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::SizeLimit { .. } | Error::Budget { .. } => 3,
                Error::NotNonRevisiting { .. } => 1,
                _ => 2,
            })
        }
    }
}
