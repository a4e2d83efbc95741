use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use deltaflip_core::checks::{
    distance_minor_check, is_delta_matroid, is_matroid, max_triple, min_triple, rank_profile,
    restriction_distance_check,
};
use deltaflip_core::flip::{self, reduce_word, NormalForm};
use deltaflip_core::input::{parse_inputs, Input};
use deltaflip_core::suites::{self, SuiteOptions, SUITES};
use deltaflip_core::{
    gen, Error, Field, FlipWord, Graph, GroundSet, MatroidDescription, Method, SetSystem, Subset,
    Symmetry,
};

#[derive(Parser)]
#[command(name = "deltaflip", version)]
#[command(about = "Pivots, loop complementation and delta-matroid checks on set systems")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOpts {
    /// RNG seed for generators and suites
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Ground set size for generators
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Prime field for matrix generators
    #[arg(long, global = true, default_value_t = 2)]
    field: u64,

    /// Number of random samples in suites
    #[arg(long, global = true)]
    samples: Option<usize>,

    /// Print JSON only, without the summary on stderr
    #[arg(long, global = true)]
    json: bool,

    /// Print nothing; the exit code carries the result
    #[arg(long, global = true, conflicts_with = "json")]
    quiet: bool,
}

#[derive(Args)]
struct Source {
    /// Read the input from a file
    #[arg(long = "in", value_name = "PATH")]
    path: Option<PathBuf>,

    /// Inline JSON input
    #[arg(value_name = "JSON")]
    inline: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Test a set system for a structural property
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Property::DeltaMatroid)]
        property: Property,
        /// Element for the min and max triples
        #[arg(long)]
        element: Option<String>,
    },
    /// Apply a flip word to a set system
    Apply {
        #[command(flatten)]
        source: Source,
        /// Whitespace-separated tokens `*v`, `+v`, `~v`, applied left to right
        #[arg(long)]
        word: String,
        /// Apply the inverse of the word instead
        #[arg(long)]
        inverse: bool,
    },
    /// Distances (and ranks) of subsets to a set system
    Distance {
        #[command(flatten)]
        source: Source,
        /// Comma-separated subset; every subset when omitted
        #[arg(long)]
        set: Option<String>,
    },
    /// Support set system of a matrix or graph
    Support {
        #[command(flatten)]
        source: Source,
    },
    /// Principal pivot transform of a matrix
    Ppt {
        #[command(flatten)]
        source: Source,
        /// Comma-separated pivot set
        #[arg(long)]
        set: String,
        /// Report the Schur complement instead
        #[arg(long)]
        schur: bool,
    },
    /// Distinct images of a set system under all vertex flips
    Orbit {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = flip::DEFAULT_ORBIT_CAP)]
        cap: usize,
    },
    /// Whether every vertex-flip image of a delta-matroid is a delta-matroid
    Vfclosed {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = flip::DEFAULT_ORBIT_CAP)]
        cap: usize,
    },
    /// The graph whose support is the given set system
    Reconstruct {
        #[command(flatten)]
        source: Source,
    },
    /// Run a named property suite
    Verify {
        /// Suite name; `all` runs every suite
        suite: Option<String>,
        /// List the registered suites
        #[arg(long)]
        list: bool,
    },
    /// Generate a seeded object
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        /// Rank for uniform matroids and standard representations
        #[arg(long, default_value_t = 2)]
        rank: usize,
        /// Loop probability for random graphs
        #[arg(long, default_value_t = 0.5)]
        loop_prob: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    DeltaMatroid,
    Exchange,
    Isodistant,
    Bases,
    Independent,
    DistanceMinor,
    RestrictionDistance,
    MinTriple,
    MaxTriple,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Uniform,
    SetSystem,
    Graph,
    Symmetric,
    Skew,
}

/// What a command produced: JSON for stdout, a line for stderr and whether
/// the checked property holds.
struct Outcome {
    json: Value,
    summary: String,
    ok: bool,
}

impl Outcome {
    fn value(json: Value, summary: impl Into<String>) -> Self {
        Self {
            json,
            summary: summary.into(),
            ok: true,
        }
    }
}

fn read_source(source: &Source) -> Result<Input, Error> {
    let text = match (&source.path, &source.inline) {
        (Some(p), None) => {
            fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?
        }
        (None, Some(s)) => s.clone(),
        (Some(_), Some(_)) => {
            return Err(Error::Parameter(
                "give either --in or inline JSON, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Error::Parameter(
                "missing input: use --in or inline JSON".into(),
            ))
        }
    };
    parse_inputs(&text)
}

fn set_system(source: &Source) -> Result<SetSystem, Error> {
    match read_source(source)? {
        Input::SetSystem(m) => Ok(m),
        other => Err(Error::Parameter(format!(
            "expected a set system, got a {}",
            other.kind()
        ))),
    }
}

fn parse_subset(g: &GroundSet, text: &str) -> Result<Subset, Error> {
    let names: Vec<&str> = text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect();
    g.subset(&names)
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Check {
            source,
            property,
            element,
        } => {
            let m = set_system(source)?;
            let g = m.ground().clone();
            let verdict = match property {
                Property::DeltaMatroid => is_delta_matroid(&m, Method::Both)?,
                Property::Exchange => is_delta_matroid(&m, Method::Exchange)?,
                Property::Isodistant => is_delta_matroid(&m, Method::Isodistant)?,
                Property::Bases => is_matroid(&m, MatroidDescription::Bases)?,
                Property::Independent => is_matroid(&m, MatroidDescription::Independent)?,
                Property::DistanceMinor => distance_minor_check(&m)?,
                Property::RestrictionDistance => restriction_distance_check(&m)?,
                Property::MinTriple | Property::MaxTriple => {
                    let name = element
                        .as_deref()
                        .ok_or_else(|| Error::Parameter("triples need --element".into()))?;
                    let v = m.element(name)?;
                    let report = match property {
                        Property::MinTriple => min_triple(&m, v)?,
                        _ => max_triple(&m, v)?,
                    };
                    let ok = report.relation_holds;
                    return Ok(Outcome {
                        summary: format!(
                            "systems {} and {} coincide; delta {}; relation {}",
                            report.equal_pair.0,
                            report.equal_pair.1,
                            report.delta,
                            if ok { "holds" } else { "fails" }
                        ),
                        json: report.to_json(),
                        ok,
                    });
                }
            };
            Ok(Outcome {
                json: verdict.to_json(&g),
                summary: if verdict.holds {
                    "holds".into()
                } else {
                    "fails".into()
                },
                ok: verdict.holds,
            })
        }
        Command::Apply {
            source,
            word,
            inverse,
        } => {
            let m = set_system(source)?;
            let mut w: FlipWord = word.parse()?;
            if *inverse {
                w = w.inverse();
            }
            let a = reduce_word(m.ground(), &w)?;
            let image = w.apply(&m)?;
            let nf = NormalForm::from_assignment(&a);
            Ok(Outcome::value(
                json!(image),
                format!("{} sets; normal form {}", image.len(), nf.word(m.ground())),
            ))
        }
        Command::Distance { source, set } => {
            let m = set_system(source)?;
            let g = m.ground();
            let xs: Vec<Subset> = match set {
                Some(s) => vec![parse_subset(g, s)?],
                None => g.subsets().collect(),
            };
            let rows = xs
                .iter()
                .map(|&x| {
                    let p = rank_profile(&m, x)?;
                    Ok(json!({
                        "set": g.names(x),
                        "distance": p.d,
                        "rank": p.r,
                        "rank_prime": p.r_prime,
                    }))
                })
                .collect::<Result<Vec<Value>, Error>>()?;
            Ok(Outcome::value(
                Value::Array(rows),
                format!("{} subsets, min distance {}", xs.len(), m.min_distance()?),
            ))
        }
        Command::Support { source } => {
            let m = match read_source(source)? {
                Input::Graph(graph) => graph.support(),
                Input::Matrix(a) => {
                    let symmetry = if a.is_symmetric() {
                        Symmetry::Symmetric
                    } else {
                        Symmetry::Skew
                    };
                    a.support_deltamatroid(symmetry)?
                }
                other => {
                    return Err(Error::Parameter(format!(
                        "expected a matrix or graph, got a {}",
                        other.kind()
                    )))
                }
            };
            Ok(Outcome::value(json!(m), format!("{} sets", m.len())))
        }
        Command::Ppt { source, set, schur } => {
            let Input::Matrix(a) = read_source(source)? else {
                return Err(Error::Parameter("ppt needs a matrix".into()));
            };
            let x = parse_subset(a.labels(), set)?;
            let out = if *schur {
                a.schur_complement(x)?
            } else {
                a.ppt(x)?
            };
            Ok(Outcome::value(
                json!(out),
                format!("rank {}, nullity {}", out.rank(), out.nullity()),
            ))
        }
        Command::Orbit { source, cap } => {
            let m = set_system(source)?;
            let orbit = flip::orbit_with_cap(&m, *cap)?;
            Ok(Outcome::value(
                json!({ "size": orbit.len(), "orbit": orbit }),
                format!("{} distinct images", orbit.len()),
            ))
        }
        Command::Vfclosed { source, cap } => {
            let m = set_system(source)?;
            let verdict = flip::is_vf_closed_with_cap(&m, *cap)?;
            let summary = match verdict.witness.as_ref() {
                None => "vf-closed".to_string(),
                Some(_) => "not vf-closed".to_string(),
            };
            Ok(Outcome {
                json: verdict.to_json(m.ground()),
                summary,
                ok: verdict.holds,
            })
        }
        Command::Reconstruct { source } => {
            let m = set_system(source)?;
            let graph = Graph::reconstruct(&m)?;
            Ok(Outcome::value(
                json!(graph),
                format!(
                    "{} edges, {} loops",
                    graph.edges().len(),
                    graph.loops().len()
                ),
            ))
        }
        Command::Verify { suite, list } => {
            if *list {
                let rows: Vec<Value> = SUITES
                    .iter()
                    .map(|s| json!({ "suite": s.name, "summary": s.summary, "default_samples": s.default_samples }))
                    .collect();
                return Ok(Outcome::value(
                    Value::Array(rows),
                    format!("{} suites", SUITES.len()),
                ));
            }
            let name = suite
                .as_deref()
                .ok_or_else(|| Error::Parameter("verify needs a suite name or --list".into()))?;
            let suite_opts = SuiteOptions {
                seed: opts.seed,
                samples: opts.samples,
            };
            if name == "all" {
                let reports: Vec<_> = SUITES.iter().map(|s| s.run(&suite_opts)).collect();
                let failures: usize = reports.iter().map(|r| r.failures.len()).sum();
                let cases: usize = reports.iter().map(|r| r.cases).sum();
                return Ok(Outcome {
                    json: json!(reports),
                    summary: format!(
                        "{} suites, {cases} cases, {failures} failures",
                        reports.len()
                    ),
                    ok: failures == 0,
                });
            }
            let report = suites::run_verify(name, &suite_opts)?;
            Ok(Outcome {
                summary: format!(
                    "{}: {} cases, {} failures (seed {})",
                    report.suite,
                    report.cases,
                    report.failures.len(),
                    report.seed
                ),
                ok: report.passed(),
                json: report.to_json(),
            })
        }
        Command::Gen {
            kind,
            rank,
            loop_prob,
        } => {
            let n = opts
                .n
                .ok_or_else(|| Error::Parameter("gen needs --n".into()))?;
            let json = match kind {
                GenKind::Uniform => json!(gen::uniform_matroid(*rank, n)?),
                GenKind::SetSystem => json!(gen::random_set_system(n, opts.seed, 0)?),
                GenKind::Graph => json!(gen::random_graph(n, *loop_prob, opts.seed, 0)?),
                GenKind::Symmetric => {
                    json!(gen::random_symmetric(
                        Field::new(opts.field)?,
                        n,
                        opts.seed,
                        0
                    )?)
                }
                GenKind::Skew => json!(gen::random_skew(Field::new(opts.field)?, n, opts.seed, 0)?),
            };
            Ok(Outcome::value(json, format!("seed {}", opts.seed)))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if !cli.opts.quiet {
                let _ = writeln!(io::stdout(), "{}", out.json);
                if !cli.opts.json {
                    eprintln!("{}", out.summary);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if !cli.opts.quiet {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
