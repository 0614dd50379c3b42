use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hyperlaw::experiment::{describe, emit, run_experiment, Analysis, ExperimentConfig, ReportFormat, Tolerances};
use hyperlaw::format::{catalog_json, parse_hypergraph, write_hypergraph, CatalogEntry};
use hyperlaw_core::berge::{enumerate_marked_types, enumerate_tree_types};
use hyperlaw_core::census::{
    cycle_census, marked_copy_census, tree_component_census, unicyclic_pattern_census, value_distribution, CensusReport,
};
use hyperlaw_core::completions::{build_weighted_tree_from_means, space_kind, verify_hereditary_consistency, SpanningNode};
use hyperlaw_core::efgame::{duplicator_wins, spoiler_winning_move, Side};
use hyperlaw_core::math::factorial;
use hyperlaw_core::random::{sample_gnp, Seed};
use hyperlaw_core::theory::{
    branching_value_distribution, poisson_means_marked_window, poisson_means_tree_window, rational_to_f64, Regime,
};
use hyperlaw_core::Hypergraph;

#[derive(Parser)]
#[command(name = "hyperlaw", version, about = "Limit laws of random uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one hypergraph from G^{d+1}(n, p).
    Sample {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Census of a hypergraph file or of a fresh sample.
    Census {
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        model: OptModel,
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Limit prediction for the regime of p.
    Predict {
        #[command(flatten)]
        model: Model,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Clause of the classification theorem that p falls in.
    Classify {
        #[command(flatten)]
        model: Model,
    },
    /// Monte Carlo check of the predicted limit law.
    Verify {
        #[command(flatten)]
        model: Model,
        /// Comma-separated ascending sizes.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[command(flatten)]
        analysis: AnalysisArgs,
        #[arg(long, default_value_t = 0.05)]
        tv_tol: f64,
        #[arg(long, default_value_t = 0.05)]
        rel_tol: f64,
        #[arg(long, default_value_t = 0.0)]
        allowance: f64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve the k-round Ehrenfeucht-Fraisse game on two hypergraph files.
    Efgame {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        k: usize,
        /// Also print a winning first move for Spoiler.
        #[arg(long)]
        spoiler_move: bool,
    },
    /// Weighted spanning tree of the space of completions.
    Tree {
        #[command(flatten)]
        model: OptModel,
        /// Poisson means to use instead of the regime's prediction.
        #[arg(long, value_delimiter = ',')]
        means: Vec<f64>,
        #[arg(long, default_value_t = 3)]
        depth: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Catalogue of tree types, or marked types with --v-star.
    Catalog {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        v_star: Option<usize>,
        #[arg(long)]
        minimal: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Model {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: String,
    #[arg(long, value_parser = parse_seed, default_value = "0")]
    seed: u64,
}

#[derive(Args)]
struct OptModel {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long, value_parser = parse_seed, default_value = "0")]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum AnalysisKind {
    Tree,
    Marked,
    Cycles,
    Unicyclic,
    Values,
}

#[derive(Args)]
struct AnalysisArgs {
    #[arg(long, value_enum, default_value_t = AnalysisKind::Tree)]
    analysis: AnalysisKind,
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, default_value_t = 1)]
    v_star: usize,
    #[arg(long, default_value_t = 6)]
    t_max: usize,
    #[arg(long, default_value_t = 1)]
    r: u32,
    #[arg(long, default_value_t = 1)]
    s: u32,
}

impl AnalysisArgs {
    fn analysis(&self) -> Result<Analysis, Failure> {
        Ok(match self.analysis {
            AnalysisKind::Tree => Analysis::TreeCensus { l: self.l },
            AnalysisKind::Marked => Analysis::Marked { l: self.l, v_star: self.v_star },
            AnalysisKind::Cycles => Analysis::Cycles { t_max: self.t_max },
            AnalysisKind::Values => Analysis::Values { r: self.r, s: self.s },
            AnalysisKind::Unicyclic => return Err(Failure::Usage("unicyclic patterns have no closed-form prediction".into())),
        })
    }
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

enum Failure {
    Usage(String),
    Statistical,
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Statistical) => ExitCode::from(2),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn output(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn sample(d: usize, p: &str, n: usize, seed: u64, stream: u64) -> Result<(Hypergraph, f64), Failure> {
    let (expr, _) = describe(p, d)?;
    let eval = expr.eval(n as f64)?;
    if eval.clamped {
        eprintln!("warning: p({n}) = {} clamped to {}", eval.raw, eval.value);
    }
    Ok((sample_gnp(n, d, eval.value, Seed::new(seed, stream))?, eval.value))
}

fn census_json(report: &CensusReport) -> serde_json::Value {
    json!({ "counts": report.counts, "residual": report.residual })
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Sample { model, n, stream, out } => {
            let (h, _) = sample(model.d, &model.p, n, model.seed, stream)?;
            output(out.as_ref(), &write_hypergraph(&h))
        }
        Command::Census { input, model, n, analysis, out } => {
            let mut meta = serde_json::Map::new();
            let h = match (input, model.d, model.p, n) {
                (Some(path), None, None, None) => {
                    meta.insert("input".into(), json!(path.display().to_string()));
                    parse_hypergraph(&fs::read_to_string(&path)?)?
                }
                (None, Some(d), Some(p), Some(n)) => {
                    let (h, p_n) = sample(d, &p, n, model.seed, 0)?;
                    meta.insert("p".into(), json!(p));
                    meta.insert("p_n".into(), json!(p_n));
                    meta.insert("seed".into(), json!(model.seed));
                    h
                }
                _ => return Err(Failure::Usage("give either --input or all of --d, --p and --n".into())),
            };
            meta.insert("n".into(), json!(h.n()));
            meta.insert("d".into(), json!(h.d()));
            let body = match analysis.analysis {
                AnalysisKind::Tree => {
                    meta.insert("l_max".into(), json!(analysis.l));
                    census_json(&tree_component_census(&h, analysis.l))
                }
                AnalysisKind::Marked => {
                    meta.insert("l".into(), json!(analysis.l));
                    meta.insert("v*".into(), json!(analysis.v_star));
                    census_json(&marked_copy_census(&h, analysis.l, analysis.v_star)?)
                }
                AnalysisKind::Cycles => {
                    meta.insert("t_max".into(), json!(analysis.t_max));
                    census_json(&cycle_census(&h, analysis.t_max))
                }
                AnalysisKind::Unicyclic => {
                    meta.insert("r".into(), json!(analysis.r));
                    meta.insert("s".into(), json!(analysis.s));
                    census_json(&unicyclic_pattern_census(&h, analysis.r, analysis.s))
                }
                AnalysisKind::Values => {
                    meta.insert("r".into(), json!(analysis.r));
                    meta.insert("s".into(), json!(analysis.s));
                    let law: BTreeMap<String, f64> =
                        value_distribution(&h, analysis.r, analysis.s)?.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
                    json!({ "frequencies": law })
                }
            };
            let mut doc = body.as_object().cloned().unwrap_or_default();
            doc.insert("metadata".into(), serde_json::Value::Object(meta));
            output(out.as_ref(), &pretty(&serde_json::Value::Object(doc)))
        }
        Command::Predict { model, analysis, out } => {
            let (expr, regime) = describe(&model.p, model.d)?;
            let mut doc = serde_json::Map::new();
            doc.insert("p".into(), json!(expr.to_string()));
            doc.insert("clause".into(), json!(regime.clause()));
            doc.insert("regime".into(), json!(regime.to_string()));
            match (analysis.analysis()?, &regime) {
                (Analysis::TreeCensus { l }, Regime::TreeWindow { l: rl, c }) if l == *rl => {
                    let pred = poisson_means_tree_window(model.d, l, rational_to_f64(c))?;
                    doc.insert("means".into(), json!(pred.means.into_iter().collect::<BTreeMap<_, _>>()));
                }
                (Analysis::Marked { l, v_star }, Regime::MarkedWindow { v_star: rv, l: rl, c }) if l == *rl && v_star == *rv => {
                    let pred = poisson_means_marked_window(model.d, l, v_star, rational_to_f64(c))?;
                    doc.insert("means".into(), json!(pred.means.into_iter().collect::<BTreeMap<_, _>>()));
                }
                (Analysis::Values { r, s }, Regime::DoubleJump { lambda }) => {
                    let mu = rational_to_f64(lambda) / factorial(model.d as u64).unwrap_or(u128::MAX) as f64;
                    let law: BTreeMap<String, f64> = branching_value_distribution(r, s, mu, model.d)?
                        .into_iter()
                        .map(|(v, p)| (v.to_string(), p))
                        .collect();
                    doc.insert("value_law".into(), json!(law));
                }
                _ => return Err(Failure::Usage(format!("no prediction in this regime ({regime}) for the requested analysis"))),
            }
            output(out.as_ref(), &pretty(&serde_json::Value::Object(doc)))
        }
        Command::Classify { model } => {
            let (expr, regime) = describe(&model.p, model.d)?;
            let kind = space_kind(&regime).map(|k| k.to_string()).unwrap_or_else(|_| "none".into());
            println!("p: {expr}");
            println!("clause: {}", regime.clause());
            println!("regime: {regime}");
            println!("space: {kind}");
            Ok(())
        }
        Command::Verify { model, n, trials, analysis, tv_tol, rel_tol, allowance, format, out } => {
            let cfg = ExperimentConfig {
                d: model.d,
                p: model.p,
                ns: n,
                trials,
                seed: model.seed,
                analysis: analysis.analysis()?,
                tolerances: Tolerances { tv: tv_tol, rel_mean: rel_tol, finite_n_allowance: allowance, ..Tolerances::default() },
                means: None,
            };
            let report = run_experiment(&cfg)?;
            output(out.as_ref(), &emit(&report, format))?;
            if report.pass {
                Ok(())
            } else {
                Err(Failure::Statistical)
            }
        }
        Command::Efgame { first, second, k, spoiler_move } => {
            let a = parse_hypergraph(&fs::read_to_string(first)?)?;
            let b = parse_hypergraph(&fs::read_to_string(second)?)?;
            let dup = duplicator_wins(&a, &b, k)?;
            println!("winner: {}", if dup { "duplicator" } else { "spoiler" });
            if spoiler_move {
                match spoiler_winning_move(&a, &b, k)? {
                    Some(m) => {
                        let side = match m.side {
                            Side::Left => "first",
                            Side::Right => "second",
                        };
                        println!("spoiler move: vertex {} of the {side} hypergraph", m.vertex);
                    }
                    None => println!("spoiler move: none"),
                }
            }
            Ok(())
        }
        Command::Tree { model, means, depth, out } => {
            let (lambdas, kind) = if !means.is_empty() {
                (means, None)
            } else {
                let (Some(d), Some(p)) = (model.d, model.p) else {
                    return Err(Failure::Usage("give --means or both --d and --p".into()));
                };
                let (_, regime) = describe(&p, d)?;
                let lambdas = match &regime {
                    Regime::TreeWindow { l, c } => poisson_means_tree_window(d, *l, rational_to_f64(c))?.lambdas(),
                    Regime::MarkedWindow { v_star, l, c } => {
                        poisson_means_marked_window(d, *l, *v_star, rational_to_f64(c))?.lambdas()
                    }
                    _ => {
                        let kind = space_kind(&regime)?;
                        return Err(Failure::Usage(format!(
                            "{regime} gives a {kind} space with no closed-form means; pass --means"
                        )));
                    }
                };
                (lambdas, Some(space_kind(&regime)?))
            };
            let tree = build_weighted_tree_from_means(&lambdas, depth);
            let check = verify_hereditary_consistency(&tree, 1e-9);
            let doc = json!({
                "lambdas": lambdas,
                "depth": depth,
                "space": kind.map(|k| k.to_string()),
                "consistent": check.consistent,
                "max_defect": check.max_defect,
                "root": node_json(&tree.root),
            });
            output(out.as_ref(), &pretty(&doc))
        }
        Command::Catalog { d, l, v_star, minimal, out } => {
            let entries: Vec<CatalogEntry> = match v_star {
                None => enumerate_tree_types(d, l)?.iter().map(CatalogEntry::from_tree).collect(),
                Some(v) => enumerate_marked_types(d, l, v, minimal)?.iter().map(CatalogEntry::from_marked).collect(),
            };
            let mut text = catalog_json(&entries);
            text.push('\n');
            output(out.as_ref(), &text)
        }
    }
}

fn node_json(n: &SpanningNode) -> serde_json::Value {
    json!({
        "m": n.m.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "h": n.height,
        "weight": n.weight,
        "children": n.children.iter().map(node_json).collect::<Vec<_>>(),
    })
}
