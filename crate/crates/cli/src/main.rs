//! `myctheta` command-line front end.
//!
//! Exit codes: 0 on success, 2 for usage and domain errors (bad arguments,
//! size guards, preconditions), 1 for solver failures and exhausted budgets.

mod output;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use myctheta::capacity::capacity_lower_bound;
use myctheta::certificates::{
    build_spectral_certificate, check_certificate_inequalities, lift_coloring, lift_conditions,
    verify_block_spectrum,
};
use myctheta::chromatic::chromatic_number;
use myctheta::clique::{clique_number, symmetric_clique_number, transitive_clique_number, SearchOptions};
use myctheta::constructions::{
    chained_clique, extended_clique, lifted_clique, lifted_transitive_clique, no_lifted_clique_check,
};
use myctheta::formula::{mycielski_theta, mycielski_theta_formula};
use myctheta::fractional::fractional_chromatic;
use myctheta::graph::set_max_vertices;
use myctheta::lp::format_rational;
use myctheta::report::{capacity_report, ReportOptions};
use myctheta::source::{parse_spec, read_edge_list, write_edge_list};
use myctheta::theta::{
    extract_vector_coloring, optimal_edge_matrix, spectral_ratio, theta_bar, ThetaOptions,
};
use myctheta::{AnyGraph, Error, Graph};

#[derive(Parser)]
#[command(name = "myctheta", version, about = "Capacity bounds for graphs and their Mycielskians")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for the exact searches.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Source {
    /// Graph specification, e.g. `cycle:5` or `mycielski:complete:3:r=2`.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    family: Option<String>,

    /// Edge-list file.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Invariant {
    Clique,
    SymmetricClique,
    TransitiveClique,
    Chromatic,
    Fractional,
    LowerBound,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CertKind {
    Lift,
    Spectral,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Print a graph as an edge list (text) or JSON.
    Gen {
        #[command(flatten)]
        source: Source,
    },
    /// One exact invariant.
    Invariant {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        which: Invariant,
        /// Power for `lower-bound`.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Node budget for the exact searches.
        #[arg(long)]
        node_limit: Option<u64>,
    },
    /// Complementary theta by semidefinite programming.
    Theta {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        /// Include a strict vector colouring extracted from the solution.
        #[arg(long)]
        vectors: bool,
    },
    /// Closed-form value for the Mycielskian from `t`.
    MycTheta {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
    },
    /// Both certificates for the Mycielskian of a graph.
    Certify {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = CertKind::Both)]
        kind: CertKind,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Include the edge matrices.
        #[arg(long)]
        matrices: bool,
    },
    /// Explicit clique constructions.
    Construct {
        /// Lifted clique in the n-th power of M(K_n).
        #[arg(long, group = "what")]
        lifted_clique: Option<usize>,
        /// Transitive version over M(T_n).
        #[arg(long, group = "what")]
        transitive: Option<usize>,
        /// Add the all-apex sequence.
        #[arg(long)]
        extend: bool,
        /// Nonexistence check, as `n,r,t`.
        #[arg(long, group = "what", value_delimiter = ',')]
        no_lifted_clique: Option<Vec<usize>>,
        /// Chain through a clique of the k-th power of this graph.
        #[arg(long, group = "what")]
        chain: Option<String>,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// All bounds for one graph.
    Report {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        max_power: usize,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
        #[arg(long)]
        node_limit: Option<u64>,
    },
}

fn io_error(e: std::io::Error, what: &str) -> Error {
    Error::Parse(format!("{what}: {e}"))
}

fn load(source: &Source) -> Result<(AnyGraph, String), Error> {
    match (&source.family, &source.input) {
        (Some(spec), _) => Ok((parse_spec(spec)?, spec.clone())),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| io_error(e, &path.display().to_string()))?;
            Ok((read_edge_list(&text)?, path.display().to_string()))
        }
        (None, None) => Err(Error::Parse("no graph source given".into())),
    }
}

fn undirected(g: AnyGraph, what: &str) -> Result<Graph, Error> {
    match g {
        AnyGraph::Undirected(g) => Ok(g),
        AnyGraph::Directed(_) => Err(Error::Domain(format!("{what} needs an undirected graph"))),
    }
}

fn search(threads: usize, node_limit: Option<u64>) -> SearchOptions {
    node_limit
        .map(SearchOptions::with_limit)
        .unwrap_or_default()
        .threads(threads)
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

/// Output of a subcommand: a JSON value, or raw text for `gen --format text`.
enum Out {
    Json(Value),
    Raw(String),
}

fn run(cli: &Cli) -> Result<Out, Error> {
    match &cli.command {
        Command::Gen { source } => {
            let (g, _) = load(source)?;
            if cli.format == Format::Text {
                return Ok(Out::Raw(write_edge_list(&g)));
            }
            let pairs: Vec<(usize, usize)> = match &g {
                AnyGraph::Undirected(g) => g.edges().collect(),
                AnyGraph::Directed(d) => d.arcs().collect(),
            };
            Ok(Out::Json(json!({
                "vertices": g.order(),
                "directed": g.is_directed(),
                "edges": pairs,
            })))
        }
        Command::Invariant {
            source,
            which,
            k,
            node_limit,
        } => {
            let (g, name) = load(source)?;
            let opts = search(cli.threads, *node_limit);
            let digraph = || match &g {
                AnyGraph::Directed(d) => Ok(d.clone()),
                AnyGraph::Undirected(_) => Err(Error::Domain("invariant needs a digraph".into())),
            };
            let upper = || match &g {
                AnyGraph::Undirected(g) => g.clone(),
                AnyGraph::Directed(d) => d.underlying(),
            };
            let (key, value) = match which {
                Invariant::Clique => ("clique", to_value(&clique_number(&upper(), opts)?)),
                Invariant::SymmetricClique => (
                    "symmetric_clique",
                    to_value(&symmetric_clique_number(&digraph()?, opts)?),
                ),
                Invariant::TransitiveClique => (
                    "transitive_clique",
                    to_value(&transitive_clique_number(&digraph()?, opts)?),
                ),
                Invariant::Chromatic => ("chromatic", to_value(&chromatic_number(&upper(), opts)?)),
                Invariant::Fractional => {
                    let f = fractional_chromatic(&upper())?;
                    let colouring: Vec<Value> = f
                        .colouring
                        .iter()
                        .map(|(set, w)| json!({"set": set, "weight": format_rational(w)}))
                        .collect();
                    let clique: Vec<String> = f.clique.iter().map(format_rational).collect();
                    (
                        "fractional_chromatic",
                        json!({
                            "value": format_rational(&f.value),
                            "colouring": colouring,
                            "clique": clique,
                            "independent_sets": f.independent_sets,
                        }),
                    )
                }
                Invariant::LowerBound => ("lower_bound", to_value(&capacity_lower_bound(&g, *k, opts)?)),
            };
            Ok(Out::Json(json!({ "source": name, "invariant": key, "result": value })))
        }
        Command::Theta {
            source,
            tol,
            vectors,
        } => {
            let (g, name) = load(source)?;
            let g = undirected(g, "theta")?;
            let sol = theta_bar(&g, ThetaOptions::with_tol(*tol))?;
            let mut out = json!({
                "source": name,
                "value": sol.value,
                "dual_value": sol.dual_value,
                "primal_residual": sol.primal_residual,
                "dual_residual": sol.dual_residual,
                "gap": sol.gap,
                "iterations": sol.iterations,
                "tolerance_achieved": sol.tolerance_achieved,
            });
            if *vectors {
                out["vector_coloring"] = to_value(&extract_vector_coloring(&sol, &g)?);
            }
            Ok(Out::Json(out))
        }
        Command::MycTheta { t } => {
            let r = mycielski_theta_formula(*t)?;
            Ok(Out::Json(to_value(&r)))
        }
        Command::Certify {
            source,
            kind,
            tol,
            matrices,
        } => {
            let (g, name) = load(source)?;
            let g = undirected(g, "certify")?;
            certify(&g, name, *kind, *tol, *matrices).map(Out::Json)
        }
        Command::Construct {
            lifted_clique: lc,
            transitive,
            extend,
            no_lifted_clique,
            chain,
            k,
        } => {
            let opts = search(cli.threads, None);
            let value = if let Some(n) = lc {
                let c = if *extend {
                    extended_clique(*n)?
                } else {
                    lifted_clique(*n)?
                };
                with_kind("lifted_clique", to_value(&c))
            } else if let Some(n) = transitive {
                with_kind("lifted_transitive_clique", to_value(&lifted_transitive_clique(*n, *extend)?))
            } else if let Some(v) = no_lifted_clique {
                let &[n, r, t] = v.as_slice() else {
                    return Err(Error::Parse("--no-lifted-clique takes n,r,t".into()));
                };
                let confirmed = no_lifted_clique_check(n, r, t, opts)?;
                json!({"kind": "no_lifted_clique_check", "n": n, "r": r, "t": t, "confirmed": confirmed})
            } else if let Some(spec) = chain {
                let g = undirected(parse_spec(spec)?, "chaining")?;
                with_kind("chained_clique", to_value(&chained_clique(&g, *k, opts)?))
            } else {
                return Err(Error::Parse(
                    "construct needs one of --lifted-clique, --transitive, --no-lifted-clique, --chain".into(),
                ));
            };
            Ok(Out::Json(value))
        }
        Command::Report {
            source,
            max_power,
            tol,
            node_limit,
        } => {
            let (g, name) = load(source)?;
            let opts = ReportOptions {
                max_power: *max_power,
                theta: ThetaOptions::with_tol(*tol),
                search: search(cli.threads, *node_limit),
            };
            Ok(Out::Json(to_value(&capacity_report(&g, &name, opts))))
        }
    }
}

fn with_kind(kind: &str, mut v: Value) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("kind".into(), kind.into());
    }
    v
}

fn certify(g: &Graph, source: String, kind: CertKind, tol: f64, matrices: bool) -> Result<Value, Error> {
    let sol = theta_bar(g, ThetaOptions::with_tol(tol))?;
    let t = sol.value;
    let m = mycielski_theta(t, 1e3 * tol)?;
    let mut out = json!({ "source": source, "t": t, "m": m });
    let mut errors = serde_json::Map::new();

    if kind != CertKind::Spectral {
        let lifted = extract_vector_coloring(&sol, g).and_then(|c| lift_coloring(&c, g, m));
        match lifted {
            Ok((coloring, params)) => {
                let conditions = lift_conditions(&coloring, g);
                out["lift"] = json!({
                    "parameters": params,
                    "system_residual": params.max_residual(),
                    "conditions": conditions,
                    "max_violation": conditions.max(),
                    "dimension": coloring.dim,
                });
            }
            Err(e) => {
                errors.insert("lift".into(), e.to_string().into());
            }
        }
    }

    if kind != CertKind::Lift {
        let cert = optimal_edge_matrix(g, &sol, tol).and_then(|tm| {
            let ratio = spectral_ratio(&tm, g)?;
            let m_ratio = mycielski_theta(ratio, 1e3 * tol)?;
            build_spectral_certificate(g, &tm, ratio, m_ratio)
        });
        match cert {
            Ok(c) => {
                let inequalities = check_certificate_inequalities(c.t, c.m, c.gamma, c.delta, c.eta);
                let mut spectral = json!({
                    "t": c.t,
                    "m": c.m,
                    "ratio": c.ratio,
                    "ratio_error": (c.ratio - c.m).abs(),
                    "gamma": c.gamma,
                    "delta": c.delta,
                    "eta": c.eta,
                    "lambda_max": c.lambda_max,
                    "lambda_min": c.lambda_min,
                    "expected_max": c.expected_max,
                    "expected_min": c.expected_min,
                    "lambda1_multiplicity": c.lambda1_multiplicity,
                    "block_spectrum": verify_block_spectrum(&c),
                    "inequalities": inequalities,
                });
                if matrices {
                    spectral["t_matrix"] = to_value(&c.t_matrix.to_rows());
                    spectral["t_hat"] = to_value(&c.t_hat.to_rows());
                }
                out["spectral"] = spectral;
            }
            Err(e) => {
                errors.insert("spectral".into(), e.to_string().into());
            }
        }
    }
    out["errors"] = Value::Object(errors);
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Ok(limit) = std::env::var("MYCTHETA_MAX_VERTICES") {
        match limit.parse::<usize>() {
            Ok(l) if l > 0 => set_max_vertices(l),
            _ => {
                eprintln!("error: MYCTHETA_MAX_VERTICES must be a positive integer, got {limit:?}");
                return ExitCode::from(2);
            }
        }
    }
    let result = run(&cli).map(|out| match out {
        Out::Raw(text) => text,
        Out::Json(v) => output::render(&v, cli.format),
    });
    match result {
        Ok(text) => match &cli.output {
            Some(path) => match fs::write(path, text) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {}: {e}", path.display());
                    ExitCode::from(2)
                }
            },
            None => {
                print!("{text}");
                ExitCode::SUCCESS
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_domain() { 2 } else { 1 })
        }
    }
}
