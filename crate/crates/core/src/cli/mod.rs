//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when the mathematical answer is negative (no
//! fundamental, dependent set, no witness within budget, witness rejected),
//! 2 on invalid input.

pub mod io;
pub mod svg;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::explorer::{self, Witness};
use crate::geometry::{self, Node};
use crate::independence::{self, DependenceWitness, NodeSet};
use crate::interpolation;
use crate::poly::{dim_pi, FactoredPoly};
use crate::synthesis::{self, CoverMode};
use crate::QPoly;
use io::{
    poly_to_doc, rational_text, Coord, DocError, FactoredDocument, NodeSetDocument,
    ValuesDocument, WitnessDocument,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FundamentalMode {
    Any,
    Lines,
    LinesConics,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchMode {
    Lines,
    LinesConics,
}

impl From<SearchMode> for CoverMode {
    fn from(m: SearchMode) -> Self {
        match m {
            SearchMode::Lines => CoverMode::Lines,
            SearchMode::LinesConics => CoverMode::LinesAndConics,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fundpoly",
    version,
    about = "Exact bivariate interpolation: independence, factored fundamental polynomials, witnesses"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Independence verdict, collinear/co-conic counts and a dependence witness.
    Analyze { file: PathBuf },
    /// Fundamental polynomial of one node, optionally as a product of curves.
    Fundamental {
        file: PathBuf,
        #[arg(long)]
        node: usize,
        #[arg(long, value_enum, default_value = "any")]
        mode: FundamentalMode,
        /// Write an SVG sketch of the nodes and factor curves.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Lagrange interpolant for a values file.
    Interpolate { file: PathBuf, values: PathBuf },
    /// Search for a node set where factored fundamentals stop existing.
    Search {
        #[arg(long, value_enum)]
        mode: SearchMode,
        #[arg(short = 'n', long = "n")]
        n: usize,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Also write the witness document to this path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a witness document from scratch.
    VerifyWitness { file: PathBuf },
}

/// Outcome of one command: exit code plus the document to print.
struct Outcome {
    code: i32,
    json: Value,
    text: String,
}

impl Outcome {
    fn new(code: i32, json: Value, text: impl Into<String>) -> Self {
        Outcome {
            code,
            json,
            text: text.into(),
        }
    }

    fn invalid(msg: impl std::fmt::Display) -> Self {
        let msg = msg.to_string();
        Outcome::new(
            EXIT_INVALID,
            json!({"status": "invalid-input", "error": msg}),
            format!("invalid input: {msg}"),
        )
    }
}

fn read(path: &Path) -> Result<String, DocError> {
    std::fs::read_to_string(path).map_err(|e| DocError(format!("{}: {e}", path.display())))
}

fn node_json(p: &Node) -> Value {
    json!([Coord::from(&p.x), Coord::from(&p.y)])
}

fn nodes_json(nodes: &[Node]) -> Value {
    Value::Array(nodes.iter().map(node_json).collect())
}

fn coeff_strings<const K: usize>(c: [crate::Rational; K]) -> Value {
    json!(c.iter().map(rational_text).collect::<Vec<_>>())
}

fn dependence_json(w: &DependenceWitness) -> Value {
    match w {
        DependenceWitness::CollinearOverload { line, nodes } => json!({
            "kind": w.kind().as_str(),
            "line": coeff_strings(line.coeffs()),
            "nodes": nodes_json(nodes),
        }),
        DependenceWitness::ConicOverload { conic, nodes } => json!({
            "kind": w.kind().as_str(),
            "conic": coeff_strings(conic.coeffs()),
            "nodes": nodes_json(nodes),
        }),
        DependenceWitness::CubicIntersection { cubic, curve } => json!({
            "kind": w.kind().as_str(),
            "cubic": poly_to_doc(cubic),
            "curve": poly_to_doc(curve),
        }),
        DependenceWitness::Unclassified => json!({"kind": w.kind().as_str()}),
    }
}

fn analyze(path: &Path) -> Result<Outcome, DocError> {
    let (n, x) = NodeSetDocument::parse(&read(path)?)?;
    let rank = independence::collocation_rank(&x, n);
    let independent = independence::is_n_independent(&x, n);
    let poised = independence::is_n_poised(&x, n);
    let (collinear, line) = geometry::max_collinear(x.nodes())?;
    let (coconic, conic) = geometry::max_coconic(x.nodes())?;
    let dependence = if x.len() <= 3 * n {
        independence::classify_dependence(&x, n)?
    } else {
        None
    };
    let json = json!({
        "n": n,
        "size": x.len(),
        "dim": dim_pi(n),
        "rank": rank,
        "independent": independent,
        "poised": poised,
        "max_collinear": {
            "count": collinear,
            "line": line.as_ref().map(|l| coeff_strings(l.coeffs())),
        },
        "max_coconic": {
            "count": coconic,
            "conic": conic.as_ref().map(|c| coeff_strings(c.coeffs())),
        },
        "dependence": dependence.as_ref().map(dependence_json),
    });
    let mut text = format!(
        "#X = {}, N = {}, rank = {rank}\n{}-{}{}\nmax collinear: {collinear}{}\nmax co-conic: {coconic}{}\n",
        x.len(),
        dim_pi(n),
        n,
        if independent { "independent" } else { "dependent" },
        if poised { " (poised)" } else { "" },
        line.map(|l| format!(" on {l} = 0")).unwrap_or_default(),
        conic.map(|c| format!(" on {c} = 0")).unwrap_or_default(),
    );
    if let Some(w) = &dependence {
        text.push_str(&format!("dependence: {}\n", w.kind().as_str()));
    }
    Ok(Outcome::new(EXIT_OK, json, text))
}

fn fundamental_json(
    idx: usize,
    a: &Node,
    n: usize,
    mode: &str,
    factored: Option<&FactoredPoly>,
    p: &QPoly,
    x: &NodeSet,
) -> (Value, String) {
    let verified = p.eval(a) == crate::Rational::from_integer(1.into())
        && x.nodes().iter().filter(|q| *q != a).all(|q| num_traits::Zero::is_zero(&p.eval(q)));
    let json = json!({
        "status": "ok",
        "n": n,
        "mode": mode,
        "node_index": idx,
        "node": node_json(a),
        "factored": factored.map(FactoredDocument::from_factored),
        "coefficients": poly_to_doc(p),
        "verified": verified,
    });
    let mut text = String::new();
    if let Some(f) = factored {
        text.push_str(&format!("factored: {f}\n"));
    }
    text.push_str(&format!("expanded: {p}\nverified: {verified}\n"));
    (json, text)
}

fn negative(reason: &str, condition: Option<&str>, detail: Value) -> Outcome {
    Outcome::new(
        EXIT_NEGATIVE,
        json!({"status": "none", "condition": condition, "reason": reason, "detail": detail}),
        format!("no fundamental: {reason}"),
    )
}

fn fundamental(
    path: &Path,
    idx: usize,
    mode: FundamentalMode,
    svg_path: Option<&Path>,
) -> Result<Outcome, DocError> {
    let (n, x) = NodeSetDocument::parse(&read(path)?)?;
    let Some(a) = x.nodes().get(idx).cloned() else {
        return Ok(Outcome::invalid(format!(
            "node index {idx} out of range for {} nodes",
            x.len()
        )));
    };
    let cover_mode = match mode {
        FundamentalMode::Any => None,
        FundamentalMode::Lines => Some(CoverMode::Lines),
        FundamentalMode::LinesConics => Some(CoverMode::LinesAndConics),
    };
    if let Some(m) = cover_mode {
        if x.len() > m.max_nodes(n) {
            return Ok(Outcome::invalid(format!(
                "{} mode needs at most {} nodes for n = {n}, got {}",
                m.as_str(),
                m.max_nodes(n),
                x.len()
            )));
        }
    }
    let residual = x.without(&a);
    let heavy = geometry::heavy_lines_through(&a, &residual, n + 1);
    let heavy_detail = |h: &[(geometry::Line, Vec<Node>)]| {
        h.first().map_or(Value::Null, |(l, on)| {
            json!({"line": coeff_strings(l.coeffs()), "nodes": nodes_json(on)})
        })
    };

    let (factored, label) = match cover_mode {
        None => (None, "any"),
        Some(CoverMode::Lines) => match synthesis::synth_lines(&a, &x, n)? {
            Some(f) => (Some(f), "lines"),
            None => {
                return Ok(negative(
                    "n+1 other nodes are collinear with the node (n+2 collinear)",
                    Some("lines-through-node"),
                    heavy_detail(&heavy),
                ))
            }
        },
        Some(CoverMode::LinesAndConics) => match synthesis::synth_lines_conics(&a, &x, n)? {
            Some(f) => (Some(f), "lines-conics"),
            None => {
                let report = synthesis::cond_lines_conics(&a, &x, n)?;
                let (reason, detail) = match report.first_failure() {
                    Some("a") => (
                        "condition a: n+1 other nodes are collinear with the node",
                        heavy_detail(&heavy),
                    ),
                    Some("b") => {
                        let v = report.cond_b.as_ref().expect("b failed");
                        (
                            "condition b: a line carries n+1 other nodes and n of the rest are collinear with the node",
                            json!({
                                "alpha": coeff_strings(v.alpha.coeffs()),
                                "alpha_nodes": nodes_json(&v.alpha_nodes),
                                "line": coeff_strings(v.line.coeffs()),
                                "nodes": nodes_json(&v.nodes),
                            }),
                        )
                    }
                    Some(_) => {
                        let v = report.cond_c.as_ref().expect("c failed");
                        (
                            "condition c: 2n+1 other nodes lie on an irreducible conic through the node",
                            json!({"conic": coeff_strings(v.conic.coeffs()), "nodes": nodes_json(&v.nodes)}),
                        )
                    }
                    None => ("no line/conic cover exists", Value::Null),
                };
                return Ok(negative(reason, report.first_failure(), detail));
            }
        },
    };
    let p = match &factored {
        Some(f) => f.expand(n)?,
        None => match independence::fundamental(&a, &x, n)? {
            Some(p) => p,
            None => {
                let reason = if heavy.is_empty() {
                    "the collocation system has no solution for this node"
                } else {
                    "n+2 collinear nodes through the node"
                };
                return Ok(negative(reason, None, heavy_detail(&heavy)));
            }
        },
    };
    if let Some(svg_path) = svg_path {
        let factors = factored.as_ref().map(|f| f.factors().to_vec()).unwrap_or_default();
        std::fs::write(svg_path, svg::render(x.nodes(), Some(idx), &factors))
            .map_err(|e| DocError(format!("{}: {e}", svg_path.display())))?;
    }
    let (json, text) = fundamental_json(idx, &a, n, label, factored.as_ref(), &p, &x);
    Ok(Outcome::new(EXIT_OK, json, text))
}

fn interpolate(path: &Path, values: &Path) -> Result<Outcome, DocError> {
    let (n, x) = NodeSetDocument::parse(&read(path)?)?;
    let c = ValuesDocument::parse(&read(values)?)?;
    if c.len() != x.len() {
        return Ok(Outcome::invalid(format!(
            "{} values for {} nodes",
            c.len(),
            x.len()
        )));
    }
    match interpolation::lagrange(&x, &c, n, None) {
        Ok(p) => {
            let verified = interpolation::verify_interpolant(&p, &x, &c);
            Ok(Outcome::new(
                EXIT_OK,
                json!({"status": "ok", "n": n, "coefficients": poly_to_doc(&p), "verified": verified}),
                format!("interpolant: {p}\nverified: {verified}\n"),
            ))
        }
        Err(crate::Error::NotSolvable(msg)) => Ok(Outcome::new(
            EXIT_NEGATIVE,
            json!({"status": "not-solvable", "reason": msg}),
            format!("not solvable: {msg}"),
        )),
        Err(e) => Err(e.into()),
    }
}

fn witness_text(w: &Witness) -> String {
    let nodes: Vec<String> = w.x.nodes().iter().map(|p| p.to_string()).collect();
    format!(
        "{} witness, n = {}, node {} = {}\nnodes: {}\nrank {}, search states {}\n",
        w.mode.as_str(),
        w.n,
        w.node_index,
        w.node(),
        nodes.join(" "),
        w.certificate.rank,
        w.certificate.search_space
    )
}

fn search(mode: SearchMode, n: usize, budget: usize, out: Option<&Path>) -> Result<Outcome, DocError> {
    let found = match mode {
        SearchMode::Lines => explorer::search_ce_lines(n, budget),
        SearchMode::LinesConics => explorer::search_ce_lines_conics(n, budget),
    };
    let found = match found {
        Ok(w) => w,
        Err(e @ crate::Error::OutOfRange(_)) => return Ok(Outcome::invalid(e)),
        Err(e) => return Err(e.into()),
    };
    match found {
        Some(w) => {
            let doc = WitnessDocument::from_witness(&w);
            let json = serde_json::to_value(&doc)?;
            if let Some(out) = out {
                std::fs::write(out, serde_json::to_string_pretty(&doc)? + "\n")
                    .map_err(|e| DocError(format!("{}: {e}", out.display())))?;
            }
            Ok(Outcome::new(EXIT_OK, json, witness_text(&w)))
        }
        None => Ok(Outcome::new(
            EXIT_NEGATIVE,
            json!({"status": "none within budget", "budget": budget}),
            "none within budget",
        )),
    }
}

fn verify_witness(path: &Path) -> Result<Outcome, DocError> {
    let w = WitnessDocument::parse(&read(path)?)?;
    let valid = explorer::verify_witness(&w);
    Ok(Outcome::new(
        if valid { EXIT_OK } else { EXIT_NEGATIVE },
        json!({"valid": valid}),
        if valid { "witness verified" } else { "witness rejected" },
    ))
}

/// Runs the tool on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_INVALID;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let result = match &cli.command {
        Command::Analyze { file } => analyze(file),
        Command::Fundamental {
            file,
            node,
            mode,
            svg,
        } => fundamental(file, *node, *mode, svg.as_deref()),
        Command::Interpolate { file, values } => interpolate(file, values),
        Command::Search {
            mode,
            n,
            budget,
            out,
        } => search(*mode, *n, *budget, out.as_deref()),
        Command::VerifyWitness { file } => verify_witness(file),
    };
    let outcome = result.unwrap_or_else(Outcome::invalid);
    let printed = match cli.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json).unwrap_or_default(),
        Format::Text => outcome.text.trim_end().to_string(),
    };
    if outcome.code == EXIT_INVALID {
        let _ = writeln!(err, "{printed}");
    } else {
        let _ = writeln!(out, "{printed}");
    }
    outcome.code
}
