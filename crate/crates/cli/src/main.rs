use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use phispec::closed_form::{closed_form_for, exact_integrality};
use phispec::matrix::{assemble, assemble_rational};
use phispec::oracle::char_poly_exact;
use phispec::perturbation::{
    compare_edge_addition, compare_edge_deletion, conjecture_sweep, rows_to_csv, CompareOptions, EnergyChangeReport,
    ReportRow, DEFAULT_UNCHANGED_TOL,
};
use phispec::spectrum::{check_integrality, spectrum_of, IntegralityVerdict, DEFAULT_GROUPING_TOL, DEFAULT_INTEGRALITY_TOL};
use phispec::tables::{complete_table, fmt_sig, star_table, tripartite_table, STAR_ORDERS, TRIPARTITE_PARTS};
use phispec::weight::catalog;
use phispec::{FamilySpec, Graph, WeightFunction};

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] phispec::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(phispec::Error::Numeric(_)) => 3,
            _ => 2,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Parser)]
#[command(name = "phispec", version, about = "Spectra and energies of degree-weighted adjacency matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues with multiplicities, energy and spectral radius.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Energy and spectral change under one edge deletion or addition.
    #[command(group(ArgGroup::new("operation").required(true).args(["delete_edge", "delete_cross_edge", "add_edge", "add_leaf_edge"])))]
    Compare {
        #[command(flatten)]
        input: Input,
        /// Delete `--edge`, or the family's default edge.
        #[arg(long)]
        delete_edge: bool,
        /// Delete the edge between the first vertices of the first two parts.
        #[arg(long)]
        delete_cross_edge: bool,
        /// Add `--edge`.
        #[arg(long, requires = "edge")]
        add_edge: bool,
        /// Join two leaves.
        #[arg(long)]
        add_leaf_edge: bool,
        /// Explicit edge as `U,V`.
        #[arg(long, value_parser = parse_edge)]
        edge: Option<(usize, usize)>,
        /// Relative band within which the energy counts as unchanged.
        #[arg(long, default_value_t = DEFAULT_UNCHANGED_TOL, value_parser = positive)]
        unchanged_tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Comparison tables for complete graphs, K_{p,p,p} and stars.
    Tables {
        #[arg(long, value_enum)]
        which: Option<Which>,
        /// Order of the complete-graph table.
        #[arg(long, default_value_t = 25)]
        n: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Whether every eigenvalue is an integer; exact when possible.
    Integrality {
        #[command(flatten)]
        input: Input,
        /// Distance to the nearest integer accepted by the numeric fallback.
        #[arg(long, default_value_t = DEFAULT_INTEGRALITY_TOL, value_parser = positive)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// K_n against K_n - e for a range of orders and weights.
    Sweep {
        #[arg(long, default_value_t = 3)]
        from: usize,
        #[arg(long, default_value_t = 30)]
        to: usize,
        /// Comma-separated weights; all by default.
        #[arg(long, value_delimiter = ',')]
        weights: Vec<WeightFunction>,
        #[arg(long, default_value_t = DEFAULT_UNCHANGED_TOL, value_parser = positive)]
        unchanged_tol: f64,
        #[command(flatten)]
        out: Output,
    },
    /// Dump the weighted adjacency matrix as CSV.
    Matrix {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exact characteristic polynomial (rational weights, order <= 16).
    Charpoly {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["family", "edges"])))]
struct Input {
    /// complete:N, bipartite:A,B, multipartite:P1,P2,..., tripartite:P,
    /// crown:P,T, star:N or starplus:N.
    #[arg(long)]
    family: Option<FamilySpec>,
    /// Edge-list file: one `u v` pair per line, optional `n <count>` header.
    #[arg(long)]
    edges: Option<PathBuf>,
    #[arg(long, default_value = "isi")]
    weight: WeightFunction,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Markdown)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Relative tolerance for merging eigenvalues into one group.
    #[arg(long, env = "PHISPEC_TOL", default_value_t = DEFAULT_GROUPING_TOL, value_parser = positive)]
    grouping_tol: f64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Markdown,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    Complete,
    Tripartite,
    Star,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err(format!("`{s}` is not a positive tolerance")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (u, v) = s.split_once(',').ok_or_else(|| format!("edge `{s}` must be `U,V`"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|e| format!("`{x}`: {e}"));
    Ok((parse(u)?, parse(v)?))
}

struct Loaded {
    graph: Graph,
    family: Option<FamilySpec>,
    label: String,
}

impl Input {
    fn load(&self) -> CliResult<Loaded> {
        match (&self.family, &self.edges) {
            (Some(f), None) => Ok(Loaded {
                graph: f.build()?,
                family: Some(f.clone()),
                label: f.to_string(),
            }),
            (None, Some(path)) => {
                let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                Ok(Loaded {
                    graph: phispec::graph::read_edge_list(&text)?,
                    family: None,
                    label: path.display().to_string(),
                })
            }
            _ => Err(CliError::Usage("give exactly one of --family and --edges".into())),
        }
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => io::stdout().write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "stdout".into(),
            source,
        }),
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn cmd_spectrum(input: &Input, out: &Output) -> CliResult<String> {
    let loaded = input.load()?;
    let w = input.weight;
    let s = spectrum_of(&assemble(&loaded.graph, w), out.grouping_tol)?;
    Ok(match out.format {
        Format::Json => to_json(&json!({
            "graph": loaded.label,
            "weight": w,
            "order": loaded.graph.order(),
            "spectrum": s,
        })),
        Format::Csv => {
            let mut t = String::from("eigenvalue,multiplicity\n");
            for g in s.groups() {
                writeln!(t, "{:e},{}", g.value, g.multiplicity).expect("write to string");
            }
            t
        }
        Format::Markdown => {
            let mut t = format!("{} with weight {} ({})\n\n| eigenvalue | multiplicity |\n|---|---|\n", loaded.label, w.id(), w.formula());
            for g in s.groups() {
                writeln!(t, "| {} | {} |", fmt_sig(g.value, 6), g.multiplicity).expect("write to string");
            }
            writeln!(t, "\nenergy: {}\nspectral radius: {}", fmt_sig(s.energy(), 6), fmt_sig(s.spectral_radius(), 6))
                .expect("write to string");
            t
        }
    })
}

enum Operation {
    Delete,
    DeleteCross,
    Add,
    AddLeaf,
}

fn pick_edge(loaded: &Loaded, op: Operation, explicit: Option<(usize, usize)>) -> CliResult<((usize, usize), bool)> {
    let deletion = matches!(op, Operation::Delete | Operation::DeleteCross);
    if let Some(e) = explicit {
        return Ok((e, deletion));
    }
    let edge = match op {
        Operation::Delete => loaded.family.as_ref().and_then(FamilySpec::default_deletion_edge),
        Operation::DeleteCross => match &loaded.family {
            Some(
                f @ (FamilySpec::CompleteBipartite(..)
                | FamilySpec::CompleteMultipartite(_)
                | FamilySpec::RegularMultipartite { .. }),
            ) => f.default_deletion_edge(),
            _ => return Err(CliError::Usage("--delete-cross-edge needs a multipartite family".into())),
        },
        Operation::Add => None,
        Operation::AddLeaf => {
            let g = &loaded.graph;
            let leaves: Vec<usize> = (0..g.order()).filter(|&v| g.degree(v) == 1).collect();
            leaves
                .iter()
                .enumerate()
                .find_map(|(i, &u)| leaves[i + 1..].iter().find(|&&v| !g.has_edge(u, v)).map(|&v| (u, v)))
        }
    };
    edge.map(|e| (e, deletion))
        .ok_or_else(|| CliError::Usage("no default edge for this input; pass --edge U,V".into()))
}

fn render_report(r: &EnergyChangeReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Csv => rows_to_csv(&[r.row()]),
        Format::Markdown => {
            let mut t = String::from("| quantity | value |\n|---|---|\n");
            let mut row = |k: &str, v: String| writeln!(t, "| {k} | {v} |").expect("write to string");
            row("before", r.graph_before.clone());
            row("after", r.graph_after.clone());
            row("weight", r.weight.id().to_string());
            row("energy before", fmt_sig(r.energy_before, 6));
            row("energy after", fmt_sig(r.energy_after, 6));
            row("energy change", fmt_sig(r.delta_energy, 6));
            row("lambda1 before", fmt_sig(r.lambda1_before, 6));
            row("lambda1 after", fmt_sig(r.lambda1_after, 6));
            row("spectral radius change", fmt_sig(r.delta_spectral_radius, 6));
            if let Some(rt) = &r.ratio_test {
                row(
                    "ratio test",
                    format!("{} (ratio {}, threshold {})", rt.verdict.as_str(), fmt_sig(rt.ratio, 6), fmt_sig(rt.threshold, 6)),
                );
            }
            row("verdict", r.verdict.as_str().to_string());
            row("connected after", r.after_connected.to_string());
            t
        }
    }
}

fn render_rows(rows: &[ReportRow], format: Format) -> String {
    match format {
        Format::Json => to_json(&rows),
        Format::Csv => rows_to_csv(rows),
        Format::Markdown => {
            let mut t = String::from(
                "| family | n | weight | E before | E after | delta | lambda1 before | lambda1 after | ratio test | verdict |\n|---|---|---|---|---|---|---|---|---|---|\n",
            );
            for r in rows {
                writeln!(
                    t,
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                    r.family,
                    r.n,
                    r.weight.id(),
                    fmt_sig(r.energy_before, 6),
                    fmt_sig(r.energy_after, 6),
                    fmt_sig(r.delta, 6),
                    fmt_sig(r.lambda1_before, 6),
                    fmt_sig(r.lambda1_after, 6),
                    r.ratio_test.map_or("", |v| v.as_str()),
                    r.verdict.as_str()
                )
                .expect("write to string");
            }
            t
        }
    }
}

fn cmd_tables(which: Option<Which>, n: usize, format: Format) -> CliResult<String> {
    let wanted = |w: Which| which.is_none_or(|x| x == w);
    let mut parts: Vec<(&str, String)> = Vec::new();
    let mut json = serde_json::Map::new();
    if wanted(Which::Complete) {
        let t = complete_table(n)?;
        json.insert("complete".into(), serde_json::to_value(&t).expect("serializable"));
        parts.push(("complete", if format == Format::Csv { t.to_csv() } else { t.to_markdown() }));
    }
    if wanted(Which::Tripartite) {
        let t = tripartite_table(&TRIPARTITE_PARTS)?;
        json.insert("tripartite".into(), serde_json::to_value(&t).expect("serializable"));
        parts.push(("tripartite", if format == Format::Csv { t.to_csv() } else { t.to_markdown() }));
    }
    if wanted(Which::Star) {
        let t = star_table(&STAR_ORDERS)?;
        json.insert("star".into(), serde_json::to_value(&t).expect("serializable"));
        parts.push(("star", if format == Format::Csv { t.to_csv() } else { t.to_markdown() }));
    }
    Ok(match format {
        Format::Json => to_json(&json),
        _ if parts.len() == 1 => parts.remove(0).1,
        Format::Csv => parts.iter().map(|(_, t)| t.as_str()).collect::<Vec<_>>().join("\n"),
        Format::Markdown => parts
            .iter()
            .map(|(name, t)| format!("## {name}\n\n{t}"))
            .collect::<Vec<_>>()
            .join("\n"),
    })
}

fn integrality(loaded: &Loaded, w: WeightFunction, tol: f64, grouping_tol: f64) -> CliResult<IntegralityVerdict> {
    if let Some(f) = &loaded.family {
        if let Some(cf) = closed_form_for(f, w)? {
            if let Some(exact) = cf.exact_values() {
                return Ok(check_integrality(&cf.spectrum(grouping_tol), tol, Some(&exact)));
            }
        }
    }
    if let Some(v) = exact_integrality(&loaded.graph, w)? {
        return Ok(v);
    }
    let s = spectrum_of(&assemble(&loaded.graph, w), grouping_tol)?;
    Ok(check_integrality(&s, tol, None))
}

fn cmd_integrality(input: &Input, tol: f64, out: &Output) -> CliResult<String> {
    let loaded = input.load()?;
    let w = input.weight;
    let v = integrality(&loaded, w, tol, out.grouping_tol)?;
    if v.is_heuristic() {
        eprintln!("warning: numeric verdict at tolerance {tol:e}; this is a heuristic, not a proof of integrality");
    }
    let method = if v.is_heuristic() { "numeric-tol" } else { "exact" };
    Ok(match out.format {
        Format::Json => to_json(&json!({
            "graph": loaded.label,
            "weight": w,
            "integral": v.integral,
            "witness": v.witness,
            "method": v.method,
        })),
        Format::Csv => format!(
            "graph,weight,integral,method,witness\n{},{},{},{},{}\n",
            loaded.label,
            w.id(),
            v.integral,
            method,
            v.witness.map_or(String::new(), |x| format!("{x:e}"))
        ),
        Format::Markdown => {
            let mut t = format!(
                "{} with weight {}: {} ({method})\n",
                loaded.label,
                w.id(),
                if v.integral { "integral" } else { "not integral" }
            );
            if let Some(x) = v.witness {
                writeln!(t, "non-integer eigenvalue: {}", fmt_sig(x, 6)).expect("write to string");
            }
            t
        }
    })
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Spectrum { input, out } => emit(out.output.as_ref(), &cmd_spectrum(&input, &out)?),
        Command::Compare {
            input,
            delete_edge,
            delete_cross_edge,
            add_edge,
            add_leaf_edge,
            edge,
            unchanged_tol,
            out,
        } => {
            let loaded = input.load()?;
            let op = match (delete_edge, delete_cross_edge, add_edge, add_leaf_edge) {
                (true, ..) => Operation::Delete,
                (_, true, ..) => Operation::DeleteCross,
                (_, _, true, _) => Operation::Add,
                _ => Operation::AddLeaf,
            };
            let ((u, v), deletion) = pick_edge(&loaded, op, edge)?;
            let opts = CompareOptions {
                grouping_tol: out.grouping_tol,
                unchanged_tol,
            };
            let label = loaded.family.as_ref().map(|_| loaded.label.as_str());
            let report = if deletion {
                compare_edge_deletion(&loaded.graph, label, u, v, input.weight, opts)?
            } else {
                compare_edge_addition(&loaded.graph, label, u, v, input.weight, opts)?
            };
            emit(out.output.as_ref(), &render_report(&report, out.format))
        }
        Command::Tables { which, n, out } => emit(out.output.as_ref(), &cmd_tables(which, n, out.format)?),
        Command::Integrality { input, tol, out } => emit(out.output.as_ref(), &cmd_integrality(&input, tol, &out)?),
        Command::Sweep {
            from,
            to,
            weights,
            unchanged_tol,
            out,
        } => {
            if from > to {
                return Err(CliError::Usage(format!("empty range {from}..={to}")));
            }
            let weights = if weights.is_empty() { catalog().to_vec() } else { weights };
            let ns: Vec<usize> = (from..=to).collect();
            let rows = conjecture_sweep(&ns, &weights, unchanged_tol)?;
            emit(out.output.as_ref(), &render_rows(&rows, out.format))
        }
        Command::Matrix { input, output } => {
            let loaded = input.load()?;
            emit(output.as_ref(), &assemble(&loaded.graph, input.weight).to_csv())
        }
        Command::Charpoly { input, output } => {
            let loaded = input.load()?;
            let chi = char_poly_exact(&assemble_rational(&loaded.graph, input.weight)?)?;
            emit(output.as_ref(), &format!("{chi}\n"))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
