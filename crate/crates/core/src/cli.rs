//! The `symbreak` command-line front end.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::closed::{self, PaintCost};
use crate::error::Error;
use crate::graph::{Family, Graph};
use crate::graph6::{emit_graph6, parse_graph6};
use crate::params::{Analyzer, Coloring, SearchConfig, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("{0} formula/oracle mismatch(es)")]
    Mismatch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. } | Error::EnumerationCap { .. }) => {
                EXIT_BUDGET
            }
            CliError::Core(Error::Internal(_)) | CliError::Mismatch(_) => EXIT_INTERNAL,
            CliError::Core(_) | CliError::Io(_) | CliError::Usage(_) => EXIT_INPUT,
            CliError::Unsupported(_) => EXIT_UNSUPPORTED,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "symbreak",
    version,
    about = "Distinguishing numbers, determining sets and paint costs of small graphs"
)]
pub struct Cli {
    /// Refuse searches expected to visit more candidates than this.
    #[arg(long, global = true, env = "SYMBREAK_BUDGET", default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Worker threads for parameter searches.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute every parameter of a graph, with witnesses.
    Analyze {
        #[command(flatten)]
        source: GraphSource,
        /// Leave witness colorings and sets out of the report.
        #[arg(long)]
        no_witness: bool,
    },
    /// Print a family member as graph6 or an edge list.
    Family {
        spec: Family,
        #[arg(long, value_enum, default_value_t = GraphFormat::Graph6)]
        format: GraphFormat,
    },
    /// Automorphism group order, generators and orbits.
    Group {
        #[command(flatten)]
        source: GraphSource,
    },
    /// Check whether a vertex coloring is distinguishing.
    CheckColoring {
        #[command(flatten)]
        source: GraphSource,
        /// Comma-separated color indices in vertex order.
        #[arg(long)]
        colors: String,
    },
    /// Determining and set-distinguishing checks for a vertex set.
    CheckSet {
        #[command(flatten)]
        source: GraphSource,
        /// Comma-separated vertex labels or indices.
        #[arg(long)]
        set: String,
        /// Optional colors for the set, in the order given by --set.
        #[arg(long)]
        colors: Option<String>,
    },
    /// Tabulate closed-form values for books or products.
    Table {
        #[arg(value_enum)]
        family: TableFamily,
        /// Values of m, e.g. `4-6,8`.
        #[arg(long)]
        m: String,
        /// Values of n (books only).
        #[arg(long)]
        n: Option<String>,
        /// Columns, e.g. `dist,det,fdist,paint:3`; defaults to all.
        #[arg(long)]
        params: Option<String>,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Compare book closed forms against exhaustive search.
    VerifyBooks {
        /// Values of m, e.g. `4-5`.
        #[arg(long)]
        m: String,
        /// Values of n, e.g. `2-4`.
        #[arg(long)]
        n: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
}

#[derive(Debug, Args)]
pub struct GraphSource {
    /// Family spec such as `cycle:5`, `book:4,3` or `hypercube:3`.
    #[arg(long, required_unless_present = "input", conflicts_with = "input")]
    pub family: Option<Family>,
    /// graph6 or edge-list file; `-` reads standard input.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    pub input_format: InputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Auto,
    Graph6,
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Graph6,
    Edges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFamily {
    Book,
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Markdown,
    Json,
}

impl GraphSource {
    fn load(&self) -> CliResult<Graph> {
        if let Some(f) = &self.family {
            return Ok(f.build()?);
        }
        let path = self.input.as_ref().expect("clap requires a source");
        let text = if path.as_os_str() == "-" {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        } else {
            std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?
        };
        let format = match self.input_format {
            InputFormat::Auto if looks_like_graph6(&text) => InputFormat::Graph6,
            InputFormat::Auto => InputFormat::Edges,
            other => other,
        };
        Ok(match format {
            InputFormat::Graph6 => parse_graph6(text.trim_start())?,
            _ => Graph::parse_edge_list(&text)?,
        })
    }
}

fn looks_like_graph6(text: &str) -> bool {
    let body = text.trim();
    body.starts_with(">>graph6<<") || (!body.is_empty() && !body.contains(char::is_whitespace))
}

/// Parses `2-4,7,9-10` into a sorted, deduplicated list.
pub fn parse_range_list(spec: &str) -> CliResult<Vec<u64>> {
    let bad = || CliError::Usage(format!("bad range list `{spec}`"));
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b.trim().parse().map_err(|_| bad())?;
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_usize_list(spec: &str) -> CliResult<Vec<usize>> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| CliError::Usage(format!("`{t}` is not a color index")))
        })
        .collect()
}

/// Resolves each token as a vertex label first, then as an index.
fn parse_vertex_list(g: &Graph, spec: &str) -> CliResult<Vec<usize>> {
    spec.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            if let Some(v) = g.vertex_by_label(t) {
                return Ok(v);
            }
            let v: usize = t
                .parse()
                .map_err(|_| CliError::Usage(format!("unknown vertex `{t}`")))?;
            if v >= g.vertex_count() {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: g.vertex_count(),
                }
                .into());
            }
            Ok(v)
        })
        .collect()
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

/// Runs one command, writing its output to `out`, and returns the exit code.
/// Errors are reported to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let config = SearchConfig {
        budget: cli.budget,
        jobs: cli.jobs,
    };
    match dispatch(&cli.command, config) {
        Ok((text, code)) => match write_output(cli, out, &text) {
            Ok(()) => code,
            Err(e) => report(err, &e),
        },
        Err((e, partial)) => {
            if let Some(text) = partial {
                if let Err(e) = write_output(cli, out, &text) {
                    return report(err, &e);
                }
            }
            report(err, &e)
        }
    }
}

fn report(err: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(err, "error: {e}");
    e.exit_code()
}

fn write_output(cli: &Cli, out: &mut dyn Write, text: &str) -> CliResult<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

type Outcome = std::result::Result<(String, i32), (CliError, Option<String>)>;

fn dispatch(cmd: &Command, config: SearchConfig) -> Outcome {
    let plain = |e: CliError| (e, None);
    match cmd {
        Command::Analyze { source, no_witness } => {
            let g = source.load().map_err(plain)?;
            let analyzer = Analyzer::with_config(&g, config);
            let mut report = analyzer.full_report().map_err(|e| plain(e.into()))?;
            if *no_witness {
                report = report.without_witnesses();
            }
            let text = to_json(&report);
            if report.is_complete() {
                Ok((text, EXIT_OK))
            } else {
                Err((
                    CliError::Core(Error::BudgetExceeded {
                        what: report.skipped.join(", "),
                        budget: config.budget,
                    }),
                    Some(text),
                ))
            }
        }
        Command::Family { spec, format } => {
            let g = spec.build().map_err(|e| plain(e.into()))?;
            let text = match format {
                GraphFormat::Graph6 => emit_graph6(&g) + "\n",
                GraphFormat::Edges => g.to_edge_list(),
            };
            Ok((text, EXIT_OK))
        }
        Command::Group { source } => {
            let g = source.load().map_err(plain)?;
            Ok((to_json(&group_json(&g, config)), EXIT_OK))
        }
        Command::CheckColoring { source, colors } => {
            let g = source.load().map_err(plain)?;
            check_coloring(&g, colors, config)
                .map(|v| (to_json(&v), EXIT_OK))
                .map_err(plain)
        }
        Command::CheckSet {
            source,
            set,
            colors,
        } => {
            let g = source.load().map_err(plain)?;
            check_set(&g, set, colors.as_deref(), config)
                .map(|v| (to_json(&v), EXIT_OK))
                .map_err(plain)
        }
        Command::Table {
            family,
            m,
            n,
            params,
            format,
        } => table(*family, m, n.as_deref(), params.as_deref(), *format)
            .map(|t| (t, EXIT_OK))
            .map_err(plain),
        Command::VerifyBooks { m, n, format } => {
            let sweep = verify_books(m, n, config).map_err(plain)?;
            let text = render_sweep(&sweep, *format);
            if sweep.mismatches > 0 {
                Err((CliError::Mismatch(sweep.mismatches), Some(text)))
            } else {
                Ok((text, EXIT_OK))
            }
        }
    }
}

fn group_json(g: &Graph, config: SearchConfig) -> Value {
    let analyzer = Analyzer::with_config(g, config);
    let group = analyzer.group();
    json!({
        "vertices": g.vertex_count(),
        "order": group.order().to_string(),
        "base": group.base(),
        "orbit_lengths": group.orbit_lengths(),
        "generators": group.generators(),
        "orbits": group.orbits(),
    })
}

fn check_coloring(g: &Graph, colors: &str, config: SearchConfig) -> CliResult<Value> {
    let coloring = Coloring::from_colors(parse_usize_list(colors)?);
    let analyzer = Analyzer::with_config(g, config);
    let witness = analyzer.violating_automorphism(&coloring)?;
    Ok(json!({
        "distinguishing": witness.is_none(),
        "colors_used": coloring.d(),
        "violating_automorphism": witness.as_ref().map(|p| p.images().to_vec()),
        "violating_cycles": witness.as_ref().map(|p| p.to_string()),
    }))
}

fn check_set(g: &Graph, set: &str, colors: Option<&str>, config: SearchConfig) -> CliResult<Value> {
    let set = parse_vertex_list(g, set)?;
    let analyzer = Analyzer::with_config(g, config);
    let determining = analyzer.is_determining_set(&set)?;
    let setstab = analyzer.setwise_stabilizer(&set)?;
    let mut out = json!({
        "set": set,
        "determining": determining,
        "setstab_order": setstab.order().to_string(),
    });
    if !set.is_empty() {
        let (k, witness) = analyzer.set_distinguishing_number(&set)?;
        out["set_distinguishing_number"] = json!(k);
        out["set_distinguishing_witness"] = json!(witness);
    }
    if let Some(colors) = colors {
        let colors = parse_usize_list(colors)?;
        out["set_distinguishing"] = json!(analyzer.is_set_distinguishing(&set, &colors)?);
    }
    Ok(out)
}

const BOOK_COLUMNS: &[&str] = &[
    "vertices",
    "dist",
    "det",
    "fdist",
    "upper_paint",
    "lower_paint",
    "upper_paint_bounds",
];
const PRODUCT_COLUMNS: &[&str] = &["vertices", "dist", "paint2", "det", "fdist"];

fn table(
    family: TableFamily,
    m: &str,
    n: Option<&str>,
    params: Option<&str>,
    format: TableFormat,
) -> CliResult<String> {
    let ms = parse_range_list(m)?;
    let defaults = match family {
        TableFamily::Book => BOOK_COLUMNS,
        TableFamily::Product => PRODUCT_COLUMNS,
    };
    let columns: Vec<String> = match params {
        Some(p) => p
            .split(',')
            .map(|c| c.trim().to_string())
            .filter(|c| !c.is_empty())
            .collect(),
        None => defaults.iter().map(|c| c.to_string()).collect(),
    };
    for c in &columns {
        let known = defaults.contains(&c.as_str())
            || (family == TableFamily::Book && c.starts_with("paint:"));
        if !known {
            return Err(CliError::Unsupported(format!("no closed form for `{c}`")));
        }
    }
    let mut rows = Vec::new();
    let mut keys = Vec::new();
    match family {
        TableFamily::Book => {
            keys.extend(["m", "n"].map(String::from));
            let ns = parse_range_list(n.ok_or_else(|| CliError::Usage("books need --n".into()))?)?;
            for &m in &ms {
                let m = u32::try_from(m).map_err(|_| CliError::Usage(format!("m = {m} too large")))?;
                for &n in &ns {
                    rows.push(book_row(m, n, &columns)?);
                }
            }
        }
        TableFamily::Product => {
            if n.is_some() {
                return Err(CliError::Usage("products take no --n".into()));
            }
            keys.push("m".to_string());
            for &m in &ms {
                let m = u32::try_from(m).map_err(|_| CliError::Usage(format!("m = {m} too large")))?;
                let p = closed::product_params(m)?;
                let mut cells = vec![m.to_string()];
                for c in &columns {
                    cells.push(match c.as_str() {
                        "vertices" => p.vertices.to_string(),
                        "dist" => p.dist.to_string(),
                        "paint2" => p.paint2.to_string(),
                        "det" => p.det.to_string(),
                        _ => p.fdist.to_string(),
                    });
                }
                rows.push(Row {
                    cells,
                    notes: Vec::new(),
                });
            }
        }
    }
    keys.extend(columns);
    Ok(render_table(&keys, &rows, format))
}

struct Row {
    cells: Vec<String>,
    notes: Vec<closed::Discrepancy>,
}

fn book_row(m: u32, n: u64, columns: &[String]) -> CliResult<Row> {
    let p = closed::book_params(m, n)?;
    let mut notes = p.discrepancies.clone();
    let mut cells = vec![m.to_string(), n.to_string()];
    for c in columns {
        cells.push(match c.as_str() {
            "vertices" => p.vertices.to_string(),
            "dist" => p.dist.to_string(),
            "det" => p.det.to_string(),
            "fdist" => p.fdist.to_string(),
            "upper_paint" => p.upper_paint.to_string(),
            "lower_paint" => p.lower_paint.to_string(),
            "upper_paint_bounds" => match closed::book_upper_paint_bounds(m, n) {
                Ok(b) => {
                    notes.extend(b.discrepancies);
                    format!("[{},{})", b.lower.value, b.upper_exclusive.value)
                }
                Err(_) => String::new(),
            },
            other => {
                let d: u64 = other["paint:".len()..]
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad column `{other}`")))?;
                match closed::book_paint_cost(m, n, d) {
                    Ok(cost) => cost.to_string(),
                    Err(Error::NotDistinguishable(_)) => String::new(),
                    Err(e) => return Err(e.into()),
                }
            }
        });
    }
    Ok(Row { cells, notes })
}

fn note_text(d: &closed::Discrepancy) -> String {
    format!(
        "{}: emitted {}, paper {}; {}",
        d.quantity, d.emitted, d.paper_value, d.note
    )
}

fn csv_line(fields: &[String]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 fields")
}

fn render_table(keys: &[String], rows: &[Row], format: TableFormat) -> String {
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            let mut header = keys.to_vec();
            header.push("discrepancies".into());
            out.push_str(&csv_line(&header));
            for r in rows {
                let mut fields = r.cells.clone();
                fields.push(r.notes.iter().map(note_text).collect::<Vec<_>>().join(" | "));
                out.push_str(&csv_line(&fields));
            }
        }
        TableFormat::Markdown => {
            let _ = writeln!(out, "| {} |", keys.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(keys.len()));
            let mut footnotes = Vec::new();
            for r in rows {
                let mut cells = r.cells.clone();
                if !r.notes.is_empty() {
                    let marks: Vec<String> = r
                        .notes
                        .iter()
                        .map(|d| {
                            footnotes.push(note_text(d));
                            format!("[^{}]", footnotes.len())
                        })
                        .collect();
                    cells[0] = format!("{}{}", cells[0], marks.concat());
                }
                let _ = writeln!(out, "| {} |", cells.join(" | "));
            }
            if !footnotes.is_empty() {
                out.push('\n');
                for (i, f) in footnotes.iter().enumerate() {
                    let _ = writeln!(out, "[^{}]: {f}", i + 1);
                }
            }
        }
        TableFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut obj = serde_json::Map::new();
                    for (k, v) in keys.iter().zip(&r.cells) {
                        obj.insert(k.clone(), Value::String(v.clone()));
                    }
                    obj.insert("discrepancies".into(), json!(r.notes));
                    Value::Object(obj)
                })
                .collect();
            out = to_json(&json!({ "rows": rows }));
        }
    }
    out
}

/// Outcome of comparing one formula value against the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Match,
    Mismatch,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepCell {
    pub m: u32,
    pub n: u64,
    pub quantity: String,
    pub d: Option<u64>,
    pub formula: String,
    pub oracle: Option<u64>,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BookSweep {
    pub cells: Vec<SweepCell>,
    pub mismatches: usize,
    pub skipped: usize,
}

/// Exhaustive check of the book closed forms: `dist`, `det`, `ρ^d` for
/// `d = dist..=det+1`, and `fdist` on every `B(m,n)` in the given ranges.
pub fn verify_books(m: &str, n: &str, config: SearchConfig) -> CliResult<BookSweep> {
    let ms = parse_range_list(m)?;
    let ns = parse_range_list(n)?;
    let mut cells = Vec::new();
    for &m in &ms {
        let m = u32::try_from(m).map_err(|_| CliError::Usage(format!("m = {m} too large")))?;
        for &n in &ns {
            sweep_book(m, n, config, &mut cells)?;
        }
    }
    let count = |s| cells.iter().filter(|c: &&SweepCell| c.status == s).count();
    Ok(BookSweep {
        mismatches: count(CellStatus::Mismatch),
        skipped: count(CellStatus::Skipped),
        cells,
    })
}

fn sweep_book(m: u32, n: u64, config: SearchConfig, cells: &mut Vec<SweepCell>) -> CliResult<()> {
    let (g, _) = crate::graph::book(m as usize, n as usize)?;
    let analyzer = Analyzer::with_config(&g, config);
    let mut push = |quantity: &str, d: Option<u64>, formula: &PaintCost, oracle: Option<u64>| {
        let status = match oracle {
            None => CellStatus::Skipped,
            Some(x) if formula.contains(x) => CellStatus::Match,
            Some(_) => CellStatus::Mismatch,
        };
        cells.push(SweepCell {
            m,
            n,
            quantity: quantity.to_string(),
            d,
            formula: formula.to_string(),
            oracle,
            status,
        });
    };
    let exact = |v: u64| PaintCost::Exact { value: v.into() };
    let budget_ok = |r: crate::Result<u64>| -> CliResult<Option<u64>> {
        match r {
            Ok(v) => Ok(Some(v)),
            Err(Error::BudgetExceeded { .. }) => Ok(None),
            Err(e) => Err(e.into()),
        }
    };

    let dist = budget_ok(analyzer.distinguishing_number().map(|(d, _)| d as u64))?;
    let det = budget_ok(analyzer.determining_number().map(|(d, _)| d as u64))?;
    push("dist", None, &exact(closed::book_dist(m, n)?), dist);
    push("det", None, &exact(closed::book_det(m, n)?), det);
    let (Some(dist), Some(det)) = (dist, det) else {
        push("fdist", None, &exact(closed::book_fdist(m, n)?), None);
        return Ok(());
    };
    let mut fdist = None;
    let mut complete = true;
    for d in dist..=det + 1 {
        let oracle = budget_ok(analyzer.paint_cost(d as usize).map(|(c, _)| c as u64))?;
        complete &= oracle.is_some();
        if fdist.is_none() && complete && oracle == Some(det) {
            fdist = Some(d);
        }
        push("paint_cost", Some(d), &closed::book_paint_cost(m, n, d)?, oracle);
    }
    push("fdist", None, &exact(closed::book_fdist(m, n)?), fdist);
    Ok(())
}

fn render_sweep(sweep: &BookSweep, format: TableFormat) -> String {
    let keys: Vec<String> = ["m", "n", "quantity", "d", "formula", "oracle", "status"]
        .map(String::from)
        .to_vec();
    match format {
        TableFormat::Json => to_json(sweep),
        TableFormat::Csv | TableFormat::Markdown => {
            let rows: Vec<Row> = sweep
                .cells
                .iter()
                .map(|c| Row {
                    cells: vec![
                        c.m.to_string(),
                        c.n.to_string(),
                        c.quantity.clone(),
                        c.d.map(|d| d.to_string()).unwrap_or_default(),
                        c.formula.clone(),
                        c.oracle.map(|o| o.to_string()).unwrap_or_default(),
                        serde_json::to_value(c.status)
                            .ok()
                            .and_then(|v| v.as_str().map(String::from))
                            .unwrap_or_default(),
                    ],
                    notes: closed::book_discrepancies(c.m, c.n)
                        .into_iter()
                        .filter(|d| d.quantity == c.quantity)
                        .collect(),
                })
                .collect();
            render_table(&keys, &rows, format)
        }
    }
}

/// Entry point used by the binary.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(&cli, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let cli = Cli::try_parse_from(std::iter::once("symbreak").chain(args.iter().copied()))
            .expect("valid arguments");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&cli, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn range_lists() {
        assert_eq!(parse_range_list("2-4,7, 3").unwrap(), vec![2, 3, 4, 7]);
        assert_eq!(parse_range_list("").unwrap(), Vec::<u64>::new());
        assert!(parse_range_list("a-3").is_err());
    }

    #[test]
    fn analyze_cycle() {
        let (code, out, _) = run_args(&["analyze", "--family", "cycle:5"]);
        assert_eq!(code, EXIT_OK);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["dist"], 3);
        assert_eq!(v["paint_cost"]["3"], 2);
    }

    #[test]
    fn budget_refusal_prints_partial_report() {
        let (code, out, err) = run_args(&["analyze", "--family", "book:4,4", "--budget", "5"]);
        assert_eq!(code, EXIT_BUDGET);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!(!v["skipped"].as_array().unwrap().is_empty());
        assert!(err.contains("budget"));
    }

    #[test]
    fn group_and_checks() {
        let (_, out, _) = run_args(&["group", "--family", "book:4,3"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["order"], "12");
        let (_, out, _) = run_args(&["check-set", "--family", "hypercube:3", "--set", "000,010,110"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["determining"], true);
        assert_eq!(v["setstab_order"], "2");
        let (_, out, _) = run_args(&["check-coloring", "--family", "cycle:5", "--colors", "0,0,0,0,0"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["distinguishing"], false);
        assert!(v["violating_cycles"].as_str().unwrap().starts_with('('));
        let (code, _, _) = run_args(&["check-set", "--family", "cycle:5", "--set", "9"]);
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn tables() {
        let (code, out, _) = run_args(&[
            "table", "book", "--m", "8", "--n", "473,703", "--params", "det,dist,fdist",
        ]);
        assert_eq!(code, EXIT_OK);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "m,n,det,dist,fdist,discrepancies");
        assert_eq!(lines[1], "8,473,472,3,80,");
        assert!(lines[2].starts_with("8,703,702,3,119,"));
        let (_, out, _) = run_args(&["table", "product", "--m", "1,6,7", "--format", "markdown"]);
        assert!(out.contains("| 6 | 384 | 2 | 192 | 63 | 12 |"));
        let (code, _, _) = run_args(&["table", "product", "--m", "6", "--params", "upper_paint"]);
        assert_eq!(code, EXIT_UNSUPPORTED);
    }

    #[test]
    fn verify_small_books() {
        let (code, out, _) = run_args(&["verify-books", "--m", "4", "--n", "2-3", "--format", "json"]);
        assert_eq!(code, EXIT_OK, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["mismatches"], 0);
        let (code, out, _) = run_args(&["verify-books", "--m", "", "--n", ""]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 1);
    }
}
