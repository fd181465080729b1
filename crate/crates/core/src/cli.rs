//! Command-line front end.
//!
//! Exit codes: `0` success, `1` valid query without a front-door set (or a
//! failed check), `2` usage, parse or validation error.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::admg::Admg;
use crate::estimand::{check_symbol_collisions, fd_estimand};
use crate::find::{check_fd, FdQuery};
use crate::format::parse_graph;
use crate::list::FdSetLister;
use crate::varset::VarSet;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "frontdoor",
    version,
    about = "Find and enumerate front-door adjustment sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one front-door set Z with I ⊆ Z ⊆ R, or "none".
    Find {
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        constraints: Constraints,
    },
    /// Stream every front-door set Z with I ⊆ Z ⊆ R, one per line.
    List {
        #[command(flatten)]
        query: QueryArgs,
        #[command(flatten)]
        constraints: Constraints,
        /// Stop after N sets; 0 means no limit.
        #[arg(long, value_name = "N", default_value_t = 0)]
        limit: u64,
    },
    /// Report which front-door conditions a given Z satisfies.
    Check {
        #[command(flatten)]
        query: QueryArgs,
        /// Candidate adjustment set.
        #[arg(short = 'z', value_name = "LIST", default_value = "")]
        z: String,
    },
    /// Print the front-door adjustment formula for a given Z.
    Estimand {
        #[command(flatten)]
        query: QueryArgs,
        /// Adjustment set.
        #[arg(short = 'z', value_name = "LIST")]
        z: String,
    },
}

#[derive(Args, Debug)]
struct QueryArgs {
    /// Graph file in the line-oriented text format.
    #[arg(short = 'g', value_name = "FILE")]
    graph: PathBuf,
    /// Treatment nodes, comma-separated.
    #[arg(short = 'x', value_name = "LIST")]
    x: String,
    /// Outcome nodes, comma-separated.
    #[arg(short = 'y', value_name = "LIST")]
    y: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct Constraints {
    /// Nodes every reported set must contain. Defaults to none.
    #[arg(short = 'i', value_name = "LIST")]
    include: Option<String>,
    /// Nodes a reported set may use. Defaults to all nodes outside X and Y.
    #[arg(short = 'r', value_name = "LIST")]
    range: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

struct Failure(i32, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure(EXIT_USAGE, msg.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(EXIT_USAGE, format!("write error: {e}"))
    }
}

fn load(path: &PathBuf) -> Result<Admg, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn parse_list(g: &Admg, list: &str) -> Result<VarSet, Failure> {
    let names: Vec<&str> = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    g.var_set(&names).map_err(|e| Failure::usage(e.to_string()))
}

fn render_set(g: &Admg, set: &VarSet) -> String {
    g.names_of(set).join(",")
}

fn degenerate(err: &mut dyn Write) -> io::Result<()> {
    writeln!(
        err,
        "degenerate: the empty set qualifies because no directed path leads from X to Y"
    )
}

fn query<'g>(g: &'g Admg, q: &QueryArgs, c: &Constraints) -> Result<FdQuery<'g>, Failure> {
    let x = parse_list(g, &q.x)?;
    let y = parse_list(g, &q.y)?;
    let include = match &c.include {
        Some(list) => parse_list(g, list)?,
        None => VarSet::new(),
    };
    let range = match &c.range {
        Some(list) => parse_list(g, list)?,
        None => g.observed().difference(&x.union(&y)),
    };
    FdQuery::new(g, x, y, include, range).map_err(|e| Failure::usage(e.to_string()))
}

fn find(
    q: QueryArgs,
    c: Constraints,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let g = load(&q.graph)?;
    let fq = query(&g, &q, &c)?;
    let found = fq.find().map_err(|e| Failure::usage(e.to_string()))?;
    match (q.format, &found) {
        (Format::Text, Some(z)) => writeln!(out, "{}", render_set(&g, z))?,
        (Format::Text, None) => writeln!(out, "none")?,
        (Format::Json, Some(z)) => writeln!(out, "{}", json!({ "set": g.names_of(z) }))?,
        (Format::Json, None) => writeln!(out, "{}", json!({ "set": null }))?,
    }
    match found {
        Some(z) => {
            if z.is_empty() {
                degenerate(err)?;
            }
            Ok(EXIT_OK)
        }
        None => Ok(EXIT_NONE),
    }
}

fn list(
    q: QueryArgs,
    c: Constraints,
    limit: u64,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let g = load(&q.graph)?;
    let fq = query(&g, &q, &c)?;
    let mut count = 0u64;
    for z in FdSetLister::from_query(fq).limit(limit) {
        match q.format {
            Format::Text => writeln!(out, "{}", render_set(&g, &z))?,
            Format::Json => writeln!(out, "{}", json!({ "set": g.names_of(&z), "index": count }))?,
        }
        out.flush()?;
        if z.is_empty() {
            degenerate(err)?;
        }
        count += 1;
    }
    Ok(if count == 0 { EXIT_NONE } else { EXIT_OK })
}

fn check(q: QueryArgs, z: String, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = load(&q.graph)?;
    let (x, y, z) = (
        parse_list(&g, &q.x)?,
        parse_list(&g, &q.y)?,
        parse_list(&g, &z)?,
    );
    let report = check_fd(&g, &x, &y, &z).map_err(|e| Failure::usage(e.to_string()))?;
    let witness = report.witness.as_ref().map(|w| w.render(&g));
    match q.format {
        Format::Text => {
            let verdict = |ok: bool| if ok { "pass" } else { "fail" };
            writeln!(
                out,
                "condition 1 (Z intercepts every directed path from X to Y): {}",
                verdict(report.cond1)
            )?;
            writeln!(
                out,
                "condition 2 (no open back-door path from X to Z): {}",
                verdict(report.cond2)
            )?;
            writeln!(
                out,
                "condition 3 (X blocks every back-door path from Z to Y): {}",
                verdict(report.cond3)
            )?;
            if let (Some(k), Some(w)) = (report.first_failure(), &witness) {
                writeln!(out, "witness for condition {k}: {w}")?;
            }
            let summary = if report.is_valid() {
                "front-door set"
            } else {
                "not a front-door set"
            };
            writeln!(out, "{summary}")?;
        }
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "cond1": report.cond1,
                "cond2": report.cond2,
                "cond3": report.cond3,
                "valid": report.is_valid(),
                "witness": witness,
            })
        )?,
    }
    Ok(if report.is_valid() {
        EXIT_OK
    } else {
        EXIT_NONE
    })
}

fn estimand(
    q: QueryArgs,
    z: String,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, Failure> {
    let g = load(&q.graph)?;
    check_symbol_collisions(&g, &g.observed()).map_err(|e| Failure::usage(e.to_string()))?;
    let (x, y, z) = (
        parse_list(&g, &q.x)?,
        parse_list(&g, &q.y)?,
        parse_list(&g, &z)?,
    );
    if z.is_empty() {
        writeln!(
            err,
            "warning: the adjustment set is empty; no front-door formula is printed"
        )?;
        return Ok(EXIT_NONE);
    }
    let e = fd_estimand(&g, &x, &y, &z).map_err(|e| Failure::usage(e.to_string()))?;
    let report = check_fd(&g, &x, &y, &z).map_err(|e| Failure::usage(e.to_string()))?;
    if let Some(k) = report.first_failure() {
        writeln!(
            err,
            "warning: {{{}}} violates front-door condition {k}; the formula need not equal P(y|do(x))",
            render_set(&g, &z)
        )?;
    }
    match q.format {
        Format::Text => writeln!(out, "{}", e.render_text())?,
        Format::Json => writeln!(out, "{}", e.render_json())?,
    }
    Ok(EXIT_OK)
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Find { query, constraints } => find(query, constraints, out, err),
        Command::List {
            query,
            constraints,
            limit,
        } => list(query, constraints, limit, out, err),
        Command::Check { query, z } => check(query, z, out),
        Command::Estimand { query, z } => estimand(query, z, out, err),
    };
    let code = result.unwrap_or_else(|Failure(code, msg)| {
        let _ = writeln!(err, "error: {msg}");
        code
    });
    let _ = out.flush();
    code
}
