//! `amalgamlab`: command-line driver for the verification engine.

use std::process::ExitCode;

use amalgamlab::amalgam::catalog::{catalog, find_row, CatalogRow};
use amalgamlab::fp::completion::enumerate_completions;
use amalgamlab::fp::table3::{table3_row, verify_presentation_s_le_3};
use amalgamlab::fp::table4::{table4_row, verify_table4_row};
use amalgamlab::graphsym::measure_s;
use amalgamlab::report::{row_completion, verify_row, Status, VerificationReport, VerifyOptions};
use amalgamlab::Error;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(name = "amalgamlab", version, about = "Certifies the primitive amalgams of degree (5,2)")]
struct Cli {
    /// Print only the final status line.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Bounds {
    /// Coset limit for Todd-Coxeter enumeration.
    #[arg(long, default_value_t = 1_000_000)]
    max_cosets: usize,
    /// Largest completion order that is built.
    #[arg(long, default_value_t = 10_000_000)]
    max_order: u128,
}

impl Bounds {
    fn options(self) -> VerifyOptions {
        VerifyOptions { max_cosets: self.max_cosets, max_order: self.max_order }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Verify one row or `all`.
    Verify {
        target: String,
        /// Write JSON reports to a file, or to stdout when no path is given.
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Build the coset graph of a row's certified completion.
    Graph {
        label: String,
        /// Write the edge list to a file, or to stdout when no path is given.
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        emit: Option<String>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Search for finite completions by adding one relator.
    EnumerateCompletions {
        label: String,
        #[arg(long, default_value_t = 100_000)]
        max_cosets: usize,
        /// Stop after this many completions.
        #[arg(long, default_value_t = 3)]
        limit: usize,
    },
    /// Show a row's presentation, optionally checking it.
    Presentation {
        label: String,
        #[arg(long)]
        check: bool,
        #[arg(long, default_value_t = 1_000_000)]
        max_cosets: usize,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List the rows with their orders, types and s.
    List {
        /// Keep rows matching `s=<n>`.
        #[arg(long)]
        filter: Option<String>,
    },
}

/// A command failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Resource(_) | Error::TooLarge { .. } => EXIT_RESOURCE,
            Error::Parse(_) | Error::Invalid(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_USAGE, message: message.into() }
}

fn row(label: &str) -> Result<&'static CatalogRow, Failure> {
    find_row(label).ok_or_else(|| usage(format!("unknown row {label}")))
}

fn write_out(path: &str, text: &str) -> Result<(), Failure> {
    if path == "-" {
        println!("{text}");
        Ok(())
    } else {
        std::fs::write(path, text).map_err(|e| usage(format!("cannot write {path}: {e}")))
    }
}

fn catalog_list(filter: Option<&str>) -> Result<u8, Failure> {
    let s_filter = match filter {
        None => None,
        Some(f) => Some(
            f.strip_prefix("s=")
                .and_then(|v| v.parse::<u32>().ok())
                .ok_or_else(|| usage(format!("unsupported filter {f}; expected s=<n>")))?,
        ),
    };
    println!("{:<6} {:>2} {:>8} {:>8} {:>7}  {:<24} {:<24} B", "label", "s", "|A1|", "|A2|", "|B|", "A1", "A2");
    for r in catalog().iter().filter(|r| s_filter.is_none_or(|s| r.s == s)) {
        let am = r.amalgam();
        println!(
            "{:<6} {:>2} {:>8} {:>8} {:>7}  {:<24} {:<24} {}",
            r.label,
            r.s,
            am.a1().order(),
            am.a2().order(),
            am.b().order(),
            r.a1_type,
            r.a2_type,
            r.b_type
        );
    }
    Ok(0)
}

fn exit_code(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAIL
    } else if reports.iter().any(|r| r.status == Status::ResourceExceeded) {
        EXIT_RESOURCE
    } else {
        0
    }
}

fn print_report(r: &VerificationReport) {
    println!("{} (s = {}): {:?}", r.label, r.s, r.status);
    for c in &r.checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        let note = if c.note.is_empty() { String::new() } else { format!("  [{}]", c.note) };
        println!("  {mark} {:<34} expected {} observed {}{note}", c.name, c.expected, c.observed);
    }
}

fn verify(target: &str, json: Option<&str>, opts: VerifyOptions, quiet: bool) -> Result<u8, Failure> {
    let rows: Vec<&CatalogRow> = if target == "all" { catalog().iter().collect() } else { vec![row(target)?] };
    // Reports are collected in catalog order regardless of scheduling.
    let reports: Vec<VerificationReport> = rows.par_iter().map(|r| verify_row(r, &opts)).collect();
    if let Some(path) = json {
        let text = if target == "all" {
            serde_json::to_string_pretty(&reports)
        } else {
            serde_json::to_string_pretty(&reports[0])
        }
        .map_err(|e| usage(e.to_string()))?;
        write_out(path, &text)?;
    }
    if !quiet && json != Some("-") {
        reports.iter().for_each(print_report);
    }
    let passed = reports.iter().filter(|r| r.status == Status::Pass).count();
    if json != Some("-") {
        println!("{passed}/{} rows pass", reports.len());
    }
    Ok(exit_code(&reports))
}

fn graph(label: &str, emit: Option<&str>, opts: VerifyOptions, quiet: bool) -> Result<u8, Failure> {
    let r = row(label)?;
    let comp = row_completion(r, &opts)?;
    let g = comp.graph.action.graph();
    if let Some(path) = emit {
        write_out(path, g.to_edge_list().trim_end())?;
    }
    if !quiet && emit != Some("-") {
        let s = measure_s(&comp.graph.action, 8)?;
        println!(
            "{label}: {} vertices, {} edges, valency {:?}, girth {:?}, |G| = {}, s = {s}",
            g.vertex_count(),
            g.edge_count(),
            g.valency(),
            g.girth(),
            comp.group.order()
        );
    }
    Ok(0)
}

fn completions(label: &str, max_cosets: usize, limit: usize) -> Result<u8, Failure> {
    let t3 = table3_row(row(label)?.label).ok_or_else(|| usage(format!("{label} has no quotient search; its completion is geometric")))?;
    let found = enumerate_completions(t3, max_cosets, limit)?;
    for c in &found {
        let s = c.summary();
        println!("{label}: extra relator {} gives order {} on {} vertices", s.extra_relator, s.order, s.vertices);
    }
    if found.is_empty() {
        println!("{label}: no completion found");
        return Ok(EXIT_FAIL);
    }
    Ok(0)
}

fn presentation(label: &str, check: bool, max_cosets: usize) -> Result<u8, Failure> {
    row(label)?;
    if let Some(t3) = table3_row(label) {
        let p = t3.presentation();
        println!("{label}\n{p}");
        let split = t3.split()?;
        let defs = split.definitions(t3);
        if !defs.is_empty() {
            println!("  where {}", defs.join(", "));
        }
        let show = |v: &[amalgamlab::fp::Expr]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
        println!("  R: {}\n  S: {}\n  T: {}", show(&split.r), show(&split.s), show(&split.t));
        if !check {
            return Ok(0);
        }
        let c = verify_presentation_s_le_3(t3, max_cosets)?;
        let fmt = |o: Option<usize>| o.map_or("overflow".to_string(), |v| v.to_string());
        println!(
            "  orders (B, G_x, G_e) = ({}, {}, {}), expected ({}, {}, {})",
            fmt(c.literal.edge_core),
            fmt(c.literal.vertex),
            fmt(c.literal.edge),
            c.b_order,
            5 * c.b_order,
            2 * c.b_order
        );
        println!("  isomorphic to the catalog groups: {:?}", c.literal_isomorphic);
        if !c.completed_r.is_empty() {
            println!(
                "  with R completed by {}: orders ({}, {}, {}), isomorphic {:?}",
                c.completed_r.join(", "),
                fmt(c.completed.edge_core),
                fmt(c.completed.vertex),
                fmt(c.completed.edge),
                c.completed_isomorphic
            );
        }
        return Ok(if c.pass { 0 } else { EXIT_FAIL });
    }
    let t4 = table4_row(label).ok_or_else(|| usage(format!("no presentation for {label}")))?;
    println!("{label}\n{}", t4.presentation());
    println!("  where {}", t4.defs.join(", "));
    if !check {
        return Ok(0);
    }
    let c = verify_table4_row(label)?;
    println!("  relators hold in the own completion: {}; stored assignments pass in {:?}", c.own_completion, c.satisfied_in);
    Ok(if c.own_completion { 0 } else { EXIT_FAIL })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Catalog { command: CatalogCommand::List { filter } } => catalog_list(filter.as_deref()),
        Command::Verify { target, json, bounds } => verify(&target, json.as_deref(), bounds.options(), cli.quiet),
        Command::Graph { label, emit, bounds } => graph(&label, emit.as_deref(), bounds.options(), cli.quiet),
        Command::EnumerateCompletions { label, max_cosets, limit } => completions(&label, max_cosets, limit),
        Command::Presentation { label, check, max_cosets } => presentation(&label, check, max_cosets),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("AMALGAMLAB_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // Fails only if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
