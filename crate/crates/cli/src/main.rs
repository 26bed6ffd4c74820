//! gfc: invariant Gelfand-Fuchs cohomology and characteristic-class rings
//! from the command line. Every command reads a JSON action or
//! decomposition, runs the exact-arithmetic pipelines, and emits a
//! canonical JSON document (or a plain text table).

use clap::{Parser, Subcommand, ValueEnum};
use gfc_core::charclasses::{
    build_complex, char_class_ring, inertia_report, oracle_compare, Mode,
};
use gfc_core::docs::{
    betti_doc, comparison_doc, inertia_entry_doc, parse_input, ring_report_doc, to_canonical,
    InputDocument, InvariantsDoc,
};
use gfc_core::invariants::{inv_dim_bruteforce, inv_dim_predicted};
use gfc_core::{CoreError, Result};
use std::io::Read;
use std::process::ExitCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "gfc", version, about = "Invariant Gelfand-Fuchs cohomology engine")]
struct Cli {
    /// Input document: a file path, inline JSON, or "-" for stdin
    #[arg(long, global = true)]
    input: Option<String>,

    /// Highest cohomological degree to compute
    #[arg(long = "max-degree", global = true, default_value_t = 4)]
    max_degree: u32,

    /// Relativity mode of the Weil model
    #[arg(long, global = true, default_value = "absolute")]
    mode: String,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for the internal parallelism (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Seed for randomized property workloads; computations themselves are
    /// deterministic and ignore it
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decompose a group action into its isotypic data
    Decompose,
    /// Betti table of the truncated Weil pipeline
    Cohomology,
    /// Run the CE weight-zero oracle against the Weil pipeline and compare
    Oracle,
    /// Characteristic-class ring report(s), per inertia component
    Classes,
    /// Predicted vs brute-force invariant dimensions
    Invariants {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
        #[arg(long = "dim-v0")]
        dim_v0: usize,
        #[arg(long = "dim-w")]
        dim_w: usize,
    },
}

fn read_input(arg: &Option<String>) -> Result<InputDocument> {
    let text = match arg.as_deref() {
        Some("-") | None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CoreError::Schema(format!("reading stdin: {e}")))?;
            buf
        }
        Some(s) if s.trim_start().starts_with('{') => s.to_string(),
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| CoreError::Schema(format!("reading {path}: {e}")))?,
    };
    parse_input(&text)
}

/// Plain-text rendering of a JSON document: indented "key: value" lines,
/// scalar arrays inline. Deterministic because the JSON itself is.
fn render_table(value: &serde_json::Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        serde_json::Value::Object(map) => {
            for (k, v) in map {
                match v {
                    serde_json::Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_table(v, indent + 1, out);
                    }
                    serde_json::Value::Array(items)
                        if items.iter().any(|i| i.is_object()) =>
                    {
                        out.push_str(&format!("{pad}{k}:\n"));
                        for item in items {
                            render_table(item, indent + 1, out);
                            out.push_str(&format!("{}-\n", "  ".repeat(indent + 1)));
                        }
                    }
                    serde_json::Value::Array(items) => {
                        let joined: Vec<String> = items.iter().map(scalar_string).collect();
                        out.push_str(&format!("{pad}{k}: {}\n", joined.join(", ")));
                    }
                    other => {
                        out.push_str(&format!("{pad}{k}: {}\n", scalar_string(other)));
                    }
                }
            }
        }
        serde_json::Value::Array(items) => {
            for item in items {
                render_table(item, indent, out);
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_string(other))),
    }
}

fn scalar_string(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Array(items) => {
            let joined: Vec<String> = items.iter().map(scalar_string).collect();
            format!("[{}]", joined.join(", "))
        }
        other => other.to_string(),
    }
}

fn emit<T: serde::Serialize>(doc: &T, format: Format) -> Result<String> {
    match format {
        Format::Json => to_canonical(doc),
        Format::Table => {
            let value = serde_json::to_value(doc)
                .map_err(|e| CoreError::Invariant(format!("serialization: {e}")))?;
            let mut out = String::new();
            render_table(&value, 0, &mut out);
            Ok(out.trim_end().to_string())
        }
    }
}

/// Runs the selected command; the bool is the verdict (false forces a
/// nonzero exit even though the document was produced).
fn run(cli: &Cli) -> Result<(String, bool)> {
    let mode: Mode = cli.mode.parse()?;
    match &cli.command {
        Command::Decompose => {
            let d = read_input(&cli.input)?.decomposition()?;
            Ok((emit(&d, cli.format)?, true))
        }
        Command::Cohomology => {
            let d = read_input(&cli.input)?.decomposition()?;
            let bound = 2 * d.dim_v0 as u32;
            let complex = build_complex(&d, mode, Some(bound), cli.max_degree)?;
            let doc = betti_doc(
                mode,
                Some(bound),
                cli.max_degree,
                &complex.invariant_dims(),
                &complex.betti(),
            );
            Ok((emit(&doc, cli.format)?, true))
        }
        Command::Oracle => {
            let d = read_input(&cli.input)?.decomposition()?;
            let (ce, weil, ok) = oracle_compare(&d, cli.max_degree)?;
            let doc = comparison_doc(&ce, &weil, ok, cli.max_degree);
            Ok((emit(&doc, cli.format)?, ok))
        }
        Command::Classes => {
            let input = read_input(&cli.input)?;
            if let InputDocument::Action(a) = &input {
                if a.is_matrix_group() {
                    let reports = inertia_report(&a.matrices()?, mode, cli.max_degree)?;
                    let docs: Vec<_> = reports
                        .iter()
                        .map(|(c, r)| inertia_entry_doc(c, r, cli.max_degree))
                        .collect();
                    return Ok((emit(&docs, cli.format)?, true));
                }
            }
            let d = input.decomposition()?;
            let report = char_class_ring(&d, mode, cli.max_degree)?;
            let doc = ring_report_doc(&report, cli.max_degree);
            Ok((emit(&doc, cli.format)?, true))
        }
        Command::Invariants { r, s, dim_v0, dim_w } => {
            let predicted = inv_dim_predicted(*r, *s, *dim_v0, *dim_w);
            let brute_force = inv_dim_bruteforce(*r, *s, *dim_v0, *dim_w)?;
            let matches = predicted == brute_force;
            let doc = InvariantsDoc {
                r: *r,
                s: *s,
                dim_v0: *dim_v0,
                dim_w: *dim_w,
                predicted,
                brute_force,
                matches,
            };
            Ok((emit(&doc, cli.format)?, matches))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // a failure here only means a pool already exists, which is fine
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global();
    }
    match run(&cli) {
        Ok((output, ok)) => {
            println!("{output}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
