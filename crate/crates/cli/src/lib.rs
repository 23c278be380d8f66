//! Front end for the `rigidity` binary.
//!
//! Exit codes: 0 when every check passes, 1 when a mechanized check fails
//! (including a specialized complex whose differentials do not compose to
//! zero), 2 for malformed input, usage errors and unwritable output.

pub mod schema;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use rigidity_core::paperlab::full_report;
use rigidity_core::{tor_from_resolution, FieldCtx, Homology};

use schema::{
    build_algebra, build_complex, build_module, build_resolution, complex_failure, InputDocument,
};

#[derive(Debug, Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Check(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rigidity",
    version,
    about = "Exact Tor and homology over small Artinian algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct OutputOpts {
    /// Ground field: `q` or `fp:<prime>` [default: fp:101, or the field named in the input]
    #[arg(long, value_parser = parse_field)]
    pub field: Option<FieldCtx>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rebuild the bundled counterexample and run every check
    Verify {
        #[command(flatten)]
        opts: OutputOpts,
    },
    /// Tor lengths of a module against a resolution specialized into an algebra
    Tor {
        resolution: PathBuf,
        module: PathBuf,
        #[command(flatten)]
        opts: OutputOpts,
    },
    /// Homology of a complex of powers of a module
    Homology {
        complex: PathBuf,
        #[command(flatten)]
        opts: OutputOpts,
    },
    /// Summarize an input document
    Describe {
        file: PathBuf,
        #[command(flatten)]
        opts: OutputOpts,
    },
}

pub fn parse_field(s: &str) -> Result<FieldCtx, String> {
    if s == "q" {
        return Ok(FieldCtx::rationals());
    }
    let p = s
        .strip_prefix("fp:")
        .ok_or_else(|| format!("expected `q` or `fp:<p>`, got {s:?}"))?;
    let p: u64 = p.parse().map_err(|_| format!("{p:?} is not an integer"))?;
    FieldCtx::prime(p).map_err(|e| e.to_string())
}

/// Rendered output of a successful run, plus its exit code.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

/// Pretty JSON with sorted keys and a trailing newline.
pub fn render_json<T: Serialize>(value: &T) -> String {
    let v: Value = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string_pretty(&v).expect("valid JSON value");
    s.push('\n');
    s
}

fn read_doc(path: &Path) -> Result<InputDocument, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    InputDocument::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn select_field(flag: Option<FieldCtx>, docs: &[&InputDocument]) -> Result<FieldCtx, Failure> {
    if let Some(ctx) = flag {
        return Ok(ctx);
    }
    let mut chosen: Option<FieldCtx> = None;
    for doc in docs {
        if let Some(spec) = doc.field() {
            let ctx = spec.ctx()?;
            if chosen.is_some_and(|c| c != ctx) {
                return Err(Failure::Input(
                    "input documents name different fields".into(),
                ));
            }
            chosen = Some(ctx);
        }
    }
    Ok(chosen.unwrap_or_else(FieldCtx::default_prime))
}

pub fn run(command: &Command) -> Result<Outcome, Failure> {
    match command {
        Command::Verify { opts } => verify(opts),
        Command::Tor {
            resolution,
            module,
            opts,
        } => tor(resolution, module, opts),
        Command::Homology { complex, opts } => homology(complex, opts),
        Command::Describe { file, opts } => describe(file, opts),
    }
}

fn verify(opts: &OutputOpts) -> Result<Outcome, Failure> {
    let report = full_report(opts.field.unwrap_or_else(FieldCtx::default_prime));
    let body = match opts.format {
        Format::Json => render_json(&report),
        Format::Text => report.to_text(),
    };
    Ok(Outcome {
        body,
        code: if report.overall_pass { 0 } else { 1 },
    })
}

fn tor(resolution: &Path, module: &Path, opts: &OutputOpts) -> Result<Outcome, Failure> {
    let res_doc = read_doc(resolution)?;
    let mod_doc = read_doc(module)?;
    let InputDocument::Resolution(res) = &res_doc else {
        return Err(Failure::Input(format!(
            "{} is not a resolution document",
            resolution.display()
        )));
    };
    let InputDocument::Module(m) = &mod_doc else {
        return Err(Failure::Input(format!(
            "{} is not a module document",
            module.display()
        )));
    };
    if res.algebra != m.algebra {
        return Err(Failure::Input(
            "resolution and module use different algebras".into(),
        ));
    }
    let ctx = select_field(opts.field, &[&res_doc, &mod_doc])?;
    let alg = build_algebra(ctx, &res.algebra)?;
    let n = build_module(&alg, &m.module)?;
    let built = build_resolution(&alg, res)?;
    let report =
        tor_from_resolution(&built.resolution, &built.assignment, &n).map_err(complex_failure)?;

    let body = match opts.format {
        Format::Json => {
            let tor: serde_json::Map<String, Value> = report
                .degrees
                .iter()
                .map(|d| (d.degree.to_string(), json!(d.length)))
                .collect();
            render_json(&json!({
                "field": ctx.to_string(),
                "tor": tor,
                "degrees": report.degrees,
                "image_is_radical": report.image_is_radical,
            }))
        }
        Format::Text => {
            let mut s = format!("field: {ctx}\n");
            for d in &report.degrees {
                let _ = writeln!(
                    s,
                    "Tor_{}: length {} (kernel {}, image {})",
                    d.degree, d.length, d.ker_dim, d.im_dim
                );
            }
            s
        }
    };
    Ok(Outcome { body, code: 0 })
}

fn homology(path: &Path, opts: &OutputOpts) -> Result<Outcome, Failure> {
    let doc = read_doc(path)?;
    let InputDocument::Complex(c) = &doc else {
        return Err(Failure::Input(format!(
            "{} is not a complex document",
            path.display()
        )));
    };
    let ctx = select_field(opts.field, &[&doc])?;
    let alg = build_algebra(ctx, &c.algebra)?;
    // left to right: highest degree first
    let groups: Vec<Homology> = match build_complex(&alg, c)? {
        Some(complex) => {
            let mut h = complex.homology().map_err(complex_failure)?;
            h.reverse();
            h
        }
        None => Vec::new(),
    };
    let body = match opts.format {
        Format::Json => render_json(&json!({
            "field": ctx.to_string(),
            "homology": groups.iter().map(|h| h.length).collect::<Vec<_>>(),
            "details": groups,
        })),
        Format::Text => {
            let mut s = String::new();
            if !groups.is_empty() {
                let _ = writeln!(s, "field: {ctx}");
            }
            for (pos, h) in groups.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "position {pos}: length {} (kernel {}, image {})",
                    h.length, h.ker_dim, h.im_dim
                );
            }
            s
        }
    };
    Ok(Outcome { body, code: 0 })
}

fn describe(path: &Path, opts: &OutputOpts) -> Result<Outcome, Failure> {
    let doc = read_doc(path)?;
    let ctx = select_field(opts.field, &[&doc])?;
    let alg = build_algebra(ctx, doc.algebra())?;
    let mut summary = serde_json::Map::new();
    summary.insert("field".into(), json!(ctx.to_string()));
    summary.insert("algebra_dim".into(), json!(alg.dim()));
    summary.insert("algebra_basis".into(), json!(alg.basis_names()));
    let kind = match &doc {
        InputDocument::Algebra(_) => "algebra",
        InputDocument::Module(m) => {
            let n = build_module(&alg, &m.module)?;
            summary.insert("module_length".into(), json!(n.length()));
            summary.insert("radical_length".into(), json!(n.radical_submodule().dim()));
            "module"
        }
        InputDocument::Resolution(r) => {
            let built = build_resolution(&alg, r)?;
            summary.insert("variables".into(), json!(built.table.len()));
            summary.insert("betti".into(), json!(built.resolution.ranks()));
            let homogeneous = built.resolution.matrices().iter().all(|m| {
                m.entries().iter().all(|p| {
                    !matches!(
                        p.weighted_degree(&built.table),
                        rigidity_core::Degree::Inhomogeneous
                    )
                })
            });
            summary.insert("homogeneous_entries".into(), json!(homogeneous));
            "resolution"
        }
        InputDocument::Complex(c) => {
            summary.insert("ranks".into(), json!(c.complex.ranks));
            let base = build_module(&alg, &c.module)?;
            summary.insert("module_length".into(), json!(base.length()));
            let lengths: Vec<usize> = c.complex.ranks.iter().map(|r| r * base.length()).collect();
            summary.insert("chain_lengths".into(), json!(lengths));
            "complex"
        }
    };
    summary.insert("kind".into(), json!(kind));
    let body = match opts.format {
        Format::Json => render_json(&summary),
        Format::Text => {
            let mut s = String::new();
            for (k, v) in &summary {
                let _ = writeln!(s, "{k}: {v}");
            }
            s
        }
    };
    Ok(Outcome { body, code: 0 })
}

/// Runs a parsed command line, writes its output, and returns the exit code.
pub fn execute(cli: &Cli) -> i32 {
    let opts = match &cli.command {
        Command::Verify { opts }
        | Command::Tor { opts, .. }
        | Command::Homology { opts, .. }
        | Command::Describe { opts, .. } => opts,
    };
    match run(&cli.command) {
        Ok(outcome) => {
            let written = match &opts.out {
                Some(path) => fs::write(path, &outcome.body)
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{}", outcome.body);
                    Ok(())
                }
            };
            match written {
                Ok(()) => outcome.code,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    2
                }
            }
        }
        Err(f) => {
            eprintln!("error: {f}");
            f.exit_code()
        }
    }
}
