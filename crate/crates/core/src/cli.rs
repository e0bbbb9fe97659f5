//! `gmanvol <verb> <file>... [flags]`
//!
//! Every verb writes one JSON document per input file on stdout and, on
//! failure, one JSON error object per file on stderr. Exit codes: 0 success,
//! 1 validation failure, 2 unsupported input, 3 unreadable or malformed input.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify;
use crate::coverings;
use crate::graph::{self, GraphManifold};
use crate::seifert;
use crate::volume::{self, VolumeConfig};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Validate,
    Invariants,
    Cover,
    VolumeBound,
    Classify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoverMode {
    Characteristic,
    GenusRaising,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "gmanvol", version, about = "Graph manifold invariants, covers and Seifert-volume certificates")]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long, value_enum)]
    pub mode: Option<CoverMode>,
    #[arg(long)]
    pub center: Option<String>,
    #[arg(long, default_value_t = VolumeConfig::default().alpha_bound)]
    pub alpha_bound: u64,
    /// Indented output with decimal renderings of pi^2 multiples.
    #[arg(long)]
    pub pretty: bool,
    /// Number of input files processed concurrently.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Outcome of one verb on one file: a document and whether the file failed
/// validation (`validate` reports violations as data, not as an error).
struct FileOutcome {
    document: Value,
    code: i32,
}

fn read_input(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("library types always serialize")
}

fn invariants_document(gm: &GraphManifold) -> Result<Value> {
    let mut pieces = Vec::new();
    for p in &gm.pieces {
        let framing = graph::canonical_framing(gm, &p.id)?;
        let filled = graph::filled_piece_invariants(gm, &p.id, &framing)?;
        pieces.push(json!({
            "id": p.id,
            "genus": p.genus,
            "boundary": p.boundary_count,
            "base_euler_char": p.base_euler_char(),
            "framing": framing,
            "filled": filled.to_string(),
            "filled_euler": seifert::euler_number(&filled).to_string(),
            "filled_orbifold_euler_char": seifert::orbifold_euler_char(&filled).to_string(),
            "filled_geometry": to_value(&seifert::geometry_type(&filled)),
            "foliation_criterion": seifert::ehn_horizontal_foliation(&filled)?,
        }));
    }
    Ok(json!({
        "absolute_euler": graph::absolute_euler_number(gm)?.to_string(),
        "pm_j_form": graph::is_pm_j_form(gm),
        "pieces": pieces,
    }))
}

fn cover_document(gm: &GraphManifold, cmd: &Command) -> Result<Value> {
    let prime = cmd
        .prime
        .ok_or_else(|| Error::InvalidArgument("cover requires --prime".into()))?;
    let cov = match cmd.mode {
        Some(CoverMode::Characteristic) => coverings::characteristic_cover(gm, prime)?,
        Some(CoverMode::GenusRaising) => {
            let center = cmd.center.as_deref().ok_or_else(|| {
                Error::InvalidArgument("--mode genus-raising requires --center".into())
            })?;
            coverings::genus_raising_cover(gm, center, prime)?
        }
        None => return Err(Error::InvalidArgument("cover requires --mode".into())),
    };
    Ok(to_value(&cov))
}

fn volume_document(gm: &GraphManifold, cmd: &Command) -> Result<Value> {
    let config = VolumeConfig { alpha_bound: cmd.alpha_bound };
    let cert = volume::volume_lower_bound(gm, &config)?;
    let mut doc = to_value(&cert);
    if cmd.pretty {
        doc["bound_decimal"] = Value::String(cert.bound_pi2.decimal());
    }
    Ok(doc)
}

fn run_file(cmd: &Command, path: &Path) -> Result<FileOutcome> {
    let text = read_input(path)?;
    let ok = |document| Ok(FileOutcome { document, code: 0 });
    match cmd.verb {
        Verb::Validate => {
            let gm = graph::parse_document(&text)?;
            let violations = graph::validate(&gm);
            let code = if violations.is_empty() { 0 } else { 1 };
            Ok(FileOutcome {
                document: json!({ "valid": violations.is_empty(), "violations": to_value(&violations) }),
                code,
            })
        }
        Verb::Invariants => ok(invariants_document(&graph::parse_graph(&text)?)?),
        Verb::Cover => ok(cover_document(&graph::parse_graph(&text)?, cmd)?),
        Verb::VolumeBound => ok(volume_document(&graph::parse_graph(&text)?, cmd)?),
        Verb::Classify => {
            let desc = classify::parse_description(&text)?;
            ok(to_value(&classify::mapping_degree_finiteness(&desc)?))
        }
    }
}

fn error_document(path: &Path, err: &Error) -> Value {
    let mut doc = json!({
        "error": err.kind(),
        "file": path.display().to_string(),
        "message": err.to_string(),
    });
    if let Error::Validation(violations) = err {
        doc["violations"] = to_value(violations);
    }
    doc
}

fn render(value: &Value, pretty: bool) -> String {
    // serde_json maps are ordered by key, so compact output is canonical
    if pretty {
        serde_json::to_string_pretty(value).expect("json values always serialize")
    } else {
        value.to_string()
    }
}

fn run_all(cmd: &Command) -> Vec<Result<FileOutcome>> {
    let jobs = cmd.jobs.max(1);
    if jobs == 1 || cmd.files.len() < 2 {
        return cmd.files.iter().map(|f| run_file(cmd, f)).collect();
    }
    let chunk = cmd.files.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        let handles: Vec<_> = cmd
            .files
            .chunks(chunk)
            .map(|files| scope.spawn(move || files.iter().map(|f| run_file(cmd, f)).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker thread panicked"))
            .collect()
    })
}

pub fn execute(cmd: &Command) -> Output {
    let mut out = Output { code: 0, stdout: String::new(), stderr: String::new() };
    for (path, result) in cmd.files.iter().zip(run_all(cmd)) {
        match result {
            Ok(outcome) => {
                out.stdout.push_str(&render(&outcome.document, cmd.pretty));
                out.stdout.push('\n');
                out.code = out.code.max(outcome.code);
            }
            Err(err) => {
                out.stderr.push_str(&render(&error_document(path, &err), false));
                out.stderr.push('\n');
                out.code = out.code.max(err.exit_code());
            }
        }
    }
    out
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Command::try_parse_from(argv) {
        Ok(cmd) => execute(&cmd),
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Output { code: 0, stdout: text, stderr: String::new() }
                }
                _ => {
                    let doc = json!({ "error": "UsageError", "message": text.trim_end() });
                    Output { code: 3, stdout: String::new(), stderr: format!("{doc}\n") }
                }
            }
        }
    }
}
