//! CSV/JSON table output and the run manifest.
//!
//! Every file-producing command writes a `manifest.json` next to its
//! tables: the command, the canonical argument list that reproduces
//! the run, the seed, and a sha256 checksum per output file. Tables
//! carry `#`-prefixed metadata lines so the CSV stays self-describing
//! and diffable.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Table {
    pub name: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

pub struct RunMeta {
    pub command: &'static str,
    /// Canonical flag list (without `--out`) that reproduces the run.
    pub args: Vec<String>,
    pub seed: Option<u64>,
    pub params: Vec<(String, String)>,
}

fn render_csv(meta: &RunMeta, table: &Table) -> String {
    let mut s = String::new();
    s.push_str(&format!("# entnet {TOOL_VERSION}\n"));
    s.push_str(&format!("# command: {}\n", meta.command));
    if let Some(seed) = meta.seed {
        s.push_str(&format!("# seed: {seed}\n"));
    }
    for (k, v) in &meta.params {
        s.push_str(&format!("# {k}: {v}\n"));
    }
    s.push_str(&table.columns.join(","));
    s.push('\n');
    for row in &table.rows {
        s.push_str(&row.join(","));
        s.push('\n');
    }
    s
}

fn render_json(meta: &RunMeta, table: &Table) -> String {
    let params: serde_json::Map<String, serde_json::Value> = meta
        .params
        .iter()
        .map(|(k, v)| (k.clone(), serde_json::Value::String(v.clone())))
        .collect();
    let value = serde_json::json!({
        "tool": "entnet",
        "version": TOOL_VERSION,
        "command": meta.command,
        "seed": meta.seed,
        "params": params,
        "columns": table.columns,
        "rows": table.rows,
    });
    let mut text = serde_json::to_string_pretty(&value).expect("static structure");
    text.push('\n');
    text
}

/// Write all tables plus the manifest; returns the written file paths.
pub fn write_outputs(
    out_dir: &Path,
    meta: &RunMeta,
    tables: &[Table],
    format: Format,
) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let mut checksums = Vec::new();
    for table in tables {
        let ext = match format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let file_name = format!("{}.{ext}", table.name);
        let content = match format {
            Format::Csv => render_csv(meta, table),
            Format::Json => render_json(meta, table),
        };
        let path = out_dir.join(&file_name);
        fs::write(&path, &content)?;
        checksums.push((file_name, sha256_hex(content.as_bytes())));
        written.push(path);
    }

    let outputs: Vec<serde_json::Value> = checksums
        .iter()
        .map(|(f, c)| serde_json::json!({ "file": f, "sha256": c }))
        .collect();
    let manifest = serde_json::json!({
        "tool": "entnet",
        "version": TOOL_VERSION,
        "command": meta.command,
        "args": meta.args,
        "seed": meta.seed,
        "outputs": outputs,
    });
    let mut text = serde_json::to_string_pretty(&manifest).expect("static structure");
    text.push('\n');
    let manifest_path = out_dir.join("manifest.json");
    fs::write(&manifest_path, text)?;
    written.push(manifest_path);
    Ok(written)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hex::encode(hasher.finalize())
}

/// Format a float with full round-trip precision.
pub fn num(v: f64) -> String {
    format!("{v}")
}
