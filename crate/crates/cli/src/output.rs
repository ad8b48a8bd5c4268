//! Deterministic CSV / JSON emission with a reproducibility header.
//!
//! Every file starts with the full effective configuration (CSV: `#`
//! comment lines; JSON: a `meta` object), so re-running the printed
//! configuration reproduces the file byte for byte.

use crate::CliError;
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// Ordered key/value metadata block.
#[derive(Debug, Default, Clone)]
pub struct Meta {
    entries: Vec<(String, String)>,
}

impl Meta {
    pub fn new(command: &str) -> Self {
        let mut meta = Self::default();
        meta.push("tool", format!("ipsim {}", env!("CARGO_PKG_VERSION")));
        meta.push("command", command);
        meta
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }
}

/// One output table: column names plus stringly-typed rows (numbers are
/// formatted with Rust's shortest-roundtrip `Display`, which is stable).
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

pub fn cell<T: ToString>(v: T) -> String {
    v.to_string()
}

pub fn cell_opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub struct OutputTarget {
    path: Option<PathBuf>,
    format: Format,
}

impl OutputTarget {
    pub fn new(path: Option<PathBuf>, format: Format) -> Self {
        Self { path, format }
    }

    pub fn write(&self, meta: &Meta, table: &Table) -> Result<(), CliError> {
        let rendered = match self.format {
            Format::Csv => render_csv(meta, table),
            Format::Json => render_json(meta, table),
        };
        match &self.path {
            Some(path) => write_file(path, &rendered),
            None => {
                std::io::stdout()
                    .write_all(rendered.as_bytes())
                    .map_err(CliError::from)?;
                Ok(())
            }
        }
    }
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::Resource(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, contents)
        .map_err(|e| CliError::Resource(format!("cannot write {}: {e}", path.display())))
}

fn render_csv(meta: &Meta, table: &Table) -> String {
    let mut out = String::new();
    for (key, value) in &meta.entries {
        out.push_str(&format!("# {key} = {value}\n"));
    }
    out.push_str(&table.columns.join(","));
    out.push('\n');
    for row in &table.rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn render_json(meta: &Meta, table: &Table) -> String {
    let meta_obj: serde_json::Map<String, Value> = meta
        .entries
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let obj: serde_json::Map<String, Value> = table
                .columns
                .iter()
                .zip(row)
                .map(|(col, val)| (col.to_string(), Value::String(val.clone())))
                .collect();
            Value::Object(obj)
        })
        .collect();
    let doc = json!({ "meta": Value::Object(meta_obj), "rows": rows });
    let mut rendered = serde_json::to_string_pretty(&doc).expect("json rendering");
    rendered.push('\n');
    rendered
}
