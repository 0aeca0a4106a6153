//! Report rendering and atomic file output.
//!
//! CSV: header row, `.` decimal point, `\n` line ends, shortest round-trip
//! float formatting. JSON: a flat array of records, each carrying the
//! config hash and library version. A CSV written to a file gets a sidecar
//! `<file>.meta.json` with the same provenance.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};
use crate::error::{CliError, CliResult};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Shortest round-trip text for `v`, switching to exponent form outside
/// `[1e-4, 1e15)`.
pub fn format_float(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

/// Rows of named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

/// Everything a command produces.
#[derive(Debug, Clone, PartialEq)]
pub enum Report {
    Table(Table),
    Records(Vec<Map<String, Value>>),
}

impl Report {
    fn records(&self) -> Vec<Map<String, Value>> {
        match self {
            Report::Records(r) => r.clone(),
            Report::Table(t) => t
                .rows
                .iter()
                .map(|row| t.columns.iter().zip(row).map(|(c, v)| (c.to_string(), json!(v))).collect())
                .collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Table(t) => {
                out.push_str(&t.columns.join(","));
                out.push('\n');
                for row in &t.rows {
                    let cells: Vec<String> = row.iter().map(|v| format_float(*v)).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            Report::Records(records) => {
                let Some(first) = records.first() else {
                    return out;
                };
                let keys: Vec<&String> = first.keys().collect();
                out.push_str(&keys.iter().map(|k| k.as_str()).collect::<Vec<_>>().join(","));
                out.push('\n');
                for r in records {
                    let cells: Vec<String> = keys
                        .iter()
                        .map(|k| match r.get(*k) {
                            Some(Value::String(s)) => s.clone(),
                            Some(Value::Null) | None => String::new(),
                            Some(Value::Number(n)) if n.is_f64() => format_float(n.as_f64().unwrap_or(f64::NAN)),
                            Some(v) => v.to_string(),
                        })
                        .collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn to_json(&self, config_hash: &str) -> String {
        let records: Vec<Value> = self
            .records()
            .into_iter()
            .map(|mut r| {
                r.insert("config_hash".into(), json!(config_hash));
                r.insert("version".into(), json!(VERSION));
                Value::Object(r)
            })
            .collect();
        let mut text = serde_json::to_string_pretty(&records).expect("report serializes");
        text.push('\n');
        text
    }
}

/// Write `bytes` to `path` through a temporary file in the same directory
/// and a rename, so readers never see a partial file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let fail = |source| CliError::Write {
        path: path.to_path_buf(),
        source,
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
    tmp.write_all(bytes).map_err(fail)?;
    tmp.as_file().sync_all().map_err(fail)?;
    tmp.persist(path).map_err(|e| fail(e.error))?;
    Ok(())
}

pub fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_os_string();
    name.push(".meta.json");
    PathBuf::from(name)
}

/// Render `report` in the configured format and send it to the configured
/// destination.
pub fn emit(config: &RunConfig, report: &Report, default: Format) -> CliResult<()> {
    let hash = config.hash();
    let format = config.format(default);
    let text = match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(&hash),
    };
    match &config.output.path {
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
                // A closed reader (`| head`) is not a failure of the run.
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Write {
                    path: PathBuf::from("<stdout>"),
                    source: e,
                }),
                _ => Ok(()),
            }
        }
        Some(path) => {
            write_atomic(path, text.as_bytes())?;
            if format == Format::Csv {
                let meta = json!({
                    "command": config.command,
                    "config_hash": hash,
                    "version": VERSION,
                    "config": config,
                });
                let mut meta = serde_json::to_string_pretty(&meta).expect("metadata serializes");
                meta.push('\n');
                write_atomic(&sidecar_path(path), meta.as_bytes())?;
            }
            Ok(())
        }
    }
}
