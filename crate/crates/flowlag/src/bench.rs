//! Batch runs over a directory of instance files.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;

use crate::error::CliError;
use crate::format::parse_instance;
use crate::solve::{run_method, Method, SolveSettings};

/// One CSV row. `value`, `optimal` and `nodes` are empty when the method failed or does not report them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub instance: String,
    pub method: String,
    pub value: Option<i64>,
    pub optimal: Option<bool>,
    pub nodes: Option<u64>,
    pub millis: u128,
}

/// `*.json` files of `dir`, sorted by file name.
pub fn instance_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|ext| ext == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Runs every method on every instance of `dir`, one row per (instance, method) in that order.
///
/// A method that fails on an instance (infeasible, over its cap) yields a row with empty value columns; unreadable
/// or invalid files abort the run.
pub fn run_bench(dir: &Path, methods: &[Method], settings: &SolveSettings) -> Result<Vec<BenchRow>, CliError> {
    let mut rows = Vec::new();
    for path in instance_files(dir)? {
        let text = fs::read_to_string(&path).map_err(|e| CliError::io(&path, e))?;
        let inst = parse_instance(&text).map_err(|e| CliError::format(&path, e))?;
        let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        for &method in methods {
            let clock = Instant::now();
            let outcome = run_method(&inst, method, settings);
            let millis = clock.elapsed().as_millis();
            let row = match outcome {
                Ok(sol) => BenchRow {
                    instance: name.clone(),
                    method: method.name().into(),
                    value: Some(sol.value),
                    optimal: Some(sol.optimal),
                    nodes: sol.nodes_explored,
                    millis,
                },
                Err(e) => {
                    log::warn!("{}: {}: {}", name, method, e);
                    BenchRow { instance: name.clone(), method: method.name().into(), value: None, optimal: None, nodes: None, millis }
                }
            };
            rows.push(row);
        }
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[BenchRow], out: W) -> Result<(), csv::Error> {
    let mut writer = csv::Writer::from_writer(out);
    if rows.is_empty() {
        writer.write_record(["instance", "method", "value", "optimal", "nodes", "millis"])?;
    }
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}
