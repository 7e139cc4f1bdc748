//! Output formatting. Every floating-point value is printed with 12
//! significant digits so golden files stay stable across platforms.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use serde_json::{Map, Number, Value};

use crate::CliError;

/// Environment variable naming the directory relative output paths resolve
/// against.
pub const OUT_DIR_ENV: &str = "KGAIM_OUT_DIR";

/// 12 significant digits, scientific.
pub fn fmt12(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.11e}")
    } else {
        x.to_string()
    }
}

/// A JSON number rounded through the 12-digit representation, so JSON and
/// CSV outputs carry identical values.
pub fn json_num(x: f64) -> Value {
    let rounded: f64 = fmt12(x).parse().unwrap_or(x);
    Number::from_f64(rounded).map(Value::Number).unwrap_or(Value::Null)
}

pub fn json_obj(fields: Vec<(&str, Value)>) -> Value {
    let mut map = Map::new();
    for (k, v) in fields {
        map.insert(k.to_string(), v);
    }
    Value::Object(map)
}

/// Writes to `--output` (resolved against $KGAIM_OUT_DIR when relative) or
/// stdout.
pub fn write_output(text: &str, output: Option<&str>) -> Result<(), CliError> {
    match output {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::usage(format!("cannot write stdout: {e}")))?;
            Ok(())
        }
        Some(path) => {
            let mut p = PathBuf::from(path);
            if p.is_relative() {
                if let Ok(dir) = std::env::var(OUT_DIR_ENV) {
                    if !dir.is_empty() {
                        p = PathBuf::from(dir).join(p);
                    }
                }
            }
            if let Some(parent) = p.parent() {
                if !parent.as_os_str().is_empty() {
                    fs::create_dir_all(parent).map_err(|e| {
                        CliError::usage(format!("cannot create {}: {e}", parent.display()))
                    })?;
                }
            }
            fs::write(&p, text)
                .map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display())))
        }
    }
}

/// CSV with a fixed header; None cells are printed empty (null rows).
pub fn csv_table(header: &[&str], rows: &[Vec<Option<String>>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        let cells: Vec<&str> = row.iter().map(|c| c.as_deref().unwrap_or("")).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn json_pretty(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
