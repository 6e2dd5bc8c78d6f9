//! Merging a JSON config file into the argument list.
//!
//! Every key names a long flag. A key is appended as `--key value` unless
//! the flag already appears on the command line, so the command line wins.
//! Unknown keys become unknown flags and are rejected by the parser.

use std::ffi::OsString;
use std::fs;

use serde_json::Value;

use crate::args::Command;

fn config_path(raw: &[OsString]) -> Option<String> {
    let mut it = raw.iter().map(|a| a.to_string_lossy().into_owned());
    while let Some(arg) = it.next() {
        if arg == "--config" {
            return it.next();
        }
        if let Some(path) = arg.strip_prefix("--config=") {
            return Some(path.to_string());
        }
    }
    None
}

fn flag_present(raw: &[OsString], key: &str) -> bool {
    let flag = format!("--{key}");
    let prefix = format!("--{key}=");
    raw.iter().any(|a| {
        let a = a.to_string_lossy();
        a == flag || a.starts_with(&prefix)
    })
}

/// The argument list with config-file defaults appended.
pub fn expand(raw: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let Some(path) = config_path(&raw) else {
        return Ok(raw);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read config {path}: {e}"))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| format!("config {path} is not valid JSON: {e}"))?;
    let Value::Object(map) = value else {
        return Err(format!("config {path} must be a JSON object"));
    };
    let mut out = raw.clone();
    let has_command = raw
        .iter()
        .skip(1)
        .any(|a| Command::NAMES.contains(&a.to_string_lossy().as_ref()));
    for (key, value) in map {
        if key == "config" {
            return Err("config files cannot name another config".into());
        }
        if key == "command" {
            let Value::String(name) = value else {
                return Err("config key \"command\" must be a string".into());
            };
            if !has_command {
                out.insert(1.min(out.len()), name.into());
            }
            continue;
        }
        if flag_present(&raw, &key) {
            continue;
        }
        let flag = OsString::from(format!("--{key}"));
        match value {
            Value::Bool(true) => out.push(flag),
            Value::Bool(false) | Value::Null => {}
            Value::Number(n) => {
                out.push(flag);
                out.push(n.to_string().into());
            }
            Value::String(s) => {
                out.push(flag);
                out.push(s.into());
            }
            Value::Array(_) | Value::Object(_) => {
                return Err(format!("config key {key:?} must be a string, number or boolean"));
            }
        }
    }
    Ok(out)
}
