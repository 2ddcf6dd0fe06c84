//! Deterministic JSON reports and their timestamp sidecars.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

pub const REPORT_SCHEMA: &str = "ghostforge-report/1";

/// Outcome of a subcommand, mapped onto the exit-code contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Positive,
    Negative,
    Undetermined,
    /// A property that must hold failed on a checked instance.
    Violated,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Positive => 0,
            Verdict::Negative => 2,
            Verdict::Undetermined => 3,
            Verdict::Violated => 5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Positive => "positive",
            Verdict::Negative => "negative",
            Verdict::Undetermined => "undetermined",
            Verdict::Violated => "violated",
        }
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Positive
        } else {
            Verdict::Negative
        }
    }
}

/// A hashed input file (or a built-in object, hashed by name).
#[derive(Clone, Debug)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

impl Input {
    pub fn file(path: &Path, bytes: &[u8]) -> Self {
        Self { path: path.display().to_string(), sha256: sha256_hex(bytes) }
    }

    pub fn builtin(name: &str) -> Self {
        Self { path: format!("builtin:{name}"), sha256: sha256_hex(name.as_bytes()) }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug)]
pub struct Report {
    pub operation: String,
    pub verdict: Verdict,
    pub summary: String,
    pub inputs: Vec<Input>,
    pub body: Value,
}

impl Report {
    pub fn new(operation: &str, verdict: Verdict, summary: impl Into<String>, inputs: Vec<Input>, body: Value) -> Self {
        Self { operation: operation.into(), verdict, summary: summary.into(), inputs, body }
    }

    /// The canonical body: keys sorted, no timestamps.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("schema".into(), json!(REPORT_SCHEMA));
        m.insert("operation".into(), json!(self.operation));
        m.insert("verdict".into(), json!(self.verdict.label()));
        m.insert(
            "inputs".into(),
            Value::Array(self.inputs.iter().map(|i| json!({"path": i.path, "sha256": i.sha256})).collect()),
        );
        m.insert("result".into(), self.body.clone());
        Value::Object(m)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Writes the report and a `.meta.json` sidecar holding the wall-clock time.
    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        let text = self.render();
        write_file(path, text.as_bytes())?;
        let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let meta = json!({
            "report": path.file_name().map(|n| n.to_string_lossy().into_owned()),
            "report_sha256": sha256_hex(text.as_bytes()),
            "written_unix_seconds": secs,
            "version": env!("CARGO_PKG_VERSION"),
        });
        let text = serde_json::to_string_pretty(&meta).expect("serializes") + "\n";
        write_file(&sidecar(path), text.as_bytes())
    }
}

pub fn sidecar(path: &Path) -> PathBuf {
    let mut name = path.file_stem().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    path.with_file_name(name)
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("cannot create {}: {e}", dir.display())))?;
    }
    std::fs::write(path, bytes).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rendering_is_deterministic_and_sorted() {
        let r = Report::new("x", Verdict::Positive, "", vec![Input::builtin("D")], json!({"b": 1, "a": [2]}));
        assert_eq!(r.render(), r.render());
        let text = r.render();
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar(Path::new("out/r.json")), PathBuf::from("out/r.meta.json"));
    }
}
