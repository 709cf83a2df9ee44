//! File formats: algebra files, arc-system files, DOT and JSON exports, and
//! the run report printed by the command-line tool.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::algebra::{parse_algebra, AlgebraError, GentleAlgebra};
use crate::strings::{Str, StringError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("line {line}: {source}")]
    String { line: usize, source: StringError },
    #[error("line {0}: band modules are not rigid and cannot be listed in an arc system")]
    Band(usize),
    #[error("unknown format `{0}`")]
    UnknownFormat(String),
}

/// Contents and SHA-256 digest of an input file.
pub fn read_input(path: &Path) -> Result<(String, String), IoError> {
    let bytes = std::fs::read(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    let digest = Sha256::digest(&bytes)
        .iter()
        .fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        });
    Ok((String::from_utf8_lossy(&bytes).into_owned(), digest))
}

pub fn read_algebra(path: &Path) -> Result<(GentleAlgebra, String), IoError> {
    let (text, digest) = read_input(path)?;
    Ok((parse_algebra(&text)?, digest))
}

/// One string per line; `#` starts a comment. A line `band: ...` names a
/// band and is rejected.
pub fn parse_arc_system(alg: &GentleAlgebra, text: &str) -> Result<Vec<Str>, IoError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with("band:") {
            return Err(IoError::Band(i + 1));
        }
        let w = Str::parse(alg, line).map_err(|source| IoError::String {
            line: i + 1,
            source,
        })?;
        out.push(w.canonical(alg));
    }
    Ok(out)
}

pub fn write_arc_system(alg: &GentleAlgebra, words: &[Str]) -> String {
    words
        .iter()
        .map(|w| format!("{}\n", w.display(alg)))
        .collect()
}

/// The quiver as a DOT digraph. A relation becomes a dotted, undirected
/// edge spanning its two arrows.
pub fn quiver_dot(alg: &GentleAlgebra) -> String {
    let mut s = String::from("digraph quiver {\n  rankdir=TB;\n");
    for v in alg.vertex_names() {
        let _ = writeln!(s, "  \"{v}\";");
    }
    for a in alg.arrows() {
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            alg.vertex_name(a.source),
            alg.vertex_name(a.target),
            a.name
        );
    }
    for &(a, b) in alg.relations() {
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [style=dotted, arrowhead=none, constraint=false, label=\"{}{}\"];",
            alg.vertex_name(alg.arrow(a).source),
            alg.vertex_name(alg.arrow(b).target),
            alg.arrow(a).name,
            alg.arrow(b).name
        );
    }
    s.push_str("}\n");
    s
}

pub fn quiver_json(alg: &GentleAlgebra) -> Value {
    json!({
        "vertices": alg.vertex_names(),
        "arrows": alg.arrows().iter().map(|a| json!({
            "name": a.name,
            "source": alg.vertex_name(a.source),
            "target": alg.vertex_name(a.target),
        })).collect::<Vec<_>>(),
        "relations": alg.relations().iter()
            .map(|&(a, b)| [alg.arrow(a).name.clone(), alg.arrow(b).name.clone()])
            .collect::<Vec<_>>(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// What a command prints. Text lines and JSON results are filled together
/// so every number in one appears in the other.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input: String,
    pub digest: String,
    pub results: serde_json::Map<String, Value>,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl RunReport {
    pub fn new(command: &str, input: &Path, digest: String) -> Self {
        RunReport {
            command: command.into(),
            input: input.display().to_string(),
            digest,
            results: serde_json::Map::new(),
            checks: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.results
            .insert(key.into(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn check(&mut self, name: &str, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
        });
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(self).expect("serializable");
            s.push('\n');
            return s;
        }
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            let _ = writeln!(s, "check failed: {}", c.name);
        }
        s
    }
}
