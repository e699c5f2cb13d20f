//! Field, polytope registry and input handling shared by all subcommands.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use polylin::geometry::LatticePolytope;
use polylin::hom::{relation_degree, GradedHom};
use polylin::json::{GradedHomJson, PolytopeJson};
use polylin::{Error, Field, Scalar};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

/// Failure of one invocation: usage problems exit with 1, library errors
/// with 2.
#[derive(Debug)]
pub enum CliError {
    Usage { code: &'static str, detail: String },
    Domain(Error),
}

impl CliError {
    pub fn usage(code: &'static str, detail: impl Into<String>) -> Self {
        CliError::Usage {
            code,
            detail: detail.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage { .. } => 1,
            CliError::Domain(_) => 2,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            CliError::Usage { code, detail } => json!({"error": code, "detail": detail}),
            CliError::Domain(e) => {
                let mut out = json!({"error": e.code(), "detail": e.to_string()});
                if let Error::Recipe { path, source } = e {
                    out["path"] = json!(path);
                    out["cause"] = json!(source.root().code());
                }
                out
            }
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e.root() {
            Error::FieldMismatch(_) | Error::InvalidField(_) | Error::ParseScalar(_) => {
                CliError::usage(e.root().code(), e.to_string())
            }
            _ => CliError::Domain(e),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

const POLYTOPE_KEYS: [&str; 5] = ["source", "target", "polytope", "face", "base"];

pub struct Session {
    pub field: Field,
    pub seed: u64,
    relation_degree: Option<usize>,
    registry: BTreeMap<String, Value>,
}

impl Session {
    pub fn new(field: Field, seed: u64, relation_degree: Option<usize>) -> Self {
        Session {
            field,
            seed,
            relation_degree,
            registry: BTreeMap::new(),
        }
    }

    /// Registers the named polytopes of a file holding one polytope object
    /// or a list of them.
    pub fn load(&mut self, source: &str) -> CliResult<()> {
        let value = read_value(source)?;
        let items = match value {
            Value::Array(items) => items,
            v => vec![v],
        };
        for item in items {
            let p: PolytopeJson = decode(item)?;
            let name = p.name.clone();
            if name.is_empty() {
                return Err(CliError::usage("UsageError", format!("polytope in {source} has no name")));
            }
            p.to_polytope()?;
            if self.registry.contains_key(&name) {
                return Err(CliError::usage("UsageError", format!("polytope name {name:?} registered twice")));
            }
            self.registry.insert(name, serde_json::to_value(&p).expect("polytope json"));
        }
        Ok(())
    }

    fn resolve(&self, value: &mut Value, polytope_slot: bool) {
        match value {
            Value::String(s) if polytope_slot => {
                if let Some(p) = self.registry.get(s.as_str()) {
                    *value = p.clone();
                }
            }
            Value::Object(map) => {
                for (k, v) in map.iter_mut() {
                    self.resolve(v, POLYTOPE_KEYS.contains(&k.as_str()));
                }
            }
            Value::Array(items) => {
                for v in items {
                    self.resolve(v, false);
                }
            }
            _ => {}
        }
    }

    /// Reads a JSON payload from a file, `-` for standard input, inline JSON,
    /// or a bare word taken as a string.
    pub fn read<T: DeserializeOwned>(&self, source: &str) -> CliResult<T> {
        let mut value = read_value(source)?;
        self.resolve(&mut value, false);
        decode(value)
    }

    pub fn polytope(&self, source: &str) -> CliResult<LatticePolytope> {
        let mut value = read_value(source)?;
        self.resolve(&mut value, true);
        decode(value)
    }

    pub fn hom(&self, source: &str) -> CliResult<GradedHom> {
        let json: GradedHomJson = self.read(source)?;
        Ok(json.to_hom(self.field)?)
    }

    pub fn scalar(&self, text: &str) -> CliResult<Scalar> {
        Ok(self.field.parse_scalar(text.trim())?)
    }

    pub fn scalars(&self, text: &str) -> CliResult<Vec<Scalar>> {
        text.split(',').map(|s| self.scalar(s)).collect()
    }

    pub fn relation_degree(&self, p: &LatticePolytope) -> CliResult<usize> {
        match self.relation_degree {
            Some(d) => Ok(d),
            None => Ok(relation_degree(p)?),
        }
    }
}

fn read_value(source: &str) -> CliResult<Value> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::usage("IoError", e.to_string()))?;
        buf
    } else if Path::new(source).is_file() {
        std::fs::read_to_string(source).map_err(|e| CliError::usage("IoError", format!("{source}: {e}")))?
    } else if source.trim_start().starts_with(['{', '[', '"']) {
        source.to_string()
    } else {
        return Ok(Value::String(source.to_string()));
    };
    serde_json::from_str(&text).map_err(|e| CliError::usage("MalformedJson", format!("{source}: {e}")))
}

fn decode<T: DeserializeOwned>(value: Value) -> CliResult<T> {
    serde_json::from_value(value).map_err(|e| CliError::usage("MalformedJson", e.to_string()))
}

/// Comma-separated integers, e.g. `0,-1`.
pub fn parse_vector(text: &str) -> CliResult<Vec<i64>> {
    let text = text.trim().trim_start_matches('[').trim_end_matches(']');
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::usage("UsageError", format!("not an integer vector: {text:?}")))
        })
        .collect()
}

pub fn hom_json(f: &GradedHom) -> Value {
    serde_json::to_value(GradedHomJson::from_hom(f)).expect("hom json")
}
