//! The machine-readable result record printed by every command.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use unipoiss::algebra::{RingMatrix, Scalar};
use unipoiss::bialgebra::LawFailure;
use unipoiss::poisson::AxiomFailure;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(path: &str, bytes: &[u8]) -> Self {
        InputDigest {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// Serialized with sorted keys, so identical inputs give byte-identical text.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub arguments: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub status: String,
    pub outputs: BTreeMap<String, Value>,
    pub failures: Vec<Value>,
}

impl Report {
    pub fn new(command: &str, arguments: Vec<String>) -> Self {
        Report {
            command: command.to_string(),
            arguments,
            inputs: Vec::new(),
            status: "ok".into(),
            outputs: BTreeMap::new(),
            failures: Vec::new(),
        }
    }

    pub fn output(&mut self, key: &str, value: impl Serialize) {
        self.outputs
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable output"));
    }

    pub fn to_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable report");
        s.push('\n');
        s
    }
}

pub fn scalar_matrix(m: &RingMatrix<Scalar>) -> Vec<Vec<String>> {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(|c| c.to_string()).collect())
        .collect()
}

pub fn failure_json(f: &AxiomFailure) -> Value {
    json!({
        "axiom": f.axiom.to_string(),
        "indices": f.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "defect": f.defect.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "message": f.to_string(),
    })
}

pub fn law_json(f: &LawFailure) -> Value {
    json!({
        "law": f.law.to_string(),
        "location": f.location,
        "residue": f.residue,
    })
}
