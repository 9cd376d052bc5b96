//! Model file: canonical JSON followed by a `#sha256:<hex>` line computed
//! over the JSON bytes.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{Model, TrainMeta, TEMPLATE_VERSION};
use crate::corpus::{Tag, NUM_TAGS};

pub const MODEL_FORMAT_VERSION: u32 = 1;

const CHECKSUM_PREFIX: &str = "\n#sha256:";

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model i/o: {0}")]
    Io(#[from] io::Error),
    #[error("model version mismatch: found {found}, expected {expected}")]
    VersionMismatch { found: String, expected: String },
    #[error("corrupt model file: {0}")]
    CorruptFile(String),
}

// Field order is alphabetical so the emitted object has sorted keys.
#[derive(Deserialize)]
struct ModelFile {
    labels: Vec<String>,
    template_version: String,
    train_meta: TrainMeta,
    version: u32,
    weights: Vec<(String, String, f64)>,
}

fn compact<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes")
}

fn checksum(json: &str) -> String {
    hex::encode(Sha256::digest(json.as_bytes()))
}

impl Model {
    /// Canonical serialized form. Equal models give identical bytes.
    pub fn to_file_string(&self) -> String {
        let labels: Vec<String> = Tag::ALL.iter().map(Tag::to_string).collect();
        let mut json = String::new();
        json.push_str("{\n");
        let _ = writeln!(json, "  \"labels\": {},", compact(&labels));
        let _ = writeln!(
            json,
            "  \"template_version\": {},",
            compact(&self.template_version)
        );
        let _ = writeln!(json, "  \"train_meta\": {},", compact(&self.train_meta));
        let _ = writeln!(json, "  \"version\": {MODEL_FORMAT_VERSION},");
        json.push_str("  \"weights\": [");
        for (i, (feature, tag, w)) in self.entries().into_iter().enumerate() {
            json.push_str(if i == 0 { "\n    " } else { ",\n    " });
            json.push_str(&compact(&(feature, tag.to_string(), w)));
        }
        json.push_str("\n  ]\n}");
        let sum = checksum(&json);
        format!("{json}{CHECKSUM_PREFIX}{sum}\n")
    }

    pub fn from_file_str(content: &str) -> Result<Self, ModelError> {
        let corrupt = |m: &str| ModelError::CorruptFile(m.to_string());
        let split = content
            .rfind(CHECKSUM_PREFIX)
            .ok_or_else(|| corrupt("missing checksum line"))?;
        let (json, tail) = content.split_at(split);
        let stored = tail[CHECKSUM_PREFIX.len()..].trim_end();
        if stored != checksum(json) {
            return Err(corrupt("checksum mismatch"));
        }

        let file: ModelFile =
            serde_json::from_str(json).map_err(|e| ModelError::CorruptFile(e.to_string()))?;
        if file.version != MODEL_FORMAT_VERSION {
            return Err(ModelError::VersionMismatch {
                found: file.version.to_string(),
                expected: MODEL_FORMAT_VERSION.to_string(),
            });
        }
        if file.template_version != TEMPLATE_VERSION {
            return Err(ModelError::VersionMismatch {
                found: file.template_version,
                expected: TEMPLATE_VERSION.to_string(),
            });
        }
        let canonical: Vec<String> = Tag::ALL.iter().map(Tag::to_string).collect();
        if file.labels != canonical {
            return Err(corrupt("unexpected label set"));
        }

        let mut entries = Vec::with_capacity(file.weights.len());
        let mut seen = std::collections::HashSet::new();
        for (feature, label, w) in file.weights {
            let tag: Tag = label
                .parse()
                .map_err(|_| ModelError::CorruptFile(format!("bad label {label:?}")))?;
            if !seen.insert((feature.clone(), tag.index())) {
                return Err(ModelError::CorruptFile(format!(
                    "duplicate weight for ({feature}, {label})"
                )));
            }
            entries.push(((feature, tag), w));
        }
        debug_assert!(seen.iter().all(|(_, i)| *i < NUM_TAGS));
        Ok(Model::from_weights(entries, file.train_meta))
    }

    pub fn save(&self, path: &Path) -> Result<(), ModelError> {
        fs::write(path, self.to_file_string())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, ModelError> {
        Self::from_file_str(&fs::read_to_string(path)?)
    }

    /// The checksum line of the serialized model.
    pub fn checksum(&self) -> String {
        let text = self.to_file_string();
        let at = text.rfind(CHECKSUM_PREFIX).expect("always present");
        text[at + 1..].trim_end().to_string()
    }
}
