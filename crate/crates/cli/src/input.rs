use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Why a command stopped early.
#[derive(Debug)]
pub enum Stop {
    /// Usage, IO or malformed input: exit 2.
    Error(String),
    /// A checker rejected an input: exit 1 with this result.
    Fail(Value),
}

impl From<vcat_core::Error> for Stop {
    fn from(e: vcat_core::Error) -> Self {
        Stop::Error(e.to_string())
    }
}

pub type Run<T> = Result<T, Stop>;

/// A digest entry of the run manifest.
#[derive(Clone, Debug, Serialize)]
pub struct InputRecord {
    pub path: String,
    pub sha256: String,
}

/// A parsed input file.
pub struct Input {
    pub path: PathBuf,
    pub text: String,
    pub value: Value,
}

impl Input {
    /// Deserializes the original text so that schema errors keep their
    /// line and column.
    pub fn parse<T: DeserializeOwned>(&self) -> Run<T> {
        serde_json::from_str(&self.text).map_err(|e| position_error(&self.path, &e))
    }

    pub fn dir(&self) -> &Path {
        self.path.parent().unwrap_or(Path::new("."))
    }

    pub fn has(&self, key: &str) -> bool {
        self.value.get(key).is_some()
    }
}

fn position_error(path: &Path, e: &serde_json::Error) -> Stop {
    Stop::Error(format!(
        "{}:{}:{}: malformed JSON: {e}",
        path.display(),
        e.line(),
        e.column()
    ))
}

/// Loads files and remembers the digest of each one's canonical form.
#[derive(Default)]
pub struct Loader {
    pub records: Vec<InputRecord>,
}

impl Loader {
    pub fn load(&mut self, path: &Path) -> Run<Input> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Stop::Error(format!("{}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| position_error(path, &e))?;
        self.records.push(InputRecord {
            path: path.display().to_string(),
            sha256: digest(&value),
        });
        Ok(Input {
            path: path.to_path_buf(),
            text,
            value,
        })
    }
}

/// SHA-256 of the compact serialization; object keys come out sorted.
pub fn digest(value: &Value) -> String {
    hex::encode(Sha256::digest(value.to_string().as_bytes()))
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("engine types serialize")
}
