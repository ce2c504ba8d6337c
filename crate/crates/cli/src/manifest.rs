//! Run manifests and the per-invocation context that fills them.

use std::fs;
use std::path::{Path, PathBuf};

use divgen::RNG_ALGORITHM;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

pub const SEED_ENV: &str = "DIVGEN_RNG_SEED";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub sha256: String,
}

impl FileDigest {
    fn of(path: &Path, bytes: &[u8]) -> Self {
        FileDigest {
            path: path.to_path_buf(),
            sha256: sha256_hex(bytes),
        }
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    /// Arguments after the program name; replaying parses these again.
    pub argv: Vec<String>,
    pub subcommand: String,
    pub parameters: serde_json::Value,
    pub rng_algorithm: String,
    /// Seed actually used, whatever its source. `None` when the run drew no
    /// random numbers.
    pub rng_seed: Option<u64>,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

impl Manifest {
    pub fn read(path: &Path) -> CliResult<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| CliError::from(e).in_file(path))
    }

    /// Sidecar location for a primary output file.
    pub fn sidecar(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }
}

/// Collects everything a manifest records while a command runs.
pub struct RunContext {
    argv: Vec<String>,
    seed_override: Option<u64>,
    subcommand: String,
    parameters: serde_json::Value,
    rng_seed: Option<u64>,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
}

impl RunContext {
    pub fn new(argv: Vec<String>, seed_override: Option<u64>) -> Self {
        RunContext {
            argv,
            seed_override,
            subcommand: String::new(),
            parameters: serde_json::Value::Null,
            rng_seed: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn describe(&mut self, subcommand: impl Into<String>, parameters: impl Serialize) {
        self.subcommand = subcommand.into();
        self.parameters = serde_json::to_value(parameters).unwrap_or(serde_json::Value::Null);
    }

    pub fn read(&mut self, path: &Path) -> CliResult<Vec<u8>> {
        let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
        self.inputs.push(FileDigest::of(path, &bytes));
        Ok(bytes)
    }

    pub fn read_text(&mut self, path: &Path) -> CliResult<String> {
        let bytes = self.read(path)?;
        String::from_utf8(bytes).map_err(|_| CliError::invalid("not valid UTF-8").in_file(path))
    }

    /// Seed from the flag, else the replayed manifest, else the environment,
    /// else fresh entropy. The result is recorded either way.
    pub fn seed(&mut self, flag: Option<u64>) -> CliResult<u64> {
        if let Some(s) = self.rng_seed {
            return Ok(s);
        }
        let seed = match flag.or(self.seed_override) {
            Some(s) => s,
            None => match std::env::var(SEED_ENV) {
                Ok(v) => v.trim().parse().map_err(|_| {
                    CliError::usage(format!("{SEED_ENV}={v} is not an unsigned integer"))
                })?,
                Err(_) => rand::random(),
            },
        };
        self.rng_seed = Some(seed);
        Ok(seed)
    }

    /// Writes to `path`, or to stdout when there is none.
    pub fn write(&mut self, path: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
        match path {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
                }
                fs::write(p, bytes).map_err(|e| CliError::io(p, e))?;
                self.outputs.push(FileDigest::of(p, bytes));
            }
            None => {
                use std::io::Write;
                std::io::stdout()
                    .write_all(bytes)
                    .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
            }
        }
        Ok(())
    }

    /// Writes the sidecar next to the first output file, if any, and returns
    /// the manifest.
    pub fn finish(self) -> CliResult<Manifest> {
        let manifest = Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            argv: self.argv,
            subcommand: self.subcommand,
            parameters: self.parameters,
            rng_algorithm: RNG_ALGORITHM.to_string(),
            rng_seed: self.rng_seed,
            inputs: self.inputs,
            outputs: self.outputs,
        };
        if let Some(first) = manifest.outputs.first() {
            let path = Manifest::sidecar(&first.path);
            let mut text = serde_json::to_string_pretty(&manifest)?;
            text.push('\n');
            fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
        }
        Ok(manifest)
    }
}
