use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// What a subcommand produced, before it is wrapped into a [`RunReport`].
pub struct Done {
    pub results: Value,
    pub pass: bool,
    pub text: String,
    pub dot: Option<String>,
}

/// Bad input or arguments; exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl CliError {
    pub fn input(e: impl std::fmt::Display) -> Self {
        CliError(e.to_string())
    }
}

impl Done {
    /// A check that could not complete; reported, with exit code 1.
    pub fn failed(msg: impl std::fmt::Display) -> Done {
        let msg = msg.to_string();
        Done { results: serde_json::json!({ "error": msg }), pass: false, text: format!("FAIL {msg}\n"), dot: None }
    }
}

/// Accumulates the bytes that determine a run.
#[derive(Default)]
pub struct Inputs {
    hasher: Sha256,
}

impl Inputs {
    pub fn add(&mut self, name: &str, bytes: &[u8]) {
        self.hasher.update((name.len() as u64).to_le_bytes());
        self.hasher.update(name.as_bytes());
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(bytes);
    }

    pub fn digest(self) -> String {
        format!("sha256:{:x}", self.hasher.finalize())
    }
}

#[derive(Serialize)]
pub struct Versions {
    pub cdomain: &'static str,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs_digest: String,
    pub pass: bool,
    pub results: Value,
    pub versions: Versions,
    pub wall_time_ms: u128,
}
