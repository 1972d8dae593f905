//! Artifact assembly: every command emits one JSON document that embeds the
//! quiver, the engine settings, and a content hash, so a stored artifact is
//! self-describing and byte-reproducible.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use cluster_core::context::QuiverContext;
use cluster_core::{Error, Result};

/// One finished command run, ready to serialize.
pub struct Artifact {
    pub command: String,
    pub quiver: Value,
    pub config: Value,
    pub passed: bool,
    pub failures: Vec<Value>,
    pub result: Value,
}

impl Artifact {
    pub fn new(command: &str, ctx: &QuiverContext) -> Artifact {
        Artifact {
            command: command.to_string(),
            quiver: ctx.quiver.to_json(),
            config: serde_json::to_value(&ctx.config).expect("engine config serializes"),
            passed: true,
            failures: Vec::new(),
            result: Value::Null,
        }
    }

    /// Record a failed assertion; the artifact then exits nonzero.
    pub fn fail(&mut self, failure: Value) {
        self.passed = false;
        self.failures.push(failure);
    }

    /// The full envelope, with a hash binding the payload to its context.
    pub fn envelope(&self) -> Value {
        let hash = context_hash(&self.quiver, &self.config);
        json!({
            "command": self.command,
            "quiver": self.quiver,
            "config": self.config,
            "context_hash": hash,
            "passed": self.passed,
            "failures": self.failures,
            "result": self.result,
        })
    }

    /// Serialized envelope: pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.envelope())
            .expect("artifact envelope serializes");
        text.push('\n');
        text
    }
}

fn context_hash(quiver: &Value, config: &Value) -> String {
    let mut hasher = Sha256::new();
    hasher.update(quiver.to_string().as_bytes());
    hasher.update(b"\n");
    hasher.update(config.to_string().as_bytes());
    format!("sha256:{:x}", hasher.finalize())
}

/// Write the document to `--out` if given, else stdout.
pub fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
        }),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())
                .and_then(|_| lock.flush())
                .map_err(|e| Error::InvalidInput(format!("cannot write to stdout: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cluster_core::quiver::{preset_quiver, Preset};

    #[test]
    fn envelope_is_deterministic_and_hash_tracks_the_context() {
        let c1 =
            QuiverContext::new(preset_quiver("A2", Preset::Alternating).unwrap()).unwrap();
        let mut a = Artifact::new("roots", &c1);
        a.result = json!({"count": 3});
        let b = Artifact {
            command: "roots".into(),
            quiver: c1.quiver.to_json(),
            config: serde_json::to_value(&c1.config).unwrap(),
            passed: true,
            failures: vec![],
            result: json!({"count": 3}),
        };
        assert_eq!(a.render(), b.render());

        let c2 =
            QuiverContext::new(preset_quiver("A3", Preset::Alternating).unwrap()).unwrap();
        let other = Artifact::new("roots", &c2);
        assert_ne!(
            a.envelope()["context_hash"],
            other.envelope()["context_hash"]
        );
        assert!(a.envelope()["context_hash"]
            .as_str()
            .unwrap()
            .starts_with("sha256:"));
    }

    #[test]
    fn failures_flip_the_passed_flag() {
        let c =
            QuiverContext::new(preset_quiver("A2", Preset::Alternating).unwrap()).unwrap();
        let mut a = Artifact::new("check", &c);
        assert!(a.passed);
        a.fail(json!({"what": "example"}));
        assert!(!a.passed);
        assert_eq!(a.envelope()["failures"].as_array().unwrap().len(), 1);
    }
}
