//! Run configuration: defaults, optional TOML/JSON config file, and
//! command-line overrides, merged in that order of increasing precedence.

use std::path::Path;

use serde::Deserialize;

use cluster_core::context::EngineConfig;
use cluster_core::quiver::{build_quiver, parse_arrows, preset_quiver, Preset, Quiver};
use cluster_core::{Error, Result};

/// Quiver selection as it appears in a config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverSection {
    /// Dynkin type label, e.g. "A3" or "D4".
    #[serde(rename = "type")]
    pub type_label: Option<String>,
    /// Explicit arrows, e.g. "2->1,2->3" (overrides the preset).
    pub arrows: Option<String>,
    /// Orientation preset: "alternating" (default) or "linear".
    pub preset: Option<String>,
}

/// Contents of a `--config` file. Every field is optional; absent fields fall
/// back to built-in defaults, and command-line flags override everything.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub quiver: QuiverSection,
    /// Primes used for finite-field point counts.
    pub primes: Option<Vec<u64>>,
    /// Cap on enumerated subspace bases per Grassmannian count.
    pub grassmann_budget: Option<u64>,
    /// Cap on enumerated extension cocycles per middle-term count.
    pub extension_budget: Option<u64>,
    /// Iteration cap for basis expansions and sweep enumerations.
    pub expansion_cap: Option<usize>,
    /// Cap on seeds visited by the exchange-graph search.
    pub exchange_cap: Option<usize>,
    /// Largest rank for which maximal rigid objects are enumerated.
    pub tilting_rank_cap: Option<usize>,
    /// Default sample count for the fan check.
    pub fan_samples: Option<usize>,
    /// Seed for all randomized sampling.
    pub rng_seed: Option<u64>,
    /// Default output path (overridden by `--out`).
    pub out: Option<String>,
}

impl RunConfig {
    /// Load a config file, accepting TOML or JSON (tried in that order unless
    /// the extension decides).
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::InvalidInput(format!("cannot read config {}: {e}", path.display()))
        })?;
        let is_json = matches!(
            path.extension().and_then(|e| e.to_str()),
            Some("json") | Some("JSON")
        );
        let parsed = if is_json {
            serde_json::from_str::<RunConfig>(&text)
                .map_err(|e| Error::InvalidInput(format!("invalid JSON config: {e}")))
        } else {
            toml::from_str::<RunConfig>(&text).map_err(|e| {
                Error::InvalidInput(format!("invalid TOML config: {e}"))
            })
        };
        parsed
    }

    /// Engine settings: defaults overridden by whatever the file specifies.
    /// Validation (distinct primes, positive budgets) happens when the
    /// context is built.
    pub fn engine_config(&self) -> EngineConfig {
        let mut cfg = EngineConfig::default();
        if let Some(p) = &self.primes {
            cfg.primes = p.clone();
        }
        if let Some(b) = self.grassmann_budget {
            cfg.grassmann_budget = b as u128;
        }
        if let Some(b) = self.extension_budget {
            cfg.extension_budget = b as u128;
        }
        if let Some(c) = self.expansion_cap {
            cfg.expansion_cap = c;
        }
        if let Some(c) = self.exchange_cap {
            cfg.exchange_cap = c;
        }
        if let Some(c) = self.tilting_rank_cap {
            cfg.tilting_rank_cap = c;
        }
        if let Some(s) = self.fan_samples {
            cfg.fan_samples = s;
        }
        if let Some(s) = self.rng_seed {
            cfg.rng_seed = s;
        }
        cfg
    }
}

/// Build the quiver from flag-level and file-level selections; flags win.
pub fn resolve_quiver(
    flag_type: Option<&str>,
    flag_arrows: Option<&str>,
    flag_preset: Option<&str>,
    file: &QuiverSection,
) -> Result<Quiver> {
    let label = flag_type
        .or(file.type_label.as_deref())
        .ok_or_else(|| {
            Error::InvalidInput(
                "no quiver selected: pass --type <label> or set [quiver] type in the config file"
                    .into(),
            )
        })?;
    let arrows = flag_arrows.or(file.arrows.as_deref());
    if let Some(list) = arrows {
        let parsed = parse_arrows(list)?;
        return build_quiver(label, &parsed);
    }
    let preset_name = flag_preset.or(file.preset.as_deref()).unwrap_or("alternating");
    let preset = match preset_name {
        "alternating" => Preset::Alternating,
        "linear" => Preset::Linear,
        other => {
            return Err(Error::InvalidInput(format!(
                "unknown preset '{other}' (expected 'alternating' or 'linear')"
            )))
        }
    };
    preset_quiver(label, preset)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_survive_an_empty_config() {
        let rc = RunConfig::default();
        let cfg = rc.engine_config();
        assert_eq!(cfg, EngineConfig::default());
    }

    #[test]
    fn toml_fields_override_defaults() {
        let rc: RunConfig = toml::from_str(
            r#"
            rng_seed = 7
            fan_samples = 11
            primes = [2, 3, 5]

            [quiver]
            type = "A3"
            preset = "linear"
            "#,
        )
        .unwrap();
        let cfg = rc.engine_config();
        assert_eq!(cfg.rng_seed, 7);
        assert_eq!(cfg.fan_samples, 11);
        assert_eq!(cfg.primes, vec![2, 3, 5]);
        assert_eq!(cfg.expansion_cap, EngineConfig::default().expansion_cap);

        let q = resolve_quiver(None, None, None, &rc.quiver).unwrap();
        assert_eq!(q.n, 3);
        // Linear A3 orients i+1 -> i.
        assert!(q.arrows.contains(&(1, 0)) && q.arrows.contains(&(2, 1)));
    }

    #[test]
    fn flags_beat_the_file() {
        let file = QuiverSection {
            type_label: Some("A2".into()),
            arrows: None,
            preset: Some("linear".into()),
        };
        let q = resolve_quiver(Some("A3"), None, Some("alternating"), &file).unwrap();
        assert_eq!(q.n, 3);
        assert!(q.arrows.contains(&(0, 1)) && q.arrows.contains(&(2, 1)));

        let explicit = resolve_quiver(Some("A2"), Some("2->1"), None, &file).unwrap();
        assert_eq!(explicit.arrows, vec![(1, 0)]);
    }

    #[test]
    fn bad_selections_are_rejected() {
        let empty = QuiverSection::default();
        assert!(resolve_quiver(None, None, None, &empty).is_err());
        assert!(resolve_quiver(Some("A2"), None, Some("zigzag"), &empty).is_err());
        assert!(toml::from_str::<RunConfig>("unknown_field = 1").is_err());
    }
}
