//! Bundled scenarios and scenario-source resolution.

use std::path::Path;

use cordon_core::model::ValidatedScenario;
use sha2::{Digest, Sha256};

use crate::document::{emit, parse_document, parse_scenario_str};
use crate::error::CliError;

/// Moderate-leader case.
pub const CASE1: &str = include_str!("../scenarios/case1.toml");
/// Aggressive-leader case: identical except the leader's opponent
/// sub-behaviors are 0.1 instead of 0.
pub const CASE2: &str = include_str!("../scenarios/case2.toml");

pub fn builtin(name: &str) -> Option<&'static str> {
    match name {
        "case1" => Some(CASE1),
        "case2" => Some(CASE2),
        _ => None,
    }
}

/// A resolved `--scenario` argument.
pub struct Loaded {
    pub scenario: ValidatedScenario,
    /// The scenario source text (for digesting).
    pub text: String,
    /// Seed to use when the command line gives none.
    pub default_seed: Option<u64>,
}

/// Resolve a `--scenario` argument: a builtin name or a file path.
pub fn load(source: &str) -> Result<Loaded, CliError> {
    let text = match builtin(source) {
        Some(text) => text.to_string(),
        None => {
            let path = Path::new(source);
            std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?
        }
    };
    let scenario = parse_scenario_str(&text)?;
    let default_seed = parse_document(&text)?.run.default_seed;
    Ok(Loaded { scenario, text, default_seed })
}

/// Content digest of a scenario: SHA-256 over the canonical serialization
/// of its parsed document, so formatting and comment changes do not alter
/// the digest.
pub fn digest(source: &str) -> Result<String, CliError> {
    let doc = parse_document(source)?;
    let canonical = emit(&doc);
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let out = hasher.finalize();
    Ok(out.iter().map(|b| format!("{b:02x}")).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve() {
        assert!(builtin("case1").is_some());
        assert!(builtin("case2").is_some());
        assert!(builtin("case3").is_none());
    }

    #[test]
    fn digest_ignores_formatting_but_not_values() {
        let with_comment = format!("# reformatted\n{CASE1}");
        assert_eq!(digest(CASE1).unwrap(), digest(&with_comment).unwrap());
        assert_ne!(digest(CASE1).unwrap(), digest(CASE2).unwrap());
    }

    #[test]
    fn load_accepts_builtin_names() {
        let loaded = load("case1").unwrap();
        assert_eq!(loaded.scenario.max_ticks, 200);
        assert_eq!(loaded.text, CASE1);
        assert_eq!(loaded.default_seed, Some(42));
    }
}
