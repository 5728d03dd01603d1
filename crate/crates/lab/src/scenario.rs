//! Scenario files: a ring, named ideals and the checks to run on them.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use elemlab::identities::{claim_info, ClaimParams, ClaimRequest};
use elemlab::rings::{ideal_span, ring_make, Ideal, Ring, RingSpec};
use elemlab::Budgets;
use serde::{Deserialize, Serialize};

use crate::ConfigError;

pub const SCHEMA_VERSION: u32 = 1;

/// Name of the scenario's default ring in `rings` lookups.
pub const DEFAULT_RING: &str = "R";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema_version: u32,
    pub ring: RingSpec,
    /// Further rings, referenced by name from ideals and checks.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rings: BTreeMap<String, RingSpec>,
    pub degree: usize,
    #[serde(default)]
    pub budgets: Budgets,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub ideals: BTreeMap<String, IdealConfig>,
    #[serde(default)]
    pub checks: Vec<CheckConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    pub gens: Vec<String>,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckConfig {
    pub claim: String,
    #[serde(default)]
    pub ideals: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default)]
    pub params: ClaimParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default = "yes")]
    pub required: bool,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(path.to_owned(), e))?;
        Scenario::parse(&text)
    }

    /// Parses and validates; serde errors carry line and column.
    pub fn parse(text: &str) -> Result<Scenario, ConfigError> {
        let s: Scenario = serde_json::from_str(text).map_err(ConfigError::Json)?;
        s.validate()?;
        Ok(s)
    }

    fn ring_spec(&self, name: Option<&str>) -> Result<&RingSpec, ConfigError> {
        match name {
            None | Some(DEFAULT_RING) => Ok(&self.ring),
            Some(n) => self.rings.get(n).ok_or_else(|| ConfigError::Invalid(format!("undeclared ring `{n}`"))),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        if self.schema_version != SCHEMA_VERSION {
            return bad(format!("schema_version {} is not supported (expected {SCHEMA_VERSION})", self.schema_version));
        }
        if self.rings.contains_key(DEFAULT_RING) {
            return bad(format!("`{DEFAULT_RING}` names the default ring and cannot be redeclared"));
        }
        let b = &self.budgets;
        if [b.ring, b.ideal, b.generators, b.closure, b.enumerate].contains(&0) {
            return bad("budgets must be positive".into());
        }
        for (name, i) in &self.ideals {
            self.ring_spec(i.ring.as_deref())?;
            if i.gens.is_empty() {
                return bad(format!("ideal `{name}` has no generators"));
            }
        }
        for (k, c) in self.checks.iter().enumerate() {
            let at = format!("checks[{k}] ({})", c.claim);
            let (info, _) = claim_info(&c.claim).map_err(|e| ConfigError::Invalid(format!("{at}: {e}")))?;
            if c.ideals.len() != info.ideals {
                return bad(format!("{at}: takes {} ideal(s), got {}", info.ideals, c.ideals.len()));
            }
            let ring = c.ring.as_deref().unwrap_or(DEFAULT_RING);
            self.ring_spec(Some(ring)).map_err(|e| ConfigError::Invalid(format!("{at}: {e}")))?;
            for i in &c.ideals {
                let Some(decl) = self.ideals.get(i) else {
                    return bad(format!("{at}: undeclared ideal `{i}`"));
                };
                if decl.ring.as_deref().unwrap_or(DEFAULT_RING) != ring {
                    return bad(format!("{at}: ideal `{i}` belongs to another ring"));
                }
            }
            if c.budget == Some(0) || c.degree == Some(0) {
                return bad(format!("{at}: budget and degree must be positive"));
            }
        }
        Ok(())
    }

    /// Materialises rings and ideals and yields one request per check.
    /// Seeds default to `seed + index`.
    pub fn requests(&self, seed: u64) -> Result<Vec<ClaimRequest>, ConfigError> {
        let mut rings: BTreeMap<&str, Ring> = BTreeMap::new();
        let lib = |e: elemlab::Error| ConfigError::Invalid(e.to_string());
        rings.insert(DEFAULT_RING, ring_make(self.ring.clone(), &self.budgets).map_err(lib)?);
        for (name, spec) in &self.rings {
            rings.insert(name, ring_make(spec.clone(), &self.budgets).map_err(lib)?);
        }
        let mut ideals: BTreeMap<&str, Ideal> = BTreeMap::new();
        for (name, i) in &self.ideals {
            let ring = &rings[i.ring.as_deref().unwrap_or(DEFAULT_RING)];
            let gens = i
                .gens
                .iter()
                .map(|g| ring.parse(g))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| ConfigError::Invalid(format!("ideal `{name}`: {e}")))?;
            let ideal = ideal_span(ring, &gens).map_err(|e| ConfigError::Invalid(format!("ideal `{name}`: {e}")))?;
            ideals.insert(name, ideal.with_name(name.as_str()));
        }
        Ok(self
            .checks
            .iter()
            .enumerate()
            .map(|(k, c)| ClaimRequest {
                claim: c.claim.clone(),
                ring: rings[c.ring.as_deref().unwrap_or(DEFAULT_RING)].clone(),
                degree: c.degree.unwrap_or(self.degree),
                ideals: c.ideals.iter().map(|i| ideals[i.as_str()].clone()).collect(),
                params: c.params.clone(),
                seed: c.seed.unwrap_or(seed.wrapping_add(k as u64)),
                budget: c.budget,
            })
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "schema_version": 1,
        "ring": {"kind": "residue", "modulus": 8},
        "degree": 3,
        "ideals": {"A": {"gens": ["2"]}},
        "checks": [{"claim": "lemma2", "ideals": ["A"]}]
    }"#;

    #[test]
    fn minimal_scenario() {
        let s = Scenario::parse(MINIMAL).unwrap();
        assert!(s.checks[0].required);
        let reqs = s.requests(5).unwrap();
        assert_eq!(reqs[0].seed, 5);
        assert_eq!(reqs[0].ideals[0].len(), 4);
    }

    #[test]
    fn undeclared_ideal() {
        let text = MINIMAL.replace(r#""ideals": ["A"]"#, r#""ideals": ["D"]"#);
        assert!(matches!(Scenario::parse(&text), Err(ConfigError::Invalid(m)) if m.contains("undeclared ideal `D`")));
    }

    #[test]
    fn json_errors_have_positions() {
        let err = Scenario::parse("{\n  \"schema_version\": 1,\n  \"rnig\": 3\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn wrong_arity_and_zero_budget() {
        let text = MINIMAL.replace(r#""claim": "lemma2""#, r#""claim": "lemma3""#);
        assert!(Scenario::parse(&text).is_err());
        let text = MINIMAL.replace(r#""ideals": ["A"]}"#, r#""ideals": ["A"], "budget": 0}"#);
        assert!(Scenario::parse(&text).is_err());
    }
}
