//! Machine-readable verification reports. All integers are emitted as
//! decimal strings.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Where the expected value of a check comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Provenance {
    #[serde(rename = "paper formula")]
    Formula,
    #[serde(rename = "brute force")]
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: String,
    pub params: BTreeMap<String, String>,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    pub provenance: Provenance,
}

impl Check {
    /// A check that passes iff `expected == computed` as strings.
    pub fn equal(
        name: impl Into<String>,
        expected: impl Display,
        computed: impl Display,
        provenance: Provenance,
    ) -> Self {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        Self { check: name.into(), params: BTreeMap::new(), pass: expected == computed, expected, computed, provenance }
    }

    /// A check with an explicit verdict, for inequalities and predicates.
    pub fn verdict(
        name: impl Into<String>,
        expected: impl Display,
        computed: impl Display,
        pass: bool,
        provenance: Provenance,
    ) -> Self {
        Self {
            check: name.into(),
            params: BTreeMap::new(),
            expected: expected.to_string(),
            computed: computed.to_string(),
            pass,
            provenance,
        }
    }

    pub fn param(mut self, key: &str, value: impl Display) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn params(mut self, params: &BTreeMap<String, String>) -> Self {
        self.params.extend(params.iter().map(|(k, v)| (k.clone(), v.clone())));
        self
    }
}

/// Checks plus free-form records, claims left unverified and notes on how
/// the inputs were read.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Section {
    pub checks: Vec<Check>,
    pub records: Vec<Value>,
    pub unverified_claims: Vec<String>,
    pub notes: Vec<String>,
}

impl Section {
    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Section) {
        self.checks.extend(other.checks);
        self.records.extend(other.records);
        self.unverified_claims.extend(other.unverified_claims);
        self.notes.extend(other.notes);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }

    pub fn find(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.check == name)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub seed: String,
    pub checks: Vec<Check>,
    pub records: Vec<Value>,
    pub unverified_claims: Vec<String>,
    pub notes: Vec<String>,
    pub overall: bool,
}

impl Report {
    /// Sorts checks by name (stable for equal names) and deduplicates notes.
    pub fn new(command: &str, seed: u64, section: Section) -> Self {
        let mut checks = section.checks;
        checks.sort_by(|a, b| a.check.cmp(&b.check));
        let mut claims = section.unverified_claims;
        claims.sort();
        claims.dedup();
        let mut notes = section.notes;
        notes.sort();
        notes.dedup();
        Self {
            schema: SCHEMA_VERSION,
            command: command.into(),
            seed: seed.to_string(),
            overall: checks.iter().all(|c| c.pass),
            checks,
            records: section.records,
            unverified_claims: claims,
            notes,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_shape() {
        let mut s = Section::default();
        s.push(Check::equal("b", 65, "65", Provenance::BruteForce).param("s", 1));
        s.push(Check::verdict("a", ">= 28", "36.75", true, Provenance::Formula));
        s.unverified_claims.push("x".into());
        s.unverified_claims.push("x".into());
        let r = Report::new("demo", 7, s);
        assert!(r.overall);
        assert_eq!(r.checks[0].check, "a");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["seed"], "7");
        assert_eq!(v["checks"][1]["params"]["s"], "1");
        assert_eq!(v["checks"][0]["provenance"], "paper formula");
        assert_eq!(v["checks"][1]["provenance"], "brute force");
        assert_eq!(v["unverified_claims"].as_array().unwrap().len(), 1);
    }

    #[test]
    fn failures_propagate() {
        let mut s = Section::default();
        s.push(Check::equal("n", 65, 64, Provenance::Formula));
        assert!(!s.pass());
        assert_eq!(s.failures().len(), 1);
        assert!(!Report::new("x", 0, s).overall);
    }
}
