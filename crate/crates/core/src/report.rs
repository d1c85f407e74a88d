//! Verification reports: one named check per identity or residual claim.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::series::Mismatch;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Reported without a pass/fail judgement.
    Info,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub params: BTreeMap<String, String>,
    /// `"0"` for exact agreement, an exact rational for exact mismatches,
    /// otherwise a decimal.
    pub max_deviation: String,
    /// `"exact"` or a decimal threshold.
    pub tolerance: String,
    pub status: Status,
    pub witnesses: Vec<String>,
}

impl Check {
    fn base(id: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            params: BTreeMap::new(),
            max_deviation: String::new(),
            tolerance: String::new(),
            status: Status::Info,
            witnesses: Vec::new(),
        }
    }

    /// Exact identity: passes iff there is no mismatch.
    pub fn exact(id: impl Into<String>, mismatch: Option<Mismatch>) -> Self {
        let mut c = Check::base(id);
        c.tolerance = "exact".into();
        match mismatch {
            None => {
                c.max_deviation = "0".into();
                c.status = Status::Pass;
            }
            Some(m) => {
                c.max_deviation = (&m.left - &m.right).abs().to_string();
                c.status = Status::Fail;
                c.witnesses.push(format!("first mismatch at {m}"));
            }
        }
        c
    }

    /// Exact identity whose comparison itself may fail (precision errors).
    pub fn exact_result(id: impl Into<String>, r: Result<Option<Mismatch>>) -> Self {
        let id = id.into();
        match r {
            Ok(m) => Check::exact(id, m),
            Err(e) => Check::error(id, "exact", &e),
        }
    }

    pub fn exact_bool(id: impl Into<String>, holds: bool, witness: impl Into<String>) -> Self {
        let mut c = Check::base(id);
        c.tolerance = "exact".into();
        c.status = if holds { Status::Pass } else { Status::Fail };
        c.max_deviation = if holds { "0".into() } else { "nonzero".into() };
        let w = witness.into();
        if !w.is_empty() {
            c.witnesses.push(w);
        }
        c
    }

    /// Numeric bound: passes iff `deviation <= tolerance` (NaN fails).
    pub fn numeric(id: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        let mut c = Check::base(id);
        c.max_deviation = format!("{deviation:.3e}");
        c.tolerance = format!("{tolerance:.1e}");
        c.status = if deviation <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        c
    }

    pub fn info(id: impl Into<String>, value: impl Into<String>) -> Self {
        let mut c = Check::base(id);
        c.max_deviation = value.into();
        c.tolerance = "n/a".into();
        c
    }

    pub fn error(id: impl Into<String>, tolerance: &str, err: &dyn fmt::Display) -> Self {
        let mut c = Check::base(id);
        c.max_deviation = "error".into();
        c.tolerance = tolerance.into();
        c.status = Status::Fail;
        c.witnesses.push(err.to_string());
        c
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witnesses.push(w.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: Option<u64>,
    pub runtime_s: f64,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            seed: None,
            runtime_s: 0.0,
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    /// Appends another report's checks, prefixing their ids with its suite.
    pub fn absorb(&mut self, other: VerificationReport) {
        for mut c in other.checks {
            c.id = format!("{}/{}", other.suite, c.id);
            self.checks.push(c);
        }
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report is plain data")
    }

    /// JSON with the runtime zeroed, for reproducibility comparisons.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.runtime_s = 0.0;
        serde_json::to_string(&r).expect("report is plain data")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Info => "INFO",
            };
            writeln!(
                f,
                "[{tag}] {}/{}  dev={} tol={}",
                self.suite, c.id, c.max_deviation, c.tolerance
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{int, Exponent};

    #[test]
    fn status_follows_deviation() {
        assert_eq!(Check::numeric("a", 1e-9, 1e-7).status, Status::Pass);
        assert_eq!(Check::numeric("a", 1e-3, 1e-7).status, Status::Fail);
        assert_eq!(Check::numeric("a", f64::NAN, 1e-7).status, Status::Fail);
        let m = Mismatch {
            exponent: Exponent::integer(1),
            left: int(240),
            right: int(-504),
        };
        let c = Check::exact("b", Some(m));
        assert_eq!(c.max_deviation, "744");
        assert_eq!(c.status, Status::Fail);
        assert_eq!(Check::exact("b", None).max_deviation, "0");
    }

    #[test]
    fn canonical_json_ignores_runtime() {
        let mut a = VerificationReport::new("s");
        a.push(Check::exact("x", None));
        let mut b = a.clone();
        a.runtime_s = 1.0;
        b.runtime_s = 2.0;
        assert_eq!(a.canonical_json(), b.canonical_json());
    }
}
