//! Residual accumulation and the JSON verification report.
//!
//! Residuals carry their evaluation mode: exact-mode residuals pass only
//! when they are structurally zero, float-mode residuals compare their
//! magnitude against a tolerance. Reports are deterministic byte-for-byte
//! for identical inputs, so wall-clock timing stays out of the JSON and is
//! surfaced on stdout only.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::Field;

/// Max-abs residual of one check, tagged with its evaluation mode.
#[derive(Clone, Copy, Debug)]
pub struct Res {
    /// Leading-value magnitude (reported).
    pub value: f64,
    /// True when every contributing scalar was structurally zero.
    pub structural_zero: bool,
    /// Exact (rational) evaluation mode.
    pub exact: bool,
}

impl Res {
    pub fn zero(exact: bool) -> Self {
        Res {
            value: 0.0,
            structural_zero: true,
            exact,
        }
    }

    pub fn of<S: Field>(v: &S) -> Self {
        Res {
            value: v.approx().abs(),
            structural_zero: v.is_zero(),
            exact: S::EXACT,
        }
    }

    /// Verdict residual: agreement is zero, disagreement is 1 and can never
    /// pass. Always exact-mode so the pass decision ignores tolerances.
    pub fn verdict(ok: bool) -> Self {
        Res {
            value: if ok { 0.0 } else { 1.0 },
            structural_zero: ok,
            exact: true,
        }
    }

    pub fn join(self, other: Res) -> Res {
        Res {
            value: self.value.max(other.value),
            structural_zero: self.structural_zero && other.structural_zero,
            exact: self.exact && other.exact,
        }
    }

    pub fn passes(&self, tol: f64) -> bool {
        if self.exact {
            self.structural_zero
        } else {
            self.value.is_finite() && self.value <= tol
        }
    }
}

/// Ordered residual accumulator keyed by check id; merging takes max.
#[derive(Clone, Debug, Default)]
pub struct CheckSet {
    map: BTreeMap<String, Res>,
}

impl CheckSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, id: &str, r: Res) {
        self.map
            .entry(id.to_string())
            .and_modify(|e| *e = e.join(r))
            .or_insert(r);
    }

    pub fn add_val<S: Field>(&mut self, id: &str, v: &S) {
        self.add(id, Res::of(v));
    }

    pub fn add_vec<S: Field>(&mut self, id: &str, vs: &[S]) {
        for v in vs {
            self.add_val(id, v);
        }
    }

    pub fn merge(&mut self, other: &CheckSet) {
        for (k, r) in &other.map {
            self.add(k, *r);
        }
    }

    pub fn get(&self, id: &str) -> Option<Res> {
        self.map.get(id).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Res)> {
        self.map.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

/// One line of the report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Check {
    pub id: String,
    pub suite: String,
    /// Max-abs residual over all sampled points, as a decimal string.
    pub residual: String,
    pub tolerance: String,
    /// Number of evaluation points contributing to the residual.
    pub points: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// Decimal-string formatting used everywhere in the report: shortest
/// round-trip representation, deterministic for a given value.
pub fn decimal(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v:e}")
    }
}

impl Check {
    pub fn from_res(suite: &str, id: &str, r: Res, tol: f64, points: usize) -> Check {
        Check {
            id: id.to_string(),
            suite: suite.to_string(),
            residual: decimal(r.value),
            tolerance: if r.exact {
                "exact".to_string()
            } else {
                decimal(tol)
            },
            points,
            pass: r.passes(tol),
            note: None,
        }
    }

    pub fn skipped(suite: &str, id: &str, reason: &str) -> Check {
        Check {
            id: id.to_string(),
            suite: suite.to_string(),
            residual: "skipped".to_string(),
            tolerance: "skipped".to_string(),
            points: 0,
            pass: true,
            note: Some(reason.to_string()),
        }
    }
}

/// Stable description of the verified scene, embedded in the report.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SceneFingerprint {
    pub scene: String,
    pub ambient_dim: usize,
    pub mode: String,
    pub seed: u64,
    pub points: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct VerificationReport {
    pub engine: String,
    pub version: String,
    pub fingerprint: SceneFingerprint,
    pub checks: Vec<Check>,
    pub all_pass: bool,
}

impl VerificationReport {
    pub fn new(fingerprint: SceneFingerprint, checks: Vec<Check>) -> Self {
        let all_pass = checks.iter().all(|c| c.pass);
        VerificationReport {
            engine: "lightlike-core".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            fingerprint,
            checks,
            all_pass,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<18} {:<22} {:>12}  tol {:>8}  pts {:>4}  {}",
            self.suite,
            self.id,
            self.residual,
            self.tolerance,
            self.points,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn exact_residual_requires_structural_zero() {
        // A rational residual small enough to underflow the f64 view must
        // still fail in exact mode.
        let tiny = Rational::new(1.into(), num::BigInt::from(10).pow(400));
        let r = Res::of(&tiny);
        assert!(!r.passes(1e-9));
        let zero = Res::of(&<Rational as Field>::zero());
        assert!(zero.passes(0.0));
    }

    #[test]
    fn float_residual_uses_tolerance() {
        let r = Res::of(&1e-10_f64);
        assert!(r.passes(1e-9));
        assert!(!r.passes(1e-11));
        assert!(!Res::of(&f64::NAN).passes(1e-9));
    }

    #[test]
    fn checkset_accumulates_max() {
        let mut cs = CheckSet::new();
        cs.add_val("a", &0.5_f64);
        cs.add_val("a", &0.25_f64);
        assert_eq!(cs.get("a").unwrap().value, 0.5);
    }

    #[test]
    fn report_serialization_is_deterministic() {
        let fp = SceneFingerprint {
            scene: "s".into(),
            ambient_dim: 4,
            mode: "float".into(),
            seed: 42,
            points: 100,
        };
        let checks = vec![Check::from_res("frame", "eq_2_2", Res::of(&1e-12_f64), 1e-9, 100)];
        let r1 = VerificationReport::new(fp.clone(), checks.clone()).to_json();
        let r2 = VerificationReport::new(fp, checks).to_json();
        assert_eq!(r1, r2);
        assert!(r1.contains("\"residual\": \"1e-12\""));
    }
}
