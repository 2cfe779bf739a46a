//! Outcome of an exact check: pass, or fail with a concrete witness.

use std::fmt;

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::exact::Rat;

/// Indices of the single inequality that failed, plus the offending value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<(String, i64)>,
    /// JSON key for `value`, e.g. `"coeff"` for polynomial coefficients.
    pub label: String,
    pub value: Rat,
    /// Reference value, for comparisons against an oracle.
    pub expected: Option<Rat>,
}

impl Witness {
    pub fn new<const N: usize>(indices: [(&str, i64); N], label: &str, value: Rat) -> Self {
        Witness {
            indices: indices.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            label: label.to_string(),
            value,
            expected: None,
        }
    }

    pub fn with_expected(mut self, expected: Rat) -> Self {
        self.expected = Some(expected);
        self
    }

    pub fn index(&self, name: &str) -> Option<i64> {
        self.indices.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    /// `m=1 n=1 i=1 coeff=-3`
    pub fn describe(&self, sep: &str) -> String {
        let mut parts: Vec<String> = self.indices.iter().map(|(k, v)| format!("{k}={v}")).collect();
        parts.push(format!("{}={}", self.label, self.value));
        if let Some(e) = &self.expected {
            parts.push(format!("expected={e}"));
        }
        parts.join(sep)
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(None)?;
        for (k, v) in &self.indices {
            map.serialize_entry(k, v)?;
        }
        map.serialize_entry(&self.label, &self.value.to_string())?;
        if let Some(e) = &self.expected {
            map.serialize_entry("expected", &e.to_string())?;
        }
        map.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub range: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl Verdict {
    pub fn pass(check: &str, range: impl Into<String>) -> Self {
        Verdict {
            check: check.to_string(),
            passed: true,
            witness: None,
            range: range.into(),
            warning: None,
        }
    }

    pub fn fail(check: &str, range: impl Into<String>, witness: Witness) -> Self {
        Verdict {
            check: check.to_string(),
            passed: false,
            witness: Some(witness),
            range: range.into(),
            warning: None,
        }
    }

    /// `pass` when `witness` is `None`.
    pub fn from_witness(check: &str, range: impl Into<String>, witness: Option<Witness>) -> Self {
        match witness {
            None => Self::pass(check, range),
            Some(w) => Self::fail(check, range, w),
        }
    }

    pub fn with_warning(mut self, warning: impl Into<String>) -> Self {
        self.warning = Some(warning.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }

    pub const CSV_HEADER: &'static str = "check,passed,range,witness,value";

    pub fn to_csv_row(&self) -> String {
        let (indices, value) = match &self.witness {
            Some(w) => (
                w.indices.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(";"),
                w.value.to_string(),
            ),
            None => (String::new(), String::new()),
        };
        format!("{},{},\"{}\",{},{}", self.check, self.passed, self.range, indices, value)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{}: {} ({})", self.check, status, self.range)?;
        if let Some(w) = &self.witness {
            write!(f, " witness {}", w.describe(" "))?;
        }
        if let Some(warn) = &self.warning {
            write!(f, " [warning: {warn}]")?;
        }
        Ok(())
    }
}
