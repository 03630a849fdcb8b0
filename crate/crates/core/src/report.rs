//! Check rows shared by every report, and their CSV form.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The threshold cannot be evaluated at this size (e.g. the prescribed
    /// set is larger than the vertex set).
    NotApplicable,
    /// Evaluated on samples only; no exact claim.
    Sampled,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_failure(self) -> bool {
        self == Verdict::Fail
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::NotApplicable => "not_applicable",
            Verdict::Sampled => "sampled",
        })
    }
}

/// One measured quantity against its threshold.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub value: String,
    pub threshold: String,
    pub verdict: Verdict,
    pub seed: Option<u64>,
}

impl Check {
    pub fn new(name: impl Into<String>, value: impl fmt::Display, threshold: impl fmt::Display, verdict: Verdict) -> Self {
        Check {
            name: name.into(),
            value: value.to_string(),
            threshold: threshold.to_string(),
            verdict,
            seed: None,
        }
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Writes `name,value,threshold,verdict,seed` rows.
pub fn write_checks_csv<W: Write>(out: W, checks: &[Check]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let fmt_err = |e: csv::Error| Error::Format { what: "csv report".into(), detail: e.to_string() };
    w.write_record(["name", "value", "threshold", "verdict", "seed"]).map_err(fmt_err)?;
    for c in checks {
        let seed = c.seed.map(|s| s.to_string()).unwrap_or_default();
        w.write_record([c.name.as_str(), &c.value, &c.threshold, &c.verdict.to_string(), &seed])
            .map_err(fmt_err)?;
    }
    w.flush().map_err(|e| Error::Format { what: "csv report".into(), detail: e.to_string() })?;
    Ok(())
}

pub fn checks_to_csv(checks: &[Check]) -> String {
    let mut buf = Vec::new();
    write_checks_csv(&mut buf, checks).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("csv output is utf-8")
}
