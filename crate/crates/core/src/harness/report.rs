use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    /// The hypothesis of the tested statement is not met; failure is the predicted outcome.
    ExpectedFail,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
            Verdict::ExpectedFail => "EXPECTED-FAIL",
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "PASS" => Ok(Verdict::Pass),
            "FAIL" => Ok(Verdict::Fail),
            "SKIPPED" => Ok(Verdict::Skipped),
            "EXPECTED-FAIL" => Ok(Verdict::ExpectedFail),
            _ => Err(Error::Parse(format!("verdict `{s}`"))),
        }
    }
}

/// Outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub id: String,
    /// Statement being checked.
    pub claim: String,
    pub inputs: Vec<(String, String)>,
    pub verdict: Verdict,
    pub witness: Vec<(String, String)>,
    pub pinning: String,
}

/// Conventions every report is computed under.
pub const PINNING: &str = "bourbaki-labels;N(a,b)-sign=orientation-cocycle;alpha0=-highest-root;n_a(1)=x_a(1)x_-a(-1)x_a(1)";

impl VerificationReport {
    pub fn new(id: impl Into<String>, claim: impl Into<String>, verdict: Verdict) -> Self {
        VerificationReport {
            id: id.into(),
            claim: claim.into(),
            inputs: Vec::new(),
            verdict,
            witness: Vec::new(),
            pinning: PINNING.to_string(),
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.push((key.to_string(), value.to_string()));
        self
    }

    pub fn witness(mut self, key: &str, value: impl ToString) -> Self {
        self.witness.push((key.to_string(), value.to_string()));
        self
    }

    /// Only FAIL affects the exit code.
    pub fn is_failure(&self) -> bool {
        self.verdict == Verdict::Fail
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}: {}", self.verdict, self.id, self.claim);
        if !self.inputs.is_empty() {
            let inputs: Vec<String> = self.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            s.push_str(&format!(" [{}]", inputs.join(", ")));
        }
        for (k, v) in &self.witness {
            s.push_str(&format!("\n    {k}: {v}"));
        }
        s
    }

    /// One line of tab-separated `key=value` fields in a fixed order.
    pub fn to_structured(&self) -> String {
        let mut fields = vec![
            format!("id={}", escape(&self.id)),
            format!("verdict={}", self.verdict),
            format!("claim={}", escape(&self.claim)),
        ];
        fields.extend(self.inputs.iter().map(|(k, v)| format!("input.{}={}", escape(k), escape(v))));
        fields.extend(self.witness.iter().map(|(k, v)| format!("witness.{}={}", escape(k), escape(v))));
        fields.push(format!("pinning={}", escape(&self.pinning)));
        fields.join("\t")
    }

    pub fn parse_structured(line: &str) -> Result<Self> {
        let mut id = None;
        let mut verdict = None;
        let mut claim = None;
        let mut pinning = None;
        let mut inputs = Vec::new();
        let mut witness = Vec::new();
        for field in line.trim_end_matches(['\n', '\r']).split('\t') {
            let (k, v) = field.split_once('=').ok_or_else(|| Error::Parse(format!("field `{field}`")))?;
            let v = unescape(v)?;
            match k {
                "id" => id = Some(v),
                "verdict" => verdict = Some(v.parse()?),
                "claim" => claim = Some(v),
                "pinning" => pinning = Some(v),
                _ => {
                    if let Some(k) = k.strip_prefix("input.") {
                        inputs.push((unescape(k)?, v));
                    } else if let Some(k) = k.strip_prefix("witness.") {
                        witness.push((unescape(k)?, v));
                    } else {
                        return Err(Error::Parse(format!("unknown key `{k}`")));
                    }
                }
            }
        }
        let missing = |what: &str| Error::Parse(format!("missing `{what}`"));
        Ok(VerificationReport {
            id: id.ok_or_else(|| missing("id"))?,
            claim: claim.ok_or_else(|| missing("claim"))?,
            inputs,
            verdict: verdict.ok_or_else(|| missing("verdict"))?,
            witness,
            pinning: pinning.ok_or_else(|| missing("pinning"))?,
        })
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '=' => out.push_str("\\e"),
            c => out.push(c),
        }
    }
    out
}

fn unescape(s: &str) -> Result<String> {
    let mut out = String::with_capacity(s.len());
    let mut it = s.chars();
    while let Some(c) = it.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match it.next() {
            Some('\\') => out.push('\\'),
            Some('t') => out.push('\t'),
            Some('n') => out.push('\n'),
            Some('r') => out.push('\r'),
            Some('e') => out.push('='),
            other => return Err(Error::Parse(format!("bad escape `\\{}`", other.map(String::from).unwrap_or_default()))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structured_round_trip() {
        let r = VerificationReport::new("x-1", "a = b\tand c", Verdict::ExpectedFail)
            .input("q", 13)
            .input("type", "E6")
            .witness("note", "line1\nline2 \\ k=v");
        let line = r.to_structured();
        assert!(!line.contains('\n'));
        assert_eq!(VerificationReport::parse_structured(&line).unwrap(), r);
    }
}
