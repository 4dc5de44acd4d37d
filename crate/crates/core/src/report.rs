//! Serializable report records. Every number is stored as an integer or
//! fraction string so the documents never carry floating point.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::certificate::SecondPointCertificate;
use crate::generators::AtlasClass;
use crate::simplex::{format_index_set, format_int_vector, format_rat_vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub inputs: BTreeMap<String, String>,
    pub entries: Vec<Entry>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub atlas: Vec<AtlasRecord>,
}

/// One measured value, optionally compared against a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub label: String,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slack: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

impl Entry {
    pub fn info(label: impl Into<String>, value: impl ToString) -> Self {
        Entry {
            label: label.into(),
            value: value.to_string(),
            bound: None,
            slack: None,
            pass: None,
        }
    }

    pub fn check(
        label: impl Into<String>,
        value: impl ToString,
        bound: impl ToString,
        slack: Option<String>,
        pass: bool,
    ) -> Self {
        Entry {
            label: label.into(),
            value: value.to_string(),
            bound: Some(bound.to_string()),
            slack,
            pass: Some(pass),
        }
    }

    pub fn verdict(label: impl Into<String>, value: impl ToString, pass: bool) -> Self {
        Entry {
            pass: Some(pass),
            ..Entry::info(label, value)
        }
    }
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            inputs: BTreeMap::new(),
            entries: Vec::new(),
            pass: true,
            certificate: None,
            atlas: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    /// Appends an entry; a failing entry fails the report.
    pub fn push(&mut self, entry: Entry) {
        if entry.pass == Some(false) {
            self.pass = false;
        }
        self.entries.push(entry);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.pass == Some(false))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub point: String,
    pub sorted_order: String,
    pub i: String,
    pub j: String,
    pub det_b: String,
    pub m_values: Vec<String>,
    pub m: String,
    pub r: String,
    pub q: String,
    pub q_interior: bool,
    pub q_distinct: bool,
}

impl From<&SecondPointCertificate> for CertificateDoc {
    fn from(c: &SecondPointCertificate) -> Self {
        CertificateDoc {
            point: format_int_vector(&c.point),
            sorted_order: format_index_set(&c.perm),
            i: format_index_set(c.partition.i()),
            j: format_index_set(c.partition.j()),
            det_b: c.det_b.to_string(),
            m_values: c.admissible.m_values.iter().map(|v| v.to_string()).collect(),
            m: c.admissible.m.to_string(),
            r: format_rat_vector(&c.r),
            q: format_int_vector(&c.q),
            q_interior: c.q_interior,
            q_distinct: c.q_distinct,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasRecord {
    pub vertices: Vec<String>,
    pub volume: String,
    pub points: String,
    pub sorted_beta: String,
    pub min_slack: String,
    pub hits: String,
    pub pass: bool,
}

impl From<&AtlasClass> for AtlasRecord {
    fn from(c: &AtlasClass) -> Self {
        AtlasRecord {
            vertices: c.form.key().iter().map(|v| format_int_vector(v)).collect(),
            volume: c.volume.to_string(),
            points: c.points.to_string(),
            sorted_beta: format_rat_vector(&c.sorted_beta),
            min_slack: c.min_slack.to_string(),
            hits: c.hits.to_string(),
            pass: c.pass(),
        }
    }
}

fn mark(pass: Option<bool>) -> &'static str {
    match pass {
        Some(true) => "ok  ",
        Some(false) => "FAIL",
        None => "    ",
    }
}

/// Plain-text rendering for terminals.
pub fn render_human(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let _ = writeln!(out, "== {} [{}]", r.check, if r.pass { "pass" } else { "FAIL" });
        for (k, v) in &r.inputs {
            let _ = writeln!(out, "   {k}: {v}");
        }
        for e in &r.entries {
            let _ = write!(out, "{} {} = {}", mark(e.pass), e.label, e.value);
            if let Some(b) = &e.bound {
                let _ = write!(out, "  (bound {b}");
                if let Some(s) = &e.slack {
                    let _ = write!(out, ", slack {s}");
                }
                out.push(')');
            }
            out.push('\n');
        }
        if let Some(c) = &r.certificate {
            let _ = writeln!(out, "   certificate: p = {}, q = {}", c.point, c.q);
            let _ = writeln!(
                out,
                "     I = {}, J = {}, det B = {}, m = {}, m_J = ({}), r = {}",
                c.i,
                c.j,
                c.det_b,
                c.m,
                c.m_values.join(", "),
                c.r
            );
        }
        for a in &r.atlas {
            let _ = writeln!(
                out,
                "   {} vol {} points {} beta {} min slack {}",
                a.vertices.join(" "),
                a.volume,
                a.points,
                a.sorted_beta,
                a.min_slack
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failing_entry_fails_report() {
        let mut r = Report::new("x");
        r.push(Entry::info("a", 1));
        assert!(r.pass);
        r.push(Entry::check("b", "1/2", "1", Some("1/2".into()), true));
        assert!(r.pass);
        r.push(Entry::verdict("c", "-1/3", false));
        assert!(!r.pass);
        assert_eq!(r.failures().count(), 1);
        let text = render_human(&[r]);
        assert!(text.contains("FAIL c = -1/3"));
        assert!(text.contains("(bound 1, slack 1/2)"));
    }
}
