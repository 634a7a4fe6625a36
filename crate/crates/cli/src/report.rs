//! The report document and its two renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use berline::{format_scalar, Matrix, Rational};
use serde::Serialize;

use crate::input::RawMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationOut {
    pub law: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub arrow: String,
    /// `φ(g) / (δf)(g)` for the propagated potential `f`.
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplacementOut {
    /// The chain isomorphism, by degree.
    pub map: BTreeMap<i32, RawMatrix>,
    /// `Φ` with `map - Δ = ∂Φ + Φ∂`, by degree.
    pub homotopy: BTreeMap<i32, RawMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    /// `[g, h]` for the composite `g·h`.
    pub pair: [String; 2],
    pub composite: String,
    /// `Ω` with `Δ_g Δ_h - Δ_{g·h} = ∂Ω + Ω∂`, nonzero degrees only.
    pub homotopy: BTreeMap<i32, RawMatrix>,
}

/// Everything a command reports. Absent fields are omitted from JSON output; map keys are
/// sorted, so the serialized form depends only on the input and flags.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub input: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrow: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representation: Option<String>,
    pub valid: bool,
    pub violations: Vec<ViolationOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_rescaling: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstructions: Option<Vec<Obstruction>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub berezinian: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replacement: Option<ReplacementOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificates: Option<Vec<Certificate>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: &str, input: &str) -> Self {
        Report {
            command: command.to_string(),
            input: input.to_string(),
            arrow: None,
            representation: None,
            valid: true,
            violations: Vec::new(),
            cocycle: None,
            class: None,
            witness: None,
            invariant_rescaling: None,
            obstructions: None,
            berezinian: None,
            replacement: None,
            certificates: None,
            timing_ms: None,
        }
    }

    pub fn violation(&mut self, law: &str, detail: impl Into<String>) {
        self.valid = false;
        self.violations.push(ViolationOut {
            law: law.to_string(),
            detail: detail.into(),
        });
    }

    pub fn absorb(&mut self, report: &berline::ValidationReport) {
        for v in &report.violations {
            self.violation(v.law, v.detail.clone());
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("command: {}", self.command));
        line(format!("input: {}", self.input));
        if let Some(a) = &self.arrow {
            line(format!("arrow: {a}"));
        }
        if let Some(r) = &self.representation {
            line(format!("representation: {r}"));
        }
        line(format!("valid: {}", if self.valid { "yes" } else { "no" }));
        for v in &self.violations {
            line(format!("  violation [{}] {}", v.law, v.detail));
        }
        let table = |title: &str, m: &BTreeMap<String, String>| {
            let mut s = format!("{title}:");
            for (k, v) in m {
                let _ = write!(s, "\n  {k} = {v}");
            }
            s
        };
        if let Some(m) = &self.berezinian {
            line(table("berezinian", m));
        }
        if let Some(m) = &self.cocycle {
            line(table("cocycle", m));
        }
        if let Some(c) = &self.class {
            line(format!("class: {c}"));
        }
        if let Some(m) = &self.witness {
            line(table("witness", m));
        }
        if let Some(m) = &self.invariant_rescaling {
            line(table("invariant rescaling", m));
        }
        if let Some(obs) = &self.obstructions {
            if !obs.is_empty() {
                let mut s = String::from("obstructions:");
                for o in obs {
                    let _ = write!(s, "\n  {} : {}", o.arrow, o.value);
                }
                line(s);
            }
        }
        let graded = |title: &str, m: &BTreeMap<i32, RawMatrix>| {
            let mut s = format!("{title}:");
            for (i, rows) in m {
                let body: Vec<String> = rows.iter().map(|r| r.join(" ")).collect();
                let _ = write!(s, "\n  degree {i}: [{}]", body.join("; "));
            }
            s
        };
        if let Some(r) = &self.replacement {
            line(graded("replacement", &r.map));
            line(graded("homotopy", &r.homotopy));
        }
        if let Some(certs) = &self.certificates {
            line(format!("certificates: {}", certs.len()));
            for c in certs {
                let title = format!("  ({}, {}) -> {}", c.pair[0], c.pair[1], c.composite);
                if c.homotopy.is_empty() {
                    line(format!("{title}: strict"));
                } else {
                    line(graded(&title, &c.homotopy).replace("\n  degree", "\n    degree"));
                }
            }
        }
        if let Some(t) = self.timing_ms {
            line(format!("timing: {t:.3} ms"));
        }
        out
    }
}

pub fn raw_matrix(m: &Matrix<Rational>) -> RawMatrix {
    m.to_rows()
        .iter()
        .map(|row| row.iter().map(format_scalar).collect())
        .collect()
}

pub fn raw_graded(components: &BTreeMap<i32, Matrix<Rational>>) -> BTreeMap<i32, RawMatrix> {
    components
        .iter()
        .filter(|(_, m)| !m.is_zero())
        .map(|(&i, m)| (i, raw_matrix(m)))
        .collect()
}
