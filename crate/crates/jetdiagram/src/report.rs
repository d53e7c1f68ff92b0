//! Display-ready reports: a single serializable structure covering every
//! command's output, rendered either as plain text or as JSON.
//!
//! Reports carry only strings and integers — polynomials and rationals are
//! stored in their rendered form — so serializing and re-parsing a report
//! reproduces it exactly, and repeated runs are byte-identical.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::multiindex::{Diagram, MultiIndex};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub config: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hs: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub standard_basis: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chevalley: Option<ChevalleySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub division: Option<DivisionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<SampleSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semicontinuity: Option<SemicontinuitySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub membership: Option<MembershipSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub staircase: Option<Vec<String>>,
}

/// A diagram as plain data: the ambient dimension and the minimal vertices,
/// ascending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramSection {
    pub dim: usize,
    pub vertices: Vec<Vec<u32>>,
}

impl DiagramSection {
    pub fn of(diagram: &Diagram) -> Self {
        DiagramSection {
            dim: diagram.dim(),
            vertices: diagram.vertices().iter().map(|v| v.entries().to_vec()).collect(),
        }
    }

    pub fn to_diagram(&self) -> Result<Diagram> {
        Diagram::from_vertices(
            self.dim,
            self.vertices.iter().map(|v| MultiIndex::new(v.clone())).collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChevalleySection {
    pub l: u32,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivisionSection {
    pub quotients: Vec<String>,
    pub remainder: String,
    pub working_bound: u32,
}

/// One point of an arc: the parameter value and what was computed there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSection {
    pub t: String,
    pub vertices: Vec<Vec<u32>>,
    pub hs: Vec<u64>,
    pub l: u32,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemicontinuitySection {
    pub comparison: String,
    pub hs_margins: Vec<i64>,
    pub sampling_disagreement: bool,
    pub all_certified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipSection {
    pub mode: String,
    pub member: bool,
    pub equality_truncation_caveat: bool,
    pub computed_vertices: Vec<Vec<u32>>,
    pub comparison: String,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            config: BTreeMap::new(),
            diagram: None,
            hs: None,
            standard_basis: None,
            chevalley: None,
            division: None,
            samples: None,
            semicontinuity: None,
            membership: None,
            status: None,
            verdict: None,
            staircase: None,
        }
    }

    pub fn set_config(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.config.insert(key.into(), value.into());
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports hold only plain data");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> std::result::Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// The human-readable rendering; one fact per line, sections in a fixed
    /// order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for (key, value) in &self.config {
            let _ = writeln!(out, "  {key}: {value}");
        }
        if let Some(d) = &self.diagram {
            let _ = writeln!(out, "diagram: {}", format_vertices(&d.vertices));
        }
        if let Some(hs) = &self.hs {
            let _ = writeln!(out, "hilbert-samuel: {}", join(hs));
        }
        if let Some(basis) = &self.standard_basis {
            let _ = writeln!(out, "standard basis:");
            for g in basis {
                let _ = writeln!(out, "  {g}");
            }
        }
        if let Some(c) = &self.chevalley {
            let _ = writeln!(out, "chevalley bound: l = {} ({})", c.l, c.status);
        }
        if let Some(d) = &self.division {
            for (i, q) in d.quotients.iter().enumerate() {
                let _ = writeln!(out, "quotient {}: {}", i + 1, q);
            }
            let _ = writeln!(out, "remainder: {}", d.remainder);
            let _ = writeln!(out, "working bound: {}", d.working_bound);
        }
        if let Some(samples) = &self.samples {
            for s in samples {
                let _ = writeln!(
                    out,
                    "sample t = {}: diagram {}, l = {} ({})",
                    s.t,
                    format_vertices(&s.vertices),
                    s.l,
                    s.status
                );
                let _ = writeln!(out, "  hilbert-samuel: {}", join(&s.hs));
            }
        }
        if let Some(sc) = &self.semicontinuity {
            let _ = writeln!(out, "limit vs generic: {}", sc.comparison);
            let _ = writeln!(out, "hs margins: {}", join(&sc.hs_margins));
            if sc.sampling_disagreement {
                let _ = writeln!(
                    out,
                    "warning: nonlimit samples disagree; the generic estimate uses their minimum"
                );
            }
            let _ = writeln!(out, "all certified: {}", sc.all_certified);
        }
        if let Some(m) = &self.membership {
            let _ = writeln!(out, "mode: {}", m.mode);
            let _ = writeln!(out, "computed diagram: {}", format_vertices(&m.computed_vertices));
            let _ = writeln!(out, "comparison: {}", m.comparison);
            if m.equality_truncation_caveat {
                let _ = writeln!(
                    out,
                    "note: equal at this precision; vertices beyond the cutoff could still refine it"
                );
            }
        }
        if let Some(s) = &self.status {
            let _ = writeln!(out, "status: {s}");
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "verdict: {v}");
        }
        if let Some(grid) = &self.staircase {
            let _ = writeln!(out, "staircase:");
            for row in grid {
                let _ = writeln!(out, "  {row}");
            }
        }
        out
    }
}

fn format_vertices(vertices: &[Vec<u32>]) -> String {
    let mut s = String::from("{");
    for (i, v) in vertices.iter().enumerate() {
        if i > 0 {
            s.push_str("; ");
        }
        s.push('(');
        for (j, e) in v.iter().enumerate() {
            if j > 0 {
                s.push(',');
            }
            let _ = write!(s, "{e}");
        }
        s.push(')');
    }
    s.push('}');
    s
}

fn join<T: std::fmt::Display>(items: &[T]) -> String {
    let mut s = String::new();
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{item}");
    }
    s
}

/// The two-variable staircase picture of a diagram on the `(k+1) x (k+1)`
/// grid: `#` marks members, `.` the complement, with the origin at the
/// lower left and rows listed top down.
pub fn staircase_grid(diagram: &Diagram, k: u32) -> Result<Vec<String>> {
    if diagram.dim() != 2 {
        return Err(Error::BadArgument(format!(
            "the staircase picture needs 2 variables, got {}",
            diagram.dim()
        )));
    }
    let mut rows = Vec::with_capacity(k as usize + 1);
    for b in (0..=k).rev() {
        let mut row = String::with_capacity(k as usize + 1);
        for a in 0..=k {
            let member = diagram.contains(&MultiIndex::new(vec![a, b]));
            row.push(if member { '#' } else { '.' });
        }
        rows.push(row);
    }
    Ok(rows)
}
