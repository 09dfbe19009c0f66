//! Report documents and their text and machine renderings.

use std::fmt::Write as _;

use indexmap::IndexMap;
use posygp_core::Status;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

impl From<Status> for ReportStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Optimal => ReportStatus::Optimal,
            Status::Infeasible => ReportStatus::Infeasible,
            Status::Unbounded => ReportStatus::Unbounded,
            Status::IterationLimit => ReportStatus::IterationLimit,
        }
    }
}

impl ReportStatus {
    /// Process exit code for this outcome.
    pub fn exit_code(self) -> u8 {
        match self {
            ReportStatus::Optimal => 0,
            ReportStatus::Infeasible | ReportStatus::Unbounded => 4,
            ReportStatus::IterationLimit => 5,
        }
    }

    fn label(self) -> &'static str {
        match self {
            ReportStatus::Optimal => "optimal",
            ReportStatus::Infeasible => "infeasible",
            ReportStatus::Unbounded => "unbounded",
            ReportStatus::IterationLimit => "iteration limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChosenValue {
    pub set: String,
    pub bits: String,
    pub value: f64,
}

/// One enumerated combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentRow {
    pub bits: IndexMap<String, String>,
    pub values: IndexMap<String, f64>,
    /// `None` when the expansion was rejected before solving.
    pub status: Option<ReportStatus>,
    pub z: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Residuals {
    pub feasibility: Option<f64>,
    pub stationarity: Option<f64>,
    pub primal_violation: Option<f64>,
}

/// Brute-force grid check appended by `--oracle`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleCheck {
    /// `None` when the check was skipped or found no feasible grid point.
    pub z: Option<f64>,
    pub x: Vec<f64>,
    pub relative_difference: Option<f64>,
    pub note: String,
}

/// Printed form of the dual system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualSystem {
    pub degree_of_difficulty: i64,
    pub normality: String,
    pub orthogonality: IndexMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub status: ReportStatus,
    pub z: Option<f64>,
    pub x: IndexMap<String, f64>,
    pub w: IndexMap<String, f64>,
    pub lambda: IndexMap<String, f64>,
    pub gap: Option<f64>,
    pub chosen: Vec<ChosenValue>,
    pub combinations: usize,
    pub rejected: usize,
    pub residuals: Residuals,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dual_system: Option<DualSystem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignments: Option<Vec<AssignmentRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    pub timing_ms: Option<f64>,
}

/// Drops NaN and infinities, which JSON cannot carry.
pub fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

/// `v` with seven significant digits, trailing zeros trimmed.
pub fn sig7(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let sci = format!("{v:.6e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..7).contains(&exp) {
        let decimals = (6 - exp).max(0) as usize;
        trim_zeros(format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_owned()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "n/a".into(), sig7)
}

impl ReportDocument {
    pub fn to_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(sys) = &self.dual_system {
            let _ = writeln!(out, "dual program (degree of difficulty {})", sys.degree_of_difficulty);
            let _ = writeln!(out, "  normality:     {}", sys.normality);
            for (var, row) in &sys.orthogonality {
                let _ = writeln!(out, "  orthogonality: {row}    ({var})");
            }
        }
        let _ = writeln!(out, "status: {}", self.status.label());
        if let Some(z) = self.z {
            let _ = writeln!(out, "Z = {}", sig7(z));
        }
        if !self.chosen.is_empty() {
            let names: Vec<&str> = self.chosen.iter().map(|c| c.set.as_str()).collect();
            let values: Vec<String> = self.chosen.iter().map(|c| sig7(c.value)).collect();
            let bits: Vec<&str> = self.chosen.iter().map(|c| c.bits.as_str()).collect();
            let _ = writeln!(out, "chosen ({}) = ({})", names.join(", "), values.join(", "));
            let _ = writeln!(out, "bits   ({}) = ({})", names.join(", "), bits.join(", "));
        }
        for (name, v) in &self.x {
            let _ = writeln!(out, "{name} = {}", sig7(*v));
        }
        for (name, v) in self.w.iter().chain(&self.lambda) {
            let _ = writeln!(out, "{name} = {}", sig7(*v));
        }
        if let Some(d) = self.dual_value {
            let _ = writeln!(out, "dual value = {}", sig7(d));
        }
        if self.gap.is_some() {
            let _ = writeln!(out, "duality gap = {}", opt(self.gap));
        }
        if self.status == ReportStatus::IterationLimit {
            let r = &self.residuals;
            let _ = writeln!(
                out,
                "residuals: feasibility {}, stationarity {}, primal violation {}",
                opt(r.feasibility),
                opt(r.stationarity),
                opt(r.primal_violation)
            );
        }
        if self.combinations > 1 || self.rejected > 0 {
            let _ = writeln!(out, "combinations: {} solved, {} rejected", self.combinations, self.rejected);
        }
        if let Some(rows) = &self.assignments {
            let _ = writeln!(out, "assignments:");
            for row in rows {
                let bits: Vec<String> = row.bits.iter().map(|(k, b)| format!("{k}={b}")).collect();
                let values: Vec<String> = row.values.iter().map(|(k, v)| format!("{k}={}", sig7(*v))).collect();
                let status = row.status.map_or("rejected", |s| s.label());
                let _ = writeln!(out, "  {}  ->  {}  {status}  Z = {}", bits.join(" "), values.join(" "), opt(row.z));
            }
        }
        if let Some(o) = &self.oracle {
            let _ = write!(out, "oracle: {}", o.note);
            if let (Some(z), Some(d)) = (o.z, o.relative_difference) {
                let _ = write!(out, ", Z = {}, relative difference {}", sig7(z), sig7(d));
            }
            out.push('\n');
        }
        if let Some(t) = self.timing_ms {
            let _ = writeln!(out, "time: {t:.1} ms");
        }
        out
    }
}
