use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use super::lp::{ConstraintSystem, FarkasCertificate, Relation, Status};
use crate::error::{Error, Result};
use crate::ontology::ModelDocument;
use crate::rational::format_rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremId {
    #[serde(rename = "PBR")]
    Pbr,
    #[serde(rename = "HROI")]
    Hroi,
    #[serde(rename = "HROI2")]
    Hroi2,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::Pbr => "pbr",
            TheoremId::Hroi => "hroi",
            TheoremId::Hroi2 => "hroi2",
        })
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pbr" => Ok(TheoremId::Pbr),
            "hroi" => Ok(TheoremId::Hroi),
            "hroi2" => Ok(TheoremId::Hroi2),
            _ => Err(Error::Parse(format!("unknown theorem `{s}` (expected pbr, hroi or hroi2)"))),
        }
    }
}

/// A hypothesis dropped from a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Relaxation {
    /// Responses may depend on the wavefunction that guides the particle.
    PsiAnomic,
    /// No ontic-indifference ties.
    Roi,
}

impl fmt::Display for Relaxation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relaxation::PsiAnomic => "psi_anomic",
            Relaxation::Roi => "roi",
        })
    }
}

impl FromStr for Relaxation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psi_anomic" | "psi-anomic" => Ok(Relaxation::PsiAnomic),
            "roi" => Ok(Relaxation::Roi),
            _ => Err(Error::Parse(format!("unknown relaxation `{s}` (expected psi_anomic or roi)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportStatus {
    Feasible,
    Infeasible,
    Unbounded,
    Contradiction,
    Inconclusive,
}

impl From<Status> for ReportStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Feasible => ReportStatus::Feasible,
            Status::Infeasible => ReportStatus::Infeasible,
            Status::Unbounded => ReportStatus::Unbounded,
        }
    }
}

impl fmt::Display for ReportStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("unit enum");
        f.write_str(v.as_str().expect("string"))
    }
}

/// One step of a derivation, with whether it holds for the compiled data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// Role of the step: `born`, `sum-rule`, `roi`, `deduction`, `conflict`, ...
    pub relation: String,
    pub statement: String,
    pub holds: bool,
}

impl TraceStep {
    pub fn new(relation: &str, statement: impl Into<String>, holds: bool) -> Self {
        Self {
            relation: relation.into(),
            statement: statement.into(),
            holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateRow {
    pub provenance: String,
    pub relation: Relation,
    pub rhs: String,
    pub multiplier: String,
}

/// The rows with nonzero Farkas multiplier and the contradiction they add up to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateSummary {
    pub rows: Vec<CertificateRow>,
    /// `yᵀb`, negative while `yᵀA ≥ 0`.
    pub combined_rhs: String,
    pub verified: bool,
}

impl CertificateSummary {
    pub fn new(cs: &ConstraintSystem, cert: &FarkasCertificate) -> Self {
        let rows = cert
            .support(cs)
            .map(|(r, y)| CertificateRow {
                provenance: r.provenance.clone(),
                relation: r.relation,
                rhs: format_rational(&r.rhs),
                multiplier: format_rational(y),
            })
            .collect();
        let (_, rhs) = cert.combination(cs);
        Self {
            rows,
            combined_rhs: format_rational(&rhs),
            verified: cert.verify(cs).is_ok(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub variable: String,
    pub weight: String,
}

/// Nonzero entries of a witness vector.
pub fn witness_entries(cs: &ConstraintSystem, x: &[BigRational]) -> Vec<WitnessEntry> {
    cs.variables
        .iter()
        .zip(x)
        .filter(|(_, w)| *w != &BigRational::from_integer(0.into()))
        .map(|(v, w)| WitnessEntry {
            variable: v.clone(),
            weight: format_rational(w),
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub method: String,
    pub status: ReportStatus,
    pub agrees: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2: Option<String>,
    pub chi: Vec<String>,
    pub relaxed: Vec<Relaxation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub parameters: Parameters,
    pub status: ReportStatus,
    pub expected_status: ReportStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_overlap: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessEntry>>,
    /// Whether the witness, turned into a model, reproduces the fragment exactly.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_reproduces: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
    pub trace: Vec<TraceStep>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// The witness as a model file, when there is one.
    #[serde(skip)]
    pub witness_model: Option<ModelDocument>,
}

impl TheoremReport {
    pub fn as_expected(&self) -> bool {
        self.status == self.expected_status
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("report serializes");
        value["as_expected"] = serde_json::Value::Bool(self.as_expected());
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    /// Human-readable summary: status line, certificate rows and failing steps.
    pub fn summary(&self) -> String {
        let mut out = format!(
            "{}: {} (expected {})",
            self.theorem, self.status, self.expected_status
        );
        if let Some(v) = &self.max_overlap {
            out.push_str(&format!(", max overlap {v}"));
        }
        out.push('\n');
        if let Some(c) = &self.certificate {
            out.push_str(&format!(
                "certificate ({} rows, combined rhs {}, verified {}):\n",
                c.rows.len(),
                c.combined_rhs,
                c.verified
            ));
            for r in &c.rows {
                out.push_str(&format!("  {} x [{} {} {}]\n", r.multiplier, r.provenance, r.relation, r.rhs));
            }
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {} nonzero weights\n", w.len()));
        }
        for s in &self.trace {
            out.push_str(&format!(
                "  [{}] {} ({})\n",
                if s.holds { "ok" } else { "--" },
                s.statement,
                s.relation
            ));
        }
        out
    }
}
