//! No-go checks: exact feasibility programs over deterministic assignments,
//! an independent enumeration oracle, the two-copy antidistinguishability
//! argument and explicit counterexample models.

mod counterexample;
mod hardy;
mod lp;
mod oracle;
mod pbr;
mod reduction;
mod report;

pub use counterexample::{nomic_counterexample, CounterexampleKind};
pub use hardy::{
    check_hroi2, check_hroi2_with, check_hroi_original, check_hroi_original_with, compile_hroi2,
    DeterministicAssignment, HroiProgram, Hroi2Options, Hroi2Program,
};
pub use lp::{
    solve, ConstraintSystem, FarkasCertificate, FeasibilityResult, Objective, Relation, Row, Sense, Status,
};
pub use oracle::{enumerate_oracle, enumerate_vertices, possible_support, ORACLE_CAP};
pub use pbr::{computational_basis, ket0, ket1, ket_minus, ket_plus, pbr_basis, pbr_check, pbr_default};
pub use reduction::{deterministic_decomposition, is_deterministic, DECOMPOSITION_CAP};
pub use report::{
    witness_entries, CertificateRow, CertificateSummary, OracleCheck, Parameters, Relaxation, ReportStatus,
    TheoremId, TheoremReport, TraceStep, WitnessEntry,
};
