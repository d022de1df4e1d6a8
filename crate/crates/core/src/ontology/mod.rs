//! Finite ontological models: ontic spaces, epistemic states, response tables,
//! and the checks run against them.

mod assumptions;
mod format;
mod lift;
mod model;
mod stats;

pub use assumptions::{check_assumptions, check_roi, AssumptionCheck, ComplianceReport, PRODUCT_SEPARATOR};
pub use format::ModelDocument;
pub use lift::{lift_model, lifted_label};
pub use model::{
    AssumptionSet, Distribution, EpistemicState, Fragment, FragmentEntry, OnticSpace, OntologicalModel,
    ResponseTable,
};
pub use stats::{
    conditional_response, joint_outcome, predicted_statistics, reproduces, support_overlap, ContextDeviation,
    Overlap, ReproductionReport,
};
