use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::format_rational;

/// Finite ontic space Λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnticSpace {
    states: Vec<String>,
}

impl OnticSpace {
    pub fn new(states: Vec<String>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::InvalidModel("ontic space is empty".into()));
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(Error::InvalidModel(format!("ontic state `{s}` listed twice")));
            }
        }
        Ok(Self { states })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, lambda: &str) -> Result<usize> {
        self.states
            .iter()
            .position(|s| s == lambda)
            .ok_or_else(|| Error::UnknownOnticState(lambda.to_string()))
    }
}

/// `P_Ψ(λ)` for one preparation.
///
/// Under preparation independence the distribution does not depend on what is
/// measured later; a model that violates it can attach a context here.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpistemicState {
    pub preparation: String,
    pub context: Option<String>,
    pub weights: Vec<BigRational>,
}

impl EpistemicState {
    pub fn new(preparation: impl Into<String>, weights: Vec<BigRational>) -> Self {
        Self {
            preparation: preparation.into(),
            context: None,
            weights,
        }
    }
}

/// `P(outcome | context, λ)`, optionally indexed by the preparation (ψ-nomic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResponseTable {
    pub context: String,
    pub preparation: Option<String>,
    pub outcomes: Vec<String>,
    /// `entries[λ][outcome]`.
    pub entries: Vec<Vec<BigRational>>,
}

impl ResponseTable {
    pub fn outcome_index(&self, outcome: &str) -> Result<usize> {
        self.outcomes
            .iter()
            .position(|o| o == outcome)
            .ok_or_else(|| Error::UnknownOutcome {
                context: self.context.clone(),
                outcome: outcome.to_string(),
            })
    }

    /// `P(outcome | λ)`; unknown outcomes are an error.
    pub fn prob(&self, lambda: usize, outcome: &str) -> Result<&BigRational> {
        Ok(&self.entries[lambda][self.outcome_index(outcome)?])
    }
}

/// The hypotheses a model claims to satisfy.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionSet {
    pub psi_anomic: bool,
    pub pip: bool,
    pub pip_ps: bool,
    pub roi: bool,
}

impl AssumptionSet {
    pub fn all() -> Self {
        Self {
            psi_anomic: true,
            pip: true,
            pip_ps: true,
            roi: true,
        }
    }
}

/// A finite ontological model: ontic space, epistemic states and response tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OntologicalModel {
    space: OnticSpace,
    epistemics: Vec<EpistemicState>,
    responses: Vec<ResponseTable>,
    flags: AssumptionSet,
}

impl OntologicalModel {
    pub fn new(
        space: OnticSpace,
        epistemics: Vec<EpistemicState>,
        responses: Vec<ResponseTable>,
        flags: AssumptionSet,
    ) -> Result<Self> {
        let model = Self {
            space,
            epistemics,
            responses,
            flags,
        };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<()> {
        let n = self.space.len();
        for (i, e) in self.epistemics.iter().enumerate() {
            let at = format!("epistemic state {i} ({})", e.preparation);
            if e.weights.len() != n {
                return Err(Error::InvalidModel(format!(
                    "{at}: {} weights for {n} ontic states",
                    e.weights.len()
                )));
            }
            check_distribution(&e.weights, &at)?;
            if self.epistemics[..i]
                .iter()
                .any(|f| f.preparation == e.preparation && f.context == e.context)
            {
                return Err(Error::InvalidModel(format!("{at}: duplicate preparation")));
            }
        }
        for (i, r) in self.responses.iter().enumerate() {
            let at = format!("response table {i} ({})", r.context);
            if r.outcomes.is_empty() {
                return Err(Error::InvalidModel(format!("{at}: no outcomes")));
            }
            for (j, o) in r.outcomes.iter().enumerate() {
                if r.outcomes[..j].contains(o) {
                    return Err(Error::InvalidModel(format!("{at}: outcome `{o}` listed twice")));
                }
            }
            if r.entries.len() != n {
                return Err(Error::InvalidModel(format!(
                    "{at}: {} rows for {n} ontic states",
                    r.entries.len()
                )));
            }
            for (l, row) in r.entries.iter().enumerate() {
                let at = format!("{at}, ontic state `{}`", self.space.states()[l]);
                if row.len() != r.outcomes.len() {
                    return Err(Error::InvalidModel(format!("{at}: row length mismatch")));
                }
                check_distribution(row, &at)?;
            }
            for other in &self.responses[..i] {
                if other.context == r.context {
                    if other.preparation == r.preparation {
                        return Err(Error::InvalidModel(format!("{at}: duplicate table")));
                    }
                    if other.outcomes != r.outcomes {
                        return Err(Error::InvalidModel(format!(
                            "{at}: outcome list differs from another table of the same context"
                        )));
                    }
                }
            }
            if self.flags.psi_anomic && r.preparation.is_some() {
                return Err(Error::InvalidModel(format!(
                    "{at}: flagged ψ-anomic but indexed by preparation"
                )));
            }
        }
        Ok(())
    }

    pub fn space(&self) -> &OnticSpace {
        &self.space
    }

    pub fn epistemics(&self) -> &[EpistemicState] {
        &self.epistemics
    }

    pub fn responses(&self) -> &[ResponseTable] {
        &self.responses
    }

    pub fn flags(&self) -> AssumptionSet {
        self.flags
    }

    /// Distinct preparation ids in first-seen order.
    pub fn preparations(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for e in &self.epistemics {
            if !out.contains(&e.preparation.as_str()) {
                out.push(&e.preparation);
            }
        }
        out
    }

    /// Distinct context ids in first-seen order.
    pub fn contexts(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for r in &self.responses {
            if !out.contains(&r.context.as_str()) {
                out.push(&r.context);
            }
        }
        out
    }

    /// The epistemic state used when `preparation` is followed by `context`:
    /// a context-specific one if present, else the generic one.
    pub fn epistemic(&self, preparation: &str, context: &str) -> Result<&EpistemicState> {
        self.epistemics
            .iter()
            .find(|e| e.preparation == preparation && e.context.as_deref() == Some(context))
            .or_else(|| {
                self.epistemics
                    .iter()
                    .find(|e| e.preparation == preparation && e.context.is_none())
            })
            .ok_or_else(|| Error::UnknownPreparation(preparation.to_string()))
    }

    /// Generic (context-free) epistemic state of a preparation.
    pub fn epistemic_state(&self, preparation: &str) -> Result<&EpistemicState> {
        self.epistemics
            .iter()
            .find(|e| e.preparation == preparation && e.context.is_none())
            .or_else(|| self.epistemics.iter().find(|e| e.preparation == preparation))
            .ok_or_else(|| Error::UnknownPreparation(preparation.to_string()))
    }

    /// The response table governing `context` after `preparation`: the
    /// preparation-indexed one if present, else the shared one.
    pub fn response(&self, preparation: &str, context: &str) -> Result<&ResponseTable> {
        self.responses
            .iter()
            .find(|r| r.context == context && r.preparation.as_deref() == Some(preparation))
            .or_else(|| {
                self.responses
                    .iter()
                    .find(|r| r.context == context && r.preparation.is_none())
            })
            .ok_or_else(|| Error::UnknownContext(context.to_string()))
    }

    pub fn with_flags(mut self, flags: AssumptionSet) -> Result<Self> {
        self.flags = flags;
        self.validate()?;
        Ok(self)
    }

    /// Ontic states with positive weight under `preparation`.
    pub fn support(&self, preparation: &str) -> Result<Vec<usize>> {
        let e = self.epistemic_state(preparation)?;
        Ok(e.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| w.is_positive())
            .map(|(i, _)| i)
            .collect())
    }
}

fn check_distribution(ps: &[BigRational], at: &str) -> Result<()> {
    if let Some(p) = ps.iter().find(|p| p.is_negative()) {
        return Err(Error::InvalidModel(format!(
            "{at}: negative probability {}",
            format_rational(p)
        )));
    }
    let total: BigRational = ps.iter().sum();
    if !total.is_one() {
        return Err(Error::InvalidModel(format!(
            "{at}: probabilities sum to {}",
            format_rational(&total)
        )));
    }
    Ok(())
}

/// An exact outcome distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    entries: Vec<(String, BigRational)>,
}

impl Distribution {
    pub fn new(entries: Vec<(String, BigRational)>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[(String, BigRational)] {
        &self.entries
    }

    pub fn outcomes(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(o, _)| o.as_str())
    }

    pub fn get(&self, outcome: &str) -> Option<&BigRational> {
        self.entries.iter().find(|(o, _)| o == outcome).map(|(_, p)| p)
    }

    /// Probability of `outcome`, zero if absent.
    pub fn prob(&self, outcome: &str) -> BigRational {
        self.get(outcome).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn total(&self) -> BigRational {
        self.entries.iter().map(|(_, p)| p).sum()
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (o, p)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{o}: {}", format_rational(p))?;
        }
        Ok(())
    }
}

/// One quantum prediction a model has to reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FragmentEntry {
    pub preparation: String,
    pub context: String,
    pub distribution: Distribution,
}

/// A set of (preparation, context, quantum distribution) triples.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Fragment {
    entries: Vec<FragmentEntry>,
}

impl Fragment {
    pub fn new(entries: Vec<FragmentEntry>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[FragmentEntry] {
        &self.entries
    }

    pub fn push(&mut self, preparation: &str, context: &str, distribution: Distribution) {
        self.entries.push(FragmentEntry {
            preparation: preparation.to_string(),
            context: context.to_string(),
            distribution,
        });
    }

    pub fn get(&self, preparation: &str, context: &str) -> Option<&Distribution> {
        self.entries
            .iter()
            .find(|e| e.preparation == preparation && e.context == context)
            .map(|e| &e.distribution)
    }

    pub fn preparations(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for e in &self.entries {
            if !out.contains(&e.preparation.as_str()) {
                out.push(&e.preparation);
            }
        }
        out
    }

    /// Keep only the entries of the listed preparations.
    pub fn restricted_to(&self, preparations: &[&str]) -> Fragment {
        Fragment {
            entries: self
                .entries
                .iter()
                .filter(|e| preparations.contains(&e.preparation.as_str()))
                .cloned()
                .collect(),
        }
    }
}
