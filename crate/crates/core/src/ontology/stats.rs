use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::model::{Distribution, Fragment, OntologicalModel};
use crate::error::{Error, Result};

/// Label of a sequential outcome: `β` of the second stage after `α` of the first.
pub fn joint_outcome(beta: &str, alpha: &str) -> String {
    format!("{beta},{alpha}")
}

/// `P(α | prep, context) = Σ_λ P(α | context, λ) · P_prep(λ)`.
pub fn predicted_statistics(
    model: &OntologicalModel,
    preparation: &str,
    context: &str,
) -> Result<Distribution> {
    let epistemic = model.epistemic(preparation, context)?;
    let table = model.response(preparation, context)?;
    let entries = table
        .outcomes
        .iter()
        .enumerate()
        .map(|(k, o)| {
            let p = epistemic
                .weights
                .iter()
                .zip(&table.entries)
                .map(|(w, row)| w * &row[k])
                .sum();
            (o.clone(), p)
        })
        .collect();
    Ok(Distribution::new(entries))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextDeviation {
    pub preparation: String,
    pub context: String,
    /// `None` when the model has no table or epistemic state for this entry.
    pub max_abs_deviation: Option<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReproductionReport {
    pub reproduces: bool,
    pub deviations: Vec<ContextDeviation>,
}

impl ReproductionReport {
    pub fn max_deviation(&self) -> Option<BigRational> {
        self.deviations
            .iter()
            .filter_map(|d| d.max_abs_deviation.clone())
            .max()
    }
}

/// Compare the model against every fragment entry. Outcomes missing on either
/// side count as probability zero; a missing preparation or context fails.
pub fn reproduces(model: &OntologicalModel, fragment: &Fragment, tol: &BigRational) -> ReproductionReport {
    let mut ok = true;
    let deviations = fragment
        .entries()
        .iter()
        .map(|e| {
            let dev = predicted_statistics(model, &e.preparation, &e.context)
                .ok()
                .map(|pred| {
                    let mut labels: Vec<&str> = pred.outcomes().collect();
                    for o in e.distribution.outcomes() {
                        if !labels.contains(&o) {
                            labels.push(o);
                        }
                    }
                    labels
                        .iter()
                        .map(|o| (pred.prob(o) - e.distribution.prob(o)).abs())
                        .max()
                        .unwrap_or_else(BigRational::zero)
                });
            match &dev {
                Some(d) if d <= tol => {}
                _ => ok = false,
            }
            ContextDeviation {
                preparation: e.preparation.clone(),
                context: e.context.clone(),
                max_abs_deviation: dev,
            }
        })
        .collect();
    ReproductionReport {
        reproduces: ok,
        deviations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    /// `Σ_λ min(P₁(λ), P₂(λ))`.
    pub mass: BigRational,
    /// `P₁(λ)·P₂(λ) = 0` for every λ.
    pub disjoint: bool,
}

pub fn support_overlap(model: &OntologicalModel, prep1: &str, prep2: &str) -> Result<Overlap> {
    let a = model.epistemic_state(prep1)?;
    let b = model.epistemic_state(prep2)?;
    let mass = a
        .weights
        .iter()
        .zip(&b.weights)
        .map(|(x, y)| x.min(y).clone())
        .sum();
    let disjoint = a
        .weights
        .iter()
        .zip(&b.weights)
        .all(|(x, y)| (x * y).is_zero());
    Ok(Overlap { mass, disjoint })
}

/// `P(β | α, λ) = P(β, α | λ) / P(α | λ)` for a sequential context whose
/// first stage is `first_context`.
pub fn conditional_response(
    model: &OntologicalModel,
    preparation: &str,
    joint_context: &str,
    first_context: &str,
    beta: &str,
    alpha: &str,
    lambda: &str,
) -> Result<BigRational> {
    let l = model.space().index_of(lambda)?;
    let first = model.response(preparation, first_context)?;
    let p_alpha = first.prob(l, alpha)?;
    if !p_alpha.is_positive() {
        return Err(Error::UndefinedConditional {
            context: first_context.to_string(),
            alpha: alpha.to_string(),
            lambda: lambda.to_string(),
        });
    }
    let joint = model.response(preparation, joint_context)?;
    let p_joint = joint.prob(l, &joint_outcome(beta, alpha))?;
    Ok(p_joint / p_alpha)
}
