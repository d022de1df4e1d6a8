//! Splitting stochastic responses into deterministic ones.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ontology::{EpistemicState, OnticSpace, OntologicalModel, ResponseTable};

/// Largest number of ontic states the decomposition may create.
pub const DECOMPOSITION_CAP: usize = 1_000_000;

/// Every response entry is 0 or 1.
pub fn is_deterministic(model: &OntologicalModel) -> bool {
    model
        .responses()
        .iter()
        .flat_map(|r| r.entries.iter().flatten())
        .all(|p| p.is_zero() || p.is_one())
}

/// Replace each λ by the pairs `(λ, a)` where `a` picks one outcome per
/// context, weighted by `P(λ) · Π_c P(a_c | c, λ)`. Responses of the new
/// states are deterministic and every `predicted_statistics` is unchanged.
///
/// Only shared (ψ-anomic) responses can be split this way.
pub fn deterministic_decomposition(model: &OntologicalModel) -> Result<OntologicalModel> {
    if let Some(r) = model.responses().iter().find(|r| r.preparation.is_some()) {
        return Err(Error::Precondition(format!(
            "response table for `{}` depends on the preparation",
            r.context
        )));
    }
    let tables = model.responses();
    let mut labels = Vec::new();
    let mut parents = Vec::new();
    let mut factors = Vec::new();
    let mut picks: Vec<Vec<usize>> = Vec::new();

    for (l, name) in model.space().states().iter().enumerate() {
        // Mixed-radix walk over the outcomes with positive probability.
        let options: Vec<Vec<usize>> = tables
            .iter()
            .map(|t| (0..t.outcomes.len()).filter(|&k| !t.entries[l][k].is_zero()).collect())
            .collect();
        let mut idx = vec![0usize; tables.len()];
        loop {
            if labels.len() >= DECOMPOSITION_CAP {
                return Err(Error::SizeCap(format!(
                    "more than {DECOMPOSITION_CAP} deterministic ontic states"
                )));
            }
            let chosen: Vec<usize> = idx.iter().zip(&options).map(|(i, o)| o[*i]).collect();
            let factor: BigRational = chosen
                .iter()
                .zip(tables)
                .map(|(&k, t)| t.entries[l][k].clone())
                .product();
            let outcome_names: Vec<&str> = chosen
                .iter()
                .zip(tables)
                .map(|(&k, t)| t.outcomes[k].as_str())
                .collect();
            labels.push(format!("{name}:{}", outcome_names.join("|")));
            parents.push(l);
            factors.push(factor);
            picks.push(chosen);

            let mut pos = 0;
            while pos < idx.len() {
                idx[pos] += 1;
                if idx[pos] < options[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }

    let space = OnticSpace::new(labels)?;
    let epistemics = model
        .epistemics()
        .iter()
        .map(|e| EpistemicState {
            preparation: e.preparation.clone(),
            context: e.context.clone(),
            weights: parents
                .iter()
                .zip(&factors)
                .map(|(&l, f)| &e.weights[l] * f)
                .collect(),
        })
        .collect();
    let responses = tables
        .iter()
        .enumerate()
        .map(|(c, t)| ResponseTable {
            context: t.context.clone(),
            preparation: None,
            outcomes: t.outcomes.clone(),
            entries: picks
                .iter()
                .map(|p| {
                    (0..t.outcomes.len())
                        .map(|k| {
                            if k == p[c] {
                                BigRational::one()
                            } else {
                                BigRational::zero()
                            }
                        })
                        .collect()
                })
                .collect(),
        })
        .collect();
    OntologicalModel::new(space, epistemics, responses, model.flags())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::{predicted_statistics, AssumptionSet};
    use crate::rational::rat;

    #[test]
    fn two_contexts_split_into_four() {
        let space = OnticSpace::new(vec!["l".into()]).unwrap();
        let t = |c: &str, p: BigRational| ResponseTable {
            context: c.into(),
            preparation: None,
            outcomes: vec!["a".into(), "b".into()],
            entries: vec![vec![p.clone(), rat(1, 1) - p]],
        };
        let model = OntologicalModel::new(
            space,
            vec![EpistemicState::new("p", vec![rat(1, 1)])],
            vec![t("X", rat(1, 3)), t("Y", rat(1, 4))],
            AssumptionSet::default(),
        )
        .unwrap();
        let d = deterministic_decomposition(&model).unwrap();
        assert_eq!(d.space().len(), 4);
        assert!(is_deterministic(&d));
        for c in ["X", "Y"] {
            assert_eq!(
                predicted_statistics(&d, "p", c).unwrap(),
                predicted_statistics(&model, "p", c).unwrap()
            );
        }
    }
}
