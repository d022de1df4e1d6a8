use num_rational::BigRational;
use num_traits::Zero;

use super::model::{AssumptionSet, EpistemicState, OnticSpace, OntologicalModel, ResponseTable};
use crate::error::{Error, Result};

/// Ontic label of `μ = (λ, τ_Φ)` in a lifted model.
pub fn lifted_label(lambda: &str, preparation: &str) -> String {
    format!("{lambda}|{preparation}")
}

/// Adjoin a wavefunction token to every ontic state.
///
/// The new space is `Λ × Γ` with `Γ` the model's preparations. Each
/// preparation Ψ is sent to `P_Ψ(λ)·[τ = τ_Ψ]`, and the shared response of
/// `μ = (λ, τ_Φ)` is the response `P_Φ(·|λ)` that Φ's own table assigns. The
/// result is ψ-anomic, reproduces the parent's statistics, and its epistemic
/// states for distinct preparations have disjoint supports.
pub fn lift_model(model: &OntologicalModel) -> Result<OntologicalModel> {
    let gamma: Vec<String> = model.preparations().into_iter().map(String::from).collect();
    let lambdas = model.space().states();

    let mut states = Vec::with_capacity(lambdas.len() * gamma.len());
    for l in lambdas {
        for g in &gamma {
            states.push(lifted_label(l, g));
        }
    }
    let space = OnticSpace::new(states)?;
    let mu = |l: usize, g: usize| l * gamma.len() + g;

    let epistemics = model
        .epistemics()
        .iter()
        .map(|e| {
            let g = gamma.iter().position(|p| *p == e.preparation).expect("listed preparation");
            let mut weights = vec![BigRational::zero(); space.len()];
            for (l, w) in e.weights.iter().enumerate() {
                weights[mu(l, g)] = w.clone();
            }
            EpistemicState {
                preparation: e.preparation.clone(),
                context: e.context.clone(),
                weights,
            }
        })
        .collect();

    let mut responses = Vec::new();
    for context in model.contexts() {
        let any = model
            .responses()
            .iter()
            .find(|r| r.context == context)
            .expect("listed context");
        let mut entries = Vec::with_capacity(space.len());
        for l in 0..lambdas.len() {
            for g in &gamma {
                // A preparation with no table for this context never reaches it;
                // any normalized row will do there.
                let table = model.response(g, context).unwrap_or(any);
                entries.push(table.entries[l].clone());
            }
        }
        responses.push(ResponseTable {
            context: context.to_string(),
            preparation: None,
            outcomes: any.outcomes.clone(),
            entries,
        });
    }

    let flags = AssumptionSet {
        psi_anomic: true,
        ..model.flags()
    };
    OntologicalModel::new(space, epistemics, responses, flags)
        .map_err(|e| Error::Internal(format!("lifted model invalid: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::{predicted_statistics, support_overlap};
    use crate::rational::rat;

    #[test]
    fn single_preparation_is_relabeling() {
        let space = OnticSpace::new(vec!["a".into(), "b".into()]).unwrap();
        let model = OntologicalModel::new(
            space,
            vec![EpistemicState::new("p", vec![rat(1, 4), rat(3, 4)])],
            vec![ResponseTable {
                context: "M".into(),
                preparation: Some("p".into()),
                outcomes: vec!["x".into(), "y".into()],
                entries: vec![vec![rat(1, 1), rat(0, 1)], vec![rat(1, 2), rat(1, 2)]],
            }],
            AssumptionSet::default(),
        )
        .unwrap();
        let lifted = lift_model(&model).unwrap();
        assert_eq!(lifted.space().states(), ["a|p", "b|p"]);
        assert_eq!(lifted.epistemics()[0].weights, model.epistemics()[0].weights);
        assert_eq!(lifted.responses()[0].entries, model.responses()[0].entries);
        assert!(lifted.flags().psi_anomic);
        assert_eq!(
            predicted_statistics(&lifted, "p", "M").unwrap(),
            predicted_statistics(&model, "p", "M").unwrap()
        );
    }

    #[test]
    fn distinct_preparations_become_disjoint() {
        let space = OnticSpace::new(vec!["l".into()]).unwrap();
        let table = |p: &str, x: BigRational| ResponseTable {
            context: "M".into(),
            preparation: Some(p.into()),
            outcomes: vec!["x".into(), "y".into()],
            entries: vec![vec![x.clone(), rat(1, 1) - x]],
        };
        let model = OntologicalModel::new(
            space,
            vec![
                EpistemicState::new("p", vec![rat(1, 1)]),
                EpistemicState::new("q", vec![rat(1, 1)]),
            ],
            vec![table("p", rat(1, 3)), table("q", rat(2, 3))],
            AssumptionSet::default(),
        )
        .unwrap();
        assert_eq!(support_overlap(&model, "p", "q").unwrap().mass, rat(1, 1));
        let lifted = lift_model(&model).unwrap();
        let o = support_overlap(&lifted, "p", "q").unwrap();
        assert!(o.disjoint);
        assert_eq!(o.mass, rat(0, 1));
        for p in ["p", "q"] {
            assert_eq!(
                predicted_statistics(&lifted, p, "M").unwrap(),
                predicted_statistics(&model, p, "M").unwrap()
            );
        }
    }
}
