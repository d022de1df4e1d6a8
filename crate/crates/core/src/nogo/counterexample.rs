//! Wave-dependent models that reproduce the interferometer statistics while
//! letting the epistemic states of `psi_plus` and `psi_0` overlap.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::hardy::check_range;
use crate::error::Result;
use crate::interferometer::{hardy_fragment, ExperimentId, NO, NO_DETECTION, PSI_0, PSI_IN, PSI_PLUS, YES};
use crate::ontology::{
    joint_outcome, AssumptionSet, Distribution, EpistemicState, Fragment, OnticSpace, OntologicalModel,
    ResponseTable,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CounterexampleKind {
    /// One ontic state; every response is the Born table of its preparation.
    #[default]
    SinglePoint,
    /// Ontic states `arm0`, `arm1` weighted by the branch intensities.
    ArmLabel,
}

fn flags() -> AssumptionSet {
    AssumptionSet {
        psi_anomic: false,
        pip: true,
        pip_ps: false,
        roi: false,
    }
}

fn row(d: &Distribution) -> Vec<BigRational> {
    d.entries().iter().map(|(_, p)| p.clone()).collect()
}

fn born_table(prep: &str, ctx: &str, d: &Distribution, points: usize) -> ResponseTable {
    ResponseTable {
        context: ctx.to_string(),
        preparation: Some(prep.to_string()),
        outcomes: d.outcomes().map(String::from).collect(),
        entries: vec![row(d); points],
    }
}

fn single_point(fragment: &Fragment) -> Result<OntologicalModel> {
    let space = OnticSpace::new(vec!["λ".into()])?;
    let epistemics = fragment
        .preparations()
        .into_iter()
        .map(|p| EpistemicState::new(p, vec![BigRational::one()]))
        .collect();
    let responses = fragment
        .entries()
        .iter()
        .map(|e| born_table(&e.preparation, &e.context, &e.distribution, 1))
        .collect();
    OntologicalModel::new(space, epistemics, responses, flags())
}

fn arm_label(a2: &BigRational, fragment: &Fragment) -> Result<OntologicalModel> {
    let b2 = BigRational::one() - a2;
    let space = OnticSpace::new(vec!["arm0".into(), "arm1".into()])?;
    let epistemics = vec![
        EpistemicState::new(PSI_PLUS, vec![a2.clone(), b2.clone()]),
        EpistemicState::new(PSI_0, vec![BigRational::one(), BigRational::zero()]),
        EpistemicState::new(PSI_IN, vec![a2.clone(), b2]),
    ];
    let m1 = ExperimentId::m1().to_string();
    let indicator = |outcomes: &[String], hit: &str| -> Vec<BigRational> {
        outcomes
            .iter()
            .map(|o| if o == hit { BigRational::one() } else { BigRational::zero() })
            .collect()
    };
    let mut responses = Vec::new();
    for e in fragment.entries() {
        let outcomes: Vec<String> = e.distribution.outcomes().map(String::from).collect();
        let table = if e.preparation == PSI_IN && e.context == m1 {
            // The blocker keeps arm 0 and stops arm 1.
            ResponseTable {
                context: e.context.clone(),
                preparation: Some(PSI_IN.into()),
                entries: vec![indicator(&outcomes, YES), indicator(&outcomes, NO)],
                outcomes,
            }
        } else if e.preparation == PSI_IN && e.context.starts_with("M1,") {
            // A kept particle leaves by port 3 or 4 with equal chance.
            let half = BigRational::new(1.into(), 2.into());
            let kept = outcomes
                .iter()
                .map(|o| {
                    if *o == joint_outcome("3", YES) || *o == joint_outcome("4", YES) {
                        half.clone()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect();
            ResponseTable {
                context: e.context.clone(),
                preparation: Some(PSI_IN.into()),
                entries: vec![kept, indicator(&outcomes, &joint_outcome(NO_DETECTION, NO))],
                outcomes,
            }
        } else {
            born_table(&e.preparation, &e.context, &e.distribution, 2)
        };
        responses.push(table);
    }
    OntologicalModel::new(space, epistemics, responses, flags())
}

/// A model with preparation-indexed responses that reproduces the whole
/// interferometer fragment at `a²`, together with that fragment.
pub fn nomic_counterexample(a2: &BigRational, kind: CounterexampleKind) -> Result<(OntologicalModel, Fragment)> {
    check_range(a2)?;
    let fragment = hardy_fragment(a2)?;
    let model = match kind {
        CounterexampleKind::SinglePoint => single_point(&fragment)?,
        CounterexampleKind::ArmLabel => arm_label(a2, &fragment)?,
    };
    Ok((model, fragment))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::{check_assumptions, lift_model, reproduces, support_overlap};
    use crate::rational::rat;

    #[test]
    fn both_kinds_reproduce_with_overlap() {
        for (kind, expected) in [
            (CounterexampleKind::SinglePoint, rat(1, 1)),
            (CounterexampleKind::ArmLabel, rat(1, 3)),
        ] {
            let (m, f) = nomic_counterexample(&rat(1, 3), kind).unwrap();
            assert!(reproduces(&m, &f, &rat(0, 1)).reproduces, "{kind:?}");
            assert_eq!(support_overlap(&m, PSI_PLUS, PSI_0).unwrap().mass, expected);
            let c = check_assumptions(
                &m,
                &AssumptionSet {
                    psi_anomic: true,
                    ..Default::default()
                },
            )
            .unwrap();
            assert_eq!(c.passed("psi_anomic"), Some(false));
        }
    }

    #[test]
    fn arm_label_weights() {
        let (m, _) = nomic_counterexample(&rat(1, 3), CounterexampleKind::ArmLabel).unwrap();
        assert_eq!(m.epistemic_state(PSI_PLUS).unwrap().weights[0], rat(1, 3));
    }

    #[test]
    fn lifted_counterexample_fails_roi() {
        let (m, f) = nomic_counterexample(&rat(1, 3), CounterexampleKind::SinglePoint).unwrap();
        let lifted = lift_model(&m).unwrap();
        assert!(reproduces(&lifted, &f, &rat(0, 1)).reproduces);
        let c = check_assumptions(
            &lifted,
            &AssumptionSet {
                psi_anomic: true,
                roi: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(c.passed("psi_anomic"), Some(true));
        assert_eq!(c.passed("roi"), Some(false));
    }
}
