use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::model::{AssumptionSet, OntologicalModel, ResponseTable};
use super::stats::joint_outcome;
use crate::error::{Error, Result};
use crate::interferometer::{ExperimentId, PSI_0, PSI_IN, YES};
use crate::qstate::Phase;
use crate::rational::format_rational;

/// Separator for product preparations (`"n⊗m"`) and product ontic states.
pub const PRODUCT_SEPARATOR: char = '⊗';

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AssumptionCheck {
    pub assumption: String,
    pub passed: bool,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ComplianceReport {
    pub checks: Vec<AssumptionCheck>,
}

impl ComplianceReport {
    pub fn get(&self, assumption: &str) -> Option<&AssumptionCheck> {
        self.checks.iter().find(|c| c.assumption == assumption)
    }

    pub fn passed(&self, assumption: &str) -> Option<bool> {
        self.get(assumption).map(|c| c.passed)
    }
}

/// Check the requested hypotheses against the model's actual structure.
///
/// * `psi_anomic`: no response table carries a preparation index.
/// * `pip`: no epistemic state carries a measurement context.
/// * `pip_ps`: product preparations `n⊗m` over product ontic states factorize
///   into marginals that do not depend on the partner system.
/// * `roi`: the ontic-indifference ties of the interferometer fragment (see
///   [`check_roi`]).
pub fn check_assumptions(model: &OntologicalModel, which: &AssumptionSet) -> Result<ComplianceReport> {
    let mut checks = Vec::new();
    if which.psi_anomic {
        checks.push(check_psi_anomic(model));
    }
    if which.pip {
        checks.push(check_pip(model));
    }
    if which.pip_ps {
        checks.push(check_pip_ps(model)?);
    }
    if which.roi {
        checks.push(check_roi(model)?);
    }
    Ok(ComplianceReport { checks })
}

fn check_psi_anomic(model: &OntologicalModel) -> AssumptionCheck {
    let violations: Vec<String> = model
        .responses()
        .iter()
        .filter_map(|r| {
            r.preparation
                .as_ref()
                .map(|p| format!("response table for `{}` is indexed by preparation `{p}`", r.context))
        })
        .collect();
    AssumptionCheck {
        assumption: "psi_anomic".into(),
        passed: violations.is_empty(),
        violations,
        notes: vec![],
    }
}

fn check_pip(model: &OntologicalModel) -> AssumptionCheck {
    let violations: Vec<String> = model
        .epistemics()
        .iter()
        .filter_map(|e| {
            e.context.as_ref().map(|c| {
                format!(
                    "epistemic state of `{}` depends on the measurement `{c}`",
                    e.preparation
                )
            })
        })
        .collect();
    AssumptionCheck {
        assumption: "pip".into(),
        passed: violations.is_empty(),
        violations,
        notes: vec![],
    }
}

fn check_pip_ps(model: &OntologicalModel) -> Result<AssumptionCheck> {
    let products: Vec<_> = model
        .epistemics()
        .iter()
        .filter(|e| e.context.is_none() && e.preparation.contains(PRODUCT_SEPARATOR))
        .collect();
    if products.is_empty() {
        return Err(Error::FragmentMismatch(
            "PIP-PS needs product preparations `n⊗m`".into(),
        ));
    }
    let pairs: Vec<(&str, &str)> = model
        .space()
        .states()
        .iter()
        .map(|s| s.split_once(PRODUCT_SEPARATOR))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::FragmentMismatch("PIP-PS needs product ontic states `a⊗b`".into()))?;

    let mut violations = Vec::new();
    let mut marg_a: BTreeMap<&str, BTreeMap<&str, BigRational>> = BTreeMap::new();
    let mut marg_b: BTreeMap<&str, BTreeMap<&str, BigRational>> = BTreeMap::new();
    for e in products {
        let (n, m) = e.preparation.split_once(PRODUCT_SEPARATOR).expect("filtered");
        let mut pa: BTreeMap<&str, BigRational> = BTreeMap::new();
        let mut pb: BTreeMap<&str, BigRational> = BTreeMap::new();
        for ((la, lb), w) in pairs.iter().zip(&e.weights) {
            *pa.entry(la).or_insert_with(BigRational::zero) += w;
            *pb.entry(lb).or_insert_with(BigRational::zero) += w;
        }
        for ((la, lb), w) in pairs.iter().zip(&e.weights) {
            let product = &pa[la] * &pb[lb];
            if *w != product {
                violations.push(format!(
                    "P_{}({la},{lb}) = {} but P_{n}({la})·P_{m}({lb}) = {}",
                    e.preparation,
                    format_rational(w),
                    format_rational(&product)
                ));
            }
        }
        for (side, store, marg, name) in [("A", &mut marg_a, pa, n), ("B", &mut marg_b, pb, m)] {
            match store.get(name) {
                Some(prev) if *prev != marg => violations.push(format!(
                    "marginal of `{name}` on system {side} depends on its partner (seen in `{}`)",
                    e.preparation
                )),
                Some(_) => {}
                None => {
                    store.insert(name, marg);
                }
            }
        }
    }
    Ok(AssumptionCheck {
        assumption: "pip_ps".into(),
        passed: violations.is_empty(),
        violations,
        notes: vec![],
    })
}

fn prob_or_zero(table: &ResponseTable, lambda: usize, outcome: &str) -> BigRational {
    table
        .prob(lambda, outcome)
        .cloned()
        .unwrap_or_else(|_| BigRational::zero())
}

/// Restricted ontic indifference on the interferometer fragment.
///
/// Preparation stage (`psi_in`), for every λ in its support:
/// * the blocked responses carry no phase index: `M1,M2[0]` and `M1,M2[pi]`
///   agree on every outcome;
/// * the blocked port-4 and port-3 responses equal the unblocked ones at each
///   phase: `P(4,Yes | M1,M2[χ], λ) = P(4 | M0,M2[χ], λ)` and likewise for
///   port 3, for `χ ∈ {0, π}`.
///
/// Directly prepared `psi_0`, for every λ in its support: the port 3 and 4
/// responses of `M2[0]` and `M2[pi]` agree.
///
/// The blocked-versus-unblocked ties relate responses governed by different
/// wavefunctions (the blocker changes the wave). They bind only shared
/// (ψ-anomic) tables; when either table is indexed by a preparation the tie is
/// skipped and noted.
pub fn check_roi(model: &OntologicalModel) -> Result<AssumptionCheck> {
    let chis = [Phase::zero(), Phase::pi()];
    let blocked: Vec<String> = chis.iter().map(|c| ExperimentId::m1_m2(c.clone()).to_string()).collect();
    let unblocked: Vec<String> = chis.iter().map(|c| ExperimentId::m0_m2(c.clone()).to_string()).collect();
    let direct: Vec<String> = chis.iter().map(|c| ExperimentId::m2(c.clone()).to_string()).collect();
    let labels = model.space().states();

    let lookup = |prep: &str, ctxs: &[String]| -> Option<Vec<&ResponseTable>> {
        if !model.preparations().contains(&prep) {
            return None;
        }
        ctxs.iter().map(|c| model.response(prep, c).ok()).collect()
    };
    let stage = lookup(PSI_IN, &[blocked.clone(), unblocked.clone()].concat());
    let direct_tables = lookup(PSI_0, &direct);
    if stage.is_none() && direct_tables.is_none() {
        return Err(Error::FragmentMismatch(
            "ROI needs psi_in with M1,M2[χ] and M0,M2[χ], or psi_0 with M2[χ]".into(),
        ));
    }

    let mut violations = Vec::new();
    let mut notes = Vec::new();
    if let Some(t) = stage {
        let (b0, bpi, u0, upi) = (t[0], t[1], t[2], t[3]);
        let cross_ok = [b0, bpi, u0, upi].iter().all(|t| t.preparation.is_none());
        if !cross_ok {
            notes.push(
                "blocked/unblocked ties skipped: responses are indexed by the wavefunction".into(),
            );
        }
        for l in model.support(PSI_IN)? {
            let name = &labels[l];
            for o in &b0.outcomes {
                let (x, y) = (prob_or_zero(b0, l, o), prob_or_zero(bpi, l, o));
                if x != y {
                    violations.push(format!(
                        "λ={name}: P({o} | {}) = {} ≠ P({o} | {}) = {}",
                        blocked[0],
                        format_rational(&x),
                        blocked[1],
                        format_rational(&y)
                    ));
                }
            }
            if !cross_ok {
                continue;
            }
            for (i, (bt, ut)) in [(b0, u0), (bpi, upi)].into_iter().enumerate() {
                for port in ["4", "3"] {
                    let x = prob_or_zero(bt, l, &joint_outcome(port, YES));
                    let y = prob_or_zero(ut, l, port);
                    if x != y {
                        violations.push(format!(
                            "λ={name}: P({port},Yes | {}) = {} ≠ P({port} | {}) = {}",
                            blocked[i],
                            format_rational(&x),
                            unblocked[i],
                            format_rational(&y)
                        ));
                    }
                }
            }
        }
    }
    if let Some(t) = direct_tables {
        for l in model.support(PSI_0)? {
            for port in ["3", "4"] {
                let (x, y) = (prob_or_zero(t[0], l, port), prob_or_zero(t[1], l, port));
                if x != y {
                    violations.push(format!(
                        "λ={} in the support of psi_0: P({port} | {}) = {} ≠ P({port} | {}) = {}",
                        labels[l],
                        direct[0],
                        format_rational(&x),
                        direct[1],
                        format_rational(&y)
                    ));
                }
            }
        }
    }
    Ok(AssumptionCheck {
        assumption: "roi".into(),
        passed: violations.is_empty(),
        violations,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::{EpistemicState, OnticSpace};
    use crate::rational::rat;

    #[test]
    fn shared_tables_are_anomic() {
        let space = OnticSpace::new(vec!["l".into()]).unwrap();
        let model = OntologicalModel::new(
            space,
            vec![
                EpistemicState::new("p", vec![rat(1, 1)]),
                EpistemicState::new("q", vec![rat(1, 1)]),
            ],
            vec![ResponseTable {
                context: "M".into(),
                preparation: None,
                outcomes: vec!["a".into()],
                entries: vec![vec![rat(1, 1)]],
            }],
            AssumptionSet::default(),
        )
        .unwrap();
        let r = check_assumptions(
            &model,
            &AssumptionSet {
                psi_anomic: true,
                pip: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.passed("psi_anomic"), Some(true));
        assert_eq!(r.passed("pip"), Some(true));
    }

    #[test]
    fn context_dependent_epistemic_fails_pip() {
        let space = OnticSpace::new(vec!["l".into()]).unwrap();
        let mut e = EpistemicState::new("p", vec![rat(1, 1)]);
        e.context = Some("M".into());
        let model = OntologicalModel::new(space, vec![e], vec![], AssumptionSet::default()).unwrap();
        let r = check_assumptions(
            &model,
            &AssumptionSet {
                pip: true,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.passed("pip"), Some(false));
    }

    fn product_model(joint: [(i64, i64); 4]) -> OntologicalModel {
        let space = OnticSpace::new(
            ["x⊗x", "x⊗y", "y⊗x", "y⊗y"].iter().map(|s| s.to_string()).collect(),
        )
        .unwrap();
        let w = joint.iter().map(|(n, d)| rat(*n, *d)).collect();
        OntologicalModel::new(space, vec![EpistemicState::new("p⊗q", w)], vec![], AssumptionSet::default())
            .unwrap()
    }

    #[test]
    fn pip_ps_factorization() {
        let which = AssumptionSet {
            pip_ps: true,
            ..Default::default()
        };
        // (1/2, 1/2) ⊗ (1/3, 2/3)
        let good = product_model([(1, 6), (1, 3), (1, 6), (1, 3)]);
        assert_eq!(check_assumptions(&good, &which).unwrap().passed("pip_ps"), Some(true));
        let correlated = product_model([(1, 2), (0, 1), (0, 1), (1, 2)]);
        assert_eq!(
            check_assumptions(&correlated, &which).unwrap().passed("pip_ps"),
            Some(false)
        );
    }

    #[test]
    fn roi_without_fragment_is_mismatch() {
        let space = OnticSpace::new(vec!["l".into()]).unwrap();
        let model = OntologicalModel::new(
            space,
            vec![EpistemicState::new("p", vec![rat(1, 1)])],
            vec![],
            AssumptionSet::default(),
        )
        .unwrap();
        let which = AssumptionSet {
            roi: true,
            ..Default::default()
        };
        assert!(matches!(
            check_assumptions(&model, &which),
            Err(Error::FragmentMismatch(_))
        ));
    }
}
