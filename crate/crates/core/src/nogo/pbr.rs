//! Two-copy antidistinguishability argument against overlapping epistemic
//! states of nonorthogonal qubit states.

use super::report::{Parameters, ReportStatus, TheoremId, TheoremReport, TraceStep};
use crate::error::{Error, Result};
use crate::qstate::{
    born_probabilities, Amplitude, ModeLabel, ProjectiveMeasurement, Space, StateVector, Surd,
};
use crate::rational::rat;

fn qubit() -> Space {
    Space::modes(2)
}

fn half_root() -> Amplitude {
    Amplitude::real(Surd::sqrt(&rat(1, 2)).expect("rational square root"))
}

/// `|0⟩`.
pub fn ket0() -> StateVector {
    StateVector::basis(&qubit(), &ModeLabel::Mode(0)).expect("label in space")
}

/// `|1⟩`.
pub fn ket1() -> StateVector {
    StateVector::basis(&qubit(), &ModeLabel::Mode(1)).expect("label in space")
}

/// `|+⟩ = (|0⟩ + |1⟩)/√2`.
pub fn ket_plus() -> StateVector {
    StateVector::new(qubit(), vec![half_root(), half_root()]).expect("normalized")
}

/// `|−⟩ = (|0⟩ − |1⟩)/√2`.
pub fn ket_minus() -> StateVector {
    StateVector::new(qubit(), vec![half_root(), -half_root()]).expect("normalized")
}

fn entangled(a: &StateVector, b: &StateVector, c: &StateVector, d: &StateVector) -> StateVector {
    let x = a.tensor(b);
    let y = c.tensor(d);
    let amps = x
        .amplitudes()
        .iter()
        .zip(y.amplitudes())
        .map(|(u, v)| &half_root() * &(u + v))
        .collect();
    StateVector::new(x.space().clone(), amps).expect("normalized")
}

/// The entangled two-qubit basis that antidistinguishes `{|0⟩, |+⟩}^{⊗2}`:
///
/// * `ξ₁ = (|0⟩|1⟩ + |1⟩|0⟩)/√2` is orthogonal to `|0⟩|0⟩`,
/// * `ξ₂ = (|0⟩|−⟩ + |1⟩|+⟩)/√2` to `|0⟩|+⟩`,
/// * `ξ₃ = (|+⟩|1⟩ + |−⟩|0⟩)/√2` to `|+⟩|0⟩`,
/// * `ξ₄ = (|+⟩|−⟩ + |−⟩|+⟩)/√2` to `|+⟩|+⟩`.
///
/// Construction fails unless the four vectors are orthonormal.
pub fn pbr_basis() -> Result<ProjectiveMeasurement> {
    let (z, o, p, m) = (ket0(), ket1(), ket_plus(), ket_minus());
    let vectors = vec![
        ("xi1".to_string(), entangled(&z, &o, &o, &z)),
        ("xi2".to_string(), entangled(&z, &m, &o, &p)),
        ("xi3".to_string(), entangled(&p, &o, &m, &z)),
        ("xi4".to_string(), entangled(&p, &m, &m, &p)),
    ];
    ProjectiveMeasurement::from_vectors("pbr-basis", vectors)
}

/// Measurement in the product computational basis.
pub fn computational_basis() -> Result<ProjectiveMeasurement> {
    let vectors = [(0, 0), (0, 1), (1, 0), (1, 1)]
        .iter()
        .map(|&(a, b)| {
            let ka = if a == 0 { ket0() } else { ket1() };
            let kb = if b == 0 { ket0() } else { ket1() };
            (format!("{a}{b}"), ka.tensor(&kb))
        })
        .collect();
    ProjectiveMeasurement::from_vectors("computational", vectors)
}

/// Check that `M` antidistinguishes the four products of `psi1`, `psi2` and,
/// if so, derive the normalization conflict for an ontic pair shared by both
/// epistemic states.
///
/// Under PIP-PS, a pair `(λ₁, λ₂)` with each `λᵢ` in the overlap of the two
/// supports lies in the support of all four product preparations. With shared
/// responses, every outcome that one product never produces must have
/// probability zero at that pair. When every outcome is excluded this way the
/// responses at the pair sum to 0, not 1.
pub fn pbr_check(psi1: &StateVector, psi2: &StateVector, m: &ProjectiveMeasurement) -> Result<TheoremReport> {
    let overlap = psi1.inner(psi2)?;
    if overlap.is_zero() {
        return Err(Error::Precondition(
            "the two states are orthogonal; the argument needs nonorthogonal states".into(),
        ));
    }
    let names = ["1", "2"];
    let states = [psi1, psi2];
    let mut trace = Vec::new();
    let mut excluded: Vec<String> = Vec::new();
    let mut each_prep_has_zero = true;
    for (i, a) in states.iter().enumerate() {
        for (j, b) in states.iter().enumerate() {
            let product = a.tensor(b);
            let dist = born_probabilities(&product, m)?;
            let zeros: Vec<&str> = dist
                .entries()
                .iter()
                .filter(|(_, p)| p.is_zero())
                .map(|(o, _)| o.as_str())
                .collect();
            each_prep_has_zero &= !zeros.is_empty();
            let exact = dist.is_exact();
            trace.push(TraceStep::new(
                "born",
                if zeros.is_empty() {
                    format!("psi{}⊗psi{}: no outcome has probability 0", names[i], names[j])
                } else {
                    format!(
                        "psi{}⊗psi{}: P({}) = 0{}",
                        names[i],
                        names[j],
                        zeros.join(") = P("),
                        if exact { " exactly" } else { " within tolerance" }
                    )
                },
                !zeros.is_empty(),
            ));
            for z in zeros {
                if !excluded.iter().any(|e| e == z) {
                    excluded.push(z.to_string());
                }
            }
        }
    }
    let outcomes: Vec<&str> = m.outcomes().collect();
    let covered = outcomes.iter().all(|o| excluded.iter().any(|e| e == o));
    let conclusive = each_prep_has_zero && covered;

    trace.push(TraceStep::new(
        "pip-ps",
        "an ontic pair from the overlap of both supports lies in the support of all four products",
        true,
    ));
    trace.push(TraceStep::new(
        "anomic",
        format!(
            "so P(k | λ₁, λ₂) = 0 for every excluded outcome: {}",
            if excluded.is_empty() {
                "none".to_string()
            } else {
                excluded.join(", ")
            }
        ),
        !excluded.is_empty(),
    ));
    trace.push(TraceStep::new(
        "conflict",
        "Σ_k P(k | λ₁, λ₂) = 0 contradicts normalization, so the overlap must vanish",
        conclusive,
    ));

    let mut notes = vec![format!(
        "|<psi1|psi2>|² = {}",
        overlap.norm_sqr()
    )];
    if !conclusive {
        notes.push("inconclusive measurement: some outcome is not excluded by any product".into());
    }
    Ok(TheoremReport {
        theorem: TheoremId::Pbr,
        parameters: Parameters {
            a2: None,
            chi: vec![],
            relaxed: vec![],
        },
        status: if conclusive {
            ReportStatus::Contradiction
        } else {
            ReportStatus::Inconclusive
        },
        expected_status: ReportStatus::Contradiction,
        max_overlap: Some(if conclusive { "0".into() } else { "unknown".into() }),
        certificate: None,
        witness: None,
        witness_reproduces: None,
        oracle: None,
        trace,
        notes,
        witness_model: None,
    })
}

/// `pbr_check(|0⟩, |+⟩, pbr_basis())`.
pub fn pbr_default() -> Result<TheoremReport> {
    pbr_check(&ket0(), &ket_plus(), &pbr_basis()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_is_orthonormal_and_exact() {
        let m = pbr_basis().unwrap();
        assert_eq!(m.effects().len(), 4);
    }

    #[test]
    fn default_pair_is_contradiction() {
        let r = pbr_default().unwrap();
        assert_eq!(r.status, ReportStatus::Contradiction);
        assert!(r.trace.iter().all(|s| s.holds));
        assert!(r.trace.iter().take(4).all(|s| s.statement.ends_with("exactly")));
    }

    #[test]
    fn orthogonal_is_precondition_error() {
        let r = pbr_check(&ket0(), &ket1(), &pbr_basis().unwrap());
        assert!(matches!(r, Err(Error::Precondition(_))));
    }

    #[test]
    fn identity_measurement_inconclusive() {
        let r = pbr_check(&ket0(), &ket_plus(), &computational_basis().unwrap()).unwrap();
        assert_eq!(r.status, ReportStatus::Inconclusive);
    }
}
