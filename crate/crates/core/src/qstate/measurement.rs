use std::fmt;

use super::amplitude::{Amplitude, Real};
use super::space::{ModeLabel, Space};
use super::state::StateVector;
use super::unitary::UnitaryOp;
use crate::error::{Error, Result};

/// One projector of a measurement, given by an orthonormal basis of its range.
#[derive(Clone, Debug)]
pub struct Effect {
    pub outcome: String,
    pub basis: Vec<StateVector>,
}

/// A complete projective measurement: effects are mutually orthogonal and sum
/// to the identity.
#[derive(Clone, Debug)]
pub struct ProjectiveMeasurement {
    name: String,
    space: Space,
    effects: Vec<Effect>,
}

impl ProjectiveMeasurement {
    pub fn new(name: impl Into<String>, space: Space, effects: Vec<Effect>) -> Result<Self> {
        let name = name.into();
        let vectors: Vec<&StateVector> = effects.iter().flat_map(|e| &e.basis).collect();
        for v in &vectors {
            v.space().ensure_same(&space, "measurement effect")?;
        }
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate().skip(i) {
                let ip = u.inner(v)?;
                let want = if i == j { Amplitude::one() } else { Amplitude::zero() };
                if !ip.approx_eq(&want) {
                    return Err(Error::InvalidMeasurement(format!(
                        "{name}: effect vectors {i} and {j} are not orthonormal"
                    )));
                }
            }
        }
        if vectors.len() != space.dim() {
            return Err(Error::InvalidMeasurement(format!(
                "{name}: effects span {} of {} dimensions",
                vectors.len(),
                space.dim()
            )));
        }
        for (i, e) in effects.iter().enumerate() {
            if effects[..i].iter().any(|f| f.outcome == e.outcome) {
                return Err(Error::InvalidMeasurement(format!(
                    "{name}: outcome `{}` listed twice",
                    e.outcome
                )));
            }
        }
        Ok(Self {
            name,
            space,
            effects,
        })
    }

    /// Effects that project onto disjoint groups of modes.
    pub fn from_mode_partition(
        name: impl Into<String>,
        space: &Space,
        groups: &[(&str, Vec<ModeLabel>)],
    ) -> Result<Self> {
        let effects = groups
            .iter()
            .map(|(outcome, modes)| {
                Ok(Effect {
                    outcome: (*outcome).to_string(),
                    basis: modes
                        .iter()
                        .map(|m| StateVector::basis(space, m))
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Self::new(name, space.clone(), effects)
    }

    /// One rank-1 effect per vector.
    pub fn from_vectors(name: impl Into<String>, vectors: Vec<(String, StateVector)>) -> Result<Self> {
        let space = vectors
            .first()
            .map(|(_, v)| v.space().clone())
            .ok_or_else(|| Error::InvalidMeasurement("no effects".into()))?;
        let effects = vectors
            .into_iter()
            .map(|(outcome, v)| Effect {
                outcome,
                basis: vec![v],
            })
            .collect();
        Self::new(name, space, effects)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn effects(&self) -> &[Effect] {
        &self.effects
    }

    pub fn outcomes(&self) -> impl Iterator<Item = &str> {
        self.effects.iter().map(|e| e.outcome.as_str())
    }

    /// Heisenberg picture: the measurement `U† M U`, so that measuring it on
    /// `v` gives the same statistics as measuring `self` on `U v`.
    pub fn pulled_back(&self, u: &UnitaryOp) -> Result<Self> {
        let adj = u.adjoint();
        let effects = self
            .effects
            .iter()
            .map(|e| {
                Ok(Effect {
                    outcome: e.outcome.clone(),
                    basis: e.basis.iter().map(|b| adj.apply(b)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            name: format!("{}∘{}", self.name, u.name()),
            space: self.space.clone(),
            effects,
        })
    }
}

/// Outcome probabilities in the order of the measurement's effects.
#[derive(Clone, Debug)]
pub struct OutcomeDistribution {
    entries: Vec<(String, Real)>,
}

impl OutcomeDistribution {
    pub fn new(entries: Vec<(String, Real)>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[(String, Real)] {
        &self.entries
    }

    pub fn get(&self, outcome: &str) -> Option<&Real> {
        self.entries.iter().find(|(o, _)| o == outcome).map(|(_, p)| p)
    }

    pub fn total(&self) -> Real {
        self.entries.iter().fold(Real::zero(), |acc, (_, p)| &acc + p)
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(|(_, p)| p.is_exact())
    }

    /// Drop the listed outcomes.
    pub fn without(&self, outcome: &str) -> Self {
        Self {
            entries: self.entries.iter().filter(|(o, _)| o != outcome).cloned().collect(),
        }
    }

    /// All probabilities as rationals, when every entry is exactly rational.
    pub fn to_rationals(&self) -> Option<Vec<(String, num_rational::BigRational)>> {
        self.entries
            .iter()
            .map(|(o, p)| p.to_rational().map(|q| (o.clone(), q)))
            .collect()
    }
}

impl fmt::Display for OutcomeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (o, p)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "P({o})={p}")?;
        }
        Ok(())
    }
}

/// Born rule: `P(α) = Σₖ |⟨eₖ|v⟩|²` over the basis of effect `α`.
///
/// For a sub-normalized branch the probabilities sum to its squared norm.
pub fn born_probabilities(v: &StateVector, m: &ProjectiveMeasurement) -> Result<OutcomeDistribution> {
    v.space().ensure_same(m.space(), "born_probabilities")?;
    let entries = m
        .effects
        .iter()
        .map(|e| {
            let p = e.basis.iter().try_fold(Real::zero(), |acc, b| {
                Ok::<_, Error>(&acc + &b.inner(v)?.norm_sqr())
            })?;
            Ok((e.outcome.clone(), p))
        })
        .collect::<Result<_>>()?;
    Ok(OutcomeDistribution { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn incomplete_partition_rejected() {
        let s = Space::modes(3);
        let r = ProjectiveMeasurement::from_mode_partition(
            "M",
            &s,
            &[("a", vec![ModeLabel::Mode(0)]), ("b", vec![ModeLabel::Mode(1)])],
        );
        assert!(matches!(r, Err(Error::InvalidMeasurement(_))));
    }

    #[test]
    fn overlapping_partition_rejected() {
        let s = Space::modes(2);
        let r = ProjectiveMeasurement::from_mode_partition(
            "M",
            &s,
            &[("a", vec![ModeLabel::Mode(0)]), ("b", vec![ModeLabel::Mode(0)])],
        );
        assert!(r.is_err());
    }

    #[test]
    fn complete_measurement_sums_to_one() {
        let s = Space::modes(2);
        let h = Amplitude::sqrt_rational(&BigRational::new(1.into(), 2.into()));
        let v = StateVector::new(s.clone(), vec![h.clone(), h]).unwrap();
        let m = ProjectiveMeasurement::from_mode_partition(
            "Z",
            &s,
            &[("0", vec![ModeLabel::Mode(0)]), ("1", vec![ModeLabel::Mode(1)])],
        )
        .unwrap();
        let d = born_probabilities(&v, &m).unwrap();
        assert!(d.total().is_one());
        assert_eq!(
            d.get("0").unwrap().to_rational(),
            Some(BigRational::new(1.into(), 2.into()))
        );
    }
}
