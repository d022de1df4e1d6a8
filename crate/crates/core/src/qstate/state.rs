use std::fmt;

use super::amplitude::{Amplitude, Real};
use super::space::{ModeLabel, Space};
use crate::error::{Error, Result};

/// A pure state over a labeled space.
///
/// States produced by a preparation are normalized; branch states such as the
/// mode kept by a beam blocker are explicitly flagged as sub-normalized.
#[derive(Clone, Debug)]
pub struct StateVector {
    space: Space,
    amps: Vec<Amplitude>,
    subnormalized: bool,
}

impl StateVector {
    /// A normalized state. Fails if the squared norm is not 1.
    pub fn new(space: Space, amps: Vec<Amplitude>) -> Result<Self> {
        let v = Self::unchecked(space, amps, false)?;
        let n = v.norm_sqr();
        if !n.is_one() {
            return Err(Error::NotNormalized(n.to_string()));
        }
        Ok(v)
    }

    /// A branch state whose squared norm may be below 1.
    pub fn subnormalized(space: Space, amps: Vec<Amplitude>) -> Result<Self> {
        Self::unchecked(space, amps, true)
    }

    fn unchecked(space: Space, amps: Vec<Amplitude>, subnormalized: bool) -> Result<Self> {
        if amps.len() != space.dim() {
            return Err(Error::SpaceMismatch(format!(
                "{} amplitudes for a {}-mode space",
                amps.len(),
                space.dim()
            )));
        }
        Ok(Self {
            space,
            amps,
            subnormalized,
        })
    }

    pub fn basis(space: &Space, label: &ModeLabel) -> Result<Self> {
        let idx = space.index_of(label)?;
        let mut amps = vec![Amplitude::zero(); space.dim()];
        amps[idx] = Amplitude::one();
        Ok(Self {
            space: space.clone(),
            amps,
            subnormalized: false,
        })
    }

    /// Build from `(label, amplitude)` pairs; unlisted modes get zero.
    pub fn from_terms(space: &Space, terms: &[(ModeLabel, Amplitude)]) -> Result<Self> {
        let mut amps = vec![Amplitude::zero(); space.dim()];
        for (l, a) in terms {
            let i = space.index_of(l)?;
            amps[i] = &amps[i] + a;
        }
        Self::new(space.clone(), amps)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amplitude(&self, label: &ModeLabel) -> Result<&Amplitude> {
        Ok(&self.amps[self.space.index_of(label)?])
    }

    pub fn is_subnormalized(&self) -> bool {
        self.subnormalized
    }

    pub fn is_exact(&self) -> bool {
        self.amps.iter().all(Amplitude::is_exact)
    }

    pub fn norm_sqr(&self) -> Real {
        self.amps
            .iter()
            .fold(Real::zero(), |acc, a| &acc + &a.norm_sqr())
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &StateVector) -> Result<Amplitude> {
        self.space.ensure_same(&other.space, "inner product")?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(Amplitude::zero(), |acc, (u, v)| &acc + &(&u.conj() * v)))
    }

    /// Amplitudes are pairwise products, labels are pairs.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amps = Vec::with_capacity(self.amps.len() * other.amps.len());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        StateVector {
            space: self.space.tensor(&other.space),
            amps,
            subnormalized: self.subnormalized || other.subnormalized,
        }
    }

    /// Multiply by a scalar. The result is flagged sub-normalized.
    pub fn scale(&self, c: &Amplitude) -> StateVector {
        StateVector {
            space: self.space.clone(),
            amps: self.amps.iter().map(|a| a * c).collect(),
            subnormalized: true,
        }
    }

    /// Keep only the listed modes (a projective branch), flagging the result
    /// sub-normalized.
    pub fn project_onto(&self, modes: &[ModeLabel]) -> Result<StateVector> {
        let keep: Vec<usize> = modes
            .iter()
            .map(|m| self.space.index_of(m))
            .collect::<Result<_>>()?;
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, a)| if keep.contains(&i) { a.clone() } else { Amplitude::zero() })
            .collect();
        Ok(StateVector {
            space: self.space.clone(),
            amps,
            subnormalized: true,
        })
    }

    pub(crate) fn with_amplitudes(&self, amps: Vec<Amplitude>) -> StateVector {
        StateVector {
            space: self.space.clone(),
            amps,
            subnormalized: self.subnormalized,
        }
    }

    /// Equality up to a global phase: `|⟨u|v⟩|² = ⟨u|u⟩⟨v|v⟩` with equal norms.
    pub fn equals_up_to_phase(&self, other: &StateVector) -> Result<bool> {
        let ip = self.inner(other)?;
        let nu = self.norm_sqr();
        let nv = other.norm_sqr();
        Ok(nu.approx_eq(&nv) && ip.norm_sqr().approx_eq(&(&nu * &nv)))
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (l, a) in self.space.labels().iter().zip(&self.amps) {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "[{a}]|{l}⟩")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn plus() -> StateVector {
        let h = Amplitude::sqrt_rational(&q(1, 2));
        StateVector::new(Space::modes(2), vec![h.clone(), h]).unwrap()
    }

    #[test]
    fn normalized_self_overlap_is_one() {
        let p = plus();
        let ip = p.inner(&p).unwrap();
        assert!(ip.approx_eq(&Amplitude::one()));
    }

    #[test]
    fn rejects_unnormalized() {
        let r = StateVector::new(Space::modes(2), vec![Amplitude::one(), Amplitude::one()]);
        assert!(matches!(r, Err(Error::NotNormalized(_))));
    }

    #[test]
    fn mismatch_is_error() {
        let a = StateVector::basis(&Space::modes(2), &ModeLabel::Mode(0)).unwrap();
        let b = StateVector::basis(&Space::modes(3), &ModeLabel::Mode(0)).unwrap();
        assert!(matches!(a.inner(&b), Err(Error::SpaceMismatch(_))));
    }

    #[test]
    fn tensor_basis_and_plus() {
        let s = Space::modes(2);
        let zero = StateVector::basis(&s, &ModeLabel::Mode(0)).unwrap();
        let zz = zero.tensor(&zero);
        let l = ModeLabel::pair(ModeLabel::Mode(0), ModeLabel::Mode(0));
        assert!(zz.amplitude(&l).unwrap().approx_eq(&Amplitude::one()));
        assert!(zz.norm_sqr().is_one());

        let zp = zero.tensor(&plus());
        let h = Amplitude::sqrt_rational(&q(1, 2));
        let expected = [h.clone(), h, Amplitude::zero(), Amplitude::zero()];
        for (got, want) in zp.amplitudes().iter().zip(&expected) {
            assert!(got.approx_eq(want));
        }
    }

    #[test]
    fn global_phase_ignored() {
        let p = plus();
        let m = p.scale(&Amplitude::i());
        assert!(p.equals_up_to_phase(&m).unwrap());
        let zero = StateVector::basis(&Space::modes(2), &ModeLabel::Mode(0)).unwrap();
        assert!(!p.equals_up_to_phase(&zero).unwrap());
    }
}
