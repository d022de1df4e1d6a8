//! The half Mach–Zehnder device with a preparation-stage beam blocker.
//!
//! Modes `0` and `1` are the two arms after the first splitter, `2` is the
//! port reflected out of arm 1 by the second splitter, and `3`, `4` are the
//! outputs of the final 50/50 splitter. The measured outcome `∅` means no
//! detector fired (the particle was stopped by the blocker).
//!
//! Port labels follow the convention where `χ = 0` sends the interfering
//! amplitude to port 3: `P(3) = a²(1 + cos χ)`, `P(4) = a²(1 − cos χ)`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ontology::{joint_outcome, Distribution, Fragment};
use crate::qstate::{
    born_probabilities, Amplitude, ModeLabel, OutcomeDistribution, Phase, ProjectiveMeasurement,
    Real, Space, StateVector, UnitaryOp,
};
use crate::rational::format_rational;

pub const PSI_IN: &str = "psi_in";
pub const PSI_PLUS: &str = "psi_plus";
pub const PSI_0: &str = "psi_0";

pub const YES: &str = "Yes";
pub const NO: &str = "No";
pub const NO_DETECTION: &str = "∅";

/// Detector outcomes of the final stage, in report order.
pub const PORTS: [&str; 3] = ["3", "4", "2"];
/// Second-stage outcomes including `∅`.
pub const PORTS_WITH_NONE: [&str; 4] = ["3", "4", "2", NO_DETECTION];

/// One stage of an experiment.
#[derive(Clone, Debug, PartialEq)]
pub enum Stage {
    /// Pass through the first splitter, no blocker.
    M0,
    /// Pass through the first splitter and meet the blocker (`Yes` = kept).
    M1,
    /// Phase plate `χ`, then both remaining splitters and the detectors.
    M2(Phase),
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stage::M0 => write!(f, "M0"),
            Stage::M1 => write!(f, "M1"),
            Stage::M2(chi) => write!(f, "M2[{chi}]"),
        }
    }
}

/// A single stage, or a preparation stage followed by `M2`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentId {
    first: Stage,
    second: Option<Stage>,
}

impl ExperimentId {
    pub fn single(stage: Stage) -> Self {
        Self {
            first: stage,
            second: None,
        }
    }

    /// `first` then `second`; only `M0` or `M1` followed by `M2` is valid.
    pub fn sequence(first: Stage, second: Stage) -> Result<Self> {
        match (&first, &second) {
            (Stage::M0 | Stage::M1, Stage::M2(_)) => Ok(Self {
                first,
                second: Some(second),
            }),
            _ => Err(Error::Precondition(format!(
                "{second} cannot follow {first}: M2 must follow M0 or M1"
            ))),
        }
    }

    pub fn m1() -> Self {
        Self::single(Stage::M1)
    }

    pub fn m2(chi: Phase) -> Self {
        Self::single(Stage::M2(chi))
    }

    pub fn m0_m2(chi: Phase) -> Self {
        Self {
            first: Stage::M0,
            second: Some(Stage::M2(chi)),
        }
    }

    pub fn m1_m2(chi: Phase) -> Self {
        Self {
            first: Stage::M1,
            second: Some(Stage::M2(chi)),
        }
    }

    pub fn first(&self) -> &Stage {
        &self.first
    }

    pub fn second(&self) -> Option<&Stage> {
        self.second.as_ref()
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.second {
            Some(s) => write!(f, "{},{}", self.first, s),
            None => write!(f, "{}", self.first),
        }
    }
}

/// Device parameters. `a² + b² = 1` and `b ≥ a`, so `T = a/b ∈ (0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct CircuitConfig {
    a2: BigRational,
    pub chi: Phase,
    pub blocker: bool,
}

impl CircuitConfig {
    pub fn new(a2: BigRational, chi: Phase, blocker: bool) -> Result<Self> {
        if !a2.is_positive() || a2 > BigRational::one() {
            return Err(Error::HypothesisOutOfRange(format_rational(&a2)));
        }
        if a2 > half() {
            return Err(Error::InvalidTransmission(format_rational(&a2)));
        }
        Ok(Self { a2, chi, blocker })
    }

    pub fn a2(&self) -> &BigRational {
        &self.a2
    }

    pub fn b2(&self) -> BigRational {
        BigRational::one() - &self.a2
    }

    /// `T² = a²/b²`.
    pub fn transmission_sqr(&self) -> BigRational {
        &self.a2 / self.b2()
    }

    pub fn with_chi(&self, chi: Phase) -> Self {
        Self {
            chi,
            ..self.clone()
        }
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Modes `0..=4`.
pub fn device_space() -> Space {
    Space::modes(5)
}

fn mode(n: u8) -> ModeLabel {
    ModeLabel::Mode(n)
}

fn permutation_like(name: &str, entries: &[(usize, usize, Amplitude)]) -> Result<UnitaryOp> {
    let space = device_space();
    let n = space.dim();
    let mut m = vec![vec![Amplitude::zero(); n]; n];
    for (i, j, a) in entries {
        m[*i][*j] = a.clone();
    }
    UnitaryOp::new(name, space, m)
}

/// `|1⟩ → e^{iχ}|1⟩`.
pub fn phase_plate(chi: &Phase) -> Result<UnitaryOp> {
    let one = Amplitude::one();
    permutation_like(
        &format!("phase[{chi}]"),
        &[
            (0, 0, one.clone()),
            (1, 1, chi.unit()),
            (2, 2, one.clone()),
            (3, 3, one.clone()),
            (4, 4, one),
        ],
    )
}

/// `|1⟩ → T|1⟩ − R|2⟩`, `|2⟩ → R|1⟩ + T|2⟩`, with `R = √(1 − T²)`.
pub fn beam_splitter_1(transmission_sqr: &BigRational) -> Result<UnitaryOp> {
    if transmission_sqr.is_negative() || *transmission_sqr > BigRational::one() {
        return Err(Error::InvalidTransmission(format_rational(transmission_sqr)));
    }
    let t = Amplitude::sqrt_rational(transmission_sqr);
    let r = Amplitude::sqrt_rational(&(BigRational::one() - transmission_sqr));
    let one = Amplitude::one();
    permutation_like(
        "BS1",
        &[
            (0, 0, one.clone()),
            (1, 1, t.clone()),
            (2, 1, -&r),
            (1, 2, r),
            (2, 2, t),
            (3, 3, one.clone()),
            (4, 4, one),
        ],
    )
}

/// 50/50 splitter taking arms `0, 1` to ports `3, 4`:
/// `|0⟩ → (|3⟩ + |4⟩)/√2`, `|1⟩ → (|3⟩ − |4⟩)/√2`, completed to a unitary on
/// the five modes.
pub fn beam_splitter_2() -> Result<UnitaryOp> {
    let h = Amplitude::sqrt_rational(&half());
    let mh = -&h;
    permutation_like(
        "BS2",
        &[
            (3, 0, h.clone()),
            (4, 0, h.clone()),
            (3, 1, h.clone()),
            (4, 1, mh.clone()),
            (0, 3, h.clone()),
            (1, 3, h.clone()),
            (0, 4, h),
            (1, 4, mh),
            (2, 2, Amplitude::one()),
        ],
    )
}

/// `[phase(χ), BS₁(T = a/b), BS₂]` in application order.
pub fn build_device(cfg: &CircuitConfig) -> Result<Vec<UnitaryOp>> {
    Ok(vec![
        phase_plate(&cfg.chi)?,
        beam_splitter_1(&cfg.transmission_sqr())?,
        beam_splitter_2()?,
    ])
}

/// The whole device as one unitary.
pub fn compose_device(cfg: &CircuitConfig) -> Result<UnitaryOp> {
    let ops = build_device(cfg)?;
    let mut u = UnitaryOp::identity(&device_space());
    for op in &ops {
        u = u.then(op)?;
    }
    Ok(u)
}

/// Output of the preparation stage.
#[derive(Clone, Debug)]
pub enum Preparation {
    /// `|Ψ₊⟩ = a|0⟩ + b|1⟩`.
    Superposition(StateVector),
    /// Blocker in place: the kept branch `a|0⟩` (sub-normalized) plus the
    /// weight `b²` of the absorbed remainder.
    Blocked {
        kept: StateVector,
        rest_weight: BigRational,
    },
}

impl Preparation {
    pub fn state(&self) -> &StateVector {
        match self {
            Preparation::Superposition(s) => s,
            Preparation::Blocked { kept, .. } => kept,
        }
    }
}

/// `|Ψ₊⟩` for any split `0 < a² ≤ 1`.
pub fn psi_plus(a2: &BigRational) -> Result<StateVector> {
    split_state(a2, false)
}

/// `|Ψ₋⟩ = a|0⟩ − b|1⟩`.
pub fn psi_minus(a2: &BigRational) -> Result<StateVector> {
    split_state(a2, true)
}

fn split_state(a2: &BigRational, minus: bool) -> Result<StateVector> {
    if !a2.is_positive() || *a2 > BigRational::one() {
        return Err(Error::HypothesisOutOfRange(format_rational(a2)));
    }
    let a = Amplitude::sqrt_rational(a2);
    let b = Amplitude::sqrt_rational(&(BigRational::one() - a2));
    let b = if minus { -b } else { b };
    StateVector::from_terms(&device_space(), &[(mode(0), a), (mode(1), b)])
}

/// `|Ψ₀⟩ = |0⟩`.
pub fn psi_0() -> StateVector {
    StateVector::basis(&device_space(), &mode(0)).expect("mode 0 is in the device space")
}

/// Preparation for any split `0 < a² ≤ 1`; at `a² = 1` the blocker removes nothing.
pub fn prepare_split(a2: &BigRational, blocker: bool) -> Result<Preparation> {
    let plus = psi_plus(a2)?;
    if !blocker {
        return Ok(Preparation::Superposition(plus));
    }
    let kept = plus.project_onto(&[mode(0)])?;
    let rest_weight = BigRational::one() - a2;
    Ok(Preparation::Blocked { kept, rest_weight })
}

pub fn prepare(cfg: &CircuitConfig) -> Result<Preparation> {
    prepare_split(&cfg.a2, cfg.blocker)
}

/// The detector stage: ports 3, 4, 2, and `∅` for the arms left empty.
pub fn m2_measurement() -> ProjectiveMeasurement {
    ProjectiveMeasurement::from_mode_partition(
        "M2",
        &device_space(),
        &[
            ("3", vec![mode(3)]),
            ("4", vec![mode(4)]),
            ("2", vec![mode(2)]),
            (NO_DETECTION, vec![mode(0), mode(1)]),
        ],
    )
    .expect("partition of the device modes")
}

/// The blocker as a projective which-path record on arm 0.
pub fn m1_measurement() -> ProjectiveMeasurement {
    ProjectiveMeasurement::from_mode_partition(
        "M1",
        &device_space(),
        &[
            (YES, vec![mode(0)]),
            (NO, vec![mode(1), mode(2), mode(3), mode(4)]),
        ],
    )
    .expect("partition of the device modes")
}

fn through_device(state: &StateVector, cfg: &CircuitConfig) -> Result<OutcomeDistribution> {
    let u = compose_device(cfg)?;
    let out = u.apply(state)?;
    born_probabilities(&out, &m2_measurement())
}

fn drop_no_detection(d: OutcomeDistribution) -> Result<OutcomeDistribution> {
    match d.get(NO_DETECTION) {
        Some(p) if p.is_zero() => Ok(d.without(NO_DETECTION)),
        Some(p) => Err(Error::Internal(format!("unblocked run left weight {p} in the arms"))),
        None => Ok(d),
    }
}

/// `|Ψ₊⟩` through the device at phase `cfg.chi`: distribution over ports 3, 4, 2.
pub fn run_m0_m2(cfg: &CircuitConfig) -> Result<OutcomeDistribution> {
    let plus = psi_plus(&cfg.a2)?;
    drop_no_detection(through_device(&plus, cfg)?)
}

/// `|Ψ₀⟩ = |0⟩` through the device: `(1/2, 1/2)` on ports 3, 4 for every χ.
pub fn run_psi0_full(cfg: &CircuitConfig) -> Result<OutcomeDistribution> {
    drop_no_detection(through_device(&psi_0(), cfg)?)
}

/// Joint distribution of `(β, α)`: blocker record α, then detector β.
#[derive(Clone, Debug)]
pub struct JointDistribution {
    entries: Vec<((String, String), Real)>,
}

impl JointDistribution {
    pub fn entries(&self) -> &[((String, String), Real)] {
        &self.entries
    }

    pub fn get(&self, beta: &str, alpha: &str) -> Option<&Real> {
        self.entries
            .iter()
            .find(|((b, a), _)| b == beta && a == alpha)
            .map(|(_, p)| p)
    }

    /// `Σ_β P(β, α)`.
    pub fn marginal_alpha(&self, alpha: &str) -> Real {
        self.entries
            .iter()
            .filter(|((_, a), _)| a == alpha)
            .fold(Real::zero(), |acc, (_, p)| &acc + p)
    }

    /// `Σ_α P(β, α)`.
    pub fn marginal_beta(&self, beta: &str) -> Real {
        self.entries
            .iter()
            .filter(|((b, _), _)| b == beta)
            .fold(Real::zero(), |acc, (_, p)| &acc + p)
    }

    pub fn total(&self) -> Real {
        self.entries.iter().fold(Real::zero(), |acc, (_, p)| &acc + p)
    }

    /// Flatten to outcome labels `"β,α"`.
    pub fn flattened(&self) -> OutcomeDistribution {
        OutcomeDistribution::new(
            self.entries
                .iter()
                .map(|((b, a), p)| (joint_outcome(b, a), p.clone()))
                .collect(),
        )
    }
}

/// Blocker stage `M1` followed by `M2[χ]`.
///
/// `α = Yes` keeps the arm-0 branch, which then runs through the device;
/// `α = No` means the particle was stopped, recorded as `β = ∅`.
pub fn run_m1_m2(cfg: &CircuitConfig) -> Result<JointDistribution> {
    let plus = psi_plus(&cfg.a2)?;
    let m1 = m1_measurement();
    let yes_modes = &m1.effects()[0];
    debug_assert_eq!(yes_modes.outcome, YES);
    let kept = plus.project_onto(&[mode(0)])?;
    let stopped = born_probabilities(&plus, &m1)?
        .get(NO)
        .cloned()
        .expect("M1 has a No outcome");
    let after_yes = through_device(&kept, cfg)?;

    let mut entries = Vec::with_capacity(8);
    for beta in PORTS_WITH_NONE {
        let p = after_yes.get(beta).cloned().unwrap_or_else(Real::zero);
        entries.push(((beta.to_string(), YES.to_string()), p));
    }
    for beta in PORTS_WITH_NONE {
        let p = if beta == NO_DETECTION {
            stopped.clone()
        } else {
            Real::zero()
        };
        entries.push(((beta.to_string(), NO.to_string()), p));
    }
    Ok(JointDistribution { entries })
}

/// The blocker stage alone.
pub fn run_m1(cfg: &CircuitConfig) -> Result<OutcomeDistribution> {
    born_probabilities(&psi_plus(&cfg.a2)?, &m1_measurement())
}

fn exact(d: &OutcomeDistribution, what: &str) -> Result<Distribution> {
    d.to_rationals()
        .map(Distribution::new)
        .ok_or_else(|| Error::NotExact(format!("{what}: {d}")))
}

/// The quantum predictions used by the no-go checks, at `χ ∈ {0, π}`.
///
/// * `psi_plus`, `psi_0`: contexts `M2[0]`, `M2[pi]` (prepared directly).
/// * `psi_in`: `M1`, `M1,M2[χ]`, `M0,M2[χ]` (the preparation stage included).
///
/// Every value is computed by the simulator in exact arithmetic; the call
/// fails if `a²` is not exactly representable.
pub fn hardy_fragment(a2: &BigRational) -> Result<Fragment> {
    let base = CircuitConfig::new(a2.clone(), Phase::zero(), false)?;
    let chis = [Phase::zero(), Phase::pi()];
    let mut frag = Fragment::default();
    for chi in &chis {
        let cfg = base.with_chi(chi.clone());
        let ctx = ExperimentId::m2(chi.clone()).to_string();
        frag.push(PSI_PLUS, &ctx, exact(&run_m0_m2(&cfg)?, &ctx)?);
    }
    for chi in &chis {
        let cfg = base.with_chi(chi.clone());
        let ctx = ExperimentId::m2(chi.clone()).to_string();
        frag.push(PSI_0, &ctx, exact(&run_psi0_full(&cfg)?, &ctx)?);
    }
    frag.push(PSI_IN, &ExperimentId::m1().to_string(), exact(&run_m1(&base)?, "M1")?);
    for chi in &chis {
        let cfg = base.with_chi(chi.clone());
        let ctx = ExperimentId::m1_m2(chi.clone()).to_string();
        frag.push(PSI_IN, &ctx, exact(&run_m1_m2(&cfg)?.flattened(), &ctx)?);
    }
    for chi in &chis {
        let cfg = base.with_chi(chi.clone());
        let ctx = ExperimentId::m0_m2(chi.clone()).to_string();
        frag.push(PSI_IN, &ctx, exact(&run_m0_m2(&cfg)?, &ctx)?);
    }
    Ok(frag)
}

/// Which of the fragment's probabilities vanish: `(preparation, context, outcome)`.
pub fn zero_outcomes(fragment: &Fragment) -> Vec<(String, String, String)> {
    fragment
        .entries()
        .iter()
        .flat_map(|e| {
            e.distribution
                .entries()
                .iter()
                .filter(|(_, p)| p.is_zero())
                .map(move |(o, _)| (e.preparation.clone(), e.context.clone(), o.clone()))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn cfg(a2: BigRational, chi: Phase) -> CircuitConfig {
        CircuitConfig::new(a2, chi, false).unwrap()
    }

    #[test]
    fn out_of_range_configs() {
        assert!(matches!(
            CircuitConfig::new(rat(3, 5), Phase::zero(), false),
            Err(Error::InvalidTransmission(_))
        ));
        assert!(matches!(
            CircuitConfig::new(rat(0, 1), Phase::zero(), false),
            Err(Error::HypothesisOutOfRange(_))
        ));
        assert!(matches!(
            CircuitConfig::new(rat(3, 2), Phase::zero(), false),
            Err(Error::HypothesisOutOfRange(_))
        ));
    }

    #[test]
    fn sequence_rules() {
        assert!(ExperimentId::sequence(Stage::M1, Stage::M2(Phase::pi())).is_ok());
        assert!(ExperimentId::sequence(Stage::M2(Phase::pi()), Stage::M1).is_err());
        assert!(ExperimentId::sequence(Stage::M0, Stage::M1).is_err());
        assert_eq!(ExperimentId::m1_m2(Phase::pi()).to_string(), "M1,M2[pi]");
    }

    #[test]
    fn uniform_split_gives_balanced_bs1() {
        let c = cfg(rat(1, 3), Phase::zero());
        let bs1 = &build_device(&c).unwrap()[1];
        let h = Amplitude::sqrt_rational(&rat(1, 2));
        assert!(bs1.entry(1, 1).approx_eq(&h));
        assert!(bs1.entry(2, 1).approx_eq(&-&h));
    }

    #[test]
    fn zero_phase_plate_is_identity() {
        let p = phase_plate(&Phase::zero()).unwrap();
        let id = UnitaryOp::identity(&device_space());
        for i in 0..5 {
            for j in 0..5 {
                assert!(p.entry(i, j).approx_eq(id.entry(i, j)));
            }
        }
    }

    #[test]
    fn a_equal_one_blocker_is_inert() {
        let one = BigRational::one();
        let free = prepare_split(&one, false).unwrap();
        let Preparation::Blocked { kept, rest_weight } = prepare_split(&one, true).unwrap() else {
            panic!("blocked preparation expected");
        };
        assert!(rest_weight.is_zero());
        assert!(kept.equals_up_to_phase(free.state()).unwrap());
        assert!(free.state().equals_up_to_phase(&psi_0()).unwrap());
    }

    #[test]
    fn fragment_zeros() {
        let f = hardy_fragment(&rat(1, 3)).unwrap();
        let zeros = zero_outcomes(&f);
        assert!(zeros.contains(&(PSI_IN.into(), "M0,M2[0]".into(), "4".into())));
        assert!(zeros.contains(&(PSI_IN.into(), "M0,M2[pi]".into(), "3".into())));
        assert!(zeros.contains(&(PSI_0.into(), "M2[0]".into(), "2".into())));
    }
}
