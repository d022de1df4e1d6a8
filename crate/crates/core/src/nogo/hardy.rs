//! Feasibility programs for the interferometer no-go arguments.
//!
//! Variables are weights on deterministic assignments (one outcome per
//! context). Any stochastic response table is a mixture of deterministic ones,
//! and the ontic-indifference ties pair outcomes of contexts along a tree
//! (`M1` – blocked runs – unblocked runs), so tied stochastic responses can be
//! coupled into deterministic assignments that satisfy the ties pointwise. The
//! ties therefore become "zero weight on violating assignments".

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::lp::{solve, ConstraintSystem, Objective, Relation, Row, Sense, Status};
use super::oracle::{enumerate_oracle, possible_support};
use super::report::{
    witness_entries, CertificateSummary, OracleCheck, Parameters, Relaxation, ReportStatus, TheoremId,
    TheoremReport, TraceStep,
};
use crate::error::{Error, Result};
use crate::interferometer::{
    hardy_fragment, ExperimentId, NO, NO_DETECTION, PORTS, PORTS_WITH_NONE, PSI_0, PSI_IN, PSI_PLUS, YES,
};
use crate::ontology::{
    joint_outcome, reproduces, support_overlap, AssumptionSet, EpistemicState, Fragment, ModelDocument,
    OnticSpace, OntologicalModel, ResponseTable,
};
use crate::qstate::Phase;
use crate::rational::format_rational;

/// One outcome per context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DeterministicAssignment {
    outcomes: Vec<(String, String)>,
}

impl DeterministicAssignment {
    pub fn new(outcomes: Vec<(String, String)>) -> Self {
        Self { outcomes }
    }

    pub fn outcome(&self, context: &str) -> Option<&str> {
        self.outcomes
            .iter()
            .find(|(c, _)| c == context)
            .map(|(_, o)| o.as_str())
    }

    pub fn outcomes(&self) -> &[(String, String)] {
        &self.outcomes
    }

    /// Outcomes in context order, `|`-separated.
    pub fn label(&self) -> String {
        self.outcomes
            .iter()
            .map(|(_, o)| o.as_str())
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

pub(crate) fn check_range(a2: &BigRational) -> Result<()> {
    if !a2.is_positive() || *a2 > BigRational::new(1.into(), 2.into()) {
        return Err(Error::HypothesisOutOfRange(format_rational(a2)));
    }
    Ok(())
}

fn phases() -> [Phase; 2] {
    [Phase::zero(), Phase::pi()]
}

fn ctx_m1() -> String {
    ExperimentId::m1().to_string()
}

fn ctx_blocked(i: usize) -> String {
    ExperimentId::m1_m2(phases()[i].clone()).to_string()
}

fn ctx_unblocked(i: usize) -> String {
    ExperimentId::m0_m2(phases()[i].clone()).to_string()
}

fn ctx_direct(i: usize) -> String {
    ExperimentId::m2(phases()[i].clone()).to_string()
}

/// Born rows `Σ_{a : a(ctx) = o} w_a = P(o)` for every outcome of every
/// context of `preparation` in the fragment.
fn born_rows(
    cs: &mut ConstraintSystem,
    fragment: &Fragment,
    preparation: &str,
    contexts: &[String],
    offset: usize,
    outcome_of: impl Fn(usize, &str) -> String,
    count: usize,
) -> Result<()> {
    for ctx in contexts {
        let dist = fragment
            .get(preparation, ctx)
            .ok_or_else(|| Error::FragmentMismatch(format!("no statistics for {preparation} in {ctx}")))?;
        for (o, p) in dist.entries() {
            let vars = (0..count).filter(|&k| outcome_of(k, ctx) == *o).map(|k| offset + k);
            cs.push(Row::sum(vars, Relation::Eq, p.clone(), format!("born:{preparation}:{ctx}:{o}")));
        }
    }
    cs.push(Row::sum(
        offset..offset + count,
        Relation::Eq,
        BigRational::one(),
        format!("normalization:{preparation}"),
    ));
    Ok(())
}

fn prob(fragment: &Fragment, prep: &str, ctx: &str, outcome: &str) -> BigRational {
    fragment.get(prep, ctx).map(|d| d.prob(outcome)).unwrap_or_else(BigRational::zero)
}

fn status_name(s: Status) -> ReportStatus {
    s.into()
}

// ---------------------------------------------------------------------------
// Preparation-stage argument: blocker, then the interferometer.

/// Which ontic-indifference ties the preparation-stage program imposes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Hroi2Options {
    /// Blocked responses do not depend on χ.
    pub chi_tie: bool,
    /// Blocked port-3/4 responses equal the unblocked ones at the same χ.
    pub cross_ties: bool,
    /// Auxiliary: blocked port-2 response equals the unblocked one.
    pub port2_tie: bool,
}

impl Hroi2Options {
    pub fn full() -> Self {
        Self {
            chi_tie: true,
            cross_ties: true,
            port2_tie: false,
        }
    }

    /// Ties that survive when responses may follow the wavefunction: the
    /// blocker changes the wave, so only the χ tie within blocked runs remains.
    pub fn for_relaxations(relax: &[Relaxation]) -> Self {
        if relax.contains(&Relaxation::Roi) {
            Self {
                chi_tie: false,
                cross_ties: false,
                port2_tie: false,
            }
        } else if relax.contains(&Relaxation::PsiAnomic) {
            Self {
                chi_tie: true,
                cross_ties: false,
                port2_tie: false,
            }
        } else {
            Self::full()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct StageAssignment {
    alpha: &'static str,
    /// Detector reading after the blocker, at χ = 0 and χ = π.
    beta: [&'static str; 2],
    /// Detector reading without the blocker.
    gamma: [&'static str; 2],
}

impl StageAssignment {
    fn all() -> Vec<Self> {
        let mut out = Vec::with_capacity(288);
        for alpha in [YES, NO] {
            for b0 in PORTS_WITH_NONE {
                for bpi in PORTS_WITH_NONE {
                    for g0 in PORTS {
                        for gpi in PORTS {
                            out.push(Self {
                                alpha,
                                beta: [b0, bpi],
                                gamma: [g0, gpi],
                            });
                        }
                    }
                }
            }
        }
        out
    }

    fn outcome(&self, ctx: &str) -> String {
        if ctx == ctx_m1() {
            return self.alpha.to_string();
        }
        for i in 0..2 {
            if ctx == ctx_blocked(i) {
                return joint_outcome(self.beta[i], self.alpha);
            }
            if ctx == ctx_unblocked(i) {
                return self.gamma[i].to_string();
            }
        }
        unreachable!("unknown context {ctx}")
    }

    fn blocked_on(&self, i: usize, port: &str) -> bool {
        self.alpha == YES && self.beta[i] == port
    }

    fn chi_tie_ok(&self) -> bool {
        self.beta[0] == self.beta[1]
    }

    fn port_tie_ok(&self, i: usize, port: &str) -> bool {
        self.blocked_on(i, port) == (self.gamma[i] == port)
    }

    fn to_deterministic(self, contexts: &[String]) -> DeterministicAssignment {
        DeterministicAssignment::new(contexts.iter().map(|c| (c.clone(), self.outcome(c))).collect())
    }
}

/// The compiled preparation-stage program and what it was built from.
#[derive(Clone, Debug)]
pub struct Hroi2Program {
    pub a2: BigRational,
    pub options: Hroi2Options,
    pub contexts: Vec<String>,
    /// Quantum statistics of `psi_in`.
    pub fragment: Fragment,
    pub assignments: Vec<DeterministicAssignment>,
    pub system: ConstraintSystem,
    raw: Vec<StageAssignment>,
}

impl Hroi2Program {
    pub fn compile(a2: &BigRational, options: Hroi2Options) -> Result<Self> {
        check_range(a2)?;
        let fragment = hardy_fragment(a2)?.restricted_to(&[PSI_IN]);
        let contexts = vec![ctx_m1(), ctx_blocked(0), ctx_blocked(1), ctx_unblocked(0), ctx_unblocked(1)];
        let raw = StageAssignment::all();
        let assignments: Vec<_> = raw.iter().map(|a| a.to_deterministic(&contexts)).collect();
        let mut cs = ConstraintSystem::new(assignments.iter().map(|a| a.label()).collect());
        born_rows(
            &mut cs,
            &fragment,
            PSI_IN,
            &contexts,
            0,
            |k, ctx| raw[k].outcome(ctx),
            raw.len(),
        )?;

        let mut tie = |name: String, ok: &dyn Fn(&StageAssignment) -> bool| {
            let bad = (0..raw.len()).filter(|&k| !ok(&raw[k]));
            cs.push(Row::sum(bad, Relation::Eq, BigRational::zero(), name));
        };
        if options.chi_tie {
            tie("tie:blocked-chi".into(), &|a| a.chi_tie_ok());
        }
        let mut ports = Vec::new();
        if options.cross_ties {
            ports.extend(["4", "3"]);
        }
        if options.port2_tie {
            ports.push("2");
        }
        for port in ports {
            for (i, chi) in phases().iter().enumerate() {
                tie(format!("tie:blocked-port{port}[chi={chi}]"), &|a| a.port_tie_ok(i, port));
            }
        }

        Ok(Self {
            a2: a2.clone(),
            options,
            contexts,
            fragment,
            assignments,
            system: cs,
            raw,
        })
    }

    /// The model whose ontic states are the assignments carrying weight.
    ///
    /// With `psi_anomic = false` the unblocked tables are indexed by the
    /// prepared wavefunction, since the blocked and unblocked runs are guided by
    /// different waves.
    pub fn witness_model(&self, weights: &[BigRational], psi_anomic: bool) -> Result<OntologicalModel> {
        let support: Vec<usize> = (0..weights.len()).filter(|&k| weights[k].is_positive()).collect();
        let space = OnticSpace::new(support.iter().map(|&k| self.assignments[k].label()).collect())?;
        let epistemic = EpistemicState::new(PSI_IN, support.iter().map(|&k| weights[k].clone()).collect());
        let mut responses = Vec::new();
        for ctx in &self.contexts {
            let outcomes: Vec<String> = self
                .fragment
                .get(PSI_IN, ctx)
                .expect("compiled context")
                .outcomes()
                .map(String::from)
                .collect();
            let entries = support
                .iter()
                .map(|&k| {
                    let o = self.raw[k].outcome(ctx);
                    outcomes
                        .iter()
                        .map(|x| if *x == o { BigRational::one() } else { BigRational::zero() })
                        .collect()
                })
                .collect();
            let indexed = !psi_anomic && ctx.starts_with("M0");
            responses.push(ResponseTable {
                context: ctx.clone(),
                preparation: indexed.then(|| PSI_IN.to_string()),
                outcomes,
                entries,
            });
        }
        let flags = AssumptionSet {
            psi_anomic,
            pip: true,
            pip_ps: false,
            roi: self.options.chi_tie,
        };
        OntologicalModel::new(space, vec![epistemic], responses, flags)
    }

    /// Assignments with a positive quantum probability in every context.
    fn born_compatible(&self) -> Vec<StageAssignment> {
        self.raw
            .iter()
            .filter(|a| {
                self.contexts
                    .iter()
                    .all(|c| prob(&self.fragment, PSI_IN, c, &a.outcome(c)).is_positive())
            })
            .copied()
            .collect()
    }
}

/// The preparation-stage program with every tie (see [`Hroi2Program`]).
pub fn compile_hroi2(a2: &BigRational) -> Result<ConstraintSystem> {
    Ok(Hroi2Program::compile(a2, Hroi2Options::full())?.system)
}

pub fn check_hroi2(a2: &BigRational) -> Result<TheoremReport> {
    check_hroi2_with(a2, &[])
}

/// Compile, solve, cross-check with the enumeration oracle and explain.
///
/// Expected: infeasible with all hypotheses; feasible once ψ-anomic responses
/// or the ties are dropped.
pub fn check_hroi2_with(a2: &BigRational, relax: &[Relaxation]) -> Result<TheoremReport> {
    let program = Hroi2Program::compile(a2, Hroi2Options::for_relaxations(relax))?;
    let cs = &program.system;
    let result = solve(cs)?;
    let oracle = enumerate_oracle(cs)?;
    if oracle.status != result.status {
        return Err(Error::Internal(format!(
            "simplex says {:?}, enumeration says {:?}",
            result.status, oracle.status
        )));
    }

    let expected = if relax.is_empty() {
        ReportStatus::Infeasible
    } else {
        ReportStatus::Feasible
    };
    let mut report = TheoremReport {
        theorem: TheoremId::Hroi2,
        parameters: Parameters {
            a2: Some(format_rational(a2)),
            chi: phases().iter().map(|p| p.to_string()).collect(),
            relaxed: relax.to_vec(),
        },
        status: status_name(result.status),
        expected_status: expected,
        max_overlap: None,
        certificate: result.certificate.as_ref().map(|c| CertificateSummary::new(cs, c)),
        witness: result.witness.as_ref().map(|x| witness_entries(cs, x)),
        witness_reproduces: None,
        oracle: Some(OracleCheck {
            method: "basic-solution enumeration".into(),
            status: status_name(oracle.status),
            agrees: true,
        }),
        trace: hroi2_trace(&program, result.status),
        notes: vec![
            "ports follow the convention where chi = 0 sends the interfering amplitude to port 3".into(),
            "the port-3 tie compares the blocked run with the unblocked (M0) run at the same phase".into(),
        ],
        witness_model: None,
    };
    if relax.contains(&Relaxation::PsiAnomic) && !relax.contains(&Relaxation::Roi) {
        report.notes.push(
            "with wave-dependent responses the blocked/unblocked ties no longer bind; the chi tie within blocked runs is kept".into(),
        );
    }
    if let Some(x) = &result.witness {
        let model = program.witness_model(x, !relax.contains(&Relaxation::PsiAnomic))?;
        let rep = reproduces(&model, &program.fragment, &BigRational::zero());
        report.witness_reproduces = Some(rep.reproduces);
        report.witness_model = Some(ModelDocument::new(model, Some(program.fragment.clone())));
    }
    Ok(report)
}

fn hroi2_trace(p: &Hroi2Program, status: Status) -> Vec<TraceStep> {
    let f = &p.fragment;
    let (b0, bpi, u0, upi) = (ctx_blocked(0), ctx_blocked(1), ctx_unblocked(0), ctx_unblocked(1));
    let zero = |ctx: &str, o: &str| prob(f, PSI_IN, ctx, o).is_zero();
    let compatible = p.born_compatible();
    let mut t = Vec::new();

    t.push(TraceStep::new(
        "born",
        format!(
            "P(2,Yes | {b0}) = P(∅,Yes | {b0}) = 0 and the same at pi, so P(2,Yes|λ) = P(∅,Yes|λ) = 0 on the support"
        ),
        [&b0, &bpi].iter().all(|c| {
            zero(c, &joint_outcome("2", YES)) && zero(c, &joint_outcome(NO_DETECTION, YES))
        }),
    ));
    t.push(TraceStep::new(
        "sum-rule",
        "P(3,Yes|λ) + P(4,Yes|λ) = P(Yes | M1, λ) for every λ in the support",
        compatible
            .iter()
            .all(|a| a.alpha != YES || a.beta.iter().all(|b| *b == "3" || *b == "4")),
    ));
    t.push(TraceStep::new(
        "born",
        format!("P(4 | {u0}) = 0 and P(3 | {upi}) = 0, so P(4 | {u0}, λ) = P(3 | {upi}, λ) = 0"),
        zero(&u0, "4") && zero(&upi, "3"),
    ));
    t.push(TraceStep::new(
        "roi",
        "blocked responses do not depend on chi",
        p.options.chi_tie,
    ));
    t.push(TraceStep::new(
        "roi",
        format!("P(4,Yes | {b0}, λ) = P(4 | {u0}, λ) and P(3,Yes | {bpi}, λ) = P(3 | {upi}, λ)"),
        p.options.cross_ties,
    ));
    let tied = |a: &StageAssignment| {
        (!p.options.chi_tie || a.chi_tie_ok())
            && (!p.options.cross_ties
                || (0..2).all(|i| a.port_tie_ok(i, "4") && a.port_tie_ok(i, "3")))
    };
    t.push(TraceStep::new(
        "deduction",
        "hence P(3,Yes|λ) + P(4,Yes|λ) = 0 for every λ in the support",
        !compatible.iter().any(|a| a.alpha == YES && tied(a)),
    ));
    t.push(TraceStep::new(
        "conflict",
        format!(
            "P(Yes | M1) = {} > 0 cannot be reproduced",
            format_rational(&prob(f, PSI_IN, &ctx_m1(), YES))
        ),
        status == Status::Infeasible,
    ));
    // Auxiliary route: keep only the unblocked zeros, add the port-2 tie.
    let forced: Vec<_> = StageAssignment::all()
        .into_iter()
        .filter(|a| {
            a.alpha == YES
                && a.gamma[0] != "4"
                && a.gamma[1] != "3"
                && a.chi_tie_ok()
                && (0..2).all(|i| ["4", "3", "2"].iter().all(|port| a.port_tie_ok(i, port)))
        })
        .collect();
    t.push(TraceStep::new(
        "auxiliary",
        "a port-2 tie with the same zeros forces P(2,Yes|λ) = 1 where the blocked statistics give 0",
        !forced.is_empty() && forced.iter().all(|a| a.beta == ["2", "2"]) && zero(&b0, &joint_outcome("2", YES)),
    ));
    t
}

// ---------------------------------------------------------------------------
// Direct preparations: overlap of Ψ₊ and Ψ₀ under shared responses.

/// Max-overlap program for `psi_plus` and `psi_0` over contexts `M2[0]`, `M2[pi]`.
#[derive(Clone, Debug)]
pub struct HroiProgram {
    pub a2: BigRational,
    pub relaxed: Vec<Relaxation>,
    pub contexts: Vec<String>,
    pub fragment: Fragment,
    /// Ontic states: one assignment (ψ-anomic) or a pair of assignments, one
    /// per preparation (wave-dependent responses).
    pub points: Vec<(DeterministicAssignment, DeterministicAssignment)>,
    pub system: ConstraintSystem,
}

impl HroiProgram {
    pub fn compile(a2: &BigRational, relax: &[Relaxation]) -> Result<Self> {
        check_range(a2)?;
        let fragment = hardy_fragment(a2)?.restricted_to(&[PSI_PLUS, PSI_0]);
        let contexts = vec![ctx_direct(0), ctx_direct(1)];
        let singles: Vec<DeterministicAssignment> = PORTS
            .iter()
            .flat_map(|o0| {
                let contexts = &contexts;
                PORTS.iter().map(move |opi| {
                    DeterministicAssignment::new(vec![
                        (contexts[0].clone(), o0.to_string()),
                        (contexts[1].clone(), opi.to_string()),
                    ])
                })
            })
            .collect();
        let nomic = relax.contains(&Relaxation::PsiAnomic);
        let points: Vec<_> = if nomic {
            singles
                .iter()
                .flat_map(|a| singles.iter().map(move |b| (a.clone(), b.clone())))
                .collect()
        } else {
            singles.iter().map(|a| (a.clone(), a.clone())).collect()
        };
        let n = points.len();
        let name = |(a, b): &(DeterministicAssignment, DeterministicAssignment)| {
            if nomic {
                format!("{} / {}", a.label(), b.label())
            } else {
                a.label()
            }
        };
        let mut vars = Vec::with_capacity(3 * n);
        for tag in ["p", "q", "m"] {
            vars.extend(points.iter().map(|pt| format!("{tag}[{}]", name(pt))));
        }
        let mut cs = ConstraintSystem::new(vars);
        born_rows(
            &mut cs,
            &fragment,
            PSI_PLUS,
            &contexts,
            0,
            |k, c| points[k].0.outcome(c).expect("context").to_string(),
            n,
        )?;
        born_rows(
            &mut cs,
            &fragment,
            PSI_0,
            &contexts,
            n,
            |k, c| points[k].1.outcome(c).expect("context").to_string(),
            n,
        )?;
        if !relax.contains(&Relaxation::Roi) {
            let bad = (0..n)
                .filter(|&k| points[k].1.outcome(&contexts[0]) != points[k].1.outcome(&contexts[1]))
                .map(|k| n + k);
            cs.push(Row::sum(bad, Relation::Eq, BigRational::zero(), "tie:psi_0-chi"));
        }
        for (k, point) in points.iter().enumerate() {
            for (off, tag) in [(0, "p"), (n, "q")] {
                cs.push(Row::new(
                    vec![(2 * n + k, BigRational::one()), (off + k, -BigRational::one())],
                    Relation::Le,
                    BigRational::zero(),
                    format!("overlap-cap:{tag}[{}]", name(point)),
                ));
            }
        }
        cs.objective = Some(Objective {
            sense: Sense::Maximize,
            coeffs: (2 * n..3 * n).map(|j| (j, BigRational::one())).collect(),
            label: "common mass of psi_plus and psi_0".into(),
        });
        Ok(Self {
            a2: a2.clone(),
            relaxed: relax.to_vec(),
            contexts,
            fragment,
            points,
            system: cs,
        })
    }

    fn nomic(&self) -> bool {
        self.relaxed.contains(&Relaxation::PsiAnomic)
    }

    /// Model over the points that carry weight under either preparation.
    pub fn witness_model(&self, x: &[BigRational]) -> Result<OntologicalModel> {
        let n = self.points.len();
        let support: Vec<usize> = (0..n)
            .filter(|&k| x[k].is_positive() || x[n + k].is_positive())
            .collect();
        let label = |k: usize| {
            let (a, b) = &self.points[k];
            if self.nomic() {
                format!("{} / {}", a.label(), b.label())
            } else {
                a.label()
            }
        };
        let space = OnticSpace::new(support.iter().map(|&k| label(k)).collect())?;
        let epistemics = vec![
            EpistemicState::new(PSI_PLUS, support.iter().map(|&k| x[k].clone()).collect()),
            EpistemicState::new(PSI_0, support.iter().map(|&k| x[n + k].clone()).collect()),
        ];
        let mut responses = Vec::new();
        for ctx in &self.contexts {
            let outcomes: Vec<String> = PORTS.iter().map(|s| s.to_string()).collect();
            let table = |second: bool, prep: Option<&str>| ResponseTable {
                context: ctx.clone(),
                preparation: prep.map(String::from),
                outcomes: outcomes.clone(),
                entries: support
                    .iter()
                    .map(|&k| {
                        let (a, b) = &self.points[k];
                        let o = if second { b } else { a }.outcome(ctx).expect("context");
                        outcomes
                            .iter()
                            .map(|x| if x == o { BigRational::one() } else { BigRational::zero() })
                            .collect()
                    })
                    .collect(),
            };
            if self.nomic() {
                responses.push(table(false, Some(PSI_PLUS)));
                responses.push(table(true, Some(PSI_0)));
            } else {
                responses.push(table(false, None));
            }
        }
        let flags = AssumptionSet {
            psi_anomic: !self.nomic(),
            pip: true,
            pip_ps: false,
            roi: !self.relaxed.contains(&Relaxation::Roi),
        };
        OntologicalModel::new(space, epistemics, responses, flags)
    }

    /// Single assignments each preparation can put weight on, by vertex
    /// enumeration of its own Born (and tie) rows.
    fn possible_assignments(&self) -> Result<(Vec<DeterministicAssignment>, Vec<DeterministicAssignment>)> {
        let singles: Vec<DeterministicAssignment> = {
            let mut v: Vec<DeterministicAssignment> = Vec::new();
            for (a, _) in &self.points {
                if !v.contains(a) {
                    v.push(a.clone());
                }
            }
            v
        };
        let m = singles.len();
        let mut plus = ConstraintSystem::new(singles.iter().map(|a| a.label()).collect());
        let outcome = |k: usize, c: &str| singles[k].outcome(c).expect("context").to_string();
        born_rows(&mut plus, &self.fragment, PSI_PLUS, &self.contexts, 0, outcome, m)?;
        let mut zero = ConstraintSystem::new(singles.iter().map(|a| a.label()).collect());
        born_rows(&mut zero, &self.fragment, PSI_0, &self.contexts, 0, outcome, m)?;
        if !self.relaxed.contains(&Relaxation::Roi) {
            let bad = (0..m).filter(|&k| outcome(k, &self.contexts[0]) != outcome(k, &self.contexts[1]));
            zero.push(Row::sum(bad, Relation::Eq, BigRational::zero(), "tie:psi_0-chi"));
        }
        let pick = |cs: &ConstraintSystem| -> Result<Vec<DeterministicAssignment>> {
            Ok(possible_support(cs)?.into_iter().map(|k| singles[k].clone()).collect())
        };
        Ok((pick(&plus)?, pick(&zero)?))
    }
}

pub fn check_hroi_original(a2: &BigRational) -> Result<TheoremReport> {
    check_hroi_original_with(a2, &[])
}

/// Maximize the common mass of `psi_plus` and `psi_0`. Expected: 0 with every
/// hypothesis, positive once ROI or ψ-anomic responses are dropped.
pub fn check_hroi_original_with(a2: &BigRational, relax: &[Relaxation]) -> Result<TheoremReport> {
    let program = HroiProgram::compile(a2, relax)?;
    let cs = &program.system;
    let result = solve(cs)?;
    let (Some(x), Some(value)) = (&result.witness, &result.objective_value) else {
        return Err(Error::Internal(format!("overlap program returned {:?}", result.status)));
    };

    // Oracle: overlap can be positive iff some ontic state is reachable by both.
    let (plus, zero) = program.possible_assignments()?;
    let oracle_positive = if program.nomic() {
        !plus.is_empty() && !zero.is_empty()
    } else {
        plus.iter().any(|a| zero.contains(a))
    };
    if oracle_positive != value.is_positive() {
        return Err(Error::Internal(format!(
            "overlap optimum {} disagrees with the support enumeration",
            format_rational(value)
        )));
    }

    let model = program.witness_model(x)?;
    let rep = reproduces(&model, &program.fragment, &BigRational::zero());
    let overlap = support_overlap(&model, PSI_PLUS, PSI_0)?;
    if overlap.mass != *value {
        return Err(Error::Internal(format!(
            "witness overlap {} differs from optimum {}",
            format_rational(&overlap.mass),
            format_rational(value)
        )));
    }

    let f = &program.fragment;
    let (c0, cpi) = (ctx_direct(0), ctx_direct(1));
    let disjoint = !oracle_positive;
    let mut trace = vec![
        TraceStep::new(
            "born",
            format!("P(4 | psi_plus, {c0}) = 0 and P(3 | psi_plus, {cpi}) = 0: the support of psi_plus answers 3 or 2 at chi = 0 and 4 or 2 at chi = pi"),
            prob(f, PSI_PLUS, &c0, "4").is_zero()
                && prob(f, PSI_PLUS, &cpi, "3").is_zero()
                && plus.iter().all(|a| {
                    a.outcome(&c0) != Some("4") && a.outcome(&cpi) != Some("3")
                }),
        ),
        TraceStep::new(
            "born",
            format!("P(2 | psi_0, {c0}) = P(2 | psi_0, {cpi}) = 0"),
            prob(f, PSI_0, &c0, "2").is_zero() && prob(f, PSI_0, &cpi, "2").is_zero(),
        ),
        TraceStep::new(
            "roi",
            "responses on the support of psi_0 do not depend on chi",
            !relax.contains(&Relaxation::Roi),
        ),
        TraceStep::new(
            "deduction",
            "the support of psi_0 answers 3 at both phases or 4 at both phases",
            zero.iter().all(|a| a.outcome(&c0) == a.outcome(&cpi)),
        ),
        TraceStep::new(
            "anomic",
            "both preparations share one response table",
            !program.nomic(),
        ),
        TraceStep::new(
            "conflict",
            "no ontic state lies in both supports",
            disjoint,
        ),
    ];
    trace.push(TraceStep::new(
        "result",
        format!("maximum overlap = {}", format_rational(value)),
        value.is_zero(),
    ));

    let expected_zero = relax.is_empty();
    Ok(TheoremReport {
        theorem: TheoremId::Hroi,
        parameters: Parameters {
            a2: Some(format_rational(a2)),
            chi: phases().iter().map(|p| p.to_string()).collect(),
            relaxed: relax.to_vec(),
        },
        // The program is always feasible; the verdict is carried by the optimum.
        status: if value.is_zero() {
            ReportStatus::Contradiction
        } else {
            ReportStatus::Feasible
        },
        expected_status: if expected_zero {
            ReportStatus::Contradiction
        } else {
            ReportStatus::Feasible
        },
        max_overlap: Some(format_rational(value)),
        certificate: None,
        witness: Some(witness_entries(cs, x)),
        witness_reproduces: Some(rep.reproduces),
        oracle: Some(OracleCheck {
            method: "vertex enumeration of each preparation's polytope".into(),
            status: if oracle_positive {
                ReportStatus::Feasible
            } else {
                ReportStatus::Contradiction
            },
            agrees: true,
        }),
        trace,
        notes: vec!["status `contradiction` means the supports of psi_plus and psi_0 must be disjoint".into()],
        witness_model: Some(ModelDocument::new(model, Some(program.fragment.clone()))),
    })
}
