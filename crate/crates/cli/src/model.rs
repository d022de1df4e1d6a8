use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Subcommand, ValueEnum};
use ontic::nogo::{nomic_counterexample, CounterexampleKind};
use ontic::ontology::{check_assumptions, lift_model, reproduces, support_overlap, AssumptionSet, ModelDocument};
use ontic::rational::{format_rational, parse_rational, rat};
use serde_json::{json, Map, Value};

use crate::output::{pretty, print, write_file};
use crate::Failure;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Kind {
    SinglePoint,
    ArmLabel,
}

#[derive(Args, Debug)]
pub struct Target {
    /// Directory for the output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Action {
    /// Emit a wave-dependent model that reproduces the interferometer fragment.
    Counterexample {
        #[arg(long, default_value = "1/3")]
        a2: String,
        #[arg(long, value_enum, default_value = "single-point")]
        kind: Kind,
        #[command(flatten)]
        target: Target,
    },
    /// Adjoin a wavefunction token to every ontic state of a model file.
    Lift {
        file: PathBuf,
        #[command(flatten)]
        target: Target,
    },
    /// Check a model file against its fragment and the assumptions.
    Audit {
        file: PathBuf,
        /// Largest tolerated deviation from the fragment.
        #[arg(long, default_value = "0")]
        tol: String,
        #[command(flatten)]
        target: Target,
    },
}

fn load(path: &Path) -> Result<ModelDocument, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    ModelDocument::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

fn emit(target: &Target, name: &str, text: &str) -> Result<u8, Failure> {
    match &target.out {
        Some(dir) => write_file(dir, name, text)?,
        None => print(text)?,
    }
    Ok(0)
}

fn single(flag: &str) -> AssumptionSet {
    AssumptionSet {
        psi_anomic: flag == "psi_anomic",
        pip: flag == "pip",
        pip_ps: flag == "pip_ps",
        roi: flag == "roi",
    }
}

/// Reproduction, assumption checks and pairwise overlaps as JSON.
pub fn audit(doc: &ModelDocument, tol: &num_rational::BigRational) -> Result<Value, Failure> {
    let model = &doc.model;
    let mut out = Map::new();
    if let Some(f) = &doc.fragment {
        let rep = reproduces(model, f, tol);
        out.insert("reproduces".into(), json!(rep.reproduces));
        out.insert(
            "max_deviation".into(),
            json!(rep.max_deviation().map(|d| format_rational(&d))),
        );
    }
    let mut assumptions = Map::new();
    for flag in ["psi_anomic", "pip", "pip_ps", "roi"] {
        let entry = match check_assumptions(model, &single(flag)) {
            Ok(report) => {
                let c = report.get(flag).expect("requested check");
                json!({
                    "result": if c.passed { "pass" } else { "fail" },
                    "violations": c.violations,
                    "notes": c.notes,
                })
            }
            Err(ontic::Error::FragmentMismatch(why)) => json!({ "result": "n/a", "notes": [why] }),
            Err(e) => return Err(e.into()),
        };
        assumptions.insert(flag.into(), entry);
    }
    out.insert("assumptions".into(), Value::Object(assumptions));

    let preps = model.preparations();
    let mut overlaps = Vec::new();
    let mut psi_ontic = true;
    for (i, a) in preps.iter().enumerate() {
        for b in &preps[i + 1..] {
            let o = support_overlap(model, a, b)?;
            psi_ontic &= o.disjoint;
            overlaps.push(json!({
                "preparations": [a, b],
                "overlap": format_rational(&o.mass),
                "disjoint": o.disjoint,
            }));
        }
    }
    out.insert("overlaps".into(), Value::Array(overlaps));
    out.insert("psi_ontic".into(), json!(psi_ontic));
    Ok(Value::Object(out))
}

pub fn run(action: Action) -> Result<u8, Failure> {
    match action {
        Action::Counterexample { a2, kind, target } => {
            let kind = match kind {
                Kind::SinglePoint => CounterexampleKind::SinglePoint,
                Kind::ArmLabel => CounterexampleKind::ArmLabel,
            };
            let (model, fragment) = nomic_counterexample(&parse_rational(&a2)?, kind)?;
            emit(&target, "counterexample.json", &ModelDocument::new(model, Some(fragment)).to_json())
        }
        Action::Lift { file, target } => {
            let doc = load(&file)?;
            let lifted = lift_model(&doc.model)?;
            emit(&target, "lifted.json", &ModelDocument::new(lifted, doc.fragment).to_json())
        }
        Action::Audit { file, tol, target } => {
            let tol = parse_rational(&tol)?;
            if tol < rat(0, 1) {
                return Err(Failure::usage("--tol must be nonnegative"));
            }
            let doc = load(&file)?;
            emit(&target, "audit.json", &pretty(&audit(&doc, &tol)?))
        }
    }
}
