#![allow(dead_code)]

use num_rational::BigRational;
use ontic::nogo::{ConstraintSystem, Relation, Row};
use ontic::ontology::{AssumptionSet, EpistemicState, OnticSpace, OntologicalModel, ResponseTable};
use ontic::rational::rat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random probability vector with small denominators; zeros allowed.
pub fn random_distribution(rng: &mut impl Rng, len: usize) -> Vec<BigRational> {
    let mut w: Vec<i64> = (0..len).map(|_| rng.gen_range(0..5)).collect();
    if w.iter().all(|&x| x == 0) {
        w[rng.gen_range(0..len)] = 1;
    }
    let total: i64 = w.iter().sum();
    w.into_iter().map(|x| rat(x, total)).collect()
}

/// Random finite model. With `nomic`, every table is indexed by a preparation.
pub fn random_model(seed: u64, nomic: bool) -> OntologicalModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=4);
    let space = OnticSpace::new((0..n).map(|i| format!("l{i}")).collect()).unwrap();
    let preps: Vec<String> = (0..rng.gen_range(1..=3)).map(|i| format!("p{i}")).collect();
    let epistemics = preps
        .iter()
        .map(|p| EpistemicState::new(p.clone(), random_distribution(&mut rng, n)))
        .collect();
    let mut responses = Vec::new();
    for c in 0..rng.gen_range(1..=3) {
        let k = rng.gen_range(1..=3);
        let outcomes: Vec<String> = (0..k).map(|o| format!("o{o}")).collect();
        let owners: Vec<Option<String>> = if nomic {
            preps.iter().cloned().map(Some).collect()
        } else {
            vec![None]
        };
        for owner in owners {
            responses.push(ResponseTable {
                context: format!("C{c}"),
                preparation: owner,
                outcomes: outcomes.clone(),
                entries: (0..n).map(|_| random_distribution(&mut rng, k)).collect(),
            });
        }
    }
    let flags = AssumptionSet {
        psi_anomic: !nomic,
        ..Default::default()
    };
    OntologicalModel::new(space, epistemics, responses, flags).unwrap()
}

/// Random small system over at most 5 nonnegative variables.
pub fn random_system(seed: u64) -> ConstraintSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=5);
    let mut cs = ConstraintSystem::new((0..n).map(|i| format!("x{i}")).collect());
    for r in 0..rng.gen_range(1..=4) {
        cs.push(random_row(&mut rng, n, format!("r{r}")));
    }
    cs
}

pub fn random_row(rng: &mut impl Rng, n: usize, tag: String) -> Row {
    let coeffs = (0..n)
        .filter_map(|j| {
            let c = rng.gen_range(-3i64..=3);
            (c != 0).then(|| (j, rat(c, 1)))
        })
        .collect();
    let relation = match rng.gen_range(0..3) {
        0 => Relation::Eq,
        1 => Relation::Le,
        _ => Relation::Ge,
    };
    Row::new(coeffs, relation, rat(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=2)), tag)
}
