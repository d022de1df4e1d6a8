//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any failure.

mod common;

use std::str::FromStr;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::Zero;
use ontic::interferometer::{
    beam_splitter_1, beam_splitter_2, compose_device, phase_plate, run_m0_m2, run_m1_m2, run_psi0_full,
    CircuitConfig, NO, NO_DETECTION, PSI_0, PSI_PLUS, YES,
};
use ontic::nogo::{
    check_hroi2, check_hroi2_with, check_hroi_original, check_hroi_original_with, compile_hroi2,
    deterministic_decomposition, enumerate_oracle, is_deterministic, ket0, ket_plus, nomic_counterexample,
    pbr_basis, pbr_default, solve, CounterexampleKind, Relaxation, ReportStatus, Status,
};
use ontic::ontology::{check_roi, lift_model, predicted_statistics, reproduces, support_overlap};
use ontic::qstate::{born_probabilities, Phase};
use ontic::rational::rat;

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn grid() -> Vec<BigRational> {
    vec![rat(1, 10), rat(1, 4), rat(1, 3), rat(1, 2)]
}

fn quantum_fixtures() -> Check {
    let start = Instant::now();
    let a2 = rat(1, 3);
    for (k, want) in [(0, [rat(2, 3), rat(0, 1), rat(1, 3)]), (1, [rat(0, 1), rat(2, 3), rat(1, 3)])] {
        let cfg = CircuitConfig::new(a2.clone(), Phase::pi_times(k, 1), false).map_err(|e| e.to_string())?;
        let d = run_m0_m2(&cfg).map_err(|e| e.to_string())?;
        let got: Vec<Option<BigRational>> = ["3", "4", "2"]
            .iter()
            .map(|o| d.get(o).and_then(|p| p.to_rational()))
            .collect();
        ensure(got == want.iter().cloned().map(Some).collect::<Vec<_>>(), || {
            format!("M0,M2 at {k}π: {got:?}")
        })?;
    }
    let cfg = CircuitConfig::new(a2, Phase::pi_times(0, 1), true).map_err(|e| e.to_string())?;
    let j = run_m1_m2(&cfg).map_err(|e| e.to_string())?;
    let table = [
        ("3", YES, rat(1, 6)),
        ("4", YES, rat(1, 6)),
        ("2", YES, rat(0, 1)),
        (NO_DETECTION, YES, rat(0, 1)),
        (NO_DETECTION, NO, rat(2, 3)),
    ];
    for (b, a, want) in table {
        let got = j.get(b, a).and_then(|p| p.to_rational());
        ensure(got.as_ref() == Some(&want), || format!("P({b},{a}) = {got:?}, want {want}"))?;
    }
    within(start, Duration::from_secs(1), "fixtures")
}

fn psi0_balance() -> Check {
    for (k, d) in [(0, 1), (1, 3), (1, 2), (1, 1)] {
        let cfg = CircuitConfig::new(rat(1, 3), Phase::pi_times(k, d), false).map_err(|e| e.to_string())?;
        let out = run_psi0_full(&cfg).map_err(|e| e.to_string())?;
        for port in ["3", "4"] {
            let p = out.get(port).map(|p| p.to_f64()).unwrap_or(f64::NAN);
            ensure((p - 0.5).abs() <= 1e-12, || format!("χ = {k}π/{d}: P({port}) = {p}"))?;
        }
    }
    Ok(())
}

fn hroi_original() -> Check {
    for a2 in grid() {
        let start = Instant::now();
        let r = check_hroi_original(&a2).map_err(|e| e.to_string())?;
        ensure(r.status == ReportStatus::Contradiction && r.max_overlap.as_deref() == Some("0"), || {
            format!("a² = {a2}: {}", r.summary())
        })?;
        let relaxed = check_hroi_original_with(&a2, &[Relaxation::Roi]).map_err(|e| e.to_string())?;
        let overlap = relaxed
            .max_overlap
            .as_deref()
            .and_then(|s| BigRational::from_str(s).ok())
            .unwrap_or_else(BigRational::zero);
        ensure(overlap > BigRational::zero(), || format!("a² = {a2}: relaxed overlap {overlap}"))?;
        ensure(relaxed.witness_reproduces == Some(true), || {
            format!("a² = {a2}: relaxed witness does not reproduce")
        })?;
        within(start, Duration::from_secs(5), &format!("a² = {a2}"))?;
    }
    Ok(())
}

fn hroi2() -> Check {
    for a2 in grid() {
        let start = Instant::now();
        let r = check_hroi2(&a2).map_err(|e| e.to_string())?;
        ensure(r.status == ReportStatus::Infeasible, || format!("a² = {a2}: {}", r.summary()))?;
        ensure(r.certificate.as_ref().is_some_and(|c| c.verified), || {
            format!("a² = {a2}: certificate missing or unverified")
        })?;
        ensure(r.oracle.as_ref().is_some_and(|o| o.agrees), || format!("a² = {a2}: oracle disagrees"))?;

        let cs = compile_hroi2(&a2).map_err(|e| e.to_string())?;
        let s = solve(&cs).map_err(|e| e.to_string())?;
        let cert = s.certificate.ok_or("no certificate from solve")?;
        cert.verify(&cs).map_err(|e| format!("a² = {a2}: {e}"))?;
        let o = enumerate_oracle(&cs).map_err(|e| e.to_string())?;
        ensure(o.status == Status::Infeasible, || format!("a² = {a2}: oracle {:?}", o.status))?;

        let relaxed = check_hroi2_with(&a2, &[Relaxation::PsiAnomic]).map_err(|e| e.to_string())?;
        ensure(relaxed.status == ReportStatus::Feasible, || {
            format!("a² = {a2}: relaxed {}", relaxed.summary())
        })?;
        ensure(relaxed.witness_reproduces == Some(true), || {
            format!("a² = {a2}: relaxed witness does not reproduce at tol 0")
        })?;
        within(start, Duration::from_secs(10), &format!("a² = {a2}"))?;
    }
    Ok(())
}

fn pbr() -> Check {
    let start = Instant::now();
    let m = pbr_basis().map_err(|e| e.to_string())?;
    let (z, p) = (ket0(), ket_plus());
    for (i, (a, b)) in [(&z, &z), (&z, &p), (&p, &z), (&p, &p)].into_iter().enumerate() {
        let d = born_probabilities(&a.tensor(b), &m).map_err(|e| e.to_string())?;
        let outcome = format!("xi{}", i + 1);
        let q = d.get(&outcome).and_then(|x| x.to_rational());
        ensure(q == Some(BigRational::zero()), || format!("product {i}: P({outcome}) = {q:?}"))?;
    }
    let r = pbr_default().map_err(|e| e.to_string())?;
    ensure(r.status == ReportStatus::Contradiction, || r.summary())?;
    let last = r.trace.last().ok_or("empty trace")?;
    ensure(last.relation == "conflict" && last.holds, || format!("trace ends with {last:?}"))?;
    within(start, Duration::from_secs(1), "pbr")
}

fn counterexample_round_trip() -> Check {
    let a2 = rat(1, 3);
    let zero = BigRational::zero();
    let (model, fragment) =
        nomic_counterexample(&a2, CounterexampleKind::ArmLabel).map_err(|e| e.to_string())?;
    ensure(reproduces(&model, &fragment, &zero).reproduces, || "counterexample does not reproduce".into())?;
    let ov = support_overlap(&model, PSI_PLUS, PSI_0).map_err(|e| e.to_string())?;
    ensure(ov.mass >= rat(1, 3), || format!("overlap {}", ov.mass))?;

    let lifted = lift_model(&model).map_err(|e| e.to_string())?;
    ensure(reproduces(&lifted, &fragment, &zero).reproduces, || "lifted model does not reproduce".into())?;
    for p in model.preparations() {
        for c in model.contexts() {
            if let Ok(want) = predicted_statistics(&model, p, c) {
                let got = predicted_statistics(&lifted, p, c).map_err(|e| e.to_string())?;
                ensure(got == want, || format!("lifted statistics differ at {p}, {c}"))?;
            }
        }
    }
    let preps = lifted.preparations();
    for (i, a) in preps.iter().enumerate() {
        for b in &preps[i + 1..] {
            let o = support_overlap(&lifted, a, b).map_err(|e| e.to_string())?;
            ensure(o.disjoint && o.mass.is_zero(), || format!("lifted overlap {a}/{b} = {}", o.mass))?;
        }
    }
    let roi = check_roi(&lifted).map_err(|e| e.to_string())?;
    ensure(!roi.passed, || "lifted model passes ROI".into())
}

fn property_suites() -> Check {
    for seed in 0..200u64 {
        let m = common::random_model(seed, false);
        let d = deterministic_decomposition(&m).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(is_deterministic(&d), || format!("seed {seed}: not deterministic"))?;
        for p in m.preparations() {
            for c in m.contexts() {
                let same = predicted_statistics(&d, p, c).ok() == predicted_statistics(&m, p, c).ok();
                ensure(same, || format!("seed {seed}: statistics changed at {p}, {c}"))?;
            }
        }
    }
    for seed in 0..200u64 {
        let cs = common::random_system(seed);
        let s = solve(&cs).map_err(|e| format!("seed {seed}: {e}"))?;
        let o = enumerate_oracle(&cs).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(s.status == o.status, || format!("seed {seed}: solve {:?}, oracle {:?}", s.status, o.status))?;
    }
    for a2 in grid() {
        for k in -12..=12 {
            let chi = Phase::pi_times(k, 12);
            let cfg = CircuitConfig::new(a2.clone(), chi.clone(), false).map_err(|e| e.to_string())?;
            let ops = [
                phase_plate(&chi),
                beam_splitter_1(&cfg.transmission_sqr()),
                beam_splitter_2(),
                compose_device(&cfg),
            ];
            for op in ops {
                let op = op.map_err(|e| e.to_string())?;
                ensure(op.is_unitary(), || format!("{} is not unitary", op.name()))?;
            }
        }
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 quantum fixtures", quantum_fixtures),
        ("2 psi_0 balance", psi0_balance),
        ("3 H-ROI overlap", hroi_original),
        ("4 H-ROI(II) infeasibility", hroi2),
        ("5 PBR antidistinguishability", pbr),
        ("6 counterexample and lifting", counterexample_round_trip),
        ("7 property suites", property_suites),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(()) => println!("PASS criterion {name} ({:.2?})", start.elapsed()),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {name}: {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
