use num_rational::BigRational;
use ontic::interferometer::{hardy_fragment, run_m0_m2, run_m1_m2, run_psi0_full, CircuitConfig, NO, NO_DETECTION, YES};
use ontic::qstate::Phase;
use ontic::rational::rat;

fn exact(d: &ontic::qstate::OutcomeDistribution, outcome: &str) -> BigRational {
    d.get(outcome).unwrap().to_rational().expect("exact value")
}

#[test]
fn unblocked_runs_at_zero_and_pi() {
    let a2 = rat(1, 3);
    for (k, want) in [(0, [rat(2, 3), rat(0, 1), rat(1, 3)]), (12, [rat(0, 1), rat(2, 3), rat(1, 3)])] {
        let cfg = CircuitConfig::new(a2.clone(), Phase::pi_times(k, 12), false).unwrap();
        let d = run_m0_m2(&cfg).unwrap();
        assert_eq!([exact(&d, "3"), exact(&d, "4"), exact(&d, "2")], want);
        assert!(d.get(NO_DETECTION).is_none());
    }
}

#[test]
fn blocked_run_table() {
    let cfg = CircuitConfig::new(rat(1, 3), Phase::pi_times(0, 1), true).unwrap();
    let j = run_m1_m2(&cfg).unwrap();
    let get = |b: &str, a: &str| j.get(b, a).unwrap().to_rational().unwrap();
    assert_eq!(get("3", YES), rat(1, 6));
    assert_eq!(get("4", YES), rat(1, 6));
    assert_eq!(get("2", YES), rat(0, 1));
    assert_eq!(get(NO_DETECTION, YES), rat(0, 1));
    assert_eq!(get(NO_DETECTION, NO), rat(2, 3));
    for port in ["3", "4", "2"] {
        assert_eq!(get(port, NO), rat(0, 1));
    }
}

#[test]
fn psi0_splits_evenly() {
    for (k, d) in [(0, 1), (1, 3), (1, 2), (1, 1)] {
        let cfg = CircuitConfig::new(rat(1, 3), Phase::pi_times(k, d), false).unwrap();
        let out = run_psi0_full(&cfg).unwrap();
        assert_eq!(exact(&out, "3"), rat(1, 2));
        assert_eq!(exact(&out, "4"), rat(1, 2));
    }
}

#[test]
fn fragment_holds_the_exact_tables() {
    let f = hardy_fragment(&rat(1, 3)).unwrap();
    assert_eq!(f.get("psi_in", "M1").unwrap().prob(YES), rat(1, 3));
    assert_eq!(f.get("psi_in", "M0,M2[pi]").unwrap().prob("3"), rat(0, 1));
    assert_eq!(f.get("psi_plus", "M2[0]").unwrap().prob("3"), rat(2, 3));
    assert_eq!(f.get("psi_0", "M2[pi]").unwrap().prob("4"), rat(1, 2));
}
