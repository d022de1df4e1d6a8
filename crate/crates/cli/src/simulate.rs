use ontic::interferometer::{run_m0_m2, run_m1_m2, CircuitConfig, PORTS};
use ontic::qstate::{OutcomeDistribution, Phase, Real};
use ontic::rational::format_rational;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Format, Scenario};
use crate::output::{pretty, print, write_file};
use crate::Failure;

struct Point {
    chi: Phase,
    dist: OutcomeDistribution,
}

fn value(p: &Real) -> Value {
    match p.to_rational() {
        Some(q) => json!({ "exact": format_rational(&q), "value": p.to_f64() }),
        None => json!({ "value": p.to_f64() }),
    }
}

fn prob(d: &OutcomeDistribution, port: &str) -> Real {
    d.get(port).cloned().unwrap_or_else(Real::zero)
}

fn sweep_csv(points: &[Point]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Failure { code: 2, message: e.to_string() };
    w.write_record(["chi", "P3", "P4", "P2"]).map_err(fail)?;
    for p in points {
        let mut rec = vec![p.chi.radians().to_string()];
        rec.extend(PORTS.iter().map(|port| prob(&p.dist, port).to_f64().to_string()));
        w.write_record(&rec).map_err(fail)?;
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8"))
}

fn joint_csv(rows: &[((String, String), Real)]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Failure { code: 2, message: e.to_string() };
    w.write_record(["beta", "alpha", "P"]).map_err(fail)?;
    for ((b, a), p) in rows {
        w.write_record([b.as_str(), a.as_str(), &p.to_f64().to_string()]).map_err(fail)?;
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8"))
}

pub fn run(s: &Scenario) -> Result<u8, Failure> {
    let base = CircuitConfig::new(s.a2.clone(), Phase::zero(), false)?;
    let points: Vec<Point> = s
        .chi
        .par_iter()
        .map(|chi| {
            run_m0_m2(&base.with_chi(chi.clone())).map(|dist| Point {
                chi: chi.clone(),
                dist,
            })
        })
        .collect::<Result<_, _>>()?;
    let blocked = CircuitConfig::new(s.a2.clone(), s.chi[0].clone(), true)?;
    let joint = run_m1_m2(&blocked)?;

    let report = json!({
        "a2": format_rational(&s.a2),
        "sweep": points.iter().map(|p| {
            let mut row = serde_json::Map::new();
            row.insert("chi".into(), json!(p.chi.to_string()));
            row.insert("chi_radians".into(), json!(p.chi.radians()));
            for port in PORTS {
                row.insert(format!("P{port}"), value(&prob(&p.dist, port)));
            }
            Value::Object(row)
        }).collect::<Vec<_>>(),
        "blocked": joint.entries().iter().map(|((b, a), p)| {
            json!({ "beta": b, "alpha": a, "p": value(p) })
        }).collect::<Vec<_>>(),
    });
    let json_text = pretty(&report);
    let sweep = sweep_csv(&points)?;
    let table = joint_csv(joint.entries())?;

    if let Some(dir) = &s.out {
        write_file(dir, "sweep.csv", &sweep)?;
        write_file(dir, "joint.csv", &table)?;
        write_file(dir, "simulate.json", &json_text)?;
    }
    match s.format {
        Format::Json => print(&json_text)?,
        Format::Csv => print(&format!("{sweep}\n{table}"))?,
    }
    Ok(0)
}
