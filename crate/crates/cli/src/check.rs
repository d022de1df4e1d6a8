use ontic::nogo::{check_hroi2_with, check_hroi_original_with, pbr_default, TheoremReport};

use crate::config::{Format, Scenario};
use crate::output::{print, write_file};
use crate::Failure;

fn report(theorem: &str, s: &Scenario) -> Result<TheoremReport, Failure> {
    Ok(match theorem {
        "pbr" => {
            if !s.relax.is_empty() {
                return Err(Failure::usage("`check pbr` takes no --relax"));
            }
            pbr_default()?
        }
        "hroi" => check_hroi_original_with(&s.a2, &s.relax)?,
        "hroi2" => check_hroi2_with(&s.a2, &s.relax)?,
        other => return Err(Failure::usage(format!("unknown theorem `{other}`"))),
    })
}

/// Exit 0 when the status matches the expected one, 2 otherwise.
pub fn run(theorem: &str, s: &Scenario) -> Result<u8, Failure> {
    if s.format == Format::Csv {
        return Err(Failure::usage("`check` writes JSON only; --format csv applies to `simulate`"));
    }
    let r = report(theorem, s)?;
    let json = r.to_json();
    if let Some(dir) = &s.out {
        write_file(dir, &format!("{theorem}.json"), &json)?;
        if let Some(doc) = &r.witness_model {
            write_file(dir, &format!("{theorem}-witness.json"), &doc.to_json())?;
        }
    }
    eprintln!("{}", r.summary());
    print(&json)?;
    Ok(if r.as_expected() { 0 } else { 2 })
}
