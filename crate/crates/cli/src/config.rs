use std::fs;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use num_rational::BigRational;
use ontic::nogo::Relaxation;
use ontic::qstate::Phase;
use ontic::rational::{parse_rational, rat};
use serde::Deserialize;

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by `simulate` and `check`. A `--config` file supplies any
/// flag left unset on the command line.
#[derive(Args, Debug, Default)]
pub struct Common {
    /// Branch intensity a², as `p/q` or a decimal.
    #[arg(long)]
    pub a2: Option<String>,
    /// Phases, e.g. `0,pi/3,pi` or radians.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub chi: Vec<String>,
    /// Assumption to drop: `psi_anomic` or `roi`. Repeatable.
    #[arg(long)]
    pub relax: Vec<String>,
    /// Directory for report files.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// JSON file with any of the keys `a2`, `chi`, `relax`, `out`, `format`.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    a2: Option<String>,
    #[serde(default)]
    chi: Vec<String>,
    #[serde(default)]
    relax: Vec<String>,
    out: Option<PathBuf>,
    format: Option<Format>,
}

/// A validated run configuration.
#[derive(Debug)]
pub struct Scenario {
    pub a2: BigRational,
    pub chi: Vec<Phase>,
    pub relax: Vec<Relaxation>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

impl Common {
    pub fn resolve(self, default_format: Format) -> Result<Scenario, Failure> {
        let file = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
                serde_json::from_str::<FileConfig>(&text)
                    .map_err(|e| Failure::usage(format!("config {}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let a2 = match self.a2.or(file.a2) {
            Some(s) => parse_rational(&s)?,
            None => rat(1, 3),
        };
        if a2 <= rat(0, 1) || a2 > rat(1, 2) {
            return Err(ontic::Error::HypothesisOutOfRange(ontic::rational::format_rational(&a2)).into());
        }
        let chi_src = if self.chi.is_empty() { file.chi } else { self.chi };
        let chi = if chi_src.is_empty() {
            vec![Phase::zero(), Phase::pi()]
        } else {
            chi_src.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
        };
        let relax_src = if self.relax.is_empty() { file.relax } else { self.relax };
        let mut relax: Vec<Relaxation> = relax_src.iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
        relax.sort_by_key(|r| r.to_string());
        relax.dedup();
        Ok(Scenario {
            a2,
            chi,
            relax,
            out: self.out.or(file.out),
            format: self.format.or(file.format).unwrap_or(default_format),
        })
    }
}
