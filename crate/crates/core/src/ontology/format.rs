//! JSON form of an ontological model.
//!
//! ```json
//! {
//!   "ontic_states": ["l0", "l1"],
//!   "epistemic_states": [
//!     {"preparation": "psi_plus", "weights": {"l0": "1/3", "l1": "2/3"}}
//!   ],
//!   "responses": [
//!     {"context": "M2[0]", "outcomes": ["3", "4", "2"],
//!      "entries": {"l0": ["1", "0", "0"], "l1": ["0", "0", "1"]}}
//!   ],
//!   "assumptions": {"psi_anomic": true, "pip": true, "pip_ps": false, "roi": true}
//! }
//! ```
//!
//! Probabilities are strings holding `p/q`, an integer or a decimal. Ontic
//! states missing from a `weights` map have weight zero. An optional
//! `fragment` lists the quantum statistics the model is meant to reproduce.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::model::{
    AssumptionSet, Distribution, EpistemicState, Fragment, OnticSpace, OntologicalModel, ResponseTable,
};
use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModel {
    ontic_states: Vec<String>,
    #[serde(default)]
    epistemic_states: Vec<RawEpistemic>,
    #[serde(default)]
    responses: Vec<RawResponse>,
    #[serde(default)]
    assumptions: AssumptionSet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fragment: Option<Vec<RawFragmentEntry>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEpistemic {
    preparation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    context: Option<String>,
    weights: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawResponse {
    context: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    preparation: Option<String>,
    outcomes: Vec<String>,
    entries: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFragmentEntry {
    preparation: String,
    context: String,
    outcomes: Vec<String>,
    probabilities: Vec<String>,
}

/// A model file: the model plus the fragment it claims to reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDocument {
    pub model: OntologicalModel,
    pub fragment: Option<Fragment>,
}

fn schema(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        location: location.into(),
        message: message.into(),
    }
}

fn parse_prob(s: &str, location: String) -> Result<BigRational> {
    parse_rational(s).map_err(|e| schema(location, e.to_string()))
}

impl ModelDocument {
    pub fn new(model: OntologicalModel, fragment: Option<Fragment>) -> Self {
        Self { model, fragment }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawModel = serde_json::from_str(text).map_err(|e| {
            schema(format!("line {}, column {}", e.line(), e.column()), e.to_string())
        })?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawModel) -> Result<Self> {
        let space = OnticSpace::new(raw.ontic_states.clone())
            .map_err(|e| schema("ontic_states", e.to_string()))?;
        let index = |name: &str, at: &str| {
            space
                .index_of(name)
                .map_err(|_| schema(format!("{at}.{name}"), "unknown ontic state"))
        };

        let mut epistemics = Vec::with_capacity(raw.epistemic_states.len());
        for (i, e) in raw.epistemic_states.iter().enumerate() {
            let at = format!("epistemic_states[{i}].weights");
            let mut weights = vec![BigRational::zero(); space.len()];
            for (lambda, w) in &e.weights {
                weights[index(lambda, &at)?] = parse_prob(w, format!("{at}.{lambda}"))?;
            }
            epistemics.push(EpistemicState {
                preparation: e.preparation.clone(),
                context: e.context.clone(),
                weights,
            });
        }

        let mut responses = Vec::with_capacity(raw.responses.len());
        for (i, r) in raw.responses.iter().enumerate() {
            let at = format!("responses[{i}].entries");
            let mut entries: Vec<Option<Vec<BigRational>>> = vec![None; space.len()];
            for (lambda, row) in &r.entries {
                let loc = format!("{at}.{lambda}");
                if row.len() != r.outcomes.len() {
                    return Err(schema(
                        loc,
                        format!("{} probabilities for {} outcomes", row.len(), r.outcomes.len()),
                    ));
                }
                let parsed = row
                    .iter()
                    .enumerate()
                    .map(|(k, p)| parse_prob(p, format!("{loc}[{k}]")))
                    .collect::<Result<Vec<_>>>()?;
                entries[index(lambda, &at)?] = Some(parsed);
            }
            let entries = entries
                .into_iter()
                .enumerate()
                .map(|(l, row)| {
                    row.ok_or_else(|| {
                        schema(format!("{at}.{}", space.states()[l]), "missing row")
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            responses.push(ResponseTable {
                context: r.context.clone(),
                preparation: r.preparation.clone(),
                outcomes: r.outcomes.clone(),
                entries,
            });
        }

        let fragment = match &raw.fragment {
            None => None,
            Some(entries) => {
                let mut f = Fragment::default();
                for (i, e) in entries.iter().enumerate() {
                    let at = format!("fragment[{i}].probabilities");
                    if e.outcomes.len() != e.probabilities.len() {
                        return Err(schema(at, "length differs from outcomes"));
                    }
                    let dist = e
                        .outcomes
                        .iter()
                        .zip(&e.probabilities)
                        .enumerate()
                        .map(|(k, (o, p))| Ok((o.clone(), parse_prob(p, format!("{at}[{k}]"))?)))
                        .collect::<Result<Vec<_>>>()?;
                    f.push(&e.preparation, &e.context, Distribution::new(dist));
                }
                Some(f)
            }
        };

        let model = OntologicalModel::new(space, epistemics, responses, raw.assumptions)
            .map_err(|e| schema("model", e.to_string()))?;
        Ok(Self { model, fragment })
    }

    fn to_raw(&self) -> RawModel {
        let m = &self.model;
        let states = m.space().states();
        RawModel {
            ontic_states: states.to_vec(),
            epistemic_states: m
                .epistemics()
                .iter()
                .map(|e| RawEpistemic {
                    preparation: e.preparation.clone(),
                    context: e.context.clone(),
                    weights: states
                        .iter()
                        .zip(&e.weights)
                        .filter(|(_, w)| !w.is_zero())
                        .map(|(l, w)| (l.clone(), format_rational(w)))
                        .collect(),
                })
                .collect(),
            responses: m
                .responses()
                .iter()
                .map(|r| RawResponse {
                    context: r.context.clone(),
                    preparation: r.preparation.clone(),
                    outcomes: r.outcomes.clone(),
                    entries: states
                        .iter()
                        .zip(&r.entries)
                        .map(|(l, row)| (l.clone(), row.iter().map(format_rational).collect()))
                        .collect(),
                })
                .collect(),
            assumptions: m.flags(),
            fragment: self.fragment.as_ref().map(|f| {
                f.entries()
                    .iter()
                    .map(|e| RawFragmentEntry {
                        preparation: e.preparation.clone(),
                        context: e.context.clone(),
                        outcomes: e.distribution.outcomes().map(String::from).collect(),
                        probabilities: e
                            .distribution
                            .entries()
                            .iter()
                            .map(|(_, p)| format_rational(p))
                            .collect(),
                    })
                    .collect()
            }),
        }
    }

    /// Pretty JSON with sorted keys; byte-identical for equal documents.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self.to_raw()).expect("plain data serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
        "ontic_states": ["l0", "l1"],
        "epistemic_states": [{"preparation": "p", "weights": {"l0": "0.25", "l1": "3/4"}}],
        "responses": [{"context": "M", "outcomes": ["a", "b"],
                       "entries": {"l0": ["1", "0"], "l1": ["1/2", "1/2"]}}],
        "assumptions": {"psi_anomic": true, "pip": true, "pip_ps": false, "roi": false}
    }"#;

    #[test]
    fn round_trip() {
        let doc = ModelDocument::from_json(SAMPLE).unwrap();
        assert!(doc.model.flags().psi_anomic);
        let text = doc.to_json();
        let again = ModelDocument::from_json(&text).unwrap();
        assert_eq!(again, doc);
        assert_eq!(again.to_json(), text);
        assert!(text.contains("\"3/4\""));
    }

    #[test]
    fn bad_probability_has_location() {
        let bad = SAMPLE.replace("\"1/2\", \"1/2\"", "\"1/2\", \"x\"");
        match ModelDocument::from_json(&bad) {
            Err(Error::Schema { location, .. }) => assert_eq!(location, "responses[0].entries.l1[1]"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_state_and_missing_row() {
        let bad = SAMPLE.replace("\"l1\": \"3/4\"", "\"l9\": \"3/4\"");
        match ModelDocument::from_json(&bad) {
            Err(Error::Schema { location, .. }) => assert_eq!(location, "epistemic_states[0].weights.l9"),
            other => panic!("unexpected {other:?}"),
        }
        let missing = SAMPLE.replace(", \"l1\": [\"1/2\", \"1/2\"]", "");
        match ModelDocument::from_json(&missing) {
            Err(Error::Schema { location, .. }) => assert_eq!(location, "responses[0].entries.l1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_line() {
        match ModelDocument::from_json("{\n  \"ontic_states\": [\n") {
            Err(Error::Schema { location, .. }) => assert!(location.starts_with("line ")),
            other => panic!("unexpected {other:?}"),
        }
    }
}
