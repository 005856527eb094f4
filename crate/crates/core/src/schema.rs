//! JSON document schemas for CLI inputs.
//!
//! Action documents:
//! ```json
//! {
//!   "group": {"elements": ["e", "g"], "table": [[0, 1], [1, 0]]},
//!   "space": {"atoms": ["x", "y"], "weights": ["1/2", 0.5]},
//!   "perm":  {"e": [0, 1], "g": [1, 0]}
//! }
//! ```
//! Weights may be JSON numbers (converted to their exact binary rational)
//! or strings `"p/q"`. Graph documents are `{"n": 5, "edges": [[0,1], …]}`.
//! ITPFI spec documents are tagged by `kind`: `powers`, `constant`,
//! `periodic`, or `explicit`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

use crate::actions::{make_action, FiniteAction, FiniteProbSpace, Weight};
use crate::error::{Error, Result};
use crate::groups::FinGroup;
use crate::itpfi::{powers_spec, ITPFISpec};
use crate::mekler::SimpleGraph;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum WeightInput {
    Number(f64),
    Fraction(String),
}

impl WeightInput {
    pub fn to_weight(&self) -> Result<Weight> {
        match self {
            WeightInput::Number(x) => BigRational::from_float(*x)
                .ok_or_else(|| Error::invalid(format!("weight {x} is not finite"))),
            WeightInput::Fraction(s) => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s.trim(), "1"),
                };
                let num: BigInt = num
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad numerator in `{s}`")))?;
                let den: BigInt = den
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad denominator in `{s}`")))?;
                if den == BigInt::from(0) {
                    return Err(Error::invalid(format!("zero denominator in `{s}`")));
                }
                Ok(BigRational::new(num, den))
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub elements: Vec<String>,
    pub table: Vec<Vec<u32>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub atoms: Vec<String>,
    pub weights: Vec<WeightInput>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub group: GroupDoc,
    pub space: SpaceDoc,
    pub perm: BTreeMap<String, Vec<usize>>,
}

fn json_err(context: &str, err: serde_json::Error) -> Error {
    Error::invalid(format!(
        "{context}: {err} (line {}, column {})",
        err.line(),
        err.column()
    ))
}

pub fn parse_group(doc: &GroupDoc) -> Result<FinGroup> {
    FinGroup::from_table(doc.elements.clone(), doc.table.clone())
}

pub fn parse_space(doc: &SpaceDoc) -> Result<FiniteProbSpace> {
    let weights = doc
        .weights
        .iter()
        .map(|w| w.to_weight())
        .collect::<Result<Vec<_>>>()?;
    FiniteProbSpace::new(doc.atoms.clone(), weights)
}

/// Parses and fully validates an action document.
pub fn parse_action(json: &str) -> Result<FiniteAction> {
    let doc: ActionDoc =
        serde_json::from_str(json).map_err(|e| json_err("action document", e))?;
    let group = parse_group(&doc.group)?;
    let space = parse_space(&doc.space)?;
    let mut perms = Vec::with_capacity(group.order());
    for g in 0..group.order() as u32 {
        let name = group.name(g);
        let p = doc.perm.get(name).ok_or_else(|| {
            Error::invalid(format!("perm map is missing group element `{name}`"))
        })?;
        perms.push(p.clone());
    }
    if doc.perm.len() != group.order() {
        return Err(Error::invalid(
            "perm map has entries for unknown group elements",
        ));
    }
    make_action(group, space, perms)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDoc {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn parse_graph(json: &str) -> Result<SimpleGraph> {
    let doc: GraphDoc = serde_json::from_str(json).map_err(|e| json_err("graph document", e))?;
    SimpleGraph::new(doc.n, &doc.edges)
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SpecDoc {
    Powers {
        lambda: f64,
    },
    Constant {
        alpha: Vec<f64>,
    },
    Periodic {
        #[serde(default)]
        prefix: Vec<Vec<f64>>,
        cycle: Vec<Vec<f64>>,
    },
    Explicit {
        factors: Vec<Vec<f64>>,
    },
}

pub fn parse_itpfi_spec(json: &str) -> Result<ITPFISpec> {
    let doc: SpecDoc = serde_json::from_str(json).map_err(|e| json_err("ITPFI spec", e))?;
    let spec = match doc {
        SpecDoc::Powers { lambda } => powers_spec(lambda)?,
        SpecDoc::Constant { alpha } => ITPFISpec::Constant(alpha),
        SpecDoc::Periodic { prefix, cycle } => ITPFISpec::EventuallyPeriodic { prefix, cycle },
        SpecDoc::Explicit { factors } => ITPFISpec::Explicit(factors),
    };
    spec.validate()?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::ratio;

    #[test]
    fn action_round_trip() {
        let json = r#"{
            "group": {"elements": ["e", "g"], "table": [[0, 1], [1, 0]]},
            "space": {"atoms": ["x", "y"], "weights": ["1/2", 0.5]},
            "perm": {"e": [0, 1], "g": [1, 0]}
        }"#;
        let action = parse_action(json).unwrap();
        assert_eq!(action.group.order(), 2);
        assert_eq!(action.space.weights[0], ratio(1, 2));
        assert!(action.report().is_free);
    }

    #[test]
    fn malformed_json_reports_location() {
        let err = parse_action("{ not json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "missing location in: {msg}");
    }

    #[test]
    fn missing_perm_entry_is_invalid() {
        let json = r#"{
            "group": {"elements": ["e", "g"], "table": [[0, 1], [1, 0]]},
            "space": {"atoms": ["x"], "weights": [1.0]},
            "perm": {"e": [0]}
        }"#;
        assert!(parse_action(json).is_err());
    }

    #[test]
    fn bad_weights_are_rejected() {
        for w in ["\"1/0\"", "\"x/2\"", "-0.5"] {
            let json = format!(
                r#"{{
                    "group": {{"elements": ["e"], "table": [[0]]}},
                    "space": {{"atoms": ["x"], "weights": [{w}]}},
                    "perm": {{"e": [0]}}
                }}"#
            );
            assert!(parse_action(&json).is_err(), "accepted weight {w}");
        }
    }

    #[test]
    fn graph_doc_parses() {
        let g = parse_graph(r#"{"n": 5, "edges": [[0,1],[1,2],[2,3],[3,4],[4,0]]}"#).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 5);
        assert!(parse_graph(r#"{"n": 2, "edges": [[0,2]]}"#).is_err());
    }

    #[test]
    fn itpfi_docs_parse() {
        let spec = parse_itpfi_spec(r#"{"kind": "powers", "lambda": 0.5}"#).unwrap();
        assert!(matches!(spec, ITPFISpec::Constant(_)));
        let spec = parse_itpfi_spec(
            r#"{"kind": "periodic", "prefix": [[0.5, 0.5]], "cycle": [[0.25, 0.75]]}"#,
        )
        .unwrap();
        assert!(matches!(spec, ITPFISpec::EventuallyPeriodic { .. }));
        assert!(parse_itpfi_spec(r#"{"kind": "powers", "lambda": 2.0}"#).is_err());
        assert!(parse_itpfi_spec(r#"{"kind": "constant", "alpha": [0.3, 0.3]}"#).is_err());
    }
}
