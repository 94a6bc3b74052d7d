//! JSON input documents for the `check` command and the report they produce.
//!
//! ```json
//! {
//!   "space": { "points": 2, "opens": [[1], [0, 1]] },
//!   "generators": [[0, 1]],
//!   "group": "Z"
//! }
//! ```
//!
//! The space is given by `opens` (`∅` implicit) or by `min_open`. Exactly one
//! of `relation` (pairs), `partition` (blocks) or `generators` (permutations,
//! with `group` either `"Z"` or `"finite"`, default `"Z"`) follows. Errors name
//! the offending key.

use serde::Serialize;
use serde_json::Value;

use crate::actions::{self, ActionSpec, GroupKind, PeriodicityProfile, SyndeticReport};
use crate::checkers::{self, Report};
use crate::error::{Error, Result};
use crate::finspace::FinSpace;
use crate::pointset::PointSet;
use crate::relation::{self, Relation};

/// Spaces up to this size list their closed sets in reports.
pub const CLOSED_SET_LISTING_CAP: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dynamics {
    Relation(Relation),
    Partition(Relation),
    Action(ActionSpec),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckInput {
    pub space: FinSpace,
    pub dynamics: Dynamics,
}

fn input_err(key: impl Into<String>, reason: impl Into<String>) -> Error {
    Error::Input {
        key: key.into(),
        reason: reason.into(),
    }
}

fn index(v: &Value, key: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| input_err(key, format!("expected a point index, got {v}")))
}

fn array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| input_err(key, format!("expected an array, got {v}")))
}

fn index_list(v: &Value, key: &str) -> Result<Vec<usize>> {
    array(v, key)?
        .iter()
        .enumerate()
        .map(|(i, x)| index(x, &format!("{key}[{i}]")))
        .collect()
}

fn point_set(v: &Value, n: usize, key: &str) -> Result<PointSet> {
    let idx = index_list(v, key)?;
    PointSet::try_from_indices(n, idx.iter().copied())
        .map_err(|p| input_err(key, format!("point {p} is outside 0..{n}")))
}

pub fn parse_space(v: &Value) -> Result<FinSpace> {
    let obj = v
        .as_object()
        .ok_or_else(|| input_err("space", "expected an object"))?;
    let n = index(
        obj.get("points").ok_or_else(|| input_err("space.points", "missing"))?,
        "space.points",
    )?;
    if n == 0 {
        return Err(input_err("space.points", "the carrier must be nonempty"));
    }
    match (obj.get("opens"), obj.get("min_open")) {
        (Some(opens), None) => {
            let sets = array(opens, "space.opens")?
                .iter()
                .enumerate()
                .map(|(i, s)| point_set(s, n, &format!("space.opens[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            FinSpace::build(n, &sets).map_err(|e| input_err("space.opens", e.to_string()))
        }
        (None, Some(mins)) => {
            let list = array(mins, "space.min_open")?;
            if list.len() != n {
                return Err(input_err(
                    "space.min_open",
                    format!("expected {n} sets, got {}", list.len()),
                ));
            }
            let sets = list
                .iter()
                .enumerate()
                .map(|(i, s)| point_set(s, n, &format!("space.min_open[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            FinSpace::from_min_open(sets).map_err(|e| input_err("space.min_open", e.to_string()))
        }
        (Some(_), Some(_)) => Err(input_err("space", "give either `opens` or `min_open`, not both")),
        (None, None) => Err(input_err("space", "missing `opens` or `min_open`")),
    }
}

pub fn parse_check(text: &str) -> Result<CheckInput> {
    let doc: Value = serde_json::from_str(text).map_err(|e| input_err("$", e.to_string()))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| input_err("$", "expected a JSON object"))?;
    let space = parse_space(obj.get("space").ok_or_else(|| input_err("space", "missing"))?)?;
    let n = space.len();

    let given: Vec<&str> = ["relation", "partition", "generators"]
        .into_iter()
        .filter(|k| obj.contains_key(*k))
        .collect();
    if given.len() != 1 {
        return Err(input_err(
            "$",
            format!("expected exactly one of `relation`, `partition`, `generators`, got {given:?}"),
        ));
    }
    if obj.contains_key("group") && given[0] != "generators" {
        return Err(input_err("group", "only meaningful with `generators`"));
    }
    let dynamics = match given[0] {
        "relation" => {
            let pairs = array(&obj["relation"], "relation")?
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let key = format!("relation[{i}]");
                    match index_list(p, &key)?.as_slice() {
                        [x, y] => Ok((*x, *y)),
                        _ => Err(input_err(key, "expected a pair [x, y]")),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let e = Relation::from_pairs(n, pairs).map_err(|e| input_err("relation", e.to_string()))?;
            if !e.is_equivalence() {
                return Err(input_err("relation", "must be an equivalence relation"));
            }
            Dynamics::Relation(e)
        }
        "partition" => {
            let blocks = array(&obj["partition"], "partition")?
                .iter()
                .enumerate()
                .map(|(i, b)| index_list(b, &format!("partition[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            Dynamics::Partition(
                Relation::from_partition(n, &blocks).map_err(|e| input_err("partition", e.to_string()))?,
            )
        }
        _ => {
            let generators = array(&obj["generators"], "generators")?
                .iter()
                .enumerate()
                .map(|(i, g)| index_list(g, &format!("generators[{i}]")))
                .collect::<Result<Vec<_>>>()?;
            let group = match obj.get("group").map(|g| g.as_str()) {
                None | Some(Some("Z")) => GroupKind::Integers,
                Some(Some("finite")) => GroupKind::Finite,
                _ => return Err(input_err("group", "expected \"Z\" or \"finite\"")),
            };
            Dynamics::Action(
                ActionSpec::new(space.clone(), generators, group)
                    .map_err(|e| input_err("generators", e.to_string()))?,
            )
        }
    };
    Ok(CheckInput { space, dynamics })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub input: &'static str,
    pub space: FinSpace,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_sets: Option<Vec<PointSet>>,
    /// The equivalence `E` (orbit relation for actions).
    pub relation: Relation,
    /// `R = Ê`, pairing each point with the closure of its class.
    pub orbit_closure_relation: Relation,
    pub analysis: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub syndetic: Option<SyndeticReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periodicity: Option<PeriodicityProfile>,
}

impl CheckReport {
    /// Internal cross-check failures; verdicts themselves never count.
    pub fn violations(&self) -> &[String] {
        &self.analysis.violations
    }
}

pub fn check(input: &CheckInput) -> Result<CheckReport> {
    let space = &input.space;
    let (kind, e, syndetic, periodicity) = match &input.dynamics {
        Dynamics::Relation(e) => ("relation", e.clone(), None, None),
        Dynamics::Partition(e) => ("partition", e.clone(), None, None),
        Dynamics::Action(a) => (
            "generators",
            actions::orbit_relation(a),
            Some(actions::flow_pap_syndetic(a)?),
            Some(actions::periodicity_profile(a)?),
        ),
    };
    Ok(CheckReport {
        input: kind,
        space: space.clone(),
        closed_sets: (space.len() <= CLOSED_SET_LISTING_CAP).then(|| space.closed_sets()),
        orbit_closure_relation: relation::hat(space, &e)?,
        analysis: checkers::analyze(space, &e)?,
        relation: e,
        syndetic,
        periodicity,
    })
}
