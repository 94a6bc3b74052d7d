//! Named fixtures with committed expected reports.
//!
//! `ex1`, `ex002` and `ex06` render deterministic JSON that must match the
//! files under `gallery/` byte for byte. `ex04` is floating point and is
//! judged by tolerances instead. Set `APDYN_BLESS=1` when running the crate's
//! unit tests to rewrite the committed files.

use serde::Serialize;

use crate::actions::{ActionSpec, GroupKind};
use crate::finspace::FinSpace;
use crate::flowdemo::{self, FlowConfig, FlowReport};
use crate::io::{self, CheckInput, CheckReport, Dynamics};
use crate::symspace::{self, SymReport, SymSystem, TruncationCheck};

pub const NAMES: [&str; 4] = ["ex1", "ex002", "ex06", "ex04"];

/// Truncation levels compared against the symbolic tower.
pub const TRUNCATION_LEVELS: [u64; 3] = [5, 10, 20];

/// The Sierpiński space with the trivial ℤ-action.
pub fn ex1_input() -> CheckInput {
    let space = FinSpace::sierpinski();
    let action = ActionSpec::new(space.clone(), vec![vec![0, 1]], GroupKind::Integers).expect("identity");
    CheckInput {
        space,
        dynamics: Dynamics::Action(action),
    }
}

pub fn ex1_report() -> CheckReport {
    io::check(&ex1_input()).expect("fixed input")
}

pub fn ex002_report() -> SymReport {
    SymSystem::ex002().analyze().expect("fixed system")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub symbolic: SymReport,
    pub truncations: Vec<TruncationCheck>,
}

pub fn ex06_report() -> TowerReport {
    TowerReport {
        symbolic: SymSystem::ex06().analyze().expect("fixed system"),
        truncations: TRUNCATION_LEVELS
            .iter()
            .map(|&n| symspace::truncation_check(n).expect("fixed truncation"))
            .collect(),
    }
}

pub fn ex04_report(config: FlowConfig) -> FlowReport {
    flowdemo::flow_report(config).expect("fixed start points lie in the disk")
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Expected JSON for the exact fixtures.
pub fn expected(name: &str) -> Option<&'static str> {
    match name {
        "ex1" => Some(include_str!("../gallery/ex1.json")),
        "ex002" => Some(include_str!("../gallery/ex002.json")),
        "ex06" => Some(include_str!("../gallery/ex06.json")),
        _ => None,
    }
}

/// Rendered JSON for a fixture, `None` for unknown names.
pub fn render(name: &str) -> Option<String> {
    Some(match name {
        "ex1" => pretty(&ex1_report()),
        "ex002" => pretty(&ex002_report()),
        "ex06" => pretty(&ex06_report()),
        "ex04" => pretty(&ex04_report(FlowConfig::default())),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GalleryOutcome {
    pub name: String,
    pub matches: bool,
    /// First differing line (exact fixtures) or failed tolerance checks (`ex04`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub drift: Option<String>,
    #[serde(skip)]
    pub rendered: String,
}

fn first_difference(expected: &str, actual: &str) -> Option<String> {
    let mut e = expected.lines();
    let mut a = actual.lines();
    for line in 1.. {
        match (e.next(), a.next()) {
            (None, None) => return None,
            (x, y) if x == y => continue,
            (x, y) => {
                return Some(format!(
                    "line {line}: expected {:?}, got {:?}",
                    x.unwrap_or("<eof>"),
                    y.unwrap_or("<eof>")
                ))
            }
        }
    }
    unreachable!()
}

/// Runs a fixture and compares it with its expectation.
pub fn run(name: &str, config: FlowConfig) -> Option<GalleryOutcome> {
    if name == "ex04" {
        let report = ex04_report(config);
        let mut failed = Vec::new();
        failed.extend(report.drift.iter().filter(|d| !d.ok).map(|d| format!("drift at r = {}: {:e}", d.r, d.drift)));
        failed.extend(
            report
                .periods
                .iter()
                .filter(|p| !p.ok)
                .map(|p| format!("period at r = {}: relative error {:e}", p.estimate.r, p.estimate.relative_error)),
        );
        if !report.order_ok {
            failed.push(format!("order factor {}", report.order.factor));
        }
        if !report.witness.boundary_fixed || report.witness.entries.iter().any(|e| !e.in_relation) {
            failed.push("witness sequence".into());
        }
        return Some(GalleryOutcome {
            name: name.into(),
            matches: failed.is_empty(),
            drift: (!failed.is_empty()).then(|| failed.join("; ")),
            rendered: pretty(&report),
        });
    }
    let rendered = render(name)?;
    let drift = first_difference(expected(name)?, &rendered);
    Some(GalleryOutcome {
        name: name.into(),
        matches: drift.is_none(),
        drift,
        rendered,
    })
}
