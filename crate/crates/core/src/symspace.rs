//! Two countable compact spaces with ℤ-actions, decided exactly.
//!
//! * [`SpaceKind::CofiniteWithF`]: the circle `ℝ/ℤ` whose opens are `∅`, the
//!   cofinite sets `U` and the sets `U \ F`, where `F = ℤα mod 1` for a fixed
//!   irrational `α`. Points are written `q + mα` with `q` rational in `[0, 1)`;
//!   since `α` is irrational, `q + mα = q' + m'α` iff `q = q'` and `m = m'`, and
//!   the point lies in `F` iff `q = 0`. No floating point is involved. The
//!   closed sets are `∅`, `X`, the finite sets `E` and the sets `E ∪ F`.
//! * [`SpaceKind::DiscretePlusInfinity`]: the basepoint orbits `{k/n}` of the
//!   circle tower `S¹ × {1/n : n ≥ 2}` together with the compactifying point
//!   `∞`. Its trace topology makes every level point isolated and gives `∞`
//!   the cofinite neighbourhoods; the closed sets are the finite sets of level
//!   points and every set containing `∞`.
//!
//! Every decision is a case analysis over point types (in `F` or not, level
//! point or `∞`), and every verdict carries a [`Certificate`].

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::actions::{self, ActionSpec, GroupKind};
use crate::checkers;
use crate::finspace::FinSpace;

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("set shape {shape} is not meaningful in the {kind} space")]
    UnsupportedSetShape { shape: String, kind: &'static str },
    #[error("point {point} does not belong to the {kind} space")]
    InvalidPoint { point: String, kind: &'static str },
    #[error("{0} is not open")]
    NotOpen(String),
    #[error("{point} is not in {set}")]
    PointNotInU { point: String, set: String },
}

pub type SymResult<T> = Result<T, SymError>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymPoint {
    /// `q + m·α mod 1`, `q ∈ [0, 1)`.
    Rot { q: Rational, m: i64 },
    /// Basepoint orbit point `k/n` on level `n ≥ 2`, displayed `n:k`.
    Level { n: u64, k: u64 },
    Infinity,
}

impl SymPoint {
    /// Normalizes `q` into `[0, 1)`.
    pub fn rot(q: Rational, m: i64) -> Self {
        let q = q - q.floor();
        SymPoint::Rot { q, m }
    }

    pub fn rot_int(num: i64, den: i64, m: i64) -> Self {
        Self::rot(Rational::new(num, den), m)
    }

    /// The point `0 ∈ F`.
    pub fn zero() -> Self {
        Self::rot(Rational::from_integer(0), 0)
    }

    pub fn level(n: u64, k: u64) -> Self {
        SymPoint::Level { n, k: k % n }
    }
}

impl fmt::Display for SymPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymPoint::Rot { q, m } => match (q == &Rational::from_integer(0), *m) {
                (true, 0) => write!(f, "0"),
                (true, m) => write!(f, "{m}α"),
                (false, 0) => write!(f, "{q}"),
                (false, m) => write!(f, "{q}{m:+}α"),
            },
            SymPoint::Level { n, k } => write!(f, "{n}:{k}"),
            SymPoint::Infinity => write!(f, "∞"),
        }
    }
}

impl Serialize for SymPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Finitely described subsets of a symbolic space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", content = "of", rename_all = "kebab-case")]
pub enum SymSet {
    Empty,
    Whole,
    Finite(Vec<SymPoint>),
    /// Everything except the listed points.
    Cofinite(Vec<SymPoint>),
    /// Everything except the listed points and `F`.
    CofiniteMinusF(Vec<SymPoint>),
    /// `F` together with the listed points.
    FPlusFinite(Vec<SymPoint>),
    /// The orbit of a point.
    Orbit(SymPoint),
    /// All points of one level.
    Level(u64),
    /// `{∞}` together with a set.
    WithInfinity(Box<SymSet>),
}

fn normalize(points: &[SymPoint]) -> Vec<SymPoint> {
    points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
}

impl SymSet {
    pub fn finite(points: &[SymPoint]) -> Self {
        SymSet::Finite(normalize(points))
    }

    pub fn cofinite(excluded: &[SymPoint]) -> Self {
        SymSet::Cofinite(normalize(excluded))
    }

    pub fn cofinite_minus_f(excluded: &[SymPoint]) -> Self {
        SymSet::CofiniteMinusF(normalize(excluded))
    }

    pub fn f_plus(points: &[SymPoint]) -> Self {
        SymSet::FPlusFinite(normalize(points))
    }

    fn shape_name(&self) -> String {
        match self {
            SymSet::Empty => "empty".into(),
            SymSet::Whole => "whole".into(),
            SymSet::Finite(_) => "finite".into(),
            SymSet::Cofinite(_) => "cofinite".into(),
            SymSet::CofiniteMinusF(_) => "cofinite-minus-F".into(),
            SymSet::FPlusFinite(_) => "F-plus-finite".into(),
            SymSet::Orbit(_) => "orbit".into(),
            SymSet::Level(_) => "level".into(),
            SymSet::WithInfinity(_) => "with-infinity".into(),
        }
    }
}

fn list(points: &[SymPoint]) -> String {
    points.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for SymSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymSet::Empty => write!(f, "∅"),
            SymSet::Whole => write!(f, "X"),
            SymSet::Finite(p) => write!(f, "{{{}}}", list(p)),
            SymSet::Cofinite(p) => write!(f, "X \\ {{{}}}", list(p)),
            SymSet::CofiniteMinusF(p) => write!(f, "X \\ (F ∪ {{{}}})", list(p)),
            SymSet::FPlusFinite(p) if p.is_empty() => write!(f, "F"),
            SymSet::FPlusFinite(p) => write!(f, "F ∪ {{{}}}", list(p)),
            SymSet::Orbit(x) => write!(f, "G·{x}"),
            SymSet::Level(n) => write!(f, "level {n}"),
            SymSet::WithInfinity(s) => write!(f, "{{∞}} ∪ {s}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpaceKind {
    /// Cofinite-type topology on `ℝ/ℤ`; `with_f = false` drops `F` (plain cofinite topology).
    CofiniteWithF { with_f: bool },
    DiscretePlusInfinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymAction {
    /// `n·[x] = [αn + x]`.
    Rotation,
    /// `(n, k) ↦ (n, k + 1 mod n)`, `∞` fixed.
    LevelRotation,
    Identity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymSystem {
    pub name: String,
    pub kind: SpaceKind,
    pub action: SymAction,
}

impl SymSystem {
    /// Irrational rotation on the cofinite-with-`F` circle.
    pub fn ex002() -> Self {
        SymSystem {
            name: "ex002".into(),
            kind: SpaceKind::CofiniteWithF { with_f: true },
            action: SymAction::Rotation,
        }
    }

    /// Level rotations on the compactified circle tower, restricted to basepoint orbits.
    pub fn ex06() -> Self {
        SymSystem {
            name: "ex06".into(),
            kind: SpaceKind::DiscretePlusInfinity,
            action: SymAction::LevelRotation,
        }
    }

    /// The cofinite circle with `F = ∅` and the trivial action.
    pub fn cofinite_trivial() -> Self {
        SymSystem {
            name: "cofinite-trivial".into(),
            kind: SpaceKind::CofiniteWithF { with_f: false },
            action: SymAction::Identity,
        }
    }

    /// The cofinite circle with `F = ∅` and the irrational rotation.
    pub fn cofinite_rotation() -> Self {
        SymSystem {
            name: "cofinite-rotation".into(),
            kind: SpaceKind::CofiniteWithF { with_f: false },
            action: SymAction::Rotation,
        }
    }

    fn kind_name(&self) -> &'static str {
        match self.kind {
            SpaceKind::CofiniteWithF { with_f: true } => "cofinite-with-F",
            SpaceKind::CofiniteWithF { with_f: false } => "cofinite",
            SpaceKind::DiscretePlusInfinity => "discrete-plus-infinity",
        }
    }

    fn has_f(&self) -> bool {
        matches!(self.kind, SpaceKind::CofiniteWithF { with_f: true })
    }

    fn is_cofinite_kind(&self) -> bool {
        matches!(self.kind, SpaceKind::CofiniteWithF { .. })
    }

    pub fn check_point(&self, p: &SymPoint) -> SymResult<()> {
        let ok = match (self.kind, p) {
            (SpaceKind::CofiniteWithF { .. }, SymPoint::Rot { .. }) => true,
            (SpaceKind::DiscretePlusInfinity, SymPoint::Level { n, k }) => *n >= 2 && k < n,
            (SpaceKind::DiscretePlusInfinity, SymPoint::Infinity) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(SymError::InvalidPoint {
                point: p.to_string(),
                kind: self.kind_name(),
            })
        }
    }

    fn check_set(&self, s: &SymSet) -> SymResult<()> {
        let unsupported = || SymError::UnsupportedSetShape {
            shape: s.shape_name(),
            kind: self.kind_name(),
        };
        match s {
            SymSet::Empty | SymSet::Whole => Ok(()),
            SymSet::Finite(p) | SymSet::Cofinite(p) => p.iter().try_for_each(|x| self.check_point(x)),
            SymSet::CofiniteMinusF(p) | SymSet::FPlusFinite(p) => {
                if !self.is_cofinite_kind() {
                    return Err(unsupported());
                }
                p.iter().try_for_each(|x| self.check_point(x))
            }
            SymSet::Orbit(x) => self.check_point(x),
            SymSet::Level(n) => {
                if self.is_cofinite_kind() || *n < 2 {
                    return Err(unsupported());
                }
                Ok(())
            }
            SymSet::WithInfinity(inner) => {
                if self.is_cofinite_kind() {
                    return Err(unsupported());
                }
                self.check_set(inner)
            }
        }
    }

    /// Whether `p` lies in `F`.
    pub fn in_f(&self, p: &SymPoint) -> bool {
        self.has_f() && matches!(p, SymPoint::Rot { q, .. } if q.is_integer())
    }

    /// `t·p`.
    pub fn act(&self, p: &SymPoint, t: i64) -> SymPoint {
        match (self.action, p) {
            (SymAction::Rotation, SymPoint::Rot { q, m }) => SymPoint::Rot { q: *q, m: m + t },
            (SymAction::LevelRotation, SymPoint::Level { n, k }) => {
                let n_i = *n as i64;
                SymPoint::level(*n, (*k as i64 + t).mod_floor(&n_i) as u64)
            }
            _ => p.clone(),
        }
    }

    /// Orbit length, `None` when infinite.
    pub fn orbit_len(&self, p: &SymPoint) -> Option<u64> {
        match (self.action, p) {
            (SymAction::Rotation, SymPoint::Rot { .. }) => None,
            (SymAction::LevelRotation, SymPoint::Level { n, .. }) => Some(*n),
            _ => Some(1),
        }
    }

    pub fn same_orbit(&self, a: &SymPoint, b: &SymPoint) -> bool {
        match (self.action, a, b) {
            (SymAction::Rotation, SymPoint::Rot { q, .. }, SymPoint::Rot { q: q2, .. }) => q == q2,
            (SymAction::LevelRotation, SymPoint::Level { n, .. }, SymPoint::Level { n: n2, .. }) => n == n2,
            _ => a == b,
        }
    }

    /// The orbit as a set of finite shape, when the orbit is finite.
    fn finite_orbit(&self, p: &SymPoint) -> Option<SymSet> {
        match self.orbit_len(p)? {
            1 => Some(SymSet::finite(std::slice::from_ref(p))),
            _ => match p {
                SymPoint::Level { n, .. } => Some(SymSet::Level(*n)),
                _ => unreachable!("only level points have nontrivial finite orbits"),
            },
        }
    }

    pub fn contains(&self, s: &SymSet, p: &SymPoint) -> bool {
        match s {
            SymSet::Empty => false,
            SymSet::Whole => true,
            SymSet::Finite(l) => l.contains(p),
            SymSet::Cofinite(ex) => !ex.contains(p),
            SymSet::CofiniteMinusF(ex) => !ex.contains(p) && !self.in_f(p),
            SymSet::FPlusFinite(l) => self.in_f(p) || l.contains(p),
            SymSet::Orbit(b) => self.same_orbit(b, p),
            SymSet::Level(n) => matches!(p, SymPoint::Level { n: m, .. } if m == n),
            SymSet::WithInfinity(inner) => *p == SymPoint::Infinity || self.contains(inner, p),
        }
    }

    fn is_finite_set(&self, s: &SymSet) -> bool {
        match s {
            SymSet::Empty | SymSet::Finite(_) | SymSet::Level(_) => true,
            SymSet::FPlusFinite(_) => !self.has_f(),
            SymSet::Orbit(b) => self.orbit_len(b).is_some(),
            SymSet::WithInfinity(inner) => self.is_finite_set(inner),
            SymSet::Whole | SymSet::Cofinite(_) | SymSet::CofiniteMinusF(_) => false,
        }
    }

    /// Least closed superset.
    pub fn closure(&self, s: &SymSet) -> SymResult<SymSet> {
        self.check_set(s)?;
        Ok(match self.kind {
            SpaceKind::CofiniteWithF { .. } => match s {
                SymSet::Empty => SymSet::Empty,
                SymSet::Whole => SymSet::Whole,
                SymSet::Finite(l) => SymSet::Finite(l.clone()),
                SymSet::FPlusFinite(l) if self.has_f() => SymSet::FPlusFinite(l.clone()),
                SymSet::FPlusFinite(l) => SymSet::Finite(l.clone()),
                SymSet::Orbit(b) => match self.finite_orbit(b) {
                    Some(orbit) => orbit,
                    // an infinite orbit inside F closes to F; one outside F is dense
                    None if self.in_f(b) => SymSet::FPlusFinite(Vec::new()),
                    None => SymSet::Whole,
                },
                // infinite with infinitely many points outside F
                SymSet::Cofinite(_) | SymSet::CofiniteMinusF(_) => SymSet::Whole,
                SymSet::Level(_) | SymSet::WithInfinity(_) => unreachable!("rejected by check_set"),
            },
            SpaceKind::DiscretePlusInfinity => match s {
                SymSet::Orbit(b) => self.finite_orbit(b).expect("orbits are finite"),
                SymSet::Cofinite(ex) => SymSet::Cofinite(ex.iter().filter(|p| **p != SymPoint::Infinity).cloned().collect()),
                // finite level sets and sets containing ∞ are closed
                other => other.clone(),
            },
        })
    }

    pub fn is_closed(&self, s: &SymSet) -> SymResult<bool> {
        self.check_set(s)?;
        Ok(match self.kind {
            SpaceKind::CofiniteWithF { .. } => match s {
                SymSet::Empty | SymSet::Whole | SymSet::Finite(_) | SymSet::FPlusFinite(_) => true,
                SymSet::Orbit(b) => self.orbit_len(b).is_some() || self.in_f(b),
                SymSet::Cofinite(ex) => ex.is_empty(),
                SymSet::CofiniteMinusF(ex) => !self.has_f() && ex.is_empty(),
                SymSet::Level(_) | SymSet::WithInfinity(_) => unreachable!("rejected by check_set"),
            },
            SpaceKind::DiscretePlusInfinity => match s {
                SymSet::Cofinite(ex) => !ex.contains(&SymPoint::Infinity),
                _ => true,
            },
        })
    }

    pub fn is_open(&self, s: &SymSet) -> SymResult<bool> {
        self.check_set(s)?;
        Ok(match self.kind {
            SpaceKind::CofiniteWithF { .. } => match s {
                SymSet::Empty | SymSet::Whole | SymSet::Cofinite(_) | SymSet::CofiniteMinusF(_) => true,
                SymSet::Finite(l) => l.is_empty(),
                SymSet::FPlusFinite(l) => !self.has_f() && l.is_empty(),
                SymSet::Orbit(_) => false,
                SymSet::Level(_) | SymSet::WithInfinity(_) => unreachable!("rejected by check_set"),
            },
            SpaceKind::DiscretePlusInfinity => self.dpi_open(s),
        })
    }

    fn dpi_open(&self, s: &SymSet) -> bool {
        // a set containing ∞ is open iff it is cofinite
        !self.contains(s, &SymPoint::Infinity) || !self.is_finite_set(s)
    }

    /// Image of a set under `t·`, as a set of the same shape.
    pub fn image(&self, s: &SymSet, t: i64) -> SymSet {
        let shift = |l: &[SymPoint]| -> Vec<SymPoint> { normalize(&l.iter().map(|p| self.act(p, t)).collect::<Vec<_>>()) };
        match s {
            SymSet::Empty | SymSet::Whole | SymSet::Level(_) => s.clone(),
            SymSet::Finite(l) => SymSet::Finite(shift(l)),
            SymSet::Cofinite(l) => SymSet::Cofinite(shift(l)),
            SymSet::CofiniteMinusF(l) => SymSet::CofiniteMinusF(shift(l)),
            SymSet::FPlusFinite(l) => SymSet::FPlusFinite(shift(l)),
            SymSet::Orbit(b) => SymSet::Orbit(b.clone()),
            SymSet::WithInfinity(inner) => SymSet::WithInfinity(Box::new(self.image(inner, t))),
        }
    }

    /// Orbit closure `R(x) = cl(G·x)`.
    pub fn orbit_closure(&self, x: &SymPoint) -> SymResult<SymSet> {
        self.closure(&SymSet::Orbit(x.clone()))
    }

    /// `(x, y) ∈ R`, i.e. `y ∈ cl(G·x)`.
    pub fn r_membership(&self, x: &SymPoint, y: &SymPoint) -> SymResult<bool> {
        self.check_point(y)?;
        Ok(self.contains(&self.orbit_closure(x)?, y))
    }

    /// Decides `(x, y) ∈ R̄`, the closure of the orbit-closure relation in `X × X`.
    pub fn bar_membership(&self, x: &SymPoint, y: &SymPoint) -> SymResult<BarMembership> {
        self.check_point(x)?;
        self.check_point(y)?;
        let in_r = self.r_membership(x, y)?;
        if in_r {
            return Ok(BarMembership {
                member: true,
                in_r,
                evidence: BarEvidence::InRelation,
                prose: format!("{y} ∈ cl(G·{x}), so ({x}, {y}) ∈ R ⊆ R̄"),
            });
        }
        match self.kind {
            SpaceKind::CofiniteWithF { .. } => {
                // Every neighbourhood is cofinite, possibly minus F, so any infinite
                // set missing F meets it.
                if self.action == SymAction::Rotation && !self.in_f(y) {
                    Ok(BarMembership {
                        member: true,
                        in_r,
                        evidence: BarEvidence::OrbitTimesPoint {
                            orbit_of: y.clone(),
                            fixed: y.clone(),
                        },
                        prose: format!(
                            "G·{y} × {{{y}}} ⊆ R because cl(G·{y}) = X; G·{y} is infinite and misses F, \
                             so it meets every neighbourhood of {x}; hence ({x}, {y}) ∈ cl(G·{y} × {{{y}}}) ⊆ R̄"
                        ),
                    })
                } else {
                    Ok(BarMembership {
                        member: true,
                        in_r,
                        evidence: BarEvidence::Diagonal,
                        prose: format!(
                            "the diagonal lies in R, and any two neighbourhoods of {x} and {y} share \
                             infinitely many points outside F, so ({x}, {y}) ∈ cl(diagonal) ⊆ R̄"
                        ),
                    })
                }
            }
            SpaceKind::DiscretePlusInfinity => {
                let (u, v) = self.separating_box(x, y);
                Ok(BarMembership {
                    member: false,
                    in_r,
                    prose: format!("{u} × {v} is an open neighbourhood of ({x}, {y}) missing R"),
                    evidence: BarEvidence::SeparatingBox { left: u, right: v },
                })
            }
        }
    }

    /// Open box around `(x, y) ∉ R` missing `R` (discrete-plus-infinity only).
    fn separating_box(&self, x: &SymPoint, y: &SymPoint) -> (SymSet, SymSet) {
        let around = |p: &SymPoint, other: &SymPoint| match p {
            SymPoint::Infinity => match other {
                SymPoint::Level { n, k: _ } => SymSet::Cofinite(self.level_points(*n)),
                _ => SymSet::Whole,
            },
            _ => SymSet::finite(std::slice::from_ref(p)),
        };
        (around(x, y), around(y, x))
    }

    fn level_points(&self, n: u64) -> Vec<SymPoint> {
        (0..n).map(|k| SymPoint::level(n, k)).collect()
    }

    /// Whether the open box `u × v` misses `R` (discrete-plus-infinity, where `R` is the orbit relation).
    pub fn box_misses_r(&self, u: &SymSet, v: &SymSet) -> bool {
        // R consists of the level squares and (∞, ∞).
        if self.contains(u, &SymPoint::Infinity) && self.contains(v, &SymPoint::Infinity) {
            return false;
        }
        let finite_side = if self.is_finite_set(u) { u } else { v };
        let other = if self.is_finite_set(u) { v } else { u };
        let points: Vec<SymPoint> = match finite_side {
            SymSet::Finite(l) => l.clone(),
            SymSet::Level(n) => self.level_points(*n),
            SymSet::Orbit(b) => match self.finite_orbit(b) {
                Some(SymSet::Level(n)) => self.level_points(n),
                _ => vec![b.clone()],
            },
            SymSet::Empty => Vec::new(),
            _ => return false,
        };
        points.iter().all(|p| match p {
            SymPoint::Level { n, .. } => self.level_points(*n).iter().all(|q| !self.contains(other, q)),
            _ => !self.contains(other, p),
        })
    }

    /// Return-time set `N(x, U) = {t : t·x ∈ U}` and its gap bound.
    pub fn syndetic(&self, x: &SymPoint, u: &SymSet) -> SymResult<SyndeticBound> {
        self.check_point(x)?;
        if !self.is_open(u)? {
            return Err(SymError::NotOpen(u.to_string()));
        }
        if !self.contains(u, x) {
            return Err(SymError::PointNotInU {
                point: x.to_string(),
                set: u.to_string(),
            });
        }
        match self.orbit_len(x) {
            Some(period) => {
                let residues: Vec<u64> = (0..period)
                    .filter(|&r| self.contains(u, &self.act(x, r as i64)))
                    .collect();
                let mut gap = 0;
                for w in residues.windows(2) {
                    gap = gap.max(w[1] - w[0]);
                }
                gap = gap.max(residues[0] + period - residues[residues.len() - 1]);
                Ok(SyndeticBound {
                    point: x.clone(),
                    neighbourhood: u.clone(),
                    period: Some(period),
                    excluded_times: (0..period as i64)
                        .filter(|&r| !residues.contains(&(r as u64)))
                        .collect(),
                    gap: gap as i64,
                })
            }
            None => {
                // infinite orbit: only finitely many excluded points can lie on it
                let SymPoint::Rot { q, m } = x else {
                    unreachable!("infinite orbits are rotation orbits")
                };
                let excluded: Vec<i64> = match u {
                    SymSet::Cofinite(ex) | SymSet::CofiniteMinusF(ex) => ex
                        .iter()
                        .filter_map(|p| match p {
                            SymPoint::Rot { q: q2, m: m2 } if q2 == q => Some(m2 - m),
                            _ => None,
                        })
                        .collect::<BTreeSet<_>>()
                        .into_iter()
                        .collect(),
                    _ => Vec::new(),
                };
                let mut gap = 1;
                let mut run = 0;
                let mut prev: Option<i64> = None;
                for &t in &excluded {
                    run = if prev == Some(t - 1) { run + 1 } else { 1 };
                    gap = gap.max(run + 1);
                    prev = Some(t);
                }
                Ok(SyndeticBound {
                    point: x.clone(),
                    neighbourhood: u.clone(),
                    period: None,
                    excluded_times: excluded,
                    gap,
                })
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BarEvidence {
    /// The pair is already in `R`.
    InRelation,
    /// `G·orbit_of × {fixed} ⊆ R` accumulates at the pair.
    OrbitTimesPoint { orbit_of: SymPoint, fixed: SymPoint },
    /// The diagonal accumulates at the pair.
    Diagonal,
    /// An open box around the pair missing `R`.
    SeparatingBox { left: SymSet, right: SymSet },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BarMembership {
    pub member: bool,
    pub in_r: bool,
    pub evidence: BarEvidence,
    pub prose: String,
}

impl BarMembership {
    /// For a positive certificate, a pair of `R` inside the neighbourhoods of `x` and `y`
    /// obtained by removing the listed points (and `F` where the point lies outside it).
    pub fn realize(
        &self,
        sys: &SymSystem,
        x: &SymPoint,
        y: &SymPoint,
        excluded_x: &[SymPoint],
        excluded_y: &[SymPoint],
    ) -> Option<(SymPoint, SymPoint)> {
        let nbhd = |p: &SymPoint, ex: &[SymPoint]| {
            if sys.in_f(p) || !sys.has_f() {
                SymSet::cofinite(ex)
            } else {
                SymSet::cofinite_minus_f(ex)
            }
        };
        let (nx, ny) = (nbhd(x, excluded_x), nbhd(y, excluded_y));
        let pick = |p: &SymPoint, set: &SymSet| -> Option<SymPoint> {
            (0..=(excluded_x.len() + excluded_y.len()) as i64 + 1)
                .map(|t| sys.act(p, t))
                .find(|a| sys.contains(set, a))
        };
        match &self.evidence {
            BarEvidence::InRelation => Some((x.clone(), y.clone())),
            BarEvidence::OrbitTimesPoint { orbit_of, fixed } => {
                let a = pick(orbit_of, &nx)?;
                sys.contains(&ny, fixed).then(|| (a, fixed.clone()))
            }
            BarEvidence::Diagonal => {
                // a fresh point off F with a denominator no excluded point uses
                let den = 2 + excluded_x.len() as i64 + excluded_y.len() as i64;
                let mut den = den;
                loop {
                    let a = SymPoint::rot_int(1, den, 0);
                    if sys.contains(&nx, &a) && sys.contains(&ny, &a) {
                        return Some((a.clone(), a));
                    }
                    den += 1;
                }
            }
            BarEvidence::SeparatingBox { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyndeticBound {
    pub point: SymPoint,
    pub neighbourhood: SymSet,
    /// Orbit period for finite orbits; `None` for infinite ones.
    pub period: Option<u64>,
    /// Times (or residues mod the period) with `t·x ∉ U`.
    pub excluded_times: Vec<i64>,
    /// Every run of consecutive integers of this length meets `N(x, U)`;
    /// `K = {0, …, gap}` satisfies `K + N(x, U) = ℤ`.
    pub gap: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: &'static str,
    pub points: Vec<SymPoint>,
    pub sets: Vec<SymSet>,
    pub prose: String,
}

impl Certificate {
    fn new(kind: &'static str, points: Vec<SymPoint>, sets: Vec<SymSet>, prose: String) -> Self {
        Certificate {
            kind,
            points,
            sets,
            prose,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymVerdict {
    pub holds: bool,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymVerdicts {
    pub t1: SymVerdict,
    pub compact: SymVerdict,
    pub hausdorff: SymVerdict,
    pub flow_pap: SymVerdict,
    pub decomposition_pap: SymVerdict,
    pub r_closed: SymVerdict,
    pub minimal: SymVerdict,
    pub pointwise_periodic: SymVerdict,
    pub periodic: SymVerdict,
    pub quotient_hausdorff: SymVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymReport {
    pub system: SymSystem,
    pub verdicts: SymVerdicts,
    /// Further facts established along the way.
    pub facts: Vec<Certificate>,
    pub syndetic_bounds: Vec<SyndeticBound>,
}

impl SymSystem {
    /// Two representatives of each point type.
    pub fn representatives(&self) -> Vec<SymPoint> {
        match self.kind {
            SpaceKind::CofiniteWithF { .. } => vec![
                SymPoint::zero(),
                SymPoint::rot_int(0, 1, 1),
                SymPoint::rot_int(1, 2, 0),
                SymPoint::rot_int(1, 3, -2),
            ],
            SpaceKind::DiscretePlusInfinity => vec![
                SymPoint::level(2, 1),
                SymPoint::level(3, 0),
                SymPoint::level(5, 2),
                SymPoint::Infinity,
            ],
        }
    }

    /// Open neighbourhoods of `x` used as syndeticity probes.
    fn probe_neighbourhoods(&self, x: &SymPoint) -> Vec<SymSet> {
        let orbit_points: Vec<SymPoint> = [1, 2, -3, 7].iter().map(|&t| self.act(x, t)).filter(|p| p != x).collect();
        match self.kind {
            SpaceKind::CofiniteWithF { .. } => {
                let mut out = vec![SymSet::Whole, SymSet::cofinite(&orbit_points)];
                if !self.in_f(x) && self.has_f() {
                    out.push(SymSet::cofinite_minus_f(&orbit_points));
                }
                out
            }
            SpaceKind::DiscretePlusInfinity => match x {
                SymPoint::Infinity => vec![SymSet::Whole, SymSet::Cofinite(self.level_points(3))],
                SymPoint::Level { n, .. } => vec![
                    SymSet::finite(std::slice::from_ref(x)),
                    SymSet::Level(*n),
                    SymSet::cofinite(&orbit_points),
                ],
                _ => unreachable!(),
            },
        }
    }

    fn separable(&self, a: &SymPoint, b: &SymPoint) -> Option<(SymSet, SymSet)> {
        match self.kind {
            // any two nonempty opens share infinitely many points outside F
            SpaceKind::CofiniteWithF { .. } => None,
            SpaceKind::DiscretePlusInfinity => {
                let around = |p: &SymPoint, other: &SymPoint| match p {
                    SymPoint::Infinity => SymSet::cofinite(std::slice::from_ref(other)),
                    _ => SymSet::finite(std::slice::from_ref(p)),
                };
                Some((around(a, b), around(b, a)))
            }
        }
    }

    /// Disjoint saturated opens around the orbit classes of `a` and `b`, if any.
    fn class_separation(&self, a: &SymPoint, b: &SymPoint) -> Option<(SymSet, SymSet)> {
        match self.kind {
            SpaceKind::CofiniteWithF { .. } => None,
            SpaceKind::DiscretePlusInfinity => {
                let around = |p: &SymPoint, other: &SymPoint| match (p, other) {
                    (SymPoint::Infinity, SymPoint::Level { n, .. }) => SymSet::Cofinite(self.level_points(*n)),
                    (SymPoint::Level { .. }, _) => self.finite_orbit(p).expect("finite"),
                    _ => SymSet::Whole,
                };
                Some((around(a, b), around(b, a)))
            }
        }
    }

    /// Decides every verdict for the system with certificates.
    pub fn analyze(&self) -> SymResult<SymReport> {
        let reps = self.representatives();
        let pairs: Vec<(&SymPoint, &SymPoint)> =
            reps.iter().flat_map(|a| reps.iter().map(move |b| (a, b))).collect();
        let mut facts = Vec::new();

        let t1 = SymVerdict {
            holds: reps.iter().try_fold(true, |acc, p| {
                Ok::<_, SymError>(acc && self.is_closed(&SymSet::finite(std::slice::from_ref(p)))?)
            })?,
            certificate: Certificate::new(
                "points-closed",
                reps.clone(),
                Vec::new(),
                "finite sets are closed, in particular every singleton".into(),
            ),
        };

        // compactness: an open set containing the anchor is cofinite
        let anchor = match self.kind {
            SpaceKind::CofiniteWithF { .. } => SymPoint::zero(),
            SpaceKind::DiscretePlusInfinity => SymPoint::Infinity,
        };
        let compact = SymVerdict {
            holds: true,
            certificate: Certificate::new(
                "cofinite-anchor",
                vec![anchor.clone()],
                Vec::new(),
                format!(
                    "every open set containing {anchor} is cofinite, so a cover member containing {anchor} \
                     leaves finitely many points, each covered by one more member"
                ),
            ),
        };

        let distinct: Vec<(&SymPoint, &SymPoint)> = pairs.iter().copied().filter(|(a, b)| a != b).collect();
        let inseparable = distinct.iter().find(|(a, b)| self.separable(a, b).is_none());
        let hausdorff = match inseparable {
            Some((a, b)) => SymVerdict {
                holds: false,
                certificate: Certificate::new(
                    "inseparable-points",
                    vec![(*a).clone(), (*b).clone()],
                    Vec::new(),
                    format!(
                        "every neighbourhood of {a} and of {b} contains a cofinite set{}, \
                         and two such sets always intersect",
                        if self.has_f() { " minus F" } else { "" }
                    ),
                ),
            },
            None => {
                let (a, b) = distinct[0];
                let (u, v) = self.separable(a, b).expect("checked");
                SymVerdict {
                    holds: true,
                    certificate: Certificate::new(
                        "separating-opens",
                        vec![a.clone(), b.clone()],
                        vec![u, v],
                        "level points are isolated and ∞ is separated from a level point by the complement of that point".into(),
                    ),
                }
            }
        };

        let mut syndetic_bounds = Vec::new();
        for x in &reps {
            for u in self.probe_neighbourhoods(x) {
                syndetic_bounds.push(self.syndetic(x, &u)?);
            }
        }
        let flow_pap = SymVerdict {
            holds: true,
            certificate: Certificate::new(
                "syndetic-return-times",
                reps.clone(),
                Vec::new(),
                match self.action {
                    SymAction::Rotation => "every neighbourhood of x contains all but finitely many points of G·x, \
                        so N(x, U) is cofinite in ℤ and has bounded gaps"
                        .into(),
                    SymAction::LevelRotation => "orbits are periodic, so N(x, U) contains a full residue class \
                        and its gaps are at most the period"
                        .into(),
                    SymAction::Identity => "N(x, U) = ℤ for every neighbourhood U of x".into(),
                },
            ),
        };

        let mut closures = Vec::with_capacity(reps.len());
        for x in &reps {
            closures.push(self.orbit_closure(x)?);
        }
        let asym = (0..reps.len())
            .flat_map(|i| (0..reps.len()).map(move |j| (i, j)))
            .find(|&(i, j)| self.contains(&closures[i], &reps[j]) && !self.contains(&closures[j], &reps[i]));
        let decomposition_pap = match asym {
            Some((i, j)) => SymVerdict {
                holds: false,
                certificate: Certificate::new(
                    "hat-asymmetry",
                    vec![reps[j].clone(), reps[i].clone()],
                    vec![closures[j].clone(), closures[i].clone()],
                    format!(
                        "{} ∈ cl(G·{}) = {} but {} ∉ cl(G·{}) = {}",
                        reps[j], reps[i], closures[i], reps[i], reps[j], closures[j]
                    ),
                ),
            },
            None => SymVerdict {
                holds: true,
                certificate: Certificate::new(
                    "orbit-closures-partition",
                    reps.clone(),
                    closures.clone(),
                    "orbit closures of points of the same type coincide and different types have disjoint closures".into(),
                ),
            },
        };

        let mut gap = None;
        for (x, y) in &pairs {
            let bar = self.bar_membership(x, y)?;
            if bar.member && !bar.in_r {
                gap = Some(((*x).clone(), (*y).clone(), bar));
                break;
            }
        }
        let r_closed = match gap {
            Some((x, y, bar)) => SymVerdict {
                holds: false,
                certificate: Certificate::new("closure-gap", vec![x, y], Vec::new(), bar.prose),
            },
            None => {
                let sample = distinct
                    .iter()
                    .filter(|(x, y)| !self.r_membership(x, y).unwrap_or(true))
                    .max_by_key(|(x, _)| **x == SymPoint::Infinity)
                    .map(|(x, y)| self.bar_membership(x, y))
                    .transpose()?;
                SymVerdict {
                    holds: true,
                    certificate: Certificate::new(
                        "relation-closed",
                        Vec::new(),
                        match &sample {
                            Some(BarMembership { evidence: BarEvidence::SeparatingBox { left, right }, .. }) => {
                                vec![left.clone(), right.clone()]
                            }
                            _ => Vec::new(),
                        },
                        match &sample {
                            Some(b) => format!("R̄ = R; e.g. {}", b.prose),
                            None => "R = X × X is closed".into(),
                        },
                    ),
                }
            }
        };

        let non_dense = reps.iter().zip(&closures).find(|(_, c)| **c != SymSet::Whole);
        let minimal = match non_dense {
            Some((x, c)) => SymVerdict {
                holds: false,
                certificate: Certificate::new(
                    "non-dense-orbit",
                    vec![x.clone()],
                    vec![c.clone()],
                    format!("cl(G·{x}) = {c} ≠ X"),
                ),
            },
            None => SymVerdict {
                holds: true,
                certificate: Certificate::new("dense-orbits", reps.clone(), Vec::new(), "every orbit closure is X".into()),
            },
        };

        let infinite = reps.iter().find(|x| self.orbit_len(x).is_none());
        let pointwise_periodic = match infinite {
            Some(x) => SymVerdict {
                holds: false,
                certificate: Certificate::new(
                    "infinite-orbit",
                    vec![x.clone()],
                    Vec::new(),
                    format!("the points t·{x} are pairwise distinct because α is irrational"),
                ),
            },
            None => SymVerdict {
                holds: true,
                certificate: Certificate::new(
                    "finite-orbits",
                    reps.clone(),
                    Vec::new(),
                    "every point of level n has period n and ∞ is fixed".into(),
                ),
            },
        };

        let periodic = match (self.action, infinite) {
            (_, Some(x)) => SymVerdict {
                holds: false,
                certificate: Certificate::new("infinite-orbit", vec![x.clone()], Vec::new(), format!("{x} is not periodic")),
            },
            (SymAction::LevelRotation, None) => {
                let n = 20;
                let witness = SymPoint::level(n + 1, 0);
                SymVerdict {
                    holds: false,
                    certificate: Certificate::new(
                        "unbounded-periods",
                        vec![witness.clone()],
                        Vec::new(),
                        format!(
                            "for every N ≥ 1 the point N+1:0 has period N + 1, which does not divide N, \
                             so the N-th iterate moves it; e.g. N = {n} moves {witness}"
                        ),
                    ),
                }
            }
            (_, None) => SymVerdict {
                holds: true,
                certificate: Certificate::new("order-one", Vec::new(), Vec::new(), "the action is trivial".into()),
            },
        };

        // orbit classes: points with equal orbit closure
        let class_pair = (0..reps.len())
            .flat_map(|i| (0..reps.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| closures[i] != closures[j])
            .find(|&(i, j)| self.class_separation(&reps[i], &reps[j]).is_none());
        let quotient_hausdorff = match class_pair {
            Some((i, j)) => SymVerdict {
                holds: false,
                certificate: Certificate::new(
                    "inseparable-classes",
                    vec![reps[i].clone(), reps[j].clone()],
                    vec![closures[i].clone(), closures[j].clone()],
                    format!(
                        "the orbit classes of {} and {} differ but every saturated open set around one is cofinite up to F and meets the other",
                        reps[i], reps[j]
                    ),
                ),
            },
            None => {
                let seps: Vec<SymSet> = reps
                    .iter()
                    .zip(&reps[1..])
                    .filter_map(|(a, b)| self.class_separation(a, b))
                    .flat_map(|(u, v)| [u, v])
                    .collect();
                SymVerdict {
                    holds: true,
                    certificate: Certificate::new(
                        "separating-saturated-opens",
                        reps.clone(),
                        seps,
                        if reps.iter().zip(&closures).all(|(_, c)| *c == SymSet::Whole) {
                            "there is a single orbit class".into()
                        } else {
                            "each level is a saturated clopen set and its complement is a saturated open neighbourhood of ∞".into()
                        },
                    ),
                }
            }
        };

        if self.has_f() && self.action == SymAction::Rotation {
            let outside = SymPoint::rot_int(1, 2, 0);
            let closure = self.orbit_closure(&outside)?;
            facts.push(Certificate::new(
                "orbit-closure-outside-f",
                vec![outside.clone()],
                vec![closure.clone()],
                format!("cl(G·{outside}) = {closure}: the orbit is infinite and misses F"),
            ));
            let f = SymSet::FPlusFinite(Vec::new());
            let f_closed = self.is_closed(&f)?;
            let f_proper = !self.contains(&f, &outside);
            facts.push(Certificate::new(
                "f-closed-proper",
                vec![outside.clone()],
                vec![f.clone()],
                format!("F is closed ({f_closed}) and proper ({outside} ∉ F: {f_proper}) and equals cl(G·0)"),
            ));
            let y = SymPoint::rot_int(1, 3, 0);
            let bar = self.bar_membership(&SymPoint::zero(), &y)?;
            facts.push(Certificate::new(
                "bar-minus-r",
                vec![SymPoint::zero(), y.clone()],
                Vec::new(),
                format!(
                    "(0, {y}) ∈ R̄ ({}) and (0, {y}) ∉ R ({}): {}",
                    bar.member, !bar.in_r, bar.prose
                ),
            ));
        }

        Ok(SymReport {
            system: self.clone(),
            verdicts: SymVerdicts {
                t1,
                compact,
                hausdorff,
                flow_pap,
                decomposition_pap,
                r_closed,
                minimal,
                pointwise_periodic,
                periodic,
                quotient_hausdorff,
            },
            facts,
            syndetic_bounds,
        })
    }
}

/// Periodicity of the symbolic generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SymPeriodicity {
    pub pointwise_periodic: bool,
    pub periodic: bool,
    /// `None` means infinite order.
    pub max_order: Option<u64>,
}

pub fn sym_periodicity(sys: &SymSystem) -> SymResult<SymPeriodicity> {
    let report = sys.analyze()?;
    Ok(SymPeriodicity {
        pointwise_periodic: report.verdicts.pointwise_periodic.holds,
        periodic: report.verdicts.periodic.holds,
        max_order: report.verdicts.periodic.holds.then_some(1),
    })
}

/// The level-tower model truncated at level `max_level`: levels `2..=max_level`
/// plus one point standing for `∞` and every higher level. All points are
/// isolated (a cofinite set of finitely many points is everything), and the
/// generator rotates each level.
pub fn truncated_tower(max_level: u64) -> ActionSpec {
    let mut generator = Vec::new();
    let mut offset = 0usize;
    for n in 2..=max_level as usize {
        for k in 0..n {
            generator.push(offset + (k + 1) % n);
        }
        offset += n;
    }
    generator.push(offset);
    ActionSpec::new(FinSpace::discrete(offset + 1), vec![generator], GroupKind::Integers)
        .expect("rotations of a discrete space are homeomorphisms")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncationCheck {
    pub max_level: u64,
    pub points: usize,
    pub finite_pap: bool,
    pub finite_r_closed: bool,
    pub finite_quotient_hausdorff: bool,
    pub finite_pointwise_periodic: bool,
    /// Order of the truncated generator: lcm of the periods `2..=max_level`.
    pub finite_order: u64,
    pub symbolic: SymPeriodicity,
    pub symbolic_pap: bool,
    pub symbolic_r_closed: bool,
    pub symbolic_quotient_hausdorff: bool,
    /// Verdicts agree, and the finite order is the lcm of all level periods
    /// present, which grows without bound as levels are added.
    pub consistent: bool,
}

/// Compares the finite checkers on a truncation with the symbolic ex06 verdicts.
pub fn truncation_check(max_level: u64) -> Result<TruncationCheck, crate::Error> {
    let action = truncated_tower(max_level);
    let e = actions::orbit_relation(&action);
    let report = checkers::analyze(&action.space, &e)?;
    let profile = actions::periodicity_profile(&action)?;
    let sym = SymSystem::ex06().analyze().expect("fixed system");
    let symbolic = SymPeriodicity {
        pointwise_periodic: sym.verdicts.pointwise_periodic.holds,
        periodic: sym.verdicts.periodic.holds,
        max_order: None,
    };
    let finite_order = profile.max_order.expect("finite space");
    let expected_order = (2..=max_level).fold(1u64, |a, n| a.lcm(&n));
    let consistent = report.verdicts.pap_decomposition == sym.verdicts.decomposition_pap.holds
        && report.verdicts.r_closed == sym.verdicts.r_closed.holds
        && report.verdicts.quotient_hausdorff == sym.verdicts.quotient_hausdorff.holds
        && profile.pointwise_periodic == symbolic.pointwise_periodic
        && !symbolic.periodic
        && finite_order == expected_order
        && report.violations.is_empty();
    Ok(TruncationCheck {
        max_level,
        points: action.space.len(),
        finite_pap: report.verdicts.pap_decomposition,
        finite_r_closed: report.verdicts.r_closed,
        finite_quotient_hausdorff: report.verdicts.quotient_hausdorff,
        finite_pointwise_periodic: profile.pointwise_periodic,
        finite_order,
        symbolic,
        symbolic_pap: sym.verdicts.decomposition_pap.holds,
        symbolic_r_closed: sym.verdicts.r_closed.holds,
        symbolic_quotient_hausdorff: sym.verdicts.quotient_hausdorff.holds,
        consistent,
    })
}
