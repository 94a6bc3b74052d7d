//! Verdict-plus-witness checkers for closure properties of relations.
//!
//! Every checker that can fail returns a [`Witness`] naming concrete points,
//! and [`Witness::replay`] re-derives the failure from the input alone.
//! Where a property has two independent computations, both are run and
//! any disagreement is recorded in [`Verdict::disagreements`].

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::finspace::{FinSpace, SeparationProfile};
use crate::pointset::PointSet;
use crate::relation::{hat, product_closure, prolongation, restrict, same_rows, saturate, tilde, Relation};

/// Largest carrier on which closed sets are enumerated for the weak almost
/// periodicity check.
pub const WAP_ENUMERATION_CAP: usize = 6;
/// Largest carrier on which the battery quantifies the perfect-map law over
/// all closed sets.
pub const PERFECT_MAP_CAP: usize = 5;

pub const NOTE_WAP: &str = "weak almost periodicity is trivially true on finite spaces";
pub const NOTE_COMPACT: &str = "trivially compact (finite)";
pub const NOTE_FINITE_CLASSES: &str = "every class is finite (finite space)";
pub const NOTE_TILDE: &str =
    "closure relation is not an equivalence; quotient taken by the orbit-class relation";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    ReflexivityFailure,
    SymmetryFailure,
    TransitivityFailure,
    ClosureGap,
    ProlongationGap,
    LStabilityFailure,
    DensityFailure,
    SaturationNotClosed,
    HausdorffFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub points: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<PointSet>,
    pub explanation: String,
}

impl Witness {
    fn new(kind: WitnessKind, points: Vec<usize>, set: Option<PointSet>, explanation: String) -> Self {
        Witness {
            kind,
            points,
            set,
            explanation,
        }
    }

    /// Re-derives the failure this witness claims, from the space and relation alone.
    pub fn replay(&self, space: &FinSpace, e: &Relation) -> bool {
        let Ok(h) = hat(space, e) else {
            return false;
        };
        let p = &self.points;
        match self.kind {
            WitnessKind::ReflexivityFailure => p.len() == 1 && !h.contains(p[0], p[0]),
            WitnessKind::SymmetryFailure => p.len() == 2 && h.contains(p[1], p[0]) && !h.contains(p[0], p[1]),
            WitnessKind::TransitivityFailure => {
                p.len() == 3 && h.contains(p[0], p[1]) && h.contains(p[1], p[2]) && !h.contains(p[0], p[2])
            }
            WitnessKind::ClosureGap => {
                p.len() == 2 && {
                    let bar = product_closure(space, &h).expect("dimensions checked");
                    bar.contains(p[0], p[1]) && !h.contains(p[0], p[1])
                }
            }
            WitnessKind::ProlongationGap => {
                p.len() == 2 && {
                    let d = prolongation(space, e).expect("dimensions checked");
                    d.contains(p[0], p[1]) != h.contains(p[0], p[1])
                }
            }
            WitnessKind::LStabilityFailure => {
                p.len() == 1 && self.set.as_ref().is_some_and(|u| {
                    let target = h.row(p[0]);
                    space.is_open(u)
                        && target.is_subset(u)
                        && !target.is_subset(&largest_saturated_open(space, e, u))
                })
            }
            WitnessKind::DensityFailure => p.len() == 1 && !h.row(p[0]).is_full(),
            WitnessKind::SaturationNotClosed => self.set.as_ref().is_some_and(|a| {
                space.is_closed(a) && !space.is_closed(&saturate(&h, a))
            }),
            WitnessKind::HausdorffFailure => {
                p.len() == 2 && p[0] != p[1] && {
                    let q = if h.is_equivalence() { h.clone() } else { same_rows(&h) };
                    match quotient(space, &q) {
                        Ok(quot) => {
                            let (a, b) = (quot.projection[p[0]], quot.projection[p[1]]);
                            a != b && quot.space.min_open(a).intersects(quot.space.min_open(b))
                        }
                        Err(_) => false,
                    }
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Disagreements between independent computations of the same property.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub disagreements: Vec<String>,
}

impl Verdict {
    fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
            note: None,
            disagreements: Vec::new(),
        }
    }

    fn fail(witness: Witness) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness),
            note: None,
            disagreements: Vec::new(),
        }
    }

    fn from_witness(witness: Option<Witness>) -> Self {
        witness.map_or_else(Self::pass, Self::fail)
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn first_pair_gap(bigger: &Relation, smaller: &Relation) -> Option<(usize, usize)> {
    bigger.pairs().find(|&(x, y)| !smaller.contains(x, y))
}

fn hat_failure(h: &Relation) -> Option<Witness> {
    let n = h.len();
    if let Some(x) = (0..n).find(|&x| !h.contains(x, x)) {
        return Some(Witness::new(
            WitnessKind::ReflexivityFailure,
            vec![x],
            None,
            format!("{x} ∉ Ê({x})"),
        ));
    }
    if let Some((x, y)) = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| h.contains(y, x) && !h.contains(x, y))
    {
        return Some(Witness::new(
            WitnessKind::SymmetryFailure,
            vec![x, y],
            None,
            format!("{x} ∈ Ê({y}) but {y} ∉ Ê({x})"),
        ));
    }
    for x in 0..n {
        for y in h.row(x).iter() {
            if let Some(z) = h.row(y).iter().find(|&z| !h.contains(x, z)) {
                return Some(Witness::new(
                    WitnessKind::TransitivityFailure,
                    vec![x, y, z],
                    None,
                    format!("{y} ∈ Ê({x}) and {z} ∈ Ê({y}) but {z} ∉ Ê({x})"),
                ));
            }
        }
    }
    None
}

/// Pointwise almost periodic: `Ê` is an equivalence.
pub fn is_pointwise_almost_periodic(space: &FinSpace, e: &Relation) -> Result<Verdict> {
    let h = hat(space, e)?;
    let mut verdict = Verdict::from_witness(hat_failure(&h));
    if e.is_equivalence() {
        // For an equivalence, symmetry of Ê alone decides it.
        let shortcut = h.is_symmetric();
        if shortcut != verdict.holds {
            verdict.disagreements.push(format!(
                "Ê symmetric = {shortcut} but Ê equivalence = {}",
                verdict.holds
            ));
        }
    }
    Ok(verdict)
}

/// R-closed: `Ê` is closed in `X × X`. Decided both as `cl(Ê) = Ê` and as `Ē = Ê`.
pub fn is_r_closed(space: &FinSpace, e: &Relation) -> Result<Verdict> {
    let h = hat(space, e)?;
    let closure_of_hat = product_closure(space, &h)?;
    let bar = product_closure(space, e)?;
    let closed = closure_of_hat == h;
    let mut verdict = Verdict::from_witness(first_pair_gap(&closure_of_hat, &h).map(|(x, y)| {
        Witness::new(
            WitnessKind::ClosureGap,
            vec![x, y],
            None,
            format!("({x}, {y}) lies in the closure of Ê but not in Ê"),
        )
    }));
    if (bar == h) != closed {
        verdict
            .disagreements
            .push(format!("cl(Ê) = Ê is {closed} but Ē = Ê is {}", bar == h));
    }
    Ok(verdict)
}

/// D-stable: the prolongation equals `Ê`.
pub fn is_d_stable(space: &FinSpace, e: &Relation) -> Result<Verdict> {
    let h = hat(space, e)?;
    let d = prolongation(space, e)?;
    let gap = first_pair_gap(&d, &h).or_else(|| first_pair_gap(&h, &d));
    Ok(Verdict::from_witness(gap.map(|(x, y)| {
        Witness::new(
            WitnessKind::ProlongationGap,
            vec![x, y],
            None,
            format!("D and Ê differ at ({x}, {y})"),
        )
    })))
}

/// Largest open `W ⊆ u` with `E(W) ⊆ W`.
pub fn largest_saturated_open(space: &FinSpace, e: &Relation, u: &PointSet) -> PointSet {
    let mut w = space.interior(u);
    loop {
        let keep = PointSet::from_indices(space.len(), w.iter().filter(|&z| e.row(z).is_subset(&w)));
        let next = space.interior(&keep);
        if next == w {
            return w;
        }
        w = next;
    }
}

/// L-stable: each `Ê(x)` has `E`-saturated open neighbourhoods inside every
/// open neighbourhood. The condition is antitone in the neighbourhood, so only
/// the smallest open superset `U*` of `Ê(x)` needs testing.
///
/// A set `A` counts as saturated when `E(A) ⊆ A`, which matches
/// `A = E(A)` for reflexive relations.
pub fn is_l_stable(space: &FinSpace, e: &Relation) -> Result<Verdict> {
    let h = hat(space, e)?;
    for x in 0..space.len() {
        let target = h.row(x);
        let u_star = space.open_hull(target);
        let w = largest_saturated_open(space, e, &u_star);
        if !target.is_subset(&w) {
            return Ok(Verdict::fail(Witness::new(
                WitnessKind::LStabilityFailure,
                vec![x],
                Some(u_star.clone()),
                format!(
                    "no saturated open set between Ê({x}) = {:?} and its open neighbourhood {:?}",
                    target, u_star
                ),
            )));
        }
    }
    Ok(Verdict::pass())
}

/// Weakly almost periodic: `⋃_{x ∈ A} cl E(x)` is closed for every closed `A`.
pub fn is_weakly_almost_periodic(space: &FinSpace, e: &Relation) -> Result<Verdict> {
    let h = hat(space, e)?;
    if space.len() > WAP_ENUMERATION_CAP {
        return Ok(Verdict::pass().with_note(format!(
            "{NOTE_WAP}; closed sets not enumerated above {WAP_ENUMERATION_CAP} points"
        )));
    }
    for a in space.closed_sets() {
        let sat = saturate(&h, &a);
        if !space.is_closed(&sat) {
            return Ok(Verdict::fail(Witness::new(
                WitnessKind::SaturationNotClosed,
                a.to_vec(),
                Some(a.clone()),
                format!("the orbit-closure saturation of closed {a:?} is {sat:?}, not closed"),
            )));
        }
    }
    Ok(Verdict::pass().with_note(NOTE_WAP))
}

/// Minimal: every `E(x)` is dense.
pub fn is_minimal(space: &FinSpace, e: &Relation) -> Result<Verdict> {
    let h = hat(space, e)?;
    Ok(Verdict::from_witness((0..space.len()).find(|&x| !h.row(x).is_full()).map(|x| {
        Witness::new(
            WitnessKind::DensityFailure,
            vec![x],
            None,
            format!("cl E({x}) = {:?} is not the whole space", h.row(x)),
        )
    })))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlmostPeriodicPoints {
    pub points: PointSet,
    /// Points where the per-point characterization disagreed with the definition.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub disagreements: Vec<String>,
    /// Whether the per-point characterization was checked (it needs `Ê`
    /// reflexive and transitive).
    pub characterization_checked: bool,
}

/// Points `x` with `Ê(y) = Ê(x)` for all `y ∈ Ê(x)`.
///
/// When `Ê` is reflexive and transitive, also checks per point that this is
/// equivalent to the restriction of `Ê` to `Ê(x)` being symmetric, and to it
/// being a closed equivalence on the subspace `Ê(x)`.
pub fn almost_periodic_points(space: &FinSpace, e: &Relation) -> Result<AlmostPeriodicPoints> {
    let h = hat(space, e)?;
    let n = space.len();
    let points = PointSet::from_indices(
        n,
        (0..n).filter(|&x| h.row(x).iter().all(|y| h.row(y) == h.row(x))),
    );
    let checked = h.is_reflexive() && h.is_transitive();
    let mut disagreements = Vec::new();
    if checked {
        for x in 0..n {
            let (symmetric, closed_eq) = restricted_profile(space, &h, x)?;
            let ap = points.contains(x);
            if ap != symmetric || ap != closed_eq {
                disagreements.push(format!(
                    "point {x}: almost periodic = {ap}, restriction symmetric = {symmetric}, \
                     restriction closed equivalence = {closed_eq}"
                ));
            }
        }
    }
    Ok(AlmostPeriodicPoints {
        points,
        disagreements,
        characterization_checked: checked,
    })
}

/// (symmetric, closed equivalence) for `Ê` restricted to the subspace `Ê(x)`.
fn restricted_profile(space: &FinSpace, h: &Relation, x: usize) -> Result<(bool, bool)> {
    let sub = restrict(space, h, h.row(x))?;
    let symmetric = sub.relation.is_symmetric();
    let closed_eq =
        sub.relation.is_equivalence() && product_closure(&sub.space, &sub.relation)? == sub.relation;
    Ok((symmetric, closed_eq))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Quotient {
    pub space: FinSpace,
    /// Point ↦ class index; classes are numbered by smallest member.
    pub projection: Vec<usize>,
}

/// Quotient by an equivalence, with the quotient topology: a set of classes
/// is open iff its preimage is open.
pub fn quotient(space: &FinSpace, q: &Relation) -> Result<Quotient> {
    if q.len() != space.len() {
        return Err(Error::DimensionMismatch {
            relation: q.len(),
            space: space.len(),
        });
    }
    if !q.is_equivalence() {
        let p = q.profile();
        return Err(Error::NotAnEquivalence(format!(
            "reflexive={} symmetric={} transitive={}",
            p.reflexive, p.symmetric, p.transitive
        )));
    }
    let classes = q.classes();
    let k = classes.len();
    let mut projection = vec![0; space.len()];
    for (c, class) in classes.iter().enumerate() {
        for x in class.iter() {
            projection[x] = c;
        }
    }
    let min_open = classes
        .iter()
        .map(|class| {
            // smallest saturated open set containing the class
            let mut w = class.clone();
            loop {
                let next = saturate(q, &space.open_hull(&w));
                if next == w {
                    break;
                }
                w = next;
            }
            PointSet::from_indices(k, w.iter().map(|x| projection[x]))
        })
        .collect();
    Ok(Quotient {
        space: FinSpace::from_min_open(min_open)?,
        projection,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientVerdict {
    pub verdict: Verdict,
    /// `"hat"` when `Ê` was an equivalence, `"tilde"` otherwise.
    pub by: &'static str,
    pub classes: usize,
}

/// Whether the orbit-class space `X/Ẽ` is Hausdorff.
pub fn quotient_is_hausdorff(space: &FinSpace, e: &Relation) -> Result<QuotientVerdict> {
    let h = hat(space, e)?;
    let (q, by) = if h.is_equivalence() {
        (h, "hat")
    } else {
        (tilde(space, e)?, "tilde")
    };
    let quot = quotient(space, &q)?;
    let k = quot.space.len();
    let clash = (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .find(|&(a, b)| quot.space.min_open(a).intersects(quot.space.min_open(b)));
    let representative = |c: usize| quot.projection.iter().position(|&p| p == c).expect("surjective");
    let mut verdict = Verdict::from_witness(clash.map(|(a, b)| {
        let (x, y) = (representative(a), representative(b));
        Witness::new(
            WitnessKind::HausdorffFailure,
            vec![x, y],
            None,
            format!("the classes of {x} and {y} have no disjoint open neighbourhoods in the quotient"),
        )
    }));
    if by == "tilde" {
        verdict = verdict.with_note(NOTE_TILDE);
    }
    Ok(QuotientVerdict {
        verdict,
        by,
        classes: k,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub pap_decomposition: bool,
    pub r_closed: bool,
    pub d_stable: bool,
    pub l_stable: bool,
    pub weakly_almost_periodic: bool,
    pub minimal: bool,
    pub compact_classes: bool,
    pub pointwise_periodic_like: bool,
    pub quotient_hausdorff: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub points: usize,
    pub verdicts: Verdicts,
    pub separation: SeparationProfile,
    pub almost_periodic_points: PointSet,
    pub quotient_by: &'static str,
    pub quotient_classes: usize,
    pub witnesses: Vec<Witness>,
    pub notes: Vec<String>,
    /// Failed internal cross-checks. Empty unless something is wrong.
    pub violations: Vec<String>,
}

/// Runs every checker and cross-checks the results against each other.
pub fn analyze(space: &FinSpace, e: &Relation) -> Result<Report> {
    let pap = is_pointwise_almost_periodic(space, e)?;
    let r_closed = is_r_closed(space, e)?;
    let d_stable = is_d_stable(space, e)?;
    let l_stable = is_l_stable(space, e)?;
    let wap = is_weakly_almost_periodic(space, e)?;
    let minimal = is_minimal(space, e)?;
    let ap = almost_periodic_points(space, e)?;
    let qh = quotient_is_hausdorff(space, e)?;
    let separation = space.separation_profile();

    let verdicts = Verdicts {
        pap_decomposition: pap.holds,
        r_closed: r_closed.holds,
        d_stable: d_stable.holds,
        l_stable: l_stable.holds,
        weakly_almost_periodic: wap.holds,
        minimal: minimal.holds,
        compact_classes: true,
        pointwise_periodic_like: true,
        quotient_hausdorff: qh.verdict.holds,
    };

    let mut violations = Vec::new();
    for v in [&pap, &r_closed, &d_stable, &l_stable, &wap, &minimal, &qh.verdict] {
        violations.extend(v.disagreements.iter().cloned());
    }
    violations.extend(ap.disagreements.iter().cloned());
    if verdicts.r_closed != verdicts.d_stable {
        violations.push("r_closed differs from d_stable".into());
    }
    if separation.hausdorff && verdicts.r_closed != verdicts.l_stable {
        violations.push("Hausdorff space with r_closed different from l_stable".into());
    }
    if separation.hausdorff && e.is_equivalence() && !(verdicts.r_closed && verdicts.l_stable && verdicts.pap_decomposition) {
        violations.push("equivalence on a discrete space is not R-closed, L-stable and almost periodic".into());
    }
    if e.is_equivalence() && verdicts.r_closed && !verdicts.pap_decomposition {
        violations.push("R-closed equivalence that is not pointwise almost periodic".into());
    }

    let mut witnesses = Vec::new();
    let mut notes = vec![NOTE_COMPACT.to_string(), NOTE_FINITE_CLASSES.to_string()];
    for v in [&pap, &r_closed, &d_stable, &l_stable, &wap, &minimal, &qh.verdict] {
        witnesses.extend(v.witness.iter().cloned());
        notes.extend(v.note.iter().cloned());
    }
    if !ap.characterization_checked {
        notes.push("per-point almost periodicity characterization skipped: Ê is not reflexive and transitive".into());
    }
    if !separation.hausdorff && verdicts.l_stable != verdicts.r_closed {
        notes.push("L-stability and R-closedness differ; the space is not Hausdorff".into());
    }

    Ok(Report {
        points: space.len(),
        verdicts,
        separation,
        almost_periodic_points: ap.points,
        quotient_by: qh.by,
        quotient_classes: qh.classes,
        witnesses,
        notes,
        violations,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub instance: usize,
    pub law: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BatteryOutcome {
    pub instances: usize,
    /// Instances with a dense class, where the four-way equivalence was checked.
    pub dense_instances: usize,
    /// Instances where `Ê` was transitive, so the per-point characterization applied.
    pub transitive_instances: usize,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Default)]
struct InstanceOutcome {
    dense: bool,
    transitive: bool,
    violations: Vec<(String, String)>,
}

fn check_instance(space: &FinSpace, e: &Relation) -> Result<InstanceOutcome> {
    if !e.is_equivalence() {
        return Err(Error::NotAnEquivalence("battery instances must be equivalences".into()));
    }
    let mut out = InstanceOutcome::default();
    let mut law = |name: &str, ok: bool, detail: String| {
        if !ok {
            out.violations.push((name.to_string(), detail));
        }
    };
    let n = space.len();
    let h = hat(space, e)?;
    let bar = product_closure(space, e)?;
    let hp = h.profile();
    let hat_closed = product_closure(space, &h)? == h;

    law("symmetry-implies-transitivity", !hp.symmetric || hp.transitive, format!("Ê = {h:?}"));
    law("closed-implies-equivalence", !hat_closed || hp.equivalence, format!("Ê = {h:?}"));
    let criterion = (0..n).all(|x| saturate(e, h.row(x)).is_subset(h.row(x)));
    law(
        "transitivity-criterion",
        criterion == hp.transitive,
        format!("E(Ê(x)) ⊆ Ê(x) for all x is {criterion}, Ê transitive is {}", hp.transitive),
    );

    let pap = is_pointwise_almost_periodic(space, e)?;
    let r = is_r_closed(space, e)?;
    let d = is_d_stable(space, e)?;
    let l = is_l_stable(space, e)?;
    let m = is_minimal(space, e)?;
    for v in [&pap, &r] {
        for msg in &v.disagreements {
            law("route-agreement", false, msg.clone());
        }
    }
    law("r-closed-equals-d-stable", r.holds == d.holds, format!("r_closed={} d_stable={}", r.holds, d.holds));
    law(
        "prolongation-equals-product-closure",
        prolongation(space, e)? == bar,
        "D differs from Ē".into(),
    );
    law("hat-inside-bar", h.is_subset(&bar), "Ê ⊄ Ē".into());
    if space.separation_profile().hausdorff {
        law("hausdorff-r-closed-equals-l-stable", r.holds == l.holds, format!("r_closed={} l_stable={}", r.holds, l.holds));
    }
    law("r-closed-implies-pap", !r.holds || pap.holds, "R-closed but not pointwise almost periodic".into());
    if hp.equivalence {
        law("tilde-equals-hat", tilde(space, e)? == h, "Ẽ differs from Ê".into());
    }
    if hat_closed && hp.equivalence && n <= PERFECT_MAP_CAP {
        for a in space.closed_sets() {
            if !space.is_closed(&saturate(&h, &a)) {
                law("perfect-quotient", false, format!("Ê({a:?}) is not closed"));
                break;
            }
        }
    }

    // A dense class makes four conditions on Ê coincide.
    if e.classes().iter().any(|c| space.closure(c).is_full()) {
        out.dense = true;
        let four = [hp.symmetric, hp.equivalence, hp.equivalence && hat_closed, m.holds];
        law(
            "dense-class-four-way",
            four.iter().all(|&b| b == four[0]),
            format!("symmetric, equivalence, closed equivalence, minimal = {four:?}"),
        );
    }

    // Per-point characterization, valid when Ê is transitive (E reflexive makes Ê reflexive).
    if hp.transitive {
        out.transitive = true;
        let ap = almost_periodic_points(space, e)?;
        for msg in ap.disagreements {
            law("almost-periodic-point-characterization", false, msg);
        }
    }
    Ok(out)
}

/// Checks the closure laws on each `(space, equivalence)` instance, in
/// parallel. Violations come back ordered by instance index.
pub fn theorem_battery(instances: &[(FinSpace, Relation)]) -> Result<BatteryOutcome> {
    let outcomes: Vec<InstanceOutcome> = instances
        .par_iter()
        .map(|(space, e)| check_instance(space, e))
        .collect::<Result<_>>()?;
    let mut summary = BatteryOutcome {
        instances: instances.len(),
        ..Default::default()
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        summary.dense_instances += usize::from(o.dense);
        summary.transitive_instances += usize::from(o.transitive);
        summary.violations.extend(o.violations.into_iter().map(|(law, detail)| Violation {
            instance: i,
            law,
            detail,
        }));
    }
    Ok(summary)
}
