//! Group actions on finite spaces given by generator permutations.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finspace::FinSpace;
use crate::pointset::PointSet;
use crate::relation::Relation;

/// Upper bound on the number of elements enumerated for a finite group.
pub const GROUP_ENUMERATION_CAP: usize = 100_000;

pub const NOTE_SYNDETIC: &str = "trivially true on finite spaces: every orbit is finite, so return times are periodic";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    /// The integers, acting through powers of a single generator.
    #[serde(rename = "Z")]
    Integers,
    /// The finite group generated by the permutations, enumerated in full.
    #[serde(rename = "finite")]
    Finite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionSpec {
    pub space: FinSpace,
    pub generators: Vec<Vec<usize>>,
    pub group: GroupKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomeomorphismCheck {
    pub continuous: bool,
    pub homeomorphism: bool,
    /// A point `x` where `f(min_open(x)) ≠ min_open(f(x))`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explanation: Option<String>,
}

fn check_bijection(index: usize, n: usize, f: &[usize]) -> Result<()> {
    if f.len() != n {
        return Err(Error::NotABijection {
            index,
            reason: format!("has {} images for {n} points", f.len()),
        });
    }
    let mut hit = PointSet::empty(n);
    for (x, &y) in f.iter().enumerate() {
        if y >= n {
            return Err(Error::NotABijection {
                index,
                reason: format!("image {y} of {x} is outside 0..{n}"),
            });
        }
        if hit.contains(y) {
            return Err(Error::NotABijection {
                index,
                reason: format!("{y} is hit twice"),
            });
        }
        hit.insert(y);
    }
    Ok(())
}

fn image(f: &[usize], s: &PointSet) -> PointSet {
    PointSet::from_indices(s.universe(), s.iter().map(|x| f[x]))
}

/// `f` is continuous iff `f(min_open(x)) ⊆ min_open(f(x))` for all `x`, and a
/// homeomorphism iff equality holds everywhere.
pub fn verify_homeomorphism(space: &FinSpace, f: &[usize]) -> Result<HomeomorphismCheck> {
    check_bijection(0, space.len(), f)?;
    let mut continuous = true;
    let mut witness = None;
    for x in 0..space.len() {
        let img = image(f, space.min_open(x));
        let target = space.min_open(f[x]);
        if img != *target && witness.is_none() {
            witness = Some(x);
        }
        if !img.is_subset(target) {
            continuous = false;
        }
    }
    let explanation = witness.map(|x| {
        format!(
            "f(min_open({x})) = {:?} but min_open(f({x})) = {:?}",
            image(f, space.min_open(x)),
            space.min_open(f[x])
        )
    });
    Ok(HomeomorphismCheck {
        continuous,
        homeomorphism: witness.is_none(),
        witness,
        explanation,
    })
}

impl ActionSpec {
    /// Validates that each generator is a homeomorphism and that a ℤ-action has
    /// exactly one generator.
    pub fn new(space: FinSpace, generators: Vec<Vec<usize>>, group: GroupKind) -> Result<Self> {
        if group == GroupKind::Integers && generators.len() != 1 {
            return Err(Error::InvalidGenerator {
                index: generators.len(),
                reason: format!("a Z-action takes exactly one generator, got {}", generators.len()),
            });
        }
        for (i, f) in generators.iter().enumerate() {
            check_bijection(i, space.len(), f)?;
            let check = verify_homeomorphism(&space, f)?;
            if !check.homeomorphism {
                return Err(Error::InvalidGenerator {
                    index: i,
                    reason: check.explanation.unwrap_or_default(),
                });
            }
        }
        Ok(ActionSpec {
            space,
            generators,
            group,
        })
    }

    /// Orbits, ordered by smallest member.
    pub fn orbits(&self) -> Vec<PointSet> {
        let n = self.space.len();
        let mut label = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = PointSet::empty(n);
            let mut queue = VecDeque::from([start]);
            label[start] = id;
            while let Some(x) = queue.pop_front() {
                orbit.insert(x);
                // finite orbits: closing under the generators also closes under inverses
                for f in &self.generators {
                    let y = f[x];
                    if label[y] == usize::MAX {
                        label[y] = id;
                        queue.push_back(y);
                    }
                }
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// Every group element as a permutation, starting with the identity.
    pub fn group_elements(&self) -> Result<Vec<Vec<usize>>> {
        let n = self.space.len();
        let id: Vec<usize> = (0..n).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut order = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for f in &self.generators {
                let h: Vec<usize> = g.iter().map(|&y| f[y]).collect();
                if seen.insert(h.clone()) {
                    if seen.len() > GROUP_ENUMERATION_CAP {
                        return Err(Error::CapExceeded {
                            requested: seen.len(),
                            cap: GROUP_ENUMERATION_CAP,
                        });
                    }
                    order.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(order)
    }
}

/// The equivalence whose classes are the orbits.
pub fn orbit_relation(action: &ActionSpec) -> Relation {
    let n = action.space.len();
    let mut rows = vec![PointSet::empty(n); n];
    for orbit in action.orbits() {
        for x in orbit.iter() {
            rows[x] = orbit.clone();
        }
    }
    Relation::from_rows(rows).expect("square by construction")
}

/// Bounded-gap evidence that `N(x, U)` is syndetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyndeticCertificate {
    pub point: usize,
    /// The smallest open neighbourhood of the point; larger ones only add return times.
    pub neighbourhood: PointSet,
    /// Orbit length (ℤ) or group order (finite).
    pub period: usize,
    /// Return times in `0..period`: powers `t` (ℤ) or element indices (finite) with `g·x ∈ U`.
    pub return_times: Vec<usize>,
    /// Largest distance between consecutive return times, cyclically (ℤ only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gap: Option<usize>,
    /// Size of the finite set `K` with `K·N(x, U) = G`: `{0, …, gap}` for ℤ, `G` for finite groups.
    pub covering_set_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyndeticReport {
    pub holds: bool,
    pub note: String,
    pub certificates: Vec<SyndeticCertificate>,
}

fn cyclic_gap(times: &[usize], period: usize) -> Option<usize> {
    let first = *times.first()?;
    let mut gap = 0;
    for w in times.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    Some(gap.max(first + period - times[times.len() - 1]))
}

/// Flow-level almost periodicity: every return-time set `N(x, U)` is syndetic.
pub fn flow_pap_syndetic(action: &ActionSpec) -> Result<SyndeticReport> {
    let space = &action.space;
    let mut certificates = Vec::with_capacity(space.len());
    match action.group {
        GroupKind::Integers => {
            let f = &action.generators[0];
            for x in 0..space.len() {
                let u = space.min_open(x).clone();
                let mut return_times = Vec::new();
                let mut y = x;
                let mut t = 0;
                loop {
                    if u.contains(y) {
                        return_times.push(t);
                    }
                    y = f[y];
                    t += 1;
                    if y == x {
                        break;
                    }
                }
                let gap = cyclic_gap(&return_times, t);
                certificates.push(SyndeticCertificate {
                    point: x,
                    neighbourhood: u,
                    period: t,
                    return_times,
                    gap,
                    covering_set_size: gap.map_or(0, |g| g + 1),
                });
            }
        }
        GroupKind::Finite => {
            let elements = action.group_elements()?;
            for x in 0..space.len() {
                let u = space.min_open(x).clone();
                let return_times: Vec<usize> = elements
                    .iter()
                    .enumerate()
                    .filter(|(_, g)| u.contains(g[x]))
                    .map(|(i, _)| i)
                    .collect();
                certificates.push(SyndeticCertificate {
                    point: x,
                    neighbourhood: u,
                    period: elements.len(),
                    return_times,
                    gap: None,
                    covering_set_size: elements.len(),
                });
            }
        }
    }
    // identity (time 0) always returns, so every certificate is nonempty
    let holds = certificates.iter().all(|c| c.return_times.first() == Some(&0));
    Ok(SyndeticReport {
        holds,
        note: NOTE_SYNDETIC.into(),
        certificates,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodicityProfile {
    pub pointwise_periodic: bool,
    pub periodic: bool,
    /// Order of the generator; `None` means infinite.
    pub max_order: Option<u64>,
}

/// Orbit-length profile of a single-generator action.
pub fn periodicity_profile(action: &ActionSpec) -> Result<PeriodicityProfile> {
    if action.generators.len() != 1 {
        return Err(Error::InvalidGenerator {
            index: action.generators.len(),
            reason: "periodicity is defined for a single generator".into(),
        });
    }
    let order = action
        .orbits()
        .iter()
        .fold(1u64, |acc, o| acc.lcm(&(o.len() as u64)));
    Ok(PeriodicityProfile {
        pointwise_periodic: true,
        periodic: true,
        max_order: Some(order),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, xs: &[usize]) -> PointSet {
        PointSet::from_indices(n, xs.iter().copied())
    }

    #[test]
    fn homeomorphism_examples() {
        let s = FinSpace::sierpinski();
        let id = verify_homeomorphism(&s, &[0, 1]).unwrap();
        assert!(id.continuous && id.homeomorphism);
        let swap = verify_homeomorphism(&s, &[1, 0]).unwrap();
        assert!(!swap.continuous && !swap.homeomorphism);
        assert_eq!(swap.witness, Some(0));
        let d = FinSpace::discrete(4);
        assert!(verify_homeomorphism(&d, &[2, 3, 1, 0]).unwrap().homeomorphism);
    }

    #[test]
    fn continuous_bijection_that_is_not_open() {
        // min opens {0,1}, {1}, {2}; swapping 1 and 2 sends min_open(0) = {0,1} to {0,2} ⊄ {0,1}
        let x = FinSpace::from_min_open(vec![set(3, &[0, 1]), set(3, &[1]), set(3, &[2])]).unwrap();
        let c = verify_homeomorphism(&x, &[0, 2, 1]).unwrap();
        assert!(!c.continuous);
    }

    #[test]
    fn non_bijection_rejected() {
        let s = FinSpace::sierpinski();
        assert!(matches!(verify_homeomorphism(&s, &[0, 0]), Err(Error::NotABijection { .. })));
        assert!(matches!(verify_homeomorphism(&s, &[0]), Err(Error::NotABijection { .. })));
        assert!(matches!(
            ActionSpec::new(s.clone(), vec![vec![1, 0]], GroupKind::Integers),
            Err(Error::InvalidGenerator { index: 0, .. })
        ));
        assert!(matches!(
            ActionSpec::new(s, vec![vec![0, 1], vec![0, 1]], GroupKind::Integers),
            Err(Error::InvalidGenerator { .. })
        ));
    }

    #[test]
    fn orbit_relation_examples() {
        let s = FinSpace::sierpinski();
        let a = ActionSpec::new(s, vec![vec![0, 1]], GroupKind::Integers).unwrap();
        assert_eq!(orbit_relation(&a), Relation::identity(2));

        let d = FinSpace::discrete(4);
        let a = ActionSpec::new(d, vec![vec![1, 2, 3, 0]], GroupKind::Integers).unwrap();
        assert_eq!(orbit_relation(&a), Relation::full(4));

        // 1 and 2 are topologically indistinguishable, so (0)(1 2) is a homeomorphism
        let c = FinSpace::from_min_open(vec![set(3, &[0, 1, 2]), set(3, &[1, 2]), set(3, &[1, 2])]).unwrap();
        let a = ActionSpec::new(c, vec![vec![0, 2, 1]], GroupKind::Integers).unwrap();
        assert_eq!(orbit_relation(&a).classes(), vec![set(3, &[0]), set(3, &[1, 2])]);
    }

    #[test]
    fn syndetic_examples() {
        let s = FinSpace::sierpinski();
        let trivial = ActionSpec::new(s, vec![vec![0, 1]], GroupKind::Integers).unwrap();
        let r = flow_pap_syndetic(&trivial).unwrap();
        assert!(r.holds);
        assert!(r.certificates.iter().all(|c| c.gap == Some(1)));

        let d = FinSpace::discrete(3);
        let cycle = ActionSpec::new(d.clone(), vec![vec![1, 2, 0]], GroupKind::Integers).unwrap();
        let r = flow_pap_syndetic(&cycle).unwrap();
        assert!(r.holds);
        assert_eq!(r.certificates[0].return_times, vec![0]);
        assert_eq!(r.certificates[0].gap, Some(3));
        assert_eq!(r.note, NOTE_SYNDETIC);

        let sym = ActionSpec::new(d, vec![vec![1, 0, 2], vec![0, 2, 1]], GroupKind::Finite).unwrap();
        assert_eq!(sym.group_elements().unwrap().len(), 6);
        let r = flow_pap_syndetic(&sym).unwrap();
        assert!(r.holds);
        assert_eq!(r.certificates[0].return_times.len(), 2);
    }

    #[test]
    fn cyclic_gap_wraps() {
        assert_eq!(cyclic_gap(&[0, 1], 5), Some(4));
        assert_eq!(cyclic_gap(&[0, 2, 3], 4), Some(2));
        assert_eq!(cyclic_gap(&[], 4), None);
    }

    #[test]
    fn periodicity_examples() {
        let s = FinSpace::sierpinski();
        let id = ActionSpec::new(s, vec![vec![0, 1]], GroupKind::Integers).unwrap();
        assert_eq!(
            periodicity_profile(&id).unwrap(),
            PeriodicityProfile { pointwise_periodic: true, periodic: true, max_order: Some(1) }
        );
        let d = FinSpace::discrete(5);
        let c = ActionSpec::new(d.clone(), vec![vec![1, 2, 0, 3, 4]], GroupKind::Integers).unwrap();
        assert_eq!(periodicity_profile(&c).unwrap().max_order, Some(3));
        let mixed = ActionSpec::new(d, vec![vec![1, 2, 0, 4, 3]], GroupKind::Integers).unwrap();
        assert_eq!(periodicity_profile(&mixed).unwrap().max_order, Some(6));
    }
}
