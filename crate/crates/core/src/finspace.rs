//! Finite topological spaces.
//!
//! Every topology on a finite set is Alexandrov: arbitrary intersections of
//! open sets are open, so each point `x` has a smallest open neighbourhood
//! `min_open(x)`. A space is stored as that table alone. The open sets are
//! exactly the unions of minimal opens, and the relation
//! `y ∈ min_open(x)` is the specialization preorder of the space.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pointset::PointSet;

/// Largest carrier accepted by [`all_topologies`].
pub const ENUMERATION_CAP: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FinSpace {
    #[serde(rename = "points")]
    n: usize,
    min_open: Vec<PointSet>,
}

impl std::fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FinSpace")
            .field("n", &self.n)
            .field("min_open", &self.min_open)
            .finish()
    }
}

/// Separation axioms, decided definitionally. `t3` is Hausdorff plus regular;
/// `normal` carries no T1 assumption.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeparationProfile {
    pub t0: bool,
    pub t1: bool,
    pub hausdorff: bool,
    pub regular: bool,
    pub t3: bool,
    pub normal: bool,
}

impl FinSpace {
    /// Builds a space from a list of claimed open sets.
    ///
    /// The family, together with `∅`, must contain the whole carrier and be
    /// closed under pairwise union and intersection.
    pub fn build(n: usize, opens: &[PointSet]) -> Result<Self> {
        let mut family: BTreeSet<PointSet> = BTreeSet::new();
        for o in opens {
            if o.universe() != n {
                let point = o.iter().find(|&x| x >= n).unwrap_or(o.universe());
                return Err(Error::PointOutOfRange { point, n });
            }
            family.insert(o.clone());
        }
        family.insert(PointSet::empty(n));
        let whole = PointSet::full(n);
        if !family.contains(&whole) {
            return Err(Error::NotATopology {
                reason: "the whole carrier is not listed as open".into(),
                first: whole.clone(),
                second: whole,
            });
        }
        let members: Vec<&PointSet> = family.iter().collect();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                if !family.contains(&a.union(b)) {
                    return Err(Error::NotATopology {
                        reason: "union is not open".into(),
                        first: (*a).clone(),
                        second: (*b).clone(),
                    });
                }
                if !family.contains(&a.intersection(b)) {
                    return Err(Error::NotATopology {
                        reason: "intersection is not open".into(),
                        first: (*a).clone(),
                        second: (*b).clone(),
                    });
                }
            }
        }
        let min_open = (0..n)
            .map(|x| {
                family
                    .iter()
                    .filter(|o| o.contains(x))
                    .fold(whole.clone(), |acc, o| acc.intersection(o))
            })
            .collect();
        Ok(FinSpace { n, min_open })
    }

    /// Builds a space directly from its minimal-open table, checking
    /// `x ∈ min_open(x)` and `y ∈ min_open(x) ⇒ min_open(y) ⊆ min_open(x)`.
    pub fn from_min_open(min_open: Vec<PointSet>) -> Result<Self> {
        let n = min_open.len();
        for (x, row) in min_open.iter().enumerate() {
            if row.universe() != n {
                return Err(Error::InconsistentMinimalOpens {
                    point: x,
                    reason: format!("row has width {}, expected {n}", row.universe()),
                });
            }
            if !row.contains(x) {
                return Err(Error::InconsistentMinimalOpens {
                    point: x,
                    reason: "point is missing from its own minimal open set".into(),
                });
            }
            if let Some(y) = row.iter().find(|&y| !min_open[y].is_subset(row)) {
                return Err(Error::InconsistentMinimalOpens {
                    point: x,
                    reason: format!("min_open({y}) is not contained in min_open({x})"),
                });
            }
        }
        Ok(FinSpace { n, min_open })
    }

    pub fn discrete(n: usize) -> Self {
        FinSpace {
            n,
            min_open: (0..n).map(|x| PointSet::singleton(n, x)).collect(),
        }
    }

    pub fn indiscrete(n: usize) -> Self {
        FinSpace {
            n,
            min_open: vec![PointSet::full(n); n],
        }
    }

    /// The Sierpiński space: points `{0, 1}`, opens `∅, {1}, X`.
    pub fn sierpinski() -> Self {
        FinSpace {
            n: 2,
            min_open: vec![PointSet::full(2), PointSet::singleton(2, 1)],
        }
    }

    /// The three-point chain with opens `∅ ⊂ {2} ⊂ {1,2} ⊂ X`.
    pub fn chain3() -> Self {
        FinSpace {
            n: 3,
            min_open: vec![
                PointSet::full(3),
                PointSet::from_indices(3, [1, 2]),
                PointSet::singleton(3, 2),
            ],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn min_open(&self, x: usize) -> &PointSet {
        &self.min_open[x]
    }

    pub fn min_opens(&self) -> &[PointSet] {
        &self.min_open
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.n)
    }

    pub fn whole(&self) -> PointSet {
        PointSet::full(self.n)
    }

    /// `cl(S) = {x : min_open(x) ∩ S ≠ ∅}`.
    pub fn closure(&self, s: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.n,
            (0..self.n).filter(|&x| self.min_open[x].intersects(s)),
        )
    }

    /// `int(S) = {x : min_open(x) ⊆ S}`.
    pub fn interior(&self, s: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.n,
            (0..self.n).filter(|&x| self.min_open[x].is_subset(s)),
        )
    }

    /// Smallest open set containing `s`.
    pub fn open_hull(&self, s: &PointSet) -> PointSet {
        s.iter().fold(self.empty_set(), |mut acc, x| {
            acc.union_with(&self.min_open[x]);
            acc
        })
    }

    pub fn is_open(&self, s: &PointSet) -> bool {
        s.iter().all(|x| self.min_open[x].is_subset(s))
    }

    pub fn is_closed(&self, s: &PointSet) -> bool {
        self.closure(s) == *s
    }

    /// Every open set, in ascending order. Cost is proportional to the number
    /// of opens times `n`, which can be `2^n`.
    pub fn open_sets(&self) -> Vec<PointSet> {
        let mut seen: BTreeSet<PointSet> = BTreeSet::new();
        let mut stack = vec![self.empty_set()];
        seen.insert(self.empty_set());
        while let Some(o) = stack.pop() {
            for x in 0..self.n {
                if o.contains(x) {
                    continue;
                }
                let next = o.union(&self.min_open[x]);
                if seen.insert(next.clone()) {
                    stack.push(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn closed_sets(&self) -> Vec<PointSet> {
        let mut closed: Vec<PointSet> = self.open_sets().iter().map(|o| o.complement()).collect();
        closed.sort();
        closed
    }

    pub fn separation_profile(&self) -> SeparationProfile {
        let n = self.n;
        let distinct = || (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)));
        let t0 = distinct().all(|(x, y)| !(self.min_open[x].contains(y) && self.min_open[y].contains(x)));
        let t1 = distinct().all(|(x, y)| !self.min_open[x].contains(y));
        let hausdorff = distinct().all(|(x, y)| self.min_open[x].is_disjoint(&self.min_open[y]));
        // Regularity and normality reduce to point closures: a closed set C is
        // the union of cl{c} over c ∈ C, and the smallest open superset of C is
        // the union of the smallest open supersets of those point closures.
        let point_closure: Vec<PointSet> =
            (0..n).map(|c| self.closure(&PointSet::singleton(n, c))).collect();
        let hull_of_closure: Vec<PointSet> = point_closure.iter().map(|c| self.open_hull(c)).collect();
        let regular = (0..n).all(|x| {
            (0..n).all(|c| point_closure[c].contains(x) || self.min_open[x].is_disjoint(&hull_of_closure[c]))
        });
        let normal = (0..n).all(|a| {
            (0..n).all(|b| {
                point_closure[a].intersects(&point_closure[b])
                    || hull_of_closure[a].is_disjoint(&hull_of_closure[b])
            })
        });
        SeparationProfile {
            t0,
            t1,
            hausdorff,
            regular,
            t3: hausdorff && regular,
            normal,
        }
    }

    /// Finite spaces are compact.
    pub fn is_compact(&self) -> bool {
        true
    }

    /// Index of the pair `(i, j)` in a product with a right factor of `m` points.
    pub fn pair_index(i: usize, j: usize, m: usize) -> usize {
        i * m + j
    }

    /// Product space, points indexed row-major: `(i, j) ↦ i·m + j`.
    pub fn product(&self, other: &FinSpace) -> FinSpace {
        let m = other.n;
        let size = self.n * m;
        let mut min_open = Vec::with_capacity(size);
        for i in 0..self.n {
            for j in 0..m {
                let mut row = PointSet::empty(size);
                for a in self.min_open[i].iter() {
                    for b in other.min_open[j].iter() {
                        row.insert(Self::pair_index(a, b, m));
                    }
                }
                min_open.push(row);
            }
        }
        FinSpace { n: size, min_open }
    }

    /// Relative topology on `s`. Returns the subspace and, for each subspace
    /// point, its index in `self`.
    pub fn subspace(&self, s: &PointSet) -> Result<(FinSpace, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let map: Vec<usize> = s.iter().collect();
        let k = map.len();
        let min_open = map
            .iter()
            .map(|&x| {
                PointSet::from_indices(
                    k,
                    map.iter()
                        .enumerate()
                        .filter(|(_, &y)| self.min_open[x].contains(y))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        Ok((FinSpace { n: k, min_open }, map))
    }

    /// Transports the topology along the bijection `perm`: point `x` becomes `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> FinSpace {
        let mut min_open = vec![self.empty_set(); self.n];
        for x in 0..self.n {
            min_open[perm[x]] = PointSet::from_indices(self.n, self.min_open[x].iter().map(|y| perm[y]));
        }
        FinSpace { n: self.n, min_open }
    }
}

/// Every topology on `n` labelled points, each exactly once.
///
/// Topologies on a finite set correspond to preorders on it, so this walks
/// all reflexive relations and keeps the transitive ones.
pub fn all_topologies(n: usize) -> Result<impl Iterator<Item = FinSpace>> {
    if n > ENUMERATION_CAP {
        return Err(Error::CapExceeded {
            requested: n,
            cap: ENUMERATION_CAP,
        });
    }
    let off_diagonal: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let count: u64 = 1 << off_diagonal.len();
    Ok((0..count).filter_map(move |mask| {
        let mut above: Vec<u32> = (0..n).map(|x| 1 << x).collect();
        for (bit, &(x, y)) in off_diagonal.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                above[x] |= 1 << y;
            }
        }
        let transitive = (0..n).all(|x| {
            (0..n)
                .filter(|&y| above[x] >> y & 1 == 1)
                .all(|y| above[y] & !above[x] == 0)
        });
        transitive.then(|| FinSpace {
            n,
            min_open: above
                .iter()
                .map(|&m| PointSet::from_mask(n, m as u64))
                .collect(),
        })
    }))
}
