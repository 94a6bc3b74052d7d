//! Binary relations on the points of a finite space.
//!
//! A [`Relation`] is a square boolean matrix stored row-wise: row `x` is the
//! set `E(x) = {y : (x, y) ∈ E}`. Relations never hold a reference to a space;
//! the topological operators take the space explicitly so one matrix can be
//! examined under many topologies.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::finspace::FinSpace;
use crate::pointset::PointSet;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<PointSet>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationProfile {
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    pub equivalence: bool,
}

impl std::fmt::Debug for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// Serialized as the ascending list of `[x, y]` pairs.
impl Serialize for Relation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.pairs().map(|(x, y)| [x, y]))
    }
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            rows: vec![PointSet::empty(n); n],
        }
    }

    /// The diagonal `1_X`.
    pub fn identity(n: usize) -> Self {
        Relation {
            rows: (0..n).map(|x| PointSet::singleton(n, x)).collect(),
        }
    }

    pub fn full(n: usize) -> Self {
        Relation {
            rows: vec![PointSet::full(n); n],
        }
    }

    pub fn from_rows(rows: Vec<PointSet>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.universe() != n) {
            return Err(Error::DimensionMismatch {
                relation: bad.universe(),
                space: n,
            });
        }
        Ok(Relation { rows })
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Result<Self> {
        let mut e = Self::empty(n);
        for (x, y) in pairs {
            for p in [x, y] {
                if p >= n {
                    return Err(Error::PointOutOfRange { point: p, n });
                }
            }
            e.rows[x].insert(y);
        }
        Ok(e)
    }

    /// The equivalence `E_F` whose classes are the listed blocks. Blocks must be
    /// nonempty, pairwise disjoint and cover `0..n`.
    pub fn from_partition(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut seen = PointSet::empty(n);
        let mut e = Self::empty(n);
        for (i, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotAPartition(format!("block {i} is empty")));
            }
            let set = PointSet::try_from_indices(n, block.iter().copied())
                .map_err(|point| Error::PointOutOfRange { point, n })?;
            if set.intersects(&seen) {
                let p = set.intersection(&seen).first().unwrap_or_default();
                return Err(Error::NotAPartition(format!("point {p} appears in more than one block")));
            }
            seen.union_with(&set);
            for x in set.iter() {
                e.rows[x] = set.clone();
            }
        }
        if let Some(p) = seen.complement().first() {
            return Err(Error::NotAPartition(format!("point {p} is not covered")));
        }
        Ok(e)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, x: usize) -> &PointSet {
        &self.rows[x]
    }

    pub fn rows(&self) -> &[PointSet] {
        &self.rows
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().map(move |y| (x, y)))
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(PointSet::len).sum()
    }

    /// `E⁻¹`.
    pub fn transpose(&self) -> Relation {
        let n = self.len();
        let mut t = Self::empty(n);
        for (x, y) in self.pairs() {
            t.rows[y].insert(x);
        }
        t
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation {
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.union(b)).collect(),
        }
    }

    /// The relation as a subset of the product carrier, indexed row-major.
    pub fn as_product_set(&self) -> PointSet {
        let n = self.len();
        PointSet::from_indices(n * n, self.pairs().map(|(x, y)| FinSpace::pair_index(x, y, n)))
    }

    pub fn profile(&self) -> RelationProfile {
        let reflexive = self.is_reflexive();
        let symmetric = self.is_symmetric();
        let transitive = self.is_transitive();
        RelationProfile {
            reflexive,
            symmetric,
            transitive,
            equivalence: reflexive && symmetric && transitive,
        }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|x| self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(x, y)| self.contains(y, x))
    }

    /// `E(E(x)) ⊆ E(x)` for every `x`.
    pub fn is_transitive(&self) -> bool {
        self.rows
            .iter()
            .all(|row| row.iter().all(|y| self.rows[y].is_subset(row)))
    }

    pub fn is_equivalence(&self) -> bool {
        self.profile().equivalence
    }

    /// Distinct rows in order of first appearance; for an equivalence these are
    /// its classes, ordered by smallest member.
    pub fn classes(&self) -> Vec<PointSet> {
        let mut out: Vec<PointSet> = Vec::new();
        for row in &self.rows {
            if !out.contains(row) {
                out.push(row.clone());
            }
        }
        out
    }

    fn check_dim(&self, space: &FinSpace) -> Result<()> {
        if self.len() != space.len() {
            return Err(Error::DimensionMismatch {
                relation: self.len(),
                space: space.len(),
            });
        }
        Ok(())
    }
}

/// `E(A) = ⋃_{y ∈ A} E(y)`.
pub fn saturate(e: &Relation, a: &PointSet) -> PointSet {
    a.iter().fold(PointSet::empty(e.len()), |mut acc, y| {
        acc.union_with(e.row(y));
        acc
    })
}

/// `Ê(x) = cl E(x)`.
pub fn hat(space: &FinSpace, e: &Relation) -> Result<Relation> {
    e.check_dim(space)?;
    Ok(Relation {
        rows: e.rows.iter().map(|row| space.closure(row)).collect(),
    })
}

/// Closure of `E` in `X × X`.
///
/// `(x, y)` is in the closure iff `min_open(x) × min_open(y)` meets `E`, i.e.
/// iff `min_open(y)` meets `E(min_open(x))`; so row `x` is the closure of the
/// saturation of `min_open(x)`.
pub fn product_closure(space: &FinSpace, e: &Relation) -> Result<Relation> {
    e.check_dim(space)?;
    Ok(Relation {
        rows: (0..space.len())
            .map(|x| space.closure(&saturate(e, space.min_open(x))))
            .collect(),
    })
}

/// Prolongation `D`: `y ∈ D(x)` iff every neighbourhood pair `U ∋ x`, `V ∋ y`
/// holds some `a ∈ U`, `b ∈ V` with `b ∈ E(a)`.
///
/// In a finite space nets reduce to neighbourhood quantification and the
/// minimal opens are cofinal, so only those are tried. Written as a direct
/// quantifier, independent of [`product_closure`], which it must equal.
pub fn prolongation(space: &FinSpace, e: &Relation) -> Result<Relation> {
    e.check_dim(space)?;
    let n = space.len();
    let mut d = Relation::empty(n);
    for x in 0..n {
        for y in 0..n {
            let hit = space
                .min_open(x)
                .iter()
                .any(|a| space.min_open(y).iter().any(|b| e.contains(a, b)));
            if hit {
                d.rows[x].insert(y);
            }
        }
    }
    Ok(d)
}

/// Orbit-class relation `Ẽ`: `y ∈ Ẽ(x)` iff `Ê(y) = Ê(x)`. Always an equivalence.
pub fn tilde(space: &FinSpace, e: &Relation) -> Result<Relation> {
    let h = hat(space, e)?;
    Ok(same_rows(&h))
}

/// The equivalence "same row" of a relation.
pub(crate) fn same_rows(e: &Relation) -> Relation {
    let n = e.len();
    Relation {
        rows: (0..n)
            .map(|x| PointSet::from_indices(n, (0..n).filter(|&y| e.row(y) == e.row(x))))
            .collect(),
    }
}

/// A space and relation cut down to `s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub space: FinSpace,
    pub relation: Relation,
    /// Subspace index ↦ original index.
    pub map: Vec<usize>,
}

/// Subspace topology on `s` with `E ∩ (s × s)`, reindexed to `0..|s|`.
pub fn restrict(space: &FinSpace, e: &Relation, s: &PointSet) -> Result<Restriction> {
    e.check_dim(space)?;
    let (sub, map) = space.subspace(s)?;
    let k = map.len();
    let rows = map
        .iter()
        .map(|&x| {
            PointSet::from_indices(
                k,
                map.iter()
                    .enumerate()
                    .filter(|(_, &y)| e.contains(x, y))
                    .map(|(i, _)| i),
            )
        })
        .collect();
    Ok(Restriction {
        space: sub,
        relation: Relation { rows },
        map,
    })
}
