//! Instance streams for the theorem battery: every topology times every
//! partition on a few points, or seeded random Alexandrov spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::finspace::{all_topologies, FinSpace};
use crate::pointset::PointSet;
use crate::relation::Relation;

/// Largest carrier for [`random_instances`].
pub const RANDOM_POINT_CAP: usize = 8;

/// Every partition of `0..n` as an equivalence, via restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Relation> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn grow(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Relation>) {
        let n = labels.len();
        if i == n {
            out.push(from_labels(labels));
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            grow(i + 1, max.max(l), labels, out);
        }
    }
    if n == 0 {
        return vec![Relation::empty(0)];
    }
    // the first point always gets label 0
    grow(1, 0, &mut labels, &mut out);
    out
}

/// The equivalence "same label".
pub fn from_labels(labels: &[usize]) -> Relation {
    let n = labels.len();
    let rows = (0..n)
        .map(|x| PointSet::from_indices(n, (0..n).filter(|&y| labels[y] == labels[x])))
        .collect();
    Relation::from_rows(rows).expect("square by construction")
}

/// All (topology, partition) pairs on `n` points.
pub fn exhaustive_instances(n: usize) -> Result<Vec<(FinSpace, Relation)>> {
    let partitions = all_partitions(n);
    Ok(all_topologies(n)?
        .flat_map(|space| partitions.iter().map(move |e| (space.clone(), e.clone())))
        .collect())
}

/// A random Alexandrov space: the reflexive-transitive closure of a random
/// digraph, read as a specialization preorder.
pub fn random_space<R: Rng>(rng: &mut R, n: usize) -> FinSpace {
    let density: f64 = rng.gen_range(0.05..0.5);
    let mut reach: Vec<PointSet> = (0..n).map(|x| PointSet::singleton(n, x)).collect();
    for (x, row) in reach.iter_mut().enumerate() {
        for y in 0..n {
            if x != y && rng.gen_bool(density) {
                row.insert(y);
            }
        }
    }
    // Warshall
    for k in 0..n {
        for x in 0..n {
            if reach[x].contains(k) {
                let via = reach[k].clone();
                reach[x].union_with(&via);
            }
        }
    }
    FinSpace::from_min_open(reach).expect("preorder closure is Alexandrov-consistent")
}

/// A random partition of `0..n` into at most a random number of blocks.
pub fn random_equivalence<R: Rng>(rng: &mut R, n: usize) -> Relation {
    let blocks = rng.gen_range(1..=n.max(1));
    let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..blocks)).collect();
    from_labels(&labels)
}

/// `count` instances with carriers of `1..=max_points` points, fully
/// determined by `seed`.
pub fn random_instances(seed: u64, count: usize, max_points: usize) -> Vec<(FinSpace, Relation)> {
    assert!(
        (1..=RANDOM_POINT_CAP).contains(&max_points),
        "max_points must be in 1..={RANDOM_POINT_CAP}"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_points);
            let space = random_space(&mut rng, n);
            let e = random_equivalence(&mut rng, n);
            (space, e)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (0..=5).map(|n| all_partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
        assert!(all_partitions(4).iter().all(Relation::is_equivalence));
    }

    #[test]
    fn exhaustive_sizes() {
        assert_eq!(exhaustive_instances(1).unwrap().len(), 1);
        assert_eq!(exhaustive_instances(3).unwrap().len(), 145);
        assert_eq!(exhaustive_instances(4).unwrap().len(), 5325);
    }

    #[test]
    fn random_is_seeded() {
        assert_eq!(random_instances(7, 50, 6), random_instances(7, 50, 6));
        assert_ne!(random_instances(7, 50, 6), random_instances(8, 50, 6));
        assert!(random_instances(1, 200, 6).iter().all(|(s, e)| s.len() == e.len() && s.len() <= 6));
    }
}
