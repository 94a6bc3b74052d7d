//! Definitional oracles over explicit open-set families, stored as bitmasks.
//! Nothing here uses minimal open sets.

#![allow(dead_code)]

use apdyn::{FinSpace, PointSet, Relation};

pub type Mask = u32;

#[derive(Debug, Clone)]
pub struct Topo {
    pub n: usize,
    pub opens: Vec<Mask>,
}

pub fn full(n: usize) -> Mask {
    if n == 32 {
        !0
    } else {
        (1 << n) - 1
    }
}

pub fn bit(x: usize) -> Mask {
    1 << x
}

pub fn has(m: Mask, x: usize) -> bool {
    m & bit(x) != 0
}

pub fn subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

impl Topo {
    pub fn of(space: &FinSpace) -> Topo {
        Topo {
            n: space.len(),
            opens: space.open_sets().iter().map(|s| s.to_mask() as Mask).collect(),
        }
    }

    pub fn to_space(&self) -> FinSpace {
        let sets: Vec<PointSet> = self.opens.iter().map(|&m| PointSet::from_mask(self.n, m as u64)).collect();
        FinSpace::build(self.n, &sets).expect("oracle families are topologies")
    }

    pub fn is_open(&self, s: Mask) -> bool {
        self.opens.contains(&s)
    }

    pub fn closed(&self) -> Vec<Mask> {
        self.opens.iter().map(|&u| full(self.n) & !u).collect()
    }

    pub fn closure(&self, s: Mask) -> Mask {
        self.closed().into_iter().filter(|&c| subset(s, c)).fold(full(self.n), |a, c| a & c)
    }

    pub fn interior(&self, s: Mask) -> Mask {
        self.opens.iter().filter(|&&u| subset(u, s)).fold(0, |a, &u| a | u)
    }

    pub fn neighbourhoods(&self, x: usize) -> impl Iterator<Item = Mask> + '_ {
        self.opens.iter().copied().filter(move |&u| has(u, x))
    }

    pub fn separation(&self) -> [bool; 6] {
        let n = self.n;
        let pairs = || (0..n).flat_map(move |x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y);
        let t0 = pairs().all(|(x, y)| self.opens.iter().any(|&u| has(u, x) != has(u, y)));
        let t1 = pairs().all(|(x, y)| self.neighbourhoods(x).any(|u| !has(u, y)));
        let disjoint_nbhds = |a: Mask, b: Mask| {
            self.opens
                .iter()
                .any(|&u| subset(a, u) && self.opens.iter().any(|&v| subset(b, v) && u & v == 0))
        };
        let hausdorff = pairs().all(|(x, y)| disjoint_nbhds(bit(x), bit(y)));
        let closed = self.closed();
        let regular = (0..n).all(|x| closed.iter().filter(|&&c| !has(c, x)).all(|&c| disjoint_nbhds(bit(x), c)));
        let normal = closed
            .iter()
            .all(|&c| closed.iter().filter(|&&d| c & d == 0).all(|&d| disjoint_nbhds(c, d)));
        [t0, t1, hausdorff, regular, hausdorff && regular, normal]
    }
}

/// Every family containing `∅` and `X` closed under pairwise unions and intersections.
pub fn all_families(n: usize) -> Vec<Topo> {
    let x = full(n);
    let middle: Vec<Mask> = (1..x).collect();
    let mut out = Vec::new();
    for pick in 0u64..(1u64 << middle.len()) {
        let mut opens = vec![0, x];
        opens.extend(middle.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &m)| m));
        let ok = opens
            .iter()
            .all(|&a| opens.iter().all(|&b| opens.contains(&(a | b)) && opens.contains(&(a & b))));
        if ok {
            out.push(Topo { n, opens });
        }
    }
    out
}

pub type Rows = Vec<Mask>;

pub fn rows(e: &Relation) -> Rows {
    e.rows().iter().map(|r| r.to_mask() as Mask).collect()
}

pub fn relation(rows: &Rows) -> Relation {
    let n = rows.len();
    Relation::from_rows(rows.iter().map(|&m| PointSet::from_mask(n, m as u64)).collect()).unwrap()
}

pub fn hat(t: &Topo, e: &Rows) -> Rows {
    e.iter().map(|&r| t.closure(r)).collect()
}

/// Closure of `e` in `X × X`: every box `U × V` around the pair meets `e`.
pub fn bar(t: &Topo, e: &Rows) -> Rows {
    (0..t.n)
        .map(|x| {
            (0..t.n)
                .filter(|&y| {
                    t.neighbourhoods(x).all(|u| {
                        t.neighbourhoods(y)
                            .all(|v| (0..t.n).any(|a| has(u, a) && e[a] & v != 0))
                    })
                })
                .fold(0, |m, y| m | bit(y))
        })
        .collect()
}

pub fn is_equivalence(e: &Rows) -> bool {
    let n = e.len();
    (0..n).all(|x| has(e[x], x))
        && (0..n).all(|x| (0..n).all(|y| has(e[x], y) == has(e[y], x)))
        && (0..n).all(|x| (0..n).filter(|&y| has(e[x], y)).all(|y| subset(e[y], e[x])))
}

pub fn saturated(e: &Rows, a: Mask) -> bool {
    (0..e.len()).filter(|&z| has(a, z)).all(|z| subset(e[z], a))
}

/// For each `x` and every open `U ⊇ Ê(x)` some saturated open `V` has `Ê(x) ⊆ V ⊆ U`.
pub fn l_stable(t: &Topo, e: &Rows) -> bool {
    let h = hat(t, e);
    (0..t.n).all(|x| {
        t.opens.iter().filter(|&&u| subset(h[x], u)).all(|&u| {
            t.opens
                .iter()
                .any(|&v| saturated(e, v) && subset(h[x], v) && subset(v, u))
        })
    })
}

/// Orbit classes: equal `Ê` rows.
pub fn tilde(t: &Topo, e: &Rows) -> Rows {
    let h = hat(t, e);
    (0..t.n)
        .map(|x| (0..t.n).filter(|&y| h[y] == h[x]).fold(0, |m, y| m | bit(y)))
        .collect()
}

/// Hausdorffness of the quotient by an equivalence, straight from the quotient topology.
pub fn quotient_hausdorff(t: &Topo, q: &Rows) -> bool {
    let mut classes: Vec<Mask> = q.clone();
    classes.sort();
    classes.dedup();
    let k = classes.len();
    let preimage = |s: u32| (0..k).filter(|&c| s >> c & 1 == 1).fold(0, |m, c| m | classes[c]);
    let q_opens: Vec<u32> = (0..1u32 << k).filter(|&s| t.is_open(preimage(s))).collect();
    (0..k).all(|a| {
        (0..k).filter(|&b| b != a).all(|b| {
            q_opens.iter().any(|&u| {
                u >> a & 1 == 1 && q_opens.iter().any(|&v| v >> b & 1 == 1 && u & v == 0)
            })
        })
    })
}

/// Points `x` with `Ê(y) = Ê(x)` for every `y ∈ Ê(x)`.
pub fn almost_periodic_points(t: &Topo, e: &Rows) -> Mask {
    let h = hat(t, e);
    (0..t.n)
        .filter(|&x| (0..t.n).filter(|&y| has(h[x], y)).all(|y| h[y] == h[x]))
        .fold(0, |m, x| m | bit(x))
}

pub fn partitions(n: usize) -> Vec<Rows> {
    apdyn::instances::all_partitions(n).iter().map(rows).collect()
}

/// Library results that disagree with the oracles on one instance.
pub fn mismatches(t: &Topo, e_rows: &Rows, deep: bool) -> Vec<String> {
    use apdyn::checkers;
    use apdyn::relation;

    let mut out = Vec::new();
    let mut expect = |what: &str, ok: bool| {
        if !ok {
            out.push(what.to_string());
        }
    };
    let space = t.to_space();
    let e = relation(e_rows);
    let n = t.n;

    let h = hat(t, e_rows);
    let b = bar(t, e_rows);
    expect("hat", rows(&relation::hat(&space, &e).unwrap()) == h);
    expect("product_closure", rows(&relation::product_closure(&space, &e).unwrap()) == b);
    expect("prolongation", rows(&relation::prolongation(&space, &e).unwrap()) == b);
    let sq = space.product(&space);
    let via_product = sq.closure(&e.as_product_set());
    expect(
        "product space closure",
        via_product == relation::product_closure(&space, &e).unwrap().as_product_set(),
    );
    if !deep {
        return out;
    }

    let mut lib_opens = Topo::of(&space).opens;
    let mut fam = t.opens.clone();
    lib_opens.sort();
    fam.sort();
    expect("open sets", lib_opens == fam);
    for s in 0..=full(n) {
        let ps = PointSet::from_mask(n, s as u64);
        expect("closure", space.closure(&ps).to_mask() as Mask == t.closure(s));
        expect("interior", space.interior(&ps).to_mask() as Mask == t.interior(s));
        let hull = t.opens.iter().filter(|&&u| subset(s, u)).fold(full(n), |a, &u| a & u);
        expect("open hull", space.open_hull(&ps).to_mask() as Mask == hull);
        expect("is_open", space.is_open(&ps) == t.is_open(s));
    }
    let sep = space.separation_profile();
    expect(
        "separation profile",
        [sep.t0, sep.t1, sep.hausdorff, sep.regular, sep.t3, sep.normal] == t.separation(),
    );
    let til = tilde(t, e_rows);
    expect("tilde", rows(&relation::tilde(&space, &e).unwrap()) == til);

    let report = checkers::analyze(&space, &e).unwrap();
    let v = report.verdicts;
    let hat_eq = is_equivalence(&h);
    expect("pap", v.pap_decomposition == hat_eq);
    expect("r_closed", v.r_closed == (bar(t, &h) == h));
    expect("d_stable", v.d_stable == (b == h));
    expect("l_stable", v.l_stable == l_stable(t, e_rows));
    expect("minimal", v.minimal == h.iter().all(|&r| r == full(n)));
    expect(
        "quotient hausdorff",
        v.quotient_hausdorff == quotient_hausdorff(t, if hat_eq { &h } else { &til }),
    );
    expect(
        "almost periodic points",
        report.almost_periodic_points.to_mask() as Mask == almost_periodic_points(t, e_rows),
    );
    expect("no violations", report.violations.is_empty());
    for w in &report.witnesses {
        expect("witness replays", w.replay(&space, &e));
    }
    out
}
