//! Naive reference implementations. Everything here works on plain nested
//! vectors and loops over the whole quantifier space with no pruning.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tgs_core::enumerate::{deduplicate, enumerate_structures, SearchOptions};
use tgs_core::GammaStructure;

/// Addition table and one ternary table per parameter pair, indexed
/// `tern[alpha * m + beta][a][b][c]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tables {
    pub n: usize,
    pub m: usize,
    pub add: Vec<Vec<usize>>,
    pub tern: Vec<Vec<Vec<Vec<usize>>>>,
}

impl Tables {
    pub fn of(s: &GammaStructure) -> Self {
        let m = s.gamma();
        Tables {
            n: s.order(),
            m,
            add: s.addition_table(),
            tern: (0..m * m).map(|p| s.ternary_table(p / m, p % m)).collect(),
        }
    }

    pub fn build(&self) -> GammaStructure {
        let names = (0..self.n).map(|i| i.to_string()).collect();
        GammaStructure::new(names, self.add.clone(), self.tern.clone()).expect("tables in range")
    }

    pub fn mul(&self, a: usize, al: usize, b: usize, be: usize, c: usize) -> usize {
        self.tern[al * self.m + be][a][b][c]
    }

    pub fn relabel(&self, perm: &[usize]) -> Tables {
        let n = self.n;
        let mut add = vec![vec![0; n]; n];
        let mut tern = vec![vec![vec![vec![0; n]; n]; n]; self.m * self.m];
        for a in 0..n {
            for b in 0..n {
                add[perm[a]][perm[b]] = perm[self.add[a][b]];
                for c in 0..n {
                    for p in 0..self.m * self.m {
                        tern[p][perm[a]][perm[b]][perm[c]] = perm[self.tern[p][a][b][c]];
                    }
                }
            }
        }
        Tables { n, m: self.m, add, tern }
    }

    /// Smallest relabeled copy over all permutations fixing 0.
    pub fn canonical_key(&self) -> Tables {
        zero_fixing(self.n)
            .map(|p| self.relabel(&p))
            .min()
            .expect("identity permutation")
    }
}

pub fn zero_fixing(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..n).permutations(n.saturating_sub(1)).map(|rest| {
        let mut p = vec![0];
        p.extend(rest);
        p
    })
}

fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..k).map(|_| 0..n).multi_cartesian_product()
}

/// Pass/fail per law, in the order T1, T2, T3, T4, commutativity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Laws {
    pub monoid: bool,
    pub assoc: bool,
    pub additive: bool,
    pub zero: bool,
    pub commutative: bool,
}

impl Laws {
    pub fn all(&self) -> bool {
        self.monoid && self.assoc && self.additive && self.zero && self.commutative
    }
}

pub fn laws(t: &Tables) -> Laws {
    let (n, m) = (t.n, t.m);
    let add = |a: usize, b: usize| t.add[a][b];
    let monoid = tuples(n, 3).all(|v| {
        let [a, b, c] = [v[0], v[1], v[2]];
        add(0, a) == a && add(a, 0) == a && add(a, b) == add(b, a) && add(add(a, b), c) == add(a, add(b, c))
    });
    let assoc = tuples(n, 5).all(|v| {
        tuples(m, 4).all(|p| {
            let left = t.mul(t.mul(v[0], p[0], v[1], p[1], v[2]), p[2], v[3], p[3], v[4]);
            let right = t.mul(v[0], p[0], v[1], p[1], t.mul(v[2], p[2], v[3], p[3], v[4]));
            left == right
        })
    });
    let additive = tuples(n, 4).all(|v| {
        let (x, y, u, w) = (v[0], v[1], v[2], v[3]);
        let s = add(x, y);
        tuples(m, 2).all(|p| {
            let (al, be) = (p[0], p[1]);
            t.mul(s, al, u, be, w) == add(t.mul(x, al, u, be, w), t.mul(y, al, u, be, w))
                && t.mul(u, al, s, be, w) == add(t.mul(u, al, x, be, w), t.mul(u, al, y, be, w))
                && t.mul(u, al, w, be, s) == add(t.mul(u, al, w, be, x), t.mul(u, al, w, be, y))
        })
    });
    let zero = tuples(n, 3)
        .filter(|v| v.contains(&0))
        .all(|v| tuples(m, 2).all(|p| t.mul(v[0], p[0], v[1], p[1], v[2]) == 0));
    let commutative = tuples(n, 3).all(|v| {
        tuples(m, 2).all(|p| {
            let x = t.mul(v[0], p[0], v[1], p[1], v[2]);
            x == t.mul(v[1], p[1], v[0], p[0], v[2]) && x == t.mul(v[2], p[0], v[1], p[1], v[0])
        })
    });
    Laws {
        monoid,
        assoc,
        additive,
        zero,
        commutative,
    }
}

/// Every commutative monoid table on `0..n` with identity 0.
pub fn monoid_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for values in tuples(n, pairs.len()) {
        let mut add: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| if a == 0 { b } else if b == 0 { a } else { 0 }).collect()).collect();
        for (&(a, b), &v) in pairs.iter().zip(&values) {
            add[a][b] = v;
            add[b][a] = v;
        }
        let assoc = tuples(n, 3).all(|v| add[add[v[0]][v[1]]][v[2]] == add[v[0]][add[v[1]][v[2]]]);
        if assoc {
            out.push(add);
        }
    }
    out
}

/// Generate-then-filter: every addition table, every assignment of the
/// products with all arguments nonzero, kept when every law holds. Cells
/// with a zero argument are fixed at 0, since any other value fails T4.
pub fn naive_structures(n: usize, m: usize) -> Vec<Tables> {
    let free: Vec<(usize, usize, usize, usize)> = (0..m * m)
        .flat_map(|p| tuples(n.max(1) - 1, 3).map(move |v| (p, v[0] + 1, v[1] + 1, v[2] + 1)))
        .collect();
    let mut out = Vec::new();
    for add in monoid_tables(n) {
        for values in tuples(n, free.len()) {
            let mut tern = vec![vec![vec![vec![0; n]; n]; n]; m * m];
            for (&(p, a, b, c), &v) in free.iter().zip(&values) {
                tern[p][a][b][c] = v;
            }
            let t = Tables {
                n,
                m,
                add: add.clone(),
                tern,
            };
            if laws(&t).all() {
                out.push(t);
            }
        }
    }
    out
}

pub fn key_set<'a>(tables: impl IntoIterator<Item = &'a Tables>) -> BTreeSet<Tables> {
    tables.into_iter().map(Tables::canonical_key).collect()
}

/// Subset scan with the definition of an ideal written out directly.
pub fn naive_is_ideal(t: &Tables, set: &[bool]) -> bool {
    if !set[0] {
        return false;
    }
    let n = t.n;
    let closed = tuples(n, 2).all(|v| !(set[v[0]] && set[v[1]]) || set[t.add[v[0]][v[1]]]);
    let absorbing = tuples(n, 3).all(|v| {
        !v.iter().any(|&x| set[x]) || tuples(t.m, 2).all(|p| set[t.mul(v[0], p[0], v[1], p[1], v[2])])
    });
    closed && absorbing
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << n).map(move |mask| (0..n).map(|i| mask >> i & 1 == 1).collect())
}

pub fn to_elems(set: &[bool]) -> Vec<usize> {
    (0..set.len()).filter(|&i| set[i]).collect()
}

pub fn naive_ideals(t: &Tables) -> Vec<Vec<usize>> {
    subsets(t.n).filter(|s| naive_is_ideal(t, s)).map(|s| to_elems(&s)).collect()
}

/// A proper ideal where a product lands inside only when some factor does.
pub fn naive_is_prime(t: &Tables, set: &[bool]) -> bool {
    set.iter().any(|&x| !x)
        && tuples(t.n, 3).all(|v| {
            tuples(t.m, 2).all(|p| !set[t.mul(v[0], p[0], v[1], p[1], v[2])] || v.iter().any(|&x| set[x]))
        })
}

/// Non-isomorphic structures of order `n` (the corpus used by several tests).
pub fn corpus(n: usize, m: usize) -> Vec<GammaStructure> {
    let e = enumerate_structures(n, m, &SearchOptions::default()).expect("within caps");
    deduplicate(&e.structures, false).into_iter().map(|(_, s)| s).collect()
}

pub fn small_corpus() -> Vec<GammaStructure> {
    let mut out = Vec::new();
    for (n, m) in [(1, 1), (2, 1), (3, 1), (2, 2)] {
        out.extend(corpus(n, m));
    }
    out
}

pub fn random_zero_fixing(rng: &mut StdRng, n: usize) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut rest: Vec<usize> = (1..n).collect();
    rest.shuffle(rng);
    let mut p = vec![0];
    p.extend(rest);
    p
}

/// Fully random tables, no law enforced.
pub fn random_tables(rng: &mut StdRng, n: usize, m: usize) -> Tables {
    let mut cell = || rng.gen_range(0..n);
    let add = (0..n).map(|_| (0..n).map(|_| cell()).collect()).collect();
    let tern = (0..m * m)
        .map(|_| (0..n).map(|_| (0..n).map(|_| (0..n).map(|_| cell()).collect()).collect()).collect())
        .collect();
    Tables { n, m, add, tern }
}

/// Valid structures, single-cell corruptions of them, and noise.
pub fn mixed_sample(count: usize, seed: u64) -> Vec<Tables> {
    let mut rng = StdRng::seed_from_u64(seed);
    let valid: Vec<Tables> = small_corpus().iter().map(Tables::of).collect();
    let mut out = Vec::new();
    while out.len() < count {
        let base = &valid[rng.gen_range(0..valid.len())];
        let mut t = base.relabel(&random_zero_fixing(&mut rng, base.n));
        match out.len() % 3 {
            0 => {}
            1 if t.n > 1 => {
                let n = t.n;
                if rng.gen_bool(0.3) {
                    let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
                    t.add[a][b] = (t.add[a][b] + rng.gen_range(1..n)) % n;
                } else {
                    let p = rng.gen_range(0..t.m * t.m);
                    let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                    t.tern[p][a][b][c] = (t.tern[p][a][b][c] + rng.gen_range(1..n)) % n;
                }
            }
            _ => {
                let (n, m) = (rng.gen_range(1..=4), rng.gen_range(1..=2));
                t = random_tables(&mut rng, n, m);
            }
        }
        out.push(t);
    }
    out
}
