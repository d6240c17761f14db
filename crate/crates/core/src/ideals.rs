//! Ideals and their classification.
//!
//! An ideal contains 0, is closed under addition, and absorbs the ternary
//! product whenever any one argument lies in it. Ideals are carried as
//! [`ElementSet`] bitmasks; all listings are sorted by size, then mask.

use std::fmt::Write as _;

use serde::Serialize;

use crate::config::PrimaryParams;
use crate::enumerate::Caps;
use crate::error::{Error, Result};
use crate::set::ElementSet;
use crate::structure::{Elem, GammaStructure, Param};
use crate::verdict::Verdict;

/// Why a subset fails to be an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IdealViolation {
    MissingZero,
    NotAdditivelyClosed { a: Elem, b: Elem, sum: Elem },
    NotAbsorbing {
        args: [Elem; 3],
        params: [Param; 2],
        product: Elem,
    },
}

impl IdealViolation {
    /// Re-evaluates against `set`; true when the violation is reproduced.
    pub fn replay(&self, s: &GammaStructure, set: ElementSet) -> bool {
        match *self {
            IdealViolation::MissingZero => !set.contains(0),
            IdealViolation::NotAdditivelyClosed { a, b, .. } => {
                set.contains(a) && set.contains(b) && !set.contains(s.add(a, b))
            }
            IdealViolation::NotAbsorbing {
                args: [a, b, c],
                params: [al, be],
                ..
            } => {
                (set.contains(a) || set.contains(b) || set.contains(c))
                    && !set.contains(s.mul(a, al, b, be, c))
            }
        }
    }
}

/// A triple and parameter pair, the counterexample shape for primeness,
/// primariness and zero-divisor tests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TripleWitness {
    pub args: [Elem; 3],
    pub params: [Param; 2],
    pub product: Elem,
}

impl TripleWitness {
    fn new(s: &GammaStructure, a: Elem, al: Param, b: Elem, be: Param, c: Elem) -> Self {
        TripleWitness {
            args: [a, b, c],
            params: [al, be],
            product: s.mul(a, al, b, be, c),
        }
    }

    pub fn evaluate(&self, s: &GammaStructure) -> Elem {
        let [a, b, c] = self.args;
        let [al, be] = self.params;
        s.mul(a, al, b, be, c)
    }
}

/// An element whose cube lands in the ideal although it does not.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CubeWitness {
    pub element: Elem,
    pub params: [Param; 2],
    pub cube: Elem,
}

fn check_set(s: &GammaStructure, set: ElementSet) -> Result<()> {
    if set.mask() & !ElementSet::full(s.order()).mask() != 0 {
        return Err(Error::input(format!(
            "subset {set} has elements outside 0..{}",
            s.order()
        )));
    }
    Ok(())
}

fn check_proper(s: &GammaStructure, set: ElementSet, what: &str) -> Result<()> {
    check_set(s, set)?;
    if set == ElementSet::full(s.order()) {
        return Err(Error::input(format!("{what} requires a proper ideal, got all of T")));
    }
    Ok(())
}

/// Whether `set` is an ideal; on failure, the first violation found.
pub fn is_ideal(s: &GammaStructure, set: ElementSet) -> Result<Verdict<IdealViolation>> {
    check_set(s, set)?;
    if set.is_empty() {
        return Err(Error::input("an ideal must be nonempty"));
    }
    Ok(Verdict::from_counterexample(ideal_violation(s, set)))
}

pub(crate) fn ideal_violation(s: &GammaStructure, set: ElementSet) -> Option<IdealViolation> {
    if !set.contains(0) {
        return Some(IdealViolation::MissingZero);
    }
    for a in set.iter() {
        for b in set.iter() {
            let sum = s.add(a, b);
            if !set.contains(sum) {
                return Some(IdealViolation::NotAdditivelyClosed { a, b, sum });
            }
        }
    }
    let n = s.order();
    let m = s.gamma();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !(set.contains(a) || set.contains(b) || set.contains(c)) {
                    continue;
                }
                for al in 0..m {
                    for be in 0..m {
                        let product = s.mul(a, al, b, be, c);
                        if !set.contains(product) {
                            return Some(IdealViolation::NotAbsorbing {
                                args: [a, b, c],
                                params: [al, be],
                                product,
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

pub(crate) fn is_ideal_unchecked(s: &GammaStructure, set: ElementSet) -> bool {
    ideal_violation(s, set).is_none()
}

/// The least ideal containing `seed`: close `seed ∪ {0}` under addition and
/// one-argument absorption.
pub fn generated_ideal(s: &GammaStructure, seed: ElementSet) -> ElementSet {
    let n = s.order();
    let m = s.gamma();
    let mut cur = seed.intersection(ElementSet::full(n)).with(0);
    loop {
        let mut next = cur;
        for a in cur.iter() {
            for b in cur.iter() {
                next = next.with(s.add(a, b));
            }
            for x in 0..n {
                for y in 0..n {
                    for al in 0..m {
                        for be in 0..m {
                            next = next
                                .with(s.mul(a, al, x, be, y))
                                .with(s.mul(x, al, a, be, y))
                                .with(s.mul(x, al, y, be, a));
                        }
                    }
                }
            }
        }
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Ideal sum: the least ideal containing both.
pub fn ideal_sum(s: &GammaStructure, i: ElementSet, j: ElementSet) -> ElementSet {
    generated_ideal(s, i.union(j))
}

/// All ideals, sorted by size and then mask.
pub fn enumerate_ideals(s: &GammaStructure, caps: &Caps) -> Result<Vec<ElementSet>> {
    caps.check_scan(s.order(), "ideal scan")?;
    Ok(all_ideals(s))
}

pub(crate) fn all_ideals(s: &GammaStructure) -> Vec<ElementSet> {
    let n = s.order();
    let mut out: Vec<ElementSet> = (0u32..1 << n)
        .filter(|mask| mask & 1 == 1)
        .map(ElementSet::from_mask)
        .filter(|&set| is_ideal_unchecked(s, set))
        .collect();
    out.sort();
    out
}

/// Proper ideal `p` such that a product landing in it forces a factor into it.
pub fn is_prime(s: &GammaStructure, p: ElementSet) -> Result<Verdict<TripleWitness>> {
    check_proper(s, p, "primeness")?;
    Ok(Verdict::from_counterexample(prime_counterexample(s, p)))
}

pub(crate) fn prime_counterexample(s: &GammaStructure, p: ElementSet) -> Option<TripleWitness> {
    let n = s.order();
    let m = s.gamma();
    let outside: Vec<Elem> = (0..n).filter(|&x| !p.contains(x)).collect();
    for &a in &outside {
        for &b in &outside {
            for &c in &outside {
                for al in 0..m {
                    for be in 0..m {
                        if p.contains(s.mul(a, al, b, be, c)) {
                            return Some(TripleWitness::new(s, a, al, b, be, c));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Proper ideal `q` such that `a_α a_β a ∈ q` forces `a ∈ q`.
pub fn is_semiprime(s: &GammaStructure, q: ElementSet) -> Result<Verdict<CubeWitness>> {
    check_proper(s, q, "semiprimeness")?;
    Ok(Verdict::from_counterexample(semiprime_counterexample(s, q)))
}

pub(crate) fn semiprime_counterexample(s: &GammaStructure, q: ElementSet) -> Option<CubeWitness> {
    let m = s.gamma();
    for a in (0..s.order()).filter(|&x| !q.contains(x)) {
        for al in 0..m {
            for be in 0..m {
                let cube = s.mul(a, al, a, be, a);
                if q.contains(cube) {
                    return Some(CubeWitness {
                        element: a,
                        params: [al, be],
                        cube,
                    });
                }
            }
        }
    }
    None
}

/// Proper ideal with no ideal strictly between it and T. The witness is
/// the smallest such intermediate ideal.
pub fn is_maximal(s: &GammaStructure, i: ElementSet) -> Result<Verdict<ElementSet>> {
    check_proper(s, i, "maximality")?;
    let ideals = all_ideals(s);
    Ok(Verdict::from_counterexample(maximal_counterexample(s, &ideals, i)))
}

pub(crate) fn maximal_counterexample(s: &GammaStructure, ideals: &[ElementSet], i: ElementSet) -> Option<ElementSet> {
    let full = ElementSet::full(s.order());
    ideals
        .iter()
        .copied()
        .find(|&j| i.is_proper_subset(j) && j != full)
}

/// Proper ideal where `a_α b_β c ∈ q`, `a ∉ q` force a cube of `b` or `c`
/// into `q`.
pub fn is_primary(s: &GammaStructure, q: ElementSet, params: PrimaryParams) -> Result<Verdict<TripleWitness>> {
    check_proper(s, q, "primariness")?;
    Ok(Verdict::from_counterexample(primary_counterexample(s, q, params)))
}

pub(crate) fn primary_counterexample(s: &GammaStructure, q: ElementSet, params: PrimaryParams) -> Option<TripleWitness> {
    let n = s.order();
    let m = s.gamma();
    let cube_in = |x: Elem, al: Param, be: Param| match params {
        PrimaryParams::Shared => q.contains(s.mul(x, al, x, be, x)),
        PrimaryParams::Independent => {
            (0..m).any(|g| (0..m).any(|d| q.contains(s.mul(x, g, x, d, x))))
        }
    };
    for a in (0..n).filter(|&x| !q.contains(x)) {
        for b in 0..n {
            for c in 0..n {
                for al in 0..m {
                    for be in 0..m {
                        if q.contains(s.mul(a, al, b, be, c)) && !cube_in(b, al, be) && !cube_in(c, al, be) {
                            return Some(TripleWitness::new(s, a, al, b, be, c));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Classification flags for one ideal. All but `proper` are false for T.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IdealTags {
    pub proper: bool,
    pub prime: bool,
    pub semiprime: bool,
    pub maximal: bool,
    pub primary: bool,
}

impl IdealTags {
    pub fn badges(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.prime {
            out.push("P");
        }
        if self.semiprime {
            out.push("SP");
        }
        if self.maximal {
            out.push("MAX");
        }
        if self.primary {
            out.push("PRI");
        }
        out
    }
}

/// All ideals ordered by inclusion, with covering edges and tags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealLattice {
    pub order: usize,
    pub ideals: Vec<ElementSet>,
    pub tags: Vec<IdealTags>,
    /// `(lower, upper)` index pairs with nothing in between.
    pub covers: Vec<(usize, usize)>,
}

impl IdealLattice {
    pub fn primes(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.select(|t| t.prime)
    }

    pub fn semiprimes(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.select(|t| t.semiprime)
    }

    pub fn maximals(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.select(|t| t.maximal)
    }

    pub fn primaries(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.select(|t| t.primary)
    }

    pub fn proper(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.select(|t| t.proper)
    }

    fn select(&self, f: fn(&IdealTags) -> bool) -> impl Iterator<Item = ElementSet> + '_ {
        self.ideals
            .iter()
            .zip(&self.tags)
            .filter(move |(_, t)| f(t))
            .map(|(i, _)| *i)
    }

    pub fn index_of(&self, set: ElementSet) -> Option<usize> {
        self.ideals.iter().position(|&i| i == set)
    }

    pub fn tags_of(&self, set: ElementSet) -> Option<IdealTags> {
        self.index_of(set).map(|k| self.tags[k])
    }

    /// Graphviz rendering, bottom to top. Node order follows the ideal list.
    pub fn to_dot(&self, s: &GammaStructure) -> String {
        let mut out = String::from("digraph ideals {\n  rankdir=BT;\n  node [shape=box];\n");
        for (k, (ideal, tags)) in self.ideals.iter().zip(&self.tags).enumerate() {
            let elems: Vec<&str> = ideal.iter().map(|x| s.name(x)).collect();
            let mut label = format!("{{{}}}", elems.join(","));
            let badges = tags.badges();
            if !badges.is_empty() {
                let _ = write!(label, "\\n{}", badges.join(" "));
            }
            let _ = writeln!(out, "  i{k} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for &(lo, hi) in &self.covers {
            let _ = writeln!(out, "  i{lo} -> i{hi};");
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the ideal lattice with all four classifications.
pub fn ideal_lattice(s: &GammaStructure, caps: &Caps, primary: PrimaryParams) -> Result<IdealLattice> {
    let ideals = enumerate_ideals(s, caps)?;
    let full = ElementSet::full(s.order());
    let tags = ideals
        .iter()
        .map(|&i| {
            if i == full {
                return IdealTags::default();
            }
            IdealTags {
                proper: true,
                prime: prime_counterexample(s, i).is_none(),
                semiprime: semiprime_counterexample(s, i).is_none(),
                maximal: maximal_counterexample(s, &ideals, i).is_none(),
                primary: primary_counterexample(s, i, primary).is_none(),
            }
        })
        .collect();
    let covers = covering_pairs(&ideals);
    Ok(IdealLattice {
        order: s.order(),
        ideals,
        tags,
        covers,
    })
}

/// Hasse edges of a family of sets ordered by inclusion.
pub(crate) fn covering_pairs(sets: &[ElementSet]) -> Vec<(usize, usize)> {
    let mut covers = Vec::new();
    for (i, &lo) in sets.iter().enumerate() {
        for (j, &hi) in sets.iter().enumerate() {
            if !lo.is_proper_subset(hi) {
                continue;
            }
            let between = sets
                .iter()
                .any(|&mid| lo.is_proper_subset(mid) && mid.is_proper_subset(hi));
            if !between {
                covers.push((i, j));
            }
        }
    }
    covers
}
