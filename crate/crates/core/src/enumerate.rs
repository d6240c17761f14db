//! Exhaustive generation of commutative ternary Γ-semirings.
//!
//! The search runs per additive monoid. Every ternary entry with a zero
//! argument is pinned to 0, entries related by the commutativity law share
//! one variable, and additivity constraints are checked as soon as the last
//! variable they mention is assigned. Ternary associativity only becomes
//! checkable on complete tables, so it is tested at the leaves.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::axioms::check_associativity;
use crate::error::{Error, Result};
use crate::structure::{Elem, GammaStructure};

/// Default upper bound on the carrier size.
pub const DEFAULT_MAX_ORDER: usize = 5;
/// Default upper bound on |Γ|.
pub const DEFAULT_MAX_GAMMA: usize = 2;
/// Default upper bound on the carrier size for subset and partition scans.
pub const DEFAULT_MAX_SCAN_ORDER: usize = 8;
/// Environment variable overriding [`DEFAULT_MAX_ORDER`].
pub const MAX_ORDER_ENV: &str = "TGS_MAX_ORDER";

/// Size limits for exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Largest order the structure enumerator will attempt.
    pub max_order: usize,
    pub max_gamma: usize,
    /// Largest order for ideal, congruence, submodule and map scans.
    pub max_scan_order: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: DEFAULT_MAX_ORDER,
            max_gamma: DEFAULT_MAX_GAMMA,
            max_scan_order: DEFAULT_MAX_SCAN_ORDER,
        }
    }
}

impl Caps {
    /// Defaults, with the order cap taken from `TGS_MAX_ORDER` when set.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            caps.max_order = v;
        }
        caps
    }

    pub fn check_order(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::input("order must be at least 1"));
        }
        if n > self.max_order {
            return Err(Error::resource(format!("order {n}"), self.max_order));
        }
        Ok(())
    }

    /// Scans over subsets or partitions of `n` elements.
    pub fn check_scan(&self, n: usize, what: &str) -> Result<()> {
        if n > self.max_scan_order {
            return Err(Error::resource(format!("{what} over {n} elements"), self.max_scan_order));
        }
        Ok(())
    }

    pub fn check_gamma(&self, m: usize) -> Result<()> {
        if m == 0 {
            return Err(Error::input("gamma must be at least 1"));
        }
        if m > self.max_gamma {
            return Err(Error::resource(format!("gamma size {m}"), self.max_gamma));
        }
        Ok(())
    }
}

/// A commutative monoid table on `0..order` with identity 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdditiveMonoid {
    order: usize,
    table: Vec<u8>,
}

impl AdditiveMonoid {
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as Elem
    }

    pub fn table(&self) -> Vec<Vec<Elem>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.add(a, b)).collect())
            .collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.table
    }

    /// Every element has an inverse.
    pub fn is_group(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).any(|b| self.add(a, b) == 0))
    }
}

/// All permutations of `0..n` fixing 0, in lexicographic order.
pub fn zero_fixing_permutations(n: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut perm: Vec<Elem> = (0..n).collect();
    loop {
        out.push(perm.clone());
        // next permutation on perm[1..]
        let tail = &mut perm[1..];
        let Some(i) = (0..tail.len().saturating_sub(1)).rev().find(|&i| tail[i] < tail[i + 1]) else {
            break;
        };
        let j = (i + 1..tail.len()).rev().find(|&j| tail[j] > tail[i]).expect("successor exists");
        tail.swap(i, j);
        tail[i + 1..].reverse();
    }
    out
}

/// All additive monoids of order `n` up to relabelings fixing 0. Each is
/// returned in its lexicographically smallest labeling, sorted.
pub fn enumerate_additive_monoids(n: usize, caps: &Caps) -> Result<Vec<AdditiveMonoid>> {
    caps.check_order(n)?;
    let cells: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .collect();
    let mut table = vec![u8::MAX; n * n];
    for a in 0..n {
        table[a] = a as u8;
        table[a * n] = a as u8;
    }
    let mut found = Vec::new();
    monoid_search(n, &cells, 0, &mut table, &mut found);

    let perms = zero_fixing_permutations(n);
    let mut canon: Vec<Vec<u8>> = found
        .iter()
        .map(|t| {
            perms
                .iter()
                .map(|p| relabel_addition(t, n, p))
                .min()
                .expect("at least the identity permutation")
        })
        .collect();
    canon.sort();
    canon.dedup();
    Ok(canon
        .into_iter()
        .map(|table| AdditiveMonoid { order: n, table })
        .collect())
}

fn monoid_search(n: usize, cells: &[(usize, usize)], k: usize, table: &mut [u8], out: &mut Vec<Vec<u8>>) {
    if k == cells.len() {
        out.push(table.to_vec());
        return;
    }
    let (i, j) = cells[k];
    for v in 0..n as u8 {
        table[i * n + j] = v;
        table[j * n + i] = v;
        if partial_associative(n, table) {
            monoid_search(n, cells, k + 1, table, out);
        }
    }
    table[i * n + j] = u8::MAX;
    table[j * n + i] = u8::MAX;
}

fn partial_associative(n: usize, t: &[u8]) -> bool {
    let get = |a: usize, b: usize| t[a * n + b];
    for a in 1..n {
        for b in 1..n {
            let ab = get(a, b);
            if ab == u8::MAX {
                continue;
            }
            for c in 1..n {
                let bc = get(b, c);
                if bc == u8::MAX {
                    continue;
                }
                let l = get(ab as usize, c);
                let r = get(a, bc as usize);
                if l != u8::MAX && r != u8::MAX && l != r {
                    return false;
                }
            }
        }
    }
    true
}

fn relabel_addition(t: &[u8], n: usize, perm: &[Elem]) -> Vec<u8> {
    let mut out = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            out[perm[a] * n + perm[b]] = perm[t[a * n + b] as usize] as u8;
        }
    }
    out
}

/// Options for [`enumerate_structures`].
#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub caps: Caps,
    /// Worker threads; 0 means rayon's default.
    pub jobs: usize,
    /// Abort with a resource error after visiting this many search nodes.
    pub node_limit: Option<u64>,
}

/// Result of a structure search, before isomorphism rejection.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub monoids: Vec<AdditiveMonoid>,
    /// Every axiom-passing commutative structure over the monoid
    /// representatives, grouped by monoid in monoid order.
    pub structures: Vec<GammaStructure>,
}

/// Emits every commutative ternary Γ-semiring of order `n` and |Γ| = `m`
/// whose addition is one of the monoid representatives. Not deduplicated.
pub fn enumerate_structures(n: usize, m: usize, opts: &SearchOptions) -> Result<Enumeration> {
    opts.caps.check_order(n)?;
    opts.caps.check_gamma(m)?;
    let monoids = enumerate_additive_monoids(n, &opts.caps)?;

    let problems: Vec<Problem> = monoids.iter().map(|mo| Problem::new(mo, m)).collect();
    let mut tasks = Vec::new();
    for (pi, problem) in problems.iter().enumerate() {
        for prefix in problem.prefixes() {
            tasks.push((pi, prefix));
        }
    }

    let budget = Budget {
        limit: opts.node_limit,
        visited: AtomicU64::new(0),
        exhausted: AtomicBool::new(false),
    };
    let run = || -> Vec<Vec<GammaStructure>> {
        tasks
            .par_iter()
            .map(|(pi, prefix)| problems[*pi].solve_from(prefix, &budget))
            .collect()
    };
    let chunks = if opts.jobs == 0 {
        run()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::input(format!("cannot start {} workers: {e}", opts.jobs)))?
            .install(run)
    };

    if budget.exhausted.load(Ordering::Relaxed) {
        return Err(Error::Resource {
            what: format!("search nodes for order {n}, gamma {m}"),
            limit: opts.node_limit.unwrap_or(0) as usize,
            progress: Some(format!(
                "{} structures across {} monoids ({} search partitions)",
                chunks.iter().map(Vec::len).sum::<usize>(),
                monoids.len(),
                tasks.len()
            )),
        });
    }

    Ok(Enumeration {
        monoids,
        structures: chunks.into_iter().flatten().collect(),
    })
}

struct Budget {
    limit: Option<u64>,
    visited: AtomicU64,
    exhausted: AtomicBool,
}

impl Budget {
    fn tick(&self) -> bool {
        if self.exhausted.load(Ordering::Relaxed) {
            return false;
        }
        if let Some(limit) = self.limit {
            if self.visited.fetch_add(1, Ordering::Relaxed) >= limit {
                self.exhausted.store(true, Ordering::Relaxed);
                return false;
            }
        }
        true
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Term {
    Zero,
    Var(u16),
}

/// `value(sum) == value(left) + value(right)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct Constraint {
    sum: Term,
    left: Term,
    right: Term,
}

/// The search for one additive monoid.
struct Problem {
    order: usize,
    gamma: usize,
    addition: Vec<u8>,
    /// Variable (or pinned zero) for every ternary cell.
    cell_term: Vec<Term>,
    vars: usize,
    /// Constraints keyed by the highest variable they mention.
    checks: Vec<Vec<Constraint>>,
}

impl Problem {
    fn new(monoid: &AdditiveMonoid, m: usize) -> Self {
        let n = monoid.order();
        let n3 = n * n * n;
        let cells = m * m * n3;
        let idx = |p: usize, a: usize, b: usize, c: usize| p * n3 + (a * n + b) * n + c;

        let mut parent: Vec<usize> = (0..cells).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        fn union(parent: &mut [usize], a: usize, b: usize) {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                // keep the smaller cell as root so variables follow cell order
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        }
        for al in 0..m {
            for be in 0..m {
                for a in 1..n {
                    for b in 1..n {
                        for c in 1..n {
                            let here = idx(al * m + be, a, b, c);
                            union(&mut parent, here, idx(be * m + al, b, a, c));
                            union(&mut parent, here, idx(al * m + be, c, b, a));
                        }
                    }
                }
            }
        }

        let mut cell_term = vec![Term::Zero; cells];
        let mut root_var = vec![u16::MAX; cells];
        let mut vars = 0usize;
        for (cell, term) in cell_term.iter_mut().enumerate() {
            let (a, b, c) = ((cell % n3) / (n * n), (cell / n) % n, cell % n);
            if a == 0 || b == 0 || c == 0 {
                continue;
            }
            let r = find(&mut parent, cell);
            if root_var[r] == u16::MAX {
                root_var[r] = vars as u16;
                vars += 1;
            }
            *term = Term::Var(root_var[r]);
        }

        let mut seen = HashSet::new();
        let mut checks = vec![Vec::new(); vars.max(1)];
        for p in 0..m * m {
            for pos in 0..3 {
                for x in 1..n {
                    for y in 1..n {
                        let xy = monoid.add(x, y);
                        for u in 1..n {
                            for v in 1..n {
                                let at = |w: usize| {
                                    let (a, b, c) = match pos {
                                        0 => (w, u, v),
                                        1 => (u, w, v),
                                        _ => (u, v, w),
                                    };
                                    cell_term[idx(p, a, b, c)]
                                };
                                let (l, r) = if at(x) <= at(y) { (at(x), at(y)) } else { (at(y), at(x)) };
                                let con = Constraint {
                                    sum: at(xy),
                                    left: l,
                                    right: r,
                                };
                                if !seen.insert(con) {
                                    continue;
                                }
                                let key = [con.sum, con.left, con.right]
                                    .iter()
                                    .filter_map(|t| match t {
                                        Term::Var(v) => Some(*v as usize),
                                        Term::Zero => None,
                                    })
                                    .max();
                                // constraints over pinned zeros alone hold: 0 + 0 = 0
                                if let Some(k) = key {
                                    checks[k].push(con);
                                }
                            }
                        }
                    }
                }
            }
        }

        Problem {
            order: n,
            gamma: m,
            addition: monoid.raw().to_vec(),
            cell_term,
            vars,
            checks,
        }
    }

    fn value(values: &[u8], t: Term) -> u8 {
        match t {
            Term::Zero => 0,
            Term::Var(v) => values[v as usize],
        }
    }

    fn consistent(&self, values: &[u8], k: usize) -> bool {
        let n = self.order;
        self.checks[k].iter().all(|c| {
            let l = Self::value(values, c.left) as usize;
            let r = Self::value(values, c.right) as usize;
            Self::value(values, c.sum) == self.addition[l * n + r]
        })
    }

    fn prefix_depth(&self) -> usize {
        let mut depth = 0;
        let mut width = 1usize;
        while depth < self.vars && width < 64 {
            width *= self.order;
            depth += 1;
        }
        depth
    }

    /// Consistent assignments of the first few variables, in lexicographic order.
    fn prefixes(&self) -> Vec<Vec<u8>> {
        let depth = self.prefix_depth();
        let mut out = Vec::new();
        let mut values = vec![0u8; self.vars];
        self.extend_prefix(&mut values, 0, depth, &mut out);
        out
    }

    fn extend_prefix(&self, values: &mut [u8], k: usize, depth: usize, out: &mut Vec<Vec<u8>>) {
        if k == depth {
            out.push(values[..depth].to_vec());
            return;
        }
        for v in 0..self.order as u8 {
            values[k] = v;
            if self.consistent(values, k) {
                self.extend_prefix(values, k + 1, depth, out);
            }
        }
    }

    fn solve_from(&self, prefix: &[u8], budget: &Budget) -> Vec<GammaStructure> {
        let mut values = vec![0u8; self.vars];
        values[..prefix.len()].copy_from_slice(prefix);
        let mut out = Vec::new();
        self.search(&mut values, prefix.len(), budget, &mut out);
        out
    }

    fn search(&self, values: &mut [u8], k: usize, budget: &Budget, out: &mut Vec<GammaStructure>) {
        if !budget.tick() {
            return;
        }
        if k == self.vars {
            let s = self.build(values);
            if check_associativity(&s).is_none() {
                out.push(s);
            }
            return;
        }
        for v in 0..self.order as u8 {
            values[k] = v;
            if self.consistent(values, k) {
                self.search(values, k + 1, budget, out);
            }
        }
    }

    fn build(&self, values: &[u8]) -> GammaStructure {
        let ternary = self
            .cell_term
            .iter()
            .map(|&t| Self::value(values, t))
            .collect();
        GammaStructure::from_raw(self.order, self.gamma, self.addition.clone(), ternary)
    }
}

/// Isomorphism-invariant key: the lexicographically smallest serialization
/// of the tables over all relabelings fixing 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Hex SHA-256 of the form; a short stable identity for reports.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(&self.0))
    }
}

fn serialize_tables(s: &GammaStructure) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 + s.addition_raw().len() + s.ternary_raw().len());
    out.push(s.order() as u8);
    out.push(s.gamma() as u8);
    out.extend_from_slice(s.addition_raw());
    out.extend_from_slice(s.ternary_raw());
    out
}

/// Canonical form over element relabelings fixing 0; Γ is a labeled set.
pub fn canonical_form(s: &GammaStructure) -> CanonicalForm {
    canonical_labeling(s, false).0
}

/// Canonical form and the structure relabeled to achieve it. With
/// `gamma_relabeling`, parameter permutations are minimized over as well.
pub fn canonical_labeling(s: &GammaStructure, gamma_relabeling: bool) -> (CanonicalForm, GammaStructure) {
    let elem_perms = zero_fixing_permutations(s.order());
    let gamma_perms: Vec<Vec<usize>> = if gamma_relabeling {
        all_permutations(s.gamma())
    } else {
        vec![(0..s.gamma()).collect()]
    };
    let mut best: Option<(Vec<u8>, GammaStructure)> = None;
    for gp in &gamma_perms {
        let base = if gamma_relabeling {
            s.gamma_permuted_unchecked(gp)
        } else {
            s.clone()
        };
        for p in &elem_perms {
            let candidate = base.permuted_unchecked(p);
            let bytes = serialize_tables(&candidate);
            if best.as_ref().is_none_or(|(b, _)| bytes < *b) {
                best = Some((bytes, candidate));
            }
        }
    }
    let (bytes, structure) = best.expect("at least one permutation");
    (CanonicalForm(bytes), structure)
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    // shift a leading sentinel so the zero-fixing generator covers all of 0..m
    zero_fixing_permutations(m + 1)
        .into_iter()
        .map(|p| p[1..].iter().map(|x| x - 1).collect())
        .collect()
}

/// Non-isomorphic representatives, each in canonical labeling, sorted by form.
pub fn deduplicate(structures: &[GammaStructure], gamma_relabeling: bool) -> Vec<(CanonicalForm, GammaStructure)> {
    let mut forms: Vec<(CanonicalForm, GammaStructure)> = structures
        .par_iter()
        .map(|s| canonical_labeling(s, gamma_relabeling))
        .collect();
    forms.sort_by(|a, b| a.0.cmp(&b.0));
    forms.dedup_by(|a, b| a.0 == b.0);
    forms
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn permutations_fix_zero() {
        let p = zero_fixing_permutations(4);
        assert_eq!(p.len(), 6);
        assert!(p.iter().all(|q| q[0] == 0));
        assert_eq!(p[0], vec![0, 1, 2, 3]);
        assert_eq!(p[5], vec![0, 3, 2, 1]);
        assert_eq!(zero_fixing_permutations(1), vec![vec![0]]);
        assert_eq!(all_permutations(2), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn small_monoid_counts() {
        let caps = Caps::default();
        assert_eq!(enumerate_additive_monoids(1, &caps).unwrap().len(), 1);
        let two = enumerate_additive_monoids(2, &caps).unwrap();
        assert_eq!(two.len(), 2);
        let sums: Vec<Elem> = two.iter().map(|m| m.add(1, 1)).collect();
        assert_eq!(sums, vec![0, 1]);
    }

    #[test]
    fn order_above_cap_is_resource_error() {
        let caps = Caps::default();
        assert!(matches!(
            enumerate_additive_monoids(6, &caps),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            enumerate_structures(2, 3, &SearchOptions::default()),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn order_one_has_one_structure() {
        let e = enumerate_structures(1, 1, &SearchOptions::default()).unwrap();
        assert_eq!(e.structures.len(), 1);
        assert_eq!(e.structures[0], fixtures::trivial());
    }

    #[test]
    fn order_two_contains_b2_and_zero_product() {
        let e = enumerate_structures(2, 1, &SearchOptions::default()).unwrap();
        assert!(e.structures.contains(&fixtures::b2()));
        assert!(e.structures.contains(&fixtures::zero_product(2)));
    }

    #[test]
    fn order_three_contains_m3() {
        let e = enumerate_structures(3, 1, &SearchOptions::default()).unwrap();
        let target = canonical_form(&fixtures::m3());
        assert!(e.structures.iter().any(|s| canonical_form(s) == target));
    }

    #[test]
    fn node_limit_reports_progress() {
        let opts = SearchOptions {
            node_limit: Some(10),
            ..SearchOptions::default()
        };
        match enumerate_structures(3, 1, &opts) {
            Err(Error::Resource { progress, .. }) => assert!(progress.is_some()),
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn canonical_form_of_swapped_m3() {
        let m3 = fixtures::m3();
        let swapped = m3.apply_permutation(&[0, 2, 1]).unwrap();
        assert_ne!(m3, swapped);
        assert_eq!(canonical_form(&m3), canonical_form(&swapped));
    }

    #[test]
    fn canonical_form_separates_fixtures() {
        let forms: HashSet<CanonicalForm> = [fixtures::b2(), fixtures::zero_product(2)]
            .iter()
            .map(canonical_form)
            .collect();
        assert_eq!(forms.len(), 2);
    }

    #[test]
    fn gamma_relabeling_identifies_parameter_swaps() {
        let s = GammaStructure::from_fns(2, 2, |a, b| a | b, |a, al, b, be, c| {
            if al == 0 && be == 0 { a & b & c } else { 0 }
        })
        .unwrap();
        let t = s.gamma_permuted_unchecked(&[1, 0]);
        assert_ne!(canonical_form(&s), canonical_form(&t));
        assert_eq!(canonical_labeling(&s, true).0, canonical_labeling(&t, true).0);
    }
}
