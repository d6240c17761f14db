//! Prime spectrum with closed sets `V(I)`, its topology, connected
//! components, idempotent splittings and the Chinese remainder check.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;

use crate::checks::Check;
use crate::enumerate::Caps;
use crate::error::{Error, Result};
use crate::ideals::{all_ideals, enumerate_ideals, generated_ideal, ideal_sum, ideal_violation, prime_counterexample};
use crate::quotient::bourne_congruence;
use crate::radicals::{intersect_all, radical_by_primes};
use crate::set::ElementSet;
use crate::structure::{Elem, GammaStructure};

/// A set of spectrum points, as a bitmask over point indices.
pub type PointSet = u64;

const MAX_POINTS: usize = 64;

fn points_of(mask: PointSet) -> Vec<usize> {
    (0..MAX_POINTS).filter(|&k| mask >> k & 1 == 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedSet {
    pub ideal: ElementSet,
    /// Indices into `SpectrumView::points`.
    pub points: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumView {
    pub points: Vec<ElementSet>,
    pub closed_sets: Vec<ClosedSet>,
    pub components: Vec<Vec<usize>>,
}

impl SpectrumView {
    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    fn mask_of(&self, ideal: ElementSet) -> PointSet {
        mask_over(&self.points, ideal)
    }

    /// Specialization order as a DOT graph: an edge `P → Q` when `P ⊆ Q`,
    /// reduced to covers.
    pub fn to_dot(&self, s: &GammaStructure) -> String {
        let mut out = String::from("digraph spec {\n  node [shape=ellipse];\n");
        for (k, p) in self.points.iter().enumerate() {
            let elems: Vec<&str> = p.iter().map(|x| s.name(x)).collect();
            let _ = writeln!(out, "  p{k} [label=\"{{{}}}\"];", elems.join(",").replace('"', "\\\""));
        }
        for (lo, hi) in crate::ideals::covering_pairs(&self.points) {
            let _ = writeln!(out, "  p{lo} -> p{hi};");
        }
        out.push_str("}\n");
        out
    }
}

fn full_mask(count: usize) -> PointSet {
    if count == MAX_POINTS {
        !0
    } else {
        (1 << count) - 1
    }
}

fn mask_over(points: &[ElementSet], ideal: ElementSet) -> PointSet {
    points
        .iter()
        .enumerate()
        .filter(|(_, p)| ideal.is_subset(**p))
        .fold(0, |acc, (k, _)| acc | 1 << k)
}

/// Primes as points, `V(I)` for every ideal, and the components.
pub fn spec(s: &GammaStructure, caps: &Caps) -> Result<SpectrumView> {
    let ideals = enumerate_ideals(s, caps)?;
    let full = ElementSet::full(s.order());
    let points: Vec<ElementSet> = ideals
        .iter()
        .copied()
        .filter(|&i| i != full && prime_counterexample(s, i).is_none())
        .collect();
    if points.len() > MAX_POINTS {
        return Err(Error::resource("spectrum points", MAX_POINTS));
    }
    let closed_sets = ideals
        .iter()
        .map(|&i| ClosedSet {
            ideal: i,
            points: points_of(mask_over(&points, i)),
        })
        .collect();
    let closed: Vec<PointSet> = ideals.iter().map(|&i| mask_over(&points, i)).collect();
    let components = clopen_components(points.len(), &closed);
    Ok(SpectrumView {
        points,
        closed_sets,
        components,
    })
}

/// Primes containing `i`.
pub fn closed_set(s: &GammaStructure, i: ElementSet) -> Result<Vec<ElementSet>> {
    if ideal_violation(s, i).is_some() {
        return Err(Error::input(format!("{i} is not an ideal")));
    }
    let full = ElementSet::full(s.order());
    Ok(all_ideals(s)
        .into_iter()
        .filter(|&p| p != full && i.is_subset(p) && prime_counterexample(s, p).is_none())
        .collect())
}

/// Two points share a component iff no clopen set separates them.
fn clopen_components(count: usize, closed: &[PointSet]) -> Vec<Vec<usize>> {
    let all = full_mask(count);
    let clopen: Vec<PointSet> = closed
        .iter()
        .copied()
        .filter(|&c| closed.contains(&(all & !c)))
        .collect();
    let mut seen: PointSet = 0;
    let mut out = Vec::new();
    for p in 0..count {
        if seen >> p & 1 == 1 {
            continue;
        }
        let comp = clopen
            .iter()
            .filter(|&&c| c >> p & 1 == 1)
            .fold(all, |acc, &c| acc & c);
        seen |= comp;
        out.push(points_of(comp));
    }
    out
}

/// Components of the comparability graph of the points under inclusion.
pub fn comparability_components(points: &[ElementSet]) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for a in 0..n {
        for b in a + 1..n {
            if points[a].is_subset(points[b]) || points[b].is_subset(points[a]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if root_slot[r] == usize::MAX {
            root_slot[r] = out.len();
            out.push(Vec::new());
        }
        out[root_slot[r]].push(x);
    }
    out
}

/// Closed-set laws and separation properties, each over all ideals or
/// ideal pairs.
pub fn verify_topology(s: &GammaStructure, caps: &Caps) -> Result<Vec<Check>> {
    let view = spec(s, caps)?;
    let ideals = enumerate_ideals(s, caps)?;
    let n = s.order();
    let full = ElementSet::full(n);
    let all = full_mask(view.points.len());
    let v = |i: ElementSet| view.mask_of(i);
    let closed: Vec<PointSet> = ideals.iter().map(|&i| v(i)).collect();

    let mut boundary = Check::asserted("closed set of {0} is every point, of T is empty");
    boundary.case(v(ElementSet::singleton(0)) == all, || json!({"ideal": [0]}));
    boundary.case(v(full) == 0, || json!({"ideal": full}));

    let mut union_law = Check::asserted("V(I ∩ J) = V(I) ∪ V(J)");
    let mut sum_law = Check::asserted("V(I + J) = V(I) ∩ V(J)");
    let mut finite_union = Check::asserted("closed sets closed under union");
    let mut finite_inter = Check::asserted("closed sets closed under intersection");
    let mut reversal = Check::asserted("I ⊆ J implies V(J) ⊆ V(I)");
    let mut converse = Check::reported("V(J) ⊆ V(I) implies I ⊆ J");
    for &i in &ideals {
        for &j in &ideals {
            let w = || json!({"i": i, "j": j});
            union_law.case(v(i.intersection(j)) == v(i) | v(j), w);
            sum_law.case(v(ideal_sum(s, i, j)) == v(i) & v(j), w);
            finite_union.case(closed.contains(&(v(i) | v(j))), w);
            finite_inter.case(closed.contains(&(v(i) & v(j))), w);
            if i.is_subset(j) {
                reversal.case(v(j) & !v(i) == 0, w);
            }
            if v(j) & !v(i) == 0 {
                converse.case(i.is_subset(j), w);
            }
        }
    }
    // the full family: V(sum of all) against the intersection of all V
    let total_sum = ideals.iter().fold(ElementSet::singleton(0), |acc, &i| ideal_sum(s, acc, i));
    let all_meet = closed.iter().fold(all, |acc, &c| acc & c);
    sum_law.case(v(total_sum) == all_meet, || json!({"family": "all ideals"}));

    let mut t0 = Check::asserted("distinct points have distinct closures");
    let mut point_closure = Check::asserted("closure of {P} is V(P)");
    let mut radical = Check::asserted("intersection of V(I) equals the prime radical of I");
    for (a, &p) in view.points.iter().enumerate() {
        for &q in &view.points[a + 1..] {
            t0.case(v(p) != v(q), || json!({"p": p, "q": q}));
        }
        let closure = closed.iter().filter(|&&c| c >> a & 1 == 1).fold(all, |acc, &c| acc & c);
        point_closure.case(closure == v(p), || json!({"point": p}));
    }
    for &i in &ideals {
        let meet = intersect_all(n, points_of(v(i)).into_iter().map(|k| view.points[k]));
        radical.case(meet == radical_by_primes(s, i), || json!({"ideal": i, "meet": meet}));
    }
    Ok(vec![boundary, union_law, sum_law, finite_union, finite_inter, reversal, converse, t0, point_closure, radical])
}

/// Elements with `e_α e_β e = e` for every parameter pair.
pub fn find_idempotents(s: &GammaStructure) -> ElementSet {
    let m = s.gamma();
    (0..s.order())
        .filter(|&e| (0..m).all(|al| (0..m).all(|be| s.mul(e, al, e, be, e) == e)))
        .collect()
}

/// A splitting `T = I_e + J` with `I_e ∩ J = {0}` and products across zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub idempotent: Elem,
    pub generated: ElementSet,
    pub complement: Option<ElementSet>,
    /// Complement built from `u − e` for a ternary unit `u`, when the
    /// carrier is a group and such a unit exists.
    pub unit_candidate: Option<ElementSet>,
}

impl Decomposition {
    /// Splits into two nonzero parts.
    pub fn is_nontrivial(&self, order: usize) -> bool {
        self.complement.is_some()
            && self.generated != ElementSet::singleton(0)
            && self.generated != ElementSet::full(order)
    }
}

/// Ideal generated by `{a_α e_β e}`, and the first ideal complementing it.
pub fn decompose_by_idempotent(s: &GammaStructure, e: Elem) -> Result<Decomposition> {
    if e >= s.order() || !find_idempotents(s).contains(e) {
        return Err(Error::input(format!("{e} is not an idempotent")));
    }
    let i_e = generated_ideal(s, multiples(s, e));
    let complement = all_ideals(s).into_iter().find(|&j| complements(s, i_e, j));
    let unit_candidate = s.is_additive_group().then(|| ternary_unit(s)).flatten().map(|u| {
        let neg_e = (0..s.order()).find(|&x| s.add(x, e) == 0).expect("group");
        generated_ideal(s, multiples(s, s.add(u, neg_e)))
    });
    Ok(Decomposition {
        idempotent: e,
        generated: i_e,
        complement,
        unit_candidate,
    })
}

fn multiples(s: &GammaStructure, e: Elem) -> ElementSet {
    let m = s.gamma();
    let mut out = ElementSet::EMPTY;
    for a in 0..s.order() {
        for al in 0..m {
            for be in 0..m {
                out = out.with(s.mul(a, al, e, be, e));
            }
        }
    }
    out
}

fn complements(s: &GammaStructure, i: ElementSet, j: ElementSet) -> bool {
    let n = s.order();
    let m = s.gamma();
    ideal_sum(s, i, j) == ElementSet::full(n)
        && i.intersection(j) == ElementSet::singleton(0)
        && i.iter().all(|x| {
            j.iter().all(|y| {
                (0..n).all(|t| (0..m).all(|al| (0..m).all(|be| s.mul(x, al, y, be, t) == 0)))
            })
        })
}

/// `u` with `u_α u_β x = x` for all `x` and parameters.
fn ternary_unit(s: &GammaStructure) -> Option<Elem> {
    let m = s.gamma();
    (0..s.order()).find(|&u| {
        (0..s.order()).all(|x| (0..m).all(|al| (0..m).all(|be| s.mul(u, al, u, be, x) == x)))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrtReport {
    pub ideals: Vec<ElementSet>,
    pub comaximal: bool,
    /// First pair whose sum is not T.
    pub non_comaximal_pair: Option<(ElementSet, ElementSet)>,
    pub quotient_orders: Vec<usize>,
    pub injective: bool,
    pub surjective: bool,
    /// Zero class of the map `a ↦ (class of a)_i`.
    pub kernel_class: ElementSet,
    pub intersection: ElementSet,
    /// Hypotheses met and the carrier is a group, so the outcome is asserted.
    pub asserted: bool,
}

impl CrtReport {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }

    pub fn passes(&self) -> bool {
        self.comaximal && self.bijective() && self.kernel_class == self.intersection
    }
}

/// Comaximality and the map into the product of quotients.
pub fn crt_check(s: &GammaStructure, ideals: &[ElementSet]) -> Result<CrtReport> {
    if ideals.len() < 2 {
        return Err(Error::input("the remainder check needs at least two ideals"));
    }
    let n = s.order();
    let full = ElementSet::full(n);
    for &i in ideals {
        if i == full || i.mask() & !full.mask() != 0 || ideal_violation(s, i).is_some() {
            return Err(Error::input(format!("{i} is not a proper ideal")));
        }
    }
    let mut non_comaximal_pair = None;
    'outer: for (a, &i) in ideals.iter().enumerate() {
        for &j in &ideals[a + 1..] {
            if ideal_sum(s, i, j) != full {
                non_comaximal_pair = Some((i, j));
                break 'outer;
            }
        }
    }
    let congruences = ideals
        .iter()
        .map(|&i| bourne_congruence(s, i))
        .collect::<Result<Vec<_>>>()?;
    let quotient_orders: Vec<usize> = congruences.iter().map(|c| c.block_count()).collect();
    let image: Vec<Vec<usize>> = (0..n)
        .map(|a| congruences.iter().map(|c| c.block_of(a)).collect())
        .collect();
    let mut distinct = image.clone();
    distinct.sort();
    distinct.dedup();
    let product: usize = quotient_orders.iter().product();
    let zero = &image[0];
    Ok(CrtReport {
        ideals: ideals.to_vec(),
        comaximal: non_comaximal_pair.is_none(),
        non_comaximal_pair,
        quotient_orders,
        injective: distinct.len() == n,
        surjective: distinct.len() == product,
        kernel_class: (0..n).filter(|&a| &image[a] == zero).collect(),
        intersection: intersect_all(n, ideals.iter().copied()),
        asserted: s.is_additive_group(),
    })
}

/// Exactly two ideals, `{0}` and T, on more than one element.
pub fn is_simple(s: &GammaStructure) -> bool {
    s.order() > 1 && all_ideals(s).len() == 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub components: Vec<Vec<usize>>,
    pub component_count: usize,
    pub comparability_agrees: bool,
    pub idempotent_count: usize,
    /// Idempotents giving a splitting into two nonzero ideals.
    pub splitting_idempotents: Vec<Elem>,
    /// Connected iff no nontrivial splitting.
    pub splitting_criterion_agrees: bool,
    pub idempotents_match_components: bool,
}

pub fn connected_components(s: &GammaStructure, caps: &Caps) -> Result<ComponentReport> {
    let view = spec(s, caps)?;
    let idempotents = find_idempotents(s);
    let splitting_idempotents: Vec<Elem> = idempotents
        .iter()
        .filter(|&e| {
            decompose_by_idempotent(s, e)
                .map(|d| d.is_nontrivial(s.order()))
                .unwrap_or(false)
        })
        .collect();
    let connected = view.component_count() <= 1;
    Ok(ComponentReport {
        comparability_agrees: comparability_components(&view.points) == view.components,
        component_count: view.component_count(),
        idempotent_count: idempotents.len(),
        splitting_criterion_agrees: connected == splitting_idempotents.is_empty(),
        idempotents_match_components: idempotents.len() == view.component_count(),
        splitting_idempotents,
        components: view.components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(xs.iter().copied())
    }

    fn caps() -> Caps {
        Caps { max_order: 6, ..Caps::default() }
    }

    #[test]
    fn spectra() {
        let v = spec(&fixtures::m6(), &caps()).unwrap();
        assert_eq!(v.points, vec![set(&[0, 3]), set(&[0, 2, 4])]);
        assert_eq!(v.component_count(), 2);
        assert_eq!(spec(&fixtures::m3(), &caps()).unwrap().points, vec![set(&[0])]);
        let m4 = spec(&fixtures::m4(), &caps()).unwrap();
        assert_eq!(m4.points, vec![set(&[0, 2])]);
        assert_eq!(m4.component_count(), 1);
    }

    #[test]
    fn closed_sets() {
        let m6 = fixtures::m6();
        assert_eq!(closed_set(&m6, set(&[0])).unwrap().len(), 2);
        assert_eq!(closed_set(&m6, set(&[0, 3])).unwrap(), vec![set(&[0, 3])]);
        assert!(closed_set(&m6, ElementSet::full(6)).unwrap().is_empty());
        assert!(closed_set(&m6, set(&[0, 1])).is_err());
    }

    #[test]
    fn topology_laws_hold() {
        for s in [fixtures::m6(), fixtures::m4(), fixtures::m3(), fixtures::b2(), fixtures::zero_product(2)] {
            for c in verify_topology(&s, &caps()).unwrap() {
                assert!(!c.is_violation(), "{}: {}", c.name, c.status_line());
            }
        }
    }

    #[test]
    fn empty_spectrum() {
        // every product zero: {0} absorbs but 1·1·1 = 0 makes it not prime
        let z = fixtures::zero_product(2);
        let v = spec(&z, &caps()).unwrap();
        assert!(v.points.is_empty());
        assert_eq!(v.component_count(), 0);
        assert_eq!(v.to_dot(&z), "digraph spec {\n  node [shape=ellipse];\n}\n");
    }

    #[test]
    fn idempotents() {
        assert_eq!(find_idempotents(&fixtures::m6()), ElementSet::full(6));
        assert_eq!(find_idempotents(&fixtures::m4()), set(&[0, 1, 3]));
        assert_eq!(find_idempotents(&fixtures::b2()), set(&[0, 1]));
    }

    #[test]
    fn decompositions() {
        let m6 = fixtures::m6();
        let d = decompose_by_idempotent(&m6, 3).unwrap();
        assert_eq!(d.generated, set(&[0, 3]));
        assert_eq!(d.complement, Some(set(&[0, 2, 4])));
        assert_eq!(d.unit_candidate, Some(set(&[0, 2, 4])));
        let d0 = decompose_by_idempotent(&m6, 0).unwrap();
        assert_eq!((d0.generated, d0.complement), (set(&[0]), Some(ElementSet::full(6))));
        let b = decompose_by_idempotent(&fixtures::b2(), 1).unwrap();
        assert_eq!((b.generated, b.complement), (ElementSet::full(2), Some(set(&[0]))));
        assert!(decompose_by_idempotent(&fixtures::m4(), 2).is_err());
    }

    #[test]
    fn crt() {
        let m6 = fixtures::m6();
        let r = crt_check(&m6, &[set(&[0, 2, 4]), set(&[0, 3])]).unwrap();
        assert!(r.comaximal && r.bijective() && r.passes());
        assert_eq!(r.quotient_orders, vec![2, 3]);
        assert_eq!(r.kernel_class, set(&[0]));
        let bad = crt_check(&m6, &[set(&[0]), set(&[0, 3])]).unwrap();
        assert!(!bad.comaximal);
        assert_eq!(bad.non_comaximal_pair, Some((set(&[0]), set(&[0, 3]))));
        assert!(crt_check(&fixtures::m4(), &[set(&[0, 2])]).is_err());
    }

    #[test]
    fn simplicity() {
        assert!(is_simple(&fixtures::m3()));
        assert!(!is_simple(&fixtures::m6()));
        assert!(is_simple(&fixtures::b2()));
        assert!(!is_simple(&fixtures::trivial()));
    }

    #[test]
    fn components() {
        let r = connected_components(&fixtures::m6(), &caps()).unwrap();
        assert_eq!(r.component_count, 2);
        assert!(r.comparability_agrees && r.splitting_criterion_agrees);
        assert_eq!(r.idempotent_count, 6);
        assert!(!r.idempotents_match_components);
        for s in [fixtures::m4(), fixtures::m3()] {
            let r = connected_components(&s, &caps()).unwrap();
            assert_eq!(r.component_count, 1);
            assert!(r.comparability_agrees);
        }
    }

    #[test]
    fn spec_dot() {
        let dot = spec(&fixtures::m3(), &caps()).unwrap().to_dot(&fixtures::m3());
        assert_eq!(dot, "digraph spec {\n  node [shape=ellipse];\n  p0 [label=\"{0}\"];\n}\n");
    }
}
