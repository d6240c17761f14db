//! Prime radical by both routes, the Jacobson-type radical, semisimplicity.

use serde::Serialize;

use crate::config::RadicalIterate;
use crate::ideals::{all_ideals, is_ideal_unchecked, maximal_counterexample, prime_counterexample};
use crate::set::ElementSet;
use crate::structure::GammaStructure;

/// All prime ideals of `s`, sorted.
pub fn prime_ideals(s: &GammaStructure) -> Vec<ElementSet> {
    let full = ElementSet::full(s.order());
    all_ideals(s)
        .into_iter()
        .filter(|&i| i != full && prime_counterexample(s, i).is_none())
        .collect()
}

/// All maximal ideals of `s`, sorted.
pub fn maximal_ideals(s: &GammaStructure) -> Vec<ElementSet> {
    let full = ElementSet::full(s.order());
    let ideals = all_ideals(s);
    ideals
        .iter()
        .copied()
        .filter(|&i| i != full && maximal_counterexample(s, &ideals, i).is_none())
        .collect()
}

/// Intersection of a family; the whole carrier when the family is empty.
pub fn intersect_all(order: usize, family: impl IntoIterator<Item = ElementSet>) -> ElementSet {
    family
        .into_iter()
        .fold(ElementSet::full(order), ElementSet::intersection)
}

/// Intersection of every prime containing `i`.
pub fn radical_by_primes(s: &GammaStructure, i: ElementSet) -> ElementSet {
    intersect_all(
        s.order(),
        prime_ideals(s).into_iter().filter(|p| i.is_subset(*p)),
    )
}

/// Elements some cube of which lands in `i`.
pub fn radical_by_elements(s: &GammaStructure, i: ElementSet, mode: RadicalIterate) -> ElementSet {
    let step = |target: ElementSet| -> ElementSet {
        (0..s.order())
            .filter(|&a| {
                (0..s.gamma()).any(|al| (0..s.gamma()).any(|be| target.contains(s.mul(a, al, a, be, a))))
            })
            .collect()
    };
    match mode {
        RadicalIterate::Once => step(i),
        RadicalIterate::Fixpoint => {
            let mut cur = i;
            loop {
                let next = cur.union(step(cur));
                if next == cur {
                    return cur;
                }
                cur = next;
            }
        }
    }
}

/// Both radicals side by side. Equality is recorded, not assumed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalReport {
    pub ideal: ElementSet,
    pub by_primes: ElementSet,
    pub by_elements: ElementSet,
    pub agree: bool,
    /// Symmetric difference of the two sets.
    pub disagreement: ElementSet,
    /// The element-wise set failed to be an ideal.
    pub by_elements_is_ideal: bool,
}

pub fn radical_report(s: &GammaStructure, i: ElementSet, mode: RadicalIterate) -> RadicalReport {
    let by_primes = radical_by_primes(s, i);
    let by_elements = radical_by_elements(s, i, mode);
    let disagreement = by_primes.difference(by_elements).union(by_elements.difference(by_primes));
    RadicalReport {
        ideal: i,
        by_primes,
        by_elements,
        agree: disagreement.is_empty(),
        disagreement,
        by_elements_is_ideal: is_ideal_unchecked(s, by_elements),
    }
}

/// Intersection of all maximal ideals; T when there are none.
pub fn jacobson_radical(s: &GammaStructure) -> ElementSet {
    intersect_all(s.order(), maximal_ideals(s))
}

/// `J(T) = {0}`.
pub fn is_semisimple(s: &GammaStructure) -> bool {
    jacobson_radical(s) == ElementSet::singleton(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(xs.iter().copied())
    }

    #[test]
    fn radicals_of_zero() {
        let zero = set(&[0]);
        assert_eq!(radical_by_primes(&fixtures::m4(), zero), set(&[0, 2]));
        assert_eq!(radical_by_primes(&fixtures::m6(), zero), zero);
        assert_eq!(radical_by_elements(&fixtures::m4(), zero, RadicalIterate::Once), set(&[0, 2]));
        assert_eq!(radical_by_elements(&fixtures::m6(), zero, RadicalIterate::Once), zero);
    }

    #[test]
    fn primes_are_their_own_radical() {
        for s in [fixtures::m4(), fixtures::m6(), fixtures::m3(), fixtures::b2()] {
            for p in prime_ideals(&s) {
                assert_eq!(radical_by_primes(&s, p), p);
            }
        }
    }

    #[test]
    fn full_set_radical() {
        let m6 = fixtures::m6();
        let full = ElementSet::full(6);
        assert_eq!(radical_by_elements(&m6, full, RadicalIterate::Once), full);
        assert_eq!(radical_by_primes(&m6, full), full);
    }

    #[test]
    fn reports_agree_on_fixtures() {
        for s in [fixtures::m4(), fixtures::m3(), fixtures::b2()] {
            let r = radical_report(&s, set(&[0]), RadicalIterate::Once);
            assert!(r.agree, "{r:?}");
        }
        let r = radical_report(&fixtures::m4(), set(&[0]), RadicalIterate::Once);
        assert_eq!(r.by_primes, set(&[0, 2]));
    }

    #[test]
    fn fixpoint_mode_reaches_further() {
        // ℤ16 under a·b·c: 2³ = 8 and 8³ = 0, so 2 needs two steps
        let z16 = fixtures::product_mod(16);
        let once = radical_by_elements(&z16, set(&[0]), RadicalIterate::Once);
        let fix = radical_by_elements(&z16, set(&[0]), RadicalIterate::Fixpoint);
        assert_eq!(once, set(&[0, 4, 8, 12]));
        assert_eq!(fix, set(&[0, 2, 4, 6, 8, 10, 12, 14]));
    }

    #[test]
    fn jacobson() {
        assert_eq!(jacobson_radical(&fixtures::m6()), set(&[0]));
        assert_eq!(jacobson_radical(&fixtures::m4()), set(&[0, 2]));
        assert_eq!(jacobson_radical(&fixtures::b2()), set(&[0]));
        assert!(is_semisimple(&fixtures::m6()));
        assert!(!is_semisimple(&fixtures::m4()));
        assert!(is_semisimple(&fixtures::b2()));
        // no proper ideals at all
        assert_eq!(jacobson_radical(&fixtures::trivial()), set(&[0]));
    }
}
