//! Hand-derived values for the small fixtures B2, M3, M4 and M6.

mod common;

use common::{laws, Tables};
use tgs_core::fixtures::{b2, m3, m4, m6, sum_mod, trivial};
use tgs_core::ideals::{
    enumerate_ideals, generated_ideal, ideal_lattice, is_ideal, is_maximal, is_primary, is_prime, is_semiprime,
};
use tgs_core::modules::{annihilator, enumerate_submodules, find_primitive_ideals, is_simple_module, verify_module_axioms, ModuleAction};
use tgs_core::morphism::{pullback_ideal, Homomorphism};
use tgs_core::quotient::{
    bourne_congruence, congruence_to_ideal, enumerate_congruences, has_nonzero_zero_divisors, is_congruence,
    quotient_structure, Partition,
};
use tgs_core::radicals::{is_semisimple, jacobson_radical, radical_by_elements, radical_by_primes};
use tgs_core::spectrum::{
    closed_set, connected_components, crt_check, decompose_by_idempotent, find_idempotents, is_simple, spec,
    verify_topology,
};
use tgs_core::{canonical_form, verify_axioms, Caps, ElementSet, GammaStructure, ModuleAssoc, PrimaryParams, RadicalIterate};

fn set(xs: &[usize]) -> ElementSet {
    ElementSet::from_elements(xs.iter().copied())
}

fn full(s: &GammaStructure) -> ElementSet {
    ElementSet::full(s.order())
}

fn caps() -> Caps {
    Caps::default()
}

#[test]
fn products_and_axioms() {
    assert_eq!(m3().ternary_product(2, 0, 2, 0, 2).unwrap(), 2);
    assert_eq!(b2().ternary_product(1, 0, 1, 0, 1).unwrap(), 1);
    assert!(m3().ternary_product(3, 0, 0, 0, 0).is_err());
    for s in [m3(), b2()] {
        let r = verify_axioms(&s, true);
        assert!(r.passes() && r.commutativity.is_pass());
        assert!(laws(&Tables::of(&s)).all());
    }
    let swapped = m3().apply_permutation(&[0, 2, 1]).unwrap();
    assert!(verify_axioms(&swapped, true).passes());
    assert_eq!(canonical_form(&swapped), canonical_form(&m3()));
    assert!(b2().apply_permutation(&[1, 0]).is_err());
}

#[test]
fn sum_product_breaks_absorbing_zero() {
    let s = sum_mod(2);
    let r = verify_axioms(&s, true);
    let w = r.absorbing_zero.witness().expect("T4 fails");
    assert!(w.replay(&s));
    // the hand example (0,1,0) is a violation as well
    assert_eq!(s.mul(0, 0, 1, 0, 0), 1);
    assert!(!laws(&Tables::of(&s)).zero);
}

#[test]
fn ideal_lists() {
    assert!(is_ideal(&m4(), set(&[0, 2])).unwrap().holds());
    assert!(is_ideal(&b2(), set(&[0])).unwrap().holds());
    assert_eq!(generated_ideal(&m6(), set(&[2])), set(&[0, 2, 4]));
    assert_eq!(generated_ideal(&m6(), set(&[5])), full(&m6()));
    assert_eq!(enumerate_ideals(&b2(), &caps()).unwrap(), vec![set(&[0]), set(&[0, 1])]);
    assert_eq!(enumerate_ideals(&m3(), &caps()).unwrap(), vec![set(&[0]), full(&m3())]);
    let mut m6_ideals = enumerate_ideals(&m6(), &caps()).unwrap();
    m6_ideals.sort_by_key(|i| (i.len(), i.to_vec()));
    assert_eq!(m6_ideals, vec![set(&[0]), set(&[0, 3]), set(&[0, 2, 4]), full(&m6())]);
    assert_eq!(enumerate_ideals(&m4(), &caps()).unwrap().len(), 3);
}

#[test]
fn prime_and_semiprime_verdicts() {
    assert!(is_prime(&m3(), set(&[0])).unwrap().holds());
    assert!(is_prime(&m6(), set(&[0, 3])).unwrap().holds());
    let v = is_prime(&m4(), set(&[0])).unwrap();
    let w = v.witness().expect("{0} is not prime in M4");
    assert_eq!(w.evaluate(&m4()), 0);
    assert!(w.args.iter().all(|&x| x != 0));
    // the hand witness (2,2,2) fails too
    assert_eq!(m4().mul(2, 0, 2, 0, 2), 0);

    let v = is_semiprime(&m4(), set(&[0])).unwrap();
    assert_eq!(v.witness().unwrap().element, 2);
    assert!(is_semiprime(&m4(), set(&[0, 2])).unwrap().holds());
}

#[test]
fn maximal_verdicts() {
    assert!(is_maximal(&m6(), set(&[0, 2, 4])).unwrap().holds());
    assert!(is_maximal(&m6(), set(&[0, 3])).unwrap().holds());
    assert!(!is_maximal(&m6(), set(&[0])).unwrap().holds());
    assert!(is_maximal(&b2(), set(&[0])).unwrap().holds());
}

/// Primary test written out over all triples with the product's own parameters.
fn primary_oracle(s: &GammaStructure, q: ElementSet) -> bool {
    let n = s.order();
    let cube = |x: usize| s.mul(x, 0, x, 0, x);
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| !q.contains(s.mul(a, 0, b, 0, c)) || q.contains(a) || q.contains(cube(b)) || q.contains(cube(c)))
        })
    })
}

#[test]
fn primary_verdicts() {
    assert!(is_primary(&m4(), set(&[0, 2]), PrimaryParams::Shared).unwrap().holds());
    let zero = is_primary(&m4(), set(&[0]), PrimaryParams::Shared).unwrap();
    assert_eq!(zero.holds(), primary_oracle(&m4(), set(&[0])));
    assert!(zero.holds());
    for p in tgs_core::radicals::prime_ideals(&m6()) {
        assert!(is_primary(&m6(), p, PrimaryParams::Shared).unwrap().holds());
    }
}

#[test]
fn lattice_covers() {
    let dot = ideal_lattice(&m6(), &caps(), PrimaryParams::Shared).unwrap().to_dot(&m6());
    assert_eq!(dot.matches(" -> ").count(), 4);
    for s in [m3(), b2()] {
        let l = ideal_lattice(&s, &caps(), PrimaryParams::Shared).unwrap();
        assert_eq!(l.ideals.len(), 2);
        assert_eq!(l.to_dot(&s).matches(" -> ").count(), 1);
    }
}

#[test]
fn radicals() {
    assert_eq!(radical_by_primes(&m4(), set(&[0])), set(&[0, 2]));
    assert_eq!(radical_by_primes(&m6(), set(&[0])), set(&[0]));
    for mode in [RadicalIterate::Once, RadicalIterate::Fixpoint] {
        assert_eq!(radical_by_elements(&m4(), set(&[0]), mode), set(&[0, 2]));
        assert_eq!(radical_by_elements(&m6(), set(&[0]), mode), set(&[0]));
    }
    assert_eq!(radical_by_primes(&m3(), set(&[0])), set(&[0]));
    assert_eq!(radical_by_elements(&m3(), set(&[0]), RadicalIterate::Once), set(&[0]));
    assert_eq!(radical_by_primes(&b2(), set(&[0])), set(&[0]));
    assert_eq!(radical_by_elements(&b2(), set(&[0]), RadicalIterate::Once), set(&[0]));

    assert_eq!(jacobson_radical(&m6()), set(&[0]));
    assert_eq!(jacobson_radical(&m4()), set(&[0, 2]));
    assert_eq!(jacobson_radical(&b2()), set(&[0]));
    assert!(is_semisimple(&m6()));
    assert!(!is_semisimple(&m4()));
    assert!(is_semisimple(&b2()));
}

/// Every set partition of `0..n` as block labels in restricted growth form.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![0]];
    for _ in 1..n {
        out = out
            .into_iter()
            .flat_map(|p| {
                let top = p.iter().max().unwrap() + 1;
                (0..=top).map(move |b| {
                    let mut q = p.clone();
                    q.push(b);
                    q
                })
            })
            .collect();
    }
    out
}

fn congruence_oracle(s: &GammaStructure) -> usize {
    let n = s.order();
    partitions(n)
        .into_iter()
        .filter(|p| {
            let rel = |a: usize, b: usize| p[a] == p[b];
            (0..n).all(|a| {
                (0..n).all(|b| {
                    !rel(a, b)
                        || (0..n).all(|c| {
                            rel(s.add(a, c), s.add(b, c))
                                && (0..n).all(|d| {
                                    rel(s.mul(a, 0, c, 0, d), s.mul(b, 0, c, 0, d))
                                        && rel(s.mul(c, 0, a, 0, d), s.mul(c, 0, b, 0, d))
                                        && rel(s.mul(c, 0, d, 0, a), s.mul(c, 0, d, 0, b))
                                })
                        })
                })
            })
        })
        .count()
}

#[test]
fn congruences() {
    let parity = Partition::from_blocks(6, &[vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
    assert!(is_congruence(&m6(), &parity).unwrap().holds());
    assert_eq!(congruence_to_ideal(&m6(), &parity).set, set(&[0, 2, 4]));
    assert_eq!(bourne_congruence(&m6(), set(&[0, 2, 4])).unwrap(), parity);
    let thirds = Partition::from_blocks(6, &[vec![0, 3], vec![1, 4], vec![2, 5]]).unwrap();
    assert_eq!(bourne_congruence(&m6(), set(&[0, 3])).unwrap(), thirds);

    let q = quotient_structure(&m6(), &parity).unwrap();
    assert_eq!(q.order(), 2);
    assert_eq!(q.mul(1, 0, 1, 0, 1), 1);
    let q3 = quotient_structure(&m6(), &thirds).unwrap();
    assert_eq!(canonical_form(&q3), canonical_form(&m3()));

    assert_eq!(enumerate_congruences(&b2(), &caps()).unwrap().len(), 2);
    assert_eq!(enumerate_congruences(&trivial(), &caps()).unwrap().len(), 1);
    assert_eq!(enumerate_congruences(&m3(), &caps()).unwrap().len(), congruence_oracle(&m3()));
    assert_eq!(enumerate_congruences(&m6(), &caps()).unwrap().len(), congruence_oracle(&m6()));
}

#[test]
fn zero_divisors() {
    assert!(has_nonzero_zero_divisors(&m3()).holds());
    assert!(has_nonzero_zero_divisors(&b2()).holds());
    let v = has_nonzero_zero_divisors(&m4());
    let w = v.witness().expect("M4 has zero divisors");
    assert_eq!(w.evaluate(&m4()), 0);
    assert!(w.args.iter().all(|&x| x != 0));
}

#[test]
fn spectra() {
    let caps = caps();
    let points = |s: &GammaStructure| {
        let mut p = spec(s, &caps).unwrap().points;
        p.sort();
        p
    };
    let mut m6_points = vec![set(&[0, 2, 4]), set(&[0, 3])];
    m6_points.sort();
    assert_eq!(points(&m6()), m6_points);
    assert_eq!(points(&m3()), vec![set(&[0])]);
    assert_eq!(points(&m4()), vec![set(&[0, 2])]);
    assert_eq!(closed_set(&m6(), set(&[0, 3])).unwrap(), vec![set(&[0, 3])]);
    for s in [m6(), m4(), m3()] {
        let checks = verify_topology(&s, &caps).unwrap();
        assert!(checks.iter().all(|c| !c.is_violation()));
    }
    // V({0}) = V({0,2}) in M4, so the converse of order reversal fails there
    let m4_checks = verify_topology(&m4(), &caps).unwrap();
    assert!(!m4_checks.iter().find(|c| c.name.starts_with("V(J) ⊆ V(I)")).unwrap().holds());
    let counts: Vec<usize> = [m6(), m4(), m3()]
        .iter()
        .map(|s| connected_components(s, &caps).unwrap().component_count)
        .collect();
    assert_eq!(counts, vec![2, 1, 1]);
}

#[test]
fn reduction_mod_three() {
    let f = Homomorphism::new(&m6(), &m3(), (0..6).map(|x| x % 3).collect(), vec![0]).unwrap();
    assert_eq!(pullback_ideal(&f, &m3(), set(&[0])).unwrap(), set(&[0, 3]));
    assert!(is_prime(&m6(), set(&[0, 3])).unwrap().holds());
}

#[test]
fn idempotents_and_splittings() {
    assert_eq!(find_idempotents(&m6()), full(&m6()));
    assert_eq!(find_idempotents(&m4()), set(&[0, 1, 3]));
    assert_eq!(find_idempotents(&b2()), set(&[0, 1]));
    let d = decompose_by_idempotent(&m6(), 3).unwrap();
    assert_eq!(d.generated, set(&[0, 3]));
    assert_eq!(d.complement, Some(set(&[0, 2, 4])));
    let d = decompose_by_idempotent(&b2(), 1).unwrap();
    assert_eq!(d.generated, full(&b2()));
    assert_eq!(d.complement, Some(set(&[0])));
    let d = decompose_by_idempotent(&m6(), 0).unwrap();
    assert_eq!((d.generated, d.complement), (set(&[0]), Some(full(&m6()))));
    assert!(decompose_by_idempotent(&m4(), 2).is_err());
}

#[test]
fn remainder_map_on_m6() {
    let r = crt_check(&m6(), &[set(&[0, 2, 4]), set(&[0, 3])]).unwrap();
    assert!(r.comaximal && r.injective && r.surjective);
    assert_eq!(r.quotient_orders, vec![2, 3]);
    assert_eq!(r.kernel_class, set(&[0]));
    assert!(r.asserted);
    let r = crt_check(&m6(), &[set(&[0]), set(&[0, 3])]).unwrap();
    assert!(!r.comaximal);
    assert!(crt_check(&m4(), &[set(&[0, 2])]).is_err());
}

#[test]
fn simplicity() {
    assert!(is_simple(&m3()));
    assert!(!is_simple(&m6()));
    assert!(is_simple(&b2()));
}

#[test]
fn regular_modules() {
    let caps = caps();
    let m3_reg = ModuleAction::regular(&m3());
    assert!(verify_module_axioms(&m3_reg, ModuleAssoc::Surrogate, false).passes());
    assert_eq!(enumerate_submodules(&m3_reg, &caps).unwrap(), vec![set(&[0]), full(&m3())]);
    let m6_subs = enumerate_submodules(&ModuleAction::regular(&m6()), &caps).unwrap();
    assert!(m6_subs.contains(&set(&[0, 3])) && m6_subs.contains(&set(&[0, 2, 4])));
    assert!(is_simple_module(&m3_reg));
    assert!(!is_simple_module(&ModuleAction::regular(&m6())));
    assert!(is_simple_module(&ModuleAction::regular(&b2())));

    let ann = annihilator(&m3_reg);
    assert_eq!(ann.set, set(&[0]));
    assert!(ann.is_ideal);
    assert!(ann.prime.as_ref().unwrap().holds());
    assert_eq!(annihilator(&ModuleAction::regular(&b2())).set, set(&[0]));
    let zero = annihilator(&ModuleAction::zero(&m4()));
    assert_eq!(zero.set, full(&m4()));
    assert!(!zero.proper && zero.prime.is_none());
}

#[test]
fn primitive_ideals() {
    let caps = caps();
    assert!(find_primitive_ideals(&m3(), 3, &caps, ModuleAssoc::Surrogate).unwrap().contains(&set(&[0])));
    assert!(find_primitive_ideals(&b2(), 2, &caps, ModuleAssoc::Surrogate).unwrap().contains(&set(&[0])));
    assert!(find_primitive_ideals(&trivial(), 3, &caps, ModuleAssoc::Surrogate).unwrap().is_empty());
}
