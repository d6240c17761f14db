//! Exhaustive checks of the ideal, radical, congruence, spectrum and module
//! statements over one structure or a corpus.
//!
//! `Asserted` checks follow from the definitions, so a failure is a bug or
//! a false statement. `Reported` checks are comparisons whose failures are
//! findings.

use serde_json::json;

use crate::checks::{Check, CheckKind};
use crate::config::{AnalysisConfig, ModuleAssoc};
use crate::enumerate::{canonical_form, Caps};
use crate::error::Result;
use crate::ideals::{
    all_ideals, generated_ideal, ideal_violation, maximal_counterexample, prime_counterexample,
    primary_counterexample, semiprime_counterexample,
};
use crate::modules::{annihilator, find_primitive_ideals, module_homomorphism_checks, verify_module_axioms, ModuleAction};
use crate::morphism::{find_homomorphisms, image_structure, pullback_ideal};
use crate::quotient::{bourne_congruence, congruence_violation, enumerate_congruences, quotient_structure, zero_divisor};
use crate::radicals::{intersect_all, jacobson_radical, radical_by_elements, radical_by_primes};
use crate::set::ElementSet;
use crate::spectrum::{connected_components, crt_check, decompose_by_idempotent, find_idempotents, verify_topology};
use crate::structure::GammaStructure;

/// The search over all module actions runs up to this order with one
/// parameter, and one order lower otherwise.
pub const MODULE_SEARCH_MAX_ORDER: usize = 3;

fn module_search_feasible(s: &GammaStructure) -> bool {
    s.order() + usize::from(s.gamma() > 1) <= MODULE_SEARCH_MAX_ORDER
}

/// Every per-structure check.
pub fn theorem_suite(s: &GammaStructure, config: &AnalysisConfig, caps: &Caps) -> Result<Vec<Check>> {
    caps.check_scan(s.order(), "theorem suite")?;
    let mut out = Vec::new();
    out.extend(ideal_checks(s, config));
    out.extend(radical_checks(s, config));
    out.extend(congruence_checks(s, caps)?);
    out.extend(verify_topology(s, caps)?);
    out.extend(structure_checks(s, caps)?);
    out.extend(module_checks(s, config, caps)?);
    Ok(out)
}

fn proper_ideals(s: &GammaStructure) -> Vec<ElementSet> {
    let full = ElementSet::full(s.order());
    all_ideals(s).into_iter().filter(|&i| i != full).collect()
}

fn is_prime(s: &GammaStructure, i: ElementSet) -> bool {
    prime_counterexample(s, i).is_none()
}

fn is_semiprime(s: &GammaStructure, i: ElementSet) -> bool {
    semiprime_counterexample(s, i).is_none()
}

pub fn ideal_checks(s: &GammaStructure, config: &AnalysisConfig) -> Vec<Check> {
    let ideals = all_ideals(s);
    let proper = proper_ideals(s);
    let n = s.order();

    let mut max_prime = Check::asserted("maximal implies prime");
    let mut prime_primary = Check::asserted("prime implies primary");
    let mut prime_semiprime = Check::asserted("prime implies semiprime");
    for &i in &proper {
        let prime = prime_counterexample(s, i);
        if maximal_counterexample(s, &ideals, i).is_none() {
            max_prime.case(prime.is_none(), || json!({"ideal": i, "triple": prime}));
        }
        if prime.is_none() {
            let w = primary_counterexample(s, i, config.primary_params);
            prime_primary.case(w.is_none(), || json!({"ideal": i, "triple": w}));
            let c = semiprime_counterexample(s, i);
            prime_semiprime.case(c.is_none(), || json!({"ideal": i, "cube": c}));
        }
    }

    let semiprimes: Vec<ElementSet> = proper.iter().copied().filter(|&q| is_semiprime(s, q)).collect();
    let mut semi_meet = Check::asserted("intersection of semiprime ideals is semiprime");
    for (a, &p) in semiprimes.iter().enumerate() {
        for &q in &semiprimes[a..] {
            let meet = p.intersection(q);
            semi_meet.case(is_semiprime(s, meet), || json!({"ideals": [p, q], "meet": meet}));
        }
    }
    if !semiprimes.is_empty() {
        let meet = intersect_all(n, semiprimes.iter().copied());
        semi_meet.case(is_semiprime(s, meet), || json!({"ideals": semiprimes, "meet": meet}));
    }

    let primes: Vec<ElementSet> = proper.iter().copied().filter(|&p| is_prime(s, p)).collect();
    let mut prime_meet = Check::reported("intersection of two prime ideals is prime");
    for (a, &p) in primes.iter().enumerate() {
        for &q in &primes[a + 1..] {
            let meet = p.intersection(q);
            let w = prime_counterexample(s, meet);
            prime_meet.case(w.is_none(), || json!({"ideals": [p, q], "meet": meet, "triple": w}));
        }
    }

    let mut meet_ideal = Check::asserted("intersection of two ideals is an ideal");
    for &i in &ideals {
        for &j in &ideals {
            meet_ideal.case(ideal_violation(s, i.intersection(j)).is_none(), || json!({"ideals": [i, j]}));
        }
    }

    let mut generated = Check::asserted("generated ideal is the meet of the ideals containing the seed");
    for mask in 0u32..1 << n {
        let seed = ElementSet::from_mask(mask);
        let meet = intersect_all(n, ideals.iter().copied().filter(|i| seed.is_subset(*i)));
        let g = generated_ideal(s, seed);
        generated.case(g == meet, || json!({"seed": seed, "generated": g, "meet": meet}));
    }

    // an ideal triple whose products all land in P has a factor inside P
    let mut triple_form = Check::reported("prime iff no three ideals outside it multiply into it");
    for &p in &proper {
        let elementwise = is_prime(s, p);
        let outside: Vec<ElementSet> = ideals.iter().copied().filter(|i| !i.is_subset(p)).collect();
        let mut bad = None;
        'search: for &i in &outside {
            for &j in &outside {
                for &k in &outside {
                    if product_set(s, i, j, k).is_subset(p) {
                        bad = Some([i, j, k]);
                        break 'search;
                    }
                }
            }
        }
        triple_form.case(elementwise == bad.is_none(), || json!({"ideal": p, "elementwise": elementwise, "triple": bad}));
    }
    vec![max_prime, prime_primary, prime_semiprime, semi_meet, prime_meet, meet_ideal, generated, triple_form]
}

fn product_set(s: &GammaStructure, i: ElementSet, j: ElementSet, k: ElementSet) -> ElementSet {
    let m = s.gamma();
    let mut out = ElementSet::EMPTY;
    for a in i.iter() {
        for b in j.iter() {
            for c in k.iter() {
                for al in 0..m {
                    for be in 0..m {
                        out = out.with(s.mul(a, al, b, be, c));
                    }
                }
            }
        }
    }
    out
}

pub fn radical_checks(s: &GammaStructure, config: &AnalysisConfig) -> Vec<Check> {
    let ideals = all_ideals(s);
    let n = s.order();
    let full = ElementSet::full(n);
    let rad: Vec<ElementSet> = ideals.iter().map(|&i| radical_by_primes(s, i)).collect();

    let mut semiprime = Check::asserted("prime radical is semiprime when proper");
    let mut idempotent = Check::asserted("prime radical is idempotent");
    let mut monotone = Check::asserted("prime radical is monotone");
    let mut contains = Check::asserted("prime radical contains the ideal");
    let mut fixed = Check::asserted("semiprime ideals are fixed by the element-wise radical");
    let mut agree = Check::reported("prime radical equals the element-wise radical");
    let mut primary_root = Check::reported("prime radical of a primary ideal is prime");
    for (a, &i) in ideals.iter().enumerate() {
        let r = rad[a];
        if r != full {
            semiprime.case(is_semiprime(s, r), || json!({"ideal": i, "radical": r}));
        }
        idempotent.case(radical_by_primes(s, r) == r, || json!({"ideal": i, "radical": r}));
        contains.case(i.is_subset(r), || json!({"ideal": i, "radical": r}));
        for (b, &j) in ideals.iter().enumerate() {
            if i.is_subset(j) {
                monotone.case(r.is_subset(rad[b]), || json!({"smaller": i, "larger": j}));
            }
        }
        let by_elements = radical_by_elements(s, i, config.radical_iterate);
        agree.case(by_elements == r, || json!({"ideal": i, "by_primes": r, "by_elements": by_elements}));
        if i != full {
            if is_semiprime(s, i) {
                fixed.case(by_elements == i, || json!({"ideal": i, "by_elements": by_elements}));
            }
            if primary_counterexample(s, i, config.primary_params).is_none() && r != full {
                let w = prime_counterexample(s, r);
                primary_root.case(w.is_none(), || json!({"ideal": i, "radical": r, "triple": w}));
            }
        }
    }

    let mut jacobson = Check::asserted("Jacobson radical is semiprime when proper and every maximal ideal is prime");
    let j = jacobson_radical(s);
    let maximals: Vec<ElementSet> = ideals
        .iter()
        .copied()
        .filter(|&i| i != full && maximal_counterexample(s, &ideals, i).is_none())
        .collect();
    if j != full && maximals.iter().all(|&m| is_prime(s, m)) {
        jacobson.case(is_semiprime(s, j), || json!({"jacobson": j}));
    }
    vec![semiprime, idempotent, monotone, contains, fixed, agree, primary_root, jacobson]
}

pub fn congruence_checks(s: &GammaStructure, caps: &Caps) -> Result<Vec<Check>> {
    let ideals = all_ideals(s);
    let group = s.is_additive_group();
    let full = ElementSet::full(s.order());
    let mut bourne = Check::asserted("congruence induced by an ideal is a congruence");
    let mut inside = Check::asserted("ideal lies in the zero class of its congruence");
    let mut zero_class = if group {
        Check::asserted("zero class of an ideal's congruence is the ideal (additive group)")
    } else {
        Check::reported("zero class of an ideal's congruence is the ideal (monoid)")
    };
    let mut quotient = if group {
        Check::asserted("prime iff the quotient has no zero-divisors (additive group)")
    } else {
        Check::reported("prime iff the quotient has no zero-divisors (monoid)")
    };
    for &i in &ideals {
        let rho = bourne_congruence(s, i)?;
        let v = congruence_violation(s, &rho);
        bourne.case(v.is_none(), || json!({"ideal": i, "violation": v}));
        let z = rho.zero_class();
        inside.case(i.is_subset(z), || json!({"ideal": i, "zero_class": z}));
        zero_class.case(z == i, || json!({"ideal": i, "zero_class": z}));
        if i != full && v.is_none() {
            let q = quotient_structure(s, &rho)?;
            let prime = prime_counterexample(s, i);
            let divisor = zero_divisor(&q);
            quotient.case(prime.is_none() == divisor.is_none(), || {
                json!({"ideal": i, "prime_witness": prime, "quotient_zero_divisor": divisor, "blocks": rho})
            });
        }
    }

    let congruences = enumerate_congruences(s, caps)?;
    let mut zero_ideal = Check::asserted("zero class of a congruence is an ideal");
    let mut round_trip = Check::reported("congruence is recovered from its zero class");
    for rho in &congruences {
        let z = rho.zero_class();
        let ok = ideal_violation(s, z).is_none();
        zero_ideal.case(ok, || json!({"congruence": rho, "zero_class": z}));
        if ok {
            let back = bourne_congruence(s, z)?;
            round_trip.case(&back == rho, || json!({"congruence": rho, "zero_class": z, "recovered": back}));
        }
    }
    let mut bijection = Check::reported("ideals and congruences correspond one to one");
    let census = correspondence_census(s, &congruences);
    bijection.case(census.collisions.is_empty() && census.ideals == census.congruences, || {
        json!({"ideals": census.ideals, "congruences": census.congruences, "collision": census.collisions.first()})
    });
    Ok(vec![bourne, inside, zero_class, quotient, zero_ideal, round_trip, bijection])
}

/// Congruences grouped by zero class.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Census {
    pub ideals: usize,
    pub congruences: usize,
    /// Ideals occurring as a zero class.
    pub realized_ideals: usize,
    pub round_trip_failures: usize,
    /// Zero classes shared by more than one congruence.
    pub collisions: Vec<Collision>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Collision {
    pub zero_class: ElementSet,
    pub congruences: Vec<crate::quotient::Partition>,
}

pub fn correspondence_census(s: &GammaStructure, congruences: &[crate::quotient::Partition]) -> Census {
    let ideals = all_ideals(s);
    let mut groups: std::collections::BTreeMap<ElementSet, Vec<crate::quotient::Partition>> = Default::default();
    let mut round_trip_failures = 0;
    for rho in congruences {
        let z = rho.zero_class();
        match bourne_congruence(s, z) {
            Ok(back) if &back == rho => {}
            _ => round_trip_failures += 1,
        }
        groups.entry(z).or_default().push(rho.clone());
    }
    Census {
        ideals: ideals.len(),
        congruences: congruences.len(),
        realized_ideals: ideals.iter().filter(|i| groups.contains_key(i)).count(),
        round_trip_failures,
        collisions: groups
            .into_iter()
            .filter(|(_, v)| v.len() > 1)
            .map(|(zero_class, congruences)| Collision { zero_class, congruences })
            .collect(),
    }
}

pub fn structure_checks(s: &GammaStructure, caps: &Caps) -> Result<Vec<Check>> {
    let ideals = all_ideals(s);
    let full = ElementSet::full(s.order());
    let comp = connected_components(s, caps)?;
    let mut comparability = Check::asserted("clopen components match comparability components");
    comparability.case(comp.comparability_agrees, || json!({"components": comp.components}));
    let mut splitting = Check::reported("spectrum is connected iff no idempotent splits the structure");
    splitting.case(comp.splitting_criterion_agrees, || {
        json!({"components": comp.component_count, "splitting_idempotents": comp.splitting_idempotents})
    });
    let mut count = Check::reported("idempotent count equals component count");
    count.case(comp.idempotents_match_components, || {
        json!({"idempotents": find_idempotents(s), "components": comp.components})
    });

    let mut splits = Check::reported("every idempotent yields a complemented ideal");
    let mut candidate = Check::reported("complement search agrees with the unit-minus-idempotent candidate");
    for e in find_idempotents(s).iter() {
        let d = decompose_by_idempotent(s, e)?;
        splits.case(d.complement.is_some(), || json!({"idempotent": e, "generated": d.generated}));
        if let Some(c) = d.unit_candidate {
            candidate.case(d.complement == Some(c), || {
                json!({"idempotent": e, "found": d.complement, "candidate": c})
            });
        }
    }

    let maximals: Vec<ElementSet> = ideals
        .iter()
        .copied()
        .filter(|&i| i != full && maximal_counterexample(s, &ideals, i).is_none())
        .collect();
    let mut crt = if s.is_additive_group() {
        Check::asserted("comaximal maximal ideals give a bijection onto the product of quotients (additive group)")
    } else {
        Check::reported("comaximal maximal ideals give a bijection onto the product of quotients (monoid)")
    };
    for family in comaximal_families(s, &maximals) {
        let r = crt_check(s, &family)?;
        crt.case(r.passes(), || json!(r));
    }
    Ok(vec![comparability, splitting, count, splits, candidate, crt])
}

/// Every family of two or more pairwise comaximal ideals from `ideals`.
pub fn comaximal_families(s: &GammaStructure, ideals: &[ElementSet]) -> Vec<Vec<ElementSet>> {
    let full = ElementSet::full(s.order());
    let k = ideals.len().min(16);
    let mut out = Vec::new();
    for mask in 0u32..1 << k {
        if mask.count_ones() < 2 {
            continue;
        }
        let family: Vec<ElementSet> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| ideals[b]).collect();
        let pairwise = family
            .iter()
            .enumerate()
            .all(|(a, &i)| family[a + 1..].iter().all(|&j| crate::ideals::ideal_sum(s, i, j) == full));
        if pairwise {
            out.push(family);
        }
    }
    out
}

pub fn module_checks(s: &GammaStructure, config: &AnalysisConfig, caps: &Caps) -> Result<Vec<Check>> {
    let regular = ModuleAction::regular(s);
    let report = verify_module_axioms(&regular, config.module_assoc, false);
    let kind = match config.module_assoc {
        ModuleAssoc::Surrogate => CheckKind::Asserted,
        ModuleAssoc::Printed => CheckKind::Reported,
    };
    let mut axioms = Check::new("regular module satisfies the module laws", kind);
    axioms.case(report.passes(), || json!(report.failures()));
    let mut printed = Check::reported("regular module satisfies the printed associativity reading");
    printed.case(report.associativity_printed.holds(), || json!(report.associativity_printed));

    let mut ann_ideal = Check::asserted("proper annihilator is an ideal");
    let mut ann_prime = Check::reported("annihilator of a simple module is prime");
    let mut modules = vec![regular.clone(), ModuleAction::zero(s)];
    let mut primitive_prime = Check::reported("primitive ideals are prime");
    let mut out = Vec::new();
    if module_search_feasible(s) {
        let found = crate::modules::simple_modules(s, s.order(), caps, config.module_assoc)?;
        for p in find_primitive_ideals(s, s.order(), caps, config.module_assoc)? {
            let w = prime_counterexample(s, p);
            primitive_prime.case(w.is_none(), || json!({"ideal": p, "triple": w}));
        }
        modules.extend(found);
        out.extend(module_homomorphism_checks(&regular, &regular, caps)?);
    }
    for a in &modules {
        let r = annihilator(a);
        if r.proper {
            ann_ideal.case(r.is_ideal, || json!({"annihilator": r.set}));
        }
        if let Some(v) = &r.prime {
            ann_prime.case(v.holds(), || json!({"annihilator": r.set, "prime": v}));
        }
    }
    let mut all = vec![axioms, printed, ann_ideal, ann_prime, primitive_prime];
    all.extend(out);
    Ok(all)
}

/// Pullbacks and first-isomorphism checks over every ordered pair of
/// structures with equal Γ and order at most `max_order`.
pub fn corpus_morphism_checks(corpus: &[GammaStructure], max_order: usize, caps: &Caps) -> Result<Vec<Check>> {
    let mut pullback_ideal_check = Check::asserted("preimage of an ideal is an ideal");
    let mut pullback_prime = Check::asserted("preimage of a prime along a surjection is prime");
    let mut first_iso = Check::asserted("quotient by the kernel is isomorphic to the image");
    let small: Vec<&GammaStructure> = corpus.iter().filter(|s| s.order() <= max_order).collect();
    for (x, src) in small.iter().enumerate() {
        for (y, tgt) in small.iter().enumerate() {
            if src.gamma() != tgt.gamma() {
                continue;
            }
            let tgt_ideals = all_ideals(tgt);
            for f in find_homomorphisms(src, tgt, caps)? {
                let surjective = f.is_surjective(tgt);
                for &i in &tgt_ideals {
                    let pre = pullback_ideal(&f, tgt, i)?;
                    pullback_ideal_check.case(ideal_violation(src, pre).is_none(), || {
                        json!({"source": x, "target": y, "map": f.map(), "ideal": i})
                    });
                    if surjective && i != ElementSet::full(tgt.order()) && is_prime(tgt, i) {
                        let w = prime_counterexample(src, pre);
                        pullback_prime.case(w.is_none(), || {
                            json!({"source": x, "target": y, "map": f.map(), "prime": i, "preimage": pre, "triple": w})
                        });
                    }
                }
                let q = quotient_structure(src, &f.kernel_congruence())?;
                let im = image_structure(&f, tgt)?;
                first_iso.case(canonical_form(&q) == canonical_form(&im), || {
                    json!({"source": x, "target": y, "map": f.map()})
                });
            }
        }
    }
    Ok(vec![pullback_ideal_check, pullback_prime, first_iso])
}
