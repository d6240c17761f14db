//! Published statements about concrete structures, checked against the
//! literal definitions.
//!
//! A claims file is a JSON list. Each entry names a structure file in the
//! same directory, a kind, and the published value. Evaluation yields the
//! literal value, an agreement flag and, on conflict, a witness that
//! [`replay`] can re-check with plain table lookups.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tgs_core::axioms::AxiomWitness;
use tgs_core::ideals::{ideal_lattice, is_ideal, CubeWitness, IdealViolation, TripleWitness};
use tgs_core::quotient::{bourne_congruence, enumerate_congruences, is_congruence, Partition};
use tgs_core::radicals::{jacobson_radical, radical_by_primes};
use tgs_core::spectrum::{connected_components, crt_check, decompose_by_idempotent, find_idempotents};
use tgs_core::theorems::correspondence_census;
use tgs_core::{verify_axioms, Caps, ElementSet, Error, GammaStructure, PrimaryParams, Result};

pub const CLAIMS_FILE: &str = "claims.json";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Prime,
    Semiprime,
    Maximal,
    Primary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Assertion {
    Axioms { expected: bool },
    IdealProperty { ideal: Vec<usize>, property: Property, expected: bool },
    PrimeIdeals { expected: Vec<Vec<usize>> },
    MaximalIdeals { expected: Vec<Vec<usize>> },
    Radical { ideal: Vec<usize>, expected: Vec<usize> },
    JacobsonRadical { expected: Vec<usize> },
    Simple { expected: bool },
    Semisimple { expected: bool },
    Idempotent { element: usize, expected: bool },
    Decomposition { idempotent: usize, expected: [Vec<usize>; 2] },
    ComaximalProduct { ideals: Vec<Vec<usize>>, expected: bool },
    SpecComponents { expected: usize },
    IdempotentsMatchComponents { expected: bool },
    CongruenceCorrespondence { expected: bool },
    MaximalImpliesPrime { expected: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub file: String,
    pub statement: String,
    #[serde(flatten)]
    pub assertion: Assertion,
}

/// Evidence for a conflict. Each variant is checked by [`replay`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClaimWitness {
    /// Every violated axiom with its first failing tuple.
    Axioms { failures: Vec<AxiomFailure> },
    /// The set is not an ideal.
    NotIdeal { set: ElementSet, violation: IdealViolation },
    /// A product inside `ideal` with no factor inside.
    Product { ideal: ElementSet, triple: TripleWitness },
    /// A cube inside `ideal` of an element outside.
    Cube { ideal: ElementSet, cube: CubeWitness },
    /// A product inside `ideal` with first factor outside and no cube of
    /// the others inside.
    NotPrimary { ideal: ElementSet, triple: TripleWitness },
    /// An ideal strictly between `ideal` and T.
    Between { ideal: ElementSet, larger: ElementSet },
    /// The property holds exhaustively although the claim denies it.
    Holds { ideal: ElementSet, property: Property },
    /// The full ideal list; the literal value follows from it.
    Ideals { ideals: Vec<ElementSet>, literal: Value },
    /// A parameter pair where the cube of `element` is not `element`.
    NotIdempotent { element: usize, params: [usize; 2], cube: usize },
    Counts { idempotents: ElementSet, components: usize },
    /// Two distinct congruences with the same zero class.
    Collision { zero_class: ElementSet, congruences: [Partition; 2] },
    /// An ideal that is not the zero class of its own congruence.
    Unrealized { ideal: ElementSet, zero_class: ElementSet },
    /// A maximal ideal that is not prime.
    MaximalNotPrime { ideal: ElementSet, triple: TripleWitness },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomFailure {
    pub law: String,
    pub witness: AxiomWitness,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClaimOutcome {
    pub id: String,
    pub file: String,
    pub statement: String,
    pub published: Value,
    pub literal: Value,
    pub agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ClaimWitness>,
    /// Whether the witness reproduced on replay.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub replayed: Option<bool>,
}

pub fn read_claims(path: &Path) -> Result<Vec<Claim>> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn set(xs: &[usize]) -> ElementSet {
    ElementSet::from_elements(xs.iter().copied())
}

fn check_elements(s: &GammaStructure, xs: &[usize]) -> Result<()> {
    match xs.iter().find(|&&x| x >= s.order()) {
        Some(x) => Err(Error::Input(format!("element {x} outside a structure of order {}", s.order()))),
        None => Ok(()),
    }
}

pub fn evaluate(claim: &Claim, s: &GammaStructure, caps: &Caps) -> Result<ClaimOutcome> {
    let (published, literal, witness) = judge(&claim.assertion, s, caps)?;
    let agrees = witness.is_none();
    let replayed = witness.as_ref().map(|w| replay(s, w));
    Ok(ClaimOutcome {
        id: claim.id.clone(),
        file: claim.file.clone(),
        statement: claim.statement.clone(),
        published,
        literal,
        agrees,
        witness,
        replayed,
    })
}

type Judgement = (Value, Value, Option<ClaimWitness>);

fn judge(a: &Assertion, s: &GammaStructure, caps: &Caps) -> Result<Judgement> {
    let full = ElementSet::full(s.order());
    let ideals_witness = |literal: Value| ClaimWitness::Ideals {
        ideals: naive_ideals(s),
        literal,
    };
    Ok(match a {
        Assertion::Axioms { expected } => {
            let report = verify_axioms(s, true);
            let failures: Vec<AxiomFailure> = report
                .failures()
                .map(|(law, w)| AxiomFailure {
                    law: law.to_string(),
                    witness: w.clone(),
                })
                .collect();
            let literal = failures.is_empty();
            let laws: Vec<&str> = failures.iter().map(|f| f.law.as_str()).collect();
            let literal_value = if literal { json!(true) } else { json!({ "fails": laws }) };
            let w = match (literal == *expected, failures.is_empty()) {
                (true, _) => None,
                (false, false) => Some(ClaimWitness::Axioms { failures }),
                (false, true) => Some(ideals_witness(json!(literal))),
            };
            (json!(expected), literal_value, w)
        }
        Assertion::IdealProperty { ideal, property, expected } => {
            check_elements(s, ideal)?;
            let i = set(ideal);
            let (literal, counter) = property_verdict(s, i, *property, caps)?;
            let w = match (literal == *expected, counter) {
                (true, _) => None,
                (false, Some(c)) => Some(c),
                (false, None) => Some(ClaimWitness::Holds { ideal: i, property: *property }),
            };
            (json!(expected), json!(literal), w)
        }
        Assertion::PrimeIdeals { expected } | Assertion::MaximalIdeals { expected } => {
            let property = match a {
                Assertion::PrimeIdeals { .. } => Property::Prime,
                _ => Property::Maximal,
            };
            for x in expected {
                check_elements(s, x)?;
            }
            let claimed: Vec<ElementSet> = sorted(expected.iter().map(|x| set(x)));
            let lattice = ideal_lattice(s, caps, PrimaryParams::default())?;
            let literal: Vec<ElementSet> = match property {
                Property::Prime => lattice.primes().collect(),
                _ => lattice.maximals().collect(),
            };
            let w = match claimed.iter().find(|c| !literal.contains(c)) {
                Some(&c) => property_verdict(s, c, property, caps)?.1,
                None => literal
                    .iter()
                    .find(|l| !claimed.contains(l))
                    .map(|&l| ClaimWitness::Holds { ideal: l, property }),
            };
            (json!(claimed), json!(literal), w)
        }
        Assertion::Radical { ideal, expected } => {
            check_elements(s, ideal)?;
            check_elements(s, expected)?;
            let i = set(ideal);
            if let Some(v) = not_ideal(s, i) {
                return Ok((json!(set(expected)), json!(null), Some(v)));
            }
            let literal = radical_by_primes(s, i);
            let w = (literal != set(expected)).then(|| ideals_witness(json!(literal)));
            (json!(set(expected)), json!(literal), w)
        }
        Assertion::JacobsonRadical { expected } => {
            check_elements(s, expected)?;
            let literal = jacobson_radical(s);
            let w = (literal != set(expected)).then(|| ideals_witness(json!(literal)));
            (json!(set(expected)), json!(literal), w)
        }
        Assertion::Simple { expected } => {
            let literal = tgs_core::spectrum::is_simple(s);
            let w = (literal != *expected).then(|| ideals_witness(json!(literal)));
            (json!(expected), json!(literal), w)
        }
        Assertion::Semisimple { expected } => {
            let literal = tgs_core::radicals::is_semisimple(s);
            let w = (literal != *expected).then(|| ideals_witness(json!(literal)));
            (json!(expected), json!(literal), w)
        }
        Assertion::Idempotent { element, expected } => {
            check_elements(s, &[*element])?;
            let e = *element;
            let bad = params2(s).find(|&[al, be]| s.mul(e, al, e, be, e) != e);
            let literal = bad.is_none();
            let w = match (literal == *expected, bad) {
                (true, _) => None,
                (false, Some([al, be])) => Some(ClaimWitness::NotIdempotent {
                    element: e,
                    params: [al, be],
                    cube: s.mul(e, al, e, be, e),
                }),
                (false, None) => Some(ideals_witness(json!(literal))),
            };
            (json!(expected), json!(literal), w)
        }
        Assertion::Decomposition { idempotent, expected } => {
            check_elements(s, &[*idempotent])?;
            let published = json!([set(&expected[0]), set(&expected[1])]);
            if !find_idempotents(s).contains(*idempotent) {
                let e = *idempotent;
                let [al, be] = params2(s).find(|&[al, be]| s.mul(e, al, e, be, e) != e).expect("not idempotent");
                let w = ClaimWitness::NotIdempotent {
                    element: e,
                    params: [al, be],
                    cube: s.mul(e, al, e, be, e),
                };
                return Ok((published, json!(null), Some(w)));
            }
            let d = decompose_by_idempotent(s, *idempotent)?;
            let literal = json!([d.generated, d.complement]);
            let w = match [0, 1].iter().find_map(|&k| not_ideal(s, set(&expected[k]))) {
                Some(v) => Some(v),
                None => (literal != published).then(|| ideals_witness(literal.clone())),
            };
            (published, literal, w)
        }
        Assertion::ComaximalProduct { ideals, expected } => {
            for x in ideals {
                check_elements(s, x)?;
            }
            let family: Vec<ElementSet> = ideals.iter().map(|x| set(x)).collect();
            if let Some(v) = family.iter().find_map(|&i| not_ideal(s, i)) {
                return Ok((json!(expected), json!(null), Some(v)));
            }
            if family.contains(&full) {
                return Err(Error::Input("a product decomposition needs proper ideals".into()));
            }
            let r = crt_check(s, &family)?;
            let literal = r.comaximal && r.bijective();
            let w = (literal != *expected).then(|| ideals_witness(json!(r)));
            (json!(expected), json!(literal), w)
        }
        Assertion::SpecComponents { expected } => {
            let literal = connected_components(s, caps)?.component_count;
            let w = (literal != *expected).then(|| ideals_witness(json!(literal)));
            (json!(expected), json!(literal), w)
        }
        Assertion::IdempotentsMatchComponents { expected } => {
            let idempotents = find_idempotents(s);
            let components = connected_components(s, caps)?.component_count;
            let literal = idempotents.len() == components;
            let w = (literal != *expected).then_some(ClaimWitness::Counts { idempotents, components });
            (json!(expected), json!(literal), w)
        }
        Assertion::CongruenceCorrespondence { expected } => {
            let congruences = enumerate_congruences(s, caps)?;
            let census = correspondence_census(s, &congruences);
            let literal = census.collisions.is_empty() && census.ideals == census.congruences;
            let w = if literal == *expected {
                None
            } else if let Some(c) = census.collisions.first() {
                Some(ClaimWitness::Collision {
                    zero_class: c.zero_class,
                    congruences: [c.congruences[0].clone(), c.congruences[1].clone()],
                })
            } else {
                let mut found = None;
                for i in naive_ideals(s) {
                    let z = bourne_congruence(s, i)?.zero_class();
                    if z != i {
                        found = Some(ClaimWitness::Unrealized { ideal: i, zero_class: z });
                        break;
                    }
                }
                found.or_else(|| Some(ideals_witness(json!(census))))
            };
            (json!(expected), json!(census), w)
        }
        Assertion::MaximalImpliesPrime { expected } => {
            let lattice = ideal_lattice(s, caps, PrimaryParams::default())?;
            let mut found = None;
            for m in lattice.maximals() {
                if let Some(t) = tgs_core::ideals::is_prime(s, m)?.witness() {
                    found = Some(ClaimWitness::MaximalNotPrime { ideal: m, triple: *t });
                    break;
                }
            }
            let literal = found.is_none();
            let w = if literal == *expected {
                None
            } else {
                found.or_else(|| Some(ideals_witness(json!(literal))))
            };
            (json!(expected), json!(literal), w)
        }
    })
}

fn sorted(it: impl Iterator<Item = ElementSet>) -> Vec<ElementSet> {
    let mut v: Vec<ElementSet> = it.collect();
    v.sort();
    v
}

fn params2(s: &GammaStructure) -> impl Iterator<Item = [usize; 2]> {
    let m = s.gamma();
    (0..m * m).map(move |k| [k / m, k % m])
}

fn not_ideal(s: &GammaStructure, i: ElementSet) -> Option<ClaimWitness> {
    match is_ideal(s, i) {
        Ok(v) => v.witness().map(|w| ClaimWitness::NotIdeal {
            set: i,
            violation: w.clone(),
        }),
        Err(_) => None,
    }
}

/// Literal verdict and, when it is negative, the reason.
fn property_verdict(s: &GammaStructure, i: ElementSet, p: Property, caps: &Caps) -> Result<(bool, Option<ClaimWitness>)> {
    if let Some(w) = not_ideal(s, i) {
        return Ok((false, Some(w)));
    }
    if i == ElementSet::full(s.order()) {
        return Ok((false, Some(ClaimWitness::Ideals { ideals: naive_ideals(s), literal: json!(false) })));
    }
    let w = match p {
        Property::Prime => tgs_core::ideals::is_prime(s, i)?
            .witness()
            .map(|&t| ClaimWitness::Product { ideal: i, triple: t }),
        Property::Semiprime => tgs_core::ideals::is_semiprime(s, i)?
            .witness()
            .map(|&c| ClaimWitness::Cube { ideal: i, cube: c }),
        Property::Maximal => {
            caps.check_scan(s.order(), "ideal scan")?;
            tgs_core::ideals::is_maximal(s, i)?
                .witness()
                .map(|&l| ClaimWitness::Between { ideal: i, larger: l })
        }
        Property::Primary => tgs_core::ideals::is_primary(s, i, PrimaryParams::default())?
            .witness()
            .map(|&t| ClaimWitness::NotPrimary { ideal: i, triple: t }),
    };
    Ok((w.is_none(), w))
}

/// Re-checks a witness against the tables with loops independent of the
/// library's search code. True when the conflict is reproduced.
pub fn replay(s: &GammaStructure, w: &ClaimWitness) -> bool {
    let full = ElementSet::full(s.order());
    let tri = |t: &TripleWitness| {
        let [a, b, c] = t.args;
        let [al, be] = t.params;
        s.mul(a, al, b, be, c)
    };
    match w {
        ClaimWitness::Axioms { failures } => !failures.is_empty() && failures.iter().all(|f| f.witness.replay(s)),
        ClaimWitness::NotIdeal { set, violation } => violation.replay(s, *set) && !naive_is_ideal(s, *set),
        ClaimWitness::Product { ideal, triple } => {
            naive_is_ideal(s, *ideal) && ideal.contains(tri(triple)) && triple.args.iter().all(|&x| !ideal.contains(x))
        }
        ClaimWitness::Cube { ideal, cube } => {
            let [al, be] = cube.params;
            let x = cube.element;
            naive_is_ideal(s, *ideal) && !ideal.contains(x) && ideal.contains(s.mul(x, al, x, be, x))
        }
        ClaimWitness::NotPrimary { ideal, triple } => {
            let [a, b, c] = triple.args;
            let [al, be] = triple.params;
            let cube_in = |x: usize| ideal.contains(s.mul(x, al, x, be, x));
            naive_is_ideal(s, *ideal) && ideal.contains(tri(triple)) && !ideal.contains(a) && !cube_in(b) && !cube_in(c)
        }
        ClaimWitness::Between { ideal, larger } => {
            naive_is_ideal(s, *ideal)
                && naive_is_ideal(s, *larger)
                && ideal.is_proper_subset(*larger)
                && *larger != full
        }
        ClaimWitness::Holds { ideal, property } => naive_property(s, *ideal, *property),
        ClaimWitness::Ideals { ideals, .. } => *ideals == naive_ideals(s),
        ClaimWitness::NotIdempotent { element, params, cube } => {
            let x = *element;
            s.mul(x, params[0], x, params[1], x) == *cube && *cube != x
        }
        ClaimWitness::Counts { idempotents, components } => {
            let naive: ElementSet = (0..s.order())
                .filter(|&x| params2(s).all(|[al, be]| s.mul(x, al, x, be, x) == x))
                .collect();
            naive == *idempotents && idempotents.len() != *components
        }
        ClaimWitness::Collision { zero_class, congruences } => {
            congruences[0] != congruences[1]
                && congruences.iter().all(|rho| {
                    rho.zero_class() == *zero_class && is_congruence(s, rho).map(|v| v.holds()).unwrap_or(false)
                })
        }
        ClaimWitness::Unrealized { ideal, zero_class } => {
            // a ~ 0 iff a + i = j for some i, j in the ideal
            let naive: ElementSet = (0..s.order())
                .filter(|&a| ideal.iter().any(|i| ideal.contains(s.add(a, i))))
                .collect();
            naive_is_ideal(s, *ideal) && naive.is_subset(*zero_class) && zero_class != ideal
        }
        ClaimWitness::MaximalNotPrime { ideal, triple } => {
            naive_property(s, *ideal, Property::Maximal)
                && ideal.contains(tri(triple))
                && triple.args.iter().all(|&x| !ideal.contains(x))
        }
    }
}

fn naive_is_ideal(s: &GammaStructure, i: ElementSet) -> bool {
    let n = s.order();
    if !i.contains(0) || i.mask() & !ElementSet::full(n).mask() != 0 {
        return false;
    }
    for a in i.iter() {
        for b in i.iter() {
            if !i.contains(s.add(a, b)) {
                return false;
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !(i.contains(a) || i.contains(b) || i.contains(c)) {
                    continue;
                }
                if params2(s).any(|[al, be]| !i.contains(s.mul(a, al, b, be, c))) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every ideal by a plain subset scan, sorted.
pub fn naive_ideals(s: &GammaStructure) -> Vec<ElementSet> {
    sorted(
        (0u32..1 << s.order())
            .map(ElementSet::from_mask)
            .filter(|&i| naive_is_ideal(s, i)),
    )
}

fn naive_property(s: &GammaStructure, i: ElementSet, p: Property) -> bool {
    let n = s.order();
    let full = ElementSet::full(n);
    if !naive_is_ideal(s, i) || i == full {
        return false;
    }
    let triples = || {
        (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))))
    };
    match p {
        Property::Prime => triples().all(|(a, b, c)| {
            params2(s).all(|[al, be]| !i.contains(s.mul(a, al, b, be, c)) || i.contains(a) || i.contains(b) || i.contains(c))
        }),
        Property::Semiprime => {
            (0..n).all(|a| params2(s).all(|[al, be]| !i.contains(s.mul(a, al, a, be, a)) || i.contains(a)))
        }
        Property::Maximal => !naive_ideals(s).iter().any(|&j| i.is_proper_subset(j) && j != full),
        Property::Primary => triples().all(|(a, b, c)| {
            params2(s).all(|[al, be]| {
                !i.contains(s.mul(a, al, b, be, c))
                    || i.contains(a)
                    || i.contains(s.mul(b, al, b, be, b))
                    || i.contains(s.mul(c, al, c, be, c))
            })
        }),
    }
}

/// Every claim in `dir/claims.json`, in file order, with the structures it
/// names loaded from `dir`.
pub fn evaluate_dir(dir: &Path, caps: &Caps) -> Result<Vec<ClaimOutcome>> {
    let claims = read_claims(&dir.join(CLAIMS_FILE))?;
    let mut cache: std::collections::BTreeMap<String, GammaStructure> = Default::default();
    let mut out = Vec::with_capacity(claims.len());
    for c in &claims {
        if !cache.contains_key(&c.file) {
            cache.insert(c.file.clone(), GammaStructure::read_file(dir.join(&c.file))?);
        }
        out.push(evaluate(c, &cache[&c.file], caps)?);
    }
    Ok(out)
}
