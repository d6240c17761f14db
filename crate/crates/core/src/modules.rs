//! Finite ternary Γ-modules: a commutative monoid `M` with an action
//! `a_α m_β b ∈ M` for scalars `a, b` of a structure and `m ∈ M`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::checks::Check;
use crate::config::ModuleAssoc;
use crate::enumerate::{enumerate_additive_monoids, Caps};
use crate::error::{Error, Result};
use crate::ideals::{ideal_violation, prime_counterexample, TripleWitness};
use crate::set::{ElementSet, MAX_SET_ORDER};
use crate::structure::{parse_pair_key, Elem, GammaStructure, Param};
use crate::verdict::Verdict;

/// Nodes visited by the primitive-ideal search before it gives up.
pub const MODULE_SEARCH_NODE_LIMIT: u64 = 20_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleAction {
    scalar: GammaStructure,
    carrier: usize,
    carrier_add: Vec<u8>,
    /// `((αβ·n + a)·k + m)·n + b`
    action: Vec<u8>,
}

impl ModuleAction {
    /// Checks shape and range only. `action[α·m+β][a][x][b] = a_α x_β b`.
    pub fn new(
        scalar: GammaStructure,
        carrier_add: Vec<Vec<Elem>>,
        action: Vec<Vec<Vec<Vec<Elem>>>>,
    ) -> Result<Self> {
        let k = carrier_add.len();
        let n = scalar.order();
        let m = scalar.gamma();
        if k == 0 || k > MAX_SET_ORDER {
            return Err(Error::input(format!("carrier order {k} outside 1..={MAX_SET_ORDER}")));
        }
        let mut add = Vec::with_capacity(k * k);
        for row in &carrier_add {
            if row.len() != k {
                return Err(Error::input("carrier addition is not square"));
            }
            for &x in row {
                if x >= k {
                    return Err(Error::input(format!("carrier entry {x} out of range")));
                }
                add.push(x as u8);
            }
        }
        if action.len() != m * m {
            return Err(Error::input(format!("expected {} action tables", m * m)));
        }
        let mut act = Vec::with_capacity(m * m * n * k * n);
        for table in &action {
            if table.len() != n || table.iter().any(|p| p.len() != k || p.iter().any(|r| r.len() != n)) {
                return Err(Error::input(format!("action table must be {n}×{k}×{n}")));
            }
            for x in table.iter().flatten().flatten() {
                if *x >= k {
                    return Err(Error::input(format!("action entry {x} out of range")));
                }
                act.push(*x as u8);
            }
        }
        Ok(ModuleAction {
            scalar,
            carrier: k,
            carrier_add: add,
            action: act,
        })
    }

    /// The structure acting on itself through its own product.
    pub fn regular(s: &GammaStructure) -> Self {
        let n = s.order();
        let m = s.gamma();
        let mut action = Vec::with_capacity(m * m * n * n * n);
        for al in 0..m {
            for be in 0..m {
                for a in 0..n {
                    for x in 0..n {
                        for b in 0..n {
                            action.push(s.mul(a, al, x, be, b) as u8);
                        }
                    }
                }
            }
        }
        ModuleAction {
            scalar: s.clone(),
            carrier: n,
            carrier_add: s.addition_raw().to_vec(),
            action,
        }
    }

    /// One-element carrier.
    pub fn zero(s: &GammaStructure) -> Self {
        let n = s.order();
        let m = s.gamma();
        ModuleAction {
            scalar: s.clone(),
            carrier: 1,
            carrier_add: vec![0],
            action: vec![0; m * m * n * n],
        }
    }

    pub fn scalar(&self) -> &GammaStructure {
        &self.scalar
    }

    pub fn carrier_order(&self) -> usize {
        self.carrier
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        self.carrier_add[x * self.carrier + y] as Elem
    }

    /// `a_α x_β b`, unchecked.
    #[inline]
    pub fn act(&self, a: Elem, alpha: Param, x: Elem, beta: Param, b: Elem) -> Elem {
        let n = self.scalar.order();
        let p = alpha * self.scalar.gamma() + beta;
        self.action[((p * n + a) * self.carrier + x) * n + b] as Elem
    }

    /// Parses the module format. A string `"scalar"` is a path resolved
    /// against `base`; an object is an inline structure.
    pub fn from_json(text: &str, base: Option<&Path>) -> Result<Self> {
        let file: ModuleFile = serde_json::from_str(text)?;
        let scalar = match file.scalar {
            ScalarRef::Path(p) => {
                let path = match base {
                    Some(b) => b.join(&p),
                    None => p.into(),
                };
                GammaStructure::read_file(path)?
            }
            ScalarRef::Inline(v) => GammaStructure::from_json(&v.to_string())?,
        };
        let m = scalar.gamma();
        if file.carrier_addition.len() != file.carrier_order {
            return Err(Error::input(format!(
                "\"carrier_addition\" has {} rows, \"carrier_order\" says {}",
                file.carrier_addition.len(),
                file.carrier_order
            )));
        }
        let mut tables: Vec<Option<Vec<Vec<Vec<Elem>>>>> = vec![None; m * m];
        for (key, t) in file.action {
            let (al, be) = parse_pair_key(&key, m)?;
            tables[al * m + be] = Some(t);
        }
        let action = tables
            .into_iter()
            .enumerate()
            .map(|(p, t)| t.ok_or_else(|| Error::input(format!("missing action table \"{},{}\"", p / m, p % m))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(scalar, file.carrier_addition, action)
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text, path.parent())
    }

    /// Canonical layout. With `scalar_ref` the scalar is written as that
    /// path, otherwise inline.
    pub fn to_json(&self, scalar_ref: Option<&str>) -> String {
        let n = self.scalar.order();
        let m = self.scalar.gamma();
        let k = self.carrier;
        let mut out = String::from("{\n");
        match scalar_ref {
            Some(p) => {
                let _ = writeln!(out, "  \"scalar\": {},", json!(p));
            }
            None => {
                let inline = self.scalar.to_json().trim_end().replace('\n', "\n  ");
                let _ = writeln!(out, "  \"scalar\": {inline},");
            }
        }
        let _ = writeln!(out, "  \"carrier_order\": {k},");
        out.push_str("  \"carrier_addition\": [\n");
        for x in 0..k {
            let row: Vec<String> = (0..k).map(|y| self.add(x, y).to_string()).collect();
            let _ = writeln!(out, "    [{}]{}", row.join(", "), if x + 1 < k { "," } else { "" });
        }
        out.push_str("  ],\n  \"action\": {\n");
        for p in 0..m * m {
            let (al, be) = (p / m, p % m);
            let _ = writeln!(out, "    \"{al},{be}\": [");
            for a in 0..n {
                let plane: Vec<String> = (0..k)
                    .map(|x| {
                        let row: Vec<String> = (0..n).map(|b| self.act(a, al, x, be, b).to_string()).collect();
                        format!("[{}]", row.join(", "))
                    })
                    .collect();
                let _ = writeln!(out, "      [{}]{}", plane.join(", "), if a + 1 < n { "," } else { "" });
            }
            let _ = writeln!(out, "    ]{}", if p + 1 < m * m { "," } else { "" });
        }
        out.push_str("  }\n}\n");
        out
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModuleFile {
    scalar: ScalarRef,
    carrier_order: usize,
    carrier_addition: Vec<Vec<Elem>>,
    action: BTreeMap<String, Vec<Vec<Vec<Elem>>>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ScalarRef {
    Path(String),
    Inline(serde_json::Value),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModuleLaw {
    CarrierIdentity,
    CarrierCommutativity,
    CarrierAssociativity,
    AdditiveFirst,
    AdditiveMiddle,
    AdditiveLast,
    AssociativitySurrogate,
    AssociativityPrinted,
    ZeroFirst,
    ZeroLast,
    Commutative,
}

/// A failing instance of one law. `lhs`/`rhs` are carrier elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleWitness {
    pub law: ModuleLaw,
    pub scalars: Vec<Elem>,
    pub vectors: Vec<Elem>,
    pub params: Vec<Param>,
    pub lhs: Elem,
    pub rhs: Elem,
}

impl ModuleWitness {
    fn new(a: &ModuleAction, law: ModuleLaw, scalars: Vec<Elem>, vectors: Vec<Elem>, params: Vec<Param>) -> Self {
        let mut w = ModuleWitness {
            law,
            scalars,
            vectors,
            params,
            lhs: 0,
            rhs: 0,
        };
        (w.lhs, w.rhs) = w.sides(a);
        w
    }

    /// Both sides of the law at this instance.
    pub fn sides(&self, a: &ModuleAction) -> (Elem, Elem) {
        let s = &a.scalar;
        let x = &self.scalars;
        let v = &self.vectors;
        let p = &self.params;
        match self.law {
            ModuleLaw::CarrierIdentity => (a.add(0, v[0]), v[0]),
            ModuleLaw::CarrierCommutativity => (a.add(v[0], v[1]), a.add(v[1], v[0])),
            ModuleLaw::CarrierAssociativity => (a.add(a.add(v[0], v[1]), v[2]), a.add(v[0], a.add(v[1], v[2]))),
            ModuleLaw::AdditiveFirst => (
                a.act(s.add(x[0], x[1]), p[0], v[0], p[1], x[2]),
                a.add(a.act(x[0], p[0], v[0], p[1], x[2]), a.act(x[1], p[0], v[0], p[1], x[2])),
            ),
            ModuleLaw::AdditiveMiddle => (
                a.act(x[0], p[0], a.add(v[0], v[1]), p[1], x[1]),
                a.add(a.act(x[0], p[0], v[0], p[1], x[1]), a.act(x[0], p[0], v[1], p[1], x[1])),
            ),
            ModuleLaw::AdditiveLast => (
                a.act(x[0], p[0], v[0], p[1], s.add(x[1], x[2])),
                a.add(a.act(x[0], p[0], v[0], p[1], x[1]), a.act(x[0], p[0], v[0], p[1], x[2])),
            ),
            ModuleLaw::AssociativitySurrogate => (
                a.act(x[0], p[0], a.act(x[1], p[2], v[0], p[3], x[2]), p[1], x[3]),
                a.act(x[1], p[2], a.act(x[0], p[0], v[0], p[1], x[3]), p[3], x[2]),
            ),
            ModuleLaw::AssociativityPrinted => (
                a.act(x[0], p[0], a.act(x[1], p[2], v[0], p[3], x[2]), p[1], x[3]),
                a.act(s.mul(x[0], p[0], x[1], p[2], x[2]), p[3], v[0], p[1], x[3]),
            ),
            ModuleLaw::ZeroFirst => (a.act(0, p[0], v[0], p[1], x[0]), 0),
            ModuleLaw::ZeroLast => (a.act(x[0], p[0], v[0], p[1], 0), 0),
            ModuleLaw::Commutative => (a.act(x[0], p[0], v[0], p[1], x[1]), a.act(x[1], p[1], v[0], p[0], x[0])),
        }
    }

    /// True when the violation reproduces.
    pub fn replay(&self, a: &ModuleAction) -> bool {
        let (l, r) = self.sides(a);
        l != r
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub carrier_monoid: Verdict<ModuleWitness>,
    pub additivity: Verdict<ModuleWitness>,
    pub associativity_surrogate: Verdict<ModuleWitness>,
    pub associativity_printed: Verdict<ModuleWitness>,
    pub absorbing_zero: Verdict<ModuleWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutativity: Option<Verdict<ModuleWitness>>,
    /// Which associativity law decides `passes`.
    pub associativity_mode: ModuleAssoc,
}

impl ModuleReport {
    pub fn associativity(&self) -> &Verdict<ModuleWitness> {
        match self.associativity_mode {
            ModuleAssoc::Surrogate => &self.associativity_surrogate,
            ModuleAssoc::Printed => &self.associativity_printed,
        }
    }

    pub fn passes(&self) -> bool {
        self.carrier_monoid.holds()
            && self.additivity.holds()
            && self.associativity().holds()
            && self.absorbing_zero.holds()
            && self.commutativity.as_ref().is_none_or(Verdict::holds)
    }

    pub fn failures(&self) -> Vec<&ModuleWitness> {
        let mut out: Vec<&ModuleWitness> = [&self.carrier_monoid, &self.additivity, self.associativity(), &self.absorbing_zero]
            .into_iter()
            .filter_map(Verdict::witness)
            .collect();
        out.extend(self.commutativity.as_ref().and_then(Verdict::witness));
        out
    }
}

/// All module laws, each with its lexicographically first failure.
pub fn verify_module_axioms(a: &ModuleAction, assoc: ModuleAssoc, require_commutative: bool) -> ModuleReport {
    ModuleReport {
        carrier_monoid: Verdict::from_counterexample(carrier_violation(a)),
        additivity: Verdict::from_counterexample(additivity_violation(a)),
        associativity_surrogate: Verdict::from_counterexample(assoc_violation(a, ModuleLaw::AssociativitySurrogate)),
        associativity_printed: Verdict::from_counterexample(assoc_violation(a, ModuleLaw::AssociativityPrinted)),
        absorbing_zero: Verdict::from_counterexample(zero_violation(a)),
        commutativity: require_commutative.then(|| Verdict::from_counterexample(commutative_violation(a))),
        associativity_mode: assoc,
    }
}

fn carrier_violation(a: &ModuleAction) -> Option<ModuleWitness> {
    let k = a.carrier;
    let mut found = None;
    'search: {
        for x in 0..k {
            if a.add(0, x) != x {
                found = Some((ModuleLaw::CarrierIdentity, vec![x]));
                break 'search;
            }
        }
        for x in 0..k {
            for y in 0..k {
                if a.add(x, y) != a.add(y, x) {
                    found = Some((ModuleLaw::CarrierCommutativity, vec![x, y]));
                    break 'search;
                }
            }
        }
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    if a.add(a.add(x, y), z) != a.add(x, a.add(y, z)) {
                        found = Some((ModuleLaw::CarrierAssociativity, vec![x, y, z]));
                        break 'search;
                    }
                }
            }
        }
    }
    found.map(|(law, v)| ModuleWitness::new(a, law, vec![], v, vec![]))
}

fn params2(m: usize) -> impl Iterator<Item = [Param; 2]> {
    (0..m).flat_map(move |al| (0..m).map(move |be| [al, be]))
}

fn additivity_violation(a: &ModuleAction) -> Option<ModuleWitness> {
    let n = a.scalar.order();
    let m = a.scalar.gamma();
    let k = a.carrier;
    let laws = [
        (ModuleLaw::AdditiveFirst, 3, 1),
        (ModuleLaw::AdditiveMiddle, 2, 2),
        (ModuleLaw::AdditiveLast, 3, 1),
    ];
    for (law, ns, nv) in laws {
        let scalar_tuples = tuples(n, ns);
        let vector_tuples = tuples(k, nv);
        for xs in &scalar_tuples {
            for vs in &vector_tuples {
                for p in params2(m) {
                    let w = ModuleWitness::new(a, law, xs.clone(), vs.clone(), p.to_vec());
                    if w.lhs != w.rhs {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

fn assoc_violation(a: &ModuleAction, law: ModuleLaw) -> Option<ModuleWitness> {
    let n = a.scalar.order();
    let m = a.scalar.gamma();
    for xs in tuples(n, 4) {
        for x in 0..a.carrier {
            for ps in tuples(m, 4) {
                let (l, r) = {
                    let [a0, b, c, d] = [xs[0], xs[1], xs[2], xs[3]];
                    let [al, be, ga, de] = [ps[0], ps[1], ps[2], ps[3]];
                    let inner = a.act(b, ga, x, de, c);
                    let lhs = a.act(a0, al, inner, be, d);
                    let rhs = match law {
                        ModuleLaw::AssociativitySurrogate => a.act(b, ga, a.act(a0, al, x, be, d), de, c),
                        _ => a.act(a.scalar.mul(a0, al, b, ga, c), de, x, be, d),
                    };
                    (lhs, rhs)
                };
                if l != r {
                    return Some(ModuleWitness::new(a, law, xs, vec![x], ps));
                }
            }
        }
    }
    None
}

fn zero_violation(a: &ModuleAction) -> Option<ModuleWitness> {
    let n = a.scalar.order();
    let m = a.scalar.gamma();
    for law in [ModuleLaw::ZeroFirst, ModuleLaw::ZeroLast] {
        for b in 0..n {
            for x in 0..a.carrier {
                for p in params2(m) {
                    let w = ModuleWitness::new(a, law, vec![b], vec![x], p.to_vec());
                    if w.lhs != w.rhs {
                        return Some(w);
                    }
                }
            }
        }
    }
    None
}

fn commutative_violation(a: &ModuleAction) -> Option<ModuleWitness> {
    let n = a.scalar.order();
    for xs in tuples(n, 2) {
        for x in 0..a.carrier {
            for p in params2(a.scalar.gamma()) {
                let w = ModuleWitness::new(a, ModuleLaw::Commutative, xs.clone(), vec![x], p.to_vec());
                if w.lhs != w.rhs {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// All tuples of length `len` over `0..base`, lexicographically.
fn tuples(base: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..base).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

fn is_submodule(a: &ModuleAction, set: ElementSet) -> bool {
    let n = a.scalar.order();
    let m = a.scalar.gamma();
    set.contains(0)
        && set.iter().all(|x| set.iter().all(|y| set.contains(a.add(x, y))))
        && set.iter().all(|x| {
            (0..n).all(|p| {
                (0..n).all(|q| params2(m).all(|[al, be]| set.contains(a.act(p, al, x, be, q))))
            })
        })
}

/// Subsets containing 0, closed under addition and the action; sorted.
pub fn enumerate_submodules(a: &ModuleAction, caps: &Caps) -> Result<Vec<ElementSet>> {
    let k = a.carrier;
    caps.check_scan(k, "submodule scan")?;
    Ok(submodules(a))
}

fn submodules(a: &ModuleAction) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = (0u32..1 << a.carrier)
        .filter(|mask| mask & 1 == 1)
        .map(ElementSet::from_mask)
        .filter(|&s| is_submodule(a, s))
        .collect();
    out.sort();
    out
}

/// Exactly two submodules on a carrier of more than one element.
pub fn is_simple_module(a: &ModuleAction) -> bool {
    a.carrier > 1 && submodules(a).len() == 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorResult {
    pub set: ElementSet,
    pub proper: bool,
    pub is_ideal: bool,
    pub simple_module: bool,
    /// Evaluated only for a proper annihilator of a simple module.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<Verdict<TripleWitness>>,
}

/// Scalars `a` with `a_α x_β b = 0` for every `x`, `b` and parameters.
pub fn annihilator(a: &ModuleAction) -> AnnihilatorResult {
    let s = &a.scalar;
    let n = s.order();
    let set: ElementSet = (0..n)
        .filter(|&p| {
            (0..a.carrier).all(|x| (0..n).all(|b| params2(s.gamma()).all(|[al, be]| a.act(p, al, x, be, b) == 0)))
        })
        .collect();
    let proper = set != ElementSet::full(n);
    let simple_module = is_simple_module(a);
    AnnihilatorResult {
        set,
        proper,
        is_ideal: ideal_violation(s, set).is_none(),
        simple_module,
        prime: (simple_module && proper).then(|| Verdict::from_counterexample(prime_counterexample(s, set))),
    }
}

/// Annihilators of simple modules with carriers of 2..=`carrier_cap`
/// elements, proper ones only, sorted. Carriers range over all additive
/// monoids of each size and actions over all tables satisfying the module
/// laws under `assoc`.
pub fn find_primitive_ideals(
    s: &GammaStructure,
    carrier_cap: usize,
    caps: &Caps,
    assoc: ModuleAssoc,
) -> Result<Vec<ElementSet>> {
    Ok(simple_modules(s, carrier_cap, caps, assoc)?
        .iter()
        .map(annihilator)
        .filter(|r| r.proper)
        .map(|r| r.set)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect())
}

/// Every simple module with a carrier of 2..=`carrier_cap` elements.
pub fn simple_modules(
    s: &GammaStructure,
    carrier_cap: usize,
    caps: &Caps,
    assoc: ModuleAssoc,
) -> Result<Vec<ModuleAction>> {
    if carrier_cap > caps.max_order {
        return Err(Error::resource(format!("module carriers of size {carrier_cap}"), caps.max_order));
    }
    let mut out = Vec::new();
    for k in 2..=carrier_cap {
        let monoids = enumerate_additive_monoids(k, caps)?;
        let found = monoids
            .par_iter()
            .map(|mon| {
                let carrier_add = mon.table().into_iter().flatten().map(|x| x as u8).collect();
                ActionSearch::new(s, k, carrier_add).run(assoc)
            })
            .collect::<Result<Vec<_>>>()?;
        out.extend(found.into_iter().flatten());
    }
    Ok(out)
}

struct ActionSearch {
    template: ModuleAction,
    free: Vec<usize>,
    /// `(t, u, v)`: cell `t` must equal cell `u` plus cell `v`, bucketed by
    /// the rank of the last free cell among the three.
    buckets: Vec<Vec<(usize, usize, usize)>>,
    nodes: u64,
}

impl ActionSearch {
    fn new(s: &GammaStructure, k: usize, carrier_add: Vec<u8>) -> Self {
        let n = s.order();
        let m = s.gamma();
        let cells = m * m * n * k * n;
        let idx = |p: usize, a: usize, x: usize, b: usize| ((p * n + a) * k + x) * n + b;
        let template = ModuleAction {
            scalar: s.clone(),
            carrier: k,
            carrier_add,
            action: vec![0; cells],
        };
        let pinned = |c: usize| {
            let b = c % n;
            let a = (c / (n * k)) % n;
            a == 0 || b == 0
        };
        let free: Vec<usize> = (0..cells).filter(|&c| !pinned(c)).collect();
        let mut rank = vec![None; cells];
        for (r, &c) in free.iter().enumerate() {
            rank[c] = Some(r);
        }
        let mut buckets = vec![Vec::new(); free.len()];
        let mut push = |t: usize, u: usize, v: usize| {
            if let Some(r) = [t, u, v].iter().filter_map(|&c| rank[c]).max() {
                buckets[r].push((t, u, v));
            }
        };
        for p in 0..m * m {
            for a in 0..n {
                for x in 0..k {
                    for b in 0..n {
                        for a2 in 0..n {
                            push(idx(p, s.add(a, a2), x, b), idx(p, a, x, b), idx(p, a2, x, b));
                            push(idx(p, a, x, s.add(b, a2)), idx(p, a, x, b), idx(p, a, x, a2));
                        }
                        for x2 in 0..k {
                            let sum = template.add(x, x2);
                            push(idx(p, a, sum, b), idx(p, a, x, b), idx(p, a, x2, b));
                        }
                    }
                }
            }
        }
        ActionSearch {
            template,
            free,
            buckets,
            nodes: 0,
        }
    }

    fn run(mut self, assoc: ModuleAssoc) -> Result<Vec<ModuleAction>> {
        let mut out = Vec::new();
        let mut cur = self.template.clone();
        self.descend(0, &mut cur, assoc, &mut out)?;
        Ok(out)
    }

    fn descend(&mut self, r: usize, cur: &mut ModuleAction, assoc: ModuleAssoc, out: &mut Vec<ModuleAction>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > MODULE_SEARCH_NODE_LIMIT {
            return Err(Error::resource("module action search nodes", MODULE_SEARCH_NODE_LIMIT as usize));
        }
        if r == self.free.len() {
            if assoc_violation(cur, match assoc {
                ModuleAssoc::Surrogate => ModuleLaw::AssociativitySurrogate,
                ModuleAssoc::Printed => ModuleLaw::AssociativityPrinted,
            })
            .is_none()
                && is_simple_module(cur)
            {
                out.push(cur.clone());
            }
            return Ok(());
        }
        let cell = self.free[r];
        for v in 0..cur.carrier {
            cur.action[cell] = v as u8;
            let ok = self.buckets[r].iter().all(|&(t, u, w)| {
                cur.action[t] as usize == cur.add(cur.action[u] as usize, cur.action[w] as usize)
            });
            if ok {
                self.descend(r + 1, cur, assoc, out)?;
            }
        }
        cur.action[cell] = 0;
        Ok(())
    }
}

/// Carrier maps `f` with `f(0) = 0`, additive, and commuting with the
/// action. Both modules must share the scalar structure.
pub fn find_module_homomorphisms(src: &ModuleAction, tgt: &ModuleAction, caps: &Caps) -> Result<Vec<Vec<Elem>>> {
    if src.scalar != tgt.scalar {
        return Err(Error::input("modules over different scalar structures"));
    }
    let (k1, k2) = (src.carrier, tgt.carrier);
    caps.check_scan(k1.max(k2), "module map search")?;
    let n = src.scalar.order();
    let m = src.scalar.gamma();
    let total = k2.pow(k1 as u32 - 1);
    Ok((0..total)
        .filter_map(|code| {
            let mut f = vec![0; k1];
            let mut c = code;
            for slot in f.iter_mut().skip(1).rev() {
                *slot = c % k2;
                c /= k2;
            }
            let additive = (0..k1).all(|x| (0..k1).all(|y| f[src.add(x, y)] == tgt.add(f[x], f[y])));
            let equivariant = additive
                && (0..k1).all(|x| {
                    (0..n).all(|a| {
                        (0..n).all(|b| params2(m).all(|[al, be]| f[src.act(a, al, x, be, b)] == tgt.act(a, al, f[x], be, b)))
                    })
                });
            equivariant.then_some(f)
        })
        .collect())
}

/// Kernel and image are submodules, and the fibres of `f` match its image.
/// The quotient by the congruence the kernel induces is compared too, as a
/// finding.
pub fn module_homomorphism_checks(src: &ModuleAction, tgt: &ModuleAction, caps: &Caps) -> Result<Vec<Check>> {
    let mut kernel = Check::asserted("kernel of a module map is a submodule");
    let mut image = Check::asserted("image of a module map is a submodule");
    let mut fibres = Check::asserted("fibres of a module map match its image");
    let mut bourne = Check::reported("quotient by the kernel matches the image");
    for f in find_module_homomorphisms(src, tgt, caps)? {
        let ker: ElementSet = (0..src.carrier).filter(|&x| f[x] == 0).collect();
        let im: ElementSet = f.iter().copied().collect();
        let w = || json!({"map": f});
        kernel.case(is_submodule(src, ker), w);
        image.case(is_submodule(tgt, im), w);
        let mut distinct = f.clone();
        distinct.sort_unstable();
        distinct.dedup();
        fibres.case(distinct.len() == im.len(), w);
        bourne.case(kernel_quotient_size(src, ker) == im.len(), w);
    }
    Ok(vec![kernel, image, fibres, bourne])
}

/// Classes of `x ~ y` iff `x + i = y + j` for some `i, j` in `sub`.
fn kernel_quotient_size(a: &ModuleAction, sub: ElementSet) -> usize {
    let k = a.carrier;
    let mut label: Vec<usize> = (0..k).collect();
    loop {
        let mut changed = false;
        for x in 0..k {
            for y in 0..k {
                let related = sub.iter().any(|i| sub.iter().any(|j| a.add(x, i) == a.add(y, j)));
                if related && label[x] != label[y] {
                    let (lo, hi) = (label[x].min(label[y]), label[x].max(label[y]));
                    label.iter_mut().filter(|l| **l == hi).for_each(|l| *l = lo);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    label.sort_unstable();
    label.dedup();
    label.len()
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
    fn regular_modules_pass() {
        for (_, s) in fixtures::named() {
            let r = verify_module_axioms(&ModuleAction::regular(&s), ModuleAssoc::Surrogate, true);
            assert!(r.passes(), "{r:?}");
            assert!(r.associativity_printed.holds());
        }
    }

    #[test]
    fn zero_law_witness() {
        let m3 = fixtures::m3();
        let mut a = ModuleAction::regular(&m3);
        // cell (a=0, x=1, b=1): make 0_γ1_γ1 = 1
        a.action[4] = 1;
        let r = verify_module_axioms(&a, ModuleAssoc::Surrogate, false);
        let w = r.absorbing_zero.witness().unwrap();
        assert_eq!(w.law, ModuleLaw::ZeroFirst);
        assert!(w.replay(&a));
        assert!(!r.passes());
    }

    #[test]
    fn submodules_of_regular_modules() {
        let m3 = ModuleAction::regular(&fixtures::m3());
        assert_eq!(enumerate_submodules(&m3, &caps()).unwrap(), vec![set(&[0]), ElementSet::full(3)]);
        let m6 = enumerate_submodules(&ModuleAction::regular(&fixtures::m6()), &caps()).unwrap();
        assert!(m6.contains(&set(&[0, 3])) && m6.contains(&set(&[0, 2, 4])));
        assert_eq!(enumerate_submodules(&ModuleAction::zero(&fixtures::m3()), &caps()).unwrap().len(), 1);
    }

    #[test]
    fn simplicity() {
        assert!(is_simple_module(&ModuleAction::regular(&fixtures::m3())));
        assert!(!is_simple_module(&ModuleAction::regular(&fixtures::m6())));
        assert!(is_simple_module(&ModuleAction::regular(&fixtures::b2())));
    }

    #[test]
    fn annihilators() {
        let r = annihilator(&ModuleAction::regular(&fixtures::m3()));
        assert_eq!(r.set, set(&[0]));
        assert!(r.is_ideal && r.proper);
        assert_eq!(r.prime, Some(Verdict::Holds));
        let z = annihilator(&ModuleAction::zero(&fixtures::m4()));
        assert_eq!(z.set, ElementSet::full(4));
        assert!(!z.proper && z.prime.is_none());
        assert_eq!(annihilator(&ModuleAction::regular(&fixtures::b2())).set, set(&[0]));
    }

    #[test]
    fn primitive_ideals() {
        let c = caps();
        let m3 = find_primitive_ideals(&fixtures::m3(), 3, &c, ModuleAssoc::Surrogate).unwrap();
        assert!(m3.contains(&set(&[0])));
        let b2 = find_primitive_ideals(&fixtures::b2(), 2, &c, ModuleAssoc::Surrogate).unwrap();
        assert!(b2.contains(&set(&[0])));
        assert!(find_primitive_ideals(&fixtures::trivial(), 2, &c, ModuleAssoc::Surrogate)
            .unwrap()
            .is_empty());
        assert!(find_primitive_ideals(&fixtures::m3(), 9, &c, ModuleAssoc::Surrogate).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = ModuleAction::regular(&fixtures::m3());
        let text = a.to_json(None);
        let back = ModuleAction::from_json(&text, None).unwrap();
        assert_eq!(back, a);
        assert_eq!(back.to_json(None), text);
    }

    #[test]
    fn json_errors() {
        let a = ModuleAction::regular(&fixtures::b2()).to_json(None);
        let broken = a.replace("\"carrier_order\": 2", "\"carrier_order\": 3");
        assert!(matches!(ModuleAction::from_json(&broken, None), Err(Error::Input(_))));
        assert!(matches!(ModuleAction::from_json("{", None), Err(Error::Parse { .. })));
    }

    #[test]
    fn homomorphism_checks() {
        let m6 = ModuleAction::regular(&fixtures::m6());
        let homs = find_module_homomorphisms(&m6, &m6, &caps()).unwrap();
        assert!(homs.contains(&(0..6).collect::<Vec<_>>()));
        assert!(homs.contains(&vec![0; 6]));
        for c in module_homomorphism_checks(&m6, &m6, &caps()).unwrap() {
            assert!(c.holds(), "{}: {}", c.name, c.status_line());
        }
        let z = ModuleAction::zero(&fixtures::m3());
        assert!(find_module_homomorphisms(&m6, &z, &caps()).is_err());
    }
}
