//! Congruences, the subtraction-free congruence induced by an ideal,
//! quotient structures and zero-divisors.

use serde::{Serialize, Serializer};

use crate::enumerate::Caps;
use crate::error::{Error, Result};
use crate::ideals::{ideal_violation, TripleWitness};
use crate::set::ElementSet;
use crate::structure::{Elem, GammaStructure, Param};
use crate::verdict::Verdict;

/// A partition of the carrier. Blocks are numbered by smallest member, so
/// the block of 0 is always block 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<usize>,
}

impl Partition {
    /// Builds from a block label per element; labels are renumbered.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let block_of = labels
            .iter()
            .map(|l| {
                let next = map.len();
                *map.entry(*l).or_insert(next)
            })
            .collect();
        Partition { block_of }
    }

    /// Builds from explicit blocks, which must cover `0..order` exactly once.
    pub fn from_blocks(order: usize, blocks: &[Vec<Elem>]) -> Result<Self> {
        let mut label = vec![usize::MAX; order];
        for (k, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= order {
                    return Err(Error::input(format!("element {x} out of range")));
                }
                if label[x] != usize::MAX {
                    return Err(Error::input(format!("element {x} appears in two blocks")));
                }
                label[x] = k;
            }
        }
        if let Some(x) = label.iter().position(|&l| l == usize::MAX) {
            return Err(Error::input(format!("element {x} is in no block")));
        }
        Ok(Self::from_labels(&label))
    }

    pub fn discrete(order: usize) -> Self {
        Partition {
            block_of: (0..order).collect(),
        }
    }

    pub fn total(order: usize) -> Self {
        Partition {
            block_of: vec![0; order],
        }
    }

    pub fn order(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_of.iter().max().map_or(0, |m| m + 1)
    }

    #[inline]
    pub fn block_of(&self, x: Elem) -> usize {
        self.block_of[x]
    }

    #[inline]
    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn blocks(&self) -> Vec<ElementSet> {
        let mut out = vec![ElementSet::EMPTY; self.block_count()];
        for (x, &b) in self.block_of.iter().enumerate() {
            out[b] = out[b].with(x);
        }
        out
    }

    /// The block containing 0.
    pub fn zero_class(&self) -> ElementSet {
        (0..self.order()).filter(|&x| self.related(x, 0)).collect()
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(serializer)
    }
}

/// How a partition fails to be compatible with the operations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CongruenceViolation {
    /// `a ~ a2` but `a + b` and `a2 + b` land in different blocks.
    Addition { a: Elem, a2: Elem, b: Elem },
    /// `a ~ a2` placed in argument `position`, other arguments `rest`.
    Ternary {
        a: Elem,
        a2: Elem,
        position: usize,
        rest: [Elem; 2],
        params: [Param; 2],
    },
}

impl CongruenceViolation {
    pub fn replay(&self, s: &GammaStructure, rho: &Partition) -> bool {
        match *self {
            CongruenceViolation::Addition { a, a2, b } => {
                rho.related(a, a2) && !rho.related(s.add(a, b), s.add(a2, b))
            }
            CongruenceViolation::Ternary {
                a,
                a2,
                position,
                rest: [u, v],
                params: [al, be],
            } => {
                let at = |w| match position {
                    0 => s.mul(w, al, u, be, v),
                    1 => s.mul(u, al, w, be, v),
                    _ => s.mul(u, al, v, be, w),
                };
                rho.related(a, a2) && !rho.related(at(a), at(a2))
            }
        }
    }
}

/// Compatibility of `rho` with addition and every argument of every product.
/// Changing one argument at a time suffices since `rho` is transitive.
pub fn is_congruence(s: &GammaStructure, rho: &Partition) -> Result<Verdict<CongruenceViolation>> {
    if rho.order() != s.order() {
        return Err(Error::input(format!(
            "partition covers {} elements, structure has {}",
            rho.order(),
            s.order()
        )));
    }
    Ok(Verdict::from_counterexample(congruence_violation(s, rho)))
}

pub(crate) fn congruence_violation(s: &GammaStructure, rho: &Partition) -> Option<CongruenceViolation> {
    let n = s.order();
    let m = s.gamma();
    for a in 0..n {
        for a2 in (a + 1..n).filter(|&x| rho.related(a, x)) {
            for b in 0..n {
                if !rho.related(s.add(a, b), s.add(a2, b)) {
                    return Some(CongruenceViolation::Addition { a, a2, b });
                }
            }
            for position in 0..3 {
                for u in 0..n {
                    for v in 0..n {
                        for al in 0..m {
                            for be in 0..m {
                                let at = |w| match position {
                                    0 => s.mul(w, al, u, be, v),
                                    1 => s.mul(u, al, w, be, v),
                                    _ => s.mul(u, al, v, be, w),
                                };
                                if !rho.related(at(a), at(a2)) {
                                    return Some(CongruenceViolation::Ternary {
                                        a,
                                        a2,
                                        position,
                                        rest: [u, v],
                                        params: [al, be],
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// `a ~ b` iff `a + i = b + j` for some `i, j` in the ideal, closed
/// transitively. Agrees with `a − b ∈ I` when inverses exist.
pub fn bourne_congruence(s: &GammaStructure, ideal: ElementSet) -> Result<Partition> {
    if let Some(v) = ideal_violation(s, ideal) {
        return Err(Error::input(format!("{ideal} is not an ideal: {v:?}")));
    }
    let n = s.order();
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
            let related = ideal
                .iter()
                .any(|i| ideal.iter().any(|j| s.add(a, i) == s.add(b, j)));
            if related {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let labels: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Ok(Partition::from_labels(&labels))
}

/// The zero class of a congruence, with its ideal check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroClass {
    pub set: ElementSet,
    pub is_ideal: bool,
}

pub fn congruence_to_ideal(s: &GammaStructure, rho: &Partition) -> ZeroClass {
    let set = rho.zero_class();
    ZeroClass {
        set,
        is_ideal: ideal_violation(s, set).is_none(),
    }
}

/// `T/ρ`: blocks become elements (block of 0 first, others by smallest
/// member) and operations are computed on representatives. Every
/// representative is tried, so a non-congruence is caught here.
pub fn quotient_structure(s: &GammaStructure, rho: &Partition) -> Result<GammaStructure> {
    if rho.order() != s.order() {
        return Err(Error::input("partition does not match the structure"));
    }
    let n = s.order();
    let m = s.gamma();
    let k = rho.block_count();
    let mut add = vec![u8::MAX; k * k];
    for a in 0..n {
        for b in 0..n {
            let cell = &mut add[rho.block_of(a) * k + rho.block_of(b)];
            let v = rho.block_of(s.add(a, b)) as u8;
            if *cell != u8::MAX && *cell != v {
                return Err(Error::Consistency(format!(
                    "sum of classes of {a} and {b} depends on representatives"
                )));
            }
            *cell = v;
        }
    }
    let mut tern = vec![u8::MAX; m * m * k * k * k];
    for al in 0..m {
        for be in 0..m {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let idx = (((al * m + be) * k + rho.block_of(a)) * k + rho.block_of(b)) * k
                            + rho.block_of(c);
                        let v = rho.block_of(s.mul(a, al, b, be, c)) as u8;
                        if tern[idx] != u8::MAX && tern[idx] != v {
                            return Err(Error::Consistency(format!(
                                "product of classes of ({a},{b},{c}) depends on representatives"
                            )));
                        }
                        tern[idx] = v;
                    }
                }
            }
        }
    }
    let names = rho
        .blocks()
        .iter()
        .map(|b| {
            let members: Vec<&str> = b.iter().map(|x| s.name(x)).collect();
            format!("[{}]", members.join(","))
        })
        .collect();
    GammaStructure::from_raw(k, m, add, tern).with_names(names)
}

/// Every congruence, by restricted-growth-string scan of all partitions.
pub fn enumerate_congruences(s: &GammaStructure, caps: &Caps) -> Result<Vec<Partition>> {
    let n = s.order();
    caps.check_scan(n, "partition scan")?;
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    rgs(s, &mut labels, 1, 0, &mut out);
    Ok(out)
}

fn rgs(s: &GammaStructure, labels: &mut [usize], k: usize, max: usize, out: &mut Vec<Partition>) {
    if k >= labels.len() {
        let p = Partition {
            block_of: labels.to_vec(),
        };
        if congruence_violation(s, &p).is_none() {
            out.push(p);
        }
        return;
    }
    for l in 0..=max + 1 {
        labels[k] = l;
        rgs(s, labels, k + 1, max.max(l), out);
    }
}

/// Three nonzero elements and parameters whose product is 0.
pub fn has_nonzero_zero_divisors(s: &GammaStructure) -> Verdict<TripleWitness> {
    // the verdict "holds" when a zero-divisor exists
    match zero_divisor(s) {
        Some(w) => Verdict::Fails(w),
        None => Verdict::Holds,
    }
}

/// First triple of nonzero elements multiplying to 0, if any.
pub fn zero_divisor(s: &GammaStructure) -> Option<TripleWitness> {
    let n = s.order();
    let m = s.gamma();
    for a in 1..n {
        for b in 1..n {
            for c in 1..n {
                for al in 0..m {
                    for be in 0..m {
                        let product = s.mul(a, al, b, be, c);
                        if product == 0 {
                            return Some(TripleWitness {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::verify_axioms;
    use crate::enumerate::canonical_form;
    use crate::fixtures;

    fn set(xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(xs.iter().copied())
    }

    #[test]
    fn trivial_partitions_are_congruences() {
        let m6 = fixtures::m6();
        assert!(is_congruence(&m6, &Partition::discrete(6)).unwrap().holds());
        assert!(is_congruence(&m6, &Partition::total(6)).unwrap().holds());
        let parity = Partition::from_blocks(6, &[vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        assert!(is_congruence(&m6, &parity).unwrap().holds());
    }

    #[test]
    fn non_congruence_has_witness() {
        let m6 = fixtures::m6();
        let bad = Partition::from_blocks(6, &[vec![0, 1], vec![2], vec![3], vec![4], vec![5]]).unwrap();
        let v = is_congruence(&m6, &bad).unwrap();
        assert!(v.witness().unwrap().replay(&m6, &bad));
        assert!(matches!(quotient_structure(&m6, &bad), Err(Error::Consistency(_))));
    }

    #[test]
    fn bad_partitions_rejected() {
        assert!(Partition::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Partition::from_blocks(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(matches!(
            is_congruence(&fixtures::m3(), &Partition::discrete(2)),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn bourne_congruences() {
        let m6 = fixtures::m6();
        assert_eq!(bourne_congruence(&m6, set(&[0])).unwrap(), Partition::discrete(6));
        assert_eq!(
            bourne_congruence(&m6, set(&[0, 2, 4])).unwrap().blocks(),
            vec![set(&[0, 2, 4]), set(&[1, 3, 5])]
        );
        assert_eq!(
            bourne_congruence(&m6, set(&[0, 3])).unwrap().blocks(),
            vec![set(&[0, 3]), set(&[1, 4]), set(&[2, 5])]
        );
        assert!(matches!(bourne_congruence(&m6, set(&[0, 1])), Err(Error::Input(_))));
    }

    #[test]
    fn zero_classes() {
        let m6 = fixtures::m6();
        assert_eq!(congruence_to_ideal(&m6, &Partition::discrete(6)).set, set(&[0]));
        let parity = Partition::from_blocks(6, &[vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        let z = congruence_to_ideal(&m6, &parity);
        assert_eq!(z.set, set(&[0, 2, 4]));
        assert!(z.is_ideal);
        assert_eq!(congruence_to_ideal(&m6, &Partition::total(6)).set, ElementSet::full(6));
    }

    #[test]
    fn quotients() {
        let m6 = fixtures::m6();
        let same = quotient_structure(&m6, &Partition::discrete(6)).unwrap();
        assert_eq!(canonical_form(&same), canonical_form(&m6));

        let parity = Partition::from_blocks(6, &[vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        let q2 = quotient_structure(&m6, &parity).unwrap();
        assert_eq!(q2.order(), 2);
        assert_eq!(q2.mul(1, 0, 1, 0, 1), 1);
        assert!(verify_axioms(&q2, true).passes());

        let q3 = quotient_structure(&m6, &bourne_congruence(&m6, set(&[0, 3])).unwrap()).unwrap();
        assert_eq!(canonical_form(&q3), canonical_form(&fixtures::m3()));
        assert_eq!(q3.names()[1], "[1,4]");
    }

    #[test]
    fn congruence_counts() {
        let caps = Caps { max_order: 6, ..Caps::default() };
        assert_eq!(enumerate_congruences(&fixtures::trivial(), &caps).unwrap().len(), 1);
        assert_eq!(enumerate_congruences(&fixtures::b2(), &caps).unwrap().len(), 2);
        // M3: of the five partitions only discrete and total survive
        assert_eq!(enumerate_congruences(&fixtures::m3(), &caps).unwrap().len(), 2);
        assert_eq!(enumerate_congruences(&fixtures::m6(), &caps).unwrap().len(), 4);
    }

    #[test]
    fn zero_divisors() {
        assert!(zero_divisor(&fixtures::m3()).is_none());
        assert!(zero_divisor(&fixtures::b2()).is_none());
        let w = zero_divisor(&fixtures::m4()).unwrap();
        assert_eq!(w.args, [1, 2, 2]);
        assert_eq!(fixtures::m4().mul(2, 0, 2, 0, 2), 0);
    }
}
