//! Exhaustive verification of the defining axioms.
//!
//! Every check walks its quantifier space in lexicographic order (elements
//! first, then parameters) and stops at the first violation, so witnesses
//! are deterministic.

use std::fmt;

use serde::Serialize;

use crate::structure::{Elem, GammaStructure, Param};

/// Which of the two displayed commutativity equalities failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CommutativityLaw {
    /// `a_α b_β c = b_β a_α c`
    SwapFirstTwo,
    /// `a_α b_β c = c_α b_β a`
    SwapOuter,
}

/// A concrete violating tuple. Replaying it through the tables reproduces
/// the violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomWitness {
    /// `0 + a ≠ a` or `a + 0 ≠ a`.
    AdditiveIdentity { a: Elem },
    AdditiveCommutativity { a: Elem, b: Elem },
    AdditiveAssociativity { a: Elem, b: Elem, c: Elem },
    /// `(a_α b_β c)_γ d_δ e ≠ a_α b_β (c_γ d_δ e)`.
    TernaryAssociativity { elems: [Elem; 5], params: [Param; 4] },
    /// Additivity fails in argument `position` (0, 1 or 2): the sum `x + y`
    /// placed there, the other two arguments taken from `rest` in order.
    Distributivity {
        position: usize,
        x: Elem,
        y: Elem,
        rest: [Elem; 2],
        params: [Param; 2],
    },
    /// A product with a zero argument that is not zero.
    AbsorbingZero { args: [Elem; 3], params: [Param; 2] },
    Commutativity {
        law: CommutativityLaw,
        args: [Elem; 3],
        params: [Param; 2],
    },
}

impl AxiomWitness {
    /// Re-evaluates the witness; `true` means the violation is reproduced.
    pub fn replay(&self, s: &GammaStructure) -> bool {
        let (lhs, rhs) = self.sides(s);
        lhs != rhs
    }

    /// The two sides of the violated equation.
    pub fn sides(&self, s: &GammaStructure) -> (Elem, Elem) {
        match *self {
            AxiomWitness::AdditiveIdentity { a } => {
                if s.add(0, a) != a {
                    (s.add(0, a), a)
                } else {
                    (s.add(a, 0), a)
                }
            }
            AxiomWitness::AdditiveCommutativity { a, b } => (s.add(a, b), s.add(b, a)),
            AxiomWitness::AdditiveAssociativity { a, b, c } => {
                (s.add(s.add(a, b), c), s.add(a, s.add(b, c)))
            }
            AxiomWitness::TernaryAssociativity {
                elems: [a, b, c, d, e],
                params: [al, be, ga, de],
            } => (
                s.mul(s.mul(a, al, b, be, c), ga, d, de, e),
                s.mul(a, al, b, be, s.mul(c, ga, d, de, e)),
            ),
            AxiomWitness::Distributivity {
                position,
                x,
                y,
                rest,
                params: [al, be],
            } => {
                let place = |v: Elem| {
                    let mut args = [0; 3];
                    let mut k = 0;
                    for (i, slot) in args.iter_mut().enumerate() {
                        if i == position {
                            *slot = v;
                        } else {
                            *slot = rest[k];
                            k += 1;
                        }
                    }
                    s.mul(args[0], al, args[1], be, args[2])
                };
                (place(s.add(x, y)), s.add(place(x), place(y)))
            }
            AxiomWitness::AbsorbingZero {
                args: [a, b, c],
                params: [al, be],
            } => (s.mul(a, al, b, be, c), 0),
            AxiomWitness::Commutativity {
                law,
                args: [a, b, c],
                params: [al, be],
            } => {
                let lhs = s.mul(a, al, b, be, c);
                let rhs = match law {
                    CommutativityLaw::SwapFirstTwo => s.mul(b, be, a, al, c),
                    CommutativityLaw::SwapOuter => s.mul(c, al, b, be, a),
                };
                (lhs, rhs)
            }
        }
    }

    pub fn describe(&self, s: &GammaStructure) -> String {
        let (l, r) = self.sides(s);
        let what = match *self {
            AxiomWitness::AdditiveIdentity { a } => format!("0 + {a} or {a} + 0"),
            AxiomWitness::AdditiveCommutativity { a, b } => format!("{a}+{b} vs {b}+{a}"),
            AxiomWitness::AdditiveAssociativity { a, b, c } => format!("({a}+{b})+{c} vs {a}+({b}+{c})"),
            AxiomWitness::TernaryAssociativity {
                elems: [a, b, c, d, e],
                params: [al, be, ga, de],
            } => format!("({a}_{al} {b}_{be} {c})_{ga} {d}_{de} {e} vs {a}_{al} {b}_{be} ({c}_{ga} {d}_{de} {e})"),
            AxiomWitness::Distributivity {
                position,
                x,
                y,
                rest,
                params,
            } => format!(
                "additivity in argument {} with {x}+{y}, others {:?}, params {:?}",
                position + 1,
                rest,
                params
            ),
            AxiomWitness::AbsorbingZero {
                args: [a, b, c],
                params: [al, be],
            } => format!("{a}_{al} {b}_{be} {c}"),
            AxiomWitness::Commutativity {
                law,
                args: [a, b, c],
                params: [al, be],
            } => match law {
                CommutativityLaw::SwapFirstTwo => format!("{a}_{al} {b}_{be} {c} vs {b}_{be} {a}_{al} {c}"),
                CommutativityLaw::SwapOuter => format!("{a}_{al} {b}_{be} {c} vs {c}_{al} {b}_{be} {a}"),
            },
        };
        format!("{what}: {l} != {r}")
    }
}

/// Outcome of one axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "witness", rename_all = "snake_case")]
pub enum AxiomVerdict {
    Pass,
    Fail(AxiomWitness),
}

impl AxiomVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, AxiomVerdict::Pass)
    }

    pub fn witness(&self) -> Option<&AxiomWitness> {
        match self {
            AxiomVerdict::Pass => None,
            AxiomVerdict::Fail(w) => Some(w),
        }
    }

    fn from_first(w: Option<AxiomWitness>) -> Self {
        w.map_or(AxiomVerdict::Pass, AxiomVerdict::Fail)
    }
}

/// Per-axiom verdicts: T1 (commutative additive monoid with identity 0),
/// T2 (ternary associativity), T3 (additivity in each argument), T4
/// (absorbing zero) and the commutativity law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub additive_monoid: AxiomVerdict,
    pub associativity: AxiomVerdict,
    pub distributivity: AxiomVerdict,
    pub absorbing_zero: AxiomVerdict,
    pub commutativity: AxiomVerdict,
    pub require_commutative: bool,
}

impl AxiomReport {
    /// All required axioms hold. Commutativity counts only when requested.
    pub fn passes(&self) -> bool {
        self.additive_monoid.is_pass()
            && self.associativity.is_pass()
            && self.distributivity.is_pass()
            && self.absorbing_zero.is_pass()
            && (!self.require_commutative || self.commutativity.is_pass())
    }

    pub fn verdicts(&self) -> [(&'static str, &AxiomVerdict); 5] {
        [
            ("T1", &self.additive_monoid),
            ("T2", &self.associativity),
            ("T3", &self.distributivity),
            ("T4", &self.absorbing_zero),
            ("commutativity", &self.commutativity),
        ]
    }

    pub fn failures(&self) -> impl Iterator<Item = (&'static str, &AxiomWitness)> {
        self.verdicts()
            .into_iter()
            .filter_map(|(name, v)| v.witness().map(|w| (name, w)))
    }

    pub fn summary(&self) -> String {
        let failed: Vec<String> = self
            .failures()
            .map(|(name, w)| format!("{name} {w:?}"))
            .collect();
        if failed.is_empty() {
            "all pass".to_string()
        } else {
            failed.join("; ")
        }
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, v) in self.verdicts() {
            match v {
                AxiomVerdict::Pass => writeln!(f, "{name:<14} pass")?,
                AxiomVerdict::Fail(w) => writeln!(f, "{name:<14} FAIL {w:?}")?,
            }
        }
        Ok(())
    }
}

/// Checks T1–T4 and the commutativity law exhaustively.
pub fn verify_axioms(s: &GammaStructure, require_commutative: bool) -> AxiomReport {
    AxiomReport {
        additive_monoid: AxiomVerdict::from_first(check_additive_monoid(s)),
        associativity: AxiomVerdict::from_first(check_associativity(s)),
        distributivity: AxiomVerdict::from_first(check_distributivity(s)),
        absorbing_zero: AxiomVerdict::from_first(check_absorbing_zero(s)),
        commutativity: AxiomVerdict::from_first(check_commutativity(s)),
        require_commutative,
    }
}

pub(crate) fn check_additive_monoid(s: &GammaStructure) -> Option<AxiomWitness> {
    let n = s.order();
    if let Some(a) = (0..n).find(|&a| s.add(0, a) != a || s.add(a, 0) != a) {
        return Some(AxiomWitness::AdditiveIdentity { a });
    }
    for a in 0..n {
        for b in 0..n {
            if s.add(a, b) != s.add(b, a) {
                return Some(AxiomWitness::AdditiveCommutativity { a, b });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if s.add(s.add(a, b), c) != s.add(a, s.add(b, c)) {
                    return Some(AxiomWitness::AdditiveAssociativity { a, b, c });
                }
            }
        }
    }
    None
}

pub(crate) fn check_associativity(s: &GammaStructure) -> Option<AxiomWitness> {
    let n = s.order();
    let m = s.gamma();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    for e in 0..n {
                        for al in 0..m {
                            for be in 0..m {
                                let abc = s.mul(a, al, b, be, c);
                                for ga in 0..m {
                                    for de in 0..m {
                                        let l = s.mul(abc, ga, d, de, e);
                                        let r = s.mul(a, al, b, be, s.mul(c, ga, d, de, e));
                                        if l != r {
                                            return Some(AxiomWitness::TernaryAssociativity {
                                                elems: [a, b, c, d, e],
                                                params: [al, be, ga, de],
                                            });
                                        }
                                    }
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

pub(crate) fn check_distributivity(s: &GammaStructure) -> Option<AxiomWitness> {
    let n = s.order();
    let m = s.gamma();
    for position in 0..3 {
        for x in 0..n {
            for y in 0..n {
                let xy = s.add(x, y);
                for u in 0..n {
                    for v in 0..n {
                        for al in 0..m {
                            for be in 0..m {
                                let at = |w: Elem| match position {
                                    0 => s.mul(w, al, u, be, v),
                                    1 => s.mul(u, al, w, be, v),
                                    _ => s.mul(u, al, v, be, w),
                                };
                                if at(xy) != s.add(at(x), at(y)) {
                                    return Some(AxiomWitness::Distributivity {
                                        position,
                                        x,
                                        y,
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

pub(crate) fn check_absorbing_zero(s: &GammaStructure) -> Option<AxiomWitness> {
    let n = s.order();
    let m = s.gamma();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a != 0 && b != 0 && c != 0 {
                    continue;
                }
                for al in 0..m {
                    for be in 0..m {
                        if s.mul(a, al, b, be, c) != 0 {
                            return Some(AxiomWitness::AbsorbingZero {
                                args: [a, b, c],
                                params: [al, be],
                            });
                        }
                    }
                }
            }
        }
    }
    None
}

pub(crate) fn check_commutativity(s: &GammaStructure) -> Option<AxiomWitness> {
    let n = s.order();
    let m = s.gamma();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for al in 0..m {
                    for be in 0..m {
                        let v = s.mul(a, al, b, be, c);
                        let law = if v != s.mul(b, be, a, al, c) {
                            Some(CommutativityLaw::SwapFirstTwo)
                        } else if v != s.mul(c, al, b, be, a) {
                            Some(CommutativityLaw::SwapOuter)
                        } else {
                            None
                        };
                        if let Some(law) = law {
                            return Some(AxiomWitness::Commutativity {
                                law,
                                args: [a, b, c],
                                params: [al, be],
                            });
                        }
                    }
                }
            }
        }
    }
    None
}
