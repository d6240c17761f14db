//! The finite presentation of a ternary Γ-semiring: an addition table plus
//! one ternary table per ordered parameter pair.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Deserialize;

use crate::axioms::{verify_axioms, AxiomReport};
use crate::error::{Error, Result};
use crate::set::MAX_SET_ORDER;

/// Element index. Index 0 is always the additive identity.
pub type Elem = usize;
/// Parameter index into Γ.
pub type Param = usize;

/// A finite ternary Γ-semiring given by its operation tables.
///
/// The only invariants enforced by [`GammaStructure::new`] are shape and
/// range: every entry is a valid element index. Whether the tables satisfy
/// the axioms is the business of [`verify_axioms`]; use
/// [`GammaStructure::validated`] to get a structure that is known to pass.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaStructure {
    order: usize,
    gamma: usize,
    names: Vec<String>,
    addition: Vec<u8>,
    ternary: Vec<u8>,
}

impl GammaStructure {
    /// Builds a structure from nested tables; `ternary[α·m + β][a][b][c]`
    /// holds `a_α b_β c`.
    pub fn new(
        names: Vec<String>,
        addition: Vec<Vec<Elem>>,
        ternary: Vec<Vec<Vec<Vec<Elem>>>>,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::input("a structure needs at least one element"));
        }
        if n > MAX_SET_ORDER || n > u8::MAX as usize {
            return Err(Error::input(format!("order {n} is larger than supported ({MAX_SET_ORDER})")));
        }
        let pairs = ternary.len();
        let m = (pairs as f64).sqrt().round() as usize;
        if m == 0 || m * m != pairs {
            return Err(Error::input(format!(
                "expected m*m ternary tables for some m >= 1, got {pairs}"
            )));
        }
        if addition.len() != n || addition.iter().any(|row| row.len() != n) {
            return Err(Error::input(format!("addition table must be {n}x{n}")));
        }
        let mut add = Vec::with_capacity(n * n);
        for (a, row) in addition.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::input(format!("addition[{a}][{b}] = {v} is out of range")));
                }
                add.push(v as u8);
            }
        }
        let mut tern = Vec::with_capacity(pairs * n * n * n);
        for (p, table) in ternary.iter().enumerate() {
            let (alpha, beta) = (p / m, p % m);
            if table.len() != n
                || table
                    .iter()
                    .any(|plane| plane.len() != n || plane.iter().any(|row| row.len() != n))
            {
                return Err(Error::input(format!("ternary table ({alpha},{beta}) must be {n}x{n}x{n}")));
            }
            for (a, plane) in table.iter().enumerate() {
                for (b, row) in plane.iter().enumerate() {
                    for (c, &v) in row.iter().enumerate() {
                        if v >= n {
                            return Err(Error::input(format!(
                                "ternary ({alpha},{beta})[{a}][{b}][{c}] = {v} is out of range"
                            )));
                        }
                        tern.push(v as u8);
                    }
                }
            }
        }
        Ok(GammaStructure {
            order: n,
            gamma: m,
            names,
            addition: add,
            ternary: tern,
        })
    }

    /// Like [`GammaStructure::new`], but also requires every axiom to pass.
    pub fn validated(
        names: Vec<String>,
        addition: Vec<Vec<Elem>>,
        ternary: Vec<Vec<Vec<Vec<Elem>>>>,
        require_commutative: bool,
    ) -> Result<Self> {
        let s = Self::new(names, addition, ternary)?;
        let report = verify_axioms(&s, require_commutative);
        if !report.passes() {
            return Err(Error::input(format!("axioms fail: {}", report.summary())));
        }
        Ok(s)
    }

    /// Builds a structure from closures; handy for fixtures such as
    /// `a·b·c mod n`.
    pub fn from_fns(
        order: usize,
        gamma: usize,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Param, Elem, Param, Elem) -> Elem,
    ) -> Result<Self> {
        let names = (0..order).map(|i| i.to_string()).collect();
        let addition = (0..order)
            .map(|a| (0..order).map(|b| add(a, b)).collect())
            .collect();
        let ternary = (0..gamma * gamma)
            .map(|p| {
                let (al, be) = (p / gamma, p % gamma);
                (0..order)
                    .map(|a| {
                        (0..order)
                            .map(|b| (0..order).map(|c| mul(a, al, b, be, c)).collect())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::new(names, addition, ternary)
    }

    /// Internal constructor from flat tables that are already known to be in range.
    pub(crate) fn from_raw(order: usize, gamma: usize, addition: Vec<u8>, ternary: Vec<u8>) -> Self {
        debug_assert_eq!(addition.len(), order * order);
        debug_assert_eq!(ternary.len(), gamma * gamma * order * order * order);
        GammaStructure {
            order,
            gamma,
            names: (0..order).map(|i| i.to_string()).collect(),
            addition,
            ternary,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order {
            return Err(Error::input(format!(
                "expected {} names, got {}",
                self.order,
                names.len()
            )));
        }
        self.names = names;
        Ok(self)
    }

    pub(crate) fn addition_raw(&self) -> &[u8] {
        &self.addition
    }

    pub(crate) fn ternary_raw(&self) -> &[u8] {
        &self.ternary
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.addition[a * self.order + b] as Elem
    }

    /// Unchecked `a_α b_β c`.
    #[inline]
    pub fn mul(&self, a: Elem, alpha: Param, b: Elem, beta: Param, c: Elem) -> Elem {
        let n = self.order;
        self.ternary[(((alpha * self.gamma + beta) * n + a) * n + b) * n + c] as Elem
    }

    /// Checked `a_α b_β c`: a pure table lookup.
    pub fn ternary_product(&self, a: Elem, alpha: Param, b: Elem, beta: Param, c: Elem) -> Result<Elem> {
        for (what, x) in [("a", a), ("b", b), ("c", c)] {
            if x >= self.order {
                return Err(Error::input(format!("element {what}={x} out of range 0..{}", self.order)));
            }
        }
        for (what, p) in [("alpha", alpha), ("beta", beta)] {
            if p >= self.gamma {
                return Err(Error::input(format!("parameter {what}={p} out of range 0..{}", self.gamma)));
            }
        }
        Ok(self.mul(a, alpha, b, beta, c))
    }

    /// Every element has an additive inverse.
    pub fn is_additive_group(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).any(|b| self.add(a, b) == 0))
    }

    /// Relabels elements by `perm` (old index -> new index). `perm[0]` must be 0.
    pub fn apply_permutation(&self, perm: &[Elem]) -> Result<Self> {
        check_zero_fixing_permutation(perm, self.order)?;
        let mut out = self.permuted_unchecked(perm);
        let mut names = vec![String::new(); self.order];
        for (old, &new) in perm.iter().enumerate() {
            names[new] = self.names[old].clone();
        }
        out.names = names;
        Ok(out)
    }

    pub(crate) fn permuted_unchecked(&self, perm: &[Elem]) -> Self {
        let n = self.order;
        let mut add = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                add[perm[a] * n + perm[b]] = perm[self.add(a, b)] as u8;
            }
        }
        let mut tern = vec![0u8; self.ternary.len()];
        let m = self.gamma;
        for p in 0..m * m {
            let base = p * n * n * n;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let v = self.ternary[base + (a * n + b) * n + c] as usize;
                        tern[base + (perm[a] * n + perm[b]) * n + perm[c]] = perm[v] as u8;
                    }
                }
            }
        }
        GammaStructure {
            order: n,
            gamma: m,
            names: (0..n).map(|i| i.to_string()).collect(),
            addition: add,
            ternary: tern,
        }
    }

    /// Relabels the parameter set by `perm` (old -> new).
    pub(crate) fn gamma_permuted_unchecked(&self, perm: &[Param]) -> Self {
        let n3 = self.order * self.order * self.order;
        let m = self.gamma;
        let mut tern = vec![0u8; self.ternary.len()];
        for al in 0..m {
            for be in 0..m {
                let src = (al * m + be) * n3;
                let dst = (perm[al] * m + perm[be]) * n3;
                tern[dst..dst + n3].copy_from_slice(&self.ternary[src..src + n3]);
            }
        }
        GammaStructure {
            ternary: tern,
            ..self.clone()
        }
    }

    /// Nested addition table, as stored in structure files.
    pub fn addition_table(&self) -> Vec<Vec<Elem>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.add(a, b)).collect())
            .collect()
    }

    pub fn ternary_table(&self, alpha: Param, beta: Param) -> Vec<Vec<Vec<Elem>>> {
        let n = self.order;
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| (0..n).map(|c| self.mul(a, alpha, b, beta, c)).collect())
                    .collect()
            })
            .collect()
    }

    /// Parses the JSON structure format.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: StructureFile = serde_json::from_str(text)?;
        file.into_structure()
    }

    pub fn read_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    /// Serializes to the canonical JSON layout: one table row per line.
    /// `from_json(s.to_json())` reproduces `s`, and re-serializing a
    /// canonically formatted file yields identical bytes.
    pub fn to_json(&self) -> String {
        let n = self.order;
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"order\": {},", n);
        let _ = writeln!(out, "  \"gamma\": {},", self.gamma);
        let names: Vec<String> = self
            .names
            .iter()
            .map(|s| serde_json::to_string(s).expect("string serialization"))
            .collect();
        let _ = writeln!(out, "  \"names\": [{}],", names.join(", "));
        out.push_str("  \"addition\": [\n");
        for a in 0..n {
            let row: Vec<String> = (0..n).map(|b| self.add(a, b).to_string()).collect();
            let sep = if a + 1 < n { "," } else { "" };
            let _ = writeln!(out, "    [{}]{}", row.join(", "), sep);
        }
        out.push_str("  ],\n");
        out.push_str("  \"ternary\": {\n");
        let m = self.gamma;
        for p in 0..m * m {
            let (al, be) = (p / m, p % m);
            let _ = writeln!(out, "    \"{al},{be}\": [");
            for a in 0..n {
                let plane: Vec<String> = (0..n)
                    .map(|b| {
                        let row: Vec<String> =
                            (0..n).map(|c| self.mul(a, al, b, be, c).to_string()).collect();
                        format!("[{}]", row.join(", "))
                    })
                    .collect();
                let sep = if a + 1 < n { "," } else { "" };
                let _ = writeln!(out, "      [{}]{}", plane.join(", "), sep);
            }
            let sep = if p + 1 < m * m { "," } else { "" };
            let _ = writeln!(out, "    ]{sep}");
        }
        out.push_str("  }\n");
        out.push_str("}\n");
        out
    }

    pub fn write_file(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    /// Full axiom check; shorthand for [`verify_axioms`].
    pub fn verify(&self, require_commutative: bool) -> AxiomReport {
        verify_axioms(self, require_commutative)
    }

    /// Element label for display.
    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }
}

pub(crate) fn check_zero_fixing_permutation(perm: &[Elem], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::input(format!(
            "permutation has length {}, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &x in perm {
        if x >= n || std::mem::replace(&mut seen[x], true) {
            return Err(Error::input("not a permutation"));
        }
    }
    if perm[0] != 0 {
        return Err(Error::input("permutation must fix the zero element (index 0)"));
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StructureFile {
    order: usize,
    gamma: usize,
    #[serde(default)]
    names: Option<Vec<String>>,
    addition: Vec<Vec<Elem>>,
    ternary: BTreeMap<String, Vec<Vec<Vec<Elem>>>>,
}

impl StructureFile {
    fn into_structure(self) -> Result<GammaStructure> {
        let n = self.order;
        let m = self.gamma;
        if m == 0 {
            return Err(Error::input("gamma must be at least 1"));
        }
        let names = self
            .names
            .unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if names.len() != n {
            return Err(Error::input(format!(
                "\"names\" has {} entries, \"order\" says {n}",
                names.len()
            )));
        }
        let mut tables: Vec<Option<Vec<Vec<Vec<Elem>>>>> = vec![None; m * m];
        for (key, table) in self.ternary {
            let (al, be) = parse_pair_key(&key, m)?;
            tables[al * m + be] = Some(table);
        }
        let mut ternary = Vec::with_capacity(m * m);
        for (p, t) in tables.into_iter().enumerate() {
            match t {
                Some(t) => ternary.push(t),
                None => {
                    return Err(Error::input(format!(
                        "missing ternary table \"{},{}\"",
                        p / m,
                        p % m
                    )))
                }
            }
        }
        GammaStructure::new(names, self.addition, ternary)
    }
}

/// Parses a `"α,β"` table key.
pub(crate) fn parse_pair_key(key: &str, m: usize) -> Result<(Param, Param)> {
    let parsed = key.split_once(',').and_then(|(a, b)| {
        Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?))
    });
    match parsed {
        Some((a, b)) if a < m && b < m => Ok((a, b)),
        _ => Err(Error::input(format!(
            "bad ternary table key {key:?}; expected \"alpha,beta\" with both below {m}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn product_lookup() {
        let m3 = fixtures::m3();
        assert_eq!(m3.ternary_product(2, 0, 2, 0, 2).unwrap(), 2);
        let b2 = fixtures::b2();
        assert_eq!(b2.ternary_product(1, 0, 1, 0, 1).unwrap(), 1);
    }

    #[test]
    fn product_rejects_out_of_range() {
        let m3 = fixtures::m3();
        assert!(matches!(m3.ternary_product(3, 0, 0, 0, 0), Err(Error::Input(_))));
        assert!(matches!(m3.ternary_product(0, 1, 0, 0, 0), Err(Error::Input(_))));
    }

    #[test]
    fn zero_absorbs_in_valid_structures() {
        for s in [fixtures::b2(), fixtures::m3(), fixtures::m4(), fixtures::m6()] {
            assert!(s.verify(true).passes());
            let n = s.order();
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(s.mul(0, 0, b, 0, c), 0);
                    assert_eq!(s.mul(b, 0, 0, 0, c), 0);
                    assert_eq!(s.mul(b, 0, c, 0, 0), 0);
                }
            }
        }
    }

    #[test]
    fn identity_permutation_is_noop() {
        let m6 = fixtures::m6();
        let id: Vec<usize> = (0..6).collect();
        assert_eq!(m6.apply_permutation(&id).unwrap(), m6);
    }

    #[test]
    fn swapped_m3_still_valid() {
        let m3 = fixtures::m3();
        let swapped = m3.apply_permutation(&[0, 2, 1]).unwrap();
        assert!(swapped.verify(true).passes());
        // old 1*1*1 = 1, and old 1 is new 2
        assert_eq!(swapped.mul(2, 0, 2, 0, 2), 2);
        assert_eq!(swapped.mul(1, 0, 1, 0, 1), 1);
        // old 2*2*1 = 1 -> new 1*1*2 = 2
        assert_eq!(swapped.mul(1, 0, 1, 0, 2), 2);
    }

    #[test]
    fn permutation_validation() {
        let b2 = fixtures::b2();
        assert!(b2.apply_permutation(&[0, 1]).is_ok());
        assert!(matches!(b2.apply_permutation(&[1, 0]), Err(Error::Input(_))));
        assert!(matches!(b2.apply_permutation(&[0, 0]), Err(Error::Input(_))));
        assert!(matches!(b2.apply_permutation(&[0]), Err(Error::Input(_))));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for s in [fixtures::b2(), fixtures::m4(), fixtures::sum_mod(3)] {
            let text = s.to_json();
            let back = GammaStructure::from_json(&text).unwrap();
            assert_eq!(back, s);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn json_errors_carry_position() {
        let err = GammaStructure::from_json("{\n  \"order\": 2,\n  oops\n}").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn json_rejects_missing_table() {
        let text = r#"{"order": 1, "gamma": 2, "addition": [[0]], "ternary": {"0,0": [[[0]]]}}"#;
        assert!(matches!(GammaStructure::from_json(text), Err(Error::Input(_))));
    }

    #[test]
    fn json_with_two_parameters() {
        let s = GammaStructure::from_fns(2, 2, |a, b| a | b, |a, al, b, be, c| {
            if al == 0 && be == 0 { a & b & c } else { 0 }
        })
        .unwrap();
        let back = GammaStructure::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.mul(1, 0, 1, 0, 1), 1);
        assert_eq!(back.mul(1, 1, 1, 0, 1), 0);
    }

    #[test]
    fn additive_group_flag() {
        assert!(fixtures::m4().is_additive_group());
        assert!(!fixtures::b2().is_additive_group());
    }
}
