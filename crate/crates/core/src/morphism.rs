//! Homomorphisms between structures, preimages of ideals, images.

use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate::Caps;
use crate::error::{Error, Result};
use crate::ideals::ideal_violation;
use crate::quotient::Partition;
use crate::set::ElementSet;
use crate::structure::{Elem, GammaStructure, Param};

/// An element map with a parameter map. Only built through validation,
/// so holding one means it respects 0, addition and the product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Homomorphism {
    map: Vec<Elem>,
    params: Vec<Param>,
}

impl Homomorphism {
    pub fn new(src: &GammaStructure, tgt: &GammaStructure, map: Vec<Elem>, params: Vec<Param>) -> Result<Self> {
        if map.len() != src.order() || params.len() != src.gamma() {
            return Err(Error::input("map does not match the source shape"));
        }
        if map.iter().any(|&x| x >= tgt.order()) || params.iter().any(|&p| p >= tgt.gamma()) {
            return Err(Error::input("map leaves the target"));
        }
        if let Some(why) = violation(src, tgt, &map, &params) {
            return Err(Error::input(format!("not a homomorphism: {why}")));
        }
        Ok(Homomorphism { map, params })
    }

    pub fn identity(s: &GammaStructure) -> Self {
        Homomorphism {
            map: (0..s.order()).collect(),
            params: (0..s.gamma()).collect(),
        }
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn params(&self) -> &[Param] {
        &self.params
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn image(&self) -> ElementSet {
        self.map.iter().copied().collect()
    }

    pub fn is_surjective(&self, tgt: &GammaStructure) -> bool {
        self.image() == ElementSet::full(tgt.order())
    }

    /// `a ~ b` iff `f(a) = f(b)`.
    pub fn kernel_congruence(&self) -> Partition {
        Partition::from_labels(&self.map)
    }
}

fn violation(src: &GammaStructure, tgt: &GammaStructure, f: &[Elem], g: &[Param]) -> Option<String> {
    let n = src.order();
    let m = src.gamma();
    if f[0] != 0 {
        return Some(format!("0 maps to {}", f[0]));
    }
    for a in 0..n {
        for b in 0..n {
            if f[src.add(a, b)] != tgt.add(f[a], f[b]) {
                return Some(format!("sum {a}+{b}"));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for al in 0..m {
                    for be in 0..m {
                        if f[src.mul(a, al, b, be, c)] != tgt.mul(f[a], g[al], f[b], g[be], f[c]) {
                            return Some(format!("product ({a},{al},{b},{be},{c})"));
                        }
                    }
                }
            }
        }
    }
    None
}

/// `f⁻¹(ideal)`. The target set must be an ideal of `tgt`.
pub fn pullback_ideal(f: &Homomorphism, tgt: &GammaStructure, ideal: ElementSet) -> Result<ElementSet> {
    if ideal.mask() & !ElementSet::full(tgt.order()).mask() != 0 || ideal_violation(tgt, ideal).is_some() {
        return Err(Error::input(format!("{ideal} is not an ideal of the target")));
    }
    Ok((0..f.map.len()).filter(|&a| ideal.contains(f.apply(a))).collect())
}

/// Every homomorphism `src → tgt` with the identity parameter map, in
/// lexicographic order of the element map.
pub fn find_homomorphisms(src: &GammaStructure, tgt: &GammaStructure, caps: &Caps) -> Result<Vec<Homomorphism>> {
    if src.gamma() != tgt.gamma() {
        return Err(Error::input("identity parameter map needs equal Γ sizes"));
    }
    let n = src.order();
    let k = tgt.order();
    caps.check_scan(n.max(k), "map search")?;
    let params: Vec<Param> = (0..src.gamma()).collect();
    let total = k.pow(n.saturating_sub(1) as u32);
    let found: Vec<Homomorphism> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut map = vec![0; n];
            let mut c = code;
            for slot in map.iter_mut().skip(1).rev() {
                *slot = c % k;
                c /= k;
            }
            violation(src, tgt, &map, &params).is_none().then(|| Homomorphism {
                map,
                params: params.clone(),
            })
        })
        .collect();
    Ok(found)
}

/// The image as a structure of its own, elements in ascending target order.
pub fn image_structure(f: &Homomorphism, tgt: &GammaStructure) -> Result<GammaStructure> {
    substructure(tgt, f.image())
}

/// Restriction to a subset closed under both operations and containing 0.
pub fn substructure(s: &GammaStructure, set: ElementSet) -> Result<GammaStructure> {
    let elems = set.to_vec();
    if elems.first() != Some(&0) {
        return Err(Error::input("a substructure must contain 0"));
    }
    let mut index = vec![usize::MAX; s.order()];
    for (i, &x) in elems.iter().enumerate() {
        index[x] = i;
    }
    let pos = |x: Elem| -> Result<u8> {
        match index[x] {
            usize::MAX => Err(Error::input(format!("{set} is not closed: reaches {x}"))),
            i => Ok(i as u8),
        }
    };
    let k = elems.len();
    let m = s.gamma();
    let mut add = Vec::with_capacity(k * k);
    for &a in &elems {
        for &b in &elems {
            add.push(pos(s.add(a, b))?);
        }
    }
    let mut tern = Vec::with_capacity(m * m * k * k * k);
    for al in 0..m {
        for be in 0..m {
            for &a in &elems {
                for &b in &elems {
                    for &c in &elems {
                        tern.push(pos(s.mul(a, al, b, be, c))?);
                    }
                }
            }
        }
    }
    let names = elems.iter().map(|&x| s.name(x).to_string()).collect();
    GammaStructure::from_raw(k, m, add, tern).with_names(names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::canonical_form;
    use crate::fixtures;
    use crate::quotient::quotient_structure;

    fn set(xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(xs.iter().copied())
    }

    fn caps() -> Caps {
        Caps { max_order: 6, ..Caps::default() }
    }

    #[test]
    fn identity_pullback() {
        let m6 = fixtures::m6();
        let id = Homomorphism::identity(&m6);
        for i in [set(&[0]), set(&[0, 3]), set(&[0, 2, 4])] {
            assert_eq!(pullback_ideal(&id, &m6, i).unwrap(), i);
        }
    }

    #[test]
    fn reduction_mod_three() {
        let (m6, m3) = (fixtures::m6(), fixtures::m3());
        let f = Homomorphism::new(&m6, &m3, (0..6).map(|x| x % 3).collect(), vec![0]).unwrap();
        assert!(f.is_surjective(&m3));
        assert_eq!(pullback_ideal(&f, &m3, set(&[0])).unwrap(), set(&[0, 3]));
        let homs = find_homomorphisms(&m6, &m3, &caps()).unwrap();
        assert!(homs.contains(&f));
    }

    #[test]
    fn collapse_to_trivial() {
        let (m4, t) = (fixtures::m4(), fixtures::trivial());
        let f = Homomorphism::new(&m4, &t, vec![0; 4], vec![0]).unwrap();
        assert_eq!(pullback_ideal(&f, &t, set(&[0])).unwrap(), ElementSet::full(4));
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let (m6, m3) = (fixtures::m6(), fixtures::m3());
        assert!(Homomorphism::new(&m6, &m3, vec![0, 1, 1, 0, 1, 1], vec![0]).is_err());
        assert!(Homomorphism::new(&m6, &m3, vec![1; 6], vec![0]).is_err());
        assert!(Homomorphism::new(&m6, &m3, vec![0; 5], vec![0]).is_err());
        let f = Homomorphism::identity(&m6);
        assert!(pullback_ideal(&f, &m6, set(&[0, 1])).is_err());
    }

    #[test]
    fn first_isomorphism_on_m6() {
        let (m6, m3) = (fixtures::m6(), fixtures::m3());
        for f in find_homomorphisms(&m6, &m3, &caps()).unwrap() {
            let q = quotient_structure(&m6, &f.kernel_congruence()).unwrap();
            let im = image_structure(&f, &m3).unwrap();
            assert_eq!(canonical_form(&q), canonical_form(&im));
        }
    }

    #[test]
    fn substructure_checks_closure() {
        let m6 = fixtures::m6();
        let sub = substructure(&m6, set(&[0, 2, 4])).unwrap();
        assert_eq!(sub.order(), 3);
        assert!(sub.verify(true).passes());
        assert!(substructure(&m6, set(&[0, 1])).is_err());
    }
}
