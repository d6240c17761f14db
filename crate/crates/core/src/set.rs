use std::fmt;

use serde::{Serialize, Serializer};

/// A subset of the carrier, stored as a bitmask over element indices.
///
/// Ordering is by cardinality first and then by raw mask, which is the order
/// ideals are listed in everywhere in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u32);

/// Largest carrier a bitmask can describe.
pub const MAX_SET_ORDER: usize = 32;

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_mask(mask: u32) -> Self {
        ElementSet(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    /// The whole carrier of an `order`-element structure.
    pub fn full(order: usize) -> Self {
        if order >= 32 {
            ElementSet(u32::MAX)
        } else {
            ElementSet((1u32 << order) - 1)
        }
    }

    pub fn singleton(x: usize) -> Self {
        ElementSet(1 << x)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        elems
            .into_iter()
            .fold(ElementSet::EMPTY, |s, x| s.with(x))
    }

    #[inline]
    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    #[inline]
    pub fn with(self, x: usize) -> Self {
        ElementSet(self.0 | 1 << x)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    /// Elements in increasing index order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(x)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::from_elements(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_is_ascending() {
        let s = ElementSet::from_elements([4, 0, 2]);
        assert_eq!(s.to_vec(), vec![0, 2, 4]);
        assert_eq!(s.to_string(), "{0,2,4}");
    }

    #[test]
    fn ordering_by_size_then_mask() {
        let mut v = [
            ElementSet::from_elements([0, 1, 2]),
            ElementSet::from_elements([0, 3]),
            ElementSet::from_elements([0]),
            ElementSet::from_elements([0, 2]),
        ];
        v.sort();
        let shown: Vec<String> = v.iter().map(|s| s.to_string()).collect();
        assert_eq!(shown, ["{0}", "{0,2}", "{0,3}", "{0,1,2}"]);
    }
}
