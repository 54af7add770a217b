use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A vertex (element) of the ground set `[n]`, numbered from zero.
pub type VertexId = usize;

/// Common behaviour of faces of simplicial complexes (sets) and of
/// multicomplexes (multisets). All set operations are meant in the
/// multiset sense for [`Multiset`].
pub trait Face: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync {
    /// Number of elements, counted with multiplicity.
    fn cardinality(&self) -> usize;
    /// `self ⊆ other`.
    fn is_subface_of(&self, other: &Self) -> bool;
    /// `self ∖ other`; `other` must be contained in `self`.
    fn minus(&self, other: &Self) -> Self;
    /// Disjoint union, or multiset sum.
    fn plus(&self, other: &Self) -> Self;
    /// Every face contained in `self`, including the empty face and `self`.
    fn subfaces(&self) -> Vec<Self>;
    /// The distinct faces of cardinality one less.
    fn ridges(&self) -> Vec<Self>;
    /// Distinct elements used, increasing.
    fn support(&self) -> Vec<VertexId>;
    /// The empty face compatible with `self`.
    fn empty_like(&self) -> Self;
    /// Whether every element lies in `[n]` (and, for multisets, the
    /// exponent vector has length `n`).
    fn fits_universe(&self, n: usize) -> bool;

    /// `|X∖Y| = |Y∖X| = 1`: the two faces share a ridge.
    fn differs_by_one(&self, other: &Self) -> bool {
        self.cardinality() == other.cardinality()
            && self.cardinality() > 0
            && self.intersection_size(other) + 1 == self.cardinality()
    }

    /// Cardinality of `self ∩ other`.
    fn intersection_size(&self, other: &Self) -> usize;
}

/// A set of vertices stored as a strictly increasing list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<VertexId>", into = "Vec<VertexId>")]
pub struct Facet(Vec<VertexId>);

impl Facet {
    /// Builds a facet from arbitrary order; repeated vertices are rejected.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("repeated vertex in {vertices:?}")));
        }
        Ok(Facet(vertices))
    }

    /// Builds a facet from an iterator whose items are known to be distinct.
    pub(crate) fn from_distinct(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut v: Vec<_> = vertices.into_iter().collect();
        v.sort_unstable();
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        Facet(v)
    }

    pub fn empty() -> Self {
        Facet(Vec::new())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn meets(&self, vertices: &[VertexId]) -> bool {
        vertices.iter().any(|&v| self.contains(v))
    }

    pub fn with(&self, v: VertexId) -> Self {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        Facet(out)
    }

    pub fn without(&self, v: VertexId) -> Self {
        Facet(self.0.iter().copied().filter(|&u| u != v).collect())
    }

    /// Applies a vertex relabeling.
    pub fn relabel(&self, map: &[VertexId]) -> Self {
        Facet::from_distinct(self.0.iter().map(|&v| map[v]))
    }

    pub fn shifted(&self, offset: usize) -> Self {
        Facet(self.0.iter().map(|&v| v + offset).collect())
    }
}

impl TryFrom<Vec<VertexId>> for Facet {
    type Error = Error;
    fn try_from(v: Vec<VertexId>) -> Result<Self> {
        Facet::new(v)
    }
}

impl From<Facet> for Vec<VertexId> {
    fn from(f: Facet) -> Self {
        f.0
    }
}

impl fmt::Debug for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Facet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Face for Facet {
    fn cardinality(&self) -> usize {
        self.0.len()
    }

    fn is_subface_of(&self, other: &Self) -> bool {
        if self.0.len() > other.0.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    fn minus(&self, other: &Self) -> Self {
        Facet(self.0.iter().copied().filter(|v| !other.contains(*v)).collect())
    }

    fn plus(&self, other: &Self) -> Self {
        Facet::from_distinct(self.0.iter().chain(other.0.iter()).copied())
    }

    fn subfaces(&self) -> Vec<Self> {
        let k = self.0.len();
        (0u64..1 << k).map(|mask| Facet((0..k).filter(|i| mask >> i & 1 == 1).map(|i| self.0[i]).collect())).collect()
    }

    fn ridges(&self) -> Vec<Self> {
        (0..self.0.len())
            .map(|skip| Facet(self.0.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect()))
            .collect()
    }

    fn support(&self) -> Vec<VertexId> {
        self.0.clone()
    }

    fn empty_like(&self) -> Self {
        Facet::empty()
    }

    fn fits_universe(&self, n: usize) -> bool {
        self.0.last().is_none_or(|&v| v < n)
    }

    fn intersection_size(&self, other: &Self) -> usize {
        let (mut i, mut j, mut common) = (0, 0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    common += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        common
    }
}

/// A multiset over `[n]`, stored as its dense exponent vector (the
/// exponents of the corresponding monomial).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Multiset {
    exponents: Vec<u32>,
}

impl Multiset {
    pub fn new(exponents: Vec<u32>) -> Self {
        Multiset { exponents }
    }

    pub fn zero(n: usize) -> Self {
        Multiset { exponents: vec![0; n] }
    }

    /// The multiset with the given elements, repeated as listed.
    pub fn from_elements(n: usize, elements: &[VertexId]) -> Result<Self> {
        let mut exponents = vec![0; n];
        for &e in elements {
            *exponents.get_mut(e).ok_or_else(|| Error::invalid(format!("element {e} outside [0,{n})")))? += 1;
        }
        Ok(Multiset { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn universe(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> usize {
        self.exponents.iter().map(|&e| e as usize).sum()
    }

    pub fn multiplicity(&self, element: VertexId) -> u32 {
        self.exponents.get(element).copied().unwrap_or(0)
    }

    /// Elements listed with repetition, increasing.
    pub fn elements(&self) -> Vec<VertexId> {
        self.exponents.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize)).collect()
    }

    /// Componentwise maximum (the lcm of the monomials).
    pub fn union(&self, other: &Self) -> Self {
        self.zip(other, u32::max)
    }

    /// Componentwise minimum (the gcd of the monomials).
    pub fn intersection(&self, other: &Self) -> Self {
        self.zip(other, u32::min)
    }

    fn zip(&self, other: &Self, f: impl Fn(u32, u32) -> u32) -> Self {
        let n = self.exponents.len().max(other.exponents.len());
        Multiset { exponents: (0..n).map(|i| f(self.multiplicity(i), other.multiplicity(i))).collect() }
    }

    /// Sum of the elements with multiplicity, with elements valued `1..=n`.
    pub fn weight(&self) -> usize {
        self.exponents.iter().enumerate().map(|(i, &e)| (i + 1) * e as usize).sum()
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Elements printed 1-based, as in the usual monomial notation.
        let elems = self.elements();
        if elems.is_empty() {
            return write!(f, "∅");
        }
        if self.exponents.len() <= 9 {
            for e in elems {
                write!(f, "{}", e + 1)?;
            }
            Ok(())
        } else {
            write!(f, "{:?}", elems.iter().map(|e| e + 1).collect::<Vec<_>>())
        }
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Face for Multiset {
    fn cardinality(&self) -> usize {
        self.degree()
    }

    fn is_subface_of(&self, other: &Self) -> bool {
        self.exponents.iter().enumerate().all(|(i, &e)| e <= other.multiplicity(i))
    }

    fn minus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.saturating_sub(b))
    }

    fn plus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    fn subfaces(&self) -> Vec<Self> {
        let mut out = vec![Multiset::zero(self.exponents.len())];
        for (i, &e) in self.exponents.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for base in &out {
                for k in 0..=e {
                    let mut m = base.clone();
                    m.exponents[i] = k;
                    next.push(m);
                }
            }
            out = next;
        }
        out
    }

    fn ridges(&self) -> Vec<Self> {
        self.exponents
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e > 0)
            .map(|(i, _)| {
                let mut m = self.clone();
                m.exponents[i] -= 1;
                m
            })
            .collect()
    }

    fn support(&self) -> Vec<VertexId> {
        self.exponents.iter().enumerate().filter(|&(_, &e)| e > 0).map(|(i, _)| i).collect()
    }

    fn empty_like(&self) -> Self {
        Multiset::zero(self.exponents.len())
    }

    fn fits_universe(&self, n: usize) -> bool {
        self.exponents.len() == n
    }

    fn intersection_size(&self, other: &Self) -> usize {
        self.exponents.iter().enumerate().map(|(i, &e)| e.min(other.multiplicity(i)) as usize).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(n: usize, elems: &[usize]) -> Multiset {
        Multiset::from_elements(n, elems).unwrap()
    }

    #[test]
    fn facet_rejects_repeats_and_sorts() {
        assert_eq!(Facet::new(vec![3, 1, 2]).unwrap().vertices(), &[1, 2, 3]);
        assert!(Facet::new(vec![1, 1]).is_err());
    }

    #[test]
    fn facet_set_operations() {
        let a = Facet::new(vec![0, 1, 2]).unwrap();
        let b = Facet::new(vec![1, 2, 3]).unwrap();
        assert!(a.differs_by_one(&b));
        assert_eq!(a.intersection_size(&b), 2);
        assert!(Facet::new(vec![0, 2]).unwrap().is_subface_of(&a));
        assert!(!Facet::new(vec![0, 3]).unwrap().is_subface_of(&a));
        assert_eq!(a.subfaces().len(), 8);
        assert_eq!(a.ridges().len(), 3);
        assert_eq!(a.minus(&b).vertices(), &[0]);
    }

    #[test]
    fn multiset_union_and_intersection() {
        // 1²2 ∩ 12² = 12, 1²2 ∪ 12² = 1²2².
        let a = ms(2, &[0, 0, 1]);
        let b = ms(2, &[0, 1, 1]);
        assert_eq!(a.intersection(&b), ms(2, &[0, 1]));
        assert_eq!(a.union(&b), ms(2, &[0, 0, 1, 1]));
        assert_eq!(a.union(&a), a);
        assert_eq!(a.intersection(&a), a);
        // Disjoint supports: union adds, intersection is empty.
        let c = ms(4, &[0, 1]);
        let d = ms(4, &[2, 3, 3]);
        assert_eq!(c.union(&d), c.plus(&d));
        assert_eq!(c.intersection(&d), Multiset::zero(4));
    }

    #[test]
    fn multiset_faces_are_divisors() {
        let a = ms(3, &[0, 0, 2]);
        // (2+1)(0+1)(1+1) divisors.
        assert_eq!(a.subfaces().len(), 6);
        assert_eq!(a.ridges(), vec![ms(3, &[0, 2]), ms(3, &[0, 0])]);
        assert!(a.differs_by_one(&ms(3, &[0, 1, 2])));
        assert!(!a.differs_by_one(&ms(3, &[1, 1, 2])));
        assert_eq!(a.weight(), 1 + 1 + 3);
        assert_eq!(format!("{a:?}"), "113");
    }
}
