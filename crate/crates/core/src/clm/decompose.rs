//! The two splittings behind the Kalai–Kleitman and Barnette–Larman bounds.

use serde::{Deserialize, Serialize};

use super::Layered;
use crate::complex::Face;

/// Prefix, middle and suffix layer counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KkSplit {
    /// Leading layers using at most `⌊(n−1)/2⌋` elements, as many as possible.
    pub prefix: usize,
    pub middle: usize,
    /// Trailing layers (among the rest) using at most `⌈(n−1)/2⌉` elements.
    pub suffix: usize,
    pub prefix_elements: usize,
    pub suffix_elements: usize,
    /// An element used in every middle layer (least such), if the middle is nonempty.
    pub witness: Option<usize>,
}

fn union_size(supports: &[Vec<usize>]) -> usize {
    let mut all: Vec<usize> = supports.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

/// Splits the layers as in the proof of the recursion
/// `H(n,d) ≤ H(⌊(n−1)/2⌋,d) + H(⌈(n−1)/2⌉,d) + H(n,d−1) + 2`; `n` is the ground set size.
pub fn kk_split<F: Face>(m: &Layered<F>) -> KkSplit {
    let n = m.base().n();
    let supports = m.layer_supports();
    let total = supports.len();
    let (lo, hi) = ((n.saturating_sub(1)) / 2, n.saturating_sub(1).div_ceil(2));
    let prefix = (0..=total).rev().find(|&i| union_size(&supports[..i]) <= lo).unwrap_or(0);
    let rest = &supports[prefix..];
    let suffix = (0..=rest.len()).rev().find(|&j| union_size(&rest[rest.len() - j..]) <= hi).unwrap_or(0);
    let middle_layers = &rest[..rest.len() - suffix];
    let witness = if middle_layers.is_empty() {
        None
    } else {
        middle_layers[0].iter().copied().find(|e| middle_layers.iter().all(|l| l.contains(e)))
    };
    KkSplit {
        prefix,
        middle: middle_layers.len(),
        suffix,
        prefix_elements: union_size(&supports[..prefix]),
        suffix_elements: union_size(&rest[rest.len() - suffix..]),
        witness,
    }
}

/// A run of consecutive layers sharing an element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlPiece {
    /// First and last layer, counted from 0.
    pub first: usize,
    pub last: usize,
    /// Elements used in the piece.
    pub elements: usize,
    /// Least element used in both the first and last layer of the piece.
    pub witness: usize,
}

impl BlPiece {
    pub fn length(&self) -> usize {
        self.last - self.first
    }
}

/// Greedy decomposition: each piece runs from its first layer to the last
/// layer sharing an element with it.
pub fn bl_decompose<F: Face>(m: &Layered<F>) -> Vec<BlPiece> {
    let supports = m.layer_supports();
    let mut pieces = Vec::new();
    let mut first = 0;
    while first < supports.len() {
        let last =
            (first..supports.len()).rev().find(|&l| supports[l].iter().any(|e| supports[first].contains(e))).unwrap();
        let witness = supports[first].iter().copied().find(|e| supports[last].contains(e)).unwrap();
        pieces.push(BlPiece { first, last, elements: union_size(&supports[first..=last]), witness });
        first = last + 1;
    }
    pieces
}

/// The sub-c.l.m. formed by the layers of a piece.
pub fn bl_piece<F: Face>(m: &Layered<F>, piece: &BlPiece) -> Layered<F> {
    let layers = m.layers()[piece.first..=piece.last].to_vec();
    Layered::from_layers(m.base().n(), m.base().d(), layers).expect("layers of a valid family")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clm::{complete_clm, injective_clm, known_hclm};

    #[test]
    fn kk_on_extremal_examples() {
        for n in 2..=5 {
            for d in 1..=4 {
                for m in [complete_clm(n, d).unwrap(), injective_clm(n, d).unwrap()] {
                    let s = kk_split(&m);
                    assert_eq!(s.prefix + s.middle + s.suffix, m.length() + 1);
                    assert!(s.prefix_elements <= (n - 1) / 2);
                    assert!(s.suffix_elements <= (n - 1).div_ceil(2));
                    if s.middle > 0 {
                        let w = s.witness.expect("middle witness");
                        let sup = m.layer_supports();
                        assert!(sup[s.prefix..s.prefix + s.middle].iter().all(|l| l.contains(&w)));
                    }
                    if let Some(h) = known_hclm(n / 2, d) {
                        assert!(s.prefix <= h + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn bl_on_extremal_examples() {
        for n in 1..=5 {
            for d in 1..=4 {
                let m = complete_clm(n, d).unwrap();
                let pieces = bl_decompose(&m);
                let total: usize = pieces.iter().map(BlPiece::length).sum::<usize>() + pieces.len() - 1;
                assert_eq!(total, m.length());
                assert!(pieces.iter().map(|p| p.elements).sum::<usize>() < 2 * n);
                for p in &pieces {
                    let sub = bl_piece(&m, p);
                    assert!(sub.validate());
                    assert!(sub.layer_supports().iter().all(|l| l.contains(&p.witness)));
                }
            }
        }
        let single = complete_clm(1, 3).unwrap();
        assert_eq!(bl_decompose(&single).len(), 1);
    }
}
