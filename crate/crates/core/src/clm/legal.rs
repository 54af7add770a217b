//! Legal sequences of subsets, checked straight from the recursive axioms:
//!
//! 0. on 0 elements only `(∅)` is legal;
//! 1. `S_i ∩ S_k ⊆ S_j` for all `i < j < k`;
//! 2. every proper subsequence is legal;
//! 3. an unused element may be dropped from the ground set;
//! 4. for an element in every set, some `S_i' ⊆ S_i ∖ {a}` is legal on the rest.
//!
//! Proper subsequences are taken arbitrary (not only contiguous) and nonempty.
//! Checking the subsequences with one set removed covers all of them.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::caps::caps;
use crate::error::{Error, Result};

/// Sets as bitmasks over a ground set of `n` elements (bit `i` is element `i+1`).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LegalSequence {
    pub n: usize,
    pub sets: Vec<u32>,
}

impl fmt::Debug for LegalSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<String> = self
            .sets
            .iter()
            .map(|&s| {
                let e: Vec<String> = (0..self.n).filter(|i| s >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", e.join(","))
            })
            .collect();
        write!(f, "({}) on {}", sets.join(" "), self.n)
    }
}

impl LegalSequence {
    pub fn new(n: usize, sets: Vec<u32>) -> Result<Self> {
        if n > 32 {
            return Err(Error::invalid("ground set larger than 32"));
        }
        if sets.is_empty() {
            return Err(Error::invalid("a sequence needs at least one set"));
        }
        let universe = universe(n);
        if let Some(s) = sets.iter().find(|&&s| s & !universe != 0) {
            return Err(Error::invalid(format!("set {s:#b} is not a subset of [{n}]")));
        }
        Ok(LegalSequence { n, sets })
    }

    /// Sets given as lists of 1-based elements.
    pub fn from_lists(n: usize, sets: &[&[usize]]) -> Result<Self> {
        let masks = sets
            .iter()
            .map(|s| {
                s.iter().try_fold(0u32, |m, &e| {
                    if e == 0 || e > n {
                        Err(Error::invalid(format!("element {e} outside 1..={n}")))
                    } else {
                        Ok(m | 1 << (e - 1))
                    }
                })
            })
            .collect::<Result<_>>()?;
        LegalSequence::new(n, masks)
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// The first `(i, j, k)` with `S_i ∩ S_k ⊄ S_j`.
    pub fn convexity_violation(&self) -> Option<(usize, usize, usize)> {
        convexity_violation(&self.sets)
    }
}

fn universe(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn convexity_violation(sets: &[u32]) -> Option<(usize, usize, usize)> {
    let n = sets.len();
    for i in 0..n {
        for k in i + 2..n {
            let both = sets[i] & sets[k];
            if both == 0 {
                continue;
            }
            if let Some(j) = (i + 1..k).find(|&j| both & !sets[j] != 0) {
                return Some((i, j, k));
            }
        }
    }
    None
}

/// Drops element `a` (0-based) from every set, shifting the higher bits down.
fn remove_element(s: u32, a: usize) -> u32 {
    let low = s & ((1u32 << a) - 1);
    let high = (s >> (a + 1)) << a;
    low | high
}

fn permute(s: u32, perm: &[usize]) -> u32 {
    perm.iter().enumerate().filter(|&(i, _)| s >> i & 1 == 1).fold(0, |m, (_, &p)| m | 1 << p)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for k in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=k).map(move |pos| {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    q
                })
            })
            .collect();
    }
    out
}

/// Memoized checker; reuse it across calls to share work.
#[derive(Debug, Default)]
pub struct LegalChecker {
    memo: HashMap<(usize, Vec<u32>), bool>,
    perms: HashMap<usize, Vec<Vec<usize>>>,
}

impl LegalChecker {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of memoized sequences.
    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn check(&mut self, seq: &LegalSequence) -> Result<bool> {
        let c = caps();
        Error::check_cap("legal-sequence ground set", seq.n, c.legal_elements)?;
        Error::check_cap("legal-sequence length", seq.len(), c.legal_len)?;
        if seq.is_empty() {
            return Err(Error::invalid("a sequence needs at least one set"));
        }
        Ok(self.legal(seq.n, &seq.sets))
    }

    fn canonical(&mut self, n: usize, sets: &[u32]) -> Vec<u32> {
        let perms = self.perms.entry(n).or_insert_with(|| permutations(n));
        perms.iter().map(|p| sets.iter().map(|&s| permute(s, p)).collect::<Vec<u32>>()).min().unwrap()
    }

    fn legal(&mut self, n: usize, sets: &[u32]) -> bool {
        let key = (n, self.canonical(n, sets));
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = self.legal_uncached(n, sets);
        self.memo.insert(key, v);
        v
    }

    fn legal_uncached(&mut self, n: usize, sets: &[u32]) -> bool {
        if n == 0 {
            return sets.len() == 1;
        }
        if convexity_violation(sets).is_some() {
            return false;
        }
        if sets.len() > 1 {
            for skip in 0..sets.len() {
                let sub: Vec<u32> = sets.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &s)| s).collect();
                if !self.legal(n, &sub) {
                    return false;
                }
            }
        }
        let used = sets.iter().fold(0, |m, &s| m | s);
        let common = sets.iter().fold(universe(n), |m, &s| m & s);
        for a in 0..n {
            if used >> a & 1 == 0 {
                let reduced: Vec<u32> = sets.iter().map(|&s| remove_element(s, a)).collect();
                if !self.legal(n - 1, &reduced) {
                    return false;
                }
            }
        }
        for a in 0..n {
            if common >> a & 1 == 1 {
                let reduced: Vec<u32> = sets.iter().map(|&s| remove_element(s, a)).collect();
                let mut chosen = Vec::with_capacity(sets.len());
                if !self.shrink(n - 1, &reduced, &mut chosen) {
                    return false;
                }
            }
        }
        true
    }

    /// Is there a legal `(S_1', …)` with `S_i' ⊆ bound[i]`? Subsets are tried
    /// smallest first; every prefix must be convex and legal.
    fn shrink(&mut self, n: usize, bound: &[u32], chosen: &mut Vec<u32>) -> bool {
        let i = chosen.len();
        if i == bound.len() {
            return self.legal(n, chosen);
        }
        let mut options = Vec::new();
        let mut s = bound[i];
        loop {
            options.push(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & bound[i];
        }
        options.sort_by_key(|s| (s.count_ones(), *s));
        for s in options {
            chosen.push(s);
            let ok = (0..i).all(|p| {
                let both = chosen[p] & s;
                (p + 1..i).all(|q| both & !chosen[q] == 0)
            }) && (i + 1 == bound.len() || self.legal(n, chosen))
                && self.shrink(n, bound, chosen);
            chosen.pop();
            if ok {
                return true;
            }
        }
        false
    }
}

/// One-shot check with a fresh memo.
pub fn legal_check(seq: &LegalSequence) -> Result<bool> {
    LegalChecker::new().check(seq)
}

/// From a legal sequence of length `m` on `n` elements, the sequence
/// `(A×m, (A∪B)×(i−1)m, B×m)` on `2(n+i)` elements, `A` the first `n+i`
/// elements and `B` the rest. Legality of the input is assumed.
pub fn legal_double(seq: &LegalSequence, i: usize) -> Result<LegalSequence> {
    if i == 0 {
        return Err(Error::invalid("doubling needs i >= 1"));
    }
    let half = seq.n + i;
    if 2 * half > 32 {
        return Err(Error::invalid(format!("{} elements do not fit", 2 * half)));
    }
    let m = seq.len();
    let a = universe(half);
    let b = a << half;
    let mut sets = vec![a; m];
    sets.extend(std::iter::repeat_n(a | b, (i - 1) * m));
    sets.extend(std::iter::repeat_n(b, m));
    LegalSequence::new(2 * half, sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legal(n: usize, sets: &[&[usize]]) -> bool {
        legal_check(&LegalSequence::from_lists(n, sets).unwrap()).unwrap()
    }

    #[test]
    fn axiom_zero() {
        assert!(legal(0, &[&[]]));
        assert!(!legal(0, &[&[], &[]]));
        assert!(legal(1, &[&[]]));
        assert!(!legal(1, &[&[], &[]]));
    }

    #[test]
    fn tiny_cases() {
        assert!(legal(1, &[&[1], &[]]));
        assert!(legal(1, &[&[], &[1]]));
        assert!(!legal(1, &[&[1], &[1]]));
        assert!(!legal(1, &[&[1], &[], &[1]]));
        assert!(legal(2, &[&[1, 2], &[1, 2]]));
        assert!(!legal(2, &[&[1], &[2], &[1]]));
    }

    #[test]
    fn full_set_repeated() {
        for n in 2..=4 {
            let all: Vec<usize> = (1..=n).collect();
            assert!(legal(n, &[&all, &all]), "n = {n}");
        }
    }

    #[test]
    fn doubling() {
        let seed = LegalSequence::from_lists(1, &[&[1], &[]]).unwrap();
        assert!(legal_check(&seed).unwrap());
        let d = legal_double(&seed, 1).unwrap();
        assert_eq!(d.n, 4);
        assert_eq!(d.sets, vec![0b0011, 0b0011, 0b1100, 0b1100]);
        assert!(legal_check(&d).unwrap());
        let seed0 = LegalSequence::new(0, vec![0]).unwrap();
        for i in 1..=2 {
            let d = legal_double(&seed0, i).unwrap();
            assert_eq!(d.len(), i + 1);
            assert!(legal_check(&d).unwrap(), "{d:?}");
        }
        assert!(legal_double(&seed, 0).is_err());
    }

    #[test]
    fn caps_apply() {
        let long = LegalSequence::new(2, vec![0; 9]).unwrap();
        assert!(matches!(legal_check(&long), Err(Error::SizeLimit { .. })));
        let wide = LegalSequence::new(5, vec![0]).unwrap();
        assert!(matches!(legal_check(&wide), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn reduction_helpers() {
        assert_eq!(remove_element(0b1011, 1), 0b101);
        assert_eq!(remove_element(0b1011, 0), 0b101);
        assert_eq!(permutations(3).len(), 6);
    }
}
