//! Exhaustive search for the longest c.l.m. of given rank and ground set.
//!
//! Layers are chosen one at a time among the unused facets of the complete
//! multicomplex. A face is *closed* once its star has been met and then
//! missed by a layer; a new layer may not contain a facet with a closed face.
//! The closed faces are exactly the faces of used facets that are not faces
//! of the last layer, so a state is the pair (used facets, last layer).

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{complete_facet_count, LayeredMulticomplex};
use crate::caps::caps;
use crate::complex::{Face, Multiset, PureMulticomplex};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClmSearchResult {
    pub n: usize,
    pub d: usize,
    pub length: usize,
    pub witness: Vec<Vec<Multiset>>,
    /// Distinct states expanded.
    pub states: u64,
}

struct Search {
    /// Faces (nonempty, as bits) of each facet.
    faces_of: Vec<u128>,
    memo: HashMap<(u32, u32), (usize, u32)>,
    full: u32,
    budget: Option<u64>,
}

impl Search {
    fn face_union(&self, mut set: u32) -> u128 {
        let mut out = 0;
        while set != 0 {
            out |= self.faces_of[set.trailing_zeros() as usize];
            set &= set - 1;
        }
        out
    }

    /// Most layers that can still follow; also the first best next layer.
    fn best(&mut self, used: u32, last: u32) -> Result<(usize, u32)> {
        if let Some(&hit) = self.memo.get(&(used, last)) {
            return Ok(hit);
        }
        if let Some(b) = self.budget {
            if self.memo.len() as u64 >= b {
                return Err(Error::Budget { budget: b });
            }
        }
        let closed = self.face_union(used) & !self.face_union(last);
        let mut allowed = 0u32;
        for x in 0..self.faces_of.len() {
            if (self.full & !used) >> x & 1 == 1 && self.faces_of[x] & closed == 0 {
                allowed |= 1 << x;
            }
        }
        let mut best = (0, 0);
        // Every nonempty subset of the allowed facets.
        let mut layer = allowed;
        while layer != 0 {
            let (more, _) = self.best(used | layer, layer)?;
            if more + 1 > best.0 || (more + 1 == best.0 && layer < best.1) {
                best = (more + 1, layer);
            }
            layer = (layer - 1) & allowed;
        }
        self.memo.insert((used, last), best);
        Ok(best)
    }
}

/// The maximum length over all c.l.m.s of rank `d` on `n` elements, with a
/// witness. `budget` bounds the number of distinct states.
pub fn max_clm_search(n: usize, d: usize, budget: Option<u64>) -> Result<ClmSearchResult> {
    if n == 0 || d == 0 {
        return Err(Error::invalid("c.l.m. search needs n, d >= 1"));
    }
    let count = complete_facet_count(n, d) as usize;
    Error::check_cap("complete multicomplex facets", count, caps().clm_facets.min(31))?;
    let complete = PureMulticomplex::complete(n, d);
    let mut faces: Vec<Multiset> = complete.faces().into_iter().filter(|f| f.cardinality() > 0).collect();
    faces.sort();
    Error::check_cap("complete multicomplex faces", faces.len(), 128)?;
    let faces_of = complete
        .facets()
        .iter()
        .map(|x| {
            x.subfaces()
                .iter()
                .filter(|s| s.cardinality() > 0)
                .fold(0u128, |m, s| m | 1 << faces.binary_search(s).unwrap())
        })
        .collect();
    let mut search = Search { faces_of, memo: HashMap::new(), full: (1u32 << count) - 1, budget };
    let (layers, _) = search.best(0, 0)?;
    let mut witness = Vec::new();
    let (mut used, mut last) = (0u32, 0u32);
    while let Some(&(_, next)) = search.memo.get(&(used, last)) {
        if next == 0 {
            break;
        }
        witness.push((0..count).filter(|&x| next >> x & 1 == 1).map(|x| complete.facets()[x].clone()).collect());
        used |= next;
        last = next;
    }
    debug_assert_eq!(witness.len(), layers);
    Ok(ClmSearchResult { n, d, length: layers - 1, witness, states: search.memo.len() as u64 })
}

impl ClmSearchResult {
    pub fn witness_clm(&self) -> Result<LayeredMulticomplex> {
        LayeredMulticomplex::from_layers(self.n, self.d, self.witness.clone())
    }
}
