//! Canonical vertex relabeling by individualization and refinement.
//!
//! Colors are refined on the vertex–facet incidence structure using only
//! label-invariant data (sorted signatures, ranked), so the ordered partition
//! at every node of the search tree is equivariant. At each leaf the partition
//! is discrete and defines a labeling; the canonical form is the
//! lexicographically least relabeled facet list over all leaves.

use serde::{Deserialize, Serialize};

use super::{Facet, PureComplex, VertexId};
use crate::caps::caps;
use crate::error::{Error, Result};

/// A canonical representative and the relabeling that produces it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub complex: PureComplex,
    /// `relabeling[old] = new`.
    pub relabeling: Vec<VertexId>,
}

struct Search<'a> {
    facets: &'a [Vec<usize>],
    incident: Vec<Vec<usize>>,
    best: Option<(Vec<Vec<usize>>, Vec<usize>)>,
    leaves: usize,
    leaf_cap: usize,
}

impl Search<'_> {
    /// Refines `colors` (values `0..k`, dense) to the coarsest equitable refinement.
    fn refine(&self, colors: &mut Vec<usize>) {
        let mut classes = count_classes(colors);
        loop {
            let facet_sig: Vec<Vec<usize>> = self
                .facets
                .iter()
                .map(|f| {
                    let mut s: Vec<usize> = f.iter().map(|&v| colors[v]).collect();
                    s.sort_unstable();
                    s
                })
                .collect();
            let vertex_sig: Vec<(usize, Vec<&Vec<usize>>)> = (0..colors.len())
                .map(|v| {
                    let mut s: Vec<&Vec<usize>> = self.incident[v].iter().map(|&f| &facet_sig[f]).collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let mut order: Vec<usize> = (0..colors.len()).collect();
            order.sort_by(|&a, &b| vertex_sig[a].cmp(&vertex_sig[b]));
            let mut next = vec![0; colors.len()];
            let mut rank = 0;
            for (i, &v) in order.iter().enumerate() {
                if i > 0 && vertex_sig[order[i - 1]] != vertex_sig[v] {
                    rank += 1;
                }
                next[v] = rank;
            }
            *colors = next;
            let now = rank + 1;
            if now == classes {
                return;
            }
            classes = now;
        }
    }

    fn explore(&mut self, mut colors: Vec<usize>) -> Result<()> {
        self.refine(&mut colors);
        let k = colors.len();
        let mut sizes = vec![0usize; k];
        for &c in &colors {
            sizes[c] += 1;
        }
        let Some(target) = (0..k).find(|&c| sizes[c] > 1) else {
            self.leaves += 1;
            if self.leaves > self.leaf_cap {
                return Err(Error::SizeLimit { what: "canonical-form leaves", value: self.leaves, cap: self.leaf_cap });
            }
            let mut cert: Vec<Vec<usize>> = self
                .facets
                .iter()
                .map(|f| {
                    let mut g: Vec<usize> = f.iter().map(|&v| colors[v]).collect();
                    g.sort_unstable();
                    g
                })
                .collect();
            cert.sort_unstable();
            if self.best.as_ref().is_none_or(|(b, _)| cert < *b) {
                self.best = Some((cert, colors));
            }
            return Ok(());
        };
        let members: Vec<usize> = (0..k).filter(|&v| colors[v] == target).collect();
        for v in members {
            // Individualize v: it precedes the rest of its cell.
            let mut split: Vec<usize> =
                colors.iter().enumerate().map(|(u, &c)| 2 * c + usize::from(c == target && u != v)).collect();
            compress(&mut split);
            self.explore(split)?;
        }
        Ok(())
    }
}

fn count_classes(colors: &[usize]) -> usize {
    let mut seen: Vec<usize> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn compress(colors: &mut [usize]) {
    let mut values: Vec<usize> = colors.to_vec();
    values.sort_unstable();
    values.dedup();
    for c in colors.iter_mut() {
        *c = values.binary_search(c).unwrap();
    }
}

impl PureComplex {
    /// Deterministic canonical relabeling: two complexes are isomorphic iff
    /// their canonical complexes are equal. Used vertices receive labels
    /// `0..m`; unused vertices follow in increasing original order.
    pub fn canonical_form(&self) -> Result<CanonicalForm> {
        let used = self.used_vertices();
        Error::check_cap("vertices", used.len(), caps().canonical_vertices)?;
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in used.iter().enumerate() {
            local[v] = i;
        }
        let facets: Vec<Vec<usize>> =
            self.facets().iter().map(|f| f.vertices().iter().map(|&v| local[v]).collect()).collect();
        let mut incident = vec![Vec::new(); used.len()];
        for (i, f) in facets.iter().enumerate() {
            for &v in f {
                incident[v].push(i);
            }
        }
        let mut search = Search { facets: &facets, incident, best: None, leaves: 0, leaf_cap: caps().canonical_leaves };
        if !used.is_empty() {
            search.explore(vec![0; used.len()])?;
        }
        let labels = search.best.map(|(_, l)| l).unwrap_or_default();
        let mut relabeling = vec![usize::MAX; self.n()];
        for (i, &v) in used.iter().enumerate() {
            relabeling[v] = labels[i];
        }
        for (next, slot) in (used.len()..).zip(relabeling.iter_mut().filter(|s| **s == usize::MAX)) {
            *slot = next;
        }
        Ok(CanonicalForm { complex: self.relabel(&relabeling), relabeling })
    }

    /// The canonical facet list alone, as a memoization key.
    pub fn canonical_key(&self) -> Result<Vec<Facet>> {
        Ok(self.canonical_form()?.complex.facets().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_complex, nabla};
    use proptest::prelude::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn brute_isomorphic(a: &PureComplex, b: &PureComplex) -> bool {
        a.len() == b.len() && permutations(a.n()).iter().any(|p| a.relabel(p) == *b)
    }

    fn random_complex(n: usize, d: usize, mask: u64) -> PureComplex {
        let all = complete_complex(n, d);
        let facets: Vec<Facet> = all
            .facets()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
            .map(|(_, f)| f.clone())
            .collect();
        PureComplex::new(n, d, facets).unwrap()
    }

    #[test]
    fn complete_complex_is_canonical() {
        for n in 1..=6 {
            for d in 1..=n {
                let c = complete_complex(n, d);
                assert_eq!(c.canonical_form().unwrap().complex, c);
                // Brute force: every permutation gives the same facet list.
                assert!(permutations(n).iter().all(|p| c.relabel(p) == c));
            }
        }
    }

    #[test]
    fn idempotent_on_nabla() {
        let c = nabla(2, 2).unwrap().canonical_form().unwrap().complex;
        assert_eq!(c.canonical_form().unwrap().complex, c);
    }

    #[test]
    fn matches_brute_force_isomorphism() {
        // Exhaustive over small random pairs on 5 vertices.
        let masks: Vec<u64> = (0..40u64).map(|i| i.wrapping_mul(0x9E37_79B9_7F4A_7C15) >> 7).collect();
        for &a in &masks {
            for &b in masks.iter().take(12) {
                let x = random_complex(5, 2, a);
                let y = random_complex(5, 2, b);
                let same = x.canonical_key().unwrap() == y.canonical_key().unwrap();
                assert_eq!(same, brute_isomorphic(&x, &y), "{x:?} vs {y:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn invariant_under_relabeling(mask in any::<u64>(), seed in 0usize..720, d in 1usize..4) {
            let c = random_complex(6, d, mask);
            let perm = &permutations(6)[seed];
            let a = c.canonical_form().unwrap();
            let b = c.relabel(perm).canonical_form().unwrap();
            prop_assert_eq!(&a.complex, &b.complex);
            prop_assert_eq!(c.relabel(&a.relabeling), a.complex.clone());
            prop_assert_eq!(a.complex.canonical_form().unwrap().complex, a.complex);
        }
    }
}
