use std::collections::HashSet;

use super::{Facet, PureComplex, VertexId};
use crate::caps::caps;
use crate::error::{Error, Result};

impl PureComplex {
    /// Flagness: every clique of the 1-skeleton is a face.
    pub fn is_flag(&self) -> Result<bool> {
        Ok(self.flag_violation()?.is_none())
    }

    /// A clique of the 1-skeleton that is not a face, if any.
    ///
    /// Cliques are grown one vertex at a time from faces only, so the first
    /// non-face found is a minimal non-face of size at least three. Any clique
    /// with more than `d` vertices is a non-face.
    pub fn flag_violation(&self) -> Result<Option<Facet>> {
        let used = self.used_vertices();
        Error::check_cap("vertices", used.len(), caps().flag_vertices)?;
        let graph = self.vertex_graph();
        let faces: HashSet<Facet> = self.faces().into_iter().collect();

        fn grow(
            clique: &mut Vec<VertexId>,
            candidates: &[VertexId],
            graph: &super::Graph,
            faces: &HashSet<Facet>,
            d: usize,
        ) -> Option<Facet> {
            for (i, &v) in candidates.iter().enumerate() {
                clique.push(v);
                let face = Facet::from_distinct(clique.iter().copied());
                if clique.len() > d || !faces.contains(&face) {
                    return Some(face);
                }
                let next: Vec<VertexId> =
                    candidates[i + 1..].iter().copied().filter(|&w| graph.has_edge(v, w)).collect();
                if let Some(bad) = grow(clique, &next, graph, faces, d) {
                    return Some(bad);
                }
                clique.pop();
            }
            None
        }

        Ok(grow(&mut Vec::new(), &used, &graph, &faces, self.d))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{barycentric_subdivision, complete_complex};

    #[test]
    fn flag_examples() {
        // The hollow triangle: {0,1,2} is a clique but not a face.
        let hollow = complete_complex(3, 2);
        assert_eq!(hollow.flag_violation().unwrap(), Some(Facet::new(vec![0, 1, 2]).unwrap()));
        let single = PureComplex::from_lists(4, 3, vec![vec![0, 1, 3]]).unwrap();
        assert!(single.is_flag().unwrap());
        // Boundary of a tetrahedron is not flag; its subdivision is.
        assert!(!complete_complex(4, 3).is_flag().unwrap());
        for d in 2..=4 {
            assert!(barycentric_subdivision(&complete_complex(d + 1, d)).complex.is_flag().unwrap());
        }
        // A 4-cycle is flag, a 3-cycle is not.
        let square = PureComplex::from_lists(4, 2, vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]]).unwrap();
        assert!(square.is_flag().unwrap());
    }
}
