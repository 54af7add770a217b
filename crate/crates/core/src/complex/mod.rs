//! Pure simplicial complexes and multicomplexes, stored by their facets.
//!
//! A complex is determined by its list of facets, so lower faces are never
//! stored; they are derived on demand. The ground set `[n]` may contain
//! vertices that no facet uses.

mod canonical;
mod face;
mod graph;
mod io;
mod predicates;

use std::collections::{BTreeSet, HashMap};

pub use canonical::CanonicalForm;
pub use face::{Face, Facet, Multiset, VertexId};
pub use graph::Graph;
pub use io::{ComplexJson, MulticomplexJson, SCHEMA_VERSION};

use crate::error::{Error, Result};

/// A pure family of faces of common cardinality `d` on the ground set `[n]`.
///
/// Facets are kept sorted and duplicate free; node `i` of the dual graph is
/// `facets()[i]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pure<F: Face> {
    n: usize,
    d: usize,
    facets: Vec<F>,
}

/// A pure `(d-1)`-dimensional simplicial complex.
pub type PureComplex = Pure<Facet>;
/// A pure multicomplex of rank `d`.
pub type PureMulticomplex = Pure<Multiset>;

impl<F: Face> std::fmt::Debug for Pure<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Pure(n={}, d={}, {:?})", self.n, self.d, self.facets)
    }
}

impl<F: Face> Pure<F> {
    /// Validates and normalizes a facet list. Facets are sorted; a facet of
    /// the wrong cardinality, outside `[n]`, or listed twice is an error.
    pub fn new(n: usize, d: usize, mut facets: Vec<F>) -> Result<Self> {
        for f in &facets {
            if f.cardinality() != d {
                return Err(Error::invalid(format!("facet {f:?} has cardinality {} != {d}", f.cardinality())));
            }
            if !f.fits_universe(n) {
                return Err(Error::invalid(format!("facet {f:?} is not a subset of [0,{n})")));
            }
        }
        facets.sort();
        if let Some(w) = facets.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::invalid(format!("duplicate facet {:?}", w[0])));
        }
        Ok(Pure { n, d, facets })
    }

    /// Like [`Pure::new`] but silently merges duplicates. For internal
    /// constructions whose output is valid by construction.
    pub(crate) fn from_facets_dedup(n: usize, d: usize, mut facets: Vec<F>) -> Self {
        facets.sort();
        facets.dedup();
        debug_assert!(facets.iter().all(|f| f.cardinality() == d && f.fits_universe(n)));
        Pure { n, d, facets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Facet cardinality (rank).
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn facets(&self) -> &[F] {
        &self.facets
    }

    pub fn len(&self) -> usize {
        self.facets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn facet_index(&self, facet: &F) -> Option<usize> {
        self.facets.binary_search(facet).ok()
    }

    /// Whether `face` is contained in some facet.
    pub fn is_face(&self, face: &F) -> bool {
        self.facets.iter().any(|f| face.is_subface_of(f))
    }

    /// Distinct elements used by some facet, increasing.
    pub fn used_vertices(&self) -> Vec<VertexId> {
        let set: BTreeSet<VertexId> = self.facets.iter().flat_map(|f| f.support()).collect();
        set.into_iter().collect()
    }

    /// `lk(S) = { X∖S : S ⊆ X ∈ C }`, of rank `d − |S|` on the same ground set.
    pub fn link(&self, face: &F) -> Result<Self> {
        let facets: Vec<F> = self.facets.iter().filter(|f| face.is_subface_of(f)).map(|f| f.minus(face)).collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(format!("{face:?}")));
        }
        Ok(Pure::from_facets_dedup(self.n, self.d - face.cardinality(), facets))
    }

    /// The facets containing `face`.
    pub fn star(&self, face: &F) -> Result<Self> {
        let facets: Vec<F> = self.facets.iter().filter(|f| face.is_subface_of(f)).cloned().collect();
        if facets.is_empty() {
            return Err(Error::NotAFace(format!("{face:?}")));
        }
        Ok(Pure { n: self.n, d: self.d, facets })
    }

    /// The sub-complex spanned by a subset of the facets.
    pub fn subcomplex(&self, facets: impl IntoIterator<Item = F>) -> Self {
        Pure::from_facets_dedup(self.n, self.d, facets.into_iter().collect())
    }

    /// Dual (adjacency) graph: facets sharing a ridge are adjacent.
    pub fn dual_graph(&self) -> Graph {
        let mut by_ridge: HashMap<F, Vec<usize>> = HashMap::new();
        for (i, f) in self.facets.iter().enumerate() {
            for r in f.ridges() {
                by_ridge.entry(r).or_default().push(i);
            }
        }
        let mut edges = Vec::new();
        for members in by_ridge.values() {
            for (a, &i) in members.iter().enumerate() {
                for &j in &members[a + 1..] {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(self.facets.len(), edges)
    }

    /// Connected dual graph. A single facet is strongly connected; the empty complex is not.
    pub fn is_strongly_connected(&self) -> bool {
        self.dual_graph().is_connected()
    }

    /// Every face (every subface of a facet), including the empty face.
    pub fn faces(&self) -> BTreeSet<F> {
        self.facets.iter().flat_map(|f| f.subfaces()).collect()
    }

    /// Number of distinct faces with `k + 1` elements.
    pub fn f_count(&self, k: usize) -> usize {
        let mut set = BTreeSet::new();
        for f in &self.facets {
            for s in f.subfaces() {
                if s.cardinality() == k + 1 {
                    set.insert(s);
                }
            }
        }
        set.len()
    }

    /// Normality: the complex and the link of every nonempty face are strongly connected.
    pub fn is_normal(&self) -> bool {
        self.normality_violation().is_none()
    }

    /// The first face (in face order) whose link is not strongly connected.
    /// The empty face stands for the complex itself.
    pub fn normality_violation(&self) -> Option<F> {
        let empty = self.facets.first()?.empty_like();
        if !self.is_strongly_connected() {
            return Some(empty);
        }
        self.faces()
            .into_iter()
            .filter(|s| s.cardinality() > 0 && s.cardinality() + 1 < self.d)
            .find(|s| !self.link(s).map(|l| l.is_strongly_connected()).unwrap_or(false))
    }

    /// Every ridge lies in at most two facets.
    pub fn is_pseudomanifold(&self) -> bool {
        let mut count: HashMap<F, usize> = HashMap::new();
        for f in &self.facets {
            for r in f.ridges() {
                *count.entry(r).or_default() += 1;
            }
        }
        count.values().all(|&c| c <= 2)
    }

    /// The dual graph is a simple path (one facet counts).
    pub fn is_corridor(&self) -> bool {
        self.dual_graph().is_path()
    }

    /// Facets in dual-path order if the complex is a corridor.
    pub fn corridor_order(&self) -> Option<Vec<F>> {
        let order = self.dual_graph().path_order()?;
        Some(order.into_iter().map(|i| self.facets[i].clone()).collect())
    }
}

impl PureComplex {
    /// Builds a complex from raw vertex lists.
    pub fn from_lists(n: usize, d: usize, lists: Vec<Vec<VertexId>>) -> Result<Self> {
        let facets = lists.into_iter().map(Facet::new).collect::<Result<Vec<_>>>()?;
        Pure::new(n, d, facets)
    }

    /// The 1-skeleton on `[n]`: an edge for every pair of vertices sharing a facet.
    pub fn vertex_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for f in &self.facets {
            let v = f.vertices();
            for (i, &a) in v.iter().enumerate() {
                for &b in &v[i + 1..] {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_edges(self.n, edges)
    }

    /// Minimum 1-skeleton distance between a vertex of `s` and a vertex of `t`;
    /// `None` when no such pair is connected (in particular when either set is empty).
    pub fn vertex_distance(&self, s: &[VertexId], t: &[VertexId]) -> Option<usize> {
        vertex_distance_in(&self.vertex_graph(), s, t)
    }

    /// Join with a complex on a disjoint copy of its ground set: the labels
    /// of `other` are shifted by `self.n()`.
    pub fn join(&self, other: &PureComplex) -> PureComplex {
        let mut facets = Vec::with_capacity(self.len() * other.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.plus(&b.shifted(self.n)));
            }
        }
        Pure::from_facets_dedup(self.n + other.n, self.d + other.d, facets)
    }

    /// Maximal faces of the face deletion `C∖S`: the inclusion-maximal faces
    /// of `C` that do not contain `S`. Cardinalities may be mixed.
    pub fn deletion_maximal_faces(&self, s: &Facet) -> Vec<Facet> {
        let (removed, kept): (Vec<&Facet>, Vec<&Facet>) = self.facets.iter().partition(|f| s.is_subface_of(f));
        let mut out: BTreeSet<Facet> = kept.iter().map(|&f| f.clone()).collect();
        for x in removed {
            for &v in s.vertices() {
                let ridge = x.without(v);
                if !kept.iter().any(|k| ridge.is_subface_of(k)) {
                    out.insert(ridge);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Whether `C∖S` is pure of full dimension: some facet survives and every
    /// maximal face is a facet.
    pub fn is_deletion_pure(&self, s: &Facet) -> bool {
        let max = self.deletion_maximal_faces(s);
        !max.is_empty() && max.iter().all(|f| f.len() == self.d)
    }

    /// The deletion as a pure complex, or `None` if it is not pure of full dimension.
    pub fn deletion(&self, s: &Facet) -> Option<PureComplex> {
        if !self.is_deletion_pure(s) {
            return None;
        }
        Some(Pure {
            n: self.n,
            d: self.d,
            facets: self.facets.iter().filter(|f| !s.is_subface_of(f)).cloned().collect(),
        })
    }

    /// Applies a permutation of `[n]` to the vertex labels.
    pub fn relabel(&self, map: &[VertexId]) -> PureComplex {
        Pure::from_facets_dedup(self.n, self.d, self.facets.iter().map(|f| f.relabel(map)).collect())
    }
}

/// Multi-source BFS distance between two vertex sets in a graph.
pub(crate) fn vertex_distance_in(graph: &Graph, s: &[VertexId], t: &[VertexId]) -> Option<usize> {
    if s.is_empty() || t.is_empty() {
        return None;
    }
    let dist = graph.distances_from(s);
    t.iter().filter_map(|&v| dist.get(v).copied().flatten()).min()
}

impl PureMulticomplex {
    /// Builds a multicomplex from exponent rows of length `n`.
    pub fn from_exponent_rows(n: usize, d: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        Pure::new(n, d, rows.into_iter().map(Multiset::new).collect())
    }

    /// All multisets of degree `d` over `[n]`, in increasing order.
    pub fn complete(n: usize, d: usize) -> Self {
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Multiset>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(Multiset::new(cur.clone()));
                return;
            }
            for e in 0..=left {
                cur[i] = e;
                rec(i + 1, left - e, cur, out);
            }
        }
        if n > 0 {
            rec(0, d as u32, &mut cur, &mut out);
        } else if d == 0 {
            out.push(Multiset::zero(0));
        }
        Pure::from_facets_dedup(n, d, out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{barycentric_subdivision, complete_complex, nabla};

    fn f(v: &[usize]) -> Facet {
        Facet::new(v.to_vec()).unwrap()
    }

    fn boundary_triangle() -> PureComplex {
        PureComplex::from_lists(3, 2, vec![vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(PureComplex::from_lists(3, 2, vec![vec![0, 1], vec![1, 0]]).is_err());
        assert!(PureComplex::from_lists(3, 2, vec![vec![0, 3]]).is_err());
        assert!(PureComplex::from_lists(3, 2, vec![vec![0, 1, 2]]).is_err());
        let c = PureComplex::from_lists(4, 2, vec![vec![2, 3], vec![1, 0]]).unwrap();
        assert_eq!(c.facets(), &[f(&[0, 1]), f(&[2, 3])]);
    }

    #[test]
    fn link_and_star_examples() {
        let c = complete_complex(3, 2);
        let lk = c.link(&f(&[0])).unwrap();
        assert_eq!(lk.facets(), &[f(&[1]), f(&[2])]);
        assert_eq!((lk.n(), lk.d()), (3, 1));
        assert_eq!(c.link(&Facet::empty()).unwrap(), c);
        assert_eq!(c.star(&Facet::empty()).unwrap(), c);
        assert_eq!(c.star(&f(&[0])).unwrap().facets(), &[f(&[0, 1]), f(&[0, 2])]);
        assert!(matches!(c.link(&f(&[0, 1, 2])), Err(Error::NotAFace(_))));
        let two = PureComplex::from_lists(4, 2, vec![vec![0, 1]]).unwrap();
        assert!(two.star(&f(&[3])).is_err());
    }

    #[test]
    fn link_of_nabla_vertex_has_twelve_facets() {
        let nb = nabla(2, 2).unwrap();
        for v in 0..nb.n() {
            let lk = nb.link(&f(&[v])).unwrap();
            assert_eq!(lk.len(), 12);
            assert_eq!(lk.d(), 3);
        }
    }

    #[test]
    fn deletion_examples() {
        let c = boundary_triangle();
        // Not a face: nothing removed.
        let c4 = PureComplex::from_lists(4, 2, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(c4.deletion_maximal_faces(&f(&[0, 2])), c4.facets().to_vec());
        assert!(c4.is_deletion_pure(&f(&[0, 2])));
        assert_eq!(c.deletion_maximal_faces(&f(&[0])), vec![f(&[1, 2])]);
        assert!(c.is_deletion_pure(&f(&[0])));
        // Deleting +1 and then +2 from ∇(2,2) leaves an uncovered ridge
        // (+1 ↦ 0, +2 ↦ 2 in the ∇ encoding).
        let nb = nabla(2, 2).unwrap();
        let first = nb.deletion(&f(&[0])).expect("deleting one vertex of ∇(2,2) is pure");
        let max = first.deletion_maximal_faces(&f(&[2]));
        assert!(max.iter().any(|m| m.len() == 3));
        assert!(!first.is_deletion_pure(&f(&[2])));
    }

    #[test]
    fn dual_graph_examples() {
        let k3 = complete_complex(3, 2).dual_graph();
        assert_eq!((k3.node_count(), k3.edge_count()), (3, 3));
        // A graph's dual graph is its line graph: the path 0-1-2-3 has line graph P3.
        let p = PureComplex::from_lists(4, 2, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let g = p.dual_graph();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        // A star K_{1,3} has line graph K3.
        let star = PureComplex::from_lists(4, 2, vec![vec![0, 1], vec![0, 2], vec![0, 3]]).unwrap();
        assert_eq!(star.dual_graph().edge_count(), 3);
    }

    #[test]
    fn johnson_degree() {
        for n in 2..=7 {
            for d in 1..n {
                let g = complete_complex(n, d).dual_graph();
                assert!((0..g.node_count()).all(|v| g.degree(v) == d * (n - d)), "J({n},{d})");
            }
        }
    }

    #[test]
    fn strong_connectivity() {
        assert!(complete_complex(5, 3).is_strongly_connected());
        let two = PureComplex::from_lists(4, 2, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!two.is_strongly_connected());
        let empty = PureComplex::from_lists(4, 2, vec![]).unwrap();
        assert!(!empty.is_strongly_connected());
        assert!(nabla(2, 2).unwrap().is_strongly_connected());
    }

    #[test]
    fn normality() {
        for d in 2..=5 {
            assert!(complete_complex(d + 1, d).is_normal());
        }
        let bowtie = PureComplex::from_lists(5, 3, vec![vec![0, 1, 2], vec![0, 3, 4]]).unwrap();
        assert!(!bowtie.is_normal());
        let glued =
            PureComplex::from_lists(5, 3, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 3, 4], vec![0, 2, 4]]).unwrap();
        assert!(glued.is_normal());
        let with_pinch = PureComplex::from_lists(6, 3, vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 4, 5]]).unwrap();
        assert_eq!(with_pinch.normality_violation(), Some(Facet::empty()));
        assert!(barycentric_subdivision(&complete_complex(4, 3)).complex.is_normal());
    }

    #[test]
    fn pseudomanifold_and_corridor() {
        assert!(!complete_complex(4, 2).is_pseudomanifold());
        let single = PureComplex::from_lists(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert!(single.is_pseudomanifold());
        assert!(single.is_corridor());
        let p = PureComplex::from_lists(4, 2, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        assert!(p.is_corridor());
        assert_eq!(p.corridor_order().unwrap().first(), Some(&f(&[0, 1])));
        assert!(!boundary_triangle().is_corridor());
    }

    #[test]
    fn vertex_distance_examples() {
        let p = PureComplex::from_lists(5, 2, (0..4).map(|i| vec![i, i + 1]).collect()).unwrap();
        assert_eq!(p.vertex_distance(&[0], &[4]), Some(4));
        assert_eq!(p.vertex_distance(&[0, 2], &[2, 4]), Some(0));
        assert_eq!(p.vertex_distance(&[], &[1]), None);
        let two = PureComplex::from_lists(4, 2, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(two.vertex_distance(&[0], &[3]), None);
    }

    #[test]
    fn f_counts() {
        let c = complete_complex(6, 3);
        assert_eq!(c.f_count(0), 6);
        assert_eq!(c.f_count(2), c.len());
        assert_eq!(complete_complex(4, 3).f_count(1), 6);
    }

    #[test]
    fn join_counts() {
        let a = complete_complex(3, 2);
        let b = complete_complex(4, 1);
        let j = a.join(&b);
        assert_eq!((j.n(), j.d(), j.len()), (7, 3, 12));
    }

    #[test]
    fn complete_multicomplex() {
        let m = PureMulticomplex::complete(3, 2);
        assert_eq!(m.len(), 6);
        assert!(m.is_normal());
        assert_eq!(PureMulticomplex::complete(4, 3).len(), 20);
    }
}
