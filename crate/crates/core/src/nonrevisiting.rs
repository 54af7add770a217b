//! Combinatorial segments and non-revisiting dual paths in normal complexes.
//!
//! Every complex met during the recursion is the link of a face of the input
//! complex, so work is cached per face. Vertex distances inside a link are
//! taken in the link's own 1-skeleton.

use std::collections::HashMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use crate::complex::{Face, Facet, PureComplex, VertexId};
use crate::diameter::{non_revisiting_violation, FacetPath};
use crate::error::{Error, Result};

/// How a segment was assembled at one level of the recursion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentTrace {
    /// The start facet meets the target; the path is the start alone.
    Meets,
    /// Rank one: a single step to the target vertex `v`.
    Rank1 { v: VertexId },
    /// A segment in the link of the anchor, joined with it, followed by a
    /// segment anchored at the pivot.
    Step {
        delta: usize,
        /// Index of the first facet closer to the target.
        k: usize,
        pivot: VertexId,
        link_anchor: VertexId,
        link: Box<SegmentTrace>,
        rest: Box<SegmentTrace>,
    },
}

impl SegmentTrace {
    /// Levels of nesting.
    pub fn depth(&self) -> usize {
        match self {
            SegmentTrace::Step { link, rest, .. } => 1 + link.depth().max(rest.depth()),
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentCertificate {
    pub target: Vec<VertexId>,
    pub anchor: VertexId,
    pub path: FacetPath<Facet>,
    pub trace: SegmentTrace,
}

struct Level {
    complex: PureComplex,
    /// All-pairs 1-skeleton distances over the ground set.
    dist: Vec<Vec<Option<usize>>>,
}

impl Level {
    fn new(complex: PureComplex) -> Self {
        let g = complex.vertex_graph();
        let dist = (0..complex.n()).map(|v| g.distances_from(&[v])).collect();
        Level { complex, dist }
    }

    fn vdist(&self, a: &[VertexId], b: &[VertexId]) -> Option<usize> {
        a.iter().flat_map(|&u| b.iter().filter_map(move |&v| self.dist[u][v])).min()
    }

    fn is_vertex(&self, v: VertexId) -> bool {
        self.dist[v][v].is_some() && self.complex.facets().iter().any(|f| f.contains(v))
    }
}

fn adjacent(a: &Facet, b: &Facet) -> bool {
    a.len() == b.len() && a.intersection_size(b) + 1 == a.len()
}

/// Segments and non-revisiting paths in one fixed complex, validated once.
pub struct NonRevisiting {
    levels: HashMap<Facet, Rc<Level>>,
    flag: bool,
}

impl NonRevisiting {
    /// Fails with `NotNormal`, or with `NotFlag` unless `allow_non_flag`.
    pub fn new(c: &PureComplex, allow_non_flag: bool) -> Result<Self> {
        if let Some(face) = c.normality_violation() {
            return Err(Error::NotNormal(format!("{face:?}")));
        }
        let violation = c.flag_violation()?;
        if let (Some(face), false) = (&violation, allow_non_flag) {
            return Err(Error::NotFlag(format!("{face:?}")));
        }
        let mut levels = HashMap::new();
        levels.insert(Facet::empty(), Rc::new(Level::new(c.clone())));
        Ok(NonRevisiting { levels, flag: violation.is_none() })
    }

    pub fn is_flag(&self) -> bool {
        self.flag
    }

    pub fn complex(&self) -> &PureComplex {
        &self.levels[&Facet::empty()].complex
    }

    fn level(&mut self, face: &Facet) -> Result<Rc<Level>> {
        if let Some(l) = self.levels.get(face) {
            return Ok(l.clone());
        }
        let lk = self.complex().link(face)?;
        let l = Rc::new(Level::new(lk));
        self.levels.insert(face.clone(), l.clone());
        Ok(l)
    }

    /// The least `x ∈ X` with `vdist(x, S) = vdist(X, S)`.
    fn best_anchor(level: &Level, x: &Facet, s: &[VertexId]) -> Result<VertexId> {
        if x.len() == 1 {
            // Rank one: the 1-skeleton has no edges and the anchor is forced.
            return Ok(x.vertices()[0]);
        }
        let delta = level.vdist(x.vertices(), s).ok_or(Error::Disconnected)?;
        Ok(*x.vertices().iter().find(|&&v| level.vdist(&[v], s) == Some(delta)).unwrap())
    }

    /// A combinatorial segment from the facet `x` to `s` anchored at `anchor`.
    pub fn segment(&mut self, x: &Facet, s: &[VertexId], anchor: VertexId) -> Result<SegmentCertificate> {
        let top = self.level(&Facet::empty())?;
        if top.complex.facet_index(x).is_none() {
            return Err(Error::NotAFace(format!("{x:?} (not a facet)")));
        }
        if s.is_empty() || s.iter().any(|&v| v >= top.complex.n()) {
            return Err(Error::invalid("target must be a nonempty set of vertices"));
        }
        let realizes = top.complex.d() == 1 || {
            let delta = top.vdist(x.vertices(), s).ok_or(Error::Disconnected)?;
            top.vdist(&[anchor], s) == Some(delta)
        };
        if !x.contains(anchor) || !realizes {
            return Err(Error::BadAnchor { anchor });
        }
        let (path, trace) = self.build(&Facet::empty(), x, s, anchor)?;
        Ok(SegmentCertificate { target: s.to_vec(), anchor, path: FacetPath::new(path), trace })
    }

    /// Like [`segment`](Self::segment) with the least admissible anchor.
    pub fn segment_auto(&mut self, x: &Facet, s: &[VertexId]) -> Result<SegmentCertificate> {
        let top = self.level(&Facet::empty())?;
        if top.complex.facet_index(x).is_none() {
            return Err(Error::NotAFace(format!("{x:?} (not a facet)")));
        }
        let anchor = Self::best_anchor(&top, x, s)?;
        self.segment(x, s, anchor)
    }

    fn build(
        &mut self,
        face: &Facet,
        x: &Facet,
        s: &[VertexId],
        anchor: VertexId,
    ) -> Result<(Vec<Facet>, SegmentTrace)> {
        let level = self.level(face)?;
        if x.meets(s) {
            return Ok((vec![x.clone()], SegmentTrace::Meets));
        }
        if level.complex.d() == 1 {
            let v = *s.iter().find(|&&v| level.is_vertex(v)).ok_or(Error::Disconnected)?;
            return Ok((vec![x.clone(), Facet::new(vec![v])?], SegmentTrace::Rank1 { v }));
        }
        let delta = level.vdist(x.vertices(), s).ok_or(Error::Disconnected)?;
        let targets: Vec<VertexId> = (0..level.complex.n())
            .filter(|&z| level.dist[anchor][z] == Some(1) && level.vdist(&[z], s) == Some(delta - 1))
            .collect();
        let sub_face = face.with(anchor);
        let sub_x = x.without(anchor);
        let sub_level = self.level(&sub_face)?;
        let link_anchor = Self::best_anchor(&sub_level, &sub_x, &targets)?;
        let (sub_path, sub_trace) = self.build(&sub_face, &sub_x, &targets, link_anchor)?;
        let mut path: Vec<Facet> = sub_path.iter().map(|f| f.with(anchor)).collect();
        let k = path.len() - 1;
        let pivot = path[k].vertices().iter().copied().find(|&v| !path[k - 1].contains(v)).unwrap();
        let (rest, rest_trace) = self.build(face, &path[k].clone(), s, pivot)?;
        path.extend(rest.into_iter().skip(1));
        let trace =
            SegmentTrace::Step { delta, k, pivot, link_anchor, link: Box::new(sub_trace), rest: Box::new(rest_trace) };
        Ok((path, trace))
    }

    /// A non-revisiting dual path from `x` to `y`. The result is checked at
    /// every level; a failure reports the depth (number of link descents).
    pub fn path(&mut self, x: &Facet, y: &Facet) -> Result<FacetPath<Facet>> {
        let top = self.level(&Facet::empty())?;
        for f in [x, y] {
            if top.complex.facet_index(f).is_none() {
                return Err(Error::NotAFace(format!("{f:?} (not a facet)")));
            }
        }
        Ok(FacetPath::new(self.path_in(&Facet::empty(), x, y, 0)?))
    }

    fn path_in(&mut self, face: &Facet, x: &Facet, y: &Facet, depth: usize) -> Result<Vec<Facet>> {
        if x == y {
            return Ok(vec![x.clone()]);
        }
        let path = if let Some(&v) = x.vertices().iter().find(|&&v| y.contains(v)) {
            let sub = self.path_in(&face.with(v), &x.without(v), &y.without(v), depth + 1)?;
            sub.into_iter().map(|f| f.with(v)).collect()
        } else {
            let level = self.level(face)?;
            let anchor = Self::best_anchor(&level, x, y.vertices())?;
            let (mut seg, _) = self.build(face, x, y.vertices(), anchor)?;
            let last = seg.last().unwrap().clone();
            let rest = self.path_in(face, &last, y, depth)?;
            seg.extend(rest.into_iter().skip(1));
            seg
        };
        if let Some(triple) = non_revisiting_violation(&path) {
            return Err(Error::NotNonRevisiting { depth, triple });
        }
        Ok(path)
    }

    /// Checks that `path` is a combinatorial segment to `s` anchored at
    /// `anchor` (any anchor when `None`), straight from the recursive
    /// definition and without using a trace. With `star_check`, also the
    /// property that neighbours of each pivot stay until the pivot appears.
    pub fn check_segment(
        &mut self,
        path: &[Facet],
        s: &[VertexId],
        anchor: Option<VertexId>,
        star_check: bool,
    ) -> std::result::Result<(), String> {
        self.check_in(&Facet::empty(), path, s, anchor, star_check)
    }

    fn check_in(
        &mut self,
        face: &Facet,
        path: &[Facet],
        s: &[VertexId],
        anchor: Option<VertexId>,
        star_check: bool,
    ) -> std::result::Result<(), String> {
        let level = self.level(face).map_err(|e| e.to_string())?;
        let c = &level.complex;
        let Some(x) = path.first() else { return Err("empty path".into()) };
        if let Some(f) = path.iter().find(|f| c.facet_index(f).is_none()) {
            return Err(format!("{f:?} is not a facet of lk({face:?})"));
        }
        if !path.windows(2).all(|w| adjacent(&w[0], &w[1])) {
            return Err(format!("path in lk({face:?}) has non-adjacent steps"));
        }
        if x.meets(s) {
            if path.len() != 1 {
                return Err("start meets the target but the path continues".into());
            }
            return match anchor {
                Some(a) if !(x.contains(a) && s.contains(&a)) => Err(format!("anchor {a} not in X ∩ S")),
                _ => Ok(()),
            };
        }
        if c.d() == 1 {
            return if path.len() == 2 && path[1].vertices().iter().all(|v| s.contains(v)) {
                Ok(())
            } else {
                Err("rank-one segment must be a single step into the target".into())
            };
        }
        let n = path.len() - 1;
        if (0..n).any(|i| path[i].meets(s)) || !path[n].meets(s) {
            return Err("the last facet must be the only one meeting the target".into());
        }
        let vd: Vec<Option<usize>> = path.iter().map(|f| level.vdist(f.vertices(), s)).collect();
        let delta = vd[0].ok_or("target unreachable")?;
        let k = (1..=n).find(|&i| vd[i].is_some_and(|v| v < delta)).ok_or("distance never drops")?;
        let new: Vec<VertexId> = path[k].vertices().iter().copied().filter(|&v| !path[k - 1].contains(v)).collect();
        let y = new[0];
        if level.vdist(&[y], s) != Some(delta - 1) || vd[k] != Some(delta - 1) {
            return Err(format!("pivot {y} is not one closer to the target"));
        }
        let common: Vec<VertexId> =
            x.vertices().iter().copied().filter(|&v| path[..=k].iter().all(|f| f.contains(v))).collect();
        let candidates: Vec<VertexId> = match anchor {
            Some(a) if common.contains(&a) => vec![a],
            Some(a) => return Err(format!("anchor {a} leaves the first part")),
            None => common,
        };
        if star_check && self.flag {
            for (l, f) in path[..=k].iter().enumerate() {
                for &z in f.vertices() {
                    if level.dist[z][y] == Some(1) && !path[l..=k].iter().all(|g| g.contains(z)) {
                        return Err(format!("neighbour {z} of pivot {y} leaves before step {k}"));
                    }
                }
            }
        }
        let mut last_err = String::from("no anchor");
        for a in candidates {
            let targets: Vec<VertexId> = (0..c.n())
                .filter(|&z| level.dist[a][z] == Some(1) && level.vdist(&[z], s) == Some(delta - 1))
                .collect();
            let sub: Vec<Facet> = path[..=k].iter().map(|f| f.without(a)).collect();
            match self.check_in(&face.with(a), &sub, &targets, None, star_check) {
                Ok(()) => return self.check_in(face, &path[k..], s, Some(y), star_check),
                Err(e) => last_err = format!("link of {a}: {e}"),
            }
        }
        Err(last_err)
    }
}

/// A combinatorial segment from `x` to `s` anchored at `anchor`.
pub fn combinatorial_segment(
    c: &PureComplex,
    x: &Facet,
    s: &[VertexId],
    anchor: VertexId,
) -> Result<SegmentCertificate> {
    NonRevisiting::new(c, true)?.segment(x, s, anchor)
}

/// Replays a certificate against the definition, then checks that the
/// vertex distance to the target never increases and that every suffix is a
/// segment (anchored at the same vertex before the first drop).
pub fn segment_monotone_check(c: &PureComplex, cert: &SegmentCertificate) -> Result<bool> {
    let mut nr = NonRevisiting::new(c, true)?;
    let path = &cert.path.facets;
    if path.is_empty() || nr.check_segment(path, &cert.target, Some(cert.anchor), true).is_err() {
        return Ok(false);
    }
    let g = c.vertex_graph();
    let vd: Vec<Option<usize>> =
        path.iter().map(|f| crate::complex::vertex_distance_in(&g, f.vertices(), &cert.target)).collect();
    if vd.windows(2).any(|w| w[1] > w[0]) {
        return Ok(false);
    }
    let first_drop = (1..path.len()).find(|&i| vd[i] < vd[0]).unwrap_or(path.len());
    for l in 1..path.len() {
        let anchor = (l < first_drop).then_some(cert.anchor);
        if nr.check_segment(&path[l..], &cert.target, anchor, true).is_err() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A non-revisiting dual path between two facets of a normal complex.
/// Without `allow_non_flag` a non-flag input is rejected up front.
pub fn non_revisiting_path(c: &PureComplex, x: &Facet, y: &Facet, allow_non_flag: bool) -> Result<FacetPath<Facet>> {
    NonRevisiting::new(c, allow_non_flag)?.path(x, y)
}

/// Outcome of running the path construction on every ordered facet pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub pairs: usize,
    pub max_length: usize,
    /// `n_used − d`.
    pub bound: usize,
    pub all_non_revisiting: bool,
    pub all_within_bound: bool,
    pub all_valid: bool,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.all_non_revisiting && self.all_within_bound && self.all_valid
    }
}

/// All ordered pairs of facets.
pub fn sweep_all_pairs(c: &PureComplex) -> Result<SweepReport> {
    let mut nr = NonRevisiting::new(c, false)?;
    let bound = c.used_vertices().len() - c.d();
    let mut report = SweepReport {
        pairs: 0,
        max_length: 0,
        bound,
        all_non_revisiting: true,
        all_within_bound: true,
        all_valid: true,
    };
    for x in c.facets() {
        for y in c.facets() {
            let p = nr.path(x, y)?;
            report.pairs += 1;
            report.max_length = report.max_length.max(p.length());
            report.all_non_revisiting &= non_revisiting_violation(&p.facets).is_none();
            report.all_within_bound &= p.length() <= bound;
            report.all_valid &= p.is_valid() && p.facets.first() == Some(x) && p.facets.last() == Some(y);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{barycentric_subdivision, complete_complex};
    use crate::diameter::dual_distance;

    fn sd_boundary(d: usize) -> PureComplex {
        barycentric_subdivision(&complete_complex(d + 1, d)).complex
    }

    fn hexagon() -> PureComplex {
        PureComplex::from_lists(6, 2, (0..6).map(|i| vec![i, (i + 1) % 6]).collect()).unwrap()
    }

    #[test]
    fn trivial_segments() {
        let c = hexagon();
        let x = Facet::new(vec![0, 1]).unwrap();
        let cert = combinatorial_segment(&c, &x, &[1, 4], 1).unwrap();
        assert_eq!(cert.path.length(), 0);
        assert_eq!(cert.trace, SegmentTrace::Meets);
        let points = PureComplex::from_lists(4, 1, vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let cert = combinatorial_segment(&points, &Facet::new(vec![0]).unwrap(), &[2, 3], 0).unwrap();
        assert_eq!(cert.path.facets, vec![Facet::new(vec![0]).unwrap(), Facet::new(vec![2]).unwrap()]);
    }

    #[test]
    fn bad_anchor_and_errors() {
        let c = hexagon();
        let x = Facet::new(vec![0, 1]).unwrap();
        assert_eq!(combinatorial_segment(&c, &x, &[3], 0), Err(Error::BadAnchor { anchor: 0 }));
        assert!(combinatorial_segment(&c, &x, &[3], 1).is_ok());
        let two = PureComplex::from_lists(4, 2, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(NonRevisiting::new(&two, true), Err(Error::NotNormal(_))));
        let hollow = complete_complex(3, 2);
        assert!(matches!(NonRevisiting::new(&hollow, false), Err(Error::NotFlag(_))));
        assert!(NonRevisiting::new(&hollow, true).is_ok());
    }

    #[test]
    fn segments_on_subdivided_tetrahedron() {
        let c = sd_boundary(3);
        let mut nr = NonRevisiting::new(&c, false).unwrap();
        for x in c.facets() {
            for y in c.facets().iter().filter(|y| !y.meets(x.vertices())) {
                let cert = nr.segment_auto(x, y.vertices()).unwrap();
                assert!(segment_monotone_check(&c, &cert).unwrap(), "{x:?} -> {y:?}");
                let again = nr.segment_auto(x, y.vertices()).unwrap();
                assert_eq!(again, cert);
            }
        }
    }

    #[test]
    fn corrupted_certificate_fails() {
        let c = sd_boundary(3);
        let mut nr = NonRevisiting::new(&c, false).unwrap();
        let (x, y) = (&c.facets()[0], c.facets().iter().rev().find(|y| !y.meets(c.facets()[0].vertices())).unwrap());
        let mut cert = nr.segment_auto(x, y.vertices()).unwrap();
        assert!(cert.path.length() >= 2);
        cert.path.facets.swap(0, 1);
        assert!(!segment_monotone_check(&c, &cert).unwrap());
    }

    #[test]
    fn paths_on_small_flag_complexes() {
        for c in [hexagon(), sd_boundary(2), sd_boundary(3)] {
            let r = sweep_all_pairs(&c).unwrap();
            assert!(r.passed(), "{r:?}");
            let mut nr = NonRevisiting::new(&c, false).unwrap();
            for x in c.facets() {
                for y in c.facets() {
                    let p = nr.path(x, y).unwrap();
                    assert!(dual_distance(&c, x, y).unwrap().unwrap() <= p.length());
                    if x == y {
                        assert_eq!(p.length(), 0);
                    }
                    if x.intersection_size(y) + 1 == x.len() {
                        assert_eq!(p.length(), 1);
                    }
                }
            }
        }
        assert_eq!(sweep_all_pairs(&sd_boundary(3)).unwrap().pairs, 576);
    }

    #[test]
    fn non_flag_override_is_checked() {
        // The boundary of an octahedron is flag; the boundary of a tetrahedron is not.
        let tet = complete_complex(4, 3);
        let mut nr = NonRevisiting::new(&tet, true).unwrap();
        assert!(!nr.is_flag());
        for x in tet.facets() {
            for y in tet.facets() {
                match nr.path(x, y) {
                    Ok(p) => assert!(non_revisiting_violation(&p.facets).is_none()),
                    Err(e) => assert!(matches!(e, Error::NotNonRevisiting { .. })),
                }
            }
        }
    }
}
