//! Explicit constructions: complete complexes, two-dimensional corridors,
//! joins and their induced paths, ∇_{a,b}, barycentric subdivisions.

use serde::{Deserialize, Serialize};

use crate::caps::caps;
use crate::complex::{Face, Facet, Graph, PureComplex, VertexId};
use crate::diameter::{longest_induced_path_johnson, SearchMode};
use crate::error::{Error, Result};

/// All `d`-subsets of `[n]`.
pub fn complete_complex(n: usize, d: usize) -> PureComplex {
    let mut facets = Vec::new();
    let mut cur = Vec::with_capacity(d);
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Facet>) {
        if cur.len() == d {
            out.push(Facet::from_distinct(cur.iter().copied()));
            return;
        }
        for v in start..n {
            if n - v < d - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, d, cur, out);
            cur.pop();
        }
    }
    if d <= n {
        rec(0, n, d, &mut cur, &mut facets);
    }
    PureComplex::from_facets_dedup(n, d, facets)
}

/// `k` edge-disjoint Hamiltonian cycles covering `K_{2k+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamiltonianDecomposition {
    pub k: usize,
    /// Each cycle lists its `2k+1` vertices once, starting at the hub `2k`.
    pub cycles: Vec<Vec<VertexId>>,
}

impl HamiltonianDecomposition {
    /// Cycle edges as sorted pairs, closing edge included.
    pub fn cycle_edges(&self, c: usize) -> Vec<(VertexId, VertexId)> {
        let cyc = &self.cycles[c];
        (0..cyc.len())
            .map(|i| {
                let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                (a.min(b), a.max(b))
            })
            .collect()
    }
}

/// The zig-zag decomposition: the path `0, 1, 2k−1, 2, 2k−2, …, k` closed
/// through the hub `2k`, and its rotations by `1, …, k−1` modulo `2k`.
pub fn hamiltonian_decomposition(k: usize) -> Result<HamiltonianDecomposition> {
    if k == 0 {
        return Err(Error::invalid("hamiltonian decomposition needs k >= 1"));
    }
    let m = 2 * k;
    let mut base = vec![0];
    for s in 1..m {
        // 1, 2k−1, 2, 2k−2, ...
        let v = if s % 2 == 1 { s.div_ceil(2) } else { m - s / 2 };
        base.push(v);
    }
    let cycles = (0..k).map(|r| std::iter::once(m).chain(base.iter().map(|&v| (v + r) % m)).collect()).collect();
    Ok(HamiltonianDecomposition { k, cycles })
}

/// Two-dimensional corridor of length `2k² + k − 2` on `3k + 1 ≤ n` vertices.
///
/// The `k` Hamiltonian cycles of `K_{2k+1}` (vertices `0..=2k`) are opened
/// into paths and chained into a walk; section `t` is coned over the apex
/// `2k+1+t`, and consecutive fans are glued by the triangle
/// `{junction, apex_t, apex_{t+1}}`. Vertices above `3k` stay unused.
pub fn corridor_2complex(n: usize) -> Result<PureComplex> {
    if n < 7 {
        return Err(Error::invalid(format!("corridor_2complex needs n >= 7, got {n}")));
    }
    let k = (n - 1) / 3;
    let sections = corridor_walk(k)?;
    let mut facets = Vec::new();
    for (t, section) in sections.iter().enumerate() {
        let apex = 2 * k + 1 + t;
        for e in section.windows(2) {
            facets.push(Facet::new(vec![e[0], e[1], apex])?);
        }
        if t + 1 < sections.len() {
            let junction = *section.last().unwrap();
            facets.push(Facet::new(vec![junction, apex, apex + 1])?);
        }
    }
    PureComplex::new(n, 3, facets)
}

/// The walk of `2k²` edges split into `k` vertex-simple sections.
///
/// Cycle 1 loses its lexicographically smallest edge `{a, b}` and is walked
/// from `a` to `b`. Each later cycle loses the smallest edge incident to the
/// current junction and is walked from the junction around the cycle.
pub fn corridor_walk(k: usize) -> Result<Vec<Vec<VertexId>>> {
    let ham = hamiltonian_decomposition(k)?;
    let mut sections: Vec<Vec<VertexId>> = Vec::with_capacity(k);
    let mut junction = None;
    for c in 0..k {
        let cyc = &ham.cycles[c];
        let len = cyc.len();
        let (a, b) = match junction {
            None => *ham.cycle_edges(c).iter().min().unwrap(),
            Some(j) => {
                let i = cyc.iter().position(|&v| v == j).unwrap();
                let (p, q) = (cyc[(i + len - 1) % len], cyc[(i + 1) % len]);
                (j, p.min(q))
            }
        };
        let i = cyc.iter().position(|&v| v == a).unwrap();
        // Walk away from b.
        let step = if cyc[(i + 1) % len] == b { len - 1 } else { 1 };
        let section: Vec<VertexId> = (0..len).map(|s| cyc[(i + s * step) % len]).collect();
        debug_assert_eq!(*section.last().unwrap(), b);
        junction = Some(b);
        sections.push(section);
    }
    Ok(sections)
}

/// How to thread an induced path through a grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum PathStrategy {
    /// Every other column in full, joined by two-step connectors.
    #[default]
    Vertical,
    /// Diagonal staircases on two of every three diagonals.
    Zigzag,
}

impl std::str::FromStr for PathStrategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vertical" => Ok(PathStrategy::Vertical),
            "zigzag" => Ok(PathStrategy::Zigzag),
            _ => Err(Error::invalid(format!("unknown strategy `{s}`"))),
        }
    }
}

/// The grid `P_{l1+1} □ P_{l2+1}` with node `(i, j)` at index `i·(l2+1) + j`.
pub fn grid_graph(l1: usize, l2: usize) -> Graph {
    let path = |l: usize| Graph::from_edges(l + 1, (1..=l).map(|i| (i - 1, i)));
    path(l1).cartesian_product(&path(l2))
}

/// An induced path in the `(l1+1) × (l2+1)` grid, as `(i, j)` coordinates.
///
/// The vertical strategy has length exactly `(⌊l1/2⌋ + 1)·l2 + l1`.
pub fn product_induced_path(l1: usize, l2: usize, strategy: PathStrategy) -> Result<Vec<(usize, usize)>> {
    if l1 == 0 || l2 == 0 {
        return Err(Error::invalid("product_induced_path needs l1, l2 >= 1"));
    }
    Ok(match strategy {
        PathStrategy::Vertical => vertical_path(l1, l2),
        PathStrategy::Zigzag => zigzag_path(l1, l2),
    })
}

fn vertical_path(l1: usize, l2: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut up = true;
    let mut i = 0;
    loop {
        let column: Vec<usize> = if up { (0..=l2).collect() } else { (0..=l2).rev().collect() };
        out.extend(column.into_iter().map(|j| (i, j)));
        let row = if up { l2 } else { 0 };
        if i + 2 <= l1 {
            out.push((i + 1, row));
            i += 2;
            up = !up;
        } else {
            if i < l1 {
                out.push((l1, row));
            }
            return out;
        }
    }
}

fn zigzag_path(l1: usize, l2: usize) -> Vec<(usize, usize)> {
    let g = grid_graph(l1, l2);
    let mut best: Vec<usize> = Vec::new();
    for phase in 0..3 {
        let path = reroute(&g, shortcut_walk(&g, &staircase_walk(l1, l2, phase)), 14, 20_000);
        if path.len() > best.len() {
            best = path;
        }
    }
    best.into_iter().map(|v| (v / (l2 + 1), v % (l2 + 1))).collect()
}

/// Staircases on the diagonal pairs `i − j ∈ {D, D+1}`, `D ≡ phase (mod 3)`,
/// alternately walked up and down and joined by monotone grid paths.
fn staircase_walk(l1: usize, l2: usize, phase: isize) -> Vec<usize> {
    let (w, h) = (l1 as isize, l2 as isize);
    let mut waypoints: Vec<(isize, isize)> = Vec::new();
    let mut d = -h - (-h).rem_euclid(3) + phase;
    let mut forward = true;
    while d <= w {
        let mut stair: Vec<(isize, isize)> = (0..=w + h)
            .filter_map(|s| {
                let diag = if (s + d).rem_euclid(2) == 0 { d } else { d + 1 };
                let (i, j) = ((s + diag) / 2, (s - diag) / 2);
                ((0..=w).contains(&i) && (0..=h).contains(&j)).then_some((i, j))
            })
            .collect();
        if !forward {
            stair.reverse();
        }
        waypoints.extend(stair);
        forward = !forward;
        d += 3;
    }
    let mut walk = vec![waypoints[0]];
    for &(ti, tj) in &waypoints[1..] {
        let (mut i, mut j) = *walk.last().unwrap();
        while (i, j) != (ti, tj) {
            if j != tj {
                j += (tj - j).signum();
            } else {
                i += (ti - i).signum();
            }
            walk.push((i, j));
        }
    }
    walk.into_iter().map(|(i, j)| i as usize * (l2 + 1) + j as usize).collect()
}

/// Local improvement of an induced path: replaces a stretch of fewer than
/// `window` steps by a longer induced detour with the same endpoints,
/// until no replacement is found. Each detour search visits at most
/// `budget` nodes.
pub fn reroute(g: &Graph, mut path: Vec<usize>, window: usize, budget: usize) -> Vec<usize> {
    'outer: loop {
        for s in 0..path.len() {
            for t in s + 2..path.len().min(s + window) {
                let mut outer = vec![false; g.node_count()];
                for &v in path[..s].iter().chain(&path[t + 1..]) {
                    outer[v] = true;
                    for &w in g.neighbors(v) {
                        outer[w] = true;
                    }
                }
                let mut search = Detour {
                    g,
                    outer: &outer,
                    target: path[t],
                    count: vec![0; g.node_count()],
                    best: None,
                    visits: 0,
                    budget,
                    min_len: t - s + 1,
                };
                search.run(&mut vec![path[s]]);
                if let Some(detour) = search.best {
                    let mut next = path[..s].to_vec();
                    next.extend(detour);
                    next.extend_from_slice(&path[t + 1..]);
                    if g.is_induced_path(&next) {
                        path = next;
                        continue 'outer;
                    }
                }
            }
        }
        return path;
    }
}

struct Detour<'a> {
    g: &'a Graph,
    outer: &'a [bool],
    target: usize,
    /// Multiplicity of closed neighbourhoods of the detour nodes but the last.
    count: Vec<u32>,
    best: Option<Vec<usize>>,
    visits: usize,
    budget: usize,
    min_len: usize,
}

impl Detour<'_> {
    fn run(&mut self, p: &mut Vec<usize>) {
        self.visits += 1;
        if self.visits > self.budget {
            return;
        }
        let last = *p.last().unwrap();
        for &u in self.g.neighbors(last) {
            if u == self.target {
                let len = p.len() + 1;
                if p.len() > 1 && self.count[u] == 0 && len > self.best.as_ref().map_or(self.min_len, Vec::len) {
                    let mut found = p.clone();
                    found.push(u);
                    self.best = Some(found);
                }
                continue;
            }
            if self.outer[u] || self.count[u] > 0 {
                continue;
            }
            self.mark(last, 1);
            p.push(u);
            self.run(p);
            p.pop();
            self.mark(last, -1);
        }
    }

    fn mark(&mut self, v: usize, delta: i32) {
        for &w in self.g.neighbors(v).iter().chain(std::iter::once(&v)) {
            self.count[w] = (self.count[w] as i32 + delta) as u32;
        }
    }
}

/// Turns a walk into an induced path between its endpoints: from each vertex,
/// move to the neighbour whose last occurrence in the walk is latest.
pub fn shortcut_walk(graph: &Graph, walk: &[usize]) -> Vec<usize> {
    let mut last = vec![None; graph.node_count()];
    for (p, &v) in walk.iter().enumerate() {
        last[v] = Some(p);
    }
    let Some(&first) = walk.first() else { return Vec::new() };
    let mut path = vec![first];
    let mut pos = last[first].unwrap();
    loop {
        let v = walk[pos];
        let next = graph.neighbors(v).iter().filter_map(|&w| last[w]).filter(|&p| p > pos).max();
        match next {
            Some(p) => {
                pos = p;
                path.push(walk[p]);
            }
            None => return path,
        }
    }
}

/// A corridor on `k·n` vertices of rank `k·d`, obtained by joining `k` copies
/// of a base corridor and keeping the facets along an induced grid path.
///
/// The base is [`corridor_2complex`] for `d = 3` and the facets of a longest
/// induced path of `J(n, d)` otherwise.
pub fn iterated_join_corridor(n: usize, d: usize, k: usize, strategy: PathStrategy) -> Result<PureComplex> {
    if k == 0 {
        return Err(Error::invalid("iterated join needs k >= 1"));
    }
    Error::check_cap("join copies", k, caps().join_copies)?;
    let base = base_corridor(n, d)?;
    let base_order = base.corridor_order().ok_or_else(|| Error::invalid("base is not a corridor"))?;
    let mut order = base_order.clone();
    let mut total_n = n;
    for _ in 1..k {
        let path = product_induced_path(order.len() - 1, base_order.len() - 1, strategy)?;
        order = path.into_iter().map(|(i, j)| order[i].plus(&base_order[j].shifted(total_n))).collect();
        total_n += n;
        Error::check_cap("constructed facets", order.len(), caps().construct_facets)?;
    }
    PureComplex::new(total_n, k * d, order)
}

/// The corridor used as the base of [`iterated_join_corridor`].
pub fn base_corridor(n: usize, d: usize) -> Result<PureComplex> {
    if d == 3 && n >= 7 {
        return corridor_2complex(n);
    }
    let path = longest_induced_path_johnson(n, d, SearchMode::Exact, None)?;
    PureComplex::new(n, d, path.facets)
}

/// Vertex label of `+i` (1-based) in ∇_{a,b}.
pub fn nabla_plus(i: usize) -> VertexId {
    2 * (i - 1)
}

/// Vertex label of `−i` (1-based) in ∇_{a,b}.
pub fn nabla_minus(i: usize) -> VertexId {
    2 * (i - 1) + 1
}

/// Human-readable name of a ∇ vertex label.
pub fn nabla_name(v: VertexId) -> String {
    format!("{}{}", if v.is_multiple_of(2) { '+' } else { '-' }, v / 2 + 1)
}

pub const NABLA_ENCODING: &str = "+i -> 2(i-1), -i -> 2(i-1)+1";

/// ∇_{a,b}: facets `{+i : i ∈ S} ∪ {−j : j ∈ T}` for disjoint `S, T ⊆ [a+b+1]`
/// with `|S| = a`, `|T| = b`.
pub fn nabla(a: usize, b: usize) -> Result<PureComplex> {
    if a == 0 && b == 0 {
        return Err(Error::invalid("nabla needs a + b >= 1"));
    }
    let m = a + b + 1;
    let mut facets = Vec::new();
    for s in complete_complex(m, a).facets() {
        let rest: Vec<usize> = (0..m).filter(|v| !s.contains(*v)).collect();
        for t in complete_complex(rest.len(), b).facets() {
            let mut verts: Vec<VertexId> = s.vertices().iter().map(|&i| nabla_plus(i + 1)).collect();
            verts.extend(t.vertices().iter().map(|&x| nabla_minus(rest[x] + 1)));
            facets.push(Facet::new(verts)?);
        }
    }
    Error::check_cap("constructed facets", facets.len(), caps().construct_facets)?;
    PureComplex::new(2 * m, a + b, facets)
}

/// A barycentric subdivision with the face each new vertex stands for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Subdivision {
    pub complex: PureComplex,
    /// `faces[v]` is the face of the original complex behind vertex `v`.
    pub faces: Vec<Facet>,
}

/// Vertices are the nonempty faces ordered by (size, lexicographic); facets
/// are the complete flags of faces inside a facet.
pub fn barycentric_subdivision(c: &PureComplex) -> Subdivision {
    let mut faces: Vec<Facet> = c.faces().into_iter().filter(|f| !f.is_empty()).collect();
    faces.sort_by(|x, y| (x.len(), x).cmp(&(y.len(), y)));
    let index = |f: &Facet| faces.binary_search_by(|g| (g.len(), g).cmp(&(f.len(), f))).unwrap();
    let mut facets = Vec::new();
    for x in c.facets() {
        // Flags correspond to orderings of the facet's vertices.
        let mut order: Vec<VertexId> = x.vertices().to_vec();
        permutations(&mut order, 0, &mut |perm| {
            let mut face = Facet::empty();
            let flag: Vec<VertexId> = perm
                .iter()
                .map(|&v| {
                    face = face.with(v);
                    index(&face)
                })
                .collect();
            facets.push(Facet::from_distinct(flag));
        });
    }
    let complex = PureComplex::from_facets_dedup(faces.len(), c.d(), facets);
    Subdivision { complex, faces }
}

fn permutations(items: &mut [VertexId], k: usize, visit: &mut impl FnMut(&[VertexId])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diameter::dual_diameter;

    #[test]
    fn complete_complex_counts() {
        assert_eq!(complete_complex(3, 2).facets().len(), 3);
        assert_eq!(complete_complex(6, 3).len(), 20);
        assert_eq!(complete_complex(3, 4).len(), 0);
        assert_eq!(complete_complex(4, 0).len(), 1);
    }

    #[test]
    fn hamiltonian_cycles_partition_edges() {
        for k in 1..=8 {
            let h = hamiltonian_decomposition(k).unwrap();
            let mut all: Vec<(usize, usize)> = (0..k).flat_map(|c| h.cycle_edges(c)).collect();
            for cyc in &h.cycles {
                let mut sorted = cyc.clone();
                sorted.sort_unstable();
                assert_eq!(sorted, (0..=2 * k).collect::<Vec<_>>());
            }
            all.sort_unstable();
            let len = all.len();
            all.dedup();
            assert_eq!(all.len(), len);
            assert_eq!(len, (2 * k + 1) * k);
        }
        assert!(hamiltonian_decomposition(0).is_err());
    }

    #[test]
    fn corridor_thirteen() {
        let c = corridor_2complex(13).unwrap();
        assert_eq!(c.len(), 35);
        assert!(c.is_corridor() && c.is_pseudomanifold());
        assert_eq!(dual_diameter(&c).unwrap().diameter, 34);
        let c14 = corridor_2complex(14).unwrap();
        assert_eq!(c14.n(), 14);
        assert_eq!(c14.facets(), c.facets());
        assert!(corridor_2complex(6).is_err());
    }

    #[test]
    fn corridor_walk_uses_each_edge_once() {
        for k in 2..=6 {
            let walk = corridor_walk(k).unwrap();
            let mut edges: Vec<(usize, usize)> =
                walk.iter().flat_map(|s| s.windows(2).map(|e| (e[0].min(e[1]), e[0].max(e[1])))).collect();
            assert_eq!(edges.len(), 2 * k * k);
            edges.sort_unstable();
            edges.dedup();
            assert_eq!(edges.len(), 2 * k * k);
            for pair in walk.windows(2) {
                assert_eq!(pair[0].last(), pair[1].first());
            }
        }
    }

    #[test]
    fn vertical_path_small_case() {
        let p = product_induced_path(2, 2, PathStrategy::Vertical).unwrap();
        assert_eq!(p.len() - 1, 6);
        assert_eq!(p, vec![(0, 0), (0, 1), (0, 2), (1, 2), (2, 2), (2, 1), (2, 0)]);
    }

    #[test]
    fn grid_paths_are_induced() {
        for l1 in 1..=8 {
            for l2 in 1..=8 {
                let g = grid_graph(l1, l2);
                for s in [PathStrategy::Vertical, PathStrategy::Zigzag] {
                    let p = product_induced_path(l1, l2, s).unwrap();
                    let nodes: Vec<usize> = p.iter().map(|&(i, j)| i * (l2 + 1) + j).collect();
                    assert!(g.is_induced_path(&nodes), "{s:?} {l1}x{l2}");
                    if s == PathStrategy::Vertical {
                        assert_eq!(p.len() - 1, (l1 / 2 + 1) * l2 + l1);
                    }
                }
            }
        }
    }

    #[test]
    fn zigzag_usage_ratio() {
        let p = product_induced_path(12, 12, PathStrategy::Zigzag).unwrap();
        assert!(p.len() as f64 / 169.0 >= 0.6, "{}", p.len());
    }

    #[test]
    fn iterated_join_of_two_corridors() {
        let base = corridor_2complex(7).unwrap();
        let l = base.len() - 1;
        assert_eq!(iterated_join_corridor(7, 3, 1, PathStrategy::Vertical).unwrap(), base);
        let c = iterated_join_corridor(7, 3, 2, PathStrategy::Vertical).unwrap();
        assert!(c.is_corridor());
        assert_eq!(c.n(), 14);
        assert_eq!(c.d(), 6);
        assert!(c.len() > (l * l).div_ceil(2));
    }

    #[test]
    fn nabla_counts() {
        let nb = nabla(2, 2).unwrap();
        assert_eq!(nb.len(), 30);
        assert_eq!(nb.used_vertices().len(), 10);
        assert_eq!(nabla_name(nabla_minus(3)), "-3");
        for a in 1..=3 {
            for b in 1..=3 {
                let c = nabla(a, b).unwrap();
                assert!(c.is_strongly_connected() && c.is_normal(), "{a},{b}");
            }
        }
    }

    #[test]
    fn subdivision_of_tetrahedron_boundary() {
        let s = barycentric_subdivision(&complete_complex(4, 3));
        assert_eq!(s.complex.len(), 24);
        assert_eq!(s.complex.used_vertices().len(), 14);
        assert_eq!(s.faces[0], Facet::new(vec![0]).unwrap());
        assert!(s.complex.is_normal());
    }
}
