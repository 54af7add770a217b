//! Dual distances and diameters, non-revisiting paths, and induced paths in
//! Johnson graphs.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::caps::caps;
use crate::complex::{Face, Facet, Pure};
use crate::constructions::complete_complex;
use crate::error::{Error, Result};

/// A sequence of facets, consecutive ones adjacent in the dual graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetPath<F> {
    pub facets: Vec<F>,
}

impl<F: Face> FacetPath<F> {
    pub fn new(facets: Vec<F>) -> Self {
        FacetPath { facets }
    }

    /// Number of steps.
    pub fn length(&self) -> usize {
        self.facets.len().saturating_sub(1)
    }

    /// Consecutive facets differ in one element and no facet repeats.
    pub fn is_valid(&self) -> bool {
        let mut seen: Vec<&F> = self.facets.iter().collect();
        seen.sort();
        seen.dedup();
        seen.len() == self.facets.len() && self.facets.windows(2).all(|w| w[0].differs_by_one(&w[1]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterReport<F> {
    pub diameter: usize,
    pub witness_pair: (F, F),
    pub witness_path: FacetPath<F>,
}

fn facet_index<F: Face>(c: &Pure<F>, x: &F) -> Result<usize> {
    c.facet_index(x).ok_or_else(|| Error::NotAFace(format!("{x:?} (not a facet)")))
}

/// BFS distance between two facets; `None` if they lie in different components.
pub fn dual_distance<F: Face>(c: &Pure<F>, x: &F, y: &F) -> Result<Option<usize>> {
    let (i, j) = (facet_index(c, x)?, facet_index(c, y)?);
    Ok(c.dual_graph().distances_from(&[i])[j])
}

/// A shortest dual path from `x` to `y`.
pub fn dual_path<F: Face>(c: &Pure<F>, x: &F, y: &F) -> Result<FacetPath<F>> {
    let (i, j) = (facet_index(c, x)?, facet_index(c, y)?);
    let nodes = c.dual_graph().shortest_path(i, j).ok_or(Error::Disconnected)?;
    Ok(FacetPath::new(nodes.into_iter().map(|v| c.facets()[v].clone()).collect()))
}

/// Exact diameter of the dual graph by BFS from every facet. The witness is
/// the first pair (in facet order) at maximum distance.
pub fn dual_diameter<F: Face>(c: &Pure<F>) -> Result<DiameterReport<F>> {
    let g = c.dual_graph();
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut best = (0, 0, 0);
    for i in 0..g.node_count() {
        let dist = g.distances_from(&[i]);
        for (j, dj) in dist.iter().enumerate() {
            let dj = dj.ok_or(Error::Disconnected)?;
            if dj > best.0 {
                best = (dj, i, j);
            }
        }
    }
    let (diameter, i, j) = best;
    let path = g.shortest_path(i, j).ok_or(Error::Disconnected)?;
    Ok(DiameterReport {
        diameter,
        witness_pair: (c.facets()[i].clone(), c.facets()[j].clone()),
        witness_path: FacetPath::new(path.into_iter().map(|v| c.facets()[v].clone()).collect()),
    })
}

/// The least triple `i < j < k` (lexicographically) with `X_i ∩ X_k ⊄ X_j`.
pub fn non_revisiting_violation(path: &[Facet]) -> Option<(usize, usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    let max_v = path.iter().flat_map(|f| f.vertices().last().copied()).max()?;
    for v in 0..=max_v {
        let positions: Vec<usize> = (0..path.len()).filter(|&p| path[p].contains(v)).collect();
        // The least triple for v is (first position before a gap, gap start, next position).
        if let Some(w) = positions.windows(2).find(|w| w[1] > w[0] + 1) {
            let t = (w[0], w[0] + 1, w[1]);
            if best.is_none_or(|b| t < b) {
                best = Some(t);
            }
        }
    }
    best
}

/// Every vertex star meets the path in a contiguous stretch.
pub fn is_non_revisiting(path: &[Facet]) -> bool {
    non_revisiting_violation(path).is_none()
}

/// `⌊(C(n, d−1) − d) / (d−1)⌋`, the corridor length bound.
pub fn corridor_upper_bound(n: usize, d: usize) -> Result<u64> {
    if d < 2 {
        return Err(Error::invalid("corridor bound needs d >= 2"));
    }
    let ridges = binomial(n as u64, (d - 1) as u64);
    Ok(ridges.saturating_sub(d as u64) / (d as u64 - 1))
}

/// `δ/(n−d) − 1`.
pub fn hirsch_excess(n: u64, d: u64, delta: u64) -> Result<Ratio<i64>> {
    if n <= d {
        return Err(Error::invalid(format!("excess needs n > d, got n={n}, d={d}")));
    }
    Ok(Ratio::new(delta as i64, (n - d) as i64) - 1)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchMode {
    /// Branch and bound; proves optimality.
    Exact,
    /// Randomized greedy restarts.
    Heuristic { seed: u64, restarts: usize },
}

/// An induced path in `J(n, d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JohnsonPath {
    pub n: usize,
    pub d: usize,
    pub facets: Vec<Facet>,
    /// Whether the length is proven maximum.
    pub optimal: bool,
    /// Search nodes visited.
    pub nodes: u64,
}

impl JohnsonPath {
    pub fn length(&self) -> usize {
        self.facets.len().saturating_sub(1)
    }
}

struct Johnson {
    facets: Vec<Facet>,
    nbr: Vec<u128>,
}

impl Johnson {
    fn new(n: usize, d: usize) -> Result<Self> {
        let count = binomial(n as u64, d as u64);
        Error::check_cap("Johnson graph nodes", count as usize, caps().johnson_nodes.min(128))?;
        let c = complete_complex(n, d);
        let g = c.dual_graph();
        let nbr = (0..g.node_count()).map(|v| g.neighbors(v).iter().fold(0u128, |m, &w| m | 1 << w)).collect();
        Ok(Johnson { facets: c.facets().to_vec(), nbr })
    }

    fn all(&self) -> u128 {
        if self.facets.len() == 128 {
            u128::MAX
        } else {
            (1u128 << self.facets.len()) - 1
        }
    }
}

struct Dfs<'a> {
    j: &'a Johnson,
    best: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
}

impl Dfs<'_> {
    /// `blocked` holds the closed neighbourhoods of every path node but the last.
    fn extend(&mut self, path: &mut Vec<usize>, blocked: u128) -> Result<()> {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                return Err(Error::Budget { budget: b });
            }
        }
        if path.len() > self.best.len() {
            self.best = path.clone();
        }
        let last = *path.last().unwrap();
        let closed = self.j.nbr[last] | 1 << last;
        let mut candidates = self.j.nbr[last] & !blocked;
        let next_blocked = blocked | closed;
        // Every node after the next one lies outside next_blocked.
        let free = (self.j.all() & !next_blocked).count_ones() as usize;
        if candidates == 0 || path.len() + 1 + free <= self.best.len() {
            return Ok(());
        }
        while candidates != 0 {
            let w = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            path.push(w);
            self.extend(path, next_blocked)?;
            path.pop();
        }
        Ok(())
    }
}

/// Longest induced path in the Johnson graph `J(n, d)` (exact), or a long one
/// (heuristic). Exact search fixes the first node to `{0, …, d−1}` and the
/// second to its least neighbour, which loses nothing since `J(n, d)` is
/// vertex-transitive and the stabilizer of a node is transitive on its
/// neighbours.
pub fn longest_induced_path_johnson(n: usize, d: usize, mode: SearchMode, budget: Option<u64>) -> Result<JohnsonPath> {
    if d > n {
        return Err(Error::invalid(format!("J({n},{d}) is empty")));
    }
    let j = Johnson::new(n, d)?;
    let (nodes, path, optimal) = match mode {
        SearchMode::Exact => {
            let mut dfs = Dfs { j: &j, best: vec![0], nodes: 0, budget };
            if j.nbr[0] != 0 {
                let second = j.nbr[0].trailing_zeros() as usize;
                dfs.extend(&mut vec![0, second], j.nbr[0] | 1)?;
            }
            (dfs.nodes, dfs.best, true)
        }
        SearchMode::Heuristic { seed, restarts } => {
            let (nodes, path) = greedy_restarts(&j, seed, restarts.max(1), budget);
            (nodes, path, false)
        }
    };
    Ok(JohnsonPath { n, d, facets: path.into_iter().map(|v| j.facets[v].clone()).collect(), optimal, nodes })
}

fn greedy_restarts(j: &Johnson, seed: u64, restarts: usize, budget: Option<u64>) -> (u64, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = vec![0];
    let mut steps = 0u64;
    for _ in 0..restarts {
        let mut path = vec![rng.gen_range(0..j.facets.len())];
        let mut blocked = 0u128;
        loop {
            steps += 1;
            if budget.is_some_and(|b| steps > b) {
                return (steps, best);
            }
            let last = *path.last().unwrap();
            let next_blocked = blocked | j.nbr[last] | 1 << last;
            let avail = j.nbr[last] & !blocked;
            let mut cand: Vec<usize> = (0..j.facets.len()).filter(|&w| avail >> w & 1 == 1).collect();
            if cand.is_empty() {
                break;
            }
            // Prefer the step that blocks the fewest fresh nodes.
            cand.shuffle(&mut rng);
            let w = *cand.iter().min_by_key(|&&w| (j.nbr[w] & !next_blocked).count_ones()).unwrap();
            path.push(w);
            blocked = next_blocked;
        }
        if path.len() > best.len() {
            best = path;
        }
    }
    (steps, best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::PureComplex;
    use proptest::prelude::*;

    // From the Floyd-Warshall oracle below.
    const NABLA_22_DIAMETER: usize = 5;

    /// Largest vertex subset of J(n,d) inducing a path, by subset enumeration.
    fn oracle(n: usize, d: usize) -> usize {
        let g = complete_complex(n, d).dual_graph();
        let m = g.node_count();
        let mut best = 0;
        for mask in 1u32..(1 << m) {
            let nodes: Vec<usize> = (0..m).filter(|&v| mask >> v & 1 == 1).collect();
            if nodes.len() <= best {
                continue;
            }
            let edges: usize =
                nodes.iter().map(|&v| g.neighbors(v).iter().filter(|&&w| mask >> w & 1 == 1).count()).sum();
            let degree_ok = nodes.iter().all(|&v| g.neighbors(v).iter().filter(|&&w| mask >> w & 1 == 1).count() <= 2);
            if edges / 2 == nodes.len() - 1 && degree_ok {
                let sub = Graph::from_edges(
                    nodes.len(),
                    g.edges()
                        .filter(|&(a, b)| mask >> a & 1 == 1 && mask >> b & 1 == 1)
                        .map(|(a, b)| (nodes.binary_search(&a).unwrap(), nodes.binary_search(&b).unwrap())),
                );
                if sub.is_connected() {
                    best = nodes.len();
                }
            }
        }
        best - 1
    }

    use crate::complex::Graph;

    fn check(p: &JohnsonPath) {
        let c = PureComplex::new(p.n, p.d, p.facets.clone()).unwrap();
        if p.facets.len() > 1 {
            assert!(c.is_corridor());
            assert_eq!(c.corridor_order().unwrap().len(), p.facets.len());
        }
        let fp = FacetPath::new(p.facets.clone());
        assert!(fp.is_valid());
    }

    #[test]
    fn exact_matches_oracle_small() {
        for n in 1..=6 {
            for d in 0..=n {
                if binomial(n as u64, d as u64) > 15 {
                    continue;
                }
                let p = longest_induced_path_johnson(n, d, SearchMode::Exact, None).unwrap();
                check(&p);
                assert_eq!(p.length(), oracle(n, d), "J({n},{d})");
            }
        }
    }

    #[test]
    fn d_one_and_symmetry() {
        assert_eq!(longest_induced_path_johnson(5, 1, SearchMode::Exact, None).unwrap().length(), 1);
        for n in 2..=7 {
            for d in 1..n {
                let a = longest_induced_path_johnson(n, d, SearchMode::Exact, None).unwrap().length();
                let b = longest_induced_path_johnson(n, n - d, SearchMode::Exact, None).unwrap().length();
                assert_eq!(a, b, "J({n},{d})");
            }
        }
    }

    #[test]
    fn heuristic_is_induced_and_deterministic() {
        let mode = SearchMode::Heuristic { seed: 7, restarts: 20 };
        let p = longest_induced_path_johnson(7, 3, mode, None).unwrap();
        check(&p);
        assert_eq!(p, longest_induced_path_johnson(7, 3, mode, None).unwrap());
        let exact = longest_induced_path_johnson(7, 3, SearchMode::Exact, None).unwrap();
        assert!(p.length() <= exact.length());
    }

    #[test]
    fn budget_is_reported() {
        assert!(matches!(
            longest_induced_path_johnson(7, 3, SearchMode::Exact, Some(10)),
            Err(Error::Budget { budget: 10 })
        ));
    }

    #[test]
    fn distances_and_diameters() {
        let c = complete_complex(4, 2);
        let f = |v: Vec<usize>| Facet::new(v).unwrap();
        assert_eq!(dual_distance(&c, &f(vec![0, 1]), &f(vec![0, 1])).unwrap(), Some(0));
        assert_eq!(dual_distance(&c, &f(vec![0, 1]), &f(vec![0, 2])).unwrap(), Some(1));
        assert_eq!(dual_distance(&c, &f(vec![0, 1]), &f(vec![2, 3])).unwrap(), Some(2));
        for n in 1..=7 {
            for d in 1..=n {
                let r = dual_diameter(&complete_complex(n, d)).unwrap();
                assert_eq!(r.diameter, d.min(n - d));
                assert_eq!(r.witness_path.length(), r.diameter);
                assert_eq!(r.witness_path.facets[0], r.witness_pair.0);
            }
        }
        let two = PureComplex::from_lists(4, 2, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(dual_diameter(&two), Err(Error::Disconnected));
    }

    /// Floyd-Warshall over facets, adjacency by symmetric difference.
    fn naive_diameter(c: &PureComplex) -> usize {
        let f = c.facets();
        let m = f.len();
        let mut dist = vec![vec![usize::MAX / 2; m]; m];
        for i in 0..m {
            for j in 0..m {
                let shared = f[i].vertices().iter().filter(|v| f[j].contains(**v)).count();
                if i == j {
                    dist[i][j] = 0;
                } else if shared + 1 == f[i].len() {
                    dist[i][j] = 1;
                }
            }
        }
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    dist[i][j] = dist[i][j].min(dist[i][k] + dist[k][j]);
                }
            }
        }
        dist.iter().flatten().copied().max().unwrap()
    }

    #[test]
    fn nabla_diameters() {
        for (a, b) in [(1, 1), (1, 2), (2, 2), (2, 3)] {
            let c = crate::constructions::nabla(a, b).unwrap();
            assert_eq!(dual_diameter(&c).unwrap().diameter, naive_diameter(&c), "({a},{b})");
        }
        let frozen = dual_diameter(&crate::constructions::nabla(2, 2).unwrap()).unwrap().diameter;
        assert_eq!(frozen, NABLA_22_DIAMETER);
    }

    #[test]
    fn non_revisiting_examples() {
        let f = |v: Vec<usize>| Facet::new(v).unwrap();
        assert!(is_non_revisiting(&[f(vec![0, 1])]));
        assert!(is_non_revisiting(&[f(vec![0, 1]), f(vec![1, 2])]));
        // Leaves the star of 0 and comes back.
        let p = [f(vec![0, 1]), f(vec![1, 2]), f(vec![2, 3]), f(vec![0, 3])];
        assert_eq!(non_revisiting_violation(&p), Some((0, 1, 3)));
    }

    #[test]
    fn corridor_bound_and_excess() {
        assert_eq!(corridor_upper_bound(3, 2).unwrap(), 1);
        assert_eq!(corridor_upper_bound(13, 3).unwrap(), 37);
        assert!(corridor_upper_bound(5, 1).is_err());
        assert_eq!(hirsch_excess(8, 4, 5).unwrap(), Ratio::new(1, 4));
        assert_eq!(hirsch_excess(9, 4, 5).unwrap(), Ratio::from_integer(0));
        assert_eq!(hirsch_excess(40, 20, 21).unwrap(), Ratio::new(1, 20));
        assert!(hirsch_excess(4, 4, 1).is_err());
    }

    fn random_complex(n: usize, d: usize, mask: u64) -> PureComplex {
        let all = complete_complex(n, d);
        let facets = all.facets().iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, f)| f.clone());
        PureComplex::new(n, d, facets.collect()).unwrap()
    }

    proptest! {
        #[test]
        fn diameter_within_corridor_bound(mask in any::<u64>(), n in 3usize..8, d in 2usize..4) {
            let c = random_complex(n, d, mask);
            if let Ok(r) = dual_diameter(&c) {
                prop_assert!(r.diameter as u64 <= corridor_upper_bound(n, d).unwrap());
                // A shortest path, as a complex, is a corridor of the same length.
                let sub = PureComplex::new(n, d, r.witness_path.facets.clone()).unwrap();
                prop_assert!(sub.is_corridor());
                prop_assert_eq!(dual_diameter(&sub).unwrap().diameter, r.diameter);
            }
        }

        #[test]
        fn non_revisiting_paths_are_short(mask in any::<u64>(), n in 3usize..8, d in 2usize..4) {
            let c = random_complex(n, d, mask);
            if let Ok(r) = dual_diameter(&c) {
                let p = &r.witness_path.facets;
                if is_non_revisiting(p) {
                    let used: std::collections::BTreeSet<usize> = p.iter().flat_map(|f| f.vertices().to_vec()).collect();
                    prop_assert!(r.diameter <= used.len() - d);
                }
            }
        }
    }
}
