use std::collections::VecDeque;
use std::fmt::Write as _;

/// A simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    pub fn empty(nodes: usize) -> Self {
        Graph { adj: vec![Vec::new(); nodes] }
    }

    /// Builds a graph from an edge list; loops and repeated edges are dropped.
    pub fn from_edges(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::empty(nodes);
        for (a, b) in edges {
            if a != b {
                g.adj[a].push(b);
                g.adj[b].push(a);
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
        }
        g
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(a, list)| list.iter().filter(move |&&b| a < b).map(move |&b| (a, b)))
    }

    /// BFS distances from a set of sources; `None` marks unreachable nodes.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.adj.len()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            let dv = dist[v].unwrap();
            for &w in &self.adj[v] {
                if dist[w].is_none() {
                    dist[w] = Some(dv + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS parent pointers from `source`; neighbors are scanned in increasing order.
    fn parents_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// A shortest path from `a` to `b` (inclusive), or `None` if disconnected.
    pub fn shortest_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        // Search from b so that walking parents yields a path starting at a.
        let parent = self.parents_from(b);
        let mut path = vec![a];
        let mut v = a;
        while v != b {
            v = parent[v]?;
            path.push(v);
        }
        Some(path)
    }

    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return false;
        }
        self.distances_from(&[0]).iter().all(Option::is_some)
    }

    /// Whether the graph is a simple path (a single node counts).
    pub fn is_path(&self) -> bool {
        let n = self.adj.len();
        n > 0 && self.edge_count() == n - 1 && self.adj.iter().all(|l| l.len() <= 2) && self.is_connected()
    }

    /// Nodes in path order, starting at the smaller endpoint, if the graph is a path.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if !self.is_path() {
            return None;
        }
        let start = (0..self.adj.len()).find(|&v| self.adj[v].len() <= 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = self.adj[cur].iter().find(|&&w| w != prev) {
            prev = cur;
            cur = next;
            order.push(cur);
        }
        Some(order)
    }

    /// Whether `nodes`, in order, form an induced path: consecutive nodes
    /// adjacent, no repeated node and no chord.
    pub fn is_induced_path(&self, nodes: &[usize]) -> bool {
        let mut pos = vec![usize::MAX; self.adj.len()];
        for (i, &v) in nodes.iter().enumerate() {
            if pos[v] != usize::MAX {
                return false;
            }
            pos[v] = i;
        }
        nodes.iter().enumerate().all(|(i, &v)| {
            self.adj[v].iter().all(|&w| {
                let j = pos[w];
                j == usize::MAX || j + 1 == i || i + 1 == j
            }) && (i + 1 == nodes.len() || self.has_edge(v, nodes[i + 1]))
        })
    }

    /// Cartesian product `self □ other`; node `(i, j)` has index `i * other.len() + j`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let m = other.node_count();
        let mut edges = Vec::new();
        for i in 0..self.node_count() {
            for (a, b) in other.edges() {
                edges.push((i * m + a, i * m + b));
            }
        }
        for (a, b) in self.edges() {
            for j in 0..m {
                edges.push((a * m + j, b * m + j));
            }
        }
        Graph::from_edges(self.node_count() * m, edges)
    }

    /// Graphviz export.
    pub fn to_dot(&self, name: &str, labels: &[String]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{name}\" {{");
        for (v, label) in labels.iter().enumerate().take(self.adj.len()) {
            let _ = writeln!(out, "  n{v} [label=\"{}\"];", label.replace('"', "\\\""));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  n{a} -- n{b};");
        }
        out.push_str("}\n");
        out
    }
}
