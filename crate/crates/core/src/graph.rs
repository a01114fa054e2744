//! Undirected simple graphs on dense integer vertex ids.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// An undirected simple graph on vertices `0..n`.
///
/// Edges are stored as ordered pairs `(u, v)` with `u < v`, sorted
/// lexicographically; neighbour lists are sorted ascending. Both are
/// canonical, so equal graphs compare equal and serialize identically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph, normalizing edge endpoint order. Rejects self-loops,
    /// parallel edges and out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut es: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::BadParams(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::BadParams(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            es.push((a.min(b), a.max(b)));
        }
        es.sort_unstable();
        if es.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadParams("parallel edge".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &es {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: es, adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Vertices of each connected component, each sorted ascending;
    /// components ordered by their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// BFS distance from `root` to every vertex; `None` for unreachable ones.
    pub fn bfs_depths(&self, root: usize) -> Vec<Option<usize>> {
        let mut depth = vec![None; self.n];
        depth[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let du = depth[u].unwrap();
            for &w in &self.adj[u] {
                if depth[w].is_none() {
                    depth[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        depth
    }

    /// Induced subgraph on `vertices` (must be distinct). Returns the
    /// subgraph on local ids `0..vertices.len()` plus the local-to-global map,
    /// with local ids in ascending global order.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut map = vertices.to_vec();
        map.sort_unstable();
        debug_assert!(map.windows(2).all(|w| w[0] != w[1]));
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let mut es = Vec::new();
        for &v in &map {
            for &w in &self.adj[v] {
                if v < w && local[w] != usize::MAX {
                    es.push((local[v], local[w]));
                }
            }
        }
        let g = Graph::new(map.len(), es).expect("induced subgraph of a valid graph is valid");
        (g, map)
    }

    /// True iff the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        // A graph is a forest iff every component has |E| = |V| - 1,
        // i.e. globally m = n - #components.
        self.m() + self.components().len() == self.n || self.n == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson {
            n: self.n,
            edges: self.edges.clone(),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: GraphJson =
            serde_json::from_str(s).map_err(|e| Error::BadParams(format!("graph JSON: {e}")))?;
        Graph::new(raw.n, raw.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_self_loop_and_parallel_edges() {
        assert!(matches!(
            Graph::new(3, [(1, 1)]),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::BadParams(_))
        ));
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(Error::BadParams(_))
        ));
    }

    #[test]
    fn canonical_edge_order() {
        let g = Graph::new(4, [(3, 2), (1, 0), (0, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (2, 3)]);
        assert!(g.has_edge(2, 0));
        assert!(!g.has_edge(1, 2));
    }

    #[test]
    fn components_and_connectivity() {
        let g = Graph::new(5, [(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(!g.is_connected());
        assert!(g.is_forest());
        let h = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(h.is_connected());
        assert!(!h.is_forest());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let s = g.to_json();
        assert_eq!(s, r#"{"n":3,"edges":[[0,1],[1,2]]}"#);
        assert_eq!(Graph::from_json(&s).unwrap(), g);
    }

    #[test]
    fn induced_subgraph_relabels() {
        let g = Graph::new(5, [(0, 2), (2, 4), (1, 3)]).unwrap();
        let (h, map) = g.induced(&[4, 0, 2]);
        assert_eq!(map, vec![0, 2, 4]);
        assert_eq!(h.edges(), &[(0, 1), (1, 2)]);
    }
}
