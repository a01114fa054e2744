//! Vertex orderings: breadth-first orderings and perfect elimination
//! orderings of chordal graphs.

use crate::graph::Graph;
use crate::{Error, Result};

/// A permutation of the vertices, optionally annotated with a depth per
/// vertex (non-decreasing along the sequence when present).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexOrdering {
    sequence: Vec<usize>,
    position: Vec<usize>,
    depth: Option<Vec<usize>>,
}

impl VertexOrdering {
    pub fn new(sequence: Vec<usize>, depth: Option<Vec<usize>>) -> Result<Self> {
        let n = sequence.len();
        let mut position = vec![usize::MAX; n];
        for (i, &v) in sequence.iter().enumerate() {
            if v >= n || position[v] != usize::MAX {
                return Err(Error::BadParams("sequence is not a permutation".into()));
            }
            position[v] = i;
        }
        if let Some(d) = &depth {
            if d.len() != n {
                return Err(Error::BadParams("depth map has wrong length".into()));
            }
            if sequence.windows(2).any(|w| d[w[0]] > d[w[1]]) {
                return Err(Error::BadParams(
                    "depth must be non-decreasing along the sequence".into(),
                ));
            }
        }
        Ok(VertexOrdering {
            sequence,
            position,
            depth,
        })
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// Position of vertex `v` in the sequence.
    pub fn position(&self, v: usize) -> usize {
        self.position[v]
    }

    pub fn depth(&self, v: usize) -> Option<usize> {
        self.depth.as_ref().map(|d| d[v])
    }

    pub fn depths(&self) -> Option<&[usize]> {
        self.depth.as_deref()
    }
}

/// Breadth-first ordering from `root`: vertices appear by increasing BFS
/// depth; within a depth, children follow the order of their parents (the
/// parent of a vertex is its earliest-ordered neighbour one level up), and
/// children of a common parent are taken ascending by vertex id.
///
/// The depth map records the BFS distance from `root`.
pub fn lex_bfs(g: &Graph, root: usize) -> Result<VertexOrdering> {
    if root >= g.n() {
        return Err(Error::BadParams(format!("root {root} out of range")));
    }
    let mut order = Vec::with_capacity(g.n());
    let mut depth = vec![usize::MAX; g.n()];
    depth[root] = 0;
    order.push(root);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbours(u) {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                order.push(w);
            }
        }
    }
    if order.len() != g.n() {
        return Err(Error::DisconnectedGraph);
    }
    VertexOrdering::new(order, Some(depth))
}

/// Lexicographic breadth-first search (partition refinement), smallest
/// vertex id on ties. On a chordal graph the earlier neighbours of every
/// vertex form a clique; on any connected graph the result is a valid
/// breadth-first ordering from `root`.
pub fn lex_bfs_rtl(g: &Graph, root: usize) -> Vec<usize> {
    // Cells hold unvisited vertices; the front cell has lexicographically
    // largest label. Each step takes the smallest id from the front cell and
    // splits every cell into (neighbours, non-neighbours), neighbours first.
    let mut cells: Vec<Vec<usize>> = Vec::new();
    let rest: Vec<usize> = (0..g.n()).filter(|&v| v != root).collect();
    cells.push(vec![root]);
    if !rest.is_empty() {
        cells.push(rest);
    }
    let mut order = Vec::with_capacity(g.n());
    let mut is_nb = vec![false; g.n()];
    while let Some(front) = cells.first_mut() {
        let v = *front.iter().min().expect("cells are never empty");
        front.retain(|&x| x != v);
        if front.is_empty() {
            cells.remove(0);
        }
        order.push(v);
        for &w in g.neighbours(v) {
            is_nb[w] = true;
        }
        let mut next = Vec::with_capacity(cells.len() * 2);
        for cell in cells.drain(..) {
            let (nb, other): (Vec<usize>, Vec<usize>) =
                cell.into_iter().partition(|&x| is_nb[x]);
            if !nb.is_empty() {
                next.push(nb);
            }
            if !other.is_empty() {
                next.push(other);
            }
        }
        cells = next;
        for &w in g.neighbours(v) {
            is_nb[w] = false;
        }
    }
    order
}

/// Checks that `order` is a construction order with clique back-neighbourhoods:
/// for every vertex, its earlier neighbours are pairwise adjacent. Returns the
/// maximum back-neighbourhood size. Uses the classic single-witness test: it
/// suffices to check the back-set against its latest member.
fn max_back_clique(g: &Graph, order: &[usize]) -> Result<usize> {
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut k = 0;
    for &v in order {
        let mut back: Vec<usize> = g
            .neighbours(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] < pos[v])
            .collect();
        k = k.max(back.len());
        if back.len() >= 2 {
            back.sort_unstable_by_key(|&w| pos[w]);
            let latest = *back.last().unwrap();
            for &w in &back[..back.len() - 1] {
                if !g.has_edge(latest, w) {
                    return Err(Error::NotPeo(format!(
                        "earlier neighbours {w} and {latest} of {v} are not adjacent"
                    )));
                }
            }
        }
    }
    Ok(k)
}

/// Construction ordering of a connected k-tree, returning the minimum `k`.
///
/// The ordering starts at a minimum-degree vertex (smallest id on ties), is
/// breadth-first on every prefix, and the earlier neighbours of each vertex
/// form a clique of size at most `k`. Fails with `NotChordal` when no such
/// ordering exists and `DisconnectedGraph` when the graph is not connected.
pub fn ktree_peo(g: &Graph) -> Result<(usize, VertexOrdering)> {
    let root = min_degree_vertex(g)
        .ok_or_else(|| Error::BadParams("ktree_peo needs at least one vertex".into()))?;
    ktree_peo_from(g, root)
}

/// Same as [`ktree_peo`] with an explicit start vertex.
pub fn ktree_peo_from(g: &Graph, root: usize) -> Result<(usize, VertexOrdering)> {
    if root >= g.n() {
        return Err(Error::BadParams(format!("root {root} out of range")));
    }
    let d = g.bfs_depths(root);
    if d.iter().any(Option::is_none) {
        return Err(Error::DisconnectedGraph);
    }
    let order = lex_bfs_rtl(g, root);
    let k = max_back_clique(g, &order).map_err(|_| Error::NotChordal)?;
    let depth: Vec<usize> = (0..g.n()).map(|v| d[v].unwrap()).collect();
    let ordering = VertexOrdering::new(order, Some(depth))?;
    debug_assert!(ordering
        .sequence()
        .windows(2)
        .all(|w| ordering.depth(w[0]) <= ordering.depth(w[1])));
    Ok((k, ordering))
}

/// Smallest-id vertex of minimum degree, or `None` for the empty graph.
pub fn min_degree_vertex(g: &Graph) -> Option<usize> {
    (0..g.n()).min_by_key(|&v| (g.degree(v), v))
}

pub fn is_chordal(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        let (h, _) = g.induced(comp);
        ktree_peo(&h).is_ok()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_bfs_star_center_first_then_leaves_ascending() {
        // K_{1,3} with center 0.
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let o = lex_bfs(&g, 0).unwrap();
        assert_eq!(o.sequence(), &[0, 1, 2, 3]);
        assert_eq!(o.depth(3), Some(1));
    }

    #[test]
    fn lex_bfs_depth_equals_bfs_distance() {
        let g = Graph::new(6, [(0, 1), (0, 2), (1, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        let o = lex_bfs(&g, 0).unwrap();
        let dist = g.bfs_depths(0);
        for v in 0..6 {
            assert_eq!(o.depth(v), dist[v]);
        }
        // Same-depth vertices follow their parents' order.
        assert!(o.position(3) < o.position(4));
    }

    #[test]
    fn lex_bfs_rejects_disconnected() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(lex_bfs(&g, 0), Err(Error::DisconnectedGraph));
    }

    #[test]
    fn ktree_peo_path_is_one_tree() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let (k, o) = ktree_peo(&g).unwrap();
        assert_eq!(k, 1);
        assert_eq!(o.sequence()[0], 0); // endpoint has minimum degree
    }

    #[test]
    fn ktree_peo_on_c4_fails_not_chordal() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(ktree_peo(&g), Err(Error::NotChordal));
    }

    #[test]
    fn ktree_peo_k2() {
        // Two triangles sharing an edge: a 2-tree.
        let g = Graph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let (k, o) = ktree_peo(&g).unwrap();
        assert_eq!(k, 2);
        // Every prefix is connected.
        for i in 1..=4 {
            let (h, _) = g.induced(&o.sequence()[..i]);
            assert!(h.is_connected());
        }
    }

    #[test]
    fn ktree_peo_single_vertex() {
        let g = Graph::empty(1);
        let (k, o) = ktree_peo(&g).unwrap();
        assert_eq!(k, 0);
        assert_eq!(o.sequence(), &[0]);
    }

    #[test]
    fn chordality() {
        assert!(is_chordal(&Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()));
        assert!(!is_chordal(
            &Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap()
        ));
        // Disconnected chordal graph.
        assert!(is_chordal(&Graph::new(5, [(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap()));
    }
}
