//! Path and tree decompositions, plus completion of a decomposed graph to a
//! chordal supergraph (a connected k-tree).

use std::collections::VecDeque;

use crate::graph::Graph;
use crate::ordering::ktree_peo;
use crate::{Error, Result};

/// A sequence of bags `B_1, ..., B_r`. Valid for a graph when every vertex
/// lies in at least one bag, every edge lies inside some bag, and the bags
/// containing any fixed vertex are consecutive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    pub bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        PathDecomposition { bags }
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1) - 1
    }

    /// First and last bag index containing each vertex, or an error
    /// describing the violated condition.
    pub fn validate(&self, g: &Graph) -> Result<Vec<(usize, usize)>> {
        let mut span = vec![None; g.n()];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    return Err(Error::InvalidDecomposition(format!(
                        "bag {i} mentions vertex {v}, but n = {}",
                        g.n()
                    )));
                }
                span[v] = Some(match span[v] {
                    None => (i, i),
                    Some((l, _)) => (l, i),
                });
            }
        }
        let mut out = Vec::with_capacity(g.n());
        for v in 0..g.n() {
            let (l, r) = span[v].ok_or_else(|| {
                Error::InvalidDecomposition(format!("vertex {v} is in no bag"))
            })?;
            for i in l..=r {
                if self.bags[i].binary_search(&v).is_err() {
                    return Err(Error::InvalidDecomposition(format!(
                        "bags containing vertex {v} are not consecutive"
                    )));
                }
            }
            out.push((l, r));
        }
        for &(u, v) in g.edges() {
            let (lu, ru) = out[u];
            let (lv, rv) = out[v];
            if lu.max(lv) > ru.min(rv) {
                return Err(Error::InvalidDecomposition(format!(
                    "edge ({u}, {v}) lies in no bag"
                )));
            }
        }
        Ok(out)
    }
}

/// Bags on the nodes of a tree. `tree_edges` connect bag indices and must
/// form a tree over all bags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<usize>>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, tree_edges: Vec<(usize, usize)>) -> Self {
        let bags = bags
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b.dedup();
                b
            })
            .collect();
        TreeDecomposition { bags, tree_edges }
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).max(1) - 1
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        let r = self.bags.len();
        if r == 0 {
            if g.n() == 0 {
                return Ok(());
            }
            return Err(Error::InvalidDecomposition("no bags".into()));
        }
        let skeleton = Graph::new(r, self.tree_edges.iter().copied())
            .map_err(|e| Error::InvalidDecomposition(format!("tree edges: {e}")))?;
        if !skeleton.is_connected() || skeleton.m() != r - 1 {
            return Err(Error::InvalidDecomposition(
                "tree edges do not form a tree on the bags".into(),
            ));
        }
        // Coverage of vertices and edges.
        let mut holds: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= g.n() {
                    return Err(Error::InvalidDecomposition(format!(
                        "bag {i} mentions vertex {v}, but n = {}",
                        g.n()
                    )));
                }
                holds[v].push(i);
            }
        }
        if let Some(v) = (0..g.n()).find(|&v| holds[v].is_empty()) {
            return Err(Error::InvalidDecomposition(format!(
                "vertex {v} is in no bag"
            )));
        }
        for &(u, v) in g.edges() {
            let ok = holds[u]
                .iter()
                .any(|&i| self.bags[i].binary_search(&v).is_ok());
            if !ok {
                return Err(Error::InvalidDecomposition(format!(
                    "edge ({u}, {v}) lies in no bag"
                )));
            }
        }
        // The bags containing any vertex induce a connected subtree.
        for v in 0..g.n() {
            let mut seen = vec![false; r];
            let start = holds[v][0];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut reached = 1;
            while let Some(b) = queue.pop_front() {
                for &c in skeleton.neighbours(b) {
                    if !seen[c] && self.bags[c].binary_search(&v).is_ok() {
                        seen[c] = true;
                        reached += 1;
                        queue.push_back(c);
                    }
                }
            }
            if reached != holds[v].len() {
                return Err(Error::InvalidDecomposition(format!(
                    "bags containing vertex {v} are not connected in the tree"
                )));
            }
        }
        Ok(())
    }
}

/// Adds the fill edges that turn every bag of a valid tree-decomposition
/// into a clique, producing a connected k-tree (k = decomposition width)
/// that contains `g` as a subgraph. If the filled graph is still
/// disconnected, bridge edges between component representatives are added
/// as well (the result is then a tree of the components, still chordal).
///
/// Returns the supergraph together with the added edges, so callers can
/// relate layouts of the completion back to `g`: any layout or drawing of
/// the supergraph restricts to one of `g` by simply ignoring those edges.
pub fn complete_to_ktree(g: &Graph, td: &TreeDecomposition) -> Result<(Graph, Vec<(usize, usize)>)> {
    td.validate(g)?;
    let mut added = Vec::new();
    let mut all: Vec<(usize, usize)> = g.edges().to_vec();
    for bag in &td.bags {
        for (i, &u) in bag.iter().enumerate() {
            for &v in &bag[i + 1..] {
                if !g.has_edge(u, v) && !added.contains(&(u, v)) {
                    added.push((u, v));
                    all.push((u, v));
                }
            }
        }
    }
    let mut h = Graph::new(g.n(), all.iter().copied())?;
    let comps = h.components();
    if comps.len() > 1 && g.n() > 0 {
        let hub = comps[0][0];
        for comp in &comps[1..] {
            added.push((hub.min(comp[0]), hub.max(comp[0])));
            all.push((hub, comp[0]));
        }
        h = Graph::new(g.n(), all)?;
    }
    added.sort_unstable();
    if g.n() > 0 {
        let (k, _) = ktree_peo(&h).map_err(|e| {
            Error::Internal(format!("filled decomposition graph must be chordal: {e}"))
        })?;
        debug_assert!(k <= td.width().max(1));
    }
    Ok((h, added))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn path_decomposition_validation() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let pd = PathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        let spans = pd.validate(&g).unwrap();
        assert_eq!(spans[1], (0, 1));
        assert_eq!(pd.width(), 1);

        let bad = PathDecomposition::new(vec![vec![0, 1], vec![2, 3], vec![1, 2]]);
        assert!(matches!(
            bad.validate(&g),
            Err(Error::InvalidDecomposition(_))
        ));
        let missing_edge = PathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![3]]);
        assert!(matches!(
            missing_edge.validate(&g),
            Err(Error::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn completing_c4_adds_one_chord() {
        let g = c4();
        let td = TreeDecomposition::new(vec![vec![0, 1, 2], vec![0, 2, 3]], vec![(0, 1)]);
        let (h, added) = complete_to_ktree(&g, &td).unwrap();
        assert_eq!(added, vec![(0, 2)]);
        assert_eq!(h.m(), 5);
        let (k, _) = ktree_peo(&h).unwrap();
        assert_eq!(k, 2);
    }

    #[test]
    fn completion_bridges_disconnected_input() {
        let g = Graph::new(4, [(0, 1), (2, 3)]).unwrap();
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2, 3]], vec![(0, 1)]);
        let (h, added) = complete_to_ktree(&g, &td).unwrap();
        assert!(h.is_connected());
        assert_eq!(added, vec![(0, 2)]);
    }

    #[test]
    fn completion_rejects_invalid_decomposition() {
        let g = c4();
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2, 3]], vec![(0, 1)]);
        assert!(matches!(
            complete_to_ktree(&g, &td),
            Err(Error::InvalidDecomposition(_))
        ));
    }

    #[test]
    fn tree_decomposition_skeleton_must_be_tree() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![]);
        assert!(matches!(
            td.validate(&g),
            Err(Error::InvalidDecomposition(_))
        ));
    }
}
