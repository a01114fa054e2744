//! Vertex colourings: the greedy acyclic colouring of a k-tree along a
//! construction ordering, and an exact verifier for acyclicity.

use crate::graph::Graph;
use crate::ordering::VertexOrdering;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    colours: Vec<usize>,
    colour_count: usize,
}

impl Colouring {
    pub fn new(colours: Vec<usize>, colour_count: usize) -> Result<Self> {
        if colours.iter().any(|&c| c >= colour_count) {
            return Err(Error::BadParams("colour index out of range".into()));
        }
        Ok(Colouring {
            colours,
            colour_count,
        })
    }

    pub fn colour(&self, v: usize) -> usize {
        self.colours[v]
    }

    pub fn colours(&self) -> &[usize] {
        &self.colours
    }

    pub fn colour_count(&self) -> usize {
        self.colour_count
    }
}

/// Greedy colouring along a k-tree construction ordering: each vertex takes
/// the smallest colour absent from its earlier neighbours. Since those
/// neighbours form a clique of size at most `k`, at most `k + 1` colours are
/// used, and the colouring is proper.
///
/// It is also acyclic: the last vertex of a bichromatic cycle would have two
/// earlier neighbours on the cycle inside its back-clique, adjacent to each
/// other yet forced to share a colour.
pub fn acyclic_colouring_ktree(g: &Graph, order: &VertexOrdering, k: usize) -> Result<Colouring> {
    if order.len() != g.n() {
        return Err(Error::BadParams("ordering length differs from n".into()));
    }
    let mut colours = vec![usize::MAX; g.n()];
    for &v in order.sequence() {
        let back: Vec<usize> = g
            .neighbours(v)
            .iter()
            .copied()
            .filter(|&w| order.position(w) < order.position(v))
            .collect();
        if back.len() > k {
            return Err(Error::NotPeo(format!(
                "vertex {v} has {} earlier neighbours, more than k = {k}",
                back.len()
            )));
        }
        for (i, &a) in back.iter().enumerate() {
            for &b in &back[i + 1..] {
                if !g.has_edge(a, b) {
                    return Err(Error::NotPeo(format!(
                        "earlier neighbours {a} and {b} of {v} are not adjacent"
                    )));
                }
            }
        }
        let used: Vec<usize> = back.iter().map(|&w| colours[w]).collect();
        colours[v] = (0..=k).find(|c| !used.contains(c)).expect("k+1 colours suffice");
    }
    let colour_count = colours.iter().copied().max().map_or(0, |c| c + 1);
    Colouring::new(colours, colour_count)
}

/// Result of checking a colouring for properness and acyclicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColouringReport {
    /// Edges whose endpoints share a colour.
    pub improper_edges: Vec<(usize, usize)>,
    /// Colour pairs whose bichromatic subgraph contains a cycle.
    pub cyclic_pairs: Vec<(usize, usize)>,
    pub colour_count: usize,
}

impl ColouringReport {
    pub fn pass(&self) -> bool {
        self.improper_edges.is_empty() && self.cyclic_pairs.is_empty()
    }
}

/// Checks that `c` is proper and that the union of every two colour classes
/// induces a forest (detected with union-find per colour pair).
pub fn verify_acyclic_colouring(g: &Graph, c: &Colouring) -> ColouringReport {
    let mut improper = Vec::new();
    let mut buckets: std::collections::BTreeMap<(usize, usize), Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    for &(u, v) in g.edges() {
        let (cu, cv) = (c.colour(u), c.colour(v));
        if cu == cv {
            improper.push((u, v));
        } else {
            buckets
                .entry((cu.min(cv), cu.max(cv)))
                .or_default()
                .push((u, v));
        }
    }
    let mut cyclic = Vec::new();
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (&pair, edges) in &buckets {
        for &(u, v) in edges {
            parent[u] = u;
            parent[v] = v;
        }
        let mut has_cycle = false;
        for &(u, v) in edges {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                has_cycle = true;
                break;
            }
            parent[ru] = rv;
        }
        if has_cycle {
            cyclic.push(pair);
        }
    }
    ColouringReport {
        improper_edges: improper,
        cyclic_pairs: cyclic,
        colour_count: c.colour_count(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::ktree_peo;

    #[test]
    fn greedy_on_two_tree_uses_three_colours_and_verifies() {
        let g = Graph::new(5, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]).unwrap();
        let (k, order) = ktree_peo(&g).unwrap();
        assert_eq!(k, 2);
        let c = acyclic_colouring_ktree(&g, &order, k).unwrap();
        assert!(c.colour_count() <= 3);
        assert!(verify_acyclic_colouring(&g, &c).pass());
    }

    #[test]
    fn alternating_two_colouring_of_c4_is_proper_but_cyclic() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let c = Colouring::new(vec![0, 1, 0, 1], 2).unwrap();
        let report = verify_acyclic_colouring(&g, &c);
        assert!(report.improper_edges.is_empty());
        assert_eq!(report.cyclic_pairs, vec![(0, 1)]);
        assert!(!report.pass());
    }

    #[test]
    fn improper_colouring_is_reported() {
        let g = Graph::new(2, [(0, 1)]).unwrap();
        let c = Colouring::new(vec![0, 0], 1).unwrap();
        let report = verify_acyclic_colouring(&g, &c);
        assert_eq!(report.improper_edges, vec![(0, 1)]);
    }

    #[test]
    fn rejects_orders_that_are_not_construction_orders() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap(); // C_4
        let order = VertexOrdering::new(vec![0, 1, 2, 3], None).unwrap();
        // Vertex 3's earlier neighbours {0, 2} are not adjacent.
        assert!(matches!(
            acyclic_colouring_ktree(&g, &order, 2),
            Err(Error::NotPeo(_))
        ));
    }
}
