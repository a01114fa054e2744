//! Deterministic graph generators. Randomized families are seeded and
//! reproducible across platforms (ChaCha stream).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::TreeDecomposition;
use crate::graph::Graph;
use crate::{Error, Result};

pub const DEFAULT_GK_VERTEX_BUDGET: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Path on `n` vertices, edges `i`-`i+1`.
    Path { n: usize },
    /// Cycle on `n >= 3` vertices.
    Cycle { n: usize },
    /// Star on `n >= 2` vertices: centre 0, leaves `1..n`.
    Star { n: usize },
    /// Complete graph on `n >= 1` vertices.
    Complete { n: usize },
    /// Grid with `rows x cols` vertices, id = row * cols + col.
    Grid { rows: usize, cols: usize },
    /// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
    RandomTree { n: usize },
    /// Random strict k-tree: start from K_k, then each new vertex is joined
    /// to a uniformly chosen k-clique of the graph built so far.
    RandomKTree { k: usize, n: usize },
    /// The extremal bounded-tree-width family G_k.
    Gk { k: usize },
}

/// A generated graph plus construction metadata where the family has any.
#[derive(Debug, Clone)]
pub struct Generated {
    pub graph: Graph,
    /// For `RandomKTree`: each added vertex with its host clique, in order.
    pub ktree_additions: Option<Vec<(usize, Vec<usize>)>>,
    /// For `Gk`: a width-k tree-decomposition built alongside the graph.
    pub decomposition: Option<TreeDecomposition>,
}

impl Generated {
    fn plain(graph: Graph) -> Self {
        Generated {
            graph,
            ktree_additions: None,
            decomposition: None,
        }
    }
}

pub fn generate(family: Family, seed: u64) -> Result<Generated> {
    match family {
        Family::Path { n } => {
            require(n >= 1, "path needs n >= 1")?;
            Ok(Generated::plain(Graph::new(
                n,
                (1..n).map(|i| (i - 1, i)),
            )?))
        }
        Family::Cycle { n } => {
            require(n >= 3, "cycle needs n >= 3")?;
            let edges = (0..n).map(|i| (i, (i + 1) % n));
            Ok(Generated::plain(Graph::new(n, edges)?))
        }
        Family::Star { n } => {
            require(n >= 2, "star needs n >= 2")?;
            Ok(Generated::plain(Graph::new(n, (1..n).map(|i| (0, i)))?))
        }
        Family::Complete { n } => {
            require(n >= 1, "complete graph needs n >= 1")?;
            let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Ok(Generated::plain(Graph::new(n, edges)?))
        }
        Family::Grid { rows, cols } => {
            require(rows >= 1 && cols >= 1, "grid needs rows, cols >= 1")?;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        edges.push((v, v + 1));
                    }
                    if r + 1 < rows {
                        edges.push((v, v + cols));
                    }
                }
            }
            Ok(Generated::plain(Graph::new(rows * cols, edges)?))
        }
        Family::RandomTree { n } => {
            require(n >= 1, "tree needs n >= 1")?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let edges: Vec<(usize, usize)> =
                (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
            Ok(Generated::plain(Graph::new(n, edges)?))
        }
        Family::RandomKTree { k, n } => random_ktree(k, n, seed),
        Family::Gk { k } => {
            let (graph, td) = generate_gk(k, DEFAULT_GK_VERTEX_BUDGET)?;
            Ok(Generated {
                graph,
                ktree_additions: None,
                decomposition: Some(td),
            })
        }
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::BadParams(msg.into()))
    }
}

fn random_ktree(k: usize, n: usize, seed: u64) -> Result<Generated> {
    require(n >= k.max(1), "k-tree needs n >= max(k, 1)")?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..k {
        for v in u + 1..k {
            edges.push((u, v));
        }
    }
    // All k-cliques of the graph built so far. Adding v to clique C creates
    // exactly the k cliques (C minus one member) plus v.
    let mut cliques: Vec<Vec<usize>> = if k == 0 {
        vec![Vec::new()]
    } else {
        vec![(0..k).collect()]
    };
    let mut additions = Vec::new();
    for v in k..n {
        let host = cliques[rng.gen_range(0..cliques.len())].clone();
        for &u in &host {
            edges.push((u, v));
        }
        for drop in 0..host.len() {
            let mut nc: Vec<usize> = host
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != drop)
                .map(|(_, &u)| u)
                .collect();
            nc.push(v);
            cliques.push(nc);
        }
        additions.push((v, host));
    }
    Ok(Generated {
        graph: Graph::new(n, edges)?,
        ktree_additions: Some(additions),
        decomposition: None,
    })
}

/// Number of middle vertices of G_k: n = 2(t(k) - 1 - k) + 1 where
/// t(k) = (k+1)(k+2)/2 is the track number of G_k.
pub fn gk_middle_count(k: usize) -> usize {
    2 * (gk_track_count(k) - 1 - k) + 1
}

pub fn gk_track_count(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

pub fn gk_vertex_count(k: usize) -> usize {
    if k == 0 {
        1
    } else {
        let inner = gk_vertex_count(k - 1);
        let mid = gk_middle_count(k);
        k + mid + mid * inner
    }
}

/// The family realizing the track-number lower bound: G_0 = K_1, and G_k is
/// a k-clique joined to n middle vertices, each of which is also joined to
/// every vertex of a private copy of G_{k-1}.
///
/// Vertex ids: clique `0..k`, then middles, then the copies consecutively.
/// Also returns a width-k tree-decomposition of the result.
pub fn generate_gk(k: usize, vertex_budget: usize) -> Result<(Graph, TreeDecomposition)> {
    let total = gk_vertex_count(k);
    if total > vertex_budget {
        return Err(Error::ResourceLimit(format!(
            "G_{k} has {total} vertices, budget is {vertex_budget}"
        )));
    }
    let mut edges = Vec::new();
    let mut bags = Vec::new();
    let mut tree_edges = Vec::new();
    gk_build(k, 0, &mut edges, &mut bags, &mut tree_edges);
    let g = Graph::new(total, edges)?;
    let td = TreeDecomposition::new(bags, tree_edges);
    Ok((g, td))
}

/// Appends G_k on ids `base..base + |G_k|`; returns the index of a bag that
/// contains the outer boundary (for G_0 the single vertex, otherwise any bag
/// containing the k-clique) so the caller can attach to it.
fn gk_build(
    k: usize,
    base: usize,
    edges: &mut Vec<(usize, usize)>,
    bags: &mut Vec<Vec<usize>>,
    tree_edges: &mut Vec<(usize, usize)>,
) -> usize {
    if k == 0 {
        bags.push(vec![base]);
        return bags.len() - 1;
    }
    let mid = gk_middle_count(k);
    let inner = gk_vertex_count(k - 1);
    let clique: Vec<usize> = (base..base + k).collect();
    for (i, &u) in clique.iter().enumerate() {
        for &v in &clique[i + 1..] {
            edges.push((u, v));
        }
    }
    let mut prev_clique_bag = None;
    for j in 0..mid {
        let w = base + k + j;
        for &u in &clique {
            edges.push((u, w));
        }
        // Bag {clique, w_j}; the bags for consecutive j form a path.
        let mut bag = clique.clone();
        bag.push(w);
        bags.push(bag);
        let bag_idx = bags.len() - 1;
        if let Some(prev) = prev_clique_bag {
            tree_edges.push((prev, bag_idx));
        }
        prev_clique_bag = Some(bag_idx);

        let copy_base = base + k + mid + j * inner;
        for u in copy_base..copy_base + inner {
            edges.push((w, u));
        }
        let first_inner_bag = bags.len();
        let attach = gk_build(k - 1, copy_base, edges, bags, tree_edges);
        // Lift the copy's decomposition to width k by adding w_j everywhere.
        for bag in bags[first_inner_bag..].iter_mut() {
            bag.push(w);
        }
        tree_edges.push((bag_idx, attach));
    }
    prev_clique_bag.expect("mid >= 1")
}
