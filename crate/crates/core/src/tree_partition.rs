//! Tree-partitions of k-trees.
//!
//! A tree-partition places every vertex in exactly one bag, the bags forming
//! a rooted tree such that every edge of the graph lies inside a bag or
//! between a bag and its parent. For a k-tree, layering a construction
//! ordering by breadth-first depth and splitting each layer into connected
//! components yields a tree-partition whose bags induce connected
//! (k-1)-trees and whose width is at most max{1, k(maxdeg - 1)}.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::ordering::{ktree_peo, ktree_peo_from, min_degree_vertex};
use crate::{Error, Result};

/// Rooted tree of bags. Node 0 is the root; `parent[0]` is `None`.
/// `parent_clique[x]` is the set of vertices in the parent bag with a
/// neighbour in bag `x` (empty at the root).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePartition {
    pub parent: Vec<Option<usize>>,
    pub bags: Vec<Vec<usize>>,
    pub parent_clique: Vec<Vec<usize>>,
    pub depth: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TreePartitionJson {
    parent: Vec<Option<usize>>,
    bags: Vec<Vec<usize>>,
    parent_clique: Vec<Vec<usize>>,
}

impl TreePartition {
    pub fn node_count(&self) -> usize {
        self.bags.len()
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Children of each node, ascending.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.node_count()];
        for (x, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(x);
            }
        }
        ch
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TreePartitionJson {
            parent: self.parent.clone(),
            bags: self.bags.clone(),
            parent_clique: self.parent_clique.clone(),
        })
        .expect("tree-partition serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: TreePartitionJson = serde_json::from_str(s)
            .map_err(|e| Error::BadParams(format!("tree-partition JSON: {e}")))?;
        let nodes = raw.bags.len();
        if raw.parent.len() != nodes || raw.parent_clique.len() != nodes {
            return Err(Error::InvalidTreePartition(
                "parent, bags and parent_clique must have equal length".into(),
            ));
        }
        // Depth is derivable from the parent map.
        let mut depth = vec![usize::MAX; nodes];
        fn resolve(
            x: usize,
            parent: &[Option<usize>],
            depth: &mut [usize],
            guard: usize,
        ) -> Result<usize> {
            if guard == 0 {
                return Err(Error::InvalidTreePartition("parent map has a cycle".into()));
            }
            if depth[x] != usize::MAX {
                return Ok(depth[x]);
            }
            let d = match parent[x] {
                None => 0,
                Some(p) => resolve(p, parent, depth, guard - 1)? + 1,
            };
            depth[x] = d;
            Ok(d)
        }
        for x in 0..nodes {
            resolve(x, &raw.parent, &mut depth, nodes + 1)?;
        }
        Ok(TreePartition {
            parent: raw.parent,
            bags: raw.bags,
            parent_clique: raw.parent_clique,
            depth,
        })
    }
}

/// Builds the tree-partition of a k-tree by breadth-first layering.
///
/// Connected input: the ordering starts at a minimum-degree vertex, the
/// layers are the BFS depth classes, and each bag is a connected component
/// of the subgraph induced by one layer. Each bag's neighbours in the layer
/// above form a clique and therefore lie in a single parent bag.
///
/// Disconnected input: per-component partitions are joined under a new
/// empty root bag, with all depths shifted by one.
pub fn build_tree_partition(g: &Graph, k: usize) -> Result<TreePartition> {
    if k == 0 {
        return Err(Error::BadParams("tree-partition needs k >= 1".into()));
    }
    if g.n() == 0 {
        return Err(Error::BadParams("tree-partition needs a non-empty graph".into()));
    }
    let comps = g.components();
    if comps.len() == 1 {
        return build_connected(g, k, None);
    }
    let mut parent = vec![None];
    let mut bags = vec![Vec::new()];
    let mut parent_clique = vec![Vec::new()];
    let mut depth = vec![0];
    for comp in comps {
        let (h, map) = g.induced(&comp);
        let sub = build_connected(&h, k, Some(&map))?;
        let offset = bags.len();
        for x in 0..sub.node_count() {
            parent.push(Some(match sub.parent[x] {
                None => 0,
                Some(p) => p + offset,
            }));
            bags.push(sub.bags[x].clone());
            parent_clique.push(sub.parent_clique[x].clone());
            depth.push(sub.depth[x] + 1);
        }
    }
    Ok(TreePartition {
        parent,
        bags,
        parent_clique,
        depth,
    })
}

/// `map`, when given, translates local vertex ids back to the caller's ids
/// in the emitted bags; the graph itself is always laid out on local ids.
fn build_connected(g: &Graph, k: usize, map: Option<&[usize]>) -> Result<TreePartition> {
    let root = min_degree_vertex(g).expect("non-empty");
    let (kk, order) = match ktree_peo_from(g, root) {
        Ok(v) => v,
        Err(Error::NotChordal) => {
            return Err(Error::NotKTree("graph is not chordal".into()))
        }
        Err(e) => return Err(e),
    };
    if kk > k {
        return Err(Error::NotKTree(format!(
            "construction ordering needs back-cliques of size {kk} > k = {k}"
        )));
    }
    let n = g.n();
    let depth_of = |v: usize| order.depth(v).expect("peo carries depths");
    let max_depth = (0..n).map(depth_of).max().unwrap_or(0);

    // Layer components via union-find over intra-layer edges.
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut [usize], mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    for &(u, v) in g.edges() {
        if depth_of(u) == depth_of(v) {
            let (ru, rv) = (find(&mut uf, u), find(&mut uf, v));
            if ru != rv {
                uf[ru.max(rv)] = ru.min(rv);
            }
        }
    }
    // Bags grouped by (depth, smallest member), nodes numbered by depth.
    let mut roots: Vec<Vec<usize>> = vec![Vec::new(); max_depth + 1];
    for v in 0..n {
        if find(&mut uf, v) == v {
            roots[depth_of(v)].push(v);
        }
    }
    let mut node_of_root = vec![usize::MAX; n];
    let mut node = 0;
    for layer in &roots {
        for &r in layer {
            node_of_root[r] = node;
            node += 1;
        }
    }
    let mut bags: Vec<Vec<usize>> = vec![Vec::new(); node];
    let mut depth = vec![0; node];
    for v in 0..n {
        let x = node_of_root[find(&mut uf, v)];
        bags[x].push(v);
        depth[x] = depth_of(v);
    }
    // Attach each bag to the unique parent bag holding its up-neighbours.
    let mut node_of = vec![usize::MAX; n];
    for (x, bag) in bags.iter().enumerate() {
        for &v in bag {
            node_of[v] = x;
        }
    }
    let mut parent = vec![None; node];
    let mut parent_clique: Vec<Vec<usize>> = vec![Vec::new(); node];
    for (x, bag) in bags.iter().enumerate() {
        if depth[x] == 0 {
            continue;
        }
        let mut clique = Vec::new();
        let mut p = usize::MAX;
        for &v in bag {
            for &u in g.neighbours(v) {
                if depth_of(u) + 1 == depth_of(v) {
                    if p == usize::MAX {
                        p = node_of[u];
                    } else if p != node_of[u] {
                        return Err(Error::NotKTree(
                            "parent vertices of a bag span two bags".into(),
                        ));
                    }
                    if !clique.contains(&u) {
                        clique.push(u);
                    }
                }
            }
        }
        debug_assert_ne!(p, usize::MAX, "breadth-first layers leave no orphan bag");
        parent[x] = Some(p);
        clique.sort_unstable();
        parent_clique[x] = clique;
    }
    if let Some(map) = map {
        for bag in &mut bags {
            for v in bag.iter_mut() {
                *v = map[*v];
            }
        }
        for clique in &mut parent_clique {
            for v in clique.iter_mut() {
                *v = map[*v];
            }
        }
    }
    Ok(TreePartition {
        parent,
        bags,
        parent_clique,
        depth,
    })
}

/// Per-check results for a tree-partition of a k-tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePartitionReport {
    /// Parent map is a tree rooted at node 0 and child depths increment.
    pub tree_ok: bool,
    /// Bags partition the vertex set.
    pub partition_ok: bool,
    /// Every edge is intra-bag or between a bag and its parent.
    pub edges_ok: bool,
    /// Parent vertices with a neighbour in a bag are pairwise adjacent.
    pub claim_ok: bool,
    /// Stored parent cliques match the recomputed sets.
    pub parent_clique_ok: bool,
    /// Every non-empty bag induces a connected (k-1)-tree.
    pub bags_ok: bool,
    /// max bag size <= max{1, k(maxdeg - 1)}.
    pub width_ok: bool,
    pub width: usize,
    pub failures: Vec<String>,
}

impl TreePartitionReport {
    pub fn pass(&self) -> bool {
        self.tree_ok
            && self.partition_ok
            && self.edges_ok
            && self.claim_ok
            && self.parent_clique_ok
            && self.bags_ok
            && self.width_ok
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("tree structure: {}", ok(self.tree_ok)),
            format!("vertex partition: {}", ok(self.partition_ok)),
            format!("edge locality: {}", ok(self.edges_ok)),
            format!("parent clique property: {}", ok(self.claim_ok)),
            format!("stored parent cliques: {}", ok(self.parent_clique_ok)),
            format!("bags induce connected (k-1)-trees: {}", ok(self.bags_ok)),
            format!("width {} within bound: {}", self.width, ok(self.width_ok)),
        ];
        lines.extend(self.failures.iter().cloned());
        lines
    }
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAIL"
    }
}

pub fn verify_tree_partition(g: &Graph, tp: &TreePartition, k: usize) -> TreePartitionReport {
    let nodes = tp.node_count();
    let mut failures = Vec::new();

    let mut tree_ok = nodes > 0
        && tp.parent.len() == nodes
        && tp.parent_clique.len() == nodes
        && tp.depth.len() == nodes;
    if tree_ok {
        let roots = tp.parent.iter().filter(|p| p.is_none()).count();
        tree_ok &= roots == 1 && tp.parent[0].is_none();
        for x in 0..nodes {
            if let Some(p) = tp.parent[x] {
                if p >= nodes || tp.depth[x] != tp.depth[p] + 1 {
                    tree_ok = false;
                    failures.push(format!("node {x}: bad parent or depth"));
                }
            } else if tp.depth[x] != 0 {
                tree_ok = false;
            }
        }
        // Acyclicity follows from strictly decreasing depth along parents.
    }

    let mut owner = vec![usize::MAX; g.n()];
    let mut partition_ok = true;
    for (x, bag) in tp.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() || owner[v] != usize::MAX {
                partition_ok = false;
                failures.push(format!("vertex {v} misplaced in bag {x}"));
            } else {
                owner[v] = x;
            }
        }
    }
    if owner.iter().any(|&x| x == usize::MAX) {
        partition_ok = false;
        failures.push("some vertex is in no bag".into());
    }

    let mut edges_ok = partition_ok && tree_ok;
    if edges_ok {
        for &(u, v) in g.edges() {
            let (a, b) = (owner[u], owner[v]);
            let adjacent_bags =
                a == b || tp.parent[a] == Some(b) || tp.parent[b] == Some(a);
            if !adjacent_bags {
                edges_ok = false;
                failures.push(format!("edge ({u}, {v}) spans non-adjacent bags"));
            }
        }
    }

    let (mut claim_ok, mut parent_clique_ok) = (partition_ok && tree_ok, true);
    if claim_ok {
        for x in 0..nodes {
            let Some(p) = tp.parent[x] else { continue };
            let mut seen: Vec<usize> = Vec::new();
            for &u in &tp.bags[p] {
                if g.neighbours(u).iter().any(|&w| owner[w] == x) {
                    seen.push(u);
                }
            }
            seen.sort_unstable();
            for (i, &a) in seen.iter().enumerate() {
                for &b in &seen[i + 1..] {
                    if !g.has_edge(a, b) {
                        claim_ok = false;
                        failures.push(format!(
                            "bag {x}: parent vertices {a}, {b} not adjacent"
                        ));
                    }
                }
            }
            if seen != tp.parent_clique[x] {
                parent_clique_ok = false;
                failures.push(format!("bag {x}: stored parent clique differs"));
            }
        }
    }

    let mut bags_ok = true;
    for (x, bag) in tp.bags.iter().enumerate() {
        if bag.is_empty() {
            continue; // artificial root over a disconnected graph
        }
        let (h, _) = g.induced(bag);
        match ktree_peo(&h) {
            Ok((kb, _)) if k >= 1 && kb <= k - 1 => {}
            Ok((kb, _)) => {
                bags_ok = false;
                failures.push(format!("bag {x} is a {kb}-tree, expected at most {}", k - 1));
            }
            Err(_) => {
                bags_ok = false;
                failures.push(format!("bag {x} does not induce a connected k-tree"));
            }
        }
    }

    let width = tp.width();
    let bound = (k * g.max_degree().saturating_sub(1)).max(1);
    let width_ok = width <= bound;
    if !width_ok {
        failures.push(format!("width {width} exceeds bound {bound}"));
    }

    TreePartitionReport {
        tree_ok,
        partition_ok,
        edges_ok,
        claim_ok,
        parent_clique_ok,
        bags_ok,
        width_ok,
        width,
        failures,
    }
}
