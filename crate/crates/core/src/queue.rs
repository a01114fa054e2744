//! Queue and stack layouts.
//!
//! Both fix a total vertex ordering and partition the edges. In a queue no
//! two edges may nest (one strictly inside the other); in a stack no two
//! edges may cross (strictly interleave). Edges sharing an endpoint never
//! nest and never cross.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::ordering::lex_bfs;
use crate::track::{Mode, TrackLayout};
use crate::{Colouring, Error, Result};

fn validate_order(order: &[usize]) -> Result<Vec<usize>> {
    let n = order.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(Error::BadParams("order is not a permutation".into()));
        }
        pos[v] = i;
    }
    Ok(pos)
}

/// Normalizes to (min, max) ids, sorts each class, rejects duplicates.
fn validate_classes(n: usize, classes: &mut [Vec<(usize, usize)>]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for class in classes.iter_mut() {
        for e in class.iter_mut() {
            let (u, v) = (e.0.min(e.1), e.0.max(e.1));
            if u == v || v >= n {
                return Err(Error::BadParams(format!("bad edge ({}, {})", e.0, e.1)));
            }
            if !seen.insert((u, v)) {
                return Err(Error::BadParams(format!(
                    "edge ({u}, {v}) assigned more than once"
                )));
            }
            *e = (u, v);
        }
        class.sort_unstable();
    }
    Ok(())
}

/// Vertex ordering plus a partition of the edges into queues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueueLayout {
    order: Vec<usize>,
    pos: Vec<usize>,
    queues: Vec<Vec<(usize, usize)>>,
}

#[derive(Serialize, Deserialize)]
struct QueueLayoutJson {
    order: Vec<usize>,
    queues: Vec<Vec<(usize, usize)>>,
}

/// Same shape as [`QueueLayout`], partitioning edges into stacks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackLayout {
    order: Vec<usize>,
    pos: Vec<usize>,
    stacks: Vec<Vec<(usize, usize)>>,
}

#[derive(Serialize, Deserialize)]
struct StackLayoutJson {
    order: Vec<usize>,
    stacks: Vec<Vec<(usize, usize)>>,
}

macro_rules! layout_impl {
    ($ty:ident, $json:ident, $field:ident, $count:ident, $classes:ident) => {
        impl $ty {
            pub fn new(order: Vec<usize>, mut $field: Vec<Vec<(usize, usize)>>) -> Result<Self> {
                let pos = validate_order(&order)?;
                validate_classes(order.len(), &mut $field)?;
                Ok($ty { order, pos, $field })
            }

            pub fn n(&self) -> usize {
                self.order.len()
            }

            pub fn order(&self) -> &[usize] {
                &self.order
            }

            /// Position of a vertex in the ordering.
            pub fn position(&self, v: usize) -> usize {
                self.pos[v]
            }

            pub fn $count(&self) -> usize {
                self.$field.len()
            }

            pub fn $classes(&self) -> &[Vec<(usize, usize)>] {
                &self.$field
            }

            pub fn to_json(&self) -> String {
                serde_json::to_string(&$json {
                    order: self.order.clone(),
                    $field: self.$field.clone(),
                })
                .expect("layout serialization cannot fail")
            }

            pub fn from_json(s: &str) -> Result<Self> {
                let raw: $json = serde_json::from_str(s)
                    .map_err(|e| Error::BadParams(format!("layout JSON: {e}")))?;
                $ty::new(raw.order, raw.$field)
            }
        }
    };
}

layout_impl!(QueueLayout, QueueLayoutJson, queues, queue_count, queues);
layout_impl!(StackLayout, StackLayoutJson, stacks, stack_count, stacks);

/// Interval (l, r) of an edge under the ordering, l < r.
fn interval(pos: &[usize], (u, v): (usize, usize)) -> (usize, usize) {
    let (a, b) = (pos[u], pos[v]);
    (a.min(b), a.max(b))
}

/// Largest set of pairwise nested edges under the given ordering. The
/// fewest queues compatible with a fixed ordering equals this value.
pub fn max_rainbow(g: &Graph, order: &[usize]) -> Result<usize> {
    let pos = validate_order(order)?;
    if g.n() != order.len() {
        return Err(Error::BadParams("ordering length differs from graph".into()));
    }
    let mut intervals: Vec<(usize, usize)> =
        g.edges().iter().map(|&e| interval(&pos, e)).collect();
    // With right endpoints ascending within equal left endpoints, nesting
    // chains are exactly the strictly decreasing subsequences of rights.
    intervals.sort_unstable();
    let mut tails: Vec<usize> = Vec::new(); // tails[i]: largest right end of a chain of length i+1
    for (_, r) in intervals {
        let idx = tails.partition_point(|&t| t > r);
        if idx == tails.len() {
            tails.push(r);
        } else {
            tails[idx] = tails[idx].max(r);
        }
    }
    Ok(tails.len())
}

/// Queue layout on the given ordering using the fewest queues for it: each
/// edge goes to the queue indexed by the longest nesting chain ending at
/// it, so no queue holds two nested edges.
pub fn queues_from_ordering(g: &Graph, order: &[usize]) -> Result<QueueLayout> {
    let pos = validate_order(order)?;
    if g.n() != order.len() {
        return Err(Error::BadParams("ordering length differs from graph".into()));
    }
    let mut edges: Vec<((usize, usize), (usize, usize))> =
        g.edges().iter().map(|&e| (interval(&pos, e), e)).collect();
    edges.sort_unstable();
    let mut depth = vec![1usize; edges.len()];
    for i in 0..edges.len() {
        let (l, r) = edges[i].0;
        for j in 0..i {
            let (lj, rj) = edges[j].0;
            if lj < l && r < rj {
                depth[i] = depth[i].max(depth[j] + 1);
            }
        }
    }
    let mut queues = vec![Vec::new(); depth.iter().copied().max().unwrap_or(0)];
    for (i, &(_, e)) in edges.iter().enumerate() {
        queues[depth[i] - 1].push(e);
    }
    debug_assert_eq!(queues.len(), max_rainbow(g, order).expect("validated above"));
    QueueLayout::new(order.to_vec(), queues)
}

/// Per-check results for a queue layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueueReport {
    pub queue_count: usize,
    /// Edges of the graph missing from the layout, or assigned edges that
    /// are not in the graph.
    pub edge_mismatches: Vec<(usize, usize)>,
    pub nested_count: u64,
    pub nested_witnesses: Vec<((usize, usize), (usize, usize))>,
}

impl QueueReport {
    pub fn pass(&self) -> bool {
        self.edge_mismatches.is_empty() && self.nested_count == 0
    }

    pub fn summary_lines(&self) -> Vec<String> {
        report_lines(
            "queues",
            self.queue_count,
            &self.edge_mismatches,
            self.nested_count,
            "nested pairs",
            &self.nested_witnesses,
        )
    }
}

/// Per-check results for a stack layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackReport {
    pub stack_count: usize,
    pub edge_mismatches: Vec<(usize, usize)>,
    pub crossing_count: u64,
    pub crossing_witnesses: Vec<((usize, usize), (usize, usize))>,
}

impl StackReport {
    pub fn pass(&self) -> bool {
        self.edge_mismatches.is_empty() && self.crossing_count == 0
    }

    pub fn summary_lines(&self) -> Vec<String> {
        report_lines(
            "stacks",
            self.stack_count,
            &self.edge_mismatches,
            self.crossing_count,
            "crossing pairs",
            &self.crossing_witnesses,
        )
    }
}

fn report_lines(
    kind: &str,
    count: usize,
    mismatches: &[(usize, usize)],
    bad: u64,
    bad_kind: &str,
    witnesses: &[((usize, usize), (usize, usize))],
) -> Vec<String> {
    let mut lines = vec![
        format!("{kind}: {count}"),
        format!(
            "edge partition matches graph: {}",
            if mismatches.is_empty() { "ok" } else { "FAIL" }
        ),
        format!("{bad_kind}: {bad} ({})", if bad == 0 { "ok" } else { "FAIL" }),
    ];
    for &(u, v) in mismatches {
        lines.push(format!("  mismatched edge ({u}, {v})"));
    }
    for &((a, b), (c, d)) in witnesses {
        lines.push(format!("  edges ({a}, {b}) and ({c}, {d}) conflict"));
    }
    lines
}

fn edge_mismatches(g: &Graph, classes: &[Vec<(usize, usize)>]) -> Vec<(usize, usize)> {
    let mut assigned: Vec<(usize, usize)> = classes.iter().flatten().copied().collect();
    assigned.sort_unstable();
    let mut bad = Vec::new();
    let mut i = 0;
    let mut j = 0;
    let real = g.edges();
    while i < real.len() || j < assigned.len() {
        match (real.get(i), assigned.get(j)) {
            (Some(&a), Some(&b)) if a == b => {
                i += 1;
                j += 1;
            }
            (Some(&a), Some(&b)) if a < b => {
                bad.push(a);
                i += 1;
            }
            (Some(_), Some(&b)) => {
                bad.push(b);
                j += 1;
            }
            (Some(&a), None) => {
                bad.push(a);
                i += 1;
            }
            (None, Some(&b)) => {
                bad.push(b);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    bad
}

/// Exact verifier: the edge partition must match the graph and no queue may
/// hold two strictly nested edges.
pub fn verify_queue_layout(g: &Graph, ql: &QueueLayout) -> QueueReport {
    assert_eq!(g.n(), ql.n(), "layout and graph disagree on vertex count");
    let mut nested_count = 0u64;
    let mut witnesses = Vec::new();
    for queue in ql.queues() {
        let mut ivs: Vec<((usize, usize), (usize, usize))> =
            queue.iter().map(|&e| (interval(&ql.pos, e), e)).collect();
        ivs.sort_unstable();
        for (i, &((l1, r1), e1)) in ivs.iter().enumerate() {
            for &((l2, r2), e2) in &ivs[i + 1..] {
                if l1 < l2 && r2 < r1 {
                    nested_count += 1;
                    if witnesses.len() < 16 {
                        witnesses.push((e1, e2));
                    }
                }
            }
        }
    }
    QueueReport {
        queue_count: ql.queue_count(),
        edge_mismatches: edge_mismatches(g, ql.queues()),
        nested_count,
        nested_witnesses: witnesses,
    }
}

/// Exact verifier: the edge partition must match the graph and no stack may
/// hold two strictly crossing edges.
pub fn verify_stack_layout(g: &Graph, sl: &StackLayout) -> StackReport {
    assert_eq!(g.n(), sl.n(), "layout and graph disagree on vertex count");
    let mut crossing_count = 0u64;
    let mut witnesses = Vec::new();
    for stack in sl.stacks() {
        let mut ivs: Vec<((usize, usize), (usize, usize))> =
            stack.iter().map(|&e| (interval(&sl.pos, e), e)).collect();
        ivs.sort_unstable();
        for (i, &((l1, r1), e1)) in ivs.iter().enumerate() {
            for &((l2, r2), e2) in &ivs[i + 1..] {
                if l1 < l2 && l2 < r1 && r1 < r2 {
                    crossing_count += 1;
                    if witnesses.len() < 16 {
                        witnesses.push((e1, e2));
                    }
                }
            }
        }
    }
    StackReport {
        stack_count: sl.stack_count(),
        edge_mismatches: edge_mismatches(g, sl.stacks()),
        crossing_count,
        crossing_witnesses: witnesses,
    }
}

fn forest_order(g: &Graph) -> Result<Vec<usize>> {
    if !g.is_forest() {
        return Err(Error::NotForest);
    }
    let mut order = Vec::with_capacity(g.n());
    for comp in g.components() {
        let (h, map) = g.induced(&comp);
        let sub = lex_bfs(&h, 0)?;
        order.extend(sub.sequence().iter().map(|&v| map[v]));
    }
    Ok(order)
}

/// Single-queue layout of a forest: breadth-first order per component.
/// Tree edges join a parent to a child discovered later than every child
/// of earlier parents, so no two edge intervals nest.
pub fn tree_1queue(g: &Graph) -> Result<QueueLayout> {
    let order = forest_order(g)?;
    let queues = if g.m() > 0 { vec![g.edges().to_vec()] } else { Vec::new() };
    let ql = QueueLayout::new(order, queues)?;
    debug_assert!(verify_queue_layout(g, &ql).pass());
    Ok(ql)
}

/// Single-stack layout of a forest: depth-first preorder per component,
/// smallest neighbour first. Edge intervals are then nested or disjoint,
/// never crossing.
pub fn tree_1stack(g: &Graph) -> Result<StackLayout> {
    if !g.is_forest() {
        return Err(Error::NotForest);
    }
    let mut order = Vec::with_capacity(g.n());
    let mut visited = vec![false; g.n()];
    for comp in g.components() {
        let mut stack = vec![comp[0]];
        while let Some(v) = stack.pop() {
            if visited[v] {
                continue;
            }
            visited[v] = true;
            order.push(v);
            for &u in g.neighbours(v).iter().rev() {
                if !visited[u] {
                    stack.push(u);
                }
            }
        }
    }
    let stacks = if g.m() > 0 { vec![g.edges().to_vec()] } else { Vec::new() };
    let sl = StackLayout::new(order, stacks)?;
    debug_assert!(verify_stack_layout(g, &sl).pass());
    Ok(sl)
}

/// Queue layout read off a track layout: the ordering concatenates the
/// tracks, edges are grouped by how many tracks they span, and intra-track
/// edges (improper layouts) get one extra queue.
///
/// Same-span edges nest neither within one track pair (that would be an
/// X-crossing) nor across pairs (left endpoints order one way, right
/// endpoints the same way); intra-track edges join consecutive vertices,
/// and two one-step intervals never nest. Unused spans are dropped, so a
/// proper t-track layout yields at most t-1 queues.
pub fn queue_from_track(g: &Graph, tl: &TrackLayout) -> Result<QueueLayout> {
    if g.n() != tl.n() {
        return Err(Error::BadParams("layout and graph disagree on vertex count".into()));
    }
    let order: Vec<usize> = tl.tracks().iter().flatten().copied().collect();
    let mut by_span: std::collections::BTreeMap<usize, Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    let mut intra = Vec::new();
    for &(u, v) in g.edges() {
        let span = tl.track_of(u).abs_diff(tl.track_of(v));
        if span == 0 {
            intra.push((u, v));
        } else {
            by_span.entry(span).or_default().push((u, v));
        }
    }
    let mut queues: Vec<Vec<(usize, usize)>> = by_span.into_values().collect();
    if !intra.is_empty() {
        queues.push(intra);
    }
    let ql = QueueLayout::new(order, queues)?;
    debug_assert!(verify_queue_layout(g, &ql).pass());
    Ok(ql)
}

/// Track layout from a proper colouring and a queue layout, on at most
/// c(2q)^(c-1) tracks for c colours and q queues.
///
/// Every edge gets a label in Z_2q from its queue and its direction (does
/// the lower-coloured endpoint come first?). For each colour pair, the
/// bichromatic subgraph must label-consistently split: a potential phi is
/// fixed per vertex with phi(u) + phi(v) = label(uv) for every bichromatic
/// edge uv, rooting each component at its smallest vertex. An inconsistent
/// cycle reports which colour pair is not acyclic. Tracks refine colour
/// classes by their potential vectors and are ordered by the queue
/// ordering, so edges between two tracks all share one queue and one
/// direction and therefore cannot cross.
pub fn track_from_queue(g: &Graph, colouring: &Colouring, ql: &QueueLayout) -> Result<TrackLayout> {
    if colouring.colours().len() != g.n() || ql.n() != g.n() {
        return Err(Error::BadParams("colouring, layout and graph sizes differ".into()));
    }
    for &(u, v) in g.edges() {
        if colouring.colour(u) == colouring.colour(v) {
            return Err(Error::BadParams(format!(
                "colouring is not proper: edge ({u}, {v})"
            )));
        }
    }
    if !edge_mismatches(g, ql.queues()).is_empty() {
        return Err(Error::BadParams("queue layout edges differ from graph".into()));
    }
    let c = colouring.colour_count();
    let q = ql.queue_count();
    let modulus = (2 * q).max(1);
    let mut queue_of: HashMap<(usize, usize), usize> = HashMap::new();
    for (qi, queue) in ql.queues().iter().enumerate() {
        for &e in queue {
            queue_of.insert(e, qi);
        }
    }
    let label = |u: usize, v: usize| -> usize {
        // u is the lower-coloured endpoint.
        let e = (u.min(v), u.max(v));
        let dir = usize::from(ql.position(u) < ql.position(v));
        2 * queue_of[&e] + dir
    };

    // phi[v][slot]: potential of v against the slot-th other colour.
    let mut phi = vec![vec![0usize; c.saturating_sub(1)]; g.n()];
    let slot = |own: usize, other: usize| if other < own { other } else { other - 1 };
    for a in 0..c {
        for b in a + 1..c {
            let mut visited = vec![false; g.n()];
            for root in 0..g.n() {
                let cr = colouring.colour(root);
                if visited[root] || (cr != a && cr != b) {
                    continue;
                }
                visited[root] = true;
                let mut stack = vec![root];
                while let Some(v) = stack.pop() {
                    let cv = colouring.colour(v);
                    let phi_v = phi[v][slot(cv, if cv == a { b } else { a })];
                    for &u in g.neighbours(v) {
                        let cu = colouring.colour(u);
                        if cu != a + b - cv {
                            continue;
                        }
                        let lab = if cu < cv { label(u, v) } else { label(v, u) };
                        let want = (lab + modulus - phi_v % modulus) % modulus;
                        let su = slot(cu, a + b - cu);
                        if visited[u] {
                            if phi[u][su] != want {
                                return Err(Error::NotAcyclic(a, b));
                            }
                        } else {
                            visited[u] = true;
                            phi[u][su] = want;
                            stack.push(u);
                        }
                    }
                }
            }
        }
    }

    // Group vertices by (colour, potential vector), ordered by the queue
    // ordering within each track.
    let mut groups: std::collections::BTreeMap<(usize, Vec<usize>), Vec<usize>> =
        std::collections::BTreeMap::new();
    for &v in ql.order() {
        groups
            .entry((colouring.colour(v), phi[v].clone()))
            .or_default()
            .push(v);
    }
    let tracks: Vec<Vec<usize>> = groups.into_values().collect();
    let tl = TrackLayout::new(g.n(), Mode::Proper, tracks)?;

    // Every track pair must be queue- and direction-monochromatic; this is
    // forced by the potentials, so a violation is an internal fault.
    let mut pair_label: HashMap<(usize, usize), usize> = HashMap::new();
    for &(u, v) in g.edges() {
        let (lo, hi) = if colouring.colour(u) < colouring.colour(v) { (u, v) } else { (v, u) };
        let key = {
            let (a, b) = (tl.track_of(u), tl.track_of(v));
            (a.min(b), a.max(b))
        };
        let lab = label(lo, hi);
        if *pair_label.entry(key).or_insert(lab) != lab {
            return Err(Error::Internal(
                "track pair carries edges of different queue or direction".into(),
            ));
        }
    }
    if let Some(bound) = (2u128 * q as u128)
        .max(1)
        .checked_pow(c.saturating_sub(1) as u32)
        .and_then(|p| p.checked_mul(c as u128))
    {
        debug_assert!(tl.track_count() as u128 <= bound);
    }
    Ok(tl)
}

/// Default cap on the permuted side of [`bipartite_roundtrip`].
pub const DEFAULT_ROUNDTRIP_SIDE_LIMIT: usize = 9;

/// Searches a bipartite graph for the equivalent pair of a one-queue layout
/// with one part entirely before the other and a two-track layout with one
/// part per track.
///
/// The smaller part is permuted exhaustively (`TooLarge` beyond `limit`);
/// for each permutation, the other part is ordered by its neighbourhood
/// intervals, which succeeds if any completion does. Returns
/// `NoSuchLayout` when no ordering pair works.
pub fn bipartite_roundtrip(g: &Graph, limit: usize) -> Result<(QueueLayout, TrackLayout)> {
    // 2-colour by depth parity.
    let mut colour = vec![usize::MAX; g.n()];
    for comp in g.components() {
        let depths = g.bfs_depths(comp[0]);
        for &v in &comp {
            colour[v] = depths[v].expect("component vertex") % 2;
        }
    }
    for &(u, v) in g.edges() {
        if colour[u] == colour[v] {
            return Err(Error::BadParams("graph is not bipartite".into()));
        }
    }
    let a_side: Vec<usize> = (0..g.n()).filter(|&v| colour[v] == 0).collect();
    let b_side: Vec<usize> = (0..g.n()).filter(|&v| colour[v] == 1).collect();
    let permute_b = b_side.len() < a_side.len();
    let small: Vec<usize> = if permute_b { b_side.clone() } else { a_side.clone() };
    let large: Vec<usize> = if permute_b { a_side } else { b_side };
    if small.len() > limit {
        return Err(Error::TooLarge { size: small.len(), limit });
    }

    let mut perm = small.clone();
    loop {
        if let Some(order_large) = complete_side(g, &perm, &large) {
            let (a_order, b_order) = if permute_b {
                (order_large, perm)
            } else {
                (perm, order_large)
            };
            let mut order = a_order.clone();
            order.extend(&b_order);
            let queues = if g.m() > 0 { vec![g.edges().to_vec()] } else { Vec::new() };
            let ql = QueueLayout::new(order, queues)?;
            let mut tracks = Vec::new();
            if !a_order.is_empty() {
                tracks.push(a_order);
            }
            if !b_order.is_empty() {
                tracks.push(b_order);
            }
            let tl = TrackLayout::new(g.n(), Mode::Proper, tracks)?;
            debug_assert!(verify_queue_layout(g, &ql).pass());
            debug_assert!(crate::track::verify_track_layout(g, &tl).pass());
            return Ok((ql, tl));
        }
        if !next_permutation(&mut perm) {
            return Err(Error::NoSuchLayout);
        }
    }
}

/// Orders `other` against fixed positions of `fixed` so that earlier
/// vertices' neighbourhood intervals end no later than later ones begin;
/// then no two edges nest across the part boundary. Sorting by interval is
/// complete: whenever some order works, this one does.
fn complete_side(g: &Graph, fixed: &[usize], other: &[usize]) -> Option<Vec<usize>> {
    let mut pos = HashMap::new();
    for (i, &v) in fixed.iter().enumerate() {
        pos.insert(v, i);
    }
    let mut keyed: Vec<(Option<(usize, usize)>, usize)> = other
        .iter()
        .map(|&t| {
            let ps: Vec<usize> = g.neighbours(t).iter().map(|u| pos[u]).collect();
            let key = ps.iter().copied().min().map(|lo| {
                (lo, *ps.iter().max().expect("non-empty"))
            });
            (key, t)
        })
        .collect();
    keyed.sort_unstable();
    let mut last_max: Option<usize> = None;
    for &(key, _) in &keyed {
        if let Some((lo, hi)) = key {
            if last_max.is_some_and(|m| m > lo) {
                return None;
            }
            last_max = Some(hi);
        }
    }
    Some(keyed.into_iter().map(|(_, t)| t).collect())
}

/// Advances to the lexicographically next permutation; false after the last.
fn next_permutation(seq: &mut [usize]) -> bool {
    if seq.len() < 2 {
        return false;
    }
    let Some(i) = (0..seq.len() - 1).rev().find(|&i| seq[i] < seq[i + 1]) else {
        return false;
    };
    let j = (i + 1..seq.len()).rev().find(|&j| seq[j] > seq[i]).expect("exists");
    seq.swap(i, j);
    seq[i + 1..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouring::acyclic_colouring_ktree;
    use crate::generate::{generate, Family};
    use crate::ktree_layout::ktree_track_layout;
    use crate::ordering::ktree_peo;
    use crate::track::verify_track_layout;

    fn path(n: usize) -> Graph {
        generate(Family::Path { n }, 0).unwrap().graph
    }

    #[test]
    fn layout_json_round_trips() {
        let ql = QueueLayout::new(vec![0, 1, 2], vec![vec![(1, 0), (1, 2)]]).unwrap();
        assert_eq!(ql.to_json(), r#"{"order":[0,1,2],"queues":[[[0,1],[1,2]]]}"#);
        assert_eq!(QueueLayout::from_json(&ql.to_json()).unwrap(), ql);
        let sl = StackLayout::new(vec![2, 0, 1], vec![vec![(0, 2)]]).unwrap();
        assert_eq!(sl.to_json(), r#"{"order":[2,0,1],"stacks":[[[0,2]]]}"#);
        assert_eq!(StackLayout::from_json(&sl.to_json()).unwrap(), sl);
        assert!(QueueLayout::new(vec![0, 0], vec![]).is_err());
        assert!(QueueLayout::new(vec![0, 1], vec![vec![(0, 1), (1, 0)]]).is_err());
    }

    #[test]
    fn rainbow_counts_nested_chains() {
        // Identity order on K_4: edges (0,3) > (1,2) nest; max chain 2.
        let g = generate(Family::Complete { n: 4 }, 0).unwrap().graph;
        let order: Vec<usize> = (0..4).collect();
        assert_eq!(max_rainbow(&g, &order).unwrap(), 2);
        // Perfect rainbow: matching (0,5), (1,4), (2,3).
        let m = Graph::new(6, [(0, 5), (1, 4), (2, 3)]).unwrap();
        assert_eq!(max_rainbow(&m, &(0..6).collect::<Vec<_>>()).unwrap(), 3);
        // Path in identity order has no nesting at all.
        assert_eq!(max_rainbow(&path(6), &(0..6).collect::<Vec<_>>()).unwrap(), 1);
        let empty = Graph::empty(3);
        assert_eq!(max_rainbow(&empty, &[2, 0, 1]).unwrap(), 0);
    }

    #[test]
    fn greedy_queue_assignment_is_optimal_for_the_ordering() {
        for (n, seed) in [(7usize, 1u64), (8, 2), (9, 3)] {
            let g = generate(Family::RandomKTree { k: 3, n }, seed).unwrap().graph;
            let order: Vec<usize> = (0..n).collect();
            let ql = queues_from_ordering(&g, &order).unwrap();
            assert!(verify_queue_layout(&g, &ql).pass());
            assert_eq!(ql.queue_count(), max_rainbow(&g, &order).unwrap());
        }
    }

    #[test]
    fn verifier_spots_nesting_and_crossing() {
        let g = Graph::new(4, [(0, 3), (1, 2)]).unwrap();
        let nested = QueueLayout::new(vec![0, 1, 2, 3], vec![vec![(0, 3), (1, 2)]]).unwrap();
        let report = verify_queue_layout(&g, &nested);
        assert_eq!(report.nested_count, 1);
        assert!(!report.pass());
        let split = QueueLayout::new(vec![0, 1, 2, 3], vec![vec![(0, 3)], vec![(1, 2)]]).unwrap();
        assert!(verify_queue_layout(&g, &split).pass());

        let h = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        let crossed = StackLayout::new(vec![0, 1, 2, 3], vec![vec![(0, 2), (1, 3)]]).unwrap();
        assert_eq!(verify_stack_layout(&h, &crossed).crossing_count, 1);
        let queued = QueueLayout::new(vec![0, 1, 2, 3], vec![vec![(0, 2), (1, 3)]]).unwrap();
        assert!(verify_queue_layout(&h, &queued).pass());

        let missing = QueueLayout::new(vec![0, 1, 2, 3], vec![vec![(0, 3)]]).unwrap();
        assert_eq!(verify_queue_layout(&g, &missing).edge_mismatches, vec![(1, 2)]);
    }

    #[test]
    fn forests_take_one_queue_and_one_stack() {
        for seed in 0..10 {
            let g = generate(Family::RandomTree { n: 50 }, seed).unwrap().graph;
            let ql = tree_1queue(&g).unwrap();
            assert_eq!(ql.queue_count(), 1);
            assert!(verify_queue_layout(&g, &ql).pass());
            let sl = tree_1stack(&g).unwrap();
            assert_eq!(sl.stack_count(), 1);
            assert!(verify_stack_layout(&g, &sl).pass());
        }
        let forest = Graph::new(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        assert!(verify_queue_layout(&forest, &tree_1queue(&forest).unwrap()).pass());
        assert!(verify_stack_layout(&forest, &tree_1stack(&forest).unwrap()).pass());
        let cycle = generate(Family::Cycle { n: 5 }, 0).unwrap().graph;
        assert!(matches!(tree_1queue(&cycle), Err(Error::NotForest)));
        assert!(matches!(tree_1stack(&cycle), Err(Error::NotForest)));
    }

    #[test]
    fn track_layouts_turn_into_span_queues() {
        for seed in 0..5 {
            let g = generate(Family::RandomKTree { k: 2, n: 60 }, seed).unwrap().graph;
            let tl = ktree_track_layout(&g, 2).unwrap();
            let ql = queue_from_track(&g, &tl).unwrap();
            assert!(ql.queue_count() < tl.track_count());
            assert!(verify_queue_layout(&g, &ql).pass());
        }
        // Improper layouts pay one extra queue.
        let g = path(5);
        let tl = TrackLayout::new(5, Mode::Improper, vec![vec![0, 1, 2, 3, 4]]).unwrap();
        let ql = queue_from_track(&g, &tl).unwrap();
        assert_eq!(ql.queue_count(), 1);
        assert!(verify_queue_layout(&g, &ql).pass());
    }

    #[test]
    fn queue_layouts_turn_into_bounded_tracks() {
        for seed in 0..5 {
            let g = generate(Family::RandomKTree { k: 2, n: 40 }, seed).unwrap().graph;
            let (k, order) = ktree_peo(&g).unwrap();
            assert_eq!(k, 2);
            let colouring = acyclic_colouring_ktree(&g, &order, k).unwrap();
            let ql = queues_from_ordering(&g, order.sequence()).unwrap();
            let tl = track_from_queue(&g, &colouring, &ql).unwrap();
            let c = colouring.colour_count() as u64;
            let q = ql.queue_count() as u64;
            assert!(tl.track_count() as u64 <= c * (2 * q).pow(c as u32 - 1));
            let report = verify_track_layout(&g, &tl);
            assert!(report.pass(), "{:?}", report.summary_lines());
        }
    }

    #[test]
    fn inconsistent_cycle_is_reported_as_not_acyclic() {
        // C_4 coloured with two colours: the bichromatic subgraph is the
        // whole cycle. With both edges of a 1-queue layout labelled by
        // direction, the cycle's labels cannot split consistently.
        let g = generate(Family::Cycle { n: 4 }, 0).unwrap().graph;
        let colouring = Colouring::new(vec![0, 1, 0, 1], 2).unwrap();
        let ql = queues_from_ordering(&g, &[0, 1, 2, 3]).unwrap();
        match track_from_queue(&g, &colouring, &ql) {
            Err(Error::NotAcyclic(0, 1)) => {}
            other => panic!("expected NotAcyclic(0, 1), got {other:?}"),
        }
    }

    #[test]
    fn roundtrip_finds_separated_layouts_for_caterpillars() {
        for g in [
            path(6),
            generate(Family::Star { n: 7 }, 0).unwrap().graph,
            Graph::new(6, [(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]).unwrap(),
        ] {
            let (ql, tl) = bipartite_roundtrip(&g, DEFAULT_ROUNDTRIP_SIDE_LIMIT).unwrap();
            assert_eq!(ql.queue_count(), 1);
            assert!(tl.track_count() <= 2);
            assert!(verify_queue_layout(&g, &ql).pass());
            assert!(verify_track_layout(&g, &tl).pass());
            // The queue ordering is the track concatenation.
            let concat: Vec<usize> = tl.tracks().iter().flatten().copied().collect();
            assert_eq!(ql.order(), concat);
        }
    }

    #[test]
    fn roundtrip_rejects_what_cannot_be_separated() {
        // Complete bipartite 2x2 (= C_4): any separated order nests the
        // outer edge over the inner one.
        let k22 = Graph::new(4, [(0, 1), (0, 3), (2, 1), (2, 3)]).unwrap();
        assert!(matches!(
            bipartite_roundtrip(&k22, DEFAULT_ROUNDTRIP_SIDE_LIMIT),
            Err(Error::NoSuchLayout)
        ));
        let c6 = generate(Family::Cycle { n: 6 }, 0).unwrap().graph;
        assert!(matches!(
            bipartite_roundtrip(&c6, DEFAULT_ROUNDTRIP_SIDE_LIMIT),
            Err(Error::NoSuchLayout)
        ));
        let triangle = generate(Family::Cycle { n: 3 }, 0).unwrap().graph;
        assert!(matches!(
            bipartite_roundtrip(&triangle, DEFAULT_ROUNDTRIP_SIDE_LIMIT),
            Err(Error::BadParams(_))
        ));
        let big = generate(Family::Star { n: 30 }, 0).unwrap().graph;
        assert!(matches!(
            bipartite_roundtrip(&big, 9),
            Ok(_) // the permuted side is the single centre vertex
        ));
        let wide = Graph::new(24, (0..12).map(|i| (2 * i, 2 * i + 1)).collect::<Vec<_>>())
            .unwrap();
        assert!(matches!(
            bipartite_roundtrip(&wide, 9),
            Err(Error::TooLarge { size: 12, limit: 9 })
        ));
    }
}
