//! Exact brute-force solvers for small graphs.
//!
//! Each oracle explores the full search space (with safe pruning only),
//! returns the optimal value together with a witness achieving it, and
//! refuses inputs above a caller-chosen size limit. They exist to
//! cross-check the polynomial constructions, which must never beat them.

use std::collections::BTreeSet;

use crate::decomposition::{PathDecomposition, TreeDecomposition};
use crate::graph::Graph;
use crate::queue::{max_rainbow, queues_from_ordering, QueueLayout};
use crate::track::{Mode, TrackLayout};
use crate::{Error, Result};

/// Largest vertex count [`exact_queue_number`] accepts by default.
pub const DEFAULT_QUEUE_ORACLE_LIMIT: usize = 9;
/// Largest vertex count [`exact_track_number`] accepts by default.
pub const DEFAULT_TRACK_ORACLE_LIMIT: usize = 7;
/// Largest vertex count the width oracles accept by default.
pub const DEFAULT_WIDTH_ORACLE_LIMIT: usize = 14;

/// Optimal value, a witness achieving it, and the number of search nodes
/// visited on the way.
#[derive(Debug, Clone)]
pub struct OracleResult<W> {
    pub value: usize,
    pub witness: W,
    pub explored: u64,
}

fn size_gate(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::TooLarge { size: n, limit });
    }
    Ok(())
}

/// Minimum queues over all vertex orderings, by branch and bound. For a
/// fixed ordering the fewest queues equals the largest nested chain, which
/// never shrinks as the ordering grows, so a prefix reaching the incumbent
/// is cut; orderings and their reversals nest identically, so only one of
/// each pair is visited.
pub fn exact_queue_number(g: &Graph, limit: usize) -> Result<OracleResult<QueueLayout>> {
    size_gate(g.n(), limit)?;
    let n = g.n();
    if n == 0 {
        return Ok(OracleResult {
            value: 0,
            witness: QueueLayout::new(Vec::new(), Vec::new())?,
            explored: 0,
        });
    }
    let floor = usize::from(g.m() > 0);
    let mut best = usize::MAX;
    let mut best_order: Vec<usize> = Vec::new();
    let mut seq: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut explored = 0u64;

    fn prefix_rainbow(g: &Graph, seq: &[usize]) -> usize {
        let mut pos = vec![usize::MAX; g.n()];
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i;
        }
        let mut intervals: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|&&(u, v)| pos[u] != usize::MAX && pos[v] != usize::MAX)
            .map(|&(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v])))
            .collect();
        intervals.sort_unstable();
        let mut tails: Vec<usize> = Vec::new();
        for (_, r) in intervals {
            let idx = tails.partition_point(|&t| t > r);
            if idx == tails.len() {
                tails.push(r);
            } else {
                tails[idx] = tails[idx].max(r);
            }
        }
        tails.len()
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        g: &Graph,
        seq: &mut Vec<usize>,
        used: &mut [bool],
        best: &mut usize,
        best_order: &mut Vec<usize>,
        explored: &mut u64,
        floor: usize,
    ) {
        let n = g.n();
        if *best == floor {
            return;
        }
        for v in 0..n {
            if used[v] || (seq.len() == n - 1 && n > 1 && v < seq[0]) {
                continue;
            }
            seq.push(v);
            used[v] = true;
            *explored += 1;
            let r = prefix_rainbow(g, seq);
            if r < *best {
                if seq.len() == n {
                    *best = r;
                    best_order.clone_from(seq);
                } else {
                    descend(g, seq, used, best, best_order, explored, floor);
                }
            }
            seq.pop();
            used[v] = false;
        }
    }

    descend(g, &mut seq, &mut used, &mut best, &mut best_order, &mut explored, floor);
    let witness = queues_from_ordering(g, &best_order)?;
    debug_assert_eq!(witness.queue_count(), best);
    debug_assert_eq!(max_rainbow(g, &best_order)?, best);
    Ok(OracleResult { value: best, witness, explored })
}

/// Largest clique, by branch and bound over candidate extensions.
fn clique_number(g: &Graph) -> usize {
    fn grow(g: &Graph, current: usize, candidates: &[usize], best: &mut usize) {
        if current + candidates.len() <= *best {
            return;
        }
        if candidates.is_empty() {
            *best = (*best).max(current);
            return;
        }
        for (i, &v) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| g.has_edge(u, v))
                .collect();
            grow(g, current + 1, &next, best);
            if current + (candidates.len() - i - 1) <= *best {
                break;
            }
        }
    }
    let mut best = 0;
    let all: Vec<usize> = (0..g.n()).collect();
    grow(g, 0, &all, &mut best);
    best
}

/// Minimum tracks of any crossing-free track layout without intra-track
/// edges. Tries budgets upward from the clique number (clique vertices need
/// pairwise distinct tracks); for each budget, vertices are inserted in id
/// order at every position of every already-used track plus one fresh
/// track, abandoning a branch as soon as an inserted vertex produces an
/// intra-track edge or an X-crossing.
pub fn exact_track_number(g: &Graph, limit: usize) -> Result<OracleResult<TrackLayout>> {
    size_gate(g.n(), limit)?;
    let n = g.n();
    if n == 0 {
        return Ok(OracleResult {
            value: 0,
            witness: TrackLayout::new(0, Mode::Proper, Vec::new())?,
            explored: 0,
        });
    }

    fn crossing_free(
        g: &Graph,
        tracks: &[Vec<usize>],
        track_of: &[usize],
        v: usize,
        ti: usize,
    ) -> bool {
        let rank = |u: usize| tracks[track_of[u]].iter().position(|&x| x == u).expect("placed");
        let rv = rank(v);
        for &w in g.neighbours(v) {
            if w > v {
                continue;
            }
            let (tw, rw) = (track_of[w], rank(w));
            for &(x, y) in g.edges() {
                if x >= v || y >= v {
                    continue; // unplaced or shares endpoint v
                }
                let (x, y) = if track_of[x] == ti { (x, y) } else { (y, x) };
                if track_of[x] != ti || track_of[y] != tw {
                    continue;
                }
                let (rx, ry) = (rank(x), rank(y));
                if (rx < rv && ry > rw) || (rx > rv && ry < rw) {
                    return true;
                }
            }
        }
        false
    }

    fn place(
        g: &Graph,
        v: usize,
        budget: usize,
        tracks: &mut Vec<Vec<usize>>,
        track_of: &mut [usize],
        explored: &mut u64,
    ) -> bool {
        if v == g.n() {
            return true;
        }
        let open = tracks.len().min(budget - 1);
        for ti in 0..=open {
            let fresh = ti == tracks.len();
            if fresh {
                tracks.push(Vec::new());
            }
            let intra = g.neighbours(v).iter().any(|&w| w < v && track_of[w] == ti);
            if !intra {
                for at in 0..=tracks[ti].len() {
                    tracks[ti].insert(at, v);
                    track_of[v] = ti;
                    *explored += 1;
                    if !crossing_free(g, tracks, track_of, v, ti)
                        && place(g, v + 1, budget, tracks, track_of, explored)
                    {
                        return true;
                    }
                    tracks[ti].remove(at);
                }
            }
            if fresh {
                tracks.pop();
            }
        }
        false
    }

    let mut explored = 0u64;
    for budget in clique_number(g).max(1)..=n {
        let mut tracks: Vec<Vec<usize>> = Vec::new();
        let mut track_of = vec![usize::MAX; n];
        if place(g, 0, budget, &mut tracks, &mut track_of, &mut explored) {
            debug_assert_eq!(tracks.len(), budget);
            let witness = TrackLayout::new(n, Mode::Proper, tracks)?;
            debug_assert!(crate::track::verify_track_layout(g, &witness).pass());
            return Ok(OracleResult { value: budget, witness, explored });
        }
    }
    unreachable!("one vertex per track is always crossing-free")
}

fn reconstruct_order(n: usize, choice: &[u8]) -> Vec<usize> {
    let mut order = Vec::with_capacity(n);
    let mut s = (1usize << n) - 1;
    while s != 0 {
        let v = choice[s] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    order
}

/// Minimum over vertex orderings of the largest prefix boundary (the
/// vertex separation number, which equals the pathwidth), by dynamic
/// programming over vertex subsets. The witness decomposition takes, per
/// step, the previous boundary plus the new vertex as a bag.
pub fn exact_pathwidth(g: &Graph, limit: usize) -> Result<OracleResult<PathDecomposition>> {
    size_gate(g.n(), limit)?;
    let n = g.n();
    if n == 0 {
        return Ok(OracleResult {
            value: 0,
            witness: PathDecomposition::new(Vec::new()),
            explored: 0,
        });
    }
    let full = (1usize << n) - 1;
    let mut f = vec![u8::MAX; full + 1];
    let mut choice = vec![u8::MAX; full + 1];
    f[0] = 0;
    for s in 1..=full {
        let mut boundary = 0u8;
        for v in 0..n {
            if s & (1 << v) != 0 && g.neighbours(v).iter().any(|&u| s & (1 << u) == 0) {
                boundary += 1;
            }
        }
        let mut best = u8::MAX;
        let mut best_v = u8::MAX;
        for v in 0..n {
            if s & (1 << v) != 0 && f[s & !(1 << v)] < best {
                best = f[s & !(1 << v)];
                best_v = v as u8;
            }
        }
        f[s] = best.max(boundary);
        choice[s] = best_v;
    }

    let order = reconstruct_order(n, &choice);
    let mut in_prefix = vec![false; n];
    let mut bags = Vec::with_capacity(n);
    for &v in &order {
        let mut bag: Vec<usize> = (0..n)
            .filter(|&u| {
                in_prefix[u] && g.neighbours(u).iter().any(|&w| !in_prefix[w])
            })
            .collect();
        bag.push(v);
        bags.push(bag);
        in_prefix[v] = true;
    }
    let witness = PathDecomposition::new(bags);
    let value = f[full] as usize;
    debug_assert!(witness.validate(g).is_ok());
    debug_assert_eq!(witness.width(), value);
    Ok(OracleResult { value, witness, explored: full as u64 + 1 })
}

/// Vertices swallowed by eliminating v after the set `s`: neighbours of v
/// outside s, plus vertices outside s reachable from v through s.
fn elimination_cost(g: &Graph, s: usize, v: usize) -> usize {
    let mut seen_inside = 1usize << v;
    let mut swallowed = 0usize;
    let mut stack = vec![v];
    let mut count = 0;
    while let Some(x) = stack.pop() {
        for &u in g.neighbours(x) {
            let bit = 1usize << u;
            if s & bit != 0 {
                if seen_inside & bit == 0 {
                    seen_inside |= bit;
                    stack.push(u);
                }
            } else if u != v && swallowed & bit == 0 {
                swallowed |= bit;
                count += 1;
            }
        }
    }
    count
}

/// Minimum over elimination orders of the largest degree at elimination
/// time in the fill graph (the treewidth), by dynamic programming over
/// eliminated subsets. The witness re-runs the optimal elimination,
/// recording each vertex with its fill neighbours as a bag hung under the
/// bag of its first-eliminated fill neighbour.
pub fn exact_treewidth(g: &Graph, limit: usize) -> Result<OracleResult<TreeDecomposition>> {
    size_gate(g.n(), limit)?;
    let n = g.n();
    if n == 0 {
        return Ok(OracleResult {
            value: 0,
            witness: TreeDecomposition::new(Vec::new(), Vec::new()),
            explored: 0,
        });
    }
    let full = (1usize << n) - 1;
    let mut f = vec![u8::MAX; full + 1];
    let mut choice = vec![u8::MAX; full + 1];
    f[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut best_v = u8::MAX;
        for v in 0..n {
            if s & (1 << v) == 0 {
                continue;
            }
            let rest = s & !(1 << v);
            let cost = f[rest].max(elimination_cost(g, rest, v) as u8);
            if cost < best {
                best = cost;
                best_v = v as u8;
            }
        }
        f[s] = best;
        choice[s] = best_v;
    }

    let order = reconstruct_order(n, &choice);
    let mut elim_pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        elim_pos[v] = i;
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n)
        .map(|v| g.neighbours(v).iter().copied().collect())
        .collect();
    let mut bags = Vec::with_capacity(n);
    let mut tree_edges = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for (a_i, &a) in nb.iter().enumerate() {
            for &b in &nb[a_i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &u in &nb {
            adj[u].remove(&v);
        }
        adj[v].clear();
        if let Some(&first) = nb.iter().min_by_key(|&&u| elim_pos[u]) {
            tree_edges.push((i, elim_pos[first]));
        } else if i + 1 < n {
            tree_edges.push((i, i + 1));
        }
        let mut bag = nb;
        bag.push(v);
        bags.push(bag);
    }
    let witness = TreeDecomposition::new(bags, tree_edges);
    let value = f[full] as usize;
    debug_assert!(witness.validate(g).is_ok(), "{:?}", witness.validate(g));
    debug_assert_eq!(witness.width(), value);
    Ok(OracleResult { value, witness, explored: full as u64 + 1 })
}
