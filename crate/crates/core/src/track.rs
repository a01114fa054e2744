//! Track layouts: a partition of the vertices into ordered tracks with no
//! X-crossing. An X-crossing is a pair of edges vw, xy with v before x on
//! one track and y before w on another (all four comparisons strict).
//!
//! In a *proper* layout no edge joins two vertices of the same track; the
//! *improper* variant additionally allows edges between consecutive
//! vertices of a track.

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::ordering::lex_bfs;
use crate::tree_partition::TreePartition;
use crate::{Error, PathDecomposition, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Proper,
    Improper,
}

/// Ordered tracks covering every vertex exactly once. `position(v)` is the
/// pair (track index, rank within the track).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackLayout {
    mode: Mode,
    tracks: Vec<Vec<usize>>,
    pos: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct TrackLayoutJson {
    mode: Mode,
    tracks: Vec<Vec<usize>>,
}

impl TrackLayout {
    /// Validates that `tracks` lists each of the `n` vertices exactly once.
    pub fn new(n: usize, mode: Mode, tracks: Vec<Vec<usize>>) -> Result<Self> {
        let mut pos = vec![(usize::MAX, usize::MAX); n];
        let mut seen = 0usize;
        for (i, track) in tracks.iter().enumerate() {
            for (r, &v) in track.iter().enumerate() {
                if v >= n {
                    return Err(Error::BadParams(format!(
                        "track layout mentions vertex {v}, graph has {n}"
                    )));
                }
                if pos[v] != (usize::MAX, usize::MAX) {
                    return Err(Error::BadParams(format!(
                        "vertex {v} appears on more than one track position"
                    )));
                }
                pos[v] = (i, r);
                seen += 1;
            }
        }
        if seen != n {
            return Err(Error::BadParams(format!(
                "track layout covers {seen} of {n} vertices"
            )));
        }
        Ok(TrackLayout { mode, tracks, pos })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn n(&self) -> usize {
        self.pos.len()
    }

    pub fn track_count(&self) -> usize {
        self.tracks.len()
    }

    pub fn tracks(&self) -> &[Vec<usize>] {
        &self.tracks
    }

    /// (track, rank) of a vertex.
    pub fn position(&self, v: usize) -> (usize, usize) {
        self.pos[v]
    }

    pub fn track_of(&self, v: usize) -> usize {
        self.pos[v].0
    }

    pub fn rank_of(&self, v: usize) -> usize {
        self.pos[v].1
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TrackLayoutJson {
            mode: self.mode,
            tracks: self.tracks.clone(),
        })
        .expect("track layout serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: TrackLayoutJson = serde_json::from_str(s)
            .map_err(|e| Error::BadParams(format!("track layout JSON: {e}")))?;
        let n = raw.tracks.iter().map(Vec::len).sum();
        TrackLayout::new(n, raw.mode, raw.tracks)
    }
}

/// Per-check results of the exact track-layout verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackReport {
    pub mode: Mode,
    pub track_count: usize,
    /// Intra-track edges violating the mode: all of them under `Proper`,
    /// non-consecutive ones under `Improper`.
    pub intra_track_violations: Vec<(usize, usize)>,
    pub crossing_count: u64,
    /// Up to 16 crossing witnesses, each a pair of edges.
    pub crossing_witnesses: Vec<((usize, usize), (usize, usize))>,
}

impl TrackReport {
    pub fn pass(&self) -> bool {
        self.intra_track_violations.is_empty() && self.crossing_count == 0
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("tracks: {}", self.track_count),
            format!(
                "intra-track edges respect mode: {}",
                if self.intra_track_violations.is_empty() { "ok" } else { "FAIL" }
            ),
            format!(
                "x-crossings: {} ({})",
                self.crossing_count,
                if self.crossing_count == 0 { "ok" } else { "FAIL" }
            ),
        ];
        for &(u, v) in &self.intra_track_violations {
            lines.push(format!("  offending intra-track edge ({u}, {v})"));
        }
        for &((a, b), (c, d)) in &self.crossing_witnesses {
            lines.push(format!("  edges ({a}, {b}) and ({c}, {d}) cross"));
        }
        lines
    }
}

/// Exact verifier: checks the mode condition on intra-track edges and counts
/// X-crossings pairwise per track pair.
pub fn verify_track_layout(g: &Graph, tl: &TrackLayout) -> TrackReport {
    assert_eq!(g.n(), tl.n(), "layout and graph disagree on vertex count");
    let mut intra = Vec::new();
    // Bucket inter-track edges by unordered track pair, as rank pairs.
    let mut buckets: std::collections::BTreeMap<(usize, usize), Vec<((usize, usize), (usize, usize))>> =
        std::collections::BTreeMap::new();
    for &(u, v) in g.edges() {
        let (tu, ru) = tl.position(u);
        let (tv, rv) = tl.position(v);
        if tu == tv {
            let consecutive = ru.abs_diff(rv) == 1;
            if tl.mode() == Mode::Proper || !consecutive {
                intra.push((u, v));
            }
        } else if tu < tv {
            buckets.entry((tu, tv)).or_default().push(((ru, rv), (u, v)));
        } else {
            buckets.entry((tv, tu)).or_default().push(((rv, ru), (u, v)));
        }
    }
    let mut crossing_count = 0u64;
    let mut witnesses = Vec::new();
    for edges in buckets.values() {
        for (i, &((a1, b1), e1)) in edges.iter().enumerate() {
            for &((a2, b2), e2) in &edges[i + 1..] {
                let crossing = (a1 < a2 && b2 < b1) || (a2 < a1 && b1 < b2);
                if crossing {
                    crossing_count += 1;
                    if witnesses.len() < 16 {
                        witnesses.push((e1, e2));
                    }
                }
            }
        }
    }
    TrackReport {
        mode: tl.mode(),
        track_count: tl.track_count(),
        intra_track_violations: intra,
        crossing_count,
        crossing_witnesses: witnesses,
    }
}

/// Largest |track(u) - track(v)| over the edges; 0 on edgeless graphs.
pub fn max_span(g: &Graph, tl: &TrackLayout) -> usize {
    g.edges()
        .iter()
        .map(|&(u, v)| tl.track_of(u).abs_diff(tl.track_of(v)))
        .max()
        .unwrap_or(0)
}

/// Sorted set of tracks containing at least one of the given vertices.
pub fn covered_tracks(tl: &TrackLayout, vertices: &[usize]) -> Vec<usize> {
    let mut ts: Vec<usize> = vertices.iter().map(|&v| tl.track_of(v)).collect();
    ts.sort_unstable();
    ts.dedup();
    ts
}

fn drop_trailing_empty(tracks: &mut Vec<Vec<usize>>) {
    while tracks.last().is_some_and(Vec::is_empty) {
        tracks.pop();
    }
}

/// Proper 3-track layout of a forest: breadth-first depth modulo 3 chooses
/// the track, breadth-first discovery order fixes the order within each
/// track, and components are concatenated.
///
/// Edges join consecutive depths, children of earlier parents are
/// discovered earlier, and depth blocks never interleave, so no two edges
/// cross.
pub fn tree_3track(g: &Graph) -> Result<TrackLayout> {
    if !g.is_forest() {
        return Err(Error::NotForest);
    }
    let mut tracks = vec![Vec::new(); 3.min(g.n().max(1))];
    for comp in g.components() {
        let (h, map) = g.induced(&comp);
        let order = lex_bfs(&h, 0)?;
        for &v in order.sequence() {
            let d = order.depth(v).expect("breadth-first order carries depths");
            tracks[d % 3].push(map[v]);
        }
    }
    drop_trailing_empty(&mut tracks);
    TrackLayout::new(g.n(), Mode::Proper, tracks)
}

/// Proper layout on width+1 tracks from a path decomposition.
///
/// Each vertex occupies a contiguous interval of bags. Vertices sorted by
/// (interval start, interval end, id) are assigned first-fit to the lowest
/// track whose current last interval ends before the new one starts, so
/// same-track intervals are strictly disjoint and increase along the track.
/// Blocking vertices all live in the bag where the new interval starts, so
/// at most width of them block and width+1 tracks suffice; adjacent
/// vertices share a bag, hence overlap, hence never share a track.
pub fn from_path_decomposition(g: &Graph, pd: &PathDecomposition) -> Result<TrackLayout> {
    let spans = pd.validate(g)?;
    let mut by_interval: Vec<usize> = (0..g.n()).collect();
    by_interval.sort_unstable_by_key(|&v| (spans[v].0, spans[v].1, v));
    let mut tracks: Vec<Vec<usize>> = Vec::new();
    let mut last_end: Vec<usize> = Vec::new();
    for v in by_interval {
        let (l, r) = spans[v];
        match (0..tracks.len()).find(|&i| !tracks[i].is_empty() && last_end[i] < l) {
            Some(i) => {
                tracks[i].push(v);
                last_end[i] = r;
            }
            None => {
                tracks.push(vec![v]);
                last_end.push(r);
            }
        }
    }
    let tl = TrackLayout::new(g.n(), Mode::Proper, tracks)?;
    debug_assert!(tl.track_count() <= pd.width() + 1 || g.n() == 0);
    Ok(tl)
}

/// Proper layout on at most 3·width tracks from a tree-partition.
///
/// The bag tree gets a 3-track layout; graph track (b, j) holds, for each
/// bag on bag-track b in bag order, the bag's j-th smallest vertex. Edges
/// inside a bag join distinct slots of one bag-track; edges between a bag
/// and its parent follow bag-tree edges, which do not cross.
pub fn from_tree_partition(g: &Graph, tp: &TreePartition) -> Result<TrackLayout> {
    let nodes = tp.node_count();
    let mut owner = vec![usize::MAX; g.n()];
    for (x, bag) in tp.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() || owner[v] != usize::MAX {
                return Err(Error::InvalidTreePartition(
                    "bags do not partition the vertex set".into(),
                ));
            }
            owner[v] = x;
        }
    }
    if owner.iter().any(|&x| x == usize::MAX) {
        return Err(Error::InvalidTreePartition("a vertex is in no bag".into()));
    }
    for &(u, v) in g.edges() {
        let (a, b) = (owner[u], owner[v]);
        if a != b && tp.parent[a] != Some(b) && tp.parent[b] != Some(a) {
            return Err(Error::InvalidTreePartition(format!(
                "edge ({u}, {v}) spans non-adjacent bags"
            )));
        }
    }
    let bag_edges: Vec<(usize, usize)> = tp
        .parent
        .iter()
        .enumerate()
        .filter_map(|(x, p)| p.map(|p| (p, x)))
        .collect();
    let bag_tree = Graph::new(nodes, bag_edges)?;
    let bag_layout = tree_3track(&bag_tree)?;
    let w = tp.width();
    let mut tracks = vec![Vec::new(); bag_layout.track_count() * w.max(1)];
    for bag_track in bag_layout.tracks() {
        for &x in bag_track {
            let mut bag = tp.bags[x].clone();
            bag.sort_unstable();
            let b = bag_layout.track_of(x);
            for (j, &v) in bag.iter().enumerate() {
                tracks[b * w + j].push(v);
            }
        }
    }
    tracks.retain(|t| !t.is_empty());
    let tl = TrackLayout::new(g.n(), Mode::Proper, tracks)?;
    debug_assert!(tl.track_count() <= 3 * w.max(1));
    Ok(tl)
}

/// Wraps a layout whose edges span at most `s` tracks onto 2s+1 tracks:
/// track i moves to track i mod (2s+1), blocks in increasing i.
///
/// Two edges meeting a common new track from old tracks 2s+1 apart have all
/// endpoints in the same block order, and within one old track the window
/// of reachable partner tracks contains a single residue class member, so
/// no new crossings or intra-track edges appear. Layouts on at most 2s+1
/// tracks are returned unchanged.
pub fn wrap(g: &Graph, tl: &TrackLayout, s: usize) -> Result<TrackLayout> {
    let actual = max_span(g, tl);
    if actual > s {
        return Err(Error::BadParams(format!(
            "wrap needs span at most {s}, layout has span {actual}"
        )));
    }
    let ell = 2 * s + 1;
    if tl.track_count() <= ell {
        return Ok(tl.clone());
    }
    let mut tracks = vec![Vec::new(); ell];
    for (i, track) in tl.tracks().iter().enumerate() {
        tracks[i % ell].extend_from_slice(track);
    }
    TrackLayout::new(tl.n(), tl.mode(), tracks)
}

/// Positive rational target for [`balance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::BadParams("ratio must be positive".into()));
        }
        Ok(Ratio { num, den })
    }

    pub fn integer(v: u64) -> Self {
        Ratio { num: v, den: 1 }
    }

    pub fn floor(&self) -> u64 {
        self.num / self.den
    }

    /// ceil(x / self) for the balancing capacity.
    fn ceil_div_into(&self, x: u64) -> u64 {
        let num = x as u128 * self.den as u128;
        let den = self.num as u128;
        (num.div_ceil(den)) as u64
    }
}

/// Splits overloaded tracks into consecutive blocks of at most ⌈n/t'⌉
/// vertices. A t-track layout becomes one with at most ⌊t + t'⌋ tracks and
/// balanced track loads; block order preserves all vertex orders, so no
/// crossings appear, and an intra-track edge cut by a block boundary turns
/// into the unique edge between two adjacent blocks.
pub fn balance(tl: &TrackLayout, t_prime: Ratio) -> Result<TrackLayout> {
    let n = tl.n() as u64;
    if n == 0 {
        return Ok(tl.clone());
    }
    let cap = t_prime.ceil_div_into(n).max(1) as usize;
    let mut tracks = Vec::new();
    for track in tl.tracks() {
        if track.is_empty() {
            tracks.push(Vec::new());
            continue;
        }
        for block in track.chunks(cap) {
            tracks.push(block.to_vec());
        }
    }
    let out = TrackLayout::new(tl.n(), tl.mode(), tracks)?;
    debug_assert!(
        out.track_count() as u64 <= tl.track_count() as u64 + t_prime.floor(),
        "balance exceeded the track bound"
    );
    Ok(out)
}

/// Converts an improper layout into a proper one on at most twice as many
/// tracks by splitting every track carrying an intra-track edge into its
/// even- and odd-rank subsequences. Intra-track edges join consecutive
/// ranks, hence opposite parities, and become inter-track; subsequences
/// preserve all orders, so no crossings appear. Tracks without intra-track
/// edges are kept as they are.
pub fn improper_to_proper(g: &Graph, tl: &TrackLayout) -> Result<TrackLayout> {
    let mut has_intra = vec![false; tl.track_count()];
    for &(u, v) in g.edges() {
        let (tu, ru) = tl.position(u);
        let (tv, rv) = tl.position(v);
        if tu == tv {
            if ru.abs_diff(rv) != 1 {
                return Err(Error::BadParams(format!(
                    "intra-track edge ({u}, {v}) joins non-consecutive vertices"
                )));
            }
            has_intra[tu] = true;
        }
    }
    let mut tracks = Vec::new();
    for (i, track) in tl.tracks().iter().enumerate() {
        if has_intra[i] {
            tracks.push(track.iter().copied().step_by(2).collect());
            tracks.push(track.iter().copied().skip(1).step_by(2).collect());
        } else {
            tracks.push(track.clone());
        }
    }
    TrackLayout::new(tl.n(), Mode::Proper, tracks)
}

/// Orders vertex sets that cover the same tracks with one vertex per track.
///
/// In a crossing-free layout, two such sets never interleave: their
/// per-track positions compare the same way on every track (sets may share
/// vertices, so ties on individual tracks are allowed). Returns the indices
/// of `sets` sorted by position, smallest first.
pub fn nice_order(tl: &TrackLayout, sets: &[Vec<usize>]) -> Result<Vec<usize>> {
    if sets.is_empty() {
        return Ok(Vec::new());
    }
    let cover = covered_tracks(tl, &sets[0]);
    let mut keys: Vec<Vec<usize>> = Vec::with_capacity(sets.len());
    for set in sets {
        if covered_tracks(tl, set) != cover || set.len() != cover.len() {
            return Err(Error::NotSameCover);
        }
        let mut key = vec![usize::MAX; cover.len()];
        for &v in set {
            let (t, r) = tl.position(v);
            let slot = cover.binary_search(&t).expect("track is covered");
            key[slot] = r; // one vertex per track since |set| = |cover|
        }
        keys.push(key);
    }
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]).then(a.cmp(&b)));
    for pair in order.windows(2) {
        let (a, b) = (&keys[pair[0]], &keys[pair[1]]);
        if !a.iter().zip(b).all(|(x, y)| x <= y) {
            return Err(Error::InconsistentOrder);
        }
    }
    Ok(order)
}

/// The rows × cols grid graph together with its proper 3-track layout:
/// diagonal r+c = d goes to track d mod 3, ordered by increasing row.
/// Grid edges join consecutive diagonals and respect row order on both,
/// so no two edges cross.
pub fn grid_3track(rows: usize, cols: usize) -> Result<(Graph, TrackLayout)> {
    let g = crate::generate::generate(crate::generate::Family::Grid { rows, cols }, 0)?.graph;
    let mut tracks = vec![Vec::new(); 3];
    for d in 0..rows + cols - 1 {
        let lo = d.saturating_sub(cols - 1);
        let hi = rows.min(d + 1);
        for r in lo..hi {
            tracks[d % 3].push(r * cols + (d - r));
        }
    }
    drop_trailing_empty(&mut tracks);
    let tl = TrackLayout::new(g.n(), Mode::Proper, tracks)?;
    Ok((g, tl))
}

/// The recursive extremal family together with its proper layout on exactly
/// (k+1)(k+2)/2 tracks: clique vertices get one track each, the middle
/// vertices share the next track in id order, and all child copies are laid
/// out recursively on a common block of deeper tracks, concatenated in copy
/// order.
pub fn gk_layout(k: usize, vertex_budget: usize) -> Result<(Graph, TrackLayout)> {
    let (g, _) = crate::generate::generate_gk(k, vertex_budget)?;
    let mut tracks = vec![Vec::new(); crate::generate::gk_track_count(k)];
    gk_tracks(k, 0, 0, &mut tracks);
    let tl = TrackLayout::new(g.n(), Mode::Proper, tracks)?;
    Ok((g, tl))
}

fn gk_tracks(k: usize, base: usize, offset: usize, tracks: &mut [Vec<usize>]) {
    if k == 0 {
        tracks[offset].push(base);
        return;
    }
    for i in 0..k {
        tracks[offset + i].push(base + i);
    }
    let mid = crate::generate::gk_middle_count(k);
    let inner = crate::generate::gk_vertex_count(k - 1);
    for j in 0..mid {
        tracks[offset + k].push(base + k + j);
        gk_tracks(k - 1, base + k + mid + j * inner, offset + k + 1, tracks);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};
    use crate::tree_partition::build_tree_partition;

    fn path(n: usize) -> Graph {
        generate(Family::Path { n }, 0).unwrap().graph
    }

    #[test]
    fn constructor_rejects_bad_partitions() {
        assert!(TrackLayout::new(2, Mode::Proper, vec![vec![0, 0], vec![1]]).is_err());
        assert!(TrackLayout::new(2, Mode::Proper, vec![vec![0]]).is_err());
        assert!(TrackLayout::new(2, Mode::Proper, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn json_round_trip_is_canonical() {
        let tl = TrackLayout::new(3, Mode::Proper, vec![vec![0], vec![1, 2]]).unwrap();
        assert_eq!(tl.to_json(), r#"{"mode":"proper","tracks":[[0],[1,2]]}"#);
        assert_eq!(TrackLayout::from_json(&tl.to_json()).unwrap(), tl);
        let im = TrackLayout::new(2, Mode::Improper, vec![vec![0, 1]]).unwrap();
        assert_eq!(im.to_json(), r#"{"mode":"improper","tracks":[[0,1]]}"#);
    }

    #[test]
    fn verifier_detects_crossing_and_intra_track_edges() {
        let g = Graph::new(4, [(0, 3), (1, 2)]).unwrap();
        let crossed = TrackLayout::new(4, Mode::Proper, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let report = verify_track_layout(&g, &crossed);
        assert_eq!(report.crossing_count, 1);
        assert!(!report.pass());

        let nested = Graph::new(4, [(0, 2), (1, 3)]).unwrap();
        let fine = TrackLayout::new(4, Mode::Proper, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(verify_track_layout(&nested, &fine).pass());

        let pth = path(3);
        let improper = TrackLayout::new(3, Mode::Improper, vec![vec![0, 1, 2]]).unwrap();
        assert!(verify_track_layout(&pth, &improper).pass());
        let proper = TrackLayout::new(3, Mode::Proper, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(verify_track_layout(&pth, &proper).intra_track_violations.len(), 2);
        let skip = Graph::new(3, [(0, 2)]).unwrap();
        let gap = TrackLayout::new(3, Mode::Improper, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(verify_track_layout(&skip, &gap).intra_track_violations, vec![(0, 2)]);
    }

    #[test]
    fn tree_layout_uses_three_tracks() {
        let g = path(5);
        let tl = tree_3track(&g).unwrap();
        assert_eq!(tl.tracks(), &[vec![0, 3], vec![1, 4], vec![2]]);
        assert!(verify_track_layout(&g, &tl).pass());

        let star = generate(Family::Star { n: 6 }, 0).unwrap().graph;
        let tl = tree_3track(&star).unwrap();
        assert_eq!(tl.track_count(), 2);
        assert!(verify_track_layout(&star, &tl).pass());

        let forest = Graph::new(7, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6)]).unwrap();
        let tl = tree_3track(&forest).unwrap();
        assert_eq!(tl.track_count(), 3);
        assert!(verify_track_layout(&forest, &tl).pass());

        let cycle = generate(Family::Cycle { n: 4 }, 0).unwrap().graph;
        assert!(matches!(tree_3track(&cycle), Err(Error::NotForest)));
    }

    #[test]
    fn random_trees_get_three_crossing_free_tracks() {
        for seed in 0..20 {
            let g = generate(Family::RandomTree { n: 80 }, seed).unwrap().graph;
            let tl = tree_3track(&g).unwrap();
            assert!(tl.track_count() <= 3);
            assert!(verify_track_layout(&g, &tl).pass());
        }
    }

    #[test]
    fn path_decomposition_layout_stays_within_width_plus_one() {
        let g = path(4);
        let pd = PathDecomposition::new(vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        let tl = from_path_decomposition(&g, &pd).unwrap();
        assert!(tl.track_count() <= 2);
        assert!(verify_track_layout(&g, &tl).pass());

        let k3 = generate(Family::Complete { n: 3 }, 0).unwrap().graph;
        let pd = PathDecomposition::new(vec![vec![0, 1, 2]]);
        let tl = from_path_decomposition(&k3, &pd).unwrap();
        assert_eq!(tl.track_count(), 3);
        assert!(verify_track_layout(&k3, &tl).pass());

        let bad = PathDecomposition::new(vec![vec![0, 1]]);
        assert!(from_path_decomposition(&g, &bad).is_err());
    }

    #[test]
    fn tree_partition_layout_is_proper_and_bounded() {
        for seed in 0..5 {
            let g = generate(Family::RandomKTree { k: 2, n: 50 }, seed).unwrap().graph;
            let tp = build_tree_partition(&g, 2).unwrap();
            let tl = from_tree_partition(&g, &tp).unwrap();
            assert!(tl.track_count() <= 3 * tp.width());
            let report = verify_track_layout(&g, &tl);
            assert!(report.pass(), "{:?}", report.summary_lines());
        }
    }

    #[test]
    fn wrap_preserves_crossing_freeness() {
        // Path with one vertex per track: span 1, wraps onto 3 tracks.
        let g = path(10);
        let tall =
            TrackLayout::new(10, Mode::Proper, (0..10).map(|v| vec![v]).collect()).unwrap();
        let wrapped = wrap(&g, &tall, 1).unwrap();
        assert_eq!(wrapped.track_count(), 3);
        assert!(verify_track_layout(&g, &wrapped).pass());
        assert_eq!(wrapped.tracks()[0], vec![0, 3, 6, 9]);

        // Identity when the layout already fits.
        let tl = tree_3track(&g).unwrap();
        assert_eq!(wrap(&g, &tl, 2).unwrap(), tl);
        // Span larger than promised.
        assert!(wrap(&g, &tall, 0).is_err());
    }

    #[test]
    fn balance_splits_tracks_and_keeps_layout_valid() {
        let g = path(10);
        let single = TrackLayout::new(10, Mode::Improper, vec![(0..10).collect()]).unwrap();
        let balanced = balance(&single, Ratio::integer(5)).unwrap();
        assert!(balanced.track_count() <= 1 + 5);
        assert!(balanced.tracks().iter().all(|t| t.len() <= 2));
        assert!(verify_track_layout(&g, &balanced).pass());

        let proper = tree_3track(&g).unwrap();
        let b = balance(&proper, Ratio::new(7, 2).unwrap()).unwrap();
        assert!(b.track_count() <= proper.track_count() + 3);
        assert!(b.tracks().iter().all(|t| t.len() <= 3)); // cap = ceil(20/7)
        assert!(verify_track_layout(&g, &b).pass());
        assert!(Ratio::new(0, 1).is_err());
    }

    #[test]
    fn improper_layouts_become_proper() {
        let g = path(6);
        let im = TrackLayout::new(6, Mode::Improper, vec![(0..6).collect()]).unwrap();
        let pr = improper_to_proper(&g, &im).unwrap();
        assert_eq!(pr.mode(), Mode::Proper);
        assert_eq!(pr.track_count(), 2);
        assert!(verify_track_layout(&g, &pr).pass());

        // Tracks without intra-track edges stay untouched.
        let tl = tree_3track(&g).unwrap();
        let same = improper_to_proper(&g, &tl).unwrap();
        assert_eq!(same.tracks(), tl.tracks());

        let skip = Graph::new(3, [(0, 2)]).unwrap();
        let gap = TrackLayout::new(3, Mode::Improper, vec![vec![0, 1, 2]]).unwrap();
        assert!(improper_to_proper(&skip, &gap).is_err());
    }

    #[test]
    fn nice_order_sorts_consistent_sets() {
        let tl = TrackLayout::new(6, Mode::Proper, vec![vec![0, 2, 4], vec![1, 3, 5]]).unwrap();
        let order = nice_order(&tl, &[vec![2, 3], vec![0, 1], vec![4, 5]]).unwrap();
        assert_eq!(order, vec![1, 0, 2]);
        // Shared vertices tie on one track.
        let order = nice_order(&tl, &[vec![2, 1], vec![0, 1]]).unwrap();
        assert_eq!(order, vec![1, 0]);

        assert!(matches!(
            nice_order(&tl, &[vec![0, 3], vec![2, 1]]),
            Err(Error::InconsistentOrder)
        ));
        assert!(matches!(
            nice_order(&tl, &[vec![0, 1], vec![0, 2]]),
            Err(Error::NotSameCover)
        ));
    }

    #[test]
    fn grid_diagonals_give_three_tracks() {
        let (g, tl) = grid_3track(3, 3).unwrap();
        assert_eq!(tl.track_count(), 3);
        assert!(verify_track_layout(&g, &tl).pass());
        let (g, tl) = grid_3track(1, 2).unwrap();
        assert_eq!(tl.track_count(), 2);
        assert!(verify_track_layout(&g, &tl).pass());
        for (r, c) in [(2, 5), (4, 4), (5, 2)] {
            let (g, tl) = grid_3track(r, c).unwrap();
            assert_eq!(tl.track_count(), 3);
            assert!(verify_track_layout(&g, &tl).pass());
        }
    }

    #[test]
    fn extremal_family_layout_hits_exact_track_count() {
        for k in 0..4 {
            let (g, tl) = gk_layout(k, 1_000_000).unwrap();
            assert_eq!(tl.track_count(), (k + 1) * (k + 2) / 2);
            let report = verify_track_layout(&g, &tl);
            assert!(report.pass(), "k = {k}: {:?}", report.summary_lines());
        }
    }
}
