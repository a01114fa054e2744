//! Proper track layouts of k-trees on a bounded number of tracks.
//!
//! The recursion: a connected k-tree has a tree-partition whose bags induce
//! connected (k-1)-trees. All bags are laid out recursively on one shared
//! track universe, and a vertex's final track is the triple
//! (bag depth mod 3, cover class of the bag's parent clique, recursive track).
//! Within a track, bags are blocked by increasing depth; bags of equal depth
//! and cover class are ordered by their parents' block order, refined by the
//! position order of their parent cliques, so no two edges cross.
//!
//! The track count telescopes to t_k below; the number of distinct parent
//! clique cover sets at each level is bounded by s_k.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::graph::Graph;
use crate::track::{nice_order, Mode, TrackLayout};
use crate::tree_partition::{build_tree_partition, TreePartition};
use crate::{Error, Result};

/// t_k = 3^k * 6^((4^k - 3k - 1)/9), the track bound for k-trees:
/// t_0 = 1, t_k = 3 * s_{k-1} * t_{k-1}. `None` once the value
/// overflows 128 bits.
pub fn track_bound(k: usize) -> Option<u128> {
    let mut t: u128 = 1;
    for level in 1..=k {
        t = t.checked_mul(3)?.checked_mul(cover_bound(level - 1)?)?;
    }
    Some(t)
}

/// s_k = 6^((4^k - 1)/3), the bound on distinct parent-clique cover sets
/// in a level-k layout: s_0 = 1, s_k = 6 * s_{k-1}^4. `None` once the
/// value overflows 128 bits.
pub fn cover_bound(k: usize) -> Option<u128> {
    let mut s: u128 = 1;
    for _ in 0..k {
        s = s.checked_pow(4)?.checked_mul(6)?;
    }
    Some(s)
}

struct BatchItem {
    graph: Graph,
    /// local vertex id -> caller vertex id, ascending.
    globals: Vec<usize>,
}

/// Proper track layout of a k-tree (more generally, of any graph whose
/// construction ordering has back-cliques of size at most k at every
/// recursion level) on at most t_k tracks. Components are laid out on the
/// shared tracks and concatenated.
pub fn ktree_track_layout(g: &Graph, k: usize) -> Result<TrackLayout> {
    if k == 0 {
        if g.m() > 0 {
            return Err(Error::NotKTree("graphs with edges need k >= 1".into()));
        }
        let tracks = if g.n() > 0 { vec![(0..g.n()).collect()] } else { Vec::new() };
        return TrackLayout::new(g.n(), Mode::Proper, tracks);
    }
    if g.n() == 0 {
        return TrackLayout::new(0, Mode::Proper, Vec::new());
    }
    let items: Vec<BatchItem> = g
        .components()
        .into_iter()
        .map(|comp| {
            let (graph, globals) = g.induced(&comp);
            BatchItem { graph, globals }
        })
        .collect();
    let (maps, universe) = layout_batch(&items, k)?;
    let mut tracks = vec![Vec::new(); universe];
    for map in maps {
        for (id, vertices) in map {
            tracks[id].extend(vertices);
        }
    }
    TrackLayout::new(g.n(), Mode::Proper, tracks)
}

/// Lays out a batch of disjoint connected graphs of tree-width <= `level`
/// on one shared track universe. Returns, per input, the map from shared
/// track id to that input's vertices in track order (caller ids), plus the
/// universe size.
fn layout_batch(
    items: &[BatchItem],
    level: usize,
) -> Result<(Vec<BTreeMap<usize, Vec<usize>>>, usize)> {
    if level == 0 {
        let mut maps = Vec::with_capacity(items.len());
        for item in items {
            if item.graph.n() != 1 {
                return Err(Error::NotKTree(
                    "a recursion leaf still has more than one vertex".into(),
                ));
            }
            maps.push(BTreeMap::from([(0usize, vec![item.globals[0]])]));
        }
        return Ok((maps, 1));
    }

    // Tree-partition every item and gather all bags into the next batch.
    let mut parts: Vec<TreePartition> = Vec::with_capacity(items.len());
    let mut sub_items: Vec<BatchItem> = Vec::new();
    let mut slot: Vec<Vec<usize>> = Vec::with_capacity(items.len());
    for item in items {
        let part = build_tree_partition(&item.graph, level)?;
        let mut slots = Vec::with_capacity(part.node_count());
        for bag in &part.bags {
            let (graph, local_map) = item.graph.induced(bag);
            let globals = local_map.iter().map(|&v| item.globals[v]).collect();
            slots.push(sub_items.len());
            sub_items.push(BatchItem { graph, globals });
        }
        slot.push(slots);
        parts.push(part);
    }
    let (sub_maps, _) = layout_batch(&sub_items, level - 1)?;

    // Cover classes are shared across the whole batch: two parent cliques
    // get the same class exactly when they cover the same recursive tracks.
    let mut registry: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut alphas: Vec<Vec<usize>> = Vec::with_capacity(items.len());
    for (i, (item, part)) in items.iter().zip(&parts).enumerate() {
        let mut alpha = vec![0usize; part.node_count()];
        let mut track_of_cache: BTreeMap<usize, HashMap<usize, usize>> = BTreeMap::new();
        for x in 0..part.node_count() {
            let Some(p) = part.parent[x] else {
                alpha[x] = 1; // root bags share the first cover class
                continue;
            };
            let track_of = track_of_cache.entry(p).or_insert_with(|| {
                let mut m = HashMap::new();
                for (&sub, vertices) in &sub_maps[slot[i][p]] {
                    for &v in vertices {
                        m.insert(v, sub);
                    }
                }
                m
            });
            let mut cover: Vec<usize> = part.parent_clique[x]
                .iter()
                .map(|&u| track_of[&item.globals[u]])
                .collect();
            cover.sort_unstable();
            cover.dedup();
            if cover.is_empty() {
                return Err(Error::Internal("non-root bag with empty parent clique".into()));
            }
            let next = registry.len() + 1;
            alpha[x] = *registry.entry(cover).or_insert(next);
        }
        alphas.push(alpha);
    }
    if let Some(bound) = cover_bound(level - 1) {
        debug_assert!(
            registry.len() as u128 <= bound,
            "cover registry holds {} > s_{} = {} sets",
            registry.len(),
            level - 1,
            bound
        );
    }

    // Order and assemble each item's tracks.
    let mut keys: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    let mut raw: Vec<BTreeMap<(usize, usize, usize), Vec<usize>>> = Vec::with_capacity(items.len());
    for (i, (item, part)) in items.iter().zip(&parts).enumerate() {
        let alpha = &alphas[i];
        let nodes = part.node_count();
        let max_depth = part.depth.iter().copied().max().unwrap_or(0);
        let mut by_depth: Vec<Vec<usize>> = vec![Vec::new(); max_depth + 1];
        for x in 0..nodes {
            by_depth[part.depth[x]].push(x);
        }
        // Block rank of each bag among bags of equal depth and cover class.
        let mut rank = vec![0usize; nodes];
        let mut parent_layouts: BTreeMap<usize, (TrackLayout, Vec<usize>)> = BTreeMap::new();
        for bags in &by_depth {
            let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
            for &x in bags {
                groups.entry(alpha[x]).or_default().push(x);
            }
            for group in groups.values() {
                let nice = nice_ranks(group, part, item, &sub_maps, &slot[i], &mut parent_layouts)?;
                let mut order: Vec<usize> = (0..group.len()).collect();
                order.sort_by_key(|&gi| {
                    let x = group[gi];
                    let (pa, pr) = match part.parent[x] {
                        Some(p) => (alpha[p], rank[p]),
                        None => (0, 0),
                    };
                    (pa, pr, nice[gi], item.globals[part.bags[x][0]])
                });
                for (r, &gi) in order.iter().enumerate() {
                    rank[group[gi]] = r;
                }
            }
        }
        let mut out: BTreeMap<(usize, usize, usize), Vec<usize>> = BTreeMap::new();
        for (d, bags) in by_depth.iter().enumerate() {
            let mut ordered: Vec<usize> = bags.clone();
            ordered.sort_by_key(|&x| (alpha[x], rank[x]));
            for x in ordered {
                for (&sub, vertices) in &sub_maps[slot[i][x]] {
                    out.entry((d % 3, alpha[x], sub))
                        .or_default()
                        .extend(vertices.iter().copied());
                }
            }
        }
        keys.extend(out.keys().copied());
        raw.push(out);
    }
    if let Some(bound) = track_bound(level) {
        debug_assert!(
            keys.len() as u128 <= bound,
            "layout uses {} > t_{} = {} tracks",
            keys.len(),
            level,
            bound
        );
    }
    let id_of: BTreeMap<(usize, usize, usize), usize> =
        keys.iter().enumerate().map(|(id, &key)| (key, id)).collect();
    let maps = raw
        .into_iter()
        .map(|out| out.into_iter().map(|(key, vs)| (id_of[&key], vs)).collect())
        .collect();
    Ok((maps, keys.len()))
}

/// Rank of each bag in `group` among the bags sharing its parent: siblings
/// with equal cover class are ordered by the positions of their parent
/// cliques in the parent bag's recursive layout.
fn nice_ranks(
    group: &[usize],
    part: &TreePartition,
    item: &BatchItem,
    sub_maps: &[BTreeMap<usize, Vec<usize>>],
    slots: &[usize],
    parent_layouts: &mut BTreeMap<usize, (TrackLayout, Vec<usize>)>,
) -> Result<Vec<usize>> {
    let mut by_parent: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (gi, &x) in group.iter().enumerate() {
        match part.parent[x] {
            Some(p) => by_parent.entry(p).or_default().push(gi),
            None => {} // a lone root; its rank stays 0
        }
    }
    let mut nice = vec![0usize; group.len()];
    for (&p, kids) in &by_parent {
        if kids.len() == 1 {
            continue;
        }
        let (layout, locals) = parent_layouts.entry(p).or_insert_with(|| {
            let mut locals: Vec<usize> = sub_maps[slots[p]].values().flatten().copied().collect();
            locals.sort_unstable();
            let tracks: Vec<Vec<usize>> = sub_maps[slots[p]]
                .values()
                .map(|vs| {
                    vs.iter()
                        .map(|v| locals.binary_search(v).expect("vertex of the bag"))
                        .collect()
                })
                .collect();
            let layout = TrackLayout::new(locals.len(), Mode::Proper, tracks)
                .expect("recursive layouts partition the bag");
            (layout, locals)
        });
        let cliques: Vec<Vec<usize>> = kids
            .iter()
            .map(|&gi| {
                part.parent_clique[group[gi]]
                    .iter()
                    .map(|&u| {
                        locals
                            .binary_search(&item.globals[u])
                            .expect("clique lies in the parent bag")
                    })
                    .collect()
            })
            .collect();
        let order = nice_order(layout, &cliques)?;
        for (r, &oi) in order.iter().enumerate() {
            nice[kids[oi]] = r;
        }
    }
    Ok(nice)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate, Family};
    use crate::track::verify_track_layout;

    #[test]
    fn bounds_match_their_closed_forms() {
        assert_eq!(track_bound(0), Some(1));
        assert_eq!(track_bound(1), Some(3));
        assert_eq!(track_bound(2), Some(54));
        assert_eq!(cover_bound(0), Some(1));
        assert_eq!(cover_bound(1), Some(6));
        assert_eq!(cover_bound(2), Some(7776));
        for k in 0..5u32 {
            let t = 3u128.pow(k) * 6u128.pow((4u128.pow(k) as u32 - 3 * k - 1) / 9);
            assert_eq!(track_bound(k as usize), Some(t));
        }
        for k in 0..4u32 {
            let s = 6u128.pow((4u128.pow(k) as u32 - 1) / 3);
            assert_eq!(cover_bound(k as usize), Some(s));
        }
        assert_eq!(track_bound(5), None); // needs s_4 = 6^85
        assert_eq!(cover_bound(4), None);
    }

    #[test]
    fn path_layout_matches_depth_classes() {
        let g = generate(Family::Path { n: 5 }, 0).unwrap().graph;
        let tl = ktree_track_layout(&g, 1).unwrap();
        assert_eq!(tl.tracks(), &[vec![0, 3], vec![1, 4], vec![2]]);
        assert!(verify_track_layout(&g, &tl).pass());
    }

    #[test]
    fn trees_use_at_most_three_tracks() {
        for seed in 0..10 {
            let g = generate(Family::RandomTree { n: 60 }, seed).unwrap().graph;
            let tl = ktree_track_layout(&g, 1).unwrap();
            assert!(tl.track_count() <= 3);
            assert!(verify_track_layout(&g, &tl).pass());
        }
    }

    #[test]
    fn two_trees_use_at_most_fifty_four_tracks() {
        for seed in 0..5 {
            let g = generate(Family::RandomKTree { k: 2, n: 150 }, seed).unwrap().graph;
            let tl = ktree_track_layout(&g, 2).unwrap();
            assert!(tl.track_count() <= 54);
            let report = verify_track_layout(&g, &tl);
            assert!(report.pass(), "{:?}", report.summary_lines());
        }
    }

    #[test]
    fn deeper_ktrees_verify() {
        for (k, n) in [(3, 80), (4, 60)] {
            for seed in 0..3 {
                let g = generate(Family::RandomKTree { k, n }, seed).unwrap().graph;
                let tl = ktree_track_layout(&g, k).unwrap();
                let report = verify_track_layout(&g, &tl);
                assert!(report.pass(), "k = {k}: {:?}", report.summary_lines());
                assert!(tl.track_count() as u128 <= track_bound(k).unwrap());
            }
        }
    }

    #[test]
    fn extremal_family_stays_within_bounds() {
        let (g1, _) = crate::track::gk_layout(1, 1_000_000).unwrap();
        let tl = ktree_track_layout(&g1, 1).unwrap();
        assert!(tl.track_count() <= 3);
        assert!(verify_track_layout(&g1, &tl).pass());
        let (g2, _) = crate::track::gk_layout(2, 1_000_000).unwrap();
        let tl = ktree_track_layout(&g2, 2).unwrap();
        assert!(tl.track_count() <= 54);
        assert!(verify_track_layout(&g2, &tl).pass());
    }

    #[test]
    fn disconnected_components_share_tracks() {
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6)]).unwrap();
        let tl = ktree_track_layout(&g, 1).unwrap();
        assert!(tl.track_count() <= 3);
        assert!(verify_track_layout(&g, &tl).pass());
    }

    #[test]
    fn wrong_parameters_are_rejected() {
        let two_tree = generate(Family::RandomKTree { k: 2, n: 10 }, 0).unwrap().graph;
        assert!(matches!(ktree_track_layout(&two_tree, 1), Err(Error::NotKTree(_))));
        let cycle = generate(Family::Cycle { n: 4 }, 0).unwrap().graph;
        assert!(matches!(ktree_track_layout(&cycle, 2), Err(Error::NotKTree(_))));
        let edgy = Graph::new(2, [(0, 1)]).unwrap();
        assert!(matches!(ktree_track_layout(&edgy, 0), Err(Error::NotKTree(_))));
        let edgeless = Graph::empty(4);
        let tl = ktree_track_layout(&edgeless, 0).unwrap();
        assert_eq!(tl.tracks(), &[vec![0, 1, 2, 3]]);
    }

    #[test]
    fn larger_k_than_needed_still_works() {
        let g = generate(Family::RandomTree { n: 40 }, 5).unwrap().graph;
        let tl = ktree_track_layout(&g, 2).unwrap();
        assert!(tl.track_count() <= 54);
        assert!(verify_track_layout(&g, &tl).pass());
    }
}
