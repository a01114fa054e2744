//! Crossing-free drawings on the 3D integer grid.
//!
//! A drawing assigns each vertex a lattice point; it is valid when all
//! points are distinct, no vertex lies in the interior of an edge segment,
//! and no two edges intersect outside a shared endpoint. All geometric
//! predicates are evaluated exactly in 128-bit integers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::track::{balance, Mode, Ratio, TrackLayout};
use crate::{Error, Result};

/// Coordinate magnitude cap keeping every determinant within i128.
pub const MAX_COORD: i64 = 1 << 40;

/// Integer points indexed by vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing3D {
    points: Vec<(i64, i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct Drawing3DJson {
    points: Vec<(i64, i64, i64)>,
}

impl Drawing3D {
    pub fn new(points: Vec<(i64, i64, i64)>) -> Result<Self> {
        for &(x, y, z) in &points {
            if x.abs() > MAX_COORD || y.abs() > MAX_COORD || z.abs() > MAX_COORD {
                return Err(Error::BadParams(format!(
                    "coordinate magnitude above {MAX_COORD}"
                )));
            }
        }
        Ok(Drawing3D { points })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[(i64, i64, i64)] {
        &self.points
    }

    pub fn point(&self, v: usize) -> (i64, i64, i64) {
        self.points[v]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&Drawing3DJson { points: self.points.clone() })
            .expect("drawing serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: Drawing3DJson =
            serde_json::from_str(s).map_err(|e| Error::BadParams(format!("drawing JSON: {e}")))?;
        Drawing3D::new(raw.points)
    }
}

/// Grid positions occupied per axis: max - min + 1, or zeros when empty.
pub fn extents(d: &Drawing3D) -> (u64, u64, u64) {
    if d.n() == 0 {
        return (0, 0, 0);
    }
    let axis = |f: fn(&(i64, i64, i64)) -> i64| {
        let lo = d.points().iter().map(f).min().expect("non-empty");
        let hi = d.points().iter().map(f).max().expect("non-empty");
        (hi - lo) as u64 + 1
    };
    (axis(|p| p.0), axis(|p| p.1), axis(|p| p.2))
}

/// Most edges any crossing-free drawing inside an x-by-y-by-z box can have:
/// each edge consumes a distinct midpoint on the half-integer grid, which
/// has (2x-1)(2y-1)(2z-1) points, minus the xyz occupied by vertices.
pub fn box_edge_capacity(x: u64, y: u64, z: u64) -> u128 {
    if x == 0 || y == 0 || z == 0 {
        return 0;
    }
    let (x, y, z) = (x as u128, y as u128, z as u128);
    (2 * x - 1) * (2 * y - 1) * (2 * z - 1) - x * y * z
}

type V3 = (i128, i128, i128);

fn sub(p: (i64, i64, i64), q: (i64, i64, i64)) -> V3 {
    (
        p.0 as i128 - q.0 as i128,
        p.1 as i128 - q.1 as i128,
        p.2 as i128 - q.2 as i128,
    )
}

fn cross(a: V3, b: V3) -> V3 {
    (
        a.1 * b.2 - a.2 * b.1,
        a.2 * b.0 - a.0 * b.2,
        a.0 * b.1 - a.1 * b.0,
    )
}

fn dot(a: V3, b: V3) -> i128 {
    a.0 * b.0 + a.1 * b.1 + a.2 * b.2
}

fn is_zero(a: V3) -> bool {
    a == (0, 0, 0)
}

/// Drops the given axis, yielding exact 2D coordinates.
fn drop_axis(a: V3, axis: usize) -> (i128, i128) {
    match axis {
        0 => (a.1, a.2),
        1 => (a.0, a.2),
        _ => (a.0, a.1),
    }
}

fn cross2(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

/// Exact closed-segment intersection test for segments with four distinct
/// endpoints.
fn segments_intersect(
    a: (i64, i64, i64),
    b: (i64, i64, i64),
    c: (i64, i64, i64),
    d: (i64, i64, i64),
) -> bool {
    let d1 = sub(b, a);
    let d2 = sub(d, c);
    let r = sub(c, a);
    if dot(r, cross(d1, d2)) != 0 {
        return false; // skew lines
    }
    let n = cross(d1, d2);
    if !is_zero(n) {
        // Coplanar, non-parallel: project out the dominant normal axis,
        // where the directions stay independent, and solve exactly.
        let axis = if n.0.abs() >= n.1.abs() && n.0.abs() >= n.2.abs() {
            0
        } else if n.1.abs() >= n.2.abs() {
            1
        } else {
            2
        };
        let dp1 = drop_axis(d1, axis);
        let dp2 = drop_axis(d2, axis);
        let rp = drop_axis(r, axis);
        // a + s*d1 = c + t*d2 with s = s_num/den and t = t_num/den.
        let mut den = cross2(dp1, dp2);
        let mut s_num = cross2(rp, dp2);
        let mut t_num = cross2(rp, dp1);
        debug_assert_ne!(den, 0);
        if den < 0 {
            den = -den;
            s_num = -s_num;
            t_num = -t_num;
        }
        (0..=den).contains(&s_num) && (0..=den).contains(&t_num)
    } else {
        if !is_zero(cross(d1, r)) {
            return false; // distinct parallel lines
        }
        // Collinear: compare 1D shadows on the dominant axis of d1.
        let axis = if d1.0.abs() >= d1.1.abs() && d1.0.abs() >= d1.2.abs() {
            0
        } else if d1.1.abs() >= d1.2.abs() {
            1
        } else {
            2
        };
        let coord = |p: (i64, i64, i64)| match axis {
            0 => p.0,
            1 => p.1,
            _ => p.2,
        };
        let (a1, b1) = (coord(a).min(coord(b)), coord(a).max(coord(b)));
        let (a2, b2) = (coord(c).min(coord(d)), coord(c).max(coord(d)));
        a1.max(a2) <= b1.min(b2)
    }
}

/// Per-check results for a 3D grid drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrawingReport {
    pub extents: (u64, u64, u64),
    pub duplicate_count: u64,
    pub duplicate_witnesses: Vec<(usize, usize)>,
    pub vertex_on_edge_count: u64,
    pub vertex_on_edge_witnesses: Vec<(usize, (usize, usize))>,
    pub crossing_count: u64,
    pub crossing_witnesses: Vec<((usize, usize), (usize, usize))>,
}

impl DrawingReport {
    pub fn pass(&self) -> bool {
        self.duplicate_count == 0 && self.vertex_on_edge_count == 0 && self.crossing_count == 0
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let ok = |c: u64| if c == 0 { "ok" } else { "FAIL" };
        let mut lines = vec![
            format!(
                "box: {} x {} x {}",
                self.extents.0, self.extents.1, self.extents.2
            ),
            format!("duplicate points: {} ({})", self.duplicate_count, ok(self.duplicate_count)),
            format!(
                "vertices inside edges: {} ({})",
                self.vertex_on_edge_count,
                ok(self.vertex_on_edge_count)
            ),
            format!("edge crossings: {} ({})", self.crossing_count, ok(self.crossing_count)),
        ];
        for &(u, v) in &self.duplicate_witnesses {
            lines.push(format!("  vertices {u} and {v} share a point"));
        }
        for &(w, (u, v)) in &self.vertex_on_edge_witnesses {
            lines.push(format!("  vertex {w} lies inside edge ({u}, {v})"));
        }
        for &((a, b), (c, d)) in &self.crossing_witnesses {
            lines.push(format!("  edges ({a}, {b}) and ({c}, {d}) intersect"));
        }
        lines
    }
}

/// Exact verifier: distinct points, no vertex strictly inside an edge, no
/// intersection between edges that share no endpoint.
pub fn verify_drawing(g: &Graph, d: &Drawing3D) -> DrawingReport {
    assert_eq!(g.n(), d.n(), "drawing and graph disagree on vertex count");
    let pts = d.points();

    let mut idx: Vec<usize> = (0..g.n()).collect();
    idx.sort_unstable_by_key(|&v| pts[v]);
    let mut duplicate_count = 0u64;
    let mut duplicate_witnesses = Vec::new();
    for w in idx.windows(2) {
        if pts[w[0]] == pts[w[1]] {
            duplicate_count += 1;
            if duplicate_witnesses.len() < 16 {
                duplicate_witnesses.push((w[0].min(w[1]), w[0].max(w[1])));
            }
        }
    }

    let mut vertex_on_edge_count = 0u64;
    let mut vertex_on_edge_witnesses = Vec::new();
    for &(u, v) in g.edges() {
        let dir = sub(pts[v], pts[u]);
        if is_zero(dir) {
            continue; // already reported as a duplicate pair
        }
        let len2 = dot(dir, dir);
        for w in 0..g.n() {
            if w == u || w == v {
                continue;
            }
            let off = sub(pts[w], pts[u]);
            let along = dot(off, dir);
            if is_zero(cross(off, dir)) && 0 < along && along < len2 {
                vertex_on_edge_count += 1;
                if vertex_on_edge_witnesses.len() < 16 {
                    vertex_on_edge_witnesses.push((w, (u, v)));
                }
            }
        }
    }

    let mut crossing_count = 0u64;
    let mut crossing_witnesses = Vec::new();
    let edges = g.edges();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, e) in &edges[i + 1..] {
            if a == c || a == e || b == c || b == e {
                continue; // touching at a shared endpoint is allowed
            }
            if pts[a] == pts[b] || pts[c] == pts[e] {
                continue; // degenerate, reported as duplicates
            }
            if segments_intersect(pts[a], pts[b], pts[c], pts[e]) {
                crossing_count += 1;
                if crossing_witnesses.len() < 16 {
                    crossing_witnesses.push(((a, b), (c, e)));
                }
            }
        }
    }

    DrawingReport {
        extents: extents(d),
        duplicate_count,
        duplicate_witnesses,
        vertex_on_edge_count,
        vertex_on_edge_witnesses,
        crossing_count,
        crossing_witnesses,
    }
}

/// Smallest prime strictly above x.
pub fn smallest_prime_above(x: usize) -> usize {
    let mut c = x + 1;
    loop {
        if c >= 2 && (2..).take_while(|d| d * d <= c).all(|d| c % d != 0) {
            return c;
        }
        c += 1;
    }
}

fn pow_mod(base: usize, exp: u32, modulus: usize) -> i64 {
    ((base as u128).pow(exp) % modulus as u128) as i64
}

/// Places vertex v at (v+1, (v+1)^2, (v+1)^3). Any four points of the
/// moment curve span a nonzero Vandermonde determinant, so no four are
/// coplanar and no three collinear: every graph on these points is
/// crossing-free, in an n x n^2 x n^3 box.
pub fn moment_curve(n: usize) -> Result<Drawing3D> {
    let points = (1..=n as i64)
        .map(|i| {
            let c = i.checked_pow(3).ok_or_else(|| {
                Error::BadParams("moment curve coordinates overflow".into())
            })?;
            Ok((i, i * i, c))
        })
        .collect::<Result<_>>()?;
    Drawing3D::new(points)
}

/// Places vertex v at (v+1, (v+1)^2 mod p, (v+1)^3 mod p) for the smallest
/// prime p > n. The same Vandermonde argument applies modulo p, shrinking
/// the box to n x 2n x 2n while staying crossing-free for every graph.
pub fn cohen_mod_p(n: usize) -> Result<Drawing3D> {
    let p = smallest_prime_above(n);
    let points = (1..=n)
        .map(|i| (i as i64, pow_mod(i, 2, p), pow_mod(i, 3, p)))
        .collect();
    Drawing3D::new(points)
}

/// Sides of the fixed box any drawing of the layout produced by
/// [`draw_from_track`] fits in: t x 2t x 2t*h for t tracks of size <= h.
pub fn nominal_box(tl: &TrackLayout) -> (u64, u64, u64) {
    let t = tl.track_count() as u64;
    let h = tl.tracks().iter().map(|tr| tr.len()).max().unwrap_or(0) as u64;
    (t, 2 * t, 2 * t * h)
}

/// Draws a track layout: track i becomes the vertical line x = i+1,
/// y = (i+1)^2 mod p, with z running over values congruent to (i+1)^3
/// modulo p in track order, for the smallest prime p above the track count.
///
/// Between two fixed lines (always coplanar), segments cannot cross without
/// an X-crossing in the layout; across three or four distinct lines, any
/// crossing would force four coplanar points whose determinant is a nonzero
/// Vandermonde product modulo p. Intra-track edges of improper layouts are
/// vertical steps between consecutive points of a line and cross nothing.
/// On the singleton-track layout of a complete graph this reproduces
/// [`cohen_mod_p`] point for point.
pub fn draw_from_track(g: &Graph, tl: &TrackLayout) -> Result<Drawing3D> {
    if g.n() != tl.n() {
        return Err(Error::BadParams("layout and graph disagree on vertex count".into()));
    }
    let p = smallest_prime_above(tl.track_count());
    let mut points = vec![(0i64, 0i64, 0i64); g.n()];
    for (i, track) in tl.tracks().iter().enumerate() {
        let x = (i + 1) as i64;
        let y = pow_mod(i + 1, 2, p);
        let z0 = pow_mod(i + 1, 3, p);
        for (rank, &v) in track.iter().enumerate() {
            points[v] = (x, y, z0 + (rank as i64) * p as i64);
        }
    }
    let d = Drawing3D::new(points)?;
    debug_assert!({
        let (x, y, z) = extents(&d);
        let (bx, by, bz) = nominal_box(tl);
        x <= bx && y <= by && z <= bz
    });
    Ok(d)
}

/// Reads a track layout back off a drawing: vertices sharing a vertical
/// line form a track ordered by z, and lines are ordered by (x, y). For a
/// valid drawing this is crossing-free with intra-track edges only between
/// consecutive vertices, since any two vertical lines are coplanar and a
/// skipped vertex would lie inside the edge segment.
pub fn track_from_drawing(g: &Graph, d: &Drawing3D) -> Result<TrackLayout> {
    if g.n() != d.n() {
        return Err(Error::BadParams("drawing and graph disagree on vertex count".into()));
    }
    let mut columns: BTreeMap<(i64, i64), Vec<(i64, usize)>> = BTreeMap::new();
    for v in 0..d.n() {
        let (x, y, z) = d.point(v);
        columns.entry((x, y)).or_default().push((z, v));
    }
    let mut tracks = Vec::with_capacity(columns.len());
    for (_, mut col) in columns {
        col.sort_unstable();
        if col.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::BadParams("drawing repeats a point".into()));
        }
        tracks.push(col.into_iter().map(|(_, v)| v).collect::<Vec<_>>());
    }
    let track_of = {
        let mut t = vec![0usize; g.n()];
        for (i, track) in tracks.iter().enumerate() {
            for &v in track {
                t[v] = i;
            }
        }
        t
    };
    let mode = if g.edges().iter().any(|&(u, v)| track_of[u] == track_of[v]) {
        Mode::Improper
    } else {
        Mode::Proper
    };
    TrackLayout::new(g.n(), mode, tracks)
}

/// Balances the layout to at most 2t tracks of at most ceil(n/t) vertices
/// and draws it, fitting a 2t x 4t x 4t*ceil(n/t) box.
pub fn draw_balanced(g: &Graph, tl: &TrackLayout) -> Result<(Drawing3D, (u64, u64, u64))> {
    if tl.track_count() == 0 {
        return Ok((Drawing3D::new(Vec::new())?, (0, 0, 0)));
    }
    let balanced = balance(tl, Ratio::integer(tl.track_count() as u64))?;
    let d = draw_from_track(g, &balanced)?;
    Ok((d, nominal_box(&balanced)))
}

/// Draws the layout inside a box of volume at most 32n^3/r^2 whose sides
/// are within a factor 2r of each other, by rebalancing to roughly n/r
/// tracks of at most r vertices. Requires 1 <= r and r*t <= n.
pub fn draw_aspect(g: &Graph, tl: &TrackLayout, r: u64) -> Result<(Drawing3D, (u64, u64, u64))> {
    let n = g.n() as u64;
    let t = tl.track_count() as u64;
    if r < 1 {
        return Err(Error::BadParams("aspect parameter must be at least 1".into()));
    }
    if r.checked_mul(t).map_or(true, |rt| rt > n) {
        return Err(Error::BadParams(format!(
            "aspect parameter {r} needs r * tracks <= n, got {t} tracks on {n} vertices"
        )));
    }
    if n == 0 {
        return Ok((Drawing3D::new(Vec::new())?, (0, 0, 0)));
    }
    let balanced = balance(tl, Ratio::new(n, r)?)?;
    let d = draw_from_track(g, &balanced)?;
    let b = nominal_box(&balanced);
    debug_assert!({
        let vol = b.0 as u128 * b.1 as u128 * b.2 as u128;
        vol * (r as u128).pow(2) <= 32 * (n as u128).pow(3)
    });
    debug_assert!({
        let hi = b.0.max(b.1).max(b.2) as u128;
        let lo = b.0.min(b.1).min(b.2) as u128;
        hi <= 2 * r as u128 * lo
    });
    Ok((d, b))
}

/// Wavefront OBJ text: one `v` record per vertex, one `l` record per edge.
pub fn to_obj(g: &Graph, d: &Drawing3D) -> String {
    assert_eq!(g.n(), d.n(), "drawing and graph disagree on vertex count");
    let mut out = String::new();
    for &(x, y, z) in d.points() {
        out.push_str(&format!("v {x} {y} {z}\n"));
    }
    for &(u, v) in g.edges() {
        out.push_str(&format!("l {} {}\n", u + 1, v + 1));
    }
    out
}

/// Isometric SVG projection of the drawing, for quick visual inspection.
pub fn to_svg(g: &Graph, d: &Drawing3D) -> String {
    assert_eq!(g.n(), d.n(), "drawing and graph disagree on vertex count");
    const SCALE: f64 = 24.0;
    let proj = |(x, y, z): (i64, i64, i64)| {
        let (x, y, z) = (x as f64, y as f64, z as f64);
        ((x - y) * 0.866 * SCALE, (x + y) * 0.5 * SCALE - z * SCALE)
    };
    let pts: Vec<(f64, f64)> = d.points().iter().map(|&p| proj(p)).collect();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &(x, y) in &pts {
        lo_x = lo_x.min(x);
        lo_y = lo_y.min(y);
        hi_x = hi_x.max(x);
        hi_y = hi_y.max(y);
    }
    let pad = SCALE;
    let mut out = format!(
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.2} {:.2} {:.2} {:.2}">"#,
        lo_x - pad,
        lo_y - pad,
        hi_x - lo_x + 2.0 * pad,
        hi_y - lo_y + 2.0 * pad,
    );
    out.push('\n');
    for &(u, v) in g.edges() {
        let (x1, y1) = pts[u];
        let (x2, y2) = pts[v];
        out.push_str(&format!(
            r##"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="#336699" stroke-width="1.5"/>"##,
        ));
        out.push('\n');
    }
    for (v, &(x, y)) in pts.iter().enumerate() {
        out.push_str(&format!(
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#cc3333"><title>{v}</title></circle>"##,
        ));
        out.push('\n');
    }
    out.push_str("</svg>\n");
    out
}
