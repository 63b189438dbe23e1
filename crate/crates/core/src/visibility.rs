//! Point and chord visibility regions.
//!
//! A region produced here is always `P` minus a set of disjoint pockets.
//! Each pocket is cut off by a window chord running from a reflex vertex
//! `a` to a foot `b` in the relative interior of an edge, and is the part
//! of `P` lying in the shadow behind `a`. Regions are therefore stored as
//! their windows; walls, covered intervals and the typed boundary are all
//! derived from the pocket arcs along `∂P`.

use crate::boundary::{self, ArcSet};
use crate::geom::{
    self, chain_location, line_param, ray_shoot, sees, turn, BoundaryPoint, EdgeRef, GeomError, Location, Point,
    Polygon,
};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VisibilityError {
    #[error("viewpoint is outside the polygon")]
    SourceOutside,
    #[error("configuration is not in general position: {0}")]
    DegenerateConfiguration(String),
    #[error("segment is not a chord of the polygon")]
    NotAChord,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PieceKind {
    Wall,
    Window,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPiece {
    pub kind: PieceKind,
    pub start: Point,
    pub end: Point,
    /// Wall: the edge it lies on. Window: the edge holding the foot.
    pub host: EdgeRef,
}

/// A window chord together with the pocket it cuts off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowChord {
    /// Reflex vertex index.
    pub a: usize,
    pub b: BoundaryPoint,
    /// The pocket's boundary arc runs counterclockwise from `b` to `a`
    /// (`true`) or from `a` to `b` (`false`).
    pub pocket_after_b: bool,
    /// Pocket polygon, counterclockwise; its last side is the chord.
    pub pocket: Vec<Point>,
}

impl WindowChord {
    fn new(poly: &Polygon, a: usize, b: BoundaryPoint, pocket_after_b: bool) -> Self {
        let (from, to) = if pocket_after_b {
            (boundary::linear(&b), boundary::vertex_linear(a))
        } else {
            (boundary::vertex_linear(a), boundary::linear(&b))
        };
        let pocket = arc_chain(poly, &from, &to);
        WindowChord { a, b, pocket_after_b, pocket }
    }

    pub fn a_point<'p>(&self, poly: &'p Polygon) -> &'p Point {
        poly.vertex(self.a)
    }

    /// Counterclockwise start and end of the pocket arc, as linear coordinates.
    pub fn arc_ends(&self) -> (Rational, Rational) {
        if self.pocket_after_b {
            (boundary::linear(&self.b), boundary::vertex_linear(self.a))
        } else {
            (boundary::vertex_linear(self.a), boundary::linear(&self.b))
        }
    }

    pub fn arc(&self, n: usize) -> ArcSet {
        let (f, t) = self.arc_ends();
        ArcSet::arc(n, &f, &t)
    }

    /// Where `x` sits relative to the closed pocket.
    pub fn locate(&self, x: &Point) -> PocketLocation {
        match chain_location(&self.pocket, x) {
            Location::Exterior => PocketLocation::Outside,
            Location::Interior => PocketLocation::Inside,
            Location::OnEdge(e) if e.0 == self.pocket.len() - 1 => PocketLocation::OnChord,
            Location::OnVertex(i) if i == 0 || i == self.pocket.len() - 1 => PocketLocation::OnChord,
            _ => PocketLocation::OnWall,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PocketLocation {
    Outside,
    Inside,
    OnChord,
    OnWall,
}

/// Points of the boundary from `from` to `to` counterclockwise, with the
/// endpoints included and all polygon vertices strictly between them.
pub(crate) fn arc_chain(poly: &Polygon, from: &Rational, to: &Rational) -> Vec<Point> {
    let n = poly.n();
    let start = boundary::at_linear(poly, from);
    let end = boundary::at_linear(poly, to);
    let mut pts = vec![start.point.clone()];
    let mut v = poly.next(start.edge.0);
    let end_vertex = if end.param.is_zero() { Some(end.edge.0) } else { None };
    let stop = end.edge.0;
    let mut guard = 0;
    // Walk vertices after the start edge until the end position.
    if !(start.edge.0 == stop && start.param < end.param) {
        loop {
            if Some(v) == end_vertex {
                break;
            }
            pts.push(poly.vertex(v).clone());
            if v == stop {
                break;
            }
            v = poly.next(v);
            guard += 1;
            assert!(guard <= n, "arc walk did not terminate");
        }
    }
    pts.push(end.point.clone());
    pts.dedup();
    if pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    pts
}

/// A subset of `P` given as `P` minus pockets, plus arcs of `∂P` that lie in
/// the closure but are not themselves illuminated.
#[derive(Debug, Clone)]
pub struct Region {
    n: usize,
    windows: Vec<WindowChord>,
    dark: ArcSet,
    lit: ArcSet,
    pieces: Vec<BoundaryPiece>,
}

impl Region {
    pub fn new(poly: &Polygon, mut windows: Vec<WindowChord>, dark: ArcSet) -> Self {
        let n = poly.n();
        windows.sort_by(|x, y| x.arc_ends().0.cmp(&y.arc_ends().0));
        let pockets = windows.iter().fold(ArcSet::empty(n), |acc, w| acc.union(&w.arc(n)));
        let lit = pockets.complement().minus(&dark);
        let pieces = build_pieces(poly, &windows);
        Region { n, windows, dark, lit, pieces }
    }

    pub fn whole(poly: &Polygon) -> Self {
        Region::new(poly, Vec::new(), ArcSet::empty(poly.n()))
    }

    pub fn windows(&self) -> &[WindowChord] {
        &self.windows
    }

    /// Boundary pieces in counterclockwise order.
    pub fn pieces(&self) -> &[BoundaryPiece] {
        &self.pieces
    }

    /// Boundary vertices of the region, counterclockwise.
    pub fn outline(&self) -> Vec<Point> {
        self.pieces.iter().map(|p| p.start.clone()).collect()
    }

    /// Illuminated part of `∂P` (closed arcs).
    pub fn lit(&self) -> &ArcSet {
        &self.lit
    }

    /// Arcs of `∂P` in the closure of the region but not in the region.
    pub fn dark(&self) -> &ArcSet {
        &self.dark
    }

    /// Union of the pocket arcs.
    pub fn pocket_arcs(&self) -> ArcSet {
        self.windows.iter().fold(ArcSet::empty(self.n), |acc, w| acc.union(&w.arc(self.n)))
    }

    /// Weakly covered parameter intervals of each edge.
    pub fn covered(&self) -> Vec<Vec<(Rational, Rational)>> {
        (0..self.n).map(|e| self.lit.edge_intervals(e)).collect()
    }

    /// Number of edges whose relative interior meets the region.
    pub fn weakly_covered_count(&self) -> usize {
        self.lit.touched_edges().iter().filter(|&&b| b).count()
    }

    /// Index of the window whose closed pocket holds `x`, with the kind of
    /// contact; `None` when `x` lies in the region proper (or outside `P`).
    pub fn pocket_of(&self, x: &Point) -> Option<(usize, PocketLocation)> {
        self.windows.iter().enumerate().find_map(|(i, w)| match w.locate(x) {
            PocketLocation::Outside => None,
            loc => Some((i, loc)),
        })
    }

    pub fn is_whole(&self) -> bool {
        self.windows.is_empty()
    }
}

fn build_pieces(poly: &Polygon, windows: &[WindowChord]) -> Vec<BoundaryPiece> {
    let n = poly.n();
    if windows.is_empty() {
        return (0..n)
            .map(|i| {
                let (a, b) = poly.edge(i);
                BoundaryPiece { kind: PieceKind::Wall, start: a.clone(), end: b.clone(), host: EdgeRef(i) }
            })
            .collect();
    }
    let mut pieces = Vec::new();
    let m = windows.len();
    for (i, w) in windows.iter().enumerate() {
        let (from, to) = w.arc_ends();
        let p_from = boundary::at_linear(poly, &from);
        let p_to = boundary::at_linear(poly, &to);
        pieces.push(BoundaryPiece {
            kind: PieceKind::Window,
            start: p_from.point.clone(),
            end: p_to.point.clone(),
            host: w.b.edge,
        });
        let next_from = windows[(i + 1) % m].arc_ends().0;
        let chain = arc_chain(poly, &to, &next_from);
        let mut pos = to.clone();
        for k in 0..chain.len().saturating_sub(1) {
            let host = boundary::at_linear(poly, &pos).edge;
            pieces.push(BoundaryPiece {
                kind: PieceKind::Wall,
                start: chain[k].clone(),
                end: chain[k + 1].clone(),
                host,
            });
            // Next piece starts at the following vertex.
            let e = (host.0 + 1) % n;
            pos = boundary::vertex_linear(e);
        }
    }
    pieces
}

/// Window behind reflex vertex `a` as seen along the line from `eye`.
///
/// `Ok(None)` when the sight line does not graze `a` (it enters the exterior,
/// or the two edges at `a` lie on opposite sides of it).
///
/// With `through_vertices`, a window that runs into a vertex is followed
/// past it instead of being reported as degenerate; its foot may then be a
/// vertex.
pub(crate) fn shadow_window(
    poly: &Polygon,
    a: usize,
    eye: &Point,
    through_vertices: bool,
) -> Result<Option<WindowChord>, VisibilityError> {
    let apex = poly.vertex(a);
    let dir = apex.sub(eye);
    if dir.is_zero() || !poly.points_inward_at_vertex(a, &dir) {
        return Ok(None);
    }
    let sp = turn(eye, apex, poly.vertex(poly.prev(a)));
    let sn = turn(eye, apex, poly.vertex(poly.next(a)));
    let side = match (sp, sn) {
        (0, 0) => return Ok(None),
        (0, s) | (s, 0) => s,
        (s, t) if s == t => s,
        _ => return Ok(None),
    };
    let b = match ray_shoot(poly, apex, &dir) {
        Ok(b) => b,
        Err(GeomError::VertexHit(v)) if through_vertices => pass_vertices(poly, v, &dir)?,
        Err(GeomError::VertexHit(v)) => {
            return Err(VisibilityError::DegenerateConfiguration(format!(
                "window from vertex {a} seen from {eye} runs into vertex {v}"
            )))
        }
        Err(e) => return Err(e.into()),
    };
    Ok(Some(WindowChord::new(poly, a, b, side > 0)))
}

/// Follows a ray that met vertex `v`: it goes on while it can re-enter the
/// interior and stops at the first vertex that blocks it.
fn pass_vertices(poly: &Polygon, mut v: usize, dir: &Point) -> Result<BoundaryPoint, VisibilityError> {
    for _ in 0..poly.n() {
        if !poly.points_inward_at_vertex(v, dir) {
            return Ok(BoundaryPoint::on_edge(poly, v, Rational::zero()));
        }
        match ray_shoot(poly, poly.vertex(v), dir) {
            Ok(b) => return Ok(b),
            Err(GeomError::VertexHit(w)) => v = w,
            Err(e) => return Err(e.into()),
        }
    }
    Err(VisibilityError::DegenerateConfiguration("ray walk did not terminate".into()))
}

/// Where a viewpoint sits.
#[derive(Debug, Clone)]
pub(crate) enum Viewpoint<'a> {
    Interior(&'a Point),
    OnEdge(&'a BoundaryPoint),
}

impl Viewpoint<'_> {
    fn point(&self) -> &Point {
        match self {
            Viewpoint::Interior(p) => p,
            Viewpoint::OnEdge(b) => &b.point,
        }
    }
}

/// Windows of the visibility region of a viewpoint, restricted to reflex
/// vertices accepted by `keep`.
pub(crate) fn point_windows(
    poly: &Polygon,
    view: &Viewpoint<'_>,
    keep: impl Fn(usize) -> bool,
) -> Result<Vec<WindowChord>, VisibilityError> {
    let q = view.point();
    let mut out = Vec::new();
    for a in poly.reflex_vertices().filter(|&a| keep(a)) {
        let visible = match view {
            Viewpoint::OnEdge(bp) if a == bp.edge.0 || a == poly.next(bp.edge.0) => true,
            _ => sees(poly, q, poly.vertex(a)),
        };
        if !visible {
            continue;
        }
        if let Some(w) = shadow_window(poly, a, q, false)? {
            out.push(w);
        }
    }
    Ok(out)
}

/// Closed parameter intervals of the chord `p0 p1` visible from `x`; an
/// interval may be a single point.
pub(crate) fn visible_chord_intervals(poly: &Polygon, x: &Point, p0: &Point, p1: &Point) -> Vec<(Rational, Rational)> {
    let one = Rational::one();
    let mut ts = vec![Rational::zero(), one.clone()];
    for v in poly.vertices() {
        if v == x {
            continue;
        }
        if let Some(t) = line_param(p0, p1, x, v) {
            if t.is_positive() && t < one {
                ts.push(t);
            }
        }
    }
    ts.sort();
    ts.dedup();
    let visible = |t: &Rational| {
        let y = p0.lerp(p1, t);
        &y != x && sees(poly, x, &y)
    };
    let mut out: Vec<(Rational, Rational)> = Vec::new();
    let mut push = |lo: &Rational, hi: &Rational| match out.last_mut() {
        Some(last) if &last.1 == lo => last.1 = hi.clone(),
        _ => out.push((lo.clone(), hi.clone())),
    };
    // Isolated visible points occur where the sight line grazes a vertex.
    for (i, t) in ts.iter().enumerate() {
        if visible(t) {
            push(t, t);
        }
        if let Some(u) = ts.get(i + 1) {
            if visible(&t.midpoint(u)) {
                push(t, u);
            }
        }
    }
    out
}

/// Windows bounding the part of one side of a chord that is weakly visible
/// from the chord. `side` is the open boundary arc of that side.
///
/// With `open` set, only the relative interior of the chord looks: points
/// of the chord seen in isolation (grazing contacts) are ignored.
pub(crate) fn chord_windows(
    poly: &Polygon,
    p0: &Point,
    p1: &Point,
    side: &ArcSet,
    open: bool,
) -> Result<Vec<WindowChord>, VisibilityError> {
    let mut out = Vec::new();
    for a in poly.reflex_vertices() {
        if !side.contains_open(&boundary::vertex_linear(a)) {
            continue;
        }
        let apex = poly.vertex(a);
        let mut ts: Vec<Rational> = visible_chord_intervals(poly, apex, p0, p1)
            .into_iter()
            .filter(|(lo, hi)| !open || lo < hi)
            .flat_map(|(lo, hi)| [lo, hi])
            .collect();
        // A chord endpoint on an edge at `a` is seen along that edge.
        for (end, t) in [(p0, Rational::zero()), (p1, Rational::one())] {
            if open {
                break;
            }
            let incident = [poly.prev(a), a].iter().any(|&e| {
                let (u, v) = poly.edge(e);
                geom::on_segment(u, v, end)
            });
            if incident && end != apex {
                ts.push(t);
            }
        }
        let (Some(first), Some(last)) = (ts.iter().min(), ts.iter().max()) else {
            continue;
        };
        let y1 = p0.lerp(p1, first);
        let y2 = p0.lerp(p1, last);
        for (eye, other) in [(&y1, &y2), (&y2, &y1)] {
            let sp = turn(eye, apex, poly.vertex(poly.prev(a)));
            let sn = turn(eye, apex, poly.vertex(poly.next(a)));
            let side_nb = if sp != 0 { sp } else { sn };
            if side_nb == 0 || (eye != other && turn(eye, apex, other) != side_nb) {
                continue;
            }
            if let Some(w) = shadow_window(poly, a, eye, false)? {
                out.push(w);
                break;
            }
        }
    }
    Ok(out)
}

/// Windows cast by a chord endpoint at a reflex vertex, along the chord's
/// own line, that fall on the given side.
pub(crate) fn endpoint_windows(
    poly: &Polygon,
    p0: &Point,
    p1: &Point,
    side: &ArcSet,
) -> Result<Vec<WindowChord>, VisibilityError> {
    let mut out = Vec::new();
    for (end, other) in [(p0, p1), (p1, p0)] {
        let Some(v) = poly.vertex_index(end) else { continue };
        if !poly.is_reflex(v) {
            continue;
        }
        if let Some(w) = shadow_window(poly, v, other, true)? {
            if side.contains_open(&boundary::linear(&w.b)) {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// Visibility region of a point in the interior or on an edge of `P`.
pub fn visibility_from_point(poly: &Polygon, q: &Point) -> Result<Region, VisibilityError> {
    match geom::point_location(poly, q) {
        Location::Interior => {
            let report = geom::general_position_with_source(poly, q)?;
            if !report.is_ok() {
                return Err(VisibilityError::DegenerateConfiguration(report.to_string()));
            }
            let windows = point_windows(poly, &Viewpoint::Interior(q), |_| true)?;
            Ok(Region::new(poly, windows, ArcSet::empty(poly.n())))
        }
        Location::OnEdge(e) => {
            let (a, b) = poly.edge(e.0);
            let param = edge_param(a, b, q);
            let bp = BoundaryPoint { edge: e, point: q.clone(), param };
            let windows = point_windows(poly, &Viewpoint::OnEdge(&bp), |_| true)?;
            // The host edge is seen only at the viewpoint itself.
            let n = poly.n();
            let x = boundary::linear(&bp);
            let mut dark = ArcSet::arc(n, &boundary::vertex_linear(e.0), &x);
            dark.add_arc(&x, &boundary::vertex_linear(e.0 + 1));
            Ok(Region::new(poly, windows, dark))
        }
        _ => Err(VisibilityError::SourceOutside),
    }
}

/// Parameter of `q` along segment `ab`, given that `q` lies on it.
pub(crate) fn edge_param(a: &Point, b: &Point, q: &Point) -> Rational {
    let d = b.sub(a);
    geom::dot(&q.sub(a), &d) / geom::dot(&d, &d)
}

/// Checks that `p0 p1` is a chord and returns its endpoints' linear
/// boundary coordinates.
pub(crate) fn chord_ends(poly: &Polygon, p0: &Point, p1: &Point) -> Result<(Rational, Rational), VisibilityError> {
    let pos = |p: &Point| -> Option<Rational> {
        match geom::point_location(poly, p) {
            Location::OnVertex(i) => Some(boundary::vertex_linear(i)),
            Location::OnEdge(e) => {
                let (a, b) = poly.edge(e.0);
                Some(Rational::from(e.0) + edge_param(a, b, p))
            }
            _ => None,
        }
    };
    let (Some(x0), Some(x1)) = (pos(p0), pos(p1)) else {
        return Err(VisibilityError::NotAChord);
    };
    if p0 == p1 || !sees(poly, p0, p1) {
        return Err(VisibilityError::NotAChord);
    }
    Ok((x0, x1))
}

/// Weak visibility region of a chord: points seen by at least one point of
/// the closed chord.
pub fn weak_visibility_from_chord(poly: &Polygon, p0: &Point, p1: &Point) -> Result<Region, VisibilityError> {
    let n = poly.n();
    let (x0, x1) = chord_ends(poly, p0, p1)?;
    let mut windows = chord_windows(poly, p0, p1, &ArcSet::arc(n, &x0, &x1), false)?;
    windows.extend(chord_windows(poly, p0, p1, &ArcSet::arc(n, &x1, &x0), false)?);
    Ok(Region::new(poly, windows, ArcSet::empty(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{l6, unit_square};
    use crate::geom::{point_location, sample_interior, triangulate};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
        Point::frac(xn, xd, yn, yd)
    }

    fn in_region(r: &Region, x: &Point) -> bool {
        r.pocket_of(x).is_none()
    }

    #[test]
    fn convex_point_visibility_is_whole() {
        let sq = unit_square();
        let r = visibility_from_point(&sq, &q(1, 3, 1, 5)).unwrap();
        assert!(r.is_whole());
        assert_eq!(r.weakly_covered_count(), 4);
        assert!(r.pieces().iter().all(|p| p.kind == PieceKind::Wall));
    }

    #[test]
    fn kernel_point_sees_everything() {
        let r = visibility_from_point(&l6(), &q(1, 2, 1, 3)).unwrap();
        assert!(r.is_whole());
    }

    #[test]
    fn l6_single_window() {
        let p = l6();
        let r = visibility_from_point(&p, &q(3, 2, 1, 4)).unwrap();
        assert_eq!(r.windows().len(), 1);
        let w = &r.windows()[0];
        assert_eq!(p.vertex(w.a), &Point::int(1, 1));
        assert_eq!(w.b.point, q(1, 3, 2, 1));
        assert_eq!(w.b.edge, EdgeRef(4));
        assert_eq!(w.pocket, vec![Point::int(1, 1), Point::int(1, 2), q(1, 3, 2, 1)]);
        let windows: Vec<_> = r.pieces().iter().filter(|p| p.kind == PieceKind::Window).collect();
        assert_eq!(windows.len(), 1);
        assert_eq!(r.weakly_covered_count(), 5);
    }

    #[test]
    fn l6_point_visibility_matches_sampling() {
        let p = l6();
        let s = q(3, 2, 1, 4);
        let r = visibility_from_point(&p, &s).unwrap();
        for i in 1..40 {
            for j in 1..40 {
                let x = q(i, 20, j, 20);
                if point_location(&p, &x) != Location::Interior || x == s {
                    continue;
                }
                if r.pocket_of(&x).map(|(_, l)| l) == Some(PocketLocation::OnChord) {
                    continue;
                }
                assert_eq!(in_region(&r, &x), sees(&p, &s, &x), "{x}");
            }
        }
    }

    #[test]
    fn boundary_viewpoint_sees_host_edge_only_at_itself() {
        let p = l6();
        let c = q(1, 2, 0, 1);
        let r = visibility_from_point(&p, &c).unwrap();
        assert!(r.lit().edge_intervals(0).is_empty());
        assert!(!r.lit().edge_intervals(5).is_empty());
    }

    #[test]
    fn chord_visibility_examples() {
        let sq = unit_square();
        let r = weak_visibility_from_chord(&sq, &q(0, 1, 1, 2), &q(1, 1, 1, 2)).unwrap();
        assert!(r.is_whole());

        let p = l6();
        let (a, b) = (Point::int(1, 1), q(1, 3, 2, 1));
        let r = weak_visibility_from_chord(&p, &a, &b).unwrap();
        for x in [q(9, 10, 19, 10), q(1, 2, 7, 4), q(19, 20, 3, 2)] {
            assert!(in_region(&r, &x), "{x}");
        }
        assert!(in_region(&r, &q(0, 1, 3, 2)) || r.pocket_of(&q(0, 1, 3, 2)).is_some());
        assert!(in_region(&r, &q(1, 100, 3, 2)));
        assert_eq!(
            weak_visibility_from_chord(&p, &Point::int(0, 0), &Point::int(2, 0)).unwrap_err(),
            VisibilityError::NotAChord
        );
    }

    /// Sampling oracle: does `x` see any of `k` evenly spaced chord points?
    fn sees_chord_sample(p: &Polygon, x: &Point, a: &Point, b: &Point, k: i64) -> bool {
        (0..=k).any(|i| {
            let y = a.lerp(b, &Rational::new(i, k));
            &y != x && sees(p, x, &y)
        })
    }

    #[test]
    fn random_point_visibility_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..12 {
            let p = crate::generators::random_simple(14, seed).unwrap();
            let tris = triangulate(&p);
            let s = loop {
                let s = sample_interior(&p, &tris, &mut rng);
                if geom::general_position_with_source(&p, &s).unwrap().is_ok() {
                    break s;
                }
            };
            let r = visibility_from_point(&p, &s).unwrap();
            assert!(geom::validate_polygon(&r.outline())
                .violations
                .iter()
                .all(|v| matches!(v, geom::Violation::CollinearTriple(..))));
            for _ in 0..150 {
                let x = sample_interior(&p, &tris, &mut rng);
                assert_eq!(in_region(&r, &x), sees(&p, &s, &x), "seed {seed} {x}");
            }
        }
    }

    #[test]
    fn random_chord_visibility_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        for seed in 0..40 {
            let p = crate::generators::random_simple(16, seed).unwrap();
            let tris = triangulate(&p);
            let s = sample_interior(&p, &tris, &mut rng);
            let Ok(r0) = visibility_from_point(&p, &s) else { continue };
            for w in r0.windows() {
                let a = p.vertex(w.a).clone();
                let r = weak_visibility_from_chord(&p, &a, &w.b.point).unwrap();
                for _ in 0..100 {
                    let x = sample_interior(&p, &tris, &mut rng);
                    let inside = in_region(&r, &x);
                    let seen = sees_chord_sample(&p, &x, &a, &w.b.point, 64);
                    // Sampling can only under-report visibility.
                    if seen {
                        assert!(inside, "seed {seed}: {x} sees a chord sample");
                    }
                    if inside && !seen {
                        assert!(
                            sees_chord_sample(&p, &x, &a, &w.b.point, 4096),
                            "seed {seed}: {x} s={s} a={a} b={} win={:?}",
                            w.b,
                            r.windows().iter().map(|w| (w.a, w.b.to_string(), w.pocket_after_b)).collect::<Vec<_>>()
                        );
                    }
                    checked += 1;
                }
            }
        }
        assert!(checked > 300);
    }
}
