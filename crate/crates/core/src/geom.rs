//! Points, polygons and exact predicates.

use std::cmp::Ordering;
use std::fmt;

use rand::Rng;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn int(x: i64, y: i64) -> Self {
        Point::new(x.into(), y.into())
    }

    /// `(xn/xd, yn/yd)`.
    pub fn frac(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        Point::new(Rational::new(xn, xd), Rational::new(yn, yd))
    }

    pub fn sub(&self, o: &Point) -> Point {
        Point::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point) -> Point {
        Point::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, k: &Rational) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn midpoint(&self, o: &Point) -> Point {
        Point::new(self.x.midpoint(&o.x), self.y.midpoint(&o.y))
    }

    /// `self + t * (o - self)`.
    pub fn lerp(&self, o: &Point, t: &Rational) -> Point {
        Point::new(&self.x + t * (&o.x - &self.x), &self.y + t * (&o.y - &self.y))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Cross product of two vectors.
pub fn cross(u: &Point, v: &Point) -> Rational {
    &u.x * &v.y - &u.y * &v.x
}

pub fn dot(u: &Point, v: &Point) -> Rational {
    &u.x * &v.x + &u.y * &v.y
}

/// `(q - p) x (r - p)`.
pub fn cross3(p: &Point, q: &Point, r: &Point) -> Rational {
    let (ax, ay) = (&q.x - &p.x, &q.y - &p.y);
    let (bx, by) = (&r.x - &p.x, &r.y - &p.y);
    ax * by - ay * bx
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    fn from_sign(s: Ordering) -> Self {
        match s {
            Ordering::Greater => Orientation::CounterClockwise,
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    Orientation::from_sign(turn(p, q, r).cmp(&0))
}

/// Sign of the turn `p -> q -> r` as -1, 0 or 1.
pub(crate) fn turn(p: &Point, q: &Point, r: &Point) -> i8 {
    if let Some(s) = turn_filtered(p, q, r) {
        return s;
    }
    match cross3(p, q, r).sign() {
        Ordering::Greater => 1,
        Ordering::Less => -1,
        Ordering::Equal => 0,
    }
}

/// Floating-point evaluation of the turn, trusted only when the result
/// clears a generous error bound.
fn turn_filtered(p: &Point, q: &Point, r: &Point) -> Option<i8> {
    let c = [p.x.to_f64(), p.y.to_f64(), q.x.to_f64(), q.y.to_f64(), r.x.to_f64(), r.y.to_f64()];
    let m = c.iter().fold(0f64, |acc, v| acc.max(v.abs()));
    let (ax, ay, bx, by) = (c[2] - c[0], c[3] - c[1], c[4] - c[0], c[5] - c[1]);
    let det = ax * by - ay * bx;
    let mag = (ax.abs() + m) * (by.abs() + m) + (ay.abs() + m) * (bx.abs() + m);
    let err = mag * 1e-12;
    if !det.is_finite() || !err.is_finite() || m < 1e-100 {
        return None;
    }
    if det > err {
        Some(1)
    } else if det < -err {
        Some(-1)
    } else {
        None
    }
}

/// `r` lies on the closed segment `pq`, given that the three are collinear.
fn within_box(p: &Point, q: &Point, r: &Point) -> bool {
    let (x0, x1) = if p.x <= q.x { (&p.x, &q.x) } else { (&q.x, &p.x) };
    let (y0, y1) = if p.y <= q.y { (&p.y, &q.y) } else { (&q.y, &p.y) };
    x0 <= &r.x && &r.x <= x1 && y0 <= &r.y && &r.y <= y1
}

pub fn on_segment(p: &Point, q: &Point, r: &Point) -> bool {
    turn(p, q, r) == 0 && within_box(p, q, r)
}

/// `r` lies on the open segment `pq`.
pub fn on_open_segment(p: &Point, q: &Point, r: &Point) -> bool {
    r != p && r != q && on_segment(p, q, r)
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = turn(a, b, c);
    let o2 = turn(a, b, d);
    let o3 = turn(c, d, a);
    let o4 = turn(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && within_box(a, b, c))
        || (o2 == 0 && within_box(a, b, d))
        || (o3 == 0 && within_box(c, d, a))
        || (o4 == 0 && within_box(c, d, b))
}

/// Intersection of the lines `p + s (q - p)` and `a + u (b - a)`, as the
/// parameter `s` on the first line. `None` for parallel lines.
pub fn line_param(p: &Point, q: &Point, a: &Point, b: &Point) -> Option<Rational> {
    let d = q.sub(p);
    let e = b.sub(a);
    let den = cross(&d, &e);
    if den.is_zero() {
        return None;
    }
    Some(cross(&a.sub(p), &e) / den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef(pub usize);

/// A point on the boundary, with its host edge and parameter along it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryPoint {
    pub edge: EdgeRef,
    pub point: Point,
    pub param: Rational,
}

impl BoundaryPoint {
    pub fn on_edge(poly: &Polygon, edge: usize, param: Rational) -> Self {
        let (a, b) = poly.edge(edge);
        BoundaryPoint { edge: EdgeRef(edge), point: a.lerp(b, &param), param }
    }

    /// Inside the relative interior of its host edge.
    pub fn is_edge_interior(&self) -> bool {
        self.param.is_positive() && self.param < Rational::one()
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on edge {} at {}", self.point, self.edge.0, self.param)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    TooFewVertices(usize),
    RepeatedVertex(usize, usize),
    CollinearTriple(usize, usize, usize),
    /// Edges `i` and `j` (by start index) cross, touch or overlap.
    EdgesIntersect(usize, usize),
    NotCounterClockwise,
    /// Source lies on the line through vertices `i` and `j`.
    SourceOnVertexLine(usize, usize),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices(n) => write!(f, "polygon has only {n} vertices"),
            Violation::RepeatedVertex(i, j) => write!(f, "vertices {i} and {j} coincide"),
            Violation::CollinearTriple(i, j, k) => {
                write!(f, "vertices {i}, {j}, {k} are collinear")
            }
            Violation::EdgesIntersect(i, j) => write!(f, "edges {i} and {j} intersect"),
            Violation::NotCounterClockwise => write!(f, "vertices are not counterclockwise"),
            Violation::SourceOnVertexLine(i, j) => {
                write!(f, "source lies on the line through vertices {i} and {j}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(ValidationReport),
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("ray direction is zero")]
    ZeroDirection,
    #[error("ray hits vertex {0}")]
    VertexHit(usize),
    #[error("ray origin is outside the polygon or the ray leaves it immediately")]
    OriginOutside,
    #[error("source is not in the interior of the polygon")]
    SourceNotInterior,
}

/// Twice the signed area of a closed vertex chain.
pub fn signed_area2(pts: &[Point]) -> Rational {
    let n = pts.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let (a, b) = (&pts[i], &pts[(i + 1) % n]);
        acc = acc + (&a.x * &b.y - &a.y * &b.x);
    }
    acc
}

/// Checks that a closed chain of points bounds a simple polygon; reports
/// repeated points and intersecting edges only.
pub(crate) fn simplicity_violations(pts: &[Point]) -> Vec<Violation> {
    let n = pts.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if pts[i] == pts[j] {
                out.push(Violation::RepeatedVertex(i, j));
            }
        }
    }
    for i in 0..n {
        let (a, b) = (&pts[i], &pts[(i + 1) % n]);
        for j in i + 1..n {
            let (c, d) = (&pts[j], &pts[(j + 1) % n]);
            let adjacent_next = j == i + 1;
            let adjacent_prev = i == 0 && j == n - 1;
            if adjacent_next || adjacent_prev {
                // Shared endpoint is fine; overlap along a common line is not.
                let (shared, x, y) = if adjacent_next { (b, a, d) } else { (a, b, c) };
                if turn(x, shared, y) == 0 && (within_box(shared, y, x) || within_box(x, shared, y)) {
                    out.push(Violation::EdgesIntersect(i, j));
                }
                continue;
            }
            if segments_intersect(a, b, c, d) {
                out.push(Violation::EdgesIntersect(i, j));
            }
        }
    }
    out
}

/// Checks the polygon invariants: at least three vertices, no repeated
/// vertices, no three consecutive vertices collinear, simple, counterclockwise.
pub fn validate_polygon(pts: &[Point]) -> ValidationReport {
    let n = pts.len();
    let mut violations = Vec::new();
    if n < 3 {
        violations.push(Violation::TooFewVertices(n));
        return ValidationReport { violations };
    }
    for j in 0..n {
        let (i, k) = ((j + n - 1) % n, (j + 1) % n);
        if turn(&pts[i], &pts[j], &pts[k]) == 0 {
            let mut t = [i, j, k];
            t.sort();
            violations.push(Violation::CollinearTriple(t[0], t[1], t[2]));
        }
    }
    let simple = simplicity_violations(pts);
    let is_simple = simple.is_empty();
    violations.extend(simple);
    if is_simple && !signed_area2(pts).is_positive() {
        violations.push(Violation::NotCounterClockwise);
    }
    ValidationReport { violations }
}

/// All vertex triples lying on a common line, consecutive or not.
pub fn collinear_triples(pts: &[Point]) -> Vec<Violation> {
    let n = pts.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if turn(&pts[i], &pts[j], &pts[k]) == 0 {
                    out.push(Violation::CollinearTriple(i, j, k));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    /// Relative interior of an edge.
    OnEdge(EdgeRef),
    OnVertex(usize),
    Exterior,
}

impl Location {
    pub fn is_boundary(&self) -> bool {
        matches!(self, Location::OnEdge(_) | Location::OnVertex(_))
    }
}

#[derive(Debug, Clone)]
struct Bbox {
    x0: Rational,
    x1: Rational,
    y0: Rational,
    y1: Rational,
}

impl Bbox {
    fn of(a: &Point, b: &Point) -> Bbox {
        let (x0, x1) = if a.x <= b.x { (a.x.clone(), b.x.clone()) } else { (b.x.clone(), a.x.clone()) };
        let (y0, y1) = if a.y <= b.y { (a.y.clone(), b.y.clone()) } else { (b.y.clone(), a.y.clone()) };
        Bbox { x0, x1, y0, y1 }
    }

    fn disjoint(&self, o: &Bbox) -> bool {
        self.x1 < o.x0 || o.x1 < self.x0 || self.y1 < o.y0 || o.y1 < self.y0
    }
}

/// A simple polygon in general position with counterclockwise vertices.
#[derive(Debug, Clone)]
pub struct Polygon {
    vertices: Vec<Point>,
    reflex: Vec<bool>,
    boxes: Vec<Bbox>,
}

impl PartialEq for Polygon {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for Polygon {}

impl Polygon {
    /// Validates and builds a polygon.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeomError> {
        let report = validate_polygon(&vertices);
        if !report.is_ok() {
            return Err(GeomError::InvalidPolygon(report));
        }
        Ok(Self::new_unchecked(vertices))
    }

    /// Builds without validation. Only for chains already known to satisfy
    /// the polygon invariants (sub-polygons cut by a chord, for instance).
    pub fn new_unchecked(vertices: Vec<Point>) -> Self {
        let n = vertices.len();
        let reflex =
            (0..n).map(|i| turn(&vertices[(i + n - 1) % n], &vertices[i], &vertices[(i + 1) % n]) < 0).collect();
        let boxes = (0..n).map(|i| Bbox::of(&vertices[i], &vertices[(i + 1) % n])).collect();
        Polygon { vertices, reflex, boxes }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.n()]
    }

    pub fn next(&self, i: usize) -> usize {
        (i + 1) % self.n()
    }

    pub fn prev(&self, i: usize) -> usize {
        (i + self.n() - 1) % self.n()
    }

    /// Endpoints of edge `i`.
    pub fn edge(&self, i: usize) -> (&Point, &Point) {
        (&self.vertices[i], &self.vertices[self.next(i)])
    }

    pub fn is_reflex(&self, i: usize) -> bool {
        self.reflex[i]
    }

    pub fn reflex_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(|&i| self.reflex[i])
    }

    pub fn is_convex(&self) -> bool {
        !self.reflex.iter().any(|&r| r)
    }

    pub fn area(&self) -> Rational {
        signed_area2(&self.vertices) / Rational::from_integer(2)
    }

    pub fn validate(&self) -> ValidationReport {
        validate_polygon(&self.vertices)
    }

    /// Direction `d` points strictly into the interior angle at vertex `i`.
    pub fn points_inward_at_vertex(&self, i: usize, d: &Point) -> bool {
        let v = &self.vertices[i];
        let to_next = self.vertices[self.next(i)].sub(v);
        let to_prev = self.vertices[self.prev(i)].sub(v);
        strictly_ccw_between(&to_next, &to_prev, d)
    }

    /// Index of the vertex equal to `p`, if any.
    pub fn vertex_index(&self, p: &Point) -> Option<usize> {
        self.vertices.iter().position(|v| v == p)
    }
}

/// `d` lies strictly inside the counterclockwise sweep from `from` to `to`.
pub fn strictly_ccw_between(from: &Point, to: &Point, d: &Point) -> bool {
    let ft = cross(from, to).sign();
    let fd = cross(from, d).sign();
    let dt = cross(d, to).sign();
    match ft {
        Ordering::Greater => fd == Ordering::Greater && dt == Ordering::Greater,
        Ordering::Less => !(cross(to, d).sign() != Ordering::Less && cross(d, from).sign() != Ordering::Less),
        Ordering::Equal => {
            if dot(from, to).is_positive() {
                // Sweep of a full turn.
                !(fd == Ordering::Equal && dot(from, d).is_positive())
            } else {
                fd == Ordering::Greater
            }
        }
    }
}

pub fn point_location(poly: &Polygon, q: &Point) -> Location {
    let n = poly.n();
    for i in 0..n {
        if &poly.vertices[i] == q {
            return Location::OnVertex(i);
        }
    }
    let mut winding = 0i32;
    for i in 0..n {
        let (a, b) = poly.edge(i);
        let t = turn(a, b, q);
        if t == 0 && within_box(a, b, q) {
            return Location::OnEdge(EdgeRef(i));
        }
        if a.y <= q.y {
            if b.y > q.y && t > 0 {
                winding += 1;
            }
        } else if b.y <= q.y && t < 0 {
            winding -= 1;
        }
    }
    if winding != 0 {
        Location::Interior
    } else {
        Location::Exterior
    }
}

/// Point location in the polygon bounded by an arbitrary closed chain.
pub(crate) fn chain_location(pts: &[Point], q: &Point) -> Location {
    let n = pts.len();
    for (i, p) in pts.iter().enumerate() {
        if p == q {
            return Location::OnVertex(i);
        }
    }
    let mut winding = 0i32;
    for i in 0..n {
        let (a, b) = (&pts[i], &pts[(i + 1) % n]);
        let t = turn(a, b, q);
        if t == 0 && within_box(a, b, q) {
            return Location::OnEdge(EdgeRef(i));
        }
        if a.y <= q.y {
            if b.y > q.y && t > 0 {
                winding += 1;
            }
        } else if b.y <= q.y && t < 0 {
            winding -= 1;
        }
    }
    if winding != 0 {
        Location::Interior
    } else {
        Location::Exterior
    }
}

/// Whether the open segment `(u, v)` lies in the interior of the polygon,
/// i.e. `u` and `v` see each other.
pub fn open_segment_in_interior(poly: &Polygon, u: &Point, v: &Point) -> Result<bool, GeomError> {
    if u == v {
        return Err(GeomError::DegenerateSegment);
    }
    Ok(sees(poly, u, v))
}

pub(crate) fn sees(poly: &Polygon, u: &Point, v: &Point) -> bool {
    let sb = Bbox::of(u, v);
    for i in 0..poly.n() {
        if poly.boxes[i].disjoint(&sb) {
            continue;
        }
        let (p, q) = poly.edge(i);
        let o1 = turn(u, v, p);
        let o2 = turn(u, v, q);
        if o1 * o2 > 0 {
            continue;
        }
        if o1 == 0 && o2 == 0 {
            // Collinear edge: any overlap with the open segment touches the boundary.
            let (lo, hi) = ordered_on_line(u, v);
            let (elo, ehi) = ordered_on_line(p, q);
            if key_lt(elo, hi) && key_lt(lo, ehi) {
                return false;
            }
            continue;
        }
        if o1 == 0 {
            if on_open_segment(u, v, p) {
                return false;
            }
            continue;
        }
        if o2 == 0 {
            if on_open_segment(u, v, q) {
                return false;
            }
            continue;
        }
        // p and q strictly on opposite sides of the line uv.
        let o3 = turn(p, q, u);
        let o4 = turn(p, q, v);
        if o3 * o4 < 0 {
            return false;
        }
    }
    let mid = u.midpoint(v);
    point_location(poly, &mid) == Location::Interior
}

fn ordered_on_line<'a>(a: &'a Point, b: &'a Point) -> (&'a Point, &'a Point) {
    if key_lt(a, b) {
        (a, b)
    } else {
        (b, a)
    }
}

fn key_lt(a: &Point, b: &Point) -> bool {
    (&a.x, &a.y) < (&b.x, &b.y)
}

/// First boundary point hit by the open ray from `origin` along `dir`.
pub fn ray_shoot(poly: &Polygon, origin: &Point, dir: &Point) -> Result<BoundaryPoint, GeomError> {
    if dir.is_zero() {
        return Err(GeomError::ZeroDirection);
    }
    let n = poly.n();
    // (ray parameter, edge, edge parameter) of the best hit so far.
    let mut best: Option<(Rational, usize, Option<Rational>)> = None;
    let dd = dot(dir, dir);
    for i in 0..n {
        let (p, q) = poly.edge(i);
        let e = q.sub(p);
        let den = cross(dir, &e);
        let po = p.sub(origin);
        if den.is_zero() {
            if !cross(&po, dir).is_zero() {
                continue;
            }
            // Ray runs along the edge's line: only its endpoints matter.
            for (vi, v) in [(i, p), (poly.next(i), q)] {
                let lam = dot(&v.sub(origin), dir) / &dd;
                if lam.is_positive() && best.as_ref().is_none_or(|b| lam < b.0) {
                    let _ = vi;
                    let mu = if vi == i { Rational::zero() } else { Rational::one() };
                    best = Some((lam, i, Some(mu)));
                }
            }
            continue;
        }
        let lam = cross(&po, &e) / &den;
        if !lam.is_positive() {
            continue;
        }
        let mu = cross(&po, dir) / &den;
        if mu.is_negative() || mu > Rational::one() {
            continue;
        }
        if best.as_ref().is_none_or(|b| lam < b.0) {
            best = Some((lam, i, Some(mu)));
        }
    }
    let Some((lam, edge, mu)) = best else {
        return Err(GeomError::OriginOutside);
    };
    let mu = mu.expect("edge parameter");
    let hit = origin.add(&dir.scale(&lam));
    if point_location(poly, &origin.midpoint(&hit)) != Location::Interior {
        return Err(GeomError::OriginOutside);
    }
    if mu.is_zero() {
        return Err(GeomError::VertexHit(edge));
    }
    if mu == Rational::one() {
        return Err(GeomError::VertexHit(poly.next(edge)));
    }
    Ok(BoundaryPoint { edge: EdgeRef(edge), point: hit, param: mu })
}

/// Reports vertex pairs whose supporting line passes through `s`.
pub fn general_position_with_source(poly: &Polygon, s: &Point) -> Result<ValidationReport, GeomError> {
    if point_location(poly, s) != Location::Interior {
        return Err(GeomError::SourceNotInterior);
    }
    let n = poly.n();
    let mut violations = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if turn(poly.vertex(i), poly.vertex(j), s) == 0 {
                violations.push(Violation::SourceOnVertexLine(i, j));
            }
        }
    }
    Ok(ValidationReport { violations })
}

/// Ear-clipping triangulation, as vertex index triples.
pub fn triangulate(poly: &Polygon) -> Vec<[usize; 3]> {
    let mut idx: Vec<usize> = (0..poly.n()).collect();
    let mut out = Vec::with_capacity(poly.n().saturating_sub(2));
    while idx.len() > 3 {
        let m = idx.len();
        let mut clipped = false;
        for k in 0..m {
            let (ia, ib, ic) = (idx[(k + m - 1) % m], idx[k], idx[(k + 1) % m]);
            let (a, b, c) = (poly.vertex(ia), poly.vertex(ib), poly.vertex(ic));
            if turn(a, b, c) <= 0 {
                continue;
            }
            let blocked = idx.iter().any(|&j| {
                if j == ia || j == ib || j == ic {
                    return false;
                }
                let p = poly.vertex(j);
                turn(a, b, p) >= 0 && turn(b, c, p) >= 0 && turn(c, a, p) >= 0
            });
            if !blocked {
                out.push([ia, ib, ic]);
                idx.remove(k);
                clipped = true;
                break;
            }
        }
        assert!(clipped, "ear clipping failed: polygon is not simple");
    }
    out.push([idx[0], idx[1], idx[2]]);
    out
}

/// A uniformly random point strictly inside the polygon, on a dyadic grid.
pub fn sample_interior<R: Rng + ?Sized>(poly: &Polygon, tris: &[[usize; 3]], rng: &mut R) -> Point {
    let weights: Vec<f64> =
        tris.iter().map(|t| cross3(poly.vertex(t[0]), poly.vertex(t[1]), poly.vertex(t[2])).to_f64().abs()).collect();
    let total: f64 = weights.iter().sum();
    let mut pick = rng.gen::<f64>() * total;
    let mut chosen = tris.len() - 1;
    for (i, w) in weights.iter().enumerate() {
        if pick < *w {
            chosen = i;
            break;
        }
        pick -= w;
    }
    let t = tris[chosen];
    const RES: i64 = 1 << 20;
    let (u, v) = loop {
        let u = rng.gen_range(1..RES);
        let v = rng.gen_range(1..RES);
        if u + v < RES {
            break (u, v);
        }
    };
    let (a, b, c) = (poly.vertex(t[0]), poly.vertex(t[1]), poly.vertex(t[2]));
    let u = Rational::new(u, RES);
    let v = Rational::new(v, RES);
    a.add(&b.sub(a).scale(&u)).add(&c.sub(a).scale(&v))
}
