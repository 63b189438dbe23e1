//! Diffuse reflection paths extracted from an illumination result.
//!
//! A target in `R_k` is reached with at most `k` reflections by walking the
//! provenance records backwards: through the probe point of an unsaturated
//! window, or across a saturated window's chord to the near side.

use std::fmt;

use crate::boundary;
use crate::geom::{self, point_location, ray_shoot, sees, BoundaryPoint, GeomError, Location, Point, Polygon};
use crate::rational::Rational;
use crate::regions::{ExpansionMode, IlluminationResult, ProvenanceRecord};
use crate::visibility::{visible_chord_intervals, PocketLocation};

/// Aim attempts per saturated crossing.
const AIM_ATTEMPTS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PathError {
    #[error("target lies on a window chord of R_{0}")]
    OnWindowChord(usize),
    #[error("target is not in the interior of the polygon")]
    TargetOutside,
    #[error("no usable aim point found after {AIM_ATTEMPTS} attempts")]
    AimExhausted,
    #[error("inconsistent illumination result: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionPath {
    pub source: Point,
    pub reflections: Vec<BoundaryPoint>,
    pub target: Point,
}

impl ReflectionPath {
    pub fn reflection_count(&self) -> usize {
        self.reflections.len()
    }

    /// All vertices: source, reflection points, target.
    pub fn points(&self) -> Vec<Point> {
        let mut pts = vec![self.source.clone()];
        pts.extend(self.reflections.iter().map(|r| r.point.clone()));
        pts.push(self.target.clone());
        pts
    }

    /// The same path walked from target to source.
    pub fn reversed(&self) -> ReflectionPath {
        let mut reflections = self.reflections.clone();
        reflections.reverse();
        ReflectionPath { source: self.target.clone(), reflections, target: self.source.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PathViolation {
    SourceNotInterior,
    TargetNotInterior,
    /// Reflection `i` is not at its recorded position on its host edge.
    ReflectionOffEdge(usize),
    ReflectionAtVertex(usize),
    /// Segment `i` (from path vertex `i` to `i + 1`) is degenerate.
    DegenerateSegment(usize),
    /// Segment `i` touches the boundary or leaves the polygon.
    SegmentLeavesInterior(usize),
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathViolation::SourceNotInterior => write!(f, "source is not interior"),
            PathViolation::TargetNotInterior => write!(f, "target is not interior"),
            PathViolation::ReflectionOffEdge(i) => write!(f, "reflection {i} is not on its edge"),
            PathViolation::ReflectionAtVertex(i) => write!(f, "reflection {i} is at a polygon vertex"),
            PathViolation::DegenerateSegment(i) => write!(f, "segment {i} has zero length"),
            PathViolation::SegmentLeavesInterior(i) => write!(f, "segment {i} leaves the interior"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathReport {
    pub violations: Vec<PathViolation>,
}

impl PathReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exact check of every path invariant.
pub fn validate_path(poly: &Polygon, path: &ReflectionPath) -> PathReport {
    let mut v = Vec::new();
    if point_location(poly, &path.source) != Location::Interior {
        v.push(PathViolation::SourceNotInterior);
    }
    if point_location(poly, &path.target) != Location::Interior {
        v.push(PathViolation::TargetNotInterior);
    }
    for (i, r) in path.reflections.iter().enumerate() {
        if r.edge.0 >= poly.n() {
            v.push(PathViolation::ReflectionOffEdge(i));
            continue;
        }
        let (a, b) = poly.edge(r.edge.0);
        if a.lerp(b, &r.param) != r.point {
            v.push(PathViolation::ReflectionOffEdge(i));
        } else if !r.is_edge_interior() {
            v.push(PathViolation::ReflectionAtVertex(i));
        }
    }
    let pts = path.points();
    for (i, w) in pts.windows(2).enumerate() {
        if w[0] == w[1] {
            v.push(PathViolation::DegenerateSegment(i));
        } else if !sees(poly, &w[0], &w[1]) {
            v.push(PathViolation::SegmentLeavesInterior(i));
        }
    }
    PathReport { violations: v }
}

/// Smallest `k` with `t ∈ R_k`.
pub fn locate_k(result: &IlluminationResult, t: &Point) -> Result<usize, PathError> {
    if point_location(&result.polygon, t) != Location::Interior {
        return Err(PathError::TargetOutside);
    }
    for (k, r) in result.regions.iter().enumerate() {
        match r.pocket_of(t) {
            None => return Ok(k),
            Some((_, PocketLocation::OnChord)) => return Err(PathError::OnWindowChord(k)),
            Some(_) => {}
        }
    }
    Err(PathError::Inconsistent("target outside the final region".into()))
}

/// A path from the source to `t` with at most `locate_k(t)` reflections.
pub fn extract_path(result: &IlluminationResult, t: &Point) -> Result<ReflectionPath, PathError> {
    let k = locate_k(result, t)?;
    let walker = Walker { res: result, poly: &result.polygon };
    let reflections = walker.to_interior(t, k)?;
    Ok(ReflectionPath { source: result.source.clone(), reflections, target: t.clone() })
}

struct Walker<'a> {
    res: &'a IlluminationResult,
    poly: &'a Polygon,
}

impl Walker<'_> {
    fn record(&self, step: usize, window: usize) -> Result<&ProvenanceRecord, PathError> {
        self.res
            .provenance_at(step)
            .nth(window)
            .ok_or_else(|| PathError::Inconsistent(format!("no record for window {window} at step {step}")))
    }

    /// Smallest `j` whose region illuminates boundary point `p` (away from
    /// arc endpoints).
    fn boundary_level(&self, p: &BoundaryPoint) -> Option<usize> {
        let x = boundary::linear(p);
        self.res.regions.iter().position(|r| r.lit().contains_open(&x))
    }

    /// Reflections on a path from the source to interior point `t ∈ R_k`.
    fn to_interior(&self, t: &Point, k: usize) -> Result<Vec<BoundaryPoint>, PathError> {
        if k == 0 {
            return self.direct(t);
        }
        let (i, _) = self.res.regions[k - 1]
            .pocket_of(t)
            .ok_or_else(|| PathError::Inconsistent("target already in the previous region".into()))?;
        let rec = self.record(k - 1, i)?;
        self.through(rec, t, k)
    }

    /// Reflections on a path to boundary point `p`, not counting `p`.
    fn to_boundary(&self, p: &BoundaryPoint) -> Result<Vec<BoundaryPoint>, PathError> {
        let j = self.boundary_level(p).ok_or_else(|| PathError::Inconsistent(format!("{p} is never illuminated")))?;
        if j == 0 {
            return self.direct(&p.point);
        }
        let n = self.poly.n();
        let x = boundary::linear(p);
        let prev = &self.res.regions[j - 1];
        if let Some(i) = prev.windows().iter().position(|w| w.arc(n).contains_open(&x)) {
            let rec = self.record(j - 1, i)?;
            return self.through(rec, &p.point, j);
        }
        // In a dark arc: `p` lies on the host edge of an unsaturated window
        // of R_{j-2}, collinear with its probe.
        let rec = self
            .res
            .provenance_at(j.wrapping_sub(2))
            .find(|r| r.dark.contains_closed(&x))
            .ok_or_else(|| PathError::Inconsistent(format!("{p} is neither in a pocket nor dark")))?;
        self.around_dark(rec, p)
    }

    fn direct(&self, x: &Point) -> Result<Vec<BoundaryPoint>, PathError> {
        if sees(self.poly, &self.res.source, x) {
            Ok(Vec::new())
        } else {
            Err(PathError::Inconsistent(format!("{x} is not visible from the source")))
        }
    }

    /// Path to `x`, which lies in the part `W_ab` of `R_k` described by `rec`.
    fn through(&self, rec: &ProvenanceRecord, x: &Point, k: usize) -> Result<Vec<BoundaryPoint>, PathError> {
        match rec.mode {
            ExpansionMode::Unsaturated => {
                let c = rec.probe.as_ref().ok_or_else(|| PathError::Inconsistent("probe missing".into()))?;
                if !sees(self.poly, &c.point, x) {
                    return Err(PathError::Inconsistent(format!("{x} not visible from probe {}", c.point)));
                }
                let mut path = self.to_boundary(c)?;
                path.push(c.clone());
                Ok(path)
            }
            ExpansionMode::Saturated => {
                let p = self.cross_chord(rec, x, k)?;
                let mut path = self.to_boundary(&p)?;
                path.push(p);
                Ok(path)
            }
        }
    }

    /// A near-side boundary point, illuminated by `R_{k-1}`, reached from `x`
    /// by a ray through the relative interior of the window chord.
    fn cross_chord(&self, rec: &ProvenanceRecord, x: &Point, k: usize) -> Result<BoundaryPoint, PathError> {
        let (a, b) = (&rec.window.a, &rec.window.b.point);
        let ivs: Vec<_> = visible_chord_intervals(self.poly, x, a, b).into_iter().filter(|(lo, hi)| lo < hi).collect();
        for f in aim_fractions().take(AIM_ATTEMPTS) {
            for (lo, hi) in &ivs {
                let t = lo + &((hi - lo) * &f);
                let aim = a.lerp(b, &t);
                let p = match ray_shoot(self.poly, x, &aim.sub(x)) {
                    Ok(p) => p,
                    Err(GeomError::VertexHit(_)) => continue,
                    Err(e) => return Err(PathError::Inconsistent(e.to_string())),
                };
                if self.boundary_level(&p).is_some_and(|j| j < k) && sees(self.poly, x, &p.point) {
                    return Ok(p);
                }
            }
        }
        Err(PathError::AimExhausted)
    }

    /// Path to a dark point `p` on the probe's edge: bounce off a point `r`
    /// lit from the probe and seen from `p`, leaving the edge at a small
    /// angle toward the pocket.
    fn around_dark(&self, rec: &ProvenanceRecord, p: &BoundaryPoint) -> Result<Vec<BoundaryPoint>, PathError> {
        let c = rec.probe.as_ref().ok_or_else(|| PathError::Inconsistent("dark arc without probe".into()))?;
        let e = c.edge.0;
        let (e0, e1) = self.poly.edge(e);
        let along = if rec.window.chord.pocket_after_b { e1.sub(e0) } else { e0.sub(e1) };
        // Inward normal of a counterclockwise edge.
        let d = e1.sub(e0);
        let inward = Point::new(-d.y.clone(), d.x.clone());
        let mut eps = Rational::new(1, 4);
        for _ in 0..AIM_ATTEMPTS {
            let dir = along.add(&inward.scale(&eps));
            eps = eps / Rational::from_integer(2);
            let r = match ray_shoot(self.poly, &p.point, &dir) {
                Ok(r) => r,
                Err(GeomError::VertexHit(_)) => continue,
                Err(err) => return Err(PathError::Inconsistent(err.to_string())),
            };
            let x = boundary::linear(&r);
            if rec.lit.contains_open(&x) && sees(self.poly, &c.point, &r.point) && sees(self.poly, &p.point, &r.point) {
                let mut path = self.to_boundary(c)?;
                path.push(c.clone());
                path.push(r);
                return Ok(path);
            }
        }
        Err(PathError::AimExhausted)
    }
}

/// `1/2, 1/4, 3/4, 1/8, 3/8, …`
fn aim_fractions() -> impl Iterator<Item = Rational> {
    (1u32..).flat_map(|d| {
        let den = 1i64 << d.min(62);
        (1..den).step_by(2).map(move |i| Rational::new(i, den))
    })
}

/// Boundary point on edge `e` at `p`, used by callers building paths by hand.
pub fn reflection_at(poly: &Polygon, e: usize, p: &Point) -> Option<BoundaryPoint> {
    let (a, b) = poly.edge(e);
    if !geom::on_segment(a, b, p) {
        return None;
    }
    let d = b.sub(a);
    let t = geom::dot(&p.sub(a), &d) / geom::dot(&d, &d);
    Some(BoundaryPoint { edge: crate::geom::EdgeRef(e), point: p.clone(), param: t })
}
