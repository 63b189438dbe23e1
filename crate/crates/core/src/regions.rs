//! The nested regions `R_0 ⊆ R_1 ⊆ …` grown from a light source, with
//! window classification, probe points and the edge coverage ledger.

use std::fmt;

use crate::boundary::{self, ArcSet};
use crate::geom::{self, line_param, BoundaryPoint, GeomError, Point, Polygon, Violation};
use crate::rational::Rational;
use crate::visibility::{
    self, arc_chain, chord_windows, endpoint_windows, point_windows, Region, Viewpoint, VisibilityError, WindowChord,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RegionError {
    #[error("segment is not a chord of the polygon")]
    NotAChord,
    #[error("region property ({0}) violated: {1}")]
    PropertyViolation(&'static str, String),
    #[error("window is saturated; no probe point needed")]
    WindowSaturated,
    #[error("no covered boundary next to the window foot")]
    NoCoveredNeighborhood,
    #[error("step {k}: {mu} weakly covered edges, expected at least {required}")]
    InvariantBreach { k: usize, mu: usize, required: usize },
    #[error("no termination after {0} steps")]
    IterationCap(usize),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error(transparent)]
    Visibility(#[from] VisibilityError),
}

impl From<GeomError> for RegionError {
    fn from(e: GeomError) -> Self {
        RegionError::Visibility(e.into())
    }
}

/// A window `ab` of a region, with the two polygons it splits `P` into.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    pub a: Point,
    pub a_index: usize,
    pub b: BoundaryPoint,
    /// The pocket `U_ab`, disjoint from the region.
    pub far_side: Polygon,
    pub near_side: Polygon,
    pub chord: WindowChord,
}

impl Window {
    fn from_chord(poly: &Polygon, chord: &WindowChord) -> Self {
        let (from, to) = chord.arc_ends();
        Window {
            a: poly.vertex(chord.a).clone(),
            a_index: chord.a,
            b: chord.b.clone(),
            far_side: Polygon::new_unchecked(chord.pocket.clone()),
            near_side: Polygon::new_unchecked(arc_chain(poly, &to, &from)),
            chord: chord.clone(),
        }
    }

    /// Pocket arc of `∂P` (closed).
    pub fn far_arc(&self, n: usize) -> ArcSet {
        self.chord.arc(n)
    }

    pub fn near_arc(&self, n: usize) -> ArcSet {
        let (from, to) = self.chord.arc_ends();
        ArcSet::arc(n, &to, &from)
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.a, self.b)
    }
}

/// Splits `P` along the chord `p0 p1`. The first polygon follows `∂P`
/// counterclockwise from `p0` to `p1`, the second from `p1` to `p0`.
pub fn split_by_chord(poly: &Polygon, p0: &Point, p1: &Point) -> Result<(Polygon, Polygon), RegionError> {
    let (x0, x1) = visibility::chord_ends(poly, p0, p1).map_err(|e| match e {
        VisibilityError::NotAChord => RegionError::NotAChord,
        e => e.into(),
    })?;
    Ok((Polygon::new_unchecked(arc_chain(poly, &x0, &x1)), Polygon::new_unchecked(arc_chain(poly, &x1, &x0))))
}

/// Windows of `R`, after checking the structural region properties.
pub fn extract_windows(poly: &Polygon, region: &Region) -> Result<Vec<Window>, RegionError> {
    check_properties(poly, region)?;
    Ok(region.windows().iter().map(|c| Window::from_chord(poly, c)).collect())
}

/// Properties (i)-(iv): simple boundary, disjoint windows, reflex and
/// edge-interior endpoints, foot excluded but approached by covered points.
pub fn check_properties(poly: &Polygon, region: &Region) -> Result<(), RegionError> {
    let n = poly.n();
    let outline = region.outline();
    let crossings: Vec<_> = geom::simplicity_violations(&outline)
        .into_iter()
        .filter(|v| !matches!(v, Violation::CollinearTriple(..)))
        .collect();
    if !crossings.is_empty() {
        return Err(RegionError::PropertyViolation("i", format!("{crossings:?}")));
    }
    let ws = region.windows();
    for (i, w) in ws.iter().enumerate() {
        for v in &ws[i + 1..] {
            if !w.arc(n).intersect(&v.arc(n)).is_empty() {
                return Err(RegionError::PropertyViolation(
                    "ii",
                    format!("windows at vertices {} and {} overlap", w.a, v.a),
                ));
            }
        }
        if !poly.is_reflex(w.a) || !w.b.is_edge_interior() {
            return Err(RegionError::PropertyViolation("iii", format!("window at vertex {}", w.a)));
        }
        let abuts = region.lit().edge_intervals(w.b.edge.0).iter().any(|(lo, hi)| {
            if w.pocket_after_b {
                hi == &w.b.param
            } else {
                lo == &w.b.param
            }
        });
        if !abuts {
            return Err(RegionError::PropertyViolation("iv", format!("foot {}", w.b)));
        }
    }
    Ok(())
}

/// Arcs of the near side of `w` that some chord through the relative
/// interior of `ab` reaches, complemented: the near-side shadow of `ab`.
fn near_shadow(poly: &Polygon, w: &Window) -> Result<ArcSet, RegionError> {
    let n = poly.n();
    let near = w.near_arc(n);
    let mut shadows = chord_windows(poly, &w.a, &w.b.point, &near, true)?;
    shadows.extend(endpoint_windows(poly, &w.a, &w.b.point, &near)?);
    let mut shadow = shadows.iter().fold(ArcSet::empty(n), |acc, s| acc.union(&s.arc(n)));
    // An edge at `a` lying on the chord's line sees the chord only through `a`.
    let a = w.a_index;
    for e in [poly.prev(a), a] {
        let (u, v) = poly.edge(e);
        if geom::turn(u, v, &w.b.point) == 0 {
            shadow.add_arc(&boundary::vertex_linear(e), &boundary::vertex_linear(e + 1));
        }
    }
    Ok(shadow)
}

/// Whether every chord crossing the relative interior of `ab` has an
/// endpoint in `R`: near-side boundary not in the closure of `R` must be
/// invisible from the chord.
pub fn is_saturated(poly: &Polygon, region: &Region, w: &Window) -> Result<bool, RegionError> {
    let n = poly.n();
    let uncovered = region.pocket_arcs().minus(&w.far_arc(n)).union(region.dark()).intersect(&w.near_arc(n));
    if uncovered.is_empty() {
        return Ok(true);
    }
    Ok(near_shadow(poly, w)?.covers(&uncovered))
}

/// A boundary point `c` on `e_ab`, covered by `R`, with no line through two
/// vertices separating it from `b`.
pub fn probe_point(poly: &Polygon, region: &Region, w: &Window) -> Result<BoundaryPoint, RegionError> {
    if is_saturated(poly, region, w)? {
        return Err(RegionError::WindowSaturated);
    }
    probe_point_unchecked(poly, region, w)
}

fn probe_point_unchecked(poly: &Polygon, region: &Region, w: &Window) -> Result<BoundaryPoint, RegionError> {
    let e = w.b.edge.0;
    let tb = &w.b.param;
    // The covered side of b on e is the one away from the pocket.
    let below = w.chord.pocket_after_b;
    let (lo, hi) = region
        .lit()
        .edge_intervals(e)
        .into_iter()
        .find(|(lo, hi)| if below { hi == tb } else { lo == tb })
        .ok_or(RegionError::NoCoveredNeighborhood)?;
    let mut delta = &hi - &lo;
    let (p, q) = poly.edge(e);
    let vs = poly.vertices();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            let Some(t) = line_param(p, q, &vs[i], &vs[j]) else { continue };
            let d = if below { tb - &t } else { &t - tb };
            if d.is_positive() && d < delta {
                delta = d;
            }
        }
    }
    let half = delta / Rational::from_integer(2);
    let tc = if below { tb - &half } else { tb + &half };
    Ok(BoundaryPoint::on_edge(poly, e, tc))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExpansionMode {
    Saturated,
    Unsaturated,
}

impl fmt::Display for ExpansionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExpansionMode::Saturated => "saturated",
            ExpansionMode::Unsaturated => "unsaturated",
        })
    }
}

/// How the part `W_ab` of `R_{k+1}` beyond a window of `R_k` was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProvenanceRecord {
    pub step: usize,
    pub window: Window,
    pub mode: ExpansionMode,
    /// The probe point `c`, for unsaturated windows.
    pub probe: Option<BoundaryPoint>,
    /// Windows of `W_ab`, all inside the pocket.
    pub new_windows: Vec<WindowChord>,
    /// Part of the host edge inside the pocket that `c` only grazes.
    pub dark: ArcSet,
    /// Boundary of the pocket illuminated by `W_ab`.
    pub lit: ArcSet,
    /// Edges weakly covered by `W_ab` but not by `R_k`.
    pub new_edges: Vec<usize>,
}

impl ProvenanceRecord {
    /// `W_ab` is the whole pocket.
    pub fn fills_pocket(&self) -> bool {
        self.new_windows.is_empty() && self.dark.is_empty()
    }
}

/// Builds `R_{k+1}` from `R_k` across all windows of `R_k`.
pub fn expand(poly: &Polygon, region: &Region, step: usize) -> Result<(Region, Vec<ProvenanceRecord>), RegionError> {
    let n = poly.n();
    let windows = extract_windows(poly, region)?;
    let before = region.lit().touched_edges();
    let mut records = Vec::with_capacity(windows.len());
    let mut all_windows = Vec::new();
    let mut all_dark = ArcSet::empty(n);
    for w in windows {
        let far = w.far_arc(n);
        let (mode, probe, new_windows, dark) = if is_saturated(poly, region, &w)? {
            let ws = chord_windows(poly, &w.a, &w.b.point, &far, false)?;
            (ExpansionMode::Saturated, None, ws, ArcSet::empty(n))
        } else {
            let c = probe_point_unchecked(poly, region, &w)?;
            let ws = point_windows(poly, &Viewpoint::OnEdge(&c), |v| far.contains_open(&boundary::vertex_linear(v)))?;
            let e = c.edge.0;
            let xb = boundary::linear(&w.b);
            let dark = if w.chord.pocket_after_b {
                ArcSet::arc(n, &xb, &boundary::vertex_linear(e + 1))
            } else {
                ArcSet::arc(n, &boundary::vertex_linear(e), &xb)
            };
            (ExpansionMode::Unsaturated, Some(c), ws, dark)
        };
        let shadow = new_windows.iter().fold(dark.clone(), |acc, c| acc.union(&c.arc(n)));
        let lit = far.minus(&shadow);
        let new_edges =
            lit.touched_edges().iter().enumerate().filter(|&(e, &t)| t && !before[e]).map(|(e, _)| e).collect();
        all_windows.extend(new_windows.iter().cloned());
        all_dark = all_dark.union(&dark);
        records.push(ProvenanceRecord { step, window: w, mode, probe, new_windows, dark, lit, new_edges });
    }
    let next = Region::new(poly, all_windows, all_dark);
    check_properties(poly, &next)?;
    Ok((next, records))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Condition {
    /// All windows are saturated.
    A,
    /// At least two windows, one of them unsaturated.
    B,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::A => "A",
            Condition::B => "B",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerStep {
    pub k: usize,
    pub mu: usize,
    pub lambda: usize,
    pub critical: bool,
    pub condition: Option<Condition>,
    /// Saturation of each window, in window order.
    pub saturated: Vec<bool>,
    pub covered: Vec<Vec<(Rational, Rational)>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoverageLedger {
    pub steps: Vec<LedgerStep>,
}

impl CoverageLedger {
    pub fn mu(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.mu).collect()
    }

    pub fn lambda(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.lambda).collect()
    }
}

pub fn is_critical(mu: usize, k: usize, n: usize) -> bool {
    mu == 2 * k + 3 && mu < n
}

fn condition_of(saturated: &[bool]) -> Option<Condition> {
    if saturated.is_empty() {
        None
    } else if saturated.iter().all(|&s| s) {
        Some(Condition::A)
    } else if saturated.len() >= 2 {
        Some(Condition::B)
    } else {
        None
    }
}

#[derive(Debug, Clone)]
pub struct IlluminationResult {
    pub polygon: Polygon,
    pub source: Point,
    pub regions: Vec<Region>,
    pub windows_per_step: Vec<Vec<Window>>,
    pub provenance: Vec<ProvenanceRecord>,
    pub ledger: CoverageLedger,
    pub bound_k: usize,
    pub terminated_at: usize,
}

impl IlluminationResult {
    pub fn provenance_at(&self, step: usize) -> impl Iterator<Item = &ProvenanceRecord> {
        self.provenance.iter().filter(move |r| r.step == step)
    }
}

/// `⌊n/2⌋ − 1`, saturating at zero.
pub fn reflection_bound(n: usize) -> usize {
    (n / 2).saturating_sub(1)
}

/// Grows regions from `s` until no windows remain.
pub fn illuminate(poly: &Polygon, s: &Point) -> Result<IlluminationResult, RegionError> {
    let report = poly.validate();
    if !report.is_ok() {
        return Err(RegionError::Invalid(report.to_string()));
    }
    let report = geom::general_position_with_source(poly, s)?;
    if !report.is_ok() {
        return Err(RegionError::Invalid(report.to_string()));
    }
    let n = poly.n();
    let mut region = visibility::visibility_from_point(poly, s)?;
    let mut regions = Vec::new();
    let mut windows_per_step = Vec::new();
    let mut provenance = Vec::new();
    let mut ledger = CoverageLedger::default();
    for k in 0..=n {
        let mu = region.weakly_covered_count();
        let required = (2 * k + 3).min(n);
        if mu < required {
            return Err(RegionError::InvariantBreach { k, mu, required });
        }
        let windows = extract_windows(poly, &region)?;
        let covered = region.covered();
        let lambda = windows.len();
        let (next, records) = if lambda > 0 {
            let (next, records) = expand(poly, &region, k)?;
            (Some(next), records)
        } else {
            (None, Vec::new())
        };
        let saturated: Vec<bool> = records.iter().map(|r| r.mode == ExpansionMode::Saturated).collect();
        ledger.steps.push(LedgerStep {
            k,
            mu,
            lambda,
            critical: is_critical(mu, k, n),
            condition: condition_of(&saturated),
            saturated,
            covered,
        });
        windows_per_step.push(windows);
        provenance.extend(records);
        regions.push(region);
        match next {
            Some(r) => region = r,
            None => {
                return Ok(IlluminationResult {
                    polygon: poly.clone(),
                    source: s.clone(),
                    regions,
                    windows_per_step,
                    provenance,
                    ledger,
                    bound_k: reflection_bound(n),
                    terminated_at: k,
                })
            }
        }
    }
    Err(RegionError::IterationCap(n))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Breach {
    /// `μ_0 < 3`.
    InitialCoverage(usize),
    /// `μ_k < min(2k + 3, n)`.
    Invariant { k: usize, mu: usize },
    /// `μ_{k+1} < μ_k + λ_k`.
    Growth { k: usize, mu: usize, lambda: usize, next: usize },
    /// Critical step with neither condition.
    Critical(usize),
    /// A window expansion covered fewer new edges than promised.
    Expansion { k: usize, window: usize, new_edges: usize, expected: usize },
    /// More steps than `⌊n/2⌋ − 1`.
    Bound { terminated_at: usize, bound: usize },
}

impl fmt::Display for Breach {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Breach::InitialCoverage(mu) => write!(f, "mu_0 = {mu} < 3"),
            Breach::Invariant { k, mu } => write!(f, "step {k}: mu = {mu} below 2k+3"),
            Breach::Growth { k, mu, lambda, next } => {
                write!(f, "step {k}: mu_next = {next} < {mu} + {lambda}")
            }
            Breach::Critical(k) => write!(f, "step {k} is critical without condition A or B"),
            Breach::Expansion { k, window, new_edges, expected } => {
                write!(f, "step {k}, window {window}: {new_edges} new edges, expected at least {expected}")
            }
            Breach::Bound { terminated_at, bound } => {
                write!(f, "terminated at {terminated_at} > {bound}")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AuditReport {
    /// Critical steps and the condition that holds at each.
    pub critical_steps: Vec<(usize, Option<Condition>)>,
    pub breaches: Vec<Breach>,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.breaches.is_empty()
    }
}

/// Re-derives criticality from `μ` and `n` and checks every inequality the
/// construction promises.
pub fn audit_criticality(result: &IlluminationResult) -> AuditReport {
    let n = result.polygon.n();
    let steps = &result.ledger.steps;
    let mut report = AuditReport::default();
    if let Some(first) = steps.first() {
        if first.mu < 3.min(n) {
            report.breaches.push(Breach::InitialCoverage(first.mu));
        }
    }
    for (i, s) in steps.iter().enumerate() {
        if s.mu < (2 * s.k + 3).min(n) {
            report.breaches.push(Breach::Invariant { k: s.k, mu: s.mu });
        }
        if let Some(next) = steps.get(i + 1) {
            if next.mu < s.mu + s.lambda {
                report.breaches.push(Breach::Growth { k: s.k, mu: s.mu, lambda: s.lambda, next: next.mu });
            }
        }
        if is_critical(s.mu, s.k, n) {
            let cond = condition_of(&s.saturated);
            report.critical_steps.push((s.k, cond));
            if cond.is_none() {
                report.breaches.push(Breach::Critical(s.k));
            }
        }
    }
    for k in 0..steps.len() {
        for (i, r) in result.provenance_at(k).enumerate() {
            let expected = match r.mode {
                ExpansionMode::Saturated if !r.fills_pocket() => 2,
                _ => 1,
            };
            if r.new_edges.len() < expected {
                report.breaches.push(Breach::Expansion { k, window: i, new_edges: r.new_edges.len(), expected });
            }
        }
    }
    if result.terminated_at > result.bound_k {
        report.breaches.push(Breach::Bound { terminated_at: result.terminated_at, bound: result.bound_k });
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{l6, layered, three_windows, triangle, unit_square};

    fn q(xn: i64, xd: i64, yn: i64, yd: i64) -> Point {
        Point::frac(xn, xd, yn, yd)
    }

    #[test]
    fn l6_window() {
        let p = l6();
        let r = visibility::visibility_from_point(&p, &q(3, 2, 1, 4)).unwrap();
        let ws = extract_windows(&p, &r).unwrap();
        assert_eq!(ws.len(), 1);
        let w = &ws[0];
        assert_eq!(w.a, Point::int(1, 1));
        assert_eq!(w.b.point, q(1, 3, 2, 1));
        assert_eq!(w.b.edge.0, 4);
        assert_eq!(w.far_side.area(), Rational::new(1, 3));
        assert_eq!(w.far_side.area() + w.near_side.area(), p.area());
        assert!(is_saturated(&p, &r, w).unwrap());
        assert_eq!(probe_point(&p, &r, w).unwrap_err(), RegionError::WindowSaturated);
    }

    #[test]
    fn split_examples() {
        let sq = unit_square();
        let (a, b) = split_by_chord(&sq, &q(0, 1, 1, 2), &q(1, 1, 1, 2)).unwrap();
        assert_eq!(a.area(), Rational::new(1, 2));
        assert_eq!(b.area(), Rational::new(1, 2));
        let (a, b) = split_by_chord(&sq, &Point::int(0, 0), &Point::int(1, 1)).unwrap();
        assert_eq!((a.n(), b.n()), (3, 3));

        let p = l6();
        let (t, rest) = split_by_chord(&p, &Point::int(1, 1), &q(1, 3, 2, 1)).unwrap();
        assert_eq!(t.vertices(), &[Point::int(1, 1), Point::int(1, 2), q(1, 3, 2, 1)]);
        assert_eq!(t.area(), Rational::new(1, 3));
        assert_eq!(rest.n(), 6);
        assert_eq!(rest.area(), Rational::new(8, 3));
        assert!(rest.validate().is_ok());
        assert_eq!(split_by_chord(&p, &Point::int(0, 0), &Point::int(2, 0)).unwrap_err(), RegionError::NotAChord);
    }

    #[test]
    fn illuminate_small_fixtures() {
        let t = illuminate(&triangle(), &q(1, 1, 1, 1)).unwrap();
        assert_eq!((t.terminated_at, t.bound_k), (0, 0));
        assert!(audit_criticality(&t).is_clean());

        let r = illuminate(&l6(), &q(3, 2, 1, 4)).unwrap();
        assert_eq!(r.terminated_at, 1);
        assert_eq!(r.bound_k, 2);
        assert_eq!(r.ledger.mu(), vec![5, 6]);
        assert_eq!(r.ledger.lambda(), vec![1, 0]);
        assert_eq!(r.provenance.len(), 1);
        assert_eq!(r.provenance[0].mode, ExpansionMode::Saturated);
        assert!(r.regions[1].is_whole());
        let audit = audit_criticality(&r);
        assert!(audit.is_clean(), "{:?}", audit.breaches);
    }

    #[test]
    fn three_window_fixture() {
        let (p, s) = three_windows();
        let res = illuminate(&p, &s).unwrap();
        let step = &res.ledger.steps[0];
        assert_eq!(step.lambda, 3);
        assert_eq!(step.saturated.iter().filter(|&&b| b).count(), 1);
        assert!(audit_criticality(&res).breaches.is_empty());
    }

    #[test]
    fn layered_fixture() {
        let (p, s) = layered();
        let res = illuminate(&p, &s).unwrap();
        assert_eq!(res.regions[0].windows().len(), 3);
        assert_eq!(res.terminated_at, 3);
        // Each region contains the closure of the previous one.
        for k in 1..res.regions.len() {
            assert!(res.regions[k].lit().union(res.regions[k].dark()).covers(res.regions[k - 1].lit()));
        }
    }

    #[test]
    fn convex_expand_is_identity() {
        let sq = unit_square();
        let r = Region::whole(&sq);
        let (next, recs) = expand(&sq, &r, 0).unwrap();
        assert!(next.is_whole() && recs.is_empty());
    }

    #[test]
    fn random_polygons_audit_clean() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for seed in 0..40 {
            let p = crate::generators::random_simple(18, seed).unwrap();
            let tris = geom::triangulate(&p);
            let s = geom::sample_interior(&p, &tris, &mut rng);
            let r = illuminate(&p, &s).unwrap_or_else(|e| panic!("seed {seed}: {e}"));
            let audit = audit_criticality(&r);
            assert!(audit.is_clean(), "seed {seed}: {:?}", audit.breaches);
        }
    }

    /// Parameters in (0, 1): an even grid plus points approaching both ends
    /// geometrically, where slivers between nearby shadow lines live.
    fn oracle_params(per: i64) -> Vec<Rational> {
        let mut ts: Vec<Rational> = (1..per).map(|i| Rational::new(i, per)).collect();
        for j in 1..40 {
            let eps = Rational::new(1, 1i64 << j);
            ts.push(Rational::one() - &eps);
            ts.push(eps);
        }
        ts.sort();
        ts.dedup();
        ts
    }

    /// Sampled near-side boundary points outside the closure of the region
    /// that see a relative-interior point of the chord.
    fn saturation_witnesses(p: &Polygon, r: &Region, w: &Window, per_arc: i64, chord: i64) -> usize {
        let n = p.n();
        let gap = r.pocket_arcs().minus(&w.far_arc(n)).union(r.dark()).intersect(&w.near_arc(n));
        let chord_pts: Vec<Point> = oracle_params(chord).iter().map(|t| w.a.lerp(&w.b.point, t)).collect();
        let mut found = 0;
        for (lo, hi) in gap.intervals() {
            for t in oracle_params(per_arc) {
                let x = lo + &((hi - lo) * t);
                let bp = boundary::at_linear(p, &x);
                if chord_pts.iter().any(|y| geom::sees(p, &bp.point, y)) {
                    found += 1;
                }
            }
        }
        found
    }

    #[test]
    fn saturation_matches_sampling() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let (mut sat, mut unsat) = (0, 0);
        for seed in 0..40 {
            let p = crate::generators::random_simple(16, seed).unwrap();
            let tris = geom::triangulate(&p);
            let s = geom::sample_interior(&p, &tris, &mut rng);
            let res = illuminate(&p, &s).unwrap();
            for r in &res.regions {
                for w in extract_windows(&p, r).unwrap() {
                    let witnesses = saturation_witnesses(&p, r, &w, 32, 32);
                    if is_saturated(&p, r, &w).unwrap() {
                        sat += 1;
                        assert_eq!(witnesses, 0, "seed {seed}: saturated window {w} has witnesses");
                    } else {
                        unsat += 1;
                        let found = witnesses > 0 || saturation_witnesses(&p, r, &w, 256, 256) > 0;
                        assert!(found, "seed {seed}: unsaturated window {w} without witness");
                    }
                }
            }
        }
        assert!(sat > 10 && unsat > 10, "{sat} saturated, {unsat} unsaturated");
    }
}
