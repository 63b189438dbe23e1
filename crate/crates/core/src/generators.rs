//! Deterministic polygon families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geom::{segments_intersect, signed_area2, turn, GeomError, Point, Polygon};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeneratorError {
    #[error("unsupported vertex count {n} for {family}")]
    BadN { family: Family, n: usize },
    #[error("generation failed: {0}")]
    GenerationFailed(#[from] GeomError),
    #[error("generation failed after the retry budget")]
    RetriesExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Zigzag,
    Spiral,
    Convex,
    Random,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Zigzag => "zigzag",
            Family::Spiral => "spiral",
            Family::Convex => "convex",
            Family::Random => "random",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "zigzag" => Ok(Family::Zigzag),
            "spiral" => Ok(Family::Spiral),
            "convex" => Ok(Family::Convex),
            "random" => Ok(Family::Random),
            _ => Err(format!("unknown family {s:?}")),
        }
    }
}

/// A generated instance with its designated source and, for the extremal
/// families, target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureSpec {
    pub family: Family,
    pub n: usize,
    pub seed: Option<u64>,
    pub polygon: Polygon,
    pub source: Point,
    pub target: Option<Point>,
}

impl FixtureSpec {
    pub fn generate(family: Family, n: usize, seed: u64) -> Result<Self, GeneratorError> {
        let (polygon, source, target, seed) = match family {
            Family::Zigzag => {
                let (p, s, t) = zigzag(n)?;
                (p, s, Some(t), None)
            }
            Family::Spiral => {
                let (p, s, t) = spiral(n)?;
                (p, s, Some(t), None)
            }
            Family::Convex => {
                let p = convex(n, seed)?;
                let s = centroid(&p);
                (p, s, None, Some(seed))
            }
            Family::Random => {
                if n < 3 {
                    return Err(GeneratorError::BadN { family, n });
                }
                let p = random_simple(n, seed)?;
                let s = designated_source(&p, seed);
                (p, s, None, Some(seed))
            }
        };
        Ok(FixtureSpec { family, n, seed, polygon, source, target })
    }
}

fn centroid(p: &Polygon) -> Point {
    let n = Rational::from_integer(p.n() as i64);
    let (mut x, mut y) = (Rational::zero(), Rational::zero());
    for v in p.vertices() {
        x = x + &v.x;
        y = y + &v.y;
    }
    Point::new(x / &n, y / &n)
}

/// A seeded interior point off every vertex line.
fn designated_source(p: &Polygon, seed: u64) -> Point {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let tris = crate::geom::triangulate(p);
    loop {
        let s = crate::geom::sample_interior(p, &tris, &mut rng);
        if crate::geom::general_position_with_source(p, &s).is_ok_and(|r| r.is_ok()) {
            return s;
        }
    }
}

/// Perturbation `j^2 / 64` that keeps repeated coordinates off common lines.
fn wobble(j: i64) -> Rational {
    Rational::new(j * j, 64)
}

/// A thickened zig-zag band of `n/2` steep legs with pointed ends. Light
/// from one leg reaches the next only by reflecting off the outer wall of
/// the bend between them, so `s` at one tip and `t` at the other need
/// `n/2 - 1` reflections.
pub fn zigzag(n: usize) -> Result<(Polygon, Point, Point), GeneratorError> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(GeneratorError::BadN { family: Family::Zigzag, n });
    }
    let legs = (n / 2) as i64;
    let (w, h, a, b) = (ZZ_PITCH, ZZ_HEIGHT, ZZ_OUTER, ZZ_INNER);
    let at = |j: i64, y: Rational| Point::new(Rational::from_integer(j * w), y + &wobble(j));
    let top = |j: i64| j % 2 == 1;
    // Outer and inner vertex of the bend at column j.
    let outer = |j: i64| if top(j) { at(j, Rational::from_integer(h + a)) } else { at(j, Rational::from_integer(-a)) };
    let inner = |j: i64| if top(j) { at(j, Rational::from_integer(h - b)) } else { at(j, Rational::from_integer(b)) };
    let tip_y = |j: i64| if top(j) { Rational::from_integer(h) } else { Rational::zero() };
    let tip = |j: i64| {
        let dx = if j == 0 { -ZZ_TIP } else { ZZ_TIP };
        Point::new(Rational::from_integer(j * w + dx), tip_y(j) + &wobble(j))
    };
    // Lower chain left to right: at top bends the lower wall is the inner
    // vertex, at bottom bends the outer one.
    let mut pts = vec![tip(0)];
    for j in 1..legs {
        pts.push(if top(j) { inner(j) } else { outer(j) });
    }
    pts.push(tip(legs));
    for j in (1..legs).rev() {
        pts.push(if top(j) { outer(j) } else { inner(j) });
    }
    if signed_area2(&pts).is_negative() {
        pts.reverse();
    }
    let poly = Polygon::new(pts)?;
    // Designated points sit on the end legs' center lines, near the tips.
    let f = Rational::new(1, ZZ_END);
    let s = tip(0).lerp(&outer(1).midpoint(&inner(1)), &f);
    let t = tip(legs).lerp(&outer(legs - 1).midpoint(&inner(legs - 1)), &f);
    Ok((poly, s, t))
}

const ZZ_PITCH: i64 = 2;
const ZZ_HEIGHT: i64 = 16;
const ZZ_OUTER: i64 = 1;
const ZZ_INNER: i64 = 1;
const ZZ_TIP: i64 = 0;
/// Designated points lie this fraction (as `1/ZZ_END`) up their end legs.
const ZZ_END: i64 = 8;

/// Square spiral corridor with `(n - 4)/2` left turns, from the outer end
/// inward. Corridor width 2, wall thickness 2.
///
/// Vertices are moved off the orthogonal grid by less than `1/30` so that no
/// three are collinear; `s` is near the outer end and `t` near the inner end.
pub fn spiral(n: usize) -> Result<(Polygon, Point, Point), GeneratorError> {
    if n < 12 || !n.is_multiple_of(4) {
        return Err(GeneratorError::BadN { family: Family::Spiral, n });
    }
    let turns = (n - 4) / 2;
    let legs = turns + 1;
    let pitch = 4;
    // Leg lengths l, l, l, l-p, l-p, l-2p, l-2p, ...
    let first = pitch * (legs as i64 / 2) + SP_MIN_LEG;
    let dirs = [(1, 0), (0, 1), (-1, 0), (0, -1)];
    let mut centre = vec![(0i64, 0i64)];
    for i in 0..legs {
        let len = if i == 0 { first } else { first - pitch * ((i as i64 - 1) / 2) };
        let (x, y) = centre[i];
        let (dx, dy) = dirs[i % 4];
        centre.push((x + dx * len, y + dy * len));
    }
    let left = |i: usize| {
        let (dx, dy) = dirs[i % 4];
        (-dy, dx)
    };
    // Left and right wall vertices at centre line point j.
    let offset = |j: usize| {
        let (a, b) = (left(j.saturating_sub(1).min(legs - 1)), left(j.min(legs - 1)));
        match j {
            0 => b,
            _ if j == legs => a,
            _ => (a.0 + b.0, a.1 + b.1),
        }
    };
    let mut pts = Vec::with_capacity(n);
    for (j, c) in centre.iter().enumerate() {
        let (ox, oy) = offset(j);
        pts.push((c.0 - ox, c.1 - oy));
    }
    for (j, c) in centre.iter().enumerate().rev() {
        let (ox, oy) = offset(j);
        pts.push((c.0 + ox, c.1 + oy));
    }
    let pts: Vec<Point> = pts
        .into_iter()
        .enumerate()
        .map(|(k, (x, y))| {
            let k = k as i64;
            Point::new(
                Rational::from_integer(x) + Rational::new((k * k) % 61, 2048),
                Rational::from_integer(y) + Rational::new((k * k * k) % 67, 2048),
            )
        })
        .collect();
    let poly = Polygon::new(pts)?;
    let at = |j: usize, toward: usize, f: Rational, side: Rational| {
        let (cx, cy) = centre[j];
        let (tx, ty) = centre[toward];
        let (nx, ny) = left(j.min(toward));
        let base = Point::int(cx, cy).lerp(&Point::int(tx, ty), &f);
        base.add(&Point::int(nx, ny).scale(&side))
    };
    let s = at(0, 1, Rational::new(1, 13), Rational::new(2, 7));
    let t = at(legs, legs - 1, Rational::new(1, 11), Rational::new(-3, 7));
    Ok((poly, s, t))
}

const SP_MIN_LEG: i64 = 8;

/// Convex polygon: points on a circle of radius 1024, snapped to the
/// `1/1024` grid and jittered by up to one grid step per coordinate.
pub fn convex(n: usize, seed: u64) -> Result<Polygon, GeneratorError> {
    if n < 3 {
        return Err(GeneratorError::BadN { family: Family::Convex, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r = 1024.0f64 * 1024.0;
    for _ in 0..16 {
        let pts: Vec<Point> = (0..n)
            .map(|i| {
                let th = std::f64::consts::TAU * i as f64 / n as f64;
                let x = (r * th.cos()).round() as i64 + rng.gen_range(-1..=1);
                let y = (r * th.sin()).round() as i64 + rng.gen_range(-1..=1);
                Point::new(Rational::new(x, 1024), Rational::new(y, 1024))
            })
            .collect();
        if let Ok(p) = Polygon::new(pts) {
            // Strictly convex, so no three vertices are collinear.
            if p.is_convex() {
                return Ok(p);
            }
        }
    }
    Err(GeneratorError::RetriesExhausted)
}

/// Random simple polygon on an integer grid with no three vertices collinear.
///
/// Vertices are drawn until no three are collinear, then crossing edge
/// pairs are removed by 2-opt moves, each of which shortens the tour.
pub fn random_simple(n: usize, seed: u64) -> Result<Polygon, GeomError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = (4 * n as i64).max(16);
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    while pts.len() < n {
        let p = Point::int(rng.gen_range(0..side), rng.gen_range(0..side));
        let clash = pts.iter().enumerate().any(|(i, a)| a == &p || pts[i + 1..].iter().any(|b| turn(a, b, &p) == 0));
        if !clash {
            pts.push(p);
        }
    }
    pts.shuffle(&mut rng);
    untangle(&mut pts);
    if signed_area2(&pts).is_negative() {
        pts.reverse();
    }
    Polygon::new(pts)
}

/// 2-opt until no two non-adjacent edges meet.
fn untangle(pts: &mut [Point]) {
    let n = pts.len();
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (a, b) = (&pts[i], &pts[i + 1]);
                let (c, d) = (&pts[j], &pts[(j + 1) % n]);
                if segments_intersect(a, b, c, d) {
                    pts[i + 1..=j].reverse();
                    changed = true;
                }
            }
        }
        if !changed {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{collinear_triples, general_position_with_source};
    use crate::oracle::min_reflections_bfs;
    use crate::regions::illuminate;

    #[test]
    fn random_simple_is_valid_and_deterministic() {
        for seed in 0..20 {
            let p = random_simple(15, seed).unwrap();
            assert!(p.validate().is_ok());
            assert_eq!(p, random_simple(15, seed).unwrap());
        }
        assert_eq!(random_simple(3, 9).unwrap().n(), 3);
        assert!(random_simple(20, 7).unwrap().validate().is_ok());
    }

    fn check_extremal(p: &Polygon, s: &Point, t: &Point) {
        assert!(p.validate().is_ok());
        assert!(collinear_triples(p.vertices()).is_empty());
        assert!(general_position_with_source(p, s).unwrap().is_ok());
        assert!(general_position_with_source(p, t).unwrap().is_ok());
    }

    #[test]
    fn zigzag_family() {
        for n in [8, 10, 16, 24] {
            let (p, s, t) = zigzag(n).unwrap();
            assert_eq!(p.n(), n);
            check_extremal(&p, &s, &t);
        }
        let (p, s, t) = zigzag(8).unwrap();
        assert_eq!(min_reflections_bfs(&p, &s, &t, 64).unwrap().min_reflections, 3);
        let (p, s, _) = zigzag(16).unwrap();
        assert_eq!(illuminate(&p, &s).unwrap().terminated_at, 7);
        for n in [6, 9, 17] {
            assert!(matches!(zigzag(n), Err(GeneratorError::BadN { .. })));
        }
    }

    #[test]
    fn spiral_family() {
        for n in [12, 16, 20, 28] {
            let (p, s, t) = spiral(n).unwrap();
            assert_eq!(p.n(), n);
            check_extremal(&p, &s, &t);
        }
        let (p, s, t) = spiral(12).unwrap();
        assert_eq!(min_reflections_bfs(&p, &s, &t, 64).unwrap().min_reflections, 4);
        for n in [8, 14, 18] {
            assert!(matches!(spiral(n), Err(GeneratorError::BadN { .. })));
        }
    }

    #[test]
    fn convex_family() {
        let tri = convex(3, 0).unwrap();
        assert_eq!(tri.n(), 3);
        let res = illuminate(&tri, &centroid(&tri)).unwrap();
        assert_eq!(res.terminated_at, 0);
        let p = convex(7, 1).unwrap();
        assert!(p.validate().is_ok() && p.is_convex());
        let p = convex(100, 2).unwrap();
        assert_eq!(illuminate(&p, &centroid(&p)).unwrap().ledger.steps[0].mu, 100);
        assert!(convex(1000, 3).unwrap().is_convex());
        assert!(matches!(convex(2, 0), Err(GeneratorError::BadN { .. })));
    }

    #[test]
    fn fixture_specs_are_deterministic() {
        for family in [Family::Zigzag, Family::Spiral, Family::Convex, Family::Random] {
            let a = FixtureSpec::generate(family, 16, 5).unwrap();
            assert_eq!(a, FixtureSpec::generate(family, 16, 5).unwrap());
            assert!(general_position_with_source(&a.polygon, &a.source).unwrap().is_ok());
            assert_eq!(a.target.is_some(), matches!(family, Family::Zigzag | Family::Spiral));
            assert_eq!(family.to_string().parse::<Family>().unwrap(), family);
        }
    }
}
