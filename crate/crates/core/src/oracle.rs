//! Brute-force minimum reflection counts by BFS over boundary samples.
//!
//! Independent of the geometry module's predicates: all coordinates are
//! scaled to a common integer grid and tested with `i128` arithmetic.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::geom::{BoundaryPoint, Point, Polygon};
use crate::paths::ReflectionPath;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("target not reachable with {0} samples per edge")]
    Unreachable(usize),
    #[error("{0} is not in the interior of the polygon")]
    NotInterior(&'static str),
    #[error("samples per edge must be at least 1")]
    BadResolution,
    #[error("coordinates too large for the integer kernel")]
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub min_reflections: usize,
    pub witness: ReflectionPath,
    pub samples_per_edge: usize,
}

type P = (i128, i128);

fn turn(a: P, b: P, c: P) -> i8 {
    let v = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
    v.signum() as i8
}

fn on_open(a: P, b: P, p: P) -> bool {
    turn(a, b, p) == 0
        && p != a
        && p != b
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

#[derive(PartialEq)]
enum Loc {
    In,
    On,
    Out,
}

fn locate(poly: &[P], q: P) -> Loc {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if q == a || on_open(a, b, q) {
            return Loc::On;
        }
        if (a.1 > q.1) != (b.1 > q.1) {
            // Crossing of the horizontal ray to the right of q.
            let s = turn(a, b, q);
            if (b.1 > a.1) == (s > 0) {
                inside = !inside;
            }
        }
    }
    if inside {
        Loc::In
    } else {
        Loc::Out
    }
}

/// Open segment `uv` inside the polygon interior.
fn clear(poly: &[P], u: P, v: P) -> bool {
    let n = poly.len();
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        if on_open(u, v, p) {
            return false;
        }
        let (o1, o2) = (turn(u, v, p), turn(u, v, q));
        if o1 * o2 < 0 && turn(p, q, u) * turn(p, q, v) < 0 {
            return false;
        }
    }
    // Coordinates are pre-scaled by two, so the midpoint is on the grid.
    locate(poly, ((u.0 + v.0) / 2, (u.1 + v.1) / 2)) == Loc::In
}

struct Grid {
    scale: BigInt,
}

impl Grid {
    fn new<'a>(pts: impl Iterator<Item = &'a Point>, m: usize) -> Self {
        let mut l = BigInt::one();
        for p in pts {
            l = l.lcm(&p.x.denom()).lcm(&p.y.denom());
        }
        // Every coordinate becomes a multiple of 4m: samples at i/(2m) and
        // midpoints of samples stay on the grid.
        Grid { scale: l * (4 * m as u64) }
    }

    fn coord(&self, r: &Rational) -> Result<i128, OracleError> {
        let v = r.numer() * (&self.scale / r.denom());
        if v.abs() > (BigInt::one() << 60) {
            return Err(OracleError::Overflow);
        }
        v.to_i128().ok_or(OracleError::Overflow)
    }

    fn point(&self, p: &Point) -> Result<P, OracleError> {
        Ok((self.coord(&p.x)?, self.coord(&p.y)?))
    }
}

/// Minimum reflection count over paths whose reflection points lie at
/// parameters `i/(2m)`, `0 < i < 2m`, of each edge.
///
/// That node set contains the `m` points `(2i+1)/(2m)` and is a subset of
/// the set for `2m`, so the result never increases when `m` doubles. It is
/// an upper bound on the true minimum.
pub fn min_reflections_bfs(poly: &Polygon, s: &Point, t: &Point, m: usize) -> Result<OracleResult, OracleError> {
    if m == 0 {
        return Err(OracleError::BadResolution);
    }
    let n = poly.n();
    let grid = Grid::new(poly.vertices().iter().chain([s, t]), m);
    let verts: Vec<P> = poly.vertices().iter().map(|p| grid.point(p)).collect::<Result<_, _>>()?;
    let (si, ti) = (grid.point(s)?, grid.point(t)?);
    if locate(&verts, si) != Loc::In {
        return Err(OracleError::NotInterior("source"));
    }
    if locate(&verts, ti) != Loc::In {
        return Err(OracleError::NotInterior("target"));
    }
    let per = 2 * m - 1;
    let den = 2 * m as i128;
    // Node 0 is s, node 1 is t, then `per` samples per edge.
    let mut nodes = vec![si, ti];
    for e in 0..n {
        let (a, b) = (verts[e], verts[(e + 1) % n]);
        for i in 1..=per as i128 {
            nodes.push((a.0 + (b.0 - a.0) * i / den, a.1 + (b.1 - a.1) * i / den));
        }
    }
    let edge_of = |k: usize| (k >= 2).then(|| (k - 2) / per);

    let mut parent = vec![usize::MAX; nodes.len()];
    parent[0] = 0;
    let mut unvisited: Vec<usize> = (1..nodes.len()).collect();
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let eu = edge_of(u);
        let mut keep = Vec::with_capacity(unvisited.len());
        for &v in &unvisited {
            let same_edge = eu.is_some() && eu == edge_of(v);
            if !same_edge && clear(&verts, nodes[u], nodes[v]) {
                parent[v] = u;
                if v == 1 {
                    return Ok(witness(poly, s, t, &parent, per, m));
                }
                // The target is a sink: only boundary samples relay.
                queue.push_back(v);
            } else {
                keep.push(v);
            }
        }
        unvisited = keep;
    }
    Err(OracleError::Unreachable(m))
}

fn witness(poly: &Polygon, s: &Point, t: &Point, parent: &[usize], per: usize, m: usize) -> OracleResult {
    let mut reflections = Vec::new();
    let mut k = parent[1];
    while k != 0 {
        let (e, i) = ((k - 2) / per, (k - 2) % per + 1);
        reflections.push(BoundaryPoint::on_edge(poly, e, Rational::new(i as i64, 2 * m as i64)));
        k = parent[k];
    }
    reflections.reverse();
    OracleResult {
        min_reflections: reflections.len(),
        witness: ReflectionPath { source: s.clone(), reflections, target: t.clone() },
        samples_per_edge: m,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{l6, triangle, unit_square};
    use crate::geom;
    use crate::paths::validate_path;
    use proptest::prelude::*;
    use rand::SeedableRng;

    #[test]
    fn convex_is_direct() {
        let r = min_reflections_bfs(&unit_square(), &Point::frac(1, 5, 1, 3), &Point::frac(4, 5, 5, 7), 4).unwrap();
        assert_eq!(r.min_reflections, 0);
        let r = min_reflections_bfs(&triangle(), &Point::int(1, 1), &Point::frac(3, 2, 1, 2), 1).unwrap();
        assert_eq!(r.min_reflections, 0);
    }

    #[test]
    fn l6_one_bounce() {
        let p = l6();
        let (s, t) = (Point::frac(3, 2, 1, 4), Point::frac(9, 10, 19, 10));
        let r = min_reflections_bfs(&p, &s, &t, 16).unwrap();
        assert_eq!(r.min_reflections, 1);
        assert!(validate_path(&p, &r.witness).is_ok());
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = l6();
        let s = Point::frac(3, 2, 1, 4);
        assert_eq!(min_reflections_bfs(&p, &s, &Point::int(3, 3), 4).unwrap_err(), OracleError::NotInterior("target"));
        assert_eq!(min_reflections_bfs(&p, &s, &s, 0).unwrap_err(), OracleError::BadResolution);
    }

    #[test]
    fn kernel_matches_geometry() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for seed in 0..20 {
            let p = crate::generators::random_simple(12, seed).unwrap();
            let tris = geom::triangulate(&p);
            let pts: Vec<_> = (0..30).map(|_| geom::sample_interior(&p, &tris, &mut rng)).collect();
            let grid = Grid::new(p.vertices().iter().chain(pts.iter()), 1);
            let verts: Vec<P> = p.vertices().iter().map(|v| grid.point(v).unwrap()).collect();
            for u in &pts {
                for v in &pts {
                    if u != v {
                        let a = clear(&verts, grid.point(u).unwrap(), grid.point(v).unwrap());
                        assert_eq!(a, geom::sees(&p, u, v), "seed {seed} {u} {v}");
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn witness_valid_and_monotone(seed in 0u64..500, pick in 0u64..1000) {
            let p = crate::generators::random_simple(10, seed).unwrap();
            let tris = geom::triangulate(&p);
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(pick);
            let s = geom::sample_interior(&p, &tris, &mut rng);
            let t = geom::sample_interior(&p, &tris, &mut rng);
            let mut last = usize::MAX;
            for m in [2, 4, 8] {
                let r = min_reflections_bfs(&p, &s, &t, m).unwrap();
                prop_assert!(validate_path(&p, &r.witness).is_ok());
                prop_assert_eq!(r.witness.reflection_count(), r.min_reflections);
                prop_assert!(r.min_reflections <= last);
                last = r.min_reflections;
            }
        }
    }
}
