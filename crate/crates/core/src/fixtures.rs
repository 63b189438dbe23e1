//! Small named polygons used in tests, examples and documentation.

use crate::geom::{Point, Polygon};

fn poly(pts: &[(i64, i64)]) -> Polygon {
    Polygon::new(pts.iter().map(|&(x, y)| Point::int(x, y)).collect()).expect("fixture is valid")
}

/// The six-vertex L shape with its reflex vertex at `(1, 1)`.
pub fn l6() -> Polygon {
    poly(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)])
}

pub fn unit_square() -> Polygon {
    poly(&[(0, 0), (1, 0), (1, 1), (0, 1)])
}

pub fn triangle() -> Polygon {
    poly(&[(0, 0), (4, 0), (1, 3)])
}

/// Ten-vertex polygon whose source sees three windows: one saturated and
/// two unsaturated.
pub fn three_windows() -> (Polygon, Point) {
    let p = poly(&[(36, 3), (38, 18), (31, 32), (24, 27), (14, 33), (13, 27), (11, 16), (16, 21), (35, 4), (20, 5)]);
    (p, Point::frac(204, 7, 141, 5))
}

/// Eleven-vertex polygon lit in exactly three reflections, starting from
/// three windows.
pub fn layered() -> (Polygon, Point) {
    let p =
        poly(&[(40, 43), (5, 39), (17, 40), (17, 35), (7, 38), (11, 24), (9, 18), (7, 22), (11, 1), (14, 26), (41, 5)]);
    (p, Point::frac(85, 7, 86, 5))
}
