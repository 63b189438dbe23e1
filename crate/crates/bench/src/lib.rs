//! Inputs shared by the benchmarks.

use diffuse_core::generators::random_simple;
use diffuse_core::geom::{general_position_with_source, sample_interior, triangulate};
use diffuse_core::{Point, Polygon};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A random simple `n`-gon with an admissible interior source and `targets`
/// interior points, all fixed by `seed`.
pub fn instance(n: usize, seed: u64, targets: usize) -> (Polygon, Point, Vec<Point>) {
    let p = random_simple(n, seed).expect("generator succeeds");
    let tris = triangulate(&p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = loop {
        let s = sample_interior(&p, &tris, &mut rng);
        if general_position_with_source(&p, &s).is_ok_and(|r| r.is_ok()) {
            break s;
        }
    };
    let ts = (0..targets).map(|_| sample_interior(&p, &tris, &mut rng)).collect();
    (p, s, ts)
}
