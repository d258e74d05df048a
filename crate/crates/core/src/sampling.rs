//! Seeded random rational points in the relative interior of a cell.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cell::ConvexCell;
use crate::point::Point;
use crate::rational::{int, Rational};

/// Barycentric weights have a common denominator of at most this value.
pub const MAX_DENOMINATOR: i64 = 1000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A point `Σ w_i v_i / S` with positive integer weights summing to
/// `S <= MAX_DENOMINATOR`, so it lies strictly inside every facet.
pub fn relint_point<R: Rng>(c: &ConvexCell, rng: &mut R) -> Point {
    let verts = c.vertices();
    let k = verts.len() as i64;
    if k == 1 {
        return verts[0].clone();
    }
    let total = rng.gen_range(k.max(2)..=MAX_DENOMINATOR.max(k));
    // Random composition of `total` into `k` positive parts.
    let mut cuts: Vec<i64> = Vec::with_capacity(verts.len() + 1);
    cuts.push(0);
    cuts.push(total);
    while cuts.len() < verts.len() + 1 {
        let c = rng.gen_range(1..total);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
    }
    cuts.sort_unstable();
    let s = int(total);
    let n = c.ambient_dim();
    let mut coords = vec![Rational::default(); n];
    for (v, w) in verts.iter().zip(cuts.windows(2)) {
        let weight = int(w[1] - w[0]) / &s;
        for (x, vi) in coords.iter_mut().zip(v.coords()) {
            *x += &weight * vi;
        }
    }
    Point::new(coords)
}

/// All vertices of `c` followed by `count` seeded relative-interior points.
pub fn sample_points<R: Rng>(c: &ConvexCell, count: usize, rng: &mut R) -> Vec<Point> {
    let mut out = c.vertices().to_vec();
    out.extend((0..count).map(|_| relint_point(c, rng)));
    out
}
