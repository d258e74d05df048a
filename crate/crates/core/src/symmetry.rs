//! Cube and orthotope symmetry groups, family invariance and the
//! stabilizer property of the symmetric decompositions.

use std::collections::HashSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::cell::ConvexCell;
use crate::error::{Error, Result};
use crate::isometry::AffineSignedIsometry;
use crate::orthotope::Orthotope;
use crate::point::Point;
use crate::report::{CheckOutcome, VerificationReport};
use crate::sampling;

/// A finite group of signed-permutation isometries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryGroup {
    ambient_dim: usize,
    elements: Vec<AffineSignedIsometry>,
}

impl SymmetryGroup {
    /// Sorts and dedups `elements`; does not check the group axioms.
    pub fn new(ambient_dim: usize, elements: impl IntoIterator<Item = AffineSignedIsometry>) -> Self {
        let mut elements: Vec<_> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        Self { ambient_dim, elements }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn elements(&self) -> &[AffineSignedIsometry] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &AffineSignedIsometry) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// Identity, inverses and closure under composition.
    pub fn is_group(&self) -> bool {
        let set: HashSet<&AffineSignedIsometry> = self.elements.iter().collect();
        set.contains(&AffineSignedIsometry::identity(self.ambient_dim))
            && self.elements.iter().all(|g| set.contains(&g.inverse()))
            && self.elements.iter().cartesian_product(&self.elements).all(|(g, h)| set.contains(&g.compose(h)))
    }
}

/// Signed permutations of the axes in `axes`, fixing every other axis.
fn signed_permutations(n: usize, axes: &[usize]) -> Vec<AffineSignedIsometry> {
    let k = axes.len();
    let mut out = Vec::with_capacity((1 << k) * (1..=k).product::<usize>());
    for p in axes.iter().copied().permutations(k) {
        for mask in 0u32..(1 << k) {
            let mut perm: Vec<usize> = (0..n).collect();
            let mut signs = vec![1i8; n];
            for (pos, &axis) in axes.iter().enumerate() {
                perm[axis] = p[pos];
                if mask & (1 << pos) != 0 {
                    signs[axis] = -1;
                }
            }
            out.push(AffineSignedIsometry::linear(perm, signs));
        }
    }
    out
}

/// `Sym(I^d)` acting on `R^d`: all `2^d d!` signed permutations.
pub fn enumerate_cube_symmetries(d: usize) -> SymmetryGroup {
    cube_symmetries_in(d, d)
}

/// `Sym(I^d)` acting on the first `d` coordinates of `R^n`.
pub fn cube_symmetries_in(d: usize, n: usize) -> SymmetryGroup {
    let axes: Vec<usize> = (0..d).collect();
    SymmetryGroup::new(n, signed_permutations(n, &axes))
}

/// Symmetries of `q` with signed-permutation linear part. Axes are only
/// exchanged when their sides agree; for an uncentered `q` each symmetry
/// fixes the center.
pub fn enumerate_orthotope_symmetries(q: &Orthotope) -> SymmetryGroup {
    let n = q.ambient_dim();
    let sides = q.sides();
    let center = q.center();
    let elements = signed_permutations(n, &q.active_axes())
        .into_iter()
        .filter(|g| (0..n).all(|i| sides[i] == sides[g.perm()[i]]))
        .map(|g| {
            let t = center.sub(&g.apply_linear(&center));
            g.with_translation(t)
        });
    SymmetryGroup::new(n, elements)
}

fn family_hull(f: &[ConvexCell]) -> Option<ConvexCell> {
    let points: Vec<Point> = f.iter().flat_map(|c| c.vertices().iter().cloned()).unique().collect();
    (!points.is_empty()).then(|| ConvexCell::hull(&points))
}

/// Whether `{T⁻¹(c) : c ∈ F} = F`. When the sets differ, the precondition
/// that `T` maps `|F|` onto itself is checked on the convex hull of `|F|`
/// (exact when `|F|` is convex) and a violation is reported as
/// [`Error::SpaceNotPreserved`]. When they agree it holds automatically.
pub fn check_family_invariance(t: &AffineSignedIsometry, f: &[ConvexCell]) -> Result<bool> {
    let original: HashSet<&ConvexCell> = f.iter().collect();
    let inv = t.inverse();
    let pulled: Vec<ConvexCell> = f.par_iter().map(|c| c.apply_isometry(&inv)).collect();
    if pulled.iter().all(|c| original.contains(c)) && pulled.iter().collect::<HashSet<_>>().len() == original.len() {
        return Ok(true);
    }
    if let Some(hull) = family_hull(f) {
        if hull.apply_isometry(t) != hull {
            return Err(Error::SpaceNotPreserved(format!("{t} moves {hull}")));
        }
    }
    Ok(false)
}

fn cell_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64).wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// Checks that `γ(x) ∈ H` forces `γ(x) = x` for every cell `H` of `f`,
/// every `γ` in `elements` and every vertex of `H` plus `samples` seeded
/// random relative-interior points of `H`. A second, exact condition
/// checks that each `γ` fixes every vertex of `H ∩ γ⁻¹(H)`, which by
/// affinity pins it on the whole set `{x ∈ H : γ(x) ∈ H}`.
pub fn stabilizer_report(
    title: &str,
    f: &[ConvexCell],
    elements: &[AffineSignedIsometry],
    samples: usize,
    seed: u64,
) -> VerificationReport {
    let per_cell: Vec<(Vec<Option<String>>, Vec<Option<String>>)> = f
        .par_iter()
        .enumerate()
        .map(|(idx, h)| {
            let mut rng = sampling::rng(cell_seed(seed, idx));
            let points = sampling::sample_points(h, samples, &mut rng);
            let mut sampled = Vec::new();
            let mut exact = Vec::new();
            for g in elements {
                let moved = points.iter().find(|x| {
                    let y = g.apply(x);
                    y != **x && h.contains_point(&y)
                });
                sampled.push(moved.map(|x| format!("H = {h}, γ = {g}, x = {x}, γ(x) = {}", g.apply(x))));
                let pre = h.apply_isometry(&g.inverse());
                let bad = h
                    .bbox_overlaps(&pre)
                    .then(|| h.intersect(&pre))
                    .flatten()
                    .and_then(|p| p.vertices().iter().find(|v| g.apply(v) != **v).cloned());
                exact.push(bad.map(|x| format!("H = {h}, γ = {g}, x = {x}, γ(x) = {}", g.apply(&x))));
            }
            (sampled, exact)
        })
        .collect();
    let (sampled, exact): (Vec<_>, Vec<_>) = per_cell.into_iter().unzip();
    let mut report = VerificationReport::new(title);
    report.push(CheckOutcome::from_results(
        "sampled points x ∈ H with γ(x) ∈ H are fixed",
        sampled.into_iter().flatten(),
    ));
    report.push(CheckOutcome::from_results("γ fixes H ∩ γ⁻¹(H) pointwise", exact.into_iter().flatten()));
    report
}

/// The stabilizer property of `f` under the group `g`.
pub fn check_stabilizer_property(f: &[ConvexCell], g: &SymmetryGroup, samples: usize, seed: u64) -> VerificationReport {
    stabilizer_report("stabilizer property", f, g.elements(), samples, seed)
}
