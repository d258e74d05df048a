//! Compact convex rational polytopes ("cells").
//!
//! A [`ConvexCell`] keeps both descriptions of a polytope: the sorted list of
//! its extreme points, which is the identity of the cell, and an irredundant
//! inequality description (affine-hull equations plus one inequality per
//! facet, each with the set of vertices it is tight on). All predicates are
//! decided exactly.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::isometry::AffineSignedIsometry;
use crate::linalg::{self, Vector};
use crate::point::Point;
use crate::rational::{int, Rational};

/// `normal · x >= offset`. When stored as an equation it reads `normal · x == offset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Inequality {
    normal: Vec<Rational>,
    offset: Rational,
}

impl Inequality {
    pub fn new(normal: Vec<Rational>, offset: Rational) -> Self {
        Self { normal, offset }
    }

    /// Integer shorthand for tests and constructions: `coeffs · x >= offset`.
    pub fn ge(coeffs: &[i64], offset: i64) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect(), int(offset))
    }

    pub fn normal(&self) -> &[Rational] {
        &self.normal
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// `normal · x - offset`.
    pub fn slack(&self, x: &Point) -> Rational {
        linalg::dot(&self.normal, x.coords()) - &self.offset
    }

    pub fn is_satisfied(&self, x: &Point) -> bool {
        !self.slack(x).is_negative()
    }

    pub fn negated(&self) -> Self {
        Self::new(self.normal.iter().map(|c| -c).collect(), -&self.offset)
    }

    /// Scaled to primitive integer coefficients with the same orientation.
    pub fn normalized(&self) -> Self {
        let mut lcm = BigInt::one();
        for c in self.normal.iter().chain(std::iter::once(&self.offset)) {
            lcm = lcm.lcm(&c.denom());
        }
        let scaled: Vec<BigInt> = self
            .normal
            .iter()
            .chain(std::iter::once(&self.offset))
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return self.clone();
        }
        let mut vals = scaled.into_iter().map(|x| Rational::from_integer(x / &g));
        let normal = (&mut vals).take(self.normal.len()).collect();
        let offset = vals.next().unwrap();
        Self { normal, offset }
    }

    /// Normalized with the first nonzero normal coefficient positive. Used for
    /// equations, whose orientation carries no meaning.
    fn normalized_equation(&self) -> Self {
        let n = self.normalized();
        match n.normal.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => n.negated(),
            _ => n,
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .normal
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}·x{}", i + 1))
            .collect();
        write!(f, "{} >= {}", if terms.is_empty() { "0".into() } else { terms.join(" + ") }, self.offset)
    }
}

/// A facet inequality together with the indices of the vertices it is tight on.
#[derive(Clone, Debug)]
pub struct Facet {
    pub inequality: Inequality,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ConvexCell {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<Point>,
    equalities: Vec<Inequality>,
    facets: Vec<Facet>,
    lower: Vec<Rational>,
    upper: Vec<Rational>,
}

/// Result of [`cone`]: the hull of apex and base, and whether the apex lay in
/// the affine hull of the base (so no dimension was gained).
#[derive(Clone, Debug)]
pub struct Cone {
    pub cell: ConvexCell,
    pub degenerate: bool,
}

impl PartialEq for ConvexCell {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for ConvexCell {}

impl Hash for ConvexCell {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
    }
}

impl PartialOrd for ConvexCell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical cell order: by dimension, then by vertex list.
impl Ord for ConvexCell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim.cmp(&other.dim).then_with(|| self.vertices.cmp(&other.vertices))
    }
}

impl fmt::Display for ConvexCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{{}}}", self.vertices.iter().map(|v| v.to_string()).join(", "))
    }
}

/// Vertices of `{x : eqs·x = b, ineqs·x >= b}`, assuming it is bounded.
/// Exhaustive over square subsystems of the inequalities restricted to the
/// affine subspace cut out by the equations.
fn enumerate_vertices(n: usize, eqs: &[Inequality], ineqs: &[Inequality]) -> Vec<Point> {
    let eq_rows: Vec<Vector> = eqs.iter().map(|e| e.normal.clone()).collect();
    let eq_rhs: Vec<Rational> = eqs.iter().map(|e| e.offset.clone()).collect();
    let Some((x0, basis)) = linalg::solve_affine(&eq_rows, &eq_rhs, n) else {
        return Vec::new();
    };
    let k = basis.len();
    let x0 = Point::new(x0);
    let mut rows: Vec<(Vector, Rational)> = Vec::with_capacity(ineqs.len());
    for ineq in ineqs {
        let coeffs: Vector = basis.iter().map(|b| linalg::dot(&ineq.normal, b)).collect();
        let rhs = ineq.offset.clone() - linalg::dot(&ineq.normal, x0.coords());
        if coeffs.iter().all(Zero::is_zero) {
            if rhs.is_positive() {
                return Vec::new();
            }
            continue;
        }
        rows.push((coeffs, rhs));
    }
    rows.sort();
    rows.dedup();
    let lift = |t: &[Rational]| {
        let mut x = x0.coords().to_vec();
        for (tj, b) in t.iter().zip(&basis) {
            if tj.is_zero() {
                continue;
            }
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += tj * bi;
            }
        }
        Point::new(x)
    };
    if k == 0 {
        return vec![x0];
    }
    let feasible = |t: &[Rational]| rows.iter().all(|(c, r)| !(linalg::dot(c, t) - r).is_negative());
    let mut found = BTreeSet::new();
    for subset in (0..rows.len()).combinations(k) {
        let a: Vec<&[Rational]> = subset.iter().map(|&i| rows[i].0.as_slice()).collect();
        let b: Vec<&Rational> = subset.iter().map(|&i| &rows[i].1).collect();
        if let Some(t) = linalg::solve_rows(&a, &b) {
            if feasible(&t) {
                found.insert(lift(&t));
            }
        }
    }
    found.into_iter().collect()
}

/// Whether `{x : a·x >= b}` (rank n) admits a nonzero recession direction.
fn has_recession_ray(n: usize, ineqs: &[Inequality]) -> bool {
    let rows: Vec<Vector> = ineqs.iter().map(|i| i.normal.clone()).collect();
    for subset in (0..rows.len()).combinations(n.saturating_sub(1)) {
        let sub: Vec<Vector> = subset.iter().map(|&i| rows[i].clone()).collect();
        let ns = linalg::nullspace(&sub, n);
        if ns.len() != 1 {
            continue;
        }
        let d = &ns[0];
        let vals: Vec<Rational> = rows.iter().map(|r| linalg::dot(r, d)).collect();
        if vals.iter().all(|v| !v.is_negative()) || vals.iter().all(|v| !v.is_positive()) {
            return true;
        }
    }
    false
}

impl ConvexCell {
    /// Builds the cell from its extreme points (sorted, distinct) and a list
    /// of valid inequalities that contains every facet-defining one.
    fn finalize(n: usize, vertices: Vec<Point>, candidates: &[Inequality]) -> Self {
        debug_assert!(!vertices.is_empty());
        let coords: Vec<Vector> = vertices.iter().map(|v| v.coords().to_vec()).collect();
        let dirs: Vec<Vector> = coords[1..].iter().map(|c| linalg::sub(c, &coords[0])).collect();
        let dim = linalg::rank(&dirs);
        let equalities: Vec<Inequality> = linalg::nullspace(&dirs, n)
            .into_iter()
            .map(|e| {
                let off = linalg::dot(&e, &coords[0]);
                Inequality::new(e, off).normalized_equation()
            })
            .collect();
        let mut facets: Vec<Facet> = Vec::new();
        if dim > 0 {
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for cand in candidates {
                let tight: Vec<usize> = (0..vertices.len()).filter(|&i| cand.slack(&vertices[i]).is_zero()).collect();
                if tight.len() == vertices.len() || tight.len() < dim || seen.contains(&tight) {
                    continue;
                }
                let pts: Vec<Vector> = tight.iter().map(|&i| coords[i].clone()).collect();
                if linalg::affine_dim(&pts) == Some(dim - 1) {
                    seen.insert(tight.clone());
                    facets.push(Facet { inequality: cand.normalized(), vertices: tight });
                }
            }
            facets.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        }
        let lower = (0..n).map(|i| vertices.iter().map(|v| &v[i]).min().unwrap().clone()).collect();
        let upper = (0..n).map(|i| vertices.iter().map(|v| &v[i]).max().unwrap().clone()).collect();
        Self { ambient_dim: n, dim, vertices, equalities, facets, lower, upper }
    }

    /// Canonical cell of an inequality system (`canonicalize`).
    pub fn from_hrep(n: usize, hrep: &[Inequality]) -> Result<Self> {
        for h in hrep {
            if h.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, got: h.dim() });
            }
        }
        let rows: Vec<Vector> = hrep.iter().map(|h| h.normal.clone()).collect();
        if linalg::rank(&rows) < n {
            // Nonempty means the set contains a line.
            let lineality: Vec<Inequality> =
                linalg::nullspace(&rows, n).into_iter().map(|d| Inequality::new(d, Rational::zero())).collect();
            return if enumerate_vertices(n, &lineality, hrep).is_empty() {
                Err(Error::EmptyCell)
            } else {
                Err(Error::Unbounded)
            };
        }
        let vertices = enumerate_vertices(n, &[], hrep);
        if vertices.is_empty() {
            return Err(Error::EmptyCell);
        }
        if has_recession_ray(n, hrep) {
            return Err(Error::Unbounded);
        }
        Ok(Self::finalize(n, vertices, hrep))
    }

    pub fn point(p: Point) -> Self {
        let n = p.dim();
        Self::finalize(n, vec![p], &[])
    }

    /// Convex hull of a nonempty point set.
    pub fn hull(points: &[Point]) -> Self {
        assert!(!points.is_empty(), "hull of an empty point set");
        let n = points[0].dim();
        let pts: Vec<Point> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if pts.len() == 1 {
            return Self::point(pts[0].clone());
        }
        let mut dirs: Vec<Vector> = pts[1..].iter().map(|p| p.sub(&pts[0]).into_coords()).collect();
        let chart = linalg::rref(&mut dirs, n);
        let k = chart.len();
        let proj: Vec<Vector> = pts.iter().map(|p| chart.iter().map(|&c| p[c].clone()).collect()).collect();
        let lift = |a: &[Rational], b: Rational| {
            let mut normal = vec![Rational::zero(); n];
            for (j, &c) in chart.iter().enumerate() {
                normal[c] = a[j].clone();
            }
            Inequality::new(normal, b).normalized()
        };
        let mut candidates: BTreeSet<Inequality> = BTreeSet::new();
        if k == 1 {
            let lo = proj.iter().map(|p| &p[0]).min().unwrap().clone();
            let hi = proj.iter().map(|p| &p[0]).max().unwrap().clone();
            candidates.insert(lift(&[Rational::one()], lo));
            candidates.insert(lift(&[-Rational::one()], -hi));
        } else {
            for subset in (0..proj.len()).combinations(k) {
                let base = &proj[subset[0]];
                let rows: Vec<Vector> = subset[1..].iter().map(|&i| linalg::sub(&proj[i], base)).collect();
                let ns = linalg::nullspace(&rows, k);
                if ns.len() != 1 {
                    continue;
                }
                let a = &ns[0];
                let b = linalg::dot(a, base);
                let sides: Vec<Rational> = proj.iter().map(|p| linalg::dot(a, p) - &b).collect();
                if sides.iter().all(|s| !s.is_negative()) {
                    candidates.insert(lift(a, b));
                } else if sides.iter().all(|s| !s.is_positive()) {
                    let neg: Vector = a.iter().map(|x| -x).collect();
                    candidates.insert(lift(&neg, -b));
                }
            }
        }
        let candidates: Vec<Inequality> = candidates.into_iter().collect();
        // Extreme points are those where the tight candidate normals span the chart.
        let extreme: Vec<Point> = pts
            .iter()
            .filter(|p| {
                let tight: Vec<Vector> = candidates
                    .iter()
                    .filter(|c| c.slack(p).is_zero())
                    .map(|c| chart.iter().map(|&i| c.normal[i].clone()).collect())
                    .collect();
                linalg::rank(&tight) == k
            })
            .cloned()
            .collect();
        Self::finalize(n, extreme, &candidates)
    }

    /// The axis-parallel box `∏ [lower_i, upper_i]`; degenerate sides allowed.
    pub fn axis_box(lower: &[Rational], upper: &[Rational]) -> Self {
        let n = lower.len();
        let choices: Vec<Vec<Rational>> =
            (0..n)
                .map(|i| {
                    if lower[i] == upper[i] {
                        vec![lower[i].clone()]
                    } else {
                        vec![lower[i].clone(), upper[i].clone()]
                    }
                })
                .collect();
        let vertices: Vec<Point> = choices
            .into_iter()
            .multi_cartesian_product()
            .map(Point::new)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let vertices = if n == 0 { vec![Point::origin(0)] } else { vertices };
        let mut cands = Vec::new();
        for i in 0..n {
            if lower[i] != upper[i] {
                let mut e = vec![Rational::zero(); n];
                e[i] = Rational::one();
                cands.push(Inequality::new(e.clone(), lower[i].clone()));
                e[i] = -Rational::one();
                cands.push(Inequality::new(e, -upper[i].clone()));
            }
        }
        Self::finalize(n, vertices, &cands)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn equalities(&self) -> &[Inequality] {
        &self.equalities
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    /// Irredundant inequality list: each equation as a pair, then the facets.
    pub fn hrep(&self) -> Vec<Inequality> {
        let mut out = Vec::with_capacity(2 * self.equalities.len() + self.facets.len());
        for e in &self.equalities {
            out.push(e.clone());
            out.push(e.negated());
        }
        out.extend(self.facets.iter().map(|f| f.inequality.clone()));
        out
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dim + 1
    }

    pub fn bbox_overlaps(&self, other: &ConvexCell) -> bool {
        (0..self.ambient_dim).all(|i| self.lower[i] <= other.upper[i] && other.lower[i] <= self.upper[i])
    }

    fn bbox_contains(&self, other: &ConvexCell) -> bool {
        (0..self.ambient_dim).all(|i| self.lower[i] <= other.lower[i] && other.upper[i] <= self.upper[i])
    }

    pub fn in_affine_hull(&self, p: &Point) -> bool {
        self.equalities.iter().all(|e| e.slack(p).is_zero())
    }

    pub fn contains_point(&self, p: &Point) -> bool {
        (0..self.ambient_dim).all(|i| self.lower[i] <= p[i] && p[i] <= self.upper[i])
            && self.in_affine_hull(p)
            && self.facets.iter().all(|f| f.inequality.is_satisfied(p))
    }

    /// Exact relative-interior membership: in the affine hull and strictly
    /// inside every facet inequality.
    pub fn relint_contains(&self, p: &Point) -> bool {
        self.in_affine_hull(p) && self.facets.iter().all(|f| f.inequality.slack(p).is_positive())
    }

    pub fn contains_cell(&self, other: &ConvexCell) -> bool {
        self.bbox_contains(other) && other.vertices.iter().all(|v| self.contains_point(v))
    }

    /// Vertex barycenter; always in the relative interior.
    pub fn relative_interior_point(&self) -> Point {
        Point::barycenter(&self.vertices)
    }

    pub fn intersect(&self, other: &ConvexCell) -> Option<ConvexCell> {
        assert_eq!(self.ambient_dim, other.ambient_dim, "ambient dimension mismatch");
        if !self.bbox_overlaps(other) {
            return None;
        }
        if self.contains_cell(other) {
            return Some(other.clone());
        }
        if other.contains_cell(self) {
            return Some(self.clone());
        }
        let eqs: Vec<Inequality> = self.equalities.iter().chain(&other.equalities).cloned().collect();
        let ineqs: Vec<Inequality> = self.facets.iter().chain(&other.facets).map(|f| f.inequality.clone()).collect();
        let vertices = enumerate_vertices(self.ambient_dim, &eqs, &ineqs);
        if vertices.is_empty() {
            return None;
        }
        Some(Self::finalize(self.ambient_dim, vertices, &ineqs))
    }

    /// Whether the relative interiors of the two cells meet.
    pub fn relints_meet(&self, other: &ConvexCell) -> bool {
        if !self.bbox_overlaps(other) {
            return false;
        }
        if self == other {
            return true;
        }
        if self.separated_from(other) || other.separated_from(self) {
            return false;
        }
        match self.intersect(other) {
            None => false,
            Some(p) => {
                let z = p.relative_interior_point();
                self.relint_contains(&z) && other.relint_contains(&z)
            }
        }
    }

    /// Sufficient test for `relint(self) ∩ other = ∅`: a facet or equation of
    /// `self` has all of `other` on its far side.
    fn separated_from(&self, other: &ConvexCell) -> bool {
        for e in &self.equalities {
            let s: Vec<Rational> = other.vertices.iter().map(|v| e.slack(v)).collect();
            if s.iter().all(|x| x.is_positive()) || s.iter().all(|x| x.is_negative()) {
                return true;
            }
        }
        self.facets.iter().any(|f| other.vertices.iter().all(|v| !f.inequality.slack(v).is_positive()))
    }

    pub fn apply_isometry(&self, g: &AffineSignedIsometry) -> ConvexCell {
        assert_eq!(g.ambient_dim(), self.ambient_dim, "ambient dimension mismatch");
        let mut vertices: Vec<Point> = self.vertices.iter().map(|v| g.apply(v)).collect();
        vertices.sort();
        // L is orthogonal, so normals transform by L itself.
        let push = |ineq: &Inequality| {
            let normal = g.apply_linear(&Point::new(ineq.normal.clone()));
            let offset = &ineq.offset + linalg::dot(normal.coords(), g.translation_part().coords());
            Inequality::new(normal.into_coords(), offset)
        };
        let cands: Vec<Inequality> = self.facets.iter().map(|f| push(&f.inequality)).collect();
        Self::finalize(self.ambient_dim, vertices, &cands)
    }

    /// Image under an affine map. Invertible maps keep the combinatorics; a
    /// singular map falls back to the hull of the image points.
    pub fn image(&self, map: &AffineMap) -> ConvexCell {
        assert_eq!(map.ambient_dim(), self.ambient_dim, "ambient dimension mismatch");
        let pts: Vec<Point> = self.vertices.iter().map(|v| map.apply(v)).collect();
        match map.inverse_transpose() {
            Some(inv_t) => {
                let mut vertices = pts;
                vertices.sort();
                let cands: Vec<Inequality> = self
                    .facets
                    .iter()
                    .map(|f| {
                        let normal: Vector = inv_t.iter().map(|row| linalg::dot(row, &f.inequality.normal)).collect();
                        let offset = &f.inequality.offset + linalg::dot(&normal, map.translation().coords());
                        Inequality::new(normal, offset)
                    })
                    .collect();
                Self::finalize(self.ambient_dim, vertices, &cands)
            }
            None => Self::hull(&pts),
        }
    }

    /// The same cell viewed in `R^n ⊇ R^ambient` by zero padding.
    pub fn embed(&self, n: usize) -> ConvexCell {
        if n == self.ambient_dim {
            return self.clone();
        }
        assert!(n > self.ambient_dim, "cannot embed into a smaller space");
        let vertices: Vec<Point> = self.vertices.iter().map(|v| v.embed(n)).collect();
        let cands: Vec<Inequality> = self
            .facets
            .iter()
            .map(|f| {
                let mut normal = f.inequality.normal.clone();
                normal.resize(n, Rational::zero());
                Inequality::new(normal, f.inequality.offset.clone())
            })
            .collect();
        Self::finalize(n, vertices, &cands)
    }

    /// The facets as cells (`cell_boundary_facets`); their union is the
    /// cell-boundary.
    pub fn facet_cells(&self) -> Result<Vec<ConvexCell>> {
        if self.dim == 0 {
            return Err(Error::ZeroDimensional);
        }
        Ok(self.facets.iter().map(|f| self.face_from_indices(&f.vertices)).collect())
    }

    fn face_from_indices(&self, idx: &[usize]) -> ConvexCell {
        let verts: Vec<Point> = idx.iter().map(|&i| self.vertices[i].clone()).collect();
        let cands: Vec<Inequality> = self.facets.iter().map(|f| f.inequality.clone()).collect();
        Self::finalize(self.ambient_dim, verts, &cands)
    }

    /// Pulling triangulation from the first vertex.
    pub fn simplices(&self) -> Vec<Vec<Point>> {
        if self.is_simplex() {
            return vec![self.vertices.clone()];
        }
        let apex = &self.vertices[0];
        let mut out = Vec::new();
        for f in &self.facets {
            if f.vertices.contains(&0) {
                continue;
            }
            for s in self.face_from_indices(&f.vertices).simplices() {
                let mut simplex = Vec::with_capacity(s.len() + 1);
                simplex.push(apex.clone());
                simplex.extend(s);
                out.push(simplex);
            }
        }
        out
    }

    /// Coordinates onto which the affine hull projects bijectively.
    pub fn chart(&self) -> Vec<usize> {
        let mut dirs: Vec<Vector> = self.vertices[1..].iter().map(|v| v.sub(&self.vertices[0]).into_coords()).collect();
        linalg::rref(&mut dirs, self.ambient_dim)
    }

    /// Volume of the projection onto the given coordinates. All cells in one
    /// affine flat share a chart, so these values add up consistently.
    pub fn chart_volume(&self, chart: &[usize]) -> Rational {
        let k = chart.len();
        if k == 0 {
            return Rational::one();
        }
        if self.dim != k {
            return Rational::zero();
        }
        let total = self.simplices().iter().fold(Rational::zero(), |acc, s| {
            let m: Vec<Vector> = s[1..].iter().map(|p| chart.iter().map(|&c| &p[c] - &s[0][c]).collect()).collect();
            acc + linalg::determinant(&m).abs()
        });
        total / factorial(k)
    }

    /// Exact `k`-volume with `k = dim`. Lower-dimensional cells whose volume
    /// is irrational (a tilted segment of length √2, say) are reported as such.
    pub fn volume(&self, k: usize) -> Result<Rational> {
        if k != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: k });
        }
        if k == 0 {
            return Ok(Rational::one());
        }
        let chart = self.chart();
        let base = self.chart_volume(&chart);
        if k == self.ambient_dim {
            return Ok(base);
        }
        // Volume scales from the chart projection by sqrt(det(B Bᵀ)) / |det(B_chart)|.
        let b = self.direction_basis();
        let gram: Vec<Vector> = b.iter().map(|r| b.iter().map(|s| linalg::dot(r, s)).collect()).collect();
        let proj: Vec<Vector> = b.iter().map(|r| chart.iter().map(|&c| r[c].clone()).collect()).collect();
        let dp = linalg::determinant(&proj);
        let ratio = linalg::determinant(&gram) / (&dp * &dp);
        let squared = &base * &base * &ratio;
        linalg::exact_sqrt(&ratio)
            .map(|f| base * f)
            .ok_or_else(|| Error::IrrationalVolume { dim: k, squared: squared.to_string() })
    }

    fn direction_basis(&self) -> Vec<Vector> {
        let mut basis: Vec<Vector> = Vec::new();
        for v in &self.vertices[1..] {
            let d = v.sub(&self.vertices[0]).into_coords();
            let mut trial = basis.clone();
            trial.push(d.clone());
            if linalg::rank(&trial) > basis.len() {
                basis.push(d);
            }
            if basis.len() == self.dim {
                break;
            }
        }
        basis
    }
}

fn factorial(k: usize) -> Rational {
    (1..=k as i64).fold(Rational::one(), |acc, i| acc * int(i))
}

/// `canonicalize`: exact vertex description and dimension of an H-polytope.
pub fn canonicalize(n: usize, hrep: &[Inequality]) -> Result<ConvexCell> {
    ConvexCell::from_hrep(n, hrep)
}

pub fn intersect(a: &ConvexCell, b: &ConvexCell) -> Option<ConvexCell> {
    a.intersect(b)
}

pub fn apply_isometry(g: &AffineSignedIsometry, c: &ConvexCell) -> ConvexCell {
    c.apply_isometry(g)
}

/// `Cone(apex, base) = {apex + t (y - apex) : y ∈ base, t ∈ [0, 1]}`.
pub fn cone(apex: &Point, base: &ConvexCell) -> Cone {
    let degenerate = base.in_affine_hull(apex);
    let mut pts = base.vertices.clone();
    pts.push(apex.clone());
    Cone { cell: ConvexCell::hull(&pts), degenerate }
}

pub fn relative_interior_point(c: &ConvexCell) -> Point {
    c.relative_interior_point()
}

pub fn cell_boundary_facets(c: &ConvexCell) -> Result<Vec<ConvexCell>> {
    c.facet_cells()
}

pub fn volume(c: &ConvexCell, k: usize) -> Result<Rational> {
    c.volume(k)
}
