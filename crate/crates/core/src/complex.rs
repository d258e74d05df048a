//! Finite cell complexes of convex cells and the executable forms of cell
//! decomposition, restriction, skeleta, refinement, gluing and pullback.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::affine::AffineMap;
use crate::cell::ConvexCell;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::report::{CheckOutcome, VerificationReport};

/// The underlying set `|D|` of a complex: one cell, or a union of cells with
/// pairwise disjoint relative interiors (for instance the facets of a cube).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Space {
    Cell(ConvexCell),
    Union(Vec<ConvexCell>),
}

impl Space {
    pub fn pieces(&self) -> &[ConvexCell] {
        match self {
            Space::Cell(c) => std::slice::from_ref(c),
            Space::Union(v) => v,
        }
    }

    pub fn dim(&self) -> usize {
        self.pieces().iter().map(ConvexCell::dim).max().unwrap_or(0)
    }

    /// Whether `c` lies inside a single piece. Cells of a decomposition whose
    /// space is a union of member cells always do.
    pub fn contains_cell(&self, c: &ConvexCell) -> bool {
        self.pieces().iter().any(|p| p.contains_cell(c))
    }

    pub fn image(&self, map: &AffineMap) -> Space {
        match self {
            Space::Cell(c) => Space::Cell(c.image(map)),
            Space::Union(v) => {
                let mut pieces: Vec<ConvexCell> = v.iter().map(|c| c.image(map)).collect();
                pieces.sort();
                Space::Union(pieces)
            }
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Cell(c) => write!(f, "{c}"),
            Space::Union(v) => write!(f, "union of {} cells", v.len()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    ambient_dim: usize,
    cells: Vec<ConvexCell>,
    space: Space,
}

impl CellComplex {
    /// Cells are stored in canonical order without duplicates.
    pub fn new(space: Space, cells: impl IntoIterator<Item = ConvexCell>) -> Self {
        let ambient_dim = space.pieces().first().map(ConvexCell::ambient_dim).unwrap_or(0);
        let cells: Vec<ConvexCell> = cells.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        assert!(cells.iter().all(|c| c.ambient_dim() == ambient_dim), "ambient dimension mismatch");
        Self { ambient_dim, cells, space }
    }

    /// The complex of all faces of a single cell.
    pub fn faces_of(cell: &ConvexCell) -> Self {
        let mut all = BTreeSet::new();
        let mut frontier = vec![cell.clone()];
        while let Some(c) = frontier.pop() {
            if c.dim() > 0 {
                for f in c.facet_cells().expect("positive dimension") {
                    if !all.contains(&f) {
                        frontier.push(f);
                    }
                }
            }
            all.insert(c);
        }
        Self::new(Space::Cell(cell.clone()), all)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cells(&self) -> &[ConvexCell] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<ConvexCell> {
        self.cells
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, c: &ConvexCell) -> bool {
        self.cells.binary_search(c).is_ok()
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(ConvexCell::dim).max().unwrap_or(0)
    }

    pub fn cells_of_dim(&self, k: usize) -> impl Iterator<Item = &ConvexCell> {
        self.cells.iter().filter(move |c| c.dim() == k)
    }

    pub fn top_cells(&self) -> Vec<&ConvexCell> {
        let d = self.dim();
        self.cells_of_dim(d).collect()
    }

    /// Number of cells in each dimension `0..=dim`.
    pub fn counts_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0; self.dim() + 1];
        for c in &self.cells {
            counts[c.dim()] += 1;
        }
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts_by_dim().iter().enumerate().map(|(k, &n)| if k % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }

    pub(crate) fn index(&self) -> CellIndex<'_> {
        CellIndex::new(&self.cells)
    }

    /// Cells of the complex contained in `c`.
    pub fn cells_within<'a>(&'a self, c: &'a ConvexCell) -> impl Iterator<Item = &'a ConvexCell> + 'a {
        self.cells.iter().filter(move |x| c.contains_cell(x))
    }
}

/// Sort-by-first-coordinate index used to prune pairwise and containment
/// queries.
pub(crate) struct CellIndex<'a> {
    cells: &'a [ConvexCell],
    order: Vec<usize>,
}

fn key(c: &ConvexCell) -> Rational {
    c.lower().first().cloned().unwrap_or_else(Rational::zero)
}

fn key_hi(c: &ConvexCell) -> Rational {
    c.upper().first().cloned().unwrap_or_else(Rational::zero)
}

impl<'a> CellIndex<'a> {
    pub(crate) fn new(cells: &'a [ConvexCell]) -> Self {
        let mut order: Vec<usize> = (0..cells.len()).collect();
        order.sort_by(|&a, &b| key(&cells[a]).cmp(&key(&cells[b])));
        Self { cells, order }
    }

    /// Indices of cells contained in `c`.
    pub(crate) fn within(&self, c: &ConvexCell) -> Vec<usize> {
        let (lo, hi) = (key(c), key_hi(c));
        let start = self.order.partition_point(|&i| key(&self.cells[i]) < lo);
        self.order[start..]
            .iter()
            .take_while(|&&i| key(&self.cells[i]) <= hi)
            .copied()
            .filter(|&i| c.contains_cell(&self.cells[i]))
            .collect()
    }

    /// Unordered pairs `(i, j)` of distinct cells with overlapping bounding
    /// boxes, filtered by `keep`, in a deterministic order.
    pub(crate) fn overlapping_pairs<F>(&self, keep: F) -> Vec<(usize, usize)>
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        let order = &self.order;
        let cells = self.cells;
        (0..order.len())
            .into_par_iter()
            .flat_map_iter(|a| {
                let i = order[a];
                let hi = key_hi(&cells[i]);
                order[a + 1..]
                    .iter()
                    .take_while(move |&&j| key(&cells[j]) <= hi)
                    .filter(move |&&j| cells[i].bbox_overlaps(&cells[j]))
                    .map(move |&j| (i.min(j), i.max(j)))
                    .collect::<Vec<_>>()
            })
            .filter(|&(i, j)| keep(i, j))
            .collect()
    }
}

/// Whether `parts` (cells inside `whole`) cover `whole`, by comparing
/// volumes of the projections onto a chart of `whole`'s affine hull.
fn covers(whole: &ConvexCell, parts: &[&ConvexCell]) -> bool {
    if whole.dim() == 0 {
        return parts.contains(&whole);
    }
    let (total, expected) = chart_volumes(whole, parts);
    total == expected
}

/// Summed chart volume of the full-dimensional `parts`, and that of `whole`.
fn chart_volumes(whole: &ConvexCell, parts: &[&ConvexCell]) -> (Rational, Rational) {
    let chart = whole.chart();
    let total =
        parts.iter().filter(|p| p.dim() == whole.dim()).fold(Rational::zero(), |acc, p| acc + p.chart_volume(&chart));
    (total, whole.chart_volume(&chart))
}

/// Checks conditions (i) to (iv) of a cell decomposition of `D.space()`.
pub fn verify_cell_decomposition(d: &CellComplex) -> VerificationReport {
    let mut report = VerificationReport::new("cell decomposition");
    let cells = &d.cells;
    let index = d.index();

    let mut union = CheckOutcome::new("(i) union of cells equals the space");
    let outside: Vec<Option<String>> = cells
        .par_iter()
        .map(|c| (!d.space.contains_cell(c)).then(|| format!("{c} is not contained in the space")))
        .collect();
    for w in outside {
        union.record(w.is_none(), || w.unwrap());
    }
    for piece in d.space.pieces() {
        let inside: Vec<&ConvexCell> = index.within(piece).into_iter().map(|i| &cells[i]).collect();
        union.record(covers(piece, &inside), || {
            let (total, expected) = chart_volumes(piece, &inside);
            format!("cells inside {piece} have total volume {total}, not {expected}")
        });
    }
    report.push(union);

    let pairs = index.overlapping_pairs(|i, j| cells[i].relints_meet(&cells[j]));
    let mut disjoint = CheckOutcome::from_results(
        "(ii) cell-interiors are pairwise disjoint",
        pairs.iter().map(|&(i, j)| Some(format!("relative interiors of {} and {} meet", cells[i], cells[j]))),
    );
    disjoint.checked = cells.len();
    report.push(disjoint);

    let boundary: Vec<Vec<Option<String>>> = cells
        .par_iter()
        .map(|tau| {
            if tau.dim() == 0 {
                return Vec::new();
            }
            tau.facet_cells()
                .expect("positive dimension")
                .into_iter()
                .map(|f| {
                    let inside: Vec<&ConvexCell> = index.within(&f).into_iter().map(|i| &cells[i]).collect();
                    (!covers(&f, &inside)).then(|| format!("facet {f} of {tau} is not a union of cells"))
                })
                .collect()
        })
        .collect();
    report
        .push(CheckOutcome::from_results("(iii) cell-boundaries are unions of cells", boundary.into_iter().flatten()));

    let mut finite = CheckOutcome::new("(iv) local finiteness");
    finite.record(true, String::new);
    report.push(finite);
    report
}

/// `D|_S`: the cells of `D` contained in `S`. Fails unless `S` is a union of cells.
pub fn restrict(d: &CellComplex, s: &Space) -> Result<CellComplex> {
    let sub: Vec<ConvexCell> = d.cells.iter().filter(|c| s.contains_cell(c)).cloned().collect();
    for piece in s.pieces() {
        let inside: Vec<&ConvexCell> = sub.iter().filter(|c| piece.contains_cell(c)).collect();
        if !covers(piece, &inside) {
            return Err(Error::NotAUnionOfCells(piece.to_string()));
        }
    }
    Ok(CellComplex::new(s.clone(), sub))
}

/// Cells of dimension at most `k`.
pub fn skeleton(d: &CellComplex, k: usize) -> Vec<ConvexCell> {
    d.cells.iter().filter(|c| c.dim() <= k).cloned().collect()
}

/// Checks that `d1` refines `d0`.
pub fn verify_refinement(d1: &CellComplex, d0: &CellComplex) -> VerificationReport {
    let mut report = VerificationReport::new("refinement");
    let index1 = d1.index();
    let inside: Vec<Option<String>> = d1
        .cells
        .par_iter()
        .map(|s| {
            let found = d0.cells.iter().any(|t| t.contains_cell(s));
            (!found).then(|| format!("{s} lies in no cell of the coarser complex"))
        })
        .collect();
    report.push(CheckOutcome::from_results("(i) every cell lies in a coarser cell", inside));
    let unions: Vec<Option<String>> = d0
        .cells
        .par_iter()
        .map(|t| {
            let parts: Vec<&ConvexCell> = index1.within(t).into_iter().map(|i| &d1.cells[i]).collect();
            (!covers(t, &parts)).then(|| format!("{t} is not the union of the finer cells inside it"))
        })
        .collect();
    report.push(CheckOutcome::from_results("(ii) every coarser cell is a union of finer cells", unions));
    report
}

/// The cell `τ` of `d0` with `relint(σ) ⊆ relint(τ)`.
pub fn minimal_containing_cell(d0: &CellComplex, sigma: &ConvexCell) -> Result<ConvexCell> {
    let z = sigma.relative_interior_point();
    d0.cells
        .iter()
        .find(|t| t.relint_contains(&z) && t.contains_cell(sigma))
        .cloned()
        .ok_or_else(|| Error::NoContainingCell(sigma.to_string()))
}

/// Glues decompositions `per_cell[c]` of the cells `c` of `d` into one
/// refinement of `d`. Entries for faces may be omitted; they are then taken
/// from the restriction of any cell containing them. Every restriction to a
/// shared face must agree.
pub fn glue_refinements(d: &CellComplex, per_cell: &BTreeMap<ConvexCell, CellComplex>) -> Result<CellComplex> {
    let mut resolved: BTreeMap<ConvexCell, Vec<ConvexCell>> =
        per_cell.iter().map(|(c, k)| (c.clone(), k.cells.clone())).collect();
    // Larger cells first, so faces inherit from a containing cell.
    let mut order: Vec<&ConvexCell> = d.cells.iter().collect();
    order.sort_by(|a, b| b.dim().cmp(&a.dim()).then_with(|| a.cmp(b)));
    for (pos, c) in order.iter().enumerate() {
        let Some(parts) = resolved.get(*c).cloned() else {
            continue;
        };
        for face in order[pos + 1..].iter().filter(|f| f.dim() < c.dim() && c.contains_cell(f)) {
            let restricted: Vec<ConvexCell> = parts.iter().filter(|p| face.contains_cell(p)).cloned().collect();
            match resolved.get(*face) {
                Some(existing) if *existing != restricted => {
                    return Err(Error::IncompatibleOnSharedFace { cell: c.to_string(), face: face.to_string() });
                }
                Some(_) => {}
                None => {
                    resolved.insert((*face).clone(), restricted);
                }
            }
        }
    }
    let mut all = BTreeSet::new();
    for c in &d.cells {
        match resolved.get(c) {
            Some(parts) => all.extend(parts.iter().cloned()),
            None => return Err(Error::NotFound(format!("no decomposition given for {c}"))),
        }
    }
    Ok(CellComplex::new(d.space.clone(), all))
}

/// `φ*(D) = {φ⁻¹(c) : c ∈ D}`.
pub fn pullback(phi: &AffineMap, d: &CellComplex) -> Result<CellComplex> {
    let inv = phi.inverse().ok_or(Error::NonInvertible)?;
    let cells: Vec<ConvexCell> = d.cells.par_iter().map(|c| c.image(&inv)).collect();
    Ok(CellComplex::new(d.space.image(&inv), cells))
}

/// For distinct meeting cells: one lies in the other's boundary, or their
/// intersection lies in both boundaries and is a union of member cells of
/// smaller dimension.
pub fn check_face_intersections(d: &CellComplex) -> VerificationReport {
    let cells = &d.cells;
    let index = d.index();
    let in_boundary = |inner: &ConvexCell, outer: &ConvexCell| {
        outer.dim() > 0 && outer.facet_cells().unwrap().iter().any(|f| f.contains_cell(inner))
    };
    let pairs = index.overlapping_pairs(|_, _| true);
    let results: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (s, t) = (&cells[i], &cells[j]);
            let p = s.intersect(t)?;
            if in_boundary(s, t) || in_boundary(t, s) {
                return None;
            }
            let low = s.dim().min(t.dim());
            let inside: Vec<&ConvexCell> =
                index.within(&p).into_iter().map(|k| &cells[k]).filter(|c| c.dim() < low).collect();
            let ok = p.dim() < low && in_boundary(&p, s) && in_boundary(&p, t) && covers(&p, &inside);
            (!ok).then(|| format!("{s} ∩ {t} = {p} violates the face condition"))
        })
        .collect();
    let mut report = VerificationReport::new("face intersections");
    report.push(CheckOutcome::from_results("meeting cells intersect in boundary cells", results));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::point::Point;
    use crate::rational::{int, rat};

    fn seg(a: Rational, b: Rational) -> ConvexCell {
        ConvexCell::axis_box(&[a], &[b])
    }

    fn pt(a: Rational) -> ConvexCell {
        ConvexCell::point(Point::new(vec![a]))
    }

    fn interval() -> Space {
        Space::Cell(seg(int(-1), int(1)))
    }

    fn k1() -> CellComplex {
        CellComplex::new(interval(), [pt(int(-1)), pt(int(0)), pt(int(1)), seg(int(-1), int(0)), seg(int(0), int(1))])
    }

    fn cube1() -> CellComplex {
        CellComplex::faces_of(&seg(int(-1), int(1)))
    }

    #[test]
    fn k1_is_a_decomposition() {
        let r = verify_cell_decomposition(&k1());
        assert!(r.passed(), "{r}");
        assert!(check_face_intersections(&k1()).passed());
        assert_eq!(k1().euler_characteristic(), 1);
    }

    #[test]
    fn missing_vertices_fail_boundary_condition() {
        let d = CellComplex::new(interval(), [seg(int(-1), int(0)), seg(int(0), int(1))]);
        let r = verify_cell_decomposition(&d);
        assert!(r.check("(i)").unwrap().passed);
        assert!(!r.check("(iii)").unwrap().passed);
    }

    #[test]
    fn overlap_fails_disjointness() {
        let d = CellComplex::new(interval(), [seg(int(-1), int(1)), seg(int(0), int(1))]);
        let r = verify_cell_decomposition(&d);
        assert!(!r.check("(ii)").unwrap().passed);
    }

    #[test]
    fn restriction_and_skeleton() {
        let half = Space::Cell(seg(int(0), int(1)));
        let r = restrict(&k1(), &half).unwrap();
        assert_eq!(r.cells(), &[pt(int(0)), pt(int(1)), seg(int(0), int(1))]);
        assert!(verify_cell_decomposition(&r).passed());
        assert_eq!(restrict(&k1(), k1().space()).unwrap(), k1());
        let bad = Space::Cell(seg(rat(1, 2), int(1)));
        assert!(matches!(restrict(&k1(), &bad), Err(Error::NotAUnionOfCells(_))));
        assert_eq!(skeleton(&k1(), 0), vec![pt(int(-1)), pt(int(0)), pt(int(1))]);
        assert_eq!(skeleton(&k1(), 1).len(), 5);
    }

    #[test]
    fn refinements() {
        assert!(verify_refinement(&k1(), &cube1()).passed());
        assert!(verify_refinement(&k1(), &k1()).passed());
        let r = verify_refinement(&cube1(), &k1());
        assert!(!r.check("(i)").unwrap().passed);
    }

    #[test]
    fn minimal_cells() {
        let c = cube1();
        assert_eq!(minimal_containing_cell(&c, &pt(int(0))).unwrap(), seg(int(-1), int(1)));
        assert_eq!(minimal_containing_cell(&c, &pt(int(1))).unwrap(), pt(int(1)));
        assert_eq!(minimal_containing_cell(&c, &seg(int(0), int(1))).unwrap(), seg(int(-1), int(1)));
        assert!(minimal_containing_cell(&c, &pt(int(3))).is_err());
    }

    #[test]
    fn pullback_by_scaling() {
        let big = CellComplex::faces_of(&seg(int(-2), int(2)));
        let p = pullback(&AffineMap::scaling(1, &int(2)), &big).unwrap();
        assert_eq!(p, cube1());
        assert_eq!(pullback(&AffineMap::identity(1), &k1()).unwrap(), k1());
        let singular = AffineMap::scaling(1, &int(0));
        assert_eq!(pullback(&singular, &k1()).unwrap_err(), Error::NonInvertible);
    }

    #[test]
    fn identity_glue() {
        let d = k1();
        let per: BTreeMap<ConvexCell, CellComplex> =
            d.cells().iter().map(|c| (c.clone(), CellComplex::faces_of(c))).collect();
        assert_eq!(glue_refinements(&d, &per).unwrap(), d);
    }
}
