use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::affine::AffineMap;
use crate::cell::ConvexCell;
use crate::complex::{glue_refinements, pullback, CellComplex, Space};
use crate::error::{Error, Result};
use crate::orthotope::Orthotope;
use crate::point::Point;
use crate::rational::{int, Rational};

use super::halfspace::FundamentalSubset;

/// Largest cube dimension the constructions accept.
pub const MAX_DIM: usize = 4;

fn check_dim(d: usize) -> Result<()> {
    if d > MAX_DIM {
        return Err(Error::DimensionOutOfRange { dim: d, max: MAX_DIM });
    }
    Ok(())
}

/// `K°_d` in `R^d`: all intersections of fundamental subsets, obtained from
/// the minimal ones by closing under pairwise intersection. `K°_0 = {{0}}`.
pub fn build_ko(d: usize) -> Result<Vec<ConvexCell>> {
    check_dim(d)?;
    if d == 0 {
        return Ok(vec![ConvexCell::point(Point::origin(0))]);
    }
    let seeds: BTreeSet<ConvexCell> = FundamentalSubset::minimal(d).par_iter().map(|s| s.cell(d)).collect();
    let mut cells: Vec<ConvexCell> = seeds.into_iter().collect();
    let mut frontier = cells.clone();
    // Each round intersects the newest cells with everything known so far.
    while !frontier.is_empty() {
        let known: BTreeSet<ConvexCell> = cells.iter().cloned().collect();
        let found: BTreeSet<ConvexCell> = frontier
            .par_iter()
            .flat_map_iter(|a| cells.iter().filter_map(move |b| a.intersect(b)).collect::<Vec<_>>())
            .filter(|c| !known.contains(c))
            .collect();
        frontier = found.into_iter().collect();
        cells.extend(frontier.iter().cloned());
    }
    cells.sort();
    Ok(cells)
}

/// Conformal affine map carrying `I^k × {0}` onto the face `face`
/// (`k = dim face`): the unit axes go to the active axes of the face in
/// order, scaled by half the side length, and the origin to the center.
fn face_transport(face: &Orthotope) -> AffineMap {
    let n = face.ambient_dim();
    let active = face.active_axes();
    let half = active.first().map(|&i| face.sides()[i].clone() / int(2)).unwrap_or_else(Rational::one);
    let mut targets = active.clone();
    targets.extend((0..n).filter(|i| !active.contains(i)));
    let mut m = vec![vec![Rational::zero(); n]; n];
    for (j, &t) in targets.iter().enumerate() {
        m[t][j] = half.clone();
    }
    AffineMap::new(m, face.center())
}

fn cube_of(d: usize, c: &ConvexCell) -> Result<Orthotope> {
    let o = Orthotope::from_cell(c).map_err(|_| Error::NotACube(c.to_string()))?;
    if o.dim() != d || !o.is_cube() {
        return Err(Error::NotACube(c.to_string()));
    }
    check_dim(d)?;
    Ok(o)
}

/// Cells of `K°_{dim f}(f)` for every face `f` of the cube, face by face.
fn transported(o: &Orthotope, proper_only: bool) -> Result<Vec<ConvexCell>> {
    let n = o.ambient_dim();
    let d = o.dim();
    let kos: Vec<Vec<ConvexCell>> =
        (0..=d).map(|k| build_ko(k).map(|v| v.iter().map(|c| c.embed(n)).collect())).collect::<Result<_>>()?;
    let faces: Vec<Orthotope> = o
        .structure()
        .into_cells()
        .iter()
        .map(|f| Orthotope::from_cell(f).expect("faces of an orthotope are orthotopes"))
        .filter(|f| !proper_only || f.dim() < d)
        .collect();
    Ok(faces
        .par_iter()
        .flat_map_iter(|f| {
            let map = face_transport(f);
            kos[f.dim()].iter().map(move |c| c.image(&map)).collect::<Vec<_>>()
        })
        .collect())
}

/// The symmetric decomposition `K_d(C)` of a `d`-dimensional cube `C`.
pub fn build_k(d: usize, c: &ConvexCell) -> Result<CellComplex> {
    let o = cube_of(d, c)?;
    Ok(CellComplex::new(Space::Cell(c.clone()), transported(&o, false)?))
}

/// `∂K_d(C)`: the cells of `K_d(C)` in the boundary of `C`.
pub fn boundary_k(d: usize, c: &ConvexCell) -> Result<CellComplex> {
    let o = cube_of(d, c)?;
    let facets = if d == 0 { Vec::new() } else { c.facet_cells()? };
    Ok(CellComplex::new(Space::Union(facets), transported(&o, true)?))
}

/// `K_n = K_n(I^n)`.
pub fn build_k_standard(n: usize) -> Result<CellComplex> {
    build_k(n, &Orthotope::standard_cube(n, n).to_cell())
}

/// `C^n_α = ∏ [(2α_i - l)/l, (2α_i - l + 2)/l]`, one of the `l^n` subcubes of `I^n`.
pub fn subcube(n: usize, l: usize, alpha: &[usize]) -> Result<ConvexCell> {
    if l == 0 || alpha.len() != n || alpha.iter().any(|&a| a >= l) {
        return Err(Error::IndexOutOfRange(format!("α = {alpha:?} for n = {n}, l = {l}")));
    }
    let l_r = int(l as i64);
    let lower: Vec<Rational> = alpha.iter().map(|&a| int(2 * a as i64 - l as i64) / &l_r).collect();
    let upper: Vec<Rational> = alpha.iter().map(|&a| int(2 * a as i64 - l as i64 + 2) / &l_r).collect();
    Ok(ConvexCell::axis_box(&lower, &upper))
}

fn multi_indices(n: usize, l: usize) -> Vec<Vec<usize>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter().flat_map(|p| (0..l).map(move |a| [p.clone(), vec![a]].concat())).collect()
    })
}

/// `K_{n,l}`: the symmetric decompositions of the `l^n` subcubes glued together.
pub fn build_k_subdivided(n: usize, l: usize) -> Result<CellComplex> {
    check_dim(n)?;
    if l == 0 {
        return Err(Error::IndexOutOfRange("l must be positive".into()));
    }
    let kn = build_k_standard(n)?;
    let cube = Orthotope::standard_cube(n, n).to_cell();
    let subcubes: Vec<ConvexCell> = multi_indices(n, l).iter().map(|a| subcube(n, l, a)).collect::<Result<_>>()?;
    let grid_cells: BTreeSet<ConvexCell> = subcubes
        .iter()
        .flat_map(|c| Orthotope::from_cell(c).expect("subcubes are boxes").structure().into_cells())
        .collect();
    let grid = CellComplex::new(Space::Cell(cube.clone()), grid_cells);
    let scale = Rational::one() / int(l as i64);
    let per_cell: BTreeMap<ConvexCell, CellComplex> = subcubes
        .par_iter()
        .map(|c| {
            let center = Orthotope::from_cell(c).expect("box").center();
            let map = AffineMap::diagonal(&vec![scale.clone(); n], center);
            let cells: Vec<ConvexCell> = kn.cells().iter().map(|k| k.image(&map)).collect();
            (c.clone(), CellComplex::new(Space::Cell(c.clone()), cells))
        })
        .collect();
    glue_refinements(&grid, &per_cell)
}

/// `K_n(Q)` for an `n`-dimensional orthotope in `R^n`: the pullback of `K_n`
/// under the normalizing map of `Q`.
pub fn build_k_orthotope(q: &Orthotope) -> Result<CellComplex> {
    let n = q.ambient_dim();
    if q.dim() != n {
        return Err(Error::NotAnOrthotope(format!("{q} is not full-dimensional")));
    }
    pullback(&q.normalizing_map(), &build_k_standard(n)?)
}

/// `K_{n,l}(Q)`, the pullback of `K_{n,l}` to the orthotope `Q`.
pub fn build_k_subdivided_orthotope(q: &Orthotope, l: usize) -> Result<CellComplex> {
    let n = q.ambient_dim();
    if q.dim() != n {
        return Err(Error::NotAnOrthotope(format!("{q} is not full-dimensional")));
    }
    pullback(&q.normalizing_map(), &build_k_subdivided(n, l)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pt(x: Rational) -> ConvexCell {
        ConvexCell::point(Point::new(vec![x]))
    }

    fn seg(a: Rational, b: Rational) -> ConvexCell {
        ConvexCell::axis_box(&[a], &[b])
    }

    #[test]
    fn ko_small() {
        let k1 = build_ko(1).unwrap();
        assert_eq!(k1, vec![pt(int(0)), seg(int(-1), int(0)), seg(int(0), int(1))]);
        let k2 = build_ko(2).unwrap();
        assert_eq!(k2.len(), 17);
        assert_eq!(k2.iter().filter(|c| c.dim() == 2).count(), 8);
        assert_eq!(k2.iter().filter(|c| c.dim() == 1).count(), 8);
        assert_eq!(build_ko(0).unwrap().len(), 1);
        assert!(matches!(build_ko(5), Err(Error::DimensionOutOfRange { .. })));
    }

    #[test]
    fn k1_exact() {
        let k = build_k_standard(1).unwrap();
        let expected = vec![pt(int(-1)), pt(int(0)), pt(int(1)), seg(int(-1), int(0)), seg(int(0), int(1))];
        let mut got = k.cells().to_vec();
        got.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn k2_counts() {
        let k = build_k_standard(2).unwrap();
        assert_eq!(k.len(), 33);
        assert_eq!(k.top_cells().len(), 8);
        let b = boundary_k(2, &Orthotope::standard_cube(2, 2).to_cell()).unwrap();
        assert_eq!(b.len(), 16);
    }

    #[test]
    fn subcubes() {
        assert_eq!(subcube(1, 2, &[0]).unwrap(), seg(int(-1), int(0)));
        assert_eq!(subcube(2, 2, &[1, 1]).unwrap(), ConvexCell::axis_box(&[int(0), int(0)], &[int(1), int(1)]));
        assert_eq!(subcube(1, 3, &[1]).unwrap(), seg(rat(-1, 3), rat(1, 3)));
        assert!(subcube(1, 2, &[2]).is_err());
    }

    #[test]
    fn subdivided_small() {
        let k12 = build_k_subdivided(1, 2).unwrap();
        assert_eq!(k12.len(), 9);
        assert_eq!(k12.counts_by_dim(), vec![5, 4]);
        assert_eq!(build_k_subdivided(2, 1).unwrap(), build_k_standard(2).unwrap());
        assert_eq!(build_k_subdivided(2, 2).unwrap().top_cells().len(), 32);
    }

    #[test]
    fn not_a_cube() {
        let q = ConvexCell::axis_box(&[int(0), int(0)], &[int(1), int(2)]);
        assert!(matches!(build_k(2, &q), Err(Error::NotACube(_))));
    }
}
