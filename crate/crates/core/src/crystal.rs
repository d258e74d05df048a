//! Orthotopic crystallographic groups: a diagonal translation lattice plus
//! signed-permutation point generators, acting on `R^n` with an orthotope
//! `Q` as normal fundamental domain.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use crate::cell::ConvexCell;
use crate::error::{Error, Result};
use crate::isometry::AffineSignedIsometry;
use crate::orthotope::Orthotope;
use crate::point::Point;
use crate::rational::{int, Rational};
use crate::report::{CheckOutcome, VerificationReport};
use crate::symmetry::stabilizer_report;

/// Default number of lattice shells searched around the origin cell.
pub const DEFAULT_RADIUS: usize = 2;

/// `Γ = {x ↦ L x + t}` generated by the translations `Σ Z^n` and a list of
/// point generators. Elements are stored modulo the lattice as one coset
/// representative per linear part, with translation in `∏[0, a_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthotopicGroup {
    lattice: Vec<Rational>,
    point_generators: Vec<AffineSignedIsometry>,
    cosets: Vec<AffineSignedIsometry>,
    domain: Orthotope,
}

/// `x mod a` in `[0, a)`.
fn modulo(x: &Rational, a: &Rational) -> Rational {
    x - a * &(x / a).floor()
}

/// The box `g(lower..upper)`, as (lower, upper).
fn image_box(g: &AffineSignedIsometry, lower: &[Rational], upper: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let a = g.apply(&Point::new(lower.to_vec()));
    let b = g.apply(&Point::new(upper.to_vec()));
    a.coords()
        .iter()
        .zip(b.coords())
        .map(|(x, y)| if x <= y { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) })
        .unzip()
}

fn box_inside(lower: &[Rational], upper: &[Rational], q: &Orthotope) -> bool {
    lower.iter().zip(q.lower()).all(|(l, ql)| l >= ql) && upper.iter().zip(q.upper()).all(|(u, qu)| u <= qu)
}

/// Closed intersection of two boxes, if nonempty.
fn box_meet(a: &Orthotope, b: &Orthotope) -> Option<Orthotope> {
    let lower: Vec<Rational> = a.lower().iter().zip(b.lower()).map(|(x, y)| x.max(y).clone()).collect();
    let upper: Vec<Rational> = a.upper().iter().zip(b.upper()).map(|(x, y)| x.min(y).clone()).collect();
    Orthotope::new(lower, upper).ok()
}

fn interiors_meet(a: &Orthotope, b: &Orthotope) -> bool {
    (0..a.ambient_dim()).all(|i| (&a.lower()[i]).max(&b.lower()[i]) < (&a.upper()[i]).min(&b.upper()[i]))
}

/// Whether `p` is a face of `box`: every coordinate is the full side or one
/// of its endpoints.
fn is_face_of(p: &Orthotope, b: &Orthotope) -> bool {
    (0..b.ambient_dim()).all(|i| {
        let (pl, pu, bl, bu) = (&p.lower()[i], &p.upper()[i], &b.lower()[i], &b.upper()[i]);
        (pl == bl && pu == bu) || (pl == pu && (pl == bl || pl == bu))
    })
}

impl OrthotopicGroup {
    pub fn ambient_dim(&self) -> usize {
        self.lattice.len()
    }

    /// The diagonal `(a_1, …, a_n)` of `Σ`.
    pub fn lattice(&self) -> &[Rational] {
        &self.lattice
    }

    pub fn point_generators(&self) -> &[AffineSignedIsometry] {
        &self.point_generators
    }

    /// One element per linear part, translation reduced into `∏[0, a_i)`.
    pub fn cosets(&self) -> &[AffineSignedIsometry] {
        &self.cosets
    }

    pub fn domain(&self) -> &Orthotope {
        &self.domain
    }

    /// Replaces the fundamental domain (default `∏[0, a_i]`).
    pub fn with_domain(mut self, q: Orthotope) -> Result<Self> {
        if q.ambient_dim() != self.ambient_dim() {
            return Err(Error::DimensionMismatch { expected: self.ambient_dim(), got: q.ambient_dim() });
        }
        self.domain = q;
        Ok(self)
    }

    /// Translation by `Σ v`.
    pub fn lattice_translation(&self, v: &[i64]) -> AffineSignedIsometry {
        AffineSignedIsometry::translation(Point::new(self.lattice.iter().zip(v).map(|(a, &k)| a * &int(k)).collect()))
    }

    /// `x` reduced modulo the lattice into `∏[0, a_i)`.
    pub fn reduce(&self, x: &Point) -> Point {
        Point::new(x.coords().iter().zip(&self.lattice).map(|(c, a)| modulo(c, a)).collect())
    }

    fn reduce_element(&self, g: &AffineSignedIsometry) -> AffineSignedIsometry {
        g.with_translation(self.reduce(g.translation_part()))
    }

    pub fn is_element(&self, g: &AffineSignedIsometry) -> bool {
        g.ambient_dim() == self.ambient_dim() && self.cosets.binary_search(&self.reduce_element(g)).is_ok()
    }

    /// Elements `t_{Σv} ∘ c` for cosets `c` and `v ∈ {-r..r}^n`, ordered by
    /// `max |v_i|` and then by the element.
    pub fn shell(&self, radius: usize) -> Vec<AffineSignedIsometry> {
        let r = radius as i64;
        let mut out: Vec<(i64, AffineSignedIsometry)> = (0..self.ambient_dim())
            .map(|_| -r..=r)
            .multi_cartesian_product()
            .flat_map(|v| {
                let t = self.lattice_translation(&v);
                let norm = v.iter().map(|x| x.abs()).max().unwrap_or(0);
                self.cosets.iter().map(move |c| (norm, t.compose(c)))
            })
            .collect();
        if self.ambient_dim() == 0 {
            out = self.cosets.iter().map(|c| (0, c.clone())).collect();
        }
        out.sort();
        out.into_iter().map(|(_, g)| g).collect()
    }

    /// The tile `g(Q)`.
    pub fn tile(&self, g: &AffineSignedIsometry) -> Orthotope {
        let (lo, hi) = image_box(g, self.domain.lower(), self.domain.upper());
        Orthotope::new(lo, hi).expect("image of a box is a box")
    }

    /// Shell elements whose tile meets `Q`, identity first.
    pub fn adjacency_shell(&self) -> Vec<AffineSignedIsometry> {
        self.shell(DEFAULT_RADIUS).into_iter().filter(|g| box_meet(&self.tile(g), &self.domain).is_some()).collect()
    }

    /// Splits an element whose tile is a grid box `Q + w` into the
    /// translation by `w` and a symmetry `s` of `Q`: `g = t_w ∘ s`.
    pub fn decompose(&self, g: &AffineSignedIsometry) -> (Point, AffineSignedIsometry) {
        let tile = self.tile(g);
        let w = Point::new(tile.lower().iter().zip(self.domain.lower()).map(|(a, b)| a - b).collect());
        let s = AffineSignedIsometry::translation(w.scaled(&int(-1))).compose(g);
        (w, s)
    }

    /// Image of a cell's bounding box under `g`, tested against `Q`.
    pub(crate) fn maps_into_domain(&self, g: &AffineSignedIsometry, c: &ConvexCell) -> bool {
        let (lo, hi) = image_box(g, c.lower(), c.upper());
        box_inside(&lo, &hi, &self.domain)
    }
}

/// Validates the generators against `Σ = diag(sigma)` and closes the point
/// group modulo the lattice. A generator is rejected when its linear part
/// moves a lattice vector off the lattice, or when it produces a
/// translation outside `Σ Z^n`.
pub fn make_orthotopic_group(
    sigma: &[Rational],
    point_generators: Vec<AffineSignedIsometry>,
) -> Result<OrthotopicGroup> {
    let n = sigma.len();
    let domain = Orthotope::corner(sigma)?;
    for (index, g) in point_generators.iter().enumerate() {
        if g.ambient_dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: g.ambient_dim() });
        }
        for i in 0..n {
            let j = g.perm()[i];
            if !(&sigma[i] / &sigma[j]).is_integer() {
                return Err(Error::IncompatibleGenerator {
                    index,
                    reason: format!("sends the lattice vector {} e{} to {} e{}", sigma[i], i + 1, sigma[i], j + 1),
                });
            }
        }
    }
    let mut group = OrthotopicGroup {
        lattice: sigma.to_vec(),
        point_generators: point_generators.clone(),
        cosets: Vec::new(),
        domain,
    };
    // Breadth-first closure modulo the lattice, keyed by linear part.
    let mut by_linear: BTreeMap<AffineSignedIsometry, AffineSignedIsometry> = BTreeMap::new();
    let id = AffineSignedIsometry::identity(n);
    by_linear.insert(id.clone(), id.clone());
    let mut frontier = vec![id];
    while let Some(e) = frontier.pop() {
        for (index, g) in point_generators.iter().enumerate() {
            let h = group.reduce_element(&g.compose(&e));
            match by_linear.get(&h.linear_part()) {
                Some(existing) if *existing != h => {
                    let t = group.reduce(&h.translation_part().sub(existing.translation_part()));
                    return Err(Error::IncompatibleGenerator {
                        index,
                        reason: format!("generates the translation by {t}, which is not in the lattice"),
                    });
                }
                Some(_) => {}
                None => {
                    by_linear.insert(h.linear_part(), h.clone());
                    frontier.push(h);
                }
            }
        }
    }
    group.cosets = by_linear.into_values().sorted().collect();
    Ok(group)
}

/// `Γ_tor = Σ Z^n` with `Σ = diag(sigma)`.
pub fn torus_group(sigma: &[Rational]) -> Result<OrthotopicGroup> {
    make_orthotopic_group(sigma, Vec::new())
}

/// Checks, over the tiles `γ(Q)` of the shell of the given radius that meet
/// the neighborhood `B = ∏[-(r-1) a_i, r a_i]`: they cover `B`, have
/// disjoint interiors, meet in common faces, and are the grid boxes
/// `Q + D v` with `D` the side lengths of `Q`.
pub fn verify_normal_fundamental_domain(group: &OrthotopicGroup, radius: usize) -> VerificationReport {
    let mut report = VerificationReport::new("normal fundamental domain");
    let q = group.domain();
    let r = radius.max(1) as i64;
    let lower: Vec<Rational> = group.lattice().iter().map(|a| a * &int(1 - r)).collect();
    let upper: Vec<Rational> = group.lattice().iter().map(|a| a * &int(r)).collect();
    let neighborhood = Orthotope::new(lower, upper).expect("positive lattice");
    let tiles: Vec<(AffineSignedIsometry, Orthotope)> = group
        .shell(radius)
        .into_iter()
        .map(|g| {
            let t = group.tile(&g);
            (g, t)
        })
        .filter(|(_, t)| box_meet(t, &neighborhood).is_some())
        .collect();

    let volume = |b: &Orthotope| b.sides().iter().fold(int(1), |acc, s| acc * s);
    let covered =
        tiles.iter().filter_map(|(_, t)| box_meet(t, &neighborhood)).fold(Rational::zero(), |acc, b| acc + volume(&b));
    let mut cover = CheckOutcome::new("(i) tiles cover the searched neighborhood");
    cover.record(covered >= volume(&neighborhood), || {
        format!("tiles cover volume {covered} of {} in {neighborhood}", volume(&neighborhood))
    });
    report.push(cover);

    let pairs: Vec<(usize, usize)> = (0..tiles.len()).tuple_combinations().collect();
    let overlaps: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let ((g, a), (h, b)) = (&tiles[i], &tiles[j]);
            interiors_meet(a, b).then(|| format!("{g} and {h} send Q to overlapping tiles {a} and {b}"))
        })
        .collect();
    report.push(CheckOutcome::from_results("(ii) tiles have disjoint interiors", overlaps));

    let faces: Vec<Option<String>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let ((_, a), (_, b)) = (&tiles[i], &tiles[j]);
            let p = box_meet(a, b)?;
            (!(is_face_of(&p, a) && is_face_of(&p, b))).then(|| format!("{a} ∩ {b} = {p} is not a common face"))
        })
        .collect();
    report.push(CheckOutcome::from_results("(iii) adjacent tiles meet in common faces", faces));

    let sides = q.sides();
    let grid: Vec<Option<String>> = tiles
        .iter()
        .map(|(g, t)| {
            let aligned = (0..q.ambient_dim())
                .all(|i| t.sides()[i] == sides[i] && ((&t.lower()[i] - &q.lower()[i]) / &sides[i]).is_integer());
            (!aligned).then(|| format!("{g} sends Q to {t}, which is not a grid box Q + Dv"))
        })
        .collect();
    report.push(CheckOutcome::from_results("(iv) tiles are the grid boxes Q + Dv", grid));
    report
}

/// The unique `γ` with `γ(Q) ∩ Q = F` for a facet `F` of `Q`.
pub fn adjacency_transformation(group: &OrthotopicGroup, facet: &ConvexCell) -> Result<AffineSignedIsometry> {
    let q = group.domain();
    let f = Orthotope::from_cell(facet).map_err(|_| Error::NotAFacet(facet.to_string()))?;
    let n = q.ambient_dim();
    if f.ambient_dim() != n || f.dim() + 1 != q.dim() || !is_face_of(&f, q) {
        return Err(Error::NotAFacet(facet.to_string()));
    }
    let found: Vec<AffineSignedIsometry> =
        group.adjacency_shell().into_iter().filter(|g| box_meet(&group.tile(g), q).as_ref() == Some(&f)).collect();
    match found.as_slice() {
        [] => Err(Error::NotFound(format!("no element sends Q across {facet}"))),
        [g] => Ok(g.clone()),
        [g, h, ..] => Err(Error::NotUnique(format!("{g} and {h} both send Q across {facet}"))),
    }
}

/// Orbit representative of `x`: the lexicographically least point of the
/// orbit in the closed box `Q` among the lattice-reduced images `c(x)`.
pub fn canonicalize_point(group: &OrthotopicGroup, x: &Point) -> Point {
    let q = group.domain().to_cell();
    let images: Vec<Point> = group.cosets().iter().map(|c| group.reduce(&c.apply(x))).collect();
    images
        .iter()
        .filter(|p| q.contains_point(p))
        .min()
        .or_else(|| images.iter().min())
        .cloned()
        .expect("the identity coset is always present")
}

/// For every cell `H` of `cells` and every `γ` whose tile meets `Q`:
/// `γ(x) ∈ H` forces `γ(x) = x`, on vertices and seeded random samples, and
/// exactly on `H ∩ γ⁻¹(H)`.
pub fn orbit_intersection_check(
    group: &OrthotopicGroup,
    cells: &[ConvexCell],
    samples: usize,
    seed: u64,
) -> VerificationReport {
    stabilizer_report("orbit intersection", cells, &group.adjacency_shell(), samples, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn sph() -> OrthotopicGroup {
        let flip = AffineSignedIsometry::linear(vec![0], vec![-1]);
        make_orthotopic_group(&[int(2)], vec![flip]).unwrap()
    }

    #[test]
    fn construction() {
        let tor = torus_group(&[int(1), int(1)]).unwrap();
        assert_eq!(tor.cosets().len(), 1);
        assert_eq!(tor.shell(1).len(), 9);
        assert_eq!(sph().cosets().len(), 2);
        let swap = AffineSignedIsometry::linear(vec![1, 0], vec![1, 1]);
        assert!(matches!(
            make_orthotopic_group(&[int(1), int(2)], vec![swap]),
            Err(Error::IncompatibleGenerator { index: 0, .. })
        ));
        let half = AffineSignedIsometry::translation(Point::new(vec![rat(1, 2)]));
        assert!(matches!(make_orthotopic_group(&[int(1)], vec![half]), Err(Error::IncompatibleGenerator { .. })));
    }

    #[test]
    fn membership() {
        let g = sph();
        assert!(g.is_element(&AffineSignedIsometry::new(vec![0], vec![-1], Point::from_ints(&[6]))));
        assert!(!g.is_element(&AffineSignedIsometry::translation(Point::from_ints(&[1]))));
    }

    #[test]
    fn points() {
        let tor = torus_group(&[int(1), int(1)]).unwrap();
        assert_eq!(canonicalize_point(&tor, &Point::new(vec![rat(3, 2), int(0)])), Point::new(vec![rat(1, 2), int(0)]));
        assert_eq!(canonicalize_point(&tor, &Point::from_ints(&[1, 1])), Point::from_ints(&[0, 0]));
        assert_eq!(canonicalize_point(&sph(), &Point::new(vec![rat(-1, 2)])), Point::new(vec![rat(1, 2)]));
    }
}
