//! Axis-parallel orthotopes, their face structures and cubic stretching.

use std::fmt;

use itertools::Itertools;
use num_traits::{One, Zero};

use crate::affine::AffineMap;
use crate::cell::ConvexCell;
use crate::complex::{CellComplex, Space};
use crate::error::{Error, Result};
use crate::point::Point;
use crate::rational::{int, Rational};

/// `∏ [lower_i, upper_i]` in `R^n`. Coordinates with `lower_i = upper_i` are
/// flat, so a `d`-dimensional orthotope has exactly `d` proper sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orthotope {
    lower: Vec<Rational>,
    upper: Vec<Rational>,
}

impl Orthotope {
    pub fn new(lower: Vec<Rational>, upper: Vec<Rational>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch { expected: lower.len(), got: upper.len() });
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(Error::NotAnOrthotope("lower bound above upper bound".into()));
        }
        Ok(Self { lower, upper })
    }

    /// `∏ [-a_i, a_i]`.
    pub fn centered(half_sides: &[Rational]) -> Result<Self> {
        check_positive(half_sides)?;
        Self::new(half_sides.iter().map(|a| -a).collect(), half_sides.to_vec())
    }

    /// `∏ [0, a_i]`.
    pub fn corner(sides: &[Rational]) -> Result<Self> {
        check_positive(sides)?;
        Self::new(vec![Rational::zero(); sides.len()], sides.to_vec())
    }

    /// The standard cube `I^d = [-1, 1]^d` inside `R^n`.
    pub fn standard_cube(d: usize, n: usize) -> Self {
        let mut lower = vec![Rational::zero(); n];
        let mut upper = vec![Rational::zero(); n];
        for i in 0..d {
            lower[i] = -Rational::one();
            upper[i] = Rational::one();
        }
        Self { lower, upper }
    }

    /// Reads an axis-parallel box back from a cell.
    pub fn from_cell(c: &ConvexCell) -> Result<Self> {
        let o = Self { lower: c.lower().to_vec(), upper: c.upper().to_vec() };
        if o.to_cell() != *c {
            return Err(Error::NotAnOrthotope(c.to_string()));
        }
        Ok(o)
    }

    pub fn ambient_dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    /// Coordinates in which the orthotope has positive width.
    pub fn active_axes(&self) -> Vec<usize> {
        (0..self.ambient_dim()).filter(|&i| self.lower[i] < self.upper[i]).collect()
    }

    pub fn dim(&self) -> usize {
        self.active_axes().len()
    }

    /// Side lengths `upper_i - lower_i` of all coordinates.
    pub fn sides(&self) -> Vec<Rational> {
        self.lower.iter().zip(&self.upper).map(|(l, u)| u - l).collect()
    }

    pub fn center(&self) -> Point {
        let two = int(2);
        Point::new(self.lower.iter().zip(&self.upper).map(|(l, u)| (l + u) / &two).collect())
    }

    pub fn is_standard(&self) -> bool {
        self.center().coords().iter().all(Zero::is_zero)
    }

    pub fn is_cube(&self) -> bool {
        let sides = self.sides();
        self.active_axes().iter().map(|&i| &sides[i]).all_equal()
    }

    pub fn to_cell(&self) -> ConvexCell {
        ConvexCell::axis_box(&self.lower, &self.upper)
    }

    /// All `3^d` faces as a complex: `∏ {[l_i, u_i], {l_i}, {u_i}}`.
    pub fn structure(&self) -> CellComplex {
        let choices = (0..self.ambient_dim()).map(|i| {
            let (l, u) = (self.lower[i].clone(), self.upper[i].clone());
            if l == u {
                vec![(l.clone(), l)]
            } else {
                vec![(l.clone(), u.clone()), (l.clone(), l), (u.clone(), u)]
            }
        });
        let cells = choices.multi_cartesian_product().map(|c| {
            let (lo, hi): (Vec<_>, Vec<_>) = c.into_iter().unzip();
            ConvexCell::axis_box(&lo, &hi)
        });
        CellComplex::new(Space::Cell(self.to_cell()), cells)
    }

    /// The affine map `x_i ↦ (2 x_i - l_i - u_i) / (u_i - l_i)` on active axes,
    /// identity elsewhere: it carries the orthotope onto the standard cube.
    pub fn normalizing_map(&self) -> AffineMap {
        let n = self.ambient_dim();
        let mut diag = vec![Rational::one(); n];
        let mut t = vec![Rational::zero(); n];
        for i in self.active_axes() {
            let w = &self.upper[i] - &self.lower[i];
            diag[i] = int(2) / &w;
            t[i] = -(&self.lower[i] + &self.upper[i]) / &w;
        }
        AffineMap::diagonal(&diag, Point::new(t))
    }
}

fn check_positive(sides: &[Rational]) -> Result<()> {
    match sides.iter().find(|a| !a.is_positive()) {
        Some(a) => Err(Error::NotAnOrthotope(format!("side {a} is not positive"))),
        None => Ok(()),
    }
}

impl fmt::Display for Orthotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lower.iter().zip(&self.upper).map(|(l, u)| format!("[{l}, {u}]")).collect();
        write!(f, "{}", parts.join("×"))
    }
}

/// `Cube_d(C)`: the face structure of a `d`-dimensional cube.
pub fn cube_structure(d: usize, c: &ConvexCell) -> Result<CellComplex> {
    let o = Orthotope::from_cell(c).map_err(|_| Error::NotACube(c.to_string()))?;
    if o.dim() != d || !o.is_cube() {
        return Err(Error::NotACube(c.to_string()));
    }
    Ok(o.structure())
}

/// `Rec_d(Q)`: the face structure of an orthotope.
pub fn orthotope_structure(q: &Orthotope) -> CellComplex {
    q.structure()
}

/// The linear map `x_i ↦ x_i / a_i` sending `Q = ∏[-a_i, a_i]` onto the cube.
pub fn cubic_stretching(q: &Orthotope) -> Result<AffineMap> {
    if !q.is_standard() {
        return Err(Error::NotStandard(q.to_string()));
    }
    Ok(q.normalizing_map())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::pullback;

    #[test]
    fn structures() {
        let i1 = Orthotope::standard_cube(1, 1).to_cell();
        let s = cube_structure(1, &i1).unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.contains(&i1));
        assert!(s.contains(&ConvexCell::point(Point::from_ints(&[-1]))));
        assert_eq!(cube_structure(2, &Orthotope::standard_cube(2, 2).to_cell()).unwrap().len(), 9);

        let q = Orthotope::corner(&[int(2), int(3)]).unwrap();
        let rec = orthotope_structure(&q);
        assert_eq!(rec.len(), 9);
        assert_eq!(rec.counts_by_dim(), vec![4, 4, 1]);
        assert!(rec.contains(&ConvexCell::axis_box(&[int(2), int(0)], &[int(2), int(3)])));
        assert!(matches!(cube_structure(2, &q.to_cell()), Err(Error::NotACube(_))));
    }

    #[test]
    fn stretching() {
        let q = Orthotope::centered(&[int(2), int(3)]).unwrap();
        let pi = cubic_stretching(&q).unwrap();
        assert_eq!(pi.apply(&Point::from_ints(&[2, -3])), Point::from_ints(&[1, -1]));
        assert_eq!(q.to_cell().image(&pi), Orthotope::standard_cube(2, 2).to_cell());
        let cube = Orthotope::standard_cube(2, 2);
        assert_eq!(cubic_stretching(&cube).unwrap(), AffineMap::identity(2));
        let rec = pullback(&pi, &cube.structure()).unwrap();
        assert_eq!(rec, q.structure());
        let corner = Orthotope::corner(&[int(1)]).unwrap();
        assert!(matches!(cubic_stretching(&corner), Err(Error::NotStandard(_))));
    }
}
