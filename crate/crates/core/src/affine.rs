//! General affine maps `x ↦ M x + t` with rational entries.

use std::fmt;

use num_traits::{One, Zero};

use crate::linalg::{self, Matrix};
use crate::point::Point;
use crate::rational::{format_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    linear: Matrix,
    translation: Point,
}

impl AffineMap {
    pub fn new(linear: Matrix, translation: Point) -> Self {
        assert_eq!(linear.len(), translation.dim(), "affine map shape");
        Self { linear, translation }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Rational::one(); n], Point::origin(n))
    }

    pub fn scaling(n: usize, s: &Rational) -> Self {
        Self::diagonal(&vec![s.clone(); n], Point::origin(n))
    }

    pub fn diagonal(diag: &[Rational], translation: Point) -> Self {
        let n = diag.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for (i, d) in diag.iter().enumerate() {
            m[i][i] = d.clone();
        }
        Self::new(m, translation)
    }

    pub fn ambient_dim(&self) -> usize {
        self.translation.dim()
    }

    pub fn linear(&self) -> &Matrix {
        &self.linear
    }

    pub fn translation(&self) -> &Point {
        &self.translation
    }

    pub fn apply_linear(&self, x: &Point) -> Point {
        Point::new(self.linear.iter().map(|row| linalg::dot(row, x.coords())).collect())
    }

    pub fn apply(&self, x: &Point) -> Point {
        self.apply_linear(x).add(&self.translation)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        let n = self.ambient_dim();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = (0..n).fold(Rational::zero(), |acc, k| acc + &self.linear[i][k] * &other.linear[k][j]);
            }
        }
        AffineMap::new(m, self.apply(&other.translation))
    }

    pub fn determinant(&self) -> Rational {
        linalg::determinant(&self.linear)
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn inverse(&self) -> Option<AffineMap> {
        let n = self.ambient_dim();
        let mut aug: Matrix = self
            .linear
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                r
            })
            .collect();
        if linalg::rref(&mut aug, n).len() < n {
            return None;
        }
        let inv: Matrix = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        let lin = AffineMap::new(inv, Point::origin(n));
        let t = lin.apply_linear(&self.translation).scaled(&-Rational::one());
        Some(AffineMap::new(lin.linear, t))
    }

    /// Transposed inverse of the linear part, used to push inequalities forward.
    pub(crate) fn inverse_transpose(&self) -> Option<Matrix> {
        let inv = self.inverse()?;
        let n = self.ambient_dim();
        Some((0..n).map(|i| (0..n).map(|j| inv.linear[j][i].clone()).collect()).collect())
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.linear.iter().map(|r| r.iter().map(format_rational).collect::<Vec<_>>().join(" ")).collect();
        write!(f, "[{}] + {}", rows.join("; "), self.translation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn inverse_of_scaling() {
        let a = AffineMap::diagonal(&[int(2), int(3)], Point::from_ints(&[1, 0]));
        let inv = a.inverse().unwrap();
        let x = Point::from_ints(&[5, 7]);
        assert_eq!(inv.apply(&a.apply(&x)), x);
        assert_eq!(inv.apply(&Point::from_ints(&[1, 3])), Point::new(vec![int(0), int(1)]));
        assert_eq!(a.compose(&inv), AffineMap::identity(2));
        assert_eq!(AffineMap::scaling(1, &rat(1, 2)).determinant(), rat(1, 2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = AffineMap::diagonal(&[int(1), int(0)], Point::origin(2));
        assert!(a.inverse().is_none());
        assert!(!a.is_invertible());
    }
}
