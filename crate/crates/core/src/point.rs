use std::fmt;

use num_traits::Zero;

use crate::rational::{format_rational, int, Rational};

/// A point of `R^n` with exact coordinates.
///
/// Lower-dimensional spaces `R^d` sit inside `R^n` as `R^d x {0}^(n-d)`;
/// [`Point::embed`] does the zero padding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    coords: Vec<Rational>,
}

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn origin(n: usize) -> Self {
        Self { coords: vec![Rational::zero(); n] }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self { coords: coords.iter().map(|&c| int(c)).collect() }
    }

    /// The unit vector `e_i` (0-based index).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut p = Self::origin(n);
        p.coords[i] = int(1);
        p
    }

    pub fn embed(&self, n: usize) -> Self {
        let mut coords = self.coords.clone();
        coords.resize(n, Rational::zero());
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.coords
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        Self { coords: self.coords.iter().map(|c| c * s).collect() }
    }

    pub fn add(&self, other: &Point) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Point) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn squared_distance(&self, other: &Point) -> Rational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Vertex barycenter of a non-empty point list.
    pub fn barycenter(points: &[Point]) -> Point {
        let n = points[0].dim();
        let mut acc = vec![Rational::zero(); n];
        for p in points {
            for (a, c) in acc.iter_mut().zip(&p.coords) {
                *a += c;
            }
        }
        let k = int(points.len() as i64);
        Self { coords: acc.into_iter().map(|a| a / &k).collect() }
    }
}

impl std::ops::Index<usize> for Point {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.coords[i]
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if c.is_integer() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{}", format_rational(c))?;
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn barycenter_of_triangle() {
        let pts = [Point::from_ints(&[0, 0]), Point::from_ints(&[1, 0]), Point::from_ints(&[1, 1])];
        assert_eq!(Point::barycenter(&pts), Point::new(vec![rat(2, 3), rat(1, 3)]));
    }

    #[test]
    fn embedding_pads_with_zeros() {
        assert_eq!(Point::from_ints(&[1]).embed(3), Point::from_ints(&[1, 0, 0]));
        assert_eq!(Point::from_ints(&[1, -1]).to_string(), "(1, -1)");
    }
}
