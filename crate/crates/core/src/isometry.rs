//! Affine isometries whose linear part is a signed permutation matrix.
//!
//! Every cube symmetry and every element of an orthotopic crystallographic
//! group has this form, so composition and inversion can stay exact and
//! combinatorial instead of going through general matrices.

use std::fmt;

use num_traits::Zero;

use crate::affine::AffineMap;
use crate::point::Point;
use crate::rational::{int, Rational};

/// `x ↦ L x + t` with `L e_i = signs[i] · e_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineSignedIsometry {
    perm: Vec<usize>,
    signs: Vec<i8>,
    translation: Point,
}

impl AffineSignedIsometry {
    /// Panics if `perm` is not a permutation or a sign is not ±1.
    pub fn new(perm: Vec<usize>, signs: Vec<i8>, translation: Point) -> Self {
        let n = perm.len();
        assert_eq!(signs.len(), n, "signs length");
        assert_eq!(translation.dim(), n, "translation length");
        let mut seen = vec![false; n];
        for &p in &perm {
            assert!(p < n && !seen[p], "not a permutation: {perm:?}");
            seen[p] = true;
        }
        assert!(signs.iter().all(|&s| s == 1 || s == -1), "signs must be ±1");
        Self { perm, signs, translation }
    }

    pub fn identity(n: usize) -> Self {
        Self { perm: (0..n).collect(), signs: vec![1; n], translation: Point::origin(n) }
    }

    pub fn translation(t: Point) -> Self {
        let n = t.dim();
        Self { perm: (0..n).collect(), signs: vec![1; n], translation: t }
    }

    pub fn linear(perm: Vec<usize>, signs: Vec<i8>) -> Self {
        let n = perm.len();
        Self::new(perm, signs, Point::origin(n))
    }

    pub fn ambient_dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn translation_part(&self) -> &Point {
        &self.translation
    }

    pub fn linear_part(&self) -> Self {
        Self::linear(self.perm.clone(), self.signs.clone())
    }

    pub fn with_translation(&self, t: Point) -> Self {
        Self::new(self.perm.clone(), self.signs.clone(), t)
    }

    pub fn is_identity(&self) -> bool {
        self.is_linear_identity() && self.translation.coords().iter().all(Zero::is_zero)
    }

    pub fn is_linear_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.signs.iter().all(|&s| s == 1)
    }

    pub fn apply_linear(&self, x: &Point) -> Point {
        let mut y = vec![Rational::zero(); self.perm.len()];
        for (i, c) in x.coords().iter().enumerate() {
            y[self.perm[i]] = if self.signs[i] < 0 { -c.clone() } else { c.clone() };
        }
        Point::new(y)
    }

    pub fn apply(&self, x: &Point) -> Point {
        self.apply_linear(x).add(&self.translation)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            let mid = other.perm[i];
            perm[i] = self.perm[mid];
            signs[i] = other.signs[i] * self.signs[mid];
        }
        let translation = self.apply(&other.translation);
        Self { perm, signs, translation }
    }

    pub fn inverse(&self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            signs[self.perm[i]] = self.signs[i];
        }
        let lin = Self { perm, signs, translation: Point::origin(n) };
        let t = lin.apply_linear(&self.translation).scaled(&int(-1));
        lin.with_translation(t)
    }

    pub fn to_affine(&self) -> AffineMap {
        let n = self.perm.len();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            m[self.perm[i]][i] = int(self.signs[i] as i64);
        }
        AffineMap::new(m, self.translation.clone())
    }

    /// Conjugate `self` by `x ↦ s·x`: returns `x ↦ s·self(x/s)`.
    pub fn conjugate_by_scaling(&self, s: &Rational) -> Self {
        self.with_translation(self.translation.scaled(s))
    }
}

impl fmt::Display for AffineSignedIsometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.perm.len();
        let mut img = vec![String::new(); n];
        for i in 0..n {
            let sign = if self.signs[i] < 0 { "-" } else { "" };
            img[self.perm[i]] = format!("{sign}x{}", i + 1);
        }
        write!(f, "x ↦ ({})", img.join(", "))?;
        if !self.translation.coords().iter().all(Zero::is_zero) {
            write!(f, " + {}", self.translation)?;
        }
        Ok(())
    }
}
