use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;

use crate::cell::{ConvexCell, Inequality};
use crate::error::{Error, Result};

/// `H^d_ij(a, b) = {x ∈ I^d : a x_i >= b x_j}` with 1-based indices.
///
/// Stored in canonical form: `i <= j`, using `H_ij(a, b) = H_ji(-b, -a)`,
/// and the two vacuous constraints `H_ii(1, 1)`, `H_ii(-1, -1)` share the key
/// `H_ii(1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfspaceConstraint {
    d: usize,
    i: usize,
    j: usize,
    a: i8,
    b: i8,
}

impl HalfspaceConstraint {
    pub fn new(d: usize, i: usize, j: usize, a: i8, b: i8) -> Result<Self> {
        if i == 0 || j == 0 || i > d || j > d {
            return Err(Error::IndexOutOfRange(format!("indices ({i}, {j}) for d = {d}")));
        }
        if a.abs() != 1 || b.abs() != 1 {
            return Err(Error::IndexOutOfRange(format!("signs ({a}, {b}) must be ±1")));
        }
        let (i, j, a, b) = if i > j { (j, i, -b, -a) } else { (i, j, a, b) };
        let (a, b) = if i == j && a == b { (1, 1) } else { (a, b) };
        Ok(Self { d, i, j, a, b })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn indices(&self) -> (usize, usize) {
        (self.i, self.j)
    }

    pub fn signs(&self) -> (i8, i8) {
        (self.a, self.b)
    }

    pub fn is_vacuous(&self) -> bool {
        self.i == self.j && self.a == self.b
    }

    /// `a x_i - b x_j >= 0` in `R^n`.
    pub fn inequality(&self, n: usize) -> Inequality {
        let mut coeffs = vec![0i64; n];
        coeffs[self.i - 1] += self.a as i64;
        coeffs[self.j - 1] -= self.b as i64;
        Inequality::ge(&coeffs, 0)
    }

    /// The whole family `H^d` in canonical form.
    pub fn family(d: usize) -> Vec<Self> {
        let mut out = BTreeSet::new();
        for i in 1..=d {
            for j in i..=d {
                for (a, b) in [(1, -1), (-1, 1), (1, 1), (-1, -1)] {
                    out.insert(Self::new(d, i, j, a, b).unwrap());
                }
            }
        }
        out.into_iter().collect()
    }
}

impl fmt::Display for HalfspaceConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H^{}_{}{}({}, {})", self.d, self.i, self.j, self.a, self.b)
    }
}

/// Inequalities of `I^d` inside `R^n`, with the extra coordinates pinned to zero.
pub(crate) fn cube_hrep(d: usize, n: usize) -> Vec<Inequality> {
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut e = vec![0i64; n];
        e[i] = 1;
        let bound = if i < d { -1 } else { 0 };
        out.push(Inequality::ge(&e, bound));
        e[i] = -1;
        out.push(Inequality::ge(&e, bound));
    }
    out
}

/// The cell `H^d_ij(a, b)` in `R^d`.
pub fn halfspace(d: usize, i: usize, j: usize, a: i8, b: i8) -> Result<ConvexCell> {
    let h = HalfspaceConstraint::new(d, i, j, a, b)?;
    let mut hrep = cube_hrep(d, d);
    hrep.push(h.inequality(d));
    ConvexCell::from_hrep(d, &hrep)
}

/// For every `1 <= i <= j <= d`, `S` holds one of `H_ij(1,-1)`, `H_ij(-1,1)`
/// and one of `H_ij(1,1)`, `H_ij(-1,-1)`.
pub fn is_fundamental(d: usize, s: &[HalfspaceConstraint]) -> bool {
    let set: BTreeSet<&HalfspaceConstraint> = s.iter().collect();
    let has = |i, j, a, b| set.contains(&HalfspaceConstraint::new(d, i, j, a, b).unwrap());
    (1..=d).all(|i| (i..=d).all(|j| (has(i, j, 1, -1) || has(i, j, -1, 1)) && (has(i, j, 1, 1) || has(i, j, -1, -1))))
}

/// A fundamental subset of `H^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FundamentalSubset {
    d: usize,
    members: BTreeSet<HalfspaceConstraint>,
}

impl FundamentalSubset {
    pub fn new(d: usize, members: impl IntoIterator<Item = HalfspaceConstraint>) -> Option<Self> {
        let members: BTreeSet<HalfspaceConstraint> = members.into_iter().collect();
        let list: Vec<HalfspaceConstraint> = members.iter().copied().collect();
        (list.iter().all(|h| h.d == d) && is_fundamental(d, &list)).then_some(Self { d, members })
    }

    pub fn members(&self) -> &BTreeSet<HalfspaceConstraint> {
        &self.members
    }

    /// `⋂ S` as a cell of `R^n`.
    pub fn cell(&self, n: usize) -> ConvexCell {
        let mut hrep = cube_hrep(self.d, n);
        hrep.extend(self.members.iter().filter(|h| !h.is_vacuous()).map(|h| h.inequality(n)));
        ConvexCell::from_hrep(n, &hrep).expect("contains the origin and lies in the cube")
    }

    /// The fundamental subsets that pick exactly one constraint from each
    /// required pair: a sign for every `x_i` and one side of `x_i = ±x_j`.
    pub fn minimal(d: usize) -> Vec<Self> {
        let mut slots: Vec<Vec<HalfspaceConstraint>> = Vec::new();
        for i in 1..=d {
            slots.push(vec![
                HalfspaceConstraint::new(d, i, i, 1, -1).unwrap(),
                HalfspaceConstraint::new(d, i, i, -1, 1).unwrap(),
            ]);
            for j in i + 1..=d {
                for pair in [[(1, -1), (-1, 1)], [(1, 1), (-1, -1)]] {
                    slots.push(pair.iter().map(|&(a, b)| HalfspaceConstraint::new(d, i, j, a, b).unwrap()).collect());
                }
            }
        }
        let vacuous: Vec<HalfspaceConstraint> =
            (1..=d).map(|i| HalfspaceConstraint::new(d, i, i, 1, 1).unwrap()).collect();
        slots
            .into_iter()
            .multi_cartesian_product()
            .map(|choice| Self { d, members: choice.into_iter().chain(vacuous.iter().copied()).collect() })
            .collect()
    }
}
