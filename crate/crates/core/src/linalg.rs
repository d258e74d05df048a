//! Small dense exact linear algebra over [`Rational`].

use num_traits::{One, Zero};

use crate::rational::Rational;

pub type Vector = Vec<Rational>;
pub type Matrix = Vec<Vec<Rational>>;

/// Reduced row echelon form in place. Returns pivot columns.
pub fn rref(m: &mut Matrix, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let (pivot_row, other) = if r < row {
                    let (a, b) = m.split_at_mut(row);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = m.split_at_mut(r);
                    (&a[row], &mut b[0])
                };
                for (x, p) in other.iter_mut().zip(pivot_row.iter()) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank(rows: &[Vector]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m = rows.to_vec();
    rref(&mut m, ncols).len()
}

/// Unique solution of the square system `a x = b`, if `a` is invertible.
pub fn solve(a: &[Vector], b: &[Rational]) -> Option<Vector> {
    let n = a.len();
    let mut m: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n);
    if pivots.len() < n {
        return None;
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// [`solve`] for borrowed rows; systems up to 3×3 use Cramer's rule.
pub fn solve_rows(a: &[&[Rational]], b: &[&Rational]) -> Option<Vector> {
    match a.len() {
        0 => Some(Vec::new()),
        1 => (!a[0][0].is_zero()).then(|| vec![b[0] / &a[0][0]]),
        2 => {
            let det = &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0];
            if det.is_zero() {
                return None;
            }
            let x = (b[0] * &a[1][1] - &a[0][1] * b[1]) / &det;
            let y = (&a[0][0] * b[1] - b[0] * &a[1][0]) / &det;
            Some(vec![x, y])
        }
        3 => {
            let det3 = |c0: [&Rational; 3], c1: [&Rational; 3], c2: [&Rational; 3]| {
                c0[0] * &(c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * &(c0[1] * c2[2] - c0[2] * c2[1])
                    + c2[0] * &(c0[1] * c1[2] - c0[2] * c1[1])
            };
            let col = |j: usize| [&a[0][j], &a[1][j], &a[2][j]];
            let rhs = [b[0], b[1], b[2]];
            let det = det3(col(0), col(1), col(2));
            if det.is_zero() {
                return None;
            }
            Some(vec![
                det3(rhs, col(1), col(2)) / &det,
                det3(col(0), rhs, col(2)) / &det,
                det3(col(0), col(1), rhs) / &det,
            ])
        }
        _ => {
            let rows: Vec<Vector> = a.iter().map(|r| r.to_vec()).collect();
            let rhs: Vec<Rational> = b.iter().map(|&r| r.clone()).collect();
            solve(&rows, &rhs)
        }
    }
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect()
}

/// Particular solution and nullspace basis of `rows · x = rhs`, or `None`
/// when inconsistent.
pub fn solve_affine(rows: &[Vector], rhs: &[Rational], ncols: usize) -> Option<(Vector, Vec<Vector>)> {
    let mut m: Matrix = rows
        .iter()
        .zip(rhs)
        .map(|(row, b)| {
            let mut r = row.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, ncols);
    for r in &m[pivots.len()..] {
        if !r[ncols].is_zero() {
            return None;
        }
    }
    let mut x0 = vec![Rational::zero(); ncols];
    for (r, &pc) in pivots.iter().enumerate() {
        x0[pc] = m[r][ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[r][f].clone();
            }
            v
        })
        .collect();
    Some((x0, basis))
}

pub fn determinant(a: &[Vector]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        let pivot = m[col][col].clone();
        det *= &pivot;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &pivot;
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).filter(|(x, y)| !x.is_zero() && !y.is_zero()).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Affine dimension of a point set (−1 encoded as `None` for the empty set).
pub fn affine_dim(points: &[Vector]) -> Option<usize> {
    let (first, rest) = points.split_first()?;
    let dirs: Vec<Vector> = rest.iter().map(|p| sub(p, first)).collect();
    Some(rank(&dirs))
}

/// Square root of a rational if it is a perfect square.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (num, den) = (r.numer(), r.denom());
    let n = num.sqrt();
    let d = den.sqrt();
    if n.clone() * &n == num && d.clone() * &d == den {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn cramer_matches_elimination() {
        let a = m(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let b = vec![int(1), int(2), int(3)];
        let refs: Vec<&[Rational]> = a.iter().map(|r| r.as_slice()).collect();
        let rhs: Vec<&Rational> = b.iter().collect();
        assert_eq!(solve_rows(&refs, &rhs), solve(&a, &b));
        let sing = m(&[&[1, 2], &[2, 4]]);
        let refs: Vec<&[Rational]> = sing.iter().map(|r| r.as_slice()).collect();
        assert_eq!(solve_rows(&refs, &[&int(1), &int(2)]), None);
        let two = m(&[&[1, 2], &[3, 4]]);
        let refs: Vec<&[Rational]> = two.iter().map(|r| r.as_slice()).collect();
        assert_eq!(solve_rows(&refs, &[&int(5), &int(6)]), solve(&two, &[int(5), int(6)]));
    }

    #[test]
    fn solve_and_det() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert_eq!(determinant(&a), int(5));
        let x = solve(&a, &[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        assert!(solve(&m(&[&[1, 2], &[2, 4]]), &[int(1), int(2)]).is_none());
    }

    #[test]
    fn nullspace_of_plane() {
        let ns = nullspace(&m(&[&[1, 1, 1]]), 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!(dot(&v, &[int(1), int(1), int(1)]), int(0));
        }
    }

    #[test]
    fn affine_solution() {
        let (x0, basis) = solve_affine(&m(&[&[1, -1, 0]]), &[int(2)], 3).unwrap();
        assert_eq!(&x0[0] - &x0[1], int(2));
        assert_eq!(basis.len(), 2);
        assert!(solve_affine(&m(&[&[1, 0], &[1, 0]]), &[int(0), int(1)], 2).is_none());
    }

    #[test]
    fn sqrt_exact_only_for_squares() {
        assert_eq!(exact_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(exact_sqrt(&int(2)), None);
    }
}
