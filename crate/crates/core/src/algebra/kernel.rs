//! Exact integer linear algebra: lattice kernels, determinants, rational
//! inverses.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::lattice::ClassVec;
use crate::error::{Error, Result};

/// Basis of the integer solutions `{v in Z^ncols : M v = 0}`.
///
/// Column-style Hermite reduction: unimodular column operations bring `M`
/// to echelon form while the same operations accumulate in `U`; the columns
/// of `U` that end up over zero columns span the kernel lattice.
pub fn integer_kernel(m: &[Vec<i64>], ncols: usize) -> Result<Vec<ClassVec>> {
    for row in m {
        if row.len() != ncols {
            return Err(Error::RankMismatch { expected: ncols, got: row.len() });
        }
    }
    let rows = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();

    // column j of `a` is a[..][j]; column j of `u` is u[..][j]
    let swap_cols = |mat: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in mat.iter_mut() {
            row.swap(i, j);
        }
    };
    // col_j -= q * col_i
    let axpy = |mat: &mut Vec<Vec<BigInt>>, j: usize, i: usize, q: &BigInt| {
        for row in mat.iter_mut() {
            let t = &row[i] * q;
            row[j] -= t;
        }
    };

    let mut col = 0usize;
    for r in 0..rows {
        if col >= ncols {
            break;
        }
        loop {
            let pivot = (col..ncols)
                .filter(|&j| !a[r][j].is_zero())
                .min_by(|&x, &y| a[r][x].abs().cmp(&a[r][y].abs()));
            let Some(p) = pivot else { break };
            if p != col {
                swap_cols(&mut a, p, col);
                swap_cols(&mut u, p, col);
            }
            let mut done = true;
            for j in (col + 1)..ncols {
                if a[r][j].is_zero() {
                    continue;
                }
                let q = num_integer::Integer::div_floor(&a[r][j], &a[r][col]);
                axpy(&mut a, j, col, &q);
                axpy(&mut u, j, col, &q);
                if !a[r][j].is_zero() {
                    done = false;
                }
            }
            if done {
                col += 1;
                break;
            }
        }
    }

    let mut basis = Vec::with_capacity(ncols - col);
    for j in col..ncols {
        let mut v = Vec::with_capacity(ncols);
        for row in &u {
            v.push(row[j].to_i64().ok_or(Error::Overflow("integer_kernel"))?);
        }
        basis.push(ClassVec(v));
    }
    Ok(basis)
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, sw);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Inverse of a square integer matrix over the rationals, `None` if singular.
pub fn rational_inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            let mut row: Vec<BigRational> = r.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            row.extend((0..n).map(|_| BigRational::zero()));
            row
        })
        .collect();
    for (i, row) in a.iter_mut().enumerate() {
        row[n + i] = BigRational::one();
    }
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Rank over the rationals.
pub fn rational_rank(m: &[Vec<i64>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let ncols = m[0].len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[rank][c];
            for j in c..ncols {
                let t = &f * &a[rank][j];
                a[i][j] -= t;
            }
        }
        rank += 1;
    }
    rank
}

/// Integer coordinates `x` with `sum_i x_i basis[i] = v`, if they exist.
pub fn solve_in_basis(basis: &[ClassVec], v: &ClassVec) -> Option<Vec<i64>> {
    let k = basis.len();
    let n = v.len();
    if k == 0 {
        return v.is_zero().then(Vec::new);
    }
    // rows: one equation per ambient coordinate, unknowns x_0..x_{k-1}
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            let mut row: Vec<BigRational> = basis.iter().map(|b| BigRational::from_integer(b.0[r].into())).collect();
            row.push(BigRational::from_integer(v.0[r].into()));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..k {
        let Some(p) = (rank..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let inv = a[rank][c].recip();
        for x in a[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..n {
            if i != rank && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..=k {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if (rank..n).any(|i| !a[i][k].is_zero()) {
        return None;
    }
    let mut x = vec![0i64; k];
    for (r, &c) in pivots.iter().enumerate() {
        let val = &a[r][k];
        if !val.is_integer() {
            return None;
        }
        x[c] = val.to_integer().to_i64()?;
    }
    Some(x)
}

/// `M v` for an integer matrix and class vector.
pub fn mat_vec(m: &[Vec<i64>], v: &ClassVec) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(&v.0).map(|(a, b)| a * b).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::lattice::chain_intersection_matrix;

    #[test]
    fn identity_has_trivial_kernel() {
        let m = vec![vec![1, 0], vec![0, 1]];
        assert!(integer_kernel(&m, 2).unwrap().is_empty());
    }

    #[test]
    fn zero_matrix_has_full_kernel() {
        let m = vec![vec![0, 0], vec![0, 0]];
        let k = integer_kernel(&m, 2).unwrap();
        assert_eq!(k.len(), 2);
        assert_eq!(determinant(&[k[0].0.clone(), k[1].0.clone()]).abs(), BigInt::one());
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 2y = 0 has kernel generated by (1,1), not (2,2)
        let k = integer_kernel(&[vec![2, -2]], 2).unwrap();
        assert_eq!(k.len(), 1);
        assert_eq!(k[0].0.iter().map(|c| c.abs()).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn chain_matrix_is_unimodular() {
        for g in 1..=8 {
            let q = chain_intersection_matrix(2 * g);
            assert_eq!(determinant(&q), BigInt::one(), "g = {g}");
            assert!(integer_kernel(&q, 2 * g).unwrap().is_empty());
        }
        // odd chains are degenerate
        assert!(determinant(&chain_intersection_matrix(3)).is_zero());
    }

    #[test]
    fn rational_inverse_round_trip() {
        let m = vec![vec![2, 1], vec![1, 1]];
        let inv = rational_inverse(&m).unwrap();
        assert_eq!(inv[0][0], BigRational::from_integer(1.into()));
        assert_eq!(inv[0][1], BigRational::from_integer((-1).into()));
        assert!(rational_inverse(&[vec![1, 2], vec![2, 4]]).is_none());
    }

    #[test]
    fn solve_in_kernel_basis() {
        let k = integer_kernel(&[vec![2, 3, 0]], 3).unwrap();
        let v = ClassVec(vec![3, -2, 5]);
        let x = solve_in_basis(&k, &v).unwrap();
        let mut back = ClassVec::zeros(3);
        for (xi, b) in x.iter().zip(&k) {
            back = &back + &b.scale(*xi);
        }
        assert_eq!(back, v);
        assert!(solve_in_basis(&k, &ClassVec(vec![1, 0, 0])).is_none());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), BigInt::from(-1));
        assert_eq!(determinant(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]), BigInt::from(6));
        assert_eq!(determinant(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]), BigInt::from(-1));
    }
}
