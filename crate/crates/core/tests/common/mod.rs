#![allow(dead_code)]
//! Shared oracles and fixtures for the integration tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use swcalc::algebra::{alexander_torus_knot, FiberedKnot};
use swcalc::constructions::*;
use swcalc::lefschetz::build_mng;
use swcalc::manifold::FourManifold;

// ---------- Seifert matrices ----------

/// Seifert matrix of the `A_{n-1}` singularity link: 1 on the diagonal, -1 above.
fn a_form(n: usize) -> Vec<Vec<i64>> {
    let k = n - 1;
    (0..k).map(|i| (0..k).map(|j| if i == j { 1 } else if j == i + 1 { -1 } else { 0 }).collect()).collect()
}

fn kron(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let (p, q) = (a.len(), b.len());
    let mut out = vec![vec![0; p * q]; p * q];
    for i in 0..p {
        for j in 0..p {
            for k in 0..q {
                for l in 0..q {
                    out[i * q + k][j * q + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// Fraction-free (Bareiss) determinant.
fn det_big(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else { return BigInt::zero() };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            for k in c + 1..n {
                let v = (&m[r][k] * &m[c][c] - &m[r][c] * &m[c][k]) / &prev;
                m[r][k] = v;
            }
        }
        prev = m[c][c].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// Coefficients of `det(V - t V^T)` (ascending powers of `t`) by evaluation
/// at `0..=n` and Newton interpolation.
fn seifert_polynomial(v: &[Vec<i64>]) -> Vec<BigInt> {
    let n = v.len();
    let half = n as i64 / 2;
    let xs: Vec<i64> = (-half..=n as i64 - half).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|&t| {
            let m = (0..n)
                .map(|i| (0..n).map(|j| BigInt::from(v[i][j] - t * v[j][i])).collect())
                .collect();
            BigRational::from_integer(det_big(m))
        })
        .collect();
    // divided differences
    let mut dd = ys.clone();
    for level in 1..=n {
        for i in (level..=n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from_integer(BigInt::from(xs[i] - xs[i - level]));
        }
    }
    // expand Newton form
    let mut poly = vec![BigRational::zero(); n + 1];
    for i in (0..=n).rev() {
        // poly = poly * (t - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); n + 1];
        for (d, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if d < n {
                next[d + 1] += c;
            }
            next[d] -= c * BigRational::from_integer(BigInt::from(xs[i]));
        }
        next[0] += &dd[i];
        poly = next;
    }
    poly.into_iter()
        .map(|c| {
            assert!(c.is_integer(), "non-integral coefficient {c}");
            c.to_integer()
        })
        .collect()
}

/// Normalized oracle: symmetric exponents, value 1 at `t = 1`, as `(exp, coeff)`.
pub fn oracle_alexander(p: i64, q: i64) -> Vec<(i64, BigInt)> {
    let (a, b) = (p.unsigned_abs() as usize, q.unsigned_abs() as usize);
    if a <= 1 || b <= 1 {
        return vec![(0, BigInt::one())];
    }
    let v = kron(&a_form(a), &a_form(b));
    let mut c = seifert_polynomial(&v);
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    let low = c.iter().position(|x| !x.is_zero()).unwrap();
    let span = c.len() - 1 - low;
    assert!(span.is_multiple_of(2));
    let sum: BigInt = c.iter().sum();
    let sign = if sum.is_negative() { -BigInt::one() } else { BigInt::one() };
    assert_eq!(sum.abs(), BigInt::one(), "Delta(1) = {sum} for T({p},{q})");
    let mid = (low + span / 2) as i64;
    c.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(d, x)| (d as i64 - mid, x * &sign))
        .collect()
}

pub fn knots() -> Vec<FiberedKnot> {
    let mut ks = vec![FiberedKnot::trefoil(), FiberedKnot::figure_eight()];
    ks.push(alexander_torus_knot(5, 2).unwrap());
    ks.push(alexander_torus_knot(4, 3).unwrap());
    ks
}

pub fn zoo() -> Vec<FourManifold> {
    let mut out = Vec::new();
    for n in 1..=5 {
        out.push(build_en(n).unwrap());
    }
    out.push(build_k3().unwrap());
    for k in knots() {
        out.push(build_k3_knot_surgery(&k).unwrap());
        out.push(knot_surgery(&build_en(3).unwrap(), "T", &k).unwrap());
    }
    for m in 1..=3 {
        out.push(build_horikawa(m).unwrap());
    }
    for n in 2..=4 {
        for g in 1..=4 {
            out.push(build_y(n, g).unwrap());
            out.push(build_zmg(n - 1, g).unwrap());
        }
    }
    for (g, ks) in [(1u32, vec![1u32]), (2, vec![1]), (2, vec![1, 2]), (3, vec![2])] {
        out.push(build_yprime(g, &ks).unwrap());
        let sk: u32 = ks.iter().sum();
        let x = build_en(2 + sk).unwrap();
        out.push(build_zprime(&x, "Sigma", g, &ks, &ComplementarityHypothesis::holds("elliptic")).unwrap());
    }
    for n in 1..=3 {
        for g in 1..=3 {
            let k = standard_knot(g).unwrap();
            out.push(build_y3(n, &k, &k).unwrap());
        }
    }
    out.push(build_mng(2, 1).unwrap());
    out
}

