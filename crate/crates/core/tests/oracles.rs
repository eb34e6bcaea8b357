//! Independent brute-force oracles for the torus-knot Alexander polynomials
//! and the adjunction enumeration.

#![allow(clippy::needless_range_loop)]

mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use swcalc::algebra::{alexander_torus_knot, ClassVec};
use swcalc::basic_classes::{
    builtin_scenario, enumerate_candidates, scenario_y2g, scenario_yng, scenario_yprime, scenario_yprime_neg1,
    AdjunctionScenario, Enumeration,
};
use swcalc::Error;

use common::oracle_alexander;

#[test]
fn alexander_matches_seifert_oracle() {
    let mut checked = 0;
    for p in -35i64..=35 {
        for q in -35i64..=35 {
            if p == 0 || q == 0 || (p * q).abs() > 35 || p.gcd(&q) != 1 {
                continue;
            }
            if p.abs() == 1 || q.abs() == 1 {
                assert!(alexander_torus_knot(p, q).is_err());
                continue;
            }
            let expected = oracle_alexander(p, q);
            let k = alexander_torus_knot(p, q).unwrap_or_else(|e| panic!("T({p},{q}): {e}"));
            let mut got: Vec<(i64, BigInt)> = k.alexander.terms().map(|(e, c)| (e.0[0], c.clone())).collect();
            got.sort();
            let mut exp = expected.clone();
            exp.sort();
            assert_eq!(got, exp, "T({p},{q})");
            let g = ((p.abs() - 1) * (q.abs() - 1) / 2) as u32;
            assert_eq!(k.genus, g, "genus of T({p},{q})");
            checked += 1;
        }
    }
    assert!(checked >= 40, "{checked}");
}

#[test]
fn oracle_sanity() {
    assert_eq!(oracle_alexander(3, 2), vec![(-1, BigInt::one()), (0, -BigInt::one()), (1, BigInt::one())]);
}

// ---------- adjunction enumeration ----------

fn solve_rational(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(p, c);
        let piv = a[c][c].clone();
        for x in a[c].iter_mut() {
            *x = &*x / &piv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * n {
                    let d = &f * &a[c][k];
                    a[r][k] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Incremental row echelon form; `insert` reports whether the row was independent.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, Vec<BigRational>)>,
}

impl Echelon {
    fn insert(&mut self, row: &[i64]) -> bool {
        let mut v: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        for (p, r) in &self.rows {
            if !v[*p].is_zero() {
                let f = &v[*p] / &r[*p];
                for (x, y) in v.iter_mut().zip(r) {
                    *x -= &f * y;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

enum Oracle {
    Empty,
    Classes(Vec<Vec<i64>>),
    Unbounded,
    TooBig,
}

/// Scan the values `k . S` over a spanning set of adjunction surfaces and
/// solve back for `k`.
fn oracle_classes(s: &AdjunctionScenario) -> Oracle {
    let r = s.lattice.rank();
    let dual = |c: &ClassVec| s.lattice.dual(c);
    let mut constraints: Vec<(Vec<i64>, i64)> = Vec::new();
    for surf in &s.surfaces {
        if surf.genus == 0 {
            if surf.self_int >= 0 && surf.essential {
                return Oracle::Empty;
            }
            continue;
        }
        if surf.self_int < 0 {
            continue;
        }
        let b = 2 * surf.genus as i64 - 2 - surf.self_int;
        if b < 0 {
            return Oracle::Empty;
        }
        constraints.push((dual(&surf.cls), b));
    }
    let mut ech = Echelon::default();
    let chosen: Vec<usize> = (0..constraints.len()).filter(|&i| ech.insert(&constraints[i].0)).collect();
    if chosen.len() < r {
        return Oracle::Unbounded;
    }
    let m: Vec<Vec<i64>> = chosen.iter().map(|&j| constraints[j].0.clone()).collect();
    let inv = solve_rational(&m).expect("independent rows");
    let denom = inv.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scaled: Vec<Vec<i128>> = inv
        .iter()
        .map(|row| row.iter().map(|x| i128::try_from((x * BigRational::from_integer(denom.clone())).to_integer()).unwrap()).collect())
        .collect();
    let denom = i128::try_from(denom).unwrap();
    let bounds: Vec<i64> = chosen.iter().map(|&j| constraints[j].1).collect();
    let size: u128 = bounds.iter().map(|b| (2 * b + 1) as u128).product();
    if size > 20_000 {
        return Oracle::TooBig;
    }
    let target = s.simple_type_square();
    let mut y: Vec<i64> = bounds.iter().map(|b| -b).collect();
    let mut out = Vec::new();
    loop {
        let k: Option<Vec<i64>> = (0..r)
            .map(|i| {
                let v: i128 = (0..r).map(|j| scaled[i][j] * y[j] as i128).sum();
                (v % denom == 0).then(|| (v / denom) as i64)
            })
            .collect();
        if let Some(k) = k {
            let kc = ClassVec(k.clone());
            let ok = constraints.iter().all(|(row, b)| row.iter().zip(&k).map(|(a, x)| a * x).sum::<i64>().abs() <= *b);
            if ok && s.lattice.square(&kc) == target {
                out.push(k);
            }
        }
        let mut i = 0;
        loop {
            if i == r {
                out.sort();
                return if out.is_empty() { Oracle::Empty } else { Oracle::Classes(out) };
            }
            if y[i] < bounds[i] {
                y[i] += 1;
                break;
            }
            y[i] = -bounds[i];
            i += 1;
        }
    }
}

fn compare(s: &AdjunctionScenario) -> bool {
    let got = enumerate_candidates(s);
    match oracle_classes(s) {
        Oracle::TooBig => false,
        Oracle::Unbounded => {
            assert!(matches!(got, Err(Error::Unbounded(_))), "{}: expected Unbounded, got {got:?}", s.name);
            true
        }
        Oracle::Empty => {
            assert!(got.unwrap().is_empty(), "{}: expected no classes", s.name);
            true
        }
        Oracle::Classes(expected) => {
            let mut got: Vec<Vec<i64>> = match got.unwrap() {
                Enumeration::Candidates { classes } => classes.into_iter().map(|c| c.0).collect(),
                Enumeration::Vanishes { reason } => panic!("{}: vanishes ({reason}) but oracle finds classes", s.name),
            };
            got.sort();
            assert_eq!(got, expected, "{}", s.name);
            true
        }
    }
}

#[test]
fn y2g_matches_oracle() {
    for g in 1..=5 {
        assert!(compare(&scenario_y2g(g).unwrap()), "Y2g({g}) not checked");
    }
}

#[test]
fn yng_matches_oracle() {
    let mut checked = 0;
    for n in 2..=4 {
        for g in 2..=4 {
            checked += compare(&scenario_yng(n, g).unwrap()) as usize;
        }
    }
    assert!(checked >= 4, "only {checked} Yng scenarios fit the oracle");
}

#[test]
fn yprime_matches_oracle() {
    let mut checked = 0;
    for g in 1..=5u32 {
        for ks in [vec![1u32], vec![2], vec![1, 1], vec![1, 2], vec![1, 1, 1]] {
            if let Ok(s) = scenario_yprime(g, &ks) {
                checked += compare(&s) as usize;
            }
            if let Ok(s) = scenario_yprime_neg1(g, &ks) {
                checked += compare(&s) as usize;
            }
        }
    }
    assert!(checked >= 10, "only {checked} Y' scenarios fit the oracle");
}

#[test]
fn unbounded_scenario_agrees() {
    let mut s = builtin_scenario("Y2g(2)").unwrap();
    s.surfaces.retain(|x| x.label != "Sigma");
    assert!(compare(&s));
}
