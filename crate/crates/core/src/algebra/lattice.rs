#![allow(clippy::needless_range_loop)]

use std::collections::HashSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Integer coordinate vector of a homology class in a tracked lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassVec(pub Vec<i64>);

impl ClassVec {
    pub fn zeros(rank: usize) -> Self {
        ClassVec(vec![0; rank])
    }

    pub fn unit(rank: usize, index: usize) -> Self {
        let mut v = vec![0; rank];
        v[index] = 1;
        ClassVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn scale(&self, k: i64) -> ClassVec {
        ClassVec(self.0.iter().map(|c| c * k).collect())
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }
}

impl Add for &ClassVec {
    type Output = ClassVec;
    fn add(self, rhs: &ClassVec) -> ClassVec {
        debug_assert_eq!(self.len(), rhs.len());
        ClassVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &ClassVec {
    type Output = ClassVec;
    fn sub(self, rhs: &ClassVec) -> ClassVec {
        debug_assert_eq!(self.len(), rhs.len());
        ClassVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &ClassVec {
    type Output = ClassVec;
    fn neg(self) -> ClassVec {
        ClassVec(self.0.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for ClassVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A free abelian group with named basis and a symmetric integer pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntLattice {
    rank: usize,
    basis_names: Vec<String>,
    gram: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct RawLattice {
    #[serde(default)]
    rank: Option<usize>,
    basis_names: Vec<String>,
    gram: Vec<Vec<i64>>,
}

impl<'de> Deserialize<'de> for IntLattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawLattice::deserialize(d)?;
        if let Some(r) = raw.rank {
            if r != raw.basis_names.len() {
                return Err(serde::de::Error::custom(format!(
                    "rank {r} does not match {} basis names",
                    raw.basis_names.len()
                )));
            }
        }
        IntLattice::new(raw.basis_names, raw.gram).map_err(serde::de::Error::custom)
    }
}

impl IntLattice {
    pub fn new(basis_names: Vec<String>, gram: Vec<Vec<i64>>) -> Result<Self> {
        let rank = basis_names.len();
        if gram.len() != rank || gram.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidLattice(format!("gram matrix is not {rank}x{rank}")));
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!(
                        "gram not symmetric at ({i},{j}): {} vs {}",
                        gram[i][j], gram[j][i]
                    )));
                }
            }
        }
        let mut seen = HashSet::new();
        for n in &basis_names {
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidLattice(format!("duplicate basis name `{n}`")));
            }
        }
        Ok(IntLattice { rank, basis_names, gram })
    }

    pub fn empty() -> Self {
        IntLattice { rank: 0, basis_names: vec![], gram: vec![] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    pub fn unit(&self, index: usize) -> ClassVec {
        ClassVec::unit(self.rank, index)
    }

    /// Basis vector by name.
    pub fn class(&self, name: &str) -> Result<ClassVec> {
        self.index_of(name)
            .map(|i| self.unit(i))
            .ok_or_else(|| Error::InvalidLattice(format!("no basis element `{name}`")))
    }

    pub fn check(&self, v: &ClassVec) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::RankMismatch { expected: self.rank, got: v.len() });
        }
        Ok(())
    }

    /// The pairing `a . b`.
    pub fn dot(&self, a: &ClassVec, b: &ClassVec) -> i64 {
        debug_assert_eq!(a.len(), self.rank);
        debug_assert_eq!(b.len(), self.rank);
        let mut acc: i128 = 0;
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                acc += ai as i128 * self.gram[i][j] as i128 * bj as i128;
            }
        }
        i64::try_from(acc).expect("intersection number overflows i64")
    }

    pub fn square(&self, a: &ClassVec) -> i64 {
        self.dot(a, a)
    }

    /// Row vector `G a`, i.e. the functional `x -> x . a` in coordinates.
    pub fn dual(&self, a: &ClassVec) -> Vec<i64> {
        (0..self.rank)
            .map(|i| self.dot(&self.unit(i), a))
            .collect()
    }

    pub fn rename(&mut self, old: &str, new: &str) -> Result<()> {
        let i = self
            .index_of(old)
            .ok_or_else(|| Error::InvalidLattice(format!("no basis element `{old}`")))?;
        if old != new && self.index_of(new).is_some() {
            return Err(Error::InvalidLattice(format!("basis name `{new}` already used")));
        }
        self.basis_names[i] = new.to_string();
        Ok(())
    }

    /// Human readable form of a class, e.g. `2*S + 2*Sigma`.
    pub fn describe(&self, v: &ClassVec) -> String {
        let mut out = String::new();
        for (c, name) in v.0.iter().zip(&self.basis_names) {
            if *c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if out.is_empty() {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if *c < 0 { " - " } else { " + " });
            }
            if mag != 1 {
                out.push_str(&format!("{mag}*"));
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// The `2g x 2g` skew matrix of a chain of curves: `a_i . a_{i+1} = 1`.
pub fn chain_intersection_matrix(size: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0; size]; size];
    for i in 0..size.saturating_sub(1) {
        m[i][i + 1] = 1;
        m[i + 1][i] = -1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyperbolic() -> IntLattice {
        IntLattice::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn rejects_asymmetric_gram() {
        let err = IntLattice::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![2, 0]]);
        assert!(matches!(err, Err(Error::InvalidLattice(_))));
    }

    #[test]
    fn rejects_duplicate_names() {
        let err = IntLattice::new(vec!["a".into(), "a".into()], vec![vec![0, 0], vec![0, 0]]);
        assert!(matches!(err, Err(Error::InvalidLattice(_))));
    }

    #[test]
    fn pairing_and_description() {
        let l = hyperbolic();
        let v = ClassVec(vec![2, 3]);
        assert_eq!(l.square(&v), 12);
        assert_eq!(l.describe(&v), "2*a + 3*b");
        assert_eq!(l.describe(&ClassVec(vec![-1, 0])), "-a");
        assert_eq!(l.dual(&ClassVec(vec![1, 0])), vec![0, 1]);
    }

    #[test]
    fn chain_matrix_is_skew() {
        let m = chain_intersection_matrix(4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m[i][j], -m[j][i]);
            }
        }
        assert_eq!(m[0][1], 1);
        assert_eq!(m[0][2], 0);
    }

    #[test]
    fn json_round_trip_validates() {
        let l = hyperbolic();
        let s = serde_json::to_string(&l).unwrap();
        assert_eq!(s, r#"{"rank":2,"basis_names":["a","b"],"gram":[[0,1],[1,0]]}"#);
        let back: IntLattice = serde_json::from_str(&s).unwrap();
        assert_eq!(back, l);
        let bad = r#"{"basis_names":["a","b"],"gram":[[0,1],[0,0]]}"#;
        assert!(serde_json::from_str::<IntLattice>(bad).is_err());
    }
}
