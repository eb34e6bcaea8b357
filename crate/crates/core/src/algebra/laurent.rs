use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::lattice::ClassVec;
use crate::error::{Error, Result};

/// Element of the integral group ring of a tracked lattice: a finite sum of
/// monomials `c * t^k` with `k` an exponent vector.
///
/// The ambient lattice is identified by its rank; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentElem {
    rank: usize,
    terms: BTreeMap<ClassVec, BigInt>,
}

impl LaurentElem {
    pub fn zero(rank: usize) -> Self {
        LaurentElem { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(ClassVec::zeros(rank), BigInt::one())
    }

    pub fn monomial(exp: ClassVec, coeff: impl Into<BigInt>) -> Self {
        let rank = exp.len();
        let mut out = Self::zero(rank);
        out.add_term(exp, coeff.into());
        out
    }

    /// `t^k`
    pub fn t(exp: ClassVec) -> Self {
        Self::monomial(exp, 1)
    }

    pub fn from_terms<I, C>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ClassVec, C)>,
        C: Into<BigInt>,
    {
        let mut out = Self::zero(rank);
        for (exp, c) in terms {
            if exp.len() != rank {
                return Err(Error::RankMismatch { expected: rank, got: exp.len() });
            }
            out.add_term(exp, c.into());
        }
        Ok(out)
    }

    /// One-variable polynomial `sum c_d t^d` from `(d, c_d)` pairs.
    pub fn univariate<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut out = Self::zero(1);
        for (d, c) in terms {
            out.add_term(ClassVec(vec![d]), BigInt::from(c));
        }
        out
    }

    fn add_term(&mut self, exp: ClassVec, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &ClassVec) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    /// Terms in canonical (descending lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&ClassVec, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> Vec<ClassVec> {
        self.terms().map(|(k, _)| k.clone()).collect()
    }

    fn same_lattice(&self, other: &Self) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::LatticeMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * k);
        }
        out
    }

    /// Group-ring product: coefficients convolve, exponents add.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_lattice(other)?;
        let mut out = Self::zero(self.rank);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.rank);
        for _ in 0..n {
            out = out.mul(self).expect("same rank");
        }
        out
    }

    /// The involution `t^k -> t^{-k}`.
    pub fn bar(&self) -> Self {
        let mut out = Self::zero(self.rank);
        for (e, c) in &self.terms {
            out.add_term(-e, c.clone());
        }
        out
    }

    /// `Some(s)` when `bar(self) == s * self` for `s = +1` or `-1`.
    /// The zero element reports `+1`.
    pub fn bar_symmetry(&self) -> Option<i8> {
        let b = self.bar();
        if b == *self {
            Some(1)
        } else if b == self.neg() {
            Some(-1)
        } else {
            None
        }
    }

    /// Push exponents through an integer linear map into a lattice of `rank`.
    pub fn map_exponents<F>(&self, rank: usize, f: F) -> Self
    where
        F: Fn(&ClassVec) -> ClassVec,
    {
        let mut out = Self::zero(rank);
        for (e, c) in &self.terms {
            let img = f(e);
            debug_assert_eq!(img.len(), rank);
            out.add_term(img, c.clone());
        }
        out
    }

    /// Keep only the terms whose exponent satisfies `pred`.
    pub fn filter<P: Fn(&ClassVec) -> bool>(&self, pred: P) -> Self {
        LaurentElem {
            rank: self.rank,
            terms: self.terms.iter().filter(|(e, _)| pred(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Sum of coefficients (evaluation at `t = 1`).
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// For a one-variable element: (min exponent, max exponent).
    pub fn degree_span(&self) -> Option<(i64, i64)> {
        if self.rank != 1 || self.terms.is_empty() {
            return None;
        }
        let lo = self.terms.keys().next().unwrap().0[0];
        let hi = self.terms.keys().next_back().unwrap().0[0];
        Some((lo, hi))
    }

    /// Canonical text form, e.g. `1*t[2,0] - 2*t[0,0] + 1*t[-2,0]`.
    pub fn to_canonical_string(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&format!("{mag}*t{e}"));
        }
        out
    }
}

impl fmt::Display for LaurentElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: ClassVec,
    coeff: CoeffJson,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffJson {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for CoeffJson {
    fn from(c: &BigInt) -> Self {
        match c.to_i64() {
            Some(v) => CoeffJson::Small(v),
            None => CoeffJson::Big(c.to_string()),
        }
    }
}

impl CoeffJson {
    fn to_bigint(&self) -> std::result::Result<BigInt, String> {
        match self {
            CoeffJson::Small(v) => Ok(BigInt::from(*v)),
            CoeffJson::Big(s) => s.parse().map_err(|_| format!("bad coefficient `{s}`")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct LaurentJson {
    #[serde(default)]
    rank: Option<usize>,
    terms: Vec<TermJson>,
}

impl Serialize for LaurentElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentJson {
            rank: Some(self.rank),
            terms: self
                .terms()
                .map(|(e, c)| TermJson { exp: e.clone(), coeff: c.into() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = LaurentJson::deserialize(d)?;
        let rank = match (raw.rank, raw.terms.first()) {
            (Some(r), _) => r,
            (None, Some(t)) => t.exp.len(),
            (None, None) => 0,
        };
        let mut terms = Vec::with_capacity(raw.terms.len());
        for t in raw.terms {
            terms.push((t.exp, t.coeff.to_bigint().map_err(D::Error::custom)?));
        }
        LaurentElem::from_terms(rank, terms).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t1(d: i64) -> ClassVec {
        ClassVec(vec![d])
    }

    #[test]
    fn binomial_square() {
        let x = LaurentElem::univariate([(1, 1), (-1, -1)]);
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq, LaurentElem::univariate([(2, 1), (0, -2), (-2, 1)]));
    }

    #[test]
    fn trinomial_square_matches_hand_convolution() {
        // (t - 1 + t^-1)^2, convolved by hand: t^2 - 2t + 3 - 2t^-1 + t^-2
        let x = LaurentElem::univariate([(1, 1), (0, -1), (-1, 1)]);
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq, LaurentElem::univariate([(2, 1), (1, -2), (0, 3), (-1, -2), (-2, 1)]));
    }

    #[test]
    fn one_is_identity() {
        let x = LaurentElem::univariate([(3, 2), (-1, 5)]);
        assert_eq!(x.mul(&LaurentElem::one(1)).unwrap(), x);
    }

    #[test]
    fn mismatched_ranks_are_rejected() {
        let a = LaurentElem::one(1);
        let b = LaurentElem::one(2);
        assert_eq!(a.mul(&b), Err(Error::LatticeMismatch { left: 1, right: 2 }));
        assert!(a.add(&b).is_err());
    }

    #[test]
    fn bar_examples() {
        let x = LaurentElem::univariate([(2, 1), (0, 3)]);
        assert_eq!(x.bar(), LaurentElem::univariate([(-2, 1), (0, 3)]));
        let s = LaurentElem::univariate([(1, 1), (0, -1), (-1, 1)]);
        assert_eq!(s.bar(), s);
        let beta = LaurentElem::from_terms(2, [(ClassVec(vec![2, 2]), 1), (ClassVec(vec![-2, -2]), -1)]).unwrap();
        assert_eq!(beta.bar(), beta.neg());
        assert_eq!(beta.bar_symmetry(), Some(-1));
    }

    #[test]
    fn canonical_text_form() {
        let x = LaurentElem::from_terms(
            2,
            [(ClassVec(vec![2, 0]), 1), (ClassVec(vec![0, 0]), -2), (ClassVec(vec![-2, 0]), 1)],
        )
        .unwrap();
        assert_eq!(x.to_canonical_string(), "1*t[2,0] - 2*t[0,0] + 1*t[-2,0]");
        assert_eq!(LaurentElem::zero(3).to_string(), "0");
        assert_eq!(LaurentElem::monomial(t1(1), -4).to_string(), "-4*t[1]");
    }

    #[test]
    fn json_form() {
        let x = LaurentElem::univariate([(1, 1), (-1, -1)]);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"rank":1,"terms":[{"exp":[1],"coeff":1},{"exp":[-1],"coeff":-1}]}"#);
        let back: LaurentElem = serde_json::from_str(r#"{"terms":[{"exp":[1],"coeff":1},{"exp":[-1],"coeff":"-1"}]}"#).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let x = LaurentElem::univariate([(1, 1), (1, -1), (0, 0)]);
        assert!(x.is_zero());
    }
}
