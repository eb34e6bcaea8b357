use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::lattice::{ClassVec, IntLattice};
use super::laurent::LaurentElem;
use crate::error::{Error, Result};

/// A fibered knot, remembered only through its genus and its symmetrized
/// Alexander polynomial (one variable, stored as a rank-1 `LaurentElem`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberedKnot {
    pub name: String,
    pub genus: u32,
    pub alexander: LaurentElem,
}

#[derive(Deserialize)]
struct RawKnot {
    name: String,
    #[serde(default)]
    genus: Option<u32>,
    alexander: LaurentElem,
}

impl<'de> Deserialize<'de> for FiberedKnot {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawKnot::deserialize(d)?;
        let k = FiberedKnot::new(raw.name, raw.alexander).map_err(serde::de::Error::custom)?;
        if let Some(g) = raw.genus {
            if g != k.genus {
                return Err(serde::de::Error::custom(format!(
                    "stated genus {g} but Alexander polynomial has degree {}",
                    k.genus
                )));
            }
        }
        Ok(k)
    }
}

impl FiberedKnot {
    /// Validates and normalizes: the polynomial must be one-variable,
    /// symmetric, with `|Delta(1)| = 1` and monic top coefficient. A global
    /// sign is flipped so that `Delta(1) = 1`.
    pub fn new(name: impl Into<String>, alexander: LaurentElem) -> Result<Self> {
        let name = name.into();
        if alexander.rank() != 1 {
            return Err(Error::InvalidKnot(format!(
                "{name}: Alexander polynomial must be one-variable, got rank {}",
                alexander.rank()
            )));
        }
        if alexander.bar() != alexander {
            return Err(Error::InvalidKnot(format!("{name}: Alexander polynomial is not symmetric")));
        }
        let mut alexander = alexander;
        let at_one = alexander.augmentation();
        if at_one == -BigInt::one() {
            alexander = alexander.neg();
        } else if !at_one.is_one() {
            return Err(Error::InvalidKnot(format!("{name}: Delta(1) = {at_one}, expected +-1")));
        }
        let (_, hi) = alexander.degree_span().expect("nonzero after augmentation check");
        let top = alexander.coeff(&ClassVec(vec![hi]));
        if top.abs() != BigInt::one() {
            return Err(Error::InvalidKnot(format!(
                "{name}: leading coefficient {top} is not +-1, knot cannot be fibered"
            )));
        }
        Ok(FiberedKnot { name, genus: hi as u32, alexander })
    }

    pub fn unknot() -> Self {
        FiberedKnot { name: "unknot".into(), genus: 0, alexander: LaurentElem::one(1) }
    }

    pub fn trefoil() -> Self {
        alexander_torus_knot(3, 2).expect("trefoil")
    }

    pub fn figure_eight() -> Self {
        FiberedKnot::new("figure-eight", LaurentElem::univariate([(1, -1), (0, 3), (-1, -1)])).expect("figure-eight")
    }

    pub fn is_unknot_polynomial(&self) -> bool {
        self.alexander == LaurentElem::one(1)
    }

    /// `Delta_K(t^2)` in the group ring of `target`, with `t = t_class`.
    pub fn substitute_square(&self, class: &ClassVec) -> LaurentElem {
        let rank = class.len();
        self.alexander.map_exponents(rank, |e| class.scale(2 * e.0[0]))
    }
}

/// Parses `T(p,q)`, `trefoil`, `figure-eight`, `unknot`.
pub fn knot_by_name(name: &str) -> Result<FiberedKnot> {
    let n = name.trim();
    match n.to_ascii_lowercase().as_str() {
        "unknot" => return Ok(FiberedKnot::unknot()),
        "trefoil" => return Ok(FiberedKnot::trefoil()),
        "figure-eight" | "figure8" | "4_1" => return Ok(FiberedKnot::figure_eight()),
        _ => {}
    }
    let inner = n
        .strip_prefix("T(")
        .or_else(|| n.strip_prefix("t("))
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::InvalidKnot(format!("unrecognized knot `{n}`")))?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Error::InvalidKnot(format!("unrecognized knot `{n}`")));
    }
    let p: i64 = parts[0].parse().map_err(|_| Error::InvalidKnot(format!("bad parameter in `{n}`")))?;
    let q: i64 = parts[1].parse().map_err(|_| Error::InvalidKnot(format!("bad parameter in `{n}`")))?;
    alexander_torus_knot(p, q)
}

// exact division of integer polynomials (ascending coefficients), divisor monic
fn poly_div_exact(num: &[i64], den: &[i64]) -> Option<Vec<i64>> {
    let mut rem = num.to_vec();
    let dl = den.len();
    if dl == 0 || *den.last()? != 1 || rem.len() < dl {
        return None;
    }
    let mut quot = vec![0i64; rem.len() - dl + 1];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl - 1];
        quot[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    rem.iter().all(|&c| c == 0).then_some(quot)
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// t^n - 1
fn cyclo_factor(n: usize) -> Vec<i64> {
    let mut v = vec![0i64; n + 1];
    v[0] = -1;
    v[n] = 1;
    v
}

/// Symmetrized Alexander polynomial of the `(p,q)` torus knot,
/// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))` shifted to be symmetric.
/// Signs of `p`, `q` only select the mirror image, which has the same
/// polynomial.
pub fn alexander_torus_knot(p: i64, q: i64) -> Result<FiberedKnot> {
    let (a, b) = (p.unsigned_abs(), q.unsigned_abs());
    if a < 2 || b < 2 {
        return Err(Error::InvalidKnot(format!("T({p},{q}): need |p|, |q| >= 2")));
    }
    if a.gcd(&b) != 1 {
        return Err(Error::InvalidKnot(format!("T({p},{q}): parameters are not coprime")));
    }
    let ab = a.checked_mul(b).filter(|&x| x <= 1 << 20).ok_or(Error::Overflow("alexander_torus_knot"))?;
    let num = poly_mul(&cyclo_factor(ab as usize), &cyclo_factor(1));
    let den = poly_mul(&cyclo_factor(a as usize), &cyclo_factor(b as usize));
    let quot = poly_div_exact(&num, &den).expect("torus knot quotient is exact");
    let degree = quot.len() as i64 - 1;
    let genus = degree / 2;
    let alex = LaurentElem::univariate(quot.iter().enumerate().map(|(i, &c)| (i as i64 - genus, c)));
    let k = FiberedKnot::new(format!("T({p},{q})"), alex)?;
    debug_assert_eq!(k.genus as u64, (a - 1) * (b - 1) / 2);
    Ok(k)
}

/// `Delta_K(t^2)` with `t` the basis class `torus_class_index` of `target`.
pub fn alexander_sub_square(k: &FiberedKnot, target: &IntLattice, torus_class_index: usize) -> Result<LaurentElem> {
    if torus_class_index >= target.rank() {
        return Err(Error::IndexOutOfRange { index: torus_class_index, rank: target.rank() });
    }
    Ok(k.substitute_square(&target.unit(torus_class_index)))
}

/// Top coefficient of a one-variable polynomial, as `i64`.
pub fn leading_coefficient(p: &LaurentElem) -> Option<i64> {
    let (_, hi) = p.degree_span()?;
    p.coeff(&ClassVec(vec![hi])).to_i64()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line() -> IntLattice {
        IntLattice::new(vec!["T".into()], vec![vec![0]]).unwrap()
    }

    #[test]
    fn trefoil_and_cinquefoil() {
        let t = alexander_torus_knot(3, 2).unwrap();
        assert_eq!(t.genus, 1);
        assert_eq!(t.alexander, LaurentElem::univariate([(1, 1), (0, -1), (-1, 1)]));
        let c = alexander_torus_knot(5, 2).unwrap();
        assert_eq!(c.genus, 2);
        assert_eq!(c.alexander, LaurentElem::univariate([(2, 1), (1, -1), (0, 1), (-1, -1), (-2, 1)]));
    }

    #[test]
    fn mirror_has_same_polynomial() {
        assert_eq!(alexander_torus_knot(-3, 2).unwrap().alexander, alexander_torus_knot(3, 2).unwrap().alexander);
        assert_eq!(alexander_torus_knot(7, -2).unwrap().alexander, alexander_torus_knot(7, 2).unwrap().alexander);
    }

    #[test]
    fn rejects_degenerate_parameters() {
        assert!(alexander_torus_knot(4, 2).is_err());
        assert!(alexander_torus_knot(1, 5).is_err());
        assert!(alexander_torus_knot(0, 3).is_err());
    }

    #[test]
    fn odd_two_torus_knots_have_expected_genus() {
        for g in 1..=10i64 {
            let k = alexander_torus_knot(2 * g + 1, 2).unwrap();
            assert_eq!(k.genus as i64, g);
            assert_eq!(k.alexander.degree_span(), Some((-g, g)));
            assert!(k.alexander.augmentation().is_one());
            assert_eq!(k.alexander.bar(), k.alexander);
        }
    }

    #[test]
    fn substitution() {
        let l = line();
        let t = FiberedKnot::trefoil();
        assert_eq!(
            alexander_sub_square(&t, &l, 0).unwrap(),
            LaurentElem::univariate([(2, 1), (0, -1), (-2, 1)])
        );
        assert_eq!(alexander_sub_square(&FiberedKnot::unknot(), &l, 0).unwrap(), LaurentElem::one(1));
        let c = alexander_torus_knot(5, 2).unwrap();
        assert_eq!(
            alexander_sub_square(&c, &l, 0).unwrap(),
            LaurentElem::univariate([(4, 1), (2, -1), (0, 1), (-2, -1), (-4, 1)])
        );
        assert!(matches!(alexander_sub_square(&t, &l, 3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn validation() {
        // not symmetric
        assert!(FiberedKnot::new("x", LaurentElem::univariate([(1, 1), (0, -1)])).is_err());
        // Delta(1) = 3
        assert!(FiberedKnot::new("x", LaurentElem::univariate([(1, 1), (0, 1), (-1, 1)])).is_err());
        // not monic: 2t - 3 + 2t^-1 has Delta(1) = 1
        assert!(FiberedKnot::new("x", LaurentElem::univariate([(1, 2), (0, -3), (-1, 2)])).is_err());
        // sign normalization
        let k = FiberedKnot::new("neg", LaurentElem::univariate([(1, -1), (0, 1), (-1, -1)])).unwrap();
        assert!(k.alexander.augmentation().is_one());
        assert_eq!(FiberedKnot::figure_eight().genus, 1);
    }

    #[test]
    fn names() {
        assert_eq!(knot_by_name("T(5,2)").unwrap().genus, 2);
        assert_eq!(knot_by_name("trefoil").unwrap(), FiberedKnot::trefoil());
        assert!(knot_by_name("T(4,2)").is_err());
        assert!(knot_by_name("granny").is_err());
    }
}
