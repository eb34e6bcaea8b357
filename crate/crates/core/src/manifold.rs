//! Invariant records for smooth closed 4-manifolds.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{ClassVec, IntLattice, LaurentElem};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connectivity {
    Asserted,
    False,
    Unknown,
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Unknown => "unknown",
        })
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Connectivity::Asserted => "asserted",
            Connectivity::False => "false",
            Connectivity::Unknown => "unknown",
        })
    }
}

/// What is known about the Seiberg-Witten invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SWValue {
    Exact {
        terms: LaurentElem,
    },
    /// Only the part with `|k . surface| = max_degree` is known.
    MaxOnly {
        surface: ClassVec,
        max_degree: i64,
        terms: LaurentElem,
        #[serde(default)]
        rim_ambiguous: bool,
    },
    ExactWithUnknownConstant {
        terms: LaurentElem,
        constant_name: String,
    },
    /// Unexpanded quotient, e.g. `Delta_K(t^2) / (t - t^-1)^2` for `S^1 x M_K`.
    Rational {
        numerator: LaurentElem,
        denominator: LaurentElem,
    },
    Zero,
    Unknown,
}

impl SWValue {
    pub fn kind(&self) -> &'static str {
        match self {
            SWValue::Exact { .. } => "exact",
            SWValue::MaxOnly { .. } => "max_only",
            SWValue::ExactWithUnknownConstant { .. } => "exact_with_unknown_constant",
            SWValue::Rational { .. } => "rational",
            SWValue::Zero => "zero",
            SWValue::Unknown => "unknown",
        }
    }

    /// The explicitly known terms, if any.
    pub fn known_terms(&self) -> Option<&LaurentElem> {
        match self {
            SWValue::Exact { terms }
            | SWValue::MaxOnly { terms, .. }
            | SWValue::ExactWithUnknownConstant { terms, .. } => Some(terms),
            _ => None,
        }
    }

    /// Coefficient at `k` when it is determined without a lattice (max-part
    /// values need one, see `FourManifold::sw_coefficient`).
    pub fn coefficient(&self, k: &ClassVec) -> Option<BigInt> {
        match self {
            SWValue::Exact { terms } => Some(terms.coeff(k)),
            SWValue::Zero => Some(BigInt::zero()),
            SWValue::ExactWithUnknownConstant { terms, .. } => {
                let c = terms.coeff(k);
                (!c.is_zero()).then_some(c)
            }
            _ => None,
        }
    }

    pub fn scale(&self, k: &BigInt) -> SWValue {
        match self {
            SWValue::Exact { terms } => SWValue::Exact { terms: terms.scale(k) },
            SWValue::MaxOnly { surface, max_degree, terms, rim_ambiguous } => SWValue::MaxOnly {
                surface: surface.clone(),
                max_degree: *max_degree,
                terms: terms.scale(k),
                rim_ambiguous: *rim_ambiguous,
            },
            SWValue::ExactWithUnknownConstant { terms, constant_name } => SWValue::ExactWithUnknownConstant {
                terms: terms.scale(k),
                constant_name: constant_name.clone(),
            },
            SWValue::Zero => SWValue::Zero,
            _ if k.is_zero() => SWValue::Zero,
            other => other.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackedSurface {
    pub label: String,
    pub cls: ClassVec,
    pub genus: u32,
    pub self_int: i64,
    #[serde(default)]
    pub essential: bool,
    #[serde(default)]
    pub symplectic: bool,
    /// `pi_1` of the complement of this surface is trivial.
    #[serde(default)]
    pub complement_simply_connected: bool,
    /// The surface's `pi_1` normally generates `pi_1` of the ambient manifold.
    #[serde(default)]
    pub normally_generates: bool,
}

impl TrackedSurface {
    pub fn new(label: impl Into<String>, cls: ClassVec, genus: u32, self_int: i64) -> Self {
        TrackedSurface {
            label: label.into(),
            cls,
            genus,
            self_int,
            essential: false,
            symplectic: false,
            complement_simply_connected: false,
            normally_generates: false,
        }
    }

    pub fn symplectic(mut self) -> Self {
        self.symplectic = true;
        self
    }

    pub fn essential(mut self) -> Self {
        self.essential = true;
        self
    }
}

/// Bookkeeping for the nullhomologous tori available for torus surgery.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgerySite {
    pub g: u32,
    pub ks: Vec<u32>,
    pub available: u32,
    #[serde(default)]
    pub applied: Vec<u32>,
    #[serde(default)]
    pub base_name: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FourManifold {
    pub name: String,
    pub e: i64,
    pub sign: i64,
    pub b1: Option<u32>,
    pub simply_connected: Connectivity,
    pub parity: Parity,
    pub spin: Tri,
    pub symplectic: Tri,
    pub lattice: IntLattice,
    pub sw: SWValue,
    pub canonical: Option<ClassVec>,
    pub surfaces: Vec<TrackedSurface>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surgery_site: Option<SurgerySite>,
    #[serde(default, skip_serializing_if = "is_zero_u32")]
    pub junctions: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

fn is_zero_u32(x: &u32) -> bool {
    *x == 0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Homeo {
    Homeomorphic,
    Distinct,
    Undecidable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomeoVerdict {
    pub verdict: Homeo,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "lowercase")]
pub enum TaubesVerdict {
    Consistent,
    Obstructed(String),
    Inapplicable(String),
}

impl FourManifold {
    /// A record with no tracked classes and unknown SW.
    pub fn bare(name: impl Into<String>, e: i64, sign: i64) -> Self {
        FourManifold {
            name: name.into(),
            e,
            sign,
            b1: None,
            simply_connected: Connectivity::Unknown,
            parity: Parity::Unknown,
            spin: Tri::Unknown,
            symplectic: Tri::Unknown,
            lattice: IntLattice::empty(),
            sw: SWValue::Unknown,
            canonical: None,
            surfaces: vec![],
            family: None,
            surgery_site: None,
            junctions: 0,
            notes: vec![],
        }
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn surface(&self, label: &str) -> Result<&TrackedSurface> {
        self.surfaces
            .iter()
            .find(|s| s.label == label)
            .ok_or_else(|| Error::UnknownSurface { label: label.into(), manifold: self.name.clone() })
    }

    pub fn surface_mut(&mut self, label: &str) -> Result<&mut TrackedSurface> {
        let name = self.name.clone();
        self.surfaces
            .iter_mut()
            .find(|s| s.label == label)
            .ok_or(Error::UnknownSurface { label: label.into(), manifold: name })
    }

    /// `chi = (e + sign) / 4`.
    pub fn quarter_characteristic(&self) -> Result<i64> {
        quarter_characteristic(self.e, self.sign)
    }

    /// `c_1^2 = 2e + 3 sign`.
    pub fn c1_squared(&self) -> i64 {
        c1_squared(self.e, self.sign)
    }

    pub fn b2(&self) -> Option<i64> {
        self.b1.map(|b1| self.e - 2 + 2 * b1 as i64)
    }

    pub fn b2_plus(&self) -> Option<i64> {
        self.b2().map(|b2| (b2 + self.sign) / 2)
    }

    pub fn b2_minus(&self) -> Option<i64> {
        self.b2().map(|b2| (b2 - self.sign) / 2)
    }

    /// Parity with the spin rule applied (spin forces an even form).
    pub fn effective_parity(&self) -> Parity {
        match (self.parity, self.spin) {
            (Parity::Unknown, Tri::Yes) => Parity::Even,
            (p, _) => p,
        }
    }

    /// Spin with the parity rule applied (an odd form is never spin).
    pub fn effective_spin(&self) -> Tri {
        match (self.spin, self.parity) {
            (Tri::Unknown, Parity::Odd) => Tri::No,
            (s, _) => s,
        }
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    /// Renames a lattice basis element and every surface carrying that label.
    pub fn rename_class(&mut self, old: &str, new: &str) -> Result<()> {
        self.lattice.rename(old, new)?;
        for s in &mut self.surfaces {
            if s.label == old {
                s.label = new.to_string();
            }
        }
        Ok(())
    }

    /// Checks every record invariant.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InconsistentRecord(format!("{}: {m}", self.name)));
        let r = self.rank();
        if self.simply_connected == Connectivity::Asserted && self.b1.is_some_and(|b| b != 0) {
            return bad(format!("simply connected but b1 = {}", self.b1.unwrap()));
        }
        if self.spin == Tri::Yes {
            if self.parity == Parity::Odd {
                return bad("spin with odd intersection form".into());
            }
            if self.sign.rem_euclid(16) != 0 {
                return bad(format!("spin but signature {} is not divisible by 16", self.sign));
            }
        }
        if let Some(k) = &self.canonical {
            if k.len() != r {
                return bad(format!("canonical class has length {}, rank is {r}", k.len()));
            }
        }
        for s in &self.surfaces {
            if s.cls.len() != r {
                return bad(format!("surface {} has length {}, rank is {r}", s.label, s.cls.len()));
            }
            let sq = self.lattice.square(&s.cls);
            if sq != s.self_int {
                return bad(format!("surface {} has self_int {} but class square {sq}", s.label, s.self_int));
            }
        }
        let check_rank = |t: &LaurentElem| -> Result<()> {
            if t.rank() != r && !t.is_zero() {
                return Err(Error::InconsistentRecord(format!(
                    "{}: SW terms live in rank {}, lattice rank is {r}",
                    self.name,
                    t.rank()
                )));
            }
            Ok(())
        };
        match &self.sw {
            SWValue::Exact { terms } | SWValue::ExactWithUnknownConstant { terms, .. } => {
                check_rank(terms)?;
                if terms.bar_symmetry().is_none() {
                    return bad("SW terms are not bar-symmetric up to sign".into());
                }
            }
            SWValue::MaxOnly { surface, max_degree, terms, .. } => {
                check_rank(terms)?;
                if surface.len() != r {
                    return bad("max-part reference surface has wrong length".into());
                }
                for (k, _) in terms.terms() {
                    let d = self.lattice.dot(k, surface);
                    if d.abs() != *max_degree {
                        return bad(format!("max-part term {k} pairs to {d}, expected +-{max_degree}"));
                    }
                }
            }
            SWValue::Rational { numerator, denominator } => {
                check_rank(numerator)?;
                check_rank(denominator)?;
            }
            SWValue::Zero | SWValue::Unknown => {}
        }
        Ok(())
    }

    /// Coefficient of the SW invariant at `k`, resolving the max-part case
    /// against this record's lattice.
    pub fn sw_coefficient(&self, k: &ClassVec) -> Option<BigInt> {
        match &self.sw {
            SWValue::MaxOnly { surface, max_degree, terms, rim_ambiguous } => {
                let d = self.lattice.dot(k, surface);
                (d.abs() == *max_degree && !rim_ambiguous).then(|| terms.coeff(k))
            }
            other => other.coefficient(k),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let m: FourManifold = serde_json::from_str(s)?;
        m.validate()?;
        Ok(m)
    }

    /// Human readable SW value, with exponents written in the basis names.
    pub fn render_sw(&self) -> String {
        let poly = |t: &LaurentElem| render_poly(&self.lattice, t);
        match &self.sw {
            SWValue::Exact { terms } => poly(terms),
            SWValue::MaxOnly { surface, max_degree, terms, rim_ambiguous } => format!(
                "{} + (terms with |k.({})| < {max_degree}){}",
                poly(terms),
                self.lattice.describe(surface),
                if *rim_ambiguous { " [rim-torus ambiguous]" } else { "" }
            ),
            SWValue::ExactWithUnknownConstant { terms, constant_name } => {
                format!("{} + {constant_name}", poly(terms))
            }
            SWValue::Rational { numerator, denominator } => {
                format!("({}) / ({})", poly(numerator), poly(denominator))
            }
            SWValue::Zero => "0".into(),
            SWValue::Unknown => "unknown".into(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let chi = self
            .quarter_characteristic()
            .map(|c| c.to_string())
            .unwrap_or_else(|_| "non-integral".into());
        out.push_str(&format!("name: {}\n", self.name));
        out.push_str(&format!("e: {}\nsign: {}\nchi: {chi}\nc1^2: {}\n", self.e, self.sign, self.c1_squared()));
        out.push_str(&format!(
            "b1: {}\nsimply_connected: {}\nparity: {}\nspin: {}\nsymplectic: {}\n",
            self.b1.map(|b| b.to_string()).unwrap_or_else(|| "unknown".into()),
            self.simply_connected,
            self.effective_parity(),
            self.effective_spin(),
            self.symplectic
        ));
        out.push_str(&format!("lattice rank: {} [{}]\n", self.rank(), self.lattice.basis_names().join(", ")));
        if let Some(k) = &self.canonical {
            out.push_str(&format!(
                "canonical: {} (square {})\n",
                self.lattice.describe(k),
                self.lattice.square(k)
            ));
        }
        out.push_str(&format!("sw [{}]: {}\n", self.sw.kind(), self.render_sw()));
        for s in &self.surfaces {
            out.push_str(&format!(
                "surface {}: {} genus {} square {}{}\n",
                s.label,
                self.lattice.describe(&s.cls),
                s.genus,
                s.self_int,
                if s.essential { " essential" } else { "" }
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out
    }
}

/// `t(2*S + 2*Sigma) - t(-2*S - 2*Sigma)` style rendering.
pub fn render_poly(lattice: &IntLattice, p: &LaurentElem) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = if k.is_zero() {
            None
        } else if k.len() == lattice.rank() {
            Some(format!("t({})", lattice.describe(k)))
        } else {
            Some(format!("t{k}"))
        };
        match mono {
            None => out.push_str(&mag.to_string()),
            Some(m) if mag.is_one() => out.push_str(&m),
            Some(m) => out.push_str(&format!("{mag}*{m}")),
        }
    }
    out
}

pub fn quarter_characteristic(e: i64, sign: i64) -> Result<i64> {
    let s = e + sign;
    if s.rem_euclid(4) != 0 {
        return Err(Error::InconsistentRecord(format!("e + sign = {s} is not divisible by 4")));
    }
    Ok(s / 4)
}

pub fn c1_squared(e: i64, sign: i64) -> i64 {
    2 * e + 3 * sign
}

/// Homeomorphism type comparison from `(e, sign, parity)` under the
/// simple-connectivity hypothesis.
pub fn homeo_compare(a: &FourManifold, b: &FourManifold) -> HomeoVerdict {
    let triple = |m: &FourManifold| format!("(e={}, sign={}, parity={})", m.e, m.sign, m.effective_parity());
    let ta = triple(a);
    let tb = triple(b);
    let (pa, pb) = (a.effective_parity(), b.effective_parity());
    if a.e != b.e || a.sign != b.sign {
        return HomeoVerdict { verdict: Homeo::Distinct, note: format!("{ta} vs {tb}") };
    }
    if pa != Parity::Unknown && pb != Parity::Unknown && pa != pb {
        return HomeoVerdict { verdict: Homeo::Distinct, note: format!("{ta} vs {tb}: parities differ") };
    }
    if a.simply_connected != Connectivity::Asserted || b.simply_connected != Connectivity::Asserted {
        return HomeoVerdict {
            verdict: Homeo::Undecidable,
            note: format!("{ta} vs {tb}: simple connectivity not asserted for both"),
        };
    }
    if pa == Parity::Unknown || pb == Parity::Unknown {
        return HomeoVerdict { verdict: Homeo::Undecidable, note: format!("{ta} vs {tb}: parity unknown") };
    }
    let b2 = a.e - 2;
    if b2 > 0 && a.sign.abs() == b2 {
        return HomeoVerdict {
            verdict: Homeo::Undecidable,
            note: format!("{ta}: definite intersection form, classification of definite forms not implemented"),
        };
    }
    HomeoVerdict { verdict: Homeo::Homeomorphic, note: format!("{ta} on both sides, simply connected") }
}

/// A symplectic 4-manifold with `b2+ > 1` has `SW(+-K) = +-1`.
pub fn taubes_symplectic_check(m: &FourManifold) -> TaubesVerdict {
    match &m.sw {
        SWValue::Zero => match m.b2_plus() {
            Some(bp) if bp > 1 => TaubesVerdict::Obstructed(format!("SW vanishes with b2+ = {bp} > 1")),
            Some(bp) => TaubesVerdict::Inapplicable(format!("SW vanishes but b2+ = {bp}")),
            None => TaubesVerdict::Inapplicable("SW vanishes but b2+ is unknown".into()),
        },
        SWValue::Unknown | SWValue::Rational { .. } => {
            TaubesVerdict::Inapplicable(format!("SW value is {}", m.sw.kind()))
        }
        _ => {
            let Some(k) = &m.canonical else {
                return TaubesVerdict::Inapplicable("no canonical class recorded".into());
            };
            let Some(c) = m.sw_coefficient(k) else {
                return TaubesVerdict::Inapplicable("SW coefficient at the canonical class is not determined".into());
            };
            if c.abs().is_one() {
                TaubesVerdict::Consistent
            } else {
                TaubesVerdict::Obstructed(format!(
                    "SW coefficient {c} at the canonical class {}",
                    m.lattice.describe(k)
                ))
            }
        }
    }
}
