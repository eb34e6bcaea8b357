use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::algebra::kernel::{integer_kernel, solve_in_basis};
use crate::algebra::{chain_intersection_matrix, ClassVec, IntLattice, LaurentElem};
use crate::error::{Error, Result};
use crate::manifold::{Connectivity, FourManifold, Parity, SWValue, TrackedSurface, Tri};

/// User-supplied geometric hypothesis that the reference loops on the gluing
/// surface bound `(-1)`-disks in the complement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplementarityHypothesis {
    pub holds: bool,
    #[serde(default)]
    pub justification: String,
}

impl ComplementarityHypothesis {
    pub fn holds(why: impl Into<String>) -> Self {
        ComplementarityHypothesis { holds: true, justification: why.into() }
    }

    pub fn fails(why: impl Into<String>) -> Self {
        ComplementarityHypothesis { holds: false, justification: why.into() }
    }
}

/// Classes dual to the rim tori at a junction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishingSpec {
    #[serde(default = "default_prefix")]
    pub prefix: String,
    pub genus: u32,
    pub square: i64,
}

fn default_prefix() -> String {
    "V".into()
}

impl VanishingSpec {
    /// Genus-2 classes of square 2, one per rim torus.
    pub fn standard() -> Self {
        VanishingSpec { prefix: "V".into(), genus: 2, square: 2 }
    }

    /// Square-0 tori built from a `(-1)`-disk and a `(+1)` punctured torus.
    pub fn u_tori() -> Self {
        VanishingSpec { prefix: "U".into(), genus: 1, square: 0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberSumOptions {
    /// Rank of the image of `H^1` of the ambient manifolds in `H^1` of the
    /// gluing surface. `None` leaves rim tori untracked.
    #[serde(default)]
    pub rim_image_rank: Option<usize>,
    #[serde(default)]
    pub vanishing: Option<VanishingSpec>,
    #[serde(default)]
    pub complementary: Option<ComplementarityHypothesis>,
    #[serde(default)]
    pub name: Option<String>,
}

impl FiberSumOptions {
    pub fn with_rim(image_rank: usize, vanishing: Option<VanishingSpec>) -> Self {
        FiberSumOptions { rim_image_rank: Some(image_rank), vanishing, ..Default::default() }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

/// Number of independent rim tori: `H^1(S) / im H^1(Y)`.
pub fn rim_tori_rank(h1_surface_rank: usize, image_rank: usize) -> Result<usize> {
    h1_surface_rank.checked_sub(image_rank).ok_or_else(|| {
        Error::Precondition(format!("image rank {image_rank} exceeds H^1 rank {h1_surface_rank}"))
    })
}

// Bookkeeping for the glued lattice: pairs (a, b) with a.C = b.S modulo
// (C, -S), written as v = (a + b_s C, b without s) in the "full" space of
// dimension r1 + r2 - 1, then restricted to the kernel of the gluing
// functional.
struct Gluing {
    r2: usize,
    s: usize,
    c: ClassVec,
    basis: Vec<ClassVec>,
    names: Vec<String>,
    pivot: Option<usize>,
    unit_pivot: bool,
}

impl Gluing {
    fn full(&self, a: &ClassVec, b: &ClassVec) -> ClassVec {
        let bs = b.0[self.s];
        let mut v: Vec<i64> = a.0.iter().zip(&self.c.0).map(|(x, c)| x + bs * c).collect();
        v.extend(b.0.iter().enumerate().filter(|&(i, _)| i != self.s).map(|(_, &x)| x));
        ClassVec(v)
    }

    fn express(&self, v: &ClassVec) -> Result<ClassVec> {
        match (self.pivot, self.unit_pivot) {
            (None, _) => Ok(v.clone()),
            (Some(p), true) => Ok(ClassVec(v.0.iter().enumerate().filter(|&(i, _)| i != p).map(|(_, &x)| x).collect())),
            (Some(_), false) => solve_in_basis(&self.basis, v)
                .map(ClassVec)
                .ok_or_else(|| Error::Precondition(format!("class {v} does not glue across the junction"))),
        }
    }

    fn pair(&self, a: &ClassVec, b: &ClassVec) -> Result<ClassVec> {
        self.express(&self.full(a, b))
    }

    fn left(&self, a: &ClassVec) -> Result<ClassVec> {
        self.pair(a, &ClassVec::zeros(self.r2))
    }
}

fn renumber_junction_name(name: &str, offset: u32) -> String {
    // R3.1 -> R{3+offset}.1 for any single-letter prefix
    let mut chars = name.chars();
    let Some(head) = chars.next() else { return name.into() };
    let rest: String = chars.collect();
    if let Some((j, i)) = rest.split_once('.') {
        if let (Ok(j), true) = (j.parse::<u32>(), i.chars().all(|c| c.is_ascii_digit()) && !i.is_empty()) {
            if head.is_ascii_uppercase() {
                return format!("{head}{}.{i}", j + offset);
            }
        }
    }
    name.into()
}

fn unique_name(name: String, taken: &[String]) -> String {
    let mut n = name;
    while taken.contains(&n) {
        n.push('\'');
    }
    n
}

/// `(positive-side max part, rim ambiguity)`; `None` when not determined.
type MaxPart = Option<(Vec<(ClassVec, BigInt)>, bool)>;

fn pairing_row(l: &IntLattice, s: &ClassVec) -> Vec<i64> {
    l.dual(s)
}

fn lin(row: &[i64], k: &ClassVec) -> i64 {
    row.iter().zip(&k.0).map(|(a, b)| a * b).sum()
}

fn top_part(p: &LaurentElem, row: &[i64]) -> Option<(i64, Vec<(ClassVec, BigInt)>)> {
    let hi = p.terms().map(|(k, _)| lin(row, k)).max()?;
    Some((hi, p.terms().filter(|(k, _)| lin(row, k) == hi).map(|(k, c)| (k.clone(), c.clone())).collect()))
}

/// Terms of `m.sw` with `k . surf = maxd` (the positive max side).
pub(crate) fn positive_max_part(m: &FourManifold, surf: &ClassVec, maxd: i64) -> Result<MaxPart> {
    let row = pairing_row(&m.lattice, surf);
    let from_terms = |terms: &LaurentElem| -> Result<Vec<(ClassVec, BigInt)>> {
        for (k, _) in terms.terms() {
            let d = lin(&row, k);
            if d.abs() > maxd {
                return Err(Error::Precondition(format!(
                    "{}: SW term {} pairs to {d} with the gluing surface, beyond the adjunction bound {maxd}",
                    m.name,
                    m.lattice.describe(k)
                )));
            }
        }
        Ok(terms.terms().filter(|(k, _)| lin(&row, k) == maxd).map(|(k, c)| (k.clone(), c.clone())).collect())
    };
    match &m.sw {
        SWValue::Exact { terms } => Ok(Some((from_terms(terms)?, false))),
        SWValue::ExactWithUnknownConstant { terms, .. } => {
            if maxd == 0 {
                return Ok(None);
            }
            Ok(Some((from_terms(terms)?, false)))
        }
        SWValue::MaxOnly { surface, max_degree, terms, rim_ambiguous } => {
            if surface != surf || *max_degree != maxd {
                return Ok(None);
            }
            Ok(Some((from_terms(terms)?, *rim_ambiguous)))
        }
        SWValue::Rational { numerator, denominator } => {
            let (Some((dn, top_n)), Some((dd, top_d))) = (top_part(numerator, &row), top_part(denominator, &row)) else {
                return Ok(None);
            };
            if top_d.len() != 1 || !top_d[0].1.abs().is_one() {
                return Ok(None);
            }
            let (k0, c0) = &top_d[0];
            let deg = dn - dd;
            if deg > maxd {
                return Err(Error::Precondition(format!(
                    "{}: SW quotient has degree {deg} against the gluing surface, beyond {maxd}",
                    m.name
                )));
            }
            if deg < maxd {
                return Ok(Some((vec![], false)));
            }
            Ok(Some((top_n.into_iter().map(|(k, c)| (&k - k0, c * c0)).collect(), false)))
        }
        SWValue::Zero => Ok(Some((vec![], false))),
        SWValue::Unknown => Ok(None),
    }
}

fn neg_one_pow(x: i64) -> BigInt {
    if x.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// Fiber sum `M1 #_{S1 = S2} M2` along square-zero surfaces of equal genus.
///
/// The right gluing surface must be a basis class of `M2`'s lattice.
pub fn fiber_sum(m1: &FourManifold, s1: &str, m2: &FourManifold, s2: &str, opts: &FiberSumOptions) -> Result<FourManifold> {
    let c_surf = m1.surface(s1)?.clone();
    let s_surf = m2.surface(s2)?.clone();
    if c_surf.genus != s_surf.genus {
        return Err(Error::Precondition(format!(
            "genus mismatch: {s1} in {} has genus {}, {s2} in {} has genus {}",
            m1.name, c_surf.genus, m2.name, s_surf.genus
        )));
    }
    if c_surf.self_int != 0 || s_surf.self_int != 0 {
        return Err(Error::Precondition(format!(
            "gluing surfaces must have square 0 (got {} and {})",
            c_surf.self_int, s_surf.self_int
        )));
    }
    let n = c_surf.genus as i64;
    if n < 1 {
        return Err(Error::Precondition("gluing surfaces must have genus at least 1".into()));
    }
    let s = s_surf
        .cls
        .0
        .iter()
        .enumerate()
        .find(|&(_, &x)| x != 0)
        .map(|(i, _)| i)
        .filter(|&i| s_surf.cls == m2.lattice.unit(i))
        .ok_or_else(|| Error::Precondition(format!("right gluing surface {s2} must be a basis class of {}", m2.name)))?;

    let (r1, r2) = (m1.rank(), m2.rank());
    let g1 = m1.lattice.gram();
    let g2 = m2.lattice.gram();
    let full_len = r1 + r2 - 1;
    let right_idx: Vec<usize> = (0..r2).filter(|&i| i != s).collect();

    // gluing functional f(v) = v_left . C - v_right . S
    let gc = m1.lattice.dual(&c_surf.cls);
    let gs = m2.lattice.dual(&s_surf.cls);
    let mut f: Vec<i64> = gc.clone();
    f.extend(right_idx.iter().map(|&i| -gs[i]));
    let content = f.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if content > 1 {
        for x in f.iter_mut() {
            *x /= content;
        }
    }

    let mut full_names: Vec<String> = m1.lattice.basis_names().to_vec();
    let offset = m1.junctions;
    for &i in &right_idx {
        let nm = renumber_junction_name(&m2.lattice.basis_names()[i], offset);
        let nm = unique_name(nm, &full_names);
        full_names.push(nm);
    }

    let (basis, names, pivot, unit_pivot) = if content == 0 {
        ((0..full_len).map(|i| ClassVec::unit(full_len, i)).collect::<Vec<_>>(), full_names.clone(), None, true)
    } else if let Some(p) = (0..full_len).rev().find(|&i| f[i].abs() == 1) {
        let fp = f[p];
        let mut basis = Vec::with_capacity(full_len - 1);
        let mut names = Vec::with_capacity(full_len - 1);
        for i in (0..full_len).filter(|&i| i != p) {
            let mut v = ClassVec::unit(full_len, i);
            v.0[p] = -fp * f[i];
            basis.push(v);
            names.push(full_names[i].clone());
        }
        (basis, names, Some(p), true)
    } else {
        let basis = integer_kernel(&[f.clone()], full_len)?;
        let names = (0..basis.len()).map(|k| format!("z{}", k + 1)).collect();
        (basis, names, Some(usize::MAX), false)
    };

    let gl = Gluing { r2, s, c: c_surf.cls.clone(), basis: basis.clone(), names: names.clone(), pivot, unit_pivot };

    // Gram of the glued part: blockdiag(G1, G2 without s) restricted to the basis
    let full_gram = |i: usize, j: usize| -> i64 {
        match (i < r1, j < r1) {
            (true, true) => g1[i][j],
            (false, false) => g2[right_idx[i - r1]][right_idx[j - r1]],
            _ => 0,
        }
    };
    let k = basis.len();
    let mut gram = vec![vec![0i64; k]; k];
    for a in 0..k {
        for b in a..k {
            let mut acc: i128 = 0;
            for (i, &x) in basis[a].0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in basis[b].0.iter().enumerate() {
                    if y != 0 {
                        acc += x as i128 * full_gram(i, j) as i128 * y as i128;
                    }
                }
            }
            let v = i64::try_from(acc).map_err(|_| Error::Overflow("fiber_sum gram"))?;
            gram[a][b] = v;
            gram[b][a] = v;
        }
    }
    let mut names = gl.names.clone();

    // rim tori and their duals
    let junction = m1.junctions + m2.junctions + 1;
    let rim = match opts.rim_image_rank {
        Some(img) => rim_tori_rank(2 * n as usize, img)?,
        None => 0,
    };
    let tracked_rim = opts.rim_image_rank.is_some();
    let duals = if rim > 0 { opts.vanishing.clone() } else { None };
    if duals.is_some() && rim % 2 != 0 {
        return Err(Error::Precondition(format!("{rim} rim tori cannot be paired with dual classes")));
    }
    let extra = rim + duals.as_ref().map_or(0, |_| rim);
    let total = k + extra;
    for row in gram.iter_mut() {
        row.resize(total, 0);
    }
    gram.resize(total, vec![0; total]);
    let mut new_surfaces: Vec<TrackedSurface> = Vec::new();
    if rim > 0 {
        let chain = chain_intersection_matrix(rim);
        for i in 0..rim {
            names.push(unique_name(format!("R{junction}.{}", i + 1), &names));
        }
        if let Some(v) = &duals {
            for i in 0..rim {
                names.push(unique_name(format!("{}{junction}.{}", v.prefix, i + 1), &names));
            }
            for j in 0..rim {
                for i in 0..rim {
                    // R_j . V_i = a_i . a_j
                    gram[k + j][k + rim + i] = chain[i][j];
                    gram[k + rim + i][k + j] = chain[i][j];
                }
                gram[k + rim + j][k + rim + j] = v.square;
            }
        }
        for i in 0..rim {
            new_surfaces.push(TrackedSurface::new(names[k + i].clone(), ClassVec::unit(total, k + i), 1, 0));
        }
        if let Some(v) = &duals {
            for i in 0..rim {
                new_surfaces.push(TrackedSurface::new(
                    names[k + rim + i].clone(),
                    ClassVec::unit(total, k + rim + i),
                    v.genus,
                    v.square,
                ));
            }
        }
    }
    let lattice = IntLattice::new(names, gram)?;
    let pad = |v: ClassVec| -> ClassVec {
        let mut w = v.0;
        w.resize(total, 0);
        ClassVec(w)
    };

    let c_new = pad(gl.left(&c_surf.cls)?);

    // surfaces
    let mut surfaces = Vec::new();
    let mut used_right = vec![false; m2.surfaces.len()];
    let right_d: Vec<i64> = m2.surfaces.iter().map(|b| m2.lattice.dot(&b.cls, &s_surf.cls)).collect();
    for a in &m1.surfaces {
        let d = m1.lattice.dot(&a.cls, &c_surf.cls);
        if d == 0 {
            let mut t = a.clone();
            t.cls = pad(gl.left(&a.cls)?);
            t.complement_simply_connected = false;
            t.normally_generates = false;
            if a.label == c_surf.label {
                t.symplectic = c_surf.symplectic && s_surf.symplectic;
            }
            surfaces.push(t);
            continue;
        }
        let matches: Vec<usize> = (0..m2.surfaces.len())
            .filter(|&j| m2.surfaces[j].label != s_surf.label && right_d[j] == d)
            .collect();
        if matches.len() != 1 {
            log::debug!("{}: surface {} meets the gluing surface and has no unique partner; dropped", m1.name, a.label);
            continue;
        }
        let b = &m2.surfaces[matches[0]];
        used_right[matches[0]] = true;
        let cls = pad(gl.pair(&a.cls, &b.cls)?);
        let genus = a.genus + b.genus + d.unsigned_abs() as u32 - 1;
        let mut t = TrackedSurface::new(a.label.clone(), cls, genus, a.self_int + b.self_int);
        t.symplectic = a.symplectic && b.symplectic;
        surfaces.push(t);
    }
    for (j, b) in m2.surfaces.iter().enumerate() {
        if b.label == s_surf.label || used_right[j] || right_d[j] != 0 {
            continue;
        }
        let mut t = b.clone();
        t.cls = pad(gl.pair(&ClassVec::zeros(r1), &b.cls)?);
        t.label = unique_name(renumber_junction_name(&b.label, offset), &surfaces.iter().map(|x| x.label.clone()).collect::<Vec<_>>());
        t.complement_simply_connected = false;
        t.normally_generates = false;
        surfaces.push(t);
    }
    surfaces.extend(new_surfaces);

    // characteristic numbers
    let e = m1.e + m2.e + 4 * n - 4;
    let sign = m1.sign + m2.sign;
    let chi = crate::manifold::quarter_characteristic(e, sign);

    let sc = (c_surf.complement_simply_connected && s_surf.normally_generates)
        || (s_surf.complement_simply_connected && c_surf.normally_generates);
    let symplectic = if m1.symplectic == Tri::Yes && m2.symplectic == Tri::Yes && c_surf.symplectic && s_surf.symplectic {
        Tri::Yes
    } else {
        Tri::Unknown
    };

    let mut notes = Vec::new();
    let maxd = 2 * n - 2;
    let canonical = match (&m1.canonical, &m2.canonical) {
        (Some(k1), Some(k2)) if m1.lattice.dot(k1, &c_surf.cls) == maxd && m2.lattice.dot(k2, &s_surf.cls) == maxd => {
            let pair = pad(gl.pair(k1, k2)?);
            Some(&pair + &c_new.scale(2))
        }
        (Some(_), Some(_)) => {
            notes.push("canonical classes do not meet the gluing surfaces maximally; canonical class not tracked".into());
            None
        }
        _ => None,
    };

    let rim_ambiguous = (tracked_rim && rim > 0 && duals.is_none()) || !tracked_rim;
    let sw = if n == 1 {
        notes.push("genus-1 gluing: the max-part product formula does not isolate any terms".into());
        SWValue::Unknown
    } else {
        match (positive_max_part(m1, &c_surf.cls, maxd)?, positive_max_part(m2, &s_surf.cls, maxd)?, &chi) {
            (Some((left, amb1)), Some((right, amb2)), Ok(chi)) => {
                let mut terms = LaurentElem::zero(total);
                for (kappa, c1) in &left {
                    for (beta, c2) in &right {
                        let eps = &pad(gl.pair(kappa, beta)?) + &c_new.scale(2);
                        terms = terms.add(&LaurentElem::monomial(eps, c1 * c2))?;
                    }
                }
                let sym = terms.add(&terms.bar().scale(&neg_one_pow(*chi)))?;
                SWValue::MaxOnly {
                    surface: c_new.clone(),
                    max_degree: maxd,
                    terms: sym,
                    rim_ambiguous: rim_ambiguous || amb1 || amb2,
                }
            }
            _ => SWValue::Unknown,
        }
    };

    let name = opts.name.clone().unwrap_or_else(|| format!("{}#[{s1}={s2}]{}", m1.name, m2.name));
    let mut out = FourManifold {
        name,
        e,
        sign,
        b1: if sc { Some(0) } else { None },
        simply_connected: if sc { Connectivity::Asserted } else { Connectivity::Unknown },
        parity: Parity::Unknown,
        spin: Tri::Unknown,
        symplectic,
        lattice,
        sw,
        canonical,
        surfaces,
        family: None,
        surgery_site: None,
        junctions: junction,
        notes,
    };
    if let Some(comp) = &opts.complementary {
        out.note(format!(
            "complementarity {}: {}",
            if comp.holds { "holds" } else { "not asserted" },
            comp.justification
        ));
    }
    out.validate()?;
    Ok(out)
}
