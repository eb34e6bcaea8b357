use num_bigint::BigInt;
use num_traits::One;

use super::fiber_sum::{fiber_sum, ComplementarityHypothesis, FiberSumOptions, VanishingSpec};
use super::surgery::knot_surgery;
use crate::algebra::{alexander_torus_knot, ClassVec, FiberedKnot, IntLattice, LaurentElem};
use crate::error::{Error, Result};
use crate::manifold::{Connectivity, FourManifold, Parity, SWValue, SurgerySite, TrackedSurface, Tri};

pub const FAMILY_E: &str = "elliptic";
pub const FAMILY_K3_KNOT: &str = "k3_knot_surgery";
pub const FAMILY_HORIKAWA: &str = "horikawa";

/// The genus-`g` knot used by the bundle constructions: the `(2g+1, -2)`
/// torus knot.
pub fn standard_knot(g: u32) -> Result<FiberedKnot> {
    alexander_torus_knot(2 * g as i64 + 1, -2)
}

fn sign_of(chi: i64) -> BigInt {
    if chi.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `t_k + (-1)^chi t_k^{-1}`
pub fn two_term(k: &ClassVec, chi: i64) -> LaurentElem {
    LaurentElem::t(k.clone())
        .add(&LaurentElem::monomial(-k, sign_of(chi)))
        .expect("same rank")
}

/// The elliptic surface `E(n)`.
pub fn build_en(n: u32) -> Result<FourManifold> {
    if n < 1 {
        return Err(Error::Precondition("E(n) needs n >= 1".into()));
    }
    let ni = n as i64;
    let mut m = FourManifold::bare(format!("E({n})"), 12 * ni, -8 * ni);
    m.b1 = Some(0);
    m.simply_connected = Connectivity::Asserted;
    let even = n.is_multiple_of(2);
    m.parity = if even { Parity::Even } else { Parity::Odd };
    m.spin = if even { Tri::Yes } else { Tri::No };
    m.symplectic = Tri::Yes;
    m.lattice = IntLattice::new(vec!["T".into(), "Sigma".into()], vec![vec![0, 2], vec![2, 0]])?;
    let mut t = TrackedSurface::new("T", ClassVec(vec![1, 0]), 1, 0).symplectic();
    t.complement_simply_connected = true;
    let mut sigma = TrackedSurface::new("Sigma", ClassVec(vec![0, 1]), n - 1, 0).symplectic();
    sigma.complement_simply_connected = true;
    m.surfaces = vec![t, sigma];
    m.canonical = Some(ClassVec(vec![ni - 2, 0]));
    if n >= 2 {
        let tt = LaurentElem::t(ClassVec(vec![1, 0])).sub(&LaurentElem::t(ClassVec(vec![-1, 0])))?;
        m.sw = SWValue::Exact { terms: tt.pow(n - 2) };
    } else {
        m.note("E(1) has b2+ = 1; its SW invariant is chamber dependent and is not modeled");
    }
    m.family = Some(FAMILY_E.into());
    m.validate()?;
    Ok(m)
}

/// The K3 surface with an elliptic fiber `F`, a section `sigma` and the
/// symplectic torus `Cprime = F + sigma`.
pub fn build_k3() -> Result<FourManifold> {
    let mut m = FourManifold::bare("K3", 24, -16);
    m.b1 = Some(0);
    m.simply_connected = Connectivity::Asserted;
    m.parity = Parity::Even;
    m.spin = Tri::Yes;
    m.symplectic = Tri::Yes;
    m.lattice = IntLattice::new(vec!["F".into(), "sigma".into()], vec![vec![0, 1], vec![1, -2]])?;
    let mut f = TrackedSurface::new("F", ClassVec(vec![1, 0]), 1, 0).symplectic();
    f.complement_simply_connected = true;
    m.surfaces = vec![
        f,
        TrackedSurface::new("sigma", ClassVec(vec![0, 1]), 0, -2).symplectic(),
        TrackedSurface::new("Cprime", ClassVec(vec![1, 1]), 1, 0).symplectic(),
    ];
    m.canonical = Some(ClassVec(vec![0, 0]));
    m.sw = SWValue::Exact { terms: LaurentElem::one(2) };
    m.family = Some("K3".into());
    m.validate()?;
    Ok(m)
}

/// Knot surgery on a fiber of K3 with a fibered knot `K'` of genus `n - 1`;
/// carries the genus-`n` surface `C` obtained from `F + sigma`.
pub fn build_k3_knot_surgery(k: &FiberedKnot) -> Result<FourManifold> {
    if k.genus < 1 {
        return Err(Error::Precondition("knot must have genus >= 1".into()));
    }
    let k3 = build_k3()?;
    let mut x = knot_surgery(&k3, "F", k)?;
    let c = x.surface_mut("Cprime")?;
    c.label = "C".into();
    c.complement_simply_connected = true;
    x.name = format!("K3_{}", k.name);
    x.family = Some(FAMILY_K3_KNOT.into());
    x.note(format!("C has genus {} and simply connected complement", k.genus + 1));
    x.validate()?;
    Ok(x)
}

/// The spin Horikawa surface `H(m)` with `chi = 8m - 1`, `c1^2 = 2 chi - 6`.
pub fn build_horikawa(m: u32) -> Result<FourManifold> {
    if m < 1 {
        return Err(Error::Precondition("H(m) needs m >= 1".into()));
    }
    let mi = m as i64;
    let chi = 8 * mi - 1;
    let c1sq = 2 * chi - 6;
    // e = 12 chi - c1^2, sign = (c1^2 - 2e) / 3
    let e = 12 * chi - c1sq;
    let sign = (c1sq - 2 * e) / 3;
    let mut h = FourManifold::bare(format!("H({m})"), e, sign);
    h.b1 = Some(0);
    h.simply_connected = Connectivity::Asserted;
    h.parity = Parity::Even;
    h.spin = Tri::Yes;
    h.symplectic = Tri::Yes;
    h.lattice = IntLattice::new(vec!["K".into(), "C".into()], vec![vec![c1sq, 2], vec![2, 0]])?;
    let mut c = TrackedSurface::new("C", ClassVec(vec![0, 1]), 2, 0).symplectic();
    c.complement_simply_connected = true;
    h.surfaces = vec![c];
    let k = ClassVec(vec![1, 0]);
    h.sw = SWValue::Exact { terms: two_term(&k, chi) };
    h.canonical = Some(k);
    h.family = Some(FAMILY_HORIKAWA.into());
    h.note("e and sign are back-solved from chi = 8m - 1 and c1^2 = 2 chi - 6");
    h.validate()?;
    Ok(h)
}

/// `S^1 x M_K`, fibered over `T^2` with fiber the capped Seifert surface.
pub fn build_s1xmk(k: &FiberedKnot) -> Result<FourManifold> {
    let mut m = FourManifold::bare(format!("S1xM_{}", k.name), 0, 0);
    m.b1 = Some(2);
    m.simply_connected = Connectivity::False;
    m.parity = Parity::Even;
    m.spin = Tri::Yes;
    m.symplectic = Tri::Yes;
    m.lattice = IntLattice::new(vec!["T".into(), "Sigma".into()], vec![vec![0, 1], vec![1, 0]])?;
    m.surfaces = vec![
        TrackedSurface::new("T", ClassVec(vec![1, 0]), 1, 0).symplectic(),
        TrackedSurface::new("Sigma", ClassVec(vec![0, 1]), k.genus, 0).symplectic(),
    ];
    let t = ClassVec(vec![1, 0]);
    let num = k.substitute_square(&t);
    let tt = LaurentElem::t(t.clone()).sub(&LaurentElem::t(-&t))?;
    m.sw = SWValue::Rational { numerator: num, denominator: tt.pow(2) };
    m.canonical = Some(t.scale(2 * k.genus as i64 - 2));
    m.family = Some("S1xMK".into());
    m.validate()?;
    Ok(m)
}

// Y_{n,g} for n >= 1, generic route: n copies of S^1 x M_K summed along the
// genus-g fiber, section renamed S. No SW upgrade.
fn bundle_route(n: u32, g: u32) -> Result<FourManifold> {
    let piece = build_s1xmk(&standard_knot(g)?)?;
    let mut acc = piece.clone();
    for _ in 1..n {
        acc = fiber_sum(&acc, "Sigma", &piece, "Sigma", &FiberSumOptions::with_rim(0, Some(VanishingSpec::standard())))?;
    }
    acc.rename_class("T", "S")?;
    acc.name = format!("Y({n},{g})");
    acc.family = Some("Y".into());
    acc.simply_connected = Connectivity::False;
    acc.spin = Tri::Unknown;
    let s = acc.surface_mut("S")?;
    s.normally_generates = true;
    Ok(acc)
}

/// `Y_{n,g}`: a genus-`g` surface bundle over a genus-`n` surface with
/// section `S`, built as an iterated fiber sum of `S^1 x M_K`.
pub fn build_y(n: u32, g: u32) -> Result<FourManifold> {
    if n < 2 || g < 1 {
        return Err(Error::Precondition(format!("Y(n,g) needs n >= 2 and g >= 1, got ({n},{g})")));
    }
    let mut y = bundle_route(n, g)?;
    let beta = y.lattice.class("S")?.scale(2 * g as i64 - 2);
    let beta = &beta + &y.lattice.class("Sigma")?.scale(2 * n as i64 - 2);
    if y.canonical.as_ref() != Some(&beta) {
        return Err(Error::InconsistentRecord(format!(
            "{}: glued canonical class differs from (2g-2)S + (2n-2)Sigma",
            y.name
        )));
    }
    let chi = y.quarter_characteristic()?;
    let claimed = two_term(&beta, chi);
    if g >= 2 {
        match &y.sw {
            SWValue::MaxOnly { terms, .. } if *terms == claimed => {}
            other => {
                return Err(Error::InconsistentRecord(format!(
                    "{}: fiber-sum max part {} disagrees with t_beta +- t_beta^-1",
                    y.name,
                    other.kind()
                )))
            }
        }
        y.sw = SWValue::Exact { terms: claimed };
        y.note("adjunction inequalities leave only +-beta as basic classes");
    } else {
        y.sw = SWValue::ExactWithUnknownConstant { terms: claimed, constant_name: "c = SW(0)".into() };
    }
    y.validate()?;
    Ok(y)
}

/// `S^1 x M_{K_k}` viewed as `Y_{1,k}` (section `S` of genus 1).
fn y_piece(n: u32, g: u32) -> Result<FourManifold> {
    if n == 1 {
        bundle_route(1, g)
    } else {
        build_y(n, g)
    }
}

/// `Z(X, C, g) = X #_{C = S} Y_{n,g}` with `n` the genus of `C`.
pub fn build_z(x: &FourManifold, c: &str, g: u32) -> Result<FourManifold> {
    let cs = x.surface(c)?;
    let n = cs.genus;
    if n < 2 {
        return Err(Error::Precondition(format!("{c} has genus {n}; Z(X,C,g) needs genus >= 2")));
    }
    if !cs.complement_simply_connected {
        return Err(Error::Precondition(format!(
            "{}: pi_1 of the complement of {c} is not asserted trivial",
            x.name
        )));
    }
    if g < 1 {
        return Err(Error::Precondition("g must be >= 1".into()));
    }
    let y = build_y(n, g)?;
    let opts = FiberSumOptions::with_rim(2 * n as usize, None).named(format!("Z({},{c},{g})", x.name));
    let mut z = fiber_sum(x, c, &y, "S", &opts)?;

    let (n, g) = (n as i64, g as i64);
    let chi_x = x.quarter_characteristic()?;
    let chi_z = z.quarter_characteristic()?;
    if z.c1_squared() != x.c1_squared() + 8 * g * (n - 1) || chi_z != chi_x + g * (n - 1) {
        return Err(Error::InconsistentRecord(format!(
            "{}: fiber-sum arithmetic ({chi_z}, {}) disagrees with the closed form",
            z.name,
            z.c1_squared()
        )));
    }
    z.parity = x.effective_parity();
    let upgrade = matches!(x.family.as_deref(), Some(FAMILY_K3_KNOT) | Some(FAMILY_HORIKAWA));
    if upgrade {
        if let SWValue::MaxOnly { terms, rim_ambiguous: false, .. } = &z.sw {
            z.sw = SWValue::Exact { terms: terms.clone() };
            z.note("lower part of SW vanishes for this X, so the max part is the whole invariant");
        }
    }
    z.validate()?;
    Ok(z)
}

/// `Z(m,g) = Z(H(m), C, g)`.
pub fn build_zmg(m: u32, g: u32) -> Result<FourManifold> {
    let h = build_horikawa(m)?;
    let mut z = build_z(&h, "C", g)?;
    z.name = format!("Z({m},{g})");
    z.spin = Tri::Yes;
    z.parity = Parity::Even;
    z.validate()?;
    Ok(z)
}

/// `Y'_{1,g,L}`: `S^1 x M_{K_g}` with copies of `Y_{g,k_i}` summed along
/// fibers, carrying the genus `1 + sum k_i` surface `S`.
pub fn build_yprime(g: u32, ks: &[u32]) -> Result<FourManifold> {
    if g < 1 {
        return Err(Error::Precondition("Y' needs g >= 1".into()));
    }
    if ks.is_empty() || ks.contains(&0) {
        return Err(Error::Precondition("Y' needs a nonempty list of positive integers".into()));
    }
    let mut acc = y_piece(1, g)?;
    for &k in ks {
        let piece = y_piece(g, k)?;
        acc = fiber_sum(&acc, "Sigma", &piece, "S", &FiberSumOptions::with_rim(2 * g as usize, None))?;
    }
    let sum_k: u32 = ks.iter().sum();
    acc.name = format!("Y'(1,{g},{ks:?})");
    acc.family = Some("Yprime".into());
    acc.simply_connected = Connectivity::False;
    let s = acc.surface_mut("S")?;
    if s.genus != 1 + sum_k {
        return Err(Error::InconsistentRecord(format!("S' has genus {}, expected {}", s.genus, 1 + sum_k)));
    }
    s.normally_generates = true;
    let beta = &acc.lattice.class("Sigma")?.scale(2 * sum_k as i64) + &acc.lattice.class("S")?.scale(2 * g as i64 - 2);
    if acc.canonical.as_ref() != Some(&beta) {
        return Err(Error::InconsistentRecord("glued canonical class differs from beta'".into()));
    }
    let chi = acc.quarter_characteristic()?;
    let claimed = two_term(&beta, chi);
    if g >= 2 {
        match &acc.sw {
            SWValue::MaxOnly { terms, .. } if *terms == claimed => {}
            other => {
                return Err(Error::InconsistentRecord(format!(
                    "{}: fiber-sum max part ({}) disagrees with t_beta' +- t_beta'^-1",
                    acc.name,
                    other.kind()
                )))
            }
        }
        acc.sw = SWValue::Exact { terms: claimed };
    } else {
        acc.sw = SWValue::ExactWithUnknownConstant {
            terms: claimed,
            constant_name: "lower powers of t_Sigma".into(),
        };
    }
    acc.validate()?;
    Ok(acc)
}

/// `Z'_{1,g,L}(X, C) = X #_{C = S'} Y'_{1,g,L}`.
pub fn build_zprime(
    x: &FourManifold,
    c: &str,
    g: u32,
    ks: &[u32],
    comp: &ComplementarityHypothesis,
) -> Result<FourManifold> {
    let yp = build_yprime(g, ks)?;
    let sum_k: u32 = ks.iter().sum();
    let cs = x.surface(c)?;
    if cs.genus != 1 + sum_k {
        return Err(Error::Precondition(format!(
            "{c} has genus {}, Y'(1,{g},{ks:?}) needs genus {}",
            cs.genus,
            1 + sum_k
        )));
    }
    let duals = comp.holds.then(VanishingSpec::u_tori);
    let mut opts = FiberSumOptions::with_rim(2, duals).named(format!("Z'({},{c},{g},{ks:?})", x.name));
    opts.complementary = Some(comp.clone());
    let mut z = fiber_sum(x, c, &yp, "S", &opts)?;

    let (sk, gi) = (sum_k as i64, g as i64);
    let chi_x = x.quarter_characteristic()?;
    if z.c1_squared() != x.c1_squared() + 8 * gi * sk || z.quarter_characteristic()? != chi_x + gi * sk {
        return Err(Error::InconsistentRecord(format!("{}: characteristic numbers disagree with closed form", z.name)));
    }
    z.parity = x.effective_parity();
    if comp.holds {
        z.surgery_site = Some(SurgerySite {
            g,
            ks: ks.to_vec(),
            available: 2 * g,
            applied: vec![],
            base_name: z.name.clone(),
        });
        if x.family.as_deref() == Some(FAMILY_K3_KNOT) {
            if let SWValue::MaxOnly { terms, rim_ambiguous: false, .. } = &z.sw {
                z.sw = SWValue::Exact { terms: terms.clone() };
                z.note("lower part of SW vanishes for this X, so the max part is the whole invariant");
            }
        }
    }
    z.validate()?;
    Ok(z)
}

/// `Y(n; K1, K2)`: fiber sum of `E(n)_{K1}` and `E(n)_{K2}` along the
/// genus `2g + n - 1` horizontal fiber.
pub fn build_y3(n: u32, k1: &FiberedKnot, k2: &FiberedKnot) -> Result<FourManifold> {
    if n < 1 {
        return Err(Error::Precondition("n must be >= 1".into()));
    }
    if k1.genus != k2.genus {
        return Err(Error::Precondition(format!("knot genera differ: {} vs {}", k1.genus, k2.genus)));
    }
    let g = k1.genus;
    let big_g = 2 * g + n - 1;
    let x1 = knot_surgery(&build_en(n)?, "T", k1)?;
    let x2 = knot_surgery(&build_en(n)?, "T", k2)?;
    let opts = FiberSumOptions::with_rim(0, None).named(format!("Y({n};{},{})", k1.name, k2.name));
    let mut y = fiber_sum(&x1, "Sigma", &x2, "Sigma", &opts)?;
    y.rename_class("T", "tau")?;
    if y.surface("Sigma")?.genus != big_g {
        return Err(Error::InconsistentRecord("horizontal fiber has unexpected genus".into()));
    }
    let (gi, ni) = (g as i64, n as i64);
    let k = &y.lattice.class("tau")?.scale(2 * gi + ni - 2) + &y.lattice.class("Sigma")?.scale(2);
    if y.canonical.as_ref() != Some(&k) {
        return Err(Error::InconsistentRecord("glued canonical class differs from (2g+n-2) tau + 2 Sigma".into()));
    }
    let chi = y.quarter_characteristic()?;
    let claimed = two_term(&k, chi);
    if let SWValue::MaxOnly { terms, .. } = &y.sw {
        if *terms != claimed {
            return Err(Error::InconsistentRecord("fiber-sum max part disagrees with t_K +- t_K^-1".into()));
        }
    }
    y.sw = SWValue::Exact { terms: claimed };
    y.b1 = Some(0);
    y.simply_connected = Connectivity::Asserted;
    y.note("simple connectivity asserted from a sphere section meeting the fiber once");
    y.note("rim tori are Lagrangian and do not contribute to SW");
    y.family = Some("Y3".into());
    y.validate()?;
    Ok(y)
}
