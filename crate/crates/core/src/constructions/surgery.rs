use num_bigint::BigInt;

use crate::algebra::{FiberedKnot, LaurentElem};
use crate::basic_classes::{enumerate_candidates, scenario_yprime_neg1};
use crate::error::{Error, Result};
use crate::manifold::{Connectivity, FourManifold, SWValue, Tri};

/// Knot surgery along a square-zero torus: `SW <- SW * Delta_K(t_T^2)`.
pub fn knot_surgery(m: &FourManifold, torus: &str, k: &FiberedKnot) -> Result<FourManifold> {
    let t = m.surface(torus)?.clone();
    if t.genus != 1 || t.self_int != 0 {
        return Err(Error::Precondition(format!(
            "{torus} in {} has genus {} and square {}; knot surgery needs a square-0 torus",
            m.name, t.genus, t.self_int
        )));
    }
    if k.genus == 0 && k.is_unknot_polynomial() {
        return Ok(m.clone());
    }
    let factor = k.substitute_square(&t.cls);
    let sw = match &m.sw {
        SWValue::Exact { terms } => SWValue::Exact { terms: terms.mul(&factor)? },
        SWValue::Zero => SWValue::Zero,
        SWValue::Unknown => SWValue::Unknown,
        other => {
            return Err(Error::InsufficientSw(format!(
                "knot surgery needs the full SW invariant of {}, have {}",
                m.name,
                other.kind()
            )))
        }
    };
    let mut out = m.clone();
    out.name = format!("{}_{}", m.name, k.name);
    out.sw = sw;
    let gk = k.genus as i64;
    if let Some(c) = &m.canonical {
        out.canonical = Some(c + &t.cls.scale(2 * gk));
    }
    for s in out.surfaces.iter_mut() {
        let d = m.lattice.dot(&s.cls, &t.cls);
        if d != 0 {
            // each intersection point trades a disk for a Seifert surface
            s.genus += k.genus * d.unsigned_abs() as u32;
            s.complement_simply_connected = false;
            s.normally_generates = false;
        }
    }
    if !t.complement_simply_connected {
        out.simply_connected = Connectivity::Unknown;
        out.b1 = None;
    }
    out.symplectic = if m.symplectic == Tri::Yes && t.symplectic { Tri::Yes } else { Tri::Unknown };
    out.family = None;
    out.validate()?;
    Ok(out)
}

/// `SW_Z - m * (sum over the surgered-torus contributions)`, coefficientwise.
pub fn surgery_formula(sw_z: &SWValue, sw_zhat_sum: &LaurentElem, m: i64) -> Result<SWValue> {
    if m == 0 {
        return Ok(sw_z.clone());
    }
    let correction = sw_zhat_sum.scale(&BigInt::from(m));
    let check = |t: &LaurentElem| -> Result<()> {
        if t.rank() != sw_zhat_sum.rank() && !sw_zhat_sum.is_zero() {
            return Err(Error::LatticeMismatch { left: t.rank(), right: sw_zhat_sum.rank() });
        }
        Ok(())
    };
    match sw_z {
        SWValue::Exact { terms } => {
            check(terms)?;
            let out = terms.sub(&correction)?;
            Ok(if out.is_zero() { SWValue::Zero } else { SWValue::Exact { terms: out } })
        }
        SWValue::MaxOnly { surface, max_degree, terms, rim_ambiguous } => {
            check(terms)?;
            Ok(SWValue::MaxOnly {
                surface: surface.clone(),
                max_degree: *max_degree,
                terms: terms.sub(&correction)?,
                rim_ambiguous: *rim_ambiguous,
            })
        }
        SWValue::ExactWithUnknownConstant { terms, constant_name } => {
            check(terms)?;
            Ok(SWValue::ExactWithUnknownConstant { terms: terms.sub(&correction)?, constant_name: constant_name.clone() })
        }
        SWValue::Zero => {
            let out = correction.neg();
            Ok(if out.is_zero() { SWValue::Zero } else { SWValue::Exact { terms: out } })
        }
        other => Err(Error::InsufficientSw(format!("surgery formula needs known SW terms, have {}", other.kind()))),
    }
}

/// `-1/m_i` surgeries on the nullhomologous tori `Lambda(a_i)` of a
/// complementary `Z'`. Zero entries are trivial surgeries and are skipped.
pub fn torus_surgery(zp: &FourManifold, m_vec: &[u32]) -> Result<FourManifold> {
    let site = zp.surgery_site.clone().ok_or_else(|| {
        Error::Precondition(format!(
            "{} carries no nullhomologous surgery tori (needs a complementary Z' record)",
            zp.name
        ))
    })?;
    if m_vec.len() > 2 * site.g as usize {
        return Err(Error::Precondition(format!("at most {} tori are available, got {}", 2 * site.g, m_vec.len())));
    }
    let active: Vec<u32> = m_vec.iter().copied().filter(|&m| m > 0).collect();
    if active.len() > site.available as usize {
        return Err(Error::Precondition(format!(
            "{} tori requested, {} remain unsurgered",
            active.len(),
            site.available
        )));
    }
    if active.is_empty() {
        return Ok(zp.clone());
    }

    // SW of the (-1)-surgered manifold vanishes by the adjunction argument on
    // Y'(-1); the surgery formula at m = -1 then pins the torus sum to -SW.
    let scenario = scenario_yprime_neg1(site.g, &site.ks)?;
    let verdict = enumerate_candidates(&scenario)?;
    if !verdict.is_empty() {
        return Err(Error::InsufficientSw(format!(
            "{}: {} basic-class candidates survive on Y'(-1); vanishing not established",
            zp.name,
            verdict.classes().len()
        )));
    }

    let mut out = zp.clone();
    for &m in &active {
        let terms = out
            .sw
            .known_terms()
            .cloned()
            .ok_or_else(|| Error::InsufficientSw(format!("{}: SW is {}", out.name, out.sw.kind())))?;
        let zhat_sum = terms.neg();
        out.sw = surgery_formula(&out.sw, &zhat_sum, m as i64)?;
    }
    let mut site = site;
    site.applied.extend(&active);
    site.available -= active.len() as u32;
    out.name = format!("{}(m={:?})", site.base_name, site.applied);
    out.surgery_site = Some(site);
    out.symplectic = Tri::No;
    out.validate()?;
    Ok(out)
}
