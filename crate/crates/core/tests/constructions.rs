mod common;

use num_bigint::BigInt;

use swcalc::algebra::{knot_by_name, ClassVec, FiberedKnot, IntLattice};
use swcalc::basic_classes::{enumerate_candidates, scenario_y2g};
use swcalc::constructions::*;
use common::{knots, zoo};
use swcalc::manifold::{homeo_compare, FourManifold, Homeo, SWValue, Tri};

#[test]
fn records_validate() {
    for m in zoo() {
        m.validate().unwrap_or_else(|e| panic!("{}: {e}", m.name));
    }
}

#[test]
fn bar_symmetry_matches_characteristic() {
    let mut checked = 0;
    for m in zoo() {
        let Ok(chi) = m.quarter_characteristic() else { continue };
        let Some(t) = m.sw.known_terms() else { continue };
        if t.is_zero() {
            continue;
        }
        let expected = if chi % 2 == 0 { 1 } else { -1 };
        assert_eq!(t.bar_symmetry(), Some(expected), "{}: chi = {chi}", m.name);
        checked += 1;
    }
    assert!(checked > 30);
}

#[test]
fn rochlin_on_spin_outputs() {
    let mut spin = 0;
    for m in zoo() {
        if m.spin == Tri::Yes {
            assert_eq!(m.sign % 16, 0, "{}", m.name);
            spin += 1;
        }
    }
    assert!(spin >= 10);
}

#[test]
fn canonical_square_is_c1_squared() {
    for m in zoo() {
        if let Some(k) = &m.canonical {
            assert_eq!(m.lattice.square(k), m.c1_squared(), "{}", m.name);
        }
    }
}

#[test]
fn json_round_trip_is_byte_stable() {
    for m in zoo() {
        let a = m.to_json().unwrap();
        let back = FourManifold::from_json(&a).unwrap();
        assert_eq!(back, m, "{}", m.name);
        assert_eq!(back.to_json().unwrap(), a, "{}", m.name);
    }
}

#[test]
fn homeo_is_reflexive_when_decidable() {
    for m in zoo() {
        let v = homeo_compare(&m, &m).verdict;
        assert_ne!(v, Homeo::Distinct, "{}", m.name);
    }
}

#[test]
fn knot_surgery_on_k3_is_alexander_of_square() {
    for k in knots() {
        let x = build_k3_knot_surgery(&k).unwrap();
        let SWValue::Exact { terms } = &x.sw else { panic!("{}: {:?}", x.name, x.sw) };
        for (e, c) in k.alexander.terms() {
            let mut v = ClassVec::zeros(x.rank());
            v.0[x.lattice.index_of("F").unwrap()] = 2 * e.0[0];
            assert_eq!(&terms.coeff(&v), c, "{}", x.name);
        }
        assert_eq!(terms.len(), k.alexander.len());
        assert_eq!(homeo_compare(&x, &build_k3().unwrap()).verdict, Homeo::Homeomorphic);
    }
}

#[test]
fn knot_surgery_composes() {
    let e3 = build_en(3).unwrap();
    let t = knot_by_name("trefoil").unwrap();
    let f = knot_by_name("figure-eight").unwrap();
    let a = knot_surgery(&knot_surgery(&e3, "T", &t).unwrap(), "T", &f);
    let b = knot_surgery(&knot_surgery(&e3, "T", &f).unwrap(), "T", &t);
    match (a, b) {
        (Ok(a), Ok(b)) => assert_eq!(a.sw, b.sw),
        (Err(_), Err(_)) => {}
        (a, b) => panic!("asymmetric: {a:?} vs {b:?}"),
    }
}

#[test]
fn y2g_candidates_ignore_vanishing_products() {
    for g in 1..=4 {
        let base = scenario_y2g(g).unwrap();
        let expected = enumerate_candidates(&base).unwrap();
        let names = base.lattice.basis_names().to_vec();
        let vs: Vec<usize> = names.iter().enumerate().filter(|(_, n)| n.starts_with('V')).map(|(i, _)| i).collect();
        for shift in [-3i64, -1, 1, 2, 5] {
            let mut gram = base.lattice.gram().to_vec();
            for (a, &i) in vs.iter().enumerate() {
                for &j in &vs[a + 1..] {
                    gram[i][j] += shift * (1 + (i + j) as i64 % 3);
                    gram[j][i] = gram[i][j];
                }
            }
            let mut s = base.clone();
            s.lattice = IntLattice::new(names.clone(), gram).unwrap();
            assert_eq!(enumerate_candidates(&s).unwrap(), expected, "g = {g}, shift {shift}");
        }
    }
}

#[test]
fn zprime_coefficients_scale_under_surgery() {
    let x = build_en(3).unwrap();
    let z = build_zprime(&x, "Sigma", 2, &[1], &ComplementarityHypothesis::holds("elliptic")).unwrap();
    let k = z.canonical.clone().unwrap();
    for m in 0..=6u32 {
        let zm = torus_surgery(&z, &[m]).unwrap();
        assert_eq!(zm.sw_coefficient(&k), Some(BigInt::from(m + 1)));
        assert_eq!((zm.e, zm.sign), (z.e, z.sign));
    }
    assert!(torus_surgery(&z, &[1, 1, 1, 1, 1]).is_err());
}

#[test]
fn preconditions_are_enforced() {
    assert!(build_en(0).is_err());
    assert!(build_horikawa(0).is_err());
    assert!(build_z(&build_en(2).unwrap(), "T", 1).is_err());
    assert!(knot_surgery(&build_en(3).unwrap(), "Sigma", &FiberedKnot::trefoil()).is_err());
    assert!(build_zmg(0, 1).is_err());
}
