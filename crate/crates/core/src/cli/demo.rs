//! Golden reproduction bundles behind `swcalc demo`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{alexander_torus_knot, ClassVec, FiberedKnot};
use crate::basic_classes::{enumerate_candidates, scenario_y2g, scenario_yprime_neg1};
use crate::constructions::*;
use crate::error::Result;
use crate::geography::{closed_form_list, restricted_list};
use crate::lefschetz::{enk_fibration, euler_from_fibration, twisted_fiber_sum_check, vanishing_cycle_audit};
use crate::manifold::{homeo_compare, taubes_symplectic_check, FourManifold, Homeo, SWValue, TaubesVerdict};

pub const SECTIONS: [&str; 6] = ["construction1", "geography", "construction2", "surgery", "lefschetz", "construction3"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// Known, documented disagreement with a printed value.
    Flag,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub section: String,
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Deserialize)]
pub struct Golden {
    pub geography: Vec<GeoRow>,
    pub zmg: Vec<ZmgRow>,
    pub horikawa: Vec<HRow>,
    pub multipliers: Vec<MultRow>,
}

#[derive(Deserialize)]
pub struct GeoRow {
    pub m: i64,
    pub listed: Vec<i64>,
    pub tag: String,
    #[serde(default)]
    pub discrepancy: Option<String>,
}

#[derive(Deserialize)]
pub struct ZmgRow {
    pub m: u32,
    pub g: u32,
    pub chi: i64,
    pub c1sq: i64,
    pub tag: String,
}

#[derive(Deserialize)]
pub struct HRow {
    pub m: u32,
    pub chi: i64,
    pub c1sq: i64,
    pub tag: String,
}

#[derive(Deserialize)]
pub struct MultRow {
    pub m: Vec<u32>,
    pub factor: i64,
}

pub fn golden() -> Golden {
    serde_json::from_str(include_str!("../../fixtures/golden.json")).expect("fixture parses")
}

struct Bundle {
    section: &'static str,
    checks: Vec<Check>,
}

impl Bundle {
    fn new(section: &'static str) -> Self {
        Bundle { section, checks: Vec::new() }
    }

    fn eq<T: std::fmt::Debug + PartialEq>(&mut self, claim: impl Into<String>, expected: T, computed: T) {
        let status = if expected == computed { Status::Pass } else { Status::Fail };
        self.push(claim, format!("{expected:?}"), format!("{computed:?}"), status, None);
    }

    fn fallible<T: std::fmt::Debug + PartialEq>(&mut self, claim: impl Into<String>, expected: T, computed: Result<T>) {
        match computed {
            Ok(c) => self.eq(claim, expected, c),
            Err(e) => self.push(claim, format!("{expected:?}"), format!("error: {e}"), Status::Fail, None),
        }
    }

    fn push(&mut self, claim: impl Into<String>, expected: String, computed: String, status: Status, detail: Option<String>) {
        self.checks.push(Check { section: self.section.into(), claim: claim.into(), expected, computed, status, detail });
    }
}

pub fn run_section(name: &str) -> Result<Vec<Check>> {
    let mut b = match name {
        "construction1" => construction1(),
        "geography" => geography(),
        "construction2" => construction2(),
        "surgery" => surgery(),
        "lefschetz" => lefschetz(),
        "construction3" => construction3(),
        other => return Err(crate::Error::Precondition(format!("unknown demo section `{other}`"))),
    };
    Ok(std::mem::take(&mut b.checks))
}

pub fn render(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let status = match c.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flag => "FLAG",
        };
        s.push_str(&format!("{status} [{}] {}: expected {}, computed {}\n", c.section, c.claim, c.expected, c.computed));
        if let Some(d) = &c.detail {
            s.push_str(&format!("     {d}\n"));
        }
    }
    let fails = checks.iter().filter(|c| c.status == Status::Fail).count();
    let flags = checks.iter().filter(|c| c.status == Status::Flag).count();
    s.push_str(&format!("{} checks, {fails} failed, {flags} flagged\n", checks.len()));
    s
}

fn coeff(m: &FourManifold, k: &ClassVec) -> Option<BigInt> {
    m.sw_coefficient(k)
}

fn named(m: &FourManifold, parts: &[(&str, i64)]) -> Result<ClassVec> {
    let mut v = ClassVec::zeros(m.rank());
    for (n, c) in parts {
        v = &v + &m.lattice.class(n)?.scale(*c);
    }
    Ok(v)
}

fn construction1() -> Bundle {
    let mut b = Bundle::new("construction1");
    for g in 1..=6u32 {
        let computed = scenario_y2g(g).and_then(|s| {
            let r = enumerate_candidates(&s)?;
            Ok(r.classes().iter().map(|k| s.lattice.describe(k)).collect::<Vec<_>>())
        });
        let expected: Vec<String> = if g == 1 {
            (-2..=2).map(sigma_multiple).collect()
        } else {
            let a = 2 * g as i64 - 2;
            vec![format!("-{a}*tau - 2*Sigma"), format!("{a}*tau + 2*Sigma")]
        };
        b.fallible(format!("Y(2,{g}) basic-class candidates"), expected, computed);
    }
    for n in 2..=4u32 {
        for g in 2..=4u32 {
            let computed = build_y(n, g).and_then(|y| {
                let beta = named(&y, &[("S", 2 * g as i64 - 2), ("Sigma", 2 * n as i64 - 2)])?;
                Ok((coeff(&y, &beta), coeff(&y, &-&beta), y.sw.kind()))
            });
            let sign = if ((g - 1) * (n - 1)) % 2 == 0 { 1 } else { -1 };
            b.fallible(
                format!("SW(Y({n},{g})) = t_beta + ({sign}) t_beta^-1"),
                (Some(BigInt::from(1)), Some(BigInt::from(sign)), "exact"),
                computed,
            );
        }
    }
    let gold = golden();
    for row in &gold.horikawa {
        let computed = build_horikawa(row.m).and_then(|h| Ok((h.quarter_characteristic()?, h.c1_squared())));
        b.fallible(row.tag.clone(), (row.chi, row.c1sq), computed);
    }
    for row in &gold.zmg {
        let computed = build_zmg(row.m, row.g).and_then(|z| Ok((z.quarter_characteristic()?, z.c1_squared())));
        b.fallible(row.tag.clone(), (row.chi, row.c1sq), computed);
    }
    let mut bad = Vec::new();
    for m in 1..=8u32 {
        for g in 1..=8u32 {
            let (mi, gi) = (m as i64, g as i64);
            match build_zmg(m, g).and_then(|z| Ok((z.quarter_characteristic()?, z.c1_squared()))) {
                Ok(v) if v == (8 * mi + gi - 1, 16 * mi + 8 * gi - 8) => {}
                other => bad.push(format!("({m},{g}): {other:?}")),
            }
        }
    }
    b.eq("Z(m,g) fiber-sum route equals (8m+g-1, 16m+8g-8), m,g <= 8", Vec::<String>::new(), bad);
    if let Ok(z) = build_zmg(3, 1) {
        let k = z.canonical.clone().unwrap_or_default_vec(z.rank());
        b.push(
            "SW(Z(3,1))",
            "t_eps +- t_eps^-1".into(),
            z.render_sw(),
            if coeff(&z, &k) == Some(BigInt::from(1)) && z.sw.known_terms().map(|t| t.len()) == Some(2) {
                Status::Pass
            } else {
                Status::Fail
            },
            Some(format!("chi = {}, sign of t_eps^-1 is (-1)^chi", z.quarter_characteristic().unwrap_or(0))),
        );
    }
    for n in 2..=4i64 {
        let claim = format!("Z(K3_K, C, 1) with genus-{n} C: SW = t_F^{} + t_F^{}", n - 1, 1 - n);
        let built = alexander_torus_knot(2 * n - 1, 2)
            .and_then(|k| build_k3_knot_surgery(&k))
            .and_then(|x| build_z(&x, "C", 1))
            .and_then(|z| Ok((z.quarter_characteristic()?, z)));
        let (chi, z) = match built {
            Ok(v) => v,
            Err(e) => {
                b.push(claim, "[1, 1]".into(), format!("error: {e}"), Status::Fail, None);
                continue;
            }
        };
        let coeffs: Vec<BigInt> = z.sw.known_terms().map(|t| t.terms().map(|(_, c)| c.clone()).collect()).unwrap_or_default();
        let sign = if chi % 2 == 0 { 1 } else { -1 };
        let status = if coeffs == [BigInt::from(1), BigInt::from(1)] {
            Status::Pass
        } else if coeffs == [BigInt::from(1), BigInt::from(sign)] {
            Status::Flag
        } else {
            Status::Fail
        };
        let detail = (status == Status::Flag)
            .then(|| format!("chi(Z) = {chi}; the symmetry SW(-k) = (-1)^chi SW(k) fixes the sign of t_F^{}", 1 - n));
        b.push(claim, "[1, 1]".into(), format!("{coeffs:?}"), status, detail);
    }
    b
}

trait OrZero {
    fn unwrap_or_default_vec(self, r: usize) -> ClassVec;
}

impl OrZero for Option<ClassVec> {
    fn unwrap_or_default_vec(self, r: usize) -> ClassVec {
        self.unwrap_or_else(|| ClassVec::zeros(r))
    }
}

fn sigma_multiple(s: i64) -> String {
    match s {
        0 => "0".into(),
        1 => "Sigma".into(),
        -1 => "-Sigma".into(),
        s => format!("{s}*Sigma"),
    }
}

fn geography() -> Bundle {
    let mut b = Bundle::new("geography");
    for row in golden().geography {
        let computed = restricted_list(row.m);
        let closed = closed_form_list(row.m);
        if computed == row.listed {
            b.push(row.tag, format!("{:?}", row.listed), format!("{computed:?}"), Status::Pass, None);
        } else if let Some(d) = row.discrepancy {
            b.push(
                row.tag,
                format!("{:?}", row.listed),
                format!("{computed:?}"),
                Status::Flag,
                Some(format!("{d}; closed form gives {closed:?}")),
            );
        } else {
            b.push(row.tag, format!("{:?}", row.listed), format!("{computed:?}"), Status::Fail, None);
        }
    }
    b
}

fn zprime_e(n: u32, g: u32) -> Result<FourManifold> {
    // X = E(n+1) with its genus-n fiber Sigma; L = {n-1}
    let x = build_en(n + 1)?;
    build_zprime(&x, "Sigma", g, &[n - 1], &ComplementarityHypothesis::holds("reference loops bound sections of E(n+1)"))
}

fn construction2() -> Bundle {
    let mut b = Bundle::new("construction2");
    for n in 2..=4u32 {
        for g in 1..=3u32 {
            let computed = build_en(n + 1).and_then(|x| {
                let z = build_z(&x, "Sigma", g)?;
                let zp = zprime_e(n, g)?;
                Ok(homeo_compare(&z, &zp).verdict)
            });
            b.fallible(format!("Z(E({}),C,{g}) ~ Z'(1,{g},{})", n + 1, n - 1), Homeo::Homeomorphic, computed);
        }
    }
    for g in 1..=3u32 {
        for n in 2..=4u32 {
            let computed = build_yprime(g, &[n - 1]).and_then(|y| Ok((y.rank(), y.surface("S")?.genus)));
            b.fallible(
                format!("Y'(1,{g},{}) rank and genus of S'", n - 1),
                ((4 * (g - 1) * (n - 1) + 2) as usize, n),
                computed,
            );
        }
    }
    for (g, ks) in [(2u32, vec![1u32]), (2, vec![1, 2]), (3, vec![2])] {
        let sk: u32 = ks.iter().sum();
        let computed = build_en(2 + sk).and_then(|x| {
            let z = build_zprime(&x, "Sigma", g, &ks, &ComplementarityHypothesis::holds("elliptic"))?;
            Ok((z.c1_squared() - x.c1_squared(), z.quarter_characteristic()? - x.quarter_characteristic()?))
        });
        b.fallible(
            format!("Z'(1,{g},{ks:?}) increments (8 g sum k, g sum k)"),
            (8 * (g * sk) as i64, (g * sk) as i64),
            computed,
        );
    }
    let amb = build_en(3).and_then(|x| build_zprime(&x, "Sigma", 2, &[1], &ComplementarityHypothesis::fails("not asserted")));
    b.fallible(
        "without complementarity the max part is flagged rim-ambiguous",
        true,
        amb.map(|z| matches!(z.sw, SWValue::MaxOnly { rim_ambiguous: true, .. })),
    );
    b
}

fn surgery() -> Bundle {
    let mut b = Bundle::new("surgery");
    let base = zprime_e(2, 2);
    let Ok(base) = base else {
        b.push("build Z'", "record".into(), format!("{:?}", base.err()), Status::Fail, None);
        return b;
    };
    let k = base.canonical.clone().unwrap_or_default_vec(base.rank());
    let c0 = coeff(&base, &k).unwrap_or_default();
    for row in golden().multipliers {
        let computed = torus_surgery(&base, &row.m).map(|z| coeff(&z, &k).map(|c| c / &c0));
        b.fallible(format!("torus surgery m = {:?} multiplier", row.m), Some(BigInt::from(row.factor)), computed);
    }
    if let Some(t) = base.sw.known_terms() {
        let computed = surgery_formula(&SWValue::Exact { terms: t.clone() }, &t.neg(), -1);
        b.fallible("surgery formula at m = -1 vanishes", SWValue::Zero, computed);
    }
    for m in 0..=3u32 {
        let computed = torus_surgery(&base, &[m]).map(|z| taubes_symplectic_check(&z));
        let expected_ok = m == 0;
        match computed {
            Ok(v) => {
                let ok = match &v {
                    TaubesVerdict::Consistent => expected_ok,
                    TaubesVerdict::Obstructed(_) => !expected_ok,
                    TaubesVerdict::Inapplicable(_) => false,
                };
                b.push(
                    format!("Taubes verdict for Z'(m={m})"),
                    if expected_ok { "consistent" } else { "obstructed" }.into(),
                    format!("{v:?}"),
                    if ok { Status::Pass } else { Status::Fail },
                    None,
                );
            }
            Err(e) => b.push(format!("Taubes verdict for Z'(m={m})"), "verdict".into(), e.to_string(), Status::Fail, None),
        }
        let h = torus_surgery(&base, &[m]).map(|z| homeo_compare(&z, &base).verdict);
        b.fallible(format!("Z'(m={m}) ~ Z'"), Homeo::Homeomorphic, h);
    }
    for g in 1..=4u32 {
        for ks in [vec![1u32], vec![2], vec![1, 1], vec![1, 2]] {
            let computed = scenario_yprime_neg1(g, &ks).and_then(|s| enumerate_candidates(&s)).map(|r| r.is_empty());
            b.fallible(format!("Y'(1,{g},{ks:?})(-1) has no basic classes"), true, computed);
        }
    }
    b
}

fn lefschetz() -> Bundle {
    let mut b = Bundle::new("lefschetz");
    let mut bad = Vec::new();
    for n in 1..=10i64 {
        for g in 1..=10i64 {
            match enk_fibration(n, g) {
                Ok(f) if euler_from_fibration(f.fiber_genus, f.singular_fibers) == 12 * n => {}
                other => bad.push(format!("({n},{g}): {other:?}")),
            }
        }
    }
    b.eq("(16n+8g-8) - 4(2g+n-1) + 4 = 12n for n,g <= 10", Vec::<String>::new(), bad);
    let mut bad = Vec::new();
    for n in 2..=6i64 {
        for g in 0..=6i64 {
            let a = vanishing_cycle_audit(n, g);
            let ok = a.as_ref().is_ok_and(|a| {
                a.total == 16 * n - 8 + 8 * g && (g == 0 || enk_fibration(n, g).is_ok_and(|f| f.singular_fibers == a.total))
            });
            if !ok {
                bad.push(format!("({n},{g})"));
            }
        }
    }
    b.eq("vanishing cycles 16n-8 + 8g match the singular-fiber count", Vec::<String>::new(), bad);
    b.fallible(
        "no reducible fibers for n >= 2",
        vec![Some(0); 9],
        (2..=10).map(|n| enk_fibration(n, 1).map(|f| f.reducible_fibers)).collect(),
    );
    let mut bad = Vec::new();
    for n in 1..=8u32 {
        for g in 1..=8u32 {
            match twisted_fiber_sum_check(n, g) {
                Ok(r) if r.consistent && (r.e, r.sign) == (12 * n as i64, -8 * n as i64) => {}
                other => bad.push(format!("({n},{g}): {other:?}")),
            }
        }
    }
    b.eq("M(n,g) # M(n,g) has (12n, -8n) like E(n), n,g <= 8", Vec::<String>::new(), bad);
    b
}

fn construction3() -> Bundle {
    let mut b = Bundle::new("construction3");
    for n in 1..=4u32 {
        for g in 1..=4u32 {
            let computed = standard_knot(g).and_then(|k| build_y3(n, &k, &k)).map(|y| {
                let k = y.canonical.clone().unwrap_or_default_vec(y.rank());
                (y.c1_squared(), y.lattice.square(&k), coeff(&y, &k), coeff(&y, &-&k))
            });
            let (ni, gi) = (n as i64, g as i64);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            b.fallible(
                format!("Y({n}; K, K), genus {g}: c1^2, K^2, SW(K), SW(-K)"),
                (16 * gi + 8 * ni - 16, 16 * gi + 8 * ni - 16, Some(BigInt::from(1)), Some(BigInt::from(sign))),
                computed,
            );
        }
    }
    let pairs: Vec<(FiberedKnot, FiberedKnot)> = [((7, 2), (4, 3)), ((3, 2), (3, -2)), ((9, 2), (5, 3))]
        .iter()
        .filter_map(|&((p1, q1), (p2, q2))| Some((alexander_torus_knot(p1, q1).ok()?, alexander_torus_knot(p2, q2).ok()?)))
        .collect();
    for (k1, k2) in &pairs {
        for n in 2..=4u32 {
            let computed = build_y3(n, k1, k1).and_then(|a| Ok(a.sw == build_y3(n, k2, k2)?.sw));
            b.fallible(format!("SW(Y({n}; {0},{0})) = SW(Y({n}; {1},{1}))", k1.name, k2.name), true, computed);
        }
    }
    b
}
