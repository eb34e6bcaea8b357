//! Adjunction-inequality and simple-type enumeration of basic-class
//! candidates.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::kernel::{integer_kernel, rational_inverse, rational_rank};
use crate::algebra::{chain_intersection_matrix, ClassVec, IntLattice};
use crate::constructions::builders::{build_y, build_yprime};
use crate::error::{Error, Result};
use crate::manifold::{FourManifold, TrackedSurface};

/// Enumeration boxes larger than this are refused.
pub const MAX_BOX: u128 = 100_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionScenario {
    pub name: String,
    pub lattice: IntLattice,
    pub surfaces: Vec<TrackedSurface>,
    pub e: i64,
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Enumeration {
    Vanishes { reason: String },
    Candidates { classes: Vec<ClassVec> },
}

impl Enumeration {
    pub fn classes(&self) -> &[ClassVec] {
        match self {
            Enumeration::Vanishes { .. } => &[],
            Enumeration::Candidates { classes } => classes,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.classes().is_empty()
    }
}

impl AdjunctionScenario {
    pub fn validate(&self) -> Result<()> {
        for s in &self.surfaces {
            self.lattice.check(&s.cls)?;
            let sq = self.lattice.square(&s.cls);
            if sq != s.self_int {
                return Err(Error::InconsistentRecord(format!(
                    "scenario {}: surface {} has self_int {} but Gram square {sq}",
                    self.name, s.label, s.self_int
                )));
            }
        }
        Ok(())
    }

    /// `2e + 3 sign`, the square of every basic class of simple type.
    pub fn simple_type_square(&self) -> i64 {
        2 * self.e + 3 * self.sign
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let sc: AdjunctionScenario = serde_json::from_str(s)?;
        sc.validate()?;
        Ok(sc)
    }
}

/// The constraint data after the equalities have been solved: candidates
/// are `sum x_j basis[j]` with `|rows[i] . x| <= bounds[i]`.
#[derive(Clone, Debug)]
pub struct ReducedRegion {
    pub basis: Vec<ClassVec>,
    pub rows: Vec<Vec<i64>>,
    pub bounds: Vec<i64>,
}

pub enum Reduction {
    Vanishes(String),
    Region(ReducedRegion),
}

/// Steps (1)-(2): essential spheres, violated bounds, equality constraints.
pub fn reduce(s: &AdjunctionScenario) -> Result<Reduction> {
    s.validate()?;
    let r = s.lattice.rank();
    for surf in &s.surfaces {
        if surf.genus == 0 && surf.self_int >= 0 && surf.essential {
            return Ok(Reduction::Vanishes(format!(
                "{} is an essential sphere of square {}",
                surf.label, surf.self_int
            )));
        }
    }
    let mut eq_rows = Vec::new();
    let mut ineq = Vec::new();
    for surf in &s.surfaces {
        if surf.self_int < 0 {
            log::warn!("{}: surface {} has negative square, ignored", s.name, surf.label);
            continue;
        }
        if surf.genus == 0 {
            continue;
        }
        let bound = 2 * surf.genus as i64 - 2 - surf.self_int;
        let row = s.lattice.dual(&surf.cls);
        if bound < 0 {
            return Ok(Reduction::Vanishes(format!(
                "{} (genus {}, square {}) violates the adjunction inequality for every class",
                surf.label, surf.genus, surf.self_int
            )));
        }
        if bound == 0 {
            eq_rows.push(row);
        } else {
            ineq.push((row, bound));
        }
    }
    let basis = if eq_rows.is_empty() {
        (0..r).map(|i| ClassVec::unit(r, i)).collect()
    } else {
        integer_kernel(&eq_rows, r)?
    };
    let rows = ineq
        .iter()
        .map(|(row, _)| basis.iter().map(|b| row.iter().zip(&b.0).map(|(x, y)| x * y).sum()).collect())
        .collect();
    let bounds = ineq.iter().map(|(_, b)| *b).collect();
    Ok(Reduction::Region(ReducedRegion { basis, rows, bounds }))
}

fn combinations(m: usize, d: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..d {
        c = c * (m - i) as u128 / (i + 1) as u128;
    }
    c
}

fn for_each_subset(m: usize, d: usize, f: &mut impl FnMut(&[usize])) {
    let mut idx: Vec<usize> = (0..d).collect();
    loop {
        f(&idx);
        let Some(i) = (0..d).rev().find(|&i| idx[i] != i + m - d) else { return };
        idx[i] += 1;
        for j in i + 1..d {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl ReducedRegion {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Step (3): the region is bounded iff the inequality functionals span
    /// the dual of the solution sublattice.
    pub fn is_bounded(&self) -> bool {
        self.dim() == 0 || (!self.rows.is_empty() && rational_rank(&self.rows) == self.dim())
    }

    /// Per-coordinate bounds `|x_j| <= box[j]`: for any invertible square
    /// subsystem `A_S x = y` with `|y| <= b_S`, `|x_j| <= sum_i |A_S^-1[j][i]| b_i`.
    pub fn box_bounds(&self) -> Result<Vec<i64>> {
        let d = self.dim();
        if d == 0 {
            return Ok(vec![]);
        }
        if !self.is_bounded() {
            return Err(Error::Unbounded(format!(
                "{} inequality functionals of rank {} on a rank-{d} solution lattice",
                self.rows.len(),
                rational_rank(&self.rows)
            )));
        }
        let m = self.rows.len();
        let mut best: Vec<Option<BigRational>> = vec![None; d];
        let mut consider = |sub: &[usize]| {
            let a: Vec<Vec<i64>> = sub.iter().map(|&i| self.rows[i].clone()).collect();
            let Some(inv) = rational_inverse(&a) else { return };
            for (j, slot) in best.iter_mut().enumerate() {
                let mut acc = BigRational::zero();
                for (c, &i) in sub.iter().enumerate() {
                    acc += inv[j][c].abs() * BigRational::from_integer(self.bounds[i].into());
                }
                if slot.as_ref().is_none_or(|b| acc < *b) {
                    *slot = Some(acc);
                }
            }
        };
        if combinations(m, d) <= 2000 {
            for_each_subset(m, d, &mut consider);
        } else {
            // greedy independent subsets starting at each row
            for start in 0..m {
                let mut sub: Vec<usize> = Vec::new();
                for i in (start..m).chain(0..start) {
                    let mut trial: Vec<Vec<i64>> = sub.iter().map(|&k| self.rows[k].clone()).collect();
                    trial.push(self.rows[i].clone());
                    if rational_rank(&trial) == trial.len() {
                        sub.push(i);
                    }
                    if sub.len() == d {
                        break;
                    }
                }
                if sub.len() == d {
                    consider(&sub);
                }
            }
        }
        best.into_iter()
            .map(|b| {
                let b = b.ok_or_else(|| Error::Unbounded("no invertible subsystem".into()))?;
                b.floor().to_integer().to_i64().ok_or(Error::Overflow("box bound"))
            })
            .collect()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.rows.iter().zip(&self.bounds).all(|(row, &b)| row.iter().zip(x).map(|(a, c)| a * c).sum::<i64>().abs() <= b)
    }

    pub fn class_of(&self, x: &[i64]) -> ClassVec {
        let r = self.basis.first().map_or(0, |b| b.len());
        let mut v = vec![0i64; r];
        for (xj, b) in x.iter().zip(&self.basis) {
            if *xj != 0 {
                for (vi, bi) in v.iter_mut().zip(&b.0) {
                    *vi += xj * bi;
                }
            }
        }
        ClassVec(v)
    }
}

/// Basic-class candidates allowed by the adjunction inequalities and the
/// simple-type equality `k^2 = 2e + 3 sign`.
pub fn enumerate_candidates(s: &AdjunctionScenario) -> Result<Enumeration> {
    let region = match reduce(s)? {
        Reduction::Vanishes(reason) => return Ok(Enumeration::Vanishes { reason }),
        Reduction::Region(r) => r,
    };
    let target = s.simple_type_square();
    let r = s.lattice.rank();
    if region.dim() == 0 {
        let classes = if target == 0 { vec![ClassVec::zeros(r)] } else { vec![] };
        return Ok(Enumeration::Candidates { classes });
    }
    let bx = region.box_bounds()?;
    let size = bx.iter().fold(1u128, |acc, &b| acc.saturating_mul(2 * b as u128 + 1));
    if size > MAX_BOX {
        return Err(Error::TooLarge(size));
    }
    let mut out = Vec::new();
    let mut x: Vec<i64> = bx.iter().map(|b| -b).collect();
    loop {
        if region.contains(&x) {
            let k = region.class_of(&x);
            if s.lattice.square(&k) == target {
                out.push(k);
            }
        }
        // lexicographic increment, last coordinate fastest
        let mut j = x.len();
        loop {
            if j == 0 {
                out.sort();
                return Ok(Enumeration::Candidates { classes: out });
            }
            j -= 1;
            if x[j] < bx[j] {
                x[j] += 1;
                for (xi, bi) in x.iter_mut().zip(&bx).skip(j + 1) {
                    *xi = -bi;
                }
                break;
            }
        }
    }
}

pub fn scenario_from_manifold(m: &FourManifold) -> AdjunctionScenario {
    AdjunctionScenario {
        name: m.name.clone(),
        lattice: m.lattice.clone(),
        surfaces: m.surfaces.clone(),
        e: m.e,
        sign: m.sign,
    }
}

/// `Y_{2,g}` in the basis `tau, Sigma, R1..R2g, V1..V2g`.
pub fn scenario_y2g(g: u32) -> Result<AdjunctionScenario> {
    if g < 1 {
        return Err(Error::Precondition("Y(2,g) needs g >= 1".into()));
    }
    let h = 2 * g as usize;
    let r = 2 + 2 * h;
    let mut names = vec!["tau".to_string(), "Sigma".to_string()];
    names.extend((1..=h).map(|i| format!("R{i}")));
    names.extend((1..=h).map(|i| format!("V{i}")));
    let mut gram = vec![vec![0i64; r]; r];
    gram[0][1] = 1;
    gram[1][0] = 1;
    let chain = chain_intersection_matrix(h);
    for j in 0..h {
        for i in 0..h {
            gram[2 + j][2 + h + i] = chain[i][j];
            gram[2 + h + i][2 + j] = chain[i][j];
        }
        gram[2 + h + j][2 + h + j] = 2;
    }
    let lattice = IntLattice::new(names.clone(), gram)?;
    let mut surfaces = vec![
        TrackedSurface::new("tau", ClassVec::unit(r, 0), 2, 0),
        TrackedSurface::new("Sigma", ClassVec::unit(r, 1), g, 0),
    ];
    for i in 0..h {
        surfaces.push(TrackedSurface::new(names[2 + i].clone(), ClassVec::unit(r, 2 + i), 1, 0));
    }
    for i in 0..h {
        surfaces.push(TrackedSurface::new(names[2 + h + i].clone(), ClassVec::unit(r, 2 + h + i), 2, 2));
    }
    Ok(AdjunctionScenario { name: format!("Y(2,{g})"), lattice, surfaces, e: 4 * g as i64 - 4, sign: 0 })
}

pub fn scenario_yng(n: u32, g: u32) -> Result<AdjunctionScenario> {
    Ok(scenario_from_manifold(&build_y(n, g)?))
}

pub fn scenario_yprime(g: u32, ks: &[u32]) -> Result<AdjunctionScenario> {
    Ok(scenario_from_manifold(&build_yprime(g, ks)?))
}

/// `Y'_{1,g,L}(-1)`: same lattice, plus the genus `g - 1` surface `Gamma`
/// capping the surgered fiber, homologous to `Sigma`.
pub fn scenario_yprime_neg1(g: u32, ks: &[u32]) -> Result<AdjunctionScenario> {
    let mut s = scenario_yprime(g, ks)?;
    let cls = s.lattice.class("Sigma")?;
    let mut gamma = TrackedSurface::new("Gamma", cls, g - 1, 0);
    gamma.essential = g == 1;
    s.surfaces.push(gamma);
    s.name = format!("Y'(1,{g},{ks:?})(-1)");
    s.validate()?;
    Ok(s)
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad integer `{x}`"))))
        .collect()
}

/// Built-in scenarios: `Y2g(g)`, `Yng(n,g)`, `Yprime(g;k1,k2,..)`,
/// `Yprime_neg1(g;k1,..)`.
pub fn builtin_scenario(name: &str) -> Result<AdjunctionScenario> {
    let name = name.trim();
    let (head, args) = name
        .strip_suffix(')')
        .and_then(|s| s.split_once('('))
        .ok_or_else(|| Error::Parse(format!("unknown scenario `{name}`")))?;
    match head {
        "Y2g" => {
            let v = parse_list(args)?;
            match v.as_slice() {
                [g] => scenario_y2g(*g),
                _ => Err(Error::Parse("Y2g takes one argument".into())),
            }
        }
        "Yng" => match parse_list(args)?.as_slice() {
            [n, g] => scenario_yng(*n, *g),
            _ => Err(Error::Parse("Yng takes two arguments".into())),
        },
        "Yprime" | "Yprime_neg1" => {
            let (g, ks) = args.split_once(';').ok_or_else(|| Error::Parse(format!("expected `{head}(g;k1,..)`")))?;
            let g = parse_list(g)?;
            let [g] = g.as_slice() else { return Err(Error::Parse("one genus expected before `;`".into())) };
            let ks = parse_list(ks)?;
            if head == "Yprime" {
                scenario_yprime(*g, &ks)
            } else {
                scenario_yprime_neg1(*g, &ks)
            }
        }
        _ => Err(Error::Parse(format!("unknown scenario `{name}`"))),
    }
}
