//! JSON manifold expressions and their evaluation.

use serde::{Deserialize, Serialize};

use super::builders::*;
use super::fiber_sum::{fiber_sum, ComplementarityHypothesis, FiberSumOptions};
use super::surgery::{knot_surgery, torus_surgery};
use crate::algebra::{alexander_torus_knot, knot_by_name, FiberedKnot};
use crate::error::{Error, Result};
use crate::lefschetz::build_mng;
use crate::manifold::FourManifold;

/// A knot given by name (`"trefoil"`, `"T(5,2)"`), torus parameters, or an
/// explicit Alexander polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum KnotSpec {
    Name(String),
    Torus { torus: [i64; 2] },
    Explicit(FiberedKnot),
}

impl KnotSpec {
    pub fn resolve(&self) -> Result<FiberedKnot> {
        match self {
            KnotSpec::Name(n) => knot_by_name(n),
            KnotSpec::Torus { torus: [p, q] } => alexander_torus_knot(*p, *q),
            KnotSpec::Explicit(k) => Ok(k.clone()),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(default, rename = "L", skip_serializing_if = "Option::is_none")]
    pub ks: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knot: Option<KnotSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knot2: Option<KnotSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum ManifoldExpr {
    Model {
        name: String,
        #[serde(default)]
        params: ModelParams,
    },
    KnotSurgery {
        child: Box<ManifoldExpr>,
        torus: String,
        knot: KnotSpec,
    },
    FiberSum {
        left: Box<ManifoldExpr>,
        left_surface: String,
        right: Box<ManifoldExpr>,
        right_surface: String,
        #[serde(default)]
        options: FiberSumOptions,
    },
    TorusSurgery {
        child: Box<ManifoldExpr>,
        m: Vec<u32>,
    },
    Z {
        x: Box<ManifoldExpr>,
        c: String,
        g: u32,
    },
    Zprime {
        x: Box<ManifoldExpr>,
        c: String,
        g: u32,
        #[serde(rename = "L")]
        ks: Vec<u32>,
        complementary: ComplementarityHypothesis,
    },
}

impl ManifoldExpr {
    pub fn model(name: &str, params: ModelParams) -> Self {
        ManifoldExpr::Model { name: name.into(), params }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn need<T: Clone>(v: &Option<T>, model: &str, field: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::Precondition(format!("model {model} needs parameter `{field}`")))
}

fn eval_model(name: &str, p: &ModelParams) -> Result<FourManifold> {
    match name {
        "E" => build_en(need(&p.n, name, "n")?),
        "K3" => build_k3(),
        "K3K" => build_k3_knot_surgery(&need(&p.knot, name, "knot")?.resolve()?),
        "H" => build_horikawa(need(&p.m, name, "m")?),
        "S1xMK" => build_s1xmk(&need(&p.knot, name, "knot")?.resolve()?),
        "Y" => build_y(need(&p.n, name, "n")?, need(&p.g, name, "g")?),
        "Yprime" => build_yprime(need(&p.g, name, "g")?, &need(&p.ks, name, "L")?),
        "Zmg" => build_zmg(need(&p.m, name, "m")?, need(&p.g, name, "g")?),
        "Y3" => {
            let k1 = need(&p.knot, name, "knot")?.resolve()?;
            let k2 = match &p.knot2 {
                Some(k) => k.resolve()?,
                None => k1.clone(),
            };
            build_y3(need(&p.n, name, "n")?, &k1, &k2)
        }
        "Mng" => build_mng(need(&p.n, name, "n")?, need(&p.g, name, "g")?),
        other => Err(Error::Precondition(format!(
            "unknown model `{other}` (known: E, K3, K3K, H, S1xMK, Y, Yprime, Zmg, Y3, Mng)"
        ))),
    }
}

/// Evaluate an expression tree; errors carry the JSON path of the failing node.
pub fn eval_expr(x: &ManifoldExpr) -> Result<FourManifold> {
    eval_at(x, "$")
}

fn eval_at(x: &ManifoldExpr, path: &str) -> Result<FourManifold> {
    let here = |r: Result<FourManifold>| r.map_err(|e| e.at(path));
    match x {
        ManifoldExpr::Model { name, params } => here(eval_model(name, params)),
        ManifoldExpr::KnotSurgery { child, torus, knot } => {
            let m = eval_at(child, &format!("{path}.child"))?;
            let k = knot.resolve().map_err(|e| e.at(format!("{path}.knot")))?;
            here(knot_surgery(&m, torus, &k))
        }
        ManifoldExpr::FiberSum { left, left_surface, right, right_surface, options } => {
            let a = eval_at(left, &format!("{path}.left"))?;
            let b = eval_at(right, &format!("{path}.right"))?;
            here(fiber_sum(&a, left_surface, &b, right_surface, options))
        }
        ManifoldExpr::TorusSurgery { child, m } => {
            let z = eval_at(child, &format!("{path}.child"))?;
            here(torus_surgery(&z, m))
        }
        ManifoldExpr::Z { x, c, g } => {
            let xm = eval_at(x, &format!("{path}.x"))?;
            here(build_z(&xm, c, *g))
        }
        ManifoldExpr::Zprime { x, c, g, ks, complementary } => {
            let xm = eval_at(x, &format!("{path}.x"))?;
            here(build_zprime(&xm, c, *g, ks, complementary))
        }
    }
}
