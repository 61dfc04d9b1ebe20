//! JSON formats for algebras, points and bivector fields, and the point
//! literal accepted on the command line.

use bihamil_core::catalog::PairFixture;
use bihamil_core::poisson::{BivectorField, LieAlgebraSpec, VariableKind};
use bihamil_core::scalar::parse_rational;
use bihamil_core::{Gq, MultiPoly, Vector};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// A Gaussian rational as a pair of exact rational strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

fn zero_string() -> String {
    "0".into()
}

impl ComplexJson {
    pub fn from_gq(x: &Gq) -> Self {
        Self {
            re: x.re.to_string(),
            im: x.im.to_string(),
        }
    }

    pub fn to_gq(&self) -> Result<Gq, CliError> {
        let re = parse_rational(&self.re).map_err(|e| CliError::Input(e.to_string()))?;
        let im = parse_rational(&self.im).map_err(|e| CliError::Input(e.to_string()))?;
        Ok(Gq::new(re, im))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub re: String,
    #[serde(default = "zero_string")]
    pub im: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub name: String,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub brackets: Vec<BracketJson>,
}

pub fn algebra_to_json(g: &LieAlgebraSpec) -> AlgebraJson {
    AlgebraJson {
        name: g.name.clone(),
        dim: g.dim,
        labels: Some(g.basis_labels.clone()),
        brackets: g
            .constants()
            .map(|(&(i, j, k), v)| BracketJson {
                i,
                j,
                k,
                re: v.re.to_string(),
                im: v.im.to_string(),
            })
            .collect(),
    }
}

pub fn algebra_from_json(a: &AlgebraJson) -> Result<LieAlgebraSpec, CliError> {
    if a.dim == 0 {
        return Err(CliError::Input("algebra dimension must be positive".into()));
    }
    let mut g = LieAlgebraSpec::new(a.name.clone(), a.dim);
    if let Some(labels) = &a.labels {
        if labels.len() != a.dim {
            return Err(CliError::Input(format!(
                "{} labels given for a {}-dimensional algebra",
                labels.len(),
                a.dim
            )));
        }
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        g = g.with_labels(&refs);
    }
    for b in &a.brackets {
        let v = ComplexJson {
            re: b.re.clone(),
            im: b.im.clone(),
        }
        .to_gq()?;
        if !g.get(b.i, b.j, b.k).is_zero() {
            return Err(CliError::Input(format!(
                "bracket ({}, {}, {}) given twice",
                b.i, b.j, b.k
            )));
        }
        g.set(b.i, b.j, b.k, v).map_err(|e| CliError::Input(e.to_string()))?;
    }
    Ok(g)
}

pub fn parse_algebra(text: &str) -> Result<LieAlgebraSpec, CliError> {
    let a: AlgebraJson = serde_json::from_str(text).map_err(|e| CliError::Input(format!("algebra JSON: {e}")))?;
    algebra_from_json(&a)
}

pub fn point_to_json(z: &[Gq]) -> Vec<ComplexJson> {
    z.iter().map(ComplexJson::from_gq).collect()
}

pub fn parse_points(text: &str) -> Result<Vec<Vector>, CliError> {
    let pts: Vec<Vec<ComplexJson>> =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("points JSON: {e}")))?;
    pts.iter()
        .map(|p| p.iter().map(ComplexJson::to_gq).collect())
        .collect()
}

/// Parses `"(1,i,0)"`-style literals. Parentheses are required and every
/// coordinate must be a complete Gaussian-rational literal.
pub fn parse_point_literal(s: &str) -> Result<Vector, CliError> {
    let bad = |why: &str| CliError::Input(format!("point literal {s:?}: {why}"));
    let body = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| bad("expected the form (a,b,...)"))?;
    if body.contains(['(', ')']) {
        return Err(bad("nested parentheses"));
    }
    body.split(',')
        .map(|c| {
            if c.trim().is_empty() {
                return Err(bad("empty coordinate"));
            }
            c.parse::<Gq>().map_err(|e| bad(&e.to_string()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub i: usize,
    pub j: usize,
    pub coeff: ComplexJson,
    pub exponents: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub num_vars: usize,
    pub kind: VariableKind,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub coordinates: Option<Vec<String>>,
    pub first: FieldJson,
    pub second: FieldJson,
}

pub fn field_to_json(c: &BivectorField) -> FieldJson {
    let mut terms = Vec::new();
    for (&(i, j), p) in c.components() {
        for (e, v) in p.terms() {
            terms.push(TermJson {
                i,
                j,
                coeff: ComplexJson::from_gq(v),
                exponents: e.clone(),
            });
        }
    }
    FieldJson {
        num_vars: c.num_vars(),
        kind: c.kind(),
        terms,
    }
}

/// Exponent vectors may list only the `n` holomorphic (or real) variables;
/// the conjugate block is then zero.
pub fn field_from_json(f: &FieldJson) -> Result<BivectorField, CliError> {
    let n = f.num_vars;
    if n == 0 {
        return Err(CliError::Input("bivector field needs at least one variable".into()));
    }
    let mut c = BivectorField::zero(n, f.kind);
    for t in &f.terms {
        let mut e = t.exponents.clone();
        if e.len() == n {
            e.resize(2 * n, 0);
        }
        let p = MultiPoly::from_terms(n, [(e, t.coeff.to_gq()?)]).map_err(|e| CliError::Input(e.to_string()))?;
        c.add_component(t.i, t.j, &p).map_err(|e| CliError::Input(e.to_string()))?;
    }
    Ok(c)
}

pub fn pair_to_json(p: &PairFixture) -> PairJson {
    PairJson {
        name: Some(p.name.clone()),
        coordinates: Some(p.coordinates.clone()),
        first: field_to_json(&p.first),
        second: field_to_json(&p.second),
    }
}

pub fn parse_pair(text: &str) -> Result<PairFixture, CliError> {
    let p: PairJson = serde_json::from_str(text).map_err(|e| CliError::Input(format!("pair JSON: {e}")))?;
    let first = field_from_json(&p.first)?;
    let second = field_from_json(&p.second)?;
    if first.num_vars() != second.num_vars() {
        return Err(CliError::Input("the two fields have different numbers of variables".into()));
    }
    let n = first.num_vars();
    let coordinates = p.coordinates.unwrap_or_else(|| (1..=n).map(|k| format!("x{k}")).collect());
    if coordinates.len() != n {
        return Err(CliError::Input("one coordinate label per variable expected".into()));
    }
    Ok(PairFixture {
        name: p.name.unwrap_or_else(|| "pair".into()),
        coordinates,
        first,
        second,
    })
}
