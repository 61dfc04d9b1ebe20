//! The analyses behind each subcommand, registered by name.

use bihamil_core::canonical::CanonicalPair;
use bihamil_core::integrals;
use bihamil_core::orbits;
use bihamil_core::pencil::{self, SkewPencil};
use bihamil_core::poisson::{conjugate_twist, is_poisson_pair, lie_poisson, schouten_bracket};
use bihamil_core::schedule::lambda_schedule;
use bihamil_core::{Gq, Vector};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::AnalysisConfig;
use crate::error::CliError;
use crate::input::{Input, Subject};
use crate::io::{point_to_json, ComplexJson};

/// Result of one analysis: the JSON payload, its text rendering and any
/// warnings.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub payload: Value,
    pub text: Vec<String>,
    pub warnings: Vec<String>,
}

pub trait Analysis: Sync {
    fn name(&self) -> &'static str;
    fn run(&self, input: &Input, config: &AnalysisConfig) -> Result<Outcome, CliError>;
}

static REGISTRY: &[&dyn Analysis] = &[&CheckJacobi, &PencilAnalysis, &Classify, &Orbit, &Reduce, &Integrals];

pub fn registry() -> &'static [&'static dyn Analysis] {
    REGISTRY
}

pub fn lookup(name: &str) -> Option<&'static dyn Analysis> {
    REGISTRY.iter().copied().find(|a| a.name() == name)
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(format!("serialization: {e}")))
}

fn fmt_point(z: &[Gq]) -> String {
    let parts: Vec<String> = z.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn canonical_pair(input: &Input, config: &AnalysisConfig) -> Result<CanonicalPair, CliError> {
    Ok(CanonicalPair::new(input.subject.algebra()?.clone(), config.genericity())?)
}

/// Runs `f` on every point in parallel, keeping the input order.
fn per_point<T, F>(points: &[Vector], f: F) -> Result<Vec<T>, CliError>
where
    T: Send,
    F: Fn(&Vector) -> Result<T, CliError> + Sync + Send,
{
    points.par_iter().map(f).collect()
}

pub struct CheckJacobi;

impl Analysis for CheckJacobi {
    fn name(&self) -> &'static str {
        "check-jacobi"
    }

    fn run(&self, input: &Input, _config: &AnalysisConfig) -> Result<Outcome, CliError> {
        let (first, second) = match &input.subject {
            Subject::Algebra(g) => {
                let c = lie_poisson(g);
                let ct = conjugate_twist(&c)?;
                (c, ct)
            }
            Subject::Pair(p) => (p.first.clone(), p.second.clone()),
        };
        let t = schouten_bracket(&first, &first)?;
        let components: Vec<Value> = t
            .components()
            .map(|(&(i, j, k), p)| json!({ "i": i, "j": j, "k": k, "poly": p.to_string() }))
            .collect();
        let pair = is_poisson_pair(&first, &second)?;
        let holds = t.is_zero();
        let mut text = vec![format!(
            "[c,c] = 0: {}",
            if holds { "pass" } else { "FAIL" }
        )];
        for c in &components {
            text.push(format!("  [c,c]^({},{},{}) = {}", c["i"], c["j"], c["k"], c["poly"].as_str().unwrap_or("")));
        }
        text.push(format!(
            "second field Poisson: {}, compatible: {}, independent: {}, Poisson pair: {}",
            pair.second_poisson,
            pair.compatible,
            pair.linearly_independent,
            pair.is_poisson_pair()
        ));
        Ok(Outcome {
            payload: json!({
                "subject": input.subject.name(),
                "jacobi_holds": holds,
                "nonzero_components": components,
                "pair_check": to_value(&pair)?,
                "is_poisson_pair": pair.is_poisson_pair(),
            }),
            text,
            warnings: Vec::new(),
        })
    }
}

pub struct PencilAnalysis;

impl Analysis for PencilAnalysis {
    fn name(&self) -> &'static str {
        "pencil"
    }

    fn run(&self, input: &Input, config: &AnalysisConfig) -> Result<Outcome, CliError> {
        let canonical = match &input.subject {
            Subject::Algebra(_) => Some(canonical_pair(input, config)?),
            Subject::Pair(_) => None,
        };
        let points = input.points(config);
        let results = per_point(&points, |z| {
            let p = match (&canonical, &input.subject) {
                (Some(cp), _) => cp.pencil_at(z)?.ok_or_else(|| {
                    CliError::Precondition(format!("C(z) vanishes at {}: no pencil to analyze", fmt_point(z)))
                })?,
                (None, Subject::Pair(f)) => SkewPencil::new(f.first.evaluate_at(z)?, f.second.evaluate_at(z)?)?,
                (None, Subject::Algebra(_)) => unreachable!("algebras always build a canonical pair"),
            };
            let inv = pencil::kronecker_invariants(&p)?;
            let verdict = pencil::is_complete(&p)?;
            Ok((z.clone(), inv, verdict))
        })?;
        let mut entries = Vec::new();
        let mut text = Vec::new();
        for (z, inv, verdict) in &results {
            let jordan: Vec<String> = inv
                .jordan_part
                .iter()
                .map(|j| format!("{} total {}", j.direction.label, j.total_dim))
                .collect();
            text.push(format!(
                "{}: Kronecker blocks {:?}, Jordan {}, complete: {}",
                fmt_point(z),
                inv.kronecker_block_dims(),
                if jordan.is_empty() { "none".to_string() } else { jordan.join("; ") },
                verdict.complete
            ));
            entries.push(json!({
                "point": point_to_json(z),
                "kronecker_block_dims": inv.kronecker_block_dims(),
                "invariants": to_value(inv)?,
                "verdict": to_value(verdict)?,
            }));
        }
        Ok(Outcome {
            payload: json!({ "subject": input.subject.name(), "points": entries }),
            text,
            warnings: Vec::new(),
        })
    }
}

pub struct Classify;

impl Analysis for Classify {
    fn name(&self) -> &'static str {
        "classify"
    }

    fn run(&self, input: &Input, config: &AnalysisConfig) -> Result<Outcome, CliError> {
        let pair = canonical_pair(input, config)?;
        let points = input.points(config);
        let results = per_point(&points, |z| Ok(pair.classify_point(z, config.lambda_samples)?))?;
        let text = results
            .iter()
            .map(|c| {
                format!(
                    "{}: rank C = {}, Sing: {}, incompleteness: {}, irregularity: {}, mu = {}",
                    fmt_point(&c.z),
                    c.rank_c,
                    c.in_sing,
                    c.in_incompleteness,
                    c.in_irregularity,
                    c.mu
                )
            })
            .collect();
        Ok(Outcome {
            payload: json!({
                "subject": input.subject.name(),
                "rank_of_algebra": pair.rank_of_algebra(),
                "points": to_value(&results)?,
            }),
            text,
            warnings: Vec::new(),
        })
    }
}

pub struct Orbit;

impl Analysis for Orbit {
    fn name(&self) -> &'static str {
        "orbit"
    }

    fn run(&self, input: &Input, config: &AnalysisConfig) -> Result<Outcome, CliError> {
        let pair = canonical_pair(input, config)?;
        let points = input.points(config);
        let results = per_point(&points, |z| {
            let frame = orbits::orbit_tangent(&pair, z)?;
            let isotropic = if pair.in_sing(z)? {
                None
            } else {
                Some(orbits::cr_isotropy_check(&pair, z)?)
            };
            Ok(json!({
                "point": point_to_json(z),
                "orbit_dim": frame.orbit_dim,
                "cr_dim": frame.cr_dim,
                "leaf_dim": frame.leaf_10_basis.len(),
                "mu": pair.mu(z)?,
                "cr_generic": orbits::cr_genericity_check(&frame),
                "cr_isotropic": isotropic,
            }))
        })?;
        let text = results
            .iter()
            .zip(&points)
            .map(|(r, z)| {
                format!(
                    "{}: orbit_dim {}, cr_dim {}, leaf_dim {}, cr_generic {}",
                    fmt_point(z),
                    r["orbit_dim"],
                    r["cr_dim"],
                    r["leaf_dim"],
                    r["cr_generic"]
                )
            })
            .collect();
        Ok(Outcome {
            payload: json!({ "subject": input.subject.name(), "points": results }),
            text,
            warnings: Vec::new(),
        })
    }
}

pub struct Reduce;

impl Analysis for Reduce {
    fn name(&self) -> &'static str {
        "reduce"
    }

    fn run(&self, input: &Input, config: &AnalysisConfig) -> Result<Outcome, CliError> {
        let pair = canonical_pair(input, config)?;
        let points = input.points(config);
        let results = per_point(&points, |z| {
            if pair.in_sing(z)? {
                return Err(CliError::Precondition(format!(
                    "{} lies in Sing; the reduction is only defined on regular orbits",
                    fmt_point(z)
                )));
            }
            Ok(orbits::reduction_completeness(&pair, z, config.lambda_samples)?)
        })?;
        let text = results
            .iter()
            .map(|r| {
                format!(
                    "{}: complete: {}, minimal: {}, k = {}, quotient_dim {}, reduced rank {}",
                    fmt_point(&r.z),
                    r.complete,
                    r.minimal,
                    r.k,
                    r.quotient_dim,
                    r.reduced_generic_rank
                )
            })
            .collect();
        Ok(Outcome {
            payload: json!({ "subject": input.subject.name(), "points": to_value(&results)? }),
            text,
            warnings: Vec::new(),
        })
    }
}

pub struct Integrals;

impl Analysis for Integrals {
    fn name(&self) -> &'static str {
        "integrals"
    }

    fn run(&self, input: &Input, config: &AnalysisConfig) -> Result<Outcome, CliError> {
        let pair = canonical_pair(input, config)?;
        let degree = config.degree_bound;
        let lambdas = lambda_schedule(config.lambda_samples);
        let casimirs = integrals::casimir_basis(&pair, degree)?;
        let family = integrals::family_from_casimirs(&casimirs, degree, &lambdas)?;
        let points = input.points(config);
        let failures = integrals::involutivity_failures(&family, &pair, &lambdas, &points)?;
        let members: Vec<_> = family.polys().collect();
        let invariant = members
            .par_iter()
            .map(|f| integrals::g0_invariance_check(f, &pair, &points))
            .collect::<Result<Vec<bool>, _>>()?
            .into_iter()
            .all(|b| b);
        let mut warnings = family.warnings.clone();
        let mut lagrangian = Value::Null;
        if !family.is_empty() {
            let regular = points
                .iter()
                .find(|z| matches!(pair.in_kronecker_irregularity(z), Ok(false)));
            match regular {
                Some(z) => {
                    lagrangian = json!({
                        "point": point_to_json(z),
                        "holds": integrals::cr_lagrangian_check(&family, &pair, z)?,
                        "differential_rank": integrals::differential_rank(&family, z),
                    });
                }
                None => warnings.push("no sampled point lies off the irregularity set; CR-lagrangian check skipped".into()),
            }
        }
        let mut text = vec![
            format!("{} Casimirs up to degree {degree}, family of {} members", casimirs.len(), family.len()),
            format!("involutive: {}", failures.is_empty()),
            format!("invariant under the real orbit generators: {invariant}"),
        ];
        if let Some(h) = lagrangian.get("holds") {
            text.push(format!("CR-lagrangian at the first regular point: {h}"));
        }
        Ok(Outcome {
            payload: json!({
                "subject": input.subject.name(),
                "degree_bound": degree,
                "casimirs": casimirs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "member_count": family.len(),
                "family": to_value(&family)?,
                "involutive": failures.is_empty(),
                "involutivity_failures": failures,
                "g0_invariant": invariant,
                "cr_lagrangian": lagrangian,
                "lambdas": lambdas.iter().map(|l| [ComplexJson::from_gq(&l.0), ComplexJson::from_gq(&l.1)]).collect::<Vec<_>>(),
            }),
            text,
            warnings,
        })
    }
}
