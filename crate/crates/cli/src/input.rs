//! Resolution of command-line inputs into an analysis subject and points.

use std::fs;

use bihamil_core::catalog::{self, PairFixture};
use bihamil_core::poisson::{LieAlgebraSpec, VariableKind};
use bihamil_core::schedule::PointSchedule;
use bihamil_core::Vector;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::args::InputArgs;
use crate::config::AnalysisConfig;
use crate::error::CliError;
use crate::io;

#[derive(Clone, Debug)]
pub enum Subject {
    Algebra(LieAlgebraSpec),
    Pair(PairFixture),
}

impl Subject {
    pub fn dim(&self) -> usize {
        match self {
            Subject::Algebra(g) => g.dim,
            Subject::Pair(p) => p.first.num_vars(),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Subject::Algebra(g) => &g.name,
            Subject::Pair(p) => &p.name,
        }
    }

    pub fn algebra(&self) -> Result<&LieAlgebraSpec, CliError> {
        match self {
            Subject::Algebra(g) => Ok(g),
            Subject::Pair(_) => Err(CliError::Input("this command needs an algebra, not a bivector pair".into())),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Input {
    pub subject: Subject,
    /// Points given explicitly; `None` means scheduled points are used.
    pub explicit_points: Option<Vec<Vector>>,
}

impl Input {
    pub fn from_args(args: &InputArgs) -> Result<Self, CliError> {
        let subject = if let Some(name) = &args.algebra {
            Subject::Algebra(catalog::algebra(name).ok_or_else(|| {
                CliError::Input(format!(
                    "unknown algebra {name:?}; known: {}",
                    catalog::algebra_names().join(", ")
                ))
            })?)
        } else if let Some(path) = &args.algebra_file {
            Subject::Algebra(io::parse_algebra(&fs::read_to_string(path)?)?)
        } else if let Some(name) = &args.fixture {
            Subject::Pair(catalog::fixture(name).ok_or_else(|| {
                CliError::Input(format!(
                    "unknown fixture {name:?}; known: {}",
                    catalog::fixture_names().join(", ")
                ))
            })?)
        } else if let Some(path) = &args.pair_file {
            Subject::Pair(io::parse_pair(&fs::read_to_string(path)?)?)
        } else {
            return Err(CliError::Input("no algebra or pair given".into()));
        };
        let explicit_points = if let Some(path) = &args.points_file {
            Some(io::parse_points(&fs::read_to_string(path)?)?)
        } else if !args.points.is_empty() {
            Some(args.points.iter().map(|s| io::parse_point_literal(s)).collect::<Result<_, _>>()?)
        } else {
            None
        };
        let input = Self {
            subject,
            explicit_points,
        };
        if let Some(pts) = &input.explicit_points {
            let n = input.subject.dim();
            if let Some(bad) = pts.iter().find(|p| p.len() != n) {
                return Err(CliError::Input(format!(
                    "point has {} coordinates, expected {n}",
                    bad.len()
                )));
            }
        }
        Ok(input)
    }

    /// Explicit points, or `--points` scheduled ones: real points for real
    /// fields, complex points otherwise.
    pub fn points(&self, config: &AnalysisConfig) -> Vec<Vector> {
        if let Some(p) = &self.explicit_points {
            return p.clone();
        }
        let n = self.subject.dim();
        let mut sched = PointSchedule::new(config.seed, config.coefficient_height);
        let real = matches!(&self.subject, Subject::Pair(p) if p.first.kind() == VariableKind::Real);
        (0..config.point_samples)
            .map(|_| if real { sched.real_point(n) } else { sched.complex_point(n) })
            .collect()
    }

    /// SHA-256 of a canonical JSON rendering of the subject and the explicit
    /// points.
    pub fn digest(&self) -> String {
        let subject = match &self.subject {
            Subject::Algebra(g) => json!({ "algebra": io::algebra_to_json(g) }),
            Subject::Pair(p) => json!({ "pair": io::pair_to_json(p) }),
        };
        let points = self
            .explicit_points
            .as_ref()
            .map(|pts| pts.iter().map(|p| io::point_to_json(p)).collect::<Vec<_>>());
        let canonical = json!({ "subject": subject, "points": points });
        hex::encode(Sha256::digest(canonical.to_string().as_bytes()))
    }
}
