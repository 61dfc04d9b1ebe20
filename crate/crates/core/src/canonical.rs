//! The canonical complex Poisson pair `(c, c̃)` on the complexified dual of
//! a real Lie algebra, and the classification of points against the
//! singular set, the incompleteness set and the Kronecker irregularity set.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{AnalysisError, PencilError};
use crate::matrix::{self, ExactMatrix, Vector};
use crate::pencil::{self, DegenerateDirection, SkewPencil};
use crate::poisson::{conjugate_twist, lie_poisson, BivectorField, LieAlgebraSpec};
use crate::scalar::Gq;
use crate::schedule::{mixed_lambda_schedule, Lambda, PointSchedule};

/// Seed and height of the point schedule used to certify generic ranks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenericityConfig {
    pub seed: u64,
    pub height: u32,
}

impl Default for GenericityConfig {
    fn default() -> Self {
        Self { seed: 42, height: 10 }
    }
}

#[derive(Clone, Debug)]
pub struct CanonicalPair {
    pub algebra: LieAlgebraSpec,
    pub c: BivectorField,
    pub c_tilde: BivectorField,
    rank_g: usize,
    generic_stacked_rank: usize,
}

impl CanonicalPair {
    /// Builds `(c, c̃)` and certifies the generic ranks of `C(z)` and of the
    /// stacked matrix `[C(z); C(z̄)]`: sampling continues until the running
    /// maxima have been stable for `n + 1` consecutive points.
    pub fn new(algebra: LieAlgebraSpec, config: GenericityConfig) -> Result<Self, AnalysisError> {
        if algebra.is_abelian() {
            return Err(AnalysisError::Abelian);
        }
        let c = lie_poisson(&algebra);
        let c_tilde = conjugate_twist(&c)?;
        let n = algebra.dim;
        let mut sched = PointSchedule::new(config.seed, config.height);
        let (mut best, mut best_stacked, mut stable) = (0, 0, 0);
        while stable < n + 1 {
            let z = sched.complex_point(n);
            let cz = algebra.c_matrix(&z);
            let r = cz.rank();
            let rs = cz.vstack(&cz.conjugate()).rank();
            if r > best || rs > best_stacked {
                best = best.max(r);
                best_stacked = best_stacked.max(rs);
                stable = 0;
            } else {
                stable += 1;
            }
        }
        Ok(Self {
            algebra,
            c,
            c_tilde,
            rank_g: n - best,
            generic_stacked_rank: best_stacked,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    /// `r = n − generic rank of C(z)`.
    pub fn rank_of_algebra(&self) -> usize {
        self.rank_g
    }

    /// Generic rank of `[C(z); C(z̄)]`.
    pub fn generic_stacked_rank(&self) -> usize {
        self.generic_stacked_rank
    }

    pub fn c_matrix(&self, z: &[Gq]) -> ExactMatrix {
        self.algebra.c_matrix(z)
    }

    /// `C(z̄)`, the value of `c̃` at `z`.
    pub fn c_tilde_matrix(&self, z: &[Gq]) -> ExactMatrix {
        let zb: Vec<Gq> = z.iter().map(Gq::conj).collect();
        self.algebra.c_matrix(&zb)
    }

    fn check_point(&self, z: &[Gq]) -> Result<(), AnalysisError> {
        if z.len() != self.dim() {
            return Err(crate::error::AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: z.len(),
            }
            .into());
        }
        Ok(())
    }

    /// The pencil `(C(z), C(z̄))`; `None` at points where `C(z) = 0`.
    pub fn pencil_at(&self, z: &[Gq]) -> Result<Option<SkewPencil>, AnalysisError> {
        self.check_point(z)?;
        match SkewPencil::new(self.c_matrix(z), self.c_tilde_matrix(z)) {
            Ok(p) => Ok(Some(p)),
            Err(PencilError::ZeroPencil) => Ok(None),
            Err(e) => Err(e.into()),
        }
    }

    pub fn in_sing(&self, z: &[Gq]) -> Result<bool, AnalysisError> {
        self.check_point(z)?;
        Ok(self.c_matrix(z).rank() < self.dim() - self.rank_g)
    }

    /// Some nonzero `λ` with `rank C(λ₁z + λ₂z̄) < n − r`.
    pub fn in_incompleteness_set(&self, z: &[Gq]) -> Result<bool, AnalysisError> {
        Ok(self.incompleteness(z)?.0)
    }

    fn incompleteness(&self, z: &[Gq]) -> Result<(bool, Vec<DegenerateDirection>), AnalysisError> {
        let Some(p) = self.pencil_at(z)? else {
            return Ok((true, Vec::new()));
        };
        let target = self.dim() - self.rank_g;
        let verdict = pencil::is_complete(&p)?;
        if verdict.r0 < target {
            return Ok((true, verdict.degenerate_directions));
        }
        Ok((!verdict.complete, verdict.degenerate_directions))
    }

    pub fn in_kronecker_irregularity(&self, z: &[Gq]) -> Result<bool, AnalysisError> {
        if self.in_incompleteness_set(z)? {
            return Ok(true);
        }
        Ok(self.stacked_rank(z) < self.generic_stacked_rank)
    }

    fn stacked_rank(&self, z: &[Gq]) -> usize {
        self.c_matrix(z).vstack(&self.c_tilde_matrix(z)).rank()
    }

    /// `dim(ker C(z) ∩ ker C(z̄))`.
    pub fn mu(&self, z: &[Gq]) -> Result<usize, AnalysisError> {
        self.check_point(z)?;
        // the common kernel is the kernel of the stacked matrix
        Ok(self.dim() - self.stacked_rank(z))
    }

    /// `dim(ker C(z) ∩ ker(λ₁C(z) + λ₂C(z̄)))` for `λ₁, λ₂ ≠ 0`.
    pub fn mu_lambda(&self, z: &[Gq], lambda: &Lambda) -> Result<usize, AnalysisError> {
        self.check_point(z)?;
        if lambda.0.is_zero() || lambda.1.is_zero() {
            return Err(AnalysisError::Precondition(
                "mu_lambda needs both lambda coordinates nonzero".into(),
            ));
        }
        let a = self.c_matrix(z);
        let b = self.c_tilde_matrix(z);
        let ka = matrix::kernel_basis(&a);
        let kl = matrix::kernel_basis(&ExactMatrix::combine(&lambda.0, &a, &lambda.1, &b));
        Ok(matrix::intersect_subspaces(&ka, &kl)?.len())
    }

    pub fn classify_point(&self, z: &[Gq], lambda_samples: usize) -> Result<PointClassification, AnalysisError> {
        self.check_point(z)?;
        let rank_c = self.c_matrix(z).rank();
        let rank_c_tilde = self.c_tilde_matrix(z).rank();
        let in_sing = rank_c < self.dim() - self.rank_g;
        let (in_incompleteness, degenerate_directions) = self.incompleteness(z)?;
        let in_irregularity = in_incompleteness || self.stacked_rank(z) < self.generic_stacked_rank;
        let mu = self.mu(z)?;
        let mu_lambda_samples = mixed_lambda_schedule(lambda_samples)
            .into_iter()
            .map(|l| {
                let m = self.mu_lambda(z, &l)?;
                Ok((l, m))
            })
            .collect::<Result<Vec<_>, AnalysisError>>()?;
        let out = PointClassification {
            z: z.to_vec(),
            rank_c,
            rank_c_tilde,
            in_sing,
            in_incompleteness,
            in_irregularity,
            mu,
            mu_lambda_samples,
            degenerate_directions,
        };
        out.check_invariants()?;
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointClassification {
    pub z: Vector,
    pub rank_c: usize,
    pub rank_c_tilde: usize,
    pub in_sing: bool,
    pub in_incompleteness: bool,
    pub in_irregularity: bool,
    pub mu: usize,
    pub mu_lambda_samples: Vec<(Lambda, usize)>,
    pub degenerate_directions: Vec<DegenerateDirection>,
}

impl PointClassification {
    fn check_invariants(&self) -> Result<(), AnalysisError> {
        if self.in_sing && !self.in_incompleteness {
            return Err(AnalysisError::Internal("singular point outside the incompleteness set".into()));
        }
        if self.in_incompleteness && !self.in_irregularity {
            return Err(AnalysisError::Internal("incompleteness set not inside the irregularity set".into()));
        }
        if !self.in_incompleteness && self.mu_lambda_samples.iter().any(|(_, m)| *m != self.mu) {
            return Err(AnalysisError::Internal("mu_lambda differs from mu off the incompleteness set".into()));
        }
        Ok(())
    }
}
