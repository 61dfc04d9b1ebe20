//! Tangent data of real coadjoint orbits inside the complex leaves of `c`,
//! and pointwise verification of reduction completeness.
//!
//! A real tangent vector at `z` is represented by its (1,0)-part `w ∈ ℂⁿ`;
//! the complex structure acts as `w ↦ i·w`. Real spans are computed on the
//! realification `(Re w, Im w) ∈ ℚ²ⁿ`.

use num_traits::Zero;
use serde::Serialize;

use crate::canonical::CanonicalPair;
use crate::error::AnalysisError;
use crate::matrix::{self, ExactMatrix, Vector};
use crate::scalar::Gq;
use crate::schedule::{lambda_schedule, Lambda};

fn realify(w: &[Gq]) -> Vector {
    w.iter()
        .map(Gq::real_part)
        .chain(w.iter().map(Gq::imag_part))
        .collect()
}

fn complexify(v: &[Gq]) -> Vector {
    let n = v.len() / 2;
    (0..n).map(|k| &v[k] + &(&v[n + k] * &Gq::i())).collect()
}

fn times_i(w: &[Gq]) -> Vector {
    let i = Gq::i();
    w.iter().map(|x| x * &i).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitFrame {
    pub z: Vector,
    /// Real-independent orbit generators, as (1,0)-vectors.
    pub real_tangent: Vec<Vector>,
    /// Complex basis of the CR part `T ∩ JT`.
    pub cr_tangent_10: Vec<Vector>,
    /// Basis of the (1,0)-tangent of the complex leaf, the image of `C(z)`.
    pub leaf_10_basis: Vec<Vector>,
    pub orbit_dim: usize,
    pub cr_dim: usize,
}

/// Orbit tangent at `z`, spanned over ℝ by the generators
/// `c(z_i) + conjugate`, whose (1,0)-parts are the rows of `C(z)`.
pub fn orbit_tangent(pair: &CanonicalPair, z: &[Gq]) -> Result<OrbitFrame, AnalysisError> {
    let n = pair.dim();
    if z.len() != n {
        return Err(crate::error::AlgebraError::DimensionMismatch {
            expected: n,
            found: z.len(),
        }
        .into());
    }
    let cz = pair.c_matrix(z);
    let generators = cz.row_vectors();
    let real: Vec<Vector> = generators.iter().map(|w| realify(w)).collect();
    let (real_basis, real_tangent): (Vec<Vector>, Vec<Vector>) = {
        let basis = matrix::independent_subfamily(&real, 2 * n);
        let complex = basis.iter().map(|v| complexify(v)).collect();
        (basis, complex)
    };
    let rotated: Vec<Vector> = real_tangent.iter().map(|w| realify(&times_i(w))).collect();
    let cr_real = matrix::intersect_subspaces(&real_basis, &rotated)?;
    if cr_real.len() % 2 != 0 {
        return Err(AnalysisError::Internal("T ∩ JT has odd real dimension".into()));
    }
    let cr_complex: Vec<Vector> = cr_real.iter().map(|v| complexify(v)).collect();
    let cr_tangent_10 = matrix::independent_subfamily(&cr_complex, n);
    if 2 * cr_tangent_10.len() != cr_real.len() {
        return Err(AnalysisError::Internal("T ∩ JT is not a complex subspace".into()));
    }
    let leaf_10_basis = cz.image_basis();
    Ok(OrbitFrame {
        z: z.to_vec(),
        orbit_dim: real_tangent.len(),
        cr_dim: cr_tangent_10.len(),
        real_tangent,
        cr_tangent_10,
        leaf_10_basis,
    })
}

/// True iff `T + JT` is the whole real tangent of the complex leaf.
pub fn cr_genericity_check(frame: &OrbitFrame) -> bool {
    let n = frame.z.len();
    let mut real: Vec<Vector> = frame.real_tangent.iter().map(|w| realify(w)).collect();
    real.extend(frame.real_tangent.iter().map(|w| realify(&times_i(w))));
    matrix::span_dim(&real, 2 * n) == 2 * frame.leaf_10_basis.len()
}

/// The leaf tangent `T^{1,0}` with its holomorphic symplectic data.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafData {
    /// `n × ρ` matrix whose columns span the image of `C(z)`.
    pub basis: ExactMatrix,
    /// `C(z) = E·S·Eᵀ`.
    pub bivector: ExactMatrix,
    /// `ω = S⁻¹`.
    pub omega: ExactMatrix,
    /// Rows of `E` used to build the left inverse.
    left_inverse: ExactMatrix,
}

impl LeafData {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Coordinates of a vector of the leaf in the basis `E`.
    pub fn coordinates(&self, v: &[Gq]) -> Result<Vector, AnalysisError> {
        let y = self.left_inverse.mul_vec(v);
        if self.basis.mul_vec(&y) != v {
            return Err(AnalysisError::Internal("vector is not tangent to the leaf".into()));
        }
        Ok(y)
    }
}

pub fn leaf_restrict(pair: &CanonicalPair, z: &[Gq]) -> Result<LeafData, AnalysisError> {
    let cz = pair.c_matrix(z);
    let cols = cz.image_basis();
    if cols.is_empty() {
        return Err(AnalysisError::Precondition("C(z) vanishes: the leaf is a point".into()));
    }
    let n = pair.dim();
    let rho = cols.len();
    let e = ExactMatrix::from_columns(&cols, n);
    // pick ρ independent rows of E; L = E_R⁻¹ · (row selection)
    let (_, row_pivots) = e.transpose().rref();
    let er = ExactMatrix::from_fn(rho, rho, |i, j| e[(row_pivots[i], j)].clone());
    let er_inv = er.inverse()?;
    let mut left = ExactMatrix::zeros(rho, n);
    for i in 0..rho {
        for (k, &r) in row_pivots.iter().enumerate() {
            left[(i, r)] = er_inv[(i, k)].clone();
        }
    }
    let s = left.mul(&cz).mul(&left.transpose());
    if e.mul(&s).mul(&e.transpose()) != cz {
        return Err(AnalysisError::Internal("C(z) does not factor through its image".into()));
    }
    let omega = s.inverse().map_err(|_| AnalysisError::Internal("leaf bivector is degenerate".into()))?;
    Ok(LeafData {
        basis: e,
        bivector: s,
        omega,
        left_inverse: left,
    })
}

fn gram(vectors: &[Vector], form: &ExactMatrix) -> ExactMatrix {
    let m = ExactMatrix::from_columns(vectors, form.rows());
    m.transpose().mul(form).mul(&m)
}

/// `ω(v, w) = 0` for all `v, w` in the CR tangent.
pub fn cr_isotropy_check(pair: &CanonicalPair, z: &[Gq]) -> Result<bool, AnalysisError> {
    if pair.in_sing(z)? {
        return Err(AnalysisError::Precondition("point lies in Sing".into()));
    }
    let frame = orbit_tangent(pair, z)?;
    if frame.cr_dim == 0 {
        return Ok(true);
    }
    let leaf = leaf_restrict(pair, z)?;
    let coords = frame
        .cr_tangent_10
        .iter()
        .map(|v| leaf.coordinates(v))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(gram(&coords, &leaf.omega).is_zero())
}

/// `dim(K ∩ K^{⊥Ω})` for an independent family `K`: the nullity of the
/// Gram matrix `KᵀΩK`.
fn isotropic_part_dim(k: &[Vector], omega: &ExactMatrix) -> usize {
    if k.is_empty() {
        return 0;
    }
    let g = gram(k, omega);
    k.len() - g.rank()
}

/// True for `λ` on the cross `Span{(1,i)} ∪ Span{(1,−i)}`.
pub fn on_cross(l: &Lambda) -> bool {
    let i = Gq::i();
    (&l.0 * &i - &l.1).is_zero() || (&l.0 * &i + &l.1).is_zero()
}

/// Leaf-level data shared by the k-number computations.
struct ReductionContext {
    leaf: LeafData,
    frame: OrbitFrame,
    /// T^ℂ𝒦 in the leaf coordinates `(y, ȳ)` of T^ℂ(leaf).
    k_complex: Vec<Vector>,
}

fn context(pair: &CanonicalPair, z: &[Gq]) -> Result<ReductionContext, AnalysisError> {
    if pair.in_sing(z)? {
        return Err(AnalysisError::Precondition(
            "point lies in Sing: the reduction is only defined off the singular set".into(),
        ));
    }
    let frame = orbit_tangent(pair, z)?;
    let leaf = leaf_restrict(pair, z)?;
    let k_complex = frame
        .real_tangent
        .iter()
        .map(|w| {
            let y = leaf.coordinates(w)?;
            let yb: Vec<Gq> = y.iter().map(Gq::conj).collect();
            Ok([y, yb].concat())
        })
        .collect::<Result<Vec<_>, AnalysisError>>()?;
    Ok(ReductionContext {
        leaf,
        frame,
        k_complex,
    })
}

/// The bivector `λ₁ Re c + λ₂ Im c` on T^ℂ(leaf) in the basis `(e, ē)`:
/// `blockdiag(λ̃₁S, λ̃₂S̄)` with `λ̃₁ = (λ₁ − iλ₂)/2`, `λ̃₂ = (λ₁ + iλ₂)/2`.
fn real_member_on_leaf(leaf: &LeafData, l: &Lambda) -> Result<ExactMatrix, AnalysisError> {
    if on_cross(l) {
        return Err(AnalysisError::Precondition(format!(
            "lambda ({}, {}) lies on the cross where the real pencil member degenerates",
            l.0, l.1
        )));
    }
    let half = Gq::from_ratio(1, 2);
    let il2 = &l.1 * &Gq::i();
    let t1 = &(&l.0 - &il2) * &half;
    let t2 = &(&l.0 + &il2) * &half;
    Ok(ExactMatrix::block_diag(&[
        &leaf.bivector.scale(&t1),
        &leaf.bivector.conjugate().scale(&t2),
    ]))
}

/// `k = dim(T^{1,0}𝒦 ∩ (T^{1,0}𝒦)^{⊥ω})` and the `k_λ` for each sample.
pub fn k_numbers(pair: &CanonicalPair, z: &[Gq], lambdas: &[Lambda]) -> Result<(usize, Vec<(Lambda, usize)>), AnalysisError> {
    let ctx = context(pair, z)?;
    k_from_context(&ctx, lambdas)
}

fn k_from_context(ctx: &ReductionContext, lambdas: &[Lambda]) -> Result<(usize, Vec<(Lambda, usize)>), AnalysisError> {
    let cr = ctx
        .frame
        .cr_tangent_10
        .iter()
        .map(|v| ctx.leaf.coordinates(v))
        .collect::<Result<Vec<_>, _>>()?;
    let k = isotropic_part_dim(&cr, &ctx.leaf.omega);
    let mut k_lambda = Vec::with_capacity(lambdas.len());
    for l in lambdas {
        let member = real_member_on_leaf(&ctx.leaf, l)?;
        let omega_l = member
            .inverse()
            .map_err(|_| AnalysisError::Internal("real pencil member degenerate off the cross".into()))?;
        k_lambda.push((l.clone(), isotropic_part_dim(&ctx.k_complex, &omega_l)));
    }
    Ok((k, k_lambda))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Pushforward {
    /// The induced bivector on `V/K` in the complement basis.
    pub reduced: ExactMatrix,
    /// Indices of the standard basis vectors spanning the complement of `K`.
    pub complement_columns: Vec<usize>,
    /// `dim c^♯(K^⊥)`.
    pub characteristic_dim: usize,
    /// `dim(K ∩ c^♯(K^⊥))`.
    pub intersection_dim: usize,
    /// `dim c^♯(K^⊥) / (K ∩ c^♯(K^⊥))`.
    pub d: usize,
}

/// Push-forward of the bivector `c` on `V` along `V → V/K`.
pub fn pushforward_at_point(v_dim: usize, c: &ExactMatrix, k: &[Vector]) -> Result<Pushforward, AnalysisError> {
    if c.rows() != v_dim || !c.is_skew() {
        return Err(AnalysisError::Precondition("bivector must be a skew matrix on V".into()));
    }
    let k = matrix::independent_subfamily(k, v_dim);
    let k_perp = matrix::annihilator(&k, v_dim);
    let ct = c.transpose();
    let images: Vec<Vector> = k_perp.iter().map(|xi| ct.mul_vec(xi)).collect();
    let characteristic = matrix::independent_subfamily(&images, v_dim);
    let intersection_dim = matrix::intersect_subspaces(&k, &characteristic)?.len();

    // complement of K by the first quotient-independent standard vectors
    let mut complement_columns = Vec::new();
    let mut acc = k.clone();
    for j in 0..v_dim {
        if acc.len() == v_dim {
            break;
        }
        let e = matrix::unit_vector(v_dim, j);
        if !matrix::in_span(&acc, &e, v_dim) {
            acc.push(e);
            complement_columns.push(j);
        }
    }
    let q = complement_columns.len();
    // P maps v to its coordinates along the complement in the basis [K | e_J]
    let full = ExactMatrix::from_columns(&acc, v_dim);
    let inv = full.inverse()?;
    let p = ExactMatrix::from_fn(q, v_dim, |i, j| inv[(k.len() + i, j)].clone());
    let reduced = p.mul(c).mul(&p.transpose());
    let d = characteristic.len() - intersection_dim;
    if reduced.rank() != d {
        return Err(AnalysisError::Internal(format!(
            "reduced rank {} differs from characteristic quotient dimension {d}",
            reduced.rank()
        )));
    }
    Ok(Pushforward {
        reduced,
        complement_columns,
        characteristic_dim: characteristic.len(),
        intersection_dim,
        d,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionReport {
    pub z: Vector,
    pub k: usize,
    pub k_lambda: Vec<(Lambda, usize)>,
    pub d_lambda: Vec<(Lambda, usize)>,
    pub reduced_generic_rank: usize,
    pub complete: bool,
    pub minimal: bool,
    pub quotient_dim: usize,
    pub orbit_dim: usize,
    pub cr_dim: usize,
    pub in_irregularity: bool,
    /// How condition (iii) of the criterion was decided.
    pub minimality_of_k: &'static str,
}

/// Completeness and minimality of the reduction along the orbit foliation
/// at `z`, decided from the k-numbers.
pub fn reduction_completeness(pair: &CanonicalPair, z: &[Gq], lambda_samples: usize) -> Result<ReductionReport, AnalysisError> {
    let ctx = context(pair, z)?;
    let lambdas = lambda_schedule(lambda_samples);
    let (k, k_lambda) = k_from_context(&ctx, &lambdas)?;
    let rho = ctx.leaf.dim();
    let v_dim = 2 * rho;
    let quotient_dim = v_dim - ctx.frame.orbit_dim;
    let mut d_lambda = Vec::with_capacity(lambdas.len());
    for ((l, kl), _) in k_lambda.iter().zip(&lambdas) {
        let member = real_member_on_leaf(&ctx.leaf, l)?;
        let push = pushforward_at_point(v_dim, &member, &ctx.k_complex)?;
        if push.d + kl != quotient_dim {
            return Err(AnalysisError::Internal(format!(
                "rank of the reduced member ({}) + k_lambda ({kl}) != quotient dimension ({quotient_dim})",
                push.d
            )));
        }
        d_lambda.push((l.clone(), push.d));
    }
    let reduced_generic_rank = d_lambda.iter().map(|(_, d)| *d).max().unwrap_or(0);
    let in_irregularity = pair.in_kronecker_irregularity(z)?;
    let constant = k_lambda.iter().all(|(_, x)| *x == k);
    Ok(ReductionReport {
        z: z.to_vec(),
        k,
        complete: constant && !in_irregularity,
        minimal: k == ctx.frame.cr_dim,
        k_lambda,
        d_lambda,
        reduced_generic_rank,
        quotient_dim,
        orbit_dim: ctx.frame.orbit_dim,
        cr_dim: ctx.frame.cr_dim,
        in_irregularity,
        minimality_of_k: "surrogate: point outside the Kronecker irregularity set",
    })
}
