//! Pencils `λ₁a + λ₂b` of skew matrices: generic rank, the F₀ ⊆ F̃₀
//! subspaces, the recursion operator on F̃₀/F₀, completeness, and the
//! Kronecker/Jordan block multiset.
//!
//! The sharp map of a skew matrix `m` is `ξ ↦ mᵀξ`, i.e. contraction into the
//! first index.

use num_complex::Complex64;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::PencilError;
use crate::matrix::{self, ExactMatrix, Vector};
use crate::scalar::Gq;
use crate::schedule::{lambda_at, Lambda};
use crate::univariate::{self, UniPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPencil {
    a: ExactMatrix,
    b: ExactMatrix,
}

impl SkewPencil {
    pub fn new(a: ExactMatrix, b: ExactMatrix) -> Result<Self, PencilError> {
        if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
            return Err(PencilError::NotSkew(format!(
                "shapes {}x{} and {}x{}",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        if !a.is_skew() {
            return Err(PencilError::NotSkew("first matrix is not skew".into()));
        }
        if !b.is_skew() {
            return Err(PencilError::NotSkew("second matrix is not skew".into()));
        }
        if a.is_zero() && b.is_zero() {
            return Err(PencilError::ZeroPencil);
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &ExactMatrix {
        &self.a
    }

    pub fn b(&self) -> &ExactMatrix {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn member(&self, lambda: &Lambda) -> ExactMatrix {
        ExactMatrix::combine(&lambda.0, &self.a, &lambda.1, &self.b)
    }

    /// `(G a Gᵀ, G b Gᵀ)`.
    pub fn congruent(&self, g: &ExactMatrix) -> Result<Self, PencilError> {
        let gt = g.transpose();
        Self::new(g.mul(&self.a).mul(&gt), g.mul(&self.b).mul(&gt))
    }
}

fn sharp(m: &ExactMatrix, xi: &[Gq]) -> Vector {
    m.transpose().mul_vec(xi)
}

fn check_lambda(l: &Lambda) -> Result<(), PencilError> {
    if l.0.is_zero() && l.1.is_zero() {
        return Err(PencilError::ZeroLambda);
    }
    Ok(())
}

/// Exact kernel of `λ₁a + λ₂b`.
pub fn kernel_at(p: &SkewPencil, lambda: &Lambda) -> Result<Vec<Vector>, PencilError> {
    check_lambda(lambda)?;
    Ok(matrix::kernel_basis(&p.member(lambda)))
}

/// Ranks along the first `dim + 3` schedule entries: `dim + 1` decide the
/// generic rank, the two extra entries certify it.
fn rank_profile(p: &SkewPencil) -> Vec<usize> {
    let count = p.dim() + 3;
    (0..count)
        .into_par_iter()
        .map(|i| p.member(&lambda_at(i)).rank())
        .collect()
}

/// Maximal rank of the pencil's members.
///
/// Rank drops happen on the zero set of a nonzero binary form of degree at
/// most `dim`, so `dim + 1` pairwise independent directions suffice.
pub fn generic_rank(p: &SkewPencil) -> usize {
    let profile = rank_profile(p);
    let r0 = profile[..p.dim() + 1].iter().copied().max().unwrap_or(0);
    debug_assert!(profile[p.dim() + 1..].iter().all(|&r| r <= r0));
    r0
}

#[derive(Clone, Debug)]
struct Regular {
    r0: usize,
    anchor_index: usize,
    f0: Vec<Vector>,
}

fn regular_data(p: &SkewPencil) -> Result<Regular, PencilError> {
    let dim = p.dim();
    let r0 = generic_rank(p);
    let corank = dim - r0;
    let mut f0: Vec<Vector> = Vec::new();
    let mut anchor_index = None;
    let mut stable = 0;
    let mut idx = 0;
    // each increase of dim F₀ can be preceded by at most `dim + 1` stable
    // samples, and at most `dim` members are rank-deficient
    let limit = (dim + 2) * (dim + 2) + dim + 1;
    while stable < dim + 1 {
        if idx > limit {
            return Err(PencilError::Checksum("F0 accumulation did not stabilise".into()));
        }
        let m = p.member(&lambda_at(idx));
        let k = matrix::kernel_basis(&m);
        if k.len() == corank {
            anchor_index.get_or_insert(idx);
            let before = f0.len();
            if !k.is_empty() {
                f0 = matrix::sum_subspaces(&f0, &k, dim);
            }
            if f0.len() == before {
                stable += 1;
            } else {
                stable = 0;
            }
        }
        idx += 1;
    }
    let anchor_index =
        anchor_index.ok_or_else(|| PencilError::AnchorDegenerate("no max-rank member found".into()))?;
    Ok(Regular {
        r0,
        anchor_index,
        f0,
    })
}

/// Span of the kernels of all maximal-rank members.
pub fn f0_subspace(p: &SkewPencil) -> Vec<Vector> {
    regular_data(p).map(|r| r.f0).unwrap_or_default()
}

fn f0_tilde_from(p: &SkewPencil, reg: &Regular) -> Vec<Vector> {
    let anchor = p.member(&lambda_at(reg.anchor_index));
    let images: Vec<Vector> = reg.f0.iter().map(|v| sharp(&anchor, v)).collect();
    let images = matrix::independent_subfamily(&images, p.dim());
    matrix::annihilator(&images, p.dim())
}

/// `(c^♯F₀)^⊥` for a maximal-rank member `c`.
pub fn f0_tilde_subspace(p: &SkewPencil) -> Result<Vec<Vector>, PencilError> {
    let reg = regular_data(p)?;
    Ok(f0_tilde_from(p, &reg))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecursionOperator {
    pub anchor: Lambda,
    pub probe: Lambda,
    pub f0: Vec<Vector>,
    pub f0_tilde: Vec<Vector>,
    /// Representatives of a basis of F̃₀/F₀.
    pub quotient_basis: Vec<Vector>,
    /// `Φ` in the quotient basis (column `j` is the image of `quotient_basis[j]`).
    pub matrix: ExactMatrix,
}

fn build_operator(p: &SkewPencil, reg: &Regular) -> Result<RecursionOperator, PencilError> {
    let dim = p.dim();
    let anchor_l = lambda_at(reg.anchor_index);
    let probe_l = lambda_at(reg.anchor_index + 1);
    let anchor = p.member(&anchor_l);
    let probe = p.member(&probe_l);
    if anchor.rank() != reg.r0 {
        return Err(PencilError::AnchorDegenerate(format!("{anchor_l:?}")));
    }
    let f0_tilde = f0_tilde_from(p, reg);
    let quotient_basis = matrix::complement_in(&reg.f0, &f0_tilde, dim);
    let q = quotient_basis.len();
    if reg.f0.len() + q != f0_tilde.len() {
        return Err(PencilError::QuotientBasis(format!(
            "F0 (dim {}) is not contained in F0~ (dim {})",
            reg.f0.len(),
            f0_tilde.len()
        )));
    }
    let mut phi = ExactMatrix::zeros(q, q);
    if q > 0 {
        let full: Vec<Vector> = reg.f0.iter().chain(&quotient_basis).cloned().collect();
        let images: Vec<Vector> = full.iter().map(|v| sharp(&anchor, v)).collect();
        let system = ExactMatrix::from_columns(&images, dim);
        for (j, v) in quotient_basis.iter().enumerate() {
            let w = sharp(&probe, v);
            let x = system.solve(&w).map_err(|_| {
                PencilError::QuotientBasis(format!("probe image of quotient vector {j} is not in anchor image of F0~"))
            })?;
            for i in 0..q {
                phi[(i, j)] = x[reg.f0.len() + i].clone();
            }
        }
    }
    Ok(RecursionOperator {
        anchor: anchor_l,
        probe: probe_l,
        f0: reg.f0.clone(),
        f0_tilde,
        quotient_basis,
        matrix: phi,
    })
}

/// `Φ = (anchor^♯)⁻¹ probe^♯` on F̃₀/F₀.
pub fn recursion_operator(p: &SkewPencil) -> Result<RecursionOperator, PencilError> {
    let reg = regular_data(p)?;
    build_operator(p, &reg)
}

/// An approximate complex number, for reporting only.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Approx {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Approx {
    fn from(c: Complex64) -> Self {
        // 12 significant digits keeps the text stable across platforms
        let round = |x: f64| {
            if x == 0.0 || !x.is_finite() {
                return x + 0.0;
            }
            let s = format!("{x:.11e}");
            s.parse::<f64>().unwrap_or(x) + 0.0
        };
        Approx {
            re: round(c.re),
            im: round(c.im),
        }
    }
}

/// A direction `[λ₁:λ₂]` where the pencil loses rank.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegenerateDirection {
    /// `(λ₁, λ₂)` scaled so that `λ₂ = 1`, or `(1, 0)`.
    pub lambda: [Approx; 2],
    /// Exact value of the same normalised pair, when it is Gaussian-rational.
    pub exact: Option<[Gq; 2]>,
    /// The direction written as `(−λ₁:λ₂)`.
    pub label: String,
    /// Total dimension of the Jordan blocks carrying this direction.
    pub multiplicity: usize,
}

fn label_exact(l: &[Gq; 2]) -> String {
    if l[1].is_zero() {
        "(1:0)".into()
    } else {
        format!("({}:1)", -&l[0])
    }
}

fn fmt_approx(a: Approx) -> String {
    if a.im == 0.0 {
        format!("{:.6}", a.re)
    } else {
        format!("{:.6}{:+.6}i", a.re, a.im)
    }
}

fn normalise_exact(l1: Gq, l2: Gq) -> [Gq; 2] {
    if l2.is_zero() {
        [Gq::one(), Gq::zero()]
    } else {
        let inv = l2.inv().expect("nonzero");
        [&l1 * &inv, Gq::one()]
    }
}

fn normalise_approx(l1: Complex64, l2: Complex64) -> [Complex64; 2] {
    if l2.norm() < 1e-12 * l1.norm().max(1.0) {
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
    } else {
        [l1 / l2, Complex64::new(1.0, 0.0)]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompletenessVerdict {
    pub complete: bool,
    pub r0: usize,
    pub f0_dim: usize,
    pub f0_tilde_dim: usize,
    pub anchor: Lambda,
    pub probe: Lambda,
    /// Characteristic polynomial of `Φ`, lowest degree first; this exact
    /// data is the certificate behind the approximate directions.
    pub char_poly: Vec<Gq>,
    pub degenerate_directions: Vec<DegenerateDirection>,
    /// The axis directions `(1,0)` and `(0,1)`, tested directly: `true` if
    /// the member there has less than maximal rank.
    pub axis_degenerate: [bool; 2],
}

struct Eigen {
    value_exact: Option<Gq>,
    value: Complex64,
    multiplicity: usize,
}

fn eigen_data(char_poly: &UniPoly) -> Vec<Eigen> {
    let mut out = Vec::new();
    for (factor, mult) in univariate::squarefree_decomposition(char_poly) {
        for root in univariate::approximate_roots(&factor) {
            let exact = univariate::snap_root(&factor, root);
            let value = exact.as_ref().map_or(root, Gq::to_c64);
            out.push(Eigen {
                value_exact: exact,
                value,
                multiplicity: mult,
            });
        }
    }
    out
}

fn direction_of(e: &Eigen, anchor: &Lambda, probe: &Lambda) -> DegenerateDirection {
    // Φv = e·v  ⇔  (probe − e·anchor)^♯ v = 0
    let exact = e.value_exact.as_ref().map(|v| {
        normalise_exact(&probe.0 - &(v * &anchor.0), &probe.1 - &(v * &anchor.1))
    });
    let lambda = match &exact {
        Some(l) => [Approx::from(l[0].to_c64()), Approx::from(l[1].to_c64())],
        None => {
            let a = (anchor.0.to_c64(), anchor.1.to_c64());
            let b = (probe.0.to_c64(), probe.1.to_c64());
            let l = normalise_approx(b.0 - e.value * a.0, b.1 - e.value * a.1);
            [Approx::from(l[0]), Approx::from(l[1])]
        }
    };
    let label = match &exact {
        Some(l) => label_exact(l),
        None if lambda[1].re == 0.0 && lambda[1].im == 0.0 => "(1:0)".into(),
        None => format!(
            "({}:1)",
            fmt_approx(Approx {
                re: -lambda[0].re + 0.0,
                im: -lambda[0].im + 0.0
            })
        ),
    };
    DegenerateDirection {
        lambda,
        exact,
        label,
        multiplicity: e.multiplicity,
    }
}

fn verdict_from(p: &SkewPencil, reg: &Regular) -> Result<(CompletenessVerdict, Option<RecursionOperator>), PencilError> {
    let anchor = lambda_at(reg.anchor_index);
    let probe = lambda_at(reg.anchor_index + 1);
    let axis_degenerate = [
        p.member(&lambda_at(0)).rank() < reg.r0,
        p.member(&lambda_at(1)).rank() < reg.r0,
    ];
    let f0_tilde = f0_tilde_from(p, reg);
    if f0_tilde.len() == reg.f0.len() {
        if axis_degenerate.iter().any(|&d| d) {
            return Err(PencilError::Checksum(
                "an axis member drops rank although F0 = F0~".into(),
            ));
        }
        return Ok((
            CompletenessVerdict {
                complete: true,
                r0: reg.r0,
                f0_dim: reg.f0.len(),
                f0_tilde_dim: f0_tilde.len(),
                anchor,
                probe,
                char_poly: vec![Gq::one()],
                degenerate_directions: Vec::new(),
                axis_degenerate,
            },
            None,
        ));
    }
    let op = build_operator(p, reg)?;
    let char_poly = univariate::char_poly(&op.matrix);
    let eig = eigen_data(&char_poly);
    let degenerate_directions: Vec<DegenerateDirection> =
        eig.iter().map(|e| direction_of(e, &op.anchor, &op.probe)).collect();

    // the axes must appear among the eigen-directions exactly when they drop rank
    for (axis, &deg) in axis_degenerate.iter().enumerate() {
        // e with probe − e·anchor proportional to the axis
        let (num, den) = if axis == 0 {
            (&probe.1, &anchor.1)
        } else {
            (&probe.0, &anchor.0)
        };
        let root = if den.is_zero() {
            None
        } else {
            Some(num * &den.inv().expect("nonzero"))
        };
        let is_root = root.is_some_and(|e| univariate::eval(&char_poly, &e).is_zero());
        if is_root != deg {
            return Err(PencilError::Checksum(format!(
                "axis direction {axis}: rank test says {deg}, recursion operator says {is_root}"
            )));
        }
    }
    Ok((
        CompletenessVerdict {
            complete: false,
            r0: reg.r0,
            f0_dim: reg.f0.len(),
            f0_tilde_dim: f0_tilde.len(),
            anchor,
            probe,
            char_poly,
            degenerate_directions,
            axis_degenerate,
        },
        Some(op),
    ))
}

/// Completeness in the sense of condition (*): every nonzero member has
/// maximal rank, decided as `dim F₀ = dim F̃₀`.
pub fn is_complete(p: &SkewPencil) -> Result<CompletenessVerdict, PencilError> {
    let reg = regular_data(p)?;
    Ok(verdict_from(p, &reg)?.0)
}

/// Number of one-dimensional (trivial) Kronecker blocks of a Jordan-free
/// pencil: `dim(ker a ∩ ker c_λ)` at two mixed directions.
pub fn trivial_kronecker_dim(p: &SkewPencil) -> Result<usize, PencilError> {
    let reg = regular_data(p)?;
    let (verdict, _) = verdict_from(p, &reg)?;
    if !verdict.complete {
        return Err(PencilError::JordanPresent);
    }
    let ka = matrix::kernel_basis(p.a());
    let mut found = Vec::new();
    let mut idx = 2;
    while found.len() < 2 {
        let l = lambda_at(idx);
        idx += 1;
        let m = p.member(&l);
        let kl = matrix::kernel_basis(&m);
        if kl.len() != p.dim() - reg.r0 {
            continue;
        }
        found.push(matrix::intersect_subspaces(&ka, &kl)?.len());
    }
    if found[0] != found[1] {
        return Err(PencilError::Checksum(format!(
            "trivial block count differs between directions: {} vs {}",
            found[0], found[1]
        )));
    }
    Ok(found[0])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JordanPart {
    pub direction: DegenerateDirection,
    pub total_dim: usize,
    /// Individual block dimensions, from the Weyr characteristic of `Φ`;
    /// only available for exactly identified eigenvalues.
    pub block_dims: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PencilInvariants {
    pub dim: usize,
    pub generic_rank: usize,
    /// Minimal indices `m`, ascending; each is a block of dimension `2m+1`.
    pub kronecker_indices: Vec<usize>,
    pub trivial_count: usize,
    pub jordan_part: Vec<JordanPart>,
    pub dimension_checksum: usize,
    /// How the individual Jordan block sizes were obtained.
    pub jordan_fine_structure: &'static str,
}

impl PencilInvariants {
    /// Block dimensions `2m+1` of the Kronecker part, ascending.
    pub fn kronecker_block_dims(&self) -> Vec<usize> {
        self.kronecker_indices.iter().map(|m| 2 * m + 1).collect()
    }

    pub fn jordan_dim(&self) -> usize {
        self.jordan_part.iter().map(|j| j.total_dim).sum()
    }
}

/// Block-Toeplitz matrix whose kernel is the space of polynomial vectors
/// `x₀ + λx₁ + … + λ^{k−1}x_{k−1}` annihilated by `a + λb`.
fn toeplitz_system(p: &SkewPencil, k: usize) -> ExactMatrix {
    let n = p.dim();
    let mut s = ExactMatrix::zeros((k + 1) * n, k * n);
    for t in 0..=k {
        for i in 0..n {
            for j in 0..n {
                if t < k {
                    let v = &p.a()[(i, j)];
                    if !v.is_zero() {
                        s[(t * n + i, t * n + j)] = v.clone();
                    }
                }
                if t >= 1 {
                    let v = &p.b()[(i, j)];
                    if !v.is_zero() {
                        s[(t * n + i, (t - 1) * n + j)] = v.clone();
                    }
                }
            }
        }
    }
    s
}

/// Minimal indices from the nullities `ν_k` of the Toeplitz systems:
/// `#{m_i ≤ k} = ν_{k+1} − ν_k`. Stops once all `dim − R₀` Kronecker blocks
/// are accounted for.
pub fn minimal_indices(p: &SkewPencil, r0: usize) -> Result<Vec<usize>, PencilError> {
    let n = p.dim();
    let blocks = n - r0;
    let mut indices = Vec::new();
    if blocks == 0 {
        return Ok(indices);
    }
    let mut nu_prev = 0usize;
    let mut count_prev = 0usize; // #{m ≤ k−1}
    for k in 0..=n {
        let sk = toeplitz_system(p, k + 1);
        let nu = (k + 1) * n - sk.rank();
        let count = nu - nu_prev; // #{m ≤ k}
        if count < count_prev || count > blocks {
            return Err(PencilError::Checksum(format!(
                "minimal index counts not monotone at k = {k}"
            )));
        }
        indices.extend(std::iter::repeat(k).take(count - count_prev));
        if count == blocks {
            return Ok(indices);
        }
        nu_prev = nu;
        count_prev = count;
    }
    Err(PencilError::Checksum("minimal indices not exhausted".into()))
}

fn weyr_block_dims(phi: &ExactMatrix, e: &Gq, total: usize) -> Option<Vec<usize>> {
    let q = phi.rows();
    let shifted = phi.sub(&ExactMatrix::identity(q).scale(e));
    let mut power = ExactMatrix::identity(q);
    let mut nullities = vec![0usize];
    while *nullities.last().unwrap() < total {
        power = power.mul(&shifted);
        let nl = q - power.rank();
        if nl <= *nullities.last().unwrap() {
            return None;
        }
        nullities.push(nl);
    }
    if *nullities.last().unwrap() != total {
        return None;
    }
    // number of Φ-blocks of size ≥ j is ν_j − ν_{j−1}
    let ge: Vec<usize> = nullities.windows(2).map(|w| w[1] - w[0]).collect();
    let mut sizes = Vec::new();
    for j in 0..ge.len() {
        let exactly = ge[j] - ge.get(j + 1).copied().unwrap_or(0);
        // each pencil block of dimension 2s contributes two Φ-blocks of size s
        if exactly % 2 != 0 {
            return None;
        }
        sizes.extend(std::iter::repeat(2 * (j + 1)).take(exactly / 2));
    }
    Some(sizes)
}

/// The full block multiset: Kronecker minimal indices and Jordan parts.
pub fn kronecker_invariants(p: &SkewPencil) -> Result<PencilInvariants, PencilError> {
    let reg = regular_data(p)?;
    let indices = minimal_indices(p, reg.r0)?;
    let (verdict, op) = verdict_from(p, &reg)?;
    let mut jordan_part = Vec::new();
    if let Some(op) = &op {
        for dir in &verdict.degenerate_directions {
            let block_dims = dir.exact.as_ref().and_then(|l| {
                // recover Φ's eigenvalue from the normalised direction
                let e = phi_eigenvalue(l, &op.anchor, &op.probe)?;
                weyr_block_dims(&op.matrix, &e, dir.multiplicity)
            });
            jordan_part.push(JordanPart {
                direction: dir.clone(),
                total_dim: dir.multiplicity,
                block_dims,
            });
        }
    }
    let kron: usize = indices.iter().map(|m| 2 * m + 1).sum();
    let jordan: usize = jordan_part.iter().map(|j| j.total_dim).sum();
    let checksum = kron + jordan;
    if checksum != p.dim() {
        return Err(PencilError::Checksum(format!(
            "Kronecker part {kron} + Jordan part {jordan} != dim {}",
            p.dim()
        )));
    }
    if verdict.complete != jordan_part.is_empty() {
        return Err(PencilError::Checksum("completeness and Jordan part disagree".into()));
    }
    Ok(PencilInvariants {
        dim: p.dim(),
        generic_rank: reg.r0,
        trivial_count: indices.iter().filter(|&&m| m == 0).count(),
        kronecker_indices: indices,
        jordan_part,
        dimension_checksum: checksum,
        jordan_fine_structure: "weyr-characteristic, oracle-validated",
    })
}

/// Solves `probe − e·anchor ∝ l` for `e`.
fn phi_eigenvalue(l: &[Gq; 2], anchor: &Lambda, probe: &Lambda) -> Option<Gq> {
    // (p1 − e a1)·l2 = (p2 − e a2)·l1  ⇒  e = (p1 l2 − p2 l1)/(a1 l2 − a2 l1)
    let num = &(&probe.0 * &l[1]) - &(&probe.1 * &l[0]);
    let den = &(&anchor.0 * &l[1]) - &(&anchor.1 * &l[0]);
    if den.is_zero() {
        return None;
    }
    Some(&num * &den.inv().ok()?)
}
