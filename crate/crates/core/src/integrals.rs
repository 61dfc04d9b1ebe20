//! Polynomial first integrals: Casimir search, the `g̃` and `g∘φ_λ`
//! constructions, argument translation, and exact checks of involutivity,
//! invariance and the CR-lagrangian property.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::canonical::CanonicalPair;
use crate::error::{AlgebraError, AnalysisError, PoissonError};
use crate::matrix::{self, ExactMatrix, SparseRow, Vector};
use crate::orbits::leaf_restrict;
use crate::poisson::{orbit_generator, poisson_bracket, BivectorField, VariableKind};
use crate::poly::{holomorphic_monomials, Exponents, MultiPoly};
use crate::scalar::Gq;
use crate::schedule::{lambda_at, Lambda};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    HolomorphicCasimir,
    Tilde,
    PhiLambda { lambda: Lambda },
    Translation { shift: Gq },
    Antiholomorphic,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegralMember {
    pub poly: MultiPoly,
    pub provenance: Provenance,
}

impl Serialize for IntegralMember {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("IntegralMember", 2)?;
        st.serialize_field("poly", &self.poly.to_string())?;
        st.serialize_field("provenance", &self.provenance)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralFamily {
    pub members: Vec<IntegralMember>,
    pub degree_bound: u32,
    pub warnings: Vec<String>,
}

impl IntegralFamily {
    fn empty(degree_bound: u32) -> Self {
        Self {
            members: Vec::new(),
            degree_bound,
            warnings: Vec::new(),
        }
    }

    /// Adds a member unless it is zero or already present.
    fn push(&mut self, poly: MultiPoly, provenance: Provenance) -> bool {
        if poly.is_zero() || self.members.iter().any(|m| m.poly == poly) {
            return false;
        }
        self.members.push(IntegralMember { poly, provenance });
        true
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn polys(&self) -> impl Iterator<Item = &MultiPoly> {
        self.members.iter().map(|m| &m.poly)
    }
}

/// Structure constants read off a linear holomorphic bivector:
/// `c^{ij} = Σ_k a_{ij}^k z_k`.
fn linear_constants(c: &BivectorField) -> Result<Vec<((usize, usize), Vec<Gq>)>, PoissonError> {
    if c.kind() == VariableKind::Mixed {
        return Err(PoissonError::NonLinear);
    }
    c.components()
        .map(|(&ij, p)| {
            p.linear_coefficients()
                .map(|a| (ij, a))
                .ok_or(PoissonError::NonLinear)
        })
        .collect()
}

/// Homogeneous degree-`d` Casimirs of a linear holomorphic bivector, from
/// the coefficient system of `c(g) = 0`.
fn homogeneous_casimirs(n: usize, consts: &[((usize, usize), Vec<Gq>)], d: u32) -> Vec<MultiPoly> {
    let monomials = holomorphic_monomials(n, d);
    // equation (j, resulting monomial) collects Σ_i ∂_i g · c^{ij}
    let mut equations: BTreeMap<(usize, Exponents), SparseRow> = BTreeMap::new();
    let mut contribute = |j: usize, i: usize, a: &[Gq], sign: &Gq| {
        for (col, e) in monomials.iter().enumerate() {
            let ei = e[i];
            if ei == 0 {
                continue;
            }
            for (k, ak) in a.iter().enumerate() {
                if ak.is_zero() {
                    continue;
                }
                let mut r = e.clone();
                r[i] -= 1;
                r[k] += 1;
                let v = &(ak * sign) * &Gq::from(ei as i64);
                let row = equations.entry((j, r)).or_default();
                let entry = row.entry(col).or_insert_with(Gq::zero);
                *entry += &v;
            }
        }
    };
    let one = Gq::one();
    let minus = -Gq::one();
    for ((i, j), a) in consts {
        // c^{ij} feeds slot j from ∂_i g, and c^{ji} = −c^{ij} feeds slot i from ∂_j g
        contribute(*j, *i, a, &one);
        contribute(*i, *j, a, &minus);
    }
    let rows: Vec<SparseRow> = equations.into_values().collect();
    let kernel = matrix::sparse_kernel(rows, monomials.len());
    kernel
        .into_iter()
        .map(|v| {
            MultiPoly::from_terms(
                n,
                monomials
                    .iter()
                    .zip(v)
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(e, c)| (e.clone(), c)),
            )
            .expect("monomials have the right length")
        })
        .collect()
}

/// Polynomial Casimirs of a linear holomorphic bivector, degrees `1..=degree`.
pub fn casimirs_of_field(c: &BivectorField, degree: u32) -> Result<Vec<MultiPoly>, AnalysisError> {
    let consts = linear_constants(c)?;
    let n = c.num_vars();
    let mut out = Vec::new();
    for d in 1..=degree {
        out.extend(homogeneous_casimirs(n, &consts, d));
    }
    Ok(out)
}

/// Basis of the holomorphic polynomial Casimirs of `c` of degree at most
/// `degree` (homogeneous components are searched separately since `c` is
/// linear).
pub fn casimir_basis(pair: &CanonicalPair, degree: u32) -> Result<Vec<MultiPoly>, AnalysisError> {
    if degree == 0 {
        return Err(AnalysisError::Precondition("degree must be at least 1".into()));
    }
    casimirs_of_field(&pair.c, degree)
}

/// `g̃ = Σ_i conj(∂g/∂z_i)·z_i`.
pub fn tilde(g: &MultiPoly) -> Result<MultiPoly, AnalysisError> {
    if !g.is_holomorphic() {
        return Err(AnalysisError::Precondition("tilde needs a holomorphic polynomial".into()));
    }
    let n = g.num_vars();
    let mut out = MultiPoly::zero(n);
    for i in 0..n {
        let d = g.diff(i);
        if d.is_zero() {
            continue;
        }
        out = out.add(&d.conj().mul(&MultiPoly::z(n, i))?);
    }
    Ok(out)
}

/// `g(λ₁z + λ₂z̄)`.
pub fn compose_phi_lambda(g: &MultiPoly, lambda: &Lambda) -> Result<MultiPoly, AnalysisError> {
    if lambda.0.is_zero() && lambda.1.is_zero() {
        return Err(AnalysisError::Precondition("lambda must be nonzero".into()));
    }
    if !g.is_holomorphic() {
        return Err(AnalysisError::Precondition("composition needs a holomorphic polynomial".into()));
    }
    let n = g.num_vars();
    let mut images: Vec<MultiPoly> = (0..n)
        .map(|k| MultiPoly::z(n, k).scale(&lambda.0).add(&MultiPoly::zbar(n, k).scale(&lambda.1)))
        .collect();
    images.extend((0..n).map(|k| MultiPoly::zbar(n, k)));
    Ok(g.substitute(&images)?)
}

/// Argument translation: `g(z + t·a)` for each Casimir `g` of `c` and the
/// shifts `t = λ₂/λ₁` of the first `shifts` schedule entries with `λ₁ ≠ 0`,
/// constants dropped and duplicates removed.
pub fn translation_family(c: &BivectorField, a: &[Gq], degree: u32, shifts: usize) -> Result<IntegralFamily, AnalysisError> {
    let n = c.num_vars();
    if a.len() != n {
        return Err(AlgebraError::DimensionMismatch {
            expected: n,
            found: a.len(),
        }
        .into());
    }
    // generic rank over a fixed set of sample points
    let mut sched = crate::schedule::PointSchedule::new(0, 10);
    let generic = (0..n + 1)
        .map(|_| c.evaluate_at(&sched.complex_point(n)).map(|m| m.rank()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    if c.evaluate_at(a)?.rank() < generic {
        return Err(AnalysisError::Precondition("translation point lies in Sing".into()));
    }
    let casimirs = casimirs_of_field(c, degree)?;
    let mut fam = IntegralFamily::empty(degree);
    let ts: Vec<Gq> = (0..)
        .map(lambda_at)
        .filter(|l| !l.0.is_zero())
        .take(shifts)
        .map(|l| &l.1 * &l.0.inv().expect("nonzero"))
        .collect();
    for g in &casimirs {
        for t in &ts {
            let mut images: Vec<MultiPoly> = (0..n)
                .map(|k| MultiPoly::z(n, k).add(&MultiPoly::constant(n, &a[k] * t)))
                .collect();
            images.extend((0..n).map(|k| MultiPoly::zbar(n, k)));
            let shifted = g.substitute(&images)?.without_constant();
            fam.push(shifted, Provenance::Translation { shift: t.clone() });
        }
    }
    if fam.is_empty() {
        fam.warnings.push(format!("no polynomial Casimirs up to degree {degree}"));
    }
    Ok(fam)
}

/// `{g} ∪ {g̃} ∪ {g∘φ_λ : λ₁λ₂ ≠ 0}` over the Casimir basis, where the
/// directions come from the given schedule.
pub fn family_f1(pair: &CanonicalPair, degree: u32, lambdas: &[Lambda]) -> Result<IntegralFamily, AnalysisError> {
    let casimirs = casimir_basis(pair, degree)?;
    family_from_casimirs(&casimirs, degree, lambdas)
}

/// The same construction starting from a given list of Casimirs.
pub fn family_from_casimirs(casimirs: &[MultiPoly], degree: u32, lambdas: &[Lambda]) -> Result<IntegralFamily, AnalysisError> {
    let mut fam = IntegralFamily::empty(degree);
    if casimirs.is_empty() {
        fam.warnings.push(format!(
            "no polynomial Casimirs up to degree {degree}; the family is empty"
        ));
        return Ok(fam);
    }
    for g in casimirs {
        fam.push(g.clone(), Provenance::HolomorphicCasimir);
    }
    for g in casimirs {
        fam.push(tilde(g)?, Provenance::Tilde);
    }
    for l in lambdas.iter().filter(|l| !l.0.is_zero() && !l.1.is_zero()) {
        for g in casimirs {
            fam.push(compose_phi_lambda(g, l)?, Provenance::PhiLambda { lambda: l.clone() });
        }
    }
    Ok(fam)
}

/// `{f, g}_{λ₁c + λ₂c̃}` vanishes at every point for every λ and every pair.
pub fn involutivity_check(fam: &IntegralFamily, pair: &CanonicalPair, lambdas: &[Lambda], points: &[Vector]) -> Result<bool, AnalysisError> {
    Ok(involutivity_failures(fam, pair, lambdas, points)?.is_empty())
}

/// Index pairs `(i, j)` of members whose bracket fails to vanish somewhere.
pub fn involutivity_failures(
    fam: &IntegralFamily,
    pair: &CanonicalPair,
    lambdas: &[Lambda],
    points: &[Vector],
) -> Result<Vec<(usize, usize)>, AnalysisError> {
    use rayon::prelude::*;
    let members: Vec<&MultiPoly> = fam.polys().collect();
    let pairs: Vec<(usize, usize)> = (0..members.len())
        .flat_map(|i| (i + 1..members.len()).map(move |j| (i, j)))
        .collect();
    let results = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Option<(usize, usize)>, AnalysisError> {
            let b1 = poisson_bracket(&pair.c, members[i], members[j])?;
            let b2 = poisson_bracket(&pair.c_tilde, members[i], members[j])?;
            for z in points {
                let (v1, v2) = (b1.eval(z), b2.eval(z));
                for l in lambdas {
                    if !(&(&l.0 * &v1) + &(&l.1 * &v2)).is_zero() {
                        return Ok(Some((i, j)));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(results.into_iter().flatten().collect())
}

/// `(c(z_i) + conjugate)·f = 0` at every point, for every `i`.
pub fn g0_invariance_check(f: &MultiPoly, pair: &CanonicalPair, points: &[Vector]) -> Result<bool, AnalysisError> {
    for i in 0..pair.dim() {
        let v = orbit_generator(&pair.c, i)?;
        let d = v.apply(f)?;
        if points.iter().any(|z| !d.eval(z).is_zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// (1,0)-differentials of `Re f` and `Im f` at `z`: their span is that of
/// `∂f(z)` and `conj(∂̄f(z))`.
fn holomorphic_differentials(f: &MultiPoly, z: &[Gq]) -> [Vector; 2] {
    let n = f.num_vars();
    let df: Vector = (0..n).map(|k| f.diff(k).eval(z)).collect();
    let dfb: Vector = (0..n).map(|k| f.diff(n + k).eval(z).conj()).collect();
    [df, dfb]
}

/// Whether the common kernel, inside `T_z^{1,0}M`, of the (1,0)-differentials
/// of `{Re f, Im f}` is ω-lagrangian.
pub fn cr_lagrangian_check(fam: &IntegralFamily, pair: &CanonicalPair, z: &[Gq]) -> Result<bool, AnalysisError> {
    if pair.in_kronecker_irregularity(z)? {
        return Err(AnalysisError::Precondition(
            "point lies in the Kronecker irregularity set".into(),
        ));
    }
    let leaf = leaf_restrict(pair, z)?;
    let rho = leaf.dim();
    let et = leaf.basis.transpose();
    let restricted: Vec<Vector> = fam
        .polys()
        .flat_map(|f| holomorphic_differentials(f, z))
        .map(|xi| et.mul_vec(&xi))
        .filter(|v| !matrix::is_zero_vector(v))
        .collect();
    let kernel = if restricted.is_empty() {
        (0..rho).map(|i| matrix::unit_vector(rho, i)).collect()
    } else {
        matrix::kernel_basis(&ExactMatrix::from_rows(&restricted, rho))
    };
    if 2 * kernel.len() != rho {
        return Ok(false);
    }
    let k = ExactMatrix::from_columns(&kernel, rho);
    Ok(k.transpose().mul(&leaf.omega).mul(&k).is_zero())
}

/// Rank of the real differentials `{d Re f, d Im f}` at `z`, computed on
/// `(∂f, ∂̄f)` and its conjugate.
pub fn differential_rank(fam: &IntegralFamily, z: &[Gq]) -> usize {
    let mut rows = Vec::new();
    for f in fam.polys() {
        let n = f.num_vars();
        let d: Vector = (0..2 * n).map(|k| f.diff(k).eval(z)).collect();
        let conj: Vector = d[n..].iter().chain(&d[..n]).map(Gq::conj).collect();
        rows.push(d);
        rows.push(conj);
    }
    let width = rows.first().map_or(0, Vec::len);
    matrix::span_dim(&rows, width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::GenericityConfig;
    use crate::catalog;

    fn pair(name: &str) -> CanonicalPair {
        CanonicalPair::new(catalog::algebra(name).unwrap(), GenericityConfig::default()).unwrap()
    }

    fn norm_sq(n: usize) -> MultiPoly {
        let mut s = MultiPoly::zero(n);
        for k in 0..n {
            s = s.add(&MultiPoly::z(n, k).pow(2).unwrap());
        }
        s
    }

    #[test]
    fn so3_casimirs() {
        let p = pair("so3");
        let c = casimir_basis(&p, 2).unwrap();
        assert_eq!(c.len(), 1);
        // proportional to z1^2 + z2^2 + z3^2
        let g = &c[0];
        let ratio = g.coeff(&[2, 0, 0, 0, 0, 0]);
        assert_eq!(*g, norm_sq(3).scale(&ratio));
    }

    #[test]
    fn heisenberg_center() {
        let p = pair("heisenberg3");
        assert_eq!(casimir_basis(&p, 1).unwrap(), vec![MultiPoly::z(3, 2)]);
    }

    #[test]
    fn tilde_examples() {
        let g = norm_sq(3).scale(&Gq::from_ratio(1, 2));
        let mut expected = MultiPoly::zero(3);
        for k in 0..3 {
            expected = expected.add(&MultiPoly::z(3, k).mul(&MultiPoly::zbar(3, k)).unwrap());
        }
        assert_eq!(tilde(&g).unwrap(), expected);
        assert_eq!(tilde(&MultiPoly::z(3, 1)).unwrap(), MultiPoly::z(3, 1));
        assert!(tilde(&MultiPoly::constant(3, Gq::from(4))).unwrap().is_zero());
    }

    #[test]
    fn phi_lambda_examples() {
        let g = norm_sq(3);
        assert_eq!(compose_phi_lambda(&g, &(Gq::one(), Gq::zero())).unwrap(), g);
        assert_eq!(compose_phi_lambda(&g, &(Gq::zero(), Gq::one())).unwrap(), g.swap_variables());
    }

    #[test]
    fn so3_family_counts() {
        let p = pair("so3");
        let fam = family_f1(&p, 2, &crate::schedule::lambda_schedule(5)).unwrap();
        assert_eq!(fam.len(), 5);
    }

    #[test]
    fn non_involutive_pair() {
        let p = pair("so3");
        let mut fam = IntegralFamily::empty(1);
        fam.push(MultiPoly::z(3, 0), Provenance::HolomorphicCasimir);
        fam.push(MultiPoly::z(3, 1), Provenance::HolomorphicCasimir);
        let pts = vec![vec![Gq::from(1), Gq::from(2), Gq::from(3)]];
        assert!(!involutivity_check(&fam, &p, &[(Gq::one(), Gq::zero())], &pts).unwrap());
    }
}
