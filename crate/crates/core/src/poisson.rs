//! Bivector fields with polynomial coefficients and their Schouten calculus.
//!
//! Conventions: `c = Σ_{i<j} c^{ij} ∂_i ∧ ∂_j`, the hamiltonian field
//! contracts the differential into the first slot, `c(f)^j = Σ_i ∂_i f c^{ij}`,
//! and `{f, g}_c = c(f)g = Σ ∂_i f c^{ij} ∂_j g`. With these, the
//! Lie-Poisson structure of so(3) has `{z₁, z₂} = z₃`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, PoissonError};
use crate::matrix::{self, ExactMatrix};
use crate::poly::MultiPoly;
use crate::scalar::Gq;

/// Structure constants `[e_i, e_j] = Σ_k c_ij^k e_k` of a Lie algebra.
///
/// Only `i < j` is stored. The Jacobi identity is deliberately not enforced
/// so that broken inputs can be represented and rejected by a check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    pub name: String,
    pub dim: usize,
    constants: BTreeMap<(usize, usize, usize), Gq>,
    pub basis_labels: Vec<String>,
}

impl LieAlgebraSpec {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        Self {
            name: name.into(),
            dim,
            constants: BTreeMap::new(),
            basis_labels: (1..=dim).map(|i| format!("e{i}")).collect(),
        }
    }

    pub fn with_labels(mut self, labels: &[&str]) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.basis_labels = labels.iter().map(|s| s.to_string()).collect();
        self
    }

    /// Sets `c_ij^k` (and implicitly `c_ji^k = −c_ij^k`). Overwrites.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Gq) -> Result<(), PoissonError> {
        if i >= self.dim || j >= self.dim || k >= self.dim {
            return Err(PoissonError::InvalidConstants(format!(
                "index ({i},{j},{k}) out of range for dimension {}",
                self.dim
            )));
        }
        if i == j {
            if value.is_zero() {
                return Ok(());
            }
            return Err(PoissonError::InvalidConstants(format!(
                "bracket [e{i}, e{i}] must vanish"
            )));
        }
        let (key, v) = if i < j {
            ((i, j, k), value)
        } else {
            ((j, i, k), -value)
        };
        if v.is_zero() {
            self.constants.remove(&key);
        } else {
            self.constants.insert(key, v);
        }
        Ok(())
    }

    pub fn bracket(mut self, i: usize, j: usize, k: usize, value: i64) -> Self {
        self.set(i, j, k, Gq::from(value)).expect("valid catalog constant");
        self
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Gq {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.constants.get(&(i, j, k)).cloned().unwrap_or_else(Gq::zero),
            Greater => -self.constants.get(&(j, i, k)).cloned().unwrap_or_else(Gq::zero),
            Equal => Gq::zero(),
        }
    }

    /// Nonzero constants with `i < j`, in index order.
    pub fn constants(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Gq)> {
        self.constants.iter()
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// `C(z)_{ij} = Σ_k c_ij^k z_k`.
    pub fn c_matrix(&self, z: &[Gq]) -> ExactMatrix {
        assert_eq!(z.len(), self.dim, "point dimension");
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for (&(i, j, k), c) in &self.constants {
            if z[k].is_zero() {
                continue;
            }
            let v = c * &z[k];
            m[(i, j)] += &v;
            m[(j, i)] -= &v;
        }
        m
    }

    /// Jacobi identity by direct evaluation of the constants: for all
    /// `i<j<l` and `m`, `Σ_cyc Σ_k c_ij^k c_kl^m = 0`. Returns the violating
    /// index tuples.
    pub fn jacobi_violations(&self) -> Vec<(usize, usize, usize, usize)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    for m in 0..n {
                        let mut acc = Gq::zero();
                        for (a, b, c) in [(i, j, l), (j, l, i), (l, i, j)] {
                            for k in 0..n {
                                let x = self.get(a, b, k);
                                if x.is_zero() {
                                    continue;
                                }
                                acc += &(&x * &self.get(k, c, m));
                            }
                        }
                        if !acc.is_zero() {
                            out.push((i, j, l, m));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Which tangent directions a field is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariableKind {
    /// Directions `∂/∂z_i` only; coefficients may still involve `z̄`.
    Holomorphic,
    /// Directions `∂/∂z_i` followed by `∂/∂z̄_i`.
    Mixed,
    /// Real coordinates `x_i` (stored in the `z` block).
    Real,
}

impl VariableKind {
    pub fn directions(self, num_vars: usize) -> usize {
        match self {
            VariableKind::Mixed => 2 * num_vars,
            _ => num_vars,
        }
    }
}

fn common_kind(a: VariableKind, b: VariableKind) -> Result<VariableKind, PoissonError> {
    use VariableKind::*;
    match (a, b) {
        (x, y) if x == y => Ok(x),
        (Holomorphic, Mixed) | (Mixed, Holomorphic) => Ok(Mixed),
        _ => Err(PoissonError::KindMismatch(format!("{a:?} vs {b:?}"))),
    }
}

fn check_vars(a: usize, b: usize) -> Result<(), PoissonError> {
    if a != b {
        return Err(AlgebraError::DimensionMismatch {
            expected: a,
            found: b,
        }
        .into());
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub num_vars: usize,
    pub kind: VariableKind,
    pub components: Vec<MultiPoly>,
}

impl VectorField {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MultiPoly::is_zero)
    }

    pub fn evaluate_at(&self, z: &[Gq]) -> Vec<Gq> {
        self.components.iter().map(|p| p.eval(z)).collect()
    }

    /// Derivative of `f` along the field.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        let mut acc = MultiPoly::zero(self.num_vars);
        for (r, x) in self.components.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let d = f.diff(r);
            if !d.is_zero() {
                acc = acc.add(&x.mul(&d)?);
            }
        }
        Ok(acc)
    }

    fn promoted(&self, kind: VariableKind) -> VectorField {
        if kind == self.kind {
            return self.clone();
        }
        let mut components = self.components.clone();
        components.resize(kind.directions(self.num_vars), MultiPoly::zero(self.num_vars));
        VectorField {
            num_vars: self.num_vars,
            kind,
            components,
        }
    }
}

/// `Σ_{i<j} c^{ij} ∂_i ∧ ∂_j` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivectorField {
    num_vars: usize,
    kind: VariableKind,
    coeffs: BTreeMap<(usize, usize), MultiPoly>,
}

impl BivectorField {
    pub fn zero(num_vars: usize, kind: VariableKind) -> Self {
        Self {
            num_vars,
            kind,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn kind(&self) -> VariableKind {
        self.kind
    }

    pub fn directions(&self) -> usize {
        self.kind.directions(self.num_vars)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `p` to `c^{ij}` (with the antisymmetric sign if `i > j`).
    pub fn add_component(&mut self, i: usize, j: usize, p: &MultiPoly) -> Result<(), PoissonError> {
        let d = self.directions();
        if i >= d || j >= d {
            return Err(AlgebraError::DimensionMismatch {
                expected: d,
                found: i.max(j) + 1,
            }
            .into());
        }
        check_vars(self.num_vars, p.num_vars())?;
        if i == j {
            if p.is_zero() {
                return Ok(());
            }
            return Err(PoissonError::InvalidConstants(format!(
                "diagonal component ({i},{i}) of a bivector must vanish"
            )));
        }
        let (key, p) = if i < j { ((i, j), p.clone()) } else { ((j, i), p.neg()) };
        let entry = self
            .coeffs
            .entry(key)
            .or_insert_with(|| MultiPoly::zero(p.num_vars()));
        *entry = entry.add(&p);
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    /// Builder form of [`add_component`](Self::add_component).
    pub fn with(mut self, i: usize, j: usize, p: MultiPoly) -> Self {
        self.add_component(i, j, &p).expect("valid component");
        self
    }

    /// `c^{ij}` for any ordered pair.
    pub fn get(&self, i: usize, j: usize) -> MultiPoly {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| MultiPoly::zero(self.num_vars)),
            Greater => self
                .coeffs
                .get(&(j, i))
                .map(MultiPoly::neg)
                .unwrap_or_else(|| MultiPoly::zero(self.num_vars)),
            Equal => MultiPoly::zero(self.num_vars),
        }
    }

    /// Nonzero upper-triangular components.
    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize), &MultiPoly)> {
        self.coeffs.iter()
    }

    fn promoted(&self, kind: VariableKind) -> BivectorField {
        Self {
            num_vars: self.num_vars,
            kind,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, s: &Gq) -> BivectorField {
        let mut out = Self::zero(self.num_vars, self.kind);
        if s.is_zero() {
            return out;
        }
        out.coeffs = self.coeffs.iter().map(|(k, p)| (*k, p.scale(s))).collect();
        out
    }

    /// `a·self + b·other`, on the common direction set.
    pub fn combine(a: &Gq, c1: &BivectorField, b: &Gq, c2: &BivectorField) -> Result<BivectorField, PoissonError> {
        check_vars(c1.num_vars, c2.num_vars)?;
        let kind = common_kind(c1.kind, c2.kind)?;
        let mut out = c1.scale(a).promoted(kind);
        for (&(i, j), p) in &c2.scale(b).coeffs {
            out.add_component(i, j, p)?;
        }
        Ok(out)
    }

    /// Skew matrix of `c^{ij}(z)` with `z̄` bound to the conjugate point.
    pub fn evaluate_at(&self, z: &[Gq]) -> Result<ExactMatrix, PoissonError> {
        check_vars(self.num_vars, z.len())?;
        let d = self.directions();
        let mut m = ExactMatrix::zeros(d, d);
        for (&(i, j), p) in &self.coeffs {
            let v = p.eval(z);
            m[(j, i)] = -&v;
            m[(i, j)] = v;
        }
        Ok(m)
    }

    /// The fixed-point coefficients as a flat vector, for independence tests.
    fn coefficient_table(&self) -> BTreeMap<(usize, usize, Vec<u32>), Gq> {
        let mut out = BTreeMap::new();
        for (&(i, j), p) in &self.coeffs {
            for (e, c) in p.terms() {
                out.insert((i, j, e.clone()), c.clone());
            }
        }
        out
    }
}

/// `Σ_{i<j<k} t^{ijk} ∂_i ∧ ∂_j ∧ ∂_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivectorField {
    num_vars: usize,
    coeffs: BTreeMap<(usize, usize, usize), MultiPoly>,
}

impl TrivectorField {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Nonzero components with strictly increasing indices.
    pub fn components(&self) -> impl Iterator<Item = (&(usize, usize, usize), &MultiPoly)> {
        self.coeffs.iter()
    }
}

/// `c^{ij} = Σ_k c_ij^k z_k` in holomorphic variables.
pub fn lie_poisson(g: &LieAlgebraSpec) -> BivectorField {
    let n = g.dim;
    let mut c = BivectorField::zero(n, VariableKind::Holomorphic);
    for (&(i, j, k), v) in g.constants() {
        c.add_component(i, j, &MultiPoly::z(n, k).scale(v))
            .expect("indices checked on insertion");
    }
    c
}

/// Replaces `z_k` by `z̄_k` in every coefficient of a linear holomorphic field.
pub fn conjugate_twist(c: &BivectorField) -> Result<BivectorField, PoissonError> {
    if c.kind != VariableKind::Holomorphic {
        return Err(PoissonError::NonLinear);
    }
    let mut out = BivectorField::zero(c.num_vars, c.kind);
    for (&(i, j), p) in &c.coeffs {
        if !p.is_linear_holomorphic() {
            return Err(PoissonError::NonLinear);
        }
        out.coeffs.insert((i, j), p.swap_variables());
    }
    Ok(out)
}

/// Schouten bracket of two bivectors:
/// `[c₁,c₂]^{ijk} = ½ Σ_cyc Σ_r (c₁^{ir} ∂_r c₂^{jk} + c₂^{ir} ∂_r c₁^{jk})`.
pub fn schouten_bracket(c1: &BivectorField, c2: &BivectorField) -> Result<TrivectorField, PoissonError> {
    check_vars(c1.num_vars, c2.num_vars)?;
    let kind = common_kind(c1.kind, c2.kind)?;
    let n = c1.num_vars;
    let d = kind.directions(n);
    let half = Gq::from_ratio(1, 2);

    // c^{ir} ∂_r c'^{jk}, summed over r
    let contract = |a: &BivectorField, b: &BivectorField, i: usize, j: usize, k: usize| -> Result<MultiPoly, AlgebraError> {
        let target = b.get(j, k);
        let mut acc = MultiPoly::zero(n);
        if target.is_zero() {
            return Ok(acc);
        }
        for r in 0..d {
            let air = a.get(i, r);
            if air.is_zero() {
                continue;
            }
            let dr = target.diff(r);
            if !dr.is_zero() {
                acc = acc.add(&air.mul(&dr)?);
            }
        }
        Ok(acc)
    };

    let mut coeffs = BTreeMap::new();
    for i in 0..d {
        for j in i + 1..d {
            for k in j + 1..d {
                let mut acc = MultiPoly::zero(n);
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    acc = acc.add(&contract(c1, c2, a, b, c)?);
                    acc = acc.add(&contract(c2, c1, a, b, c)?);
                }
                let acc = acc.scale(&half);
                if !acc.is_zero() {
                    coeffs.insert((i, j, k), acc);
                }
            }
        }
    }
    Ok(TrivectorField { num_vars: n, coeffs })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonPairCheck {
    pub first_poisson: bool,
    pub compatible: bool,
    pub second_poisson: bool,
    pub linearly_independent: bool,
}

impl PoissonPairCheck {
    pub fn flags(&self) -> (bool, bool, bool) {
        (self.first_poisson, self.compatible, self.second_poisson)
    }

    pub fn is_poisson_pair(&self) -> bool {
        self.first_poisson && self.compatible && self.second_poisson && self.linearly_independent
    }
}

pub fn is_poisson_pair(c1: &BivectorField, c2: &BivectorField) -> Result<PoissonPairCheck, PoissonError> {
    let first_poisson = schouten_bracket(c1, c1)?.is_zero();
    let compatible = schouten_bracket(c1, c2)?.is_zero();
    let second_poisson = schouten_bracket(c2, c2)?.is_zero();
    Ok(PoissonPairCheck {
        first_poisson,
        compatible,
        second_poisson,
        linearly_independent: fields_independent(c1, c2),
    })
}

/// Linear independence over ℂ of two fields, by exact rank of their
/// coefficient tables.
pub fn fields_independent(c1: &BivectorField, c2: &BivectorField) -> bool {
    let t1 = c1.coefficient_table();
    let t2 = c2.coefficient_table();
    let keys: Vec<_> = t1.keys().chain(t2.keys()).cloned().collect::<std::collections::BTreeSet<_>>().into_iter().collect();
    if keys.is_empty() {
        return false;
    }
    let row = |t: &BTreeMap<_, Gq>| -> Vec<Gq> {
        keys.iter().map(|k| t.get(k).cloned().unwrap_or_else(Gq::zero)).collect()
    };
    let m = ExactMatrix::from_rows(&[row(&t1), row(&t2)], keys.len());
    matrix::rank_exact(&m) == 2
}

/// `(L_X Z)^{ab} = X^r ∂_r Z^{ab} − Z^{rb} ∂_r X^a − Z^{ar} ∂_r X^b`.
pub fn lie_derivative_bivector(x: &VectorField, z: &BivectorField) -> Result<BivectorField, PoissonError> {
    check_vars(x.num_vars, z.num_vars)?;
    let kind = common_kind(x.kind, z.kind)?;
    let n = z.num_vars;
    let d = kind.directions(n);
    let x = x.promoted(kind);
    let z = z.promoted(kind);
    let mut out = BivectorField::zero(n, kind);
    for a in 0..d {
        for b in a + 1..d {
            let mut acc = MultiPoly::zero(n);
            for r in 0..d {
                let xr = &x.components[r];
                if !xr.is_zero() {
                    let dz = z.get(a, b).diff(r);
                    if !dz.is_zero() {
                        acc = acc.add(&xr.mul(&dz)?);
                    }
                }
                let zrb = z.get(r, b);
                if !zrb.is_zero() {
                    let dx = x.components[a].diff(r);
                    if !dx.is_zero() {
                        acc = acc.sub(&zrb.mul(&dx)?);
                    }
                }
                let zar = z.get(a, r);
                if !zar.is_zero() {
                    let dx = x.components[b].diff(r);
                    if !dx.is_zero() {
                        acc = acc.sub(&zar.mul(&dx)?);
                    }
                }
            }
            if !acc.is_zero() {
                out.coeffs.insert((a, b), acc);
            }
        }
    }
    Ok(out)
}

/// `c(f)^j = Σ_i ∂_i f · c^{ij}`.
pub fn hamiltonian_field(c: &BivectorField, f: &MultiPoly) -> Result<VectorField, PoissonError> {
    check_vars(c.num_vars, f.num_vars())?;
    let n = c.num_vars;
    let d = c.directions();
    let grad: Vec<MultiPoly> = (0..d).map(|i| f.diff(i)).collect();
    let mut components = vec![MultiPoly::zero(n); d];
    for (&(i, j), p) in &c.coeffs {
        // c^{ij} contributes ∂_i f·c^{ij} to slot j and −∂_j f·c^{ij} to slot i
        if !grad[i].is_zero() {
            components[j] = components[j].add(&grad[i].mul(p)?);
        }
        if !grad[j].is_zero() {
            components[i] = components[i].sub(&grad[j].mul(p)?);
        }
    }
    Ok(VectorField {
        num_vars: n,
        kind: c.kind,
        components,
    })
}

/// `{f, g}_c = Σ ∂_i f · c^{ij} · ∂_j g`.
pub fn poisson_bracket(c: &BivectorField, f: &MultiPoly, g: &MultiPoly) -> Result<MultiPoly, PoissonError> {
    check_vars(c.num_vars, g.num_vars())?;
    Ok(hamiltonian_field(c, f)?.apply(g)?)
}

pub fn evaluate_at(c: &BivectorField, z: &[Gq]) -> Result<ExactMatrix, PoissonError> {
    c.evaluate_at(z)
}

/// The real orbit generator `c(z_i) + conjugate` of a holomorphic linear
/// field, as a field in the `(z, z̄)` directions.
pub fn orbit_generator(c: &BivectorField, i: usize) -> Result<VectorField, PoissonError> {
    let n = c.num_vars;
    let h = hamiltonian_field(c, &MultiPoly::z(n, i))?;
    let mut components = h.components.clone();
    components.extend(h.components.iter().map(MultiPoly::conj));
    Ok(VectorField {
        num_vars: n,
        kind: VariableKind::Mixed,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so3() -> LieAlgebraSpec {
        LieAlgebraSpec::new("so3", 3)
            .bracket(0, 1, 2, 1)
            .bracket(1, 2, 0, 1)
            .bracket(2, 0, 1, 1)
    }

    #[test]
    fn so3_lie_poisson_components() {
        let c = lie_poisson(&so3());
        assert_eq!(c.get(0, 1), MultiPoly::z(3, 2));
        assert_eq!(c.get(1, 2), MultiPoly::z(3, 0));
        assert_eq!(c.get(2, 0), MultiPoly::z(3, 1));
        assert_eq!(c.get(0, 2), MultiPoly::z(3, 1).neg());
    }

    #[test]
    fn bracket_convention() {
        let c = lie_poisson(&so3());
        let b = poisson_bracket(&c, &MultiPoly::z(3, 0), &MultiPoly::z(3, 1)).unwrap();
        assert_eq!(b, MultiPoly::z(3, 2));
    }

    #[test]
    fn jacobi_direct_check() {
        assert!(so3().jacobi_violations().is_empty());
        // rescaling a diagonal constant keeps Jacobi; an off-pattern one breaks it
        assert!(so3().bracket(0, 1, 2, 2).jacobi_violations().is_empty());
        assert!(!so3().bracket(0, 1, 0, 1).jacobi_violations().is_empty());
    }

    #[test]
    fn twist_rejects_nonlinear() {
        let n = 2;
        let sq = MultiPoly::z(n, 0).mul(&MultiPoly::z(n, 0)).unwrap();
        let c = BivectorField::zero(n, VariableKind::Holomorphic).with(0, 1, sq);
        assert_eq!(conjugate_twist(&c), Err(PoissonError::NonLinear));
    }

    #[test]
    fn evaluation_is_skew() {
        let c = lie_poisson(&so3());
        let m = c.evaluate_at(&[Gq::from(1), Gq::from(0), Gq::from(0)]).unwrap();
        assert!(m.is_skew());
        assert_eq!(m[(1, 2)], Gq::from(1));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn independence() {
        let c = lie_poisson(&so3());
        let ct = conjugate_twist(&c).unwrap();
        assert!(fields_independent(&c, &ct));
        assert!(!fields_independent(&c, &c.scale(&Gq::from(3))));
    }
}
