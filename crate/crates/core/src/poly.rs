//! Sparse multivariate polynomials in `z₁..z_n, z̄₁..z̄_n`.
//!
//! An exponent vector has length `2n`: the first `n` slots are the
//! holomorphic variables, the last `n` the antiholomorphic ones. The two
//! blocks are independent formal variables for differentiation; evaluation
//! binds `z̄_k` to the conjugate of `z_k`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::scalar::Gq;

pub const DEFAULT_DEGREE_CAP: u32 = 8;

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    num_vars: usize,
    terms: BTreeMap<Exponents, Gq>,
    cap: u32,
}

impl MultiPoly {
    pub fn zero(num_vars: usize) -> Self {
        Self {
            num_vars,
            terms: BTreeMap::new(),
            cap: DEFAULT_DEGREE_CAP,
        }
    }

    pub fn constant(num_vars: usize, c: Gq) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vec![0; 2 * num_vars], c);
        p
    }

    /// The variable with slot `index` (`0..n` are `z`, `n..2n` are `z̄`).
    pub fn var(num_vars: usize, index: usize) -> Self {
        assert!(index < 2 * num_vars, "variable index out of range");
        let mut e = vec![0; 2 * num_vars];
        e[index] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(e, Gq::one());
        p
    }

    pub fn z(num_vars: usize, k: usize) -> Self {
        Self::var(num_vars, k)
    }

    pub fn zbar(num_vars: usize, k: usize) -> Self {
        Self::var(num_vars, num_vars + k)
    }

    /// Linear form `Σ a_k z_k`.
    pub fn linear(coeffs: &[Gq]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (k, a) in coeffs.iter().enumerate() {
            let mut e = vec![0; 2 * n];
            e[k] = 1;
            p.add_term(e, a.clone());
        }
        p
    }

    pub fn from_terms(
        num_vars: usize,
        terms: impl IntoIterator<Item = (Exponents, Gq)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero(num_vars);
        for (e, c) in terms {
            if e.len() != 2 * num_vars {
                return Err(AlgebraError::DimensionMismatch {
                    expected: 2 * num_vars,
                    found: e.len(),
                });
            }
            let d: u32 = e.iter().sum();
            if d > p.cap {
                return Err(AlgebraError::DegreeCap { degree: d, cap: p.cap });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Gq> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Gq {
        self.terms.get(e).cloned().unwrap_or_else(Gq::zero)
    }

    pub fn add_term(&mut self, e: Exponents, c: Gq) {
        debug_assert_eq!(e.len(), 2 * self.num_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// No `z̄` variable occurs.
    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(|e| e[self.num_vars..].iter().all(|&x| x == 0))
    }

    /// No `z` variable occurs.
    pub fn is_antiholomorphic(&self) -> bool {
        self.terms.keys().all(|e| e[..self.num_vars].iter().all(|&x| x == 0))
    }

    /// Homogeneous of degree one in the `z` block only.
    pub fn is_linear_holomorphic(&self) -> bool {
        self.is_holomorphic() && self.terms.keys().all(|e| e.iter().sum::<u32>() == 1)
    }

    /// Coefficients `a_k` of a holomorphic linear form `Σ a_k z_k`.
    pub fn linear_coefficients(&self) -> Option<Vec<Gq>> {
        if !self.is_linear_holomorphic() {
            return None;
        }
        let mut out = vec![Gq::zero(); self.num_vars];
        for (e, c) in &self.terms {
            let k = e.iter().position(|&x| x == 1).expect("degree one");
            out[k] = c.clone();
        }
        Some(out)
    }

    fn check_vars(&self, other: &Self) {
        assert_eq!(self.num_vars, other.num_vars, "polynomials in different rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Gq::one())
    }

    pub fn scale(&self, s: &Gq) -> Self {
        if s.is_zero() {
            return Self::zero(self.num_vars).with_cap(self.cap);
        }
        Self {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
            cap: self.cap,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_vars(other);
        let cap = self.cap.min(other.cap);
        let degree = if self.is_zero() || other.is_zero() {
            0
        } else {
            self.total_degree() + other.total_degree()
        };
        if degree > cap {
            return Err(AlgebraError::DegreeCap { degree, cap });
        }
        let mut out = Self::zero(self.num_vars).with_cap(cap);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self, AlgebraError> {
        let mut acc = Self::constant(self.num_vars, Gq::one()).with_cap(self.cap);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to variable slot `var`.
    pub fn diff(&self, var: usize) -> Self {
        assert!(var < 2 * self.num_vars, "variable index out of range");
        let mut out = Self::zero(self.num_vars).with_cap(self.cap);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] -= 1;
            out.add_term(e2, c * &Gq::from(k as i64));
        }
        out
    }

    /// Complex conjugate as a function: swap the blocks and conjugate
    /// every coefficient.
    pub fn conj(&self) -> Self {
        let n = self.num_vars;
        Self {
            num_vars: n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (swap_blocks(e, n), c.conj()))
                .collect(),
            cap: self.cap,
        }
    }

    /// Replaces every `z_k` by `z̄_k` and vice versa, keeping coefficients.
    pub fn swap_variables(&self) -> Self {
        let n = self.num_vars;
        Self {
            num_vars: n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (swap_blocks(e, n), c.clone()))
                .collect(),
            cap: self.cap,
        }
    }

    /// Evaluates with `z̄` bound to the conjugate of `z`.
    pub fn eval(&self, z: &[Gq]) -> Gq {
        assert_eq!(z.len(), self.num_vars, "point dimension");
        let zb: Vec<Gq> = z.iter().map(Gq::conj).collect();
        self.eval_mixed(z, &zb)
    }

    /// Evaluates with independent values for the two blocks.
    pub fn eval_mixed(&self, z: &[Gq], zbar: &[Gq]) -> Gq {
        let n = self.num_vars;
        let mut powers: Vec<Vec<Gq>> = Vec::with_capacity(2 * n);
        for k in 0..2 * n {
            let base = if k < n { &z[k] } else { &zbar[k - n] };
            let maxe = self.terms.keys().map(|e| e[k]).max().unwrap_or(0);
            let mut pw = Vec::with_capacity(maxe as usize + 1);
            pw.push(Gq::one());
            for i in 1..=maxe as usize {
                let next = &pw[i - 1] * base;
                pw.push(next);
            }
            powers.push(pw);
        }
        let mut acc = Gq::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (k, &ek) in e.iter().enumerate() {
                if ek > 0 {
                    t *= &powers[k][ek as usize];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes `images[k]` for variable slot `k` (all `2n` slots).
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<Self, AlgebraError> {
        assert_eq!(images.len(), 2 * self.num_vars, "one image per variable slot");
        let m = images.first().map_or(self.num_vars, |p| p.num_vars);
        let mut out = Self::zero(m).with_cap(self.cap);
        let mut cache: BTreeMap<(usize, u32), MultiPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut t = MultiPoly::constant(m, c.clone()).with_cap(self.cap);
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                let pw = match cache.get(&(k, ek)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = images[k].clone().with_cap(self.cap).pow(ek)?;
                        cache.insert((k, ek), p.clone());
                        p
                    }
                };
                t = t.mul(&pw)?;
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// The homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, degree: u32) -> Self {
        Self {
            num_vars: self.num_vars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
            cap: self.cap,
        }
    }

    /// Drops the constant term.
    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&vec![0; 2 * self.num_vars]);
        out
    }

    /// Gradient with respect to the `z` block.
    pub fn holomorphic_gradient(&self) -> Vec<MultiPoly> {
        (0..self.num_vars).map(|k| self.diff(k)).collect()
    }
}

fn swap_blocks(e: &[u32], n: usize) -> Exponents {
    let mut out = Vec::with_capacity(2 * n);
    out.extend_from_slice(&e[n..]);
    out.extend_from_slice(&e[..n]);
    out
}

/// Exact partial derivative; `var_index < 2·num_vars`.
pub fn poly_diff(p: &MultiPoly, var_index: usize) -> MultiPoly {
    p.diff(var_index)
}

/// All exponent vectors of `n` holomorphic variables with total degree `d`,
/// in lexicographic order.
pub fn holomorphic_monomials(n: usize, d: u32) -> Vec<Exponents> {
    fn rec(n: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if k == n - 1 {
            cur[k] = left;
            let mut e = cur.clone();
            e.extend(std::iter::repeat(0).take(n));
            out.push(e);
            cur[k] = 0;
            return;
        }
        for a in (0..=left).rev() {
            cur[k] = a;
            rec(n, k + 1, left - a, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    rec(n, 0, d, &mut vec![0; n], &mut out);
    out
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let n = self.num_vars;
        let mut first = true;
        // highest degree first reads more naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (e, c) in terms {
            let mut mono = Vec::new();
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                let name = if k < n {
                    format!("z{}", k + 1)
                } else {
                    format!("zb{}", k - n + 1)
                };
                mono.push(if ek == 1 { name } else { format!("{name}^{ek}") });
            }
            let coeff = c.to_string();
            let needs_paren = !c.is_real() && !c.re.is_zero();
            let coeff = if needs_paren { format!("({coeff})") } else { coeff };
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if mono.is_empty() {
                write!(f, "{coeff}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({})", self.num_vars, self)
    }
}
