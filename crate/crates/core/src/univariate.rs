//! Univariate polynomials over the Gaussian rationals: characteristic
//! polynomials, square-free decomposition and root approximation.
//!
//! Coefficients are stored lowest degree first.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::matrix::ExactMatrix;
use crate::scalar::Gq;

pub type UniPoly = Vec<Gq>;

fn trim(mut p: UniPoly) -> UniPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn degree(p: &[Gq]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(p: &[Gq], x: &Gq) -> Gq {
    let mut acc = Gq::zero();
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn eval_c64(p: &[Complex64], x: Complex64) -> Complex64 {
    p.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

pub fn derivative(p: &[Gq]) -> UniPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Gq::from(k as i64))
            .collect(),
    )
}

fn monic(p: UniPoly) -> UniPoly {
    let p = trim(p);
    let Some(lead) = p.last().cloned() else {
        return p;
    };
    let inv = lead.inv().expect("nonzero leading coefficient");
    p.iter().map(|c| c * &inv).collect()
}

/// Quotient and remainder of polynomial division; `d` must be nonzero.
pub fn div_rem(n: &[Gq], d: &[Gq]) -> (UniPoly, UniPoly) {
    let d = trim(d.to_vec());
    let dd = d.len().checked_sub(1).expect("division by the zero polynomial");
    let mut r = trim(n.to_vec());
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let inv = d[dd].inv().expect("nonzero leading coefficient");
    let mut q = vec![Gq::zero(); r.len() - dd];
    while r.len() > dd && !r.is_empty() {
        let shift = r.len() - 1 - dd;
        let f = &r[r.len() - 1] * &inv;
        for (i, c) in d.iter().enumerate() {
            if !c.is_zero() {
                let t = &f * c;
                r[shift + i] -= &t;
            }
        }
        q[shift] = f;
        r = trim(r);
    }
    (trim(q), r)
}

/// Monic greatest common divisor.
pub fn gcd(a: &[Gq], b: &[Gq]) -> UniPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

fn sub(a: &[Gq], b: &[Gq]) -> UniPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Gq::zero);
                let y = b.get(i).cloned().unwrap_or_else(Gq::zero);
                x - y
            })
            .collect(),
    )
}

/// Characteristic polynomial `det(xI − M)` by the Faddeev-LeVerrier
/// recursion (exact; divisions by small integers only).
pub fn char_poly(m: &ExactMatrix) -> UniPoly {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Gq::zero(); n + 1];
    coeffs[n] = Gq::one();
    if n == 0 {
        return coeffs;
    }
    let id = ExactMatrix::identity(n);
    let mut mk = ExactMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = M·M_{k-1} + c_{n-k+1}·I, c_{n-k} = −tr(M·M_k)/k
        mk = m.mul(&mk).add(&id.scale(&coeffs[n - k + 1]));
        let am = m.mul(&mk);
        let mut tr = Gq::zero();
        for i in 0..n {
            tr += &am[(i, i)];
        }
        coeffs[n - k] = -(tr * Gq::from_ratio(1, k as i64));
    }
    coeffs
}

/// Square-free decomposition (Yun): returns `(factor, multiplicity)` with
/// monic, pairwise coprime, square-free factors of positive degree.
pub fn squarefree_decomposition(p: &[Gq]) -> Vec<(UniPoly, usize)> {
    let f = monic(p.to_vec());
    if degree(&f).unwrap_or(0) == 0 {
        return Vec::new();
    }
    let fp = derivative(&f);
    let a0 = gcd(&f, &fp);
    let mut b = div_rem(&f, &a0).0;
    let mut c = div_rem(&fp, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while degree(&b).unwrap_or(0) > 0 {
        let a = gcd(&b, &d);
        let nb = div_rem(&b, &a).0;
        c = div_rem(&d, &a).0;
        b = nb;
        d = sub(&c, &derivative(&b));
        if degree(&a).unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Simultaneous root approximation (Aberth-Ehrlich) for a polynomial with
/// distinct roots, followed by Newton polishing.
pub fn approximate_roots(p: &[Gq]) -> Vec<Complex64> {
    let p = monic(p.to_vec());
    let Some(n) = degree(&p) else {
        return Vec::new();
    };
    if n == 0 {
        return Vec::new();
    }
    let c: Vec<Complex64> = p.iter().map(Gq::to_c64).collect();
    if n == 1 {
        return vec![-c[0]];
    }
    let dc: Vec<Complex64> = (1..=n).map(|k| c[k] * k as f64).collect();
    let bound = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(0.5 * bound, angle)
        })
        .collect();
    for _ in 0..500 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let pv = eval_c64(&c, z[k]);
            let dv = eval_c64(&dc, z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm());
            }
        }
        if max_step < 1e-15 * bound {
            break;
        }
    }
    for zk in z.iter_mut() {
        for _ in 0..5 {
            let dv = eval_c64(&dc, *zk);
            if dv.norm() == 0.0 {
                break;
            }
            let step = eval_c64(&c, *zk) / dv;
            if !step.is_finite() {
                break;
            }
            *zk -= step;
        }
    }
    z.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    z
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// via continued fractions.
pub fn rational_approximation(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1) = (h1, h2);
        (k0, k1) = (k1, k2);
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

/// Tries to identify an approximate root as an exact Gaussian-rational root
/// of `p`; the candidate is accepted only if it is close to `approx` and
/// `p` vanishes on it exactly.
pub fn snap_root(p: &[Gq], approx: Complex64) -> Option<Gq> {
    let tol = 1e-6 * approx.norm().max(1.0);
    for max_den in [1, 12, 1_000, 1_000_000] {
        let re = rational_approximation(approx.re, max_den)?;
        let im = rational_approximation(approx.im, max_den)?;
        let cand = Gq::new(re, im);
        if (cand.to_c64() - approx).norm() <= tol && eval(p, &cand).is_zero() {
            return Some(cand);
        }
    }
    None
}

pub fn to_f64_pair(x: &Gq) -> (f64, f64) {
    (x.re.to_f64().unwrap_or(f64::NAN), x.im.to_f64().unwrap_or(f64::NAN))
}

#[cfg(test)]
mod tests {

    use super::*;

    fn p(v: &[i64]) -> UniPoly {
        v.iter().map(|&x| Gq::from(x)).collect()
    }

    #[test]
    fn charpoly_of_companion() {
        // [[0,-2],[1,3]] has x^2 - 3x + 2
        let m = ExactMatrix::from_i64(2, 2, &[0, -2, 1, 3]);
        assert_eq!(char_poly(&m), p(&[2, -3, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x-2)^3
        let f = p(&[-8, 28, -38, 25, -8, 1]);
        let d = squarefree_decomposition(&f);
        assert_eq!(d, vec![(p(&[-1, 1]), 2), (p(&[-2, 1]), 3)]);
    }

    #[test]
    fn roots_snap_to_exact_values() {
        // (x - 3)(x + i)
        let f = vec![Gq::from_ints(0, -3), Gq::from_ints(-3, 1), Gq::one()];
        let roots = approximate_roots(&f);
        let exact: Vec<Gq> = roots.iter().filter_map(|r| snap_root(&f, *r)).collect();
        assert_eq!(exact.len(), 2);
        assert!(exact.contains(&Gq::from(3)));
        assert!(exact.contains(&Gq::from_ints(0, -1)));
    }

    #[test]
    fn irrational_roots_stay_approximate() {
        let f = p(&[-2, 0, 1]);
        let roots = approximate_roots(&f);
        assert_eq!(roots.len(), 2);
        assert!((roots[1].re - 2f64.sqrt()).abs() < 1e-12);
        assert!(roots.iter().all(|r| snap_root(&f, *r).is_none()));
    }

    #[test]
    fn snap_ignores_other_roots() {
        // (x − 1)(x − 4/3): rounding 4/3 to 1 gives a root, but the wrong one
        let p = vec![Gq::from_ratio(4, 3), Gq::from_ratio(-7, 3), Gq::from(1)];
        assert_eq!(snap_root(&p, Complex64::new(1.3333333333, 0.0)), Some(Gq::from_ratio(4, 3)));
    }
}
