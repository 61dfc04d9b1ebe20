//! Deterministic sample schedules for pencil directions and points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::Gq;

pub type Lambda = (Gq, Gq);

/// `(1,0), (0,1), (1,1), (1,2), (1,3), …`, first `count` entries.
pub fn lambda_schedule(count: usize) -> Vec<Lambda> {
    (0..count).map(lambda_at).collect()
}

pub fn lambda_at(index: usize) -> Lambda {
    match index {
        0 => (Gq::from(1), Gq::from(0)),
        1 => (Gq::from(0), Gq::from(1)),
        k => (Gq::from(1), Gq::from((k - 1) as i64)),
    }
}

/// The schedule restricted to directions with both coordinates nonzero.
pub fn mixed_lambda_schedule(count: usize) -> Vec<Lambda> {
    (2..2 + count).map(lambda_at).collect()
}

/// Seeded generator of bounded-height Gaussian-rational points.
///
/// Every coordinate is `a/b + (c/d)·i` with `|a|, |c| ≤ height` and
/// `1 ≤ b, d ≤ height`.
#[derive(Clone, Debug)]
pub struct PointSchedule {
    rng: ChaCha8Rng,
    height: i64,
}

impl PointSchedule {
    pub fn new(seed: u64, height: u32) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            height: height.max(1) as i64,
        }
    }

    fn rational(&mut self) -> BigRational {
        let h = self.height;
        let num = self.rng.random_range(-h..=h);
        let den = self.rng.random_range(1..=h);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn nonzero_rational(&mut self) -> BigRational {
        loop {
            let r = self.rational();
            if !r.is_zero() {
                return r;
            }
        }
    }

    pub fn scalar(&mut self) -> Gq {
        Gq::new(self.rational(), self.rational())
    }

    /// A point of ℂⁿ whose coordinates all have nonzero real and imaginary
    /// parts.
    pub fn complex_point(&mut self, n: usize) -> Vec<Gq> {
        (0..n)
            .map(|_| Gq::new(self.nonzero_rational(), self.nonzero_rational()))
            .collect()
    }

    /// A point of ℝⁿ ⊂ ℂⁿ with nonzero coordinates.
    pub fn real_point(&mut self, n: usize) -> Vec<Gq> {
        (0..n).map(|_| Gq::real(self.nonzero_rational())).collect()
    }

    pub fn complex_points(&mut self, n: usize, count: usize) -> Vec<Vec<Gq>> {
        (0..count).map(|_| self.complex_point(n)).collect()
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }
}
