#![allow(dead_code)]

use bihamil_core::{ExactMatrix, Gq};
use num_traits::{One, Zero};

pub fn pt(v: &[(i64, i64)]) -> Vec<Gq> {
    v.iter().map(|&(a, b)| Gq::from_ints(a, b)).collect()
}


/// An invertible integer matrix `P·L·U` built from small entries.
pub fn unimodular(n: usize, entries: &[i64], perm_seed: usize) -> ExactMatrix {
    let mut it = entries.iter().cycle();
    let mut l = ExactMatrix::identity(n);
    let mut u = ExactMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = Gq::from(*it.next().unwrap());
            u[(j, i)] = Gq::from(*it.next().unwrap());
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    if n > 1 {
        perm.rotate_left(perm_seed % n);
        perm.swap(0, perm_seed % n);
    }
    let p = ExactMatrix::from_fn(n, n, |i, j| if perm[i] == j { Gq::one() } else { Gq::zero() });
    p.mul(&l).mul(&u)
}
