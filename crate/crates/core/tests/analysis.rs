mod common;

use bihamil_core::canonical::{CanonicalPair, GenericityConfig};
use bihamil_core::catalog;
use bihamil_core::integrals::{
    self, casimir_basis, cr_lagrangian_check, family_f1, family_from_casimirs, g0_invariance_check,
    involutivity_check, translation_family,
};
use bihamil_core::orbits::{self, cr_genericity_check, cr_isotropy_check, orbit_tangent, reduction_completeness};
use bihamil_core::poisson::{hamiltonian_field, lie_poisson};
use bihamil_core::schedule::{lambda_schedule, mixed_lambda_schedule, PointSchedule};
use bihamil_core::{AnalysisError, Gq, MultiPoly};
use common::pt;
use num_traits::Zero;

fn pair(name: &str) -> CanonicalPair {
    CanonicalPair::new(catalog::algebra(name).unwrap(), GenericityConfig::default()).unwrap()
}

fn points(n: usize, count: usize) -> Vec<Vec<Gq>> {
    PointSchedule::new(42, 10).complex_points(n, count)
}

#[test]
fn membership_is_monotone() {
    let mut sched = PointSchedule::new(7, 6);
    for name in catalog::algebra_names() {
        let p = pair(name);
        let n = p.dim();
        let mut pts = sched.complex_points(n, 4);
        pts.push(sched.real_point(n));
        pts.push(vec![Gq::zero(); n]);
        let mut sparse = sched.complex_point(n);
        sparse[0] = Gq::zero();
        pts.push(sparse);
        for z in &pts {
            let c = p.classify_point(z, 5).unwrap();
            assert!(!c.in_sing || c.in_incompleteness, "{name}");
            assert!(!c.in_incompleteness || c.in_irregularity, "{name}");
        }
    }
}

#[test]
fn real_points_are_incomplete() {
    // at a real point C(z) = C(z̄), so the member (1, −1) vanishes
    let mut sched = PointSchedule::new(3, 10);
    for name in catalog::algebra_names() {
        let p = pair(name);
        let z = sched.real_point(p.dim());
        assert!(p.in_incompleteness_set(&z).unwrap(), "{name}");
    }
}

#[test]
fn orbit_dimension_identities() {
    for name in catalog::algebra_names() {
        let p = pair(name);
        let n = p.dim();
        for z in points(n, 3) {
            let f = orbit_tangent(&p, &z).unwrap();
            let mu = p.mu(&z).unwrap();
            let rank = p.c_matrix(&z).rank();
            // dim_R T = rank of the realified generators; T + JT spans the image of C(z)
            assert_eq!(f.orbit_dim, n - mu, "{name}");
            assert_eq!(f.cr_dim, f.orbit_dim - rank, "{name}");
            assert!(cr_genericity_check(&f), "{name}");
            if !p.in_kronecker_irregularity(&z).unwrap() {
                assert_eq!(f.cr_dim, p.rank_of_algebra() - mu, "{name}");
            }
        }
    }
}

#[test]
fn d45_trivial_dimension() {
    let p = pair("d45");
    assert_eq!(p.rank_of_algebra(), 10);
    for z in points(14, 4) {
        assert_eq!(p.mu(&z).unwrap(), 8);
        for l in mixed_lambda_schedule(7) {
            assert_eq!(p.mu_lambda(&z, &l).unwrap(), 8);
        }
        let f = orbit_tangent(&p, &z).unwrap();
        assert_eq!((f.orbit_dim, f.cr_dim), (6, 2));
    }
}

#[test]
fn so3_orbits() {
    let p = pair("so3");
    let origin = pt(&[(0, 0); 3]);
    let f = orbit_tangent(&p, &origin).unwrap();
    assert_eq!((f.orbit_dim, f.cr_dim), (0, 0));
    let z = pt(&[(1, 0), (0, 1), (0, 0)]);
    let f = orbit_tangent(&p, &z).unwrap();
    assert_eq!((f.orbit_dim, f.cr_dim), (3, 1));
    assert!(cr_isotropy_check(&p, &z).unwrap());
    assert!(matches!(cr_isotropy_check(&p, &origin), Err(AnalysisError::Precondition(_))));
}

#[test]
fn twisted_field_kills_hermitian_norm() {
    let p = pair("so3");
    let mut norm = MultiPoly::zero(3);
    for k in 0..3 {
        norm = norm.add(&MultiPoly::z(3, k).mul(&MultiPoly::zbar(3, k)).unwrap());
    }
    let v = hamiltonian_field(&p.c_tilde, &norm).unwrap();
    assert!(v.is_zero());
}

#[test]
fn reduction_is_complete_and_minimal() {
    for (name, quotient) in [("so3", 1), ("so3xso3", 2), ("sl3", 4)] {
        let p = pair(name);
        for z in points(p.dim(), 2) {
            let r = reduction_completeness(&p, &z, 7).unwrap();
            assert!(r.complete && r.minimal, "{name}");
            assert_eq!(r.k, p.rank_of_algebra() - p.mu(&z).unwrap(), "{name}");
            assert!(r.k_lambda.iter().all(|(_, k)| *k == r.k), "{name}");
            assert_eq!(r.quotient_dim, quotient, "{name}");
            for (_, d) in &r.d_lambda {
                assert_eq!(d + r.k, r.quotient_dim, "{name}");
            }
        }
    }
    let p = pair("sl3");
    let z = &points(8, 1)[0];
    assert_eq!(reduction_completeness(&p, z, 7).unwrap().reduced_generic_rank, 2);
}

#[test]
fn reduction_needs_regular_point() {
    let p = pair("so3");
    assert!(reduction_completeness(&p, &pt(&[(0, 0); 3]), 7).is_err());
}

#[test]
fn heisenberg_is_everywhere_incomplete() {
    let p = pair("heisenberg3");
    for z in points(3, 3) {
        let c = p.classify_point(&z, 5).unwrap();
        assert!(c.in_incompleteness && c.in_irregularity);
        assert_eq!(c.mu, 1);
    }
}

#[test]
fn so3_family_is_involutive_and_invariant() {
    let p = pair("so3");
    let lambdas = lambda_schedule(5);
    let fam = family_f1(&p, 2, &lambdas).unwrap();
    assert_eq!(fam.len(), 5);
    let pts = points(3, 10);
    assert!(involutivity_check(&fam, &p, &lambdas, &pts).unwrap());
    for f in fam.polys() {
        assert!(g0_invariance_check(f, &p, &pts).unwrap());
    }
    assert!(cr_lagrangian_check(&fam, &p, &pts[0]).unwrap());
}

#[test]
fn coordinate_functions_are_not_invariant() {
    let p = pair("so3");
    assert!(!g0_invariance_check(&MultiPoly::z(3, 0), &p, &points(3, 2)).unwrap());
}

#[test]
fn d45_linear_family() {
    let p = pair("d45");
    let lambdas = lambda_schedule(5);
    let casimirs = casimir_basis(&p, 1).unwrap();
    assert_eq!(casimirs.len(), 8);
    // linear Casimirs with real coefficients are their own tildes
    for g in &casimirs {
        assert_eq!(&integrals::tilde(g).unwrap(), g);
    }
    let fam = family_f1(&p, 1, &lambdas).unwrap();
    assert_eq!(fam.len(), 8 + 8 * 3);
    let pts = points(14, 10);
    assert!(involutivity_check(&fam, &p, &lambdas, &pts).unwrap());
    // all linear Casimirs vanish on the leaf, so their common kernel is the whole leaf
    assert!(!cr_lagrangian_check(&fam, &p, &pts[0]).unwrap());
}

/// `h_l = Σ ε_{ijkl} f_j g_k q_i` for the 14-dimensional nilpotent algebra.
fn d45_cubic_casimirs() -> Vec<MultiPoly> {
    let n = 14;
    let (q, f, g) = (|i: usize| 2 + i, |i: usize| 6 + i, |i: usize| 10 + i);
    let sign = |p: [usize; 4]| {
        let mut s = 1;
        for a in 0..4 {
            for b in a + 1..4 {
                if p[a] > p[b] {
                    s = -s;
                }
            }
        }
        s
    };
    (0..4)
        .map(|l| {
            let mut h = MultiPoly::zero(n);
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        let idx = [i, j, k, l];
                        if (0..4).any(|a| (a + 1..4).any(|b| idx[a] == idx[b])) {
                            continue;
                        }
                        let term = MultiPoly::z(n, f(j))
                            .mul(&MultiPoly::z(n, g(k)))
                            .unwrap()
                            .mul(&MultiPoly::z(n, q(i)))
                            .unwrap()
                            .scale(&Gq::from(sign(idx)));
                        h = h.add(&term);
                    }
                }
            }
            h
        })
        .collect()
}

#[test]
fn d45_cubic_family_is_cr_lagrangian() {
    let p = pair("d45");
    let cubic = d45_cubic_casimirs();
    let c = lie_poisson(&p.algebra);
    for h in &cubic {
        assert!(hamiltonian_field(&c, h).unwrap().is_zero());
    }
    let lambdas = lambda_schedule(5);
    let fam = family_from_casimirs(&cubic, 3, &lambdas).unwrap();
    let pts = points(14, 3);
    assert!(involutivity_check(&fam, &p, &lambdas, &pts).unwrap());
    for z in &pts {
        assert!(cr_lagrangian_check(&fam, &p, z).unwrap());
    }
}

#[test]
fn translation_family_is_involutive_for_both_fields() {
    let p = pair("so3");
    let a = pt(&[(1, 0), (2, 0), (0, 1)]);
    let fam = translation_family(&p.c, &a, 2, 4).unwrap();
    assert!(!fam.is_empty());
    let frozen = p.c.evaluate_at(&a).unwrap();
    let n = 3;
    // the constant field c(a)
    let mut ca = bihamil_core::poisson::BivectorField::zero(n, bihamil_core::poisson::VariableKind::Holomorphic);
    for i in 0..n {
        for j in i + 1..n {
            ca.add_component(i, j, &MultiPoly::constant(n, frozen[(i, j)].clone())).unwrap();
        }
    }
    let members: Vec<&MultiPoly> = fam.polys().collect();
    for f in &members {
        for g in &members {
            let b1 = bihamil_core::poisson::poisson_bracket(&p.c, f, g).unwrap();
            let b2 = bihamil_core::poisson::poisson_bracket(&ca, f, g).unwrap();
            assert!(b1.is_zero() && b2.is_zero());
        }
    }
    assert!(translation_family(&p.c, &pt(&[(0, 0); 3]), 2, 4).is_err());
}

#[test]
fn abelian_and_empty_cases() {
    let p = pair("sl2r");
    let fam = family_f1(&p, 1, &lambda_schedule(5)).unwrap();
    assert!(fam.is_empty());
    assert_eq!(fam.warnings.len(), 1);
    assert!(casimir_basis(&p, 0).is_err());
}

#[test]
fn cross_directions_are_rejected() {
    let p = pair("so3");
    let z = &points(3, 1)[0];
    let l = (Gq::from(1), Gq::i());
    assert!(orbits::on_cross(&l));
    assert!(!orbits::on_cross(&(Gq::from(1), Gq::zero())));
    assert!(orbits::k_numbers(&p, z, &[l]).is_err());
}
