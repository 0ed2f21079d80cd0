use num_bigint::BigInt;
use takiff_core::invariants::{commutant_dim, gl_commutant_formula, it_verdict, phi_image_dim, Algebra};
use takiff_core::Limits;

#[test]
fn gl_commutant_matches_specht_sums() {
    let lim = Limits::default();
    for n in 2..=3 {
        for r in 1..=4 {
            let c = commutant_dim(n, r, Algebra::Gl, &lim).unwrap();
            assert_eq!(c.odd, 0);
            assert_eq!(BigInt::from(c.total()), gl_commutant_formula(n, r), "n={n} r={r}");
        }
    }
}

#[test]
fn permutation_image_is_inside_commutant() {
    let lim = Limits::default();
    for (n, r) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3)] {
        let image = phi_image_dim(n, r, &lim).unwrap();
        let c = commutant_dim(n, r, Algebra::G, &lim).unwrap();
        assert!(image <= c.total(), "n={n} r={r}");
    }
}

#[test]
fn verdicts_respect_known_cases() {
    let lim = Limits::default();
    for (n, r) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3)] {
        let v = it_verdict(n, r, &lim).unwrap();
        assert!(v.violations.is_empty(), "{v:?}");
    }
}
