//! Property tests. Coefficients are drawn from small integers so ring
//! identities hold exactly in double precision; the recursion test compares
//! against a from-scratch reimplementation bit for bit.

use proptest::prelude::*;

use kgaim::aim::aim_iterate;
use kgaim::laurent::LaurentPoly;
use kgaim::model::{build_radial, PotentialParams, ProblemSpec};
use kgaim::specfun::{gamma, kummer_1f1, pochhammer};

fn small_poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((-4i64..=4, -8i64..=8), 0..6)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(e, c)| (e, c as f64))))
}

proptest! {
    #[test]
    fn addition_commutes_and_zero_is_identity(a in small_poly(), b in small_poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn multiplication_distributes(a in small_poly(), b in small_poly(), c in small_poly()) {
        let lhs = &a * &(&b + &c);
        let rhs = &(&a * &b) + &(&a * &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_rule_is_exact(a in small_poly(), b in small_poly()) {
        let lhs = (&a * &b).diff();
        let rhs = &(&a.diff() * &b) + &(&a * &b.diff());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn recursion_agrees_with_naive_reimplementation(l0 in small_poly(), s0 in small_poly()) {
        let n_max = 5usize;
        let session = match aim_iterate(&l0, &s0, n_max) {
            Ok(s) => s,
            Err(_) => return Ok(()), // overflow on extreme draws is fine
        };
        // independent straightforward recomputation
        let (mut lam, mut s) = (l0.clone(), s0.clone());
        for n in 1..=n_max {
            let lam_next = &(&lam.diff() + &s) + &(&l0 * &lam);
            let s_next = &s.diff() + &(&s0 * &lam);
            prop_assert_eq!(session.lambda(n), &lam_next);
            prop_assert_eq!(session.s(n), &s_next);
            let delta = &(&lam_next * &s) - &(&lam * &s_next);
            prop_assert_eq!(session.delta(n), &delta);
            lam = lam_next;
            s = s_next;
        }
    }

    /// Exponent support of δₙ grows linearly with n for the coefficient
    /// shapes the radial problems produce (1/r² poles at worst).
    #[test]
    fn delta_support_grows_linearly(
        c0 in -3.0f64..3.0, c1 in -3.0f64..3.0, c2 in -3.0f64..0.0,
        g0 in -3.0f64..3.0, g1 in -3.0f64..3.0,
    ) {
        let l0 = LaurentPoly::from_terms([(-2, c0), (-1, c1), (0, c2)]);
        let s0 = LaurentPoly::from_terms([(-2, g0), (-1, g1)]);
        let n_max = 8usize;
        let session = match aim_iterate(&l0, &s0, n_max) {
            Ok(s) => s,
            Err(_) => return Ok(()),
        };
        for n in 0..=n_max {
            let span = session.delta(n).exp_span();
            prop_assert!(
                span <= 4 * (n as i64 + 1) + 4,
                "delta_{} support width {} grew superlinearly", n, span
            );
        }
    }

    #[test]
    fn pochhammer_gamma_identity(a in 0.05f64..25.0, k in 0u32..10) {
        let lhs = pochhammer(a, k) * gamma(a);
        let rhs = gamma(a + k as f64);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * rhs.abs());
    }

    #[test]
    fn kummer_is_one_at_origin(n in 0u32..12, b in 0.1f64..20.0) {
        prop_assert_eq!(kummer_1f1(-(n as f64), b, 0.0).unwrap(), 1.0);
    }

    /// Spectra depend on (d, l) only through k: raising l by one equals
    /// raising d by two, exactly.
    #[test]
    fn radial_equation_k_reduction(
        d in 1u32..6, l in 0u32..3,
        s1 in -1.0f64..1.0, v1 in -1.0f64..1.0,
        s2 in -0.6f64..0.6, v2 in -0.6f64..0.6,
        e in -0.9f64..0.9,
    ) {
        let p = PotentialParams { s1, v1, s2, v2 };
        let lo = build_radial(&ProblemSpec::new(1.0, d, l + 1).unwrap(), &p, e).unwrap();
        let hi = build_radial(&ProblemSpec::new(1.0, d + 2, l).unwrap(), &p, e).unwrap();
        prop_assert_eq!(lo, hi);
    }
}
