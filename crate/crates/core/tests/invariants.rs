//! Property tests over random series, jets and points.

use automorph_core::algebra::Triple;
use automorph_core::dynamics::{jet_extend, residual_first_order, transform_residual, MapKind, SystemSpec};
use automorph_core::dynamics::{integrate, Path};
use automorph_core::series::{Exponent, PuiseuxSeries, Rational, Sign};
use automorph_core::theorem1::{forward_map, roundtrip_error, BranchChoice};
use automorph_core::theorem2::{compute_z_pair, cubic_roots, forward_map32, inverse_map32, triple0_32, ZConvention};
use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;

const ORDER: i64 = 8;

fn series() -> impl Strategy<Value = PuiseuxSeries> {
    prop::collection::vec((0i64..4 * ORDER, -20i64..=20, 1i64..=6), 0..8).prop_map(|terms| {
        PuiseuxSeries::from_terms(
            terms
                .into_iter()
                .map(|(e, n, d)| (Exponent::from_quarters(e), Rational::new(BigInt::from(n), BigInt::from(d)))),
            Exponent::integer(ORDER),
        )
    })
}

fn point() -> impl Strategy<Value = Complex64> {
    (-1.5f64..1.5, -1.5f64..1.5).prop_map(|(re, im)| Complex64::new(re, im))
}

fn exact_eq(a: &PuiseuxSeries, b: &PuiseuxSeries) -> bool {
    matches!(a.eq_to_order(b, Exponent::integer(ORDER)), Ok(None))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert!(exact_eq(&(&a + &b), &(&b + &a)));
        prop_assert!(exact_eq(&(&a * &b), &(&b * &a)));
        prop_assert!(exact_eq(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        prop_assert!(exact_eq(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        prop_assert!(exact_eq(&(&a - &a), &PuiseuxSeries::zero(Exponent::integer(ORDER))));
    }

    #[test]
    fn derivation_is_leibniz(a in series(), b in series()) {
        let lhs = (&a * &b).derive();
        let rhs = &(&a * &b.derive()) + &(&b * &a.derive());
        prop_assert!(exact_eq(&lhs, &rhs));
    }

    #[test]
    fn units_invert(a in series(), lead in 1i64..9) {
        let u = &PuiseuxSeries::constant(Rational::from_integer(BigInt::from(lead)), Exponent::integer(ORDER)) + &a.truncate(Exponent::integer(ORDER));
        // keep the constant term nonzero
        prop_assume!(u.coeff(Exponent::ZERO) != Rational::from_integer(BigInt::from(0)));
        let inv = u.inverse().unwrap();
        let prod = &u * &inv;
        prop_assert!(matches!(prod.eq_to_order(&PuiseuxSeries::one(prod.trunc_order()), prod.trunc_order()), Ok(None)));
    }

    #[test]
    fn theorem1_jets_certify_on_every_branch(p in point(), q in point(), r in point()) {
        let jets = jet_extend::<5>(&SystemSpec::Ramanujan, &[p, q, r]);
        for b in BranchChoice::all() {
            if let Ok(img) = forward_map(&jets[0], &jets[1], &jets[2], b) {
                for t in [img.t2, img.t3, img.t0] {
                    let u_small = img.uv.u.taylor()[0].norm() < 1e-3;
                    let res = residual_first_order(&SystemSpec::Ramanujan, &[t.p, t.q, t.r]);
                    prop_assert!(u_small || res < 1e-8, "{} residual {res}", b.label());
                }
            }
        }
    }

    #[test]
    fn theorem1_roundtrip(p in point(), q in point(), r in point()) {
        let x = Triple::new(p, q, r);
        prop_assume!((r * r - q * q * q).norm() > 1e-3);
        let (err, _) = roundtrip_error(&x, BranchChoice::principal()).unwrap();
        prop_assert!(err < 1e-9, "{err}");
    }

    #[test]
    fn theorem2_sign_swap_and_inverse(p in point(), q in point(), r in point()) {
        prop_assume!(q.norm() > 0.05);
        let x = Triple::new(p, q, r);
        let plus = compute_z_pair(&q, &r, ZConvention::Proof, Sign::Plus).and_then(|z| forward_map32(&p, &q, &r, &z)).unwrap();
        let minus = compute_z_pair(&q, &r, ZConvention::Proof, Sign::Minus).and_then(|z| forward_map32(&p, &q, &r, &z)).unwrap();
        prop_assert!(plus[0].relative_distance(&minus[1]) < 1e-13);
        prop_assert!(plus[2].relative_distance(&minus[2]) == 0.0);
        let t0 = triple0_32(&p, &q, &r);
        let best = (0..3)
            .filter_map(|k| inverse_map32(&t0.p, &t0.q, &t0.r, k).ok())
            .map(|b| b.relative_distance(&x))
            .fold(f64::INFINITY, f64::min);
        prop_assert!(best < 1e-8, "{best}");
    }

    #[test]
    fn cubic_roots_are_sound(q0 in point(), r0 in point()) {
        prop_assert!(cubic_roots(q0, r0).max_relative_residual() < 1e-12);
    }
}

#[test]
fn theorem2_inverse_roots_certify_along_a_trajectory() {
    let y0 = [Complex64::new(0.3, 0.1), Complex64::new(1.2, 0.3), Complex64::new(0.9, -0.2)];
    let tr = integrate(&SystemSpec::nde2(), y0, Path::new(Complex64::new(0.0, 0.0), Complex64::new(0.2, 0.0)), 1e-10, 4)
        .unwrap();
    for k in 0..3 {
        let res = transform_residual(MapKind::Theorem2Inverse(k), &tr);
        assert_eq!(res.evaluated, 4);
        assert!(res.max() < 1e-10, "root {k}: {:?}", res.per_triple);
    }
}
