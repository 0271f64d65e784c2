mod common;

use common::*;
use dtm_core::*;
use proptest::prelude::*;

/// `sum_k sum_l V(k,l) W(m-k,n-l)`, the textbook Cauchy product.
fn conventional_product(v: &Spectrum2D, w: &Spectrum2D) -> Spectrum2D {
    Spectrum2D::from_fn(v.order(), |m, n| {
        let mut acc = Coefficient::zero();
        for k in 0..=m {
            for l in 0..=n {
                acc += v.get(k, l) * w.get(m - k, n - l);
            }
        }
        acc
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn addition_axioms((u, v, w) in spectrum_triple(8)) {
        let zero = Spectrum2D::zero(u.order());
        prop_assert_eq!(dt_add(&u, &v).unwrap(), dt_add(&v, &u).unwrap());
        prop_assert_eq!(
            dt_add(&dt_add(&u, &v).unwrap(), &w).unwrap(),
            dt_add(&u, &dt_add(&v, &w).unwrap()).unwrap()
        );
        prop_assert_eq!(dt_add(&u, &zero).unwrap(), u.clone());
        let neg = dt_scale(&Coefficient::from_integer(-1), &u);
        prop_assert!(dt_add(&u, &neg).unwrap().is_empty());
        prop_assert_eq!(dt_sub(&u, &v).unwrap(), dt_add(&u, &dt_scale(&Coefficient::from_integer(-1), &v)).unwrap());
    }

    #[test]
    fn scalar_axioms((u, v) in spectrum_pair(8), a in rational(), b in rational()) {
        prop_assert_eq!(dt_scale(&Coefficient::one(), &u), u.clone());
        prop_assert_eq!(dt_scale(&a, &dt_scale(&b, &u)), dt_scale(&(&a * &b), &u));
        prop_assert_eq!(
            dt_scale(&a, &dt_add(&u, &v).unwrap()),
            dt_add(&dt_scale(&a, &u), &dt_scale(&a, &v)).unwrap()
        );
        prop_assert_eq!(
            dt_scale(&(&a + &b), &u),
            dt_add(&dt_scale(&a, &u), &dt_scale(&b, &u)).unwrap()
        );
    }

    #[test]
    fn product_is_commutative((u, v) in spectrum_pair(8)) {
        prop_assert_eq!(dt_product(&u, &v).unwrap(), dt_product(&v, &u).unwrap());
    }

    #[test]
    fn product_is_associative_and_distributive((u, v, w) in spectrum_triple(8)) {
        let uv = dt_product(&u, &v).unwrap();
        prop_assert_eq!(dt_product(&uv, &w).unwrap(), dt_product(&u, &dt_product(&v, &w).unwrap()).unwrap());
        prop_assert_eq!(
            dt_product(&u, &dt_add(&v, &w).unwrap()).unwrap(),
            dt_add(&uv, &dt_product(&u, &w).unwrap()).unwrap()
        );
    }

    #[test]
    fn product_index_patterns_agree((u, v) in spectrum_pair(8)) {
        prop_assert_eq!(dt_product(&u, &v).unwrap(), conventional_product(&u, &v));
    }

    #[test]
    fn derivatives_compose(v in spectrum(8), r in 0usize..3, s in 0usize..3) {
        prop_assume!(r + s < v.order());
        let once = dt_derivative(&dt_derivative(&v, r, s).unwrap(), 1, 0).unwrap();
        prop_assert_eq!(once, dt_derivative(&v, r + 1, s).unwrap());
    }

    #[test]
    fn exp_splits_constant_term(v in spectrum(5), a in nonzero_rational()) {
        let out = dt_exp(&v, &a);
        prop_assert_eq!(&out.prefactor_exponent, &(&a * &v.get(0, 0)));
        prop_assert_eq!(out.spectrum.get(0, 0), Coefficient::one());
        prop_assert_eq!(out.is_exact(), v.get(0, 0).is_zero());
    }

    #[test]
    fn json_round_trip(v in spectrum(8)) {
        let text = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<Spectrum2D>(&text).unwrap(), v);
    }
}

#[test]
fn mismatched_orders_are_rejected() {
    let a = Spectrum2D::zero(3);
    let b = Spectrum2D::zero(4);
    assert!(matches!(
        dt_add(&a, &b),
        Err(DtmError::OrderMismatch { left: 3, right: 4 })
    ));
    assert!(dt_product(&a, &b).is_err());
}

#[test]
fn exp_examples() {
    let x = dt_monomial(1, 0, 4).unwrap();
    let ex = dt_exp(&x, &Coefficient::one()).spectrum;
    for m in 0..=4 {
        assert_eq!(ex.get(m, 0), Coefficient::inv_factorial(m));
    }
    let xy = dt_add(&dt_monomial(1, 0, 3).unwrap(), &dt_monomial(0, 1, 3).unwrap()).unwrap();
    let e2 = dt_exp(&xy, &Coefficient::from_integer(2)).spectrum;
    for (m, n, c) in e2.iter() {
        let expected = Coefficient::from_integer(2).pow((m + n) as i32)
            * Coefficient::inv_factorial(m)
            * Coefficient::inv_factorial(n);
        assert_eq!(c, &expected);
    }
    assert_eq!(e2.len(), 10);
}
