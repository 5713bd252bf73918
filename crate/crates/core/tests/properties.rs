use bks_core::algebra::UPoly;
use bks_core::schwartz::{fourier, CoefficientFunction};
use bks_core::{MellinSymbol, ScalarQV};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = ScalarQV> {
    (-6i64..=6, -3i64..=3, -5i64..=5, 0u8..3).prop_map(|(a, b, k, d)| {
        let s = &ScalarQV::from_int(a) + &(&ScalarQV::from_int(b) * &ScalarQV::v_pow(k));
        if d == 0 {
            s
        } else {
            s.checked_div(&(&ScalarQV::one() + &ScalarQV::v_pow(d as i64))).unwrap()
        }
    })
}

fn laurent() -> impl Strategy<Value = (i64, Vec<ScalarQV>)> {
    (-3i64..=3, prop::collection::vec(scalar(), 1..5))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_canonical_string_round_trips(a in scalar()) {
        prop_assert_eq!(ScalarQV::parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn product_of_laurent_polynomials_is_cauchy((fa, ca) in laurent(), (fb, cb) in laurent()) {
        let p = &MellinSymbol::from_laurent(fa, ca.clone()) * &MellinSymbol::from_laurent(fb, cb.clone());
        let mut want = vec![ScalarQV::zero(); ca.len() + cb.len() - 1];
        for (i, x) in ca.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                want[i + j] = &want[i + j] + &(x * y);
            }
        }
        let upto = fa + fb + want.len() as i64 + 2;
        let got = if p.is_zero() { vec![] } else { p.laurent_expand(upto).unwrap() };
        for (k, w) in want.iter().enumerate() {
            let m = fa + fb + k as i64;
            let g = got.iter().find(|(e, _)| *e == m).map(|(_, c)| c.clone()).unwrap_or_else(ScalarQV::zero);
            prop_assert_eq!(&g, w);
        }
    }

    #[test]
    fn series_division_inverts_multiplication((fa, ca) in laurent(), k in 1usize..3, c in scalar()) {
        prop_assume!(!c.is_zero());
        let a = MellinSymbol::from_laurent(fa, ca);
        prop_assume!(!a.is_zero());
        let d = MellinSymbol::from_parts(0, UPoly::one(), UPoly::one_minus(c, k)).unwrap();
        let back = (&a * &d).checked_div(&d).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn fourier_is_linear(n in 1usize..=3, (fa, ca) in laurent(), (fb, cb) in laurent(), a in scalar(), b in scalar()) {
        let f = CoefficientFunction::finite(n, fa, ca).unwrap();
        let g = CoefficientFunction::finite(n, fb, cb).unwrap();
        let lhs = fourier(&CoefficientFunction::linear_combination(&a, &f, &b, &g).unwrap()).unwrap();
        let rhs = CoefficientFunction::linear_combination(&a, &fourier(&f).unwrap(), &b, &fourier(&g).unwrap()).unwrap();
        prop_assert!(lhs.same_function(&rhs));
    }

    #[test]
    fn finite_functions_survive_json(n in 1usize..=4, (fa, ca) in laurent()) {
        let f = CoefficientFunction::finite(n, fa, ca).unwrap();
        let text = f.to_json();
        let g = CoefficientFunction::from_json(&text).unwrap();
        prop_assert!(g.same_function(&f));
        prop_assert_eq!(g.to_json(), text);
    }
}
