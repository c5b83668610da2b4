use proptest::prelude::*;

use qcalc_core::gauge::{self, GaugeTransformation};
use qcalc_core::parse::{parse_form, parse_scalar, parse_uq};
use qcalc_core::random::{nonzero_polynomial, pbw_element, polynomial, rational, rng};
use qcalc_core::rn::CalculusSpec;
use qcalc_core::uqsu2::{antipode, counit, fundamental_rep};
use qcalc_core::{Scalar, Var};

const FIELD: [Var; 3] = [Var::X, Var::Y, Var::Lambda];

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn scalar_field_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b, c) = (rational(&mut r, &FIELD, 3), rational(&mut r, &FIELD, 3), rational(&mut r, &FIELD, 2));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a / &b) * &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_print_parse_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let s = &rational(&mut r, &FIELD, 3) * &qcalc_core::random::q_coefficient(&mut r);
        prop_assert_eq!(parse_scalar(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn pbw_print_parse_round_trip(seed in any::<u64>()) {
        let u = pbw_element(&mut rng(seed), 3);
        prop_assert_eq!(parse_uq(&u.to_string()).unwrap(), u);
    }

    #[test]
    fn counit_and_representation_are_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (u, v) = (pbw_element(&mut r, 2), pbw_element(&mut r, 2));
        let uv = u.multiply(&v);
        prop_assert_eq!(counit(&uv), &counit(&u) * &counit(&v));
        prop_assert_eq!(fundamental_rep(&uv), fundamental_rep(&u).mul(&fundamental_rep(&v)));
    }

    #[test]
    fn antipode_reverses_products(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (u, v) = (pbw_element(&mut r, 2), pbw_element(&mut r, 2));
        prop_assert_eq!(antipode(&u.multiply(&v)), antipode(&v).multiply(&antipode(&u)));
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn exterior_derivative_is_a_derivation(seed in any::<u64>(), which in 0usize..3) {
        let spec = CalculusSpec::named(["jet:2", "fd:1", "fd:2"][which]).unwrap();
        let vars: &[Var] = if spec.name == "fd:2" { &[Var::X, Var::Y] } else { &[Var::X] };
        let mut r = rng(seed);
        let (f, g) = (polynomial(&mut r, vars, 3), polynomial(&mut r, vars, 3));
        let lhs = spec.d0(&(&f * &g));
        let rhs = spec.d0(&f).right_mult(&g).add(&spec.left_mult(&f, &spec.d0(&g)).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(spec.d(&spec.d0(&f)).unwrap().is_zero());
    }

    #[test]
    fn bimodule_law(seed in any::<u64>(), which in 0usize..3) {
        let spec = CalculusSpec::named(["jet:3", "fd:1", "fd:2"][which]).unwrap();
        let vars: &[Var] = if spec.name == "fd:2" { &[Var::X, Var::Y] } else { &[Var::X] };
        let mut r = rng(seed);
        let (f, g) = (polynomial(&mut r, vars, 2), polynomial(&mut r, vars, 2));
        let theta = parse_form(&spec, &spec.forms[seed as usize % spec.dimension()]).unwrap();
        let lhs = spec.left_mult(&(&f * &g), &theta).unwrap();
        let rhs = spec.left_mult(&f, &spec.left_mult(&g, &theta).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn curvature_is_gauge_covariant(seed in any::<u64>(), which in 0usize..2) {
        let spec = CalculusSpec::named(["jet:2", "fd:1"][which]).unwrap();
        let mut r = rng(seed);
        let alpha: Vec<Scalar> = (0..spec.dimension()).map(|_| rational(&mut r, &[Var::X], 2)).collect();
        let alpha = gauge::gauge_field(&spec, alpha).unwrap();
        let gamma = GaugeTransformation::new(nonzero_polynomial(&mut r, &[Var::X], 2)).unwrap();
        let lhs = gauge::curvature(&spec, &gauge::gauge_transform(&spec, &alpha, &gamma).unwrap()).unwrap();
        let rhs = gauge::conjugate(&spec, &gauge::curvature(&spec, &alpha).unwrap(), &gamma).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
