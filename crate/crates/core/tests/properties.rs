use proptest::prelude::*;

use ncplane::group::{extract_cocycle, AlgebraElement, GroupElement};
use ncplane::parser::{format, parse};
use ncplane::symplectic::{bopp_shift, poisson_bracket, rational, standard_bracket, Observable, Rational};

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-16i64..=16, 1i64..=16).prop_map(|(n, d)| rational(n, d))
}

fn observable_strategy(max_degree: u32) -> impl Strategy<Value = Observable> {
    let term = (prop::collection::vec(0usize..4, 0..=max_degree as usize), 0u32..=2, 0u32..=1, rational_strategy());
    prop::collection::vec(term, 1..5).prop_map(|terms| {
        let mut f = Observable::zero();
        for (vars, t, h, c) in terms {
            let mut e = [0u32; 6];
            for v in vars {
                e[v] += 1;
            }
            e[4] = t;
            e[5] = h;
            f.add_term(e, c);
        }
        f
    })
}

fn element_strategy() -> impl Strategy<Value = AlgebraElement> {
    prop::array::uniform6(rational_strategy()).prop_map(AlgebraElement::from_array)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn format_parse_round_trip(f in observable_strategy(4)) {
        let text = format(&f);
        prop_assert_eq!(parse(&text).unwrap(), f);
    }

    #[test]
    fn formatting_is_canonical(f in observable_strategy(3), g in observable_strategy(3)) {
        // Equal polynomials format identically however they were built.
        let a = &f + &g;
        let b = &g + &f;
        prop_assert_eq!(format(&a), format(&b));
    }

    #[test]
    fn bracket_is_antisymmetric(f in observable_strategy(3), g in observable_strategy(3)) {
        prop_assert!((poisson_bracket(&f, &g) + poisson_bracket(&g, &f)).is_zero());
    }

    #[test]
    fn bopp_is_poisson_map(f in observable_strategy(3), g in observable_strategy(3)) {
        prop_assert_eq!(standard_bracket(&bopp_shift(&f), &bopp_shift(&g)), bopp_shift(&poisson_bracket(&f, &g)));
    }

    #[test]
    fn commutator_is_cocycle(e1 in element_strategy(), e2 in element_strategy()) {
        let z = extract_cocycle(&e1, &e2).unwrap();
        let k = GroupElement::exp(&e1).commutator(&GroupElement::exp(&e2));
        prop_assert!(k.a.iter().chain(&k.b).all(|x| *x == Rational::from_integer(0.into())));
        prop_assert_eq!(k.c, z.z1);
        prop_assert_eq!(k.d, z.z2);
    }

    #[test]
    fn arbitrary_text_never_panics(s in "[ -~]{0,40}") {
        let _ = parse(&s);
    }

    #[test]
    fn error_offsets_are_in_bounds(s in "[q1p2th+*/^() 0-9.-]{0,30}") {
        if let Err(e) = parse(&s) {
            prop_assert!(e.offset <= s.len());
        }
    }
}

#[test]
fn precedence() {
    let same = |a: &str, b: &str| assert_eq!(parse(a).unwrap(), parse(b).unwrap(), "{a} vs {b}");
    same("q1 + q2*p1", "q1 + (q2*p1)");
    same("-q1^2", "-(q1^2)");
    same("q1 - q2 - p1", "(q1 - q2) - p1");
    same("q1/2/3", "(q1/2)/3");
    same("2*q1^2*p1", "2*(q1^2)*p1");
    same("--q1", "q1");
    same("0.25*theta", "1/4*theta");
    assert_ne!(parse("(q1 + q2)^2").unwrap(), parse("q1 + q2^2").unwrap());
}
