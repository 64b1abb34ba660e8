mod common;

fn ok(name: &str, r: common::Outcome) {
    if let Err(e) = r {
        panic!("{name}: {e}");
    }
}

#[test]
fn weyl_relations() {
    ok("weyl relations", common::weyl_relations());
}

#[test]
fn apply_compatible() {
    ok("apply", common::apply_compatible());
}

#[test]
fn fourier_morphism() {
    ok("fourier", common::fourier_morphism());
}

#[test]
fn commutative_gb() {
    ok("commutative gb", common::commutative_gb());
}

#[test]
fn weyl_gb() {
    ok("weyl gb", common::weyl_gb());
}

#[test]
fn syzygy_sound() {
    ok("syzygy", common::syzygy_sound());
}

#[test]
fn approx_ann_sound() {
    ok("approx_ann", common::approx_ann_sound());
}

#[test]
fn b_function_fixtures() {
    ok("b-function", common::b_function_fixtures());
}

mod roundtrip {
    use pfano_core::parse::{names, parse_operator, parse_rational_function};
    use proptest::prelude::*;

    use super::common::{operator, rational_function};

    proptest! {
        #![proptest_config(ProptestConfig { cases: 1000, failure_persistence: None, ..ProptestConfig::default() })]

        #[test]
        fn operators_print_then_parse(p in operator(3, 2, 4)) {
            let v = names("x,y,z");
            let text = p.display(&v).to_string();
            prop_assert_eq!(parse_operator(&text, &v).unwrap(), p);
        }

        #[test]
        fn rational_functions_print_then_parse(f in rational_function(2)) {
            let v = names("x,y");
            let text = f.display(&v).to_string();
            prop_assert_eq!(parse_rational_function(&text, &v).unwrap(), f);
        }
    }

    #[test]
    fn report_generators_print_then_parse() {
        let r = pfano_core::pipeline::fano_period_system(2, 0, 1).unwrap();
        for g in &r.generators {
            let p = parse_operator(g, &r.variables).unwrap();
            assert_eq!(&p.display(&r.variables).to_string(), g);
        }
    }
}
