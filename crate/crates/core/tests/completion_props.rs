//! Structural invariants of the completed functors.

mod common;

use std::sync::OnceLock;

use ccoh::abelian::groups_isomorphic;
use ccoh::completion::{trivial_argument, Construction, Context};
use ccoh::module::{direct_sum, CoefficientRing, StandardModule};
use common::*;
use proptest::prelude::*;

fn ctx() -> &'static Context {
    static CTX: OnceLock<Context> = OnceLock::new();
    CTX.get_or_init(Context::default)
}

const GROUPS: [&str; 5] = ["C2", "C3", "C4", "V4", "S3"];

fn coeff(i: usize) -> StandardModule {
    match i {
        0 => StandardModule::Trivial,
        1 => StandardModule::TrivialMod(2),
        2 => StandardModule::AugmentationIdeal,
        _ => StandardModule::Free(1),
    }
}

fn kind(i: usize) -> Construction {
    Construction::basic().into_iter().nth(i % Construction::basic().len()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn additive_in_the_coefficients(g in 0..5usize, i in 0..4usize, j in 0..4usize, n in -2i64..=2, k in 0..4usize) {
        let g = group(GROUPS[g]);
        let (b1, b2) = (module(&g, CoefficientRing::Integers, coeff(i)), module(&g, CoefficientRing::Integers, coeff(j)));
        let sum = direct_sum(&b1, &b2).unwrap();
        let z = trivial_argument(&b1).unwrap();
        let c = kind(k);
        let whole = ctx().complete(&c, &z, &sum, n).unwrap().value;
        let parts = ctx().complete(&c, &z, &b1, n).unwrap().value.direct_sum(&ctx().complete(&c, &z, &b2, n).unwrap().value);
        prop_assert!(groups_isomorphic(&whole, &parts), "{} vs {}", whole, parts);
    }

    #[test]
    fn cyclic_groups_are_two_periodic(m in 2..=4usize, i in 0..4usize, n in -3i64..=1, k in 0..4usize) {
        let g = group(&format!("C{m}"));
        let b = module(&g, CoefficientRing::Integers, coeff(i));
        let z = trivial_argument(&b).unwrap();
        let c = kind(k);
        let x = ctx().complete(&c, &z, &b, n).unwrap().value;
        let y = ctx().complete(&c, &z, &b, n + 2).unwrap().value;
        prop_assert!(groups_isomorphic(&x, &y));
    }

    #[test]
    fn annihilated_by_the_group_order(g in 0..5usize, i in 0..4usize, n in -2i64..=2) {
        let g = group(GROUPS[g]);
        let b = module(&g, CoefficientRing::Integers, coeff(i));
        let z = trivial_argument(&b).unwrap();
        let v = ctx().complete(&Construction::basic()[0], &z, &b, n).unwrap().value;
        prop_assert!(v.is_finite());
        let order = ccoh::Int::from(g.order() as u64);
        prop_assert!(v.torsion().iter().all(|t| (&order % t) == ccoh::Int::from(0)));
    }
}
