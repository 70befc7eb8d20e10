use proptest::prelude::*;

use coxwalk::closedform::{self, lemma_bd_v, DihedralOrder};
use coxwalk::elements::{
    generators, identity, multiply, reflections_of, Family, Gens, GroupElement, GroupSpec,
    IndexPair,
};
use coxwalk::exact::operators::{apply_q_bd, bd_recurrence_step};
use coxwalk::exact::{apply_q_a, evolve_pairtable, AntisymMatrix, DSpaceFunction, PairKind};
use coxwalk::lengths::{statistic, CoxeterLength, Measure};
use coxwalk::montecarlo::simulate;
use coxwalk::rational::{frac, int};
use coxwalk::Rational;

fn spec_strategy() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (2u64..=7).prop_map(|n| GroupSpec::a(n).unwrap()),
        (1u64..=5).prop_map(|n| GroupSpec::b(n).unwrap()),
        (2u64..=5).prop_map(|n| GroupSpec::d(n).unwrap()),
        (2u64..=15).prop_map(|m| GroupSpec::i2(m).unwrap()),
    ]
}

/// The product of the reflections picked by `word`.
fn element(spec: &GroupSpec, word: &[usize]) -> GroupElement {
    let refl = reflections_of(spec).unwrap();
    word.iter().fold(identity(spec).unwrap(), |w, &k| {
        multiply(&w, &refl[k % refl.len()]).unwrap()
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-200i64..=200, 1i64..=30).prop_map(|(p, q)| frac(p, q))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_stay_in_the_group_and_associate(
        spec in spec_strategy(),
        a in prop::collection::vec(0usize..100, 0..8),
        b in prop::collection::vec(0usize..100, 0..8),
        c in prop::collection::vec(0usize..100, 0..8),
    ) {
        let (x, y, z) = (element(&spec, &a), element(&spec, &b), element(&spec, &c));
        prop_assert!(spec.contains(&x));
        let left = multiply(&multiply(&x, &y).unwrap(), &z).unwrap();
        let right = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn simple_reflections_change_length_by_one(
        spec in spec_strategy(),
        word in prop::collection::vec(0usize..100, 0..10),
    ) {
        let w = element(&spec, &word);
        let len = CoxeterLength::new(&spec).unwrap();
        let lw = len.length(&w).unwrap() as i64;
        for s in generators(&spec, Gens::Simple).unwrap() {
            let ls = len.length(&multiply(&w, &s).unwrap()).unwrap() as i64;
            prop_assert_eq!((ls - lw).abs(), 1);
        }
        prop_assert!(lw as u64 <= spec.max_length().unwrap());
    }

    #[test]
    fn absolute_length_is_bounded_by_length_with_equal_parity(
        spec in spec_strategy(),
        word in prop::collection::vec(0usize..100, 0..10),
    ) {
        let w = element(&spec, &word);
        let len = statistic(&spec, Measure::Length).unwrap()(&w);
        let abs = statistic(&spec, Measure::AbsLength).unwrap()(&w);
        prop_assert!(abs <= len);
        prop_assert!(abs <= word.len() as u64);
        prop_assert_eq!(abs % 2, len % 2);
        prop_assert_eq!(len % 2, word.len() as u64 % 2);
    }

    #[test]
    fn lemma_matches_recurrence(n in 2u64..=6, x in rational(), t in 0u64..=6) {
        let mut v = DSpaceFunction::initial(n as usize);
        for _ in 0..t {
            v = bd_recurrence_step(&v, &x);
        }
        for p in IndexPair::all(n) {
            let (i, j) = (p.i as i64, p.j as i64);
            prop_assert_eq!(lemma_bd_v(n, &x, t, i, j).unwrap(), v.get(i, j).unwrap().clone());
        }
    }

    #[test]
    fn q_squared_on_antisymmetric_matrices(n in 1usize..=7, seed in prop::collection::vec(rational(), 28)) {
        let v = AntisymMatrix::from_upper(n, |i, j| seed[(i * 7 + j) % seed.len()].clone());
        let qv = apply_q_a(&v);
        prop_assert!(qv.is_antisymmetric());
        prop_assert_eq!(apply_q_a(&qv), &int(n as i64) * &qv);
    }

    #[test]
    fn q_squared_on_d_space(n in 1usize..=5, seed in prop::collection::vec(rational(), 40)) {
        let v = DSpaceFunction::from_fn(n, |i, j| seed[((i + 7) * 13 + j + 7) as usize % seed.len()].clone());
        let qv = apply_q_bd(&v);
        prop_assert!(qv.satisfies_symmetries());
        prop_assert_eq!(apply_q_bd(&qv), qv.scale(&int(2 * n as i64 - 2)));
    }

    #[test]
    fn pair_tables_are_probabilities(family in prop::sample::select(vec![Family::A, Family::B, Family::D]), n in 2u64..=12, t in 0u64..=12) {
        let table = evolve_pairtable(family, n, t).unwrap();
        prop_assert!(table.check_invariants());
        prop_assert!(table.to_kind(PairKind::V).unwrap().check_invariants());
        let expected = match family {
            Family::A => closedform::expected_length_a_t(n, t),
            Family::B => closedform::expected_length_b_t(n, t),
            _ => closedform::expected_length_d_t(n, t),
        }
        .unwrap();
        prop_assert_eq!(table.expected_length().unwrap(), expected);
    }

    #[test]
    fn closed_forms_stay_in_range(spec in spec_strategy(), t in 0u64..=60) {
        let value = closedform::closed_form(&spec, Gens::AllReflections, Measure::Length, t, closedform::Formula::Auto)
            .unwrap()
            .value;
        let q = value.exact().unwrap();
        prop_assert!(closedform::within_bounds(&spec, Measure::Length, q));
    }

    #[test]
    fn troili_finite_agrees_with_infinite_before_wraparound(m in 2u64..=30, t in 0u64..=40) {
        // a walk of t < m steps cannot tell I2(m) from I2(∞) by length
        prop_assume!(t < m);
        prop_assert_eq!(
            closedform::expected_length_i2_s_troili(DihedralOrder::Finite(m), t).unwrap(),
            closedform::expected_length_i2_s_troili(DihedralOrder::Infinite, t).unwrap()
        );
    }

    #[test]
    fn simulation_depends_only_on_seed(spec in spec_strategy(), t in 0u64..=6, seed in any::<u64>()) {
        let a = simulate(&spec, Gens::AllReflections, Measure::Length, t, 200, seed).unwrap();
        let b = simulate(&spec, Gens::AllReflections, Measure::Length, t, 200, seed).unwrap();
        prop_assert_eq!(a, b);
    }
}
