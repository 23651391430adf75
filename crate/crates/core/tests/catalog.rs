use ballmaps_core::{
    check_int, contract, dij, dual, enumerate_catalog, hyperbolic_contractions, is_cocompact, standard_catalog,
    verify_lcd_bound, ExtendedValue, IntegralityMode, WeightSystem,
};

#[test]
fn counts_at_the_standard_bounds() {
    let cat = standard_catalog();
    let count = |k: usize| cat.iter().filter(|e| e.k() == k).count();
    assert_eq!(count(4), 2351);
    let many: Vec<usize> = (5..=12).map(count).collect();
    assert_eq!(many, vec![54, 18, 9, 6, 3, 2, 1, 1]);
    assert_eq!(many.iter().sum::<usize>(), 94);
    assert_eq!(cat.iter().filter(|e| e.k() >= 5).map(|e| e.lcd()).max(), Some(42));
}

#[test]
fn lcd_bound_holds_past_the_bound() {
    for k in 5..=12 {
        let report = verify_lcd_bound(&enumerate_catalog(k, 60, IntegralityMode::HalfInt), 42);
        assert!(report.holds(), "k={k}: {:?}", report.violations);
    }
}

#[test]
fn integral_systems_have_integral_weights_everywhere() {
    for entry in standard_catalog().iter().filter(|e| e.satisfies_int) {
        let mu = &entry.weights;
        for i in 0..mu.len() {
            for j in i + 1..mu.len() {
                let d = dij(mu, i, j).unwrap();
                assert!(d.is_integer() || d.is_infinite(), "{mu} ({i},{j}) -> {d}");
            }
        }
    }
}

#[test]
fn contractions_of_integral_systems_are_integral() {
    let cat = standard_catalog();
    let int: std::collections::HashSet<WeightSystem> =
        cat.iter().filter(|e| e.satisfies_int).map(|e| e.weights.clone()).collect();
    let mut checked = 0;
    for entry in cat.iter().filter(|e| e.satisfies_int) {
        for (subset, child) in hyperbolic_contractions(&entry.weights) {
            assert!(check_int(&child), "{} / {:?}", entry.weights, subset);
            assert_eq!(entry.lcd() % child.lcd(), 0);
            assert!(int.contains(&child.sorted_desc()));
            checked += 1;
        }
    }
    // exhaustive over the catalog: every INT entry and every hyperbolic subset
    assert!(checked > 400, "only {checked} contractions");
}

#[test]
fn duality_on_four_points() {
    for entry in enumerate_catalog(4, 84, IntegralityMode::HalfInt) {
        let mu = &entry.weights;
        let nu = dual(mu).unwrap();
        assert_eq!(&dual(&nu).unwrap(), mu);
        assert_eq!(is_cocompact(&nu), is_cocompact(mu));
        for i in 0..4 {
            for j in i + 1..4 {
                assert_eq!(dij(&nu, i, j).unwrap(), dij(mu, i, j).unwrap().negate());
            }
        }
    }
}

#[test]
fn contraction_rejects_non_hyperbolic_subsets() {
    let mu = WeightSystem::new(&[3, 3, 3, 3, 3, 1], 8).unwrap();
    assert!(contract(&mu, &[0, 1, 2]).is_err());
    assert_eq!(dij(&mu, 0, 5).unwrap(), ExtendedValue::Finite(2.into()));
}
