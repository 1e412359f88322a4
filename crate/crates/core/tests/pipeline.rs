use mzero_core::interior::{interior_characteristic, InteriorFormula, InteriorTable};
use mzero_core::legendre::{compactified_characteristic, compactified_component};
use mzero_core::schema::{from_json, to_json, Basis};
use mzero_core::symfunc::poincare_from;
use mzero_core::trees::{census, epoly_interior};
use mzero_core::{Error, TPoly};
use proptest::prelude::*;

#[test]
fn single_components_match_the_table() {
    let table = compactified_characteristic(7).unwrap();
    for (&(m, n), c) in table.components() {
        let single = compactified_component(m, n).unwrap();
        assert_eq!(single, c.with_truncation(single.truncation()), "({m},{n})");
    }
}

#[test]
fn census_agrees_with_pipeline() {
    let table = compactified_characteristic(6).unwrap();
    for &(m, n) in table.components().keys() {
        let c = census(m, n).unwrap();
        let expect = TPoly::from_pairs(
            c.poincare.iter().enumerate().map(|(e, &v)| (e as i32, mzero_core::tpoly::int(v))),
        );
        assert_eq!(table.poincare(m, n).unwrap(), expect, "({m},{n})");
        // the top stratum is the open part: one tree without edges
        assert_eq!(c.strata_by_codim[0], 1);
    }
}

#[test]
fn euler_characteristic_matches_point_count() {
    // signed Poincaré polynomial at t = 1 and the point count at q = 1 both
    // give the Euler characteristic
    let one = mzero_core::tpoly::int(1);
    let table = InteriorTable::new(7, InteriorFormula::Printed).unwrap();
    for (&(m, n), c) in table.components() {
        let chi = poincare_from(c, m, n).eval(&one);
        assert_eq!(chi, epoly_interior(m, n).unwrap().eval(&one), "({m},{n})");
    }
}

#[test]
fn errors_are_typed() {
    assert!(matches!(compactified_component(1, 4), Err(Error::Range(_))));
    assert!(matches!(compactified_characteristic(2), Err(Error::Range(_))));
    let table = compactified_characteristic(4).unwrap();
    assert!(matches!(table.get(3, 2), Err(Error::MissingComponent(3, 2))));
    assert!(table.get(1, 3).unwrap().is_zero());
    assert!(from_json("{}").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn formulas_share_poincare_and_serialize(m in 2usize..6, n in 0usize..4) {
        prop_assume!(m + n >= 3);
        let printed = interior_characteristic(m, n, InteriorFormula::Printed).unwrap();
        let geometric = interior_characteristic(m, n, InteriorFormula::Geometric).unwrap();
        prop_assert_eq!(poincare_from(&printed, m, n), poincare_from(&geometric, m, n));
        for basis in [Basis::Schur, Basis::PowerSum] {
            prop_assert_eq!(from_json(&to_json(&geometric, basis)).unwrap(), geometric.clone());
        }
    }

    #[test]
    fn compactified_is_even_palindromic(m in 2usize..6, n in 0usize..4) {
        prop_assume!(m + n >= 3);
        let p = poincare_from(&compactified_component(m, n).unwrap(), m, n);
        let top = 2 * (m + n) as i32 - 6;
        for (e, c) in p.terms() {
            prop_assert!(e % 2 == 0);
            prop_assert_eq!(p.coeff(top - e), c.clone());
        }
    }
}
