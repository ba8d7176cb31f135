use bandedge::{complete_k, Family, Modulus, PotentialSpec};
use proptest::prelude::*;

fn spec(family: Family, j: i64, m: f64) -> PotentialSpec {
    PotentialSpec::new(family, j, m).unwrap()
}

fn family() -> impl Strategy<Value = Family> {
    prop_oneof![Just(Family::Lame), Just(Family::AssociatedLame)]
}

#[test]
fn examples() {
    let k = complete_k(Modulus::new(0.5).unwrap());
    assert_eq!(spec(Family::Lame, 2, 0.5).evaluate(0.0).unwrap(), 0.0);
    assert!((spec(Family::Lame, 2, 0.5).evaluate(k).unwrap() - 3.0).abs() < 1e-12);
    assert!((spec(Family::AssociatedLame, 1, 0.5).evaluate(0.0).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn validation() {
    assert_eq!(
        PotentialSpec::new(Family::Lame, 0, 0.5)
            .unwrap_err()
            .to_string(),
        "j must be ≥ 1"
    );
    assert!(PotentialSpec::new(Family::Lame, -2, 0.5).is_err());
    for m in [0.0, 1.0, -0.5, 1.5, f64::NAN] {
        assert!(
            PotentialSpec::new(Family::AssociatedLame, 1, m).is_err(),
            "m = {m}"
        );
    }
}

#[test]
fn susy_offsets() {
    let lame = spec(Family::Lame, 2, 0.5).susy_offset();
    assert!(lame.published);
    assert!((lame.value - (-3.0 + 2.0 * 0.75_f64.sqrt())).abs() < 1e-15);
    assert!((lame.value + 1.267_949_192_431_122_7).abs() < 1e-12);

    let assoc = spec(Family::AssociatedLame, 1, 0.5).susy_offset();
    assert!(assoc.published);
    assert!((assoc.value + 1.085_786_437_626_905).abs() < 1e-12);

    let none = spec(Family::Lame, 3, 0.5).susy_offset();
    assert!(!none.published);
    assert_eq!(none.value, 0.0);
}

#[test]
fn fundamental_periods() {
    let k = complete_k(Modulus::new(0.5).unwrap());
    assert!(
        (spec(Family::Lame, 2, 0.5).fundamental_period() - 3.708_149_354_602_744).abs() < 1e-12
    );
    assert_eq!(spec(Family::AssociatedLame, 2, 0.5).fundamental_period(), k);
}

#[test]
fn period_on_grid() {
    for family in [Family::Lame, Family::AssociatedLame] {
        for j in 1..=4 {
            for m in [0.1, 0.5, 0.9] {
                let s = spec(family, j, m);
                let l = s.fundamental_period();
                let worst = (0..512)
                    .map(|i| i as f64 * l / 512.0)
                    .map(|x| (s.evaluate(x + l).unwrap() - s.evaluate(x).unwrap()).abs())
                    .fold(0.0, f64::max);
                assert!(worst < 1e-10, "{family:?} j={j} m={m}: {worst}");
            }
        }
    }
}

#[test]
fn associated_period_is_minimal() {
    for m in [0.1, 0.5, 0.9] {
        let s = spec(Family::AssociatedLame, 1, m);
        let half = s.fundamental_period() / 2.0;
        let worst = (0..256)
            .map(|i| i as f64 * half / 128.0)
            .map(|x| (s.evaluate(x + half).unwrap() - s.evaluate(x).unwrap()).abs())
            .fold(0.0, f64::max);
        assert!(worst > 1e-3, "m = {m}: K/2 looks like a period ({worst})");
    }
}

#[test]
fn offset_shifts_potential() {
    let s = spec(Family::Lame, 3, 0.4);
    let shifted = s.with_offset(2.5);
    for i in 0..20 {
        let x = 0.37 * i as f64;
        assert!((shifted.evaluate(x).unwrap() - s.evaluate(x).unwrap() - 2.5).abs() < 1e-14);
    }
    let susy = spec(Family::Lame, 2, 0.5).with_susy_offset();
    assert_eq!(susy.offset, susy.susy_offset().value);
}

proptest! {
    #[test]
    fn evenness(f in family(), j in 1..8_i64, m in 0.01..0.99_f64, x in -20.0..20.0_f64) {
        let s = spec(f, j, m);
        prop_assert!((s.evaluate(-x).unwrap() - s.evaluate(x).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn reflection_invariance(f in family(), j in 1..8_i64, m in 0.01..0.99_f64, x in -20.0..20.0_f64) {
        let s = spec(f, j, m);
        let r = s.reflected();
        prop_assert_eq!(r.j(), -j - 1);
        prop_assert_eq!(r.coupling(), s.coupling());
        prop_assert_eq!(r.evaluate(x).unwrap(), s.evaluate(x).unwrap());
    }
}
