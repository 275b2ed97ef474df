use cocom_core::verify::{degeneration_suite, exhaustive_field_census, random_rational_suite};
use cocom_core::GradedDims;

#[test]
fn random_suite_seed_1() {
    let rep = random_rational_suite(1, &[3, 3, 3], 100);
    println!("{rep}");
    assert!(rep.passed());
}

#[test]
fn degeneration_suite_seed_1() {
    let rep = degeneration_suite(1, 100);
    println!("{rep}");
    assert!(rep.passed());
}

#[test]
fn degeneration_suite_is_replayable() {
    let a = degeneration_suite(7, 10);
    let b = degeneration_suite(7, 10);
    assert!(a.same_outcome(&b));
}

#[test]
fn census_over_f3() {
    for n in [vec![1, 1], vec![1, 1, 1], vec![1, 2, 1], vec![2, 2]] {
        let rep = exhaustive_field_census::<3>(&GradedDims::new(n).unwrap()).unwrap();
        println!("{rep}");
        assert!(rep.passed());
    }
}
