//! The acceptance gate: runs every ground-truth criterion and prints one
//! pass/fail line per criterion. All comparisons are exact.

use string_genus::acceptance::run_all;

#[test]
fn acceptance_criteria() {
    let outcomes = run_all();
    assert_eq!(outcomes.len(), 13);
    for outcome in &outcomes {
        println!("{}", outcome);
    }
    let failures: Vec<_> = outcomes.iter().filter(|o| !o.passed).collect();
    assert!(
        failures.is_empty(),
        "{} criteria failed:\n{}",
        failures.len(),
        failures
            .iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join("\n")
    );
}
