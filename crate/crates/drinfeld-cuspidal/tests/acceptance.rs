//! Acceptance suite: the full golden corpus, one test per criterion.
//!
//! Every check is an exact identity over big integers and rationals; there
//! are no tolerances anywhere. Run with `-- --nocapture` to see the
//! per-criterion pass lines and timings:
//!
//! ```text
//! cargo test --test acceptance -- --nocapture
//! ```

use drinfeld_cuspidal::selftest::{run_one, CriterionResult, Grid};

fn run_criterion(index: usize) -> CriterionResult {
    let started = std::time::Instant::now();
    let result = run_one(Grid::Full, index);
    let status = if result.pass { "PASS" } else { "FAIL" };
    println!(
        "{status} criterion {} [{:.2?}] ({})",
        result.name,
        started.elapsed(),
        result.detail
    );
    result
}

macro_rules! criterion_test {
    ($test_name:ident, $index:expr) => {
        #[test]
        fn $test_name() {
            let result = run_criterion($index);
            assert!(result.pass, "{}: {}", result.name, result.detail);
        }
    };
}

criterion_test!(acceptance_01_matrix_inverse_identity, 0);
criterion_test!(acceptance_02_zero_infty_image, 1);
criterion_test!(acceptance_03_t_level_order, 2);
criterion_test!(acceptance_04_exact_order_coprime_case, 3);
criterion_test!(acceptance_05_lower_bound_closed_form, 4);
criterion_test!(acceptance_06_small_r_orders, 5);
criterion_test!(acceptance_07_cochain_closed_forms, 6);
criterion_test!(acceptance_08_t5_golden_example, 7);
criterion_test!(acceptance_09_group_structure, 8);
criterion_test!(acceptance_10_redundancy_witnesses, 9);
criterion_test!(acceptance_11_property_suites, 10);
