//! Re-derive the full `T^5` worked example at several `q` and report every
//! comparison: both 5x5 evaluation matrices and the five `g(D_i)` exponent
//! vectors.
//!
//! ```text
//! cargo run --example t5_walkthrough
//! ```

use drinfeld_cuspidal::structure::verify_t5_example;

fn main() {
    for q in [2u64, 3, 4, 5] {
        let report = verify_t5_example(q).expect("q is a prime power");
        let passed = report.checks.iter().filter(|c| c.pass).count();
        println!(
            "q = {q}: {passed}/{} checks pass{}",
            report.checks.len(),
            if report.pass() { "" } else { "  <-- FAILURES" }
        );
        if let Some(first) = report.first_mismatch() {
            println!(
                "  first mismatch {}: expected {}, got {}",
                first.name, first.expected, first.got
            );
        }
    }

    // A closer look at one q: print the exponent-vector checks.
    let report = verify_t5_example(2).unwrap();
    println!("\nexponent vectors at q = 2:");
    for check in report.checks.iter().filter(|c| c.name.starts_with("g(D")) {
        println!("  {}: {}", check.name, check.expected);
    }
}
