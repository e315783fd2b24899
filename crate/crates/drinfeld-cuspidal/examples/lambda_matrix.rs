//! Build the matrix `Lambda(n)^T` and its closed-form rational inverse, and
//! cross-check the inverse against Gaussian elimination.
//!
//! ```text
//! cargo run --example lambda_matrix
//! ```

use drinfeld_cuspidal::lambda::{build_inverse, build_transpose, invert_oracle};
use drinfeld_cuspidal::params::ParamSpace;

fn main() {
    let params = ParamSpace::new(2, 1, 3).expect("valid parameters");
    println!(
        "q = {}, deg p = {}, r = {}, |p| = {}",
        params.q(),
        params.deg_p(),
        params.r(),
        params.abs_p()
    );

    let transpose = build_transpose(&params);
    println!("\nLambda(n)^T (row i = divisor of Delta_{{p^i}} over the height classes):");
    for i in 0..transpose.size() {
        let row: Vec<String> = (0..transpose.size())
            .map(|j| transpose.integer_entry(i, j).to_string())
            .collect();
        println!("  [{}]", row.join(", "));
    }

    // The constructor asserts Lambda^{-1} Lambda = I on every build.
    let inverse = build_inverse(&params);
    println!("\nLambda(n)^{{-1}}:");
    for row in inverse.entries() {
        let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
        println!("  [{}]", cells.join(", "));
    }

    let oracle = invert_oracle(&transpose).expect("Lambda is invertible");
    assert_eq!(oracle.entries(), inverse.entries());
    println!("\nGaussian-elimination oracle agrees with the closed form.");
}
