//! Send degree-0 cuspidal divisors through the map `g` and inspect the
//! resulting formal discriminant quotients.
//!
//! ```text
//! cargo run --example eta_quotient_map
//! ```

use drinfeld_cuspidal::divisors::{generator, CuspidalDivisor};
use drinfeld_cuspidal::etaquot::{g_map, zero_infty_primary_factorization};
use drinfeld_cuspidal::params::ParamSpace;
use drinfeld_cuspidal::rational::Int;

fn main() {
    let params = ParamSpace::new(2, 1, 5).expect("valid parameters");

    // g([0] - [infinity]): exponents (|p|, -1, 0, ..., 0, 1, -|p|) over
    // |p|^{r+1} - |p|^{r-1}.
    let c0 = generator(&params, 0).unwrap();
    let image = g_map(&c0).unwrap();
    println!(
        "g([0]-[infinity]) exponents over heights 0..={}:",
        params.r()
    );
    for (i, e) in image.exponents().iter().enumerate() {
        println!("  Delta_{{p^{i}}} ^ {e}");
    }
    println!("least integral multiple: {}", image.min_integral_multiple());

    // The cleared vector factors into root-lemma-ready quotients; the
    // constructor re-verifies the expansion before returning.
    let f = zero_infty_primary_factorization(&params).unwrap();
    println!("\nquotient factorization of the cleared vector:");
    for factor in f.factors() {
        println!(
            "  (Delta_{{p^{}}} / Delta_{{p^{}}}) ^ {}",
            factor.num_height, factor.den_height, factor.exponent
        );
    }

    // Any degree-0 integer combination works the same way.
    let coeffs = vec![
        Int::from(3),
        Int::from(-1),
        Int::from(0),
        Int::from(2),
        Int::from(1),
        Int::from(-7),
    ];
    let divisor = CuspidalDivisor::new(params.clone(), coeffs).unwrap();
    assert!(divisor.is_degree_zero());
    let image = g_map(&divisor).unwrap();
    println!("\ng(3(P_1) - (P_T) + 2(P_T3) + (P_T4) - 7(P_T5)) exponents:");
    for (i, e) in image.exponents().iter().enumerate() {
        println!("  Delta_{{p^{i}}} ^ {e}");
    }
}
