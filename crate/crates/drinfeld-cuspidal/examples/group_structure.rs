//! Decompose the prime-to-`(q-1)` part of `C(T^r)` into certified cyclic
//! factors, and show the evaluation matrix behind the certificates.
//!
//! ```text
//! cargo run --example group_structure
//! ```

use drinfeld_cuspidal::params::ParamSpace;
use drinfeld_cuspidal::structure::{evaluation_matrix, group_structure};

fn main() {
    for (q, r) in [(2u64, 3u32), (2, 5), (3, 4), (2, 8), (5, 7)] {
        let params = ParamSpace::new(q, 1, r).expect("valid parameters");
        let g = group_structure(&params).expect("certification succeeds");
        let factors: Vec<String> = g
            .factors()
            .iter()
            .map(|f| format!("Z/{} <{}>", f.order, f.label()))
            .collect();
        println!("C(T^{r})^(({q}-1)) = {}", factors.join(" x "));
    }

    // The certificates come from this matrix: diagonal denominators are the
    // orders, everything below the diagonal is integral.
    let params = ParamSpace::new(2, 1, 5).unwrap();
    let m = evaluation_matrix(&params).unwrap();
    println!("\nevaluation matrix for C(T^5) at q = 2:");
    print!("{:>14}", "");
    for edge in m.col_labels() {
        print!("{:>10}", edge.to_string());
    }
    println!();
    for (t, combo) in m.row_labels().iter().enumerate() {
        print!("{:>14}", combo.label());
        for j in 0..m.size() {
            print!("{:>10}", m.entry(t, j).to_string());
        }
        println!();
    }
}
