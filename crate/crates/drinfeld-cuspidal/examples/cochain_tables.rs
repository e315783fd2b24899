//! Tabulate van der Put cochain values of the discriminants on the
//! supported Bruhat-Tits edges.
//!
//! ```text
//! cargo run --example cochain_tables
//! ```

use drinfeld_cuspidal::cochain::{delta_power_at_edge, harmonicity_check, TreeEdge};
use drinfeld_cuspidal::params::ParamSpace;

fn main() {
    let params = ParamSpace::new(3, 1, 4).expect("valid parameters");
    let r = params.r();

    // The three standard probe edges.
    let e_a = TreeEdge::pi_type(2);
    let e_b = TreeEdge::axis(2);
    let e_c = TreeEdge::axis(1);
    println!("q = {}, level T^{r}:", params.q());
    println!(
        "{:<15}{:>10}{:>10}{:>10}",
        "", "e(2,pi)", "e(2,0)", "e(1,0)"
    );
    for i in 0..=r {
        let row: Vec<String> = [e_a, e_b, e_c]
            .iter()
            .map(|e| delta_power_at_edge(&params, i, e).unwrap().to_string())
            .collect();
        println!(
            "{:<15}{:>10}{:>10}{:>10}",
            format!("r(Delta_{{T^{i}}})"),
            row[0],
            row[1],
            row[2]
        );
    }

    // Axis values of the full-level discriminant across a range of edges.
    println!("\nr(Delta_{{T^{r}}}) on the axis:");
    for k in -3..=8i64 {
        let v = delta_power_at_edge(&params, r, &TreeEdge::axis(k)).unwrap();
        println!("  e({k},0): {v}");
    }

    // Harmonicity ties the off-axis values to consecutive axis values.
    for i in 0..=r {
        for m in 1..=6 {
            assert!(harmonicity_check(&params, i, m).unwrap());
        }
    }
    println!("\nharmonicity relation verified for all heights, m = 1..=6");
}
