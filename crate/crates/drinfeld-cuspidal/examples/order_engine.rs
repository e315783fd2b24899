//! Sweep the order of `[0] - [infinity]` in `C(p^r)` across parameters,
//! showing exact orders where the bounds meet and honest intervals where
//! they do not.
//!
//! ```text
//! cargo run --example order_engine
//! ```

use drinfeld_cuspidal::orders::order_zero_infty;
use drinfeld_cuspidal::params::{gcd3, ParamSpace};

fn main() {
    println!(
        "{:>3} {:>6} {:>3} {:>14} {:>24}",
        "q", "deg p", "r", "gcd(deg p,q-1)", "ord([0]-[infinity])"
    );
    for (q, deg_p, r) in [
        (2u64, 1u32, 1u32),
        (2, 1, 2),
        (2, 1, 3),
        (2, 1, 6),
        (3, 1, 5),
        (5, 1, 4),
        (2, 2, 3),
        (4, 2, 3),
        (3, 2, 3),
        (9, 2, 3),
        (3, 2, 4),
        (5, 4, 3),
        (5, 2, 5),
    ] {
        let params = ParamSpace::new(q, deg_p, r).expect("valid parameters");
        let bound = order_zero_infty(&params);
        let shown = match bound.exact() {
            Some(v) => v.to_string(),
            None => format!("multiple of {}, divides {}", bound.lower(), bound.upper()),
        };
        println!(
            "{:>3} {:>6} {:>3} {:>14} {:>24}",
            q,
            deg_p,
            r,
            gcd3(deg_p as u64, q - 1, deg_p as u64),
            shown
        );
    }
}
