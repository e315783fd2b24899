//! Exact integer and rational arithmetic helpers.
//!
//! All quantities in this crate are big integers or big rationals. Rationals
//! are kept in lowest terms with a positive denominator, which is exactly the
//! normal form `num_rational::BigRational` maintains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact big integer.
pub type Int = BigInt;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

/// `n` as a big integer.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// `n` as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

/// `a / b` as a rational in lowest terms. Panics if `b = 0`.
pub fn ratio(a: Int, b: Int) -> Rat {
    Rat::new(a, b)
}

/// The positive denominator of `x` in lowest terms.
///
/// Equivalently, the least positive integer `m` such that `m * x` is an
/// integer.
pub fn denominator_of(x: &Rat) -> Int {
    x.denom().clone()
}

/// True if `x` has denominator 1.
pub fn is_integral(x: &Rat) -> bool {
    x.denom().is_one()
}

/// `base^exp` for a non-negative exponent.
pub fn pow(base: &Int, exp: u32) -> Int {
    num_traits::pow::pow(base.clone(), exp as usize)
}

/// Exact integer division; panics if the division leaves a remainder.
pub fn exact_div(num: &Int, den: &Int) -> Int {
    let (quo, rem) = num.div_rem(den);
    assert!(rem.is_zero(), "non-exact division {num} / {den}");
    quo
}

/// gcd of two big integers (non-negative).
pub fn gcd(a: &Int, b: &Int) -> Int {
    a.gcd(b)
}

/// lcm of two big integers (non-negative).
pub fn lcm(a: &Int, b: &Int) -> Int {
    a.lcm(b)
}

/// True if `a` divides `b`.
pub fn divides(a: &Int, b: &Int) -> bool {
    !a.is_zero() && b.mod_floor(&a.abs()).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn denominator_is_positive_lowest_terms() {
        let x = ratio(int(3), int(12));
        assert_eq!(x, ratio(int(1), int(4)));
        assert_eq!(denominator_of(&x), int(4));

        let y = ratio(int(5), int(1));
        assert_eq!(denominator_of(&y), int(1));

        // Negative input denominators normalize to positive.
        let z = ratio(int(1), int(-2));
        assert_eq!(denominator_of(&z), int(2));
        assert_eq!(z, ratio(int(-1), int(2)));
    }

    #[test]
    fn denominator_of_scaled_value() {
        // denominator_of(m*x) = denominator_of(x) / gcd(denominator_of(x), m)
        let x = ratio(int(7), int(12));
        for m in 1i64..=30 {
            let scaled = &x * rat(m);
            let expected = exact_div(&int(12), &gcd(&int(12), &int(m)));
            assert_eq!(denominator_of(&scaled), expected);
        }
    }

    #[test]
    fn exact_div_panics_on_remainder() {
        let result = std::panic::catch_unwind(|| exact_div(&int(7), &int(2)));
        assert!(result.is_err());
    }

    #[test]
    fn divides_basic() {
        assert!(divides(&int(4), &int(12)));
        assert!(!divides(&int(5), &int(12)));
        assert!(divides(&int(1), &int(0)));
    }
}
