//! Global parameters `(q, deg p, r)` and their validation.
//!
//! A parameter space fixes the finite field `F_q`, a prime `p` of `F_q[T]` of
//! degree `deg p`, and the exponent `r` of the level `n = p^r`. Only the
//! degree of `p` ever enters a formula, so the prime itself is never stored.

use crate::rational::{pow, Int};
use crate::{Error, Result};

/// Validated parameter triple with derived quantities.
///
/// Invariants: `q` is a prime power at least 2, `char_p` is its unique prime
/// divisor, `deg_p >= 1`, `r >= 1`, and `abs_p = q^{deg_p}` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamSpace {
    q: u64,
    char_p: u64,
    deg_p: u32,
    r: u32,
    abs_p: Int,
}

impl ParamSpace {
    /// Validate `(q, deg_p, r)` and derive the characteristic and `|p|`.
    pub fn new(q: u64, deg_p: u32, r: u32) -> Result<Self> {
        let char_p = match prime_power_base(q) {
            Some(p) => p,
            None => return Err(Error::InvalidQ { q }),
        };
        if deg_p < 1 {
            return Err(Error::InvalidDegP {
                deg_p: deg_p as u64,
            });
        }
        if r < 1 {
            return Err(Error::InvalidR {
                detail: format!("level exponent must be >= 1, got {r}"),
            });
        }
        let abs_p = pow(&Int::from(q), deg_p);
        Ok(ParamSpace {
            q,
            char_p,
            deg_p,
            r,
            abs_p,
        })
    }

    /// Cardinality of the coefficient field.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q` as a big integer.
    pub fn q_int(&self) -> Int {
        Int::from(self.q)
    }

    /// The characteristic, i.e. the unique prime dividing `q`.
    pub fn char_p(&self) -> u64 {
        self.char_p
    }

    /// Degree of the prime `p` in `F_q[T]`.
    pub fn deg_p(&self) -> u32 {
        self.deg_p
    }

    /// Exponent of the level `n = p^r`.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Normalized absolute value `|p| = q^{deg p}`.
    pub fn abs_p(&self) -> &Int {
        &self.abs_p
    }

    /// `|p|^e`.
    pub fn abs_p_pow(&self, e: u32) -> Int {
        pow(&self.abs_p, e)
    }

    /// `q^e`.
    pub fn q_pow(&self, e: u32) -> Int {
        pow(&Int::from(self.q), e)
    }

    /// Degree of the level, `deg(p^r) = r * deg p`.
    pub fn level_degree(&self) -> u32 {
        self.r * self.deg_p
    }

    /// Errors unless `deg p = 1`, the requirement for the `T`-level closed
    /// forms.
    pub fn require_t_level(&self, what: &str) -> Result<()> {
        if self.deg_p != 1 {
            return Err(Error::UnsupportedLevel {
                detail: format!("{what} requires deg p = 1, got deg p = {}", self.deg_p),
            });
        }
        Ok(())
    }
}

/// If `q = p^s` for a prime `p` and `s >= 1`, return `p`; otherwise `None`.
///
/// Trial factorization is plenty here: every intended `q` fits comfortably in
/// a machine word.
fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut n = q;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            while n % d == 0 {
                n /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        // q itself is prime.
        return Some(q);
    }
    // q must be p^s with no other prime factor left.
    if n == 1 {
        Some(p)
    } else {
        None
    }
}

/// gcd of three positive integers.
pub fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    fn gcd2(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }
    gcd2(gcd2(a, b), c)
}
