//! Rational cuspidal divisors supported on the height classes `(P_{p^i})`.
//!
//! A divisor is stored purely by its height-class coefficient vector
//! `a_0..a_r`; individual cusps are never enumerated, since every formula
//! factors through heights and the Galois orbits make the height classes
//! rational.

use num_traits::{One, Zero};

use crate::params::ParamSpace;
use crate::rational::{exact_div, int, Int};
use crate::{Error, Result};

/// Integer combination `sum_i a_i (P_{p^i})` of the height-class divisors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspidalDivisor {
    params: ParamSpace,
    coeffs: Vec<Int>,
}

impl CuspidalDivisor {
    /// Wrap a coefficient vector; its length must be exactly `r + 1`.
    pub fn new(params: ParamSpace, coeffs: Vec<Int>) -> Result<Self> {
        let expected = params.r() as usize + 1;
        if coeffs.len() != expected {
            return Err(Error::IndexOutOfRange {
                index: coeffs.len() as u64,
                max: expected as u64,
            });
        }
        Ok(CuspidalDivisor { params, coeffs })
    }

    /// The zero divisor.
    pub fn zero(params: ParamSpace) -> Self {
        let coeffs = vec![Int::zero(); params.r() as usize + 1];
        CuspidalDivisor { params, coeffs }
    }

    pub fn params(&self) -> &ParamSpace {
        &self.params
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Degree `sum_i a_i deg(P_{p^i})`.
    pub fn degree(&self) -> Int {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * cusp_class_degree(&self.params, i as u32).expect("index in range"))
            .sum()
    }

    pub fn is_degree_zero(&self) -> bool {
        self.degree().is_zero()
    }

    /// `self + k * other`, the basic building block for expanding integer
    /// combinations of generators.
    pub fn add_scaled(&self, k: &Int, other: &CuspidalDivisor) -> CuspidalDivisor {
        assert_eq!(self.params, other.params, "parameter spaces must match");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + k * b)
            .collect();
        CuspidalDivisor {
            params: self.params.clone(),
            coeffs,
        }
    }
}

impl std::ops::Add for &CuspidalDivisor {
    type Output = CuspidalDivisor;
    fn add(self, rhs: &CuspidalDivisor) -> CuspidalDivisor {
        self.add_scaled(&Int::one(), rhs)
    }
}

impl std::ops::Sub for &CuspidalDivisor {
    type Output = CuspidalDivisor;
    fn sub(self, rhs: &CuspidalDivisor) -> CuspidalDivisor {
        self.add_scaled(&-Int::one(), rhs)
    }
}

/// Degree of the rational cuspidal divisor `(P_{p^i})` of height `p^i`.
///
/// With `m = min(i, r - i)` this is `|p|^{m-1} (|p| - 1) / (q - 1)` for
/// `0 < i < r` and `1` at the two end heights. The division by `q - 1` is
/// always exact; this is asserted on every call.
pub fn cusp_class_degree(params: &ParamSpace, i: u32) -> Result<Int> {
    let r = params.r();
    if i > r {
        return Err(Error::IndexOutOfRange {
            index: i as u64,
            max: r as u64,
        });
    }
    if i == 0 || i == r {
        return Ok(Int::one());
    }
    let m = i.min(r - i);
    let num = params.abs_p_pow(m - 1) * (params.abs_p() - 1);
    Ok(exact_div(&num, &int(params.q() as i64 - 1)))
}

/// The standard generator `C_i = (P_{p^i}) - deg(P_{p^i}) [infinity]` for
/// `0 <= i < r`. It has degree 0 by construction.
pub fn generator(params: &ParamSpace, i: u32) -> Result<CuspidalDivisor> {
    let r = params.r();
    if i >= r {
        return Err(Error::IndexOutOfRange {
            index: i as u64,
            max: r as u64 - 1,
        });
    }
    let deg = cusp_class_degree(params, i)?;
    let mut coeffs = vec![Int::zero(); r as usize + 1];
    coeffs[i as usize] = Int::one();
    coeffs[r as usize] = -deg;
    Ok(CuspidalDivisor {
        params: params.clone(),
        coeffs,
    })
}

/// Which of the two redundancy witnesses to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// `D_1`, witnessing that `(q-1)C_1` is redundant.
    D1,
    /// `D_{r-1}`, witnessing that `(q-1)C_{r-1}` is redundant.
    DLast,
}

/// The integer combinations `D_1` and `D_{r-1}` whose `(q-1)`-multiples are
/// principal, expanded into a flat coefficient vector.
///
/// With `m = floor((r-1)/2)`:
///
/// ```text
/// D_1     = C_1 - sum_{i=0}^{r-2} q^i C_0 + sum_{i=2}^{floor(r/2)} C_i
///               + sum_{i=floor(r/2)+1}^{r-2} q^{2i-r} C_i
/// D_{r-1} = C_{r-1} + q^{r-2} C_0 - sum_{i=2}^{m} (q^{r-2i+1} - q^{r-2i}) C_i
///               + sum_{i=m+1}^{r-2} (q^{floor(r/2)} - q^{i-m} + 1)(C_i - q C_{i+1})
/// ```
///
/// Only defined at `T`-level (`deg p = 1`) and for `r >= 4`.
pub fn redundancy_witness(params: &ParamSpace, which: Witness) -> Result<CuspidalDivisor> {
    params.require_t_level("redundancy_witness")?;
    let r = params.r();
    if r < 4 {
        return Err(Error::InvalidR {
            detail: format!("redundancy witnesses need r >= 4, got {r}"),
        });
    }
    let q = params.q_int();
    let m = (r - 1) / 2;
    let half = r / 2;

    let mut d = CuspidalDivisor::zero(params.clone());
    match which {
        Witness::D1 => {
            d = d.add_scaled(&Int::one(), &generator(params, 1)?);
            let geometric: Int = (0..=r - 2).map(|i| params.q_pow(i)).sum();
            d = d.add_scaled(&-geometric, &generator(params, 0)?);
            for i in 2..=half {
                d = d.add_scaled(&Int::one(), &generator(params, i)?);
            }
            for i in half + 1..=r - 2 {
                d = d.add_scaled(&params.q_pow(2 * i - r), &generator(params, i)?);
            }
        }
        Witness::DLast => {
            d = d.add_scaled(&Int::one(), &generator(params, r - 1)?);
            d = d.add_scaled(&params.q_pow(r - 2), &generator(params, 0)?);
            for i in 2..=m {
                let coeff = params.q_pow(r - 2 * i + 1) - params.q_pow(r - 2 * i);
                d = d.add_scaled(&-coeff, &generator(params, i)?);
            }
            for i in m + 1..=r - 2 {
                let coeff = params.q_pow(half) - params.q_pow(i - m) + Int::one();
                let pair = generator(params, i)?.add_scaled(&-&q, &generator(params, i + 1)?);
                d = d.add_scaled(&coeff, &pair);
            }
        }
    }
    Ok(d)
}
