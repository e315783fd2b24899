//! Van der Put harmonic-cochain values of the discriminants on Bruhat-Tits
//! edges.
//!
//! Only two edge shapes are ever probed: `e(k, 0)` on the standard axis
//! toward infinity, and `e(k, pi^{k-1})` one step off it. Values of
//! `r(Delta_{p^i})` are computed from two identities:
//!
//! - degree shift: `r(Delta_{p^i})(e(m+1, 0)) = r(Delta)(e(m+1-delta, 0))`
//!   with `delta = i deg p`, valid for any monic level of degree `delta`;
//! - harmonicity: `(q-1) phi(e(m+1, pi^m)) = phi(e(m, 0)) - phi(e(m+1, 0))`.
//!
//! Off-axis edges other than `e(2, pi)` are only licensed at `T`-level;
//! elsewhere they are rejected with `UnsupportedEdge` rather than computed.
//! All values of actual functions are integers (the van der Put map lands in
//! integer-valued cochains); rationals appear only for eta quotients with
//! fractional exponents.

use num_traits::Zero;

use crate::etaquot::EtaQuotient;
use crate::params::ParamSpace;
use crate::rational::{exact_div, int, pow, Int, Rat};
use crate::{Error, Result};

/// Shape of the `u`-part of a supported edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeU {
    /// `u = 0`: the edge `e(k, 0)` on the standard axis.
    Zero,
    /// `u = pi^{k-1}`: the edge `e(k, pi^{k-1})` just off the axis.
    PiPower,
}

/// A supported oriented edge of the Bruhat-Tits tree, pointing to infinity
/// with origin `v(k, u)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeEdge {
    pub k: i64,
    pub u: EdgeU,
}

impl TreeEdge {
    /// The axis edge `e(k, 0)`.
    pub fn axis(k: i64) -> Self {
        TreeEdge { k, u: EdgeU::Zero }
    }

    /// The off-axis edge `e(k, pi^{k-1})`; `e(2, pi)` is `pi_type(2)`.
    pub fn pi_type(k: i64) -> Self {
        TreeEdge {
            k,
            u: EdgeU::PiPower,
        }
    }
}

impl std::fmt::Display for TreeEdge {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.u {
            EdgeU::Zero => write!(f, "e({},0)", self.k),
            EdgeU::PiPower => write!(f, "e({},pi^{})", self.k, self.k - 1),
        }
    }
}

/// `r(Delta)(e(m+1, 0))`: `-q^{-m}(q-1)` for `m <= 0`, else
/// `(q^{m+1} - q - 1)(q-1)`. Always an integer.
pub fn delta_at_axis(params: &ParamSpace, m: i64) -> Int {
    let q = params.q_int();
    if m <= 0 {
        -pow(&q, (-m) as u32) * (&q - 1)
    } else {
        (pow(&q, m as u32 + 1) - &q - 1) * (&q - 1)
    }
}

/// `r(Delta_{p^i})(edge)` for a supported edge.
///
/// Axis edges go through the degree shift; off-axis edges through the
/// harmonicity recursion, which reproduces the `T`-level closed forms and,
/// at `e(2, pi)`, the value `-(q-1)|p|^i / q` for every `deg p`.
pub fn delta_power_at_edge(params: &ParamSpace, i: u32, edge: &TreeEdge) -> Result<Rat> {
    if i > params.r() {
        return Err(Error::IndexOutOfRange {
            index: i as u64,
            max: params.r() as u64,
        });
    }
    let delta = (i * params.deg_p()) as i64;
    let value = match edge.u {
        EdgeU::Zero => delta_at_axis(params, edge.k - 1 - delta),
        EdgeU::PiPower => {
            if edge.k != 2 && params.deg_p() != 1 {
                return Err(Error::UnsupportedEdge {
                    detail: format!(
                        "off-axis edge {edge} needs deg p = 1 (got deg p = {}); only e(2,pi) \
                         is supported at every degree",
                        params.deg_p()
                    ),
                });
            }
            let m = edge.k - 1;
            let diff = delta_at_axis(params, m - 1 - delta) - delta_at_axis(params, m - delta);
            exact_div(&diff, &int(params.q() as i64 - 1))
        }
    };
    Ok(Rat::from_integer(value))
}

/// `r(g-quotient)(edge) = sum_i exponents[i] * r(Delta_{p^i})(edge)`, exact.
pub fn eval_quotient(e: &EtaQuotient, edge: &TreeEdge) -> Result<Rat> {
    let params = e.params();
    let mut acc = Rat::zero();
    for (i, exp) in e.exponents().iter().enumerate() {
        if exp.is_zero() {
            continue;
        }
        acc += exp * delta_power_at_edge(params, i as u32, edge)?;
    }
    Ok(acc)
}

/// Check the harmonicity relation
/// `(q-1) phi_{T^i}(e(m+1, pi^m)) + phi_{T^i}(e(m+1, 0)) = phi_{T^i}(e(m, 0))`
/// at `T`-level for `m >= 1`.
pub fn harmonicity_check(params: &ParamSpace, i: u32, m: i64) -> Result<bool> {
    params.require_t_level("harmonicity_check")?;
    assert!(m >= 1, "harmonicity probe needs m >= 1");
    let q_minus_1 = Rat::from_integer(int(params.q() as i64 - 1));
    let off_axis = delta_power_at_edge(params, i, &TreeEdge::pi_type(m + 1))?;
    let axis_here = delta_power_at_edge(params, i, &TreeEdge::axis(m + 1))?;
    let axis_prev = delta_power_at_edge(params, i, &TreeEdge::axis(m))?;
    Ok(q_minus_1 * off_axis + axis_here == axis_prev)
}
