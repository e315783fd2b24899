//! The matrix `Lambda(n)` relating discriminant divisors to height classes.
//!
//! Row `i` of the transpose `Lambda(n)^T` is the coefficient vector of
//! `div(Delta_{p^i})` over the height-class basis `(P_{p^j})`. Its rows 0 and
//! `r` are Gekeler's cusp-order formulas for `Delta` and `Delta_n`; the
//! matrix is invertible over `Q` and the scaled inverse
//! `(|p|^{r+1} - |p|^{r-1})(q-1) * Lambda(n)^{-1}` is an integer tridiagonal
//! matrix given entry by entry below.
//!
//! Index convention: the entry case `|p|^{r - m(j) - |i-j|} (q-1)` takes the
//! minimum in the *column* index, `m(j) = min(j, r-j)`. The convention is
//! easy to get wrong (the literature states it both ways); with the row
//! index instead, entry `(0, 1)` would come out as `|p|^{r-1}(q-1)` where
//! the cusp-order formula for `div(Delta)` requires `|p|^{r-2}(q-1)`, and
//! `Lambda^{-1} Lambda = I` would fail. Row agreement with the cusp-order
//! formulas is covered by tests and the inverse identity is asserted on
//! every build.

use num_traits::{One, Zero};

use crate::params::ParamSpace;
use crate::rational::{Int, Rat};
use crate::{Error, Result};

/// Which matrix a [`LambdaMatrix`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// `Lambda(n)^T`: rows are divisors of `Delta_{p^i}`. Integer entries.
    Transpose,
    /// `Lambda(n)^{-1}`: acts on divisor coefficient columns. Rational entries.
    Inverse,
}

/// An `(r+1) x (r+1)` exact matrix attached to a parameter space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaMatrix {
    params: ParamSpace,
    kind: MatrixKind,
    entries: Vec<Vec<Rat>>,
}

impl LambdaMatrix {
    pub fn params(&self) -> &ParamSpace {
        &self.params
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }

    /// Entry as an integer; panics if it is not integral.
    pub fn integer_entry(&self, i: usize, j: usize) -> Int {
        let e = &self.entries[i][j];
        assert!(e.denom().is_one(), "entry ({i},{j}) = {e} is not integral");
        e.numer().clone()
    }

    /// `M v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.size());
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `M^T v` for a column vector `v`.
    ///
    /// On the stored transpose this gives the action of `Lambda(n)` itself,
    /// which is what recovers a divisor from eta-quotient exponents.
    pub fn transpose_mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        let n = self.size();
        assert_eq!(v.len(), n);
        (0..n)
            .map(|j| (0..n).map(|i| &self.entries[i][j] * &v[i]).sum())
            .collect()
    }

    /// `M N` for two square matrices of the same size.
    pub fn mul_matrix(&self, other: &LambdaMatrix) -> Vec<Vec<Rat>> {
        let n = self.size();
        assert_eq!(n, other.size());
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n)
                            .map(|k| &self.entries[i][k] * &other.entries[k][j])
                            .sum()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Entry `(i, j)` of `Lambda(n)^T` as an integer.
///
/// ```text
/// |p|^{r-i}                      if j = 0
/// |p|^{r - m(j) - |i-j|} (q-1)   if 1 <= j <= r-1,  m(j) = min(j, r-j)
/// |p|^{i}                        if j = r
/// ```
pub fn transpose_entry(params: &ParamSpace, i: u32, j: u32) -> Int {
    let r = params.r();
    debug_assert!(i <= r && j <= r);
    if j == 0 {
        params.abs_p_pow(r - i)
    } else if j == r {
        params.abs_p_pow(i)
    } else {
        let m = j.min(r - j);
        let diff = i.abs_diff(j);
        params.abs_p_pow(r - m - diff) * (params.q_int() - 1)
    }
}

/// Entry `(i, j)` of the scaled inverse
/// `S = (|p|^{r+1} - |p|^{r-1})(q-1) * Lambda(n)^{-1}` as an integer.
///
/// ```text
/// |p| (q-1)                  if (i,j) = (0,0) or (r,r)
/// -(q-1)                     if (i,j) = (1,0) or (r-1,r)
/// |p|^{m(j)-1} (|p|^2 + 1)   if 1 <= i = j <= r-1
/// -|p|^{m(j)}                if |i-j| = 1 and j != 0, r
/// 0                          otherwise
/// ```
///
/// The corner cases take precedence; for `r = 1` only they fire.
pub fn scaled_inverse_entry(params: &ParamSpace, i: u32, j: u32) -> Int {
    let r = params.r();
    debug_assert!(i <= r && j <= r);
    let q_minus_1: Int = params.q_int() - 1;
    if (i, j) == (0, 0) || (i, j) == (r, r) {
        return params.abs_p() * q_minus_1;
    }
    if (i, j) == (1, 0) || (i == r - 1 && j == r) {
        return -q_minus_1;
    }
    if j != 0 && j != r {
        let m = j.min(r - j);
        if i == j {
            return params.abs_p_pow(m - 1) * (params.abs_p_pow(2) + 1);
        }
        if i.abs_diff(j) == 1 {
            return -params.abs_p_pow(m);
        }
    }
    Int::zero()
}

/// Denominator cleared by the scaled inverse:
/// `(|p|^{r+1} - |p|^{r-1})(q-1)`.
pub fn inverse_scale(params: &ParamSpace) -> Int {
    let r = params.r();
    (params.abs_p_pow(r + 1) - params.abs_p_pow(r - 1)) * (params.q_int() - 1)
}

/// Build `Lambda(n)^T` from the closed-form entries.
pub fn build_transpose(params: &ParamSpace) -> LambdaMatrix {
    let r = params.r();
    let entries = (0..=r)
        .map(|i| {
            (0..=r)
                .map(|j| Rat::from_integer(transpose_entry(params, i, j)))
                .collect()
        })
        .collect();
    LambdaMatrix {
        params: params.clone(),
        kind: MatrixKind::Transpose,
        entries,
    }
}

/// Build `Lambda(n)^{-1}` from the closed-form scaled entries.
///
/// The inverse identity `Lambda^{-1} Lambda = I` is asserted here, every
/// time, against the independently built transpose.
pub fn build_inverse(params: &ParamSpace) -> LambdaMatrix {
    let r = params.r();
    let scale = Rat::from_integer(inverse_scale(params));
    let entries: Vec<Vec<Rat>> = (0..=r)
        .map(|i| {
            (0..=r)
                .map(|j| Rat::from_integer(scaled_inverse_entry(params, i, j)) / &scale)
                .collect()
        })
        .collect();
    let inverse = LambdaMatrix {
        params: params.clone(),
        kind: MatrixKind::Inverse,
        entries,
    };
    let lambda_t = build_transpose(params);
    assert!(
        is_identity(&product_with_lambda(&inverse, &lambda_t)),
        "closed-form inverse failed the identity check for q={}, deg_p={}, r={}",
        params.q(),
        params.deg_p(),
        params.r()
    );
    inverse
}

/// `Lambda^{-1} * Lambda`, where `Lambda = (Lambda^T)^T`.
fn product_with_lambda(inverse: &LambdaMatrix, transpose: &LambdaMatrix) -> Vec<Vec<Rat>> {
    let n = inverse.size();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    (0..n)
                        .map(|k| inverse.entry(i, k) * transpose.entry(j, k))
                        .sum()
                })
                .collect()
        })
        .collect()
}

fn is_identity(m: &[Vec<Rat>]) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, e)| if i == j { e.is_one() } else { e.is_zero() })
    })
}

/// Invert `Lambda = (Lambda^T)^T` by rational Gaussian elimination with
/// partial pivoting, independently of the closed form.
///
/// The input must be of kind [`MatrixKind::Transpose`].
pub fn invert_oracle(m: &LambdaMatrix) -> Result<LambdaMatrix> {
    assert_eq!(m.kind(), MatrixKind::Transpose, "oracle inverts Lambda^T");
    let n = m.size();
    // Lambda itself is the transpose of the stored rows.
    let lambda: Vec<Vec<Rat>> = (0..n)
        .map(|i| (0..n).map(|j| m.entry(j, i).clone()).collect())
        .collect();
    let entries = invert_rational_matrix(&lambda)?;
    Ok(LambdaMatrix {
        params: m.params.clone(),
        kind: MatrixKind::Inverse,
        entries,
    })
}

/// Exact inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert_rational_matrix(a: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut work: Vec<Vec<Rat>> = a.to_vec();
    let mut inv: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&row| !work[row][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => {
                return Err(Error::SingularMatrix {
                    detail: format!("no pivot in column {col}"),
                })
            }
        };
        work.swap(col, pivot);
        inv.swap(col, pivot);

        let p = work[col][col].clone();
        for j in 0..n {
            work[col][j] = &work[col][j] / &p;
            inv[col][j] = &inv[col][j] / &p;
        }
        for row in 0..n {
            if row == col || work[row][col].is_zero() {
                continue;
            }
            let factor = work[row][col].clone();
            for j in 0..n {
                let w = &work[col][j] * &factor;
                work[row][j] = &work[row][j] - w;
                let v = &inv[col][j] * &factor;
                inv[row][j] = &inv[row][j] - v;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, ratio};

    fn params(q: u64, deg_p: u32, r: u32) -> ParamSpace {
        ParamSpace::new(q, deg_p, r).unwrap()
    }

    fn int_rows(m: &LambdaMatrix) -> Vec<Vec<Int>> {
        (0..m.size())
            .map(|i| (0..m.size()).map(|j| m.integer_entry(i, j)).collect())
            .collect()
    }

    #[test]
    fn transpose_q2_r3() {
        let t = build_transpose(&params(2, 1, 3));
        let expected: Vec<Vec<Int>> = [[8, 2, 1, 1], [4, 4, 2, 2], [2, 2, 4, 4], [1, 1, 2, 8]]
            .iter()
            .map(|row| row.iter().map(|&x| int(x)).collect())
            .collect();
        assert_eq!(int_rows(&t), expected);
    }

    #[test]
    fn transpose_corner_and_r1() {
        // (0,0) is always |p|^r.
        let p = params(3, 2, 4);
        assert_eq!(transpose_entry(&p, 0, 0), p.abs_p_pow(4));

        // r = 1: only the j = 0 and j = r cases fire.
        let t = build_transpose(&params(5, 1, 1));
        assert_eq!(
            int_rows(&t),
            vec![vec![int(5), int(1)], vec![int(1), int(5)]]
        );
    }

    #[test]
    fn transpose_rows_match_cusp_order_formulas() {
        // Row 0 must be (q-1)/rho(k) |p|^{r - min(2k, r)}, row r the same
        // with k replaced by r - k; rho(k) = q-1 at the ends, 1 inside.
        for q in [2u64, 3, 4, 5, 8, 9] {
            for deg_p in [1u32, 2, 3] {
                for r in 1..=8 {
                    let p = params(q, deg_p, r);
                    let t = build_transpose(&p);
                    for k in 0..=r {
                        let rho = if k == 0 || k == r { q - 1 } else { 1 };
                        let row0 =
                            int((q - 1) as i64 / rho as i64) * p.abs_p_pow(r - (2 * k).min(r));
                        assert_eq!(t.integer_entry(0, k as usize), row0);
                        let rowr = int((q - 1) as i64 / rho as i64)
                            * p.abs_p_pow(r - (2 * (r - k)).min(r));
                        assert_eq!(t.integer_entry(r as usize, k as usize), rowr);
                    }
                }
            }
        }
    }

    #[test]
    fn scaled_inverse_q2_r3() {
        let p = params(2, 1, 3);
        assert_eq!(inverse_scale(&p), int(12));
        let expected: [[i64; 4]; 4] =
            [[2, -2, 0, 0], [-1, 5, -2, 0], [0, -2, 5, -1], [0, 0, -2, 2]];
        for i in 0..4u32 {
            for j in 0..4u32 {
                assert_eq!(
                    scaled_inverse_entry(&p, i, j),
                    int(expected[i as usize][j as usize]),
                    "at ({i},{j})"
                );
            }
        }
    }

    #[test]
    fn inverse_r1_closed_form() {
        // Lambda^{-1} = 1/(|p|^2 - 1) [[|p|, -1], [-1, |p|]] at r = 1.
        for (q, deg_p) in [(2u64, 1u32), (3, 1), (4, 2)] {
            let p = params(q, deg_p, 1);
            let inv = build_inverse(&p);
            let den: Int = p.abs_p_pow(2) - 1;
            assert_eq!(*inv.entry(0, 0), ratio(p.abs_p().clone(), den.clone()));
            assert_eq!(*inv.entry(0, 1), ratio(int(-1), den.clone()));
            assert_eq!(*inv.entry(1, 0), ratio(int(-1), den.clone()));
            assert_eq!(*inv.entry(1, 1), ratio(p.abs_p().clone(), den));
        }
    }

    #[test]
    fn scaled_inverse_corner() {
        let p = params(7, 2, 5);
        assert_eq!(scaled_inverse_entry(&p, 0, 0), p.abs_p() * int(6));
    }

    #[test]
    fn scaled_inverse_is_tridiagonal() {
        for q in [2u64, 5] {
            for r in 1..=8 {
                let p = params(q, 1, r);
                for i in 0..=r {
                    for j in 0..=r {
                        if i.abs_diff(j) >= 2 {
                            assert_eq!(scaled_inverse_entry(&p, i, j), Int::zero());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_matches_closed_form_small_grid() {
        for q in [2u64, 3, 4] {
            for deg_p in [1u32, 2] {
                for r in 1..=5 {
                    let p = params(q, deg_p, r);
                    let t = build_transpose(&p);
                    let inv = build_inverse(&p);
                    let oracle = invert_oracle(&t).unwrap();
                    assert_eq!(inv.entries(), oracle.entries(), "q={q} deg_p={deg_p} r={r}");
                }
            }
        }
    }

    #[test]
    fn oracle_q3_r1() {
        let p = params(3, 1, 1);
        let oracle = invert_oracle(&build_transpose(&p)).unwrap();
        assert_eq!(*oracle.entry(0, 0), ratio(int(3), int(8)));
        assert_eq!(*oracle.entry(0, 1), ratio(int(-1), int(8)));
        assert_eq!(*oracle.entry(1, 0), ratio(int(-1), int(8)));
        assert_eq!(*oracle.entry(1, 1), ratio(int(3), int(8)));
    }

    #[test]
    fn gauss_jordan_inverts_identity() {
        let id = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
        assert_eq!(invert_rational_matrix(&id).unwrap(), id);
    }

    #[test]
    fn gauss_jordan_rejects_singular() {
        let sing = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(
            invert_rational_matrix(&sing).unwrap_err().name(),
            "SingularMatrix"
        );
    }
}
