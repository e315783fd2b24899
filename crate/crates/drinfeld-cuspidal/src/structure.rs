//! Cyclic decomposition of the prime-to-`(q-1)` part of `C(T^r)`.
//!
//! For `r >= 3` the group `C(T^r)^{(q-1)}` is `p`-primary and decomposes as
//!
//! ```text
//! <C_0> (+) sum_{i=2}^{m} <(q-1)C_i> (+) sum_{i=m+1}^{r-2} <(q-1)(C_i - qC_{i+1})>
//! ```
//!
//! with `m = floor((r-1)/2)`, `ord(C_0) = q^{r-1}`, `ord((q-1)C_i) = q^{r-i}`
//! and `ord((q-1)(C_i - qC_{i+1})) = q^i`. Every order is certified here from
//! two computable facts rather than trusted: the diagonal denominator of the
//! evaluation matrix (a lower bound, from cochain integrality) must equal the
//! claimed power of `q`, and the root-lemma upper bound with its `(q-1)`
//! factor stripped must equal it too. The triangular shape of the evaluation
//! matrix (integral below the diagonal, zero block under the second family)
//! is likewise rechecked at runtime.
//!
//! Everything in this module is `T`-level only (`deg p = 1`).

use num_traits::{One, Zero};

use crate::cochain::{eval_quotient, TreeEdge};
use crate::divisors::{generator, CuspidalDivisor};
use crate::etaquot::g_map;
use crate::orders::order_zero_infty;
use crate::params::ParamSpace;
use crate::rational::{denominator_of, divides, exact_div, int, ratio, Int, Rat};
use crate::{Error, Result};

/// A generator combination appearing in the decomposition: `C_i` alone or
/// `C_i - q C_{i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorCombo {
    Single(u32),
    MinusQNext(u32),
}

impl GeneratorCombo {
    /// Expand into a coefficient-vector divisor.
    pub fn divisor(&self, params: &ParamSpace) -> Result<CuspidalDivisor> {
        match *self {
            GeneratorCombo::Single(i) => generator(params, i),
            GeneratorCombo::MinusQNext(i) => {
                let a = generator(params, i)?;
                let b = generator(params, i + 1)?;
                Ok(a.add_scaled(&-params.q_int(), &b))
            }
        }
    }

    /// Human-readable label, with `q` kept symbolic: `C2`, `(C3-qC4)`.
    pub fn label(&self) -> String {
        match *self {
            GeneratorCombo::Single(i) => format!("C{i}"),
            GeneratorCombo::MinusQNext(i) => format!("(C{i}-qC{})", i + 1),
        }
    }
}

/// One certified cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureFactor {
    pub combo: GeneratorCombo,
    /// Whether the generator carries a `(q-1)` prefactor.
    pub q_minus_one: bool,
    pub order: Int,
}

impl StructureFactor {
    pub fn label(&self) -> String {
        if self.q_minus_one {
            format!("(q-1){}", self.combo.label())
        } else {
            self.combo.label()
        }
    }
}

/// The certified decomposition of `C(T^r)^{(q-1)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupStructure {
    params: ParamSpace,
    factors: Vec<StructureFactor>,
}

impl GroupStructure {
    pub fn params(&self) -> &ParamSpace {
        &self.params
    }

    pub fn factors(&self) -> &[StructureFactor] {
        &self.factors
    }
}

/// The matrix of cochain evaluations `r(g(generator_t))(e(j+2, 0))` used to
/// certify the lower bounds and the independence of the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationMatrix {
    params: ParamSpace,
    rows: Vec<GeneratorCombo>,
    cols: Vec<TreeEdge>,
    entries: Vec<Vec<Rat>>,
}

impl EvaluationMatrix {
    pub fn params(&self) -> &ParamSpace {
        &self.params
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn row_labels(&self) -> &[GeneratorCombo] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[TreeEdge] {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Rat>] {
        &self.entries
    }
}

fn require_structure_params(params: &ParamSpace, min_r: u32) -> Result<()> {
    params.require_t_level("structure computations")?;
    if params.r() < min_r {
        return Err(Error::InvalidR {
            detail: format!("needs r >= {min_r}, got {}", params.r()),
        });
    }
    Ok(())
}

/// Closed-form integer exponent vector of `q^{r-1}(q^2-1)(q-1) * g(C_i)` at
/// `T`-level, `r >= 4`, `1 <= i <= r-1`.
///
/// Three cases with `m = min(i, r-i)`:
///
/// ```text
/// i < r-2 : -q^m at T^{i-1}, T^{i+1};  q^{m-1}(q^2+1) at T^i;
///           q^{m-1}(q-1) at T^{r-1};  -q^m(q-1) at T^r
/// i = r-2 : (-q^2, q^3+q, -q, -q^3+q^2) at T^{r-3}..T^r
/// i = r-1 : (-q, q^2+q, -q^2) at T^{r-2}..T^r
/// ```
pub fn scaled_generator_exponents(params: &ParamSpace, i: u32) -> Result<Vec<Int>> {
    require_structure_params(params, 4)?;
    let r = params.r();
    if i < 1 || i > r - 1 {
        return Err(Error::IndexOutOfRange {
            index: i as u64,
            max: (r - 1) as u64,
        });
    }
    let q = params.q_int();
    let mut v = vec![Int::zero(); r as usize + 1];
    if i < r - 2 {
        let m = i.min(r - i);
        let qm = params.q_pow(m);
        v[i as usize - 1] = -&qm;
        v[i as usize + 1] = -&qm;
        v[i as usize] = params.q_pow(m - 1) * (params.q_pow(2) + 1);
        let q_minus_1: Int = &q - 1;
        v[r as usize - 1] = params.q_pow(m - 1) * &q_minus_1;
        v[r as usize] = -(&qm * &q_minus_1);
    } else if i == r - 2 {
        v[r as usize - 3] = -params.q_pow(2);
        v[r as usize - 2] = params.q_pow(3) + &q;
        v[r as usize - 1] = -&q;
        v[r as usize] = -params.q_pow(3) + params.q_pow(2);
    } else {
        v[r as usize - 2] = -&q;
        v[r as usize - 1] = params.q_pow(2) + &q;
        v[r as usize] = -params.q_pow(2);
    }
    Ok(v)
}

/// Root-lemma upper bounds on generator orders at `T`-level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBounds {
    /// `ord(C_0)`, exactly `q^{r-1}`.
    pub c0: Int,
    /// `(i, b)` with `ord(C_i) | b`, for `1 <= i <= r-1`. Only populated for
    /// `r >= 4`, where the quotient factorizations behind them exist.
    pub singles: Vec<(u32, Int)>,
    /// `(i, b)` with `ord(C_i - q C_{i+1}) | b`, for
    /// `floor((r+1)/2) <= i <= r-2`.
    pub pairs: Vec<(u32, Int)>,
}

/// Divisibility bounds for the generator orders:
/// `ord(C_0) = q^{r-1}`; `ord(C_i) | q^{r-min(i, r-i)}(q-1)` for
/// `1 <= i < r-2`; `ord(C_{r-2}), ord(C_{r-1}) | q^{r-2}(q-1)`; and
/// `ord(C_i - q C_{i+1}) | q^i (q-1)` on the second family.
///
/// The per-generator bounds come from the `r >= 4` quotient factorizations,
/// so for `r = 3` only the `C_0` entry is returned. (The naive `r = 3`
/// extension would be wrong: in `C(T^3)` the order of `C_1` is `q^2`, which
/// does not divide `q(q-1)`.)
pub fn structure_upper_bounds(params: &ParamSpace) -> Result<UpperBounds> {
    require_structure_params(params, 3)?;
    let r = params.r();
    let q = params.q_int();
    let c0 = params.q_pow(r - 1);
    let mut singles = Vec::new();
    let mut pairs = Vec::new();
    if r >= 4 {
        for i in 1..=r - 1 {
            let bound = if i < r - 2 {
                let m = i.min(r - i);
                params.q_pow(r - m) * (&q - 1)
            } else {
                params.q_pow(r - 2) * (&q - 1)
            };
            singles.push((i, bound));
        }
        for i in (r + 1) / 2..=r - 2 {
            pairs.push((i, params.q_pow(i) * (&q - 1)));
        }
    }
    Ok(UpperBounds { c0, singles, pairs })
}

/// The basis of `C(T^r)^{(q-1)}`, in evaluation-matrix row order:
/// `C_0`, then `C_2..C_m`, then `C_{m+1}-qC_{m+2} .. C_{r-2}-qC_{r-1}`.
pub fn basis_combos(params: &ParamSpace) -> Result<Vec<GeneratorCombo>> {
    require_structure_params(params, 3)?;
    let r = params.r();
    let m = (r - 1) / 2;
    let mut rows = vec![GeneratorCombo::Single(0)];
    for i in 2..=m {
        rows.push(GeneratorCombo::Single(i));
    }
    for i in m + 1..=r - 2 {
        rows.push(GeneratorCombo::MinusQNext(i));
    }
    Ok(rows)
}

/// Build the `(r-2) x (r-2)` evaluation matrix with rows the basis combos
/// and columns the axis edges `e(j+2, 0)`, `j = 0..r-3`.
pub fn evaluation_matrix(params: &ParamSpace) -> Result<EvaluationMatrix> {
    require_structure_params(params, 3)?;
    let r = params.r();
    let rows = basis_combos(params)?;
    let cols: Vec<TreeEdge> = (0..=r as i64 - 3).map(|j| TreeEdge::axis(j + 2)).collect();
    let mut entries = Vec::with_capacity(rows.len());
    for combo in &rows {
        let image = g_map(&combo.divisor(params)?)?;
        let mut row = Vec::with_capacity(cols.len());
        for edge in &cols {
            row.push(eval_quotient(&image, edge)?);
        }
        entries.push(row);
    }
    Ok(EvaluationMatrix {
        params: params.clone(),
        rows,
        cols,
        entries,
    })
}

/// Expected diagonal entry `(t, t)` of the evaluation matrix, in closed
/// form; with `m = floor((r-1)/2)`:
///
/// ```text
/// t = 0         : (q^{r-1} - q^{r-2} + q^2 - 2q + 1) / q^{r-1}
/// 1 <= t < m    : (q^{r-t-1} - q^{r-t-2} - q + 1) / q^{r-t-1}
/// m <= t <= r-3 : (1 - q) / q^{t+1}
/// ```
pub fn expected_diagonal(params: &ParamSpace, t: u32) -> Rat {
    let r = params.r();
    let m = (r - 1) / 2;
    let q = params.q_int();
    if t == 0 {
        ratio(
            params.q_pow(r - 1) - params.q_pow(r - 2) + params.q_pow(2) - 2 * &q + 1,
            params.q_pow(r - 1),
        )
    } else if t < m {
        ratio(
            params.q_pow(r - t - 1) - params.q_pow(r - t - 2) - &q + 1,
            params.q_pow(r - t - 1),
        )
    } else {
        ratio(Int::one() - &q, params.q_pow(t + 1))
    }
}

/// Expected below-diagonal entry `(t, j)`, `j < t`: `q^{t-j-1}(q-1)` in the
/// first family (`1 <= t < m`), zero under the second family (`t >= m`).
pub fn expected_below_diagonal(params: &ParamSpace, t: u32, j: u32) -> Rat {
    debug_assert!(j < t);
    let m = (params.r() - 1) / 2;
    if t < m {
        Rat::from_integer(params.q_pow(t - j - 1) * (params.q_int() - 1))
    } else {
        Rat::zero()
    }
}

/// Compute and certify the decomposition of `C(T^r)^{(q-1)}`, `r >= 3`.
///
/// Certification per factor: the diagonal denominator of the evaluation
/// matrix equals the claimed order (lower bound) and the stripped root-lemma
/// bound equals it as well (upper bound); triangular integrality and the
/// zero block are rechecked; every order must be a power of the
/// characteristic. Any violation is a `CertificationFailure`.
pub fn group_structure(params: &ParamSpace) -> Result<GroupStructure> {
    require_structure_params(params, 3)?;
    let r = params.r();
    let m = (r - 1) / 2;
    let matrix = evaluation_matrix(params)?;
    let bounds = structure_upper_bounds(params)?;

    // Claimed orders in row order: q^{r-1}; q^{r-i} for the C_i family;
    // q^i for the pair family.
    let mut claimed: Vec<(GeneratorCombo, bool, Int)> =
        vec![(GeneratorCombo::Single(0), false, params.q_pow(r - 1))];
    for i in 2..=m {
        claimed.push((GeneratorCombo::Single(i), true, params.q_pow(r - i)));
    }
    for i in m + 1..=r - 2 {
        claimed.push((GeneratorCombo::MinusQNext(i), true, params.q_pow(i)));
    }
    assert_eq!(claimed.len(), matrix.size());
    assert_eq!(claimed.len(), r as usize - 2);

    // Lower bounds: diagonal denominators.
    for (t, (combo, _, order)) in claimed.iter().enumerate() {
        let den = denominator_of(matrix.entry(t, t));
        if den != *order {
            return Err(Error::CertificationFailure {
                detail: format!(
                    "diagonal denominator {den} at row {t} ({}) differs from claimed order {order}",
                    combo.label()
                ),
            });
        }
    }

    // Upper bounds: stripped root-lemma bounds must equal the claims.
    for (t, (combo, _, order)) in claimed.iter().enumerate() {
        let stripped = match *combo {
            GeneratorCombo::Single(0) => {
                let b = order_zero_infty(params);
                match b.exact() {
                    Some(v) => v.clone(),
                    None => {
                        return Err(Error::CertificationFailure {
                            detail: "order of C0 not exact at T-level".into(),
                        })
                    }
                }
            }
            GeneratorCombo::Single(i) => {
                let (_, bound) = bounds
                    .singles
                    .iter()
                    .find(|(k, _)| *k == i)
                    .expect("bound for C_i exists for r >= 4");
                strip_q_minus_one(params, bound)
            }
            GeneratorCombo::MinusQNext(i) => {
                let (_, bound) = bounds
                    .pairs
                    .iter()
                    .find(|(k, _)| *k == i)
                    .expect("bound for pair exists for r >= 4");
                strip_q_minus_one(params, bound)
            }
        };
        if stripped != *order {
            return Err(Error::CertificationFailure {
                detail: format!(
                    "stripped upper bound {stripped} at row {t} ({}) differs from claimed \
                     order {order}",
                    combo.label()
                ),
            });
        }
        if !is_char_power(params, order) {
            return Err(Error::CertificationFailure {
                detail: format!(
                    "order {order} is not a power of char p = {}",
                    params.char_p()
                ),
            });
        }
    }

    // Triangular shape: integral below the diagonal, zero block under the
    // second family.
    for t in 1..matrix.size() {
        for j in 0..t {
            let e = matrix.entry(t, j);
            if !e.denom().is_one() {
                return Err(Error::CertificationFailure {
                    detail: format!("below-diagonal entry ({t},{j}) = {e} is not integral"),
                });
            }
            if t >= m as usize && !e.is_zero() {
                return Err(Error::CertificationFailure {
                    detail: format!("entry ({t},{j}) = {e} violates the zero block"),
                });
            }
        }
    }

    let factors = claimed
        .into_iter()
        .map(|(combo, q_minus_one, order)| StructureFactor {
            combo,
            q_minus_one,
            order,
        })
        .collect();
    Ok(GroupStructure {
        params: params.clone(),
        factors,
    })
}

/// `bound / (q-1)` for bounds of the shape `q^e (q-1)`: the order of
/// `(q-1) X` divides the `q`-part when `ord(X)` divides the bound.
fn strip_q_minus_one(params: &ParamSpace, bound: &Int) -> Int {
    exact_div(bound, &(params.q_int() - 1))
}

fn is_char_power(params: &ParamSpace, n: &Int) -> bool {
    let p = int(params.char_p() as i64);
    let mut n = n.clone();
    while n > Int::one() {
        if !divides(&p, &n) {
            return false;
        }
        n = exact_div(&n, &p);
    }
    n.is_one()
}

/// Closed-form integer vector of `(q^2-1)(q-1) * g(D_1)`, `r >= 4`:
/// exponents `-q` on `Delta`, `1` on `Delta_T` and `Delta_{T^{r-2}}`,
/// `-1` on `Delta_{T^{r-1}}`, `q-1` on `Delta_{T^r}`.
pub fn d1_image_closed_form(params: &ParamSpace) -> Result<Vec<Int>> {
    require_structure_params(params, 4)?;
    let r = params.r() as usize;
    let q = params.q_int();
    let mut v = vec![Int::zero(); r + 1];
    v[0] = -&q;
    v[1] += Int::one();
    v[r - 2] += Int::one();
    v[r - 1] += -Int::one();
    v[r] += &q - 1;
    Ok(v)
}

/// Closed-form integer vector of `(q^2-1)(q-1) * g(D_{r-1})`, `r >= 4`,
/// in five cases on `r`:
///
/// ```text
/// r = 4       : (q-1, -q, q^2+1, -q^2, 0)
/// r = 5       : (q-1, 0, -q, q+1, -q, 0)
/// r = 6       : (q-1, 0, -2q+1, q^2+q, -q^2, 0, 0)
/// odd  r >= 7 : q-1 at 0, -q+1 at 2, -1 at (r-1)/2, q+1 at (r+1)/2, -q at (r+3)/2
/// even r >= 8 : q-1 at 0, -q+1 at 2, -q at (r-2)/2, q^2+q at r/2, -q^2 at (r+2)/2
/// ```
pub fn dlast_image_closed_form(params: &ParamSpace) -> Result<Vec<Int>> {
    require_structure_params(params, 4)?;
    let r = params.r();
    let q = params.q_int();
    let mut v = vec![Int::zero(); r as usize + 1];
    match r {
        4 => {
            v[0] = &q - 1;
            v[1] = -&q;
            v[2] = params.q_pow(2) + 1;
            v[3] = -params.q_pow(2);
        }
        5 => {
            v[0] = &q - 1;
            v[2] = -&q;
            v[3] = &q + 1;
            v[4] = -&q;
        }
        6 => {
            v[0] = &q - 1;
            v[2] = -2 * &q + 1;
            v[3] = params.q_pow(2) + &q;
            v[4] = -params.q_pow(2);
        }
        _ if r % 2 == 1 => {
            v[0] = &q - 1;
            v[2] = Int::one() - &q;
            v[(r as usize - 1) / 2] += -Int::one();
            v[(r as usize + 1) / 2] += &q + 1;
            v[(r as usize + 3) / 2] += -&q;
        }
        _ => {
            v[0] = &q - 1;
            v[2] = Int::one() - &q;
            v[(r as usize - 2) / 2] += -&q;
            v[r as usize / 2] += params.q_pow(2) + &q;
            v[(r as usize + 2) / 2] += -params.q_pow(2);
        }
    }
    Ok(v)
}

/// One comparison in the `T^5` walkthrough.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T5Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

/// Result of re-deriving the whole `T^5` worked example at a given `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T5Report {
    pub q: u64,
    pub checks: Vec<T5Check>,
}

impl T5Report {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_mismatch(&self) -> Option<&T5Check> {
        self.checks.iter().find(|c| !c.pass)
    }
}

/// Recompute the `T^5` example end to end at the given `q` and compare
/// against the closed forms: both 5x5 matrices of values
/// `r(g(C_i))(e(j+2,0))` and `r(g(D_i))(e(j+2,0))`, and the five `g(D_i)`
/// exponent vectors.
pub fn verify_t5_example(q: u64) -> Result<T5Report> {
    let params = ParamSpace::new(q, 1, 5)?;
    let qi = params.q_int();
    let mut checks = Vec::new();

    let c_combos: Vec<CuspidalDivisor> = (0..5).map(|i| generator(&params, i).unwrap()).collect();

    // D_0 = C_0, D_1 = C_1 - (q^3+q^2+q+1) C_0 + C_2 + q C_3, D_2 = C_2,
    // D_3 = C_3 - q C_4, D_4 = C_4 + q^3 C_0 - (q^2-q) C_2
    //       + (q^2-q+1)(C_3 - q C_4).
    let geometric: Int = params.q_pow(3) + params.q_pow(2) + &qi + 1;
    let d1 = c_combos[1]
        .add_scaled(&-geometric, &c_combos[0])
        .add_scaled(&Int::one(), &c_combos[2])
        .add_scaled(&qi, &c_combos[3]);
    let d3 = c_combos[3].add_scaled(&-&qi, &c_combos[4]);
    let d4 = c_combos[4]
        .add_scaled(&params.q_pow(3), &c_combos[0])
        .add_scaled(&-(params.q_pow(2) - &qi), &c_combos[2])
        .add_scaled(&(params.q_pow(2) - &qi + 1), &d3);
    let d_combos = vec![c_combos[0].clone(), d1, c_combos[2].clone(), d3, d4];

    let expected_c = t5_expected_c_matrix(&params);
    let expected_d = t5_expected_d_matrix(&params);
    for (tag, combos, expected) in [("C", &c_combos, &expected_c), ("D", &d_combos, &expected_d)] {
        for (i, divisor) in combos.iter().enumerate() {
            let image = g_map(divisor)?;
            for (j, exp) in expected[i].iter().enumerate() {
                let got = eval_quotient(&image, &TreeEdge::axis(j as i64 + 2))?;
                checks.push(T5Check {
                    name: format!("{tag}-matrix ({i},{j})"),
                    expected: exp.to_string(),
                    got: got.to_string(),
                    pass: got == *exp,
                });
            }
        }
    }

    // The five g(D_i) exponent vectors, as (integer vector, scale) pairs.
    let q2m1: Int = params.q_pow(2) - 1;
    let qm1: Int = &qi - 1;
    let expected_exponents: [(Vec<Int>, Int); 5] = [
        (
            vec![
                qi.clone(),
                -Int::one(),
                Int::zero(),
                Int::zero(),
                Int::one(),
                -&qi,
            ],
            params.q_pow(4) * &q2m1,
        ),
        (
            vec![
                -&qi,
                Int::one(),
                Int::zero(),
                Int::one(),
                -Int::one(),
                qm1.clone(),
            ],
            &q2m1 * &qm1,
        ),
        (
            vec![
                Int::zero(),
                -&qi,
                params.q_pow(2) + 1,
                -&qi,
                qm1.clone(),
                &qi - params.q_pow(2),
            ],
            params.q_pow(3) * &q2m1 * &qm1,
        ),
        (
            vec![
                Int::zero(),
                Int::zero(),
                -&qi,
                params.q_pow(2) + &qi + 1,
                -params.q_pow(2) - &qi - 1,
                qi.clone(),
            ],
            params.q_pow(3) * &q2m1 * &qm1,
        ),
        (
            vec![qm1.clone(), Int::zero(), -&qi, &qi + 1, -&qi, Int::zero()],
            &q2m1 * &qm1,
        ),
    ];
    for (i, (vector, scale)) in expected_exponents.iter().enumerate() {
        let expected: Vec<Rat> = vector
            .iter()
            .map(|n| ratio(n.clone(), scale.clone()))
            .collect();
        let got = g_map(&d_combos[i])?;
        checks.push(T5Check {
            name: format!("g(D{i}) exponents"),
            expected: format!("{vector:?} / {scale}"),
            got: format!("{:?}", got.exponents()),
            pass: got.exponents() == expected.as_slice(),
        });
    }

    Ok(T5Report { q, checks })
}

fn t5_expected_c_matrix(params: &ParamSpace) -> Vec<Vec<Rat>> {
    let q = params.q_int();
    let p = |e: u32| params.q_pow(e);
    let row0 = vec![
        ratio(p(4) - p(3) + p(2) - 2 * &q + 1, p(4)),
        ratio(2 * p(3) - 2 * p(2) - &q + 1, p(4)),
        ratio(p(4) - p(3) + p(2) - 2 * &q + 1, p(4)),
        Rat::from_integer(&q - 1),
        Rat::from_integer(p(2) - &q),
    ];
    let row1 = vec![
        ratio(p(4) - p(3) - &q + 1, p(4)),
        ratio(p(3) - p(2) - &q + 1, p(4)),
        ratio(p(2) - 2 * &q + 1, p(4)),
        Rat::zero(),
        Rat::zero(),
    ];
    let row2 = vec![
        Rat::from_integer(&q - 1),
        ratio(p(3) - p(2) - &q + 1, p(3)),
        ratio(p(2) - 2 * &q + 1, p(3)),
        Rat::zero(),
        Rat::zero(),
    ];
    let row3 = vec![
        Rat::from_integer(&q - 1),
        ratio(&q - 1, q.clone()),
        ratio(p(2) - 2 * &q + 1, p(3)),
        Rat::zero(),
        Rat::zero(),
    ];
    let row4 = vec![
        ratio(&q - 1, q.clone()),
        ratio(&q - 1, p(2)),
        ratio(&q - 1, p(3)),
        Rat::zero(),
        Rat::zero(),
    ];
    vec![row0, row1, row2, row3, row4]
}

fn t5_expected_d_matrix(params: &ParamSpace) -> Vec<Vec<Rat>> {
    let q = params.q_int();
    let p = |e: u32| params.q_pow(e);
    let c = t5_expected_c_matrix(params);
    let row1 = vec![
        Rat::from_integer(-p(3) + p(2) - &q + 1),
        Rat::from_integer(-2 * p(2) + &q + 1),
        Rat::from_integer(-p(3) - &q + 2),
        Rat::from_integer(-p(4) + 1),
        Rat::from_integer(-p(5) + &q),
    ];
    let row3 = vec![
        Rat::zero(),
        Rat::zero(),
        ratio(Int::one() - &q, p(3)),
        Rat::zero(),
        Rat::zero(),
    ];
    let row4 = vec![
        Rat::from_integer(p(2) - 1),
        Rat::from_integer(p(2) - 1),
        Rat::from_integer(p(3) - p(2)),
        Rat::from_integer(p(4) - p(3)),
        Rat::from_integer(p(5) - p(4)),
    ];
    vec![c[0].clone(), row1, c[2].clone(), row3, row4]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisors::{redundancy_witness, Witness};
    use crate::etaquot::generator_exponent_scale;

    fn params(q: u64, r: u32) -> ParamSpace {
        ParamSpace::new(q, 1, r).unwrap()
    }

    #[test]
    fn scaled_exponents_match_g_map() {
        for q in [2u64, 3, 5] {
            for r in 4..=8 {
                let p = params(q, r);
                let scale = generator_exponent_scale(&p);
                for i in 1..=r - 1 {
                    let closed = scaled_generator_exponents(&p, i).unwrap();
                    let via_g = g_map(&generator(&p, i).unwrap())
                        .unwrap()
                        .scale(&scale)
                        .integer_exponents()
                        .expect("scaled image is integral");
                    assert_eq!(closed, via_g, "q={q} r={r} i={i}");
                }
            }
        }
    }

    #[test]
    fn scaled_exponents_case_shapes() {
        // i < r-2 at (q=2, r=5, i=2): (0, -4, 10, -4, 2, -4).
        let v = scaled_generator_exponents(&params(2, 5), 2).unwrap();
        assert_eq!(v, vec![int(0), int(-4), int(10), int(-4), int(2), int(-4)]);
        // i = r-1: (-q, q^2+q, -q^2) tail.
        let v = scaled_generator_exponents(&params(3, 5), 4).unwrap();
        assert_eq!(v, vec![int(0), int(0), int(0), int(-3), int(12), int(-9)]);
    }

    #[test]
    fn upper_bounds_examples() {
        // (q=2, r=5): ord(C_2) | q^3 (q-1) = 8.
        let b = structure_upper_bounds(&params(2, 5)).unwrap();
        assert_eq!(b.singles.iter().find(|(i, _)| *i == 2).unwrap().1, int(8));
        // (q=3, r=4): ord(C_2 - 3 C_3) | q^2 (q-1) = 18.
        let b = structure_upper_bounds(&params(3, 4)).unwrap();
        assert_eq!(b.pairs.iter().find(|(i, _)| *i == 2).unwrap().1, int(18));
        // (q=2, r=4): ord(C_3) | q^2 (q-1) = 4.
        let b = structure_upper_bounds(&params(2, 4)).unwrap();
        assert_eq!(b.singles.iter().find(|(i, _)| *i == 3).unwrap().1, int(4));
        // r = 3 keeps only the C_0 bound.
        let b = structure_upper_bounds(&params(2, 3)).unwrap();
        assert_eq!(b.c0, int(4));
        assert!(b.singles.is_empty() && b.pairs.is_empty());
    }

    #[test]
    fn evaluation_matrix_q2_r5() {
        let m = evaluation_matrix(&params(2, 5)).unwrap();
        assert_eq!(m.size(), 3);
        // Diagonal (9/16, 3/8, -1/8).
        assert_eq!(*m.entry(0, 0), ratio(int(9), int(16)));
        assert_eq!(*m.entry(1, 1), ratio(int(3), int(8)));
        assert_eq!(*m.entry(2, 2), ratio(int(-1), int(8)));
        // Diagonal denominators are the claimed orders.
        assert_eq!(denominator_of(m.entry(0, 0)), int(16));
        // Below diagonal integral; zero block under the second family.
        assert_eq!(*m.entry(1, 0), Rat::from_integer(int(1)));
        assert!(m.entry(2, 0).is_zero());
        assert!(m.entry(2, 1).is_zero());
    }

    #[test]
    fn evaluation_matrix_matches_closed_forms() {
        for q in [2u64, 3, 4] {
            for r in 3..=8 {
                let p = params(q, r);
                let m = evaluation_matrix(&p).unwrap();
                for t in 0..m.size() as u32 {
                    assert_eq!(
                        *m.entry(t as usize, t as usize),
                        expected_diagonal(&p, t),
                        "diag q={q} r={r} t={t}"
                    );
                    for j in 0..t {
                        assert_eq!(
                            *m.entry(t as usize, j as usize),
                            expected_below_diagonal(&p, t, j),
                            "below q={q} r={r} t={t} j={j}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn group_structure_q2_r5() {
        let g = group_structure(&params(2, 5)).unwrap();
        let orders: Vec<Int> = g.factors().iter().map(|f| f.order.clone()).collect();
        assert_eq!(orders, vec![int(16), int(8), int(8)]);
        let labels: Vec<String> = g.factors().iter().map(|f| f.label()).collect();
        assert_eq!(labels, vec!["C0", "(q-1)C2", "(q-1)(C3-qC4)"]);
    }

    #[test]
    fn group_structure_r3_single_factor() {
        let g = group_structure(&params(2, 3)).unwrap();
        assert_eq!(g.factors().len(), 1);
        assert_eq!(g.factors()[0].order, int(4));
        assert_eq!(g.factors()[0].label(), "C0");
    }

    #[test]
    fn group_structure_q3_r4() {
        let g = group_structure(&params(3, 4)).unwrap();
        let orders: Vec<Int> = g.factors().iter().map(|f| f.order.clone()).collect();
        assert_eq!(orders, vec![int(27), int(9)]);
        assert_eq!(g.factors()[1].label(), "(q-1)(C2-qC3)");
    }

    #[test]
    fn factor_count_and_order_product() {
        for q in [2u64, 3] {
            for r in 3..=9u32 {
                let p = params(q, r);
                let g = group_structure(&p).unwrap();
                assert_eq!(g.factors().len(), r as usize - 2);
                let m = (r - 1) / 2;
                let mut exponent = r - 1;
                for i in 2..=m {
                    exponent += r - i;
                }
                for i in m + 1..=r - 2 {
                    exponent += i;
                }
                let product: Int = g.factors().iter().map(|f| f.order.clone()).product();
                assert_eq!(product, p.q_pow(exponent), "q={q} r={r}");
            }
        }
    }

    #[test]
    fn witness_images_match_closed_forms() {
        for q in [2u64, 3] {
            for r in 4..=10u32 {
                let p = params(q, r);
                let scale: Int = (p.q_pow(2) - 1) * (p.q_int() - 1);
                let d1 = g_map(&redundancy_witness(&p, Witness::D1).unwrap())
                    .unwrap()
                    .scale(&scale)
                    .integer_exponents()
                    .expect("integral");
                assert_eq!(d1, d1_image_closed_form(&p).unwrap(), "D1 q={q} r={r}");
                let dlast = g_map(&redundancy_witness(&p, Witness::DLast).unwrap())
                    .unwrap()
                    .scale(&scale)
                    .integer_exponents()
                    .expect("integral");
                assert_eq!(
                    dlast,
                    dlast_image_closed_form(&p).unwrap(),
                    "Dlast q={q} r={r}"
                );
            }
        }
    }

    #[test]
    fn witness_images_have_no_q_part() {
        // The (q^2-1)(q-1)-scaled witness images are integral, so every
        // cochain denominator of g(D) divides (q^2-1)(q-1): no q-power
        // survives in the order of D, matching ord((q-1)D) = 1.
        for q in [2u64, 3] {
            for r in 4..=8u32 {
                let p = params(q, r);
                let scale: Int = (p.q_pow(2) - 1) * (p.q_int() - 1);
                for w in [Witness::D1, Witness::DLast] {
                    let image = g_map(&redundancy_witness(&p, w).unwrap()).unwrap();
                    for j in 0..=r as i64 - 3 {
                        let v = eval_quotient(&image, &TreeEdge::axis(j + 2)).unwrap();
                        assert!(divides(&denominator_of(&v), &scale));
                    }
                }
            }
        }
    }

    #[test]
    fn t5_example_passes() {
        for q in [2u64, 3] {
            let report = verify_t5_example(q).unwrap();
            assert!(
                report.pass(),
                "first mismatch: {:?}",
                report.first_mismatch()
            );
            assert_eq!(report.checks.len(), 55);
        }
    }

    #[test]
    fn t5_spot_values_at_q2() {
        let report = verify_t5_example(2).unwrap();
        // C-matrix (4,0) = (q-1)/q = 1/2.
        let check = report
            .checks
            .iter()
            .find(|c| c.name == "C-matrix (4,0)")
            .unwrap();
        assert!(check.pass);
        assert_eq!(check.got, "1/2");
        // g(D3) exponents (0,0,-2,7,-7,2)/24.
        let check = report
            .checks
            .iter()
            .find(|c| c.name == "g(D3) exponents")
            .unwrap();
        assert!(check.pass);
        assert!(check.expected.contains("24"));
    }

    #[test]
    fn structure_rejects_bad_params() {
        assert_eq!(
            group_structure(&ParamSpace::new(2, 2, 5).unwrap())
                .unwrap_err()
                .name(),
            "UnsupportedLevel"
        );
        assert_eq!(
            group_structure(&params(2, 2)).unwrap_err().name(),
            "InvalidR"
        );
    }
}
