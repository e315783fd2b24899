//! Structured output documents for the command-line front end.
//!
//! Big integers always serialize as decimal strings (they overflow float
//! mantissas immediately); rationals as `{"num": "...", "den": "..."}` in
//! lowest terms with a positive denominator. JSON key order follows struct
//! declaration order, so output is deterministic for identical inputs.
//! Interval orders always carry both bound fields and omit `exact` entirely
//! when it is unset, never emitting `null`.

use serde::{Deserialize, Serialize};

use crate::orders::OrderBound;
use crate::rational::{Int, Rat};
use crate::structure::{GroupStructure, T5Report};

/// A rational in wire form: decimal-string numerator and positive
/// decimal-string denominator, lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&Rat> for RationalRepr {
    fn from(x: &Rat) -> Self {
        RationalRepr {
            num: x.numer().to_string(),
            den: x.denom().to_string(),
        }
    }
}

impl RationalRepr {
    /// Parse back into an exact rational; the round trip is lossless.
    pub fn to_rat(&self) -> Option<Rat> {
        let num: Int = self.num.parse().ok()?;
        let den: Int = self.den.parse().ok()?;
        if den <= Int::from(0) {
            return None;
        }
        Some(Rat::new(num, den))
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum MatrixEntries {
    /// Integer matrix, decimal strings.
    Integer(Vec<Vec<String>>),
    /// Rational matrix.
    Rational(Vec<Vec<RationalRepr>>),
}

#[derive(Debug, Clone, Serialize)]
pub struct LambdaReport {
    /// `"transpose"` or `"inverse"`.
    pub matrix: String,
    pub entries: MatrixEntries,
}

#[derive(Debug, Clone, Serialize)]
pub struct GMapReport {
    pub exponents: Vec<RationalRepr>,
    pub min_integral_multiple: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CochainReport {
    pub height: u32,
    pub edge: String,
    pub value: RationalRepr,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    pub lower: String,
    pub upper: String,
}

impl From<&OrderBound> for OrderReport {
    fn from(b: &OrderBound) -> Self {
        OrderReport {
            exact: b.exact().map(|x| x.to_string()),
            lower: b.lower().to_string(),
            upper: b.upper().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureFactorReport {
    pub generator: String,
    pub order: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub factors: Vec<StructureFactorReport>,
}

impl From<&GroupStructure> for StructureReport {
    fn from(g: &GroupStructure) -> Self {
        StructureReport {
            factors: g
                .factors()
                .iter()
                .map(|f| StructureFactorReport {
                    generator: f.label(),
                    order: f.order.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfTestReport {
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

impl From<&T5Report> for SelfTestReport {
    fn from(r: &T5Report) -> Self {
        SelfTestReport {
            pass: r.pass(),
            checks: r
                .checks
                .iter()
                .map(|c| CheckReport {
                    name: c.name.clone(),
                    pass: c.pass,
                    detail: if c.pass {
                        None
                    } else {
                        Some(format!("expected {}, got {}", c.expected, c.got))
                    },
                })
                .collect(),
        }
    }
}

/// One output document per CLI invocation.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum OutputDocument {
    Lambda(LambdaReport),
    GMap(GMapReport),
    Cochain(CochainReport),
    Order(OrderReport),
    Structure(StructureReport),
    SelfTest(SelfTestReport),
}

impl OutputDocument {
    /// Whether the document reports a fully successful computation; only
    /// check-carrying documents can be unsuccessful.
    pub fn success(&self) -> bool {
        match self {
            OutputDocument::SelfTest(r) => r.pass,
            _ => true,
        }
    }

    /// Compact deterministic JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    /// Plain-text table rendering.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        match self {
            OutputDocument::Lambda(r) => match &r.entries {
                MatrixEntries::Integer(rows) => {
                    for row in rows {
                        out.push_str(&row.join(" "));
                        out.push('\n');
                    }
                }
                MatrixEntries::Rational(rows) => {
                    for row in rows {
                        let cells: Vec<String> = row.iter().map(render_fraction).collect();
                        out.push_str(&cells.join(" "));
                        out.push('\n');
                    }
                }
            },
            OutputDocument::GMap(r) => {
                for (i, e) in r.exponents.iter().enumerate() {
                    out.push_str(&format!("r_{i}: {}\n", render_fraction(e)));
                }
                out.push_str(&format!(
                    "min integral multiple: {}\n",
                    r.min_integral_multiple
                ));
            }
            OutputDocument::Cochain(r) => {
                out.push_str(&format!(
                    "r(Delta_{{p^{}}})({}) = {}\n",
                    r.height,
                    r.edge,
                    render_fraction(&r.value)
                ));
            }
            OutputDocument::Order(r) => match &r.exact {
                Some(v) => out.push_str(&format!("exact: {v}\n")),
                None => {
                    out.push_str(&format!("lower: {}\nupper: {}\n", r.lower, r.upper));
                }
            },
            OutputDocument::Structure(r) => {
                for f in &r.factors {
                    out.push_str(&format!("{}: {}\n", f.generator, f.order));
                }
            }
            OutputDocument::SelfTest(r) => {
                for c in &r.checks {
                    let status = if c.pass { "PASS" } else { "FAIL" };
                    match &c.detail {
                        Some(d) => out.push_str(&format!("{status} {} ({d})\n", c.name)),
                        None => out.push_str(&format!("{status} {}\n", c.name)),
                    }
                }
                out.push_str(if r.pass {
                    "all checks passed\n"
                } else {
                    "FAILURES present\n"
                });
            }
        }
        out
    }
}

fn render_fraction(e: &RationalRepr) -> String {
    if e.den == "1" {
        e.num.clone()
    } else {
        format!("{}/{}", e.num, e.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    #[test]
    fn order_report_shapes() {
        let exact = OrderReport {
            exact: Some("8".into()),
            lower: "8".into(),
            upper: "8".into(),
        };
        assert_eq!(
            serde_json::to_string(&exact).unwrap(),
            r#"{"exact":"8","lower":"8","upper":"8"}"#
        );
        let interval = OrderReport {
            exact: None,
            lower: "4".into(),
            upper: "12".into(),
        };
        // `exact` omitted entirely, never null.
        assert_eq!(
            serde_json::to_string(&interval).unwrap(),
            r#"{"lower":"4","upper":"12"}"#
        );
    }

    #[test]
    fn rational_repr_round_trip() {
        let x = ratio(int(-21), int(12));
        let repr = RationalRepr::from(&x);
        assert_eq!(repr.num, "-7");
        assert_eq!(repr.den, "4");
        assert_eq!(repr.to_rat().unwrap(), x);
    }

    proptest! {
        #[test]
        fn rational_repr_round_trips(num in -1_000_000i64..1_000_000, den in 1i64..1_000_000) {
            let x = ratio(int(num), int(den));
            let repr = RationalRepr::from(&x);
            prop_assert_eq!(repr.to_rat().unwrap(), x.clone());
            // And via JSON text.
            let json = serde_json::to_string(&repr).unwrap();
            let back: RationalRepr = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back.to_rat().unwrap(), x);
        }
    }
}
