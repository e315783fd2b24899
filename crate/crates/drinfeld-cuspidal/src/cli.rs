//! Command-line front end.
//!
//! One subcommand per capability, dispatching straight into the library;
//! `--format json|table` selects the emission, `--out PATH` duplicates
//! stdout into a file. Exit status: 0 on success, 1 on a domain error (the
//! module error name is printed to stderr) or a failed check run, 2 on a
//! usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};

use crate::cochain::{delta_power_at_edge, TreeEdge};
use crate::divisors::CuspidalDivisor;
use crate::etaquot::g_map;
use crate::lambda::{build_inverse, build_transpose, MatrixKind};
use crate::orders::order_zero_infty;
use crate::params::ParamSpace;
use crate::rational::Int;
use crate::report::{
    CheckReport, CochainReport, GMapReport, LambdaReport, MatrixEntries, OrderReport,
    OutputDocument, RationalRepr, SelfTestReport, StructureReport,
};
use crate::selftest::{run_all, Grid};
use crate::structure::{group_structure, verify_t5_example};

#[derive(Debug, Parser)]
#[command(
    name = "drinfeld-cuspidal",
    version,
    about = "Exact orders and group structure of rational cuspidal divisor class groups \
             of Drinfeld modular curves X_0(p^r)"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Also write the output document to this path.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GridArg {
    Small,
    Full,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the matrix Lambda(n)^T, or its rational inverse.
    Lambda {
        #[arg(long)]
        q: u64,
        #[arg(long = "deg-p")]
        deg_p: u32,
        #[arg(long)]
        r: u32,
        /// Print Lambda(n)^{-1} instead of Lambda(n)^T.
        #[arg(long)]
        inverse: bool,
    },
    /// Map a degree-0 divisor through g, printing the exponent vector.
    Gmap {
        #[arg(long)]
        q: u64,
        #[arg(long = "deg-p")]
        deg_p: u32,
        #[arg(long)]
        r: u32,
        /// Comma-separated coefficients a_0,...,a_r of the height classes.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
    },
    /// Evaluate the harmonic cochain of Delta_{p^i} on one edge.
    CochainEval {
        #[arg(long)]
        q: u64,
        #[arg(long = "deg-p")]
        deg_p: u32,
        #[arg(long)]
        r: u32,
        /// Height index i in 0..=r.
        #[arg(long)]
        height: u32,
        /// Edge spec: `k,0` for e(k,0) or `k,pi` for e(k,pi^{k-1}).
        #[arg(long, allow_hyphen_values = true)]
        edge: String,
    },
    /// Order of [0]-[infinity] in C(p^r), exact or as a divisibility interval.
    Order {
        #[arg(long)]
        q: u64,
        #[arg(long = "deg-p")]
        deg_p: u32,
        #[arg(long)]
        r: u32,
    },
    /// Certified decomposition of the prime-to-(q-1) part of C(T^r).
    Structure {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
    },
    /// Re-derive the T^5 worked example at a chosen q.
    VerifyT5 {
        #[arg(long)]
        q: u64,
    },
    /// Run the golden corpus of acceptance checks.
    Selftest {
        #[arg(long, value_enum, default_value_t = GridArg::Small)]
        grid: GridArg,
    },
}

#[derive(Debug)]
enum Failure {
    Domain(crate::Error),
    Usage(String),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Domain(e)
    }
}

/// Parse and run; returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli.command) {
        Ok(doc) => {
            let rendered = match cli.format {
                Format::Json => {
                    let mut s = doc.to_json();
                    s.push('\n');
                    s
                }
                Format::Table => doc.to_table(),
            };
            print!("{rendered}");
            let _ = std::io::stdout().flush();
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &rendered) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 1;
                }
            }
            if doc.success() {
                0
            } else {
                1
            }
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            1
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            2
        }
    }
}

fn execute(command: &Command) -> Result<OutputDocument, Failure> {
    match command {
        Command::Lambda {
            q,
            deg_p,
            r,
            inverse,
        } => {
            let params = ParamSpace::new(*q, *deg_p, *r)?;
            let matrix = if *inverse {
                build_inverse(&params)
            } else {
                build_transpose(&params)
            };
            let entries = match matrix.kind() {
                MatrixKind::Transpose => MatrixEntries::Integer(
                    (0..matrix.size())
                        .map(|i| {
                            (0..matrix.size())
                                .map(|j| matrix.integer_entry(i, j).to_string())
                                .collect()
                        })
                        .collect(),
                ),
                MatrixKind::Inverse => MatrixEntries::Rational(
                    matrix
                        .entries()
                        .iter()
                        .map(|row| row.iter().map(RationalRepr::from).collect())
                        .collect(),
                ),
            };
            Ok(OutputDocument::Lambda(LambdaReport {
                matrix: if *inverse { "inverse" } else { "transpose" }.into(),
                entries,
            }))
        }
        Command::Gmap {
            q,
            deg_p,
            r,
            coeffs,
        } => {
            let params = ParamSpace::new(*q, *deg_p, *r)?;
            let parsed: Result<Vec<Int>, _> =
                coeffs.split(',').map(|s| s.trim().parse::<Int>()).collect();
            let parsed =
                parsed.map_err(|_| Failure::Usage(format!("--coeffs: cannot parse `{coeffs}`")))?;
            if parsed.len() != *r as usize + 1 {
                return Err(Failure::Usage(format!(
                    "--coeffs: expected {} values a_0,...,a_{r}, got {}",
                    *r as usize + 1,
                    parsed.len()
                )));
            }
            let divisor = CuspidalDivisor::new(params, parsed)?;
            let image = g_map(&divisor)?;
            Ok(OutputDocument::GMap(GMapReport {
                exponents: image.exponents().iter().map(RationalRepr::from).collect(),
                min_integral_multiple: image.min_integral_multiple().to_string(),
            }))
        }
        Command::CochainEval {
            q,
            deg_p,
            r,
            height,
            edge,
        } => {
            let params = ParamSpace::new(*q, *deg_p, *r)?;
            let edge = parse_edge(edge)?;
            let value = delta_power_at_edge(&params, *height, &edge)?;
            Ok(OutputDocument::Cochain(CochainReport {
                height: *height,
                edge: edge.to_string(),
                value: RationalRepr::from(&value),
            }))
        }
        Command::Order { q, deg_p, r } => {
            let params = ParamSpace::new(*q, *deg_p, *r)?;
            let bound = order_zero_infty(&params);
            Ok(OutputDocument::Order(OrderReport::from(&bound)))
        }
        Command::Structure { q, r } => {
            let params = ParamSpace::new(*q, 1, *r)?;
            let structure = group_structure(&params)?;
            Ok(OutputDocument::Structure(StructureReport::from(&structure)))
        }
        Command::VerifyT5 { q } => {
            let report = verify_t5_example(*q)?;
            Ok(OutputDocument::SelfTest(SelfTestReport::from(&report)))
        }
        Command::Selftest { grid } => {
            let grid = match grid {
                GridArg::Small => Grid::Small,
                GridArg::Full => Grid::Full,
            };
            let results = run_all(grid);
            let pass = results.iter().all(|r| r.pass);
            Ok(OutputDocument::SelfTest(SelfTestReport {
                pass,
                checks: results
                    .into_iter()
                    .map(|r| CheckReport {
                        name: r.name.to_string(),
                        pass: r.pass,
                        detail: Some(r.detail),
                    })
                    .collect(),
            }))
        }
    }
}

fn parse_edge(spec: &str) -> Result<TreeEdge, Failure> {
    let (k, u) = spec
        .split_once(',')
        .ok_or_else(|| Failure::Usage(format!("--edge: expected `k,0` or `k,pi`, got `{spec}`")))?;
    let k: i64 = k
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("--edge: cannot parse k in `{spec}`")))?;
    match u.trim() {
        "0" => Ok(TreeEdge::axis(k)),
        "pi" => Ok(TreeEdge::pi_type(k)),
        other => Err(Failure::Usage(format!(
            "--edge: u must be `0` or `pi`, got `{other}`"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exec(args: &[&str]) -> Result<OutputDocument, Failure> {
        let cli = Cli::try_parse_from(args).expect("args parse");
        execute(&cli.command)
    }

    #[test]
    fn order_json_matches_wire_format() {
        let doc = exec(&[
            "drinfeld-cuspidal",
            "order",
            "--q",
            "2",
            "--deg-p",
            "1",
            "--r",
            "4",
        ])
        .unwrap();
        assert_eq!(doc.to_json(), r#"{"exact":"8","lower":"8","upper":"8"}"#);
    }

    #[test]
    fn structure_table_rows() {
        let doc = exec(&["drinfeld-cuspidal", "structure", "--q", "2", "--r", "5"]).unwrap();
        assert_eq!(doc.to_table(), "C0: 16\n(q-1)C2: 8\n(q-1)(C3-qC4): 8\n");
    }

    #[test]
    fn gmap_round_trip() {
        let doc = exec(&[
            "drinfeld-cuspidal",
            "gmap",
            "--q",
            "2",
            "--deg-p",
            "1",
            "--r",
            "3",
            "--coeffs",
            "1,0,0,-1",
        ])
        .unwrap();
        assert_eq!(
            doc.to_json(),
            r#"{"exponents":[{"num":"1","den":"6"},{"num":"-1","den":"12"},{"num":"1","den":"12"},{"num":"-1","den":"6"}],"min_integral_multiple":"12"}"#
        );
    }

    #[test]
    fn cochain_eval_values() {
        let doc = exec(&[
            "drinfeld-cuspidal",
            "cochain-eval",
            "--q",
            "2",
            "--deg-p",
            "1",
            "--r",
            "3",
            "--height",
            "0",
            "--edge",
            "2,pi",
        ])
        .unwrap();
        assert_eq!(doc.to_table(), "r(Delta_{p^0})(e(2,pi^1)) = -2\n");
    }

    #[test]
    fn domain_errors_surface_module_names() {
        let err = exec(&[
            "drinfeld-cuspidal",
            "order",
            "--q",
            "6",
            "--deg-p",
            "1",
            "--r",
            "3",
        ]);
        match err {
            Err(Failure::Domain(e)) => assert_eq!(e.name(), "InvalidQ"),
            _ => panic!("expected a domain error"),
        }
        let err = exec(&[
            "drinfeld-cuspidal",
            "gmap",
            "--q",
            "2",
            "--deg-p",
            "1",
            "--r",
            "3",
            "--coeffs",
            "1,0,0,0",
        ]);
        match err {
            Err(Failure::Domain(e)) => assert_eq!(e.name(), "NonZeroDegree"),
            _ => panic!("expected a domain error"),
        }
    }

    #[test]
    fn usage_errors_for_malformed_values() {
        let err = exec(&[
            "drinfeld-cuspidal",
            "cochain-eval",
            "--q",
            "2",
            "--deg-p",
            "1",
            "--r",
            "3",
            "--height",
            "0",
            "--edge",
            "2;pi",
        ]);
        assert!(matches!(err, Err(Failure::Usage(_))));
    }

    #[test]
    fn run_exit_codes() {
        assert_eq!(
            run([
                "drinfeld-cuspidal",
                "order",
                "--q",
                "2",
                "--deg-p",
                "1",
                "--r",
                "3"
            ]),
            0
        );
        assert_eq!(
            run([
                "drinfeld-cuspidal",
                "order",
                "--q",
                "6",
                "--deg-p",
                "1",
                "--r",
                "3"
            ]),
            1
        );
        assert_eq!(run(["drinfeld-cuspidal", "order", "--q", "2"]), 2);
        assert_eq!(run(["drinfeld-cuspidal", "no-such-command"]), 2);
    }

    #[test]
    fn json_is_deterministic() {
        let a = exec(&[
            "drinfeld-cuspidal",
            "lambda",
            "--q",
            "2",
            "--deg-p",
            "1",
            "--r",
            "3",
        ])
        .unwrap()
        .to_json();
        let b = exec(&[
            "drinfeld-cuspidal",
            "lambda",
            "--q",
            "2",
            "--deg-p",
            "1",
            "--r",
            "3",
        ])
        .unwrap()
        .to_json();
        assert_eq!(a, b);
        assert_eq!(
            a,
            r#"{"matrix":"transpose","entries":[["8","2","1","1"],["4","4","2","2"],["2","2","4","4"],["1","1","2","8"]]}"#
        );
    }
}
