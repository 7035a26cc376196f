//! `rock`: scriptable front end for rockcore.
//!
//! Exit codes: 0 success, 1 invalid input (an error object is written to
//! stderr), 2 an internal invariant or a verification failed.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use rockcore::decmat::{adjustment_matrix, full_decmatrix, rock_decmatrix};
use rockcore::doubles::{verify_double, Preset};
use rockcore::lr::lr_coeff;
use rockcore::partitions::{
    abacus_of, p_core, p_quotient, p_weight, parse_components, rock_mullineux, rouquier_core,
    PQuotient,
};
use rockcore::powersum::power_sum_complex;
use rockcore::schiver::{OddForm, Quiver, SchiverDouble};
use rockcore::walk::{walk_complex, WalkAlgebra};
use rockcore::weyl::{oracle_provider, schur_decmatrix};
use rockcore::{Error, LabeledMatrix, Partition};

/// Default field characteristic for commands that take `--char`.
const CHAR_ENV: &str = "ROCK_CHAR";

#[derive(Parser)]
#[command(
    name = "rock",
    version,
    about = "Exact computations for Rock blocks of symmetric groups"
)]
struct Cli {
    #[command(flatten)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    /// Emit JSON
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV (matrices and scalar results)
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Args)]
struct CharArg {
    /// Field characteristic, 0 for Q (default from ROCK_CHAR, else 0)
    #[arg(long = "char")]
    characteristic: Option<u64>,
}

impl CharArg {
    fn get(&self) -> Result<u64, Error> {
        if let Some(c) = self.characteristic {
            return Ok(c);
        }
        match std::env::var(CHAR_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("{CHAR_ENV}={s:?} is not a characteristic"))),
            Err(_) => Ok(0),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Draw the p-abacus of λ with m beads
    Abacus {
        lambda: Partition,
        p: usize,
        m: usize,
    },
    /// p-core of λ
    Core { lambda: Partition, p: usize },
    /// p-quotient of λ read on an abacus with m beads
    Quotient {
        lambda: Partition,
        p: usize,
        m: usize,
    },
    /// p-weight of λ
    Weight { lambda: Partition, p: usize },
    /// The minimal Rouquier core for p and w
    Rouquier { p: usize, w: usize },
    /// Mullineux image of a p-regular quotient "[∅|a|b]"
    Mullineux { quotient: String },
    /// Littlewood–Richardson coefficient c(λ; μ, ν)
    Lr {
        lambda: Partition,
        mu: Partition,
        nu: Partition,
    },
    /// Rock block decomposition matrices
    Decmat {
        #[command(subcommand)]
        which: Decmat,
    },
    /// Schur algebra decomposition matrices from the brute-force oracle
    Weyl {
        #[command(subcommand)]
        which: Weyl,
    },
    /// Doubles of Schur super-bialgebras
    Double {
        #[command(subcommand)]
        which: Double,
    },
    /// Schiver doubles of a quiver
    Schiver {
        #[command(subcommand)]
        which: Schiver,
    },
    /// Walk complex on a window of A_∞
    Walk {
        n: usize,
        r: usize,
        window: usize,
        /// Run on S_Q or on the double 𝒟_Q
        #[arg(long, value_enum, default_value_t = Side::Double)]
        side: Side,
        #[command(flatten)]
        characteristic: CharArg,
    },
    /// Power-sum complex on the edge of A_1
    Powersum { n: usize, r: usize },
}

#[derive(Subcommand)]
enum Decmat {
    /// Decomposition matrix of the Rock block from the Littlewood–Richardson formula
    Rock { p: usize, w: usize },
    /// James adjustment matrix, with Schur factors from the oracle
    Adjust { p: usize, w: usize },
    /// Rock matrix times adjustment matrix
    Full { p: usize, w: usize },
}

#[derive(Subcommand)]
enum Weyl {
    /// [Δ(λ):L(μ)] for S(n, r) over F_p
    Dec { n: usize, r: usize, p: u64 },
}

#[derive(Subcommand)]
enum Double {
    /// Verify D(B)(r) for r up to the given degree; presets s1, tri:n, schur:n
    Verify {
        preset: Preset,
        r: usize,
        #[command(flatten)]
        characteristic: CharArg,
    },
}

#[derive(Subcommand)]
enum Schiver {
    /// Build 𝒟_Q(n, r) and verify it; Q is point, A<m> or V:s>t,…
    Build {
        quiver: Quiver,
        n: usize,
        r: usize,
        #[command(flatten)]
        characteristic: CharArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Side {
    Schiver,
    Double,
}

/// A command's result in all formats, plus whether its checks passed.
struct Output {
    text: String,
    json: Value,
    csv: Option<String>,
    passed: bool,
}

impl Output {
    fn scalar(v: impl ToString) -> Self {
        let s = v.to_string();
        Output {
            text: s.clone(),
            json: json!(s),
            csv: Some(s),
            passed: true,
        }
    }

    fn number(v: u64) -> Self {
        Output {
            text: v.to_string(),
            json: json!(v),
            csv: Some(v.to_string()),
            passed: true,
        }
    }

    fn matrix(m: &LabeledMatrix) -> Self {
        Output {
            text: m.to_string(),
            json: m.to_json(),
            csv: Some(m.to_csv()),
            passed: true,
        }
    }

    fn report<T: Serialize>(summary: String, report: &T, passed: bool) -> Result<Self, Error> {
        let json = serde_json::to_value(report).map_err(|e| Error::Invariant(e.to_string()))?;
        Ok(Output {
            text: summary,
            json,
            csv: None,
            passed,
        })
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run(command: Command) -> Result<Output, Error> {
    Ok(match command {
        Command::Abacus { lambda, p, m } => {
            let ab = abacus_of(&lambda, p, m)?;
            let runners: Vec<Vec<usize>> = (0..p).map(|s| ab.runner_rows(s)).collect();
            Output {
                text: ab.render(),
                json: json!({ "p": p, "m": m, "runners": runners }),
                csv: Some(
                    runners
                        .iter()
                        .enumerate()
                        .map(|(s, rows)| {
                            format!(
                                "{s},{}\n",
                                rows.iter()
                                    .map(|r| r.to_string())
                                    .collect::<Vec<_>>()
                                    .join(" ")
                            )
                        })
                        .collect(),
                ),
                passed: true,
            }
        }
        Command::Core { lambda, p } => Output::scalar(p_core(&lambda, p)?),
        Command::Quotient { lambda, p, m } => {
            let q = p_quotient(&lambda, p, m)?;
            let mut out = Output::scalar(&q);
            out.json =
                json!({ "components": q.to_string(), "core": q.core.to_string(), "p": p, "m": m });
            out
        }
        Command::Weight { lambda, p } => Output::number(p_weight(&lambda, p)? as u64),
        Command::Rouquier { p, w } => Output::scalar(rouquier_core(p, w)?),
        Command::Mullineux { quotient } => {
            let components = parse_components(&quotient)?;
            if components.len() < 2 {
                return Err(Error::InvalidArgument(
                    "a quotient needs at least two components".into(),
                ));
            }
            let q = PQuotient {
                p: components.len(),
                components,
                core: Partition::empty(),
                m: 0,
            };
            Output::scalar(rock_mullineux(&q)?)
        }
        Command::Lr { lambda, mu, nu } => Output::number(lr_coeff(&lambda, &mu, &nu)),
        Command::Decmat { which } => Output::matrix(&match which {
            Decmat::Rock { p, w } => rock_decmatrix(p, w)?,
            Decmat::Adjust { p, w } => adjustment_matrix(p, w, &oracle_provider(p as u64))?,
            Decmat::Full { p, w } => full_decmatrix(p, w, &oracle_provider(p as u64))?,
        }),
        Command::Weyl {
            which: Weyl::Dec { n, r, p },
        } => Output::matrix(&schur_decmatrix(n, r, p)?),
        Command::Double {
            which:
                Double::Verify {
                    preset,
                    r,
                    characteristic,
                },
        } => {
            let c = characteristic.get()?;
            let data = preset.build(r, c)?;
            let rep = verify_double(&preset.to_string(), &data, r, c)?;
            let mut text = String::new();
            for d in &rep.degrees {
                let ok = d.checks.iter().all(|x| x.passed);
                text.push_str(&format!("r={} dim={} {}\n", d.r, d.dim, status(ok)));
                for x in d.checks.iter().filter(|x| !x.passed) {
                    text.push_str(&format!(
                        "  {}: {}\n",
                        x.name,
                        x.detail.as_deref().unwrap_or("")
                    ));
                }
            }
            Output::report(text, &rep, rep.passed())?
        }
        Command::Schiver {
            which:
                Schiver::Build {
                    quiver,
                    n,
                    r,
                    characteristic,
                },
        } => {
            let c = characteristic.get()?;
            let d = SchiverDouble::with_form(quiver.clone(), n, r, c, OddForm::Literal)?;
            let rep = d.verify()?;
            let dims: Vec<usize> = rep.degrees.iter().map(|x| x.dim).collect();
            let text = format!(
                "quiver {quiver}, n={n}: dims {dims:?} {}\n",
                status(rep.passed())
            );
            Output::report(text, &rep, rep.passed())?
        }
        Command::Walk {
            n,
            r,
            window,
            side,
            characteristic,
        } => {
            let algebra = match side {
                Side::Schiver => WalkAlgebra::Schiver,
                Side::Double => WalkAlgebra::Double,
            };
            let rep = walk_complex(algebra, n, r, window, characteristic.get()?)?;
            let cx = &rep.complex;
            let text = format!(
                "dims {:?}\nranks {:?}\nhomology {:?}\nd²=0 {}\n{}\n",
                cx.dims,
                cx.ranks,
                cx.homology,
                rep.d_squared_full && cx.d_squared_zero,
                status(rep.passed() && cx.is_exact())
            );
            Output::report(text, &rep, rep.passed() && cx.is_exact())?
        }
        Command::Powersum { n, r } => {
            let rep = power_sum_complex(&Quiver::linear(1), 0, n, r)?;
            let mut text = format!(
                "dims {:?}\nhomology {:?}\n",
                rep.complex.dims, rep.complex.homology
            );
            for c in &rep.checks {
                text.push_str(&format!("{} {}\n", status(c.passed), c.name));
            }
            Output::report(text, &rep, rep.passed())?
        }
    })
}

fn error_object(e: &Error) -> Value {
    let kind = match e {
        Error::InvalidArgument(_) => "invalid_argument",
        Error::Parse(_) => "parse",
        Error::Invariant(_) => "invariant",
    };
    json!({ "error": kind, "message": e.to_string() })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": "usage", "message": e.to_string() }));
            return ExitCode::from(1);
        }
    };
    let out = match run(cli.command) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("{}", error_object(&e));
            let code = if matches!(e, Error::Invariant(_)) {
                2
            } else {
                1
            };
            return ExitCode::from(code);
        }
    };
    if cli.format.json {
        println!("{}", out.json);
    } else if cli.format.csv {
        match out.csv {
            Some(csv) => print!("{}", if csv.ends_with('\n') { csv } else { csv + "\n" }),
            None => {
                let e = Error::InvalidArgument("this command has no CSV form; use --json".into());
                eprintln!("{}", error_object(&e));
                return ExitCode::from(1);
            }
        }
    } else {
        print!(
            "{}",
            if out.text.ends_with('\n') {
                out.text
            } else {
                out.text + "\n"
            }
        );
    }
    if out.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
