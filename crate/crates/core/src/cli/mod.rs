//! Command-line front end. The binary is a thin wrapper around [`run`], so
//! the same commands are reachable from tests and the C interface.

mod algebra;
mod integrate;
mod report;
mod selection;
mod separate;
mod symmetry;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use algebra::{verify_algebra_cmd, AlgebraFixture};
pub use integrate::{closure_sweep, integrate_cmd, setup, solve, IntegrateArgs, Setup, CLOSURE_TOL};
pub use report::{error_exit_code, exit_code, Format, Report, Table};
pub use selection::{selection_rules_cmd, SelectionConfig, SelectionKind};
pub use separate::{model_for, parse_j, parse_lambda, separate_cmd, SeparateArgs};
pub use symmetry::{
    case_name, check_symmetry_cmd, k_rows, minimal_j_rows, operator_case, selfconj_rows, sign_sweep, KRow, MinimalJRow, OperatorCase, SelfConjOp, SelfConjRow,
    SymmetryArgs, SymmetryCase, ASYMMETRY_MIN, COMMUTATOR_TOL, K_EIGEN_TOL, K_NULL_TOL, NAIVE_MIN, SELFCONJ_TOL,
};

use crate::algebra::{Backend, Spin};
use crate::separation::{GoldenName, Variant};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "monopole", version, about = "Checks of spin 1/2 and spin 1 wave equations in monopole backgrounds")]
pub struct Cli {
    /// Seed of every random profile and initial vector.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the report as JSON and Markdown (and CSV if tabular) into this directory.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Print every reproducible check with the command that runs it.
    #[arg(long)]
    pub list_cases: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Corrected,
    AsPrinted,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Corrected => Variant::Corrected,
            VariantArg::AsPrinted => Variant::AsPrinted,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Clifford, DKP and Lorentz-generator identities.
    VerifyAlgebra {
        /// exact or float
        #[arg(long, default_value = "exact")]
        backend: String,
        /// JSON file with matrices to check instead of the built-in ones.
        #[arg(long)]
        fixture: Option<PathBuf>,
        /// Print the built-in matrices of this spin as a fixture and exit.
        #[arg(long)]
        dump_fixture: Option<String>,
    },
    /// Separate the wave operator and compare with a golden system.
    Separate {
        #[arg(long)]
        spin: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        j: String,
        #[arg(long)]
        doublet: bool,
        /// dirac, dirac-minimal, vector, vector-doublet or reduced-doublet
        #[arg(long)]
        golden: Option<String>,
        #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
        variant: VariantArg,
        /// Eigenvalue sign for the reduced doublet system.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        delta: i64,
    },
    /// Discrete-symmetry checks.
    CheckSymmetry {
        #[arg(long, value_enum)]
        case: SymmetryCase,
        /// Operator for the self-conjugacy probe; all when absent.
        #[arg(long, value_enum)]
        op: Option<SelfConjOp>,
        #[arg(long)]
        j: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long)]
        spin: Option<String>,
    },
    /// Matrix elements and the reflection selection rule, from a JSON config.
    SelectionRules {
        #[arg(long)]
        config: PathBuf,
    },
    /// Integrate a golden radial system and substitute it back.
    Integrate {
        #[arg(long, default_value = "dirac")]
        golden: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, default_value = "1.5")]
        j: String,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        delta: i64,
        #[arg(long, default_value_t = 0.7)]
        mass: f64,
        #[arg(long, default_value_t = 1.1, allow_negative_numbers = true)]
        energy: f64,
        #[arg(long, default_value_t = 0.1)]
        r0: f64,
        #[arg(long, default_value_t = 20.0)]
        r1: f64,
        /// Output spacing of the solution table.
        #[arg(long, default_value_t = 0.05)]
        h: f64,
        /// Coarsest spacing of the closure runs on [1, 6].
        #[arg(long, default_value_t = 0.04)]
        closure_h: f64,
        #[arg(long, default_value_t = 3)]
        levels: usize,
    },
}

/// One reproducible check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct Case {
    pub id: &'static str,
    pub command: &'static str,
    pub claim: &'static str,
}

pub fn cases() -> Vec<Case> {
    let c = |id, command, claim| Case { id, command, claim };
    vec![
        c("algebra-exact", "verify-algebra", "Clifford, DKP and Lorentz identities hold exactly"),
        c("algebra-float", "verify-algebra --backend float", "the same identities hold in floating point"),
        c(
            "algebra-fixture",
            "verify-algebra --fixture FILE",
            "a corrupted matrix set fails with the identity named",
        ),
        c(
            "separate-dirac",
            "separate --spin half --lambda 1 --j 1.5 --golden dirac",
            "spin 1/2 radial system",
        ),
        c(
            "separate-dirac-minimal",
            "separate --spin half --lambda 0.5 --j 0 --golden dirac-minimal",
            "spin 1/2 system at the lowest j",
        ),
        c(
            "separate-vector",
            "separate --spin one --lambda 1 --j 2 --golden vector",
            "spin 1 radial system",
        ),
        c(
            "separate-vector-doublet",
            "separate --spin one --doublet --j 0.5 --golden vector-doublet",
            "spin 1 doublet system",
        ),
        c(
            "separate-reduced-doublet",
            "separate --spin one --doublet --j 0.5 --golden reduced-doublet --delta 1",
            "doublet system reduced by its eigen-relations",
        ),
        c(
            "quantization",
            "separate --spin half --lambda 0.25 --j 1",
            "a charge violating quantization is rejected (exit 2)",
        ),
        c(
            "abelian-spin-half",
            "check-symmetry --case abelian-spin-half",
            "N commutes with H and its eigen-relations are compatible",
        ),
        c(
            "abelian-spin1",
            "check-symmetry --case abelian-spin1",
            "N commutes with H but its eigen-relations are incompatible",
        ),
        c("doublet-half", "check-symmetry --case doublet-half", "the doublet reflection commutes with H"),
        c(
            "doublet-vector",
            "check-symmetry --case doublet-vector --j 0.5",
            "compatible, reduced system equals the golden one",
        ),
        c(
            "selfconj",
            "check-symmetry --case selfconj",
            "parity and the doublet operators are self-conjugate, N_bisp and N_vect are not",
        ),
        c(
            "minimal-j",
            "check-symmetry --case minimal-j",
            "no eigenstates at the lowest j; the image leaves the ansatz",
        ),
        c(
            "k-operator",
            "check-symmetry --case k-operator",
            "K annihilates the lowest j and has eigenvalue -delta(j+1/2) above it",
        ),
        c(
            "sign-sensitivity",
            "check-symmetry --case sign-sensitivity",
            "spin 1/2 systems are even in lambda, spin 1 systems are not",
        ),
        c(
            "selection-neutral",
            "selection-rules --config docs/examples/neutral.json",
            "half-sphere identity at zero charge",
        ),
        c(
            "selection-abelian",
            "selection-rules --config docs/examples/abelian.json",
            "no selection rule at nonzero charge",
        ),
        c(
            "selection-doublet",
            "selection-rules --config docs/examples/doublet.json",
            "vanishing mean position of doublet states",
        ),
        c(
            "integrate-dirac",
            "integrate --golden dirac --lambda 1 --j 1.5",
            "closure of the integrated spin 1/2 system",
        ),
        c(
            "integrate-vector",
            "integrate --golden vector --lambda 1 --j 2",
            "closure of the integrated spin 1 system",
        ),
        c(
            "integrate-reduced-doublet",
            "integrate --golden reduced-doublet --j 0.5",
            "closure of the reduced doublet system",
        ),
    ]
}

fn parse_spin(s: &str) -> Result<Spin> {
    s.parse()
}

fn parse_golden(s: &str) -> Result<GoldenName> {
    s.parse()
}

fn dispatch(cmd: &Command, seed: u64) -> Result<Report> {
    match cmd {
        Command::VerifyAlgebra { backend, fixture, .. } => {
            let b: Backend = backend.parse()?;
            let text = fixture.as_ref().map(std::fs::read_to_string).transpose()?;
            verify_algebra_cmd(b, text.as_deref(), seed)
        }
        Command::Separate {
            spin,
            lambda,
            j,
            doublet,
            golden,
            variant,
            delta,
        } => {
            let args = SeparateArgs {
                spin: parse_spin(spin)?,
                lambda: lambda.as_deref().map(parse_lambda).transpose()?,
                j: parse_j(j)?,
                doublet: *doublet,
                golden: golden.as_deref().map(parse_golden).transpose()?,
                variant: (*variant).into(),
                delta: *delta,
            };
            separate_cmd(&args, seed)
        }
        Command::CheckSymmetry { case, op, j, lambda, spin } => {
            let args = SymmetryArgs {
                op: *op,
                j: j.as_deref().map(parse_j).transpose()?,
                lambda: lambda.as_deref().map(parse_lambda).transpose()?,
                spin: spin.as_deref().map(parse_spin).transpose()?,
            };
            check_symmetry_cmd(*case, &args, seed)
        }
        Command::SelectionRules { config } => {
            let cfg = SelectionConfig::from_json(&std::fs::read_to_string(config)?)?;
            selection_rules_cmd(&cfg, seed)
        }
        Command::Integrate {
            golden,
            lambda,
            j,
            delta,
            mass,
            energy,
            r0,
            r1,
            h,
            closure_h,
            levels,
        } => {
            let args = IntegrateArgs {
                golden: parse_golden(golden)?,
                lambda: lambda.as_deref().map(parse_lambda).transpose()?,
                j: parse_j(j)?,
                delta: *delta,
                mass: *mass,
                energy: *energy,
                r0: *r0,
                r1: *r1,
                h: *h,
                closure_h: *closure_h,
                levels: *levels,
                ..IntegrateArgs::default()
            };
            integrate_cmd(&args, seed)
        }
    }
}

fn stem(cmd: &Command) -> String {
    match cmd {
        Command::VerifyAlgebra { .. } => "verify-algebra".into(),
        Command::Separate { .. } => "separate".into(),
        Command::CheckSymmetry { case, .. } => format!("check-symmetry-{}", case_name(*case)),
        Command::SelectionRules { .. } => "selection-rules".into(),
        Command::Integrate { .. } => "integrate".into(),
    }
}

/// Exit status and output streams of one invocation.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn list_cases(format: Format) -> Result<String> {
    let cs = cases();
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&cs)?),
        _ => {
            let mut t = Table::new(&["case", "command", "claim"]);
            for c in &cs {
                t.push(vec![c.id.into(), format!("monopole {}", c.command), c.claim.into()]);
            }
            if format == Format::Csv {
                t.to_csv()
            } else {
                Ok(t.to_markdown())
            }
        }
    }
}

/// Parses `args` (program name first) and returns the report of the command
/// without rendering it. `--list-cases` and `--dump-fixture` have no report
/// and are rejected.
pub fn report_for<I, T>(args: I) -> Result<Report>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| Error::Config(e.render().to_string().trim_end().to_string()))?;
    match &cli.command {
        None => Err(Error::Config("a subcommand is required".into())),
        Some(Command::VerifyAlgebra { dump_fixture: Some(_), .. }) => Err(Error::Config("--dump-fixture produces no report".into())),
        Some(_) if cli.list_cases => Err(Error::Config("--list-cases produces no report".into())),
        Some(cmd) => dispatch(cmd, cli.seed),
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    if cli.list_cases {
        return match list_cases(cli.format) {
            Ok(s) => Outcome {
                code: 0,
                stdout: s,
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        };
    }
    let Some(cmd) = &cli.command else {
        return Outcome {
            code: 2,
            stdout: String::new(),
            stderr: "error: a subcommand or --list-cases is required\n".into(),
        };
    };
    if let Command::VerifyAlgebra { dump_fixture: Some(spin), .. } = cmd {
        return match parse_spin(spin).and_then(|s| Ok(serde_json::to_string_pretty(&AlgebraFixture::standard(s))?)) {
            Ok(s) => Outcome {
                code: 0,
                stdout: s + "\n",
                stderr: String::new(),
            },
            Err(e) => Outcome {
                code: error_exit_code(&e),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            },
        };
    }
    let result = dispatch(cmd, cli.seed);
    let code = exit_code(&result);
    match result {
        Ok(rep) => {
            let mut out = Outcome { code, ..Outcome::default() };
            match rep.render(cli.format) {
                Ok(s) => out.stdout = s,
                Err(e) => {
                    out.code = error_exit_code(&e);
                    out.stderr = format!("error: {e}\n");
                }
            }
            if let Some(dir) = &cli.out {
                if let Err(e) = rep.write_all(dir, &stem(cmd)) {
                    out.code = 2;
                    out.stderr.push_str(&format!("error: {e}\n"));
                }
            }
            out
        }
        Err(e) => Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome {
            code: error_exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}
