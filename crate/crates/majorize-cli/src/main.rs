//! Command-line front end: loads sequences, matrices and exact step
//! sequences, dispatches to the library operations and emits JSON reports.
//!
//! Exit codes: 0 all checks hold, 1 at least one failure, 2 inconclusive
//! results only, 64 usage or input errors, 70 computational failures.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use majorize_core::config::{DEFAULT_LAMBDA_MAX, DEFAULT_L_MAX};
use majorize_core::ideals::{self, PrincipalIdealModel};
use majorize_core::orders::{self, OrderStatus, OrderVerdict};
use majorize_core::seq::{self, NonincreasingSeq, RealSeq};
use majorize_core::spectral::{self, DenseMatrix};
use majorize_core::suite::{run_suite, SuiteConfig};
use majorize_core::{dyadic, io, Tolerances};

const EXIT_FAIL: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_COMPUTE: u8 = 70;

#[derive(Parser)]
#[command(
    name = "majorize",
    version,
    about = "Sequence, order, spectral and exact counterexample checks"
)]
struct Cli {
    /// Seed for randomized trials.
    #[arg(long, global = true, default_value_t = 2718)]
    seed: u64,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Log-product tolerance override for the order deciders.
    #[arg(long, global = true)]
    tol_log: Option<f64>,
    /// Witness search bound for uniform submajorization.
    #[arg(long, global = true, default_value_t = DEFAULT_LAMBDA_MAX)]
    lambda_max: usize,
    /// Witness search bound for ideal membership.
    #[arg(long, global = true, default_value_t = DEFAULT_L_MAX)]
    l_max: usize,
    /// Compact single-line JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sequence transforms on files of reals.
    Seq(SeqArgs),
    /// Submajorization order deciders.
    Order(OrderArgs),
    /// Matrix-level spectral checks.
    Matrix(MatrixArgs),
    /// Principal-ideal membership queries.
    Ideal(IdealArgs),
    /// Exact verification of the tower-sequence counterexample.
    Counterexample(CounterexampleArgs),
    /// Run the named-inequality suite.
    Suite(SuiteArgs),
}

#[derive(Args)]
struct SeqArgs {
    #[arg(long, value_enum)]
    op: SeqOp,
    #[arg(long = "in")]
    input: PathBuf,
    /// Second input for direct-sum.
    #[arg(long = "in2")]
    input2: Option<PathBuf>,
    /// Dilation factor.
    #[arg(long, default_value_t = 2)]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqOp {
    Mu,
    Cesaro,
    Dilate,
    HalfDilate,
    DirectSum,
    S,
    T,
}

#[derive(Args)]
struct OrderArgs {
    #[arg(long, value_enum)]
    kind: OrderKind,
    #[arg(long)]
    b: PathBuf,
    #[arg(long)]
    a: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderKind {
    Hl,
    Log,
    Uniform,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long, value_enum)]
    op: MatrixOp,
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Target eigenvalue list for construct (reals or [re, im] pairs).
    #[arg(long)]
    y: Option<PathBuf>,
    /// Target singular-value bound for construct.
    #[arg(long)]
    x: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatrixOp {
    Weyl,
    Lidskii,
    Ringrose,
    Qn400,
    Prefinal,
    Geom,
    Construct,
}

#[derive(Args)]
struct IdealArgs {
    #[arg(long, value_enum)]
    op: IdealOp,
    #[arg(long)]
    generator: PathBuf,
    /// Sequence (member/le) or matrix (commutator) input.
    #[arg(long = "in")]
    input: Option<PathBuf>,
    /// Comparison horizon.
    #[arg(long)]
    truncation: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealOp {
    Member,
    Le,
    GeomStable,
    Commutator,
}

#[derive(Args)]
struct CounterexampleArgs {
    #[arg(long, value_enum)]
    check: CounterCheck,
    /// Tower level (taux/tmain/a0/horror/geomstable).
    #[arg(long)]
    n: Option<u32>,
    /// Dilation level.
    #[arg(long)]
    l: Option<u32>,
    /// Sample count for taux.
    #[arg(long, default_value_t = 50)]
    samples: usize,
    /// Step-sequence input for horror (defaults to the tower itself).
    #[arg(long)]
    b: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CounterCheck {
    Taux,
    Tmain,
    A0,
    Horror,
    Geomstable,
}

#[derive(Args)]
struct SuiteArgs {
    /// Trials per randomized check.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 2)]
    dim_min: usize,
    #[arg(long, default_value_t = 10)]
    dim_max: usize,
    /// Record wall-clock runtimes (breaks byte-for-byte determinism).
    #[arg(long)]
    timings: bool,
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: EXIT_USAGE,
        }
    }

    fn compute(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: EXIT_COMPUTE,
        }
    }
}

impl From<io::IoError> for CliError {
    fn from(e: io::IoError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<spectral::SpectralError> for CliError {
    fn from(e: spectral::SpectralError) -> Self {
        match e {
            spectral::SpectralError::NonConvergence
            | spectral::SpectralError::VerificationFailed(_) => CliError::compute(e.to_string()),
            _ => CliError::usage(e.to_string()),
        }
    }
}

impl From<dyadic::DyadicError> for CliError {
    fn from(e: dyadic::DyadicError) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<seq::SeqError> for CliError {
    fn from(e: seq::SeqError) -> Self {
        CliError::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut tol = Tolerances::default();
    if let Some(t) = cli.tol_log {
        tol.log = t;
    }
    match dispatch(&cli, &tol) {
        Ok((value, code)) => {
            let rendered = if cli.json {
                value.to_string()
            } else {
                serde_json::to_string_pretty(&value).expect("serializable report")
            };
            match &cli.out {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, rendered + "\n") {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(EXIT_USAGE);
                    }
                }
                None => {
                    // tolerate closed pipes from downstream tools
                    use std::io::Write;
                    let mut stdout = std::io::stdout().lock();
                    let _ = writeln!(stdout, "{rendered}");
                }
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn verdict_code(v: &OrderVerdict) -> u8 {
    match v.status {
        OrderStatus::Holds => 0,
        OrderStatus::Fails => EXIT_FAIL,
        OrderStatus::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn pass_code(pass: bool) -> u8 {
    if pass {
        0
    } else {
        EXIT_FAIL
    }
}

fn load_nonincreasing(path: &Path) -> Result<NonincreasingSeq, CliError> {
    let raw = io::load_sequence(path)?;
    NonincreasingSeq::new(raw.clone()).or_else(|_| Ok::<_, CliError>(seq::mu_real(&raw)))
}

fn load_complex_list(path: &Path) -> Result<Vec<Complex64>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::usage(e.to_string()))?;
    if let Ok(pairs) = serde_json::from_str::<Vec<[f64; 2]>>(text.trim()) {
        return Ok(pairs
            .iter()
            .map(|[re, im]| Complex64::new(*re, *im))
            .collect());
    }
    let reals = io::parse_sequence(&text)?;
    Ok(reals.iter().map(|&v| Complex64::new(v, 0.0)).collect())
}

fn dispatch(cli: &Cli, tol: &Tolerances) -> Result<(serde_json::Value, u8), CliError> {
    match &cli.command {
        Command::Seq(args) => run_seq(args, tol),
        Command::Order(args) => run_order(args, cli, tol),
        Command::Matrix(args) => run_matrix(args, tol),
        Command::Ideal(args) => run_ideal(args, cli, tol),
        Command::Counterexample(args) => run_counterexample(args, cli),
        Command::Suite(args) => run_suite_cmd(args, cli, tol),
    }
}

fn run_seq(args: &SeqArgs, tol: &Tolerances) -> Result<(serde_json::Value, u8), CliError> {
    let raw = io::load_sequence(&args.input)?;
    let values = match args.op {
        SeqOp::Mu => seq::mu_real(&raw).values().to_vec(),
        SeqOp::Cesaro => {
            let x = RealSeq::new(raw).map_err(|e| CliError::usage(e.to_string()))?;
            seq::cesaro(&x).values().to_vec()
        }
        SeqOp::Dilate => {
            let x = RealSeq::new(raw).map_err(|e| CliError::usage(e.to_string()))?;
            x.dilate(args.n)?.values().to_vec()
        }
        SeqOp::HalfDilate => {
            let x = RealSeq::new(raw).map_err(|e| CliError::usage(e.to_string()))?;
            x.half_dilate().values().to_vec()
        }
        SeqOp::DirectSum => {
            let second = args
                .input2
                .as_ref()
                .ok_or_else(|| CliError::usage("direct-sum needs --in2"))?;
            let x = seq::mu_real(&raw);
            let y = load_nonincreasing(second)?;
            seq::direct_sum(&x, &y).values().to_vec()
        }
        SeqOp::S => seq::s_transform(&seq::mu_real(&raw), tol).values().to_vec(),
        SeqOp::T => seq::t_transform(&seq::mu_real(&raw), tol).values().to_vec(),
    };
    Ok((json!(values), 0))
}

fn run_order(
    args: &OrderArgs,
    cli: &Cli,
    tol: &Tolerances,
) -> Result<(serde_json::Value, u8), CliError> {
    let b = load_nonincreasing(&args.b)?;
    let a = load_nonincreasing(&args.a)?;
    let verdict = match args.kind {
        OrderKind::Hl => orders::check_hl_submajor(&b, &a, tol),
        OrderKind::Log => orders::check_log_submajor(&b, &a, tol),
        OrderKind::Uniform => orders::check_uniform_submajor(&b, &a, cli.lambda_max, tol),
    };
    let code = verdict_code(&verdict);
    Ok((serde_json::to_value(&verdict).expect("verdict"), code))
}

fn run_matrix(args: &MatrixArgs, tol: &Tolerances) -> Result<(serde_json::Value, u8), CliError> {
    let load = |p: &Option<PathBuf>| -> Result<DenseMatrix, CliError> {
        let path = p
            .as_ref()
            .ok_or_else(|| CliError::usage("missing --in FILE"))?;
        Ok(io::load_matrix(path)?)
    };
    match args.op {
        MatrixOp::Weyl => {
            let t = load(&args.input)?;
            let v = spectral::weyl_check(&t, tol)?;
            let code = verdict_code(&v);
            Ok((serde_json::to_value(&v).expect("verdict"), code))
        }
        MatrixOp::Lidskii => {
            let t = load(&args.input)?;
            let rep = spectral::lidskii_check(&t, tol)?;
            let code = pass_code(rep.pass);
            Ok((serde_json::to_value(&rep).expect("report"), code))
        }
        MatrixOp::Ringrose => {
            let t = load(&args.input)?;
            let split = spectral::ringrose_decompose(&t)?;
            let check = split.verify(&t)?;
            let scale = t.frobenius_norm().max(1e-300);
            let pass = check.recon_err <= tol.recon_rel * scale
                && check.qpart_spectral_radius <= tol.eig_rel * scale
                && check.eigen_match_err <= tol.eig_rel * scale.max(1.0);
            let value = json!({
                "check": check,
                "n_part": serde_json::from_str::<serde_json::Value>(&io::matrix_to_json(&split.n_part)).expect("json"),
                "q_part": serde_json::from_str::<serde_json::Value>(&io::matrix_to_json(&split.q_part)).expect("json"),
            });
            Ok((value, pass_code(pass)))
        }
        MatrixOp::Qn400 => {
            let q = load(&args.input)?;
            let rep = spectral::quasinilpotent_sum_check(&q, tol)?;
            let code = pass_code(rep.pass);
            Ok((serde_json::to_value(&rep).expect("report"), code))
        }
        MatrixOp::Prefinal => {
            let q = load(&args.input)?;
            let rep = spectral::prefinal_bound_check(&q, tol)?;
            let code = pass_code(rep.pass);
            Ok((serde_json::to_value(&rep).expect("report"), code))
        }
        MatrixOp::Geom => {
            let q = load(&args.input)?;
            let rep = spectral::geom_estimate_check(&q, tol)?;
            let pass = rep.real_part.is_holds() && rep.imag_part.is_holds();
            Ok((serde_json::to_value(&rep).expect("report"), pass_code(pass)))
        }
        MatrixOp::Construct => {
            let y_path = args
                .y
                .as_ref()
                .ok_or_else(|| CliError::usage("construct needs --y"))?;
            let x_path = args
                .x
                .as_ref()
                .ok_or_else(|| CliError::usage("construct needs --x"))?;
            let y = load_complex_list(y_path)?;
            let x = load_nonincreasing(x_path)?;
            let out = spectral::construct_from_spectrum(&y, &x, tol)?;
            let value = json!({
                "matrix": serde_json::from_str::<serde_json::Value>(&io::matrix_to_json(&out.matrix)).expect("json"),
                "realized_singular_values": out.shrunk.values(),
                "eigen_err": out.eigen_err,
                "sv_excess": out.sv_excess,
            });
            Ok((value, 0))
        }
    }
}

fn run_ideal(
    args: &IdealArgs,
    cli: &Cli,
    tol: &Tolerances,
) -> Result<(serde_json::Value, u8), CliError> {
    let gen = load_nonincreasing(&args.generator)?;
    let truncation = args.truncation.unwrap_or(gen.len());
    let ideal = PrincipalIdealModel::numeric(gen, cli.l_max.max(1), truncation);
    let need_input = |p: &Option<PathBuf>| -> Result<PathBuf, CliError> {
        p.clone()
            .ok_or_else(|| CliError::usage("missing --in FILE"))
    };
    let verdict = match args.op {
        IdealOp::Member => {
            let x = load_nonincreasing(&need_input(&args.input)?)?;
            ideals::ideal_member(&x, &ideal)
        }
        IdealOp::Le => {
            let b = load_nonincreasing(&need_input(&args.input)?)?;
            ideals::le_member(&b, &ideal, tol)
        }
        IdealOp::GeomStable => ideals::geom_stable_check(&ideal, tol).0,
        IdealOp::Commutator => {
            let t = io::load_matrix(&need_input(&args.input)?)?;
            ideals::commutator_member(&t, &ideal)?
        }
    };
    let code = verdict_code(&verdict);
    Ok((serde_json::to_value(&verdict).expect("verdict"), code))
}

fn run_counterexample(
    args: &CounterexampleArgs,
    cli: &Cli,
) -> Result<(serde_json::Value, u8), CliError> {
    match args.check {
        CounterCheck::Taux => {
            let n = args.n.unwrap_or(1);
            let lo_bits = 1usize << (3 * n as usize);
            let hi_bits = 1usize << (3 * (n as usize + 1));
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut ks = Vec::with_capacity(args.samples);
            for _ in 0..args.samples {
                let bits = rng.gen_range(lo_bits..hi_bits.min(4096));
                let mut k = BigUint::from(1u32) << bits;
                let jitter_bits = bits.min(30) as u32;
                k += BigUint::from(rng.gen::<u32>() % (1u32 << jitter_bits.min(31)));
                ks.push(k);
            }
            let rep = dyadic::verify_t_aux(n, &ks)?;
            let code = pass_code(rep.pass);
            Ok((serde_json::to_value(&rep).expect("report"), code))
        }
        CounterCheck::Tmain => {
            let l = args.l.ok_or_else(|| CliError::usage("tmain needs --l"))?;
            let n = args.n.ok_or_else(|| CliError::usage("tmain needs --n"))?;
            let rep = dyadic::verify_t_main(l, n)?;
            let code = pass_code(rep.certified);
            Ok((serde_json::to_value(&rep).expect("report"), code))
        }
        CounterCheck::A0 => {
            let l = args.l.unwrap_or(1);
            let n = args.n.unwrap_or(6);
            let rep = dyadic::verify_a0_bound(l, n)?;
            let code = pass_code(rep.pass);
            Ok((serde_json::to_value(&rep).expect("report"), code))
        }
        CounterCheck::Horror => {
            let l = args.l.unwrap_or(0);
            let n = args.n.unwrap_or(3);
            let b = match &args.b {
                Some(path) => io::load_dyadic(path)?,
                None => dyadic::tower_sequence(n)?,
            };
            let rep = dyadic::verify_horror(&b, l, n)?;
            let code = pass_code(rep.pass);
            Ok((serde_json::to_value(&rep).expect("report"), code))
        }
        CounterCheck::Geomstable => {
            let needed = dyadic::tower_witness_level(cli.l_max.min(20) as u32);
            let n = args.n.unwrap_or(needed).max(needed);
            let tower = dyadic::tower_sequence(n)?;
            let ideal = PrincipalIdealModel::exact(tower, cli.l_max.max(1));
            let (verdict, witnesses) = ideals::geom_stable_check(&ideal, &Tolerances::default());
            // failure of geometric stability is the expected outcome here
            let code = match verdict.status {
                OrderStatus::Fails => 0,
                OrderStatus::Holds => EXIT_FAIL,
                OrderStatus::Inconclusive => EXIT_INCONCLUSIVE,
            };
            let value = json!({
                "verdict": verdict,
                "witnesses": witnesses,
            });
            Ok((value, code))
        }
    }
}

fn run_suite_cmd(
    args: &SuiteArgs,
    cli: &Cli,
    tol: &Tolerances,
) -> Result<(serde_json::Value, u8), CliError> {
    if args.dim_min < 1 || args.dim_max < args.dim_min {
        return Err(CliError::usage("need 1 <= dim-min <= dim-max"));
    }
    let cfg = SuiteConfig {
        seed: cli.seed,
        trials: args.trials,
        dim_min: args.dim_min,
        dim_max: args.dim_max,
        lambda_max: cli.lambda_max,
        l_max: cli.l_max,
        tol: *tol,
        matrix_log_tol: cli.tol_log.unwrap_or(1e-9),
        timings: args.timings,
    };
    let report = run_suite(&cfg);
    let code = report.exit_code() as u8;
    Ok((serde_json::to_value(&report).expect("report"), code))
}
