//! `fdtw`: build, bound, encode, correct and verify constant weight codes
//! obtained from constant dimension codes.
//!
//! Exit status: 0 success, 1 error, 2 usage, 3 verification failure,
//! 4 decode or correction failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use fdtw_core::bounds;
use fdtw_core::cdc::DEFAULT_VERIFY_PAIR_CAP;
use fdtw_core::fdtw::{pad_hadamard, predicted_params};
use fdtw_core::format::{self, emit_hex, emit_support, field_spec, parse_word};
use fdtw_core::verify::{self, declared_lambda};
use fdtw_core::{
    codec, construct, shorten, ConstantDimensionCode, ConstantWeightCode, CwWord, Error,
    FieldContext, InfoWord,
};

#[derive(Parser)]
#[command(name = "fdtw", version, about = "Constant weight codes from constant dimension codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a constant dimension code and the constant weight code from it.
    Construct(ConstructArgs),
    /// Keep the words with a given bit at one coordinate and delete it.
    Shorten {
        /// Constant weight code file.
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        coord: usize,
        /// Bit value (0 or 1) the kept words carry at `coord`.
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        bit: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact bounds and reference values.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Map a message (i, j) to a codeword.
    Encode {
        /// Constant dimension code file.
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        /// Print the word as a hex bitmap instead of a support list.
        #[arg(long)]
        hex: bool,
    },
    /// Map a codeword back to its message.
    Decode {
        /// Constant dimension code file.
        #[arg(long)]
        code: PathBuf,
        /// Support list such as `0,3,7` or a hex bitmap prefixed with `0x`.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Correct a received word of the right weight.
    Correct {
        /// Constant dimension code file.
        #[arg(long)]
        code: PathBuf,
        /// Support list such as `0,3,7` or a hex bitmap prefixed with `0x`.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        hex: bool,
    },
    /// Check properties of a constant weight code file.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Extract an optical orthogonal code from a cyclic code file.
    Ooc {
        #[arg(long)]
        code: PathBuf,
        /// Correlation bound; defaults to w - d/2.
        #[arg(long)]
        lambda: Option<usize>,
    },
}

#[derive(Args)]
struct ConstructArgs {
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Dimension of the ambient space; implied by --lifted-rank and --file.
    #[arg(long)]
    n: Option<usize>,
    /// Primitive polynomial, coefficients low degree first, e.g. `1,1,0,0,1`.
    #[arg(long, value_delimiter = ',')]
    poly: Option<Vec<u32>>,
    #[command(flatten)]
    source: Source,
    /// Subspace dimension for --spread, --grassmannian and --search.
    #[arg(long)]
    k: Option<usize>,
    /// Parameter m of --lifted-rank (ambient dimension 2m - 1).
    #[arg(long)]
    m: Option<usize>,
    /// Minimum subspace distance for --search.
    #[arg(long)]
    d: Option<usize>,
    /// Shuffle seed for --search; omitted means canonical order.
    #[arg(long)]
    seed: Option<u64>,
    /// Append the all-zero and all-one words (Hadamard code).
    #[arg(long)]
    hadamard: bool,
    /// Constant weight code output file; words go to stdout otherwise.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Constant dimension code output file.
    #[arg(long)]
    out_cdc: Option<PathBuf>,
    /// Skip the exhaustive distance checks.
    #[arg(long)]
    no_verify: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    #[arg(long)]
    spread: bool,
    #[arg(long)]
    grassmannian: bool,
    #[arg(long)]
    lifted_rank: bool,
    #[arg(long)]
    search: bool,
    /// Constant dimension code file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum BoundsCommand {
    /// Gaussian coefficient [n l]_q.
    Gaussian {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        q: u64,
    },
    /// floor(n * prev / w), with prev a bound on A(n-1, d, w-1).
    Johnson {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        w: u64,
        #[arg(long)]
        prev: BigUint,
    },
    /// Implicit upper bound on A(n, 2 delta, w), scanning M = 1..=cap.
    Avz {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        delta: u64,
        #[arg(long)]
        w: u64,
        #[arg(long, default_value_t = 1000)]
        cap: u64,
    },
    /// Partial spread lower bound on A_q(n, 2k, k).
    PartialSpread {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        q: u64,
    },
    /// Size of the constant weight code built from the partial spread.
    FdtwSize {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        q: u64,
    },
    /// Upper bound q^(n-k) floor((q^n - 1)/(q^k - 1)) on A(q^n, 2q^k - 2, q^k).
    SpreadUpper {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        q: u64,
    },
    /// Exact A(2^(2m-1) - 1, 2^(m+1) - 4, 2^m - 1) and A(2^(2m-1), 2^(m+1) - 4, 2^m).
    OptimalFamily {
        #[arg(long)]
        m: u64,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Exhaustive minimum distance against the declared one.
    Distance {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, default_value_t = verify::DEFAULT_PAIR_CAP)]
        cap: u64,
    },
    /// Every t-subset of positions lies in exactly one word.
    Steiner {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        t: usize,
    },
    /// The code is closed under cyclic shifts.
    Cyclic {
        #[arg(long)]
        code: PathBuf,
    },
}

struct Failure {
    status: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::DistanceViolation { .. } | Error::CorrelationExceeded { .. } => 3,
            _ => 1,
        };
        Failure { status, msg: e.to_string() }
    }
}

fn fail(status: u8, msg: impl Into<String>) -> Failure {
    Failure { status, msg: msg.into() }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure { status, msg }) => {
            eprintln!("fdtw: {msg}");
            ExitCode::from(status)
        }
    }
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Construct(args) => run_construct(args),
        Command::Shorten { code, coord, bit, out } => {
            let code = format::load_cw(&code)?;
            let short = shorten(&code, coord, bit == 1)?;
            let mut s = code_summary(&short);
            write_or_list(&mut s, &short, None, out)?;
            Ok(s)
        }
        Command::Bounds(b) => run_bounds(b),
        Command::Encode { code, i, j, hex } => {
            let cdc = load_cdc(&code)?;
            let w = codec::encode(&cdc, InfoWord { i, j })?;
            Ok(format!("{}\n", render(&w, hex)))
        }
        Command::Decode { code, word } => {
            let cdc = load_cdc(&code)?;
            let w = parse_word(cdc.field().order() as usize, &word)?;
            let info = codec::decode(&cdc, &w).map_err(|e| fail(4, e.to_string()))?;
            Ok(format!("{} {}\n", info.i, info.j))
        }
        Command::Correct { code, word, hex } => {
            let cdc = load_cdc(&code)?;
            let w = parse_word(cdc.field().order() as usize, &word)?;
            match codec::correct(&cdc, &w) {
                Ok(fixed) => Ok(format!("{}\nstatus ok\n", render(&fixed, hex))),
                Err(e) => Err(fail(4, format!("status {}: {e}", e.code()))),
            }
        }
        Command::Verify(v) => run_verify(v),
        Command::Ooc { code, lambda } => {
            let code = format::load_cw(&code)?;
            let lambda = lambda.unwrap_or_else(|| declared_lambda(&code));
            if !verify::is_cyclic(&code) {
                return Err(fail(3, "code is not cyclic"));
            }
            let ex = verify::ooc_extract(&code, lambda)?;
            let mut s = format!(
                "ooc n={} w={} lambda={} size={}\n",
                ex.ooc.len,
                ex.ooc.weight,
                ex.ooc.lambda,
                ex.ooc.reps.len()
            );
            for r in &ex.ooc.reps {
                writeln!(s, "{}", emit_support(r)).unwrap();
            }
            for d in &ex.discarded {
                writeln!(s, "discarded orbit size={} rep={}", d.orbit_size, emit_support(&d.representative))
                    .unwrap();
            }
            s.push_str("correlation check passed\n");
            Ok(s)
        }
    }
}

fn render(w: &CwWord, hex: bool) -> String {
    if hex {
        format!("0x{}", emit_hex(w))
    } else {
        emit_support(w)
    }
}

fn load_cdc(path: &Path) -> Result<ConstantDimensionCode, Failure> {
    Ok(format::load_cdc(path, DEFAULT_VERIFY_PAIR_CAP)?)
}

fn code_summary(code: &ConstantWeightCode) -> String {
    format!("code N={} w={} d={} size={}\n", code.len(), code.weight(), code.declared_d(), code.size())
}

fn write_or_list(
    s: &mut String,
    code: &ConstantWeightCode,
    field: Option<&FieldContext>,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    match out {
        Some(path) => {
            format::save_cw(code, field, &path)?;
            writeln!(s, "wrote {}", path.display()).unwrap();
        }
        None => {
            for w in code.words() {
                writeln!(s, "{}", emit_support(w)).unwrap();
            }
        }
    }
    Ok(())
}

fn need<T>(v: Option<T>, flag: &str, source: &str) -> Result<T, Failure> {
    v.ok_or_else(|| fail(2, format!("--{source} needs --{flag}")))
}

fn field_for(args: &ConstructArgs, n: usize) -> Result<Arc<FieldContext>, Failure> {
    Ok(Arc::new(FieldContext::new(args.q, n, args.poly.as_deref())?))
}

fn run_construct(args: ConstructArgs) -> Outcome {
    let src = &args.source;
    let mut cdc = if src.lifted_rank {
        let m = need(args.m, "m", "lifted-rank")?;
        if args.poly.is_some() || args.n.is_some_and(|n| n + 1 != 2 * m) {
            return Err(fail(2, "--lifted-rank fixes the field: n = 2m - 1 with the default polynomial"));
        }
        ConstantDimensionCode::lifted_rank(m, args.q)?
    } else if let Some(path) = &src.file {
        let cap = if args.no_verify { 0 } else { DEFAULT_VERIFY_PAIR_CAP };
        format::load_cdc(path, cap)?
    } else {
        let n = args.n.ok_or_else(|| fail(2, "--n is required unless --lifted-rank or --file is given"))?;
        let field = field_for(&args, n)?;
        if src.spread {
            ConstantDimensionCode::spread(field, need(args.k, "k", "spread")?)?
        } else if src.grassmannian {
            ConstantDimensionCode::full_grassmannian(field, need(args.k, "k", "grassmannian")?)?
        } else {
            let k = need(args.k, "k", "search")?;
            let d = need(args.d, "d", "search")?;
            ConstantDimensionCode::greedy_search(field, k, d, args.seed)?
        }
    };

    let mut s = String::new();
    writeln!(s, "field {}", field_spec(cdc.field())).unwrap();
    writeln!(
        s,
        "cdc source={} n={} k={} d={} size={}",
        cdc.tag(),
        cdc.n(),
        cdc.k(),
        cdc.declared_d(),
        cdc.len()
    )
    .unwrap();
    if !cdc.is_verified() && !args.no_verify {
        // loaded codes above the pair cap
        cdc.verify(u64::MAX)?;
    }
    if let Some(path) = &args.out_cdc {
        format::save_cdc(&cdc, path)?;
        writeln!(s, "wrote {}", path.display()).unwrap();
    }

    let mut code = construct(&cdc)?;
    let predicted = predicted_params(&cdc);
    if args.hadamard {
        code = pad_hadamard(&code)?;
    }
    s.push_str(&code_summary(&code));
    if args.no_verify {
        s.push_str("verify skipped\n");
    } else if code.size() >= 2 {
        let report = verify::min_distance(&code)?;
        let declared = code.declared_d();
        if report.distance < declared {
            return Err(fail(
                3,
                format!(
                    "verification failed: words {} and {} at distance {} < {declared}",
                    report.pair.0, report.pair.1, report.distance
                ),
            ));
        }
        writeln!(s, "verify d={} exhaustive", report.distance).unwrap();
        if !args.hadamard && report.distance as u64 != predicted.distance {
            writeln!(s, "note: predicted distance {}", predicted.distance).unwrap();
        }
    } else {
        s.push_str("verify trivial (fewer than two words)\n");
    }
    let field = cdc.field().clone();
    write_or_list(&mut s, &code, Some(&field), args.out)?;
    Ok(s)
}

fn run_bounds(b: BoundsCommand) -> Outcome {
    Ok(match b {
        BoundsCommand::Gaussian { n, l, q } => {
            format!("gaussian n={n} l={l} q={q}: {}\n", bounds::gaussian(n, l, q))
        }
        BoundsCommand::Johnson { n, d, w, prev } => {
            format!("johnson n={n} d={d} w={w} prev={prev}: {}\n", bounds::johnson_step(n, d, w, &prev)?)
        }
        BoundsCommand::Avz { n, delta, w, cap } => {
            let r = bounds::avz_bound(n, delta, w, cap)?;
            let mut s = format!("avz n={n} delta={delta} w={w} cap={cap}: {}\n", r.bound);
            match r.witness {
                Some(x) => writeln!(s, "witness M={} b={} floor(delta/b)={}", x.m, x.b, x.ceiling).unwrap(),
                None => s.push_str("witness none (cap reached)\n"),
            }
            s
        }
        BoundsCommand::PartialSpread { n, k, q } => {
            format!("partial-spread n={n} k={k} q={q}: {}\n", bounds::partial_spread_lower_bound(n, k, q)?)
        }
        BoundsCommand::FdtwSize { n, k, q } => {
            format!("fdtw-size n={n} k={k} q={q}: {}\n", bounds::fdtw_size_from_partial_spread(n, k, q)?)
        }
        BoundsCommand::SpreadUpper { n, k, q } => {
            format!("spread-upper n={n} k={k} q={q}: {}\n", bounds::spread_upper_bound(n, k, q)?)
        }
        BoundsCommand::OptimalFamily { m } => {
            let (a, b) = bounds::optimal_family_values(m)?;
            format!("optimal-family m={m}: {a} {b}\n")
        }
    })
}

fn run_verify(v: VerifyCommand) -> Outcome {
    match v {
        VerifyCommand::Distance { code, cap } => {
            let code = format::load_cw(&code)?;
            let r = verify::min_distance_capped(&code, cap)?;
            let line = format!(
                "min distance {} (words {}, {}), declared {}\n",
                r.distance,
                r.pair.0,
                r.pair.1,
                code.declared_d()
            );
            if r.distance < code.declared_d() {
                return Err(fail(3, line.trim_end()));
            }
            Ok(line)
        }
        VerifyCommand::Steiner { code, t } => {
            let code = format::load_cw(&code)?;
            let r = verify::check_steiner(&code, t)?;
            match r.counterexample.filter(|_| !r.holds) {
                None => Ok(format!("steiner S({t},{},{}) holds\n", code.weight(), code.len())),
                Some((set, count)) => Err(fail(
                    3,
                    format!("steiner t={t} fails: {{{}}} covered {count} times", emit_list(&set)),
                )),
            }
        }
        VerifyCommand::Cyclic { code } => {
            let code = format::load_cw(&code)?;
            if verify::is_cyclic(&code) {
                Ok("cyclic\n".into())
            } else {
                Err(fail(3, "not cyclic"))
            }
        }
    }
}

fn emit_list(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}
