//! Command-line surface: emit carry polynomials, interpolate truth tables,
//! run big-integer arithmetic through them, and drive the verification
//! suites.
//!
//! Exit codes: 0 on success, 1 when a verification suite reports failures,
//! 2 on usage or domain errors.

use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use fpcarry::bignum::{
    add_many, add_many_tracked, add_two, add_two_tracked, mul_listed, mul_listed_tracked,
    mul_schoolbook, mul_schoolbook_tracked, Digits,
};
use fpcarry::interp::{interpolate, TruthTable};
use fpcarry::mpoly::{MPoly, Metrics};
use fpcarry::mul_carry::psi_aux;
use fpcarry::suites::{run_suite, Bounds, SUITE_NAMES};
use fpcarry::tracked::CostTape;
use fpcarry::{add_carry, mul_carry, Prime};

#[derive(Parser)]
#[command(
    name = "fpcarry",
    about = "Carry polynomials over F_p and big-integer arithmetic built from field additions and multiplications",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit carry polynomials in closed form.
    #[command(subcommand)]
    Carry(CarryCommand),
    /// Add or multiply base-p integers through carry-polynomial evaluations.
    #[command(subcommand)]
    Bignum(BignumCommand),
    /// Interpolate the minimal polynomial of a truth-table file.
    Interp(InterpArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
enum CarryCommand {
    /// The carry of an n-digit addition into position i.
    Add(CarryAddArgs),
    /// The carry of an n-digit product to the next position.
    Mul(CarryMulArgs),
    /// The auxiliary polynomial behind the product carry, and its value at 1.
    MulPsi(CarryPsiArgs),
}

#[derive(Args)]
struct CarryAddArgs {
    /// Prime modulus.
    #[arg(long)]
    p: u64,
    /// Number of summands.
    #[arg(long)]
    n: usize,
    /// Carry position (0 is the digit itself).
    #[arg(long)]
    i: u32,
    /// Print the polynomial's truth table instead of the polynomial.
    #[arg(long)]
    dump_table: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CarryMulArgs {
    /// Odd prime modulus.
    #[arg(long)]
    p: u64,
    /// Number of factors.
    #[arg(long)]
    n: usize,
    /// Print the polynomial's truth table instead of the polynomial.
    #[arg(long)]
    dump_table: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CarryPsiArgs {
    /// Odd prime modulus.
    #[arg(long)]
    p: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// Column addition of any number of operands.
    Many,
    /// Two-operand addition with the incoming-carry polynomial.
    Two,
    /// Row-by-row multiplication.
    Schoolbook,
    /// Partial-product-list multiplication.
    Listed,
}

#[derive(Subcommand)]
enum BignumCommand {
    /// Sum of two or more operands.
    Add(BignumArgs),
    /// Product of exactly two operands.
    Mul(BignumArgs),
}

#[derive(Args)]
struct BignumArgs {
    /// Prime modulus (odd for multiplication).
    #[arg(long)]
    p: u64,
    /// Algorithm override; defaults to `two`/`many` by operand count for
    /// addition and `schoolbook` for multiplication.
    #[arg(long, value_enum)]
    algo: Option<Algo>,
    /// Run over instrumented digits and append the operation counts.
    #[arg(long)]
    track: bool,
    /// Read and print operands as base-p digit strings instead of decimal.
    #[arg(long)]
    radix_literal: bool,
    #[arg(long)]
    json: bool,
    /// Operands, decimal by default.
    #[arg(required = true)]
    operands: Vec<String>,
}

#[derive(Args)]
struct InterpArgs {
    /// Truth-table file: header `p n`, then `x1 x2 ... xn -> v` lines.
    table: std::path::PathBuf,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: add-carry, mul-carry, bernoulli, cocycle, appendix, bignum, all.
    #[arg(long)]
    suite: String,
    /// Cap the prime grids.
    #[arg(long)]
    p_max: Option<u64>,
    /// Cap the Bernoulli index grid.
    #[arg(long)]
    l_max: Option<u64>,
    /// Operand pairs per big-integer configuration.
    #[arg(long)]
    pairs: Option<usize>,
    #[arg(long)]
    json: bool,
}

struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Carry(CarryCommand::Add(args)) => {
            let p = Prime::new(args.p)?;
            if args.n < 1 {
                return Err("need at least one summand".into());
            }
            let poly = add_carry::phi_poly(args.i, args.n, p);
            print_poly(&poly, args.dump_table, args.json, |out| {
                out.push_str(&format!(r#""p":{},"n":{},"i":{},"#, args.p, args.n, args.i));
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Carry(CarryCommand::Mul(args)) => {
            let p = Prime::new(args.p)?;
            if args.n < 1 {
                return Err("need at least one factor".into());
            }
            let poly = mul_carry::psi1_poly(args.n, p)?;
            print_poly(&poly, args.dump_table, args.json, |out| {
                out.push_str(&format!(r#""p":{},"n":{},"#, args.p, args.n));
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Carry(CarryCommand::MulPsi(args)) => {
            let p = Prime::new(args.p)?;
            let aux = psi_aux(p)?;
            if args.json {
                println!(
                    r#"{{"p":{},"psi":{},"psi_at_one":{}}}"#,
                    args.p,
                    serde_json::to_string(&aux.to_text()).unwrap(),
                    aux.at_one().value()
                );
            } else {
                println!("{}", aux.to_text());
                println!("Psi(1) = {}", aux.at_one());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Bignum(cmd) => run_bignum(cmd),
        Command::Interp(args) => {
            let text = std::fs::read_to_string(&args.table)
                .map_err(|e| format!("{}: {e}", args.table.display()))?;
            let table = TruthTable::parse(&text)?;
            let poly = interpolate(&table);
            print_poly(&poly, false, args.json, |out| {
                out.push_str(&format!(
                    r#""p":{},"n":{},"#,
                    table.modulus(),
                    table.nvars()
                ));
            })?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => run_verify(args),
    }
}

fn metrics_text(m: &Metrics) -> String {
    format!(
        "monomials = {}\ntotal_degree = {}\nmax_var_degree = {}",
        m.monomials, m.total_degree, m.max_var_degree
    )
}

fn print_poly(
    poly: &MPoly,
    dump_table: bool,
    json: bool,
    head: impl FnOnce(&mut String),
) -> Result<(), CliError> {
    if dump_table {
        let entries = (poly.modulus().get() as u128).checked_pow(poly.nvars() as u32);
        if entries.is_none_or(|e| e > (1 << 24)) {
            return Err("truth table too large to dump".into());
        }
        print!("{}", TruthTable::tabulate(poly).to_text());
        return Ok(());
    }
    let metrics = poly.metrics();
    if json {
        let mut out = String::from("{");
        head(&mut out);
        write!(
            out,
            r#""poly":{},"metrics":{}}}"#,
            serde_json::to_string(&poly.to_string()).unwrap(),
            serde_json::to_string(&metrics).unwrap()
        )
        .unwrap();
        println!("{out}");
    } else {
        println!("{poly}");
        println!("{}", metrics_text(&metrics));
    }
    Ok(())
}

fn run_bignum(cmd: BignumCommand) -> Result<ExitCode, CliError> {
    let (args, is_mul) = match &cmd {
        BignumCommand::Add(a) => (a, false),
        BignumCommand::Mul(a) => (a, true),
    };
    let p = Prime::new(args.p)?;
    let operands: Vec<Digits> = args
        .operands
        .iter()
        .map(|s| parse_operand(s, p, args.radix_literal))
        .collect::<Result<_, _>>()?;

    let algo = match (is_mul, args.algo) {
        (false, None) => {
            if operands.len() == 2 {
                Algo::Two
            } else {
                Algo::Many
            }
        }
        (true, None) => Algo::Schoolbook,
        (_, Some(a)) => a,
    };
    if is_mul && operands.len() != 2 {
        return Err("multiplication takes exactly two operands".into());
    }
    match algo {
        Algo::Two if operands.len() != 2 => {
            return Err("the `two` algorithm takes exactly two operands".into())
        }
        Algo::Two | Algo::Many if is_mul => {
            return Err("addition algorithm requested for a multiplication".into())
        }
        Algo::Schoolbook | Algo::Listed if !is_mul => {
            return Err("multiplication algorithm requested for an addition".into())
        }
        _ => {}
    }

    let tape = CostTape::new();
    let result = match (algo, args.track) {
        (Algo::Many, false) => add_many(&operands),
        (Algo::Many, true) => add_many_tracked(&operands, &tape),
        (Algo::Two, false) => add_two(&operands[0], &operands[1]),
        (Algo::Two, true) => add_two_tracked(&operands[0], &operands[1], &tape),
        (Algo::Schoolbook, false) => mul_schoolbook(&operands[0], &operands[1])?,
        (Algo::Schoolbook, true) => mul_schoolbook_tracked(&operands[0], &operands[1], &tape)?,
        (Algo::Listed, false) => mul_listed(&operands[0], &operands[1])?,
        (Algo::Listed, true) => mul_listed_tracked(&operands[0], &operands[1], &tape)?,
    };
    let rendered = if args.radix_literal {
        result.to_literal()?
    } else {
        result.to_biguint().to_string()
    };
    if args.json {
        let mut out = format!(r#"{{"p":{},"result":"{}""#, args.p, rendered);
        if args.track {
            write!(
                out,
                r#","cost":{}"#,
                serde_json::to_string(&tape.report()).unwrap()
            )
            .unwrap();
        }
        out.push('}');
        println!("{out}");
    } else {
        println!("{rendered}");
        if args.track {
            println!("{}", tape.report());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_operand(s: &str, p: Prime, radix_literal: bool) -> Result<Digits, CliError> {
    if radix_literal {
        Ok(Digits::parse_literal(s, p)?)
    } else {
        let v = BigUint::from_str(s).map_err(|_| format!("bad decimal operand {s:?}"))?;
        Ok(Digits::from_biguint(&v, p))
    }
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, CliError> {
    if !SUITE_NAMES.contains(&args.suite.as_str()) {
        return Err(format!(
            "unknown suite {:?}; expected one of {}",
            args.suite,
            SUITE_NAMES.join(", ")
        )
        .into());
    }
    let bounds = Bounds {
        p_max: args.p_max,
        l_max: args.l_max,
        pairs: args.pairs,
    };
    let checks = run_suite(&args.suite, &bounds)?;
    let all_pass = checks.iter().all(|c| c.pass);
    if args.json {
        println!(
            r#"{{"suite":{},"pass":{},"checks":{}}}"#,
            serde_json::to_string(&args.suite).unwrap(),
            all_pass,
            serde_json::to_string(&checks).unwrap()
        );
    } else {
        for c in &checks {
            if c.pass {
                println!("ok   {} ({})", c.name, c.detail);
            } else {
                println!("FAIL {}: {}", c.name, c.detail);
            }
        }
        let passed = checks.iter().filter(|c| c.pass).count();
        println!("{passed}/{} checks passed", checks.len());
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
