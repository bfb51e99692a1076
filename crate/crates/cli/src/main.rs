//! Command-line front end: evaluate E / A / c / F_tau / F_(g,h), emit
//! tables, run verification suites, count constrained congruences, and
//! produce asymptotic reports. Output is JSON records (one per line) or
//! CSV; values are decimal strings or "p/q", never floating point, except
//! the asymptotics fields which carry an explicit precision note.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use orbicyclic::arith::divisors;
use orbicyclic::asymptotics::asymptotic_report;
use orbicyclic::congruence::{count_bruteforce, count_formula, CongruenceInstance, DivisorSet};
use orbicyclic::gcdsum::{a_convolution, a_definition, a_divisor, a_multiplicative};
use orbicyclic::orbicyclic::{e_convolution, e_definition, e_divisor, e_multiplicative};
use orbicyclic::ramanujan::{c_divisor, c_exponential, c_prime_power_method};
use orbicyclic::unified::{
    f_general_convolution, f_general_definition, f_general_divisor, ApostolPair, OneVarFn,
};
use orbicyclic::{ArgTuple, Error, Rational};

const EXIT_PROPERTY_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "orbicyclic", version, about = "Exact evaluation of the orbicyclic function E, the gcd-sum function A, Ramanujan sums, and related congruence counts")]
struct Cli {
    /// Output format for records
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Definition,
    Convolution,
    Divisor,
    Multiplicative,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate one function at one argument tuple
    Eval {
        /// Function name: E, A, c, Ftau, or Fgh
        function: String,
        /// Positive integer arguments (for c: n k)
        args: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Built-in (g,h) pair for Fgh: ramanujan, gcd, tau, or "tau,mu"
        #[arg(long)]
        pair: Option<String>,
        /// Text file with "n value" lines defining g for Fgh
        #[arg(long)]
        g_table: Option<PathBuf>,
        /// Text file with "n value" lines defining h for Fgh
        #[arg(long)]
        h_table: Option<PathBuf>,
    },
    /// Emit the function over the full grid [1,max]^r in lexicographic order
    Table {
        /// Function name: E, A, c, or Ftau
        function: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Run a named cross-method property suite
    Verify {
        /// ramanujan, orbicyclic, gcdsum, unified, congruence, inversion, or all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 20)]
        max: u64,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count solutions of x_1 + ... + x_r = n (mod M) with gcd constraints
    Congruence {
        #[arg(long = "M")]
        modulus: u64,
        #[arg(long)]
        n: u64,
        /// Divisor sets: semicolon-separated sets of comma-separated divisors,
        /// e.g. "1;1" or "1,2;4"
        #[arg(long)]
        sets: String,
        /// Cross-check the formula against brute-force enumeration
        #[arg(long)]
        brute: bool,
    },
    /// Exact partial sum of the diagonal f_r with its Euler-product prediction
    Asympt {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        x: u64,
        #[arg(long = "prime-bound", default_value_t = 100_000)]
        prime_bound: u64,
    },
}

#[derive(Serialize)]
struct OutputRecord {
    function: String,
    args: Vec<String>,
    value: String,
    method: String,
}

#[derive(Serialize)]
struct AsymptRecord {
    function: String,
    r: u32,
    x: u64,
    exact_sum: String,
    c_r: Option<String>,
    tail_bound: Option<f64>,
    predicted: Option<String>,
    ratio: Option<f64>,
    precision: String,
}

fn render_rational(v: &Rational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::GuardExceeded(_) => EXIT_GUARD,
        _ => EXIT_USAGE,
    }
}

struct Sink {
    out: Option<PathBuf>,
    buf: Vec<u8>,
}

impl Sink {
    fn new(out: Option<PathBuf>) -> Self {
        Sink { out, buf: Vec::new() }
    }

    fn line(&mut self, s: &str) {
        self.buf.extend_from_slice(s.as_bytes());
        self.buf.push(b'\n');
    }

    fn record(&mut self, format: Format, rec: &OutputRecord) {
        match format {
            Format::Json => self.line(&serde_json::to_string(rec).expect("serializable")),
            Format::Csv => {
                let mut row = rec.args.join(",");
                row.push(',');
                row.push_str(&rec.value);
                self.line(&row);
            }
        }
    }

    fn flush(self) -> std::io::Result<()> {
        match self.out {
            Some(path) => fs::write(path, self.buf),
            None => std::io::stdout().write_all(&self.buf),
        }
    }
}

/// One method dispatch shared by eval and table. Returns (value, method label).
fn evaluate(
    function: &str,
    args: &[u64],
    method: Method,
    pair: Option<&ApostolPair>,
) -> Result<(Rational, &'static str), Error> {
    let bad = |msg: String| Error::InvalidArgument(msg);
    match function {
        "E" => {
            let t = ArgTuple::new(args.to_vec())?;
            let (v, label) = match method {
                Method::Definition => (e_definition(&t, t.lcm())?, "definition"),
                Method::Convolution => (e_convolution(&t)?, "convolution"),
                Method::Divisor => (e_divisor(&t)?, "divisor"),
                Method::Multiplicative | Method::Auto => {
                    (e_multiplicative(&t)?, "multiplicative")
                }
            };
            Ok((Rational::from_integer(v), label))
        }
        "A" => {
            let t = ArgTuple::new(args.to_vec())?;
            Ok(match method {
                Method::Definition => (a_definition(&t)?, "definition"),
                Method::Convolution => (a_convolution(&t)?, "convolution"),
                Method::Divisor => (a_divisor(&t)?, "divisor"),
                Method::Multiplicative | Method::Auto => {
                    (a_multiplicative(&t)?, "multiplicative")
                }
            })
        }
        "c" => {
            let [n, k] = args else {
                return Err(bad(format!("c takes exactly two arguments, got {}", args.len())));
            };
            let (v, label) = match method {
                Method::Definition => (c_exponential(*n, *k)?, "definition"),
                Method::Divisor => (c_divisor(*n, *k)?, "divisor"),
                Method::Multiplicative | Method::Auto => {
                    (c_prime_power_method(*n, *k)?, "multiplicative")
                }
                Method::Convolution => {
                    return Err(bad("c has no convolution method".into()))
                }
            };
            Ok((Rational::from_integer(v), label))
        }
        "Ftau" | "Fgh" => {
            let t = ArgTuple::new(args.to_vec())?;
            let default = ApostolPair::tau_kernel();
            let pair = match (function, pair) {
                ("Ftau", _) => &default,
                ("Fgh", Some(p)) => p,
                _ => {
                    return Err(bad("Fgh needs --pair or --g-table/--h-table".into()))
                }
            };
            Ok(match method {
                Method::Definition => (f_general_definition(pair, &t)?, "definition"),
                Method::Divisor => (f_general_divisor(pair, &t)?, "divisor"),
                Method::Convolution | Method::Auto => {
                    (f_general_convolution(pair, &t)?, "convolution")
                }
                Method::Multiplicative => {
                    return Err(bad("F has no dedicated multiplicative method; use convolution".into()))
                }
            })
        }
        other => Err(Error::UnknownName {
            kind: "function",
            name: other.into(),
        }),
    }
}

/// Parses a "n value" table file; values are integers or p/q.
fn load_table(name: &str, path: &PathBuf) -> Result<OneVarFn, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    let mut table = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(n), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::InvalidArgument(format!(
                "{}:{}: expected \"n value\"",
                path.display(),
                lineno + 1
            )));
        };
        let n: u64 = n.parse().map_err(|_| {
            Error::InvalidArgument(format!("{}:{}: bad index {n}", path.display(), lineno + 1))
        })?;
        let v = Rational::from_str(v).map_err(|_| {
            Error::InvalidArgument(format!("{}:{}: bad value {v}", path.display(), lineno + 1))
        })?;
        table.insert(n, v);
    }
    Ok(OneVarFn::from_table(name, table))
}

fn parse_sets(modulus: u64, spec: &str) -> Result<Vec<DivisorSet>, Error> {
    let divs = divisors(modulus)?;
    spec.split(';')
        .map(|set| {
            let ds = set
                .split(',')
                .map(|d| {
                    let d: u64 = d.trim().parse().map_err(|_| {
                        Error::InvalidArgument(format!("bad divisor {d:?} in --sets"))
                    })?;
                    if !divs.contains(&d) {
                        return Err(Error::NotADivisor {
                            value: d,
                            modulus,
                        });
                    }
                    Ok(d)
                })
                .collect::<Result<Vec<_>, _>>()?;
            DivisorSet::new(ds)
        })
        .collect()
}

fn run(cli: Cli) -> Result<u8, Error> {
    let mut sink = Sink::new(cli.out.clone());
    let mut code = 0u8;
    match cli.cmd {
        Cmd::Eval {
            function,
            args,
            method,
            pair,
            g_table,
            h_table,
        } => {
            let built_pair = match (&pair, &g_table, &h_table) {
                (Some(name), None, None) => Some(ApostolPair::builtin(name)?),
                (None, Some(g), Some(h)) => {
                    Some(ApostolPair::new(load_table("g", g)?, load_table("h", h)?))
                }
                (None, None, None) => None,
                _ => {
                    return Err(Error::InvalidArgument(
                        "give either --pair or both --g-table and --h-table".into(),
                    ))
                }
            };
            let (value, label) = evaluate(&function, &args, method, built_pair.as_ref())?;
            sink.record(
                cli.format,
                &OutputRecord {
                    function,
                    args: args.iter().map(|a| a.to_string()).collect(),
                    value: render_rational(&value),
                    method: label.into(),
                },
            );
        }
        Cmd::Table {
            function,
            r,
            max,
            method,
        } => {
            if r == 0 || max == 0 {
                return Err(Error::InvalidArgument("need r >= 1 and max >= 1".into()));
            }
            if cli.format == Format::Csv {
                let header: Vec<String> = (1..=r).map(|i| format!("m{i}")).collect();
                sink.line(&format!("{},value", header.join(",")));
            }
            let mut args = vec![1u64; r];
            'rows: loop {
                let (value, label) = evaluate(&function, &args, method, None)?;
                sink.record(
                    cli.format,
                    &OutputRecord {
                        function: function.clone(),
                        args: args.iter().map(|a| a.to_string()).collect(),
                        value: render_rational(&value),
                        method: label.into(),
                    },
                );
                // lexicographic order: last coordinate varies fastest
                let mut i = r;
                loop {
                    if i == 0 {
                        break 'rows;
                    }
                    args[i - 1] += 1;
                    if args[i - 1] <= max {
                        break;
                    }
                    args[i - 1] = 1;
                    i -= 1;
                }
            }
        }
        Cmd::Verify { suite, max, r, seed } => {
            for rep in orbicyclic::suites::run(&suite, max, r, seed)? {
                sink.line(&format!(
                    "suite {}: {} passed, {} failed",
                    rep.suite, rep.passed, rep.failed
                ));
                if let Some(cx) = &rep.first_failure {
                    sink.line(&format!("  first counterexample: {cx}"));
                    code = EXIT_PROPERTY_FAILURE;
                }
            }
        }
        Cmd::Congruence {
            modulus,
            n,
            sets,
            brute,
        } => {
            let parsed = parse_sets(modulus, &sets)?;
            let inst = CongruenceInstance::new(modulus, n, parsed)?;
            let count = count_formula(&inst)?;
            if brute {
                let enumerated = BigInt::from(count_bruteforce(&inst)?);
                if enumerated != count {
                    sink.line(&format!(
                        "mismatch: formula {count}, brute force {enumerated}"
                    ));
                    code = EXIT_PROPERTY_FAILURE;
                }
            }
            sink.record(
                cli.format,
                &OutputRecord {
                    function: "N".into(),
                    args: vec![modulus.to_string(), n.to_string(), sets],
                    value: count.to_string(),
                    method: if brute { "formula+brute".into() } else { "formula".into() },
                },
            );
        }
        Cmd::Asympt { r, x, prime_bound } => {
            let reports = asymptotic_report(r, &[x], prime_bound)?;
            let rep = &reports[0];
            let est = if r >= 2 {
                Some(orbicyclic::asymptotics::euler_constant(r, prime_bound)?)
            } else {
                None
            };
            let rec = AsymptRecord {
                function: "S".into(),
                r,
                x,
                exact_sum: rep.exact_sum.to_string(),
                c_r: est.as_ref().map(|e| e.value.to_decimal_string(40)),
                tail_bound: est.as_ref().map(|e| e.tail_bound),
                predicted: rep.predicted.as_ref().map(|p| p.to_decimal_string(6)),
                ratio: rep.ratio,
                precision: format!(
                    "fixed-point with {} fractional digits; tail_bound is a relative truncation bound",
                    orbicyclic::asymptotics::PRECISION_DIGITS
                ),
            };
            sink.line(&serde_json::to_string(&rec).expect("serializable"));
        }
    }
    sink.flush()
        .map_err(|e| Error::InvalidArgument(format!("write failed: {e}")))?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
