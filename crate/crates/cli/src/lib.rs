//! Command-line front end: certified point evaluations, piecewise builds,
//! the degree table, π digits, and the verification scan.
//!
//! Exit codes: 0 success, 1 domain/computation error, 2 usage error.
//! Every command echoes its flag values back in the output header (JSON
//! output carries them as fields instead).

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};

use certrig::exact::{format_fixed, parse_rational, pow10, rat, Rational};
use certrig::oracle::max_error_scan;
use certrig::piecewise::{piecewise_cos, piecewise_sin, Kind, PiecewiseApprox};
use certrig::pointwise::{cos_point, reduce, sin_point};
use certrig::schemes::{degree_table, sin_point_triple};
use certrig::{BigInt, Error};

/// Environment variable naming a π digit-cache file: plain text, first line
/// the significant-digit count, second line the decimal value.
pub const PI_CACHE_ENV: &str = "CERTRIG_PI_CACHE";

#[derive(Parser)]
#[command(name = "certrig", version, about = "Certified trigonometric approximation toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FuncArg {
    Sin,
    Cos,
}

impl FuncArg {
    fn name(self) -> &'static str {
        match self {
            FuncArg::Sin => "sin",
            FuncArg::Cos => "cos",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PiecewiseOut {
    Json,
    Summary,
    Expanded,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableOut {
    Md,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate sin at a rational point with certified accuracy 1/10^r.
    Sin {
        /// Argument, decimal ("2.5") or fraction ("5/2").
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        /// Accuracy exponent: absolute error stays below 10^-r.
        #[arg(long)]
        r: u32,
        /// Fractional digits to print (default r+2).
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Evaluate cos at a rational point with certified accuracy 1/10^r.
    Cos {
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Approximate sin(pi/k) within 1/10^r via the built-in rational proxy.
    SinPiOverK {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Evaluate sin by the triple-angle scheme (same certified accuracy).
    SinTriple {
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Show the argument reduction chosen for (y, r).
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        r: u32,
    },
    /// Build a piecewise polynomial approximant on [a, b].
    Piecewise {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value_t = FuncArg::Sin)]
        func: FuncArg,
        #[arg(long, value_enum, default_value_t = PiecewiseOut::Summary)]
        out: PiecewiseOut,
    },
    /// Sample a piecewise approximant as CSV rows `x,F(x)`.
    Plot {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        samples: u32,
        #[arg(long, value_enum, default_value_t = FuncArg::Sin)]
        func: FuncArg,
    },
    /// Print the scheme-vs-direct polynomial degree table.
    DegreeTable {
        /// Comma-separated accuracy exponents, e.g. 10,20,50,100,200.
        #[arg(long, value_delimiter = ',')]
        rs: Vec<u32>,
        #[arg(long, value_enum, default_value_t = TableOut::Md)]
        out: TableOut,
    },
    /// Print pi to n significant digits.
    Pi {
        #[arg(long)]
        digits: u32,
    },
    /// Scan a piecewise approximant against the high-precision reference.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        samples: u32,
        #[arg(long, value_enum, default_value_t = FuncArg::Sin)]
        func: FuncArg,
    },
}

/// Entry point shared by the binary and the tests. Applies the π cache file
/// if the environment names one, runs the command, and writes any updated
/// cache back. Returns the process exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            eprintln!("{e}");
            return 2;
        }
    };
    let cache_state = load_pi_cache();
    let code = match execute(&cli.cmd) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    };
    store_pi_cache(cache_state);
    code
}

/// Digit count found in the cache file at startup, if any, together with the
/// path (None when the env var is unset or the file was unusable).
type CacheState = Option<(String, u32)>;

fn load_pi_cache() -> CacheState {
    let path = std::env::var(PI_CACHE_ENV).ok()?;
    if path.is_empty() {
        return None;
    }
    if !Path::new(&path).exists() {
        return Some((path, 0));
    }
    match read_cache_file(&path) {
        Ok(digits) => Some((path, digits)),
        Err(e) => {
            eprintln!("warning: ignoring pi cache file {path}: {e}");
            Some((path, 0))
        }
    }
}

fn read_cache_file(path: &str) -> Result<u32, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("unreadable cache file: {e}")))?;
    let mut lines = text.lines();
    let digits: u32 = lines
        .next()
        .ok_or_else(|| Error::Parse("empty cache file".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::Parse("first line must be the digit count".into()))?;
    let value = parse_rational(
        lines
            .next()
            .ok_or_else(|| Error::Parse("missing digits line".into()))?
            .trim(),
    )?;
    certrig::pi::seed_cache(digits, &value)?;
    Ok(digits)
}

fn store_pi_cache(state: CacheState) {
    let Some((path, had_digits)) = state else { return };
    let avail = certrig::pi::certified_cache_digits();
    if avail <= had_digits.max(25) {
        return;
    }
    let Ok(value) = certrig::pi::pi_digits(avail) else { return };
    let body = format!("{avail}\n{}\n", format_fixed(&value, avail - 1));
    if let Err(e) = std::fs::write(&path, body) {
        eprintln!("warning: could not write pi cache file {path}: {e}");
    }
}

fn execute(cmd: &Cmd) -> Result<String, Error> {
    match cmd {
        Cmd::Sin { y, r, digits } => point_output("sin", y, *r, *digits, sin_point),
        Cmd::Cos { y, r, digits } => point_output("cos", y, *r, *digits, cos_point),
        Cmd::SinTriple { y, r, digits } => point_output("sin-triple", y, *r, *digits, sin_point_triple),
        Cmd::SinPiOverK { k, r, digits } => {
            let v = certrig::pointwise::sin_pi_over_k(*k, *r)?;
            let shown = digits.unwrap_or(r + 2);
            Ok(format!(
                "# sin-pi-over-k k={k} r={r}\n{}\n",
                format_fixed(&v, shown)
            ))
        }
        Cmd::Reduce { y, r } => {
            let yv = parse_rational(y)?;
            let red = reduce(&yv, *r)?;
            let mut s = format!("# reduce y={y} r={r}\n");
            let _ = writeln!(s, "m {}", red.m);
            let _ = writeln!(s, "pprime_digits {}", red.m + 2);
            let _ = writeln!(s, "pprime {}", red.half_pi);
            let _ = writeln!(s, "k0 {}", red.k);
            let _ = writeln!(s, "n {}", red.n);
            let _ = writeln!(s, "t {}", format_fixed(&red.t, 24));
            Ok(s)
        }
        Cmd::Piecewise { a, b, r, func, out } => {
            let f = build_piecewise(a, b, *r, *func)?;
            match out {
                PiecewiseOut::Json => Ok(format!("{}\n", f.to_json())),
                PiecewiseOut::Summary => Ok(summary(&f, a, b, false)),
                PiecewiseOut::Expanded => Ok(summary(&f, a, b, true)),
            }
        }
        Cmd::Plot { a, b, r, samples, func } => {
            if *samples < 2 {
                return Err(Error::Domain("plot needs samples >= 2".into()));
            }
            let f = build_piecewise(a, b, *r, *func)?;
            let mut s = format!(
                "# plot a={a} b={b} r={r} samples={samples} func={}\n",
                func.name()
            );
            let step = (&f.b - &f.a) / Rational::from_integer(BigInt::from(*samples - 1));
            for i in 0..*samples {
                let x = if i == samples - 1 {
                    f.b.clone()
                } else {
                    &f.a + &step * Rational::from_integer(BigInt::from(i))
                };
                let v = f.eval(&x)?;
                let _ = writeln!(s, "{},{}", format_fixed(&x, r + 2), format_fixed(&v, r + 2));
            }
            Ok(s)
        }
        Cmd::DegreeTable { rs, out } => {
            if rs.is_empty() {
                return Err(Error::Domain("degree-table needs at least one r".into()));
            }
            let rows = degree_table(rs)?;
            let mut s = format!(
                "# degree-table rs={}\n",
                rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",")
            );
            match out {
                TableOut::Md => {
                    s.push_str("| r | n (triple-angle) | 3n | n (product form) | 2n | n (direct) |\n");
                    s.push_str("|---|---|---|---|---|---|\n");
                    for row in rows {
                        let _ = writeln!(
                            s,
                            "| {} | {} | {} | {} | {} | {} |",
                            row.r, row.n_triple, row.deg_triple, row.n_product, row.deg_product, row.n_direct
                        );
                    }
                }
                TableOut::Csv => {
                    s.push_str("r,n_triple,deg_triple,n_product,deg_product,n_direct\n");
                    for row in rows {
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{}",
                            row.r, row.n_triple, row.deg_triple, row.n_product, row.deg_product, row.n_direct
                        );
                    }
                }
            }
            Ok(s)
        }
        Cmd::Pi { digits } => {
            let v = certrig::pi::pi_digits(*digits)?;
            Ok(format!("# pi digits={digits}\n{}\n", format_fixed(&v, digits - 1)))
        }
        Cmd::Verify { a, b, r, samples, func } => {
            let f = build_piecewise(a, b, *r, *func)?;
            let max = max_error_scan(&f, *samples)?;
            let tol = pow10(-(*r as i64));
            let verdict = if max < tol { "PASS" } else { "FAIL" };
            let s = format!(
                "# verify a={a} b={b} r={r} samples={samples} func={}\nmax_error {}\n{verdict} (tolerance 1e-{r})\n",
                func.name(),
                sci_string(&max, 3),
            );
            if max < tol {
                Ok(s)
            } else {
                // report through stdout but fail the invocation
                print!("{s}");
                Err(Error::Domain(format!("verification scan exceeded 1e-{r}")))
            }
        }
    }
}

fn point_output(
    name: &str,
    y: &str,
    r: u32,
    digits: Option<u32>,
    f: impl Fn(&Rational, u32) -> Result<Rational, Error>,
) -> Result<String, Error> {
    let yv = parse_rational(y)?;
    let v = f(&yv, r)?;
    let shown = digits.unwrap_or(r + 2);
    Ok(format!("# {name} y={y} r={r}\n{}\n", format_fixed(&v, shown)))
}

fn build_piecewise(a: &str, b: &str, r: u32, func: FuncArg) -> Result<PiecewiseApprox, Error> {
    let av = parse_rational(a)?;
    let bv = parse_rational(b)?;
    match func {
        FuncArg::Sin => piecewise_sin(&av, &bv, r),
        FuncArg::Cos => piecewise_cos(&av, &bv, r),
    }
}

fn summary(f: &PiecewiseApprox, a: &str, b: &str, expanded: bool) -> String {
    let mut s = format!(
        "# piecewise a={a} b={b} r={} func={}\n{} pieces\nm_global {}\n",
        f.r,
        f.func.name(),
        f.pieces.len(),
        f.m_global
    );
    s.push_str("breakpoints:\n");
    for brk in f.breakpoints() {
        let _ = writeln!(s, "  {}", format_fixed(&brk, f.r + 2));
    }
    s.push_str("pieces:\n");
    for (i, p) in f.pieces.iter().enumerate() {
        let _ = writeln!(
            s,
            "  {i}: [{}, {}] kind={} sign={} center={} degree={}",
            format_fixed(&p.lo, f.r + 2),
            format_fixed(&p.hi, f.r + 2),
            match p.kind {
                Kind::P => "P",
                Kind::Q => "Q",
            },
            p.sign,
            format_fixed(&p.center, f.r + 2),
            p.poly.degree().map_or(0, |d| d),
        );
        if expanded {
            // expand sign·poly(x − center) into plain x-coefficients for
            // side-by-side comparison with published printouts
            let sign = if p.sign < 0 { rat(-1, 1) } else { rat(1, 1) };
            let in_x = p.poly.shift_argument(&p.center).scale(&sign);
            for (d, c) in in_x.coeffs().iter().enumerate() {
                let _ = writeln!(s, "      x^{d}: {} ({})", sci_string(c, 10), c);
            }
        }
    }
    s
}

/// Scientific-notation rendering of an exact rational with `sig` significant
/// digits, computed without floating point.
fn sci_string(x: &Rational, sig: u32) -> String {
    let zero = rat(0, 1);
    if *x == zero {
        return "0".into();
    }
    let neg = *x < zero;
    let mut mag = if neg { -x } else { x.clone() };
    let one = rat(1, 1);
    let ten = rat(10, 1);
    let mut exp: i64 = 0;
    while mag < one {
        mag = mag * &ten;
        exp -= 1;
    }
    while mag >= ten {
        mag = mag / &ten;
        exp += 1;
    }
    let shown = format_fixed(&mag, sig - 1).to_string();
    // rounding can push the mantissa to 10.00…; renormalize
    let (mantissa, exp) = if shown.starts_with("10") {
        (format_fixed(&(mag / &ten), sig - 1).to_string(), exp + 1)
    } else {
        (shown, exp)
    };
    format!("{}{mantissa}e{exp}", if neg { "-" } else { "" })
}
