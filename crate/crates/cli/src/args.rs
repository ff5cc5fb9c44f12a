use clap::{Args, Parser, Subcommand, ValueEnum};

use fibzeta::{HPComplex, HPReal, MethodChoice};

#[derive(Parser, Debug)]
#[command(name = "fibzeta", version, about = "Generalized Fibonacci zeta functions at high precision")]
pub struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, env = "FIBZETA_PRECISION", default_value_t = 256,
          value_parser = clap::value_parser!(u32).range(64..=1_000_000))]
    pub precision: u32,

    /// Absolute tolerance for series evaluation.
    #[arg(long, global = true, default_value = "1e-30", allow_hyphen_values = true)]
    pub tol: String,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print F_n for n from 2 - l up to n-max.
    Fib(FibArgs),
    /// Print the roots of x^l - x^(l-1) - ... - 1 with their Binet coefficients.
    Roots(OrderArgs),
    /// Evaluate the zeta function at one point.
    Eval(EvalArgs),
    /// List candidate poles in a window with their residues.
    Poles(WindowArgs),
    /// Value at a negative integer as a certified rational.
    Special(SpecialArgs),
    /// Evaluate on a rectangular grid for plotting.
    Grid(GridArgs),
}

#[derive(Args, Debug)]
pub struct OrderArgs {
    #[arg(long)]
    pub ell: u32,
}

#[derive(Args, Debug)]
pub struct FibArgs {
    #[arg(long)]
    pub ell: u32,
    #[arg(long, allow_hyphen_values = true)]
    pub n_max: i64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Direct,
    Continuation,
}

impl From<MethodArg> for MethodChoice {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Direct => MethodChoice::Direct,
            MethodArg::Continuation => MethodChoice::Continuation,
        }
    }
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long)]
    pub ell: u32,
    /// Complex argument such as `2`, `-1.5+1i` or `0.5-3i`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    /// Maximum number of outer continuation terms.
    #[arg(long)]
    pub k_max: Option<usize>,
}

#[derive(Args, Debug)]
pub struct WindowArgs {
    #[arg(long)]
    pub ell: u32,
    /// Real range `a:b`.
    #[arg(long, allow_hyphen_values = true)]
    pub re: String,
    /// Imaginary range `c:d`.
    #[arg(long, allow_hyphen_values = true)]
    pub im: String,
}

#[derive(Args, Debug)]
pub struct SpecialArgs {
    #[arg(long)]
    pub ell: u32,
    #[arg(long)]
    pub m: u32,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    #[command(flatten)]
    pub window: WindowArgs,
    #[arg(long)]
    pub step: String,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
    #[arg(long)]
    pub k_max: Option<usize>,
}

pub fn parse_real(text: &str, prec: usize) -> Result<HPReal, String> {
    let t = text.trim();
    let v = HPReal::from_decimal_str(t, prec).map_err(|_| format!("not a finite decimal number: {text:?}"))?;
    if !v.is_finite() {
        return Err(format!("not a finite decimal number: {text:?}"));
    }
    Ok(v)
}

/// Splits `a+bi` into its decimal parts; `bi` alone and `a` alone are accepted.
pub fn split_complex(text: &str) -> Result<(String, String), String> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok((t, String::from("0")));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.trim_start_matches('+'),
    };
    if re.is_empty() {
        return Err(format!("cannot parse complex number {text:?}"));
    }
    Ok((re.to_string(), im.to_string()))
}

pub fn parse_complex(text: &str, prec: usize) -> Result<HPComplex, String> {
    let (re, im) = split_complex(text)?;
    let bad = |_| format!("cannot parse complex number {text:?}");
    Ok(HPComplex::new(parse_real(&re, prec).map_err(bad)?, parse_real(&im, prec).map_err(bad)?))
}

/// `a:b` with `a <= b`.
pub fn parse_range(text: &str, prec: usize) -> Result<(HPReal, HPReal), String> {
    let (a, b) = text.split_once(':').ok_or_else(|| format!("expected a range a:b, got {text:?}"))?;
    let (a, b) = (parse_real(a, prec)?, parse_real(b, prec)?);
    if a > b {
        return Err(format!("empty range {text:?}"));
    }
    Ok((a, b))
}
