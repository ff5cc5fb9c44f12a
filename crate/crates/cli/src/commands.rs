use std::io::Write;

use rayon::prelude::*;

use fibzeta::numerics::Context;
use fibzeta::{
    all_roots, enumerate_poles, evaluate, fib_sequence, zeta_negative, ContinuationOptions, Error, HPComplex, HPReal,
    MethodChoice, Window,
};

use crate::args::{parse_complex, parse_range, parse_real, Cli, Command, EvalArgs, Format, GridArgs, WindowArgs};
use crate::output::{self, EvalReport, FibRow, GridRow, PoleReport, RootsReport, SpecialReport};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Library(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<(), Failure>;

struct Config {
    prec: usize,
    tol: HPReal,
    format: Option<Format>,
}

fn json_line<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> Outcome {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn csv_row(out: &mut dyn Write, fields: &[&str]) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(fields).map_err(|e| Failure::Io(e.into()))?;
    w.flush()?;
    Ok(())
}

fn options(k_max: Option<usize>) -> ContinuationOptions {
    match k_max {
        Some(k) => ContinuationOptions::with_k_max(k),
        None => ContinuationOptions::default(),
    }
}

fn check_ell(ell: u32) -> Outcome {
    if ell < 2 {
        return Err(Failure::Usage(format!("--ell must be at least 2, got {ell}")));
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let prec = cli.precision as usize;
    let tol = parse_real(&cli.tol, prec).map_err(Failure::Usage)?;
    if !tol.is_positive() {
        return Err(Failure::Usage(String::from("--tol must be positive")));
    }
    let cfg = Config {
        prec,
        tol,
        format: cli.format,
    };
    match &cli.command {
        Command::Fib(a) => fib(&cfg, a.ell, a.n_max, out),
        Command::Roots(a) => roots(&cfg, a.ell, out),
        Command::Eval(a) => eval(&cfg, a, out),
        Command::Poles(a) => poles(&cfg, a, out),
        Command::Special(a) => special(&cfg, a.ell, a.m, out),
        Command::Grid(a) => grid(&cfg, a, out),
    }
}

fn fib(cfg: &Config, ell: u32, n_max: i64, out: &mut dyn Write) -> Outcome {
    check_ell(ell)?;
    if n_max < 1 {
        return Err(Failure::Usage(format!("--n-max must be at least 1, got {n_max}")));
    }
    let seq = fib_sequence(ell, n_max)?;
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            csv_row(out, &["n", "value"])?;
            for (n, v) in seq.iter() {
                csv_row(out, &[&n.to_string(), &v.to_string()])?;
            }
            Ok(())
        }
        Format::Json => {
            let rows: Vec<FibRow> = seq
                .iter()
                .map(|(n, v)| FibRow {
                    n,
                    value: v.to_string(),
                })
                .collect();
            json_line(out, &rows)
        }
    }
}

fn roots(cfg: &Config, ell: u32, out: &mut dyn Write) -> Outcome {
    check_ell(ell)?;
    let rs = all_roots(ell, cfg.prec)?;
    let report = RootsReport::new(&rs);
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => json_line(out, &report),
        Format::Csv => {
            csv_row(out, &["index", "re", "im", "modulus", "binet_re", "binet_im"])?;
            for r in &report.roots {
                csv_row(out, &[&r.index.to_string(), &r.re, &r.im, &r.modulus, &r.binet.re, &r.binet.im])?;
            }
            Ok(())
        }
    }
}

fn eval(cfg: &Config, a: &EvalArgs, out: &mut dyn Write) -> Outcome {
    check_ell(a.ell)?;
    let s = parse_complex(&a.s, cfg.prec).map_err(Failure::Usage)?;
    let rs = all_roots(a.ell, cfg.prec)?;
    let r = evaluate(&rs, &s, &cfg.tol, a.method.into(), &options(a.k_max))?;
    let report = EvalReport::new(a.ell, &r);
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => json_line(out, &report),
        Format::Csv => {
            csv_row(
                out,
                &["s_re", "s_im", "value_re", "value_im", "error_bound", "bound_kind", "method", "terms_used"],
            )?;
            csv_row(
                out,
                &[
                    &report.s.re,
                    &report.s.im,
                    &report.value_re,
                    &report.value_im,
                    &report.error_bound,
                    report.bound_kind,
                    report.method,
                    &report.terms_used.to_string(),
                ],
            )
        }
    }
}

fn window(cfg: &Config, a: &WindowArgs) -> Result<Window, Failure> {
    let (re_min, re_max) = parse_range(&a.re, cfg.prec).map_err(Failure::Usage)?;
    let (im_min, im_max) = parse_range(&a.im, cfg.prec).map_err(Failure::Usage)?;
    Window::new(re_min, re_max, im_min, im_max).map_err(|e| Failure::Usage(e.to_string()))
}

fn poles(cfg: &Config, a: &WindowArgs, out: &mut dyn Write) -> Outcome {
    check_ell(a.ell)?;
    let w = window(cfg, a)?;
    let rs = all_roots(a.ell, cfg.prec)?;
    let groups = enumerate_poles(&rs, &w)?;
    let reports: Vec<PoleReport> = groups.iter().map(PoleReport::from).collect();
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => json_line(out, &reports),
        Format::Csv => {
            csv_row(out, &["re", "im", "residue_re", "residue_im", "genuine", "multiplicity"])?;
            for r in &reports {
                csv_row(
                    out,
                    &[
                        &r.location.re,
                        &r.location.im,
                        &r.total_residue.re,
                        &r.total_residue.im,
                        if r.genuine { "true" } else { "false" },
                        &r.multiplicity.to_string(),
                    ],
                )?;
            }
            Ok(())
        }
    }
}

fn special(cfg: &Config, ell: u32, m: u32, out: &mut dyn Write) -> Outcome {
    check_ell(ell)?;
    if m == 0 {
        return Err(Failure::Usage(String::from("--m must be positive")));
    }
    let v = zeta_negative(ell, m, cfg.prec)?;
    let report = SpecialReport::from(&v);
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => json_line(out, &report),
        Format::Csv => {
            csv_row(out, &["ell", "m", "numeric_re", "numeric_im", "rational", "certified"])?;
            csv_row(
                out,
                &[
                    &ell.to_string(),
                    &m.to_string(),
                    &report.numeric.re,
                    &report.numeric.im,
                    report.rational.as_deref().unwrap_or(""),
                    if report.certified { "true" } else { "false" },
                ],
            )
        }
    }
}

/// Grid coordinates `start + i step` for `start + i step <= end`, rendered to 15
/// significant digits so that the printed point is the evaluated point.
fn axis(start: &HPReal, end: &HPReal, step: &HPReal, prec: usize) -> Vec<(String, HPReal)> {
    let slack = step.mul_pow2(-20);
    let mut points = Vec::new();
    let mut i = 0i64;
    loop {
        let x = start + &(step * HPReal::from_i64(i, prec));
        if x > end + &slack {
            break;
        }
        let text = x.to_decimal(15);
        let exact = HPReal::from_decimal_str(&text, prec).expect("rendered decimal parses");
        points.push((text, exact));
        i += 1;
    }
    points
}

const GRID_POINTS_MAX: usize = 4_000_000;

fn grid(cfg: &Config, a: &GridArgs, out: &mut dyn Write) -> Outcome {
    check_ell(a.window.ell)?;
    let w = window(cfg, &a.window)?;
    let step = parse_real(&a.step, cfg.prec).map_err(Failure::Usage)?;
    if !step.is_positive() {
        return Err(Failure::Usage(String::from("--step must be positive")));
    }
    let count = |lo: &HPReal, hi: &HPReal| ((hi - lo) / &step).to_f64() + 1.0;
    if count(&w.re_min, &w.re_max) * count(&w.im_min, &w.im_max) > GRID_POINTS_MAX as f64 {
        return Err(Failure::Usage(format!("grid exceeds {GRID_POINTS_MAX} points")));
    }
    let res = axis(&w.re_min, &w.re_max, &step, cfg.prec);
    let ims = axis(&w.im_min, &w.im_max, &step, cfg.prec);
    let rs = all_roots(a.window.ell, cfg.prec)?;
    let opts = options(a.k_max);
    let method: MethodChoice = a.method.into();
    let cells: Vec<(usize, usize)> = (0..res.len()).flat_map(|i| (0..ims.len()).map(move |j| (i, j))).collect();
    let rows: Vec<Result<GridRow, Error>> = cells
        .par_iter()
        .map(|&(i, j)| {
            let s = HPComplex::new(res[i].1.clone(), ims[j].1.clone());
            let (abs, arg) = match evaluate(&rs, &s, &cfg.tol, method, &opts) {
                Ok(r) => {
                    let ctx = Context::new();
                    (Some(output::real(&r.value.abs())), Some(output::real(&r.value.arg(&ctx))))
                }
                Err(Error::PoleProximity(_)) => (None, None),
                Err(e) => return Err(e),
            };
            Ok(GridRow {
                re: res[i].0.clone(),
                im: ims[j].0.clone(),
                abs,
                arg,
            })
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>, _>>()?;
    match cfg.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            csv_row(out, &["re", "im", "abs", "arg"])?;
            for r in &rows {
                csv_row(out, &[&r.re, &r.im, r.abs.as_deref().unwrap_or(""), r.arg.as_deref().unwrap_or("")])?;
            }
            Ok(())
        }
        Format::Json => json_line(out, &rows),
    }
}
