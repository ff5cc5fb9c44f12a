//! JSON shapes. Every real number is rendered as a decimal string.

use serde::Serialize;

use fibzeta::poles::{PoleCandidate, PoleGroup};
use fibzeta::{EvalResult, HPComplex, HPReal, PoleTuple, RationalValue, RootSet};

/// Significant digits carried by `prec` bits.
pub fn digits(prec: usize) -> usize {
    ((prec as f64) * std::f64::consts::LOG10_2) as usize
}

pub fn real(x: &HPReal) -> String {
    x.to_decimal(digits(x.precision()))
}

pub fn short(x: &HPReal) -> String {
    x.to_decimal(6)
}

#[derive(Serialize)]
pub struct Complex {
    pub re: String,
    pub im: String,
}

impl From<&HPComplex> for Complex {
    fn from(z: &HPComplex) -> Self {
        Complex {
            re: real(z.re()),
            im: real(z.im()),
        }
    }
}

#[derive(Serialize)]
pub struct FibRow {
    pub n: i64,
    pub value: String,
}

#[derive(Serialize)]
pub struct RootEntry {
    pub index: usize,
    pub re: String,
    pub im: String,
    pub modulus: String,
    pub binet: Complex,
    pub log: Complex,
}

#[derive(Serialize)]
pub struct RootsReport {
    pub ell: u32,
    pub precision: usize,
    pub alpha: String,
    pub dominant_scaled: String,
    pub residual_bound: String,
    pub roots: Vec<RootEntry>,
}

impl RootsReport {
    pub fn new(rs: &RootSet) -> Self {
        let roots = (0..rs.ell() as usize)
            .map(|i| {
                let z = rs.root(i);
                RootEntry {
                    index: i + 1,
                    re: real(z.re()),
                    im: real(z.im()),
                    modulus: real(&z.abs()),
                    binet: (&rs.binet_coefficients()[i]).into(),
                    log: (&rs.logs()[i]).into(),
                }
            })
            .collect();
        RootsReport {
            ell: rs.ell(),
            precision: rs.precision(),
            alpha: real(rs.alpha()),
            dominant_scaled: real(rs.dominant_scaled()),
            residual_bound: short(rs.residual_bound()),
            roots,
        }
    }
}

#[derive(Serialize)]
pub struct EvalReport {
    pub ell: u32,
    pub s: Complex,
    pub value_re: String,
    pub value_im: String,
    pub error_bound: String,
    pub bound_kind: &'static str,
    pub method: &'static str,
    pub terms_used: usize,
    pub decay_ratio: Option<String>,
    pub precision: usize,
}

impl EvalReport {
    pub fn new(ell: u32, r: &EvalResult) -> Self {
        EvalReport {
            ell,
            s: (&r.s).into(),
            value_re: real(r.value.re()),
            value_im: real(r.value.im()),
            error_bound: short(&r.bound.magnitude),
            bound_kind: r.bound.kind.as_str(),
            method: r.method.as_str(),
            terms_used: r.terms_used,
            decay_ratio: r.decay_ratio.map(|x| format!("{x:.6}")),
            precision: r.value.precision(),
        }
    }
}

#[derive(Serialize)]
pub struct Contributor {
    pub k: u32,
    pub parts: Vec<u32>,
    pub branch_n: i64,
    pub residue: Complex,
}

impl From<&PoleCandidate> for Contributor {
    fn from(c: &PoleCandidate) -> Self {
        Contributor {
            k: c.k,
            parts: c.parts.parts().to_vec(),
            branch_n: c.branch_n,
            residue: (&c.residue).into(),
        }
    }
}

#[derive(Serialize)]
pub struct PoleReport {
    pub location: Complex,
    pub total_residue: Complex,
    pub genuine: bool,
    pub multiplicity: usize,
    pub contributors: Vec<Contributor>,
}

impl From<&PoleGroup> for PoleReport {
    fn from(g: &PoleGroup) -> Self {
        PoleReport {
            location: (&g.location).into(),
            total_residue: (&g.total_residue).into(),
            genuine: g.genuine,
            multiplicity: g.contributors.len(),
            contributors: g.contributors.iter().map(Contributor::from).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SpecialReport {
    pub ell: u32,
    pub m: u32,
    pub numeric: Complex,
    pub rational: Option<String>,
    pub certified: bool,
    pub precisions_checked: [usize; 2],
}

impl From<&RationalValue> for SpecialReport {
    fn from(v: &RationalValue) -> Self {
        SpecialReport {
            ell: v.ell,
            m: v.m,
            numeric: (&v.numeric).into(),
            rational: v.rational.as_ref().map(|r| r.to_string()),
            certified: v.certified,
            precisions_checked: [v.precisions_checked.0, v.precisions_checked.1],
        }
    }
}

#[derive(Serialize)]
pub struct PoleProximityReport {
    pub error: &'static str,
    pub k: u32,
    pub parts: Vec<u32>,
    pub branch_n: i64,
}

impl From<&PoleTuple> for PoleProximityReport {
    fn from(t: &PoleTuple) -> Self {
        PoleProximityReport {
            error: "pole_proximity",
            k: t.k,
            parts: t.parts.clone(),
            branch_n: t.branch_n,
        }
    }
}

#[derive(Serialize)]
pub struct PoleAtReport {
    pub error: &'static str,
    pub m: u32,
}

#[derive(Serialize)]
pub struct GridRow {
    pub re: String,
    pub im: String,
    pub abs: Option<String>,
    pub arg: Option<String>,
}
