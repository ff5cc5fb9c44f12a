//! The candidate pole lattice
//! `s = -k + (2 pi i n + k_2 log alpha_2 + ... + k_l log alpha_l) / log alpha`
//! and its residues.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::ToPrimitive;

use crate::continuation::{compositions, Composition};
use crate::error::{domain, Result};
use crate::numerics::{generalized_binomial, Context, HPComplex, HPReal};
use crate::roots::RootSet;

/// Closed rectangle `[re_min, re_max] x [im_min, im_max]`.
#[derive(Clone, Debug)]
pub struct Window {
    pub re_min: HPReal,
    pub re_max: HPReal,
    pub im_min: HPReal,
    pub im_max: HPReal,
}

impl Window {
    pub fn new(re_min: HPReal, re_max: HPReal, im_min: HPReal, im_max: HPReal) -> Result<Self> {
        let all_finite = [&re_min, &re_max, &im_min, &im_max].iter().all(|x| x.is_finite());
        if !all_finite {
            return Err(domain("window must be bounded"));
        }
        if re_min > re_max || im_min > im_max {
            return Err(domain("window bounds are reversed"));
        }
        Ok(Window {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn from_f64(re: (f64, f64), im: (f64, f64), prec: usize) -> Result<Self> {
        Window::new(
            HPReal::from_f64(re.0, prec),
            HPReal::from_f64(re.1, prec),
            HPReal::from_f64(im.0, prec),
            HPReal::from_f64(im.1, prec),
        )
    }

    /// Containment with the boundary widened by `slack`.
    pub fn contains(&self, z: &HPComplex, slack: &HPReal) -> bool {
        let (re, im) = (z.re(), z.im());
        &(&self.re_min - slack) <= re
            && re <= &(&self.re_max + slack)
            && &(&self.im_min - slack) <= im
            && im <= &(&self.im_max + slack)
    }
}

/// One lattice point with its own residue term.
#[derive(Clone, Debug)]
pub struct PoleCandidate {
    pub k: u32,
    pub parts: Composition,
    pub branch_n: i64,
    pub location: HPComplex,
    pub residue: HPComplex,
}

/// Candidates sharing a location, with the summed residue.
#[derive(Clone, Debug)]
pub struct PoleGroup {
    pub location: HPComplex,
    pub total_residue: HPComplex,
    pub contributors: Vec<PoleCandidate>,
    pub genuine: bool,
}

impl PoleGroup {
    /// More than one index tuple lands here, so simplicity is not guaranteed.
    pub fn is_collision(&self) -> bool {
        self.contributors.len() > 1
    }
}

/// `2^(-precision/2)`.
pub fn grouping_tolerance(prec: usize) -> HPReal {
    HPReal::pow2(-(prec as i64) / 2, prec)
}

/// `2^(-precision/3)`.
pub fn residue_floor(prec: usize) -> HPReal {
    HPReal::pow2(-(prec as i64) / 3, prec)
}

fn check_parts(roots: &RootSet, k: u32, parts: &Composition) -> Result<()> {
    if parts.total() != k || parts.parts().len() != roots.ell() as usize - 1 {
        return Err(domain("composition must have l-1 parts summing to k"));
    }
    Ok(())
}

fn two_pi(prec: usize, ctx: &Context) -> HPReal {
    HPReal::pi(prec, ctx).mul_pow2(1)
}

fn parts_log_sum(roots: &RootSet, parts: &[u32]) -> HPComplex {
    let p = roots.precision();
    parts
        .iter()
        .zip(&roots.logs()[1..])
        .filter(|(part, _)| **part > 0)
        .fold(HPComplex::zero(p), |acc, (part, log)| &acc + &log.scale(&HPReal::from_u64(*part as u64, p)))
}

fn location_from(roots: &RootSet, k: u32, log_sum: &HPComplex, branch_n: i64, two_pi: &HPReal) -> HPComplex {
    let p = roots.precision();
    let shifted = HPComplex::new(log_sum.re().clone(), log_sum.im() + &(two_pi * HPReal::from_i64(branch_n, p)));
    &shifted.scale(&roots.log_alpha().recip()) - &HPComplex::from_i64(k as i64, p)
}

pub fn pole_location(roots: &RootSet, k: u32, parts: &Composition, branch_n: i64) -> Result<HPComplex> {
    check_parts(roots, k, parts)?;
    let ctx = Context::new();
    let log_sum = parts_log_sum(roots, parts.parts());
    Ok(location_from(roots, k, &log_sum, branch_n, &two_pi(roots.precision(), &ctx)))
}

/// `A^(-s0) binom(-s0, k) A^(-k) multinom prod B_i^(k_i) / log alpha` at `s0 = location`.
pub fn residue_contribution(roots: &RootSet, k: u32, parts: &Composition, location: &HPComplex) -> HPComplex {
    let p = roots.precision();
    let ctx = Context::new();
    let a = roots.dominant_scaled();
    let a_neg_s = (-location.scale(&a.ln(&ctx))).exp(&ctx);
    let binom = generalized_binomial(location, k as u64);
    let mut weight = HPComplex::from_real(HPReal::from_biguint(&parts.multinomial(), p) * a.recip().powi(k as i64));
    for (part, b) in parts.parts().iter().zip(&roots.scaled_coefficients()[1..]) {
        if *part > 0 {
            weight = &weight * &b.powi(*part as i64);
        }
    }
    (&(&a_neg_s * &binom) * &weight).scale(&roots.log_alpha().recip())
}

/// Candidate with its residue filled in.
pub fn candidate(roots: &RootSet, k: u32, parts: Composition, branch_n: i64) -> Result<PoleCandidate> {
    let location = pole_location(roots, k, &parts, branch_n)?;
    let residue = residue_contribution(roots, k, &parts, &location);
    Ok(PoleCandidate {
        k,
        parts,
        branch_n,
        location,
        residue,
    })
}

fn cmp_real(a: &HPReal, b: &HPReal) -> Ordering {
    a.partial_cmp(b).unwrap_or(Ordering::Equal)
}

/// Lexicographic on (Re, Im), treating real parts within `tol` as equal.
fn cmp_location(a: &HPComplex, b: &HPComplex, tol: &HPReal) -> Ordering {
    if (a.re() - b.re()).abs() < *tol {
        cmp_real(a.im(), b.im())
    } else {
        cmp_real(a.re(), b.re())
    }
}

/// All candidates in `window`, grouped by location and sorted by (Re, Im).
pub fn enumerate_poles(roots: &RootSet, window: &Window) -> Result<Vec<PoleGroup>> {
    let p = roots.precision();
    let ctx = Context::new();
    let tau = two_pi(p, &ctx);
    let log_alpha = roots.log_alpha();
    let tol = grouping_tolerance(p);
    let window = Window::new(
        window.re_min.with_precision(p),
        window.re_max.with_precision(p),
        window.im_min.with_precision(p),
        window.im_max.with_precision(p),
    )?;

    // Re(location) = -k - sum_i k_i m_i with m_i = -log|alpha_i| / log alpha in (0, 1),
    // so every candidate for this k has real part in [-2k, -k(1 + min m_i)].
    let min_decay = roots.logs()[1..]
        .iter()
        .map(|log| (-log.re() / log_alpha).to_f64())
        .fold(f64::INFINITY, f64::min);
    let re_min = window.re_min.to_f64();
    let re_max = window.re_max.to_f64();
    let parts_count = roots.ell() as usize - 1;

    let mut found: Vec<PoleCandidate> = Vec::new();
    let mut k: u32 = 0;
    while -(k as f64) * (1.0 + min_decay) >= re_min - 1.0 {
        if -2.0 * (k as f64) > re_max + 1.0 {
            k += 1;
            continue;
        }
        for comp in compositions(k, parts_count) {
            let log_sum = parts_log_sum(roots, comp.parts());
            let re = &(log_sum.re() / log_alpha) - &HPReal::from_i64(k as i64, p);
            if re < &window.re_min - &tol || re > &window.re_max + &tol {
                continue;
            }
            let lo = ((&window.im_min * log_alpha - log_sum.im()) / &tau).floor();
            let hi = ((&window.im_max * log_alpha - log_sum.im()) / &tau).floor();
            let (Some(lo), Some(hi)) = (lo.and_then(|v| v.to_i64()), hi.and_then(|v| v.to_i64())) else {
                return Err(domain("window too tall"));
            };
            for n in (lo - 1)..=(hi + 1) {
                let location = location_from(roots, k, &log_sum, n, &tau);
                if !window.contains(&location, &tol) {
                    continue;
                }
                let residue = residue_contribution(roots, k, &comp, &location);
                found.push(PoleCandidate {
                    k,
                    parts: comp.clone(),
                    branch_n: n,
                    location,
                    residue,
                });
            }
        }
        k += 1;
    }

    found.sort_by(|a, b| cmp_location(&a.location, &b.location, &tol));
    let floor = residue_floor(p);
    let mut groups: Vec<PoleGroup> = Vec::new();
    for cand in found {
        let mut home = None;
        for (gi, g) in groups.iter().enumerate().rev() {
            if g.location.re() < &(cand.location.re() - &tol) {
                break;
            }
            if (&g.location - &cand.location).abs() < tol {
                home = Some(gi);
                break;
            }
        }
        match home {
            Some(gi) => {
                let g = &mut groups[gi];
                g.total_residue = &g.total_residue + &cand.residue;
                g.contributors.push(cand);
            }
            None => groups.push(PoleGroup {
                location: cand.location.clone(),
                total_residue: cand.residue.clone(),
                contributors: alloc::vec![cand],
                genuine: false,
            }),
        }
    }
    for g in &mut groups {
        g.genuine = g.total_residue.abs() > floor;
    }
    groups.sort_by(|a, b| cmp_location(&a.location, &b.location, &tol));
    Ok(groups)
}

/// Closed form for the uniform composition `k_i = k / (l - 1)`:
/// `-(k + k/(l-1)) + i pi (2n + k/(l-1)) / log alpha` for even `l`,
/// `-(k + k/(l-1)) + 2 n pi i / log alpha` for odd `l`.
pub fn uniform_composition_pole(roots: &RootSet, k: u32, branch_n: i64) -> Result<HPComplex> {
    let ell = roots.ell();
    if !k.is_multiple_of(ell - 1) {
        return Err(domain("k must be a multiple of l - 1"));
    }
    let p = roots.precision();
    let ctx = Context::new();
    let j = (k / (ell - 1)) as i64;
    let re = HPReal::from_i64(-(k as i64 + j), p);
    let turns = if ell.is_multiple_of(2) { 2 * branch_n + j } else { 2 * branch_n };
    let im = HPReal::pi(p, &ctx) * HPReal::from_i64(turns, p) / roots.log_alpha();
    Ok(HPComplex::new(re, im))
}
