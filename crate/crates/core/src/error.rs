use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Index tuple `(k, k_2..k_l, n)` identifying one point of the candidate pole lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleTuple {
    pub k: u32,
    pub parts: Vec<u32>,
    pub branch_n: i64,
}

impl fmt::Display for PoleTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={} parts=(", self.k)?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ") n={}", self.branch_n)
    }
}

#[derive(Clone, Debug)]
pub enum Error {
    /// Recurrence order below 2.
    InvalidOrder(u32),
    /// Argument outside the operation's domain.
    Domain(String),
    /// `s` lies within the exclusion radius of a candidate pole.
    PoleProximity(PoleTuple),
    /// The requested negative integer is a pole.
    Pole { m: u32 },
    /// The outer series did not meet the tolerance within `k_max` terms.
    Truncation { k_max: usize, last_bound: f64 },
    /// An iteration failed to converge or a quantity lost all significance.
    PrecisionFault(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidOrder(l) => write!(f, "recurrence order must be at least 2, got {l}"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::PoleProximity(t) => write!(f, "argument is within the exclusion radius of the candidate pole {t}"),
            Error::Pole { m } => write!(f, "s = -{m} is a pole"),
            Error::Truncation { k_max, last_bound } => {
                write!(f, "series not converged after {k_max} terms (last term bound {last_bound:e})")
            }
            Error::PrecisionFault(msg) => write!(f, "precision fault: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain(msg: &str) -> Error {
    Error::Domain(String::from(msg))
}

pub(crate) fn precision_fault(msg: &str) -> Error {
    Error::PrecisionFault(String::from(msg))
}
