//! Exact Laurent polynomials in one and two variables over the rationals.

mod bivariate;
mod fraction;
mod parse;
mod scalar;
mod terms;
mod univariate;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use thiserror::Error;

pub use bivariate::BivariateLaurent;
pub use fraction::{contract, RationalEntry};
pub use scalar::RationalScalar;
pub use univariate::{change_of_variable, Substituted, UnivariateLaurent, Variable, VariableChange};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("no exact Laurent quotient exists")]
    DivisionFails,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("evaluation at zero with a negative exponent present")]
    ZeroBase,
    #[error("odd power {0} present; cannot rewrite in x = -q^2")]
    OddPowerPresent(i32),
    #[error("negative power of a polynomial that is not a monomial")]
    NonUnitInverse,
    #[error("expected a polynomial in {expected}, found one in {found}")]
    VariableMismatch { expected: char, found: char },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// Human-readable form `c*q^a*t^b + ...`; unit coefficients and zero
/// exponents are omitted.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (Vec<(char, i32)>, &'a BigRational)>,
{
    let mut first = true;
    for (vars, c) in terms {
        let vars: Vec<_> = vars.into_iter().filter(|(_, e)| *e != 0).collect();
        match (first, c.is_negative()) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        first = false;
        let abs = c.abs();
        let show_coeff = !abs.is_one() || vars.is_empty();
        if show_coeff {
            write!(f, "{}", RationalScalar::from(abs))?;
        }
        for (i, (sym, e)) in vars.iter().enumerate() {
            if show_coeff || i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{sym}")?;
            } else {
                write!(f, "{sym}^{e}")?;
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}
