//! Khovanov polynomial of a nonsplit alternating family member from its
//! Jones polynomial, signature and linking data.
//!
//! With `S(x)` the split term below and `x` standing for `-q^2` (Jones) or
//! `t q^2` (Khovanov):
//!
//! ```text
//! J  = q^-sigma ((q + q^-1) S(-q^2)  + (q^-1 - q^3)   J'(-q^2))
//! Kh = q^-sigma ((q + q^-1) S(t q^2) + (q^-1 + t q^3) J'(t q^2))
//! ```

use num_traits::One;
use thiserror::Error;

use crate::laurent::{BivariateLaurent, LaurentError, RationalScalar, UnivariateLaurent, Variable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeeError {
    #[error("b must be odd (got b = {0})")]
    EvenB(i32),
    #[error("remainder is not divisible by q^-1 - q^3; wrong signature or conventions")]
    NotDivisible,
    #[error("reduced Jones has odd power {0}; wrong signature or conventions")]
    OddPower(i32),
    #[error("reduced Jones has coefficient {coeff} at x^{power}; expected a nonnegative integer")]
    NotPoincare { power: i32, coeff: RationalScalar },
    #[error(transparent)]
    Laurent(LaurentError),
}

impl From<LaurentError> for LeeError {
    fn from(e: LaurentError) -> Self {
        match e {
            LaurentError::DivisionFails => LeeError::NotDivisible,
            LaurentError::OddPowerPresent(k) => LeeError::OddPower(k),
            other => LeeError::Laurent(other),
        }
    }
}

/// `1` for even `a`, `1 + x^(b-a)` for odd `a` (two components).
pub fn split_term(a: i32, b: i32) -> Result<UnivariateLaurent, LeeError> {
    if b % 2 == 0 {
        return Err(LeeError::EvenB(b));
    }
    let one = UnivariateLaurent::one(Variable::X);
    if a % 2 == 0 {
        Ok(one)
    } else {
        Ok(&one + &UnivariateLaurent::monomial(Variable::X, RationalScalar::from(1), b - a))
    }
}

fn q_poly(s: &str) -> UnivariateLaurent {
    UnivariateLaurent::parse(Variable::Q, s).expect("valid literal")
}

/// Solves the Jones identity above for `J'`, returned in `x`.
///
/// `J'` equals the Poincare polynomial `Kh'`, so every coefficient must be a
/// nonnegative integer.
pub fn extract_jprime(j: &UnivariateLaurent, sigma: i32, a: i32, b: i32) -> Result<UnivariateLaurent, LeeError> {
    let jprime = extract_jprime_unchecked(j, sigma, a, b)?;
    if let Some((power, coeff)) = jprime
        .terms()
        .find(|(_, c)| c.numer().sign() == num_bigint::Sign::Minus || !c.denom().is_one())
    {
        return Err(LeeError::NotPoincare { power, coeff });
    }
    Ok(jprime)
}

/// Division and `x`-rewrite only, without the coefficient check.
pub fn extract_jprime_unchecked(
    j: &UnivariateLaurent,
    sigma: i32,
    a: i32,
    b: i32,
) -> Result<UnivariateLaurent, LeeError> {
    assert_eq!(j.variable(), Variable::Q, "J must be a polynomial in q");
    let split = split_term(a, b)?.expand_as_neg_q_squared();
    let remainder = &j.shift(sigma) - &(&q_poly("q + q^-1") * &split);
    let quotient = remainder.exact_div(&q_poly("q^-1 - q^3"))?;
    Ok(quotient.rewrite_in_neg_q_squared()?)
}

/// `Kh` from `J`, by way of `J'` with `x = t q^2`.
pub fn reconstruct_khovanov(j: &UnivariateLaurent, sigma: i32, a: i32, b: i32) -> Result<BivariateLaurent, LeeError> {
    let jprime = extract_jprime(j, sigma, a, b)?;
    let circle: BivariateLaurent = "q + q^-1".parse().expect("valid literal");
    let factor: BivariateLaurent = "q^-1 + t*q^3".parse().expect("valid literal");
    let split = split_term(a, b)?.expand_as_t_q_squared();
    let inner = &(&circle * &split) + &(&factor * &jprime.expand_as_t_q_squared());
    Ok(inner.shift(-sigma, 0))
}
