use serde::{Deserialize, Serialize};

use super::{BivariateLaurent, LaurentError, RationalScalar};

/// A rational-function matrix entry kept as an unreduced numerator and
/// denominator pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalEntry {
    pub numerator: BivariateLaurent,
    pub denominator: BivariateLaurent,
}

impl RationalEntry {
    /// Panics if the denominator is zero.
    pub fn new(numerator: BivariateLaurent, denominator: BivariateLaurent) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        Self {
            numerator,
            denominator,
        }
    }

    pub fn zero() -> Self {
        Self::new(BivariateLaurent::zero(), BivariateLaurent::one())
    }

    /// Parses both halves; panics on malformed input, so only use on literals.
    pub fn parse(numerator: &str, denominator: &str) -> Self {
        Self::new(
            numerator.parse().expect("numerator literal"),
            denominator.parse().expect("denominator literal"),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Cross-multiplied equality `n1 * d2 == n2 * d1`.
    pub fn equals(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }

    pub fn scaled_by(&self, factor: &BivariateLaurent) -> Self {
        Self::new(&self.numerator * factor, self.denominator.clone())
    }

    /// `self * factor` as a Laurent polynomial, if the quotient is exact.
    pub fn times_polynomial(&self, factor: &BivariateLaurent) -> Result<BivariateLaurent, LaurentError> {
        (&self.numerator * factor).exact_div(&self.denominator)
    }

    pub fn eval(&self, q0: &RationalScalar, t0: &RationalScalar) -> Result<RationalScalar, LaurentError> {
        let den = self.denominator.eval(q0, t0)?;
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(&self.numerator.eval(q0, t0)? / &den)
    }
}

/// Evaluates `row · matrix · column` as a Laurent polynomial.
///
/// Every entry is brought over `common_denominator` (which each entry's
/// denominator must divide exactly), the numerators are accumulated, and the
/// sum is divided by `common_denominator`; that last division must be exact.
pub fn contract(
    row: &[BivariateLaurent],
    matrix: &[Vec<RationalEntry>],
    column: &[BivariateLaurent],
    common_denominator: &BivariateLaurent,
) -> Result<BivariateLaurent, LaurentError> {
    assert_eq!(row.len(), matrix.len(), "row length");
    let mut acc = BivariateLaurent::zero();
    for (r, mrow) in row.iter().zip(matrix) {
        assert_eq!(mrow.len(), column.len(), "column length");
        for (entry, c) in mrow.iter().zip(column) {
            if entry.is_zero() {
                continue;
            }
            let cofactor = common_denominator.exact_div(&entry.denominator)?;
            acc = &acc + &(&(&(r * c) * &entry.numerator) * &cofactor);
        }
    }
    acc.exact_div(common_denominator)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_multiplied_equality() {
        let a = RationalEntry::parse("q^2*t - q^2", "2*q*t + 2*q");
        let b = RationalEntry::parse("q*t - q", "2*t + 2");
        assert!(a.equals(&b));
        assert!(!a.equals(&RationalEntry::parse("q*t - q", "t + 1")));
    }

    #[test]
    fn contract_two_by_two() {
        // (1, q) [[1/(q+1), 0], [0, 1/(q+1)]] (q, 1)^T = (q + q)/(q+1)... not exact
        let m = vec![
            vec![RationalEntry::parse("1", "q+1"), RationalEntry::zero()],
            vec![RationalEntry::zero(), RationalEntry::parse("1", "q+1")],
        ];
        let one = BivariateLaurent::one();
        let q = BivariateLaurent::q();
        let den: BivariateLaurent = "q+1".parse().unwrap();
        assert_eq!(
            contract(&[one.clone(), q.clone()], &m, &[q.clone(), one.clone()], &den),
            Err(LaurentError::DivisionFails)
        );
        let sq: BivariateLaurent = "q^2 - 1".parse().unwrap();
        let out = contract(&[one.clone(), one.clone()], &m, &[sq.clone(), sq], &den).unwrap();
        assert_eq!(out, "2*q - 2".parse().unwrap());
    }
}
