use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bivariate::{owned_ops, BivariateLaurent};
use super::parse::Parser;
use super::terms::Terms;
use super::{write_terms, LaurentError, RationalScalar};

/// Which symbol a one-variable polynomial is written in.
///
/// `X` is the auxiliary argument of the reduced polynomials, standing for
/// `-q^2` (Jones side) or `t q^2` (Khovanov side).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    Q,
    X,
}

impl Variable {
    pub fn symbol(self) -> char {
        match self {
            Variable::Q => 'q',
            Variable::X => 'x',
        }
    }
}

/// The two substitutions used to move between `J`, `J'` and `Kh'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariableChange {
    /// q-polynomial with even powers only, rewritten in `x = -q^2`.
    QToNegQSquared,
    /// x-polynomial expanded with `x = t q^2`.
    XToTQSquared,
}

/// Result of [`change_of_variable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Substituted {
    Univariate(UnivariateLaurent),
    Bivariate(BivariateLaurent),
}

/// Apply one of the fixed variable changes.
pub fn change_of_variable(
    p: &UnivariateLaurent,
    rule: VariableChange,
) -> Result<Substituted, LaurentError> {
    match rule {
        VariableChange::QToNegQSquared => {
            p.expect_var(Variable::Q)?;
            p.rewrite_in_neg_q_squared().map(Substituted::Univariate)
        }
        VariableChange::XToTQSquared => {
            p.expect_var(Variable::X)?;
            Ok(Substituted::Bivariate(p.expand_as_t_q_squared()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnivariateLaurent {
    var: Variable,
    terms: Terms<i32>,
}

impl UnivariateLaurent {
    pub fn zero(var: Variable) -> Self {
        Self {
            var,
            terms: Terms::default(),
        }
    }

    pub fn one(var: Variable) -> Self {
        Self::monomial(var, RationalScalar::one(), 0)
    }

    pub fn monomial(var: Variable, c: RationalScalar, power: i32) -> Self {
        Self {
            var,
            terms: Terms::monomial(power, c.into_big_rational()),
        }
    }

    /// The variable itself.
    pub fn var(var: Variable) -> Self {
        Self::monomial(var, RationalScalar::one(), 1)
    }

    pub fn from_terms<I>(var: Variable, terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, RationalScalar)>,
    {
        let mut out = Terms::default();
        for (e, c) in terms {
            out.add_term(e, c.into_big_rational());
        }
        Self { var, terms: out }
    }

    /// Convenience for integer coefficients.
    pub fn from_int_terms(var: Variable, terms: &[(i32, i64)]) -> Self {
        Self::from_terms(var, terms.iter().map(|&(e, c)| (e, RationalScalar::from_integer(c))))
    }

    pub(crate) fn from_raw(var: Variable, terms: Terms<i32>) -> Self {
        Self { var, terms }
    }

    pub(crate) fn raw(&self) -> &Terms<i32> {
        &self.terms
    }

    pub fn parse(var: Variable, s: &str) -> Result<Self, LaurentError> {
        let symbols = [var.symbol()];
        let raw = Parser::new(s, &symbols).parse()?;
        Ok(Self {
            var,
            terms: raw.map_terms(|(e, _), c| (e, c.clone())),
        })
    }

    pub fn variable(&self) -> Variable {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, RationalScalar)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, RationalScalar::from(c.clone())))
    }

    pub fn coeff(&self, power: i32) -> RationalScalar {
        self.terms
            .coeff(power)
            .cloned()
            .map(RationalScalar::from)
            .unwrap_or_else(RationalScalar::zero)
    }

    fn expect_var(&self, var: Variable) -> Result<(), LaurentError> {
        if self.var == var || self.is_zero() {
            Ok(())
        } else {
            Err(LaurentError::VariableMismatch {
                expected: var.symbol(),
                found: self.var.symbol(),
            })
        }
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.var == other.var || self.is_zero() || other.is_zero(),
            "mixing polynomials in {} and {}",
            self.var.symbol(),
            other.var.symbol()
        );
    }

    fn result_var(&self, other: &Self) -> Variable {
        if self.is_zero() {
            other.var
        } else {
            self.var
        }
    }

    pub fn scale(&self, k: &RationalScalar) -> Self {
        Self {
            var: self.var,
            terms: self.terms.scale(k.as_big_rational()),
        }
    }

    /// Multiply by `var^by`.
    pub fn shift(&self, by: i32) -> Self {
        Self {
            var: self.var,
            terms: self.terms.shift(by),
        }
    }

    pub fn pow(&self, exp: i32) -> Result<Self, LaurentError> {
        Ok(Self {
            var: self.var,
            terms: self.terms.pow(exp)?,
        })
    }

    pub fn exact_div(&self, divisor: &Self) -> Result<Self, LaurentError> {
        self.check_same(divisor);
        Ok(Self {
            var: self.result_var(divisor),
            terms: self.terms.exact_div(&divisor.terms)?,
        })
    }

    pub fn eval(&self, at: &RationalScalar) -> Result<RationalScalar, LaurentError> {
        let mut acc = BigRational::zero();
        for (e, c) in self.terms.iter() {
            acc += c * at.pow(*e)?.as_big_rational();
        }
        Ok(acc.into())
    }

    /// `sum c_k q^{2k}  ->  sum c_k (-1)^k x^k`.
    pub fn rewrite_in_neg_q_squared(&self) -> Result<Self, LaurentError> {
        if let Some((e, _)) = self.terms.iter().find(|(e, _)| *e % 2 != 0) {
            return Err(LaurentError::OddPowerPresent(*e));
        }
        Ok(Self {
            var: Variable::X,
            terms: self.terms.map_terms(|e, c| {
                let k = e / 2;
                (k, if k % 2 != 0 { -c } else { c.clone() })
            }),
        })
    }

    /// `x^k -> (-1)^k q^{2k}`; inverse of [`Self::rewrite_in_neg_q_squared`].
    pub fn expand_as_neg_q_squared(&self) -> Self {
        Self {
            var: Variable::Q,
            terms: self
                .terms
                .map_terms(|k, c| (2 * k, if k % 2 != 0 { -c } else { c.clone() })),
        }
    }

    /// `x^k -> t^k q^{2k}`.
    pub fn expand_as_t_q_squared(&self) -> BivariateLaurent {
        BivariateLaurent::from_raw(self.terms.map_terms(|k, c| ((2 * k, k), c.clone())))
    }

    /// `p(q) -> p(1/q)`.
    pub fn invert_variable(&self) -> Self {
        Self {
            var: self.var,
            terms: self.terms.map_terms(|e, c| (-e, c.clone())),
        }
    }

    pub fn min_power(&self) -> Option<i32> {
        self.terms.iter().next().map(|(e, _)| *e)
    }

    pub fn max_power(&self) -> Option<i32> {
        self.terms.iter().next_back().map(|(e, _)| *e)
    }
}

impl fmt::Display for UnivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.var.symbol();
        write_terms(f, self.terms.iter().map(|(e, c)| (vec![(sym, *e)], c)))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    q: Option<i32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<i32>,
    c: RationalScalar,
}

impl Serialize for UnivariateLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms().map(|(e, c)| match self.var {
            Variable::Q => TermRecord {
                q: Some(e),
                x: None,
                c,
            },
            Variable::X => TermRecord {
                q: None,
                x: Some(e),
                c,
            },
        }))
    }
}

impl<'de> Deserialize<'de> for UnivariateLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        let mut var = None;
        let mut terms = Vec::with_capacity(records.len());
        for r in records {
            let (v, e) = match (r.q, r.x) {
                (Some(e), None) => (Variable::Q, e),
                (None, Some(e)) => (Variable::X, e),
                _ => return Err(D::Error::custom("each term needs exactly one of \"q\" or \"x\"")),
            };
            if *var.get_or_insert(v) != v {
                return Err(D::Error::custom("terms mix variables q and x"));
            }
            terms.push((e, r.c));
        }
        Ok(Self::from_terms(var.unwrap_or(Variable::Q), terms))
    }
}

impl Add<&UnivariateLaurent> for &UnivariateLaurent {
    type Output = UnivariateLaurent;
    fn add(self, rhs: &UnivariateLaurent) -> UnivariateLaurent {
        self.check_same(rhs);
        UnivariateLaurent {
            var: self.result_var(rhs),
            terms: self.terms.add(&rhs.terms),
        }
    }
}

impl Sub<&UnivariateLaurent> for &UnivariateLaurent {
    type Output = UnivariateLaurent;
    fn sub(self, rhs: &UnivariateLaurent) -> UnivariateLaurent {
        self.check_same(rhs);
        UnivariateLaurent {
            var: self.result_var(rhs),
            terms: self.terms.sub(&rhs.terms),
        }
    }
}

impl Mul<&UnivariateLaurent> for &UnivariateLaurent {
    type Output = UnivariateLaurent;
    fn mul(self, rhs: &UnivariateLaurent) -> UnivariateLaurent {
        self.check_same(rhs);
        UnivariateLaurent {
            var: self.result_var(rhs),
            terms: self.terms.mul(&rhs.terms),
        }
    }
}

impl Neg for &UnivariateLaurent {
    type Output = UnivariateLaurent;
    fn neg(self) -> UnivariateLaurent {
        UnivariateLaurent {
            var: self.var,
            terms: self.terms.neg(),
        }
    }
}

owned_ops!(UnivariateLaurent);
