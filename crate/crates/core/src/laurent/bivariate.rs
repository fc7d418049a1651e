use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::parse::Parser;
use super::terms::Terms;
use super::univariate::{UnivariateLaurent, Variable};
use super::{write_terms, LaurentError, RationalScalar};

/// Laurent polynomial in `q` and `t` with exact rational coefficients.
///
/// Terms are kept in lexicographic order on `(q_power, t_power)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BivariateLaurent {
    terms: Terms<(i32, i32)>,
}

impl BivariateLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(RationalScalar::one())
    }

    pub fn constant(c: RationalScalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    /// `c * q^q_power * t^t_power`.
    pub fn monomial(c: RationalScalar, q_power: i32, t_power: i32) -> Self {
        Self {
            terms: Terms::monomial((q_power, t_power), c.into_big_rational()),
        }
    }

    pub fn q() -> Self {
        Self::monomial(RationalScalar::one(), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(RationalScalar::one(), 0, 1)
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, i32, RationalScalar)>,
    {
        let mut out = Terms::default();
        for (qp, tp, c) in terms {
            out.add_term((qp, tp), c.into_big_rational());
        }
        Self { terms: out }
    }

    pub(crate) fn from_raw(terms: Terms<(i32, i32)>) -> Self {
        Self { terms }
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

    /// Terms as `(q_power, t_power, coefficient)` in canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, i32, RationalScalar)> + '_ {
        self.terms
            .iter()
            .map(|((qp, tp), c)| (*qp, *tp, RationalScalar::from(c.clone())))
    }

    pub fn coeff(&self, q_power: i32, t_power: i32) -> RationalScalar {
        self.terms
            .coeff((q_power, t_power))
            .cloned()
            .map(RationalScalar::from)
            .unwrap_or_else(RationalScalar::zero)
    }

    pub fn scale(&self, k: &RationalScalar) -> Self {
        Self {
            terms: self.terms.scale(k.as_big_rational()),
        }
    }

    /// Multiply by the monomial `q^q_shift t^t_shift`.
    pub fn shift(&self, q_shift: i32, t_shift: i32) -> Self {
        Self {
            terms: self.terms.shift((q_shift, t_shift)),
        }
    }

    /// Integer power. Negative powers exist only for monomials.
    pub fn pow(&self, exp: i32) -> Result<Self, LaurentError> {
        Ok(Self {
            terms: self.terms.pow(exp)?,
        })
    }

    /// Exact quotient `self / divisor`, or `DivisionFails` when none exists.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, LaurentError> {
        Ok(Self {
            terms: self.terms.exact_div(&divisor.terms)?,
        })
    }

    /// Jones limit: substitute `t = -1`.
    pub fn limit_jones(&self) -> UnivariateLaurent {
        let terms = self.terms.map_terms(|(qp, tp), c| {
            let c = if tp.rem_euclid(2) == 1 { -c } else { c.clone() };
            (qp, c)
        });
        UnivariateLaurent::from_raw(Variable::Q, terms)
    }

    /// Exact value at `(q0, t0)`.
    pub fn eval(&self, q0: &RationalScalar, t0: &RationalScalar) -> Result<RationalScalar, LaurentError> {
        let mut acc = BigRational::zero();
        for ((qp, tp), c) in self.terms.iter() {
            let qv = q0.pow(*qp)?;
            let tv = t0.pow(*tp)?;
            acc += c * qv.as_big_rational() * tv.as_big_rational();
        }
        Ok(acc.into())
    }

    /// `p(q, t) -> p(1/q, 1/t)`; the mirror-image rule for Khovanov polynomials.
    pub fn invert_variables(&self) -> Self {
        Self {
            terms: self.terms.map_terms(|(qp, tp), c| ((-qp, -tp), c.clone())),
        }
    }

    /// True if every coefficient is an integer.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }

    /// True if every coefficient is a non-negative integer.
    pub fn is_poincare_like(&self) -> bool {
        self.terms
            .iter()
            .all(|(_, c)| c.is_integer() && !c.is_negative())
    }

    pub fn t_free(&self) -> bool {
        self.terms.iter().all(|((_, tp), _)| *tp == 0)
    }

    /// Reinterpret a `t`-free polynomial as a polynomial in `q`.
    pub fn to_univariate_q(&self) -> Option<UnivariateLaurent> {
        if !self.t_free() {
            return None;
        }
        Some(UnivariateLaurent::from_raw(
            Variable::Q,
            self.terms.map_terms(|(qp, _), c| (qp, c.clone())),
        ))
    }
}

impl From<&UnivariateLaurent> for BivariateLaurent {
    /// Embeds a polynomial in `q` (the variable tag is not checked).
    fn from(p: &UnivariateLaurent) -> Self {
        Self {
            terms: p.raw().map_terms(|e, c| ((e, 0), c.clone())),
        }
    }
}

impl fmt::Display for BivariateLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms
                .iter()
                .map(|((qp, tp), c)| (vec![('q', *qp), ('t', *tp)], c)),
        )
    }
}

impl FromStr for BivariateLaurent {
    type Err = LaurentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Self {
            terms: Parser::new(s, &['q', 't']).parse()?,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    q: i32,
    t: i32,
    c: RationalScalar,
}

impl Serialize for BivariateLaurent {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.terms().map(|(q, t, c)| TermRecord { q, t, c }))
    }
}

impl<'de> Deserialize<'de> for BivariateLaurent {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(deserializer)?;
        Ok(Self::from_terms(records.into_iter().map(|r| (r.q, r.t, r.c))))
    }
}

impl Add<&BivariateLaurent> for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn add(self, rhs: &BivariateLaurent) -> BivariateLaurent {
        BivariateLaurent {
            terms: self.terms.add(&rhs.terms),
        }
    }
}

impl Sub<&BivariateLaurent> for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn sub(self, rhs: &BivariateLaurent) -> BivariateLaurent {
        BivariateLaurent {
            terms: self.terms.sub(&rhs.terms),
        }
    }
}

impl Mul<&BivariateLaurent> for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn mul(self, rhs: &BivariateLaurent) -> BivariateLaurent {
        BivariateLaurent {
            terms: self.terms.mul(&rhs.terms),
        }
    }
}

impl Neg for &BivariateLaurent {
    type Output = BivariateLaurent;
    fn neg(self) -> BivariateLaurent {
        BivariateLaurent {
            terms: self.terms.neg(),
        }
    }
}

impl Neg for BivariateLaurent {
    type Output = BivariateLaurent;
    fn neg(self) -> BivariateLaurent {
        -&self
    }
}

macro_rules! owned_ops {
    ($ty:ty) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }
        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }
        impl Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                &self * &rhs
            }
        }
    };
}
pub(crate) use owned_ops;

owned_ops!(BivariateLaurent);

impl std::iter::Sum for BivariateLaurent {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, p| &acc + &p)
    }
}

impl One for BivariateLaurent {
    fn one() -> Self {
        BivariateLaurent::one()
    }
}

impl Zero for BivariateLaurent {
    fn zero() -> Self {
        BivariateLaurent::zero()
    }
    fn is_zero(&self) -> bool {
        BivariateLaurent::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> BivariateLaurent {
        s.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(&p("q + q^-1") + &BivariateLaurent::zero(), p("q^-1 + q"));
        assert!((&p("q*t") + &p("-q*t")).is_zero());
        assert_eq!(&p("1 + q^2*t") + &p("q^2*t"), p("1 + 2*q^2*t"));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&p("q + q^-1") * &p("q + q^-1"), p("q^2 + 2 + q^-2"));
        let x = p("3*q^-2*t + 1/2");
        assert_eq!(&x * &BivariateLaurent::one(), x);
        assert_eq!(&p("q^2*t - 1") * &p("q^2*t + 1"), p("q^4*t^2 - 1"));
    }

    #[test]
    fn exact_division_examples() {
        assert_eq!(p("q^4*t^2 - 1").exact_div(&p("q^2*t - 1")).unwrap(), p("q^2*t + 1"));
        assert_eq!(p("q + q^-1").exact_div(&p("q^-1")).unwrap(), p("q^2 + 1"));
        assert_eq!(
            p("q^2*t - 1").exact_div(&p("q^2*t + 1")),
            Err(LaurentError::DivisionFails)
        );
        assert_eq!(p("q").exact_div(&BivariateLaurent::zero()), Err(LaurentError::DivisionByZero));
        assert!(BivariateLaurent::zero().exact_div(&p("q + t")).unwrap().is_zero());
    }

    #[test]
    fn division_failure_does_not_loop_on_t_tails() {
        // the lex-greedy step would walk t-exponents downward forever without the box bound
        assert_eq!(p("q").exact_div(&p("q + t")), Err(LaurentError::DivisionFails));
        assert_eq!(p("1").exact_div(&p("1 + t^-1")), Err(LaurentError::DivisionFails));
    }

    #[test]
    fn jones_limit_examples() {
        let kh = p("q^-5*t^-2 + q^-1*t^-1 + q^-1 + q + q*t + q^5*t^2");
        assert_eq!(kh.limit_jones().to_string(), "q^-5 + q^5");
        assert_eq!(p("q + q^-1").limit_jones().to_string(), "q^-1 + q");
        assert!(p("(t+1)*q^3").limit_jones().is_zero());
    }

    #[test]
    fn evaluation_examples() {
        let two = RationalScalar::from_integer(2);
        let one = RationalScalar::one();
        assert_eq!(p("q + q^-1").eval(&two, &one).unwrap(), RationalScalar::new(5, 2));
        assert_eq!(
            BivariateLaurent::one()
                .eval(&RationalScalar::new(-7, 3), &RationalScalar::new(11, 5))
                .unwrap(),
            one
        );
        assert_eq!(
            p("q^2*t")
                .eval(&RationalScalar::new(1, 2), &RationalScalar::from_integer(3))
                .unwrap(),
            RationalScalar::new(3, 4)
        );
        assert_eq!(
            p("q^-1").eval(&RationalScalar::zero(), &one),
            Err(LaurentError::ZeroBase)
        );
        assert_eq!(p("q^2 + t^-1").eval(&RationalScalar::zero(), &one).unwrap(), one);
    }

    #[test]
    fn display_and_json_are_canonical() {
        let x = p("t^2*q - 1/2 + q^-1*t^-3 + 2*q");
        assert_eq!(x.to_string(), "q^-1*t^-3 - 1/2 + 2*q + q*t^2");
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(
            json,
            r#"[{"q":-1,"t":-3,"c":"1/1"},{"q":0,"t":0,"c":"-1/2"},{"q":1,"t":0,"c":"2/1"},{"q":1,"t":2,"c":"1/1"}]"#
        );
        let back: BivariateLaurent = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn negative_power_of_non_unit() {
        assert_eq!(p("q + 1").pow(-1), Err(LaurentError::NonUnitInverse));
        assert_eq!(p("-2*t*q^3").pow(-2).unwrap(), p("1/4*q^-6*t^-2"));
    }
}
