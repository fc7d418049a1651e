//! Sparse term storage shared by the one- and two-variable Laurent types.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::LaurentError;

/// Exponent lattice point. `Ord` must be the lexicographic order used for
/// canonical term ordering.
pub(crate) trait Exponent: Copy + Ord + std::fmt::Debug {
    fn origin() -> Self;
    fn plus(self, other: Self) -> Self;
    fn minus(self, other: Self) -> Self;
    fn scaled(self, k: i32) -> Self;
    fn meet(self, other: Self) -> Self;
    fn join(self, other: Self) -> Self;
    fn within(self, lo: Self, hi: Self) -> bool;
}

impl Exponent for i32 {
    fn origin() -> Self {
        0
    }
    fn plus(self, other: Self) -> Self {
        self + other
    }
    fn minus(self, other: Self) -> Self {
        self - other
    }
    fn scaled(self, k: i32) -> Self {
        self * k
    }
    fn meet(self, other: Self) -> Self {
        self.min(other)
    }
    fn join(self, other: Self) -> Self {
        self.max(other)
    }
    fn within(self, lo: Self, hi: Self) -> bool {
        lo <= self && self <= hi
    }
}

impl Exponent for (i32, i32) {
    fn origin() -> Self {
        (0, 0)
    }
    fn plus(self, o: Self) -> Self {
        (self.0 + o.0, self.1 + o.1)
    }
    fn minus(self, o: Self) -> Self {
        (self.0 - o.0, self.1 - o.1)
    }
    fn scaled(self, k: i32) -> Self {
        (self.0 * k, self.1 * k)
    }
    fn meet(self, o: Self) -> Self {
        (self.0.min(o.0), self.1.min(o.1))
    }
    fn join(self, o: Self) -> Self {
        (self.0.max(o.0), self.1.max(o.1))
    }
    fn within(self, lo: Self, hi: Self) -> bool {
        lo.0 <= self.0 && self.0 <= hi.0 && lo.1 <= self.1 && self.1 <= hi.1
    }
}

/// Canonical sparse polynomial: no zero coefficients, one entry per exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Terms<E: Exponent> {
    map: BTreeMap<E, BigRational>,
}

impl<E: Exponent> Default for Terms<E> {
    fn default() -> Self {
        Self {
            map: BTreeMap::new(),
        }
    }
}

impl<E: Exponent> Terms<E> {
    pub fn monomial(exp: E, coeff: BigRational) -> Self {
        let mut t = Self::default();
        t.add_term(exp, coeff);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&E, &BigRational)> {
        self.map.iter()
    }

    pub fn coeff(&self, exp: E) -> Option<&BigRational> {
        self.map.get(&exp)
    }

    pub fn add_term(&mut self, exp: E, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        match self.map.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.map {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            map: self.map.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.map {
            out.add_term(*e, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (e1, c1) in &self.map {
            for (e2, c2) in &other.map {
                out.add_term(e1.plus(*e2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        if k.is_zero() {
            return Self::default();
        }
        Self {
            map: self.map.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn shift(&self, by: E) -> Self {
        Self {
            map: self.map.iter().map(|(e, c)| (e.plus(by), c.clone())).collect(),
        }
    }

    /// Single term, if this is a monomial (a unit of the Laurent ring).
    pub fn as_monomial(&self) -> Option<(E, &BigRational)> {
        if self.map.len() == 1 {
            self.map.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn pow(&self, exp: i32) -> Result<Self, LaurentError> {
        if exp < 0 {
            let (e, c) = self.as_monomial().ok_or(LaurentError::NonUnitInverse)?;
            let inv = c.recip();
            return Ok(Self::monomial(e.scaled(exp), num_traits::Pow::pow(inv, -exp)));
        }
        let mut acc = Self::monomial(E::origin(), BigRational::from_integer(1.into()));
        let mut base = self.clone();
        let mut n = exp as u32;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    fn bounds(&self) -> Option<(E, E)> {
        let mut it = self.map.keys();
        let first = *it.next()?;
        Some(it.fold((first, first), |(lo, hi), e| (lo.meet(*e), hi.join(*e))))
    }

    /// Exact division in the Laurent ring.
    ///
    /// Greedy division on lex-leading terms. Any exact quotient has its
    /// support inside the box `[min(p) - min(d), max(p) - max(d)]`, so a
    /// candidate term outside that box proves non-divisibility.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self, LaurentError> {
        let (d_lo, d_hi) = divisor.bounds().ok_or(LaurentError::DivisionByZero)?;
        let Some((p_lo, p_hi)) = self.bounds() else {
            return Ok(Self::default());
        };
        let (lo, hi) = (p_lo.minus(d_lo), p_hi.minus(d_hi));
        let (lead_exp, lead_coeff) = divisor
            .map
            .iter()
            .next_back()
            .map(|(e, c)| (*e, c.clone()))
            .expect("nonzero divisor");

        let mut rem = self.clone();
        let mut quot = Self::default();
        while let Some((e, c)) = rem.map.iter().next_back().map(|(e, c)| (*e, c.clone())) {
            let qe = e.minus(lead_exp);
            if !qe.within(lo, hi) {
                return Err(LaurentError::DivisionFails);
            }
            let qc = c / &lead_coeff;
            for (de, dc) in &divisor.map {
                rem.add_term(qe.plus(*de), -(&qc * dc));
            }
            debug_assert!(rem.map.get(&e).is_none());
            quot.add_term(qe, qc);
        }
        Ok(quot)
    }

    pub fn map_terms<F, E2>(&self, mut f: F) -> Terms<E2>
    where
        E2: Exponent,
        F: FnMut(E, &BigRational) -> (E2, BigRational),
    {
        let mut out = Terms::default();
        for (e, c) in &self.map {
            let (e2, c2) = f(*e, c);
            out.add_term(e2, c2);
        }
        out
    }
}
