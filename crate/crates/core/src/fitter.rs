//! Recovers the chamber matrices from oracle data.
//!
//! At a rational point `(q0, t0)` the evolution formula for six sample
//! points `(a_k, b_l)` is a 6x6 linear system in the six entries of `M`,
//! with coefficient `R_r(b_l) C_c(a_k)`. It is singular when
//! `t0 q0^2 = +-1`, where two eigenvalues collide.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{double_braid, DiagramError, FamilyPoint};
use crate::evolution::{chamber_matrix, classify, column_vector, row_vector, Chamber};
use crate::khovanov::{khovanov_poincare, KhovanovError};
use crate::laurent::{BivariateLaurent, LaurentError, RationalScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FitError {
    #[error("the 6x6 system is singular at (q, t) = ({q0}, {t0}); pick another point")]
    SingularSystem { q0: RationalScalar, t0: RationalScalar },
    #[error("sample point {point} lies in {found}, not {expected}")]
    OutOfChamber {
        point: FamilyPoint,
        expected: Chamber,
        found: Chamber,
    },
    #[error("isolated points carry no evolution matrix to fit")]
    Isolated,
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Khovanov(#[from] KhovanovError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// A fitted 2x3 matrix of exact values.
pub type FittedMatrix = [[RationalScalar; 3]; 2];

/// Default sample sets, three consecutive `a` and two `b` inside the chamber.
pub fn default_samples(c: Chamber) -> Result<([i32; 3], [i32; 2]), FitError> {
    match c {
        Chamber::UR => Ok(([2, 3, 4], [1, 3])),
        Chamber::UL => Ok(([-2, -1, 0], [1, 3])),
        Chamber::LR => Ok(([0, 1, 2], [-1, -3])),
        Chamber::LL => Ok(([-4, -3, -2], [-1, -3])),
        Chamber::IsolatedPoint => Err(FitError::Isolated),
    }
}

/// Oracle Khovanov polynomials on a 3x2 sample grid.
#[derive(Clone, Debug)]
pub struct SampleGrid {
    a: [i32; 3],
    b: [i32; 2],
    kh: Vec<BivariateLaurent>,
}

impl SampleGrid {
    /// Runs the homology oracle at every sample point.
    pub fn from_oracle(a: [i32; 3], b: [i32; 2]) -> Result<Self, FitError> {
        let points: Vec<FamilyPoint> = a
            .iter()
            .flat_map(|&ak| b.iter().map(move |&bl| FamilyPoint::new(ak, bl)))
            .collect::<Result<_, _>>()?;
        let kh = points
            .par_iter()
            .map(|&p| khovanov_poincare(&double_braid(p)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { a, b, kh })
    }

    pub fn points(&self) -> impl Iterator<Item = FamilyPoint> + '_ {
        self.a
            .iter()
            .flat_map(move |&ak| self.b.iter().map(move |&bl| FamilyPoint::new(ak, bl).expect("validated")))
    }

    /// Solves for the six entries at `(q0, t0)`.
    pub fn fit(&self, q0: &RationalScalar, t0: &RationalScalar) -> Result<FittedMatrix, FitError> {
        let singular = || FitError::SingularSystem {
            q0: q0.clone(),
            t0: t0.clone(),
        };
        let mut system: Vec<Vec<RationalScalar>> = Vec::with_capacity(6);
        for (k, &ak) in self.a.iter().enumerate() {
            let col = column_vector(ak)?;
            let col: Vec<RationalScalar> = col.iter().map(|c| c.eval(q0, t0)).collect::<Result<_, _>>()?;
            for (l, &bl) in self.b.iter().enumerate() {
                let row = row_vector(bl)?;
                let row: Vec<RationalScalar> = row.iter().map(|r| r.eval(q0, t0)).collect::<Result<_, _>>()?;
                let mut eq: Vec<RationalScalar> = Vec::with_capacity(7);
                for r in &row {
                    for c in &col {
                        eq.push(r * c);
                    }
                }
                eq.push(self.kh[k * self.b.len() + l].eval(q0, t0)?);
                system.push(eq);
            }
        }
        let x = solve(system).ok_or_else(singular)?;
        Ok([
            [x[0].clone(), x[1].clone(), x[2].clone()],
            [x[3].clone(), x[4].clone(), x[5].clone()],
        ])
    }
}

/// Gauss-Jordan on an augmented square system; `None` if singular.
fn solve(mut m: Vec<Vec<RationalScalar>>) -> Option<Vec<RationalScalar>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = &RationalScalar::one() / &m[col][col];
        for v in m[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let k = m[r][col].clone();
                for c in col..=n {
                    let delta = &k * &m[col][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// `fit` at samples that must all lie in chamber `c`.
pub fn fit_matrix(
    c: Chamber,
    a: [i32; 3],
    b: [i32; 2],
    q0: &RationalScalar,
    t0: &RationalScalar,
) -> Result<FittedMatrix, FitError> {
    check_samples(c, a, b)?;
    SampleGrid::from_oracle(a, b)?.fit(q0, t0)
}

fn check_samples(c: Chamber, a: [i32; 3], b: [i32; 2]) -> Result<(), FitError> {
    if c == Chamber::IsolatedPoint {
        return Err(FitError::Isolated);
    }
    for &ak in &a {
        for &bl in &b {
            let point = FamilyPoint::new(ak, bl)?;
            let found = classify(point);
            if found != c {
                return Err(FitError::OutOfChamber {
                    point,
                    expected: c,
                    found,
                });
            }
        }
    }
    Ok(())
}

/// Small rationals the sample points are drawn from.
const SAMPLE_VALUES: [(i64, i64); 12] = [
    (2, 1),
    (3, 1),
    (-2, 1),
    (1, 2),
    (-1, 2),
    (1, 3),
    (3, 2),
    (-3, 1),
    (2, 3),
    (5, 2),
    (-1, 3),
    (4, 1),
];

/// Whether `(q0, t0)` avoids zero and the collisions `t0 q0^2 = +-1`.
pub fn is_admissible(q0: &RationalScalar, t0: &RationalScalar) -> bool {
    if q0.is_zero() || t0.is_zero() {
        return false;
    }
    let x = &(q0 * q0) * t0;
    x != RationalScalar::one() && x != -RationalScalar::one()
}

/// `n` distinct admissible points, reproducible from `seed`.
pub fn sample_points(n: usize, seed: u64) -> Vec<(RationalScalar, RationalScalar)> {
    let values: Vec<RationalScalar> = SAMPLE_VALUES.iter().map(|&(p, q)| RationalScalar::new(p, q)).collect();
    let mut pairs: Vec<(RationalScalar, RationalScalar)> = values
        .iter()
        .flat_map(|q| values.iter().map(move |t| (q.clone(), t.clone())))
        .filter(|(q, t)| is_admissible(q, t))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pairs.shuffle(&mut rng);
    pairs.truncate(n);
    pairs
}

/// Seed used by `verify_fit`.
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointFit {
    pub q0: RationalScalar,
    pub t0: RationalScalar,
    pub fitted: Vec<Vec<RationalScalar>>,
    pub mismatched_entries: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FitReport {
    pub chamber: Chamber,
    pub a_samples: [i32; 3],
    pub b_samples: [i32; 2],
    pub points: Vec<PointFit>,
    pub max_discrepancies: usize,
}

impl FitReport {
    pub fn all_match(&self) -> bool {
        self.max_discrepancies == 0
    }
}

fn mismatches(fitted: &FittedMatrix, expected: &[Vec<RationalScalar>]) -> usize {
    fitted
        .iter()
        .zip(expected)
        .flat_map(|(f, e)| f.iter().zip(e))
        .filter(|(f, e)| f != e)
        .count()
}

/// Fits chamber `c` from its default samples at `n_points` seeded points
/// and compares with the hard-coded matrix.
pub fn verify_fit(c: Chamber, n_points: usize) -> Result<FitReport, FitError> {
    verify_fit_seeded(c, n_points, DEFAULT_SEED)
}

pub fn verify_fit_seeded(c: Chamber, n_points: usize, seed: u64) -> Result<FitReport, FitError> {
    let (a, b) = default_samples(c)?;
    check_samples(c, a, b)?;
    let grid = SampleGrid::from_oracle(a, b)?;
    let matrix = chamber_matrix(c).map_err(|_| FitError::Isolated)?;
    let mut points = Vec::new();
    for (q0, t0) in sample_points(n_points, seed) {
        let fitted = grid.fit(&q0, &t0)?;
        let expected = matrix.eval(&q0, &t0)?;
        points.push(PointFit {
            mismatched_entries: mismatches(&fitted, &expected),
            fitted: fitted.iter().map(|r| r.to_vec()).collect(),
            q0,
            t0,
        });
    }
    let max_discrepancies = points.iter().map(|p| p.mismatched_entries).max().unwrap_or(0);
    Ok(FitReport {
        chamber: c,
        a_samples: a,
        b_samples: b,
        points,
        max_discrepancies,
    })
}

/// Whether some fitted entry agrees with none of the given chambers'
/// matrices at `(q0, t0)`.
pub fn inconsistent_with_all(
    fitted: &FittedMatrix,
    chambers: &[Chamber],
    q0: &RationalScalar,
    t0: &RationalScalar,
) -> Result<bool, FitError> {
    let expected = chambers
        .iter()
        .map(|&c| Ok(chamber_matrix(c).map_err(|_| FitError::Isolated)?.eval(q0, t0)?))
        .collect::<Result<Vec<_>, FitError>>()?;
    Ok((0..2).any(|r| (0..3).any(|c| expected.iter().all(|m| m[r][c] != fitted[r][c]))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(p: i64, q: i64) -> RationalScalar {
        RationalScalar::new(p, q)
    }

    #[test]
    fn recovers_ur_at_two_points() {
        let m = chamber_matrix(Chamber::UR).unwrap();
        for (q0, t0) in [(rs(2, 1), rs(3, 1)), (rs(1, 2), rs(-2, 1))] {
            let fitted = fit_matrix(Chamber::UR, [2, 3, 4], [1, 3], &q0, &t0).unwrap();
            assert_eq!(mismatches(&fitted, &m.eval(&q0, &t0).unwrap()), 0);
        }
    }

    #[test]
    fn singular_points_are_rejected() {
        let grid = SampleGrid::from_oracle([2, 3, 4], [1, 3]).unwrap();
        // t q^2 = 1 and t q^2 = -1
        for (q0, t0) in [(rs(2, 1), rs(1, 4)), (rs(1, 2), rs(-4, 1))] {
            assert!(!is_admissible(&q0, &t0));
            assert!(matches!(grid.fit(&q0, &t0), Err(FitError::SingularSystem { .. })));
        }
    }

    #[test]
    fn chamber_guards() {
        let (q0, t0) = (rs(2, 1), rs(3, 1));
        assert_eq!(
            fit_matrix(Chamber::IsolatedPoint, [0, 1, 2], [1, 3], &q0, &t0),
            Err(FitError::Isolated)
        );
        assert!(matches!(
            fit_matrix(Chamber::UR, [0, 1, 2], [1, 3], &q0, &t0),
            Err(FitError::OutOfChamber { .. })
        ));
        assert_eq!(verify_fit(Chamber::IsolatedPoint, 3), Err(FitError::Isolated));
    }

    #[test]
    fn sample_points_are_reproducible_and_admissible() {
        let p = sample_points(5, 9);
        assert_eq!(p, sample_points(5, 9));
        assert_eq!(p.len(), 5);
        assert!(p.iter().all(|(q, t)| is_admissible(q, t)));
    }

    #[test]
    fn straddling_samples_are_inconsistent() {
        let grid = SampleGrid::from_oracle([-1, 0, 1], [3, 5]).unwrap();
        let (q0, t0) = (rs(2, 1), rs(3, 1));
        let fitted = grid.fit(&q0, &t0).unwrap();
        assert!(inconsistent_with_all(&fitted, &[Chamber::UL, Chamber::UR], &q0, &t0).unwrap());
    }
}
