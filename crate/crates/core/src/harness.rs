//! Grid sweeps comparing every route to `Kh` and `J`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bracket::{jones_evolution, jones_unreduced, BracketError};
use crate::diagram::{double_braid, DiagramError, FamilyPoint};
use crate::evolution::{chamber_matrix, classify, evolve_with, khovanov_evolution, signature_formula, Chamber, EvolutionError};
use crate::khovanov::{extract_signature_thin, khovanov_poincare, KhovanovError};
use crate::laurent::{BivariateLaurent, UnivariateLaurent};
use crate::lee::reconstruct_khovanov;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Khovanov(#[from] KhovanovError),
    #[error(transparent)]
    Bracket(#[from] BracketError),
    #[error(transparent)]
    Evolution(#[from] EvolutionError),
}

/// Points with `|a| <= amax` and odd `b` with `|b| <= bmax`, ordered by `(a, b)`.
pub fn grid_points(amax: u32, bmax: u32) -> Vec<FamilyPoint> {
    let (amax, bmax) = (amax as i32, bmax as i32);
    (-amax..=amax)
        .flat_map(|a| {
            (-bmax..=bmax)
                .filter(|b| b % 2 != 0)
                .map(move |b| FamilyPoint::new(a, b).expect("odd b"))
        })
        .collect()
}

/// Everything known about one grid point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointReport {
    pub a: i32,
    pub b: i32,
    pub chamber: Chamber,
    pub crossings: usize,
    pub kh_oracle: BivariateLaurent,
    pub kh_evolution: Option<BivariateLaurent>,
    pub jones_oracle: UnivariateLaurent,
    pub jones_evolution: Option<UnivariateLaurent>,
    /// `Kh` and the evolution formula agree.
    pub kh_match: bool,
    /// State-sum and closed-form Jones agree.
    pub jones_match: bool,
    /// `t = -1` limit of the evolution formula equals the closed-form Jones.
    pub limit_match: bool,
    /// Euler characteristic of the oracle homology equals the state sum.
    pub euler_match: bool,
    /// Diagonal offset `c` of thin support, if thin.
    pub thin_offset: Option<i32>,
    /// `-c` equals the chamber signature (not applicable at isolated points).
    pub signature_match: Option<bool>,
    /// Lee reconstruction from the state-sum Jones equals the oracle.
    pub lee_match: Option<bool>,
}

impl PointReport {
    pub fn point(&self) -> (i32, i32) {
        (self.a, self.b)
    }

    pub fn all_match(&self) -> bool {
        self.kh_match
            && self.jones_match
            && self.limit_match
            && self.euler_match
            && self.signature_match.unwrap_or(true)
            && self.lee_match.unwrap_or(true)
    }
}

/// Runs every route at one point.
pub fn check_point(pt: FamilyPoint) -> Result<PointReport, HarnessError> {
    let d = double_braid(pt);
    let chamber = classify(pt);
    let dims = crate::khovanov::homology_dims(&d)?;
    let kh_oracle = dims.poincare();
    let jones_oracle = jones_unreduced(&d)?;
    let kh_evolution = khovanov_evolution(pt).ok();
    let jones_evo = jones_evolution(pt).ok();
    let kh_match = kh_evolution.as_ref() == Some(&kh_oracle);
    let jones_match = jones_evo.as_ref() == Some(&jones_oracle);
    let limit_match = match (&kh_evolution, &jones_evo) {
        (Some(k), Some(j)) => &k.limit_jones() == j,
        _ => false,
    };
    let euler_match = dims.euler_characteristic() == jones_oracle;
    let thin_offset = extract_signature_thin(&kh_oracle).ok();
    let (signature_match, lee_match) = match signature_formula(pt) {
        Ok(sigma) => {
            let sig = Some(thin_offset == Some(-sigma));
            let lee = reconstruct_khovanov(&jones_oracle, sigma, pt.a(), pt.b())
                .map(|k| k == kh_oracle)
                .unwrap_or(false);
            (sig, Some(lee))
        }
        Err(_) => (None, None),
    };
    Ok(PointReport {
        a: pt.a(),
        b: pt.b(),
        chamber,
        crossings: d.crossing_count(),
        kh_oracle,
        kh_evolution,
        jones_oracle,
        jones_evolution: jones_evo,
        kh_match,
        jones_match,
        limit_match,
        euler_match,
        thin_offset,
        signature_match,
        lee_match,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridReport {
    pub amax: u32,
    pub bmax: u32,
    pub points: Vec<PointReport>,
    pub mismatches: Vec<(i32, i32)>,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Checks every point of the grid in parallel; results keep `(a, b)` order.
pub fn verify_grid(amax: u32, bmax: u32) -> Result<GridReport, HarnessError> {
    let points = grid_points(amax, bmax)
        .into_par_iter()
        .map(check_point)
        .collect::<Result<Vec<_>, _>>()?;
    let mismatches = points.iter().filter(|p| !p.all_match()).map(PointReport::point).collect();
    Ok(GridReport {
        amax,
        bmax,
        points,
        mismatches,
    })
}

/// How one chamber's formula fares across the scanned points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberScan {
    pub chamber: Chamber,
    /// First point, ring by ring, where the formula disagrees with the oracle.
    pub first_failure: Option<(i32, i32)>,
    /// Points classified into this chamber where the formula fails.
    pub failures_inside: Vec<(i32, i32)>,
    /// Points outside this chamber where the formula still matches.
    pub matches_outside: Vec<(i32, i32)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BreakdownReport {
    pub amax: u32,
    pub bmax: u32,
    /// Points in scan order: increasing ring `max(|a|, |b|)`, then `(a, b)`.
    pub order: Vec<(i32, i32)>,
    pub chambers: Vec<ChamberScan>,
}

impl BreakdownReport {
    /// No chamber formula fails inside its own chamber.
    pub fn consistent(&self) -> bool {
        self.chambers.iter().all(|c| c.failures_inside.is_empty())
    }
}

/// Evaluates each chamber's formula on every point out to the bounds,
/// ring by ring, against the homology oracle.
pub fn scan_breakdown(amax: u32, bmax: u32) -> Result<BreakdownReport, HarnessError> {
    let mut pts = grid_points(amax, bmax);
    pts.sort_by_key(|p| (p.a().abs().max(p.b().abs()), p.a(), p.b()));
    let oracle = pts
        .par_iter()
        .map(|&p| khovanov_poincare(&double_braid(p)))
        .collect::<Result<Vec<_>, _>>()?;
    let mut chambers = Vec::new();
    for c in Chamber::REGIONS {
        let m = chamber_matrix(c)?;
        let mut scan = ChamberScan {
            chamber: c,
            first_failure: None,
            failures_inside: Vec::new(),
            matches_outside: Vec::new(),
        };
        for (p, kh) in pts.iter().zip(&oracle) {
            let ok = evolve_with(&m, p.a(), p.b()).is_ok_and(|e| &e == kh);
            let inside = classify(*p) == c;
            let key = (p.a(), p.b());
            if !ok && scan.first_failure.is_none() {
                scan.first_failure = Some(key);
            }
            match (inside, ok) {
                (true, false) => scan.failures_inside.push(key),
                (false, true) => scan.matches_outside.push(key),
                _ => {}
            }
        }
        chambers.push(scan);
    }
    Ok(BreakdownReport {
        amax,
        bmax,
        order: pts.iter().map(|p| (p.a(), p.b())).collect(),
        chambers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_point_order() {
        let pts = grid_points(1, 3);
        let keys: Vec<_> = pts.iter().map(|p| (p.a(), p.b())).collect();
        assert_eq!(keys.len(), 12);
        assert_eq!(keys[0], (-1, -3));
        assert_eq!(keys[11], (1, 3));
    }

    #[test]
    fn small_grid_passes() {
        let report = verify_grid(2, 3).unwrap();
        assert!(report.passed(), "{:?}", report.mismatches);
        let iso = report.points.iter().find(|p| p.point() == (1, 1)).unwrap();
        assert_eq!(iso.signature_match, None);
        assert!(iso.kh_match);
    }

    #[test]
    fn breakdown_is_confined_to_boundaries() {
        let report = scan_breakdown(2, 3).unwrap();
        assert!(report.consistent());
        for scan in &report.chambers {
            let (a, b) = scan.first_failure.expect("every formula fails somewhere");
            assert_ne!(classify(FamilyPoint::new(a, b).unwrap()), scan.chamber);
        }
    }
}
