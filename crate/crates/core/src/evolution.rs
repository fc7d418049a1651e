//! Chamber structure of the family and the Khovanov evolution formula
//!
//! ```text
//! Kh(a, b) = (1, (t q^2)^b) M (q^-a, (t q^3)^-a, (-t q^3)^-a)^T
//! ```
//!
//! with one 2x3 matrix `M` per chamber.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::FamilyPoint;
use crate::laurent::{contract, BivariateLaurent, LaurentError, RationalEntry, RationalScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvolutionError {
    #[error("isolated points (1,1) and (-1,-1) have no evolution matrix")]
    IsolatedHasNoMatrix,
    #[error("{0} is an isolated point (split link); no signature formula applies")]
    IsolatedPoint(FamilyPoint),
    #[error("unknown chamber {0:?}; expected UL, UR, LL or LR")]
    UnknownChamber(String),
    #[error("entry ({0},{1}) is outside the 2x3 matrix")]
    BadEntry(usize, usize),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Chamber {
    UL,
    UR,
    LL,
    LR,
    IsolatedPoint,
}

impl Chamber {
    /// The four chambers that carry a matrix.
    pub const REGIONS: [Chamber; 4] = [Chamber::UL, Chamber::UR, Chamber::LL, Chamber::LR];
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Chamber::UL => "UL",
            Chamber::UR => "UR",
            Chamber::LL => "LL",
            Chamber::LR => "LR",
            Chamber::IsolatedPoint => "IsolatedPoint",
        };
        f.write_str(s)
    }
}

impl FromStr for Chamber {
    type Err = EvolutionError;
    fn from_str(s: &str) -> Result<Self, EvolutionError> {
        match s.to_ascii_uppercase().as_str() {
            "UL" => Ok(Chamber::UL),
            "UR" => Ok(Chamber::UR),
            "LL" => Ok(Chamber::LL),
            "LR" => Ok(Chamber::LR),
            _ => Err(EvolutionError::UnknownChamber(s.to_string())),
        }
    }
}

pub fn classify(pt: FamilyPoint) -> Chamber {
    let (a, b) = (pt.a(), pt.b());
    match (a, b) {
        (1, 1) | (-1, -1) => Chamber::IsolatedPoint,
        _ if b > 0 && a <= 0 => Chamber::UL,
        _ if b > 0 => Chamber::UR,
        _ if a >= 0 => Chamber::LR,
        _ => Chamber::LL,
    }
}

/// Signature of the link at `pt` from its chamber.
pub fn signature_formula(pt: FamilyPoint) -> Result<i32, EvolutionError> {
    let a = pt.a();
    match classify(pt) {
        Chamber::UR => Ok(a - 2),
        Chamber::UL | Chamber::LR => Ok(a),
        Chamber::LL => Ok(a + 2),
        Chamber::IsolatedPoint => Err(EvolutionError::IsolatedPoint(pt)),
    }
}

/// A 2x3 matrix of rational functions in `(q, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChamberMatrix {
    pub entries: [[RationalEntry; 3]; 2],
}

const FAMILY_DEN: &str = "(q^2*t - 1)^2*(q^3*t + q)";
const MIXED_DEN: &str = "(q^2*t - 1)^2*(q^2*t + 1)";
const UR_DEN: &str = "q*t*(q^2*t - 1)^2*(q^2*t + 1)";

fn entry(num: &str, den: &str) -> RationalEntry {
    RationalEntry::parse(num, den)
}

fn ul_or_lr() -> ChamberMatrix {
    ChamberMatrix {
        entries: [
            [
                entry("q^8*t^3 + q^6*t^3 - q^4*t^2 - q^4*t + q^2 + 1", FAMILY_DEN),
                entry("-q^5*t^2 - q*t", MIXED_DEN),
                RationalEntry::zero(),
            ],
            [
                entry("-q^8*t^3 + q^6*t^2 - q^4*t^2 - q^4*t + q^2*t - 1", FAMILY_DEN),
                entry(
                    "2*q^8*t^3 + q^6*t^3 - q^6*t^2 - q^2*t + q^2 + 2",
                    &format!("2*{FAMILY_DEN}"),
                ),
                entry("-q*t - q", "2*q^2*t + 2"),
            ],
        ],
    }
}

fn ur() -> ChamberMatrix {
    ChamberMatrix {
        entries: [
            [
                entry("q^8*t^4 - 2*q^6*t^3 - q^6*t^2 + q^2*t - 1", UR_DEN),
                entry("q^5*t + q", MIXED_DEN),
                RationalEntry::zero(),
            ],
            [
                entry("q^8*t^3 - q^6*t^2 + q^4*t^2 + q^4*t - q^2*t + 1", UR_DEN),
                entry(
                    "q^8*t^4 - q^8*t^3 - 2*q^6*t^3 - q^4*t^2 - q^4*t + 2*q^2*t - 2",
                    &format!("2*{UR_DEN}"),
                ),
                entry("-q^3*t - q^3", "2*q^2*t + 2"),
            ],
        ],
    }
}

fn ll() -> ChamberMatrix {
    ChamberMatrix {
        entries: [
            [
                entry("-q^8*t^4 + q^6*t^3 - q^2*t^2 - 2*q^2*t + 1", FAMILY_DEN),
                entry("q^5*t^3 + q*t^2", MIXED_DEN),
                RationalEntry::zero(),
            ],
            [
                entry("q^8*t^4 - q^6*t^3 + q^4*t^3 + q^4*t^2 - q^2*t^2 + t", FAMILY_DEN),
                entry(
                    "-2*q^8*t^4 + 2*q^6*t^3 - q^4*t^3 - q^4*t^2 - 2*q^2*t - t + 1",
                    &format!("2*{FAMILY_DEN}"),
                ),
                entry("-t - 1", "2*(q^3*t + q)"),
            ],
        ],
    }
}

impl ChamberMatrix {
    /// Entry `M_{row,col}` with 1-based indices.
    pub fn get(&self, row: usize, col: usize) -> Result<&RationalEntry, EvolutionError> {
        if !(1..=2).contains(&row) || !(1..=3).contains(&col) {
            return Err(EvolutionError::BadEntry(row, col));
        }
        Ok(&self.entries[row - 1][col - 1])
    }

    /// The matrix evaluated at a rational point.
    pub fn eval(&self, q0: &RationalScalar, t0: &RationalScalar) -> Result<Vec<Vec<RationalScalar>>, LaurentError> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.eval(q0, t0)).collect())
            .collect()
    }

    fn rows(&self) -> Vec<Vec<RationalEntry>> {
        self.entries.iter().map(|r| r.to_vec()).collect()
    }
}

pub fn chamber_matrix(c: Chamber) -> Result<ChamberMatrix, EvolutionError> {
    match c {
        Chamber::UL | Chamber::LR => Ok(ul_or_lr()),
        Chamber::UR => Ok(ur()),
        Chamber::LL => Ok(ll()),
        Chamber::IsolatedPoint => Err(EvolutionError::IsolatedHasNoMatrix),
    }
}

/// `D = 2 (q^2 t - 1)^2 (q^3 t + q)(q^2 t + 1)`; every entry's denominator
/// divides it up to a unit.
pub fn common_denominator() -> BivariateLaurent {
    "2*(q^2*t - 1)^2*(q^3*t + q)*(q^2*t + 1)".parse().expect("valid literal")
}

/// The b-direction eigenvalue powers `(1, (t q^2)^b)`.
pub fn row_vector(b: i32) -> Result<[BivariateLaurent; 2], LaurentError> {
    let tq2: BivariateLaurent = "t*q^2".parse().expect("valid literal");
    Ok([BivariateLaurent::one(), tq2.pow(b)?])
}

/// The a-direction eigenvalue powers `(q^-a, (t q^3)^-a, (-t q^3)^-a)`.
pub fn column_vector(a: i32) -> Result<[BivariateLaurent; 3], LaurentError> {
    let tq3: BivariateLaurent = "t*q^3".parse().expect("valid literal");
    let neg_tq3 = -&tq3;
    Ok([BivariateLaurent::q().pow(-a)?, tq3.pow(-a)?, neg_tq3.pow(-a)?])
}

/// The evolution formula with an explicit matrix, whatever the chamber.
pub fn evolve_with(m: &ChamberMatrix, a: i32, b: i32) -> Result<BivariateLaurent, LaurentError> {
    contract(&row_vector(b)?, &m.rows(), &column_vector(a)?, &common_denominator())
}

/// `Kh` at `pt` from the evolution formula of its chamber; the isolated
/// points give the split union of two unknots.
pub fn khovanov_evolution(pt: FamilyPoint) -> Result<BivariateLaurent, EvolutionError> {
    match classify(pt) {
        Chamber::IsolatedPoint => Ok("q^2 + 2 + q^-2".parse().expect("valid literal")),
        c => Ok(evolve_with(&chamber_matrix(c)?, pt.a(), pt.b())?),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: String,
    pub passed: bool,
}

/// `lhs == factor * rhs` as rational functions.
fn scaled_equal(lhs: &RationalEntry, factor: &BivariateLaurent, rhs: &RationalEntry) -> bool {
    lhs.equals(&rhs.scaled_by(factor))
}

/// Checks the inter-chamber relations on the given matrices.
pub fn check_relations(ul: &ChamberMatrix, ur: &ChamberMatrix, ll: &ChamberMatrix, lr: &ChamberMatrix) -> Vec<RelationCheck> {
    let neg_t_inv: BivariateLaurent = "-t^-1".parse().expect("valid literal");
    let q2: BivariateLaurent = "q^2".parse().expect("valid literal");
    let one = BivariateLaurent::one();
    let t_plus_one: BivariateLaurent = "t + 1".parse().expect("valid literal");
    let mut out = Vec::new();
    let mut push = |relation: String, passed: bool| out.push(RelationCheck { relation, passed });

    for ((r, c), factor, label) in [
        ((0, 1), &neg_t_inv, "-t^-1"),
        ((1, 0), &neg_t_inv, "-t^-1"),
        ((1, 2), &q2, "q^2"),
    ] {
        let at = |m: &ChamberMatrix| m.entries[r][c].clone();
        let (i, j) = (r + 1, c + 1);
        push(
            format!("M_UR({i},{j}) = {label} M_UL({i},{j})"),
            scaled_equal(&at(ur), factor, &at(ul)),
        );
        push(
            format!("M_UL({i},{j}) = M_LR({i},{j}) = {label} M_LL({i},{j})"),
            scaled_equal(&at(ul), &one, &at(lr)) && scaled_equal(&at(lr), factor, &at(ll)),
        );
    }
    let identical = (0..2).all(|r| (0..3).all(|c| ul.entries[r][c].equals(&lr.entries[r][c])));
    push("M_UL = M_LR entrywise".to_string(), identical);
    for (name, m) in [("UL", ul), ("UR", ur), ("LL", ll), ("LR", lr)] {
        for r in 0..2 {
            let divisible = m.entries[r][2].numerator.exact_div(&t_plus_one).is_ok();
            push(format!("(t+1) divides numerator of M_{name}({},3)", r + 1), divisible);
        }
        push(format!("M_{name}(1,3) = 0"), m.entries[0][2].is_zero());
    }
    out
}

/// All relations on the hard-coded matrices.
pub fn chamber_relations_check() -> Vec<RelationCheck> {
    let m = |c| chamber_matrix(c).expect("regions carry matrices");
    check_relations(&m(Chamber::UL), &m(Chamber::UR), &m(Chamber::LL), &m(Chamber::LR))
}

/// Scale that turns the `M_{1,1}` entries into Laurent polynomials.
pub fn newton_scale() -> BivariateLaurent {
    FAMILY_DEN.parse().expect("valid literal")
}

/// Monomials `(q_power, t_power, coefficient)` of `M_{row,col}` times
/// `(q^2 t - 1)^2 (q^3 t + q)`, in canonical order.
pub fn newton_plane(c: Chamber, row: usize, col: usize) -> Result<Vec<(i32, i32, RationalScalar)>, EvolutionError> {
    let m = chamber_matrix(c)?;
    let p = m.get(row, col)?.times_polynomial(&newton_scale())?;
    Ok(p.terms().collect())
}
