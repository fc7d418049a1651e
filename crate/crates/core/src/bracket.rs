//! Jones polynomial by state sum, and its closed form on the family.

use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{FamilyPoint, PlanarDiagram};
use crate::khovanov::resolve;
use crate::laurent::{contract, BivariateLaurent, LaurentError, RationalEntry, UnivariateLaurent, Variable};

/// Largest diagram the state sum accepts.
pub const MAX_BRACKET_CROSSINGS: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BracketError {
    #[error("diagram has {found} crossings; the limit is {max}")]
    TooManyCrossings { found: usize, max: usize },
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

fn q_poly(s: &str) -> UnivariateLaurent {
    UnivariateLaurent::parse(Variable::Q, s).expect("valid literal")
}

/// `sum over states of (-q)^r (q + q^-1)^loops`.
pub fn kauffman_bracket(d: &PlanarDiagram) -> Result<UnivariateLaurent, BracketError> {
    let n = d.crossing_count();
    if n > MAX_BRACKET_CROSSINGS {
        return Err(BracketError::TooManyCrossings {
            found: n,
            max: MAX_BRACKET_CROSSINGS,
        });
    }
    let max_loops = n + d.free_loops() + 1;
    let width = max_loops + 1;
    // histogram[r * width + loops] counts states
    let histogram = (0..1u64 << n)
        .into_par_iter()
        .fold(
            || vec![0u64; (n + 1) * width],
            |mut h, s| {
                let res = resolve(d, s);
                h[res.ones() as usize * width + res.loop_count()] += 1;
                h
            },
        )
        .reduce(
            || vec![0u64; (n + 1) * width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let neg_q = q_poly("-q");
    let circle = q_poly("q + q^-1");
    let mut total = UnivariateLaurent::zero(Variable::Q);
    for r in 0..=n {
        for loops in 0..width {
            let count = histogram[r * width + loops];
            if count == 0 {
                continue;
            }
            let term = &neg_q.pow(r as i32)? * &circle.pow(loops as i32)?;
            total = &total + &term.scale(&(count as i64).into());
        }
    }
    Ok(total)
}

/// `(-1)^{n-} q^{n+ - 2n-} <D>`, normalised so the unknot gives `q + q^-1`.
pub fn jones_unreduced(d: &PlanarDiagram) -> Result<UnivariateLaurent, BracketError> {
    let (np, nn) = (d.n_pos() as i32, d.n_neg() as i32);
    let sign: i64 = if nn % 2 == 0 { 1 } else { -1 };
    Ok(kauffman_bracket(d)?.shift(np - 2 * nn).scale(&sign.into()))
}

/// The 2x2 matrix `N` of the Jones evolution formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JonesEvolutionMatrix {
    pub entries: [[RationalEntry; 2]; 2],
}

impl JonesEvolutionMatrix {
    pub fn new() -> Self {
        // S = (q^2 + 1 + q^-2) / (q + q^-1)
        let s = || RationalEntry::parse("q^2 + 1 + q^-2", "q + q^-1");
        let neg_s = RationalEntry::parse("-q^2 - 1 - q^-2", "q + q^-1");
        Self {
            entries: [
                [s(), RationalEntry::parse("1", "q + q^-1")],
                [neg_s, s()],
            ],
        }
    }

    /// The shared denominator `q + q^-1`.
    pub fn common_denominator() -> BivariateLaurent {
        "q + q^-1".parse().expect("valid literal")
    }
}

impl Default for JonesEvolutionMatrix {
    fn default() -> Self {
        Self::new()
    }
}

/// `(1, (-q^2)^b) N (q^-a, (-q^3)^-a)^T`.
pub fn jones_evolution(pt: FamilyPoint) -> Result<UnivariateLaurent, BracketError> {
    let (a, b) = (pt.a(), pt.b());
    let neg_q2: BivariateLaurent = "-q^2".parse().expect("valid literal");
    let neg_q3: BivariateLaurent = "-q^3".parse().expect("valid literal");
    let row = [BivariateLaurent::one(), neg_q2.pow(b)?];
    let col = [BivariateLaurent::q().pow(-a)?, neg_q3.pow(-a)?];
    let n = JonesEvolutionMatrix::new();
    let matrix: Vec<Vec<RationalEntry>> = n.entries.iter().map(|r| r.to_vec()).collect();
    let j = contract(&row, &matrix, &col, &JonesEvolutionMatrix::common_denominator())?;
    Ok(j.to_univariate_q().expect("t-free by construction"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::double_braid;

    fn pt(a: i32, b: i32) -> FamilyPoint {
        FamilyPoint::new(a, b).unwrap()
    }

    #[test]
    fn unknot_and_two_loops() {
        let circle = q_poly("q + q^-1");
        assert_eq!(kauffman_bracket(&PlanarDiagram::unlink(1)).unwrap(), circle);
        assert_eq!(
            kauffman_bracket(&PlanarDiagram::unlink(2)).unwrap(),
            &circle * &circle
        );
        assert_eq!(jones_unreduced(&PlanarDiagram::unlink(1)).unwrap(), circle);
    }

    #[test]
    fn kinks_are_unknots() {
        assert_eq!(jones_unreduced(&double_braid(pt(0, 1))).unwrap(), q_poly("q + q^-1"));
        assert_eq!(jones_unreduced(&double_braid(pt(0, -1))).unwrap(), q_poly("q + q^-1"));
    }

    #[test]
    fn isolated_points_are_split_unknots() {
        let two = q_poly("q^2 + 2 + q^-2");
        assert_eq!(jones_unreduced(&double_braid(pt(1, 1))).unwrap(), two);
        assert_eq!(jones_unreduced(&double_braid(pt(-1, -1))).unwrap(), two);
        assert_eq!(jones_evolution(pt(1, 1)).unwrap(), two);
        assert_eq!(jones_evolution(pt(0, 1)).unwrap(), q_poly("q + q^-1"));
    }

    #[test]
    fn bracket_is_multiplicative_under_distant_union() {
        let d1 = double_braid(pt(2, 1));
        let d2 = double_braid(pt(-1, 3));
        let union = d1.disjoint_union(&d2);
        assert_eq!(
            kauffman_bracket(&union).unwrap(),
            &kauffman_bracket(&d1).unwrap() * &kauffman_bracket(&d2).unwrap()
        );
    }

    #[test]
    fn jones_is_r2_invariant() {
        let d = double_braid(pt(3, -1));
        let j = jones_unreduced(&d).unwrap();
        for site in d.r2_sites().into_iter().step_by(5) {
            assert_eq!(jones_unreduced(&d.r2_stabilize_at(site).unwrap()).unwrap(), j);
        }
    }

    #[test]
    fn evolution_matches_state_sum_on_a_small_grid() {
        for a in -3..=3 {
            for b in [-3, -1, 1, 3] {
                let p = pt(a, b);
                assert_eq!(
                    jones_evolution(p).unwrap(),
                    jones_unreduced(&double_braid(p)).unwrap(),
                    "{p}"
                );
            }
        }
    }

    #[test]
    fn guard() {
        let mut d = double_braid(pt(13, 13));
        assert!(matches!(
            kauffman_bracket(&d),
            Err(BracketError::TooManyCrossings { found: 26, .. })
        ));
        d = d.mirror();
        assert!(jones_unreduced(&d).is_err());
    }
}
