//! Faces of the projection and the Reidemeister II stabilization.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{Crossing, CrossingSign, DiagramError, PlanarDiagram};

/// An arc traversed in one direction; `forward` means along the orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub arc: usize,
    pub forward: bool,
}

/// The corner of `crossing` between `slot` and `slot + 1` (counterclockwise).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Corner {
    pub crossing: usize,
    pub slot: usize,
}

impl Corner {
    /// Corners between slots (0,1) and (2,3) are the ones the 0-smoothing
    /// cuts off.
    pub fn is_zero_smoothing_corner(&self) -> bool {
        self.slot % 2 == 0
    }
}

/// A face of the projection. Every dart in `darts` has the face on its left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
    pub corners: Vec<Corner>,
}

/// Where to insert a Reidemeister II pair: `over` is pushed across `under`
/// inside the face both darts bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct R2Site {
    pub over: Dart,
    pub under: Dart,
}

impl PlanarDiagram {
    fn dart_end(&self, dart: Dart) -> (usize, usize) {
        if dart.forward {
            self.head(dart.arc)
        } else {
            self.tail(dart.arc)
        }
    }

    /// Faces of the projection (free loops are ignored).
    ///
    /// Arriving at a crossing through slot `p`, the face on the left
    /// continues out of slot `p - 1`.
    pub fn faces(&self) -> Vec<Face> {
        let n = self.arc_count();
        let dart_index = |d: Dart| 2 * d.arc + usize::from(!d.forward);
        let mut seen = vec![false; 2 * n];
        let mut faces = Vec::new();
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            let mut darts = Vec::new();
            let mut corners = Vec::new();
            let mut dart = Dart {
                arc: start / 2,
                forward: start % 2 == 0,
            };
            while !seen[dart_index(dart)] {
                seen[dart_index(dart)] = true;
                darts.push(dart);
                let (c, p) = self.dart_end(dart);
                let leave = (p + 3) % 4;
                corners.push(Corner {
                    crossing: c,
                    slot: leave,
                });
                let arc = self.crossings()[c].arcs[leave];
                // leaving through slot `leave`: forward iff that slot is the arc's tail
                dart = Dart {
                    arc,
                    forward: self.tail(arc) == (c, leave),
                };
            }
            faces.push(Face { darts, corners });
        }
        faces
    }

    /// `V - E + F` of the projection graph; 2 for a connected diagram.
    pub fn euler_characteristic(&self) -> i64 {
        self.crossing_count() as i64 - self.arc_count() as i64 + self.faces().len() as i64
    }

    /// Every pair of darts on a common face with distinct arcs.
    pub fn r2_sites(&self) -> Vec<R2Site> {
        let mut sites = Vec::new();
        for face in self.faces() {
            for &over in &face.darts {
                for &under in &face.darts {
                    if over.arc != under.arc {
                        sites.push(R2Site { over, under });
                    }
                }
            }
        }
        sites
    }

    /// Reidemeister II stabilization at the first available site.
    pub fn r2_stabilize(&self) -> Result<Self, DiagramError> {
        let site = *self.r2_sites().first().ok_or(DiagramError::NoCrossings)?;
        self.r2_stabilize_at(site)
    }

    /// Reidemeister II stabilization at a uniformly chosen site.
    pub fn r2_stabilize_random<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<Self, DiagramError> {
        let site = *self.r2_sites().choose(rng).ok_or(DiagramError::NoCrossings)?;
        self.r2_stabilize_at(site)
    }

    /// Pushes a finger of `site.over` across `site.under`, adding one
    /// positive and one negative crossing.
    ///
    /// Local picture: the under arc is horizontal with the face above it,
    /// the over arc runs above the face, and the finger dips down through
    /// the under arc at a left crossing L and comes back up at a right
    /// crossing R.
    pub fn r2_stabilize_at(&self, site: R2Site) -> Result<Self, DiagramError> {
        let R2Site { over, under } = site;
        if over.arc == under.arc {
            return Err(DiagramError::InvalidR2Site("arcs must be distinct".into()));
        }
        if over.arc >= self.arc_count() || under.arc >= self.arc_count() {
            return Err(DiagramError::InvalidR2Site("arc out of range".into()));
        }
        let shares_face = self
            .faces()
            .iter()
            .any(|f| f.darts.contains(&over) && f.darts.contains(&under));
        if !shares_face {
            return Err(DiagramError::InvalidR2Site(
                "darts do not bound a common face".into(),
            ));
        }

        // Face on the left of a dart => on the left of the arc iff forward.
        let under_east = under.forward;
        let over_east = !over.forward;

        let n = self.arc_count();
        let (over_a, over_m, over_b) = (over.arc, n, n + 1);
        let (under_a, under_m, under_b) = (under.arc, n + 2, n + 3);

        let mut crossings: Vec<Crossing> = self.crossings().to_vec();
        let (hc, hs) = self.head(over.arc);
        crossings[hc].arcs[hs] = over_b;
        let (hc, hs) = self.head(under.arc);
        crossings[hc].arcs[hs] = under_b;

        #[derive(PartialEq, Clone, Copy)]
        enum Side {
            Left,
            Right,
        }
        let over_first = if over_east { Side::Left } else { Side::Right };
        let under_first = if under_east { Side::Left } else { Side::Right };

        for side in [Side::Left, Side::Right] {
            let (under_in, under_out) = if side == under_first {
                (under_a, under_m)
            } else {
                (under_m, under_b)
            };
            // first pass of the finger goes down, second comes back up
            let going_down = side == over_first;
            let (north, south) = if going_down {
                (over_a, over_m)
            } else {
                (over_b, over_m)
            };
            let arcs = if under_east {
                [under_in, south, under_out, north]
            } else {
                [under_in, north, under_out, south]
            };
            let ux = if under_east { 1 } else { -1 };
            let oy = if going_down { -1 } else { 1 };
            let sign = if -oy * ux > 0 {
                CrossingSign::Positive
            } else {
                CrossingSign::Negative
            };
            crossings.push(Crossing { arcs, sign });
        }

        Ok(PlanarDiagram::from_crossings(crossings, self.free_loops())?.canonicalize())
    }
}

#[cfg(test)]
mod tests {
    use super::super::{double_braid, FamilyPoint};
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn pt(a: i32, b: i32) -> PlanarDiagram {
        double_braid(FamilyPoint::new(a, b).unwrap())
    }

    #[test]
    fn every_dart_lies_on_exactly_one_face() {
        let d = pt(3, -3);
        let faces = d.faces();
        let total: usize = faces.iter().map(|f| f.darts.len()).sum();
        assert_eq!(total, 2 * d.arc_count());
    }

    #[test]
    fn family_diagrams_are_spherical() {
        for a in -4..=4 {
            for b in [-5, -3, -1, 1, 3, 5] {
                assert_eq!(pt(a, b).euler_characteristic(), 2, "({a},{b})");
            }
        }
    }

    #[test]
    fn alternating_faces_have_uniform_corners() {
        let d = pt(-3, 3);
        assert!(d.is_alternating());
        for f in d.faces() {
            let kind = f.corners[0].is_zero_smoothing_corner();
            assert!(f.corners.iter().all(|c| c.is_zero_smoothing_corner() == kind));
        }
    }

    #[test]
    fn r2_adds_a_cancelling_pair_everywhere() {
        let d = pt(2, -3);
        for site in d.r2_sites() {
            let s = d.r2_stabilize_at(site).unwrap();
            assert_eq!(s.crossing_count(), d.crossing_count() + 2);
            assert_eq!(s.writhe(), d.writhe());
            assert_eq!(s.components(), d.components());
            assert_eq!(s.euler_characteristic(), 2);
        }
    }

    #[test]
    fn r2_random_is_reproducible() {
        let d = pt(-1, 5);
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(
            d.r2_stabilize_random(&mut r1).unwrap(),
            d.r2_stabilize_random(&mut r2).unwrap()
        );
    }

    #[test]
    fn r2_rejects_bad_sites() {
        let d = pt(2, 1);
        let dart = Dart {
            arc: 0,
            forward: true,
        };
        assert!(d
            .r2_stabilize_at(R2Site {
                over: dart,
                under: dart
            })
            .is_err());
        assert_eq!(PlanarDiagram::unlink(2).r2_stabilize(), Err(DiagramError::NoCrossings));
    }

    #[test]
    fn linking_number_survives_r2() {
        let d = pt(1, 3);
        for site in d.r2_sites().into_iter().step_by(3) {
            let s = d.r2_stabilize_at(site).unwrap();
            assert_eq!(s.linking_number(), d.linking_number());
        }
    }
}
