//! Oriented planar diagrams (PD codes) and the double-braid family generator.
//!
//! Crossings follow the KnotTheory convention: the four incident arcs are
//! listed counterclockwise starting from the incoming under-strand, so the
//! under-strand runs from slot 0 to slot 2. The over-strand runs from slot 3
//! to slot 1 at a positive crossing and from slot 1 to slot 3 at a negative
//! one. Arc ids are 0-based internally and 1-based in every export.

mod family;
mod faces;

use std::fmt;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use faces::{Corner, Dart, Face, R2Site};
pub use family::{double_braid, FamilyPoint};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("b must be odd (got b = {0})")]
    EvenB(i32),
    #[error("linking number needs exactly two components, diagram has {0}")]
    NotTwoComponents(usize),
    #[error("arc {arc} is malformed: {reason}")]
    MalformedArc { arc: usize, reason: String },
    #[error("invalid Reidemeister II site: {0}")]
    InvalidR2Site(String),
    #[error("diagram has no crossings to stabilize")]
    NoCrossings,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrossingSign {
    Positive,
    Negative,
}

impl CrossingSign {
    pub fn value(self) -> i32 {
        match self {
            CrossingSign::Positive => 1,
            CrossingSign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            CrossingSign::Positive => CrossingSign::Negative,
            CrossingSign::Negative => CrossingSign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [usize; 4],
    pub sign: CrossingSign,
}

impl Crossing {
    pub fn over_in_slot(&self) -> usize {
        match self.sign {
            CrossingSign::Positive => 3,
            CrossingSign::Negative => 1,
        }
    }

    pub fn over_out_slot(&self) -> usize {
        (self.over_in_slot() + 2) % 4
    }

    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot()
    }

    /// The same crossing with over and under exchanged.
    pub fn switched(&self) -> Self {
        let [i, j, k, l] = self.arcs;
        match self.sign {
            CrossingSign::Positive => Crossing {
                arcs: [l, i, j, k],
                sign: CrossingSign::Negative,
            },
            CrossingSign::Negative => Crossing {
                arcs: [j, k, l, i],
                sign: CrossingSign::Positive,
            },
        }
    }
}

/// A slot of a crossing: `(crossing index, slot 0..4)`.
pub type Endpoint = (usize, usize);

/// Oriented link diagram. Immutable once built; every constructor validates
/// that each arc has exactly one head and one tail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
    heads: Vec<Endpoint>,
    tails: Vec<Endpoint>,
    component_of: Vec<usize>,
    arc_components: usize,
}

impl PlanarDiagram {
    /// Builds a diagram from crossings whose arc ids are `0..2n`, plus
    /// `free_loops` crossingless unknotted circles.
    pub fn from_crossings(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self, DiagramError> {
        let arc_count = 2 * crossings.len();
        let mut heads: Vec<Option<Endpoint>> = vec![None; arc_count];
        let mut tails: Vec<Option<Endpoint>> = vec![None; arc_count];
        for (ci, c) in crossings.iter().enumerate() {
            for (slot, &arc) in c.arcs.iter().enumerate() {
                if arc >= arc_count {
                    return Err(DiagramError::MalformedArc {
                        arc,
                        reason: format!("id out of range 0..{arc_count}"),
                    });
                }
                let target = if c.is_incoming(slot) {
                    &mut heads[arc]
                } else {
                    &mut tails[arc]
                };
                if target.replace((ci, slot)).is_some() {
                    return Err(DiagramError::MalformedArc {
                        arc,
                        reason: "two heads or two tails".into(),
                    });
                }
            }
        }
        let unwrap = |v: Vec<Option<Endpoint>>, what: &str| {
            v.into_iter()
                .enumerate()
                .map(|(arc, e)| {
                    e.ok_or_else(|| DiagramError::MalformedArc {
                        arc,
                        reason: format!("missing {what}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()
        };
        let heads = unwrap(heads, "head")?;
        let tails = unwrap(tails, "tail")?;

        let mut d = PlanarDiagram {
            crossings,
            free_loops,
            heads,
            tails,
            component_of: vec![usize::MAX; arc_count],
            arc_components: 0,
        };
        d.label_components();
        Ok(d)
    }

    fn label_components(&mut self) {
        let mut next = 0;
        for start in 0..self.arc_count() {
            if self.component_of[start] != usize::MAX {
                continue;
            }
            let mut arc = start;
            loop {
                self.component_of[arc] = next;
                arc = self.next_arc(arc);
                if arc == start {
                    break;
                }
            }
            next += 1;
        }
        self.arc_components = next;
    }

    /// Renumbers arcs by walking components: the component through the
    /// lowest-numbered unvisited arc is traversed along its orientation,
    /// starting at that arc, and receives consecutive ids.
    pub fn canonicalize(&self) -> Self {
        let mut relabel = vec![usize::MAX; self.arc_count()];
        let mut next = 0;
        for start in 0..self.arc_count() {
            if relabel[start] != usize::MAX {
                continue;
            }
            let mut arc = start;
            loop {
                relabel[arc] = next;
                next += 1;
                arc = self.next_arc(arc);
                if arc == start {
                    break;
                }
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing {
                arcs: c.arcs.map(|a| relabel[a]),
                sign: c.sign,
            })
            .collect();
        Self::from_crossings(crossings, self.free_loops).expect("relabeling preserves validity")
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        2 * self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Where the arc ends (the crossing slot it enters).
    pub fn head(&self, arc: usize) -> Endpoint {
        self.heads[arc]
    }

    /// Where the arc starts (the crossing slot it leaves).
    pub fn tail(&self, arc: usize) -> Endpoint {
        self.tails[arc]
    }

    /// The arc following `arc` along its component.
    pub fn next_arc(&self, arc: usize) -> usize {
        let (c, slot) = self.heads[arc];
        self.crossings[c].arcs[(slot + 2) % 4]
    }

    pub fn component_of(&self, arc: usize) -> usize {
        self.component_of[arc]
    }

    /// Number of link components, free loops included.
    pub fn components(&self) -> usize {
        self.arc_components + self.free_loops
    }

    pub fn crossing_signs(&self) -> Vec<CrossingSign> {
        self.crossings.iter().map(|c| c.sign).collect()
    }

    pub fn n_pos(&self) -> usize {
        self.crossings
            .iter()
            .filter(|c| c.sign == CrossingSign::Positive)
            .count()
    }

    pub fn n_neg(&self) -> usize {
        self.crossing_count() - self.n_pos()
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Half the signed count of crossings between the two components.
    pub fn linking_number(&self) -> Result<Rational64, DiagramError> {
        if self.components() != 2 {
            return Err(DiagramError::NotTwoComponents(self.components()));
        }
        let twice: i64 = self
            .crossings
            .iter()
            .filter(|c| self.component_of[c.arcs[0]] != self.component_of[c.arcs[1]])
            .map(|c| c.sign.value() as i64)
            .sum();
        Ok(Rational64::new(twice, 2))
    }

    /// True iff every arc runs from an over-pass to an under-pass or back,
    /// i.e. over and under strictly alternate along every component.
    pub fn is_alternating(&self) -> bool {
        (0..self.arc_count()).all(|arc| {
            let (_, tail_slot) = self.tails[arc];
            let (_, head_slot) = self.heads[arc];
            tail_slot % 2 != head_slot % 2
        })
    }

    /// All crossings switched; arc ids and orientation are kept.
    pub fn mirror(&self) -> Self {
        let crossings = self.crossings.iter().map(Crossing::switched).collect();
        Self::from_crossings(crossings, self.free_loops).expect("mirror preserves validity")
    }

    /// Distant union; arcs of `other` are renumbered after ours.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let offset = self.arc_count();
        let crossings = self
            .crossings
            .iter()
            .cloned()
            .chain(other.crossings.iter().map(|c| Crossing {
                arcs: c.arcs.map(|a| a + offset),
                sign: c.sign,
            }))
            .collect();
        Self::from_crossings(crossings, self.free_loops + other.free_loops)
            .expect("union of valid diagrams")
    }

    /// A crossingless diagram of `n` unlinked unknots.
    pub fn unlink(n: usize) -> Self {
        Self::from_crossings(Vec::new(), n).expect("empty diagram")
    }

    /// KnotTheory text, e.g. `PD[X[1,4,2,5], X[3,6,4,1]]`. Free loops are
    /// written as `Loop[k]` with fresh ids.
    pub fn to_pd_text(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                let [i, j, k, l] = c.arcs.map(|a| a + 1);
                format!("X[{i},{j},{k},{l}]")
            })
            .collect();
        for n in 0..self.free_loops {
            parts.push(format!("Loop[{}]", self.arc_count() + n + 1));
        }
        format!("PD[{}]", parts.join(", "))
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_text())
    }
}

/// JSON form of a diagram. Arc ids are 1-based to match the PD text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDump {
    pub pd: String,
    pub crossings: Vec<Crossing>,
    pub free_loops: usize,
    pub arc_count: usize,
    pub components: usize,
    /// Component index of arc `k + 1`.
    pub component_of: Vec<usize>,
    pub n_pos: usize,
    pub n_neg: usize,
    pub writhe: i32,
    pub alternating: bool,
}

impl From<&PlanarDiagram> for DiagramDump {
    fn from(d: &PlanarDiagram) -> Self {
        DiagramDump {
            pd: d.to_pd_text(),
            crossings: d
                .crossings
                .iter()
                .map(|c| Crossing {
                    arcs: c.arcs.map(|a| a + 1),
                    sign: c.sign,
                })
                .collect(),
            free_loops: d.free_loops,
            arc_count: d.arc_count(),
            components: d.components(),
            component_of: d.component_of.clone(),
            n_pos: d.n_pos(),
            n_neg: d.n_neg(),
            writhe: d.writhe(),
            alternating: d.is_alternating(),
        }
    }
}

impl TryFrom<&DiagramDump> for PlanarDiagram {
    type Error = DiagramError;

    fn try_from(dump: &DiagramDump) -> Result<Self, DiagramError> {
        let crossings = dump
            .crossings
            .iter()
            .map(|c| {
                let mut arcs = [0; 4];
                for (dst, &a) in arcs.iter_mut().zip(c.arcs.iter()) {
                    *dst = a.checked_sub(1).ok_or_else(|| DiagramError::MalformedArc {
                        arc: 0,
                        reason: "arc ids are 1-based".into(),
                    })?;
                }
                Ok(Crossing { arcs, sign: c.sign })
            })
            .collect::<Result<Vec<_>, DiagramError>>()?;
        PlanarDiagram::from_crossings(crossings, dump.free_loops)
    }
}
