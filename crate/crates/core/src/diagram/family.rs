//! Generator for the two-parameter double-braid family.
//!
//! The template has a vertical two-strand twist region A (|a| crossings,
//! stacked top to bottom) sitting above a horizontal twist region B (|b|
//! crossings, left to right). Their corners are joined by four fixed arcs:
//!
//! ```text
//!   A.NW ──(around the left)──  B.SW
//!   A.NE ──(around the right)── B.SE
//!   A.SW ──────────────────────  B.NW
//!   A.SE ──────────────────────  B.NE
//! ```
//!
//! Orientation: both strands of A run upward (parallel braid); B is
//! antiparallel, entered at SW and SE and left at NW and NE. This closes up
//! consistently exactly when b is odd. For a > 0 the crossings of A are
//! negative, for b > 0 those of B are positive, so the writhe is `b - a`.
//!
//! Numbering scan: template edges are listed as A's internal edges (top to
//! bottom, west edge before east edge), then B's internal edges (left to
//! right, north before south), then the four fixed arcs in the order above.
//! The resulting diagram is then canonicalized, which walks components
//! starting from the lowest-numbered edge.

use serde::{Deserialize, Serialize};

use super::{Crossing, CrossingSign, DiagramError, PlanarDiagram};

/// Braid-winding parameters `(a, b)`; `b` is always odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPoint")]
pub struct FamilyPoint {
    a: i32,
    b: i32,
}

#[derive(Deserialize)]
struct RawPoint {
    a: i32,
    b: i32,
}

impl TryFrom<RawPoint> for FamilyPoint {
    type Error = DiagramError;
    fn try_from(raw: RawPoint) -> Result<Self, DiagramError> {
        FamilyPoint::new(raw.a, raw.b)
    }
}

impl FamilyPoint {
    pub fn new(a: i32, b: i32) -> Result<Self, DiagramError> {
        if b % 2 == 0 {
            return Err(DiagramError::EvenB(b));
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> i32 {
        self.a
    }

    pub fn b(&self) -> i32 {
        self.b
    }

    pub fn crossing_count(&self) -> usize {
        (self.a.unsigned_abs() + self.b.unsigned_abs()) as usize
    }
}

impl std::fmt::Display for FamilyPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// Corners of a crossing cell, in counterclockwise order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Corner {
    NE = 0,
    NW = 1,
    SW = 2,
    SE = 3,
}

const CCW: [Corner; 4] = [Corner::NE, Corner::NW, Corner::SW, Corner::SE];

/// Which diagonal of the cell passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Over {
    /// The SW-NE diagonal.
    Slash,
    /// The NW-SE diagonal.
    Backslash,
}

struct Cell {
    over: Over,
    /// Both strands run upward through the cell (otherwise both downward).
    upward: bool,
}

impl Cell {
    /// Directed diagonals `(from, to, direction)` as (slash, backslash).
    fn diagonals(&self) -> [(Corner, Corner, (i32, i32)); 2] {
        if self.upward {
            [
                (Corner::SW, Corner::NE, (1, 1)),
                (Corner::SE, Corner::NW, (-1, 1)),
            ]
        } else {
            [
                (Corner::NE, Corner::SW, (-1, -1)),
                (Corner::NW, Corner::SE, (1, -1)),
            ]
        }
    }

    fn is_outgoing(&self, corner: Corner) -> bool {
        self.diagonals().iter().any(|(_, to, _)| *to == corner)
    }

    /// Corner list counterclockwise from the incoming under-strand, and sign.
    fn slots(&self) -> ([Corner; 4], CrossingSign) {
        let [slash, back] = self.diagonals();
        let (over, under) = match self.over {
            Over::Slash => (slash, back),
            Over::Backslash => (back, slash),
        };
        let (o, u) = (over.2, under.2);
        let cross = o.0 * u.1 - o.1 * u.0;
        let sign = if cross > 0 {
            CrossingSign::Positive
        } else {
            CrossingSign::Negative
        };
        let start = under.0 as usize;
        let slots = [0, 1, 2, 3].map(|k| CCW[(start + k) % 4]);
        (slots, sign)
    }
}

/// Generates the oriented diagram of the double-braid link at `pt`.
pub fn double_braid(pt: FamilyPoint) -> PlanarDiagram {
    let (a, b) = (pt.a, pt.b);
    let mut cells = Vec::new();
    // A: positive crossings for a < 0
    let a_over = if a > 0 { Over::Backslash } else { Over::Slash };
    for _ in 0..a.unsigned_abs() {
        cells.push(Cell {
            over: a_over,
            upward: true,
        });
    }
    let b_over = if b > 0 { Over::Slash } else { Over::Backslash };
    let b_start = cells.len();
    for k in 0..b.unsigned_abs() {
        cells.push(Cell {
            over: b_over,
            upward: k % 2 == 0,
        });
    }
    let a_cells: Vec<usize> = (0..b_start).collect();
    let b_cells: Vec<usize> = (b_start..cells.len()).collect();

    let mut edges: Vec<[(usize, Corner); 2]> = Vec::new();
    for w in a_cells.windows(2) {
        edges.push([(w[0], Corner::SW), (w[1], Corner::NW)]);
        edges.push([(w[0], Corner::SE), (w[1], Corner::NE)]);
    }
    for w in b_cells.windows(2) {
        edges.push([(w[0], Corner::NE), (w[1], Corner::NW)]);
        edges.push([(w[0], Corner::SE), (w[1], Corner::SW)]);
    }
    let (b_first, b_last) = (b_cells[0], *b_cells.last().expect("b is odd, so nonzero"));
    let (b_nw, b_sw) = ((b_first, Corner::NW), (b_first, Corner::SW));
    let (b_ne, b_se) = ((b_last, Corner::NE), (b_last, Corner::SE));
    match (a_cells.first(), a_cells.last()) {
        (Some(&top), Some(&bottom)) => {
            edges.push([(top, Corner::NW), b_sw]);
            edges.push([(top, Corner::NE), b_se]);
            edges.push([(bottom, Corner::SW), b_nw]);
            edges.push([(bottom, Corner::SE), b_ne]);
        }
        _ => {
            // a = 0: two uncrossed vertical strands
            edges.push([b_sw, b_nw]);
            edges.push([b_se, b_ne]);
        }
    }

    let mut arc_at = vec![[usize::MAX; 4]; cells.len()];
    for (id, [(c1, k1), (c2, k2)]) in edges.iter().enumerate() {
        let out1 = cells[*c1].is_outgoing(*k1);
        let out2 = cells[*c2].is_outgoing(*k2);
        assert!(out1 != out2, "orientation clash on template edge {id}");
        arc_at[*c1][*k1 as usize] = id;
        arc_at[*c2][*k2 as usize] = id;
    }

    let crossings = cells
        .iter()
        .enumerate()
        .map(|(ci, cell)| {
            let (slots, sign) = cell.slots();
            Crossing {
                arcs: slots.map(|corner| arc_at[ci][corner as usize]),
                sign,
            }
        })
        .collect::<Vec<_>>();

    debug_assert!(crossings[..b_start]
        .iter()
        .all(|c| c.sign.value() == -a.signum()));
    debug_assert!(crossings[b_start..]
        .iter()
        .all(|c| c.sign.value() == b.signum()));

    PlanarDiagram::from_crossings(crossings, 0)
        .expect("template closes up for odd b")
        .canonicalize()
}
