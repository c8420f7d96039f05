//! Ptolemy diagrams: diagonal sets closed under the crossing rule, and their
//! decomposition into dissecting diagonals and empty or clique cells.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polygon::{crosses, normalize, suspend, Chord, Diagonal, PolygonError, PolygonSize};

/// Largest polygon accepted by [`enumerate`].
pub const MAX_ENUMERATION_SIZE: u32 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error("diagonal {0} is listed more than once")]
    Duplicate(Diagonal),
    #[error("diagonal {diagonal} does not fit a {size}-gon")]
    DoesNotFit {
        diagonal: Diagonal,
        size: PolygonSize,
    },
}

/// Witness that a diagonal set is not closed: `first` and `second` cross but
/// the hull chord `missing` is absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("{first} and {second} cross but {missing} is missing")]
pub struct ClosureViolation {
    pub first: Diagonal,
    pub second: Diagonal,
    pub missing: Diagonal,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("cell {cell:?} contains {present} of its {total} interior diagonals")]
    PartialCell {
        cell: Vec<u32>,
        present: usize,
        total: usize,
    },
    #[error("diagonal {0} is neither dissecting nor inside a clique cell")]
    Unplaced(Diagonal),
    #[error(transparent)]
    NotClosed(#[from] ClosureViolation),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("enumeration is limited to polygons with at most {max} vertices, got {size}")]
    TooLarge { size: u32, max: u32 },
}

/// A polygon together with a set of its diagonals.
///
/// Construction only checks that the diagonals fit the polygon; the closure
/// rule is checked by [`PtolemyDiagram::validate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PtolemyDiagram {
    size: PolygonSize,
    diagonals: BTreeSet<Diagonal>,
}

impl PtolemyDiagram {
    pub fn new(
        size: PolygonSize,
        diagonals: impl IntoIterator<Item = Diagonal>,
    ) -> Result<Self, DiagramError> {
        let mut set = BTreeSet::new();
        for d in diagonals {
            if !d.fits(size) {
                return Err(DiagramError::DoesNotFit { diagonal: d, size });
            }
            if !set.insert(d) {
                return Err(DiagramError::Duplicate(d));
            }
        }
        Ok(Self {
            size,
            diagonals: set,
        })
    }

    /// Builds a diagram from raw vertex pairs, normalizing each.
    pub fn from_pairs(size: u32, pairs: &[(u32, u32)]) -> Result<Self, DiagramError> {
        let size = PolygonSize::new(size)?;
        let diagonals = pairs
            .iter()
            .map(|&(x, y)| Diagonal::new(x, y, size))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(size, diagonals)
    }

    pub fn empty(size: PolygonSize) -> Self {
        Self {
            size,
            diagonals: BTreeSet::new(),
        }
    }

    /// Every diagonal of the polygon.
    pub fn full_clique(size: PolygonSize) -> Self {
        Self {
            size,
            diagonals: size.diagonals().collect(),
        }
    }

    pub fn size(&self) -> PolygonSize {
        self.size
    }

    pub fn diagonals(&self) -> &BTreeSet<Diagonal> {
        &self.diagonals
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.contains(&d)
    }

    /// Diagonals of the diagram crossing `d`, in lexicographic order.
    pub fn crossing(&self, d: Diagonal) -> impl Iterator<Item = Diagonal> + '_ {
        self.diagonals
            .iter()
            .copied()
            .filter(move |&e| crosses(d, e))
    }

    pub fn crosses_any(&self, d: Diagonal) -> bool {
        self.crossing(d).next().is_some()
    }

    /// Checks the Ptolemy rule, returning the lexicographically first
    /// violation.
    pub fn validate(&self) -> Result<(), ClosureViolation> {
        for &first in &self.diagonals {
            for second in self.diagonals.range(first..).copied() {
                if !crosses(first, second) {
                    continue;
                }
                for missing in hull_diagonals(first, second, self.size) {
                    if !self.diagonals.contains(&missing) {
                        return Err(ClosureViolation {
                            first,
                            second,
                            missing,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Rotates every diagonal by `-1`.
    pub fn suspend(&self) -> Self {
        Self {
            size: self.size,
            diagonals: self
                .diagonals
                .iter()
                .map(|&d| suspend(d, self.size))
                .collect(),
        }
    }
}

impl fmt::Display for PtolemyDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} [", self.size)?;
        for (i, d) in self.diagonals.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str("]")
    }
}

/// The four chords `{a_i, b_j}` spanned by two crossing diagonals, keeping
/// only those that are diagonals.
fn hull_diagonals(
    first: Diagonal,
    second: Diagonal,
    size: PolygonSize,
) -> impl Iterator<Item = Diagonal> {
    let mut out = Vec::with_capacity(4);
    for x in first.endpoints() {
        for y in second.endpoints() {
            if let Ok(Chord::Diagonal(d)) = normalize(x, y, size) {
                out.push(d);
            }
        }
    }
    out.into_iter()
}

/// Smallest Ptolemy diagram containing `seed`.
pub fn ptolemy_closure(
    size: PolygonSize,
    seed: impl IntoIterator<Item = Diagonal>,
) -> Result<PtolemyDiagram, DiagramError> {
    let mut set = BTreeSet::new();
    for d in seed {
        if !d.fits(size) {
            return Err(DiagramError::DoesNotFit { diagonal: d, size });
        }
        set.insert(d);
    }
    let mut pending: Vec<Diagonal> = set.iter().copied().collect();
    while let Some(d) = pending.pop() {
        let crossers: Vec<Diagonal> = set.iter().copied().filter(|&e| crosses(d, e)).collect();
        for e in crossers {
            for h in hull_diagonals(d, e, size) {
                if set.insert(h) {
                    pending.push(h);
                }
            }
        }
    }
    Ok(PtolemyDiagram {
        size,
        diagonals: set,
    })
}

/// Bitmask view of the diagonals of one polygon, used by closure and
/// enumeration. Bit `i` is the `i`-th diagonal in lexicographic order.
struct DiagonalIndex {
    size: PolygonSize,
    diagonals: Vec<Diagonal>,
    /// `(both, hull)`: if both bits of `both` are set, `hull` must be too.
    rules: Vec<(u64, u64)>,
}

impl DiagonalIndex {
    fn new(size: PolygonSize) -> Self {
        let diagonals: Vec<Diagonal> = size.diagonals().collect();
        assert!(
            diagonals.len() <= 64,
            "bitmask index supports at most 64 diagonals"
        );
        let position = |d: Diagonal| {
            diagonals
                .binary_search(&d)
                .expect("diagonal of this polygon")
        };
        let mut rules = Vec::new();
        for (i, &d) in diagonals.iter().enumerate() {
            for (j, &e) in diagonals.iter().enumerate().skip(i + 1) {
                if crosses(d, e) {
                    let hull = hull_diagonals(d, e, size).fold(0u64, |m, h| m | 1 << position(h));
                    rules.push((1 << i | 1 << j, hull));
                }
            }
        }
        Self {
            size,
            diagonals,
            rules,
        }
    }

    #[cfg(test)]
    fn mask_of(&self, ds: impl Iterator<Item = Diagonal>) -> u64 {
        ds.fold(0, |m, d| {
            let i = self
                .diagonals
                .binary_search(&d)
                .expect("diagonal of this polygon");
            m | 1 << i
        })
    }

    fn diagonals_of(&self, mask: u64) -> impl Iterator<Item = Diagonal> + '_ {
        self.diagonals
            .iter()
            .enumerate()
            .filter(move |(i, _)| mask >> i & 1 == 1)
            .map(|(_, &d)| d)
    }

    fn close(&self, mut mask: u64) -> u64 {
        loop {
            let before = mask;
            for &(both, hull) in &self.rules {
                if mask & both == both {
                    mask |= hull;
                }
            }
            if mask == before {
                return mask;
            }
        }
    }
}

/// Every Ptolemy diagram of the polygon, each exactly once.
///
/// Closed sets are produced with Ganter's next-closure algorithm, so the
/// order is the lectic order of the diagonal bitmasks and does not depend on
/// anything but `size`.
pub fn enumerate(size: PolygonSize) -> Result<PtolemyDiagrams, EnumerationError> {
    if size.get() > MAX_ENUMERATION_SIZE {
        return Err(EnumerationError::TooLarge {
            size: size.get(),
            max: MAX_ENUMERATION_SIZE,
        });
    }
    let index = DiagonalIndex::new(size);
    let first = index.close(0);
    Ok(PtolemyDiagrams {
        index,
        next: Some(first),
    })
}

/// Iterator returned by [`enumerate`].
pub struct PtolemyDiagrams {
    index: DiagonalIndex,
    next: Option<u64>,
}

impl PtolemyDiagrams {
    fn successor(&self, current: u64) -> Option<u64> {
        let count = self.index.diagonals.len();
        // Bit 0 is the most significant element of the lectic order.
        for i in (0..count).rev() {
            let bit = 1u64 << i;
            if current & bit != 0 {
                continue;
            }
            let prefix = current & (bit - 1);
            let candidate = self.index.close(prefix | bit);
            if candidate & (bit - 1) == prefix {
                return Some(candidate);
            }
        }
        None
    }
}

impl Iterator for PtolemyDiagrams {
    type Item = PtolemyDiagram;

    fn next(&mut self) -> Option<PtolemyDiagram> {
        let current = self.next?;
        self.next = self.successor(current);
        Some(PtolemyDiagram {
            size: self.index.size,
            diagonals: self.index.diagonals_of(current).collect(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CellKind {
    Empty,
    Clique,
}

/// A subpolygon cut out by dissecting diagonals. Vertices are kept in
/// increasing label order, which is also their cyclic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    vertices: Vec<u32>,
    kind: CellKind,
}

impl Cell {
    pub fn new(mut vertices: Vec<u32>, kind: CellKind) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices, kind }
    }

    pub fn vertices(&self) -> &[u32] {
        &self.vertices
    }

    pub fn kind(&self) -> CellKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Numbers of cell vertices strictly on either side of `d`, or `None` if
    /// `d` is not a chord between two non-adjacent cell vertices.
    pub fn side_counts(&self, d: Diagonal) -> Option<(usize, usize)> {
        let i = self.vertices.binary_search(&d.a()).ok()?;
        let j = self.vertices.binary_search(&d.b()).ok()?;
        let inside = j - i - 1;
        let outside = self.vertices.len() - inside - 2;
        (inside > 0 && outside > 0).then_some((inside, outside))
    }

    pub fn has_interior(&self, d: Diagonal) -> bool {
        self.side_counts(d).is_some()
    }

    /// Chords between non-adjacent cell vertices.
    pub fn interior_diagonals(&self) -> impl Iterator<Item = Diagonal> + '_ {
        let w = self.vertices.len();
        (0..w).flat_map(move |i| {
            (i + 2..w)
                .filter(move |&j| !(i == 0 && j == w - 1))
                .map(move |j| Diagonal::from_sorted(self.vertices[i], self.vertices[j]))
        })
    }

    fn split(&self, d: Diagonal) -> (Cell, Cell) {
        let (inner, outer) = self
            .vertices
            .iter()
            .partition(|&&v| d.a() <= v && v <= d.b());
        let mut outer: Vec<u32> = outer;
        outer.extend(d.endpoints());
        (Cell::new(inner, self.kind), Cell::new(outer, self.kind))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.vertices.iter().map(u32::to_string).collect();
        write!(f, "{{{}}} {:?}", labels.join(","), self.kind)
    }
}

/// Dissecting diagonals and the cells they cut out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub dissecting: BTreeSet<Diagonal>,
    pub cells: Vec<Cell>,
}

impl Decomposition {
    /// The cell in which `d` is an interior diagonal, if any.
    pub fn cell_of(&self, d: Diagonal) -> Option<&Cell> {
        self.cells.iter().find(|c| c.has_interior(d))
    }

    pub fn clique_cells(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(|c| c.kind == CellKind::Clique)
    }
}

/// Splits the polygon along its dissecting diagonals and classifies each
/// cell.
pub fn decompose(diagram: &PtolemyDiagram) -> Result<Decomposition, StructureError> {
    diagram.validate()?;
    let dissecting: BTreeSet<Diagonal> = diagram
        .diagonals
        .iter()
        .copied()
        .filter(|&d| !diagram.crosses_any(d))
        .collect();

    let mut cells = vec![Cell::new(
        (1..=diagram.size.get()).collect(),
        CellKind::Empty,
    )];
    for &d in &dissecting {
        let k = cells
            .iter()
            .position(|c| c.has_interior(d))
            .expect("non-crossing dissecting diagonal lies inside exactly one cell");
        let (left, right) = cells.swap_remove(k).split(d);
        cells.push(left);
        cells.push(right);
    }

    for cell in &mut cells {
        let total = cell.interior_diagonals().count();
        let present = cell
            .interior_diagonals()
            .filter(|d| diagram.contains(*d))
            .count();
        cell.kind = if total > 0 && present == total {
            CellKind::Clique
        } else if present == 0 {
            CellKind::Empty
        } else {
            return Err(StructureError::PartialCell {
                cell: cell.vertices.clone(),
                present,
                total,
            });
        };
    }
    cells.sort();

    let decomposition = Decomposition { dissecting, cells };
    for &d in &diagram.diagonals {
        if decomposition.dissecting.contains(&d) {
            continue;
        }
        let in_clique = decomposition
            .clique_cells()
            .filter(|c| c.has_interior(d))
            .count();
        if in_clique != 1 {
            return Err(StructureError::Unplaced(d));
        }
    }
    Ok(decomposition)
}

/// On-disk diagram: `{"N": int, "diagonals": [[a, b], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagramFile {
    #[serde(rename = "N")]
    pub size: u32,
    pub diagonals: Vec<[u32; 2]>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("entry {index} {pair:?}: {source}")]
    Entry {
        index: usize,
        pair: [u32; 2],
        source: DiagramError,
    },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

impl DiagramFile {
    pub fn from_diagram(diagram: &PtolemyDiagram) -> Self {
        Self {
            size: diagram.size.get(),
            diagonals: diagram.diagonals.iter().map(|d| d.endpoints()).collect(),
        }
    }

    pub fn into_diagram(self) -> Result<PtolemyDiagram, ParseError> {
        let size = PolygonSize::new(self.size).map_err(DiagramError::from)?;
        let mut set = BTreeSet::new();
        for (index, pair) in self.diagonals.into_iter().enumerate() {
            let entry = |source: DiagramError| ParseError::Entry {
                index,
                pair,
                source,
            };
            let d = Diagonal::new(pair[0], pair[1], size).map_err(|e| entry(e.into()))?;
            if !set.insert(d) {
                return Err(entry(DiagramError::Duplicate(d)));
            }
        }
        Ok(PtolemyDiagram {
            size,
            diagonals: set,
        })
    }
}

/// Parses the JSON diagram format. Pairs may be unnormalized; duplicates
/// (after normalization) and polygon edges are rejected.
pub fn parse_diagram(json: &str) -> Result<PtolemyDiagram, ParseError> {
    let file: DiagramFile = serde_json::from_str(json).map_err(|e| {
        let full = e.to_string();
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })?;
    file.into_diagram()
}

pub fn diagram_to_json(diagram: &PtolemyDiagram) -> String {
    serde_json::to_string(&DiagramFile::from_diagram(diagram)).expect("plain data serializes")
}
