//! The generalized Caldero–Chapoton map of a Ptolemy diagram.
//!
//! Values are computed by exchange recursion: a diagonal `m` that crosses a
//! dissecting diagonal `r` satisfies
//!
//! ```text
//! rho(m) = rho(a') rho(a'') + rho(b') rho(b'')
//! ```
//!
//! where `a', a'', b', b''` are the sides of the quadrilateral spanned by `m`
//! and `r`, edges counting as 1. Diagonals that stay inside a single cell are
//! the base cases: 1 in an empty cell, a binomial coefficient in a clique.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::polygon::{crosses, normalize, Chord, Diagonal, PolygonSize};
use crate::ptolemy::{decompose, Cell, CellKind, Decomposition, PtolemyDiagram, StructureError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RhoError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("{0} is not a diagonal of a {1}-gon")]
    NotADiagonal(Diagonal, PolygonSize),
    #[error("vertex {anchor} is not an endpoint of {diagonal}")]
    BadAnchor { diagonal: Diagonal, anchor: u32 },
    #[error("{m} and {r} do not cross")]
    NoCrossing { m: Diagonal, r: Diagonal },
    #[error("cell {cell} is not a clique")]
    NotAClique { cell: String },
    #[error("{diagonal} is not an interior diagonal of cell {cell}")]
    NotInterior { diagonal: Diagonal, cell: String },
    #[error("{0} crosses the diagram but lies in an empty cell")]
    Inconsistent(Diagonal),
}

/// Which endpoint of `m` the recursion walks from when it looks for the
/// first crossed dissecting diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Anchor {
    #[default]
    Smaller,
    Larger,
}

impl Anchor {
    fn pick(self, m: Diagonal) -> u32 {
        match self {
            Anchor::Smaller => m.a(),
            Anchor::Larger => m.b(),
        }
    }
}

/// The two opposite-side pairs of the quadrilateral spanned by crossing
/// diagonals `m` and `r`.
///
/// With `r0, r1` and `m0, m1` the smaller and larger endpoints,
/// `pair1 = ({r0,m0}, {r1,m1})` and `pair2 = ({m0,r1}, {m1,r0})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExchangeSplit {
    pub r: Diagonal,
    pub pair1: (Chord, Chord),
    pub pair2: (Chord, Chord),
}

pub fn exchange_split(
    m: Diagonal,
    r: Diagonal,
    size: PolygonSize,
) -> Result<ExchangeSplit, RhoError> {
    if !crosses(m, r) {
        return Err(RhoError::NoCrossing { m, r });
    }
    let side = |x: u32, y: u32| normalize(x, y, size).expect("distinct vertices of the polygon");
    let (m0, m1) = (m.a(), m.b());
    let (r0, r1) = (r.a(), r.b());
    Ok(ExchangeSplit {
        r,
        pair1: (side(r0, m0), side(r1, m1)),
        pair2: (side(m0, r1), side(m1, r0)),
    })
}

/// `binomial(a + b, a)` where `a`, `b` count the cell vertices strictly on
/// either side of `c`.
pub fn clique_rho(cell: &Cell, c: Diagonal) -> Result<BigUint, RhoError> {
    if cell.kind() != CellKind::Clique {
        return Err(RhoError::NotAClique {
            cell: cell.to_string(),
        });
    }
    let (a, b) = cell.side_counts(c).ok_or_else(|| RhoError::NotInterior {
        diagonal: c,
        cell: cell.to_string(),
    })?;
    Ok(binomial(a + b, a.min(b)))
}

/// Multiplicative formula; each partial product is itself a binomial, so the
/// division is exact.
pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    acc
}

/// Among the dissecting diagonals crossed by `m`, the one met first when
/// walking along `m` from `anchor`.
pub fn first_crossed_dissecting(
    m: Diagonal,
    decomposition: &Decomposition,
    anchor: u32,
) -> Result<Option<Diagonal>, RhoError> {
    if !m.has_endpoint(anchor) {
        return Err(RhoError::BadAnchor {
            diagonal: m,
            anchor,
        });
    }
    let crossed: Vec<Diagonal> = decomposition
        .dissecting
        .iter()
        .copied()
        .filter(|&r| crosses(m, r))
        .collect();
    // Dissecting diagonals do not cross each other, so every other crossed
    // diagonal sits entirely on one side of `r`. `r` is first iff none of
    // them sits on the anchor's side.
    let first = crossed.iter().copied().find(|&r| {
        let anchor_side = r.separates(anchor);
        crossed.iter().all(|&t| {
            t == r
                || t.endpoints()
                    .iter()
                    .filter(|&&v| !r.has_endpoint(v))
                    .all(|&v| r.separates(v) != anchor_side)
        })
    });
    Ok(first)
}

/// Product of `rho` over a direct sum; edges are the zero object and
/// contribute 1.
pub fn rho_sum(parts: &[Chord], mut rho: impl FnMut(Diagonal) -> BigUint) -> BigUint {
    parts
        .iter()
        .filter_map(|c| c.diagonal())
        .fold(BigUint::one(), |acc, d| acc * rho(d))
}

/// Memoized evaluator for one diagram.
pub struct CcMap<'a> {
    diagram: &'a PtolemyDiagram,
    decomposition: Decomposition,
    anchor: Anchor,
    memo: HashMap<Diagonal, BigUint>,
}

impl<'a> CcMap<'a> {
    pub fn new(diagram: &'a PtolemyDiagram) -> Result<Self, RhoError> {
        Self::with_anchor(diagram, Anchor::default())
    }

    pub fn with_anchor(diagram: &'a PtolemyDiagram, anchor: Anchor) -> Result<Self, RhoError> {
        let decomposition = decompose(diagram)?;
        Ok(Self {
            diagram,
            decomposition,
            anchor,
            memo: HashMap::new(),
        })
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn diagram(&self) -> &PtolemyDiagram {
        self.diagram
    }

    pub fn rho(&mut self, m: Diagonal) -> Result<BigUint, RhoError> {
        let size = self.diagram.size();
        if !m.fits(size) {
            return Err(RhoError::NotADiagonal(m, size));
        }
        self.eval(m)
    }

    /// `rho` of a chord; edges give 1.
    pub fn rho_chord(&mut self, c: Chord) -> Result<BigUint, RhoError> {
        match c {
            Chord::Edge(..) => Ok(BigUint::one()),
            Chord::Diagonal(d) => self.rho(d),
        }
    }

    fn eval(&mut self, m: Diagonal) -> Result<BigUint, RhoError> {
        if let Some(v) = self.memo.get(&m) {
            return Ok(v.clone());
        }
        let value = if !self.diagram.crosses_any(m) {
            BigUint::one()
        } else {
            let anchor = self.anchor.pick(m);
            match first_crossed_dissecting(m, &self.decomposition, anchor)? {
                Some(r) => {
                    let split = exchange_split(m, r, self.diagram.size())?;
                    let (p, q) = split.pair1;
                    let (s, t) = split.pair2;
                    let first = self.product(&[p, q])?;
                    let second = self.product(&[s, t])?;
                    first + second
                }
                None => {
                    let cell = self
                        .decomposition
                        .cell_of(m)
                        .ok_or(RhoError::Inconsistent(m))?;
                    if cell.kind() == CellKind::Empty {
                        return Err(RhoError::Inconsistent(m));
                    }
                    clique_rho(cell, m)?
                }
            }
        };
        self.memo.insert(m, value.clone());
        Ok(value)
    }

    fn product(&mut self, parts: &[Chord]) -> Result<BigUint, RhoError> {
        // evaluate first so rho_sum's closure stays infallible
        let mut values = HashMap::new();
        for d in parts.iter().filter_map(|c| c.diagonal()) {
            values.insert(d, self.eval(d)?);
        }
        Ok(rho_sum(parts, |d| values[&d].clone()))
    }

    pub fn table(&mut self) -> Result<RhoTable, RhoError> {
        let size = self.diagram.size();
        let mut values = BTreeMap::new();
        for d in size.diagonals() {
            values.insert(d, self.eval(d)?);
        }
        Ok(RhoTable { size, values })
    }
}

/// `rho(m)` for a single diagonal.
pub fn rho(m: Diagonal, diagram: &PtolemyDiagram) -> Result<BigUint, RhoError> {
    CcMap::new(diagram)?.rho(m)
}

/// `rho` of every diagonal of the polygon.
pub fn rho_table(diagram: &PtolemyDiagram) -> Result<RhoTable, RhoError> {
    CcMap::new(diagram)?.table()
}

/// Values of `rho` on every diagonal of an `N`-gon, keyed in lexicographic
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoTable {
    size: PolygonSize,
    values: BTreeMap<Diagonal, BigUint>,
}

impl RhoTable {
    pub fn size(&self) -> PolygonSize {
        self.size
    }

    pub fn get(&self, d: Diagonal) -> Option<&BigUint> {
        self.values.get(&d)
    }

    /// Edges are 1.
    pub fn chord(&self, c: Chord) -> BigUint {
        match c {
            Chord::Edge(..) => BigUint::one(),
            Chord::Diagonal(d) => self.values[&d].clone(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (Diagonal, &BigUint)> {
        self.values.iter().map(|(&d, v)| (d, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for RhoTable {
    /// One `a,b value` line per diagonal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, v) in &self.values {
            writeln!(f, "{},{} {}", d.a(), d.b(), v)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ptolemy::enumerate;

    fn size(n: u32) -> PolygonSize {
        PolygonSize::new(n).unwrap()
    }

    fn d(a: u32, b: u32) -> Diagonal {
        Diagonal::new(a, b, size(12)).unwrap()
    }

    fn final_example() -> PtolemyDiagram {
        PtolemyDiagram::from_pairs(8, &[(2, 6), (2, 7), (2, 8), (4, 6), (6, 8), (1, 6), (1, 7)])
            .unwrap()
    }

    fn example_two() -> PtolemyDiagram {
        PtolemyDiagram::from_pairs(8, &[(2, 4), (2, 5), (1, 4), (1, 5), (5, 8)]).unwrap()
    }

    fn n(v: u32) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn clique_rho_examples() {
        let octagon = Cell::new((1..=8).collect(), CellKind::Clique);
        assert_eq!(clique_rho(&octagon, d(2, 7)).unwrap(), n(15));
        let five = Cell::new(vec![6, 7, 8, 1, 2], CellKind::Clique);
        assert_eq!(clique_rho(&five, d(2, 8)).unwrap(), n(3));
        assert_eq!(clique_rho(&five, d(6, 8)).unwrap(), n(3));
        let four = Cell::new(vec![1, 2, 4, 5], CellKind::Clique);
        assert_eq!(clique_rho(&four, d(2, 5)).unwrap(), n(2));
    }

    #[test]
    fn clique_rho_errors() {
        let four = Cell::new(vec![1, 2, 4, 5], CellKind::Clique);
        assert!(matches!(
            clique_rho(&four, d(2, 4)),
            Err(RhoError::NotInterior { .. })
        ));
        assert!(matches!(
            clique_rho(&four, d(3, 5)),
            Err(RhoError::NotInterior { .. })
        ));
        let empty = Cell::new(vec![1, 2, 4, 5], CellKind::Empty);
        assert!(matches!(
            clique_rho(&empty, d(2, 5)),
            Err(RhoError::NotAClique { .. })
        ));
    }

    #[test]
    fn clique_rho_follows_pascal_rows() {
        // fan of diagonals from vertex 1 in a w-gon clique
        for w in 4..=12u32 {
            let cell = Cell::new((1..=w).collect(), CellKind::Clique);
            let row: Vec<BigUint> = (3..w)
                .map(|b| clique_rho(&cell, d(1, b)).unwrap())
                .collect();
            let total: BigUint = row.iter().sum();
            // full row of binomial(w-2, k) sums to 2^(w-2); the fan skips k = 0 and k = w-2
            assert_eq!(total + n(2), BigUint::one() << (w - 2));
            for (k, v) in row.iter().enumerate() {
                assert_eq!(v, &binomial(w as usize - 2, k + 1));
            }
        }
    }

    #[test]
    fn first_crossed_examples() {
        let dec = decompose(&example_two()).unwrap();
        assert_eq!(
            first_crossed_dissecting(d(3, 7), &dec, 3).unwrap(),
            Some(d(2, 4))
        );
        assert_eq!(
            first_crossed_dissecting(d(3, 7), &dec, 7).unwrap(),
            Some(d(5, 8))
        );
        assert_eq!(first_crossed_dissecting(d(2, 5), &dec, 2).unwrap(), None);
        assert!(matches!(
            first_crossed_dissecting(d(3, 7), &dec, 4),
            Err(RhoError::BadAnchor { .. })
        ));

        let dec = decompose(&final_example()).unwrap();
        assert_eq!(
            first_crossed_dissecting(d(5, 8), &dec, 5).unwrap(),
            Some(d(4, 6))
        );
        assert_eq!(
            first_crossed_dissecting(d(4, 8), &dec, 4).unwrap(),
            Some(d(2, 6))
        );
    }

    #[test]
    fn exchange_split_examples() {
        let split = exchange_split(d(3, 7), d(2, 4), size(8)).unwrap();
        assert_eq!(split.pair1, (Chord::Edge(2, 3), Chord::Diagonal(d(4, 7))));
        assert_eq!(split.pair2, (Chord::Edge(3, 4), Chord::Diagonal(d(2, 7))));

        let split = exchange_split(d(5, 8), d(4, 6), size(8)).unwrap();
        assert_eq!(split.pair1, (Chord::Edge(4, 5), Chord::Diagonal(d(6, 8))));
        assert_eq!(split.pair2, (Chord::Edge(5, 6), Chord::Diagonal(d(4, 8))));

        let split = exchange_split(d(1, 3), d(2, 6), size(6)).unwrap();
        assert_eq!(split.pair1, (Chord::Edge(1, 2), Chord::Diagonal(d(3, 6))));
        assert_eq!(split.pair2, (Chord::Edge(1, 6), Chord::Edge(2, 3)));

        assert!(matches!(
            exchange_split(d(2, 4), d(1, 5), size(8)),
            Err(RhoError::NoCrossing { .. })
        ));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(d(5, 8), &final_example()).unwrap(), n(9));
        assert_eq!(rho(d(4, 8), &final_example()).unwrap(), n(6));
        let full = PtolemyDiagram::full_clique(size(8));
        assert_eq!(rho(d(2, 7), &full).unwrap(), n(15));
        assert_eq!(rho(d(2, 4), &example_two()).unwrap(), n(1));
        let too_big = Diagonal::new(2, 9, size(9)).unwrap();
        assert!(matches!(
            rho(too_big, &full),
            Err(RhoError::NotADiagonal(..))
        ));
    }

    #[test]
    fn rho_table_examples() {
        let table = rho_table(&example_two()).unwrap();
        assert_eq!(table.len(), 20);
        assert_eq!(table.get(d(2, 5)), Some(&n(2)));
        assert_eq!(table.get(d(1, 4)), Some(&n(2)));

        for k in 4..=10 {
            let table = rho_table(&PtolemyDiagram::empty(size(k))).unwrap();
            assert!(table.iter().all(|(_, v)| v == &n(1)));
        }

        // frozen from an independent brute-force enumeration of subfunctor supports
        let expected = [
            ((1, 3), 4),
            ((1, 4), 4),
            ((1, 5), 7),
            ((1, 6), 3),
            ((1, 7), 3),
            ((2, 4), 1),
            ((2, 5), 2),
            ((2, 6), 1),
            ((2, 7), 3),
            ((2, 8), 3),
            ((3, 5), 2),
            ((3, 6), 1),
            ((3, 7), 4),
            ((3, 8), 6),
            ((4, 6), 1),
            ((4, 7), 4),
            ((4, 8), 6),
            ((5, 7), 5),
            ((5, 8), 9),
            ((6, 8), 3),
        ];
        let table = rho_table(&final_example()).unwrap();
        for ((a, b), v) in expected {
            assert_eq!(table.get(d(a, b)), Some(&n(v)), "{{{a},{b}}}");
        }
    }

    #[test]
    fn rho_sum_examples() {
        let table = rho_table(&final_example()).unwrap();
        let lookup = |x: Diagonal| table.get(x).unwrap().clone();
        let parts = [Chord::Diagonal(d(6, 8)), Chord::Edge(4, 5)];
        assert_eq!(rho_sum(&parts, lookup), n(3));
        assert_eq!(rho_sum(&[], lookup), n(1));
        let parts = [Chord::Diagonal(d(2, 8)), Chord::Diagonal(d(6, 8))];
        assert_eq!(rho_sum(&parts, lookup), n(9));
    }

    #[test]
    fn anchor_does_not_change_values() {
        for k in 4..=7 {
            for p in enumerate(size(k)).unwrap() {
                let low = CcMap::with_anchor(&p, Anchor::Smaller)
                    .unwrap()
                    .table()
                    .unwrap();
                let high = CcMap::with_anchor(&p, Anchor::Larger)
                    .unwrap()
                    .table()
                    .unwrap();
                assert_eq!(low, high, "{p}");
            }
        }
    }

    #[test]
    fn rho_is_one_exactly_off_the_diagram() {
        for k in 4..=7 {
            for p in enumerate(size(k)).unwrap() {
                let table = rho_table(&p).unwrap();
                for (m, v) in table.iter() {
                    assert_eq!(v == &n(1), !p.crosses_any(m), "{p} {m}");
                }
            }
        }
    }

    #[test]
    fn large_clique_uses_big_integers() {
        let big = size(70);
        let full = PtolemyDiagram::full_clique(big);
        let m = Diagonal::new(1, 36, big).unwrap();
        let v = CcMap::new(&full).unwrap().rho(m).unwrap();
        // binomial(68, 34)
        assert_eq!(v.to_string(), "28453041475240576740");
        assert!(v > BigUint::from(u64::MAX));
    }
}
