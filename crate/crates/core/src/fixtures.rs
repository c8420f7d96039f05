//! Worked examples with known values, used by the `examples` command and the
//! test suites.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};

use crate::cc_map::rho_table;
use crate::frieze::{build_band, diamond_determinants};
use crate::polygon::Diagonal;
use crate::ptolemy::{decompose, CellKind, PtolemyDiagram};

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub size: u32,
    /// `None` means every diagonal of the polygon.
    pub diagonals: Option<&'static [(u32, u32)]>,
    pub rho: &'static [((u32, u32), u64)],
    /// Every diamond determinant must lie in this set (unchecked if empty).
    pub determinants: &'static [i64],
    /// Expected dissecting diagonals and cells, if checked.
    pub decomposition: Option<ExpectedDecomposition>,
}

#[derive(Debug, Clone)]
pub struct ExpectedDecomposition {
    pub dissecting: &'static [(u32, u32)],
    pub cells: &'static [(&'static [u32], CellKind)],
}

const MIXED_OCTAGON: &[(u32, u32)] = &[(2, 6), (2, 7), (2, 8), (4, 6), (6, 8), (1, 6), (1, 7)];
const SQUARE_CLIQUE_OCTAGON: &[(u32, u32)] = &[(2, 4), (2, 5), (1, 4), (1, 5), (5, 8)];

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "octagon-square-clique",
        size: 8,
        diagonals: Some(SQUARE_CLIQUE_OCTAGON),
        rho: &[
            ((2, 4), 1),
            ((1, 5), 1),
            ((5, 8), 1),
            ((2, 5), 2),
            ((1, 4), 2),
            ((3, 7), 9),
        ],
        determinants: &[],
        decomposition: Some(ExpectedDecomposition {
            dissecting: &[(2, 4), (1, 5), (5, 8)],
            cells: &[
                (&[1, 2, 4, 5], CellKind::Clique),
                (&[1, 5, 8], CellKind::Empty),
                (&[2, 3, 4], CellKind::Empty),
                (&[5, 6, 7, 8], CellKind::Empty),
            ],
        }),
    },
    Fixture {
        name: "octagon-full-clique",
        size: 8,
        diagonals: None,
        rho: &[((2, 7), 15), ((1, 3), 6), ((1, 4), 15), ((1, 5), 20)],
        determinants: &[],
        decomposition: Some(ExpectedDecomposition {
            dissecting: &[],
            cells: &[(&[1, 2, 3, 4, 5, 6, 7, 8], CellKind::Clique)],
        }),
    },
    Fixture {
        name: "octagon-mixed",
        size: 8,
        diagonals: Some(MIXED_OCTAGON),
        rho: &[
            ((4, 6), 1),
            ((2, 4), 1),
            ((2, 8), 3),
            ((6, 8), 3),
            ((4, 8), 6),
            ((5, 8), 9),
        ],
        determinants: &[0, 1, 6],
        decomposition: Some(ExpectedDecomposition {
            dissecting: &[(2, 6), (4, 6)],
            cells: &[
                (&[1, 2, 6, 7, 8], CellKind::Clique),
                (&[2, 3, 4, 6], CellKind::Empty),
                (&[4, 5, 6], CellKind::Empty),
            ],
        }),
    },
    Fixture {
        name: "pentagon-fan",
        size: 5,
        diagonals: Some(&[(1, 3), (1, 4)]),
        rho: &[
            ((1, 3), 1),
            ((1, 4), 1),
            ((2, 4), 2),
            ((2, 5), 3),
            ((3, 5), 2),
        ],
        determinants: &[1],
        decomposition: None,
    },
    Fixture {
        name: "clique-4gon",
        size: 4,
        diagonals: None,
        rho: &[((1, 3), 2), ((2, 4), 2)],
        determinants: &[3],
        decomposition: None,
    },
    Fixture {
        name: "clique-5gon",
        size: 5,
        diagonals: None,
        rho: &[((1, 3), 3), ((2, 5), 3)],
        determinants: &[6],
        decomposition: None,
    },
    Fixture {
        name: "clique-6gon",
        size: 6,
        diagonals: None,
        rho: &[((1, 3), 4), ((1, 4), 6)],
        determinants: &[10, 20],
        decomposition: None,
    },
    Fixture {
        name: "clique-7gon",
        size: 7,
        diagonals: None,
        rho: &[((1, 3), 5), ((1, 4), 10)],
        determinants: &[15, 50],
        decomposition: None,
    },
];

impl Fixture {
    pub fn diagram(&self) -> PtolemyDiagram {
        match self.diagonals {
            Some(pairs) => {
                PtolemyDiagram::from_pairs(self.size, pairs).expect("fixture diagonals are valid")
            }
            None => {
                let size =
                    crate::polygon::PolygonSize::new(self.size).expect("fixture size is valid");
                PtolemyDiagram::full_clique(size)
            }
        }
    }

    /// Runs every check; returns the list of failures (empty on success).
    pub fn check(&self) -> Vec<String> {
        let mut failures = Vec::new();
        let diagram = self.diagram();
        if let Err(e) = diagram.validate() {
            failures.push(format!("not a Ptolemy diagram: {e}"));
            return failures;
        }
        let table = match rho_table(&diagram) {
            Ok(t) => t,
            Err(e) => {
                failures.push(format!("rho table failed: {e}"));
                return failures;
            }
        };
        for &((a, b), expected) in self.rho {
            let d = Diagonal::new(a, b, diagram.size()).expect("fixture diagonal is valid");
            let got = table.get(d).cloned().unwrap_or_default();
            if got != BigUint::from(expected) {
                failures.push(format!("rho({d}) = {got}, expected {expected}"));
            }
        }
        if !self.determinants.is_empty() {
            let allowed: BTreeSet<BigInt> =
                self.determinants.iter().map(|&x| BigInt::from(x)).collect();
            let seen: BTreeSet<BigInt> = diamond_determinants(&build_band(&table))
                .into_iter()
                .map(|r| r.determinant)
                .collect();
            if !seen.is_subset(&allowed) || seen.len() != allowed.len() {
                let mut msg = String::from("determinants");
                for v in &seen {
                    write!(msg, " {v}").unwrap();
                }
                write!(msg, ", expected {:?}", self.determinants).unwrap();
                failures.push(msg);
            }
        }
        if let Some(expected) = &self.decomposition {
            match decompose(&diagram) {
                Ok(dec) => {
                    let dissecting: BTreeSet<Diagonal> = expected
                        .dissecting
                        .iter()
                        .map(|&(a, b)| Diagonal::new(a, b, diagram.size()).expect("valid"))
                        .collect();
                    if dec.dissecting != dissecting {
                        failures.push("dissecting diagonals differ".into());
                    }
                    let cells: Vec<(Vec<u32>, CellKind)> = dec
                        .cells
                        .iter()
                        .map(|c| (c.vertices().to_vec(), c.kind()))
                        .collect();
                    let want: Vec<(Vec<u32>, CellKind)> = expected
                        .cells
                        .iter()
                        .map(|(v, k)| (v.to_vec(), *k))
                        .collect();
                    if cells != want {
                        failures.push(format!("cells {cells:?}, expected {want:?}"));
                    }
                }
                Err(e) => failures.push(format!("decomposition failed: {e}")),
            }
        }
        failures
    }
}
