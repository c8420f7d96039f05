//! Independent recomputation of `rho` by counting subfunctor supports.
//!
//! For a probe diagonal `c`, the support is the set of diagram diagonals
//! crossing `c`. A subfunctor is determined by a subset of the support that
//! is closed under precomposition: if `r` is in the subset and some
//! `s -> r -> Σc` has nonzero composite, then `s` is in the subset too. The
//! number of such subsets is `rho(c)`.
//!
//! Nothing here calls into the exchange recursion, so agreement between the
//! two is a genuine cross-check.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

use crate::polygon::{crosses, cyclic_weakly_ordered, Diagonal, PolygonSize};
use crate::ptolemy::PtolemyDiagram;

/// Largest support [`count_subfunctors`] will enumerate subsets of.
pub const MAX_SUPPORT: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{member} does not cross the probe {probe}")]
    NotInSupport { member: Diagonal, probe: Diagonal },
    #[error("support of {probe} has {len} members, above the limit of {max}")]
    SupportTooLarge {
        probe: Diagonal,
        len: usize,
        max: usize,
    },
    #[error("need 0 < k < n, got n = {n}, k = {k}")]
    NarayanaRange { n: u64, k: u64 },
}

/// Diagram diagonals crossing the probe `c`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    pub probe: Diagonal,
    pub members: Vec<Diagonal>,
}

pub fn support(c: Diagonal, diagram: &PtolemyDiagram) -> SupportSet {
    SupportSet {
        probe: c,
        members: diagram.crossing(c).collect(),
    }
}

/// Whether there are morphisms `s -> r -> Σc` with nonzero composite.
///
/// Tests every labelling of the three diagonals' endpoints against the
/// cyclic chain
///
/// ```text
/// s0 <= r0 <= c0-1 <= s1-2 <= s1 <= r1 <= c1-1 <= s0-2
/// ```
///
/// read anticlockwise around the polygon.
pub fn composite_nonzero(
    s: Diagonal,
    r: Diagonal,
    c: Diagonal,
    size: PolygonSize,
) -> Result<bool, OracleError> {
    for member in [s, r] {
        if !crosses(member, c) {
            return Err(OracleError::NotInSupport { member, probe: c });
        }
    }
    let back = |v: u32, k: i64| size.wrap(i64::from(v) - k);
    let flips = |d: Diagonal| [(d.a(), d.b()), (d.b(), d.a())];
    for (s0, s1) in flips(s) {
        for (r0, r1) in flips(r) {
            for (c0, c1) in flips(c) {
                let chain = [
                    s0,
                    r0,
                    back(c0, 1),
                    back(s1, 2),
                    s1,
                    r1,
                    back(c1, 1),
                    back(s0, 2),
                ];
                if cyclic_weakly_ordered(&chain, size, &[]) {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// The nonzero-composite relation on a support, as predecessor bitmasks:
/// bit `i` of `below[j]` is set iff `composite_nonzero(members[i], members[j])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositeRelation {
    pub support: SupportSet,
    pub below: Vec<u32>,
}

impl CompositeRelation {
    pub fn new(support: SupportSet, size: PolygonSize) -> Result<Self, OracleError> {
        let len = support.members.len();
        if len > MAX_SUPPORT {
            return Err(OracleError::SupportTooLarge {
                probe: support.probe,
                len,
                max: MAX_SUPPORT,
            });
        }
        let mut below = vec![0u32; len];
        for (j, &r) in support.members.iter().enumerate() {
            for (i, &s) in support.members.iter().enumerate() {
                if composite_nonzero(s, r, support.probe, size)? {
                    below[j] |= 1 << i;
                }
            }
        }
        Ok(Self { support, below })
    }

    pub fn related(&self, s: usize, r: usize) -> bool {
        self.below[r] >> s & 1 == 1
    }

    pub fn is_closed(&self, subset: u32) -> bool {
        self.below
            .iter()
            .enumerate()
            .all(|(j, &b)| subset >> j & 1 == 0 || subset & b == b)
    }

    /// Number of closed subsets, including the empty set and the whole
    /// support. Plain enumeration over all `2^len` subsets.
    pub fn count_closed(&self) -> u64 {
        let len = self.below.len();
        (0u32..1 << len).filter(|&m| self.is_closed(m)).count() as u64
    }
}

/// Number of subfunctors of `Hom(-, Σc)` restricted to the diagram.
pub fn count_subfunctors(c: Diagonal, diagram: &PtolemyDiagram) -> Result<BigUint, OracleError> {
    let relation = CompositeRelation::new(support(c, diagram), diagram.size())?;
    Ok(BigUint::from(relation.count_closed()))
}

/// Rectangle in which staircase upper edges are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StaircaseRectangle {
    pub a: usize,
    pub b: usize,
}

/// Number of down/right lattice paths across an `a` by `b` rectangle,
/// counted cell by cell.
pub fn staircase_count(rect: StaircaseRectangle) -> BigUint {
    let mut row = vec![BigUint::one(); rect.b + 1];
    for _ in 0..rect.a {
        for j in 1..=rect.b {
            let left = row[j - 1].clone();
            row[j] += left;
        }
    }
    row.pop().unwrap_or_else(BigUint::one)
}

fn next_pascal_row(row: &[BigInt]) -> Vec<BigInt> {
    let mut next = vec![BigInt::one(); row.len() + 1];
    for j in 1..row.len() {
        next[j] = &row[j - 1] + &row[j];
    }
    next
}

fn pascal_row(n: u64) -> Vec<BigInt> {
    (0..n).fold(vec![BigInt::one()], |row, _| next_pascal_row(&row))
}

fn choose(row: &[BigInt], k: i64) -> BigInt {
    usize::try_from(k)
        .ok()
        .and_then(|k| row.get(k).cloned())
        .unwrap_or_else(BigInt::zero)
}

/// Checks `C(n,k) C(n+1,k) / (k+1) = C(n,k)^2 - C(n,k-1) C(n,k+1)` exactly
/// (cross-multiplied by `k + 1`).
pub fn narayana_identity_check(n: u64, k: u64) -> Result<bool, OracleError> {
    if !(0 < k && k < n) {
        return Err(OracleError::NarayanaRange { n, k });
    }
    let row = pascal_row(n);
    let next = next_pascal_row(&row);
    let k = k as i64;
    let lhs = choose(&row, k) * choose(&next, k);
    let rhs = choose(&row, k).pow(2) - choose(&row, k - 1) * choose(&row, k + 1);
    Ok(lhs == rhs * BigInt::from(k + 1))
}

/// `C(n,k) C(n+1,k) / (k+1)`; `None` if `k + 1` does not divide exactly.
pub fn narayana(n: u64, k: u64) -> Option<BigUint> {
    let row = pascal_row(n);
    let next = next_pascal_row(&row);
    let product = choose(&row, k as i64) * choose(&next, k as i64);
    let divisor = BigInt::from(k + 1);
    (&product % &divisor)
        .is_zero()
        .then(|| (product / divisor).to_biguint())?
}
