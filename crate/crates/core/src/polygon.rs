//! Vertex arithmetic on a labelled polygon.
//!
//! Vertices are labelled `1..=N` and "anticlockwise" means increasing label,
//! wrapping from `N` back to `1`. A chord between two distinct vertices is
//! either a polygon edge or a [`Diagonal`]; the latter is stored in
//! normalized form `a < b`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("a polygon needs at least 4 vertices, got {0}")]
    TooFewVertices(u32),
    #[error("vertex {vertex} is outside 1..={size}")]
    VertexOutOfRange { vertex: u32, size: u32 },
    #[error("chord endpoints must be distinct, got {0} twice")]
    EqualEndpoints(u32),
    #[error("{{{0},{1}}} is a polygon edge, not a diagonal")]
    NotADiagonal(u32, u32),
}

/// Number of vertices of the polygon (`n + 3` for type `A_n`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolygonSize(u32);

impl PolygonSize {
    pub fn new(vertices: u32) -> Result<Self, PolygonError> {
        if vertices < 4 {
            return Err(PolygonError::TooFewVertices(vertices));
        }
        Ok(Self(vertices))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// `N(N-3)/2`.
    pub fn diagonal_count(self) -> usize {
        let n = self.0 as usize;
        n * (n - 3) / 2
    }

    /// Reduces any integer to a label in `1..=N`.
    pub fn wrap(self, label: i64) -> u32 {
        let n = i64::from(self.0);
        ((label - 1).rem_euclid(n) + 1) as u32
    }

    fn check_vertex(self, vertex: u32) -> Result<(), PolygonError> {
        if vertex == 0 || vertex > self.0 {
            return Err(PolygonError::VertexOutOfRange {
                vertex,
                size: self.0,
            });
        }
        Ok(())
    }

    /// All diagonals in lexicographic order of `(a, b)`.
    pub fn diagonals(self) -> impl Iterator<Item = Diagonal> {
        let n = self.0;
        (1..=n).flat_map(move |a| {
            (a + 2..=n)
                .filter(move |&b| !(a == 1 && b == n))
                .map(move |b| Diagonal { a, b })
        })
    }
}

impl fmt::Display for PolygonSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A normalized diagonal `{a, b}` with `a < b`.
///
/// The polygon size is not stored; a `Diagonal` is only meaningful next to
/// the [`PolygonSize`] it was built against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    a: u32,
    b: u32,
}

impl Diagonal {
    pub fn new(x: u32, y: u32, size: PolygonSize) -> Result<Self, PolygonError> {
        match normalize(x, y, size)? {
            Chord::Diagonal(d) => Ok(d),
            Chord::Edge(a, b) => Err(PolygonError::NotADiagonal(a, b)),
        }
    }

    /// Caller guarantees `a + 1 < b` and that `{a, b}` is not `{1, N}`.
    pub(crate) fn from_sorted(a: u32, b: u32) -> Self {
        debug_assert!(a + 1 < b);
        Self { a, b }
    }

    /// Smaller endpoint.
    pub fn a(self) -> u32 {
        self.a
    }

    /// Larger endpoint.
    pub fn b(self) -> u32 {
        self.b
    }

    pub fn endpoints(self) -> [u32; 2] {
        [self.a, self.b]
    }

    pub fn has_endpoint(self, vertex: u32) -> bool {
        self.a == vertex || self.b == vertex
    }

    pub fn shares_endpoint(self, other: Diagonal) -> bool {
        self.has_endpoint(other.a) || self.has_endpoint(other.b)
    }

    /// True if `vertex` lies strictly between `a` and `b` in label order.
    pub fn separates(self, vertex: u32) -> bool {
        self.a < vertex && vertex < self.b
    }

    /// Whether this diagonal is a valid diagonal of a polygon of `size`.
    pub fn fits(self, size: PolygonSize) -> bool {
        self.b <= size.get() && !(self.a == 1 && self.b == size.get())
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

/// Either side of a normalization: a polygon edge (the zero object) or a
/// proper diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chord {
    /// Normalized endpoints of an edge, smaller label first.
    Edge(u32, u32),
    Diagonal(Diagonal),
}

impl Chord {
    pub fn diagonal(self) -> Option<Diagonal> {
        match self {
            Chord::Diagonal(d) => Some(d),
            Chord::Edge(..) => None,
        }
    }

    pub fn is_edge(self) -> bool {
        matches!(self, Chord::Edge(..))
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Chord::Edge(a, b) => write!(f, "{{{a},{b}}}=edge"),
            Chord::Diagonal(d) => d.fmt(f),
        }
    }
}

/// Normalizes an unordered pair of distinct vertices.
pub fn normalize(x: u32, y: u32, size: PolygonSize) -> Result<Chord, PolygonError> {
    size.check_vertex(x)?;
    size.check_vertex(y)?;
    if x == y {
        return Err(PolygonError::EqualEndpoints(x));
    }
    let (a, b) = if x < y { (x, y) } else { (y, x) };
    let gap = b - a;
    if gap == 1 || gap == size.get() - 1 {
        Ok(Chord::Edge(a, b))
    } else {
        Ok(Chord::Diagonal(Diagonal { a, b }))
    }
}

/// Two diagonals cross iff exactly one endpoint of `second` lies strictly
/// inside the label interval of `first`. Diagonals sharing an endpoint never
/// cross.
pub fn crosses(first: Diagonal, second: Diagonal) -> bool {
    if first.shares_endpoint(second) {
        return false;
    }
    first.separates(second.a) != first.separates(second.b)
}

/// Rotates both endpoints by `-1`.
pub fn suspend(d: Diagonal, size: PolygonSize) -> Diagonal {
    let x = size.wrap(i64::from(d.a) - 1);
    let y = size.wrap(i64::from(d.b) - 1);
    // rotation preserves the edge/diagonal distinction
    Diagonal::new(x, y, size).expect("rotation of a diagonal is a diagonal")
}

/// Anticlockwise arc from `from` to `to`, endpoints excluded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: u32,
    pub to: u32,
}

impl Arc {
    pub fn new(from: u32, to: u32) -> Self {
        Self { from, to }
    }

    /// Offsets are measured anticlockwise from `from`.
    pub fn contains(self, vertex: u32, size: PolygonSize) -> bool {
        let n = size.get();
        let offset = |v: u32| (v + n - self.from) % n;
        let x = offset(vertex);
        x != 0 && x < offset(self.to)
    }
}

/// Walks anticlockwise one full turn from `sequence[0]` and checks the labels
/// are met in the listed order. Consecutive labels may coincide unless their
/// pair index (`i` for the pair `sequence[i], sequence[i + 1]`) is listed in
/// `strict`.
pub fn cyclic_weakly_ordered(sequence: &[u32], size: PolygonSize, strict: &[usize]) -> bool {
    let Some(&start) = sequence.first() else {
        return true;
    };
    let n = size.get();
    let offsets: Vec<u32> = sequence
        .iter()
        .map(|&v| (v % n + n - start % n) % n)
        .collect();
    offsets.windows(2).enumerate().all(|(i, w)| {
        if strict.contains(&i) {
            w[0] < w[1]
        } else {
            w[0] <= w[1]
        }
    })
}
