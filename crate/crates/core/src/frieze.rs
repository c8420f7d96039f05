//! Frieze bands: `rho` values laid out on the translation quiver, with the
//! determinant of every diamond.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde_json::{Number, Value};
use thiserror::Error;

use crate::cc_map::RhoTable;
use crate::polygon::{normalize, Chord, PolygonSize};

/// Periodic grid of `rho` values. `entry(i, w)` is `rho({i, i + w})`, with
/// the edge rows `w = 1` and `w = N - 1` equal to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriezeBand {
    size: PolygonSize,
    /// `rows[w - 1][i - 1]` for `w` in `1..N`, `i` in `1..=N`.
    rows: Vec<Vec<BigUint>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiamondReport {
    pub i: u32,
    pub w: u32,
    pub determinant: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Error)]
pub enum FriezeError {
    #[error("malformed frieze JSON: {0}")]
    Json(String),
}

impl FriezeBand {
    pub fn size(&self) -> PolygonSize {
        self.size
    }

    /// Any integer `i` is accepted and reduced mod `N`; `w` must be in
    /// `1..N`.
    pub fn entry(&self, i: i64, w: u32) -> &BigUint {
        let n = self.size.get();
        assert!((1..n).contains(&w), "width {w} outside 1..{n}");
        let i = self.size.wrap(i);
        &self.rows[(w - 1) as usize][(i - 1) as usize]
    }

    /// Row `w`, indexed by start vertex `1..=N`.
    pub fn row(&self, w: u32) -> &[BigUint] {
        &self.rows[(w - 1) as usize]
    }

    /// `ad - bc` for the diamond with left `{i,i+w}`, top `{i,i+w+1}`,
    /// bottom `{i+1,i+w}` and right `{i+1,i+w+1}`.
    pub fn determinant(&self, i: i64, w: u32) -> BigInt {
        let a = BigInt::from(self.entry(i, w).clone());
        let d = BigInt::from(self.entry(i + 1, w).clone());
        let b = BigInt::from(self.entry(i, w + 1).clone());
        let c = BigInt::from(self.entry(i + 1, w - 1).clone());
        a * d - b * c
    }

    /// Entries keyed by `(i, w)` over one period.
    pub fn entries(&self) -> BTreeMap<(u32, u32), BigUint> {
        let n = self.size.get();
        let mut map = BTreeMap::new();
        for w in 1..n {
            for i in 1..=n {
                map.insert((i, w), self.entry(i64::from(i), w).clone());
            }
        }
        map
    }

    /// Rebuilds a band from the `rows` of its JSON rendering.
    pub fn from_json(json: &str) -> Result<Self, FriezeError> {
        let bad = |m: &str| FriezeError::Json(m.to_string());
        let value: Value =
            serde_json::from_str(json).map_err(|e| FriezeError::Json(e.to_string()))?;
        let n = value["N"].as_u64().ok_or_else(|| bad("missing N"))? as u32;
        let size = PolygonSize::new(n).map_err(|e| FriezeError::Json(e.to_string()))?;
        let rows = value["rows"]
            .as_array()
            .ok_or_else(|| bad("missing rows"))?;
        if rows.len() != (n - 1) as usize {
            return Err(bad("expected N - 1 rows"));
        }
        let mut out = Vec::with_capacity(rows.len());
        for row in rows {
            let cells = row.as_array().ok_or_else(|| bad("row is not an array"))?;
            if cells.len() < n as usize {
                return Err(bad("row shorter than one period"));
            }
            let parsed = cells[..n as usize]
                .iter()
                .map(|v| match v {
                    Value::Number(x) => x
                        .to_string()
                        .parse::<BigUint>()
                        .map_err(|_| bad("bad entry")),
                    _ => Err(bad("entry is not a number")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            out.push(parsed);
        }
        Ok(Self { size, rows: out })
    }
}

pub fn build_band(table: &RhoTable) -> FriezeBand {
    let size = table.size();
    let n = size.get();
    let rows = (1..n)
        .map(|w| {
            (1..=n)
                .map(|i| {
                    let j = size.wrap(i64::from(i + w));
                    match normalize(i, j, size).expect("distinct vertices") {
                        Chord::Edge(..) => BigUint::one(),
                        c => table.chord(c),
                    }
                })
                .collect()
        })
        .collect();
    FriezeBand { size, rows }
}

/// One report per `(i, w)` with `i` in `1..=N` and `w` in `2..=N-2`, ordered
/// by `i` then `w`.
pub fn diamond_determinants(band: &FriezeBand) -> Vec<DiamondReport> {
    let n = band.size.get();
    (1..=n)
        .flat_map(|i| (2..n - 1).map(move |w| (i, w)))
        .map(|(i, w)| DiamondReport {
            i,
            w,
            determinant: band.determinant(i64::from(i), w),
        })
        .collect()
}

pub fn render(band: &FriezeBand, format: Format, periods: u32) -> String {
    let periods = periods.max(1);
    match format {
        Format::Text => render_text(band, periods),
        Format::Json => render_json(band, periods),
        Format::Csv => render_csv(band, periods),
    }
}

/// Rows top to bottom from `w = N - 1` down to `w = 1`. Entry `(i, w)` sits
/// at half-column `2i + w`; odd rows are shifted half a column so the block
/// stays rectangular.
fn render_text(band: &FriezeBand, periods: u32) -> String {
    let n = band.size.get();
    let width = band
        .rows
        .iter()
        .flatten()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    let half = (width + 1).div_ceil(2);
    let gap = " ".repeat(2 * half - width);
    let mut out = String::new();
    for w in (1..n).rev() {
        let start = 1 - i64::from(w / 2);
        let mut line = " ".repeat(if w % 2 == 1 { half } else { 0 });
        let cells: Vec<String> = (0..i64::from(periods * n))
            .map(|k| format!("{:>width$}", band.entry(start + k, w).to_string()))
            .collect();
        line.push_str(&cells.join(&gap));
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn number(v: &BigUint) -> Value {
    Value::Number(
        v.to_string()
            .parse::<Number>()
            .expect("decimal digits parse as a JSON number"),
    )
}

fn signed(v: &BigInt) -> Value {
    Value::Number(
        v.to_string()
            .parse::<Number>()
            .expect("decimal digits parse as a JSON number"),
    )
}

fn render_json(band: &FriezeBand, periods: u32) -> String {
    let n = band.size.get();
    let rows: Vec<Value> = (1..n)
        .map(|w| {
            Value::Array(
                (1..=i64::from(periods * n))
                    .map(|i| number(band.entry(i, w)))
                    .collect(),
            )
        })
        .collect();
    let determinants: Vec<Value> = diamond_determinants(band)
        .iter()
        .map(|r| {
            let mut obj = serde_json::Map::new();
            obj.insert("i".into(), Value::from(r.i));
            obj.insert("w".into(), Value::from(r.w));
            obj.insert("determinant".into(), signed(&r.determinant));
            Value::Object(obj)
        })
        .collect();
    let mut root = serde_json::Map::new();
    root.insert("N".into(), Value::from(n));
    root.insert("rows".into(), Value::Array(rows));
    root.insert("determinants".into(), Value::Array(determinants));
    let mut s = serde_json::to_string(&Value::Object(root)).expect("JSON values serialize");
    s.push('\n');
    s
}

fn render_csv(band: &FriezeBand, periods: u32) -> String {
    let n = band.size.get();
    let mut out = String::from("i,w,value\n");
    for i in 1..=periods * n {
        for w in 1..n {
            writeln!(out, "{i},{w},{}", band.entry(i64::from(i), w)).unwrap();
        }
    }
    out.push_str("\ni,w,determinant\n");
    for r in diamond_determinants(band) {
        writeln!(out, "{},{},{}", r.i, r.w, r.determinant).unwrap();
    }
    out
}
