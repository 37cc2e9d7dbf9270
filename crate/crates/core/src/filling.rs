use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partition::{Block, Partition};
use crate::value::ExtValue;

/// A filling of a Young diagram.
///
/// Rows are stored bottom-up (`rows[0]` is row 1). Entries are positive
/// integers, except in *padded* fillings, which may hold `Zero` entries while
/// a row is being transported during the construction of `gamma`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filling {
    shape: Partition,
    rows: Vec<Vec<ExtValue>>,
    padded: bool,
}

/// Structured document form of a filling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingDoc {
    pub rows_top_to_bottom: Vec<Vec<u32>>,
}

impl Filling {
    /// Builds a filling from positive entries, rows listed bottom-up.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|v| ExtValue::fin(v).ok_or_else(|| Error::NonPositiveEntry(v.to_string())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(rows)
    }

    /// Builds a filling from positive entries, rows listed top row first.
    pub fn from_rows_top_down(mut rows: Vec<Vec<u32>>) -> Result<Self> {
        rows.reverse();
        Self::from_rows(rows)
    }

    /// Builds a filling from extended values. `Zero` entries mark the result as
    /// padded; `Infinity` is rejected.
    pub fn from_values(rows: Vec<Vec<ExtValue>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())?;
        if rows.iter().flatten().any(|&v| v == ExtValue::Infinity) {
            return Err(Error::NonPositiveEntry("inf".into()));
        }
        let padded = rows.iter().flatten().any(|v| v.is_zero());
        Ok(Filling {
            shape,
            rows,
            padded,
        })
    }

    pub fn empty() -> Self {
        Filling {
            shape: Partition::empty(),
            rows: Vec::new(),
            padded: false,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Rows bottom-up.
    pub fn rows(&self) -> &[Vec<ExtValue>] {
        &self.rows
    }

    pub fn is_padded(&self) -> bool {
        self.padded
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.shape.width()
    }

    pub fn col_height(&self, col: usize) -> usize {
        self.shape.col_height(col)
    }

    /// Row `row` (1-based from the bottom).
    pub fn row(&self, row: usize) -> &[ExtValue] {
        &self.rows[row - 1]
    }

    pub fn top_row(&self) -> &[ExtValue] {
        self.rows.last().map(Vec::as_slice).unwrap_or(&[])
    }

    /// Stored entry at an in-shape cell.
    pub fn get(&self, row: usize, col: usize) -> Option<ExtValue> {
        if row == 0 || col == 0 {
            return None;
        }
        self.rows.get(row - 1)?.get(col - 1).copied()
    }

    /// Extended read: `Infinity` below row 1, `Zero` directly above the top
    /// of each column, stored entries inside the diagram.
    pub fn read(&self, row: usize, col: usize) -> Result<ExtValue> {
        let h = self.col_height(col);
        if col == 0 || h == 0 {
            return Err(Error::OutOfShape { row, col });
        }
        if row == 0 {
            Ok(ExtValue::Infinity)
        } else if row <= h {
            Ok(self.rows[row - 1][col - 1])
        } else if row == h + 1 {
            Ok(ExtValue::Zero)
        } else {
            Err(Error::OutOfShape { row, col })
        }
    }

    /// Extended read for positions known to be valid. Panics otherwise.
    #[inline]
    pub(crate) fn ext(&self, row: usize, col: usize) -> ExtValue {
        if row == 0 {
            return ExtValue::Infinity;
        }
        match self.rows.get(row - 1).and_then(|r| r.get(col - 1)) {
            Some(&v) => v,
            None => {
                debug_assert!(
                    row == self.col_height(col) + 1,
                    "extended read outside sentinel range at ({row},{col})"
                );
                ExtValue::Zero
            }
        }
    }

    /// Exchanges the entries at `(row, col)` and `(row, col + 1)`.
    pub(crate) fn swap_in_row(&mut self, row: usize, col: usize) {
        self.rows[row - 1].swap(col - 1, col);
    }

    /// Per-row multisets, bottom-up, each sorted ascending.
    pub fn row_signature(&self) -> Vec<Vec<ExtValue>> {
        self.rows
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.sort_unstable();
                r
            })
            .collect()
    }

    pub fn is_row_equivalent(&self, other: &Filling) -> bool {
        self.shape == other.shape && self.row_signature() == other.row_signature()
    }

    /// Reverses every row inside each maximal rectangle independently.
    pub fn reverse(&self) -> Filling {
        let mut out = self.clone();
        for b in self.shape.rectangle_decomposition().blocks {
            for row in out.rows.iter_mut().take(b.height) {
                row[b.col_start - 1..b.col_end()].reverse();
            }
        }
        out
    }

    /// Reflection across the main diagonal.
    pub fn transpose(&self) -> Result<Filling> {
        if self.padded {
            return Err(Error::Padded);
        }
        let rows = (1..=self.width())
            .map(|c| (1..=self.col_height(c)).map(|r| self.rows[r - 1][c - 1]).collect())
            .collect();
        Filling::from_values(rows)
    }

    /// The sub-filling occupying `block`, as a rectangle of its own.
    pub fn block(&self, block: &Block) -> Filling {
        let rows: Vec<Vec<ExtValue>> = self.rows[..block.height]
            .iter()
            .map(|r| r[block.col_start - 1..block.col_end()].to_vec())
            .collect();
        Filling::from_values(rows).expect("a block of a filling is a rectangle")
    }

    /// The maximal rectangles of this filling, left to right.
    pub fn blocks(&self) -> Vec<Filling> {
        self.shape
            .rectangle_decomposition()
            .blocks
            .iter()
            .map(|b| self.block(b))
            .collect()
    }

    /// Inverse of [`Filling::blocks`]: concatenates rectangles side by side.
    pub fn join_blocks(blocks: &[Filling]) -> Result<Filling> {
        let height = blocks.iter().map(Filling::num_rows).max().unwrap_or(0);
        let mut rows: Vec<Vec<ExtValue>> = vec![Vec::new(); height];
        for b in blocks {
            if !b.shape.is_rectangle() {
                return Err(Error::NotRectangular(b.shape.parts().to_vec()));
            }
            for (r, row) in b.rows.iter().enumerate() {
                rows[r].extend_from_slice(row);
            }
        }
        Filling::from_values(rows)
    }

    /// Puts `row` on top of the filling.
    pub fn push_row(&self, row: Vec<ExtValue>) -> Result<Filling> {
        let mut rows = self.rows.clone();
        rows.push(row);
        Filling::from_values(rows)
    }

    /// Keeps the bottom `count` rows.
    pub fn take_rows(&self, count: usize) -> Filling {
        let rows = self.rows[..count.min(self.rows.len())].to_vec();
        Filling::from_values(rows).expect("bottom rows of a filling form a filling")
    }

    /// Removes trailing `Zero` entries of the top row.
    pub fn drop_top_zeros(&self) -> Result<Filling> {
        let mut rows = self.rows.clone();
        if let Some(top) = rows.last_mut() {
            while top.last() == Some(&ExtValue::Zero) {
                top.pop();
            }
            if top.iter().any(|v| v.is_zero()) {
                return Err(Error::Invalid("top row has zeros that are not trailing".into()));
            }
            if top.is_empty() {
                rows.pop();
            }
        }
        Filling::from_values(rows)
    }

    /// Multiplicities of the values `1..=n` over the whole filling.
    pub fn content(&self, n: usize) -> Vec<u32> {
        let mut c = vec![0u32; n];
        for v in self.rows.iter().flatten() {
            let k = v.as_u32() as usize;
            if (1..=n).contains(&k) {
                c[k - 1] += 1;
            }
        }
        c
    }

    pub fn max_entry(&self) -> u32 {
        self.rows.iter().flatten().map(|v| v.as_u32()).max().unwrap_or(0)
    }

    /// Rows bottom-up as integers (`Zero` is 0).
    pub fn rows_bottom_up(&self) -> Vec<Vec<u32>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|v| v.as_u32()).collect())
            .collect()
    }

    /// Rows top row first as integers (`Zero` is 0).
    pub fn rows_top_to_bottom(&self) -> Vec<Vec<u32>> {
        let mut rows = self.rows_bottom_up();
        rows.reverse();
        rows
    }

    /// Text form: one line per row, top row first, entries separated by single spaces.
    pub fn to_text(&self) -> String {
        self.rows
            .iter()
            .rev()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Same as [`Filling::to_text`] but bottom row first.
    pub fn to_text_bottom_up(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Parses the text form (top row first). Blank lines are ignored.
    pub fn parse_text(s: &str) -> Result<Filling> {
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| match tok.parse::<i64>() {
                    Ok(v) if v <= 0 => Err(Error::NonPositiveEntry(tok.to_string())),
                    Ok(v) => u32::try_from(v)
                        .map_err(|_| Error::Parse(format!("entry too large: {tok}"))),
                    Err(_) => Err(Error::Parse(format!("not an integer: {tok:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::EmptyInput);
        }
        Filling::from_rows_top_down(rows)
    }

    pub fn to_doc(&self) -> FillingDoc {
        FillingDoc {
            rows_top_to_bottom: self.rows_top_to_bottom(),
        }
    }

    pub fn from_doc(doc: FillingDoc) -> Result<Filling> {
        Filling::from_rows_top_down(doc.rows_top_to_bottom)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_doc()).expect("filling documents always serialize")
    }

    pub fn parse_json(s: &str) -> Result<Filling> {
        if s.trim().is_empty() {
            return Err(Error::EmptyInput);
        }
        let doc: FillingDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Filling::from_doc(doc)
    }

    /// Parses either format; documents starting with `{` are read as JSON.
    pub fn parse_any(s: &str) -> Result<Filling> {
        if s.trim_start().starts_with('{') {
            Filling::parse_json(s)
        } else {
            Filling::parse_text(s)
        }
    }
}

impl fmt::Display for Filling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Filling {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Filling::parse_any(s)
    }
}

impl Serialize for Filling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_doc().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Filling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = FillingDoc::deserialize(d)?;
        let rows = doc
            .rows_top_to_bottom
            .into_iter()
            .rev()
            .map(|r| r.into_iter().map(ExtValue::from_u32).collect())
            .collect();
        Filling::from_values(rows).map_err(serde::de::Error::custom)
    }
}
