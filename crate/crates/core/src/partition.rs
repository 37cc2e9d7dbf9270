use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// An integer partition, parts listed from the bottom row up (French convention).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(Error::NotAPartition(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The rectangle `(n^m)`: `m` rows of width `n`.
    pub fn rectangle(width: usize, height: usize) -> Self {
        if width == 0 {
            return Self::empty();
        }
        Partition {
            parts: vec![width; height],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Number of rows, `l(lambda)`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|lambda|`.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Width of the bottom row (number of columns).
    pub fn width(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// Length of row `row` (1-based from the bottom); 0 beyond the top.
    pub fn row_len(&self, row: usize) -> usize {
        if row == 0 {
            return 0;
        }
        self.parts.get(row - 1).copied().unwrap_or(0)
    }

    /// Height of column `col` (1-based from the left); 0 beyond the right edge.
    pub fn col_height(&self, col: usize) -> usize {
        if col == 0 {
            return 0;
        }
        self.parts.iter().take_while(|&&p| p >= col).count()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && col <= self.row_len(row)
    }

    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.width()).map(|c| self.col_height(c)).collect();
        Partition { parts }
    }

    pub fn is_rectangle(&self) -> bool {
        self.parts.windows(2).all(|w| w[0] == w[1])
    }

    /// Column `col` is compatible when it and its right neighbour have the same
    /// positive height.
    pub fn is_compatible(&self, col: usize) -> bool {
        let h = self.col_height(col);
        h >= 1 && h == self.col_height(col + 1)
    }

    pub fn check_compatible(&self, col: usize) -> Result<()> {
        if self.is_compatible(col) {
            Ok(())
        } else {
            Err(Error::NotCompatible {
                col,
                left: self.col_height(col),
                right: self.col_height(col + 1),
            })
        }
    }

    /// All compatible columns, left to right.
    pub fn compatible_columns(&self) -> Vec<usize> {
        (1..self.width()).filter(|&c| self.is_compatible(c)).collect()
    }

    pub fn rectangle_decomposition(&self) -> RectangleDecomposition {
        let mut blocks: Vec<Block> = Vec::new();
        for col in 1..=self.width() {
            let height = self.col_height(col);
            match blocks.last_mut() {
                Some(b) if b.height == height => b.width += 1,
                _ => blocks.push(Block {
                    col_start: col,
                    width: 1,
                    height,
                }),
            }
        }
        RectangleDecomposition { blocks }
    }

    /// All partitions of `n`, in reverse lexicographic order (`(n)` first).
    pub fn all_of_size(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions with `|lambda| <= n`, by size then reverse lexicographic.
    pub fn all_up_to_size(n: usize) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all_of_size).collect()
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// One maximal rectangle of a diagram: columns `col_start..col_start+width`, all of height `height`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub col_start: usize,
    pub width: usize,
    pub height: usize,
}

impl Block {
    pub fn col_end(&self) -> usize {
        self.col_start + self.width - 1
    }
}

/// Maximal rectangles of a diagram, left to right, heights strictly decreasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectangleDecomposition {
    pub blocks: Vec<Block>,
}

impl RectangleDecomposition {
    /// `(col_start, width, height)` triples.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        self.blocks
            .iter()
            .map(|b| (b.col_start, b.width, b.height))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(p(&[7, 7, 5, 5, 5, 2]).conjugate(), p(&[6, 6, 5, 5, 5, 2, 2]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[3, 3, 1]).conjugate(), p(&[3, 2, 2]));
    }

    #[test]
    fn rejects_non_partitions() {
        assert!(Partition::new(vec![2, 3]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::new(vec![]).is_ok());
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(
            p(&[7, 7, 5, 5, 5, 2]).rectangle_decomposition().triples(),
            vec![(1, 2, 6), (3, 3, 5), (6, 2, 2)]
        );
        assert_eq!(
            Partition::rectangle(4, 3).rectangle_decomposition().triples(),
            vec![(1, 4, 3)]
        );
        assert_eq!(
            p(&[3, 3, 1]).rectangle_decomposition().triples(),
            vec![(1, 1, 3), (2, 2, 2)]
        );
        assert!(Partition::empty().rectangle_decomposition().blocks.is_empty());
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all_of_size(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn compatibility() {
        let l = p(&[3, 3, 1]);
        assert!(!l.is_compatible(1));
        assert!(l.is_compatible(2));
        assert!(!l.is_compatible(3));
        assert_eq!(l.compatible_columns(), vec![2]);
    }

    #[test]
    fn conjugation_involution_small() {
        for l in Partition::all_up_to_size(8) {
            assert_eq!(l.conjugate().conjugate(), l);
        }
    }

    #[test]
    fn decomposition_invariants_small() {
        for l in Partition::all_up_to_size(8) {
            let d = l.rectangle_decomposition();
            assert!(d.blocks.windows(2).all(|w| w[0].height > w[1].height));
            assert_eq!(d.blocks.iter().map(|b| b.width * b.height).sum::<usize>(), l.size());
            let mut next = 1;
            for b in &d.blocks {
                assert_eq!(b.col_start, next);
                assert!(b.width >= 1);
                for c in b.col_start..=b.col_end() {
                    assert_eq!(l.col_height(c), b.height);
                }
                next += b.width;
            }
            assert_eq!(next, l.width() + 1);
        }
    }

    proptest! {
        #[test]
        fn conjugation_is_involution(mut parts in prop::collection::vec(1usize..8, 0..8)) {
            parts.sort_unstable_by(|a, b| b.cmp(a));
            let l = Partition::new(parts).unwrap();
            prop_assert_eq!(l.conjugate().conjugate(), l.clone());
            prop_assert_eq!(l.conjugate().size(), l.size());
        }
    }
}
