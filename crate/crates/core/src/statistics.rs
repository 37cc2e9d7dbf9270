//! Statistics on fillings: descents, `maj`, inversion triples (`inv`) and
//! queue inversion triples (`quinv`).
//!
//! Sentinels are never materialized: the row below row 1 reads as `Infinity`
//! and the cell above the top of each column reads as `Zero`.

use serde::{Deserialize, Serialize};

use crate::filling::Filling;
use crate::value::ExtValue;

/// The cyclic-order indicator on triples: 1 iff `a<b<c`, `b<c<a`, `c<a<b`, or `a=b!=c`.
#[inline]
pub fn triple_indicator(a: ExtValue, b: ExtValue, c: ExtValue) -> u8 {
    let hit = (a < b && b < c) || (b < c && c < a) || (c < a && a < b) || (a == b && b != c);
    hit as u8
}

/// Boolean form of [`triple_indicator`].
#[inline]
pub fn q(a: ExtValue, b: ExtValue, c: ExtValue) -> bool {
    triple_indicator(a, b, c) == 1
}

/// Number of boxes strictly above `(row, col)` in its column.
pub fn leg(sigma: &Filling, row: usize, col: usize) -> usize {
    sigma.col_height(col).saturating_sub(row)
}

/// Descent set: cells `(row, col)` with `row >= 2` whose entry exceeds the one below.
pub fn descents(sigma: &Filling) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (idx, row) in sigma.rows().iter().enumerate().skip(1) {
        let below = &sigma.rows()[idx - 1];
        for (c, (&up, &down)) in row.iter().zip(below).enumerate() {
            if up > down {
                out.push((idx + 1, c + 1));
            }
        }
    }
    out
}

pub fn des(sigma: &Filling) -> usize {
    descents(sigma).len()
}

/// Sum of `leg(u) + 1` over descents `u`.
pub fn maj(sigma: &Filling) -> usize {
    descents(sigma)
        .into_iter()
        .map(|(r, c)| leg(sigma, r, c) + 1)
        .sum()
}

/// Number of inversion triples: `a` at `(r,i)`, `b` directly below `a`
/// (`Infinity` under row 1), `c` at `(r,j)` with `j > i`.
pub fn inv(sigma: &Filling) -> usize {
    let mut count = 0;
    for (idx, row) in sigma.rows().iter().enumerate() {
        let below = idx.checked_sub(1).map(|k| &sigma.rows()[k]);
        for i in 0..row.len() {
            let a = row[i];
            let b = below.map_or(ExtValue::Infinity, |r| r[i]);
            for &c in &row[i + 1..] {
                count += triple_indicator(a, b, c) as usize;
            }
        }
    }
    count
}

/// Number of queue inversion triples: `b` at `(r,i)`, `a` directly above `b`
/// (`Zero` above the column top), `c` at `(r,j)` with `j > i`.
pub fn quinv(sigma: &Filling) -> usize {
    let mut count = 0;
    for (idx, row) in sigma.rows().iter().enumerate() {
        let above = sigma.rows().get(idx + 1);
        for i in 0..row.len() {
            let b = row[i];
            let a = above.and_then(|r| r.get(i)).copied().unwrap_or(ExtValue::Zero);
            for &c in &row[i + 1..] {
                count += triple_indicator(a, b, c) as usize;
            }
        }
    }
    count
}

/// Non-descents per column: pairs `(r, r-1)` inside the column with
/// `sigma(r) <= sigma(r-1)`.
pub fn ndes_vector(sigma: &Filling) -> Vec<usize> {
    let mut out = vec![0; sigma.width()];
    for (idx, row) in sigma.rows().iter().enumerate().skip(1) {
        let below = &sigma.rows()[idx - 1];
        for (c, (&up, &down)) in row.iter().zip(below).enumerate() {
            if up <= down {
                out[c] += 1;
            }
        }
    }
    out
}

pub fn ndes(sigma: &Filling) -> usize {
    ndes_vector(sigma).iter().sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatBundle {
    pub maj: usize,
    pub inv: usize,
    pub quinv: usize,
    pub des: usize,
    pub ndes_vector: Vec<usize>,
}

impl StatBundle {
    pub fn of(sigma: &Filling) -> Self {
        StatBundle {
            maj: maj(sigma),
            inv: inv(sigma),
            quinv: quinv(sigma),
            des: des(sigma),
            ndes_vector: ndes_vector(sigma),
        }
    }

    pub fn ndes(&self) -> usize {
        self.ndes_vector.iter().sum()
    }
}

pub fn stat_bundle(sigma: &Filling) -> StatBundle {
    StatBundle::of(sigma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{filling as f, mixed_shape_sigma, mixed_shape_varphi, ASYMMETRIC_CLASS_TABLE};

    fn v(n: u32) -> ExtValue {
        ExtValue::from_u32(n)
    }

    #[test]
    fn indicator_examples() {
        assert_eq!(triple_indicator(ExtValue::Zero, v(1), v(2)), 1);
        assert_eq!(triple_indicator(v(3), v(4), v(1)), 1);
        assert_eq!(triple_indicator(v(4), v(3), v(3)), 0);
        assert_eq!(triple_indicator(v(2), ExtValue::Infinity, v(1)), 1);
        assert_eq!(triple_indicator(v(2), v(2), v(1)), 1);
        assert_eq!(triple_indicator(v(2), v(2), v(2)), 0);
    }

    #[test]
    fn remark_class_statistics() {
        for (mid, (mj, i, qi)) in ASYMMETRIC_CLASS_TABLE {
            let s = f(&[&[3, 3, 3], &mid, &[3]]);
            assert_eq!((maj(&s), inv(&s), quinv(&s)), (mj, i, qi), "{mid:?}");
        }
    }

    #[test]
    fn mixed_shape_statistics() {
        let s = mixed_shape_sigma();
        assert_eq!((maj(&s), inv(&s), quinv(&s)), (33, 40, 32));
        let p = mixed_shape_varphi();
        assert_eq!((maj(&p), quinv(&p), inv(&p)), (33, 40, 34));
    }

    #[test]
    fn single_row_words() {
        let s = f(&[&[2, 1, 3]]);
        assert_eq!(inv(&s), 1);
        assert_eq!(quinv(&s), 2);
        assert_eq!(maj(&s), 0);
    }

    #[test]
    fn ndes_examples() {
        assert_eq!(ndes_vector(&f(&[&[3, 7], &[5, 4], &[1, 2]])), vec![1, 2]);
        assert_eq!(ndes_vector(&f(&[&[2, 2, 2], &[2, 2, 2]])), vec![1, 1, 1]);
        assert_eq!(ndes_vector(&f(&[&[1, 1], &[2, 2], &[3, 3]])), vec![0, 0]);
    }

    #[test]
    fn empty_filling_is_all_zero() {
        let b = StatBundle::of(&Filling::empty());
        assert_eq!(
            b,
            StatBundle {
                maj: 0,
                inv: 0,
                quinv: 0,
                des: 0,
                ndes_vector: vec![]
            }
        );
    }

    #[test]
    fn bundle_counts_vertical_pairs() {
        let s = mixed_shape_sigma();
        let b = StatBundle::of(&s);
        let pairs: usize = (1..=s.width()).map(|c| s.col_height(c) - 1).sum();
        assert_eq!(b.des + b.ndes(), pairs);
        for (c, &x) in b.ndes_vector.iter().enumerate() {
            assert!(x < s.col_height(c + 1));
        }
    }

    #[test]
    fn zero_entries_are_smallest() {
        let s = Filling::from_values(vec![vec![v(2), v(1)], vec![ExtValue::Zero, v(3)]]).unwrap();
        assert_eq!(ndes_vector(&s), vec![1, 0]);
        assert_eq!(maj(&s), 1);
    }
}
