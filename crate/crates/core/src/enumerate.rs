//! Enumeration of row-equivalence classes, of all fillings of a shape, and
//! of class representatives.

use crate::error::{Error, Result};
use crate::filling::Filling;
use crate::partition::Partition;
use crate::value::ExtValue;

/// Default cap on the number of fillings a single enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 1_000_000;

/// Rearranges `xs` into the next larger permutation; on the largest one,
/// resets to ascending order and returns `false`.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        xs.reverse();
        return false;
    };
    let j = xs.iter().rposition(|x| *x > xs[i]).expect("pivot has a larger successor");
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Number of distinct arrangements of a multiset, saturating at `u128::MAX`.
pub fn multiset_permutations<T: Ord + Clone>(xs: &[T]) -> u128 {
    let mut sorted = xs.to_vec();
    sorted.sort();
    let mut total: u128 = 1;
    let mut placed: u128 = 0;
    let mut run: u128 = 0;
    for (k, x) in sorted.iter().enumerate() {
        run = if k > 0 && sorted[k - 1] == *x { run + 1 } else { 1 };
        placed += 1;
        // total * placed / run stays integral: it is a running multinomial.
        total = match total.checked_mul(placed) {
            Some(v) => v / run,
            None => return u128::MAX,
        };
    }
    total
}

/// Size of the row-equivalence class of `sigma`.
pub fn class_size(sigma: &Filling) -> u128 {
    sigma
        .rows()
        .iter()
        .map(|r| multiset_permutations(r))
        .fold(1u128, |acc, m| acc.saturating_mul(m))
}

fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::Budget { needed, budget })
    } else {
        Ok(())
    }
}

/// Odometer over the class: row 1 varies slowest, so members come out in
/// lexicographic order of their rows read bottom-up.
pub struct RowClassIter {
    rows: Vec<Vec<ExtValue>>,
    done: bool,
}

impl Iterator for RowClassIter {
    type Item = Filling;

    fn next(&mut self) -> Option<Filling> {
        if self.done {
            return None;
        }
        let out = Filling::from_values(self.rows.clone()).expect("rearranged rows keep the shape");
        self.done = !self.rows.iter_mut().rev().any(|r| next_permutation(r));
        Some(out)
    }
}

/// All members of the row-equivalence class of `sigma`, each once.
pub fn enumerate_row_class(sigma: &Filling, budget: u128) -> Result<RowClassIter> {
    if sigma.is_padded() {
        return Err(Error::Padded);
    }
    check_budget(class_size(sigma), budget)?;
    Ok(RowClassIter {
        rows: sigma.row_signature(),
        done: false,
    })
}

/// Every filling of `shape` with entries in `1..=max_entry`, in lexicographic
/// order of rows read bottom-up.
pub struct AllFillings {
    shape: Partition,
    cells: Vec<u32>,
    max_entry: u32,
    done: bool,
}

impl Iterator for AllFillings {
    type Item = Filling;

    fn next(&mut self) -> Option<Filling> {
        if self.done {
            return None;
        }
        let mut rows = Vec::with_capacity(self.shape.len());
        let mut k = 0;
        for &len in self.shape.parts() {
            rows.push(self.cells[k..k + len].iter().map(|&v| ExtValue::from_u32(v)).collect());
            k += len;
        }
        let out = Filling::from_values(rows).expect("cells fit the shape");
        self.done = true;
        for c in self.cells.iter_mut().rev() {
            if *c < self.max_entry {
                *c += 1;
                self.done = false;
                break;
            }
            *c = 1;
        }
        Some(out)
    }
}

pub fn all_fillings(shape: &Partition, max_entry: u32, budget: u128) -> Result<AllFillings> {
    if max_entry == 0 {
        return Err(Error::Invalid("entries must range over at least one value".into()));
    }
    let needed = (max_entry as u128)
        .checked_pow(shape.size() as u32)
        .unwrap_or(u128::MAX);
    check_budget(needed, budget)?;
    Ok(AllFillings {
        shape: shape.clone(),
        cells: vec![1; shape.size()],
        max_entry,
        done: false,
    })
}

/// Weakly increasing sequences of length `len` over `1..=max_entry`.
fn sorted_rows(len: usize, max_entry: u32) -> Vec<Vec<u32>> {
    fn go(len: usize, lo: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=max {
            cur.push(v);
            go(len, v, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 1, max_entry, &mut Vec::new(), &mut out);
    out
}

/// One filling per row-equivalence class of `shape` with entries in
/// `1..=max_entry`: the member whose rows all increase weakly left to right.
pub fn class_representatives(shape: &Partition, max_entry: u32) -> Vec<Filling> {
    let choices: Vec<Vec<Vec<u32>>> = shape
        .parts()
        .iter()
        .map(|&len| sorted_rows(len, max_entry))
        .collect();
    let mut out = vec![Vec::new()];
    for options in &choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for row in options {
                let mut rows: Vec<Vec<u32>> = Vec::clone(prefix);
                rows.push(row.clone());
                next.push(rows);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|rows| Filling::from_rows(rows).expect("sorted rows fit the shape"))
        .collect()
}
