//! Operators acting on a pair of adjacent, equal-height columns `i, i+1`.
//!
//! * `row_swap` / `range_swap`: exchange the two entries of one row / a run of rows.
//! * `rho`: the flip operator. It starts at the topmost row `k <= r` where the
//!   two columns differ and flips down to the ending row `h`, the highest row
//!   `h <= k` with differing entries whose two entries relate to the row below
//!   in the same way (equal triple indicator).
//! * `classify_block`: the 2x2 window taxonomy (left/right descent blocks and
//!   their kinds A, B, C).
//! * `epsilon`: the flip parameters attached to a descent block.
//! * `phi`: the involution that exchanges the non-descent counts of the two
//!   columns while shifting `inv` and `quinv` by the same amount and fixing `maj`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filling::Filling;
use crate::statistics::q;
use crate::value::ExtValue;

pub fn row_swap(sigma: &Filling, col: usize, row: usize) -> Result<Filling> {
    range_swap(sigma, col, row, row)
}

/// Swaps rows `from..=to` between columns `col` and `col + 1`.
pub fn range_swap(sigma: &Filling, col: usize, from: usize, to: usize) -> Result<Filling> {
    sigma.shape().check_compatible(col)?;
    let height = sigma.col_height(col);
    for row in [from, to] {
        if row == 0 || row > height {
            return Err(Error::RowOutOfRange { row, height });
        }
    }
    if from > to {
        return Err(Error::Invalid(format!("empty row range {from}..={to}")));
    }
    let mut out = sigma.clone();
    for row in from..=to {
        out.swap_in_row(row, col);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipResult {
    pub filling: Filling,
    /// Starting row `k` (topmost flipped row). 0 when `identity`.
    pub start_row: usize,
    /// Ending row `h` (bottommost flipped row). 0 when `identity`.
    pub end_row: usize,
    pub identity: bool,
    /// Set when the columns differ only above row `r`, so no starting row exists.
    pub undefined: bool,
}

impl FlipResult {
    fn identity(sigma: &Filling, undefined: bool) -> Self {
        FlipResult {
            filling: sigma.clone(),
            start_row: 0,
            end_row: 0,
            identity: true,
            undefined,
        }
    }
}

/// Triple indicator of `(x, lower-left, lower-right)` for the row pair `(row, row-1)`,
/// evaluated for both entries of `row`.
#[inline]
fn balance(sigma: &Filling, col: usize, row: usize) -> (bool, bool) {
    let c = sigma.ext(row - 1, col);
    let d = sigma.ext(row - 1, col + 1);
    (
        q(sigma.ext(row, col), c, d),
        q(sigma.ext(row, col + 1), c, d),
    )
}

/// Rows `row` and `row - 1` relate the same way to each other in both columns.
#[inline]
fn is_balanced(sigma: &Filling, col: usize, row: usize) -> bool {
    let (x, y) = balance(sigma, col, row);
    x == y
}

#[inline]
fn differs(sigma: &Filling, col: usize, row: usize) -> bool {
    sigma.ext(row, col) != sigma.ext(row, col + 1)
}

/// The flip operator started at row `row`.
pub fn rho(sigma: &Filling, col: usize, row: usize) -> Result<FlipResult> {
    sigma.shape().check_compatible(col)?;
    let height = sigma.col_height(col);
    if row == 0 || row > height {
        return Err(Error::RowOutOfRange { row, height });
    }
    if (1..=height).all(|r| !differs(sigma, col, r)) {
        return Ok(FlipResult::identity(sigma, false));
    }
    let Some(start) = (1..=row).rev().find(|&r| differs(sigma, col, r)) else {
        return Ok(FlipResult::identity(sigma, true));
    };
    let end = (1..=start)
        .rev()
        .find(|&r| differs(sigma, col, r) && is_balanced(sigma, col, r))
        .expect("the lowest differing row always balances against the row below");
    let filling = range_swap(sigma, col, end, start)?;
    Ok(FlipResult {
        filling,
        start_row: start,
        end_row: end,
        identity: false,
        undefined: false,
    })
}

/// The flip operator started at the top row of the column pair.
pub fn rho_top(sigma: &Filling, col: usize) -> Result<FlipResult> {
    sigma.shape().check_compatible(col)?;
    rho(sigma, col, sigma.col_height(col))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
    Neutral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    A,
    B,
    C,
    NotDescent,
}

/// A 2x2 window between columns `col, col+1` and rows `row, row+1`:
///
/// ```text
///   a b    row + 1
///   c d    row
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentBlock {
    pub col: usize,
    /// Lower row of the window (0 means the lower row is the `Infinity` sentinel row).
    pub row: usize,
    pub a: ExtValue,
    pub b: ExtValue,
    pub c: ExtValue,
    pub d: ExtValue,
    pub side: Side,
    pub kind: BlockKind,
}

impl DescentBlock {
    pub fn is_descent(&self) -> bool {
        self.side != Side::Neutral
    }
}

pub fn side_of(a: ExtValue, b: ExtValue, c: ExtValue, d: ExtValue) -> Side {
    match (a > c, b > d) {
        (true, false) => Side::Left,
        (false, true) => Side::Right,
        _ => Side::Neutral,
    }
}

/// The twelve clauses of the kind table, each tagged with its kind.
pub fn kind_clauses(a: ExtValue, b: ExtValue, c: ExtValue, d: ExtValue) -> [(BlockKind, bool); 12] {
    use BlockKind::*;
    [
        (A, d >= b && b >= a && a > c),
        (A, d >= a && a > b && b > c),
        (A, c >= b && b >= a && a > d),
        (A, c >= a && a > b && b > d),
        (B, a > c && c >= d && d >= b),
        (B, a > d && d > c && c >= b),
        (B, b > c && c >= d && d >= a),
        (B, b > d && d > c && c >= a),
        (C, a > d && d >= b && b > c),
        (C, d >= a && a > c && c >= b),
        (C, b > c && c >= a && a > d),
        (C, c >= b && b > d && d >= a),
    ]
}

/// Side and kind of the window with entries `a b / c d`.
pub fn classify(a: ExtValue, b: ExtValue, c: ExtValue, d: ExtValue) -> (Side, BlockKind) {
    let side = side_of(a, b, c, d);
    if side == Side::Neutral {
        return (side, BlockKind::NotDescent);
    }
    let mut hits = kind_clauses(a, b, c, d).into_iter().filter(|&(_, h)| h);
    let (kind, _) = hits
        .next()
        .unwrap_or_else(|| panic!("descent block {a} {b} / {c} {d} matches no kind clause"));
    debug_assert!(hits.next().is_none(), "descent block matches several kind clauses");
    (side, kind)
}

/// The window on rows `(row, row + 1)`; `row` may be 0 or the column height,
/// in which case one of the two rows is a sentinel row.
pub fn classify_block(sigma: &Filling, col: usize, row: usize) -> Result<DescentBlock> {
    sigma.shape().check_compatible(col)?;
    let height = sigma.col_height(col);
    if row > height {
        return Err(Error::RowOutOfRange { row, height });
    }
    let (a, b) = (sigma.ext(row + 1, col), sigma.ext(row + 1, col + 1));
    let (c, d) = (sigma.ext(row, col), sigma.ext(row, col + 1));
    let (side, kind) = classify(a, b, c, d);
    Ok(DescentBlock {
        col,
        row,
        a,
        b,
        c,
        d,
        side,
        kind,
    })
}

/// Parameters `(col, kappa)` of the flip operator attached to a descent block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipParams {
    pub col: usize,
    pub kappa: usize,
}

/// For a kind-A block on rows `(r, r+1)` this is `(col, r)`. Otherwise `kappa`
/// is the lowest row above `r` whose two entries both relate to the row
/// above with indicator value `[a <= c]`.
pub fn epsilon(sigma: &Filling, block: &DescentBlock) -> Result<FlipParams> {
    if !block.is_descent() {
        return Err(Error::Invalid("epsilon is defined on descent blocks only".into()));
    }
    let col = block.col;
    let r = block.row;
    if block.kind == BlockKind::A {
        return Ok(FlipParams { col, kappa: r });
    }
    let target = block.a <= block.c;
    let height = sigma.col_height(col);
    (r + 1..=height)
        .find(|&k| {
            let (c, d) = (sigma.ext(k, col), sigma.ext(k, col + 1));
            q(sigma.ext(k + 1, col), c, d) == target && q(sigma.ext(k + 1, col + 1), c, d) == target
        })
        .map(|kappa| FlipParams { col, kappa })
        .ok_or_else(|| Error::Invalid(format!("no flip row above row {r} in columns {col},{}", col + 1)))
}

/// Row intervals `(bottom, top)` of the components of columns `col, col+1`,
/// listed top to bottom. A component boundary sits below every row that is
/// balanced against the row beneath it.
pub fn components(sigma: &Filling, col: usize) -> Result<Vec<(usize, usize)>> {
    sigma.shape().check_compatible(col)?;
    let height = sigma.col_height(col);
    let cuts: Vec<usize> = (1..=height).filter(|&j| is_balanced(sigma, col, j)).collect();
    debug_assert_eq!(cuts.first(), Some(&1));
    let mut out: Vec<(usize, usize)> = cuts
        .iter()
        .enumerate()
        .map(|(k, &lo)| (lo, cuts.get(k + 1).map_or(height, |&next| next - 1)))
        .collect();
    out.reverse();
    Ok(out)
}

/// Per-component decision made by [`phi`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentFlip {
    pub bottom: usize,
    pub top: usize,
    /// Lower rows of the descent blocks counted for this component.
    pub descent_blocks: Vec<usize>,
    pub flipped: bool,
}

/// Decisions of [`phi`] for every component, top to bottom.
pub fn phi_plan(sigma: &Filling, col: usize) -> Result<Vec<ComponentFlip>> {
    let comps = components(sigma, col)?;
    let mut plan = Vec::with_capacity(comps.len());
    for (bottom, top) in comps {
        let upper = classify_block(sigma, col, top)?;
        let lower = classify_block(sigma, col, bottom - 1)?;
        let lo = bottom - usize::from(lower.kind == BlockKind::B);
        let hi = top + usize::from(upper.kind == BlockKind::A);
        let mut descent_blocks = Vec::new();
        for r in (lo..hi).rev() {
            if classify_block(sigma, col, r)?.is_descent() {
                descent_blocks.push(r);
            }
        }
        let flipped = descent_blocks.len() % 2 == 1;
        plan.push(ComponentFlip {
            bottom,
            top,
            descent_blocks,
            flipped,
        });
    }
    Ok(plan)
}

/// The involution on columns `col, col+1`.
pub fn phi(sigma: &Filling, col: usize) -> Result<Filling> {
    let plan = phi_plan(sigma, col)?;
    let mut out = sigma.clone();
    for comp in plan.iter().filter(|c| c.flipped) {
        #[cfg(debug_assertions)]
        check_component_flip(sigma, col, comp);
        for row in comp.bottom..=comp.top {
            out.swap_in_row(row, col);
        }
    }
    Ok(out)
}

/// The flip attached to the topmost counted descent block of a flipped
/// component must be exactly the swap of that component.
#[cfg(debug_assertions)]
fn check_component_flip(sigma: &Filling, col: usize, comp: &ComponentFlip) {
    let top_block = classify_block(sigma, col, comp.descent_blocks[0]).expect("in range");
    let params = epsilon(sigma, &top_block).unwrap_or_else(|e| {
        panic!("flip parameters undefined for block at row {}: {e}\n{sigma}", top_block.row)
    });
    let flip = rho(sigma, col, params.kappa).expect("kappa is a valid row");
    assert!(
        !flip.identity && flip.start_row == comp.top && flip.end_row == comp.bottom,
        "flip of component {}..={} in columns {col},{} does not match its descent block \
         (started {}, ended {})\n{sigma}",
        comp.bottom,
        comp.top,
        col + 1,
        flip.start_row,
        flip.end_row,
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{
        filling as f, flip_example, flip_example_image, involution_example,
        involution_example_image,
    };
    use crate::statistics::{maj, ndes_vector};

    fn v(n: u32) -> ExtValue {
        ExtValue::from_u32(n)
    }

    #[test]
    fn row_swap_examples() {
        let s = f(&[&[1, 2], &[3, 4]]);
        assert_eq!(row_swap(&s, 1, 2).unwrap(), f(&[&[1, 2], &[4, 3]]));
        let e = f(&[&[1, 2], &[3, 3]]);
        assert_eq!(row_swap(&e, 1, 2).unwrap(), e);
        assert_eq!(row_swap(&row_swap(&s, 1, 1).unwrap(), 1, 1).unwrap(), s);
    }

    #[test]
    fn swap_errors() {
        let s = f(&[&[1, 2, 3], &[4, 5]]);
        assert!(matches!(row_swap(&s, 2, 1), Err(Error::NotCompatible { .. })));
        assert!(matches!(row_swap(&s, 1, 3), Err(Error::RowOutOfRange { .. })));
        assert!(matches!(row_swap(&s, 1, 0), Err(Error::RowOutOfRange { .. })));
        assert!(range_swap(&s, 1, 2, 1).is_err());
        assert!(matches!(rho(&s, 3, 1), Err(Error::NotCompatible { .. })));
    }

    #[test]
    fn range_swap_examples() {
        assert_eq!(range_swap(&flip_example(), 1, 3, 5).unwrap(), flip_example_image());
        let s = flip_example();
        assert_eq!(range_swap(&s, 1, 4, 4).unwrap(), row_swap(&s, 1, 4).unwrap());
        let same = f(&[&[2, 2], &[5, 5], &[1, 1]]);
        assert_eq!(range_swap(&same, 1, 1, 3).unwrap(), same);
    }

    #[test]
    fn rho_on_flip_example() {
        let r = rho(&flip_example(), 1, 6).unwrap();
        assert_eq!((r.start_row, r.end_row, r.identity), (5, 3, false));
        assert_eq!(r.filling, flip_example_image());
        assert_eq!(rho_top(&flip_example(), 1).unwrap(), r);
        let back = rho(&r.filling, 1, 6).unwrap();
        assert_eq!(back.filling, flip_example());
    }

    #[test]
    fn rho_identity_cases() {
        let same = f(&[&[2, 2], &[5, 5]]);
        let r = rho(&same, 1, 2).unwrap();
        assert!(r.identity && !r.undefined);
        // columns differ only above the starting row
        let s = f(&[&[2, 2], &[5, 4]]);
        let r = rho(&s, 1, 1).unwrap();
        assert!(r.identity && r.undefined);
        assert_eq!(r.filling, s);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(v(5), v(4), v(3), v(7)), (Side::Left, BlockKind::A));
        let s = f(&[&[1, 2], &[3, 4]]);
        let top = classify_block(&s, 1, 2).unwrap();
        assert_eq!((top.a, top.b), (ExtValue::Zero, ExtValue::Zero));
        assert_eq!(top.side, Side::Neutral);
        let bottom = classify_block(&s, 1, 0).unwrap();
        assert_eq!((bottom.c, bottom.d), (ExtValue::Infinity, ExtValue::Infinity));
        assert_eq!(bottom.side, Side::Neutral);
    }

    #[test]
    fn block_kinds_partition_descent_blocks() {
        for a in 1..=4 {
            for b in 1..=4 {
                for c in 1..=4 {
                    for d in 1..=4 {
                        let (a, b, c, d) = (v(a), v(b), v(c), v(d));
                        let hits = kind_clauses(a, b, c, d).iter().filter(|x| x.1).count();
                        let side = side_of(a, b, c, d);
                        if side == Side::Neutral {
                            continue;
                        }
                        assert_eq!(hits, 1, "{a} {b} / {c} {d}");
                        let (_, kind) = classify(a, b, c, d);
                        let balanced = q(a, c, d) == q(b, c, d);
                        assert_eq!(kind != BlockKind::C, balanced, "{a} {b} / {c} {d}");
                    }
                }
            }
        }
    }

    #[test]
    fn epsilon_examples() {
        let s = involution_example();
        let block = classify_block(&s, 1, 1).unwrap();
        assert_eq!(block.kind, BlockKind::A);
        assert_eq!(epsilon(&s, &block).unwrap(), FlipParams { col: 1, kappa: 1 });

        // kind-B block on rows (1,2); row 3 holds equal entries that relate to
        // row 2 with indicator value [a <= c] = 0 in both columns.
        let s = f(&[&[2, 3], &[4, 1], &[5, 5]]);
        let block = classify_block(&s, 1, 1).unwrap();
        assert_eq!((block.side, block.kind), (Side::Left, BlockKind::B));
        assert!(!q(v(5), v(4), v(1)));
        assert_eq!(epsilon(&s, &block).unwrap(), FlipParams { col: 1, kappa: 2 });

        let neutral = classify_block(&s, 1, 2).unwrap();
        assert!(epsilon(&s, &neutral).is_err());
    }

    #[test]
    fn components_examples() {
        assert_eq!(
            components(&involution_example(), 1).unwrap(),
            vec![(3, 3), (2, 2), (1, 1)]
        );
        let same = f(&[&[2, 2], &[1, 1], &[3, 3], &[2, 2]]);
        assert_eq!(
            components(&same, 1).unwrap(),
            vec![(4, 4), (3, 3), (2, 2), (1, 1)]
        );
        let comps = components(&flip_example(), 1).unwrap();
        assert_eq!(comps.last().unwrap().0, 1);
        let total: usize = comps.iter().map(|(lo, hi)| hi - lo + 1).sum();
        assert_eq!(total, 6);
    }

    #[test]
    fn phi_on_involution_example() {
        let s = involution_example();
        let out = phi(&s, 1).unwrap();
        assert_eq!(out, involution_example_image());
        assert_eq!(maj(&out), 2);
        assert_eq!(maj(&s), 2);
        assert_eq!(ndes_vector(&s), vec![1, 2]);
        assert_eq!(ndes_vector(&out), vec![2, 1]);
        assert_eq!(crate::inv(&out), crate::inv(&s) + 1);
        assert_eq!(crate::quinv(&out), crate::quinv(&s) + 1);
        assert_eq!(phi(&out, 1).unwrap(), s);
    }

    #[test]
    fn phi_without_descent_blocks_is_identity() {
        let s = f(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert_eq!(phi(&s, 1).unwrap(), s);
    }

    #[test]
    fn phi_is_involution_on_three_by_two() {
        let mut count = 0;
        for code in 0..3u32.pow(6) {
            let vals: Vec<u32> = (0..6).map(|k| code / 3u32.pow(k) % 3 + 1).collect();
            let s = f(&[&vals[0..2], &vals[2..4], &vals[4..6]]);
            let once = phi(&s, 1).unwrap();
            assert_eq!(phi(&once, 1).unwrap(), s, "\n{s}");
            count += 1;
        }
        assert_eq!(count, 729);
    }
}
