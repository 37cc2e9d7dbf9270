//! `kappa`, the row-building bijection `gamma`, the rectangle symmetrizer
//! `theta` and their composite `varphi`, with replayable traces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filling::Filling;
use crate::operators::{phi, rho, rho_top, row_swap, range_swap};
use crate::statistics::{inv, quinv};
use crate::value::ExtValue;

/// Sum over the maximal rectangles of `quinv(block) - inv(reversed block)`.
pub fn kappa(sigma: &Filling) -> i64 {
    sigma
        .blocks()
        .iter()
        .map(|b| quinv(b) as i64 - inv(&b.reverse()) as i64)
        .sum()
}

/// One elementary operation of a trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "operator", rename_all = "snake_case")]
pub enum Operator {
    RowSwap { col: usize, row: usize },
    RangeSwap { col: usize, from: usize, to: usize },
    Rho { col: usize, row: usize },
    Phi { col: usize },
    ReverseBlocks,
    PushRow { entries: Vec<u32> },
    DropZeros,
    TakeRows { count: usize },
}

impl Operator {
    pub fn apply(&self, sigma: &Filling) -> Result<Filling> {
        match self {
            Operator::RowSwap { col, row } => row_swap(sigma, *col, *row),
            Operator::RangeSwap { col, from, to } => range_swap(sigma, *col, *from, *to),
            Operator::Rho { col, row } => Ok(rho(sigma, *col, *row)?.filling),
            Operator::Phi { col } => phi(sigma, *col),
            Operator::ReverseBlocks => Ok(sigma.reverse()),
            Operator::PushRow { entries } => {
                sigma.push_row(entries.iter().map(|&v| ExtValue::from_u32(v)).collect())
            }
            Operator::DropZeros => sigma.drop_top_zeros(),
            Operator::TakeRows { count } => Ok(sigma.take_rows(*count)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Operator::RowSwap { .. } => "t",
            Operator::RangeSwap { .. } => "t_range",
            Operator::Rho { .. } => "rho",
            Operator::Phi { .. } => "phi",
            Operator::ReverseBlocks => "reverse",
            Operator::PushRow { .. } => "push_row",
            Operator::DropZeros => "drop_zeros",
            Operator::TakeRows { .. } => "take_rows",
        }
    }

    pub fn column(&self) -> Option<usize> {
        match self {
            Operator::RowSwap { col, .. }
            | Operator::RangeSwap { col, .. }
            | Operator::Rho { col, .. }
            | Operator::Phi { col } => Some(*col),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub op: Operator,
    pub after: Filling,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionTrace {
    pub input: Filling,
    pub steps: Vec<TraceStep>,
    pub output: Filling,
}

/// Serialized view of one step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub operator: String,
    pub column: Option<usize>,
    /// Lowest and highest row whose entries changed; `None` when the step is the identity
    /// or changes the shape.
    pub rows: Option<(usize, usize)>,
    pub before: Vec<Vec<u32>>,
    pub after: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub input: Vec<Vec<u32>>,
    pub output: Vec<Vec<u32>>,
    pub steps: Vec<StepDoc>,
}

fn changed_rows(before: &Filling, after: &Filling) -> Option<(usize, usize)> {
    if before.shape() != after.shape() {
        return None;
    }
    let diff: Vec<usize> = (1..=before.num_rows())
        .filter(|&r| before.row(r) != after.row(r))
        .collect();
    Some((*diff.first()?, *diff.last()?))
}

impl BijectionTrace {
    fn new(input: &Filling) -> Self {
        BijectionTrace {
            input: input.clone(),
            steps: Vec::new(),
            output: input.clone(),
        }
    }

    fn current(&self) -> &Filling {
        &self.output
    }

    fn push(&mut self, op: Operator) -> Result<&Filling> {
        let after = op.apply(&self.output)?;
        self.output = after.clone();
        self.steps.push(TraceStep { op, after });
        Ok(&self.output)
    }

    /// Re-applies every step to the input and checks each recorded intermediate.
    pub fn replay(&self) -> Result<Filling> {
        let mut cur = self.input.clone();
        for (k, step) in self.steps.iter().enumerate() {
            cur = step.op.apply(&cur)?;
            if cur != step.after {
                return Err(Error::ReplayMismatch {
                    step: k,
                    operator: step.op.name().into(),
                });
            }
        }
        if cur != self.output {
            return Err(Error::ReplayMismatch {
                step: self.steps.len(),
                operator: "output".into(),
            });
        }
        Ok(cur)
    }

    /// All intermediate fillings, starting with the input.
    pub fn states(&self) -> impl Iterator<Item = &Filling> {
        std::iter::once(&self.input).chain(self.steps.iter().map(|s| &s.after))
    }

    pub fn to_doc(&self) -> TraceDoc {
        let mut before = &self.input;
        let mut steps = Vec::with_capacity(self.steps.len());
        for s in &self.steps {
            steps.push(StepDoc {
                operator: s.op.name().into(),
                column: s.op.column(),
                rows: match &s.op {
                    Operator::RangeSwap { from, to, .. } => Some((*from, *to)),
                    Operator::RowSwap { row, .. } => Some((*row, *row)),
                    _ => changed_rows(before, &s.after),
                },
                before: before.rows_top_to_bottom(),
                after: s.after.rows_top_to_bottom(),
            });
            before = &s.after;
        }
        TraceDoc {
            input: self.input.rows_top_to_bottom(),
            output: self.output.rows_top_to_bottom(),
            steps,
        }
    }
}

fn require_unpadded(sigma: &Filling) -> Result<()> {
    if sigma.is_padded() {
        Err(Error::Padded)
    } else {
        Ok(())
    }
}

fn top_entry(sigma: &Filling, col: usize) -> ExtValue {
    sigma.top_row()[col - 1]
}

/// Moves the zero at `(top, col)` one column to the right.
fn transport_step(trace: &mut BijectionTrace, col: usize) -> Result<()> {
    let alpha = trace.current().clone();
    let top = alpha.num_rows();
    let e = top_entry(&alpha, col + 1);
    let v = alpha.get(top - 1, col + 1).expect("a row lies below the pushed row");
    let after_phi = trace.push(Operator::Phi { col })?.clone();
    let exchanged = after_phi.top_row()[col - 1..=col] != alpha.top_row()[col - 1..=col];
    if e > v {
        if !exchanged {
            trace.push(Operator::RowSwap { col, row: top })?;
        }
    } else {
        let flip = rho_top(&after_phi, col)?;
        if flip.undefined {
            return Err(Error::Invalid(format!("flip undefined while moving the zero at column {col}")));
        }
        trace.push(Operator::Rho { col, row: top })?;
        if exchanged {
            trace.push(Operator::RowSwap { col, row: top })?;
        }
    }
    let now = trace.current();
    if !top_entry(now, col + 1).is_zero() || top_entry(now, col).is_zero() {
        return Err(Error::Invalid(format!(
            "zero did not move from column {col} to {}:\n{}",
            col + 1,
            now.to_text()
        )));
    }
    Ok(())
}

fn transport_zeros(trace: &mut BijectionTrace) -> Result<()> {
    let n = trace.current().top_row().len();
    loop {
        let top = trace.current().top_row();
        let Some(mut col) = (1..n).rev().find(|&j| top[j - 1].is_zero() && !top[j].is_zero()) else {
            break;
        };
        while col < n && !top_entry(trace.current(), col + 1).is_zero() {
            transport_step(trace, col)?;
            col += 1;
        }
    }
    trace.push(Operator::DropZeros)?;
    Ok(())
}

/// `gamma` together with every elementary step.
pub fn gamma_traced(sigma: &Filling) -> Result<BijectionTrace> {
    require_unpadded(sigma)?;
    let mut trace = BijectionTrace::new(sigma);
    if sigma.num_rows() == 0 {
        return Ok(trace);
    }
    trace.push(Operator::TakeRows { count: 1 })?;
    trace.push(Operator::ReverseBlocks)?;
    for r in 2..=sigma.num_rows() {
        let b: Vec<u32> = sigma.row(r).iter().rev().map(|v| v.as_u32()).collect();
        let n = trace.current().top_row().len();
        let mut entries = vec![0; n - b.len()];
        entries.extend(b);
        let padded = entries.len() > sigma.row(r).len();
        trace.push(Operator::PushRow { entries })?;
        if padded {
            transport_zeros(&mut trace)?;
        }
    }
    debug_assert!(trace.current().is_row_equivalent(sigma));
    Ok(trace)
}

pub fn gamma(sigma: &Filling) -> Result<Filling> {
    Ok(gamma_traced(sigma)?.output)
}

/// The `phi` passes of `theta` on a rectangle occupying columns `first..first+width`.
fn theta_passes(trace: &mut BijectionTrace, first: usize, width: usize) -> Result<()> {
    for j in 1..width {
        for i in (j..width).rev() {
            trace.push(Operator::Phi { col: first + i - 1 })?;
        }
    }
    Ok(())
}

pub fn theta_traced(sigma: &Filling) -> Result<BijectionTrace> {
    require_unpadded(sigma)?;
    if !sigma.shape().is_rectangle() {
        return Err(Error::NotRectangular(sigma.shape().parts().to_vec()));
    }
    let mut trace = BijectionTrace::new(sigma);
    trace.push(Operator::ReverseBlocks)?;
    theta_passes(&mut trace, 1, sigma.width())?;
    Ok(trace)
}

/// Reverses a rectangle and runs the passes `phi_{n-1}, ..., phi_j` for `j = 1..n-1`.
pub fn theta(sigma: &Filling) -> Result<Filling> {
    Ok(theta_traced(sigma)?.output)
}

/// `gamma`, then `theta` of the reverse of every rectangle of the result.
///
/// `theta` starts by reversing its input, so on each rectangle only the
/// `phi` passes remain.
pub fn varphi_traced(sigma: &Filling) -> Result<BijectionTrace> {
    let mut trace = gamma_traced(sigma)?;
    for b in sigma.shape().rectangle_decomposition().blocks {
        theta_passes(&mut trace, b.col_start, b.width)?;
    }
    Ok(trace)
}

pub fn varphi(sigma: &Filling) -> Result<Filling> {
    Ok(varphi_traced(sigma)?.output)
}
