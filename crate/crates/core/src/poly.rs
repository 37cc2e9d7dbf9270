//! Sparse polynomials in `q, t, u` with big-integer coefficients, t-multinomial
//! coefficients, class generating functions and finite-alphabet modified
//! Macdonald polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::enumerate::{all_fillings, enumerate_row_class};
use crate::error::{Error, Result};
use crate::filling::Filling;
use crate::partition::Partition;
use crate::statistics::{inv, maj, quinv};

/// Exponents `(e_q, e_t, e_u)`.
pub type Exponents = (u32, u32, u32);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GenPoly {
    terms: BTreeMap<Exponents, BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Substitution {
    UToT,
    UToOne,
    QToOne,
}

impl GenPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, (0, 0, 0))
    }

    pub fn monomial(coeff: i64, exps: Exponents) -> Self {
        let mut p = Self::zero();
        p.add_term(exps, BigInt::from(coeff));
        p
    }

    pub fn q() -> Self {
        Self::monomial(1, (1, 0, 0))
    }

    pub fn t() -> Self {
        Self::monomial(1, (0, 1, 0))
    }

    pub fn u() -> Self {
        Self::monomial(1, (0, 0, 1))
    }

    pub fn add_term(&mut self, exps: Exponents, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, exps: Exponents) -> BigInt {
        self.terms.get(&exps).cloned().unwrap_or_default()
    }

    /// Value at `q = t = u = 1`.
    pub fn sum_of_coefficients(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn map_exponents(&self, f: impl Fn(Exponents) -> Exponents) -> Self {
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    pub fn substitute(&self, s: Substitution) -> Self {
        match s {
            Substitution::UToT => self.map_exponents(|(a, b, c)| (a, b + c, 0)),
            Substitution::UToOne => self.map_exponents(|(a, b, _)| (a, b, 0)),
            Substitution::QToOne => self.map_exponents(|(_, b, c)| (0, b, c)),
        }
    }

    /// Exchanges `t` and `u`.
    pub fn swap_tu(&self) -> Self {
        self.map_exponents(|(a, b, c)| (a, c, b))
    }

    /// Coefficients of `t^0, t^1, ...` for a polynomial in `t` alone.
    pub fn t_coefficients(&self) -> Vec<BigInt> {
        let deg = self.terms.keys().map(|e| e.1).max().unwrap_or(0) as usize;
        let mut out = vec![BigInt::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            out[e.1 as usize] += c;
        }
        out
    }
}

impl Add for &GenPoly {
    type Output = GenPoly;
    fn add(self, rhs: &GenPoly) -> GenPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for GenPoly {
    type Output = GenPoly;
    fn add(mut self, rhs: GenPoly) -> GenPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&GenPoly> for GenPoly {
    fn add_assign(&mut self, rhs: &GenPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Mul for &GenPoly {
    type Output = GenPoly;
    fn mul(self, rhs: &GenPoly) -> GenPoly {
        let mut out = GenPoly::zero();
        for (&(a1, b1, c1), x) in &self.terms {
            for (&(a2, b2, c2), y) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2, c1 + c2), x * y);
            }
        }
        out
    }
}

impl Mul for GenPoly {
    type Output = GenPoly;
    fn mul(self, rhs: GenPoly) -> GenPoly {
        &self * &rhs
    }
}

/// Canonical form: terms by descending `(e_q, e_t, e_u)`, e.g. `q^2*t^3 + 2*q^2*t + q^2`.
impl fmt::Display for GenPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (&(a, b, c), coeff)) in self.terms.iter().rev().enumerate() {
            let mut factors = Vec::new();
            for (name, e) in [("q", a), ("t", b), ("u", c)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            let mag = coeff.abs();
            if k == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if coeff.is_negative() { "-" } else { "+" })?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for GenPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Gaussian binomial `[n choose k]_t` by the recurrence
/// `[n,k] = [n-1,k-1] + t^k [n-1,k]`.
pub fn t_binomial(n: u32, k: u32) -> GenPoly {
    if k > n {
        return GenPoly::zero();
    }
    // row[j] holds [m choose j]_t for the current m.
    let mut row = vec![GenPoly::one()];
    for m in 1..=n {
        let mut next = vec![GenPoly::zero(); (m as usize + 1).min(k as usize + 1)];
        for (j, slot) in next.iter_mut().enumerate() {
            if j < row.len() {
                *slot = &*slot + &(&row[j] * &GenPoly::monomial(1, (0, j as u32, 0)));
            }
            if j >= 1 {
                *slot += &row[j - 1];
            }
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// `[a_1 + ... + a_N; a_1, ..., a_N]_t` as a product of Gaussian binomials.
pub fn t_multinomial(multiplicities: &[u32]) -> GenPoly {
    let mut total = 0;
    let mut out = GenPoly::one();
    for &a in multiplicities {
        total += a;
        out = &out * &t_binomial(total, a);
    }
    out
}

/// Which statistics feed which variables: `maj -> q`, `inv -> t`, and
/// `quinv -> u` when `inv` is also selected, `quinv -> t` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Weights {
    pub maj: bool,
    pub inv: bool,
    pub quinv: bool,
}

impl Weights {
    pub const MAJ_INV: Weights = Weights {
        maj: true,
        inv: true,
        quinv: false,
    };
    pub const MAJ_QUINV: Weights = Weights {
        maj: true,
        inv: false,
        quinv: true,
    };
    pub const ALL: Weights = Weights {
        maj: true,
        inv: true,
        quinv: true,
    };

    pub fn exponents(&self, sigma: &Filling) -> Exponents {
        let e_q = if self.maj { maj(sigma) as u32 } else { 0 };
        let e_t = if self.inv { inv(sigma) as u32 } else { 0 };
        let e_qi = if self.quinv { quinv(sigma) as u32 } else { 0 };
        if self.inv {
            (e_q, e_t, e_qi)
        } else {
            (e_q, e_qi, 0)
        }
    }
}

/// Sum of the selected monomials over the row-equivalence class of `sigma`.
pub fn class_poly(sigma: &Filling, weights: Weights, budget: u128) -> Result<GenPoly> {
    let mut counts: BTreeMap<Exponents, u64> = BTreeMap::new();
    for tau in enumerate_row_class(sigma, budget)? {
        *counts.entry(weights.exponents(&tau)).or_default() += 1;
    }
    Ok(from_counts(counts))
}

pub(crate) fn from_counts(counts: BTreeMap<Exponents, u64>) -> GenPoly {
    let mut out = GenPoly::zero();
    for (e, c) in counts {
        out.add_term(e, BigInt::from(c));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Stat {
    Inv,
    Quinv,
}

/// Polynomials keyed by content vector (multiplicities of `1..=N`).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ContentPoly {
    pub vars: usize,
    pub terms: BTreeMap<Vec<u32>, GenPoly>,
}

impl ContentPoly {
    /// Applies a permutation of the variables: content index `k` moves to `perm[k]`.
    pub fn permute_variables(&self, perm: &[usize]) -> ContentPoly {
        let mut terms = BTreeMap::new();
        for (content, p) in &self.terms {
            let mut moved = vec![0; content.len()];
            for (k, &m) in content.iter().enumerate() {
                moved[perm[k]] = m;
            }
            terms.insert(moved, p.clone());
        }
        ContentPoly {
            vars: self.vars,
            terms,
        }
    }

    /// Invariance under every transposition of adjacent variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.vars.saturating_sub(1)).all(|k| {
            let mut perm: Vec<usize> = (0..self.vars).collect();
            perm.swap(k, k + 1);
            self.permute_variables(&perm) == *self
        })
    }

    pub fn get(&self, content: &[u32]) -> GenPoly {
        self.terms.get(content).cloned().unwrap_or_default()
    }
}

/// One line per content vector with a nonzero polynomial, e.g. `(1,1): q + 1`.
impl fmt::Display for ContentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .terms
            .iter()
            .map(|(c, p)| {
                let c: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("({}): {p}", c.join(","))
            })
            .collect();
        write!(f, "{}", lines.join("\n"))
    }
}

/// `sum over fillings with entries in 1..=vars` of `x^sigma q^maj t^stat`.
pub fn macdonald_poly(shape: &Partition, vars: usize, stat: Stat, budget: u128) -> Result<ContentPoly> {
    if vars == 0 {
        return Err(Error::Invalid("at least one variable is required".into()));
    }
    let weights = match stat {
        Stat::Inv => Weights::MAJ_INV,
        Stat::Quinv => Weights::MAJ_QUINV,
    };
    let mut counts: BTreeMap<Vec<u32>, BTreeMap<Exponents, u64>> = BTreeMap::new();
    for sigma in all_fillings(shape, vars as u32, budget)? {
        *counts
            .entry(sigma.content(vars))
            .or_default()
            .entry(weights.exponents(&sigma))
            .or_default() += 1;
    }
    Ok(ContentPoly {
        vars,
        terms: counts.into_iter().map(|(c, m)| (c, from_counts(m))).collect(),
    })
}
