//! Exhaustive checkers: brute-force generating polynomials and bijective
//! transport over small shapes, with capped, canonically ordered
//! counterexample lists.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bijections::{gamma_traced, kappa, theta, varphi};
use crate::enumerate::{all_fillings, class_representatives, class_size, enumerate_row_class, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::filling::Filling;
use crate::operators::{classify, kind_clauses, phi, rho, rho_top, row_swap, BlockKind, Side};
use crate::partition::Partition;
use crate::poly::{class_poly, from_counts, macdonald_poly, t_multinomial, GenPoly, Stat, Substitution, Weights};
use crate::statistics::{inv, maj, ndes_vector, q, quinv};
use crate::value::ExtValue;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    /// Text form of the offending filling (top row first, rows separated by `/`).
    pub filling: String,
    pub law: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: String,
    pub search_space: String,
    pub instances: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    /// Wall-clock time; not serialized, so reports compare byte-for-byte.
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theorem: {}", self.theorem)?;
        writeln!(f, "search space: {}", self.search_space)?;
        writeln!(f, "instances: {}", self.instances)?;
        writeln!(f, "violations: {}", self.violation_count)?;
        for v in &self.violations {
            writeln!(f, "- filling {} [{}]: expected {}, got {}", v.filling, v.law, v.expected, v.actual)?;
        }
        write!(f, "verdict: {}", if self.passed() { "pass" } else { "FAIL" })
    }
}

pub fn filling_label(sigma: &Filling) -> String {
    sigma.to_text().replace('\n', " / ")
}

/// Running count of checked instances and violations. Only the first `cap`
/// violations in canonical order are kept, so merging is order-independent.
#[derive(Debug, Clone, Default)]
pub struct Tally {
    pub instances: u64,
    pub violation_count: u64,
    pub violations: Vec<Violation>,
    cap: usize,
}

impl Tally {
    pub fn new(cap: usize) -> Self {
        Tally {
            cap,
            ..Default::default()
        }
    }

    pub fn instance(&mut self) {
        self.instances += 1;
    }

    pub fn fail(&mut self, sigma: &Filling, law: &str, expected: impl fmt::Display, actual: impl fmt::Display) {
        self.violation_count += 1;
        self.violations.push(Violation {
            filling: filling_label(sigma),
            law: law.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
        if self.violations.len() > self.cap.max(1).saturating_mul(4) {
            self.trim();
        }
    }

    /// Records a violation when `expected != actual`.
    pub fn expect_eq<T: PartialEq + fmt::Debug>(&mut self, sigma: &Filling, law: &str, expected: T, actual: T) {
        if expected != actual {
            self.fail(sigma, law, format!("{expected:?}"), format!("{actual:?}"));
        }
    }

    fn trim(&mut self) {
        self.violations.sort();
        self.violations.dedup();
        self.violations.truncate(self.cap);
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.violation_count += other.violation_count;
        self.violations.extend(other.violations);
        self.cap = self.cap.max(other.cap);
        self.trim();
        self
    }

    pub fn into_report(mut self, theorem: &str, search_space: String, elapsed: Duration) -> VerificationReport {
        self.trim();
        VerificationReport {
            theorem: theorem.into(),
            search_space,
            instances: self.instances,
            violation_count: self.violation_count,
            violations: self.violations,
            elapsed,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Theorem {
    T1,
    T2,
    Phi,
    Gamma,
    Theta,
    Varphi,
    L51,
    L52,
    L52Distinct,
    L53,
    L53Balanced,
    L63,
    Tables,
    Square,
    BlockPartition,
    Invq,
    TransposeMaj,
    Macdonald,
}

impl Theorem {
    pub const ALL: [Theorem; 18] = [
        Theorem::T1,
        Theorem::T2,
        Theorem::Phi,
        Theorem::Gamma,
        Theorem::Theta,
        Theorem::Varphi,
        Theorem::L51,
        Theorem::L52,
        Theorem::L52Distinct,
        Theorem::L53,
        Theorem::L53Balanced,
        Theorem::L63,
        Theorem::Tables,
        Theorem::Square,
        Theorem::BlockPartition,
        Theorem::Invq,
        Theorem::TransposeMaj,
        Theorem::Macdonald,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::Phi => "phi",
            Theorem::Gamma => "gamma",
            Theorem::Theta => "theta",
            Theorem::Varphi => "varphi",
            Theorem::L51 => "L5.1",
            Theorem::L52 => "L5.2",
            Theorem::L52Distinct => "L5.2-distinct",
            Theorem::L53 => "L5.3",
            Theorem::L53Balanced => "L5.3-balanced",
            Theorem::L63 => "L6.3",
            Theorem::Tables => "tables",
            Theorem::Square => "square",
            Theorem::BlockPartition => "block-partition",
            Theorem::Invq => "invq",
            Theorem::TransposeMaj => "transpose-maj",
            Theorem::Macdonald => "macdonald",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Theorem {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Invalid(format!("unknown theorem {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ShapeSet {
    UpToSize(usize),
    Rectangles { max_cols: usize, max_rows: usize },
    Exact(Vec<Partition>),
}

impl ShapeSet {
    pub fn shapes(&self) -> Vec<Partition> {
        match self {
            ShapeSet::UpToSize(n) => Partition::all_up_to_size(*n),
            ShapeSet::Rectangles { max_cols, max_rows } => (1..=*max_cols)
                .flat_map(|w| (1..=*max_rows).map(move |h| Partition::rectangle(w, h)))
                .collect(),
            ShapeSet::Exact(v) => v.clone(),
        }
    }

    fn describe(&self) -> String {
        match self {
            ShapeSet::UpToSize(n) => format!("all partitions of size <= {n}"),
            ShapeSet::Rectangles { max_cols, max_rows } => {
                format!("rectangles up to {max_cols} columns x {max_rows} rows")
            }
            ShapeSet::Exact(v) => {
                let names: Vec<String> = v.iter().map(ToString::to_string).collect();
                format!("shapes {}", names.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub shapes: ShapeSet,
    /// Entries range over `1..=max_entry` (the value range for `tables`,
    /// `square` and `block-partition`; the variable count for `macdonald`).
    pub max_entry: u32,
    pub workers: usize,
    pub violation_cap: usize,
    pub budget: u128,
}

impl SweepConfig {
    pub fn new(shapes: ShapeSet, max_entry: u32) -> Self {
        SweepConfig {
            shapes,
            max_entry,
            workers: 1,
            violation_cap: 10,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    fn describe(&self, theorem: Theorem) -> String {
        match theorem {
            Theorem::Tables | Theorem::Square | Theorem::BlockPartition => {
                format!("values in 1..={}", self.max_entry)
            }
            Theorem::Macdonald => format!("{}, {} variables", self.shapes.describe(), self.max_entry),
            _ => format!("{}, entries in 1..={}", self.shapes.describe(), self.max_entry),
        }
    }
}

fn chi(b: bool) -> i64 {
    b as i64
}

fn signed(n: usize) -> i64 {
    n as i64
}

fn stats3(sigma: &Filling) -> (usize, usize, usize) {
    (inv(sigma), quinv(sigma), maj(sigma))
}

fn sorted(mut v: Vec<Filling>) -> Vec<Filling> {
    v.sort();
    v
}

/// Applies `f` to every item on a pool with `workers` threads and merges the tallies.
fn run_parallel<T, F>(items: &[T], workers: usize, cap: usize, f: F) -> Result<Tally>
where
    T: Sync,
    F: Fn(&T) -> Result<Tally> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        items
            .par_iter()
            .map(&f)
            .try_reduce(|| Tally::new(cap), |a, b| Ok(a.merge(b)))
    })
}

// ---------------------------------------------------------------------------
// Class-level checks

fn class_members(sigma: &Filling, budget: u128) -> Result<Vec<Filling>> {
    Ok(enumerate_row_class(sigma, budget)?.collect())
}

/// `sum q^maj t^inv = sum q^maj t^quinv` over the class, by brute force and by
/// transport along `varphi`.
pub fn check_t1_tally(sigma: &Filling, budget: u128, cap: usize) -> Result<Tally> {
    let mut tally = Tally::new(cap);
    let members = class_members(sigma, budget)?;
    let by_inv = class_poly(sigma, Weights::MAJ_INV, budget)?;
    let by_quinv = class_poly(sigma, Weights::MAJ_QUINV, budget)?;
    let poly_ok = by_inv == by_quinv;
    if !poly_ok {
        tally.fail(sigma, "polynomial", &by_inv, &by_quinv);
    }
    let before = tally.violation_count;
    let mut images = Vec::with_capacity(members.len());
    for tau in &members {
        tally.instance();
        match varphi(tau) {
            Ok(p) => {
                tally.expect_eq(tau, "transport (quinv,maj)", (inv(tau), maj(tau)), (quinv(&p), maj(&p)));
                images.push(p);
            }
            Err(e) => tally.fail(tau, "transport", "an image", e),
        }
    }
    if sorted(images) != members {
        tally.fail(sigma, "transport bijective", "image equals class", "image differs from class");
    }
    let transport_ok = tally.violation_count == before;
    if poly_ok != transport_ok {
        tally.fail(
            sigma,
            "oracle agreement",
            format!("polynomial verdict {poly_ok}"),
            format!("transport verdict {transport_ok}"),
        );
    }
    Ok(tally)
}

/// Triple-statistic symmetry `t <-> u` over the class. On rectangles this is a
/// theorem and is also checked by transport along `theta`; elsewhere every
/// member whose swapped triple is under-represented is reported.
pub fn check_t2_tally(sigma: &Filling, budget: u128, cap: usize) -> Result<Tally> {
    let mut tally = Tally::new(cap);
    let members = class_members(sigma, budget)?;
    let mut counts: BTreeMap<(u32, u32, u32), u64> = BTreeMap::new();
    for tau in &members {
        tally.instance();
        *counts.entry(Weights::ALL.exponents(tau)).or_default() += 1;
    }
    let poly = from_counts(counts.clone());
    if poly != poly.swap_tu() {
        for tau in &members {
            let (m, i, qi) = Weights::ALL.exponents(tau);
            let have = counts.get(&(m, qi, i)).copied().unwrap_or(0);
            let need = counts[&(m, i, qi)];
            if have != need {
                tally.fail(
                    tau,
                    "t<->u partner",
                    format!("{need} member(s) with (maj,inv,quinv)=({m},{qi},{i})"),
                    have,
                );
            }
        }
    }
    if sigma.shape().is_rectangle() {
        let mut images = Vec::with_capacity(members.len());
        for tau in &members {
            let p = theta(tau)?;
            let (i, qi, m) = stats3(tau);
            tally.expect_eq(tau, "theta transport (quinv,inv,maj)", (i, qi, m), (quinv(&p), inv(&p), maj(&p)));
            images.push(p);
        }
        if sorted(images) != members {
            tally.fail(sigma, "theta bijective", "image equals class", "image differs from class");
        }
    }
    Ok(tally)
}

fn class_report(
    theorem: &str,
    sigma: &Filling,
    budget: u128,
    check: impl Fn(&Filling, u128, usize) -> Result<Tally>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let tally = check(sigma, budget, 10)?;
    let space = format!("row class of {} ({} members)", filling_label(sigma), class_size(sigma));
    Ok(tally.into_report(theorem, space, start.elapsed()))
}

pub fn check_t1(sigma: &Filling, budget: u128) -> Result<VerificationReport> {
    class_report("T1", sigma, budget, check_t1_tally)
}

pub fn check_t2(sigma: &Filling, budget: u128) -> Result<VerificationReport> {
    class_report("T2", sigma, budget, check_t2_tally)
}

/// At `q = 1` the class polynomial is a product of row t-multinomials, for `inv` and for `quinv`.
pub fn check_invq_tally(sigma: &Filling, budget: u128, cap: usize) -> Result<Tally> {
    let mut tally = Tally::new(cap);
    tally.instance();
    let expected = sigma
        .row_signature()
        .iter()
        .map(|row| {
            let mut mult: BTreeMap<ExtValue, u32> = BTreeMap::new();
            for v in row {
                *mult.entry(*v).or_default() += 1;
            }
            t_multinomial(&mult.into_values().collect::<Vec<_>>())
        })
        .fold(GenPoly::one(), |acc, p| &acc * &p);
    for (law, w) in [("inv", Weights::MAJ_INV), ("quinv", Weights::MAJ_QUINV)] {
        let got = class_poly(sigma, w, budget)?.substitute(Substitution::QToOne);
        if got != expected {
            tally.fail(sigma, law, &expected, &got);
        }
    }
    Ok(tally)
}

/// `sum t^maj(transpose) = sum t^inv` over the class.
pub fn check_transpose_maj_tally(sigma: &Filling, budget: u128, cap: usize) -> Result<Tally> {
    let mut tally = Tally::new(cap);
    let mut by_inv: BTreeMap<(u32, u32, u32), u64> = BTreeMap::new();
    let mut by_maj: BTreeMap<(u32, u32, u32), u64> = BTreeMap::new();
    for tau in enumerate_row_class(sigma, budget)? {
        tally.instance();
        *by_inv.entry((0, inv(&tau) as u32, 0)).or_default() += 1;
        *by_maj.entry((0, maj(&tau.transpose()?) as u32, 0)).or_default() += 1;
    }
    let (a, b) = (from_counts(by_inv), from_counts(by_maj));
    if a != b {
        tally.fail(sigma, "transpose maj", &a, &b);
    }
    Ok(tally)
}

// ---------------------------------------------------------------------------
// Filling-level suites

/// Equations of the involution on every compatible column pair of `sigma`.
pub fn phi_laws(sigma: &Filling, tally: &mut Tally) -> Result<()> {
    let x = ndes_vector(sigma);
    for i in sigma.shape().compatible_columns() {
        tally.instance();
        let p = phi(sigma, i)?;
        let shift = signed(x[i]) - signed(x[i - 1]);
        tally.expect_eq(sigma, &format!("phi_{i} maj"), maj(sigma), maj(&p));
        tally.expect_eq(sigma, &format!("phi_{i} inv"), signed(inv(sigma)) + shift, signed(inv(&p)));
        tally.expect_eq(sigma, &format!("phi_{i} quinv"), signed(quinv(sigma)) + shift, signed(quinv(&p)));
        let mut swapped = x.clone();
        swapped.swap(i - 1, i);
        tally.expect_eq(sigma, &format!("phi_{i} ndes"), swapped, ndes_vector(&p));
        if phi(&p, i)? != *sigma {
            tally.fail(sigma, &format!("phi_{i} involution"), filling_label(sigma), filling_label(&p));
        }
        if !p.is_row_equivalent(sigma) {
            tally.fail(sigma, &format!("phi_{i} rows"), "row-equivalent", filling_label(&p));
        }
    }
    Ok(())
}

fn leftmost_block(sigma: &Filling) -> Filling {
    sigma.blocks().into_iter().next().unwrap_or_else(Filling::empty)
}

/// Properties of `gamma` on a single filling; returns the image.
pub fn gamma_laws(sigma: &Filling, tally: &mut Tally) -> Result<Filling> {
    tally.instance();
    let trace = gamma_traced(sigma)?;
    let g = trace.output.clone();
    if let Err(e) = trace.replay() {
        tally.fail(sigma, "gamma replay", "replay reproduces output", e);
    }
    if !g.is_row_equivalent(sigma) {
        tally.fail(sigma, "gamma rows", "row-equivalent", filling_label(&g));
    }
    tally.expect_eq(sigma, "gamma maj", maj(sigma), maj(&g));
    tally.expect_eq(sigma, "gamma quinv - kappa", signed(inv(sigma)), signed(quinv(&g)) - kappa(&g));
    if sigma.num_rows() > 0 {
        let mut top: Vec<ExtValue> = sigma.top_row().to_vec();
        top.reverse();
        tally.expect_eq(sigma, "gamma top row", top, g.top_row().to_vec());
    }
    tally.expect_eq(
        sigma,
        "gamma leftmost ndes",
        ndes_vector(&leftmost_block(sigma)),
        ndes_vector(&leftmost_block(&g).reverse()),
    );
    Ok(g)
}

pub fn theta_laws(sigma: &Filling, tally: &mut Tally) -> Result<Filling> {
    tally.instance();
    let p = theta(sigma)?;
    let (i, qi, m) = stats3(sigma);
    tally.expect_eq(sigma, "theta (quinv,inv,maj)", (i, qi, m), (quinv(&p), inv(&p), maj(&p)));
    tally.expect_eq(sigma, "theta ndes", ndes_vector(sigma), ndes_vector(&p));
    if !p.is_row_equivalent(sigma) {
        tally.fail(sigma, "theta rows", "row-equivalent", filling_label(&p));
    }
    Ok(p)
}

pub fn varphi_laws(sigma: &Filling, tally: &mut Tally) -> Result<Filling> {
    tally.instance();
    let p = varphi(sigma)?;
    tally.expect_eq(sigma, "varphi (quinv,maj)", (inv(sigma), maj(sigma)), (quinv(&p), maj(&p)));
    if sigma.shape().is_rectangle() {
        tally.expect_eq(sigma, "varphi inv", quinv(sigma), inv(&p));
    }
    if !p.is_row_equivalent(sigma) {
        tally.fail(sigma, "varphi rows", "row-equivalent", filling_label(&p));
    }
    Ok(p)
}

/// `quinv(s) - inv(s^r) = inv(s) - quinv(s^r) = sum x_i (n - 2i + 1)` on rectangles.
pub fn lemma_5_1_laws(sigma: &Filling, tally: &mut Tally) {
    tally.instance();
    let n = signed(sigma.width());
    let x = ndes_vector(sigma);
    let rhs: i64 = x
        .iter()
        .enumerate()
        .map(|(k, &xi)| signed(xi) * (n - 2 * (k as i64 + 1) + 1))
        .sum();
    let r = sigma.reverse();
    tally.expect_eq(sigma, "quinv - inv(rev)", rhs, signed(quinv(sigma)) - signed(inv(&r)));
    tally.expect_eq(sigma, "inv - quinv(rev)", rhs, signed(inv(sigma)) - signed(quinv(&r)));
}

/// The top-row flip: `maj` preserved and `quinv` shifted by `[a>b] - [a<b]`,
/// where `a, b` are the top entries of the two columns. With
/// `distinct_top`, pairs whose top entries coincide are skipped (the flip
/// then starts below the top row).
pub fn lemma_5_2_laws(sigma: &Filling, tally: &mut Tally, distinct_top: bool) -> Result<()> {
    for i in sigma.shape().compatible_columns() {
        let top = sigma.col_height(i);
        let (a, b) = (sigma.read(top, i)?, sigma.read(top, i + 1)?);
        let res = rho_top(sigma, i)?;
        if res.identity || (distinct_top && a == b) {
            continue;
        }
        tally.instance();
        let p = &res.filling;
        tally.expect_eq(sigma, &format!("rho_{i} maj"), maj(sigma), maj(p));
        tally.expect_eq(
            sigma,
            &format!("rho_{i} quinv"),
            signed(quinv(sigma)) + chi(a > b) - chi(a < b),
            signed(quinv(p)),
        );
    }
    Ok(())
}

/// The four +-1 laws of the flip started at any row, and `maj` invariance.
/// The `quinv` laws are conditioned on the starting row, the `inv` laws on
/// the ending row. With `balanced_start`, only flips whose starting row is
/// balanced against the row above are checked.
pub fn lemma_5_3_laws(sigma: &Filling, tally: &mut Tally, balanced_start: bool) -> Result<()> {
    for i in sigma.shape().compatible_columns() {
        for r in 1..=sigma.col_height(i) {
            let res = rho(sigma, i, r)?;
            if res.identity {
                continue;
            }
            let p = &res.filling;
            let (k, h) = (res.start_row, res.end_row);
            let rd = |row: usize, col: usize| sigma.read(row, col);
            let (a, b, c, d) = (rd(k + 1, i)?, rd(k + 1, i + 1)?, rd(k, i)?, rd(k, i + 1)?);
            let (s, t, u, v) = (rd(h, i)?, rd(h, i + 1)?, rd(h - 1, i)?, rd(h - 1, i + 1)?);
            if balanced_start && q(a, c, d) != q(b, c, d) {
                continue;
            }
            tally.instance();
            let law = |name: &str| format!("rho_{i}^{r} {name}");
            let dq = signed(quinv(p)) - signed(quinv(sigma));
            let di = signed(inv(p)) - signed(inv(sigma));
            match (q(a, c, d), q(b, c, d)) {
                (false, false) => tally.expect_eq(sigma, &law("quinv +1"), 1, dq),
                (true, true) => tally.expect_eq(sigma, &law("quinv -1"), -1, dq),
                _ => {}
            }
            match (q(s, u, t), q(s, v, t)) {
                (false, false) => tally.expect_eq(sigma, &law("inv +1"), 1, di),
                (true, true) => tally.expect_eq(sigma, &law("inv -1"), -1, di),
                _ => {}
            }
            tally.expect_eq(sigma, &law("maj"), maj(sigma), maj(p));
        }
    }
    Ok(())
}

/// Swapping the top entries `a, b` of columns `i, i+1` of a rectangle over
/// `c, d`: if `a<d<b<=c`, `quinv` rises by `n-i-1` and `maj` drops by one;
/// if `a<c<b<=d`, `quinv` drops by `n-i+1` and `maj` rises by one.
pub fn lemma_6_3_laws(sigma: &Filling, tally: &mut Tally) -> Result<()> {
    let n = signed(sigma.width());
    let m = sigma.num_rows();
    for i in 1..sigma.width() {
        let rd = |row: usize, col: usize| sigma.read(row, col);
        let (a, b, c, d) = (rd(m, i)?, rd(m, i + 1)?, rd(m - 1, i)?, rd(m - 1, i + 1)?);
        let (dq, dm) = if a < d && d < b && b <= c {
            (n - signed(i) - 1, -1)
        } else if a < c && c < b && b <= d {
            (-(n - signed(i) + 1), 1)
        } else {
            continue;
        };
        tally.instance();
        let p = row_swap(sigma, i, m)?;
        tally.expect_eq(
            sigma,
            &format!("t_{i} (quinv, maj) shift"),
            (dq, dm),
            (signed(quinv(&p)) - signed(quinv(sigma)), signed(maj(&p)) - signed(maj(sigma))),
        );
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Value-level suites

fn values(max: u32) -> impl Iterator<Item = ExtValue> + Clone {
    (1..=max).map(ExtValue::from_u32)
}

fn value_label(xs: &[ExtValue]) -> String {
    let parts: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn value_fail(tally: &mut Tally, xs: &[ExtValue], law: &str, expected: impl fmt::Display, actual: impl fmt::Display) {
    tally.violation_count += 1;
    tally.violations.push(Violation {
        filling: value_label(xs),
        law: law.into(),
        expected: expected.to_string(),
        actual: actual.to_string(),
    });
}

/// The two queue-inversion exchange tables, over `(a,b,c,d,z)` in `1..=max`.
pub fn tables_tally(max: u32, cap: usize) -> Tally {
    let mut tally = Tally::new(cap);
    let qi = |x, y, z| i64::from(crate::statistics::triple_indicator(x, y, z));
    for a in values(max) {
        for b in values(max) {
            for c in values(max) {
                for d in values(max) {
                    let first = (d >= a && a > b && b > c) || (d >= b && b >= a && a > c);
                    let second = c >= b && b > d && d > a;
                    if !first && !second {
                        continue;
                    }
                    for z in values(max) {
                        tally.instance();
                        let lhs = qi(a, c, z) + qi(b, d, z) + chi(second);
                        let rhs = qi(a, d, z) + qi(b, c, z);
                        if lhs != rhs {
                            let law = if first { "table 1" } else { "table 2" };
                            value_fail(&mut tally, &[a, b, c, d, z], law, lhs, rhs);
                        }
                    }
                }
            }
        }
    }
    tally.trim();
    tally
}

/// `Q(a,c,b) = Q(a,d,b)` iff `Q(a,c,d) = Q(b,c,d)`.
pub fn square_tally(max: u32, cap: usize) -> Tally {
    let mut tally = Tally::new(cap);
    for a in values(max) {
        for b in values(max) {
            for c in values(max) {
                for d in values(max) {
                    tally.instance();
                    let lhs = q(a, c, b) == q(a, d, b);
                    let rhs = q(a, c, d) == q(b, c, d);
                    if lhs != rhs {
                        value_fail(&mut tally, &[a, b, c, d], "square", lhs, rhs);
                    }
                }
            }
        }
    }
    tally.trim();
    tally
}

/// Every descent block matches exactly one kind clause; neutral blocks match
/// none; kinds A and B are exactly the descent blocks balanced on the lower row.
pub fn block_partition_tally(max: u32, cap: usize) -> Tally {
    let mut tally = Tally::new(cap);
    for a in values(max) {
        for b in values(max) {
            for c in values(max) {
                for d in values(max) {
                    tally.instance();
                    let hits: Vec<BlockKind> = kind_clauses(a, b, c, d)
                        .into_iter()
                        .filter(|&(_, h)| h)
                        .map(|(k, _)| k)
                        .collect();
                    let descent = (a > c) != (b > d);
                    let xs = [a, b, c, d];
                    if descent && hits.len() != 1 {
                        value_fail(&mut tally, &xs, "exactly one clause", 1, hits.len());
                        continue;
                    }
                    if !descent && !hits.is_empty() {
                        value_fail(&mut tally, &xs, "neutral matches no clause", 0, hits.len());
                        continue;
                    }
                    if descent {
                        let (side, kind) = classify(a, b, c, d);
                        let balanced = q(a, c, d) == q(b, c, d);
                        if balanced != matches!(kind, BlockKind::A | BlockKind::B) {
                            value_fail(&mut tally, &xs, "kinds A,B balanced", balanced, format!("{kind:?}"));
                        }
                        let want = if a > c { Side::Left } else { Side::Right };
                        if side != want {
                            value_fail(&mut tally, &xs, "side", format!("{want:?}"), format!("{side:?}"));
                        }
                    }
                }
            }
        }
    }
    tally.trim();
    tally
}

// ---------------------------------------------------------------------------
// Shape-level suites

/// Runs `laws` on every filling of `shape`; when `injective` is set, also
/// checks that the returned images are pairwise distinct.
fn shape_suite(
    shape: &Partition,
    max_entry: u32,
    budget: u128,
    cap: usize,
    injective: bool,
    laws: impl Fn(&Filling, &mut Tally) -> Result<Option<Filling>>,
) -> Result<Tally> {
    let mut tally = Tally::new(cap);
    let mut images = BTreeSet::new();
    let mut count = 0usize;
    for sigma in all_fillings(shape, max_entry, budget)? {
        count += 1;
        if let Some(img) = laws(&sigma, &mut tally)? {
            images.insert(img);
        }
    }
    if injective && images.len() != count {
        let rep = all_fillings(shape, max_entry, budget)?.next().expect("shape has a filling");
        tally.fail(&rep, &format!("bijective on {shape}"), count, images.len());
    }
    Ok(tally)
}

pub fn phi_suite(shape: &Partition, max_entry: u32, budget: u128, cap: usize) -> Result<Tally> {
    shape_suite(shape, max_entry, budget, cap, false, |s, t| phi_laws(s, t).map(|_| None))
}

pub fn gamma_suite(shape: &Partition, max_entry: u32, budget: u128, cap: usize) -> Result<Tally> {
    shape_suite(shape, max_entry, budget, cap, true, |s, t| gamma_laws(s, t).map(Some))
}

pub fn theta_suite(shape: &Partition, max_entry: u32, budget: u128, cap: usize) -> Result<Tally> {
    if !shape.is_rectangle() {
        return Err(Error::NotRectangular(shape.parts().to_vec()));
    }
    shape_suite(shape, max_entry, budget, cap, true, |s, t| theta_laws(s, t).map(Some))
}

pub fn varphi_suite(shape: &Partition, max_entry: u32, budget: u128, cap: usize) -> Result<Tally> {
    shape_suite(shape, max_entry, budget, cap, true, |s, t| varphi_laws(s, t).map(Some))
}

/// `macdonald_poly` with `inv` equals it with `quinv`, and both are symmetric.
pub fn macdonald_tally(shape: &Partition, vars: usize, budget: u128, cap: usize) -> Result<Tally> {
    let mut tally = Tally::new(cap);
    tally.instance();
    let a = macdonald_poly(shape, vars, Stat::Inv, budget)?;
    let b = macdonald_poly(shape, vars, Stat::Quinv, budget)?;
    let label = Filling::from_rows(shape.parts().iter().map(|&n| vec![1; n]).collect())?;
    if a != b {
        for content in a.terms.keys().chain(b.terms.keys()).collect::<BTreeSet<_>>() {
            let (x, y) = (a.get(content), b.get(content));
            if x != y {
                tally.fail(&label, &format!("content {content:?} inv vs quinv"), &x, &y);
            }
        }
    }
    if !a.is_symmetric() {
        tally.fail(&label, "inv form symmetric", true, false);
    }
    if !b.is_symmetric() {
        tally.fail(&label, "quinv form symmetric", true, false);
    }
    Ok(tally)
}

pub fn check_macdonald(shape: &Partition, vars: usize, budget: u128) -> Result<VerificationReport> {
    let start = Instant::now();
    let tally = macdonald_tally(shape, vars, budget, 10)?;
    Ok(tally.into_report("macdonald", format!("shape {shape}, {vars} variables"), start.elapsed()))
}

/// Runs `theorem` on a single filling: the class checks on its class, the
/// filling-level laws on the filling itself.
pub fn check_filling(theorem: Theorem, sigma: &Filling, budget: u128, cap: usize) -> Result<VerificationReport> {
    let start = Instant::now();
    if matches!(theorem, Theorem::Theta | Theorem::L51 | Theorem::L63) && !sigma.shape().is_rectangle() {
        return Err(Error::NotRectangular(sigma.shape().parts().to_vec()));
    }
    let mut tally = Tally::new(cap);
    match theorem {
        Theorem::T1 => tally = check_t1_tally(sigma, budget, cap)?,
        Theorem::T2 => tally = check_t2_tally(sigma, budget, cap)?,
        Theorem::Invq => tally = check_invq_tally(sigma, budget, cap)?,
        Theorem::TransposeMaj => tally = check_transpose_maj_tally(sigma, budget, cap)?,
        Theorem::Phi => phi_laws(sigma, &mut tally)?,
        Theorem::Gamma => drop(gamma_laws(sigma, &mut tally)?),
        Theorem::Theta => drop(theta_laws(sigma, &mut tally)?),
        Theorem::Varphi => drop(varphi_laws(sigma, &mut tally)?),
        Theorem::L51 => lemma_5_1_laws(sigma, &mut tally),
        Theorem::L52 => lemma_5_2_laws(sigma, &mut tally, false)?,
        Theorem::L52Distinct => lemma_5_2_laws(sigma, &mut tally, true)?,
        Theorem::L53 => lemma_5_3_laws(sigma, &mut tally, false)?,
        Theorem::L53Balanced => lemma_5_3_laws(sigma, &mut tally, true)?,
        Theorem::L63 => lemma_6_3_laws(sigma, &mut tally)?,
        Theorem::Tables | Theorem::Square | Theorem::BlockPartition | Theorem::Macdonald => {
            return Err(Error::Invalid(format!("{theorem} ranges over values, not fillings")));
        }
    }
    Ok(tally.into_report(theorem.id(), format!("filling {}", filling_label(sigma)), start.elapsed()))
}

// ---------------------------------------------------------------------------
// Sweeps

fn rectangles_only(shapes: Vec<Partition>) -> Vec<Partition> {
    shapes.into_iter().filter(|s| s.is_rectangle() && !s.is_empty()).collect()
}

/// Runs `theorem` over the configured search space.
pub fn sweep(theorem: Theorem, cfg: &SweepConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let (n, budget, cap, w) = (cfg.max_entry, cfg.budget, cfg.violation_cap, cfg.workers);
    let shapes = cfg.shapes.shapes();
    let classes = |shapes: &[Partition]| -> Vec<Filling> {
        shapes.iter().flat_map(|s| class_representatives(s, n)).collect()
    };
    let per_filling = |shapes: &[Partition], laws: fn(&Filling, &mut Tally) -> Result<()>| {
        run_parallel(shapes, w, cap, move |s| {
            shape_suite(s, n, budget, cap, false, |f, t| laws(f, t).map(|_| None))
        })
    };
    let tally = match theorem {
        Theorem::T1 => run_parallel(&classes(&shapes), w, cap, |s| check_t1_tally(s, budget, cap))?,
        Theorem::T2 => run_parallel(&classes(&shapes), w, cap, |s| check_t2_tally(s, budget, cap))?,
        Theorem::Invq => run_parallel(&classes(&shapes), w, cap, |s| check_invq_tally(s, budget, cap))?,
        Theorem::TransposeMaj => {
            run_parallel(&classes(&shapes), w, cap, |s| check_transpose_maj_tally(s, budget, cap))?
        }
        Theorem::Phi => run_parallel(&shapes, w, cap, |s| phi_suite(s, n, budget, cap))?,
        Theorem::Gamma => run_parallel(&shapes, w, cap, |s| gamma_suite(s, n, budget, cap))?,
        Theorem::Varphi => run_parallel(&shapes, w, cap, |s| varphi_suite(s, n, budget, cap))?,
        Theorem::Theta => run_parallel(&rectangles_only(shapes), w, cap, |s| theta_suite(s, n, budget, cap))?,
        Theorem::L51 => per_filling(&rectangles_only(shapes), |f, t| {
            lemma_5_1_laws(f, t);
            Ok(())
        })?,
        Theorem::L52 => per_filling(&shapes, |f, t| lemma_5_2_laws(f, t, false))?,
        Theorem::L52Distinct => per_filling(&shapes, |f, t| lemma_5_2_laws(f, t, true))?,
        Theorem::L53 => per_filling(&shapes, |f, t| lemma_5_3_laws(f, t, false))?,
        Theorem::L53Balanced => per_filling(&shapes, |f, t| lemma_5_3_laws(f, t, true))?,
        Theorem::L63 => per_filling(&rectangles_only(shapes), lemma_6_3_laws)?,
        Theorem::Tables => tables_tally(n, cap),
        Theorem::Square => square_tally(n, cap),
        Theorem::BlockPartition => block_partition_tally(n, cap),
        Theorem::Macdonald => run_parallel(&shapes, w, cap, |s| macdonald_tally(s, n as usize, budget, cap))?,
    };
    Ok(tally.into_report(theorem.id(), cfg.describe(theorem), start.elapsed()))
}
