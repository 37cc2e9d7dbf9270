//! Acceptance suite. Prints one line per criterion and exits non-zero when a
//! criterion deviates from its recorded outcome.
//!
//! Criterion 8 is expected to print FAIL: the literal top-row flip law
//! breaks when the two top entries coincide, and the literal any-row flip
//! laws break when the starting row is unbalanced. The suite checks that every
//! recorded violation falls in exactly that region and that the restricted
//! forms hold.

use std::process::ExitCode;
use std::time::Instant;

use quinv_core::bijections::varphi_traced;
use quinv_core::enumerate::enumerate_row_class;
use quinv_core::fixtures::*;
use quinv_core::operators::{range_swap, rho, rho_top};
use quinv_core::poly::{macdonald_poly, GenPoly, Stat};
use quinv_core::statistics::{inv, maj, ndes_vector, q, quinv};
use quinv_core::verify::{check_macdonald, check_t1, check_t2, sweep, ShapeSet, SweepConfig, Theorem};
use quinv_core::{gamma, phi, varphi, Filling, Partition, VerificationReport, DEFAULT_BUDGET};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn f_top(rows: &[&[u32]]) -> Vec<Vec<u32>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

/// Columns `c0..=c1` of every row reaching column `c1`, top row first.
fn window(sigma: &Filling, c0: usize, c1: usize) -> Vec<Vec<u32>> {
    sigma
        .rows_top_to_bottom()
        .into_iter()
        .filter(|r| r.len() >= c1)
        .map(|r| r[c0 - 1..c1].to_vec())
        .collect()
}

/// Index of the last match if every picture appears in `states` in order.
/// Consecutive pictures may be different windows of one state.
fn find_in_order(states: &[&Filling], from: usize, pictures: &[(usize, usize, Vec<Vec<u32>>)]) -> Option<usize> {
    let mut at = from;
    for (c0, c1, pic) in pictures {
        let k = states[at..].iter().position(|s| window(s, *c0, *c1) == *pic)?;
        at += k;
    }
    Some(at)
}

fn criterion_1() -> Outcome {
    let s = mixed_shape_sigma();
    let p = mixed_shape_varphi();
    let got = ((maj(&s), inv(&s), quinv(&s)), (maj(&p), quinv(&p), inv(&p)));
    outcome(
        got == ((33, 40, 32), (33, 40, 34)),
        format!("sigma (maj,inv,quinv)={:?}, varphi(sigma) (maj,quinv,inv)={:?}", got.0, got.1),
    )
}

fn criterion_2() -> Outcome {
    let s = mixed_shape_sigma();
    let (Ok(g), Ok(p), Ok(trace)) = (gamma(&s), varphi(&s), varphi_traced(&s)) else {
        return outcome(false, "bijection returned an error");
    };
    let states: Vec<&Filling> = trace.states().collect();
    let phase1: Vec<Vec<Vec<u32>>> = vec![
        f_top(&[&[0, 0, 5, 3, 7, 9, 3], &[7, 8, 4, 6, 4, 8, 5], &[1, 10, 2, 5, 6, 3, 9]]),
        f_top(&[&[0, 5, 0, 3, 7, 9, 3], &[7, 4, 8, 6, 4, 8, 5], &[1, 2, 10, 5, 6, 3, 9]]),
        f_top(&[&[0, 5, 3, 0, 7, 9, 3], &[7, 4, 8, 6, 4, 8, 5], &[1, 2, 5, 10, 6, 3, 9]]),
        f_top(&[&[0, 5, 3, 7, 0, 9, 3], &[7, 4, 8, 6, 4, 8, 5], &[1, 2, 5, 10, 6, 3, 9]]),
        f_top(&[&[0, 5, 3, 7, 9, 0, 3], &[7, 4, 8, 6, 8, 4, 5], &[1, 2, 5, 10, 3, 6, 9]]),
        f_top(&[&[0, 5, 3, 7, 9, 3, 0], &[7, 4, 8, 6, 8, 4, 5], &[1, 2, 5, 10, 3, 6, 9]]),
        f_top(&[&[5, 0, 3, 7, 9, 3, 0], &[4, 7, 8, 6, 8, 4, 5], &[1, 2, 5, 10, 3, 6, 9]]),
        f_top(&[&[5, 3, 0, 7, 9, 3, 0], &[4, 7, 8, 6, 8, 4, 5], &[1, 2, 5, 10, 3, 6, 9]]),
        f_top(&[&[5, 3, 7, 0, 9, 3, 0], &[4, 7, 6, 8, 8, 4, 5], &[1, 2, 10, 5, 3, 6, 9]]),
        f_top(&[&[5, 3, 7, 9, 0, 3, 0], &[4, 7, 6, 8, 8, 4, 5], &[1, 2, 10, 5, 3, 6, 9]]),
        f_top(&[&[5, 3, 7, 9, 3, 0, 0], &[4, 7, 6, 8, 4, 8, 5], &[1, 2, 10, 5, 6, 3, 9]]),
    ];
    let phase1: Vec<(usize, usize, Vec<Vec<u32>>)> = phase1.into_iter().map(|p| (1, 7, p)).collect();
    let phase2 = vec![
        (3, 5, f_top(&[&[0, 4, 5], &[6, 3, 9], &[9, 5, 2], &[7, 9, 3], &[6, 8, 4], &[10, 5, 6]])),
        (3, 5, f_top(&[&[4, 0, 5], &[6, 3, 9], &[9, 5, 2], &[7, 9, 3], &[6, 8, 4], &[5, 10, 6]])),
        (3, 5, f_top(&[&[4, 5, 0], &[6, 9, 3], &[9, 2, 5], &[7, 3, 9], &[6, 8, 4], &[5, 10, 6]])),
        (2, 4, f_top(&[&[0, 4, 5], &[1, 6, 9], &[4, 9, 2], &[3, 7, 3], &[7, 6, 8], &[2, 5, 10]])),
        (2, 4, f_top(&[&[4, 0, 5], &[1, 6, 9], &[4, 9, 2], &[3, 7, 3], &[7, 6, 8], &[2, 5, 10]])),
        (2, 4, f_top(&[&[4, 5, 0], &[1, 6, 9], &[4, 9, 2], &[3, 3, 7], &[7, 8, 6], &[2, 10, 5]])),
        (1, 3, f_top(&[&[0, 4, 5], &[3, 1, 6], &[8, 4, 9], &[5, 3, 3], &[4, 7, 8], &[1, 2, 10]])),
        (1, 3, f_top(&[&[4, 0, 5], &[3, 1, 6], &[4, 8, 9], &[3, 5, 3], &[7, 4, 8], &[1, 2, 10]])),
        (1, 3, f_top(&[&[4, 5, 0], &[3, 6, 1], &[4, 8, 9], &[3, 3, 5], &[7, 8, 4], &[1, 10, 2]])),
    ];
    let Some(after_gamma) = find_in_order(&states, 0, &phase1).and_then(|k| find_in_order(&states, k, &phase2))
    else {
        return outcome(false, "zero-transport tableaux missing from the trace or out of order");
    };
    let Some(g_at) = states.iter().position(|s| **s == g) else {
        return outcome(false, "gamma(sigma) does not appear in the varphi trace");
    };
    let blocks = [
        vec![
            (1, 2, f_top(&[&[4, 5], &[3, 6], &[4, 8], &[3, 3], &[7, 8], &[1, 10]])),
            (1, 2, f_top(&[&[4, 5], &[6, 3], &[8, 4], &[3, 3], &[7, 8], &[10, 1]])),
        ],
        vec![
            (3, 5, f_top(&[&[1, 9, 3], &[9, 2, 5], &[5, 7, 9], &[4, 6, 4], &[2, 5, 6]])),
            (3, 5, f_top(&[&[1, 3, 9], &[9, 5, 2], &[5, 7, 9], &[4, 4, 6], &[2, 6, 5]])),
            (3, 5, f_top(&[&[1, 3, 9], &[5, 9, 2], &[5, 7, 9], &[4, 4, 6], &[6, 2, 5]])),
        ],
        vec![
            (6, 7, f_top(&[&[8, 5], &[3, 9]])),
            (6, 7, f_top(&[&[8, 5], &[9, 3]])),
        ],
    ];
    let theta_ok = blocks.iter().all(|b| find_in_order(&states, g_at, b).is_some());
    let pass = g == mixed_shape_gamma() && p == mixed_shape_varphi() && after_gamma <= g_at && theta_ok;
    outcome(
        pass,
        format!(
            "gamma and varphi match cell-for-cell; 20 zero-transport tableaux and 7 block tableaux found in order among {} trace states",
            states.len()
        ),
    )
}

fn criterion_3() -> Outcome {
    let s = flip_example();
    let Ok(r) = rho(&s, 1, 6) else {
        return outcome(false, "rho_1 failed");
    };
    let t = range_swap(&s, 1, 3, 5).expect("range swap");
    let rho_ok = r.start_row == 5 && r.end_row == 3 && r.filling == t && t == flip_example_image();
    let x = involution_example();
    let y = phi(&x, 1).expect("phi_1");
    let phi_ok = y == involution_example_image()
        && maj(&x) == 2
        && maj(&y) == 2
        && ndes_vector(&x) == vec![1, 2]
        && ndes_vector(&y) == vec![2, 1]
        && inv(&y) == inv(&x) + 1
        && quinv(&y) == quinv(&x) + 1;
    outcome(
        rho_ok && phi_ok,
        format!(
            "rho_1 = t_1^[{},{}]; phi_1: ndes {:?} -> {:?}, maj {} -> {}, inv {} -> {}, quinv {} -> {}",
            r.end_row,
            r.start_row,
            ndes_vector(&x),
            ndes_vector(&y),
            maj(&x),
            maj(&y),
            inv(&x),
            inv(&y),
            quinv(&x),
            quinv(&y)
        ),
    )
}

fn criterion_4() -> Outcome {
    let rep = asymmetric_class_rep();
    let members: Vec<Filling> = enumerate_row_class(&rep, DEFAULT_BUDGET).expect("small class").collect();
    let table_ok = members.len() == 6
        && ASYMMETRIC_CLASS_TABLE.iter().all(|(mid, stats)| {
            members.iter().any(|m| {
                m.rows_bottom_up()[1] == mid.to_vec() && (maj(m), inv(m), quinv(m)) == *stats
            })
        });
    let t1 = check_t1(&rep, DEFAULT_BUDGET).expect("T1");
    let t2 = check_t2(&rep, DEFAULT_BUDGET).expect("T2");
    outcome(
        table_ok && t1.passed() && !t2.passed(),
        format!(
            "6 members match the table; T1 {}; T2 reports {} violations",
            if t1.passed() { "passes" } else { "fails" },
            t2.violation_count
        ),
    )
}

fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).expect("partition")
}

fn up_to_6() -> ShapeSet {
    ShapeSet::UpToSize(6)
}

fn rects() -> ShapeSet {
    ShapeSet::Rectangles { max_cols: 3, max_rows: 3 }
}

fn macdonald_shapes() -> ShapeSet {
    ShapeSet::Exact(vec![part(&[1, 1]), part(&[2, 1]), part(&[2, 2]), part(&[3, 1]), part(&[3, 2, 1])])
}

/// The sweeps behind criteria 5 to 10, in order.
fn sweeps() -> Vec<(usize, Theorem, SweepConfig)> {
    vec![
        (5, Theorem::T1, SweepConfig::new(up_to_6(), 3)),
        (6, Theorem::T2, SweepConfig::new(rects(), 3)),
        (6, Theorem::Theta, SweepConfig::new(rects(), 3)),
        (7, Theorem::Phi, SweepConfig::new(up_to_6(), 3)),
        (8, Theorem::L51, SweepConfig::new(rects(), 3)),
        (8, Theorem::L52, SweepConfig::new(rects(), 3)),
        (8, Theorem::L52Distinct, SweepConfig::new(rects(), 3)),
        (8, Theorem::L53, SweepConfig::new(rects(), 3)),
        (8, Theorem::L53Balanced, SweepConfig::new(rects(), 3)),
        (8, Theorem::L63, SweepConfig::new(rects(), 3)),
        (8, Theorem::Tables, SweepConfig::new(rects(), 6)),
        (8, Theorem::BlockPartition, SweepConfig::new(rects(), 4)),
        (9, Theorem::Invq, SweepConfig::new(up_to_6(), 3)),
        (9, Theorem::TransposeMaj, SweepConfig::new(up_to_6(), 3)),
        (10, Theorem::Macdonald, SweepConfig::new(macdonald_shapes(), 3)),
    ]
}

fn summary(reports: &[&VerificationReport]) -> String {
    reports
        .iter()
        .map(|r| format!("{} {}/{}", r.theorem, r.violation_count, r.instances))
        .collect::<Vec<_>>()
        .join(", ")
}

fn all_pass(criterion: usize, runs: &[(usize, VerificationReport)]) -> Outcome {
    let mine: Vec<&VerificationReport> = runs.iter().filter(|(c, _)| *c == criterion).map(|(_, r)| r).collect();
    outcome(
        mine.iter().all(|r| r.passed()),
        format!("violations/instances: {}", summary(&mine)),
    )
}

fn parse_label(label: &str) -> Filling {
    Filling::parse_text(&label.replace(" / ", "\n")).expect("violation labels re-parse")
}

/// `rho_{i}` or `rho_{i}^{r}` at the start of a law label.
fn flip_params(law: &str) -> (usize, Option<usize>) {
    let head = law.split_whitespace().next().expect("law label");
    let rest = head.strip_prefix("rho_").expect("flip law");
    match rest.split_once('^') {
        Some((i, r)) => (i.parse().unwrap(), Some(r.parse().unwrap())),
        None => (rest.parse().unwrap(), None),
    }
}

/// Literal flip lemmas: every violation lies where the analysis predicts.
fn lemma_region_analysis() -> (bool, String) {
    let mut cfg = SweepConfig::new(rects(), 3).workers(8);
    cfg.violation_cap = usize::MAX;
    let l52 = sweep(Theorem::L52, &cfg).expect("L5.2");
    let l53 = sweep(Theorem::L53, &cfg).expect("L5.3");
    let equal_top = l52.violations.iter().all(|v| {
        let s = parse_label(&v.filling);
        let (i, _) = flip_params(&v.law);
        let top = s.col_height(i);
        rho_top(&s, i).is_ok() && s.read(top, i).unwrap() == s.read(top, i + 1).unwrap()
    });
    let unbalanced = l53.violations.iter().all(|v| {
        let s = parse_label(&v.filling);
        let (i, r) = flip_params(&v.law);
        let k = rho(&s, i, r.expect("row")).expect("flip").start_row;
        let rd = |row, col| s.read(row, col).unwrap();
        q(rd(k + 1, i), rd(k, i), rd(k, i + 1)) != q(rd(k + 1, i + 1), rd(k, i), rd(k, i + 1))
    });
    let complete = l52.violations.len() as u64 == l52.violation_count && l53.violations.len() as u64 == l53.violation_count;
    let ok = complete && equal_top && unbalanced && l52.violation_count > 0 && l53.violation_count > 0;
    (
        ok,
        format!(
            "{} L5.2 violations, all with equal top entries; {} L5.3 violations, all at unbalanced starting rows",
            l52.violation_count, l53.violation_count
        ),
    )
}

fn criterion_8(runs: &[(usize, VerificationReport)]) -> (Outcome, bool) {
    let get = |t: Theorem| &runs.iter().find(|(_, r)| r.theorem == t.id()).expect("sweep ran").1;
    let literal = [Theorem::L52, Theorem::L53];
    let holding = [
        Theorem::L51,
        Theorem::L52Distinct,
        Theorem::L53Balanced,
        Theorem::L63,
        Theorem::Tables,
        Theorem::BlockPartition,
    ];
    let others_pass = holding.iter().all(|t| get(*t).passed());
    let literal_fail = literal.iter().all(|t| !get(*t).passed());
    let (region_ok, region) = lemma_region_analysis();
    let mine: Vec<&VerificationReport> = runs.iter().filter(|(c, _)| *c == 8).map(|(_, r)| r).collect();
    let pass = mine.iter().all(|r| r.passed());
    let detail = format!(
        "violations/instances: {}. Literal top-row and any-row flip laws fail as analysed: {}",
        summary(&mine),
        region
    );
    (outcome(pass, detail), !pass && others_pass && literal_fail && region_ok)
}

fn criterion_10_extra() -> (bool, String) {
    let two = part(&[1, 1]);
    let hand = macdonald_poly(&two, 2, Stat::Inv, DEFAULT_BUDGET).expect("(1,1)").get(&[1, 1]);
    let expected = &GenPoly::one() + &GenPoly::q();
    let report = check_macdonald(&two, 2, DEFAULT_BUDGET).expect("(1,1) check");
    (
        hand == expected && report.passed(),
        format!("(1,1) with 2 variables: content (1,1) coefficient {hand}"),
    )
}

fn main() -> ExitCode {
    let mut lines: Vec<(usize, Outcome)> = Vec::new();
    let mut unexpected = Vec::new();

    for (n, run) in [(1, criterion_1 as fn() -> Outcome), (2, criterion_2), (3, criterion_3), (4, criterion_4)] {
        let start = Instant::now();
        let mut o = run();
        o.detail = format!("{} ({:.2?})", o.detail, start.elapsed());
        lines.push((n, o));
    }

    let mut single = Vec::new();
    let mut parallel = Vec::new();
    let mut elapsed = [std::time::Duration::ZERO; 11];
    for (c, theorem, cfg) in sweeps() {
        let start = Instant::now();
        single.push((c, sweep(theorem, &cfg).expect("sweep within budget")));
        elapsed[c] += start.elapsed();
        parallel.push((c, sweep(theorem, &cfg.clone().workers(8)).expect("sweep within budget")));
    }

    for c in [5, 6, 7, 9] {
        let mut o = all_pass(c, &single);
        o.detail = format!("{} ({:.2?} single-threaded)", o.detail, elapsed[c]);
        lines.push((c, o));
    }
    let (mut o8, documented) = criterion_8(&single);
    o8.detail = format!("{} ({:.2?} single-threaded)", o8.detail, elapsed[8]);
    if !documented {
        unexpected.push(8);
    }
    lines.push((8, o8));
    let mut o10 = all_pass(10, &single);
    let (hand_ok, hand) = criterion_10_extra();
    o10.pass &= hand_ok;
    o10.detail = format!("{}; {} ({:.2?} single-threaded)", o10.detail, hand, elapsed[10]);
    lines.push((10, o10));

    let identical = single
        .iter()
        .zip(&parallel)
        .all(|((_, a), (_, b))| a.to_json() == b.to_json());
    lines.push((
        11,
        outcome(
            identical,
            format!("{} reports byte-identical at 1 and 8 workers", single.len()),
        ),
    ));

    lines.sort_by_key(|(n, _)| *n);
    for (n, o) in &lines {
        println!("criterion {n}: {} {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass && *n != 8 {
            unexpected.push(*n);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: outcomes as recorded (criterion 8 fails on the literal flip lemmas)");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
