use std::fs;
use std::io::{self, Read};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use quinv_core::bijections::{gamma_traced, theta_traced, varphi_traced, BijectionTrace};
use quinv_core::enumerate::enumerate_row_class;
use quinv_core::operators::{phi_plan, range_swap, rho, row_swap};
use quinv_core::poly::{class_poly, macdonald_poly, Stat, Weights};
use quinv_core::statistics::StatBundle;
use quinv_core::verify::{self, filling_label, ShapeSet, SweepConfig, Theorem};
use quinv_core::{phi, Filling, Partition, DEFAULT_BUDGET};

#[derive(Parser)]
#[command(name = "quinv", version, about = "Statistics, flips and bijections on fillings of Young diagrams")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Print rows bottom row first (text output only).
    #[arg(long, global = true)]
    bottom_up: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OpKind {
    T,
    Rho,
    Phi,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatArg {
    Maj,
    Inv,
    Quinv,
}

/// A filling file, `-` for stdin, or an inline filling with rows separated
/// by `/` (top row first).
type Input = String;

#[derive(Subcommand)]
enum Command {
    /// maj, inv, quinv, descents and non-descent vector.
    Stats { filling: Input },

    /// Apply a single operator.
    Apply {
        filling: Input,
        #[arg(long, value_enum)]
        op: OpKind,
        #[arg(long)]
        col: usize,
        /// Row for `t`, starting row for `rho` (default: top of the column).
        #[arg(long)]
        row: Option<usize>,
        /// Swap the whole range `from..=to` (only with `--op t`).
        #[arg(long, requires = "to", conflicts_with = "row")]
        from: Option<usize>,
        #[arg(long, requires = "from")]
        to: Option<usize>,
        #[arg(long)]
        trace: bool,
    },

    /// The row-building bijection.
    Gamma {
        filling: Input,
        #[arg(long)]
        trace: bool,
    },

    /// The rectangle symmetrizer.
    Theta {
        filling: Input,
        #[arg(long)]
        trace: bool,
    },

    /// The bijection carrying (inv, maj) to (quinv, maj).
    Varphi {
        filling: Input,
        #[arg(long)]
        trace: bool,
    },

    /// Generating polynomial of the row-equivalence class.
    ClassPoly {
        filling: Input,
        /// Statistics to record: maj -> q, inv -> t, quinv -> u (or t without inv).
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [StatArg::Maj, StatArg::Inv])]
        stats: Vec<StatArg>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },

    /// Finite-alphabet sum of x^content q^maj t^stat over all fillings of a shape.
    Macdonald {
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
        #[arg(long)]
        vars: usize,
        #[arg(long, value_enum, default_value_t = StatKind::Inv)]
        stat: StatKind,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },

    /// Check a theorem on one filling's class or over a sweep.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatKind {
    Inv,
    Quinv,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_theorem)]
    theorem: Theorem,
    /// Check this filling (or its class) instead of sweeping.
    #[arg(long, conflicts_with_all = ["max_size", "rect", "shape"])]
    filling: Option<Input>,
    /// Sweep every partition of size at most this.
    #[arg(long, conflicts_with_all = ["rect", "shape"])]
    max_size: Option<usize>,
    /// Sweep rectangles up to COLSxROWS, e.g. 3x3.
    #[arg(long, value_parser = parse_rect, conflicts_with = "shape")]
    rect: Option<(usize, usize)>,
    /// Sweep exactly these shapes; repeat the flag for several.
    #[arg(long, value_parser = parse_shape)]
    shape: Vec<Partition>,
    /// Largest entry (the value range for tables, square and
    /// block-partition; the variable count for macdonald).
    #[arg(long, alias = "vars", default_value_t = 3)]
    max_entry: u32,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Counterexamples kept in the report.
    #[arg(long, default_value_t = 10)]
    cap: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

fn parse_theorem(s: &str) -> Result<Theorem, String> {
    s.parse::<Theorem>().map_err(|_| {
        let ids: Vec<&str> = Theorem::ALL.iter().map(|t| t.id()).collect();
        format!("expected one of {}", ids.join(", "))
    })
}

fn parse_rect(s: &str) -> Result<(usize, usize), String> {
    let (c, r) = s.split_once(['x', 'X']).ok_or("expected COLSxROWS")?;
    let c = c.trim().parse().map_err(|_| format!("bad column count {c:?}"))?;
    let r = r.trim().parse().map_err(|_| format!("bad row count {r:?}"))?;
    Ok((c, r))
}

fn parse_shape(s: &str) -> Result<Partition, String> {
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| format!("bad part {p:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    Partition::new(parts).map_err(|e| e.to_string())
}

/// Exit status 2: bad input, unsupported request or exhausted budget.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn read_filling(input: &str) -> Result<Filling, Failure> {
    let text = if input == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else if Path::new(input).is_file() {
        fs::read_to_string(input).map_err(|e| Failure(format!("{input}: {e}")))?
    } else if input.trim_start().starts_with('{') {
        input.to_string()
    } else {
        input.replace('/', "\n")
    };
    Ok(Filling::parse_any(&text)?)
}

struct Printer {
    format: Format,
    bottom_up: bool,
}

impl Printer {
    fn filling(&self, f: &Filling) -> String {
        if self.bottom_up {
            f.to_text_bottom_up()
        } else {
            f.to_text()
        }
    }

    fn json<T: Serialize>(&self, value: &T) {
        println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
    }

    fn trace(&self, trace: &BijectionTrace) {
        let doc = trace.to_doc();
        if self.format == Format::Json {
            return self.json(&doc);
        }
        println!("input:\n{}", self.filling(&trace.input));
        for (k, (step, s)) in doc.steps.iter().zip(&trace.steps).enumerate() {
            let mut head = format!("step {}: {}", k + 1, step.operator);
            if let Some(c) = step.column {
                head.push_str(&format!(" col {c}"));
            }
            if let Some((a, b)) = step.rows {
                head.push_str(&format!(" rows {a}..{b}"));
            }
            println!("\n{head}\n{}", self.filling(&s.after));
        }
        println!("\noutput:\n{}", self.filling(&trace.output));
    }
}

fn stats(p: &Printer, input: &str) -> Outcome {
    let s = read_filling(input)?;
    let b = StatBundle::of(&s);
    if p.format == Format::Json {
        p.json(&b);
    } else {
        let ndes: Vec<String> = b.ndes_vector.iter().map(ToString::to_string).collect();
        println!("maj={} inv={} quinv={}", b.maj, b.inv, b.quinv);
        println!("des={} ndes=({})", b.des, ndes.join(","));
    }
    Ok(true)
}

#[derive(Serialize)]
struct ApplyDoc {
    operator: &'static str,
    column: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    rows: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    start_row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    end_row: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    identity: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    undefined: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    components: Option<Vec<quinv_core::operators::ComponentFlip>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    input: Option<Filling>,
    result: Filling,
}

fn apply(
    p: &Printer,
    input: &str,
    op: OpKind,
    col: usize,
    row: Option<usize>,
    range: Option<(usize, usize)>,
    trace: bool,
) -> Outcome {
    let s = read_filling(input)?;
    let top = || s.col_height(col).max(1);
    let mut doc = ApplyDoc {
        operator: "",
        column: col,
        rows: None,
        start_row: None,
        end_row: None,
        identity: None,
        undefined: None,
        components: None,
        input: trace.then(|| s.clone()),
        result: s.clone(),
    };
    match op {
        OpKind::T => {
            let (from, to) = match (range, row) {
                (Some(r), _) => r,
                (None, Some(r)) => (r, r),
                (None, None) => (top(), top()),
            };
            doc.operator = "t";
            doc.rows = Some((from, to));
            doc.result = if from == to { row_swap(&s, col, from)? } else { range_swap(&s, col, from, to)? };
        }
        OpKind::Rho => {
            if range.is_some() {
                return Err(Failure("--from/--to apply only to --op t".into()));
            }
            let r = rho(&s, col, row.unwrap_or_else(top))?;
            doc.operator = "rho";
            doc.start_row = Some(r.start_row);
            doc.end_row = Some(r.end_row);
            doc.identity = Some(r.identity);
            doc.undefined = Some(r.undefined);
            doc.result = r.filling;
        }
        OpKind::Phi => {
            if range.is_some() || row.is_some() {
                return Err(Failure("--op phi takes no rows".into()));
            }
            doc.operator = "phi";
            if trace {
                doc.components = Some(phi_plan(&s, col)?);
            }
            doc.result = phi(&s, col)?;
        }
    }
    if p.format == Format::Json {
        p.json(&doc);
        return Ok(true);
    }
    println!("operator: {}", doc.operator);
    println!("column: {}", doc.column);
    if let Some((a, b)) = doc.rows {
        println!("rows: {a}..{b}");
    }
    if let (Some(k), Some(h)) = (doc.start_row, doc.end_row) {
        println!("start row: {k}");
        println!("end row: {h}");
    }
    if doc.undefined == Some(true) {
        println!("undefined: no starting row (identity)");
    } else if doc.identity == Some(true) {
        println!("identity: columns agree");
    }
    for c in doc.components.iter().flatten() {
        let blocks: Vec<String> = c.descent_blocks.iter().map(ToString::to_string).collect();
        println!(
            "component rows {}..{}: descent blocks [{}], {}",
            c.bottom,
            c.top,
            blocks.join(","),
            if c.flipped { "swapped" } else { "kept" }
        );
    }
    if let Some(i) = &doc.input {
        println!("input:\n{}", p.filling(i));
    }
    println!("result:\n{}", p.filling(&doc.result));
    Ok(true)
}

fn bijection(p: &Printer, input: &str, trace: bool, f: fn(&Filling) -> quinv_core::Result<BijectionTrace>) -> Outcome {
    let s = read_filling(input)?;
    let t = f(&s)?;
    if trace {
        p.trace(&t);
    } else if p.format == Format::Json {
        p.json(&t.output);
    } else {
        println!("{}", p.filling(&t.output));
    }
    Ok(true)
}

fn class_poly_cmd(p: &Printer, input: &str, stats: &[StatArg], budget: u128) -> Outcome {
    let s = read_filling(input)?;
    let w = Weights {
        maj: stats.contains(&StatArg::Maj),
        inv: stats.contains(&StatArg::Inv),
        quinv: stats.contains(&StatArg::Quinv),
    };
    let poly = class_poly(&s, w, budget)?;
    if p.format == Format::Json {
        p.json(&json!({ "weights": w, "polynomial": poly }));
    } else {
        println!("{poly}");
    }
    Ok(true)
}

fn macdonald_cmd(p: &Printer, shape: Vec<usize>, vars: usize, stat: StatKind, budget: u128) -> Outcome {
    let shape = Partition::new(shape)?;
    let stat = match stat {
        StatKind::Inv => Stat::Inv,
        StatKind::Quinv => Stat::Quinv,
    };
    let poly = macdonald_poly(&shape, vars, stat, budget)?;
    if p.format == Format::Json {
        p.json(&poly);
    } else {
        println!("{poly}");
    }
    Ok(true)
}

#[derive(Serialize)]
struct MemberRow {
    filling: String,
    maj: usize,
    inv: usize,
    quinv: usize,
}

fn verify_cmd(p: &Printer, args: &VerifyArgs) -> Outcome {
    let theorem = args.theorem;
    if let Some(input) = &args.filling {
        let s = read_filling(input)?;
        let report = verify::check_filling(theorem, &s, args.budget, args.cap)?;
        let class = if matches!(theorem, Theorem::T1 | Theorem::T2) {
            enumerate_row_class(&s, args.budget)?
                .map(|m| {
                    let b = StatBundle::of(&m);
                    MemberRow {
                        filling: filling_label(&m),
                        maj: b.maj,
                        inv: b.inv,
                        quinv: b.quinv,
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        if p.format == Format::Json {
            p.json(&json!({ "class": class, "report": report }));
        } else {
            if !class.is_empty() {
                let width = class.iter().map(|m| m.filling.len()).max().unwrap_or(0).max(7);
                println!("class of {} ({} fillings)", filling_label(&s), class.len());
                println!("{:<width$}  maj  inv  quinv", "filling");
                for m in &class {
                    println!("{:<width$}  {:>3}  {:>3}  {:>5}", m.filling, m.maj, m.inv, m.quinv);
                }
                println!();
            }
            println!("{report}");
        }
        return Ok(report.passed());
    }
    let shapes = if let Some(n) = args.max_size {
        ShapeSet::UpToSize(n)
    } else if let Some((c, r)) = args.rect {
        ShapeSet::Rectangles { max_cols: c, max_rows: r }
    } else if !args.shape.is_empty() {
        ShapeSet::Exact(args.shape.clone())
    } else if matches!(theorem, Theorem::Tables | Theorem::Square | Theorem::BlockPartition) {
        ShapeSet::Exact(Vec::new())
    } else {
        return Err(Failure(format!(
            "{theorem} needs --filling, --max-size, --rect or --shape"
        )));
    };
    let mut cfg = SweepConfig::new(shapes, args.max_entry).workers(args.workers);
    cfg.violation_cap = args.cap;
    cfg.budget = args.budget;
    let report = verify::sweep(theorem, &cfg)?;
    if p.format == Format::Json {
        println!("{}", report.to_json());
    } else {
        println!("{report}");
    }
    Ok(report.passed())
}

fn run(cli: Cli) -> Outcome {
    let p = Printer {
        format: cli.format,
        bottom_up: cli.bottom_up,
    };
    match cli.command {
        Command::Stats { filling } => stats(&p, &filling),
        Command::Apply {
            filling,
            op,
            col,
            row,
            from,
            to,
            trace,
        } => apply(&p, &filling, op, col, row, from.zip(to), trace),
        Command::Gamma { filling, trace } => bijection(&p, &filling, trace, gamma_traced),
        Command::Theta { filling, trace } => bijection(&p, &filling, trace, theta_traced),
        Command::Varphi { filling, trace } => bijection(&p, &filling, trace, varphi_traced),
        Command::ClassPoly { filling, stats, budget } => class_poly_cmd(&p, &filling, &stats, budget),
        Command::Macdonald {
            shape,
            vars,
            stat,
            budget,
        } => macdonald_cmd(&p, shape, vars, stat, budget),
        Command::Verify(args) => verify_cmd(&p, &args),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
