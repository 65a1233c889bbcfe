//! Command-line front end: closed-form counts, oracle-vs-formula
//! verification sweeps, and histograms of arbitrary edge-list trees.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or validation
//! error, 3 I/O or parse error. Diagnostics go to stderr; stdout carries
//! only the requested data.

use std::collections::BTreeMap;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;

use treepaths::exactcount::{
    self, bridge_path_count, dejong_binary, pair_total, rooted_count_prop,
    rooted_count_theorem, type_path_count, unrooted_count_prop, unrooted_count_theorem,
    unrooted_leaf_count, Count, PathLength, RootedShape, UnrootedShape,
};
use treepaths::oracle::{
    build_rooted, build_unrooted, cross_half_histogram, degree_formula_counts,
    distance_histogram, type_histogram_full, DistanceHistogram, ExplicitTree,
    DEFAULT_VERTEX_BUDGET,
};
use treepaths::treeio::{classify, emit_histogram, parse_edge_list, HistogramFormat};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "treepaths", version, about = "Exact path-length counts in perfect m-ary trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form path counts for a perfect m-ary tree shape
    Count {
        #[command(subcommand)]
        kind: CountKind,
    },
    /// Compare closed forms against the brute-force oracle over a grid of shapes
    Verify(VerifyArgs),
    /// Distance histogram and classification of an arbitrary edge-list tree
    Histogram(HistogramArgs),
}

#[derive(Subcommand)]
enum CountKind {
    /// Perfect rooted m-ary tree of the given depth
    Rooted {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        depth: u32,
        #[command(flatten)]
        opts: CountOpts,
    },
    /// Perfect unrooted m-ary tree of the given diameter
    Unrooted {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        diameter: u32,
        #[command(flatten)]
        opts: CountOpts,
    },
}

#[derive(Args)]
struct CountOpts {
    /// Single path length; omit for the full table
    #[arg(long)]
    t: Option<u32>,
    /// Formula family: the piecewise propositions (total, 0 out of range)
    /// or the theorem restatements (reject out-of-range t)
    #[arg(long, value_enum, default_value_t = Source::Prop)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Prop,
    Theorem,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    m_min: u64,
    #[arg(long, default_value_t = 5)]
    m_max: u64,
    #[arg(long, default_value_t = 5)]
    max_depth: u32,
    #[arg(long, default_value_t = 10)]
    max_diameter: u32,
    /// Largest explicit tree the oracle will build
    #[arg(long, default_value_t = DEFAULT_VERTEX_BUDGET)]
    budget: u64,
    /// Corrupt one formula value to exercise the mismatch report
    #[arg(long, hide = true)]
    corrupt: bool,
}

#[derive(Args)]
struct HistogramArgs {
    /// Edge-list file, or '-' for stdin
    #[arg(long)]
    input: String,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Count { kind } => run_count(kind),
        Command::Verify(args) => run_verify(args),
        Command::Histogram(args) => run_histogram(args),
    }
}

fn usage_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(EXIT_USAGE)
}

fn print_counts(n: Count, counts: BTreeMap<u32, Count>, format: Format) {
    match format {
        Format::Plain => {
            for (t, count) in &counts {
                println!("{t} {count}");
            }
        }
        Format::Csv | Format::Json => {
            let h = DistanceHistogram { n, counts };
            let io_format = if format == Format::Csv {
                HistogramFormat::Csv
            } else {
                HistogramFormat::Json
            };
            print!("{}", emit_histogram(&h, io_format));
        }
    }
}

type CountFn = Box<dyn Fn(PathLength, Source) -> Result<Count, exactcount::FormulaError>>;

fn run_count(kind: CountKind) -> ExitCode {
    // closures over the two shapes so the table/single-t logic is shared
    let (n, max_t, at, opts): (Count, u32, CountFn, CountOpts) = match kind {
        CountKind::Rooted { m, depth, opts } => {
            let shape = match RootedShape::new(m, depth) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            (
                shape.vertex_count(),
                2 * depth,
                Box::new(move |t, source| match source {
                    Source::Prop => Ok(rooted_count_prop(&shape, t)),
                    Source::Theorem => rooted_count_theorem(&shape, t),
                }),
                opts,
            )
        }
        CountKind::Unrooted { m, diameter, opts } => {
            let shape = match UnrootedShape::new(m, diameter) {
                Ok(s) => s,
                Err(e) => return usage_error(e),
            };
            (
                shape.vertex_count(),
                diameter,
                Box::new(move |t, source| match source {
                    Source::Prop => Ok(unrooted_count_prop(&shape, t)),
                    Source::Theorem => unrooted_count_theorem(&shape, t),
                }),
                opts,
            )
        }
    };

    match opts.t {
        Some(raw) => {
            let t = match PathLength::new(raw) {
                Ok(t) => t,
                Err(e) => return usage_error(e),
            };
            let value = match at(t, opts.source) {
                Ok(v) => v,
                Err(e) => return usage_error(e),
            };
            match opts.format {
                Format::Plain => println!("{value}"),
                _ => print_counts(n, BTreeMap::from([(raw, value)]), opts.format),
            }
        }
        None => {
            let mut counts = BTreeMap::new();
            for raw in 1..=max_t {
                let t = PathLength::new(raw).expect("raw >= 1");
                match at(t, opts.source) {
                    Ok(v) => {
                        counts.insert(raw, v);
                    }
                    Err(e) => return usage_error(e),
                }
            }
            print_counts(n, counts, opts.format);
        }
    }
    ExitCode::SUCCESS
}

struct Mismatch {
    shape: String,
    t: u32,
    check: &'static str,
    formula: String,
    oracle: String,
}

struct Verifier {
    mismatches: Vec<Mismatch>,
    corrupt: bool,
}

impl Verifier {
    fn record(&mut self, shape: &str, t: u32, check: &'static str, formula: &Count, oracle: &Count) -> bool {
        if formula == oracle {
            return true;
        }
        self.mismatches.push(Mismatch {
            shape: shape.to_string(),
            t,
            check,
            formula: formula.to_string(),
            oracle: oracle.to_string(),
        });
        false
    }

    fn check_rooted(&mut self, shape: RootedShape, tree: &ExplicitTree) -> bool {
        let label = format!("rooted m={} r={}", shape.m(), shape.depth());
        let before = self.mismatches.len();
        let hist = distance_histogram(tree);
        let zero = Count::zero();
        for raw in 1..=2 * shape.depth() {
            let t = PathLength::new(raw).unwrap();
            let mut prop = rooted_count_prop(&shape, t);
            if self.corrupt {
                prop += 1u32;
            }
            let observed = hist.counts.get(&raw).unwrap_or(&zero);
            self.record(&label, raw, "prop-vs-oracle", &prop, observed);
            let theorem = rooted_count_theorem(&shape, t).expect("t in domain");
            self.record(&label, raw, "theorem-vs-prop", &theorem, &prop);
        }
        let expected = pair_total(&shape.vertex_count());
        self.record(&label, 0, "closure-oracle", &hist.total(), &expected);
        let formula_sum: Count = (1..=2 * shape.depth())
            .map(|raw| rooted_count_prop(&shape, PathLength::new(raw).unwrap()))
            .sum();
        self.record(&label, 0, "closure-formula", &formula_sum, &expected);

        // Lemma aggregation: each depth-d vertex roots a perfect subtree of
        // depth r-d, so the whole-tree type histogram at (t, s) is
        // sum_d m^d * lemma(r-d, s, t).
        let full = type_histogram_full(tree).expect("rooted build");
        let empty = BTreeMap::new();
        for raw in 1..=2 * shape.depth() {
            let t = PathLength::new(raw).unwrap();
            let by_s = full.get(&raw).unwrap_or(&empty);
            for s in 0..=raw / 2 {
                let mut expected = Count::zero();
                for d in 0..=shape.depth() {
                    let sub = RootedShape::new(shape.m(), shape.depth() - d).unwrap();
                    expected += Count::from(shape.m()).pow(d)
                        * type_path_count(&sub, s, t).expect("s in range");
                }
                let observed = by_s.get(&s).unwrap_or(&zero);
                self.record(&label, raw, "lemma-types", &expected, observed);
            }
        }
        self.mismatches.len() == before
    }

    fn check_unrooted(&mut self, shape: UnrootedShape, tree: &ExplicitTree) -> bool {
        let label = format!("unrooted m={} D={}", shape.m(), shape.diameter());
        let before = self.mismatches.len();
        let hist = distance_histogram(tree);
        let zero = Count::zero();
        for raw in 1..=shape.diameter() {
            let t = PathLength::new(raw).unwrap();
            let prop = unrooted_count_prop(&shape, t);
            let observed = hist.counts.get(&raw).unwrap_or(&zero);
            self.record(&label, raw, "prop-vs-oracle", &prop, observed);
            let theorem = unrooted_count_theorem(&shape, t).expect("t in domain");
            self.record(&label, raw, "theorem-vs-prop", &theorem, &prop);
        }
        let expected = pair_total(&shape.vertex_count());
        self.record(&label, 0, "closure-oracle", &hist.total(), &expected);
        let formula_sum: Count = (1..=shape.diameter())
            .map(|raw| unrooted_count_prop(&shape, PathLength::new(raw).unwrap()))
            .sum();
        self.record(&label, 0, "closure-formula", &formula_sum, &expected);

        if shape.diameter() >= 1 {
            let (first, second) = shape.half_shapes();
            let cross = cross_half_histogram(tree).expect("unrooted build");
            for raw in 1..=shape.diameter() {
                let t = PathLength::new(raw).unwrap();
                let bridge = bridge_path_count(&shape, t).expect("D >= 1");
                let recomposed = rooted_count_prop(&first, t)
                    + rooted_count_prop(&second, t)
                    + &bridge;
                self.record(
                    &label,
                    raw,
                    "bridge-decomposition",
                    &recomposed,
                    &unrooted_count_prop(&shape, t),
                );
                let observed = cross.get(&raw).unwrap_or(&zero);
                self.record(&label, raw, "bridge-vs-cross-half", &bridge, observed);
            }

            let leaves = unrooted_leaf_count(&shape).expect("D >= 1");
            let observed_leaves = Count::from(
                (0..tree.n() as u32).filter(|&v| tree.degree(v) == 1).count() as u64,
            );
            self.record(&label, 0, "leaf-census", &leaves, &observed_leaves);

            if shape.m() == 2 && shape.diameter() >= 3 {
                for raw in 3..=shape.diameter() {
                    let t = PathLength::new(raw).unwrap();
                    let dj = dejong_binary(&leaves, t, shape.diameter()).expect("valid n");
                    let theorem = unrooted_count_theorem(&shape, t).expect("t in domain");
                    self.record(&label, raw, "dejong-vs-theorem", &dj, &theorem);
                }
            }
        }
        self.mismatches.len() == before
    }
}

fn run_verify(args: VerifyArgs) -> ExitCode {
    if args.m_min < 2 {
        return usage_error("branching factor must be at least 2");
    }
    if args.m_max < args.m_min {
        return usage_error("--m-max must be at least --m-min");
    }
    let mut verifier = Verifier {
        mismatches: Vec::new(),
        corrupt: args.corrupt,
    };
    for m in args.m_min..=args.m_max {
        for r in 0..=args.max_depth {
            let shape = RootedShape::new(m, r).expect("m >= 2");
            match build_rooted(m, r, args.budget) {
                Ok(tree) => {
                    let ok = verifier.check_rooted(shape, &tree);
                    println!(
                        "{} rooted m={m} r={r} n={}",
                        if ok { "ok" } else { "MISMATCH" },
                        tree.n()
                    );
                }
                Err(_) => eprintln!("skip rooted m={m} r={r}: over budget"),
            }
            // only the first rooted shape with any paths is corrupted; keeps
            // the report short
            if r >= 1 {
                verifier.corrupt = false;
            }
        }
        for diameter in 0..=args.max_diameter {
            let shape = UnrootedShape::new(m, diameter).expect("m >= 2");
            match build_unrooted(m, diameter, args.budget) {
                Ok(tree) => {
                    let ok = verifier.check_unrooted(shape, &tree);
                    println!(
                        "{} unrooted m={m} D={diameter} n={}",
                        if ok { "ok" } else { "MISMATCH" },
                        tree.n()
                    );
                }
                Err(_) => eprintln!("skip unrooted m={m} D={diameter}: over budget"),
            }
        }
    }
    if verifier.mismatches.is_empty() {
        return ExitCode::SUCCESS;
    }
    eprintln!("{} mismatches; first 10:", verifier.mismatches.len());
    for mm in verifier.mismatches.iter().take(10) {
        eprintln!(
            "  {} t={} {}: formula={} oracle={}",
            mm.shape, mm.t, mm.check, mm.formula, mm.oracle
        );
    }
    ExitCode::from(EXIT_MISMATCH)
}

fn run_histogram(args: HistogramArgs) -> ExitCode {
    let text = if args.input == "-" {
        let mut buffer = String::new();
        if let Err(e) = std::io::stdin().read_to_string(&mut buffer) {
            eprintln!("error: reading stdin: {e}");
            return ExitCode::from(EXIT_IO);
        }
        buffer
    } else {
        match std::fs::read_to_string(&args.input) {
            Ok(text) => text,
            Err(e) => {
                eprintln!("error: reading {}: {e}", args.input);
                return ExitCode::from(EXIT_IO);
            }
        }
    };
    let (tree, _labels) = match parse_edge_list(&text) {
        Ok(parsed) => parsed,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_IO);
        }
    };
    let hist = distance_histogram(&tree);
    let (p1, p2, p3) = degree_formula_counts(&tree);
    let zero = Count::zero();
    let degree_values = [(1u32, p1), (2, p2), (3, p3)];
    for (t, value) in &degree_values {
        if hist.counts.get(t).unwrap_or(&zero) != value {
            eprintln!(
                "internal error: degree formula disagrees with BFS at t={t}: {value} vs {}",
                hist.counts.get(t).unwrap_or(&zero)
            );
            return ExitCode::from(EXIT_MISMATCH);
        }
    }
    let classification = classify(&tree);
    let summary = if let Some((m, d)) = classification.perfect_unrooted {
        format!("perfect unrooted m={m} D={d}")
    } else if let Some((m, r, root)) = classification.perfect_rooted {
        format!("perfect rooted m={m} r={r} root={root}")
    } else {
        "no perfect classification".to_string()
    };
    let degree_line = format!(
        "degree-check t=1:{} t=2:{} t=3:{} ok",
        degree_values[0].1, degree_values[1].1, degree_values[2].1
    );
    match args.format {
        Format::Plain => {
            print!("{}", emit_histogram(&hist, HistogramFormat::Csv));
            println!("{degree_line}");
            println!("classification: {summary}");
        }
        Format::Csv => {
            print!("{}", emit_histogram(&hist, HistogramFormat::Csv));
            eprintln!("{degree_line}");
            eprintln!("classification: {summary}");
        }
        Format::Json => {
            print!("{}", emit_histogram(&hist, HistogramFormat::Json));
            eprintln!("{degree_line}");
            eprintln!("classification: {summary}");
        }
    }
    ExitCode::SUCCESS
}
