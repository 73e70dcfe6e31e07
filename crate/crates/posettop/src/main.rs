//! Command line interface: build families, compute invariants, run the
//! consistency suites.
//!
//! Output is deterministic: JSON objects print with sorted keys and no
//! timestamps, so identical invocations produce identical bytes. The
//! optional run report (`--report`) adds wall-clock time only when
//! `--timing` is also given.

mod checks;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num::BigInt;
use serde_json::{json, Map, Value};

use posettop::arrangements::{
    builtin_arrangement, goresky_macpherson_betti, orlik_solomon_betti, zaslavsky, Arrangement,
    ArrangementError, BuiltinArrangement,
};
use posettop::complex::{order_complex, ComplexError, SimplicialComplex};
use posettop::families::{
    self, chessboard_complex, colored_chessboard_complex, k_equal_with_labeling, matching_complex,
    noncrossing_with_labeling, partition_lattice_with_labeling, boolean_with_labeling,
    FamilyError, FamilySpec, GraphPredicate, PartitionLabelKind, SizeSpec, WordKind,
};
use posettop::homology::{homology, HomologyError};
use posettop::identities::{whitney_betti, IdentityError};
use posettop::io::{ArrangementJson, ComplexJson, HomologyJson, IoError, PosetJson};
use posettop::oracles::{
    betti_gf, binomial, bouc_betti, catalan, derangements, descent_class, double_factorial,
    euler_number, factorial, multinomial, BettiGfFamily, OracleError,
};
use posettop::poset::{Poset, PosetError};
use posettop::shelling::{betti_from_el, EdgeLabeling, ShellingError};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser)]
#[command(
    name = "posettop",
    version,
    about = "Topological and combinatorial invariants of finite posets and simplicial complexes"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Wrap the output in a run report echoing the command and parameters.
    #[arg(long, global = true)]
    report: bool,
    /// Include wall-clock milliseconds in the run report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PosetSource {
    /// Build the poset from a family name and its parameters.
    #[arg(long, num_args = 1.., value_name = "NAME [PARAM]...")]
    family: Option<Vec<String>>,
    /// Read the poset from a JSON file.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ObjectSource {
    /// Build a poset or complex from a family name and its parameters.
    #[arg(long, num_args = 1.., value_name = "NAME [PARAM]...")]
    family: Option<Vec<String>>,
    /// Read a poset or simplicial complex from a JSON file.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ArrangementSource {
    /// Use a built-in arrangement: coordinate N, type-b-coordinate N,
    /// braid N, type-b-braid N, or k-equal N K.
    #[arg(long, num_args = 1.., value_name = "NAME [PARAM]...")]
    builtin: Option<Vec<String>>,
    /// Read the arrangement from a JSON file.
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named poset or complex family and print it as JSON.
    Family {
        /// Family name, e.g. partition, boolean, word, matching.
        name: String,
        /// Family parameters, e.g. `6`, `6 3`, or `6 at-least 3`.
        params: Vec<String>,
        /// Write the JSON to this file instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Möbius invariant of a poset and of its bounded extension.
    Mobius {
        #[command(flatten)]
        source: PosetSource,
    },
    /// Reduced integral homology, with torsion, of a complex or of a
    /// poset's order complex.
    Homology {
        #[command(flatten)]
        source: ObjectSource,
        /// For posets: drop the bottom and top before taking chains.
        #[arg(long)]
        proper: bool,
    },
    /// Verify a built-in EL labeling and read Betti numbers off its
    /// falling chains.
    BettiEl {
        /// Labeled family: partition N [max-of-mins|max-of-union],
        /// boolean N, noncrossing N, or k-equal N K.
        name: String,
        params: Vec<String>,
    },
    /// Region counts of a real hyperplane arrangement.
    Zaslavsky {
        #[command(flatten)]
        source: ArrangementSource,
    },
    /// Betti numbers of a complex hyperplane arrangement complement.
    Os {
        #[command(flatten)]
        source: ArrangementSource,
    },
    /// Betti numbers of a subspace arrangement complement.
    Gm {
        #[command(flatten)]
        source: ArrangementSource,
        /// Treat the subspaces as complex.
        #[arg(long)]
        complex: bool,
    },
    /// Betti numbers of a semipure bounded-below poset from Whitney-style
    /// alternating sums over lower intervals.
    Whitney {
        #[command(flatten)]
        source: PosetSource,
        /// Work in the dual poset.
        #[arg(long)]
        dual: bool,
        /// Also verify the Cohen-Macaulay hypothesis rationally.
        #[arg(long)]
        verify_cm: bool,
    },
    /// Evaluate a combinatorial reference value.
    Oracle {
        /// factorial, derangements, catalan, euler-number,
        /// double-factorial, binomial, multinomial, bouc, descent-class,
        /// or betti-gf.
        name: String,
        args: Vec<String>,
    },
    /// Run consistency suites and print a scoreboard.
    Check {
        /// all, families, shelling, identities, arrangements, or a
        /// single check name.
        #[arg(default_value = "all")]
        suite: String,
        /// Skip checks whose size parameter exceeds this bound.
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
}

enum CliError {
    Usage(String),
    Infeasible(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl From<PosetError> for CliError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::TooLarge(..) => CliError::Infeasible(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::TooManyVertices(..) => CliError::Infeasible(e.to_string()),
            ComplexError::Poset(p) => p.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::OutOfRange(_) => CliError::Infeasible(e.to_string()),
            FamilyError::Poset(p) => p.into(),
            FamilyError::Complex(c) => c.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<HomologyError> for CliError {
    fn from(e: HomologyError) -> Self {
        match e {
            HomologyError::Poset(p) => p.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<ArrangementError> for CliError {
    fn from(e: ArrangementError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<ShellingError> for CliError {
    fn from(e: ShellingError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(CliError::Infeasible(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(3);
        }
    }
}

/// Number of chain-space columns (and poset elements) the CLI will accept
/// before refusing as infeasible. `POSETTOP_MAX_ELEMENTS` overrides it.
fn max_columns() -> usize {
    std::env::var("POSETTOP_MAX_ELEMENTS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(200_000)
}

/// Refuse complexes whose boundary matrices would exceed the column
/// budget. A crude per-facet bound avoids enumerating astronomically
/// large complexes just to count their faces.
fn guard_complex(c: &SimplicialComplex) -> Result<(), CliError> {
    let limit = max_columns() as u128;
    let mut bound: u128 = 0;
    for f in c.facets() {
        bound = bound.saturating_add(1u128 << f.len().min(100));
        if bound > limit.saturating_mul(16) {
            return Err(CliError::Infeasible(format!(
                "the complex has more than {} faces; raise POSETTOP_MAX_ELEMENTS to proceed",
                limit.saturating_mul(16)
            )));
        }
    }
    for (k, count) in c.f_vector().iter().enumerate().skip(1) {
        if *count > BigInt::from(limit) {
            return Err(CliError::Infeasible(format!(
                "{count} faces of dimension {} exceed the column budget of {limit}; \
                 set POSETTOP_MAX_ELEMENTS to override",
                k - 1
            )));
        }
    }
    Ok(())
}

fn guard_poset(p: &Poset) -> Result<(), CliError> {
    if p.len() > max_columns() {
        return Err(CliError::Infeasible(format!(
            "poset has {} elements, over the budget of {}; set POSETTOP_MAX_ELEMENTS to override",
            p.len(),
            max_columns()
        )));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    let started = Instant::now();
    match &cli.command {
        Command::Family { name, params, out } => {
            let built = build_family(name, params)?;
            let value = match &built {
                Built::Poset(p) => serde_json::to_value(PosetJson::from_poset(p)).unwrap(),
                Built::Complex(c) => serde_json::to_value(ComplexJson::from_complex(c)).unwrap(),
            };
            if let Some(path) = out {
                std::fs::write(path, serde_json::to_string_pretty(&value).unwrap() + "\n")?;
                return Ok(0);
            }
            emit(cli, "family", json!({ "name": name, "params": params }), value, started);
            Ok(0)
        }
        Command::Mobius { source } => {
            let p = load_poset(source)?;
            let invariant = match p.mobius_invariant() {
                Ok(mu) => Value::String(mu.to_string()),
                Err(PosetError::NotBounded) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let outputs = json!({
                "elements": p.len(),
                "mobius_invariant": invariant,
                "mobius_of_bounded_extension": p.mobius_of_bounded_extension().to_string(),
            });
            emit(cli, "mobius", source_params(&source.family, &source.input), outputs, started);
            Ok(0)
        }
        Command::Homology { source, proper } => {
            let c = match load_object(source)? {
                Built::Complex(c) => {
                    if *proper {
                        return Err(usage("--proper applies only to posets"));
                    }
                    c
                }
                Built::Poset(p) => {
                    let p = if *proper { p.proper_part().poset } else { p };
                    guard_poset(&p)?;
                    order_complex(&p)
                }
            };
            guard_complex(&c)?;
            let h = homology(&c);
            let outputs = serde_json::to_value(HomologyJson::from_result(&h)).unwrap();
            emit(cli, "homology", source_params(&source.family, &source.input), outputs, started);
            Ok(0)
        }
        Command::BettiEl { name, params } => {
            let (p, lab) = build_labeled_family(name, params)?;
            guard_poset(&p)?;
            let dims = betti_from_el(&p, &lab)?;
            let mut table = Map::new();
            for (i, b) in dims {
                if b != 0 {
                    table.insert(i.to_string(), json!(b));
                }
            }
            let outputs = json!({ "el_verified": true, "dims": Value::Object(table) });
            emit(cli, "betti-el", json!({ "name": name, "params": params }), outputs, started);
            Ok(0)
        }
        Command::Zaslavsky { source } => {
            let a = load_arrangement(source)?;
            let (regions, bounded) = zaslavsky(&a)?;
            let outputs = json!({
                "regions": regions.to_string(),
                "bounded": bounded.to_string(),
            });
            emit(cli, "zaslavsky", source_params(&source.builtin, &source.input), outputs, started);
            Ok(0)
        }
        Command::Os { source } => {
            let a = load_arrangement(source)?;
            let betti = orlik_solomon_betti(&a)?;
            let mut table = Map::new();
            for (i, v) in betti {
                table.insert(i.to_string(), Value::String(v.to_string()));
            }
            let outputs = json!({ "betti": Value::Object(table) });
            emit(cli, "os", source_params(&source.builtin, &source.input), outputs, started);
            Ok(0)
        }
        Command::Gm { source, complex } => {
            let mut a = load_arrangement(source)?;
            if *complex {
                a = a.with_complex_interpretation();
            }
            let betti = goresky_macpherson_betti(&a)?;
            let mut table = Map::new();
            for (i, v) in betti {
                table.insert(i.to_string(), json!(v));
            }
            let outputs = json!({ "betti": Value::Object(table) });
            emit(cli, "gm", source_params(&source.builtin, &source.input), outputs, started);
            Ok(0)
        }
        Command::Whitney { source, dual, verify_cm } => {
            let mut p = load_poset(source)?;
            if *dual {
                p = p.dual().poset;
            }
            guard_poset(&p)?;
            let sums = whitney_betti(&p, *verify_cm)?;
            let mut table = Map::new();
            for (i, v) in sums {
                table.insert(i.to_string(), Value::String(v.to_string()));
            }
            let outputs = json!({ "whitney": Value::Object(table) });
            emit(cli, "whitney", source_params(&source.family, &source.input), outputs, started);
            Ok(0)
        }
        Command::Oracle { name, args } => {
            let outputs = run_oracle(name, args)?;
            emit(cli, "oracle", json!({ "name": name, "args": args }), outputs, started);
            Ok(0)
        }
        Command::Check { suite, max_size } => {
            let outcomes = checks::run_suite(suite, *max_size).map_err(usage)?;
            let mut results = Vec::new();
            let (mut passed, mut failed, mut skipped) = (0u32, 0u32, 0u32);
            for o in &outcomes {
                match o.status {
                    checks::Status::Pass => passed += 1,
                    checks::Status::Fail => failed += 1,
                    checks::Status::Skip => skipped += 1,
                }
                results.push(json!({
                    "name": o.name,
                    "suite": o.suite,
                    "status": o.status.as_str(),
                    "detail": o.detail,
                    "reproduce": format!("posettop check {} --max-size {}", o.name, o.size),
                }));
            }
            let outputs = json!({
                "suite": suite,
                "max_size": max_size,
                "passed": passed,
                "failed": failed,
                "skipped": skipped,
                "results": results,
            });
            if cli.format == Format::Table {
                print_scoreboard(&outcomes, passed, failed, skipped);
            } else {
                emit(cli, "check", json!({ "suite": suite, "max_size": max_size }), outputs, started);
            }
            Ok(if failed > 0 { 1 } else { 0 })
        }
    }
}

fn print_scoreboard(outcomes: &[checks::CheckOutcome], passed: u32, failed: u32, skipped: u32) {
    for o in outcomes {
        println!("{:<4}  {:<22}  {:<12}  {}", o.status.as_str(), o.name, o.suite, o.detail);
        if o.status == checks::Status::Fail {
            println!("      reproduce with: posettop check {} --max-size {}", o.name, o.size);
        }
    }
    println!("{passed} passed, {failed} failed, {skipped} skipped");
}

/// Attach the poset/arrangement source to the run report.
fn source_params(spec: &Option<Vec<String>>, input: &Option<PathBuf>) -> Value {
    match (spec, input) {
        (Some(words), _) => json!({ "source": words }),
        (None, Some(path)) => json!({ "source": path.display().to_string() }),
        (None, None) => json!({}),
    }
}

fn emit(cli: &Cli, command: &str, parameters: Value, outputs: Value, started: Instant) {
    let doc = if cli.report {
        let mut m = Map::new();
        m.insert("command".into(), json!(command));
        m.insert("parameters".into(), parameters);
        m.insert("exact".into(), json!(true));
        m.insert("outputs".into(), outputs);
        if cli.timing {
            m.insert("wall_time_ms".into(), json!(started.elapsed().as_millis() as u64));
        }
        Value::Object(m)
    } else {
        outputs
    };
    match cli.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&doc).unwrap()),
        Format::Table => print_table(&doc, 0),
    }
}

fn print_table(v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, val) in m {
                match val {
                    Value::Object(inner) if !inner.is_empty() => {
                        println!("{pad}{k}:");
                        print_table(val, indent + 1);
                    }
                    Value::Array(inner) if !inner.is_empty() => {
                        println!("{pad}{k}:");
                        print_table(val, indent + 1);
                    }
                    Value::Object(_) | Value::Array(_) => println!("{pad}{k}: {val}"),
                    _ => println!("{pad}{k}: {}", scalar(val)),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        println!("{pad}-");
                        print_table(item, indent + 1);
                    }
                    _ => println!("{pad}- {}", scalar(item)),
                }
            }
        }
        _ => println!("{pad}{}", scalar(v)),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

enum Built {
    Poset(Poset),
    Complex(SimplicialComplex),
}

fn parse_num<T: std::str::FromStr>(params: &[String], i: usize, what: &str) -> Result<T, CliError> {
    let raw = params
        .get(i)
        .ok_or_else(|| usage(format!("missing parameter: {what}")))?;
    raw.parse()
        .map_err(|_| usage(format!("parameter {what} must be a number, got `{raw}`")))
}

fn expect_params(params: &[String], n: usize, shape: &str) -> Result<(), CliError> {
    if params.len() != n {
        return Err(usage(format!("expected parameters: {shape}")));
    }
    Ok(())
}

fn parse_size_spec(params: &[String]) -> Result<SizeSpec, CliError> {
    let kind = params
        .first()
        .ok_or_else(|| usage("missing block-size restriction"))?;
    match kind.as_str() {
        "at-least" => Ok(SizeSpec::AtLeast(parse_num(params, 1, "k")?)),
        "divisible" => Ok(SizeSpec::Divisible(parse_num(params, 1, "d")?)),
        "congruent" => Ok(SizeSpec::Congruent {
            r: parse_num(params, 1, "r")?,
            d: parse_num(params, 2, "d")?,
        }),
        "k-equal" => Ok(SizeSpec::KEqual(parse_num(params, 1, "k")?)),
        "in-set" => {
            let raw = params
                .get(1)
                .ok_or_else(|| usage("in-set needs a comma-separated list of sizes"))?;
            let mut set = BTreeSet::new();
            for piece in raw.split(',') {
                set.insert(
                    piece
                        .parse()
                        .map_err(|_| usage(format!("bad block size `{piece}`")))?,
                );
            }
            Ok(SizeSpec::InSet(set))
        }
        other => Err(usage(format!(
            "unknown block-size restriction `{other}`; use at-least, divisible, congruent, k-equal, or in-set"
        ))),
    }
}

fn build_family(name: &str, params: &[String]) -> Result<Built, CliError> {
    let spec = match name {
        "boolean" => {
            expect_params(params, 1, "boolean N")?;
            FamilySpec::Boolean { n: parse_num(params, 0, "n")? }
        }
        "subspace" => {
            expect_params(params, 2, "subspace N Q")?;
            FamilySpec::Subspace { n: parse_num(params, 0, "n")?, q: parse_num(params, 1, "q")? }
        }
        "divisor" => {
            expect_params(params, 1, "divisor N")?;
            FamilySpec::Divisor { n: parse_num(params, 0, "n")? }
        }
        "partition" => {
            expect_params(params, 1, "partition N")?;
            FamilySpec::Partition { n: parse_num(params, 0, "n")? }
        }
        "type-b-partition" => {
            expect_params(params, 1, "type-b-partition N")?;
            FamilySpec::TypeBPartition { n: parse_num(params, 0, "n")? }
        }
        "cross-polytope" => {
            expect_params(params, 1, "cross-polytope N")?;
            FamilySpec::CrossPolytope { n: parse_num(params, 0, "n")? }
        }
        "noncrossing" => {
            expect_params(params, 1, "noncrossing N")?;
            FamilySpec::Noncrossing { n: parse_num(params, 0, "n")? }
        }
        "bruhat" => {
            expect_params(params, 1, "bruhat N")?;
            FamilySpec::Bruhat { n: parse_num(params, 0, "n")? }
        }
        "block-restricted" => {
            let n = parse_num(params, 0, "n")?;
            let sizes = parse_size_spec(&params[1.min(params.len())..])?;
            FamilySpec::BlockRestricted { n, sizes }
        }
        "k-equal" => {
            expect_params(params, 2, "k-equal N K")?;
            FamilySpec::BlockRestricted {
                n: parse_num(params, 0, "n")?,
                sizes: SizeSpec::KEqual(parse_num(params, 1, "k")?),
            }
        }
        "word" => {
            expect_params(params, 3, "word N K injective|normal|all")?;
            let kind = match params[2].as_str() {
                "injective" => WordKind::Injective,
                "normal" => WordKind::Normal,
                "all" => WordKind::All,
                other => return Err(usage(format!("unknown word kind `{other}`"))),
            };
            FamilySpec::Word { n: parse_num(params, 0, "n")?, k: parse_num(params, 1, "k")?, kind }
        }
        "graph" => {
            let n = parse_num(params, 0, "n")?;
            let predicate = match params.get(1).map(String::as_str) {
                Some("disconnected") => GraphPredicate::Disconnected,
                Some("connected") => GraphPredicate::Connected,
                Some("not-k-connected") => GraphPredicate::NotKConnected(parse_num(params, 2, "k")?),
                Some("not-d-edge-connected") => {
                    GraphPredicate::NotDEdgeConnected(parse_num(params, 2, "d")?)
                }
                Some("no-perfect-matching") => GraphPredicate::NoPerfectMatching,
                other => {
                    return Err(usage(format!(
                        "unknown graph predicate {other:?}; use disconnected, connected, \
                         not-k-connected K, not-d-edge-connected D, or no-perfect-matching"
                    )))
                }
            };
            FamilySpec::Graph { n, predicate }
        }
        "matching" => {
            expect_params(params, 1, "matching N")?;
            return Ok(Built::Complex(matching_complex(parse_num(params, 0, "n")?)?));
        }
        "chessboard" => {
            expect_params(params, 2, "chessboard M N")?;
            return Ok(Built::Complex(chessboard_complex(
                parse_num(params, 0, "m")?,
                parse_num(params, 1, "n")?,
            )?));
        }
        "colored-chessboard" => {
            expect_params(params, 3, "colored-chessboard M N C")?;
            return Ok(Built::Complex(colored_chessboard_complex(
                parse_num(params, 0, "m")?,
                parse_num(params, 1, "n")?,
                parse_num(params, 2, "c")?,
            )?));
        }
        other => {
            return Err(usage(format!(
                "unknown family `{other}`; poset families: boolean, subspace, divisor, partition, \
                 type-b-partition, cross-polytope, noncrossing, bruhat, block-restricted, k-equal, \
                 word, graph; complex families: matching, chessboard, colored-chessboard"
            )))
        }
    };
    Ok(Built::Poset(families::build(&spec)?))
}

fn build_labeled_family(name: &str, params: &[String]) -> Result<(Poset, EdgeLabeling), CliError> {
    match name {
        "partition" => {
            let n = parse_num(params, 0, "n")?;
            let kind = match params.get(1).map(String::as_str) {
                None | Some("max-of-mins") => PartitionLabelKind::MaxOfMins,
                Some("max-of-union") => PartitionLabelKind::MaxOfUnion,
                Some(other) => {
                    return Err(usage(format!(
                        "unknown partition labeling `{other}`; use max-of-mins or max-of-union"
                    )))
                }
            };
            Ok(partition_lattice_with_labeling(n, kind)?)
        }
        "boolean" => {
            expect_params(params, 1, "boolean N")?;
            Ok(boolean_with_labeling(parse_num(params, 0, "n")?)?)
        }
        "noncrossing" => {
            expect_params(params, 1, "noncrossing N")?;
            Ok(noncrossing_with_labeling(parse_num(params, 0, "n")?)?)
        }
        "k-equal" => {
            expect_params(params, 2, "k-equal N K")?;
            Ok(k_equal_with_labeling(parse_num(params, 0, "n")?, parse_num(params, 1, "k")?)?)
        }
        other => Err(usage(format!(
            "no built-in EL labeling for `{other}`; use partition, boolean, noncrossing, or k-equal"
        ))),
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_poset(source: &PosetSource) -> Result<Poset, CliError> {
    if let Some(words) = &source.family {
        let (name, params) = words.split_first().ok_or_else(|| usage("empty family"))?;
        return match build_family(name, params)? {
            Built::Poset(p) => Ok(p),
            Built::Complex(_) => Err(usage(format!("family `{name}` builds a complex, not a poset"))),
        };
    }
    let path = source.input.as_ref().expect("clap enforces one source");
    let text = std::fs::read_to_string(path)?;
    let parsed: PosetJson = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(parsed.to_poset()?)
}

fn load_object(source: &ObjectSource) -> Result<Built, CliError> {
    if let Some(words) = &source.family {
        let (name, params) = words.split_first().ok_or_else(|| usage("empty family"))?;
        return build_family(name, params);
    }
    let path = source.input.as_ref().expect("clap enforces one source");
    let value = read_json(path)?;
    let keys: Vec<&str> = value
        .as_object()
        .map(|m| m.keys().map(String::as_str).collect())
        .unwrap_or_default();
    if keys.contains(&"labels") {
        let parsed: PosetJson = serde_json::from_value(value).map_err(|e| usage(e.to_string()))?;
        Ok(Built::Poset(parsed.to_poset()?))
    } else if keys.contains(&"vertex_count") {
        let parsed: ComplexJson = serde_json::from_value(value).map_err(|e| usage(e.to_string()))?;
        Ok(Built::Complex(parsed.to_complex()?))
    } else {
        Err(usage(format!(
            "{}: neither a poset (labels/covers) nor a complex (vertex_count/facets)",
            path.display()
        )))
    }
}

fn load_arrangement(source: &ArrangementSource) -> Result<Arrangement, CliError> {
    if let Some(words) = &source.builtin {
        let (name, params) = words.split_first().ok_or_else(|| usage("empty builtin"))?;
        let spec = match name.as_str() {
            "coordinate" => BuiltinArrangement::Coordinate { n: parse_num(params, 0, "n")? },
            "type-b-coordinate" => {
                BuiltinArrangement::TypeBCoordinate { n: parse_num(params, 0, "n")? }
            }
            "braid" => BuiltinArrangement::Braid { n: parse_num(params, 0, "n")? },
            "type-b-braid" => BuiltinArrangement::TypeBBraid { n: parse_num(params, 0, "n")? },
            "k-equal" => BuiltinArrangement::KEqual {
                n: parse_num(params, 0, "n")?,
                k: parse_num(params, 1, "k")?,
            },
            other => {
                return Err(usage(format!(
                    "unknown arrangement `{other}`; use coordinate, type-b-coordinate, braid, \
                     type-b-braid, or k-equal"
                )))
            }
        };
        return Ok(builtin_arrangement(&spec)?);
    }
    let path = source.input.as_ref().expect("clap enforces one source");
    let text = std::fs::read_to_string(path)?;
    let parsed: ArrangementJson =
        serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(parsed.to_arrangement()?)
}

fn big_table(map: impl IntoIterator<Item = (i64, BigInt)>) -> Value {
    let mut table = Map::new();
    for (i, v) in map {
        table.insert(i.to_string(), Value::String(v.to_string()));
    }
    Value::Object(table)
}

fn run_oracle(name: &str, args: &[String]) -> Result<Value, CliError> {
    let value = |v: BigInt| json!({ "value": v.to_string() });
    match name {
        "factorial" => Ok(value(factorial(parse_num(args, 0, "n")?))),
        "derangements" => Ok(value(derangements(parse_num(args, 0, "n")?))),
        "catalan" => Ok(value(catalan(parse_num(args, 0, "n")?))),
        "euler-number" => Ok(value(euler_number(parse_num(args, 0, "m")?))),
        "double-factorial" => Ok(value(double_factorial(parse_num(args, 0, "n")?))),
        "binomial" => Ok(value(binomial(parse_num(args, 0, "n")?, parse_num(args, 1, "k")?))),
        "multinomial" => {
            let parts: Vec<usize> = args
                .iter()
                .map(|a| a.parse().map_err(|_| usage(format!("bad part `{a}`"))))
                .collect::<Result<_, _>>()?;
            Ok(value(multinomial(&parts)))
        }
        "bouc" => {
            let n = parse_num(args, 0, "n")?;
            let i: i64 = parse_num(args, 1, "i")?;
            Ok(value(bouc_betti(n, i)))
        }
        "descent-class" => {
            let n = parse_num(args, 0, "n")?;
            let mut set = BTreeSet::new();
            if let Some(raw) = args.get(1) {
                for piece in raw.split(',').filter(|s| !s.is_empty()) {
                    set.insert(piece.parse().map_err(|_| usage(format!("bad position `{piece}`")))?);
                }
            }
            Ok(value(descent_class(n, &set)))
        }
        "betti-gf" => {
            let family = match args.first().map(String::as_str) {
                Some("at-least") => BettiGfFamily::AtLeastK {
                    n: parse_num(args, 1, "n")?,
                    k: parse_num(args, 2, "k")?,
                },
                Some("zero-mod") => BettiGfFamily::ZeroModD {
                    n: parse_num(args, 1, "n")?,
                    d: parse_num(args, 2, "d")?,
                },
                Some("one-mod") => BettiGfFamily::OneModD {
                    n: parse_num(args, 1, "n")?,
                    d: parse_num(args, 2, "d")?,
                },
                Some("k-mod") => BettiGfFamily::KModD {
                    n: parse_num(args, 1, "n")?,
                    d: parse_num(args, 2, "d")?,
                    k: parse_num(args, 3, "k")?,
                },
                other => {
                    return Err(usage(format!(
                        "unknown generating-function family {other:?}; use at-least, zero-mod, \
                         one-mod, or k-mod"
                    )))
                }
            };
            Ok(json!({ "table": big_table(betti_gf(&family)?) }))
        }
        other => Err(usage(format!(
            "unknown oracle `{other}`; available: factorial, derangements, catalan, euler-number, \
             double-factorial, binomial, multinomial, bouc, descent-class, betti-gf"
        ))),
    }
}
