use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use knottab::census::{self, jones_span, Filters, RowStatus, TABLE};
use knottab::classify::{compare, rep_invariants, CompareOptions, Evidence, Verdict};
use knottab::closedform;
use knottab::diagram::{pd_from_rep, PDCode};
use knottab::girth::{self, rep_from_decomposition, TaitDecomposition, TREE_BUDGET};
use knottab::laurent::{jones_from_bracket, LaurentPoly};
use knottab::oracle::{self, FOX_CAP};
use knottab::repr::{parse_rep, Rep};
use knottab::selftest;

#[derive(Parser)]
#[command(name = "knottab", version, about = "Invariants and comparisons for knots given as tree pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CensusFormat {
    Csv,
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Conway,
    Bracket,
    Jones,
    Span,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Closed form where one exists, oracle otherwise.
    Auto,
    Closed,
    Oracle,
    /// Compute both and report agreement.
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate invariants of a representation such as "(2,8)" or "[2 2 2/2 2 2]".
    Eval {
        rep: String,
        #[arg(value_enum, default_value_t = Which::All)]
        invariant: Which,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide whether two representations give the same knot.
    Compare {
        r1: String,
        r2: String,
        #[arg(long)]
        mirror_ok: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Minimal Tait-graph girth of a PD diagram.
    Girth {
        pd_file: PathBuf,
        /// Largest crossing count searched exhaustively.
        #[arg(long, default_value_t = TREE_BUDGET)]
        budget_crossings: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Every spanning-tree decomposition of a PD diagram.
    Decompose {
        pd_file: PathBuf,
        #[arg(long, default_value_t = TREE_BUDGET)]
        budget_crossings: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Enumerate representations of one girth and group them by invariants.
    Census {
        #[arg(long)]
        girth: usize,
        /// Largest absolute label.
        #[arg(long)]
        max: i64,
        #[arg(long)]
        even: bool,
        #[arg(long)]
        positive: bool,
        #[arg(long)]
        mirror_ok: bool,
        /// Override the default label bound.
        #[arg(long)]
        budget: Option<i64>,
        #[arg(long, value_enum, default_value_t = CensusFormat::Csv)]
        format: CensusFormat,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the table of small knots against fixture diagrams.
    VerifyTable {
        #[arg(default_value = "fixtures/rolfsen")]
        dir: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the formula-against-oracle suites.
    Selftest {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Bad input or an unavailable computation; exit code 2.
#[derive(Debug, Error)]
#[error("{0}")]
struct InputError(String);

fn input<E: std::fmt::Display>(e: E) -> InputError {
    InputError(e.to_string())
}

type CmdResult = Result<ExitCode, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { rep, invariant, method, format } => eval(&rep, invariant, method, format),
        Command::Compare { r1, r2, mirror_ok, format } => compare_cmd(&r1, &r2, mirror_ok, format),
        Command::Girth { pd_file, budget_crossings, format } => girth_cmd(&pd_file, budget_crossings, format),
        Command::Decompose { pd_file, budget_crossings, format } => decompose(&pd_file, budget_crossings, format),
        Command::Census { girth, max, even, positive, mirror_ok, budget, format, jobs, out } => {
            let filters = Filters { even_only: even, positive_only: positive };
            census_cmd(girth, max, filters, mirror_ok, budget, format, jobs, out.as_deref())
        }
        Command::VerifyTable { dir, format } => verify_table(&dir, format),
        Command::Selftest { format } => selftest_cmd(format),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse(text: &str) -> Result<Rep, InputError> {
    parse_rep(text).map_err(|e| InputError(format!("{text:?}: {e}")))
}

#[derive(Clone, Debug, Default, Serialize)]
struct Values {
    components: usize,
    conway: Option<LaurentPoly>,
    bracket: Option<LaurentPoly>,
    jones: Option<LaurentPoly>,
    span: Option<i64>,
}

impl Values {
    fn get(&self, which: Which) -> Option<String> {
        match which {
            Which::Conway => self.conway.as_ref().map(|p| p.to_string()),
            Which::Bracket => self.bracket.as_ref().map(|p| p.to_string()),
            Which::Jones => self.jones.as_ref().map(|p| p.to_string()),
            Which::Span => self.span.map(|s| s.to_string()),
            Which::All => None,
        }
    }
}

const EACH: [Which; 4] = [Which::Conway, Which::Bracket, Which::Jones, Which::Span];

fn name(which: Which) -> &'static str {
    match which {
        Which::Conway => "conway",
        Which::Bracket => "bracket",
        Which::Jones => "jones",
        Which::Span => "span",
        Which::All => "all",
    }
}

fn closed_values(rep: &Rep) -> Result<Values, InputError> {
    let bracket = closedform::bracket(rep).map_err(input)?;
    let pd = pd_from_rep(rep).map_err(input)?;
    let components = pd.components().map_err(input)?;
    let jones = jones_from_bracket(&bracket, pd.writhe().map_err(input)?);
    let conway = if components == 1 { closedform::conway(rep).ok() } else { None };
    Ok(Values { components, conway, span: jones_span(&jones), bracket: Some(bracket), jones: Some(jones) })
}

fn oracle_values(rep: &Rep) -> Result<Values, InputError> {
    let pd = pd_from_rep(rep).map_err(input)?;
    let components = pd.components().map_err(input)?;
    let bracket = oracle::bracket(&pd).map_err(input)?;
    let jones = oracle::jones(&pd).map_err(input)?;
    let conway = if components == 1 && pd.crossing_count() <= FOX_CAP {
        Some(oracle::conway_fox(&pd).map_err(input)?)
    } else {
        None
    };
    Ok(Values { components, conway, span: jones_span(&jones), bracket: Some(bracket), jones: Some(jones) })
}

fn auto_values(rep: &Rep) -> Values {
    let inv = rep_invariants(rep);
    Values {
        components: inv.components,
        span: inv.jones.as_ref().and_then(jones_span),
        conway: inv.conway,
        bracket: inv.bracket,
        jones: inv.jones,
    }
}

fn missing(which: Which, v: &Values) -> InputError {
    if which == Which::Conway && v.components != 1 {
        InputError(format!(
            "the Conway polynomial is computed for knots only (this is a {}-component link)",
            v.components
        ))
    } else {
        InputError(format!("{} is not available for this representation", name(which)))
    }
}

fn eval(text: &str, which: Which, method: Method, format: Format) -> CmdResult {
    let rep = parse(text)?;
    if method == Method::Both {
        return eval_both(&rep, which, format);
    }
    let v = match method {
        Method::Closed => closed_values(&rep)?,
        Method::Oracle => oracle_values(&rep)?,
        _ => auto_values(&rep),
    };
    if which == Which::All {
        match format {
            Format::Json => println!("{}", json!({ "rep": rep.to_string(), "invariants": v })),
            Format::Text => {
                println!("components: {}", v.components);
                for w in EACH {
                    println!("{}: {}", name(w), v.get(w).unwrap_or_else(|| "-".into()));
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }
    let value = v.get(which).ok_or_else(|| missing(which, &v))?;
    match format {
        Format::Json => println!("{}", json!({ "rep": rep.to_string(), name(which): value })),
        Format::Text => println!("{value}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn eval_both(rep: &Rep, which: Which, format: Format) -> CmdResult {
    let closed = closed_values(rep)?;
    let oracle = oracle_values(rep)?;
    let wanted: Vec<Which> = if which == Which::All { EACH.to_vec() } else { vec![which] };
    let mut agree = true;
    let mut rows = Vec::new();
    for w in wanted {
        let (c, o) = (closed.get(w), oracle.get(w));
        if c.is_none() && o.is_none() && which != Which::All {
            return Err(missing(w, &closed));
        }
        // Only values present on both sides are compared.
        let same = match (&c, &o) {
            (Some(c), Some(o)) => c == o,
            _ => true,
        };
        agree &= same;
        rows.push((w, c, o, same));
    }
    let verdict = if agree { "AGREE" } else { "DISAGREE" };
    match format {
        Format::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(w, c, o, same)| json!({ "invariant": name(*w), "closed": c, "oracle": o, "agree": same }))
                .collect();
            println!("{}", json!({ "rep": rep.to_string(), "results": rows, "verdict": verdict }));
        }
        Format::Text => {
            for (w, c, o, same) in &rows {
                let dash = || "-".to_string();
                println!(
                    "{}: closed {} | oracle {} | {}",
                    name(*w),
                    c.clone().unwrap_or_else(dash),
                    o.clone().unwrap_or_else(dash),
                    if *same { "AGREE" } else { "DISAGREE" }
                );
            }
            println!("{verdict}");
        }
    }
    Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn describe(e: &Evidence) -> String {
    match e {
        Evidence::Symmetry { left, right, common } => {
            format!("moves {left:?} on the first and {right:?} on the second both give {common}")
        }
        Evidence::Difference { invariant, poly, mirror } => {
            let mut s = format!("{invariant:?} difference {poly}");
            if let Some(m) = mirror {
                s += &format!("; against the mirror {m}");
            }
            s
        }
        Evidence::Determinant { integer, s_determinant, difference } => {
            let mut s = format!("integer determinant {integer}, S-determinant {s_determinant}");
            if let Some(d) = difference {
                s += &format!("; difference {d}");
            }
            s
        }
        Evidence::Reason { detail } => detail.clone(),
    }
}

fn print_verdict(v: &Verdict, format: Format) {
    match format {
        Format::Json => println!("{}", v.to_json()),
        Format::Text => {
            println!("{:?}", v.tag);
            println!("{}", describe(&v.evidence));
        }
    }
}

fn compare_cmd(r1: &str, r2: &str, mirror_ok: bool, format: Format) -> CmdResult {
    let (a, b) = (parse(r1)?, parse(r2)?);
    print_verdict(&compare(&a, &b, CompareOptions { mirror_ok }), format);
    Ok(ExitCode::SUCCESS)
}

fn read_pd(path: &Path) -> Result<PDCode, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let pd = PDCode::parse(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    pd.validate().map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(pd)
}

fn recovered(d: &TaitDecomposition) -> Option<String> {
    (d.girth <= 3).then(|| rep_from_decomposition(d).ok()).flatten().map(|r| r.to_string())
}

fn girth_cmd(path: &Path, budget: usize, format: Format) -> CmdResult {
    let pd = read_pd(path)?;
    let (g, d) = girth::diagram_girth(&pd, budget).map_err(input)?;
    let rep = recovered(&d);
    match format {
        Format::Json => println!("{}", json!({ "girth": g, "rep": rep, "decomposition": d })),
        Format::Text => {
            println!("girth: {g}");
            println!("shading: {:?}", d.shading);
            println!("tree crossings: {:?}", d.tree);
            if let Some(r) = rep {
                println!("rep: {r}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn decompose(path: &Path, budget: usize, format: Format) -> CmdResult {
    let pd = read_pd(path)?;
    let all = girth::all_decompositions(&pd, budget).map_err(input)?;
    match format {
        Format::Json => {
            let list: Vec<_> = all.iter().map(|d| json!({ "rep": recovered(d), "decomposition": d })).collect();
            println!("{}", serde_json::Value::Array(list));
        }
        Format::Text => {
            let mut histogram = std::collections::BTreeMap::new();
            for d in &all {
                *histogram.entry(d.girth).or_insert(0usize) += 1;
                println!("{:?} tree {:?} girth {} {}", d.shading, d.tree, d.girth, recovered(d).unwrap_or_default());
            }
            let hist: Vec<String> = histogram.iter().map(|(g, n)| format!("{g}:{n}")).collect();
            println!("{} decompositions, by girth {}", all.len(), hist.join(" "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn census_cmd(
    girth: usize,
    max: i64,
    filters: Filters,
    mirror_ok: bool,
    budget: Option<i64>,
    format: CensusFormat,
    jobs: Option<usize>,
    out: Option<&Path>,
) -> CmdResult {
    if let Some(n) = jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(input)?;
    }
    let reps = census::enumerate(girth, max, filters, budget).map_err(input)?;
    let c = census::dedup_census(&reps, CompareOptions { mirror_ok });
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(io::BufWriter::new(fs::File::create(p).map_err(input)?)),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        CensusFormat::Csv => c.write_csv(&mut sink).map_err(input)?,
        CensusFormat::Json => c.write_jsonl(&mut sink).map_err(input)?,
        CensusFormat::Text => {
            let w = &mut sink;
            let mut go = || -> io::Result<()> {
                writeln!(w, "reps: {}", c.records.len())?;
                writeln!(w, "classes: {}", c.class_count())?;
                writeln!(w, "collisions: {}", c.collisions().count())?;
                writeln!(w, "distinct by verdict: {}", c.distinct_collisions())?;
                writeln!(w, "unresolved: {}", c.unresolved_collisions())?;
                for class in c.collisions() {
                    let members: Vec<&str> = class.members.iter().map(|&m| c.records[m].rep.as_str()).collect();
                    let tags: Vec<String> = class.verdicts.iter().map(|v| format!("{:?}", v.tag)).collect();
                    writeln!(w, "class {}: {} [{}]", class.id, members.join(", "), tags.join(", "))?;
                }
                Ok(())
            };
            go().map_err(input)?;
        }
    }
    sink.flush().map_err(input)?;
    Ok(ExitCode::SUCCESS)
}

fn verify_table(dir: &Path, format: Format) -> CmdResult {
    if !dir.is_dir() {
        return Err(InputError(format!("{}: not a directory", dir.display())));
    }
    let report = census::verify_table(TABLE, dir);
    match format {
        Format::Json => println!("{}", serde_json::to_string(&report).map_err(input)?),
        Format::Text => {
            for r in &report.rows {
                let status = match r.status {
                    RowStatus::Pass if r.mirrored => "PASS (mirror)",
                    RowStatus::Pass => "PASS",
                    RowStatus::Fail => "FAIL",
                    RowStatus::Absent => "ABSENT",
                    RowStatus::MissingFixture => "SKIP",
                };
                let rep = r.rep.as_deref().unwrap_or("-");
                println!("{:<5} {:<24} {:<14} {}", r.name, rep, status, r.note);
            }
            let count = |s: RowStatus| report.rows.iter().filter(|r| r.status == s).count();
            println!(
                "pass {} fail {} absent {} skipped {}",
                count(RowStatus::Pass),
                count(RowStatus::Fail),
                count(RowStatus::Absent),
                count(RowStatus::MissingFixture)
            );
        }
    }
    Ok(if report.failures().next().is_some() { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn selftest_cmd(format: Format) -> CmdResult {
    let results = selftest::run_all();
    match format {
        Format::Json => println!("{}", serde_json::to_string(&results).map_err(input)?),
        Format::Text => {
            for s in &results {
                match &s.failure {
                    None => println!("PASS {} ({} cases)", s.name, s.cases),
                    Some(f) => println!("FAIL {}: {f}", s.name),
                }
            }
        }
    }
    Ok(if results.iter().all(|s| s.passed()) { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
