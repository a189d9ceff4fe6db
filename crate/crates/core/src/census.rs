//! Label-space enumeration, invariant-keyed deduplication and the table of
//! small knots.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::classify::{compare, rep_invariants, CompareOptions, Verdict, VerdictTag};
use crate::closedform;
use crate::diagram::{pd_from_rep, PDCode};
use crate::laurent::LaurentPoly;
use crate::oracle;
use crate::repr::{canonicalize, parse_rep, Canonical, Girth2Rep, Girth3Rep, Rep};

/// Largest label magnitude enumerated without an explicit override.
pub const GIRTH2_MAX: i64 = 12;
pub const GIRTH3_MAX: i64 = 6;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("label bound {max} exceeds the budget of {budget} for girth {girth}")]
    OverBudget { girth: usize, max: i64, budget: i64 },
    #[error("girth {0} is not enumerable (use 2 or 3)")]
    Girth(usize),
    #[error("fixture {path}: {msg}")]
    Fixture { path: String, msg: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Filters {
    pub even_only: bool,
    pub positive_only: bool,
}

impl Filters {
    fn labels(&self, max: i64) -> Vec<i64> {
        let lo = if self.positive_only { 1 } else { -max };
        (lo..=max).filter(|x| !self.even_only || x % 2 == 0).collect()
    }
}

/// Order of output: girth, crossing count, then labels.
fn order_key(rep: &Rep) -> (usize, u64, Vec<i64>) {
    (rep.girth(), rep.crossing_count(), rep.labels())
}

/// One canonical representative per key, in a fixed order. `budget`
/// overrides the default label bound.
pub fn enumerate(girth: usize, max: i64, filters: Filters, budget: Option<i64>) -> Result<Vec<Canonical>, CensusError> {
    let budget = budget.unwrap_or(match girth {
        2 => GIRTH2_MAX,
        3 => GIRTH3_MAX,
        g => return Err(CensusError::Girth(g)),
    });
    if max > budget {
        return Err(CensusError::OverBudget { girth, max, budget });
    }
    let labels = filters.labels(max);
    let reps: Vec<Rep> = match girth {
        2 => labels.iter().flat_map(|&p| labels.iter().map(move |&q| Girth2Rep { p, q }.into())).collect(),
        3 => {
            let mut out = Vec::new();
            for &p in &labels {
                for &q in &labels {
                    for &r in &labels {
                        for &a in &labels {
                            for &b in &labels {
                                for &c in &labels {
                                    out.push(Girth3Rep::new([p, q, r], [a, b, c]).into());
                                }
                            }
                        }
                    }
                }
            }
            out
        }
        g => return Err(CensusError::Girth(g)),
    };
    let mut by_key: BTreeMap<String, Canonical> = BTreeMap::new();
    for c in reps.par_iter().map(canonicalize).collect::<Vec<_>>() {
        by_key.entry(c.key.clone()).or_insert(c);
    }
    let mut out: Vec<Canonical> = by_key.into_values().collect();
    out.sort_by_key(|c| order_key(&c.rep));
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    ClosedForm,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantRecord {
    pub rep: String,
    pub girth: usize,
    pub degenerate: bool,
    pub components: usize,
    /// Knots only.
    pub conway: Option<LaurentPoly>,
    pub bracket: Option<LaurentPoly>,
    /// For links this depends on the orientation of the template diagram.
    pub jones: Option<LaurentPoly>,
    pub span: Option<i64>,
    pub source: Source,
}

/// Number of powers of `t` from the lowest to the highest term of a Jones
/// polynomial, both ends included.
pub fn jones_span(jones: &LaurentPoly) -> Option<i64> {
    let (lo, hi, _) = jones.extremes().ok()?;
    Some((hi - lo) / 4 + 1)
}

pub fn record(c: &Canonical) -> InvariantRecord {
    let inv = rep_invariants(&c.rep);
    let closed_bracket = closedform::bracket(&c.rep).is_ok();
    let closed_conway = inv.components != 1
        || match &c.rep {
            Rep::Girth3(r) => r.all_even(),
            Rep::General(_) => false,
            _ => true,
        };
    InvariantRecord {
        rep: c.rep.to_string(),
        girth: c.rep.girth(),
        degenerate: c.degenerate,
        components: inv.components,
        span: inv.jones.as_ref().and_then(jones_span),
        conway: inv.conway,
        bracket: inv.bracket,
        jones: inv.jones,
        source: if closed_bracket && closed_conway { Source::ClosedForm } else { Source::Oracle },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusClass {
    pub id: usize,
    /// Indices into the record list; the first is the representative.
    pub members: Vec<usize>,
    /// Verdict of comparing each later member with the representative.
    pub verdicts: Vec<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub records: Vec<InvariantRecord>,
    pub classes: Vec<CensusClass>,
    #[serde(skip)]
    class_of: Vec<usize>,
    #[serde(skip)]
    reps: Vec<Rep>,
}

fn poly_text(p: &Option<LaurentPoly>) -> String {
    p.as_ref().map_or_else(|| "-".to_string(), |p| p.to_string())
}

/// Computes invariants and groups reps by `(components, Conway, Jones)`.
pub fn dedup_census(reps: &[Canonical], opts: CompareOptions) -> Census {
    let records: Vec<InvariantRecord> = reps.par_iter().map(record).collect();
    let mut index: BTreeMap<(usize, String, String), usize> = BTreeMap::new();
    let mut classes: Vec<CensusClass> = Vec::new();
    let mut class_of = Vec::with_capacity(records.len());
    for (i, r) in records.iter().enumerate() {
        let key = (r.components, poly_text(&r.conway), poly_text(&r.jones));
        let id = *index.entry(key).or_insert_with(|| {
            classes.push(CensusClass { id: classes.len(), members: Vec::new(), verdicts: Vec::new() });
            classes.len() - 1
        });
        classes[id].members.push(i);
        class_of.push(id);
    }
    let reps: Vec<Rep> = reps.iter().map(|c| c.rep.clone()).collect();
    classes.par_iter_mut().for_each(|class| {
        let first = &reps[class.members[0]];
        class.verdicts = class.members[1..].iter().map(|&m| compare(first, &reps[m], opts)).collect();
    });
    Census { records, classes, class_of, reps }
}

impl Census {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn collisions(&self) -> impl Iterator<Item = &CensusClass> {
        self.classes.iter().filter(|c| c.members.len() > 1)
    }

    pub fn reps(&self) -> &[Rep] {
        &self.reps
    }

    fn verdict_text(&self, i: usize) -> String {
        let class = &self.classes[self.class_of[i]];
        match class.members.iter().position(|&m| m == i) {
            _ if class.members.len() == 1 => "-".into(),
            Some(0) => "representative".into(),
            Some(k) => format!("{:?}", class.verdicts[k - 1].tag),
            None => unreachable!("record belongs to its class"),
        }
    }

    /// Columns: rep, girth, components, conway, jones, span, class_id, verdict.
    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<(), CensusError> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["rep", "girth", "components", "conway", "jones", "span", "class_id", "verdict"])?;
        for (i, r) in self.records.iter().enumerate() {
            out.write_record([
                r.rep.clone(),
                r.girth.to_string(),
                r.components.to_string(),
                poly_text(&r.conway),
                poly_text(&r.jones),
                r.span.map_or_else(|| "-".into(), |s| s.to_string()),
                self.class_of[i].to_string(),
                self.verdict_text(i),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_jsonl<W: std::io::Write>(&self, mut w: W) -> Result<(), CensusError> {
        #[derive(Serialize)]
        struct Line<'a> {
            #[serde(flatten)]
            record: &'a InvariantRecord,
            class_id: usize,
            verdict: String,
        }
        for (i, r) in self.records.iter().enumerate() {
            let line = Line { record: r, class_id: self.class_of[i], verdict: self.verdict_text(i) };
            serde_json::to_writer(&mut w, &line).map_err(std::io::Error::from)?;
            writeln!(w)?;
        }
        Ok(())
    }

    /// Every collision whose verdict says the members differ.
    pub fn distinct_collisions(&self) -> usize {
        self.classes.iter().flat_map(|c| &c.verdicts).filter(|v| v.is_distinct()).count()
    }

    pub fn unresolved_collisions(&self) -> usize {
        self.classes.iter().flat_map(|c| &c.verdicts).filter(|v| v.tag == VerdictTag::Unresolved).count()
    }
}

/// A row of the table of small knots: name and representation, or `None`
/// where no representation of girth at most three is listed.
pub const TABLE: &[(&str, Option<&str>)] = &[
    ("3_1", Some("(3)")),
    ("4_1", Some("(2,-2)")),
    ("5_1", Some("(5)")),
    ("5_2", Some("(2,-3)")),
    ("6_1", Some("(2,-4)")),
    ("6_2", Some("[0 2 -2 / 0 -1 -1]")),
    ("6_3", Some("[2 0 1 / -1 -1 -1]")),
    ("7_1", Some("(7)")),
    ("7_2", Some("(2,-5)")),
    ("7_3", Some("(3,-4)")),
    ("7_4", Some("[-1 -1 0 / 1 2 2]")),
    ("7_5", Some("[3 1 0 / -1 -0 -2]")),
    ("7_6", Some("[-1 2 0 / 1 2 2]")),
    ("7_7", Some("[2 2 0 / -1 -1 -1]")),
    ("8_1", Some("(2,-6)")),
    ("8_2", Some("[0 -1 -1 / 1 1 4]")),
    ("8_3", Some("(4,-4)")),
    ("8_4", Some("[-1 -1 0 / 1 2 3]")),
    ("8_5", Some("[0 1 1 / -1 -3 -2]")),
    ("8_6", Some("[1 3 0 / -1 -3 0]")),
    ("8_7", Some("[0 -1 -4 / 1 1 1]")),
    ("8_8", Some("[0 -2 -1 / 3 1 1]")),
    ("8_9", Some("[3 0 1 / -1 -2 -1]")),
    ("8_10", Some("[1 0 2 / -1 -1 -3]")),
    ("8_11", Some("[-3 -1 0 / 1 1 2]")),
    ("8_12", Some("[-2 -2 0 / 2 2 0]")),
    ("8_13", Some("[2 0 3 / -1 -1 -1]")),
    ("8_14", Some("[2 2 0 / -1 -1 -2]")),
    ("8_15", Some("[2 2 0 / -2 -1 -1]")),
    ("8_16", Some("[2 2 1 / -1 -1 -1]")),
    ("8_17", Some("[-2 -1 -1 / 1 1 2]")),
    ("8_18", None),
    ("8_19", Some("[-2 -1 -1 / 1 -1 -2]")),
    ("8_20", Some("[2 -1 -1 / -1 1 -2]")),
    ("8_21", Some("[2 1 1 / 1 1 2]")),
];

/// Crossing number encoded in a Rolfsen name such as `7_4`.
pub fn crossing_number(name: &str) -> Option<u32> {
    name.split('_').next()?.parse().ok()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFixture {
    pub name: String,
    #[serde(default)]
    pub source: String,
    #[serde(flatten)]
    pub pd: PDCode,
}

pub fn load_fixture(path: &Path) -> Result<TableFixture, CensusError> {
    let err = |msg: String| CensusError::Fixture { path: path.display().to_string(), msg };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let fx: TableFixture = serde_json::from_str(&text).map_err(|e| err(e.to_string()))?;
    fx.pd.validate().map_err(|e| err(e.to_string()))?;
    Ok(fx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    Pass,
    Fail,
    /// The table lists no representation for this knot.
    Absent,
    MissingFixture,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub name: String,
    pub rep: Option<String>,
    pub status: RowStatus,
    /// Matched the reference only after `t -> 1/t`.
    pub mirrored: bool,
    pub rep_jones: Option<LaurentPoly>,
    pub reference_jones: Option<LaurentPoly>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
}

impl TableReport {
    pub fn failures(&self) -> impl Iterator<Item = &TableRow> {
        self.rows.iter().filter(|r| r.status == RowStatus::Fail)
    }

    pub fn row(&self, name: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

fn check_row(name: &str, rep: Option<&str>, dir: &Path) -> TableRow {
    let mut row = TableRow {
        name: name.to_string(),
        rep: rep.map(str::to_string),
        status: RowStatus::Fail,
        mirrored: false,
        rep_jones: None,
        reference_jones: None,
        note: String::new(),
    };
    let Some(rep) = rep else {
        row.status = RowStatus::Absent;
        row.note = "no representation listed".into();
        return row;
    };
    let path = dir.join(format!("{name}.pd.json"));
    if !path.exists() {
        row.status = RowStatus::MissingFixture;
        row.note = format!("skipped: {} not found", path.display());
        return row;
    }
    let reference = match load_fixture(&path).and_then(|fx| {
        oracle::jones(&fx.pd).map_err(|e| CensusError::Fixture { path: path.display().to_string(), msg: e.to_string() })
    }) {
        Ok(j) => j,
        Err(e) => {
            row.note = e.to_string();
            return row;
        }
    };
    row.reference_jones = Some(reference.clone());
    let pd = match parse_rep(rep).map_err(|e| e.to_string()).and_then(|r| pd_from_rep(&r).map_err(|e| e.to_string())) {
        Ok(pd) => pd,
        Err(e) => {
            row.note = e;
            return row;
        }
    };
    match pd.components() {
        Ok(1) => {}
        Ok(n) => {
            row.note = format!("representation is a {n}-component link");
            return row;
        }
        Err(e) => {
            row.note = e.to_string();
            return row;
        }
    }
    let jones = match oracle::jones(&pd) {
        Ok(j) => j,
        Err(e) => {
            row.note = e.to_string();
            return row;
        }
    };
    if jones == reference {
        row.status = RowStatus::Pass;
    } else if jones == reference.invert_variable() {
        row.status = RowStatus::Pass;
        row.mirrored = true;
    } else {
        row.note = "Jones polynomials differ".into();
    }
    row.rep_jones = Some(jones);
    row
}

/// Checks table rows against fixture diagrams in `dir` up to mirror image.
/// Rows without a fixture are reported and skipped.
pub fn verify_table(entries: &[(&str, Option<&str>)], dir: &Path) -> TableReport {
    TableReport { rows: entries.par_iter().map(|(name, rep)| check_row(name, *rep, dir)).collect() }
}
