//! Output documents. Big integers are written as decimal strings.

use serde::{Deserialize, Serialize};
use sigmaeq::constructions::{FamilyWitness, ParityTag};
use sigmaeq::verify::{BoundKind, BoundReport, Check};
use sigmaeq::{Natural, SolutionSet, SolutionTuple};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn strings(t: &SolutionTuple) -> Vec<String> {
    t.entries().iter().map(Natural::to_string).collect()
}

#[derive(Debug, Serialize, Deserialize)]
pub struct StatsDoc {
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "N0")]
    pub n0: String,
    #[serde(rename = "N2")]
    pub n2: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EnumerateDoc {
    pub n: usize,
    pub k: usize,
    pub count: usize,
    pub complete: bool,
    pub stats: StatsDoc,
    pub solutions: Vec<Vec<String>>,
}

impl EnumerateDoc {
    pub fn from_set(set: &SolutionSet) -> Self {
        EnumerateDoc {
            n: set.n,
            k: set.k,
            count: set.count(),
            complete: set.complete,
            stats: StatsDoc {
                m: set.stats.max_last.to_string(),
                n0: set.stats.max_product.to_string(),
                n2: set.stats.max_head_product.to_string(),
            },
            solutions: set.solutions.iter().map(strings).collect(),
        }
    }

    /// Parses and re-verifies every tuple.
    pub fn into_set(self) -> Result<SolutionSet, CliError> {
        let tuples = self
            .solutions
            .iter()
            .map(|row| row.join(",").parse::<SolutionTuple>())
            .collect::<Result<Vec<_>, _>>()?;
        if tuples.len() != self.count {
            return Err(CliError::Invalid(format!(
                "count {} does not match {} listed solutions",
                self.count,
                tuples.len()
            )));
        }
        Ok(SolutionSet::new(self.n, self.k, tuples, self.complete)?)
    }
}

pub fn tuples_csv(
    rows: &[SolutionTuple],
    extra: &[(&str, Vec<String>)],
) -> Result<String, CliError> {
    let width = rows.iter().map(SolutionTuple::len).max().unwrap_or(0);
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    let mut header: Vec<String> = (1..=width).map(|i| format!("x{i}")).collect();
    header.extend(extra.iter().map(|(name, _)| name.to_string()));
    w.write_record(&header)?;
    for (i, row) in rows.iter().enumerate() {
        let mut rec = strings(row);
        rec.extend(extra.iter().map(|(_, col)| col[i].clone()));
        w.write_record(&rec)?;
    }
    csv_string(w)
}

pub fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
}

pub fn enumerate_text(set: &SolutionSet) -> String {
    let mut out = format!(
        "# n={} k={} count={} complete={} M={} N0={} N2={}\n",
        set.n,
        set.k,
        set.count(),
        set.complete,
        set.stats.max_last,
        set.stats.max_product,
        set.stats.max_head_product
    );
    for s in &set.solutions {
        out.push_str(&format!("{s}\n"));
    }
    out
}

#[derive(Debug, Serialize)]
pub struct CheckDoc {
    pub name: String,
    pub kind: &'static str,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub slack: String,
}

impl From<&Check> for CheckDoc {
    fn from(c: &Check) -> Self {
        CheckDoc {
            name: c.name.clone(),
            kind: match c.kind {
                BoundKind::Upper => "upper",
                BoundKind::Lower => "lower",
            },
            lhs: c.lhs.to_string(),
            rhs: c.rhs.to_string(),
            holds: c.holds,
            slack: c.slack.to_string(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReportDoc {
    pub tuple: Vec<String>,
    pub k: usize,
    pub solution: bool,
    pub all_hold: bool,
    pub checks: Vec<CheckDoc>,
}

impl ReportDoc {
    pub fn from_report(r: &BoundReport) -> Self {
        ReportDoc {
            tuple: strings(&r.subject),
            k: r.k,
            solution: true,
            all_hold: r.all_hold(),
            checks: r.checks.iter().map(CheckDoc::from).collect(),
        }
    }

    pub fn not_a_solution(t: &SolutionTuple, k: usize) -> Self {
        ReportDoc {
            tuple: strings(t),
            k,
            solution: false,
            all_hold: false,
            checks: Vec::new(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessDoc {
    pub base: Vec<String>,
    pub lcm: String,
    pub extension: Vec<String>,
    pub tag: &'static str,
}

pub fn tag_name(t: ParityTag) -> &'static str {
    match t {
        ParityTag::Base => "base",
        ParityTag::PlusOne => "plus-one",
        ParityTag::PlusTwo => "plus-two",
    }
}

impl From<&FamilyWitness> for WitnessDoc {
    fn from(w: &FamilyWitness) -> Self {
        WitnessDoc {
            base: strings(&w.base),
            lcm: w.lcm.to_string(),
            extension: strings(&w.extension),
            tag: tag_name(w.parity_tag),
        }
    }
}
