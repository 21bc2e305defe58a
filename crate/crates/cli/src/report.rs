//! Census ingestion and report generation.

use std::collections::BTreeMap;

use serde::Serialize;

use kstate::alexander::{determinant, fox_alexander, state_sum_euler};
use kstate::alternation::{verify_theorem, AlternationReport, VerifyOptions};
use kstate::gradings::grade_state;
use kstate::states::{eligible_marked_edges, enumerate_states, state_count_oracle};
use kstate::{parse_gauss, parse_pd, Diagram, EdgeLabel, Error};

/// One census entry: a named diagram plus optional expected values used as
/// cross-checks.
#[derive(Debug, Clone)]
pub struct CensusRecord {
    pub name: String,
    pub input: String,
    pub expected_det: Option<u64>,
    pub expected_alternating: Option<bool>,
}

impl CensusRecord {
    pub fn parse_diagram(&self) -> Result<Diagram, Error> {
        parse_diagram_text(&self.input)
    }
}

/// Parse diagram text: PD tokens or a signed Gauss code.
pub fn parse_diagram_text(text: &str) -> Result<Diagram, Error> {
    let trimmed = text.trim_start();
    if trimmed.starts_with(['O', 'U', 'o', 'u']) {
        parse_gauss(text)
    } else {
        parse_pd(text)
    }
}

/// Parse a census: CSV with a `name,pd[,det[,alternating]]` header (PD
/// fields use `;` inside tokens) or a JSON array of objects with the same
/// fields.
pub fn parse_census(text: &str) -> Result<Vec<CensusRecord>, Error> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return parse_census_json(text);
    }
    let mut lines = text.lines().enumerate();
    let Some((_, header)) = lines.next() else {
        return Err(Error::malformed("empty census file", Some(0)));
    };
    if !header.trim_start().starts_with("name,") {
        return Err(Error::malformed(
            "census CSV must start with a `name,pd` header",
            Some(0),
        ));
    }
    let mut records = Vec::new();
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() < 2 {
            return Err(Error::malformed(
                format!("census line {} needs name and pd fields", lineno + 1),
                None,
            ));
        }
        let expected_det = match fields.get(2).copied().unwrap_or_default() {
            "" => None,
            s => Some(s.parse::<u64>().map_err(|_| {
                Error::malformed(format!("bad det field {s:?} on line {}", lineno + 1), None)
            })?),
        };
        let expected_alternating = match fields.get(3).copied().unwrap_or_default() {
            "" => None,
            s => Some(s.parse::<bool>().map_err(|_| {
                Error::malformed(
                    format!("bad alternating field {s:?} on line {}", lineno + 1),
                    None,
                )
            })?),
        };
        records.push(CensusRecord {
            name: fields[0].to_string(),
            input: fields[1].replace(';', ","),
            expected_det,
            expected_alternating,
        });
    }
    if records.is_empty() {
        return Err(Error::malformed("census has no records", None));
    }
    Ok(records)
}

fn parse_census_json(text: &str) -> Result<Vec<CensusRecord>, Error> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::malformed(format!("invalid census JSON: {e}"), None))?;
    let arr = value
        .as_array()
        .ok_or_else(|| Error::malformed("census JSON must be an array", None))?;
    let mut records = Vec::new();
    for (i, entry) in arr.iter().enumerate() {
        let name = entry
            .get("name")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::malformed(format!("census entry {i} missing name"), None))?;
        let pd = entry
            .get("pd")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::malformed(format!("census entry {i} missing pd"), None))?;
        records.push(CensusRecord {
            name: name.to_string(),
            input: pd.replace(';', ","),
            expected_det: entry.get("det").and_then(|v| v.as_u64()),
            expected_alternating: entry.get("alternating").and_then(|v| v.as_bool()),
        });
    }
    if records.is_empty() {
        return Err(Error::malformed("census has no records", None));
    }
    Ok(records)
}

/// Cross-checks against the expected fields of a census record.
#[derive(Debug, Clone, Serialize)]
pub struct ExpectedChecks {
    pub det_ok: Option<bool>,
    pub alternating_ok: Option<bool>,
}

/// Full analysis of one diagram.
#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub name: String,
    pub crossings: usize,
    pub edges: usize,
    pub faces: usize,
    pub writhe: i64,
    pub alternating: bool,
    pub reduced: bool,
    pub gauss: String,
    pub report: AlternationReport,
    /// Spanning-tree count of the checkerboard graph (decimal string).
    pub tree_count: String,
    /// Enumerated counts equal the oracle on every checked edge.
    pub oracle_match: bool,
    /// delta value -> state count, for `gradings_edge`.
    pub delta_histogram: BTreeMap<i64, u64>,
    pub gradings_edge: EdgeLabel,
    pub alexander: AlexanderReport,
    pub expected: ExpectedChecks,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlexanderReport {
    pub fox: BTreeMap<String, String>,
    pub fox_string: String,
    pub state_sum: BTreeMap<String, String>,
    pub state_sum_edge: EdgeLabel,
    pub equal: bool,
    pub determinant: String,
}

/// Either a full report or an isolated per-diagram failure.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum RecordOutcome {
    Ok(Box<DiagramReport>),
    Failed { name: String, error: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub version: &'static str,
    pub diagrams: Vec<RecordOutcome>,
}

pub struct AnalyzeOptions {
    pub edge: Option<EdgeLabel>,
    pub all_edges: bool,
    pub deep: bool,
    pub state_cap: usize,
}

/// Analyze one record. Errors are returned so the batch driver can isolate
/// them per record.
pub fn analyze_record(rec: &CensusRecord, opts: &AnalyzeOptions) -> Result<DiagramReport, Error> {
    let d = rec.parse_diagram()?;
    let verify_opts = VerifyOptions {
        edge: if opts.all_edges { None } else { opts.edge },
        deep: opts.deep,
        state_cap: opts.state_cap,
    };
    let report = verify_theorem(&d, &rec.name, &verify_opts)?;

    let tree_count = state_count_oracle(&d)?;
    let oracle_match = report.spreads.iter().all(|s| {
        s.state_count
            .is_some_and(|c| num_bigint::BigUint::from(c) == tree_count)
    });

    let gradings_edge = match opts.edge {
        Some(e) => eligible_marked_edges(&d)?
            .into_iter()
            .find(|m| m.edge == e)
            .ok_or_else(|| {
                Error::malformed(format!("edge {e} is not an eligible marked edge"), None)
            })?,
        None => eligible_marked_edges(&d)?[0],
    };
    let mut delta_histogram: BTreeMap<i64, u64> = BTreeMap::new();
    for x in enumerate_states(&d, &gradings_edge, opts.state_cap)? {
        let delta = grade_state(&d, &x).delta;
        let key = delta
            .as_integer()
            .ok_or_else(|| Error::GradingContract(format!("non-integer delta {delta}")))?;
        *delta_histogram.entry(key).or_default() += 1;
    }

    let fox = fox_alexander(&d)?;
    let state_sum = state_sum_euler(&d, &gradings_edge, opts.state_cap)?;
    let det = determinant(&d)?;
    let alexander = AlexanderReport {
        fox: fox.to_coeff_map(),
        fox_string: fox.to_string(),
        state_sum: state_sum.to_coeff_map(),
        state_sum_edge: gradings_edge.edge,
        equal: fox == state_sum,
        determinant: det.to_string(),
    };

    let expected = ExpectedChecks {
        det_ok: rec.expected_det.map(|e| det == e.into()),
        alternating_ok: rec.expected_alternating.map(|e| d.is_alternating() == e),
    };

    Ok(DiagramReport {
        name: rec.name.clone(),
        crossings: d.n(),
        edges: d.edges().len(),
        faces: d.faces().len(),
        writhe: d.writhe(),
        alternating: d.is_alternating(),
        reduced: d.is_reduced(),
        gauss: d.to_gauss(),
        report,
        tree_count: tree_count.to_string(),
        oracle_match,
        delta_histogram,
        gradings_edge: gradings_edge.edge,
        alexander,
        expected,
    })
}

impl DiagramReport {
    /// True when every verified property held.
    pub fn all_ok(&self) -> bool {
        self.report.theorem_ok
            && self.report.decomposition_ok
            && self.report.errors.is_empty()
            && self.oracle_match
            && self.alexander.equal
            && self.expected.det_ok.unwrap_or(true)
            && self.expected.alternating_ok.unwrap_or(true)
    }
}
