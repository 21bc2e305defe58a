//! Dealternating bounds and the generator-level theorem check.
//!
//! A knot projection admits exactly two alternating over/under assignments:
//! along the knot the pass types must strictly alternate, and a single
//! global binary choice generates both. Comparing a diagram against the two
//! assignments solves the per-diagram dealternating problem in O(n); no
//! subset search is needed. The verifier then checks, for every eligible
//! marked edge, that the delta-grading spread of the Kauffman states never
//! exceeds dalt(D), and optionally mirrors the four-case proof decomposition
//! on every state pair.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::diagram::Diagram;
use crate::gradings::{
    check_decomposition, check_good_domain_uniformity, delta, f_value, quadrant_class, Quarter,
};
use crate::states::{eligible_marked_edges, enumerate_states, KauffmanState, MarkedEdge};
use crate::{CrossingId, EdgeLabel, Error, Result};

/// A set of crossings whose change makes the diagram alternating.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixableSet {
    pub crossings: BTreeSet<CrossingId>,
}

impl FixableSet {
    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn contains(&self, c: CrossingId) -> bool {
        self.crossings.contains(&c)
    }
}

/// The two alternating over/under assignments of the underlying projection,
/// as complementary flip masks relative to the diagram.
///
/// Pass types along the knot must alternate with edge-label parity, so mask
/// `p` collects the crossings whose under-arrival edge has parity `p`; the
/// masks partition the crossings.
pub fn alternating_assignments(d: &Diagram) -> Result<[FixableSet; 2]> {
    let mut masks = [BTreeSet::new(), BTreeSet::new()];
    for (c, cr) in d.crossings().iter().enumerate() {
        let under = cr.under_in();
        let over = cr.over_in();
        if under % 2 == over % 2 {
            // Gauss parity guarantees this never fires for a planar knot
            // diagram; firing means the parser is broken.
            return Err(Error::Internal(format!(
                "crossing {c} has under/over arrivals of equal parity"
            )));
        }
        masks[under % 2].insert(c);
    }
    Ok(masks.map(|crossings| FixableSet { crossings }))
}

/// The smaller of the two alternating flip masks; its size is dalt(D).
/// Ties go to the mask containing crossing 0, for determinism.
pub fn min_fixable_set(d: &Diagram) -> Result<FixableSet> {
    let [a, b] = alternating_assignments(d)?;
    Ok(if a.len() < b.len() {
        a
    } else if b.len() < a.len() {
        b
    } else if a.contains(0) {
        a
    } else {
        b
    })
}

/// dalt(D): the minimal number of crossing changes that make this diagram
/// alternating. An upper bound for dalt(K).
pub fn dalt_diagram(d: &Diagram) -> Result<usize> {
    Ok(min_fixable_set(d)?.len())
}

/// Per-domain categories of the proof decomposition for a state pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub struct CaseTally {
    /// x-corner static, y-corner fixable.
    pub static_fixable: u64,
    /// x-corner fixable, y-corner static.
    pub fixable_static: u64,
    /// Both fixable.
    pub both_fixable: u64,
    /// Both static.
    pub both_static: u64,
}

impl CaseTally {
    pub fn as_array(&self) -> [u64; 4] {
        [
            self.static_fixable,
            self.fixable_static,
            self.both_fixable,
            self.both_static,
        ]
    }

    fn add(&mut self, other: &CaseTally) {
        self.static_fixable += other.static_fixable;
        self.fixable_static += other.fixable_static;
        self.both_fixable += other.both_fixable;
        self.both_static += other.both_static;
    }
}

/// Result of checking one state pair against a fixable set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    pub tally: CaseTally,
    /// |delta(x) - delta(y)|, integral for knots.
    pub delta_diff: u64,
    /// Whether |delta(x) - delta(y)| <= |F| held.
    pub bound_ok: bool,
}

/// Classify every domain of `Dom_e` for the pair `(x, y)` and verify the
/// proof decomposition: mixed-case domains change the f-value by at most
/// 1/2, same-case domains contribute identical f-values, each mixed case
/// occurs at most |F| times, and |delta(x) - delta(y)| <= |F|.
pub fn pair_decomposition_check(
    d: &Diagram,
    e: &MarkedEdge,
    x: &KauffmanState,
    y: &KauffmanState,
    fixable: &FixableSet,
) -> Result<PairCheck> {
    let mut tally = CaseTally::default();
    for face in d.faces() {
        if e.excluded.contains(&face.id) {
            continue;
        }
        let cx = x
            .crossing_of(face.id)
            .ok_or_else(|| Error::Internal(format!("face {} unassigned in x", face.id)))?;
        let cy = y
            .crossing_of(face.id)
            .ok_or_else(|| Error::Internal(format!("face {} unassigned in y", face.id)))?;
        let fx = corner_f(d, x, cx);
        let fy = corner_f(d, y, cy);
        let diff = (fx - fy).abs();
        match (fixable.contains(cx), fixable.contains(cy)) {
            (false, true) => tally.static_fixable += 1,
            (true, false) => tally.fixable_static += 1,
            (true, true) => tally.both_fixable += 1,
            (false, false) => tally.both_static += 1,
        }
        match (fixable.contains(cx), fixable.contains(cy)) {
            (false, true) | (true, false) => {
                if diff > Quarter::halves(1) {
                    return Err(Error::GradingContract(format!(
                        "mixed-case domain {} has f-difference {diff} > 1/2",
                        face.id
                    )));
                }
            }
            _ => {
                if diff != Quarter::ZERO {
                    return Err(Error::GradingContract(format!(
                        "same-case domain {} has f-difference {diff}",
                        face.id
                    )));
                }
            }
        }
    }
    let bound = fixable.len() as u64;
    if tally.static_fixable > bound || tally.fixable_static > bound {
        return Err(Error::GradingContract(format!(
            "mixed-case domain counts {:?} exceed |F| = {bound}",
            tally.as_array()
        )));
    }
    let dd = (delta(d, x) - delta(d, y)).abs();
    let delta_diff = dd
        .as_integer()
        .ok_or_else(|| Error::GradingContract(format!("delta difference {dd} not integral")))?
        as u64;
    Ok(PairCheck {
        tally,
        delta_diff,
        bound_ok: delta_diff <= bound,
    })
}

fn corner_f(d: &Diagram, x: &KauffmanState, c: CrossingId) -> Quarter {
    let q = x.assignment()[c].1;
    f_value(d.crossings()[c].sign, quadrant_class(d, c, q))
}

/// Spread result for one marked edge within a report.
#[derive(Debug, Clone, Serialize)]
pub struct EdgeSpread {
    pub edge: EdgeLabel,
    pub state_count: Option<u64>,
    pub spread: Option<u64>,
    pub error: Option<String>,
}

/// Aggregated statistics from the all-pairs decomposition check.
#[derive(Debug, Clone, Serialize, Default)]
pub struct DeepStats {
    pub pairs_checked: u64,
    pub case_counts: CaseTally,
    /// Some pair attained |delta(x) - delta(y)| = |F| (recorded, not
    /// asserted to exist).
    pub equality_attained: bool,
}

/// Verification record for one diagram.
#[derive(Debug, Clone, Serialize)]
pub struct AlternationReport {
    pub id: String,
    pub crossings: usize,
    pub writhe: i64,
    pub alternating: bool,
    pub beta: usize,
    pub dalt_diagram: usize,
    pub fixable: Vec<CrossingId>,
    pub spreads: Vec<EdgeSpread>,
    pub max_spread: Option<u64>,
    /// Every computed spread is at most dalt(D).
    pub theorem_ok: bool,
    /// Per-state f-decomposition and good-domain uniformity held.
    pub decomposition_ok: bool,
    /// Informational: max spread <= beta(D) (a cited result at homology
    /// level; reported, not asserted).
    pub spread_le_beta: Option<bool>,
    pub deep: Option<DeepStats>,
    pub errors: Vec<String>,
}

/// Options for [`verify_theorem`].
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Check only this marked edge instead of all eligible ones.
    pub edge: Option<EdgeLabel>,
    /// Run the quadratic all-pairs decomposition check.
    pub deep: bool,
    pub state_cap: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            edge: None,
            deep: false,
            state_cap: crate::states::DEFAULT_STATE_CAP,
        }
    }
}

/// Run the full verification suite on one diagram. Sub-errors (empty state
/// sets, caps) are aggregated into the report rather than aborting.
pub fn verify_theorem(d: &Diagram, id: &str, opts: &VerifyOptions) -> Result<AlternationReport> {
    let fixable = min_fixable_set(d)?;
    let dalt = fixable.len();
    let beta = d.bad_domain_count();
    let mut errors = Vec::new();

    // Changing the fixable crossings must yield an alternating diagram.
    match d.with_flipped(&fixable.crossings) {
        Ok(flipped) if flipped.is_alternating() => {}
        Ok(_) => {
            return Err(Error::Internal(
                "min fixable set does not alternate the diagram".into(),
            ))
        }
        Err(err) => return Err(err),
    }

    let mut decomposition_ok = true;
    if let Err(err) = check_good_domain_uniformity(d) {
        decomposition_ok = false;
        errors.push(err.to_string());
    }

    let all_edges = eligible_marked_edges(d)?;
    let edges: Vec<MarkedEdge> = match opts.edge {
        Some(label) => {
            let found = all_edges.iter().find(|m| m.edge == label).copied();
            match found {
                Some(m) => vec![m],
                None => {
                    return Err(Error::malformed(
                        format!("edge {label} is not an eligible marked edge"),
                        None,
                    ))
                }
            }
        }
        None => all_edges,
    };

    let mut spreads = Vec::with_capacity(edges.len());
    let mut max_spread: Option<u64> = None;
    let mut deep = opts.deep.then(DeepStats::default);
    for e in &edges {
        match enumerate_states(d, e, opts.state_cap) {
            Ok(states) => {
                let mut min: Option<Quarter> = None;
                let mut max: Option<Quarter> = None;
                for x in &states {
                    if let Err(err) = x.validate(d, e).and_then(|_| check_decomposition(d, x)) {
                        decomposition_ok = false;
                        errors.push(format!("edge {}: {err}", e.edge));
                    }
                    let dv = delta(d, x);
                    min = Some(min.map_or(dv, |m| m.min(dv)));
                    max = Some(max.map_or(dv, |m| m.max(dv)));
                }
                let spread = match (min, max) {
                    (Some(lo), Some(hi)) => match (hi - lo).as_integer() {
                        Some(v) => Some(v as u64),
                        None => {
                            decomposition_ok = false;
                            errors.push(format!("edge {}: non-integer spread", e.edge));
                            None
                        }
                    },
                    _ => {
                        errors.push(format!("edge {}: empty state set", e.edge));
                        None
                    }
                };
                if let Some(s) = spread {
                    max_spread = Some(max_spread.map_or(s, |m| m.max(s)));
                }
                if let Some(stats) = deep.as_mut() {
                    for i in 0..states.len() {
                        for j in i + 1..states.len() {
                            match pair_decomposition_check(d, e, &states[i], &states[j], &fixable) {
                                Ok(check) => {
                                    stats.pairs_checked += 1;
                                    stats.case_counts.add(&check.tally);
                                    if !check.bound_ok {
                                        decomposition_ok = false;
                                        errors.push(format!(
                                            "edge {}: pair bound violated ({} > {})",
                                            e.edge, check.delta_diff, dalt
                                        ));
                                    }
                                    if check.delta_diff == dalt as u64 && dalt > 0 {
                                        stats.equality_attained = true;
                                    }
                                }
                                Err(err) => {
                                    decomposition_ok = false;
                                    errors.push(format!("edge {}: {err}", e.edge));
                                }
                            }
                        }
                    }
                }
                spreads.push(EdgeSpread {
                    edge: e.edge,
                    state_count: Some(states.len() as u64),
                    spread,
                    error: None,
                });
            }
            Err(err) => {
                errors.push(format!("edge {}: {err}", e.edge));
                spreads.push(EdgeSpread {
                    edge: e.edge,
                    state_count: None,
                    spread: None,
                    error: Some(err.to_string()),
                });
            }
        }
    }

    let theorem_ok = spreads
        .iter()
        .all(|s| s.spread.is_some_and(|v| v as usize <= dalt));
    let spread_le_beta = max_spread.map(|s| s as usize <= beta);

    Ok(AlternationReport {
        id: id.to_string(),
        crossings: d.n(),
        writhe: d.writhe(),
        alternating: d.is_alternating(),
        beta,
        dalt_diagram: dalt,
        fixable: fixable.crossings.iter().copied().collect(),
        spreads,
        max_spread,
        theorem_ok,
        decomposition_ok,
        spread_le_beta,
        deep,
        errors,
    })
}

/// Brute-force dealternating solver for cross-checking: smallest flip
/// subset that alternates the diagram. Exponential; intended for n <= 8.
pub fn brute_force_dalt(d: &Diagram) -> Result<usize> {
    let n = d.n();
    assert!(n <= 20, "brute force limited to small diagrams");
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let set: BTreeSet<CrossingId> = (0..n).filter(|&c| mask >> c & 1 == 1).collect();
        if d.with_flipped(&set)?.is_alternating() {
            best = Some(size);
        }
    }
    best.ok_or_else(|| Error::Internal("no flip subset alternates the diagram".into()))
}
