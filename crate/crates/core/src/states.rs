//! Kauffman state enumeration for a marked diagram.
//!
//! A Kauffman state of `(D, e)` assigns every crossing one corner, with the
//! corners lying in pairwise-distinct faces not adjacent to the marked edge
//! `e`. States are found by backtracking over crossings, always branching at
//! the crossing with the fewest remaining candidate faces and propagating
//! forced moves (a face whose last remaining incident crossing must take
//! it). The state count equals the number of spanning trees of either
//! checkerboard graph, which serves as the independent counting oracle.

use num_bigint::BigUint;
use serde::Serialize;

use crate::diagram::{Color, Diagram};
use crate::{CrossingId, EdgeLabel, Error, FaceId, Result};

/// Default cap on the number of enumerated states before aborting with a
/// resource error.
pub const DEFAULT_STATE_CAP: usize = 10_000_000;

/// A marked edge together with the two adjacent faces it excludes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MarkedEdge {
    pub edge: EdgeLabel,
    pub excluded: [FaceId; 2],
}

/// All edges whose two sides are distinct faces, each paired with its
/// excluded faces. For a valid knot diagram the checkerboard coloring makes
/// every edge eligible, but the filter keeps the contract honest.
pub fn eligible_marked_edges(d: &Diagram) -> Result<Vec<MarkedEdge>> {
    let mut out = Vec::new();
    for e in d.edges() {
        let (f1, f2) = d.edge_sides(e.label);
        if f1 != f2 {
            out.push(MarkedEdge {
                edge: e.label,
                excluded: [f1.min(f2), f1.max(f2)],
            });
        }
    }
    if out.is_empty() {
        return Err(Error::NoEligibleEdge);
    }
    Ok(out)
}

/// The marked edge with the lowest label.
pub fn first_marked_edge(d: &Diagram) -> Result<MarkedEdge> {
    Ok(eligible_marked_edges(d)?[0])
}

/// A Kauffman state: per crossing, the assigned (face, quadrant).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KauffmanState {
    assignment: Vec<(FaceId, u8)>,
}

impl KauffmanState {
    /// Assignment indexed by crossing id.
    pub fn assignment(&self) -> &[(FaceId, u8)] {
        &self.assignment
    }

    /// Face assigned to a crossing.
    pub fn face_of(&self, c: CrossingId) -> FaceId {
        self.assignment[c].0
    }

    /// Crossing assigned to a face, by the bijection.
    pub fn crossing_of(&self, f: FaceId) -> Option<CrossingId> {
        self.assignment.iter().position(|&(fi, _)| fi == f)
    }

    /// Serialize as `[crossing, face, quadrant]` triples.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        self.assignment
            .iter()
            .enumerate()
            .map(|(c, &(f, q))| [c, f, q as usize])
            .collect()
    }

    /// Verify the bijection invariants against a diagram and marked edge.
    pub fn validate(&self, d: &Diagram, e: &MarkedEdge) -> Result<()> {
        if self.assignment.len() != d.n() {
            return Err(Error::Internal("state length mismatch".into()));
        }
        let mut used = vec![false; d.faces().len()];
        for (c, &(f, q)) in self.assignment.iter().enumerate() {
            if q > 3 || d.face_at(c, q) != f {
                return Err(Error::Internal(format!(
                    "corner ({c}, {q}) does not lie in face {f}"
                )));
            }
            if e.excluded.contains(&f) {
                return Err(Error::Internal(format!("state uses excluded face {f}")));
            }
            if used[f] {
                return Err(Error::Internal(format!("face {f} used twice")));
            }
            used[f] = true;
        }
        Ok(())
    }
}

struct Search<'a> {
    /// Candidate (face, quadrant) corners per crossing, marked faces
    /// already filtered out.
    cand: Vec<Vec<(FaceId, u8)>>,
    /// Corners incident to each face, over unmarked faces.
    face_corners: Vec<Vec<(CrossingId, u8)>>,
    /// Entries of `face_corners[f]` whose crossing is still unassigned.
    face_open: Vec<usize>,
    face_used: Vec<bool>,
    assigned: Vec<Option<(FaceId, u8)>>,
    unassigned: usize,
    emitted: usize,
    cap: usize,
    visit: &'a mut dyn FnMut(&KauffmanState) -> Result<()>,
}

impl Search<'_> {
    fn assign(&mut self, c: CrossingId, corner: (FaceId, u8)) {
        debug_assert!(self.assigned[c].is_none());
        debug_assert!(!self.face_used[corner.0]);
        self.assigned[c] = Some(corner);
        self.face_used[corner.0] = true;
        self.unassigned -= 1;
        for &(f, _) in &self.cand[c] {
            self.face_open[f] -= 1;
        }
    }

    fn unassign(&mut self, c: CrossingId) {
        let corner = self.assigned[c].take().expect("crossing was assigned");
        self.face_used[corner.0] = false;
        self.unassigned += 1;
        for &(f, _) in &self.cand[c] {
            self.face_open[f] += 1;
        }
    }

    /// Assign every face whose last open corner is forced. Returns the
    /// trail of assignments made, or None on a dead end.
    fn propagate(&mut self) -> Option<Vec<CrossingId>> {
        let mut trail = Vec::new();
        loop {
            let mut progressed = false;
            for f in 0..self.face_open.len() {
                if self.face_used[f] {
                    continue;
                }
                match self.face_open[f] {
                    0 => {
                        for &c in &trail {
                            self.unassign(c);
                        }
                        return None; // unused face can no longer be covered
                    }
                    1 => {
                        let &(c, q) = self.face_corners[f]
                            .iter()
                            .find(|&&(c, _)| self.assigned[c].is_none())
                            .expect("open count said one corner remains");
                        self.assign(c, (f, q));
                        trail.push(c);
                        progressed = true;
                    }
                    _ => {}
                }
            }
            if !progressed {
                return Some(trail);
            }
        }
    }

    fn run(&mut self) -> Result<()> {
        let Some(trail) = self.propagate() else {
            return Ok(());
        };
        let result = self.branch();
        for &c in trail.iter().rev() {
            self.unassign(c);
        }
        result
    }

    fn branch(&mut self) -> Result<()> {
        if self.unassigned == 0 {
            self.emitted += 1;
            if self.emitted > self.cap {
                return Err(Error::StateCapExceeded { cap: self.cap });
            }
            let state = KauffmanState {
                assignment: self
                    .assigned
                    .iter()
                    .map(|a| a.expect("complete assignment"))
                    .collect(),
            };
            return (self.visit)(&state);
        }
        // Branch at the crossing with the fewest live candidates.
        let mut best: Option<(usize, CrossingId)> = None;
        for c in 0..self.cand.len() {
            if self.assigned[c].is_some() {
                continue;
            }
            let live = self.cand[c]
                .iter()
                .filter(|&&(f, _)| !self.face_used[f])
                .count();
            if best.is_none_or(|(b, _)| live < b) {
                best = Some((live, c));
                if live == 0 {
                    break;
                }
            }
        }
        let (live, c) = best.expect("some crossing is unassigned");
        if live == 0 {
            return Ok(());
        }
        let corners = self.cand[c].clone();
        for corner in corners {
            if self.face_used[corner.0] {
                continue;
            }
            self.assign(c, corner);
            self.run()?;
            self.unassign(c);
        }
        Ok(())
    }
}

/// Stream every Kauffman state of `(d, e)` to a visitor, in deterministic
/// search order (not the canonical sorted order). Errors from the visitor
/// abort the enumeration.
pub fn for_each_state(
    d: &Diagram,
    e: &MarkedEdge,
    cap: usize,
    mut visit: impl FnMut(&KauffmanState) -> Result<()>,
) -> Result<usize> {
    let nf = d.faces().len();
    let marked = |f: FaceId| e.excluded.contains(&f);
    let mut cand: Vec<Vec<(FaceId, u8)>> = vec![Vec::new(); d.n()];
    let mut face_corners: Vec<Vec<(CrossingId, u8)>> = vec![Vec::new(); nf];
    for (c, corners) in cand.iter_mut().enumerate() {
        for q in 0u8..4 {
            let f = d.face_at(c, q);
            if !marked(f) {
                corners.push((f, q));
                face_corners[f].push((c, q));
            }
        }
    }
    let face_open: Vec<usize> = face_corners.iter().map(Vec::len).collect();
    // Marked faces play no part; mark them used so propagation skips them.
    let face_used: Vec<bool> = (0..nf).map(marked).collect();
    let mut search = Search {
        cand,
        face_corners,
        face_open,
        face_used,
        assigned: vec![None; d.n()],
        unassigned: d.n(),
        emitted: 0,
        cap,
        visit: &mut visit,
    };
    search.run()?;
    Ok(search.emitted)
}

/// The complete set of Kauffman states of `(d, e)` in canonical order:
/// lexicographic by crossing id, then assigned face id.
pub fn enumerate_states(d: &Diagram, e: &MarkedEdge, cap: usize) -> Result<Vec<KauffmanState>> {
    let mut states = Vec::new();
    for_each_state(d, e, cap, |x| {
        states.push(x.clone());
        Ok(())
    })?;
    states.sort();
    for w in states.windows(2) {
        if w[0] == w[1] {
            return Err(Error::Internal("duplicate Kauffman state emitted".into()));
        }
    }
    Ok(states)
}

/// Independent state-count oracle: the number of spanning trees of the
/// checkerboard graph, computed on both color classes, which must agree.
pub fn state_count_oracle(d: &Diagram) -> Result<BigUint> {
    let black = d.checkerboard_graph(Color::Black)?.spanning_tree_count();
    let white = d.checkerboard_graph(Color::White)?.spanning_tree_count();
    if black != white {
        return Err(Error::Internal(format!(
            "checkerboard classes disagree on tree count: {black} vs {white}"
        )));
    }
    Ok(black)
}
