//! Oriented knot diagrams as rotation systems.
//!
//! A PD token `X[a,b,c,d]` lists the four edges at a crossing in
//! counterclockwise order starting at the incoming under-strand. Edge labels
//! run 1..=2n consecutively along the knot orientation, so the under-strand
//! exits at `a + 1` and the over-strand runs between `b` and `d` in the
//! direction of increasing label. Faces are orbits of the face-tracing
//! permutation: arriving at slot `s`, the walk exits along slot `s + 1` and
//! sweeps the quadrant between them.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::{CrossingId, EdgeLabel, Error, FaceId, Result};

/// Sign of a crossing under the edge-numbering convention: positive when the
/// over-strand enters at slot `d`, negative when it enters at slot `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flipped(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Whether a strand passes over or under at a crossing endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pass {
    Over,
    Under,
}

/// Checkerboard color class of a face.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// One crossing: four edge labels in counterclockwise slot order
/// `[a, b, c, d]` with slot 0 the incoming under-strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub slots: [EdgeLabel; 4],
    pub sign: Sign,
    /// Slot (1 or 3) where the over-strand enters.
    pub over_in_slot: usize,
}

impl Crossing {
    /// Incoming under edge.
    pub fn under_in(&self) -> EdgeLabel {
        self.slots[0]
    }

    /// Incoming over edge.
    pub fn over_in(&self) -> EdgeLabel {
        self.slots[self.over_in_slot]
    }

    /// True if the half-edge at `slot` points into the crossing.
    pub fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in_slot
    }
}

/// An edge with its two crossing incidences. `tail` is where the edge
/// departs, `head` where it arrives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: EdgeLabel,
    pub tail: (CrossingId, usize),
    pub head: (CrossingId, usize),
}

impl Edge {
    /// Pass type of the strand at the tail crossing (under iff even slot).
    pub fn tail_pass(&self) -> Pass {
        if self.tail.1.is_multiple_of(2) {
            Pass::Under
        } else {
            Pass::Over
        }
    }

    /// Pass type of the strand at the head crossing.
    pub fn head_pass(&self) -> Pass {
        if self.head.1.is_multiple_of(2) {
            Pass::Under
        } else {
            Pass::Over
        }
    }

    /// An edge is bad when both of its endpoint passes are over or both
    /// are under.
    pub fn is_bad(&self) -> bool {
        self.tail_pass() == self.head_pass()
    }
}

/// A face of the diagram complement: corners in walk order plus the set of
/// boundary edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// (crossing, quadrant) incidences. Quadrant `q` sits between slots `q`
    /// and `q + 1 (mod 4)` of the crossing.
    pub corners: Vec<(CrossingId, u8)>,
    pub boundary_edges: BTreeSet<EdgeLabel>,
}

/// Checkerboard graph on one color class: a vertex per face of that color
/// and one edge per crossing joining the two same-color faces there
/// (self-loops allowed).
#[derive(Debug, Clone)]
pub struct CheckerboardGraph {
    pub color: Color,
    pub vertices: Vec<FaceId>,
    /// One entry per crossing, in crossing order.
    pub edges: Vec<(FaceId, FaceId)>,
}

impl CheckerboardGraph {
    /// Number of spanning trees by the matrix-tree theorem, exact.
    pub fn spanning_tree_count(&self) -> BigUint {
        let k = self.vertices.len();
        if k <= 1 {
            return BigUint::one();
        }
        let index = |f: FaceId| self.vertices.iter().position(|&v| v == f).unwrap();
        let mut lap = vec![vec![num_bigint::BigInt::zero(); k]; k];
        for &(f, g) in &self.edges {
            if f == g {
                continue; // self-loops never enter a spanning tree
            }
            let (i, j) = (index(f), index(g));
            lap[i][i] += 1;
            lap[j][j] += 1;
            lap[i][j] -= 1;
            lap[j][i] -= 1;
        }
        // Any cofactor of the Laplacian; drop the last row and column.
        let m = k - 1;
        let minor: Vec<Vec<num_bigint::BigInt>> = (0..m)
            .map(|i| (0..m).map(|j| lap[i][j].clone()).collect())
            .collect();
        let det = bareiss_determinant(minor);
        det.magnitude().clone()
    }
}

/// Fraction-free Gaussian elimination; exact over the integers.
fn bareiss_determinant(mut m: Vec<Vec<num_bigint::BigInt>>) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev; // exact by Bareiss
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// A validated oriented knot diagram.
///
/// Immutable after construction; faces, writhe, and per-quadrant face ids
/// are computed once and cached.
#[derive(Debug, Clone)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    /// face id of quadrant `q` at each crossing.
    quadrant_face: Vec<[FaceId; 4]>,
    writhe: i64,
}

impl Diagram {
    /// Number of crossings.
    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Edge by label (1..=2n).
    pub fn edge(&self, label: EdgeLabel) -> &Edge {
        &self.edges[label - 1]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Face containing quadrant `q` of crossing `c`.
    pub fn face_at(&self, c: CrossingId, q: u8) -> FaceId {
        self.quadrant_face[c][q as usize]
    }

    /// Sum of crossing signs.
    pub fn writhe(&self) -> i64 {
        self.writhe
    }

    /// True when no crossing is nugatory, i.e. no crossing has two diagonal
    /// quadrants in the same face.
    pub fn is_reduced(&self) -> bool {
        (0..self.n()).all(|c| {
            self.quadrant_face[c][0] != self.quadrant_face[c][2]
                && self.quadrant_face[c][1] != self.quadrant_face[c][3]
        })
    }

    /// The two faces flanking an edge, in (head-side, tail-side) walk order.
    pub fn edge_sides(&self, label: EdgeLabel) -> (FaceId, FaceId) {
        let e = self.edge(label);
        // The face walk arriving at an incidence (c, s) traversed this edge,
        // so the quadrant swept there lies on one side of it.
        let head_side = self.quadrant_face[e.head.0][e.head.1];
        let tail_side = self.quadrant_face[e.tail.0][e.tail.1];
        (head_side, tail_side)
    }

    /// Labels of all bad edges.
    pub fn bad_edges(&self) -> Vec<EdgeLabel> {
        self.edges
            .iter()
            .filter(|e| e.is_bad())
            .map(|e| e.label)
            .collect()
    }

    /// True iff every edge runs from an over-pass to an under-pass.
    pub fn is_alternating(&self) -> bool {
        self.edges.iter().all(|e| !e.is_bad())
    }

    /// beta(D): number of faces with at least one bad boundary edge.
    pub fn bad_domain_count(&self) -> usize {
        let bad: BTreeSet<EdgeLabel> = self.bad_edges().into_iter().collect();
        self.faces
            .iter()
            .filter(|f| f.boundary_edges.iter().any(|e| bad.contains(e)))
            .count()
    }

    /// Proper 2-coloring of faces (adjacent faces across any edge get
    /// opposite colors). Face 0 is colored black.
    pub fn checkerboard_coloring(&self) -> Result<Vec<Color>> {
        let mut colors: Vec<Option<Color>> = vec![None; self.faces.len()];
        colors[0] = Some(Color::Black);
        let mut queue = vec![0usize];
        while let Some(f) = queue.pop() {
            let col = colors[f].unwrap();
            for &label in &self.faces[f].boundary_edges {
                let (s1, s2) = self.edge_sides(label);
                for (a, b) in [(s1, s2), (s2, s1)] {
                    if a == f {
                        match colors[b] {
                            None => {
                                colors[b] = Some(col.other());
                                queue.push(b);
                            }
                            Some(c) if c == col => {
                                return Err(Error::Internal(format!(
                                    "checkerboard coloring inconsistent at edge {label}"
                                )));
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        colors
            .into_iter()
            .enumerate()
            .map(|(f, c)| {
                c.ok_or_else(|| Error::Internal(format!("face {f} unreachable in coloring")))
            })
            .collect()
    }

    /// Checkerboard graph on the faces of `color`.
    pub fn checkerboard_graph(&self, color: Color) -> Result<CheckerboardGraph> {
        let colors = self.checkerboard_coloring()?;
        let vertices: Vec<FaceId> = (0..self.faces.len())
            .filter(|&f| colors[f] == color)
            .collect();
        let mut edges = Vec::with_capacity(self.n());
        for c in 0..self.n() {
            let fs = self.quadrant_face[c];
            // Quadrants alternate colors around a crossing; the same-color
            // pair is diagonal.
            if colors[fs[0]] != colors[fs[2]] || colors[fs[1]] != colors[fs[3]] {
                return Err(Error::Internal(format!(
                    "quadrant colors do not alternate at crossing {c}"
                )));
            }
            let pair = if colors[fs[0]] == color {
                (fs[0], fs[2])
            } else {
                (fs[1], fs[3])
            };
            edges.push(pair);
        }
        Ok(CheckerboardGraph {
            color,
            vertices,
            edges,
        })
    }

    /// The mirror diagram: over/under swapped at every crossing, signs
    /// negated, underlying projection (hence faces) unchanged.
    pub fn mirror(&self) -> Diagram {
        let all: BTreeSet<CrossingId> = (0..self.n()).collect();
        self.with_flipped(&all)
            .expect("mirror of a valid diagram is valid")
    }

    /// A copy with the over/under data of the given crossings swapped.
    pub fn with_flipped(&self, flips: &BTreeSet<CrossingId>) -> Result<Diagram> {
        let tokens: Vec<[EdgeLabel; 4]> = self
            .crossings
            .iter()
            .enumerate()
            .map(|(c, cr)| {
                let [a, b, cc, d] = cr.slots;
                if !flips.contains(&c) {
                    return cr.slots;
                }
                // Rotate so the old incoming over-strand becomes slot 0;
                // cyclic (hence counterclockwise) order is preserved.
                match cr.sign {
                    Sign::Positive => [d, a, b, cc],
                    Sign::Negative => [b, cc, d, a],
                }
            })
            .collect();
        Diagram::from_tokens(&tokens)
    }

    /// Signed Gauss code of the diagram, e.g. `O1+ U2+ O3+ U1+ O2+ U3+`.
    pub fn to_gauss(&self) -> String {
        let mut out = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let (c, slot) = e.head;
            let kind = if slot == 0 { 'U' } else { 'O' };
            let sign = match self.crossings[c].sign {
                Sign::Positive => '+',
                Sign::Negative => '-',
            };
            out.push(format!("{kind}{}{sign}", c + 1));
        }
        out.join(" ")
    }

    /// PD text of the diagram.
    pub fn to_pd(&self) -> String {
        self.crossings
            .iter()
            .map(|cr| {
                let [a, b, c, d] = cr.slots;
                format!("X[{a},{b},{c},{d}]")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Build and validate a diagram from raw PD slot tuples.
    pub fn from_tokens(tokens: &[[EdgeLabel; 4]]) -> Result<Diagram> {
        let n = tokens.len();
        if n == 0 {
            return Err(Error::malformed("empty input: no crossings", None));
        }
        let two_n = 2 * n;

        // Every label in 1..=2n, each exactly twice.
        let mut counts = vec![0usize; two_n + 1];
        for t in tokens {
            for &l in t {
                if l == 0 || l > two_n {
                    return Err(Error::malformed(
                        format!("edge label {l} out of range 1..={two_n}"),
                        None,
                    ));
                }
                counts[l] += 1;
            }
        }
        for (label, &count) in counts.iter().enumerate().skip(1) {
            if count != 2 {
                return Err(Error::DuplicateLabel { label, count });
            }
        }

        // Incidences per label.
        let mut incidences: Vec<Vec<(CrossingId, usize)>> = vec![Vec::new(); two_n + 1];
        for (c, t) in tokens.iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                incidences[l].push((c, s));
            }
        }

        // Orient each incidence as head (strand arrives) or tail (departs).
        // Slot 0 is the incoming under-strand, slot 2 the outgoing one;
        // over slots are fixed by propagation: an edge has one head and one
        // tail, and exactly one of slots 1,3 per crossing is a head.
        let is_head = orient_incidences(tokens, &incidences)?;

        // Successor of each label along the knot.
        let mut successor = vec![0usize; two_n + 1];
        for (c, t) in tokens.iter().enumerate() {
            successor[t[0]] = t[2];
            let (over_in, over_out) = if is_head[c][1] {
                (t[1], t[3])
            } else {
                (t[3], t[1])
            };
            successor[over_in] = over_out;
        }

        // Single component, and labels consecutive along it.
        let components = count_cycles(&successor, two_n);
        if components != 1 {
            return Err(Error::LinkUnsupported { components });
        }
        for (l, &next) in successor.iter().enumerate().skip(1) {
            let expect = l % two_n + 1;
            if next != expect {
                return Err(Error::malformed(
                    format!("edge {l} is followed by edge {next} (expected {expect}); labels must be consecutive along the knot"),
                    None,
                ));
            }
        }

        // Crossing records. Over entering at slot 3 (d) is positive.
        let crossings: Vec<Crossing> = tokens
            .iter()
            .enumerate()
            .map(|(c, t)| {
                let over_in_slot = if is_head[c][1] { 1 } else { 3 };
                let sign = if over_in_slot == 3 {
                    Sign::Positive
                } else {
                    Sign::Negative
                };
                Crossing {
                    slots: *t,
                    sign,
                    over_in_slot,
                }
            })
            .collect();

        let edges: Vec<Edge> = (1..=two_n)
            .map(|label| {
                let (i1, i2) = (incidences[label][0], incidences[label][1]);
                let h1 = is_head[i1.0][i1.1];
                let (head, tail) = if h1 { (i1, i2) } else { (i2, i1) };
                Edge { label, head, tail }
            })
            .collect();

        // Face tracing: orbits of (c, s) -> other end of the edge at slot
        // s + 1. Arrival at (c, s) sweeps quadrant s.
        let mut face_of: Vec<[Option<FaceId>; 4]> = vec![[None; 4]; n];
        let mut faces: Vec<Face> = Vec::new();
        for c0 in 0..n {
            for s0 in 0..4 {
                if face_of[c0][s0].is_some() {
                    continue;
                }
                let id = faces.len();
                let mut corners = Vec::new();
                let mut boundary = BTreeSet::new();
                let (mut c, mut s) = (c0, s0);
                loop {
                    debug_assert!(face_of[c][s].is_none());
                    face_of[c][s] = Some(id);
                    corners.push((c, s as u8));
                    let exit = (s + 1) % 4;
                    let label = tokens[c][exit];
                    boundary.insert(label);
                    let (i1, i2) = (incidences[label][0], incidences[label][1]);
                    let next = if i1 == (c, exit) { i2 } else { i1 };
                    (c, s) = next;
                    if (c, s) == (c0, s0) {
                        break;
                    }
                }
                faces.push(Face {
                    id,
                    corners,
                    boundary_edges: boundary,
                });
            }
        }
        if faces.len() != n + 2 {
            return Err(Error::NonPlanar {
                faces: faces.len(),
                expected: n + 2,
            });
        }
        let quadrant_face: Vec<[FaceId; 4]> = face_of
            .into_iter()
            .map(|fs| fs.map(|f| f.expect("all quadrants traced")))
            .collect();

        let writhe = crossings.iter().map(|c| c.sign.value()).sum();

        let d = Diagram {
            crossings,
            edges,
            faces,
            quadrant_face,
            writhe,
        };
        // Checkerboard colorability is a theorem for planar knot diagrams;
        // failure here would mean the face tracing is wrong.
        d.checkerboard_coloring()?;
        Ok(d)
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pd())
    }
}

/// Decide head/tail for every (crossing, slot) incidence by constraint
/// propagation. Returns `is_head[c][s]`.
fn orient_incidences(
    tokens: &[[EdgeLabel; 4]],
    incidences: &[Vec<(CrossingId, usize)>],
) -> Result<Vec<[bool; 4]>> {
    let n = tokens.len();
    let mut state: Vec<[Option<bool>; 4]> = vec![[None; 4]; n];
    let mut queue: Vec<(CrossingId, usize)> = Vec::new();
    for (c, slots) in state.iter_mut().enumerate() {
        slots[0] = Some(true);
        slots[2] = Some(false);
        queue.push((c, 0));
        queue.push((c, 2));
    }
    let set = |state: &mut Vec<[Option<bool>; 4]>,
               queue: &mut Vec<(CrossingId, usize)>,
               (c, s): (CrossingId, usize),
               v: bool|
     -> Result<()> {
        match state[c][s] {
            Some(old) if old != v => Err(Error::malformed(
                format!("inconsistent strand orientation at crossing {c}"),
                None,
            )),
            Some(_) => Ok(()),
            None => {
                state[c][s] = Some(v);
                queue.push((c, s));
                Ok(())
            }
        }
    };
    while let Some((c, s)) = queue.pop() {
        let v = state[c][s].unwrap();
        // The other incidence of the same edge gets the opposite role.
        let label = tokens[c][s];
        let (i1, i2) = (incidences[label][0], incidences[label][1]);
        let other = if i1 == (c, s) { i2 } else { i1 };
        set(&mut state, &mut queue, other, !v)?;
        // Exactly one of slots 1, 3 is a head.
        if s == 1 {
            set(&mut state, &mut queue, (c, 3), !v)?;
        } else if s == 3 {
            set(&mut state, &mut queue, (c, 1), !v)?;
        }
    }
    state
        .into_iter()
        .enumerate()
        .map(|(c, slots)| {
            let all: Option<Vec<bool>> = slots.into_iter().collect();
            all.map(|v| [v[0], v[1], v[2], v[3]]).ok_or_else(|| {
                Error::malformed(
                    format!("cannot orient over-strand at crossing {c} (component with no under-passes?)"),
                    None,
                )
            })
        })
        .collect()
}

fn count_cycles(successor: &[usize], two_n: usize) -> usize {
    let mut seen = vec![false; two_n + 1];
    let mut cycles = 0;
    for start in 1..=two_n {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut l = start;
        while !seen[l] {
            seen[l] = true;
            l = successor[l];
            if l == 0 || l > two_n {
                break; // broken successor map; caught elsewhere
            }
        }
    }
    cycles
}

/// Parse PD-code text: whitespace-separated `X[a,b,c,d]` tokens.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let tokens = tokenize_pd(text)?;
    if tokens.is_empty() {
        return Err(Error::malformed("empty input: no PD tokens", Some(0)));
    }
    Diagram::from_tokens(&tokens)
}

fn tokenize_pd(text: &str) -> Result<Vec<[EdgeLabel; 4]>> {
    let mut tokens = Vec::new();
    let mut rest = text;
    let mut offset = 0usize;
    loop {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        rest = trimmed;
        if rest.is_empty() {
            break;
        }
        let (tok, len) = take_token(rest, offset)?;
        tokens.push(tok);
        rest = &rest[len..];
        offset += len;
    }
    Ok(tokens)
}

/// Parse one `X[a,b,c,d]` token (parens accepted, `;` accepted as a
/// separator so census CSV cells can avoid literal commas).
fn take_token(s: &str, offset: usize) -> Result<([EdgeLabel; 4], usize)> {
    let bytes = s.as_bytes();
    if bytes[0] != b'X' && bytes[0] != b'x' {
        return Err(Error::malformed(
            format!(
                "expected PD token starting with 'X', found {:?}",
                s.chars().next().unwrap()
            ),
            Some(offset),
        ));
    }
    let open = *bytes.get(1).unwrap_or(&0);
    let close = match open {
        b'[' => b']',
        b'(' => b')',
        _ => return Err(Error::malformed("expected '[' after 'X'", Some(offset + 1))),
    };
    let Some(end) = s.bytes().position(|b| b == close) else {
        return Err(Error::malformed("unterminated PD token", Some(offset)));
    };
    let inner = &s[2..end];
    let parts: Vec<&str> = inner.split([',', ';']).map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Error::malformed(
            format!("PD token has {} fields, expected 4", parts.len()),
            Some(offset),
        ));
    }
    let mut out = [0usize; 4];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .parse::<usize>()
            .map_err(|_| Error::malformed(format!("invalid edge label {p:?}"), Some(offset)))?;
    }
    Ok((out, end + 1))
}

/// Parse a signed Gauss code, e.g. `O1+ U2+ O3+ U1+ O2+ U3+`.
///
/// Each crossing must be visited exactly once as `O` and once as `U`, with
/// the same sign on both visits. Realizability in the plane is checked via
/// the face count of the reconstructed rotation system.
pub fn parse_gauss(text: &str) -> Result<Diagram> {
    #[derive(Clone, Copy)]
    struct Visit {
        over: bool,
        crossing: usize,
        sign: Sign,
    }

    let mut visits: Vec<Visit> = Vec::new();
    let mut offset = 0usize;
    for raw in text.split_whitespace() {
        let pos = text[offset..].find(raw).map(|p| p + offset).unwrap_or(0);
        offset = pos + raw.len();
        let mut chars = raw.chars();
        let kind = chars.next().unwrap();
        let over = match kind {
            'O' | 'o' => true,
            'U' | 'u' => false,
            _ => {
                return Err(Error::malformed(
                    format!("expected O or U, found {kind:?}"),
                    Some(pos),
                ))
            }
        };
        let body: String = chars.collect();
        let (num_part, sign_part) = body.split_at(body.len().saturating_sub(1));
        let sign = match sign_part {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            _ => {
                return Err(Error::malformed(
                    format!("Gauss visit {raw:?} missing +/- sign"),
                    Some(pos),
                ))
            }
        };
        let crossing: usize = num_part.parse().map_err(|_| {
            Error::malformed(format!("invalid crossing number in {raw:?}"), Some(pos))
        })?;
        if crossing == 0 {
            return Err(Error::malformed("crossing numbers are 1-based", Some(pos)));
        }
        visits.push(Visit {
            over,
            crossing,
            sign,
        });
    }
    if visits.is_empty() {
        return Err(Error::malformed("empty Gauss code", Some(0)));
    }
    if !visits.len().is_multiple_of(2) {
        return Err(Error::malformed("odd number of Gauss visits", None));
    }
    let n = visits.len() / 2;

    // Per crossing: under visit index, over visit index, sign agreement.
    let mut under_at = vec![None; n + 1];
    let mut over_at = vec![None; n + 1];
    let mut signs = vec![None; n + 1];
    for (i, v) in visits.iter().enumerate() {
        if v.crossing > n {
            return Err(Error::malformed(
                format!(
                    "crossing number {} out of range for {n} crossings (a crossing visited once?)",
                    v.crossing
                ),
                None,
            ));
        }
        let slot = if v.over {
            &mut over_at[v.crossing]
        } else {
            &mut under_at[v.crossing]
        };
        if slot.is_some() {
            return Err(Error::malformed(
                format!(
                    "crossing {} visited twice as {}",
                    v.crossing,
                    if v.over { "over" } else { "under" }
                ),
                None,
            ));
        }
        *slot = Some(i + 1); // visit positions are 1-based like edge labels
        match signs[v.crossing] {
            None => signs[v.crossing] = Some(v.sign),
            Some(s) if s != v.sign => {
                return Err(Error::malformed(
                    format!("crossing {} has conflicting signs", v.crossing),
                    None,
                ))
            }
            _ => {}
        }
    }

    // At visit position i the incoming edge is labeled i and the outgoing
    // one i + 1 (cyclically).
    let two_n = 2 * n;
    let succ = |i: usize| i % two_n + 1;
    let mut tokens = Vec::with_capacity(n);
    for c in 1..=n {
        let (Some(u), Some(o), Some(sign)) = (under_at[c], over_at[c], signs[c]) else {
            return Err(Error::malformed(
                format!("crossing {c} is not visited exactly once over and once under"),
                None,
            ));
        };
        let token = match sign {
            Sign::Positive => [u, succ(o), succ(u), o],
            Sign::Negative => [u, o, succ(u), succ(o)],
        };
        tokens.push(token);
    }
    match Diagram::from_tokens(&tokens) {
        Err(Error::NonPlanar { faces, expected }) => Err(Error::NonRealizable(format!(
            "rotation system has {faces} faces, expected {expected}"
        ))),
        other => other,
    }
}
