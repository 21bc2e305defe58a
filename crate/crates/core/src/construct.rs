//! Programmatic diagram constructors: braid closures and pretzels.
//!
//! Both are assembled from the same primitive: a list of crossings with
//! four ports (NW, NE, SW, SE) wired together by segments, where a strand
//! entering any port leaves through the diagonally opposite one. The
//! assembler walks the knot once to label edges consecutively, decides
//! which pass is the under-pass from the chosen over-diagonal, and emits PD
//! tokens that then go through full validation. Words or twist vectors
//! whose closure is not a single component are rejected.

use crate::diagram::Diagram;
use crate::{Error, Result};

const NW: usize = 0;
const NE: usize = 1;
const SW: usize = 2;
const SE: usize = 3;

fn opposite(port: usize) -> usize {
    match port {
        NW => SE,
        NE => SW,
        SW => NE,
        SE => NW,
        _ => unreachable!(),
    }
}

/// Counterclockwise cyclic order of ports in the plane when the crossing is
/// drawn upright.
const CCW: [usize; 4] = [NW, SW, SE, NE];

/// Which diagonal carries the over-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum OverDiagonal {
    NwSe,
    NeSw,
}

struct TangleCrossing {
    /// Segment id at each port, indexed NW, NE, SW, SE.
    ports: [usize; 4],
    over: OverDiagonal,
}

/// Walk the closed-up tangle, label segments 1..=2n along the knot, and
/// emit PD tokens (counterclockwise from the incoming under-strand).
fn assemble(crossings: Vec<TangleCrossing>, segments: usize) -> Result<Vec<[usize; 4]>> {
    let n = crossings.len();
    // Closure wiring may have aliased some ids away; ids with no
    // incidences are simply unused.
    let mut incidence: Vec<Vec<(usize, usize)>> = vec![Vec::new(); segments];
    for (c, cr) in crossings.iter().enumerate() {
        for p in 0..4 {
            incidence[cr.ports[p]].push((c, p));
        }
    }
    let mut start = None;
    for (s, inc) in incidence.iter().enumerate() {
        match inc.len() {
            0 => {}
            2 => start = start.or(Some(s)),
            k => {
                return Err(Error::Internal(format!(
                    "segment {s} has {k} incidences, expected 2"
                )))
            }
        }
    }
    let Some(first) = start else {
        return Err(Error::Internal("tangle has no segments".into()));
    };

    // Walk the knot, labeling each segment as it is traversed.
    let mut label = vec![0usize; segments];
    let mut under_in_port: Vec<Option<usize>> = vec![None; n];
    let (mut c, mut p_in) = incidence[first][0];
    let mut seg = first;
    for next_label in 1..=2 * n {
        if label[seg] != 0 {
            return Err(Error::LinkUnsupported {
                components: 2, // closed early; at least two components
            });
        }
        debug_assert_eq!(seg, crossings[c].ports[p_in]);
        label[seg] = next_label;
        let on_over_diagonal = match crossings[c].over {
            OverDiagonal::NwSe => p_in == NW || p_in == SE,
            OverDiagonal::NeSw => p_in == NE || p_in == SW,
        };
        if !on_over_diagonal {
            if under_in_port[c].is_some() {
                return Err(Error::Internal(format!("crossing {c} passed under twice")));
            }
            under_in_port[c] = Some(p_in);
        }
        let p_out = opposite(p_in);
        seg = crossings[c].ports[p_out];
        let (i1, i2) = (incidence[seg][0], incidence[seg][1]);
        (c, p_in) = if i1 == (c, p_out) { i2 } else { i1 };
    }
    let unreached = (0..segments)
        .filter(|&s| !incidence[s].is_empty() && label[s] == 0)
        .count();
    if unreached > 0 {
        return Err(Error::LinkUnsupported { components: 2 });
    }

    crossings
        .iter()
        .enumerate()
        .map(|(c, cr)| {
            let start = under_in_port[c]
                .ok_or_else(|| Error::Internal(format!("crossing {c} never passed under")))?;
            let at = CCW.iter().position(|&p| p == start).unwrap();
            let mut token = [0usize; 4];
            for (i, t) in token.iter_mut().enumerate() {
                *t = label[cr.ports[CCW[(at + i) % 4]]];
            }
            Ok(token)
        })
        .collect()
}

/// Trace closure of a braid word. Letter `k` crosses strand positions `k`
/// and `k + 1` with the right strand on top; `-k` puts the left strand on
/// top. Words must engage strand position 1 and close to a single
/// component.
pub fn braid_diagram(word: &[i32]) -> Result<Diagram> {
    if word.is_empty() {
        return Err(Error::malformed("empty braid word", None));
    }
    if word.contains(&0) {
        return Err(Error::malformed("braid letters must be nonzero", None));
    }
    let max = word
        .iter()
        .map(|l| l.unsigned_abs() as usize)
        .max()
        .unwrap();
    let min = word
        .iter()
        .map(|l| l.unsigned_abs() as usize)
        .min()
        .unwrap();
    if min != 1 {
        return Err(Error::malformed(
            "braid word leaves low strand positions unused",
            None,
        ));
    }
    let strands = max + 1;

    let mut next_seg = 0usize;
    let mut fresh = || {
        next_seg += 1;
        next_seg - 1
    };
    let top: Vec<usize> = (0..strands).map(|_| fresh()).collect();
    let mut at = top.clone();
    let mut crossings = Vec::with_capacity(word.len());
    for &l in word {
        let k = l.unsigned_abs() as usize - 1;
        let (out_l, out_r) = (fresh(), fresh());
        let mut ports = [0; 4];
        ports[NW] = at[k];
        ports[NE] = at[k + 1];
        ports[SW] = out_l;
        ports[SE] = out_r;
        crossings.push(TangleCrossing {
            ports,
            over: if l > 0 {
                OverDiagonal::NeSw
            } else {
                OverDiagonal::NwSe
            },
        });
        at[k] = out_l;
        at[k + 1] = out_r;
    }
    // Close the braid: bottom of position p is the same segment as its top.
    let mut canon: Vec<usize> = (0..next_seg).collect();
    for p in 0..strands {
        canon[at[p]] = top[p];
    }
    for cr in &mut crossings {
        for s in cr.ports.iter_mut() {
            *s = canon[*s];
        }
    }
    let tokens = assemble(crossings, next_seg)?;
    Diagram::from_tokens(&tokens)
}

/// PD text of the trace closure of a braid word.
pub fn braid_pd(word: &[i32]) -> Result<String> {
    Ok(braid_diagram(word)?.to_pd())
}

/// Standard pretzel diagram P(p_1, ..., p_k): vertical twist regions of
/// |p_i| crossings joined by a top and a bottom rail. A positive twist puts
/// the NW-SE strand on top. Twist vectors whose closure is a link are
/// rejected.
pub fn pretzel_diagram(twists: &[i32]) -> Result<Diagram> {
    if twists.len() < 2 {
        return Err(Error::malformed(
            "pretzel needs at least two twist regions",
            None,
        ));
    }
    if twists.contains(&0) {
        return Err(Error::malformed("twist counts must be nonzero", None));
    }
    let mut next_seg = 0usize;
    let mut fresh = || {
        next_seg += 1;
        next_seg - 1
    };
    let k = twists.len();
    // Region i exposes a top pair and a bottom pair of segment ends.
    let tops: Vec<(usize, usize)> = (0..k).map(|_| (fresh(), fresh())).collect();
    let mut crossings = Vec::new();
    let mut bottoms = Vec::with_capacity(k);
    for (i, &t) in twists.iter().enumerate() {
        let (mut left, mut right) = tops[i];
        for _ in 0..t.unsigned_abs() {
            let (out_l, out_r) = (fresh(), fresh());
            let mut ports = [0; 4];
            ports[NW] = left;
            ports[NE] = right;
            ports[SW] = out_l;
            ports[SE] = out_r;
            crossings.push(TangleCrossing {
                ports,
                over: if t > 0 {
                    OverDiagonal::NwSe
                } else {
                    OverDiagonal::NeSw
                },
            });
            left = out_l;
            right = out_r;
        }
        bottoms.push((left, right));
    }
    // Rails: NE side of region i meets NW side of region i + 1, cyclically,
    // and likewise along the bottom.
    let mut canon: Vec<usize> = (0..next_seg).collect();
    for i in 0..k {
        let j = (i + 1) % k;
        canon[tops[j].0] = tops[i].1;
        canon[bottoms[j].0] = canon[bottoms[i].1];
    }
    // Resolve chains introduced by aliasing bottoms of already-aliased ids.
    let resolve = |canon: &[usize], mut s: usize| {
        while canon[s] != s {
            s = canon[s];
        }
        s
    };
    for cr in &mut crossings {
        for s in cr.ports.iter_mut() {
            *s = resolve(&canon, *s);
        }
    }
    let tokens = assemble(crossings, next_seg)?;
    Diagram::from_tokens(&tokens)
}

/// PD text of a pretzel diagram.
pub fn pretzel_pd(twists: &[i32]) -> Result<String> {
    Ok(pretzel_diagram(twists)?.to_pd())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Sign;

    #[test]
    fn trefoil_from_braid() {
        let d = braid_diagram(&[1, 1, 1]).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.faces().len(), 5);
        assert_eq!(d.writhe(), 3);
        assert!(d.is_alternating());
        assert!(d.crossings().iter().all(|c| c.sign == Sign::Positive));
    }

    #[test]
    fn negative_braid_mirrors() {
        let d = braid_diagram(&[-1, -1, -1]).unwrap();
        assert_eq!(d.writhe(), -3);
        assert!(d.is_alternating());
    }

    #[test]
    fn figure_eight_from_braid() {
        let d = braid_diagram(&[1, -2, 1, -2]).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.faces().len(), 6);
        assert_eq!(d.writhe(), 0);
        assert!(d.is_alternating());
    }

    #[test]
    fn torus_3_4_from_braid() {
        let d = braid_diagram(&[1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(d.n(), 8);
        assert_eq!(d.faces().len(), 10);
        assert_eq!(d.writhe(), 8);
        assert!(!d.is_alternating());
    }

    #[test]
    fn link_word_rejected() {
        // sigma_1^2 closes to the Hopf link.
        assert!(matches!(
            braid_diagram(&[1, 1]),
            Err(Error::LinkUnsupported { .. })
        ));
    }

    #[test]
    fn empty_word_rejected() {
        assert!(braid_diagram(&[]).is_err());
    }

    #[test]
    fn pretzel_trefoil() {
        // P(1, 1, 1) is a trefoil.
        let d = pretzel_diagram(&[1, 1, 1]).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.faces().len(), 5);
        assert!(d.is_alternating());
        assert_eq!(d.writhe().abs(), 3);
    }

    #[test]
    fn pretzel_link_rejected() {
        // P(2, 2) is a (4, 2) torus link.
        assert!(matches!(
            pretzel_diagram(&[2, 2]),
            Err(Error::LinkUnsupported { .. })
        ));
    }

    #[test]
    fn pretzel_uniform_signs_alternate() {
        let d = pretzel_diagram(&[3, 3, 1]).unwrap();
        assert_eq!(d.n(), 7);
        assert!(d.is_alternating());
    }

    #[test]
    fn pretzel_mixed_signs_not_alternating() {
        let d = pretzel_diagram(&[3, 3, -2]).unwrap();
        assert_eq!(d.n(), 8);
        assert!(!d.is_alternating());
    }
}
