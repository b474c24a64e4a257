use serde::Serialize;

use crate::graph::{Edge, OrderedGraph};
use crate::patterns::{
    edges_cross, find_bonnet, find_tangled_path, BonnetId, TangledWitness,
    DEFAULT_PATH_BUDGET,
};
use crate::{Error, Result};

/// The incident edges of minimum length at `v` (one, or two when the minimum
/// is attained on both sides of `v`).
pub fn shortest_edges(t: &OrderedGraph, v: usize) -> Result<Vec<Edge>> {
    let nb = t.neighbors(v);
    if nb.is_empty() {
        return Err(Error::IsolatedVertex { v });
    }
    let best = nb.iter().map(|&u| u.abs_diff(v)).min().unwrap();
    Ok(nb
        .iter()
        .filter(|&&u| u.abs_diff(v) == best)
        .map(|&u| (u.min(v), u.max(v)))
        .collect())
}

/// A successful alternation split: `L = 1..=p` and `R = p+1..` are both
/// independent, every vertex has a unique shortest edge, the shortest-edge
/// sets cover all edges, and neither set contains a crossing pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoAltSplit {
    /// Last vertex of the left side.
    pub p: usize,
    pub s_left: Vec<Edge>,
    pub s_right: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum SplitFailure {
    LeftNotIndependent { edge: Edge },
    RightNotIndependent { edge: Edge },
    TwoShortestEdges { v: usize },
    NotCovered { edge: Edge },
    CrossingInLeft { first: Edge, second: Edge },
    CrossingInRight { first: Edge, second: Edge },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonoAltResult {
    /// The unique successful split, if the tree is monotonically alternating.
    pub split: Option<MonoAltSplit>,
    /// First failing condition for every split position that failed.
    pub failures: Vec<(usize, SplitFailure)>,
}

/// Tests whether a tree is monotonically alternating by trying every split
/// position. Connected trees admit at most one valid split; that uniqueness
/// is asserted rather than assumed.
pub fn is_monotonically_alternating(t: &OrderedGraph) -> Result<MonoAltResult> {
    require_tree(t)?;
    let n = t.n();
    let mut split = None;
    let mut failures = Vec::new();
    for p in 1..n {
        match try_split(t, p) {
            Ok(s) => {
                assert!(
                    split.is_none(),
                    "two alternation splits in a connected tree: {t}"
                );
                split = Some(s);
            }
            Err(f) => failures.push((p, f)),
        }
    }
    Ok(MonoAltResult { split, failures })
}

fn try_split(t: &OrderedGraph, p: usize) -> std::result::Result<MonoAltSplit, SplitFailure> {
    for &(u, v) in t.edges() {
        if v <= p {
            return Err(SplitFailure::LeftNotIndependent { edge: (u, v) });
        }
        if u > p {
            return Err(SplitFailure::RightNotIndependent { edge: (u, v) });
        }
    }
    let side = |lo: usize, hi: usize| -> std::result::Result<Vec<Edge>, SplitFailure> {
        let mut out = Vec::new();
        for v in lo..=hi {
            // Sides are independent here, so no vertex in range is isolated
            // unless the whole graph leaves it isolated; a tree with n >= 2
            // has none.
            let es = shortest_edges(t, v).expect("tree vertices are not isolated");
            if es.len() != 1 {
                return Err(SplitFailure::TwoShortestEdges { v });
            }
            if !out.contains(&es[0]) {
                out.push(es[0]);
            }
        }
        out.sort_unstable();
        Ok(out)
    };
    let s_left = side(1, p)?;
    let s_right = side(p + 1, t.n())?;
    for &e in t.edges() {
        if !s_left.contains(&e) && !s_right.contains(&e) {
            return Err(SplitFailure::NotCovered { edge: e });
        }
    }
    if let Some((e, f)) = crossing_within(&s_left) {
        return Err(SplitFailure::CrossingInLeft { first: e, second: f });
    }
    if let Some((e, f)) = crossing_within(&s_right) {
        return Err(SplitFailure::CrossingInRight { first: e, second: f });
    }
    Ok(MonoAltSplit { p, s_left, s_right })
}

fn crossing_within(set: &[Edge]) -> Option<(Edge, Edge)> {
    for (i, &e) in set.iter().enumerate() {
        for &f in &set[i + 1..] {
            if edges_cross(e, f) {
                return Some((e, f));
            }
        }
    }
    None
}

fn require_tree(t: &OrderedGraph) -> Result<()> {
    if t.n() == 0 {
        return Err(Error::NotATree { reason: "empty graph".into() });
    }
    if t.edges().len() != t.n() - 1 {
        return Err(Error::NotATree {
            reason: format!("{} edges on {} vertices", t.edges().len(), t.n()),
        });
    }
    if !t.is_connected() {
        return Err(Error::NotATree { reason: "not connected".into() });
    }
    Ok(())
}

/// Evidence that segment-wise alternation coincides with the absence of
/// bonnets and tangled paths on a tree. The two sides are computed by
/// unrelated code paths; `agree` false would be a library bug.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Report {
    pub bonnet: Option<(BonnetId, Vec<usize>)>,
    pub tangled: Option<TangledWitness>,
    /// Left side of the equivalence: no bonnet and no tangled path.
    pub pattern_free: bool,
    /// Per segment `(lo, hi)`: the alternation result of the relabeled segment.
    pub segments: Vec<((usize, usize), MonoAltResult)>,
    /// Right side of the equivalence: every segment is alternating.
    pub all_segments_alternating: bool,
    pub agree: bool,
}

/// Evaluates both sides of the segment-alternation equivalence on a tree.
pub fn check_theorem2(t: &OrderedGraph) -> Result<Theorem2Report> {
    require_tree(t)?;
    let bonnet = find_bonnet(t).map(|(id, e)| (id, e.image().to_vec()));
    let tangled = find_tangled_path(t, DEFAULT_PATH_BUDGET)?;
    let pattern_free = bonnet.is_none() && tangled.is_none();
    let mut segments = Vec::new();
    let mut all = true;
    for seg in t.segments()?.segments {
        // Segments of a tree are themselves trees: no edge spans an inner
        // cut vertex, so each window stays connected.
        let r = is_monotonically_alternating(&seg.to_graph())?;
        all &= r.split.is_some();
        segments.push(((seg.lo, seg.hi), r));
    }
    Ok(Theorem2Report {
        bonnet,
        tangled,
        pattern_free,
        segments,
        all_segments_alternating: all,
        agree: pattern_free == all,
    })
}
