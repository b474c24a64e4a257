use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use crate::embed::find_embedding;
use crate::graph::OrderedGraph;
use crate::patterns::is_minimal_tangled;
use crate::{Error, Result};

/// Default ceiling on the vertex count of a generated graph.
pub const DEFAULT_VERTEX_CAP: u64 = 1_000_000;

pub fn complete_graph(n: usize) -> Result<OrderedGraph> {
    if n < 1 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    OrderedGraph::new(n, (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))))
}

/// The shift graph: vertices are the pairs `(i, j)` with `1 <= i < j <= n`
/// in lexicographic order, and `(i, j)` is adjacent to `(j, t)`.
///
/// It has `n(n-1)/2` vertices and one edge per triple `i < j < t`.
pub fn shift_graph(n: usize) -> Result<OrderedGraph> {
    if n < 2 {
        return Err(Error::TooFewVertices { n, min: 2 });
    }
    let rank = |i: usize, j: usize| (i - 1) * n - (i - 1) * i / 2 + (j - i);
    let mut edges = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for t in j + 1..=n {
                edges.push((rank(i, j), rank(j, t)));
            }
        }
    }
    OrderedGraph::new(n * (n - 1) / 2, edges)
}

/// The inward-spiral path on `k >= 4` vertices: traversal sequence
/// `1, k, 2, k-1, 3, ...`. It is a non-crossing, bonnet-free, monotonically
/// alternating path whose leftmost vertex has degree 1 and whose extreme
/// vertices are adjacent.
pub fn spiral_path(k: usize) -> Result<OrderedGraph> {
    if k < 4 {
        return Err(Error::TooFewVertices { n: k, min: 4 });
    }
    let mut seq = Vec::with_capacity(k);
    let (mut lo, mut hi) = (1, k);
    while lo <= hi {
        seq.push(lo);
        lo += 1;
        if lo <= hi {
            seq.push(hi);
            hi -= 1;
        }
    }
    // The sequence interleaves 1, k, 2, k-1, ...; consecutive entries are
    // the path edges.
    let mut order = vec![0usize; k + 1];
    for (idx, &v) in seq.iter().enumerate() {
        order[v] = idx;
    }
    let mut path = vec![0usize; k];
    for v in 1..=k {
        path[order[v]] = v;
    }
    OrderedGraph::new(k, path.windows(2).map(|w| (w[0], w[1])))
}

/// The spindle: four cliques on `k - 1` vertices sharing the layout
/// `u < x_1 < ... < x_{k-2} < y_1 < ... < y_{k-2} < x < y`, plus the edge
/// `xy`. Returns the graph together with [`spiral_path`]`(k)`, which it
/// avoids while requiring `k` colors.
pub fn spindle(k: usize) -> Result<(OrderedGraph, OrderedGraph)> {
    if k < 4 {
        return Err(Error::TooFewVertices { n: k, min: 4 });
    }
    let u = 1;
    let xs: Vec<usize> = (1..=k - 2).map(|i| 1 + i).collect();
    let ys: Vec<usize> = (1..=k - 2).map(|i| k - 1 + i).collect();
    let x = 2 * k - 2;
    let y = 2 * k - 1;
    let mut edges = BTreeSet::new();
    let mut clique = |verts: Vec<usize>| {
        for (i, &a) in verts.iter().enumerate() {
            for &b in &verts[i + 1..] {
                edges.insert((a.min(b), a.max(b)));
            }
        }
    };
    clique([vec![u], xs.clone()].concat());
    clique([vec![u], ys.clone()].concat());
    clique([xs, vec![x]].concat());
    clique([ys, vec![y]].concat());
    edges.insert((x, y));
    Ok((OrderedGraph::new(2 * k - 1, edges)?, spiral_path(k)?))
}

/// A Tutte-style blow-up: `M` blocks each inducing a copy of `base`, all
/// left of a fresh independent block `V` of `N` vertices, with the `i`-th
/// `n`-subset of `V` matched position-wise to block `U_i`.
///
/// When the base avoids a minimal tangled path `P` so does the result, and
/// when additionally `chi(base) >= k - 1` the result is not
/// `(k-1)`-colorable.
#[derive(Debug, Clone, Serialize)]
pub struct TutteGraph {
    pub graph: OrderedGraph,
    /// The avoided path, as given by the caller.
    pub pattern: OrderedGraph,
    pub base: OrderedGraph,
    pub n_base: usize,
    /// `N = (k-1)(n-1) + 1`, the size of the right block.
    pub n_right: usize,
    /// `M = C(N, n)`, the number of base blocks.
    pub m_blocks: usize,
    /// Vertex ids of each base block, ascending.
    pub u_blocks: Vec<Vec<usize>>,
    /// Vertex ids of the right block, ascending.
    pub v_vertices: Vec<usize>,
    /// `v_subsets[i]` is matched position-wise to `u_blocks[i]`, ascending.
    pub v_subsets: Vec<Vec<usize>>,
    /// Whether the construction ran on the reversed orientation; the
    /// returned labels already account for it.
    pub reversed: bool,
}

impl TutteGraph {
    /// Re-checks the structural guarantees directly on the emitted graph:
    /// every block induces the base, the matchings are exactly the
    /// cross-block edges, the right block is independent, and the subsets
    /// enumerate all `n`-subsets once.
    pub fn verify_structure(&self) -> bool {
        let g = &self.graph;
        let n = self.n_base;
        if self.u_blocks.len() != self.m_blocks || self.v_subsets.len() != self.m_blocks {
            return false;
        }
        for block in &self.u_blocks {
            if g.induced(block) != self.base {
                return false;
            }
        }
        for [u, v] in self.v_vertices.iter().array_combinations() {
            if g.has_edge(*u, *v) {
                return false;
            }
        }
        let mut cross: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (block, subset) in self.u_blocks.iter().zip(&self.v_subsets) {
            if subset.len() != n || block.len() != n {
                return false;
            }
            for (&u, &v) in block.iter().zip(subset) {
                cross.insert((u.min(v), u.max(v)));
            }
        }
        let in_some_block: BTreeSet<usize> = self.u_blocks.iter().flatten().copied().collect();
        for &(u, v) in g.edges() {
            let internal = self
                .u_blocks
                .iter()
                .any(|b| b.contains(&u) && b.contains(&v));
            if !internal && !cross.remove(&(u, v)) {
                return false;
            }
        }
        if !cross.is_empty() {
            return false;
        }
        let distinct: BTreeSet<&Vec<usize>> = self.v_subsets.iter().collect();
        distinct.len() == self.m_blocks
            && in_some_block.len() == self.m_blocks * n
            && self.v_vertices.len() == self.n_right
    }
}

/// Builds the blow-up of `base` along the minimal tangled path `p`.
///
/// `p` (or its reversal; the flip is handled internally and undone on the
/// output labels) must have its crossing at the rightmost vertex. The size
/// guard rejects results beyond `vertex_cap` vertices before building
/// anything; `C(N, n)` explodes quickly, so steps beyond k = 4 on small
/// bases are expected to hit it.
pub fn tutte_step(
    p: &OrderedGraph,
    base: &OrderedGraph,
    k: usize,
    vertex_cap: u64,
) -> Result<TutteGraph> {
    if k < 2 {
        return Err(Error::TooFewVertices { n: k, min: 2 });
    }
    let analysis = is_minimal_tangled(p)?;
    if !analysis.tangled || !analysis.minimal {
        return Err(Error::NotMinimalTangled {
            reason: if analysis.tangled {
                "a proper subpath is tangled".into()
            } else {
                "not tangled".into()
            },
        });
    }
    if let Some(e) = find_embedding(p, base) {
        return Err(Error::BaseContainsPattern(e.image().to_vec()));
    }
    let flip = !analysis.rightmost_split_crosses;
    let base_run = if flip {
        let rev_analysis = is_minimal_tangled(&p.reverse())?;
        assert!(
            rev_analysis.rightmost_split_crosses,
            "one orientation of a minimal tangled path has its crossing at the rightmost vertex"
        );
        base.reverse()
    } else {
        base.clone()
    };

    let n = base_run.n();
    if n < 1 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    let n_right = (k - 1) * (n - 1) + 1;
    let required = || format!("{n_right} + {n} * C({n_right}, {n})");
    let m = binomial_u128(n_right as u64, n as u64)
        .ok_or_else(|| Error::SizeCap { required: required(), cap: vertex_cap })?;
    let total = (m.checked_mul(n as u128))
        .and_then(|t| t.checked_add(n_right as u128))
        .ok_or_else(|| Error::SizeCap { required: required(), cap: vertex_cap })?;
    if total > vertex_cap as u128 {
        return Err(Error::SizeCap { required: total.to_string(), cap: vertex_cap });
    }
    let m = m as usize;
    let total = total as usize;

    let v_base = m * n;
    let mut edges = Vec::new();
    let mut u_blocks = Vec::with_capacity(m);
    let mut v_subsets = Vec::with_capacity(m);
    for (i, subset) in (1..=n_right).combinations(n).enumerate() {
        let offset = i * n;
        for &(a, b) in base_run.edges() {
            edges.push((offset + a, offset + b));
        }
        let block: Vec<usize> = (1..=n).map(|j| offset + j).collect();
        let matched: Vec<usize> = subset.iter().map(|&s| v_base + s).collect();
        for (&u, &v) in block.iter().zip(&matched) {
            edges.push((u, v));
        }
        u_blocks.push(block);
        v_subsets.push(matched);
    }
    let graph = OrderedGraph::new(total, edges)?;
    let v_vertices: Vec<usize> = (v_base + 1..=total).collect();

    let (graph, u_blocks, v_vertices, v_subsets) = if flip {
        let remap = |vs: &[usize]| -> Vec<usize> {
            let mut out: Vec<usize> = vs.iter().map(|&v| total + 1 - v).collect();
            out.reverse();
            out
        };
        (
            graph.reverse(),
            u_blocks.iter().map(|b| remap(b)).collect(),
            remap(&v_vertices),
            v_subsets.iter().map(|s| remap(s)).collect(),
        )
    } else {
        (graph, u_blocks, v_vertices, v_subsets)
    };

    Ok(TutteGraph {
        graph,
        pattern: p.clone(),
        base: base.clone(),
        n_base: n,
        n_right,
        m_blocks: m,
        u_blocks,
        v_vertices,
        v_subsets,
        reversed: flip,
    })
}

fn binomial_u128(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut res: u128 = 1;
    for i in 1..=k {
        res = res.checked_mul((n - k + i) as u128)? / i as u128;
    }
    Some(res)
}
