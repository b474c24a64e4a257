use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Edge with endpoints normalized so the smaller vertex comes first.
pub type Edge = (usize, usize);

/// An ordered graph: vertices `1..=n` in their integer order, simple edges.
///
/// The edge list is sorted and duplicate-free; both invariants are enforced
/// by every constructor, so `Eq`/`Hash` are structural identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGraph")]
pub struct OrderedGraph {
    n: usize,
    edges: Vec<Edge>,
}

#[derive(Deserialize)]
struct RawGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawGraph> for OrderedGraph {
    type Error = Error;
    fn try_from(raw: RawGraph) -> Result<Self> {
        OrderedGraph::new(raw.n, raw.edges)
    }
}

impl OrderedGraph {
    /// Builds a graph on `n` vertices, normalizing each edge to `(min, max)`.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut norm = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::LoopEdge { v: a });
            }
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(Error::EndpointOutOfRange { v, n });
                }
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge { u: w[0].0, v: w[0].1 });
        }
        Ok(OrderedGraph { n, edges: norm })
    }

    /// Parses the text form `OG <n>: <u>-<v>, <u>-<v>, ...` (edge list may be
    /// empty). Whitespace between tokens is ignored; errors carry the byte
    /// position they were detected at.
    pub fn parse(text: &str) -> Result<Self> {
        Parser { b: text.as_bytes(), i: 0 }.graph()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertices(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let e = (u.min(v), u.max(v));
        self.edges.binary_search(&e).is_ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Adjacency lists indexed by vertex (entry 0 unused).
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }

    /// Adjacency rows as bitmasks over vertices `1..=n` (bit `v-1`).
    /// Supports up to 128 vertices.
    pub fn adjacency_bits(&self) -> Vec<u128> {
        assert!(self.n <= 128, "bit adjacency supports at most 128 vertices");
        let mut rows = vec![0u128; self.n + 1];
        for &(u, v) in &self.edges {
            rows[u] |= 1 << (v - 1);
            rows[v] |= 1 << (u - 1);
        }
        rows
    }

    /// The reverse ordered graph: vertex `i` becomes `n + 1 - i`.
    pub fn reverse(&self) -> Self {
        let n = self.n;
        let edges = self.edges.iter().map(|&(u, v)| (n + 1 - v, n + 1 - u));
        OrderedGraph::new(n, edges).expect("reversal preserves validity")
    }

    /// Length of an existing edge `{u, v}`: the position difference.
    pub fn edge_length(&self, u: usize, v: usize) -> Result<usize> {
        if !self.has_edge(u, v) {
            return Err(Error::NotAnEdge { u: u.min(v), v: u.max(v) });
        }
        Ok(u.abs_diff(v))
    }

    /// Induced subgraph on a sorted, duplicate-free vertex list, relabeled
    /// densely to `1..=verts.len()` preserving order.
    pub fn induced(&self, verts: &[usize]) -> Self {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(verts.iter().all(|&v| v >= 1 && v <= self.n));
        let mut index = vec![0usize; self.n + 1];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i + 1;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != 0 && index[v] != 0)
            .map(|&(u, v)| (index[u], index[v]));
        OrderedGraph::new(verts.len(), edges).expect("induced subgraph is valid")
    }

    /// Induced subgraph on the interval `lo..=hi`, relabeled densely.
    pub fn induced_interval(&self, lo: usize, hi: usize) -> Self {
        let verts: Vec<usize> = (lo..=hi).collect();
        self.induced(&verts)
    }

    /// Deletes one vertex and relabels densely.
    pub fn delete_vertex(&self, v: usize) -> Self {
        let verts: Vec<usize> = (1..=self.n).filter(|&w| w != v).collect();
        self.induced(&verts)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1usize];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Inner cut vertices: non-extreme vertices spanned by no edge.
    pub fn inner_cut_vertices(&self) -> Vec<usize> {
        (2..self.n)
            .filter(|&v| !self.edges.iter().any(|&(a, b)| a < v && v < b))
            .collect()
    }

    /// Splits the graph at its inner cut vertices. Needs at least 2 vertices.
    ///
    /// Segments are the maximal intervals whose interior contains no inner
    /// cut vertex; consecutive segments share their boundary vertex. Every
    /// edge lies within exactly one segment.
    pub fn segments(&self) -> Result<SegmentDecomposition> {
        if self.n < 2 {
            return Err(Error::TooFewVertices { n: self.n, min: 2 });
        }
        let inner_cuts = self.inner_cut_vertices();
        let mut bounds = Vec::with_capacity(inner_cuts.len() + 2);
        bounds.push(1);
        bounds.extend_from_slice(&inner_cuts);
        bounds.push(self.n);
        let segments = bounds
            .windows(2)
            .map(|w| {
                let (lo, hi) = (w[0], w[1]);
                let edges = self
                    .edges
                    .iter()
                    .copied()
                    .filter(|&(u, v)| lo <= u && v <= hi)
                    .collect();
                Segment { lo, hi, edges }
            })
            .collect();
        Ok(SegmentDecomposition { inner_cuts, segments })
    }

    /// Interval chromatic number: the minimum number of consecutive vertex
    /// intervals that are each independent, with the greedy witness.
    ///
    /// The left-to-right greedy (extend the current interval until an edge
    /// would close inside it) is optimal: its interval ends are maximal, and
    /// any optimal partition can be pushed right interval by interval.
    pub fn interval_chromatic_number(&self) -> (usize, Vec<(usize, usize)>) {
        if self.n == 0 {
            return (0, Vec::new());
        }
        let adj = self.adjacency();
        let mut parts = Vec::new();
        let mut start = 1usize;
        for v in 2..=self.n {
            if adj[v].iter().any(|&w| start <= w && w < v) {
                parts.push((start, v - 1));
                start = v;
            }
        }
        parts.push((start, self.n));
        (parts.len(), parts)
    }

    /// 0-1 edge matrix of a graph with interval chromatic number at most 2:
    /// rows are the first interval's vertices, columns the second's.
    pub fn bipartite_matrix(&self) -> Result<BipartiteMatrix> {
        let (k, parts) = self.interval_chromatic_number();
        if k > 2 {
            return Err(Error::NotIntervalBipartite { value: k });
        }
        let rows: Vec<usize> = if k >= 1 { (parts[0].0..=parts[0].1).collect() } else { Vec::new() };
        let cols: Vec<usize> = if k == 2 { (parts[1].0..=parts[1].1).collect() } else { Vec::new() };
        let entries = rows
            .iter()
            .map(|&r| cols.iter().map(|&c| u8::from(self.has_edge(r, c))).collect())
            .collect();
        Ok(BipartiteMatrix { rows, cols, entries })
    }
}

impl fmt::Display for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OG {}:", self.n)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i == 0 {
                write!(f, " {u}-{v}")?;
            } else {
                write!(f, ", {u}-{v}")?;
            }
        }
        Ok(())
    }
}

/// Decomposition of a graph at its inner cut vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentDecomposition {
    pub inner_cuts: Vec<usize>,
    pub segments: Vec<Segment>,
}

/// One segment: the host interval `lo..=hi` and the edges inside it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub lo: usize,
    pub hi: usize,
    pub edges: Vec<Edge>,
}

impl Segment {
    /// The segment as a standalone graph, relabeled to `1..=(hi-lo+1)`.
    pub fn to_graph(&self) -> OrderedGraph {
        let lo = self.lo;
        let edges = self.edges.iter().map(|&(u, v)| (u - lo + 1, v - lo + 1));
        OrderedGraph::new(self.hi - self.lo + 1, edges).expect("segment edges are valid")
    }
}

/// Edge matrix of an interval-bipartite graph. Row and column labels record
/// which interval every vertex (isolated ones included) belongs to, so the
/// graph can be rebuilt exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipartiteMatrix {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub entries: Vec<Vec<u8>>,
}

impl BipartiteMatrix {
    pub fn to_graph(&self) -> OrderedGraph {
        let n = self.rows.len() + self.cols.len();
        let mut edges = Vec::new();
        for (i, &r) in self.rows.iter().enumerate() {
            for (j, &c) in self.cols.iter().enumerate() {
                if self.entries[i][j] == 1 {
                    edges.push((r, c));
                }
            }
        }
        OrderedGraph::new(n, edges).expect("matrix labels are valid")
    }
}

struct Parser<'a> {
    b: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, reason: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.i, reason: reason.into() })
    }

    fn skip_ws(&mut self) {
        while self.i < self.b.len() && self.b[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.i < self.b.len() && self.b[self.i] == c {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let start = self.i;
        while self.i < self.b.len() && self.b[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if self.i == start {
            return self.err(format!("expected {what}"));
        }
        std::str::from_utf8(&self.b[start..self.i])
            .unwrap()
            .parse()
            .or_else(|_| self.err(format!("{what} out of range")))
    }

    fn graph(&mut self) -> Result<OrderedGraph> {
        self.skip_ws();
        if !(self.eat(b'O') && self.eat(b'G')) {
            return self.err("expected 'OG' header");
        }
        self.skip_ws();
        let n = self.number("vertex count")?;
        self.skip_ws();
        if !self.eat(b':') {
            return self.err("expected ':' after vertex count");
        }
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        self.skip_ws();
        if self.i < self.b.len() {
            loop {
                self.skip_ws();
                let pos = self.i;
                let u = self.number("edge endpoint")?;
                self.skip_ws();
                if !self.eat(b'-') {
                    return self.err("expected '-' between edge endpoints");
                }
                self.skip_ws();
                let v = self.number("edge endpoint")?;
                edges.push((u, v, pos));
                self.skip_ws();
                if self.i >= self.b.len() {
                    break;
                }
                if !self.eat(b',') {
                    return self.err("expected ',' between edges");
                }
            }
        }
        let mut seen = std::collections::HashSet::new();
        for &(u, v, pos) in &edges {
            self.i = pos;
            if u == v {
                return self.err(format!("loop edge at vertex {u}"));
            }
            for w in [u, v] {
                if w < 1 || w > n {
                    return self.err(format!("endpoint {w} out of range 1..={n}"));
                }
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return self.err(format!("duplicate edge {}-{}", u.min(v), u.max(v)));
            }
        }
        OrderedGraph::new(n, edges.into_iter().map(|(u, v, _)| (u, v)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn og(text: &str) -> OrderedGraph {
        OrderedGraph::parse(text).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        for text in ["OG 4: 1-2, 2-3, 3-4", "OG 3:", "OG 1:", "OG 5: 1-5, 2-3"] {
            let g = og(text);
            assert_eq!(g.to_string(), text);
            assert_eq!(OrderedGraph::parse(&g.to_string()).unwrap(), g);
        }
    }

    #[test]
    fn parse_is_whitespace_insensitive_and_normalizes() {
        let a = og("OG 4: 1-2, 2-3, 3-4");
        assert_eq!(og("OG 4:1-2,2-3,3-4"), a);
        assert_eq!(og("  OG  4 :  2 - 1 , 3-2,4 -3  "), a);
    }

    #[test]
    fn parse_errors_carry_position_and_reason() {
        let cases: &[(&str, &str)] = &[
            ("GO 3: 1-2", "expected 'OG'"),
            ("OG : 1-2", "expected vertex count"),
            ("OG 3 1-2", "expected ':'"),
            ("OG 3: 1+2", "expected '-'"),
            ("OG 3: 1-2 2-3", "expected ','"),
            ("OG 3: 1-2,", "expected edge endpoint"),
            ("OG 3: 1-4", "endpoint 4 out of range 1..=3"),
            ("OG 3: 2-2", "loop edge at vertex 2"),
            ("OG 3: 1-2, 2-1", "duplicate edge 1-2"),
        ];
        for (text, want) in cases {
            match OrderedGraph::parse(text) {
                Err(Error::Parse { pos, reason }) => {
                    assert!(
                        reason.contains(want),
                        "{text:?}: reason {reason:?} missing {want:?}"
                    );
                    assert!(pos <= text.len());
                }
                other => panic!("{text:?}: expected parse error, got {other:?}"),
            }
        }
        // Positions point at the offending token.
        match OrderedGraph::parse("OG 3: 1-2, 2-1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn constructor_validates() {
        assert_eq!(
            OrderedGraph::new(3, [(1, 4)]),
            Err(Error::EndpointOutOfRange { v: 4, n: 3 })
        );
        assert_eq!(OrderedGraph::new(3, [(2, 2)]), Err(Error::LoopEdge { v: 2 }));
        assert_eq!(
            OrderedGraph::new(3, [(1, 2), (2, 1)]),
            Err(Error::DuplicateEdge { u: 1, v: 2 })
        );
    }

    #[test]
    fn reverse_maps_positions() {
        assert_eq!(og("OG 3: 1-2").reverse(), og("OG 3: 2-3"));
        // Self-reverse pattern.
        let a3 = og("OG 4: 1-2, 1-4, 3-4");
        assert_eq!(a3.reverse(), a3);
        // Reversal swaps the two five-vertex bonnet shapes.
        assert_eq!(og("OG 5: 1-2, 1-5, 3-4").reverse(), og("OG 5: 1-5, 2-3, 4-5"));
    }

    #[test]
    fn reverse_is_an_involution() {
        let g = og("OG 6: 1-3, 2-5, 4-6");
        assert_eq!(g.reverse().reverse(), g);
    }

    #[test]
    fn edge_length_is_position_difference() {
        let g = og("OG 4: 1-4, 2-4, 2-3");
        assert_eq!(g.edge_length(1, 4).unwrap(), 3);
        assert_eq!(g.edge_length(4, 2).unwrap(), 2);
        assert_eq!(g.edge_length(2, 3).unwrap(), 1);
        assert_eq!(g.edge_length(1, 2), Err(Error::NotAnEdge { u: 1, v: 2 }));
    }

    #[test]
    fn segments_split_at_inner_cuts() {
        let path = og("OG 4: 1-2, 2-3, 3-4");
        let d = path.segments().unwrap();
        assert_eq!(d.inner_cuts, vec![2, 3]);
        let segs: Vec<(usize, usize, Vec<Edge>)> =
            d.segments.iter().map(|s| (s.lo, s.hi, s.edges.clone())).collect();
        assert_eq!(
            segs,
            vec![
                (1, 2, vec![(1, 2)]),
                (2, 3, vec![(2, 3)]),
                (3, 4, vec![(3, 4)]),
            ]
        );

        let spiral = og("OG 4: 1-4, 2-4, 2-3");
        let d = spiral.segments().unwrap();
        assert!(d.inner_cuts.is_empty());
        assert_eq!(d.segments.len(), 1);
        assert_eq!((d.segments[0].lo, d.segments[0].hi), (1, 4));

        let g = og("OG 5: 1-3, 3-5, 2-3");
        let d = g.segments().unwrap();
        assert_eq!(d.inner_cuts, vec![3]);
        assert_eq!(d.segments[0].edges, vec![(1, 3), (2, 3)]);
        assert_eq!(d.segments[1].edges, vec![(3, 5)]);
        assert_eq!(d.segments[1].to_graph(), og("OG 3: 1-3"));
    }

    #[test]
    fn segments_need_two_vertices() {
        assert_eq!(
            og("OG 1:").segments(),
            Err(Error::TooFewVertices { n: 1, min: 2 })
        );
    }

    #[test]
    fn segments_partition_edges() {
        let g = og("OG 7: 1-3, 2-3, 3-5, 4-5, 5-6, 6-7");
        let d = g.segments().unwrap();
        let mut all: Vec<Edge> = d.segments.iter().flat_map(|s| s.edges.clone()).collect();
        all.sort_unstable();
        assert_eq!(all, g.edges());
    }

    #[test]
    fn interval_chromatic_examples() {
        assert_eq!(og("OG 4: 1-2, 2-3, 3-4").interval_chromatic_number().0, 4);
        let (k, parts) = og("OG 4: 1-4, 2-4, 2-3").interval_chromatic_number();
        assert_eq!((k, parts), (2, vec![(1, 2), (3, 4)]));
        assert_eq!(og("OG 5:").interval_chromatic_number(), (1, vec![(1, 5)]));
    }

    /// Exhaustive optimum over all interval partitions, for cross-checking.
    fn interval_chi_exhaustive(g: &OrderedGraph) -> usize {
        let n = g.n();
        let mut best = n;
        // Bit i of `cuts` set means a new interval starts at vertex i + 2.
        for cuts in 0u32..(1 << (n - 1)) {
            let mut start = 1;
            let mut parts = Vec::new();
            for v in 2..=n {
                if cuts >> (v - 2) & 1 == 1 {
                    parts.push((start, v - 1));
                    start = v;
                }
            }
            parts.push((start, n));
            let ok = parts.iter().all(|&(lo, hi)| {
                !g.edges().iter().any(|&(u, v)| lo <= u && v <= hi)
            });
            if ok {
                best = best.min(parts.len());
            }
        }
        best
    }

    #[test]
    fn interval_chromatic_matches_exhaustive_on_all_small_graphs() {
        // All graphs on up to 6 vertices.
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> = (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .collect();
            for mask in 0u32..(1 << pairs.len()) {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e);
                let g = OrderedGraph::new(n, edges).unwrap();
                assert_eq!(
                    g.interval_chromatic_number().0,
                    interval_chi_exhaustive(&g),
                    "greedy vs exhaustive on {g}"
                );
            }
        }
    }

    #[test]
    fn interval_chromatic_matches_exhaustive_on_random_larger_graphs() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x0261);
        for _ in 0..2000 {
            let n = rng.random_range(7..=8);
            let mut edges = Vec::new();
            for u in 1..=n {
                for v in u + 1..=n {
                    if rng.random_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = OrderedGraph::new(n, edges).unwrap();
            assert_eq!(g.interval_chromatic_number().0, interval_chi_exhaustive(&g));
        }
    }

    #[test]
    fn interval_chromatic_one_iff_edgeless() {
        assert_eq!(og("OG 3:").interval_chromatic_number().0, 1);
        assert_eq!(og("OG 3: 1-3").interval_chromatic_number().0, 2);
    }

    #[test]
    fn bipartite_matrix_examples() {
        let m = og("OG 4: 1-4, 2-4, 2-3").bipartite_matrix().unwrap();
        assert_eq!(m.rows, vec![1, 2]);
        assert_eq!(m.cols, vec![3, 4]);
        assert_eq!(m.entries, vec![vec![0, 1], vec![1, 1]]);

        let m = og("OG 2: 1-2").bipartite_matrix().unwrap();
        assert_eq!(m.entries, vec![vec![1]]);

        assert_eq!(
            og("OG 4: 1-2, 2-3, 3-4").bipartite_matrix(),
            Err(Error::NotIntervalBipartite { value: 4 })
        );
    }

    #[test]
    fn bipartite_matrix_round_trips() {
        for text in [
            "OG 4: 1-4, 2-4, 2-3",
            "OG 2: 1-2",
            "OG 5: 1-3, 1-4, 2-5",
            "OG 6: 1-4, 2-4, 3-6",
            "OG 3:",
        ] {
            let g = og(text);
            assert_eq!(g.bipartite_matrix().unwrap().to_graph(), g, "{text}");
        }
    }

    #[test]
    fn json_shape_round_trips() {
        let g = og("OG 4: 1-2, 3-4");
        let json = serde_json::to_value(&g).unwrap();
        assert_eq!(json, serde_json::json!({"n": 4, "edges": [[1, 2], [3, 4]]}));
        let back: OrderedGraph = serde_json::from_value(json).unwrap();
        assert_eq!(back, g);
        // Deserialization enforces the same invariants as construction.
        let bad: std::result::Result<OrderedGraph, _> =
            serde_json::from_str(r#"{"n": 2, "edges": [[1, 1]]}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn induced_relabels_densely() {
        let g = og("OG 5: 1-3, 2-5, 4-5");
        assert_eq!(g.induced(&[2, 4, 5]), og("OG 3: 1-3, 2-3"));
        assert_eq!(g.delete_vertex(3), og("OG 4: 2-4, 3-4"));
        assert_eq!(g.induced_interval(2, 4), og("OG 3:"));
    }
}
