use serde::Serialize;

use crate::graph::OrderedGraph;

/// An order-preserving embedding of a pattern into a host: `image()[i]` is
/// the host vertex carrying pattern vertex `i + 1`, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Embedding(Vec<usize>);

impl Embedding {
    pub fn image(&self) -> &[usize] {
        &self.0
    }

    /// Host vertex carrying the given pattern vertex.
    pub fn map(&self, pattern_vertex: usize) -> usize {
        self.0[pattern_vertex - 1]
    }

    /// Checks this embedding against the pair it claims to relate: strictly
    /// increasing image inside the host, with every pattern edge mapped to a
    /// host edge. Copies are not required to be induced.
    pub fn validate(&self, pattern: &OrderedGraph, host: &OrderedGraph) -> bool {
        self.0.len() == pattern.n()
            && self.0.windows(2).all(|w| w[0] < w[1])
            && self.0.iter().all(|&v| v >= 1 && v <= host.n())
            && pattern
                .edges()
                .iter()
                .all(|&(u, v)| host.has_edge(self.map(u), self.map(v)))
    }
}

/// First copy of `pattern` in `host` in lexicographic image order, if any.
pub fn find_embedding(pattern: &OrderedGraph, host: &OrderedGraph) -> Option<Embedding> {
    let mut out = Vec::new();
    search(pattern, host, false, &mut out);
    out.pop()
}

/// All copies of `pattern` in `host`, in lexicographic image order.
pub fn find_all_embeddings(pattern: &OrderedGraph, host: &OrderedGraph) -> Vec<Embedding> {
    let mut out = Vec::new();
    search(pattern, host, true, &mut out);
    out
}

pub fn contains(host: &OrderedGraph, pattern: &OrderedGraph) -> bool {
    find_embedding(pattern, host).is_some()
}

fn search(pattern: &OrderedGraph, host: &OrderedGraph, all: bool, out: &mut Vec<Embedding>) {
    let k = pattern.n();
    let n = host.n();
    if k > n {
        return;
    }
    if k == 0 {
        out.push(Embedding(Vec::new()));
        return;
    }
    // Pattern edges pointing back from each vertex to already-placed ones.
    let mut back = vec![Vec::new(); k + 1];
    for &(u, v) in pattern.edges() {
        back[v].push(u);
    }
    let adj = host.adjacency_sets();
    let mut image = vec![0usize; k];

    fn rec(
        i: usize,
        k: usize,
        n: usize,
        back: &[Vec<usize>],
        adj: &AdjSets,
        image: &mut Vec<usize>,
        all: bool,
        out: &mut Vec<Embedding>,
    ) -> bool {
        if i > k {
            out.push(Embedding(image.clone()));
            return !all;
        }
        let lo = if i == 1 { 1 } else { image[i - 2] + 1 };
        // Enough host vertices must remain for the rest of the pattern.
        for p in lo..=(n - (k - i)) {
            if back[i].iter().all(|&j| adj.has(image[j - 1], p)) {
                image[i - 1] = p;
                if rec(i + 1, k, n, back, adj, image, all, out) {
                    return true;
                }
            }
        }
        false
    }

    rec(1, k, n, &back, &adj, &mut image, all, out);
}

/// Adjacency with O(1) queries; bitmask rows for hosts up to 128 vertices.
pub(crate) enum AdjSets {
    Bits(Vec<u128>),
    Set(std::collections::HashSet<(usize, usize)>),
}

impl AdjSets {
    pub(crate) fn has(&self, u: usize, v: usize) -> bool {
        match self {
            AdjSets::Bits(rows) => rows[u] >> (v - 1) & 1 == 1,
            AdjSets::Set(s) => s.contains(&(u.min(v), u.max(v))),
        }
    }
}

impl OrderedGraph {
    pub(crate) fn adjacency_sets(&self) -> AdjSets {
        if self.n() <= 128 {
            AdjSets::Bits(self.adjacency_bits())
        } else {
            AdjSets::Set(self.edges().iter().copied().collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn og(text: &str) -> OrderedGraph {
        OrderedGraph::parse(text).unwrap()
    }

    /// Independent oracle: scan every increasing vertex tuple.
    fn embeddings_brute(pattern: &OrderedGraph, host: &OrderedGraph) -> Vec<Vec<usize>> {
        (1..=host.n())
            .combinations(pattern.n())
            .filter(|tuple| {
                pattern
                    .edges()
                    .iter()
                    .all(|&(u, v)| host.has_edge(tuple[u - 1], tuple[v - 1]))
            })
            .collect()
    }

    #[test]
    fn triangle_in_triangle_is_identity() {
        let k3 = og("OG 3: 1-2, 1-3, 2-3");
        assert_eq!(find_embedding(&k3, &k3).unwrap().image(), &[1, 2, 3]);
    }

    #[test]
    fn isolated_pattern_vertices_consume_host_vertices() {
        let spanned = og("OG 3: 1-3");
        let host = og("OG 4: 1-4");
        let all = find_all_embeddings(&spanned, &host);
        let images: Vec<&[usize]> = all.iter().map(|e| e.image()).collect();
        assert_eq!(images, vec![&[1, 2, 4][..], &[1, 3, 4][..]]);
        // No middle vertex available: no copy.
        assert!(find_embedding(&spanned, &og("OG 2: 1-2")).is_none());
    }

    #[test]
    fn copies_need_not_be_induced() {
        let p2 = og("OG 2: 1-2");
        let k3 = og("OG 3: 1-2, 1-3, 2-3");
        assert_eq!(find_all_embeddings(&p2, &k3).len(), 3);
    }

    #[test]
    fn monotone_path_absent_from_ordered_complete_bipartite() {
        let p4 = og("OG 4: 1-2, 2-3, 3-4");
        let b22 = og("OG 4: 1-3, 1-4, 2-3, 2-4");
        assert!(find_embedding(&p4, &b22).is_none());
    }

    #[test]
    fn agrees_with_brute_force_on_random_pairs() {
        use rand::{RngExt, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x0262);
        let mut nonempty = 0;
        for _ in 0..1500 {
            let n = rng.random_range(1..=7);
            let k = rng.random_range(1..=4.min(n));
            let host = random_graph(&mut rng, n, 0.4);
            let pattern = random_graph(&mut rng, k, 0.5);
            let got: Vec<Vec<usize>> = find_all_embeddings(&pattern, &host)
                .iter()
                .map(|e| e.image().to_vec())
                .collect();
            let want = embeddings_brute(&pattern, &host);
            assert_eq!(got, want, "pattern {pattern} host {host}");
            if !got.is_empty() {
                nonempty += 1;
            }
            // Containment is reversal-compatible.
            assert_eq!(
                find_embedding(&pattern, &host).is_some(),
                find_embedding(&pattern.reverse(), &host.reverse()).is_some()
            );
            // First embedding is the lexicographic minimum.
            assert_eq!(
                find_embedding(&pattern, &host).map(|e| e.image().to_vec()),
                want.first().cloned()
            );
        }
        assert!(nonempty > 200, "sample should exercise positive cases");
    }

    pub(crate) fn random_graph(
        rng: &mut impl rand::Rng,
        n: usize,
        p: f64,
    ) -> OrderedGraph {
        use rand::RngExt;
        let mut edges = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        OrderedGraph::new(n, edges).unwrap()
    }

    #[test]
    fn validate_rejects_wrong_images() {
        let p = og("OG 2: 1-2");
        let g = og("OG 3: 1-2");
        assert!(Embedding(vec![1, 2]).validate(&p, &g));
        assert!(!Embedding(vec![1, 3]).validate(&p, &g));
        assert!(!Embedding(vec![2, 1]).validate(&p, &g));
        assert!(!Embedding(vec![1]).validate(&p, &g));
    }
}
