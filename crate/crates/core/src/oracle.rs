use std::collections::HashMap;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, RngExt, SeedableRng};
use serde::Serialize;

use crate::constructions::TutteGraph;
use crate::embed::find_embedding;
use crate::graph::OrderedGraph;
use crate::{Error, Result};

/// Default cap on backtracking nodes per exact solve, overridable through
/// the `ORDCHROM_NODE_BUDGET` environment variable.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

pub fn default_node_budget() -> u64 {
    std::env::var("ORDCHROM_NODE_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_NODE_BUDGET)
}

/// Why the reported chromatic number cannot be smaller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChiCertificate {
    /// A clique of exactly `chi` vertices.
    Clique { vertices: Vec<usize> },
    /// The search tree for `colors = chi - 1` was exhausted.
    RefutedColors { colors: usize, nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiResult {
    pub chi: usize,
    /// Proper coloring with colors `1..=chi`, indexed by vertex - 1.
    pub coloring: Vec<usize>,
    pub certificate: ChiCertificate,
    /// Total backtracking nodes across all color counts tried.
    pub nodes: u64,
}

/// Exact chromatic number by saturation-guided backtracking over increasing
/// color counts, starting from a greedy clique lower bound. Deterministic;
/// never wrong: past the node budget it fails distinctly instead.
pub fn chromatic_number(g: &OrderedGraph) -> Result<ChiResult> {
    chromatic_number_with_budget(g, default_node_budget())
}

pub fn chromatic_number_with_budget(g: &OrderedGraph, budget: u64) -> Result<ChiResult> {
    let n = g.n();
    if n < 1 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    if n > 128 {
        return Err(Error::SizeCap { required: n.to_string(), cap: 128 });
    }
    let adj = g.adjacency_bits();
    let clique = greedy_clique(&adj, n);
    let (greedy_colors, greedy_count) = greedy_coloring(&adj, n);
    if clique.len() == greedy_count {
        return Ok(ChiResult {
            chi: greedy_count,
            coloring: greedy_colors,
            certificate: ChiCertificate::Clique { vertices: clique },
            nodes: 0,
        });
    }
    let mut total_nodes = 0u64;
    let mut last_refutation_nodes = 0u64;
    for k in clique.len()..greedy_count {
        let mut nodes = 0u64;
        let outcome = try_k_coloring(&adj, n, k, &mut nodes, budget.saturating_sub(total_nodes));
        total_nodes += nodes;
        match outcome? {
            Some(coloring) => {
                let certificate = if k == clique.len() {
                    ChiCertificate::Clique { vertices: clique }
                } else {
                    ChiCertificate::RefutedColors { colors: k - 1, nodes: last_refutation_nodes }
                };
                return Ok(ChiResult { chi: k, coloring, certificate, nodes: total_nodes });
            }
            None => last_refutation_nodes = nodes,
        }
    }
    // Every count below the greedy bound was refuted, so greedy is optimal.
    Ok(ChiResult {
        chi: greedy_count,
        coloring: greedy_colors,
        certificate: ChiCertificate::RefutedColors {
            colors: greedy_count - 1,
            nodes: last_refutation_nodes,
        },
        nodes: total_nodes,
    })
}

/// Largest clique reachable greedily from each seed vertex, vertices tried
/// in degree-descending order.
fn greedy_clique(adj: &[u128], n: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].count_ones()), v));
    let mut best: Vec<usize> = Vec::new();
    for &seed in &order {
        let mut clique = vec![seed];
        let mut common = adj[seed];
        for &v in &order {
            if common >> (v - 1) & 1 == 1 {
                clique.push(v);
                common &= adj[v];
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// First-fit coloring in vertex order; the fast upper bound.
fn greedy_coloring(adj: &[u128], n: usize) -> (Vec<usize>, usize) {
    let mut colors = vec![0usize; n];
    let mut max = 0;
    for v in 1..=n {
        let mut used = 0u128;
        let mut nb = adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize + 1;
            nb &= nb - 1;
            if colors[w - 1] != 0 {
                used |= 1 << (colors[w - 1] - 1);
            }
        }
        let c = (!used).trailing_zeros() as usize + 1;
        colors[v - 1] = c;
        max = max.max(c);
    }
    (colors, max)
}

/// Backtracking search for a proper coloring with at most `k` colors.
/// Branches on the uncolored vertex with the most distinctly colored
/// neighbors; only one brand-new color is ever tried at a node.
fn try_k_coloring(
    adj: &[u128],
    n: usize,
    k: usize,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<Vec<usize>>> {
    if k == 0 {
        return Ok(if n == 0 { Some(Vec::new()) } else { None });
    }
    let mut colors = vec![0usize; n + 1];
    if color_rec(adj, n, k, &mut colors, 0, nodes, budget)? {
        Ok(Some(colors[1..].to_vec()))
    } else {
        Ok(None)
    }
}

fn color_rec(
    adj: &[u128],
    n: usize,
    k: usize,
    colors: &mut [usize],
    max_used: usize,
    nodes: &mut u64,
    budget: u64,
) -> Result<bool> {
    let mut pick = 0usize;
    let mut pick_key = (0usize, 0usize);
    for v in 1..=n {
        if colors[v] != 0 {
            continue;
        }
        let mut seen = 0u128;
        let mut uncolored = 0usize;
        let mut nb = adj[v];
        while nb != 0 {
            let w = nb.trailing_zeros() as usize + 1;
            nb &= nb - 1;
            if colors[w] != 0 {
                seen |= 1 << (colors[w] - 1);
            } else {
                uncolored += 1;
            }
        }
        let key = (seen.count_ones() as usize, uncolored);
        if pick == 0 || key > pick_key {
            pick = v;
            pick_key = key;
        }
    }
    if pick == 0 {
        return Ok(true);
    }
    let mut forbidden = 0u128;
    let mut nb = adj[pick];
    while nb != 0 {
        let w = nb.trailing_zeros() as usize + 1;
        nb &= nb - 1;
        if colors[w] != 0 {
            forbidden |= 1 << (colors[w] - 1);
        }
    }
    for c in 1..=k.min(max_used + 1) {
        if forbidden >> (c - 1) & 1 == 1 {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::BudgetExhausted { explored: *nodes });
        }
        colors[pick] = c;
        if color_rec(adj, n, k, colors, max_used.max(c), nodes, budget)? {
            return Ok(true);
        }
        colors[pick] = 0;
    }
    Ok(false)
}

/// Outcome of an exhaustive or sampled search over pattern avoiders.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub pattern: OrderedGraph,
    pub n: usize,
    /// Maximum chromatic number or maximum edge count found.
    pub value: usize,
    pub witness: OrderedGraph,
    /// Avoiders visited (exhaustive) or samples kept (heuristic).
    pub examined: u64,
    /// False when the search was a randomized lower-bound pass.
    pub exhaustive: bool,
    pub millis: u128,
}

const EXHAUSTIVE_LIMIT: usize = 7;

/// Maximum chromatic number over all ordered graphs on `n` vertices that
/// avoid `h`. Exhaustive for `n <= 7` via copy-mask pruned edge-subset
/// search; beyond that a seeded random sample, flagged non-exhaustive.
pub fn max_chi_avoiders(h: &OrderedGraph, n: usize) -> Result<SearchReport> {
    avoider_search(h, n, Goal::MaxChi)
}

/// Largest edge count over all ordered graphs on `n` vertices avoiding `h`.
pub fn extremal_number(h: &OrderedGraph, n: usize) -> Result<SearchReport> {
    avoider_search(h, n, Goal::MaxEdges)
}

#[derive(Clone, Copy, PartialEq)]
enum Goal {
    MaxChi,
    MaxEdges,
}

fn avoider_search(h: &OrderedGraph, n: usize, goal: Goal) -> Result<SearchReport> {
    if n < 1 {
        return Err(Error::TooFewVertices { n, min: 1 });
    }
    let start = Instant::now();
    let edgeless = OrderedGraph::new(n, [])?;
    if find_embedding(h, &edgeless).is_some() {
        return Err(Error::NoAvoiders { n });
    }
    let complete = crate::constructions::complete_graph(n)?;
    if find_embedding(h, &complete).is_none() {
        // Nothing on n vertices beats the complete graph for either goal.
        let value = match goal {
            Goal::MaxChi => n,
            Goal::MaxEdges => complete.edges().len(),
        };
        return Ok(SearchReport {
            pattern: h.clone(),
            n,
            value,
            witness: complete,
            examined: 1,
            exhaustive: true,
            millis: start.elapsed().as_millis(),
        });
    }
    if n > EXHAUSTIVE_LIMIT {
        return heuristic_search(h, n, goal, start);
    }

    let all_edges: Vec<(usize, usize)> = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .collect();
    let edge_index: HashMap<(usize, usize), usize> =
        all_edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let m = all_edges.len();
    // Every copy of the pattern inside the complete host, as a required-edge
    // mask; a graph contains the pattern iff it includes one mask fully.
    let copies: Vec<u32> = crate::embed::find_all_embeddings(h, &complete)
        .iter()
        .map(|e| {
            h.edges()
                .iter()
                .map(|&(a, b)| 1u32 << edge_index[&(e.map(a), e.map(b))])
                .fold(0, |acc, bit| acc | bit)
        })
        .collect();
    let copies_at: Vec<Vec<u32>> = (0..m)
        .map(|i| copies.iter().copied().filter(|c| c >> i & 1 == 1).collect())
        .collect();

    let mut search = AvoiderSearch {
        all_edges: &all_edges,
        copies_at: &copies_at,
        m,
        n,
        goal,
        best: 0,
        witness_mask: 0,
        examined: 0,
    };
    search.run(0, 0, 0);
    let witness = mask_to_graph(n, &all_edges, search.witness_mask);
    Ok(SearchReport {
        pattern: h.clone(),
        n,
        value: search.best,
        witness,
        examined: search.examined,
        exhaustive: true,
        millis: start.elapsed().as_millis(),
    })
}

struct AvoiderSearch<'a> {
    all_edges: &'a [(usize, usize)],
    copies_at: &'a [Vec<u32>],
    m: usize,
    n: usize,
    goal: Goal,
    best: usize,
    witness_mask: u32,
    examined: u64,
}

impl AvoiderSearch<'_> {
    fn run(&mut self, i: usize, mask: u32, count: usize) {
        if self.goal == Goal::MaxEdges && count + (self.m - i) <= self.best && self.examined > 0 {
            return;
        }
        if i == self.m {
            self.examined += 1;
            match self.goal {
                Goal::MaxEdges => {
                    if count > self.best {
                        self.best = count;
                        self.witness_mask = mask;
                    }
                }
                Goal::MaxChi => self.evaluate_chi(mask),
            }
            return;
        }
        // Taking the edge first reaches dense avoiders early, which makes
        // both prunes effective.
        let can_take = !self.copies_at[i]
            .iter()
            .any(|&c| c & !(mask | 1 << i) == 0);
        if can_take {
            self.run(i + 1, mask | 1 << i, count + 1);
        }
        if self.goal == Goal::MaxChi && self.best == self.n {
            return;
        }
        self.run(i + 1, mask, count);
    }

    fn evaluate_chi(&mut self, mask: u32) {
        // Only maximal avoiders can attain the maximum chromatic number, and
        // the first leaf in take-first order is always maximal, so a witness
        // is recorded before any leaf gets skipped here.
        for i in 0..self.m {
            if mask >> i & 1 == 0
                && !self.copies_at[i].iter().any(|&c| c & !(mask | 1 << i) == 0)
            {
                return;
            }
        }
        let g = mask_to_graph(self.n, self.all_edges, mask);
        let adj = g.adjacency_bits();
        let (_, greedy) = greedy_coloring(&adj, self.n);
        if greedy <= self.best {
            return;
        }
        let chi = chromatic_number(&g).expect("small graph within budget").chi;
        if chi > self.best {
            self.best = chi;
            self.witness_mask = mask;
        }
    }
}

fn mask_to_graph(n: usize, all_edges: &[(usize, usize)], mask: u32) -> OrderedGraph {
    let edges = all_edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e);
    OrderedGraph::new(n, edges).expect("edge subset is valid")
}

fn heuristic_search(
    h: &OrderedGraph,
    n: usize,
    goal: Goal,
    start: Instant,
) -> Result<SearchReport> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x0263);
    let mut best = match goal {
        Goal::MaxChi => 1,
        Goal::MaxEdges => 0,
    };
    let mut witness = OrderedGraph::new(n, [])?;
    let mut kept = 0u64;
    match goal {
        Goal::MaxChi => {
            for round in 0..200 {
                let p = 0.15 + 0.004 * round as f64;
                let g = random_graph(&mut rng, n, p);
                if find_embedding(h, &g).is_some() {
                    continue;
                }
                kept += 1;
                let chi = chromatic_number(&g)?.chi;
                if chi > best {
                    best = chi;
                    witness = g;
                }
            }
        }
        Goal::MaxEdges => {
            // Greedy maximal avoiders along random edge orders.
            let all: Vec<(usize, usize)> = (1..=n)
                .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
                .collect();
            for _ in 0..200 {
                let mut order = all.clone();
                for i in (1..order.len()).rev() {
                    order.swap(i, rng.random_range(0..=i));
                }
                let mut edges: Vec<(usize, usize)> = Vec::new();
                for &e in &order {
                    edges.push(e);
                    let g = OrderedGraph::new(n, edges.iter().copied())?;
                    if find_embedding(h, &g).is_some() {
                        edges.pop();
                    }
                }
                kept += 1;
                if edges.len() > best {
                    best = edges.len();
                    witness = OrderedGraph::new(n, edges)?;
                }
            }
        }
    }
    Ok(SearchReport {
        pattern: h.clone(),
        n,
        value: best,
        witness,
        examined: kept,
        exhaustive: false,
        millis: start.elapsed().as_millis(),
    })
}

fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> OrderedGraph {
    let edges = (1..=n)
        .flat_map(|u| (u + 1..=n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(p))
        .collect::<Vec<_>>();
    OrderedGraph::new(n, edges).expect("random edges are valid")
}

const ORDERING_LIMIT: usize = 7;

/// All distinct ordered graphs obtainable by placing the vertices of an
/// unordered graph on positions `1..=n`, deduplicated by canonical form and
/// sorted by edge list.
pub fn distinct_orderings(n: usize, edges: &[(usize, usize)]) -> Result<Vec<OrderedGraph>> {
    if n > ORDERING_LIMIT {
        return Err(Error::SizeCap { required: n.to_string(), cap: ORDERING_LIMIT as u64 });
    }
    // Validate labels once through the ordered constructor.
    OrderedGraph::new(n, edges.iter().copied())?;
    let mut seen: std::collections::HashSet<OrderedGraph> = std::collections::HashSet::new();
    for perm in (1..=n).permutations(n) {
        let g = OrderedGraph::new(n, edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])))
            .expect("relabeling keeps edges valid");
        seen.insert(g);
    }
    let mut out: Vec<OrderedGraph> = seen.into_iter().collect();
    out.sort_by(|a, b| a.edges().cmp(b.edges()));
    Ok(out)
}

/// Number of distinct orderings, by enumeration (the `n!/a` automorphism
/// formula is the independent cross-check, not the implementation).
pub fn count_orderings(n: usize, edges: &[(usize, usize)]) -> Result<u64> {
    Ok(distinct_orderings(n, edges)?.len() as u64)
}

/// Number of vertex permutations preserving the unordered edge set.
pub fn automorphism_count(n: usize, edges: &[(usize, usize)]) -> Result<u64> {
    if n > ORDERING_LIMIT {
        return Err(Error::SizeCap { required: n.to_string(), cap: ORDERING_LIMIT as u64 });
    }
    let reference = OrderedGraph::new(n, edges.iter().copied())?;
    let count = (1..=n)
        .permutations(n)
        .filter(|perm| {
            OrderedGraph::new(n, edges.iter().map(|&(u, v)| (perm[u - 1], perm[v - 1])))
                .map(|g| g == reference)
                .unwrap_or(false)
        })
        .count();
    Ok(count as u64)
}

/// All ordered trees on `n` vertices, decoded from the `n^(n-2)` Pruefer
/// sequences; the bijection guarantees distinctness and completeness.
pub fn all_ordered_trees(n: usize) -> Vec<OrderedGraph> {
    match n {
        0 => Vec::new(),
        1 => vec![OrderedGraph::new(1, []).unwrap()],
        2 => vec![OrderedGraph::new(2, [(1, 2)]).unwrap()],
        _ => {
            let mut out = Vec::new();
            let mut seq = vec![1usize; n - 2];
            loop {
                out.push(
                    OrderedGraph::new(n, prufer_decode(n, &seq)).expect("decoded tree is valid"),
                );
                // Advance the sequence as a base-n counter.
                let mut i = 0;
                while i < seq.len() {
                    if seq[i] < n {
                        seq[i] += 1;
                        break;
                    }
                    seq[i] = 1;
                    i += 1;
                }
                if i == seq.len() {
                    return out;
                }
            }
        }
    }
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n + 1];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (1..=n)
        .filter(|&v| degree[v] == 1)
        .map(std::cmp::Reverse)
        .collect();
    for &s in seq {
        let std::cmp::Reverse(leaf) = leaves.pop().expect("pruefer leaf");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.push(std::cmp::Reverse(s));
        }
    }
    let std::cmp::Reverse(a) = leaves.pop().expect("pruefer end");
    let std::cmp::Reverse(b) = leaves.pop().expect("pruefer end");
    edges.push((a.min(b), a.max(b)));
    edges
}

/// A machine-checked refutation: the blown-up graph admits no proper
/// coloring with `colors` colors.
///
/// Soundness chain, every link re-verified here: the structure holds (each
/// block induces the base, matchings are position-aligned and complete, the
/// right block is independent); `chi(base) >= colors`, so any proper
/// `colors`-coloring uses every color on every block; the right block has
/// `colors * (n - 1) + 1` vertices, so each of its colorings has `n`
/// vertices of one color, located as one of the matched subsets; the block
/// matched to it then needs a vertex of that color, clashing across the
/// matching. Every right-block coloring is enumerated and its monochromatic
/// subset exhibited.
#[derive(Debug, Clone, Serialize)]
pub struct TutteRefutation {
    pub colors: usize,
    pub base_chi: usize,
    pub v_colorings_checked: u64,
}

pub fn refute_tutte_coloring(t: &TutteGraph, colors: usize) -> Result<TutteRefutation> {
    if !t.verify_structure() {
        return Err(Error::BadCertificate {
            path: Vec::new(),
            reason: "blow-up structure does not verify".into(),
        });
    }
    let base_chi = chromatic_number(&t.base)?.chi;
    if base_chi < colors {
        return Err(Error::BadCertificate {
            path: Vec::new(),
            reason: format!("base has chromatic number {base_chi}, need at least {colors}"),
        });
    }
    let n = t.n_base;
    if t.n_right != colors * (n - 1) + 1 {
        return Err(Error::BadCertificate {
            path: Vec::new(),
            reason: format!(
                "right block has {} vertices, pigeonhole needs {}",
                t.n_right,
                colors * (n - 1) + 1
            ),
        });
    }
    let subset_index: HashMap<&[usize], usize> = t
        .v_subsets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let mut assignment = vec![0usize; t.n_right];
    let mut checked = 0u64;
    loop {
        let mono = (0..colors).find_map(|c| {
            let ids: Vec<usize> = assignment
                .iter()
                .enumerate()
                .filter(|&(_, &a)| a == c)
                .map(|(i, _)| t.v_vertices[i])
                .collect();
            (ids.len() >= n).then(|| ids[..n].to_vec())
        });
        let Some(subset) = mono else {
            return Err(Error::BadCertificate {
                path: Vec::new(),
                reason: "a right-block coloring has no monochromatic subset".into(),
            });
        };
        if !subset_index.contains_key(subset.as_slice()) {
            return Err(Error::BadCertificate {
                path: Vec::new(),
                reason: format!("monochromatic subset {subset:?} is not matched to a block"),
            });
        }
        checked += 1;
        let mut i = 0;
        while i < assignment.len() {
            assignment[i] += 1;
            if assignment[i] < colors {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
        if i == assignment.len() {
            break;
        }
    }
    Ok(TutteRefutation { colors, base_chi, v_colorings_checked: checked })
}
