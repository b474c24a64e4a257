//! Executes a bound derivation as a coloring algorithm.
//!
//! Each derivation rule has constructive content: it either colors the
//! host directly or partitions/transforms it into hosts that avoid the
//! child patterns and combines their colorings. `color_avoider` walks a
//! verified derivation and returns a proper coloring within its bound.
//!
//! Colors are 0-based, so a coloring within bound `b` uses colors from
//! `0..b`.

use num_bigint::BigUint;

use crate::bounds::{verify_derivation, BoundDerivation, Rule};
use crate::embed::{find_all_embeddings, find_embedding};
use crate::graph::OrderedGraph;
use crate::{Error, Result};

/// Colors `g` with at most `d.bound` colors by executing the derivation.
/// `d` must be a valid derivation for `h`, and `g` must avoid `h`.
pub fn color_avoider(h: &OrderedGraph, g: &OrderedGraph, d: &BoundDerivation) -> Result<Vec<usize>> {
    verify_derivation(h, d)?;
    if let Some(emb) = find_embedding(h, g) {
        return Err(Error::HostContainsPattern(emb.image().to_vec()));
    }
    let colors = exec(d, g);
    // Safety net on every call: the coloring must be proper and stay
    // within the certified bound.
    for &(a, b) in g.edges() {
        assert!(
            colors[a - 1] != colors[b - 1],
            "derivation executor left edge {a}-{b} monochromatic on a verified avoider of {h}"
        );
    }
    for (i, &c) in colors.iter().enumerate() {
        assert!(
            BigUint::from(c) < d.bound,
            "derivation executor gave vertex {} color {c}, outside the certified bound {}",
            i + 1,
            d.bound
        );
    }
    Ok(colors)
}

/// Min-degree elimination (smallest vertex on ties) followed by greedy
/// coloring in reverse elimination order. Returns the coloring and the
/// degeneracy; the color count is at most degeneracy + 1.
pub fn degeneracy_coloring(g: &OrderedGraph) -> (Vec<usize>, usize) {
    let n = g.n();
    let adj = g.adjacency();
    let mut deg: Vec<usize> = (0..=n).map(|v| if v == 0 { 0 } else { adj[v].len() }).collect();
    let mut removed = vec![false; n + 1];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (1..=n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| deg[v])
            .expect("a vertex remains");
        degeneracy = degeneracy.max(deg[v]);
        removed[v] = true;
        order.push(v);
        for &u in &adj[v] {
            if !removed[u] {
                deg[u] -= 1;
            }
        }
    }
    let mut colors = vec![usize::MAX; n];
    for &v in order.iter().rev() {
        let mut used = vec![false; degeneracy + 1];
        for &u in &adj[v] {
            let c = colors[u - 1];
            if c != usize::MAX && c <= degeneracy {
                used[c] = true;
            }
        }
        colors[v - 1] = (0..=degeneracy).find(|&c| !used[c]).expect("mex exists");
    }
    (colors, degeneracy)
}

/// Recursively executes one derivation node on a host that avoids the
/// node's pattern.
fn exec(node: &BoundDerivation, g: &OrderedGraph) -> Vec<usize> {
    let n = g.n();
    // Hosts no larger than the bound get distinct colors; the reduction
    // proofs all start from this trivial case, and it keeps every later
    // palette computation within machine-word range.
    if BigUint::from(n) <= node.bound {
        return (0..n).collect();
    }
    debug_assert!(
        find_embedding(&node.pattern, g).is_none(),
        "executor reached a host containing {}",
        node.pattern
    );
    match &node.rule {
        Rule::SingleEdge => {
            assert!(
                g.is_edgeless(),
                "single-edge leaf executed on a host with edges; it cannot be an avoider"
            );
            vec![0; n]
        }
        Rule::GeneralizedStar { .. } => exec_star(node, g),
        Rule::TwoNesting
        | Rule::TwoCrossing
        | Rule::Nesting { .. }
        | Rule::Crossing { .. }
        | Rule::MonoAltNonCrossingTree
        | Rule::TupleMatching { .. }
        | Rule::TupleMatchingCompletion { .. } => degeneracy_leaf(node, g),
        Rule::InnerCutSplit { .. } => exec_inner_cut(node, g),
        Rule::IsolatedVertex { v } => exec_isolated_vertex(node, g, *v),
        Rule::IsolatedEdge => exec_isolated_edge(node, g),
        Rule::ReducibleVertex { v } => exec_reducible(node, g, *v),
        Rule::MatchingConsecutivePair { .. } => exec_matching(node, g),
        Rule::Reverse => {
            let rev = g.reverse();
            let rc = exec(&node.children[0], &rev);
            (1..=n).map(|v| rc[n - v]).collect()
        }
    }
}

/// Colors `g[subset]` by the child derivation, writing colors shifted by
/// `offset` back into `out`. Returns the next free color offset.
fn color_subset(
    g: &OrderedGraph,
    subset: &[usize],
    child: &BoundDerivation,
    out: &mut [usize],
    offset: usize,
) -> usize {
    if subset.is_empty() {
        return offset;
    }
    let sub = g.induced(subset);
    debug_assert!(
        find_embedding(&child.pattern, &sub).is_none(),
        "partition part contains the child pattern {}",
        child.pattern
    );
    let sub_colors = exec(child, &sub);
    let mut max_c = 0;
    for (i, &v) in subset.iter().enumerate() {
        out[v - 1] = offset + sub_colors[i];
        max_c = max_c.max(sub_colors[i]);
    }
    offset + max_c + 1
}

fn small(b: &BigUint) -> usize {
    usize::try_from(b).expect("a bound smaller than the host size fits in usize")
}

/// Host vertices have at most k-2 neighbors on the center's far side
/// (more would embed the star), so a directional greedy pass needs at
/// most k-1 colors.
fn exec_star(node: &BoundDerivation, g: &OrderedGraph) -> Vec<usize> {
    let Rule::GeneralizedStar { center } = node.rule else { unreachable!() };
    let k = node.pattern.n();
    let n = g.n();
    let adj = g.adjacency();
    let mut colors = vec![usize::MAX; n];
    let order: Vec<usize> =
        if center == 1 { (1..=n).rev().collect() } else { (1..=n).collect() };
    for v in order {
        let mut used = vec![false; k - 1];
        for &u in &adj[v] {
            let c = colors[u - 1];
            if c != usize::MAX {
                used[c] = true;
            }
        }
        colors[v - 1] = (0..k - 1).find(|&c| !used[c]).unwrap_or_else(|| {
            panic!(
                "star rule for {} ran out of {} colors at host vertex {v}: the vertex has \
                 {} one-sided neighbors, which embeds the pattern, so the host is not an \
                 avoider or the embedding search is broken",
                node.pattern,
                k - 1,
                adj[v].len()
            )
        });
    }
    colors
}

/// Greedy coloring in degeneracy order, asserting the bound the leaf rule
/// promises. A failure here on a verified avoider means the rule's bound
/// does not hold and must be investigated, not masked.
fn degeneracy_leaf(node: &BoundDerivation, g: &OrderedGraph) -> Vec<usize> {
    let (colors, degeneracy) = degeneracy_coloring(g);
    let used = colors.iter().max().map_or(0, |m| m + 1);
    assert!(
        BigUint::from(used) <= node.bound,
        "leaf rule `{}` for {} colored a {}-vertex verified avoider with {used} colors \
         (degeneracy {degeneracy}), exceeding the certified bound {}",
        node.rule,
        node.pattern,
        g.n(),
        node.bound
    );
    colors
}

/// Vertices that are rightmost in a copy of the left part form a host
/// avoiding the right part, and the remaining vertices avoid the left
/// part; the two pieces get disjoint palettes.
fn exec_inner_cut(node: &BoundDerivation, g: &OrderedGraph) -> Vec<usize> {
    let n = g.n();
    let left = &node.children[0];
    let mut rightmost = vec![false; n + 1];
    for emb in find_all_embeddings(&left.pattern, g) {
        rightmost[*emb.image().last().expect("patterns are nonempty")] = true;
    }
    let v1: Vec<usize> = (1..=n).filter(|&v| rightmost[v]).collect();
    let rest: Vec<usize> = (1..=n).filter(|&v| !rightmost[v]).collect();
    let mut colors = vec![0; n];
    let next = color_subset(g, &rest, left, &mut colors, 0);
    color_subset(g, &v1, &node.children[1], &mut colors, next);
    colors
}

/// Inner isolated vertex: odd and even host positions each avoid the
/// child (a copy would re-insert the isolated vertex between two images).
/// Extreme isolated vertex: the host minus its same-side extreme vertex
/// avoids the child; that vertex gets a fresh color.
fn exec_isolated_vertex(node: &BoundDerivation, g: &OrderedGraph, v: usize) -> Vec<usize> {
    let n = g.n();
    let k = node.pattern.n();
    let child = &node.children[0];
    let mut colors = vec![0; n];
    if v == 1 || v == k {
        let strip = if v == 1 { 1 } else { n };
        let rest: Vec<usize> = (1..=n).filter(|&x| x != strip).collect();
        let fresh = color_subset(g, &rest, child, &mut colors, 0);
        colors[strip - 1] = fresh;
    } else {
        let odds: Vec<usize> = (1..=n).step_by(2).collect();
        let evens: Vec<usize> = (2..=n).step_by(2).collect();
        let next = color_subset(g, &odds, child, &mut colors, 0);
        color_subset(g, &evens, child, &mut colors, next);
    }
    colors
}

/// Greedy maximal intervals each avoid the child pattern; interval
/// palettes of size b from a universe of 2b+1 are chosen so consecutive
/// palettes are disjoint and each interval's first vertex takes the one
/// color its two preceding palettes miss. Edges never reach past that
/// first vertex two intervals ahead, so the coloring is proper.
fn exec_isolated_edge(node: &BoundDerivation, g: &OrderedGraph) -> Vec<usize> {
    let n = g.n();
    let child = &node.children[0];
    let inner = &child.pattern;
    if find_embedding(inner, g).is_none() {
        return exec(child, g);
    }
    let b = small(&child.bound);
    let universe = 2 * b + 1;

    let mut intervals: Vec<(usize, usize)> = Vec::new();
    let mut start = 1;
    while start <= n {
        let mut end = start;
        while end + 1 <= n && find_embedding(inner, &g.induced_interval(start, end + 1)).is_none()
        {
            end += 1;
        }
        intervals.push((start, end));
        start = end + 1;
    }
    let p = intervals.len();
    assert!(p >= 2, "a host containing the inner pattern splits into at least two intervals");

    // interval_of[v] = index of the interval containing v
    let mut interval_of = vec![0usize; n + 1];
    for (i, &(lo, hi)) in intervals.iter().enumerate() {
        for v in lo..=hi {
            interval_of[v] = i;
        }
    }
    for &(a, c) in g.edges() {
        let (ia, ic) = (interval_of[a], interval_of[c]);
        assert!(
            ic <= ia + 1 || (ic == ia + 2 && c == intervals[ic].0),
            "edge {a}-{c} jumps from interval {ia} past the head of interval {}: together \
             with the copy inside the skipped interval it embeds {}, so the host is not an \
             avoider or the embedding search is broken",
            ia + 2,
            node.pattern
        );
    }

    let mut phis: Vec<Vec<usize>> = Vec::with_capacity(p);
    let mut xs: Vec<Option<usize>> = vec![None; p];
    for i in 0..p {
        if i == 0 {
            phis.push((0..b).collect());
        } else if i == 1 {
            phis.push((b..2 * b).collect());
        } else {
            let mut excluded = vec![false; universe];
            for &c in phis[i - 1].iter().chain(phis[i - 2].iter()) {
                excluded[c] = true;
            }
            let x = (0..universe).find(|&c| !excluded[c]).expect("one color is left over");
            debug_assert_eq!((0..universe).filter(|&c| !excluded[c]).count(), 1);
            let mut in_prev = vec![false; universe];
            for &c in &phis[i - 1] {
                in_prev[c] = true;
            }
            let mut phi = vec![x];
            for c in 0..universe {
                if phi.len() == b {
                    break;
                }
                if !in_prev[c] && c != x {
                    phi.push(c);
                }
            }
            phi.sort_unstable();
            xs[i] = Some(x);
            phis.push(phi);
        }
    }

    let mut colors = vec![0; n];
    for (i, &(lo, hi)) in intervals.iter().enumerate() {
        let sub = g.induced_interval(lo, hi);
        debug_assert!(find_embedding(inner, &sub).is_none());
        let sub_colors = exec(child, &sub);
        let mut target = phis[i].clone();
        if let Some(x) = xs[i] {
            let first = sub_colors[0];
            let xpos = target.iter().position(|&t| t == x).expect("x_i lies in phi_i");
            target.swap(first, xpos);
        }
        for (j, v) in (lo..=hi).enumerate() {
            colors[v - 1] = target[sub_colors[j]];
        }
    }
    colors
}

/// Removing each vertex's longest edge toward the deleted leaf's side
/// leaves a host avoiding the child pattern, and the removed edges form a
/// forest; the product of the two colorings stays within 2b.
fn exec_reducible(node: &BoundDerivation, g: &OrderedGraph, v: usize) -> Vec<usize> {
    let n = g.n();
    let child = &node.children[0];
    let leftmost = v == 1;
    // longest[w] = the chosen partner of w (strictly on the leaf's side)
    let mut longest: Vec<Option<usize>> = vec![None; n + 1];
    for w in 1..=n {
        let partner = if leftmost {
            g.neighbors(w).into_iter().filter(|&u| u < w).min()
        } else {
            g.neighbors(w).into_iter().filter(|&u| u > w).max()
        };
        longest[w] = partner;
    }
    let in_e = |a: usize, c: usize| {
        if leftmost {
            longest[c] == Some(a)
        } else {
            longest[a] == Some(c)
        }
    };
    let remaining: Vec<(usize, usize)> =
        g.edges().iter().copied().filter(|&(a, c)| !in_e(a, c)).collect();
    let stripped = OrderedGraph::new(n, remaining).expect("edge subset stays valid");
    debug_assert!(
        find_embedding(&child.pattern, &stripped).is_none(),
        "host minus its longest one-sided edges contains {}",
        child.pattern
    );
    let base = exec(child, &stripped);

    // 2-coloring of the removed forest: every vertex hangs off at most
    // one earlier-processed partner.
    let mut parity = vec![0usize; n + 1];
    if leftmost {
        for w in 1..=n {
            if let Some(u) = longest[w] {
                parity[w] = 1 - parity[u];
            }
        }
    } else {
        for w in (1..=n).rev() {
            if let Some(u) = longest[w] {
                parity[w] = 1 - parity[u];
            }
        }
    }
    (1..=n).map(|w| base[w - 1] * 2 + parity[w]).collect()
}

/// Contracts consecutive non-adjacent host vertices until every
/// consecutive pair is adjacent, colors the contraction (distinct colors
/// if small, otherwise position classes mod 3, each avoiding the child),
/// then lifts the coloring back through the contraction map.
fn exec_matching(node: &BoundDerivation, g: &OrderedGraph) -> Vec<usize> {
    let n = g.n();
    let child = &node.children[0];
    // classes are intervals of original vertices, kept in order
    let mut classes: Vec<(usize, usize)> = (1..=n).map(|v| (v, v)).collect();
    let class_edges = |classes: &[(usize, usize)]| -> Vec<(usize, usize)> {
        let mut of = vec![0usize; n + 1];
        for (i, &(lo, hi)) in classes.iter().enumerate() {
            for v in lo..=hi {
                of[v] = i + 1;
            }
        }
        let mut es: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter_map(|&(a, c)| {
                let (x, y) = (of[a], of[c]);
                if x == y {
                    None
                } else {
                    Some((x.min(y), x.max(y)))
                }
            })
            .collect();
        es.sort_unstable();
        es.dedup();
        es
    };
    loop {
        let es = class_edges(&classes);
        let adjacent = |i: usize, j: usize| es.binary_search(&(i + 1, j + 1)).is_ok();
        match (0..classes.len() - 1).find(|&i| !adjacent(i, i + 1)) {
            Some(i) => {
                let merged = (classes[i].0, classes[i + 1].1);
                classes[i] = merged;
                classes.remove(i + 1);
            }
            None => break,
        }
    }
    let m = classes.len();
    let contracted =
        OrderedGraph::new(m, class_edges(&classes)).expect("contraction keeps edges valid");
    debug_assert!(
        find_embedding(&node.pattern, &contracted).is_none(),
        "contraction created a copy of {}",
        node.pattern
    );
    let star_colors = if BigUint::from(m) <= node.bound {
        (0..m).collect()
    } else {
        // every consecutive pair is adjacent now, so vertices of one
        // residue class are at least 3 apart with an adjacent pair
        // between any two of them
        let mut sc = vec![0; m];
        let mut offset = 0;
        for r in 0..3 {
            let part: Vec<usize> = (1..=m).filter(|j| j % 3 == r).collect();
            offset = color_subset(&contracted, &part, child, &mut sc, offset);
        }
        sc
    };
    let mut colors = vec![0; n];
    for (i, &(lo, hi)) in classes.iter().enumerate() {
        for v in lo..=hi {
            colors[v - 1] = star_colors[i];
        }
    }
    colors
}
