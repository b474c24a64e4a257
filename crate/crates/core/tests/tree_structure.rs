//! Exhaustive structural checks over every ordered tree on up to 6
//! vertices: the segment-alternation equivalence, its two supporting
//! deletion and bipartiteness properties, path confinement under
//! tangled-freeness, and uniqueness of alternation splits.

use ordchrom::alternation::{check_theorem2, is_monotonically_alternating};
use ordchrom::oracle::all_ordered_trees;
use ordchrom::patterns::{find_bonnet, find_tangled_path, DEFAULT_PATH_BUDGET};
use ordchrom::OrderedGraph;

fn small_trees() -> impl Iterator<Item = OrderedGraph> {
    (2..=6).flat_map(all_ordered_trees)
}

fn pattern_free(t: &OrderedGraph) -> bool {
    find_bonnet(t).is_none() && find_tangled_path(t, DEFAULT_PATH_BUDGET).unwrap().is_none()
}

fn single_segment(t: &OrderedGraph) -> bool {
    t.inner_cut_vertices().is_empty()
}

#[test]
fn segment_alternation_coincides_with_pattern_freeness() {
    let mut checked = 0u64;
    for t in small_trees() {
        let report = check_theorem2(&t).unwrap();
        assert!(
            report.agree,
            "{t}: pattern_free = {}, all segments alternating = {}",
            report.pattern_free, report.all_segments_alternating
        );
        checked += 1;
    }
    // 1, 3, 16, 125, 1296 trees on 2..=6 vertices
    assert_eq!(checked, 1441);
}

#[test]
fn pattern_free_single_segment_trees_split_into_two_intervals() {
    let mut checked = 0u64;
    for t in small_trees() {
        if !single_segment(&t) || !pattern_free(&t) {
            continue;
        }
        let (k, _) = t.interval_chromatic_number();
        assert!(k <= 2, "{t} needs {k} independent intervals");
        checked += 1;
    }
    // census of pattern-free single-segment trees on 2..=6 vertices
    assert_eq!(checked, 64);
}

#[test]
fn leaf_deletion_preserves_the_pattern_free_single_segment_shape() {
    for t in small_trees() {
        if t.n() < 3 || !single_segment(&t) || !pattern_free(&t) {
            continue;
        }
        for v in 1..=t.n() {
            if t.degree(v) != 1 {
                continue;
            }
            let reduced = t.delete_vertex(v);
            assert!(
                single_segment(&reduced) && pattern_free(&reduced),
                "{t} minus leaf {v} = {reduced} lost the shape"
            );
        }
    }
}

/// Path from `from` to `to` in a tree, endpoints included.
fn tree_path(t: &OrderedGraph, from: usize, to: usize) -> Vec<usize> {
    let adj = t.adjacency();
    let mut parent = vec![0usize; t.n() + 1];
    let mut queue = std::collections::VecDeque::from([from]);
    parent[from] = from;
    while let Some(v) = queue.pop_front() {
        for &u in &adj[v] {
            if parent[u] == 0 {
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    let mut path = vec![to];
    let mut v = to;
    while v != from {
        v = parent[v];
        path.push(v);
    }
    path.reverse();
    path
}

#[test]
fn tangled_free_trees_confine_paths_inside_spanning_edges() {
    for t in small_trees() {
        if find_tangled_path(&t, DEFAULT_PATH_BUDGET).unwrap().is_some() {
            continue;
        }
        for &(u, w) in t.edges() {
            for v in (u + 1)..w {
                for &x in &tree_path(&t, u, v) {
                    assert!(
                        u <= x && x <= w,
                        "{t}: path {u}..{v} leaves [{u}, {w}] at {x}"
                    );
                }
            }
        }
    }
}

#[test]
fn connected_trees_admit_at_most_one_alternating_split() {
    for t in small_trees() {
        let r = is_monotonically_alternating(&t).unwrap();
        let positions = t.n() - 1;
        match &r.split {
            Some(_) => assert_eq!(r.failures.len(), positions - 1, "{t}"),
            None => assert_eq!(r.failures.len(), positions, "{t}"),
        }
    }
}
