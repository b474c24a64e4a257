//! Randomized structural properties of the ordered-graph model itself:
//! text round-trips, reversal, segment decomposition, interval partitions,
//! and embedding basics.

use proptest::prelude::*;

use ordchrom::embed::{contains, find_embedding};
use ordchrom::OrderedGraph;

/// Arbitrary ordered graph on 1..=8 vertices via an edge bitmask.
fn ordered_graph() -> impl Strategy<Value = OrderedGraph> {
    (1usize..=8).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> =
            (1..=n).flat_map(|u| ((u + 1)..=n).map(move |v| (u, v))).collect();
        let bits = prop::collection::vec(any::<bool>(), pairs.len());
        bits.prop_map(move |keep| {
            let edges = pairs
                .iter()
                .zip(&keep)
                .filter_map(|(&e, &k)| k.then_some(e));
            OrderedGraph::new(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn text_form_round_trips(g in ordered_graph()) {
        let reparsed = OrderedGraph::parse(&g.to_string()).unwrap();
        prop_assert_eq!(reparsed, g);
    }

    #[test]
    fn reversal_is_an_involution(g in ordered_graph()) {
        let r = g.reverse();
        prop_assert_eq!(r.edges().len(), g.edges().len());
        prop_assert_eq!(r.reverse(), g);
    }

    #[test]
    fn full_interval_is_the_identity(g in ordered_graph()) {
        prop_assert_eq!(g.induced_interval(1, g.n()), g.clone());
        let all: Vec<usize> = (1..=g.n()).collect();
        prop_assert_eq!(g.induced(&all), g);
    }

    #[test]
    fn segments_tile_the_vertex_range(g in ordered_graph()) {
        prop_assume!(g.n() >= 2);
        let d = g.segments().unwrap();
        prop_assert_eq!(d.segments.first().unwrap().lo, 1);
        prop_assert_eq!(d.segments.last().unwrap().hi, g.n());
        for w in d.segments.windows(2) {
            prop_assert_eq!(w[0].hi, w[1].lo);
        }
        prop_assert_eq!(d.inner_cuts.len() + 1, d.segments.len());
        // every edge lands in exactly one segment
        let mut total = 0;
        for s in &d.segments {
            total += s.edges.len();
        }
        prop_assert_eq!(total, g.edges().len());
    }

    #[test]
    fn interval_partition_is_independent_and_tight(g in ordered_graph()) {
        let (k, parts) = g.interval_chromatic_number();
        prop_assert_eq!(k, parts.len());
        let mut next = 1;
        for &(lo, hi) in &parts {
            prop_assert_eq!(lo, next);
            prop_assert!(lo <= hi);
            next = hi + 1;
            for &(u, v) in g.edges() {
                prop_assert!(!(lo <= u && v <= hi), "edge {}-{} inside [{}, {}]", u, v, lo, hi);
            }
        }
        prop_assert_eq!(next, g.n() + 1);
        // tightness: each interval after the first starts because an edge
        // closed there
        for w in parts.windows(2) {
            let v = w[1].0;
            prop_assert!(g.edges().iter().any(|&(a, b)| w[0].0 <= a && b == v));
        }
    }

    #[test]
    fn graphs_embed_in_themselves(g in ordered_graph()) {
        prop_assert!(contains(&g, &g));
        let e = OrderedGraph::parse("OG 2: 1-2").unwrap();
        prop_assert_eq!(contains(&g, &e), !g.is_edgeless());
    }

    #[test]
    fn embeddings_survive_reversal(g in ordered_graph(), h in ordered_graph()) {
        let forward = find_embedding(&h, &g).is_some();
        let mirrored = find_embedding(&h.reverse(), &g.reverse()).is_some();
        prop_assert_eq!(forward, mirrored);
    }
}
