//! Cross-validation of the classifier against brute force and against
//! itself under reversal, over every ordered tree on up to 6 vertices.

use num_bigint::BigUint;

use ordchrom::bounds::{classify, verify_derivation, Classification};
use ordchrom::embed::find_embedding;
use ordchrom::oracle::{all_ordered_trees, max_chi_avoiders};
use ordchrom::OrderedGraph;

#[test]
fn classification_is_reversal_invariant_on_small_trees() {
    for n in 2..=6 {
        for t in all_ordered_trees(n) {
            let a = classify(&t).unwrap();
            let b = classify(&t.reverse()).unwrap();
            assert_eq!(a.verdict(), b.verdict(), "{t}");
            if let (
                Classification::Finite { upper: ua, lower: la, .. },
                Classification::Finite { upper: ub, lower: lb, .. },
            ) = (&a, &b)
            {
                assert_eq!((la, ua), (lb, ub), "{t}: bounds differ under reversal");
            }
        }
    }
}

#[test]
fn certified_bounds_dominate_brute_force_on_small_trees() {
    let mut finite = 0u64;
    for n in 2..=5 {
        for t in all_ordered_trees(n) {
            let Classification::Finite { lower, upper, derivation } = classify(&t).unwrap()
            else {
                continue;
            };
            verify_derivation(&t, &derivation).unwrap();
            let report = max_chi_avoiders(&t, 5).unwrap();
            assert!(report.exhaustive);
            assert!(
                find_embedding(&t, &report.witness).is_none(),
                "witness for {t} is not an avoider"
            );
            assert!(
                BigUint::from(report.value) <= upper,
                "{t}: brute force reaches {} past the certified bound {upper}",
                report.value
            );
            // a complete graph on lower vertices avoids any tree with more
            if lower <= 5 {
                assert!(report.value >= lower, "{t}: {} < floor {lower}", report.value);
            }
            finite += 1;
        }
    }
    // 1 + 3 + 10 + 33 finite trees on 2, 3, 4, 5 vertices
    assert_eq!(finite, 47);
}

#[test]
fn derivations_survive_a_serialization_roundtrip() {
    for t in all_ordered_trees(4) {
        let Classification::Finite { derivation, .. } = classify(&t).unwrap() else {
            continue;
        };
        let json = serde_json::to_value(&derivation).unwrap();
        let nodes = json["nodes"].as_array().unwrap();
        assert!(!nodes.is_empty());
        for node in nodes {
            let pattern = OrderedGraph::parse(node["pattern"].as_str().unwrap()).unwrap();
            assert!(pattern.n() >= 2);
            assert!(node["rule"]["rule"].is_string());
            assert!(node["bound"].as_str().unwrap().parse::<u64>().is_ok());
            for child in node["children"].as_array().unwrap() {
                let i = child.as_u64().unwrap() as usize;
                assert!(i < nodes.len());
            }
        }
    }
}
