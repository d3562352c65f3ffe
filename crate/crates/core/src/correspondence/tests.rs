use std::collections::HashSet;

use super::*;
use crate::permutation::Permutation;
use crate::pipedream::{all_pipe_dreams, simple_closure};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn cid(row: u32, ordinal: u32) -> CrossingId {
    CrossingId { row, ordinal }
}

fn diagonal(id: CrossingId) -> u32 {
    id.row + id.ordinal - 1
}

fn cell_set(d: &PipeDream) -> Vec<Cell> {
    d.cells()
}

#[test]
fn covering_fixtures() {
    assert_eq!(
        covering_relation(&p("41532")),
        vec![(cid(1, 2), cid(3, 2)), (cid(3, 1), cid(4, 1))]
    );
    assert_eq!(covering_relation(&p("4132")), vec![(cid(1, 2), cid(3, 1))]);
    assert!(covering_relation(&Permutation::identity(5)).is_empty());
    assert_eq!(
        covering_relation(&p("4321")),
        vec![(cid(1, 1), cid(2, 2)), (cid(2, 1), cid(3, 1))]
    );
}

#[test]
fn covering_matches_right_children() {
    for n in 1..=7 {
        for w in Permutation::all(n) {
            let mut cover = covering_relation(&w);
            let mut right = Correspondence::new(&w).right_child_pairs();
            cover.sort_unstable();
            right.sort_unstable();
            assert_eq!(cover, right, "{w}");
        }
    }
}

#[test]
fn correspondence_pairs_rows_with_branches() {
    let c = Correspondence::new(&p("41532"));
    for (crossing, vertex) in c.pairs() {
        let v = c.forest().vertex(vertex);
        assert_eq!((crossing.row, crossing.ordinal), (v.rho, v.branch_ordinal));
        assert_eq!(c.vertex_of(crossing), Some(vertex));
        assert_eq!(c.crossing_of(vertex), crossing);
    }
    assert_eq!(c.pairs().len(), 6);
}

/// For crossings `a` strictly above `b` in the bottom dream, a diagonal of `a`
/// at least one less than that of `b` puts `b`'s vertex under `a`'s.
#[test]
fn subtree_diagonal_bound() {
    let mut failures = Vec::new();
    for n in 1..=6 {
        for w in Permutation::all(n) {
            let c = Correspondence::new(&w);
            let ids: Vec<CrossingId> = c.bottom().crossings().iter().map(|x| x.id).collect();
            for &a in &ids {
                for &b in &ids {
                    if a.row < b.row && diagonal(a) + 1 >= diagonal(b) {
                        let (va, vb) = (c.vertex_of(a).unwrap(), c.vertex_of(b).unwrap());
                        if !c.forest().in_subtree(vb, va) {
                            failures.push((w.to_string(), a, b));
                        }
                    }
                }
            }
        }
    }
    assert!(
        failures.is_empty(),
        "{} failures, first {:?}",
        failures.len(),
        failures.first()
    );
}

#[test]
fn psi_examples() {
    let w = p("4132");
    let f = ForestLabeling::new(vec![1, 1, 1, 2]);
    assert_eq!(psi(&w, &f).unwrap().cells(), vec![(1, 1), (1, 2), (1, 3), (2, 2)]);

    let forest = IndexedForest::from_code(&w.lehmer_code());
    let image: Vec<Vec<Cell>> = forest
        .valid_labelings()
        .iter()
        .map(|f| psi(&w, f).unwrap().cells())
        .collect();
    let mut all: Vec<Vec<Cell>> = all_pipe_dreams(&w).iter().map(cell_set).collect();
    all.sort();
    let mut sorted = image.clone();
    sorted.sort();
    assert_eq!(sorted, all);

    for s in ["41532", "24513", "146235", "1"] {
        let w = p(s);
        let forest = IndexedForest::from_code(&w.lehmer_code());
        let bottom = psi(&w, &ForestLabeling::rho_labeling(&forest)).unwrap();
        assert_eq!(bottom.cells(), bottom_pipe_dream(&w).cells());
    }
}

#[test]
fn psi_rejects_invalid_labelings() {
    let w = p("4132");
    assert!(psi(&w, &ForestLabeling::new(vec![1, 1, 1, 1])).is_err());
    assert!(psi(&w, &ForestLabeling::new(vec![1, 1])).is_err());
}

#[test]
fn psi_properties() {
    let mut surjectivity_vs_patterns = Vec::new();
    for n in 1..=6 {
        for w in Permutation::all(n) {
            let forest = IndexedForest::from_code(&w.lehmer_code());
            let simple: HashSet<Vec<Cell>> = simple_closure(&w).iter().map(cell_set).collect();
            let all: HashSet<Vec<Cell>> = all_pipe_dreams(&w).iter().map(cell_set).collect();
            let mut image = HashSet::new();
            let labelings = forest.valid_labelings();
            for f in &labelings {
                let d = psi(&w, f).unwrap();
                assert_eq!(d.weight(), f.monomial(), "{w}");
                assert!(simple.contains(&d.cells()), "{w}");
                image.insert(d.cells());
            }
            assert_eq!(image.len(), labelings.len(), "not injective for {w}");
            let surjective = image == all;
            assert_eq!(surjective, is_forest_by_expansion(&w), "{w}");
            if surjective != w.avoids_forbidden() {
                surjectivity_vs_patterns.push(w.to_string());
            }
        }
    }
    // the pattern list misses exactly one permutation of size 6
    assert_eq!(surjectivity_vs_patterns, vec!["321465"]);
}

#[test]
fn slide_order_independence() {
    let mut bottom_up_stuck = 0;
    for n in 1..=5 {
        for w in Permutation::all(n) {
            let forest = IndexedForest::from_code(&w.lehmer_code());
            for f in forest.valid_labelings() {
                let reference = psi(&w, &f).unwrap();
                for order in [SlideOrder::GreedyFirst, SlideOrder::GreedyLast] {
                    let other = psi_with(&w, &f, order).unwrap().expect("greedy sliding finishes");
                    assert_eq!(other.cells(), reference.cells(), "{w} {order:?}");
                }
                match psi_with(&w, &f, SlideOrder::BottomUpLeftToRight).unwrap() {
                    Some(d) => assert_eq!(d.cells(), reference.cells()),
                    None => bottom_up_stuck += 1,
                }
            }
        }
    }
    assert!(bottom_up_stuck > 0);
}

#[test]
fn bad_pair_fixtures() {
    let expect = |s: &str, parent: CrossingId, child: CrossingId| {
        let w = p(s);
        let b = find_bad_pair(&w).unwrap_or_else(|| panic!("no bad pair for {s}"));
        assert_eq!((b.parent, b.child), (parent, child), "{s}");
        let d = b.replay(&w).expect("witness replays");
        assert!(d.crossing(b.child).unwrap().row <= d.crossing(b.parent).unwrap().row);
    };
    expect("2413", cid(1, 1), cid(2, 2));
    expect("2431", cid(1, 1), cid(2, 2));
    expect("14523", cid(2, 1), cid(3, 2));
    expect("32154", cid(1, 2), cid(4, 1));
    expect("341265", cid(1, 2), cid(5, 1));
    expect("24513", cid(1, 1), cid(2, 2));
    expect("146235", cid(2, 1), cid(3, 3));

    assert_eq!(find_bad_pair(&p("24513")).unwrap().witness.len(), 1);
    let pairs: Vec<_> = all_bad_pairs(&p("24513"), Violation::RowAtMost)
        .iter()
        .map(|b| (b.parent, b.child))
        .collect();
    assert_eq!(pairs, vec![(cid(1, 1), cid(2, 2)), (cid(2, 1), cid(3, 2))]);
    assert_eq!(find_bad_pair(&p("146235")).unwrap().witness, vec![cid(3, 3)]);

    assert!(find_bad_pair(&p("4132")).is_none());
    assert!(find_bad_pair(&p("321465")).is_none());
    assert!(find_bad_pair(&Permutation::identity(4)).is_none());
}

#[test]
fn bad_pair_properties() {
    for n in 1..=6 {
        for w in Permutation::all(n) {
            let found = all_bad_pairs(&w, Violation::RowAtMost);
            for b in &found {
                assert!(diagonal(b.child) > diagonal(b.parent) + 1, "{w} {b:?}");
                assert!(covering_relation(&w).contains(&(b.parent, b.child)));
                assert!(b.replay(&w).is_some());
            }
            let same_row = find_bad_pair_with(&w, Violation::SameRow);
            assert_eq!(found.is_empty(), same_row.is_none(), "{w}");
            if w.find_pattern(&[1, 4, 3, 2]).is_none() {
                assert_eq!(found.is_empty(), is_forest_by_expansion(&w), "{w}");
            }
        }
    }
}

#[test]
fn forest_tests_examples() {
    assert!(is_forest_by_pattern(&p("4132")));
    assert!(!is_forest_by_pattern(&p("341265")));
    assert!(is_forest_by_pattern(&Permutation::identity(3)));
    assert!(is_forest_by_expansion(&p("4132")));
    assert!(!is_forest_by_expansion(&p("1432")));
    assert!(is_forest_by_expansion(&Permutation::identity(3)));
}

#[test]
fn verify_small_sizes() {
    let config = VerifyConfig::default();
    let one = verify_theorem(1, &config).unwrap();
    assert_eq!((one.total, one.agreements), (1, 1));

    let four = verify_theorem(4, &config).unwrap();
    assert_eq!(four.total, 24);
    assert!(four.is_clean());
    let failing: Vec<Permutation> = Permutation::all(4).filter(|w| !is_forest_by_expansion(w)).collect();
    let expected: Vec<Permutation> = Permutation::all(4)
        .filter(|w| ["1432", "2413", "2431"].iter().any(|q| w.contains_pattern(&p(q))))
        .collect();
    assert_eq!(failing, expected);
    assert_eq!(four.pattern_positive, 24 - expected.len());

    let five = verify_theorem(5, &config).unwrap();
    assert!(five.is_clean());
    assert!(five.bad_pair_mismatches.is_empty());
}

#[test]
fn verify_size_six_finds_a_counterexample() {
    let report = verify_theorem(6, &VerifyConfig::default()).unwrap();
    assert_eq!(report.total, 720);
    let perms: Vec<&str> = report.disagreements.iter().map(|d| d.perm.as_str()).collect();
    assert_eq!(perms, vec!["321465"]);
    let d = &report.disagreements[0];
    assert!(!d.by_pattern && d.by_expansion);
    assert_eq!(d.pattern.as_deref(), Some("32154"));
    assert!(report.bad_pair_mismatches.is_empty());
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let one = VerifyConfig {
        jobs: Some(1),
        ..VerifyConfig::default()
    };
    let many = VerifyConfig {
        jobs: Some(4),
        ..VerifyConfig::default()
    };
    let mut a = verify_theorem(5, &one).unwrap();
    let mut b = verify_theorem(5, &many).unwrap();
    a.elapsed_ms = 0;
    b.elapsed_ms = 0;
    assert_eq!(a, b);
}

#[test]
fn verify_rejects_sizes_out_of_range() {
    let config = VerifyConfig {
        max_n: 3,
        ..VerifyConfig::default()
    };
    assert!(verify_theorem(0, &config).is_err());
    assert!(verify_theorem(4, &config).is_err());
}
