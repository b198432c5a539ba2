use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;
use simrep::pqtree::PqTree;

fn consecutive(order: &[usize], s: &[usize]) -> bool {
    let pos: Vec<usize> = order
        .iter()
        .enumerate()
        .filter(|(_, e)| s.contains(e))
        .map(|(i, _)| i)
        .collect();
    pos.is_empty() || pos[pos.len() - 1] - pos[0] + 1 == pos.len()
}

fn filtered(n: usize, sets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    (0..n)
        .permutations(n)
        .filter(|p| sets.iter().all(|s| consecutive(p, s)))
        .collect()
}

fn build(n: usize, sets: &[Vec<usize>]) -> PqTree {
    let mut t = PqTree::universal(n).unwrap();
    for s in sets {
        t = t.reduce(s);
    }
    t
}

fn systems() -> impl Strategy<Value = (usize, Vec<Vec<usize>>)> {
    (1usize..=7).prop_flat_map(|n| {
        let set = proptest::collection::btree_set(0..n, 0..=n)
            .prop_map(|s| s.into_iter().collect::<Vec<_>>());
        (Just(n), proptest::collection::vec(set, 0..5))
    })
}

#[test]
fn universal_small_cases() {
    assert_eq!(PqTree::universal(1).unwrap().frontiers().unwrap().len(), 1);
    assert_eq!(PqTree::universal(3).unwrap().frontiers().unwrap().len(), 6);
    assert!(PqTree::universal(0).is_err());
}

#[test]
fn reduce_pair_on_four() {
    let t = PqTree::universal(4).unwrap().reduce(&[0, 1]);
    assert_eq!(t.frontiers().unwrap(), filtered(4, &[vec![0, 1]]));
    assert_eq!(t.frontiers().unwrap().len(), 12);
}

#[test]
fn reduce_q_ends_is_null() {
    let (t, names) = PqTree::parse("Q(a, b, c)").unwrap();
    assert_eq!(names, ["a", "b", "c"]);
    assert!(t.reduce(&[0, 2]).is_null());
    assert_eq!(t.frontiers().unwrap().len(), 2);
}

#[test]
fn intersect_disagreeing_q_nodes_is_null() {
    let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let a = PqTree::parse_with("Q(a,b,c)", &names).unwrap();
    let b = PqTree::parse_with("Q(a,c,b)", &names).unwrap();
    let (t, rec) = PqTree::intersect(&[a, b]).unwrap();
    assert!(t.is_null());
    assert!(t.frontiers().unwrap().is_empty());
    assert!(rec.get(0, 0).is_none());
}

#[test]
fn intersect_two_pairs() {
    let u = PqTree::universal(4).unwrap();
    let (t, _) = PqTree::intersect(&[u.reduce(&[0, 1]), u.reduce(&[2, 3])]).unwrap();
    assert_eq!(t.frontiers().unwrap().len(), 8);
}

#[test]
fn intersect_with_universal_is_identity() {
    let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
    let a = PqTree::parse_with("P(d, Q(a,b,c))", &names).unwrap();
    let (t, rec) = PqTree::intersect(&[a.clone(), PqTree::universal(4).unwrap()]).unwrap();
    assert_eq!(t, a);
    for x in a.orientable_nodes() {
        assert_eq!(rec.get(0, x), Some((x, true)));
    }
}

#[test]
fn text_round_trip() {
    let (t, names) = PqTree::parse("P(x, Q(a, b, c), y)").unwrap();
    assert_eq!(t.to_text(&names), "P(x, Q(a, b, c), y)");
    assert_eq!(PqTree::parse_with("NULL", &names).unwrap().to_text(&names), "NULL");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reduce_matches_filter((n, sets) in systems()) {
        prop_assert_eq!(build(n, &sets).frontiers().unwrap(), filtered(n, &sets));
    }

    #[test]
    fn intersect_matches_filter((n, a) in systems(), b in proptest::collection::vec(proptest::collection::btree_set(0usize..7, 0..=7), 0..4), c in proptest::collection::vec(proptest::collection::btree_set(0usize..7, 0..=7), 0..4)) {
        let clip = |sets: &[BTreeSet<usize>]| -> Vec<Vec<usize>> {
            sets.iter().map(|s| s.iter().copied().filter(|&e| e < n).collect()).collect()
        };
        let (b, c) = (clip(&b), clip(&c));
        let trees = [build(n, &a), build(n, &b), build(n, &c)];
        let (t, rec) = PqTree::intersect(&trees).unwrap();
        let all: Vec<Vec<usize>> = a.iter().chain(&b).chain(&c).cloned().collect();
        let expect = filtered(n, &all);
        prop_assert_eq!(t.frontiers().unwrap(), expect.clone());
        if t.is_null() {
            return Ok(());
        }
        for (i, input) in trees.iter().enumerate() {
            for q in input.orientable_nodes() {
                let (y, fw) = rec.get(i, q).expect("every orientable node is contained");
                prop_assert!(t.is_orientable(y));
                let first = input.leaves(input.children(q)[0]);
                let last = input.leaves(*input.children(q).last().unwrap());
                for (f, orient) in t.arrangements(10_000).unwrap() {
                    let y_fw = orient.iter().find(|(z, _)| *z == y).unwrap().1;
                    let pos = |e: usize| f.iter().position(|&x| x == e).unwrap();
                    let in_order = pos(first[0]) < pos(last[0]);
                    prop_assert_eq!(in_order, y_fw == fw);
                }
            }
        }
    }
}
