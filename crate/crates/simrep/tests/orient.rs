mod common;

use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;
use simrep::graph::{is_transitive, Graph, Orientation, PartialOrientation};
use simrep::mdecomp::MdTree;
use simrep::oracle::{enum_transitive_orientations, extensions};
use simrep::orient::{lift_partial, orient_ext, prime_default_orientation, recognize_comparability, Infeasible};

use common::{connected_graphs, corpus, graph};

fn p4() -> Graph {
    graph(4, &[(0, 1), (1, 2), (2, 3)])
}

fn c5() -> Graph {
    graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
}

fn gadget() -> Graph {
    Graph::new(
        &["x", "y", "z", "a", "b"],
        &[("x", "a"), ("x", "y"), ("x", "z"), ("y", "z"), ("z", "b")],
    )
    .unwrap()
}

fn arcs(g: &Graph, o: &Orientation) -> BTreeSet<(String, String)> {
    o.arcs(g).into_iter().map(|(u, v)| (g.id(u).to_string(), g.id(v).to_string())).collect()
}

fn named(pairs: &[(&str, &str)]) -> BTreeSet<(String, String)> {
    pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

#[test]
fn prime_defaults() {
    let o = prime_default_orientation(&p4()).unwrap();
    assert_eq!(arcs(&p4(), &o), named(&[("a", "b"), ("c", "b"), ("c", "d")]));
    assert!(prime_default_orientation(&c5()).is_none());
    let g = gadget();
    let o = prime_default_orientation(&g).unwrap();
    let expect = named(&[("x", "a"), ("x", "y"), ("x", "z"), ("y", "z"), ("b", "z")]);
    let got = arcs(&g, &o);
    let rev: BTreeSet<(String, String)> = expect.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
    assert!(got == expect || got == rev);
}

#[test]
fn prime_graphs_have_exactly_two_orientations() {
    for n in 4..=6 {
        for g in connected_graphs(n) {
            let t = MdTree::build(&g).unwrap();
            if t.children(t.root()).len() != n || t.kind(t.root()) != simrep::mdecomp::NodeKind::Prime {
                continue;
            }
            let all: BTreeSet<Orientation> = enum_transitive_orientations(&g).unwrap().into_iter().collect();
            match prime_default_orientation(&g) {
                Some(d) => {
                    assert_eq!(all, BTreeSet::from([d.reversed(), d]));
                }
                None => assert!(all.is_empty()),
            }
        }
    }
}

#[test]
fn orient_ext_fixtures() {
    let g = p4();
    let w = PartialOrientation::from_ids(&g, &[("a", "b")]).unwrap();
    let o = orient_ext(&g, &w).unwrap();
    assert_eq!(arcs(&g, &o), named(&[("a", "b"), ("c", "b"), ("c", "d")]));
    let w = PartialOrientation::from_ids(&g, &[("a", "b"), ("b", "c")]).unwrap();
    assert!(orient_ext(&g, &w).is_err());
    let k3 = graph(3, &[(0, 1), (1, 2), (0, 2)]);
    let w = PartialOrientation::from_ids(&k3, &[("a", "b"), ("b", "c")]).unwrap();
    let o = orient_ext(&k3, &w).unwrap();
    assert_eq!(arcs(&k3, &o), named(&[("a", "b"), ("b", "c"), ("a", "c")]));
}

#[test]
fn lift_partial_fixtures() {
    let c4 = graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]);
    let t = MdTree::build(&c4).unwrap();
    let w = PartialOrientation::from_ids(&c4, &[("a", "b")]).unwrap();
    let lifted = lift_partial(&c4, &t, &w).unwrap();
    let root = lifted.node(t.root()).unwrap();
    assert_eq!(root.len(), 1);
    let w = PartialOrientation::from_ids(&c4, &[("a", "b"), ("d", "c")]).unwrap();
    assert!(matches!(lift_partial(&c4, &t, &w), Err(Infeasible::Conflict { .. })));
    assert!(lift_partial(&c4, &t, &PartialOrientation::empty()).unwrap().is_empty());
}

#[test]
fn recognition() {
    assert!(!recognize_comparability(&c5()));
    assert!(recognize_comparability(&graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])));
    assert!(recognize_comparability(&p4()));
    for g in corpus() {
        assert_eq!(recognize_comparability(g), !enum_transitive_orientations(g).unwrap().is_empty());
    }
}

fn check_against_oracle(g: &Graph, w: &PartialOrientation) {
    let brute = extensions(g, w).unwrap();
    match orient_ext(g, w) {
        Ok(o) => {
            assert!(is_transitive(g, &o));
            assert!(o.extends(w));
            assert!(!brute.is_empty());
        }
        Err(e) => assert!(brute.is_empty(), "{e} but brute force extends {:?}", w.arcs(g)),
    }
}

#[test]
fn orient_ext_matches_brute_force() {
    for g in corpus().iter().filter(|g| g.n() <= 5) {
        for k in 0..=3.min(g.m()) {
            for es in (0..g.m()).combinations(k) {
                for dirs in 0u32..(1 << k) {
                    let ends = g.edge_list();
                    let arcs: Vec<(usize, usize)> = es
                        .iter()
                        .enumerate()
                        .map(|(i, &e)| if dirs >> i & 1 == 1 { ends[e] } else { (ends[e].1, ends[e].0) })
                        .collect();
                    let w = PartialOrientation::new(g, &arcs).unwrap();
                    check_against_oracle(g, &w);
                    let fw = orient_ext(g, &w).is_ok();
                    assert_eq!(fw, orient_ext(g, &w.reversed()).is_ok());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn orient_ext_sampled_six(idx in 31usize..143, picks in proptest::collection::vec((any::<usize>(), any::<bool>()), 0..=4)) {
        let g = &corpus()[idx];
        let ends = g.edge_list();
        let mut w = PartialOrientation::empty();
        for (e, d) in picks {
            let (u, v) = ends[e % ends.len()];
            let (a, b) = if d { (u, v) } else { (v, u) };
            if w.get(e % ends.len()).is_none() {
                w.insert(g, a, b).unwrap();
            }
        }
        check_against_oracle(g, &w);
    }
}
