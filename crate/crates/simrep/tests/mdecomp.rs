mod common;

use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;
use simrep::graph::{Graph, Orientation};
use simrep::mdecomp::{represented_orientations, restrict, MdTree, NodeKind, RestrictedMd};
use simrep::oracle::{enum_transitive_orientations, restrict_orientation};
use simrep::orient::default_orientations;

use common::{connected_graphs, connected_graphs_up_to, graph};

fn is_module(g: &Graph, s: &[usize]) -> bool {
    (0..g.n()).filter(|v| !s.contains(v)).all(|x| {
        let adj = s.iter().filter(|&&v| g.has_edge(x, v)).count();
        adj == 0 || adj == s.len()
    })
}

fn has_nontrivial_module(g: &Graph) -> bool {
    let n = g.n();
    (2..n).any(|k| (0..n).combinations(k).any(|s| is_module(g, &s)))
}

fn check_tree(g: &Graph) {
    let t = MdTree::build(g).unwrap();
    assert_eq!(t.leaves(t.root()).len(), g.n());
    for u in t.inner_nodes() {
        let mut l = t.leaves(u).to_vec();
        l.sort_unstable();
        assert!(is_module(g, &l), "node {u} is not a module");
        let q = t.quotient(u).unwrap().to_graph();
        match t.kind(u) {
            NodeKind::Complete => {
                assert_eq!(q.m(), q.n() * (q.n() - 1) / 2);
                assert!(t.children(u).iter().all(|&c| t.kind(c) != NodeKind::Complete));
            }
            NodeKind::Empty => {
                assert_eq!(q.m(), 0);
                assert!(t.children(u).iter().all(|&c| t.kind(c) != NodeKind::Empty));
            }
            NodeKind::Prime => {
                assert!(q.n() >= 4);
                assert!(!has_nontrivial_module(&q));
            }
            NodeKind::Leaf => unreachable!(),
        }
    }
}

#[test]
fn corpus_sizes() {
    let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
}

#[test]
fn p4_is_prime() {
    let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
    let t = MdTree::build(&g).unwrap();
    assert_eq!(t.kind(t.root()), NodeKind::Prime);
    assert_eq!(t.children(t.root()).len(), 4);
}

#[test]
fn k3_and_its_complement() {
    let k3 = graph(3, &[(0, 1), (0, 2), (1, 2)]);
    let t = MdTree::build(&k3).unwrap();
    assert_eq!(t.kind(t.root()), NodeKind::Complete);
    let e3 = graph(3, &[]);
    let t = MdTree::build(&e3).unwrap();
    assert_eq!(t.kind(t.root()), NodeKind::Empty);
}

#[test]
fn single_vertex_tree_is_a_leaf() {
    let g = graph(1, &[]);
    let t = MdTree::build(&g).unwrap();
    assert_eq!(t.len(), 1);
    assert_eq!(t.kind(0), NodeKind::Leaf);
    assert!(t.maximal_mu_set(0).is_err());
}

#[test]
fn trees_are_modular_decompositions() {
    for g in connected_graphs_up_to(6) {
        check_tree(&g);
        check_tree(&g.complement());
    }
}

#[test]
fn represented_set_equals_enumeration() {
    for g in connected_graphs_up_to(6) {
        let t = MdTree::build(&g).unwrap();
        let brute: BTreeSet<Orientation> = enum_transitive_orientations(&g).unwrap().into_iter().collect();
        match default_orientations(&t) {
            Ok(d) => {
                let rep = represented_orientations(&g, &t, &d, 1 << 16).unwrap();
                assert_eq!(rep, brute, "graph {:?}", g.edge_list());
            }
            Err(_) => assert!(brute.is_empty()),
        }
    }
}

#[test]
fn lca_matches_parent_walk() {
    for g in connected_graphs(5) {
        let t = MdTree::build(&g).unwrap();
        for (u, v) in (0..g.n()).tuple_combinations() {
            let mut anc = BTreeSet::new();
            let mut x = Some(t.leaf_of(u));
            while let Some(y) = x {
                anc.insert(y);
                x = t.parent(y);
            }
            let mut y = t.leaf_of(v);
            while !anc.contains(&y) {
                y = t.parent(y).unwrap();
            }
            assert_eq!(t.lca_vertices(u, v), y);
            let c = t.children(y)[t.rep_child(y, u)];
            assert!(t.is_ancestor(c, t.leaf_of(u)));
        }
    }
}

#[test]
fn quotient_edges_match_graph_edges() {
    for g in connected_graphs(5) {
        let t = MdTree::build(&g).unwrap();
        for e in 0..g.m() {
            let r = t.edge_rep(e);
            let (u, v) = g.edge_list()[e];
            assert_eq!(r.node, t.lca_vertices(u, v));
            let q = t.quotient(r.node).unwrap();
            let (a, b) = q.edges()[r.qedge];
            assert!((r.u_child, r.v_child) == (a, b) || (r.u_child, r.v_child) == (b, a));
            assert!(t.is_ancestor(t.children(r.node)[r.u_child], t.leaf_of(u)));
            assert!(t.is_ancestor(t.children(r.node)[r.v_child], t.leaf_of(v)));
        }
    }
}

/// Orientations of `h` represented by a restricted decomposition.
fn restricted_set(h: &Graph, r: &RestrictedMd, t: &MdTree, defaults: &[Option<Vec<bool>>]) -> BTreeSet<Orientation> {
    let inner: Vec<usize> = (0..r.len()).filter(|&u| r.node(u).vertex.is_none()).collect();
    let options: Vec<Vec<Vec<usize>>> = inner
        .iter()
        .map(|&u| {
            let k = r.node(u).children.len();
            match r.label(u) {
                NodeKind::Complete => (0..k).permutations(k).collect(),
                NodeKind::Prime => vec![vec![0], vec![1]],
                _ => vec![vec![]],
            }
        })
        .collect();
    let mut out = BTreeSet::new();
    for combo in options.iter().map(|o| 0..o.len()).multi_cartesian_product() {
        let fw: Vec<bool> = h
            .edges()
            .map(|(a, b)| {
                let u = r.lca_vertices(a, b);
                let i = inner.iter().position(|&x| x == u).unwrap();
                let ca = r.child_toward(u, r.leaf_of(a));
                let cb = r.child_toward(u, r.leaf_of(b));
                let choice = &options[i][combo[i]];
                match r.label(u) {
                    NodeKind::Complete => {
                        choice.iter().position(|&c| c == ca) < choice.iter().position(|&c| c == cb)
                    }
                    NodeKind::Prime => {
                        let arcs = r.default_orientation(u, t, defaults).unwrap();
                        let a_to_b = arcs.contains(&(ca, cb));
                        assert!(a_to_b || arcs.contains(&(cb, ca)));
                        a_to_b == (choice[0] == 0)
                    }
                    _ => unreachable!("edge at an empty node"),
                }
            })
            .collect();
        out.insert(Orientation::from_forward(fw));
    }
    out
}

fn check_restriction(g: &Graph, keep: &[usize]) {
    let t = MdTree::build(g).unwrap();
    let Ok(defaults) = default_orientations(&t) else { return };
    let h = g.induced_subgraph(keep);
    let r = restrict(&t, g, &h).unwrap();
    let all = enum_transitive_orientations(g).unwrap();
    let expected: BTreeSet<Orientation> =
        all.iter().map(|o| restrict_orientation(g, o, &h, keep)).collect();
    assert_eq!(restricted_set(&h, &r, &t, &defaults), expected, "g {:?} keep {:?}", g.edge_list(), keep);
}

#[test]
fn restriction_exhaustive_up_to_five() {
    for g in connected_graphs_up_to(5) {
        for keep in common::subsets_up_to(g.n(), g.n()) {
            if !keep.is_empty() {
                check_restriction(&g, &keep);
            }
        }
    }
}

#[test]
fn restriction_p4_prefix_is_a_prime_root() {
    let g = graph(4, &[(0, 1), (1, 2), (2, 3)]);
    let t = MdTree::build(&g).unwrap();
    let d = default_orientations(&t).unwrap();
    let h = g.induced_subgraph(&[0, 1, 2]);
    let r = restrict(&t, &g, &h).unwrap();
    assert_eq!(r.label(r.root()), NodeKind::Prime);
    assert_eq!(r.node(r.root()).children.len(), 3);
    let arcs = r.default_orientation(r.root(), &t, &d).unwrap();
    let named: BTreeSet<(usize, usize)> = arcs
        .iter()
        .map(|&(i, j)| {
            let v = |c: usize| r.node(r.node(r.root()).children[c]).vertex.unwrap();
            (v(i), v(j))
        })
        .collect();
    assert_eq!(named, BTreeSet::from([(0, 1), (2, 1)]));
}

#[test]
fn restriction_to_everything_keeps_the_shape() {
    for g in connected_graphs(5) {
        let t = MdTree::build(&g).unwrap();
        let all: Vec<usize> = (0..g.n()).collect();
        let r = restrict(&t, &g, &g.induced_subgraph(&all)).unwrap();
        assert_eq!(r.len(), t.len());
        for u in 0..r.len() {
            assert_eq!(r.label(u), t.kind(r.node(u).stem));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn restriction_sampled_six(idx in 0usize..112, mask in 1u32..64) {
        let g = &common::corpus()[31 + idx];
        let keep: Vec<usize> = (0..6).filter(|&v| mask >> v & 1 == 1).collect();
        check_restriction(g, &keep);
    }

    #[test]
    fn random_graphs_decompose(n in 1usize..9, bits in any::<u64>()) {
        let edges: Vec<(usize, usize)> = (0..n)
            .tuple_combinations()
            .enumerate()
            .filter(|(k, _)| bits >> (k % 64) & 1 == 1)
            .map(|(_, e)| e)
            .collect();
        check_tree(&graph(n, &edges));
    }
}
