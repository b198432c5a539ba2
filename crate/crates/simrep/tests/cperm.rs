mod common;

use proptest::prelude::*;
use simrep::cperm::{
    cdiagram_graph, open_diagram, rep_ext_cperm, sunflower_cperm, switch_chords, CPermDiagram,
    SwitchedGraph,
};
use simrep::graph::{Graph, SunflowerInstance};
use simrep::oracle::{cperm_extends, enum_cperm_diagrams, enum_perm_diagrams};
use simrep::perm::{diagram_graph, PermDiagram};

use common::checks::{rep_ext_cperm_equivalence, sunflower_cperm_instance, switch_semantics};
use common::{corpus, graph, letters, random_sunflower};

fn c5() -> Graph {
    graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)])
}

#[test]
fn crossing_fixtures() {
    let c = CPermDiagram::new(2, vec![0, 1], vec![0, 1], &[]).unwrap();
    assert!(!c.crosses(0, 1));
    let c = CPermDiagram::new(2, vec![0, 1], vec![1, 0], &[]).unwrap();
    assert!(c.crosses(0, 1));
    let c = CPermDiagram::new(2, vec![0, 1], vec![0, 1], &[0]).unwrap();
    assert!(c.crosses(0, 1));
    let c = CPermDiagram::new(2, vec![0, 1], vec![1, 0], &[1]).unwrap();
    assert!(!c.crosses(0, 1));
}

#[test]
fn closing_a_linear_diagram_keeps_the_graph() {
    let d = PermDiagram::full(vec![0, 2, 1, 3], vec![1, 0, 3, 2]).unwrap();
    let c = CPermDiagram::close(&d);
    assert_eq!(cdiagram_graph(&c, &letters(4)).edge_list(), diagram_graph(&d, &letters(4)).edge_list());
}

#[test]
fn rotation_keeps_crossings() {
    let c = CPermDiagram::new(4, vec![0, 1, 2, 3], vec![2, 0, 3, 1], &[1, 3]).unwrap();
    let g = cdiagram_graph(&c, &letters(4));
    for i in 0..4 {
        for j in 0..4 {
            let r = c.rotate(i, j);
            assert!(r.realizes(&g));
            assert!(r.extends(&c) && c.extends(&r));
        }
    }
}

#[test]
fn c5_is_a_circular_permutation_graph() {
    assert!(enum_perm_diagrams(&c5()).unwrap().is_empty());
    let cs = enum_cperm_diagrams(&c5()).unwrap();
    assert!(!cs.is_empty());
    for c in &cs {
        assert!(c.realizes(&c5()));
    }
    let empty = CPermDiagram::new(5, vec![], vec![], &[]).unwrap();
    assert!(rep_ext_cperm(&c5(), &empty).unwrap().unwrap().realizes(&c5()));
}

#[test]
fn switching_fixtures() {
    let g = graph(3, &[(0, 1)]);
    let s = SwitchedGraph::new(&g, &[2]);
    assert!(s.is_switched(2) && !s.is_switched(0));
    assert!(s.has_edge(0, 1) && s.has_edge(0, 2) && s.has_edge(1, 2));
    assert_eq!(s.materialize().m(), 3);
    let c = enum_cperm_diagrams(&g).unwrap().remove(0);
    let t = switch_chords(&c, &[2]);
    assert!(t.realizes(&s.materialize()));
}

#[test]
fn switch_semantics_exhaustive() {
    assert_eq!(switch_semantics(4), 24 * 24 * 16);
}

#[test]
fn opening_preserves_the_graph() {
    for n in 1..=4 {
        let names = letters(n);
        let all = common::connected_graphs(n);
        for g in &all {
            for c in enum_cperm_diagrams(g).unwrap() {
                let g = cdiagram_graph(&c, &names);
                match open_diagram(&c) {
                    Some(d) => assert_eq!(diagram_graph(&d, &names).edge_list(), g.edge_list()),
                    None => {
                        for i in 0..n {
                            for j in 0..n {
                                let w = c.rotate(i, j).wrapped().len();
                                assert!(w != 0 && w != n);
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn rep_ext_fixtures() {
    let g = c5();
    let c = enum_cperm_diagrams(&g).unwrap().remove(0);
    let partial = c.restrict(|e| e < 3);
    let full = rep_ext_cperm(&g, &partial).unwrap().unwrap();
    assert!(full.realizes(&g) && cperm_extends(&full, &partial));
    let k2 = graph(2, &[(0, 1)]);
    let bad = CPermDiagram::new(2, vec![0, 1], vec![0, 1], &[]).unwrap();
    assert!(rep_ext_cperm(&k2, &bad).is_err() || rep_ext_cperm(&k2, &bad).unwrap().is_none());
}

#[test]
fn rep_ext_matches_brute_force_up_to_four() {
    let mut checked = 0;
    let mut feasible = 0;
    for g in corpus().iter().filter(|g| g.n() <= 4) {
        let (c, f) = rep_ext_cperm_equivalence(g, 4);
        checked += c;
        feasible += f;
    }
    assert!(feasible > 0 && feasible <= checked);
}

#[test]
fn rep_ext_matches_brute_force_five() {
    let mut checked = 0;
    let mut feasible = 0;
    for g in corpus().iter().filter(|g| g.n() == 5) {
        let (c, f) = rep_ext_cperm_equivalence(g, 5);
        checked += c;
        feasible += f;
    }
    assert!(feasible > 0 && feasible < checked, "{feasible} of {checked}");
}

#[test]
fn sunflower_fixtures() {
    let g = c5();
    let same = SunflowerInstance::new(g.clone(), vec![g.clone(), g.clone()]);
    let out = sunflower_cperm(&same).unwrap().unwrap();
    assert!(out[0].extends(&out[1]) && out[1].extends(&out[0]));
    let single = SunflowerInstance::new(g.induced_subgraph(&[0, 2]), vec![g.clone()]);
    assert!(sunflower_cperm(&single).unwrap().unwrap()[0].realizes(&g));
}

#[test]
fn sunflower_matches_brute_force() {
    let mut rng = common::rng(33);
    let mut feasible = 0;
    let total = 200;
    for _ in 0..total {
        if sunflower_cperm_instance(&random_sunflower(&mut rng, 3, 2, 5)) {
            feasible += 1;
        }
    }
    assert_eq!(feasible, total);
}

#[test]
fn c5_plus_isolated_vertex_is_rejected() {
    let g = graph(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
    assert!(enum_perm_diagrams(&g.induced_subgraph(&[0, 1, 2, 3, 4])).unwrap().is_empty());
    let empty = CPermDiagram::new(6, vec![], vec![], &[]).unwrap();
    assert!(rep_ext_cperm(&g, &empty).unwrap().is_none());
    let h = g.induced_subgraph(&[5]);
    let k2 = Graph::new(&["f", "y"], &[("f", "y")]).unwrap();
    let inst = SunflowerInstance::new(h, vec![k2, g.clone()]);
    assert!(sunflower_cperm(&inst).unwrap().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rep_ext_on_random_realizations(seed in any::<u64>(), n in 1usize..=9) {
        use rand::seq::SliceRandom;
        let mut rng = common::rng(seed);
        let mut outer: Vec<usize> = (0..n).collect();
        let mut inner = outer.clone();
        outer.shuffle(&mut rng);
        inner.shuffle(&mut rng);
        let wrapped: Vec<usize> = (0..n).filter(|e| seed >> (e + 9) & 1 == 1).collect();
        let c = CPermDiagram::new(n, outer, inner, &wrapped).unwrap();
        let g = cdiagram_graph(&c, &letters(n));
        let keep: Vec<usize> = (0..n).filter(|e| seed >> e & 1 == 1).collect();
        let partial = c.restrict(|e| keep.contains(&e));
        let full = rep_ext_cperm(&g, &partial).unwrap();
        prop_assert!(full.is_some(), "no extension of {} for {:?}", partial, g.edge_list());
        let full = full.unwrap();
        prop_assert!(full.realizes(&g) && cperm_extends(&full, &partial));
    }
}

fn gadget_instance(isolated: bool) -> SunflowerInstance {
    let with = |ids: &[&str], edges: &[(&str, &str)]| {
        let mut ids: Vec<&str> = ids.to_vec();
        if isolated {
            ids.push("v");
        }
        Graph::new(&ids, edges).unwrap()
    };
    let h = with(&["x", "y", "z"], &[("x", "y"), ("x", "z"), ("y", "z")]);
    let gadget = |t: &str, x: &str, y: &str, z: &str| {
        let (a, b) = (format!("a{t}"), format!("b{t}"));
        with(&[x, y, z, &a, &b], &[(x, a.as_str()), (x, y), (x, z), (y, z), (z, b.as_str())])
    };
    SunflowerInstance::new(h, vec![gadget("1", "x", "y", "z"), gadget("2", "y", "x", "z")])
}

#[test]
fn gadget_instance_directly_is_feasible() {
    assert!(sunflower_cperm_instance(&gadget_instance(false)));
}

#[test]
fn gadget_instance_with_isolated_vertex_is_rejected() {
    let inst = gadget_instance(true);
    assert!(simrep::perm::sunflower_perm(&gadget_instance(false)).unwrap().is_err());
    assert!(sunflower_cperm(&inst).unwrap().is_err());
}
