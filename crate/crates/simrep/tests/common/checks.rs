//! Oracle-equivalence checks shared by the module tests and the acceptance suite.
//! Every check panics with a description on disagreement.

use std::collections::{BTreeSet, HashSet};

use itertools::Itertools;
use simrep::cperm::{cdiagram_graph, rep_ext_cperm, sunflower_cperm, switch_chords, CPermDiagram};
use simrep::graph::{is_transitive, Graph, Orientation, PartialOrientation, SunflowerInstance};
use simrep::mdecomp::{represented_orientations, restrict, MdTree};
use simrep::oracle::{
    consecutive_orders, enum_cperm_diagrams, enum_perm_diagrams, enum_transitive_orientations,
    extensions, restrict_orientation, sim_orient_brute, sunflower_cperm_brute,
    sunflower_perm_brute,
};
use simrep::orient::{default_orientations, orient_ext};
use simrep::perm::{rep_ext_perm, sunflower_perm, PermDiagram};
use simrep::pqtree::PqTree;
use simrep::simorient::{arc_defaults, build_constraints, sim_orient, to_set, DecompView};

/// The orientations represented by the decomposition equal the brute-force set.
pub fn md_exactness(g: &Graph) {
    let t = MdTree::build(g).unwrap();
    let brute: BTreeSet<Orientation> = enum_transitive_orientations(g).unwrap().into_iter().collect();
    match default_orientations(&t) {
        Ok(d) => {
            let rep = represented_orientations(g, &t, &d, 1 << 16).unwrap();
            assert_eq!(rep, brute, "represented set differs for {:?}", g.edge_list());
        }
        Err(_) => assert!(brute.is_empty(), "no default orientation but {:?} is comparability", g.edge_list()),
    }
}

/// Every partial orientation over at most `k` edges: orient_ext agrees with brute force.
/// Returns the number of partial orientations checked.
pub fn orient_ext_equivalence(g: &Graph, k: usize) -> usize {
    let all = enum_transitive_orientations(g).unwrap();
    let ends = g.edge_list();
    let mut count = 0;
    for size in 0..=k.min(g.m()) {
        for es in (0..g.m()).combinations(size) {
            for dirs in 0u32..(1 << size) {
                let arcs: Vec<(usize, usize)> = es
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| if dirs >> i & 1 == 1 { ends[e] } else { (ends[e].1, ends[e].0) })
                    .collect();
                let w = PartialOrientation::new(g, &arcs).unwrap();
                let feasible = all.iter().any(|o| o.extends(&w));
                match orient_ext(g, &w) {
                    Ok(o) => {
                        assert!(feasible, "orient_ext extends {arcs:?} but brute force does not");
                        assert!(is_transitive(g, &o) && o.extends(&w));
                    }
                    Err(e) => assert!(!feasible, "orient_ext says {e} for {arcs:?}"),
                }
                count += 1;
            }
        }
    }
    count
}

pub fn orient_ext_single(g: &Graph, w: &PartialOrientation) {
    let brute = extensions(g, w).unwrap();
    match orient_ext(g, w) {
        Ok(o) => assert!(!brute.is_empty() && is_transitive(g, &o) && o.extends(w)),
        Err(e) => assert!(brute.is_empty(), "{e} but brute force extends"),
    }
}

fn restrictions(g: &Graph, h: &Graph) -> BTreeSet<Orientation> {
    let map: Vec<usize> = (0..h.n()).map(|v| g.vertex(h.id(v)).unwrap()).collect();
    enum_transitive_orientations(g)
        .unwrap()
        .iter()
        .map(|o| restrict_orientation(g, o, h, &map))
        .collect()
}

/// `to_set(build_constraints(..))` equals the restrictions of all transitive
/// orientations of `g` to `G[keep]`. Returns false when `g` is not a
/// comparability graph (nothing to compare).
pub fn restriction_semantics(g: &Graph, keep: &[usize]) -> bool {
    let t = MdTree::build(g).unwrap();
    let Ok(td) = default_orientations(&t) else { return false };
    let h = g.induced_subgraph(keep);
    let b = MdTree::build(&h).unwrap();
    let bd = default_orientations(&b).unwrap();
    let bview = arc_defaults(bd.clone());
    let tview = arc_defaults(td);
    let r = restrict(&t, g, &h).unwrap();
    let bv = DecompView { tree: &b, complement: false, defaults: &bview };
    let tv = DecompView { tree: &t, complement: false, defaults: &tview };
    let c = build_constraints(&bv, &r, &tv, 0, "");
    let got = to_set(&h, &b, &bd, &c).unwrap();
    assert_eq!(got, restrictions(g, &h), "restriction of {:?} to {keep:?}", g.edge_list());
    true
}

/// Random constraint system over `n` elements: reduce and pairwise/iterated
/// intersection agree with permutation filtering.
pub fn pq_semantics(n: usize, systems: &[Vec<Vec<usize>>]) {
    let mut trees = Vec::new();
    for sets in systems {
        let mut t = PqTree::universal(n).unwrap();
        for s in sets {
            t = t.reduce(s);
        }
        let expect = consecutive_orders(n, sets).unwrap();
        let got: BTreeSet<Vec<usize>> = t.frontiers().unwrap().into_iter().collect();
        assert_eq!(got, expect, "reduce over {sets:?}");
        trees.push(t);
    }
    let all: Vec<Vec<usize>> = systems.iter().flatten().cloned().collect();
    let (s, _) = PqTree::intersect(&trees).unwrap();
    let got: BTreeSet<Vec<usize>> = s.frontiers().unwrap().into_iter().collect();
    assert_eq!(got, consecutive_orders(n, &all).unwrap(), "intersection of {systems:?}");
}

fn shared_map(g: &Graph, h: &Graph) -> Vec<usize> {
    (0..h.n()).map(|v| g.vertex(h.id(v)).unwrap()).collect()
}

/// sim_orient agrees with brute force; returns feasibility.
pub fn sim_orient_instance(inst: &SunflowerInstance) -> bool {
    let brute = sim_orient_brute(inst).unwrap();
    match sim_orient(inst).unwrap() {
        Ok(os) => {
            assert!(brute.is_some(), "sim_orient feasible, brute force not");
            let h = &inst.shared;
            let rs: HashSet<Orientation> = inst
                .inputs
                .iter()
                .zip(&os)
                .map(|(g, o)| {
                    assert!(is_transitive(g, o));
                    restrict_orientation(g, o, h, &shared_map(g, h))
                })
                .collect();
            assert!(rs.len() <= 1, "orientations disagree on the shared graph");
            true
        }
        Err(e) => {
            assert!(brute.is_none(), "sim_orient says {e}, brute force finds a tuple");
            false
        }
    }
}

fn diagrams_by_restriction(all: &[PermDiagram], keep: &[usize]) -> HashSet<(Vec<usize>, Vec<usize>)> {
    all.iter()
        .map(|d| {
            let r = d.restrict(|e| keep.contains(&e));
            (r.top().to_vec(), r.bottom().to_vec())
        })
        .collect()
}

/// Every partial diagram of every `G[W]` with `|W| <= max_w`: rep_ext_perm
/// agrees with brute force. Returns (checked, feasible).
pub fn rep_ext_perm_equivalence(g: &Graph, max_w: usize) -> (usize, usize) {
    let all = enum_perm_diagrams(g).unwrap();
    let mut checked = 0;
    let mut feasible = 0;
    for w in (0..=max_w.min(g.n())).flat_map(|s| (0..g.n()).combinations(s)) {
        let reachable = diagrams_by_restriction(&all, &w);
        let gw = g.induced_subgraph(&w);
        for d in enum_perm_diagrams(&gw).unwrap() {
            let partial = d.map(g.n(), |e| w[e]).unwrap();
            let key = (partial.top().to_vec(), partial.bottom().to_vec());
            let expect = reachable.contains(&key);
            match rep_ext_perm(g, &partial).unwrap() {
                Some(full) => {
                    assert!(expect, "rep_ext_perm extends {partial} but brute force cannot");
                    assert!(full.realizes(g) && full.extends(&partial));
                    feasible += 1;
                }
                None => assert!(!expect, "rep_ext_perm rejects {partial} for {:?}", g.edge_list()),
            }
            checked += 1;
        }
    }
    (checked, feasible)
}

fn named_lines(g: &Graph, d: &PermDiagram, h: &Graph) -> (Vec<String>, Vec<String>) {
    let keep: HashSet<usize> = shared_map(g, h).into_iter().collect();
    let r = d.restrict(|e| keep.contains(&e));
    let ids = |v: &[usize]| v.iter().map(|&e| g.id(e).to_string()).collect();
    (ids(r.top()), ids(r.bottom()))
}

/// sunflower_perm agrees with brute force; returns feasibility.
pub fn sunflower_perm_instance(inst: &SunflowerInstance) -> bool {
    let brute = sunflower_perm_brute(inst).unwrap();
    match sunflower_perm(inst).unwrap() {
        Ok(ds) => {
            assert!(brute.is_some(), "sunflower_perm feasible, brute force not");
            let h = &inst.shared;
            let shapes: HashSet<(Vec<String>, Vec<String>)> = inst
                .inputs
                .iter()
                .zip(&ds)
                .map(|(g, d)| {
                    assert!(d.realizes(g));
                    named_lines(g, d, h)
                })
                .collect();
            assert!(shapes.len() <= 1, "diagrams disagree on the shared graph");
            true
        }
        Err(e) => {
            assert!(brute.is_none(), "sunflower_perm says {e}, brute force finds diagrams");
            false
        }
    }
}

/// Toggling one chord complements exactly that vertex's adjacency, and
/// switching twice is the identity, over every cut-form diagram on `n` chords.
pub fn switch_semantics(n: usize) -> usize {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut count = 0;
    for outer in (0..n).permutations(n) {
        for inner in (0..n).permutations(n) {
            for bits in 0u32..(1 << n) {
                let wrapped: Vec<usize> = (0..n).filter(|&e| bits >> e & 1 == 1).collect();
                let c = CPermDiagram::new(n, outer.clone(), inner.clone(), &wrapped).unwrap();
                for v in 0..n {
                    let s = switch_chords(&c, &[v]);
                    assert_eq!(switch_chords(&s, &[v]), c);
                    for a in 0..n {
                        for b in a + 1..n {
                            let flipped = a == v || b == v;
                            assert_eq!(s.crosses(a, b), c.crosses(a, b) != flipped);
                        }
                    }
                }
                let g = cdiagram_graph(&c, &names);
                assert!(c.realizes(&g));
                count += 1;
            }
        }
    }
    count
}

/// Every cut-form partial diagram of every `G[W]` with `|W| <= max_w`:
/// rep_ext_cperm agrees with brute force. Returns (checked, feasible).
pub fn rep_ext_cperm_equivalence(g: &Graph, max_w: usize) -> (usize, usize) {
    let all = enum_cperm_diagrams(g).unwrap();
    let mut checked = 0;
    let mut feasible = 0;
    for w in (0..=max_w.min(g.n())).flat_map(|s| (0..g.n()).combinations(s)) {
        let gw = g.induced_subgraph(&w);
        let mut seen = HashSet::new();
        for d in enum_cperm_diagrams(&gw).unwrap() {
            let partial = d.map(g.n(), |e| w[e]).unwrap();
            if !seen.insert(partial.clone()) {
                continue;
            }
            let expect = all.iter().any(|c| simrep::oracle::cperm_extends(c, &partial));
            match rep_ext_cperm(g, &partial).unwrap() {
                Some(full) => {
                    assert!(expect, "rep_ext_cperm extends {partial} but brute force cannot");
                    assert!(full.realizes(g) && simrep::oracle::cperm_extends(&full, &partial));
                    feasible += 1;
                }
                None => assert!(
                    !expect,
                    "rep_ext_cperm rejects {partial} for {:?} ({} vertices)",
                    g.edge_list(),
                    g.n()
                ),
            }
            checked += 1;
        }
    }
    (checked, feasible)
}

/// sunflower_cperm agrees with brute force; returns feasibility.
pub fn sunflower_cperm_instance(inst: &SunflowerInstance) -> bool {
    let brute = sunflower_cperm_brute(inst).unwrap();
    match sunflower_cperm(inst).unwrap() {
        Ok(cs) => {
            assert!(brute.is_some(), "sunflower_cperm feasible, brute force not");
            let h = &inst.shared;
            let mut rs: Vec<CPermDiagram> = Vec::new();
            for (g, c) in inst.inputs.iter().zip(&cs) {
                assert!(c.realizes(g));
                let map = shared_map(g, h);
                let mut back = vec![usize::MAX; g.n()];
                for (i, &v) in map.iter().enumerate() {
                    back[v] = i;
                }
                let r = c.restrict(|e| back[e] != usize::MAX).map(h.n(), |e| back[e]).unwrap();
                rs.push(r);
            }
            assert!(rs.windows(2).all(|p| p[0].extends(&p[1]) && p[1].extends(&p[0])), "diagrams disagree on the shared graph");
            true
        }
        Err(e) => {
            assert!(brute.is_none(), "sunflower_cperm says {e}, brute force finds diagrams");
            false
        }
    }
}
