//! Exhaustive reference implementations. Every function here filters an
//! explicitly enumerated space and never calls the fast algorithms.

use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;

use crate::cperm::CPermDiagram;
use crate::error::{Error, Result};
use crate::graph::{is_transitive, Graph, Orientation, PartialOrientation, SunflowerInstance};
use crate::perm::PermDiagram;
use crate::twosat::Formula2;

/// Hard caps checked before any enumeration starts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_edges: usize,
    pub max_perm_vertices: usize,
    pub max_cperm_vertices: usize,
    pub max_tuples: u64,
    pub max_vars: usize,
    pub max_ground: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_edges: 20,
            max_perm_vertices: 6,
            max_cperm_vertices: 5,
            max_tuples: 1 << 24,
            max_vars: 20,
            max_ground: 8,
        }
    }
}

fn over(what: &str, have: impl std::fmt::Display, cap: impl std::fmt::Display) -> Error {
    Error::Budget(format!("{what} {have} exceeds {cap}"))
}

/// All transitive orientations of `g`, filtered from the `2^m` orientations.
pub fn enum_transitive_orientations(g: &Graph) -> Result<Vec<Orientation>> {
    enum_transitive_orientations_with(g, &EnumerationBudget::default())
}

pub fn enum_transitive_orientations_with(
    g: &Graph,
    budget: &EnumerationBudget,
) -> Result<Vec<Orientation>> {
    let m = g.m();
    if m > budget.max_edges {
        return Err(over("edge count", m, budget.max_edges));
    }
    let mut out = Vec::new();
    for bits in 0u64..(1u64 << m) {
        let o = Orientation::from_forward((0..m).map(|e| bits >> e & 1 == 1).collect());
        if is_transitive(g, &o) {
            out.push(o);
        }
    }
    Ok(out)
}

/// Whether `g` is a comparability graph, by enumeration.
pub fn is_comparability(g: &Graph) -> Result<bool> {
    Ok(!enum_transitive_orientations(g)?.is_empty())
}

/// Transitive orientations of `g` containing every arc of `w`.
pub fn extensions(g: &Graph, w: &PartialOrientation) -> Result<Vec<Orientation>> {
    Ok(enum_transitive_orientations(g)?
        .into_iter()
        .filter(|o| w.iter().all(|(e, fw)| o.is_forward(e) == fw))
        .collect())
}

/// The orientation `o` of `g` read on the edges of the induced subgraph
/// `h`, where `map[v]` is the vertex of `g` playing `v`.
pub fn restrict_orientation(g: &Graph, o: &Orientation, h: &Graph, map: &[usize]) -> Orientation {
    let fw = h
        .edges()
        .map(|(a, b)| {
            let (u, v) = (map[a], map[b]);
            let e = g.edge_index(u, v).expect("induced edge");
            o.is_forward(e) == (u < v)
        })
        .collect();
    Orientation::from_forward(fw)
}

fn permutations(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..n).permutations(n)
}

fn realizes_linear(g: &Graph, top: &[usize], bottom: &[usize]) -> bool {
    let n = g.n();
    let mut tp = vec![0; n];
    let mut bp = vec![0; n];
    for i in 0..n {
        tp[top[i]] = i;
        bp[bottom[i]] = i;
    }
    (0..n).all(|a| {
        (a + 1..n).all(|b| ((tp[a] < tp[b]) != (bp[a] < bp[b])) == g.has_edge(a, b))
    })
}

/// All `(top, bottom)` pairs whose crossing graph is `g`.
pub fn enum_perm_diagrams(g: &Graph) -> Result<Vec<PermDiagram>> {
    let n = g.n();
    let cap = EnumerationBudget::default().max_perm_vertices;
    if n > cap {
        return Err(over("vertex count", n, cap));
    }
    let mut out = Vec::new();
    for top in permutations(n) {
        let mut tp = vec![0; n];
        for (i, &e) in top.iter().enumerate() {
            tp[e] = i;
        }
        let crosses = |p: usize, e: usize| tp[p] > tp[e];
        for bottom in second_lines(g, &crosses) {
            debug_assert!(realizes_linear(g, &top, &bottom));
            out.push(PermDiagram::full(top.clone(), bottom)?);
        }
    }
    Ok(out)
}

/// Every order of the second line such that, for each `p` placed before `e`,
/// `crosses(p, e)` matches adjacency in `g`. Exhaustive over all `n!` orders,
/// skipping prefixes that already fail.
fn second_lines(g: &Graph, crosses: &dyn Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn go(
        g: &Graph,
        crosses: &dyn Fn(usize, usize) -> bool,
        line: &mut Vec<usize>,
        used: &mut [bool],
        out: &mut Vec<Vec<usize>>,
    ) {
        if line.len() == g.n() {
            out.push(line.clone());
            return;
        }
        for e in 0..g.n() {
            if used[e] || line.iter().any(|&p| crosses(p, e) != g.has_edge(p, e)) {
                continue;
            }
            used[e] = true;
            line.push(e);
            go(g, crosses, line, used, out);
            line.pop();
            used[e] = false;
        }
    }
    let mut out = Vec::new();
    go(g, crosses, &mut Vec::new(), &mut vec![false; g.n()], &mut out);
    out
}

fn cut_crosses(op: &[usize], ip: &[usize], w: &[bool], a: usize, b: usize) -> bool {
    let differ = (op[a] < op[b]) != (ip[a] < ip[b]);
    differ == (w[a] == w[b])
}

/// All cut-form triples `(outer, inner, wrapped)` whose crossing graph is `g`.
pub fn enum_cperm_diagrams(g: &Graph) -> Result<Vec<CPermDiagram>> {
    let n = g.n();
    let cap = EnumerationBudget::default().max_cperm_vertices;
    if n > cap {
        return Err(over("vertex count", n, cap));
    }
    let mut out = Vec::new();
    for outer in permutations(n) {
        let mut op = vec![0; n];
        for (i, &e) in outer.iter().enumerate() {
            op[e] = i;
        }
        for bits in 0u32..(1 << n) {
            let w: Vec<bool> = (0..n).map(|e| bits >> e & 1 == 1).collect();
            let crosses = |p: usize, e: usize| (op[p] > op[e]) == (w[p] == w[e]);
            for inner in second_lines(g, &crosses) {
                let mut ip = vec![0; n];
                for (i, &e) in inner.iter().enumerate() {
                    ip[e] = i;
                }
                debug_assert!((0..n).all(|a| {
                    (a + 1..n).all(|b| cut_crosses(&op, &ip, &w, a, b) == g.has_edge(a, b))
                }));
                let wrapped: Vec<usize> = (0..n).filter(|&e| w[e]).collect();
                out.push(CPermDiagram::new(n, outer.clone(), inner, &wrapped)?);
            }
        }
    }
    Ok(out)
}

/// Same relative order of `partial`'s elements on both lines.
pub fn perm_extends(d: &PermDiagram, partial: &PermDiagram) -> bool {
    let keep = |v: &[usize]| v.iter().copied().filter(|&e| partial.contains(e)).collect::<Vec<_>>();
    keep(d.top()) == partial.top() && keep(d.bottom()) == partial.bottom()
}

fn cyclic_eq(a: &[usize], b: &[usize]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    match a.iter().position(|&x| x == b[0]) {
        Some(s) => (0..a.len()).all(|k| a[(s + k) % a.len()] == b[k]),
        None => false,
    }
}

/// Same cyclic orders of `partial`'s elements on both circles and the same
/// crossings among them.
pub fn cperm_extends(c: &CPermDiagram, partial: &CPermDiagram) -> bool {
    let keep = |v: &[usize]| v.iter().copied().filter(|&e| partial.contains(e)).collect::<Vec<_>>();
    if !cyclic_eq(&keep(c.outer()), partial.outer()) || !cyclic_eq(&keep(c.inner()), partial.inner())
    {
        return false;
    }
    let els = partial.outer();
    els.iter().tuple_combinations().all(|(&a, &b)| c.crosses(a, b) == partial.crosses(a, b))
}

/// First diagram of `g` extending `partial`, by enumeration.
pub fn rep_ext_perm_brute(g: &Graph, partial: &PermDiagram) -> Result<Option<PermDiagram>> {
    Ok(enum_perm_diagrams(g)?.into_iter().find(|d| perm_extends(d, partial)))
}

/// First cut-form diagram of `g` extending `partial`, by enumeration.
pub fn rep_ext_cperm_brute(g: &Graph, partial: &CPermDiagram) -> Result<Option<CPermDiagram>> {
    Ok(enum_cperm_diagrams(g)?.into_iter().find(|c| cperm_extends(c, partial)))
}

/// Transitive orientations of every input agreeing on the shared graph.
pub fn sim_orient_brute(inst: &SunflowerInstance) -> Result<Option<Vec<Orientation>>> {
    let h = &inst.shared;
    let mut per_input: Vec<HashMap<Orientation, Orientation>> = Vec::new();
    let mut total: u64 = 1;
    for g in &inst.inputs {
        let map: Vec<usize> = (0..h.n()).map(|v| g.vertex(h.id(v))).collect::<Result<_>>()?;
        let all = enum_transitive_orientations(g)?;
        total = total.saturating_mul(all.len().max(1) as u64);
        let mut by_restriction = HashMap::new();
        for o in all {
            by_restriction.entry(restrict_orientation(g, &o, h, &map)).or_insert(o);
        }
        per_input.push(by_restriction);
    }
    let cap = EnumerationBudget::default().max_tuples;
    if total > cap {
        return Err(over("orientation tuples", total, cap));
    }
    let Some(first) = per_input.first() else { return Ok(Some(Vec::new())) };
    let mut keys: Vec<&Orientation> = first.keys().collect();
    keys.sort();
    for k in keys {
        if per_input.iter().all(|m| m.contains_key(k)) {
            return Ok(Some(per_input.iter().map(|m| m[k].clone()).collect()));
        }
    }
    Ok(None)
}

type RestrictionKey = (Vec<String>, Vec<String>);

fn ids_of(g: &Graph, v: &[usize]) -> Vec<String> {
    v.iter().map(|&e| g.id(e).to_string()).collect()
}

/// Diagrams of every input whose restrictions to the shared graph coincide.
pub fn sunflower_perm_brute(inst: &SunflowerInstance) -> Result<Option<Vec<PermDiagram>>> {
    let h = &inst.shared;
    let mut per_input: Vec<HashMap<RestrictionKey, PermDiagram>> = Vec::new();
    for g in &inst.inputs {
        let hs: HashSet<usize> = (0..h.n()).map(|v| g.vertex(h.id(v))).collect::<Result<_>>()?;
        let mut m = HashMap::new();
        for d in enum_perm_diagrams(g)? {
            let r = d.restrict(|e| hs.contains(&e));
            m.entry((ids_of(g, r.top()), ids_of(g, r.bottom()))).or_insert(d);
        }
        per_input.push(m);
    }
    Ok(common_choice(per_input))
}

/// Cut-form diagrams of every input whose restrictions to the shared graph
/// have the same cyclic orders on both circles.
pub fn sunflower_cperm_brute(inst: &SunflowerInstance) -> Result<Option<Vec<CPermDiagram>>> {
    let h = &inst.shared;
    let mut per_input: Vec<HashMap<RestrictionKey, CPermDiagram>> = Vec::new();
    for g in &inst.inputs {
        let hv: Vec<usize> = (0..h.n()).map(|v| g.vertex(h.id(v))).collect::<Result<_>>()?;
        let hs: HashSet<usize> = hv.iter().copied().collect();
        let mut m = HashMap::new();
        for c in enum_cperm_diagrams(g)? {
            let key = if hv.is_empty() {
                (Vec::new(), Vec::new())
            } else {
                let rot = |v: &[usize]| {
                    let kept: Vec<usize> = v.iter().copied().filter(|e| hs.contains(e)).collect();
                    let s = kept.iter().position(|&e| e == hv[0]).unwrap();
                    let mut r = kept.clone();
                    r.rotate_left(s);
                    ids_of(g, &r)
                };
                (rot(c.outer()), rot(c.inner()))
            };
            m.entry(key).or_insert(c);
        }
        per_input.push(m);
    }
    Ok(common_choice(per_input))
}

fn common_choice<K: std::hash::Hash + Eq + Ord + Clone, V: Clone>(
    per_input: Vec<HashMap<K, V>>,
) -> Option<Vec<V>> {
    let Some(first) = per_input.first() else { return Some(Vec::new()) };
    let keys: BTreeSet<&K> = first.keys().collect();
    keys.into_iter()
        .find(|k| per_input.iter().all(|m| m.contains_key(*k)))
        .map(|k| per_input.iter().map(|m| m[k].clone()).collect())
}

/// Orders of `0..n` in which every set is consecutive.
pub fn consecutive_orders(n: usize, sets: &[Vec<usize>]) -> Result<BTreeSet<Vec<usize>>> {
    let cap = EnumerationBudget::default().max_ground;
    if n > cap {
        return Err(over("ground set", n, cap));
    }
    Ok(permutations(n)
        .filter(|p| {
            let mut pos = vec![0; n];
            for (i, &e) in p.iter().enumerate() {
                pos[e] = i;
            }
            sets.iter().all(|s| {
                s.is_empty() || {
                    let lo = s.iter().map(|&e| pos[e]).min().unwrap();
                    let hi = s.iter().map(|&e| pos[e]).max().unwrap();
                    hi - lo + 1 == s.len()
                }
            })
        })
        .collect())
}

/// Some satisfying assignment by truth table, preferring the lexicographically
/// smallest one with `false < true`.
pub fn truth_table(f: &Formula2) -> Result<Option<Vec<bool>>> {
    let n = f.num_vars();
    let cap = EnumerationBudget::default().max_vars;
    if n > cap {
        return Err(over("variable count", n, cap));
    }
    for bits in 0u64..(1u64 << n) {
        let a: Vec<bool> = (0..n).map(|v| bits >> v & 1 == 1).collect();
        if f.satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Orders of `s` placing the middle of every triple between the other two.
pub fn total_ordering_brute(s: &[String], triples: &[(String, String, String)]) -> Option<Vec<String>> {
    let idx: HashMap<&str, usize> = s.iter().enumerate().map(|(i, x)| (x.as_str(), i)).collect();
    let t: Vec<(usize, usize, usize)> =
        triples.iter().map(|(x, y, z)| (idx[x.as_str()], idx[y.as_str()], idx[z.as_str()])).collect();
    permutations(s.len())
        .find(|p| {
            let mut pos = vec![0; s.len()];
            for (i, &e) in p.iter().enumerate() {
                pos[e] = i;
            }
            t.iter().all(|&(x, y, z)| {
                (pos[x] < pos[y] && pos[y] < pos[z]) || (pos[x] > pos[y] && pos[y] > pos[z])
            })
        })
        .map(|p| p.into_iter().map(|i| s[i].clone()).collect())
}

/// Transitive orientations of all graphs such that every edge shared by two
/// graphs (by endpoint ids) is oriented the same way in both.
pub fn brute_simorient(graphs: &[Graph]) -> Result<Option<Vec<Orientation>>> {
    let mut all = Vec::new();
    let mut total: u64 = 1;
    for g in graphs {
        let t = enum_transitive_orientations(g)?;
        total = total.saturating_mul(t.len().max(1) as u64);
        all.push(t);
    }
    let cap = EnumerationBudget::default().max_tuples;
    if total > cap {
        return Err(over("orientation tuples", total, cap));
    }
    let mut fixed: HashMap<(String, String), bool> = HashMap::new();
    let mut chosen = Vec::new();
    if search(graphs, &all, 0, &mut fixed, &mut chosen) {
        Ok(Some(chosen))
    } else {
        Ok(None)
    }
}

fn search(
    graphs: &[Graph],
    all: &[Vec<Orientation>],
    i: usize,
    fixed: &mut HashMap<(String, String), bool>,
    chosen: &mut Vec<Orientation>,
) -> bool {
    if i == graphs.len() {
        return true;
    }
    let g = &graphs[i];
    let keyed: Vec<((String, String), usize, bool)> = g
        .edges()
        .enumerate()
        .map(|(e, (u, v))| {
            let (a, b) = (g.id(u).to_string(), g.id(v).to_string());
            if a < b {
                ((a, b), e, true)
            } else {
                ((b, a), e, false)
            }
        })
        .collect();
    for o in &all[i] {
        let dir = |x: &((String, String), usize, bool)| x.2 == o.is_forward(x.1);
        if keyed.iter().any(|x| fixed.get(&x.0).is_some_and(|&d| d != dir(x))) {
            continue;
        }
        let added: Vec<(String, String)> =
            keyed.iter().filter(|x| !fixed.contains_key(&x.0)).map(|x| x.0.clone()).collect();
        for x in &keyed {
            fixed.entry(x.0.clone()).or_insert_with(|| dir(x));
        }
        chosen.push(o.clone());
        if search(graphs, all, i + 1, fixed, chosen) {
            return true;
        }
        chosen.pop();
        for k in added {
            fixed.remove(&k);
        }
    }
    false
}
