//! Circular permutation diagrams in cut form, vertex switching, partial
//! representation extension and simultaneous representations.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, SunflowerInstance};
use crate::perm::{rep_ext_perm, sunflower_perm, PermDiagram, RepInfeasible};

const ABSENT: usize = usize::MAX;

/// Outer and inner circle orders read from a reference ray, plus the chords
/// that cross the ray once.
///
/// Two chords cross iff, with equal wrap status, their relative orders
/// differ between the circles, or, with different wrap status, agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CPermDiagram {
    outer: Vec<usize>,
    inner: Vec<usize>,
    wrapped: Vec<bool>,
    opos: Vec<usize>,
    ipos: Vec<usize>,
}

impl CPermDiagram {
    pub fn new(
        universe: usize,
        outer: Vec<usize>,
        inner: Vec<usize>,
        wrapped: &[usize],
    ) -> Result<CPermDiagram> {
        let lin = PermDiagram::new(universe, outer, inner)?;
        let mut w = vec![false; universe];
        for &e in wrapped {
            if !lin.contains(e) {
                return Err(Error::InvalidDiagram(format!("wrapped element {e} not in the diagram")));
            }
            w[e] = true;
        }
        Ok(Self::from_linear(&lin, w))
    }

    fn from_linear(d: &PermDiagram, wrapped: Vec<bool>) -> CPermDiagram {
        let n = d.universe();
        let mut opos = vec![ABSENT; n];
        let mut ipos = vec![ABSENT; n];
        for &e in d.top() {
            opos[e] = d.top_pos(e);
            ipos[e] = d.bottom_pos(e);
        }
        CPermDiagram { outer: d.top().to_vec(), inner: d.bottom().to_vec(), wrapped, opos, ipos }
    }

    /// A linear diagram read as a circular one, cut before the first element.
    pub fn close(d: &PermDiagram) -> CPermDiagram {
        Self::from_linear(d, vec![false; d.universe()])
    }

    pub fn from_ids<S: AsRef<str>>(
        g: &Graph,
        outer: &[S],
        inner: &[S],
        wrapped: &[S],
    ) -> Result<CPermDiagram> {
        let idx = |v: &[S]| v.iter().map(|s| g.vertex(s.as_ref())).collect::<Result<Vec<_>>>();
        CPermDiagram::new(g.n(), idx(outer)?, idx(inner)?, &idx(wrapped)?)
    }

    pub fn universe(&self) -> usize {
        self.opos.len()
    }

    pub fn len(&self) -> usize {
        self.outer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outer.is_empty()
    }

    pub fn outer(&self) -> &[usize] {
        &self.outer
    }

    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.universe() && self.opos[e] != ABSENT
    }

    pub fn is_wrapped(&self, e: usize) -> bool {
        self.wrapped[e]
    }

    pub fn wrapped(&self) -> Vec<usize> {
        self.outer.iter().copied().filter(|&e| self.wrapped[e]).collect()
    }

    pub fn crosses(&self, a: usize, b: usize) -> bool {
        let differ = (self.opos[a] < self.opos[b]) != (self.ipos[a] < self.ipos[b]);
        differ == (self.wrapped[a] == self.wrapped[b])
    }

    pub fn realizes(&self, g: &Graph) -> bool {
        self.universe() == g.n() && self.len() == g.n() && self.realizes_induced(g)
    }

    pub fn realizes_induced(&self, g: &Graph) -> bool {
        let els = &self.outer;
        for (i, &a) in els.iter().enumerate() {
            for &b in &els[i + 1..] {
                if self.crosses(a, b) != g.has_edge(a, b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> CPermDiagram {
        let o: Vec<usize> = self.outer.iter().copied().filter(|&e| keep(e)).collect();
        let i: Vec<usize> = self.inner.iter().copied().filter(|&e| keep(e)).collect();
        let w: Vec<usize> = o.iter().copied().filter(|&e| self.wrapped[e]).collect();
        CPermDiagram::new(self.universe(), o, i, &w).expect("restriction of a valid diagram")
    }

    pub fn map(&self, universe: usize, f: impl Fn(usize) -> usize) -> Result<CPermDiagram> {
        CPermDiagram::new(
            universe,
            self.outer.iter().map(|&e| f(e)).collect(),
            self.inner.iter().map(|&e| f(e)).collect(),
            &self.wrapped().into_iter().map(f).collect::<Vec<_>>(),
        )
    }

    /// Moves the ray past the first `i` outer and first `j` inner endpoints.
    pub fn rotate(&self, i: usize, j: usize) -> CPermDiagram {
        let n = self.len();
        let (i, j) = (i % n.max(1), j % n.max(1));
        let mut w = self.wrapped.clone();
        for &e in &self.outer[..i] {
            w[e] = !w[e];
        }
        for &e in &self.inner[..j] {
            w[e] = !w[e];
        }
        let mut o = self.outer.clone();
        o.rotate_left(i);
        let mut inn = self.inner.clone();
        inn.rotate_left(j);
        let lin = PermDiagram::new(self.universe(), o, inn).unwrap();
        Self::from_linear(&lin, w)
    }

    /// Same cyclic orders on both circles as `other` restricted to its elements,
    /// and the same crossings among them.
    pub fn extends(&self, other: &CPermDiagram) -> bool {
        if other.is_empty() {
            return true;
        }
        let r = self.restrict(|e| other.contains(e));
        let cyc = |a: &[usize], b: &[usize]| {
            let Some(s) = a.iter().position(|&x| x == b[0]) else { return false };
            a.len() == b.len() && (0..a.len()).all(|k| a[(s + k) % a.len()] == b[k])
        };
        if !cyc(&r.outer, &other.outer) || !cyc(&r.inner, &other.inner) {
            return false;
        }
        let els = &other.outer;
        for (k, &a) in els.iter().enumerate() {
            for &b in &els[k + 1..] {
                if r.crosses(a, b) != other.crosses(a, b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_text(&self, names: &[String]) -> String {
        let line = |v: &[usize]| v.iter().map(|&e| names[e].as_str()).collect::<Vec<_>>().join(" ");
        format!("{}\n{}\n{}\n", line(&self.outer), line(&self.inner), line(&self.wrapped()))
    }
}

impl fmt::Display for CPermDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} / {:?} wrapped {:?}", self.outer, self.inner, self.wrapped())
    }
}

/// Graph realized by `c`; vertices are the present elements in increasing order.
pub fn cdiagram_graph(c: &CPermDiagram, names: &[String]) -> Graph {
    let mut els = c.outer.clone();
    els.sort_unstable();
    let mut edges = Vec::new();
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            if c.crosses(els[i], els[j]) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_indices(els.iter().map(|&e| names[e].clone()).collect(), &edges)
        .expect("crossing graph is simple")
}

/// Toggles the wrap status of every chord in `s`.
pub fn switch_chords(c: &CPermDiagram, s: &[usize]) -> CPermDiagram {
    let mut out = c.clone();
    for &e in s {
        if out.contains(e) {
            out.wrapped[e] = !out.wrapped[e];
        }
    }
    out
}

/// `g` with every vertex of a set switched: `uv` is an edge iff it is an
/// edge of `g` xor exactly one of `u`, `v` is switched.
#[derive(Clone, Debug)]
pub struct SwitchedGraph<'a> {
    pub base: &'a Graph,
    switched: Vec<bool>,
}

impl<'a> SwitchedGraph<'a> {
    pub fn new(base: &'a Graph, s: &[usize]) -> SwitchedGraph<'a> {
        let mut switched = vec![false; base.n()];
        for &v in s {
            switched[v] = true;
        }
        SwitchedGraph { base, switched }
    }

    pub fn is_switched(&self, v: usize) -> bool {
        self.switched[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && (self.base.has_edge(u, v) != (self.switched[u] != self.switched[v]))
    }

    pub fn materialize(&self) -> Graph {
        let n = self.base.n();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.has_edge(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_indices(self.base.ids().to_vec(), &edges).expect("switched graph is simple")
    }
}

/// A linear diagram with the same realized graph, cut along an uncrossed
/// ray; `None` if every ray is crossed.
pub fn open_diagram(c: &CPermDiagram) -> Option<PermDiagram> {
    open_candidates(c).into_iter().next().map(|(_, d)| d)
}

/// Every distinct linear diagram obtained by cutting `c` along an uncrossed
/// ray, with the outer rotation it came from.
fn open_candidates(c: &CPermDiagram) -> Vec<(usize, PermDiagram)> {
    let n = c.len();
    let mut out = Vec::new();
    if n == 0 {
        out.push((0, PermDiagram::new(c.universe(), Vec::new(), Vec::new()).unwrap()));
        return out;
    }
    let mut seen = HashSet::new();
    for i in 0..n {
        let mut w = c.wrapped.clone();
        for &e in &c.outer[..i] {
            w[e] = !w[e];
        }
        let mut count = c.outer.iter().filter(|&&e| w[e]).count();
        for j in 0..n {
            if j > 0 {
                let e = c.inner[j - 1];
                count = if w[e] { count - 1 } else { count + 1 };
                w[e] = !w[e];
            }
            if count == 0 || count == n {
                let r = c.rotate(i, j);
                let d = PermDiagram::new(c.universe(), r.outer.clone(), r.inner.clone()).unwrap();
                if seen.insert(d.clone()) {
                    out.push((i, d));
                }
            }
        }
    }
    out
}

/// Extends a partial circular diagram of `G[W]` to one of `g`; `Ok(None)`
/// if impossible.
pub fn rep_ext_cperm(g: &Graph, partial: &CPermDiagram) -> Result<Option<CPermDiagram>> {
    if partial.universe() != g.n() {
        return Err(Error::PartialMismatch("diagram universe differs from the graph".into()));
    }
    if !partial.realizes_induced(g) {
        return Err(Error::PartialMismatch("crossings differ from the induced subgraph".into()));
    }
    let n = g.n();
    if n == 0 {
        return Ok(Some(partial.clone()));
    }
    let v = (0..n).min_by_key(|&u| (g.degree(u), u)).unwrap();
    let nv = g.neighbors(v).to_vec();
    let sg = SwitchedGraph::new(g, &nv);
    let gp = sg.materialize();
    let pp = switch_chords(partial, &nv);
    let candidates: Vec<PermDiagram> = if pp.contains(v) {
        let r = pp.rotate(pp.opos[v], pp.ipos[v]);
        let d = PermDiagram::new(n, r.outer.clone(), r.inner.clone())?;
        vec![d]
    } else {
        match gap_candidates(&gp, &pp, v) {
            Some(c) => c,
            None => return Ok(None),
        }
    };
    for d in candidates {
        debug_assert!(d.realizes_induced(&gp));
        if let Some(full) = rep_ext_perm(&gp, &d)? {
            let c = switch_chords(&CPermDiagram::close(&full), &nv);
            assert!(c.realizes(g), "closed diagram does not realize the graph");
            if c.extends(partial) {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Openings of the switched partial diagram worth trying when the switched
/// vertex `v` is not represented; `None` if the case analysis rejects.
fn gap_candidates(gp: &Graph, pp: &CPermDiagram, v: usize) -> Option<Vec<PermDiagram>> {
    let w: Vec<usize> = pp.outer.clone();
    let mut comp = vec![ABSENT; gp.n()];
    let mut k = 0;
    for &s in &w {
        if comp[s] != ABSENT {
            continue;
        }
        comp[s] = k;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &w {
                if comp[y] == ABSENT && pp.crosses(x, y) {
                    comp[y] = k;
                    stack.push(y);
                }
            }
        }
        k += 1;
    }
    let opened = open_candidates(pp);
    let gaps: Vec<(usize, usize, PermDiagram)> = opened
        .into_iter()
        .map(|(i, d)| {
            let m = w.len().max(1);
            let before = pp.outer.get((i + m - 1) % m).map(|&e| comp[e]).unwrap_or(0);
            let after = pp.outer.get(i % m).map(|&e| comp[e]).unwrap_or(0);
            (before, after, d)
        })
        .collect();
    if k <= 2 {
        return Some(gaps.into_iter().map(|(_, _, d)| d).collect());
    }
    let in_w: Vec<bool> = (0..gp.n()).map(|x| pp.contains(x)).collect();
    let touched = |u: usize| -> Vec<bool> {
        let mut t = vec![false; k];
        for &x in gp.neighbors(u) {
            if in_w[x] {
                t[comp[x]] = true;
            }
        }
        t
    };
    let others: Vec<usize> = (0..gp.n()).filter(|&u| !in_w[u] && u != v).collect();
    let full_w = |u: usize| w.iter().all(|&x| gp.has_edge(u, x));
    let pivot = others.iter().copied().find(|&u| touched(u).iter().all(|&t| t) && !full_w(u));
    if let Some(u) = pivot {
        let mut missing: Vec<usize> = w.iter().filter(|&&x| !gp.has_edge(u, x)).map(|&x| comp[x]).collect();
        missing.sort_unstable();
        missing.dedup();
        let keep: Vec<PermDiagram> = match missing.len() {
            1 => gaps
                .into_iter()
                .filter(|(b, a, _)| *b == missing[0] || *a == missing[0])
                .map(|(_, _, d)| d)
                .collect(),
            2 => gaps
                .into_iter()
                .filter(|(b, a, _)| {
                    (*b == missing[0] && *a == missing[1]) || (*b == missing[1] && *a == missing[0])
                })
                .map(|(_, _, d)| d)
                .collect(),
            _ => return None,
        };
        return Some(keep);
    }
    let block_order: Vec<usize> = {
        let mut seq: Vec<usize> = Vec::new();
        for &e in &pp.outer {
            if seq.last() != Some(&comp[e]) {
                seq.push(comp[e]);
            }
        }
        if seq.len() > 1 && seq.first() == seq.last() {
            seq.pop();
        }
        seq
    };
    if block_order.len() != k {
        return Some(gaps.into_iter().map(|(_, _, d)| d).collect());
    }
    let mut forbidden: HashSet<(usize, usize)> = HashSet::new();
    for &u in &others {
        if full_w(u) {
            continue;
        }
        let t = touched(u);
        let cyc: Vec<bool> = block_order.iter().map(|&b| t[b]).collect();
        let runs = (0..k).filter(|&p| cyc[p] && !cyc[(p + k - 1) % k]).count();
        if cyc.iter().any(|&x| x) && runs != 1 {
            return None;
        }
        for p in 0..k {
            let q = (p + 1) % k;
            if cyc[p] && cyc[q] {
                forbidden.insert((block_order[p], block_order[q]));
            }
        }
    }
    let keep: Vec<PermDiagram> = gaps
        .into_iter()
        .filter(|(b, a, _)| b == a || !forbidden.contains(&(*b, *a)))
        .map(|(_, _, d)| d)
        .collect();
    Some(keep)
}

/// Circular permutation diagrams of all inputs agreeing on the shared graph.
pub fn sunflower_cperm(
    inst: &SunflowerInstance,
) -> Result<std::result::Result<Vec<CPermDiagram>, RepInfeasible>> {
    inst.validate().map_err(Error::NotSunflower)?;
    let h = &inst.shared;
    if h.n() == 0 {
        return Err(Error::EmptyGraph);
    }
    let vh = 0;
    let switched_h = SwitchedGraph::new(h, h.neighbors(vh)).materialize();
    let mut inputs = Vec::new();
    let mut neighborhoods = Vec::new();
    for g in &inst.inputs {
        let v = g.vertex(h.id(vh))?;
        let nv = g.neighbors(v).to_vec();
        inputs.push(SwitchedGraph::new(g, &nv).materialize());
        neighborhoods.push(nv);
    }
    let switched = SunflowerInstance::new(switched_h, inputs);
    let diagrams = match sunflower_perm(&switched)? {
        Ok(d) => d,
        Err(e) => return Ok(Err(e)),
    };
    let out: Vec<CPermDiagram> = diagrams
        .iter()
        .zip(&neighborhoods)
        .zip(&inst.inputs)
        .map(|((d, nv), g)| {
            let c = switch_chords(&CPermDiagram::close(d), nv);
            assert!(c.realizes(g), "switched-back diagram does not realize its input");
            c
        })
        .collect();
    Ok(Ok(out))
}
