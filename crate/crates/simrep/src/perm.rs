//! Permutation diagrams, their correspondence with modular decompositions,
//! partial representation extension and simultaneous representations.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Graph, SunflowerInstance};
use crate::mdecomp::{MdTree, NodeKind, Quotient, QuotientOrientation};
use crate::orient::{default_orientations, forcing_orientation};
use crate::simorient::{
    build_constraints, complete_orders, intersect_constraints, prime_choice, restrict_all,
    DecompView, PrimeDefault,
};
use crate::twosat::solve;

const ABSENT: usize = usize::MAX;

/// Two total orders of the same element set: the top and bottom lines.
/// Elements are indices below a fixed universe size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermDiagram {
    top: Vec<usize>,
    bottom: Vec<usize>,
    tpos: Vec<usize>,
    bpos: Vec<usize>,
}

impl PermDiagram {
    pub fn new(universe: usize, top: Vec<usize>, bottom: Vec<usize>) -> Result<PermDiagram> {
        if top.len() != bottom.len() {
            return Err(Error::InvalidDiagram("lines have different lengths".into()));
        }
        let mut tpos = vec![ABSENT; universe];
        let mut bpos = vec![ABSENT; universe];
        for (i, &e) in top.iter().enumerate() {
            if e >= universe || tpos[e] != ABSENT {
                return Err(Error::InvalidDiagram(format!("element {e} repeated on top line")));
            }
            tpos[e] = i;
        }
        for (i, &e) in bottom.iter().enumerate() {
            if e >= universe || bpos[e] != ABSENT || tpos[e] == ABSENT {
                return Err(Error::InvalidDiagram(format!(
                    "element {e} repeated or missing on a line"
                )));
            }
            bpos[e] = i;
        }
        Ok(PermDiagram { top, bottom, tpos, bpos })
    }

    /// Diagram over all of `0..top.len()`.
    pub fn full(top: Vec<usize>, bottom: Vec<usize>) -> Result<PermDiagram> {
        PermDiagram::new(top.len(), top, bottom)
    }

    pub fn from_ids<S: AsRef<str>>(g: &Graph, top: &[S], bottom: &[S]) -> Result<PermDiagram> {
        let t = top.iter().map(|s| g.vertex(s.as_ref())).collect::<Result<Vec<_>>>()?;
        let b = bottom.iter().map(|s| g.vertex(s.as_ref())).collect::<Result<Vec<_>>>()?;
        PermDiagram::new(g.n(), t, b)
    }

    pub fn universe(&self) -> usize {
        self.tpos.len()
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    pub fn top(&self) -> &[usize] {
        &self.top
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.universe() && self.tpos[e] != ABSENT
    }

    pub fn top_pos(&self, e: usize) -> usize {
        self.tpos[e]
    }

    pub fn bottom_pos(&self, e: usize) -> usize {
        self.bpos[e]
    }

    /// Whether the segments of `a` and `b` cross.
    pub fn crosses(&self, a: usize, b: usize) -> bool {
        (self.tpos[a] < self.tpos[b]) != (self.bpos[a] < self.bpos[b])
    }

    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> PermDiagram {
        let t = self.top.iter().copied().filter(|&e| keep(e)).collect();
        let b = self.bottom.iter().copied().filter(|&e| keep(e)).collect();
        PermDiagram::new(self.universe(), t, b).expect("restriction of a valid diagram")
    }

    /// Renames every element through `f` into a universe of size `universe`.
    pub fn map(&self, universe: usize, f: impl Fn(usize) -> usize) -> Result<PermDiagram> {
        PermDiagram::new(
            universe,
            self.top.iter().map(|&e| f(e)).collect(),
            self.bottom.iter().map(|&e| f(e)).collect(),
        )
    }

    pub fn reversed_both(&self) -> PermDiagram {
        let mut t = self.top.clone();
        let mut b = self.bottom.clone();
        t.reverse();
        b.reverse();
        PermDiagram::new(self.universe(), t, b).unwrap()
    }

    pub fn swapped(&self) -> PermDiagram {
        PermDiagram::new(self.universe(), self.bottom.clone(), self.top.clone()).unwrap()
    }

    /// Whether this diagram is over exactly the vertices of `g` and realizes it.
    pub fn realizes(&self, g: &Graph) -> bool {
        self.universe() == g.n() && self.len() == g.n() && self.realizes_induced(g)
    }

    /// Whether the crossings among present elements are the edges of `g` among them.
    pub fn realizes_induced(&self, g: &Graph) -> bool {
        let els = &self.top;
        for (i, &a) in els.iter().enumerate() {
            for &b in &els[i + 1..] {
                if self.crosses(a, b) != g.has_edge(a, b) {
                    return false;
                }
            }
        }
        true
    }

    /// Same relative order of `other`'s elements on both lines.
    pub fn extends(&self, other: &PermDiagram) -> bool {
        self.restrict(|e| other.contains(e)).top == other.top
            && self.restrict(|e| other.contains(e)).bottom == other.bottom
    }

    pub fn to_text(&self, names: &[String]) -> String {
        let line = |v: &[usize]| v.iter().map(|&e| names[e].as_str()).collect::<Vec<_>>().join(" ");
        format!("{}\n{}\n", line(&self.top), line(&self.bottom))
    }
}

impl fmt::Display for PermDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} / {:?}", self.top, self.bottom)
    }
}

/// The permutation graph of `d`; vertex `i` of the result is the `i`-th
/// present element in increasing order, named by `names`.
pub fn diagram_graph(d: &PermDiagram, names: &[String]) -> Graph {
    let mut els: Vec<usize> = d.top.clone();
    els.sort_unstable();
    let mut edges = Vec::new();
    for i in 0..els.len() {
        for j in i + 1..els.len() {
            if d.crosses(els[i], els[j]) {
                edges.push((i, j));
            }
        }
    }
    let ids = els.iter().map(|&e| names[e].clone()).collect();
    Graph::from_indices(ids, &edges).expect("crossing graph is simple")
}

fn check_quotient(q: &Quotient, d: &PermDiagram) -> Result<()> {
    if d.universe() != q.n() || d.len() != q.n() {
        return Err(Error::InvalidDiagram("quotient diagram not over the node's children".into()));
    }
    for a in 0..q.n() {
        for b in a + 1..q.n() {
            if d.crosses(a, b) != q.has_edge(a, b) {
                return Err(Error::InvalidDiagram(format!(
                    "quotient diagram disagrees on children {a} and {b}"
                )));
            }
        }
    }
    Ok(())
}

/// Splices per-node quotient diagrams into a diagram of the whole graph.
pub fn compose_diagram(t: &MdTree, per_node: &[Option<PermDiagram>]) -> Result<PermDiagram> {
    for u in t.inner_nodes() {
        let d = per_node
            .get(u)
            .and_then(|d| d.as_ref())
            .ok_or(Error::MissingOrientation(u))?;
        check_quotient(t.quotient(u).unwrap(), d)?;
    }
    let line = |top: bool| {
        let mut out = Vec::new();
        let mut stack = vec![t.root()];
        while let Some(u) = stack.pop() {
            if let Some(v) = t.node(u).vertex {
                out.push(v);
                continue;
            }
            let d = per_node[u].as_ref().unwrap();
            let order = if top { d.top() } else { d.bottom() };
            let kids = t.children(u);
            stack.extend(order.iter().rev().map(|&c| kids[c]));
        }
        out
    };
    let (top, bottom) = (line(true), line(false));
    PermDiagram::full(top, bottom)
}

/// Inverse of [`compose_diagram`] for a diagram realizing `g`.
pub fn decompose_diagram(g: &Graph, t: &MdTree, d: &PermDiagram) -> Result<Vec<Option<PermDiagram>>> {
    if !d.realizes(g) {
        return Err(Error::InvalidDiagram("diagram does not realize the graph".into()));
    }
    let mut out = vec![None; t.len()];
    for u in t.inner_nodes() {
        let reps = t.mu_set(u);
        let mut top: Vec<usize> = (0..reps.len()).collect();
        let mut bottom = top.clone();
        top.sort_unstable_by_key(|&c| d.top_pos(reps[c]));
        bottom.sort_unstable_by_key(|&c| d.bottom_pos(reps[c]));
        out[u] = Some(PermDiagram::full(top, bottom)?);
    }
    Ok(out)
}

/// Default diagram of a prime quotient: the top line follows `d` on edges and
/// the complement's forcing orientation on non-edges; the bottom line reverses
/// `d`. `None` if the complement is not transitively orientable.
pub fn prime_diagram(q: &Quotient, d: &QuotientOrientation) -> Option<PermDiagram> {
    let k = q.n();
    let mut cadj = vec![Vec::new(); k];
    let mut cedges = Vec::new();
    for (a, row) in cadj.iter_mut().enumerate() {
        for b in 0..k {
            if a != b && !q.has_edge(a, b) {
                row.push(b);
                if a < b {
                    cedges.push((a, b));
                }
            }
        }
    }
    let cindex = |a: usize, b: usize| {
        let (x, y) = (a.min(b), a.max(b));
        cedges.binary_search(&(x, y)).ok()
    };
    let pbar = forcing_orientation(&cadj, &cedges, cindex)?;
    let before = |a: usize, b: usize, reverse: bool| -> bool {
        match q.edge_index(a, b) {
            Some(e) => (d[e] == (a < b)) != reverse,
            None => pbar[cindex(a, b).unwrap()] == (a < b),
        }
    };
    let order = |reverse: bool| {
        let mut v: Vec<usize> = (0..k).collect();
        v.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if before(a, b, reverse) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        v
    };
    let diagram = PermDiagram::full(order(false), order(true)).ok()?;
    debug_assert!(check_quotient(q, &diagram).is_ok());
    Some(diagram)
}

/// Per-node default orientations and diagrams, indexed by MD node.
pub type Defaults = (Vec<Option<QuotientOrientation>>, Vec<Option<PermDiagram>>);

/// Default orientations and default diagrams of every prime node, or `None`
/// if the graph is not a permutation graph.
pub fn default_diagrams(t: &MdTree) -> Option<Defaults> {
    let arcs = default_orientations(t).ok()?;
    let mut diagrams = vec![None; t.len()];
    for u in t.nodes_of_kind(NodeKind::Prime) {
        diagrams[u] = Some(prime_diagram(t.quotient(u).unwrap(), arcs[u].as_ref().unwrap())?);
    }
    Some((arcs, diagrams))
}

/// The four diagrams of a prime quotient, in the fixed order identity,
/// reverse-both, swap-lines, both.
pub fn prime_candidates(d: &PermDiagram) -> [PermDiagram; 4] {
    [d.clone(), d.reversed_both(), d.swapped(), d.swapped().reversed_both()]
}

/// Diagram of a prime quotient whose graph orientation is the default iff
/// `x` and whose complement orientation is the default iff `y`.
pub fn prime_case(d: &PermDiagram, x: bool, y: bool) -> PermDiagram {
    let [id, rev, swap, both] = prime_candidates(d);
    match (x, y) {
        (true, true) => id,
        (false, false) => rev,
        (false, true) => swap,
        (true, false) => both,
    }
}

/// Extends a partial diagram of `G[W]` to a diagram of `g`; `Ok(None)` if no
/// extension exists. Errors if `partial` does not realize `G[W]`.
pub fn rep_ext_perm(g: &Graph, partial: &PermDiagram) -> Result<Option<PermDiagram>> {
    if partial.universe() != g.n() {
        return Err(Error::PartialMismatch("diagram universe differs from the graph".into()));
    }
    if !partial.realizes_induced(g) {
        return Err(Error::PartialMismatch("crossings differ from the induced subgraph".into()));
    }
    if g.n() == 0 {
        return Ok(Some(partial.clone()));
    }
    let t = MdTree::build(g)?;
    let Some((_, defaults)) = default_diagrams(&t) else {
        return Ok(None);
    };
    rep_ext_perm_with(g, &t, &defaults, partial)
}

/// [`rep_ext_perm`] with a precomputed decomposition and default diagrams.
pub fn rep_ext_perm_with(
    g: &Graph,
    t: &MdTree,
    defaults: &[Option<PermDiagram>],
    partial: &PermDiagram,
) -> Result<Option<PermDiagram>> {
    let len = t.len();
    let mut best = vec![ABSENT; len];
    for u in (0..len).rev() {
        best[u] = match t.node(u).vertex {
            Some(v) if partial.contains(v) => v,
            Some(_) => ABSENT,
            None => t.children(u).iter().map(|&c| best[c]).min().unwrap(),
        };
    }
    let mut per_node = vec![None; len];
    for u in t.inner_nodes() {
        let kids = t.children(u);
        let k = kids.len();
        let reps: Vec<usize> = kids.iter().map(|&c| best[c]).collect();
        let mut sub_top: Vec<usize> = (0..k).filter(|&c| reps[c] != ABSENT).collect();
        let mut sub_bottom = sub_top.clone();
        sub_top.sort_unstable_by_key(|&c| partial.top_pos(reps[c]));
        sub_bottom.sort_unstable_by_key(|&c| partial.bottom_pos(reps[c]));
        let sub = PermDiagram::new(k, sub_top.clone(), sub_bottom)?;
        let rest = (0..k).filter(|&c| reps[c] == ABSENT);
        let d = match t.kind(u) {
            NodeKind::Empty | NodeKind::Complete => {
                let mut top = sub_top;
                top.extend(rest);
                let mut bottom = top.clone();
                if t.kind(u) == NodeKind::Complete {
                    bottom.reverse();
                }
                let d = PermDiagram::full(top, bottom)?;
                if !d.extends(&sub) {
                    return Ok(None);
                }
                d
            }
            NodeKind::Prime => {
                let base = defaults[u].as_ref().expect("prime default diagram");
                match prime_candidates(base).into_iter().find(|c| c.extends(&sub)) {
                    Some(d) => d,
                    None => return Ok(None),
                }
            }
            NodeKind::Leaf => unreachable!(),
        };
        per_node[u] = Some(d);
    }
    let d = compose_diagram(t, &per_node)?;
    assert!(d.realizes(g), "composed diagram does not realize the graph");
    Ok(d.extends(partial).then_some(d))
}

/// Why a sunflower instance has no simultaneous permutation representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepInfeasible {
    NotPermutation { input: Option<usize> },
    NullTree { node: usize, complement: bool },
    Unsat,
}

impl fmt::Display for RepInfeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepInfeasible::NotPermutation { input: Some(i) } => {
                write!(f, "not-permutation@G{}", i + 1)
            }
            RepInfeasible::NotPermutation { input: None } => write!(f, "not-permutation@H"),
            RepInfeasible::NullTree { node, complement: false } => write!(f, "null-tree@{node}"),
            RepInfeasible::NullTree { node, complement: true } => {
                write!(f, "null-tree@{node}(complement)")
            }
            RepInfeasible::Unsat => write!(f, "unsat"),
        }
    }
}

fn top_positions(d: &[Option<PermDiagram>]) -> Vec<Option<PrimeDefault>> {
    d.iter()
        .map(|x| {
            x.as_ref().map(|d| PrimeDefault::Diagram((0..d.len()).map(|c| d.top_pos(c)).collect()))
        })
        .collect()
}

/// Permutation diagrams of all inputs agreeing on the shared graph.
pub fn sunflower_perm(
    inst: &SunflowerInstance,
) -> Result<std::result::Result<Vec<PermDiagram>, RepInfeasible>> {
    inst.validate().map_err(Error::NotSunflower)?;
    let h = &inst.shared;
    let mut trees = Vec::new();
    let mut diagrams = Vec::new();
    for (i, g) in inst.inputs.iter().enumerate() {
        let t = MdTree::build(g)?;
        let Some((_, d)) = default_diagrams(&t) else {
            return Ok(Err(RepInfeasible::NotPermutation { input: Some(i) }));
        };
        trees.push(t);
        diagrams.push(d);
    }
    if h.n() == 0 {
        let mut out = Vec::new();
        for ((g, t), d) in inst.inputs.iter().zip(&trees).zip(&diagrams) {
            let empty = PermDiagram::new(g.n(), Vec::new(), Vec::new())?;
            out.push(rep_ext_perm_with(g, t, d, &empty)?.expect("empty partial always extends"));
        }
        return Ok(Ok(out));
    }
    let b = MdTree::build(h)?;
    let Some((_, b_diagrams)) = default_diagrams(&b) else {
        return Ok(Err(RepInfeasible::NotPermutation { input: None }));
    };
    let restricted = restrict_all(inst, &trees)?;
    let b_def = top_positions(&b_diagrams);
    let t_defs: Vec<Vec<Option<PrimeDefault>>> = diagrams.iter().map(|d| top_positions(d)).collect();
    let mut cmds = Vec::new();
    for complement in [false, true] {
        let ns = if complement { "c" } else { "" };
        let bv = DecompView { tree: &b, complement, defaults: &b_def };
        let cs: Vec<_> = restricted
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let tv = DecompView { tree: &trees[i], complement, defaults: &t_defs[i] };
                build_constraints(&bv, r, &tv, i, ns)
            })
            .collect();
        let cmd = intersect_constraints(&cs)?;
        if let Some(node) = cmd.null_at {
            return Ok(Err(RepInfeasible::NullTree { node, complement }));
        }
        cmds.push(cmd);
    }
    let mut joint = cmds[0].formula.clone();
    joint.merge(&cmds[1].formula);
    let Some(assignment) = solve(&joint) else {
        return Ok(Err(RepInfeasible::Unsat));
    };
    let project = |cmd: &crate::simorient::ConstrainedMd| -> Vec<bool> {
        (0..cmd.formula.num_vars())
            .map(|v| assignment[joint.lookup(cmd.formula.name(v)).unwrap()])
            .collect()
    };
    let (ag, ac) = (project(&cmds[0]), project(&cmds[1]));
    let g_orders = complete_orders(&cmds[0], &ag);
    let c_orders = complete_orders(&cmds[1], &ac);
    let mut per_node = vec![None; b.len()];
    for mu in b.inner_nodes() {
        per_node[mu] = Some(match b.kind(mu) {
            NodeKind::Complete => {
                let top = g_orders[mu].clone().expect("complete order");
                let mut bottom = top.clone();
                bottom.reverse();
                PermDiagram::full(top, bottom)?
            }
            NodeKind::Empty => {
                let top = c_orders[mu].clone().expect("complement order");
                PermDiagram::full(top.clone(), top)?
            }
            NodeKind::Prime => {
                let x = prime_choice(&cmds[0], &ag, mu);
                let y = prime_choice(&cmds[1], &ac, mu);
                prime_case(b_diagrams[mu].as_ref().unwrap(), x, y)
            }
            NodeKind::Leaf => unreachable!(),
        });
    }
    let dh = compose_diagram(&b, &per_node)?;
    assert!(dh.realizes(h), "shared diagram does not realize the shared graph");
    let mut out = Vec::new();
    for ((g, t), d) in inst.inputs.iter().zip(&trees).zip(&diagrams) {
        let map = g.embed(h)?;
        let partial = dh.map(g.n(), |v| map[v])?;
        let full = rep_ext_perm_with(g, t, d, &partial)?
            .expect("shared diagram extends to every input");
        out.push(full);
    }
    Ok(Ok(out))
}
