//! Transitive orientations: default orientations of prime quotients,
//! recognition, and extension of partial orientations.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::graph::{is_transitive, Graph, Orientation, PartialOrientation};
use crate::mdecomp::{orientations_from_tree, MdTree, NodeKind, QuotientOrientation};

const BITSET_LIMIT: usize = 8192;

/// Why a partial orientation has no transitive extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Infeasible {
    /// Two arcs of the partial orientation orient one quotient edge both ways.
    Conflict { first: (usize, usize), second: (usize, usize) },
    /// The arcs lifted to a complete node form a cycle.
    CyclicComplete { node: usize },
    /// Neither orientation of a prime quotient contains the lifted arcs.
    PrimeMismatch { node: usize },
    /// A prime quotient has no transitive orientation.
    NotComparability { node: usize },
}

impl Infeasible {
    pub fn describe(&self, g: &Graph) -> String {
        match self {
            Infeasible::Conflict { first, second } => format!(
                "conflict {}->{} {}->{}",
                g.id(first.0),
                g.id(first.1),
                g.id(second.0),
                g.id(second.1)
            ),
            Infeasible::CyclicComplete { node } => format!("cycle@{node}"),
            Infeasible::PrimeMismatch { node } => format!("prime-mismatch@{node}"),
            Infeasible::NotComparability { node } => format!("not-comparability@{node}"),
        }
    }
}

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasible::Conflict { first, second } => {
                write!(f, "conflict {}->{} {}->{}", first.0, first.1, second.0, second.1)
            }
            Infeasible::CyclicComplete { node } => write!(f, "cycle@{node}"),
            Infeasible::PrimeMismatch { node } => write!(f, "prime-mismatch@{node}"),
            Infeasible::NotComparability { node } => write!(f, "not-comparability@{node}"),
        }
    }
}

/// One transitive orientation of a prime graph, or `None` if it has none.
///
/// Deterministic: the first edge is oriented from its lower endpoint and the
/// rest is forced. Also correct as a recognizer for any graph whose forcing
/// classes close under a single seed.
pub fn prime_default_orientation(q: &Graph) -> Option<Orientation> {
    let edges = q.edge_list();
    forcing_orientation(q.adjacency(), &edges, |a, b| q.edge_index(a, b))
        .map(Orientation::from_forward)
}

/// Forcing-based orientation over a sorted adjacency; `forward[e]` means
/// `edges[e].0 -> edges[e].1`. The result is verified to be transitive.
pub(crate) fn forcing_orientation(
    adj: &[Vec<usize>],
    edges: &[(usize, usize)],
    edge_of: impl Fn(usize, usize) -> Option<usize>,
) -> Option<Vec<bool>> {
    let k = adj.len();
    let m = edges.len();
    let dense = k <= BITSET_LIMIT && 64 * m >= k * k / 2;
    let dir = if dense {
        force_dense(adj, edges, &edge_of)?
    } else {
        force_sparse(adj, edges, &edge_of)?
    };
    let forward: Vec<bool> = dir.iter().map(|&d| d == 1).collect();
    let ok = if dense {
        transitive_arcs_dense(k, edges, &forward)
    } else {
        transitive_arcs(k, edges, &forward)
    };
    if ok {
        Some(forward)
    } else {
        None
    }
}

fn transitive_arcs(k: usize, edges: &[(usize, usize)], forward: &[bool]) -> bool {
    let mut out = vec![Vec::new(); k];
    for (&(a, b), &f) in edges.iter().zip(forward) {
        if f {
            out[a].push(b);
        } else {
            out[b].push(a);
        }
    }
    let mut mark = vec![usize::MAX; k];
    for u in 0..k {
        for &v in &out[u] {
            mark[v] = u;
        }
        for &v in &out[u] {
            if out[v].iter().any(|&w| mark[w] != u) {
                return false;
            }
        }
    }
    true
}

fn transitive_arcs_dense(k: usize, edges: &[(usize, usize)], forward: &[bool]) -> bool {
    let mut out: Vec<FixedBitSet> = (0..k).map(|_| FixedBitSet::with_capacity(k)).collect();
    for (&(a, b), &f) in edges.iter().zip(forward) {
        let (u, v) = if f { (a, b) } else { (b, a) };
        out[u].insert(v);
    }
    edges.iter().zip(forward).all(|(&(a, b), &f)| {
        let (u, v) = if f { (a, b) } else { (b, a) };
        out[v].is_subset(&out[u])
    })
}

/// 0 = unset, 1 = edges[e].0 -> edges[e].1, 2 = reverse.
fn set_arc(
    dir: &mut [u8],
    edges: &[(usize, usize)],
    e: usize,
    tail: usize,
    queue: &mut VecDeque<usize>,
) -> bool {
    let want = if edges[e].0 == tail { 1 } else { 2 };
    match dir[e] {
        0 => {
            dir[e] = want;
            queue.push_back(e);
            true
        }
        d => d == want,
    }
}

fn force_sparse(
    adj: &[Vec<usize>],
    edges: &[(usize, usize)],
    edge_of: &impl Fn(usize, usize) -> Option<usize>,
) -> Option<Vec<u8>> {
    let mut dir = vec![0u8; edges.len()];
    let mut queue = VecDeque::new();
    for seed in 0..edges.len() {
        if dir[seed] != 0 {
            continue;
        }
        dir[seed] = 1;
        queue.push_back(seed);
        while let Some(e) = queue.pop_front() {
            let (u, v) = if dir[e] == 1 { edges[e] } else { (edges[e].1, edges[e].0) };
            let (nu, nv) = (&adj[u], &adj[v]);
            let (mut i, mut j) = (0, 0);
            while i < nu.len() || j < nv.len() {
                let a = nu.get(i).copied().unwrap_or(usize::MAX);
                let b = nv.get(j).copied().unwrap_or(usize::MAX);
                if a < b {
                    if a != v {
                        let f = edge_of(u, a).expect("adjacent");
                        if !set_arc(&mut dir, edges, f, u, &mut queue) {
                            return None;
                        }
                    }
                    i += 1;
                } else if b < a {
                    if b != u {
                        let f = edge_of(b, v).expect("adjacent");
                        if !set_arc(&mut dir, edges, f, b, &mut queue) {
                            return None;
                        }
                    }
                    j += 1;
                } else {
                    i += 1;
                    j += 1;
                }
            }
        }
    }
    Some(dir)
}

fn force_dense(
    adj: &[Vec<usize>],
    edges: &[(usize, usize)],
    edge_of: &impl Fn(usize, usize) -> Option<usize>,
) -> Option<Vec<u8>> {
    let k = adj.len();
    let row = |list: &[usize]| {
        let mut b = FixedBitSet::with_capacity(k);
        for &x in list {
            b.insert(x);
        }
        b
    };
    let nbr: Vec<FixedBitSet> = adj.iter().map(|l| row(l)).collect();
    let mut out: Vec<FixedBitSet> = (0..k).map(|_| FixedBitSet::with_capacity(k)).collect();
    let mut inn: Vec<FixedBitSet> = (0..k).map(|_| FixedBitSet::with_capacity(k)).collect();
    let mut dir = vec![0u8; edges.len()];
    let mut queue = VecDeque::new();
    let mut scratch = FixedBitSet::with_capacity(k);
    for seed in 0..edges.len() {
        if dir[seed] != 0 {
            continue;
        }
        dir[seed] = 1;
        let (a, b) = edges[seed];
        out[a].insert(b);
        inn[b].insert(a);
        queue.push_back(seed);
        while let Some(e) = queue.pop_front() {
            let (u, v) = if dir[e] == 1 { edges[e] } else { (edges[e].1, edges[e].0) };
            // u -> w for w in N(u) \ N[v]
            scratch.clone_from(&nbr[u]);
            scratch.difference_with(&nbr[v]);
            scratch.set(v, false);
            if scratch.intersection(&inn[u]).next().is_some() {
                return None;
            }
            scratch.difference_with(&out[u]);
            for w in scratch.ones() {
                let f = edge_of(u, w).expect("adjacent");
                dir[f] = if edges[f].0 == u { 1 } else { 2 };
                out[u].insert(w);
                inn[w].insert(u);
                queue.push_back(f);
            }
            // w -> v for w in N(v) \ N[u]
            scratch.clone_from(&nbr[v]);
            scratch.difference_with(&nbr[u]);
            scratch.set(u, false);
            if scratch.intersection(&out[v]).next().is_some() {
                return None;
            }
            scratch.difference_with(&inn[v]);
            for w in scratch.ones() {
                let f = edge_of(w, v).expect("adjacent");
                dir[f] = if edges[f].0 == w { 1 } else { 2 };
                out[w].insert(v);
                inn[v].insert(w);
                queue.push_back(f);
            }
        }
    }
    Some(dir)
}

/// Default orientation of every prime quotient of `t`; `Err(node)` names a
/// prime node whose quotient is not transitively orientable.
pub fn default_orientations(
    t: &MdTree,
) -> std::result::Result<Vec<Option<QuotientOrientation>>, usize> {
    let mut out = vec![None; t.len()];
    for u in t.nodes_of_kind(NodeKind::Prime) {
        let q = t.quotient(u).unwrap();
        let d = forcing_orientation(q.adjacency(), q.edges(), |a, b| q.edge_index(a, b))
            .ok_or(u)?;
        out[u] = Some(d);
    }
    Ok(out)
}

pub fn recognize_comparability(g: &Graph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let t = MdTree::build(g).expect("nonempty");
    default_orientations(&t).is_ok()
}

/// Partial orientation of the quotients: per node, quotient edge -> direction
/// (true means `edges[q].0 -> edges[q].1`).
#[derive(Clone, Debug, Default)]
pub struct LiftedPartial {
    pub per_node: HashMap<usize, HashMap<usize, bool>>,
}

impl LiftedPartial {
    pub fn node(&self, u: usize) -> Option<&HashMap<usize, bool>> {
        self.per_node.get(&u)
    }

    pub fn is_empty(&self) -> bool {
        self.per_node.is_empty()
    }
}

/// Maps every arc of `w` to its representing quotient edge.
pub fn lift_partial(
    g: &Graph,
    t: &MdTree,
    w: &PartialOrientation,
) -> std::result::Result<LiftedPartial, Infeasible> {
    let ends = g.edge_list();
    let mut lifted = LiftedPartial::default();
    let mut witness: HashMap<(usize, usize), usize> = HashMap::new();
    let arc = |e: usize, f: bool| if f { ends[e] } else { (ends[e].1, ends[e].0) };
    for (e, f) in w.iter() {
        let r = t.edge_rep(e);
        let (a, b) = t.quotient(r.node).unwrap().edges()[r.qedge];
        let tail_child = if f { r.u_child } else { r.v_child };
        let qdir = tail_child == a;
        debug_assert!(tail_child == a || tail_child == b);
        let slot = lifted.per_node.entry(r.node).or_default();
        match slot.get(&r.qedge) {
            Some(&d) if d != qdir => {
                let e0 = witness[&(r.node, r.qedge)];
                return Err(Infeasible::Conflict {
                    first: arc(e0, w.get(e0).unwrap()),
                    second: arc(e, f),
                });
            }
            Some(_) => {}
            None => {
                slot.insert(r.qedge, qdir);
                witness.insert((r.node, r.qedge), e);
            }
        }
    }
    Ok(lifted)
}

/// Transitive orientation of `g` containing `w`, or the reason none exists.
pub fn orient_ext(
    g: &Graph,
    w: &PartialOrientation,
) -> std::result::Result<Orientation, Infeasible> {
    if g.n() == 0 {
        return Ok(Orientation::from_forward(Vec::new()));
    }
    let t = MdTree::build(g).expect("nonempty");
    let defaults =
        default_orientations(&t).map_err(|node| Infeasible::NotComparability { node })?;
    orient_ext_with(g, &t, &defaults, w)
}

/// [`orient_ext`] with a precomputed decomposition and default orientations.
pub fn orient_ext_with(
    g: &Graph,
    t: &MdTree,
    defaults: &[Option<QuotientOrientation>],
    w: &PartialOrientation,
) -> std::result::Result<Orientation, Infeasible> {
    let lifted = lift_partial(g, t, w)?;
    let mut per_node: Vec<Option<QuotientOrientation>> = vec![None; t.len()];
    let none = HashMap::new();
    for u in t.inner_nodes() {
        let q = t.quotient(u).unwrap();
        let p = lifted.node(u).unwrap_or(&none);
        per_node[u] = match t.kind(u) {
            NodeKind::Empty | NodeKind::Leaf => None,
            NodeKind::Complete => {
                let k = q.n();
                let mut indeg = vec![0usize; k];
                let mut succ = vec![Vec::new(); k];
                for (&qe, &d) in p {
                    let (a, b) = q.edges()[qe];
                    let (x, y) = if d { (a, b) } else { (b, a) };
                    succ[x].push(y);
                    indeg[y] += 1;
                }
                let mut heap: BinaryHeap<Reverse<usize>> =
                    (0..k).filter(|&x| indeg[x] == 0).map(Reverse).collect();
                let mut pos = vec![0usize; k];
                let mut seen = 0;
                while let Some(Reverse(x)) = heap.pop() {
                    pos[x] = seen;
                    seen += 1;
                    for &y in &succ[x] {
                        indeg[y] -= 1;
                        if indeg[y] == 0 {
                            heap.push(Reverse(y));
                        }
                    }
                }
                if seen < k {
                    return Err(Infeasible::CyclicComplete { node: u });
                }
                Some(q.edges().iter().map(|&(a, b)| pos[a] < pos[b]).collect())
            }
            NodeKind::Prime => {
                let d = defaults[u].as_ref().expect("prime default");
                let agree = p.iter().all(|(&qe, &x)| d[qe] == x);
                let disagree = p.iter().all(|(&qe, &x)| d[qe] != x);
                if agree {
                    Some(d.clone())
                } else if disagree {
                    Some(d.iter().map(|&x| !x).collect())
                } else {
                    return Err(Infeasible::PrimeMismatch { node: u });
                }
            }
        };
    }
    let o = orientations_from_tree(g, t, &per_node).expect("every quotient assigned");
    assert!(is_transitive(g, &o), "orient_ext produced a non-transitive orientation");
    assert!(o.extends(w), "orient_ext dropped an arc of the partial orientation");
    Ok(o)
}
