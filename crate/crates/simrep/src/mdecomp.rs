//! Canonical modular decomposition with annotated quotient graphs, and
//! restriction of a decomposition to an induced subgraph.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;

use modular_decomposition::{modular_decomposition, ModuleKind};
use petgraph::graph::UnGraph;

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};
use crate::lca::{child_towards, TreeIndex};
use crate::radix::radix_sort_by;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Leaf,
    Empty,
    Complete,
    Prime,
}

impl NodeKind {
    /// Kind of the same node in the decomposition of the complement graph.
    pub fn complemented(self) -> NodeKind {
        match self {
            NodeKind::Empty => NodeKind::Complete,
            NodeKind::Complete => NodeKind::Empty,
            k => k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::Leaf => "LEAF",
            NodeKind::Empty => "EMPTY",
            NodeKind::Complete => "COMPLETE",
            NodeKind::Prime => "PRIME",
        }
    }
}

/// Orientation of a quotient graph: entry `q` is true when quotient edge
/// `edges[q] = (a, b)` (with `a < b`) points `a -> b`.
pub type QuotientOrientation = Vec<bool>;

/// Quotient graph of an inner node over its children `0..k`.
#[derive(Clone, Debug)]
pub struct Quotient {
    adj: Vec<Vec<usize>>,
    adj_edge: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    rep_start: Vec<usize>,
    rep_edges: Vec<usize>,
}

impl Quotient {
    fn new(k: usize) -> Quotient {
        Quotient {
            adj: vec![Vec::new(); k],
            adj_edge: vec![Vec::new(); k],
            edges: Vec::new(),
            rep_start: vec![0],
            rep_edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.adj[a]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let p = self.adj[a].binary_search(&b).ok()?;
        Some(self.adj_edge[a][p])
    }

    /// Original edges (by edge index) represented by quotient edge `q`.
    pub fn represented(&self, q: usize) -> &[usize] {
        &self.rep_edges[self.rep_start[q]..self.rep_start[q + 1]]
    }

    /// The quotient as a standalone graph with vertices named `0..k`.
    pub fn to_graph(&self) -> Graph {
        Graph::numbered(self.n(), &self.edges).expect("quotient is simple")
    }
}

#[derive(Clone, Debug)]
pub struct MdNode {
    pub kind: NodeKind,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub vertex: Option<usize>,
}

/// Where an original edge lives in the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RepEdge {
    /// Lowest common ancestor of the endpoints.
    pub node: usize,
    /// Index of the representing quotient edge of `node`.
    pub qedge: usize,
    /// Child position of `node` containing the first endpoint.
    pub u_child: usize,
    /// Child position of `node` containing the second endpoint.
    pub v_child: usize,
}

#[derive(Clone, Copy, Debug)]
struct EdgeSlot {
    node: u32,
    qedge: u32,
    low_in_first: bool,
}

/// Canonical modular decomposition tree. Nodes are numbered in preorder and
/// children are ordered by their smallest vertex.
#[derive(Clone, Debug)]
pub struct MdTree {
    nodes: Vec<MdNode>,
    leaf: Vec<usize>,
    quotients: Vec<Option<Quotient>>,
    edge_slot: Vec<EdgeSlot>,
    index: TreeIndex,
    leaf_order: Vec<usize>,
    span: Vec<(usize, usize)>,
    child_pos: Vec<usize>,
    mu_set: Vec<Vec<usize>>,
    non_edge: Vec<Option<(usize, usize)>>,
}

pub fn canonical_md(g: &Graph) -> Result<MdTree> {
    MdTree::build(g)
}

impl MdTree {
    pub fn build(g: &Graph) -> Result<MdTree> {
        let n = g.n();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let raw = raw_tree(g);
        Ok(Self::annotate(g, raw))
    }

    fn annotate(g: &Graph, raw: Vec<MdNode>) -> MdTree {
        let n = g.n();
        let mut min_v = vec![usize::MAX; raw.len()];
        let order = preorder(&raw, 0);
        for &u in order.iter().rev() {
            min_v[u] = match raw[u].vertex {
                Some(v) => v,
                None => raw[u].children.iter().map(|&c| min_v[c]).min().unwrap(),
            };
        }
        let mut sorted = raw;
        for node in sorted.iter_mut() {
            node.children.sort_unstable_by_key(|&c| min_v[c]);
        }
        let order = preorder(&sorted, 0);
        let mut relabel = vec![0; sorted.len()];
        for (i, &u) in order.iter().enumerate() {
            relabel[u] = i;
        }
        let mut nodes: Vec<MdNode> = order
            .iter()
            .map(|&u| {
                let old = &sorted[u];
                MdNode {
                    kind: old.kind,
                    parent: old.parent.map(|p| relabel[p]),
                    children: old.children.iter().map(|&c| relabel[c]).collect(),
                    vertex: old.vertex,
                }
            })
            .collect();
        nodes[0].parent = None;
        let min_v: Vec<usize> = order.iter().map(|&u| min_v[u]).collect();

        let len = nodes.len();
        let mut leaf = vec![0; n];
        let mut child_pos = vec![0; len];
        for (i, node) in nodes.iter().enumerate() {
            if let Some(v) = node.vertex {
                leaf[v] = i;
            }
            for (p, &c) in node.children.iter().enumerate() {
                child_pos[c] = p;
            }
        }
        let children: Vec<Vec<usize>> = nodes.iter().map(|x| x.children.clone()).collect();
        let index = TreeIndex::new(0, &children);

        let mut leaf_order = Vec::with_capacity(n);
        let mut span = vec![(0, 0); len];
        let mut size = vec![0usize; len];
        for u in (0..len).rev() {
            size[u] = if nodes[u].vertex.is_some() {
                1
            } else {
                nodes[u].children.iter().map(|&c| size[c]).sum()
            };
        }
        for (u, node) in nodes.iter().enumerate() {
            if let Some(v) = node.vertex {
                span[u] = (leaf_order.len(), 1);
                leaf_order.push(v);
            } else {
                span[u] = (leaf_order.len(), size[u]);
            }
        }

        let mu_set: Vec<Vec<usize>> = nodes
            .iter()
            .map(|x| x.children.iter().map(|&c| min_v[c]).collect())
            .collect();

        let mut slots: Vec<(usize, usize, usize, usize, bool)> = Vec::with_capacity(g.m());
        for (e, (u, v)) in g.edges().enumerate() {
            let l = index.lca(leaf[u], leaf[v]);
            let a = child_towards(&index, &nodes[l].children, leaf[u]);
            let b = child_towards(&index, &nodes[l].children, leaf[v]);
            if a < b {
                slots.push((l, a, b, e, true));
            } else {
                slots.push((l, b, a, e, false));
            }
        }
        let bound = len.max(n) + 1;
        radix_sort_by(
            &mut slots,
            bound,
            &[&|t: &(usize, usize, usize, usize, bool)| t.0, &|t| t.1, &|t| t.2],
        );
        let mut quotients: Vec<Option<Quotient>> = nodes
            .iter()
            .map(|x| if x.vertex.is_some() { None } else { Some(Quotient::new(x.children.len())) })
            .collect();
        let mut edge_slot =
            vec![EdgeSlot { node: 0, qedge: 0, low_in_first: true }; g.m()];
        let mut i = 0;
        while i < slots.len() {
            let (l, a, b, _, _) = slots[i];
            let q = quotients[l].as_mut().expect("lca is an inner node");
            let qe = q.edges.len();
            q.edges.push((a, b));
            q.adj[a].push(b);
            q.adj_edge[a].push(qe);
            q.adj[b].push(a);
            q.adj_edge[b].push(qe);
            while i < slots.len() && slots[i].0 == l && slots[i].1 == a && slots[i].2 == b {
                let (_, _, _, e, low_first) = slots[i];
                q.rep_edges.push(e);
                edge_slot[e] =
                    EdgeSlot { node: l as u32, qedge: qe as u32, low_in_first: low_first };
                i += 1;
            }
            q.rep_start.push(q.rep_edges.len());
        }

        let mut non_edge = vec![None; len];
        for (u, node) in nodes.iter().enumerate() {
            let Some(q) = &quotients[u] else { continue };
            let k = q.n();
            debug_assert!(match node.kind {
                NodeKind::Empty => q.m() == 0,
                NodeKind::Complete => q.m() == k * (k - 1) / 2,
                _ => true,
            });
            if node.kind == NodeKind::Prime {
                non_edge[u] = (0..k).find(|&a| q.adj[a].len() + 1 < k).map(|a| {
                    let b = (0..k).find(|&b| b != a && q.adj[a].binary_search(&b).is_err());
                    let b = b.expect("degree below k-1");
                    (a.min(b), a.max(b))
                });
            }
        }

        MdTree { nodes, leaf, quotients, edge_slot, index, leaf_order, span, child_pos, mu_set, non_edge }
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, u: usize) -> &MdNode {
        &self.nodes[u]
    }

    pub fn nodes(&self) -> &[MdNode] {
        &self.nodes
    }

    pub fn kind(&self, u: usize) -> NodeKind {
        self.nodes[u].kind
    }

    pub fn children(&self, u: usize) -> &[usize] {
        &self.nodes[u].children
    }

    pub fn parent(&self, u: usize) -> Option<usize> {
        self.nodes[u].parent
    }

    /// Position of `u` among its parent's children.
    pub fn child_position(&self, u: usize) -> usize {
        self.child_pos[u]
    }

    pub fn leaf_of(&self, v: usize) -> usize {
        self.leaf[v]
    }

    pub fn quotient(&self, u: usize) -> Option<&Quotient> {
        self.quotients[u].as_ref()
    }

    /// `L(u)`, the vertices below `u`, in preorder.
    pub fn leaves(&self, u: usize) -> &[usize] {
        let (s, l) = self.span[u];
        &self.leaf_order[s..s + l]
    }

    pub fn depth(&self, u: usize) -> usize {
        self.index.depth[u]
    }

    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.index.is_ancestor(a, b)
    }

    pub fn lca(&self, a: usize, b: usize) -> usize {
        self.index.lca(a, b)
    }

    pub fn lca_vertices(&self, u: usize, v: usize) -> usize {
        self.index.lca(self.leaf[u], self.leaf[v])
    }

    /// `rep_u(v)`: position of the child of `u` containing vertex `v`.
    pub fn rep_child(&self, u: usize, v: usize) -> usize {
        child_towards(&self.index, &self.nodes[u].children, self.leaf[v])
    }

    pub fn inner_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(move |&u| self.nodes[u].vertex.is_none())
    }

    pub fn nodes_of_kind(&self, kind: NodeKind) -> impl Iterator<Item = usize> + '_ {
        (0..self.nodes.len()).filter(move |&u| self.nodes[u].kind == kind)
    }

    /// Representation of edge `e` (by edge index) with `u_child` on its lower endpoint.
    pub fn edge_rep(&self, e: usize) -> RepEdge {
        let s = self.edge_slot[e];
        let (a, b) = self.quotients[s.node as usize].as_ref().unwrap().edges[s.qedge as usize];
        let (u_child, v_child) = if s.low_in_first { (a, b) } else { (b, a) };
        RepEdge { node: s.node as usize, qedge: s.qedge as usize, u_child, v_child }
    }

    /// The quotient edge representing `uv`, with `u_child` the child containing `u`.
    pub fn rep_edge(&self, g: &Graph, u: usize, v: usize) -> Result<RepEdge> {
        let e = g
            .edge_index(u, v)
            .ok_or_else(|| Error::NotAnEdge(g.id(u).to_string(), g.id(v).to_string()))?;
        let r = self.edge_rep(e);
        Ok(if u < v { r } else { RepEdge { u_child: r.v_child, v_child: r.u_child, ..r } })
    }

    /// One vertex per child of `u`, fixed at build time (the smallest vertex of each child).
    pub fn maximal_mu_set(&self, u: usize) -> Result<&[usize]> {
        if self.nodes[u].vertex.is_some() {
            return Err(Error::LeafNode(u));
        }
        Ok(&self.mu_set[u])
    }

    pub(crate) fn mu_set(&self, u: usize) -> &[usize] {
        &self.mu_set[u]
    }

    /// A non-adjacent pair of children of a prime node.
    pub fn non_edge(&self, u: usize) -> Option<(usize, usize)> {
        self.non_edge[u]
    }

    /// Human-readable dump: one line per node plus the quotient edges.
    pub fn dump(&self, g: &Graph) -> String {
        let mut out = String::new();
        let mut stack = vec![0usize];
        while let Some(u) = stack.pop() {
            let pad = "  ".repeat(self.depth(u));
            let node = &self.nodes[u];
            match node.vertex {
                Some(v) => {
                    let _ = writeln!(out, "{pad}LEAF {}", g.id(v));
                }
                None => {
                    let mut ids: Vec<&str> = self.leaves(u).iter().map(|&v| g.id(v)).collect();
                    ids.sort_unstable();
                    let _ = writeln!(out, "{pad}{} {{{}}}", node.kind.name(), ids.join(","));
                    let q = self.quotients[u].as_ref().unwrap();
                    if node.kind == NodeKind::Prime {
                        let es: Vec<String> =
                            q.edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
                        let _ = writeln!(out, "{pad}  quotient: {}", es.join(" "));
                    }
                }
            }
            for &c in node.children.iter().rev() {
                stack.push(c);
            }
        }
        out
    }
}

fn preorder(nodes: &[MdNode], root: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(nodes.len());
    let mut stack = vec![root];
    while let Some(u) = stack.pop() {
        out.push(u);
        for &c in nodes[u].children.iter().rev() {
            stack.push(c);
        }
    }
    out
}

fn raw_tree(g: &Graph) -> Vec<MdNode> {
    let n = g.n();
    if n == 1 {
        return vec![MdNode { kind: NodeKind::Leaf, parent: None, children: vec![], vertex: Some(0) }];
    }
    let mut pg = UnGraph::<(), ()>::with_capacity(n, g.m());
    for _ in 0..n {
        pg.add_node(());
    }
    for (u, v) in g.edges() {
        pg.add_edge((u as u32).into(), (v as u32).into(), ());
    }
    let md = modular_decomposition(&pg).expect("graph is non-empty");
    let mut nodes = Vec::with_capacity(2 * n);
    let mut stack = vec![(md.root(), None::<usize>)];
    while let Some((m, parent)) = stack.pop() {
        let id = nodes.len();
        let (kind, vertex) = match md.module_kind(m).expect("module exists") {
            ModuleKind::Prime => (NodeKind::Prime, None),
            ModuleKind::Series => (NodeKind::Complete, None),
            ModuleKind::Parallel => (NodeKind::Empty, None),
            ModuleKind::Node(x) => (NodeKind::Leaf, Some(x.index())),
        };
        nodes.push(MdNode { kind, parent, children: Vec::new(), vertex });
        if let Some(p) = parent {
            nodes[p].children.push(id);
        }
        for c in md.children(m) {
            stack.push((c, Some(id)));
        }
    }
    nodes
}

/// Orientation of `g` induced by one orientation per inner quotient.
/// Empty quotients may be left as `None`.
pub fn orientations_from_tree(
    g: &Graph,
    t: &MdTree,
    per_node: &[Option<QuotientOrientation>],
) -> Result<Orientation> {
    for u in t.inner_nodes() {
        let q = t.quotient(u).unwrap();
        let ok = match per_node.get(u).and_then(|x| x.as_ref()) {
            Some(o) => o.len() == q.m(),
            None => q.m() == 0,
        };
        if !ok {
            return Err(Error::MissingOrientation(u));
        }
    }
    let mut forward = Vec::with_capacity(g.m());
    for e in 0..g.m() {
        let s = t.edge_slot[e];
        let dir = per_node[s.node as usize].as_ref().unwrap()[s.qedge as usize];
        forward.push(dir == s.low_in_first);
    }
    Ok(Orientation::from_forward(forward))
}

/// Every orientation represented by `t`: each complete quotient ordered in
/// every possible way, each prime quotient by its default or the reversal.
/// Fails if more than `limit` combinations would be produced.
pub fn represented_orientations(
    g: &Graph,
    t: &MdTree,
    defaults: &[Option<QuotientOrientation>],
    limit: usize,
) -> Result<BTreeSet<Orientation>> {
    let mut choices: Vec<(usize, Vec<QuotientOrientation>)> = Vec::new();
    let mut total = 1usize;
    for u in t.inner_nodes() {
        let q = t.quotient(u).unwrap();
        let opts: Vec<QuotientOrientation> = match t.kind(u) {
            NodeKind::Empty => vec![Vec::new()],
            NodeKind::Complete => (0..q.n())
                .permutations(q.n())
                .map(|p| {
                    let mut pos = vec![0; q.n()];
                    for (i, &c) in p.iter().enumerate() {
                        pos[c] = i;
                    }
                    q.edges().iter().map(|&(a, b)| pos[a] < pos[b]).collect()
                })
                .collect(),
            NodeKind::Prime => {
                let d = defaults[u].clone().ok_or(Error::MissingOrientation(u))?;
                let r = d.iter().map(|x| !x).collect();
                vec![d, r]
            }
            NodeKind::Leaf => unreachable!(),
        };
        total = total.saturating_mul(opts.len());
        if total > limit {
            return Err(Error::Budget(format!("more than {limit} orientations")));
        }
        choices.push((u, opts));
    }
    let mut out = BTreeSet::new();
    let mut per_node = vec![None; t.len()];
    for combo in choices.iter().map(|(_, o)| 0..o.len()).multi_cartesian_product() {
        for (k, &i) in combo.iter().enumerate() {
            per_node[choices[k].0] = Some(choices[k].1[i].clone());
        }
        out.insert(orientations_from_tree(g, t, &per_node)?);
    }
    if choices.is_empty() {
        out.insert(orientations_from_tree(g, t, &per_node)?);
    }
    Ok(out)
}

/// Node of a restricted decomposition.
#[derive(Clone, Debug)]
pub struct RNode {
    pub label: NodeKind,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Vertex of `H` for leaves.
    pub vertex: Option<usize>,
    /// Node of the source tree this node stems from.
    pub stem: usize,
    /// For each child, the position of the corresponding child of `stem`.
    pub stem_child: Vec<usize>,
}

/// Restriction `T|_H` of a decomposition of `G` to an induced subgraph `H`.
///
/// Prime-labelled nodes take their default orientation from the node they
/// stem from; see [`RestrictedMd::default_orientation`].
#[derive(Clone, Debug)]
pub struct RestrictedMd {
    nodes: Vec<RNode>,
    leaf: Vec<usize>,
    to_g: Vec<usize>,
    index: TreeIndex,
}

/// Restricts `t` (the decomposition of `g`) to the vertices of `h`, matched by id.
pub fn restrict(t: &MdTree, g: &Graph, h: &Graph) -> Result<RestrictedMd> {
    RestrictedMd::build(t, g, h)
}

impl RestrictedMd {
    pub fn build(t: &MdTree, g: &Graph, h: &Graph) -> Result<RestrictedMd> {
        if h.n() == 0 {
            return Err(Error::EmptyGraph);
        }
        let to_g = g.embed(h)?;
        g.induces(h, &to_g).map_err(Error::InducedMismatch)?;
        let mut h_of = vec![usize::MAX; g.n()];
        for (i, &v) in to_g.iter().enumerate() {
            h_of[v] = i;
        }
        let len = t.len();
        let mut count = vec![0usize; len];
        let mut branching = vec![0usize; len];
        let mut top = vec![usize::MAX; len];
        for u in (0..len).rev() {
            let node = t.node(u);
            if let Some(v) = node.vertex {
                if h_of[v] != usize::MAX {
                    count[u] = 1;
                    top[u] = u;
                }
                continue;
            }
            let mut last = usize::MAX;
            for &c in &node.children {
                if count[c] > 0 {
                    count[u] += count[c];
                    branching[u] += 1;
                    last = c;
                }
            }
            if branching[u] >= 2 {
                top[u] = u;
            } else if branching[u] == 1 {
                top[u] = top[last];
            }
        }
        let kept: Vec<usize> = (0..len)
            .filter(|&u| count[u] > 0 && (t.node(u).vertex.is_some() || branching[u] >= 2))
            .collect();
        let mut new_id = vec![usize::MAX; len];
        for (i, &u) in kept.iter().enumerate() {
            new_id[u] = i;
        }
        let root_src = top[0];
        let mut nodes: Vec<RNode> = kept
            .iter()
            .map(|&u| {
                let src = t.node(u);
                let mut children = Vec::new();
                let mut stem_child = Vec::new();
                for (p, &c) in src.children.iter().enumerate() {
                    if count[c] > 0 {
                        children.push(new_id[top[c]]);
                        stem_child.push(p);
                    }
                }
                RNode {
                    label: src.kind,
                    parent: None,
                    children,
                    vertex: src.vertex.map(|v| h_of[v]),
                    stem: u,
                    stem_child,
                }
            })
            .collect();
        let root = new_id[root_src];
        debug_assert_eq!(root, 0);
        for i in 0..nodes.len() {
            for j in 0..nodes[i].children.len() {
                let c = nodes[i].children[j];
                nodes[c].parent = Some(i);
            }
        }
        let mut leaf = vec![0; h.n()];
        for (i, x) in nodes.iter().enumerate() {
            if let Some(v) = x.vertex {
                leaf[v] = i;
            }
        }
        let children: Vec<Vec<usize>> = nodes.iter().map(|x| x.children.clone()).collect();
        let index = TreeIndex::new(root, &children);
        Ok(RestrictedMd { nodes, leaf, to_g, index })
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, u: usize) -> &RNode {
        &self.nodes[u]
    }

    pub fn nodes(&self) -> &[RNode] {
        &self.nodes
    }

    pub fn label(&self, u: usize) -> NodeKind {
        self.nodes[u].label
    }

    pub fn leaf_of(&self, v: usize) -> usize {
        self.leaf[v]
    }

    /// Index in `G` of vertex `v` of `H`.
    pub fn to_g(&self, v: usize) -> usize {
        self.to_g[v]
    }

    pub fn lca(&self, a: usize, b: usize) -> usize {
        self.index.lca(a, b)
    }

    pub fn lca_vertices(&self, u: usize, v: usize) -> usize {
        self.index.lca(self.leaf[u], self.leaf[v])
    }

    pub fn rep_child(&self, u: usize, v: usize) -> usize {
        child_towards(&self.index, &self.nodes[u].children, self.leaf[v])
    }

    pub fn preorder_rank(&self, u: usize) -> usize {
        self.index.pre[u]
    }

    /// Position of the child of `u` on the path to its descendant `w`.
    pub fn child_toward(&self, u: usize, w: usize) -> usize {
        child_towards(&self.index, &self.nodes[u].children, w)
    }

    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.index.is_ancestor(a, b)
    }

    /// `D_u` for a prime-labelled node: arcs between child positions, taken
    /// from the source default orientation restricted to the edges of `H`.
    pub fn default_orientation(
        &self,
        u: usize,
        t: &MdTree,
        defaults: &[Option<QuotientOrientation>],
    ) -> Option<Vec<(usize, usize)>> {
        let node = &self.nodes[u];
        if node.label != NodeKind::Prime {
            return None;
        }
        let q = t.quotient(node.stem)?;
        let d = defaults[node.stem].as_ref()?;
        let k = node.children.len();
        let mut arcs = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let (a, b) = (node.stem_child[i], node.stem_child[j]);
                if let Some(e) = q.edge_index(a, b) {
                    let a_to_b = d[e] == (a < b);
                    arcs.push(if a_to_b { (i, j) } else { (j, i) });
                }
            }
        }
        Some(arcs)
    }
}
