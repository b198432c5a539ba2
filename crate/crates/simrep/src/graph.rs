use std::collections::{HashMap, HashSet};

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Largest vertex count for which transitivity may be checked with adjacency bitsets.
const DENSE_LIMIT: usize = 16_384;

/// Immutable undirected simple graph with opaque vertex ids.
///
/// Vertices are stored as dense indices `0..n`; neighbor lists are sorted.
/// Edges are numbered `0..m` in lexicographic order of `(low, high)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    upper: Vec<usize>,
    offset: Vec<usize>,
    m: usize,
}

impl Graph {
    /// Builds a graph from vertex ids and id pairs.
    pub fn new<S: AsRef<str>>(ids: &[S], edges: &[(S, S)]) -> Result<Graph> {
        let ids: Vec<String> = ids.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(id.clone()));
            }
        }
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let u = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownVertex(a.as_ref().to_string()))?;
            let v = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownVertex(b.as_ref().to_string()))?;
            pairs.push((u, v));
        }
        Self::assemble(ids, index, &pairs, true)
    }

    /// Builds a graph from ids and index pairs, rejecting loops and parallel edges.
    pub fn from_indices(ids: Vec<String>, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(id.clone()));
            }
        }
        Self::assemble(ids, index, edges, true)
    }

    /// Same as [`Graph::from_indices`] but silently merges parallel edges.
    pub fn from_indices_dedup(ids: Vec<String>, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut index = HashMap::with_capacity(ids.len());
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(id.clone()));
            }
        }
        Self::assemble(ids, index, edges, false)
    }

    /// Graph on `n` vertices named `0..n`.
    pub fn numbered(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        Self::from_indices((0..n).map(|i| i.to_string()).collect(), edges)
    }

    fn assemble(
        ids: Vec<String>,
        index: HashMap<String, usize>,
        edges: &[(usize, usize)],
        strict: bool,
    ) -> Result<Graph> {
        let n = ids.len();
        let mut deg = vec![0usize; n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::UnknownVertex(format!("#{}", u.max(v))));
            }
            if u == v {
                return Err(Error::SelfLoop(ids[u].clone()));
            }
            deg[u] += 1;
            deg[v] += 1;
        }
        let mut adj: Vec<Vec<usize>> = deg.iter().map(|&d| Vec::with_capacity(d)).collect();
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if strict && list.len() != before {
                let w = list
                    .windows(2)
                    .find(|w| w[0] == w[1])
                    .map(|w| w[0])
                    .unwrap_or_else(|| first_dup(edges, u));
                return Err(Error::ParallelEdge(ids[u].clone(), ids[w].clone()));
            }
        }
        Ok(Self::from_sorted_adjacency(ids, index, adj))
    }

    fn from_sorted_adjacency(
        ids: Vec<String>,
        index: HashMap<String, usize>,
        adj: Vec<Vec<usize>>,
    ) -> Graph {
        let n = ids.len();
        let mut upper = Vec::with_capacity(n);
        let mut offset = Vec::with_capacity(n + 1);
        let mut m = 0;
        for (u, list) in adj.iter().enumerate() {
            let p = list.partition_point(|&w| w < u);
            upper.push(p);
            offset.push(m);
            m += list.len() - p;
        }
        offset.push(m);
        Graph { ids, index, adj, upper, offset, m }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn vertex(&self, id: &str) -> Result<usize> {
        self.index_of(id).ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// Index of edge `uv` in `0..m`, or `None` for non-edges.
    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        if a == b {
            return None;
        }
        let pos = self.adj[a].binary_search(&b).ok()?;
        Some(self.offset[a] + pos - self.upper[a])
    }

    /// Endpoints `(low, high)` of every edge, in edge-index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list[self.upper[u]..].iter().map(move |&v| (u, v)))
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }

    /// Neighbors of `u` with a larger index, in edge-index order starting at `edge_offset(u)`.
    pub fn upper_neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u][self.upper[u]..]
    }

    pub fn edge_offset(&self, u: usize) -> usize {
        self.offset[u]
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut adj = vec![Vec::new(); n];
        for (u, list) in adj.iter_mut().enumerate() {
            let mut it = self.adj[u].iter().peekable();
            for w in 0..n {
                if w == u {
                    continue;
                }
                while it.peek().is_some_and(|&&x| x < w) {
                    it.next();
                }
                if it.peek() != Some(&&w) {
                    list.push(w);
                }
            }
        }
        Self::from_sorted_adjacency(self.ids.clone(), self.index.clone(), adj)
    }

    /// `G[s]`; vertex ids are preserved and the order follows `s`.
    pub fn induced_subgraph(&self, s: &[usize]) -> Graph {
        let mut local = HashMap::with_capacity(s.len());
        for (i, &v) in s.iter().enumerate() {
            local.insert(v, i);
        }
        let mut edges = Vec::new();
        for (i, &v) in s.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = local.get(w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let ids = s.iter().map(|&v| self.ids[v].clone()).collect();
        Graph::from_indices_dedup(ids, &edges).expect("induced subgraph of a simple graph")
    }

    /// `G[s]` for a set of ids; the vertex order follows this graph.
    pub fn induced_by_ids<S: AsRef<str>>(&self, s: &[S]) -> Result<Graph> {
        let mut idx = Vec::with_capacity(s.len());
        for id in s {
            idx.push(self.vertex(id.as_ref())?);
        }
        idx.sort_unstable();
        idx.dedup();
        Ok(self.induced_subgraph(&idx))
    }

    /// Maps the vertices of `h` to indices of this graph by id.
    pub fn embed(&self, h: &Graph) -> Result<Vec<usize>> {
        h.ids.iter().map(|id| self.vertex(id)).collect()
    }

    /// Checks that `self[map(V(h))]` equals `h` (with `map` from [`Graph::embed`]).
    pub fn induces(&self, h: &Graph, map: &[usize]) -> std::result::Result<(), String> {
        let mut inv = HashMap::with_capacity(map.len());
        for (i, &v) in map.iter().enumerate() {
            inv.insert(v, i);
        }
        let mut count = 0;
        for (i, &v) in map.iter().enumerate() {
            for w in &self.adj[v] {
                if let Some(&j) = inv.get(w) {
                    if i < j {
                        if !h.has_edge(i, j) {
                            return Err(format!("extra edge {}-{}", h.id(i), h.id(j)));
                        }
                        count += 1;
                    }
                }
            }
        }
        if count != h.m() {
            let missing = h
                .edges()
                .find(|&(a, b)| !self.has_edge(map[a], map[b]))
                .map(|(a, b)| format!("missing edge {}-{}", h.id(a), h.id(b)))
                .unwrap_or_else(|| "edge count differs".to_string());
            return Err(missing);
        }
        Ok(())
    }

    /// Connected components as vertex lists, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut stack = vec![s];
            comp[s] = c;
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = c;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }
}

fn first_dup(edges: &[(usize, usize)], u: usize) -> usize {
    let mut seen = HashSet::new();
    for &(a, b) in edges {
        let w = if a == u {
            b
        } else if b == u {
            a
        } else {
            continue;
        };
        if !seen.insert(w) {
            return w;
        }
    }
    u
}

/// Orientation of every edge of a graph, indexed by edge index.
/// `forward[e]` means the edge points from its lower to its higher endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    forward: Vec<bool>,
}

impl Orientation {
    pub fn from_forward(forward: Vec<bool>) -> Orientation {
        Orientation { forward }
    }

    /// Orientation from a complete list of arcs `(tail, head)`.
    pub fn from_arcs(g: &Graph, arcs: &[(usize, usize)]) -> Result<Orientation> {
        let p = PartialOrientation::new(g, arcs)?;
        if p.len() != g.m() {
            let e = (0..g.m()).find(|&e| p.get(e).is_none()).unwrap_or(0);
            let (u, v) = g.edges().nth(e).unwrap_or((0, 0));
            return Err(Error::Invalid(format!(
                "edge {}-{} not oriented",
                g.id(u),
                g.id(v)
            )));
        }
        Ok(Orientation { forward: (0..g.m()).map(|e| p.get(e) == Some(true)).collect() })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn forward(&self) -> &[bool] {
        &self.forward
    }

    pub fn is_forward(&self, e: usize) -> bool {
        self.forward[e]
    }

    /// Whether edge `uv` is directed `u -> v`; `None` for non-edges.
    pub fn points(&self, g: &Graph, u: usize, v: usize) -> Option<bool> {
        let e = g.edge_index(u, v)?;
        Some(self.forward[e] == (u < v))
    }

    pub fn reversed(&self) -> Orientation {
        Orientation { forward: self.forward.iter().map(|&f| !f).collect() }
    }

    pub fn arcs(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
            .zip(&self.forward)
            .map(|((u, v), &f)| if f { (u, v) } else { (v, u) })
            .collect()
    }
}

/// Orientation of a subset of the edges of a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialOrientation {
    dir: HashMap<usize, bool>,
    order: Vec<usize>,
}

impl PartialOrientation {
    pub fn empty() -> PartialOrientation {
        PartialOrientation::default()
    }

    pub fn new(g: &Graph, arcs: &[(usize, usize)]) -> Result<PartialOrientation> {
        let mut p = PartialOrientation::default();
        for &(u, v) in arcs {
            p.insert(g, u, v)?;
        }
        Ok(p)
    }

    pub fn from_ids<S: AsRef<str>>(g: &Graph, arcs: &[(S, S)]) -> Result<PartialOrientation> {
        let mut p = PartialOrientation::default();
        for (a, b) in arcs {
            p.insert(g, g.vertex(a.as_ref())?, g.vertex(b.as_ref())?)?;
        }
        Ok(p)
    }

    pub fn insert(&mut self, g: &Graph, u: usize, v: usize) -> Result<()> {
        let e = g
            .edge_index(u, v)
            .ok_or_else(|| Error::NotAnEdge(g.id(u).to_string(), g.id(v).to_string()))?;
        let f = u < v;
        match self.dir.insert(e, f) {
            Some(old) if old != f => {
                Err(Error::BothWays(g.id(u).to_string(), g.id(v).to_string()))
            }
            Some(_) => Ok(()),
            None => {
                self.order.push(e);
                Ok(())
            }
        }
    }

    pub fn get(&self, e: usize) -> Option<bool> {
        self.dir.get(&e).copied()
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.order.len()
    }

    /// `(edge index, forward)` pairs in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, bool)> + '_ {
        self.order.iter().map(move |&e| (e, self.dir[&e]))
    }

    pub fn arcs(&self, g: &Graph) -> Vec<(usize, usize)> {
        let ends = g.edge_list();
        self.iter()
            .map(|(e, f)| {
                let (u, v) = ends[e];
                if f {
                    (u, v)
                } else {
                    (v, u)
                }
            })
            .collect()
    }

    pub fn reversed(&self) -> PartialOrientation {
        PartialOrientation {
            dir: self.dir.iter().map(|(&e, &f)| (e, !f)).collect(),
            order: self.order.clone(),
        }
    }
}

impl Orientation {
    /// Whether every arc of `w` appears in this orientation.
    pub fn extends(&self, w: &PartialOrientation) -> bool {
        w.iter().all(|(e, f)| self.forward[e] == f)
    }
}

/// Whether `u -> v` and `v -> w` always imply `u -> w`.
pub fn is_transitive(g: &Graph, o: &Orientation) -> bool {
    assert_eq!(o.len(), g.m(), "orientation does not match graph");
    let n = g.n();
    if n <= DENSE_LIMIT && g.m() * 64 >= n * n / 2 {
        transitive_dense(g, o)
    } else {
        transitive_sparse(g, o)
    }
}

fn transitive_dense(g: &Graph, o: &Orientation) -> bool {
    let n = g.n();
    let mut out: Vec<FixedBitSet> = (0..n).map(|_| FixedBitSet::with_capacity(n)).collect();
    let arcs = o.arcs(g);
    for &(u, v) in &arcs {
        out[u].insert(v);
    }
    arcs.iter().all(|&(u, v)| out[v].is_subset(&out[u]))
}

fn transitive_sparse(g: &Graph, o: &Orientation) -> bool {
    let n = g.n();
    let mut out = vec![Vec::new(); n];
    for (u, v) in o.arcs(g) {
        out[u].push(v);
    }
    let mut mark = vec![usize::MAX; n];
    for u in 0..n {
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

/// Shared graph `H` and input graphs `G_1..G_r` that pairwise intersect exactly in `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SunflowerInstance {
    pub shared: Graph,
    pub inputs: Vec<Graph>,
}

impl SunflowerInstance {
    pub fn new(shared: Graph, inputs: Vec<Graph>) -> SunflowerInstance {
        SunflowerInstance { shared, inputs }
    }

    /// Checks the sunflower condition, describing the first violation found.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let h = &self.shared;
        for (i, g) in self.inputs.iter().enumerate() {
            let map = g
                .embed(h)
                .map_err(|e| format!("input {}: shared vertex missing ({e})", i + 1))?;
            g.induces(h, &map).map_err(|e| format!("input {}: {e}", i + 1))?;
        }
        let mut owner: HashMap<&str, usize> = HashMap::new();
        for (i, g) in self.inputs.iter().enumerate() {
            for id in g.ids() {
                if h.index_of(id).is_some() {
                    continue;
                }
                if let Some(j) = owner.insert(id, i) {
                    return Err(format!(
                        "inputs {} and {} share private vertex `{id}`",
                        j + 1,
                        i + 1
                    ));
                }
            }
        }
        Ok(())
    }
}

pub fn validate_sunflower(inst: &SunflowerInstance) -> bool {
    inst.validate().is_ok()
}

pub fn induced_subgraph(g: &Graph, s: &[usize]) -> Graph {
    g.induced_subgraph(s)
}
