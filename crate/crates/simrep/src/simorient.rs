//! Constrained modular decompositions and simultaneous transitive
//! orientation of sunflower instances.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{is_transitive, Graph, Orientation, PartialOrientation, SunflowerInstance};
use crate::mdecomp::{orientations_from_tree, restrict, MdTree, NodeKind, QuotientOrientation, RestrictedMd};
use crate::orient::{default_orientations, orient_ext, orient_ext_with};
use crate::pqtree::{PqBuilder, PqKind, PqTree};
use crate::twosat::{solve, Formula2};

/// Default transitive orientation of a prime quotient, stored either as arcs
/// or as the top-line positions of a permutation diagram of the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeDefault {
    Arcs(QuotientOrientation),
    Diagram(Vec<usize>),
}

/// A decomposition read either as the tree of its graph or, with
/// `complement`, as the tree of the complement graph.
#[derive(Clone, Copy, Debug)]
pub struct DecompView<'a> {
    pub tree: &'a MdTree,
    pub complement: bool,
    pub defaults: &'a [Option<PrimeDefault>],
}

impl DecompView<'_> {
    pub fn kind(&self, u: usize) -> NodeKind {
        let k = self.tree.kind(u);
        if self.complement {
            k.complemented()
        } else {
            k
        }
    }

    pub fn has_edge(&self, u: usize, a: usize, b: usize) -> bool {
        a != b && self.tree.quotient(u).unwrap().has_edge(a, b) != self.complement
    }

    /// Whether `a -> b` in the default orientation of prime node `u`;
    /// `ab` must be an edge of the viewed quotient.
    pub fn dir(&self, u: usize, a: usize, b: usize) -> bool {
        debug_assert!(self.has_edge(u, a, b));
        match self.defaults[u].as_ref().expect("prime default") {
            PrimeDefault::Arcs(d) => {
                assert!(!self.complement, "arc defaults cannot answer complement queries");
                let e = self.tree.quotient(u).unwrap().edge_index(a, b).expect("edge");
                d[e] == (a < b)
            }
            PrimeDefault::Diagram(top) => top[a] < top[b],
        }
    }

    /// Some edge of the viewed quotient of prime node `u`.
    pub fn edge(&self, u: usize) -> (usize, usize) {
        if self.complement {
            self.tree.non_edge(u).expect("prime quotient has a non-edge")
        } else {
            self.tree.quotient(u).unwrap().edges()[0]
        }
    }
}

/// Defaults of every prime node as arc lists.
pub fn arc_defaults(d: Vec<Option<QuotientOrientation>>) -> Vec<Option<PrimeDefault>> {
    d.into_iter().map(|x| x.map(PrimeDefault::Arcs)).collect()
}

/// Decomposition `B` of the shared graph with a PQ-tree per complete node
/// and a 2-SAT formula over prime-node and Q-node variables.
#[derive(Clone, Debug)]
pub struct ConstrainedMd {
    /// Variable-name prefix separating independent pipelines.
    pub namespace: String,
    /// Indexed by node of `B`; present exactly for complete nodes.
    pub pq: Vec<Option<PqTree>>,
    /// Per node of `B`: PQ-tree node -> variable name of its orientation.
    pub q_vars: Vec<HashMap<usize, String>>,
    pub formula: Formula2,
    /// A complete node whose PQ-tree is null, if any.
    pub null_at: Option<usize>,
}

impl ConstrainedMd {
    pub fn prime_var(&self, mu: usize) -> String {
        format!("{}B{mu}", self.namespace)
    }
}

fn source_var(ns: &str, input: usize, node: usize) -> String {
    format!("{ns}T{input}:{node}")
}

/// `S_mu` for complete node `mu` of `b`, built from the active nodes of `r`
/// with respect to the mu-set `uset` (one vertex of `H` per child of `mu`).
/// Returns the tree and, per orientable node, the source prime node it came from.
pub fn s_mu_tree(
    r: &RestrictedMd,
    t: &DecompView,
    uset: &[usize],
) -> (PqTree, HashMap<usize, usize>) {
    let k = uset.len();
    let mut leaves: Vec<(usize, usize)> =
        uset.iter().enumerate().map(|(c, &v)| (r.leaf_of(v), c)).collect();
    leaves.sort_unstable_by_key(|&(x, _)| r.preorder_rank(x));
    let mut vnodes: Vec<usize> = leaves.iter().map(|&(x, _)| x).collect();
    for w in leaves.windows(2) {
        vnodes.push(r.lca(w[0].0, w[1].0));
    }
    vnodes.sort_unstable_by_key(|&x| r.preorder_rank(x));
    vnodes.dedup();
    let mut kids: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut stack: Vec<usize> = Vec::new();
    for &x in &vnodes {
        while let Some(&top) = stack.last() {
            if r.is_ancestor(top, x) {
                break;
            }
            stack.pop();
        }
        if let Some(&p) = stack.last() {
            kids.entry(p).or_default().push(x);
        }
        stack.push(x);
    }
    let leaf_elem: HashMap<usize, usize> = leaves.iter().copied().collect();
    let mut b = PqBuilder::new();
    let mut built: HashMap<usize, usize> = HashMap::new();
    let mut from_prime: Vec<(usize, usize)> = Vec::new();
    for &x in vnodes.iter().rev() {
        let id = match kids.get(&x) {
            None => b.leaf(leaf_elem[&x]),
            Some(ch) => {
                let stem = r.node(x).stem;
                match t.kind(stem) {
                    NodeKind::Complete => b.p(ch.iter().map(|c| built[c]).collect()),
                    NodeKind::Prime => {
                        let mut order: Vec<(usize, usize)> = ch
                            .iter()
                            .map(|&c| (r.node(x).stem_child[r.child_toward(x, c)], built[&c]))
                            .collect();
                        order.sort_by(|p, q| {
                            if p.0 == q.0 {
                                std::cmp::Ordering::Equal
                            } else if t.dir(stem, p.0, q.0) {
                                std::cmp::Ordering::Less
                            } else {
                                std::cmp::Ordering::Greater
                            }
                        });
                        let q = b.q(order.into_iter().map(|(_, id)| id).collect());
                        from_prime.push((q, stem));
                        q
                    }
                    kind => panic!("active node stems from a {} node", kind.name()),
                }
            }
        };
        built.insert(x, id);
    }
    let (tree, map) = b.finish(k, built[&vnodes[0]]).expect("well-formed active tree");
    let sources = from_prime.into_iter().map(|(q, stem)| (map[q], stem)).collect();
    (tree, sources)
}

/// Constraints `(B, S_T, phi_T)` describing which orientations of `H` extend
/// to transitive orientations of the input graph `input` (through `r`).
pub fn build_constraints(
    b: &DecompView,
    r: &RestrictedMd,
    t: &DecompView,
    input: usize,
    ns: &str,
) -> ConstrainedMd {
    let bt = b.tree;
    let mut f = Formula2::new();
    let mut pq = vec![None; bt.len()];
    let mut q_vars = vec![HashMap::new(); bt.len()];
    for mu in bt.inner_nodes() {
        match b.kind(mu) {
            NodeKind::Prime => {
                let xb = f.var(&format!("{ns}B{mu}"));
                let (a, c) = b.edge(mu);
                let uset = bt.mu_set(mu);
                let (u, v) = (uset[a], uset[c]);
                let nu = r.lca_vertices(u, v);
                assert_eq!(
                    t.kind(r.node(nu).stem),
                    NodeKind::Prime,
                    "lca of a prime module edge must stem from a prime node"
                );
                let stem = r.node(nu).stem;
                let tt = t.tree;
                let (gu, gv) = (r.to_g(u), r.to_g(v));
                let dt = t.dir(stem, tt.rep_child(stem, gu), tt.rep_child(stem, gv));
                let db = b.dir(mu, a, c);
                let xt = f.var(&source_var(ns, input, stem));
                f.link(xb, xt, db == dt);
            }
            NodeKind::Complete => {
                let (tree, sources) = s_mu_tree(r, t, bt.mu_set(mu));
                for (q, stem) in sources {
                    let name = format!("{ns}S{input}:{mu}:{q}");
                    let xq = f.var(&name);
                    let xt = f.var(&source_var(ns, input, stem));
                    f.iff(xq, xt);
                    q_vars[mu].insert(q, name);
                }
                pq[mu] = Some(tree);
            }
            _ => {}
        }
    }
    ConstrainedMd { namespace: ns.to_string(), pq, q_vars, formula: f, null_at: None }
}

/// Intersection of constraint structures over the same base tree.
pub fn intersect_constraints(cs: &[ConstrainedMd]) -> Result<ConstrainedMd> {
    let first = cs.first().ok_or_else(|| Error::Invalid("no constraint structures".into()))?;
    let ns = first.namespace.clone();
    let len = first.pq.len();
    let mut f = Formula2::new();
    for c in cs {
        if c.pq.len() != len {
            return Err(Error::Invalid("constraint structures over different bases".into()));
        }
        f.merge(&c.formula);
    }
    let mut pq = vec![None; len];
    let mut q_vars = vec![HashMap::new(); len];
    let mut null_at = cs.iter().find_map(|c| c.null_at);
    for mu in 0..len {
        if first.pq[mu].is_none() {
            continue;
        }
        let trees: Vec<PqTree> = cs.iter().map(|c| c.pq[mu].clone().expect("same base")).collect();
        let (s, rec) = PqTree::intersect(&trees)?;
        if s.is_null() {
            null_at.get_or_insert(mu);
            pq[mu] = Some(s);
            continue;
        }
        for y in s.orientable_nodes() {
            let name = format!("{ns}J:{mu}:{y}");
            f.var(&name);
            q_vars[mu].insert(y, name);
        }
        for (i, c) in cs.iter().enumerate() {
            let mut vars: Vec<(&usize, &String)> = c.q_vars[mu].iter().collect();
            vars.sort_unstable();
            for (&q, name) in vars {
                let (y, forward) = rec.get(i, q).expect("orientable node is contained");
                let a = f.var(name);
                let b = f.var(&q_vars[mu][&y]);
                f.link(a, b, forward);
            }
        }
        pq[mu] = Some(s);
    }
    Ok(ConstrainedMd { namespace: ns, pq, q_vars, formula: f, null_at })
}

/// Frontier of `t` with each orientable node set by `forward(node)`
/// (unlisted nodes keep their stored order).
pub fn frontier_with(t: &PqTree, forward: &dyn Fn(usize) -> Option<bool>) -> Vec<usize> {
    let mut out = Vec::with_capacity(t.ground_size());
    let Some(root) = t.root() else { return out };
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        if let PqKind::Leaf(e) = t.kind(x) {
            out.push(e);
            continue;
        }
        let ch = t.children(x);
        if forward(x) == Some(false) {
            stack.extend(ch.iter());
        } else {
            stack.extend(ch.iter().rev());
        }
    }
    out
}

/// Child orders of the complete nodes of `B` under a satisfying assignment.
pub fn complete_orders(cmd: &ConstrainedMd, assignment: &[bool]) -> Vec<Option<Vec<usize>>> {
    cmd.pq
        .iter()
        .enumerate()
        .map(|(mu, t)| {
            t.as_ref().map(|t| {
                frontier_with(t, &|x| {
                    cmd.q_vars[mu].get(&x).and_then(|n| cmd.formula.value(assignment, n))
                })
            })
        })
        .collect()
}

/// Whether prime node `mu` takes its default orientation under `assignment`.
pub fn prime_choice(cmd: &ConstrainedMd, assignment: &[bool], mu: usize) -> bool {
    cmd.formula.value(assignment, &cmd.prime_var(mu)).unwrap_or(false)
}

/// Quotient orientations of `B` (graph view) from complete-node orders and prime choices.
pub fn quotient_orientations(
    b: &MdTree,
    defaults: &[Option<QuotientOrientation>],
    orders: &[Option<Vec<usize>>],
    prime: &dyn Fn(usize) -> bool,
) -> Vec<Option<QuotientOrientation>> {
    let mut out = vec![None; b.len()];
    for mu in b.inner_nodes() {
        let q = b.quotient(mu).unwrap();
        out[mu] = match b.kind(mu) {
            NodeKind::Complete => {
                let order = orders[mu].as_ref().expect("complete node order");
                let mut pos = vec![0; order.len()];
                for (i, &c) in order.iter().enumerate() {
                    pos[c] = i;
                }
                Some(q.edges().iter().map(|&(a, c)| pos[a] < pos[c]).collect())
            }
            NodeKind::Prime => {
                let d = defaults[mu].as_ref().expect("prime default");
                let keep = prime(mu);
                Some(d.iter().map(|&x| x == keep).collect())
            }
            _ => None,
        };
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimInfeasible {
    /// Input `Some(i)` (or the shared graph) is not a comparability graph.
    NotComparability { input: Option<usize> },
    NullTree { node: usize },
    Unsat,
}

impl fmt::Display for SimInfeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimInfeasible::NotComparability { input: Some(i) } => {
                write!(f, "not-comparability@G{}", i + 1)
            }
            SimInfeasible::NotComparability { input: None } => write!(f, "not-comparability@H"),
            SimInfeasible::NullTree { node } => write!(f, "null-tree@{node}"),
            SimInfeasible::Unsat => write!(f, "unsat"),
        }
    }
}

/// Restriction of every input's decomposition to the shared graph.
pub fn restrict_all(inst: &SunflowerInstance, trees: &[MdTree]) -> Result<Vec<RestrictedMd>> {
    inst.inputs.iter().zip(trees).map(|(g, t)| restrict(t, g, &inst.shared)).collect()
}

/// Everything computed for one input graph.
pub struct Prepared {
    pub tree: MdTree,
    pub defaults: Vec<Option<QuotientOrientation>>,
    pub restricted: RestrictedMd,
}

/// Decomposes every input and restricts it to the shared graph.
pub fn prepare(
    inst: &SunflowerInstance,
) -> Result<std::result::Result<Vec<Prepared>, SimInfeasible>> {
    let mut out = Vec::with_capacity(inst.inputs.len());
    for (i, g) in inst.inputs.iter().enumerate() {
        let tree = MdTree::build(g)?;
        let Ok(defaults) = default_orientations(&tree) else {
            return Ok(Err(SimInfeasible::NotComparability { input: Some(i) }));
        };
        let restricted = restrict(&tree, g, &inst.shared)?;
        out.push(Prepared { tree, defaults, restricted });
    }
    Ok(Ok(out))
}

/// Simultaneous transitive orientations of all inputs of a sunflower
/// instance, agreeing on the shared graph.
pub fn sim_orient(
    inst: &SunflowerInstance,
) -> Result<std::result::Result<Vec<Orientation>, SimInfeasible>> {
    inst.validate().map_err(Error::NotSunflower)?;
    let h = &inst.shared;
    if h.n() == 0 {
        let mut out = Vec::new();
        for (i, g) in inst.inputs.iter().enumerate() {
            match orient_ext(g, &PartialOrientation::empty()) {
                Ok(o) => out.push(o),
                Err(_) => return Ok(Err(SimInfeasible::NotComparability { input: Some(i) })),
            }
        }
        return Ok(Ok(out));
    }
    let prepared = match prepare(inst)? {
        Ok(p) => p,
        Err(e) => return Ok(Err(e)),
    };
    let b = MdTree::build(h)?;
    let Ok(b_defaults) = default_orientations(&b) else {
        return Ok(Err(SimInfeasible::NotComparability { input: None }));
    };
    let oh = match solve_shared(h, &b, &b_defaults, &prepared)? {
        Ok(o) => o,
        Err(e) => return Ok(Err(e)),
    };
    let out = extend_all(inst, &prepared, &oh);
    Ok(Ok(out))
}

/// Orientation of `H` that extends to every input, via the constrained pipeline.
pub fn solve_shared(
    h: &Graph,
    b: &MdTree,
    b_defaults: &[Option<QuotientOrientation>],
    prepared: &[Prepared],
) -> Result<std::result::Result<Orientation, SimInfeasible>> {
    let bd = arc_defaults(b_defaults.to_vec());
    let bv = DecompView { tree: b, complement: false, defaults: &bd };
    let tds: Vec<Vec<Option<PrimeDefault>>> =
        prepared.iter().map(|p| arc_defaults(p.defaults.clone())).collect();
    let cs: Vec<ConstrainedMd> = prepared
        .iter()
        .zip(&tds)
        .enumerate()
        .map(|(i, (p, d))| {
            let tv = DecompView { tree: &p.tree, complement: false, defaults: d };
            build_constraints(&bv, &p.restricted, &tv, i, "")
        })
        .collect();
    let cmd = intersect_constraints(&cs)?;
    if let Some(node) = cmd.null_at {
        return Ok(Err(SimInfeasible::NullTree { node }));
    }
    let Some(assignment) = solve(&cmd.formula) else {
        return Ok(Err(SimInfeasible::Unsat));
    };
    let orders = complete_orders(&cmd, &assignment);
    let per_node =
        quotient_orientations(b, b_defaults, &orders, &|mu| prime_choice(&cmd, &assignment, mu));
    let oh = orientations_from_tree(h, b, &per_node)?;
    assert!(is_transitive(h, &oh), "shared orientation is not transitive");
    Ok(Ok(oh))
}

fn extend_all(inst: &SunflowerInstance, prepared: &[Prepared], oh: &Orientation) -> Vec<Orientation> {
    let h = &inst.shared;
    let arcs = oh.arcs(h);
    inst.inputs
        .iter()
        .zip(prepared)
        .map(|(g, p)| {
            let map = g.embed(h).expect("validated");
            let lifted: Vec<(usize, usize)> = arcs.iter().map(|&(u, v)| (map[u], map[v])).collect();
            let w = PartialOrientation::new(g, &lifted).expect("shared edges exist in every input");
            let o = orient_ext_with(g, &p.tree, &p.defaults, &w)
                .expect("shared orientation extends to every input");
            assert!(o.extends(&w));
            o
        })
        .collect()
}

/// Every orientation of `H` represented by `cmd` over `b`
/// (exhaustive; at most 6 vertices).
pub fn to_set(
    h: &Graph,
    b: &MdTree,
    b_defaults: &[Option<QuotientOrientation>],
    cmd: &ConstrainedMd,
) -> Result<BTreeSet<Orientation>> {
    if h.n() > 6 {
        return Err(Error::Budget(format!("{} vertices", h.n())));
    }
    let mut out = BTreeSet::new();
    if cmd.pq.iter().flatten().any(|t| t.is_null()) {
        return Ok(out);
    }
    let complete: Vec<usize> = (0..b.len()).filter(|&u| cmd.pq[u].is_some()).collect();
    let primes: Vec<usize> = b.nodes_of_kind(NodeKind::Prime).collect();
    let mut choices = Vec::new();
    for &mu in &complete {
        choices.push(cmd.pq[mu].as_ref().unwrap().arrangements(1 << 16)?);
    }
    let f = &cmd.formula;
    let mut idx = vec![0usize; complete.len()];
    loop {
        for bits in 0u32..(1 << primes.len()) {
            let mut fixed: HashMap<usize, bool> = HashMap::new();
            let mut orders = vec![None; b.len()];
            for (j, &mu) in complete.iter().enumerate() {
                let (frontier, orient) = &choices[j][idx[j]];
                for &(node, fw) in orient {
                    if let Some(name) = cmd.q_vars[mu].get(&node) {
                        fixed.insert(f.lookup(name).unwrap(), fw);
                    }
                }
                orders[mu] = Some(frontier.clone());
            }
            let prime_bit = |mu: usize| {
                let j = primes.iter().position(|&p| p == mu).unwrap();
                bits >> j & 1 == 1
            };
            for &mu in &primes {
                if let Some(v) = f.lookup(&cmd.prime_var(mu)) {
                    fixed.insert(v, prime_bit(mu));
                }
            }
            if brute_satisfiable(f, &fixed)? {
                let per_node = quotient_orientations(b, b_defaults, &orders, &prime_bit);
                out.insert(orientations_from_tree(h, b, &per_node)?);
            }
        }
        let mut j = 0;
        while j < idx.len() {
            idx[j] += 1;
            if idx[j] < choices[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == idx.len() {
            break;
        }
    }
    Ok(out)
}

/// Truth-table check of `f` with some variables fixed.
fn brute_satisfiable(f: &Formula2, fixed: &HashMap<usize, bool>) -> Result<bool> {
    let free: Vec<usize> = (0..f.num_vars()).filter(|v| !fixed.contains_key(v)).collect();
    if free.len() > 20 {
        return Err(Error::Budget(format!("{} free variables", free.len())));
    }
    let mut a = vec![false; f.num_vars()];
    for (&v, &x) in fixed {
        a[v] = x;
    }
    for bits in 0u64..(1 << free.len()) {
        for (j, &v) in free.iter().enumerate() {
            a[v] = bits >> j & 1 == 1;
        }
        if f.satisfied_by(&a) {
            return Ok(true);
        }
    }
    Ok(false)
}
