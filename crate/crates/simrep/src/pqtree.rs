//! PQ-trees over the ground set `0..n`: consecutivity reduction,
//! intersection with Q-node containment records, and frontier enumeration.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::lca::{child_towards, TreeIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PqKind {
    Leaf(usize),
    P,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Node {
    kind: PqKind,
    children: Vec<usize>,
}

/// A PQ-tree, or the null tree. Nodes are numbered in preorder from the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqTree {
    n: usize,
    nodes: Vec<Node>,
    parent: Vec<usize>,
    leaf: Vec<usize>,
}

/// Arena for assembling trees bottom-up.
#[derive(Clone, Debug, Default)]
pub struct PqBuilder {
    nodes: Vec<Node>,
}

impl PqBuilder {
    pub fn new() -> PqBuilder {
        PqBuilder::default()
    }

    pub fn leaf(&mut self, e: usize) -> usize {
        self.push(PqKind::Leaf(e), Vec::new())
    }

    pub fn p(&mut self, children: Vec<usize>) -> usize {
        assert!(children.len() >= 2, "P-node needs two children");
        self.push(PqKind::P, children)
    }

    /// Q-node; two-child Q-nodes become P-nodes on [`PqBuilder::finish`].
    pub fn q(&mut self, children: Vec<usize>) -> usize {
        assert!(children.len() >= 2, "Q-node needs two children");
        self.push(PqKind::Q, children)
    }

    fn push(&mut self, kind: PqKind, children: Vec<usize>) -> usize {
        self.nodes.push(Node { kind, children });
        self.nodes.len() - 1
    }

    /// The tree rooted at `root` over `0..n`, plus the map from builder ids to tree ids.
    pub fn finish(self, n: usize, root: usize) -> Result<(PqTree, Vec<usize>)> {
        let (t, map) = compact(n, &self.nodes, root);
        t.check()?;
        Ok((t, map))
    }
}

/// Rebuilds in preorder from `root`, collapsing unary nodes and turning
/// two-child Q-nodes into P-nodes. Unreached ids map to `usize::MAX`.
fn compact(n: usize, nodes: &[Node], root: usize) -> (PqTree, Vec<usize>) {
    let resolve = |mut x: usize| {
        while nodes[x].children.len() == 1 {
            x = nodes[x].children[0];
        }
        x
    };
    let mut map = vec![usize::MAX; nodes.len()];
    let mut out: Vec<Node> = Vec::with_capacity(nodes.len());
    let mut parent = Vec::with_capacity(nodes.len());
    let mut leaf = vec![usize::MAX; n];
    let mut stack = vec![(root, usize::MAX)];
    while let Some((x0, p)) = stack.pop() {
        let x = resolve(x0);
        let id = out.len();
        let mut y = x0;
        loop {
            map[y] = id;
            if y == x {
                break;
            }
            y = nodes[y].children[0];
        }
        let mut kind = nodes[x].kind;
        if kind == PqKind::Q && nodes[x].children.len() == 2 {
            kind = PqKind::P;
        }
        if let PqKind::Leaf(e) = kind {
            if e < n {
                leaf[e] = id;
            }
        }
        out.push(Node { kind, children: Vec::with_capacity(nodes[x].children.len()) });
        parent.push(p);
        if p != usize::MAX {
            out[p].children.push(id);
        }
        for &c in nodes[x].children.iter().rev() {
            stack.push((c, id));
        }
    }
    (PqTree { n, nodes: out, parent, leaf }, map)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Label {
    Empty,
    Full,
    Partial,
}

struct Reducer<'a> {
    t: &'a PqTree,
    label: Vec<Label>,
    nodes: Vec<Node>,
}

impl Reducer<'_> {
    fn new_node(&mut self, kind: PqKind, children: Vec<usize>) -> usize {
        self.nodes.push(Node { kind, children });
        self.nodes.len() - 1
    }

    fn mk_p(&mut self, list: Vec<usize>) -> Option<usize> {
        match list.len() {
            0 => None,
            1 => Some(list[0]),
            _ => Some(self.new_node(PqKind::P, list)),
        }
    }

    fn split(&self, x: usize) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let (mut e, mut f, mut p) = (Vec::new(), Vec::new(), Vec::new());
        for &c in &self.t.nodes[x].children {
            match self.label[c] {
                Label::Empty => e.push(c),
                Label::Full => f.push(c),
                Label::Partial => p.push(c),
            }
        }
        (e, f, p)
    }

    /// Children sequence of a partial non-root node, empty side first.
    fn expand(&mut self, x: usize) -> Option<Vec<usize>> {
        match self.t.nodes[x].kind {
            PqKind::Leaf(_) => unreachable!("leaves are never partial"),
            PqKind::P => {
                let (e, f, p) = self.split(x);
                if p.len() > 1 {
                    return None;
                }
                let mut seq = Vec::new();
                seq.extend(self.mk_p(e));
                if let Some(&c) = p.first() {
                    seq.extend(self.expand(c)?);
                }
                seq.extend(self.mk_p(f));
                Some(seq)
            }
            PqKind::Q => {
                let mut ch = self.t.nodes[x].children.clone();
                if !self.one_sided(&ch) {
                    ch.reverse();
                    if !self.one_sided(&ch) {
                        return None;
                    }
                }
                let mut seq = Vec::new();
                for c in ch {
                    if self.label[c] == Label::Partial {
                        seq.extend(self.expand(c)?);
                    } else {
                        seq.push(c);
                    }
                }
                Some(seq)
            }
        }
    }

    /// Matches `Empty* Partial? Full*`.
    fn one_sided(&self, ch: &[usize]) -> bool {
        let mut phase = 0;
        for &c in ch {
            match (self.label[c], phase) {
                (Label::Empty, 0) => {}
                (Label::Partial, 0) => phase = 1,
                (Label::Full, _) => phase = 2,
                _ => return false,
            }
        }
        true
    }

    fn root_p(&mut self, r: usize) -> Option<usize> {
        let (e, f, p) = self.split(r);
        if p.len() > 2 {
            return None;
        }
        if p.is_empty() {
            let mut ch = e;
            ch.extend(self.mk_p(f));
            return Some(self.new_node(PqKind::P, ch));
        }
        let mut seq = self.expand(p[0])?;
        seq.extend(self.mk_p(f));
        if p.len() == 2 {
            let mut tail = self.expand(p[1])?;
            tail.reverse();
            seq.extend(tail);
        }
        let q = self.new_node(PqKind::Q, seq);
        if e.is_empty() {
            Some(q)
        } else {
            let mut ch = e;
            ch.push(q);
            Some(self.new_node(PqKind::P, ch))
        }
    }

    fn root_q(&mut self, r: usize) -> Option<usize> {
        let ch = self.t.nodes[r].children.clone();
        let hit: Vec<usize> =
            (0..ch.len()).filter(|&i| self.label[ch[i]] != Label::Empty).collect();
        let (i, j) = (hit[0], *hit.last().unwrap());
        if hit.len() != j - i + 1 {
            return None;
        }
        if (i + 1..j).any(|t| self.label[ch[t]] != Label::Full) {
            return None;
        }
        let mut seq: Vec<usize> = ch[..i].to_vec();
        if self.label[ch[i]] == Label::Partial {
            seq.extend(self.expand(ch[i])?);
        } else {
            seq.push(ch[i]);
        }
        seq.extend_from_slice(&ch[i + 1..j]);
        if j > i {
            if self.label[ch[j]] == Label::Partial {
                let mut tail = self.expand(ch[j])?;
                tail.reverse();
                seq.extend(tail);
            } else {
                seq.push(ch[j]);
            }
        }
        seq.extend_from_slice(&ch[j + 1..]);
        Some(self.new_node(PqKind::Q, seq))
    }
}

/// Per node id of one tree: the node of another tree containing it, and
/// whether it is contained forwards.
pub type Placement = Vec<Option<(usize, bool)>>;

/// Per input tree and node id: the containing node of the output tree and
/// whether it is contained forwards.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Containment {
    pub per_input: Vec<Placement>,
}

impl Containment {
    pub fn get(&self, input: usize, node: usize) -> Option<(usize, bool)> {
        self.per_input.get(input).and_then(|v| v.get(node).copied().flatten())
    }
}

/// One arrangement of a tree: its frontier and the orientation of every
/// orientable node (true means stored order).
pub type Arrangement = (Vec<usize>, Vec<(usize, bool)>);

impl PqTree {
    pub fn universal(n: usize) -> Result<PqTree> {
        if n == 0 {
            return Err(Error::EmptyGround);
        }
        let mut b = PqBuilder::new();
        let leaves: Vec<usize> = (0..n).map(|e| b.leaf(e)).collect();
        let root = if n == 1 { leaves[0] } else { b.p(leaves) };
        Ok(b.finish(n, root)?.0)
    }

    pub fn null(n: usize) -> PqTree {
        PqTree { n, nodes: Vec::new(), parent: Vec::new(), leaf: vec![usize::MAX; n] }
    }

    pub fn is_null(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> Option<usize> {
        if self.is_null() {
            None
        } else {
            Some(0)
        }
    }

    pub fn kind(&self, x: usize) -> PqKind {
        self.nodes[x].kind
    }

    pub fn children(&self, x: usize) -> &[usize] {
        &self.nodes[x].children
    }

    pub fn parent(&self, x: usize) -> Option<usize> {
        let p = self.parent[x];
        (p != usize::MAX).then_some(p)
    }

    pub fn leaf_of(&self, e: usize) -> usize {
        self.leaf[e]
    }

    /// Q-nodes and two-child P-nodes: the nodes whose child order carries information
    /// beyond consecutivity.
    pub fn is_orientable(&self, x: usize) -> bool {
        match self.nodes[x].kind {
            PqKind::Q => true,
            PqKind::P => self.nodes[x].children.len() == 2,
            PqKind::Leaf(_) => false,
        }
    }

    pub fn orientable_nodes(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.is_orientable(x)).collect()
    }

    /// Leaves below `x` in stored order.
    pub fn leaves(&self, x: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            if let PqKind::Leaf(e) = self.nodes[y].kind {
                out.push(e);
            }
            stack.extend(self.nodes[y].children.iter().rev());
        }
        out
    }

    /// The stored frontier; empty for the null tree.
    pub fn frontier(&self) -> Vec<usize> {
        self.root().map(|r| self.leaves(r)).unwrap_or_default()
    }

    fn check(&self) -> Result<()> {
        let mut seen = vec![false; self.n];
        for node in &self.nodes {
            match node.kind {
                PqKind::Leaf(e) => {
                    if e >= self.n || seen[e] {
                        return Err(Error::Invalid(format!("leaf {e} repeated or out of range")));
                    }
                    seen[e] = true;
                }
                _ if node.children.len() < 2 => {
                    return Err(Error::Invalid("inner node with fewer than two children".into()))
                }
                _ => {}
            }
        }
        if !self.is_null() && seen.iter().any(|&s| !s) {
            return Err(Error::Invalid("leaf set differs from the ground set".into()));
        }
        Ok(())
    }

    /// Orders of this tree in which `s` is consecutive.
    pub fn reduce(&self, s: &[usize]) -> PqTree {
        if self.is_null() {
            return self.clone();
        }
        let mut in_s = vec![false; self.n];
        for &e in s {
            in_s[e] = true;
        }
        let k = in_s.iter().filter(|&&b| b).count();
        if k <= 1 || k == self.n {
            return self.clone();
        }
        let len = self.len();
        let mut count = vec![0usize; len];
        let mut size = vec![0usize; len];
        for x in (0..len).rev() {
            if let PqKind::Leaf(e) = self.nodes[x].kind {
                size[x] = 1;
                count[x] = in_s[e] as usize;
            }
            if let Some(p) = self.parent(x) {
                size[p] += size[x];
                count[p] += count[x];
            }
        }
        let first = s.iter().copied().find(|&e| in_s[e]).unwrap();
        let mut r = self.leaf[first];
        while count[r] < k {
            r = self.parent[r];
        }
        if count[r] == size[r] {
            return self.clone();
        }
        let label = (0..len)
            .map(|x| match count[x] {
                0 => Label::Empty,
                c if c == size[x] => Label::Full,
                _ => Label::Partial,
            })
            .collect();
        let mut red = Reducer { t: self, label, nodes: self.nodes.clone() };
        let replaced = match self.nodes[r].kind {
            PqKind::P => red.root_p(r),
            PqKind::Q => red.root_q(r),
            PqKind::Leaf(_) => unreachable!("leaf cannot be a partial root"),
        };
        let Some(new_r) = replaced else {
            return PqTree::null(self.n);
        };
        let root = match self.parent(r) {
            None => new_r,
            Some(p) => {
                let pos = red.nodes[p].children.iter().position(|&c| c == r).unwrap();
                red.nodes[p].children[pos] = new_r;
                0
            }
        };
        compact(self.n, &red.nodes, root).0
    }

    /// Every inner node's leaf set, plus unions of adjacent Q-node children.
    pub fn constraints(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut below: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for x in (0..self.len()).rev() {
            match self.nodes[x].kind {
                PqKind::Leaf(e) => below[x] = vec![e],
                kind => {
                    let ch = &self.nodes[x].children;
                    if kind == PqKind::Q {
                        for w in ch.windows(2) {
                            let mut u = below[w[0]].clone();
                            u.extend_from_slice(&below[w[1]]);
                            out.push(u);
                        }
                    }
                    let mut all = Vec::new();
                    for &c in ch {
                        all.extend_from_slice(&below[c]);
                    }
                    out.push(all.clone());
                    below[x] = all;
                }
            }
        }
        out
    }

    fn index(&self) -> TreeIndex {
        let ch: Vec<Vec<usize>> = self.nodes.iter().map(|x| x.children.clone()).collect();
        TreeIndex::new(0, &ch)
    }

    /// Where each orientable node of `input` sits in `self`, whose frontiers
    /// must be a subset of the input's.
    pub fn containment_of(&self, input: &PqTree) -> Placement {
        let mut rec = vec![None; input.len()];
        if self.is_null() || input.is_null() {
            return rec;
        }
        let idx = self.index();
        let len = input.len();
        let mut top = vec![0usize; len];
        let mut lo = vec![0usize; len];
        let mut hi = vec![0usize; len];
        for x in (0..len).rev() {
            match input.nodes[x].kind {
                PqKind::Leaf(e) => {
                    let y = self.leaf[e];
                    top[x] = y;
                    lo[x] = y;
                    hi[x] = y;
                }
                _ => {
                    let ch = &input.nodes[x].children;
                    let (mut t, mut a, mut b) = (top[ch[0]], lo[ch[0]], hi[ch[0]]);
                    for &c in &ch[1..] {
                        t = idx.lca(t, top[c]);
                        if idx.pre[lo[c]] < idx.pre[a] {
                            a = lo[c];
                        }
                        if idx.pre[hi[c]] > idx.pre[b] {
                            b = hi[c];
                        }
                    }
                    top[x] = t;
                    lo[x] = a;
                    hi[x] = b;
                }
            }
        }
        for x in 0..len {
            if !input.is_orientable(x) {
                continue;
            }
            let y = top[x];
            let kids = &self.nodes[y].children;
            let mid = |c: usize| {
                child_towards(&idx, kids, lo[c]) + child_towards(&idx, kids, hi[c])
            };
            let ch = &input.nodes[x].children;
            let forward = mid(ch[0]) <= mid(*ch.last().unwrap());
            rec[x] = Some((y, forward));
        }
        rec
    }

    /// Intersection of two trees with the containment records of both.
    pub fn intersect_pair(
        a: &PqTree,
        b: &PqTree,
    ) -> (PqTree, Placement, Placement) {
        let mut t = a.clone();
        if !b.is_null() {
            for s in b.constraints() {
                t = t.reduce(&s);
                if t.is_null() {
                    break;
                }
            }
        } else {
            t = PqTree::null(a.n);
        }
        let ra = t.containment_of(a);
        let rb = t.containment_of(b);
        (t, ra, rb)
    }

    /// Intersection of all `trees`, computed as `S_j = S_{j-1} ∩ T_j`, with
    /// containment of every input orientable node in the result.
    pub fn intersect(trees: &[PqTree]) -> Result<(PqTree, Containment)> {
        let first = trees.first().ok_or_else(|| Error::Invalid("no trees".into()))?;
        if trees.iter().any(|t| t.n != first.n) {
            return Err(Error::Invalid("trees over different ground sets".into()));
        }
        let identity = |t: &PqTree| -> Placement {
            (0..t.len()).map(|x| t.is_orientable(x).then_some((x, true))).collect()
        };
        let mut s = first.clone();
        let mut steps: Vec<(Placement, Placement)> = Vec::new();
        for t in &trees[1..] {
            let (next, from_prev, from_input) = PqTree::intersect_pair(&s, t);
            s = next;
            steps.push((from_prev, from_input));
            if s.is_null() {
                return Ok((s, Containment { per_input: vec![Vec::new(); trees.len()] }));
            }
        }
        let mut per_input = vec![Vec::new(); trees.len()];
        let mut to_final = identity(&s);
        for (j, (from_prev, from_input)) in steps.iter().enumerate().rev() {
            let compose = |m: &[Option<(usize, bool)>]| -> Placement {
                m.iter()
                    .map(|x| {
                        x.and_then(|(y, d)| to_final[y].map(|(z, e)| (z, d == e)))
                    })
                    .collect()
            };
            per_input[j + 1] = compose(from_input);
            to_final = compose(from_prev);
        }
        per_input[0] = to_final;
        Ok((s, Containment { per_input }))
    }

    /// All arrangements; fails above `limit` arrangements.
    pub fn arrangements(&self, limit: usize) -> Result<Vec<Arrangement>> {
        if self.is_null() {
            return Ok(Vec::new());
        }
        let mut memo: Vec<Vec<Arrangement>> = vec![Vec::new(); self.len()];
        for x in (0..self.len()).rev() {
            let node = &self.nodes[x];
            let res = match node.kind {
                PqKind::Leaf(e) => vec![(vec![e], Vec::new())],
                PqKind::Q => {
                    let fw = product(&node.children, &memo, limit)?;
                    let mut rev_kids = node.children.clone();
                    rev_kids.reverse();
                    let bw = product(&rev_kids, &memo, limit)?;
                    let mut out = Vec::with_capacity(fw.len() + bw.len());
                    for (f, mut o) in fw {
                        o.push((x, true));
                        out.push((f, o));
                    }
                    for (f, mut o) in bw {
                        o.push((x, false));
                        out.push((f, o));
                    }
                    out
                }
                PqKind::P => {
                    let two = node.children.len() == 2;
                    let mut out = Vec::new();
                    let mut perm = node.children.clone();
                    let mut done = false;
                    while !done {
                        for (f, mut o) in product(&perm, &memo, limit)? {
                            if two {
                                o.push((x, perm[0] == node.children[0]));
                            }
                            out.push((f, o));
                        }
                        if out.len() > limit {
                            return Err(Error::Budget(format!("more than {limit} arrangements")));
                        }
                        done = !next_permutation_by(&mut perm, &node.children);
                    }
                    out
                }
            };
            if res.len() > limit {
                return Err(Error::Budget(format!("more than {limit} arrangements")));
            }
            for &c in &node.children {
                memo[c] = Vec::new();
            }
            memo[x] = res;
        }
        Ok(std::mem::take(&mut memo[0]))
    }

    /// The represented set of orders, for ground sets of at most 8 elements.
    pub fn frontiers(&self) -> Result<BTreeSet<Vec<usize>>> {
        if self.n > 8 {
            return Err(Error::Budget(format!("ground set of {} elements", self.n)));
        }
        Ok(self.arrangements(40_320)?.into_iter().map(|(f, _)| f).collect())
    }

    /// Textual form such as `P(x, Q(a, b, c), y)` using `names` for leaves.
    pub fn to_text(&self, names: &[String]) -> String {
        match self.root() {
            None => "NULL".to_string(),
            Some(r) => {
                let mut out = String::new();
                self.write_node(r, &mut out, &|e| names[e].clone());
                out
            }
        }
    }

    fn write_node(&self, x: usize, out: &mut String, name: &dyn Fn(usize) -> String) {
        match self.nodes[x].kind {
            PqKind::Leaf(e) => out.push_str(&name(e)),
            kind => {
                out.push_str(if kind == PqKind::P { "P(" } else { "Q(" });
                for (i, &c) in self.nodes[x].children.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    self.write_node(c, out, name);
                }
                out.push(')');
            }
        }
    }

    /// Parses the textual form; leaf names are resolved against `names`.
    pub fn parse_with(text: &str, names: &[String]) -> Result<PqTree> {
        let index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let text = text.trim();
        if text == "NULL" {
            return Ok(PqTree::null(names.len()));
        }
        let mut p = Parser { s: text.as_bytes(), pos: 0, b: PqBuilder::new(), index };
        let root = p.node()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(p.b.finish(names.len(), root)?.0)
    }

    /// Parses the textual form with the ground set taken as the sorted leaf names.
    pub fn parse(text: &str) -> Result<(PqTree, Vec<String>)> {
        let bytes = text.as_bytes();
        let mut names = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            if b"(),".contains(&bytes[i]) || bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < bytes.len() && !b"(),".contains(&bytes[i]) && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let mut j = i;
            while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            let word = &text[start..i];
            if bytes.get(j) != Some(&b'(') && word != "NULL" {
                names.push(word.to_string());
            }
        }
        names.sort();
        names.dedup();
        let t = PqTree::parse_with(text, &names)?;
        Ok((t, names))
    }
}

impl fmt::Display for PqTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.root() {
            None => write!(f, "NULL"),
            Some(r) => {
                let mut out = String::new();
                self.write_node(r, &mut out, &|e| e.to_string());
                write!(f, "{out}")
            }
        }
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    b: PqBuilder,
    index: HashMap<&'a str, usize>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 1, msg: format!("column {}: {msg}", self.pos + 1) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn word(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.s.len() && !b"(),".contains(&self.s[self.pos])
            && !self.s[self.pos].is_ascii_whitespace()
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }

    fn node(&mut self) -> Result<usize> {
        self.skip_ws();
        let w = self.word().to_string();
        if w.is_empty() {
            return Err(self.err("expected a node"));
        }
        self.skip_ws();
        let is_inner = (w == "P" || w == "Q") && self.s.get(self.pos) == Some(&b'(');
        if !is_inner {
            let e = *self.index.get(w.as_str()).ok_or_else(|| self.err("unknown leaf"))?;
            return Ok(self.b.leaf(e));
        }
        self.pos += 1;
        let mut kids = Vec::new();
        loop {
            kids.push(self.node()?);
            self.skip_ws();
            match self.s.get(self.pos) {
                Some(b',') => self.pos += 1,
                Some(b')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err("expected `,` or `)`")),
            }
        }
        if kids.len() < 2 {
            return Err(self.err("inner node with fewer than two children"));
        }
        Ok(if w == "P" { self.b.p(kids) } else { self.b.q(kids) })
    }
}

fn product(
    kids: &[usize],
    memo: &[Vec<Arrangement>],
    limit: usize,
) -> Result<Vec<Arrangement>> {
    let mut acc: Vec<Arrangement> = vec![(Vec::new(), Vec::new())];
    for &c in kids {
        let mut next = Vec::with_capacity(acc.len() * memo[c].len());
        for (f, o) in &acc {
            for (g, p) in &memo[c] {
                let mut f2 = f.clone();
                f2.extend_from_slice(g);
                let mut o2 = o.clone();
                o2.extend_from_slice(p);
                next.push((f2, o2));
            }
        }
        if next.len() > limit {
            return Err(Error::Budget(format!("more than {limit} arrangements")));
        }
        acc = next;
    }
    Ok(acc)
}

/// Advances `perm` to the next permutation in the order induced by positions in `base`.
fn next_permutation_by(perm: &mut [usize], base: &[usize]) -> bool {
    let rank: HashMap<usize, usize> = base.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let mut r: Vec<usize> = perm.iter().map(|x| rank[x]).collect();
    let n = r.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && r[i - 1] >= r[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while r[j] <= r[i - 1] {
        j -= 1;
    }
    r.swap(i - 1, j);
    r[i..].reverse();
    for (slot, &k) in perm.iter_mut().zip(&r) {
        *slot = base[k];
    }
    true
}
