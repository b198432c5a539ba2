//! 2-CNF formulas over named variables and a linear-time solver.

use std::collections::HashMap;

/// Literal: `2 * var` is the variable, `2 * var + 1` its negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit(2 * var as u32)
    }

    pub fn neg(var: usize) -> Lit {
        Lit(2 * var as u32 + 1)
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_neg(self) -> bool {
        self.0 & 1 == 1
    }

    fn code(self) -> usize {
        self.0 as usize
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.var()] != self.is_neg()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Formula2 {
    names: Vec<String>,
    index: HashMap<String, usize>,
    clauses: Vec<(Lit, Lit)>,
}

impl Formula2 {
    pub fn new() -> Formula2 {
        Formula2::default()
    }

    /// Index of the variable called `name`, declaring it if needed.
    pub fn var(&mut self, name: &str) -> usize {
        if let Some(&v) = self.index.get(name) {
            return v;
        }
        let v = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        v
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn clauses(&self) -> &[(Lit, Lit)] {
        &self.clauses
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn clause(&mut self, a: Lit, b: Lit) {
        assert!(a.var() < self.num_vars() && b.var() < self.num_vars(), "undeclared variable");
        self.clauses.push((a, b));
    }

    /// `a <-> b`
    pub fn iff(&mut self, a: usize, b: usize) {
        self.clause(Lit::neg(a), Lit::pos(b));
        self.clause(Lit::pos(a), Lit::neg(b));
    }

    /// `a xor b`
    pub fn xor(&mut self, a: usize, b: usize) {
        self.clause(Lit::pos(a), Lit::pos(b));
        self.clause(Lit::neg(a), Lit::neg(b));
    }

    /// `a <-> b` when `same`, otherwise `a xor b`.
    pub fn link(&mut self, a: usize, b: usize, same: bool) {
        if same {
            self.iff(a, b)
        } else {
            self.xor(a, b)
        }
    }

    /// Forces `v` to `value`.
    pub fn fix(&mut self, v: usize, value: bool) {
        let l = if value { Lit::pos(v) } else { Lit::neg(v) };
        self.clause(l, l);
    }

    /// Conjunction with `other`; variables with equal names are identified.
    pub fn merge(&mut self, other: &Formula2) {
        let map: Vec<usize> = other.names.iter().map(|n| self.var(n)).collect();
        let tr = |l: Lit| {
            let v = map[l.var()];
            if l.is_neg() {
                Lit::neg(v)
            } else {
                Lit::pos(v)
            }
        };
        for &(a, b) in &other.clauses {
            self.clauses.push((tr(a), tr(b)));
        }
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|&(a, b)| a.eval(assignment) || b.eval(assignment))
    }

    pub fn value(&self, assignment: &[bool], name: &str) -> Option<bool> {
        self.lookup(name).map(|v| assignment[v])
    }
}

/// Satisfying assignment, or `None` if the formula is unsatisfiable.
///
/// Unconstrained variables come out false.
pub fn solve(f: &Formula2) -> Option<Vec<bool>> {
    let n = f.num_vars();
    let nodes = 2 * n;
    let mut deg = vec![0usize; nodes + 1];
    for &(a, b) in &f.clauses {
        deg[(!a).code()] += 1;
        deg[(!b).code()] += 1;
    }
    let mut start = vec![0usize; nodes + 1];
    for i in 0..nodes {
        start[i + 1] = start[i] + deg[i];
    }
    let mut fill = start.clone();
    let mut succ = vec![0usize; start[nodes]];
    for &(a, b) in &f.clauses {
        succ[fill[(!a).code()]] = b.code();
        fill[(!a).code()] += 1;
        succ[fill[(!b).code()]] = a.code();
        fill[(!b).code()] += 1;
    }
    let comp = tarjan(nodes, &start, &succ);
    let mut out = vec![false; n];
    for (v, slot) in out.iter_mut().enumerate() {
        let (p, q) = (comp[2 * v], comp[2 * v + 1]);
        if p == q {
            return None;
        }
        *slot = p < q;
    }
    assert!(f.satisfied_by(&out), "2-SAT assignment violates a clause");
    Some(out)
}

/// Components numbered in completion order (sinks first). Roots are visited
/// negated-literal first so free variables settle on false.
fn tarjan(nodes: usize, start: &[usize], succ: &[usize]) -> Vec<usize> {
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; nodes];
    let mut low = vec![0usize; nodes];
    let mut on_stack = vec![false; nodes];
    let mut comp = vec![NONE; nodes];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut counter = 0;
    let mut ncomp = 0;
    let roots = (0..nodes / 2).flat_map(|v| [2 * v + 1, 2 * v]);
    for root in roots {
        if index[root] != NONE {
            continue;
        }
        call.push((root, start[root]));
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (u, ref mut it)) = call.last_mut() {
            if *it < start[u + 1] {
                let w = succ[*it];
                *it += 1;
                if index[w] == NONE {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, start[w]));
                } else if on_stack[w] {
                    low[u] = low[u].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(p, _)) = call.last() {
                low[p] = low[p].min(low[u]);
            }
            if low[u] == index[u] {
                loop {
                    let w = stack.pop().unwrap();
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == u {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    comp
}
