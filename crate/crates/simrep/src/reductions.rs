//! TotalOrdering to simultaneous orientation instances.
//!
//! Every triple `(x, y, z)` becomes the five-vertex gadget with edges
//! `x a_i, x y, x z, y z, z b_i`; the element set becomes a clique.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};
use crate::oracle::{brute_simorient, total_ordering_brute};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalOrderingInstance {
    elements: Vec<String>,
    triples: Vec<(String, String, String)>,
}

impl TotalOrderingInstance {
    pub fn new<S: AsRef<str>>(elements: &[S], triples: &[(S, S, S)]) -> Result<TotalOrderingInstance> {
        let elements: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen: HashSet<String> = HashSet::new();
        for e in &elements {
            if !seen.insert(e.clone()) {
                return Err(Error::DuplicateVertex(e.clone()));
            }
        }
        let mut out = Vec::with_capacity(triples.len());
        for (x, y, z) in triples {
            let t = [x.as_ref(), y.as_ref(), z.as_ref()];
            for v in t {
                if !seen.contains(v) {
                    return Err(Error::UnknownVertex(v.to_string()));
                }
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(Error::Invalid(format!("triple ({}, {}, {}) repeats an element", t[0], t[1], t[2])));
            }
            out.push((t[0].to_string(), t[1].to_string(), t[2].to_string()));
        }
        let inst = TotalOrderingInstance { elements, triples: out };
        for i in 1..=inst.triples.len() {
            for v in inst.fresh(i) {
                if seen.contains(v.as_str()) {
                    return Err(Error::Invalid(format!("element `{v}` collides with a gadget vertex")));
                }
            }
        }
        Ok(inst)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn triples(&self) -> &[(String, String, String)] {
        &self.triples
    }

    fn fresh(&self, i: usize) -> [String; 2] {
        [format!("a{i}"), format!("b{i}")]
    }
}

/// `K_S` followed by one gadget per triple, numbered from 1.
pub fn to_simorient(inst: &TotalOrderingInstance) -> Vec<Graph> {
    let n = inst.elements.len();
    let clique: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let mut out = vec![Graph::from_indices(inst.elements.clone(), &clique).expect("distinct elements")];
    for (i, (x, y, z)) in inst.triples.iter().enumerate() {
        let [a, b] = inst.fresh(i + 1);
        let ids = vec![x.clone(), y.clone(), z.clone(), a, b];
        let g = Graph::from_indices(ids, &[(0, 3), (0, 1), (0, 2), (1, 2), (2, 4)]).expect("gadget is simple");
        out.push(g);
    }
    out
}

/// Complements of the graphs produced by [`to_simorient`].
pub fn to_simorient_complements(inst: &TotalOrderingInstance) -> Vec<Graph> {
    to_simorient(inst).iter().map(Graph::complement).collect()
}

/// A total order satisfying every triple, by enumeration.
pub fn solve_brute(inst: &TotalOrderingInstance) -> Option<Vec<String>> {
    total_ordering_brute(&inst.elements, &inst.triples)
}

/// Whether the reduced graphs admit agreeing transitive orientations.
pub fn reduced_brute(inst: &TotalOrderingInstance) -> Result<Option<Vec<Orientation>>> {
    brute_simorient(&to_simorient(inst))
}

/// Reads the order of `S` off the clique orientation: sources first.
pub fn order_from_clique(g0: &Graph, o: &Orientation) -> Vec<String> {
    let mut indeg = vec![0usize; g0.n()];
    for (_, v) in o.arcs(g0) {
        indeg[v] += 1;
    }
    let mut vs: Vec<usize> = (0..g0.n()).collect();
    vs.sort_by_key(|&v| indeg[v]);
    vs.into_iter().map(|v| g0.id(v).to_string()).collect()
}
