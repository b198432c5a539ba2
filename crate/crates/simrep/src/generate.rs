//! Seeded instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, SunflowerInstance};
use crate::perm::{diagram_graph, PermDiagram};
use crate::reductions::TotalOrderingInstance;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random permutation diagram on `0..n` and its graph, vertices
/// named `{prefix}{i}`.
pub fn random_permutation_graph(rng: &mut ChaCha8Rng, n: usize, prefix: &str) -> (Graph, PermDiagram) {
    let mut top: Vec<usize> = (0..n).collect();
    let mut bottom = top.clone();
    top.shuffle(rng);
    bottom.shuffle(rng);
    let d = PermDiagram::full(top, bottom).expect("permutations");
    let names: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
    (diagram_graph(&d, &names), d)
}

/// Vertex count whose random permutation graph has about `m` edges.
pub fn vertices_for_edges(m: usize) -> usize {
    ((4.0 * m as f64).sqrt().round() as usize).max(2)
}

/// A permutation graph with about `m` edges.
pub fn scaling_graph(seed: u64, m: usize) -> Graph {
    random_permutation_graph(&mut rng(seed), vertices_for_edges(m), "v").0
}

/// A feasible sunflower instance with `r` inputs and about `m` edges in
/// total: the shared graph holds half of the vertices of every input, and each
/// input extends the shared diagram by inserting private chords at random.
pub fn scaling_sunflower(seed: u64, m: usize, r: usize) -> SunflowerInstance {
    let mut rng = rng(seed);
    let per_input = m / r.max(1);
    let n = vertices_for_edges(per_input);
    let n_h = n / 2;
    let (h, d) = random_permutation_graph(&mut rng, n_h, "h");
    let inputs = (0..r).map(|i| extend_diagram(&mut rng, &h, &d, n - n_h, &format!("g{i}_"))).collect();
    SunflowerInstance::new(h, inputs)
}

/// `h` plus `extra` private chords inserted at random positions of `d`.
pub fn extend_diagram(rng: &mut ChaCha8Rng, h: &Graph, d: &PermDiagram, extra: usize, prefix: &str) -> Graph {
    let n_h = h.n();
    let mut top = d.top().to_vec();
    let mut bottom = d.bottom().to_vec();
    for e in n_h..n_h + extra {
        top.insert(rng.gen_range(0..=top.len()), e);
        bottom.insert(rng.gen_range(0..=bottom.len()), e);
    }
    let mut names = h.ids().to_vec();
    names.extend((0..extra).map(|j| format!("{prefix}{j}")));
    diagram_graph(&PermDiagram::full(top, bottom).expect("permutations"), &names)
}

/// A random TotalOrdering instance on elements `s0..s{k-1}` with `t` triples.
pub fn random_total_ordering(seed: u64, k: usize, t: usize) -> TotalOrderingInstance {
    let mut rng = rng(seed);
    let elements: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
    let triples: Vec<(String, String, String)> = (0..t)
        .map(|_| {
            let p: Vec<&String> = elements.choose_multiple(&mut rng, 3).collect();
            (p[0].clone(), p[1].clone(), p[2].clone())
        })
        .collect();
    TotalOrderingInstance::new(&elements, &triples).expect("valid by construction")
}
