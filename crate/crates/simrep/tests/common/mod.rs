#![allow(dead_code)]

use std::collections::HashSet;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use simrep::graph::{Graph, SunflowerInstance};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn letters(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_indices(letters(n), edges).unwrap()
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).tuple_combinations().collect()
}

fn connected_mask(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut seen = 1u32;
    let mut frontier = 1u32;
    while frontier != 0 {
        let mut next = 0;
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                if frontier >> a & 1 == 1 {
                    next |= 1 << b;
                }
                if frontier >> b & 1 == 1 {
                    next |= 1 << a;
                }
            }
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen == (1 << n) - 1
}

/// One representative of every isomorphism class of connected graphs on
/// `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let ps = pairs(n);
    let slot = |a: usize, b: usize| ps.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let images: Vec<Vec<usize>> = (0..n)
        .permutations(n)
        .map(|p| ps.iter().map(|&(a, b)| slot(p[a], p[b])).collect())
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << ps.len()) {
        if !connected_mask(n, &ps, mask) {
            continue;
        }
        let canon = images
            .iter()
            .map(|img| {
                let mut m = 0u32;
                for (k, &t) in img.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        m |= 1 << t;
                    }
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let edges: Vec<(usize, usize)> =
                (0..ps.len()).filter(|&k| mask >> k & 1 == 1).map(|k| ps[k]).collect();
            out.push(graph(n, &edges));
        }
    }
    out
}

pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

pub fn random_graph(rng: &mut ChaCha8Rng, ids: Vec<String>, p: f64) -> Graph {
    let n = ids.len();
    let edges: Vec<(usize, usize)> = pairs(n).into_iter().filter(|_| rng.gen_bool(p)).collect();
    Graph::from_indices(ids, &edges).unwrap()
}

/// Permutation graph of `top`/`bottom` over named elements.
pub fn permutation_graph(ids: Vec<String>, top: &[usize], bottom: &[usize]) -> Graph {
    let n = ids.len();
    let mut tp = vec![0; n];
    let mut bp = vec![0; n];
    for i in 0..n {
        tp[top[i]] = i;
        bp[bottom[i]] = i;
    }
    let edges: Vec<(usize, usize)> = pairs(n)
        .into_iter()
        .filter(|&(a, b)| (tp[a] < tp[b]) != (bp[a] < bp[b]))
        .collect();
    Graph::from_indices(ids, &edges).unwrap()
}

pub fn shuffled(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    v
}

/// Random sunflower instance. Half of the inputs extend a diagram of the
/// shared graph by inserting private elements; the rest get random edges.
pub fn random_sunflower(
    rng: &mut ChaCha8Rng,
    h_max: usize,
    r_max: usize,
    g_max: usize,
) -> SunflowerInstance {
    let h_n = rng.gen_range(1..=h_max);
    let h_ids: Vec<String> = (0..h_n).map(|i| format!("h{i}")).collect();
    let (top, bottom) = (shuffled(rng, h_n), shuffled(rng, h_n));
    let structured = rng.gen_bool(0.6);
    let h = if structured {
        permutation_graph(h_ids.clone(), &top, &bottom)
    } else {
        random_graph(rng, h_ids.clone(), 0.5)
    };
    let r = rng.gen_range(1..=r_max);
    let mut inputs = Vec::new();
    for i in 0..r {
        let extra = rng.gen_range(0..=g_max - h_n);
        let mut ids = h_ids.clone();
        ids.extend((0..extra).map(|j| format!("g{i}_{j}")));
        let n = ids.len();
        let g = if structured && rng.gen_bool(0.7) {
            let mut t = top.clone();
            let mut b = bottom.clone();
            for e in h_n..n {
                let p = rng.gen_range(0..=t.len());
                t.insert(p, e);
                let q = rng.gen_range(0..=b.len());
                b.insert(q, e);
            }
            permutation_graph(ids, &t, &b)
        } else {
            let mut edges: Vec<(usize, usize)> = h.edges().collect();
            let p = rng.gen_range(0.2..0.8);
            for (a, b) in pairs(n) {
                if b >= h_n && rng.gen_bool(p) {
                    edges.push((a, b));
                }
            }
            Graph::from_indices(ids, &edges).unwrap()
        };
        inputs.push(g);
    }
    SunflowerInstance::new(h, inputs)
}

/// Every vertex subset of `0..n` of size at most `k`.
pub fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0..=k.min(n)).flat_map(|s| (0..n).combinations(s)).collect()
}

/// Cached [`connected_graphs_up_to`]`(6)`.
pub fn corpus() -> &'static [Graph] {
    static CORPUS: std::sync::OnceLock<Vec<Graph>> = std::sync::OnceLock::new();
    CORPUS.get_or_init(|| connected_graphs_up_to(6))
}
/// Clique shared graph; every input hangs pendants off distinct random clique vertices.
pub fn pendant_cliques(rng: &mut ChaCha8Rng) -> SunflowerInstance {
    let h_n = rng.gen_range(3..=4);
    let ids: Vec<String> = (0..h_n).map(|i| format!("h{i}")).collect();
    let clique: Vec<(usize, usize)> = pairs(h_n);
    let h = Graph::from_indices(ids.clone(), &clique).unwrap();
    let inputs = (0..rng.gen_range(2..=3))
        .map(|i| {
            let roles = shuffled(rng, h_n);
            let mut all = ids.clone();
            let mut edges = clique.clone();
            for (j, &x) in roles.iter().take(6 - h_n).enumerate() {
                all.push(format!("g{i}_{j}"));
                edges.push((x, h_n + j));
            }
            Graph::from_indices(all, &edges).unwrap()
        })
        .collect();
    SunflowerInstance::new(h, inputs)
}

pub mod checks;
