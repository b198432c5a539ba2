use simrep::generate::*;
use simrep::graph::validate_sunflower;

#[test]
fn generators_are_deterministic() {
    assert_eq!(scaling_graph(1, 1000), scaling_graph(1, 1000));
    assert_ne!(scaling_graph(1, 1000), scaling_graph(2, 1000));
    assert_eq!(scaling_sunflower(4, 3000, 3), scaling_sunflower(4, 3000, 3));
    assert_eq!(random_total_ordering(9, 4, 3), random_total_ordering(9, 4, 3));
}

#[test]
fn permutation_graphs_realize_their_diagram() {
    let mut r = rng(5);
    for n in [1, 2, 7, 40] {
        let (g, d) = random_permutation_graph(&mut r, n, "v");
        assert_eq!(g.n(), n);
        assert!(d.realizes(&g));
    }
}

#[test]
fn edge_targets_are_roughly_met() {
    for m in [1_000usize, 10_000] {
        let g = scaling_graph(3, m);
        assert!(g.m() > m / 2 && g.m() < m * 2, "{} edges for target {m}", g.m());
    }
    let inst = scaling_sunflower(3, 10_000, 3);
    assert!(validate_sunflower(&inst));
    assert_eq!(inst.inputs.len(), 3);
    let total: usize = inst.inputs.iter().map(|g| g.m()).sum();
    assert!(total > 5_000 && total < 20_000, "{total}");
}
