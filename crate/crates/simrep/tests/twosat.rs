use proptest::prelude::*;
use simrep::oracle::truth_table;
use simrep::twosat::{solve, Formula2, Lit};

#[test]
fn chain_fixture() {
    let mut f = Formula2::new();
    let (x, y, z) = (f.var("x"), f.var("y"), f.var("z"));
    f.iff(x, y);
    f.xor(y, z);
    let a = solve(&f).unwrap();
    assert!(f.satisfied_by(&a));
    assert_eq!(a[x], a[y]);
    assert_ne!(a[y], a[z]);
}

#[test]
fn fixing_and_merging() {
    let mut f = Formula2::new();
    let x = f.var("x");
    f.fix(x, true);
    let mut g = Formula2::new();
    let (x2, y) = (g.var("x"), g.var("y"));
    g.xor(x2, y);
    f.merge(&g);
    assert_eq!(f.num_vars(), 2);
    let a = solve(&f).unwrap();
    assert_eq!(f.value(&a, "x"), Some(true));
    assert_eq!(f.value(&a, "y"), Some(false));
    f.fix(f.lookup("y").unwrap(), true);
    assert!(solve(&f).is_none());
}

#[test]
fn large_implication_chain() {
    let mut f = Formula2::new();
    let n = 200_000;
    let vars: Vec<usize> = (0..n).map(|i| f.var(&format!("v{i}"))).collect();
    for w in vars.windows(2) {
        f.iff(w[0], w[1]);
    }
    f.fix(vars[n - 1], true);
    let a = solve(&f).unwrap();
    assert!(a.iter().all(|&b| b));
}

fn formula(n: usize, clauses: &[(usize, bool, usize, bool)]) -> Formula2 {
    let mut f = Formula2::new();
    for i in 0..n {
        f.var(&format!("x{i}"));
    }
    for &(a, na, b, nb) in clauses {
        let l = |v: usize, neg: bool| if neg { Lit::neg(v % n) } else { Lit::pos(v % n) };
        f.clause(l(a, na), l(b, nb));
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn agrees_with_truth_table(
        n in 1usize..=15,
        clauses in proptest::collection::vec((any::<usize>(), any::<bool>(), any::<usize>(), any::<bool>()), 0..40),
    ) {
        let f = formula(n, &clauses);
        let fast = solve(&f);
        let slow = truth_table(&f).unwrap();
        prop_assert_eq!(fast.is_some(), slow.is_some());
        if let Some(a) = fast {
            prop_assert!(f.satisfied_by(&a));
        }
    }
}
