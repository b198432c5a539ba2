/// Rooted tree preprocessed for O(1) lowest-common-ancestor queries
/// (Euler tour plus a sparse table over first occurrences).
#[derive(Clone, Debug)]
pub(crate) struct TreeIndex {
    pub depth: Vec<usize>,
    pub pre: Vec<usize>,
    pub post: Vec<usize>,
    first: Vec<usize>,
    euler: Vec<usize>,
    table: Vec<Vec<usize>>,
}

impl TreeIndex {
    pub fn new(root: usize, children: &[Vec<usize>]) -> TreeIndex {
        let n = children.len();
        let mut depth = vec![0; n];
        let mut pre = vec![0; n];
        let mut post = vec![0; n];
        let mut first = vec![0; n];
        let mut euler = Vec::with_capacity(2 * n);
        let mut stack = vec![(root, 0usize)];
        let mut clock = 0;
        let mut pclock = 0;
        pre[root] = clock;
        clock += 1;
        first[root] = 0;
        euler.push(root);
        while let Some(&mut (u, ref mut i)) = stack.last_mut() {
            if *i < children[u].len() {
                let c = children[u][*i];
                *i += 1;
                depth[c] = depth[u] + 1;
                pre[c] = clock;
                clock += 1;
                first[c] = euler.len();
                euler.push(c);
                stack.push((c, 0));
            } else {
                post[u] = pclock;
                pclock += 1;
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    euler.push(p);
                }
            }
        }
        let len = euler.len();
        let mut table = vec![euler.clone()];
        let mut k = 1;
        while (1 << k) <= len {
            let prev = &table[k - 1];
            let half = 1 << (k - 1);
            let row: Vec<usize> = (0..=len - (1 << k))
                .map(|i| {
                    let (a, b) = (prev[i], prev[i + half]);
                    if depth[a] <= depth[b] {
                        a
                    } else {
                        b
                    }
                })
                .collect();
            table.push(row);
            k += 1;
        }
        TreeIndex { depth, pre, post, first, euler, table }
    }

    pub fn lca(&self, a: usize, b: usize) -> usize {
        let (mut l, mut r) = (self.first[a], self.first[b]);
        if l > r {
            std::mem::swap(&mut l, &mut r);
        }
        let k = usize::BITS as usize - 1 - (r - l + 1).leading_zeros() as usize;
        let (x, y) = (self.table[k][l], self.table[k][r + 1 - (1 << k)]);
        if self.depth[x] <= self.depth[y] {
            x
        } else {
            y
        }
    }

    /// Whether `a` is an ancestor of `b` (or equal).
    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        self.pre[a] <= self.pre[b] && self.post[b] <= self.post[a]
    }

    #[allow(dead_code)]
    pub fn tour_len(&self) -> usize {
        self.euler.len()
    }
}

/// Position of the child of `node` whose subtree contains `x`, given children in preorder.
pub(crate) fn child_towards(idx: &TreeIndex, kids: &[usize], x: usize) -> usize {
    let p = idx.pre[x];
    kids.partition_point(|&c| idx.pre[c] <= p) - 1
}
