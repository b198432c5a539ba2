/// Stable LSD radix sort of `items` by a tuple of small integer keys,
/// most significant key first. Each key must be `< bound`.
pub(crate) fn radix_sort_by<T: Copy>(items: &mut Vec<T>, bound: usize, keys: &[&dyn Fn(&T) -> usize]) {
    if items.is_empty() {
        return;
    }
    let mut buf = Vec::with_capacity(items.len());
    let mut count = vec![0usize; bound + 1];
    for key in keys.iter().rev() {
        count.iter_mut().for_each(|c| *c = 0);
        for it in items.iter() {
            count[key(it) + 1] += 1;
        }
        for i in 1..=bound {
            count[i] += count[i - 1];
        }
        buf.clear();
        buf.resize(items.len(), items[0]);
        for it in items.iter() {
            let k = key(it);
            buf[count[k]] = *it;
            count[k] += 1;
        }
        std::mem::swap(items, &mut buf);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_lexicographically() {
        let mut v = vec![(2, 1), (0, 3), (2, 0), (1, 1), (0, 0)];
        radix_sort_by(&mut v, 4, &[&|t: &(usize, usize)| t.0, &|t: &(usize, usize)| t.1]);
        assert_eq!(v, vec![(0, 0), (0, 3), (1, 1), (2, 0), (2, 1)]);
    }
}
