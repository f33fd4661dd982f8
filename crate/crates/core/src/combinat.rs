//! Small enumeration helpers: compositions, partitions, set partitions and
//! multisets. Output order is deterministic.

/// Ordered tuples of positive integers summing to `n`, grouped by length
/// and in lexicographic order within a length.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    (1..=n).flat_map(|k| compositions_into(n, k)).collect()
}

/// Ordered `k`-tuples of positive integers summing to `n`.
pub fn compositions_into(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            if n == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if n < k {
            return;
        }
        for first in 1..=n - (k - 1) {
            prefix.push(first);
            go(n - first, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        go(n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Integer partitions of `n` as nonincreasing lists.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of `items` into nonempty blocks. Blocks keep the input
/// order and are ordered by their first element.
pub fn set_partitions<T: Clone>(items: &[T]) -> Vec<Vec<Vec<T>>> {
    let Some((last, rest)) = items.split_last() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for p in set_partitions(rest) {
        for b in 0..p.len() {
            let mut q = p.clone();
            q[b].push(last.clone());
            out.push(q);
        }
        let mut q = p;
        q.push(vec![last.clone()]);
        out.push(q);
    }
    out
}

/// Nondecreasing `k`-tuples drawn from `0..n`.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for x in start..n {
            prefix.push(x);
            go(x, n, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Run-length multiplicities of a sorted slice.
pub fn multiplicities<T: PartialEq>(sorted: &[T]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for (n, x) in sorted.iter().enumerate() {
        if n > 0 && sorted[n - 1] == *x {
            *out.last_mut().unwrap() += 1;
        } else {
            out.push(1);
        }
    }
    out
}
