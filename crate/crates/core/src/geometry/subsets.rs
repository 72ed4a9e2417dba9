//! Index-subset enumeration in the deterministic order used everywhere in
//! this crate: ascending cardinality, then lexicographic on the sorted tuple.

/// All non-empty subsets of `0..q`.
pub fn all_nonempty(q: usize) -> Vec<Vec<usize>> {
    assert!(q <= 24, "subset enumeration beyond q = 24 is unsupported");
    let mut out: Vec<Vec<usize>> = (1u32..(1u32 << q))
        .map(|mask| {
            (0..q)
                .filter(|&i| mask & (1 << i) != 0)
                .collect::<Vec<usize>>()
        })
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

/// All `k`-element subsets of `0..q`, lexicographic.
pub fn k_subsets(q: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(q: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..q {
            if q - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(q, k, i + 1, cur, out);
            cur.pop();
        }
    }
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    rec(q, k, 0, &mut cur, &mut out);
    out
}

/// Sorted union of two sorted index sets.
pub fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Sorted complement of `a` within `0..q`.
pub fn complement(q: usize, a: &[usize]) -> Vec<usize> {
    (0..q).filter(|i| !a.contains(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_cardinality_then_lex() {
        let subs = all_nonempty(3);
        let expected: Vec<Vec<usize>> = vec![
            vec![0],
            vec![1],
            vec![2],
            vec![0, 1],
            vec![0, 2],
            vec![1, 2],
            vec![0, 1, 2],
        ];
        assert_eq!(subs, expected);
    }

    #[test]
    fn k_subset_counts() {
        assert_eq!(k_subsets(5, 2).len(), 10);
        assert_eq!(k_subsets(6, 3).len(), 20);
        assert_eq!(k_subsets(4, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn union_and_complement() {
        assert_eq!(union(&[0, 2], &[1, 2]), vec![0, 1, 2]);
        assert_eq!(complement(4, &[1, 3]), vec![0, 2]);
    }
}
