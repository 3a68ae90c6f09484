//! Small enumeration helpers shared by the decision procedures. The sets
//! involved (generated names, private names) stay tiny, so eager
//! materialization is fine.

use crate::span::Span;
use crate::syntax::Name;

/// All k-element index combinations drawn from `0..n`, in lexicographic
/// order.
pub(crate) fn combinations_idx(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if idx[i] < i + n - k {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}

/// All permutations of `items`, in lexicographic position order.
pub(crate) fn permutations(items: &[Name]) -> Vec<Vec<Name>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &head) in items.iter().enumerate() {
        let mut rest: Vec<Name> = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Every partial bijection between `left` and `right`, as spans, ordered
/// by ascending size (the empty span first). For each size k, all
/// k-subsets of `left` are paired with all k-arrangements of `right`.
pub(crate) fn partial_bijections(left: &[Name], right: &[Name]) -> Vec<Span> {
    let mut out = Vec::new();
    let max = left.len().min(right.len());
    for k in 0..=max {
        for lidx in combinations_idx(left.len(), k) {
            let chosen: Vec<Name> = lidx.iter().map(|&i| left[i]).collect();
            for ridx in combinations_idx(right.len(), k) {
                let targets: Vec<Name> = ridx.iter().map(|&i| right[i]).collect();
                for perm in permutations(&targets) {
                    let span = Span::from_pairs(chosen.iter().copied().zip(perm))
                        .expect("distinct names on both sides");
                    out.push(span);
                }
            }
        }
    }
    out
}
