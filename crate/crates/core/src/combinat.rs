//! Permutations and sign bookkeeping shared by the signed-sum formulas.

/// All permutations of `0..n` paired with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permute(&mut current, 0, &mut out);
    out.sort();
    out.into_iter().map(|p| {
        let s = permutation_sign(&p);
        (p, s)
    }).collect()
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}

/// Ordered selections of `k` distinct elements from `0..n`, lexicographic.
pub fn ordered_selections(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for prefix in &out {
            for i in (0..n).filter(|i| !prefix.contains(i)) {
                let mut p = prefix.clone();
                p.push(i);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Sign of a permutation given in one-line notation, via inversion count.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| ((i + 1)..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}
