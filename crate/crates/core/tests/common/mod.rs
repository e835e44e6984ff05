//! Independent brute-force oracles. Nothing here calls into the solver; the
//! symmetric functions are recomputed by summing over subsets.
#![allow(dead_code)]

/// `sigma_j(x)` for every `j`, by summing over all subsets.
pub fn subset_sigma(x: &[u128]) -> Vec<u128> {
    let n = x.len();
    let mut e = vec![0u128; n + 1];
    for mask in 0u32..(1 << n) {
        let mut p = 1u128;
        for (i, v) in x.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p *= v;
            }
        }
        e[mask.count_ones() as usize] += p;
    }
    e
}

pub fn is_solution(x: &[u128], k: usize) -> bool {
    let e = subset_sigma(x);
    e[k] == e[x.len()]
}

/// Every nondecreasing tuple of length `n` with entries `<= cap`.
pub fn all_tuples(n: usize, cap: u128) -> Vec<Vec<u128>> {
    fn go(n: usize, cap: u128, cur: &mut Vec<u128>, out: &mut Vec<Vec<u128>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let lo = cur.last().copied().unwrap_or(1);
        for w in lo..=cap {
            cur.push(w);
            go(n, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, cap, &mut Vec::new(), &mut out);
    out
}

/// Plain enumeration over entries `<= cap`.
pub fn bounded_solutions(n: usize, k: usize, cap: u128) -> Vec<Vec<u128>> {
    all_tuples(n, cap)
        .into_iter()
        .filter(|t| is_solution(t, k))
        .collect()
}

/// All solutions, with no a priori bound on the entries.
///
/// The reciprocal form `sigma_k / sigma_n` is decreasing in every variable, so
/// once `(prefix, w, ..., w)` drops below 1 no larger `w` can work. The last
/// coordinate is solved from the linear equation it satisfies.
pub fn all_solutions(n: usize, k: usize) -> Vec<Vec<u128>> {
    assert!(n >= 2 && k < n);
    let mut out = Vec::new();
    walk(n, k, &mut Vec::new(), &mut out);
    out.sort();
    out
}

fn walk(n: usize, k: usize, prefix: &mut Vec<u128>, out: &mut Vec<Vec<u128>>) {
    let t = prefix.len();
    if t == n - 1 {
        // sigma_k(y) + z sigma_{k-1}(y) = z sigma_{n-1}(y)
        let e = subset_sigma(prefix);
        let below = if k == 0 { 0 } else { e[k - 1] };
        if e[n - 1] > below && e[k].is_multiple_of(e[n - 1] - below) {
            let z = e[k] / (e[n - 1] - below);
            if z >= *prefix.last().unwrap_or(&1) {
                let mut full = prefix.clone();
                full.push(z);
                if is_solution(&full, k) {
                    out.push(full);
                }
            }
        }
        return;
    }
    // subsets of size n-k inside the prefix already give a reciprocal sum >= 1
    if t >= n - k {
        let e = subset_sigma(prefix);
        if e[t - (n - k)] >= e[t] {
            return;
        }
    }
    let mut w = prefix.last().copied().unwrap_or(1);
    loop {
        let mut probe = prefix.clone();
        probe.resize(n, w);
        let e = subset_sigma(&probe);
        if e[k] < e[n] {
            return;
        }
        prefix.push(w);
        walk(n, k, prefix, out);
        prefix.pop();
        w += 1;
    }
}

pub fn to_u128(t: &sigmaeq::SolutionTuple) -> Vec<u128> {
    t.entries()
        .iter()
        .map(|x| u128::try_from(x).unwrap())
        .collect()
}

/// The n = 5, k = 3 list as published.
pub const N5_K3: [[u64; 5]; 27] = [
    [1, 2, 4, 15, 218],
    [1, 2, 4, 16, 116],
    [1, 2, 4, 17, 82],
    [1, 2, 4, 18, 65],
    [1, 2, 4, 20, 48],
    [1, 2, 4, 26, 31],
    [1, 2, 5, 9, 163],
    [1, 2, 5, 10, 60],
    [1, 2, 6, 7, 152],
    [1, 2, 6, 8, 43],
    [1, 2, 7, 7, 35],
    [1, 2, 7, 8, 22],
    [1, 2, 7, 9, 17],
    [1, 2, 8, 8, 16],
    [1, 3, 3, 8, 129],
    [1, 3, 3, 9, 48],
    [1, 3, 3, 12, 21],
    [1, 3, 4, 5, 107],
    [1, 4, 4, 4, 28],
    [2, 2, 2, 7, 46],
    [2, 2, 2, 8, 26],
    [2, 2, 2, 10, 16],
    [2, 2, 2, 11, 14],
    [2, 2, 3, 4, 19],
    [2, 2, 4, 4, 8],
    [2, 3, 3, 3, 9],
    [3, 3, 3, 3, 4],
];
