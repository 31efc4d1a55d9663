//! Lexicographic enumeration of subsets and canonical colorings, plus the
//! counting functions used for search budgets.

use std::ops::ControlFlow;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of restricted growth strings of length `len` using at most
/// `colors` values (colorings up to renaming of colors).
pub fn rgs_count(len: usize, colors: usize) -> u128 {
    (0..=colors).map(|k| stirling2(len, k)).fold(0u128, u128::saturating_add)
}

/// Stirling number of the second kind, saturating.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for _ in 0..n {
        for j in (1..=k).rev() {
            row[j] = (j as u128)
                .saturating_mul(row[j])
                .saturating_add(row[j - 1]);
        }
        row[0] = 0;
    }
    row[k]
}

/// Visits every `k`-subset of `pool` (kept in the order given) in
/// lexicographic order of positions.
pub fn for_each_combination<T>(
    pool: &[usize],
    k: usize,
    mut f: impl FnMut(&[usize]) -> ControlFlow<T>,
) -> ControlFlow<T> {
    if k > pool.len() {
        return ControlFlow::Continue(());
    }
    let mut idx: Vec<usize> = (0..k).collect();
    let mut current: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
    loop {
        f(&current)?;
        // advance the rightmost index that still has room
        let mut pos = k;
        loop {
            if pos == 0 {
                return ControlFlow::Continue(());
            }
            pos -= 1;
            if idx[pos] < pool.len() - k + pos {
                break;
            }
        }
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
        for q in pos..k {
            current[q] = pool[idx[q]];
        }
    }
}

/// Visits restricted growth strings of length `len` with values below
/// `max_colors`, in lexicographic order. With `exact`, only strings using
/// exactly `max_colors` values are visited.
pub fn for_each_rgs<T>(
    len: usize,
    max_colors: usize,
    exact: bool,
    mut f: impl FnMut(&[usize]) -> ControlFlow<T>,
) -> ControlFlow<T> {
    if len == 0 {
        return if exact && max_colors > 0 {
            ControlFlow::Continue(())
        } else {
            f(&[])
        };
    }
    if max_colors == 0 || (exact && max_colors > len) {
        return ControlFlow::Continue(());
    }
    let mut s = vec![0usize; len];
    rgs_rec(&mut s, 1, 0, max_colors, exact, &mut f)
}

fn rgs_rec<T>(
    s: &mut [usize],
    pos: usize,
    max_used: usize,
    limit: usize,
    exact: bool,
    f: &mut impl FnMut(&[usize]) -> ControlFlow<T>,
) -> ControlFlow<T> {
    if pos == s.len() {
        if !exact || max_used + 1 == limit {
            return f(s);
        }
        return ControlFlow::Continue(());
    }
    // not enough positions left to reach `limit` colors
    if exact && limit - (max_used + 1) > s.len() - pos {
        return ControlFlow::Continue(());
    }
    let top = (max_used + 1).min(limit - 1);
    for c in 0..=top {
        s[pos] = c;
        rgs_rec(s, pos + 1, max_used.max(c), limit, exact, f)?;
    }
    ControlFlow::Continue(())
}
