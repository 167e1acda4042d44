//! Integer partitions of `n`.

/// Largest argument accepted by [`partition_count`]; `p(1000)` still fits in
/// a `u128`.
pub const MAX_PARTITION_ARG: usize = 1000;

/// All partitions of `n`, parts in non-increasing order, listed in ascending
/// lexicographic order (`1+1+1`, `2+1`, `3`).
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn extend(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in 1..=remaining.min(max_part) {
            current.push(part);
            extend(remaining - part, part, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, &mut Vec::new(), &mut out);
    out
}

/// `p(n)` by Euler's pentagonal-number recurrence. `p(0) = 1`.
///
/// # Panics
///
/// If `n > MAX_PARTITION_ARG`.
pub fn partition_count(n: usize) -> u128 {
    assert!(n <= MAX_PARTITION_ARG, "p({n}) is outside the supported range");
    let mut p = vec![0i128; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut total = 0i128;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            total += sign * p[m - g1];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                total += sign * p[m - g2];
            }
        }
        p[m] = total;
    }
    p[n] as u128
}
