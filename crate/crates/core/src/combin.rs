//! Small combinatorial helpers: binomials, Catalan and Narayana numbers,
//! and colex-ordered subsets encoded as bitmasks (bit `k-1` is element `k`).

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    acc as u64
}

/// Binomial with the convention `C(n, k) = 0` for negative `k`.
pub fn binomial_i(n: usize, k: i64) -> u64 {
    if k < 0 {
        0
    } else {
        binomial(n, k as usize)
    }
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

pub fn catalan(n: usize) -> u64 {
    binomial(2 * n, n) / (n as u64 + 1)
}

/// `Nar(n, k) = C(n,k) C(n,k-1) / n`, zero outside `1 <= k <= n`.
pub fn narayana(n: usize, k: usize) -> u64 {
    if n == 0 || k == 0 || k > n {
        return 0;
    }
    binomial(n, k) * binomial(n, k - 1) / n as u64
}

/// All `k`-subsets of `{1..n}` in colex order (ascending mask value).
pub fn subsets_colex(n: usize, k: usize) -> Vec<u32> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let limit: u64 = 1 << n;
    let mut out = Vec::with_capacity(binomial(n, k) as usize);
    let mut s: u64 = (1 << k) - 1;
    while s < limit {
        out.push(s as u32);
        // Gosper's hack: next mask with the same popcount
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

/// Position of `mask` among the subsets of its size in colex order.
pub fn colex_rank(mask: u32) -> usize {
    let mut rank = 0u64;
    let mut m = mask;
    let mut k = 1;
    while m != 0 {
        let e = m.trailing_zeros() as usize;
        rank += binomial(e, k);
        k += 1;
        m &= m - 1;
    }
    rank as usize
}

pub fn mask_to_indices(mask: u32) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize + 1);
        m &= m - 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(catalan(5), 42);
        assert_eq!(
            (1..=5).map(|k| narayana(5, k)).collect::<Vec<_>>(),
            vec![1, 10, 20, 10, 1]
        );
        assert_eq!(factorial(7), 5040);
    }

    #[test]
    fn colex_is_ranked_consecutively() {
        for n in 0..8 {
            for k in 0..=n {
                let subs = subsets_colex(n, k);
                assert_eq!(subs.len() as u64, binomial(n, k));
                for (idx, s) in subs.iter().enumerate() {
                    assert_eq!(s.count_ones() as usize, k);
                    assert_eq!(colex_rank(*s), idx);
                }
            }
        }
        assert_eq!(subsets_colex(3, 2), vec![0b011, 0b101, 0b110]);
    }
}
