//! Subsets of a ground set `{0, .., n-1}` as `u64` bitmasks.
//!
//! Internally elements are 0-based; anything user-facing (JSON, text, error
//! witnesses) is 1-based.

pub type Mask = u64;

pub const MAX_GROUND: usize = 63;

pub fn bit(i: usize) -> Mask {
    1u64 << i
}

pub fn full(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn popcount(m: Mask) -> usize {
    m.count_ones() as usize
}

pub fn contains(m: Mask, i: usize) -> bool {
    m >> i & 1 == 1
}

pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

/// Elements in increasing order.
pub fn elements(mut m: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(popcount(m));
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i);
        m &= m - 1;
    }
    out
}

pub fn from_elements(xs: &[usize]) -> Mask {
    xs.iter().fold(0, |m, &i| m | bit(i))
}

/// Iterator over the k-subsets of `{0..n}` in increasing mask order (colex).
pub struct KSubsets {
    cur: Option<Mask>,
    limit: Mask,
}

impl Iterator for KSubsets {
    type Item = Mask;
    fn next(&mut self) -> Option<Mask> {
        let c = self.cur?;
        // Gosper's hack.
        self.cur = if c == 0 {
            None
        } else {
            let u = c & c.wrapping_neg();
            let v = c + u;
            let nxt = v + (((v ^ c) / u) >> 2);
            (nxt <= self.limit && nxt > c).then_some(nxt)
        };
        Some(c)
    }
}

pub fn k_subsets(n: usize, k: usize) -> KSubsets {
    KSubsets {
        cur: (k <= n).then(|| full(k)),
        limit: full(n),
    }
}

/// All subsets of `m`, including `0` and `m`.
pub fn submasks(m: Mask) -> impl Iterator<Item = Mask> {
    let mut cur = Some(0u64);
    std::iter::from_fn(move || {
        let c = cur?;
        cur = if c == m { None } else { Some(((c | !m).wrapping_add(1)) & m) };
        Some(c)
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Position of `m` within `k_subsets(n, |m|)`, via the combinatorial number system.
pub fn colex_rank(m: Mask) -> usize {
    elements(m).iter().enumerate().map(|(j, &e)| binomial(e, j + 1)).sum()
}

/// Compact 1-based rendering: `"1234"` when every element is a single digit,
/// `"{1,10,11}"` otherwise.
pub fn fmt_set(m: Mask) -> String {
    let els = elements(m);
    if els.is_empty() {
        return "∅".to_string();
    }
    if els.iter().all(|&e| e < 9) {
        els.iter().map(|e| (e + 1).to_string()).collect()
    } else {
        let parts: Vec<String> = els.iter().map(|e| (e + 1).to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// 1-based element list, used in JSON.
pub fn to_one_based(m: Mask) -> Vec<usize> {
    elements(m).into_iter().map(|e| e + 1).collect()
}

/// Parses a compact digit string such as `"1234"` (1-based).
pub fn parse_digits(s: &str) -> Option<Mask> {
    let mut m = 0;
    for c in s.chars() {
        let d = c.to_digit(10)? as usize;
        if d == 0 {
            return None;
        }
        m |= bit(d - 1);
    }
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ksubsets_counts_and_order() {
        for n in 0..8 {
            for k in 0..=n {
                let v: Vec<_> = k_subsets(n, k).collect();
                assert_eq!(v.len(), binomial(n, k));
                assert!(v.windows(2).all(|w| w[0] < w[1]));
                for (idx, m) in v.iter().enumerate() {
                    assert_eq!(colex_rank(*m), idx);
                }
            }
        }
        assert_eq!(k_subsets(3, 4).count(), 0);
    }

    #[test]
    fn submask_enumeration() {
        assert_eq!(submasks(0b1011).count(), 8);
        assert_eq!(submasks(0).count(), 1);
    }

    #[test]
    fn formatting() {
        assert_eq!(fmt_set(0b1111), "1234");
        assert_eq!(parse_digits("1256"), Some(0b110011));
        assert_eq!(fmt_set(bit(9) | 1), "{1,10}");
    }
}
