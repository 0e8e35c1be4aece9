//! Bit-level helpers for points of `F_2^n` encoded as integers.
//!
//! Convention used everywhere in this crate: coordinate `i` (1-based) of a
//! vector is bit `i - 1` of its integer encoding, so the dot product
//! `gamma . x` over `F_2` is the parity of `popcount(gamma & x)`.

/// Hamming weight.
pub fn weight(x: u64) -> u32 {
    x.count_ones()
}

/// `gamma . x` over `F_2`, as a sign in `{+1, -1}`: the character value.
pub fn character(gamma: u64, x: u64) -> i64 {
    if (gamma & x).count_ones() & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Hamming distance.
pub fn distance(x: u64, y: u64) -> u32 {
    (x ^ y).count_ones()
}

/// Deposit the low `popcount(mask)` bits of `compact` into the set positions
/// of `mask`, in ascending bit order.
pub fn scatter(compact: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    let mut bit = 0u32;
    while rest != 0 {
        let pos = rest.trailing_zeros();
        if (compact >> bit) & 1 == 1 {
            out |= 1u64 << pos;
        }
        rest &= rest - 1;
        bit += 1;
    }
    out
}

/// Inverse of [`scatter`]: collect the bits of `x` at the set positions of
/// `mask` into the low bits, ascending.
pub fn gather(x: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut rest = mask;
    let mut bit = 0u32;
    while rest != 0 {
        let pos = rest.trailing_zeros();
        if (x >> pos) & 1 == 1 {
            out |= 1u64 << bit;
        }
        rest &= rest - 1;
        bit += 1;
    }
    out
}

/// All points of `F_2^n` with Hamming weight exactly `w`, ascending.
/// Gosper's hack; `w = 0` yields just the origin.
pub fn points_of_weight(n: u32, w: u32) -> impl Iterator<Item = u64> {
    assert!(w <= n && n < 64);
    let limit = 1u64 << n;
    let mut next = if w == 0 { Some(0u64) } else { Some((1u64 << w) - 1) };
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            next = None;
            return None;
        }
        next = if cur == 0 {
            Some(limit) // single zero-weight point
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some(r | (((cur ^ r) >> 2) / c))
        };
        Some(cur)
    })
}

/// All nonzero points of the Hamming ball of radius `d` around 0, grouped by
/// weight ascending.
pub fn punctured_ball(n: u32, d: u32) -> impl Iterator<Item = u64> {
    (1..=d.min(n)).flat_map(move |w| points_of_weight(n, w))
}

/// Number of points of weight at most `d` in `F_2^n`, origin included.
pub fn ball_size(n: u32, d: u32) -> u64 {
    (0..=d.min(n)).map(|w| binomial(n as u64, w as u64)).sum()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
