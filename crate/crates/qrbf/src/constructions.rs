//! Bent functions, binary linear codes, and the composition of a bent
//! function with a parity-check matrix, which is quasi-random of rank
//! exactly one below the code's minimum kernel weight.

use crate::bits::{points_of_weight, scatter};
use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::rat::Rat;
use crate::MAX_DIMENSION;

/// Largest code dimension for which kernel enumeration is allowed.
pub const MAX_KERNEL_ENUMERATION: u32 = 24;

/// A binary linear code of length `n` and dimension `k`, stored by its
/// parity-check matrix: `n - k` full-rank rows, each a width-`n` bitmask
/// (bit `i - 1` is column `i`). A word is a codeword iff every row has even
/// overlap with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    n: u32,
    rows: Vec<u64>,
}

impl LinearCode {
    /// Build from parity-check rows; the rows must be independent.
    pub fn from_parity_rows(n: u32, rows: Vec<u64>) -> Result<Self> {
        if n == 0 || n > 62 {
            return Err(Error::Precondition(format!("code length {n} outside 1..=62")));
        }
        let mask = (1u64 << n) - 1;
        if rows.iter().any(|r| r & !mask != 0) {
            return Err(Error::Precondition("parity row wider than the code length".into()));
        }
        if rows.len() > n as usize {
            return Err(Error::Precondition("more parity rows than columns".into()));
        }
        if rank(&rows) != rows.len() as u32 {
            return Err(Error::Precondition(
                "parity-check rows are linearly dependent".into(),
            ));
        }
        Ok(LinearCode { n, rows })
    }

    pub fn length(&self) -> u32 {
        self.n
    }

    /// Code dimension `k = n - rank`.
    pub fn dimension(&self) -> u32 {
        self.n - self.rows.len() as u32
    }

    /// Number of parity checks, `n - k`.
    pub fn redundancy(&self) -> u32 {
        self.rows.len() as u32
    }

    pub fn parity_rows(&self) -> &[u64] {
        &self.rows
    }

    /// The syndrome `Hx` as an integer on `n - k` bits.
    pub fn syndrome(&self, x: u64) -> u64 {
        let mut out = 0u64;
        for (i, row) in self.rows.iter().enumerate() {
            out |= (((row & x).count_ones() & 1) as u64) << i;
        }
        out
    }

    pub fn is_codeword(&self, x: u64) -> bool {
        self.syndrome(x) == 0
    }

    /// A basis of the kernel, `k` vectors.
    pub fn kernel_basis(&self) -> Vec<u64> {
        let (rref, pivot_cols) = reduced_row_echelon(&self.rows);
        let mut basis = Vec::with_capacity(self.dimension() as usize);
        let pivots: u64 = pivot_cols.iter().map(|c| 1u64 << c).sum();
        for j in 0..self.n as u64 {
            if pivots >> j & 1 == 1 {
                continue;
            }
            let mut v = 1u64 << j;
            for (row, col) in rref.iter().zip(&pivot_cols) {
                if row >> j & 1 == 1 {
                    v |= 1u64 << col;
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Minimum Hamming weight over the nonzero codewords, by exhaustive
    /// Gray-code enumeration of all `2^k` of them.
    pub fn min_kernel_weight(&self) -> Result<u32> {
        let k = self.dimension();
        if k == 0 {
            return Err(Error::Precondition("trivial code: the kernel is {0}".into()));
        }
        if k > MAX_KERNEL_ENUMERATION {
            return Err(Error::Budget {
                operation: "kernel weight enumeration".into(),
                estimated: 1u64 << k,
                budget: 1u64 << MAX_KERNEL_ENUMERATION,
            });
        }
        Ok(self.min_weight_with_witness().0)
    }

    /// Minimum kernel weight together with a codeword attaining it.
    pub(crate) fn min_weight_with_witness(&self) -> (u32, u64) {
        let basis = self.kernel_basis();
        let mut current = 0u64;
        let mut best = (u32::MAX, 0u64);
        for c in 1u64..(1u64 << basis.len()) {
            current ^= basis[c.trailing_zeros() as usize];
            let w = current.count_ones();
            if w < best.0 {
                best = (w, current);
            }
        }
        best
    }

    // ------------------------------------------------------------------
    // Text format: `n=<int> k=<int>`, then one width-n binary row per line.
    // Leftmost character is coordinate 1.
    // ------------------------------------------------------------------

    pub fn to_text(&self) -> String {
        let mut out = format!("n={} k={}\n", self.n, self.dimension());
        for row in &self.rows {
            for col in 0..self.n {
                out.push(if row >> col & 1 == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input, expected `n=<int> k=<int>`".into(),
        })?;
        let parse_field = |field: &str, name: &str| -> Result<u32> {
            field
                .strip_prefix(&format!("{name}="))
                .and_then(|v| v.parse().ok())
                .ok_or(Error::Parse {
                    line: 1,
                    message: format!("expected `{name}=<int>`, got `{field}`"),
                })
        };
        let mut fields = header.split_whitespace();
        let n = parse_field(fields.next().unwrap_or(""), "n")?;
        let k = parse_field(fields.next().unwrap_or(""), "k")?;
        if k >= n || n > 62 {
            return Err(Error::Parse {
                line: 1,
                message: format!("invalid parameters n={n} k={k}"),
            });
        }
        let mut rows = Vec::new();
        for (idx, line) in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line.len() != n as usize {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("row has {} columns, expected {n}", line.len()),
                });
            }
            let mut row = 0u64;
            for (col, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => row |= 1u64 << col,
                    other => {
                        return Err(Error::Parse {
                            line: idx + 1,
                            message: format!("symbol `{other}` in column {}", col + 1),
                        })
                    }
                }
            }
            rows.push(row);
        }
        if rows.len() != (n - k) as usize {
            return Err(Error::Parse {
                line: 1,
                message: format!("{} parity rows given, expected n-k = {}", rows.len(), n - k),
            });
        }
        Self::from_parity_rows(n, rows)
    }
}

fn rank(rows: &[u64]) -> u32 {
    let mut work: Vec<u64> = rows.to_vec();
    let mut r = 0usize;
    for col in 0..64 {
        if let Some(i) = (r..work.len()).find(|&i| work[i] >> col & 1 == 1) {
            work.swap(r, i);
            for j in 0..work.len() {
                if j != r && work[j] >> col & 1 == 1 {
                    work[j] ^= work[r];
                }
            }
            r += 1;
        }
    }
    r as u32
}

fn reduced_row_echelon(rows: &[u64]) -> (Vec<u64>, Vec<u32>) {
    let mut work: Vec<u64> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..64u32 {
        if let Some(i) = (r..work.len()).find(|&i| work[i] >> col & 1 == 1) {
            work.swap(r, i);
            for j in 0..work.len() {
                if j != r && work[j] >> col & 1 == 1 {
                    work[j] ^= work[r];
                }
            }
            pivots.push(col);
            r += 1;
        }
    }
    (work, pivots)
}

/// The Hamming code of redundancy `r`: columns are all nonzero vectors of
/// `F_2^r` in ascending integer order; length `2^r - 1`, distance 3.
pub fn hamming_code(r: u32) -> Result<LinearCode> {
    if !(2..=5).contains(&r) {
        return Err(Error::Precondition(format!("redundancy {r} outside 2..=5")));
    }
    let n = (1u32 << r) - 1;
    let rows = (0..r)
        .map(|i| {
            (0..n as u64)
                .filter(|col| (col + 1) >> i & 1 == 1)
                .map(|col| 1u64 << col)
                .sum()
        })
        .collect();
    LinearCode::from_parity_rows(n, rows)
}

/// The extended Hamming code of redundancy `r`: append an overall parity
/// column and row; length `2^r`, distance 4.
pub fn extended_hamming_code(r: u32) -> Result<LinearCode> {
    let base = hamming_code(r)?;
    let n = 1u32 << r;
    let mut rows = base.rows.clone();
    rows.push((1u64 << n) - 1);
    LinearCode::from_parity_rows(n, rows)
}

/// The classic 4x8 parity-check of the [8,4,4] extended Hamming code, with a
/// complement-of-identity left block and an identity right block. Shipped as
/// a literal so reports and tests can match the familiar presentation;
/// equivalent to [`extended_hamming_code`]`(3)` up to column permutation.
pub fn extended_hamming_8_4() -> LinearCode {
    LinearCode::from_parity_rows(8, vec![0x1e, 0x2d, 0x4b, 0x87]).unwrap()
}

/// The inner-product function on `2m` bits: the sign of the `F_2` dot
/// product of the low `m` bits with the high `m` bits. Bent for every `m`.
pub fn inner_product(m: u32) -> Result<BooleanFunction> {
    if m == 0 || 2 * m > MAX_DIMENSION {
        return Err(Error::Precondition(format!(
            "half-dimension {m} outside 1..={}",
            MAX_DIMENSION / 2
        )));
    }
    let mask = (1u64 << m) - 1;
    Ok(BooleanFunction::from_fn(2 * m, |z| {
        if ((z & mask) & (z >> m)).count_ones() & 1 == 0 {
            1
        } else {
            -1
        }
    }))
}

/// Outcome of the exact bent check `W(gamma)^2 = 2^n` for all `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BentCertificate {
    pub n: u32,
    pub ok: bool,
    /// Index maximizing the integer defect `|W(gamma)^2 - 2^n|`.
    pub worst_gamma: u64,
    pub worst_walsh: i64,
}

/// Decide bentness by an exact integer scan of the spectrum. Odd dimensions
/// can never pass: `2^n` is not a perfect square there.
pub fn certify_bent(f: &BooleanFunction) -> BentCertificate {
    let n = f.dimension();
    let spec = f.walsh_transform();
    let target = 1i128 << n;
    let mut worst = (0i128, 0u64);
    for gamma in 0..f.domain_size() {
        let w = spec.walsh(gamma) as i128;
        let defect = (w * w - target).abs();
        if defect > worst.0 {
            worst = (defect, gamma);
        }
    }
    BentCertificate {
        n,
        ok: worst.0 == 0,
        worst_gamma: worst.1,
        worst_walsh: spec.walsh(worst.1),
    }
}

/// Tabulate `x -> g(Hx)` over the code's ambient space.
pub fn compose(g: &BooleanFunction, code: &LinearCode) -> Result<BooleanFunction> {
    if g.dimension() != code.redundancy() {
        return Err(Error::Dimension(format!(
            "inner function takes {} bits but the parity map produces {}",
            g.dimension(),
            code.redundancy()
        )));
    }
    if code.length() > MAX_DIMENSION {
        return Err(Error::Precondition(format!(
            "composition over {} bits exceeds the exact-mode cap {MAX_DIMENSION}",
            code.length()
        )));
    }
    Ok(BooleanFunction::from_fn(code.length(), |x| {
        g.evaluate(code.syndrome(x))
    }))
}

/// Verdict of the rank-separation check for `f = g(Hx)`.
///
/// With `g` bent and the code's minimum kernel weight `w`, the composition
/// has every shift influence below rank `w - 1` exactly 1/2 and a vanishing
/// influence at some weight-`w` shift, while the mean stays at
/// `2^(-(n-k)/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerVerdict {
    /// Rank at which the composition is exactly quasi-random:
    /// minimum kernel weight minus one.
    pub rank: u32,
    pub min_kernel_weight: u32,
    /// A nonzero shift of weight at most `rank` whose influence is not 1/2,
    /// if any; `None` means the flatness assertion holds.
    pub flat_failure: Option<u64>,
    /// A weight-`rank + 1` shift with influence exactly 0, if one exists.
    pub vanishing_shift: Option<u64>,
    /// The composed function's mean.
    pub mean: Rat,
    /// Whether `|mean| = 2^(-(n-k)/2)` exactly.
    pub mean_matches: bool,
    /// Whether `|mean| <= 1/2` (strict inequality needs `n - k > 2`).
    pub mean_at_most_half: bool,
    pub mean_strictly_below_half: bool,
}

impl TowerVerdict {
    pub fn passed(&self) -> bool {
        self.flat_failure.is_none()
            && self.vanishing_shift.is_some()
            && self.mean_matches
            && self.mean_at_most_half
    }
}

/// Compose `g` with the code's parity map and verify the rank separation:
/// influences flat at 1/2 through rank `min_kernel_weight - 1`, an influence
/// of exactly 0 at the next weight, and the mean pinned to `2^(-(n-k)/2)`.
pub fn verify_tower(g: &BooleanFunction, code: &LinearCode) -> Result<TowerVerdict> {
    let f = compose(g, code)?;
    let (min_weight, min_word) = {
        if code.dimension() == 0 || code.dimension() > MAX_KERNEL_ENUMERATION {
            return Err(Error::Precondition(
                "kernel enumeration needs 1 <= k <= 24".into(),
            ));
        }
        code.min_weight_with_witness()
    };
    let rank = min_weight - 1;
    let auto = f.autocorrelation();
    let n = f.dimension();

    // influence 1/2 <=> A = 0 on every nonzero shift in the ball
    let mut flat_failure = None;
    'scan: for w in 1..=rank {
        for gamma in points_of_weight(n, w) {
            if auto.at(gamma) != 0 {
                flat_failure = Some(gamma);
                break 'scan;
            }
        }
    }

    // influence 0 <=> A = 2^n; the minimum-weight codeword is the candidate
    let vanishing_shift = if auto.at(min_word) == (1i64 << n) {
        Some(min_word)
    } else {
        points_of_weight(n, min_weight).find(|&gamma| auto.at(gamma) == (1i64 << n))
    };

    let spec = f.walsh_transform();
    let mean = spec.mean();
    let w0 = spec.walsh(0).unsigned_abs();
    let redundancy = code.redundancy();
    let mean_matches = redundancy % 2 == 0 && w0 == 1u64 << (n - redundancy / 2);
    Ok(TowerVerdict {
        rank,
        min_kernel_weight: min_weight,
        flat_failure,
        vanishing_shift,
        mean,
        mean_matches,
        mean_at_most_half: 2 * w0 <= 1u64 << n,
        mean_strictly_below_half: 2 * w0 < 1u64 << n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn weight_enumerator(code: &LinearCode) -> Vec<u64> {
        let mut counts = vec![0u64; code.length() as usize + 1];
        let basis = code.kernel_basis();
        let mut current = 0u64;
        counts[0] = 1;
        for c in 1u64..(1u64 << basis.len()) {
            current ^= basis[c.trailing_zeros() as usize];
            counts[current.count_ones() as usize] += 1;
        }
        counts
    }

    #[test]
    fn inner_product_values() {
        let ip2 = inner_product(1).unwrap();
        assert_eq!(ip2.table_string(), "+++-");
        let ip4 = inner_product(2).unwrap();
        // coefficient formula: sign of gamma_low . gamma_high over 4
        let spec = ip4.walsh_transform();
        for gamma in 0..16u64 {
            let sign = if ((gamma & 3) & (gamma >> 2)).count_ones() & 1 == 0 {
                1
            } else {
                -1
            };
            assert_eq!(spec.coefficient(gamma), rat(sign, 4));
        }
    }

    #[test]
    fn bent_certificates() {
        for m in 1..=4u32 {
            assert!(certify_bent(&inner_product(m).unwrap()).ok);
        }
        // characters have a coefficient of magnitude 1
        let chi = BooleanFunction::character(4, 0b1011);
        let cert = certify_bent(&chi);
        assert!(!cert.ok);
        assert_eq!(cert.worst_gamma, 0b1011);
        // odd dimension can never be bent
        let odd = BooleanFunction::character(3, 0b1);
        assert!(!certify_bent(&odd).ok);
        // bent <=> autocorrelation vanishes off zero, both directions
        let ip4 = inner_product(2).unwrap();
        let a = ip4.autocorrelation();
        assert!((1..16).all(|g| a.at(g) == 0));
        let a = chi.autocorrelation();
        assert!(!(1..16).all(|g| a.at(g) == 0));
    }

    #[test]
    fn hamming_family() {
        // r=2 is the [3,1,3] repetition code
        let rep = hamming_code(2).unwrap();
        assert_eq!((rep.length(), rep.dimension()), (3, 1));
        assert_eq!(rep.kernel_basis(), vec![0b111]);
        assert_eq!(rep.min_kernel_weight().unwrap(), 3);

        let ham3 = hamming_code(3).unwrap();
        assert_eq!((ham3.length(), ham3.dimension()), (7, 4));
        assert_eq!(ham3.min_kernel_weight().unwrap(), 3);

        let ext3 = extended_hamming_code(3).unwrap();
        assert_eq!((ext3.length(), ext3.dimension()), (8, 4));
        assert_eq!(ext3.min_kernel_weight().unwrap(), 4);
    }

    #[test]
    fn fixture_matches_generic_up_to_column_permutation() {
        let fixture = extended_hamming_8_4();
        assert_eq!((fixture.length(), fixture.dimension()), (8, 4));
        assert_eq!(fixture.min_kernel_weight().unwrap(), 4);
        // identical codeword weight distribution: 1 + 14 z^4 + z^8
        let expect = vec![1, 0, 0, 0, 14, 0, 0, 0, 1];
        assert_eq!(weight_enumerator(&fixture), expect);
        assert_eq!(weight_enumerator(&extended_hamming_code(3).unwrap()), expect);
    }

    #[test]
    fn kernel_basis_spans_the_kernel() {
        for code in [hamming_code(3).unwrap(), extended_hamming_code(3).unwrap()] {
            let basis = code.kernel_basis();
            assert_eq!(basis.len() as u32, code.dimension());
            for v in &basis {
                assert!(code.is_codeword(*v));
            }
            let count = (0..(1u64 << code.length()))
                .filter(|x| code.is_codeword(*x))
                .count();
            assert_eq!(count, 1usize << code.dimension());
        }
    }

    #[test]
    fn full_space_has_weight_one_kernel() {
        let full = LinearCode::from_parity_rows(5, vec![]).unwrap();
        assert_eq!(full.dimension(), 5);
        assert_eq!(full.min_kernel_weight().unwrap(), 1);
    }

    #[test]
    fn rejects_dependent_rows() {
        assert!(LinearCode::from_parity_rows(4, vec![0b0011, 0b0101, 0b0110]).is_err());
    }

    #[test]
    fn compose_identity_code() {
        let g = inner_product(1).unwrap();
        let identity = LinearCode::from_parity_rows(2, vec![0b01, 0b10]).unwrap();
        assert_eq!(identity.dimension(), 0);
        assert_eq!(compose(&g, &identity).unwrap(), g);
        // dimension mismatch rejected
        assert!(compose(&g, &hamming_code(3).unwrap()).is_err());
    }

    #[test]
    fn composition_autocorrelation_is_the_code_indicator() {
        // exhaustive: 2^n * (f*f)(x) = 2^n [x in ker H]
        let f = compose(&inner_product(2).unwrap(), &extended_hamming_code(3).unwrap()).unwrap();
        let code = extended_hamming_code(3).unwrap();
        let a = f.autocorrelation();
        for x in 0..f.domain_size() {
            let expect = if code.is_codeword(x) { 256 } else { 0 };
            assert_eq!(a.at(x), expect, "at x={x:#x}");
        }
    }

    #[test]
    fn composition_pushes_autocorrelation_through_the_parity_map() {
        // A_f(gamma) = 2^n (g*g)(H gamma) for arbitrary g, small instances
        let g = BooleanFunction::from_text("n=3\n+-++--+-\n").unwrap();
        let code = LinearCode::from_parity_rows(5, vec![0b00111, 0b01011, 0b11000]).unwrap();
        let f = compose(&g, &code).unwrap();
        let af = f.autocorrelation();
        let ag = g.autocorrelation();
        for gamma in 0..f.domain_size() {
            // normalize: A_f / 2^5 = A_g(H gamma) / 2^3
            assert_eq!(af.at(gamma) as i128 * 8, ag.at(code.syndrome(gamma)) as i128 * 32);
        }
    }

    #[test]
    fn tower_verdicts() {
        let v = verify_tower(&inner_product(2).unwrap(), &extended_hamming_code(3).unwrap())
            .unwrap();
        assert!(v.passed());
        assert_eq!(v.rank, 3);
        assert_eq!(v.mean, rat(1, 4));
        assert!(v.mean_strictly_below_half);

        // [3,1,3] with the 2-bit inner product: rank 2, mean exactly 1/2
        let v = verify_tower(&inner_product(1).unwrap(), &hamming_code(2).unwrap()).unwrap();
        assert!(v.passed());
        assert_eq!(v.rank, 2);
        assert_eq!(v.mean, rat(1, 2));
        assert!(!v.mean_strictly_below_half);

        // a non-bent inner function fails flatness with a witness
        let chi = BooleanFunction::character(4, 0b0001);
        let v = verify_tower(&chi, &extended_hamming_code(3).unwrap()).unwrap();
        assert!(!v.passed());
        assert!(v.flat_failure.is_some());
    }

    #[test]
    fn code_text_roundtrip() {
        let code = extended_hamming_8_4();
        let text = code.to_text();
        assert!(text.starts_with("n=8 k=4\n"));
        assert_eq!(LinearCode::from_text(&text).unwrap(), code);
        // row width errors carry line numbers
        let err = LinearCode::from_text("n=8 k=4\n0111\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }
}
