//! Bit-packed truth tables of sign functions on `F_2^n`.

use crate::error::{Error, Result};
use crate::MAX_DIMENSION;
use rand::Rng;

/// A map `F_2^n -> {+1, -1}`, stored one bit per point: bit `x` is set iff
/// `f(x) = -1`. Point `x` is the integer whose bit `i - 1` is coordinate `i`.
///
/// Dimension 0 (a single constant sign) is allowed so that restrictions to
/// empty coordinate sets stay inside the type; file formats require `n >= 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct BooleanFunction {
    n: u32,
    words: Vec<u64>,
}

impl std::fmt::Debug for BooleanFunction {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.n <= 5 {
            write!(fm, "BooleanFunction(n={}, {})", self.n, self.table_string())
        } else {
            write!(fm, "BooleanFunction(n={})", self.n)
        }
    }
}

fn word_count(n: u32) -> usize {
    ((1usize << n) + 63) / 64
}

impl BooleanFunction {
    /// Constant `+1` function.
    pub fn constant_one(n: u32) -> Self {
        Self::check_dimension(n).expect("dimension out of range");
        BooleanFunction {
            n,
            words: vec![0; word_count(n)],
        }
    }

    /// Build from a sign closure.
    pub fn from_fn(n: u32, f: impl Fn(u64) -> i32) -> Self {
        Self::check_dimension(n).expect("dimension out of range");
        let mut out = Self::constant_one(n);
        for x in 0..(1u64 << n) {
            match f(x) {
                1 => {}
                -1 => out.set_negative(x),
                s => panic!("sign must be +1 or -1, got {s}"),
            }
        }
        out
    }

    /// Build from an explicit sign table of length `2^n`.
    pub fn from_signs(n: u32, signs: &[i32]) -> Result<Self> {
        Self::check_dimension(n)?;
        if signs.len() != 1usize << n {
            return Err(Error::Dimension(format!(
                "sign table has {} entries, expected {}",
                signs.len(),
                1usize << n
            )));
        }
        if let Some(bad) = signs.iter().find(|s| **s != 1 && **s != -1) {
            return Err(Error::Precondition(format!("sign table entry {bad} is not +1/-1")));
        }
        Ok(Self::from_fn(n, |x| signs[x as usize]))
    }

    /// The Fourier character `x -> (-1)^(gamma . x)`.
    pub fn character(n: u32, gamma: u64) -> Self {
        Self::from_fn(n, |x| crate::bits::character(gamma, x) as i32)
    }

    /// Uniformly random truth table.
    pub fn random(n: u32, rng: &mut impl Rng) -> Self {
        Self::check_dimension(n).expect("dimension out of range");
        let mut words: Vec<u64> = (0..word_count(n)).map(|_| rng.gen()).collect();
        mask_tail(n, &mut words);
        BooleanFunction { n, words }
    }

    fn check_dimension(n: u32) -> Result<()> {
        if n > MAX_DIMENSION {
            return Err(Error::Precondition(format!(
                "dimension {n} exceeds the exact-mode cap {MAX_DIMENSION}"
            )));
        }
        Ok(())
    }

    pub fn dimension(&self) -> u32 {
        self.n
    }

    /// Number of points, `2^n`.
    pub fn domain_size(&self) -> u64 {
        1u64 << self.n
    }

    /// Table entry at `x` as a sign. Panics on out-of-range `x`.
    pub fn evaluate(&self, x: u64) -> i32 {
        assert!(
            x < self.domain_size(),
            "point {x:#x} outside the {}-bit domain",
            self.n
        );
        self.sign(x)
    }

    #[inline]
    pub(crate) fn sign(&self, x: u64) -> i32 {
        1 - 2 * ((self.words[(x >> 6) as usize] >> (x & 63)) & 1) as i32
    }

    #[inline]
    pub(crate) fn is_negative(&self, x: u64) -> bool {
        (self.words[(x >> 6) as usize] >> (x & 63)) & 1 == 1
    }

    fn set_negative(&mut self, x: u64) {
        self.words[(x >> 6) as usize] |= 1u64 << (x & 63);
    }

    /// Number of points where the function is `-1`.
    pub fn negative_count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Sign table as a vector of `i64`, in point order.
    pub fn sign_vector(&self) -> Vec<i64> {
        (0..self.domain_size()).map(|x| self.sign(x) as i64).collect()
    }

    /// The derivative table `x -> f(x) f(x + v)`.
    pub fn derivative(&self, v: u64) -> Self {
        assert!(v < self.domain_size());
        Self::from_fn(self.n, |x| self.sign(x) * self.sign(x ^ v))
    }

    /// Extend to `extra` more coordinates that the output ignores.
    pub fn lift_ignoring_new_coordinates(&self, extra: u32) -> Result<Self> {
        let n = self.n + extra;
        Self::check_dimension(n)?;
        let mask = self.domain_size() - 1;
        Ok(Self::from_fn(n, |x| self.sign(x & mask)))
    }

    /// Pointwise product (XOR of the underlying `F_2`-valued tables).
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "product of functions on {} and {} bits",
                self.n, other.n
            )));
        }
        let mut words: Vec<u64> = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a ^ b)
            .collect();
        mask_tail(self.n, &mut words);
        Ok(BooleanFunction { n: self.n, words })
    }

    // ------------------------------------------------------------------
    // Text format: line 1 `n=<int>`, line 2 one `+`/`-` per point.
    // ------------------------------------------------------------------

    pub fn table_string(&self) -> String {
        (0..self.domain_size())
            .map(|x| if self.is_negative(x) { '-' } else { '+' })
            .collect()
    }

    pub fn to_text(&self) -> String {
        format!("n={}\n{}\n", self.n, self.table_string())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "empty input, expected `n=<int>`".into(),
        })?;
        let n: u32 = header
            .trim()
            .strip_prefix("n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or(Error::Parse {
                line: 1,
                message: format!("expected `n=<int>`, got `{header}`"),
            })?;
        if n == 0 || n > MAX_DIMENSION {
            return Err(Error::Parse {
                line: 1,
                message: format!("dimension {n} outside 1..={MAX_DIMENSION}"),
            });
        }
        let table = lines.next().ok_or(Error::Parse {
            line: 2,
            message: "missing truth-table line".into(),
        })?;
        let table = table.trim();
        if table.len() != 1usize << n {
            return Err(Error::Parse {
                line: 2,
                message: format!("table has {} symbols, expected {}", table.len(), 1usize << n),
            });
        }
        let mut out = Self::constant_one(n);
        for (x, ch) in table.chars().enumerate() {
            match ch {
                '+' => {}
                '-' => out.set_negative(x as u64),
                other => {
                    return Err(Error::Parse {
                        line: 2,
                        message: format!("symbol `{other}` at position {x}, expected + or -"),
                    })
                }
            }
        }
        if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
            return Err(Error::Parse {
                line: 3,
                message: format!("unexpected trailing content `{extra}`"),
            });
        }
        Ok(out)
    }

    // ------------------------------------------------------------------
    // Packed format: byte 0 holds n, then 2^n sign bits LSB-first,
    // 8 per byte, bit 0 <-> sign +1.
    // ------------------------------------------------------------------

    pub fn to_packed(&self) -> Vec<u8> {
        let bytes = ((self.domain_size() as usize) + 7) / 8;
        let mut out = vec![0u8; 1 + bytes];
        out[0] = self.n as u8;
        for x in 0..self.domain_size() {
            if self.is_negative(x) {
                out[1 + (x >> 3) as usize] |= 1 << (x & 7);
            }
        }
        out
    }

    pub fn from_packed(data: &[u8]) -> Result<Self> {
        let err = |message: String| Error::Parse { line: 1, message };
        if data.is_empty() {
            return Err(err("empty packed table".into()));
        }
        let n = data[0] as u32;
        if n == 0 || n > MAX_DIMENSION {
            return Err(err(format!("dimension {n} outside 1..={MAX_DIMENSION}")));
        }
        let points = 1u64 << n;
        let bytes = ((points as usize) + 7) / 8;
        if data.len() != 1 + bytes {
            return Err(err(format!(
                "packed table is {} bytes, expected {}",
                data.len(),
                1 + bytes
            )));
        }
        if points < 8 && data[1] >> points != 0 {
            return Err(err("padding bits past the table end must be zero".into()));
        }
        let mut out = Self::constant_one(n);
        for x in 0..points {
            if (data[1 + (x >> 3) as usize] >> (x & 7)) & 1 == 1 {
                out.set_negative(x);
            }
        }
        Ok(out)
    }
}

fn mask_tail(n: u32, words: &mut [u64]) {
    let points = 1u64 << n;
    if points < 64 {
        words[0] &= (1u64 << points) - 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn evaluate_named_points() {
        // XOR on 2 bits: table +,-,-,+
        let xor2 = BooleanFunction::character(2, 0b11);
        assert_eq!(xor2.table_string(), "+--+");
        assert_eq!(xor2.evaluate(0b11), 1);
        // inner product on 2 bits: table +,+,+,-
        let ip2 = crate::constructions::inner_product(1).unwrap();
        assert_eq!(ip2.table_string(), "+++-");
        assert_eq!(ip2.evaluate(0b11), -1);
        assert_eq!(ip2.evaluate(0), ip2.sign(0));
    }

    #[test]
    #[should_panic(expected = "outside")]
    fn evaluate_rejects_out_of_range() {
        BooleanFunction::constant_one(2).evaluate(4);
    }

    #[test]
    fn text_roundtrip_and_errors() {
        let f = BooleanFunction::from_text("n=2\n+--+\n").unwrap();
        assert_eq!(f.table_string(), "+--+");
        assert_eq!(BooleanFunction::from_text(&f.to_text()).unwrap(), f);

        assert!(matches!(
            BooleanFunction::from_text("n=2\n+--\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            BooleanFunction::from_text("m=2\n+--+\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            BooleanFunction::from_text("n=2\n+-x+\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }

    #[test]
    fn packed_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [1u32, 2, 3, 6, 7, 9] {
            let f = BooleanFunction::random(n, &mut rng);
            let packed = f.to_packed();
            assert_eq!(packed.len(), 1 + ((1usize << n) + 7) / 8);
            assert_eq!(BooleanFunction::from_packed(&packed).unwrap(), f);
        }
        // +1 <-> bit 0: constant one packs to all-zero payload
        let one = BooleanFunction::constant_one(3);
        assert_eq!(one.to_packed(), vec![3, 0]);
    }

    #[test]
    fn derivative_and_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let f = BooleanFunction::random(4, &mut rng);
        let d = f.derivative(0b0101);
        for x in 0..16 {
            assert_eq!(d.sign(x), f.sign(x) * f.sign(x ^ 0b0101));
        }
        let p = f.product(&f).unwrap();
        assert_eq!(p, BooleanFunction::constant_one(4));
    }
}
