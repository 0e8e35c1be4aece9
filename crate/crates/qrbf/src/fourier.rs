//! Exact Walsh transform, autocorrelation, influences and subcube masses.
//!
//! All quantities are held as scaled integers: the spectrum stores
//! `W(gamma) = sum_x f(x) (-1)^(gamma . x)` so that the Fourier coefficient
//! is `W(gamma) / 2^n`, and the autocorrelation table stores
//! `A(gamma) = sum_x f(x) f(x + gamma) = 2^n (f*f)(gamma)`.

use crate::bits::{character, scatter};
use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::rat::{dyadic, Rat};
use crate::subcube::Subcube;

/// In-place unnormalized Walsh-Hadamard butterfly. Applying it twice
/// multiplies every entry by the table length.
pub fn butterfly(values: &mut [i64]) {
    debug_assert!(values.len().is_power_of_two());
    let mut h = 1;
    while h < values.len() {
        for block in (0..values.len()).step_by(h * 2) {
            for i in block..block + h {
                let (a, b) = (values[i], values[i + h]);
                values[i] = a + b;
                values[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

/// Integer Walsh coefficients `W(gamma)` of a sign function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    n: u32,
    values: Vec<i64>,
}

impl Spectrum {
    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn raw(&self) -> &[i64] {
        &self.values
    }

    /// `W(gamma)`.
    pub fn walsh(&self, gamma: u64) -> i64 {
        self.values[gamma as usize]
    }

    /// The Fourier coefficient `W(gamma) / 2^n` as an exact rational.
    pub fn coefficient(&self, gamma: u64) -> Rat {
        dyadic(self.walsh(gamma) as i128, self.n)
    }

    /// The mean of the function, `coefficient(0)`.
    pub fn mean(&self) -> Rat {
        self.coefficient(0)
    }

    /// Whether `|coefficient(0)| < 1/2` strictly.
    pub fn mean_below_half(&self) -> bool {
        2 * self.walsh(0).unsigned_abs() < 1u64 << self.n
    }

    /// Parseval in integer form: `sum_gamma W(gamma)^2 = 2^(2n)`.
    pub fn parseval_holds(&self) -> bool {
        let total: i128 = self.values.iter().map(|w| (*w as i128) * (*w as i128)).sum();
        total == 1i128 << (2 * self.n)
    }

    /// Spectral-sample mass on a subcube: `sum_{gamma in C} W(gamma)^2 / 2^(2n)`.
    pub fn mass_on(&self, cube: &Subcube) -> Result<Rat> {
        if cube.ambient_dimension() != self.n {
            return Err(Error::Dimension(format!(
                "subcube in {} bits, spectrum in {}",
                cube.ambient_dimension(),
                self.n
            )));
        }
        let mut total: i128 = 0;
        for gamma in cube.points() {
            let w = self.values[gamma as usize] as i128;
            total += w * w;
        }
        Ok(dyadic(total, 2 * self.n))
    }

    /// Fourier coefficient of the restriction `f|_{S,z}` at `gamma` (which
    /// must be supported on the free set), computed from the parent spectrum:
    /// the sum over `delta` on the complement of `coefficient(delta | gamma)`
    /// times the character of `delta` at the assignment.
    ///
    /// Serves as a cross-check against transforming the restricted table.
    pub fn restricted_coefficient(&self, cube: &Subcube, gamma: u64) -> Result<Rat> {
        if cube.ambient_dimension() != self.n {
            return Err(Error::Dimension(format!(
                "subcube in {} bits, spectrum in {}",
                cube.ambient_dimension(),
                self.n
            )));
        }
        if gamma & !cube.free_mask() != 0 {
            return Err(Error::Precondition(format!(
                "gamma {gamma:#x} is not supported on the free coordinate set"
            )));
        }
        let complement = !cube.free_mask() & (self.domain_mask());
        let z = cube.fixed_assignment();
        let mut total: i128 = 0;
        for i in 0..(1u64 << complement.count_ones()) {
            let delta = scatter(i, complement);
            total += (self.values[(delta | gamma) as usize] * character(delta, z)) as i128;
        }
        Ok(dyadic(total, self.n))
    }

    fn domain_mask(&self) -> u64 {
        (1u64 << self.n) - 1
    }
}

/// The autocorrelation table `A(gamma) = sum_x f(x) f(x + gamma)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutocorrelationTable {
    n: u32,
    values: Vec<i64>,
}

impl AutocorrelationTable {
    pub fn dimension(&self) -> u32 {
        self.n
    }

    pub fn raw(&self) -> &[i64] {
        &self.values
    }

    /// `A(gamma)`.
    pub fn at(&self, gamma: u64) -> i64 {
        self.values[gamma as usize]
    }

    /// `(f*f)(gamma) = A(gamma) / 2^n`.
    pub fn normalized(&self, gamma: u64) -> Rat {
        dyadic(self.at(gamma) as i128, self.n)
    }

    /// `Inf_gamma[f] = (2^n - A(gamma)) / 2^(n+1)`.
    pub fn influence(&self, gamma: u64) -> Rat {
        dyadic((1i128 << self.n) - self.at(gamma) as i128, self.n + 1)
    }
}

impl BooleanFunction {
    /// Exact Walsh transform by the in-place butterfly,
    /// `O(n 2^n)` integer additions.
    pub fn walsh_transform(&self) -> Spectrum {
        let mut values = self.sign_vector();
        butterfly(&mut values);
        Spectrum {
            n: self.dimension(),
            values,
        }
    }

    /// Autocorrelation through the convolution theorem: transform the squared
    /// spectrum and divide by the domain size. Equals the quadratic-time
    /// double loop exactly.
    pub fn autocorrelation(&self) -> AutocorrelationTable {
        let n = self.dimension();
        let spectrum = self.walsh_transform();
        let mut squared: Vec<i128> = spectrum
            .values
            .iter()
            .map(|w| (*w as i128) * (*w as i128))
            .collect();
        butterfly_i128(&mut squared);
        let values = squared
            .into_iter()
            .map(|v| {
                debug_assert_eq!(v % (1i128 << n), 0);
                (v >> n) as i64
            })
            .collect();
        AutocorrelationTable { n, values }
    }

    /// `Inf_gamma[f]`, the probability that shifting the input by `gamma`
    /// flips the output. Computes the full autocorrelation; scans over many
    /// `gamma` should reuse [`BooleanFunction::autocorrelation`].
    pub fn influence(&self, gamma: u64) -> Rat {
        assert!(gamma < self.domain_size(), "gamma outside the domain");
        self.autocorrelation().influence(gamma)
    }
}

fn butterfly_i128(values: &mut [i128]) {
    let mut h = 1;
    while h < values.len() {
        for block in (0..values.len()).step_by(h * 2) {
            for i in block..block + h {
                let (a, b) = (values[i], values[i + h]);
                values[i] = a + b;
                values[i + h] = a - b;
            }
        }
        h *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::inner_product;
    use crate::rat::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn walsh_direct(f: &BooleanFunction, gamma: u64) -> i64 {
        (0..f.domain_size())
            .map(|x| f.evaluate(x) as i64 * character(gamma, x))
            .sum()
    }

    fn autocorrelation_direct(f: &BooleanFunction, gamma: u64) -> i64 {
        (0..f.domain_size())
            .map(|x| (f.evaluate(x) * f.evaluate(x ^ gamma)) as i64)
            .sum()
    }

    #[test]
    fn walsh_known_values() {
        // IP on 2 bits: W = (2, 2, 2, -2)
        let ip2 = inner_product(1).unwrap();
        assert_eq!(ip2.walsh_transform().raw(), &[2, 2, 2, -2]);
        // constant +1 on 3 bits: only the empty character survives
        let one = BooleanFunction::constant_one(3);
        assert_eq!(one.walsh_transform().raw(), &[8, 0, 0, 0, 0, 0, 0, 0]);
        // XOR on 2 bits: the whole mass sits at gamma = 11
        let xor2 = BooleanFunction::character(2, 0b11);
        let spec = xor2.walsh_transform();
        assert_eq!(spec.walsh(0b11), 4);
        assert_eq!(spec.raw().iter().filter(|w| **w != 0).count(), 1);
    }

    #[test]
    fn walsh_matches_direct_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [1u32, 3, 6] {
            let f = BooleanFunction::random(n, &mut rng);
            let spec = f.walsh_transform();
            for gamma in 0..f.domain_size() {
                assert_eq!(spec.walsh(gamma), walsh_direct(&f, gamma));
            }
            assert!(spec.parseval_holds());
        }
    }

    #[test]
    fn butterfly_is_an_involution_up_to_scale() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = BooleanFunction::random(5, &mut rng);
        let mut values = f.sign_vector();
        butterfly(&mut values);
        butterfly(&mut values);
        let expected: Vec<i64> = f.sign_vector().iter().map(|s| s * 32).collect();
        assert_eq!(values, expected);
    }

    #[test]
    fn autocorrelation_known_values() {
        // bent: A = 2^n at 0, zero elsewhere
        let ip4 = inner_product(2).unwrap();
        let a = ip4.autocorrelation();
        assert_eq!(a.at(0), 16);
        assert!((1..16).all(|g| a.at(g) == 0));
        // constant +1: A identically 2^n
        let one = BooleanFunction::constant_one(3);
        assert!(one.autocorrelation().raw().iter().all(|v| *v == 8));
        // XOR on 2 bits: A(gamma) = 4 * (-1)^|gamma|
        let xor2 = BooleanFunction::character(2, 0b11);
        assert_eq!(xor2.autocorrelation().raw(), &[4, -4, -4, 4]);
    }

    #[test]
    fn autocorrelation_matches_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for n in [2u32, 4, 7] {
            let f = BooleanFunction::random(n, &mut rng);
            let a = f.autocorrelation();
            for gamma in 0..f.domain_size() {
                assert_eq!(a.at(gamma), autocorrelation_direct(&f, gamma));
            }
            assert_eq!(a.at(0), f.domain_size() as i64);
            assert!(a.raw().iter().all(|v| v.rem_euclid(2) == 0));
        }
    }

    #[test]
    fn influence_known_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let f = BooleanFunction::random(5, &mut rng);
        assert_eq!(f.influence(0), rat(0, 1));
        // bent: every nonzero shift has influence exactly 1/2
        let ip4 = inner_product(2).unwrap();
        for gamma in 1..16 {
            assert_eq!(ip4.influence(gamma), rat(1, 2));
        }
        // the all-ones character flips under any odd-weight shift
        let chi = BooleanFunction::character(3, 0b111);
        for gamma in [0b001u64, 0b010, 0b100, 0b111] {
            assert_eq!(chi.influence(gamma), rat(1, 1));
        }
        assert_eq!(chi.influence(0b011), rat(0, 1));
    }

    #[test]
    fn influence_identity_with_autocorrelation() {
        // (f*f)(gamma) = 1 - 2 Inf_gamma[f], exactly
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let f = BooleanFunction::random(6, &mut rng);
        let a = f.autocorrelation();
        for gamma in 0..f.domain_size() {
            assert_eq!(a.normalized(gamma), rat(1, 1) - rat(2, 1) * a.influence(gamma));
        }
    }

    #[test]
    fn convolution_theorem() {
        // transform of A equals the squared spectrum, entrywise
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        let f = BooleanFunction::random(6, &mut rng);
        let spec = f.walsh_transform();
        let mut a = f.autocorrelation().raw().to_vec();
        butterfly(&mut a);
        for gamma in 0..f.domain_size() {
            let w = spec.walsh(gamma);
            assert_eq!(a[gamma as usize], w * w);
        }
    }

    #[test]
    fn mass_known_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = BooleanFunction::random(6, &mut rng);
        let spec = f.walsh_transform();
        assert_eq!(spec.mass_on(&Subcube::full(6)).unwrap(), rat(1, 1));

        // XOR2 spectrum concentrates on gamma = 11: the subcube fixing
        // coordinate 2 to one carries all of it
        let xor2 = BooleanFunction::character(2, 0b11);
        let cube = Subcube::new(2, 0b01, 0b10).unwrap();
        assert_eq!(xor2.walsh_transform().mass_on(&cube).unwrap(), rat(1, 1));

        // bent: any 1-dimensional subcube carries mass 1/2
        let ip2 = inner_product(1).unwrap();
        let spec = ip2.walsh_transform();
        for (free, fixed) in [(0b01u64, 0b00u64), (0b01, 0b10), (0b10, 0b01)] {
            let cube = Subcube::new(2, free, fixed).unwrap();
            assert_eq!(spec.mass_on(&cube).unwrap(), rat(1, 2));
        }
    }

    #[test]
    fn restricted_coefficient_matches_direct_transform() {
        let mut rng = ChaCha8Rng::seed_from_u64(18);
        let f = BooleanFunction::random(6, &mut rng);
        let spec = f.walsh_transform();
        for (free, fixed) in [(0b000111u64, 0b101000u64), (0b110010, 0b001000), (0b111111, 0)] {
            let cube = Subcube::new(6, free, fixed).unwrap();
            let restricted = f.restrict(&cube).unwrap().walsh_transform();
            for i in 0..(1u64 << cube.dimension()) {
                let gamma = scatter(i, free);
                let via_parent = spec.restricted_coefficient(&cube, gamma).unwrap();
                assert_eq!(via_parent, restricted.coefficient(i));
            }
        }
    }

    #[test]
    fn restricted_coefficient_worked_example() {
        // IP2 pinned to second coordinate = 1, gamma on the first coordinate
        let ip2 = inner_product(1).unwrap();
        let cube = Subcube::new(2, 0b01, 0b10).unwrap();
        let spec = ip2.walsh_transform();
        let via_parent = spec.restricted_coefficient(&cube, 0b01).unwrap();
        let direct = ip2.restrict(&cube).unwrap().walsh_transform().coefficient(1);
        assert_eq!(via_parent, direct);
        assert_eq!(via_parent, rat(1, 1));
        // gamma off the free set is rejected
        assert!(spec.restricted_coefficient(&cube, 0b10).is_err());
    }
}
