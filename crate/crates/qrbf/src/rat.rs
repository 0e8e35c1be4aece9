//! Exact rational values.
//!
//! Every spectral quantity in this crate is a dyadic rational; `i128`
//! numerators keep all of them exact up to the supported dimensions.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Rat = Ratio<i128>;

/// `num / 2^log2_den`, reduced.
pub fn dyadic(num: i128, log2_den: u32) -> Rat {
    Ratio::new(num, 1i128 << log2_den)
}

pub fn rat(num: i128, den: i128) -> Rat {
    Ratio::new(num, den)
}

pub fn rat_abs(x: Rat) -> Rat {
    x.abs()
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

/// Render as `num/den` (always with an explicit denominator).
pub fn display(x: Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Nearest f64; exact dyadic rationals in range convert exactly.
pub fn to_f64(x: Rat) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_reduces() {
        assert_eq!(dyadic(4, 3), rat(1, 2));
        assert_eq!(display(dyadic(0, 5)), "0/1");
        assert_eq!(display(rat(-3, 6)), "-1/2");
    }
}
