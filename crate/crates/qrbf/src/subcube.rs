//! Subcubes `C(S, z)` of `F_2^n` and restrictions of functions to them.

use crate::bits::scatter;
use crate::error::{Error, Result};
use crate::function::BooleanFunction;

/// The set of points agreeing with `fixed` outside the free coordinate set.
///
/// `free` is the bitmask of the free coordinates `S`; `fixed` is the
/// assignment `z`, supported only on the complement of `S`. The subcube's
/// dimension is `popcount(free)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subcube {
    n: u32,
    free: u64,
    fixed: u64,
}

impl Subcube {
    pub fn new(n: u32, free: u64, fixed: u64) -> Result<Self> {
        let domain = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        if free & !domain != 0 || fixed & !domain != 0 {
            return Err(Error::Precondition(format!(
                "subcube masks {free:#x}/{fixed:#x} exceed the {n}-bit domain"
            )));
        }
        if fixed & free != 0 {
            return Err(Error::Precondition(
                "fixed assignment overlaps the free coordinate set".into(),
            ));
        }
        Ok(Subcube { n, free, fixed })
    }

    /// The whole cube: every coordinate free.
    pub fn full(n: u32) -> Self {
        Subcube::new(n, if n == 64 { u64::MAX } else { (1u64 << n) - 1 }, 0).unwrap()
    }

    pub fn ambient_dimension(&self) -> u32 {
        self.n
    }

    pub fn dimension(&self) -> u32 {
        self.free.count_ones()
    }

    pub fn codimension(&self) -> u32 {
        self.n - self.dimension()
    }

    pub fn free_mask(&self) -> u64 {
        self.free
    }

    pub fn fixed_assignment(&self) -> u64 {
        self.fixed
    }

    pub fn contains(&self, x: u64) -> bool {
        x & !self.free == self.fixed
    }

    /// All member points, in the order induced by ascending free-bit patterns.
    pub fn points(&self) -> impl Iterator<Item = u64> + '_ {
        (0..(1u64 << self.dimension())).map(move |i| self.fixed | scatter(i, self.free))
    }
}

impl BooleanFunction {
    /// Restriction to a subcube: pin the coordinates outside the free set to
    /// the subcube's assignment. The free coordinates become the low bits of
    /// the restricted domain, in ascending order.
    pub fn restrict(&self, cube: &Subcube) -> Result<BooleanFunction> {
        if cube.ambient_dimension() != self.dimension() {
            return Err(Error::Dimension(format!(
                "subcube lives in {} bits, function in {}",
                cube.ambient_dimension(),
                self.dimension()
            )));
        }
        let free = cube.free_mask();
        let fixed = cube.fixed_assignment();
        Ok(BooleanFunction::from_fn(cube.dimension(), |x| {
            self.evaluate(fixed | scatter(x, free))
        }))
    }
}
