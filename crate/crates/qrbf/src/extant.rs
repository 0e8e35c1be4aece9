//! Comparators from other quasi-randomness theories: Gowers uniformity
//! norms, small Fourier coefficients up to a weight bound, correlations with
//! the complex characters of the cyclic group of order `2^n` (via the
//! binary-expansion identification), and noise-stable influences.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::mc::{sample_rng, Accumulator, Estimate};
use crate::properties::{influence_error, spectral_discrepancy_error};
use crate::rat::{rat, to_f64, Rat};
use rand::Rng;
use rustfft::{num_complex::Complex64, FftPlanner};

#[derive(Debug, Clone, PartialEq)]
pub enum GowersMethod {
    ExactRecursive,
    Sampled(Estimate),
}

/// A Gowers uniformity norm value.
#[derive(Debug, Clone, PartialEq)]
pub struct GowersResult {
    pub order: u32,
    pub value: f64,
    pub method: GowersMethod,
}

/// Exact cost model of the recursive evaluation: one transform per
/// derivative direction at each level above order 2.
pub fn gowers_exact_cost(n: u32, k: u32) -> u64 {
    if k <= 1 {
        return 1;
    }
    let bits = (n as u64).saturating_mul((k - 1) as u64);
    if bits >= 63 {
        return u64::MAX;
    }
    (n as u64).saturating_mul(1u64 << bits)
}

/// `2^k`-th power of the order-`k` norm, by the derivative recursion:
/// base cases are the squared mean (order 1) and the fourth-power spectrum
/// sum (order 2); above that, average over all derivative directions.
fn gowers_pow_exact(f: &BooleanFunction, k: u32) -> f64 {
    let n = f.dimension();
    match k {
        1 => {
            let mean = to_f64(f.walsh_transform().mean());
            mean * mean
        }
        2 => {
            let spec = f.walsh_transform();
            let total: u128 = spec
                .raw()
                .iter()
                .map(|w| {
                    let w = w.unsigned_abs() as u128;
                    w * w * w * w
                })
                .sum();
            total as f64 / 2f64.powi(4 * n as i32)
        }
        _ => {
            let mut total = 0.0;
            for v in 0..f.domain_size() {
                total += gowers_pow_exact(&f.derivative(v), k - 1);
            }
            total / f.domain_size() as f64
        }
    }
}

/// The order-`k` Gowers uniformity norm, exactly.
pub fn gowers_norm(f: &BooleanFunction, k: u32, budget: Budget) -> Result<GowersResult> {
    if k == 0 {
        return Err(Error::Precondition("norm order must be at least 1".into()));
    }
    budget.check(
        "gowers norm recursion",
        gowers_exact_cost(f.dimension(), k),
    )?;
    let pow = gowers_pow_exact(f, k);
    Ok(GowersResult {
        order: k,
        value: pow.max(0.0).powf(0.5f64.powi(k as i32)),
        method: GowersMethod::ExactRecursive,
    })
}

/// Monte Carlo Gowers norm straight from the definition: each sample draws a
/// base point and `k` directions and multiplies the function over the `2^k`
/// corners of the combinatorial cube they span. The estimate (with its
/// standard error) is of the `2^k`-th power; the reported value is its root.
pub fn gowers_norm_sampled(
    f: &BooleanFunction,
    k: u32,
    samples: u64,
    seed: u64,
) -> Result<GowersResult> {
    if k == 0 {
        return Err(Error::Precondition("norm order must be at least 1".into()));
    }
    if samples < 2 {
        return Err(Error::Precondition("need at least two samples".into()));
    }
    let points = f.domain_size();
    let mut acc = Accumulator::default();
    let mut dirs = vec![0u64; k as usize];
    for index in 0..samples {
        let mut rng = sample_rng(seed, index);
        let x: u64 = rng.gen_range(0..points);
        for d in dirs.iter_mut() {
            *d = rng.gen_range(0..points);
        }
        let mut product = 1i32;
        for corner in 0..(1u64 << k) {
            let mut y = x;
            for (bit, d) in dirs.iter().enumerate() {
                if corner >> bit & 1 == 1 {
                    y ^= d;
                }
            }
            product *= f.sign(y);
        }
        acc.push(product as f64);
    }
    let est = acc.finish(seed);
    Ok(GowersResult {
        order: k,
        value: est.mean.max(0.0).powf(0.5f64.powi(k as i32)),
        method: GowersMethod::Sampled(est),
    })
}

/// Gowers-norm smallness at degree `d`: the order-`d+1` norm itself.
pub fn f2_regularity_error(f: &BooleanFunction, d: u32, budget: Budget) -> Result<GowersResult> {
    gowers_norm(f, d + 1, budget)
}

/// Largest coefficient magnitude over `|gamma| <= d`. The weight-0
/// coefficient participates unless `include_zero` is false.
pub fn r_regularity_error(f: &BooleanFunction, d: u32, include_zero: bool) -> Rat {
    let spec = f.walsh_transform();
    let mut worst: u64 = if include_zero {
        spec.walsh(0).unsigned_abs()
    } else {
        0
    };
    for gamma in crate::bits::punctured_ball(f.dimension(), d) {
        worst = worst.max(spec.walsh(gamma).unsigned_abs());
    }
    crate::rat::dyadic(worst as i128, f.dimension())
}

/// The identification of `z` in the cyclic group of order `2^n` with the
/// vector of its binary digits. Under this crate's encoding that map is the
/// identity on integers; it exists to make the transfer explicit.
pub fn binary_expansion_lift(z: u64, n: u32) -> u64 {
    assert!(z < (1u64 << n), "residue outside the group");
    z
}

/// Worst correlation with a nonzero complex character of the cyclic group.
#[derive(Debug, Clone, PartialEq)]
pub struct ZpCorrelation {
    /// The nonzero character index attaining the maximum.
    pub index: u64,
    pub magnitude: f64,
}

/// Scan all nonzero characters of the cyclic group of order `2^n` for the
/// largest correlation `|E_z f(z*) exp(-2 pi i j z / 2^n)|`, through one
/// length-`2^n` complex transform.
pub fn zp_regularity_error(f: &BooleanFunction) -> Result<ZpCorrelation> {
    let n = f.dimension();
    if n > 20 {
        return Err(Error::Precondition(format!(
            "cyclic transform of length 2^{n} refused (cap n <= 20)"
        )));
    }
    let points = f.domain_size() as usize;
    let mut buffer: Vec<Complex64> = (0..points as u64)
        .map(|z| Complex64::new(f.sign(binary_expansion_lift(z, n)) as f64, 0.0))
        .collect();
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(points).process(&mut buffer);
    let mut best = (0.0f64, 1u64);
    for (j, value) in buffer.iter().enumerate().skip(1) {
        let magnitude = value.norm() / points as f64;
        if magnitude > best.0 {
            best = (magnitude, j as u64);
        }
    }
    Ok(ZpCorrelation {
        index: best.1,
        magnitude: best.0,
    })
}

/// Noise-stable influence of coordinate `i` (1-based):
/// the sum over `gamma` containing `i` of `rho^(|gamma| - 1)` times the
/// squared coefficient. The spectral sums per weight are exact integers;
/// only the `rho` powers are floating point.
pub fn stable_influence(f: &BooleanFunction, i: u32, rho: f64) -> f64 {
    let n = f.dimension();
    assert!((1..=n).contains(&i), "coordinate {i} outside 1..={n}");
    let spec = f.walsh_transform();
    let bit = 1u64 << (i - 1);
    let mut weight_sums = vec![0u128; n as usize + 1];
    for gamma in 0..f.domain_size() {
        if gamma & bit != 0 {
            let w = spec.walsh(gamma).unsigned_abs() as u128;
            weight_sums[gamma.count_ones() as usize] += w * w;
        }
    }
    let scale = 2f64.powi(-2 * (n as i32));
    weight_sums
        .iter()
        .enumerate()
        .skip(1)
        .map(|(w, sum)| *sum as f64 * scale * rho.powi(w as i32 - 1))
        .sum()
}

/// Largest noise-stable influence over all coordinates.
pub fn max_stable_influence(f: &BooleanFunction, rho: f64) -> f64 {
    (1..=f.dimension())
        .map(|i| stable_influence(f, i, rho))
        .fold(0.0, f64::max)
}

/// One inequality outcome of the cross-theory battery.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationEntry {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Cross-theory relation checks for one function at rank `d`.
#[derive(Debug, Clone)]
pub struct RelationReport {
    /// Every coefficient is bounded by `sqrt(2^-d + 2 * influence deviation)`.
    pub coefficient_bound: RelationEntry,
    /// Gowers norms of orders 2 and 3 are untouched by adding an ignored
    /// coordinate: `(order, base, lifted, holds)`.
    pub lift_gowers: Vec<(u32, f64, f64, bool)>,
    /// The added coordinate's shift influence is exactly 0.
    pub lift_influence_zero: bool,
    /// Noise parameter `delta` used below; the stable influence is
    /// instantiated at `rho = 1 - delta`.
    pub stable_delta: f64,
    /// Every stable influence is bounded by
    /// `(2^-d + discrepancy) * (2 - delta)^(d-1)`, the subcube-splitting
    /// bound. (The mass term `2^-d` is kept: bent functions have positive
    /// stable influences at zero discrepancy.)
    pub stable_bound: RelationEntry,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.coefficient_bound.holds
            && self.lift_gowers.iter().all(|(_, _, _, h)| *h)
            && self.lift_influence_zero
            && self.stable_bound.holds
    }
}

const RELATION_TOLERANCE: f64 = 1e-10;

/// Run the cross-theory battery at rank `d` with `delta = 1/2`.
pub fn relation_battery(f: &BooleanFunction, d: u32, budget: Budget) -> Result<RelationReport> {
    let n = f.dimension();
    let inf = influence_error(f, d)?
        .epsilon
        .exact()
        .expect("exact tester");

    let lhs = to_f64(r_regularity_error(f, n, true));
    let rhs = (2f64.powi(-(d as i32)) + 2.0 * to_f64(inf)).sqrt();
    let coefficient_bound = RelationEntry {
        lhs,
        rhs,
        holds: lhs <= rhs + RELATION_TOLERANCE,
    };

    let lifted = f.lift_ignoring_new_coordinates(1)?;
    let mut lift_gowers = Vec::new();
    for k in [2u32, 3] {
        let base = gowers_norm(f, k, budget)?.value;
        let up = gowers_norm(&lifted, k, budget)?.value;
        lift_gowers.push((k, base, up, (base - up).abs() <= RELATION_TOLERANCE));
    }
    let new_coordinate = 1u64 << n;
    let lift_influence_zero = lifted.influence(new_coordinate) == rat(0, 1);

    let delta = 0.5;
    let sd = spectral_discrepancy_error(f, d, budget)?
        .epsilon
        .exact()
        .expect("exact tester");
    let lhs = max_stable_influence(f, 1.0 - delta);
    let rhs = (2f64.powi(-(d as i32)) + to_f64(sd)) * (2.0 - delta).powi(d as i32 - 1);
    let stable_bound = RelationEntry {
        lhs,
        rhs,
        holds: lhs <= rhs + RELATION_TOLERANCE,
    };

    Ok(RelationReport {
        coefficient_bound,
        lift_gowers,
        lift_influence_zero,
        stable_delta: delta,
        stable_bound,
    })
}
