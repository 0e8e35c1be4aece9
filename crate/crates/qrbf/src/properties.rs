//! Worst-case deviation testers for the eight quasi-randomness criteria.
//!
//! Each tester reports the largest deviation `epsilon` found over its scan
//! set at rank `d`, together with a witness attaining it. The influence-,
//! convolution- and regularity-style testers all reduce to scans of the
//! autocorrelation table over the weight-`<= d` ball (the reductions are
//! cross-checked against definition-level enumeration in the tests); the
//! spectral testers scan subcube masses of codimension `<= d`. Deviations
//! are exact dyadic rationals except for Monte Carlo pattern counts.

use crate::bits::{binomial, punctured_ball, scatter};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fourier::Spectrum;
use crate::function::BooleanFunction;
use crate::graphs::{
    bhom_fixed_left, diameter, rainbow_embedding_density, BipartitePattern, CountEstimate,
    CountingMode, SimplePattern,
};
use crate::mc::Estimate;
use crate::rat::{rat, rat_abs, Rat};
use crate::subcube::Subcube;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyTag {
    /// Balanced influences.
    Inf,
    /// Spectral discrepancy over subcubes.
    Sd,
    /// Restriction Fourier coefficients.
    Rf,
    /// Restriction self-convolutions.
    Rc,
    /// Restriction influences.
    Ri,
    /// Local strong regularity (codegrees).
    Lsr,
    /// Degree-2 right part homomorphism counts.
    Dth,
    /// Rainbow embedding counts.
    Rain,
}

impl std::fmt::Display for PropertyTag {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PropertyTag::Inf => "INF",
            PropertyTag::Sd => "SD",
            PropertyTag::Rf => "RF",
            PropertyTag::Rc => "RC",
            PropertyTag::Ri => "RI",
            PropertyTag::Lsr => "LSR",
            PropertyTag::Dth => "DTH",
            PropertyTag::Rain => "RAIN",
        };
        fm.write_str(s)
    }
}

/// What attains a tester's worst deviation.
#[derive(Debug, Clone, PartialEq)]
pub enum Witness {
    /// A shift direction `gamma`.
    Shift(u64),
    /// A subcube, for the spectral discrepancy scan.
    Subcube { free: u64, fixed: u64 },
    /// A restriction coordinate set and a coefficient index inside it.
    RestrictionCoefficient { set: u64, gamma: u64 },
    /// A pair of left vertices of the bipartite Cayley graph.
    VertexPair { u: u64, v: u64 },
    /// A pattern (in its text format) and the fixed injection targets.
    PatternMap {
        bipartite: bool,
        pattern: String,
        targets: Vec<u64>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Deviation {
    Exact(Rat),
    Sampled(Estimate),
}

impl Deviation {
    pub fn as_f64(&self) -> f64 {
        match self {
            Deviation::Exact(r) => crate::rat::to_f64(*r),
            Deviation::Sampled(e) => e.mean,
        }
    }

    pub fn exact(&self) -> Option<Rat> {
        match self {
            Deviation::Exact(r) => Some(*r),
            Deviation::Sampled(_) => None,
        }
    }
}

/// One tester's outcome: worst deviation at rank `d`, with its witness.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub property: PropertyTag,
    pub d: u32,
    pub epsilon: Deviation,
    pub witness: Witness,
    /// Whether `|coefficient(0)| < 1/2`, the standing assumption of all
    /// eight criteria. Testers still run when it fails; the flag records it.
    pub mean_zero_ok: bool,
}

fn require_rank(f: &BooleanFunction, d: u32) -> Result<()> {
    if d == 0 || d > f.dimension() {
        return Err(Error::Precondition(format!(
            "rank {d} outside 1..={}",
            f.dimension()
        )));
    }
    Ok(())
}

/// Worst deviation of a shift influence from 1/2 over the punctured
/// weight-`<= d` ball: `max |Inf_gamma - 1/2| = max |A(gamma)| / 2^(n+1)`.
pub fn influence_error(f: &BooleanFunction, d: u32) -> Result<PropertyReport> {
    require_rank(f, d)?;
    let auto = f.autocorrelation();
    let (worst, witness) = max_autocorrelation_in_ball(f, d, &auto);
    Ok(PropertyReport {
        property: PropertyTag::Inf,
        d,
        epsilon: Deviation::Exact(crate::rat::dyadic(worst as i128, f.dimension() + 1)),
        witness: Witness::Shift(witness),
        mean_zero_ok: f.walsh_transform().mean_below_half(),
    })
}

fn max_autocorrelation_in_ball(
    f: &BooleanFunction,
    d: u32,
    auto: &crate::fourier::AutocorrelationTable,
) -> (u64, u64) {
    let mut worst = (0u64, 0u64);
    for gamma in punctured_ball(f.dimension(), d) {
        let a = auto.at(gamma).unsigned_abs();
        if a > worst.0 {
            worst = (a, gamma);
        }
    }
    (worst.0, if worst.0 == 0 { first_in_ball(f.dimension()) } else { worst.1 })
}

fn first_in_ball(n: u32) -> u64 {
    debug_assert!(n >= 1);
    1
}

/// Cost of the subcube scans: one pass over the spectrum per coordinate set.
fn subcube_scan_cost(n: u32, d: u32) -> u64 {
    (1..=d)
        .map(|k| binomial(n as u64, k as u64).saturating_mul(1u64 << n))
        .fold(0u64, u64::saturating_add)
}

/// Shared kernel of the two spectral scans: over every coordinate set `T`
/// with `1 <= |T| <= d` and every assignment `z` on `T`, the deviation of
/// the spectral mass of `{gamma : gamma|_T = z}` from `2^(-|T|)`.
/// Returns the maximum and the attaining `(T, z)`.
fn max_subcube_mass_deviation(spec: &Spectrum, d: u32) -> (Rat, u64, u64) {
    let n = spec.dimension();
    let mut worst = (Rat::zero(), 1u64, 0u64);
    let mut first = true;
    for k in 1..=d {
        for t_mask in crate::bits::points_of_weight(n, k) {
            let mut buckets = vec![0i128; 1usize << k];
            for gamma in 0..(1u64 << n) {
                let w = spec.walsh(gamma) as i128;
                buckets[crate::bits::gather(gamma, t_mask) as usize] += w * w;
            }
            let target = rat(1, 1i128 << k);
            for (z, mass) in buckets.iter().enumerate() {
                let dev = rat_abs(crate::rat::dyadic(*mass, 2 * n) - target);
                if first || dev > worst.0 {
                    worst = (dev, t_mask, scatter(z as u64, t_mask));
                    first = false;
                }
            }
        }
    }
    worst
}

/// Worst spectral-sample deviation over subcubes of codimension at most `d`:
/// the mass on each must be near `2^(-codim)`.
pub fn spectral_discrepancy_error(
    f: &BooleanFunction,
    d: u32,
    budget: Budget,
) -> Result<PropertyReport> {
    require_rank(f, d)?;
    budget.check("subcube mass scan", subcube_scan_cost(f.dimension(), d))?;
    let spec = f.walsh_transform();
    let (eps, t_mask, z) = max_subcube_mass_deviation(&spec, d);
    let full = (1u64 << f.dimension()) - 1;
    Ok(PropertyReport {
        property: PropertyTag::Sd,
        d,
        epsilon: Deviation::Exact(eps),
        witness: Witness::Subcube {
            free: full & !t_mask,
            fixed: z,
        },
        mean_zero_ok: spec.mean_below_half(),
    })
}

/// Worst deviation of the averaged squared restriction coefficients from the
/// flat value `2^(-|S|)`, over coordinate sets `|S| <= d` and coefficients
/// `gamma` inside `S`. Computed through the identity that the average over
/// assignments equals the spectral mass on `{delta : delta|_S = gamma}`, so
/// the scan never enumerates assignments.
pub fn restriction_fourier_error(
    f: &BooleanFunction,
    d: u32,
    budget: Budget,
) -> Result<PropertyReport> {
    require_rank(f, d)?;
    budget.check("restriction coefficient scan", subcube_scan_cost(f.dimension(), d))?;
    let spec = f.walsh_transform();
    let (eps, s_mask, gamma) = max_subcube_mass_deviation(&spec, d);
    Ok(PropertyReport {
        property: PropertyTag::Rf,
        d,
        epsilon: Deviation::Exact(eps),
        witness: Witness::RestrictionCoefficient { set: s_mask, gamma },
        mean_zero_ok: spec.mean_below_half(),
    })
}

/// Worst deviation of the averaged restriction self-convolution from the
/// point indicator at 0, over coordinate sets of size at most `d`. The
/// average over assignments collapses to the autocorrelation at the embedded
/// argument, so the scan is `max |A(w)| / 2^n` over the punctured ball.
pub fn restriction_convolution_error(f: &BooleanFunction, d: u32) -> Result<PropertyReport> {
    require_rank(f, d)?;
    let auto = f.autocorrelation();
    let (worst, witness) = max_autocorrelation_in_ball(f, d, &auto);
    Ok(PropertyReport {
        property: PropertyTag::Rc,
        d,
        epsilon: Deviation::Exact(crate::rat::dyadic(worst as i128, f.dimension())),
        witness: Witness::Shift(witness),
        mean_zero_ok: f.walsh_transform().mean_below_half(),
    })
}

/// Worst deviation of the averaged restriction influences from 1/2. The
/// average over assignments of `Inf_gamma[f|_{S,z}]` equals the influence of
/// the embedded shift, so this coincides with [`influence_error`]; both
/// sides are computed and their agreement asserted.
pub fn restriction_influence_error(f: &BooleanFunction, d: u32) -> Result<PropertyReport> {
    require_rank(f, d)?;
    let auto = f.autocorrelation();
    let (worst, witness) = max_autocorrelation_in_ball(f, d, &auto);
    let eps = crate::rat::dyadic(worst as i128, f.dimension() + 1);
    let direct = influence_error(f, d)?;
    if direct.epsilon != Deviation::Exact(eps) {
        return Err(Error::Verification(format!(
            "restriction influence {eps} disagrees with shift influence {:?}",
            direct.epsilon
        )));
    }
    Ok(PropertyReport {
        property: PropertyTag::Ri,
        d,
        epsilon: Deviation::Exact(eps),
        witness: Witness::Shift(witness),
        mean_zero_ok: direct.mean_zero_ok,
    })
}

/// Worst codegree deviation over pairs of left vertices within distance `d`:
/// `|codegree(u,v)/2^n - (1/4 - mean/2)| = |A(u+v)| / 2^(n+2)`, so the scan
/// reduces to the autocorrelation ball and the witness is `(0, w)`.
pub fn local_regularity_error(f: &BooleanFunction, d: u32) -> Result<PropertyReport> {
    require_rank(f, d)?;
    let auto = f.autocorrelation();
    let (worst, witness) = max_autocorrelation_in_ball(f, d, &auto);
    Ok(PropertyReport {
        property: PropertyTag::Lsr,
        d,
        epsilon: Deviation::Exact(crate::rat::dyadic(worst as i128, f.dimension() + 2)),
        witness: Witness::VertexPair { u: 0, v: witness },
        mean_zero_ok: f.walsh_transform().mean_below_half(),
    })
}

/// Edge density parameters of the bipartite Cayley graph:
/// `p = 1/4 - mean/2` (codegree density), `q = 1/2 - mean/2` (degree
/// density).
pub fn edge_densities(spec: &Spectrum) -> (Rat, Rat) {
    let mean = spec.mean();
    (rat(1, 4) - mean / rat(2, 1), rat(1, 2) - mean / rat(2, 1))
}

fn rat_pow(base: Rat, exp: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..exp {
        out = out * base;
    }
    out
}

/// Relative deviation of the fixed-left homomorphism density from its random
/// target `p^(r2) q^(r1)`, for a bipartite pattern whose right part has
/// maximum degree 2. The report's rank is the diameter of the left image.
///
/// Errors with [`Error::DegenerateMean`] when the target is 0 (the relative
/// deviation is undefined there).
pub fn degree_two_homomorphism_deviation(
    f: &BooleanFunction,
    pattern: &BipartitePattern,
    psi: &[u64],
    mode: CountingMode,
) -> Result<PropertyReport> {
    if pattern.max_right_degree() > 2 {
        return Err(Error::Precondition(
            "right part has a vertex of degree above 2".into(),
        ));
    }
    let r = pattern.right_names().len() as u64;
    if r * r > f.domain_size() {
        return Err(Error::Precondition(format!(
            "right part of size {r} exceeds the square root of the domain"
        )));
    }
    let spec = f.walsh_transform();
    let (p, q) = edge_densities(&spec);
    let (r1, r2) = pattern.degree_one_two_counts();
    let expected = rat_pow(p, r2) * rat_pow(q, r1);
    if expected.is_zero() {
        return Err(Error::DegenerateMean);
    }
    let d = diameter(psi).max(1);
    let epsilon = match bhom_fixed_left(pattern, psi, f, mode)? {
        CountEstimate::Exact(density) => {
            Deviation::Exact(rat_abs(density - expected) / rat_abs(expected))
        }
        CountEstimate::Sampled(est) => Deviation::Sampled(est.deviation_from(
            crate::rat::to_f64(expected),
            crate::rat::to_f64(expected).abs(),
        )),
    };
    Ok(PropertyReport {
        property: PropertyTag::Dth,
        d,
        epsilon,
        witness: Witness::PatternMap {
            bipartite: true,
            pattern: pattern.to_text(),
            targets: psi.to_vec(),
        },
        mean_zero_ok: spec.mean_below_half(),
    })
}

/// Absolute deviation of the rainbow-embedding density from `2^(-|E|)` for a
/// fixed vertex map into the radius-`d` ball.
pub fn rainbow_deviation(
    f: &BooleanFunction,
    pattern: &SimplePattern,
    phi: &[u64],
    d: u32,
    mode: CountingMode,
) -> Result<PropertyReport> {
    require_rank(f, d)?;
    let expected = rat(1, 1i128 << pattern.edges().len());
    let epsilon = match rainbow_embedding_density(pattern, phi, f, d, mode)? {
        CountEstimate::Exact(density) => Deviation::Exact(rat_abs(density - expected)),
        CountEstimate::Sampled(est) => {
            Deviation::Sampled(est.deviation_from(crate::rat::to_f64(expected), 1.0))
        }
    };
    Ok(PropertyReport {
        property: PropertyTag::Rain,
        d,
        epsilon,
        witness: Witness::PatternMap {
            bipartite: false,
            pattern: pattern.to_text(),
            targets: phi.to_vec(),
        },
        mean_zero_ok: f.walsh_transform().mean_below_half(),
    })
}

/// Re-evaluate a report's deviation at its witness. Exact testers reproduce
/// `epsilon` bit for bit; Monte Carlo reports re-run with the recorded seed
/// and sample count.
pub fn recheck(f: &BooleanFunction, report: &PropertyReport) -> Result<Deviation> {
    let n = f.dimension();
    match (&report.property, &report.witness) {
        (PropertyTag::Inf | PropertyTag::Ri, Witness::Shift(w)) => Ok(Deviation::Exact(rat_abs(
            f.influence(*w) - rat(1, 2),
        ))),
        (PropertyTag::Rc, Witness::Shift(w)) => {
            Ok(Deviation::Exact(rat_abs(f.autocorrelation().normalized(*w))))
        }
        (PropertyTag::Sd, Witness::Subcube { free, fixed }) => {
            let cube = Subcube::new(n, *free, *fixed)?;
            let mass = f.walsh_transform().mass_on(&cube)?;
            Ok(Deviation::Exact(rat_abs(
                mass - rat(1, 1i128 << cube.codimension()),
            )))
        }
        (PropertyTag::Rf, Witness::RestrictionCoefficient { set, gamma }) => {
            let full = (1u64 << n) - 1;
            let cube = Subcube::new(n, full & !set, *gamma)?;
            let mass = f.walsh_transform().mass_on(&cube)?;
            Ok(Deviation::Exact(rat_abs(
                mass - rat(1, 1i128 << set.count_ones()),
            )))
        }
        (PropertyTag::Lsr, Witness::VertexPair { u, v }) => {
            let (p, _) = edge_densities(&f.walsh_transform());
            let co = crate::graphs::codegree(f, *u, *v);
            Ok(Deviation::Exact(rat_abs(
                crate::rat::dyadic(co as i128, n) - p,
            )))
        }
        (
            PropertyTag::Dth,
            Witness::PatternMap {
                bipartite: true,
                pattern,
                targets,
            },
        ) => {
            let pattern = BipartitePattern::from_text(pattern)?;
            let mode = match &report.epsilon {
                Deviation::Exact(_) => CountingMode::Exact,
                Deviation::Sampled(e) => CountingMode::MonteCarlo {
                    samples: e.samples,
                    seed: e.seed,
                },
            };
            Ok(degree_two_homomorphism_deviation(f, &pattern, targets, mode)?.epsilon)
        }
        (
            PropertyTag::Rain,
            Witness::PatternMap {
                bipartite: false,
                pattern,
                targets,
            },
        ) => {
            let pattern = SimplePattern::from_text(pattern)?;
            let mode = match &report.epsilon {
                Deviation::Exact(_) => CountingMode::Exact,
                Deviation::Sampled(e) => CountingMode::MonteCarlo {
                    samples: e.samples,
                    seed: e.seed,
                },
            };
            Ok(rainbow_deviation(f, &pattern, targets, report.d, mode)?.epsilon)
        }
        (tag, witness) => Err(Error::Verification(format!(
            "report for {tag} carries an incompatible witness {witness:?}"
        ))),
    }
}

/// One inequality of the error-transfer chain between the exact testers.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainEntry {
    pub name: &'static str,
    pub lhs: Rat,
    pub rhs: Rat,
    pub holds: bool,
}

/// The quantitative chain tying the six exact testers together at a common
/// rank. All entries must hold for every function.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainCheck {
    pub entries: Vec<ChainEntry>,
}

impl ChainCheck {
    pub fn all_hold(&self) -> bool {
        self.entries.iter().all(|e| e.holds)
    }
}

fn exact(report: &PropertyReport) -> Rat {
    report.epsilon.exact().expect("exact tester")
}

/// Evaluate the error-transfer chain on already-computed exact reports:
/// discrepancy at most twice the influence deviation, restriction Fourier at
/// most the discrepancy, restriction convolution at most `2^d` times the
/// restriction Fourier, restriction influences equal to influences, local
/// regularity equal to half the influences.
pub fn chain_check(
    d: u32,
    inf: &PropertyReport,
    sd: &PropertyReport,
    rf: &PropertyReport,
    rc: &PropertyReport,
    ri: &PropertyReport,
    lsr: &PropertyReport,
) -> ChainCheck {
    let two = rat(2, 1);
    let entries = vec![
        ChainEntry {
            name: "sd <= 2*inf",
            lhs: exact(sd),
            rhs: two * exact(inf),
            holds: exact(sd) <= two * exact(inf),
        },
        ChainEntry {
            name: "rf <= sd",
            lhs: exact(rf),
            rhs: exact(sd),
            holds: exact(rf) <= exact(sd),
        },
        ChainEntry {
            name: "rc <= 2^d*rf",
            lhs: exact(rc),
            rhs: rat(1i128 << d, 1) * exact(rf),
            holds: exact(rc) <= rat(1i128 << d, 1) * exact(rf),
        },
        ChainEntry {
            name: "ri == inf",
            lhs: exact(ri),
            rhs: exact(inf),
            holds: exact(ri) == exact(inf),
        },
        ChainEntry {
            name: "lsr == inf/2",
            lhs: exact(lsr),
            rhs: exact(inf) / two,
            holds: exact(lsr) == exact(inf) / two,
        },
    ];
    ChainCheck { entries }
}

/// Everything the analyze command reports for one function and rank.
#[derive(Debug, Clone)]
pub struct FullReport {
    pub reports: Vec<PropertyReport>,
    pub chain: ChainCheck,
    /// Battery rows that could not run (degenerate targets, budget).
    pub skipped: Vec<String>,
}

/// Run the six exact testers, a small exact pattern battery for the two
/// counting testers, and the chain check. Fails if the chain is violated.
pub fn full_report(f: &BooleanFunction, d: u32, budget: Budget) -> Result<FullReport> {
    let inf = influence_error(f, d)?;
    let sd = spectral_discrepancy_error(f, d, budget)?;
    let rf = restriction_fourier_error(f, d, budget)?;
    let rc = restriction_convolution_error(f, d)?;
    let ri = restriction_influence_error(f, d)?;
    let lsr = local_regularity_error(f, d)?;
    let chain = chain_check(d, &inf, &sd, &rf, &rc, &ri, &lsr);
    if !chain.all_hold() {
        return Err(Error::Verification(format!(
            "error-transfer chain violated: {:?}",
            chain.entries.iter().find(|e| !e.holds)
        )));
    }

    let witness_shift = match inf.witness {
        Witness::Shift(w) => w,
        _ => 1,
    };
    let mut reports = vec![inf, sd, rf, rc, ri, lsr];
    let mut skipped = Vec::new();

    // counting battery: exact patterns anchored at the influence witness
    let degree_one = BipartitePattern::new(vec!["a".into()], vec!["r".into()], vec![(0, 0)])
        .unwrap();
    let cherry = BipartitePattern::new(
        vec!["a".into(), "b".into()],
        vec!["r".into()],
        vec![(0, 0), (1, 0)],
    )
    .unwrap();
    for (pattern, psi) in [
        (&degree_one, vec![0u64]),
        (&cherry, vec![0u64, witness_shift]),
    ] {
        match degree_two_homomorphism_deviation(f, pattern, &psi, CountingMode::Exact) {
            Ok(report) => reports.push(report),
            Err(Error::DegenerateMean) => {
                skipped.push("homomorphism battery: degenerate target density".into())
            }
            Err(Error::Budget { .. }) => {
                skipped.push("homomorphism battery: enumeration over budget".into())
            }
            Err(e) => return Err(e),
        }
    }

    let k2 = SimplePattern::complete(2);
    let mut rainbow_rows = vec![(k2, vec![witness_shift, 0u64])];
    if d >= 2 && f.dimension() >= 2 {
        rainbow_rows.push((SimplePattern::star(2), vec![0u64, 0b01, 0b10]));
    }
    for (pattern, phi) in &rainbow_rows {
        match rainbow_deviation(f, pattern, phi, d, CountingMode::Exact) {
            Ok(report) => reports.push(report),
            Err(Error::Budget { .. }) => {
                skipped.push("rainbow battery: enumeration over budget".into())
            }
            Err(e) => return Err(e),
        }
    }

    Ok(FullReport {
        reports,
        chain,
        skipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::scatter;
    use crate::constructions::{compose, extended_hamming_code, inner_product};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn exact_eps(r: &PropertyReport) -> Rat {
        r.epsilon.exact().unwrap()
    }

    #[test]
    fn influence_error_cases() {
        // bent: flat influences through every rank
        let ip4 = inner_product(2).unwrap();
        assert_eq!(exact_eps(&influence_error(&ip4, 4).unwrap()), rat(0, 1));
        // all-ones character on 4 bits: weight-1 influences are 1
        let chi = BooleanFunction::character(4, 0b1111);
        let r = influence_error(&chi, 1).unwrap();
        assert_eq!(exact_eps(&r), rat(1, 2));
        assert!(r.mean_zero_ok);
        // constant +1: influences vanish, mean flag trips
        let one = BooleanFunction::constant_one(4);
        let r = influence_error(&one, 1).unwrap();
        assert_eq!(exact_eps(&r), rat(1, 2));
        assert!(!r.mean_zero_ok);
        // rank bounds
        assert!(influence_error(&one, 0).is_err());
        assert!(influence_error(&one, 5).is_err());
    }

    #[test]
    fn spectral_discrepancy_cases() {
        // single character on 2 bits: the codim-1 subcube holding it has
        // full mass, deviation 1/2
        let chi = BooleanFunction::character(2, 0b11);
        let r = spectral_discrepancy_error(&chi, 1, Budget::default()).unwrap();
        assert_eq!(exact_eps(&r), rat(1, 2));
        // bent: every subcube carries exactly its share
        let ip6 = inner_product(3).unwrap();
        for d in 1..=3 {
            let r = spectral_discrepancy_error(&ip6, d, Budget::default()).unwrap();
            assert_eq!(exact_eps(&r), rat(0, 1));
        }
        // d = n collapses to single spectrum points
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let f = BooleanFunction::random(4, &mut rng);
        let r = spectral_discrepancy_error(&f, 4, Budget::default()).unwrap();
        let spec = f.walsh_transform();
        let expected = (0..16u64)
            .map(|g| {
                let c = spec.coefficient(g);
                rat_abs(c * c - rat(1, 16))
            })
            .max()
            .unwrap();
        assert!(exact_eps(&r) >= expected);
        // budget refusal carries the estimate
        assert!(matches!(
            spectral_discrepancy_error(&f, 2, Budget(10)),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn restriction_fourier_equals_discrepancy_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..5 {
            let f = BooleanFunction::random(7, &mut rng);
            for d in 1..=3 {
                let sd = spectral_discrepancy_error(&f, d, Budget::default()).unwrap();
                let rf = restriction_fourier_error(&f, d, Budget::default()).unwrap();
                // identical scan sets: the two testers agree exactly
                assert_eq!(exact_eps(&sd), exact_eps(&rf));
            }
        }
    }

    #[test]
    fn restriction_fourier_direct_definition_oracle() {
        // E_z over assignments of the squared restricted coefficient,
        // enumerated outright, matches the subcube-mass computation
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let f = BooleanFunction::random(6, &mut rng);
        let d = 2;
        let spec = f.walsh_transform();
        let mut worst = rat(0, 1);
        for s_mask in crate::bits::punctured_ball(6, d) {
            let complement = !s_mask & 0x3f;
            let comp_bits = complement.count_ones();
            for gi in 0..(1u64 << s_mask.count_ones()) {
                let gamma_local = gi;
                let mut total = rat(0, 1);
                for zi in 0..(1u64 << comp_bits) {
                    let z = scatter(zi, complement);
                    let cube = Subcube::new(6, s_mask, z).unwrap();
                    let c = f
                        .restrict(&cube)
                        .unwrap()
                        .walsh_transform()
                        .coefficient(gamma_local);
                    total = total + c * c;
                }
                let avg = total / rat(1i128 << comp_bits, 1);
                let dev = rat_abs(avg - rat(1, 1i128 << s_mask.count_ones()));
                if dev > worst {
                    worst = dev;
                }
            }
        }
        let rf = restriction_fourier_error(&f, d, Budget::default()).unwrap();
        assert_eq!(exact_eps(&rf), worst);
    }

    #[test]
    fn restriction_convolution_reduction_oracle() {
        // direct enumeration over restrictions confirms the ball reduction
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let f = BooleanFunction::random(6, &mut rng);
        let d = 2;
        let mut worst = rat(0, 1);
        for s_mask in crate::bits::punctured_ball(6, d) {
            let complement = !s_mask & 0x3f;
            let comp_bits = complement.count_ones();
            let s_bits = s_mask.count_ones();
            for xi in 0..(1u64 << s_bits) {
                let mut total = rat(0, 1);
                for zi in 0..(1u64 << comp_bits) {
                    let z = scatter(zi, complement);
                    let cube = Subcube::new(6, s_mask, z).unwrap();
                    let restricted = f.restrict(&cube).unwrap();
                    total = total + restricted.autocorrelation().normalized(xi);
                }
                let avg = total / rat(1i128 << comp_bits, 1);
                let indicator = if xi == 0 { rat(1, 1) } else { rat(0, 1) };
                let dev = rat_abs(avg - indicator);
                if dev > worst {
                    worst = dev;
                }
            }
        }
        let rc = restriction_convolution_error(&f, d).unwrap();
        assert_eq!(exact_eps(&rc), worst);
    }

    #[test]
    fn restriction_influence_identity_oracle() {
        // E_z Inf_gamma[f|_{S,z}] equals the influence of the embedded shift
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let f = BooleanFunction::random(5, &mut rng);
        for s_mask in [0b00011u64, 0b10100, 0b01110] {
            let complement = !s_mask & 0x1f;
            let comp_bits = complement.count_ones();
            for gi in 1..(1u64 << s_mask.count_ones()) {
                let mut total = rat(0, 1);
                for zi in 0..(1u64 << comp_bits) {
                    let z = scatter(zi, complement);
                    let cube = Subcube::new(5, s_mask, z).unwrap();
                    total = total + f.restrict(&cube).unwrap().influence(gi);
                }
                let avg = total / rat(1i128 << comp_bits, 1);
                assert_eq!(avg, f.influence(scatter(gi, s_mask)));
            }
        }
        // and the tester equals the influence tester
        let ri = restriction_influence_error(&f, 2).unwrap();
        let inf = influence_error(&f, 2).unwrap();
        assert_eq!(exact_eps(&ri), exact_eps(&inf));
    }

    #[test]
    fn local_regularity_cases() {
        // bent: zero deviation, codegree pinned at p * 2^n for all pairs
        let ip4 = inner_product(2).unwrap();
        assert_eq!(exact_eps(&local_regularity_error(&ip4, 4).unwrap()), rat(0, 1));
        // XOR on 2 bits at rank 1: |A| = 4 at weight one, 4 / 2^4 = 1/4
        let xor2 = BooleanFunction::character(2, 0b11);
        assert_eq!(exact_eps(&local_regularity_error(&xor2, 1).unwrap()), rat(1, 4));
        // exact halving of the influence deviation
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        for _ in 0..20 {
            let f = BooleanFunction::random(8, &mut rng);
            for d in [1, 2, 3] {
                let lsr = exact_eps(&local_regularity_error(&f, d).unwrap());
                let inf = exact_eps(&influence_error(&f, d).unwrap());
                assert_eq!(lsr * rat(2, 1), inf);
            }
        }
    }

    #[test]
    fn homomorphism_deviation_cases() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let f = BooleanFunction::random(6, &mut rng);
        // degree-1 right vertex: density is exactly q, deviation 0
        let single =
            BipartitePattern::new(vec!["a".into()], vec!["r".into()], vec![(0, 0)]).unwrap();
        let r =
            degree_two_homomorphism_deviation(&f, &single, &[0], CountingMode::Exact).unwrap();
        assert_eq!(exact_eps(&r), rat(0, 1));

        // degree-2 right vertex at (0, w): relative deviation |A(w)| / (4 p 2^n)
        let cherry = BipartitePattern::new(
            vec!["a".into(), "b".into()],
            vec!["r".into()],
            vec![(0, 0), (1, 0)],
        )
        .unwrap();
        let w = 0b011u64;
        let r =
            degree_two_homomorphism_deviation(&f, &cherry, &[0, w], CountingMode::Exact).unwrap();
        let (p, _) = edge_densities(&f.walsh_transform());
        let a = f.autocorrelation().at(w);
        let expected = rat_abs(rat(a as i128, 4 * 64)) / p;
        assert_eq!(exact_eps(&r), expected);
        assert_eq!(r.d, 2);

        // right part too large for the domain
        let wide = BipartitePattern::new(
            vec!["a".into()],
            (0..9).map(|i| format!("r{i}")).collect(),
            vec![],
        )
        .unwrap();
        let f6 = BooleanFunction::random(6, &mut rng);
        assert!(degree_two_homomorphism_deviation(&f6, &wide, &[0], CountingMode::Exact).is_err());

        // degenerate target: constant function has q = 0
        let one = BooleanFunction::constant_one(4);
        assert!(matches!(
            degree_two_homomorphism_deviation(&one, &single, &[0], CountingMode::Exact),
            Err(Error::DegenerateMean)
        ));
    }

    #[test]
    fn rainbow_deviation_cases() {
        // bent: single-edge deviation vanishes at any shift in the ball
        let ip4 = inner_product(2).unwrap();
        let k2 = SimplePattern::complete(2);
        for u in [1u64, 2, 0b11] {
            let r = rainbow_deviation(&ip4, &k2, &[u, 0], 2, CountingMode::Exact).unwrap();
            assert_eq!(exact_eps(&r), rat(0, 1));
        }
        // edgeless pattern: density 1, deviation 0 against 2^0
        let edgeless = SimplePattern::new(vec!["u".into()], vec![]).unwrap();
        let r = rainbow_deviation(&ip4, &edgeless, &[0], 1, CountingMode::Exact).unwrap();
        assert_eq!(exact_eps(&r), rat(0, 1));
    }

    #[test]
    fn witnesses_reproduce_epsilon() {
        let mut rng = ChaCha8Rng::seed_from_u64(38);
        let f = BooleanFunction::random(7, &mut rng);
        let budget = Budget::default();
        let reports = [
            influence_error(&f, 3).unwrap(),
            spectral_discrepancy_error(&f, 3, budget).unwrap(),
            restriction_fourier_error(&f, 3, budget).unwrap(),
            restriction_convolution_error(&f, 3).unwrap(),
            restriction_influence_error(&f, 3).unwrap(),
            local_regularity_error(&f, 3).unwrap(),
        ];
        for report in &reports {
            let again = recheck(&f, report).unwrap();
            assert_eq!(again, report.epsilon, "witness must reproduce {report:?}");
        }
    }

    #[test]
    fn rank_monotonicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(39);
        let budget = Budget::default();
        for _ in 0..5 {
            let f = BooleanFunction::random(6, &mut rng);
            let mut prev: Option<[Rat; 4]> = None;
            for d in 1..=4 {
                let now = [
                    exact_eps(&influence_error(&f, d).unwrap()),
                    exact_eps(&spectral_discrepancy_error(&f, d, budget).unwrap()),
                    exact_eps(&restriction_convolution_error(&f, d).unwrap()),
                    exact_eps(&local_regularity_error(&f, d).unwrap()),
                ];
                if let Some(prev) = prev {
                    for (a, b) in prev.iter().zip(&now) {
                        assert!(b >= a);
                    }
                }
                prev = Some(now);
            }
        }
    }

    #[test]
    fn full_report_on_the_tower_function() {
        let f = compose(&inner_product(2).unwrap(), &extended_hamming_code(3).unwrap()).unwrap();
        let out = full_report(&f, 3, Budget::default()).unwrap();
        assert!(out.chain.all_hold());
        for report in &out.reports {
            assert_eq!(exact_eps(report), rat(0, 1), "{:?}", report.property);
        }
        // one rank higher the influence deviation jumps to 1/2
        let out = full_report(&f, 4, Budget::default()).unwrap();
        let inf = out
            .reports
            .iter()
            .find(|r| r.property == PropertyTag::Inf)
            .unwrap();
        assert_eq!(exact_eps(inf), rat(1, 2));
    }

    #[test]
    fn full_report_chain_on_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for _ in 0..3 {
            let f = BooleanFunction::random(6, &mut rng);
            let out = full_report(&f, 2, Budget::default()).unwrap();
            assert!(out.chain.all_hold());
            assert!(out.skipped.is_empty());
            assert_eq!(out.reports.len(), 6 + 2 + 2);
        }
    }
}
