//! The invariant battery behind the `selftest` command: exact identities,
//! the error-transfer chain on random functions, the expansion identity, and
//! the rank-separation constructions. Failures carry a minimal witness.

use crate::bits::scatter;
use crate::budget::Budget;
use crate::constructions::{
    compose, extended_hamming_code, hamming_code, inner_product, verify_tower,
};
use crate::error::Result;
use crate::function::BooleanFunction;
use crate::fourier::butterfly;
use crate::graphs::{rainbow_exact_counts, subgraph_expansion_sum, SimplePattern};
use crate::properties::{self, PropertyReport};
use crate::rat::{rat, to_f64, Rat};
use crate::subcube::Subcube;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    /// Minimal witness on failure, short summary on success.
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SelftestReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn record(checks: &mut Vec<CheckResult>, name: &'static str, outcome: Result<Option<String>>) {
    let check = match outcome {
        Ok(None) => CheckResult {
            name,
            passed: true,
            detail: "ok".into(),
        },
        Ok(Some(witness)) => CheckResult {
            name,
            passed: false,
            detail: witness,
        },
        Err(e) => CheckResult {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    };
    checks.push(check);
}

pub fn run(seed: u64, budget: Budget) -> SelftestReport {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    record(&mut checks, "parseval", check_parseval(&mut rng));
    record(&mut checks, "transform involution", check_involution(&mut rng));
    record(
        &mut checks,
        "autocorrelation vs influence",
        check_autocorrelation_influence(&mut rng),
    );
    record(
        &mut checks,
        "convolution theorem",
        check_convolution_theorem(&mut rng),
    );
    record(
        &mut checks,
        "restriction coefficients",
        check_restriction_lemma(&mut rng),
    );
    record(
        &mut checks,
        "restriction mass identity",
        check_mass_identity(&mut rng),
    );
    record(
        &mut checks,
        "error-transfer chain",
        check_chain(&mut rng, budget),
    );
    record(
        &mut checks,
        "single-edge rainbow identity",
        check_rainbow_identity(&mut rng),
    );
    record(
        &mut checks,
        "subgraph expansion",
        check_expansion(&mut rng, budget),
    );
    record(&mut checks, "rank separation towers", check_towers());

    SelftestReport { seed, checks }
}

fn check_parseval(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for n in 1..=10u32 {
        let f = BooleanFunction::random(n, rng);
        if !f.walsh_transform().parseval_holds() {
            return Ok(Some(format!("n={n}, table {f:?}")));
        }
    }
    Ok(None)
}

fn check_involution(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for n in 1..=8u32 {
        let f = BooleanFunction::random(n, rng);
        let mut values = f.sign_vector();
        butterfly(&mut values);
        butterfly(&mut values);
        for (x, v) in values.iter().enumerate() {
            if *v != f.evaluate(x as u64) as i64 * (1i64 << n) {
                return Ok(Some(format!("n={n}, x={x}")));
            }
        }
    }
    Ok(None)
}

fn check_autocorrelation_influence(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for n in 1..=8u32 {
        let f = BooleanFunction::random(n, rng);
        let auto = f.autocorrelation();
        for gamma in 0..f.domain_size() {
            if auto.normalized(gamma) != rat(1, 1) - rat(2, 1) * auto.influence(gamma) {
                return Ok(Some(format!("n={n}, gamma={gamma:#x}")));
            }
        }
    }
    Ok(None)
}

fn check_convolution_theorem(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for n in [3u32, 6, 9] {
        let f = BooleanFunction::random(n, rng);
        let spec = f.walsh_transform();
        let mut transformed = f.autocorrelation().raw().to_vec();
        butterfly(&mut transformed);
        for gamma in 0..f.domain_size() {
            let w = spec.walsh(gamma);
            if transformed[gamma as usize] != w * w {
                return Ok(Some(format!("n={n}, gamma={gamma:#x}")));
            }
        }
    }
    Ok(None)
}

fn check_restriction_lemma(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for n in [6u32, 8] {
        let f = BooleanFunction::random(n, rng);
        let spec = f.walsh_transform();
        let mask = (1u64 << n) - 1;
        for _ in 0..8 {
            let dim = rng.gen_range(1..=4u32);
            let mut free = 0u64;
            while free.count_ones() < dim {
                free |= 1u64 << rng.gen_range(0..n);
            }
            let fixed = rng.gen_range(0..f.domain_size()) & !free & mask;
            let cube = Subcube::new(n, free, fixed)?;
            let restricted = f.restrict(&cube)?.walsh_transform();
            for i in 0..(1u64 << dim) {
                let gamma = scatter(i, free);
                if spec.restricted_coefficient(&cube, gamma)? != restricted.coefficient(i) {
                    return Ok(Some(format!(
                        "n={n}, free={free:#x}, fixed={fixed:#x}, gamma={gamma:#x}"
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn check_mass_identity(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    // average of the squared restricted coefficient over assignments equals
    // the spectral mass on the dual subcube
    let n = 6u32;
    let f = BooleanFunction::random(n, rng);
    let spec = f.walsh_transform();
    let mask = (1u64 << n) - 1;
    for free in [0b000011u64, 0b011100, 0b100100] {
        let complement = !free & mask;
        let comp_bits = complement.count_ones();
        for i in 0..(1u64 << free.count_ones()) {
            let gamma = scatter(i, free);
            let mut total = rat(0, 1);
            for zi in 0..(1u64 << comp_bits) {
                let z = scatter(zi, complement);
                let c = spec.restricted_coefficient(&Subcube::new(n, free, z)?, gamma)?;
                total = total + c * c;
            }
            let average = total / rat(1i128 << comp_bits, 1);
            let dual = Subcube::new(n, complement, gamma)?;
            if average != spec.mass_on(&dual)? {
                return Ok(Some(format!("free={free:#x}, gamma={gamma:#x}")));
            }
        }
    }
    Ok(None)
}

fn chain_reports(
    f: &BooleanFunction,
    d: u32,
    budget: Budget,
) -> Result<(PropertyReport, properties::ChainCheck)> {
    let inf = properties::influence_error(f, d)?;
    let sd = properties::spectral_discrepancy_error(f, d, budget)?;
    let rf = properties::restriction_fourier_error(f, d, budget)?;
    let rc = properties::restriction_convolution_error(f, d)?;
    let ri = properties::restriction_influence_error(f, d)?;
    let lsr = properties::local_regularity_error(f, d)?;
    let chain = properties::chain_check(d, &inf, &sd, &rf, &rc, &ri, &lsr);
    Ok((inf, chain))
}

fn check_chain(rng: &mut ChaCha8Rng, budget: Budget) -> Result<Option<String>> {
    for _ in 0..10 {
        let f = BooleanFunction::random(8, rng);
        for d in 1..=3u32 {
            let (_, chain) = chain_reports(&f, d, budget)?;
            if let Some(entry) = chain.entries.iter().find(|e| !e.holds) {
                return Ok(Some(format!(
                    "d={d}, {} ({} vs {}), table {f:?}",
                    entry.name, entry.lhs, entry.rhs
                )));
            }
        }
    }
    Ok(None)
}

fn check_rainbow_identity(rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let k2 = SimplePattern::complete(2);
    for _ in 0..4 {
        let f = BooleanFunction::random(7, rng);
        for u in crate::bits::punctured_ball(7, 3) {
            let counts = rainbow_exact_counts(&k2, &[u, 0], &f, 3)?;
            if counts.density() != rat(1, 1) - f.influence(u) {
                return Ok(Some(format!("u={u:#x}")));
            }
        }
    }
    Ok(None)
}

fn check_expansion(rng: &mut ChaCha8Rng, budget: Budget) -> Result<Option<String>> {
    // every simple graph on at most 4 vertices, labeled by edge subsets
    for v in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| ((a + 1)..v).map(move |b| (a, b)))
            .collect();
        for edge_bits in 0..(1u32 << pairs.len()) {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| edge_bits >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            let names = (0..v).map(|i| format!("v{i}")).collect();
            let pattern = SimplePattern::new(names, edges.clone())?;
            for _ in 0..5 {
                let x = rng.gen_range(-1.0..1.0);
                let y = rng.gen_range(-1.0..1.0);
                let z = rng.gen_range(-1.0..1.0);
                let got = subgraph_expansion_sum(&pattern, x, y, z, budget)?;
                let expect = (1.0 + x + y + z).powi(edges.len() as i32);
                if (got - expect).abs() > 1e-12 * expect.abs().max(1.0) {
                    return Ok(Some(format!(
                        "v={v}, edges={edges:?}, point=({x},{y},{z}): {got} vs {expect}"
                    )));
                }
            }
        }
    }
    Ok(None)
}

fn check_towers() -> Result<Option<String>> {
    // bent inner products against even-redundancy codes; a redundancy-3
    // code admits no bent inner function, so the battery uses the
    // [3,1], [15,11] and extended [8,4] parity checks
    let battery: Vec<(&str, BooleanFunction, crate::constructions::LinearCode)> = vec![
        ("rep3+ip2", inner_product(1)?, hamming_code(2)?),
        ("ham15+ip4", inner_product(2)?, hamming_code(4)?),
        ("ext8+ip4", inner_product(2)?, extended_hamming_code(3)?),
    ];
    for (name, g, code) in battery {
        let verdict = verify_tower(&g, &code)?;
        if !verdict.passed() {
            return Ok(Some(format!("{name}: {verdict:?}")));
        }
        // rank separation visible to the influence tester
        let f = compose(&g, &code)?;
        let flat: Rat = properties::influence_error(&f, verdict.rank)?
            .epsilon
            .exact()
            .expect("exact");
        if flat != rat(0, 1) {
            return Ok(Some(format!("{name}: deviation {} at rank {}", flat, verdict.rank)));
        }
        let above = properties::influence_error(&f, verdict.rank + 1)?
            .epsilon
            .exact()
            .expect("exact");
        if to_f64(above) < 0.5 {
            return Ok(Some(format!("{name}: no separation at rank {}", verdict.rank + 1)));
        }
    }
    Ok(None)
}
