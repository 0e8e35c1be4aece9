//! Combinatorial views of a Boolean function.
//!
//! The bipartite Cayley graph has two copies of `F_2^n` with `u ~ v` iff
//! `f(u + v) = -1`; the rainbow Hamming graph lives on the radius-`d` ball
//! with an edge `(u, v)` in color `x` iff `f(u + x) = f(v + x)`. Neither
//! graph is ever materialized: with `2^(2n)` potential edges, everything
//! goes through these two adjacency oracles.

use crate::bits::distance;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::mc::{sample_rng, Accumulator, Estimate};
use crate::rat::{rat, Rat};
use rand::Rng;

/// Exact injective enumeration is attempted only below this many injections.
pub const INJECTION_ENUMERATION_LIMIT: u64 = 10_000_000;

/// How a counting operation should run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountingMode {
    Exact,
    MonteCarlo { samples: u64, seed: u64 },
}

/// An exact rational count or a Monte Carlo estimate of it.
#[derive(Debug, Clone, PartialEq)]
pub enum CountEstimate {
    Exact(Rat),
    Sampled(Estimate),
}

impl CountEstimate {
    pub fn as_f64(&self) -> f64 {
        match self {
            CountEstimate::Exact(r) => crate::rat::to_f64(*r),
            CountEstimate::Sampled(e) => e.mean,
        }
    }
}

// ---------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------

/// A small bipartite pattern graph with named parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitePattern {
    left: Vec<String>,
    right: Vec<String>,
    /// `(left index, right index)` pairs.
    edges: Vec<(usize, usize)>,
}

impl BipartitePattern {
    pub fn new(left: Vec<String>, right: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(l, r) in &edges {
            if l >= left.len() || r >= right.len() {
                return Err(Error::Precondition(format!("edge ({l},{r}) out of range")));
            }
            if !seen.insert((l, r)) {
                return Err(Error::Precondition(format!("duplicate edge ({l},{r})")));
            }
        }
        Ok(BipartitePattern { left, right, edges })
    }

    pub fn left_names(&self) -> &[String] {
        &self.left
    }

    pub fn right_names(&self) -> &[String] {
        &self.right
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.right.len()];
        for &(_, r) in &self.edges {
            deg[r] += 1;
        }
        deg
    }

    /// Counts of right vertices of degree 1 and 2.
    pub fn degree_one_two_counts(&self) -> (u32, u32) {
        let deg = self.right_degrees();
        (
            deg.iter().filter(|d| **d == 1).count() as u32,
            deg.iter().filter(|d| **d == 2).count() as u32,
        )
    }

    pub fn max_right_degree(&self) -> usize {
        self.right_degrees().into_iter().max().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(l, r)| format!("{}-{}", self.left[l], self.right[r]))
            .collect();
        format!(
            "left: {}\nright: {}\nedges: {}\n",
            self.left.join(" "),
            self.right.join(" "),
            edges.join(" ")
        )
    }

    /// Parse the `left:`/`right:`/`edges:` format, e.g.
    /// `left: a b` / `right: r` / `edges: a-r b-r`.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut left = None;
        let mut right = None;
        let mut edge_tokens = None;
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or(Error::Parse {
                line: idx + 1,
                message: format!("expected `key: ...`, got `{line}`"),
            })?;
            let tokens: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            match key.trim() {
                "left" => left = Some(tokens),
                "right" => right = Some(tokens),
                "edges" => edge_tokens = Some((idx + 1, tokens)),
                other => {
                    return Err(Error::Parse {
                        line: idx + 1,
                        message: format!("unknown section `{other}`"),
                    })
                }
            }
        }
        let left = left.ok_or(Error::Parse {
            line: 1,
            message: "missing `left:` section".into(),
        })?;
        let right = right.ok_or(Error::Parse {
            line: 1,
            message: "missing `right:` section".into(),
        })?;
        let (line_no, tokens) = edge_tokens.ok_or(Error::Parse {
            line: 1,
            message: "missing `edges:` section".into(),
        })?;
        let mut edges = Vec::new();
        for tok in tokens {
            let (a, b) = tok.split_once('-').ok_or(Error::Parse {
                line: line_no,
                message: format!("edge `{tok}` is not `left-right`"),
            })?;
            let l = left.iter().position(|x| x == a).ok_or(Error::Parse {
                line: line_no,
                message: format!("unknown left vertex `{a}`"),
            })?;
            let r = right.iter().position(|x| x == b).ok_or(Error::Parse {
                line: line_no,
                message: format!("unknown right vertex `{b}`"),
            })?;
            edges.push((l, r));
        }
        BipartitePattern::new(left, right, edges)
    }
}

/// A small simple pattern graph: no loops, no parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePattern {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
}

impl SimplePattern {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for &(a, b) in &edges {
            if a >= vertices.len() || b >= vertices.len() {
                return Err(Error::Precondition(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(Error::Precondition(format!("loop at vertex {a}")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::Precondition(format!("duplicate edge ({a},{b})")));
            }
        }
        Ok(SimplePattern { vertices, edges })
    }

    /// Complete graph on `v` vertices, named `v0..`.
    pub fn complete(v: usize) -> Self {
        let vertices = (0..v).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for a in 0..v {
            for b in a + 1..v {
                edges.push((a, b));
            }
        }
        SimplePattern::new(vertices, edges).unwrap()
    }

    /// Path with `e` edges on `e + 1` vertices.
    pub fn path(e: usize) -> Self {
        let vertices = (0..=e).map(|i| format!("v{i}")).collect();
        let edges = (0..e).map(|i| (i, i + 1)).collect();
        SimplePattern::new(vertices, edges).unwrap()
    }

    /// Star with one center and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut vertices = vec!["c".to_string()];
        vertices.extend((0..leaves).map(|i| format!("l{i}")));
        let edges = (0..leaves).map(|i| (0, i + 1)).collect();
        SimplePattern::new(vertices, edges).unwrap()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn to_text(&self) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(a, b)| format!("{}-{}", self.vertices[a], self.vertices[b]))
            .collect();
        format!(
            "vertices: {}\nedges: {}\n",
            self.vertices.join(" "),
            edges.join(" ")
        )
    }

    /// Parse the `vertices:`/`edges:` format.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut vertices = None;
        let mut edge_tokens = None;
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or(Error::Parse {
                line: idx + 1,
                message: format!("expected `key: ...`, got `{line}`"),
            })?;
            let tokens: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            match key.trim() {
                "vertices" => vertices = Some(tokens),
                "edges" => edge_tokens = Some((idx + 1, tokens)),
                other => {
                    return Err(Error::Parse {
                        line: idx + 1,
                        message: format!("unknown section `{other}`"),
                    })
                }
            }
        }
        let vertices = vertices.ok_or(Error::Parse {
            line: 1,
            message: "missing `vertices:` section".into(),
        })?;
        let (line_no, tokens) = edge_tokens.ok_or(Error::Parse {
            line: 1,
            message: "missing `edges:` section".into(),
        })?;
        let mut edges = Vec::new();
        for tok in tokens {
            let (a, b) = tok.split_once('-').ok_or(Error::Parse {
                line: line_no,
                message: format!("edge `{tok}` is not `a-b`"),
            })?;
            let find = |name: &str| {
                vertices.iter().position(|x| x == name).ok_or(Error::Parse {
                    line: line_no,
                    message: format!("unknown vertex `{name}`"),
                })
            };
            edges.push((find(a)?, find(b)?));
        }
        SimplePattern::new(vertices, edges)
    }
}

/// Parse an injection written as `vertex=hex` tokens (whitespace separated),
/// returning targets in the order of `names`. Every name must occur exactly
/// once and the targets must be pairwise distinct.
pub fn parse_injection(text: &str, names: &[String]) -> Result<Vec<u64>> {
    let mut targets: Vec<Option<u64>> = vec![None; names.len()];
    for (idx, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            let (name, value) = tok.split_once('=').ok_or(Error::Parse {
                line: idx + 1,
                message: format!("token `{tok}` is not `vertex=hex`"),
            })?;
            let point = u64::from_str_radix(value.trim_start_matches("0x"), 16).map_err(|_| {
                Error::Parse {
                    line: idx + 1,
                    message: format!("bad hex point `{value}`"),
                }
            })?;
            let pos = names.iter().position(|x| x == name).ok_or(Error::Parse {
                line: idx + 1,
                message: format!("unknown vertex `{name}`"),
            })?;
            if targets[pos].replace(point).is_some() {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("vertex `{name}` assigned twice"),
                });
            }
        }
    }
    let targets: Vec<u64> = targets
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            t.ok_or(Error::Parse {
                line: 1,
                message: format!("vertex `{}` missing from the injection", names[i]),
            })
        })
        .collect::<Result<_>>()?;
    check_injective(&targets)?;
    Ok(targets)
}

pub fn check_injective(points: &[u64]) -> Result<()> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != points.len() {
        return Err(Error::Precondition("map is not injective".into()));
    }
    Ok(())
}

/// Largest pairwise Hamming distance of a point set.
pub fn diameter(points: &[u64]) -> u32 {
    let mut best = 0;
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            best = best.max(distance(a, b));
        }
    }
    best
}

// ---------------------------------------------------------------------
// Adjacency oracles
// ---------------------------------------------------------------------

/// Bipartite Cayley adjacency: `u ~ v` iff `f(u + v) = -1`.
pub fn bc_adjacent(f: &BooleanFunction, u: u64, v: u64) -> bool {
    f.evaluate(u ^ v) == -1
}

/// Number of common neighbors of `u` and `v` on one side of the bipartite
/// Cayley graph, by direct scan over the other side.
pub fn codegree(f: &BooleanFunction, u: u64, v: u64) -> u64 {
    (0..f.domain_size())
        .filter(|&c| f.is_negative(u ^ c) && f.is_negative(v ^ c))
        .count() as u64
}

/// Codegree in closed form: `(2^n - 2 W(0) + A(u + v)) / 4`.
/// Depends on `u, v` only through `u + v`.
pub fn codegree_from_tables(n: u32, walsh_zero: i64, autocorrelation_uv: i64) -> u64 {
    let total = (1i64 << n) - 2 * walsh_zero + autocorrelation_uv;
    debug_assert!(total >= 0 && total % 4 == 0);
    (total / 4) as u64
}

/// Rainbow Hamming adjacency: vertices `u != v` joined in color `x` iff
/// `f(u + x) = f(v + x)`.
pub fn rhg_edge(f: &BooleanFunction, u: u64, v: u64, x: u64) -> bool {
    assert!(u != v, "rainbow Hamming graph has no loops");
    f.evaluate(u ^ x) == f.evaluate(v ^ x)
}

// ---------------------------------------------------------------------
// Homomorphism counting with a fixed left map
// ---------------------------------------------------------------------

fn falling_factorial(base: u64, count: u32) -> u128 {
    (0..count as u64).map(|i| (base - i) as u128).product()
}

/// Normalized number of injective right maps completing `psi` to a bipartite
/// homomorphism into the Cayley graph of `f`: the expectation over injective
/// `phi` of the product of edge indicators.
///
/// `psi` gives the image of each left vertex, in order. Exact mode
/// enumerates all injections (refused above
/// [`INJECTION_ENUMERATION_LIMIT`]); Monte Carlo samples them uniformly by
/// rejection.
pub fn bhom_fixed_left(
    pattern: &BipartitePattern,
    psi: &[u64],
    f: &BooleanFunction,
    mode: CountingMode,
) -> Result<CountEstimate> {
    if psi.len() != pattern.left_names().len() {
        return Err(Error::Precondition(format!(
            "left map has {} targets for {} vertices",
            psi.len(),
            pattern.left_names().len()
        )));
    }
    check_injective(psi)?;
    let points = f.domain_size();
    if psi.iter().any(|&p| p >= points) {
        return Err(Error::Precondition("left map leaves the domain".into()));
    }
    let slots = pattern.right_names().len();
    if (slots as u64) > points {
        return Err(Error::Precondition("right part larger than the domain".into()));
    }
    // group edges by right vertex so the product can be pruned slot by slot
    let mut left_neighbors: Vec<Vec<u64>> = vec![Vec::new(); slots];
    for &(l, r) in pattern.edges() {
        left_neighbors[r].push(psi[l]);
    }

    match mode {
        CountingMode::Exact => {
            let total = falling_factorial(points, slots as u32);
            if total > INJECTION_ENUMERATION_LIMIT as u128 {
                return Err(Error::Budget {
                    operation: "injective homomorphism enumeration".into(),
                    estimated: total.min(u64::MAX as u128) as u64,
                    budget: INJECTION_ENUMERATION_LIMIT,
                });
            }
            let mut used = vec![u64::MAX; slots];
            let favorable = enumerate_bhom(f, &left_neighbors, &mut used, 0, points);
            Ok(CountEstimate::Exact(rat(favorable as i128, 1) / rat(total as i128, 1)))
        }
        CountingMode::MonteCarlo { samples, seed } => {
            if samples < 2 {
                return Err(Error::Precondition("need at least two samples".into()));
            }
            let mut acc = Accumulator::default();
            let mut assignment = vec![0u64; slots];
            for index in 0..samples {
                let mut rng = sample_rng(seed, index);
                sample_distinct(&mut rng, points, &mut assignment);
                let ok = left_neighbors.iter().zip(&assignment).all(|(ls, &target)| {
                    ls.iter().all(|&l| f.is_negative(l ^ target))
                });
                acc.push(if ok { 1.0 } else { 0.0 });
            }
            Ok(CountEstimate::Sampled(acc.finish(seed)))
        }
    }
}

fn enumerate_bhom(
    f: &BooleanFunction,
    left_neighbors: &[Vec<u64>],
    used: &mut [u64],
    slot: usize,
    points: u64,
) -> u64 {
    if slot == left_neighbors.len() {
        return 1;
    }
    let mut count = 0;
    'candidates: for target in 0..points {
        if used[..slot].contains(&target) {
            continue;
        }
        for &l in &left_neighbors[slot] {
            if !f.is_negative(l ^ target) {
                continue 'candidates;
            }
        }
        used[slot] = target;
        count += enumerate_bhom(f, left_neighbors, used, slot + 1, points);
    }
    count
}

fn sample_distinct(rng: &mut impl Rng, points: u64, out: &mut [u64]) {
    'outer: loop {
        for slot in 0..out.len() {
            out[slot] = rng.gen_range(0..points);
        }
        for i in 1..out.len() {
            if out[..i].contains(&out[i]) {
                continue 'outer;
            }
        }
        return;
    }
}

// ---------------------------------------------------------------------
// Rainbow embedding counting with a fixed vertex map
// ---------------------------------------------------------------------

/// Exact rainbow counts for a fixed vertex map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RainbowCounts {
    /// Injective colorings under which every edge lands on a matching-color
    /// edge: the rainbow embeddings.
    pub rainbow: u64,
    /// Total injective colorings, `(2^n)_(|E|)`.
    pub total: u64,
    /// Per-edge counts of individually valid colors. Their product counts
    /// colorings that match edge by edge but may repeat colors; it exceeds
    /// `rainbow` whenever two edges compete for a shared color.
    pub per_edge_valid: Vec<u64>,
}

impl RainbowCounts {
    pub fn density(&self) -> Rat {
        rat(self.rainbow as i128, self.total as i128)
    }

    /// Product of the per-edge counts: the repeat-allowed matching count.
    pub fn edge_product(&self) -> u64 {
        self.per_edge_valid.iter().product()
    }
}

fn validate_rainbow_map(
    pattern: &SimplePattern,
    phi: &[u64],
    f: &BooleanFunction,
    radius: u32,
) -> Result<()> {
    if phi.len() != pattern.vertex_names().len() {
        return Err(Error::Precondition(format!(
            "vertex map has {} targets for {} vertices",
            phi.len(),
            pattern.vertex_names().len()
        )));
    }
    check_injective(phi)?;
    if phi.iter().any(|&p| p >= f.domain_size()) {
        return Err(Error::Precondition("vertex map leaves the domain".into()));
    }
    if let Some(&far) = phi.iter().find(|&&p| p.count_ones() > radius) {
        return Err(Error::Precondition(format!(
            "vertex image {far:#x} outside the radius-{radius} ball at 0"
        )));
    }
    if diameter(phi) > radius {
        return Err(Error::Precondition(format!(
            "vertex image has diameter {} > {radius}",
            diameter(phi)
        )));
    }
    Ok(())
}

/// Exact rainbow-embedding counts for patterns with at most two edges.
pub fn rainbow_exact_counts(
    pattern: &SimplePattern,
    phi: &[u64],
    f: &BooleanFunction,
    radius: u32,
) -> Result<RainbowCounts> {
    validate_rainbow_map(pattern, phi, f, radius)?;
    let e = pattern.edges().len();
    if e > 2 {
        return Err(Error::Precondition(
            "exact rainbow enumeration covers at most two edges".into(),
        ));
    }
    let points = f.domain_size();
    let total = falling_factorial(points, e as u32);
    if total > INJECTION_ENUMERATION_LIMIT as u128 {
        return Err(Error::Budget {
            operation: "injective coloring enumeration".into(),
            estimated: total.min(u64::MAX as u128) as u64,
            budget: INJECTION_ENUMERATION_LIMIT,
        });
    }
    let ends: Vec<(u64, u64)> = pattern
        .edges()
        .iter()
        .map(|&(a, b)| (phi[a], phi[b]))
        .collect();
    let valid_color = |edge: usize, x: u64| rhg_edge(f, ends[edge].0, ends[edge].1, x);
    let per_edge_valid: Vec<u64> = (0..e)
        .map(|i| (0..points).filter(|&x| valid_color(i, x)).count() as u64)
        .collect();
    let rainbow = match e {
        0 => 1,
        1 => per_edge_valid[0],
        _ => {
            let mut count = 0u64;
            for c0 in 0..points {
                if !valid_color(0, c0) {
                    continue;
                }
                for c1 in 0..points {
                    if c1 != c0 && valid_color(1, c1) {
                        count += 1;
                    }
                }
            }
            count
        }
    };
    Ok(RainbowCounts {
        rainbow,
        total: total as u64,
        per_edge_valid,
    })
}

/// Normalized number of injective edge colorings turning `phi` into a
/// rainbow embedding of the pattern into the rainbow Hamming graph of
/// radius `radius`. Exact for at most two edges, Monte Carlo otherwise.
pub fn rainbow_embedding_density(
    pattern: &SimplePattern,
    phi: &[u64],
    f: &BooleanFunction,
    radius: u32,
    mode: CountingMode,
) -> Result<CountEstimate> {
    match mode {
        CountingMode::Exact => {
            let counts = rainbow_exact_counts(pattern, phi, f, radius)?;
            Ok(CountEstimate::Exact(counts.density()))
        }
        CountingMode::MonteCarlo { samples, seed } => {
            validate_rainbow_map(pattern, phi, f, radius)?;
            if samples < 2 {
                return Err(Error::Precondition("need at least two samples".into()));
            }
            let ends: Vec<(u64, u64)> = pattern
                .edges()
                .iter()
                .map(|&(a, b)| (phi[a], phi[b]))
                .collect();
            let points = f.domain_size();
            let mut acc = Accumulator::default();
            let mut colors = vec![0u64; ends.len()];
            for index in 0..samples {
                let mut rng = sample_rng(seed, index);
                sample_distinct(&mut rng, points, &mut colors);
                let ok = ends
                    .iter()
                    .zip(&colors)
                    .all(|(&(u, v), &x)| rhg_edge(f, u, v, x));
                acc.push(if ok { 1.0 } else { 0.0 });
            }
            Ok(CountEstimate::Sampled(acc.finish(seed)))
        }
    }
}

// ---------------------------------------------------------------------
// Subdivision and the subgraph expansion identity
// ---------------------------------------------------------------------

/// Replace every edge by a degree-2 right vertex: left part the original
/// vertices, right part one vertex per edge.
pub fn subdivision(pattern: &SimplePattern) -> BipartitePattern {
    let left = pattern.vertex_names().to_vec();
    let mut right = Vec::new();
    let mut edges = Vec::new();
    for (i, &(a, b)) in pattern.edges().iter().enumerate() {
        right.push(format!("{}-{}", left[a], left[b]));
        edges.push((a, i));
        edges.push((b, i));
    }
    BipartitePattern::new(left, right, edges).unwrap()
}

/// Sum over all subgraphs of the subdivision, grouped by the state of each
/// right vertex, of `x^(#degree-2) y^(#degree-1 via first endpoint)
/// z^(#degree-1 via second endpoint)`, by explicit enumeration of the
/// `4^|E|` state vectors. Equals `(1 + x + y + z)^|E|`.
pub fn subgraph_expansion_sum(
    pattern: &SimplePattern,
    x: f64,
    y: f64,
    z: f64,
    budget: Budget,
) -> Result<f64> {
    let e = pattern.edges().len() as u32;
    if e > 30 {
        return Err(Error::Precondition("too many edges to enumerate".into()));
    }
    budget.check("subgraph state enumeration", 4u64.saturating_pow(e))?;
    let weights = [1.0, x, y, z];
    let mut total = 0.0;
    for state in 0..(1u64 << (2 * e)) {
        let mut product = 1.0;
        for i in 0..e {
            product *= weights[((state >> (2 * i)) & 3) as usize];
        }
        total += product;
    }
    Ok(total)
}
