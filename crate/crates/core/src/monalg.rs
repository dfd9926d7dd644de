//! Weighted polynomial rings over `F_p` and their monomial quotients.
//!
//! A graded module here is a finite direct sum of shifted cyclic modules
//! `(R/I)(-s)` with `I` a monomial ideal. Hilbert series, Krull dimension,
//! minimal primes, lengths at minimal primes and the degree all reduce to
//! combinatorics of exponent vectors, and each of them has a brute-force
//! counterpart that the tests compare against.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::series::{SeriesError, SeriesExpr};
use crate::{poly, ratio_str};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("module is zero")]
    ZeroModule,
    #[error("{0} is not a minimal prime of the module")]
    NotMinimalPrime(String),
    #[error("localized quotient at {0} has infinite length")]
    Divergent(String),
    #[error("module has positive Krull dimension {0}")]
    NotArtinian(i64),
    #[error("capacity exceeded: {what} (bound {bound})")]
    CapacityExceeded { what: &'static str, bound: u64 },
    #[error("invalid ring: {0}")]
    BadRing(String),
    #[error("exponent vector has length {got}, ring has {expected} variables")]
    Arity { expected: usize, got: usize },
    #[error("invalid ring map: {0}")]
    BadMap(String),
    #[error("pole order {pole} disagrees with vertex-cover dimension {cover}")]
    DimensionMismatch { pole: i64, cover: i64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Bounds on the exhaustive computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Subset enumeration over variables is `2^max_vars`.
    pub max_vars: usize,
    /// Monomials visited by any single enumeration.
    pub max_monomials: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_vars: 12, max_monomials: 10_000_000 }
    }
}

/// Positively graded polynomial ring `F_p[x_0, ..., x_{n-1}]`, `deg x_i = weights[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedRing {
    names: Vec<String>,
    weights: Vec<u32>,
    p: u32,
}

impl WeightedRing {
    pub fn new(weights: Vec<u32>, p: u32) -> Result<Self, AlgebraError> {
        let names = (0..weights.len()).map(|i| format!("x{i}")).collect();
        Self::with_names(names, weights, p)
    }

    pub fn with_names(names: Vec<String>, weights: Vec<u32>, p: u32) -> Result<Self, AlgebraError> {
        if names.len() != weights.len() {
            return Err(AlgebraError::BadRing(format!(
                "{} names for {} weights",
                names.len(),
                weights.len()
            )));
        }
        if weights.contains(&0) {
            return Err(AlgebraError::BadRing("weights must be positive".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(AlgebraError::BadRing(format!("duplicate variable {a}")));
            }
        }
        Ok(WeightedRing { names, weights, p })
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn degree_of(&self, exps: &[u32]) -> u64 {
        exps.iter().zip(&self.weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    fn check_arity(&self, exps: &[u32]) -> Result<(), AlgebraError> {
        if exps.len() != self.nvars() {
            return Err(AlgebraError::Arity { expected: self.nvars(), got: exps.len() });
        }
        Ok(())
    }

    /// Renders an exponent vector as `x*y^2`, or `1`.
    pub fn format_monomial(&self, exps: &[u32]) -> String {
        let parts: Vec<String> = exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { self.names[i].clone() } else { format!("{}^{e}", self.names[i]) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn format_prime(&self, q: &MonPrime) -> String {
        if q.vars.is_empty() {
            return "(0)".into();
        }
        let names: Vec<&str> = q.vars.iter().map(|&i| self.names[i].as_str()).collect();
        format!("({})", names.join(", "))
    }
}

/// Monomial ideal, stored by its minimal generators in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonIdeal {
    nvars: usize,
    gens: Vec<Vec<u32>>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn minimalize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by_key(|g| g.iter().map(|&e| e as u64).sum::<u64>());
    let mut kept: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| divides(k, &g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

fn support_mask(g: &[u32]) -> u64 {
    g.iter().enumerate().filter(|(_, &e)| e > 0).fold(0, |m, (i, _)| m | (1 << i))
}

impl MonIdeal {
    pub fn new(nvars: usize, gens: Vec<Vec<u32>>) -> Result<Self, AlgebraError> {
        if let Some(g) = gens.iter().find(|g| g.len() != nvars) {
            return Err(AlgebraError::Arity { expected: nvars, got: g.len() });
        }
        Ok(MonIdeal { nvars, gens: minimalize(gens) })
    }

    pub fn zero(nvars: usize) -> Self {
        MonIdeal { nvars, gens: Vec::new() }
    }

    pub fn unit(nvars: usize) -> Self {
        MonIdeal { nvars, gens: vec![vec![0; nvars]] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&e| e == 0))
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, m))
    }

    /// `I + (x_v)`
    pub fn add_var(&self, v: usize) -> MonIdeal {
        let mut gens: Vec<Vec<u32>> = self.gens.iter().filter(|g| g[v] == 0).cloned().collect();
        let mut x = vec![0; self.nvars];
        x[v] = 1;
        gens.push(x);
        MonIdeal { nvars: self.nvars, gens: minimalize(gens) }
    }

    /// `I : x_v`
    pub fn colon_var(&self, v: usize) -> MonIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut h = g.clone();
                h[v] = h[v].saturating_sub(1);
                h
            })
            .collect();
        MonIdeal { nvars: self.nvars, gens: minimalize(gens) }
    }

    /// Intersection, generated by pairwise lcms.
    pub fn intersect(&self, other: &MonIdeal) -> MonIdeal {
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect());
            }
        }
        MonIdeal { nvars: self.nvars, gens: minimalize(gens) }
    }

    /// Sets every variable outside `keep` to 1.
    fn localize(&self, keep: u64) -> MonIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| g.iter().enumerate().map(|(i, &e)| if keep >> i & 1 == 1 { e } else { 0 }).collect())
            .collect();
        MonIdeal { nvars: self.nvars, gens: minimalize(gens) }
    }

    fn supports(&self) -> Vec<u64> {
        self.gens.iter().map(|g| support_mask(g)).collect()
    }
}

/// Prime generated by a set of variables; the empty set is the zero ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonPrime {
    vars: Vec<usize>,
}

impl MonPrime {
    pub fn new(mut vars: Vec<usize>) -> Self {
        vars.sort_unstable();
        vars.dedup();
        MonPrime { vars }
    }

    pub fn zero() -> Self {
        MonPrime { vars: Vec::new() }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    fn mask(&self) -> u64 {
        self.vars.iter().fold(0, |m, &i| m | (1 << i))
    }

    fn from_mask(mask: u64, n: usize) -> Self {
        MonPrime { vars: (0..n).filter(|i| mask >> i & 1 == 1).collect() }
    }
}

impl fmt::Display for MonPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.vars.is_empty() {
            return write!(f, "(0)");
        }
        let names: Vec<String> = self.vars.iter().map(|i| format!("x{i}")).collect();
        write!(f, "({})", names.join(", "))
    }
}

/// `⊕ (R/I_i)(-s_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedModule {
    summands: Vec<(u32, MonIdeal)>,
}

impl GradedModule {
    pub fn new(summands: Vec<(u32, MonIdeal)>) -> Self {
        GradedModule { summands }
    }

    /// The cyclic module `R/I`.
    pub fn quotient(ideal: MonIdeal) -> Self {
        GradedModule { summands: vec![(0, ideal)] }
    }

    pub fn summands(&self) -> &[(u32, MonIdeal)] {
        &self.summands
    }

    pub fn direct_sum(&self, other: &GradedModule) -> GradedModule {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        GradedModule { summands }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.iter().all(|(_, i)| i.is_unit())
    }

    /// `Ann_R(M) = ∩ I_i`.
    pub fn annihilator(&self, nvars: usize) -> MonIdeal {
        self.summands
            .iter()
            .fold(MonIdeal::unit(nvars), |acc, (_, i)| acc.intersect(i))
    }

    fn check(&self, ring: &WeightedRing) -> Result<(), AlgebraError> {
        for (_, i) in &self.summands {
            if i.nvars != ring.nvars() {
                return Err(AlgebraError::Arity { expected: ring.nvars(), got: i.nvars });
            }
        }
        Ok(())
    }
}

/// Graded ring map sending each source variable to a monomial of the target
/// (or to zero, written `None`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonRingMap {
    source: WeightedRing,
    target: WeightedRing,
    images: Vec<Option<Vec<u32>>>,
}

impl MonRingMap {
    pub fn new(
        source: WeightedRing,
        target: WeightedRing,
        images: Vec<Option<Vec<u32>>>,
    ) -> Result<Self, AlgebraError> {
        if images.len() != source.nvars() {
            return Err(AlgebraError::BadMap(format!(
                "{} images for {} source variables",
                images.len(),
                source.nvars()
            )));
        }
        for (u, img) in images.iter().enumerate() {
            if let Some(m) = img {
                target.check_arity(m)?;
                let d = target.degree_of(m);
                if d != source.weights[u] as u64 {
                    return Err(AlgebraError::BadMap(format!(
                        "{} has weight {} but its image has degree {d}",
                        source.names[u], source.weights[u]
                    )));
                }
            }
        }
        Ok(MonRingMap { source, target, images })
    }

    pub fn identity(ring: &WeightedRing) -> Self {
        let images = (0..ring.nvars())
            .map(|i| {
                let mut e = vec![0; ring.nvars()];
                e[i] = 1;
                Some(e)
            })
            .collect();
        MonRingMap { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &WeightedRing {
        &self.source
    }

    pub fn target(&self) -> &WeightedRing {
        &self.target
    }

    pub fn images(&self) -> &[Option<Vec<u32>>] {
        &self.images
    }
}

/// Numerator of the Hilbert series of `R/I` over `∏ (1 - t^{w_i})`.
///
/// Pivots on the variable occurring in the most generator supports:
/// `N(I) = N(I + (x)) + t^{deg x} N(I : x)`. Terminates in the base case of
/// pairwise coprime generators, where `N = ∏ (1 - t^{deg g})`.
fn hilbert_numerator(
    ring: &WeightedRing,
    ideal: &MonIdeal,
    memo: &mut HashMap<Vec<Vec<u32>>, Vec<BigInt>>,
) -> Vec<BigInt> {
    if let Some(n) = memo.get(&ideal.gens) {
        return n.clone();
    }
    if ideal.is_unit() {
        return Vec::new();
    }
    let supports = ideal.supports();
    let mut counts = vec![0usize; ring.nvars()];
    for s in &supports {
        for (i, c) in counts.iter_mut().enumerate() {
            if s >> i & 1 == 1 {
                *c += 1;
            }
        }
    }
    let (pivot, &most) = counts
        .iter()
        .enumerate()
        .max_by_key(|&(i, c)| (c, std::cmp::Reverse(i)))
        .unwrap_or((0, &0));
    let result = if most <= 1 {
        let degrees: Vec<u32> = ideal.gens.iter().map(|g| ring.degree_of(g) as u32).collect();
        poly::one_minus_t_product(&degrees)
    } else {
        let with_pivot = hilbert_numerator(ring, &ideal.add_var(pivot), memo);
        let colon = hilbert_numerator(ring, &ideal.colon_var(pivot), memo);
        let mut shifted = vec![BigInt::zero(); ring.weights[pivot] as usize];
        shifted.extend(colon);
        poly::add(&with_pivot, &shifted)
    };
    memo.insert(ideal.gens.clone(), result.clone());
    result
}

/// Hilbert series of `R/I` with the ring's weights as denominator.
pub fn hilbert_series(ring: &WeightedRing, ideal: &MonIdeal) -> SeriesExpr {
    let mut memo = HashMap::new();
    let num = hilbert_numerator(ring, ideal, &mut memo);
    SeriesExpr::new(num, ring.weights.clone()).expect("ring weights are positive")
}

/// Counts standard monomials of each weighted degree `0..=d` by enumerating
/// every monomial of degree at most `d`.
pub fn hilbert_brute(ring: &WeightedRing, ideal: &MonIdeal, d: u64) -> Result<Vec<u64>, AlgebraError> {
    hilbert_brute_with(ring, ideal, d, &Limits::default())
}

pub fn hilbert_brute_with(
    ring: &WeightedRing,
    ideal: &MonIdeal,
    d: u64,
    limits: &Limits,
) -> Result<Vec<u64>, AlgebraError> {
    let mut counts = vec![0u64; d as usize + 1];
    let mut exps = vec![0u32; ring.nvars()];
    let mut visited = 0u64;
    fn walk(
        ring: &WeightedRing,
        ideal: &MonIdeal,
        var: usize,
        deg: u64,
        d: u64,
        exps: &mut Vec<u32>,
        counts: &mut [u64],
        visited: &mut u64,
        limits: &Limits,
    ) -> Result<(), AlgebraError> {
        if var == ring.nvars() {
            *visited += 1;
            if *visited > limits.max_monomials {
                return Err(AlgebraError::CapacityExceeded {
                    what: "brute-force monomial enumeration",
                    bound: limits.max_monomials,
                });
            }
            if !ideal.contains(exps) {
                counts[deg as usize] += 1;
            }
            return Ok(());
        }
        let w = ring.weights[var] as u64;
        let mut e = 0;
        while deg + e as u64 * w <= d {
            exps[var] = e;
            walk(ring, ideal, var + 1, deg + e as u64 * w, d, exps, counts, visited, limits)?;
            e += 1;
        }
        exps[var] = 0;
        Ok(())
    }
    walk(ring, ideal, 0, 0, d, &mut exps, &mut counts, &mut visited, limits)?;
    Ok(counts)
}

/// Poincaré series of a graded module: `Σ t^{s_i} HS(R/I_i)`.
pub fn module_series(ring: &WeightedRing, module: &GradedModule) -> SeriesExpr {
    module
        .summands
        .iter()
        .fold(SeriesExpr::zero(), |acc, (s, i)| acc.add(&hilbert_series(ring, i).shift(*s)))
}

fn all_covers(n: usize, supports: &[u64]) -> impl Iterator<Item = u64> + '_ {
    (0u64..(1 << n)).filter(move |s| supports.iter().all(|g| g & s != 0))
}

/// `n - τ(I)` where `τ` is the minimum vertex cover of the generator supports,
/// maximized over the nonzero summands.
pub fn cover_dimension(ring: &WeightedRing, module: &GradedModule) -> Result<i64, AlgebraError> {
    cover_dimension_with(ring, module, &Limits::default())
}

fn cover_dimension_with(
    ring: &WeightedRing,
    module: &GradedModule,
    limits: &Limits,
) -> Result<i64, AlgebraError> {
    let n = ring.nvars();
    if n > limits.max_vars {
        return Err(AlgebraError::CapacityExceeded { what: "variables", bound: limits.max_vars as u64 });
    }
    let mut best: Option<i64> = None;
    for (_, ideal) in &module.summands {
        if ideal.is_unit() {
            continue;
        }
        let supports = ideal.supports();
        let cover = all_covers(n, &supports).map(|s| s.count_ones()).min().expect("full set covers");
        let dim = n as i64 - cover as i64;
        best = Some(best.map_or(dim, |b| b.max(dim)));
    }
    best.ok_or(AlgebraError::ZeroModule)
}

/// Krull dimension as the pole order of the Poincaré series, cross-checked
/// against the vertex-cover count.
pub fn krull_dim(ring: &WeightedRing, module: &GradedModule) -> Result<i64, AlgebraError> {
    module.check(ring)?;
    if module.is_zero() {
        return Err(AlgebraError::ZeroModule);
    }
    let pole = module_series(ring, module).pole_order()?;
    let cover = cover_dimension(ring, module)?;
    if pole != cover {
        return Err(AlgebraError::DimensionMismatch { pole, cover });
    }
    Ok(pole)
}

/// Minimal primes over the annihilator, i.e. the minimal vertex covers of
/// its generator supports, sorted lexicographically.
pub fn minimal_primes(ring: &WeightedRing, module: &GradedModule) -> Result<Vec<MonPrime>, AlgebraError> {
    module.check(ring)?;
    if module.is_zero() {
        return Err(AlgebraError::ZeroModule);
    }
    let n = ring.nvars();
    if n > Limits::default().max_vars {
        return Err(AlgebraError::CapacityExceeded { what: "variables", bound: Limits::default().max_vars as u64 });
    }
    let ann = module.annihilator(n);
    let supports = ann.supports();
    let covers: Vec<u64> = all_covers(n, &supports).collect();
    let is_cover = |s: u64| supports.iter().all(|g| g & s != 0);
    let mut primes: Vec<MonPrime> = covers
        .into_iter()
        .filter(|&s| (0..n).filter(|i| s >> i & 1 == 1).all(|i| !is_cover(s & !(1 << i))))
        .map(|s| MonPrime::from_mask(s, n))
        .collect();
    primes.sort();
    Ok(primes)
}

/// Standard monomials of an ideal inside the variables of `box_vars`,
/// assuming every such variable has a pure power among the generators.
fn count_in_box(ideal: &MonIdeal, box_vars: &[usize], limits: &Limits) -> Result<Option<u64>, AlgebraError> {
    let mut bounds = Vec::with_capacity(box_vars.len());
    for &v in box_vars {
        let pure = ideal
            .gens
            .iter()
            .filter(|g| g.iter().enumerate().all(|(i, &e)| i == v || e == 0))
            .map(|g| g[v])
            .min();
        match pure {
            Some(a) => bounds.push(a),
            None => return Ok(None),
        }
    }
    let size: u64 = bounds.iter().map(|&b| b as u64).product();
    if size > limits.max_monomials {
        return Err(AlgebraError::CapacityExceeded { what: "length enumeration", bound: limits.max_monomials });
    }
    let mut exps = vec![0u32; ideal.nvars];
    let mut count = 0u64;
    let mut idx = vec![0u32; box_vars.len()];
    loop {
        for (k, &v) in box_vars.iter().enumerate() {
            exps[v] = idx[k];
        }
        if !ideal.contains(&exps) {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(Some(count));
            }
            idx[k] += 1;
            if idx[k] < bounds[k] {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Graded length of `M` localized at the minimal prime `q`: invert every
/// variable outside `q` and count the standard monomials left in `q`'s
/// variables, summand by summand.
pub fn local_length(ring: &WeightedRing, module: &GradedModule, q: &MonPrime) -> Result<u64, AlgebraError> {
    let primes = minimal_primes(ring, module)?;
    if !primes.contains(q) {
        return Err(AlgebraError::NotMinimalPrime(ring.format_prime(q)));
    }
    let limits = Limits::default();
    let mut total = 0;
    for (_, ideal) in &module.summands {
        let local = ideal.localize(q.mask());
        if local.is_unit() {
            continue;
        }
        match count_in_box(&local, &q.vars, &limits)? {
            Some(c) => total += c,
            None => return Err(AlgebraError::Divergent(ring.format_prime(q))),
        }
    }
    Ok(total)
}

/// Length of an Artinian module: its number of standard monomials.
pub fn module_length(ring: &WeightedRing, module: &GradedModule) -> Result<u64, AlgebraError> {
    module.check(ring)?;
    if module.is_zero() {
        return Ok(0);
    }
    let dim = krull_dim(ring, module)?;
    if dim > 0 {
        return Err(AlgebraError::NotArtinian(dim));
    }
    let all: Vec<usize> = (0..ring.nvars()).collect();
    let limits = Limits::default();
    let mut total = 0;
    for (_, ideal) in &module.summands {
        if ideal.is_unit() {
            continue;
        }
        total += count_in_box(ideal, &all, &limits)?.ok_or(AlgebraError::NotArtinian(dim))?;
    }
    Ok(total)
}

pub fn degree_of(ring: &WeightedRing, module: &GradedModule) -> Result<BigRational, AlgebraError> {
    module.check(ring)?;
    if module.is_zero() {
        return Err(AlgebraError::ZeroModule);
    }
    Ok(module_series(ring, module).degree_at_one()?)
}

/// `deg(R/q) = ∏_{j ∉ q} 1/w_j`.
pub fn prime_degree(ring: &WeightedRing, q: &MonPrime) -> BigRational {
    let mask = q.mask();
    let denom: BigInt = (0..ring.nvars())
        .filter(|i| mask >> i & 1 == 0)
        .map(|i| BigInt::from(ring.weights[i]))
        .product();
    BigRational::new(BigInt::one(), denom)
}

/// Minimal primes `q` with `dim R/q = dim M`.
pub fn dmax_primes(ring: &WeightedRing, module: &GradedModule) -> Result<Vec<MonPrime>, AlgebraError> {
    let dim = krull_dim(ring, module)?;
    Ok(minimal_primes(ring, module)?
        .into_iter()
        .filter(|q| (ring.nvars() - q.vars.len()) as i64 == dim)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditivityTerm {
    pub prime: MonPrime,
    pub prime_name: String,
    pub length: u64,
    #[serde(with = "ratio_str")]
    pub prime_degree: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditivityReport {
    #[serde(with = "ratio_str")]
    pub lhs: BigRational,
    pub terms: Vec<AdditivityTerm>,
    #[serde(with = "ratio_str")]
    pub rhs: BigRational,
    pub equal: bool,
}

/// Both sides of `deg M = Σ_{q ∈ D(M)} ℓ(M_q) · deg(R/q)`.
pub fn additivity_report(ring: &WeightedRing, module: &GradedModule) -> Result<AdditivityReport, AlgebraError> {
    let lhs = degree_of(ring, module)?;
    let mut terms = Vec::new();
    let mut rhs = BigRational::zero();
    for q in dmax_primes(ring, module)? {
        let length = local_length(ring, module, &q)?;
        let pd = prime_degree(ring, &q);
        rhs += &pd * BigRational::from_integer(length.into());
        terms.push(AdditivityTerm { prime_name: ring.format_prime(&q), prime: q, length, prime_degree: pd });
    }
    let equal = lhs == rhs;
    Ok(AdditivityReport { lhs, terms, rhs, equal })
}

/// Contraction `f^{-1}(q)`: the source variables whose image lies in `q`.
pub fn pullback_prime(f: &MonRingMap, q: &MonPrime) -> MonPrime {
    let mask = q.mask();
    let vars = f
        .images
        .iter()
        .enumerate()
        .filter(|(_, img)| match img {
            None => true,
            Some(m) => support_mask(m) & mask != 0,
        })
        .map(|(u, _)| u)
        .collect();
    MonPrime { vars }
}
