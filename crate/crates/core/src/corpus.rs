//! Seeded random instances for the oracle suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grpcat::{catalog, PermGroup};
use crate::monalg::{self, GradedModule, MonIdeal, WeightedRing};
use crate::series::SeriesExpr;
use crate::wmod::BaseModule;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub struct QuotientInstance {
    pub ring: WeightedRing,
    pub ideal: MonIdeal,
}

/// `k[x_1..x_n]/I` with `n <= 6`, at most 8 generators, weights `<= 3` and
/// exponents `<= 4`.
pub fn random_quotient(rng: &mut ChaCha8Rng) -> QuotientInstance {
    let n = rng.gen_range(1..=6);
    let p = *[2u32, 3, 5].choose(rng).expect("nonempty");
    let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let ngens = rng.gen_range(0..=8);
    let mut gens = Vec::with_capacity(ngens);
    for _ in 0..ngens {
        let mut g: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=4)).collect();
        if g.iter().all(|&e| e == 0) {
            g[rng.gen_range(0..n)] = rng.gen_range(1..=4);
        }
        gens.push(g);
    }
    let ring = WeightedRing::new(weights, p).expect("valid ring");
    let ideal = MonIdeal::new(n, gens).expect("valid ideal");
    QuotientInstance { ring, ideal }
}

pub fn quotient_corpus(seed: u64, count: usize) -> Vec<QuotientInstance> {
    let mut r = rng(seed);
    (0..count).map(|_| random_quotient(&mut r)).collect()
}

/// Numerator of degree `<= 6` with coefficients in `[-5, 5]` (nonzero), and
/// up to four denominator weights in `1..=3`.
pub fn random_series(rng: &mut ChaCha8Rng) -> SeriesExpr {
    loop {
        let len = rng.gen_range(1..=7);
        let num: Vec<i64> = (0..len).map(|_| rng.gen_range(-5..=5)).collect();
        let k = rng.gen_range(0..=4);
        let weights: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
        let s = SeriesExpr::from_i64(&num, &weights).expect("positive weights");
        if !s.is_zero() {
            return s;
        }
    }
}

/// Same shape as `random_series` with coefficients in `[0, 5]`.
pub fn random_nonnegative_series(rng: &mut ChaCha8Rng) -> SeriesExpr {
    loop {
        let len = rng.gen_range(1..=7);
        let num: Vec<i64> = (0..len).map(|_| rng.gen_range(0..=5)).collect();
        let k = rng.gen_range(0..=4);
        let weights: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
        let s = SeriesExpr::from_i64(&num, &weights).expect("positive weights");
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn series_corpus(seed: u64, count: usize) -> Vec<SeriesExpr> {
    let mut r = rng(seed);
    (0..count).map(|_| random_series(&mut r)).collect()
}

#[derive(Debug, Clone)]
pub struct WModInstance {
    pub group_name: &'static str,
    pub group: PermGroup,
    pub orbits: usize,
    pub p: u32,
    pub ring: WeightedRing,
    pub ideal: MonIdeal,
    pub base: BaseModule,
}

pub fn small_groups() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("Z/2", PermGroup::cyclic(2)),
        ("Z/3", PermGroup::cyclic(3)),
        ("S3", catalog::s3()),
        ("Z/2xZ/2", catalog::klein()),
    ]
}

/// Artinian monomial quotient in at most three variables with length `<= 20`.
pub fn random_artinian(rng: &mut ChaCha8Rng) -> (WeightedRing, MonIdeal, u64) {
    loop {
        let n = rng.gen_range(1..=3);
        let weights: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
        let mut gens: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut g = vec![0; n];
                g[i] = rng.gen_range(1..=5);
                g
            })
            .collect();
        for _ in 0..rng.gen_range(0..=3) {
            gens.push((0..n).map(|_| rng.gen_range(0..=3)).collect());
        }
        gens.retain(|g| g.iter().any(|&e| e > 0));
        let ring = WeightedRing::new(weights, 2).expect("valid ring");
        let ideal = MonIdeal::new(n, gens).expect("valid ideal");
        let len = monalg::module_length(&ring, &GradedModule::quotient(ideal.clone())).expect("Artinian by construction");
        if (1..=20).contains(&len) {
            return (ring, ideal, len);
        }
    }
}

pub fn random_wmod(rng: &mut ChaCha8Rng) -> WModInstance {
    let groups = small_groups();
    let (group_name, group) = groups[rng.gen_range(0..groups.len())].clone();
    let orbits = rng.gen_range(1..=4);
    let p = *[2u32, 3].choose(rng).expect("nonempty");
    let (ring, ideal, _) = random_artinian(rng);
    let base = BaseModule::from_artinian(&ring, &ideal).expect("Artinian by construction");
    WModInstance { group_name, group, orbits, p, ring, ideal, base }
}

pub fn wmod_corpus(seed: u64, count: usize) -> Vec<WModInstance> {
    let mut r = rng(seed);
    (0..count).map(|_| random_wmod(&mut r)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_are_reproducible() {
        let a = quotient_corpus(7, 20);
        let b = quotient_corpus(7, 20);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.ring, y.ring);
            assert_eq!(x.ideal, y.ideal);
        }
        assert_eq!(series_corpus(3, 10), series_corpus(3, 10));
    }

    #[test]
    fn corpus_respects_bounds() {
        for q in quotient_corpus(11, 100) {
            assert!(q.ring.nvars() <= 6);
            assert!(q.ring.weights().iter().all(|&w| (1..=3).contains(&w)));
            assert!(q.ideal.generators().len() <= 8);
            assert!(q.ideal.generators().iter().flatten().all(|&e| e <= 4));
        }
        for w in wmod_corpus(5, 30) {
            assert!(w.orbits <= 4);
            assert!(w.base.length().unwrap() <= 20);
        }
    }
}
