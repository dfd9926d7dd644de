//! Stand-ins for cohomology rings: closed forms for elementary abelian
//! groups, monomial presentations, and raw series with a declared dimension.
//!
//! `invariant_truncation` recomputes the low degrees of `(H*_A)^W` directly
//! from matrices and is used to check series that are typed in by hand.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::fp;
use crate::grpcat::is_prime;
use crate::monalg::{self, MonIdeal, WeightedRing};
use crate::series::{SeriesError, SeriesExpr};

pub const DEFAULT_ACTION_BOUND: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CohError {
    #[error("matrix group exceeds {bound} elements")]
    GroupTooLarge { bound: usize },
    #[error("generator {0} is not an invertible {1}x{1} matrix mod p")]
    BadMatrix(usize, u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("declared dimension {declared} but the series has pole order {computed}")]
    DeclaredDimMismatch { declared: i64, computed: i64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `W` acting on `H*_A`, `A = (Z/p)^r`, through `r x r` matrices over `F_p`.
/// Column `i` of a matrix is the image of the `i`-th degree-one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearWAction {
    rank: u32,
    p: u32,
    gens: Vec<Vec<Vec<u64>>>,
}

impl LinearWAction {
    pub fn new(rank: u32, p: u32, gens: &[Vec<Vec<i64>>]) -> Result<Self, CohError> {
        if !is_prime(p) {
            return Err(CohError::NotPrime(p));
        }
        let r = rank as usize;
        let mut reduced = Vec::with_capacity(gens.len());
        for (k, g) in gens.iter().enumerate() {
            if g.len() != r || g.iter().any(|row| row.len() != r) {
                return Err(CohError::BadMatrix(k, rank));
            }
            let m: Vec<Vec<u64>> = g.iter().map(|row| row.iter().map(|&x| fp::reduce(x, p)).collect()).collect();
            if fp::rank(m.clone(), p) != r {
                return Err(CohError::BadMatrix(k, rank));
            }
            reduced.push(m);
        }
        Ok(LinearWAction { rank, p, gens: reduced })
    }

    pub fn trivial(rank: u32, p: u32) -> Self {
        LinearWAction { rank, p, gens: Vec::new() }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn generators(&self) -> &[Vec<Vec<u64>>] {
        &self.gens
    }

    /// Order of the matrix group generated, or `GroupTooLarge` past `bound`.
    pub fn group_order(&self, bound: usize) -> Result<usize, CohError> {
        let id = fp::identity(self.rank as usize);
        let mut seen: HashSet<Vec<Vec<u64>>> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(m) = frontier.pop() {
            for g in &self.gens {
                let next = fp::mat_mul(g, &m, self.p);
                if seen.insert(next.clone()) {
                    if seen.len() > bound {
                        return Err(CohError::GroupTooLarge { bound });
                    }
                    frontier.push(next);
                }
            }
        }
        Ok(seen.len())
    }
}

/// How a model's series is checked when it appears in a fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GateStatus {
    /// Closed form or computed from a presentation.
    Derived,
    /// Stored series agrees with the invariant truncation up to `max_degree`.
    Verified { max_degree: usize },
    /// First degree where the stored series and the truncation differ.
    Failed { degree: usize, stored: String, computed: u64 },
    /// No action supplied; the series is taken on trust.
    Unverified,
}

/// Action data attached to a series model. `p` may be left to the fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionSpec {
    pub gens: Vec<Vec<Vec<i64>>>,
    pub p: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CohModel {
    ElementaryAbelian {
        rank: u32,
        p: u32,
    },
    Presented {
        ring: WeightedRing,
        ideal: MonIdeal,
    },
    SeriesOnly {
        series: SeriesExpr,
        declared_dim: i64,
        note: String,
        action: Option<ActionSpec>,
    },
}

impl CohModel {
    /// Checks the declared dimension of a series model against its pole order.
    pub fn series_only(
        series: SeriesExpr,
        declared_dim: i64,
        note: String,
        action: Option<ActionSpec>,
    ) -> Result<Self, CohError> {
        let computed = series.pole_order()?;
        if computed != declared_dim {
            return Err(CohError::DeclaredDimMismatch { declared: declared_dim, computed });
        }
        Ok(CohModel::SeriesOnly { series, declared_dim, note, action })
    }

    /// Cohomology of the trivial group: the ground field in degree 0.
    pub fn trivial() -> Self {
        CohModel::ElementaryAbelian { rank: 0, p: 2 }
    }

    pub fn gate(&self, fixture_p: u32, max_degree: usize) -> Result<GateStatus, CohError> {
        let CohModel::SeriesOnly { series, action, .. } = self else {
            return Ok(GateStatus::Derived);
        };
        let Some(spec) = action else {
            return Ok(GateStatus::Unverified);
        };
        let p = spec.p.unwrap_or(fixture_p);
        let rank = spec.gens.first().map_or(0, |g| g.len()) as u32;
        let a = LinearWAction::new(rank, p, &spec.gens)?;
        let computed = invariant_truncation(&a, max_degree)?;
        let stored = series.expand(max_degree);
        for (d, (s, c)) in stored.iter().zip(&computed).enumerate() {
            if *s != BigInt::from(*c) {
                return Ok(GateStatus::Failed { degree: d, stored: s.to_string(), computed: *c });
            }
        }
        Ok(GateStatus::Verified { max_degree })
    }
}

pub fn model_series(m: &CohModel) -> SeriesExpr {
    match m {
        CohModel::ElementaryAbelian { rank, p } => {
            let r = *rank as usize;
            if *p == 2 {
                SeriesExpr::from_i64(&[1], &vec![1; r]).expect("weights positive")
            } else {
                // (1 + t)^r over (1 - t^2)^r
                let mut num = vec![BigInt::from(1)];
                for _ in 0..r {
                    let mut next = vec![BigInt::from(0); num.len() + 1];
                    for (i, c) in num.iter().enumerate() {
                        next[i] += c;
                        next[i + 1] += c;
                    }
                    num = next;
                }
                SeriesExpr::new(num, vec![2; r]).expect("weights positive")
            }
        }
        CohModel::Presented { ring, ideal } => monalg::hilbert_series(ring, ideal),
        CohModel::SeriesOnly { series, .. } => series.clone(),
    }
}

pub fn model_degree(m: &CohModel) -> Result<BigRational, CohError> {
    Ok(model_series(m).degree_at_one()?)
}

pub fn model_dim(m: &CohModel) -> Result<i64, CohError> {
    Ok(model_series(m).pole_order()?)
}

/// Graded basis element: exterior generators `x_i` for `i` in `mask`
/// (always empty for `p = 2`), times a monomial in the polynomial
/// generators.
type Basis = (u32, Vec<u32>);
type Element = HashMap<Basis, u64>;

/// `dim_{F_p}` of the `W`-fixed part of `H*_A` in degrees `0..=max_degree`.
///
/// For `p = 2` the ring is `F_2[x_1..x_r]` with `deg x_i = 1`; for odd `p`
/// it is `Λ(x_1..x_r) ⊗ F_p[y_1..y_r]` with `deg x_i = 1`, `deg y_i = 2`,
/// and each matrix acts on the `x`'s and the `y`'s alike. Each degree is a
/// kernel computation on an explicit monomial basis.
pub fn invariant_truncation(a: &LinearWAction, max_degree: usize) -> Result<Vec<u64>, CohError> {
    a.group_order(DEFAULT_ACTION_BOUND)?;
    let r = a.rank as usize;
    let exterior = a.p != 2;
    let poly_weight = if exterior { 2 } else { 1 };
    let mut out = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let basis = degree_basis(r, exterior, poly_weight, d);
        let index: HashMap<&Basis, usize> = basis.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let n = basis.len();
        if n == 0 {
            out.push(0);
            continue;
        }
        let mut mats = Vec::with_capacity(a.gens.len());
        for g in &a.gens {
            let mut m = vec![vec![0u64; n]; n];
            for (col, b) in basis.iter().enumerate() {
                for (key, c) in image(g, b, a.p) {
                    m[index[&key]][col] = c;
                }
            }
            mats.push(m);
        }
        out.push(fp::common_fixed_dim(&mats, n, a.p) as u64);
    }
    Ok(out)
}

fn degree_basis(r: usize, exterior: bool, poly_weight: usize, d: usize) -> Vec<Basis> {
    let masks: Vec<u32> = if exterior { (0..1u32 << r).collect() } else { vec![0] };
    let mut out = Vec::new();
    for mask in masks {
        let used = mask.count_ones() as usize;
        if used > d || !(d - used).is_multiple_of(poly_weight) {
            continue;
        }
        for e in compositions((d - used) / poly_weight, r) {
            out.push((mask, e));
        }
    }
    out.sort();
    out
}

fn compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

fn image(g: &[Vec<u64>], b: &Basis, p: u32) -> Element {
    let pp = p as u64;
    let r = g.len();
    let mut acc: Element = HashMap::from([((0u32, vec![0u32; r]), 1u64)]);
    // exterior factors in increasing index order
    for i in 0..r {
        if b.0 & (1 << i) == 0 {
            continue;
        }
        let mut next: Element = HashMap::new();
        for ((mask, e), c) in &acc {
            for j in 0..r {
                let gji = g[j][i];
                if gji == 0 || mask & (1 << j) != 0 {
                    continue;
                }
                let above = (mask >> (j + 1)).count_ones();
                let coeff = c * gji % pp;
                let coeff = if above % 2 == 1 { (pp - coeff) % pp } else { coeff };
                let slot = next.entry((mask | (1 << j), e.clone())).or_insert(0);
                *slot = (*slot + coeff) % pp;
            }
        }
        next.retain(|_, c| *c != 0);
        acc = next;
    }
    for i in 0..r {
        for _ in 0..b.1[i] {
            let mut next: Element = HashMap::new();
            for ((mask, e), c) in &acc {
                for j in 0..r {
                    let gji = g[j][i];
                    if gji == 0 {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[j] += 1;
                    let slot = next.entry((*mask, e2)).or_insert(0);
                    *slot = (*slot + c * gji) % pp;
                }
            }
            next.retain(|_, c| *c != 0);
            acc = next;
        }
    }
    acc
}
