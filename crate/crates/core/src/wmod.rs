//! Graded modules `P = ⊕_{c ∈ π₀} P_c` on which a finite group `W` permutes
//! the summands freely.
//!
//! Each summand is a copy of one base module `B` (dimension vector plus
//! length) and `w ∈ W` carries `P_c` to `P_{w·c}` by the identity of `B`.
//! Freeness over `k[W]` is certified by translating a basis of the orbit
//! representatives around each orbit. Invariants are computed degreewise by
//! solving `(w - 1) x = 0` over `F_p`.

use serde::Serialize;

use crate::fp;
use crate::grpcat::{GSet, GroupError, Perm, PermGroup};
use crate::monalg::{self, AlgebraError, GradedModule, MonIdeal, WeightedRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WModError {
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("base module is not Artinian")]
    NotArtinian,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Graded dimensions of the base summand, with its length when finite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseModule {
    dims: Vec<u64>,
    length: Option<u64>,
}

impl BaseModule {
    /// A finite graded vector space whose composition factors are lines.
    pub fn from_dims(dims: Vec<u64>) -> Self {
        let length = Some(dims.iter().sum());
        BaseModule { dims, length }
    }

    /// Only the first degrees of an infinite-length module.
    pub fn truncated(dims: Vec<u64>) -> Self {
        BaseModule { dims, length: None }
    }

    /// `R/I` for an Artinian monomial quotient. The length comes from
    /// `module_length`, the dimensions from the Hilbert series.
    pub fn from_artinian(ring: &WeightedRing, ideal: &MonIdeal) -> Result<Self, WModError> {
        let module = GradedModule::quotient(ideal.clone());
        let length = monalg::module_length(ring, &module).map_err(|e| match e {
            AlgebraError::NotArtinian(_) => WModError::NotArtinian,
            other => WModError::Algebra(other),
        })?;
        let hs = monalg::hilbert_series(ring, ideal).normalize();
        let mut dims: Vec<u64> = hs
            .numerator()
            .iter()
            .map(|c| u64::try_from(c.clone()).expect("Artinian Hilbert series has nonnegative coefficients"))
            .collect();
        while dims.last() == Some(&0) {
            dims.pop();
        }
        Ok(BaseModule { dims, length: Some(length) })
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn length(&self) -> Option<u64> {
        self.length
    }

    pub fn dim(&self, d: usize) -> u64 {
        self.dims.get(d).copied().unwrap_or(0)
    }
}

/// `P = ⊕_{c} P_c` with `W` acting freely on the component set.
#[derive(Debug, Clone)]
pub struct InducedModule {
    w: PermGroup,
    components: GSet,
    base: BaseModule,
    p: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthIdentity {
    pub l_p: u64,
    pub l_pw: u64,
    pub w_order: u64,
    pub ok: bool,
}

impl InducedModule {
    /// Components permuted by `component_action[k]` for the `k`-th generator
    /// of `w`; rejects non-actions and non-free actions.
    pub fn new(
        w: PermGroup,
        ncomponents: usize,
        component_action: &[Perm],
        base: BaseModule,
        p: u32,
    ) -> Result<Self, WModError> {
        let components = GSet::from_generator_action(&w, ncomponents, component_action)?;
        if !components.is_free(&w) {
            return Err(WModError::Group(GroupError::NotFree));
        }
        Ok(InducedModule { w, components, base, p })
    }

    /// `t` orbits, each a copy of `W` acting on itself by left translation.
    pub fn regular(w: PermGroup, t: usize, base: BaseModule, p: u32) -> Self {
        let components = GSet::free(&w, t);
        InducedModule { w, components, base, p }
    }

    pub fn group(&self) -> &PermGroup {
        &self.w
    }

    pub fn base(&self) -> &BaseModule {
        &self.base
    }

    pub fn ncomponents(&self) -> usize {
        self.components.npoints()
    }

    pub fn orbit_count(&self) -> usize {
        self.components.orbits().len()
    }

    /// `dim_k P_d` for `d = 0..=max_degree`.
    pub fn total_dims(&self, max_degree: usize) -> Vec<u64> {
        (0..=max_degree).map(|d| self.ncomponents() as u64 * self.base.dim(d)).collect()
    }

    /// Certifies that `P_d` is free over `k[W]` for each `d <= max_degree`:
    /// the translates `g · (r, i)` of the basis vectors `i` of the orbit
    /// representatives `r` hit every basis vector `(c, i)` of `P_d` exactly
    /// once, and `dim P_d = |W| · t · dim B_d`.
    pub fn check_free(&self, max_degree: usize) -> Result<bool, WModError> {
        let orbits = self.components.orbits();
        let reps: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
        let n = self.ncomponents();
        let wn = self.w.order();
        for d in 0..=max_degree {
            let bd = self.base.dim(d) as usize;
            let total = n * bd;
            if total != wn * reps.len() * bd {
                return Err(WModError::InvariantViolation(format!(
                    "degree {d}: {total} basis vectors, expected |W|·t·dim B_d = {}",
                    wn * reps.len() * bd
                )));
            }
            let mut hit = vec![false; total];
            for g in 0..wn {
                for &r in &reps {
                    let c = self.components.act(g, r);
                    for i in 0..bd {
                        let slot = &mut hit[c * bd + i];
                        if *slot {
                            return Err(WModError::InvariantViolation(format!(
                                "degree {d}: component {c} reached twice"
                            )));
                        }
                        *slot = true;
                    }
                }
            }
            if hit.iter().any(|h| !h) {
                return Err(WModError::InvariantViolation(format!("degree {d}: translates do not span")));
            }
        }
        Ok(true)
    }

    /// `dim_k (P_d)^W` for `d = 0..=max_degree`.
    ///
    /// `P_d = k[π₀] ⊗ B_d` with `W` acting through the permutation matrices
    /// of `π₀`, so the fixed space is solved on `k[π₀]` once and tensored
    /// with `B_d`.
    pub fn invariants_dims(&self, max_degree: usize) -> Vec<u64> {
        let n = self.ncomponents();
        let mats: Vec<Vec<Vec<u64>>> = self
            .w
            .generator_indices()
            .iter()
            .map(|&g| {
                let mut m = vec![vec![0u64; n]; n];
                for c in 0..n {
                    m[self.components.act(g, c)][c] = 1;
                }
                m
            })
            .collect();
        let fixed = fp::common_fixed_dim(&mats, n, self.p) as u64;
        (0..=max_degree).map(|d| fixed * self.base.dim(d)).collect()
    }

    /// `ℓ(P)` tallied over components against `|W| · ℓ(P^W)` read off the
    /// invariant dimensions (each composition factor of `B` is a line).
    pub fn length_identity(&self) -> Result<LengthIdentity, WModError> {
        let base_len = self.base.length.ok_or(WModError::NotArtinian)?;
        let l_p: u64 = (0..self.ncomponents()).map(|_| base_len).sum();
        let top = self.base.dims.len().saturating_sub(1);
        let l_pw: u64 = self.invariants_dims(top).iter().sum();
        let w_order = self.w.order() as u64;
        Ok(LengthIdentity { l_p, l_pw, w_order, ok: l_p == w_order * l_pw })
    }
}

/// `ℓ(M ⊗_k V) = ℓ(M) · dim_k V`.
pub fn tensor_length(m_len: u64, v_dims: &[u64]) -> u64 {
    m_len * v_dims.iter().sum::<u64>()
}

/// Length of `(R/I) ⊗_k V` found by building a composition series: basis
/// elements `m ⊗ v` are added in order of decreasing degree, and every
/// partial span is checked to be closed under multiplication by each
/// variable, so consecutive quotients are one-dimensional submodule
/// quotients.
pub fn explicit_composition_length(ring: &WeightedRing, ideal: &MonIdeal, v_dims: &[u64]) -> Result<u64, WModError> {
    let module = GradedModule::quotient(ideal.clone());
    if !module.is_zero() && monalg::krull_dim(ring, &module)? > 0 {
        return Err(WModError::NotArtinian);
    }
    let n = ring.nvars();
    let standard = standard_monomials(ideal, n);
    let mut basis: Vec<(u64, usize, usize)> = Vec::new();
    for (mi, m) in standard.iter().enumerate() {
        for (vd, &count) in v_dims.iter().enumerate() {
            for vi in 0..count as usize {
                basis.push((ring.degree_of(m) + vd as u64, mi, vd * 1000 + vi));
            }
        }
    }
    basis.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let index_of = |m: &[u32]| standard.iter().position(|s| s.as_slice() == m);
    let mut included = std::collections::HashSet::new();
    let mut steps = 0u64;
    for &(_, mi, v) in &basis {
        included.insert((mi, v));
        for &(mj, vj) in included.iter() {
            for x in 0..n {
                let mut next = standard[mj].clone();
                next[x] += 1;
                if ideal.contains(&next) {
                    continue;
                }
                let k = index_of(&next).expect("standard monomial");
                if !included.contains(&(k, vj)) {
                    return Err(WModError::InvariantViolation(format!(
                        "step {steps}: span not closed under multiplication"
                    )));
                }
            }
        }
        steps += 1;
    }
    Ok(steps)
}

fn standard_monomials(ideal: &MonIdeal, n: usize) -> Vec<Vec<u32>> {
    // box bounded by the pure powers
    let bounds: Vec<u32> = (0..n)
        .map(|v| {
            ideal
                .generators()
                .iter()
                .filter(|g| g.iter().enumerate().all(|(i, &e)| i == v || e == 0))
                .map(|g| g[v])
                .min()
                .unwrap_or(0)
        })
        .collect();
    let mut out = Vec::new();
    if ideal.is_unit() {
        return out;
    }
    let mut e = vec![0u32; n];
    loop {
        if !ideal.contains(&e) {
            out.push(e.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            e[k] += 1;
            if e[k] < bounds[k] {
                break;
            }
            e[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpcat::catalog;

    #[test]
    fn free_examples() {
        let z2 = PermGroup::cyclic(2);
        let m = InducedModule::regular(z2, 1, BaseModule::from_dims(vec![1]), 2);
        assert!(m.check_free(3).unwrap());
        assert_eq!(m.total_dims(2), vec![2, 0, 0]);

        let s3 = catalog::s3();
        let m = InducedModule::regular(s3, 2, BaseModule::from_dims(vec![1, 1]), 3);
        assert!(m.check_free(3).unwrap());
        // direct count: 2 orbits · 6 components · 1 basis vector per degree
        assert_eq!(m.total_dims(1), vec![12, 12]);

        let trivial = PermGroup::cyclic(1);
        let m = InducedModule::regular(trivial, 3, BaseModule::from_dims(vec![2, 1]), 2);
        assert!(m.check_free(2).unwrap());
        assert_eq!(m.total_dims(1), vec![6, 3]);
    }

    #[test]
    fn non_free_actions_are_rejected() {
        let z2 = PermGroup::cyclic(2);
        // the generator fixes component 0
        let swap_12 = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        let err = InducedModule::new(z2, 3, &[swap_12], BaseModule::from_dims(vec![1]), 2).unwrap_err();
        assert_eq!(err, WModError::Group(GroupError::NotFree));
    }

    #[test]
    fn invariants_examples() {
        let z2 = PermGroup::cyclic(2);
        let m = InducedModule::regular(z2.clone(), 1, BaseModule::from_dims(vec![1]), 2);
        assert_eq!(m.invariants_dims(2), vec![1, 0, 0]);

        let z3 = PermGroup::cyclic(3);
        let rot = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let m = InducedModule::new(z3, 3, &[rot], BaseModule::from_dims(vec![1, 1, 1]), 2).unwrap();
        assert_eq!(m.invariants_dims(2), vec![1, 1, 1]);

        let base = BaseModule::from_dims(vec![1, 2]);
        let m = InducedModule::regular(z2, 3, base, 2);
        assert_eq!(m.invariants_dims(1), vec![3, 6]);
    }

    #[test]
    fn length_identity_examples() {
        let ring = WeightedRing::new(vec![1], 2).unwrap();
        let cube = MonIdeal::new(1, vec![vec![3]]).unwrap();
        let base = BaseModule::from_artinian(&ring, &cube).unwrap();
        assert_eq!(base.length(), Some(3));
        assert_eq!(base.dims(), &[1, 1, 1]);
        let m = InducedModule::regular(PermGroup::cyclic(2), 1, base.clone(), 2);
        assert_eq!(m.length_identity().unwrap(), LengthIdentity { l_p: 6, l_pw: 3, w_order: 2, ok: true });

        let m = InducedModule::regular(PermGroup::cyclic(1), 1, base, 2);
        let li = m.length_identity().unwrap();
        assert_eq!(li.l_p, li.l_pw);

        let m = InducedModule::regular(catalog::s3(), 2, BaseModule::from_dims(vec![1]), 3);
        assert_eq!(m.length_identity().unwrap(), LengthIdentity { l_p: 12, l_pw: 2, w_order: 6, ok: true });

        let m = InducedModule::regular(PermGroup::cyclic(2), 1, BaseModule::truncated(vec![1, 1]), 2);
        assert_eq!(m.length_identity(), Err(WModError::NotArtinian));
    }

    #[test]
    fn from_artinian_rejects_positive_dimension() {
        let ring = WeightedRing::new(vec![1, 1], 2).unwrap();
        let xy = MonIdeal::new(2, vec![vec![1, 1]]).unwrap();
        assert_eq!(BaseModule::from_artinian(&ring, &xy), Err(WModError::NotArtinian));
    }

    #[test]
    fn tensor_length_examples() {
        let ring = WeightedRing::new(vec![1], 2).unwrap();
        let cube = MonIdeal::new(1, vec![vec![3]]).unwrap();
        assert_eq!(explicit_composition_length(&ring, &cube, &[2]).unwrap(), 6);
        assert_eq!(tensor_length(3, &[2]), 6);
        assert_eq!(tensor_length(3, &[1]), 3);
        assert_eq!(tensor_length(0, &[4, 1]), 0);
        assert_eq!(explicit_composition_length(&ring, &MonIdeal::unit(1), &[4, 1]).unwrap(), 0);
    }

    #[test]
    fn composition_series_in_two_variables() {
        let ring = WeightedRing::new(vec![1, 2], 2).unwrap();
        let i = MonIdeal::new(2, vec![vec![2, 0], vec![1, 1], vec![0, 3]]).unwrap();
        let len = monalg::module_length(&ring, &GradedModule::quotient(i.clone())).unwrap();
        assert_eq!(len, 4);
        assert_eq!(explicit_composition_length(&ring, &i, &[1, 0, 2]).unwrap(), tensor_length(len, &[1, 0, 2]));
    }
}
