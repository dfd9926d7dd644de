//! Finite permutation groups, finite G-sets and Quillen's category of pairs
//! `(A, c)` with `A` elementary abelian and `c` a point fixed by `A`.
//!
//! Groups are fully enumerated (up to a size bound) and carry a
//! multiplication table, so every search below is plain brute force over
//! element indices. Elements are kept sorted by their image arrays, which
//! makes sorted index lists a canonical form for subgroups.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;

pub const DEFAULT_GROUP_BOUND: usize = 2000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group exceeds the size bound {bound}")]
    GroupTooLarge { bound: usize },
    #[error("bad permutation: {0}")]
    BadPermutation(String),
    #[error("generator action does not define a group action: {0}")]
    NotAnAction(String),
    #[error("action is not free")]
    NotFree,
    #[error("{0} is not a Quillen pair")]
    NotAPair(String),
    #[error("maximality tests disagree on {pair}: categorical={categorical}, stabilizer={stabilizer}")]
    CriterionMismatch { pair: String, categorical: bool, stabilizer: bool },
    #[error("{0} is not prime")]
    NotPrime(u32),
}

/// Bijection of `{0, ..., m-1}` given by its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm((0..m as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(GroupError::BadPermutation(format!("{images:?} is not a bijection"))),
            }
        }
        Ok(Perm(images))
    }

    /// Builds a permutation of `{0..m-1}` from disjoint cycles.
    pub fn from_cycles(m: usize, cycles: &[Vec<u32>]) -> Result<Self, GroupError> {
        let mut images: Vec<u32> = (0..m as u32).collect();
        let mut used = vec![false; m];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let slot = used
                    .get_mut(a as usize)
                    .ok_or_else(|| GroupError::BadPermutation(format!("point {a} outside 0..{m}")))?;
                if *slot {
                    return Err(GroupError::BadPermutation(format!("point {a} repeated")));
                }
                *slot = true;
                images[a as usize] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.0[i as usize]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Perm(inv)
    }

    /// Widens to degree `m >= self.degree()` by fixing the new points.
    pub fn extend(&self, m: usize) -> Perm {
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..m as u32);
        Perm(v)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut j = self.0[start] as usize;
            while j != start {
                seen[j] = true;
                cycle.push(j as u32);
                j = self.0[j] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// A fully enumerated permutation group.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elems: Vec<Perm>,
    index: HashMap<Perm, usize>,
    table: Vec<u32>,
    inv: Vec<u32>,
    identity: usize,
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elems == other.elems
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    /// Closure of the generators, failing once more than `bound` elements appear.
    pub fn generate(degree: usize, gens: Vec<Perm>, bound: usize) -> Result<Self, GroupError> {
        let gens: Vec<Perm> = gens
            .into_iter()
            .map(|g| {
                if g.degree() > degree {
                    Err(GroupError::BadPermutation(format!("{g} moves points beyond degree {degree}")))
                } else {
                    Ok(g.extend(degree))
                }
            })
            .collect::<Result<_, _>>()?;
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = g.compose(&x);
                if !seen.contains_key(&y) {
                    if seen.len() >= bound {
                        return Err(GroupError::GroupTooLarge { bound });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut elems: Vec<Perm> = seen.into_keys().collect();
        elems.sort();
        let index: HashMap<Perm, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                table[i * n + j] = index[&elems[i].compose(&elems[j])] as u32;
            }
        }
        let inv = elems.iter().map(|e| index[&e.inverse()] as u32).collect();
        let identity = index[&Perm::identity(degree)];
        Ok(PermGroup { degree, gens, elems, index, table, inv, identity })
    }

    /// Cyclic group `Z/n` acting regularly on `n` points.
    pub fn cyclic(n: usize) -> Self {
        let g = Perm::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).expect("rotation");
        Self::generate(n, vec![g], DEFAULT_GROUP_BOUND).expect("small cyclic group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elems[i]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elems
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(&p.extend(self.degree)).copied()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.elems.len() + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `g a g^{-1}`
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.gens.iter().map(|g| self.index[g]).collect()
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elems: (0..self.order()).collect() }
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup { elems: vec![self.identity] }
    }

    /// Subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Subgroup { elems: (0..self.order()).filter(|&i| seen[i]).collect() }
    }

    /// Subgroup generated by permutations, which must lie in the group.
    pub fn subgroup_generated(&self, perms: &[Perm]) -> Result<Subgroup, GroupError> {
        let idx = perms
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| GroupError::BadPermutation(format!("{p} is not in the group"))))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.closure(&idx))
    }

    pub fn conjugate_subgroup(&self, g: usize, a: &Subgroup) -> Subgroup {
        let mut elems: Vec<usize> = a.elems.iter().map(|&x| self.conj(g, x)).collect();
        elems.sort_unstable();
        Subgroup { elems }
    }
}

/// Subgroup as a sorted list of element indices of its parent group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    elems: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elems.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&g| other.contains(g))
    }

    /// `log_p |A|` for a p-group.
    pub fn rank(&self, p: u32) -> u32 {
        let mut n = self.elems.len();
        let mut r = 0;
        while n > 1 {
            n /= p as usize;
            r += 1;
        }
        r
    }

    pub fn is_elementary_abelian(&self, group: &PermGroup, p: u32) -> bool {
        self.elems.iter().all(|&a| a == group.identity() || group.element_order(a) == p as usize)
            && self.elems.iter().all(|&a| self.elems.iter().all(|&b| group.commute(a, b)))
    }

    /// Short generating set description, e.g. `<(0 1 2)>`.
    pub fn describe(&self, group: &PermGroup) -> String {
        let mut gens: Vec<usize> = Vec::new();
        let mut span = group.closure(&gens);
        for &g in &self.elems {
            if !span.contains(g) {
                gens.push(g);
                span = group.closure(&gens);
            }
        }
        let parts: Vec<String> = gens.iter().map(|&g| group.element(g).to_string()).collect();
        format!("<{}>", parts.join(", "))
    }
}

/// A finite set with a left action of a group, stored as one point
/// permutation per group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GSet {
    npoints: usize,
    action: Vec<Vec<u32>>,
}

impl GSet {
    /// Extends an action of the generators to the whole group, rejecting
    /// assignments that are not homomorphisms. The closure of the pairs
    /// `(g, ρ(g))` is a subgroup of `G × Sym(X)`; it is the graph of a
    /// homomorphism exactly when no group element receives two images.
    pub fn from_generator_action(group: &PermGroup, npoints: usize, gen_action: &[Perm]) -> Result<Self, GroupError> {
        if gen_action.len() != group.generators().len() {
            return Err(GroupError::NotAnAction(format!(
                "{} generator images for {} generators",
                gen_action.len(),
                group.generators().len()
            )));
        }
        let gen_action: Vec<Perm> = gen_action
            .iter()
            .map(|g| {
                if g.degree() > npoints {
                    Err(GroupError::NotAnAction(format!("{g} moves points beyond {npoints}")))
                } else {
                    Ok(g.extend(npoints))
                }
            })
            .collect::<Result<_, _>>()?;
        let gens = group.generator_indices();
        let mut action: Vec<Option<Perm>> = vec![None; group.order()];
        action[group.identity()] = Some(Perm::identity(npoints));
        let mut queue = VecDeque::from([group.identity()]);
        while let Some(x) = queue.pop_front() {
            let rx = action[x].clone().expect("queued elements have images");
            for (k, &g) in gens.iter().enumerate() {
                let y = group.mul(g, x);
                let ry = gen_action[k].compose(&rx);
                match &action[y] {
                    Some(existing) if *existing != ry => {
                        return Err(GroupError::NotAnAction(format!(
                            "element {} would act both as {existing} and as {ry}",
                            group.element(y)
                        )))
                    }
                    Some(_) => {}
                    None => {
                        action[y] = Some(ry);
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(GSet {
            npoints,
            action: action.into_iter().map(|a| a.expect("closure reaches every element").0).collect(),
        })
    }

    /// Left cosets `G/H`, ordered by their least element.
    pub fn cosets(group: &PermGroup, h: &Subgroup) -> Self {
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut count = 0;
        for g in 0..group.order() {
            if coset_of[g] == usize::MAX {
                for &x in h.elements() {
                    coset_of[group.mul(g, x)] = count;
                }
                count += 1;
            }
        }
        let reps: Vec<usize> = (0..count).map(|c| coset_of.iter().position(|&k| k == c).unwrap()).collect();
        let action = (0..group.order())
            .map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)] as u32).collect())
            .collect();
        GSet { npoints: count, action }
    }

    pub fn point(group: &PermGroup) -> Self {
        GSet { npoints: 1, action: vec![vec![0]; group.order()] }
    }

    /// `copies` regular orbits.
    pub fn free(group: &PermGroup, copies: usize) -> Self {
        let one = Self::cosets(group, &group.trivial());
        (0..copies).fold(Self::empty(group), |acc, _| acc.union(&one))
    }

    pub fn empty(group: &PermGroup) -> Self {
        GSet { npoints: 0, action: vec![Vec::new(); group.order()] }
    }

    pub fn union(&self, other: &GSet) -> GSet {
        let shift = self.npoints as u32;
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&x| x + shift)).collect())
            .collect();
        GSet { npoints: self.npoints + other.npoints, action }
    }

    pub fn npoints(&self) -> usize {
        self.npoints
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x] as usize
    }

    pub fn stabilizer(&self, x: usize) -> Subgroup {
        Subgroup { elems: (0..self.action.len()).filter(|&g| self.act(g, x) == x).collect() }
    }

    pub fn fixed_points(&self, a: &Subgroup) -> Vec<usize> {
        (0..self.npoints).filter(|&x| a.elements().iter().all(|&g| self.act(g, x) == x)).collect()
    }

    /// Orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.npoints];
        let mut out = Vec::new();
        for x in 0..self.npoints {
            if seen[x] {
                continue;
            }
            let mut orbit: Vec<usize> = (0..self.action.len()).map(|g| self.act(g, x)).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &y in &orbit {
                seen[y] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_free(&self, group: &PermGroup) -> bool {
        (0..self.npoints).all(|x| self.stabilizer(x).order() == 1 || group.order() == 1)
    }
}

/// Elementary abelian p-subgroups, including the trivial one, sorted.
///
/// Every elementary abelian subgroup is reached from the trivial group by
/// adjoining commuting elements of order p one at a time.
pub fn elementary_abelians(group: &PermGroup, p: u32) -> Result<Vec<Subgroup>, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let order_p: Vec<usize> = (0..group.order()).filter(|&g| group.element_order(g) == p as usize).collect();
    let mut found: Vec<Subgroup> = vec![group.trivial()];
    let mut known: std::collections::HashSet<Subgroup> = found.iter().cloned().collect();
    let mut frontier = 0;
    while frontier < found.len() {
        let a = found[frontier].clone();
        frontier += 1;
        for &g in &order_p {
            if a.contains(g) || !a.elements().iter().all(|&x| group.commute(g, x)) {
                continue;
            }
            let mut gens = a.elements().to_vec();
            gens.push(g);
            let b = group.closure(&gens);
            if known.insert(b.clone()) {
                found.push(b);
            }
        }
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(found)
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// An object `(A, c)` of the Quillen category: `A` elementary abelian and
/// `c` a point of `X^A`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuillenPair {
    pub a: Subgroup,
    pub point: usize,
}

impl QuillenPair {
    pub fn describe(&self, group: &PermGroup) -> String {
        format!("({}, {})", self.a.describe(group), self.point)
    }
}

/// `Q(G, X)` for a finite group acting on a finite discrete set.
#[derive(Debug, Clone)]
pub struct QuillenCategory<'a> {
    pub group: &'a PermGroup,
    pub space: &'a GSet,
    pub p: u32,
    pairs: Vec<QuillenPair>,
}

/// A conjugacy class `[A, c]` of pairs, with its least member as representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairClass {
    pub representative: QuillenPair,
    pub members: Vec<QuillenPair>,
    pub rank: u32,
}

impl<'a> QuillenCategory<'a> {
    pub fn new(group: &'a PermGroup, p: u32, space: &'a GSet) -> Result<Self, GroupError> {
        let pairs = quillen_pairs(group, p, space)?;
        Ok(QuillenCategory { group, space, p, pairs })
    }

    pub fn pairs(&self) -> &[QuillenPair] {
        &self.pairs
    }

    pub fn rank(&self, pair: &QuillenPair) -> u32 {
        pair.a.rank(self.p)
    }

    fn check(&self, pair: &QuillenPair) -> Result<(), GroupError> {
        if self.pairs.binary_search(pair).is_err() {
            return Err(GroupError::NotAPair(pair.describe(self.group)));
        }
        Ok(())
    }

    /// `(A, c) ≲ (A', c')`: some `g` has `gAg⁻¹ ⊆ A'` and `g·c = c'`.
    pub fn is_subconjugate(&self, from: &QuillenPair, to: &QuillenPair) -> bool {
        self.morphisms(from, to).next().is_some()
    }

    /// Elements `g` inducing a morphism `from → to`.
    pub fn morphisms<'b>(&'b self, from: &'b QuillenPair, to: &'b QuillenPair) -> impl Iterator<Item = usize> + 'b {
        (0..self.group.order()).filter(move |&g| {
            self.space.act(g, from.point) == to.point
                && from.a.elements().iter().all(|&x| to.a.contains(self.group.conj(g, x)))
        })
    }

    /// Partition of the pairs under mutual subconjugacy, sorted by representative.
    pub fn classes(&self) -> Vec<PairClass> {
        let mut assigned = vec![false; self.pairs.len()];
        let mut out = Vec::new();
        for i in 0..self.pairs.len() {
            if assigned[i] {
                continue;
            }
            let rep = &self.pairs[i];
            let mut members = Vec::new();
            for j in i..self.pairs.len() {
                if assigned[j] {
                    continue;
                }
                let other = &self.pairs[j];
                if self.is_subconjugate(rep, other) && self.is_subconjugate(other, rep) {
                    assigned[j] = true;
                    members.push(other.clone());
                }
            }
            out.push(PairClass { representative: rep.clone(), members, rank: self.rank(rep) });
        }
        out
    }

    /// Class containing the given pair.
    pub fn class_of(&self, pair: &QuillenPair) -> Result<PairClass, GroupError> {
        self.check(pair)?;
        Ok(self
            .classes()
            .into_iter()
            .find(|c| c.members.contains(pair))
            .expect("every pair lies in a class"))
    }

    /// Every morphism out of `(A, c)` is an isomorphism.
    pub fn is_maximal_categorical(&self, pair: &QuillenPair) -> bool {
        self.pairs.iter().all(|target| {
            self.morphisms(pair, target).all(|g| self.group.conjugate_subgroup(g, &pair.a) == target.a)
        })
    }

    /// `A` is a maximal elementary abelian subgroup of the stabilizer `G_c`:
    /// no element of order p in `G_c \ A` commutes with all of `A`.
    pub fn is_maximal_stabilizer(&self, pair: &QuillenPair) -> bool {
        let stab = self.space.stabilizer(pair.point);
        !stab.elements().iter().any(|&h| {
            !pair.a.contains(h)
                && self.group.element_order(h) == self.p as usize
                && pair.a.elements().iter().all(|&x| self.group.commute(h, x))
        })
    }

    /// Runs both maximality tests and fails if they disagree.
    pub fn is_maximal_pair(&self, pair: &QuillenPair) -> Result<bool, GroupError> {
        self.check(pair)?;
        let categorical = self.is_maximal_categorical(pair);
        let stabilizer = self.is_maximal_stabilizer(pair);
        if categorical != stabilizer {
            return Err(GroupError::CriterionMismatch { pair: pair.describe(self.group), categorical, stabilizer });
        }
        Ok(categorical)
    }

    /// `Q'(G, X)`: classes of maximal pairs.
    pub fn q_prime(&self) -> Result<Vec<PairClass>, GroupError> {
        let mut out = Vec::new();
        for class in self.classes() {
            if self.is_maximal_pair(&class.representative)? {
                out.push(class);
            }
        }
        Ok(out)
    }

    /// Classes of `Q'(G, X)` of largest rank.
    pub fn q_prime_max(&self) -> Result<Vec<PairClass>, GroupError> {
        let q = self.q_prime()?;
        let top = q.iter().map(|c| c.rank).max().unwrap_or(0);
        Ok(q.into_iter().filter(|c| c.rank == top).collect())
    }

    /// `N_G(A, c)`: normalizes `A` and fixes `c`.
    pub fn normalizer(&self, pair: &QuillenPair) -> Subgroup {
        let elems = (0..self.group.order())
            .filter(|&g| self.space.act(g, pair.point) == pair.point)
            .filter(|&g| self.group.conjugate_subgroup(g, &pair.a) == pair.a)
            .collect();
        Subgroup { elems }
    }

    /// `C_G(A, c)`: centralizes `A` and fixes `c`.
    pub fn centralizer(&self, pair: &QuillenPair) -> Subgroup {
        let elems = (0..self.group.order())
            .filter(|&g| self.space.act(g, pair.point) == pair.point)
            .filter(|&g| pair.a.elements().iter().all(|&x| self.group.commute(g, x)))
            .collect();
        Subgroup { elems }
    }

    /// `|W_G(A, c)| = |N_G(A, c)| / |C_G(A, c)|`.
    pub fn weyl_order(&self, pair: &QuillenPair) -> usize {
        let n = self.normalizer(pair);
        let c = self.centralizer(pair);
        debug_assert!(c.is_subset_of(&n));
        debug_assert!(n
            .elements()
            .iter()
            .all(|&g| self.group.conjugate_subgroup(g, &c) == c));
        n.order() / c.order()
    }

    /// Largest rank of any pair; 0 when `X` is empty.
    pub fn max_rank(&self) -> u32 {
        self.pairs.iter().map(|q| self.rank(q)).max().unwrap_or(0)
    }
}

/// All `(A, c)` with `A` elementary abelian and `c ∈ X^A`, sorted.
pub fn quillen_pairs(group: &PermGroup, p: u32, space: &GSet) -> Result<Vec<QuillenPair>, GroupError> {
    let mut out = Vec::new();
    for a in elementary_abelians(group, p)? {
        for point in space.fixed_points(&a) {
            out.push(QuillenPair { a: a.clone(), point });
        }
    }
    out.sort();
    Ok(out)
}

/// Handy fixture groups.
pub mod catalog {
    use super::*;

    fn group(degree: usize, cycles: &[&[&[u32]]]) -> PermGroup {
        let gens = cycles
            .iter()
            .map(|g| Perm::from_cycles(degree, &g.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap())
            .collect();
        PermGroup::generate(degree, gens, DEFAULT_GROUP_BOUND).unwrap()
    }

    /// `S_3 = <(0 1 2), (0 1)>`
    pub fn s3() -> PermGroup {
        group(3, &[&[&[0, 1, 2]], &[&[0, 1]]])
    }

    /// Dihedral group of order 8, `<(0 1 2 3), (0 2)>`.
    pub fn d4() -> PermGroup {
        group(4, &[&[&[0, 1, 2, 3]], &[&[0, 2]]])
    }

    /// `A_4 = <(0 1 2), (0 1)(2 3)>`
    pub fn a4() -> PermGroup {
        group(4, &[&[&[0, 1, 2]], &[&[0, 1], &[2, 3]]])
    }

    /// `S_4 = <(0 1 2 3), (0 1)>`
    pub fn s4() -> PermGroup {
        group(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]])
    }

    /// Quaternion group of order 8 in its regular representation.
    pub fn q8() -> PermGroup {
        group(8, &[&[&[0, 1, 2, 3], &[4, 5, 6, 7]], &[&[0, 4, 2, 6], &[1, 7, 3, 5]]])
    }

    /// `(Z/p)^r` acting on `r·p` points.
    pub fn elementary(p: u32, r: u32) -> PermGroup {
        let deg = (p * r) as usize;
        let gens = (0..r)
            .map(|k| {
                let cycle: Vec<u32> = (0..p).map(|i| k * p + i).collect();
                Perm::from_cycles(deg, &[cycle]).unwrap()
            })
            .collect();
        PermGroup::generate(deg, gens, DEFAULT_GROUP_BOUND).unwrap()
    }

    /// `Z/2 × Z/2 = <(0 1), (2 3)>`
    pub fn klein() -> PermGroup {
        elementary(2, 2)
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    fn perm(m: usize, cycles: &[&[u32]]) -> Perm {
        Perm::from_cycles(m, &cycles.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(s3().order(), 6);
        assert_eq!(d4().order(), 8);
        let trivial = PermGroup::generate(3, Vec::new(), DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(a4().order(), 12);
        assert_eq!(q8().order(), 8);
    }

    #[test]
    fn group_bound_is_enforced() {
        let gens = vec![perm(5, &[&[0, 1, 2, 3, 4]]), perm(5, &[&[0, 1]])];
        assert_eq!(PermGroup::generate(5, gens, 100).unwrap_err(), GroupError::GroupTooLarge { bound: 100 });
    }

    #[test]
    fn bad_permutations() {
        assert!(Perm::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Perm::from_cycles(3, &[vec![0, 5]]).is_err());
        assert_eq!(perm(4, &[&[0, 1, 2]]).to_string(), "(0 1 2)");
        assert_eq!(Perm::identity(2).to_string(), "()");
    }

    /// Oracle: every subset closed under products whose elements commute and
    /// have order dividing p, found by brute force over subsets of the
    /// order-p elements.
    fn brute_elementary_abelians(g: &PermGroup, p: u32) -> Vec<Subgroup> {
        let candidates: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) == p as usize).collect();
        assert!(candidates.len() <= 16);
        let mut out: Vec<Subgroup> = Vec::new();
        for mask in 0u32..(1 << candidates.len()) {
            let mut elems: Vec<usize> = vec![g.identity()];
            elems.extend((0..candidates.len()).filter(|i| mask >> i & 1 == 1).map(|i| candidates[i]));
            elems.sort_unstable();
            let closed = elems.iter().all(|&a| elems.iter().all(|&b| elems.binary_search(&g.mul(a, b)).is_ok()));
            let abelian = elems.iter().all(|&a| elems.iter().all(|&b| g.commute(a, b)));
            if closed && abelian {
                out.push(Subgroup { elems });
            }
        }
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn elementary_abelian_examples() {
        let g = s3();
        let ea = elementary_abelians(&g, 3).unwrap();
        assert_eq!(ea, brute_elementary_abelians(&g, 3));
        assert_eq!(ea.iter().map(|a| a.order()).collect::<Vec<_>>(), vec![1, 3]);

        let g = d4();
        let ea = elementary_abelians(&g, 2).unwrap();
        assert_eq!(ea, brute_elementary_abelians(&g, 2));
        let ranks: Vec<u32> = ea.iter().map(|a| a.rank(2)).collect();
        assert_eq!(ranks, vec![0, 1, 1, 1, 1, 1, 2, 2]);

        assert_eq!(elementary_abelians(&d4(), 3).unwrap(), vec![d4().trivial()]);
        assert_eq!(elementary_abelians(&d4(), 4), Err(GroupError::NotPrime(4)));
    }

    #[test]
    fn pairs_examples() {
        let g = s3();
        let pt = GSet::point(&g);
        let pairs = quillen_pairs(&g, 3, &pt).unwrap();
        assert_eq!(pairs.len(), 2);

        let a3 = g.subgroup_generated(&[perm(3, &[&[0, 1, 2]])]).unwrap();
        let x = GSet::cosets(&g, &a3);
        assert_eq!(x.npoints(), 2);
        let pairs = quillen_pairs(&g, 3, &x).unwrap();
        assert_eq!(pairs.iter().filter(|q| q.a.order() == 1).count(), 2);
        assert_eq!(pairs.iter().filter(|q| q.a.order() == 3).count(), 2);

        assert!(quillen_pairs(&g, 3, &GSet::empty(&g)).unwrap().is_empty());
    }

    #[test]
    fn subconjugacy_examples() {
        let g = s3();
        let a3 = g.subgroup_generated(&[perm(3, &[&[0, 1, 2]])]).unwrap();
        let x = GSet::cosets(&g, &a3);
        let cat = QuillenCategory::new(&g, 3, &x).unwrap();
        let p1 = QuillenPair { a: a3.clone(), point: 0 };
        let p2 = QuillenPair { a: a3.clone(), point: 1 };
        let t1 = QuillenPair { a: g.trivial(), point: 0 };
        assert!(cat.is_subconjugate(&t1, &p1));
        assert!(cat.is_subconjugate(&p1, &p2));
        assert!(!cat.is_subconjugate(&p1, &t1));
        let classes = cat.classes();
        let a3_class = classes.iter().find(|c| c.rank == 1).unwrap();
        assert_eq!(a3_class.members, vec![p1, p2]);

        let d = d4();
        let pt = GSet::point(&d);
        let cat = QuillenCategory::new(&d, 2, &pt).unwrap();
        let rank2: Vec<PairClass> = cat.classes().into_iter().filter(|c| c.rank == 2).collect();
        assert_eq!(rank2.len(), 2);
        let big = &rank2[0].representative;
        let small = cat.pairs().iter().find(|q| q.a.order() == 2).unwrap();
        assert!(!cat.is_subconjugate(big, small));
    }

    #[test]
    fn abelian_point_classes_are_subgroups() {
        let g = klein();
        let pt = GSet::point(&g);
        let cat = QuillenCategory::new(&g, 2, &pt).unwrap();
        assert_eq!(cat.classes().len(), elementary_abelians(&g, 2).unwrap().len());
        assert!(cat.classes().iter().all(|c| c.members.len() == 1));
    }

    #[test]
    fn maximality_examples() {
        let g = s3();
        let pt = GSet::point(&g);
        let cat = QuillenCategory::new(&g, 3, &pt).unwrap();
        let a3 = g.subgroup_generated(&[perm(3, &[&[0, 1, 2]])]).unwrap();
        assert!(cat.is_maximal_pair(&QuillenPair { a: a3, point: 0 }).unwrap());
        assert!(!cat.is_maximal_pair(&QuillenPair { a: g.trivial(), point: 0 }).unwrap());

        let d = d4();
        let pt = GSet::point(&d);
        let cat = QuillenCategory::new(&d, 2, &pt).unwrap();
        let s = d.subgroup_generated(&[perm(4, &[&[0, 2]])]).unwrap();
        assert!(!cat.is_maximal_pair(&QuillenPair { a: s, point: 0 }).unwrap());
    }

    #[test]
    fn q_prime_examples() {
        let g = s3();
        let pt = GSet::point(&g);
        let cat = QuillenCategory::new(&g, 3, &pt).unwrap();
        let q = cat.q_prime().unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q, cat.q_prime_max().unwrap());

        let d = d4();
        let pt = GSet::point(&d);
        let cat = QuillenCategory::new(&d, 2, &pt).unwrap();
        let q = cat.q_prime_max().unwrap();
        assert_eq!(q.len(), 2);
        assert!(q.iter().all(|c| c.rank == 2));
        assert_eq!(q, cat.q_prime().unwrap());

        let z = PermGroup::cyclic(5);
        let pt = GSet::point(&z);
        let cat = QuillenCategory::new(&z, 5, &pt).unwrap();
        let q = cat.q_prime().unwrap();
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].representative.a.order(), 5);
    }

    #[test]
    fn q_prime_can_exceed_q_prime_max() {
        // S3 on S3/A3 plus a free orbit: (1, free point) is maximal of rank 0.
        let g = s3();
        let a3 = g.subgroup_generated(&[perm(3, &[&[0, 1, 2]])]).unwrap();
        let x = GSet::cosets(&g, &a3).union(&GSet::free(&g, 1));
        let cat = QuillenCategory::new(&g, 3, &x).unwrap();
        let q = cat.q_prime().unwrap();
        assert_eq!(q.iter().map(|c| c.rank).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(cat.q_prime_max().unwrap().len(), 1);
        assert_eq!(cat.weyl_order(&cat.q_prime_max().unwrap()[0].representative), 1);
    }

    #[test]
    fn weyl_examples() {
        let g = s3();
        let pt = GSet::point(&g);
        let cat = QuillenCategory::new(&g, 3, &pt).unwrap();
        let a3 = g.subgroup_generated(&[perm(3, &[&[0, 1, 2]])]).unwrap();
        let pair = QuillenPair { a: a3, point: 0 };
        assert_eq!(cat.normalizer(&pair).order(), 6);
        assert_eq!(cat.centralizer(&pair).order(), 3);
        assert_eq!(cat.weyl_order(&pair), 2);

        let d = d4();
        let pt = GSet::point(&d);
        let cat = QuillenCategory::new(&d, 2, &pt).unwrap();
        for class in cat.q_prime_max().unwrap() {
            for m in &class.members {
                assert_eq!(cat.weyl_order(m), 2);
            }
        }

        let z = PermGroup::cyclic(4);
        let pt = GSet::point(&z);
        let cat = QuillenCategory::new(&z, 2, &pt).unwrap();
        for pair in cat.pairs() {
            assert_eq!(cat.normalizer(pair).order(), 4);
            assert_eq!(cat.weyl_order(pair), 1);
        }
    }

    #[test]
    fn a4_weyl_group_has_order_three() {
        let g = a4();
        let pt = GSet::point(&g);
        let cat = QuillenCategory::new(&g, 2, &pt).unwrap();
        let q = cat.q_prime_max().unwrap();
        assert_eq!(q.len(), 1);
        let v4 = &q[0].representative;
        assert_eq!(cat.normalizer(v4).order(), 12);
        assert_eq!(cat.centralizer(v4).order(), 4);
        assert_eq!(cat.weyl_order(v4), 3);
    }

    #[test]
    fn max_rank_examples() {
        let d = d4();
        let pt = GSet::point(&d);
        assert_eq!(QuillenCategory::new(&d, 2, &pt).unwrap().max_rank(), 2);
        let g = s3();
        let pt = GSet::point(&g);
        assert_eq!(QuillenCategory::new(&g, 3, &pt).unwrap().max_rank(), 1);
        assert_eq!(QuillenCategory::new(&g, 5, &pt).unwrap().max_rank(), 0);
    }

    #[test]
    fn explicit_action_must_be_a_homomorphism() {
        let g = s3();
        // (0 1 2) -> identity, (0 1) -> (0 1): the sign action on 2 points
        let ok = GSet::from_generator_action(&g, 2, &[Perm::identity(2), perm(2, &[&[0, 1]])]);
        assert!(ok.is_ok());
        // (0 1 2) of order 3 cannot act as a transposition
        let bad = GSet::from_generator_action(&g, 2, &[perm(2, &[&[0, 1]]), Perm::identity(2)]);
        assert!(matches!(bad, Err(GroupError::NotAnAction(_))));
    }

    #[test]
    fn free_orbits_are_free() {
        let g = s3();
        let x = GSet::free(&g, 2);
        assert_eq!(x.npoints(), 12);
        assert!(x.is_free(&g));
        assert_eq!(x.orbits().len(), 2);
        assert!(!GSet::point(&g).is_free(&g));
    }
}
