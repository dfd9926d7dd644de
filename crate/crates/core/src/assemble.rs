//! Both sides of the degree formula for a fixture, and their comparison.
//!
//! The left side is the degree of `H*_G(X)`: the global model when one is
//! given, otherwise the sum over orbits `G/H` of the stabilizer models
//! `H*_H`. The right side sums `deg H*_{C_G(A,c)}(c) / |W_G(A,c)|` over the
//! maximal-rank classes of maximal pairs.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::cohmodel::{self, CohError, CohModel, GateStatus};
use crate::grpcat::{GSet, GroupError, PairClass, PermGroup, QuillenCategory, QuillenPair, Subgroup};
use crate::monalg::{self, AlgebraError, GradedModule, MonPrime, MonRingMap, WeightedRing};
use crate::series::{SeriesError, SeriesExpr};

/// Degree up to which hand-entered series are compared with the invariant
/// truncation.
pub const GATE_DEGREE: usize = 40;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AssembleError {
    #[error("no cohomology model for {0}")]
    MissingModel(String),
    #[error("fixture has no algebraic side")]
    MissingAlgebraicSide,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Coh(#[from] CohError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Which classes of pairs a centralizer model applies to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassSelector {
    Rank(u32),
    Pair(QuillenPair),
}

/// `p_{(A,c)}` supplied as the pullback of `target` along `map`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    pub prime: MonPrime,
    pub map: MonRingMap,
    pub target: MonPrime,
}

/// A presented model of `H_G(X)` with a declared prime-to-pair matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicSide {
    pub ring: WeightedRing,
    pub module: GradedModule,
    pub matching: Vec<(MonPrime, QuillenPair)>,
    pub restrictions: Vec<Restriction>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub group: PermGroup,
    pub p: u32,
    pub space: GSet,
    pub global_model: Option<CohModel>,
    /// Model for the orbit of the point, and for every orbit whose
    /// stabilizer is conjugate to that point's.
    pub stabilizer_models: Vec<(usize, CohModel)>,
    pub centralizer_models: Vec<(ClassSelector, CohModel)>,
    pub algebraic: Option<AlgebraicSide>,
    pub expected_lhs: Option<BigRational>,
    pub expected_rhs: Option<BigRational>,
    pub convention: String,
    pub note: String,
}

impl Fixture {
    pub fn new(name: &str, group: PermGroup, p: u32, space: GSet) -> Self {
        Fixture {
            name: name.to_string(),
            group,
            p,
            space,
            global_model: None,
            stabilizer_models: Vec::new(),
            centralizer_models: Vec::new(),
            algebraic: None,
            expected_lhs: None,
            expected_rhs: None,
            convention: "full".to_string(),
            note: String::new(),
        }
    }

    pub fn category(&self) -> Result<QuillenCategory<'_>, GroupError> {
        QuillenCategory::new(&self.group, self.p, &self.space)
    }
}

fn conjugate_in(group: &PermGroup, a: &Subgroup, b: &Subgroup) -> bool {
    a.order() == b.order() && (0..group.order()).any(|g| group.conjugate_subgroup(g, a) == *b)
}

/// Elementary abelian p-groups get the closed form, p'-groups the ground field.
fn auto_model(group: &PermGroup, p: u32, h: &Subgroup) -> Option<CohModel> {
    if h.is_elementary_abelian(group, p) {
        return Some(CohModel::ElementaryAbelian { rank: h.rank(p), p });
    }
    if !h.order().is_multiple_of(p as usize) {
        return Some(CohModel::trivial());
    }
    None
}

struct StabilizerTerm {
    point: usize,
    model: CohModel,
}

fn stabilizer_terms(f: &Fixture) -> Result<Vec<StabilizerTerm>, AssembleError> {
    let mut out = Vec::new();
    for orbit in f.space.orbits() {
        let y = orbit[0];
        let stab = f.space.stabilizer(y);
        let declared = f
            .stabilizer_models
            .iter()
            .find(|(x, _)| *x < f.space.npoints() && conjugate_in(&f.group, &f.space.stabilizer(*x), &stab))
            .map(|(_, m)| m.clone());
        let model = declared
            .or_else(|| auto_model(&f.group, f.p, &stab))
            .ok_or_else(|| AssembleError::MissingModel(format!("stabilizer of point {y}")))?;
        out.push(StabilizerTerm { point: y, model });
    }
    Ok(out)
}

pub fn lhs_series(f: &Fixture) -> Result<SeriesExpr, AssembleError> {
    if let Some(m) = &f.global_model {
        return Ok(cohmodel::model_series(m));
    }
    let mut acc = SeriesExpr::zero();
    for t in stabilizer_terms(f)? {
        acc = acc.add(&cohmodel::model_series(&t.model));
    }
    Ok(acc)
}

pub fn lhs_degree(f: &Fixture) -> Result<BigRational, AssembleError> {
    Ok(lhs_series(f)?.degree_at_one()?)
}

fn centralizer_model(f: &Fixture, cat: &QuillenCategory, class: &PairClass) -> Result<CohModel, AssembleError> {
    for (sel, m) in &f.centralizer_models {
        let hit = match sel {
            ClassSelector::Rank(r) => *r == class.rank,
            ClassSelector::Pair(pair) => class.members.contains(pair),
        };
        if hit {
            return Ok(m.clone());
        }
    }
    let c = cat.centralizer(&class.representative);
    auto_model(&f.group, f.p, &c)
        .ok_or_else(|| AssembleError::MissingModel(format!("centralizer of {}", class.representative.describe(&f.group))))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhsTerm {
    pub class: String,
    pub rank: u32,
    pub weyl_order: usize,
    pub centralizer_order: usize,
    #[serde(with = "crate::ratio_str")]
    pub model_degree: BigRational,
    #[serde(with = "crate::ratio_str")]
    pub contribution: BigRational,
    pub tautological: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhsReport {
    pub terms: Vec<RhsTerm>,
    #[serde(with = "crate::ratio_str")]
    pub total: BigRational,
}

pub fn rhs_degree(f: &Fixture) -> Result<RhsReport, AssembleError> {
    rhs_degree_using(f, |c| &c.representative)
}

/// Same as `rhs_degree` but evaluates each class at the chosen member.
pub fn rhs_degree_using(
    f: &Fixture,
    pick: impl Fn(&PairClass) -> &QuillenPair,
) -> Result<RhsReport, AssembleError> {
    let cat = f.category()?;
    let mut terms = Vec::new();
    let mut total = BigRational::zero();
    for class in cat.q_prime_max()? {
        let pair = pick(&class);
        let model = centralizer_model(f, &cat, &class)?;
        let weyl = cat.weyl_order(pair);
        let c = cat.centralizer(pair);
        let model_degree = cohmodel::model_degree(&model)?;
        let contribution = &model_degree / BigRational::from_integer(weyl.into());
        total += &contribution;
        terms.push(RhsTerm {
            class: pair.describe(&f.group),
            rank: class.rank,
            weyl_order: weyl,
            centralizer_order: c.order(),
            model_degree,
            contribution,
            tautological: c.order() == f.group.order() && f.space.npoints() == 1,
        });
    }
    Ok(RhsReport { terms, total })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelGate {
    pub role: String,
    #[serde(flatten)]
    pub status: GateStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchedTerm {
    pub prime: String,
    pub class: String,
    pub length: u64,
    #[serde(with = "crate::ratio_str")]
    pub prime_degree: BigRational,
    #[serde(with = "crate::ratio_str")]
    pub algebraic: BigRational,
    #[serde(with = "crate::ratio_str")]
    pub geometric: BigRational,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermMatching {
    pub dmax_primes: usize,
    pub q_prime_max_classes: usize,
    pub bijection: bool,
    pub terms: Vec<MatchedTerm>,
    #[serde(with = "crate::ratio_str")]
    pub algebraic_total: BigRational,
    #[serde(with = "crate::ratio_str")]
    pub additivity_rhs: BigRational,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MainReport {
    pub fixture: String,
    pub p: u32,
    pub group_order: usize,
    pub points: usize,
    pub convention: String,
    #[serde(with = "crate::ratio_str")]
    pub lhs: BigRational,
    pub lhs_dim: i64,
    pub max_rank: u32,
    pub rhs: RhsReport,
    pub equal: bool,
    pub dim_check: bool,
    pub tautological: bool,
    pub provenance: String,
    pub gates: Vec<ModelGate>,
    pub term_matching: Option<TermMatching>,
    pub expected_ok: Option<bool>,
    pub note: String,
}

impl MainReport {
    pub fn passed(&self) -> bool {
        self.equal
            && self.dim_check
            && !self.gates.iter().any(|g| matches!(g.status, GateStatus::Failed { .. }))
            && self.term_matching.as_ref().is_none_or(|t| t.ok)
            && self.expected_ok != Some(false)
    }
}

fn gates(f: &Fixture) -> Result<Vec<ModelGate>, AssembleError> {
    let mut out = Vec::new();
    if let Some(m) = &f.global_model {
        out.push(ModelGate { role: "global".into(), status: m.gate(f.p, GATE_DEGREE)? });
    } else {
        for t in stabilizer_terms(f)? {
            out.push(ModelGate { role: format!("stabilizer @ {}", t.point), status: t.model.gate(f.p, GATE_DEGREE)? });
        }
    }
    let cat = f.category()?;
    for class in cat.q_prime_max()? {
        let m = centralizer_model(f, &cat, &class)?;
        out.push(ModelGate {
            role: format!("centralizer {}", class.representative.describe(&f.group)),
            status: m.gate(f.p, GATE_DEGREE)?,
        });
    }
    Ok(out)
}

fn term_matching(f: &Fixture, alg: &AlgebraicSide, rhs: &RhsReport) -> Result<TermMatching, AssembleError> {
    let cat = f.category()?;
    let qmax = cat.q_prime_max()?;
    let dmax = monalg::dmax_primes(&alg.ring, &alg.module)?;
    let additivity = monalg::additivity_report(&alg.ring, &alg.module)?;

    let mut terms = Vec::new();
    let mut seen_primes = Vec::new();
    let mut seen_classes = Vec::new();
    let mut total = BigRational::zero();
    for (prime, pair) in &alg.matching {
        let class = cat.class_of(pair)?;
        let Some(ci) = qmax.iter().position(|c| c.representative == class.representative) else {
            continue;
        };
        let length = monalg::local_length(&alg.ring, &alg.module, prime)?;
        let prime_degree = monalg::prime_degree(&alg.ring, prime);
        let algebraic = BigRational::from_integer(length.into()) * &prime_degree;
        let geometric = rhs.terms[ci].contribution.clone();
        total += &algebraic;
        seen_primes.push(prime.clone());
        seen_classes.push(ci);
        terms.push(MatchedTerm {
            prime: alg.ring.format_prime(prime),
            class: class.representative.describe(&f.group),
            length,
            prime_degree,
            equal: algebraic == geometric,
            algebraic,
            geometric,
        });
    }
    let mut sp = seen_primes.clone();
    sp.sort();
    sp.dedup();
    let mut sc = seen_classes.clone();
    sc.sort();
    sc.dedup();
    let mut dsorted = dmax.clone();
    dsorted.sort();
    let bijection = dmax.len() == qmax.len()
        && sp.len() == seen_primes.len()
        && sc.len() == seen_classes.len()
        && sp == dsorted
        && sc.len() == qmax.len();
    let ok = bijection && terms.iter().all(|t| t.equal) && total == additivity.rhs;
    Ok(TermMatching {
        dmax_primes: dmax.len(),
        q_prime_max_classes: qmax.len(),
        bijection,
        terms,
        algebraic_total: total,
        additivity_rhs: additivity.rhs,
        ok,
    })
}

pub fn verify_main(f: &Fixture) -> Result<MainReport, AssembleError> {
    let series = lhs_series(f)?;
    let lhs = series.degree_at_one()?;
    let lhs_dim = series.pole_order()?;
    let cat = f.category()?;
    let max_rank = cat.max_rank();
    let rhs = rhs_degree(f)?;
    let gates = gates(f)?;
    let provenance = if gates.iter().any(|g| g.status == GateStatus::Unverified) {
        "unverified fixture"
    } else if gates.iter().any(|g| matches!(g.status, GateStatus::Verified { .. })) {
        "verified"
    } else {
        "derived"
    };
    let term_matching = match &f.algebraic {
        Some(alg) => Some(term_matching(f, alg, &rhs)?),
        None => None,
    };
    let expected_ok = match (&f.expected_lhs, &f.expected_rhs) {
        (None, None) => None,
        (l, r) => Some(l.as_ref().is_none_or(|v| *v == lhs) && r.as_ref().is_none_or(|v| *v == rhs.total)),
    };
    Ok(MainReport {
        fixture: f.name.clone(),
        p: f.p,
        group_order: f.group.order(),
        points: f.space.npoints(),
        convention: f.convention.clone(),
        equal: lhs == rhs.total,
        dim_check: lhs_dim == max_rank as i64,
        tautological: rhs.terms.iter().any(|t| t.tautological),
        lhs,
        lhs_dim,
        max_rank,
        rhs,
        provenance: provenance.to_string(),
        gates,
        term_matching,
        expected_ok,
        note: f.note.clone(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PullbackCheck {
    pub prime: String,
    pub target: String,
    pub pulled_back: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    pub fixture: String,
    pub minimal_primes: Vec<String>,
    pub q_prime_classes: Vec<String>,
    pub counts_match: bool,
    pub bijection: bool,
    pub dimensions_ok: bool,
    pub pullbacks: Vec<PullbackCheck>,
    pub ok: bool,
}

/// Minimal primes of the presented model against `Q'(G, X)` under the
/// declared matching: counts, bijectivity, `dim R/q = rank A`, and any
/// supplied restriction pullbacks.
pub fn correspondence_check(f: &Fixture) -> Result<CorrespondenceReport, AssembleError> {
    let alg = f.algebraic.as_ref().ok_or(AssembleError::MissingAlgebraicSide)?;
    let cat = f.category()?;
    let q = cat.q_prime()?;
    let mut primes = monalg::minimal_primes(&alg.ring, &alg.module)?;
    primes.sort();
    let n = alg.ring.nvars();

    let mut matched_primes = Vec::new();
    let mut matched_classes = Vec::new();
    let mut dimensions_ok = true;
    for (prime, pair) in &alg.matching {
        let class = cat.class_of(pair)?;
        match q.iter().position(|c| c.representative == class.representative) {
            Some(ci) => matched_classes.push(ci),
            None => matched_classes.push(usize::MAX),
        }
        matched_primes.push(prime.clone());
        if n - prime.vars().len() != class.rank as usize {
            dimensions_ok = false;
        }
    }
    let injective_primes = {
        let mut v = matched_primes.clone();
        v.sort();
        v.dedup();
        v.len() == matched_primes.len() && v == primes
    };
    let onto_classes = {
        let mut v = matched_classes.clone();
        v.sort();
        v.dedup();
        v.len() == matched_classes.len() && v.len() == q.len() && !v.contains(&usize::MAX)
    };
    let pullbacks: Vec<PullbackCheck> = alg
        .restrictions
        .iter()
        .map(|r| {
            let back = monalg::pullback_prime(&r.map, &r.target);
            PullbackCheck {
                prime: alg.ring.format_prime(&r.prime),
                target: r.map.target().format_prime(&r.target),
                pulled_back: alg.ring.format_prime(&back),
                ok: back == r.prime,
            }
        })
        .collect();
    let counts_match = primes.len() == q.len();
    let bijection = injective_primes && onto_classes;
    let ok = counts_match && bijection && dimensions_ok && pullbacks.iter().all(|p| p.ok);
    Ok(CorrespondenceReport {
        fixture: f.name.clone(),
        minimal_primes: primes.iter().map(|q| alg.ring.format_prime(q)).collect(),
        q_prime_classes: q.iter().map(|c| c.representative.describe(&f.group)).collect(),
        counts_match,
        bijection,
        dimensions_ok,
        pullbacks,
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohmodel::ActionSpec;
    use crate::grpcat::{catalog, Perm};
    use crate::monalg::MonIdeal;
    use num_traits::One;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn s3_point() -> Fixture {
        let g = catalog::s3();
        let x = GSet::point(&g);
        let mut f = Fixture::new("s3", g, 3, x);
        let s = SeriesExpr::from_i64(&[1, 0, 0, 1], &[4]).unwrap();
        f.global_model = Some(
            CohModel::series_only(s, 1, "invariants of Z/2 on H*(Z/3)".into(), Some(ActionSpec { gens: vec![vec![vec![-1]]], p: None }))
                .unwrap(),
        );
        f
    }

    fn d4_point() -> Fixture {
        let g = catalog::d4();
        let x = GSet::point(&g);
        let mut f = Fixture::new("d4", g, 2, x);
        let ring = WeightedRing::with_names(vec!["x".into(), "y".into(), "w".into()], vec![1, 1, 2], 2).unwrap();
        let ideal = MonIdeal::new(3, vec![vec![1, 1, 0]]).unwrap();
        f.global_model = Some(CohModel::Presented { ring: ring.clone(), ideal: ideal.clone() });
        let cat = f.category().unwrap();
        let classes = cat.q_prime_max().unwrap();
        assert_eq!(classes.len(), 2);
        let target = WeightedRing::with_names(vec!["a".into(), "b".into()], vec![1, 1], 2).unwrap();
        let map = MonRingMap::new(ring.clone(), target, vec![None, Some(vec![1, 0]), Some(vec![0, 2])]).unwrap();
        f.algebraic = Some(AlgebraicSide {
            ring,
            module: GradedModule::quotient(ideal),
            matching: vec![
                (MonPrime::new(vec![0]), classes[0].representative.clone()),
                (MonPrime::new(vec![1]), classes[1].representative.clone()),
            ],
            restrictions: vec![Restriction { prime: MonPrime::new(vec![0]), map, target: MonPrime::zero() }],
        });
        f
    }

    #[test]
    fn s3_at_three() {
        let f = s3_point();
        assert_eq!(lhs_degree(&f).unwrap(), rat(1, 2));
        let rhs = rhs_degree(&f).unwrap();
        assert_eq!(rhs.terms.len(), 1);
        assert_eq!(rhs.terms[0].weyl_order, 2);
        assert_eq!(rhs.total, rat(1, 2));
        let rep = verify_main(&f).unwrap();
        assert!(rep.equal && rep.dim_check && rep.passed());
        assert_eq!(rep.provenance, "verified");
        assert!(!rep.tautological);
    }

    #[test]
    fn d4_at_two_with_algebraic_side() {
        let f = d4_point();
        let rep = verify_main(&f).unwrap();
        assert_eq!(rep.lhs, BigRational::one());
        assert_eq!(rep.rhs.total, BigRational::one());
        assert!(rep.rhs.terms.iter().all(|t| t.weyl_order == 2 && t.contribution == rat(1, 2)));
        assert_eq!(rep.lhs_dim, 2);
        let tm = rep.term_matching.as_ref().unwrap();
        assert!(tm.ok, "{tm:?}");
        assert_eq!(tm.dmax_primes, 2);
        assert_eq!(tm.q_prime_max_classes, 2);
        assert_eq!(tm.additivity_rhs, BigRational::one());
        assert!(rep.passed());

        let corr = correspondence_check(&f).unwrap();
        assert!(corr.ok, "{corr:?}");
        assert_eq!(corr.minimal_primes, vec!["(x)", "(y)"]);
    }

    #[test]
    fn wrong_matching_is_reported() {
        let mut f = d4_point();
        let alg = f.algebraic.as_mut().unwrap();
        let first = alg.matching[0].1.clone();
        alg.matching[1].1 = first;
        let corr = correspondence_check(&f).unwrap();
        assert!(!corr.bijection && !corr.ok);
        let rep = verify_main(&f).unwrap();
        assert!(!rep.term_matching.unwrap().ok);

        let mut f = d4_point();
        f.algebraic.as_mut().unwrap().restrictions[0].target = MonPrime::new(vec![0]);
        assert!(!correspondence_check(&f).unwrap().ok);

        assert_eq!(correspondence_check(&s3_point()).unwrap_err(), AssembleError::MissingAlgebraicSide);
    }

    #[test]
    fn a4_at_two() {
        let g = catalog::a4();
        let x = GSet::point(&g);
        let mut f = Fixture::new("a4", g, 2, x);
        let s = SeriesExpr::from_i64(&[1, 0, 0, 1], &[2, 3]).unwrap();
        f.global_model =
            Some(CohModel::series_only(s, 2, String::new(), Some(ActionSpec { gens: vec![vec![vec![0, 1], vec![1, 1]]], p: None })).unwrap());
        let rep = verify_main(&f).unwrap();
        assert_eq!(rep.lhs, rat(1, 3));
        assert_eq!(rep.rhs.total, rat(1, 3));
        assert_eq!(rep.rhs.terms[0].weyl_order, 3);
        assert!(rep.passed());
    }

    #[test]
    fn s3_on_cosets_and_free_orbit() {
        let g = catalog::s3();
        let a3 = g.subgroup_generated(&[Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap()]).unwrap();
        let x = GSet::cosets(&g, &a3).union(&GSet::free(&g, 1));
        let f = Fixture::new("s3-mixed", g, 3, x);
        let rep = verify_main(&f).unwrap();
        assert_eq!(rep.lhs, BigRational::one());
        assert_eq!(rep.rhs.total, BigRational::one());
        assert_eq!(rep.rhs.terms.len(), 1);
        assert_eq!(rep.rhs.terms[0].weyl_order, 1);
        assert!(rep.passed());
        assert_eq!(rep.provenance, "derived");
    }

    #[test]
    fn tautological_cases() {
        for (g, p) in [(catalog::elementary(2, 3), 2), (catalog::elementary(3, 2), 3), (catalog::s3(), 5)] {
            let x = GSet::point(&g);
            let f = Fixture::new("t", g, p, x);
            let rep = verify_main(&f).unwrap();
            assert!(rep.passed());
            assert!(rep.tautological);
            assert_eq!(rep.lhs, BigRational::one());
        }
    }

    #[test]
    fn q8_needs_a_model() {
        let g = catalog::q8();
        let x = GSet::point(&g);
        let mut f = Fixture::new("q8", g, 2, x);
        assert!(matches!(verify_main(&f), Err(AssembleError::MissingModel(_))));
        let s = SeriesExpr::from_i64(&[1, 2, 2, 1], &[4]).unwrap();
        let m = CohModel::series_only(s, 1, String::new(), None).unwrap();
        f.global_model = Some(m.clone());
        f.centralizer_models.push((ClassSelector::Rank(1), m));
        let rep = verify_main(&f).unwrap();
        assert_eq!(rep.lhs, rat(3, 2));
        assert!(rep.equal && rep.tautological);
        assert_eq!(rep.provenance, "unverified fixture");
    }

    #[test]
    fn rhs_independent_of_representative() {
        let f = d4_point();
        let a = rhs_degree_using(&f, |c| &c.representative).unwrap();
        let b = rhs_degree_using(&f, |c| c.members.last().unwrap()).unwrap();
        assert_eq!(a.total, b.total);
    }

    #[test]
    fn expected_values_are_compared() {
        let mut f = s3_point();
        f.expected_lhs = Some(rat(1, 2));
        f.expected_rhs = Some(rat(1, 3));
        let rep = verify_main(&f).unwrap();
        assert_eq!(rep.expected_ok, Some(false));
        assert!(!rep.passed());
    }
}
