use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use qdx_core::cohmodel::{self, CohModel, LinearWAction};
use qdx_core::grpcat::{catalog, elementary_abelians, GSet, PermGroup, QuillenCategory};
use qdx_core::monalg::{self, GradedModule, MonIdeal, MonPrime, WeightedRing};
use qdx_core::series::SeriesExpr;
use qdx_core::wmod::{tensor_length, BaseModule, InducedModule};

fn series_strategy() -> impl Strategy<Value = SeriesExpr> {
    (prop::collection::vec(-5i64..=5, 1..7), prop::collection::vec(1u32..=3, 0..4))
        .prop_filter_map("zero numerator", |(num, w)| {
            let s = SeriesExpr::from_i64(&num, &w).unwrap();
            (!s.is_zero()).then_some(s)
        })
}

fn nonneg_series() -> impl Strategy<Value = SeriesExpr> {
    (prop::collection::vec(0i64..=5, 1..7), prop::collection::vec(1u32..=3, 0..4))
        .prop_filter_map("zero numerator", |(num, w)| {
            let s = SeriesExpr::from_i64(&num, &w).unwrap();
            (!s.is_zero()).then_some(s)
        })
}

fn quotient_strategy(max_vars: usize) -> impl Strategy<Value = (WeightedRing, MonIdeal)> {
    (1..=max_vars).prop_flat_map(|n| {
        (
            prop::collection::vec(1u32..=3, n),
            prop::collection::vec(prop::collection::vec(0u32..=3, n), 0..6),
        )
            .prop_map(move |(w, gens)| {
                let gens: Vec<Vec<u32>> = gens.into_iter().filter(|g| g.iter().any(|&e| e > 0)).collect();
                (WeightedRing::new(w, 2).unwrap(), MonIdeal::new(n, gens).unwrap())
            })
    })
}

fn to_u64(v: Vec<BigInt>) -> Vec<u64> {
    v.into_iter().map(|c| u64::try_from(c).unwrap()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pole_order_adds_under_product(a in series_strategy(), b in series_strategy()) {
        let prod = a.mul(&b);
        prop_assert_eq!(prod.pole_order().unwrap(), a.pole_order().unwrap() + b.pole_order().unwrap());
        prop_assert_eq!(prod.degree_at_one().unwrap(), a.degree_at_one().unwrap() * b.degree_at_one().unwrap());
    }

    #[test]
    fn shift_keeps_degree(a in series_strategy(), k in 0u32..6) {
        let s = a.shift(k);
        prop_assert_eq!(s.pole_order().unwrap(), a.pole_order().unwrap());
        prop_assert_eq!(s.degree_at_one().unwrap(), a.degree_at_one().unwrap());
        let e = a.expand(10);
        let es = s.expand(10 + k as usize);
        prop_assert!(es[..k as usize].iter().all(|c| c.is_zero()));
        prop_assert_eq!(&es[k as usize..], &e[..]);
    }

    #[test]
    fn normalize_keeps_expansion(a in series_strategy()) {
        let n = a.normalize();
        prop_assert_eq!(n.expand(25), a.expand(25));
        prop_assert!(n.weights().windows(2).all(|w| w[0] <= w[1]));
        prop_assert_eq!(n.normalize(), n);
    }

    #[test]
    fn sum_expands_coefficientwise(a in series_strategy(), b in series_strategy()) {
        let s = a.add(&b);
        let ea = a.expand(15);
        let eb = b.expand(15);
        let expected: Vec<BigInt> = ea.iter().zip(&eb).map(|(x, y)| x + y).collect();
        prop_assert_eq!(s.expand(15), expected);
        prop_assert_eq!(a.sub(&a).expand(15), vec![BigInt::zero(); 16]);
    }

    #[test]
    fn nonnegative_series_are_positive(a in nonneg_series()) {
        prop_assert!(a.expand(20).iter().all(|c| !c.is_negative()));
        prop_assert!(a.degree_at_one().unwrap().is_positive());
    }

    #[test]
    fn display_round_trips(a in series_strategy()) {
        let back: SeriesExpr = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn hilbert_series_matches_enumeration((ring, ideal) in quotient_strategy(4)) {
        let s = monalg::hilbert_series(&ring, &ideal);
        prop_assert_eq!(to_u64(s.expand(12)), monalg::hilbert_brute(&ring, &ideal, 12).unwrap());
    }

    #[test]
    fn krull_dim_is_cover_dimension((ring, ideal) in quotient_strategy(5)) {
        let m = GradedModule::quotient(ideal);
        prop_assert_eq!(monalg::krull_dim(&ring, &m).unwrap(), monalg::cover_dimension(&ring, &m).unwrap());
    }

    #[test]
    fn additivity_on_direct_sums(
        (ring, i) in quotient_strategy(4),
        extra in prop::collection::vec(prop::collection::vec(0u32..=3, 4), 0..3),
        shift in 0u32..4,
    ) {
        let n = ring.nvars();
        let j = MonIdeal::new(n, extra.into_iter().map(|g| g[..n].to_vec()).filter(|g| g.iter().any(|&e| e > 0)).collect()).unwrap();
        let m = GradedModule::new(vec![(0, i), (shift, j)]);
        let rep = monalg::additivity_report(&ring, &m).unwrap();
        prop_assert!(rep.equal);
        prop_assert_eq!(rep.lhs, monalg::degree_of(&ring, &m).unwrap());
        for q in monalg::minimal_primes(&ring, &m).unwrap() {
            prop_assert!(monalg::local_length(&ring, &m, &q).unwrap() >= 1);
        }
    }

    #[test]
    fn shifting_keeps_degree((ring, i) in quotient_strategy(4), shift in 0u32..5) {
        let a = GradedModule::quotient(i.clone());
        let b = GradedModule::new(vec![(shift, i)]);
        prop_assert_eq!(monalg::degree_of(&ring, &a).unwrap(), monalg::degree_of(&ring, &b).unwrap());
    }

    #[test]
    fn lengths_add_over_sums(e1 in 1u32..5, e2 in 1u32..5, w in 1u32..3) {
        let ring = WeightedRing::new(vec![w, 1], 2).unwrap();
        let i = MonIdeal::new(2, vec![vec![e1, 0], vec![0, e2]]).unwrap();
        let m = GradedModule::quotient(i.clone());
        let len = monalg::module_length(&ring, &m).unwrap();
        prop_assert_eq!(len, (e1 * e2) as u64);
        let doubled = m.direct_sum(&GradedModule::new(vec![(3, i)]));
        prop_assert_eq!(monalg::module_length(&ring, &doubled).unwrap(), 2 * len);
    }
}

fn group_strategy() -> impl Strategy<Value = (PermGroup, u32)> {
    prop::sample::select(vec![
        (catalog::s3(), 2),
        (catalog::s3(), 3),
        (catalog::d4(), 2),
        (catalog::a4(), 2),
        (catalog::a4(), 3),
        (catalog::s4(), 2),
        (catalog::s4(), 3),
        (catalog::q8(), 2),
        (catalog::klein(), 2),
        (PermGroup::cyclic(6), 2),
        (PermGroup::cyclic(6), 3),
    ])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn elementary_abelians_closed_under_conjugation((g, p) in group_strategy()) {
        let subs = elementary_abelians(&g, p).unwrap();
        for a in &subs {
            prop_assert!(a.is_elementary_abelian(&g, p));
            for x in 0..g.order() {
                prop_assert!(subs.contains(&g.conjugate_subgroup(x, a)));
            }
        }
    }

    #[test]
    fn quillen_invariants((g, p) in group_strategy(), free_copies in 0usize..2) {
        let x = GSet::point(&g).union(&GSet::free(&g, free_copies));
        let cat = QuillenCategory::new(&g, p, &x).unwrap();
        for pair in cat.pairs() {
            prop_assert_eq!(cat.is_maximal_categorical(pair), cat.is_maximal_stabilizer(pair));
            let w = cat.weyl_order(pair);
            prop_assert_eq!(g.order() % w, 0);
            prop_assert!(cat.is_subconjugate(pair, pair));
        }
        let classes = cat.classes();
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(total, cat.pairs().len());
        let top = cat.q_prime_max().unwrap();
        prop_assert!(top.iter().all(|c| c.rank == cat.max_rank()));
    }

    #[test]
    fn trivial_action_gives_full_ring(r in 1u32..=3, p in prop::sample::select(vec![2u32, 3, 5])) {
        let inv = cohmodel::invariant_truncation(&LinearWAction::trivial(r, p), 10).unwrap();
        let full = cohmodel::model_series(&CohModel::ElementaryAbelian { rank: r, p }).expand(10);
        prop_assert_eq!(inv, to_u64(full));
        prop_assert_eq!(cohmodel::model_degree(&CohModel::ElementaryAbelian { rank: r, p }).unwrap(), BigRational::one());
    }

    #[test]
    fn induced_module_identities(
        gi in 0usize..4,
        t in 1usize..=4,
        dims in prop::collection::vec(0u64..4, 1..5),
        p in prop::sample::select(vec![2u32, 3]),
    ) {
        let groups = [PermGroup::cyclic(2), PermGroup::cyclic(3), catalog::s3(), catalog::klein()];
        let w = groups[gi].clone();
        let base = BaseModule::from_dims(dims.clone());
        let m = InducedModule::regular(w.clone(), t, base, p);
        prop_assert!(m.check_free(dims.len()).unwrap());
        let inv = m.invariants_dims(dims.len() - 1);
        let expected: Vec<u64> = dims.iter().map(|d| t as u64 * d).collect();
        prop_assert_eq!(inv, expected);
        let li = m.length_identity().unwrap();
        prop_assert!(li.ok);
        prop_assert_eq!(li.l_p, w.order() as u64 * li.l_pw);
        prop_assert_eq!(tensor_length(3, &dims), 3 * dims.iter().sum::<u64>());
    }
}

#[test]
fn non_minimal_primes_are_rejected() {
    let ring = WeightedRing::new(vec![1, 1], 2).unwrap();
    let m = GradedModule::quotient(MonIdeal::new(2, vec![vec![1, 1]]).unwrap());
    assert!(monalg::local_length(&ring, &m, &MonPrime::new(vec![0, 1])).is_err());
}
