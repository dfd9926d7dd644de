//! Acceptance gate. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use qdx_cli::selftest;
use qdx_core::assemble;
use qdx_core::cohmodel::{CohModel, GateStatus};
use qdx_core::corpus;
use qdx_core::grpcat::{catalog, GSet, PermGroup, QuillenCategory, QuillenPair};
use qdx_core::monalg::{self, GradedModule, MonIdeal, WeightedRing};
use qdx_core::series::SeriesExpr;
use qdx_core::wmod::{explicit_composition_length, tensor_length, InducedModule};

const SEED: u64 = 20240501;

type Outcome = Result<String, String>;
type Case = (String, PermGroup, u32, GSet);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Smallest set of variables meeting the support of every generator, found
/// by trying subsets in order of size.
fn min_vertex_cover(ideal: &MonIdeal) -> usize {
    let n = ideal.nvars();
    let supports: Vec<u32> = ideal
        .generators()
        .iter()
        .map(|g| g.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u32, |m, (i, _)| m | (1 << i)))
        .collect();
    (0u32..(1 << n))
        .filter(|s| supports.iter().all(|g| g & s != 0))
        .map(|s| s.count_ones() as usize)
        .min()
        .expect("the full variable set is a cover")
}

fn series_matches_brute(ring: &WeightedRing, ideal: &MonIdeal, d: usize) -> Result<(), String> {
    let expanded = monalg::hilbert_series(ring, ideal).expand(d);
    let brute = monalg::hilbert_brute(ring, ideal, d as u64).map_err(|e| e.to_string())?;
    let same = expanded.len() == brute.len() && expanded.iter().zip(&brute).all(|(a, b)| *a == BigInt::from(*b));
    check(same, || format!("{:?} over {:?}: {expanded:?} vs {brute:?}", ideal.generators(), ring.weights()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let instances = corpus::quotient_corpus(SEED, 200);
    for inst in &instances {
        series_matches_brute(&inst.ring, &inst.ideal, 20)?;
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("200 quotients to degree 20 in {took:.2?}"))
}

fn criterion_2() -> Outcome {
    for inst in corpus::quotient_corpus(SEED, 200) {
        let pole = monalg::hilbert_series(&inst.ring, &inst.ideal).pole_order().map_err(|e| e.to_string())?;
        let expected = inst.ring.nvars() as i64 - min_vertex_cover(&inst.ideal) as i64;
        check(pole == expected, || format!("{:?}: pole {pole}, n - cover {expected}", inst.ideal.generators()))?;
    }
    Ok("200 quotients".into())
}

fn criterion_3() -> Outcome {
    for inst in corpus::quotient_corpus(SEED, 200) {
        let m = GradedModule::quotient(inst.ideal.clone());
        let rep = monalg::additivity_report(&inst.ring, &m).map_err(|e| e.to_string())?;
        check(rep.equal, || format!("{:?}: {} vs {}", inst.ideal.generators(), rep.lhs, rep.rhs))?;
    }
    let trio: [(&[u32], &[u32], BigRational); 3] = [
        (&[1, 1], &[1, 1], BigRational::from_integer(2.into())),
        (&[1, 2], &[1, 1], BigRational::new(3.into(), 2.into())),
        (&[1, 1], &[2, 1], BigRational::from_integer(3.into())),
    ];
    for (w, gen, want) in trio {
        let ring = WeightedRing::new(w.to_vec(), 2).map_err(|e| e.to_string())?;
        let m = GradedModule::quotient(MonIdeal::new(2, vec![gen.to_vec()]).map_err(|e| e.to_string())?);
        let rep = monalg::additivity_report(&ring, &m).map_err(|e| e.to_string())?;
        check(rep.equal && rep.lhs == want && rep.rhs == want, || format!("{gen:?} at {w:?}: {} vs {} (want {want})", rep.lhs, rep.rhs))?;
    }
    Ok("200 random quotients plus 2, 3/2, 3".into())
}

fn criterion_4() -> Outcome {
    let instances = corpus::wmod_corpus(SEED, 100);
    let mut tensor = 0;
    for (k, inst) in instances.iter().enumerate() {
        let label = format!("#{k} {} t={}", inst.group_name, inst.orbits);
        check(inst.orbits <= 4 && inst.base.length().is_some_and(|l| l <= 20), || format!("{label}: out of range"))?;
        let top = inst.base.dims().len();
        let m = InducedModule::regular(inst.group.clone(), inst.orbits, inst.base.clone(), inst.p);
        check(m.check_free(top).map_err(|e| e.to_string())?, || format!("{label}: not free"))?;
        let inv = m.invariants_dims(top);
        let want: Vec<u64> = (0..=top).map(|d| inst.orbits as u64 * inst.base.dim(d)).collect();
        check(inv == want, || format!("{label}: invariants {inv:?}, expected {want:?}"))?;
        let li = m.length_identity().map_err(|e| e.to_string())?;
        let total: u64 = m.total_dims(top).iter().sum();
        check(li.ok && li.l_p == total && li.l_p == li.w_order * li.l_pw, || format!("{label}: {li:?}"))?;
        if k < 50 {
            let v_dims: Vec<u64> = (0..=(k % 3)).map(|i| ((k + i) % 3) as u64 + 1).collect();
            let explicit = explicit_composition_length(&inst.ring, &inst.ideal, &v_dims).map_err(|e| e.to_string())?;
            let len = inst.base.length().expect("Artinian");
            let lemma = tensor_length(len, &v_dims);
            check(explicit == lemma && lemma == len * v_dims.iter().sum::<u64>(), || {
                format!("{label}: tensor length {explicit} vs {lemma}")
            })?;
            tensor += 1;
        }
    }
    Ok(format!("100 induced modules, {tensor} tensor-length checks"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let env = selftest::main_env();
    let fixtures = env.fixtures();
    let want: &[(&str, &str)] = &[
        ("s3_point", "1/2"),
        ("d4_point", "1"),
        ("a4_point", "1/3"),
        ("s3_cosets_and_free", "1"),
        ("elemab_rank1", "1"),
        ("elemab_rank2", "1"),
        ("elemab_rank3", "1"),
        ("coprime_order", "1"),
    ];
    for (name, value) in want {
        let f = fixtures.iter().find(|f| f.name == *name).ok_or_else(|| format!("{name} missing"))?;
        let rep = assemble::verify_main(f).map_err(|e| e.to_string())?;
        check(rep.equal && rep.dim_check && rep.passed(), || format!("{name}: {rep:?}"))?;
        check(rep.lhs.to_string() == *value && rep.rhs.total.to_string() == *value, || {
            format!("{name}: {} = {}, expected {value}", rep.lhs, rep.rhs.total)
        })?;
        if *name == "a4_point" {
            check(rep.provenance == "verified", || format!("a4_point gate: {:?}", rep.gates))?;
            let gate = f.global_model.as_ref().expect("global model").gate(f.p, assemble::GATE_DEGREE).map_err(|e| e.to_string())?;
            check(matches!(gate, GateStatus::Verified { max_degree: 40 }), || format!("a4_point gate {gate:?}"))?;
        }
        if *name == "coprime_order" {
            check(rep.tautological, || "coprime_order not flagged tautological".into())?;
        }
        if *name == "d4_point" {
            let Some(CohModel::Presented { ring, ideal }) = &f.global_model else {
                return Err("d4_point has no presented model".into());
            };
            series_matches_brute(ring, ideal, 20)?;
            let pole = monalg::hilbert_series(ring, ideal).pole_order().map_err(|e| e.to_string())?;
            check(pole == ring.nvars() as i64 - min_vertex_cover(ideal) as i64, || "D4 presented pole order".into())?;
        }
    }
    let took = start.elapsed();
    check(took < Duration::from_secs(30), || format!("took {took:?}"))?;
    Ok(format!("{} fixtures in {took:.2?}", want.len()))
}

fn criterion_6() -> Outcome {
    let env = selftest::main_env();
    let with_side: Vec<_> = env.fixtures().into_iter().filter(|f| f.algebraic.is_some()).collect();
    check(with_side.iter().any(|f| f.name == "d4_point"), || "no D4 fixture with an algebraic side".into())?;
    for f in &with_side {
        let corr = assemble::correspondence_check(f).map_err(|e| e.to_string())?;
        check(corr.ok && corr.bijection && corr.counts_match, || format!("{}: {corr:?}", f.name))?;
        let rep = assemble::verify_main(f).map_err(|e| e.to_string())?;
        let tm = rep.term_matching.ok_or_else(|| format!("{}: no term matching", f.name))?;
        if f.name == "d4_point" {
            check(tm.dmax_primes == 2 && tm.q_prime_max_classes == 2, || format!("d4_point: {} primes, {} classes", tm.dmax_primes, tm.q_prime_max_classes))?;
        }
        check(tm.ok && tm.terms.iter().all(|t| t.equal && t.algebraic == t.geometric), || format!("{}: {tm:?}", f.name))?;
        check(tm.algebraic_total == rep.rhs.total && tm.additivity_rhs == rep.lhs, || format!("{}: totals differ", f.name))?;
    }
    Ok(format!("{} fixture(s), |D| = |Q'max| = 2 for D4", with_side.len()))
}

/// `(1 - tau)^pole * s(tau)` in floating point: divide the numerator by
/// `(1 - t)` until the remainder is nonzero, then each `(1 - t)/(1 - t^w)`
/// becomes `1/(1 + t + ... + t^(w-1))`.
fn float_limit(s: &SeriesExpr, tau: f64) -> f64 {
    let mut q: Vec<BigInt> = s.numerator().to_vec();
    loop {
        let total: BigInt = q.iter().sum();
        if !total.is_zero() || q.len() < 2 {
            break;
        }
        let mut acc = BigInt::zero();
        let mut next = Vec::with_capacity(q.len() - 1);
        for c in &q[..q.len() - 1] {
            acc += c;
            next.push(acc.clone());
        }
        q = next;
    }
    let top: f64 = q.iter().rev().fold(0.0, |acc, c| acc * tau + c.to_f64().expect("small"));
    s.weights().iter().fold(top, |acc, &w| acc / (0..w).map(|i| tau.powi(i as i32)).sum::<f64>())
}

fn criterion_7() -> Outcome {
    let mut rng = corpus::rng(SEED);
    let tau = BigRational::new(BigInt::from(999_999), BigInt::from(1_000_000));
    for k in 0..500 {
        let a = corpus::random_series(&mut rng);
        let b = corpus::random_series(&mut rng);
        let c = corpus::random_nonnegative_series(&mut rng);
        let err = |e: qdx_core::series::SeriesError| e.to_string();
        let prod = a.mul(&b);
        check(prod.pole_order().map_err(err)? == a.pole_order().map_err(err)? + b.pole_order().map_err(err)?, || format!("#{k}: pole of {a} * {b}"))?;
        check(prod.degree_at_one().map_err(err)? == a.degree_at_one().map_err(err)? * b.degree_at_one().map_err(err)?, || format!("#{k}: degree of {a} * {b}"))?;
        let shifted = a.shift((k % 7) as u32);
        check(shifted.degree_at_one().map_err(err)? == a.degree_at_one().map_err(err)?, || format!("#{k}: shift of {a}"))?;
        check(shifted.pole_order().map_err(err)? == a.pole_order().map_err(err)?, || format!("#{k}: shift pole of {a}"))?;
        check(c.expand(30).iter().all(|x| !x.is_negative()) && c.degree_at_one().map_err(err)?.is_positive(), || format!("#{k}: positivity of {c}"))?;
        let exact = a.degree_at_one().map_err(err)?.to_f64().expect("finite");
        let float = float_limit(&a, 1.0 - 1e-6);
        let rational = a.scaled_eval(&tau).map_err(err)?.to_f64().expect("finite");
        check((float - exact).abs() < 1e-3 && (rational - exact).abs() < 1e-3, || {
            format!("#{k}: {a} limit {float} / {rational} vs degree {exact}")
        })?;
    }
    Ok("500 series, numeric limit within 1e-3".into())
}

/// `|N|/|C|` by direct search over group elements, for `X` a point.
fn weyl_by_search(g: &PermGroup, pair: &QuillenPair) -> usize {
    let a = pair.a.elements();
    let normal = (0..g.order()).filter(|&x| a.iter().all(|&y| pair.a.contains(g.conj(x, y)))).count();
    let central = (0..g.order()).filter(|&x| a.iter().all(|&y| g.commute(x, y))).count();
    normal / central
}

fn criterion_8() -> Outcome {
    let err = |e: qdx_core::grpcat::GroupError| e.to_string();
    let d4 = catalog::d4();
    let pt = GSet::point(&d4);
    let cat = QuillenCategory::new(&d4, 2, &pt).map_err(err)?;
    let rank2: Vec<_> = cat.classes().into_iter().filter(|c| c.rank == 2).collect();
    check(rank2.len() == 2, || format!("D4: {} rank-2 classes", rank2.len()))?;
    for c in &rank2 {
        let w = cat.weyl_order(&c.representative);
        check(w == 2 && weyl_by_search(&d4, &c.representative) == 2, || format!("D4: |W| = {w}"))?;
    }
    let s3 = catalog::s3();
    let pt = GSet::point(&s3);
    let cat = QuillenCategory::new(&s3, 3, &pt).map_err(err)?;
    let top = cat.q_prime_max().map_err(err)?;
    check(top.len() == 1, || format!("S3: {} top classes", top.len()))?;
    let w = cat.weyl_order(&top[0].representative);
    check(w == 2 && weyl_by_search(&s3, &top[0].representative) == 2, || format!("S3: |W| = {w}"))?;

    let mut cases: Vec<Case> = Vec::new();
    for (name, g, primes) in selftest::fixture_groups() {
        for p in primes {
            cases.push((name.to_string(), g.clone(), p, GSet::point(&g)));
            cases.push((name.to_string(), g.clone(), p, GSet::point(&g).union(&GSet::free(&g, 1))));
        }
    }
    let env = selftest::main_env();
    for f in env.fixtures() {
        cases.push((f.name.clone(), f.group.clone(), f.p, f.space.clone()));
    }
    let mut pairs = 0;
    for (name, g, p, x) in &cases {
        check(g.order() <= 200, || format!("{name}: order {}", g.order()))?;
        let cat = QuillenCategory::new(g, *p, x).map_err(err)?;
        for pair in cat.pairs() {
            pairs += 1;
            check(cat.is_maximal_categorical(pair) == cat.is_maximal_stabilizer(pair), || {
                format!("{name} p={p}: criteria disagree on {}", pair.describe(g))
            })?;
        }
    }
    Ok(format!("{} group/space cases, {pairs} pairs, 0 mismatches", cases.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("hilbert oracle equivalence", criterion_1),
        ("dimension coherence", criterion_2),
        ("algebraic additivity", criterion_3),
        ("W-module suite", criterion_4),
        ("degree formula fixtures", criterion_5),
        ("prime/pair correspondence", criterion_6),
        ("series engine properties", criterion_7),
        ("group engine sanity", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} ({name}): PASS ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
