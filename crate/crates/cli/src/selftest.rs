//! The bundled corpus: curated fixture files plus seeded random suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::json;

use qdx_core::corpus;
use qdx_core::grpcat::{catalog, GSet, PermGroup, QuillenCategory};
use qdx_core::monalg::{self, GradedModule};
use qdx_core::series::SeriesExpr;

use crate::commands::{self, oracle_one, verify_records, wmod_suite};
use crate::lang::{self, Env};
use crate::{CliError, Outcome, Record};

pub const FILES: &[(&str, &str)] = &[
    ("main.qdx", include_str!("../corpus/main.qdx")),
    ("algebra.qdx", include_str!("../corpus/algebra.qdx")),
];

pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn main_env() -> Env {
    lang::parse(file("main.qdx").expect("bundled")).expect("bundled corpus parses")
}

pub fn algebra_env() -> Env {
    lang::parse(file("algebra.qdx").expect("bundled")).expect("bundled corpus parses")
}

struct Builtin {
    name: &'static str,
    note: &'static str,
}

const BUILTINS: &[Builtin] = &[
    Builtin {
        name: "algebra/curated",
        note: "k[x,y]/(xy) at weights (1,1) and (1,2), k[x,y]/(x^2 y), a shifted sum and an Artinian quotient; values by hand count of standard monomials",
    },
    Builtin { name: "oracle/hilbert", note: "50 seeded random monomial quotients against enumeration to degree 20, plus vertex-cover dimension and additivity" },
    Builtin { name: "series/random", note: "100 seeded random series: pole additivity, degree multiplicativity, shift invariance, numeric limit at 1 - 10^-6" },
    Builtin { name: "wmod/random", note: "20 seeded induced modules: freeness, invariants, length identity, tensor-length lemma" },
    Builtin { name: "groups/sanity", note: "D4 rank-2 classes and Weyl orders, S3 at p=3, maximality criteria on catalog groups" },
];

pub fn list() -> Outcome {
    let mut records = Vec::new();
    for f in main_env().fixtures() {
        let name = format!("fixture/{}", f.name);
        records.push(Record { human: format!("{name}: {}", f.note), machine: json!({"command": "selftest", "case": name, "note": f.note}) });
    }
    for b in BUILTINS {
        records.push(Record { human: format!("{}: {}", b.name, b.note), machine: json!({"command": "selftest", "case": b.name, "note": b.note}) });
    }
    Outcome { records, ok: true }
}

fn case(name: &str, seed: u64, failures: Vec<String>) -> Record {
    let ok = failures.is_empty();
    let mut human = format!("{name}: {}", if ok { "ok" } else { "FAILED" });
    for f in &failures {
        human.push_str(&format!("\n  {f}"));
    }
    Record { human, machine: json!({"command": "selftest", "case": name, "seed": seed, "ok": ok, "failures": failures}) }
}

pub fn run(seed: u64, bound: usize) -> Result<Outcome, CliError> {
    let mut records = Vec::new();
    let env = lang::parse_with_bound(file("main.qdx").expect("bundled"), bound)?;
    let verified = verify_records(&env, None)?;
    for (f, r) in env.fixtures().iter().zip(&verified.records) {
        let passed = r.machine["passed"].as_bool().unwrap_or(false);
        let failures = if passed { Vec::new() } else { vec![r.human.clone()] };
        records.push(case(&format!("fixture/{}", f.name), seed, failures));
    }
    records.push(case("algebra/curated", seed, curated_algebra()?));
    records.push(case("oracle/hilbert", seed, random_oracle(seed, 50)?));
    records.push(case("series/random", seed, series_properties(seed, 100)));
    records.push(case("wmod/random", seed, wmod_suite(seed, 20)?.failures));
    records.push(case("groups/sanity", seed, group_sanity()?));
    let ok = records.iter().all(|r| r.machine["ok"].as_bool() == Some(true));
    let summary = format!("selftest seed {seed}: {} cases, {}", records.len(), if ok { "all passed" } else { "FAILURES" });
    records.push(Record { human: summary, machine: json!({"command": "selftest", "seed": seed, "cases": records.len(), "ok": ok}) });
    Ok(Outcome { records, ok })
}

fn curated_algebra() -> Result<Vec<String>, CliError> {
    let env = algebra_env();
    let mut failures = Vec::new();
    let degrees = [("XY", "2"), ("XY12", "3/2"), ("X2Y", "3"), ("SUM", "5"), ("D4", "1")];
    for (name, want) in degrees {
        let (ring, m) = env.module(name).expect("declared");
        let got = monalg::degree_of(ring, &m).map_err(commands::alg)?;
        if got.to_string() != want {
            failures.push(format!("{name}: degree {got}, expected {want}"));
        }
        let rep = monalg::additivity_report(ring, &m).map_err(commands::alg)?;
        if !rep.equal {
            failures.push(format!("{name}: additivity {} != {}", rep.lhs, rep.rhs));
        }
    }
    let (ring, m) = env.module("ART").expect("declared");
    let len = monalg::module_length(ring, &m).map_err(commands::alg)?;
    if len != 8 {
        failures.push(format!("ART: length {len}, expected 8"));
    }
    Ok(failures)
}

fn random_oracle(seed: u64, count: usize) -> Result<Vec<String>, CliError> {
    let mut failures = Vec::new();
    for (k, inst) in corpus::quotient_corpus(seed, count).iter().enumerate() {
        if let Some(f) = oracle_one(&inst.ring, &GradedModule::quotient(inst.ideal.clone()), 20)? {
            failures.push(format!("#{k}: {f}"));
        }
    }
    Ok(failures)
}

/// Checks the engine identities on one pair of series; `None` if all hold.
pub fn series_identities(a: &SeriesExpr, b: &SeriesExpr, shift: u32) -> Option<String> {
    let (pa, pb) = (a.pole_order().ok()?, b.pole_order().ok()?);
    let (da, db) = (a.degree_at_one().ok()?, b.degree_at_one().ok()?);
    let prod = a.mul(b);
    if prod.pole_order().ok()? != pa + pb {
        return Some(format!("pole order not additive for {a} and {b}"));
    }
    if prod.degree_at_one().ok()? != &da * &db {
        return Some(format!("degree not multiplicative for {a} and {b}"));
    }
    let s = a.shift(shift);
    if s.degree_at_one().ok()? != da || s.pole_order().ok()? != pa {
        return Some(format!("shift by {shift} changes the degree of {a}"));
    }
    let tau = BigRational::new(BigInt::from(999_999), BigInt::from(1_000_000));
    let approx = a.scaled_eval(&tau).ok()?.to_f64()?;
    let exact = da.to_f64()?;
    if (approx - exact).abs() >= 1e-3 {
        return Some(format!("numeric limit {approx} far from degree {exact} for {a}"));
    }
    None
}

pub fn positivity(a: &SeriesExpr, d: usize) -> bool {
    !a.has_nonnegative_numerator()
        || (a.expand(d).iter().all(|c| !c.is_negative()) && a.degree_at_one().map(|x| x.is_positive()).unwrap_or(false))
}

fn series_properties(seed: u64, count: usize) -> Vec<String> {
    let mut rng = corpus::rng(seed);
    let mut failures = Vec::new();
    for k in 0..count {
        let a = corpus::random_series(&mut rng);
        let b = corpus::random_series(&mut rng);
        let c = corpus::random_nonnegative_series(&mut rng);
        if let Some(f) = series_identities(&a, &b, (k % 5) as u32) {
            failures.push(format!("#{k}: {f}"));
        }
        if !positivity(&c, 30) {
            failures.push(format!("#{k}: {c} has negative coefficients or degree"));
        }
    }
    failures
}

pub fn fixture_groups() -> Vec<(&'static str, PermGroup, Vec<u32>)> {
    vec![
        ("S3", catalog::s3(), vec![2, 3]),
        ("D4", catalog::d4(), vec![2]),
        ("A4", catalog::a4(), vec![2, 3]),
        ("S4", catalog::s4(), vec![2, 3]),
        ("Q8", catalog::q8(), vec![2]),
        ("Z/2xZ/2", catalog::klein(), vec![2]),
        ("(Z/3)^3", catalog::elementary(3, 3), vec![3]),
    ]
}

fn group_sanity() -> Result<Vec<String>, CliError> {
    let mut failures = Vec::new();
    let d4 = catalog::d4();
    let pt = GSet::point(&d4);
    let cat = QuillenCategory::new(&d4, 2, &pt).map_err(commands::grp)?;
    let rank2: Vec<_> = cat.classes().into_iter().filter(|c| c.rank == 2).collect();
    if rank2.len() != 2 || rank2.iter().any(|c| cat.weyl_order(&c.representative) != 2) {
        failures.push("D4: expected two rank-2 classes with |W| = 2".to_string());
    }
    let s3 = catalog::s3();
    let pt = GSet::point(&s3);
    let cat = QuillenCategory::new(&s3, 3, &pt).map_err(commands::grp)?;
    let top = cat.q_prime_max().map_err(commands::grp)?;
    if top.len() != 1 || cat.weyl_order(&top[0].representative) != 2 {
        failures.push("S3 at p=3: expected one class with |W| = 2".to_string());
    }
    for (name, g, primes) in fixture_groups() {
        let spaces = [GSet::point(&g), GSet::point(&g).union(&GSet::free(&g, 1))];
        for p in primes {
            for x in &spaces {
                let cat = QuillenCategory::new(&g, p, x).map_err(commands::grp)?;
                for pair in cat.pairs() {
                    if cat.is_maximal_categorical(pair) != cat.is_maximal_stabilizer(pair) {
                        failures.push(format!("{name} p={p}: criteria disagree on {}", pair.describe(&g)));
                    }
                }
            }
        }
    }
    Ok(failures)
}
