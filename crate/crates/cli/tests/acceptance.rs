//! Acceptance run: one PASS/FAIL line per criterion, then a summary.
//!
//! Criterion 5 checks a leading-exponent bound that does not hold for
//! `k < |n| <= 2k`; it is asserted as stated and its failure is expected.
//! The process fails if any other criterion fails or if 5 starts passing.

use std::process::Command;
use std::time::Instant;

use cosetq::affine::{self, AffineLabel};
use cosetq::branching::{self, CosetSpec, Method, StringVariant};
use cosetq::fusion::{self, Composition};
use cosetq::kostka::{self, RestrictedKostkaQuery};
use cosetq::qseries::rat;
use cosetq::QSeries;
use cosetq_cli::render::{self, OutputFormat};
use cosetq_cli::verify;
use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Check = fn() -> Outcome;

const EXPECTED_FAILURES: [u32; 1] = [5];

fn valid_specs(max_sum: i64) -> Vec<CosetSpec> {
    let mut out = Vec::new();
    for k1 in 1..max_sum {
        for k2 in 1..=max_sum - k1 {
            out.extend(CosetSpec::all_for_levels(k1, k2).into_iter().filter(|s| s.parity_ok()));
        }
    }
    out
}

/// Compositions with `k` sizes and weighted size at most `max`.
fn compositions(k: usize, max: i64) -> Vec<Composition> {
    fn rec(i: usize, rem: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for c in 0..=rem / (i as i64 + 1) {
            cur[i] = c as u32;
            rec(i + 1, rem - (i as i64 + 1) * c, cur, out);
        }
        cur[i] = 0;
    }
    let mut raw = Vec::new();
    rec(0, max, &mut vec![0; k], &mut raw);
    raw.into_iter().map(|c| Composition::new(c).unwrap()).collect()
}

fn c1_three_methods() -> Outcome {
    let specs = valid_specs(4);
    for spec in &specs {
        for e in branching::compare_methods::<BigInt>(spec, 12, None).map_err(|e| e.to_string())? {
            if let Some(m) = e.first_mismatch {
                return Err(format!("{spec} {}: q^{} {} vs {}", e.method_pair, m.exponent, m.lhs, m.rhs));
            }
        }
    }
    Ok(format!("{} specs, 3 pairs each, through q^12", specs.len()))
}

fn c2_kostka_formulas() -> Outcome {
    let mut n = 0;
    for k in 1..=4 {
        for m in compositions(k, 10) {
            for j in 0..=k as i64 {
                let q = RestrictedKostkaQuery::new(k, j, m.clone()).map_err(|e| e.to_string())?;
                let f = kostka::restricted_kostka_fermionic::<BigInt>(&q);
                let a = kostka::restricted_kostka_alternating::<BigInt>(&q).map_err(|e| e.to_string())?;
                if f != a {
                    return Err(format!("k={k} j={j} m={m}: {f} vs {a}"));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} polynomials equal"))
}

fn c3_decomposition() -> Outcome {
    let mut n = 0;
    for (k1, k2) in [(1, 1), (1, 2), (2, 2)] {
        for i1 in 0..=k1 {
            for i2 in 0..=k2 {
                let r = branching::verify_decomposition::<BigInt>(
                    i1,
                    k1,
                    i2,
                    k2,
                    10,
                    2 * (k1 + k2) + 2,
                    Method::Bosonic,
                    None,
                )
                .map_err(|e| e.to_string())?;
                if let Some(m) = r.entry.first_mismatch {
                    return Err(format!("({i1},{k1},{i2},{k2}) weight {:?} q^{}", m.weight, m.exponent));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} tensor products through q^10"))
}

fn labels(max_k: i64) -> Vec<AffineLabel> {
    (1..=max_k).flat_map(|k| (0..=k).map(move |l| AffineLabel { l, k })).collect()
}

fn c4_character_oracle() -> Outcome {
    let mut n = 0;
    for lab in labels(3) {
        let k = lab.k;
        let ch = affine::classical_character::<BigInt>(lab, 12, 2 * k + 2).map_err(|e| e.to_string())?;
        for a in -(2 * k + 2)..=2 * k + 2 {
            let lim = affine::graded_component_char::<BigInt>(lab, a, 12).map_err(|e| e.to_string())?;
            if lim != ch.component(a) {
                return Err(format!("{lab:?} a={a}: {lim} vs {}", ch.component(a)));
            }
            n += 1;
        }
    }
    Ok(format!("{n} components through q^12"))
}

fn c5_convergence() -> Outcome {
    let mut violations = Vec::new();
    for k in 1..=3 {
        for l in 0..=k {
            for n_big in 0..=4u32 {
                let c = verify::recursion_check(k, l, n_big, 2 * k).map_err(|e| e.to_string())?;
                if let Some(m) = c.identity {
                    return Err(format!("recursion fails at k={k} l={l} N={n_big} n={:?}", m.weight));
                }
                if let Some(m) = c.stated_bound {
                    violations.push(format!(
                        "k={k} l={l} N={n_big} n={}: lead {} < {}",
                        m.weight.unwrap_or_default(),
                        m.lhs,
                        m.rhs
                    ));
                }
            }
        }
    }
    if violations.is_empty() {
        Ok("recursion exact, bound holds".into())
    } else {
        Err(format!(
            "recursion exact; bound violated in {} of 45 (k,l,N) cases, first {}",
            violations.len(),
            violations[0]
        ))
    }
}

fn c6_spectral_flow() -> Outcome {
    let mut n = 0;
    for lab in labels(3) {
        let k = lab.k;
        for a in -2 * k..=2 * k {
            let base = affine::graded_component_char::<BigInt>(lab, a, 15).map_err(|e| e.to_string())?;
            for lambda in -2..=2 {
                let e = affine::spectral_flow_exponent(k, a, lambda);
                let b = a + 2 * lambda * k;
                let moved = affine::graded_component_char::<BigInt>(lab, b, 15 + e).map_err(|e| e.to_string())?;
                let flowed = affine::spectral_flow(lab, a, lambda, &base);
                if let Some(m) = moved.first_mismatch(&flowed) {
                    return Err(format!("{lab:?} a={a} lambda={lambda}: q^{}", m.exponent));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} (l,k,a,lambda) cases through q^15"))
}

fn c7_q_equals_one() -> Outcome {
    let mut n = 0;
    for m in compositions(8, 8) {
        for j in 0..=m.weighted_size() {
            let v = fusion::unrestricted_kostka::<BigInt>(j, &m)
                .and_then(|s| s.eval_at_one())
                .map_err(|e| e.to_string())?;
            let w = fusion::classical_multiplicity(j, &m);
            if v != BigInt::from(w) {
                return Err(format!("j={j} m={m}: {v} vs {w}"));
            }
            n += 1;
        }
    }
    let mut diag = 0;
    let mut diag_fail = Vec::new();
    for k in 1..=8usize {
        for m in compositions(k, 8) {
            for j in 0..=k as i64 {
                let q = RestrictedKostkaQuery::new(k, j, m.clone()).map_err(|e| e.to_string())?;
                let v = kostka::restricted_kostka_fermionic::<BigInt>(&q).eval_at_one().map_err(|e| e.to_string())?;
                if v != BigInt::from(kostka::level_fusion_multiplicity(&q)) {
                    diag_fail.push(format!("k={k} j={j} m={m}"));
                }
                diag += 1;
            }
        }
    }
    println!(
        "    diagnostic: restricted Kostka at q=1 vs level-k fusion: {}/{diag} agree{}",
        diag - diag_fail.len(),
        diag_fail.first().map(|f| format!(", first disagreement {f}")).unwrap_or_default()
    );
    Ok(format!("{n} unrestricted multiplicities match Clebsch-Gordan"))
}

fn c8_fixture() -> Outcome {
    let spec = CosetSpec::new(0, 1, 0, 1, 0).map_err(|e| e.to_string())?;
    let want = QSeries::from_coeffs(0, [1, 0, 1, 1, 2, 2, 3].map(BigInt::from).to_vec(), Some(7));
    for m in Method::ALL {
        let got = branching::branching::<BigInt>(m, &spec, 7, None).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("{m}: {got}"));
        }
    }
    Ok(format!("{want} by all three methods"))
}

fn c9_string_form() -> Outcome {
    let specs = valid_specs(4);
    let mut winners = Vec::new();
    for variant in [StringVariant::OverLevel, StringVariant::OverFour] {
        let mut monomial = 0;
        for spec in &specs {
            let r = branching::string_form_ratio::<BigInt>(spec, 12, variant).map_err(|e| e.to_string())?;
            if variant == StringVariant::OverLevel {
                let want = rat(-(spec.j - spec.i2).pow(2), 4 * spec.k1);
                if r.as_ref().is_some_and(|g| *g != want) {
                    return Err(format!("{spec}: ratio exponent {} expected {want}", r.unwrap()));
                }
            }
            monomial += usize::from(r.is_some());
        }
        println!("    exponent variant {}: monomial ratio for {monomial}/{} specs", variant.name(), specs.len());
        if monomial == specs.len() {
            winners.push(variant.name());
        }
    }
    if winners.is_empty() {
        return Err("no exponent variant gives a monomial ratio for every spec".into());
    }
    Ok(format!("single monomial with variant {}", winners.join(", ")))
}

fn arb_series() -> impl Strategy<Value = QSeries> {
    (
        -7i64..7,
        1i64..9,
        -4i64..4,
        prop::collection::vec((any::<i64>(), 0u32..3), 0..10),
        prop::option::of(0i64..14),
    )
        .prop_map(|(num, den, min_deg, raw, order)| {
            let coeffs: Vec<BigInt> = raw.into_iter().map(|(x, p)| BigInt::from(x).pow(p + 1)).collect();
            QSeries::from_coeffs(min_deg, coeffs, order.map(|o| o + min_deg)).shift(&rat(num, den))
        })
}

fn c10_cli() -> Outcome {
    let status = Command::new(env!("CARGO_BIN_EXE_cosetq"))
        .args(["verify", "--suite", "all"])
        .output()
        .map_err(|e| e.to_string())?;
    if status.status.code() != Some(0) {
        return Err(format!(
            "verify --suite all exited {:?}\n{}",
            status.status.code(),
            String::from_utf8_lossy(&status.stdout)
        ));
    }
    let config = Config {
        cases: 100,
        failure_persistence: None,
        rng_algorithm: RngAlgorithm::ChaCha,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner
        .run(&arb_series(), |s| {
            let first = render::series(&s, OutputFormat::Json);
            let back = QSeries::from_json_str(&first).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&back, &s);
            prop_assert_eq!(render::series(&back, OutputFormat::Json), first);
            Ok(())
        })
        .map_err(|e| format!("JSON round trip: {e}"))?;
    Ok("verify --suite all exited 0; JSON round trip on 100 random series".into())
}

fn main() {
    let criteria: [(u32, &str, Check); 10] = [
        (1, "three-way branching agreement", c1_three_methods),
        (2, "Kostka fermionic vs alternating", c2_kostka_formulas),
        (3, "decomposition identity", c3_decomposition),
        (4, "limit route vs Weyl-Kac", c4_character_oracle),
        (5, "approximant recursion and bound N+1+n^2/(4k)-k/4", c5_convergence),
        (6, "spectral flow", c6_spectral_flow),
        (7, "q=1 specializations", c7_q_equals_one),
        (8, "(0,1,0,1,j=0) fixture", c8_fixture),
        (9, "string form monomial ratio", c9_string_form),
        (10, "CLI verify and JSON round trip", c10_cli),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (id, name, check) in criteria {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        let expected_fail = EXPECTED_FAILURES.contains(&id);
        match &outcome {
            Ok(detail) => {
                passed += 1;
                println!("criterion {id:>2} PASS {name} ({detail}) [{secs:.2}s]");
                if expected_fail {
                    unexpected.push(id);
                }
            }
            Err(detail) => {
                let tag = if expected_fail { "FAIL (expected)" } else { "FAIL" };
                println!("criterion {id:>2} {tag} {name}: {detail} [{secs:.2}s]");
                if !expected_fail {
                    unexpected.push(id);
                }
            }
        }
    }
    println!("acceptance: {passed}/10 passed; expected failures {EXPECTED_FAILURES:?}");
    if !unexpected.is_empty() {
        println!("acceptance: unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
