//! Verification suites behind `cosetq verify`.
//!
//! Every check becomes one [`Record`]. Gating records decide the exit code;
//! diagnostic records are reported but never fail the run.

use std::fmt::Write as _;

use clap::ValueEnum;
use cosetq::affine::{self, AffineLabel, ComponentCache};
use cosetq::branching::{self, CosetSpec, MismatchJson, Method, Status, StringVariant};
use cosetq::fusion::{self, Composition};
use cosetq::kostka::{self, RestrictedKostkaQuery};
use cosetq::qseries::{int, rat};
use cosetq::{ExactRational, QSeries, Result};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{Value, json};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Methods,
    Decomposition,
    Kostka,
    Convergence,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Methods => "methods",
            Suite::Decomposition => "decomposition",
            Suite::Kostka => "kostka",
            Suite::Convergence => "convergence",
            Suite::All => "all",
        }
    }

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Methods, Suite::Decomposition, Suite::Kostka, Suite::Convergence],
            s => vec![s],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub suite: &'static str,
    pub spec: Value,
    pub method_pair: String,
    pub status: Status,
    pub gating: bool,
    pub first_mismatch: Option<MismatchJson>,
}

impl Record {
    fn new(suite: Suite, spec: Value, pair: impl Into<String>, mismatch: Option<MismatchJson>) -> Self {
        Self {
            suite: suite.name(),
            spec,
            method_pair: pair.into(),
            status: if mismatch.is_none() { Status::Pass } else { Status::Fail },
            gating: true,
            first_mismatch: mismatch,
        }
    }

    fn diagnostic(mut self) -> Self {
        self.gating = false;
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    fn sort_key(&self) -> (String, String, String) {
        (self.suite.to_string(), self.spec.to_string(), self.method_pair.clone())
    }
}

pub struct Options {
    pub max_level: i64,
    pub order: i64,
    pub cache: Option<ComponentCache>,
}

fn value_mismatch(exponent: &ExactRational, lhs: impl ToString, rhs: impl ToString, weight: Option<i64>) -> MismatchJson {
    let exponent = if exponent.is_integer() {
        exponent.to_integer().to_string()
    } else {
        format!("{}/{}", exponent.numer(), exponent.denom())
    };
    MismatchJson {
        weight,
        exponent,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

fn series_mismatch(a: &QSeries, b: &QSeries, weight: Option<i64>) -> Option<MismatchJson> {
    a.first_mismatch(b).map(|m| branching::mismatch_json(&m, weight))
}

fn spec_value(s: &CosetSpec) -> Value {
    json!({"i1": s.i1, "k1": s.k1, "i2": s.i2, "k2": s.k2, "j": s.j})
}

fn level_pairs(max_level: i64) -> Vec<(i64, i64)> {
    (1..max_level).flat_map(|k1| (1..=max_level - k1).map(move |k2| (k1, k2))).collect()
}

fn valid_specs(max_level: i64) -> Vec<CosetSpec> {
    level_pairs(max_level)
        .into_iter()
        .flat_map(|(k1, k2)| CosetSpec::all_for_levels(k1, k2))
        .filter(|s| s.parity_ok())
        .collect()
}

fn methods_suite(opts: &Options) -> Result<Vec<Record>> {
    let s = Suite::Methods;
    let cache = opts.cache.as_ref();
    let per_spec: Vec<Result<Vec<Record>>> = valid_specs(opts.max_level)
        .par_iter()
        .map(|spec| {
            let sv = spec_value(spec);
            let mut out: Vec<Record> = branching::compare_methods::<BigInt>(spec, opts.order, cache)?
                .into_iter()
                .map(|e| Record::new(s, sv.clone(), e.method_pair, e.first_mismatch))
                .collect();
            let bos = branching::branching_bosonic_cached::<BigInt>(cache, spec, opts.order)?;
            let swapped = branching::branching_finite_n::<BigInt>(&spec.swapped(), opts.order)?;
            out.push(Record::new(s, sv.clone(), "bosonic/swapped-finite-n", series_mismatch(&bos, &swapped, None)));
            let want = rat(-(spec.j - spec.i2).pow(2), 4 * spec.k1);
            for variant in [StringVariant::OverLevel, StringVariant::OverFour] {
                let ratio = branching::string_form_ratio::<BigInt>(spec, opts.order, variant)?;
                let mm = match &ratio {
                    Some(_) => None,
                    None => Some(value_mismatch(&int(0), "not a monomial", "monomial", None)),
                };
                let mut r = Record::new(s, sv.clone(), format!("string({})/bosonic", variant.name()), mm);
                if variant == StringVariant::OverLevel && ratio.as_ref().is_some_and(|g| *g != want) {
                    r.status = Status::Fail;
                    r.first_mismatch = Some(value_mismatch(&int(0), ratio.unwrap(), &want, None));
                }
                if variant == StringVariant::OverFour {
                    r = r.diagnostic();
                }
                out.push(r);
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_spec {
        out.extend(r?);
    }
    if opts.max_level >= 2 {
        let spec = CosetSpec::new(0, 1, 0, 1, 0)?;
        let fixture = QSeries::from_coeffs(0, [1, 0, 1, 1, 2, 2, 3].map(BigInt::from).to_vec(), Some(7));
        for m in Method::ALL {
            let v = branching::branching::<BigInt>(m, &spec, 7, cache)?;
            out.push(Record::new(s, spec_value(&spec), format!("{m}/fixture"), series_mismatch(&v, &fixture, None)));
        }
    }
    Ok(out)
}

fn decomposition_suite(opts: &Options) -> Result<Vec<Record>> {
    let cases: Vec<(i64, i64, i64, i64)> = level_pairs(opts.max_level)
        .into_iter()
        .flat_map(|(k1, k2)| (0..=k1).flat_map(move |i1| (0..=k2).map(move |i2| (i1, k1, i2, k2))))
        .collect();
    let results: Vec<Result<Record>> = cases
        .par_iter()
        .map(|&(i1, k1, i2, k2)| {
            let r = branching::verify_decomposition::<BigInt>(
                i1,
                k1,
                i2,
                k2,
                opts.order,
                2 * (k1 + k2) + 2,
                Method::Bosonic,
                opts.cache.as_ref(),
            )?;
            Ok(Record::new(
                Suite::Decomposition,
                json!({"i1": i1, "k1": k1, "i2": i2, "k2": k2}),
                r.entry.method_pair,
                r.entry.first_mismatch,
            ))
        })
        .collect();
    results.into_iter().collect()
}

fn compositions(k: usize, max: i64) -> Vec<Vec<u32>> {
    fn rec(i: usize, rem: i64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        let size = i as i64 + 1;
        for c in 0..=rem / size {
            cur[i] = c as u32;
            rec(i + 1, rem - size * c, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(0, max, &mut vec![0; k], &mut out);
    out
}

fn kostka_suite(opts: &Options) -> Result<Vec<Record>> {
    let s = Suite::Kostka;
    let cases: Vec<(usize, Vec<u32>)> = (1..=opts.max_level.max(1) as usize)
        .flat_map(|k| compositions(k, 10).into_iter().map(move |m| (k, m)))
        .collect();
    let results: Vec<Result<Vec<Record>>> = cases
        .par_iter()
        .map(|(k, m)| {
            let comp = Composition::new(m.clone())?;
            let size = comp.weighted_size();
            let mut out = Vec::new();
            for j in 0..=*k as i64 {
                let q = RestrictedKostkaQuery::new(*k, j, comp.clone())?;
                let sv = json!({"k": k, "j": j, "m": comp.to_string()});
                let f = kostka::restricted_kostka_fermionic::<BigInt>(&q);
                let a = kostka::restricted_kostka_alternating::<BigInt>(&q)?;
                out.push(Record::new(s, sv.clone(), "fermionic/alternating", series_mismatch(&f, &a, None)));
                if size <= 8 {
                    let v = f.eval_at_one()?;
                    let w = kostka::level_fusion_multiplicity(&q);
                    let mm = (v != BigInt::from(w)).then(|| value_mismatch(&int(0), &v, w, None));
                    out.push(Record::new(s, sv, "restricted-at-1/level-fusion", mm).diagnostic());
                }
            }
            if size <= 8 {
                for j in 0..=size {
                    let v = fusion::unrestricted_kostka::<BigInt>(j, &comp)?.eval_at_one()?;
                    let w = fusion::classical_multiplicity(j, &comp);
                    let mm = (v != BigInt::from(w)).then(|| value_mismatch(&int(0), &v, w, None));
                    out.push(Record::new(
                        s,
                        json!({"j": j, "m": comp.to_string()}),
                        "unrestricted-at-1/clebsch-gordan",
                        mm,
                    ));
                }
            }
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// Fusion characters `pi_i * pi_k^{*2N}` and the recursion partner
/// `pi_i * pi_{k-1} * pi_k^{*2N} * pi_{k+1}`, over `k+1` sizes.
fn recursion_compositions(i: i64, k: i64, n_big: u32) -> Result<(Composition, Composition, Composition)> {
    let mut lo = Composition::zeros(k as usize + 1)?;
    lo.add_factors(i as usize, 1);
    lo.add_factors(k as usize, 2 * n_big);
    let mut hi = lo.clone();
    hi.add_factors(k as usize, 2);
    let mut rhs = Composition::zeros(k as usize + 1)?;
    rhs.add_factors(i as usize, 1);
    rhs.add_factors(k as usize - 1, 1);
    rhs.add_factors(k as usize, 2 * n_big);
    rhs.add_factors(k as usize + 1, 1);
    Ok((lo, hi, rhs))
}

/// Outcome of the approximant checks for one `(k, i, N)`.
pub struct RecursionCheck {
    pub identity: Option<MismatchJson>,
    /// first weight violating `N+1 + n^2/(4(k+1)) - (k+1)/4`
    pub wide_bound: Option<MismatchJson>,
    /// first weight violating `N+1 + n^2/(4k) - k/4`
    pub stated_bound: Option<MismatchJson>,
}

/// Checks the approximant recursion and both lower bounds for `|n| <= max_n`.
pub fn recursion_check(k: i64, i: i64, n_big: u32, max_n: i64) -> Result<RecursionCheck> {
    let (lo, hi, rhs) = recursion_compositions(i, k, n_big)?;
    let mut out = RecursionCheck {
        identity: None,
        wide_bound: None,
        stated_bound: None,
    };
    let shift = n_big as i64 + 1;
    for n in -max_n..=max_n {
        let diff = fusion::fusion_char_exact::<BigInt>(&hi, n)?.sub(&fusion::fusion_char_exact::<BigInt>(&lo, n)?);
        let want = fusion::fusion_char_exact::<BigInt>(&rhs, n)?.shift_int(shift);
        if out.identity.is_none() {
            out.identity = series_mismatch(&diff, &want, Some(n));
        }
        if let Some(lead) = diff.leading_exponent() {
            let kk = k + 1;
            let wide = rat(4 * kk * shift + n * n - kk * kk, 4 * kk);
            let stated = rat(4 * k * shift + n * n - k * k, 4 * k);
            if lead < wide && out.wide_bound.is_none() {
                out.wide_bound = Some(value_mismatch(&lead, &lead, &wide, Some(n)));
            }
            if lead < stated && out.stated_bound.is_none() {
                out.stated_bound = Some(value_mismatch(&lead, &lead, &stated, Some(n)));
            }
        }
    }
    Ok(out)
}

fn convergence_suite(opts: &Options) -> Result<Vec<Record>> {
    let s = Suite::Convergence;
    let max_k = opts.max_level.clamp(1, 3);
    let mut cases = Vec::new();
    for k in 1..=max_k {
        for i in 0..=k {
            for n_big in 0..=4u32 {
                cases.push((k, i, n_big));
            }
        }
    }
    let rec: Vec<Result<Vec<Record>>> = cases
        .par_iter()
        .map(|&(k, i, n_big)| {
            let c = recursion_check(k, i, n_big, 2 * k)?;
            let sv = json!({"k": k, "l": i, "N": n_big});
            Ok(vec![
                Record::new(s, sv.clone(), "approximant-difference/recursion", c.identity),
                Record::new(s, sv.clone(), "leading-exponent/bound-k+1", c.wide_bound),
                Record::new(s, sv, "leading-exponent/bound-k", c.stated_bound).diagnostic(),
            ])
        })
        .collect();
    let mut out = Vec::new();
    for r in rec {
        out.extend(r?);
    }
    let labels: Vec<AffineLabel> = (1..=max_k)
        .flat_map(|k| (0..=k).map(move |l| AffineLabel { l, k }))
        .collect();
    let cache = opts.cache.as_ref();
    let chars: Vec<Result<Vec<Record>>> = labels
        .par_iter()
        .map(|&lab| {
            let k = lab.k;
            let sv = json!({"l": lab.l, "k": k});
            let oracle = affine::classical_character::<BigInt>(lab, opts.order, 2 * k + 2)?;
            let mut agree = None;
            for a in -(2 * k + 2)..=2 * k + 2 {
                let lim = affine::graded_component_char_cached::<BigInt>(cache, lab, a, opts.order)?;
                agree = agree.or_else(|| series_mismatch(&lim, &oracle.component(a), Some(a)));
            }
            let mut flow = None;
            for a in -2 * k..=2 * k {
                let base = affine::graded_component_char_cached::<BigInt>(cache, lab, a, opts.order)?;
                for lambda in -2..=2 {
                    let e = affine::spectral_flow_exponent(k, a, lambda);
                    let moved =
                        affine::graded_component_char_cached::<BigInt>(cache, lab, a + 2 * lambda * k, opts.order + e)?;
                    let flowed = affine::spectral_flow(lab, a, lambda, &base);
                    flow = flow.or_else(|| series_mismatch(&moved, &flowed, Some(a + 2 * lambda * k)));
                }
            }
            Ok(vec![
                Record::new(s, sv.clone(), "limit/weyl-kac", agree),
                Record::new(s, sv, "spectral-flow/limit", flow),
            ])
        })
        .collect();
    for r in chars {
        out.extend(r?);
    }
    Ok(out)
}

/// Runs a suite (or all of them); records come back in a fixed order.
pub fn run_suite(suite: Suite, opts: &Options) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for part in suite.parts() {
        out.extend(match part {
            Suite::Methods => methods_suite(opts)?,
            Suite::Decomposition => decomposition_suite(opts)?,
            Suite::Kostka => kostka_suite(opts)?,
            Suite::Convergence => convergence_suite(opts)?,
            Suite::All => unreachable!(),
        });
    }
    out.sort_by_key(|a| a.sort_key());
    Ok(out)
}

pub fn gating_failures(records: &[Record]) -> usize {
    records.iter().filter(|r| r.gating && !r.passed()).count()
}

/// Per-suite counts followed by an overall verdict.
pub fn summary_table(records: &[Record]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<14} {:>7} {:>7} {:>7} {:>12}", "suite", "checks", "passed", "failed", "diag-failed");
    let mut suites: Vec<&str> = records.iter().map(|r| r.suite).collect();
    suites.dedup();
    for s in suites {
        let rs: Vec<&Record> = records.iter().filter(|r| r.suite == s).collect();
        let gating: Vec<&&Record> = rs.iter().filter(|r| r.gating).collect();
        let passed = gating.iter().filter(|r| r.passed()).count();
        let diag = rs.iter().filter(|r| !r.gating && !r.passed()).count();
        let _ = writeln!(
            out,
            "{:<14} {:>7} {:>7} {:>7} {:>12}",
            s,
            gating.len(),
            passed,
            gating.len() - passed,
            diag
        );
    }
    for r in records.iter().filter(|r| r.gating && !r.passed()).take(20) {
        let _ = writeln!(out, "FAIL {} {} {}", r.suite, r.spec, r.method_pair);
    }
    let verdict = if gating_failures(records) == 0 { "PASS" } else { "FAIL" };
    let _ = write!(out, "RESULT: {verdict}");
    out
}
