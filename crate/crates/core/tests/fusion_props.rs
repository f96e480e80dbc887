mod common;

use common::{compositions, naive_fusion_char, to_series};
use cosetq::fusion::{self, Composition, classical_multiplicity, h_int};
use cosetq::qseries::rat;
use cosetq::QSeries;
use num_bigint::BigInt;
use proptest::prelude::*;

fn comp(v: &[u32]) -> Composition {
    Composition::new(v.to_vec()).unwrap()
}

fn exact(m: &Composition, n: i64) -> QSeries {
    fusion::fusion_char_exact::<BigInt>(m, n).unwrap()
}

#[test]
fn matches_brute_force_oracle() {
    for k in 1..=3 {
        for m in compositions(k, 6) {
            let c = comp(&m);
            let size = c.weighted_size();
            for n in -size - 2..=size + 2 {
                let want = to_series(&naive_fusion_char(&m, n), None);
                assert_eq!(exact(&c, n), want, "m={c} n={n}");
            }
        }
    }
}

#[test]
fn dimension_and_weight_symmetry() {
    for k in 1..=4 {
        for m in compositions(k, 8) {
            let c = comp(&m);
            let size = c.weighted_size();
            let mut total = BigInt::from(0);
            for n in -size..=size {
                let ch = exact(&c, n);
                assert_eq!(ch, exact(&c, -n));
                total += ch.eval_at_one().unwrap();
            }
            let dim: BigInt = m.iter().enumerate().map(|(i, &x)| BigInt::from(i as u64 + 2).pow(x)).product();
            assert_eq!(total, dim, "m={c}");
        }
    }
}

#[test]
fn top_degree_is_h() {
    for k in 1..=3 {
        for m in compositions(k, 8) {
            let c = comp(&m);
            let size = c.weighted_size();
            let top = (-size..=size)
                .filter_map(|n| exact(&c, n).degree())
                .max()
                .unwrap();
            assert_eq!(top, rat(h_int(&c), 1), "m={c}");
        }
    }
}

#[test]
fn unrestricted_kostka_at_one_is_clebsch_gordan() {
    for k in 1..=4 {
        for m in compositions(k, 8) {
            let c = comp(&m);
            for j in 0..=c.weighted_size() + 1 {
                let kp = fusion::unrestricted_kostka::<BigInt>(j, &c).unwrap();
                assert!(kp.coeffs().iter().all(|x| *x >= BigInt::from(0)));
                let at_one = kp.eval_at_one().unwrap();
                assert_eq!(at_one, BigInt::from(classical_multiplicity(j, &c)), "j={j} m={c}");
            }
        }
    }
}

fn recursion_parts(i: usize, k: usize, n_big: u32) -> (Composition, Composition, Composition) {
    let mut lo = Composition::zeros(k + 1).unwrap();
    lo.add_factors(i, 1);
    lo.add_factors(k, 2 * n_big);
    let mut hi = lo.clone();
    hi.add_factors(k, 2);
    let mut rhs = Composition::zeros(k + 1).unwrap();
    rhs.add_factors(i, 1);
    rhs.add_factors(k - 1, 1);
    rhs.add_factors(k, 2 * n_big);
    rhs.add_factors(k + 1, 1);
    (lo, hi, rhs)
}

#[test]
fn recursion_identity_exact() {
    for k in 1..=3usize {
        for n_big in 0..=3u32 {
            for i in 0..=k {
                let (lo, hi, rhs) = recursion_parts(i, k, n_big);
                for n in -(2 * k as i64 + 2)..=2 * k as i64 + 2 {
                    let diff = exact(&hi, n).sub(&exact(&lo, n));
                    let want = exact(&rhs, n).shift_int(n_big as i64 + 1);
                    assert_eq!(diff, want, "k={k} N={n_big} i={i} n={n}");
                }
            }
        }
    }
}

#[test]
fn difference_term_bound_over_k_plus_one_sizes() {
    // the extra factor has k+1 distinct sizes, so Cauchy-Schwarz gives
    // n^2/(4(k+1)) - (k+1)/4
    for k in 1..=3usize {
        for n_big in 0..=3u32 {
            for i in 0..=k {
                let (_, _, rhs) = recursion_parts(i, k, n_big);
                for n in -(2 * k as i64 + 2)..=2 * k as i64 + 2 {
                    if let Some(lead) = exact(&rhs, n).leading_exponent() {
                        let kk = k as i64 + 1;
                        assert!(lead >= rat(n * n - kk * kk, 4 * kk), "k={k} N={n_big} i={i} n={n}");
                    }
                }
            }
        }
    }
}

#[test]
fn truncation_never_changes_known_coefficients() {
    let c = comp(&[1, 0, 4]);
    for n in -6..=6 {
        let e = exact(&c, n);
        for order in 0..12 {
            let t = fusion::fusion_char::<BigInt>(&c, n, order).unwrap();
            assert!(t.agrees_with(&e));
            assert_eq!(t.order(), Some(order));
        }
    }
}

proptest! {
    #[test]
    fn truncated_agrees_with_exact_random(m in prop::collection::vec(0u32..3, 1..4), n in -6i64..6, order in 0i64..10) {
        let c = comp(&m);
        let t = fusion::fusion_char::<BigInt>(&c, n, order).unwrap();
        prop_assert!(t.agrees_with(&exact(&c, n)));
    }

    #[test]
    fn text_forms_roundtrip(m in prop::collection::vec(0u32..5, 1..6)) {
        let c = comp(&m);
        prop_assert_eq!(Composition::parse(&c.to_string(), Some(m.len())).unwrap(), c.clone());
        let pairs: Vec<String> = m.iter().enumerate().filter(|(_, x)| **x > 0).map(|(i, x)| format!("{}:{}", i + 1, x)).collect();
        prop_assert_eq!(Composition::parse(&pairs.join(","), Some(m.len())).unwrap(), c);
    }
}
