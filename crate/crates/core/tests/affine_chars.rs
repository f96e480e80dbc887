mod common;

use common::{partitions, pshift, ptrunc, to_series};
use cosetq::affine::{self, AffineLabel};
use cosetq::qseries::rat;
use num_bigint::BigInt;

fn labels(max_k: i64) -> Vec<AffineLabel> {
    (1..=max_k).flat_map(|k| (0..=k).map(move |l| AffineLabel::new(l, k).unwrap())).collect()
}

#[test]
fn basic_module_is_lattice_over_partitions() {
    // ch L_{0,1}^{2n} = q^{n^2} / (q)_inf
    let lab = AffineLabel::new(0, 1).unwrap();
    for a in -8..=8i64 {
        let got = affine::graded_component_char::<BigInt>(lab, a, 15).unwrap();
        let want = if a % 2 == 0 {
            let n = a / 2;
            to_series(&ptrunc(&pshift(&partitions(15), n * n), 15), Some(15))
        } else {
            to_series(&Default::default(), None)
        };
        assert_eq!(got, want, "a={a}");
    }
}

#[test]
fn limit_route_matches_weyl_kac() {
    for lab in labels(3) {
        let k = lab.k;
        let ch = affine::classical_character::<BigInt>(lab, 12, 2 * k + 2).unwrap();
        for a in -(2 * k + 2)..=2 * k + 2 {
            let lim = affine::graded_component_char::<BigInt>(lab, a, 12).unwrap();
            assert_eq!(lim, ch.component(a), "{lab:?} a={a}");
        }
    }
}

#[test]
fn weyl_kac_components_are_weight_symmetric() {
    for lab in labels(4) {
        let ch = affine::classical_character::<BigInt>(lab, 10, 12).unwrap();
        for a in 0..=12 {
            assert_eq!(ch.component(a), ch.component(-a));
        }
    }
}

#[test]
fn spectral_flow_identity() {
    for lab in labels(3) {
        let k = lab.k;
        for a in -2 * k..=2 * k {
            let base = affine::graded_component_char::<BigInt>(lab, a, 15).unwrap();
            for lambda in -2..=2 {
                let e = affine::spectral_flow_exponent(k, a, lambda);
                let moved = affine::graded_component_char::<BigInt>(lab, a + 2 * lambda * k, 15 + e).unwrap();
                let flowed = affine::spectral_flow(lab, a, lambda, &base);
                assert_eq!(moved, flowed, "{lab:?} a={a} lambda={lambda}");
            }
        }
    }
}

#[test]
fn approximant_differences_respect_k_plus_one_bound() {
    for lab in labels(3) {
        let k = lab.k;
        for n_big in 0..=4u32 {
            for n in -2 * k..=2 * k {
                let order = 30;
                let lo = affine::limit_approximant::<BigInt>(lab, n, n_big, order).unwrap();
                let hi = affine::limit_approximant::<BigInt>(lab, n, n_big + 1, order).unwrap();
                if let Some(lead) = hi.sub(&lo).leading_exponent() {
                    let kk = k + 1;
                    let bound = rat(4 * kk * (n_big as i64 + 1) + n * n - kk * kk, 4 * kk);
                    assert!(lead >= bound, "{lab:?} N={n_big} n={n}");
                }
            }
        }
    }
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = affine::ComponentCache::new(dir.path()).unwrap();
    for lab in labels(2) {
        for a in -6..=6 {
            let plain = affine::graded_component_char::<BigInt>(lab, a, 9).unwrap();
            for _ in 0..2 {
                let cached = affine::graded_component_char_cached::<BigInt>(Some(&cache), lab, a, 9).unwrap();
                assert_eq!(plain, cached);
            }
        }
    }
    // every file is a complete entry with the version tag and no temp leftovers
    for f in std::fs::read_dir(dir.path()).unwrap() {
        let p = f.unwrap().path();
        assert!(!p.file_name().unwrap().to_string_lossy().starts_with(".tmp"));
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
        assert_eq!(v["format_version"], 1);
        for key in ["l", "k", "a", "order", "prefix", "min_deg", "coeffs"] {
            assert!(v.get(key).is_some(), "{key} missing");
        }
    }
}
