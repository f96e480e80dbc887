//! Slow, independent reference implementations shared by the integration
//! tests. Polynomials are `BTreeMap<exponent, coefficient>` on i128.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use cosetq::QSeries;
use num_bigint::BigInt;

pub type Poly = BTreeMap<i64, i128>;

pub fn padd(a: &Poly, b: &Poly, sign: i128) -> Poly {
    let mut r = a.clone();
    for (e, c) in b {
        *r.entry(*e).or_insert(0) += sign * c;
    }
    r.retain(|_, c| *c != 0);
    r
}

pub fn pmul(a: &Poly, b: &Poly) -> Poly {
    let mut r = Poly::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            *r.entry(e1 + e2).or_insert(0) += c1 * c2;
        }
    }
    r.retain(|_, c| *c != 0);
    r
}

pub fn pshift(a: &Poly, s: i64) -> Poly {
    a.iter().map(|(e, c)| (e + s, *c)).collect()
}

pub fn ptrunc(a: &Poly, order: i64) -> Poly {
    a.iter().filter(|(e, _)| **e < order).map(|(e, c)| (*e, *c)).collect()
}

pub fn to_series(p: &Poly, order: Option<i64>) -> QSeries {
    let lo = p.keys().next().copied().unwrap_or(0).min(0);
    let hi = p.keys().last().copied().unwrap_or(0);
    let top = order.unwrap_or(hi + 1).max(lo);
    let mut v = vec![BigInt::from(0); (top - lo) as usize];
    for (e, c) in p {
        if *e < top {
            v[(e - lo) as usize] = BigInt::from(*c);
        }
    }
    QSeries::from_coeffs(lo, v, order)
}

/// Gaussian binomial from the q-Pascal recursion, with the vanishing convention.
pub fn gauss(n: i64, m: i64, memo: &mut HashMap<(i64, i64), Poly>) -> Poly {
    if m < 0 || n < 0 || m > n {
        return Poly::new();
    }
    if m == 0 || m == n {
        return Poly::from([(0, 1)]);
    }
    if let Some(p) = memo.get(&(n, m)) {
        return p.clone();
    }
    let a = gauss(n - 1, m - 1, memo);
    let b = pshift(&gauss(n - 1, m, memo), m);
    let r = padd(&a, &b, 1);
    memo.insert((n, m), r.clone());
    r
}

/// Fusion-product character by brute force over the full box of `j` vectors,
/// exponents kept doubled until the end.
pub fn naive_fusion_char(m: &[u32], n: i64) -> Poly {
    let k = m.len();
    let total: i64 = m.iter().map(|&x| x as i64).sum();
    let suffix: Vec<i64> = (0..k).map(|l| m[l..].iter().map(|&x| x as i64).sum()).collect();
    let p = suffix.iter().filter(|s| *s % 2 == 1).count() as i64;
    let mut memo = HashMap::new();
    let mut out = Poly::new();
    let mut j = vec![0i64; k];
    loop {
        // 2 sum (j_l - alpha_l) = sum (2 j_l - S_l)
        let lin: i64 = (0..k).map(|l| 2 * j[l] - suffix[l]).sum();
        if lin == n {
            let sq: i64 = (0..k).map(|l| (2 * j[l] - suffix[l]).pow(2)).sum();
            assert_eq!((sq - p) % 4, 0);
            let mut prod = gauss(m[k - 1] as i64, j[k - 1], &mut memo);
            for l in (0..k - 1).rev() {
                prod = pmul(&prod, &gauss(m[l] as i64 + j[l + 1], j[l], &mut memo));
            }
            out = padd(&out, &pshift(&prod, (sq - p) / 4), 1);
        }
        let mut x = 0;
        loop {
            if x == k {
                return out;
            }
            if j[x] < total {
                j[x] += 1;
                break;
            }
            j[x] = 0;
            x += 1;
        }
    }
}

/// `1/(q)_inf` below `q^order` by counting partitions.
pub fn partitions(order: i64) -> Poly {
    let n = order.max(0) as usize;
    let mut c = vec![0i128; n];
    if n > 0 {
        c[0] = 1;
    }
    for part in 1..n {
        for e in part..n {
            c[e] += c[e - part];
        }
    }
    c.into_iter().enumerate().filter(|(_, v)| *v != 0).map(|(e, v)| (e as i64, v)).collect()
}

/// All compositions over sizes `1..=k` with weighted size at most `max`.
pub fn compositions(k: usize, max: i64) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; k];
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
    rec(0, max, &mut cur, &mut out);
    out
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}
