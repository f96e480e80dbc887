//! Dense polynomial kernels on coefficient slices.
//!
//! These work on plain `Vec<C>` with index = exponent and are used by the
//! hot loops (fusion characters, fermionic sums). A `len` argument always
//! means "keep exponents `< len`".

use std::collections::HashMap;

use crate::scalar::Coeff;

pub(crate) fn mul_trunc<C: Coeff>(a: &[C], b: &[C], len: usize) -> Vec<C> {
    let out_len = len.min((a.len() + b.len()).saturating_sub(1));
    let mut out = vec![C::zero(); out_len];
    for (i, x) in a.iter().enumerate() {
        if i >= out_len {
            break;
        }
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(out_len - i) {
            out[i + j].add_product(x, y);
        }
    }
    out
}

/// `acc[offset + i] += p[i]`, growing `acc` as needed but never past `cap`.
pub(crate) fn add_at<C: Coeff>(acc: &mut Vec<C>, offset: usize, p: &[C], cap: Option<usize>) {
    let mut end = offset + p.len();
    if let Some(cap) = cap {
        end = end.min(cap);
    }
    if end <= offset {
        return;
    }
    if acc.len() < end {
        acc.resize(end, C::zero());
    }
    for (i, c) in p.iter().take(end - offset).enumerate() {
        acc[offset + i].add_ref(c);
    }
}

/// `p *= (1 - q^n)`, keeping exponents `< len`.
pub(crate) fn mul_one_minus_qn<C: Coeff>(p: &mut Vec<C>, n: usize, len: usize) {
    let new_len = len.min(p.len() + n);
    p.resize(new_len, C::zero());
    for e in (n..new_len).rev() {
        let prev = p[e - n].clone();
        p[e].sub_ref(&prev);
    }
}

/// `p *= 1/(1 - q^n)` as a power series, keeping exponents `< len`.
pub(crate) fn div_one_minus_qn<C: Coeff>(p: &mut Vec<C>, n: usize, len: usize) {
    assert!(n >= 1);
    p.resize(len, C::zero());
    for e in n..len {
        let prev = p[e - n].clone();
        p[e].add_ref(&prev);
    }
}

pub(crate) fn trim_trailing<C: Coeff>(p: &mut Vec<C>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Gaussian binomial `[n, m]_q` with exponents `< len` (or exact when `len` is `None`).
/// Vanishes for `m < 0`, `n < 0` or `m > n`.
pub(crate) fn gaussian_binomial<C: Coeff>(n: i64, m: i64, len: Option<usize>) -> Vec<C> {
    if m < 0 || n < 0 || m > n {
        return Vec::new();
    }
    let m = m.min(n - m);
    let degree = (m * (n - m)) as usize;
    let len = len.map_or(degree + 1, |l| l.min(degree + 1));
    if len == 0 {
        return Vec::new();
    }
    let mut p = vec![C::zero(); 1];
    p[0] = C::one();
    // prod_{i=1}^{m} (1 - q^{n-m+i}) / (1 - q^i); every partial product is a polynomial
    for i in 1..=m {
        mul_one_minus_qn(&mut p, (n - m + i) as usize, len);
        div_one_minus_qn(&mut p, i as usize, len);
    }
    p.truncate(len);
    trim_trailing(&mut p);
    p
}

/// Memo of truncated Gaussian binomials for one computation.
pub(crate) struct BinomialTable<C> {
    len: Option<usize>,
    table: HashMap<(i64, i64), Vec<C>>,
}

impl<C: Coeff> BinomialTable<C> {
    pub(crate) fn new(len: Option<usize>) -> Self {
        Self {
            len,
            table: HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, n: i64, m: i64) -> &[C] {
        let (n, m) = if m < 0 || n < 0 || m > n { (-1, -1) } else { (n, m.min(n - m)) };
        let len = self.len;
        self.table
            .entry((n, m))
            .or_insert_with(|| gaussian_binomial(n, m, len))
    }
}

/// Truncated `1/(q)_n` for `n = 0..=max_n`, all with exponents `< len`.
pub(crate) fn inverse_factorials<C: Coeff>(max_n: usize, len: usize) -> Vec<Vec<C>> {
    let mut out = Vec::with_capacity(max_n + 1);
    let mut cur = vec![C::one()];
    cur.truncate(len);
    out.push(cur.clone());
    for i in 1..=max_n {
        if i < len {
            div_one_minus_qn(&mut cur, i, len);
        }
        out.push(cur.clone());
    }
    out
}
