//! Restricted Kostka polynomials `K^{(k)}_{j,m}`, by the fermionic sum and by
//! the alternating sum over unrestricted Kostka polynomials.
//!
//! Both entry points return the reversed normalization (the graded
//! multiplicity space of `L_{j,k}` in the fusion limit).

use crate::error::{Error, Result};
use crate::fusion::{self, Composition, h_int, h_of, p_of};
use crate::poly::{self, BinomialTable};
use crate::qseries::Series;
use crate::scalar::Coeff;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedKostkaQuery {
    k: usize,
    j: i64,
    m: Composition,
}

impl RestrictedKostkaQuery {
    pub fn new(k: usize, j: i64, m: Composition) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("level must be positive".into()));
        }
        if j < 0 || j > k as i64 {
            return Err(Error::Domain(format!("weight {j} outside [0, {k}]")));
        }
        if m.len() != k {
            return Err(Error::Domain(format!(
                "composition {m} has {} sizes, level is {k}",
                m.len()
            )));
        }
        Ok(Self { k, j, m })
    }

    pub fn level(&self) -> usize {
        self.k
    }

    pub fn weight(&self) -> i64 {
        self.j
    }

    pub fn composition(&self) -> &Composition {
        &self.m
    }

    /// Restriction vector `nu_a = max(0, a - k + j)`, `a = 1..k`.
    pub fn nu(&self) -> Vec<i64> {
        (1..=self.k as i64).map(|a| (a - self.k as i64 + self.j).max(0)).collect()
    }
}

struct FermionicSum<'a, C> {
    q: &'a RestrictedKostkaQuery,
    nu: Vec<i64>,
    p: i64,
    limit: Option<i64>,
    binomials: BinomialTable<C>,
    s: Vec<i64>,
    /// suffix sums of m - 2s, filled from the top level down
    d: Vec<i64>,
    acc: Vec<C>,
}

impl<C: Coeff> FermionicSum<'_, C> {
    fn walk(&mut self, level: usize, rem: i64, sq: i64) {
        if let Some(limit) = self.limit {
            if sq - self.p >= 4 * limit {
                return;
            }
        }
        if level == 0 {
            if rem == 0 {
                self.emit(sq);
            }
            return;
        }
        let a = level as i64;
        let above = if level == self.q.k { 0 } else { self.d[level] };
        let mc = self.q.m.counts()[level - 1] as i64;
        let (lo, hi) = if level == 1 { (rem, rem) } else { (0, rem / a) };
        for s in lo..=hi {
            let d = above + mc - 2 * s;
            self.s[level - 1] = s;
            self.d[level - 1] = d;
            self.walk(level - 1, rem - a * s, sq + d * d);
        }
    }

    fn emit(&mut self, sq: i64) {
        let num = sq - self.p;
        assert!(num % 4 == 0 && num >= 0, "fermionic exponent {num}/4 for {}", self.q.m);
        let e = num / 4;
        let len = self.limit.map(|l| (l - e) as usize);
        let mut prod = vec![C::one()];
        let mut vac = 0i64;
        for a in 0..self.q.k {
            vac += self.d[a];
            let s = self.s[a];
            let b = self.binomials.get(vac - self.nu[a] + s, s);
            if b.is_empty() {
                return;
            }
            let full = prod.len() + b.len();
            prod = poly::mul_trunc(&prod, b, len.unwrap_or(full).min(full));
        }
        poly::add_at(&mut self.acc, e as usize, &prod, self.limit.map(|l| l as usize));
    }
}

fn fermionic_sum<C: Coeff>(q: &RestrictedKostkaQuery, limit: Option<i64>) -> Vec<C> {
    let size = q.m.weighted_size();
    if (size - q.j) % 2 != 0 || size < q.j {
        return Vec::new();
    }
    let mut st = FermionicSum {
        q,
        nu: q.nu(),
        p: p_of(&q.m),
        limit,
        binomials: BinomialTable::new(limit.map(|l| l.max(0) as usize)),
        s: vec![0; q.k],
        d: vec![0; q.k],
        acc: Vec::new(),
    };
    st.walk(q.k, (size - q.j) / 2, 0);
    st.acc
}

/// Fermionic formula for the reversed restricted Kostka polynomial.
pub fn restricted_kostka_fermionic<C: Coeff>(q: &RestrictedKostkaQuery) -> Series<C> {
    Series::polynomial(fermionic_sum(q, None))
}

/// The fermionic sum truncated below `q^order`; terms whose quadratic part
/// already reaches the bound are never expanded.
pub fn restricted_kostka_fermionic_truncated<C: Coeff>(
    q: &RestrictedKostkaQuery,
    order: i64,
) -> Result<Series<C>> {
    if order < 0 {
        return Err(Error::Domain(format!("negative order {order}")));
    }
    Ok(Series::from_coeffs(0, fermionic_sum(q, Some(order)), Some(order)))
}

/// Alternating sum over unrestricted Kostka polynomials, evaluated in the
/// un-reversed normalization and reversed at the end.
pub fn restricted_kostka_alternating<C: Coeff>(q: &RestrictedKostkaQuery) -> Result<Series<C>> {
    let m = &q.m;
    let h = h_of(m);
    let size = m.weighted_size();
    let k2 = q.k as i64 + 2;
    let j = q.j;
    let plain = |l: i64| -> Result<Series<C>> {
        if l < 0 || l > size {
            return Ok(Series::zero());
        }
        fusion::unrestricted_kostka::<C>(l, m)?.reverse(&h)
    };
    let mut terms = Vec::new();
    let mut p = 0i64;
    while 2 * k2 * p + j <= size {
        terms.push(plain(2 * k2 * p + j)?.shift_int(k2 * p * p + (j + 1) * p));
        p += 1;
    }
    let mut p = 1i64;
    while 2 * k2 * p - j - 2 <= size {
        terms.push(plain(2 * k2 * p - j - 2)?.shift_int(k2 * p * p - (j + 1) * p).neg());
        p += 1;
    }
    Series::sum(terms.iter()).reverse(&h)
}

/// Multiplicity of `pi_j` after fusing every factor of `m` with the level-`k`
/// truncated Clebsch-Gordan rule.
pub fn level_fusion_multiplicity(q: &RestrictedKostkaQuery) -> u128 {
    let k = q.k;
    let mut mult = vec![0u128; k + 1];
    mult[0] = 1;
    for size in 1..=k {
        for _ in 0..q.m.count(size) {
            let mut next = vec![0u128; k + 1];
            for (a, &c) in mult.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let hi = (a + size).min(2 * k - a - size);
                let mut t = a.abs_diff(size);
                while t <= hi {
                    next[t] += c;
                    t += 2;
                }
            }
            mult = next;
        }
    }
    mult[q.j as usize]
}

/// Exact `h(m)` of the query's composition as a plain integer.
pub fn top_degree(q: &RestrictedKostkaQuery) -> i64 {
    h_int(&q.m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QSeries;
    use num_bigint::BigInt;

    fn query(k: usize, j: i64, m: &[u32]) -> RestrictedKostkaQuery {
        RestrictedKostkaQuery::new(k, j, Composition::new(m.to_vec()).unwrap()).unwrap()
    }

    fn poly(c: &[i64]) -> QSeries {
        QSeries::polynomial(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn query_validation() {
        let m = Composition::new(vec![2]).unwrap();
        assert!(RestrictedKostkaQuery::new(1, 3, m.clone()).is_err());
        assert!(RestrictedKostkaQuery::new(1, -1, m.clone()).is_err());
        assert!(RestrictedKostkaQuery::new(2, 0, m).is_err());
        assert_eq!(query(3, 1, &[0, 0, 0]).nu(), vec![0, 0, 1]);
    }

    #[test]
    fn examples_both_routes() {
        let cases = [(1, 0, vec![2], poly(&[1])), (2, 2, vec![2, 0], poly(&[0, 1])), (1, 1, vec![2], poly(&[]))];
        for (k, j, m, want) in cases {
            let q = query(k, j, &m);
            assert_eq!(restricted_kostka_fermionic::<BigInt>(&q), want);
            assert_eq!(restricted_kostka_alternating::<BigInt>(&q).unwrap(), want);
        }
    }

    #[test]
    fn level_fusion_examples() {
        assert_eq!(level_fusion_multiplicity(&query(1, 0, &[2])), 1);
        assert_eq!(level_fusion_multiplicity(&query(2, 2, &[2, 0])), 1);
        assert_eq!(level_fusion_multiplicity(&query(2, 0, &[2, 0])), 1);
        // pi_1 x_1 pi_1 x_1 pi_1 = pi_1
        assert_eq!(level_fusion_multiplicity(&query(1, 1, &[3])), 1);
    }

    #[test]
    fn truncated_matches_exact() {
        let q = query(3, 1, &[2, 1, 2]);
        let exact = restricted_kostka_fermionic::<BigInt>(&q);
        for order in 0..8 {
            let t = restricted_kostka_fermionic_truncated::<BigInt>(&q, order).unwrap();
            assert!(t.agrees_with(&exact));
        }
    }
}
