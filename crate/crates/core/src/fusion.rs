//! Graded characters of sl2 fusion products `pi_1^{*m_1} * ... * pi_k^{*m_k}`
//! and unrestricted Kostka polynomials.
//!
//! Characters here are in the reversed normalization: the highest weight
//! vector of the fusion product sits at degree `h(m)`, and the weight-`n`
//! component is
//!
//! ```text
//! q^{-p(m)/4} sum_{j >= 0, 2 sum (j_l - a_l) = n} q^{sum (j_l - a_l)^2}
//!     [m_k, j_k] prod_{l<k} [m_l + j_{l+1}, j_l]
//! ```
//!
//! with `2 a_l = m_l + ... + m_k`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::{self, BinomialTable};
use crate::qseries::{ExactRational, Series};
use crate::scalar::Coeff;

/// Multiplicities `m_1..m_k` of the factor sizes `1..k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    counts: Vec<u32>,
}

impl Composition {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Domain("a composition needs at least one size".into()));
        }
        Ok(Self { counts })
    }

    pub fn zeros(k: usize) -> Result<Self> {
        Self::new(vec![0; k])
    }

    /// Number of distinct factor sizes `k` (trailing zeros included).
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&c| c == 0)
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// `m_size`, 1-based; zero past the end.
    pub fn count(&self, size: usize) -> u32 {
        if size == 0 {
            return 0;
        }
        self.counts.get(size - 1).copied().unwrap_or(0)
    }

    /// Adds `n` factors of size `size`; size 0 (the trivial module) is ignored.
    pub fn add_factors(&mut self, size: usize, n: u32) {
        if size == 0 {
            return;
        }
        if self.counts.len() < size {
            self.counts.resize(size, 0);
        }
        self.counts[size - 1] += n;
    }

    /// `|m| = sum_i i * m_i`.
    pub fn weighted_size(&self) -> i64 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as i64 + 1) * c as i64)
            .sum()
    }

    /// Suffix sums `m_l + ... + m_k` for `l = 1..k`.
    pub fn suffix_sums(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.len()];
        let mut acc = 0i64;
        for l in (0..self.len()).rev() {
            acc += self.counts[l] as i64;
            out[l] = acc;
        }
        out
    }

    /// The same multiset with trailing zero counts removed (keeps at least one entry).
    pub fn trimmed(&self) -> Self {
        let mut counts = self.counts.clone();
        while counts.len() > 1 && counts.last() == Some(&0) {
            counts.pop();
        }
        Self { counts }
    }

    /// Pads with zero counts up to `k` sizes.
    pub fn padded_to(&self, k: usize) -> Result<Self> {
        if self.trimmed().len() > k && !self.is_empty() {
            return Err(Error::Domain(format!(
                "composition {self} uses sizes beyond {k}"
            )));
        }
        let mut counts = self.counts.clone();
        counts.resize(k, 0);
        Self::new(counts)
    }

    /// Parses `"1:2,3:1"` (size:count pairs) or `"[2,0,1]"` (positional).
    /// With `k` given, the result has exactly `k` sizes.
    pub fn parse(text: &str, k: Option<usize>) -> Result<Self> {
        let t = text.trim();
        let bad = |why: &str| Error::Parse(format!("composition {text:?}: {why}"));
        let mut comp = if let Some(inner) = t.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| bad("missing ']'"))?;
            let counts = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|x| x.trim().parse::<u32>().map_err(|_| bad("bad count")))
                    .collect::<Result<Vec<_>>>()?
            };
            Self { counts }
        } else {
            let mut comp = Self { counts: Vec::new() };
            if !t.is_empty() {
                for part in t.split(',') {
                    let (size, count) = part.split_once(':').ok_or_else(|| bad("expected size:count"))?;
                    let size: usize = size.trim().parse().map_err(|_| bad("bad size"))?;
                    let count: u32 = count.trim().parse().map_err(|_| bad("bad count"))?;
                    if size == 0 {
                        return Err(bad("sizes start at 1"));
                    }
                    comp.add_factors(size, count);
                }
            }
            comp
        };
        match k {
            Some(k) => {
                if comp.counts.len() > k {
                    if comp.counts[k..].iter().any(|&c| c != 0) {
                        return Err(bad(&format!("size exceeds declared k = {k}")));
                    }
                    comp.counts.truncate(k);
                }
                comp.counts.resize(k, 0);
            }
            None if comp.counts.is_empty() => return Err(bad("empty")),
            None => {}
        }
        Self::new(comp.counts)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Composition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}

/// Number of `a` with `m_a + ... + m_k` odd.
pub fn p_of(m: &Composition) -> i64 {
    m.suffix_sums().iter().filter(|s| *s % 2 != 0).count() as i64
}

/// `m A m` with `A_{ij} = min(i, j)`, computed as the sum of squared suffix sums.
pub fn quadratic_form(m: &Composition) -> i64 {
    m.suffix_sums().iter().map(|s| s * s).sum()
}

/// `h(m) = (m A m - p(m)) / 4`, the top degree of the fusion product.
pub fn h_of(m: &Composition) -> ExactRational {
    BigRational::new(BigInt::from(quadratic_form(m) - p_of(m)), BigInt::from(4))
}

/// `h(m)` as an integer (it always is one).
pub fn h_int(m: &Composition) -> i64 {
    let num = quadratic_form(m) - p_of(m);
    assert!(num % 4 == 0, "h(m) not integral for {m}");
    num / 4
}

struct FusionSum<'a, C> {
    m: &'a Composition,
    suffix: Vec<i64>,
    /// exclusive exponent bound; `None` for exact
    limit: Option<i64>,
    binomials: BinomialTable<C>,
    acc: Vec<C>,
    p: i64,
    j: Vec<i64>,
}

impl<C: Coeff> FusionSum<'_, C> {
    /// Choose `j_l` for `l = level, level-1, .., 1` (1-based). `rem` is the
    /// remaining value of `sum j`, `sq` the accumulated `sum (2 j - S)^2`.
    fn walk(&mut self, level: usize, rem: i64, sq: i64) -> Result<()> {
        if level == 0 {
            if rem != 0 {
                return Ok(());
            }
            return self.emit(sq);
        }
        let l = level - 1;
        let cap = if level == self.m.len() {
            self.m.counts()[l] as i64
        } else {
            self.m.counts()[l] as i64 + self.j[l + 1]
        };
        let hi = cap.min(rem);
        let lo = if level == 1 { rem } else { 0 };
        if lo > hi {
            return Ok(());
        }
        // sum over the remaining levels of d_l = 2 j_l - S_l is fixed; Cauchy-Schwarz
        // bounds the remaining squares from below
        let rem_suffix: i64 = self.suffix[..level].iter().sum();
        for jl in lo..=hi {
            let d = 2 * jl - self.suffix[l];
            let sq2 = sq + d * d;
            if let Some(limit) = self.limit {
                let t = (level - 1) as i64;
                let lower = if t == 0 {
                    0
                } else {
                    let x = 2 * (rem - jl) - (rem_suffix - self.suffix[l]);
                    // ceil(x^2 / t)
                    (x * x + t - 1) / t
                };
                if sq2 + lower - self.p >= 4 * limit {
                    continue;
                }
            }
            self.j[l] = jl;
            self.walk(level - 1, rem - jl, sq2)?;
        }
        Ok(())
    }

    fn emit(&mut self, sq: i64) -> Result<()> {
        let num = sq - self.p;
        if num % 4 != 0 {
            return Err(Error::Inconsistent(format!(
                "fusion character exponent {num}/4 is not integral for m = {}",
                self.m
            )));
        }
        let e = num / 4;
        if e < 0 {
            return Err(Error::Inconsistent(format!(
                "negative fusion character exponent {e} for m = {}",
                self.m
            )));
        }
        if let Some(limit) = self.limit {
            if e >= limit {
                return Ok(());
            }
        }
        let k = self.m.len();
        let len = self.limit.map(|l| (l - e) as usize);
        let mut prod: Vec<C> = self.binomials.get(self.m.counts()[k - 1] as i64, self.j[k - 1]).to_vec();
        for l in (0..k - 1).rev() {
            if prod.is_empty() {
                return Ok(());
            }
            let b = self.binomials.get(self.m.counts()[l] as i64 + self.j[l + 1], self.j[l]);
            let full = prod.len() + b.len();
            prod = poly::mul_trunc(&prod, b, len.unwrap_or(full).min(full));
        }
        poly::add_at(&mut self.acc, e as usize, &prod, self.limit.map(|l| l as usize));
        Ok(())
    }
}

fn fusion_sum<C: Coeff>(m: &Composition, n: i64, limit: Option<i64>) -> Result<Vec<C>> {
    let size = m.weighted_size();
    if (n + size) % 2 != 0 || n.abs() > size {
        return Ok(Vec::new());
    }
    let total = (n + size) / 2;
    let mut st = FusionSum {
        m,
        suffix: m.suffix_sums(),
        limit,
        binomials: BinomialTable::new(limit.map(|l| l.max(0) as usize)),
        acc: Vec::new(),
        p: p_of(m),
        j: vec![0; m.len()],
    };
    st.walk(m.len(), total, 0)?;
    Ok(st.acc)
}

/// Reversed graded character of the weight-`n` space of the fusion product,
/// known below `q^order`.
pub fn fusion_char<C: Coeff>(m: &Composition, n: i64, order: i64) -> Result<Series<C>> {
    if order < 0 {
        return Err(Error::Domain(format!("negative order {order}")));
    }
    let acc = fusion_sum(m, n, Some(order))?;
    Ok(Series::from_coeffs(0, acc, Some(order)))
}

/// The full reversed character of the weight-`n` space as an exact polynomial.
pub fn fusion_char_exact<C: Coeff>(m: &Composition, n: i64) -> Result<Series<C>> {
    let order = h_int(m) + 1;
    let acc = fusion_sum(m, n, Some(order))?;
    Ok(Series::from_coeffs(0, acc, Some(order)).into_exact())
}

/// Reversed unrestricted Kostka polynomial: the graded multiplicity of `pi_j`
/// in the fusion product, `ch V^j - ch V^{j+2}`.
pub fn unrestricted_kostka<C: Coeff>(j: i64, m: &Composition) -> Result<Series<C>> {
    if j < 0 {
        return Err(Error::Domain(format!("negative weight {j}")));
    }
    let a = fusion_char_exact::<C>(m, j)?;
    let b = fusion_char_exact::<C>(m, j + 2)?;
    Ok(a.sub(&b))
}

/// Multiplicity of `pi_j` in the ordinary tensor product of all factors,
/// by iterating the Clebsch-Gordan rule.
pub fn classical_multiplicity(j: i64, m: &Composition) -> u128 {
    if j < 0 {
        return 0;
    }
    let max = m.weighted_size() as usize;
    let mut mult = vec![0u128; max + 1];
    mult[0] = 1;
    let mut top = 0usize;
    for size in 1..=m.len() {
        for _ in 0..m.count(size) {
            let mut next = vec![0u128; max + 1];
            for (b, &c) in mult.iter().enumerate().take(top + 1) {
                if c == 0 {
                    continue;
                }
                let lo = b.abs_diff(size);
                let mut t = lo;
                while t <= b + size {
                    next[t] += c;
                    t += 2;
                }
            }
            top += size;
            mult = next;
        }
    }
    mult.get(j as usize).copied().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QSeries;

    fn comp(c: &[u32]) -> Composition {
        Composition::new(c.to_vec()).unwrap()
    }

    fn poly(c: &[i64]) -> QSeries {
        QSeries::polynomial(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn p_and_h_examples() {
        assert_eq!(p_of(&comp(&[2])), 0);
        assert_eq!(p_of(&comp(&[1])), 1);
        assert_eq!(p_of(&comp(&[0, 0, 0])), 0);
        assert_eq!(h_of(&comp(&[2])), crate::qseries::int(1));
        assert_eq!(h_of(&comp(&[1])), crate::qseries::int(0));
        assert_eq!(h_of(&comp(&[1, 1])), crate::qseries::int(1));
    }

    #[test]
    fn fusion_char_examples() {
        let single_pi2 = fusion_char::<BigInt>(&comp(&[0, 1]), 0, 5).unwrap();
        assert!(single_pi2.agrees_with(&QSeries::one()));
        assert!(fusion_char::<BigInt>(&comp(&[2]), 2, 5).unwrap().agrees_with(&poly(&[0, 1])));
        assert!(fusion_char::<BigInt>(&comp(&[2]), 0, 5).unwrap().agrees_with(&poly(&[1, 1])));
        let out = fusion_char::<BigInt>(&comp(&[2, 1]), 6, 5).unwrap();
        assert!(out.is_zero());
        assert_eq!(out.order(), Some(5));
        assert!(fusion_char::<BigInt>(&comp(&[1]), 0, -1).is_err());
    }

    #[test]
    fn kostka_examples() {
        let m = comp(&[2]);
        assert_eq!(unrestricted_kostka::<BigInt>(0, &m).unwrap(), poly(&[1]));
        assert_eq!(unrestricted_kostka::<BigInt>(2, &m).unwrap(), poly(&[0, 1]));
        assert_eq!(unrestricted_kostka::<BigInt>(1, &m).unwrap(), QSeries::zero());
    }

    #[test]
    fn clebsch_gordan_examples() {
        let m = comp(&[2]);
        assert_eq!(classical_multiplicity(0, &m), 1);
        assert_eq!(classical_multiplicity(2, &m), 1);
        assert_eq!(classical_multiplicity(4, &m), 0);
        // pi_1 x pi_2 x pi_2 = pi_5 + 2 pi_3 + 2 pi_1 (dim 2*3*3 = 18)
        let m = comp(&[1, 2]);
        assert_eq!(classical_multiplicity(5, &m), 1);
        assert_eq!(classical_multiplicity(3, &m), 2);
        assert_eq!(classical_multiplicity(1, &m), 2);
    }

    #[test]
    fn composition_text_forms() {
        assert_eq!(Composition::parse("1:2,3:1", None).unwrap(), comp(&[2, 0, 1]));
        assert_eq!(Composition::parse("[2,0,1]", None).unwrap(), comp(&[2, 0, 1]));
        assert_eq!(Composition::parse("1:1", Some(2)).unwrap(), comp(&[1, 0]));
        assert_eq!(Composition::parse("[1,0,0]", Some(1)).unwrap(), comp(&[1]));
        assert!(Composition::parse("3:1", Some(2)).is_err());
        assert!(Composition::parse("0:1", None).is_err());
        assert!(Composition::parse("1-2", None).is_err());
        assert!(Composition::parse("[1,x]", None).is_err());
        assert_eq!(comp(&[2, 0, 1]).to_string(), "[2,0,1]");
        assert_eq!(comp(&[2, 0, 0]).trimmed(), comp(&[2]));
    }

    #[test]
    fn truncated_agrees_with_exact() {
        let m = comp(&[1, 2, 1]);
        for n in -8..=8 {
            let e = fusion_char_exact::<BigInt>(&m, n).unwrap();
            for order in 0..6 {
                let t = fusion_char::<BigInt>(&m, n, order).unwrap();
                assert!(t.agrees_with(&e), "n={n} order={order}");
            }
        }
    }
}
