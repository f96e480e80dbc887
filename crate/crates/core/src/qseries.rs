//! Exact truncated Laurent series in `q` with a rational exponent prefix.
//!
//! A [`Series`] stores coefficients on the exponent grid
//! `prefix + e / lattice` for `e` in `min_deg .. order`. Coefficients of all
//! exponents below `prefix + order / lattice` are known exactly; an exact
//! series (a polynomial) has no upper bound and every unstored coefficient is
//! zero.
//!
//! Canonical form: `0 <= prefix < 1 / lattice`, the first stored coefficient
//! is nonzero (or nothing is stored), and exact series carry no trailing
//! zeros. The exact zero is `prefix = 0, lattice = 1, min_deg = 0`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;
use crate::scalar::Coeff;

pub type ExactRational = BigRational;

pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(v))
}

fn floor_i64(x: &BigRational) -> i64 {
    x.floor().to_integer().to_i64().expect("exponent overflow")
}

fn ceil_i64(x: &BigRational) -> i64 {
    x.ceil().to_integer().to_i64().expect("exponent overflow")
}

fn exact_i64(x: &BigRational) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// One coefficient position where two series disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch<C> {
    pub exponent: ExactRational,
    pub lhs: C,
    pub rhs: C,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Series<C> {
    prefix: ExactRational,
    lattice: u32,
    min_deg: i64,
    order: Option<i64>,
    coeffs: Vec<C>,
}

impl<C: Coeff> Series<C> {
    pub fn zero() -> Self {
        Self {
            prefix: BigRational::zero(),
            lattice: 1,
            min_deg: 0,
            order: None,
            coeffs: Vec::new(),
        }
    }

    /// The zero series known only below `q^order`.
    pub fn zero_to(order: i64) -> Self {
        Self::from_coeffs(order, Vec::new(), Some(order))
    }

    pub fn one() -> Self {
        Self::polynomial(vec![C::one()])
    }

    /// `coeff * q^gamma`, exact.
    pub fn monomial(gamma: &ExactRational, coeff: C) -> Self {
        Self {
            prefix: gamma.clone(),
            lattice: 1,
            min_deg: 0,
            order: None,
            coeffs: vec![coeff],
        }
        .canonical()
    }

    /// Exact polynomial `sum coeffs[i] q^i`.
    pub fn polynomial(coeffs: Vec<C>) -> Self {
        Self::from_coeffs(0, coeffs, None)
    }

    /// Integer-exponent series `sum coeffs[i] q^(min_deg + i)`; coefficients at or
    /// beyond `order` are dropped.
    pub fn from_coeffs(min_deg: i64, mut coeffs: Vec<C>, order: Option<i64>) -> Self {
        if let Some(o) = order {
            coeffs.truncate((o - min_deg).max(0) as usize);
        }
        Self {
            prefix: BigRational::zero(),
            lattice: 1,
            min_deg: order.map_or(min_deg, |o| min_deg.min(o)),
            order,
            coeffs,
        }
        .canonical()
    }

    pub fn from_parts(
        prefix: ExactRational,
        lattice: u32,
        min_deg: i64,
        order: Option<i64>,
        coeffs: Vec<C>,
    ) -> Result<Self> {
        if lattice == 0 {
            return Err(Error::Domain("lattice denominator must be positive".into()));
        }
        if let Some(o) = order {
            if (o - min_deg) as i128 != coeffs.len() as i128 {
                return Err(Error::Domain(format!(
                    "coefficient count {} does not match order - min_deg = {}",
                    coeffs.len(),
                    o - min_deg
                )));
            }
        }
        Ok(Self {
            prefix,
            lattice,
            min_deg,
            order,
            coeffs,
        }
        .canonical())
    }

    fn canonical(mut self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_deg += lead as i64;
        }
        match self.order {
            None => {
                poly::trim_trailing(&mut self.coeffs);
                if self.coeffs.is_empty() {
                    return Self::zero();
                }
            }
            Some(o) if self.coeffs.is_empty() => self.min_deg = o,
            Some(o) => {
                let len = (o - self.min_deg).max(0) as usize;
                self.coeffs.resize(len, C::zero());
            }
        }
        let shift = floor_i64(&(&self.prefix * BigInt::from(self.lattice)));
        if shift != 0 {
            self.prefix -= BigRational::new(BigInt::from(shift), BigInt::from(self.lattice));
            self.min_deg += shift;
            self.order = self.order.map(|o| o + shift);
        }
        self
    }

    pub fn prefix(&self) -> &ExactRational {
        &self.prefix
    }

    pub fn lattice(&self) -> u32 {
        self.lattice
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    /// Exclusive validity bound in lattice steps, `None` for exact series.
    pub fn order(&self) -> Option<i64> {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn is_exact(&self) -> bool {
        self.order.is_none()
    }

    /// No nonzero coefficient is stored (the series is zero within its validity).
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn step(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.lattice))
    }

    pub fn exponent_of(&self, index: i64) -> ExactRational {
        &self.prefix + self.step() * BigInt::from(index)
    }

    /// Absolute exponent below which all coefficients are known; `None` if exact.
    pub fn validity_bound(&self) -> Option<ExactRational> {
        self.order.map(|o| self.exponent_of(o))
    }

    pub fn leading_exponent(&self) -> Option<ExactRational> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.exponent_of(self.min_deg))
        }
    }

    /// Highest exponent with a nonzero coefficient of an exact nonzero series.
    pub fn degree(&self) -> Option<ExactRational> {
        if self.is_exact() && !self.coeffs.is_empty() {
            Some(self.exponent_of(self.min_deg + self.coeffs.len() as i64 - 1))
        } else {
            None
        }
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (ExactRational, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exponent_of(self.min_deg + i as i64), c))
    }

    /// Coefficient of `q^gamma`, or `None` when `gamma` is beyond the validity bound.
    pub fn coeff_at(&self, gamma: &ExactRational) -> Option<C> {
        if let Some(b) = self.validity_bound() {
            if gamma >= &b {
                return None;
            }
        }
        let idx = (gamma - &self.prefix) * BigInt::from(self.lattice);
        match exact_i64(&idx) {
            Some(i) if i >= self.min_deg && ((i - self.min_deg) as usize) < self.coeffs.len() => {
                Some(self.coeffs[(i - self.min_deg) as usize].clone())
            }
            _ => Some(C::zero()),
        }
    }

    /// Coefficients of `q^0 .. q^(upto-1)`. Fails if the window is not fully
    /// known or a nonzero term inside it has a non-integer exponent.
    pub fn int_coeffs(&self, upto: i64) -> Result<Vec<C>> {
        if let Some(b) = self.validity_bound() {
            if b < int(upto) {
                return Err(Error::Domain(format!(
                    "series known only below q^{b}, requested {upto} coefficients"
                )));
            }
        }
        let mut out = vec![C::zero(); upto.max(0) as usize];
        for (e, c) in self.terms() {
            if e >= int(upto) {
                break;
            }
            let ei = exact_i64(&e)
                .ok_or_else(|| Error::Domain(format!("non-integer exponent {e} in window")))?;
            if ei < 0 {
                return Err(Error::Domain(format!("negative exponent {ei} in window")));
            }
            out[ei as usize] = c.clone();
        }
        Ok(out)
    }

    /// Stride and offset that map this series onto the grid `(prefix, lattice)`.
    fn grid_map(&self, prefix: &ExactRational, lattice: u32) -> (i64, i64) {
        assert!(lattice.is_multiple_of(self.lattice), "grid does not refine series lattice");
        let stride = (lattice / self.lattice) as i64;
        let off = (&self.prefix - prefix) * BigInt::from(lattice);
        let off = exact_i64(&off).expect("series prefix not on target grid");
        (off, stride)
    }

    /// Re-express on a finer grid: returns `(min_deg, order, coeffs)`.
    fn on_grid(&self, prefix: &ExactRational, lattice: u32) -> (i64, Option<i64>, Vec<C>) {
        let (off, stride) = self.grid_map(prefix, lattice);
        if stride == 1 {
            return (
                self.min_deg + off,
                self.order.map(|o| o + off),
                self.coeffs.clone(),
            );
        }
        let mut coeffs = Vec::new();
        if !self.coeffs.is_empty() {
            coeffs = vec![C::zero(); (self.coeffs.len() - 1) * stride as usize + 1];
            for (i, c) in self.coeffs.iter().enumerate() {
                coeffs[i * stride as usize] = c.clone();
            }
        }
        (
            self.min_deg * stride + off,
            self.order.map(|o| o * stride + off),
            coeffs,
        )
    }

    fn common_grid(&self, other: &Self) -> (ExactRational, u32) {
        let l0 = self.lattice.lcm(&other.lattice);
        let diff = (&self.prefix - &other.prefix) * BigInt::from(l0);
        let extra = diff.denom().to_u32().expect("lattice overflow");
        let lattice = l0.checked_mul(extra).expect("lattice overflow");
        (self.prefix_on(lattice), lattice)
    }

    /// Canonical prefix of this series' grid when refined to `lattice`.
    fn prefix_on(&self, lattice: u32) -> ExactRational {
        let scaled = &self.prefix * BigInt::from(lattice);
        let t = scaled.floor();
        (scaled - t) / BigInt::from(lattice)
    }

    pub fn neg(&self) -> Self {
        Self {
            prefix: self.prefix.clone(),
            lattice: self.lattice,
            min_deg: self.min_deg,
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self {
            prefix: self.prefix.clone(),
            lattice: self.lattice,
            min_deg: self.min_deg,
            order: self.order,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        }
        .canonical()
    }

    pub fn add(&self, other: &Self) -> Self {
        let (prefix, lattice) = self.common_grid(other);
        let (ma, oa, ca) = self.on_grid(&prefix, lattice);
        let (mb, ob, cb) = other.on_grid(&prefix, lattice);
        let order = match (oa, ob) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let mut lo = match (ca.is_empty(), cb.is_empty()) {
            (true, true) => order.unwrap_or(0),
            (false, true) => ma,
            (true, false) => mb,
            (false, false) => ma.min(mb),
        };
        let mut hi = (ma + ca.len() as i64).max(mb + cb.len() as i64);
        if let Some(o) = order {
            hi = hi.min(o);
            lo = lo.min(o);
        }
        let mut coeffs = vec![C::zero(); (hi - lo).max(0) as usize];
        for (m, cs) in [(ma, &ca), (mb, &cb)] {
            for (i, c) in cs.iter().enumerate() {
                let e = m + i as i64;
                if e >= lo && e < hi {
                    coeffs[(e - lo) as usize].add_ref(c);
                }
            }
        }
        let end = lo + coeffs.len() as i64;
        if let Some(o) = order {
            coeffs.resize((o - lo) as usize, C::zero());
            debug_assert!(end <= o);
        }
        Self {
            prefix,
            lattice,
            min_deg: lo,
            order,
            coeffs,
        }
        .canonical()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cauchy product. The validity bound is
    /// `min(lead(a) + bound(b), lead(b) + bound(a))`.
    pub fn mul(&self, other: &Self) -> Self {
        if (self.is_exact() && self.is_zero()) || (other.is_exact() && other.is_zero()) {
            return Self::zero();
        }
        let lattice = self.lattice.lcm(&other.lattice);
        let pa = self.prefix_on(lattice);
        let pb = other.prefix_on(lattice);
        let (ma, oa, ca) = self.on_grid(&pa, lattice);
        let (mb, ob, cb) = other.on_grid(&pb, lattice);
        let lead_a = if ca.is_empty() { oa } else { Some(ma) };
        let lead_b = if cb.is_empty() { ob } else { Some(mb) };
        let cand = |lead: Option<i64>, ord: Option<i64>| match (lead, ord) {
            (Some(l), Some(o)) => Some(l + o),
            _ => None,
        };
        let order = match (cand(lead_a, ob), cand(lead_b, oa)) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        let lo = ma + mb;
        let coeffs = if ca.is_empty() || cb.is_empty() {
            Vec::new()
        } else {
            let full = ca.len() + cb.len() - 1;
            let len = order.map_or(full, |o| ((o - lo).max(0) as usize).min(full));
            poly::mul_trunc(&ca, &cb, len)
        };
        let mut out = Self {
            prefix: pa + pb,
            lattice,
            min_deg: lo,
            order,
            coeffs,
        };
        if let Some(o) = order {
            if o < lo {
                out.min_deg = o;
                out.coeffs.clear();
            } else {
                out.coeffs.resize((o - lo) as usize, C::zero());
            }
        }
        out.canonical()
    }

    /// Multiply by `q^gamma`.
    pub fn shift(&self, gamma: &ExactRational) -> Self {
        let mut out = self.clone();
        if self.is_exact() && self.is_zero() {
            return out;
        }
        out.prefix += gamma;
        out.canonical()
    }

    pub fn shift_int(&self, e: i64) -> Self {
        let mut out = self.clone();
        if self.is_exact() && self.is_zero() {
            return out;
        }
        let d = e * self.lattice as i64;
        out.min_deg += d;
        out.order = out.order.map(|o| o + d);
        out
    }

    /// Forget all coefficients at exponents `>= bound`.
    pub fn truncate(&self, bound: &ExactRational) -> Self {
        let idx = ceil_i64(&((bound - &self.prefix) * BigInt::from(self.lattice)));
        let o = self.order.map_or(idx, |o| o.min(idx));
        let mut coeffs = self.coeffs.clone();
        let keep = (o - self.min_deg).max(0) as usize;
        coeffs.truncate(keep);
        coeffs.resize(keep, C::zero());
        Self {
            prefix: self.prefix.clone(),
            lattice: self.lattice,
            min_deg: self.min_deg.min(o),
            order: Some(o),
            coeffs,
        }
        .canonical()
    }

    pub fn truncated(&self, order: i64) -> Self {
        self.truncate(&int(order))
    }

    /// First exponent (within common validity) where the two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<Mismatch<C>> {
        let (prefix, lattice) = self.common_grid(other);
        let (ma, oa, ca) = self.on_grid(&prefix, lattice);
        let (mb, ob, cb) = other.on_grid(&prefix, lattice);
        let bound = match (oa, ob) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        let get = |m: i64, cs: &[C], e: i64| -> C {
            if e >= m && ((e - m) as usize) < cs.len() {
                cs[(e - m) as usize].clone()
            } else {
                C::zero()
            }
        };
        let mut candidates: Vec<i64> = Vec::new();
        candidates.extend((0..ca.len()).map(|i| ma + i as i64));
        candidates.extend((0..cb.len()).map(|i| mb + i as i64));
        candidates.sort_unstable();
        candidates.dedup();
        for e in candidates {
            if bound.is_some_and(|b| e >= b) {
                break;
            }
            let (x, y) = (get(ma, &ca, e), get(mb, &cb, e));
            if x != y {
                let exponent = &prefix + BigRational::new(BigInt::from(e), BigInt::from(lattice));
                return Some(Mismatch {
                    exponent,
                    lhs: x,
                    rhs: y,
                });
            }
        }
        None
    }

    /// Coefficient-wise equality within the common validity bound.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.first_mismatch(other).is_none()
    }

    /// `q^h * p(q^{-1})` for an exact polynomial `p` of degree at most `h`.
    pub fn reverse(&self, h: &ExactRational) -> Result<Self> {
        if !self.is_exact() {
            return Err(Error::NotExact("reverse needs an exact polynomial"));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let deg = self.degree().unwrap();
        if &deg > h {
            return Err(Error::Domain(format!(
                "reverse: degree {deg} exceeds h = {h}"
            )));
        }
        let top = self.min_deg + self.coeffs.len() as i64 - 1;
        let base = h - &self.prefix - BigRational::new(BigInt::from(top), BigInt::from(self.lattice));
        let coeffs: Vec<C> = self.coeffs.iter().rev().cloned().collect();
        Ok(Self {
            prefix: base,
            lattice: self.lattice,
            min_deg: 0,
            order: None,
            coeffs,
        }
        .canonical())
    }

    /// Sum of all coefficients of an exact polynomial.
    pub fn eval_at_one(&self) -> Result<C> {
        if !self.is_exact() {
            return Err(Error::NotExact("evaluation at q = 1 needs an exact polynomial"));
        }
        let mut s = C::zero();
        for c in &self.coeffs {
            s.add_ref(c);
        }
        Ok(s)
    }

    /// Declare a series exact: every coefficient past the current bound is zero.
    pub(crate) fn into_exact(mut self) -> Self {
        self.order = None;
        self.canonical()
    }

    /// Exponent ratio `gamma` with `self = q^gamma * other` within common
    /// validity, if one exists.
    pub fn monomial_ratio(&self, other: &Self) -> Option<ExactRational> {
        match (self.leading_exponent(), other.leading_exponent()) {
            (None, None) => Some(BigRational::zero()),
            (Some(a), Some(b)) => {
                let gamma = a - b;
                if self.agrees_with(&other.shift(&gamma)) {
                    Some(gamma)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn sum<'a, I>(items: I) -> Self
    where
        I: IntoIterator<Item = &'a Self>,
    {
        items
            .into_iter()
            .fold(Self::zero(), |acc, s| acc.add(s))
    }
}

impl<C: Coeff> Default for Series<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<'a, C: Coeff> Add<&'a Series<C>> for &'a Series<C> {
    type Output = Series<C>;
    fn add(self, rhs: &'a Series<C>) -> Series<C> {
        Series::add(self, rhs)
    }
}

impl<'a, C: Coeff> Sub<&'a Series<C>> for &'a Series<C> {
    type Output = Series<C>;
    fn sub(self, rhs: &'a Series<C>) -> Series<C> {
        Series::sub(self, rhs)
    }
}

impl<'a, C: Coeff> Mul<&'a Series<C>> for &'a Series<C> {
    type Output = Series<C>;
    fn mul(self, rhs: &'a Series<C>) -> Series<C> {
        Series::mul(self, rhs)
    }
}

impl<C: Coeff> Neg for &Series<C> {
    type Output = Series<C>;
    fn neg(self) -> Series<C> {
        Series::neg(self)
    }
}

pub fn monomial<C: Coeff>(gamma: &ExactRational, coeff: C) -> Series<C> {
    Series::monomial(gamma, coeff)
}

/// The exact polynomial `(q)_n = prod_{i=1}^n (1 - q^i)`.
pub fn q_factorial<C: Coeff>(n: i64) -> Result<Series<C>> {
    if n < 0 {
        return Err(Error::Domain(format!("q-factorial of negative index {n}")));
    }
    let mut p = vec![C::one()];
    for i in 1..=n as usize {
        let len = p.len() + i;
        poly::mul_one_minus_qn(&mut p, i, len);
    }
    Ok(Series::polynomial(p))
}

/// Gaussian binomial; zero whenever `m < 0`, `n < 0` or `m > n`.
pub fn q_binomial<C: Coeff>(n: i64, m: i64) -> Series<C> {
    Series::polynomial(poly::gaussian_binomial(n, m, None))
}

/// `1/(q)_n` known below `q^order`; the zero series for `n < 0`.
pub fn invert_q_factorial<C: Coeff>(n: i64, order: i64) -> Series<C> {
    if n < 0 {
        return Series::zero_to(order);
    }
    let len = order.max(0) as usize;
    let mut p = vec![C::one()];
    p.truncate(len);
    for i in 1..=(n as usize).min(len) {
        poly::div_one_minus_qn(&mut p, i, len);
    }
    Series::from_coeffs(0, p, Some(order))
}

pub fn reverse<C: Coeff>(p: &Series<C>, h: &ExactRational) -> Result<Series<C>> {
    p.reverse(h)
}

pub fn eval_at_one<C: Coeff>(p: &Series<C>) -> Result<C> {
    p.eval_at_one()
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: i64,
    pub den: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OrderJson {
    Finite(i64),
    Named(String),
}

/// Wire form of a series: coefficients are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub prefix: RationalJson,
    pub min_deg: i64,
    pub order: OrderJson,
    pub coeffs: Vec<String>,
    #[serde(default = "one_u32", skip_serializing_if = "is_one")]
    pub lattice: u32,
}

fn one_u32() -> u32 {
    1
}

fn is_one(v: &u32) -> bool {
    *v == 1
}

impl<C: Coeff> Series<C> {
    pub fn to_json(&self) -> SeriesJson {
        let num = self.prefix.numer().to_i64().expect("prefix numerator overflow");
        let den = self.prefix.denom().to_i64().expect("prefix denominator overflow");
        SeriesJson {
            prefix: RationalJson { num, den },
            min_deg: self.min_deg,
            order: match self.order {
                Some(o) => OrderJson::Finite(o),
                None => OrderJson::Named("inf".into()),
            },
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
            lattice: self.lattice,
        }
    }

    pub fn from_json(j: &SeriesJson) -> Result<Self> {
        if j.prefix.den <= 0 {
            return Err(Error::Parse("prefix denominator must be positive".into()));
        }
        let order = match &j.order {
            OrderJson::Finite(o) => Some(*o),
            OrderJson::Named(s) if s == "inf" => None,
            OrderJson::Named(s) => return Err(Error::Parse(format!("bad order {s:?}"))),
        };
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| {
                s.parse::<C>()
                    .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))
            })
            .collect::<Result<Vec<C>>>()?;
        Self::from_parts(rat(j.prefix.num, j.prefix.den), j.lattice, j.min_deg, order, coeffs)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("series JSON serialization")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: SeriesJson = serde_json::from_str(s)?;
        Self::from_json(&j)
    }
}

// ---------------------------------------------------------------------------
// Display

fn fmt_exponent(e: &ExactRational) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

/// Plain rendering: `1 + q^2 - 3q^(1/2) + O(q^7)`.
impl<C: Coeff> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            let s = c.to_string();
            let (neg, mag) = match s.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, s),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == "1";
            if e.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}")?;
            }
            if e.is_one() {
                write!(f, "q")?;
            } else {
                write!(f, "q^{}", fmt_exponent(&e))?;
            }
        }
        if let Some(b) = self.validity_bound() {
            if first {
                write!(f, "O(q^{})", fmt_exponent(&b))?;
            } else {
                write!(f, " + O(q^{})", fmt_exponent(&b))?;
            }
        } else if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Sign helper used by renderers: true when the decimal form starts with '-'.
pub fn is_negative<C: Coeff>(c: &C) -> bool {
    c.to_string().starts_with('-')
}
