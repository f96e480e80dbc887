//! Branching functions `c^j_{i1,i2}(q)` of `L_{i1,k1} (x) L_{i2,k2}` over the
//! diagonal `L_{j,k1+k2}`, by three independent methods:
//!
//! * finite N: a restricted Kostka polynomial of the composition `m(N)`;
//! * bosonic: an alternating sum of graded components of `L_{i1,k1}`;
//! * fermionic: a quasi-particle sum with data `(B, C, u, v)`.
//!
//! All three return the d-grading, where the branching function starts at
//! degree 0.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::affine::{self, AffineLabel, ComponentCache};
use crate::error::{Error, Result};
use crate::fusion::Composition;
use crate::kostka::{self, RestrictedKostkaQuery};
use crate::poly::{self, BinomialTable};
use crate::qseries::{ExactRational, Series, int, rat};
use crate::scalar::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CosetSpec {
    pub i1: i64,
    pub k1: i64,
    pub i2: i64,
    pub k2: i64,
    pub j: i64,
}

impl CosetSpec {
    pub fn new(i1: i64, k1: i64, i2: i64, k2: i64, j: i64) -> Result<Self> {
        if k1 < 1 || k2 < 1 {
            return Err(Error::Domain(format!("levels ({k1}, {k2}) must be positive")));
        }
        if !(0..=k1).contains(&i1) {
            return Err(Error::Domain(format!("i1 = {i1} outside [0, {k1}]")));
        }
        if !(0..=k2).contains(&i2) {
            return Err(Error::Domain(format!("i2 = {i2} outside [0, {k2}]")));
        }
        if !(0..=k1 + k2).contains(&j) {
            return Err(Error::Domain(format!("j = {j} outside [0, {}]", k1 + k2)));
        }
        Ok(Self { i1, k1, i2, k2, j })
    }

    /// `j = i1 + i2 (mod 2)`; otherwise every method gives zero.
    pub fn parity_ok(&self) -> bool {
        (self.i1 + self.i2 - self.j) % 2 == 0
    }

    pub fn swapped(&self) -> Self {
        Self {
            i1: self.i2,
            k1: self.k2,
            i2: self.i1,
            k2: self.k1,
            j: self.j,
        }
    }

    /// `k1 + k2 + 2`.
    pub fn big_k(&self) -> i64 {
        self.k1 + self.k2 + 2
    }

    /// Every valid spec with the given levels, parity-valid or not.
    pub fn all_for_levels(k1: i64, k2: i64) -> Vec<Self> {
        let mut out = Vec::new();
        for i1 in 0..=k1 {
            for i2 in 0..=k2 {
                for j in 0..=k1 + k2 {
                    out.push(Self { i1, k1, i2, k2, j });
                }
            }
        }
        out
    }
}

impl fmt::Display for CosetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{},j={})", self.i1, self.k1, self.i2, self.k2, self.j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    FiniteN,
    Bosonic,
    Fermionic,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::FiniteN, Method::Bosonic, Method::Fermionic];

    pub fn name(self) -> &'static str {
        match self {
            Method::FiniteN => "finite-n",
            Method::Bosonic => "bosonic",
            Method::Fermionic => "fermionic",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// graded by the degree operator `d`
    D,
    /// graded by the coset `L_0`
    L0,
}

/// Exponent `gamma` with `L0-graded = q^gamma * d-graded`.
pub fn branching_prefactor(spec: &CosetSpec, norm: Normalization) -> ExactRational {
    match norm {
        Normalization::D => int(0),
        Normalization::L0 => {
            let w = |l, k| affine::conformal_weight(AffineLabel { l, k });
            w(spec.i1, spec.k1) + w(spec.i2, spec.k2) - w(spec.j, spec.k1 + spec.k2)
        }
    }
}

pub fn normalize<C: Coeff>(s: &Series<C>, spec: &CosetSpec, norm: Normalization) -> Series<C> {
    match norm {
        Normalization::D => s.clone(),
        Normalization::L0 => s.shift(&branching_prefactor(spec, norm)),
    }
}

/// `m(N)`: one factor of size `i1` (dropped when 0), `2N-1` of size `k1` and
/// one of size `k1 + i2`, over sizes `1..k1+k2`.
pub fn m_of_n(spec: &CosetSpec, n: u32) -> Result<Composition> {
    if n < 1 {
        return Err(Error::Domain("N must be at least 1".into()));
    }
    let mut m = Composition::zeros((spec.k1 + spec.k2) as usize)?;
    m.add_factors(spec.i1 as usize, 1);
    m.add_factors(spec.k1 as usize, 2 * n - 1);
    m.add_factors((spec.k1 + spec.i2) as usize, 1);
    Ok(m)
}

/// `max(1, ceil(order - (j-i2)^2/(4 k1) + k1/4) + 1)`.
pub fn finite_n_index(spec: &CosetSpec, order: i64) -> u32 {
    let d = spec.j - spec.i2;
    let x = BigRational::new(
        BigInt::from(4 * spec.k1 * order - d * d + spec.k1 * spec.k1),
        BigInt::from(4 * spec.k1),
    );
    let n = x.ceil().to_integer().to_i64().unwrap_or(i64::MAX);
    (n + 1).max(1) as u32
}

fn check_order(order: i64) -> Result<()> {
    if order < 0 {
        return Err(Error::Domain(format!("negative order {order}")));
    }
    Ok(())
}

/// Finite-N approximation at the automatically chosen `N`.
pub fn branching_finite_n<C: Coeff>(spec: &CosetSpec, order: i64) -> Result<Series<C>> {
    branching_finite_n_at(spec, finite_n_index(spec, order), order)
}

/// `K^{(k1+k2)}_{j, m(N)}` below `q^order` for an explicit `N`.
pub fn branching_finite_n_at<C: Coeff>(spec: &CosetSpec, n: u32, order: i64) -> Result<Series<C>> {
    check_order(order)?;
    if !spec.parity_ok() {
        return Ok(Series::zero());
    }
    let q = RestrictedKostkaQuery::new((spec.k1 + spec.k2) as usize, spec.j, m_of_n(spec, n)?)?;
    kostka::restricted_kostka_fermionic_truncated(&q, order)
}

/// `4 k1 * ` the certified lowest exponent of `q^{e0} ch L^a_{i1,k1}`.
fn bosonic_bound_scaled(spec: &CosetSpec, e0: i64, a: i64) -> i64 {
    4 * spec.k1 * e0 + a * a - spec.k1 * spec.k1
}

fn bosonic_terms(spec: &CosetSpec, p: i64) -> (i64, [(i64, i64); 2]) {
    let kk = spec.big_k();
    let e0 = -kk * p * p - (spec.j + 1) * p;
    let a1 = 2 * kk * p + spec.j - spec.i2;
    let a2 = 2 * kk * p + spec.j + spec.i2 + 2;
    (e0, [(a1, 1), (a2, -1)])
}

/// Alternating sum over the translation lattice.
pub fn branching_bosonic<C: Coeff>(spec: &CosetSpec, order: i64) -> Result<Series<C>> {
    branching_bosonic_cached(None, spec, order)
}

pub fn branching_bosonic_cached<C: Coeff>(
    cache: Option<&ComponentCache>,
    spec: &CosetSpec,
    order: i64,
) -> Result<Series<C>> {
    check_order(order)?;
    if !spec.parity_ok() {
        return Ok(Series::zero());
    }
    let label = AffineLabel::new(spec.i1, spec.k1)?;
    let limit = 4 * spec.k1 * order;
    // lowest certified exponent (scaled) of the p-th term, convex in p
    let bound = |p: i64| {
        let (e0, ts) = bosonic_terms(spec, p);
        ts.iter().map(|&(a, _)| bosonic_bound_scaled(spec, e0, a)).min().unwrap()
    };
    let mut acc = Series::zero_to(order);
    for dir in [1i64, -1] {
        let mut p = if dir == 1 { 0 } else { -1 };
        loop {
            let b = bound(p);
            if b >= limit && bound(p + dir) > b {
                // convexity: the bound only grows from here on
                break;
            }
            let (e0, ts) = bosonic_terms(spec, p);
            for (a, sign) in ts {
                if e0 >= order || bosonic_bound_scaled(spec, e0, a) >= limit {
                    continue;
                }
                let c = affine::graded_component_char_cached::<C>(cache, label, a, order - e0)?;
                let t = c.shift_int(e0);
                acc = if sign > 0 { acc.add(&t) } else { acc.sub(&t) };
            }
            p += dir;
        }
    }
    Ok(acc)
}

/// Quasi-particle data over the index set `{1..k1+k2} \ {k1}`, stored scaled
/// by `k1` so every entry is an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermionicData {
    pub spec: CosetSpec,
    pub index: Vec<i64>,
    b: Vec<Vec<i64>>,
    c: Vec<Vec<i64>>,
    u: Vec<i64>,
    v: Vec<i64>,
}

impl FermionicData {
    pub fn build(spec: &CosetSpec) -> Result<Self> {
        let CosetSpec { i1, k1, i2, k2, j } = *spec;
        let index: Vec<i64> = (1..=k1 + k2).filter(|&a| a != k1).collect();
        let mk = |x: i64| x.min(k1);
        let b = index
            .iter()
            .map(|&a| {
                index
                    .iter()
                    .map(|&be| k1 * a.min(be) + a * be - mk(a) * be - mk(be) * a)
                    .collect()
            })
            .collect();
        let c = index
            .iter()
            .map(|&a| index.iter().map(|&be| 2 * mk(a) * be - 2 * k1 * a.min(be)).collect())
            .collect();
        let u = index
            .iter()
            .map(|&a| -k1 * a.min(i1) - k1 * a.min(k1 + i2) + mk(a) * (i1 + i2 - j + k1) + a * (j - i2))
            .collect();
        let v = index
            .iter()
            .map(|&a| {
                k1 * a.min(i1) - mk(a) * (i1 + i2 - j + k1) + k1 * a.min(k1 + i2)
                    - k1 * (a - k1 - k2 + j).max(0)
            })
            .collect();
        let data = Self {
            spec: *spec,
            index,
            b,
            c,
            u,
            v,
        };
        data.check()?;
        Ok(data)
    }

    fn pos(&self, a: i64) -> usize {
        self.index
            .iter()
            .position(|&x| x == a)
            .unwrap_or_else(|| panic!("{a} is not in the index set"))
    }

    fn scaled(&self, x: i64) -> ExactRational {
        rat(x, self.spec.k1)
    }

    pub fn b(&self, a: i64, be: i64) -> ExactRational {
        self.scaled(self.b[self.pos(a)][self.pos(be)])
    }

    pub fn c(&self, a: i64, be: i64) -> ExactRational {
        self.scaled(self.c[self.pos(a)][self.pos(be)])
    }

    pub fn u(&self, a: i64) -> ExactRational {
        self.scaled(self.u[self.pos(a)])
    }

    pub fn v(&self, a: i64) -> ExactRational {
        self.scaled(self.v[self.pos(a)])
    }

    /// Block structure, symmetry and positive definiteness of `B`.
    fn check(&self) -> Result<()> {
        let k1 = self.spec.k1;
        let n = self.index.len();
        for x in 0..n {
            for y in 0..n {
                if self.b[x][y] != self.b[y][x] {
                    return Err(Error::Inconsistent("B is not symmetric".into()));
                }
                if (self.index[x] < k1) != (self.index[y] < k1) && self.b[x][y] != 0 {
                    return Err(Error::Inconsistent("B couples sizes below and above k1".into()));
                }
            }
        }
        for low in [true, false] {
            let block: Vec<usize> = (0..n).filter(|&x| (self.index[x] < k1) == low).collect();
            for size in 1..=block.len() {
                let minor: Vec<Vec<i64>> = block[..size]
                    .iter()
                    .map(|&x| block[..size].iter().map(|&y| self.b[x][y]).collect())
                    .collect();
                if determinant(&minor) <= BigInt::zero() {
                    return Err(Error::Inconsistent("B is not positive definite".into()));
                }
            }
        }
        Ok(())
    }
}

/// Fraction-free (Bareiss) determinant.
fn determinant(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for jj in k + 1..n {
                a[i][jj] = (&a[i][jj] * &a[k][k] - &a[i][k] * &a[k][jj]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        return BigInt::from(1);
    }
    a[n - 1][n - 1].clone() * sign
}

/// `build_fermionic_data` under its spec-facing name.
pub fn build_fermionic_data(spec: &CosetSpec) -> Result<FermionicData> {
    FermionicData::build(spec)
}

struct FermionicWalk<'a, C> {
    data: &'a FermionicData,
    order: i64,
    /// `(i1+i2-j)/2 mod k1`
    residue: i64,
    pre_scaled: i64,
    binomials: BinomialTable<C>,
    inv_fac: Vec<Vec<C>>,
    acc: Vec<C>,
}

impl<C: Coeff> FermionicWalk<'_, C> {
    /// `4 k1 *` the quadratic part `sBs + us` plus the prefactor.
    fn exponent_scaled(&self, s: &[i64]) -> i64 {
        let d = self.data;
        let mut e = self.pre_scaled;
        for x in 0..s.len() {
            if s[x] == 0 {
                continue;
            }
            let row: i64 = (0..s.len()).map(|y| d.b[x][y] * s[y]).sum();
            e += 4 * s[x] * (row + d.u[x]);
        }
        e
    }

    fn visit(&mut self, s: &[i64]) -> Result<()> {
        let d = self.data;
        let k1 = d.spec.k1;
        let e4 = self.exponent_scaled(s);
        let limit = 4 * k1 * self.order;
        if e4 >= limit {
            return Ok(());
        }
        let weighted: i64 = d.index.iter().zip(s).map(|(a, x)| a * x).sum();
        if (weighted - self.residue).rem_euclid(k1) != 0 {
            return Ok(());
        }
        if e4 % (4 * k1) != 0 {
            return Err(Error::Inconsistent(format!("fermionic exponent {e4}/{} for s = {s:?}", 4 * k1)));
        }
        let e = e4 / (4 * k1);
        if e < 0 {
            return Err(Error::Inconsistent(format!("negative fermionic exponent for s = {s:?}")));
        }
        let len = (self.order - e) as usize;
        let mut prod = vec![C::one()];
        for x in 0..s.len() {
            let top: i64 = (0..s.len()).map(|y| d.c[x][y] * s[y]).sum::<i64>() + d.v[x] + k1 * s[x];
            if top % k1 != 0 {
                return Err(Error::Inconsistent(format!("non-integral binomial top for s = {s:?}")));
            }
            let b = self.binomials.get(top / k1, s[x]);
            if b.is_empty() {
                return Ok(());
            }
            prod = poly::mul_trunc(&prod, b, len);
        }
        let spec = d.spec;
        let fi = spec.j.min(spec.k2) - spec.i2
            + 2 * d.index.iter().zip(s).map(|(&a, x)| x * (a - a.min(k1))).sum::<i64>();
        if fi < 0 {
            return Ok(());
        }
        let inv = &self.inv_fac[(fi as usize).min(self.order as usize)];
        prod = poly::mul_trunc(&prod, inv, len);
        poly::add_at(&mut self.acc, e as usize, &prod, Some(self.order as usize));
        Ok(())
    }
}

/// Calls `f` on every point of `[0, r]^dim` with some coordinate equal to `r`.
fn for_each_shell(dim: usize, r: i64, f: &mut dyn FnMut(&[i64]) -> Result<()>) -> Result<()> {
    let mut s = vec![0i64; dim];
    if dim == 0 {
        return if r == 0 { f(&s) } else { Ok(()) };
    }
    loop {
        if s.contains(&r) {
            f(&s)?;
        }
        let mut x = 0;
        loop {
            if x == dim {
                return Ok(());
            }
            if s[x] < r {
                s[x] += 1;
                break;
            }
            s[x] = 0;
            x += 1;
        }
    }
}

/// Quasi-particle sum with the `q^{(i1+i2-j)(i2-i1-j)/(4k1)}` prefactor.
pub fn branching_fermionic<C: Coeff>(spec: &CosetSpec, order: i64) -> Result<Series<C>> {
    check_order(order)?;
    if !spec.parity_ok() {
        return Ok(Series::zero());
    }
    let data = FermionicData::build(spec)?;
    let CosetSpec { i1, k1, i2, j, .. } = *spec;
    let mut walk = FermionicWalk {
        data: &data,
        order,
        residue: ((i1 + i2 - j) / 2).rem_euclid(k1),
        pre_scaled: (i1 + i2 - j) * (i2 - i1 - j),
        binomials: BinomialTable::new(Some(order as usize)),
        inv_fac: poly::inverse_factorials(order as usize, order as usize),
        acc: Vec::new(),
    };
    let dim = data.index.len();
    let limit = 4 * k1 * order;
    let mut quiet = 0;
    let mut r = 0i64;
    while quiet < 2 {
        let mut below = false;
        for_each_shell(dim, r, &mut |s: &[i64]| {
            if walk.exponent_scaled(s) < limit {
                below = true;
                walk.visit(s)?;
            }
            Ok(())
        })?;
        quiet = if below { 0 } else { quiet + 1 };
        r += 1;
        if dim == 0 {
            break;
        }
    }
    Ok(Series::from_coeffs(0, walk.acc, Some(order)))
}

/// Dispatch on [`Method`].
pub fn branching<C: Coeff>(
    method: Method,
    spec: &CosetSpec,
    order: i64,
    cache: Option<&ComponentCache>,
) -> Result<Series<C>> {
    match method {
        Method::FiniteN => branching_finite_n(spec, order),
        Method::Bosonic => branching_bosonic_cached(cache, spec, order),
        Method::Fermionic => branching_fermionic(spec, order),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StringVariant {
    /// `q^{-m^2/k1}`
    OverLevel,
    /// `q^{-m^2/4}`
    OverFour,
}

impl StringVariant {
    pub fn name(self) -> &'static str {
        match self {
            StringVariant::OverLevel => "-m^2/k1",
            StringVariant::OverFour => "-m^2/4",
        }
    }
}

/// String-function double sum; valid below `q^{order - (j-i2)^2/(4k1)}`,
/// which is where the d-graded branching function's `q^order` lands if the
/// two agree up to that monomial.
pub fn branching_string_form<C: Coeff>(
    spec: &CosetSpec,
    order: i64,
    variant: StringVariant,
) -> Result<Series<C>> {
    check_order(order)?;
    let CosetSpec { i1, k1, i2, k2, j } = *spec;
    let kk = spec.big_k();
    let bound = int(order) - rat((j - i2) * (j - i2), 4 * k1);
    if !spec.parity_ok() {
        return Ok(Series::zero());
    }
    let label = AffineLabel::new(i1, k1)?;
    let mut acc = Series::<C>::zero().truncate(&bound);
    for x in (0..=k1).filter(|x| (x - i1) % 2 == 0) {
        // x = 2m
        let mexp = match variant {
            StringVariant::OverLevel => rat(-x * x, 4 * k1),
            StringVariant::OverFour => rat(-x * x, 16),
        };
        let hits = |big: i64| (big - x).rem_euclid(2 * k1) == 0 || (big + x).rem_euclid(2 * k1) == 0;
        let mut theta: Vec<(ExactRational, i64)> = Vec::new();
        // both exponent families are convex quadratics in p; scan outwards
        // until they pass the bound
        let first = |p: i64| rat(p * (p * kk * (k2 + 2) + (k2 + 2) * (j + 1) - kk * (i2 + 1)), k1);
        let second = |p: i64| rat((p * kk + j + 1) * (p * (k2 + 2) + i2 + 1), k1);
        for dir in [1i64, -1] {
            let mut p = if dir == 1 { 0 } else { -1 };
            loop {
                let (t1, t2) = (first(p), second(p));
                let past = |t: &ExactRational, next: ExactRational| t + &mexp >= bound && &next > t;
                if past(&t1, first(p + dir)) && past(&t2, second(p + dir)) {
                    break;
                }
                if hits(j - i2 + 2 * kk * p) {
                    theta.push((t1, 1));
                }
                if hits(j + i2 + 2 + 2 * kk * p) {
                    theta.push((t2, -1));
                }
                p += dir;
            }
        }
        let tmin = match theta.iter().map(|t| &t.0).min() {
            Some(t) => t.clone(),
            None => continue,
        };
        let need = &bound - &tmin - &mexp;
        let ch_order = need.ceil().to_integer().to_i64().unwrap_or(0).max(0);
        let ch = affine::graded_component_char::<C>(label, x, ch_order)?;
        for (t, sign) in theta {
            let term = ch.shift(&(&t + &mexp));
            acc = if sign > 0 { acc.add(&term) } else { acc.sub(&term) };
        }
    }
    Ok(acc.truncate(&bound))
}

// ---------------------------------------------------------------------------
// Verification reports

/// One disagreement in a report, with exact values rendered as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MismatchJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weight: Option<i64>,
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpecKey {
    pub i1: i64,
    pub k1: i64,
    pub i2: i64,
    pub k2: i64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<i64>,
}

impl From<&CosetSpec> for SpecKey {
    fn from(s: &CosetSpec) -> Self {
        Self {
            i1: s.i1,
            k1: s.k1,
            i2: s.i2,
            k2: s.k2,
            j: Some(s.j),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub spec: SpecKey,
    pub method_pair: String,
    pub status: Status,
    pub first_mismatch: Option<MismatchJson>,
}

impl ReportEntry {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn render_exponent(e: &ExactRational) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

pub fn mismatch_json<C: Coeff>(m: &crate::qseries::Mismatch<C>, weight: Option<i64>) -> MismatchJson {
    MismatchJson {
        weight,
        exponent: render_exponent(&m.exponent),
        lhs: m.lhs.to_string(),
        rhs: m.rhs.to_string(),
    }
}

/// Pairwise comparison of the three methods on one spec.
pub fn compare_methods<C: Coeff>(
    spec: &CosetSpec,
    order: i64,
    cache: Option<&ComponentCache>,
) -> Result<Vec<ReportEntry>> {
    let values = Method::ALL
        .iter()
        .map(|&m| branching::<C>(m, spec, order, cache))
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for (x, y) in [(0, 1), (0, 2), (1, 2)] {
        let mm = values[x].first_mismatch(&values[y]);
        out.push(ReportEntry {
            spec: spec.into(),
            method_pair: format!("{}/{}", Method::ALL[x], Method::ALL[y]),
            status: if mm.is_none() { Status::Pass } else { Status::Fail },
            first_mismatch: mm.as_ref().map(|m| mismatch_json(m, None)),
        });
    }
    Ok(out)
}

/// Outcome of the tensor-product decomposition check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub entry: ReportEntry,
    pub weights_checked: i64,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.entry.passed()
    }
}

/// Highest weight whose component can be nonzero below `q^order` at level `k`:
/// components at weight `a` start at `q^{(a^2 - k^2)/(4k)}` or later.
fn weight_reach(k: i64, order: i64) -> i64 {
    let mut a = k;
    while (a + 1) * (a + 1) - k * k < 4 * k * order {
        a += 1;
    }
    a
}

/// Checks `sum_j b_j ch L_{j,k1+k2} = ch L_{i1,k1} ch L_{i2,k2}` weight by
/// weight for `|a| <= max_weight`, below `q^order`, with all characters from
/// the Weyl-Kac oracle. `b` maps `j` to its d-graded branching function.
#[allow(clippy::too_many_arguments)]
pub fn verify_decomposition_with<C: Coeff>(
    i1: i64,
    k1: i64,
    i2: i64,
    k2: i64,
    order: i64,
    max_weight: i64,
    b: &BTreeMap<i64, Series<C>>,
    method_name: &str,
) -> Result<DecompositionReport> {
    check_order(order)?;
    let la = AffineLabel::new(i1, k1)?;
    let lb = AffineLabel::new(i2, k2)?;
    let lsum = k1 + k2;
    let reach1 = weight_reach(k1, order);
    let reach2 = weight_reach(k2, order);
    let ch1 = affine::classical_character::<C>(la, order, reach1)?;
    let ch2 = affine::classical_character::<C>(lb, order, max_weight + reach1)?;
    let mut sums = BTreeMap::new();
    for j in (0..=lsum).filter(|j| (i1 + i2 - j) % 2 == 0) {
        sums.insert(j, affine::classical_character::<C>(AffineLabel::new(j, lsum)?, order, max_weight)?);
    }
    let key = SpecKey {
        i1,
        k1,
        i2,
        k2,
        j: None,
    };
    // lowest exponent wins; ties go to the smaller |a|, then the positive weight
    let mut worst: Option<(crate::qseries::Mismatch<C>, i64)> = None;
    let mut weights: Vec<i64> = (-max_weight..=max_weight).collect();
    weights.sort_by_key(|&a| (a.abs(), -a));
    for a in weights {
        let mut rhs = Series::zero_to(order);
        for bw in -reach1..=reach1 {
            if (a - bw).abs() > reach2 {
                continue;
            }
            rhs = rhs.add(&ch1.component(bw).mul(&ch2.component(a - bw)));
        }
        let rhs = rhs.truncated(order);
        let mut lhs = Series::zero_to(order);
        for (j, ch) in &sums {
            if let Some(bj) = b.get(j) {
                lhs = lhs.add(&bj.mul(&ch.component(a)));
            }
        }
        let lhs = lhs.truncated(order);
        if let Some(m) = lhs.first_mismatch(&rhs) {
            if worst.as_ref().is_none_or(|(w, _)| m.exponent < w.exponent) {
                worst = Some((m, a));
            }
        }
    }
    let (status, first_mismatch) = match &worst {
        None => (Status::Pass, None),
        Some((m, a)) => (Status::Fail, Some(mismatch_json(m, Some(*a)))),
    };
    Ok(DecompositionReport {
        entry: ReportEntry {
            spec: key,
            method_pair: format!("{method_name}/tensor-product"),
            status,
            first_mismatch,
        },
        weights_checked: 2 * max_weight + 1,
    })
}

/// [`verify_decomposition_with`] using branching functions from `method`.
#[allow(clippy::too_many_arguments)]
pub fn verify_decomposition<C: Coeff>(
    i1: i64,
    k1: i64,
    i2: i64,
    k2: i64,
    order: i64,
    max_weight: i64,
    method: Method,
    cache: Option<&ComponentCache>,
) -> Result<DecompositionReport> {
    let mut b = BTreeMap::new();
    for j in (0..=k1 + k2).filter(|j| (i1 + i2 - j) % 2 == 0) {
        let spec = CosetSpec::new(i1, k1, i2, k2, j)?;
        b.insert(j, branching::<C>(method, &spec, order, cache)?);
    }
    verify_decomposition_with(i1, k1, i2, k2, order, max_weight, &b, method.name())
}

/// Exponent of `string / bosonic` when it is a single monomial.
pub fn string_form_ratio<C: Coeff>(
    spec: &CosetSpec,
    order: i64,
    variant: StringVariant,
) -> Result<Option<ExactRational>> {
    let s = branching_string_form::<C>(spec, order, variant)?;
    let b = branching_bosonic::<C>(spec, order)?;
    if b.is_zero() && s.is_zero() {
        return Ok(Some(int(0)));
    }
    Ok(s.monomial_ratio(&b))
}
