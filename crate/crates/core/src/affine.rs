//! Graded components `ch_q L_{l,k}^a` of integrable affine sl2 modules.
//!
//! The main route is the fusion limit `L_{l,k} = lim pi_l * pi_k^{*2N}`; an
//! independent Weyl-Kac evaluation serves as an oracle. Components are in the
//! d-grading with the highest weight vector at degree 0.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fusion::{self, Composition};
use crate::qseries::{ExactRational, OrderJson, Series, SeriesJson};
use crate::scalar::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineLabel {
    pub l: i64,
    pub k: i64,
}

impl AffineLabel {
    pub fn new(l: i64, k: i64) -> Result<Self> {
        if k < 1 {
            return Err(Error::Domain(format!("level {k} must be positive")));
        }
        if l < 0 || l > k {
            return Err(Error::Domain(format!("highest weight {l} outside [0, {k}]")));
        }
        Ok(Self { l, k })
    }
}

/// `Delta_{l,k} = l(l+2) / (4(k+2))`.
pub fn conformal_weight(label: AffineLabel) -> ExactRational {
    BigRational::new(
        BigInt::from(label.l * (label.l + 2)),
        BigInt::from(4 * (label.k + 2)),
    )
}

/// `c(k) = 3k / (k+2)`.
pub fn central_charge(k: i64) -> Result<ExactRational> {
    if k < 1 {
        return Err(Error::Domain(format!("level {k} must be positive")));
    }
    Ok(BigRational::new(BigInt::from(3 * k), BigInt::from(k + 2)))
}

/// Writes `a = r + 2 lambda k` with `-k < r <= k`.
pub fn reduce_weight(a: i64, k: i64) -> (i64, i64) {
    let period = 2 * k;
    let mut lambda = a.div_euclid(period);
    let mut r = a - lambda * period;
    if r > k {
        r -= period;
        lambda += 1;
    }
    (r, lambda)
}

/// Exponent of the translation identity `ch L^{a+2 lambda k} = q^{lambda(lambda k + a)} ch L^a`.
pub fn spectral_flow_exponent(k: i64, a: i64, lambda: i64) -> i64 {
    lambda * (lambda * k + a)
}

/// `q^{lambda(lambda k + a)} s`, i.e. the component at weight `a + 2 lambda k`
/// given the one at `a`.
pub fn spectral_flow<C: Coeff>(label: AffineLabel, a: i64, lambda: i64, s: &Series<C>) -> Series<C> {
    s.shift_int(spectral_flow_exponent(label.k, a, lambda))
}

/// The composition `(l^1, k^{2N})` of the `N`-th limit approximant.
pub fn limit_composition(label: AffineLabel, n: u32) -> Composition {
    let mut m = Composition::zeros(label.k as usize).expect("level is positive");
    m.add_factors(label.l as usize, 1);
    m.add_factors(label.k as usize, 2 * n);
    m
}

/// Smallest approximant index that fixes every coefficient below `q^order` of
/// the weight-`r` component, with one step of margin.
///
/// Consecutive approximants differ by `q^{N+1}` times a fusion character over
/// `k+1` sizes, whose exponents are at least `r^2/(4(k+1)) - (k+1)/4`.
pub fn limit_index(k: i64, r: i64, order: i64) -> u32 {
    let bound = BigRational::new(
        BigInt::from(4 * (k + 1) * order - r * r + (k + 1) * (k + 1)),
        BigInt::from(4 * (k + 1)),
    );
    let n = bound.ceil().to_integer();
    let n: i64 = n.try_into().unwrap_or(i64::MAX);
    (n.max(1) + 1) as u32
}

/// The `N`-th approximant `ch (pi_l * pi_k^{*2N})^a` below `q^order`.
pub fn limit_approximant<C: Coeff>(label: AffineLabel, a: i64, n: u32, order: i64) -> Result<Series<C>> {
    fusion::fusion_char(&limit_composition(label, n), a, order)
}

/// `ch_q L_{l,k}^a` below `q^order`.
pub fn graded_component_char<C: Coeff>(label: AffineLabel, a: i64, order: i64) -> Result<Series<C>> {
    graded_component_char_cached(None, label, a, order)
}

/// As [`graded_component_char`], consulting and filling `cache` for the
/// reduced-weight computation.
pub fn graded_component_char_cached<C: Coeff>(
    cache: Option<&ComponentCache>,
    label: AffineLabel,
    a: i64,
    order: i64,
) -> Result<Series<C>> {
    if order < 0 {
        return Err(Error::Domain(format!("negative order {order}")));
    }
    if (a - label.l) % 2 != 0 {
        return Ok(Series::zero());
    }
    let (r, lambda) = reduce_weight(a, label.k);
    let e = spectral_flow_exponent(label.k, r, lambda);
    let inner = order - e;
    if inner <= 0 {
        return Ok(Series::zero_to(order));
    }
    let reduced = match cache {
        Some(cache) => {
            if let Some(s) = cache.load(label, r, inner) {
                s
            } else {
                let s = reduced_component(label, r, inner)?;
                cache.store(label, r, inner, &s)?;
                s
            }
        }
        None => reduced_component(label, r, inner)?,
    };
    Ok(spectral_flow(label, r, lambda, &reduced))
}

fn reduced_component<C: Coeff>(label: AffineLabel, r: i64, order: i64) -> Result<Series<C>> {
    limit_approximant(label, r, limit_index(label.k, r, order), order)
}

/// `ch_{q,z} L_{l,k}` as a map from `h_0`-weight to graded component.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateCharacter<C> {
    pub label: AffineLabel,
    pub order: i64,
    pub components: BTreeMap<i64, Series<C>>,
}

impl<C: Coeff> BivariateCharacter<C> {
    /// The component at weight `a`. Parity-mismatched weights give the exact
    /// zero; other weights outside the stored range give a truncated zero,
    /// which is only a placeholder.
    pub fn component(&self, a: i64) -> Series<C> {
        if (a - self.label.l) % 2 != 0 {
            return Series::zero();
        }
        self.components
            .get(&a)
            .cloned()
            .unwrap_or_else(|| Series::zero_to(self.order))
    }

    pub fn max_weight(&self) -> i64 {
        self.components.keys().map(|a| a.abs()).max().unwrap_or(0)
    }
}

/// Weyl-Kac character: the affine numerator divided by the bivariate Weyl
/// denominator, expanded on a dense `(q, z)` grid.
pub fn classical_character<C: Coeff>(
    label: AffineLabel,
    order: i64,
    max_weight: i64,
) -> Result<BivariateCharacter<C>> {
    if order < 0 {
        return Err(Error::Domain(format!("negative order {order}")));
    }
    let (l, k) = (label.l, label.k);
    let rows = order as usize;
    // numerator terms z^{+-(l+1+2n(k+2))} q^{(k+2)n^2+(l+1)n}
    let mut terms = Vec::new();
    let mut n = 0i64;
    loop {
        let mut any = false;
        for nn in [n, -n] {
            let d = (k + 2) * nn * nn + (l + 1) * nn;
            if d < order {
                any = true;
                terms.push((d, l + 1 + 2 * nn * (k + 2)));
            }
            if n == 0 {
                break;
            }
        }
        if !any {
            break;
        }
        n += 1;
    }
    let zmax = terms.iter().map(|t| t.1.abs()).max().unwrap_or(0) + 2 * order + max_weight.abs() + 2;
    let width = (2 * zmax + 1) as usize;
    let idx = |z: i64| (z + zmax) as usize;
    let mut grid = vec![vec![C::zero(); width]; rows];
    for &(d, z) in &terms {
        grid[d as usize][idx(z)].add_ref(&C::one());
        grid[d as usize][idx(-z)].sub_ref(&C::one());
    }
    for n in 1..rows {
        for dz in [0i64, 2, -2] {
            // multiply by 1/(1 - z^dz q^n)
            for d in n..rows {
                let (lo, hi) = grid.split_at_mut(d);
                let src = &lo[d - n];
                let dst = &mut hi[0];
                for (zi, cell) in dst.iter_mut().enumerate() {
                    let from = zi as i64 - dz;
                    if from < 0 || from >= width as i64 {
                        continue;
                    }
                    let c = &src[from as usize];
                    if !c.is_zero() {
                        cell.add_ref(c);
                    }
                }
            }
        }
    }
    let mut per_weight: BTreeMap<i64, Vec<C>> = BTreeMap::new();
    for (d, row) in grid.iter_mut().enumerate() {
        // row = (z - 1/z) * Q, peeled from the top
        for zi in (0..width).rev() {
            let c = row[zi].clone();
            if c.is_zero() {
                continue;
            }
            if zi < 2 {
                return Err(Error::Inconsistent(format!(
                    "Weyl denominator does not divide the numerator at q^{d}"
                )));
            }
            let z = zi as i64 - zmax - 1;
            if z.abs() <= max_weight {
                let v = per_weight.entry(z).or_insert_with(|| vec![C::zero(); rows]);
                v[d] = c.clone();
            }
            row[zi - 2].add_ref(&c);
        }
    }
    let mut components = BTreeMap::new();
    for a in -max_weight..=max_weight {
        let coeffs = per_weight.remove(&a).unwrap_or_default();
        components.insert(a, Series::from_coeffs(0, coeffs, Some(order)));
    }
    Ok(BivariateCharacter {
        label,
        order,
        components,
    })
}

// ---------------------------------------------------------------------------
// On-disk component cache

pub const CACHE_FORMAT_VERSION: u32 = 1;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "COSETQ_CACHE";

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    format_version: u32,
    l: i64,
    k: i64,
    a: i64,
    #[serde(flatten)]
    series: SeriesJson,
}

/// Directory of cached reduced-weight components, one JSON file per
/// `(l, k, a, order)`.
#[derive(Clone, Debug)]
pub struct ComponentCache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl ComponentCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    /// `$COSETQ_CACHE` if set, else `flag`; `None` when neither is given.
    pub fn from_env_or(flag: Option<&Path>) -> Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(v) if !v.is_empty() => Ok(Some(Self::new(PathBuf::from(v))?)),
            _ => flag.map(Self::new).transpose(),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, label: AffineLabel, a: i64, order: i64) -> PathBuf {
        self.dir
            .join(format!("l{}_k{}_a{}_o{}.json", label.l, label.k, a, order))
    }

    /// A stored component, if present and valid; anything unreadable is treated as a miss.
    pub fn load<C: Coeff>(&self, label: AffineLabel, a: i64, order: i64) -> Option<Series<C>> {
        let text = fs::read_to_string(self.path(label, a, order)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        if entry.format_version != CACHE_FORMAT_VERSION
            || (entry.l, entry.k, entry.a) != (label.l, label.k, a)
            || entry.series.order != OrderJson::Finite(order)
        {
            return None;
        }
        let s = Series::<C>::from_json(&entry.series).ok()?;
        if s.validity_bound() != Some(crate::qseries::int(order)) {
            return None;
        }
        Some(s)
    }

    /// Writes the entry to a temporary file and renames it into place.
    pub fn store<C: Coeff>(&self, label: AffineLabel, a: i64, order: i64, s: &Series<C>) -> Result<()> {
        if s.order() != Some(order) || s.lattice() != 1 {
            return Err(Error::Domain(format!("cache entries must be integer series known below q^{order}")));
        }
        let entry = CacheEntry {
            format_version: CACHE_FORMAT_VERSION,
            l: label.l,
            k: label.k,
            a,
            series: s.to_json(),
        };
        let target = self.path(label, a, order);
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        if let Err(e) = fs::rename(&tmp, &target) {
            let _ = fs::remove_file(&tmp);
            return Err(e.into());
        }
        Ok(())
    }
}
