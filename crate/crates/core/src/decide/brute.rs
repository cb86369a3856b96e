//! Exhaustive and sampled checks of cleanness and *-cleanness over small
//! finite coefficient rings.

use std::sync::Arc;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::canonical::f_projections;
use crate::coeff::CoefficientRing;
use crate::error::{Error, Result};
use crate::groupring::{cardinality, involution_orbits, CentralIdempotentPair, GroupRingElement, IndexedGroupRing};
use crate::groups::{FiniteGroup, InvolutionMap, SLCStructure};
use crate::witness::StarCleanDecomposition;

/// Full enumeration up to `full_limit` elements, stratified sampling beyond.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BruteConfig {
    pub full_limit: u64,
    pub sample_size: u64,
    pub seed: u64,
}

impl Default for BruteConfig {
    fn default() -> Self {
        BruteConfig { full_limit: 1 << 24, sample_size: 100_000, seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteMode {
    Full,
    Sampled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteResult {
    /// No element without a decomposition was found.
    pub holds: bool,
    pub mode: BruteMode,
    pub elements_checked: u64,
    /// Size of the idempotent or projection set searched against.
    pub candidates: usize,
    pub counterexample: Option<GroupRingElement>,
}

impl BruteResult {
    /// `holds` is a proof only after full enumeration; a counterexample is
    /// a proof either way.
    pub fn is_conclusive(&self) -> bool {
        self.mode == BruteMode::Full || !self.holds
    }

    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "mode": match self.mode { BruteMode::Full => "full", BruteMode::Sampled => "sampled" },
            "elements_checked": self.elements_checked,
            "candidates": self.candidates,
            "counterexample": self.counterexample.as_ref().map(|c| c.to_json()),
        })
    }
}

fn ring_q(ring: &CoefficientRing) -> Result<u64> {
    ring.size().ok_or_else(|| Error::InvalidRing(format!("brute force needs a finite ring, got {ring}")))
}

fn within(q: u64, coords: usize, limit: u64) -> bool {
    cardinality(q, coords) <= BigUint::from(limit)
}

/// Index vectors over `q^n`, in odometer order, from `start` onward.
fn for_each_vector(q: u16, n: usize, mut visit: impl FnMut(&[u16]) -> bool) {
    let mut v = vec![0u16; n];
    loop {
        if !visit(&v) {
            return;
        }
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

/// Idempotents of `RG`: by full enumeration, or through `RG = RGe + RGf`
/// (`e + f = 1` central) when the whole ring is too large.
fn idempotents(
    fast: &IndexedGroupRing,
    split: Option<&CentralIdempotentPair>,
    full_limit: u64,
) -> Result<Vec<Vec<u16>>> {
    let q = fast.q() as u64;
    let n = fast.order();
    let mut scratch = Vec::new();
    if within(q, n, full_limit) {
        let mut out = Vec::new();
        for_each_vector(q as u16, n, |v| {
            if fast.is_idempotent(v, &mut scratch) {
                out.push(v.to_vec());
            }
            true
        });
        return Ok(out);
    }
    let Some(split) = split else {
        return Err(Error::budget(cardinality(q, n), full_limit));
    };
    let reps = &split.quotient.representatives;
    if !within(q, reps.len(), full_limit) {
        return Err(Error::budget(cardinality(q, reps.len()), full_limit));
    }
    let component = |c: &GroupRingElement| -> Vec<Vec<u16>> {
        let c = fast.from_element(c);
        let mut out = Vec::new();
        let mut scratch = Vec::new();
        for_each_vector(q as u16, reps.len(), |w| {
            let mut v = fast.zero();
            for (&r, &d) in reps.iter().zip(w) {
                v[r] = d;
            }
            let v = fast.mul(&v, &c);
            if fast.is_idempotent(&v, &mut scratch) {
                out.push(v);
            }
            true
        });
        out
    };
    let (e_part, f_part) = (component(&split.e), component(&split.f));
    let mut out = Vec::with_capacity(e_part.len() * f_part.len());
    for a in &e_part {
        for b in &f_part {
            out.push(fast.add(a, b));
        }
    }
    Ok(out)
}

fn projections(fast: &IndexedGroupRing, sigma: &InvolutionMap, full_limit: u64) -> Result<Vec<Vec<u16>>> {
    let q = fast.q() as u64;
    let orbits = involution_orbits(sigma);
    if !within(q, orbits.len(), full_limit) {
        return Err(Error::budget(cardinality(q, orbits.len()), full_limit));
    }
    let mut out = Vec::new();
    let mut scratch = Vec::new();
    for_each_vector(q as u16, orbits.len(), |w| {
        let mut v = fast.zero();
        for (orbit, &d) in orbits.iter().zip(w) {
            for &g in orbit {
                v[g] = d;
            }
        }
        if fast.is_idempotent(&v, &mut scratch) {
            out.push(v);
        }
        true
    });
    Ok(out)
}

/// Checks every element (or a stratified sample) for some candidate `c`
/// with `alpha - c` a unit, stopping at the first element that has none.
fn search(fast: &IndexedGroupRing, candidates: &[Vec<u16>], config: &BruteConfig) -> BruteResult {
    let q = fast.q() as u64;
    let n = fast.order();
    let mut matrix = Vec::new();
    let mut scratch = Vec::new();
    let mut diff = vec![0u16; n];
    let mut decomposable = |alpha: &[u16]| {
        candidates.iter().any(|c| {
            for ((d, &a), &b) in diff.iter_mut().zip(alpha).zip(c) {
                *d = fast.small().sub(a, b);
            }
            fast.is_unit(&diff, &mut matrix, &mut scratch)
        })
    };
    let mut checked = 0u64;
    let mut counterexample = None;
    let mode = if within(q, n, config.full_limit) {
        for_each_vector(q as u16, n, |alpha| {
            checked += 1;
            if decomposable(alpha) {
                true
            } else {
                counterexample = Some(alpha.to_vec());
                false
            }
        });
        BruteMode::Full
    } else {
        // strata: the coefficient of the identity
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        let id = fast.group().identity();
        let mut alpha = vec![0u16; n];
        'outer: for stratum in 0..q {
            let share = config.sample_size / q + u64::from(stratum < config.sample_size % q);
            for _ in 0..share {
                for (g, a) in alpha.iter_mut().enumerate() {
                    *a = if g == id { stratum as u16 } else { rng.gen_range(0..q as u16) };
                }
                checked += 1;
                if !decomposable(&alpha) {
                    counterexample = Some(alpha.clone());
                    break 'outer;
                }
            }
        }
        BruteMode::Sampled
    };
    BruteResult {
        holds: counterexample.is_none(),
        mode,
        elements_checked: checked,
        candidates: candidates.len(),
        counterexample: counterexample.map(|c| fast.to_element(&c)),
    }
}

/// Is every element of `RG` a unit plus an idempotent? `split` enables the
/// idempotent precomputation through a central splitting when `RG` itself
/// is too large to enumerate.
pub fn brute_clean(
    group: &Arc<FiniteGroup>,
    ring: &Arc<CoefficientRing>,
    config: &BruteConfig,
    split: Option<&CentralIdempotentPair>,
) -> Result<BruteResult> {
    ring_q(ring)?;
    let fast = IndexedGroupRing::new(group, ring)?;
    let candidates = idempotents(&fast, split, config.full_limit)?;
    Ok(search(&fast, &candidates, config))
}

/// Is every element of `RG` a unit plus a projection for `sigma`?
pub fn brute_star_clean(sigma: &InvolutionMap, ring: &Arc<CoefficientRing>, config: &BruteConfig) -> Result<BruteResult> {
    ring_q(ring)?;
    let fast = IndexedGroupRing::new(sigma.group(), ring)?;
    let candidates = projections(&fast, sigma, config.full_limit)?;
    Ok(search(&fast, &candidates, config))
}

/// The first decomposition `alpha = u + p` over the projections of `RG`,
/// in enumeration order.
pub fn element_star_clean(
    alpha: &GroupRingElement,
    sigma: &InvolutionMap,
    budget: u64,
) -> Result<Option<StarCleanDecomposition>> {
    let ring = alpha.ring();
    ring_q(ring)?;
    let fast = IndexedGroupRing::new(sigma.group(), ring)?;
    let a = fast.from_element(alpha);
    let mut matrix = Vec::new();
    let mut scratch = Vec::new();
    for p in projections(&fast, sigma, budget)? {
        let u = fast.sub(&a, &p);
        if fast.is_unit(&u, &mut matrix, &mut scratch) {
            return Ok(Some(StarCleanDecomposition { unit: fast.to_element(&u), projection: fast.to_element(&p) }));
        }
    }
    Ok(None)
}

/// The same search inside the component `(RG)f` of an SLC-group: `p` runs
/// over the projections of `(RG)f` and `u = alpha - p` must be a unit of
/// `(RG)f`, that is `u + e` a unit of `RG`. The returned unit is the
/// component unit `u`.
pub fn element_star_clean_in_component(
    slc: &SLCStructure,
    alpha: &GroupRingElement,
    budget: u64,
) -> Result<Option<StarCleanDecomposition>> {
    let ring = alpha.ring();
    ring_q(ring)?;
    let pair = CentralIdempotentPair::new(slc.group(), ring, slc.s())?;
    if !pair.in_f_component(alpha)? {
        return Err(Error::NotInFComponent);
    }
    let fast = IndexedGroupRing::new(slc.group(), ring)?;
    let a = fast.from_element(alpha);
    let e = fast.from_element(&pair.e);
    let mut matrix = Vec::new();
    let mut scratch = Vec::new();
    for p in f_projections(slc, ring, budget)? {
        let p = fast.from_element(&p);
        let u = fast.sub(&a, &p);
        if fast.is_unit(&fast.add(&u, &e), &mut matrix, &mut scratch) {
            return Ok(Some(StarCleanDecomposition { unit: fast.to_element(&u), projection: fast.to_element(&p) }));
        }
    }
    Ok(None)
}
