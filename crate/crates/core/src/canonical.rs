//! Canonical forms on the component `(RG)f`, `f = (1-s)/2`.
//!
//! Every element of `(RG)f` is uniquely `[sum_j (sum_i x_ij a^i) t_j](1-s)`
//! with `x_ij` in `RK`, `0 <= i < m/2` and `t_j` running over `{1, x, y, xy}`.
//! The involution negates the rows with `j >= 2`, so symmetric elements are
//! exactly those supported on the first row.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::coeff::CoefficientRing;
use crate::error::{Error, Result};
use crate::groupring::{cardinality, GroupRingElement, IndexedGroupRing};
use crate::groups::SLCStructure;

/// The array `x_ij`, indexed as `x[j][i]` with `j` in `0..4` (`t_0 = 1`).
/// Each entry is an element of `RG` supported on `K`.
#[derive(Debug, Clone)]
pub struct FCanonicalForm {
    slc: SLCStructure,
    ring: Arc<CoefficientRing>,
    x: Vec<Vec<GroupRingElement>>,
}

impl PartialEq for FCanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(self.slc.group(), other.slc.group()) && self.x == other.x
    }
}

/// `d` in the span of `a^i k` (`i < m/2`, `k` in `K`) with `d(1-s)` a projection.
#[derive(Debug, Clone, PartialEq)]
pub struct FProjectionDatum {
    pub d: GroupRingElement,
}

impl FProjectionDatum {
    pub fn projection(&self, slc: &SLCStructure) -> GroupRingElement {
        times_one_minus_s(slc, &self.d)
    }
}

fn times_one_minus_s(slc: &SLCStructure, d: &GroupRingElement) -> GroupRingElement {
    let one_minus_s = GroupRingElement::one(slc.group(), d.ring())
        .sub(&GroupRingElement::basis(slc.group(), d.ring(), slc.s()))
        .unwrap();
    d.mul(&one_minus_s).unwrap()
}

impl FCanonicalForm {
    /// Builds a form from explicit entries, checking shape and `K`-support.
    pub fn from_parts(slc: &SLCStructure, ring: &Arc<CoefficientRing>, x: Vec<Vec<GroupRingElement>>) -> Result<Self> {
        if x.len() != 4 || x.iter().any(|row| row.len() != slc.half_m()) {
            return Err(Error::InvalidParameter(format!("form must be a 4 x {} array", slc.half_m())));
        }
        for entry in x.iter().flatten() {
            if !Arc::ptr_eq(entry.group(), slc.group()) && **entry.group() != **slc.group() {
                return Err(Error::MismatchedCarriers("form entry over a different group".into()));
            }
            if entry.support().iter().any(|&g| !slc.k_subgroup().contains(g)) {
                return Err(Error::InvalidParameter("form entries must be supported on K".into()));
            }
        }
        Ok(FCanonicalForm { slc: slc.clone(), ring: Arc::clone(ring), x })
    }

    pub fn slc(&self) -> &SLCStructure {
        &self.slc
    }

    pub fn entry(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.x[j][i]
    }

    pub fn rows(&self) -> &[Vec<GroupRingElement>] {
        &self.x
    }

    /// `[sum_j (sum_i x_ij a^i) t_j](1-s)`.
    pub fn reassemble(&self) -> GroupRingElement {
        let slc = &self.slc;
        let ring = &self.ring;
        let mut out = GroupRingElement::zero(slc.group(), ring);
        for j in 0..4 {
            for i in 0..slc.half_m() {
                for (kidx, &k) in slc.k_elements().iter().enumerate() {
                    let c = self.x[j][i].coeff(k);
                    if ring.is_zero(c) {
                        continue;
                    }
                    out.set_coeff(slc.index(j, i, kidx, 0), c.clone());
                    out.set_coeff(slc.index(j, i, kidx, 1), ring.neg(c));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .x
            .iter()
            .enumerate()
            .map(|(j, row)| {
                let t = ["1", "x", "y", "x*y"][j];
                json!({ "t": t, "x": row.iter().map(|e| e.to_json()).collect::<Vec<_>>() })
            })
            .collect();
        json!({ "half_m": self.slc.half_m(), "rows": rows })
    }
}

/// Reads off the unique `x_ij` of an element of `(RG)f`.
pub fn decompose_f(slc: &SLCStructure, alpha: &GroupRingElement) -> Result<FCanonicalForm> {
    let ring = alpha.ring();
    if alpha.group().order() != slc.group().order() {
        return Err(Error::MismatchedCarriers("element is not over the SLC-group".into()));
    }
    let g = slc.group();
    for h in 0..g.order() {
        let hs = g.mul(h, slc.s());
        if *alpha.coeff(hs) != ring.neg(alpha.coeff(h)) {
            return Err(Error::NotInFComponent);
        }
    }
    let mut x = vec![vec![GroupRingElement::zero(g, ring); slc.half_m()]; 4];
    for (j, row) in x.iter_mut().enumerate() {
        for (i, entry) in row.iter_mut().enumerate() {
            for (kidx, &k) in slc.k_elements().iter().enumerate() {
                entry.set_coeff(k, alpha.coeff(slc.index(j, i, kidx, 0)).clone());
            }
        }
    }
    Ok(FCanonicalForm { slc: slc.clone(), ring: Arc::clone(ring), x })
}

/// The form of `alpha*`: the first row is kept, rows for `x`, `y`, `xy` are negated.
pub fn involution_formula(form: &FCanonicalForm) -> FCanonicalForm {
    let x = form
        .x
        .iter()
        .enumerate()
        .map(|(j, row)| if j == 0 { row.clone() } else { row.iter().map(|e| e.neg()).collect() })
        .collect();
    FCanonicalForm { slc: form.slc.clone(), ring: Arc::clone(&form.ring), x }
}

/// `alpha = alpha*` iff the rows for `x`, `y`, `xy` vanish.
pub fn is_symmetric_f(form: &FCanonicalForm) -> bool {
    form.x[1..].iter().flatten().all(|e| e.is_zero())
}

/// All projections of `(RG)f`, as `d(1-s)` with `d` over the span of
/// `a^i k`. The condition `d = 2d^2` is checked in the component, that is
/// as `(2d^2 - d)(1-s) = 0`, which is exactly `(d(1-s))^2 = d(1-s)`.
pub fn f_projections(slc: &SLCStructure, ring: &Arc<CoefficientRing>, budget: u64) -> Result<Vec<GroupRingElement>> {
    Ok(f_projection_data(slc, ring, budget)?.iter().map(|d| d.projection(slc)).collect())
}

pub fn f_projection_data(slc: &SLCStructure, ring: &Arc<CoefficientRing>, budget: u64) -> Result<Vec<FProjectionDatum>> {
    let q = ring.size().ok_or_else(|| Error::InvalidRing(format!("cannot enumerate over {ring}")))?;
    let coords: Vec<usize> = (0..slc.half_m())
        .flat_map(|i| (0..slc.k_elements().len()).map(move |kidx| (i, kidx)))
        .map(|(i, kidx)| slc.index(0, i, kidx, 0))
        .collect();
    let card = cardinality(q, coords.len());
    if card > num_bigint::BigUint::from(budget) {
        return Err(Error::budget(card, budget));
    }
    let fast = IndexedGroupRing::new(slc.group(), ring)?;
    let g = slc.group();
    let partner: Vec<usize> = coords.iter().map(|&c| g.mul(c, slc.s())).collect();
    let q = q as u16;
    let mut digits = vec![0u16; coords.len()];
    let mut p = fast.zero();
    let mut scratch = Vec::new();
    let mut out = Vec::new();
    loop {
        for ((&c, &cs), &d) in coords.iter().zip(&partner).zip(&digits) {
            p[c] = d;
            p[cs] = fast.small().neg(d);
        }
        if fast.is_idempotent(&p, &mut scratch) {
            let mut d = fast.zero();
            for (&c, &v) in coords.iter().zip(&digits) {
                d[c] = v;
            }
            out.push(FProjectionDatum { d: fast.to_element(&d) });
        }
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return Ok(out);
            }
            digits[pos] += 1;
            if digits[pos] < q {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
