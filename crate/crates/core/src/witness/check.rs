//! Verification of the two witness conditions
//! `(1 - gamma^2) tau_w (1 - s) = 0` and
//! `(z - 4^-1 gamma) tau_w (1 - s) != 0` for every `z` in `RZ(G)`.

use std::sync::Arc;

use num_bigint::BigUint;
use serde_json::{json, Value};

use super::generate::one_minus_s;
use super::NonCleanWitness;
use crate::canonical::decompose_f;
use crate::coeff::CoefficientRing;
use crate::error::{Error, Result};
use crate::groupring::{cardinality, GroupRingElement};
use crate::groups::SLCStructure;

/// Default cap on the number of `z` visited by the exhaustive route.
pub const DEFAULT_CONDITION2_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Exhaustive when within budget, symbolic otherwise.
    Auto,
    Exhaustive,
    Symbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition2Route {
    /// Every `z` in `RZ(G)` was tried.
    Exhaustive,
    /// The `x`, `y`, `xy` rows of the canonical form of `gamma tau_w (1 - s)`
    /// are not all zero, and `z tau_w (1 - s)` has no such rows.
    Symbolic,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WitnessCheck {
    Valid { route: Condition2Route },
    Condition1Fails,
    Condition2Fails { z: GroupRingElement },
}

impl WitnessCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, WitnessCheck::Valid { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            WitnessCheck::Valid { route } => json!({
                "result": "Valid",
                "condition1": true,
                "condition2": true,
                "route": format!("{route:?}"),
            }),
            WitnessCheck::Condition1Fails => json!({ "result": "Condition1Fails", "condition1": false }),
            WitnessCheck::Condition2Fails { z } => json!({
                "result": "Condition2Fails",
                "condition1": true,
                "condition2": false,
                "z": z.to_json(),
            }),
        }
    }
}

/// Representatives `a^i k` (`i < m/2`) of `Z(G)/<s>`. Since
/// `z(1 - s) = sum_c (z_c - z_{cs}) c (1 - s)`, letting `z` range over the
/// span of these reaches every value of `z tau_w (1 - s)`.
fn center_representatives(slc: &SLCStructure) -> Vec<usize> {
    let mut reps = Vec::new();
    for i in 0..slc.half_m() {
        for kidx in 0..slc.k_elements().len() {
            reps.push(slc.index(0, i, kidx, 0));
        }
    }
    reps
}

pub fn check_witness(
    slc: &SLCStructure,
    witness: &NonCleanWitness,
    mode: CheckMode,
    budget: u64,
) -> Result<WitnessCheck> {
    let group = slc.group();
    let ring = witness.gamma.ring();
    witness.gamma.check_same_carrier(&witness.tau_w)?;
    if witness.gamma.group().order() != group.order() || **witness.gamma.group() != **group {
        return Err(Error::MismatchedCarriers("witness is not over the given SLC-group".into()));
    }
    let one = GroupRingElement::one(group, ring);
    let tau_s = witness.tau_w.mul(&one_minus_s(slc, ring))?;
    let gamma_sq = witness.gamma.mul(&witness.gamma)?;
    if !one.sub(&gamma_sq)?.mul(&tau_s)?.is_zero() {
        return Ok(WitnessCheck::Condition1Fails);
    }

    let reps = center_representatives(slc);
    let route = match mode {
        CheckMode::Exhaustive => Condition2Route::Exhaustive,
        CheckMode::Symbolic => Condition2Route::Symbolic,
        CheckMode::Auto => match ring.size() {
            Some(q) if cardinality(q, reps.len()) <= BigUint::from(budget) => Condition2Route::Exhaustive,
            _ => Condition2Route::Symbolic,
        },
    };
    match route {
        Condition2Route::Exhaustive => {
            let quarter = ring.mul(&ring.two_inverse(), &ring.two_inverse());
            let target = witness.gamma.mul(&tau_s)?.scalar_mul(&quarter);
            match exhaustive_search(ring, &reps, &tau_s, &target, budget)? {
                Some(z) => Ok(WitnessCheck::Condition2Fails { z }),
                None => Ok(WitnessCheck::Valid { route }),
            }
        }
        Condition2Route::Symbolic => {
            if !witness.tau_w.is_central() {
                return Err(Error::Inconclusive("tau_w is not central; no symbolic check applies".into()));
            }
            let form = decompose_f(slc, &witness.gamma.mul(&tau_s)?)?;
            let off_center = form.rows()[1..].iter().flatten().any(|e| !e.is_zero());
            if off_center {
                Ok(WitnessCheck::Valid { route })
            } else {
                Err(Error::Inconclusive(
                    "gamma tau_w (1-s) is central; condition 2 needs exhaustive search".into(),
                ))
            }
        }
    }
}

/// Searches for `z = sum_i d_i reps_i` with `z tau_s = target`, where
/// `tau_s = tau_w (1 - s)`. The accumulator `z tau_s` is updated
/// incrementally as the digits `d_i` tick over, and a running count of
/// positions where it differs from the target detects a hit.
fn exhaustive_search(
    ring: &Arc<CoefficientRing>,
    reps: &[usize],
    tau_s: &GroupRingElement,
    target: &GroupRingElement,
    budget: u64,
) -> Result<Option<GroupRingElement>> {
    let q = ring
        .size()
        .ok_or_else(|| Error::InvalidRing(format!("cannot enumerate the center over the infinite ring {ring}")))?;
    let card = cardinality(q, reps.len());
    if card > BigUint::from(budget) {
        return Err(Error::budget(card, budget));
    }
    let group = tau_s.group();
    let n = group.order();

    // Ring arithmetic on element indices.
    let small = ring.small().cloned();
    let add = |a: u64, b: u64| -> u64 {
        match &small {
            Some(s) => s.add(a as u16, b as u16) as u64,
            None => ring.index_of(&ring.add(&ring.element_at(a), &ring.element_at(b))),
        }
    };
    let mul = |a: u64, b: u64| -> u64 {
        match &small {
            Some(s) => s.mul(a as u16, b as u16) as u64,
            None => ring.index_of(&ring.mul(&ring.element_at(a), &ring.element_at(b))),
        }
    };
    let sub = |a: u64, b: u64| -> u64 { add(a, ring.index_of(&ring.neg(&ring.element_at(b)))) };

    let target: Vec<u64> = target.coeffs().iter().map(|c| ring.index_of(c)).collect();
    let columns: Vec<Vec<(usize, u64)>> = reps
        .iter()
        .map(|&c| {
            let w = GroupRingElement::basis(group, ring, c).mul(tau_s).unwrap();
            w.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, v)| !ring.is_zero(v))
                .map(|(pos, v)| (pos, ring.index_of(v)))
                .collect()
        })
        .collect();

    let mut acc = vec![0u64; n];
    let mut mismatches = target.iter().filter(|&&t| t != 0).count();
    let mut digits = vec![0u64; reps.len()];
    let apply = |acc: &mut [u64], mismatches: &mut usize, column: &[(usize, u64)], delta: u64| {
        for &(pos, w) in column {
            let before = acc[pos] == target[pos];
            acc[pos] = add(acc[pos], mul(delta, w));
            let after = acc[pos] == target[pos];
            match (before, after) {
                (true, false) => *mismatches += 1,
                (false, true) => *mismatches -= 1,
                _ => {}
            }
        }
    };
    loop {
        if mismatches == 0 {
            let mut z = GroupRingElement::zero(group, ring);
            for (&c, &d) in reps.iter().zip(&digits) {
                z.set_coeff(c, ring.element_at(d));
            }
            return Ok(Some(z));
        }
        // advance the odometer, least significant digit first
        let mut i = 0;
        loop {
            if i == digits.len() {
                return Ok(None);
            }
            let old = digits[i];
            let new = if old + 1 == q { 0 } else { old + 1 };
            digits[i] = new;
            apply(&mut acc, &mut mismatches, &columns[i], sub(new, old));
            if new != 0 {
                break;
            }
            i += 1;
        }
    }
}
