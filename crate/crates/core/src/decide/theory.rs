//! Theory-side decisions: necessary conditions, the elementary abelian
//! 2-group criterion, the field criterion, and Perlis-Walker multiplicities.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::verdict::{direct_sum_reduce, Certificate, Reason, Status, Verdict};
use crate::coeff::{
    level_classify_prime, make_ring, solve_three_squares, two_squares_search, CoefficientRing, Level, RingKind,
    RingSpec, ThreeSquaresOutcome, ThreeSquaresSolution,
};
use crate::error::{Error, Result};
use crate::groups::{FiniteGroup, SLCStructure};
use crate::numtheory::{euler_phi, exists_n_dividing, factorize, lcm, multiplicative_order};
use crate::witness::{check_witness, generate_witness, CheckMode, WitnessCase, WitnessCheck, WitnessOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerlisWalkerComponent {
    /// Order of the root of unity.
    pub d: u64,
    /// Number of copies `a_d` of `F(zeta_d)`.
    pub multiplicity: u64,
    /// `[F(zeta_d) : F]`.
    pub degree: u64,
}

/// `FA = sum_d a_d F(zeta_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerlisWalkerDecomposition {
    pub components: Vec<PerlisWalkerComponent>,
}

impl PerlisWalkerDecomposition {
    /// `sum_d a_d [F(zeta_d) : F]`, which equals `|A|`.
    pub fn dimension(&self) -> u64 {
        self.components.iter().map(|c| c.multiplicity * c.degree).sum()
    }

    pub fn as_tuples(&self) -> Vec<(u64, u64, u64)> {
        self.components.iter().map(|c| (c.d, c.multiplicity, c.degree)).collect()
    }
}

/// `[F(zeta_d) : F]` for a field `F` with characteristic not dividing `d`.
pub fn root_degree(field: &CoefficientRing, d: u64) -> Result<u64> {
    let ch = field.characteristic();
    if ch != 0 && d.is_multiple_of(ch) {
        return Err(Error::CharDivides { characteristic: ch, modulus: d });
    }
    Ok(match field.kind() {
        RingKind::Rationals => euler_phi(d),
        RingKind::Cyclotomic { d: e, .. } => euler_phi(lcm(*e, d)) / euler_phi(*e),
        RingKind::FiniteField { .. } | RingKind::ModN { .. } => {
            if !field.is_field() {
                return Err(Error::InvalidRing(format!("{field} is not a field")));
            }
            let q = field.size().unwrap();
            multiplicative_order(q % d, d).unwrap_or(1)
        }
    })
}

pub fn perlis_walker(field: &CoefficientRing, a: &FiniteGroup) -> Result<PerlisWalkerDecomposition> {
    if !field.is_field() {
        return Err(Error::InvalidRing(format!("{field} is not a field")));
    }
    if !a.is_abelian() {
        return Err(Error::InvalidParameter("Perlis-Walker needs an abelian group".into()));
    }
    let ch = field.characteristic();
    if ch != 0 && (a.order() as u64).is_multiple_of(ch) {
        return Err(Error::CharDivides { characteristic: ch, modulus: a.order() as u64 });
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for o in a.element_orders() {
        *counts.entry(o).or_default() += 1;
    }
    let mut components = Vec::with_capacity(counts.len());
    for (d, count) in counts {
        let degree = root_degree(field, d)?;
        if count % degree != 0 {
            return Err(Error::Discrepancy(format!("{count} elements of order {d} not divisible by degree {degree}")));
        }
        components.push(PerlisWalkerComponent { d, multiplicity: count / degree, degree });
    }
    Ok(PerlisWalkerDecomposition { components })
}

fn solution_json(ring: &CoefficientRing, sol: &ThreeSquaresSolution) -> Value {
    json!({
        "ring": ring.to_string(),
        "x": ring.format_element(&sol.x),
        "y": ring.format_element(&sol.y),
        "z": ring.format_element(&sol.z),
    })
}

pub fn equation_certificate(ring: &CoefficientRing, sol: &ThreeSquaresSolution) -> Certificate {
    Certificate::new("equation", solution_json(ring, sol))
}

/// Result of testing the necessary conditions.
#[derive(Debug, Clone, PartialEq)]
pub enum NecessaryOutcome {
    /// A witness was built and validated.
    Violated(Verdict),
    /// Every condition holds; the reasons record each check.
    Satisfied(Vec<Reason>),
    /// Some condition could not be settled.
    Undetermined(Vec<Reason>),
}

fn witness_reason(case: &WitnessCase, slc: &SLCStructure) -> Reason {
    let presentation = slc.presentation().to_string();
    let group = slc.group();
    match case {
        WitnessCase::TypeOne | WitnessCase::TypeThreeToFive { .. } | WitnessCase::TypeTwoLargeM { .. } => Reason::new(
            "G is Q8 x A with A abelian",
            case.citation(),
            json!({ "holds": false, "presentation": presentation, "case": case.to_string() }),
        ),
        WitnessCase::OrderFour { g } => Reason::new(
            "A has no element of order 4",
            case.citation(),
            json!({ "holds": false, "element": group.name(*g) }),
        ),
        WitnessCase::ExcludedPrime { g, p, n } => Reason::new(
            "A has no element of prime order p with p | 2^n + 1",
            case.citation(),
            json!({ "holds": false, "element": group.name(*g), "p": p, "n": n }),
        ),
        WitnessCase::ThreeSquares { .. } => Reason::new(
            "X^2 + Y^2 + Z^2 + 1 = 0 has no solution in R",
            case.citation(),
            json!({ "holds": false }),
        ),
    }
}

/// Builds a witness for the first failing condition and validates it.
pub fn necessary_conditions(
    slc: &SLCStructure,
    ring: &Arc<CoefficientRing>,
    height_bound: u64,
    condition2_budget: u64,
) -> Result<NecessaryOutcome> {
    match generate_witness(slc, ring, height_bound) {
        WitnessOutcome::Found(w) => {
            let reason = witness_reason(&w.case, slc);
            let check = match check_witness(slc, &w, CheckMode::Auto, condition2_budget) {
                Ok(check) => check,
                Err(Error::Inconclusive(why)) | Err(Error::Budget { cardinality: why, .. }) => {
                    let mut r = reason;
                    r.data["witness_check"] = json!(format!("inconclusive: {why}"));
                    return Ok(NecessaryOutcome::Undetermined(vec![r]));
                }
                Err(e) => return Err(e),
            };
            if let WitnessCheck::Condition1Fails | WitnessCheck::Condition2Fails { .. } = check {
                return Err(Error::Discrepancy(format!("generated witness ({}) fails: {check:?}", w.case)));
            }
            let mut verdict = Verdict::new(Status::NotStarClean)
                .with_reason(reason)
                .with_certificate(Certificate::new("witness", json!({ "witness": w.to_json(), "check": check.to_json() })));
            if let WitnessCase::ThreeSquares { solution } = &w.case {
                verdict = verdict.with_certificate(equation_certificate(ring, solution));
            }
            Ok(NecessaryOutcome::Violated(verdict))
        }
        WitnessOutcome::NotFound => {
            let abelian_order = slc.abelian_elements().len() as u64;
            let odd_primes: Vec<u64> = factorize(abelian_order).into_iter().map(|(p, _)| p).filter(|&p| p != 2).collect();
            Ok(NecessaryOutcome::Satisfied(vec![
                Reason::new("G is Q8 x A with A abelian", "TheoremA", json!({ "holds": true })),
                Reason::new("A has no element of order 4", "TheoremA.1", json!({ "holds": true })),
                Reason::new(
                    "A has no element of prime order p with p | 2^n + 1",
                    "TheoremA.2",
                    json!({ "holds": true, "primes_checked": odd_primes }),
                ),
                Reason::new("X^2 + Y^2 + Z^2 + 1 = 0 has no solution in R", "TheoremA", json!({ "holds": true })),
            ]))
        }
        WitnessOutcome::Undetermined(why) => Ok(NecessaryOutcome::Undetermined(vec![Reason::new(
            "X^2 + Y^2 + Z^2 + 1 = 0 has no solution in R",
            "TheoremA",
            json!({ "holds": null, "detail": why }),
        )])),
    }
}

/// Whether `RG` is clean, as far as it is known without search.
#[derive(Debug, Clone, PartialEq)]
pub enum CleanStatus {
    Clean { source: String },
    NotClean { counterexample: Option<Value> },
    Unknown,
}

/// Every ring supported here is a finite direct sum of commutative local
/// rings with nil Jacobson radical (`Z/n`, finite fields) or a field, so
/// `RG` is clean for every finite `G`.
pub fn clean_status_from_coefficients(ring: &CoefficientRing) -> CleanStatus {
    let source = match ring.kind() {
        RingKind::ModN { n } => {
            let parts: Vec<String> = factorize(*n).iter().map(|(p, e)| format!("Z/{}", p.pow(*e))).collect();
            format!("{} is a sum of local rings {} with nilpotent radical", ring, parts.join(" + "))
        }
        _ => format!("{ring} is a field"),
    };
    CleanStatus::Clean { source }
}

/// `G = Q8 x C2^rank`: *-clean iff `RG` is clean and the three-squares
/// equation has no solution in `R`.
pub fn theorem_b_decide(ring: &CoefficientRing, rank: u32, clean: &CleanStatus, height_bound: u64) -> Verdict {
    let data = |extra: Value| {
        let mut d = json!({ "rank": rank });
        if let (Some(obj), Value::Object(more)) = (d.as_object_mut(), extra) {
            obj.extend(more);
        }
        d
    };
    let clean_reason = match clean {
        CleanStatus::Clean { source } => Reason::new("RG is clean", "CleanLocalCoefficients", json!({ "clean": true, "source": source })),
        CleanStatus::NotClean { .. } => Reason::new("RG is clean", "TheoremB", json!({ "clean": false })),
        CleanStatus::Unknown => Reason::new("RG is clean", "TheoremB", json!({ "clean": null })),
    };
    let not_clean = |v: Verdict| match clean {
        CleanStatus::NotClean { counterexample } => {
            let cert = Certificate::new("not-clean", counterexample.clone().unwrap_or(json!({ "flag": "input" })));
            Some(v.with_certificate(cert))
        }
        _ => None,
    };
    match solve_three_squares(ring, height_bound) {
        ThreeSquaresOutcome::Solution(sol) => Verdict::new(Status::NotStarClean)
            .with_reason(Reason::new("X^2 + Y^2 + Z^2 + 1 = 0 has no solution in R", "TheoremB", data(json!({ "holds": false }))))
            .with_certificate(equation_certificate(ring, &sol)),
        ThreeSquaresOutcome::NoSolution => {
            let base = Verdict::new(Status::StarClean)
                .with_reason(clean_reason)
                .with_reason(Reason::new("X^2 + Y^2 + Z^2 + 1 = 0 has no solution in R", "TheoremB", data(json!({ "holds": true }))));
            match clean {
                CleanStatus::Clean { .. } => base,
                CleanStatus::NotClean { .. } => {
                    let mut v = not_clean(base).unwrap();
                    v.status = Status::NotStarClean;
                    v
                }
                CleanStatus::Unknown => Verdict { status: Status::Unknown, ..base },
            }
        }
        ThreeSquaresOutcome::Unknown(why) => {
            let base = Verdict::new(Status::Unknown)
                .with_reason(clean_reason)
                .with_reason(Reason::new("X^2 + Y^2 + Z^2 + 1 = 0 has no solution in R", "TheoremB", data(json!({ "holds": null, "detail": why }))));
            match not_clean(base.clone()) {
                Some(mut v) => {
                    v.status = Status::NotStarClean;
                    v
                }
                None => base,
            }
        }
    }
}

/// The distinct element orders of `A`, ascending.
fn element_order_set(a: &FiniteGroup) -> Vec<u64> {
    let mut orders = a.element_orders();
    orders.sort_unstable();
    orders.dedup();
    orders
}

/// `R = F_1 + ... + F_n` and `G = Q8 x A`: *-clean iff the equation has no
/// solution in any `F_i(zeta_d)` with `d` an element order of `A`.
pub fn theorem_c_decide(fields: &[Arc<CoefficientRing>], a: &FiniteGroup, height_bound: u64) -> Result<Verdict> {
    let g_order = 8 * a.order() as u64;
    for f in fields {
        if !f.is_field() {
            return Err(Error::InvalidRing(format!("{f} is not a field")));
        }
        let ch = f.characteristic();
        if ch != 0 && g_order.is_multiple_of(ch) {
            return Err(Error::CharDivides { characteristic: ch, modulus: g_order });
        }
    }
    let orders = element_order_set(a);
    let mut components = Vec::new();
    let mut cache: HashMap<RingSpec, (Status, Option<Certificate>, Value)> = HashMap::new();
    for field in fields {
        for &d in &orders {
            let (status, cert, detail) = match field.extend_with_root(d) {
                Ok(ext) => cache
                    .entry(ext.spec())
                    .or_insert_with(|| match solve_three_squares(&ext, height_bound) {
                        ThreeSquaresOutcome::Solution(sol) => {
                            (Status::NotStarClean, Some(equation_certificate(&ext, &sol)), json!({ "solvable": true }))
                        }
                        ThreeSquaresOutcome::NoSolution => (Status::StarClean, None, json!({ "solvable": false })),
                        ThreeSquaresOutcome::Unknown(why) => (Status::Unknown, None, json!({ "solvable": null, "detail": why })),
                    })
                    .clone(),
                // The extension is too large to build; a solution in F itself still lifts.
                Err(Error::Capacity { .. }) => match solve_three_squares(field, height_bound) {
                    ThreeSquaresOutcome::Solution(sol) => (
                        Status::NotStarClean,
                        Some(equation_certificate(field, &sol)),
                        json!({ "solvable": true, "via": "base field" }),
                    ),
                    _ => (Status::Unknown, None, json!({ "solvable": null, "detail": "extension exceeds capacity" })),
                },
                Err(e) => return Err(e),
            };
            let ext_name = field
                .extend_with_root(d)
                .map(|e| e.to_string())
                .unwrap_or_else(|_| format!("{field}(zeta{d})"));
            let mut data = json!({ "field": field.to_string(), "d": d, "extension": ext_name });
            if let (Some(obj), Value::Object(more)) = (data.as_object_mut(), detail) {
                obj.extend(more);
            }
            let mut v = Verdict::new(status).with_reason(Reason::new(
                "X^2 + Y^2 + Z^2 + 1 = 0 has no solution in F(zeta_d)",
                "TheoremC",
                data,
            ));
            if let Some(c) = cert {
                v = v.with_certificate(c);
            }
            components.push(v);
        }
    }
    Ok(direct_sum_reduce(components))
}

/// The prime fields `F_p` with `R = Z/n = sum F_p`, or `[R]` for a field.
pub fn field_components(ring: &Arc<CoefficientRing>) -> Option<Vec<Arc<CoefficientRing>>> {
    if ring.is_field() {
        return Some(vec![Arc::clone(ring)]);
    }
    if !ring.is_semisimple() {
        return None;
    }
    let RingKind::ModN { n } = ring.kind() else { return None };
    Some(
        factorize(*n)
            .into_iter()
            .map(|(p, _)| Arc::new(make_ring(&RingSpec::FiniteField(p, 1)).unwrap()))
            .collect(),
    )
}

/// For `R = Q`: primes `p ≡ 3, 5 mod 8` dividing `|A|`, for which `Q(zeta_p)`
/// has level 2.
pub fn corollary_a1_reason(a_order: u64, height_bound: u64) -> Option<(Reason, Option<Certificate>)> {
    let p = factorize(a_order)
        .into_iter()
        .map(|(p, _)| p)
        .find(|&p| p != 2 && level_classify_prime(p).ok() == Some(Level::Level2))?;
    let field = make_ring(&RingSpec::Cyclotomic(p)).ok()?;
    let cert = two_squares_search(&field, height_bound).map(|(x, y)| {
        let sol = ThreeSquaresSolution { x, y, z: field.zero() };
        equation_certificate(&field, &sol)
    });
    let reason = Reason::new(
        "G has an element of prime order p ≡ 3, 5 mod 8 and R = Q",
        "CorollaryA.1",
        json!({ "p": p, "level": "2", "n": exists_n_dividing(p) }),
    );
    Some((reason, cert))
}
