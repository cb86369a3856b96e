//! Runs the decision procedure and the brute-force search side by side.

use std::sync::Arc;

use serde_json::{json, Value};

use super::brute::{brute_clean, brute_star_clean, BruteConfig, BruteMode, BruteResult};
use super::verdict::{Status, Verdict};
use super::{decide, Carrier, DecideOptions};
use crate::coeff::CoefficientRing;
use crate::error::{Error, Result};
use crate::groupring::central_idempotents;
use crate::groups::InvolutionMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    /// The theory verdict is Unknown or the search was sampled without
    /// finding a counterexample.
    Inconclusive,
    /// No theory verdict applies to the carrier.
    NotApplicable,
}

#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub theory: Option<Verdict>,
    pub clean: BruteResult,
    pub star_clean: BruteResult,
    pub agreement: Agreement,
}

impl CrossValidation {
    pub fn to_json(&self) -> Value {
        json!({
            "theory": self.theory,
            "clean": self.clean.to_json(),
            "star_clean": self.star_clean.to_json(),
            "agreement": match self.agreement {
                Agreement::Agree => "agree",
                Agreement::Inconclusive => "inconclusive",
                Agreement::NotApplicable => "n/a",
            },
        })
    }
}

/// Fails with [`Error::Discrepancy`] when a conclusive theory verdict and a
/// conclusive search disagree.
pub fn cross_validate(
    carrier: &Carrier,
    ring: &Arc<CoefficientRing>,
    sigma: &InvolutionMap,
    opts: &DecideOptions,
    config: &BruteConfig,
) -> Result<CrossValidation> {
    let theory = match carrier {
        Carrier::Slc(_) => Some(decide(carrier, ring, sigma, opts)?),
        Carrier::Plain(_) => None,
    };
    let split = carrier.slc().map(|s| central_idempotents(s, ring));
    let clean = brute_clean(carrier.group(), ring, config, split.as_ref())?;
    let star_clean = brute_star_clean(sigma, ring, config)?;
    // every projection is an idempotent
    if !clean.holds && star_clean.holds && star_clean.mode == BruteMode::Full {
        return Err(Error::Discrepancy("RG is *-clean but a non-clean element was found".into()));
    }
    let agreement = match theory.as_ref().map(|v| v.status) {
        None => Agreement::NotApplicable,
        Some(Status::Unknown) => Agreement::Inconclusive,
        Some(Status::NotStarClean) if star_clean.holds => {
            if star_clean.mode == BruteMode::Full {
                return Err(Error::Discrepancy(format!(
                    "theory says NotStarClean, exhaustive search found a decomposition for all {} elements",
                    star_clean.elements_checked
                )));
            }
            Agreement::Inconclusive
        }
        Some(Status::StarClean) if !star_clean.holds => {
            return Err(Error::Discrepancy("theory says StarClean, search found a non-decomposable element".into()));
        }
        Some(Status::StarClean) if star_clean.mode == BruteMode::Sampled => Agreement::Inconclusive,
        Some(_) => Agreement::Agree,
    };
    Ok(CrossValidation { theory, clean, star_clean, agreement })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{make_ring, RingSpec};
    use crate::decide::{involution_for, InvolutionKind};
    use crate::groups::{build_abelian, build_slc, PresentationType};

    #[test]
    fn q8_over_f3_agrees() {
        let carrier = Carrier::Slc(build_slc(PresentationType::D2, 1, None, None, &[]).unwrap());
        let r = Arc::new(make_ring(&RingSpec::FiniteField(3, 1)).unwrap());
        let sigma = involution_for(&carrier, InvolutionKind::Canonical).unwrap();
        let report = cross_validate(&carrier, &r, &sigma, &DecideOptions::default(), &BruteConfig::default()).unwrap();
        assert!(report.clean.holds);
        assert!(!report.star_clean.holds);
        assert_eq!(report.theory.unwrap().status, Status::NotStarClean);
        assert_eq!(report.agreement, Agreement::Agree);
    }

    #[test]
    fn plain_carrier_is_not_applicable() {
        let carrier = Carrier::Plain(Arc::new(build_abelian(&[2]).unwrap()));
        let r = Arc::new(make_ring(&RingSpec::FiniteField(3, 1)).unwrap());
        let sigma = involution_for(&carrier, InvolutionKind::Classical).unwrap();
        let report = cross_validate(&carrier, &r, &sigma, &DecideOptions::default(), &BruteConfig::default()).unwrap();
        assert!(report.star_clean.holds);
        assert_eq!(report.agreement, Agreement::NotApplicable);
    }
}
