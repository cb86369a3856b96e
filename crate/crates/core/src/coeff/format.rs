//! Text form of ring elements: integers for `Z/n` and `F_p`, polynomials in
//! `t` for `F_{p^k}`, rationals for `Q`, polynomials in `z` (= zeta_d) with
//! rational coefficients for `Q(zeta_d)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CoefficientRing, RingElement, RingKind};
use crate::error::{Error, Result};

fn variable(ring: &CoefficientRing) -> Option<char> {
    match ring.kind() {
        RingKind::FiniteField { k, .. } if *k > 1 => Some('t'),
        RingKind::Cyclotomic { .. } if ring.degree() > 1 => Some('z'),
        _ => None,
    }
}

fn monomial(var: char, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Joins `(coefficient, exponent)` terms, highest exponent first.
fn join_terms(terms: Vec<(BigRational, usize)>, var: Option<char>) -> String {
    let mut out = String::new();
    for (c, e) in terms.into_iter().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mono = var.map(|v| monomial(v, e)).unwrap_or_default();
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{a}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(super) fn format_element(ring: &CoefficientRing, a: &RingElement) -> String {
    match (ring.kind(), a) {
        (RingKind::ModN { .. }, RingElement::Residue(v)) => v.to_string(),
        (RingKind::FiniteField { p, k, .. }, RingElement::Residue(v)) => {
            if *k == 1 {
                return v.to_string();
            }
            let mut digits = Vec::new();
            let mut v = *v;
            for e in 0..*k as usize {
                digits.push((BigRational::from_integer(BigInt::from(v % p)), e));
                v /= p;
            }
            join_terms(digits, variable(ring))
        }
        (_, RingElement::Poly(c)) => {
            let terms = c.iter().cloned().enumerate().map(|(e, c)| (c, e)).collect();
            join_terms(terms, variable(ring))
        }
        _ => panic!("element does not belong to {ring}"),
    }
}

fn parse_rational(s: &str, pos: usize) -> Result<BigRational> {
    let err = || Error::Parse { pos, msg: format!("bad coefficient {s:?}") };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| err())?;
            let d: BigInt = d.parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

pub(super) fn parse_element(ring: &CoefficientRing, s: &str) -> Result<RingElement> {
    let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if text.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty coefficient".into() });
    }
    let var = variable(ring);
    // split into signed terms
    let mut terms: Vec<(usize, bool, &str)> = Vec::new();
    let bytes = text.as_bytes();
    let mut start = 0;
    let mut negative = false;
    if bytes[0] == b'-' || bytes[0] == b'+' {
        negative = bytes[0] == b'-';
        start = 1;
    }
    let mut i = start;
    while i <= bytes.len() {
        if i == bytes.len() || ((bytes[i] == b'+' || bytes[i] == b'-') && i > start) {
            terms.push((start, negative, &text[start..i]));
            if i < bytes.len() {
                negative = bytes[i] == b'-';
            }
            start = i + 1;
        }
        i += 1;
    }
    let mut acc = ring.zero();
    for (pos, neg, term) in terms {
        if term.is_empty() {
            return Err(Error::Parse { pos, msg: "empty term".into() });
        }
        let (coef, exp) = match var.and_then(|v| term.find(v).map(|at| (v, at))) {
            Some((v, at)) => {
                let coef_text = term[..at].strip_suffix('*').unwrap_or(&term[..at]);
                let coef = if coef_text.is_empty() { BigRational::one() } else { parse_rational(coef_text, pos)? };
                let rest = &term[at + v.len_utf8()..];
                let exp = match rest.strip_prefix('^') {
                    Some(e) => e.parse::<u64>().map_err(|_| Error::Parse { pos, msg: format!("bad exponent in {term:?}") })?,
                    None if rest.is_empty() => 1,
                    None => return Err(Error::Parse { pos, msg: format!("unexpected {rest:?}") }),
                };
                (coef, exp)
            }
            None => (parse_rational(term, pos)?, 0),
        };
        if ring.is_finite() && !coef.denom().is_one() {
            let d = ring.from_int((coef.denom() % BigInt::from(ring.characteristic())).try_into().unwrap_or(0));
            if !ring.is_unit(&d) {
                return Err(Error::Parse { pos, msg: format!("denominator of {term:?} is not invertible") });
            }
        }
        let mut c = ring.from_rational(coef);
        if neg {
            c = ring.neg(&c);
        }
        let mono = ring.pow(&ring.generator_x(), exp);
        acc = ring.add(&acc, &ring.mul(&c, &mono));
    }
    Ok(acc)
}
