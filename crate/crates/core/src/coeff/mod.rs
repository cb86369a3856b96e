//! Exact coefficient rings: `Z/n` (n odd), `F_{p^k}` (p odd), `Q` and the
//! cyclotomic fields `Q(zeta_d) = Q[x]/Phi_d`.

mod format;
mod poly;
mod small;
mod squares;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{factorize, gcd, is_prime, lcm, mod_inv, mod_mul, multiplicative_order};

pub use poly::cyclotomic_polynomial;
pub use small::{SmallRing, SMALL_RING_LIMIT};
pub use squares::{
    level_classify_prime, solve_three_squares, two_squares_search, Level, ThreeSquaresOutcome,
    ThreeSquaresSolution, DEFAULT_HEIGHT_BOUND,
};

/// Largest finite ring we are willing to construct.
pub const MAX_FINITE_SIZE: u64 = 1 << 62;

/// What the user asks for; [`make_ring`] turns it into a [`CoefficientRing`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    ModN(u64),
    FiniteField(u64, u32),
    Rationals,
    Cyclotomic(u64),
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::ModN(n) => write!(f, "Z/{n}"),
            RingSpec::FiniteField(p, 1) => write!(f, "F{p}"),
            RingSpec::FiniteField(p, k) => write!(f, "F{p}^{k}"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Cyclotomic(d) => write!(f, "Q(zeta{d})"),
        }
    }
}

impl RingSpec {
    /// Parses `Z/9`, `F3`, `F3^2`, `Q`, `Q(zeta7)`.
    pub fn parse(s: &str) -> Result<RingSpec> {
        let t = s.trim();
        let num = |v: &str, what: &str| -> Result<u64> {
            v.trim().parse::<u64>().map_err(|_| Error::Parse { pos: 0, msg: format!("bad {what} in ring spec {s:?}") })
        };
        if t == "Q" {
            return Ok(RingSpec::Rationals);
        }
        if let Some(rest) = t.strip_prefix("Z/") {
            return Ok(RingSpec::ModN(num(rest, "modulus")?));
        }
        if let Some(rest) = t.strip_prefix("Q(zeta").and_then(|r| r.strip_suffix(')')) {
            return Ok(RingSpec::Cyclotomic(num(rest, "root order")?));
        }
        if let Some(rest) = t.strip_prefix('F') {
            return match rest.split_once('^') {
                Some((p, k)) => {
                    let k = num(k, "degree")?;
                    let k = u32::try_from(k).map_err(|_| Error::Parse { pos: 0, msg: "degree too large".into() })?;
                    Ok(RingSpec::FiniteField(num(p, "characteristic")?, k))
                }
                None => Ok(RingSpec::FiniteField(num(rest, "characteristic")?, 1)),
            };
        }
        Err(Error::Parse { pos: 0, msg: format!("unrecognized ring spec {s:?}") })
    }
}

/// The ring kind together with its reduction data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingKind {
    ModN { n: u64 },
    /// `modulus` is monic of degree `k`, lowest coefficient first.
    FiniteField { p: u64, k: u32, modulus: Vec<u64> },
    Rationals,
    /// `phi` is `Phi_d`, lowest coefficient first.
    Cyclotomic { d: u64, phi: Vec<i64> },
}

/// Element payload. Finite rings use `Residue` (for `F_{p^k}` the base-`p`
/// digits of the index are the polynomial coefficients); `Q` and `Q(zeta_d)`
/// use a coefficient vector of fixed length equal to the field degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingElement {
    Residue(u64),
    Poly(Vec<BigRational>),
}

pub struct CoefficientRing {
    kind: RingKind,
    zeta: Option<(RingElement, u64)>,
    small: OnceLock<Option<Arc<SmallRing>>>,
    square_roots: OnceLock<Option<Arc<Vec<Option<u64>>>>>,
}

impl Clone for CoefficientRing {
    fn clone(&self) -> Self {
        CoefficientRing {
            kind: self.kind.clone(),
            zeta: self.zeta.clone(),
            small: self.small.clone(),
            square_roots: self.square_roots.clone(),
        }
    }
}

impl PartialEq for CoefficientRing {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Eq for CoefficientRing {}

impl fmt::Debug for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoefficientRing({self})")
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec())
    }
}

pub fn make_ring(spec: &RingSpec) -> Result<CoefficientRing> {
    let kind = match *spec {
        RingSpec::ModN(n) => {
            if n % 2 == 0 {
                return Err(Error::InvalidRing(format!("Z/{n}: 2 must be a unit")));
            }
            if n < 3 {
                return Err(Error::InvalidRing(format!("Z/{n} is the zero ring")));
            }
            RingKind::ModN { n }
        }
        RingSpec::FiniteField(p, k) => {
            if p == 2 {
                return Err(Error::InvalidRing("F2: 2 must be a unit".into()));
            }
            if !is_prime(p) {
                return Err(Error::InvalidRing(format!("F{p}: {p} is not prime")));
            }
            if k == 0 {
                return Err(Error::InvalidRing("field degree must be positive".into()));
            }
            let size = (p as u128).checked_pow(k);
            if size.is_none_or(|s| s > MAX_FINITE_SIZE as u128) {
                return Err(Error::capacity("finite field size", size.unwrap_or(u128::MAX).min(u64::MAX as u128) as u64, MAX_FINITE_SIZE));
            }
            RingKind::FiniteField { p, k, modulus: poly::least_irreducible(p, k) }
        }
        RingSpec::Rationals => RingKind::Rationals,
        RingSpec::Cyclotomic(d) => {
            if d == 0 {
                return Err(Error::InvalidRing("cyclotomic index must be positive".into()));
            }
            if crate::numtheory::euler_phi(d) > 4096 {
                return Err(Error::capacity("cyclotomic degree", crate::numtheory::euler_phi(d), 4096));
            }
            RingKind::Cyclotomic { d, phi: cyclotomic_polynomial(d) }
        }
    };
    let mut ring = CoefficientRing::from_kind(kind);
    if let RingKind::Cyclotomic { d, .. } = ring.kind {
        let z = ring.generator_x();
        ring.zeta = Some((z, d));
    }
    Ok(ring)
}

impl CoefficientRing {
    fn from_kind(kind: RingKind) -> Self {
        CoefficientRing { kind, zeta: None, small: OnceLock::new(), square_roots: OnceLock::new() }
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn spec(&self) -> RingSpec {
        match &self.kind {
            RingKind::ModN { n } => RingSpec::ModN(*n),
            RingKind::FiniteField { p, k, .. } => RingSpec::FiniteField(*p, *k),
            RingKind::Rationals => RingSpec::Rationals,
            RingKind::Cyclotomic { d, .. } => RingSpec::Cyclotomic(*d),
        }
    }

    /// The distinguished root of unity attached by [`Self::extend_with_root`]
    /// (or `x` for cyclotomic rings), with its order.
    pub fn zeta(&self) -> Option<&(RingElement, u64)> {
        self.zeta.as_ref()
    }

    /// Number of elements, `None` for infinite rings.
    pub fn size(&self) -> Option<u64> {
        match &self.kind {
            RingKind::ModN { n } => Some(*n),
            RingKind::FiniteField { p, k, .. } => Some(p.pow(*k)),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// 0 for characteristic-zero rings.
    pub fn characteristic(&self) -> u64 {
        match &self.kind {
            RingKind::ModN { n } => *n,
            RingKind::FiniteField { p, .. } => *p,
            _ => 0,
        }
    }

    pub fn is_field(&self) -> bool {
        match &self.kind {
            RingKind::ModN { n } => is_prime(*n),
            _ => true,
        }
    }

    /// `Z/n` with `n` squarefree is a finite product of fields.
    pub fn is_semisimple(&self) -> bool {
        match &self.kind {
            RingKind::ModN { n } => factorize(*n).iter().all(|&(_, e)| e == 1),
            _ => true,
        }
    }

    /// Dimension over the prime field (finite) or over `Q`.
    pub fn degree(&self) -> usize {
        match &self.kind {
            RingKind::ModN { .. } | RingKind::Rationals => 1,
            RingKind::FiniteField { k, .. } => *k as usize,
            RingKind::Cyclotomic { phi, .. } => phi.len() - 1,
        }
    }

    /// Table-driven view for finite rings with at most [`SMALL_RING_LIMIT`] elements.
    pub fn small(&self) -> Option<&Arc<SmallRing>> {
        self.small.get_or_init(|| SmallRing::build(self).map(Arc::new)).as_ref()
    }

    // ---- constructors ---------------------------------------------------

    pub fn zero(&self) -> RingElement {
        match &self.kind {
            RingKind::ModN { .. } | RingKind::FiniteField { .. } => RingElement::Residue(0),
            _ => RingElement::Poly(vec![BigRational::zero(); self.degree()]),
        }
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> RingElement {
        match &self.kind {
            RingKind::ModN { n } => RingElement::Residue((v as i128).rem_euclid(*n as i128) as u64),
            RingKind::FiniteField { p, .. } => RingElement::Residue((v as i128).rem_euclid(*p as i128) as u64),
            _ => self.from_rational(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Embeds a rational; for finite rings the denominator must be invertible.
    pub fn from_rational(&self, q: BigRational) -> RingElement {
        match &self.kind {
            RingKind::ModN { .. } | RingKind::FiniteField { .. } => {
                let m = self.characteristic() as i128;
                let red = |b: &BigInt| -> i64 {
                    let r = b % BigInt::from(m);
                    let r: i128 = r.try_into().unwrap();
                    r.rem_euclid(m) as i64
                };
                let num = self.from_int(red(q.numer()));
                let den = self.from_int(red(q.denom()));
                self.mul(&num, &self.inverse(&den).expect("denominator must be a unit"))
            }
            _ => {
                let mut v = vec![BigRational::zero(); self.degree()];
                v[0] = q;
                RingElement::Poly(v)
            }
        }
    }

    /// The class of `x` in the polynomial model (`zeta_d` for cyclotomic rings,
    /// the field generator for `F_{p^k}`).
    pub fn generator_x(&self) -> RingElement {
        match &self.kind {
            RingKind::ModN { .. } | RingKind::Rationals => self.one(),
            RingKind::FiniteField { p, k, modulus } => {
                if *k == 1 {
                    RingElement::Residue((p - modulus[0]) % p)
                } else {
                    RingElement::Residue(*p)
                }
            }
            RingKind::Cyclotomic { .. } => {
                let mut v = vec![BigRational::zero(); self.degree()];
                if v.len() > 1 {
                    v[1] = BigRational::one();
                    RingElement::Poly(v)
                } else {
                    let mut raw = vec![BigRational::zero(), BigRational::one()];
                    self.reduce_poly(&mut raw);
                    RingElement::Poly(raw)
                }
            }
        }
    }

    /// Finite rings only: the `i`-th element in canonical order.
    pub fn element_at(&self, i: u64) -> RingElement {
        debug_assert!(self.size().is_some_and(|q| i < q));
        RingElement::Residue(i)
    }

    /// Finite rings only: inverse of [`Self::element_at`].
    pub fn index_of(&self, e: &RingElement) -> u64 {
        match e {
            RingElement::Residue(v) => *v,
            RingElement::Poly(_) => panic!("index_of on an infinite ring"),
        }
    }

    /// All elements of a finite ring in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        (0..self.size().unwrap_or(0)).map(RingElement::Residue)
    }

    // ---- arithmetic -----------------------------------------------------

    fn ff_digits(&self, v: u64) -> Vec<u64> {
        let RingKind::FiniteField { p, k, .. } = &self.kind else { unreachable!() };
        let mut out = Vec::with_capacity(*k as usize);
        let mut v = v;
        for _ in 0..*k {
            out.push(v % p);
            v /= p;
        }
        poly::fp_trim(&mut out);
        out
    }

    fn ff_encode(&self, digits: &[u64]) -> u64 {
        let RingKind::FiniteField { p, .. } = &self.kind else { unreachable!() };
        digits.iter().rev().fold(0u64, |acc, &d| acc * p + d)
    }

    fn reduce_poly(&self, v: &mut Vec<BigRational>) {
        let RingKind::Cyclotomic { phi, .. } = &self.kind else {
            v.truncate(1);
            return;
        };
        let deg = phi.len() - 1;
        while v.len() > deg {
            let c = v.pop().unwrap();
            if !c.is_zero() {
                let shift = v.len() - deg;
                for (j, &pj) in phi[..deg].iter().enumerate() {
                    if pj != 0 {
                        v[shift + j] -= &c * BigRational::from_integer(BigInt::from(pj));
                    }
                }
            }
        }
        v.resize(deg, BigRational::zero());
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (&self.kind, a, b) {
            (RingKind::ModN { n }, RingElement::Residue(x), RingElement::Residue(y)) => {
                RingElement::Residue(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (RingKind::FiniteField { p, k, .. }, RingElement::Residue(x), RingElement::Residue(y)) => {
                if *k == 1 {
                    return RingElement::Residue(((*x as u128 + *y as u128) % *p as u128) as u64);
                }
                let (mut x, mut y) = (*x, *y);
                let mut out = 0u64;
                let mut place = 1u64;
                for _ in 0..*k {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place = place.wrapping_mul(*p);
                }
                RingElement::Residue(out)
            }
            (_, RingElement::Poly(x), RingElement::Poly(y)) => {
                RingElement::Poly(x.iter().zip(y).map(|(u, v)| u + v).collect())
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &RingElement) -> RingElement {
        match (&self.kind, a) {
            (RingKind::ModN { n }, RingElement::Residue(x)) => RingElement::Residue((n - x) % n),
            (RingKind::FiniteField { p, .. }, RingElement::Residue(x)) => {
                let d: Vec<u64> = self.ff_digits(*x).iter().map(|c| (p - c) % p).collect();
                RingElement::Residue(self.ff_encode(&d))
            }
            (_, RingElement::Poly(x)) => RingElement::Poly(x.iter().map(|u| -u).collect()),
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &RingElement, b: &RingElement) -> RingElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        match (&self.kind, a, b) {
            (RingKind::ModN { n }, RingElement::Residue(x), RingElement::Residue(y)) => {
                RingElement::Residue(mod_mul(*x, *y, *n))
            }
            (RingKind::FiniteField { p, k, modulus }, RingElement::Residue(x), RingElement::Residue(y)) => {
                if *k == 1 {
                    return RingElement::Residue(mod_mul(*x, *y, *p));
                }
                let prod = poly::fp_mul(&self.ff_digits(*x), &self.ff_digits(*y), *p);
                let r = poly::fp_rem(&prod, modulus, *p);
                RingElement::Residue(self.ff_encode(&r))
            }
            (RingKind::Rationals, RingElement::Poly(x), RingElement::Poly(y)) => {
                RingElement::Poly(vec![&x[0] * &y[0]])
            }
            (RingKind::Cyclotomic { .. }, RingElement::Poly(x), RingElement::Poly(y)) => {
                let mut out = vec![BigRational::zero(); x.len() + y.len() - 1];
                for (i, u) in x.iter().enumerate() {
                    if u.is_zero() {
                        continue;
                    }
                    for (j, v) in y.iter().enumerate() {
                        if !v.is_zero() {
                            out[i + j] += u * v;
                        }
                    }
                }
                self.reduce_poly(&mut out);
                RingElement::Poly(out)
            }
            _ => panic!("element does not belong to {self}"),
        }
    }

    pub fn pow(&self, a: &RingElement, mut e: u64) -> RingElement {
        let mut result = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn is_zero(&self, a: &RingElement) -> bool {
        match a {
            RingElement::Residue(v) => *v == 0,
            RingElement::Poly(v) => v.iter().all(|c| c.is_zero()),
        }
    }

    pub fn is_one(&self, a: &RingElement) -> bool {
        *a == self.one()
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        match (&self.kind, a) {
            (RingKind::ModN { n }, RingElement::Residue(x)) => gcd(*x, *n) == 1,
            _ => !self.is_zero(a),
        }
    }

    pub fn inverse(&self, a: &RingElement) -> Result<RingElement> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        Ok(match (&self.kind, a) {
            (RingKind::ModN { n }, RingElement::Residue(x)) => RingElement::Residue(mod_inv(*x, *n).unwrap()),
            (RingKind::FiniteField { p, k, modulus }, RingElement::Residue(x)) => {
                if *k == 1 {
                    RingElement::Residue(mod_inv(*x, *p).unwrap())
                } else {
                    let (g, s) = poly::fp_ext_gcd(&self.ff_digits(*x), modulus, *p);
                    debug_assert_eq!(g, vec![1]);
                    let s = poly::fp_rem(&s, modulus, *p);
                    RingElement::Residue(self.ff_encode(&s))
                }
            }
            (RingKind::Rationals, RingElement::Poly(x)) => RingElement::Poly(vec![x[0].recip()]),
            (RingKind::Cyclotomic { phi, .. }, RingElement::Poly(x)) => {
                let m = poly::int_poly_to_q(phi);
                let mut inv = poly::q_inverse_mod(x, &m).ok_or(Error::NotAUnit)?;
                inv.resize(self.degree(), BigRational::zero());
                RingElement::Poly(inv)
            }
            _ => panic!("element does not belong to {self}"),
        })
    }

    /// `2^-1`, which exists in every constructible ring.
    pub fn two_inverse(&self) -> RingElement {
        self.inverse(&self.from_int(2)).expect("2 is a unit")
    }

    /// Membership check for elements that crossed an API boundary.
    pub fn contains(&self, a: &RingElement) -> bool {
        match (&self.kind, a) {
            (RingKind::ModN { n }, RingElement::Residue(x)) => x < n,
            (RingKind::FiniteField { .. }, RingElement::Residue(x)) => *x < self.size().unwrap(),
            (RingKind::Rationals | RingKind::Cyclotomic { .. }, RingElement::Poly(v)) => v.len() == self.degree(),
            _ => false,
        }
    }

    /// Table of square roots (smallest root, by index) for finite rings of
    /// moderate size.
    pub(crate) fn square_roots(&self) -> Option<&Arc<Vec<Option<u64>>>> {
        self.square_roots
            .get_or_init(|| {
                let q = self.size()?;
                if q > squares::SQUARE_TABLE_LIMIT {
                    return None;
                }
                let mut roots = vec![None; q as usize];
                for x in 0..q {
                    let sq = self.index_of(&self.mul(&RingElement::Residue(x), &RingElement::Residue(x)));
                    if roots[sq as usize].is_none() {
                        roots[sq as usize] = Some(x);
                    }
                }
                Some(Arc::new(roots))
            })
            .as_ref()
    }

    /// The field obtained by adjoining a primitive `d`-th root of unity, with
    /// that root exposed through [`Self::zeta`].
    pub fn extend_with_root(&self, d: u64) -> Result<CoefficientRing> {
        if d == 0 {
            return Err(Error::InvalidParameter("root order must be positive".into()));
        }
        let ch = self.characteristic();
        if ch != 0 && d.is_multiple_of(ch) {
            return Err(Error::CharDivides { characteristic: ch, modulus: d });
        }
        match &self.kind {
            RingKind::ModN { n } => {
                if !is_prime(*n) {
                    return Err(Error::InvalidRing(format!("Z/{n} is not a field")));
                }
                make_ring(&RingSpec::FiniteField(*n, 1))?.extend_with_root(d)
            }
            RingKind::FiniteField { p, k, .. } => {
                let q = p.pow(*k);
                let ord = multiplicative_order(q % d, d).unwrap_or(1).max(1);
                let m = (*k as u64)
                    .checked_mul(ord)
                    .filter(|&m| m <= 62 && (*p as u128).pow(m as u32) <= MAX_FINITE_SIZE as u128)
                    .ok_or_else(|| Error::capacity("splitting field degree", k.saturating_mul(ord as u32) as u64, 62))?;
                let mut field = if m == *k as u64 { self.clone() } else { make_ring(&RingSpec::FiniteField(*p, m as u32))? };
                field.zeta = None;
                let z = field.element_of_exact_order(d);
                field.zeta = Some((z, d));
                Ok(field)
            }
            RingKind::Rationals => {
                if d <= 2 {
                    let mut f = self.clone();
                    f.zeta = Some((self.from_int(if d == 1 { 1 } else { -1 }), d));
                    Ok(f)
                } else {
                    make_ring(&RingSpec::Cyclotomic(d))
                }
            }
            RingKind::Cyclotomic { d: e, .. } => {
                let l = lcm(*e, d);
                let mut f = make_ring(&RingSpec::Cyclotomic(l))?;
                let z = f.pow(&f.generator_x(), l / d);
                f.zeta = Some((z, d));
                Ok(f)
            }
        }
    }

    /// Finite fields only: the first element (by index) of exact
    /// multiplicative order `d`, where `d | q - 1`.
    fn element_of_exact_order(&self, d: u64) -> RingElement {
        let q = self.size().unwrap();
        assert!((q - 1).is_multiple_of(d));
        let primes: Vec<u64> = factorize(d).into_iter().map(|(r, _)| r).collect();
        for c in 1..q {
            let z = self.pow(&RingElement::Residue(c), (q - 1) / d);
            if primes.iter().all(|r| !self.is_one(&self.pow(&z, d / r))) {
                return z;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    /// Multiplicative order of a unit in a finite ring.
    pub fn element_order(&self, a: &RingElement) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        match &self.kind {
            RingKind::ModN { n } => multiplicative_order(self.index_of(a), *n),
            RingKind::FiniteField { .. } => {
                let mut ord = self.size().unwrap() - 1;
                for (r, _) in factorize(ord) {
                    while ord.is_multiple_of(r) && self.is_one(&self.pow(a, ord / r)) {
                        ord /= r;
                    }
                }
                Some(ord)
            }
            _ => None,
        }
    }

    pub fn format_element(&self, a: &RingElement) -> String {
        format::format_element(self, a)
    }

    pub fn parse_element(&self, s: &str) -> Result<RingElement> {
        format::parse_element(self, s)
    }

    /// Rational coefficients of a characteristic-zero element.
    pub fn rational_coords<'a>(&self, a: &'a RingElement) -> &'a [BigRational] {
        match a {
            RingElement::Poly(v) => v,
            RingElement::Residue(_) => panic!("rational_coords on a finite ring"),
        }
    }

    /// Whether an element of `Q`/`Q(zeta)` is a non-negative rational (used
    /// for sanity checks only).
    pub fn is_nonnegative_rational(&self, a: &RingElement) -> bool {
        match a {
            RingElement::Poly(v) => v.iter().skip(1).all(|c| c.is_zero()) && !v[0].is_negative(),
            _ => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring(s: &str) -> CoefficientRing {
        make_ring(&RingSpec::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn spec_parsing_roundtrip() {
        for s in ["Z/9", "F3", "F3^2", "Q", "Q(zeta7)"] {
            assert_eq!(RingSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(RingSpec::parse("R").is_err());
        assert!(RingSpec::parse("Z/").is_err());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(make_ring(&RingSpec::ModN(4)), Err(Error::InvalidRing(_))));
        assert!(make_ring(&RingSpec::FiniteField(2, 1)).is_err());
        assert!(make_ring(&RingSpec::FiniteField(9, 1)).is_err());
        assert!(make_ring(&RingSpec::Cyclotomic(0)).is_err());
        assert!(matches!(make_ring(&RingSpec::FiniteField(3, 60)), Err(Error::Capacity { .. })));
    }

    #[test]
    fn z9_two_inverse_is_five() {
        let r = ring("Z/9");
        assert_eq!(r.two_inverse(), RingElement::Residue(5));
        assert!(!r.is_unit(&r.from_int(3)));
        assert_eq!(r.inverse(&r.from_int(3)), Err(Error::NotAUnit));
    }

    #[test]
    fn f9_is_a_field_of_order_nine() {
        let r = ring("F3^2");
        assert_eq!(r.size(), Some(9));
        for a in r.elements().skip(1) {
            let inv = r.inverse(&a).unwrap();
            assert!(r.is_one(&r.mul(&a, &inv)));
        }
        // the generator t satisfies t^2 = -1 (modulus x^2 + 1)
        let t = r.generator_x();
        assert_eq!(r.mul(&t, &t), r.from_int(-1));
        assert_eq!(r.element_order(&t), Some(4));
    }

    #[test]
    fn f5_inverse_of_two() {
        let r = ring("F5");
        assert_eq!(r.inverse(&r.from_int(2)).unwrap(), r.from_int(3));
    }

    #[test]
    fn zeta7_inverse_is_zeta7_to_the_sixth() {
        let r = ring("Q(zeta7)");
        assert_eq!(r.degree(), 6);
        let z = r.generator_x();
        let inv = r.inverse(&z).unwrap();
        assert_eq!(inv, r.pow(&z, 6));
        assert!(r.is_one(&r.pow(&z, 7)));
        assert!(!r.is_one(&r.pow(&z, 1)));
    }

    #[test]
    fn cyclotomic_inverse_of_general_element() {
        let r = ring("Q(zeta12)");
        let z = r.generator_x();
        let a = r.add(&r.add(&z, &r.from_int(3)), &r.mul(&z, &z));
        let inv = r.inverse(&a).unwrap();
        assert!(r.is_one(&r.mul(&a, &inv)));
    }

    #[test]
    fn extend_rationals() {
        let q = ring("Q");
        let f = q.extend_with_root(7).unwrap();
        assert_eq!(f.spec(), RingSpec::Cyclotomic(7));
        assert_eq!(f.degree(), 6);
        let one = q.extend_with_root(1).unwrap();
        assert_eq!(one, q);
        let two = q.extend_with_root(2).unwrap();
        assert_eq!(two.zeta().unwrap().0, q.from_int(-1));
    }

    #[test]
    fn extend_finite_fields() {
        let f3 = ring("F3");
        let f9 = f3.extend_with_root(8).unwrap();
        assert_eq!(f9.size(), Some(9));
        let (z, d) = f9.zeta().unwrap().clone();
        assert_eq!(d, 8);
        assert_eq!(f9.element_order(&z), Some(8));
        assert_eq!(f3.extend_with_root(1).unwrap().size(), Some(3));
        assert!(matches!(f3.extend_with_root(6), Err(Error::CharDivides { .. })));
        // Z/7 prime is treated as F_7
        let z7 = ring("Z/7").extend_with_root(3).unwrap();
        assert_eq!(z7.size(), Some(7));
        assert!(ring("Z/9").extend_with_root(5).is_err());
    }

    #[test]
    fn extend_cyclotomic() {
        let f = ring("Q(zeta4)").extend_with_root(3).unwrap();
        assert_eq!(f.spec(), RingSpec::Cyclotomic(12));
        let (z, d) = f.zeta().unwrap().clone();
        assert_eq!(d, 3);
        assert!(f.is_one(&f.pow(&z, 3)));
        assert!(!f.is_one(&z));
    }

    #[test]
    fn rational_embedding_in_finite_ring() {
        let r = ring("Z/9");
        let half = r.from_rational(BigRational::new(1.into(), 2.into()));
        assert_eq!(half, RingElement::Residue(5));
    }

    fn ring_specs() -> impl Strategy<Value = RingSpec> {
        prop_oneof![
            prop_oneof![Just(3u64), Just(5), Just(9), Just(15), Just(27), Just(49)].prop_map(RingSpec::ModN),
            prop_oneof![Just((3u64, 1u32)), Just((3, 2)), Just((5, 2)), Just((3, 3)), Just((7, 1))]
                .prop_map(|(p, k)| RingSpec::FiniteField(p, k)),
            Just(RingSpec::Rationals),
            prop_oneof![Just(3u64), Just(4), Just(5), Just(8), Just(12)].prop_map(RingSpec::Cyclotomic),
        ]
    }

    fn element(r: &CoefficientRing, seed: &[i64]) -> RingElement {
        match r.size() {
            Some(q) => RingElement::Residue(seed[0].unsigned_abs() % q),
            None => {
                let mut acc = r.zero();
                let mut pw = r.one();
                let x = r.generator_x();
                for (i, &c) in seed.iter().enumerate().take(r.degree()) {
                    let c = r.from_rational(BigRational::new(c.into(), ((i as i64 % 3) + 1).into()));
                    acc = r.add(&acc, &r.mul(&c, &pw));
                    pw = r.mul(&pw, &x);
                }
                acc
            }
        }
    }

    proptest! {
        #[test]
        fn ring_axioms(spec in ring_specs(),
                       a in prop::collection::vec(-20i64..20, 6),
                       b in prop::collection::vec(-20i64..20, 6),
                       c in prop::collection::vec(-20i64..20, 6)) {
            let r = make_ring(&spec).unwrap();
            let (a, b, c) = (element(&r, &a), element(&r, &b), element(&r, &c));
            prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
            prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
            prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
            prop_assert_eq!(r.add(&a, &r.neg(&a)), r.zero());
            let two = r.from_int(2);
            prop_assert!(r.is_one(&r.mul(&two, &r.two_inverse())));
            if r.is_unit(&a) {
                prop_assert!(r.is_one(&r.mul(&a, &r.inverse(&a).unwrap())));
            }
            let parsed = r.parse_element(&r.format_element(&a)).unwrap();
            prop_assert_eq!(parsed, a);
        }
    }
}
