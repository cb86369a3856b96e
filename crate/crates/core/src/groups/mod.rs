//! Finite groups as explicit multiplication tables.
//!
//! Every group in this crate is small enough (order at most a few thousand)
//! that the full Cayley table is the most convenient representation: group
//! rings, involutions and the brute-force checkers all index directly into it.

mod involution;
mod slc;

pub use involution::{canonical_involution, classical_involution, InvolutionMap};
pub use slc::{build_slc, build_slc_capped, PresentationType, Presentation, SLCStructure};

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on group orders accepted by the constructors.
pub const DEFAULT_MAX_ORDER: usize = 4096;

/// Associativity is verified eagerly (it costs `order^3`) up to this order.
pub const EAGER_ASSOCIATIVITY_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<usize>,
    identity: usize,
    names: Vec<String>,
    generators: BTreeMap<String, usize>,
    name_index: HashMap<String, usize>,
}

impl FiniteGroup {
    /// Builds a group from a row-major Cayley table, checking closure,
    /// identity and inverses. Associativity is checked when the order is at
    /// most [`EAGER_ASSOCIATIVITY_LIMIT`]; call [`FiniteGroup::check_associative`]
    /// for larger groups.
    pub fn from_table(
        table: Vec<u32>,
        names: Vec<String>,
        generators: BTreeMap<String, usize>,
    ) -> Result<Self> {
        let order = names.len();
        if order == 0 || table.len() != order * order {
            return Err(Error::InvalidParameter(format!(
                "table of length {} does not match {} element names",
                table.len(),
                order
            )));
        }
        if table.iter().any(|&v| v as usize >= order) {
            return Err(Error::InvalidParameter("table entry out of range".into()));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e * order + g] as usize == g && table[g * order + e] as usize == g))
            .ok_or_else(|| Error::InvalidParameter("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for g in 0..order {
            let inv = (0..order)
                .find(|&h| table[g * order + h] as usize == identity && table[h * order + g] as usize == identity)
                .ok_or_else(|| Error::InvalidParameter(format!("element {g} has no inverse")))?;
            inverse[g] = inv;
        }
        let mut name_index = HashMap::with_capacity(order);
        for (i, n) in names.iter().enumerate() {
            if name_index.insert(n.clone(), i).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate element name {n:?}")));
            }
        }
        let group = FiniteGroup { order, table, inverse, identity, names, generators, name_index };
        if order <= EAGER_ASSOCIATIVITY_LIMIT {
            group.check_associative()?;
        }
        Ok(group)
    }

    pub fn check_associative(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidParameter(format!(
                            "table is not associative at ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverses(&self) -> &[usize] {
        &self.inverse
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.name_index.get(name).copied()
    }

    pub fn generators(&self) -> &BTreeMap<String, usize> {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<usize> {
        self.generators.get(name).copied()
    }

    pub fn pow(&self, g: usize, e: u64) -> usize {
        let mut result = self.identity;
        for _ in 0..e {
            result = self.mul(result, g);
        }
        result
    }

    pub fn element_order(&self, g: usize) -> u64 {
        let mut k = 1;
        let mut x = g;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<u64> {
        (0..self.order).map(|g| self.element_order(g)).collect()
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders().into_iter().fold(1, crate::numtheory::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `g^-1 h^-1 g h`
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        let gi = self.inv(g);
        let hi = self.inv(h);
        self.mul(self.mul(gi, hi), self.mul(g, h))
    }

    pub(crate) fn rename_generators(&mut self, suffix: &str) {
        let renamed: BTreeMap<String, usize> =
            self.generators.iter().map(|(k, &v)| (format!("{k}{suffix}"), v)).collect();
        self.generators = renamed;
        for n in self.names.iter_mut() {
            *n = suffix_tokens(n, suffix);
        }
        self.name_index = self.names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
    }
}

fn suffix_tokens(name: &str, suffix: &str) -> String {
    if name == "1" {
        return name.to_string();
    }
    name.split('*')
        .map(|tok| match tok.split_once('^') {
            Some((base, exp)) => format!("{base}{suffix}^{exp}"),
            None => format!("{tok}{suffix}"),
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub(crate) fn join_tokens(tokens: &[String]) -> String {
    if tokens.is_empty() {
        "1".to_string()
    } else {
        tokens.join("*")
    }
}

pub(crate) fn power_token(base: &str, e: u64) -> Option<String> {
    match e {
        0 => None,
        1 => Some(base.to_string()),
        _ => Some(format!("{base}^{e}")),
    }
}

/// A subgroup given by its sorted member indices inside `parent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

impl Subgroup {
    /// Validates closure and inverses.
    pub fn new(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let sub = Subgroup { parent, members };
        if !sub.contains(sub.parent.identity()) {
            return Err(Error::InvalidParameter("subgroup misses the identity".into()));
        }
        for &a in &sub.members {
            if !sub.contains(sub.parent.inv(a)) {
                return Err(Error::InvalidParameter("subgroup not closed under inverses".into()));
            }
            for &b in &sub.members {
                if !sub.contains(sub.parent.mul(a, b)) {
                    return Err(Error::InvalidParameter("subgroup not closed under products".into()));
                }
            }
        }
        Ok(sub)
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }
}

/// Direct product of cyclic groups of the given orders.
pub fn build_abelian(invariant_factors: &[u64]) -> Result<FiniteGroup> {
    build_abelian_capped(invariant_factors, DEFAULT_MAX_ORDER)
}

pub fn build_abelian_capped(invariant_factors: &[u64], max_order: usize) -> Result<FiniteGroup> {
    if invariant_factors.contains(&0) {
        return Err(Error::InvalidParameter("cyclic factor of order 0".into()));
    }
    let order = checked_product(invariant_factors, max_order, "abelian group")?;
    let digits: Vec<Vec<u64>> = (0..order).map(|g| mixed_radix(g as u64, invariant_factors)).collect();
    let mut table = Vec::with_capacity(order * order);
    for a in &digits {
        for b in &digits {
            let sum: Vec<u64> = a.iter().zip(b).zip(invariant_factors).map(|((x, y), m)| (x + y) % m).collect();
            table.push(from_mixed_radix(&sum, invariant_factors) as u32);
        }
    }
    let names = digits
        .iter()
        .map(|d| {
            let toks: Vec<String> = d
                .iter()
                .enumerate()
                .filter_map(|(i, &e)| power_token(&format!("c{}", i + 1), e))
                .collect();
            join_tokens(&toks)
        })
        .collect();
    let generators = (0..invariant_factors.len())
        .map(|i| {
            let mut d = vec![0u64; invariant_factors.len()];
            d[i] = 1 % invariant_factors[i];
            (format!("c{}", i + 1), from_mixed_radix(&d, invariant_factors) as usize)
        })
        .collect();
    FiniteGroup::from_table(table, names, generators)
}

/// Componentwise product; the element `(g, h)` has index `g * |H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_capped(g, h, DEFAULT_MAX_ORDER)
}

pub fn direct_product_capped(g: &FiniteGroup, h: &FiniteGroup, max_order: usize) -> Result<FiniteGroup> {
    let order = g
        .order()
        .checked_mul(h.order())
        .filter(|&o| o <= max_order)
        .ok_or_else(|| Error::capacity("direct product", g.order() as u128 * h.order() as u128, max_order))?;
    let mut h = h.clone();
    let clash = h.generators.keys().any(|k| g.generators.contains_key(k))
        || h.names.iter().any(|n| n != "1" && g.name_index.contains_key(n));
    if clash {
        h.rename_generators("'");
    }
    let (gn, hn) = (g.order(), h.order());
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (ag, ah) = (a / hn, a % hn);
        for b in 0..order {
            let (bg, bh) = (b / hn, b % hn);
            table.push((g.mul(ag, bg) * hn + h.mul(ah, bh)) as u32);
        }
    }
    let mut names = Vec::with_capacity(order);
    for a in 0..gn {
        for b in 0..hn {
            let toks: Vec<String> = [g.name(a), h.name(b)]
                .iter()
                .filter(|n| **n != "1")
                .map(|n| n.to_string())
                .collect();
            names.push(join_tokens(&toks));
        }
    }
    let mut generators = BTreeMap::new();
    for (k, &v) in g.generators() {
        generators.insert(k.clone(), v * hn + h.identity());
    }
    for (k, &v) in h.generators() {
        generators.insert(k.clone(), g.identity() * hn + v);
    }
    FiniteGroup::from_table(table, names, generators)
}

pub fn center(group: &Arc<FiniteGroup>) -> Subgroup {
    let n = group.order();
    let members = (0..n).filter(|&z| (0..n).all(|g| group.mul(z, g) == group.mul(g, z))).collect();
    Subgroup { parent: Arc::clone(group), members }
}

/// Subgroup generated by all commutators `g^-1 h^-1 g h`.
pub fn commutator_subgroup(group: &Arc<FiniteGroup>) -> Subgroup {
    let n = group.order();
    let mut in_set = vec![false; n];
    let mut members = vec![group.identity()];
    in_set[group.identity()] = true;
    for g in 0..n {
        for h in 0..n {
            let c = group.commutator(g, h);
            if !in_set[c] {
                in_set[c] = true;
                members.push(c);
            }
        }
    }
    // close under products
    let mut i = 0;
    while i < members.len() {
        let a = members[i];
        let mut j = 0;
        while j < members.len() {
            let p = group.mul(a, members[j]);
            if !in_set[p] {
                in_set[p] = true;
                members.push(p);
            }
            j += 1;
        }
        i += 1;
    }
    members.sort_unstable();
    Subgroup { parent: Arc::clone(group), members }
}

/// True iff `G/Z(G)` is the Klein four-group.
pub fn is_slc(group: &Arc<FiniteGroup>) -> bool {
    let z = center(group);
    if z.order() * 4 != group.order() {
        return false;
    }
    (0..group.order()).all(|g| z.contains(group.mul(g, g)))
}

pub(crate) fn mixed_radix(mut v: u64, radices: &[u64]) -> Vec<u64> {
    radices
        .iter()
        .map(|&r| {
            let d = v % r;
            v /= r;
            d
        })
        .collect()
}

pub(crate) fn from_mixed_radix(digits: &[u64], radices: &[u64]) -> u64 {
    digits.iter().zip(radices).rev().fold(0, |acc, (&d, &r)| acc * r + d)
}

fn checked_product(factors: &[u64], limit: usize, what: &str) -> Result<usize> {
    let mut acc: u128 = 1;
    for &f in factors {
        acc = acc.saturating_mul(f as u128);
    }
    if acc > limit as u128 {
        return Err(Error::capacity(what, acc, limit));
    }
    Ok(acc as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
        Arc::new(g)
    }

    /// S3 as permutations of {0,1,2}.
    fn symmetric3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> =
            vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap() as u32;
        let mut table = Vec::new();
        for a in &perms {
            for b in &perms {
                table.push(idx([a[b[0]], a[b[1]], a[b[2]]]));
            }
        }
        let names = (0..6).map(|i| format!("p{i}")).collect();
        FiniteGroup::from_table(table, names, BTreeMap::new()).unwrap()
    }

    #[test]
    fn cyclic_and_klein() {
        let c2 = build_abelian(&[2]).unwrap();
        assert_eq!(c2.order(), 2);
        let v4 = build_abelian(&[2, 2]).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.exponent(), 2);
        let c7 = build_abelian(&[7]).unwrap();
        let g = c7.generator("c1").unwrap();
        assert_eq!(c7.name(c7.pow(g, 3)), "c1^3");
        let order7 = (0..7).filter(|&x| x != c7.identity() && c7.pow(x, 7) == c7.identity()).count();
        assert_eq!(order7, 6);
    }

    #[test]
    fn trivial_group_and_budget() {
        let t = build_abelian(&[]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.name(0), "1");
        assert!(matches!(build_abelian(&[64, 128]), Err(Error::Capacity { .. })));
        assert!(build_abelian_capped(&[64, 64], 4096).is_ok());
    }

    #[test]
    fn products() {
        let c2 = build_abelian(&[2]).unwrap();
        let v = direct_product(&c2, &c2).unwrap();
        assert_eq!(v.order(), 4);
        assert_eq!(v.exponent(), 2);
        assert!(v.index_of("c1*c1'").is_some());

        let trivial = build_abelian(&[]).unwrap();
        let c6 = build_abelian(&[6]).unwrap();
        let same = direct_product(&c6, &trivial).unwrap();
        assert_eq!(same.order(), 6);
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(same.mul(a, b), c6.mul(a, b));
            }
        }
    }

    #[test]
    fn s3_is_not_slc() {
        let s3 = arc(symmetric3());
        assert_eq!(center(&s3).order(), 1);
        assert!(!is_slc(&s3));
        assert_eq!(commutator_subgroup(&s3).order(), 3);
    }

    #[test]
    fn abelian_groups_are_their_own_center() {
        let a = arc(build_abelian(&[2, 6]).unwrap());
        assert_eq!(center(&a).order(), 12);
        assert_eq!(commutator_subgroup(&a).order(), 1);
        let c4 = arc(build_abelian(&[4]).unwrap());
        assert!(!is_slc(&c4));
    }

    #[test]
    fn rejects_non_associative_table() {
        // a loop of order 5 that is not a group
        let t: Vec<u32> = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        let names = (0..5).map(|i| format!("e{i}")).collect();
        assert!(FiniteGroup::from_table(t, names, BTreeMap::new()).is_err());
    }
}
