//! SLC-groups `D_i x A` built from the five indecomposable presentations.
//!
//! Elements are stored in the normal form `t_j * a^i * s^delta * k` with
//! `t_j` in `{1, x, y, xy}`, `0 <= i < m/2`, `delta` in `{0, 1}` and `k` in the
//! complement `K` of `<a>` inside the center. Dense indices follow the
//! lexicographic order of `(j, i, k, delta)`:
//!
//! ```text
//! index = ((j * m/2 + i) * |K| + k) * 2 + delta
//! ```
//!
//! `a`, `b`, `c` and the abelian factor are central; the only non-trivial
//! commutator is `(x, y) = s = a^{m/2}`, i.e. `yx = xys`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    build_abelian, center, commutator_subgroup, from_mixed_radix, is_slc, join_tokens, mixed_radix,
    power_token, FiniteGroup, Subgroup, DEFAULT_MAX_ORDER,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PresentationType {
    /// `x^2 = y^2 = a^m = 1`
    D1,
    /// `x^2 = y^2 = a, a^m = 1`
    D2,
    /// `x^2 = a^m = b^{m2} = 1, y^2 = b`
    D3,
    /// `x^2 = a, a^m = b^{m2} = 1, y^2 = b`
    D4,
    /// `x^2 = b, y^2 = c, a^m = b^{m2} = c^{m3} = 1`
    D5,
}

impl PresentationType {
    pub fn number(self) -> u8 {
        match self {
            PresentationType::D1 => 1,
            PresentationType::D2 => 2,
            PresentationType::D3 => 3,
            PresentationType::D4 => 4,
            PresentationType::D5 => 5,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        Some(match n {
            1 => PresentationType::D1,
            2 => PresentationType::D2,
            3 => PresentationType::D3,
            4 => PresentationType::D4,
            5 => PresentationType::D5,
            _ => return None,
        })
    }

    fn uses_b(self) -> bool {
        matches!(self, PresentationType::D3 | PresentationType::D4 | PresentationType::D5)
    }

    fn uses_c(self) -> bool {
        self == PresentationType::D5
    }
}

impl fmt::Display for PresentationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}", self.number())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub ptype: PresentationType,
    pub k: u32,
    pub k2: Option<u32>,
    pub k3: Option<u32>,
    pub abelian: Vec<u64>,
}

impl Presentation {
    pub fn m(&self) -> u64 {
        1 << self.k
    }

    /// Whether this is `Q8 x A` (type 2 with `m = 2`).
    pub fn is_q8_times_abelian(&self) -> bool {
        self.ptype == PresentationType::D2 && self.k == 1
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_q8_times_abelian() {
            write!(f, "Q8")?;
        } else {
            write!(f, "{}[k={}", self.ptype, self.k)?;
            if let Some(k2) = self.k2 {
                write!(f, ",k2={k2}")?;
            }
            if let Some(k3) = self.k3 {
                write!(f, ",k3={k3}")?;
            }
            write!(f, "]")?;
        }
        for n in &self.abelian {
            write!(f, "xC{n}")?;
        }
        Ok(())
    }
}

/// An SLC-group together with the data fixed by its presentation: the
/// commutator `s`, the center `<a> x K`, and the transversal `{1, x, y, xy}`.
#[derive(Debug, Clone)]
pub struct SLCStructure {
    group: Arc<FiniteGroup>,
    presentation: Presentation,
    s: usize,
    center: Subgroup,
    transversal: [usize; 4],
    k_subgroup: Subgroup,
    k_elements: Vec<usize>,
    abelian_elements: Vec<usize>,
    half_m: usize,
}

const MAX_EXPONENT: u32 = 12;

pub fn build_slc(
    ptype: PresentationType,
    k: u32,
    k2: Option<u32>,
    k3: Option<u32>,
    abelian: &[u64],
) -> Result<SLCStructure> {
    build_slc_capped(ptype, k, k2, k3, abelian, DEFAULT_MAX_ORDER)
}

pub fn build_slc_capped(
    ptype: PresentationType,
    k: u32,
    k2: Option<u32>,
    k3: Option<u32>,
    abelian: &[u64],
    max_order: usize,
) -> Result<SLCStructure> {
    let check_exp = |name: &str, e: u32| {
        if e == 0 || e > MAX_EXPONENT {
            Err(Error::InvalidParameter(format!("{name} must lie in 1..={MAX_EXPONENT}, got {e}")))
        } else {
            Ok(())
        }
    };
    check_exp("k", k)?;
    match (ptype.uses_b(), k2) {
        (true, Some(e)) => check_exp("k2", e)?,
        (true, None) => return Err(Error::InvalidParameter(format!("{ptype} needs k2"))),
        (false, Some(_)) => return Err(Error::InvalidParameter(format!("{ptype} does not use k2"))),
        (false, None) => {}
    }
    match (ptype.uses_c(), k3) {
        (true, Some(e)) => check_exp("k3", e)?,
        (true, None) => return Err(Error::InvalidParameter(format!("{ptype} needs k3"))),
        (false, Some(_)) => return Err(Error::InvalidParameter(format!("{ptype} does not use k3"))),
        (false, None) => {}
    }
    if abelian.contains(&0) {
        return Err(Error::InvalidParameter("cyclic factor of order 0".into()));
    }
    let presentation = Presentation { ptype, k, k2, k3, abelian: abelian.to_vec() };

    let m = 1u64 << k;
    let half_m = m / 2;
    // K radices: b, c (when present), then the abelian factors
    let mut radices: Vec<u64> = Vec::new();
    if let Some(e) = k2 {
        radices.push(1 << e);
    }
    if let Some(e) = k3 {
        radices.push(1 << e);
    }
    radices.extend_from_slice(abelian);
    let k_order: u128 = radices.iter().map(|&r| r as u128).product();
    let order = 4u128 * m as u128 * k_order;
    if order > max_order as u128 {
        return Err(Error::capacity("SLC group", order, max_order));
    }
    let order = order as usize;
    let k_order = k_order as usize;
    let b_slot = ptype.uses_b().then_some(0usize);
    let c_slot = ptype.uses_c().then_some(1usize);

    let index = |j: u64, i: u64, kidx: u64, delta: u64| -> usize {
        (((j * half_m + i) * k_order as u64 + kidx) * 2 + delta) as usize
    };

    // decoded normal forms: (e1, e2, a exponent in [0, m), K digits)
    let decoded: Vec<(u64, u64, u64, Vec<u64>)> = (0..order as u64)
        .map(|g| {
            let delta = g % 2;
            let rest = g / 2;
            let kidx = rest % k_order as u64;
            let rest = rest / k_order as u64;
            let i = rest % half_m;
            let j = rest / half_m;
            (j & 1, j >> 1, i + delta * half_m, mixed_radix(kidx, &radices))
        })
        .collect();

    let encode = |e1: u64, e2: u64, aexp: u64, kd: &[u64]| -> usize {
        let aexp = aexp % m;
        index(e1 + 2 * e2, aexp % half_m, from_mixed_radix(kd, &radices), aexp / half_m)
    };

    let mut table = Vec::with_capacity(order * order);
    let mut kd = vec![0u64; radices.len()];
    for (g1, g2, ga, gk) in &decoded {
        for (h1, h2, ha, hk) in &decoded {
            let mut e1 = g1 + h1;
            let mut e2 = g2 + h2;
            // y^{g2} x^{h1} = x^{h1} y^{g2} s^{g2 h1}
            let mut aexp = ga + ha + if *g2 == 1 && *h1 == 1 { half_m } else { 0 };
            for (slot, (a, b)) in kd.iter_mut().zip(gk.iter().zip(hk)) {
                *slot = a + b;
            }
            if e1 == 2 {
                e1 = 0;
                match ptype {
                    PresentationType::D1 | PresentationType::D3 => {}
                    PresentationType::D2 | PresentationType::D4 => aexp += 1,
                    PresentationType::D5 => kd[b_slot.unwrap()] += 1,
                }
            }
            if e2 == 2 {
                e2 = 0;
                match ptype {
                    PresentationType::D1 => {}
                    PresentationType::D2 => aexp += 1,
                    PresentationType::D3 | PresentationType::D4 => kd[b_slot.unwrap()] += 1,
                    PresentationType::D5 => kd[c_slot.unwrap()] += 1,
                }
            }
            for (d, r) in kd.iter_mut().zip(&radices) {
                *d %= r;
            }
            table.push(encode(e1, e2, aexp, &kd) as u32);
        }
    }

    let abelian_offset = radices.len() - abelian.len();
    let k_token = |digits: &[u64], tokens: &mut Vec<String>| {
        for (slot, &e) in digits.iter().enumerate() {
            let base = if Some(slot) == b_slot {
                "b".to_string()
            } else if Some(slot) == c_slot {
                "c".to_string()
            } else {
                format!("c{}", slot - abelian_offset + 1)
            };
            tokens.extend(power_token(&base, e));
        }
    };
    let names: Vec<String> = decoded
        .iter()
        .map(|(e1, e2, aexp, kd)| {
            let mut toks = Vec::new();
            if *e1 == 1 {
                toks.push("x".to_string());
            }
            if *e2 == 1 {
                toks.push("y".to_string());
            }
            toks.extend(power_token("a", *aexp));
            k_token(kd, &mut toks);
            join_tokens(&toks)
        })
        .collect();

    let unit_digits = |slot: usize| {
        let mut d = vec![0u64; radices.len()];
        d[slot] = 1 % radices[slot];
        d
    };
    let zero_k = vec![0u64; radices.len()];
    let mut generators = BTreeMap::new();
    generators.insert("x".to_string(), encode(1, 0, 0, &zero_k));
    generators.insert("y".to_string(), encode(0, 1, 0, &zero_k));
    generators.insert("a".to_string(), encode(0, 0, 1, &zero_k));
    generators.insert("s".to_string(), encode(0, 0, half_m, &zero_k));
    if let Some(slot) = b_slot {
        generators.insert("b".to_string(), encode(0, 0, 0, &unit_digits(slot)));
    }
    if let Some(slot) = c_slot {
        generators.insert("c".to_string(), encode(0, 0, 0, &unit_digits(slot)));
    }
    for i in 0..abelian.len() {
        generators.insert(format!("c{}", i + 1), encode(0, 0, 0, &unit_digits(abelian_offset + i)));
    }

    let group = Arc::new(FiniteGroup::from_table(table, names, generators)?);
    let s = index(0, 0, 0, 1);
    let transversal = [0, 1, 2, 3].map(|j| index(j, 0, 0, 0));
    let k_elements: Vec<usize> = (0..k_order as u64).map(|kidx| index(0, 0, kidx, 0)).collect();
    let k_subgroup = Subgroup::new(Arc::clone(&group), k_elements.clone())?;
    let abelian_elements: Vec<usize> = k_elements
        .iter()
        .enumerate()
        .filter(|(kidx, _)| {
            let d = mixed_radix(*kidx as u64, &radices);
            d[..abelian_offset].iter().all(|&x| x == 0)
        })
        .map(|(_, &g)| g)
        .collect();
    let center = center(&group);

    let structure = SLCStructure {
        group,
        presentation,
        s,
        center,
        transversal,
        k_subgroup,
        k_elements,
        abelian_elements,
        half_m: half_m as usize,
    };
    structure.validate()?;
    Ok(structure)
}

impl SLCStructure {
    /// Re-checks every structural invariant: `G' = {1, s}`, `G/Z` Klein,
    /// the transversal covers `G` exactly once over `Z`, and `Z = <a> x K`.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let fail = |msg: &str| Err(Error::InvalidParameter(format!("{}: {msg}", self.presentation)));
        if self.s == g.identity() || g.mul(self.s, self.s) != g.identity() {
            return fail("s must have order 2");
        }
        if !is_slc(g) {
            return fail("G/Z(G) is not the Klein group");
        }
        let comm = commutator_subgroup(g);
        let mut expected = vec![g.identity(), self.s];
        expected.sort_unstable();
        if comm.members() != expected.as_slice() {
            return fail("commutator subgroup differs from {1, s}");
        }
        let mut seen = vec![false; g.order()];
        for &t in &self.transversal {
            for &z in self.center.members() {
                let p = g.mul(t, z);
                if seen[p] {
                    return fail("transversal covers an element twice");
                }
                seen[p] = true;
            }
        }
        if !seen.iter().all(|&b| b) {
            return fail("transversal does not cover G");
        }
        let a = self.a();
        let a_order = g.element_order(a) as usize;
        if a_order * self.k_subgroup.order() != self.center.order() {
            return fail("|<a>| |K| != |Z(G)|");
        }
        let mut x = g.identity();
        for _ in 1..a_order {
            x = g.mul(x, a);
            if self.k_subgroup.contains(x) {
                return fail("<a> meets K non-trivially");
            }
        }
        if !self.k_subgroup.members().iter().all(|&k| self.center.contains(k)) || !self.center.contains(a) {
            return fail("a or K is not central");
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn center(&self) -> &Subgroup {
        &self.center
    }

    pub fn transversal(&self) -> [usize; 4] {
        self.transversal
    }

    pub fn k_subgroup(&self) -> &Subgroup {
        &self.k_subgroup
    }

    /// Elements of `K` in K-index order.
    pub fn k_elements(&self) -> &[usize] {
        &self.k_elements
    }

    /// The abelian factor `A` inside `G`, in its own mixed-radix order.
    pub fn abelian_elements(&self) -> &[usize] {
        &self.abelian_elements
    }

    /// `A` as a standalone group.
    pub fn abelian_factor(&self) -> Result<FiniteGroup> {
        build_abelian(&self.presentation.abelian)
    }

    pub fn m(&self) -> usize {
        2 * self.half_m
    }

    pub fn half_m(&self) -> usize {
        self.half_m
    }

    pub fn x(&self) -> usize {
        self.transversal[1]
    }

    pub fn y(&self) -> usize {
        self.transversal[2]
    }

    pub fn xy(&self) -> usize {
        self.transversal[3]
    }

    pub fn a(&self) -> usize {
        self.group.generator("a").expect("a is always present")
    }

    pub fn b(&self) -> Option<usize> {
        self.group.generator("b")
    }

    pub fn c(&self) -> Option<usize> {
        self.group.generator("c")
    }

    /// Index of `t_j * a^i * k * s^delta` (with `j` in `0..4`).
    pub fn index(&self, j: usize, i: usize, kidx: usize, delta: usize) -> usize {
        ((j * self.half_m + i) * self.k_elements.len() + kidx) * 2 + delta
    }

    /// Inverse of [`SLCStructure::index`].
    pub fn coordinates(&self, g: usize) -> (usize, usize, usize, usize) {
        let delta = g % 2;
        let rest = g / 2;
        let kidx = rest % self.k_elements.len();
        let rest = rest / self.k_elements.len();
        (rest / self.half_m, rest % self.half_m, kidx, delta)
    }
}
