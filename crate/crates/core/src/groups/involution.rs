use std::sync::Arc;

use super::{FiniteGroup, SLCStructure};
use crate::error::{Error, Result};

/// An antiautomorphism of order at most two, stored as an index permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionMap {
    group: Arc<FiniteGroup>,
    image: Vec<usize>,
}

impl InvolutionMap {
    /// Checks `(gh)* = h* g*` and `(g*)* = g` exhaustively.
    pub fn new(group: Arc<FiniteGroup>, image: Vec<usize>) -> Result<Self> {
        let n = group.order();
        if image.len() != n || image.iter().any(|&i| i >= n) {
            return Err(Error::InvalidParameter("involution image has the wrong shape".into()));
        }
        for g in 0..n {
            if image[image[g]] != g {
                return Err(Error::InvalidParameter(format!("(g*)* != g at {}", group.name(g))));
            }
        }
        for g in 0..n {
            for h in 0..n {
                if image[group.mul(g, h)] != group.mul(image[h], image[g]) {
                    return Err(Error::InvalidParameter(format!(
                        "(gh)* != h*g* at ({}, {})",
                        group.name(g),
                        group.name(h)
                    )));
                }
            }
        }
        Ok(InvolutionMap { group, image })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    /// The identity map; an involution only on abelian groups.
    pub fn identity(group: Arc<FiniteGroup>) -> Result<Self> {
        let image = (0..group.order()).collect();
        Self::new(group, image)
    }

    /// `(g, h)* = (g*, h*)` on `G x H`, with the index layout of
    /// [`crate::groups::direct_product`].
    pub fn product(&self, other: &InvolutionMap, product: Arc<FiniteGroup>) -> Result<Self> {
        let hn = other.group.order();
        if self.group.order() * hn != product.order() {
            return Err(Error::MismatchedCarriers("product order does not match factors".into()));
        }
        let image = (0..product.order()).map(|g| self.apply(g / hn) * hn + other.apply(g % hn)).collect();
        Self::new(product, image)
    }
}

/// `g* = g` for central `g`, `g* = s g` otherwise.
pub fn canonical_involution(slc: &SLCStructure) -> InvolutionMap {
    let g = slc.group();
    let image = (0..g.order())
        .map(|x| if slc.center().contains(x) { x } else { g.mul(slc.s(), x) })
        .collect();
    InvolutionMap::new(Arc::clone(g), image).expect("canonical involution of an SLC-group is an involution")
}

/// `g* = g^-1`.
pub fn classical_involution(group: &Arc<FiniteGroup>) -> InvolutionMap {
    InvolutionMap { group: Arc::clone(group), image: group.inverses().to_vec() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{build_abelian, build_slc, PresentationType};

    #[test]
    fn q8_canonical_equals_classical() {
        let s = build_slc(PresentationType::D2, 1, None, None, &[]).unwrap();
        let can = canonical_involution(&s);
        let cls = classical_involution(s.group());
        assert_eq!(can, cls);
        let x = s.x();
        assert_eq!(can.apply(x), s.group().mul(s.s(), x));
        assert_eq!(can.apply(x), s.group().inv(x));
    }

    #[test]
    fn d1_canonical_differs_from_classical() {
        let s = build_slc(PresentationType::D1, 1, None, None, &[]).unwrap();
        let can = canonical_involution(&s);
        let cls = classical_involution(s.group());
        assert_ne!(can, cls);
        let x = s.x();
        assert_eq!(s.group().element_order(x), 2);
        assert_ne!(can.apply(x), x);
    }

    #[test]
    fn canonical_on_q8_times_c4() {
        let s = build_slc(PresentationType::D2, 1, None, None, &[4]).unwrap();
        let can = canonical_involution(&s);
        let g = s.group();
        let c = g.generator("c1").unwrap();
        let xc = g.mul(s.x(), c);
        assert_eq!(can.apply(c), c);
        assert_eq!(can.apply(xc), g.mul(s.s(), xc));
        // classical and canonical disagree on c (order 4)
        assert_ne!(classical_involution(g).apply(c), c);
    }

    #[test]
    fn classical_on_elementary_abelian_is_identity() {
        let g = Arc::new(build_abelian(&[2, 2, 2]).unwrap());
        let cls = classical_involution(&g);
        assert!(cls.image().iter().enumerate().all(|(i, &v)| i == v));
        let c3 = Arc::new(build_abelian(&[3]).unwrap());
        let gen = c3.generator("c1").unwrap();
        assert_eq!(classical_involution(&c3).apply(gen), c3.mul(gen, gen));
    }

    #[test]
    fn identity_rejected_on_nonabelian() {
        let s = build_slc(PresentationType::D2, 1, None, None, &[]).unwrap();
        assert!(InvolutionMap::identity(Arc::clone(s.group())).is_err());
    }
}
