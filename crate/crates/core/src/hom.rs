//! Homomorphisms between permutation groups, given by generator images.
//!
//! A map on generators is checked by building its graph
//! `⟨(g_i, h_i)⟩ ≤ G × H` on the disjoint union of the two point sets: the
//! map extends to a homomorphism exactly when that subgroup meets `1 × H`
//! trivially, which is the same as its order being `|G|`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::group::{PermGroup, StabChain};
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Homomorphism {
    source: PermGroup,
    target: PermGroup,
    gen_images: Vec<Permutation>,
    graph: OnceLock<(StabChain, Vec<u32>)>,
}

fn pair(g: &Permutation, h: &Permutation) -> Permutation {
    let n = g.degree();
    let total = n + h.degree();
    let mut images: Vec<u32> = g.images().to_vec();
    images.extend(h.images().iter().map(|&p| p + n as u32));
    debug_assert_eq!(images.len(), total);
    Permutation::from_images(images).expect("disjoint union of bijections")
}

impl Homomorphism {
    /// Checks that `images` (one per generator of `source`) lie in `target`
    /// and define a homomorphism.
    pub fn new(source: &PermGroup, target: &PermGroup, images: Vec<Permutation>) -> Result<Self> {
        let hom = Homomorphism::unchecked(source, target, images)?;
        if !hom.is_well_defined() {
            return Err(Error::Invalid("generator images do not extend to a homomorphism".into()));
        }
        Ok(hom)
    }

    /// Like [`new`](Self::new) without the well-definedness check.
    pub fn unchecked(source: &PermGroup, target: &PermGroup, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Invalid(format!(
                "{} generator images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        for h in &images {
            if h.degree() != target.degree() || !target.contains(h) {
                return Err(Error::NotSubgroup);
            }
        }
        Ok(Homomorphism {
            source: source.clone(),
            target: target.clone(),
            gen_images: images,
            graph: OnceLock::new(),
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn gen_images(&self) -> &[Permutation] {
        &self.gen_images
    }

    fn graph(&self) -> &(StabChain, Vec<u32>) {
        self.graph.get_or_init(|| {
            let gens: Vec<Permutation> = self
                .source
                .generators()
                .iter()
                .zip(&self.gen_images)
                .map(|(g, h)| pair(g, h))
                .collect();
            let base = self.source.chain().base();
            let degree = self.source.degree() + self.target.degree();
            (StabChain::new(degree, &gens, &base), base)
        })
    }

    pub fn is_well_defined(&self) -> bool {
        self.graph().0.order() == self.source.order()
    }

    /// Image of an element of the source.
    pub fn apply(&self, g: &Permutation) -> Option<Permutation> {
        if !self.source.contains(g) {
            return None;
        }
        let (chain, base) = self.graph();
        let targets: Vec<u32> = base.iter().map(|&b| g.image(b)).collect();
        let d = chain.map_base_prefix(&targets)?;
        let n = self.source.degree() as u32;
        let images = d.images()[n as usize..].iter().map(|&p| p - n).collect();
        Some(Permutation::from_images_unchecked(images))
    }

    pub fn image_group(&self) -> PermGroup {
        PermGroup::new(self.target.degree(), self.gen_images.clone()).expect("same degree")
    }

    pub fn image_of(&self, sub: &PermGroup) -> Result<PermGroup> {
        let gens = sub
            .generators()
            .iter()
            .map(|g| self.apply(g).ok_or(Error::NotSubgroup))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::new(self.target.degree(), gens)
    }

    /// `{g ∈ source : φ(g) ∈ sub}`.
    pub fn preimage(&self, sub: &PermGroup) -> Result<PermGroup> {
        self.source.filter_subgroup("preimage", |g| {
            self.apply(g).map(|h| sub.contains(&h)).unwrap_or(false)
        })
    }

    pub fn is_injective(&self) -> bool {
        self.is_well_defined() && self.image_group().order() == self.source.order()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Homomorphism) -> Result<Homomorphism> {
        let images = self
            .gen_images
            .iter()
            .map(|h| next.apply(h).ok_or(Error::NotSubgroup))
            .collect::<Result<Vec<_>>>()?;
        Homomorphism::unchecked(&self.source, &next.target, images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_map_is_a_homomorphism() {
        let s4 = PermGroup::symmetric(4);
        let c2 = PermGroup::cyclic(2);
        let t = Permutation::parse_cycles("(1,2)", 2).unwrap();
        let sign = Homomorphism::new(&s4, &c2, vec![t.clone(), t.clone()]).unwrap();
        assert!(!sign.is_injective());
        let g = Permutation::parse_cycles("(1,2,3)", 4).unwrap();
        assert!(sign.apply(&g).unwrap().is_identity());
        let h = Permutation::parse_cycles("(1,4)", 4).unwrap();
        assert_eq!(sign.apply(&h).unwrap(), t);
        let a4 = sign.preimage(&PermGroup::trivial(2)).unwrap();
        assert_eq!(a4.order(), 12);
    }

    #[test]
    fn bad_images_rejected() {
        let c4 = PermGroup::cyclic(4);
        let c2 = PermGroup::cyclic(2);
        let c3 = PermGroup::cyclic(3);
        let x = c3.generators()[0].clone();
        assert!(Homomorphism::new(&c4, &c3, vec![x]).is_err());
        let t = c2.generators()[0].clone();
        assert!(Homomorphism::new(&c4, &c2, vec![t]).is_ok());
    }
}
