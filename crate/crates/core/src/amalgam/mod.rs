//! Amalgams `(A1, A2, B, π1, π2)` with `B` a literal subgroup of `A1`
//! (so `π1` is inclusion) and `π2` given by generator images.

pub mod catalog;
mod file;

pub use catalog::{catalog, example_variants, find_row, CatalogRow};
pub use file::{parse_amalgam, write_amalgam};

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::Homomorphism;
use crate::perm::Permutation;

#[derive(Clone, Debug)]
pub struct Amalgam {
    a1: PermGroup,
    a2: PermGroup,
    b: PermGroup,
    pi2: Homomorphism,
}

/// Largest subgroup of `B` whose images are normal in both `A1` and `A2`.
#[derive(Clone, Debug)]
pub struct CommonNormal {
    pub subgroup: PermGroup,
    /// Alternations of the two core steps until the subgroup stabilized.
    pub rounds: usize,
}

impl Amalgam {
    /// `b` must be a subgroup of `a1`; `pi2_images` are the images of
    /// `b`'s generators in `a2` and must define an injective homomorphism.
    pub fn new(a1: PermGroup, a2: PermGroup, b: PermGroup, pi2_images: Vec<Permutation>) -> Result<Self> {
        if !b.is_subgroup_of(&a1) {
            return Err(Error::NotSubgroup);
        }
        let pi2 = Homomorphism::new(&b, &a2, pi2_images)?;
        if !pi2.is_injective() {
            return Err(Error::Invalid("second embedding is not injective".into()));
        }
        Ok(Amalgam { a1, a2, b, pi2 })
    }

    pub fn a1(&self) -> &PermGroup {
        &self.a1
    }

    pub fn a2(&self) -> &PermGroup {
        &self.a2
    }

    pub fn b(&self) -> &PermGroup {
        &self.b
    }

    pub fn pi2(&self) -> &Homomorphism {
        &self.pi2
    }

    /// `π2(B)` as a subgroup of `A2`.
    pub fn b_in_a2(&self) -> PermGroup {
        self.pi2.image_group()
    }

    pub fn degree(&self) -> (u128, u128) {
        let b = self.b.order();
        (self.a1.order() / b, self.a2.order() / b)
    }

    /// Alternates `K ← core_{A1}(K)` and `K ← π2⁻¹(core_{A2}(π2(K)))`
    /// starting from `K = B`.
    pub fn max_common_normal(&self) -> Result<CommonNormal> {
        let mut k = self.b.clone();
        let mut rounds = 0;
        loop {
            rounds += 1;
            let k1 = self.a1.core(&k)?;
            let k2 = if k1.is_trivial() {
                k1
            } else {
                let image = self.pi2.image_of(&k1)?;
                let c = self.a2.core(&image)?;
                if c.order() == image.order() {
                    k1
                } else {
                    self.pi2.preimage(&c)?
                }
            };
            if k2.order() == k.order() {
                return Ok(CommonNormal {
                    subgroup: k2,
                    rounds,
                });
            }
            k = k2;
        }
    }

    pub fn is_primitive(&self) -> Result<bool> {
        Ok(self.max_common_normal()?.subgroup.order() == 1)
    }

    /// Primitivity by listing every subgroup of `B` (needs `|B| ≤ 64`) and
    /// testing each for normality in both vertex groups.
    pub fn primitive_brute_oracle(&self) -> Result<bool> {
        let elements = self.b.elements().filter(|e| e.len() <= 64).ok_or(Error::TooLarge {
            what: "subgroup enumeration",
            order: self.b.order(),
            limit: 64,
        })?;
        let n = elements.len();
        let index = |g: &Permutation| elements.binary_search(g).ok();
        let mul: Vec<Vec<usize>> = elements
            .iter()
            .map(|x| elements.iter().map(|y| index(&(x * y)).expect("closed")).collect())
            .collect();
        // images under π2 by breadth-first search over words in B's generators
        let mut image: Vec<Option<Permutation>> = vec![None; n];
        let id = index(&self.b.identity()).expect("identity");
        image[id] = Some(self.a2.identity());
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (g, h) in self.b.generators().iter().zip(self.pi2.gen_images()) {
                let y = index(&(&elements[x] * g)).expect("closed");
                if image[y].is_none() {
                    image[y] = Some(image[x].as_ref().unwrap() * h);
                    queue.push(y);
                }
            }
        }
        let image: Vec<Permutation> = image.into_iter().map(|p| p.expect("B is generated")).collect();
        let closure = |mut set: u64| loop {
            let mut next = set;
            for i in (0..n).filter(|i| set >> i & 1 == 1) {
                for j in (0..n).filter(|j| set >> j & 1 == 1) {
                    next |= 1 << mul[i][j];
                }
            }
            if next == set {
                return set;
            }
            set = next;
        };
        let trivial = 1u64 << id;
        let mut subgroups = vec![trivial];
        let mut head = 0;
        while head < subgroups.len() {
            let s = subgroups[head];
            head += 1;
            for x in (0..n).filter(|x| s >> x & 1 == 0) {
                let t = closure(s | 1 << x);
                if !subgroups.contains(&t) {
                    subgroups.push(t);
                }
            }
        }
        let normal_in_a1 = |s: u64| {
            self.a1.generators().iter().all(|a| {
                (0..n)
                    .filter(|i| s >> i & 1 == 1)
                    .all(|i| index(&elements[i].conjugate_by(a)).is_some_and(|j| s >> j & 1 == 1))
            })
        };
        let normal_in_a2 = |s: u64| {
            let members: Vec<&Permutation> = (0..n).filter(|i| s >> i & 1 == 1).map(|i| &image[i]).collect();
            self.a2
                .generators()
                .iter()
                .all(|a| members.iter().all(|x| members.contains(&&x.conjugate_by(a))))
        };
        Ok(!subgroups
            .iter()
            .any(|&s| s != trivial && normal_in_a1(s) && normal_in_a2(s)))
    }

    /// The amalgam with `π2` replaced by `π2 ∘ α` for an automorphism `α`
    /// of `B`, given by the images of `B`'s generators.
    pub fn twisted(&self, alpha_images: &[Permutation]) -> Result<Amalgam> {
        let images = alpha_images
            .iter()
            .map(|x| self.pi2.apply(x).ok_or(Error::NotSubgroup))
            .collect::<Result<Vec<_>>>()?;
        Amalgam::new(self.a1.clone(), self.a2.clone(), self.b.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn equal_groups_have_degree_one() {
        let g = PermGroup::symmetric(3);
        let am = Amalgam::new(g.clone(), g.clone(), g.clone(), g.generators().to_vec()).unwrap();
        assert_eq!(am.degree(), (1, 1));
        assert!(!am.is_primitive().unwrap());
        assert!(!am.primitive_brute_oracle().unwrap());
    }

    #[test]
    fn non_injective_embedding_rejected() {
        let a1 = PermGroup::from_cycles(4, &["(1,2,3,4)"]).unwrap();
        let b = a1.clone();
        let a2 = PermGroup::from_cycles(2, &["(1,2)"]).unwrap();
        assert!(Amalgam::new(a1, a2, b, vec![perm("(1,2)", 2)]).is_err());
    }

    #[test]
    fn dihedral_over_reflection() {
        let a1 = PermGroup::from_cycles(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]).unwrap();
        let b = PermGroup::from_cycles(5, &["(2,5)(3,4)"]).unwrap();
        let a2 = PermGroup::from_cycles(4, &["(1,2)", "(3,4)"]).unwrap();
        let am = Amalgam::new(a1, a2, b, vec![perm("(1,2)", 4)]).unwrap();
        assert_eq!(am.degree(), (5, 2));
        assert!(am.is_primitive().unwrap());
        assert!(am.primitive_brute_oracle().unwrap());
    }
}
