//! Automorphism groups of small permutation groups, acting on the sorted
//! element list, with the induced maps on a common subgroup and
//! double-coset counts between them.

mod gl2;

pub use gl2::{gl2_z4_basis_check, gl2_z4_elements, Gl2Basis, Matrix2};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::amalgam::Amalgam;
use crate::error::{Error, Result};
use crate::group::{conjugacy_orbit, PermGroup};
use crate::grpid::small_generating_set;
use crate::hom::Homomorphism;
use crate::perm::Permutation;

/// Largest group whose automorphism group is searched.
pub const MAX_BASE_ORDER: u128 = 3000;

/// `Aut(G)` as a permutation group on the positions of `G`'s sorted
/// element list.
#[derive(Clone, Debug)]
pub struct AutGroup {
    base: PermGroup,
    elements: Vec<Permutation>,
    lookup: HashMap<Permutation, u32>,
    action: PermGroup,
}

impl AutGroup {
    pub fn base(&self) -> &PermGroup {
        &self.base
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn action(&self) -> &PermGroup {
        &self.action
    }

    pub fn order(&self) -> u128 {
        self.action.order()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        self.lookup.get(g).copied()
    }

    /// The image of `g` under the automorphism `alpha` (an element of the action).
    pub fn apply(&self, alpha: &Permutation, g: &Permutation) -> Option<Permutation> {
        let i = self.index_of(g)?;
        Some(self.elements[alpha.image(i) as usize].clone())
    }

    /// The automorphism of the base group with the given images of the base
    /// group's generators, as an element of the action.
    pub fn from_generator_images(&self, images: &[Permutation]) -> Result<Permutation> {
        let hom = Homomorphism::new(&self.base, &self.base, images.to_vec())?;
        let mut out = Vec::with_capacity(self.elements.len());
        for e in &self.elements {
            let img = hom.apply(e).expect("element of the source");
            out.push(self.index_of(&img).ok_or(Error::NotSubgroup)?);
        }
        Ok(Permutation::from_images(out)?)
    }

    /// The images of the base group's generators under `alpha`.
    pub fn generator_images(&self, alpha: &Permutation) -> Vec<Permutation> {
        self.base
            .generators()
            .iter()
            .map(|g| self.apply(alpha, g).expect("generator is an element"))
            .collect()
    }

    /// Inner automorphisms `x ↦ g⁻¹ x g`.
    pub fn inner(&self) -> PermGroup {
        let gens: Vec<Permutation> = self
            .base
            .generators()
            .iter()
            .map(|g| {
                let gi = g.inverse();
                let images = self
                    .elements
                    .iter()
                    .map(|x| self.lookup[&(&(&gi * x) * g)])
                    .collect();
                Permutation::from_images(images).expect("conjugation permutes elements")
            })
            .collect();
        PermGroup::new(self.elements.len(), gens).expect("same degree")
    }

    /// Whether `alpha` preserves every product (checks all pairs).
    pub fn is_automorphism(&self, alpha: &Permutation) -> bool {
        let n = self.elements.len();
        alpha.degree() == n
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    let prod = self.lookup[&(&self.elements[i] * &self.elements[j])];
                    let lhs = alpha.image(prod) as usize;
                    let rhs = &self.elements[alpha.image(i as u32) as usize] * &self.elements[alpha.image(j as u32) as usize];
                    self.elements[lhs] == rhs
                })
            })
    }
}

/// Backtracking state: multiplication table and partial-map machinery.
struct Search {
    n: usize,
    mul: Vec<u16>,
    gens: Vec<usize>,
    /// For each prefix length `j`, the elements of `⟨x_1..x_j⟩` in
    /// breadth-first order with (parent, generator) pairs.
    trees: Vec<Vec<(usize, usize, usize)>>,
    /// `(order, class size)` per element.
    signature: Vec<(u64, usize)>,
}

impl Search {
    fn new(g: &PermGroup, elements: &[Permutation], lookup: &HashMap<Permutation, u32>) -> Result<Self> {
        let n = elements.len();
        let mut mul = vec![0u16; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                mul[i * n + j] = lookup[&(a * b)] as u16;
            }
        }
        let gens: Vec<usize> = small_generating_set(g)?
            .iter()
            .map(|x| lookup[x] as usize)
            .collect();
        let identity = lookup[&g.identity()] as usize;
        let mut trees = vec![vec![(identity, usize::MAX, usize::MAX)]];
        for j in 1..=gens.len() {
            let mut seen = vec![false; n];
            seen[identity] = true;
            let mut tree = vec![(identity, usize::MAX, usize::MAX)];
            let mut head = 0;
            while head < tree.len() {
                let e = tree[head].0;
                for (gi, &x) in gens[..j].iter().enumerate() {
                    let f = mul[e * n + x] as usize;
                    if !seen[f] {
                        seen[f] = true;
                        tree.push((f, e, gi));
                    }
                }
                head += 1;
            }
            trees.push(tree);
        }
        let mut signature = vec![(0u64, 0usize); n];
        let mut done = vec![false; n];
        for i in 0..n {
            if done[i] {
                continue;
            }
            let orbit = conjugacy_orbit(&elements[i], g.generators());
            for y in &orbit {
                let k = lookup[y] as usize;
                done[k] = true;
                signature[k] = (elements[i].order(), orbit.len());
            }
        }
        Ok(Search { n, mul, gens, trees, signature })
    }

    fn m(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    /// Extends `x_i ↦ images[i]` over `⟨x_1..x_j⟩` (`j = images.len()`),
    /// returning the map if it is an injective homomorphism there.
    fn extend(&self, images: &[usize]) -> Option<Vec<u32>> {
        let j = images.len();
        let tree = &self.trees[j];
        let mut map = vec![u32::MAX; self.n];
        let mut used = vec![false; self.n];
        let (id, _, _) = tree[0];
        map[id] = id as u32;
        used[id] = true;
        for &(e, parent, gi) in &tree[1..] {
            let v = self.m(map[parent] as usize, images[gi]);
            if used[v] {
                return None;
            }
            used[v] = true;
            map[e] = v as u32;
        }
        for &(e, _, _) in tree {
            for (gi, &x) in self.gens[..j].iter().enumerate() {
                let lhs = map[self.m(e, x)];
                if lhs == u32::MAX || lhs as usize != self.m(map[e] as usize, images[gi]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn candidates(&self, level: usize) -> impl Iterator<Item = usize> + '_ {
        let want = self.signature[self.gens[level]];
        (0..self.n).filter(move |&y| self.signature[y] == want)
    }

    /// Completes `images` (already consistent) to an automorphism.
    fn complete(&self, images: &mut Vec<usize>) -> Option<Vec<u32>> {
        if images.len() == self.gens.len() {
            return self.extend(images);
        }
        let level = images.len();
        for y in self.candidates(level) {
            images.push(y);
            if self.extend(images).is_some() {
                if let Some(map) = self.complete(images) {
                    images.pop();
                    return Some(map);
                }
            }
            images.pop();
        }
        None
    }
}

/// The automorphism group of `g` (`|g| ≤ 3000`).
pub fn automorphism_group(g: &PermGroup) -> Result<AutGroup> {
    if g.order() > MAX_BASE_ORDER {
        return Err(Error::TooLarge { what: "automorphism group search", order: g.order(), limit: MAX_BASE_ORDER });
    }
    let elements = g.elements_checked("automorphism group search")?.to_vec();
    let lookup: HashMap<Permutation, u32> = elements.iter().enumerate().map(|(i, e)| (e.clone(), i as u32)).collect();
    let n = elements.len();
    let search = Search::new(g, &elements, &lookup)?;
    let k = search.gens.len();
    let mut found: Vec<Permutation> = Vec::new();
    let mut expected: u128 = 1;
    // Level i: automorphisms fixing x_1..x_{i-1}; all generators found at
    // deeper levels fix them too.
    for level in (0..k).rev() {
        let x = search.gens[level];
        let mut orbit = crate::group::orbit_of(x as u32, &found, n);
        let cands: Vec<usize> = search.candidates(level).collect();
        for y in cands {
            if orbit.contains(&(y as u32)) {
                continue;
            }
            let mut images: Vec<usize> = search.gens[..level].to_vec();
            images.push(y);
            if search.extend(&images).is_none() {
                continue;
            }
            if let Some(map) = search.complete(&mut images) {
                found.push(Permutation::from_images(map)?);
                orbit = crate::group::orbit_of(x as u32, &found, n);
            }
        }
        expected *= orbit.len() as u128;
    }
    let action = PermGroup::new(n.max(1), found)?;
    debug_assert_eq!(action.order(), expected);
    Ok(AutGroup { base: g.clone(), elements, lookup, action })
}

/// `A* = N_{Aut(A)}(π(B))` restricted to `B` through `π`, as a subgroup of
/// `aut_b`'s action.
pub fn induced_star(aut_a: &AutGroup, pi: &Homomorphism, aut_b: &AutGroup) -> Result<PermGroup> {
    if !pi.target().same_group(aut_a.base()) || !pi.source().same_group(aut_b.base()) {
        return Err(Error::Invalid("embedding does not match the automorphism groups".into()));
    }
    // position in A of π(b), and back
    let mut to_a = Vec::with_capacity(aut_b.elements.len());
    let mut from_a: HashMap<u32, u32> = HashMap::new();
    for (i, b) in aut_b.elements.iter().enumerate() {
        let img = pi.apply(b).ok_or(Error::NotSubgroup)?;
        let pos = aut_a.index_of(&img).ok_or(Error::NotSubgroup)?;
        to_a.push(pos);
        from_a.insert(pos, i as u32);
    }
    let gen_pos: Vec<u32> = aut_b
        .base
        .generators()
        .iter()
        .map(|g| to_a[aut_b.index_of(g).expect("generator") as usize])
        .collect();
    let normalizer = aut_a
        .action
        .filter_subgroup("normalizer in the automorphism group", |phi| {
            gen_pos.iter().all(|&p| from_a.contains_key(&phi.image(p)))
        })?;
    let gens = normalizer
        .generators()
        .iter()
        .map(|phi| {
            let images = to_a.iter().map(|&p| from_a[&phi.image(p)]).collect();
            Permutation::from_images(images).map_err(Error::from)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(aut_b.elements.len(), gens)
}

/// Double cosets `S1 x S2` partitioning `Aut(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCosets {
    /// Least element (in the sorted element order) of each double coset.
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<usize>,
}

impl DoubleCosets {
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

pub fn double_cosets(aut_b: &AutGroup, s1: &PermGroup, s2: &PermGroup) -> Result<DoubleCosets> {
    let all = aut_b.action.elements_checked("double coset enumeration")?;
    if !s1.is_subgroup_of(&aut_b.action) || !s2.is_subgroup_of(&aut_b.action) {
        return Err(Error::NotSubgroup);
    }
    let mut class = vec![usize::MAX; all.len()];
    let mut out = DoubleCosets { representatives: Vec::new(), sizes: Vec::new() };
    for start in 0..all.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let id = out.representatives.len();
        class[start] = id;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let x = &all[queue[head]];
            head += 1;
            let left = s1.generators().iter().map(|s| s * x);
            let right = s2.generators().iter().map(|s| x * s);
            for y in left.chain(right) {
                let k = all.binary_search(&y).expect("closed");
                if class[k] == usize::MAX {
                    class[k] = id;
                    queue.push(k);
                }
            }
        }
        out.representatives.push(all[start].clone());
        out.sizes.push(queue.len());
    }
    Ok(out)
}

pub fn double_coset_count(aut_b: &AutGroup, s1: &PermGroup, s2: &PermGroup) -> Result<usize> {
    Ok(double_cosets(aut_b, s1, s2)?.count())
}

/// The uniqueness certificate for one amalgam type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Uniqueness {
    pub aut_order: u128,
    pub aut_a1_order: u128,
    pub aut_a2_order: u128,
    pub a1_star_order: u128,
    pub a2_star_order: u128,
    pub double_cosets: usize,
    /// Primitivity of the amalgam twisted by each double-coset representative.
    pub class_primitive: Vec<bool>,
    pub primitive_classes: usize,
    /// Whether the representative class of the input amalgam is the primitive one.
    pub input_is_primitive_class: bool,
}

/// Counts amalgam classes of the type of `am` and tests each for primitivity.
pub fn certify_uniqueness(am: &Amalgam) -> Result<Uniqueness> {
    let aut_b = automorphism_group(am.b())?;
    let aut_a1 = automorphism_group(am.a1())?;
    let aut_a2 = automorphism_group(am.a2())?;
    let pi1 = Homomorphism::new(am.b(), am.a1(), am.b().generators().to_vec())?;
    let a1_star = induced_star(&aut_a1, &pi1, &aut_b)?;
    let a2_star = induced_star(&aut_a2, am.pi2(), &aut_b)?;
    let cosets = double_cosets(&aut_b, &a1_star, &a2_star)?;
    let mut class_primitive = Vec::new();
    let mut input_is_primitive_class = false;
    for rep in &cosets.representatives {
        let twisted = am.twisted(&aut_b.generator_images(rep))?;
        let primitive = twisted.is_primitive()?;
        if rep.is_identity() {
            input_is_primitive_class = primitive;
        }
        class_primitive.push(primitive);
    }
    Ok(Uniqueness {
        aut_order: aut_b.order(),
        aut_a1_order: aut_a1.order(),
        aut_a2_order: aut_a2.order(),
        a1_star_order: a1_star.order(),
        a2_star_order: a2_star.order(),
        double_cosets: cosets.count(),
        primitive_classes: class_primitive.iter().filter(|&&p| p).count(),
        class_primitive,
        input_is_primitive_class,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpid::NamedGroup;

    fn named(s: &str) -> PermGroup {
        s.parse::<NamedGroup>().unwrap().realize().unwrap()
    }

    #[test]
    fn small_automorphism_groups() {
        for (name, order) in [
            ("1", 1),
            ("C4", 2),
            ("C5", 4),
            ("2^2", 6),
            ("2^3", 168),
            ("C4 x C2", 8),
            ("D8", 8),
            ("Q8", 24),
            ("S3", 6),
            ("A4", 24),
            ("S4", 24),
            ("Frob20", 20),
            ("A5", 120),
            ("S5", 120),
            ("C4 x C4", 96),
        ] {
            let aut = automorphism_group(&named(name)).unwrap();
            assert_eq!(aut.order(), order, "Aut({name})");
        }
    }

    #[test]
    fn generators_are_automorphisms_and_inner_has_right_order() {
        for name in ["D8", "Q8", "C4 x C2", "S4"] {
            let g = named(name);
            let aut = automorphism_group(&g).unwrap();
            for a in aut.action().generators() {
                assert!(aut.is_automorphism(a));
            }
            let inner = aut.inner();
            assert_eq!(inner.order(), g.order() / g.center().unwrap().order());
            assert!(inner.is_subgroup_of(aut.action()));
        }
    }

    #[test]
    fn round_trip_through_generator_images() {
        let g = named("D8");
        let aut = automorphism_group(&g).unwrap();
        for a in aut.action().generators() {
            let images = aut.generator_images(a);
            assert_eq!(&aut.from_generator_images(&images).unwrap(), a);
        }
    }

    #[test]
    fn whole_group_gives_one_double_coset() {
        let aut = automorphism_group(&named("Q8")).unwrap();
        let all = aut.action().clone();
        let dc = double_cosets(&aut, &all, &all).unwrap();
        assert_eq!(dc.count(), 1);
        let trivial = PermGroup::trivial(8);
        let dc = double_cosets(&aut, &trivial, &trivial).unwrap();
        assert_eq!(dc.count(), 24);
    }

    #[test]
    fn star_of_the_whole_group_is_everything() {
        let g = named("D8");
        let aut = automorphism_group(&g).unwrap();
        let id = Homomorphism::new(&g, &g, g.generators().to_vec()).unwrap();
        assert!(induced_star(&aut, &id, &aut).unwrap().same_group(aut.action()));
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(automorphism_group(&PermGroup::symmetric(7)), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn edge_group_automorphisms() {
        assert_eq!(automorphism_group(&named("S4 star S4")).unwrap().order(), 1152);
        assert_eq!(automorphism_group(&named("A4 x A4")).unwrap().order(), 1152);
    }

    #[test]
    fn double_coset_sizes_match_the_formula() {
        let am = crate::amalgam::find_row("Q3^1").unwrap().amalgam();
        let aut_b = automorphism_group(am.b()).unwrap();
        let aut_a1 = automorphism_group(am.a1()).unwrap();
        let aut_a2 = automorphism_group(am.a2()).unwrap();
        let pi1 = Homomorphism::new(am.b(), am.a1(), am.b().generators().to_vec()).unwrap();
        let s1 = induced_star(&aut_a1, &pi1, &aut_b).unwrap();
        let s2 = induced_star(&aut_a2, am.pi2(), &aut_b).unwrap();
        let dc = double_cosets(&aut_b, &s1, &s2).unwrap();
        assert_eq!(dc.sizes.iter().sum::<usize>() as u128, aut_b.order());
        for (x, &size) in dc.representatives.iter().zip(&dc.sizes) {
            let conj = s2.conjugate(&x.inverse());
            let meet = s1.intersection(&conj).unwrap();
            assert_eq!(size as u128, s1.order() * s2.order() / meet.order());
        }
        let m1 = [Matrix2([[1, 0], [0, 3]]), Matrix2([[1, 1], [0, 1]])];
        let m2 = [Matrix2([[3, 0], [0, 3]]), Matrix2([[0, 1], [1, 0]]), Matrix2([[2, 1], [1, 2]])];
        let basis = gl2_z4_basis_check(&aut_b, &s1, &s2, &m1, &m2).expect("some basis realizes the matrices");
        assert!(basis.matching_bases >= 1);
    }

    #[test]
    fn uniqueness_counts() {
        for (label, classes) in [("Q1^4", 2), ("Q3^1", 3), ("Q2^5", 1), ("Q2^6", 1), ("Q1^2", 1)] {
            let am = crate::amalgam::find_row(label).unwrap().amalgam();
            let u = certify_uniqueness(am).unwrap();
            assert_eq!(u.double_cosets, classes, "{label}");
            assert_eq!(u.primitive_classes, 1, "{label}");
            assert!(u.input_is_primitive_class, "{label}");
        }
    }
}
