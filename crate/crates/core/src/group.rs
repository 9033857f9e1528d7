//! Permutation groups backed by a deterministic Schreier–Sims stabilizer chain.

use std::collections::{HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::perm::{PermError, Permutation};

/// Groups up to this order may materialize their element list.
pub const ELEMENT_LIMIT: u128 = 100_000;

#[derive(Clone, Debug)]
struct Level {
    base_point: u32,
    /// Indices into `StabChain::strong_gens`; all fix the earlier base points.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// `slot[p]` is the position of `p` in `orbit`, or `u32::MAX`.
    slot: Vec<u32>,
    transversal: Vec<Permutation>,
    inv_transversal: Vec<Permutation>,
    /// Schreier-tree parent: (orbit position, strong generator index).
    parent: Vec<(u32, u32)>,
}

impl Level {
    fn new(base_point: u32, gens: Vec<usize>, degree: usize) -> Self {
        Level {
            base_point,
            gens,
            orbit: Vec::new(),
            slot: vec![u32::MAX; degree],
            transversal: Vec::new(),
            inv_transversal: Vec::new(),
            parent: Vec::new(),
        }
    }

    fn rebuild(&mut self, strong: &[Permutation], degree: usize) {
        self.slot.iter_mut().for_each(|s| *s = u32::MAX);
        self.orbit.clear();
        self.transversal.clear();
        self.inv_transversal.clear();
        self.parent.clear();
        let id = Permutation::identity(degree);
        self.slot[self.base_point as usize] = 0;
        self.orbit.push(self.base_point);
        self.transversal.push(id.clone());
        self.inv_transversal.push(id);
        self.parent.push((u32::MAX, u32::MAX));
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            for &gi in &self.gens {
                let q = strong[gi].image(p);
                if self.slot[q as usize] == u32::MAX {
                    self.slot[q as usize] = self.orbit.len() as u32;
                    self.orbit.push(q);
                    let u = &self.transversal[head] * &strong[gi];
                    self.inv_transversal.push(u.inverse());
                    self.transversal.push(u);
                    self.parent.push((head as u32, gi as u32));
                }
            }
            head += 1;
        }
    }

    #[inline]
    fn position(&self, p: u32) -> Option<usize> {
        let s = self.slot[p as usize];
        (s != u32::MAX).then_some(s as usize)
    }
}

/// Base and strong generating set with full transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    strong_gens: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Schreier–Sims with the base starting at `prefix`; further base points
    /// are the smallest points moved by the element that needs them.
    pub fn new(degree: usize, gens: &[Permutation], prefix: &[u32]) -> Self {
        let mut strong: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<u32> = Vec::new();
        for &b in prefix {
            if !base.contains(&b) {
                base.push(b);
            }
        }
        for g in &strong {
            if base.iter().all(|&b| g.image(b) == b) {
                base.push(g.smallest_moved_point().expect("nontrivial"));
            }
        }
        let mut levels: Vec<Level> = base
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let gens = (0..strong.len())
                    .filter(|&k| base[..i].iter().all(|&c| strong[k].image(c) == c))
                    .collect();
                Level::new(b, gens, degree)
            })
            .collect();
        for level in &mut levels {
            level.rebuild(&strong, degree);
        }

        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut escalate = None;
            'scan: for oi in 0..levels[iu].orbit.len() {
                for gpos in 0..levels[iu].gens.len() {
                    let s = &strong[levels[iu].gens[gpos]];
                    let q = s.image(levels[iu].orbit[oi]);
                    let qi = levels[iu].position(q).expect("orbit closed");
                    let schreier = &(&levels[iu].transversal[oi] * s) * &levels[iu].inv_transversal[qi];
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = sift_levels(&levels, schreier, iu + 1);
                    if !h.is_identity() {
                        escalate = Some((h, j));
                        break 'scan;
                    }
                }
            }
            match escalate {
                None => i -= 1,
                Some((h, j)) => {
                    let idx = strong.len();
                    if j == levels.len() {
                        let b = h.smallest_moved_point().expect("nontrivial");
                        levels.push(Level::new(b, Vec::new(), degree));
                    }
                    strong.push(h);
                    for l in iu + 1..=j {
                        levels[l].gens.push(idx);
                        levels[l].rebuild(&strong, degree);
                    }
                    i = j as isize;
                }
            }
        }
        StabChain {
            degree,
            strong_gens: strong,
            levels,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn basic_orbit(&self, level: usize) -> &[u32] {
        &self.levels[level].orbit
    }

    /// The transversal element of `level` sending its base point to `point`.
    pub fn transversal_element(&self, level: usize, point: u32) -> Option<&Permutation> {
        let l = &self.levels[level];
        l.position(point).map(|pos| &l.transversal[pos])
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong_gens
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Residue after sifting and the index of the first failing level
    /// (`depth()` when every level was passed).
    pub fn sift(&self, g: &Permutation) -> (Permutation, usize) {
        sift_levels(&self.levels, g.clone(), 0)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.sift(g).0.is_identity()
    }

    /// Factorization of `g` as a word in the strong generators (indices into
    /// [`strong_generators`](Self::strong_generators)), applied left to right.
    pub fn factorize(&self, g: &Permutation) -> Option<Vec<usize>> {
        if g.degree() != self.degree {
            return None;
        }
        let mut h = g.clone();
        let mut parts: Vec<Vec<usize>> = Vec::new();
        for level in &self.levels {
            let pos = level.position(h.image(level.base_point))?;
            parts.push(self.tree_word(level, pos));
            h = &h * &level.inv_transversal[pos];
        }
        if !h.is_identity() {
            return None;
        }
        // g = u_{k-1} · … · u_0
        Some(parts.into_iter().rev().flatten().collect())
    }

    fn tree_word(&self, level: &Level, mut pos: usize) -> Vec<usize> {
        let mut word = Vec::new();
        while level.parent[pos].0 != u32::MAX {
            let (up, gi) = level.parent[pos];
            word.push(gi as usize);
            pos = up as usize;
        }
        word.reverse();
        word
    }

    pub fn evaluate_word(&self, word: &[usize]) -> Permutation {
        word.iter().fold(Permutation::identity(self.degree), |acc, &i| {
            &acc * &self.strong_gens[i]
        })
    }

    /// Generators of the pointwise stabilizer of the first `depth` base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        if depth >= self.levels.len() {
            return Vec::new();
        }
        self.levels[depth]
            .gens
            .iter()
            .map(|&i| self.strong_gens[i].clone())
            .collect()
    }

    /// The chain of the stabilizer of the first `depth` base points.
    pub fn suffix(&self, depth: usize) -> StabChain {
        if depth >= self.levels.len() {
            return StabChain {
                degree: self.degree,
                strong_gens: Vec::new(),
                levels: Vec::new(),
            };
        }
        let mut keep: Vec<usize> = self.levels[depth..]
            .iter()
            .flat_map(|l| l.gens.iter().copied())
            .collect();
        keep.sort_unstable();
        keep.dedup();
        let remap = |i: usize| keep.binary_search(&i).expect("kept generator");
        let strong_gens = keep.iter().map(|&i| self.strong_gens[i].clone()).collect();
        let levels = self.levels[depth..]
            .iter()
            .map(|l| {
                let mut l = l.clone();
                l.gens = l.gens.iter().map(|&i| remap(i)).collect();
                l.parent = l
                    .parent
                    .iter()
                    .map(|&(p, g)| if g == u32::MAX { (p, g) } else { (p, remap(g as usize) as u32) })
                    .collect();
                l
            })
            .collect();
        StabChain {
            degree: self.degree,
            strong_gens,
            levels,
        }
    }

    /// An element sending the `i`-th base point to `targets[i]` for every
    /// given target, if one exists.
    pub fn map_base_prefix(&self, targets: &[u32]) -> Option<Permutation> {
        assert!(targets.len() <= self.levels.len());
        let mut acc = Permutation::identity(self.degree);
        // acc = u_{i} · … · u_0 built from the right; track acc⁻¹ images.
        let mut acc_inv = Permutation::identity(self.degree);
        for (level, &t) in self.levels.iter().zip(targets) {
            let want = acc_inv.image(t);
            let pos = level.position(want)?;
            acc = &level.transversal[pos] * &acc;
            acc_inv = &acc_inv * &level.inv_transversal[pos];
        }
        Some(acc)
    }

    /// Calls `f` on every element, in a fixed order.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        let id = Permutation::identity(self.degree);
        if self.levels.is_empty() {
            f(&id);
            return;
        }
        self.walk(self.levels.len() - 1, &id, &mut f);
    }

    fn walk<F: FnMut(&Permutation)>(&self, level: usize, acc: &Permutation, f: &mut F) {
        for u in &self.levels[level].transversal {
            let next = acc * u;
            if level == 0 {
                f(&next);
            } else {
                self.walk(level - 1, &next, f);
            }
        }
    }

    pub fn random_element<R: FnMut(usize) -> usize>(&self, mut pick: R) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let k = pick(level.transversal.len());
            acc = &acc * &level.transversal[k];
        }
        acc
    }
}

fn sift_levels(levels: &[Level], mut g: Permutation, start: usize) -> (Permutation, usize) {
    for (li, level) in levels.iter().enumerate().skip(start) {
        match level.position(g.image(level.base_point)) {
            Some(pos) => g = &g * &level.inv_transversal[pos],
            None => return (g, li),
        }
    }
    (g, levels.len())
}

/// A permutation group given by generators; the stabilizer chain and the
/// element list are computed on first use and then shared read-only.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: OnceLock<Arc<StabChain>>,
    elements: OnceLock<Arc<Vec<Permutation>>>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("gens", &self.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(PermError::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                }
                .into());
            }
        }
        Ok(PermGroup {
            degree,
            gens,
            chain: OnceLock::new(),
            elements: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::new(degree, Vec::new()).expect("no generators")
    }

    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|s| Permutation::parse_cycles(s, degree))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        PermGroup::new(degree, gens)
    }

    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            let cycle: Vec<u32> = (0..n as u32).collect();
            gens.push(Permutation::from_cycles(n, &[cycle]).unwrap());
            gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
        }
        PermGroup::new(n, gens).unwrap()
    }

    pub fn alternating(n: usize) -> Self {
        let gens = (2..n as u32)
            .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
            .collect();
        PermGroup::new(n, gens).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 {
            vec![Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap()]
        } else {
            Vec::new()
        };
        PermGroup::new(n.max(1), gens).unwrap()
    }

    fn with_chain(degree: usize, gens: Vec<Permutation>, chain: StabChain) -> Self {
        let g = PermGroup::new(degree, gens).expect("consistent degrees");
        let _ = g.chain.set(Arc::new(chain));
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    pub fn chain(&self) -> &StabChain {
        self.chain
            .get_or_init(|| Arc::new(StabChain::new(self.degree, &self.gens, &[])))
    }

    /// A fresh chain whose base begins with `prefix`.
    pub fn chain_with_base(&self, prefix: &[u32]) -> StabChain {
        StabChain::new(self.degree, &self.gens, prefix)
    }

    pub fn order(&self) -> u128 {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.gens.iter().all(Permutation::is_identity)
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    /// Membership with a witness word in the strong generators.
    pub fn membership(&self, g: &Permutation) -> Result<Option<Vec<usize>>> {
        if g.degree() != self.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: g.degree(),
            }
            .into());
        }
        Ok(self.chain().factorize(g))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Sorted element list; `None` above [`ELEMENT_LIMIT`].
    pub fn elements(&self) -> Option<&[Permutation]> {
        if self.order() > ELEMENT_LIMIT {
            return None;
        }
        Some(
            self.elements
                .get_or_init(|| {
                    let mut v = Vec::with_capacity(self.order() as usize);
                    self.chain().for_each_element(|g| v.push(g.clone()));
                    v.sort();
                    Arc::new(v)
                })
                .as_slice(),
        )
    }

    pub(crate) fn elements_checked(&self, what: &'static str) -> Result<&[Permutation]> {
        self.elements().ok_or(Error::TooLarge {
            what,
            order: self.order(),
            limit: ELEMENT_LIMIT,
        })
    }

    /// Position of `g` in [`elements`](Self::elements).
    pub fn element_index(&self, g: &Permutation) -> Option<usize> {
        self.elements()?.binary_search(g).ok()
    }

    pub fn for_each_element<F: FnMut(&Permutation)>(&self, f: F) {
        self.chain().for_each_element(f)
    }

    pub fn orbit(&self, point: u32) -> Vec<u32> {
        orbit_of(point, &self.gens, self.degree)
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree as u32 {
            if !seen[p as usize] {
                let o = self.orbit(p);
                for &q in &o {
                    seen[q as usize] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit(0).len() == self.degree
    }

    /// The subgroup fixing every listed point.
    pub fn pointwise_stabilizer(&self, points: &[u32]) -> PermGroup {
        let chain = self.chain_with_base(points);
        let depth = points
            .iter()
            .fold(Vec::<u32>::new(), |mut acc, &p| {
                if !acc.contains(&p) {
                    acc.push(p)
                }
                acc
            })
            .len();
        let sub = chain.suffix(depth);
        PermGroup::with_chain(self.degree, sub.strong_generators().to_vec(), sub)
    }

    /// Some element mapping `points[i]` to `images[i]` for all `i`.
    pub fn element_mapping(&self, points: &[u32], images: &[u32]) -> Option<Permutation> {
        assert_eq!(points.len(), images.len());
        let mut pts = Vec::new();
        let mut imgs = Vec::new();
        for (&p, &q) in points.iter().zip(images) {
            if let Some(k) = pts.iter().position(|&x| x == p) {
                if imgs[k] != q {
                    return None;
                }
            } else {
                pts.push(p);
                imgs.push(q);
            }
        }
        let chain = self.chain_with_base(&pts);
        chain.map_base_prefix(&imgs)
    }

    pub fn conjugate(&self, y: &Permutation) -> PermGroup {
        PermGroup::new(
            self.degree,
            self.gens.iter().map(|g| g.conjugate_by(y)).collect(),
        )
        .expect("same degree")
    }

    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        ambient
            .gens
            .iter()
            .all(|a| self.gens.iter().all(|g| self.contains(&g.conjugate_by(a))))
    }

    /// Subgroup generated by `elements`, keeping only the generators that
    /// enlarge the group seen so far.
    pub fn generated_by<'a, I>(degree: usize, elements: I) -> PermGroup
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut chain = StabChain::new(degree, &[], &[]);
        for g in elements {
            if !chain.contains(g) {
                gens.push(g.clone());
                chain = StabChain::new(degree, &gens, &[]);
            }
        }
        PermGroup::with_chain(degree, gens, chain)
    }

    pub fn filter_subgroup<F: Fn(&Permutation) -> bool>(&self, what: &'static str, keep: F) -> Result<PermGroup> {
        let elements = self.elements_checked(what)?;
        Ok(PermGroup::generated_by(
            self.degree,
            elements.iter().filter(|g| keep(g)),
        ))
    }

    pub fn intersection(&self, other: &PermGroup) -> Result<PermGroup> {
        if self.degree != other.degree {
            return Err(PermError::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            }
            .into());
        }
        let (small, large) = if self.order() <= other.order() {
            (self, other)
        } else {
            (other, self)
        };
        small.filter_subgroup("intersection", |g| large.contains(g))
    }

    /// Largest subgroup of `sub` normal in `self`.
    pub fn core(&self, sub: &PermGroup) -> Result<PermGroup> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotSubgroup);
        }
        let mut k = sub.clone();
        loop {
            let before = k.order();
            for a in &self.gens {
                if k.is_trivial() {
                    break;
                }
                let conj = k.conjugate(a);
                if !k.is_subgroup_of(&conj) {
                    k = k.intersection(&conj)?;
                }
            }
            if k.order() == before {
                return Ok(k);
            }
        }
    }

    pub fn normal_closure(&self, sub: &PermGroup) -> Result<PermGroup> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotSubgroup);
        }
        let mut gens: Vec<Permutation> = sub.gens.clone();
        let mut n = PermGroup::new(self.degree, gens.clone())?;
        let mut queue: VecDeque<Permutation> = gens.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for a in &self.gens {
                let y = x.conjugate_by(a);
                if !n.contains(&y) {
                    gens.push(y.clone());
                    n = PermGroup::new(self.degree, gens.clone())?;
                    queue.push_back(y);
                }
            }
        }
        Ok(n)
    }

    pub fn centralizer_of_element(&self, x: &Permutation) -> Result<PermGroup> {
        self.filter_subgroup("centralizer", |g| (g * x) == (x * g))
    }

    pub fn centralizer(&self, sub: &PermGroup) -> Result<PermGroup> {
        let gens = sub.gens.clone();
        self.filter_subgroup("centralizer", move |g| gens.iter().all(|x| (g * x) == (x * g)))
    }

    pub fn center(&self) -> Result<PermGroup> {
        self.centralizer(self)
    }

    pub fn normalizer(&self, sub: &PermGroup) -> Result<PermGroup> {
        let sub = sub.clone();
        self.filter_subgroup("normalizer", move |g| {
            sub.gens.iter().all(|x| sub.contains(&x.conjugate_by(g)))
        })
    }

    /// Derived subgroup, as the normal closure of generator commutators.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let mut comms = Vec::new();
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        let sub = PermGroup::new(self.degree, comms)?;
        self.normal_closure(&sub)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .enumerate()
            .all(|(i, a)| self.gens[i + 1..].iter().all(|b| (a * b) == (b * a)))
    }

    /// Action on an invariant set of points, relabelled by position.
    pub fn restrict(&self, points: &[u32]) -> Option<PermGroup> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.restrict(points))
            .collect::<Option<Vec<_>>>()?;
        PermGroup::new(points.len(), gens).ok()
    }

    /// Elements of order `n` up to conjugacy in `self`; requires the element list.
    pub fn conjugacy_class_representatives(&self) -> Result<Vec<(Permutation, usize)>> {
        let elements = self.elements_checked("conjugacy classes")?;
        let mut seen: HashSet<&Permutation> = HashSet::new();
        let mut reps = Vec::new();
        for x in elements {
            if seen.contains(x) {
                continue;
            }
            let class = conjugacy_orbit(x, &self.gens);
            let size = class.len();
            for y in &class {
                let idx = elements.binary_search(y).expect("closed under conjugation");
                seen.insert(&elements[idx]);
            }
            reps.push((x.clone(), size));
        }
        Ok(reps)
    }
}

pub fn orbit_of(point: u32, gens: &[Permutation], degree: usize) -> Vec<u32> {
    let mut seen = vec![false; degree];
    seen[point as usize] = true;
    let mut out = vec![point];
    let mut head = 0;
    while head < out.len() {
        let p = out[head];
        for g in gens {
            let q = g.image(p);
            if !seen[q as usize] {
                seen[q as usize] = true;
                out.push(q);
            }
        }
        head += 1;
    }
    out
}

/// Conjugacy class of `x` under the group generated by `gens`.
pub fn conjugacy_orbit(x: &Permutation, gens: &[Permutation]) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    seen.insert(x.clone());
    let mut out = vec![x.clone()];
    let mut head = 0;
    while head < out.len() {
        let y = out[head].clone();
        for g in gens {
            let z = y.conjugate_by(g);
            if seen.insert(z.clone()) {
                out.push(z);
            }
        }
        head += 1;
    }
    out
}

/// The orbit of a tuple (or set) of elements under simultaneous
/// conjugation `x ↦ g⁻¹xg`, and its stabilizer.
#[derive(Clone, Debug)]
pub struct ConjugationOrbit {
    /// Orbit points; sets are stored sorted. Point 0 is the input.
    pub points: Vec<Vec<Permutation>>,
    pub stabilizer: PermGroup,
}

impl PermGroup {
    /// Conjugation orbit of `objects`, as an ordered tuple or, when
    /// `setwise`, as a set. Fails once the orbit exceeds `max_orbit`.
    pub fn conjugation_orbit(&self, objects: &[Permutation], setwise: bool, max_orbit: usize) -> Result<ConjugationOrbit> {
        let key = |mut v: Vec<Permutation>| {
            if setwise {
                v.sort_unstable();
                v.dedup();
            }
            v
        };
        let start = key(objects.to_vec());
        let mut index: std::collections::HashMap<Vec<Permutation>, usize> = std::collections::HashMap::new();
        index.insert(start.clone(), 0);
        let mut points = vec![start];
        let mut transversal = vec![self.identity()];
        let mut edges: Vec<(usize, usize, usize)> = Vec::new();
        let mut head = 0;
        while head < points.len() {
            for (gi, s) in self.gens.iter().enumerate() {
                let image = key(points[head].iter().map(|x| x.conjugate_by(s)).collect());
                let next = points.len();
                let j = *index.entry(image.clone()).or_insert(next);
                if j == next {
                    if next >= max_orbit {
                        return Err(Error::TooLarge {
                            what: "conjugation orbit",
                            order: next as u128 + 1,
                            limit: max_orbit as u128,
                        });
                    }
                    points.push(image);
                    transversal.push(&transversal[head] * s);
                } else {
                    edges.push((head, gi, j));
                }
            }
            head += 1;
        }
        let target = self.order() / points.len() as u128;
        let mut gens: Vec<Permutation> = Vec::new();
        let mut chain = StabChain::new(self.degree, &[], &[]);
        for (i, gi, j) in edges {
            if chain.order() == target {
                break;
            }
            let g = &(&transversal[i] * &self.gens[gi]) * &transversal[j].inverse();
            if !chain.contains(&g) {
                gens.push(g);
                chain = StabChain::new(self.degree, &gens, &[]);
            }
        }
        Ok(ConjugationOrbit { points, stabilizer: PermGroup::with_chain(self.degree, gens, chain) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(n: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_cycles(n, gens).unwrap()
    }

    #[test]
    fn conjugation_orbit_matches_element_filters() {
        let s6 = PermGroup::symmetric(6);
        let c = Permutation::parse_cycles("(1,2,3)", 6).unwrap();
        let orbit = s6.conjugation_orbit(std::slice::from_ref(&c), false, 1000).unwrap();
        assert_eq!(orbit.points.len(), 40);
        assert!(orbit.stabilizer.same_group(&s6.centralizer_of_element(&c).unwrap()));
        let set = s6.conjugation_orbit(&[c.clone(), c.inverse()], true, 1000).unwrap();
        let cyc = PermGroup::new(6, vec![c]).unwrap();
        assert_eq!(set.points.len(), 20);
        assert!(set.stabilizer.same_group(&s6.normalizer(&cyc).unwrap()));
        assert!(s6.conjugation_orbit(&[Permutation::parse_cycles("(1,2)", 6).unwrap()], false, 10).is_err());
    }

    fn closure_count(g: &PermGroup) -> usize {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = g.identity();
        seen.insert(id.clone());
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for s in g.generators() {
                let y = &x * s;
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn orders() {
        assert_eq!(grp(5, &["(1,2,3,4,5)"]).order(), 5);
        let s3s3 = grp(6, &["(1,2,3)", "(4,5,6)", "(2,3)(4,5)"]);
        assert_eq!(s3s3.order(), 18);
        assert_eq!(closure_count(&s3s3), 18);
        assert_eq!(PermGroup::symmetric(6).order(), 720);
        assert_eq!(PermGroup::alternating(7).order(), 2520);
        assert_eq!(PermGroup::trivial(4).order(), 1);
    }

    #[test]
    fn membership_examples() {
        let c3 = grp(3, &["(1,2,3)"]);
        assert!(!c3.contains(&Permutation::parse_cycles("(1,2)", 3).unwrap()));
        let c4 = grp(4, &["(1,2,3,4)"]);
        let x = Permutation::parse_cycles("(1,3)(2,4)", 4).unwrap();
        let w = c4.membership(&x).unwrap().unwrap();
        assert_eq!(c4.chain().evaluate_word(&w), x);
        assert!(c4.membership(&Permutation::identity(5)).is_err());
    }

    #[test]
    fn stabilizers() {
        let s5 = PermGroup::symmetric(5);
        assert_eq!(s5.pointwise_stabilizer(&[0]).order(), 24);
        assert_eq!(s5.pointwise_stabilizer(&[0, 1, 2, 3, 4]).order(), 1);
        let c5 = grp(5, &["(1,2,3,4,5)"]);
        assert_eq!(c5.pointwise_stabilizer(&[0]).order(), 1);
        let st = s5.pointwise_stabilizer(&[3, 1]);
        assert_eq!(st.order(), 6);
        assert!(st.generators().iter().all(|g| g.image(3) == 3 && g.image(1) == 1));
    }

    #[test]
    fn core_examples() {
        let a4 = PermGroup::alternating(4);
        let h = grp(4, &["(1,2)(3,4)"]);
        assert_eq!(a4.core(&h).unwrap().order(), 1);
        let v4 = grp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert_eq!(a4.core(&v4).unwrap().order(), 4);
        assert!(h.core(&a4).is_err());
    }

    #[test]
    fn normal_closure_in_s4() {
        let s4 = PermGroup::symmetric(4);
        let h = grp(4, &["(1,2)(3,4)"]);
        let n = s4.normal_closure(&h).unwrap();
        assert_eq!(n.order(), 4);
    }

    #[test]
    fn intersections() {
        let a = grp(3, &["(1,2)"]);
        let b = grp(3, &["(1,3)"]);
        assert_eq!(a.intersection(&b).unwrap().order(), 1);
        assert_eq!(a.intersection(&a).unwrap().order(), 2);
    }

    #[test]
    fn element_mapping_pairs() {
        let s5 = PermGroup::symmetric(5);
        let g = s5.element_mapping(&[0, 1], &[1, 0]).unwrap();
        assert_eq!((g.image(0), g.image(1)), (1, 0));
        let d10 = grp(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]);
        assert!(d10.element_mapping(&[0, 1], &[0, 2]).is_none());
    }

    #[test]
    fn quaternion_center() {
        let q8 = grp(8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]);
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.center().unwrap().order(), 2);
    }
}
