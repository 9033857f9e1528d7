use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{conjugacy_orbit, PermGroup, StabChain, ELEMENT_LIMIT};
use crate::hom::Homomorphism;
use crate::perm::Permutation;

/// Isomorphism invariants; equal fingerprints are necessary for isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: u128,
    /// `(element order, count)` pairs, ascending.
    pub order_histogram: Vec<(u64, usize)>,
    pub center_order: u128,
    /// Prime-power cyclic factors of `G/G'`, ascending.
    pub abelian_invariants: Vec<u64>,
    /// `None` for non-soluble groups.
    pub derived_length: Option<usize>,
}

fn check_size(g: &PermGroup) -> Result<&[Permutation]> {
    g.elements().ok_or(Error::TooLarge {
        what: "isomorphism testing",
        order: g.order(),
        limit: ELEMENT_LIMIT,
    })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors of `G / N` for normal `N`, as prime powers.
fn abelian_quotient_invariants(g: &PermGroup, n: &PermGroup) -> Result<Vec<u64>> {
    let elements = check_size(g)?;
    let kernel = n.elements().ok_or(Error::TooLarge {
        what: "abelianization",
        order: n.order(),
        limit: ELEMENT_LIMIT,
    })?;
    let mut seen = vec![false; elements.len()];
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    for (i, x) in elements.iter().enumerate() {
        if seen[i] {
            continue;
        }
        for k in kernel {
            let y = x * k;
            seen[elements.binary_search(&y).expect("closed")] = true;
        }
        let ord = x.order();
        let q = (1..=ord)
            .filter(|d| ord % d == 0)
            .find(|&d| n.contains(&x.pow(d as i64)))
            .expect("x^ord = 1");
        *hist.entry(q).or_default() += 1;
    }
    let quotient: u64 = hist.values().sum();
    let mut invariants = Vec::new();
    for p in prime_factors(quotient) {
        // ranks[k] = number of cyclic factors of exponent > k
        let mut counts = vec![1u64];
        let mut pk = 1u64;
        loop {
            pk *= p;
            let c: u64 = hist.iter().filter(|(o, _)| pk.is_multiple_of(**o)).map(|(_, c)| c).sum();
            if c == *counts.last().unwrap() {
                break;
            }
            counts.push(c);
        }
        let log = |x: u64| {
            let mut k = 0;
            let mut y = x;
            while y > 1 {
                y /= p;
                k += 1;
            }
            k
        };
        let ranks: Vec<u32> = counts.windows(2).map(|w| log(w[1] / w[0])).collect();
        for (k, r) in ranks.iter().enumerate() {
            let next = ranks.get(k + 1).copied().unwrap_or(0);
            for _ in 0..(r - next) {
                invariants.push(p.pow(k as u32 + 1));
            }
        }
    }
    invariants.sort();
    Ok(invariants)
}

pub fn fingerprint(g: &PermGroup) -> Result<Fingerprint> {
    let elements = check_size(g)?;
    let mut hist: BTreeMap<u64, usize> = BTreeMap::new();
    for x in elements {
        *hist.entry(x.order()).or_default() += 1;
    }
    let derived = g.derived_subgroup()?;
    let mut length = Some(0usize);
    let mut cur = g.clone();
    while !cur.is_trivial() && cur.order() > 1 {
        let next = cur.derived_subgroup()?;
        if next.order() == cur.order() {
            length = None;
            break;
        }
        length = length.map(|l| l + 1);
        cur = next;
    }
    Ok(Fingerprint {
        order: g.order(),
        order_histogram: hist.into_iter().collect(),
        center_order: g.center()?.order(),
        abelian_invariants: abelian_quotient_invariants(g, &derived)?,
        derived_length: length,
    })
}

/// Deterministic walk through `0..n` visiting every index once.
fn scatter(n: usize) -> impl Iterator<Item = usize> {
    let step = (1..)
        .map(|k| n / 2 + k)
        .find(|s| crate::perm::gcd(*s as u64, n.max(1) as u64) == 1)
        .unwrap_or(1);
    (0..n).map(move |i| (i * step + 1) % n.max(1))
}

/// A short generating set: repeatedly adds the candidate (from a fixed
/// sample of elements outside the current subgroup) that enlarges it most.
pub fn small_generating_set(g: &PermGroup) -> Result<Vec<Permutation>> {
    let elements = check_size(g)?;
    let target = g.order();
    let mut chosen: Vec<Permutation> = Vec::new();
    let mut current = StabChain::new(g.degree(), &[], &[]);
    while current.order() < target {
        let mut best: Option<(u128, u64, Permutation, StabChain)> = None;
        let mut tried = 0;
        for i in scatter(elements.len()) {
            let x = &elements[i];
            if current.contains(x) {
                continue;
            }
            let mut gens = chosen.clone();
            gens.push(x.clone());
            let chain = StabChain::new(g.degree(), &gens, &[]);
            let key = (chain.order(), x.order());
            if best.as_ref().is_none_or(|b| key > (b.0, b.1)) {
                best = Some((key.0, key.1, x.clone(), chain));
            }
            tried += 1;
            if tried >= 48 || best.as_ref().unwrap().0 == target {
                break;
            }
        }
        let (_, _, x, chain) = best.expect("proper subgroup has an element outside");
        chosen.push(x);
        current = chain;
    }
    Ok(chosen)
}

struct ClassData {
    /// Class index per element position.
    class_of: Vec<u32>,
    class_size: Vec<usize>,
    reps: Vec<usize>,
}

fn classes(g: &PermGroup, elements: &[Permutation]) -> ClassData {
    let mut class_of = vec![u32::MAX; elements.len()];
    let mut class_size = Vec::new();
    let mut reps = Vec::new();
    for i in 0..elements.len() {
        if class_of[i] != u32::MAX {
            continue;
        }
        let id = class_size.len() as u32;
        let orbit = conjugacy_orbit(&elements[i], g.generators());
        for y in &orbit {
            class_of[elements.binary_search(y).expect("closed")] = id;
        }
        class_size.push(orbit.len());
        reps.push(i);
    }
    ClassData {
        class_of,
        class_size,
        reps,
    }
}

fn pair_chain(gs: &[Permutation], hs: &[Permutation]) -> StabChain {
    let n = gs[0].degree();
    let m = hs[0].degree();
    let gens: Vec<Permutation> = gs
        .iter()
        .zip(hs)
        .map(|(g, h)| {
            let mut images = g.images().to_vec();
            images.extend(h.images().iter().map(|&p| p + n as u32));
            Permutation::from_images(images).expect("bijection")
        })
        .collect();
    StabChain::new(n + m, &gens, &[])
}

/// An isomorphism `G → H` on a small generating set of `G`, or `None`.
pub fn is_isomorphic(g: &PermGroup, h: &PermGroup) -> Result<Option<Homomorphism>> {
    let fg = fingerprint(g)?;
    let fh = fingerprint(h)?;
    if fg != fh {
        return Ok(None);
    }
    let gens = small_generating_set(g)?;
    if gens.is_empty() {
        let src = PermGroup::new(g.degree(), Vec::new())?;
        return Ok(Some(Homomorphism::unchecked(&src, h, Vec::new())?));
    }
    let ge = g.elements().expect("checked");
    let he = h.elements().expect("checked");
    let gc = classes(g, ge);
    let hc = classes(h, he);
    let class_size_g: Vec<usize> = gens
        .iter()
        .map(|x| gc.class_size[gc.class_of[ge.binary_search(x).unwrap()] as usize])
        .collect();
    // orders of the partial subgroups ⟨g_1, …, g_i⟩
    let prefix_orders: Vec<u128> = (1..=gens.len())
        .map(|i| StabChain::new(g.degree(), &gens[..i], &[]).order())
        .collect();
    let matches = |i: usize, y: &Permutation, idx: usize, chosen: &[Permutation]| {
        y.order() == gens[i].order()
            && hc.class_size[hc.class_of[idx] as usize] == class_size_g[i]
            && chosen.iter().enumerate().all(|(j, z)| {
                (z * y).order() == (&gens[j] * &gens[i]).order()
                    && (z * &y.inverse()).order() == (&gens[j] * &gens[i].inverse()).order()
            })
    };
    let mut chosen: Vec<Permutation> = Vec::new();
    let found = search(
        0,
        &gens,
        &prefix_orders,
        h,
        he,
        &hc,
        &matches,
        &mut chosen,
    );
    if !found {
        return Ok(None);
    }
    let src = PermGroup::new(g.degree(), gens)?;
    Ok(Some(Homomorphism::unchecked(&src, h, chosen)?))
}

#[allow(clippy::too_many_arguments)]
fn search<F>(
    level: usize,
    gens: &[Permutation],
    prefix_orders: &[u128],
    h: &PermGroup,
    he: &[Permutation],
    hc: &ClassData,
    matches: &F,
    chosen: &mut Vec<Permutation>,
) -> bool
where
    F: Fn(usize, &Permutation, usize, &[Permutation]) -> bool,
{
    if level == gens.len() {
        let image = StabChain::new(h.degree(), chosen, &[]);
        return image.order() == h.order();
    }
    let candidates: Vec<usize> = match level {
        0 => hc.reps.iter().copied().filter(|&i| matches(0, &he[i], i, chosen)).collect(),
        1 => {
            let cent: Vec<Permutation> = he
                .iter()
                .filter(|z| *z * &chosen[0] == &chosen[0] * *z)
                .cloned()
                .collect();
            let cent = PermGroup::generated_by(h.degree(), cent.iter());
            let mut seen = vec![false; he.len()];
            let mut out = Vec::new();
            for i in 0..he.len() {
                if seen[i] || !matches(1, &he[i], i, chosen) {
                    continue;
                }
                for y in conjugacy_orbit(&he[i], cent.generators()) {
                    seen[he.binary_search(&y).expect("closed")] = true;
                }
                out.push(i);
            }
            out
        }
        _ => (0..he.len()).filter(|&i| matches(level, &he[i], i, chosen)).collect(),
    };
    for i in candidates {
        chosen.push(he[i].clone());
        let ok = level == 0 || pair_chain(&gens[..=level], chosen).order() == prefix_orders[level];
        if ok && search(level + 1, gens, prefix_orders, h, he, hc, matches, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpid::NamedGroup;

    fn named(s: &str) -> PermGroup {
        s.parse::<NamedGroup>().unwrap().realize().unwrap()
    }

    #[test]
    fn small_fingerprints() {
        let f = fingerprint(&named("C4")).unwrap();
        assert_eq!(f.order_histogram, vec![(1, 1), (2, 1), (4, 2)]);
        assert_eq!(f.center_order, 4);
        assert_eq!(f.abelian_invariants, vec![4]);
        assert_eq!(f.derived_length, Some(1));
        let q = fingerprint(&named("Q8")).unwrap();
        assert_eq!(q.order_histogram, vec![(1, 1), (2, 1), (4, 6)]);
        assert_eq!(q.center_order, 2);
        assert_eq!(q.abelian_invariants, vec![2, 2]);
        assert_eq!(q.derived_length, Some(2));
        assert_eq!(fingerprint(&named("A5")).unwrap().derived_length, None);
        assert_eq!(fingerprint(&named("1")).unwrap().derived_length, Some(0));
    }

    #[test]
    fn regular_and_natural_actions_agree() {
        // C2 x C4 on 6 points vs the same group generated differently
        let a = named("C4 x C2");
        let b = PermGroup::from_cycles(8, &["(1,2,3,4)(5,6,7,8)", "(1,5)(2,6)(3,7)(4,8)"]).unwrap();
        let iso = is_isomorphic(&a, &b).unwrap().expect("isomorphic");
        assert!(iso.is_injective());
        assert!(is_isomorphic(&b, &a).unwrap().is_some());
    }

    #[test]
    fn dihedral_versus_quaternion() {
        assert!(is_isomorphic(&named("D8"), &named("Q8")).unwrap().is_none());
    }

    #[test]
    fn s4_in_two_actions() {
        // S4 acting on the six 2-subsets of {1,..,4}
        let s4_on_pairs = PermGroup::from_cycles(6, &["(1,4,6,3)(2,5)", "(2,4)(3,5)"]).unwrap();
        assert_eq!(s4_on_pairs.order(), 24);
        let iso = is_isomorphic(&named("S4"), &s4_on_pairs).unwrap().unwrap();
        assert!(iso.is_well_defined() && iso.is_injective());
    }

    #[test]
    fn generating_sets_generate() {
        for name in ["Frob20 x C4", "S4 wr C2", "A5", "2^3"] {
            let g = named(name);
            let gens = small_generating_set(&g).unwrap();
            assert_eq!(StabChain::new(g.degree(), &gens, &[]).order(), g.order());
            assert!(gens.len() <= 4, "{name}: {}", gens.len());
        }
    }
}
