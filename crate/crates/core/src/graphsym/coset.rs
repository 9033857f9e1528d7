//! The coset graph of a completion: vertices are the right cosets of `A1`,
//! and `A1 g ~ A1 h` whenever `g h⁻¹ ∈ A1 a A1` for some `a ∈ A2 − B`.

use std::collections::HashMap;

use super::{Graph, GroupAction};
use crate::error::{Error, Result};
use crate::group::{PermGroup, StabChain, ELEMENT_LIMIT};
use crate::perm::Permutation;

/// Canonical representatives of right cosets `A1 g`, keyed by the
/// lexicographically least base image over the coset.
struct CosetKeys {
    base: Vec<u32>,
    sub: StabChain,
}

impl CosetKeys {
    fn new(group: &PermGroup, sub: &PermGroup) -> Self {
        let base = group.chain().base();
        let sub = sub.chain_with_base(&base);
        debug_assert_eq!(sub.base(), base);
        CosetKeys { base, sub }
    }

    /// The least element of `A1 g` in base-image order, and its base images.
    fn canonical(&self, g: &Permutation) -> (Permutation, Vec<u32>) {
        let mut h = g.clone();
        for level in 0..self.base.len() {
            let orbit = self.sub.basic_orbit(level);
            let best = *orbit.iter().min_by_key(|&&p| h.image(p)).expect("orbit contains base point");
            let t = self.sub.transversal_element(level, best).expect("point in orbit");
            h = t * &h;
        }
        let key = self.base.iter().map(|&b| h.image(b)).collect();
        (h, key)
    }
}

/// A coset graph together with the right-translation action and the
/// vertex/neighbour pair corresponding to `A1` and `A1 a`.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    pub action: GroupAction,
    /// Vertex `A1` is always 0; this is the vertex `A1 a`.
    pub base_neighbor: u32,
    /// Whether every `a ∈ A2 − B` was tried (otherwise only generators).
    pub exhaustive_check: bool,
}

/// Builds the coset graph of `(A1, A2)` inside `group`.
pub fn coset_graph(group: &PermGroup, a1: &PermGroup, a2: &PermGroup) -> Result<CosetGraph> {
    if !a1.is_subgroup_of(group) || !a2.is_subgroup_of(group) {
        return Err(Error::NotSubgroup);
    }
    let index = group.order() / a1.order();
    if index > ELEMENT_LIMIT {
        return Err(Error::TooLarge { what: "coset graph", order: index, limit: ELEMENT_LIMIT });
    }
    let keys = CosetKeys::new(group, a1);
    let mut reps: Vec<Permutation> = Vec::new();
    let mut lookup: HashMap<Vec<u32>, u32> = HashMap::new();
    let (id, key) = keys.canonical(&group.identity());
    lookup.insert(key, 0);
    reps.push(id);
    let gens = group.generators();
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut head = 0;
    while head < reps.len() {
        for (gi, x) in gens.iter().enumerate() {
            let (h, key) = keys.canonical(&(&reps[head] * x));
            let next = reps.len() as u32;
            let idx = *lookup.entry(key).or_insert(next);
            if idx == next {
                reps.push(h);
            }
            images[gi].push(idx);
        }
        head += 1;
    }
    debug_assert_eq!(reps.len() as u128, index);
    let coset_of = |g: &Permutation| lookup[&keys.canonical(g).1];

    let b = a1.intersection(a2)?;
    let outside: Vec<&Permutation> = a2.generators().iter().filter(|g| !b.contains(g)).collect();
    let Some(&a) = outside.first() else {
        return Err(Error::Invalid("A2 is contained in A1".into()));
    };
    // Neighbours of A1: the orbit of A1 a under right translation by A1.
    let start = coset_of(a);
    let mut nbrs = vec![start];
    let mut head = 0;
    while head < nbrs.len() {
        for y in a1.generators() {
            let c = coset_of(&(&reps[nbrs[head] as usize] * y));
            if !nbrs.contains(&c) {
                nbrs.push(c);
            }
        }
        head += 1;
    }
    if nbrs.contains(&0) {
        return Err(Error::Invalid("A1 a A1 meets A1: a lies in A1".into()));
    }
    let exhaustive = a2.order() <= 1000;
    let mut consistent = true;
    if exhaustive {
        let elements = a2.elements().expect("small group");
        for e in elements.iter().filter(|e| !b.contains(e)) {
            consistent &= nbrs.contains(&coset_of(e));
        }
    } else {
        for e in &outside {
            consistent &= nbrs.contains(&coset_of(e));
        }
    }
    if !consistent {
        return Err(Error::Invalid("adjacency depends on the choice of a in A2 - B".into()));
    }

    let mut edges = Vec::with_capacity(reps.len() * nbrs.len());
    for (v, h) in reps.iter().enumerate() {
        for &n in &nbrs {
            let w = coset_of(&(&reps[n as usize] * h));
            edges.push((v as u32, w));
        }
    }
    let graph = Graph::new(reps.len(), &edges)?;
    if graph.valency() != Some(nbrs.len()) {
        return Err(Error::Invalid("coset graph adjacency is not symmetric".into()));
    }
    let perms = images
        .into_iter()
        .map(|img| Permutation::from_images(img).map_err(Error::from))
        .collect::<Result<Vec<_>>>()?;
    let action = GroupAction::new(graph, PermGroup::new(reps.len(), perms)?)?;
    Ok(CosetGraph { action, base_neighbor: start, exhaustive_check: exhaustive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphsym::measure_s;

    #[test]
    fn s4_on_point_stabilizers_gives_k4() {
        // Vertex stabilizer S3 and edge stabilizer 2^2 inside S4.
        let g = PermGroup::symmetric(4);
        let a1 = PermGroup::from_cycles(4, &["(1,2,3)", "(1,2)"]).unwrap();
        let a2 = PermGroup::from_cycles(4, &["(1,2)", "(3,4)"]).unwrap();
        let cg = coset_graph(&g, &a1, &a2).unwrap();
        let graph = cg.action.graph();
        assert_eq!(graph.vertex_count(), 4);
        assert_eq!(graph.valency(), Some(3));
        assert!(cg.exhaustive_check);
        assert_eq!(measure_s(&cg.action, 4).unwrap(), 2);
    }

    #[test]
    fn degenerate_input_is_rejected() {
        let g = PermGroup::symmetric(3);
        assert!(coset_graph(&g, &g, &g).is_err());
        let other = PermGroup::symmetric(4);
        assert!(coset_graph(&g, &other, &g).is_err());
    }
}
