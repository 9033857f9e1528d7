//! s-arcs: counting, transitivity measurement and local stabilizer data.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::GroupAction;
use crate::error::{Error, Result};

/// Number of s-arcs in a connected `d`-regular graph on `n` vertices.
pub fn s_arc_count(n: usize, d: usize, s: usize) -> u128 {
    if s == 0 {
        return n as u128;
    }
    n as u128 * d as u128 * (d as u128 - 1).pow(s as u32 - 1)
}

/// The s-arc starting at vertex 0 that always steps to the smallest allowed
/// neighbour.
fn leftmost_arc(act: &GroupAction, s: usize) -> Vec<u32> {
    let g = act.graph();
    let mut arc = vec![0u32];
    for i in 0..s {
        let here = arc[i];
        let prev = if i > 0 { Some(arc[i - 1]) } else { None };
        let next = g
            .neighbors(here)
            .iter()
            .copied()
            .find(|&v| Some(v) != prev)
            .expect("valency at least 2");
        arc.push(next);
    }
    arc
}

fn check_regular(act: &GroupAction) -> Result<usize> {
    let g = act.graph();
    let d = g.valency().ok_or_else(|| Error::Invalid("graph is not regular".into()))?;
    if d < 2 || !g.is_connected() {
        return Err(Error::Invalid("graph must be connected with valency at least 2".into()));
    }
    if !act.is_vertex_transitive() {
        return Err(Error::Invalid("action is not vertex-transitive".into()));
    }
    Ok(d)
}

/// Largest `s ≤ cap` such that the group is transitive on s-arcs. The orbit
/// of one s-arc has size `|G| / |G_{x0…xs}|`, compared with the number of
/// s-arcs.
pub fn measure_s(act: &GroupAction, cap: usize) -> Result<usize> {
    let d = check_regular(act)?;
    let n = act.graph().vertex_count();
    let arc = leftmost_arc(act, cap);
    let chain = act.group().chain_with_base(&arc);
    let order = chain.order();
    let mut best = 0;
    for s in 1..=cap {
        let distinct = arc[..=s].iter().collect::<std::collections::HashSet<_>>().len();
        let stab = chain.suffix(distinct).order();
        if order / stab != s_arc_count(n, d, s) {
            break;
        }
        best = s;
    }
    Ok(best)
}

/// Number of orbits of the group on s-arcs, by union–find over every
/// explicitly listed s-arc. Intended for small graphs.
pub fn arc_orbit_count(act: &GroupAction, s: usize) -> Result<usize> {
    check_regular(act)?;
    let g = act.graph();
    let mut arcs: Vec<Vec<u32>> = (0..g.vertex_count() as u32).map(|v| vec![v]).collect();
    for _ in 0..s {
        let mut next = Vec::new();
        for a in &arcs {
            let last = a[a.len() - 1];
            let prev = (a.len() >= 2).then(|| a[a.len() - 2]);
            for &v in g.neighbors(last) {
                if Some(v) != prev {
                    let mut b = a.clone();
                    b.push(v);
                    next.push(b);
                }
            }
        }
        arcs = next;
    }
    let index: HashMap<&[u32], usize> = arcs.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
    let mut parent: Vec<usize> = (0..arcs.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut classes = arcs.len();
    let mut image = Vec::with_capacity(s + 1);
    for gen in act.group().generators() {
        for (i, a) in arcs.iter().enumerate() {
            image.clear();
            image.extend(a.iter().map(|&v| gen.image(v)));
            let j = index[image.as_slice()];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                classes -= 1;
            }
        }
    }
    Ok(classes)
}

/// Stabilizer orders along a 3-arc `(x, y, z, w)` and the action of
/// `G_{xyz}` on the neighbours of `z` other than `y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalData {
    pub path: Vec<u32>,
    /// `|G_x|, |G_xy|, |G_xyz|, |G_xyzw|`.
    pub stabilizer_orders: Vec<u128>,
    /// `|G_xyz : G_xyzw|`.
    pub index: u128,
    /// Order of the permutation group induced by `G_xyz` on the forward
    /// neighbours of `z`.
    pub forward_image_order: u128,
    pub forward_image_cyclic: bool,
    /// Whether that image is transitive on the forward neighbours.
    pub forward_image_transitive: bool,
}

/// Local stabilizer data for the 3-arc `path`.
pub fn measure_s_local(act: &GroupAction, path: &[u32]) -> Result<LocalData> {
    let g = act.graph();
    if path.len() != 4 {
        return Err(Error::Invalid(format!("expected a 3-arc, got {} vertices", path.len())));
    }
    for i in 0..3 {
        if path[i] as usize >= g.vertex_count() || !g.has_edge(path[i], path[i + 1]) {
            return Err(Error::Invalid(format!("{:?} is not a walk", path)));
        }
        if i >= 1 && path[i - 1] == path[i + 1] {
            return Err(Error::Invalid(format!("{:?} backtracks", path)));
        }
    }
    let chain = act.group().chain_with_base(path);
    let mut distinct = Vec::new();
    let mut orders = Vec::new();
    for &v in path {
        if !distinct.contains(&v) {
            distinct.push(v);
        }
        orders.push(chain.suffix(distinct.len()).order());
    }
    let (y, z) = (path[1], path[2]);
    let forward: Vec<u32> = g.neighbors(z).iter().copied().filter(|&v| v != y).collect();
    let stab_xyz = act.group().pointwise_stabilizer(&path[..3]);
    let images: Vec<_> = stab_xyz
        .generators()
        .iter()
        .map(|p| p.restrict(&forward).expect("stabilizer of z permutes its neighbours"))
        .collect();
    let image = crate::group::PermGroup::generated_by(forward.len(), images.iter());
    let img_order = image.order();
    let cyclic = image.is_abelian() && {
        let mut found = img_order == 1;
        image.for_each_element(|e| found |= e.order() as u128 == img_order);
        found
    };
    Ok(LocalData {
        path: path.to_vec(),
        index: orders[2] / orders[3],
        stabilizer_orders: orders,
        forward_image_order: img_order,
        forward_image_cyclic: cyclic,
        forward_image_transitive: image.is_transitive(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphsym::Graph;

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::new(10, &edges).unwrap()
    }

    #[test]
    fn cycles_are_arc_transitive_at_every_length() {
        let act = GroupAction::full(Graph::cycle(7)).unwrap();
        assert_eq!(measure_s(&act, 6).unwrap(), 6);
        assert_eq!(arc_orbit_count(&act, 4).unwrap(), 1);
    }

    #[test]
    fn petersen_is_three_arc_transitive() {
        let act = GroupAction::full(petersen()).unwrap();
        assert_eq!(measure_s(&act, 6).unwrap(), 3);
        assert_eq!(arc_orbit_count(&act, 3).unwrap(), 1);
        assert!(arc_orbit_count(&act, 4).unwrap() > 1);
    }

    #[test]
    fn complete_graph_is_two_arc_transitive() {
        let act = GroupAction::full(Graph::complete(5)).unwrap();
        assert_eq!(measure_s(&act, 5).unwrap(), 2);
        assert_eq!(arc_orbit_count(&act, 2).unwrap(), 1);
        assert!(arc_orbit_count(&act, 3).unwrap() > 1);
    }

    #[test]
    fn local_data_on_petersen() {
        let act = GroupAction::full(petersen()).unwrap();
        let local = measure_s_local(&act, &[0, 1, 2, 3]).unwrap();
        assert_eq!(local.stabilizer_orders, vec![12, 4, 2, 1]);
        assert_eq!(local.index, 2);
        assert_eq!(local.forward_image_order, 2);
        assert!(local.forward_image_cyclic);
        assert!(measure_s_local(&act, &[0, 1, 0, 1]).is_err());
        assert!(measure_s_local(&act, &[0, 2, 3, 4]).is_err());
    }

    #[test]
    fn intransitive_actions_are_rejected() {
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let act = GroupAction::full(path).unwrap();
        assert!(measure_s(&act, 3).is_err());
    }
}
