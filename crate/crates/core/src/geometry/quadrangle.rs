//! The generalized quadrangle W(3,4) of totally isotropic subspaces of the
//! alternating form `x1y2 + x2y1 + x3y4 + x4y3` on GF(4)⁴.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use super::gf4;
use crate::amalgam::Amalgam;
use crate::graphsym::{graph_automorphisms, Graph};
use crate::group::PermGroup;
use crate::perm::Permutation;

fn form(x: &[u8], y: &[u8]) -> u8 {
    let t = |a: usize, b: usize| gf4::add(gf4::mul(x[a], y[b]), gf4::mul(x[b], y[a]));
    gf4::add(t(0, 1), t(2, 3))
}

/// 85 points and 85 lines (each a sorted list of five point indices).
#[derive(Clone, Debug)]
pub struct SymplecticQuadrangle {
    pub points: Vec<Vec<u8>>,
    pub lines: Vec<[usize; 5]>,
}

impl SymplecticQuadrangle {
    fn build() -> Self {
        let points = gf4::projective_points(4);
        let index = |v: &[u8]| {
            let n = gf4::normalize(v);
            points.iter().position(|p| *p == n).expect("projective point")
        };
        let mut lines = BTreeSet::new();
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if form(&points[i], &points[j]) != 0 {
                    continue;
                }
                let mut line = [i, j, 0, 0, 0];
                for (k, lambda) in [1u8, 2, 3].into_iter().enumerate() {
                    let v: Vec<u8> = points[i]
                        .iter()
                        .zip(&points[j])
                        .map(|(&a, &b)| gf4::add(a, gf4::mul(lambda, b)))
                        .collect();
                    line[2 + k] = index(&v);
                }
                line.sort_unstable();
                lines.insert(line);
            }
        }
        SymplecticQuadrangle { points, lines: lines.into_iter().collect() }
    }

    pub fn collinear(&self, p: usize, q: usize) -> bool {
        form(&self.points[p], &self.points[q]) == 0
    }
}

pub fn symplectic_quadrangle() -> &'static SymplecticQuadrangle {
    static GQ: OnceLock<SymplecticQuadrangle> = OnceLock::new();
    GQ.get_or_init(SymplecticQuadrangle::build)
}

/// Point–line incidence graph of W(3,4): points 0..85, lines 85..170.
pub fn gq44_incidence_graph() -> Graph {
    let gq = symplectic_quadrangle();
    let n = gq.points.len();
    let mut edges = Vec::new();
    for (l, line) in gq.lines.iter().enumerate() {
        for &p in line {
            edges.push((p as u32, (n + l) as u32));
        }
    }
    Graph::new(n + gq.lines.len(), &edges).expect("incidence graph")
}

/// The automorphism group of the W(3,4) incidence graph with the vertex
/// stabilizer `A1` of point 0, the stabilizer `A2` of the edge from point 0
/// to its first line, `B = A1 ∩ A2`, and a side-swapping `f ∈ A2` of order 4.
#[derive(Clone, Debug)]
pub struct QuadrangleGroup {
    pub graph: Graph,
    pub group: PermGroup,
    pub a1: PermGroup,
    pub a2: PermGroup,
    pub b: PermGroup,
    pub f: Permutation,
    pub edge: (u32, u32),
}

fn build_quadrangle_group() -> QuadrangleGroup {
    let graph = gq44_incidence_graph();
    let group = graph_automorphisms(&graph).expect("170 vertices is within the search bound");
    let x = 0u32;
    let line = graph.neighbors(x)[0];
    let a1 = group.pointwise_stabilizer(&[x]);
    let b = group.pointwise_stabilizer(&[x, line]);
    let swap = group.element_mapping(&[x, line], &[line, x]).expect("the group is arc-transitive");
    let mut f = None;
    b.for_each_element(|e| {
        if f.is_none() {
            let cand = e * &swap;
            if cand.order() == 4 {
                f = Some(cand);
            }
        }
    });
    let f = f.expect("an order-4 element swaps the marked edge");
    let mut gens = b.generators().to_vec();
    gens.push(f.clone());
    let a2 = PermGroup::new(graph.vertex_count(), gens).expect("same degree");
    QuadrangleGroup { graph, group, a1, a2, b, f, edge: (x, line) }
}

pub fn quadrangle_group() -> &'static QuadrangleGroup {
    static GROUP: OnceLock<QuadrangleGroup> = OnceLock::new();
    GROUP.get_or_init(build_quadrangle_group)
}

/// The amalgam of vertex and edge stabilizers in Aut of the W(3,4) graph.
pub fn quadrangle_amalgam() -> Amalgam {
    let q = quadrangle_group();
    let images = q.b.generators().to_vec();
    Amalgam::new(q.a1.clone(), q.a2.clone(), q.b.clone(), images).expect("inclusions define an amalgam")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrangle_axioms() {
        let gq = symplectic_quadrangle();
        assert_eq!(gq.points.len(), 85);
        assert_eq!(gq.lines.len(), 85);
        let mut per_point = vec![0; 85];
        for line in &gq.lines {
            for &p in line {
                per_point[p] += 1;
            }
        }
        assert!(per_point.iter().all(|&c| c == 5));
        let mut pairs = 0;
        for line in &gq.lines {
            for p in 0..85 {
                if line.contains(&p) {
                    continue;
                }
                pairs += 1;
                let collinear = line.iter().filter(|&&q| gq.collinear(p, q)).count();
                assert_eq!(collinear, 1);
            }
        }
        assert_eq!(pairs, 85 * 80);
    }

    #[test]
    fn incidence_graph_shape() {
        let g = gq44_incidence_graph();
        assert_eq!(g.vertex_count(), 170);
        assert_eq!(g.valency(), Some(5));
        assert_eq!(g.girth(), Some(8));
        assert!(g.is_connected() && g.is_bipartite());
    }

    #[test]
    fn quadrangle_group_and_amalgam() {
        let q = quadrangle_group();
        assert_eq!(q.group.order(), 3916800);
        assert_eq!((q.a1.order(), q.a2.order(), q.b.order()), (23040, 9216, 4608));
        assert_eq!(q.f.order(), 4);
        assert_eq!(q.f.image(q.edge.0), q.edge.1);
        assert!(quadrangle_amalgam().is_primitive().unwrap());
    }
}
