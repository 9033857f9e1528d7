//! The projective plane PG(2,4) and the symplectic quadrangle W(3,4), their
//! incidence graphs, and the amalgams of vertex and edge stabilizers in
//! their automorphism groups.

mod quadrangle;

pub use quadrangle::{gq44_incidence_graph, quadrangle_amalgam, quadrangle_group, QuadrangleGroup, SymplecticQuadrangle};

use std::sync::OnceLock;

use crate::amalgam::Amalgam;
use crate::graphsym::Graph;
use crate::group::PermGroup;
use crate::perm::Permutation;

/// Arithmetic in GF(4) = {0, 1, w, w²} encoded as 0, 1, 2, 3 so that
/// addition is bitwise xor.
pub mod gf4 {
    const LOG: [usize; 4] = [usize::MAX, 0, 1, 2];
    const EXP: [u8; 3] = [1, 2, 3];

    pub fn add(a: u8, b: u8) -> u8 {
        a ^ b
    }

    pub fn mul(a: u8, b: u8) -> u8 {
        if a == 0 || b == 0 {
            0
        } else {
            EXP[(LOG[a as usize] + LOG[b as usize]) % 3]
        }
    }

    pub fn inv(a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        EXP[(3 - LOG[a as usize]) % 3]
    }

    /// The Frobenius map `x ↦ x²`.
    pub fn frob(a: u8) -> u8 {
        mul(a, a)
    }

    pub fn dot(x: &[u8], y: &[u8]) -> u8 {
        x.iter().zip(y).fold(0, |acc, (&a, &b)| add(acc, mul(a, b)))
    }

    /// Scales `v` so that its first nonzero coordinate is 1.
    pub fn normalize(v: &[u8]) -> Vec<u8> {
        let lead = v.iter().copied().find(|&c| c != 0).expect("nonzero vector");
        let s = inv(lead);
        v.iter().map(|&c| mul(c, s)).collect()
    }

    /// Normalized nonzero vectors of length `n`, in lexicographic order.
    pub fn projective_points(n: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for code in 0..4usize.pow(n as u32) {
            let v: Vec<u8> = (0..n).rev().map(|i| ((code >> (2 * i)) & 3) as u8).collect();
            if v.iter().copied().find(|&c| c != 0) == Some(1) {
                out.push(v);
            }
        }
        out
    }
}

/// PG(2,4): 21 points and 21 lines, both as normalized vectors of GF(4)³,
/// with `P` on `ℓ` iff `P·ℓ = 0`.
#[derive(Clone, Debug)]
pub struct ProjectivePlane {
    pub points: Vec<Vec<u8>>,
    pub lines: Vec<Vec<u8>>,
    pub incidence: Vec<Vec<bool>>,
}

impl ProjectivePlane {
    fn build() -> Self {
        let points = gf4::projective_points(3);
        let lines = points.clone();
        let incidence = points
            .iter()
            .map(|p| lines.iter().map(|l| gf4::dot(p, l) == 0).collect())
            .collect();
        ProjectivePlane { points, lines, incidence }
    }

    pub fn point_index(&self, v: &[u8]) -> usize {
        let n = gf4::normalize(v);
        self.points.iter().position(|p| *p == n).expect("projective point")
    }

    /// The line through two distinct points.
    fn join(&self, p: usize, q: usize) -> usize {
        (0..self.lines.len())
            .find(|&l| self.incidence[p][l] && self.incidence[q][l])
            .expect("two points lie on a line")
    }

    /// The collineation induced by a point map, on points ⊔ lines.
    fn collineation(&self, point_map: impl Fn(&[u8]) -> Vec<u8>) -> Permutation {
        let n = self.points.len();
        let pimg: Vec<u32> = self.points.iter().map(|p| self.point_index(&point_map(p)) as u32).collect();
        let mut images = pimg.clone();
        for l in 0..n {
            let on: Vec<usize> = (0..n).filter(|&p| self.incidence[p][l]).collect();
            let img = self.join(pimg[on[0]] as usize, pimg[on[1]] as usize);
            images.push((n + img) as u32);
        }
        let perm = Permutation::from_images(images).expect("bijection");
        debug_assert!(plane_graph().is_automorphism(&perm));
        perm
    }
}

pub fn projective_plane() -> &'static ProjectivePlane {
    static PLANE: OnceLock<ProjectivePlane> = OnceLock::new();
    PLANE.get_or_init(ProjectivePlane::build)
}

fn plane_graph() -> &'static Graph {
    static GRAPH: OnceLock<Graph> = OnceLock::new();
    GRAPH.get_or_init(|| {
        let plane = projective_plane();
        let n = plane.points.len();
        let mut edges = Vec::new();
        for p in 0..n {
            for l in 0..n {
                if plane.incidence[p][l] {
                    edges.push((p as u32, (n + l) as u32));
                }
            }
        }
        Graph::new(2 * n, &edges).expect("incidence graph")
    })
}

/// Point–line incidence graph of PG(2,4): points are vertices 0..21, lines
/// 21..42.
pub fn pg24_incidence_graph() -> Graph {
    plane_graph().clone()
}

/// Edge list with vertices labeled `P<i>` for `i < points` and `L<j>` after.
pub fn labeled_edge_list(graph: &Graph, points: usize) -> String {
    let label = |v: u32| {
        if (v as usize) < points {
            format!("P{v}")
        } else {
            format!("L{}", v as usize - points)
        }
    };
    graph.edges().iter().map(|&(u, v)| format!("{} {}\n", label(u), label(v))).collect()
}

/// The group generated by PSL(3,4) with the marked elements `f` (Frobenius),
/// `p` (a diagonal outer collineation) and `g` (the standard duality),
/// acting on the 42 points and lines.
#[derive(Clone, Debug)]
pub struct PlaneGroup {
    pub group: PermGroup,
    pub psl: PermGroup,
    pub f: Permutation,
    pub p: Permutation,
    pub g: Permutation,
    /// Stabilizer in PSL(3,4) of the marked point.
    pub p1: PermGroup,
    /// Stabilizer in PSL(3,4) of the marked flag.
    pub b: PermGroup,
    pub marked_point: u32,
    pub marked_line: u32,
}

fn build_plane_group() -> PlaneGroup {
    let plane = projective_plane();
    let n = plane.points.len();
    let mut psl_gens = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            for t in [1u8, 2] {
                // row vector times the elementary matrix I + t·E_ij
                psl_gens.push(plane.collineation(|v| {
                    let mut w = v.to_vec();
                    w[j] = gf4::add(w[j], gf4::mul(v[i], t));
                    w
                }));
            }
        }
    }
    let psl = PermGroup::new(2 * n, psl_gens).expect("same degree");
    let f = plane.collineation(|v| v.iter().map(|&c| gf4::frob(c)).collect());
    let p = plane.collineation(|v| vec![v[0], v[1], gf4::mul(v[2], 2)]);
    let g_images: Vec<u32> = (0..2 * n as u32).map(|v| (v + n as u32) % (2 * n as u32)).collect();
    let g = Permutation::from_images(g_images).expect("bijection");
    assert!(plane_graph().is_automorphism(&g), "duality preserves incidence");

    let marked_point = plane.point_index(&[1, 1, 0]) as u32;
    let marked_line = n as u32 + marked_point;
    let p1 = psl.pointwise_stabilizer(&[marked_point]);
    let b = psl.pointwise_stabilizer(&[marked_point, marked_line]);
    let mut gens = psl.generators().to_vec();
    gens.extend([f.clone(), p.clone(), g.clone()]);
    let group = PermGroup::new(2 * n, gens).expect("same degree");
    PlaneGroup { group, psl, f, p, g, p1, b, marked_point, marked_line }
}

pub fn psl34_overgroup() -> &'static PlaneGroup {
    static GROUP: OnceLock<PlaneGroup> = OnceLock::new();
    GROUP.get_or_init(build_plane_group)
}

fn extend(base: &PermGroup, extra: &[&Permutation]) -> PermGroup {
    let mut gens = base.generators().to_vec();
    gens.extend(extra.iter().map(|&x| x.clone()));
    PermGroup::new(base.degree(), gens).expect("same degree")
}

/// `(A1, A2, B)` of the plane amalgam `j ∈ 1..=6`.
pub fn plane_amalgam_groups(j: usize) -> (PermGroup, PermGroup, PermGroup) {
    let pg = psl34_overgroup();
    let (f, p, g) = (&pg.f, &pg.p, &pg.g);
    let fg = f * g;
    match j {
        1 => (pg.p1.clone(), extend(&pg.b, &[&fg]), pg.b.clone()),
        2 => (pg.p1.clone(), extend(&pg.b, &[g]), pg.b.clone()),
        3 => (extend(&pg.p1, &[p]), extend(&pg.b, &[p, &fg]), extend(&pg.b, &[p])),
        4 => (extend(&pg.p1, &[p]), extend(&pg.b, &[p, g]), extend(&pg.b, &[p])),
        5 => (extend(&pg.p1, &[f]), extend(&pg.b, &[f, g]), extend(&pg.b, &[f])),
        6 => (extend(&pg.p1, &[f, p]), extend(&pg.b, &[f, p, g]), extend(&pg.b, &[f, p])),
        _ => panic!("plane amalgams are numbered 1 to 6, got {j}"),
    }
}

/// The plane amalgam `j ∈ 1..=6`, with both embeddings inclusions.
pub fn plane_amalgam(j: usize) -> Amalgam {
    let (a1, a2, b) = plane_amalgam_groups(j);
    let images = b.generators().to_vec();
    Amalgam::new(a1, a2, b, images).expect("inclusions define an amalgam")
}

/// The completion `⟨A1, A2⟩` of plane amalgam `j` inside the 42-point group.
pub fn plane_completion(j: usize) -> PermGroup {
    let (a1, a2, _) = plane_amalgam_groups(j);
    let mut gens = a1.generators().to_vec();
    gens.extend(a2.generators().iter().cloned());
    PermGroup::new(a1.degree(), gens).expect("same degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for a in 0..4u8 {
            for b in 0..4u8 {
                assert_eq!(gf4::mul(a, b), gf4::mul(b, a));
                for c in 0..4u8 {
                    let lhs = gf4::mul(a, gf4::add(b, c));
                    assert_eq!(lhs, gf4::add(gf4::mul(a, b), gf4::mul(a, c)));
                }
            }
            if a != 0 {
                assert_eq!(gf4::mul(a, gf4::inv(a)), 1);
            }
            assert_eq!(gf4::frob(gf4::frob(a)), a);
        }
        assert_eq!(gf4::add(2, 1), 3);
        assert_eq!(gf4::mul(2, 2), 3);
    }

    #[test]
    fn plane_axioms() {
        let plane = projective_plane();
        assert_eq!(plane.points.len(), 21);
        for i in 0..21 {
            assert_eq!(plane.incidence[i].iter().filter(|&&x| x).count(), 5);
            assert_eq!((0..21).filter(|&p| plane.incidence[p][i]).count(), 5);
            for j in 0..21 {
                if i != j {
                    let lines = (0..21).filter(|&l| plane.incidence[i][l] && plane.incidence[j][l]).count();
                    let points = (0..21).filter(|&p| plane.incidence[p][i] && plane.incidence[p][j]).count();
                    assert_eq!((lines, points), (1, 1));
                }
            }
        }
    }

    #[test]
    fn incidence_graph_shape() {
        let g = pg24_incidence_graph();
        assert_eq!(g.vertex_count(), 42);
        assert_eq!(g.edge_count(), 105);
        assert_eq!(g.girth(), Some(6));
        assert_eq!(g.diameter(), Some(3));
        assert!(g.is_bipartite() && g.is_connected());
        let text = labeled_edge_list(&g, 21);
        assert_eq!(text.lines().count(), 105);
        assert!(text.starts_with("P0 L"));
    }

    #[test]
    fn marked_elements() {
        let pg = psl34_overgroup();
        assert_eq!(pg.psl.order(), 20160);
        assert_eq!(pg.group.order(), 241920);
        assert_eq!(pg.p1.order(), 960);
        assert_eq!(pg.b.order(), 192);
        assert!(pg.g.pow(2).is_identity());
        assert_eq!(&pg.f * &pg.g, &pg.g * &pg.f);
        let complement = PermGroup::new(42, vec![pg.f.clone(), pg.p.clone(), pg.g.clone()]).unwrap();
        assert_eq!(complement.order(), 12);
        for x in [&pg.f, &pg.p] {
            assert_eq!(x.image(pg.marked_point), pg.marked_point);
            assert_eq!(x.image(pg.marked_line), pg.marked_line);
            assert!(pg.p1.conjugate(x).same_group(&pg.p1));
            assert!(pg.b.conjugate(x).same_group(&pg.b));
        }
        assert_eq!(pg.g.image(pg.marked_point), pg.marked_line);
        assert!(!pg.psl.contains(&pg.p));
    }

    #[test]
    fn plane_amalgam_orders() {
        let expected = [
            (960, 384, 192),
            (960, 384, 192),
            (2880, 1152, 576),
            (2880, 1152, 576),
            (1920, 768, 384),
            (5760, 2304, 1152),
        ];
        for (j, &(o1, o2, ob)) in expected.iter().enumerate() {
            let (a1, a2, b) = plane_amalgam_groups(j + 1);
            assert_eq!((a1.order(), a2.order(), b.order()), (o1, o2, ob), "amalgam {}", j + 1);
        }
    }

    #[test]
    fn automorphism_search_recovers_the_overgroup() {
        let aut = crate::graphsym::graph_automorphisms(&pg24_incidence_graph()).unwrap();
        assert_eq!(aut.order(), 241920);
        assert!(aut.same_group(&psl34_overgroup().group));
    }

    #[test]
    fn plane_amalgams_are_primitive() {
        for j in 1..=6 {
            assert!(plane_amalgam(j).is_primitive().unwrap(), "amalgam {j}");
        }
    }
}
