//! Automorphisms and isomorphisms by equitable refinement and backtracking
//! over individualized vertices.

use super::Graph;
use crate::error::{Error, Result};
use crate::group::{orbit_of, PermGroup};
use crate::perm::Permutation;

/// Largest vertex count accepted by the search.
pub const MAX_SEARCH_VERTICES: usize = 500;

/// An ordered partition of the vertex set.
#[derive(Clone, Debug)]
struct Partition {
    cells: Vec<Vec<u32>>,
}

/// What a node of the search tree looks like up to relabeling.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Invariant(Vec<u32>);

impl Partition {
    fn from_colors(colors: &[u32]) -> Self {
        let mut keys: Vec<u32> = colors.to_vec();
        keys.sort_unstable();
        keys.dedup();
        let mut cells = vec![Vec::new(); keys.len()];
        for (v, c) in colors.iter().enumerate() {
            let k = keys.binary_search(c).expect("present");
            cells[k].push(v as u32);
        }
        Partition { cells }
    }

    fn target_cell(&self) -> Option<usize> {
        self.cells.iter().position(|c| c.len() > 1)
    }

    fn individualize(&self, cell: usize, v: u32) -> Partition {
        let mut cells = Vec::with_capacity(self.cells.len() + 1);
        for (i, c) in self.cells.iter().enumerate() {
            if i == cell {
                cells.push(vec![v]);
                cells.push(c.iter().copied().filter(|&u| u != v).collect());
            } else {
                cells.push(c.clone());
            }
        }
        Partition { cells }
    }

    /// Splits cells by neighbour counts until the partition is equitable.
    fn refine(&mut self, g: &Graph) {
        let n = g.vertex_count();
        let mut count = vec![0u32; n];
        loop {
            let mut changed = false;
            let mut si = 0;
            while si < self.cells.len() {
                count.iter_mut().for_each(|c| *c = 0);
                for &u in &self.cells[si] {
                    for &v in g.neighbors(u) {
                        count[v as usize] += 1;
                    }
                }
                let mut next = Vec::with_capacity(self.cells.len());
                for cell in self.cells.drain(..) {
                    let first = count[cell[0] as usize];
                    if cell.iter().all(|&v| count[v as usize] == first) {
                        next.push(cell);
                        continue;
                    }
                    changed = true;
                    let mut keyed: Vec<(u32, u32)> = cell.iter().map(|&v| (count[v as usize], v)).collect();
                    keyed.sort_unstable();
                    let mut start = 0;
                    while start < keyed.len() {
                        let mut end = start;
                        while end < keyed.len() && keyed[end].0 == keyed[start].0 {
                            end += 1;
                        }
                        let mut part: Vec<u32> = keyed[start..end].iter().map(|&(_, v)| v).collect();
                        part.sort_unstable();
                        next.push(part);
                        start = end;
                    }
                }
                self.cells = next;
                si += 1;
            }
            if !changed {
                break;
            }
        }
    }

    /// Cell sizes plus, per cell, the sorted cells of a member's neighbours.
    fn invariant(&self, g: &Graph) -> Invariant {
        let mut cell_of = vec![0u32; g.vertex_count()];
        for (i, c) in self.cells.iter().enumerate() {
            for &v in c {
                cell_of[v as usize] = i as u32;
            }
        }
        let mut out = Vec::new();
        for c in &self.cells {
            out.push(c.len() as u32);
            let mut nb: Vec<u32> = g.neighbors(c[0]).iter().map(|&v| cell_of[v as usize]).collect();
            nb.sort_unstable();
            out.push(nb.len() as u32);
            out.extend(nb);
        }
        Invariant(out)
    }

    fn labeling(&self) -> Vec<u32> {
        self.cells.iter().map(|c| c[0]).collect()
    }
}

struct PathNode {
    partition: Partition,
    invariant: Invariant,
    /// Target cell and the vertex individualized on the first path.
    choice: Option<(usize, u32)>,
}

/// The leftmost root-to-leaf path of the search tree of `g`.
fn first_path(g: &Graph, colors: &[u32]) -> Vec<PathNode> {
    let mut p = Partition::from_colors(colors);
    p.refine(g);
    let mut path = Vec::new();
    loop {
        let invariant = p.invariant(g);
        match p.target_cell() {
            None => {
                path.push(PathNode { partition: p, invariant, choice: None });
                return path;
            }
            Some(cell) => {
                let v = p.cells[cell][0];
                let mut next = p.individualize(cell, v);
                next.refine(g);
                path.push(PathNode { partition: p, invariant, choice: Some((cell, v)) });
                p = next;
            }
        }
    }
}

/// Searches the subtree of `node` (at `depth`) in graph `h` for a leaf whose
/// labeling, matched against `leaf` of graph `g`, is an isomorphism `g → h`.
fn find_leaf(g: &Graph, path: &[PathNode], h: &Graph, node: Partition, depth: usize) -> Option<Permutation> {
    if node.invariant(h) != path[depth].invariant {
        return None;
    }
    match path[depth].choice {
        None => {
            let src = path[depth].partition.labeling();
            let dst = node.labeling();
            let mut images = vec![0u32; src.len()];
            for (&s, &d) in src.iter().zip(&dst) {
                images[s as usize] = d;
            }
            let p = Permutation::from_images(images).ok()?;
            maps_edges(g, h, &p).then_some(p)
        }
        Some((cell, _)) => {
            for &u in &node.cells[cell] {
                let mut next = node.individualize(cell, u);
                next.refine(h);
                if let Some(p) = find_leaf(g, path, h, next, depth + 1) {
                    return Some(p);
                }
            }
            None
        }
    }
}

fn maps_edges(g: &Graph, h: &Graph, p: &Permutation) -> bool {
    g.edge_count() == h.edge_count() && g.edges().iter().all(|&(u, v)| h.has_edge(p.image(u), p.image(v)))
}

fn check_size(g: &Graph) -> Result<()> {
    if g.vertex_count() > MAX_SEARCH_VERTICES {
        return Err(Error::TooLarge {
            what: "graph automorphism search",
            order: g.vertex_count() as u128,
            limit: MAX_SEARCH_VERTICES as u128,
        });
    }
    Ok(())
}

/// The full automorphism group of `g`.
pub fn graph_automorphisms(g: &Graph) -> Result<PermGroup> {
    graph_automorphisms_colored(g, &vec![0; g.vertex_count()])
}

/// Automorphisms of `g` preserving the vertex colouring `colors`.
pub fn graph_automorphisms_colored(g: &Graph, colors: &[u32]) -> Result<PermGroup> {
    check_size(g)?;
    let n = g.vertex_count();
    if colors.len() != n {
        return Err(Error::Invalid(format!("{} colours for {n} vertices", colors.len())));
    }
    if n == 0 {
        return Ok(PermGroup::trivial(0));
    }
    let path = first_path(g, colors);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut expected: u128 = 1;
    for depth in (0..path.len()).rev() {
        let Some((cell, v)) = path[depth].choice else {
            continue;
        };
        let mut orbit = orbit_of(v, &gens, n);
        for &w in &path[depth].partition.cells[cell] {
            if orbit.contains(&w) {
                continue;
            }
            let next = path[depth].partition.individualize(cell, w);
            let mut next = next;
            next.refine(g);
            if let Some(p) = find_leaf(g, &path, g, next, depth + 1) {
                gens.push(p);
                orbit = orbit_of(v, &gens, n);
            }
        }
        expected *= orbit.len() as u128;
    }
    let group = PermGroup::new(n, gens)?;
    debug_assert_eq!(group.order(), expected);
    Ok(group)
}

/// An isomorphism `g → h`, if the graphs are isomorphic.
pub fn find_isomorphism(g: &Graph, h: &Graph) -> Result<Option<Permutation>> {
    check_size(g)?;
    check_size(h)?;
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    if g.vertex_count() == 0 {
        return Ok(Some(Permutation::identity(0)));
    }
    let colors = vec![0; g.vertex_count()];
    let path = first_path(g, &colors);
    let mut root = Partition::from_colors(&colors);
    root.refine(h);
    Ok(find_leaf(g, &path, h, root, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_automorphism_groups() {
        assert_eq!(graph_automorphisms(&Graph::cycle(5)).unwrap().order(), 10);
        assert_eq!(graph_automorphisms(&Graph::cycle(12)).unwrap().order(), 24);
        assert_eq!(graph_automorphisms(&Graph::complete(6)).unwrap().order(), 720);
        let empty = Graph::new(4, &[]).unwrap();
        assert_eq!(graph_automorphisms(&empty).unwrap().order(), 24);
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(graph_automorphisms(&star).unwrap().order(), 24);
    }

    #[test]
    fn petersen_has_s5() {
        let mut edges = Vec::new();
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        let p = Graph::new(10, &edges).unwrap();
        assert_eq!(graph_automorphisms(&p).unwrap().order(), 120);
    }

    #[test]
    fn colours_restrict_the_group() {
        let c6 = Graph::cycle(6);
        let colors = [0, 1, 0, 1, 0, 1];
        assert_eq!(graph_automorphisms_colored(&c6, &colors).unwrap().order(), 6);
    }

    #[test]
    fn isomorphism_between_relabeled_cycles() {
        let g = Graph::cycle(7);
        let h = Graph::new(7, &[(0, 3), (3, 6), (6, 2), (2, 5), (5, 1), (1, 4), (4, 0)]).unwrap();
        let p = find_isomorphism(&g, &h).unwrap().unwrap();
        assert!(g.edges().iter().all(|&(u, v)| h.has_edge(p.image(u), p.image(v))));
        let two_triangles = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(find_isomorphism(&Graph::cycle(6), &two_triangles).unwrap().is_none());
    }

    #[test]
    fn too_large_is_rejected() {
        let g = Graph::new(MAX_SEARCH_VERTICES + 1, &[]).unwrap();
        assert!(matches!(graph_automorphisms(&g), Err(Error::TooLarge { .. })));
    }
}
