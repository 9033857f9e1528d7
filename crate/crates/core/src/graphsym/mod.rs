//! Simple graphs, coset graphs of amalgam completions, automorphism search
//! and s-arc transitivity.

mod arcs;
mod coset;
mod search;

pub use arcs::{arc_orbit_count, measure_s, measure_s_local, s_arc_count, LocalData};
pub use coset::{coset_graph, CosetGraph};
pub use search::{find_isomorphism, graph_automorphisms, graph_automorphisms_colored, MAX_SEARCH_VERTICES};

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A finite simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    /// Builds a graph from an edge list; duplicate edges collapse, loops are rejected.
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Invalid(format!("edge ({u},{v}) outside 0..{n}")));
            }
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {u}")));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if (u as u32) < v {
                    out.push((u as u32, v));
                }
            }
        }
        out
    }

    /// The common valency, if the graph is regular and nonempty.
    pub fn valency(&self) -> Option<usize> {
        let d = self.adj.first()?.len();
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Sorted `(degree, count)` pairs.
    pub fn valency_profile(&self) -> Vec<(usize, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for l in &self.adj {
            *counts.entry(l.len()).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }

    fn distances_from(&self, s: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.adj.len()];
        dist[s as usize] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u as usize] {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = dist[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.adj.is_empty() || self.distances_from(0).iter().all(|&d| d != u32::MAX)
    }

    /// Largest distance between two vertices; `None` when disconnected.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for s in 0..self.adj.len() as u32 {
            let d = self.distances_from(s);
            if d.contains(&u32::MAX) {
                return None;
            }
            best = best.max(*d.iter().max().unwrap_or(&0));
        }
        Some(best)
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<u32> {
        let n = self.adj.len();
        let mut best = u32::MAX;
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        for s in 0..n {
            dist.iter_mut().for_each(|d| *d = u32::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s as u32]);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u as usize] + 1 >= best {
                    break;
                }
                for &v in &self.adj[u as usize] {
                    if dist[v as usize] == u32::MAX {
                        dist[v as usize] = dist[u as usize] + 1;
                        parent[v as usize] = u;
                        queue.push_back(v);
                    } else if parent[u as usize] != v {
                        best = best.min(dist[u as usize] + dist[v as usize] + 1);
                    }
                }
            }
        }
        (best != u32::MAX).then_some(best)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.adj.len()];
        for s in 0..self.adj.len() {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s as u32]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u as usize] {
                    if side[v as usize] == u8::MAX {
                        side[v as usize] = 1 - side[u as usize];
                        queue.push_back(v);
                    } else if side[v as usize] == side[u as usize] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Whether `p` maps edges to edges.
    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.degree() == self.adj.len()
            && self.adj.iter().enumerate().all(|(u, list)| {
                let pu = p.image(u as u32);
                list.iter().all(|&v| self.has_edge(pu, p.image(v)))
            })
    }

    /// Edge-list text: a `vertices n` header then `u v` per line, 0-based.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("vertices {}\n", self.adj.len());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Inverse of [`to_edge_list`](Self::to_edge_list). Without a header the
    /// vertex count is one more than the largest label. `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut largest = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: expected `u v`, got `{line}`", i + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() == 2 && fields[0] == "vertices" {
                if n.is_some() || !edges.is_empty() {
                    return Err(Error::Parse(format!("line {}: misplaced header", i + 1)));
                }
                n = Some(fields[1].parse().map_err(|_| bad())?);
                continue;
            }
            if fields.len() != 2 {
                return Err(bad());
            }
            let u: u32 = fields[0].parse().map_err(|_| bad())?;
            let v: u32 = fields[1].parse().map_err(|_| bad())?;
            largest = largest.max(Some(u.max(v)));
            edges.push((u, v));
        }
        let n = n.unwrap_or_else(|| largest.map_or(0, |m| m as usize + 1));
        Graph::new(n, &edges)
    }

    /// Cycle graph on `n ≥ 3` vertices.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
        Graph::new(n, &edges).expect("valid cycle")
    }

    /// Complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n as u32 {
            for v in u + 1..n as u32 {
                edges.push((u, v));
            }
        }
        Graph::new(n, &edges).expect("valid complete graph")
    }
}

/// A permutation group acting on the vertices of a graph by automorphisms.
#[derive(Clone, Debug)]
pub struct GroupAction {
    graph: Graph,
    group: PermGroup,
}

impl GroupAction {
    pub fn new(graph: Graph, group: PermGroup) -> Result<Self> {
        if group.degree() != graph.vertex_count() {
            return Err(Error::Invalid(format!(
                "group of degree {} on a graph with {} vertices",
                group.degree(),
                graph.vertex_count()
            )));
        }
        if let Some(g) = group.generators().iter().find(|g| !graph.is_automorphism(g)) {
            return Err(Error::Invalid(format!("generator {g} is not a graph automorphism")));
        }
        Ok(GroupAction { graph, group })
    }

    /// The full automorphism group acting on `graph`.
    pub fn full(graph: Graph) -> Result<Self> {
        let group = graph_automorphisms(&graph)?;
        Ok(GroupAction { graph, group })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn is_vertex_transitive(&self) -> bool {
        self.graph.vertex_count() > 0 && self.group.orbit(0).len() == self.graph.vertex_count()
    }

    /// Transitivity on ordered pairs of adjacent vertices.
    pub fn is_arc_transitive(&self) -> bool {
        if !self.is_vertex_transitive() {
            return false;
        }
        let Some(&y) = self.graph.neighbors(0).first() else {
            return false;
        };
        let stab = self.group.pointwise_stabilizer(&[0]);
        stab.orbit(y).len() == self.graph.degree(0)
    }

    /// Transitivity on undirected edges.
    pub fn is_edge_transitive(&self) -> bool {
        let Some(&(u, v)) = self.graph.edges().first() else {
            return false;
        };
        let chain = self.group.chain_with_base(&[u, v]);
        let stab_uv = chain.suffix(2).order();
        let swap = self.group.element_mapping(&[u, v], &[v, u]).is_some();
        let edge_stab = stab_uv * if swap { 2 } else { 1 };
        self.group.order() == edge_stab * self.graph.edge_count() as u128
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn basic_invariants() {
        let c5 = Graph::cycle(5);
        assert_eq!(c5.girth(), Some(5));
        assert_eq!(c5.valency(), Some(2));
        assert_eq!(c5.diameter(), Some(2));
        assert!(!c5.is_bipartite());
        let p = petersen();
        assert_eq!(p.girth(), Some(5));
        assert_eq!(p.edge_count(), 15);
        assert_eq!(p.valency_profile(), vec![(3, 10)]);
        assert_eq!(Graph::cycle(6).girth(), Some(6));
        assert!(Graph::cycle(6).is_bipartite());
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.girth(), None);
        let split = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!split.is_connected());
        assert_eq!(split.diameter(), None);
    }

    #[test]
    fn loops_rejected_and_duplicates_merged() {
        assert!(Graph::new(3, &[(1, 1)]).is_err());
        assert!(Graph::new(3, &[(0, 3)]).is_err());
        let g = Graph::new(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edge_list_round_trip() {
        let p = petersen();
        let text = p.to_edge_list();
        assert_eq!(Graph::parse_edge_list(&text).unwrap(), p);
        let bare = Graph::parse_edge_list("0 1\n1 2 # path\n").unwrap();
        assert_eq!(bare.vertex_count(), 3);
        assert!(Graph::parse_edge_list("0 1 2\n").is_err());
        assert!(Graph::parse_edge_list("0 x\n").is_err());
        let isolated = Graph::parse_edge_list("vertices 4\n0 1\n").unwrap();
        assert_eq!(isolated.vertex_count(), 4);
    }

    #[test]
    fn transitivity_flags() {
        let act = GroupAction::full(petersen()).unwrap();
        assert!(act.is_vertex_transitive());
        assert!(act.is_arc_transitive());
        assert!(act.is_edge_transitive());
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let act = GroupAction::full(path).unwrap();
        assert!(!act.is_vertex_transitive());
        assert!(act.is_edge_transitive());
    }

    #[test]
    fn action_rejects_non_automorphisms() {
        let c5 = Graph::cycle(5);
        let bad = PermGroup::from_cycles(5, &["(1,3)"]).unwrap();
        assert!(GroupAction::new(c5, bad).is_err());
    }
}
