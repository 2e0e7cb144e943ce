//! Logical and physical graphs.
//!
//! Vertices are always `0..n`. Edges are stored canonically as `(u, v)` with
//! `u < v`, sorted, alongside sorted adjacency lists.

mod chimera;
mod families;
mod io;
mod oracle;

pub use chimera::{chimera, ChimeraCoord};
pub use families::{generate_family, FamilySpec};
pub use io::{parse_graph, parse_instance, to_instance_json, InstanceFile, WeightAssignments};
pub use oracle::{brute_force_mwis, is_independent, MwisSolution, BRUTE_FORCE_LIMIT};

use crate::error::GraphError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Edge orientation is irrelevant; self
    /// loops, duplicates and out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut canon = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &canon {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: canon,
            adj,
        })
    }

    /// Graph with `n` vertices and no edges.
    pub fn edgeless(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, std::iter::empty())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Canonical edge list, `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Subgraph induced on `vertices`, relabelled to `0..vertices.len()` in
    /// the order given.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(u, v)| index[*u] != usize::MAX && index[*v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        Graph::new(vertices.len(), edges)
    }

    /// Two-colours the graph by BFS; `None` if an odd cycle exists.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut colour: Vec<Option<bool>> = vec![None; self.n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                let c = colour[u].unwrap();
                for &v in &self.adj[u] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!c);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == c => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(Option::unwrap).collect())
    }

    /// Whether the vertices of `subset` induce a connected subgraph.
    /// The empty set is not connected.
    pub fn is_connected_subset(&self, subset: &[usize]) -> bool {
        let Some(&first) = subset.first() else {
            return false;
        };
        let mut member = vec![false; self.n];
        for &v in subset {
            member[v] = true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![first];
        seen[first] = true;
        let mut reached = 0;
        while let Some(u) = stack.pop() {
            reached += 1;
            for &v in &self.adj[u] {
                if member[v] && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        let distinct = member.iter().filter(|&&m| m).count();
        reached == distinct
    }
}

/// A graph with a strictly positive weight on every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    graph: Graph,
    weights: Vec<f64>,
}

impl WeightedGraph {
    pub fn new(graph: Graph, weights: Vec<f64>) -> Result<Self, GraphError> {
        validate_weights(graph.n(), &weights)?;
        Ok(WeightedGraph { graph, weights })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Largest vertex weight, the `W` a penalty must exceed.
    pub fn max_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::MIN, f64::max)
    }

    /// Same structure, different weights.
    pub fn reweighted(&self, weights: Vec<f64>) -> Result<Self, GraphError> {
        WeightedGraph::new(self.graph.clone(), weights)
    }

    /// Sum of the weights of `vertices`, accumulated in the order given.
    pub fn weight_of(&self, vertices: &[usize]) -> f64 {
        vertices.iter().map(|&v| self.weights[v]).sum()
    }
}

pub(crate) fn validate_weights(n: usize, weights: &[f64]) -> Result<(), GraphError> {
    if weights.len() != n {
        return Err(GraphError::WeightCount {
            expected: n,
            found: weights.len(),
        });
    }
    for (vertex, &value) in weights.iter().enumerate() {
        if !(value.is_finite() && value > 0.0) {
            return Err(GraphError::NonPositiveWeight { vertex, value });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonicalizes_edges() {
        let g = Graph::new(4, [(3, 0), (1, 2), (0, 1)]).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 3), (1, 2)]);
        assert!(g.has_edge(3, 0));
        assert!(!g.has_edge(2, 3));
        assert_eq!(g.neighbors(0), &[1, 3]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(0, []), Err(GraphError::Empty));
        assert_eq!(Graph::new(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(3, [(0, 3)]),
            Err(GraphError::EndpointOutOfRange { .. })
        ));
    }

    #[test]
    fn weights_must_be_positive() {
        let g = Graph::edgeless(2).unwrap();
        assert!(WeightedGraph::new(g.clone(), vec![1.0, 0.0]).is_err());
        assert!(WeightedGraph::new(g.clone(), vec![1.0, f64::NAN]).is_err());
        assert!(WeightedGraph::new(g.clone(), vec![1.0]).is_err());
        assert!(WeightedGraph::new(g, vec![1.0, 0.5]).is_ok());
    }

    #[test]
    fn connected_subsets() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(g.is_connected_subset(&[1, 2, 3]));
        assert!(!g.is_connected_subset(&[0, 2]));
        assert!(!g.is_connected_subset(&[]));
        assert!(g.is_connected_subset(&[3]));
    }
}
